//! CPLEX-LP writer.
//!
//! Dialect: `Minimize` / `Subject To` / `Bounds` / `Binaries` / `End`,
//! one row per constraint with continuation lines every eight terms, and
//! bounds written only when they differ from `[0, +inf)`. The objective
//! constant, if any, is carried by a column named `obj.constant` fixed at 1.

use std::fmt::Write as _;
use std::path::Path;

use crate::number::fmt_f64;
use crate::program::{Program, VarId, VarKind, OBJECTIVE_CONSTANT_NAME};
use crate::{MilpError, Result};

const TERMS_PER_LINE: usize = 8;

pub fn to_string(program: &Program) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\ Problem: {}", program.name);
    out.push_str("Minimize\n obj:");
    let coefs = program.objective_coefficients();
    let constant = program.objective_constant();
    let mut terms: Vec<(String, f64)> = coefs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0.0)
        .map(|(i, &c)| (program.variable(VarId(i)).name.clone(), c))
        .collect();
    if constant != 0.0 {
        terms.push((OBJECTIVE_CONSTANT_NAME.to_string(), constant));
    }
    if terms.is_empty() {
        if let Some(v) = program.variables().first() {
            terms.push((v.name.clone(), 0.0));
        }
    }
    write_terms(&mut out, terms.iter().map(|(n, c)| (n.as_str(), *c)));
    out.push('\n');

    out.push_str("Subject To\n");
    for c in program.constraints() {
        let _ = write!(out, " {}:", c.name);
        if c.terms.is_empty() {
            match program.variables().first() {
                Some(v) => write_terms(&mut out, std::iter::once((v.name.as_str(), 0.0))),
                None => out.push_str(" 0 obj.constant"),
            }
        } else {
            write_terms(
                &mut out,
                c.terms.iter().map(|&(v, a)| (program.variable(v).name.as_str(), a)),
            );
        }
        let _ = writeln!(out, " {} {}", c.sense.symbol(), fmt_f64(c.rhs));
    }

    out.push_str("Bounds\n");
    for v in program.variables() {
        if v.kind == VarKind::Binary {
            if v.lower != 0.0 || v.upper != 1.0 {
                write_bound(&mut out, &v.name, v.lower, v.upper);
            }
            continue;
        }
        if v.lower == 0.0 && v.upper == f64::INFINITY {
            continue;
        }
        write_bound(&mut out, &v.name, v.lower, v.upper);
    }
    if constant != 0.0 {
        let _ = writeln!(out, " {OBJECTIVE_CONSTANT_NAME} = 1");
    }

    let binaries: Vec<&str> = program
        .variables()
        .iter()
        .filter(|v| v.kind == VarKind::Binary)
        .map(|v| v.name.as_str())
        .collect();
    if !binaries.is_empty() {
        out.push_str("Binaries\n");
        for chunk in binaries.chunks(TERMS_PER_LINE) {
            let _ = writeln!(out, " {}", chunk.join(" "));
        }
    }
    out.push_str("End\n");
    out
}

pub fn write(program: &Program, path: &Path) -> Result<()> {
    std::fs::write(path, to_string(program)).map_err(|e| MilpError::io(path, e))
}

fn write_terms<'a>(out: &mut String, terms: impl Iterator<Item = (&'a str, f64)>) {
    for (k, (name, coef)) in terms.enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if coef < 0.0 { '-' } else { '+' };
        if k == 0 && sign == '+' {
            let _ = write!(out, " {} {}", fmt_f64(coef), name);
        } else {
            let _ = write!(out, " {} {} {}", sign, fmt_f64(coef.abs()), name);
        }
    }
}

fn write_bound(out: &mut String, name: &str, lower: f64, upper: f64) {
    let _ = match (lower.is_finite(), upper.is_finite()) {
        _ if lower == upper => writeln!(out, " {} = {}", name, fmt_f64(lower)),
        (false, false) => writeln!(out, " {name} free"),
        (false, true) => writeln!(out, " -inf <= {} <= {}", name, fmt_f64(upper)),
        (true, false) => writeln!(out, " {} >= {}", name, fmt_f64(lower)),
        (true, true) => writeln!(out, " {} <= {} <= {}", fmt_f64(lower), name, fmt_f64(upper)),
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::Sense;

    fn toy() -> Program {
        let mut p = Program::new("toy");
        let x = p.add_var("x", 0.0, 10.0, VarKind::Continuous).unwrap();
        let y = p.free("y").unwrap();
        let z = p.binary("z").unwrap();
        p.add_constr("c1", [(x, 1.0), (y, -2.0)], Sense::Ge, 1.0).unwrap();
        p.add_constr("c2", [(y, 1.0), (z, 3.5)], Sense::Le, 4.0).unwrap();
        p.add_objective(x, 1.0, "a").unwrap();
        p.add_objective(z, -2.0, "b").unwrap();
        p.add_objective_constant("c", 5.0).unwrap();
        p
    }

    #[test]
    fn golden_output() {
        let expected = "\\ Problem: toy
Minimize
 obj: 1 x - 2 z + 5 obj.constant
Subject To
 c1: 1 x - 2 y >= 1
 c2: 1 y + 3.5 z <= 4
Bounds
 0 <= x <= 10
 y free
 obj.constant = 1
Binaries
 z
End
";
        assert_eq!(to_string(&toy()), expected);
    }

    #[test]
    fn empty_program_is_valid() {
        let p = Program::new("empty");
        let s = to_string(&p);
        assert!(s.starts_with("\\ Problem: empty\nMinimize\n obj:\nSubject To\nBounds\nEnd"));
    }
}
