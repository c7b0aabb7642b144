//! Free-format MPS writer and reader.
//!
//! The writer emits `NAME`, `ROWS` (objective row `obj` first), `COLUMNS`
//! with `MARKER INTORG/INTEND` around runs of binary columns, `RHS`,
//! `BOUNDS` (`LO`, `UP`, `FX`, `FR`, `MI`, `BV`) and `ENDATA`. Every column
//! gets at least one entry (an explicit zero objective coefficient) so that
//! it survives a round trip. The reader accepts the same dialect; `RANGES`
//! is not supported.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::number::fmt_f64;
use crate::program::{Program, Sense, VarId, VarKind, OBJECTIVE_CONSTANT_NAME};
use crate::{MilpError, Result};

const OBJ_ROW: &str = "obj";

pub fn to_string(program: &Program) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "NAME {}", program.name.replace(char::is_whitespace, "_"));
    out.push_str("ROWS\n");
    let _ = writeln!(out, " N {OBJ_ROW}");
    for c in program.constraints() {
        let tag = match c.sense {
            Sense::Le => 'L',
            Sense::Ge => 'G',
            Sense::Eq => 'E',
        };
        let _ = writeln!(out, " {} {}", tag, c.name);
    }

    // column-major view of the rows
    let mut columns: Vec<Vec<(usize, f64)>> = vec![Vec::new(); program.num_vars()];
    for (ci, c) in program.constraints().iter().enumerate() {
        for &(v, a) in &c.terms {
            if a != 0.0 {
                columns[v.0].push((ci, a));
            }
        }
    }
    let obj = program.objective_coefficients();

    out.push_str("COLUMNS\n");
    let mut in_int = false;
    let mut marker = 0usize;
    for (j, var) in program.variables().iter().enumerate() {
        let is_int = var.kind == VarKind::Binary;
        if is_int && !in_int {
            let _ = writeln!(out, " MARKER{marker} 'MARKER' 'INTORG'");
            in_int = true;
        } else if !is_int && in_int {
            let _ = writeln!(out, " MARKER{marker} 'MARKER' 'INTEND'");
            marker += 1;
            in_int = false;
        }
        if obj[j] != 0.0 || columns[j].is_empty() {
            let _ = writeln!(out, " {} {} {}", var.name, OBJ_ROW, fmt_f64(obj[j]));
        }
        for &(ci, a) in &columns[j] {
            let _ = writeln!(out, " {} {} {}", var.name, program.constraints()[ci].name, fmt_f64(a));
        }
    }
    if in_int {
        let _ = writeln!(out, " MARKER{marker} 'MARKER' 'INTEND'");
    }
    let constant = program.objective_constant();
    if constant != 0.0 {
        let _ = writeln!(out, " {} {} {}", OBJECTIVE_CONSTANT_NAME, OBJ_ROW, fmt_f64(constant));
    }

    out.push_str("RHS\n");
    for c in program.constraints() {
        if c.rhs != 0.0 {
            let _ = writeln!(out, " RHS {} {}", c.name, fmt_f64(c.rhs));
        }
    }

    out.push_str("BOUNDS\n");
    for var in program.variables() {
        let n = &var.name;
        if var.kind == VarKind::Binary && var.lower == 0.0 && var.upper == 1.0 {
            let _ = writeln!(out, " BV BND {n}");
            continue;
        }
        let (lo, up) = (var.lower, var.upper);
        if lo == up {
            let _ = writeln!(out, " FX BND {} {}", n, fmt_f64(lo));
        } else if lo == f64::NEG_INFINITY && up == f64::INFINITY {
            let _ = writeln!(out, " FR BND {n}");
        } else {
            if lo == f64::NEG_INFINITY {
                let _ = writeln!(out, " MI BND {n}");
            } else if lo != 0.0 {
                let _ = writeln!(out, " LO BND {} {}", n, fmt_f64(lo));
            }
            if up != f64::INFINITY {
                let _ = writeln!(out, " UP BND {} {}", n, fmt_f64(up));
            }
        }
    }
    if constant != 0.0 {
        let _ = writeln!(out, " FX BND {OBJECTIVE_CONSTANT_NAME} 1");
    }
    out.push_str("ENDATA\n");
    out
}

pub fn write(program: &Program, path: &Path) -> Result<()> {
    std::fs::write(path, to_string(program)).map_err(|e| MilpError::io(path, e))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Start,
    Rows,
    Columns,
    Rhs,
    Bounds,
    End,
}

/// Parses the dialect produced by [`to_string`]. Objective terms come back
/// under a single `objective` category and the helper constant column is
/// folded into an objective constant.
pub fn parse(text: &str) -> Result<Program> {
    let mut program = Program::new("");
    let mut section = Section::Start;
    let mut rows: Vec<(String, Option<Sense>)> = Vec::new();
    let mut row_index: HashMap<String, usize> = HashMap::new();
    let mut row_terms: Vec<Vec<(VarId, f64)>> = Vec::new();
    let mut rhs: Vec<f64> = Vec::new();
    let mut in_int = false;
    let mut constant = 0.0;
    let mut bounds_seen: HashMap<VarId, (Option<f64>, Option<f64>)> = HashMap::new();

    let err = |line: usize, message: String| MilpError::Parse { line, message };

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.trim_end();
        if line.trim().is_empty() || line.trim_start().starts_with('*') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !raw.starts_with(char::is_whitespace) {
            section = match fields[0] {
                "NAME" => {
                    program.name = fields.get(1).copied().unwrap_or("").to_string();
                    Section::Start
                }
                "ROWS" => Section::Rows,
                "COLUMNS" => Section::Columns,
                "RHS" => Section::Rhs,
                "BOUNDS" => Section::Bounds,
                "ENDATA" => Section::End,
                other => return Err(err(line_no, format!("unsupported section `{other}`"))),
            };
            continue;
        }
        match section {
            Section::Rows => {
                if fields.len() != 2 {
                    return Err(err(line_no, "expected `<type> <row>`".into()));
                }
                let sense = match fields[0] {
                    "N" => None,
                    "L" => Some(Sense::Le),
                    "G" => Some(Sense::Ge),
                    "E" => Some(Sense::Eq),
                    t => return Err(err(line_no, format!("unknown row type `{t}`"))),
                };
                row_index.insert(fields[1].to_string(), rows.len());
                rows.push((fields[1].to_string(), sense));
                row_terms.push(Vec::new());
                rhs.push(0.0);
            }
            Section::Columns => {
                if fields.len() >= 3 && fields[1].trim_matches('\'') == "MARKER" {
                    match fields[2].trim_matches('\'') {
                        "INTORG" => in_int = true,
                        "INTEND" => in_int = false,
                        m => return Err(err(line_no, format!("unknown marker `{m}`"))),
                    }
                    continue;
                }
                if fields.len() != 3 && fields.len() != 5 {
                    return Err(err(line_no, "expected `<col> <row> <value> [<row> <value>]`".into()));
                }
                let col = fields[0];
                if col == OBJECTIVE_CONSTANT_NAME {
                    for pair in fields[1..].chunks(2) {
                        if pair[0] == OBJ_ROW {
                            constant += pair[1]
                                .parse::<f64>()
                                .map_err(|_| err(line_no, format!("bad number `{}`", pair[1])))?;
                        }
                    }
                    continue;
                }
                let var = match program.var(col) {
                    Some(v) => v,
                    None => {
                        let kind = if in_int { VarKind::Binary } else { VarKind::Continuous };
                        let upper = if in_int { 1.0 } else { f64::INFINITY };
                        program.add_var(col, 0.0, upper, kind)?
                    }
                };
                for pair in fields[1..].chunks(2) {
                    let value: f64 = pair[1]
                        .parse()
                        .map_err(|_| err(line_no, format!("bad number `{}`", pair[1])))?;
                    let &r = row_index
                        .get(pair[0])
                        .ok_or_else(|| err(line_no, format!("unknown row `{}`", pair[0])))?;
                    row_terms[r].push((var, value));
                }
            }
            Section::Rhs => {
                if fields.len() != 3 && fields.len() != 5 {
                    return Err(err(line_no, "expected `<set> <row> <value> [<row> <value>]`".into()));
                }
                for pair in fields[1..].chunks(2) {
                    let value: f64 = pair[1]
                        .parse()
                        .map_err(|_| err(line_no, format!("bad number `{}`", pair[1])))?;
                    let &r = row_index
                        .get(pair[0])
                        .ok_or_else(|| err(line_no, format!("unknown row `{}`", pair[0])))?;
                    rhs[r] = value;
                }
            }
            Section::Bounds => {
                if fields.len() < 3 {
                    return Err(err(line_no, "expected `<type> <set> <col> [<value>]`".into()));
                }
                if fields[2] == OBJECTIVE_CONSTANT_NAME {
                    continue;
                }
                let var = program
                    .var(fields[2])
                    .ok_or_else(|| err(line_no, format!("unknown column `{}`", fields[2])))?;
                let value = || -> Result<f64> {
                    fields
                        .get(3)
                        .ok_or_else(|| err(line_no, "missing bound value".into()))?
                        .parse()
                        .map_err(|_| err(line_no, "bad bound value".into()))
                };
                let entry = bounds_seen.entry(var).or_insert((None, None));
                match fields[0] {
                    "LO" => entry.0 = Some(value()?),
                    "UP" => entry.1 = Some(value()?),
                    "FX" => {
                        let v = value()?;
                        *entry = (Some(v), Some(v));
                    }
                    "FR" => *entry = (Some(f64::NEG_INFINITY), Some(f64::INFINITY)),
                    "MI" => entry.0 = Some(f64::NEG_INFINITY),
                    "PL" => entry.1 = Some(f64::INFINITY),
                    "BV" => {
                        program.set_kind(var, VarKind::Binary);
                        *entry = (Some(0.0), Some(1.0));
                    }
                    t => return Err(err(line_no, format!("unsupported bound type `{t}`"))),
                }
            }
            Section::Start | Section::End => {
                return Err(err(line_no, "data outside of a section".into()));
            }
        }
    }

    for (var, (lo, up)) in bounds_seen {
        let v = program.variable(var);
        let lower = lo.unwrap_or(v.lower);
        let upper = up.unwrap_or(v.upper);
        program.set_bounds(var, lower, upper)?;
    }

    for (r, (name, sense)) in rows.iter().enumerate() {
        match sense {
            None => {
                for &(v, c) in &row_terms[r] {
                    program.add_objective(v, c, "objective")?;
                }
            }
            Some(s) => {
                program.add_constr(name.clone(), row_terms[r].iter().copied(), *s, rhs[r])?;
            }
        }
    }
    program.add_objective_constant("constant", constant)?;
    Ok(program)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_inverts_write() {
        let mut p = Program::new("t");
        let x = p.add_var("x", -1.0, 4.0, VarKind::Continuous).unwrap();
        let y = p.free("y").unwrap();
        let w = p.add_var("w", f64::NEG_INFINITY, 3.0, VarKind::Continuous).unwrap();
        let z = p.binary("z").unwrap();
        let u = p.nonneg("u").unwrap();
        p.add_constr("c1", [(x, 1.0), (y, 2.0), (z, -1.0)], Sense::Le, 3.0).unwrap();
        p.add_constr("c2", [(w, 1.0), (u, 1.0)], Sense::Eq, 0.0).unwrap();
        p.add_objective(x, 2.0, "a").unwrap();
        p.add_objective_constant("k", 7.5).unwrap();
        let q = parse(&to_string(&p)).unwrap();
        assert_eq!(q.objective_constant(), 7.5);
        assert_eq!(q.variables(), p.variables());
        assert_eq!(q.constraints(), p.constraints());
        assert_eq!(q.objective_coefficients(), p.objective_coefficients());
    }

    #[test]
    fn rejects_unknown_rows() {
        let text = "NAME t\nROWS\n N obj\nCOLUMNS\n x c9 1\nENDATA\n";
        assert!(matches!(parse(text), Err(MilpError::Parse { line: 5, .. })));
    }
}
