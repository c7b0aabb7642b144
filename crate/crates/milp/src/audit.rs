//! Feasibility audit of a solution against the program it came from.

use serde::Serialize;

use crate::program::{Program, Sense, VarKind};
use crate::solution::Solution;
use crate::Result;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Row,
    Bound,
    Integrality,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Row or column name.
    pub name: String,
    /// Leading segment of `name`, used for grouping.
    pub block: String,
    /// Absolute violation.
    pub amount: f64,
    /// Violation divided by `1 + |rhs|` (rows) or `1 + |bound|` (columns).
    pub scaled: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AuditReport {
    pub tolerance: f64,
    pub rows_checked: usize,
    pub columns_checked: usize,
    pub max_residual: f64,
    pub violations: Vec<Violation>,
    /// Objective recomputed from the column values, constants included.
    pub objective: f64,
}

impl AuditReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every row, every column bound and binary integrality. A row is
/// flagged when its violation exceeds `tol * (1 + |rhs|)`.
pub fn audit(program: &Program, solution: &Solution, tol: f64) -> Result<AuditReport> {
    let x = solution.dense(program)?;
    let mut report = AuditReport {
        tolerance: tol,
        rows_checked: program.num_constraints(),
        columns_checked: program.num_vars(),
        objective: program.objective_value(&x),
        ..Default::default()
    };

    for c in program.constraints() {
        let lhs = c.activity(&x);
        let amount = match c.sense {
            Sense::Le => (lhs - c.rhs).max(0.0),
            Sense::Ge => (c.rhs - lhs).max(0.0),
            Sense::Eq => (lhs - c.rhs).abs(),
        };
        let scaled = amount / (1.0 + c.rhs.abs());
        report.max_residual = report.max_residual.max(scaled);
        if scaled > tol || amount.is_nan() {
            report.violations.push(Violation {
                kind: ViolationKind::Row,
                name: c.name.clone(),
                block: c.block().to_string(),
                amount,
                scaled,
            });
        }
    }

    for (v, &val) in program.variables().iter().zip(&x) {
        let (amount, reference) = if val < v.lower {
            (v.lower - val, v.lower)
        } else if val > v.upper {
            (val - v.upper, v.upper)
        } else {
            (0.0, 0.0)
        };
        let scaled = amount / (1.0 + reference.abs());
        if scaled > tol || val.is_nan() {
            report.violations.push(Violation {
                kind: ViolationKind::Bound,
                name: v.name.clone(),
                block: v.block().to_string(),
                amount,
                scaled,
            });
        }
        if v.kind == VarKind::Binary {
            let frac = (val - val.round()).abs();
            if frac > tol {
                report.violations.push(Violation {
                    kind: ViolationKind::Integrality,
                    name: v.name.clone(),
                    block: v.block().to_string(),
                    amount: frac,
                    scaled: frac,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solution::SolveStatus;

    fn sol(pairs: &[(&str, f64)]) -> Solution {
        Solution {
            status: SolveStatus::Optimal,
            objective: None,
            mip_gap: None,
            values: pairs.iter().map(|&(n, v)| (n.to_string(), v)).collect(),
        }
    }

    #[test]
    fn flags_each_kind() {
        let mut p = Program::new("t");
        let x = p.add_var("blk.x", 0.0, 5.0, VarKind::Continuous).unwrap();
        let z = p.binary("z").unwrap();
        p.add_constr("row.a", [(x, 1.0), (z, 1.0)], Sense::Le, 3.0).unwrap();
        let ok = audit(&p, &sol(&[("blk.x", 2.0), ("z", 1.0)]), DEFAULT_TOLERANCE).unwrap();
        assert!(ok.is_feasible());
        assert_eq!(ok.max_residual, 0.0);

        let bad = audit(&p, &sol(&[("blk.x", 6.0), ("z", 0.5)]), DEFAULT_TOLERANCE).unwrap();
        let kinds: Vec<_> = bad.violations.iter().map(|v| (v.kind, v.block.as_str())).collect();
        assert_eq!(
            kinds,
            vec![
                (ViolationKind::Row, "row"),
                (ViolationKind::Bound, "blk"),
                (ViolationKind::Integrality, "z")
            ]
        );
        assert!((bad.max_residual - 3.5 / 4.0).abs() < 1e-12);
    }

    #[test]
    fn tolerance_scales_with_rhs() {
        let mut p = Program::new("t");
        let x = p.nonneg("x").unwrap();
        p.add_constr("big", [(x, 1.0)], Sense::Eq, 1e6).unwrap();
        let r = audit(&p, &sol(&[("x", 1e6 + 0.5)]), 1e-6).unwrap();
        assert!(r.is_feasible());
        let r = audit(&p, &sol(&[("x", 1e6 + 2.0)]), 1e-6).unwrap();
        assert!(!r.is_feasible());
    }
}
