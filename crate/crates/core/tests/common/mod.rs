#![allow(dead_code)]

use std::path::{Path, PathBuf};

use jpong_core::fixtures::Fixture;
use jpong_core::model::{assemble, ModelInputs, ScenarioSpec};
use jpong_milp::{audit, Program, Solution, SolverCommand};

pub fn highs() -> SolverCommand {
    let script = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../tools/highs_solve.py");
    SolverCommand::highs(&script).with_mip_gap(0.0)
}

pub fn load(f: &Fixture, dir: &Path) -> ModelInputs {
    f.load(&dir.join(&f.name)).expect("fixture loads")
}

/// Builds, solves and audits one scenario; returns the program and solution.
pub fn solve(inputs: &ModelInputs, sc: &ScenarioSpec, dir: &Path, stem: &str) -> (Program, Solution) {
    let p = assemble(inputs, sc).expect("model builds");
    let sol = highs().solve_in(&p, dir, stem).expect("solver runs");
    assert!(sol.status.has_values(), "{stem}: status {:?}", sol.status);
    let rep = audit(&p, &sol, 1e-6).expect("audit runs");
    assert!(rep.violations.is_empty(), "{stem}: {:?}", &rep.violations[..rep.violations.len().min(5)]);
    (p, sol)
}

/// Solves without asserting success; for cases expected to be infeasible.
pub fn try_solve(inputs: &ModelInputs, sc: &ScenarioSpec, dir: &Path, stem: &str) -> Solution {
    let p = assemble(inputs, sc).expect("model builds");
    highs().solve_in(&p, dir, stem).expect("solver runs")
}
