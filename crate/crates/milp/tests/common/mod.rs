use std::path::PathBuf;

use jpong_milp::SolverCommand;

pub fn highs() -> SolverCommand {
    let script = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../tools/highs_solve.py");
    SolverCommand::highs(&script).with_mip_gap(0.0)
}
