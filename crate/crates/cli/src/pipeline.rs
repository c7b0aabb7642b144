//! Pipeline stages. Each failure carries the exit code of its stage.

use std::fmt;
use std::path::{Path, PathBuf};

use jpong_core::analytics::{build_report, SolutionReport};
use jpong_core::model::{assemble, block_counts, ModelInputs, ScenarioSpec};
use jpong_milp::{audit, AuditReport, FileFormat, MilpError, Program, Solution, SolverCommand};

/// Process exit codes, one per stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Code {
    Usage = 2,
    Input = 3,
    Build = 4,
    SolverFailed = 5,
    NoSolution = 6,
    Audit = 7,
    Output = 8,
    SolverUnavailable = 127,
}

#[derive(Debug)]
pub struct Failure {
    pub code: Code,
    pub message: String,
}

impl Failure {
    pub fn new(code: Code, message: impl fmt::Display) -> Self {
        Failure {
            code,
            message: message.to_string(),
        }
    }
}

pub type Stage<T> = Result<T, Failure>;

/// One `key=value` log line on stderr per event.
pub fn log(stage: &str, fields: &[(&str, String)]) {
    let mut line = format!("jpong stage={stage}");
    for (k, v) in fields {
        if v.contains(char::is_whitespace) {
            line.push_str(&format!(" {k}={v:?}"));
        } else {
            line.push_str(&format!(" {k}={v}"));
        }
    }
    eprintln!("{line}");
}

pub fn output_err(path: &Path, e: impl fmt::Display) -> Failure {
    Failure::new(Code::Output, format!("{}: {e}", path.display()))
}

pub fn create_dir(dir: &Path) -> Stage<()> {
    std::fs::create_dir_all(dir).map_err(|e| output_err(dir, e))
}

pub fn load_case(case: &Path, rep_days: Option<usize>) -> Stage<ModelInputs> {
    let inputs = ModelInputs::load(case, rep_days).map_err(|e| Failure::new(Code::Input, e))?;
    log(
        "load",
        &[
            ("case", case.display().to_string()),
            ("power_nodes", inputs.network.power_nodes.len().to_string()),
            ("gas_nodes", inputs.network.gas_nodes.len().to_string()),
            ("rep_days", inputs.time.num_rep_days().to_string()),
        ],
    );
    Ok(inputs)
}

pub fn build(inputs: &ModelInputs, scenario: &ScenarioSpec) -> Stage<Program> {
    let p = assemble(inputs, scenario).map_err(|e| Failure::new(Code::Build, e))?;
    log(
        "build",
        &[
            ("scenario", scenario.name.clone()),
            ("vars", p.num_vars().to_string()),
            ("rows", p.num_constraints().to_string()),
            ("binaries", p.num_binaries().to_string()),
            ("blocks", block_counts(&p).len().to_string()),
        ],
    );
    Ok(p)
}

pub fn write_model(p: &Program, format: FileFormat, out: &Path) -> Stage<PathBuf> {
    create_dir(out)?;
    let path = out.join(format!("model.{}", format.extension()));
    format.write(p, &path).map_err(|e| output_err(&path, e))?;
    log("write", &[("model", path.display().to_string())]);
    Ok(path)
}

/// Path of the solution file written next to the model.
pub fn solution_path(out: &Path) -> PathBuf {
    out.join("model.sol.json")
}

pub fn solve(p: &Program, solver: &SolverCommand, out: &Path) -> Stage<Solution> {
    let input = write_model(p, solver.file_format, out)?;
    let output = solution_path(out);
    let sol = solver.run_files(&input, &output).map_err(|e| match e {
        MilpError::SolverUnavailable(_) => Failure::new(Code::SolverUnavailable, e),
        MilpError::Io { .. } | MilpError::BadCommand(_) | MilpError::SolverFailed { .. } => {
            Failure::new(Code::SolverFailed, e)
        }
        _ => Failure::new(Code::NoSolution, e),
    })?;
    log(
        "solve",
        &[
            ("status", sol.status.as_str().to_string()),
            ("objective", sol.objective.map(|v| v.to_string()).unwrap_or_else(|| "none".into())),
        ],
    );
    if !sol.status.has_values() {
        return Err(Failure::new(
            Code::NoSolution,
            format!("solver returned `{}` without a solution", sol.status.as_str()),
        ));
    }
    Ok(sol)
}

pub fn read_solution(path: &Path) -> Stage<Solution> {
    let sol = Solution::read_json(path)
        .or_else(|_| Solution::read_text(path))
        .map_err(|e| Failure::new(Code::Input, format!("{}: {e}", path.display())))?;
    if !sol.status.has_values() {
        return Err(Failure::new(
            Code::NoSolution,
            format!("{} has status `{}` and no values", path.display(), sol.status.as_str()),
        ));
    }
    Ok(sol)
}

/// Writes `audit.json`; violations fail the stage after the file is written.
pub fn audit_stage(p: &Program, sol: &Solution, tol: f64, out: &Path) -> Stage<AuditReport> {
    let rep = audit(p, sol, tol).map_err(|e| Failure::new(Code::Audit, e))?;
    create_dir(out)?;
    let path = out.join("audit.json");
    let mut text = serde_json::to_string_pretty(&rep).map_err(|e| output_err(&path, e))?;
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| output_err(&path, e))?;
    log(
        "audit",
        &[
            ("max_residual", rep.max_residual.to_string()),
            ("violations", rep.violations.len().to_string()),
        ],
    );
    if !rep.is_feasible() {
        let first = &rep.violations[0];
        return Err(Failure::new(
            Code::Audit,
            format!(
                "{} violations above {tol}; first: {} by {}",
                rep.violations.len(),
                first.name,
                first.amount
            ),
        ));
    }
    Ok(rep)
}

pub fn report(p: &Program, inputs: &ModelInputs, scenario: &ScenarioSpec, sol: &Solution, out: &Path) -> Stage<SolutionReport> {
    let r = build_report(p, inputs, scenario, sol).map_err(|e| Failure::new(Code::Output, e))?;
    let dir = out.join("report");
    r.write(&dir).map_err(|e| output_err(&dir, e))?;
    log(
        "report",
        &[
            ("dir", dir.display().to_string()),
            ("total_cost", r.costs.total.to_string()),
            ("emissions", r.emissions.total.to_string()),
        ],
    );
    Ok(r)
}
