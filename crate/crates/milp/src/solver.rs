//! External solver contract.
//!
//! A solver is any program that reads a model file and writes a solution
//! file. The command is given as a template in which `{input}`, `{output}`
//! and `{mip_gap}` are substituted per token; the template is split with
//! shell quoting rules but never run through a shell.
//!
//! Exit status 127, or a program that cannot be spawned, is reported as
//! [`MilpError::SolverUnavailable`]; any other nonzero status is
//! [`MilpError::SolverFailed`].

use std::path::{Path, PathBuf};
use std::process::Command;

use serde::{Deserialize, Serialize};

use crate::program::Program;
use crate::solution::Solution;
use crate::{lp, mps, MilpError, Result};

/// Environment variable that overrides the solver command template.
pub const SOLVER_ENV: &str = "JPONG_SOLVER";

/// Relative location of the bundled HiGHS wrapper script.
pub const HIGHS_WRAPPER: &str = "tools/highs_solve.py";

pub const DEFAULT_MIP_GAP: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileFormat {
    Lp,
    Mps,
}

impl FileFormat {
    pub fn extension(self) -> &'static str {
        match self {
            FileFormat::Lp => "lp",
            FileFormat::Mps => "mps",
        }
    }

    pub fn write(self, program: &Program, path: &Path) -> Result<()> {
        match self {
            FileFormat::Lp => lp::write(program, path),
            FileFormat::Mps => mps::write(program, path),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolutionFormat {
    Json,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverCommand {
    pub template: String,
    pub file_format: FileFormat,
    pub solution_format: SolutionFormat,
    pub mip_gap: f64,
}

impl SolverCommand {
    pub fn new(template: impl Into<String>) -> Self {
        SolverCommand {
            template: template.into(),
            file_format: FileFormat::Lp,
            solution_format: SolutionFormat::Json,
            mip_gap: DEFAULT_MIP_GAP,
        }
    }

    /// Template for the bundled HiGHS wrapper at `script`.
    pub fn highs(script: &Path) -> Self {
        let quoted = shlex::try_quote(&script.to_string_lossy())
            .map(|s| s.into_owned())
            .unwrap_or_else(|_| script.to_string_lossy().into_owned());
        Self::new(format!("python3 {quoted} {{input}} {{output}} --mip-gap {{mip_gap}}"))
    }

    /// `$JPONG_SOLVER` if set, otherwise the HiGHS wrapper found by walking
    /// up from the current directory and from the executable's directory.
    pub fn locate() -> Result<Self> {
        if let Ok(t) = std::env::var(SOLVER_ENV) {
            if !t.trim().is_empty() {
                return Ok(Self::new(t));
            }
        }
        let mut roots: Vec<PathBuf> = Vec::new();
        if let Ok(cwd) = std::env::current_dir() {
            roots.push(cwd);
        }
        if let Ok(exe) = std::env::current_exe() {
            if let Some(dir) = exe.parent() {
                roots.push(dir.to_path_buf());
            }
        }
        for root in roots {
            for dir in root.ancestors() {
                let candidate = dir.join(HIGHS_WRAPPER);
                if candidate.is_file() {
                    return Ok(Self::highs(&candidate));
                }
            }
        }
        Err(MilpError::SolverUnavailable(format!(
            "no ${SOLVER_ENV} set and {HIGHS_WRAPPER} not found"
        )))
    }

    pub fn with_format(mut self, format: FileFormat) -> Self {
        self.file_format = format;
        self
    }

    pub fn with_mip_gap(mut self, gap: f64) -> Self {
        self.mip_gap = gap;
        self
    }

    /// Expanded argument vector for the given files.
    pub fn argv(&self, input: &Path, output: &Path) -> Result<Vec<String>> {
        let tokens = shlex::split(&self.template).ok_or_else(|| MilpError::BadCommand(self.template.clone()))?;
        if tokens.is_empty() {
            return Err(MilpError::BadCommand(self.template.clone()));
        }
        let gap = self.mip_gap.to_string();
        Ok(tokens
            .into_iter()
            .map(|t| {
                t.replace("{input}", &input.to_string_lossy())
                    .replace("{output}", &output.to_string_lossy())
                    .replace("{mip_gap}", &gap)
            })
            .collect())
    }

    /// Runs the solver on already-written `input` and reads `output`.
    pub fn run_files(&self, input: &Path, output: &Path) -> Result<Solution> {
        let argv = self.argv(input, output)?;
        let _ = std::fs::remove_file(output);
        let result = Command::new(&argv[0]).args(&argv[1..]).output();
        let out = match result {
            Ok(o) => o,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Err(MilpError::SolverUnavailable(format!("`{}` not found", argv[0])));
            }
            Err(e) => return Err(MilpError::io(&argv[0], e)),
        };
        let stderr = String::from_utf8_lossy(&out.stderr).trim().to_string();
        match out.status.code() {
            Some(0) => {}
            Some(127) => return Err(MilpError::SolverUnavailable(stderr)),
            code => return Err(MilpError::SolverFailed { code, stderr }),
        }
        if !output.is_file() {
            return Err(MilpError::Solution(format!(
                "solver exited cleanly but wrote no {}",
                output.display()
            )));
        }
        match self.solution_format {
            SolutionFormat::Json => Solution::read_json(output),
            SolutionFormat::Text => Solution::read_text(output),
        }
    }

    /// Writes `program` into `dir` as `<stem>.<ext>`, solves it, and returns
    /// the solution. The solution file is left next to the model.
    pub fn solve_in(&self, program: &Program, dir: &Path, stem: &str) -> Result<Solution> {
        std::fs::create_dir_all(dir).map_err(|e| MilpError::io(dir, e))?;
        let input = dir.join(format!("{stem}.{}", self.file_format.extension()));
        let output = dir.join(format!("{stem}.sol.json"));
        self.file_format.write(program, &input)?;
        self.run_files(&input, &output)
    }
}
