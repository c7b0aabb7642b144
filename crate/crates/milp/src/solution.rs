//! Solver results: status, objective and per-column values.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::program::{Program, OBJECTIVE_CONSTANT_NAME};
use crate::{MilpError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    TimeLimit,
    #[serde(untagged)]
    Other(String),
}

impl SolveStatus {
    pub fn parse(s: &str) -> Self {
        match s.trim().to_ascii_lowercase().as_str() {
            "optimal" => SolveStatus::Optimal,
            "infeasible" => SolveStatus::Infeasible,
            "unbounded" => SolveStatus::Unbounded,
            "time_limit" | "timelimit" => SolveStatus::TimeLimit,
            _ => SolveStatus::Other(s.trim().to_string()),
        }
    }

    pub fn as_str(&self) -> &str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::Unbounded => "unbounded",
            SolveStatus::TimeLimit => "time_limit",
            SolveStatus::Other(s) => s,
        }
    }

    /// Whether the solution carries usable column values.
    pub fn has_values(&self) -> bool {
        matches!(self, SolveStatus::Optimal | SolveStatus::TimeLimit)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub status: SolveStatus,
    #[serde(default)]
    pub objective: Option<f64>,
    #[serde(default)]
    pub mip_gap: Option<f64>,
    #[serde(default)]
    pub values: BTreeMap<String, f64>,
}

impl Solution {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let mut s: Solution = serde_json::from_str(text).map_err(|e| MilpError::Solution(e.to_string()))?;
        s.values.remove(OBJECTIVE_CONSTANT_NAME);
        Ok(s)
    }

    /// Plain text: one `name value` pair per line, `#` comments, and the
    /// reserved keys `@status`, `@objective` and `@mip_gap`.
    pub fn from_text_str(text: &str) -> Result<Self> {
        let mut sol = Solution {
            status: SolveStatus::Other("unknown".into()),
            objective: None,
            mip_gap: None,
            values: BTreeMap::new(),
        };
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (Some(key), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(MilpError::Parse {
                    line: i + 1,
                    message: "expected `name value`".into(),
                });
            };
            if key == "@status" {
                sol.status = SolveStatus::parse(value);
                continue;
            }
            let v: f64 = value.parse().map_err(|_| MilpError::Parse {
                line: i + 1,
                message: format!("bad number `{value}`"),
            })?;
            match key {
                "@objective" => sol.objective = Some(v),
                "@mip_gap" => sol.mip_gap = Some(v),
                OBJECTIVE_CONSTANT_NAME => {}
                _ => {
                    sol.values.insert(key.to_string(), v);
                }
            }
        }
        Ok(sol)
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| MilpError::io(path, e))?;
        Self::from_json_str(&text)
    }

    pub fn read_text(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| MilpError::io(path, e))?;
        Self::from_text_str(&text)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| MilpError::Solution(e.to_string()))?;
        std::fs::write(path, text).map_err(|e| MilpError::io(path, e))
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    /// Values laid out in the program's column order. Fails on the first
    /// column the solution does not mention.
    pub fn dense(&self, program: &Program) -> Result<Vec<f64>> {
        program
            .variables()
            .iter()
            .map(|v| self.values.get(&v.name).copied().ok_or_else(|| MilpError::MissingValue(v.name.clone())))
            .collect()
    }
}
