//! Solver-neutral mixed-integer linear programs.
//!
//! A [`Program`] is built up from named variables and linear rows, written
//! out in CPLEX-LP or free MPS form, handed to an external solver through a
//! command template, and the returned [`Solution`] can be checked against the
//! program with [`audit`].

pub mod audit;
mod error;
pub mod lp;
pub mod mps;
mod number;
mod program;
pub mod solution;
pub mod solver;

pub use audit::{audit, AuditReport, Violation, ViolationKind, DEFAULT_TOLERANCE};
pub use error::MilpError;
pub use program::{
    ConstrId, Constraint, ObjectiveTerm, Program, Sense, VarId, VarKind, Variable,
    OBJECTIVE_CONSTANT_NAME,
};
pub use solution::{Solution, SolveStatus};
pub use solver::{FileFormat, SolutionFormat, SolverCommand};

pub type Result<T, E = MilpError> = std::result::Result<T, E>;
