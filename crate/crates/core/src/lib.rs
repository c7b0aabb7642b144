//! Power and gas network model, residential demand synthesis, weather and
//! wind tools, and the joint power-gas planning MILP builder.

pub mod analytics;
pub mod demand;
pub mod fixtures;
mod error;
pub mod model;
pub mod morph;
pub mod network;
pub mod table;
pub mod units;
pub mod windcf;

pub use error::{CoreError, Result};
