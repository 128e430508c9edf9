//! Fair submodular maximization over matroid constraints.

pub mod algorithms;
pub mod error;
pub mod exchange;
pub mod fairness;
pub mod harness;
pub mod matroid;
pub mod objective;
pub mod set;

pub use error::{Error, Result};
pub use fairness::{Color, FairnessSpec};
pub use matroid::MatroidSpec;
pub use objective::{Evaluator, ObjectiveSpec};
pub use set::{ElementId, ElementSet};
