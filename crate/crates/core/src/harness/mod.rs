//! Instance files, generators, experiment sweeps and solution checking.

pub mod generate;
pub mod instance;
pub mod runner;
pub mod sweep;
pub mod verify;

pub use generate::{gen_instance, GenParams, InstanceKind};
pub use instance::{Bounds, Instance, Metadata, Solution};
pub use runner::{run_once, AlgoSpec, Outcome, ResultRow, RowStatus};
pub use sweep::{mix_seed, parse_range, summarize, sweep, SummaryEntry, SweepSpec};
pub use verify::{verify, VerifyReport};
