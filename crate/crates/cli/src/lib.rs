pub mod builtin;
pub mod exec;
pub mod report;
pub mod scenario;

pub use exec::{run_text, Outcome, RunError, RunOptions};
