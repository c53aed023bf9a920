//! Report-producing commands for the `rectadd` binary.

use std::path::PathBuf;

pub mod counterexample;
pub mod decomposition;
pub mod dyadic;
pub mod probe;
pub mod report;
pub mod strategies;
pub mod suites;
pub mod svg;

pub use counterexample::{cmd_counterexample, CounterexampleParams};
pub use decomposition::cmd_decompose;
pub use dyadic::cmd_dyadic_approx;
pub use probe::cmd_probe;
pub use report::{Finding, Report, Status};
pub use suites::{cmd_proptest, Suite};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("unknown suite `{0}` (expected additivity, tiling, halving, oracle, telescope or field)")]
    UnknownSuite(String),
    #[error(transparent)]
    Function(#[from] rectadd_core::RectFnError),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
