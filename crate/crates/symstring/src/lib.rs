//! Command-line driver, text formats, incidence export and multi-threaded
//! enumeration on top of [`symstring_core`].

pub mod cli;
pub mod error;
pub mod export;
pub mod parallel;
pub mod report;
pub mod text;

pub use error::{Error, Result};
pub use export::{export_incidence, import_incidence, parse_incidence, render_incidence};
pub use parallel::Parallel;
pub use report::{Outcome, RunReport};
pub use text::GeneratorFile;
