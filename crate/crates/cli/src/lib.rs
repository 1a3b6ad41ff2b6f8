//! Text front end: a definition language, inputs by file or corpus name, and
//! reports in table or JSON form.

pub mod commands;
pub mod dsl;
pub mod env;
pub mod report;

pub use commands::{run, Outcome};
