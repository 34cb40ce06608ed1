//! Command-line front end for the `jetloci` library.

pub mod args;
pub mod input;
pub mod reports;
pub mod run;
pub mod tables;

pub use run::{run, Outcome};
