//! Manifests, fixtures and verdict reports for the `nervekit` command.

pub mod commands;
pub mod manifest;
pub mod report;

pub use commands::run;
pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] nervekit::Error),
}
