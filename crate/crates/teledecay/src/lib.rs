//! Sweeps, reports and file formats on top of [`teledecay_core`].

pub mod config;
pub mod critical;
mod error;
pub mod format;
pub mod sweep;
pub mod verify;

pub use error::CliError;
