//! Command-line sweeps, figure datasets and verification reports built on
//! [`relcoh_core`].

pub mod cli;
pub mod config;
pub mod error;
pub mod figures;
pub mod suite;
pub mod sweep;
pub mod values;

pub use relcoh_core as core;
