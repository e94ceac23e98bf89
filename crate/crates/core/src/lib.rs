//! Whale, bat and whale-bat hybrid optimizers with benchmark suites,
//! run statistics and an experiment harness.

pub mod error;
pub mod numeric;
pub mod objectives;
pub mod optimizers;
pub mod analysis;
pub mod harness;
pub mod cli;

pub use error::{Error, Result};
