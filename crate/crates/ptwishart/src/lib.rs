//! Monte Carlo simulation, JSON/CSV output and the command-line front end
//! for [`ptwishart_core`].

pub mod cli;
pub mod matrix;
pub mod report;
pub mod selftest;
pub mod sim;

pub use ptwishart_core as core;
