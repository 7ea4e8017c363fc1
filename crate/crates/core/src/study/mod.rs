//! Registries, convergence sweeps, reference tables and self-checks behind the `fcgram` CLI.

pub mod harness;
pub mod registry;
pub mod tables;
pub mod verify;
