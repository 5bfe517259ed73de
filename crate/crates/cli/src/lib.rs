//! Verification campaigns over the analytic Bethe ansatz engine.

pub mod acceptance;
pub mod checks;
pub mod config;
pub mod report;
