//! Experiment runner and acceptance suite for `pwlab-core`.

pub mod acceptance;
pub mod config;
pub mod experiments;
pub mod table;
