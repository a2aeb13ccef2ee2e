//! Command-line driver for tensorion-core: configuration, the on-disk table cache,
//! the reproduction pipeline and the subcommand implementations.

pub mod cache;
pub mod commands;
pub mod config;
pub mod pipeline;
