#![allow(clippy::needless_range_loop)]

pub mod ade;
pub mod cli;
pub mod config;
pub mod cover;
pub mod descent;
pub mod examples;
pub mod lattice;
