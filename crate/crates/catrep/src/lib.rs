//! JSON formats, text rendering and the command line for `catrep-core`.

pub mod cli;
pub mod json;
pub mod render;
