//! Library surface of the CLI: argument types, the point-map file schema
//! and report rendering, shared with the integration tests.

pub mod args;
pub mod pointmap_file;
pub mod render;
