//! Library backing the `comanifold` binary: interchange document schemas,
//! the argument surface, and command execution. The binary is a thin shell
//! around [`run`], so tests can parse emitted documents with the exact
//! types that produced them.

pub mod cli;
pub mod commands;
pub mod schema;

pub use cli::{Cli, Command, Format, GeomCommand};
pub use commands::{resolve_format, run};
