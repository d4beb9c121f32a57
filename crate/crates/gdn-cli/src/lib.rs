//! Library side of the `gdn` command: matrix IO, the CLI error/exit-code
//! convention, and the built-in claims suite shared by the `verify-paper`
//! subcommand and the acceptance tests.

pub mod io;
pub mod verify;
