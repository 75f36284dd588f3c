//! Command-line frontend and file formats for the `decic-core`
//! exact-arithmetic toolkit.
//!
//! The binary exposes ten subcommands (`search`, `verify`, `torsion`,
//! `local-test`, `j-image`, `identities`, `fields`, `genus2`, `moebius`,
//! `padic`), each producing a deterministic report, as human-readable
//! text by default or JSON with `--json`. JSON schemas for every
//! subcommand live under `docs/` in this crate.
//!
//! Exit codes: 0 = every check passed / definitive verdict, 1 = a check
//! failed or was inconclusive (witnesses in the report), 2 = invalid
//! input.

pub mod commands;
pub mod format;
pub mod mapspec;
pub mod polyparse;
pub mod report;
pub mod schema;
pub mod workers;
