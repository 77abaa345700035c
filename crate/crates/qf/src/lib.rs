//! The `qf` command line front end: JSON file formats, table rendering and
//! the subcommands over `qf-core`.
//!
//! Exit status: 0 success, 1 negative verdict (not isomorphic, axiom
//! violation, failed check), 2 usage or input error, 3 size limit or search
//! budget exhausted. `QF_SEARCH_BUDGET` overrides the default search budget.

pub mod cli;
pub mod commands;
pub mod error;
pub mod io;
pub mod render;

use std::ffi::OsString;

use clap::Parser;

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match cli::Cli::try_parse_from(args) {
        Ok(cli) => commands::finish(commands::execute(cli.command)),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
