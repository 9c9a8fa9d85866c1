//! The `adams-spectra` command line: argument parsing, subcommands,
//! verification suites and the OEIS cross-check client.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;
pub mod oeis;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser};
use serde_json::json;

use crate::args::{Cli, Format};
pub use crate::error::CliError;
pub use crate::output::Rendered;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    let command = commands::name(&cli.command);
    let echoed: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match commands::execute(&cli.command) {
        Ok(rendered) => {
            let _ = out.write_all(rendered.render(cli.format, command).as_bytes());
            rendered.exit_code
        }
        Err(CliError::Usage { subcommand, message }) => {
            let mut cmd = Cli::command();
            cmd.build();
            let sub = cmd.find_subcommand_mut(subcommand).expect("known subcommand");
            let _ = write!(err, "{}", sub.error(ErrorKind::ArgumentConflict, message).render());
            EXIT_USAGE
        }
        Err(CliError::Domain { name, message }) => {
            if cli.format == Format::Json {
                let body = json!({
                    "schema": output::SCHEMA_VERSION,
                    "command": command,
                    "error": {"name": name, "message": message, "input": echoed},
                });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&body).expect("json"));
            }
            let _ = writeln!(err, "error[{name}]: {message}\ninput: {}", echoed.join(" "));
            EXIT_DOMAIN
        }
    }
}
