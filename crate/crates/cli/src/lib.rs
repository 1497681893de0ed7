//! The `permv` command line.
//!
//! [`run`] parses arguments, resolves the configuration and executes one
//! subcommand, returning the exit code and whatever should be printed.
//! The binary is a thin wrapper that writes the output and exits.
//!
//! Exit codes: `0` success, `1` a verification mismatch, `2` a usage or
//! input error, `3` a resource cap was exhausted.

mod args;
mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;

use clap::Parser;

pub use args::{Cli, Command, Format, GlobalArgs};
pub use config::{load_config, Config};
pub use report::{ReportDocument, REPORT_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// What a run produced.
#[derive(Debug)]
pub struct Output {
    pub code: i32,
    pub document: Option<ReportDocument>,
    /// The rendered report (or help text).
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn failure(code: i32, message: String) -> Self {
        Output {
            code,
            document: None,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Runs one invocation with the process environment.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(argv, &|k| std::env::var(k).ok())
}

/// Runs one invocation, looking environment variables up through `env`.
pub fn run_with_env<I, T>(argv: I, env: &dyn Fn(&str) -> Option<String>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output::failure(EXIT_USAGE, text)
            } else {
                Output {
                    code: EXIT_OK,
                    document: None,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let cfg = match load_config(cli.global.config.as_deref(), env, &cli.global) {
        Ok(c) => c,
        Err(msg) => return Output::failure(EXIT_USAGE, format!("error: {msg}\n")),
    };
    match commands::execute(&cli.command, &cfg) {
        Ok((doc, code)) => {
            let stdout = doc.render(cfg.format);
            let stderr = match code {
                EXIT_CAP => "error: a resource cap was exhausted; the report holds bounds only\n".into(),
                _ => String::new(),
            };
            Output {
                code,
                document: Some(doc),
                stdout,
                stderr,
            }
        }
        Err(f) => {
            let hint = if f.code == EXIT_CAP {
                " (raise max-pair-reductions or max-bytes in the config file)"
            } else {
                ""
            };
            Output::failure(f.code, format!("error: {}{hint}\n", f.message))
        }
    }
}

/// Parses `argv`, writes the output to stdout or `--out`, and returns the
/// process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let out_path = Cli::try_parse_from(&argv).ok().and_then(|c| c.global.out);
    let output = run(argv);
    eprint!("{}", output.stderr);
    if output.stdout.is_empty() {
        return output.code;
    }
    match out_path {
        Some(path) if output.document.is_some() => {
            if let Err(e) = std::fs::write(&path, &output.stdout) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        _ => print!("{}", output.stdout),
    }
    output.code
}
