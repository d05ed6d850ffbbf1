//! Command-line front end.
//!
//! ```text
//! xmlcheck validate <path>... [--json] [--no-require-declaration]
//!                             [--max-errors N] [--encoding utf8|ascii] [--quiet]
//! xmlcheck serve [--listen ADDR] [--assets DIR] [--max-source-bytes N]
//! xmlcheck version
//! ```
//!
//! Exit codes: 0 when every file is well-formed, 1 when any file is not, 2 on
//! I/O or usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::net::SocketAddr;
use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::document_io::load_file;
use crate::report_json::JsonReport;
use crate::service::{self, ServiceConfig};
use crate::wellformedness::{check_loaded_document, EncodingMode, ParserOptions, ValidationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_WELL_FORMED: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "xmlcheck",
    about = "Check XML documents for well-formedness",
    disable_version_flag = true
)]
pub struct CliInvocation {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one or more files and report every problem found
    Validate(ValidateArgs),
    /// Reserved for a future formatting check
    #[command(name = "fmt-check", hide = true)]
    FmtCheck {
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Print the version
    Version,
    /// Run the HTTP validation service
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(required = true)]
    pub paths: Vec<PathBuf>,
    /// Print a JSON array with one report per file
    #[arg(long)]
    pub json: bool,
    /// Accept documents without an XML declaration
    #[arg(long = "no-require-declaration", action = ArgAction::SetFalse)]
    pub require_declaration: bool,
    #[arg(long, default_value = "100")]
    pub max_errors: NonZeroUsize,
    #[arg(long, value_enum, default_value_t = EncodingArg::Utf8)]
    pub encoding: EncodingArg,
    /// Print nothing in text mode; only the exit code reports the result
    #[arg(long, short)]
    pub quiet: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EncodingArg {
    Utf8,
    Ascii,
}

impl From<EncodingArg> for EncodingMode {
    fn from(arg: EncodingArg) -> Self {
        match arg {
            EncodingArg::Utf8 => EncodingMode::Utf8,
            EncodingArg::Ascii => EncodingMode::Ascii,
        }
    }
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = "XMLCHECK_LISTEN", default_value = "127.0.0.1:8080")]
    pub listen: SocketAddr,
    /// Directory holding the editor's static files
    #[arg(long, env = "XMLCHECK_ASSETS", default_value = "assets")]
    pub assets: PathBuf,
    #[arg(long, env = "XMLCHECK_MAX_SOURCE_BYTES", default_value_t = service::DEFAULT_MAX_SOURCE_BYTES)]
    pub max_source_bytes: usize,
}

impl ValidateArgs {
    pub fn parser_options(&self) -> ParserOptions {
        ParserOptions {
            require_declaration: self.require_declaration,
            max_errors: self.max_errors,
            encoding_mode: self.encoding.into(),
            ..ParserOptions::default()
        }
    }
}

/// Parses `args` (program name first) and runs the command. Usage errors go
/// to `err` with exit code 2; `--help` goes to `out` with exit code 0.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match CliInvocation::try_parse_from(args) {
        Ok(invocation) => run(&invocation, out, err),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_FAILURE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            }
        }
    }
}

pub fn run(invocation: &CliInvocation, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match &invocation.command {
        Command::Validate(args) => validate(args, out, err),
        Command::FmtCheck { .. } => {
            let _ = writeln!(err, "xmlcheck: fmt-check is reserved and not available yet");
            EXIT_FAILURE
        }
        Command::Version => {
            let _ = writeln!(out, "xmlcheck {}", env!("CARGO_PKG_VERSION"));
            EXIT_OK
        }
        Command::Serve(args) => serve(args, err),
    }
}

fn validate(args: &ValidateArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let options = args.parser_options();
    let results: Vec<_> = args
        .paths
        .par_iter()
        .map(|path| {
            load_file(path, options.encoding_mode).map(|doc| check_loaded_document(&doc, &options))
        })
        .collect();

    let mut exit = EXIT_OK;
    let mut json_reports = Vec::new();
    for (path, result) in args.paths.iter().zip(results) {
        match result {
            Ok(report) => {
                if !report.well_formed {
                    exit = exit.max(EXIT_NOT_WELL_FORMED);
                }
                if args.json {
                    json_reports.push(JsonReport::from(&report));
                } else if !args.quiet {
                    let _ = out.write_all(
                        format_text_report(&path.display().to_string(), &report).as_bytes(),
                    );
                }
            }
            Err(e) => {
                let _ = writeln!(err, "xmlcheck: {e}");
                exit = EXIT_FAILURE;
            }
        }
    }
    if args.json {
        let written = serde_json::to_writer_pretty(&mut *out, &json_reports)
            .map_err(std::io::Error::from)
            .and_then(|()| writeln!(out));
        if let Err(e) = written {
            let _ = writeln!(err, "xmlcheck: cannot write report: {e}");
            exit = EXIT_FAILURE;
        }
    }
    exit
}

/// Compiler-style text: one `path:line:column: severity: CODE: message` line
/// per diagnostic, then a summary line.
pub fn format_text_report(path: &str, report: &ValidationReport) -> String {
    let mut text = String::new();
    for d in &report.diagnostics {
        text.push_str(&format!(
            "{path}:{}:{}: {}: {}: {}\n",
            d.span.start.line, d.span.start.column, d.severity, d.code, d.message
        ));
    }
    if report.well_formed {
        text.push_str(&format!("{path}: well-formed\n"));
    } else {
        text.push_str(&format!(
            "{path}: NOT well-formed ({} errors, {} warnings)\n",
            report.error_count, report.warning_count
        ));
    }
    text
}

fn serve(args: &ServeArgs, err: &mut dyn Write) -> i32 {
    let config = ServiceConfig {
        listen: args.listen,
        asset_dir: args.assets.clone(),
        max_source_bytes: args.max_source_bytes,
    };
    let runtime = match tokio::runtime::Runtime::new() {
        Ok(rt) => rt,
        Err(e) => {
            let _ = writeln!(err, "xmlcheck: cannot start runtime: {e}");
            return EXIT_FAILURE;
        }
    };
    match runtime.block_on(service::serve(config)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "xmlcheck: {e}");
            EXIT_FAILURE
        }
    }
}
