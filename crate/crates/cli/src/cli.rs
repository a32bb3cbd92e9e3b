//! `itassoc mine` and `itassoc validate`.
//!
//! Exit codes: 0 success, 1 usage error, 2 input or parse error, 3 configuration error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use itassoc_core::{build_tree, mine, render_ascii, render_dot, validate_bundle, Severity, ValidationReport};

use crate::config::{load_config, ConfigError, PipelineConfig};
use crate::report::{render_table, Report};
use crate::streams::{parse_streams, parse_streams_csv, StreamError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CONFIG: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "itassoc", version, about = "Mine imprecise temporal associations {A, B} => {dT, C} from event streams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the full pipeline and print the rule report.
    Mine(MineArgs),
    /// Run the config and input validators only.
    Validate(ValidateArgs),
}

#[derive(Debug, clap::Args)]
struct MineArgs {
    /// Event streams as CSV (long or wide layout).
    #[arg(long)]
    input: PathBuf,
    /// Pipeline config (JSON).
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Append the decision tree to the report.
    #[arg(long, value_enum)]
    tree: Option<TreeFormat>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct ValidateArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeFormat {
    Ascii,
    Dot,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Config(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Input(_) => EXIT_INPUT,
            Failure::Config(_) => EXIT_CONFIG,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Config(m) => m,
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(err: ConfigError) -> Self {
        Failure::Config(err.to_string())
    }
}

impl From<StreamError> for Failure {
    fn from(err: StreamError) -> Self {
        if err.is_configuration() {
            Failure::Config(err.to_string())
        } else {
            Failure::Input(err.to_string())
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Reports go to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let (sink, code): (&mut dyn Write, u8) = if err.use_stderr() { (stderr, EXIT_USAGE) } else { (stdout, EXIT_OK) };
            let _ = write!(sink, "{}", err.render());
            return code;
        }
    };

    let result = match cli.command {
        Command::Mine(args) => cmd_mine(&args, stdout, stderr),
        Command::Validate(args) => cmd_validate(&args, stdout),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message());
            failure.exit_code()
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read input {}: {e}", path.display())))
}

fn cmd_mine(args: &MineArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<u8, Failure> {
    let (PipelineConfig { roles, mining }, _) = load_config(&args.config)?;
    let text = read_input(&args.input)?;
    let bundle = parse_streams_csv(&text, &roles)?;

    let findings = validate_bundle(&bundle);
    if findings.has_errors() {
        return Err(Failure::Input(listing(&findings)));
    }
    for finding in findings.with_severity(Severity::Warning) {
        let _ = writeln!(stderr, "{finding}");
    }

    let rules = mine(&bundle, &mining);
    let tree = args.tree.map(|_| build_tree(&rules));

    let document = match args.format {
        Format::Json => Report::new(&rules, tree).to_json(),
        Format::Table => {
            let mut text = render_table(&rules);
            if let (Some(kind), Some(tree)) = (args.tree, &tree) {
                text.push('\n');
                text.push_str(&match kind {
                    TreeFormat::Ascii => render_ascii(tree),
                    TreeFormat::Dot => render_dot(tree),
                });
            }
            text
        }
    };

    match &args.out {
        Some(path) => fs::write(path, document)
            .map_err(|e| Failure::Input(format!("cannot write report {}: {e}", path.display())))?,
        None => stdout
            .write_all(document.as_bytes())
            .map_err(|e| Failure::Input(format!("cannot write report: {e}")))?,
    }
    Ok(EXIT_OK)
}

fn cmd_validate(args: &ValidateArgs, stdout: &mut dyn Write) -> Result<u8, Failure> {
    if args.config.is_none() && args.input.is_none() {
        return Err(Failure::Usage("validate needs --config and/or --input".into()));
    }

    let mut report = ValidationReport::new();
    let mut config = None;
    if let Some(path) = &args.config {
        match load_config(path) {
            Ok((cfg, findings)) => {
                report.extend(findings);
                config = Some(cfg);
            }
            Err(ConfigError::Invalid(findings)) => report.extend(findings),
            Err(err) => return Err(err.into()),
        }
    }

    if let Some(path) = &args.input {
        let text = read_input(path)?;
        match &config {
            Some(cfg) => report.extend(validate_bundle(&parse_streams_csv(&text, &cfg.roles)?)),
            None => {
                let (_, streams) = parse_streams(&text)?;
                for stream in &streams {
                    report.extend(itassoc_core::validate_stream(stream, None));
                }
            }
        }
    }

    let _ = stdout.write_all(listing(&report).as_bytes());
    Ok(if report.has_errors() { EXIT_CONFIG } else { EXIT_OK })
}

fn listing(report: &ValidationReport) -> String {
    let mut out = String::new();
    for finding in &report.findings {
        out.push_str(&finding.to_string());
        out.push('\n');
    }
    let count = |s| report.with_severity(s).count();
    out.push_str(&format!(
        "{} error(s), {} warning(s), {} info\n",
        count(Severity::Error),
        count(Severity::Warning),
        count(Severity::Info)
    ));
    out
}
