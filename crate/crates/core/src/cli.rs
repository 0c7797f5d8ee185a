//! Command-line front end.
//!
//! Exit status: 0 success, 1 invalid input or failed precondition, 2 a
//! counterexample signal (no certificate, face or path found), 3 a search or
//! enumeration ceiling was hit.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::connectivity::{check_conditions, Method};
use crate::construction::{
    classify_link, find_cycle_pair, verify_certificate, SearchLimits, SearchOrder, DEFAULT_CEILING,
};
use crate::document::{parse_measurements, parse_network};
use crate::error::{Error, Result};
use crate::graph::Network;
use crate::measurement::{
    enumerate_simple_paths, identify, lemma1_transform, MeasurementMatrix, DEFAULT_PATH_CAP,
};
use crate::report::{
    to_text, CertificateDocument, ClassificationDocument, ConditionsDocument, ErrorDocument,
    IdentifyDocument, PathsDocument, RoundTripDocument, TransformDocument,
};
use crate::simulation::{random_network, round_trip};

#[derive(Debug, Clone, Parser)]
#[command(
    name = "tomolink",
    version,
    about = "Two-monitor link metric identifiability"
)]
pub struct CommandRequest {
    #[command(subcommand)]
    pub command: Command,
    /// Write the output document here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check both identifiability conditions.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Characterization)]
        method: MethodArg,
    },
    /// List every simple path between the monitors.
    Paths {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        cap: CapArgs,
    },
    /// Export the block form of the measurement matrix.
    Transform {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        cap: CapArgs,
    },
    /// Rank test for every link, with optional recovery from measurements.
    Identify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        cap: CapArgs,
        /// Path measurements in row order, as a JSON array or plain text.
        #[arg(long)]
        measurements: Option<PathBuf>,
    },
    /// Find and verify a cycle-pair certificate for one interior link.
    Construct {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        target: LinkArgs,
    },
    /// Classify one interior link as border or non-border.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        target: LinkArgs,
    },
    /// Generate a network, assign weights and recover them.
    Simulate {
        /// Use this network instead of generating one.
        #[arg(long, conflicts_with_all = ["nodes", "extra_links"])]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        nodes: usize,
        #[arg(long, default_value_t = 4)]
        extra_links: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Graph document.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CapArgs {
    /// Maximum number of enumerated paths.
    #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
    pub cap: usize,
}

#[derive(Debug, Clone, Args)]
pub struct LinkArgs {
    /// Interior link as `u-v`.
    #[arg(long)]
    pub link: String,
    #[arg(long, env = "TOMOLINK_CEILING", default_value_t = DEFAULT_CEILING)]
    pub ceiling: usize,
    /// Also write a Graphviz rendering of the certificate.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Characterization,
    BruteForce,
}

/// Exit status plus the documents to write.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub document: String,
    pub dot: Option<(PathBuf, String)>,
}

fn load(path: &Path) -> Result<Network> {
    parse_network(&read(path)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn positive(value: usize, flag: &str) -> Result<usize> {
    if value == 0 {
        return Err(Error::MalformedInput(format!("--{flag} must be positive")));
    }
    Ok(value)
}

fn validate(request: &CommandRequest) -> Result<()> {
    match &request.command {
        Command::Paths { cap, .. }
        | Command::Transform { cap, .. }
        | Command::Identify { cap, .. } => {
            positive(cap.cap, "cap")?;
        }
        Command::Construct { target, .. } | Command::Classify { target, .. } => {
            positive(target.ceiling, "ceiling")?;
        }
        Command::Simulate {
            input: None, nodes, ..
        } if *nodes < 4 => {
            return Err(Error::Infeasible(format!(
                "need at least 4 nodes, got {nodes}"
            )));
        }
        _ => {}
    }
    Ok(())
}

fn execute(request: &CommandRequest) -> Result<(String, Option<(PathBuf, String)>)> {
    validate(request)?;
    Ok(match &request.command {
        Command::Check { input, method } => {
            let net = load(&input.input)?;
            let method = match method {
                MethodArg::Characterization => Method::Characterization,
                MethodArg::BruteForce => Method::BruteForce,
            };
            let report = check_conditions(&net, method)?;
            (to_text(&ConditionsDocument::new(&net, &report)), None)
        }
        Command::Paths { input, cap } => {
            let net = load(&input.input)?;
            let paths = enumerate_simple_paths(&net, cap.cap)?;
            (to_text(&PathsDocument::new(&net, &paths)), None)
        }
        Command::Transform { input, cap } => {
            let net = load(&input.input)?;
            let m = MeasurementMatrix::for_network(&net, cap.cap)?;
            let t = lemma1_transform(&m, &net)?;
            (to_text(&TransformDocument::new(&net, &m, &t)), None)
        }
        Command::Identify {
            input,
            cap,
            measurements,
        } => {
            let net = load(&input.input)?;
            let values = measurements
                .as_deref()
                .map(|p| parse_measurements(&read(p)?))
                .transpose()?;
            let report = identify(&net, cap.cap, values.as_deref())?;
            (to_text(&IdentifyDocument::new(&net, &report)), None)
        }
        Command::Construct { input, target } => {
            let net = load(&input.input)?;
            let link = net.parse_link(&target.link)?;
            let limits = SearchLimits::new(target.ceiling);
            let cert = find_cycle_pair(&net, link, &limits, SearchOrder::Canonical)?;
            let verdicts = verify_certificate(&net, &cert)?;
            let dot = target
                .dot
                .clone()
                .map(|p| (p, crate::dot::render(&net, Some(&cert))));
            (
                to_text(&CertificateDocument::new(&net, &cert, &verdicts)),
                dot,
            )
        }
        Command::Classify { input, target } => {
            let net = load(&input.input)?;
            let link = net.parse_link(&target.link)?;
            let limits = SearchLimits::new(target.ceiling);
            let class = classify_link(&net, link, &limits, SearchOrder::Canonical)?;
            let dot = target
                .dot
                .clone()
                .map(|p| (p, crate::dot::render(&net, Some(&class.witness))));
            (to_text(&ClassificationDocument::new(&net, &class)), dot)
        }
        Command::Simulate {
            input,
            nodes,
            extra_links,
            seed,
        } => {
            let net = match input {
                Some(p) => load(p)?,
                None => random_network(*nodes, *extra_links, *seed)?,
            };
            let report = round_trip(&net, *seed)?;
            (to_text(&RoundTripDocument::new(&net, &report)), None)
        }
    })
}

/// Runs one request. Failures become an error document.
pub fn run(request: &CommandRequest) -> Outcome {
    match execute(request) {
        Ok((document, dot)) => Outcome {
            exit_code: 0,
            document,
            dot,
        },
        Err(e) => Outcome {
            exit_code: e.exit_code(),
            document: to_text(&ErrorDocument::new(&e)),
            dot: None,
        },
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path.file_name().unwrap_or_default().to_string_lossy();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut f = std::fs::File::create(&tmp).map_err(io)?;
    f.write_all(contents.as_bytes()).map_err(io)?;
    f.sync_all().map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

/// Full process behaviour: parse arguments, run, write outputs. Returns the
/// exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let request = match CommandRequest::try_parse_from(args) {
        Ok(r) => r,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = run(&request);
    let mut status = outcome.exit_code;
    let mut write = |path: Option<&Path>, text: &str| match path {
        Some(p) => {
            if let Err(e) = write_atomic(p, text) {
                eprintln!("{e}");
                status = 1;
            }
        }
        None => print!("{text}"),
    };
    write(request.output.as_deref(), &outcome.document);
    if let Some((p, text)) = &outcome.dot {
        write(Some(p), text);
    }
    if outcome.exit_code != 0 {
        eprintln!("tomolink: exit {}", outcome.exit_code);
    }
    status
}
