//! Command-line front end: `list`, `verify` and `eval`.

mod eval;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use eval::{evaluate, parse_call, Call, EvalError, Value, FUNCTIONS};

use crate::numerics::PrecisionContext;
use crate::registry::{self, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

impl Format {
    fn as_str(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "text",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// List catalog records with their kind, anchor and variable domains.
    List,
    /// Verify every matching record.
    Verify,
    /// Evaluate one call such as `qpoch(1/2,1/3,2)` or `jacobi(3,1/4; a=1, b=2)`.
    Eval { expression: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(name = "qorth", version, about = "Verify Pochhammer, Jacobi and q-series identities")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Only records whose id starts with this prefix.
    #[arg(long, global = true, default_value = "")]
    pub id_filter: String,
    #[arg(long, global = true, default_value_t = 10)]
    pub max_n: usize,
    /// Random joint samples per n when a degree grid is too large.
    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 256)]
    pub precision_bits: u32,
    /// Series tolerance is 2^tolerance_exp.
    #[arg(long, global = true, default_value_t = -80, allow_negative_numbers = true)]
    pub tolerance_exp: i32,
    #[arg(long, global = true, default_value_t = 200)]
    pub max_terms: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Exit 2 when the filter matches nothing.
    #[arg(long, global = true)]
    pub strict: bool,
}

impl CliConfig {
    pub fn from_args<I, T>(args: I) -> Result<Self, clap::Error>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        Self::try_parse_from(args)
    }

    /// Textual form that parses back to the same configuration.
    pub fn to_args(&self) -> Vec<String> {
        let mut out = vec!["qorth".to_string()];
        match &self.command {
            Command::List => out.push("list".into()),
            Command::Verify => out.push("verify".into()),
            Command::Eval { expression } => {
                out.push("eval".into());
                out.push(expression.clone());
            }
        }
        out.push(format!("--id-filter={}", self.id_filter));
        out.push(format!("--max-n={}", self.max_n));
        out.push(format!("--trials={}", self.trials));
        out.push(format!("--seed={}", self.seed));
        out.push(format!("--precision-bits={}", self.precision_bits));
        out.push(format!("--tolerance-exp={}", self.tolerance_exp));
        out.push(format!("--max-terms={}", self.max_terms));
        if let Some(p) = &self.output {
            out.push(format!("--output={}", p.display()));
        }
        out.push(format!("--format={}", self.format.as_str()));
        if self.strict {
            out.push("--strict".into());
        }
        out
    }

    pub fn precision(&self) -> Result<PrecisionContext, String> {
        let defaults = PrecisionContext::default();
        PrecisionContext::new(self.precision_bits, self.tolerance_exp, self.max_terms, defaults.max_product_factors())
            .map_err(|e| e.to_string())
    }

    pub fn verify_config(&self) -> Result<VerifyConfig, String> {
        if self.max_n == 0 {
            return Err("--max-n must be positive".into());
        }
        if self.trials == 0 {
            return Err("--trials must be positive".into());
        }
        Ok(VerifyConfig { max_n: self.max_n, trials: self.trials, seed: self.seed, ctx: self.precision()? })
    }
}

fn emit(cfg: &CliConfig, body: &str) -> Result<(), String> {
    match &cfg.output {
        Some(path) => fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes()).and_then(|_| out.flush()).map_err(|e| e.to_string())
        }
    }
}

#[derive(Serialize)]
struct ListEntry {
    id: &'static str,
    kind: String,
    anchor: &'static str,
    domains: String,
    control: bool,
}

pub fn cmd_list(cfg: &CliConfig) -> i32 {
    let entries: Vec<ListEntry> = registry::catalog()
        .into_iter()
        .filter(|r| r.id.starts_with(&cfg.id_filter))
        .map(|r| ListEntry { id: r.id, kind: r.kind().to_string(), anchor: r.anchor, domains: r.domains(), control: r.is_control() })
        .collect();
    let body = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&entries).expect("listing serializes") + "\n",
        Format::Text => entries
            .iter()
            .map(|e| {
                let tag = if e.control { "  [control]" } else { "" };
                format!("{}\t{}\t{}\t{}{}\n", e.id, e.kind, e.anchor, e.domains, tag)
            })
            .collect(),
    };
    match emit(cfg, &body) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn cmd_verify(cfg: &CliConfig) -> i32 {
    let vcfg = match cfg.verify_config() {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let report = registry::verify_all(&cfg.id_filter, &vcfg);
    if report.is_empty() {
        eprintln!("no matching identities: {:?}", cfg.id_filter);
        if cfg.strict {
            return EXIT_USAGE;
        }
    }
    let body = match cfg.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    if let Err(e) = emit(cfg, &body) {
        eprintln!("error: {e}");
        return EXIT_USAGE;
    }
    if report.any_failed() {
        EXIT_FAILED
    } else {
        EXIT_OK
    }
}

pub fn cmd_eval(cfg: &CliConfig, expression: &str) -> i32 {
    let ctx = match cfg.precision() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match parse_call(expression).and_then(|call| evaluate(&call, &ctx)) {
        Ok(value) => match emit(cfg, &format!("{}\n", value.render(&ctx))) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, EvalError::UnknownFunction(_)) {
                eprintln!("available: {}", FUNCTIONS.join(", "));
            }
            EXIT_USAGE
        }
    }
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::from_args(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match &cfg.command {
        Command::List => cmd_list(&cfg),
        Command::Verify => cmd_verify(&cfg),
        Command::Eval { expression } => cmd_eval(&cfg, expression),
    }
}
