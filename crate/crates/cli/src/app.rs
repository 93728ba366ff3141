//! Argument parsing, dispatch and exit codes.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};
use trimat_core::cotorsion::PairSide;

use crate::cache::{default_cache_dir, sha256_hex};
use crate::commands::{self, Session, Theorem};
use crate::config::{load_config, parse_config, Over, WorkbenchConfig};
use crate::report::{exit, CommandEcho, Report, Runtime};

#[derive(Debug, Parser)]
#[command(name = "workbench", version, about = "Check n-cotorsion pairs over triangular matrix algebras of finite quivers")]
pub struct Cli {
    /// Config file, or `example-a` / `example-b` for the bundled ones.
    #[arg(long, global = true)]
    pub config: Option<String>,
    /// Side of the pair (`left` or `right`); defaults to the config's.
    #[arg(long, global = true)]
    pub side: Option<PairSide>,
    /// Level of the pair; defaults to the config's.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest Ext dimension whose classes are enumerated.
    #[arg(long, global = true)]
    pub budget_ext: Option<usize>,
    /// Per-vertex dimension cap for the catalogs.
    #[arg(long, global = true)]
    pub dim_cap: Option<usize>,
    /// Write the JSON report here (`-` for standard output).
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    /// Add cache status and timings to the report.
    #[arg(long, global = true)]
    pub timings: bool,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// List the indecomposables of A, B and the triangular algebra.
    Catalog,
    /// Check whether two classes form an n-cotorsion pair.
    CheckPair {
        #[arg(long, default_value = "a")]
        over: Over,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
    /// Run one of the theorem checkers on the configured classes.
    Verify {
        #[arg(value_enum)]
        theorem: Theorem,
    },
    /// The right (or left) Ext-orthogonal class at level n.
    Perp {
        #[arg(long, default_value = "a")]
        over: Over,
        #[arg(long)]
        class: String,
    },
    /// Build the classes over the triangular algebra from the components.
    Construct,
    /// Recompute the bundled examples and compare with the expected listings.
    ReproduceExample {
        /// Field characteristics to run at.
        #[arg(long = "p", default_values_t = [2u32])]
        p: Vec<u32>,
    },
}

fn config_of(cli: &Cli) -> Result<(String, WorkbenchConfig)> {
    let name = cli.config.clone().ok_or_else(|| anyhow!("--config is required for this command"))?;
    let mut config = match name.as_str() {
        "example-a" if !Path::new(&name).exists() => parse_config(crate::EXAMPLE_A)?,
        "example-b" if !Path::new(&name).exists() => parse_config(crate::EXAMPLE_B)?,
        path => load_config(Path::new(path))?,
    };
    if let Some(n) = cli.n {
        config.n = n;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(limit) = cli.budget_ext {
        config.budgets.ext_limit = limit;
    }
    if let Some(cap) = cli.dim_cap {
        config.budgets.dim_cap = cap;
    }
    if let Some(side) = cli.side {
        config.side = Some(side.to_string());
    }
    config.validate()?;
    Ok((name, config))
}

fn echo(cli: &Cli) -> CommandEcho {
    let mut options = BTreeMap::new();
    let mut put = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            options.insert(k.to_string(), v);
        }
    };
    put("config", cli.config.clone());
    put("side", cli.side.map(|s| s.to_string()));
    put("n", cli.n.map(|x| x.to_string()));
    put("seed", cli.seed.map(|x| x.to_string()));
    put("budget_ext", cli.budget_ext.map(|x| x.to_string()));
    put("dim_cap", cli.dim_cap.map(|x| x.to_string()));
    let name = match &cli.command {
        Cmd::Catalog => "catalog",
        Cmd::CheckPair { over, first, second } => {
            put("over", Some(format!("{over:?}").to_lowercase()));
            put("first", Some(first.clone()));
            put("second", Some(second.clone()));
            "check-pair"
        }
        Cmd::Verify { theorem } => {
            put("theorem", Some(format!("{theorem:?}")));
            "verify"
        }
        Cmd::Perp { over, class } => {
            put("over", Some(format!("{over:?}").to_lowercase()));
            put("class", Some(class.clone()));
            "perp"
        }
        Cmd::Construct => "construct",
        Cmd::ReproduceExample { p } => {
            put("p", Some(p.iter().map(u32::to_string).collect::<Vec<_>>().join(",")));
            "reproduce-example"
        }
    };
    CommandEcho { name: name.to_string(), options }
}

/// Errors that mean "not decidable within the budgets" rather than misuse.
fn is_undecided(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        matches!(
            c.downcast_ref::<trimat_core::Error>(),
            Some(trimat_core::Error::Undecided(_) | trimat_core::Error::IncompleteCatalog(_))
        )
    })
}

fn execute(cli: &Cli, report: &mut Report, lines: &mut Vec<String>, ms: &mut BTreeMap<String, u128>) -> Result<Option<crate::cache::CacheStatus>> {
    let cache_dir = if cli.no_cache { None } else { Some(cli.cache_dir.clone().unwrap_or_else(default_cache_dir)) };
    if let Cmd::ReproduceExample { p } = &cli.command {
        report.config_hash = sha256_hex(format!("{}{}", crate::EXAMPLE_A, crate::EXAMPLE_B).as_bytes());
        for &p in p {
            commands::reproduce_example(p, cache_dir.as_deref(), cli.budget_ext, report, lines)?;
        }
        return Ok(None);
    }
    let (_, config) = config_of(cli)?;
    report.config_hash = sha256_hex(&serde_json::to_vec(&config)?);
    report.seed = config.seed;
    let side = config.default_side();
    let n = config.n;
    let session = Session::open(config, cache_dir.as_deref())?;
    ms.insert("catalogs".into(), session.build_ms);
    let start = Instant::now();
    report.catalogs = Some(crate::report::Catalogs::of(&session.ws));
    match &cli.command {
        Cmd::Catalog => commands::catalog(&session, report, lines),
        Cmd::CheckPair { over, first, second } => commands::check_pair(&session, *over, first, second, side, n, report, lines)?,
        Cmd::Verify { theorem } => commands::verify(&session, *theorem, side, n, report, lines)?,
        Cmd::Perp { over, class } => commands::perp(&session, *over, class, side, n, report, lines)?,
        Cmd::Construct => commands::construct(&session, n, report, lines)?,
        Cmd::ReproduceExample { .. } => unreachable!("handled above"),
    }
    ms.insert("command".into(), start.elapsed().as_millis());
    Ok(Some(session.cache))
}

/// Parses `args`, runs the command and returns the exit code. Human output
/// goes to `out` (or `err` when the JSON report takes standard output).
pub fn run_with(args: impl IntoIterator<Item = OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::ERROR } else { exit::PASS };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let mut report = Report::new(echo(&cli), String::new(), cli.seed.unwrap_or(0));
    let mut lines = Vec::new();
    let mut ms = BTreeMap::new();
    let started = Instant::now();
    let cache = match execute(&cli, &mut report, &mut lines, &mut ms) {
        Ok(c) => c,
        Err(e) if is_undecided(&e) => {
            report.undecided(format!("{e:#}"));
            None
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            return exit::ERROR;
        }
    };
    if cli.timings {
        ms.insert("total".into(), started.elapsed().as_millis());
        report.runtime = Some(Runtime { cache: cache.unwrap_or(crate::cache::CacheStatus::Disabled), milliseconds: ms });
    }
    let json_to_stdout = cli.json.as_deref() == Some(Path::new("-"));
    let human: &mut dyn Write = if json_to_stdout { err } else { out };
    for line in &lines {
        let _ = writeln!(human, "{line}");
    }
    for item in &report.undecided {
        let _ = writeln!(human, "undecided: {item}");
    }
    let _ = writeln!(human, "verdict: {}", report.verdict.as_str());
    if let Some(path) = &cli.json {
        let json = report.to_json();
        let written = if json_to_stdout {
            out.write_all(json.as_bytes()).context("writing report")
        } else {
            std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))
        };
        if let Err(e) = written {
            let _ = writeln!(err, "error: {e:#}");
            return exit::ERROR;
        }
    }
    report.exit_code
}

pub fn run(args: impl IntoIterator<Item = OsString>) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
