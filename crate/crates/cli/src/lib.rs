//! `alphacheck`: command-line front end for the cyclic-density checks.
//!
//! Exit codes: 0 when every checked statement holds, 1 when a mathematical
//! counterexample was found (with witnesses in the output), 2 for usage,
//! I/O, parse or validation errors.

pub mod render;
pub mod sweep;

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cyclic_density::catalog::load_table;
use cyclic_density::density::{alpha, average_order, cyclic_subgroups};
use cyclic_density::group::{AssocCheck, SizeLimit, DEFAULT_SIZE_CAP, OVERRIDE_SIZE_CAP};
use cyclic_density::theorem::center_group;
use cyclic_density::{BuildOptions, Family, GroupError, GroupSpec, SpecError};

use crate::render::{render_report, render_sweep};
use crate::sweep::{run_sweep, OutputFormat, ReportEngine, SweepConfig, TheoremEngine};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Environment variable holding the global size cap.
pub const SIZE_CAP_ENV: &str = "ALPHACHECK_SIZE_CAP";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{label}: {source}")]
    Build { label: String, source: GroupError },
    #[error("{0}")]
    Config(String),
}

#[derive(Debug, Parser)]
#[command(name = "alphacheck", version, about = "Cyclic-subgroup density of finite groups versus their centers")]
pub struct Cli {
    /// Largest group order that may be built.
    #[arg(long, global = true, env = SIZE_CAP_ENV, default_value_t = DEFAULT_SIZE_CAP)]
    pub size_cap: usize,
    /// Allow groups up to 5040 elements (symmetric:7).
    #[arg(long, global = true)]
    pub size_override: bool,
    /// Sample associativity instead of the full check for imported tables above 512 elements.
    #[arg(long, global = true)]
    pub trust_table: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
#[group(multiple = false)]
pub struct FormatArgs {
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

impl FormatArgs {
    fn format(self) -> OutputFormat {
        if self.json {
            OutputFormat::Json
        } else if self.csv {
            OutputFormat::Csv
        } else {
            OutputFormat::Text
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print |G|, |C(G)|, alpha(G), alpha(Z(G)), o(G) and o(Z(G)).
    Alpha {
        #[arg(long)]
        group: String,
    },
    /// Run every check on one group.
    Verify {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Run every check on the catalog corpus.
    Sweep {
        #[arg(long, default_value_t = 256)]
        max_order: usize,
        /// Comma-separated family names; all families when omitted.
        #[arg(long, value_delimiter = ',')]
        families: Vec<String>,
        /// Extra Cayley-table files (repeatable).
        #[arg(long = "table")]
        tables: Vec<PathBuf>,
        /// Extra group specs (repeatable).
        #[arg(long = "group")]
        groups: Vec<String>,
        #[command(flatten)]
        format: FormatArgs,
        #[arg(long)]
        fail_fast: bool,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
    },
    /// Validate a Cayley-table file.
    Import {
        #[arg(long)]
        table: PathBuf,
    },
}

impl Cli {
    fn limit(&self) -> SizeLimit {
        if self.size_override {
            SizeLimit(self.size_cap.max(OVERRIDE_SIZE_CAP))
        } else {
            SizeLimit(self.size_cap)
        }
    }

    fn build_options(&self) -> BuildOptions {
        BuildOptions {
            limit: self.limit(),
            trust_tables: self.trust_table,
        }
    }
}

pub fn cmd_alpha(spec: &GroupSpec, opts: BuildOptions, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = spec.build(opts)?;
    let z = center_group(&g);
    let count = cyclic_subgroups(&g).subgroup_count;
    let approx = |r: &cyclic_density::Rational| format!("{r} (~{:.6})", r.to_f64());
    let lines = [
        format!("group        {}", g.label()),
        format!("order        {}", g.order()),
        format!("|C(G)|       {count}"),
        format!("alpha(G)     {}", approx(&alpha(&g))),
        format!("|Z(G)|       {}", z.order()),
        format!("alpha(Z(G))  {}", approx(&alpha(&z))),
        format!("o(G)         {}", approx(&average_order(&g))),
        format!("o(Z(G))      {}", approx(&average_order(&z))),
    ];
    for line in lines {
        writeln!(out, "{line}").map_err(io_err)?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(
    spec: &GroupSpec,
    opts: BuildOptions,
    format: OutputFormat,
    engine: &dyn ReportEngine,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let g = spec.build(opts)?;
    let report = engine.report(&g);
    out.write_all(render_report(&report, format).as_bytes()).map_err(io_err)?;
    Ok(if report.is_clean() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

pub fn cmd_sweep(config: &SweepConfig, engine: &dyn ReportEngine, out: &mut dyn Write) -> Result<i32, CliError> {
    let outcome = run_sweep(config, engine)?;
    out.write_all(render_sweep(&outcome, config.output_format).as_bytes())
        .map_err(io_err)?;
    Ok(if outcome.summary.counterexamples == 0 {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

pub fn cmd_import(path: &std::path::Path, opts: BuildOptions, out: &mut dyn Write) -> Result<i32, CliError> {
    let loaded = load_table(path, opts.trust_tables, opts.limit)?;
    let relabel: Vec<String> = loaded.relabel.iter().map(|e| e.to_string()).collect();
    let assoc = match loaded.associativity {
        AssocCheck::Full => "full".to_string(),
        AssocCheck::Sampled(n) => format!("sampled ({n} triples)"),
    };
    writeln!(out, "valid group of order {}", loaded.group.order()).map_err(io_err)?;
    writeln!(out, "identity at file index {}", loaded.identity_in_file).map_err(io_err)?;
    writeln!(out, "relabel {}", relabel.join(" ")).map_err(io_err)?;
    writeln!(out, "associativity {assoc}").map_err(io_err)?;
    Ok(EXIT_OK)
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Config(format!("write failed: {e}"))
}

/// Dispatch a parsed command line; returns the process exit code.
pub fn run(cli: &Cli, engine: &dyn ReportEngine, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cli, engine, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn dispatch(cli: &Cli, engine: &dyn ReportEngine, out: &mut dyn Write) -> Result<i32, CliError> {
    let opts = cli.build_options();
    match &cli.command {
        Command::Alpha { group } => cmd_alpha(&group.parse()?, opts, out),
        Command::Verify { group, format } => cmd_verify(&group.parse()?, opts, format.format(), engine, out),
        Command::Import { table } => cmd_import(table, opts, out),
        Command::Sweep {
            max_order,
            families,
            tables,
            groups,
            format,
            fail_fast,
            parallelism,
        } => {
            let families: BTreeSet<Family> = if families.is_empty() {
                Family::ALL.into_iter().collect()
            } else {
                families.iter().map(|f| f.trim().parse()).collect::<Result<_, _>>()?
            };
            let extra_groups = groups.iter().map(|g| g.parse()).collect::<Result<Vec<GroupSpec>, _>>()?;
            let config = SweepConfig {
                max_order: *max_order,
                families,
                include_tables: tables.clone(),
                extra_groups,
                output_format: format.format(),
                fail_fast: *fail_fast,
                size_override: cli.size_override,
                parallelism: *parallelism,
                size_cap: cli.size_cap,
                trust_tables: cli.trust_table,
            };
            cmd_sweep(&config, engine, out)
        }
    }
}

/// Parse arguments and run with the real verifier.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(&cli, &TheoremEngine, &mut stdout.lock(), &mut stderr.lock())
}
