//! `untwist`: homology, untwisted discrete torsion and torus partition
//! functions of finite groups from the command line.
//!
//! Results go to stdout. Failures print `{"error": {...}}` to stdout and
//! exit with 2 (budget), 3 (parse or argument), 4 (verification mismatch)
//! or 1 (anything else).

mod cache;
mod error;
mod job;
mod report;
mod run;
mod scan;
mod settings;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use untwist::{Config, Exec};

use cache::Cache;
use error::CliError;
use job::{JobKind, JobRequest};
use report::Format;
use run::Context;

#[derive(Parser, Debug)]
#[command(name = "untwist", version, about = "Homology and untwisted discrete torsion of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug)]
struct Opts {
    /// Recompute with brute-force oracles and fail with exit 4 on disagreement.
    #[arg(long, global = true)]
    verify: bool,
    /// Build the H_0n relations from every commuting tuple and compare.
    #[arg(long, global = true)]
    paranoid: bool,
    /// Worker threads; 1 runs sequentially, 0 or absent uses all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, env = "UNTWIST_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// key = value file with budgets, `cache_dir` and `jobs`.
    #[arg(long, global = true, env = "UNTWIST_CONFIG")]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    order_cap: Option<usize>,
    #[arg(long, global = true)]
    table_cap: Option<usize>,
    #[arg(long, global = true)]
    orbit_cap: Option<u128>,
    #[arg(long, global = true)]
    count_cap: Option<u128>,
    #[arg(long, global = true)]
    bar_cells: Option<u128>,
    #[arg(long, global = true)]
    class_enum_cap: Option<u128>,
}

#[derive(Args, Debug)]
struct GroupDegree {
    /// Group spec: `S4`, `D8xC3`, `C2^3`, `Q8`, or `{"kind":"perm","degree":d,"generators":[[...]]}`.
    group: String,
    n: usize,
}

#[derive(Args, Debug)]
struct ClassArgs {
    #[command(flatten)]
    gd: GroupDegree,
    /// Comma-separated coordinates in the H^n(G, Z/m) basis, as listed by `brn`.
    #[arg(long)]
    class: String,
    #[arg(long = "mod")]
    modulus: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral homology H_n(G, Z).
    Homology(GroupDegree),
    /// H_n modulo alternating sums of commuting n-tuples.
    H0n(GroupDegree),
    /// H_n modulo cycles from abelian subgroups.
    Sha(GroupDegree),
    /// H^n(G, Z/m) and its untwisted subgroup.
    Brn {
        #[command(flatten)]
        gd: GroupDegree,
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Conjugation orbits of commuting n-tuples.
    Tuples(GroupDegree),
    /// Dijkgraaf-Witten partition function on the n-torus.
    Dw(ClassArgs),
    /// Torus partition function with per-sector amplitudes.
    Orbifold {
        #[command(flatten)]
        class: ClassArgs,
        /// JSON object from orbit index (in `tuples` order) to [re, im].
        #[arg(long)]
        sectors: PathBuf,
    },
    /// Invariants of every group spec file in a directory.
    Scan {
        dir: PathBuf,
        n: usize,
        #[arg(value_enum, default_value_t = ScanKind::H0n)]
        subcommand: ScanKind,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScanKind {
    Homology,
    H0n,
    Sha,
}

fn parse_class(s: &str) -> Result<Vec<u64>, CliError> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| CliError::Usage(format!("--class: `{x}` is not a non-negative integer"))))
        .collect()
}

fn parse_sectors(text: &str) -> Result<BTreeMap<usize, [f64; 2]>, CliError> {
    let raw: BTreeMap<String, [f64; 2]> =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("sector file: {e}")))?;
    raw.into_iter()
        .map(|(k, v)| {
            k.trim()
                .parse()
                .map(|i| (i, v))
                .map_err(|_| CliError::Usage(format!("sector file: key `{k}` is not an orbit index")))
        })
        .collect()
}

fn context(opts: &Opts) -> Result<(Context, usize), CliError> {
    let file = settings::load_config(opts.config.as_deref())?;
    let mut budgets = file.budgets;
    macro_rules! over {
        ($($f:ident),*) => { $( if let Some(v) = opts.$f { budgets.$f = v; } )* };
    }
    over!(order_cap, table_cap, orbit_cap, count_cap, bar_cells, class_enum_cap);
    let jobs = opts.jobs.or(file.jobs).unwrap_or(0);
    let exec = if jobs == 1 { Exec::Sequential } else { Exec::Parallel };
    let dir = if opts.no_cache {
        None
    } else {
        opts.cache_dir.clone().or(file.cache_dir).or_else(settings::default_cache_dir)
    };
    let cfg = Config { budgets, exec, ..Config::default() };
    let ctx = Context { cfg, cache: Cache::new(dir), verify: opts.verify, paranoid: opts.paranoid };
    Ok((ctx, jobs))
}

fn job_of(command: &Command) -> Result<Option<JobRequest>, CliError> {
    let simple = |gd: &GroupDegree, kind| JobRequest::new(gd.group.clone(), kind, gd.n);
    let with_class = |c: &ClassArgs, kind| -> Result<JobRequest, CliError> {
        let mut j = simple(&c.gd, kind);
        j.modulus = c.modulus;
        j.class = Some(parse_class(&c.class)?);
        Ok(j)
    };
    Ok(Some(match command {
        Command::Homology(gd) => simple(gd, JobKind::Homology),
        Command::H0n(gd) => simple(gd, JobKind::H0n),
        Command::Sha(gd) => simple(gd, JobKind::Sha),
        Command::Tuples(gd) => simple(gd, JobKind::Tuples),
        Command::Brn { gd, modulus } => {
            let mut j = simple(gd, JobKind::Brn);
            j.modulus = *modulus;
            j
        }
        Command::Dw(c) => with_class(c, JobKind::Dw)?,
        Command::Orbifold { class, sectors } => {
            let mut j = with_class(class, JobKind::Orbifold)?;
            let text = std::fs::read_to_string(sectors)
                .map_err(|e| CliError::Io(format!("{}: {e}", sectors.display())))?;
            j.sectors = Some(parse_sectors(&text)?);
            j
        }
        Command::Scan { .. } => return Ok(None),
    }))
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let (ctx, jobs) = context(&cli.opts)?;
    let format = cli.opts.format;
    ctx.cfg.exec.install(jobs, || match job_of(&cli.command)? {
        Some(job) => {
            let rec = run::run(&job, &ctx)?;
            Ok(report::render_record(&job, &rec, format))
        }
        None => {
            let Command::Scan { dir, n, subcommand } = &cli.command else { unreachable!("only scan has no job") };
            let kind = match subcommand {
                ScanKind::Homology => JobKind::Homology,
                ScanKind::H0n => JobKind::H0n,
                ScanKind::Sha => JobKind::Sha,
            };
            Ok(report::render_scan(&scan::scan(dir, *n, kind, &ctx)?, format))
        }
    })
}

fn fail(e: &CliError) -> ExitCode {
    println!("{}", serde_json::json!({ "error": e.to_json() }));
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail(&CliError::Usage(e.render().to_string().trim().to_string()));
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}
