use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use conic_ac::bounds::{curve_emit, grid_prime_powers, grid_extended, parse_bound_names, write_curve_csv};
use conic_ac::nrc::{completeness_brute, completeness_range, nrc_points, p0_solve};
use conic_ac::primes::is_prime_power;
use conic_ac::report::{verify, ReferenceTable, RunRecord};
use conic_ac::search::exhaustive::CEILING_ENV;
use conic_ac::search::{
    exhaustive_min_ac, format_witness, is_ac_subset, is_minimal_ac, randomized_greedy, ExhaustiveConfig,
    RandomizedConfig,
};
use conic_ac::{ConicModel, Error, FieldCtx};

#[derive(Parser)]
#[command(name = "ac", version, about = "Almost complete subsets of the conic in PG(2,q)")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smallest AC-subset size by exhaustive search.
    Exact {
        q: u64,
        /// Run above the exhaustive ceiling.
        #[arg(long)]
        force: bool,
        #[arg(long, default_value_t = 6)]
        base_size: usize,
    },
    /// Randomized greedy search.
    Search(SearchArgs),
    /// Bound curves as CSV.
    Bounds {
        /// Orders to evaluate, comma separated (used by `--grid list`).
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Grid::List)]
        grid: Grid,
        #[arg(long, default_value = "A,B,C")]
        names: String,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a table of sizes against Θ(q) and its starred values.
    Verify {
        /// CSV with header `q,tbar[,tstar]`; defaults to the embedded tables.
        table: Option<PathBuf>,
    },
    /// Normal rational curves.
    Nrc {
        #[command(flatten)]
        mode: NrcArgs,
        /// Coefficient override for `--p0`.
        #[arg(long, requires = "p0")]
        c: Option<f64>,
    },
    /// Repeat a recorded search and compare the witness.
    Replay { record: PathBuf },
}

#[derive(Args)]
struct SearchArgs {
    q: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    restarts: u32,
    #[arg(long, default_value_t = 0.1)]
    prob: f64,
    /// Save a run record (JSON).
    #[arg(long)]
    record: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct NrcArgs {
    /// Dimensions covered by the completeness corollary for this q.
    #[arg(long, value_name = "Q")]
    range: Option<u64>,
    /// Brute-force completeness of the curve in PG(N,q).
    #[arg(long, num_args = 2, value_names = ["Q", "N"])]
    complete: Option<Vec<u64>>,
    /// Prime threshold p0(h).
    #[arg(long, value_name = "H")]
    p0: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Grid {
    /// Every prime power from 5 to 253009.
    PrimePowers,
    /// Prime powers up to 1000, then a geometric grid up to 14000029.
    Extended,
    List,
}

enum Failure {
    /// Verification failed: exit 1.
    Check(String),
    /// Bad usage or input: exit 2.
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn model_for(q: u64) -> std::result::Result<ConicModel, Failure> {
    if q < 5 {
        return Err(Failure::Usage(format!("q = {q}: AC-subsets are considered for q ≥ 5")));
    }
    if !is_prime_power(q) {
        return Err(Failure::Usage(format!("{q} is not a prime power")));
    }
    Ok(ConicModel::new(FieldCtx::with_order(q)?)?)
}

fn cmd_exact(q: u64, force: bool, base_size: usize) -> CmdResult {
    let model = model_for(q)?;
    let cfg = ExhaustiveConfig {
        base_size,
        force,
        ..ExhaustiveConfig::from_env()
    };
    let out = exhaustive_min_ac(&model, &cfg).map_err(|e| match e {
        Error::AboveCeiling { .. } => Failure::Usage(format!("{e} (or set {CEILING_ENV})")),
        e => e.into(),
    })?;
    if !is_minimal_ac(&model, &out.witness).unwrap_or(false) {
        return Err(Failure::Check(format!("internal error: witness for q = {q} is not a minimal AC-subset")));
    }
    println!("q={q} t={} witness={}", out.t, format_witness(q, &out.witness));
    Ok(())
}

fn run_search(args: &SearchArgs) -> std::result::Result<(String, f64), Failure> {
    let model = model_for(args.q)?;
    let cfg = RandomizedConfig {
        seed: args.seed,
        restarts: args.restarts,
        random_step_prob: args.prob,
    };
    let start = Instant::now();
    let res = randomized_greedy(&model, &cfg)?;
    let secs = start.elapsed().as_secs_f64();
    if !is_ac_subset(&model, &res.witness) {
        return Err(Failure::Check(format!("internal error: result for q = {} is not AC", args.q)));
    }
    Ok((format_witness(args.q, &res.witness), secs))
}

fn search_record(args: &SearchArgs) -> RunRecord {
    let mut rec = RunRecord::new("search")
        .param("q", args.q)
        .param("restarts", args.restarts)
        .param("prob", args.prob);
    rec.seed = Some(args.seed);
    rec
}

fn cmd_search(args: &SearchArgs) -> CmdResult {
    let (line, secs) = run_search(args)?;
    println!("{line}");
    if let Some(path) = &args.record {
        let mut rec = search_record(args);
        rec.wall_time_secs = secs;
        rec.result = Some(line);
        rec.outputs.push(path.display().to_string());
        rec.save(path)?;
    }
    Ok(())
}

fn cmd_replay(path: &PathBuf) -> CmdResult {
    let rec = RunRecord::load(path)?;
    if rec.command != "search" {
        return Err(Failure::Usage(format!("cannot replay `{}` records", rec.command)));
    }
    let args = SearchArgs {
        q: rec.get("q")?,
        seed: rec.seed.ok_or_else(|| Failure::Usage("record has no seed".into()))?,
        restarts: rec.get("restarts")?,
        prob: rec.get("prob")?,
        record: None,
    };
    let (line, _) = run_search(&args)?;
    println!("{line}");
    match &rec.result {
        Some(r) if *r == line => Ok(()),
        Some(r) => Err(Failure::Check(format!("replay differs from the record `{r}`"))),
        None => Err(Failure::Usage("record has no result to compare".into())),
    }
}

fn cmd_bounds(q: &[u64], grid: Grid, names: &str, out: Option<&PathBuf>) -> CmdResult {
    let names = parse_bound_names(names)?;
    if names.is_empty() {
        return Err(Failure::Usage("no bound names given".into()));
    }
    let qs = match grid {
        Grid::PrimePowers => grid_prime_powers(),
        Grid::Extended => grid_extended(),
        Grid::List => {
            if q.is_empty() {
                return Err(Failure::Usage("`--grid list` needs `--q`".into()));
            }
            if let Some(&bad) = q.iter().find(|&&x| x < 5 || !is_prime_power(x)) {
                return Err(Failure::Usage(format!("{bad} is not a prime power ≥ 5")));
            }
            q.to_vec()
        }
    };
    let rows = curve_emit(&qs, &names);
    match out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            write_curve_csv(std::io::BufWriter::new(file), &rows)?;
        }
        None => write_curve_csv(std::io::stdout().lock(), &rows)?,
    }
    Ok(())
}

fn cmd_verify(table: Option<&PathBuf>) -> CmdResult {
    let tables = match table {
        Some(path) => vec![ReferenceTable::load(path)?],
        None => vec![ReferenceTable::exact_minima(), ReferenceTable::curated_sample()],
    };
    let mut failed = 0;
    let mut total = 0;
    let mut stdout = std::io::stdout().lock();
    for t in &tables {
        for v in verify(t).rows {
            total += 1;
            let theta = v.theta.map_or("-".to_string(), |x| format!("{x:.3}"));
            if v.passed() {
                let _ = writeln!(stdout, "PASS q={} t={} theta={theta} star={:.4}", v.q, v.value, v.computed_star);
            } else {
                failed += 1;
                let _ = writeln!(stdout, "FAIL q={} t={} theta={theta}: {}", v.q, v.value, v.failures.join("; "));
            }
        }
    }
    let _ = writeln!(stdout, "{} of {total} rows passed", total - failed);
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} rows failed")));
    }
    Ok(())
}

fn cmd_nrc(args: &NrcArgs, c: Option<f64>) -> CmdResult {
    if let Some(q) = args.range {
        match completeness_range(q)? {
            Some((lo, hi)) => println!("q={q} N in [{lo},{hi}]"),
            None => println!("q={q} empty range"),
        }
    } else if let Some(v) = &args.complete {
        let (q, n) = (v[0], v[1] as usize);
        let arc = nrc_points(n, &FieldCtx::with_order(q)?)?;
        let ext = completeness_brute(&arc)?;
        if ext.is_empty() {
            println!("q={q} N={n} complete");
        } else {
            let unit = if ext.len() == 1 { "point" } else { "points" };
            println!("q={q} N={n} extendable by {} {unit}", ext.len());
            for p in ext.iter().take(20) {
                println!("  {p:?}");
            }
        }
    } else if let Some(h) = args.p0 {
        let e = p0_solve(h, c)?;
        println!("h={} c={} p0={} slack={:.6}", e.h, e.c, e.p0, e.check_value);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Exact { q, force, base_size } => cmd_exact(*q, *force, *base_size),
        Command::Search(args) => cmd_search(args),
        Command::Bounds { q, grid, names, out } => cmd_bounds(q, *grid, names, out.as_ref()),
        Command::Verify { table } => cmd_verify(table.as_ref()),
        Command::Nrc { mode, c } => cmd_nrc(mode, *c),
        Command::Replay { record } => cmd_replay(record),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
