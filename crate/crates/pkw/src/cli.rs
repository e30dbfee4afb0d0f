//! The `pkw` command line.
//!
//! Exit codes: 0 success, 1 verification mismatch or I/O failure, 2 invalid
//! arguments, 3 basis construction ran out of retries, 4 incomplete or
//! duplicate shard coverage, 5 a partition with `p > p'` for `a <= b`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use pkw_core::driver::{kernel_partitions, KernelReport, ShardPlan};
use pkw_core::eval::{build_minor_cache, evaluate_psi_image, evaluate_tableau, Point, ShardSpec};
use pkw_core::plethysm::plethysm_coefficients;
use pkw_core::straighten::{apply_psi_symbolic, straighten, TableauSum};
use pkw_core::{Filling, Partition, SymmetrizedTableau};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::checkpoint::{merge_paths, scan};
use crate::format::{write_dims_csv, write_json_line, write_summary_csv, DimsJson, ErrorJson, ReportJson};
use crate::manifest::{Manifest, ShardPlanJson};
use crate::runner::{self, Outcome};
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "pkw", version, about = "Kernel multiplicities of the Foulkes-Howe map")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print p and p' for every partition of a*b with at most a rows
    Dims(DimsArgs),
    /// Compute the multiplicity of each type in the kernel
    Kernel(KernelArgs),
    /// Merge shard files into reports
    Merge(MergeArgs),
    /// Straighten a filling, or apply Psi to its symmetrization
    Straighten(StraightenArgs),
    /// Check the 3x2 example symbolically and numerically
    VerifyExample(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
    /// Restrict to these partitions (repeatable), e.g. 14,7,2,2
    #[arg(long = "lambda")]
    pub lambdas: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Number of shards N
    #[arg(long, default_value_t = 1)]
    pub shards: u64,
    /// Compute only shard C of N; all shards when omitted
    #[arg(long)]
    pub shard_id: Option<u64>,
    /// Search-tree depth D at which subtrees are dealt to shards
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// Directory for reports.jsonl, summary.csv and manifest.json
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Shard file directory; existing shard files are reused
    #[arg(long, env = "PKW_CHECKPOINT_DIR")]
    pub checkpoint: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct MergeArgs {
    #[arg(long)]
    pub a: usize,
    #[arg(long)]
    pub b: usize,
    #[arg(long = "lambda")]
    pub lambdas: Vec<String>,
    /// Merge only files of an N-way split; required if several splits exist
    #[arg(long)]
    pub shards: Option<u64>,
    #[arg(long, env = "PKW_CHECKPOINT_DIR")]
    pub checkpoint: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct StraightenArgs {
    /// Rows of space-separated entries joined by '/', e.g. "1 1 3 3/2 2"
    #[arg(long)]
    pub filling: String,
    /// Apply Psi to the symmetrization of the filling before straightening
    #[arg(long)]
    pub psi: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Number of random points for the numeric check
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Compare against the wrong sign, to exercise the failure path
    #[arg(long, hide = true)]
    pub corrupt_sign: bool,
}

/// Parses `args` and runs the command, returning the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    let result = match cli.command {
        Command::Dims(a) => cmd_dims(&a, out),
        Command::Kernel(a) => cmd_kernel(&a, out, err),
        Command::Merge(a) => cmd_merge(&a, out, err),
        Command::Straighten(a) => cmd_straighten(&a, out),
        Command::VerifyExample(a) => cmd_verify_example(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgs(msg.into())
}

fn check_ab(a: usize, b: usize) -> Result<(), Error> {
    if a == 0 || b == 0 {
        return Err(invalid(format!("a and b must be at least 1, got a = {a}, b = {b}")));
    }
    if a * b > 255 {
        return Err(invalid(format!("a * b = {} is too large", a * b)));
    }
    Ok(())
}

fn parse_filter(a: usize, b: usize, raw: &[String]) -> Result<Vec<Partition>, Error> {
    let filter = raw
        .iter()
        .map(|s| s.parse::<Partition>())
        .collect::<Result<Vec<_>, _>>()?;
    for l in &filter {
        if l.weight() != a * b {
            return Err(Error::Core(pkw_core::Error::WeightMismatch {
                weight: l.weight(),
                expected: a * b,
            }));
        }
    }
    Ok(filter)
}

fn selected(a: usize, b: usize, raw: &[String]) -> Result<Vec<Partition>, Error> {
    let filter = parse_filter(a, b, raw)?;
    Ok(kernel_partitions(
        a,
        b,
        (!filter.is_empty()).then_some(filter.as_slice()),
    ))
}

pub fn cmd_dims(args: &DimsArgs, out: &mut dyn Write) -> Result<u8, Error> {
    check_ab(args.a, args.b)?;
    let lambdas = kernel_partitions(args.a, args.b, None);
    let p = plethysm_coefficients(args.a, args.b, &lambdas)?;
    let q = plethysm_coefficients(args.b, args.a, &lambdas)?;
    let dims: Vec<DimsJson> = lambdas
        .iter()
        .zip(p.iter().zip(&q))
        .map(|(l, (&p, &q))| DimsJson {
            lambda: l.to_string(),
            p,
            p_prime: q,
        })
        .collect();
    match args.format {
        OutputFormat::Json => {
            for d in &dims {
                write_json_line(out, d)?;
            }
        }
        OutputFormat::Csv => write_dims_csv(out, &dims)?,
    }
    Ok(0)
}

/// Writes reports to `out` and, if requested, to files in `dir`.
fn emit_reports(
    reports: &[KernelReport],
    format: OutputFormat,
    dir: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), Error> {
    match format {
        OutputFormat::Json => {
            for r in reports {
                write_json_line(out, &ReportJson::from(r))?;
            }
        }
        OutputFormat::Csv => write_summary_csv(&mut *out, reports)?,
    }
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir)?;
        let mut f = io::BufWriter::new(std::fs::File::create(dir.join("reports.jsonl"))?);
        for r in reports {
            write_json_line(&mut f, &ReportJson::from(r))?;
        }
        f.flush()?;
        write_summary_csv(std::fs::File::create(dir.join("summary.csv"))?, reports)?;
    }
    Ok(())
}

/// Keeps the most severe exit status.
fn worse(code: u8, e: &Error) -> u8 {
    let c = e.exit_code();
    let rank = |c: u8| match c {
        0 => 0,
        5 => 6,
        c => c,
    };
    if rank(c) > rank(code) {
        c
    } else {
        code
    }
}

pub fn cmd_kernel(args: &KernelArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Error> {
    check_ab(args.a, args.b)?;
    let (a, b) = (args.a, args.b);
    if args.shards == 0 {
        return Err(Error::Core(pkw_core::Error::InvalidShard { id: 0, count: 0 }));
    }
    if let Some(c) = args.shard_id {
        if c >= args.shards {
            return Err(Error::Core(pkw_core::Error::InvalidShard {
                id: c,
                count: args.shards,
            }));
        }
    }
    if args.shards > 1 && args.checkpoint.is_none() {
        return Err(invalid(
            "--shards > 1 needs --checkpoint (or PKW_CHECKPOINT_DIR) for the shard files",
        ));
    }
    let lambdas = selected(a, b, &args.lambdas)?;
    let plan = ShardPlan {
        depth: args.depth,
        count: args.shards,
    };
    let ids: Vec<u64> = match args.shard_id {
        Some(c) => vec![c],
        None => (0..args.shards).collect(),
    };
    let workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if workers == 0 {
        return Err(invalid("--workers must be at least 1"));
    }
    let pool = runner::thread_pool(workers)?;
    let start = Instant::now();
    let results: Vec<(Partition, Result<Outcome, Error>)> = pool.install(|| match &args.checkpoint {
        Some(root) => runner::per_partition(&lambdas, |l| runner::checkpointed(root, a, b, l, args.seed, plan, &ids)),
        None => runner::per_partition(&lambdas, |l| {
            runner::kernel_report(a, b, l, args.seed).map(Outcome::Report)
        }),
    });
    let total = start.elapsed();

    let mut code = 0;
    let mut reports = Vec::new();
    let mut elapsed_ms = BTreeMap::new();
    for (l, r) in results {
        match r {
            Ok(Outcome::Report(rep)) => {
                elapsed_ms.insert(l.to_string(), rep.elapsed.map_or(0, |d| d.as_millis()));
                reports.push(rep);
            }
            Ok(Outcome::Shards {
                written,
                reused,
                elapsed,
            }) => {
                elapsed_ms.insert(l.to_string(), elapsed.as_millis());
                writeln!(
                    err,
                    "lambda {l}: wrote shards {written:?}, reused {reused:?} of {}",
                    args.shards
                )?;
            }
            Err(e) => {
                code = worse(code, &e);
                write_json_line(
                    err,
                    &ErrorJson {
                        lambda: l.to_string(),
                        error: e.to_string(),
                    },
                )?;
            }
        }
    }
    emit_reports(&reports, args.format, args.out.as_deref(), out)?;
    if let Some(dir) = &args.out {
        let manifest = Manifest {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: "kernel".into(),
            a,
            b,
            seed: args.seed,
            lambdas: lambdas.iter().map(|l| l.to_string()).collect(),
            shard_plan: ShardPlanJson {
                depth: plan.depth,
                count: plan.count,
                ids,
            },
            workers,
            elapsed_ms,
            total_elapsed_ms: total.as_millis(),
        };
        manifest.write(&dir.join("manifest.json"))?;
    }
    Ok(code)
}

fn shard_count_of(path: &Path) -> Option<u64> {
    let name = path.file_stem()?.to_str()?;
    name.rsplit_once("-of-")?.1.parse().ok()
}

pub fn cmd_merge(args: &MergeArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Error> {
    check_ab(args.a, args.b)?;
    let wanted: Vec<String> = parse_filter(args.a, args.b, &args.lambdas)?
        .iter()
        .map(|l| l.to_string())
        .collect();
    let dirs = scan(&args.checkpoint, args.a, args.b)?;
    if dirs.is_empty() {
        return Err(Error::IncompleteCoverage(format!(
            "no shard files for {}x{} under {}",
            args.a,
            args.b,
            args.checkpoint.display()
        )));
    }
    for w in &wanted {
        if !dirs.contains_key(w) {
            return Err(Error::IncompleteCoverage(format!("no shard files for lambda {w}")));
        }
    }
    let mut reports = Vec::new();
    let mut code = 0;
    for (name, files) in &dirs {
        if !wanted.is_empty() && !wanted.contains(name) {
            continue;
        }
        let files: Vec<PathBuf> = match args.shards {
            Some(n) => files.iter().filter(|f| shard_count_of(f) == Some(n)).cloned().collect(),
            None => {
                let mut counts: Vec<u64> = files.iter().filter_map(|f| shard_count_of(f)).collect();
                counts.dedup();
                if counts.len() > 1 {
                    return Err(invalid(format!(
                        "lambda {name} has shard files for several splits {counts:?}; pass --shards"
                    )));
                }
                files.clone()
            }
        };
        match merge_paths(&files) {
            Ok(r) => reports.push(r),
            Err(e) => {
                code = worse(code, &e);
                writeln!(err, "lambda {name}: error: {e}")?;
            }
        }
    }
    // same order as a direct run
    reports.sort_by(|x, y| y.lambda.cmp(&x.lambda));
    emit_reports(&reports, args.format, args.out.as_deref(), out)?;
    Ok(code)
}

pub fn cmd_straighten(args: &StraightenArgs, out: &mut dyn Write) -> Result<u8, Error> {
    let t: Filling = args.filling.parse()?;
    let result = if args.psi {
        let f = SymmetrizedTableau::new(&t);
        writeln!(out, "Psi({f}) =")?;
        apply_psi_symbolic(&f)
    } else {
        writeln!(out, "{t} =")?;
        straighten(&TableauSum::from_filling(&t))
    };
    if result.is_zero() {
        writeln!(out, "0")?;
    } else {
        write!(out, "{result}")?;
    }
    Ok(0)
}

pub fn cmd_verify_example(args: &VerifyArgs, out: &mut dyn Write) -> Result<u8, Error> {
    let source: Filling = "1 1 3 3/2 2".parse()?;
    let target: Filling = "1 1 1 2/2 2".parse()?;
    let f = SymmetrizedTableau::new(&source);
    let expected = BigInt::from(if args.corrupt_sign { 4 } else { -4 });
    let mut ok = true;

    let image = apply_psi_symbolic(&f);
    writeln!(out, "symbolic: Psi({f}) = ")?;
    write!(out, "{image}")?;
    let symbolic_ok = image.len() == 1 && image.coefficient(&target) == expected;
    writeln!(out, "symbolic: {}", if symbolic_ok { "ok" } else { "MISMATCH" })?;
    ok &= symbolic_ok;

    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let shape = target.shape();
    let content = f.content();
    let mut lens = shape.conjugate();
    lens.dedup();
    let mut numeric_ok = true;
    let mut k = 0;
    while k < args.points {
        let v = Point::random(shape.rows(), content.repeats, content.symbols, &mut rng);
        let cache = build_minor_cache(&v, &lens)?;
        let t_value = evaluate_tableau(&target, &cache);
        if t_value.is_zero() {
            // a point where the standard tableau vanishes checks nothing
            continue;
        }
        let lhs = evaluate_psi_image(&f, &cache, ShardSpec::whole())?;
        let rhs = &expected * t_value;
        let good = lhs == rhs;
        numeric_ok &= good;
        writeln!(
            out,
            "point {k}: Psi(f)(v') = {lhs}, {expected} * T(v') = {rhs} {}",
            if good { "ok" } else { "MISMATCH" }
        )?;
        k += 1;
    }
    writeln!(out, "numeric: {}", if numeric_ok { "ok" } else { "MISMATCH" })?;
    ok &= numeric_ok;
    Ok(if ok { 0 } else { 1 })
}
