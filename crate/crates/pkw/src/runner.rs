//! Parallel evaluation on a rayon pool.
//!
//! Partitions run concurrently, and so do the matrix entries of one
//! partition. An unsharded entry is further split into subtrees at a fixed
//! depth so a single large entry can use every worker. Entries are exact
//! integers, so the result does not depend on the number of workers or
//! the order in which subtrees finish.

use std::path::Path;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use pkw_core::driver::{KernelPlan, KernelReport, ShardPlan};
use pkw_core::eval::{PsiEvaluator, PsiOptions, ShardSpec};
use pkw_core::linalg::IntMatrix;
use pkw_core::plethysm::plethysm_coefficient;
use pkw_core::Partition;
use rayon::prelude::*;

use crate::checkpoint::{
    merge_report, read_shard_file, shard_path, write_shard_file, ShardFile, ShardHeader, ShardRecord,
};
use crate::Error;

/// Depth and fan-out of the internal split of unsharded entries.
const SPLIT_DEPTH: usize = 2;
const SPLIT_COUNT: u64 = 64;

pub fn thread_pool(workers: usize) -> Result<rayon::ThreadPool, Error> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Format(format!("cannot start {workers} workers: {e}")))
}

fn evaluators(plan: &KernelPlan) -> Result<Vec<(usize, usize, PsiEvaluator)>, Error> {
    let entries: Vec<(usize, usize)> = (0..plan.p_prime())
        .flat_map(|j| (0..plan.p()).map(move |i| (i, j)))
        .collect();
    entries
        .into_par_iter()
        .map(|(i, j)| Ok((i, j, plan.evaluator(i, j, PsiOptions::default())?)))
        .collect()
}

/// The shard's share of every entry, as a `p' x p` matrix.
pub fn shard_matrix(plan: &KernelPlan, shard: ShardSpec) -> Result<IntMatrix, Error> {
    let mut m = IntMatrix::zeros(plan.p_prime(), plan.p());
    if plan.p() == 0 {
        return Ok(m);
    }
    let evs = evaluators(plan)?;
    let values: Vec<BigInt> = if shard.count == 1 {
        let parts: Vec<(usize, BigInt)> = (0..evs.len())
            .flat_map(|e| (0..SPLIT_COUNT).map(move |k| (e, k)))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|(e, k)| {
                let sub = ShardSpec::new(SPLIT_DEPTH, SPLIT_COUNT, k).expect("valid split");
                (e, evs[e].2.evaluate(sub))
            })
            .collect();
        let mut sums = vec![BigInt::default(); evs.len()];
        for (e, v) in parts {
            sums[e] += v;
        }
        sums
    } else {
        evs.par_iter().map(|(_, _, ev)| ev.evaluate(shard)).collect()
    };
    for ((i, j, _), v) in evs.iter().zip(values) {
        m.set(*j, *i, v);
    }
    Ok(m)
}

pub fn shard_file(plan: &KernelPlan, shard: ShardSpec) -> Result<ShardFile, Error> {
    let m = shard_matrix(plan, shard)?;
    let p_prime = plethysm_coefficient(plan.b, plan.a, &plan.lambda)? as usize;
    let header = ShardHeader {
        a: plan.a,
        b: plan.b,
        lambda: plan.lambda.to_string(),
        seed: plan.seed,
        p: plan.p(),
        p_prime,
        depth: shard.depth,
        count: shard.count,
        shard: shard.id,
    };
    let records = (0..m.rows())
        .flat_map(|j| (0..m.cols()).map(move |i| (i, j)))
        .map(|(i, j)| ShardRecord {
            f: i,
            v: j,
            value: m.get(j, i).to_string(),
        })
        .collect();
    Ok(ShardFile { header, records })
}

/// Computes one partition's report without touching the disk.
pub fn kernel_report(a: usize, b: usize, lambda: &Partition, seed: u64) -> Result<KernelReport, Error> {
    let start = Instant::now();
    let plan = KernelPlan::new(a, b, lambda, seed)?;
    let m = shard_matrix(&plan, ShardSpec::whole())?;
    let p_prime = plethysm_coefficient(b, a, lambda)? as usize;
    let mut report = plan.finish(&m, p_prime);
    report.elapsed = Some(start.elapsed());
    Ok(report)
}

/// What a checkpointed run produced for one partition.
#[derive(Debug)]
pub enum Outcome {
    /// All shards are present and merged.
    Report(KernelReport),
    /// Only some shards were requested; they are on disk.
    Shards {
        written: Vec<u64>,
        reused: Vec<u64>,
        elapsed: Duration,
    },
}

/// Computes the requested shards of one partition into `root`, reusing
/// shard files that already exist, and merges when every shard is present.
pub fn checkpointed(
    root: &Path,
    a: usize,
    b: usize,
    lambda: &Partition,
    seed: u64,
    plan: ShardPlan,
    ids: &[u64],
) -> Result<Outcome, Error> {
    let start = Instant::now();
    let mut kp: Option<KernelPlan> = None;
    let (mut written, mut reused) = (Vec::new(), Vec::new());
    for &id in ids {
        let path = shard_path(root, a, b, lambda, id, plan.count);
        if path.exists() {
            reused.push(id);
            continue;
        }
        if kp.is_none() {
            kp = Some(KernelPlan::new(a, b, lambda, seed)?);
        }
        let file = shard_file(kp.as_ref().expect("plan built"), plan.shard(id)?)?;
        write_shard_file(&path, &file)?;
        written.push(id);
    }
    let all_present = (0..plan.count).all(|c| shard_path(root, a, b, lambda, c, plan.count).exists());
    if !all_present {
        return Ok(Outcome::Shards {
            written,
            reused,
            elapsed: start.elapsed(),
        });
    }
    let files = (0..plan.count)
        .map(|c| read_shard_file(&shard_path(root, a, b, lambda, c, plan.count)))
        .collect::<Result<Vec<_>, _>>()?;
    check_headers(&files, seed, plan)?;
    let mut report = merge_report(&files)?;
    report.elapsed = Some(start.elapsed());
    Ok(Outcome::Report(report))
}

fn check_headers(files: &[ShardFile], seed: u64, plan: ShardPlan) -> Result<(), Error> {
    for f in files {
        if f.header.seed != seed || f.header.depth != plan.depth {
            return Err(Error::Format(format!(
                "checkpoint for lambda {} was written with seed {} and depth {}, this run uses seed {seed} and depth {}",
                f.header.lambda, f.header.seed, f.header.depth, plan.depth
            )));
        }
    }
    Ok(())
}

/// Runs `f` for every partition in parallel, keeping the input order.
pub fn per_partition<T, F>(lambdas: &[Partition], f: F) -> Vec<(Partition, Result<T, Error>)>
where
    T: Send,
    F: Fn(&Partition) -> Result<T, Error> + Sync,
{
    lambdas.par_iter().map(|l| (l.clone(), f(l))).collect()
}
