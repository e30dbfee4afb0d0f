//! Shard files and merging.
//!
//! A shard file holds the share of every matrix entry `Psi(f_i)(v'_j)`
//! coming from one shard `C` of `N`. Files live at
//! `{root}/{a}x{b}/{lambda}/shard-{C}-of-{N}.jsonl`: a header line followed
//! by one record per entry. Files are written to a temporary name and
//! renamed, so an existing file is always complete.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use pkw_core::driver::{KernelPlan, KernelReport};
use pkw_core::linalg::IntMatrix;
use pkw_core::Partition;
use serde::{Deserialize, Serialize};

use crate::format::{parse_bigint, write_json_line};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShardHeader {
    pub a: usize,
    pub b: usize,
    pub lambda: String,
    pub seed: u64,
    pub p: usize,
    pub p_prime: usize,
    pub depth: usize,
    pub count: u64,
    pub shard: u64,
}

impl ShardHeader {
    /// Whether two headers describe shards of the same computation.
    fn same_run(&self, other: &Self) -> bool {
        (
            self.a,
            self.b,
            &self.lambda,
            self.seed,
            self.p,
            self.p_prime,
            self.depth,
            self.count,
        ) == (
            other.a,
            other.b,
            &other.lambda,
            other.seed,
            other.p,
            other.p_prime,
            other.depth,
            other.count,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShardRecord {
    /// index of `f_i` in the source basis
    pub f: usize,
    /// index of `v'_j` among the target points
    pub v: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShardFile {
    pub header: ShardHeader,
    pub records: Vec<ShardRecord>,
}

pub fn lambda_dir(root: &Path, a: usize, b: usize, lambda: &Partition) -> PathBuf {
    root.join(format!("{a}x{b}")).join(lambda.to_string())
}

pub fn shard_path(root: &Path, a: usize, b: usize, lambda: &Partition, shard: u64, count: u64) -> PathBuf {
    lambda_dir(root, a, b, lambda).join(format!("shard-{shard}-of-{count}.jsonl"))
}

pub fn write_shard_file(path: &Path, file: &ShardFile) -> Result<(), Error> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("jsonl.tmp");
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        write_json_line(&mut w, &file.header)?;
        for r in &file.records {
            write_json_line(&mut w, r)?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_shard_file(path: &Path) -> Result<ShardFile, Error> {
    let reader = BufReader::new(fs::File::open(path)?);
    let mut lines = reader.lines();
    let header_line = lines
        .next()
        .ok_or_else(|| Error::Format(format!("{}: empty shard file", path.display())))??;
    let header: ShardHeader = serde_json::from_str(&header_line)?;
    let mut records = Vec::new();
    for line in lines {
        let line = line?;
        if !line.trim().is_empty() {
            records.push(serde_json::from_str(&line)?);
        }
    }
    Ok(ShardFile { header, records })
}

/// Shard files below `root` for `a x b`, grouped by partition directory.
pub fn scan(root: &Path, a: usize, b: usize) -> Result<BTreeMap<String, Vec<PathBuf>>, Error> {
    let mut out = BTreeMap::new();
    let base = root.join(format!("{a}x{b}"));
    if !base.is_dir() {
        return Ok(out);
    }
    for entry in fs::read_dir(&base)? {
        let dir = entry?.path();
        if !dir.is_dir() {
            continue;
        }
        let mut files: Vec<PathBuf> = fs::read_dir(&dir)?
            .map(|e| e.map(|e| e.path()))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|p| p.extension().is_some_and(|e| e == "jsonl"))
            .collect();
        files.sort();
        let name = dir
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        out.insert(name, files);
    }
    Ok(out)
}

/// Sums the shards of one partition into the `p' x p` matrix. Every
/// `(f, v', C)` must occur exactly once.
pub fn merge_shards(files: &[ShardFile]) -> Result<(ShardHeader, IntMatrix), Error> {
    let first = files
        .first()
        .ok_or_else(|| Error::IncompleteCoverage("no shard files".into()))?
        .header
        .clone();
    let mut seen_shards = BTreeSet::new();
    for f in files {
        if !f.header.same_run(&first) {
            return Err(Error::Format(format!(
                "shard {} of lambda {} belongs to a different run",
                f.header.shard, f.header.lambda
            )));
        }
        if !seen_shards.insert(f.header.shard) {
            return Err(Error::DuplicateShard(format!(
                "lambda {}: shard {} of {} appears twice",
                first.lambda, f.header.shard, first.count
            )));
        }
    }
    if let Some(missing) = (0..first.count).find(|c| !seen_shards.contains(c)) {
        return Err(Error::IncompleteCoverage(format!(
            "lambda {}: shard {missing} of {} is missing",
            first.lambda, first.count
        )));
    }
    if let Some(extra) = seen_shards.iter().find(|&&c| c >= first.count) {
        return Err(Error::Format(format!(
            "shard id {extra} out of range for {} shards",
            first.count
        )));
    }
    let (rows, cols) = if first.p == 0 { (0, 0) } else { (first.p_prime, first.p) };
    let mut m = IntMatrix::zeros(rows, cols);
    for f in files {
        let mut covered = vec![false; rows * cols];
        for r in &f.records {
            if r.f >= cols || r.v >= rows {
                return Err(Error::Format(format!(
                    "record ({}, {}) outside {rows} x {cols}",
                    r.f, r.v
                )));
            }
            let slot = r.v * cols + r.f;
            if covered[slot] {
                return Err(Error::DuplicateShard(format!(
                    "lambda {}: entry (f = {}, v' = {}) repeated in shard {}",
                    first.lambda, r.f, r.v, f.header.shard
                )));
            }
            covered[slot] = true;
            let sum: BigInt = m.get(r.v, r.f) + parse_bigint(&r.value)?;
            m.set(r.v, r.f, sum);
        }
        if let Some(slot) = covered.iter().position(|c| !c) {
            return Err(Error::IncompleteCoverage(format!(
                "lambda {}: entry (f = {}, v' = {}) missing from shard {}",
                first.lambda,
                slot % cols,
                slot / cols,
                f.header.shard
            )));
        }
    }
    Ok((first, m))
}

/// Merges the shards of one partition and rebuilds its report. The bases
/// are regenerated from the seed and checked against the header.
pub fn merge_report(files: &[ShardFile]) -> Result<KernelReport, Error> {
    let (header, m) = merge_shards(files)?;
    let lambda: Partition = header.lambda.parse()?;
    let plan = KernelPlan::new(header.a, header.b, &lambda, header.seed)?;
    if plan.p() != header.p || (plan.p() > 0 && plan.p_prime() != header.p_prime) {
        return Err(Error::Format(format!(
            "lambda {}: shard header has p = {}, p' = {}, regenerated bases have {}, {}",
            header.lambda,
            header.p,
            header.p_prime,
            plan.p(),
            plan.p_prime()
        )));
    }
    Ok(plan.finish(&m, header.p_prime))
}

pub fn merge_paths(paths: &[PathBuf]) -> Result<KernelReport, Error> {
    let files = paths
        .iter()
        .map(|p| read_shard_file(p))
        .collect::<Result<Vec<_>, _>>()?;
    merge_report(&files)
}
