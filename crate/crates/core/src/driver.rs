//! Per-partition kernel computation.
//!
//! For a partition `lambda` of `a*b`, the multiplicity of `{lambda}` in
//! `ker Psi_{a,b}` is `p - rank M`, where `p` is the dimension of the
//! highest weight vectors of type `lambda` in `Sym^a Sym^b V` and `M` is
//! the `p' x p` matrix of values `Psi(f_i)(v'_j)`. The functions `f_i` form
//! a basis of the source space and the points `v'_j` separate the target
//! space; both facts are certified by full-rank evaluation matrices built
//! from random symmetrized tableaux and random points.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::time::Duration;

use hashbrown::HashSet;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::eval::{build_minor_cache, evaluate_tableau, MinorCache, Point, PsiEvaluator, PsiOptions, ShardSpec};
use crate::linalg::{rank, IntMatrix, RowBasis};
use crate::partition::enumerate_partitions;
use crate::plethysm::plethysm_coefficient;
use crate::sample::random_semistandard_with;
use crate::seed::SeedTree;
use crate::{ContentSpec, Error, Partition, SymmetrizedTableau};

/// Tableau draws allowed per point set, as a multiple of the dimension.
pub const DRAWS_PER_DIMENSION: usize = 10;
/// Lower bound on the draws per point set. Most symmetrized tableaux of
/// some shapes vanish, so a budget proportional to the dimension alone is
/// too small when the dimension is 1 or 2.
pub const MIN_DRAWS: usize = 512;
/// Point sets tried before giving up.
pub const POINT_SET_ATTEMPTS: usize = 5;

/// Which plethysm a basis lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `Sym^a Sym^b V`: content `a x b`, points `sum_{i<=a} l_i^b`.
    Source,
    /// `Sym^b Sym^a V`: content `b x a`, points `sum_{j<=b} l_j^a`.
    Target,
}

impl Side {
    pub fn name(&self) -> &'static str {
        match self {
            Side::Source => "source",
            Side::Target => "target",
        }
    }

    /// Content of the tableaux on this side.
    pub fn content(&self, a: usize, b: usize) -> ContentSpec {
        match self {
            Side::Source => ContentSpec::new(a, b),
            Side::Target => ContentSpec::new(b, a),
        }
    }
}

/// A certified basis of highest weight vectors of type `lambda`, with
/// points at which the evaluation matrix has full rank.
#[derive(Debug, Clone)]
pub struct HwvBasis {
    pub side: Side,
    pub lambda: Partition,
    pub tableaux: Vec<SymmetrizedTableau>,
    pub points: Vec<Point>,
    /// `eval[i][j] = f_i(v_j)`
    pub eval: IntMatrix,
    pub dim: usize,
}

fn lambda_seed(seed: u64, lambda: &Partition) -> SeedTree {
    SeedTree::new(seed).label("lambda").label(&lambda.to_string())
}

/// Column lengths of `lambda` without repetitions.
fn column_lengths(lambda: &Partition) -> Vec<usize> {
    let mut lens = lambda.conjugate();
    lens.dedup();
    lens
}

/// Builds a certified basis of `HWV_lambda` on `side`. Deterministic in
/// `seed`.
pub fn build_hwv_basis(side: Side, a: usize, b: usize, lambda: &Partition, seed: u64) -> Result<HwvBasis, Error> {
    if lambda.weight() != a * b {
        return Err(Error::WeightMismatch {
            weight: lambda.weight(),
            expected: a * b,
        });
    }
    let content = side.content(a, b);
    let dim = plethysm_coefficient(content.symbols, content.repeats, lambda)? as usize;
    build_basis_with_dim(side, content, lambda, dim, lambda_seed(seed, lambda).label(side.name()))
}

fn build_basis_with_dim(
    side: Side,
    content: ContentSpec,
    lambda: &Partition,
    dim: usize,
    seeds: SeedTree,
) -> Result<HwvBasis, Error> {
    if dim == 0 {
        return Ok(HwvBasis {
            side,
            lambda: lambda.clone(),
            tableaux: Vec::new(),
            points: Vec::new(),
            eval: IntMatrix::zeros(0, 0),
            dim,
        });
    }
    let n = lambda.rows();
    let lens = column_lengths(lambda);
    // forms per point: the symbols of the content, raised to the repeat count
    let (forms, power) = (content.symbols, content.repeats);
    for attempt in 0..POINT_SET_ATTEMPTS {
        let attempt_seeds = seeds.child(attempt as u64);
        let points: Vec<Point> = (0..dim)
            .map(|j| {
                Point::random(
                    n,
                    forms,
                    power,
                    &mut attempt_seeds.label("points").child(j as u64).rng(),
                )
            })
            .collect();
        let caches = points
            .iter()
            .map(|v| build_minor_cache(v, &lens))
            .collect::<Result<Vec<_>, _>>()?;
        let mut basis = RowBasis::new(dim);
        let mut tableaux = Vec::new();
        let mut seen = HashSet::new();
        for draw in 0..draw_budget(dim) {
            let mut rng = attempt_seeds.label("tableau").child(draw as u64).rng();
            let Some(t) = random_semistandard_with(lambda, content, &mut rng) else {
                return Err(Error::RetryExhausted(format!(
                    "no semistandard tableau of shape {lambda} with content {}x{}",
                    content.symbols, content.repeats
                )));
            };
            let f = SymmetrizedTableau::new(&t);
            if !seen.insert(f.clone()) {
                continue;
            }
            let row: Vec<BigInt> = caches.iter().map(|c| evaluate_tableau(&t, c)).collect();
            if basis.try_add_row(&row)? {
                tableaux.push(f);
                if basis.rank() == dim {
                    break;
                }
            }
        }
        if basis.rank() == dim {
            let eval = IntMatrix::from_rows(basis.rows().to_vec(), dim)?;
            return Ok(HwvBasis {
                side,
                lambda: lambda.clone(),
                tableaux,
                points,
                eval,
                dim,
            });
        }
    }
    Err(Error::RetryExhausted(format!(
        "{} basis for lambda = {lambda} stayed below dimension {dim}",
        side.name()
    )))
}

/// Tableau draws per point set for a space of dimension `dim`.
pub fn draw_budget(dim: usize) -> usize {
    (DRAWS_PER_DIMENSION * dim).max(MIN_DRAWS)
}

/// How each matrix entry is split into subtrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShardPlan {
    pub depth: usize,
    pub count: u64,
}

impl ShardPlan {
    pub const fn single() -> Self {
        Self { depth: 0, count: 1 }
    }

    pub fn shard(&self, id: u64) -> Result<ShardSpec, Error> {
        ShardSpec::new(self.depth, self.count, id)
    }
}

impl Default for ShardPlan {
    fn default() -> Self {
        Self::single()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReportStatus {
    /// Both bases were built and the kernel was computed.
    Computed,
    /// `p = 0`, nothing to compute.
    Skipped,
}

impl ReportStatus {
    pub fn name(&self) -> &'static str {
        match self {
            ReportStatus::Computed => "computed",
            ReportStatus::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelReport {
    pub a: usize,
    pub b: usize,
    pub lambda: Partition,
    pub p: usize,
    pub p_prime: usize,
    pub rank: usize,
    pub kernel_mult: usize,
    pub seed: u64,
    pub status: ReportStatus,
    /// Wall time, filled in by callers that can measure it.
    pub elapsed: Option<Duration>,
    pub tableaux: Vec<SymmetrizedTableau>,
    pub points: Vec<Point>,
    pub points_prime: Vec<Point>,
    /// `matrix[j][i] = Psi(f_i)(v'_j)`
    pub matrix: IntMatrix,
}

/// Everything needed to fill the `p' x p` matrix `Psi(f_i)(v'_j)` entry by
/// entry, possibly on different workers.
#[derive(Debug, Clone)]
pub struct KernelPlan {
    pub a: usize,
    pub b: usize,
    pub lambda: Partition,
    pub seed: u64,
    pub source: HwvBasis,
    pub target: HwvBasis,
    target_caches: Vec<MinorCache>,
}

impl KernelPlan {
    pub fn new(a: usize, b: usize, lambda: &Partition, seed: u64) -> Result<Self, Error> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidWeight(format!("a = {a}, b = {b} must be positive")));
        }
        if lambda.weight() != a * b {
            return Err(Error::WeightMismatch {
                weight: lambda.weight(),
                expected: a * b,
            });
        }
        let p = plethysm_coefficient(a, b, lambda)? as usize;
        let p_prime = plethysm_coefficient(b, a, lambda)? as usize;
        if a <= b && p > p_prime {
            return Err(Error::ConjectureWitness {
                lambda: lambda.to_string(),
                p: p as u64,
                p_prime: p_prime as u64,
            });
        }
        let seeds = lambda_seed(seed, lambda);
        let source = build_basis_with_dim(
            Side::Source,
            Side::Source.content(a, b),
            lambda,
            p,
            seeds.label("source"),
        )?;
        let target = if p == 0 {
            build_basis_with_dim(
                Side::Target,
                Side::Target.content(a, b),
                lambda,
                0,
                seeds.label("target"),
            )?
        } else {
            build_basis_with_dim(
                Side::Target,
                Side::Target.content(a, b),
                lambda,
                p_prime,
                seeds.label("target"),
            )?
        };
        let lens = column_lengths(lambda);
        let target_caches = target
            .points
            .iter()
            .map(|v| build_minor_cache(v, &lens))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            a,
            b,
            lambda: lambda.clone(),
            seed,
            source,
            target,
            target_caches,
        })
    }

    pub fn p(&self) -> usize {
        self.source.dim
    }

    /// The dimension of the target space; 0 when the source is empty and
    /// the target basis was not built.
    pub fn p_prime(&self) -> usize {
        self.target.dim
    }

    /// Evaluator for the entry `Psi(f_i)(v'_j)`.
    pub fn evaluator(&self, i: usize, j: usize, options: PsiOptions) -> Result<PsiEvaluator, Error> {
        PsiEvaluator::new(&self.source.tableaux[i], &self.target_caches[j], options)
    }

    /// One shard of the entry `Psi(f_i)(v'_j)`.
    pub fn entry(&self, i: usize, j: usize, shard: ShardSpec) -> Result<BigInt, Error> {
        Ok(self.evaluator(i, j, PsiOptions::default())?.evaluate(shard))
    }

    /// Report for a fully assembled `p' x p` matrix.
    pub fn finish(&self, matrix: &IntMatrix, p_prime: usize) -> KernelReport {
        let p = self.p();
        let r = if p == 0 { 0 } else { rank(matrix) };
        KernelReport {
            a: self.a,
            b: self.b,
            lambda: self.lambda.clone(),
            p,
            p_prime,
            rank: r,
            kernel_mult: p - r,
            seed: self.seed,
            status: if p == 0 {
                ReportStatus::Skipped
            } else {
                ReportStatus::Computed
            },
            elapsed: None,
            tableaux: self.source.tableaux.clone(),
            points: self.source.points.clone(),
            points_prime: self.target.points.clone(),
            matrix: matrix.clone(),
        }
    }
}

/// Sequentially computes the multiplicity of `{lambda}` in `ker Psi_{a,b}`,
/// evaluating each entry as the sum of its shards.
pub fn kernel_multiplicity(
    a: usize,
    b: usize,
    lambda: &Partition,
    seed: u64,
    plan: ShardPlan,
) -> Result<KernelReport, Error> {
    let kp = KernelPlan::new(a, b, lambda, seed)?;
    let p_prime = plethysm_coefficient(b, a, lambda)? as usize;
    let mut m = IntMatrix::zeros(kp.p_prime(), kp.p());
    for j in 0..kp.p_prime() {
        for i in 0..kp.p() {
            let ev = kp.evaluator(i, j, PsiOptions::default())?;
            let mut value = BigInt::zero();
            for id in 0..plan.count {
                value += ev.evaluate(plan.shard(id)?);
            }
            m.set(j, i, value);
        }
    }
    Ok(kp.finish(&m, p_prime))
}

/// Partitions of `a*b` with at most `a` rows, optionally restricted to
/// `filter`, in decreasing lexicographic order.
pub fn kernel_partitions(a: usize, b: usize, filter: Option<&[Partition]>) -> Vec<Partition> {
    enumerate_partitions(a * b, a)
        .into_iter()
        .filter(|l| filter.is_none_or(|f| f.contains(l)))
        .collect()
}

/// One report per partition; a failure for one partition does not stop
/// the others.
pub fn decompose_kernel(
    a: usize,
    b: usize,
    filter: Option<&[Partition]>,
    seed: u64,
    plan: ShardPlan,
) -> Vec<(Partition, Result<KernelReport, Error>)> {
    kernel_partitions(a, b, filter)
        .into_iter()
        .map(|l| {
            let r = kernel_multiplicity(a, b, &l, seed, plan);
            (l, r)
        })
        .collect()
}
