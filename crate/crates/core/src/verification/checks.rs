use std::f64::consts::TAU;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::oracles::{rejection_sample_2d, rejection_sample_3d, GPolymerOracle};
use super::report::{collect_parallel, count_parallel, TrialReport};
use super::stats::{
    chi_square_two_sample, ks_two_sample, log_log_slope, ChiSquareResult, KsResult,
};
use crate::error::{Error, Result};
use crate::geometry::Vec2;
use crate::graph::WeightedGraph;
use crate::invariants::{gamma_product, interval_graph, mu_safe_trees, EdgeOrder};
use crate::rng::stream;
use crate::sampler2d::{sample_gpolymer, sample_polymer_2d, Polymer2D, PolymerGrowth};
use crate::sampler3d::{b_vector_law, sample_polymer_3d, BetaWeights};

/// Oracle draws use a seed derived from the caller's, so the two sides of a
/// comparison never share a stream.
const ORACLE_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

/// Significance level and KS distance used by the exactness checks.
pub const P_THRESHOLD: f64 = 0.01;
pub const KS_THRESHOLD: f64 = 0.01;

pub fn topology_key(p: &Polymer2D) -> Vec<(usize, usize)> {
    p.tree_edges()
}

/// Angle in `[0, pi]` between `v_1 - v_0` and `v_2 - v_0`.
pub fn edge_angle_functional(positions: &[Vec2]) -> f64 {
    let a = positions[1] - positions[0];
    let b = positions[2] - positions[0];
    a.cross(b).atan2(a.dot(b)).abs()
}

/// Every vertex's parent (hanging from vertex 0) has a smaller label.
pub fn is_label_increasing(tree_parent: &[Option<usize>]) -> bool {
    tree_parent
        .iter()
        .enumerate()
        .skip(1)
        .all(|(c, p)| p.is_some_and(|p| p < c))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Rejection acceptance for disks with `radii`; target `(n-1)!/n^(n-2)`.
pub fn acceptance_2d(radii: &[f64], trials: u64, seed: u64) -> Result<TrialReport> {
    let n = radii.len();
    let target = factorial(n - 1) / (n as f64).powi(n as i32 - 2);
    let hits = count_parallel(trials, seed, |rng| {
        Ok(rejection_sample_2d(radii, rng)?.is_some())
    })?;
    Ok(TrialReport::new(
        format!("accept2d n={n}"),
        trials,
        hits,
        Some(target),
    ))
}

/// Rejection acceptance for `G`-polymers; target `mu(G) / #spanning trees`.
pub fn acceptance_gpolymer(
    graph: &WeightedGraph,
    label: &str,
    trials: u64,
    seed: u64,
) -> Result<TrialReport> {
    let oracle = GPolymerOracle::new(graph)?;
    let mu = mu_safe_trees(graph, &EdgeOrder::identity(graph.edge_count()))?.value;
    let target = mu as f64 / oracle.spanning_tree_count() as f64;
    let hits = count_parallel(trials, seed, |rng| Ok(oracle.sample(rng)?.is_some()))?;
    Ok(TrialReport::new(
        format!("acceptg {label}"),
        trials,
        hits,
        Some(target),
    ))
}

/// Rejection acceptance for unit-diameter spheres; target `n / 2^(n-1)`.
pub fn acceptance_3d(n: usize, trials: u64, seed: u64) -> Result<TrialReport> {
    let target = n as f64 / 2f64.powi(n as i32 - 1);
    let hits = count_parallel(trials, seed, |rng| {
        Ok(rejection_sample_3d(n, rng)?.is_some())
    })?;
    Ok(TrialReport::new(
        format!("accept3d n={n}"),
        trials,
        hits,
        Some(target),
    ))
}

/// Probability that `n` uniform unit steps end within distance 1 of the
/// start; target `1/(n+1)`.
pub fn walk_return_probability(n: usize, trials: u64, seed: u64) -> Result<TrialReport> {
    if n < 2 {
        return Err(Error::InvalidInput(
            "the walk needs at least 2 steps".into(),
        ));
    }
    let hits = count_parallel(trials, seed, |rng| {
        let (mut x, mut y) = (0.0f64, 0.0f64);
        for _ in 0..n {
            let (s, c) = (rng.random::<f64>() * TAU).sin_cos();
            x += c;
            y += s;
        }
        Ok(x * x + y * y <= 1.0)
    })?;
    Ok(TrialReport::new(
        format!("walk n={n}"),
        trials,
        hits,
        Some(1.0 / (n as f64 + 1.0)),
    ))
}

/// Closed form for two steps: `|e^{ia} + e^{ib}|^2 = 2 + 2 cos(a - b) <= 1`
/// iff the angle gap lies in `[acos(-1/2), 2pi - acos(-1/2)]`.
pub fn walk_return_exact(n: usize) -> Option<f64> {
    (n == 2).then(|| {
        let lo = (-0.5f64).acos();
        (TAU - 2.0 * lo) / TAU
    })
}

/// Sampler-versus-oracle agreement on tree topologies and one scalar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub label: String,
    pub samples: usize,
    pub topology: ChiSquareResult,
    pub functional: KsResult,
}

impl Comparison {
    pub fn passes(&self) -> bool {
        self.topology.p_value > P_THRESHOLD && self.functional.statistic < KS_THRESHOLD
    }
}

type Summary = (Vec<(usize, usize)>, f64);

fn summarize(p: &Polymer2D) -> Summary {
    (topology_key(p), edge_angle_functional(&p.positions))
}

fn compare(label: String, a: Vec<Summary>, b: Vec<Summary>) -> Result<Comparison> {
    let (ka, fa): (Vec<_>, Vec<_>) = a.into_iter().unzip();
    let (kb, fb): (Vec<_>, Vec<_>) = b.into_iter().unzip();
    Ok(Comparison {
        label,
        samples: ka.len(),
        topology: chi_square_two_sample(&ka, &kb)?,
        functional: ks_two_sample(&fa, &fb)?,
    })
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidInput(
            "comparisons need at least 3 vertices".into(),
        ));
    }
    Ok(())
}

/// `sample_polymer_2d` against [`rejection_sample_2d`].
pub fn compare_2d_with_oracle(radii: &[f64], samples: usize, seed: u64) -> Result<Comparison> {
    check_n(radii.len())?;
    let (a, _) = collect_parallel(samples, seed, |rng| {
        Ok(Some(summarize(&sample_polymer_2d(radii, rng)?)))
    })?;
    let (b, _) = collect_parallel(samples, seed ^ ORACLE_SALT, |rng| {
        Ok(rejection_sample_2d(radii, rng)?.map(|p| summarize(&p)))
    })?;
    compare(format!("exactness 2d n={}", radii.len()), a, b)
}

/// `sample_gpolymer` along `order` against [`GPolymerOracle`].
pub fn compare_gpolymer_with_oracle(
    graph: &WeightedGraph,
    order: &[usize],
    label: &str,
    samples: usize,
    seed: u64,
) -> Result<Comparison> {
    check_n(graph.n())?;
    let oracle = GPolymerOracle::new(graph)?;
    let (a, _) = collect_parallel(samples, seed, |rng| {
        Ok(Some(summarize(&sample_gpolymer(graph, order, rng)?)))
    })?;
    let (b, _) = collect_parallel(samples, seed ^ ORACLE_SALT, |rng| {
        Ok(oracle.sample(rng)?.map(|p| summarize(&p)))
    })?;
    compare(format!("exactness gpolymer {label}"), a, b)
}

/// The intermediate polymer after `k` of `radii.len()` disks are grown,
/// against the oracle on the first `k` radii.
pub fn compare_prefix_with_oracle(
    radii: &[f64],
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<Comparison> {
    check_n(k)?;
    if k > radii.len() {
        return Err(Error::InvalidInput(format!(
            "prefix {k} longer than {} disks",
            radii.len()
        )));
    }
    let (a, _) = collect_parallel(samples, seed, |rng| {
        let mut growth = PolymerGrowth::disks(radii)?;
        while growth.placed() < k {
            growth.step(rng)?;
        }
        let snap = growth.snapshot()?;
        // Finish the run so a failure late in the growth is not hidden.
        while growth.step(rng)? {}
        Ok(Some(summarize(&snap)))
    })?;
    let (b, _) = collect_parallel(samples, seed ^ ORACLE_SALT, |rng| {
        Ok(rejection_sample_2d(&radii[..k], rng)?.map(|p| summarize(&p)))
    })?;
    compare(format!("prefix {k} of {}", radii.len()), a, b)
}

/// Fraction of label-increasing tangency trees from the growth sampler.
pub fn inductive_fraction_sampler(radii: &[f64], samples: u64, seed: u64) -> Result<TrialReport> {
    let hits = count_parallel(samples, seed, |rng| {
        Ok(is_label_increasing(
            &sample_polymer_2d(radii, rng)?.tree_parent,
        ))
    })?;
    Ok(TrialReport::new(
        format!("label-increasing n={}", radii.len()),
        samples,
        hits,
        None,
    ))
}

/// The same fraction among accepted rejection-oracle samples.
pub fn inductive_fraction_oracle(radii: &[f64], samples: u64, seed: u64) -> Result<TrialReport> {
    let (flags, _) = collect_parallel(samples as usize, seed ^ ORACLE_SALT, |rng| {
        Ok(rejection_sample_2d(radii, rng)?.map(|p| is_label_increasing(&p.tree_parent)))
    })?;
    let hits = flags.iter().filter(|&&f| f).count() as u64;
    Ok(TrialReport::new(
        format!("label-increasing oracle n={}", radii.len()),
        samples,
        hits,
        None,
    ))
}

/// KS comparison of sorted x-projections, coordinate by coordinate
/// (`ks[k]` compares `b_{k+2}`; `b_1 = 0` always).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionComparison {
    pub label: String,
    pub samples: usize,
    pub ks: Vec<KsResult>,
}

impl ProjectionComparison {
    pub fn max_statistic(&self) -> f64 {
        self.ks.iter().map(|k| k.statistic).fold(0.0, f64::max)
    }

    /// KS on the largest coordinate, the x-extent.
    pub fn extent(&self) -> Option<&KsResult> {
        self.ks.last()
    }
}

fn compare_columns(label: String, a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<ProjectionComparison> {
    let n = a.first().map_or(0, Vec::len);
    let ks = (1..n)
        .map(|k| {
            let ca: Vec<f64> = a.iter().map(|v| v[k]).collect();
            let cb: Vec<f64> = b.iter().map(|v| v[k]).collect();
            ks_two_sample(&ca, &cb)
        })
        .collect::<Result<_>>()?;
    Ok(ProjectionComparison {
        label,
        samples: a.len(),
        ks,
    })
}

/// Sorted x-projections of rejection-sampled 3D polymers against the B law.
pub fn projection_vs_rejection(
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<ProjectionComparison> {
    let (a, _) = collect_parallel(samples, seed ^ ORACLE_SALT, |rng| {
        Ok(rejection_sample_3d(n, rng)?.map(|p| p.sorted_x()))
    })?;
    let (b, _) = collect_parallel(samples, seed, |rng| b_vector_law(n, rng).map(Some))?;
    compare_columns(format!("projection rejection n={n}"), &a, &b)
}

/// Sorted x-projections of `sample_polymer_3d` against the B law.
pub fn projection_vs_b_law(
    n: usize,
    beta: &BetaWeights,
    samples: usize,
    seed: u64,
) -> Result<ProjectionComparison> {
    let (a, _) = collect_parallel(samples, seed, |rng| {
        Ok(Some(sample_polymer_3d(n, beta, rng)?.sorted_x()))
    })?;
    let (b, _) = collect_parallel(samples, seed ^ ORACLE_SALT, |rng| {
        b_vector_law(n, rng).map(Some)
    })?;
    compare_columns(format!("projection sampler n={n}"), &a, &b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiameterSource {
    /// Largest entry of a `b_vector_law` draw.
    BVector,
    /// x-extent of a full `sample_polymer_3d` draw.
    Full3D,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub source: DiameterSource,
    pub ns: Vec<usize>,
    pub mean_extent: Vec<f64>,
    pub slope: f64,
}

/// Mean x-extent for each `n` and the log-log slope against `n`.
pub fn diameter_scaling(
    ns: &[usize],
    samples_per_n: usize,
    source: DiameterSource,
    seed: u64,
) -> Result<ScalingFit> {
    if ns.len() < 2 || ns.windows(2).any(|w| w[0] >= w[1]) || ns[0] < 2 {
        return Err(Error::InvalidInput(
            "need at least two increasing sizes, all >= 2".into(),
        ));
    }
    if samples_per_n == 0 {
        return Err(Error::InvalidInput(
            "need at least one sample per size".into(),
        ));
    }
    let mean_extent = ns
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let s = seed.wrapping_add(i as u64);
            let (ext, _) = collect_parallel(samples_per_n, s, |rng| {
                Ok(Some(match source {
                    DiameterSource::BVector => *b_vector_law(n, rng)?.last().expect("n >= 2"),
                    DiameterSource::Full3D => {
                        sample_polymer_3d(n, &BetaWeights::Uniform, rng)?.x_extent()
                    }
                }))
            })?;
            Ok(ext.iter().sum::<f64>() / ext.len() as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    let xs: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let slope = log_log_slope(&xs, &mean_extent)?;
    Ok(ScalingFit {
        source,
        ns: ns.to_vec(),
        mean_extent,
        slope,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypeVolumeReport {
    pub xs: Vec<f64>,
    pub gamma_product: u64,
    pub mu_safe_trees: u64,
    pub spanning_trees: usize,
    /// Uniform spanning tree of `H` with uniform angles is a valid
    /// `H`-polymer with probability `mu / #spanning trees`.
    pub monte_carlo: Option<TrialReport>,
}

impl TypeVolumeReport {
    pub fn exact_match(&self) -> bool {
        self.gamma_product == self.mu_safe_trees
    }

    pub fn passes(&self, sigmas: f64) -> bool {
        self.exact_match() && self.monte_carlo.as_ref().is_none_or(|r| r.passes(sigmas))
    }
}

/// `gamma_product(xs)` against `mu` of the unit interval graph, plus an
/// optional rejection estimate of the same volume (`trials = 0` skips it).
pub fn type_volume_check(xs: &[f64], trials: u64, seed: u64) -> Result<TypeVolumeReport> {
    let gamma = gamma_product(xs)?;
    let h = interval_graph(xs)?;
    let mu = mu_safe_trees(&h, &EdgeOrder::identity(h.edge_count()))?.value;
    let oracle = GPolymerOracle::new(&h)?;
    let tau = oracle.spanning_tree_count();
    let monte_carlo = if trials > 0 {
        let hits = count_parallel(trials, seed, |rng| Ok(oracle.sample(rng)?.is_some()))?;
        Some(TrialReport::new(
            format!("type n={}", xs.len()),
            trials,
            hits,
            Some(mu as f64 / tau as f64),
        ))
    } else {
        None
    };
    Ok(TypeVolumeReport {
        xs: xs.to_vec(),
        gamma_product: gamma,
        mu_safe_trees: mu,
        spanning_trees: tau,
        monte_carlo,
    })
}

/// `count` random sorted projection vectors with sizes cycling through
/// `2..=max_n`, from the B law.
pub fn random_projection_vectors(count: usize, max_n: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, i as u64);
            b_vector_law(2 + i % (max_n - 1), &mut rng)
        })
        .collect()
}
