//! Named verification runs, as used by `branched verify <suite>`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::checks::*;
use super::report::TrialReport;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::invariants::{
    mu_bipartite, mu_kpartite, mu_safe_trees, mu_subgraph_sum, tutte_mu, EdgeOrder,
};
use crate::rng::seeded;
use crate::sampler3d::BetaWeights;

/// Acceptance rates and return probabilities must land within this many
/// standard errors.
pub const SIGMAS: f64 = 3.0;

/// KS distance allowed when comparing sorted projections of rejection
/// samples with the B law.
pub const PROJECTION_KS_THRESHOLD: f64 = 0.015;

/// Share of label-increasing trees required in the tiny-radius limit.
pub const LIMIT_FRACTION: f64 = 0.99;

/// Base of the geometric radii `eps^i` in the tiny-radius limit.
pub const LIMIT_EPSILON: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Walk,
    Accept2d,
    AcceptG,
    Accept3d,
    Exactness,
    Projection,
    Diameter,
    Limit,
    Types,
    Invariants,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 11] = [
        "walk",
        "accept2d",
        "acceptg",
        "accept3d",
        "exactness",
        "projection",
        "diameter",
        "limit",
        "types",
        "invariants",
        "all",
    ];

    const EACH: [Suite; 10] = [
        Suite::Invariants,
        Suite::Walk,
        Suite::Accept2d,
        Suite::AcceptG,
        Suite::Accept3d,
        Suite::Exactness,
        Suite::Projection,
        Suite::Diameter,
        Suite::Limit,
        Suite::Types,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Walk => "walk",
            Suite::Accept2d => "accept2d",
            Suite::AcceptG => "acceptg",
            Suite::Accept3d => "accept3d",
            Suite::Exactness => "exactness",
            Suite::Projection => "projection",
            Suite::Diameter => "diameter",
            Suite::Limit => "limit",
            Suite::Types => "types",
            Suite::Invariants => "invariants",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown suite {s:?}; expected one of {}",
                    Suite::NAMES.join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOptions {
    /// Restrict size-indexed suites to this `n`.
    pub n: Option<usize>,
    /// Override the trial / sample count.
    pub trials: Option<u64>,
    pub seed: u64,
    /// Reduced counts; statistical thresholds are widened to match.
    pub quick: bool,
}

impl SuiteOptions {
    fn trials(&self, full: u64, quick: u64) -> u64 {
        self.trials.unwrap_or(if self.quick { quick } else { full })
    }

    fn sizes(&self, default: &[usize]) -> Vec<usize> {
        self.n.map_or_else(|| default.to_vec(), |n| vec![n])
    }
}

/// One checked quantity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub detail: serde_json::Value,
}

impl CheckOutcome {
    fn from_report(suite: Suite, r: TrialReport) -> Self {
        let summary = match r.target {
            Some(t) => format!(
                "{:.5} +- {:.5} (target {:.5}, z = {:+.2})",
                r.estimate,
                r.stderr,
                t,
                r.z_score.unwrap_or(0.0)
            ),
            None => format!("{:.5} +- {:.5}", r.estimate, r.stderr),
        };
        CheckOutcome {
            suite: suite.name().into(),
            name: r.label.clone(),
            passed: r.passes(SIGMAS),
            summary,
            detail: json!(r),
        }
    }
}

/// KS distance limit for two samples of `samples` each: the fixed threshold,
/// widened to the 1% critical value when the samples are too small for it.
pub fn ks_limit(threshold: f64, samples: usize) -> f64 {
    threshold.max(1.628 * (2.0 / samples.max(1) as f64).sqrt())
}

fn comparison_outcome(c: Comparison) -> CheckOutcome {
    let limit = ks_limit(KS_THRESHOLD, c.samples);
    CheckOutcome {
        suite: Suite::Exactness.name().into(),
        name: c.label.clone(),
        passed: c.topology.p_value > P_THRESHOLD && c.functional.statistic < limit,
        summary: format!(
            "topology chi2 p = {:.4} (> {P_THRESHOLD}), angle KS = {:.5} (< {limit:.4})",
            c.topology.p_value, c.functional.statistic
        ),
        detail: json!(c),
    }
}

/// Run a suite; `All` runs every suite in turn.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<Vec<CheckOutcome>> {
    let seed = opts.seed;
    let mut out = Vec::new();
    match suite {
        Suite::All => {
            for s in Suite::EACH {
                let sub = SuiteOptions {
                    n: None,
                    ..opts.clone()
                };
                out.extend(run_suite(s, &sub)?);
            }
        }
        Suite::Walk => {
            let trials = opts.trials(1_000_000, 100_000);
            let sizes = opts.sizes(&[2, 3, 4, 5, 6]);
            for &n in &sizes {
                out.push(CheckOutcome::from_report(
                    suite,
                    walk_return_probability(n, trials, seed)?,
                ));
            }
            if let Some(exact) = walk_return_exact(2).filter(|_| sizes.contains(&2)) {
                out.push(CheckOutcome {
                    suite: suite.name().into(),
                    name: "walk n=2 closed form".into(),
                    passed: (exact - 1.0 / 3.0).abs() < 1e-15,
                    summary: format!("{exact:.15} (target 1/3)"),
                    detail: json!(exact),
                });
            }
        }
        Suite::Accept2d => {
            let trials = opts.trials(1_000_000, 100_000);
            for n in opts.sizes(&[3, 4]) {
                out.push(CheckOutcome::from_report(
                    suite,
                    acceptance_2d(&vec![1.0; n], trials, seed)?,
                ));
            }
        }
        Suite::AcceptG => {
            let trials = opts.trials(1_000_000, 100_000);
            for (label, g) in [
                ("C4", WeightedGraph::cycle(4, 1.0)),
                ("K3", WeightedGraph::complete(3, 1.0)),
            ] {
                out.push(CheckOutcome::from_report(
                    suite,
                    acceptance_gpolymer(&g, label, trials, seed)?,
                ));
            }
        }
        Suite::Accept3d => {
            let trials = opts.trials(1_000_000, 100_000);
            for n in opts.sizes(&[3, 4]) {
                out.push(CheckOutcome::from_report(
                    suite,
                    acceptance_3d(n, trials, seed)?,
                ));
            }
        }
        Suite::Exactness => {
            let samples = opts.trials(100_000, 20_000) as usize;
            for n in opts.sizes(&[3, 4]) {
                out.push(comparison_outcome(compare_2d_with_oracle(
                    &vec![1.0; n],
                    samples,
                    seed,
                )?));
            }
            let (triangle, square) = exactness_graphs()?;
            let c = compare_gpolymer_with_oracle(&triangle, &[0, 1, 2], "K3", samples, seed)?;
            out.push(comparison_outcome(c));
            let c = compare_gpolymer_with_oracle(&square, &[0, 1, 2, 3], "C4", samples, seed)?;
            out.push(comparison_outcome(c));
            for k in [3, 4] {
                out.push(comparison_outcome(compare_prefix_with_oracle(
                    &[1.0; 5], k, samples, seed,
                )?));
            }
        }
        Suite::Projection => {
            let samples = opts.trials(100_000, 20_000) as usize;
            let c = projection_vs_rejection(3, samples, seed)?;
            let limit = ks_limit(PROJECTION_KS_THRESHOLD, samples);
            out.push(CheckOutcome {
                suite: suite.name().into(),
                name: c.label.clone(),
                passed: c.max_statistic() < limit,
                summary: format!(
                    "max KS over coordinates = {:.5} (< {limit:.4})",
                    c.max_statistic()
                ),
                detail: json!(c),
            });
            let n = opts.n.unwrap_or(5);
            let c = projection_vs_b_law(n, &BetaWeights::Uniform, samples, seed)?;
            let limit = ks_limit(KS_THRESHOLD, samples);
            let ks = c.extent().map_or(0.0, |k| k.statistic);
            out.push(CheckOutcome {
                suite: suite.name().into(),
                name: c.label.clone(),
                passed: ks < limit,
                summary: format!("KS on x-extent = {ks:.5} (< {limit:.4})"),
                detail: json!(c),
            });
        }
        Suite::Diameter => {
            let b_samples = opts.trials(4_000, 1_000) as usize;
            let fit = diameter_scaling(
                &[50, 100, 200, 400, 800],
                b_samples,
                DiameterSource::BVector,
                seed,
            )?;
            out.push(slope_outcome(fit, 0.4, 0.6));
            let full_samples = (opts.trials(4_000, 1_000) as usize / 10).max(10);
            let fit = diameter_scaling(&[20, 40, 80], full_samples, DiameterSource::Full3D, seed)?;
            out.push(slope_outcome(fit, 0.35, 0.65));
        }
        Suite::Limit => {
            let samples = opts.trials(10_000, 2_000);
            let n = opts.n.unwrap_or(5);
            let radii: Vec<f64> = (0..n).map(|i| LIMIT_EPSILON.powi(i as i32)).collect();
            let sampler = inductive_fraction_sampler(&radii, samples, seed)?;
            let oracle = inductive_fraction_oracle(&radii, samples, seed)?;
            let diff = sampler.estimate - oracle.estimate;
            let se = (sampler.stderr.powi(2) + oracle.stderr.powi(2)).sqrt();
            out.push(CheckOutcome {
                suite: suite.name().into(),
                name: format!("label-increasing share n={n}"),
                passed: sampler.estimate >= LIMIT_FRACTION,
                summary: format!("{:.4} (required >= {LIMIT_FRACTION})", sampler.estimate),
                detail: json!(sampler),
            });
            out.push(CheckOutcome {
                suite: suite.name().into(),
                name: format!("label-increasing share vs oracle n={n}"),
                passed: se == 0.0 && diff == 0.0 || diff.abs() <= SIGMAS * se,
                summary: format!(
                    "sampler {:.4}, oracle {:.4}, z = {:+.2}",
                    sampler.estimate,
                    oracle.estimate,
                    diff / se
                ),
                detail: json!([sampler, oracle]),
            });
        }
        Suite::Types => {
            let vectors = random_projection_vectors(200, 7, seed)?;
            let mut mismatches = Vec::new();
            for xs in &vectors {
                let r = type_volume_check(xs, 0, seed)?;
                if !r.exact_match() {
                    mismatches.push(r);
                }
            }
            out.push(CheckOutcome {
                suite: suite.name().into(),
                name: "gamma product = mu on 200 projection vectors".into(),
                passed: mismatches.is_empty(),
                summary: format!(
                    "{} of {} agree",
                    vectors.len() - mismatches.len(),
                    vectors.len()
                ),
                detail: json!(mismatches),
            });
            let trials = opts.trials(1_000_000, 100_000);
            for xs in [
                vec![0.0, 0.2, 0.5, 0.9],
                vec![0.0, 0.7, 1.4, 2.1],
                vec![0.0, 0.5, 0.9, 1.4],
            ] {
                let r = type_volume_check(&xs, trials, seed)?;
                let mc = r.monte_carlo.clone().expect("trials > 0");
                out.push(CheckOutcome {
                    suite: suite.name().into(),
                    name: format!("type volume {xs:?}"),
                    passed: r.passes(SIGMAS),
                    summary: format!(
                        "mu = {} = gamma product {}; rejection {:.5} vs {}/{} (z = {:+.2})",
                        r.mu_safe_trees,
                        r.gamma_product,
                        mc.estimate,
                        r.mu_safe_trees,
                        r.spanning_trees,
                        mc.z_score.unwrap_or(0.0)
                    ),
                    detail: json!(r),
                });
            }
        }
        Suite::Invariants => out.extend(invariant_identities(seed)?),
    }
    Ok(out)
}

fn slope_outcome(fit: ScalingFit, lo: f64, hi: f64) -> CheckOutcome {
    CheckOutcome {
        suite: Suite::Diameter.name().into(),
        name: format!("diameter slope {:?} n={:?}", fit.source, fit.ns),
        passed: (lo..=hi).contains(&fit.slope),
        summary: format!("slope {:.4} (in [{lo}, {hi}])", fit.slope),
        detail: json!(fit),
    }
}

/// A triangle and a 4-cycle with unequal edge lengths.
pub fn exactness_graphs() -> Result<(WeightedGraph, WeightedGraph)> {
    let mut triangle = WeightedGraph::new(3);
    triangle.add_edge(0, 1, 1.0)?;
    triangle.add_edge(1, 2, 1.3)?;
    triangle.add_edge(0, 2, 0.8)?;
    let mut square = WeightedGraph::new(4);
    square.add_edge(0, 1, 1.0)?;
    square.add_edge(1, 2, 0.7)?;
    square.add_edge(2, 3, 1.2)?;
    square.add_edge(0, 3, 0.9)?;
    Ok((triangle, square))
}

/// Every connected graph on `n` labeled vertices.
pub fn connected_graphs(n: usize) -> Vec<WeightedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let mut g = WeightedGraph::new(n);
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    g.add_edge(a, b, 1.0).expect("valid pair");
                }
            }
            g.is_connected().then_some(g)
        })
        .collect()
}

/// Connected graphs on 2..=6 vertices, each pair present with probability 1/2.
pub fn random_connected_graphs(count: usize, seed: u64) -> Vec<WeightedGraph> {
    let mut rng = seeded(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.random_range(2..=6);
        let mut g = WeightedGraph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if rng.random_bool(0.5) {
                    g.add_edge(a, b, 1.0).expect("valid pair");
                }
            }
        }
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

fn three_routes(g: &WeightedGraph) -> Result<[u64; 3]> {
    Ok([
        mu_safe_trees(g, &EdgeOrder::identity(g.edge_count()))?.value,
        mu_subgraph_sum(g)?.value,
        tutte_mu(g)?.value,
    ])
}

/// Exact identities for `mu`.
pub fn invariant_identities(seed: u64) -> Result<Vec<CheckOutcome>> {
    let suite = Suite::Invariants.name();
    let mut out = Vec::new();
    let mut push = |name: String, passed: bool, summary: String| {
        out.push(CheckOutcome {
            suite: suite.into(),
            name,
            passed,
            summary,
            detail: serde_json::Value::Null,
        });
    };
    let fact = |n: u64| (1..=n).product::<u64>();
    let mut ok = true;
    let mut seen = Vec::new();
    for n in 2..=7usize {
        let v = three_routes(&WeightedGraph::complete(n, 1.0))?;
        ok &= v.iter().all(|&x| x == fact(n as u64 - 1));
        seen.push(v[0]);
    }
    push(
        "mu(K_n) = (n-1)! for n = 2..7".into(),
        ok,
        format!("{seen:?}"),
    );
    let (mut ok, mut seen) = (true, Vec::new());
    for m in 3..=10usize {
        let v = three_routes(&WeightedGraph::cycle(m, 1.0))?;
        ok &= v.iter().all(|&x| x == m as u64 - 1);
        seen.push(v[0]);
    }
    push(
        "mu(C_m) = m - 1 for m = 3..10".into(),
        ok,
        format!("{seen:?}"),
    );
    let trees = [
        WeightedGraph::path(7, 1.0),
        WeightedGraph::complete_bipartite(1, 6, 1.0),
    ];
    let ok = trees.iter().try_fold(true, |acc, g| {
        Ok::<_, Error>(acc && three_routes(g)? == [1, 1, 1])
    })?;
    push(
        "mu(tree) = 1".into(),
        ok,
        "path P_7 and star K_{1,6}".into(),
    );
    let mut catalog = Vec::new();
    for n in 1..=5 {
        catalog.extend(connected_graphs(n));
    }
    let total = catalog.len();
    let bad = catalog
        .iter()
        .chain(&random_connected_graphs(100, seed))
        .try_fold(0usize, |acc, g| {
            let v = three_routes(g)?;
            Ok::<_, Error>(acc + usize::from(v[0] != v[1] || v[1] != v[2]))
        })?;
    push(
        "safe trees = subgraph sum = Tutte".into(),
        bad == 0,
        format!(
            "{total} connected graphs on <= 5 vertices + 100 random on <= 6; {bad} disagreements"
        ),
    );
    let mut ok = true;
    for m in 1..8usize {
        for n in 1..=8 - m {
            let g = WeightedGraph::complete_bipartite(m, n, 1.0);
            ok &= mu_bipartite(m, n)?
                == mu_safe_trees(&g, &EdgeOrder::identity(g.edge_count()))?.value;
        }
    }
    push(
        "mu_bipartite(m, n) = mu(K_{m,n}) for m + n <= 8".into(),
        ok,
        String::new(),
    );
    let k3 = mu_kpartite(&[1, 1, 1])?;
    push(
        "mu_kpartite(1, 1, 1) = mu(K_3)".into(),
        k3 == 2,
        format!("{k3}"),
    );
    Ok(out)
}
