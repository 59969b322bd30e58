//! Acceptance criteria, one line each.
//!
//! Run with `cargo test -p branched-core --test acceptance`. Criteria listed
//! in `KNOWN_RED` are expected to fail for the stated reason; the run fails
//! if any other criterion fails, or if a known-red one starts passing.

use std::process::ExitCode;
use std::time::Instant;

use branched_core::graph::WeightedGraph;
use branched_core::verification::suites::{exactness_graphs, invariant_identities};
use branched_core::verification::*;

/// Acceptance rates and return probabilities: standard errors allowed.
const SIGMAS: f64 = 3.0;
const RATE_TRIALS: u64 = 1_000_000;
const EXACTNESS_SAMPLES: usize = 100_000;
const P_MIN: f64 = 0.01;
const KS_MAX: f64 = 0.01;
const PROJECTION_KS_MAX: f64 = 0.015;
const LIMIT_SAMPLES: u64 = 10_000;
const LIMIT_SHARE: f64 = 0.99;

const KNOWN_RED: &[(u32, &str)] = &[(
    7,
    "the exact law itself has about 2.2% non-label-increasing trees at n = 5, eps = 1e-3 \
     (rejection oracle 0.977); the share tends to 1 only like 1 - O(sqrt(eps))",
)];

struct Verdict {
    passed: bool,
    lines: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict {
            passed: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.passed &= ok;
        self.lines
            .push(format!("{} {line}", if ok { "ok  " } else { "FAIL" }));
    }

    fn report(&mut self, r: &TrialReport) {
        let line = format!(
            "{}: {:.5} +- {:.5} vs {:.5} (z = {:+.2})",
            r.label,
            r.estimate,
            r.stderr,
            r.target.unwrap_or(f64::NAN),
            r.z_score.unwrap_or(f64::NAN)
        );
        self.check(r.passes(SIGMAS), line);
    }

    fn comparison(&mut self, c: &Comparison) {
        let ok = c.topology.p_value > P_MIN && c.functional.statistic < KS_MAX;
        let line = format!(
            "{}: chi2 p = {:.4}, KS = {:.5}",
            c.label, c.topology.p_value, c.functional.statistic
        );
        self.check(ok, line);
    }
}

type Criterion = fn() -> branched_core::Result<Verdict>;

fn invariants() -> branched_core::Result<Verdict> {
    let mut v = Verdict::new();
    for o in invariant_identities(1)? {
        v.check(o.passed, format!("{} {}", o.name, o.summary));
    }
    Ok(v)
}

fn volumes() -> branched_core::Result<Verdict> {
    let mut v = Verdict::new();
    v.report(&acceptance_2d(&[1.0; 3], RATE_TRIALS, 21)?);
    v.report(&acceptance_2d(&[1.0; 4], RATE_TRIALS, 22)?);
    v.report(&acceptance_gpolymer(
        &WeightedGraph::cycle(4, 1.0),
        "C4",
        RATE_TRIALS,
        23,
    )?);
    v.report(&acceptance_gpolymer(
        &WeightedGraph::complete(3, 1.0),
        "K3",
        RATE_TRIALS,
        24,
    )?);
    v.report(&acceptance_3d(3, RATE_TRIALS, 25)?);
    v.report(&acceptance_3d(4, RATE_TRIALS, 26)?);
    Ok(v)
}

fn walk() -> branched_core::Result<Verdict> {
    let mut v = Verdict::new();
    for n in 2..=6 {
        v.report(&walk_return_probability(n, RATE_TRIALS, 30 + n as u64)?);
    }
    let exact = walk_return_exact(2).expect("closed form at n = 2");
    v.check(
        (exact - 1.0 / 3.0).abs() < 1e-15,
        format!("walk n=2 closed form {exact}"),
    );
    Ok(v)
}

fn exactness() -> branched_core::Result<Verdict> {
    let mut v = Verdict::new();
    for n in [3, 4] {
        v.comparison(&compare_2d_with_oracle(
            &vec![1.0; n],
            EXACTNESS_SAMPLES,
            40 + n as u64,
        )?);
    }
    let (triangle, square) = exactness_graphs()?;
    v.comparison(&compare_gpolymer_with_oracle(
        &triangle,
        &[0, 1, 2],
        "K3",
        EXACTNESS_SAMPLES,
        45,
    )?);
    v.comparison(&compare_gpolymer_with_oracle(
        &square,
        &[0, 1, 2, 3],
        "C4",
        EXACTNESS_SAMPLES,
        46,
    )?);
    for k in [3, 4] {
        v.comparison(&compare_prefix_with_oracle(
            &[1.0; 5],
            k,
            EXACTNESS_SAMPLES,
            47 + k as u64,
        )?);
    }
    Ok(v)
}

fn projections() -> branched_core::Result<Verdict> {
    let mut v = Verdict::new();
    let c = projection_vs_rejection(3, EXACTNESS_SAMPLES, 51)?;
    v.check(
        c.max_statistic() < PROJECTION_KS_MAX,
        format!(
            "{}: max KS over coordinates {:.5}",
            c.label,
            c.max_statistic()
        ),
    );
    let c = projection_vs_b_law(
        5,
        &branched_core::BetaWeights::Uniform,
        EXACTNESS_SAMPLES,
        52,
    )?;
    let ks = c.extent().expect("n = 5 has coordinates").statistic;
    v.check(ks < KS_MAX, format!("{}: KS on x-extent {ks:.5}", c.label));
    Ok(v)
}

fn diameter() -> branched_core::Result<Verdict> {
    let mut v = Verdict::new();
    let fit = diameter_scaling(&[50, 100, 200, 400, 800], 4000, DiameterSource::BVector, 61)?;
    v.check(
        (0.4..=0.6).contains(&fit.slope),
        format!("B-vector slope {:.4} over {:?}", fit.slope, fit.ns),
    );
    let fit = diameter_scaling(&[20, 40, 80], 400, DiameterSource::Full3D, 62)?;
    v.check(
        (0.35..=0.65).contains(&fit.slope),
        format!("full sampler slope {:.4} over {:?}", fit.slope, fit.ns),
    );
    Ok(v)
}

fn tiny_radii() -> branched_core::Result<Verdict> {
    let mut v = Verdict::new();
    let radii: Vec<f64> = (0..5).map(|i| 1e-3f64.powi(i)).collect();
    let s = inductive_fraction_sampler(&radii, LIMIT_SAMPLES, 71)?;
    let o = inductive_fraction_oracle(&radii, LIMIT_SAMPLES, 71)?;
    v.check(
        s.estimate >= LIMIT_SHARE,
        format!(
            "label-increasing share {:.4} (oracle {:.4})",
            s.estimate, o.estimate
        ),
    );
    Ok(v)
}

fn types() -> branched_core::Result<Verdict> {
    let mut v = Verdict::new();
    let vectors = random_projection_vectors(200, 7, 81)?;
    let mut agree = 0;
    for xs in &vectors {
        agree += usize::from(type_volume_check(xs, 0, 0)?.exact_match());
    }
    v.check(
        agree == vectors.len(),
        format!(
            "gamma_product = mu_safe_trees on {agree}/{} vectors",
            vectors.len()
        ),
    );
    Ok(v)
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Criterion); 8] = [
        (1, "invariant identities", invariants),
        (2, "volume formulas by rejection acceptance", volumes),
        (3, "random flight return probability", walk),
        (4, "sampler exactness against rejection oracles", exactness),
        (5, "x-projection law", projections),
        (6, "diameter scaling", diameter),
        (7, "degenerate-radius limit", tiny_radii),
        (8, "type volumes", types),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|f| name.contains(f.as_str()) || *f == id.to_string())
        {
            continue;
        }
        let start = Instant::now();
        let verdict = match run() {
            Ok(v) => v,
            Err(e) => Verdict {
                passed: false,
                lines: vec![format!("FAIL error: {e}")],
            },
        };
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id);
        let status = match (verdict.passed, known) {
            (true, None) => "PASS",
            (false, Some(_)) => "FAIL (known)",
            (false, None) => {
                unexpected += 1;
                "FAIL"
            }
            (true, Some(_)) => {
                unexpected += 1;
                "PASS (listed as known red; update KNOWN_RED)"
            }
        };
        println!(
            "criterion {id} [{name}]: {status} ({:.1}s)",
            start.elapsed().as_secs_f64()
        );
        for line in &verdict.lines {
            println!("    {line}");
        }
        if let Some((_, why)) = known {
            println!("    known red: {why}");
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria did not match their expected outcome");
        ExitCode::FAILURE
    }
}
