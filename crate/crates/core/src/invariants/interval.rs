use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// `gamma(j)` for `j = 1..n-1`: how many earlier centres lie within 1 below `xs[j]`.
pub fn gamma_values(xs: &[f64]) -> Result<Vec<u64>> {
    let Some(&first) = xs.first() else {
        return Err(Error::InvalidInput("empty projection vector".into()));
    };
    if first.abs() > 1e-12 {
        return Err(Error::InvalidInput(format!(
            "projection vector must start at 0, got {first}"
        )));
    }
    let mut out = Vec::with_capacity(xs.len().saturating_sub(1));
    for j in 1..xs.len() {
        if xs[j] < xs[j - 1] {
            return Err(Error::InvalidInput(
                "projection vector is not sorted".into(),
            ));
        }
        if xs[j] - xs[j - 1] > 1.0 {
            return Err(Error::Disconnected);
        }
        out.push(xs[..j].iter().filter(|&&x| xs[j] - x <= 1.0).count() as u64);
    }
    Ok(out)
}

/// `mu(H)` of the unit interval graph on sorted centres `xs`, as the product of the gammas.
pub fn gamma_product(xs: &[f64]) -> Result<u64> {
    gamma_values(xs)?
        .into_iter()
        .try_fold(1u64, |acc, g| acc.checked_mul(g))
        .ok_or_else(|| Error::Capacity("gamma product overflows u64".into()))
}

/// Unit interval graph with `beta = 1`.
pub fn interval_graph(xs: &[f64]) -> Result<WeightedGraph> {
    interval_graph_with(xs, |_, _| 1.0)
}

/// Unit interval graph on `xs`: `i ~ j` iff `|x_i - x_j| <= 1`, with the
/// planar contact length `sqrt((1 - (x_j - x_i)^2) / beta_ij)` on each edge.
pub fn interval_graph_with(
    xs: &[f64],
    beta: impl Fn(usize, usize) -> f64,
) -> Result<WeightedGraph> {
    let n = xs.len();
    let mut g = WeightedGraph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let dx = xs[j] - xs[i];
            if dx == 0.0 {
                return Err(Error::InvalidInput(format!(
                    "duplicate projection at vertices {i} and {j}"
                )));
            }
            if dx.abs() <= 1.0 {
                let b = beta(i, j);
                g.add_edge_with_beta(i, j, ((1.0 - dx * dx).max(0.0) / b).sqrt(), b)?;
            }
        }
    }
    Ok(g)
}
