use branched_bench::wheel;
use branched_core::invariants::{mu_bipartite, mu_safe_trees, mu_subgraph_sum, tutte_mu};
use branched_core::{EdgeOrder, WeightedGraph};
use criterion::{criterion_group, criterion_main, Criterion};

fn mu(c: &mut Criterion) {
    let graphs = [
        ("K6", WeightedGraph::complete(6, 1.0)),
        ("W7", wheel(7)),
        ("K3,4", WeightedGraph::complete_bipartite(3, 4, 1.0)),
    ];
    for (name, g) in &graphs {
        let order = EdgeOrder::identity(g.edge_count());
        c.bench_function(&format!("mu_safe_trees/{name}"), |b| {
            b.iter(|| mu_safe_trees(g, &order).unwrap())
        });
        c.bench_function(&format!("mu_subgraph_sum/{name}"), |b| {
            b.iter(|| mu_subgraph_sum(g).unwrap())
        });
        c.bench_function(&format!("tutte_mu/{name}"), |b| {
            b.iter(|| tutte_mu(g).unwrap())
        });
    }
    c.bench_function("mu_bipartite/6,6", |b| {
        b.iter(|| mu_bipartite(6, 6).unwrap())
    });
}

criterion_group!(benches, mu);
criterion_main!(benches);
