#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use zeroerr_core::confusion::FunctionInstance;
use zeroerr_core::graph::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) on vertices labeled `1..=n`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::numbered(n).unwrap();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(p) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

/// G(n, 1/2) with `n` uniform in `2..=max_n`.
pub fn random_small_graph(rng: &mut impl Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(2..=max_n);
    random_graph(rng, n, 0.5)
}

/// Random graph on `2..=max_n` vertices with at least one edge.
pub fn random_graph_with_edge(rng: &mut impl Rng, max_n: usize) -> Graph {
    loop {
        let n = rng.gen_range(2..=max_n);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(rng, n, p);
        if !g.is_edgeless() {
            return g;
        }
    }
}

pub fn has_isolated_vertex(g: &Graph) -> bool {
    (0..g.n()).any(|v| g.degree(v) == 0)
}

/// Random instance with `|X| ∈ 2..=max_x`, `|Y| ∈ 1..=max_y`, binary or
/// ternary outputs, and every `x` supported by some `y`.
pub fn random_instance(rng: &mut impl Rng, max_x: usize, max_y: usize) -> FunctionInstance {
    let nx = rng.gen_range(2..=max_x);
    let ny = rng.gen_range(1..=max_y);
    let nz = rng.gen_range(2..=3);
    let density = rng.gen_range(0.3..0.9);
    let value: Vec<Vec<Option<usize>>> = (0..nx)
        .map(|_| {
            let mut col: Vec<Option<usize>> = (0..ny)
                .map(|_| rng.gen_bool(density).then(|| rng.gen_range(0..nz)))
                .collect();
            if col.iter().all(Option::is_none) {
                col[rng.gen_range(0..ny)] = Some(rng.gen_range(0..nz));
            }
            col
        })
        .collect();
    let names = |p: &str, k: usize| (0..k).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
    FunctionInstance::new(names("x", nx), names("y", ny), names("z", nz), value, None)
        .unwrap()
        .with_uniform_probabilities()
}
