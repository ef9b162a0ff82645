//! Seeded pseudorandom linear systems for cross-validation and stress tests.
//! Everything here is deterministic in the seed; no entropy source is touched.

use crate::hypergraph::LinearHypergraph;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// All r-subsets of 0..n in lexicographic order.
pub(crate) fn all_r_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(n: usize, r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < r - cur.len() {
                break;
            }
            cur.push(v);
            rec(n, r, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, r, 0, &mut cur, &mut out);
    out
}

/// Greedy linear system: all r-subsets of [n] in a seeded shuffle order, each
/// inserted when it keeps the system linear and survives a density coin flip.
/// `density = 1.0` skips the coin and yields a maximal linear system.
pub fn random_linear(n: usize, r: usize, density: f64, seed: u64) -> LinearHypergraph {
    assert!(r >= 2 && n >= r);
    assert!((0.0..=1.0).contains(&density));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = all_r_subsets(n, r);
    candidates.shuffle(&mut rng);
    let mut pair_used = vec![false; n * n];
    let mut edges: Vec<Vec<usize>> = Vec::new();
    for cand in candidates {
        let free = cand
            .iter()
            .enumerate()
            .all(|(i, &u)| cand[i + 1..].iter().all(|&v| !pair_used[u * n + v]));
        if !free {
            continue;
        }
        if density < 1.0 && !rng.gen_bool(density) {
            continue;
        }
        for (i, &u) in cand.iter().enumerate() {
            for &v in &cand[i + 1..] {
                pair_used[u * n + v] = true;
                pair_used[v * n + u] = true;
            }
        }
        edges.push(cand);
    }
    LinearHypergraph::validate(n, r, &edges).expect("greedy insertion preserves linearity")
}

/// Maximal linear system: no r-subset of [n] can be added without repeating
/// a vertex pair.
pub fn random_maximal_linear(n: usize, r: usize, seed: u64) -> LinearHypergraph {
    random_linear(n, r, 1.0, seed)
}

/// Deterministic instance family. Instance parameters (uniformity from `rs`,
/// vertex count up to `max_n`, density from `densities`) are drawn from a
/// master stream seeded by `seed`, so the whole corpus is a pure function of
/// its arguments.
pub fn corpus(
    count: usize,
    max_n: usize,
    rs: &[usize],
    densities: &[f64],
    seed: u64,
) -> Vec<LinearHypergraph> {
    assert!(!rs.is_empty() && !densities.is_empty());
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = *rs.choose(&mut master).unwrap();
            assert!(max_n >= r + 2);
            let n = master.gen_range((r + 2)..=max_n);
            let density = *densities.choose(&mut master).unwrap();
            random_linear(n, r, density, master.gen())
        })
        .collect()
}
