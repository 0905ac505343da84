//! Small-graph corpora: exhaustive labeled multigraphs plus seeded random
//! instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::ColoredMultigraph;

/// Every connected loop-free labeled multigraph on exactly `n` vertices with
/// all multiplicities at most `max_mu`, in odometer order over vertex pairs.
pub fn connected_multigraphs(n: usize, max_mu: u32) -> Result<Vec<ColoredMultigraph>> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut mult = vec![0u32; pairs.len()];
    loop {
        let mut edges = Vec::new();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            for _ in 0..mult[k] {
                edges.push((i, j));
            }
        }
        let g = ColoredMultigraph::from_edge_list(n, &edges)?;
        if g.is_connected() {
            out.push(g);
        }
        let mut k = pairs.len();
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            if mult[k] < max_mu {
                mult[k] += 1;
                break;
            }
            mult[k] = 0;
        }
    }
}

/// A random connected loop-free multigraph: a random labeled tree plus up to
/// `n` extra edges, no multiplicity above `max_mu`.
pub fn random_connected(n: usize, max_mu: u32, rng: &mut impl Rng) -> Result<ColoredMultigraph> {
    let max_mu = max_mu.max(1);
    let mut labels: Vec<usize> = (1..=n).collect();
    labels.shuffle(rng);
    let mut g = ColoredMultigraph::empty(n)?;
    for k in 1..n {
        let parent = labels[rng.gen_range(0..k)];
        g = g.add_edge(labels[k], parent)?;
    }
    if n > 1 {
        let extra = rng.gen_range(0..=n);
        for _ in 0..extra {
            let a = rng.gen_range(1..=n);
            let b = rng.gen_range(1..=n);
            if a != b && g.mu(a, b) < max_mu {
                g = g.add_edge(a, b)?;
            }
        }
    }
    Ok(g)
}

/// `count` random instances with vertex counts drawn from `sizes`.
pub fn random_instances(
    sizes: &[usize],
    max_mu: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<ColoredMultigraph>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = *sizes.choose(&mut rng).expect("at least one size");
            random_connected(n, max_mu, &mut rng)
        })
        .collect()
}

/// Adds `loops` loops at seeded random vertices.
pub fn add_random_loops(
    g: &ColoredMultigraph,
    loops: usize,
    seed: u64,
) -> Result<ColoredMultigraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = g.clone();
    for _ in 0..loops {
        let v = rng.gen_range(1..=g.n());
        out = out.add_edge(v, v)?;
    }
    Ok(out)
}

/// The exhaustive graphs on `max_n` vertices followed by `count` random
/// instances on `max_n + 1` or `max_n + 2` vertices.
pub fn corpus(
    max_n: usize,
    max_mu: u32,
    count: usize,
    seed: u64,
) -> Result<Vec<ColoredMultigraph>> {
    let mut out = connected_multigraphs(max_n, max_mu)?;
    out.extend(random_instances(
        &[max_n + 1, max_n + 2],
        max_mu,
        count,
        seed,
    )?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_counts() {
        assert_eq!(corpus(2, 2, 0, 0).unwrap().len(), 2);
        assert_eq!(corpus(1, 1, 0, 0).unwrap().len(), 1);
        assert_eq!(corpus(3, 1, 0, 0).unwrap().len(), 4);
        // labeled connected simple graphs on 4 vertices
        assert_eq!(connected_multigraphs(4, 1).unwrap().len(), 38);
    }

    #[test]
    fn random_instances_are_connected_and_reproducible() {
        let a = random_instances(&[5, 6], 2, 20, 11).unwrap();
        let b = random_instances(&[5, 6], 2, 20, 11).unwrap();
        assert_eq!(a, b);
        for g in &a {
            assert!(g.is_connected());
            assert!(!g.has_loops());
            assert!([5, 6].contains(&g.n()));
            assert!(g.edges().all(|e| g.mu(e.u(), e.v()) <= 2));
        }
    }
}
