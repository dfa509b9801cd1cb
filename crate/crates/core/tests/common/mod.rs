#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pmatroid::geometry::check_weights;
use pmatroid::matroid::{MatroidInstance, ParametricWeight};
use pmatroid::rational::{int, Rational};

pub const MAX_COEFF: i64 = 16;

#[derive(Clone, Debug)]
pub struct Case {
    pub name: String,
    pub matroid: MatroidInstance,
    pub weights: Vec<ParametricWeight>,
    pub p: usize,
}

/// Connected multigraph: a random spanning tree plus extra edges.
pub fn random_graphic(rng: &mut ChaCha8Rng, max_nodes: usize, max_edges: usize) -> MatroidInstance {
    let n = rng.gen_range(3..=max_nodes);
    let m = rng.gen_range(n..=max_edges.max(n));
    let mut edges = Vec::with_capacity(m);
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    while edges.len() < m {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n);
        while v == u {
            v = rng.gen_range(0..n);
        }
        edges.push((u, v));
    }
    // shuffle so the tree edges are not always the lowest ids
    for i in (1..edges.len()).rev() {
        let j = rng.gen_range(0..=i);
        edges.swap(i, j);
    }
    MatroidInstance::graphic(n, edges).unwrap()
}

pub fn random_uniform(rng: &mut ChaCha8Rng, max_size: usize) -> MatroidInstance {
    let m = rng.gen_range(3..=max_size);
    let k = rng.gen_range(1..m.min(4));
    MatroidInstance::uniform(k, m).unwrap()
}

/// Columns of small integers in `Q^r` with `r <= 4`.
pub fn random_linear(rng: &mut ChaCha8Rng, max_size: usize) -> MatroidInstance {
    let r = rng.gen_range(2..=4);
    let m = rng.gen_range(r + 1..=max_size.max(r + 1));
    let columns = (0..m)
        .map(|_| (0..r).map(|_| int(rng.gen_range(-2..=2))).collect())
        .collect();
    MatroidInstance::linear(columns).unwrap()
}

pub fn random_weights(rng: &mut ChaCha8Rng, m: usize, p: usize) -> Vec<ParametricWeight> {
    (0..m)
        .map(|_| {
            ParametricWeight::new(
                int(rng.gen_range(-MAX_COEFF..=MAX_COEFF)),
                (0..p)
                    .map(|_| int(rng.gen_range(-MAX_COEFF..=MAX_COEFF)))
                    .collect(),
            )
        })
        .collect()
}

/// Weights with no identical pairs and no duplicate hyperplanes.
pub fn generic_weights(
    rng: &mut ChaCha8Rng,
    m: &MatroidInstance,
    p: usize,
) -> Vec<ParametricWeight> {
    let elements: Vec<usize> = m.elements().collect();
    loop {
        let w = random_weights(rng, m.ground_size(), p);
        if !check_weights(&w, &elements).1.is_degenerate() {
            return w;
        }
    }
}

/// Instance `index` of the seeded suite: kinds rotate graphic, uniform,
/// linear; `p` alternates 2 and 3. Three-parameter instances stay smaller.
pub fn case(seed: u64, index: usize) -> Case {
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(index as u64));
    let p = if index.is_multiple_of(2) { 2 } else { 3 };
    let max_m = if p == 2 { 8 } else { 6 };
    let (kind, matroid) = match index % 3 {
        0 => ("graphic", random_graphic(&mut rng, 6, max_m)),
        1 => ("uniform", random_uniform(&mut rng, max_m.min(7))),
        _ => ("linear", random_linear(&mut rng, max_m.min(7))),
    };
    let weights = generic_weights(&mut rng, &matroid, p);
    Case {
        name: format!(
            "#{index} {kind} m={} k={} p={p}",
            matroid.ground_size(),
            matroid.rank()
        ),
        matroid,
        weights,
        p,
    }
}

pub fn suite(seed: u64, count: usize) -> Vec<Case> {
    (0..count).map(|i| case(seed, i)).collect()
}

/// Integer cost vectors in `[0, 16]^p`.
pub fn random_costs(rng: &mut ChaCha8Rng, m: usize, p: usize) -> Vec<Vec<Rational>> {
    (0..m)
        .map(|_| (0..p).map(|_| int(rng.gen_range(0..=MAX_COEFF))).collect())
        .collect()
}

/// Dyadic point in `[-r, r]^d`.
pub fn random_point(rng: &mut ChaCha8Rng, d: usize, r: i64) -> Vec<Rational> {
    let den = 1i64 << 12;
    (0..d)
        .map(|_| Rational::from_signeds(rng.gen_range(-r * den..=r * den), den))
        .collect()
}
