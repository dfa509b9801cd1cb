//! The four-edge, three-node running example used throughout the docs and tests.

use crate::matroid::{MatroidInstance, ParametricWeight};
use crate::rational::{int, Rational};

pub const E: usize = 0;
pub const F: usize = 1;
pub const G: usize = 2;
pub const H: usize = 3;

/// Triangle with a doubled edge: `e` and `g` both join nodes 0 and 1.
pub fn example_instance() -> MatroidInstance {
    MatroidInstance::graphic(3, vec![(0, 1), (2, 0), (0, 1), (2, 1)])
        .and_then(|m| m.with_labels(["e", "f", "g", "h"].map(String::from).to_vec()))
        .expect("fixture is valid")
}

fn w(a: i64, b1: i64, b2: i64) -> ParametricWeight {
    ParametricWeight::new(int(a), vec![int(b1), int(b2)])
}

pub fn example_weights() -> Vec<ParametricWeight> {
    vec![w(0, 6, 4), w(2, 4, 2), w(1, 2, 8), w(6, 4, 12)]
}

/// Bi-objective costs on the same graph.
pub fn example_costs() -> Vec<Vec<Rational>> {
    [(6, 4), (4, 2), (2, 8), (4, 12)]
        .iter()
        .map(|&(x, y)| vec![int(x), int(y)])
        .collect()
}
