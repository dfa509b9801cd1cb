use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::rational::RationalExt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::matroid::{GroundElement, ParametricWeight};
use crate::rational::{dot, primitive_integer_vector, Rational};

/// Position of a point relative to a hyperplane `normal . x = offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Below,
    On,
    Above,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Below => Sign::Above,
            Sign::Above => Sign::Below,
            Sign::On => Sign::On,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Below => '-',
            Sign::On => '0',
            Sign::Above => '+',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn flip(&self, j: usize) -> SignVector {
        let mut v = self.0.clone();
        v[j] = v[j].flipped();
        SignVector(v)
    }

    /// True if `point_sign` is on the closure of the cell with this vector.
    pub fn admits(&self, point_sign: &SignVector) -> bool {
        self.0
            .iter()
            .zip(&point_sign.0)
            .all(|(c, p)| *p == Sign::On || c == p)
    }

    pub fn differing(&self, other: &SignVector) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.0[i] != other.0[i])
            .collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.symbol()))
    }
}

/// Where a hyperplane came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HyperplaneSource {
    /// `h(e, f)`; the `Below` side is where `w(e) < w(f)`.
    Pair(GroundElement, GroundElement),
    /// Boundary `lambda_i = 0` of the weight set (1-based `i` in text, 0-based here).
    Boundary(usize),
    None,
}

/// `normal . x = offset`, stored as a primitive integer vector whose first
/// nonzero normal coordinate is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
    pub source: HyperplaneSource,
}

impl Hyperplane {
    /// Canonicalizes `normal . x = offset`; `None` for a zero normal.
    ///
    /// The second component reports whether the orientation was reversed,
    /// i.e. whether the `Below` side of the result is the `> offset` side of
    /// the input.
    pub fn canonical(
        normal: &[Rational],
        offset: &Rational,
        source: HyperplaneSource,
    ) -> Option<(Hyperplane, bool)> {
        if normal.iter().all(RationalExt::is_zero) {
            return None;
        }
        let mut coeffs: Vec<Rational> = normal.to_vec();
        coeffs.push(offset.clone());
        let mut coeffs = primitive_integer_vector(&coeffs)?;
        let flipped = coeffs
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative());
        if flipped {
            coeffs.iter_mut().for_each(|c| *c = -c.clone());
        }
        let offset = coeffs.pop().unwrap();
        let source = match (flipped, source) {
            (true, HyperplaneSource::Pair(e, f)) => HyperplaneSource::Pair(f, e),
            (_, s) => s,
        };
        Some((
            Hyperplane {
                normal: coeffs,
                offset,
                source,
            },
            flipped,
        ))
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `normal . x - offset`
    pub fn value(&self, point: &[Rational]) -> Rational {
        dot(&self.normal, point) - &self.offset
    }

    pub fn side(&self, point: &[Rational]) -> Sign {
        let v = self.value(point);
        if v.is_negative() {
            Sign::Below
        } else if v.is_positive() {
            Sign::Above
        } else {
            Sign::On
        }
    }

    pub fn same_locus(&self, other: &Hyperplane) -> bool {
        self.normal == other.normal && self.offset == other.offset
    }

    /// Zero coefficient on the last coordinate.
    pub fn is_vertical(&self) -> bool {
        self.normal.last().is_some_and(RationalExt::is_zero)
    }

    /// Closed half-space on the given side.
    pub fn half_space(&self, side: Sign) -> HalfSpace {
        match side {
            Sign::Above => HalfSpace {
                normal: self.normal.iter().map(|c| -c.clone()).collect(),
                offset: -self.offset.clone(),
            },
            _ => HalfSpace {
                normal: self.normal.clone(),
                offset: self.offset.clone(),
            },
        }
    }
}

/// Closed half-space `normal . x <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfSpace {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl HalfSpace {
    pub fn slack(&self, point: &[Rational]) -> Rational {
        &self.offset - dot(&self.normal, point)
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        !self.slack(point).is_negative()
    }

    pub fn strictly_contains(&self, point: &[Rational]) -> bool {
        self.slack(point).is_positive()
    }
}

/// `H=`: one hyperplane per element pair with distinct weight functions.
#[derive(Clone, Debug)]
pub struct SeparatingHyperplanes {
    pub hyperplanes: Vec<Hyperplane>,
    /// Pairs whose weight functions coincide; they have no hyperplane.
    pub identical_pairs: Vec<(GroundElement, GroundElement)>,
}

pub fn separating_hyperplane(
    e: GroundElement,
    f: GroundElement,
    we: &ParametricWeight,
    wf: &ParametricWeight,
) -> Option<Hyperplane> {
    let normal: Vec<Rational> = we.b.iter().zip(&wf.b).map(|(x, y)| x - y).collect();
    let offset = &wf.a - &we.a;
    Hyperplane::canonical(&normal, &offset, HyperplaneSource::Pair(e, f)).map(|(h, _)| h)
}

/// Builds `H=` over the given elements (ascending pair order).
pub fn build_separating_hyperplanes(
    weights: &[ParametricWeight],
    elements: &[GroundElement],
) -> SeparatingHyperplanes {
    let mut hyperplanes = Vec::new();
    let mut identical_pairs = Vec::new();
    for (i, &e) in elements.iter().enumerate() {
        for &f in &elements[i + 1..] {
            match separating_hyperplane(e, f, &weights[e], &weights[f]) {
                Some(h) => hyperplanes.push(h),
                None => {
                    if weights[e].a == weights[f].a {
                        identical_pairs.push((e, f));
                    }
                    // parallel constant weights never tie: no hyperplane needed
                }
            }
        }
    }
    SeparatingHyperplanes {
        hyperplanes,
        identical_pairs,
    }
}

/// Violations of the general-position assumptions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AssumptionReport {
    /// Element pairs with identical weight functions.
    pub identical_weights: Vec<(GroundElement, GroundElement)>,
    /// Index pairs of hyperplanes with the same locus.
    pub duplicates: Vec<(usize, usize)>,
    /// Indices of hyperplanes parallel to the last coordinate axis.
    pub vertical: Vec<usize>,
}

impl AssumptionReport {
    pub fn is_clean(&self) -> bool {
        self.identical_weights.is_empty() && self.duplicates.is_empty() && self.vertical.is_empty()
    }

    /// Blocks arrangement construction; vertical hyperplanes do not.
    pub fn is_degenerate(&self) -> bool {
        !self.identical_weights.is_empty() || !self.duplicates.is_empty()
    }
}

impl fmt::Display for AssumptionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} identical weight pairs, {} duplicate hyperplane pairs, {} vertical hyperplanes",
            self.identical_weights.len(),
            self.duplicates.len(),
            self.vertical.len()
        )
    }
}

/// Reports duplicate and vertical hyperplanes.
pub fn check_assumptions(hyperplanes: &[Hyperplane]) -> AssumptionReport {
    let mut seen: HashMap<(&[Rational], &Rational), Vec<usize>> = HashMap::new();
    for (i, h) in hyperplanes.iter().enumerate() {
        seen.entry((&h.normal, &h.offset)).or_default().push(i);
    }
    let mut duplicates = Vec::new();
    for group in seen.values() {
        for (k, &i) in group.iter().enumerate() {
            for &j in &group[k + 1..] {
                duplicates.push((i, j));
            }
        }
    }
    duplicates.sort_unstable();
    AssumptionReport {
        identical_weights: Vec::new(),
        duplicates,
        vertical: (0..hyperplanes.len())
            .filter(|&i| hyperplanes[i].is_vertical())
            .collect(),
    }
}

/// Builds `H=` and checks it in one go.
pub fn check_weights(
    weights: &[ParametricWeight],
    elements: &[GroundElement],
) -> (SeparatingHyperplanes, AssumptionReport) {
    let sep = build_separating_hyperplanes(weights, elements);
    let mut report = check_assumptions(&sep.hyperplanes);
    report.identical_weights = sep.identical_pairs.clone();
    (sep, report)
}

const PERTURBATION_BITS: u32 = 20;

/// Distinct pseudo-random rationals in `(0, 1)` with denominator `2^20`.
fn distinct_unit_rationals(count: usize, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = HashSet::new();
    let den = 1i64 << PERTURBATION_BITS;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k: u64 = rng.gen_range(1..(1u64 << PERTURBATION_BITS));
        if used.insert(k) {
            out.push(Rational::from_signeds(k as i64, den));
        }
    }
    out
}

/// Adds `epsilon * r` to every coefficient of every weight, with distinct
/// deterministic `r in (0,1)` drawn from `seed`. Perturbing the slopes as well
/// as the constants is what removes vertical hyperplanes.
pub fn perturb_weights(
    weights: &[ParametricWeight],
    seed: u64,
    epsilon: &Rational,
) -> Vec<ParametricWeight> {
    if epsilon.is_zero() {
        return weights.to_vec();
    }
    let dim = weights.first().map_or(0, |w| w.dim());
    let r = distinct_unit_rationals(weights.len() * (dim + 1), seed);
    weights
        .iter()
        .enumerate()
        .map(|(e, w)| {
            let base = e * (dim + 1);
            ParametricWeight {
                a: &w.a + epsilon * &r[base],
                b: w.b
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c + epsilon * &r[base + 1 + i])
                    .collect(),
            }
        })
        .collect()
}

/// Perturbs cost vectors coordinate-wise (weighted-sum instances have no
/// constant term).
pub fn perturb_costs(costs: &[Vec<Rational>], seed: u64, epsilon: &Rational) -> Vec<Vec<Rational>> {
    if epsilon.is_zero() {
        return costs.to_vec();
    }
    let dim = costs.first().map_or(0, Vec::len);
    let r = distinct_unit_rationals(costs.len() * dim, seed);
    costs
        .iter()
        .enumerate()
        .map(|(e, c)| {
            c.iter()
                .enumerate()
                .map(|(i, x)| x + epsilon * &r[e * dim + i])
                .collect()
        })
        .collect()
}

/// Why a hyperplane disappeared when restricted to the weight set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Triviality {
    /// Contains the whole affine hull of the weight set.
    Identity,
    /// Misses the affine hull entirely.
    Contradiction,
}

#[derive(Clone, Debug)]
pub struct RestrictedHyperplanes {
    pub hyperplanes: Vec<Hyperplane>,
    /// (input index, reason) for each dropped hyperplane.
    pub dropped: Vec<(usize, Triviality)>,
}

/// Substitutes `lambda_p = 1 - sum_{i<p} lambda_i` and canonicalizes in
/// `R^{p-1}`. The `Below` side keeps its meaning on the weight set.
pub fn restrict_to_weight_set(hyperplanes: &[Hyperplane]) -> RestrictedHyperplanes {
    let mut kept = Vec::new();
    let mut dropped = Vec::new();
    for (idx, h) in hyperplanes.iter().enumerate() {
        let p = h.dim();
        assert!(p >= 2, "weight-set restriction needs p >= 2");
        let last = &h.normal[p - 1];
        let normal: Vec<Rational> = h.normal[..p - 1].iter().map(|c| c - last).collect();
        let offset = &h.offset - last;
        match Hyperplane::canonical(&normal, &offset, h.source) {
            Some((r, _)) => kept.push(r),
            None => dropped.push((
                idx,
                if offset.is_zero() {
                    Triviality::Identity
                } else {
                    Triviality::Contradiction
                },
            )),
        }
    }
    RestrictedHyperplanes {
        hyperplanes: kept,
        dropped,
    }
}
