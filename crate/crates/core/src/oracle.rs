//! Brute-force references: explicit basis enumeration and seeded sampling.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::interdiction::{evaluate_interdiction, InterdictionSolution};
use crate::matroid::{Basis, GroundElement, MatroidInstance, ParametricWeight};
use crate::param::{evaluate_solution, ParametricSolution};
use crate::rational::{ExtRational, Rational};
use crate::wsd::{CostVector, ImagePoint};

pub const DEFAULT_CAP: u128 = 1_000_000;

/// Sample coordinates are multiples of `1 / 2^SAMPLE_BITS`.
pub const SAMPLE_BITS: u32 = 16;

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

/// Every basis, by filtering all `rank`-subsets of the undeleted elements.
pub fn enumerate_bases(instance: &MatroidInstance) -> Result<Vec<Basis>> {
    enumerate_bases_capped(instance, DEFAULT_CAP)
}

pub fn enumerate_bases_capped(instance: &MatroidInstance, cap: u128) -> Result<Vec<Basis>> {
    let elements: Vec<GroundElement> = instance.elements().collect();
    let k = instance.rank();
    let count = binomial(elements.len(), k);
    if count > cap {
        return Err(Error::CapExceeded { count, cap });
    }
    let mut out = Vec::new();
    for subset in elements.into_iter().combinations(k) {
        if instance.is_independent(&subset)? {
            out.push(Basis::new(subset));
        }
    }
    Ok(out)
}

fn value_at(basis: &Basis, weights: &[ParametricWeight], point: &[Rational]) -> Rational {
    basis
        .elements()
        .iter()
        .map(|&e| weights[e].eval(point))
        .sum()
}

/// Minimum basis at `point`; ties go to the lexicographically smallest basis.
pub fn brute_min_basis(
    instance: &MatroidInstance,
    weights: &[ParametricWeight],
    point: &[Rational],
) -> Result<(Basis, Rational)> {
    let mut best: Option<(Basis, Rational)> = None;
    for b in enumerate_bases(instance)? {
        let v = value_at(&b, weights, point);
        if best.as_ref().is_none_or(|(_, bv)| v < *bv) {
            best = Some((b, v));
        }
    }
    best.ok_or_else(|| Error::Internal("matroid has no basis".into()))
}

/// `max_e` of the minimum over `M \ e`, with +inf when deleting `e` lowers
/// the rank; ties go to the smallest element.
pub fn brute_interdiction_value(
    instance: &MatroidInstance,
    weights: &[ParametricWeight],
    point: &[Rational],
) -> Result<(GroundElement, ExtRational)> {
    let rank = instance.rank();
    let mut best: Option<(GroundElement, ExtRational)> = None;
    for e in instance.elements() {
        let minor = instance.delete_element(e)?;
        let v = if minor.rank() < rank {
            ExtRational::PosInfinity
        } else {
            ExtRational::Finite(brute_min_basis(&minor, weights, point)?.1)
        };
        if best.as_ref().is_none_or(|(_, bv)| v > *bv) {
            best = Some((e, v));
        }
    }
    best.ok_or_else(|| Error::Input("interdiction needs at least one element".into()))
}

/// Every weighted-sum minimizer at the full weight vector `lambda`, one per
/// distinct image, in basis order.
pub fn weighted_sum_argmins(
    instance: &MatroidInstance,
    costs: &[CostVector],
    lambda: &[Rational],
) -> Result<Vec<ImagePoint>> {
    let mut best: Option<Rational> = None;
    let mut out: Vec<ImagePoint> = Vec::new();
    for b in enumerate_bases(instance)? {
        let img = ImagePoint::of(b, costs);
        let v = img.weighted(lambda);
        match best.as_ref().map(|bv| v.cmp(bv)) {
            Some(std::cmp::Ordering::Greater) => {}
            Some(std::cmp::Ordering::Equal) => {
                if !out.iter().any(|x| x.y == img.y) {
                    out.push(img);
                }
            }
            _ => {
                best = Some(v);
                out = vec![img];
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSample {
    pub lambda: Vec<Rational>,
    pub argmins: Vec<ImagePoint>,
}

/// Weighted-sum minimizers on the grid `{i / resolution}` inside the open
/// simplex, for two or three objectives.
pub fn grid_wsd(
    instance: &MatroidInstance,
    costs: &[CostVector],
    resolution: u32,
) -> Result<Vec<GridSample>> {
    let p = costs.first().map_or(0, Vec::len);
    if !(2..=3).contains(&p) {
        return Err(Error::Input(format!(
            "grid oracle supports 2 or 3 objectives, got {p}"
        )));
    }
    if resolution < 8 {
        return Err(Error::Input("grid resolution must be at least 8".into()));
    }
    let r = resolution as i64;
    let frac = |i: i64| Rational::from_signeds(i, r);
    let mut points = Vec::new();
    if p == 2 {
        for i in 1..r {
            points.push(vec![frac(i), frac(r - i)]);
        }
    } else {
        for i in 1..r {
            for j in 1..r - i {
                points.push(vec![frac(i), frac(j), frac(r - i - j)]);
            }
        }
    }
    points
        .into_iter()
        .map(|lambda| {
            let argmins = weighted_sum_argmins(instance, costs, &lambda)?;
            Ok(GridSample { lambda, argmins })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub point: Vec<Rational>,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub samples: usize,
    pub mismatches: Vec<Mismatch>,
    pub passed: bool,
}

pub enum AuditTarget<'a> {
    Parametric(&'a ParametricSolution),
    Interdiction(&'a InterdictionSolution),
}

/// `n` points in the closed box with coordinates on the `2^-16` grid.
/// Unbounded sides are cut at `max(16, 2 * vertex extent)`.
pub fn sample_points(
    arrangement: &crate::geometry::Arrangement,
    n: usize,
    seed: u64,
) -> Vec<Vec<Rational>> {
    let (lo, hi) = arrangement.display_bounds();
    let den = 1i64 << SAMPLE_BITS;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            lo.iter()
                .zip(&hi)
                .map(|(l, h)| {
                    let u: i64 = rng.gen_range(0..=den);
                    l + (h - l) * Rational::from_signeds(u, den)
                })
                .collect()
        })
        .collect()
}

/// Compares the solution against brute force at `n` seeded sample points.
pub fn sample_audit(
    instance: &MatroidInstance,
    weights: &[ParametricWeight],
    target: AuditTarget<'_>,
    n: usize,
    seed: u64,
) -> Result<AuditReport> {
    let arrangement = match &target {
        AuditTarget::Parametric(s) => &s.arrangement,
        AuditTarget::Interdiction(s) => &s.arrangement,
    };
    let mut mismatches = Vec::new();
    for point in sample_points(arrangement, n, seed) {
        let (expected, actual) = match &target {
            AuditTarget::Parametric(s) => {
                let (_, bv) = brute_min_basis(instance, weights, &point)?;
                match evaluate_solution(s, &point) {
                    Ok((b, v)) => {
                        let attained = value_at(&b, weights, &point);
                        let ok =
                            v == bv && attained == bv && instance.is_independent(b.elements())?;
                        if ok {
                            continue;
                        }
                        (bv.to_string(), format!("{v} via {:?}", b.elements()))
                    }
                    Err(e) => (bv.to_string(), e.to_string()),
                }
            }
            AuditTarget::Interdiction(s) => {
                let (_, bv) = brute_interdiction_value(instance, weights, &point)?;
                match evaluate_interdiction(s, &point) {
                    Ok((e, v)) => {
                        let minor = instance.delete_element(e)?;
                        let attained = if minor.rank() < instance.rank() {
                            ExtRational::PosInfinity
                        } else {
                            ExtRational::Finite(brute_min_basis(&minor, weights, &point)?.1)
                        };
                        if v == bv && attained == bv {
                            continue;
                        }
                        (bv.to_string(), format!("{v} via element {e}"))
                    }
                    Err(err) => (bv.to_string(), err.to_string()),
                }
            }
        };
        mismatches.push(Mismatch {
            point,
            expected,
            actual,
        });
    }
    Ok(AuditReport {
        samples: n,
        passed: mismatches.is_empty(),
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_costs, example_instance, example_weights, E, F, G, H};
    use crate::param::{solve, Algorithm};
    use crate::rational::{int, ratio, ParameterBox};

    fn b(v: &[usize]) -> Basis {
        Basis::new(v.to_vec())
    }

    #[test]
    fn example_bases() {
        let bases = enumerate_bases(&example_instance()).unwrap();
        assert_eq!(
            bases,
            vec![b(&[E, F]), b(&[E, H]), b(&[F, G]), b(&[F, H]), b(&[G, H])]
        );
        assert_eq!(
            enumerate_bases(&MatroidInstance::uniform(2, 4).unwrap())
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            enumerate_bases(&MatroidInstance::uniform(3, 3).unwrap())
                .unwrap()
                .len(),
            1
        );
        assert!(matches!(
            enumerate_bases_capped(&MatroidInstance::uniform(5, 20).unwrap(), 100),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn example_minima() {
        let (m, w) = (example_instance(), example_weights());
        assert_eq!(
            brute_min_basis(&m, &w, &[ratio(-3, 5), ratio(-3, 5)]).unwrap(),
            (b(&[E, H]), ratio(-48, 5))
        );
        assert_eq!(
            brute_min_basis(&m, &w, &[int(2), int(2)]).unwrap(),
            (b(&[E, F]), int(34))
        );
        assert_eq!(
            brute_interdiction_value(&m, &w, &[ratio(-3, 5), ratio(-3, 5)]).unwrap(),
            (H, ExtRational::Finite(ratio(-38, 5)))
        );
        assert_eq!(
            brute_interdiction_value(&m, &w, &[int(2), int(2)]).unwrap(),
            (F, ExtRational::Finite(int(58)))
        );
    }

    #[test]
    fn grid_biobjective() {
        let grid = grid_wsd(&example_instance(), &example_costs(), 8).unwrap();
        let at = |num: i64| grid.iter().find(|g| g.lambda[0] == ratio(num, 8)).unwrap();
        assert_eq!(at(2).argmins.len(), 1);
        assert_eq!(at(2).argmins[0].y, vec![int(10), int(6)]);
        assert_eq!(at(2).argmins[0].weighted(&at(2).lambda), int(7));
        assert_eq!(at(6).argmins[0].y, vec![int(6), int(10)]);
        assert_eq!(at(4).argmins.len(), 2);
        assert_eq!(at(4).argmins[0].weighted(&at(4).lambda), int(8));
    }

    #[test]
    fn audit_and_negative_control() {
        let (m, w) = (example_instance(), example_weights());
        let mut sol = solve(&m, &w, &ParameterBox::unbounded(2), Algorithm::Pivot).unwrap();
        let report = sample_audit(&m, &w, AuditTarget::Parametric(&sol), 100, 7).unwrap();
        assert!(report.passed, "{:?}", report.mismatches);
        assert!(
            sample_audit(&m, &w, AuditTarget::Parametric(&sol), 0, 7)
                .unwrap()
                .passed
        );
        assert_eq!(
            sample_points(&sol.arrangement, 5, 3),
            sample_points(&sol.arrangement, 5, 3)
        );
        sol.regions[0].basis = b(&[E, G]);
        let report = sample_audit(&m, &w, AuditTarget::Parametric(&sol), 100, 7).unwrap();
        assert!(!report.passed);
    }
}
