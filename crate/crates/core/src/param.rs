//! Minimum-weight bases over a parameter box.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::geometry::{
    check_weights, enumerate_cells, Arrangement, HalfSpace, HyperplaneSource, Sign,
};
use crate::matroid::{basis_value_function, AffineValue, Basis, MatroidInstance, ParametricWeight};
use crate::rational::{ParameterBox, Rational};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Algorithm {
    /// Greedy at every cell representative.
    PerCell,
    /// Greedy once, then swap updates along the cell adjacency graph.
    #[default]
    Pivot,
}

/// A maximal connected set of cells sharing one basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub id: usize,
    pub cell_ids: Vec<usize>,
    pub basis: Basis,
    pub value: AffineValue,
    pub representative: Vec<Rational>,
    /// Closed description: boundary facets plus the finite box sides.
    pub constraints: Vec<HalfSpace>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub hyperplanes: usize,
    pub cells: usize,
    pub regions: usize,
    pub oracle_calls: u64,
}

#[derive(Clone, Debug)]
pub struct ParametricSolution {
    pub arrangement: Arc<Arrangement>,
    pub weights: Vec<ParametricWeight>,
    pub cell_bases: Vec<Basis>,
    pub regions: Vec<Region>,
    pub cell_to_region: Vec<usize>,
    pub stats: SolveStats,
}

/// Builds `H=` for the undeleted elements and enumerates its arrangement.
///
/// Fails with a degeneracy report when two weights coincide or two
/// hyperplanes share a locus.
pub fn build_arrangement(
    instance: &MatroidInstance,
    weights: &[ParametricWeight],
    bbox: &ParameterBox,
) -> Result<Arrangement> {
    validate_weights(instance, weights, bbox.dim())?;
    let elements: Vec<usize> = instance.elements().collect();
    let (sep, report) = check_weights(weights, &elements);
    if report.is_degenerate() {
        return Err(Error::Degenerate(Box::new(report)));
    }
    enumerate_cells(&sep.hyperplanes, bbox)
}

pub fn validate_weights(
    instance: &MatroidInstance,
    weights: &[ParametricWeight],
    dim: usize,
) -> Result<()> {
    if weights.len() != instance.ground_size() {
        return Err(Error::Input(format!(
            "{} weights for {} elements",
            weights.len(),
            instance.ground_size()
        )));
    }
    if let Some(e) = weights.iter().position(|w| w.dim() != dim) {
        return Err(Error::Input(format!(
            "weight of element {e} has {} coefficients, expected {dim}",
            weights[e].dim()
        )));
    }
    Ok(())
}

pub fn solve(
    instance: &MatroidInstance,
    weights: &[ParametricWeight],
    bbox: &ParameterBox,
    algorithm: Algorithm,
) -> Result<ParametricSolution> {
    let arrangement = Arc::new(build_arrangement(instance, weights, bbox)?);
    solve_on_arrangement(instance, weights, arrangement, algorithm, true)
}

pub fn solve_per_cell(
    instance: &MatroidInstance,
    weights: &[ParametricWeight],
    bbox: &ParameterBox,
) -> Result<ParametricSolution> {
    solve(instance, weights, bbox, Algorithm::PerCell)
}

pub fn solve_pivot(
    instance: &MatroidInstance,
    weights: &[ParametricWeight],
    bbox: &ParameterBox,
) -> Result<ParametricSolution> {
    solve(instance, weights, bbox, Algorithm::Pivot)
}

/// Solves on a prebuilt arrangement whose hyperplanes include every pair of
/// undeleted elements (extra hyperplanes are harmless).
pub fn solve_on_arrangement(
    instance: &MatroidInstance,
    weights: &[ParametricWeight],
    arrangement: Arc<Arrangement>,
    algorithm: Algorithm,
    merge: bool,
) -> Result<ParametricSolution> {
    validate_weights(instance, weights, arrangement.dim())?;
    let before = instance.oracle_calls();
    let cell_bases: Vec<Basis> = match algorithm {
        Algorithm::PerCell => per_cell_bases(instance, weights, &arrangement, None),
        Algorithm::Pivot => pivot_bases(instance, weights, &arrangement, None),
    }
    .into_iter()
    .map(|b| b.expect("every cell is reached"))
    .collect();
    let oracle_calls = instance.oracle_calls() - before;
    let (regions, cell_to_region) = if merge {
        merge_regions(&arrangement, &cell_bases, weights)
    } else {
        singleton_regions(&arrangement, &cell_bases, weights)
    };
    Ok(ParametricSolution {
        stats: SolveStats {
            hyperplanes: arrangement.hyperplanes.len(),
            cells: arrangement.len(),
            regions: regions.len(),
            oracle_calls,
        },
        arrangement,
        weights: weights.to_vec(),
        cell_bases,
        regions,
        cell_to_region,
    })
}

/// Greedy at each representative of the cells selected by `mask`.
pub fn per_cell_bases(
    instance: &MatroidInstance,
    weights: &[ParametricWeight],
    arrangement: &Arrangement,
    mask: Option<&[bool]>,
) -> Vec<Option<Basis>> {
    arrangement
        .cells
        .iter()
        .map(|c| {
            mask.is_none_or(|m| m[c.id])
                .then(|| instance.greedy_min_basis(weights, &c.representative))
        })
        .collect()
}

/// Greedy at one start cell, then breadth-first swap updates.
///
/// With a mask, the search stays within the selected cells, which must be
/// connected through adjacency among themselves.
pub fn pivot_bases(
    instance: &MatroidInstance,
    weights: &[ParametricWeight],
    arrangement: &Arrangement,
    mask: Option<&[bool]>,
) -> Vec<Option<Basis>> {
    let n = arrangement.len();
    let mut bases: Vec<Option<Basis>> = vec![None; n];
    let allowed = |c: usize| mask.is_none_or(|m| m[c]);
    let start = {
        let s = arrangement.start_cell();
        if allowed(s) {
            Some(s)
        } else {
            (0..n).find(|&c| allowed(c))
        }
    };
    let Some(start) = start else {
        return bases;
    };
    bases[start] =
        Some(instance.greedy_min_basis(weights, &arrangement.cells[start].representative));
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        let current = bases[c].clone().unwrap();
        for &(next, j) in arrangement.neighbors(c) {
            if bases[next].is_some() || !allowed(next) {
                continue;
            }
            let basis = match arrangement.hyperplanes[j].source {
                HyperplaneSource::Pair(a, b) => {
                    let (out, inn) = if arrangement.cells[c].sign.0[j] == Sign::Below {
                        (a, b)
                    } else {
                        (b, a)
                    };
                    instance.swap_update(&current, out, inn)
                }
                _ => current.clone(),
            };
            bases[next] = Some(basis);
            queue.push_back(next);
        }
    }
    bases
}

fn region_from_cells(
    id: usize,
    cell_ids: Vec<usize>,
    arrangement: &Arrangement,
    cell_bases: &[Basis],
    cell_to_region: &[usize],
    weights: &[ParametricWeight],
) -> Region {
    let first = cell_ids[0];
    let basis = cell_bases[first].clone();
    let value = basis_value_function(&basis, weights, arrangement.dim());
    let mut seen = BTreeSet::new();
    let mut constraints = Vec::new();
    for &c in &cell_ids {
        for &(n, j) in arrangement.neighbors(c) {
            if cell_to_region[n] != id && seen.insert(j) {
                constraints
                    .push(arrangement.hyperplanes[j].half_space(arrangement.cells[c].sign.0[j]));
            }
        }
    }
    constraints.extend(arrangement.box_constraints());
    Region {
        id,
        representative: arrangement.cells[first].representative.clone(),
        cell_ids,
        basis,
        value,
        constraints,
    }
}

/// Connected components of equal-basis adjacency, ordered by lowest cell id.
pub fn merge_regions(
    arrangement: &Arrangement,
    cell_bases: &[Basis],
    weights: &[ParametricWeight],
) -> (Vec<Region>, Vec<usize>) {
    let n = arrangement.len();
    let mut uf = UnionFind::new(n);
    for e in &arrangement.adjacency {
        if cell_bases[e.a] == cell_bases[e.b] {
            uf.union(e.a, e.b);
        }
    }
    let mut root_to_region = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut cell_to_region = vec![0; n];
    for c in 0..n {
        let r = uf.find(c);
        if root_to_region[r] == usize::MAX {
            root_to_region[r] = members.len();
            members.push(Vec::new());
        }
        cell_to_region[c] = root_to_region[r];
        members[root_to_region[r]].push(c);
    }
    let regions = members
        .into_iter()
        .enumerate()
        .map(|(id, cells)| {
            region_from_cells(id, cells, arrangement, cell_bases, &cell_to_region, weights)
        })
        .collect();
    (regions, cell_to_region)
}

fn singleton_regions(
    arrangement: &Arrangement,
    cell_bases: &[Basis],
    weights: &[ParametricWeight],
) -> (Vec<Region>, Vec<usize>) {
    let cell_to_region: Vec<usize> = (0..arrangement.len()).collect();
    let regions = (0..arrangement.len())
        .map(|c| {
            region_from_cells(
                c,
                vec![c],
                arrangement,
                cell_bases,
                &cell_to_region,
                weights,
            )
        })
        .collect();
    (regions, cell_to_region)
}

impl ParametricSolution {
    /// Region ids whose closure contains `point`.
    pub fn regions_at(&self, point: &[Rational]) -> Vec<usize> {
        let mut ids: Vec<usize> = self
            .arrangement
            .locate(point)
            .into_iter()
            .map(|c| self.cell_to_region[c])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Distinct bases over all regions.
    pub fn distinct_bases(&self) -> BTreeSet<Basis> {
        self.regions.iter().map(|r| r.basis.clone()).collect()
    }
}

/// A minimum basis at `point` and the optimal value there.
pub fn evaluate_solution(
    solution: &ParametricSolution,
    point: &[Rational],
) -> Result<(Basis, Rational)> {
    if !solution.arrangement.bbox.contains(point) {
        return Err(Error::OutsideBox);
    }
    let region = *solution
        .regions_at(point)
        .first()
        .ok_or_else(|| Error::Internal("point not covered by any cell".into()))?;
    let r = &solution.regions[region];
    Ok((r.basis.clone(), r.value.eval(point)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_instance, example_weights, E, F, G, H};
    use crate::rational::{int, ratio};

    fn b(v: &[usize]) -> Basis {
        Basis::new(v.to_vec())
    }

    #[test]
    fn example_regions() {
        let m = example_instance();
        let w = example_weights();
        let bbox = ParameterBox::unbounded(2);
        for alg in [Algorithm::PerCell, Algorithm::Pivot] {
            let sol = solve(&m, &w, &bbox, alg).unwrap();
            assert_eq!(sol.stats.cells, 18);
            assert_eq!(sol.regions.len(), 4);
            let expected: BTreeSet<Basis> = [b(&[E, H]), b(&[G, H]), b(&[F, G]), b(&[E, F])].into();
            assert_eq!(sol.distinct_bases(), expected);
            let (basis, value) = evaluate_solution(&sol, &[ratio(-3, 5), ratio(-3, 5)]).unwrap();
            assert_eq!((basis, value), (b(&[E, H]), ratio(-48, 5)));
            let (basis, value) = evaluate_solution(&sol, &[int(2), int(2)]).unwrap();
            assert_eq!((basis, value), (b(&[E, F]), int(34)));
        }
    }

    #[test]
    fn pivot_matches_per_cell_and_counts_calls() {
        let m = example_instance();
        let w = example_weights();
        let arr = Arc::new(build_arrangement(&m, &w, &ParameterBox::unbounded(2)).unwrap());
        let a = solve_on_arrangement(&m, &w, arr.clone(), Algorithm::Pivot, true).unwrap();
        let p = solve_on_arrangement(&m, &w, arr.clone(), Algorithm::PerCell, true).unwrap();
        assert_eq!(a.cell_bases, p.cell_bases);
        assert!(a.stats.oracle_calls <= (m.len() + arr.len()) as u64);
        assert!(p.stats.oracle_calls > a.stats.oracle_calls);
    }

    #[test]
    fn pivot_swaps_from_start_cell() {
        let m = example_instance();
        let w = example_weights();
        let sol = solve_pivot(&m, &w, &ParameterBox::unbounded(2)).unwrap();
        let arr = &sol.arrangement;
        let start = arr.locate(&[ratio(-3, 5), ratio(-3, 5)])[0];
        assert_eq!(sol.cell_bases[start], b(&[E, H]));
        for &(n, j) in arr.neighbors(start) {
            let HyperplaneSource::Pair(x, y) = arr.hyperplanes[j].source else {
                panic!()
            };
            let pair: BTreeSet<usize> = [x, y].into();
            if pair == [E, G].into() {
                assert_eq!(sol.cell_bases[n], b(&[G, H]));
            }
            if pair == [F, H].into() {
                assert_eq!(sol.cell_bases[n], b(&[E, F]));
            }
        }
    }

    #[test]
    fn single_basis_single_region() {
        let m = MatroidInstance::uniform(3, 3).unwrap();
        let w: Vec<ParametricWeight> = (0..3)
            .map(|i| ParametricWeight::new(int(i), vec![int(i * i), int(-i)]))
            .collect();
        let sol = solve_pivot(&m, &w, &ParameterBox::unbounded(2)).unwrap();
        assert_eq!(sol.regions.len(), 1);
        assert_eq!(sol.regions[0].cell_ids.len(), sol.stats.cells);
    }

    #[test]
    fn one_hyperplane_one_swap() {
        let m = MatroidInstance::uniform(1, 2).unwrap();
        let w = vec![
            ParametricWeight::new(int(0), vec![int(1), int(1)]),
            ParametricWeight::new(int(0), vec![int(0), int(0)]),
        ];
        let sol = solve_pivot(&m, &w, &ParameterBox::unbounded(2)).unwrap();
        assert_eq!(sol.stats.cells, 2);
        assert_eq!(sol.stats.oracle_calls, 1 + 1);
        assert_eq!(sol.regions.len(), 2);
    }

    #[test]
    fn triple_point_value_agrees() {
        let m = example_instance();
        let w = example_weights();
        let sol = solve_pivot(&m, &w, &ParameterBox::unbounded(2)).unwrap();
        let p = [ratio(5, 8), ratio(3, 8)];
        let ids = sol.regions_at(&p);
        assert!(ids.len() >= 2);
        let values: BTreeSet<Rational> =
            ids.iter().map(|&r| sol.regions[r].value.eval(&p)).collect();
        assert_eq!(values.len(), 1);
    }

    #[test]
    fn no_merge_keeps_cells() {
        let m = example_instance();
        let w = example_weights();
        let arr = Arc::new(build_arrangement(&m, &w, &ParameterBox::unbounded(2)).unwrap());
        let sol = solve_on_arrangement(&m, &w, arr, Algorithm::Pivot, false).unwrap();
        assert_eq!(sol.regions.len(), 18);
    }

    #[test]
    fn outside_box_rejected() {
        let m = example_instance();
        let bbox = ParameterBox::finite(vec![int(0), int(0)], vec![int(1), int(1)]).unwrap();
        let sol = solve_pivot(&m, &example_weights(), &bbox).unwrap();
        assert!(matches!(
            evaluate_solution(&sol, &[int(2), int(0)]),
            Err(Error::OutsideBox)
        ));
    }

    #[test]
    fn degenerate_weights_rejected() {
        let m = MatroidInstance::uniform(1, 2).unwrap();
        let w = vec![ParametricWeight::new(int(1), vec![int(1), int(0)]); 2];
        assert!(matches!(
            solve_pivot(&m, &w, &ParameterBox::unbounded(2)),
            Err(Error::Degenerate(_))
        ));
    }
}
