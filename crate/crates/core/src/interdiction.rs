//! Most vital element: the element whose deletion raises the minimum basis
//! weight the most, as a function of the parameter.

use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::geometry::{relative_interior_point, Arrangement, HalfSpace};
use crate::matroid::{AffineValue, GroundElement, MatroidInstance, ParametricWeight};
use crate::param::{
    build_arrangement, solve_on_arrangement, validate_weights, Algorithm, ParametricSolution,
};
use crate::rational::{ExtRational, ParameterBox, Rational, RationalExt};

/// What to do when deleting some element lowers the rank.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RankDropPolicy {
    /// Fail with [`Error::RankDrop`].
    Strict,
    /// Report the lowest such element as most vital everywhere with value +inf.
    #[default]
    Permissive,
}

#[derive(Clone, Debug)]
pub enum DeletionValue {
    /// `M \ e` has lower rank, so no basis of the original size survives.
    Infinite,
    Finite(ParametricSolution),
}

/// `y_e`: the optimal value of `M \ e` over the box.
#[derive(Clone, Debug)]
pub struct DeletionValueFunction {
    pub element: GroundElement,
    pub value: DeletionValue,
}

impl DeletionValueFunction {
    pub fn is_infinite(&self) -> bool {
        matches!(self.value, DeletionValue::Infinite)
    }

    /// The affine piece of `y_e` on a cell of the shared arrangement.
    pub fn on_cell(&self, cell: usize) -> Option<&AffineValue> {
        match &self.value {
            DeletionValue::Infinite => None,
            DeletionValue::Finite(s) => Some(&s.regions[s.cell_to_region[cell]].value),
        }
    }
}

/// A convex part of a piece: a sub-polytope of one arrangement cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPart {
    pub cell: usize,
    /// Closed description, including the finite box sides.
    pub constraints: Vec<HalfSpace>,
    pub representative: Vec<Rational>,
}

/// A maximal connected set on which one element is most vital with one
/// affine value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterdictionPiece {
    pub id: usize,
    pub most_vital: GroundElement,
    pub value: AffineValue,
    pub representative: Vec<Rational>,
    pub parts: Vec<ConvexPart>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InterdictionStats {
    pub hyperplanes: usize,
    pub cells: usize,
    pub parts: usize,
    pub pieces: usize,
    pub oracle_calls: u64,
}

#[derive(Clone, Debug)]
pub struct InterdictionSolution {
    pub arrangement: Arc<Arrangement>,
    pub deletion_values: Vec<DeletionValueFunction>,
    /// Set when some deletion drops the rank; `pieces` is then empty.
    pub infinite_everywhere: Option<GroundElement>,
    pub pieces: Vec<InterdictionPiece>,
    /// For each cell, `(piece, part index)` of the parts inside it.
    pub cell_parts: Vec<Vec<(usize, usize)>>,
    pub stats: InterdictionStats,
}

/// Solves `M \ e` for every undeleted element on one shared arrangement.
pub fn deletion_value_functions(
    instance: &MatroidInstance,
    weights: &[ParametricWeight],
    arrangement: &Arc<Arrangement>,
) -> Result<Vec<DeletionValueFunction>> {
    let rank = instance.rank();
    instance
        .elements()
        .map(|e| {
            let minor = instance.delete_element(e)?;
            let value = if minor.rank() < rank {
                DeletionValue::Infinite
            } else {
                DeletionValue::Finite(solve_on_arrangement(
                    &minor,
                    weights,
                    Arc::clone(arrangement),
                    Algorithm::Pivot,
                    true,
                )?)
            };
            Ok(DeletionValueFunction { element: e, value })
        })
        .collect()
}

pub fn solve_interdiction(
    instance: &MatroidInstance,
    weights: &[ParametricWeight],
    bbox: &ParameterBox,
    policy: RankDropPolicy,
) -> Result<InterdictionSolution> {
    validate_weights(instance, weights, bbox.dim())?;
    let arrangement = Arc::new(build_arrangement(instance, weights, bbox)?);
    solve_interdiction_on(instance, weights, arrangement, policy)
}

/// Same as [`solve_interdiction`] on a prebuilt arrangement of all pairs.
pub fn solve_interdiction_on(
    instance: &MatroidInstance,
    weights: &[ParametricWeight],
    arrangement: Arc<Arrangement>,
    policy: RankDropPolicy,
) -> Result<InterdictionSolution> {
    let before = instance.oracle_calls();
    let deletion_values = deletion_value_functions(instance, weights, &arrangement)?;
    let mut oracle_calls = instance.oracle_calls() - before;
    for d in &deletion_values {
        if let DeletionValue::Finite(s) = &d.value {
            oracle_calls += s.stats.oracle_calls;
        }
    }
    let mut stats = InterdictionStats {
        hyperplanes: arrangement.hyperplanes.len(),
        cells: arrangement.len(),
        oracle_calls,
        ..Default::default()
    };
    let infinite = deletion_values
        .iter()
        .find(|d| d.is_infinite())
        .map(|d| d.element);
    if let Some(e) = infinite {
        if policy == RankDropPolicy::Strict {
            return Err(Error::RankDrop(e));
        }
        return Ok(InterdictionSolution {
            cell_parts: vec![Vec::new(); arrangement.len()],
            arrangement,
            deletion_values,
            infinite_everywhere: Some(e),
            pieces: Vec::new(),
            stats,
        });
    }
    if deletion_values.is_empty() {
        return Err(Error::Input(
            "interdiction needs at least one element".into(),
        ));
    }

    let (lo, hi) = arrangement.clipped_bounds();
    let box_constraints = arrangement.box_constraints();
    // (element, value, part)
    let mut parts: Vec<(GroundElement, AffineValue, ConvexPart)> = Vec::new();
    let mut cell_part_ids: Vec<Vec<usize>> = vec![Vec::new(); arrangement.len()];
    for cell in &arrangement.cells {
        let mut groups: Vec<(GroundElement, &AffineValue)> = Vec::new();
        for d in &deletion_values {
            let f = d.on_cell(cell.id).expect("finite");
            if !groups.iter().any(|(_, g)| *g == f) {
                groups.push((d.element, f));
            }
        }
        let facets = arrangement.facet_constraints(cell.id);
        if groups.len() == 1 {
            let (e, f) = groups[0];
            let mut constraints = facets;
            constraints.extend(box_constraints.iter().cloned());
            cell_part_ids[cell.id].push(parts.len());
            parts.push((
                e,
                f.clone(),
                ConvexPart {
                    cell: cell.id,
                    constraints,
                    representative: cell.representative.clone(),
                },
            ));
            continue;
        }
        for (gi, &(e, f)) in groups.iter().enumerate() {
            // f_h - f < 0 for every other group h
            let mut envelope = Vec::new();
            let mut empty = false;
            for (hi_, &(_, h)) in groups.iter().enumerate() {
                if hi_ == gi {
                    continue;
                }
                let diff = h.sub(f);
                let c = HalfSpace {
                    normal: diff.b.clone(),
                    offset: -diff.a.clone(),
                };
                if c.normal.iter().all(RationalExt::is_zero) {
                    if !c.offset.is_positive() {
                        empty = true;
                        break;
                    }
                    continue;
                }
                envelope.push(c);
            }
            if empty {
                continue;
            }
            let mut strict = facets.clone();
            strict.extend(envelope.iter().cloned());
            let Some(rep) = relative_interior_point(&strict, &[], &lo, &hi) else {
                continue;
            };
            let mut constraints = strict;
            constraints.extend(box_constraints.iter().cloned());
            cell_part_ids[cell.id].push(parts.len());
            parts.push((
                e,
                f.clone(),
                ConvexPart {
                    cell: cell.id,
                    constraints,
                    representative: rep,
                },
            ));
        }
    }

    let mut uf = UnionFind::new(parts.len());
    for adj in &arrangement.adjacency {
        let h = &arrangement.hyperplanes[adj.hyperplane];
        let eq = h.half_space(arrangement.cells[adj.a].sign.0[adj.hyperplane]);
        for &p in &cell_part_ids[adj.a] {
            for &q in &cell_part_ids[adj.b] {
                if parts[p].0 != parts[q].0 || parts[p].1 != parts[q].1 || uf.equiv(p, q) {
                    continue;
                }
                let strict: Vec<HalfSpace> = parts[p]
                    .2
                    .constraints
                    .iter()
                    .chain(&parts[q].2.constraints)
                    .filter(|c| !same_plane(c, &eq))
                    .cloned()
                    .collect();
                if relative_interior_point(&strict, std::slice::from_ref(&eq), &lo, &hi).is_some() {
                    uf.union(p, q);
                }
            }
        }
    }

    let mut root_to_piece = vec![usize::MAX; parts.len()];
    let mut pieces: Vec<InterdictionPiece> = Vec::new();
    let mut cell_parts = vec![Vec::new(); arrangement.len()];
    for (i, (e, f, part)) in parts.into_iter().enumerate() {
        let r = uf.find(i);
        if root_to_piece[r] == usize::MAX {
            root_to_piece[r] = pieces.len();
            pieces.push(InterdictionPiece {
                id: pieces.len(),
                most_vital: e,
                value: f,
                representative: part.representative.clone(),
                parts: Vec::new(),
            });
        }
        let piece = &mut pieces[root_to_piece[r]];
        cell_parts[part.cell].push((piece.id, piece.parts.len()));
        piece.parts.push(part);
    }
    stats.parts = pieces.iter().map(|p| p.parts.len()).sum();
    stats.pieces = pieces.len();
    Ok(InterdictionSolution {
        arrangement,
        deletion_values,
        infinite_everywhere: None,
        pieces,
        cell_parts,
        stats,
    })
}

fn same_plane(a: &HalfSpace, b: &HalfSpace) -> bool {
    let neg = |v: &[Rational]| v.iter().map(|x| -x.clone()).collect::<Vec<_>>();
    (a.normal == b.normal && a.offset == b.offset)
        || (a.normal == neg(&b.normal) && a.offset == -b.offset.clone())
}

/// The most vital element at `point` and `max_e y_e(point)`.
pub fn evaluate_interdiction(
    solution: &InterdictionSolution,
    point: &[Rational],
) -> Result<(GroundElement, ExtRational)> {
    if !solution.arrangement.bbox.contains(point) {
        return Err(Error::OutsideBox);
    }
    if let Some(e) = solution.infinite_everywhere {
        return Ok((e, ExtRational::PosInfinity));
    }
    for c in solution.arrangement.locate(point) {
        for &(piece, part) in &solution.cell_parts[c] {
            let p = &solution.pieces[piece];
            if p.parts[part].constraints.iter().all(|h| h.contains(point)) {
                return Ok((p.most_vital, ExtRational::Finite(p.value.eval(point))));
            }
        }
    }
    Err(Error::Internal("point not covered by any piece".into()))
}
