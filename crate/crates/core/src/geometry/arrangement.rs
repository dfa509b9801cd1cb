use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::rational::RationalExt;
use itertools::Itertools;
use malachite_base::num::arithmetic::traits::Ceiling;

use super::hyperplane::{check_assumptions, HalfSpace, Hyperplane, Sign, SignVector};
use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::LinearProgram;
use crate::rational::{dot, int, round_dyadic, ParameterBox, Rational};

/// Default half-width of the clipping box used for unbounded sides.
pub fn default_clip_half_width() -> Rational {
    int(1 << 20)
}

/// A full-dimensional face of the arrangement restricted to the box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: usize,
    pub sign: SignVector,
    /// Strictly interior rational point.
    pub representative: Vec<Rational>,
    /// Hyperplanes supporting a facet of the cell's closure, ascending.
    pub facets: Vec<usize>,
}

/// Two cells sharing a facet on `hyperplane`; always `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Adjacency {
    pub a: usize,
    pub b: usize,
    pub hyperplane: usize,
}

#[derive(Clone, Debug, Default)]
pub struct EnumerationOptions {
    /// Half-width for unbounded box sides; chosen automatically when `None`.
    pub clip_half_width: Option<Rational>,
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub hyperplanes: Vec<Hyperplane>,
    pub bbox: ParameterBox,
    pub clip_half_width: Rational,
    /// Largest coordinate magnitude of any vertex of the arrangement together
    /// with the finite box sides.
    pub vertex_extent: Rational,
    pub cells: Vec<Cell>,
    pub adjacency: Vec<Adjacency>,
    neighbors: Vec<Vec<(usize, usize)>>,
    index: HashMap<SignVector, usize>,
}

impl Arrangement {
    pub fn dim(&self) -> usize {
        self.bbox.dim()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Box bounds with unbounded sides clipped.
    pub fn clipped_bounds(&self) -> (Vec<Rational>, Vec<Rational>) {
        self.bbox.clipped(&self.clip_half_width)
    }

    pub fn sign_of(&self, point: &[Rational]) -> SignVector {
        SignVector(self.hyperplanes.iter().map(|h| h.side(point)).collect())
    }

    pub fn cell_by_sign(&self, sign: &SignVector) -> Option<usize> {
        self.index.get(sign).copied()
    }

    /// `(neighbor cell, hyperplane)` pairs of a cell.
    pub fn neighbors(&self, cell: usize) -> &[(usize, usize)] {
        &self.neighbors[cell]
    }

    /// Cells whose closure contains `point`; empty when outside the box.
    pub fn locate(&self, point: &[Rational]) -> Vec<usize> {
        if !self.bbox.contains(point) {
            return Vec::new();
        }
        let sign = self.sign_of(point);
        if let Some(c) = self.cell_by_sign(&sign) {
            return vec![c];
        }
        self.cells
            .iter()
            .filter(|c| c.sign.admits(&sign))
            .map(|c| c.id)
            .collect()
    }

    /// Closed description of a cell by its facet hyperplanes only (box bounds
    /// not included).
    pub fn facet_constraints(&self, cell: usize) -> Vec<HalfSpace> {
        let c = &self.cells[cell];
        c.facets
            .iter()
            .map(|&j| self.hyperplanes[j].half_space(c.sign.0[j]))
            .collect()
    }

    /// Finite sides of the box as closed half-spaces.
    /// The box with unbounded sides cut at `max(16, 2 * vertex extent)`,
    /// rounded up to an integer: large enough to show every vertex.
    pub fn display_bounds(&self) -> (Vec<Rational>, Vec<Rational>) {
        let reach = Rational::from((&self.vertex_extent * int(2)).max(int(16)).ceiling());
        self.bbox.clipped(&reach)
    }

    pub fn box_constraints(&self) -> Vec<HalfSpace> {
        box_half_spaces(&self.bbox)
    }

    /// Sum of `C(q, i)` for `i <= d`.
    pub fn cell_count_bound(&self) -> u128 {
        cell_count_bound(self.hyperplanes.len(), self.dim())
    }

    /// The cell containing the clipped box centroid, else the first cell.
    pub fn start_cell(&self) -> usize {
        let (lo, hi) = self.clipped_bounds();
        let centroid: Vec<Rational> = lo.iter().zip(&hi).map(|(l, h)| (l + h) / int(2)).collect();
        self.locate(&centroid).first().copied().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        if self.cells.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.cells.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for &(n, _) in &self.neighbors[c] {
                if !seen[n] {
                    seen[n] = true;
                    queue.push_back(n);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

pub fn box_half_spaces(bbox: &ParameterBox) -> Vec<HalfSpace> {
    let d = bbox.dim();
    let mut out = Vec::new();
    for k in 0..d {
        let mut unit = vec![Rational::zero(); d];
        unit[k] = Rational::one();
        if let Some(lo) = bbox.lower[k].finite() {
            out.push(HalfSpace {
                normal: unit.iter().map(|c| -c.clone()).collect(),
                offset: -lo.clone(),
            });
        }
        if let Some(hi) = bbox.upper[k].finite() {
            out.push(HalfSpace {
                normal: unit,
                offset: hi.clone(),
            });
        }
    }
    out
}

pub fn cell_count_bound(q: usize, d: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for i in 0..=d.min(q) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((q - i) as u128) / (i as u128 + 1);
    }
    total
}

/// Exact point strictly inside `{x : n.x < o}` for every constraint and
/// strictly inside the box, with unbounded sides clipped at the default
/// half-width.
pub fn cell_interior_point(
    constraints: &[HalfSpace],
    bbox: &ParameterBox,
) -> Result<Vec<Rational>> {
    let (lo, hi) = bbox.clipped(&default_clip_half_width());
    let x = chebyshev_point(constraints, &[], &lo, &hi).ok_or(Error::NoInteriorPoint)?;
    Ok(simplify(&x, |p| {
        strictly_in_box(p, &lo, &hi) && constraints.iter().all(|c| c.strictly_contains(p))
    }))
}

/// A point strictly inside every `strict` constraint and the clipped box
/// while lying on every hyperplane in `equalities`.
pub fn relative_interior_point(
    strict: &[HalfSpace],
    equalities: &[HalfSpace],
    lo: &[Rational],
    hi: &[Rational],
) -> Option<Vec<Rational>> {
    let x = chebyshev_point(strict, equalities, lo, hi)?;
    Some(simplify(&x, |p| {
        strictly_in_box(p, lo, hi)
            && strict.iter().all(|c| c.strictly_contains(p))
            && equalities.iter().all(|c| c.slack(p).is_zero())
    }))
}

/// Maximizes a common margin `t` over strict constraints and the box, with
/// `equalities` held tight. Returns the point when `t > 0`.
fn chebyshev_point(
    strict: &[HalfSpace],
    equalities: &[HalfSpace],
    lo: &[Rational],
    hi: &[Rational],
) -> Option<Vec<Rational>> {
    let d = lo.len();
    let mut objective = vec![Rational::zero(); d + 1];
    objective[d] = Rational::one();
    let mut lp = LinearProgram::new(objective);
    let with_t = |normal: &[Rational], t: i64| {
        let mut row = normal.to_vec();
        row.push(int(t));
        row
    };
    for c in strict {
        lp.add_le(with_t(&c.normal, 1), c.offset.clone());
    }
    for c in equalities {
        lp.add_eq(with_t(&c.normal, 0), c.offset.clone());
    }
    for k in 0..d {
        let mut unit = vec![Rational::zero(); d];
        unit[k] = Rational::one();
        lp.add_le(with_t(&unit, 1), hi[k].clone());
        let neg: Vec<Rational> = unit.iter().map(|c| -c.clone()).collect();
        lp.add_le(with_t(&neg, 1), -lo[k].clone());
    }
    lp.add_bounds(d, int(-1), int(1));
    let (mut point, value) = lp.maximize().optimal()?;
    if !value.is_positive() {
        return None;
    }
    point.pop();
    Some(point)
}

fn strictly_in_box(p: &[Rational], lo: &[Rational], hi: &[Rational]) -> bool {
    p.iter()
        .zip(lo.iter().zip(hi))
        .all(|(x, (l, h))| l < x && x < h)
}

/// Replaces `x` by the coarsest dyadic rounding that still satisfies `ok`.
fn simplify(x: &[Rational], ok: impl Fn(&[Rational]) -> bool) -> Vec<Rational> {
    for bits in 0..=64 {
        let candidate: Vec<Rational> = x.iter().map(|q| round_dyadic(q, bits)).collect();
        if ok(&candidate) {
            return candidate;
        }
    }
    x.to_vec()
}

/// Largest coordinate magnitude over the minimum-norm points of all
/// intersections of the hyperplanes and finite box sides.
fn vertex_extent(hyperplanes: &[Hyperplane], bbox: &ParameterBox) -> Rational {
    let mut rows: Vec<(Vec<Rational>, Rational)> = hyperplanes
        .iter()
        .map(|h| (h.normal.clone(), h.offset.clone()))
        .collect();
    rows.extend(
        box_half_spaces(bbox)
            .into_iter()
            .map(|h| (h.normal, h.offset)),
    );
    let normals: Vec<Vec<Rational>> = rows.iter().map(|r| r.0.clone()).collect();
    let r = linalg::rank(&normals);
    let mut extent = bbox.finite_extent();
    if r == 0 {
        return extent;
    }
    for subset in (0..rows.len()).combinations(r) {
        let n: Vec<Vec<Rational>> = subset.iter().map(|&i| rows[i].0.clone()).collect();
        let o: Vec<Rational> = subset.iter().map(|&i| rows[i].1.clone()).collect();
        // min-norm solution x = N^T y with (N N^T) y = o
        let gram: Vec<Vec<Rational>> = n
            .iter()
            .map(|a| n.iter().map(|b| dot(a, b)).collect())
            .collect();
        let Some(y) = linalg::solve(&gram, &o) else {
            continue;
        };
        for k in 0..bbox.dim() {
            let xk: Rational = n.iter().zip(&y).map(|(row, yi)| &row[k] * yi).sum();
            if xk.abs() > extent {
                extent = xk.abs();
            }
        }
    }
    extent
}

/// Enumerates all cells of the arrangement inside the box interior by
/// breadth-first search over facet crossings.
pub fn enumerate_cells(hyperplanes: &[Hyperplane], bbox: &ParameterBox) -> Result<Arrangement> {
    enumerate_cells_with(hyperplanes, bbox, &EnumerationOptions::default())
}

pub fn enumerate_cells_with(
    hyperplanes: &[Hyperplane],
    bbox: &ParameterBox,
    options: &EnumerationOptions,
) -> Result<Arrangement> {
    let d = bbox.dim();
    if d == 0 {
        return Err(Error::Input("parameter box has dimension 0".into()));
    }
    if let Some(h) = hyperplanes.iter().find(|h| h.dim() != d) {
        return Err(Error::Input(format!(
            "hyperplane of dimension {} in a box of dimension {d}",
            h.dim()
        )));
    }
    let report = check_assumptions(hyperplanes);
    if !report.duplicates.is_empty() {
        return Err(Error::Degenerate(Box::new(report)));
    }
    let extent = vertex_extent(hyperplanes, bbox);
    let clip = match &options.clip_half_width {
        Some(m) => m.clone(),
        None => {
            let bound = &extent * int(2) + int(1);
            let mut m = default_clip_half_width();
            while m <= bound {
                m *= int(2);
            }
            m
        }
    };
    let (lo, hi) = bbox.clipped(&clip);
    let enumerator = Enumerator {
        hyperplanes,
        lo: &lo,
        hi: &hi,
    };
    let start = enumerator.start_point();
    let mut arrangement = Arrangement {
        hyperplanes: hyperplanes.to_vec(),
        bbox: bbox.clone(),
        clip_half_width: clip,
        vertex_extent: extent,
        cells: Vec::new(),
        adjacency: Vec::new(),
        neighbors: Vec::new(),
        index: HashMap::new(),
    };
    let start_sign = enumerator.sign_of(&start);
    arrangement.index.insert(start_sign.clone(), 0);
    arrangement.cells.push(Cell {
        id: 0,
        sign: start_sign,
        representative: start,
        facets: Vec::new(),
    });
    let mut edges = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    let bound = cell_count_bound(hyperplanes.len(), d);
    while let Some(c) = queue.pop_front() {
        let sign = arrangement.cells[c].sign.clone();
        let cons = enumerator.constraints(&sign);
        let facets = enumerator.facets(&cons, &arrangement.cells[c].representative)?;
        let mut facet_ids = Vec::with_capacity(facets.len());
        for (k, point) in facets {
            facet_ids.push(k);
            let next_sign = sign.flip(k);
            let next = match arrangement.index.get(&next_sign) {
                Some(&n) => n,
                None => {
                    let rep = enumerator.cross(&cons, k, &point, &next_sign);
                    let id = arrangement.cells.len();
                    if id as u128 >= bound {
                        return Err(Error::Internal(format!(
                            "cell count exceeds the bound {bound}"
                        )));
                    }
                    arrangement.index.insert(next_sign.clone(), id);
                    arrangement.cells.push(Cell {
                        id,
                        sign: next_sign,
                        representative: rep,
                        facets: Vec::new(),
                    });
                    queue.push_back(id);
                    id
                }
            };
            edges.insert(Adjacency {
                a: c.min(next),
                b: c.max(next),
                hyperplane: k,
            });
        }
        facet_ids.sort_unstable();
        arrangement.cells[c].facets = facet_ids;
    }
    arrangement.neighbors = vec![Vec::new(); arrangement.cells.len()];
    for e in &edges {
        arrangement.neighbors[e.a].push((e.b, e.hyperplane));
        arrangement.neighbors[e.b].push((e.a, e.hyperplane));
    }
    arrangement.adjacency = edges.into_iter().collect();
    Ok(arrangement)
}

struct Enumerator<'a> {
    hyperplanes: &'a [Hyperplane],
    lo: &'a [Rational],
    hi: &'a [Rational],
}

impl Enumerator<'_> {
    fn sign_of(&self, point: &[Rational]) -> SignVector {
        SignVector(self.hyperplanes.iter().map(|h| h.side(point)).collect())
    }

    /// Closed constraints of the cell with the given sign vector.
    fn constraints(&self, sign: &SignVector) -> Vec<HalfSpace> {
        self.hyperplanes
            .iter()
            .zip(&sign.0)
            .map(|(h, &s)| h.half_space(s))
            .collect()
    }

    fn inside(&self, p: &[Rational], sign: &SignVector) -> bool {
        strictly_in_box(p, self.lo, self.hi)
            && self
                .hyperplanes
                .iter()
                .zip(&sign.0)
                .all(|(h, &s)| h.side(p) == s)
    }

    /// The clipped centroid, nudged off every hyperplane through it.
    fn start_point(&self) -> Vec<Rational> {
        let d = self.lo.len();
        let c: Vec<Rational> = self
            .lo
            .iter()
            .zip(self.hi)
            .map(|(l, h)| (l + h) / int(2))
            .collect();
        let on: Vec<&Hyperplane> = self
            .hyperplanes
            .iter()
            .filter(|h| h.side(&c) == Sign::On)
            .collect();
        let point = if on.is_empty() {
            c
        } else {
            // a moment-curve direction avoids every normal for all but finitely many t
            let dir = (2i64..)
                .map(|t| (0..d).map(|k| int(t.pow(k as u32))).collect::<Vec<_>>())
                .find(|v| on.iter().all(|h| !dot(&h.normal, v).is_zero()))
                .unwrap();
            let mut step = Rational::one();
            for h in self.hyperplanes {
                let r = dot(&h.normal, &dir).abs();
                let g = h.value(&c).abs();
                if !g.is_zero() && !r.is_zero() && g.clone() / &r < step {
                    step = g / r;
                }
            }
            for k in 0..d {
                let room = (&self.hi[k] - &c[k]).min(&c[k] - &self.lo[k]) / dir[k].abs();
                if room < step {
                    step = room;
                }
            }
            step /= int(2);
            c.iter().zip(&dir).map(|(x, v)| x + &step * v).collect()
        };
        let sign = self.sign_of(&point);
        simplify(&point, |p| self.inside(p, &sign))
    }

    /// Facets of the cell given by `cons`, each with a relative-interior point.
    ///
    /// Redundancy of each constraint is decided by an LP over the facets found
    /// so far; a non-redundant constraint yields a ray from `x0` whose first
    /// exit hyperplane is a new facet.
    fn facets(&self, cons: &[HalfSpace], x0: &[Rational]) -> Result<Vec<(usize, Vec<Rational>)>> {
        let q = cons.len();
        let d = x0.len();
        let slack0: Vec<Rational> = cons.iter().map(|c| c.slack(x0)).collect();
        debug_assert!(slack0.iter().all(RationalExt::is_positive));
        let mut is_facet = vec![false; q];
        let mut not_facet = vec![false; q];
        let mut found = Vec::new();
        for j in 0..q {
            while !is_facet[j] && !not_facet[j] {
                let mut lp = LinearProgram::new(cons[j].normal.clone());
                for i in (0..q).filter(|&i| is_facet[i]) {
                    lp.add_le(cons[i].normal.clone(), cons[i].offset.clone());
                }
                for k in 0..d {
                    lp.add_bounds(k, self.lo[k].clone(), self.hi[k].clone());
                }
                lp.add_le(cons[j].normal.clone(), &cons[j].offset + Rational::one());
                let (y, value) = lp
                    .maximize()
                    .optimal()
                    .ok_or_else(|| Error::Internal("relaxed cell program infeasible".into()))?;
                if value <= cons[j].offset {
                    not_facet[j] = true;
                    break;
                }
                let dir: Vec<Rational> = y.iter().zip(x0).map(|(a, b)| a - b).collect();
                let mut best: Option<Rational> = None;
                let mut hits = Vec::new();
                for i in 0..q {
                    let r = dot(&cons[i].normal, &dir);
                    if !r.is_positive() {
                        continue;
                    }
                    let t = &slack0[i] / r;
                    match &best {
                        Some(b) if t > *b => {}
                        Some(b) if t == *b => hits.push(i),
                        _ => {
                            best = Some(t);
                            hits = vec![i];
                        }
                    }
                }
                let t = best.expect("constraint j itself is hit");
                if let [k] = hits[..] {
                    let p: Vec<Rational> = x0.iter().zip(&dir).map(|(x, v)| x + &t * v).collect();
                    is_facet[k] = true;
                    found.push((k, p));
                    continue;
                }
                let mut progressed = false;
                for &k in &hits {
                    if is_facet[k] || not_facet[k] {
                        continue;
                    }
                    let others: Vec<HalfSpace> = (0..q)
                        .filter(|&i| i != k)
                        .map(|i| cons[i].clone())
                        .collect();
                    match chebyshev_point(&others, &cons[k..=k], self.lo, self.hi) {
                        Some(p) => {
                            is_facet[k] = true;
                            found.push((k, p));
                            progressed = true;
                        }
                        None => not_facet[k] = true,
                    }
                }
                if !progressed && !is_facet[j] && !not_facet[j] {
                    return Err(Error::Internal("ray shooting found no facet".into()));
                }
            }
        }
        Ok(found)
    }

    /// A point just across facet `k` from its relative-interior point `p`.
    fn cross(
        &self,
        cons: &[HalfSpace],
        k: usize,
        p: &[Rational],
        next_sign: &SignVector,
    ) -> Vec<Rational> {
        let dir = &cons[k].normal;
        let mut step = Rational::one();
        for (i, c) in cons.iter().enumerate() {
            if i == k {
                continue;
            }
            let r = dot(&c.normal, dir);
            if r.is_positive() {
                let s = c.slack(p) / r;
                if s < step {
                    step = s;
                }
            }
        }
        for (l, v) in dir.iter().enumerate() {
            let room = if v.is_positive() {
                (&self.hi[l] - &p[l]) / v
            } else if v.is_negative() {
                (&p[l] - &self.lo[l]) / -v
            } else {
                continue;
            };
            if room < step {
                step = room;
            }
        }
        step /= int(2);
        let point: Vec<Rational> = p.iter().zip(dir).map(|(x, v)| x + &step * v).collect();
        debug_assert!(self.inside(&point, next_sign));
        simplify(&point, |x| self.inside(x, next_sign))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_weights, E, F, G, H};
    use crate::geometry::{build_separating_hyperplanes, HyperplaneSource};
    use crate::rational::ratio;

    fn line(a: i64, b: i64, c: i64) -> Hyperplane {
        Hyperplane::canonical(&[int(a), int(b)], &int(c), HyperplaneSource::None)
            .unwrap()
            .0
    }

    fn check_invariants(arr: &Arrangement) {
        assert!(arr.len() as u128 <= arr.cell_count_bound());
        assert!(arr.is_connected());
        let signs: BTreeSet<_> = arr.cells.iter().map(|c| c.sign.clone()).collect();
        assert_eq!(signs.len(), arr.len());
        for c in &arr.cells {
            assert_eq!(arr.sign_of(&c.representative), c.sign);
            assert!(!c.sign.0.contains(&Sign::On));
        }
        for e in &arr.adjacency {
            assert_eq!(
                arr.cells[e.a].sign.differing(&arr.cells[e.b].sign),
                vec![e.hyperplane]
            );
            assert!(arr.cells[e.a].facets.contains(&e.hyperplane));
            assert!(arr.cells[e.b].facets.contains(&e.hyperplane));
        }
        let facet_total: usize = arr.cells.iter().map(|c| c.facets.len()).sum();
        assert_eq!(facet_total, 2 * arr.adjacency.len());
    }

    #[test]
    fn one_line() {
        let arr = enumerate_cells(&[line(1, 1, 0)], &ParameterBox::unbounded(2)).unwrap();
        assert_eq!((arr.len(), arr.adjacency.len()), (2, 1));
        check_invariants(&arr);
    }

    #[test]
    fn parallel_lines() {
        let arr =
            enumerate_cells(&[line(1, 0, 0), line(1, 0, 3)], &ParameterBox::unbounded(2)).unwrap();
        assert_eq!((arr.len(), arr.adjacency.len()), (3, 2));
        check_invariants(&arr);
    }

    #[test]
    fn no_hyperplanes() {
        let arr = enumerate_cells(&[], &ParameterBox::unbounded(3)).unwrap();
        assert_eq!(arr.len(), 1);
        assert!(arr.adjacency.is_empty());
    }

    #[test]
    fn example_has_18_cells() {
        let sep = build_separating_hyperplanes(&example_weights(), &[E, F, G, H]);
        let arr = enumerate_cells(&sep.hyperplanes, &ParameterBox::unbounded(2)).unwrap();
        assert_eq!(arr.len(), 18);
        assert_eq!(arr.cell_count_bound(), 22);
        check_invariants(&arr);
        let at = arr.locate(&[ratio(5, 8), ratio(3, 8)]);
        assert_eq!(at.len(), 6);
    }

    #[test]
    fn box_cuts_cells() {
        let sep = build_separating_hyperplanes(&example_weights(), &[E, F, G, H]);
        let bbox = ParameterBox::finite(vec![int(0), int(0)], vec![int(1), int(1)]).unwrap();
        let arr = enumerate_cells(&sep.hyperplanes, &bbox).unwrap();
        check_invariants(&arr);
        for c in &arr.cells {
            assert!(bbox.contains(&c.representative));
        }
        assert!(arr.len() < 18);
    }

    #[test]
    fn duplicate_rejected() {
        let r = enumerate_cells(&[line(1, 0, 0), line(2, 0, 0)], &ParameterBox::unbounded(2));
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }

    #[test]
    fn general_position_three_dims() {
        let planes: Vec<Hyperplane> = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 1, 1]]
            .iter()
            .map(|v| {
                Hyperplane::canonical(
                    &[int(v[0]), int(v[1]), int(v[2])],
                    &int(v[3]),
                    HyperplaneSource::None,
                )
                .unwrap()
                .0
            })
            .collect();
        let arr = enumerate_cells(&planes, &ParameterBox::unbounded(3)).unwrap();
        // four planes in general position in R^3: 1 + 4 + 6 + 4
        assert_eq!(arr.len(), 15);
        check_invariants(&arr);
    }

    #[test]
    fn interior_points() {
        let bbox = ParameterBox::unbounded(2);
        let pos = vec![
            HalfSpace {
                normal: vec![int(-1), int(0)],
                offset: int(0),
            },
            HalfSpace {
                normal: vec![int(0), int(-1)],
                offset: int(0),
            },
        ];
        let x = cell_interior_point(&pos, &bbox).unwrap();
        assert!(x.iter().all(|c| c.is_positive()));
        let empty = vec![
            HalfSpace {
                normal: vec![int(-1), int(0)],
                offset: int(0),
            },
            HalfSpace {
                normal: vec![int(1), int(0)],
                offset: int(0),
            },
        ];
        assert!(matches!(
            cell_interior_point(&empty, &bbox),
            Err(Error::NoInteriorPoint)
        ));
    }

    #[test]
    fn count_bound() {
        assert_eq!(cell_count_bound(6, 2), 22);
        assert_eq!(cell_count_bound(1, 3), 2);
    }
}
