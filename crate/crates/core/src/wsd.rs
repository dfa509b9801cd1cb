//! Weight set decomposition for multi-objective matroids under weighted-sum
//! scalarization.
//!
//! Weights `lambda` range over the open simplex `{lambda > 0, sum = 1}`. The
//! last coordinate is eliminated, so the arrangement lives in `R^{p-1}` with
//! coordinates `mu = (lambda_1, ..., lambda_{p-1})`.

use std::collections::BTreeSet;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::geometry::{
    check_assumptions, enumerate_cells, restrict_to_weight_set, separating_hyperplane, Arrangement,
    HalfSpace, Hyperplane, HyperplaneSource, Triviality,
};
use crate::matroid::{Basis, GroundElement, MatroidInstance, ParametricWeight};
use crate::param::pivot_bases;
use crate::rational::{dot, ExtRational, ParameterBox, Rational, RationalExt};

pub type CostVector = Vec<Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImagePoint {
    pub y: Vec<Rational>,
    pub witness: Basis,
}

impl ImagePoint {
    pub fn of(basis: Basis, costs: &[CostVector]) -> ImagePoint {
        let p = costs.first().map_or(0, Vec::len);
        let mut y = vec![Rational::zero(); p];
        for &e in basis.elements() {
            for (yi, c) in y.iter_mut().zip(&costs[e]) {
                *yi += c;
            }
        }
        ImagePoint { y, witness: basis }
    }

    pub fn weighted(&self, lambda: &[Rational]) -> Rational {
        dot(lambda, &self.y)
    }
}

/// One closed facet of a component in projected coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSetFacet {
    pub constraint: HalfSpace,
    /// The facet lies on the boundary of the weight set.
    pub on_boundary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSetComponent {
    pub id: usize,
    pub image: ImagePoint,
    pub cell_ids: Vec<usize>,
    /// Representative in projected coordinates.
    pub representative: Vec<Rational>,
    /// The same point lifted to a full weight vector summing to one.
    pub representative_weight: Vec<Rational>,
    pub facets: Vec<WeightSetFacet>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WsdStats {
    pub hyperplanes: usize,
    pub dropped: usize,
    pub cells: usize,
    pub inside_cells: usize,
    pub components: usize,
    pub oracle_calls: u64,
}

#[derive(Clone, Debug)]
pub struct WeightSetDecomposition {
    pub p: usize,
    pub costs: Vec<CostVector>,
    pub arrangement: Arc<Arrangement>,
    /// Whether each cell lies inside the open simplex.
    pub inside: Vec<bool>,
    pub cell_to_component: Vec<Option<usize>>,
    pub components: Vec<WeightSetComponent>,
    pub extreme_points: Vec<ImagePoint>,
    /// Incomparable pairs whose hyperplane misses the weight set.
    pub dropped: Vec<((GroundElement, GroundElement), Triviality)>,
    pub stats: WsdStats,
}

fn validate_costs(instance: &MatroidInstance, costs: &[CostVector]) -> Result<usize> {
    if costs.len() != instance.ground_size() {
        return Err(Error::Input(format!(
            "{} cost vectors for {} elements",
            costs.len(),
            instance.ground_size()
        )));
    }
    let p = costs.first().map_or(0, Vec::len);
    if p < 2 {
        return Err(Error::Input(
            "cost vectors need at least two objectives".into(),
        ));
    }
    if let Some(e) = costs.iter().position(|c| c.len() != p) {
        return Err(Error::Input(format!(
            "cost vector of element {e} has length {}, expected {p}",
            costs[e].len()
        )));
    }
    Ok(p)
}

fn dominates_weakly(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Hyperplanes `lambda . (c_e - c_f) = 0` in `R^p` for the pairs with
/// componentwise incomparable costs, over all elements in ascending pair order.
pub fn filter_dominated_pairs(costs: &[CostVector]) -> Vec<Hyperplane> {
    let weights: Vec<ParametricWeight> = costs
        .iter()
        .map(|c| ParametricWeight::new(Rational::zero(), c.clone()))
        .collect();
    let mut out = Vec::new();
    for e in 0..costs.len() {
        for f in e + 1..costs.len() {
            if dominates_weakly(&costs[e], &costs[f]) || dominates_weakly(&costs[f], &costs[e]) {
                continue;
            }
            out.extend(separating_hyperplane(e, f, &weights[e], &weights[f]));
        }
    }
    out
}

/// `w_e(mu) = c_{e,p} + sum_i mu_i (c_{e,i} - c_{e,p})`.
pub fn projected_weights(costs: &[CostVector]) -> Vec<ParametricWeight> {
    costs
        .iter()
        .map(|c| {
            let last = c.last().expect("p >= 2");
            ParametricWeight::new(
                last.clone(),
                c[..c.len() - 1].iter().map(|x| x - last).collect(),
            )
        })
        .collect()
}

/// Lifts projected coordinates to a full weight vector.
pub fn lift(mu: &[Rational]) -> Vec<Rational> {
    let mut lambda = mu.to_vec();
    let s: Rational = mu.iter().sum();
    lambda.push(Rational::one() - s);
    lambda
}

/// The hyperplanes `mu_i = 0` and `sum mu = 1` bounding the projected simplex.
pub fn simplex_boundaries(d: usize) -> Vec<Hyperplane> {
    let mut out = Vec::with_capacity(d + 1);
    for i in 0..d {
        let mut n = vec![Rational::zero(); d];
        n[i] = Rational::one();
        out.push(
            Hyperplane::canonical(&n, &Rational::zero(), HyperplaneSource::Boundary(i))
                .unwrap()
                .0,
        );
    }
    let ones = vec![Rational::one(); d];
    out.push(
        Hyperplane::canonical(&ones, &Rational::one(), HyperplaneSource::Boundary(d))
            .unwrap()
            .0,
    );
    out
}

/// Closed half-spaces `-mu_i <= 0` and `sum mu <= 1`.
fn simplex_half_spaces(d: usize) -> Vec<HalfSpace> {
    let mut out = Vec::with_capacity(d + 1);
    for i in 0..d {
        let mut n = vec![Rational::zero(); d];
        n[i] = -Rational::one();
        out.push(HalfSpace {
            normal: n,
            offset: Rational::zero(),
        });
    }
    out.push(HalfSpace {
        normal: vec![Rational::one(); d],
        offset: Rational::one(),
    });
    out
}

fn in_open_simplex(mu: &[Rational]) -> bool {
    mu.iter().all(RationalExt::is_positive) && mu.iter().sum::<Rational>() < Rational::one()
}

/// The restricted incomparable-pair hyperplanes followed by the simplex
/// boundaries, plus the pairs whose hyperplane misses the weight set.
pub fn weight_set_hyperplanes(
    instance: &MatroidInstance,
    costs: &[CostVector],
) -> Result<(
    Vec<Hyperplane>,
    Vec<((GroundElement, GroundElement), Triviality)>,
)> {
    let p = validate_costs(instance, costs)?;
    let d = p - 1;
    // deleted elements never enter a basis, so their pairs are irrelevant
    let hbar: Vec<Hyperplane> = filter_dominated_pairs(costs)
        .into_iter()
        .filter(|h| match h.source {
            HyperplaneSource::Pair(a, b) => !instance.is_deleted(a) && !instance.is_deleted(b),
            _ => true,
        })
        .collect();
    let restricted = restrict_to_weight_set(&hbar);
    let dropped = restricted
        .dropped
        .iter()
        .map(|&(i, t)| match hbar[i].source {
            HyperplaneSource::Pair(a, b) => ((a.min(b), a.max(b)), t),
            _ => unreachable!("weight-set hyperplanes come from pairs"),
        })
        .collect::<Vec<_>>();
    let mut hyperplanes = restricted.hyperplanes;
    hyperplanes.extend(simplex_boundaries(d));
    Ok((hyperplanes, dropped))
}

pub fn decompose_weight_set(
    instance: &MatroidInstance,
    costs: &[CostVector],
) -> Result<WeightSetDecomposition> {
    let p = validate_costs(instance, costs)?;
    if instance.rank() == 0 {
        return Err(Error::Input(
            "weight set decomposition needs rank at least 1".into(),
        ));
    }
    let d = p - 1;
    let (hyperplanes, dropped) = weight_set_hyperplanes(instance, costs)?;
    let report = check_assumptions(&hyperplanes);
    if report.is_degenerate() {
        return Err(Error::Degenerate(Box::new(report)));
    }
    let bbox = ParameterBox::new(
        vec![ExtRational::Finite(Rational::zero()); d],
        vec![ExtRational::Finite(Rational::one()); d],
    )?;
    let arrangement = Arc::new(enumerate_cells(&hyperplanes, &bbox)?);
    let inside: Vec<bool> = arrangement
        .cells
        .iter()
        .map(|c| in_open_simplex(&c.representative))
        .collect();

    let weights = projected_weights(costs);
    let before = instance.oracle_calls();
    let bases = pivot_bases(instance, &weights, &arrangement, Some(&inside));
    let oracle_calls = instance.oracle_calls() - before;
    let images: Vec<Option<ImagePoint>> = bases
        .into_iter()
        .map(|b| b.map(|b| ImagePoint::of(b, costs)))
        .collect();

    let n = arrangement.len();
    let mut uf = UnionFind::new(n);
    for adj in &arrangement.adjacency {
        if let (Some(x), Some(y)) = (&images[adj.a], &images[adj.b]) {
            if x.y == y.y {
                uf.union(adj.a, adj.b);
            }
        }
    }
    let mut root_to_component = vec![usize::MAX; n];
    let mut cell_to_component = vec![None; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for c in 0..n {
        if !inside[c] {
            continue;
        }
        let r = uf.find(c);
        if root_to_component[r] == usize::MAX {
            root_to_component[r] = members.len();
            members.push(Vec::new());
        }
        cell_to_component[c] = Some(root_to_component[r]);
        members[root_to_component[r]].push(c);
    }

    let components: Vec<WeightSetComponent> = members
        .into_iter()
        .enumerate()
        .map(|(id, cell_ids)| {
            let first = cell_ids[0];
            let mut seen = BTreeSet::new();
            let mut facets = Vec::new();
            for &c in &cell_ids {
                for &(nb, j) in arrangement.neighbors(c) {
                    if cell_to_component[nb] != Some(id) && seen.insert(j) {
                        let h = &arrangement.hyperplanes[j];
                        facets.push(WeightSetFacet {
                            constraint: h.half_space(arrangement.cells[c].sign.0[j]),
                            on_boundary: matches!(h.source, HyperplaneSource::Boundary(_)),
                        });
                    }
                }
            }
            for s in simplex_half_spaces(d) {
                if !facets.iter().any(|f| f.constraint == s) {
                    facets.push(WeightSetFacet {
                        constraint: s,
                        on_boundary: true,
                    });
                }
            }
            let representative = arrangement.cells[first].representative.clone();
            WeightSetComponent {
                id,
                image: images[first].clone().expect("inside cells carry a basis"),
                cell_ids,
                representative_weight: lift(&representative),
                representative,
                facets,
            }
        })
        .collect();
    let extreme = extreme_points(&components)?;
    Ok(WeightSetDecomposition {
        p,
        costs: costs.to_vec(),
        stats: WsdStats {
            hyperplanes: arrangement.hyperplanes.len(),
            dropped: dropped.len(),
            cells: n,
            inside_cells: inside.iter().filter(|&&b| b).count(),
            components: components.len(),
            oracle_calls,
        },
        arrangement,
        inside,
        cell_to_component,
        components,
        extreme_points: extreme,
        dropped,
    })
}

/// Distinct component images, each checked to be the strict weighted-sum
/// minimum among all images at its component's representative weight.
pub fn extreme_points(components: &[WeightSetComponent]) -> Result<Vec<ImagePoint>> {
    let mut distinct: Vec<ImagePoint> = Vec::new();
    for c in components {
        if !distinct.iter().any(|x| x.y == c.image.y) {
            distinct.push(c.image.clone());
        }
    }
    for c in components {
        let own = c.image.weighted(&c.representative_weight);
        for other in &distinct {
            if other.y != c.image.y && other.weighted(&c.representative_weight) <= own {
                return Err(Error::Internal(format!(
                    "component {} is not the strict weighted-sum minimum at its representative",
                    c.id
                )));
            }
        }
    }
    Ok(distinct)
}

impl WeightSetDecomposition {
    /// Components whose closure contains the full weight vector `lambda`.
    pub fn components_at(&self, lambda: &[Rational]) -> Vec<usize> {
        if lambda.len() != self.p {
            return Vec::new();
        }
        let mu = &lambda[..self.p - 1];
        let mut ids: Vec<usize> = self
            .arrangement
            .locate(mu)
            .into_iter()
            .filter_map(|c| self.cell_to_component[c])
            .collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{example_costs, example_instance, E, F, G};
    use crate::rational::{int, ratio};

    #[test]
    fn filter_examples() {
        let costs = vec![vec![int(1), int(1)], vec![int(2), int(3)]];
        assert!(filter_dominated_pairs(&costs).is_empty());
        let costs = vec![
            vec![int(6), int(4)],
            vec![int(4), int(2)],
            vec![int(2), int(8)],
        ];
        let h = filter_dominated_pairs(&costs);
        assert_eq!(h.len(), 2);
        assert!(h.iter().all(|h| h.source != HyperplaneSource::Pair(0, 1)));
    }

    #[test]
    fn example_biobjective() {
        let dec = decompose_weight_set(&example_instance(), &example_costs()).unwrap();
        let ys: Vec<Vec<Rational>> = dec.extreme_points.iter().map(|x| x.y.clone()).collect();
        assert_eq!(ys.len(), 2);
        assert!(ys.contains(&vec![int(10), int(6)]));
        assert!(ys.contains(&vec![int(6), int(10)]));
        let at = |l: Rational| {
            let ids = dec.components_at(&lift(&[l]));
            assert_eq!(ids.len(), 1);
            dec.components[ids[0]].image.witness.clone()
        };
        assert_eq!(at(ratio(1, 4)), Basis::new(vec![E, F]));
        assert_eq!(at(ratio(3, 4)), Basis::new(vec![G, F]));
        assert_eq!(dec.components_at(&lift(&[ratio(1, 2)])).len(), 2);
    }

    #[test]
    fn shared_cost_vector_single_component() {
        let costs = vec![vec![int(3), int(5)]; 4];
        let dec = decompose_weight_set(&example_instance(), &costs).unwrap();
        assert_eq!(dec.components.len(), 1);
        assert_eq!(dec.extreme_points.len(), 1);
    }

    #[test]
    fn three_objectives_cover_triangle() {
        let m = MatroidInstance::uniform(2, 4).unwrap();
        let costs = vec![
            vec![int(1), int(5), int(3)],
            vec![int(4), int(1), int(2)],
            vec![int(3), int(3), int(1)],
            vec![int(2), int(4), int(6)],
        ];
        let dec = decompose_weight_set(&m, &costs).unwrap();
        assert!(dec.components.len() >= 2);
        for c in &dec.components {
            assert_eq!(c.representative_weight.iter().sum::<Rational>(), int(1));
        }
    }
}
