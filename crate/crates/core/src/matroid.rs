//! Matroid instances, parametric weights and the greedy / swap machinery.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::rational::RationalExt;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::{dot, format_rational, Rational};

pub type GroundElement = usize;

/// Affine map `lambda -> a + b . lambda` over the rationals.
///
/// Serves both as the parametric weight of a single element and as the value
/// function of a whole basis (the coefficient-wise sum of its elements).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub a: Rational,
    pub b: Vec<Rational>,
}

pub type ParametricWeight = Affine;
pub type AffineValue = Affine;

impl Affine {
    pub fn new(a: Rational, b: Vec<Rational>) -> Self {
        Self { a, b }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            a: Rational::zero(),
            b: vec![Rational::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        &self.a + dot(&self.b, point)
    }

    pub fn add_assign(&mut self, other: &Affine) {
        self.a += &other.a;
        for (x, y) in self.b.iter_mut().zip(&other.b) {
            *x += y;
        }
    }

    pub fn sub(&self, other: &Affine) -> Affine {
        Affine {
            a: &self.a - &other.a,
            b: self.b.iter().zip(&other.b).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.iter().all(RationalExt::is_zero)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.a))?;
        for (i, c) in self.b.iter().enumerate() {
            if !c.is_zero() {
                write!(f, " + {}*l{}", format_rational(c), i + 1)?;
            }
        }
        Ok(())
    }
}

/// Sorted set of element ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis(Vec<GroundElement>);

impl Basis {
    pub fn new(mut elements: Vec<GroundElement>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Self(elements)
    }

    pub fn elements(&self) -> &[GroundElement] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: GroundElement) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// `self - out + inn`
    pub fn swapped(&self, out: GroundElement, inn: GroundElement) -> Basis {
        let mut v: Vec<_> = self.0.iter().copied().filter(|&x| x != out).collect();
        v.push(inn);
        Basis::new(v)
    }

    pub fn symmetric_difference(&self, other: &Basis) -> BTreeSet<GroundElement> {
        let a: BTreeSet<_> = self.0.iter().copied().collect();
        let b: BTreeSet<_> = other.0.iter().copied().collect();
        a.symmetric_difference(&b).copied().collect()
    }
}

impl FromIterator<GroundElement> for Basis {
    fn from_iter<I: IntoIterator<Item = GroundElement>>(iter: I) -> Self {
        Basis::new(iter.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatroidKind {
    /// Edges of a multigraph on `nodes` vertices; independent = acyclic.
    Graphic {
        nodes: usize,
        edges: Vec<(usize, usize)>,
    },
    /// Every subset of size at most `rank` is independent.
    Uniform { rank: usize, size: usize },
    /// Columns of a rational matrix; independent = linearly independent.
    Linear { columns: Vec<Vec<Rational>> },
}

impl MatroidKind {
    fn size(&self) -> usize {
        match self {
            MatroidKind::Graphic { edges, .. } => edges.len(),
            MatroidKind::Uniform { size, .. } => *size,
            MatroidKind::Linear { columns } => columns.len(),
        }
    }
}

/// A matroid with an optional single-element-deletion mask.
///
/// The instance is immutable; the only shared state is an atomic counter of
/// independence-oracle calls, which solvers read to report statistics.
#[derive(Debug)]
pub struct MatroidInstance {
    kind: Arc<MatroidKind>,
    labels: Arc<Vec<String>>,
    deleted: BTreeSet<GroundElement>,
    rank: usize,
    calls: AtomicU64,
}

impl Clone for MatroidInstance {
    fn clone(&self) -> Self {
        Self {
            kind: Arc::clone(&self.kind),
            labels: Arc::clone(&self.labels),
            deleted: self.deleted.clone(),
            rank: self.rank,
            calls: AtomicU64::new(0),
        }
    }
}

impl PartialEq for MatroidInstance {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.labels == other.labels && self.deleted == other.deleted
    }
}

impl MatroidInstance {
    pub fn new(kind: MatroidKind, labels: Option<Vec<String>>) -> Result<Self> {
        let m = kind.size();
        match &kind {
            MatroidKind::Graphic { nodes, edges } => {
                if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= *nodes || v >= *nodes) {
                    return Err(Error::Input(format!(
                        "edge ({u},{v}) references a node outside 0..{nodes}"
                    )));
                }
                let mut uf = UnionFind::new(*nodes);
                let mut components = *nodes;
                for &(u, v) in edges {
                    if uf.union(u, v) {
                        components -= 1;
                    }
                }
                if components > 1 {
                    return Err(Error::Input("graphic instance is not connected".into()));
                }
            }
            MatroidKind::Uniform { rank, size } => {
                if rank > size {
                    return Err(Error::Input(format!(
                        "uniform rank {rank} exceeds ground set size {size}"
                    )));
                }
            }
            MatroidKind::Linear { columns } => {
                if let Some(first) = columns.first() {
                    if columns.iter().any(|c| c.len() != first.len()) {
                        return Err(Error::Input("linear columns differ in length".into()));
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != m {
                    return Err(Error::Input(format!(
                        "{} labels given for {m} elements",
                        l.len()
                    )));
                }
                let unique: BTreeSet<&String> = l.iter().collect();
                if unique.len() != l.len() {
                    return Err(Error::Input("element labels are not unique".into()));
                }
                l
            }
            None => (0..m).map(|i| format!("e{i}")).collect(),
        };
        let mut inst = Self {
            kind: Arc::new(kind),
            labels: Arc::new(labels),
            deleted: BTreeSet::new(),
            rank: 0,
            calls: AtomicU64::new(0),
        };
        inst.rank = inst.compute_rank();
        Ok(inst)
    }

    pub fn graphic(nodes: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Self::new(MatroidKind::Graphic { nodes, edges }, None)
    }

    pub fn uniform(rank: usize, size: usize) -> Result<Self> {
        Self::new(MatroidKind::Uniform { rank, size }, None)
    }

    pub fn linear(columns: Vec<Vec<Rational>>) -> Result<Self> {
        Self::new(MatroidKind::Linear { columns }, None)
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<Self> {
        let mut inst = Self::new((*self.kind).clone(), Some(labels))?;
        inst.deleted = self.deleted;
        inst.rank = inst.compute_rank();
        Ok(inst)
    }

    pub fn kind(&self) -> &MatroidKind {
        &self.kind
    }

    /// Size of the original ground set (ids stay stable across deletions).
    pub fn ground_size(&self) -> usize {
        self.kind.size()
    }

    pub fn label(&self, e: GroundElement) -> &str {
        &self.labels[e]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<GroundElement> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn deleted(&self) -> &BTreeSet<GroundElement> {
        &self.deleted
    }

    pub fn is_deleted(&self, e: GroundElement) -> bool {
        self.deleted.contains(&e)
    }

    /// Undeleted element ids in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = GroundElement> + '_ {
        (0..self.ground_size()).filter(|e| !self.deleted.contains(e))
    }

    pub fn len(&self) -> usize {
        self.ground_size() - self.deleted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn oracle_calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }

    /// The deletion minor `M_e`; the receiver is left unchanged.
    pub fn delete_element(&self, e: GroundElement) -> Result<MatroidInstance> {
        if e >= self.ground_size() {
            return Err(Error::Input(format!("unknown element id {e}")));
        }
        if self.deleted.contains(&e) {
            return Err(Error::Input(format!("element {e} is already deleted")));
        }
        let mut minor = self.clone();
        minor.deleted.insert(e);
        minor.rank = minor.compute_rank();
        Ok(minor)
    }

    /// Independence oracle; counts one call.
    pub fn is_independent(&self, subset: &[GroundElement]) -> Result<bool> {
        for &e in subset {
            if e >= self.ground_size() {
                return Err(Error::Input(format!("unknown element id {e}")));
            }
            if self.deleted.contains(&e) {
                return Err(Error::Input(format!("element {e} is deleted")));
            }
        }
        self.calls.fetch_add(1, Ordering::Relaxed);
        Ok(self.independent_unchecked(subset))
    }

    fn independent_unchecked(&self, subset: &[GroundElement]) -> bool {
        match &*self.kind {
            MatroidKind::Graphic { nodes, edges } => {
                let mut uf = UnionFind::new(*nodes);
                subset.iter().all(|&e| {
                    let (u, v) = edges[e];
                    uf.union(u, v)
                })
            }
            MatroidKind::Uniform { rank, .. } => {
                let distinct: BTreeSet<_> = subset.iter().collect();
                distinct.len() == subset.len() && subset.len() <= *rank
            }
            MatroidKind::Linear { columns } => {
                let rows: Vec<Vec<Rational>> = subset.iter().map(|&e| columns[e].clone()).collect();
                linalg::rank(&rows) == subset.len()
            }
        }
    }

    /// Greedy augmentation in id order.
    fn compute_rank(&self) -> usize {
        let mut current = Vec::new();
        for e in self.elements() {
            current.push(e);
            if !self.independent_unchecked(&current) {
                current.pop();
            }
        }
        current.len()
    }

    /// Minimum-weight basis at `point`; ties in evaluated weight are broken by
    /// ascending element id. Issues at most `m` oracle calls.
    pub fn greedy_min_basis(&self, weights: &[ParametricWeight], point: &[Rational]) -> Basis {
        let mut order: Vec<(Rational, GroundElement)> = self
            .elements()
            .map(|e| (weights[e].eval(point), e))
            .collect();
        order.sort();
        self.greedy_in_order(order.into_iter().map(|(_, e)| e))
    }

    /// Greedy over an explicit element order.
    pub fn greedy_in_order(&self, order: impl IntoIterator<Item = GroundElement>) -> Basis {
        let mut current: Vec<GroundElement> = Vec::with_capacity(self.rank);
        if self.rank == 0 {
            return Basis::default();
        }
        for e in order {
            current.push(e);
            if !self
                .is_independent(&current)
                .expect("ids come from the instance")
            {
                current.pop();
            }
            if current.len() == self.rank {
                break;
            }
        }
        Basis::new(current)
    }

    /// `basis - out + inn` when that set is independent, else `basis`.
    ///
    /// One oracle call when a test is needed; none when `out` is not in the
    /// basis or `inn` already is.
    pub fn swap_update(&self, basis: &Basis, out: GroundElement, inn: GroundElement) -> Basis {
        if out == inn || !basis.contains(out) || basis.contains(inn) || self.is_deleted(inn) {
            return basis.clone();
        }
        let candidate = basis.swapped(out, inn);
        if self
            .is_independent(candidate.elements())
            .expect("ids come from the instance")
        {
            candidate
        } else {
            basis.clone()
        }
    }
}

/// Coefficient-wise sum of the weights of `basis`.
pub fn basis_value_function(
    basis: &Basis,
    weights: &[ParametricWeight],
    dim: usize,
) -> AffineValue {
    let mut acc = Affine::zero(dim);
    for &e in basis.elements() {
        acc.add_assign(&weights[e]);
    }
    acc
}
