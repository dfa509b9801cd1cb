//! JSON instance and solution documents. Every number is an exact rational
//! string.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::HalfSpace;
use crate::interdiction::InterdictionSolution;
use crate::matroid::{AffineValue, Basis, MatroidInstance, MatroidKind, ParametricWeight};
use crate::param::ParametricSolution;
use crate::rational::{format_rational, parse_rational, ExtRational, ParameterBox, Rational};
use crate::wsd::{CostVector, WeightSetDecomposition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatroidDoc {
    Graphic {
        nodes: usize,
        edges: Vec<(usize, usize)>,
    },
    Uniform {
        rank: usize,
        size: usize,
    },
    Linear {
        columns: Vec<Vec<String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineDoc {
    pub a: String,
    pub b: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalDoc {
    pub lower: Vec<String>,
    pub upper: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub matroid: MatroidDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub p: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<AffineDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub costs: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<IntervalDoc>,
}

/// A validated instance ready for the solvers.
#[derive(Clone, Debug)]
pub struct Instance {
    pub document: InstanceDocument,
    pub matroid: MatroidInstance,
    pub p: usize,
    pub weights: Option<Vec<ParametricWeight>>,
    pub costs: Option<Vec<CostVector>>,
    pub bbox: ParameterBox,
}

impl Instance {
    pub fn weights(&self) -> Result<&[ParametricWeight]> {
        self.weights
            .as_deref()
            .ok_or_else(|| Error::Input("instance has no weights".into()))
    }

    pub fn costs(&self) -> Result<&[CostVector]> {
        self.costs
            .as_deref()
            .ok_or_else(|| Error::Input("instance has no costs".into()))
    }
}

fn rat(text: &str, path: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| Error::Input(format!("{path}: {e}")))
}

fn rats(texts: &[String], path: &str) -> Result<Vec<Rational>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| rat(t, &format!("{path}[{i}]")))
        .collect()
}

/// Parses and validates an instance document.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let document: InstanceDocument = serde_path_to_error::deserialize(de)
        .map_err(|e| Error::Input(format!("{}: {}", e.path(), e.inner())))?;
    build_instance(document)
}

pub fn build_instance(document: InstanceDocument) -> Result<Instance> {
    let p = document.p;
    if p == 0 {
        return Err(Error::Input("p: must be at least 1".into()));
    }
    let kind = match &document.matroid {
        MatroidDoc::Graphic { nodes, edges } => MatroidKind::Graphic {
            nodes: *nodes,
            edges: edges.clone(),
        },
        MatroidDoc::Uniform { rank, size } => MatroidKind::Uniform {
            rank: *rank,
            size: *size,
        },
        MatroidDoc::Linear { columns } => MatroidKind::Linear {
            columns: columns
                .iter()
                .enumerate()
                .map(|(i, c)| rats(c, &format!("matroid.columns[{i}]")))
                .collect::<Result<_>>()?,
        },
    };
    let matroid = MatroidInstance::new(kind, document.labels.clone())?;
    let m = matroid.ground_size();
    let weights = match &document.weights {
        None => None,
        Some(ws) => {
            if ws.len() != m {
                return Err(Error::Input(format!(
                    "weights: {} entries for {m} elements",
                    ws.len()
                )));
            }
            let mut out = Vec::with_capacity(m);
            for (e, w) in ws.iter().enumerate() {
                if w.b.len() != p {
                    return Err(Error::Input(format!(
                        "weights[{e}].b: length {} but p = {p}",
                        w.b.len()
                    )));
                }
                out.push(ParametricWeight::new(
                    rat(&w.a, &format!("weights[{e}].a"))?,
                    rats(&w.b, &format!("weights[{e}].b"))?,
                ));
            }
            Some(out)
        }
    };
    let costs = match &document.costs {
        None => None,
        Some(cs) => {
            if cs.len() != m {
                return Err(Error::Input(format!(
                    "costs: {} entries for {m} elements",
                    cs.len()
                )));
            }
            let mut out = Vec::with_capacity(m);
            for (e, c) in cs.iter().enumerate() {
                if c.len() != p {
                    return Err(Error::Input(format!(
                        "costs[{e}]: length {} but p = {p}",
                        c.len()
                    )));
                }
                out.push(rats(c, &format!("costs[{e}]"))?);
            }
            Some(out)
        }
    };
    let bbox = match &document.interval {
        None => ParameterBox::unbounded(p),
        Some(iv) => {
            if iv.lower.len() != p || iv.upper.len() != p {
                return Err(Error::Input(format!(
                    "interval: bounds must have length p = {p}"
                )));
            }
            let ext = |v: &[String], name: &str| -> Result<Vec<ExtRational>> {
                v.iter()
                    .enumerate()
                    .map(|(i, t)| {
                        ExtRational::parse(t)
                            .map_err(|e| Error::Input(format!("interval.{name}[{i}]: {e}")))
                    })
                    .collect()
            };
            ParameterBox::new(ext(&iv.lower, "lower")?, ext(&iv.upper, "upper")?)?
        }
    };
    Ok(Instance {
        document,
        matroid,
        p,
        weights,
        costs,
        bbox,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolutionKind {
    Parametric,
    Interdiction,
    WeightSet,
}

/// `normal . x <= offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintDoc {
    pub normal: Vec<String>,
    pub offset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub on_boundary: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionDoc {
    pub id: usize,
    pub basis: Vec<String>,
    pub value: AffineDoc,
    pub constraints: Vec<ConstraintDoc>,
    pub representative: Vec<String>,
    pub cell_ids: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartDoc {
    pub cell_id: usize,
    pub constraints: Vec<ConstraintDoc>,
    pub representative: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDoc {
    pub id: usize,
    pub element: String,
    pub value: AffineDoc,
    pub representative: Vec<String>,
    pub parts: Vec<PartDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub id: usize,
    pub image: Vec<String>,
    pub basis: Vec<String>,
    /// Full weight vector summing to one.
    pub representative_weight: Vec<String>,
    pub constraints: Vec<ConstraintDoc>,
    pub cell_ids: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageDoc {
    pub image: Vec<String>,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDocument {
    pub kind: SolutionKind,
    pub p: usize,
    pub labels: Vec<String>,
    /// Box of the decomposed space; for weight sets, the projected simplex's
    /// bounding box.
    pub interval: IntervalDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub regions: Vec<RegionDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pieces: Vec<PieceDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infinite_everywhere: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extreme_points: Vec<ImageDoc>,
    pub stats: BTreeMap<String, u64>,
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn affine_doc(f: &AffineValue) -> AffineDoc {
    AffineDoc {
        a: format_rational(&f.a),
        b: strs(&f.b),
    }
}

fn constraint_doc(c: &HalfSpace, on_boundary: Option<bool>) -> ConstraintDoc {
    ConstraintDoc {
        normal: strs(&c.normal),
        offset: format_rational(&c.offset),
        on_boundary,
    }
}

fn basis_labels(m: &MatroidInstance, b: &Basis) -> Vec<String> {
    b.elements()
        .iter()
        .map(|&e| m.label(e).to_string())
        .collect()
}

fn interval_doc(bbox: &ParameterBox) -> IntervalDoc {
    IntervalDoc {
        lower: bbox.lower.iter().map(ToString::to_string).collect(),
        upper: bbox.upper.iter().map(ToString::to_string).collect(),
    }
}

fn stats(entries: &[(&str, u64)]) -> BTreeMap<String, u64> {
    entries.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

pub fn parametric_document(m: &MatroidInstance, sol: &ParametricSolution) -> SolutionDocument {
    SolutionDocument {
        kind: SolutionKind::Parametric,
        p: sol.arrangement.dim(),
        labels: m.labels().to_vec(),
        interval: interval_doc(&sol.arrangement.bbox),
        regions: sol
            .regions
            .iter()
            .map(|r| RegionDoc {
                id: r.id,
                basis: basis_labels(m, &r.basis),
                value: affine_doc(&r.value),
                constraints: r
                    .constraints
                    .iter()
                    .map(|c| constraint_doc(c, None))
                    .collect(),
                representative: strs(&r.representative),
                cell_ids: r.cell_ids.clone(),
            })
            .collect(),
        pieces: Vec::new(),
        infinite_everywhere: None,
        components: Vec::new(),
        extreme_points: Vec::new(),
        stats: stats(&[
            ("hyperplanes", sol.stats.hyperplanes as u64),
            ("cells", sol.stats.cells as u64),
            ("regions", sol.stats.regions as u64),
            ("oracle_calls", sol.stats.oracle_calls),
        ]),
    }
}

pub fn interdiction_document(m: &MatroidInstance, sol: &InterdictionSolution) -> SolutionDocument {
    SolutionDocument {
        kind: SolutionKind::Interdiction,
        p: sol.arrangement.dim(),
        labels: m.labels().to_vec(),
        interval: interval_doc(&sol.arrangement.bbox),
        regions: Vec::new(),
        pieces: sol
            .pieces
            .iter()
            .map(|pc| PieceDoc {
                id: pc.id,
                element: m.label(pc.most_vital).to_string(),
                value: affine_doc(&pc.value),
                representative: strs(&pc.representative),
                parts: pc
                    .parts
                    .iter()
                    .map(|part| PartDoc {
                        cell_id: part.cell,
                        constraints: part
                            .constraints
                            .iter()
                            .map(|c| constraint_doc(c, None))
                            .collect(),
                        representative: strs(&part.representative),
                    })
                    .collect(),
            })
            .collect(),
        infinite_everywhere: sol.infinite_everywhere.map(|e| m.label(e).to_string()),
        components: Vec::new(),
        extreme_points: Vec::new(),
        stats: stats(&[
            ("hyperplanes", sol.stats.hyperplanes as u64),
            ("cells", sol.stats.cells as u64),
            ("parts", sol.stats.parts as u64),
            ("pieces", sol.stats.pieces as u64),
            ("oracle_calls", sol.stats.oracle_calls),
        ]),
    }
}

pub fn weight_set_document(m: &MatroidInstance, dec: &WeightSetDecomposition) -> SolutionDocument {
    SolutionDocument {
        kind: SolutionKind::WeightSet,
        p: dec.p,
        labels: m.labels().to_vec(),
        interval: interval_doc(&dec.arrangement.bbox),
        regions: Vec::new(),
        pieces: Vec::new(),
        infinite_everywhere: None,
        components: dec
            .components
            .iter()
            .map(|c| ComponentDoc {
                id: c.id,
                image: strs(&c.image.y),
                basis: basis_labels(m, &c.image.witness),
                representative_weight: strs(&c.representative_weight),
                constraints: c
                    .facets
                    .iter()
                    .map(|f| constraint_doc(&f.constraint, Some(f.on_boundary)))
                    .collect(),
                cell_ids: c.cell_ids.clone(),
            })
            .collect(),
        extreme_points: dec
            .extreme_points
            .iter()
            .map(|x| ImageDoc {
                image: strs(&x.y),
                basis: basis_labels(m, &x.witness),
            })
            .collect(),
        stats: stats(&[
            ("hyperplanes", dec.stats.hyperplanes as u64),
            ("dropped_hyperplanes", dec.stats.dropped as u64),
            ("cells", dec.stats.cells as u64),
            ("inside_cells", dec.stats.inside_cells as u64),
            ("components", dec.stats.components as u64),
            ("oracle_calls", dec.stats.oracle_calls),
        ]),
    }
}

/// Canonical JSON: sorted keys, two-space indentation, trailing newline.
pub fn emit_solution(doc: &SolutionDocument) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize");
    let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
    text.push('\n');
    text
}

pub fn write_solution(doc: &SolutionDocument, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, emit_solution(doc))?;
    Ok(())
}

pub fn parse_solution(text: &str) -> Result<SolutionDocument> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de)
        .map_err(|e| Error::Input(format!("{}: {}", e.path(), e.inner())))
}
