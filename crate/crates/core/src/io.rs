//! JSON forms of quivers, path elements, QPs, presentations, words and
//! modules. Rationals travel as `"p/q"` strings; map keys are ids.

use std::collections::{BTreeMap, BTreeSet};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgebraPresentation;
use crate::birs::{ArrowKind, BirsQp};
use crate::coxeter::{Graph, Word};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::modrep::{FdModule, ModuleMap};
use crate::path::{Path, PathElement};
use crate::potential::{FrozenQp, Potential};
use crate::quiver::{Arrow, ArrowId, Quiver, VertexId};
use crate::rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowJson {
    pub id: ArrowId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub src: VertexId,
    pub tgt: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<VertexId>,
    pub arrows: Vec<ArrowJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TermJson {
    Path { coef: String, path: Vec<ArrowId> },
    Vertex { coef: String, vertex: VertexId },
}

pub type PathElementJson = Vec<TermJson>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleJson {
    pub coef: String,
    pub cycle: Vec<ArrowId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QpJson {
    pub quiver: QuiverJson,
    pub potential: Vec<CycleJson>,
    pub frozen_vertices: Vec<VertexId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<BTreeMap<ArrowId, u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub quiver: QuiverJson,
    pub relations: Vec<PathElementJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    pub graph: Graph,
    pub letters: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BirsJson {
    #[serde(flatten)]
    pub qp: QpJson,
    pub kinds: BTreeMap<ArrowId, ArrowKind>,
    pub positions: BTreeMap<VertexId, VertexId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub dims: BTreeMap<VertexId, usize>,
    pub mats: BTreeMap<ArrowId, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<BTreeMap<VertexId, Vec<i64>>>,
}

/// A module map as one matrix per vertex, `dim N_v x dim M_v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub blocks: BTreeMap<VertexId, Vec<Vec<String>>>,
}

/// `modules[0] -> modules[1] -> ...` over one quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub quiver: QuiverJson,
    pub modules: Vec<ModuleJson>,
    pub maps: Vec<MapJson>,
}

/// Parses JSON text, reporting any failure as a schema violation.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::SchemaViolation(e.to_string()))
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("values serialize")
}

pub fn quiver_to_json(q: &Quiver) -> QuiverJson {
    QuiverJson {
        vertices: q.vertices().iter().copied().collect(),
        arrows: q
            .arrows()
            .iter()
            .map(|a| ArrowJson { id: a.id, name: a.name.clone(), src: a.src, tgt: a.tgt, deg: a.deg })
            .collect(),
    }
}

pub fn quiver_from_json(j: &QuiverJson) -> Result<Quiver> {
    if let Some(a) = j.arrows.iter().find(|a| a.deg.is_some_and(|d| d > 1)) {
        return Err(Error::SchemaViolation(format!("arrow {} has degree outside 0|1", a.id)));
    }
    let arrows = j.arrows.iter().map(|a| Arrow { id: a.id, src: a.src, tgt: a.tgt, name: a.name.clone(), deg: a.deg }).collect();
    Quiver::new(j.vertices.iter().copied(), arrows)
}

pub fn element_to_json(x: &PathElement) -> PathElementJson {
    x.terms()
        .map(|(p, c)| {
            let coef = rational::format(c);
            if p.is_stationary() {
                TermJson::Vertex { coef, vertex: p.source() }
            } else {
                TermJson::Path { coef, path: p.arrows().to_vec() }
            }
        })
        .collect()
}

pub fn element_from_json(q: &Quiver, j: &PathElementJson) -> Result<PathElement> {
    let mut x = PathElement::zero();
    for t in j {
        let (coef, p) = match t {
            TermJson::Path { coef, path } => (coef, Path::from_arrows(q, path)?),
            TermJson::Vertex { coef, vertex } => {
                if !q.has_vertex(*vertex) {
                    return Err(Error::UnknownVertex(*vertex));
                }
                (coef, Path::stationary(*vertex))
            }
        };
        x.add_term(p, rational::parse(coef)?);
    }
    Ok(x)
}

pub fn qp_to_json(qp: &FrozenQp) -> QpJson {
    QpJson {
        quiver: quiver_to_json(&qp.quiver),
        potential: qp
            .potential
            .terms()
            .map(|(p, c)| CycleJson { coef: rational::format(c), cycle: p.arrows().to_vec() })
            .collect(),
        frozen_vertices: qp.frozen.frozen_vertices.iter().copied().collect(),
        phi: qp.phi.clone(),
    }
}

pub fn qp_from_json(j: &QpJson) -> Result<FrozenQp> {
    let quiver = quiver_from_json(&j.quiver)?;
    let mut w = PathElement::zero();
    for t in &j.potential {
        w.add_term(Path::from_arrows(&quiver, &t.cycle)?, rational::parse(&t.coef)?);
    }
    let frozen: BTreeSet<VertexId> = j.frozen_vertices.iter().copied().collect();
    FrozenQp::new(quiver, Potential::new(w)?, &frozen, j.phi.clone())
}

pub fn presentation_to_json(p: &AlgebraPresentation) -> PresentationJson {
    PresentationJson { quiver: quiver_to_json(&p.quiver), relations: p.relations.iter().map(element_to_json).collect() }
}

pub fn presentation_from_json(j: &PresentationJson) -> Result<AlgebraPresentation> {
    let quiver = quiver_from_json(&j.quiver)?;
    let relations = j.relations.iter().map(|r| element_from_json(&quiver, r)).collect::<Result<_>>()?;
    AlgebraPresentation::new(quiver, relations)
}

/// Re-validates a deserialized graph.
pub fn graph_checked(g: &Graph) -> Result<Graph> {
    Graph::new(g.vertices.iter().copied(), g.edges.clone())
}

pub fn birs_to_json(b: &BirsQp) -> BirsJson {
    BirsJson { qp: qp_to_json(&b.qp), kinds: b.kinds.clone(), positions: b.positions.clone() }
}

fn matrix_to_json(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row_vec(r).iter().map(rational::format).collect()).collect()
}

fn matrix_from_json(rows: &[Vec<String>], nr: usize, nc: usize, what: &str) -> Result<Matrix> {
    let rows: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|s| rational::parse(s)).collect::<Result<_>>()).collect::<Result<_>>()?;
    if rows.len() != nr || rows.iter().any(|r| r.len() != nc) {
        return Err(Error::SchemaViolation(format!("matrix of {what} is not {nr} x {nc}")));
    }
    Ok(if nr == 0 { Matrix::zeros(0, nc) } else { Matrix::from_rows(rows) })
}

pub fn module_to_json(m: &FdModule) -> ModuleJson {
    let mats = m.mats().iter().map(|(&a, mat)| (a, matrix_to_json(mat))).collect();
    ModuleJson { dims: m.dims().clone(), mats, grading: m.grading().cloned() }
}

pub fn module_from_json(q: &Quiver, j: &ModuleJson) -> Result<FdModule> {
    let mut mats = BTreeMap::new();
    for (&a, rows) in &j.mats {
        let arrow = q.arrow(a)?;
        let (nr, nc) = (j.dims.get(&arrow.src).copied().unwrap_or(0), j.dims.get(&arrow.tgt).copied().unwrap_or(0));
        mats.insert(a, matrix_from_json(rows, nr, nc, &format!("arrow {a}"))?);
    }
    FdModule::new(q.clone(), j.dims.clone(), mats, j.grading.clone())
}

pub fn map_to_json(f: &ModuleMap) -> MapJson {
    MapJson { blocks: f.blocks.iter().map(|(&v, m)| (v, matrix_to_json(m))).collect() }
}

/// Reads a map `M -> N`; missing vertices are zero blocks.
pub fn map_from_json(m: &FdModule, n: &FdModule, j: &MapJson) -> Result<ModuleMap> {
    let mut blocks = BTreeMap::new();
    for &v in m.quiver().vertices() {
        let (nr, nc) = (n.dim_at(v), m.dim_at(v));
        let block = match j.blocks.get(&v) {
            Some(rows) => matrix_from_json(rows, nr, nc, &format!("vertex {v}"))?,
            None => Matrix::zeros(nr, nc),
        };
        blocks.insert(v, block);
    }
    Ok(ModuleMap { blocks })
}

/// Modules and maps of a complex, ready for exactness checking.
pub fn complex_from_json(j: &ComplexJson) -> Result<(Vec<FdModule>, Vec<ModuleMap>)> {
    let q = quiver_from_json(&j.quiver)?;
    let modules: Vec<FdModule> = j.modules.iter().map(|m| module_from_json(&q, m)).collect::<Result<_>>()?;
    if modules.len() != j.maps.len() + 1 {
        return Err(Error::SchemaViolation(format!("{} modules need {} maps", modules.len(), modules.len().saturating_sub(1))));
    }
    let maps = j.maps.iter().enumerate().map(|(k, f)| map_from_json(&modules[k], &modules[k + 1], f)).collect::<Result<_>>()?;
    Ok((modules, maps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn quiver_roundtrip_with_unicode() {
        let q = Quiver::new([1, 2], vec![Arrow::named(7, "α→β", 1, 2), Arrow { deg: Some(1), ..Arrow::new(3, 2, 1) }]).unwrap();
        let text = to_pretty(&quiver_to_json(&q));
        assert_eq!(quiver_from_json(&parse(&text).unwrap()).unwrap(), q);
    }

    #[test]
    fn missing_arrows_is_schema_violation() {
        assert!(matches!(parse::<QuiverJson>(r#"{"vertices":[1]}"#), Err(Error::SchemaViolation(_))));
        let bad: QuiverJson = parse(r#"{"vertices":[1],"arrows":[{"id":1,"src":1,"tgt":1,"deg":2}]}"#).unwrap();
        assert!(matches!(quiver_from_json(&bad), Err(Error::SchemaViolation(_))));
    }

    #[test]
    fn element_terms() {
        let q = Quiver::from_named([1, 2], &[("a", 1, 2)]).unwrap();
        let x = PathElement::from_path(q.word("a").unwrap()).add(&PathElement::term(int(-2), Path::stationary(1)));
        let j = element_to_json(&x);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains(r#""vertex":1"#) && text.contains(r#""coef":"-2/1""#));
        assert_eq!(element_from_json(&q, &parse(&text).unwrap()).unwrap(), x);
    }
}
