//! Finite quivers, frozen vertex data and full subquivers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type VertexId = i64;
pub type ArrowId = i64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: ArrowId,
    pub src: VertexId,
    pub tgt: VertexId,
    pub name: Option<String>,
    /// Degree label carried by the JSON form; the grading used by the
    /// algorithms lives on [`crate::potential::FrozenQp`].
    pub deg: Option<u8>,
}

impl Arrow {
    pub fn new(id: ArrowId, src: VertexId, tgt: VertexId) -> Self {
        Self { id, src, tgt, name: None, deg: None }
    }

    pub fn named(id: ArrowId, name: &str, src: VertexId, tgt: VertexId) -> Self {
        Self { id, src, tgt, name: Some(name.to_owned()), deg: None }
    }

    /// Display label: the name if present, the numeric id otherwise.
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.id.to_string())
    }
}

/// A finite directed multigraph. Loops and parallel arrows are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: BTreeSet<VertexId>,
    arrows: Vec<Arrow>,
    index: BTreeMap<ArrowId, usize>,
}

impl Quiver {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>, arrows: Vec<Arrow>) -> Result<Self> {
        let vertices: BTreeSet<VertexId> = vertices.into_iter().collect();
        let mut index = BTreeMap::new();
        for (k, a) in arrows.iter().enumerate() {
            for v in [a.src, a.tgt] {
                if !vertices.contains(&v) {
                    return Err(Error::DanglingArrow { arrow: a.id, vertex: v });
                }
            }
            if index.insert(a.id, k).is_some() {
                return Err(Error::DuplicateArrowId(a.id));
            }
        }
        Ok(Self { vertices, arrows, index })
    }

    /// Shorthand for tests and fixtures: `(name, src, tgt)` triples, ids
    /// assigned 1, 2, ... in order.
    pub fn from_named(vertices: impl IntoIterator<Item = VertexId>, arrows: &[(&str, VertexId, VertexId)]) -> Result<Self> {
        let arrows = arrows
            .iter()
            .enumerate()
            .map(|(k, &(n, s, t))| Arrow::named(k as ArrowId + 1, n, s, t))
            .collect();
        Self::new(vertices, arrows)
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn arrow(&self, id: ArrowId) -> Result<&Arrow> {
        self.index.get(&id).map(|&k| &self.arrows[k]).ok_or(Error::UnknownArrow(id))
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.name.as_deref() == Some(name))
    }

    /// Id of the arrow with the given name. Panics if absent; meant for
    /// fixtures whose names are known.
    pub fn id_of(&self, name: &str) -> ArrowId {
        self.arrow_by_name(name).unwrap_or_else(|| panic!("no arrow named {name}")).id
    }

    pub fn arrows_from(&self, v: VertexId) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.src == v)
    }

    pub fn arrows_into(&self, v: VertexId) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.tgt == v)
    }

    pub fn max_arrow_id(&self) -> ArrowId {
        self.arrows.iter().map(|a| a.id).max().unwrap_or(0)
    }

    fn check_vertices(&self, set: &BTreeSet<VertexId>) -> Result<()> {
        match set.iter().find(|v| !self.vertices.contains(v)) {
            Some(&v) => Err(Error::UnknownVertex(v)),
            None => Ok(()),
        }
    }

    /// Freezes the vertex set `frozen`; the frozen arrows are exactly those
    /// with both endpoints frozen.
    pub fn freeze(&self, frozen: &BTreeSet<VertexId>) -> Result<FrozenData> {
        self.check_vertices(frozen)?;
        Ok(FrozenData::compute(self, frozen.clone()))
    }

    /// Deletes `delete` and every arrow touching it.
    pub fn full_subquiver(&self, delete: &BTreeSet<VertexId>) -> Result<Quiver> {
        self.check_vertices(delete)?;
        let vertices = self.vertices.difference(delete).copied();
        let arrows = self
            .arrows
            .iter()
            .filter(|a| !delete.contains(&a.src) && !delete.contains(&a.tgt))
            .cloned()
            .collect();
        Quiver::new(vertices, arrows)
    }

    /// Keeps only the arrows satisfying `keep`; vertices are unchanged.
    pub fn filter_arrows(&self, keep: impl Fn(&Arrow) -> bool) -> Quiver {
        let arrows = self.arrows.iter().filter(|a| keep(a)).cloned().collect();
        Quiver::new(self.vertices.iter().copied(), arrows).expect("subquiver of a valid quiver")
    }

    /// Returns `true` if the quiver has an oriented cycle (loops included).
    pub fn has_oriented_cycle(&self) -> bool {
        let mut indeg: BTreeMap<VertexId, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for a in &self.arrows {
            *indeg.get_mut(&a.tgt).unwrap() += 1;
        }
        let mut ready: Vec<VertexId> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for a in self.arrows_from(v) {
                let d = indeg.get_mut(&a.tgt).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.push(a.tgt);
                }
            }
        }
        seen != self.vertices.len()
    }

    /// Copy of the quiver with arrow degree labels taken from `deg`.
    pub fn with_degrees(&self, deg: &BTreeMap<ArrowId, u8>) -> Quiver {
        let mut q = self.clone();
        for a in &mut q.arrows {
            a.deg = deg.get(&a.id).copied();
        }
        q
    }

    /// The degree labels, if every arrow carries one.
    pub fn degree_map(&self) -> Option<BTreeMap<ArrowId, u8>> {
        self.arrows.iter().map(|a| a.deg.map(|d| (a.id, d))).collect()
    }

    /// Copy of the quiver with `extra` appended.
    pub fn with_arrows(&self, extra: Vec<Arrow>) -> Result<Quiver> {
        let mut arrows = self.arrows.clone();
        arrows.extend(extra);
        Quiver::new(self.vertices.iter().copied(), arrows)
    }

    /// Sorted multiset of `(src, tgt)` pairs.
    pub fn endpoint_multiset(&self) -> Vec<(VertexId, VertexId)> {
        let mut v: Vec<_> = self.arrows.iter().map(|a| (a.src, a.tgt)).collect();
        v.sort_unstable();
        v
    }

    /// Deterministic Graphviz rendering. Frozen vertices are boxes; edge
    /// labels read `name|deg` when a degree is known.
    pub fn to_dot(&self, frozen: Option<&FrozenData>, degrees: Option<&BTreeMap<ArrowId, u8>>) -> String {
        let mut out = String::from("digraph Q {\n");
        for v in &self.vertices {
            let shape = match frozen {
                Some(f) if f.frozen_vertices.contains(v) => "box",
                _ => "circle",
            };
            let _ = writeln!(out, "  {v} [shape={shape}];");
        }
        for a in &self.arrows {
            let deg = degrees.and_then(|d| d.get(&a.id).copied()).or(a.deg);
            let label = match deg {
                Some(d) => format!("{}|{}", a.label(), d),
                None => a.label(),
            };
            let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", a.src, a.tgt, label.replace('"', "\\\""));
        }
        out.push_str("}\n");
        out
    }
}

/// Frozen vertices `F0` and the induced frozen arrows `F1`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FrozenData {
    pub frozen_vertices: BTreeSet<VertexId>,
    pub frozen_arrows: BTreeSet<ArrowId>,
}

impl FrozenData {
    fn compute(q: &Quiver, frozen_vertices: BTreeSet<VertexId>) -> Self {
        let frozen_arrows = q
            .arrows()
            .iter()
            .filter(|a| frozen_vertices.contains(&a.src) && frozen_vertices.contains(&a.tgt))
            .map(|a| a.id)
            .collect();
        Self { frozen_vertices, frozen_arrows }
    }

    pub fn is_frozen_vertex(&self, v: VertexId) -> bool {
        self.frozen_vertices.contains(&v)
    }

    pub fn is_frozen_arrow(&self, a: ArrowId) -> bool {
        self.frozen_arrows.contains(&a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[VertexId]) -> BTreeSet<VertexId> {
        v.iter().copied().collect()
    }

    fn quiver_52() -> Quiver {
        Quiver::from_named(
            1..=6,
            &[("a", 1, 3), ("b", 3, 2), ("c", 2, 1), ("d", 2, 5), ("e", 5, 3), ("f", 5, 6), ("g", 6, 4), ("h", 4, 2)],
        )
        .unwrap()
    }

    #[test]
    fn build_errors() {
        assert_eq!(Quiver::new([1, 2], vec![Arrow::new(1, 1, 3)]), Err(Error::DanglingArrow { arrow: 1, vertex: 3 }));
        assert_eq!(
            Quiver::new([1, 2], vec![Arrow::new(1, 1, 2), Arrow::new(1, 2, 1)]),
            Err(Error::DuplicateArrowId(1))
        );
        let single = Quiver::new([1], vec![]).unwrap();
        assert_eq!(single.vertices().len(), 1);
        assert!(single.arrows().is_empty());
        // loops and parallel arrows are fine
        assert!(Quiver::new([1, 2], vec![Arrow::new(1, 1, 1), Arrow::new(2, 1, 2), Arrow::new(3, 1, 2)]).is_ok());
    }

    #[test]
    fn freeze_52() {
        let q = quiver_52();
        let f = q.freeze(&set(&[3, 5, 6])).unwrap();
        let names: BTreeSet<_> = f.frozen_arrows.iter().map(|&a| q.arrow(a).unwrap().label()).collect();
        assert_eq!(names, ["e", "f"].iter().map(|s| s.to_string()).collect());
        assert!(q.freeze(&set(&[])).unwrap().frozen_arrows.is_empty());
        assert_eq!(q.freeze(&set(&[9])), Err(Error::UnknownVertex(9)));
    }

    #[test]
    fn subquiver_52() {
        let q = quiver_52();
        let sub = q.full_subquiver(&set(&[3, 5, 6])).unwrap();
        assert_eq!(sub.vertices(), &set(&[1, 2, 4]));
        let names: Vec<_> = sub.arrows().iter().map(|a| (a.label(), a.src, a.tgt)).collect();
        assert_eq!(names, vec![("c".into(), 2, 1), ("h".into(), 4, 2)]);
        assert_eq!(q.full_subquiver(&set(&[])).unwrap(), q);
    }

    #[test]
    fn subquiver_composes_over_disjoint_deletions() {
        let q = quiver_52();
        let (a, b) = (set(&[3]), set(&[5, 6]));
        let both: BTreeSet<_> = a.union(&b).copied().collect();
        assert_eq!(q.full_subquiver(&both).unwrap(), q.full_subquiver(&a).unwrap().full_subquiver(&b).unwrap());
    }

    #[test]
    fn dot_rendering() {
        let q = quiver_52();
        let f = q.freeze(&set(&[3, 5, 6])).unwrap();
        let dot = q.to_dot(Some(&f), None);
        assert_eq!(dot.matches("shape=box").count(), 3);
        assert_eq!(dot.matches("shape=circle").count(), 3);
        assert_eq!(dot.matches("->").count(), 8);
        let single = Quiver::new([1], vec![]).unwrap();
        assert_eq!(single.to_dot(None, None), "digraph Q {\n  1 [shape=circle];\n}\n");
        let degs: BTreeMap<_, _> = q.arrows().iter().map(|a| (a.id, u8::from(a.label() == "a"))).collect();
        assert!(q.to_dot(None, Some(&degs)).contains("label=\"a|1\""));
    }

    #[test]
    fn cycles() {
        assert!(quiver_52().has_oriented_cycle());
        assert!(!Quiver::from_named(1..=3, &[("a", 3, 2), ("b", 2, 1)]).unwrap().has_oriented_cycle());
    }
}
