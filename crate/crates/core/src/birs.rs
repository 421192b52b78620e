//! The frozen QP `(Q_w, W_w, F)` of a reduced word, with its grading.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::coxeter::{CoxeterSystem, Graph, Word};
use crate::error::{Error, Result};
use crate::path::Path;
use crate::potential::{FrozenQp, HypothesisReport, Potential};
use crate::quiver::{Arrow, ArrowId, Quiver, VertexId};
use crate::rational::int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum ArrowKind {
    #[serde(rename = "left")]
    Left,
    Q,
    #[serde(rename = "Qstar")]
    QStar,
}

#[derive(Clone, Debug)]
pub struct BirsQp {
    pub qp: FrozenQp,
    pub kinds: BTreeMap<ArrowId, ArrowKind>,
    /// Position `p` to its letter `u_p`.
    pub positions: BTreeMap<VertexId, VertexId>,
    /// Letter `i` to `t_i`.
    pub last: BTreeMap<VertexId, VertexId>,
    /// The admissible orientation of the graph.
    pub orientation: Quiver,
    pub hypotheses: HypothesisReport,
}

impl BirsQp {
    pub fn frozen_vertices(&self) -> &BTreeSet<VertexId> {
        &self.qp.frozen.frozen_vertices
    }

    pub fn arrows_of_kind(&self, kind: ArrowKind) -> impl Iterator<Item = &Arrow> {
        self.qp.quiver.arrows().iter().filter(move |a| self.kinds[&a.id] == kind)
    }
}

/// `i -> t_i`, the last position carrying letter `i` (positions start at 1).
pub fn last_occurrences(word: &[VertexId]) -> BTreeMap<VertexId, VertexId> {
    word.iter().zip(1..).map(|(&u, p)| (u, p)).collect()
}

/// Orients each edge `{i, j}` as `i -> j` when `t_i < t_j`.
pub fn admissible_orientation(graph: &Graph, word: &[VertexId]) -> Result<Quiver> {
    let sys = CoxeterSystem::new(graph);
    if !sys.is_reduced(word)? {
        return Err(Error::NotReduced);
    }
    let last = last_occurrences(word);
    if let Some(&v) = graph.vertices.iter().find(|v| !last.contains_key(v)) {
        return Err(Error::UnusedVertex(v));
    }
    Ok(graph.orient(|i, j| last[&i] < last[&j]))
}

/// Builds `(Q_w, W_w, F)` and checks (H1)-(H4) with `F_0` as the
/// projective-injective set.
pub fn build_birs_qp(graph: &Graph, word: &[VertexId]) -> Result<BirsQp> {
    let orientation = admissible_orientation(graph, word)?;
    let l = word.len() as VertexId;
    let u = |p: VertexId| word[(p - 1) as usize];
    let positions: BTreeMap<_, _> = (1..=l).map(|p| (p, u(p))).collect();
    let last = last_occurrences(word);
    let next_of_type = |i: VertexId, p: VertexId| ((p + 1)..=l).find(|&q| u(q) == i).unwrap_or(l + 1);
    let last_of_type_in = |j: VertexId, lo: VertexId, hi: VertexId| ((lo + 1)..hi).rev().find(|&q| u(q) == j);
    let parallel = Graph::of_quiver(&orientation).has_parallel_edges();

    let mut arrows = Vec::new();
    let mut kinds = BTreeMap::new();
    let mut push = |arrows: &mut Vec<Arrow>, kind, src, tgt, name: String| {
        let id = arrows.len() as ArrowId + 1;
        arrows.push(Arrow::named(id, &name, src, tgt));
        kinds.insert(id, kind);
        id
    };

    // left arrows t <- s, keyed by their source s
    let mut left_from: BTreeMap<VertexId, ArrowId> = BTreeMap::new();
    for s in 1..=l {
        if let Some(t) = (1..s).rev().find(|&t| u(t) == u(s)) {
            let id = push(&mut arrows, ArrowKind::Left, s, t, format!("L{s}>{t}"));
            left_from.insert(s, id);
        }
    }
    // per graph arrow: (Q-arrows, Q*-arrows) as (id, src, tgt)
    let mut per_edge = Vec::new();
    for kind in [ArrowKind::Q, ArrowKind::QStar] {
        for (k, e) in orientation.arrows().iter().enumerate() {
            let (from, to) = if kind == ArrowKind::Q { (e.src, e.tgt) } else { (e.tgt, e.src) };
            let tag = if kind == ArrowKind::Q { "Q" } else { "Q*" };
            let mut made = Vec::new();
            for t in (1..=l).filter(|&t| u(t) == from) {
                if let Some(s) = last_of_type_in(to, t, next_of_type(from, t)) {
                    let suffix = if parallel { format!("#{}", e.id) } else { String::new() };
                    let id = push(&mut arrows, kind, t, s, format!("{tag}{t}>{s}{suffix}"));
                    made.push((id, t, s));
                }
            }
            if kind == ArrowKind::Q {
                per_edge.push((made, Vec::new()));
            } else {
                per_edge[k].1 = made;
            }
        }
    }

    let quiver = Quiver::new(1..=l, arrows)?;
    // left path from `hi` down to `lo`, as a word read right to left
    let left_path = |hi: VertexId, lo: VertexId| -> Vec<ArrowId> {
        let mut out = Vec::new();
        let mut v = hi;
        while v != lo {
            let id = left_from[&v];
            out.push(id);
            v = quiver.arrow(id).unwrap().tgt;
        }
        out.reverse();
        out
    };
    let mut w = Potential::zero();
    for (qs, stars) in &per_edge {
        for &(a, t, s) in qs {
            if let Some(&(astar, r, _)) = stars.iter().find(|&&(_, r, tt)| tt == t && u(r) == u(s) && r <= s) {
                let mut cycle = vec![a, astar];
                cycle.extend(left_path(s, r));
                w = w.add(&Potential::new(crate::path::PathElement::from_path(quiver.path(&cycle)?))?);
            }
        }
        for &(astar, t, r) in stars {
            if let Some(&(a, s, _)) = qs.iter().find(|&&(_, s, tt)| tt == t && u(s) == u(r) && s <= r) {
                let mut cycle = vec![astar, a];
                cycle.extend(left_path(r, s));
                let term = Path::from_arrows(&quiver, &cycle)?;
                w = w.sub(&Potential::new(crate::path::PathElement::term(int(1), term))?);
            }
        }
    }

    let frozen: BTreeSet<VertexId> = last.values().copied().collect();
    let phi = kinds.iter().map(|(&id, &k)| (id, u8::from(k == ArrowKind::QStar))).collect();
    let qp = FrozenQp::new(quiver, w, &frozen, Some(phi))?;
    let hypotheses = qp.check_hypotheses(&frozen)?.into_result()?;
    Ok(BirsQp { qp, kinds, positions, last, orientation, hypotheses })
}

/// [`build_birs_qp`] on the full subgraph spanned by the letters of `word`.
pub fn build_on_support(graph: &Graph, word: &Word) -> Result<BirsQp> {
    let support: BTreeSet<_> = word.iter().copied().collect();
    if let Some(&v) = support.iter().find(|v| !graph.vertices.contains(v)) {
        return Err(Error::UnknownLetter(v));
    }
    build_birs_qp(&graph.restrict(&support), word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn endpoints(b: &BirsQp, kind: ArrowKind) -> Vec<(VertexId, VertexId)> {
        let mut v: Vec<_> = b.arrows_of_kind(kind).map(|a| (a.src, a.tgt)).collect();
        v.sort();
        v
    }

    #[test]
    fn last_occurrences_of_examples() {
        assert_eq!(last_occurrences(&[1, 2, 3, 1, 3, 2, 1]), [(1, 7), (2, 6), (3, 5)].into());
        assert_eq!(last_occurrences(&[1, 2, 3, 1, 2, 1]), [(1, 6), (2, 5), (3, 3)].into());
        assert_eq!(last_occurrences(&[1]), [(1, 1)].into());
    }

    #[test]
    fn orientations() {
        let q = admissible_orientation(&Graph::triangle(), &[1, 2, 3, 1, 3, 2, 1]).unwrap();
        assert_eq!(q.endpoint_multiset(), [(2, 1), (3, 1), (3, 2)]);
        let q = admissible_orientation(&Graph::path(3), &[1, 2, 3, 1, 2, 1]).unwrap();
        assert_eq!(q.endpoint_multiset(), [(2, 1), (3, 2)]);
        assert_eq!(admissible_orientation(&Graph::path(2), &[1, 1]), Err(Error::NotReduced));
        assert_eq!(admissible_orientation(&Graph::path(2), &[1]), Err(Error::UnusedVertex(2)));
    }

    #[test]
    fn triangle_word() {
        let b = build_birs_qp(&Graph::triangle(), &[1, 2, 3, 1, 3, 2, 1]).unwrap();
        assert_eq!(b.qp.quiver.vertices().len(), 7);
        assert_eq!(b.frozen_vertices(), &[5, 6, 7].into());
        assert_eq!(endpoints(&b, ArrowKind::Left), [(4, 1), (5, 3), (6, 2), (7, 4)]);
        assert_eq!(endpoints(&b, ArrowKind::Q), [(2, 4), (3, 4), (5, 6), (5, 7), (6, 7)]);
        assert_eq!(endpoints(&b, ArrowKind::QStar), [(1, 2), (1, 3), (2, 5), (4, 5), (4, 6)]);
        // five W_a terms and two W_{a*} terms, all triangles
        assert_eq!(b.qp.potential.terms().count(), 7);
        assert!(b.qp.potential.terms().all(|(p, _)| p.len() == 3));
        assert!(b.hypotheses.all_pass());
    }

    #[test]
    fn small_words() {
        let b = build_birs_qp(&Graph::path(1), &[1]).unwrap();
        assert!(b.qp.quiver.arrows().is_empty() && b.qp.potential.is_zero());
        assert_eq!(b.frozen_vertices(), &[1].into());

        // s1 s2 s1 on 1 - 2: orientation 2 -> 1 since t_2 = 2 < t_1 = 3
        let b = build_birs_qp(&Graph::path(2), &[1, 2, 1]).unwrap();
        assert_eq!(endpoints(&b, ArrowKind::Left), [(3, 1)]);
        assert_eq!(endpoints(&b, ArrowKind::Q), [(2, 3)]);
        assert_eq!(endpoints(&b, ArrowKind::QStar), [(1, 2)]);
        let terms: Vec<String> = b.qp.potential.terms().map(|(p, c)| format!("{c} {}", p.display(&b.qp.quiver))).collect();
        assert_eq!(terms, ["1 Q2>3 Q*1>2 L3>1"]);
    }

    #[test]
    fn support_restriction() {
        assert!(matches!(build_birs_qp(&Graph::triangle(), &[1, 2]), Err(Error::UnusedVertex(3))));
        let b = build_on_support(&Graph::triangle(), &vec![1, 2]).unwrap();
        assert_eq!(b.qp.quiver.vertices().len(), 2);
    }
}
