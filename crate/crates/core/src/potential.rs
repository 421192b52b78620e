//! Potentials, cyclic derivatives and frozen quivers with potential.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;
use serde::Serialize;

use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::path::{Path, PathElement};
use crate::quiver::{ArrowId, FrozenData, Quiver, VertexId};
use crate::rational::Rat;

/// A finite linear combination of cycles of positive length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Potential {
    terms: PathElement,
}

impl Potential {
    pub fn new(terms: PathElement) -> Result<Self> {
        for (p, _) in terms.terms() {
            if !p.is_cycle() || p.is_stationary() {
                return Err(Error::SchemaViolation(format!("potential term of length {} is not a cycle", p.len())));
            }
        }
        Ok(Self { terms })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Potential from `(coefficient, word)` pairs, words as in [`Quiver::word`].
    pub fn from_words(q: &Quiver, terms: &[(Rat, &str)]) -> Result<Self> {
        let mut e = PathElement::zero();
        for (c, w) in terms {
            e.add_term(q.word(w)?, c.clone());
        }
        Self::new(e)
    }

    pub fn element(&self) -> &PathElement {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Rat)> {
        self.terms.terms()
    }

    pub fn add(&self, other: &Potential) -> Potential {
        Potential { terms: self.terms.add(&other.terms) }
    }

    pub fn sub(&self, other: &Potential) -> Potential {
        Potential { terms: self.terms.sub(&other.terms) }
    }

    pub fn scale(&self, c: &Rat) -> Potential {
        Potential { terms: self.terms.scale(c) }
    }

    /// Cyclic derivative: `sum over p = u a v of v u`, a combination of paths
    /// from `t(a)` to `s(a)`.
    pub fn derivative(&self, q: &Quiver, a: ArrowId) -> Result<PathElement> {
        let arrow = q.arrow(a)?;
        let mut out = PathElement::zero();
        for (p, c) in self.terms() {
            let w = p.arrows();
            for j in 0..w.len() {
                if w[j] != a {
                    continue;
                }
                let mut rest: Vec<ArrowId> = w[j + 1..].to_vec();
                rest.extend_from_slice(&w[..j]);
                let path = if rest.is_empty() { Path::stationary(arrow.src) } else { q.path(&rest)? };
                out.add_term(path, c.clone());
            }
        }
        Ok(out)
    }

    /// Every cycle replaced by its smallest rotation; two potentials are
    /// cyclically equivalent iff these agree.
    pub fn cyclic_normal_form(&self, q: &Quiver) -> PathElement {
        PathElement::from_terms(self.terms().map(|(p, c)| (c.clone(), min_rotation(q, p))))
    }

    pub fn cyclically_equivalent(&self, other: &Potential, q: &Quiver) -> bool {
        self.cyclic_normal_form(q) == other.cyclic_normal_form(q)
    }

    /// Terms all of whose arrows survive in `sub`.
    pub fn restrict(&self, sub: &Quiver) -> Potential {
        let terms = PathElement::from_terms(
            self.terms()
                .filter(|(p, _)| p.arrows().iter().all(|&a| sub.arrow(a).is_ok()))
                .map(|(p, c)| (c.clone(), p.clone())),
        );
        Potential { terms }
    }

    /// Renames arrows; used when matching reconstructed quivers.
    pub fn rename(&self, map: &BTreeMap<ArrowId, ArrowId>, target: &Quiver) -> Result<Potential> {
        Potential::new(self.terms.rename(map, target)?)
    }

    pub fn display(&self, q: &Quiver) -> String {
        self.terms.display(q)
    }
}

pub fn min_rotation(q: &Quiver, p: &Path) -> Path {
    (0..p.len().max(1)).map(|k| p.rotate_in(q, k)).min().unwrap()
}

/// A quiver with potential, frozen vertices and an optional `{0,1}` grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrozenQp {
    pub quiver: Quiver,
    pub potential: Potential,
    pub frozen: FrozenData,
    pub phi: Option<BTreeMap<ArrowId, u8>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianRelation {
    pub arrow: ArrowId,
    #[serde(skip)]
    pub relation: PathElement,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedReport {
    pub reduced: bool,
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub witness: Option<String>,
}

impl Verdict {
    fn pass() -> Self {
        Self { pass: true, witness: None }
    }

    fn fail(witness: String) -> Self {
        Self { pass: false, witness: Some(witness) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    #[serde(rename = "H1")]
    pub h1: Verdict,
    #[serde(rename = "H2")]
    pub h2: Verdict,
    #[serde(rename = "H3")]
    pub h3: Verdict,
    #[serde(rename = "H4")]
    pub h4: Verdict,
    /// Leading terms of the nonzero derivatives are pairwise distinct.
    pub leading_terms_distinct: bool,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.h1.pass && self.h2.pass && self.h3.pass && self.h4.pass
    }

    /// First failing hypothesis as an error value.
    pub fn into_result(self) -> Result<Self> {
        for (name, v) in [("H1", &self.h1), ("H2", &self.h2), ("H3", &self.h3), ("H4", &self.h4)] {
            if !v.pass {
                return Err(Error::HypothesisViolated {
                    hypothesis: name.into(),
                    witness: v.witness.clone().unwrap_or_default(),
                });
            }
        }
        Ok(self)
    }
}

impl FrozenQp {
    pub fn new(
        quiver: Quiver,
        potential: Potential,
        frozen_vertices: &BTreeSet<VertexId>,
        phi: Option<BTreeMap<ArrowId, u8>>,
    ) -> Result<Self> {
        for (p, _) in potential.terms() {
            if quiver.path(p.arrows()).ok().as_ref() != Some(p) {
                return Err(Error::SchemaViolation("potential term is not a path of the quiver".into()));
            }
        }
        if let Some(phi) = &phi {
            for a in quiver.arrows() {
                match phi.get(&a.id) {
                    Some(0 | 1) => {}
                    Some(d) => return Err(Error::SchemaViolation(format!("degree {d} of arrow {} is not 0 or 1", a.label()))),
                    None => return Err(Error::MissingDegreeMap),
                }
            }
            if let Some(a) = phi.keys().find(|a| quiver.arrow(**a).is_err()) {
                return Err(Error::UnknownArrow(*a));
            }
        }
        let frozen = quiver.freeze(frozen_vertices)?;
        Ok(Self { quiver, potential, frozen, phi })
    }

    pub fn phi(&self) -> Result<&BTreeMap<ArrowId, u8>> {
        self.phi.as_ref().ok_or(Error::MissingDegreeMap)
    }

    /// The quiver with its arrows labelled by `phi`, when present.
    pub fn graded_quiver(&self) -> Quiver {
        match &self.phi {
            Some(phi) => self.quiver.with_degrees(phi),
            None => self.quiver.clone(),
        }
    }

    pub fn label(&self, a: ArrowId) -> String {
        self.quiver.arrow(a).map(|x| x.label()).unwrap_or_else(|_| a.to_string())
    }

    pub fn is_reduced(&self) -> ReducedReport {
        let mut reasons = Vec::new();
        for (p, _) in self.potential.terms() {
            let name = p.display(&self.quiver);
            if p.len() < 3 {
                reasons.push(format!("length<3: {name}"));
            }
            if p.arrows().iter().all(|&a| self.frozen.is_frozen_arrow(a)) {
                reasons.push(format!("all arrows frozen: {name}"));
            }
        }
        ReducedReport { reduced: reasons.is_empty(), reasons }
    }

    /// `(a, d_a W)` for every non-frozen arrow, in quiver order.
    pub fn jacobian_relations(&self) -> Vec<JacobianRelation> {
        self.quiver
            .arrows()
            .iter()
            .filter(|a| !self.frozen.is_frozen_arrow(a.id))
            .map(|a| {
                let relation = self.potential.derivative(&self.quiver, a.id).expect("arrow of the quiver");
                JacobianRelation { arrow: a.id, zero: relation.is_zero(), relation }
            })
            .collect()
    }

    /// `kQ / <d_a W : a not frozen>`.
    pub fn jacobian_presentation(&self) -> Result<AlgebraPresentation> {
        let rels = self.jacobian_relations().into_iter().filter(|r| !r.zero).map(|r| r.relation).collect();
        AlgebraPresentation::new(self.graded_quiver(), rels)
    }

    pub fn term_degree(&self, p: &Path) -> Result<u32> {
        let phi = self.phi()?;
        Ok(p.arrows().iter().map(|a| u32::from(phi[a])).sum())
    }

    pub fn check_hypotheses(&self, projective_injective: &BTreeSet<VertexId>) -> Result<HypothesisReport> {
        let phi = self.phi()?;
        let h1 = if &self.frozen.frozen_vertices == projective_injective {
            Verdict::pass()
        } else {
            let diff: Vec<String> =
                self.frozen.frozen_vertices.symmetric_difference(projective_injective).map(|v| v.to_string()).collect();
            Verdict::fail(format!("vertices {}", diff.join(",")))
        };

        let rels = self.jacobian_relations();
        let mut h2 = Verdict::pass();
        if let Some(r) = rels.iter().find(|r| r.zero) {
            h2 = Verdict::fail(format!("derivative along {} vanishes", self.label(r.arrow)));
        }
        let nonzero: Vec<&JacobianRelation> = rels.iter().filter(|r| !r.zero).collect();
        if h2.pass {
            'pairs: for (i, x) in nonzero.iter().enumerate() {
                for y in &nonzero[i + 1..] {
                    if x.relation == y.relation {
                        h2 = Verdict::fail(format!(
                            "derivatives along {} and {} coincide",
                            self.label(x.arrow),
                            self.label(y.arrow)
                        ));
                        break 'pairs;
                    }
                }
            }
        }
        if h2.pass {
            if let Some(r) = first_dependent(nonzero.iter().map(|r| (r.arrow, &r.relation))) {
                h2 = Verdict::fail(format!("derivative along {} is a combination of the others", self.label(r)));
            }
        }
        let leads: Vec<&Path> = nonzero.iter().map(|r| r.relation.leading().unwrap().0).collect();
        let leading_terms_distinct = leads.iter().collect::<BTreeSet<_>>().len() == leads.len();

        let mut h3 = Verdict::pass();
        for (p, _) in self.potential.terms() {
            let d: u32 = p.arrows().iter().map(|a| u32::from(phi[a])).sum();
            if d != 1 {
                h3 = Verdict::fail(format!("term {} has degree {d}", p.display(&self.quiver)));
                break;
            }
        }

        let mut h4 = Verdict::pass();
        for a in self.quiver.arrows() {
            let into_frozen = !self.frozen.is_frozen_vertex(a.src) && self.frozen.is_frozen_vertex(a.tgt);
            if into_frozen && phi[&a.id] != 1 {
                h4 = Verdict::fail(format!("arrow {} into a frozen vertex has degree 0", a.label()));
                break;
            }
        }
        Ok(HypothesisReport { h1, h2, h3, h4, leading_terms_distinct })
    }
}

/// First element (by its tag) lying in the span of the previous ones.
pub(crate) fn first_dependent<'a, T: Copy>(items: impl Iterator<Item = (T, &'a PathElement)>) -> Option<T> {
    let mut coords: BTreeMap<Path, usize> = BTreeMap::new();
    let mut ech = Echelon::new();
    for (tag, x) in items {
        let mut v = SparseVec::new();
        for (p, c) in x.terms() {
            let n = coords.len();
            let k = *coords.entry(p.clone()).or_insert(n);
            v.insert(k, c.clone());
        }
        if ech.insert(&v).is_none() {
            return Some(tag);
        }
    }
    None
}

/// Sum over all arrows of `a * d_a W`, i.e. every cycle counted once per
/// arrow occurrence.
pub fn euler_sum(q: &Quiver, w: &Potential) -> Result<Potential> {
    let mut out = PathElement::zero();
    let arrows: BTreeSet<ArrowId> = w.terms().flat_map(|(p, _)| p.arrows().to_vec()).collect();
    for a in arrows {
        let ap = PathElement::term(Rat::one(), q.path(&[a])?);
        out = out.add(&ap.mul(&w.derivative(q, a)?));
    }
    Potential::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn q52() -> Quiver {
        Quiver::from_named(
            1..=6,
            &[("a", 1, 3), ("b", 3, 2), ("c", 2, 1), ("d", 2, 5), ("e", 5, 3), ("f", 5, 6), ("g", 6, 4), ("h", 4, 2)],
        )
        .unwrap()
    }

    fn qp52(phi_a: u8) -> FrozenQp {
        let q = q52();
        let w = Potential::from_words(&q, &[(int(1), "acb"), (int(1), "dbe"), (int(1), "dhgf")]).unwrap();
        let phi = q
            .arrows()
            .iter()
            .map(|a| {
                let d = match a.name.as_deref() {
                    Some("d") => 1,
                    Some("a") => phi_a,
                    _ => 0,
                };
                (a.id, d)
            })
            .collect();
        FrozenQp::new(q, w, &[3, 5, 6].into(), Some(phi)).unwrap()
    }

    fn word(q: &Quiver, w: &str) -> PathElement {
        PathElement::from_path(q.word(w).unwrap())
    }

    #[test]
    fn derivatives_52() {
        let qp = qp52(1);
        let q = &qp.quiver;
        let rels: BTreeMap<String, PathElement> =
            qp.jacobian_relations().into_iter().map(|r| (qp.label(r.arrow), r.relation)).collect();
        assert_eq!(rels.keys().cloned().collect::<Vec<_>>(), ["a", "b", "c", "d", "g", "h"]);
        assert_eq!(rels["a"], word(q, "cb"));
        assert_eq!(rels["b"], word(q, "ac").add(&word(q, "ed")));
        assert_eq!(rels["c"], word(q, "ba"));
        assert_eq!(rels["d"], word(q, "be").add(&word(q, "hgf")));
        assert_eq!(rels["g"], word(q, "fdh"));
        assert_eq!(rels["h"], word(q, "gfd"));
    }

    #[test]
    fn derivatives_51_bar() {
        let q = Quiver::from_named(1..=4, &[("a", 1, 2), ("b", 2, 4), ("c", 1, 3), ("d", 3, 4), ("e", 4, 1)]).unwrap();
        let w = Potential::from_words(&q, &[(int(1), "bae"), (int(1), "dce")]).unwrap();
        let d = |x: &str| w.derivative(&q, q.id_of(x)).unwrap();
        assert_eq!(d("a"), word(&q, "eb"));
        assert_eq!(d("b"), word(&q, "ae"));
        assert_eq!(d("c"), word(&q, "ed"));
        assert_eq!(d("d"), word(&q, "ce"));
        assert_eq!(d("e"), word(&q, "ba").add(&word(&q, "dc")));
        let other = Potential::from_words(&q, &[(int(1), "aeb"), (int(1), "ced")]).unwrap();
        assert!(w.cyclically_equivalent(&other, &q));
        assert!(!w.cyclically_equivalent(&w.scale(&int(2)), &q));
    }

    #[test]
    fn absent_arrow_has_zero_derivative() {
        let q = Quiver::from_named(1..=3, &[("a", 1, 2), ("b", 2, 3), ("c", 3, 1), ("x", 1, 3)]).unwrap();
        let w = Potential::from_words(&q, &[(int(1), "cba")]).unwrap();
        assert!(w.derivative(&q, q.id_of("x")).unwrap().is_zero());
        assert_eq!(w.derivative(&q, 99), Err(Error::UnknownArrow(99)));
    }

    #[test]
    fn reducedness() {
        let qp = qp52(1);
        assert!(qp.is_reduced().reduced);
        let q = Quiver::from_named([1, 2], &[("a", 1, 2), ("b", 2, 1)]).unwrap();
        let w = Potential::from_words(&q, &[(int(1), "ab")]).unwrap();
        let r = FrozenQp::new(q.clone(), w, &BTreeSet::new(), None).unwrap().is_reduced();
        assert!(!r.reduced && r.reasons[0].starts_with("length<3"));
        let q = Quiver::from_named(1..=3, &[("a", 1, 2), ("b", 2, 3), ("c", 3, 1)]).unwrap();
        let w = Potential::from_words(&q, &[(int(1), "cba")]).unwrap();
        let r = FrozenQp::new(q, w, &[1, 2, 3].into(), None).unwrap().is_reduced();
        assert!(!r.reduced && r.reasons[0].starts_with("all arrows frozen"));
    }

    #[test]
    fn hypotheses_52() {
        let rep = qp52(1).check_hypotheses(&[3, 5, 6].into()).unwrap();
        assert!(rep.all_pass(), "{rep:?}");
        let rep = qp52(0).check_hypotheses(&[3, 5, 6].into()).unwrap();
        assert!(!rep.h3.pass);
        assert_eq!(rep.h3.witness.as_deref(), Some("term acb has degree 0"));
        let mut qp = qp52(1);
        qp.phi = None;
        assert_eq!(qp.check_hypotheses(&[3, 5, 6].into()), Err(Error::MissingDegreeMap));
    }

    #[test]
    fn empty_potential_flags_everything() {
        let q = q52();
        let qp = FrozenQp::new(q, Potential::zero(), &BTreeSet::new(), None).unwrap();
        let rels = qp.jacobian_relations();
        assert_eq!(rels.len(), 8);
        assert!(rels.iter().all(|r| r.zero));
    }
}
