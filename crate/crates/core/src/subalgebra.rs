//! The degree-zero subalgebra `A = B_0`, its quotient `Abar = A/A e_F A` and
//! the Jacobian algebra `Jac(Qbar, Wbar)` of a graded frozen QP.

use std::collections::BTreeSet;

use crate::algebra::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::path::PathElement;
use crate::potential::FrozenQp;
use crate::quiver::{ArrowId, Quiver};

/// A presentation whose relations are indexed by the arrows they were
/// differentiated along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedPresentation {
    pub presentation: AlgebraPresentation,
    /// Arrow behind each relation, parallel to `presentation.relations`.
    pub relation_arrows: Vec<ArrowId>,
    /// Degree-one arrows whose derivative vanished and was dropped.
    pub zero_relations: Vec<ArrowId>,
}

fn degree_zero_quiver(qp: &FrozenQp) -> Result<Quiver> {
    let phi = qp.phi()?;
    Ok(qp.graded_quiver().filter_arrows(|a| phi[&a.id] == 0))
}

fn collect(
    qp: &FrozenQp,
    quiver: Quiver,
    derivatives: impl Iterator<Item = (ArrowId, PathElement)>,
) -> Result<DerivedPresentation> {
    let mut relations = Vec::new();
    let mut relation_arrows = Vec::new();
    let mut zero_relations = Vec::new();
    for (a, r) in derivatives {
        if r.is_zero() {
            zero_relations.push(a);
            continue;
        }
        if let Some((p, _)) = r.terms().find(|(p, _)| p.arrows().iter().any(|&b| quiver.arrow(b).is_err())) {
            return Err(Error::HypothesisViolated {
                hypothesis: "H3".into(),
                witness: format!("derivative along {} contains {}", qp.label(a), p.display(&qp.quiver)),
            });
        }
        relations.push(r);
        relation_arrows.push(a);
    }
    let presentation = AlgebraPresentation::new(quiver, relations)?;
    Ok(DerivedPresentation { presentation, relation_arrows, zero_relations })
}

/// `A = kQ' / <d_a W : a not frozen, phi(a) = 1>` with `Q'` the degree-zero
/// arrows.
pub fn degree_zero_presentation(qp: &FrozenQp) -> Result<DerivedPresentation> {
    let phi = qp.phi()?;
    let quiver = degree_zero_quiver(qp)?;
    let derivs = qp
        .quiver
        .arrows()
        .iter()
        .filter(|a| phi[&a.id] == 1 && !qp.frozen.is_frozen_arrow(a.id))
        .map(|a| (a.id, qp.potential.derivative(&qp.quiver, a.id).unwrap()))
        .collect::<Vec<_>>();
    collect(qp, quiver, derivs.into_iter())
}

/// `Abar = k Qbar' / <d_a Wbar : phi(a) = 1>`, with `Qbar'` the degree-zero
/// arrows away from the frozen vertices.
pub fn bar_quotient_presentation(qp: &FrozenQp) -> Result<DerivedPresentation> {
    let bar = bar_jacobian_qp(qp)?;
    let phi = qp.phi()?;
    let quiver = degree_zero_quiver(qp)?.full_subquiver(&qp.frozen.frozen_vertices)?;
    let derivs = bar
        .quiver
        .arrows()
        .iter()
        .filter(|a| phi[&a.id] == 1)
        .map(|a| (a.id, bar.potential.derivative(&bar.quiver, a.id).unwrap()))
        .collect::<Vec<_>>();
    collect(qp, quiver, derivs.into_iter())
}

/// `(Qbar, Wbar)`: frozen vertices deleted, potential terms through them
/// dropped, grading inherited, nothing frozen.
pub fn bar_jacobian_qp(qp: &FrozenQp) -> Result<FrozenQp> {
    let quiver = qp.quiver.full_subquiver(&qp.frozen.frozen_vertices)?;
    let potential = qp.potential.restrict(&quiver);
    let phi = qp.phi.as_ref().map(|phi| quiver.arrows().iter().map(|a| (a.id, phi[&a.id])).collect());
    FrozenQp::new(quiver, potential, &BTreeSet::new(), phi)
}

/// Presentation obtained by deleting `vertices` and every relation term that
/// passes through them.
pub fn delete_vertices(pres: &AlgebraPresentation, vertices: &BTreeSet<i64>) -> Result<AlgebraPresentation> {
    let quiver = pres.quiver.full_subquiver(vertices)?;
    let relations = pres
        .relations
        .iter()
        .map(|r| {
            PathElement::from_terms(
                r.terms()
                    .filter(|(p, _)| p.arrows().iter().all(|&a| quiver.arrow(a).is_ok()))
                    .map(|(p, c)| (c.clone(), p.clone())),
            )
        })
        .filter(|r| !r.is_zero())
        .collect();
    AlgebraPresentation::new(quiver, relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::Potential;
    use crate::rational::int;

    fn qp52() -> FrozenQp {
        let q = Quiver::from_named(
            1..=6,
            &[("a", 1, 3), ("b", 3, 2), ("c", 2, 1), ("d", 2, 5), ("e", 5, 3), ("f", 5, 6), ("g", 6, 4), ("h", 4, 2)],
        )
        .unwrap();
        let w = Potential::from_words(&q, &[(int(1), "acb"), (int(1), "dbe"), (int(1), "dhgf")]).unwrap();
        let phi = q.arrows().iter().map(|a| (a.id, u8::from(matches!(a.name.as_deref(), Some("a" | "d"))))).collect();
        FrozenQp::new(q, w, &[3, 5, 6].into(), Some(phi)).unwrap()
    }

    #[test]
    fn a_for_52() {
        let qp = qp52();
        let a = degree_zero_presentation(&qp).unwrap();
        let q = &a.presentation.quiver;
        let names: Vec<String> = q.arrows().iter().map(|x| x.label()).collect();
        assert_eq!(names, ["b", "c", "e", "f", "g", "h"]);
        let rels: Vec<String> = a.presentation.relations.iter().map(|r| r.display(q)).collect();
        assert_eq!(rels, ["cb", "be + hgf"]);
    }

    #[test]
    fn abar_for_52_is_hereditary() {
        let qp = qp52();
        let abar = bar_quotient_presentation(&qp).unwrap();
        assert!(abar.presentation.relations.is_empty());
        let q = &abar.presentation.quiver;
        assert_eq!(q.vertices().iter().copied().collect::<Vec<_>>(), [1, 2, 4]);
        assert_eq!(q.endpoint_multiset(), [(2, 1), (4, 2)]);
        let bar = bar_jacobian_qp(&qp).unwrap();
        assert!(bar.potential.is_zero());
    }

    #[test]
    fn two_routes_to_abar_agree() {
        let qp = qp52();
        let a = degree_zero_presentation(&qp).unwrap().presentation;
        let via_a = delete_vertices(&a, &qp.frozen.frozen_vertices).unwrap();
        assert_eq!(via_a, bar_quotient_presentation(&qp).unwrap().presentation);
    }

    #[test]
    fn degree_one_arrow_in_relation_violates_h3() {
        let q = Quiver::from_named(1..=3, &[("a", 1, 2), ("b", 2, 3), ("c", 3, 1)]).unwrap();
        let w = Potential::from_words(&q, &[(int(1), "cba")]).unwrap();
        let phi = q.arrows().iter().map(|a| (a.id, u8::from(a.name.as_deref() != Some("c")))).collect();
        let qp = FrozenQp::new(q, w, &BTreeSet::new(), Some(phi)).unwrap();
        assert!(matches!(degree_zero_presentation(&qp), Err(Error::HypothesisViolated { .. })));
    }

    #[test]
    fn everything_frozen() {
        let q = Quiver::from_named([1, 2], &[("a", 1, 2)]).unwrap();
        let phi = [(1, 0)].into();
        let qp = FrozenQp::new(q, Potential::zero(), &[1, 2].into(), Some(phi)).unwrap();
        let abar = bar_quotient_presentation(&qp).unwrap();
        assert!(abar.presentation.quiver.vertices().is_empty());
        assert!(abar.presentation.relations.is_empty());
    }
}
