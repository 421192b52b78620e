//! Keller's quiver with potential `(Q~, W_A)` of a presented algebra, and
//! its comparison with `(Qbar, Wbar)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::{AlgebraPresentation, DEFAULT_MAX_LEN};
use crate::error::{Error, Result};
use crate::modrep::{global_dimension, GlobalDimension};
use crate::path::PathElement;
use crate::potential::{FrozenQp, Potential};
use crate::quiver::{Arrow, ArrowId, Quiver, VertexId};
use crate::rational::Rat;
use crate::subalgebra::{bar_jacobian_qp, bar_quotient_presentation};

#[derive(Clone, Debug)]
pub struct KellerExtension {
    /// Base arrows in degree 0, added arrows in degree 1.
    pub quiver: Quiver,
    /// `added[i]` is the arrow `t(r_i) -> s(r_i)`.
    pub added: Vec<ArrowId>,
    pub potential: Potential,
}

/// Adds one arrow `a_i: t(r_i) -> s(r_i)` per relation and forms
/// `W_A = sum a_i r_i`.
pub fn keller_extend(pres: &AlgebraPresentation) -> Result<KellerExtension> {
    let base = pres.quiver.max_arrow_id().max(0);
    let mut new_arrows = Vec::new();
    let mut added = Vec::new();
    let mut w = PathElement::zero();
    for (i, r) in pres.relations.iter().enumerate() {
        let (s, t) = match r.endpoints() {
            Some(e) if r.components().len() == 1 => e,
            _ => return Err(Error::NonHomogeneousRelation(i)),
        };
        let id = base + i as ArrowId + 1;
        new_arrows.push(Arrow { id, src: t, tgt: s, name: Some(format!("r{}", i + 1)), deg: Some(1) });
        added.push(id);
    }
    let mut arrows: Vec<Arrow> = pres.quiver.arrows().iter().map(|a| Arrow { deg: Some(0), ..a.clone() }).collect();
    arrows.extend(new_arrows);
    let quiver = Quiver::new(pres.quiver.vertices().iter().copied(), arrows)?;
    for (r, &a) in pres.relations.iter().zip(&added) {
        let ar = PathElement::term(Rat::from_integer(1.into()), quiver.path(&[a])?);
        w = w.add(&ar.mul(r));
    }
    Ok(KellerExtension { quiver, added, potential: Potential::new(w)? })
}

#[derive(Clone, Debug, Serialize)]
pub struct KellerReport {
    pub quiver_match: bool,
    pub potential_match: bool,
    pub ambiguities: Vec<String>,
    #[serde(skip)]
    pub global_dimension: GlobalDimension,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

impl KellerReport {
    pub fn matched(&self) -> bool {
        self.quiver_match && self.potential_match
    }
}

fn endpoint_counts(q: &Quiver) -> BTreeMap<(VertexId, VertexId), usize> {
    let mut m = BTreeMap::new();
    for a in q.arrows() {
        *m.entry((a.src, a.tgt)).or_default() += 1;
    }
    m
}

/// Compares `keller_extend(Abar)` with `(Qbar, Wbar)`. The hypotheses
/// (H1)-(H4) are checked first against `projective_injective` (default:
/// the frozen vertices).
pub fn verify_endomorphism_match(
    qp: &FrozenQp,
    projective_injective: Option<&BTreeSet<VertexId>>,
    max_len: usize,
) -> Result<KellerReport> {
    let pi = projective_injective.unwrap_or(&qp.frozen.frozen_vertices);
    qp.check_hypotheses(pi)?.into_result()?;
    let abar = bar_quotient_presentation(qp)?;
    let ext = keller_extend(&abar.presentation)?;
    let bar = bar_jacobian_qp(qp)?;

    let mut warnings = Vec::new();
    let global_dimension = match abar.presentation.quotient_basis(max_len) {
        Ok(alg) => global_dimension(&alg, 3),
        Err(e) => {
            warnings.push(format!("Abar: {e}"));
            GlobalDimension::AboveBound(0)
        }
    };
    if !matches!(global_dimension, GlobalDimension::Finite(d) if d <= 2) {
        warnings.push("global dimension of Abar is not at most 2".into());
    }

    // added arrow i stands for the degree-one arrow the relation came from
    let mut rename: BTreeMap<ArrowId, ArrowId> = abar.presentation.quiver.arrows().iter().map(|a| (a.id, a.id)).collect();
    let mut ambiguities = Vec::new();
    let bar_counts = endpoint_counts(&bar.quiver);
    let mut endpoints_agree = true;
    for (&new, &origin) in ext.added.iter().zip(&abar.relation_arrows) {
        let a = ext.quiver.arrow(new)?;
        let b = bar.quiver.arrow(origin)?;
        endpoints_agree &= (a.src, a.tgt) == (b.src, b.tgt);
        if bar_counts.get(&(a.src, a.tgt)).copied().unwrap_or(0) > 1 {
            ambiguities.push(format!("{} shares endpoints {}->{} with other arrows", a.label(), a.src, a.tgt));
        }
        rename.insert(new, origin);
    }
    let quiver_match = endpoints_agree && endpoint_counts(&ext.quiver) == bar_counts;
    let potential_match = quiver_match
        && ext.potential.rename(&rename, &bar.quiver).is_ok_and(|w| w.cyclically_equivalent(&bar.potential, &bar.quiver));
    Ok(KellerReport { quiver_match, potential_match, ambiguities, global_dimension, warnings })
}

/// [`verify_endomorphism_match`] with the default length bound.
pub fn verify_default(qp: &FrozenQp) -> Result<KellerReport> {
    verify_endomorphism_match(qp, None, DEFAULT_MAX_LEN)
}
