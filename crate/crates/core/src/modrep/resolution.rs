//! Minimal projective resolutions over a finite-dimensional algebra.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::FdAlgebra;
use crate::linalg::{unit, Echelon, Matrix, SparseVec};
use crate::quiver::VertexId;

use super::algmodule::FreeModule;

/// Tops of the terms `P_0, P_1, ...` of a minimal projective resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Resolution {
    pub terms: Vec<Vec<VertexId>>,
    /// False when the computation stopped at the bound.
    pub complete: bool,
}

impl Resolution {
    /// Projective dimension, when the resolution is complete.
    pub fn length(&self) -> Option<usize> {
        self.complete.then(|| self.terms.len().saturating_sub(1))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GlobalDimension {
    Finite(usize),
    AboveBound(usize),
}

/// Minimal generators of `K` modulo `K J`, grouped by vertex.
fn top(free: &FreeModule, k: &Echelon) -> Vec<(VertexId, SparseVec)> {
    let kj = free.radical(k);
    let mut out = Vec::new();
    for w in free.alg.vertices() {
        let mut ech = free.vertex_part(&kj, w);
        for row in free.vertex_part(k, w).basis() {
            if ech.insert(row).is_some() {
                out.push((w, row.clone()));
            }
        }
    }
    out
}

/// Resolves `P / K` with `P = e_{tops} A` and `K` a submodule, for at most
/// `bound + 1` terms.
pub fn resolve_quotient(alg: &FdAlgebra, tops: &[VertexId], k: &Echelon, bound: usize) -> Resolution {
    let mut terms = vec![tops.to_vec()];
    let mut tops_now = tops.to_vec();
    let mut kernel = k.clone();
    while kernel.dim() > 0 {
        if terms.len() > bound {
            return Resolution { terms, complete: false };
        }
        let free = FreeModule::new(alg, &tops_now);
        let gens = top(&free, &kernel);
        let new_tops: Vec<VertexId> = gens.iter().map(|(w, _)| *w).collect();
        let cover = FreeModule::new(alg, &new_tops);
        let coords = cover.coordinates();
        let n = alg.dim();
        let images: Vec<SparseVec> = coords
            .iter()
            .map(|&c| {
                let (i, b) = (c / n, c % n);
                free.mul_right(&gens[i].1, &unit(b))
            })
            .collect();
        let rows = tops_now.len() * n;
        let m = Matrix::from_sparse_columns(rows, &images);
        let mut next = Echelon::new();
        for v in m.nullspace() {
            let x: SparseVec =
                v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (coords[j], c)).collect();
            next.insert(&x);
        }
        terms.push(new_tops.clone());
        tops_now = new_tops;
        kernel = next;
    }
    Resolution { terms, complete: true }
}

/// Minimal projective resolution of the simple module at `v`.
pub fn projective_resolution(alg: &FdAlgebra, v: VertexId, bound: usize) -> Resolution {
    let tops = [v];
    let free = FreeModule::new(alg, &tops);
    let rad: Vec<SparseVec> =
        alg.quiver().arrows_into(v).map(|a| alg.arrow_image(a.id).clone()).filter(|x| !x.is_empty()).collect();
    let k = free.submodule(&rad);
    resolve_quotient(alg, &tops, &k, bound)
}

/// Largest projective dimension of a simple module.
pub fn global_dimension(alg: &FdAlgebra, bound: usize) -> GlobalDimension {
    let mut best = 0;
    for v in alg.vertices() {
        match projective_resolution(alg, v, bound).length() {
            Some(d) => best = best.max(d),
            None => return GlobalDimension::AboveBound(bound),
        }
    }
    GlobalDimension::Finite(best)
}

/// Resolution of `e_i A / e_i A e_F A` over `A`.
pub fn resolve_idempotent_quotient(alg: &FdAlgebra, i: VertexId, frozen: &BTreeSet<VertexId>, bound: usize) -> Resolution {
    let tops = [i];
    let free = FreeModule::new(alg, &tops);
    let gens: Vec<SparseVec> = alg
        .with_target(i)
        .into_iter()
        .filter(|&b| frozen.contains(&alg.path(b).source()))
        .map(unit)
        .collect();
    let k = free.submodule(&gens);
    resolve_quotient(alg, &tops, &k, bound)
}

/// The resolution of `e_i A / e_i A e_F A` has length at most 2 and its
/// terms after `P_0` lie in `add(e_F A)`.
pub fn relative_shape_holds(res: &Resolution, frozen: &BTreeSet<VertexId>) -> bool {
    res.length().is_some_and(|l| l <= 2) && res.terms.iter().skip(1).all(|t| t.iter().all(|v| frozen.contains(v)))
}
