//! Preprojective algebras, the ideals `I_w` and the modules `T_w`.

use serde::Serialize;

use crate::algebra::{AlgebraPresentation, FdAlgebra};
use crate::coxeter::{CoxeterSystem, Graph};
use crate::error::{Error, Result};
use crate::linalg::{unit, Echelon, SparseVec};
use crate::path::PathElement;
use crate::quiver::{Arrow, ArrowId, Quiver, VertexId};
use crate::rational::int;

use super::algmodule::Subquotient;
use super::module::FdModule;

/// Double quiver of an acyclic quiver with the relations `sum a a* - a* a`
/// split by vertex. Original arrows get degree 0, the new arrows `a*`
/// degree 1 and ids above every existing id.
pub fn preprojective_presentation(q: &Quiver) -> Result<AlgebraPresentation> {
    if q.has_oriented_cycle() {
        return Err(Error::OrientedCycle);
    }
    let base = q.max_arrow_id().max(0);
    let mut arrows: Vec<Arrow> = q.arrows().iter().map(|a| Arrow { deg: Some(0), ..a.clone() }).collect();
    let star = |a: &Arrow, k: usize| -> Arrow {
        Arrow { id: base + k as ArrowId + 1, src: a.tgt, tgt: a.src, name: Some(format!("{}*", a.label())), deg: Some(1) }
    };
    let stars: Vec<(ArrowId, ArrowId)> = q.arrows().iter().enumerate().map(|(k, a)| (a.id, star(a, k).id)).collect();
    arrows.extend(q.arrows().iter().enumerate().map(|(k, a)| star(a, k)));
    let double = Quiver::new(q.vertices().iter().copied(), arrows)?;
    let mut relations = Vec::new();
    for &v in q.vertices() {
        let mut r = PathElement::zero();
        for &(a, s) in &stars {
            let arrow = q.arrow(a)?;
            if arrow.tgt == v {
                r.add_term(double.path(&[a, s])?, int(1));
            }
            if arrow.src == v {
                r.add_term(double.path(&[s, a])?, int(-1));
            }
        }
        if !r.is_zero() {
            relations.push(r);
        }
    }
    AlgebraPresentation::new(double, relations)
}

/// `Lambda / I_w` computed inside a length truncation of `Lambda`.
#[derive(Clone, Debug)]
pub struct LambdaW {
    pub presentation: AlgebraPresentation,
    pub algebra: FdAlgebra,
    /// Truncation length at which the certificate was found.
    pub truncation: usize,
    /// Every path of this length lies in `I_w`.
    pub vanishing_length: usize,
    /// `Lambda / I_{w_p}` for `p = 1..l`.
    pub prefixes: Vec<FdAlgebra>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaReport {
    pub dim: usize,
    pub truncation: usize,
    pub vanishing_length: usize,
    pub prefix_dims: Vec<usize>,
}

impl LambdaW {
    pub fn report(&self) -> LambdaReport {
        LambdaReport {
            dim: self.algebra.dim(),
            truncation: self.truncation,
            vanishing_length: self.vanishing_length,
            prefix_dims: self.prefixes.iter().map(FdAlgebra::dim).collect(),
        }
    }
}

fn check_word(orientation: &Quiver, word: &[VertexId]) -> Result<()> {
    if let Some(&v) = word.iter().find(|v| !orientation.has_vertex(**v)) {
        return Err(Error::UnknownLetter(v));
    }
    if !CoxeterSystem::new(&Graph::of_quiver(orientation)).is_reduced(word)? {
        return Err(Error::NotReduced);
    }
    Ok(())
}

/// Ideals `I_{w_1}, ..., I_{w_l}` inside `lam`, where
/// `I_{w_p} = Lambda (1 - e_{u_p}) I_{w_{p-1}}`.
fn prefix_ideals(lam: &FdAlgebra, word: &[VertexId]) -> Vec<Echelon> {
    let mut current: Vec<SparseVec> = (0..lam.dim()).map(unit).collect();
    let mut out = Vec::new();
    for &u in word {
        let mut gens = Vec::new();
        for v in lam.vertices().filter(|&v| v != u) {
            let e = unit(lam.idempotent(v));
            for y in &current {
                let g = lam.mul(&e, y);
                if !g.is_empty() {
                    gens.push(g);
                }
            }
        }
        let ideal = lam.left_ideal(&gens);
        current = ideal.basis().cloned().collect();
        out.push(ideal);
    }
    out
}

/// Smallest length `L < n` whose paths all lie in `ideal`.
fn vanishing_layer(lam: &FdAlgebra, ideal: &Echelon, n: usize) -> Option<usize> {
    (0..n).find(|&len| (0..lam.dim()).filter(|&i| lam.path(i).len() == len).all(|i| ideal.is_pivot(i)))
}

/// `Lambda_w = Lambda / I_w` for a reduced word, certified by a full layer
/// of paths of length `L <= N - 1` lying in the ideal computed in the
/// truncation at `N`.
pub fn lambda_w(orientation: &Quiver, word: &[VertexId], max_len: usize) -> Result<LambdaW> {
    check_word(orientation, word)?;
    let presentation = preprojective_presentation(orientation)?;
    let mut n = word.len() + 1;
    while n <= max_len {
        let lam = presentation.truncated(n)?;
        let ideals = prefix_ideals(&lam, word);
        // the empty word gives the unit ideal
        let last = match ideals.last() {
            Some(i) => i.clone(),
            None => lam.two_sided_ideal(&lam.vertices().map(|v| unit(lam.idempotent(v))).collect::<Vec<_>>()),
        };
        if let Some(len) = vanishing_layer(&lam, &last, n) {
            let prefixes = ideals.iter().map(|i| lam.quotient(i)).collect();
            let algebra = lam.quotient(&last);
            return Ok(LambdaW { presentation, algebra, truncation: n, vanishing_length: len, prefixes });
        }
        n += 1;
    }
    Err(Error::NotStabilized(max_len))
}

/// The summands `T_p = e_{u_p} (Lambda / I_{w_p})`, graded with tops in
/// degree 0.
pub fn tw_summands(orientation: &Quiver, word: &[VertexId], max_len: usize) -> Result<Vec<FdModule>> {
    let lw = lambda_w(orientation, word, max_len)?;
    tw_from(&lw, word)
}

pub fn tw_from(lw: &LambdaW, word: &[VertexId]) -> Result<Vec<FdModule>> {
    word.iter().zip(&lw.prefixes).map(|(&u, alg)| Ok(Subquotient::projective(alg, u)?.module)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_presentation() {
        let q = Quiver::from_named([1, 2], &[("a", 1, 2)]).unwrap();
        let p = preprojective_presentation(&q).unwrap();
        let rels: Vec<String> = p.relations.iter().map(|r| r.display(&p.quiver)).collect();
        assert_eq!(rels, ["-a* a", "a a*"]);
        assert_eq!(p.quiver.arrow_by_name("a*").unwrap().deg, Some(1));
        assert_eq!(p.quotient_basis(8).unwrap().dim(), 4);
    }

    #[test]
    fn trivial_and_cyclic() {
        let q = Quiver::new([1], vec![]).unwrap();
        let p = preprojective_presentation(&q).unwrap();
        assert!(p.relations.is_empty());
        assert_eq!(p.quotient_basis(4).unwrap().dim(), 1);
        let c = Quiver::from_named([1, 2], &[("a", 1, 2), ("b", 2, 1)]).unwrap();
        assert_eq!(preprojective_presentation(&c).unwrap_err(), Error::OrientedCycle);
    }

    #[test]
    fn a3_dimension() {
        let q = Graph::path(3).orient(|i, j| i > j);
        let p = preprojective_presentation(&q).unwrap();
        assert_eq!(p.quotient_basis(16).unwrap().dim(), 10);
    }

    #[test]
    fn lambda_of_single_reflection() {
        let q = Graph::triangle().orient(|i, j| i > j);
        let lw = lambda_w(&q, &[1], 16).unwrap();
        assert_eq!(lw.algebra.dim(), 1);
        assert_eq!(lambda_w(&q, &[1, 1], 16).unwrap_err(), Error::NotReduced);
    }

    #[test]
    fn longest_a3_word() {
        let q = Graph::path(3).orient(|i, j| i > j);
        let lw = lambda_w(&q, &[1, 2, 3, 1, 2, 1], 16).unwrap();
        assert_eq!(lw.algebra.dim(), 10);
        let t = tw_from(&lw, &[1, 2, 3, 1, 2, 1]).unwrap();
        let dims: Vec<usize> = t.iter().map(FdModule::total_dim).collect();
        assert_eq!(dims, [1, 2, 3, 2, 4, 3]);
    }
}
