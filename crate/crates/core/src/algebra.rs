//! Algebras presented by a quiver with relations, and their
//! finite-dimensional quotients.
//!
//! The quotient is computed by length-bounded elimination: the two-sided
//! ideal generated by the relations is closed under multiplication by arrows
//! up to a length bound `N`, reduced to echelon form with leading terms in
//! degree-lexicographic order, and the result is accepted only when a whole
//! length layer consists of leading terms *and* the candidate quotient passes
//! an explicit algebra check (see [`AlgebraPresentation::quotient_basis`]).

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{add_scaled, unit, Echelon, SparseVec};
use crate::path::{Path, PathElement};
use crate::quiver::{ArrowId, Quiver, VertexId};
use crate::rational::Rat;

pub const DEFAULT_MAX_LEN: usize = 32;

type Terms = BTreeMap<Path, Rat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub quiver: Quiver,
    pub relations: Vec<PathElement>,
}

impl AlgebraPresentation {
    pub fn new(quiver: Quiver, relations: Vec<PathElement>) -> Result<Self> {
        for (k, r) in relations.iter().enumerate() {
            for (p, _) in r.terms() {
                if p.is_stationary() {
                    return Err(Error::InvalidRelation(format!("relation {k} has a stationary term")));
                }
                if quiver.path(p.arrows()).ok().as_ref() != Some(p) {
                    return Err(Error::InvalidRelation(format!("relation {k} uses a path outside the quiver")));
                }
            }
        }
        Ok(Self { quiver, relations })
    }

    pub fn free(quiver: Quiver) -> Self {
        Self { quiver, relations: Vec::new() }
    }

    /// Nonzero `(source, target)` components of all relations.
    pub fn components(&self) -> Vec<PathElement> {
        self.relations.iter().flat_map(|r| r.components().into_values()).collect()
    }

    pub fn is_length_homogeneous(&self) -> bool {
        self.components().iter().all(PathElement::is_length_homogeneous)
    }

    /// Finite basis and multiplication table of `kQ/I`.
    ///
    /// For increasing bounds `N` the ideal is closed up to length `N`; a
    /// candidate basis `S` (non-leading paths shorter than the first length
    /// `L` whose paths are all leading terms) always spans the quotient. It is
    /// accepted once the product `x * y = NF(xy)` on `S` is associative, kills
    /// every relation and fixes every element of `S`: then `S` is a basis.
    pub fn quotient_basis(&self, max_len: usize) -> Result<FdAlgebra> {
        let gens = self.components();
        let start = gens.iter().map(PathElement::max_len).max().unwrap_or(0).max(2);
        if start > max_len {
            return Err(Error::NotStabilized(max_len));
        }
        let mut closure = IdealClosure::new(&self.quiver, start);
        for g in gens {
            closure.push(g.into_map());
        }
        let mut bound = start;
        loop {
            closure.run();
            if let Some(layer) = closure.full_layer() {
                let alg = closure.candidate(layer);
                if alg.is_associative() && self.relations.iter().all(|r| alg.image(r).is_empty()) && alg.fixes_basis() {
                    return Ok(alg);
                }
            }
            if bound == max_len {
                return Err(Error::NotStabilized(max_len));
            }
            bound += 1;
            closure.raise(bound);
        }
    }

    pub fn dimension(&self, max_len: usize) -> Result<usize> {
        Ok(self.quotient_basis(max_len)?.dim())
    }

    /// `kQ/(I + J^{n+1})` for length-homogeneous relations, where `J` is the
    /// arrow ideal. Exact in every length up to `n`.
    pub fn truncated(&self, n: usize) -> Result<FdAlgebra> {
        let gens = self.components();
        if let Some(k) = gens.iter().position(|g| !g.is_length_homogeneous()) {
            return Err(Error::InvalidRelation(format!("component {k} is not length-homogeneous")));
        }
        let mut closure = IdealClosure::new(&self.quiver, n);
        for g in gens {
            if g.max_len() <= n {
                closure.push(g.into_map());
            }
        }
        closure.run();
        Ok(closure.truncated_algebra())
    }
}

/// Semi-echelon basis of a space of path combinations, keyed by leading path.
#[derive(Default)]
struct PathEchelon {
    rows: HashMap<Path, Terms>,
}

impl PathEchelon {
    fn is_pivot(&self, p: &Path) -> bool {
        self.rows.contains_key(p)
    }

    fn reduce(&self, mut work: Terms) -> Terms {
        let mut out = Terms::new();
        while let Some((p, c)) = work.pop_last() {
            match self.rows.get(&p) {
                Some(row) => {
                    for (q, x) in row.range(..&p) {
                        let e = work.entry(q.clone()).or_insert_with(Rat::zero);
                        *e -= x * &c;
                        if e.is_zero() {
                            work.remove(q);
                        }
                    }
                }
                None => {
                    out.insert(p, c);
                }
            }
        }
        out
    }

    fn insert(&mut self, x: Terms) -> Option<Terms> {
        let mut r = self.reduce(x);
        let (lead, c) = r.last_key_value()?;
        let (lead, inv) = (lead.clone(), c.recip());
        for v in r.values_mut() {
            *v *= &inv;
        }
        self.rows.insert(lead, r.clone());
        Some(r)
    }
}

/// Closure of a set of homogeneous-endpoint elements under left and right
/// multiplication by arrows, truncated at a length bound.
struct IdealClosure<'a> {
    quiver: &'a Quiver,
    arrow_paths: BTreeMap<ArrowId, Path>,
    ech: PathEchelon,
    bound: usize,
    queue: VecDeque<Terms>,
    /// Rows whose products were skipped because they would exceed `bound`.
    deferred: Vec<Terms>,
}

impl<'a> IdealClosure<'a> {
    fn new(quiver: &'a Quiver, bound: usize) -> Self {
        let arrow_paths = quiver.arrows().iter().map(|a| (a.id, quiver.path(&[a.id]).unwrap())).collect();
        Self { quiver, arrow_paths, ech: PathEchelon::default(), bound, queue: VecDeque::new(), deferred: Vec::new() }
    }

    fn push(&mut self, x: Terms) {
        if !x.is_empty() {
            self.queue.push_back(x);
        }
    }

    fn run(&mut self) {
        while let Some(x) = self.queue.pop_front() {
            let Some(row) = self.ech.insert(x) else { continue };
            let len = row.last_key_value().unwrap().0.len();
            if len >= self.bound {
                self.deferred.push(row);
            } else {
                self.expand(&row);
            }
        }
    }

    fn expand(&mut self, row: &Terms) {
        let first = row.keys().next().unwrap();
        let (s, t) = (first.source(), first.target());
        let mut products = Vec::new();
        for a in self.quiver.arrows() {
            let ap = &self.arrow_paths[&a.id];
            if a.src == t {
                products.push(row.iter().map(|(p, c)| (ap.compose(p).unwrap(), c.clone())).collect());
            }
            if a.tgt == s {
                products.push(row.iter().map(|(p, c)| (p.compose(ap).unwrap(), c.clone())).collect());
            }
        }
        self.queue.extend(products);
    }

    fn raise(&mut self, bound: usize) {
        self.bound = bound;
        for row in std::mem::take(&mut self.deferred) {
            self.expand(&row);
        }
    }

    /// Non-leading paths layer by layer, up to `limit` (inclusive). A
    /// non-leading path has a non-leading right factor, so extending the
    /// previous layer on the left finds all of them.
    fn non_pivot_layers(&self, limit: usize) -> Vec<Vec<Path>> {
        let mut layers = vec![self.quiver.vertices().iter().map(|&v| Path::stationary(v)).collect::<Vec<_>>()];
        for _ in 1..=limit {
            let prev = layers.last().unwrap();
            let mut next = Vec::new();
            for p in prev {
                for a in self.quiver.arrows_from(p.target()) {
                    let ap = self.arrow_paths[&a.id].compose(p).unwrap();
                    if !self.ech.is_pivot(&ap) {
                        next.push(ap);
                    }
                }
            }
            let done = next.is_empty();
            layers.push(next);
            if done {
                break;
            }
        }
        layers
    }

    /// Smallest `L <= bound` such that every path of length `L` is leading.
    fn full_layer(&self) -> Option<usize> {
        let layers = self.non_pivot_layers(self.bound);
        layers.iter().position(Vec::is_empty)
    }

    fn candidate(&self, layer: usize) -> FdAlgebra {
        let layers = self.non_pivot_layers(layer);
        let mut basis: Vec<Path> = layers.into_iter().take(layer).flatten().collect();
        basis.sort();
        let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut nf = NormalForm { quiver: self.quiver, ech: &self.ech, index: &index, layer, bound: self.bound, memo: HashMap::new() };
        let mut table = HashMap::new();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                if let Some(xy) = x.compose(y) {
                    table.insert((i, j), nf.of(&xy));
                }
            }
        }
        let arrow_images = self.arrow_paths.iter().map(|(&a, p)| (a, nf.of(p))).collect();
        FdAlgebra::assemble(self.quiver.clone(), basis, table, arrow_images, None)
    }

    fn truncated_algebra(&self) -> FdAlgebra {
        let mut basis: Vec<Path> = self.non_pivot_layers(self.bound).into_iter().flatten().collect();
        basis.sort();
        let index: HashMap<Path, usize> = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let reduce = |p: &Path| -> SparseVec {
            if let Some(&i) = index.get(p) {
                return unit(i);
            }
            let r = self.ech.reduce(Terms::from([(p.clone(), Rat::one())]));
            r.into_iter().map(|(q, c)| (index[&q], c)).collect()
        };
        let mut table = HashMap::new();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                if let Some(xy) = x.compose(y) {
                    let v = if xy.len() > self.bound { SparseVec::new() } else { reduce(&xy) };
                    table.insert((i, j), v);
                }
            }
        }
        let arrow_images = self
            .arrow_paths
            .iter()
            .map(|(&a, p)| (a, if self.bound == 0 { SparseVec::new() } else { reduce(p) }))
            .collect();
        FdAlgebra::assemble(self.quiver.clone(), basis, table, arrow_images, Some(self.bound))
    }
}

/// Normal forms of paths in terms of the candidate basis. Paths up to the
/// closure bound reduce directly; longer ones split off their first `layer`
/// arrows, which reduce to strictly shorter paths.
struct NormalForm<'a> {
    quiver: &'a Quiver,
    ech: &'a PathEchelon,
    index: &'a HashMap<Path, usize>,
    layer: usize,
    bound: usize,
    memo: HashMap<Path, SparseVec>,
}

impl NormalForm<'_> {
    fn of(&mut self, p: &Path) -> SparseVec {
        if let Some(&i) = self.index.get(p) {
            return unit(i);
        }
        if let Some(v) = self.memo.get(p) {
            return v.clone();
        }
        let mut out = SparseVec::new();
        if p.len() <= self.bound {
            for (q, c) in self.ech.reduce(Terms::from([(p.clone(), Rat::one())])) {
                // every non-leading path of length <= bound lies in the basis
                out.insert(self.index[&q], c);
            }
        } else {
            let (head, tail) = (p.slice(self.quiver, 0..self.layer), p.slice(self.quiver, self.layer..p.len()));
            for (q, c) in self.ech.reduce(Terms::from([(head, Rat::one())])) {
                let v = self.of(&q.compose(&tail).unwrap());
                add_scaled(&mut out, &v, &c);
            }
        }
        self.memo.insert(p.clone(), out.clone());
        out
    }
}

/// A finite-dimensional algebra with a basis of paths and a full
/// multiplication table on composable pairs.
#[derive(Clone, Debug)]
pub struct FdAlgebra {
    quiver: Quiver,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    table: HashMap<(usize, usize), SparseVec>,
    arrow_images: BTreeMap<ArrowId, SparseVec>,
    truncation: Option<usize>,
}

impl FdAlgebra {
    fn assemble(
        quiver: Quiver,
        basis: Vec<Path>,
        table: HashMap<(usize, usize), SparseVec>,
        arrow_images: BTreeMap<ArrowId, SparseVec>,
        truncation: Option<usize>,
    ) -> Self {
        let index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Self { quiver, basis, index, table, arrow_images, truncation }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Length bound when the algebra is `kQ/(I + J^{n+1})`.
    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn idempotent(&self, v: VertexId) -> usize {
        self.index[&Path::stationary(v)]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.quiver.vertices().iter().copied()
    }

    pub fn arrow_image(&self, a: ArrowId) -> &SparseVec {
        &self.arrow_images[&a]
    }

    /// Product of basis elements `i * j` (zero when not composable).
    pub fn product(&self, i: usize, j: usize) -> SparseVec {
        self.table.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in x {
            for (&j, b) in y {
                if let Some(v) = self.table.get(&(i, j)) {
                    add_scaled(&mut out, v, &(a * b));
                }
            }
        }
        out
    }

    /// Image of a path under the algebra map `kQ -> self`.
    pub fn image_of_path(&self, p: &Path) -> SparseVec {
        if let Some(&i) = self.index.get(p) {
            return unit(i);
        }
        let mut arrows = p.arrows().iter().rev();
        let Some(first) = arrows.next() else {
            return unit(self.idempotent(p.source()));
        };
        let mut acc = self.arrow_images[first].clone();
        for a in arrows {
            if acc.is_empty() {
                break;
            }
            acc = self.mul(&self.arrow_images[a], &acc);
        }
        acc
    }

    pub fn image(&self, x: &PathElement) -> SparseVec {
        let mut out = SparseVec::new();
        for (p, c) in x.terms() {
            add_scaled(&mut out, &self.image_of_path(p), c);
        }
        out
    }

    pub fn to_element(&self, v: &SparseVec) -> PathElement {
        PathElement::from_terms(v.iter().map(|(&i, c)| (c.clone(), self.basis[i].clone())))
    }

    /// Sum of arrow degrees of each basis path.
    pub fn degrees(&self, deg: &BTreeMap<ArrowId, u8>) -> Vec<i64> {
        self.basis.iter().map(|p| p.arrows().iter().map(|a| i64::from(deg.get(a).copied().unwrap_or(0))).sum()).collect()
    }

    /// `(length, degree)` of every basis path; the degree is present when
    /// every arrow carries one.
    pub fn bigrading(&self) -> Vec<(usize, Option<i64>)> {
        let deg = self.quiver.degree_map();
        self.basis
            .iter()
            .map(|p| {
                let d = deg.as_ref().map(|m| p.arrows().iter().map(|a| i64::from(m[a])).sum());
                (p.len(), d)
            })
            .collect()
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for x in 0..n {
            for y in 0..n {
                let Some(xy) = self.table.get(&(x, y)) else { continue };
                for z in 0..n {
                    let Some(yz) = self.table.get(&(y, z)) else { continue };
                    if self.mul(xy, &unit(z)) != self.mul(&unit(x), yz) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every basis path is the product of its arrows' images.
    fn fixes_basis(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, p)| {
            let Some((&first, rest)) = p.arrows().split_last() else { return true };
            let mut acc = self.arrow_images[&first].clone();
            for a in rest.iter().rev() {
                acc = self.mul(&self.arrow_images[a], &acc);
            }
            acc == unit(i)
        })
    }

    /// Basis indices of paths with the given target (a basis of `e_v A`).
    pub fn with_target(&self, v: VertexId) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].target() == v).collect()
    }

    /// Closure of `gens` under left and right multiplication by arrows.
    pub fn two_sided_ideal(&self, gens: &[SparseVec]) -> Echelon {
        self.closure(gens, true, true)
    }

    /// Closure of `gens` under left multiplication by arrows.
    pub fn left_ideal(&self, gens: &[SparseVec]) -> Echelon {
        self.closure(gens, true, false)
    }

    /// Closure of `gens` under right multiplication by arrows.
    pub fn right_ideal(&self, gens: &[SparseVec]) -> Echelon {
        self.closure(gens, false, true)
    }

    fn closure(&self, gens: &[SparseVec], left: bool, right: bool) -> Echelon {
        let mut ech = Echelon::new();
        let mut queue: VecDeque<SparseVec> = gens.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            let Some((_, row)) = ech.insert_row(&x) else { continue };
            let row = row.clone();
            for img in self.arrow_images.values() {
                if left {
                    let v = self.mul(img, &row);
                    if !v.is_empty() {
                        queue.push_back(v);
                    }
                }
                if right {
                    let v = self.mul(&row, img);
                    if !v.is_empty() {
                        queue.push_back(v);
                    }
                }
            }
        }
        ech
    }

    /// Quotient by a two-sided ideal given in echelon form. The basis of the
    /// quotient is the set of non-pivot basis paths.
    pub fn quotient(&self, ideal: &Echelon) -> FdAlgebra {
        let keep: Vec<usize> = (0..self.dim()).filter(|&i| !ideal.is_pivot(i)).collect();
        let renum: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let project = |v: &SparseVec| -> SparseVec { ideal.reduce(v).into_iter().map(|(i, c)| (renum[&i], c)).collect() };
        let basis: Vec<Path> = keep.iter().map(|&i| self.basis[i].clone()).collect();
        let mut table = HashMap::new();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if let Some(v) = self.table.get(&(i, j)) {
                    table.insert((a, b), project(v));
                }
            }
        }
        let arrow_images = self.arrow_images.iter().map(|(&a, v)| (a, project(v))).collect();
        FdAlgebra::assemble(self.quiver.clone(), basis, table, arrow_images, self.truncation)
    }

    /// The ideal `A e_F A` for a vertex set `F`.
    pub fn idempotent_ideal(&self, vertices: &BTreeSet<VertexId>) -> Echelon {
        let gens: Vec<SparseVec> = vertices.iter().map(|&v| unit(self.idempotent(v))).collect();
        self.two_sided_ideal(&gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn el(q: &Quiver, terms: &[(i64, &str)]) -> PathElement {
        PathElement::from_terms(terms.iter().map(|&(c, w)| (int(c), q.word(w).unwrap())))
    }

    #[test]
    fn a3_path_algebra() {
        let q = Quiver::from_named([1, 2, 4], &[("c", 2, 1), ("h", 4, 2)]).unwrap();
        let alg = AlgebraPresentation::free(q.clone()).quotient_basis(DEFAULT_MAX_LEN).unwrap();
        assert_eq!(alg.dim(), 6);
        let names: Vec<String> = alg.basis().iter().map(|p| p.display(&q)).collect();
        assert_eq!(names, ["e1", "e2", "e4", "c", "h", "ch"]);
    }

    #[test]
    fn single_vertex_and_loop() {
        let q = Quiver::new([1], vec![]).unwrap();
        assert_eq!(AlgebraPresentation::free(q).dimension(8).unwrap(), 1);
        let q = Quiver::from_named([1], &[("x", 1, 1)]).unwrap();
        let pres = AlgebraPresentation::new(q.clone(), vec![el(&q, &[(1, "xx")])]).unwrap();
        assert_eq!(pres.dimension(8).unwrap(), 2);
        // without relations a loop generates an infinite-dimensional algebra
        assert_eq!(AlgebraPresentation::free(q).dimension(6), Err(Error::NotStabilized(6)));
    }

    #[test]
    fn preprojective_a2() {
        let q = Quiver::from_named([1, 2], &[("a", 1, 2), ("b", 2, 1)]).unwrap();
        // vertex components of a b - b a
        let pres = AlgebraPresentation::new(q.clone(), vec![el(&q, &[(1, "ab"), (-1, "ba")])]).unwrap();
        let alg = pres.quotient_basis(8).unwrap();
        assert_eq!(alg.dim(), 4);
        assert!(alg.is_associative());
    }

    #[test]
    fn non_homogeneous_relation() {
        // x^2 = x^3 on a loop: x^2 = x^3 = x^4 = ... and x^2 - x^3 in the
        // ideal; the quotient k[x]/(x^2 - x^3) has dimension 3.
        let q = Quiver::from_named([1], &[("x", 1, 1)]).unwrap();
        let pres = AlgebraPresentation::new(q.clone(), vec![el(&q, &[(1, "xx"), (-1, "xxx")])]).unwrap();
        let alg = pres.quotient_basis(16).unwrap();
        assert_eq!(alg.dim(), 3);
        let x2 = alg.image(&el(&q, &[(1, "xx")]));
        let x5 = alg.image(&el(&q, &[(1, "xxxxx")]));
        assert_eq!(x2, x5);
    }

    #[test]
    fn relation_with_rational_coefficients() {
        let q = Quiver::from_named([1, 2], &[("a", 1, 2), ("b", 1, 2), ("c", 2, 1)]).unwrap();
        let r1 = PathElement::from_terms([(frac(1, 2), q.word("ca").unwrap()), (frac(-1, 3), q.word("cb").unwrap())]);
        let r2 = el(&q, &[(1, "ac")]);
        let r3 = el(&q, &[(1, "bc")]);
        let pres = AlgebraPresentation::new(q.clone(), vec![r1.clone(), r2, r3]).unwrap();
        let alg = pres.quotient_basis(16).unwrap();
        assert!(alg.image(&r1).is_empty());
        // e1, e2, a, b, c, ca (cb is a multiple of ca)
        assert_eq!(alg.dim(), 6);
    }

    #[test]
    fn stationary_relation_rejected() {
        let q = Quiver::new([1], vec![]).unwrap();
        let r = PathElement::from_path(Path::stationary(1));
        assert!(matches!(AlgebraPresentation::new(q, vec![r]), Err(Error::InvalidRelation(_))));
    }

    #[test]
    fn truncation_of_free_algebra() {
        let q = Quiver::from_named([1, 2], &[("a", 1, 2), ("b", 2, 1)]).unwrap();
        let alg = AlgebraPresentation::free(q).truncated(3).unwrap();
        // 2 stationary + 2 per length
        assert_eq!(alg.dim(), 8);
        assert!(alg.is_associative());
    }
}
