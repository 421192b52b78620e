//! Finite-dimensional right modules given by matrices, their morphisms and
//! Hom spaces.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::path::{Path, PathElement};
use crate::quiver::{ArrowId, Quiver, VertexId};
use crate::rational::Rat;

/// A right module: vector space `M_v` per vertex and, for every arrow
/// `a: s -> t`, the action `M_t -> M_s` as a `dim M_s x dim M_t` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdModule {
    quiver: Quiver,
    dims: BTreeMap<VertexId, usize>,
    mats: BTreeMap<ArrowId, Matrix>,
    grading: Option<BTreeMap<VertexId, Vec<i64>>>,
}

impl FdModule {
    pub fn new(
        quiver: Quiver,
        dims: BTreeMap<VertexId, usize>,
        mats: BTreeMap<ArrowId, Matrix>,
        grading: Option<BTreeMap<VertexId, Vec<i64>>>,
    ) -> Result<Self> {
        let mut full = BTreeMap::new();
        for &v in quiver.vertices() {
            full.insert(v, dims.get(&v).copied().unwrap_or(0));
        }
        if let Some(v) = dims.keys().find(|v| !quiver.has_vertex(**v)) {
            return Err(Error::UnknownVertex(*v));
        }
        let mut all = BTreeMap::new();
        for a in quiver.arrows() {
            let shape = (full[&a.src], full[&a.tgt]);
            let m = mats.get(&a.id).cloned().unwrap_or_else(|| Matrix::zeros(shape.0, shape.1));
            if (m.rows(), m.cols()) != shape {
                return Err(Error::DimensionMismatch(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.label(),
                    shape.0,
                    shape.1,
                    m.rows(),
                    m.cols()
                )));
            }
            all.insert(a.id, m);
        }
        if let Some(a) = mats.keys().find(|a| quiver.arrow(**a).is_err()) {
            return Err(Error::UnknownArrow(*a));
        }
        let grading = match grading {
            Some(g) => {
                let mut full_g = BTreeMap::new();
                for (&v, &d) in &full {
                    let gv = g.get(&v).cloned().unwrap_or_default();
                    if gv.len() != d {
                        return Err(Error::DimensionMismatch(format!("grading at vertex {v} has {} entries", gv.len())));
                    }
                    full_g.insert(v, gv);
                }
                Some(full_g)
            }
            None => None,
        };
        let m = Self { quiver, dims: full, mats: all, grading };
        if let Some(a) = m.inhomogeneous_arrow() {
            return Err(Error::DimensionMismatch(format!("arrow {} does not act homogeneously", m.quiver.arrow(a)?.label())));
        }
        Ok(m)
    }

    pub fn zero(quiver: &Quiver) -> Self {
        Self::new(quiver.clone(), BTreeMap::new(), BTreeMap::new(), Some(BTreeMap::new())).unwrap()
    }

    pub fn simple(quiver: &Quiver, v: VertexId) -> Result<Self> {
        if !quiver.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        Self::new(quiver.clone(), [(v, 1)].into(), BTreeMap::new(), Some([(v, vec![0])].into()))
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &BTreeMap<VertexId, usize> {
        &self.dims
    }

    pub fn dim_at(&self, v: VertexId) -> usize {
        self.dims.get(&v).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn mat(&self, a: ArrowId) -> &Matrix {
        &self.mats[&a]
    }

    pub fn mats(&self) -> &BTreeMap<ArrowId, Matrix> {
        &self.mats
    }

    pub fn grading(&self) -> Option<&BTreeMap<VertexId, Vec<i64>>> {
        self.grading.as_ref()
    }

    /// Degree of basis vector `k` at vertex `v` (0 when ungraded).
    pub fn grade(&self, v: VertexId, k: usize) -> i64 {
        self.grading.as_ref().map_or(0, |g| g[&v][k])
    }

    fn arrow_degree(&self, a: ArrowId) -> i64 {
        self.quiver.arrow(a).ok().and_then(|x| x.deg).map_or(0, i64::from)
    }

    fn inhomogeneous_arrow(&self) -> Option<ArrowId> {
        self.grading.as_ref()?;
        self.quiver.arrows().iter().map(|a| a.id).find(|&id| {
            let a = self.quiver.arrow(id).unwrap();
            let m = &self.mats[&id];
            let d = self.arrow_degree(id);
            (0..m.rows()).any(|r| {
                (0..m.cols()).any(|c| !m[(r, c)].is_zero() && self.grade(a.src, r) != self.grade(a.tgt, c) + d)
            })
        })
    }

    /// Action matrix of a path: `x . a_1 ... a_k` is `M_{a_k} ... M_{a_1} x`.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.dim_at(p.target()));
        for a in p.arrows() {
            acc = self.mats[a].mul(&acc);
        }
        acc
    }

    pub fn element_matrix(&self, x: &PathElement) -> Option<Matrix> {
        let (s, t) = x.endpoints()?;
        let mut acc = Matrix::zeros(self.dim_at(s), self.dim_at(t));
        for (p, c) in x.terms() {
            acc = acc.add(&self.path_matrix(p).scale(c));
        }
        Some(acc)
    }

    /// Checks that every relation acts as zero.
    pub fn check_relations(&self, relations: &[PathElement]) -> Result<()> {
        for r in relations {
            for comp in r.components().values() {
                if let Some(m) = self.element_matrix(comp) {
                    if !m.is_zero() {
                        return Err(Error::RelationNotSatisfied(comp.display(&self.quiver)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Direct sum; the basis at each vertex is the concatenation of the
    /// summands' bases.
    pub fn direct_sum(parts: &[&FdModule]) -> Result<FdModule> {
        let Some(first) = parts.first() else {
            return Err(Error::DimensionMismatch("empty direct sum".into()));
        };
        let q = first.quiver.clone();
        let dims: BTreeMap<_, _> = q.vertices().iter().map(|&v| (v, parts.iter().map(|m| m.dim_at(v)).sum())).collect();
        let mut mats = BTreeMap::new();
        for a in q.arrows() {
            let rd: Vec<usize> = parts.iter().map(|m| m.dim_at(a.src)).collect();
            let cd: Vec<usize> = parts.iter().map(|m| m.dim_at(a.tgt)).collect();
            let blocks: Vec<Vec<Option<Matrix>>> = (0..parts.len())
                .map(|i| (0..parts.len()).map(|j| (i == j).then(|| parts[i].mat(a.id).clone())).collect())
                .collect();
            mats.insert(a.id, Matrix::from_blocks(&rd, &cd, &blocks));
        }
        let grading = parts.iter().all(|m| m.grading.is_some()).then(|| {
            q.vertices().iter().map(|&v| (v, parts.iter().flat_map(|m| m.grading.as_ref().unwrap()[&v].clone()).collect())).collect()
        });
        FdModule::new(q, dims, mats, grading)
    }

    /// Copy with every basis vector's degree shifted by `d`.
    pub fn shifted(&self, d: i64) -> FdModule {
        let mut m = self.clone();
        if let Some(g) = &mut m.grading {
            for v in g.values_mut() {
                for x in v {
                    *x += d;
                }
            }
        }
        m
    }

    /// Copy without the grading.
    pub fn ungraded(&self) -> FdModule {
        FdModule { grading: None, ..self.clone() }
    }
}

/// A family of linear maps `f_v: M_v -> N_v`, each `dim N_v x dim M_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub blocks: BTreeMap<VertexId, Matrix>,
}

impl ModuleMap {
    pub fn zero(m: &FdModule, n: &FdModule) -> Self {
        Self { blocks: m.quiver.vertices().iter().map(|&v| (v, Matrix::zeros(n.dim_at(v), m.dim_at(v)))).collect() }
    }

    /// Zero map with the block shapes of `f`.
    pub fn zero_like(f: &ModuleMap) -> ModuleMap {
        ModuleMap { blocks: f.blocks.iter().map(|(v, b)| (*v, Matrix::zeros(b.rows(), b.cols()))).collect() }
    }

    pub fn identity(m: &FdModule) -> Self {
        Self { blocks: m.quiver.vertices().iter().map(|&v| (v, Matrix::identity(m.dim_at(v)))).collect() }
    }

    pub fn block(&self, v: VertexId) -> &Matrix {
        &self.blocks[&v]
    }

    /// `g . self` (apply `self` first).
    pub fn then(&self, g: &ModuleMap) -> ModuleMap {
        Self { blocks: self.blocks.iter().map(|(v, f)| (*v, g.blocks[v].mul(f))).collect() }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        Self { blocks: self.blocks.iter().map(|(v, f)| (*v, f.add(&other.blocks[v]))).collect() }
    }

    pub fn scale(&self, c: &Rat) -> ModuleMap {
        Self { blocks: self.blocks.iter().map(|(v, f)| (*v, f.scale(c))).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Matrix::is_zero)
    }

    pub fn trace(&self) -> Rat {
        self.blocks.values().map(|m| (0..m.rows().min(m.cols())).map(|i| m[(i, i)].clone()).sum::<Rat>()).sum()
    }

    pub fn rank(&self) -> usize {
        self.blocks.values().map(Matrix::rank).sum()
    }

    /// Entries of all blocks in vertex order, as one flat vector.
    pub fn flatten(&self) -> Vec<Rat> {
        self.blocks.values().flat_map(|m| (0..m.rows()).flat_map(move |r| m.row_vec(r))).collect()
    }

    pub fn is_homomorphism(&self, m: &FdModule, n: &FdModule) -> bool {
        let shapes_ok = m.quiver.vertices().iter().all(|v| {
            self.blocks.get(v).is_some_and(|b| b.rows() == n.dim_at(*v) && b.cols() == m.dim_at(*v))
        });
        shapes_ok
            && m.quiver.arrows().iter().all(|a| {
                self.blocks[&a.src].mul(m.mat(a.id)) == n.mat(a.id).mul(&self.blocks[&a.tgt])
            })
    }

    /// Block matrix of maps `parts[i][j]: M_j -> N_i` between direct sums.
    pub fn from_blocks(sources: &[&FdModule], targets: &[&FdModule], parts: &[Vec<Option<ModuleMap>>]) -> ModuleMap {
        let q = sources.first().or(targets.first()).expect("nonempty").quiver();
        let blocks = q
            .vertices()
            .iter()
            .map(|&v| {
                let rd: Vec<usize> = targets.iter().map(|n| n.dim_at(v)).collect();
                let cd: Vec<usize> = sources.iter().map(|m| m.dim_at(v)).collect();
                let b: Vec<Vec<Option<Matrix>>> =
                    parts.iter().map(|row| row.iter().map(|f| f.as_ref().map(|f| f.blocks[&v].clone())).collect()).collect();
                (v, Matrix::from_blocks(&rd, &cd, &b))
            })
            .collect();
        ModuleMap { blocks }
    }
}

/// Basis of `Hom(M, N)`; with `degree = Some(d)` only maps raising the
/// grading by exactly `d` (both modules must then be graded).
pub fn hom_space(m: &FdModule, n: &FdModule, degree: Option<i64>) -> Vec<ModuleMap> {
    let q = m.quiver();
    // unknown (v, r, c) is entry (r, c) of f_v
    let mut unknowns: BTreeMap<(VertexId, usize, usize), usize> = BTreeMap::new();
    for &v in q.vertices() {
        for r in 0..n.dim_at(v) {
            for c in 0..m.dim_at(v) {
                if degree.is_none_or(|d| n.grade(v, r) - m.grade(v, c) == d) {
                    let k = unknowns.len();
                    unknowns.insert((v, r, c), k);
                }
            }
        }
    }
    let nu = unknowns.len();
    if nu == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for a in q.arrows() {
        let (s, t) = (a.src, a.tgt);
        let (ma, na) = (m.mat(a.id), n.mat(a.id));
        // (f_s M_a - N_a f_t)[i][j] = 0
        for i in 0..n.dim_at(s) {
            for j in 0..m.dim_at(t) {
                let mut row = vec![Rat::zero(); nu];
                let mut any = false;
                for k in 0..m.dim_at(s) {
                    if let (Some(&u), false) = (unknowns.get(&(s, i, k)), ma[(k, j)].is_zero()) {
                        row[u] += &ma[(k, j)];
                        any = true;
                    }
                }
                for k in 0..n.dim_at(t) {
                    if let (Some(&u), false) = (unknowns.get(&(t, k, j)), na[(i, k)].is_zero()) {
                        row[u] -= &na[(i, k)];
                        any = true;
                    }
                }
                if any && row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let solutions = if rows.is_empty() {
        (0..nu)
            .map(|k| {
                let mut x = vec![Rat::zero(); nu];
                x[k] = Rat::from_integer(1.into());
                x
            })
            .collect()
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    solutions
        .into_iter()
        .map(|x| {
            let mut blocks: BTreeMap<VertexId, Matrix> =
                q.vertices().iter().map(|&v| (v, Matrix::zeros(n.dim_at(v), m.dim_at(v)))).collect();
            for (&(v, r, c), &k) in &unknowns {
                blocks.get_mut(&v).unwrap()[(r, c)] = x[k].clone();
            }
            ModuleMap { blocks }
        })
        .collect()
}

/// Degrees `d` for which `Hom(M, N)_d` can be nonzero.
pub fn candidate_degrees(m: &FdModule, n: &FdModule) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for &v in m.quiver().vertices() {
        for r in 0..n.dim_at(v) {
            for c in 0..m.dim_at(v) {
                out.insert(n.grade(v, r) - m.grade(v, c));
            }
        }
    }
    out
}

/// `Hom(M, N)` split into homogeneous pieces.
pub fn graded_hom(m: &FdModule, n: &FdModule) -> BTreeMap<i64, Vec<ModuleMap>> {
    candidate_degrees(m, n)
        .into_iter()
        .map(|d| (d, hom_space(m, n, Some(d))))
        .filter(|(_, b)| !b.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn a2() -> Quiver {
        Quiver::from_named([1, 2], &[("a", 1, 2)]).unwrap()
    }

    /// The projective `e_2 kQ` for `a: 1 -> 2`: basis e2 at 2, a at 1.
    fn p2() -> FdModule {
        let q = a2();
        let m = Matrix::from_rows(vec![vec![int(1)]]);
        FdModule::new(q, [(1, 1), (2, 1)].into(), [(1, m)].into(), None).unwrap()
    }

    #[test]
    fn schur_and_simple_homs() {
        let q = a2();
        let s1 = FdModule::simple(&q, 1).unwrap();
        let s2 = FdModule::simple(&q, 2).unwrap();
        assert_eq!(hom_space(&s1, &s1, None).len(), 1);
        assert!(hom_space(&s1, &s2, None).is_empty());
        // S_1 is the socle of P_2, S_2 its top
        assert_eq!(hom_space(&s1, &p2(), None).len(), 1);
        assert_eq!(hom_space(&p2(), &s2, None).len(), 1);
        assert!(hom_space(&p2(), &s1, None).is_empty());
    }

    #[test]
    fn shapes_are_checked() {
        let q = a2();
        let bad = FdModule::new(q, [(1, 2), (2, 1)].into(), [(1, Matrix::zeros(1, 1))].into(), None);
        assert!(matches!(bad, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn sums_and_maps() {
        let p = p2();
        let s = FdModule::direct_sum(&[&p, &p]).unwrap();
        assert_eq!(s.total_dim(), 4);
        assert_eq!(hom_space(&p, &s, None).len(), 2);
        let id = ModuleMap::identity(&p);
        assert!(id.is_homomorphism(&p, &p));
        assert_eq!(id.trace(), int(2));
        let f = ModuleMap::from_blocks(&[&p], &[&p, &p], &[vec![Some(id.clone())], vec![None]]);
        assert!(f.is_homomorphism(&p, &s));
        assert_eq!(f.rank(), 2);
    }

    #[test]
    fn relations_are_evaluated() {
        let q = Quiver::from_named([1], &[("x", 1, 1)]).unwrap();
        let nil = Matrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]);
        let m = FdModule::new(q.clone(), [(1, 2)].into(), [(1, nil)].into(), None).unwrap();
        let xx = PathElement::from_path(q.word("xx").unwrap());
        let x = PathElement::from_path(q.word("x").unwrap());
        assert!(m.check_relations(&[xx]).is_ok());
        assert!(matches!(m.check_relations(&[x]), Err(Error::RelationNotSatisfied(_))));
    }
}
