//! Modules cut out of free modules `e_{v_1} A + ... + e_{v_k} A` over a
//! finite-dimensional algebra with a path basis.

use std::collections::{BTreeMap, VecDeque};

use num_traits::Zero;

use crate::algebra::FdAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{unit, Echelon, Matrix, SparseVec, TrackedEchelon};
use crate::quiver::VertexId;
use crate::rational::Rat;

use super::module::{hom_space, FdModule, ModuleMap};

/// `e_{tops[0]} A + ... + e_{tops[k-1]} A`. Coordinate `k * dim A + b` is
/// basis path `b` in summand `k`.
#[derive(Clone, Copy, Debug)]
pub struct FreeModule<'a> {
    pub alg: &'a FdAlgebra,
    pub tops: &'a [VertexId],
}

impl<'a> FreeModule<'a> {
    pub fn new(alg: &'a FdAlgebra, tops: &'a [VertexId]) -> Self {
        Self { alg, tops }
    }

    fn n(&self) -> usize {
        self.alg.dim()
    }

    pub fn generator(&self, k: usize) -> SparseVec {
        unit(k * self.n() + self.alg.idempotent(self.tops[k]))
    }

    /// Embeds an algebra element into summand `k`.
    pub fn embed(&self, k: usize, x: &SparseVec) -> SparseVec {
        x.iter().map(|(&b, c)| (k * self.n() + b, c.clone())).collect()
    }

    /// Source vertex of a coordinate.
    pub fn source(&self, c: usize) -> VertexId {
        self.alg.path(c % self.n()).source()
    }

    /// Coordinates spanning the free module, in order.
    pub fn coordinates(&self) -> Vec<usize> {
        let n = self.n();
        self.tops.iter().enumerate().flat_map(|(k, &v)| self.alg.with_target(v).into_iter().map(move |b| k * n + b)).collect()
    }

    pub fn mul_right(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let n = self.n();
        let mut parts: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&c, v) in x {
            parts.entry(c / n).or_default().insert(c % n, v.clone());
        }
        let mut out = SparseVec::new();
        for (k, part) in parts {
            for (b, v) in self.alg.mul(&part, y) {
                out.insert(k * n + b, v);
            }
        }
        out
    }

    /// `x e_w`.
    pub fn project(&self, x: &SparseVec, w: VertexId) -> SparseVec {
        x.iter().filter(|(&c, _)| self.source(c) == w).map(|(&c, v)| (c, v.clone())).collect()
    }

    /// Right submodule generated by `gens`.
    pub fn submodule(&self, gens: &[SparseVec]) -> Echelon {
        let arrows: Vec<SparseVec> = self.alg.quiver().arrows().iter().map(|a| self.alg.arrow_image(a.id).clone()).collect();
        let mut ech = Echelon::new();
        let mut queue: VecDeque<SparseVec> = gens.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            let Some((_, row)) = ech.insert_row(&x) else { continue };
            let row = row.clone();
            for a in &arrows {
                let y = self.mul_right(&row, a);
                if !y.is_empty() {
                    queue.push_back(y);
                }
            }
        }
        ech
    }

    /// `K J` for a submodule `K`, with `J` the arrow ideal.
    pub fn radical(&self, k: &Echelon) -> Echelon {
        let mut ech = Echelon::new();
        for row in k.basis() {
            for a in self.alg.quiver().arrows() {
                ech.insert(&self.mul_right(row, self.alg.arrow_image(a.id)));
            }
        }
        ech
    }

    /// `K e_w` as an echelon space.
    pub fn vertex_part(&self, k: &Echelon, w: VertexId) -> Echelon {
        let mut ech = Echelon::new();
        for row in k.basis() {
            ech.insert(&self.project(row, w));
        }
        ech
    }
}

#[derive(Clone, Debug)]
struct Piece {
    tracked: TrackedEchelon,
    rep_of_generator: BTreeMap<usize, usize>,
    reps: Vec<SparseVec>,
}

impl Piece {
    fn coordinates(&self, x: &SparseVec) -> Option<Vec<Rat>> {
        let combo = self.tracked.coordinates(x)?;
        let mut out = vec![Rat::zero(); self.reps.len()];
        for (g, c) in combo {
            if let Some(&r) = self.rep_of_generator.get(&g) {
                out[r] = c;
            }
        }
        Some(out)
    }
}

/// The module `U / V` for submodules `V <= U` of a free module, with an
/// explicit basis of representatives at every vertex.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: FdModule,
    tops: Vec<VertexId>,
    pieces: BTreeMap<VertexId, Piece>,
}

impl Subquotient {
    pub fn new(alg: &FdAlgebra, tops: &[VertexId], u: &Echelon, v: &Echelon) -> Result<Self> {
        let free = FreeModule::new(alg, tops);
        if v.basis().any(|row| !u.contains(row)) {
            return Err(Error::DimensionMismatch("V is not contained in U".into()));
        }
        let mut pieces = BTreeMap::new();
        for w in alg.vertices() {
            let mut tracked = TrackedEchelon::new();
            let mut gen = 0;
            for row in free.vertex_part(v, w).basis() {
                tracked.push(row);
                gen += 1;
            }
            let mut rep_of_generator = BTreeMap::new();
            let mut reps = Vec::new();
            for row in free.vertex_part(u, w).basis() {
                if tracked.push(row) {
                    rep_of_generator.insert(gen, reps.len());
                    reps.push(row.clone());
                }
                gen += 1;
            }
            pieces.insert(w, Piece { tracked, rep_of_generator, reps });
        }
        let q = alg.quiver();
        let dims = pieces.iter().map(|(&w, p)| (w, p.reps.len())).collect();
        let mut mats = BTreeMap::new();
        for a in q.arrows() {
            let (src, tgt) = (&pieces[&a.src], &pieces[&a.tgt]);
            let cols: Vec<SparseVec> = tgt
                .reps
                .iter()
                .map(|x| {
                    let y = free.mul_right(x, alg.arrow_image(a.id));
                    let c = src.coordinates(&y).expect("U is a submodule");
                    c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
                })
                .collect();
            mats.insert(a.id, Matrix::from_sparse_columns(src.reps.len(), &cols));
        }
        let grading = q.degree_map().map(|deg| {
            let degs = alg.degrees(&deg);
            let n = alg.dim();
            pieces
                .iter()
                .map(|(&w, p)| (w, p.reps.iter().map(|x| degs[*x.last_key_value().unwrap().0 % n]).collect()))
                .collect()
        });
        let module = FdModule::new(q.clone(), dims, mats, grading)?;
        Ok(Self { module, tops: tops.to_vec(), pieces })
    }

    /// Submodule of `e_v A` generated by `gens`, modulo the submodule
    /// generated by `kill`.
    pub fn cyclic(alg: &FdAlgebra, v: VertexId, gens: &[SparseVec], kill: &[SparseVec]) -> Result<Self> {
        let tops = [v];
        let free = FreeModule::new(alg, &tops);
        let u = free.submodule(gens);
        let k = free.submodule(kill);
        Self::new(alg, &tops, &u, &k)
    }

    /// `e_v A`.
    pub fn projective(alg: &FdAlgebra, v: VertexId) -> Result<Self> {
        Self::cyclic(alg, v, &[unit(alg.idempotent(v))], &[])
    }

    /// `e_v A / e_v J`.
    pub fn simple(alg: &FdAlgebra, v: VertexId) -> Result<Self> {
        let rad: Vec<SparseVec> =
            alg.quiver().arrows_into(v).map(|a| alg.arrow_image(a.id).clone()).filter(|x| !x.is_empty()).collect();
        Self::cyclic(alg, v, &[unit(alg.idempotent(v))], &rad)
    }

    pub fn tops(&self) -> &[VertexId] {
        &self.tops
    }

    /// Vertex and coordinates of an element `x = x e_w` of the ambient free
    /// module lying in `U`.
    pub fn element(&self, alg: &FdAlgebra, x: &SparseVec) -> Result<(VertexId, Vec<Rat>)> {
        let n = alg.dim();
        let mut sources = x.keys().map(|&c| alg.path(c % n).source());
        let Some(w) = sources.next() else {
            return Err(Error::DimensionMismatch("zero element has no vertex".into()));
        };
        if sources.any(|s| s != w) {
            return Err(Error::DimensionMismatch("element is not homogeneous in vertices".into()));
        }
        let c = self.pieces[&w].coordinates(x).ok_or_else(|| Error::DimensionMismatch("element outside the module".into()))?;
        Ok((w, c))
    }

    /// Ambient representative of basis vector `k` at vertex `w`.
    pub fn representative(&self, w: VertexId, k: usize) -> &SparseVec {
        &self.pieces[&w].reps[k]
    }
}

/// The unique homomorphism `M -> N` sending each `x` to `y` for the given
/// pairs; `Err` when there is none or it is not unique.
pub fn map_from_images(
    alg: &FdAlgebra,
    m: &Subquotient,
    n: &Subquotient,
    images: &[(SparseVec, SparseVec)],
) -> Result<ModuleMap> {
    let basis = hom_space(&m.module, &n.module, None);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (x, y) in images {
        let (w, cx) = m.element(alg, x)?;
        let cy = if y.is_empty() { vec![Rat::zero(); n.module.dim_at(w)] } else {
            let (w2, cy) = n.element(alg, y)?;
            if w2 != w {
                return Err(Error::DimensionMismatch("image lies at a different vertex".into()));
            }
            cy
        };
        let cols: Vec<Vec<Rat>> = basis.iter().map(|h| h.block(w).apply(&cx)).collect();
        for (r, target) in cy.iter().enumerate() {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(-target.clone());
            rows.push(row);
        }
    }
    let r = basis.len();
    let sols = if rows.is_empty() {
        let mut sols = Vec::new();
        for k in 0..=r {
            let mut x = vec![Rat::zero(); r + 1];
            x[k] = Rat::from_integer(1.into());
            sols.push(x);
        }
        sols
    } else {
        Matrix::from_rows(rows).nullspace()
    };
    let homogeneous = sols.iter().filter(|x| x[r].is_zero()).count();
    let Some(sol) = sols.iter().find(|x| !x[r].is_zero()) else {
        return Err(Error::DimensionMismatch("no homomorphism with the prescribed images".into()));
    };
    if homogeneous > 0 || sols.len() > 1 {
        return Err(Error::DimensionMismatch("prescribed images do not determine the homomorphism".into()));
    }
    let scale = sol[r].recip();
    let mut f = ModuleMap::zero(&m.module, &n.module);
    for (h, c) in basis.iter().zip(sol) {
        if !c.is_zero() {
            f = f.add(&h.scale(&(c * &scale)));
        }
    }
    Ok(f)
}
