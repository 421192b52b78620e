//! Gabriel quiver of `End(T_1 + ... + T_m)` for pairwise non-isomorphic
//! summands with local endomorphism rings.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix, SparseVec};
use crate::quiver::{Arrow, Quiver, VertexId};
use crate::rational::Rat;

use super::module::{graded_hom, FdModule, ModuleMap};

/// Homogeneous basis of a space of maps, tagged by degree.
type Graded = Vec<(i64, ModuleMap)>;

fn sparse(f: &ModuleMap) -> SparseVec {
    f.flatten().into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

fn graded_basis(m: &FdModule, n: &FdModule) -> Graded {
    graded_hom(m, n).into_iter().flat_map(|(d, b)| b.into_iter().map(move |f| (d, f))).collect()
}

/// Radical of `End(M)` from the trace form `(x, y) -> tr(x y)`, degree by
/// degree. Returns the radical basis and the dimension of `End / rad`.
fn radical_of_end(end: &Graded) -> (Graded, usize) {
    let mut by_degree: BTreeMap<i64, Vec<&ModuleMap>> = BTreeMap::new();
    for (d, f) in end {
        by_degree.entry(*d).or_default().push(f);
    }
    let mut rad = Vec::new();
    let mut top = 0;
    for (&d, xs) in &by_degree {
        let ys = by_degree.get(&-d).cloned().unwrap_or_default();
        let rows: Vec<Vec<Rat>> = ys.iter().map(|y| xs.iter().map(|x| x.then(y).trace()).collect()).collect();
        let kernel: Vec<Vec<Rat>> = if rows.is_empty() || rows.iter().all(|r| r.iter().all(Zero::is_zero)) {
            (0..xs.len())
                .map(|k| (0..xs.len()).map(|j| if j == k { Rat::from_integer(1.into()) } else { Rat::zero() }).collect())
                .collect()
        } else {
            Matrix::from_rows(rows).nullspace()
        };
        top += xs.len() - kernel.len();
        for v in kernel {
            let mut f = ModuleMap::zero_like(xs[0]);
            for (c, x) in v.iter().zip(xs) {
                if !c.is_zero() {
                    f = f.add(&x.scale(c));
                }
            }
            rad.push((d, f));
        }
    }
    (rad, top)
}

/// `x` lies in the radical of `End(M)` iff `tr(x y) = 0` for every `y`.
fn in_radical(x: &ModuleMap, end: &Graded) -> bool {
    end.iter().all(|(_, y)| x.then(y).trace().is_zero())
}

/// The Gabriel quiver: one vertex per summand (numbered from 1), and
/// `dim (rad / rad^2)_d (T_i, T_j)` arrows `i -> j` of degree `d`, an arrow
/// `i -> j` standing for an irreducible map `T_i -> T_j`.
pub fn end_gabriel_quiver(summands: &[FdModule]) -> Result<Quiver> {
    let m = summands.len();
    let hom: Vec<Vec<Graded>> =
        (0..m).map(|i| (0..m).map(|j| graded_basis(&summands[i], &summands[j])).collect()).collect();
    let mut rad: Vec<Vec<Graded>> = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        let (r, top) = radical_of_end(&hom[i][i]);
        if top != 1 {
            return Err(Error::NotLocal(i + 1));
        }
        rad[i][i] = r;
    }
    for i in 0..m {
        for j in (i + 1)..m {
            for (_, f) in &hom[i][j] {
                for (_, g) in &hom[j][i] {
                    if !in_radical(&f.then(g), &hom[i][i]) {
                        return Err(Error::IsomorphicSummands(i + 1, j + 1));
                    }
                }
            }
            rad[i][j] = hom[i][j].clone();
            rad[j][i] = hom[j][i].clone();
        }
    }
    let mut arrows = Vec::new();
    let graded = summands.iter().all(|t| t.grading().is_some());
    for i in 0..m {
        for j in 0..m {
            let mut square: BTreeMap<i64, Echelon> = BTreeMap::new();
            for k in 0..m {
                for (d1, f) in &rad[i][k] {
                    for (d2, g) in &rad[k][j] {
                        let p = f.then(g);
                        if !p.is_zero() {
                            square.entry(d1 + d2).or_default().insert(&sparse(&p));
                        }
                    }
                }
            }
            let mut count: BTreeMap<i64, usize> = BTreeMap::new();
            for (d, _) in &rad[i][j] {
                *count.entry(*d).or_default() += 1;
            }
            for (d, c) in count {
                let sq = square.get(&d).map_or(0, Echelon::dim);
                for _ in sq..c {
                    let id = arrows.len() as i64 + 1;
                    let (s, t) = ((i + 1) as VertexId, (j + 1) as VertexId);
                    let mut a = Arrow::named(id, &format!("{s}>{t}"), s, t);
                    if graded {
                        a.deg = Some(u8::try_from(d).map_err(|_| {
                            Error::DimensionMismatch(format!("irreducible map {s}->{t} has degree {d}"))
                        })?);
                    }
                    arrows.push(a);
                }
            }
        }
    }
    Quiver::new((1..=m as VertexId).collect::<Vec<_>>(), arrows)
}

/// Sorted `(src, tgt, degree)` triples, for comparing quivers up to arrow
/// names.
pub fn graded_endpoints(q: &Quiver) -> Vec<(VertexId, VertexId, Option<u8>)> {
    let mut v: Vec<_> = q.arrows().iter().map(|a| (a.src, a.tgt, a.deg)).collect();
    v.sort_unstable();
    v
}
