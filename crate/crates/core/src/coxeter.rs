//! Coxeter groups of finite graphs through their geometric representation.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{Arrow, Quiver, VertexId};
use crate::rational::{frac, int, Rat};

/// A word `s_{u_1} ... s_{u_l}` stored as its letters.
pub type Word = Vec<VertexId>;

/// Undirected multigraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    pub vertices: BTreeSet<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl Graph {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let vertices: BTreeSet<_> = vertices.into_iter().collect();
        for &(i, j) in &edges {
            for v in [i, j] {
                if !vertices.contains(&v) {
                    return Err(Error::UnknownVertex(v));
                }
            }
            if i == j {
                return Err(Error::SchemaViolation(format!("loop at vertex {i}")));
            }
        }
        Ok(Self { vertices, edges })
    }

    pub fn path(n: i64) -> Self {
        Self::new(1..=n, (1..n).map(|i| (i, i + 1)).collect()).unwrap()
    }

    pub fn triangle() -> Self {
        Self::new(1..=3, vec![(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    /// Underlying graph of a quiver.
    pub fn of_quiver(q: &Quiver) -> Self {
        Self { vertices: q.vertices().clone(), edges: q.arrows().iter().map(|a| (a.src, a.tgt)).collect() }
    }

    pub fn edge_count(&self, i: VertexId, j: VertexId) -> usize {
        self.edges.iter().filter(|&&(a, b)| (a, b) == (i, j) || (a, b) == (j, i)).count()
    }

    pub fn has_parallel_edges(&self) -> bool {
        self.edges.iter().any(|&(i, j)| self.edge_count(i, j) > 1)
    }

    /// Full subgraph on `keep`.
    pub fn restrict(&self, keep: &BTreeSet<VertexId>) -> Graph {
        Self {
            vertices: self.vertices.intersection(keep).copied().collect(),
            edges: self.edges.iter().copied().filter(|(i, j)| keep.contains(i) && keep.contains(j)).collect(),
        }
    }

    /// Orients every edge by `towards(i, j)`: true means `i -> j`. Arrows get
    /// ids `1..` in edge order.
    pub fn orient(&self, towards: impl Fn(VertexId, VertexId) -> bool) -> Quiver {
        let arrows = self
            .edges
            .iter()
            .zip(1..)
            .map(|(&(i, j), id)| if towards(i, j) { Arrow::new(id, i, j) } else { Arrow::new(id, j, i) })
            .collect();
        Quiver::new(self.vertices.iter().copied(), arrows).unwrap()
    }
}

/// Coxeter system with `m_ij` in `{2, 3, inf}` and its symmetric bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    vertices: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    /// `None` is `m_ij = inf`.
    m: Vec<Vec<Option<u32>>>,
    form: Vec<Vec<Rat>>,
    reflections: Vec<Matrix>,
}

impl CoxeterSystem {
    pub fn new(graph: &Graph) -> Self {
        let vertices: Vec<_> = graph.vertices.iter().copied().collect();
        let index = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let n = vertices.len();
        let mut m = vec![vec![Some(1); n]; n];
        let mut form = vec![vec![Rat::one(); n]; n];
        for (a, &i) in vertices.iter().enumerate() {
            for (b, &j) in vertices.iter().enumerate() {
                if a == b {
                    continue;
                }
                let (mij, bij) = match graph.edge_count(i, j) {
                    0 => (Some(2), Rat::zero()),
                    1 => (Some(3), frac(-1, 2)),
                    _ => (None, int(-1)),
                };
                m[a][b] = mij;
                form[a][b] = bij;
            }
        }
        let reflections = (0..n)
            .map(|i| {
                let mut s = Matrix::identity(n);
                for j in 0..n {
                    s[(i, j)] = &s[(i, j)] - int(2) * &form[i][j];
                }
                s
            })
            .collect();
        Self { vertices, index, m, form, reflections }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    /// `m_ij`, with `None` for infinity.
    pub fn m(&self, i: VertexId, j: VertexId) -> Option<u32> {
        self.m[self.index[&i]][self.index[&j]]
    }

    pub fn form(&self, i: VertexId, j: VertexId) -> &Rat {
        &self.form[self.index[&i]][self.index[&j]]
    }

    fn letter(&self, v: VertexId) -> Result<usize> {
        self.index.get(&v).copied().ok_or(Error::UnknownLetter(v))
    }

    fn letters(&self, word: &[VertexId]) -> Result<Vec<usize>> {
        word.iter().map(|&v| self.letter(v)).collect()
    }

    /// Simple reflection `s_v` in the basis of simple roots.
    pub fn reflection(&self, v: VertexId) -> Result<&Matrix> {
        Ok(&self.reflections[self.letter(v)?])
    }

    fn reflect(&self, i: usize, v: &mut [Rat]) {
        let c: Rat = (0..v.len()).map(|j| &self.form[i][j] * &v[j]).sum::<Rat>() * int(2);
        v[i] -= c;
    }

    /// Matrix of the element `s_{u_1} ... s_{u_l}`.
    pub fn matrix(&self, word: &[VertexId]) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.rank());
        for k in self.letters(word)? {
            acc = acc.mul(&self.reflections[k]);
        }
        Ok(acc)
    }

    /// The roots `s_{u_1} ... s_{u_{p-1}}(alpha_{u_p})` for every position `p`.
    pub fn prefix_roots(&self, word: &[VertexId]) -> Result<Vec<Vec<Rat>>> {
        let letters = self.letters(word)?;
        let n = self.rank();
        Ok((0..letters.len())
            .map(|p| {
                let mut v = vec![Rat::zero(); n];
                v[letters[p]] = Rat::one();
                for &k in letters[..p].iter().rev() {
                    self.reflect(k, &mut v);
                }
                v
            })
            .collect())
    }

    /// True iff every prefix root is positive.
    pub fn is_reduced(&self, word: &[VertexId]) -> Result<bool> {
        let roots = self.prefix_roots(word)?;
        for r in &roots {
            assert!(root_sign(r).is_some(), "root with mixed signs: {r:?}");
        }
        Ok(roots.iter().all(|r| root_sign(r) == Some(true)))
    }

    /// A reduced word for the same element, obtained by repeatedly deleting
    /// the pair of letters given by the exchange property.
    pub fn reduce_word(&self, word: &[VertexId]) -> Result<Word> {
        let mut letters = self.letters(word)?;
        'outer: loop {
            let n = self.rank();
            for p in 0..letters.len() {
                let mut gamma = vec![Rat::zero(); n];
                gamma[letters[p]] = Rat::one();
                let mut hit = None;
                for k in (0..p).rev() {
                    let i = letters[k];
                    let is_simple = gamma.iter().enumerate().all(|(j, c)| if j == i { c.is_one() } else { c.is_zero() });
                    if is_simple {
                        hit = Some(k);
                        break;
                    }
                    self.reflect(i, &mut gamma);
                }
                if let Some(k) = hit {
                    letters.remove(p);
                    letters.remove(k);
                    continue 'outer;
                }
            }
            return Ok(letters.into_iter().map(|k| self.vertices[k]).collect());
        }
    }

    pub fn elements_equal(&self, w1: &[VertexId], w2: &[VertexId]) -> Result<bool> {
        Ok(self.matrix(w1)? == self.matrix(w2)?)
    }

    /// Breadth-first enumeration; element `k` is represented by the
    /// shortlex-least reduced word reaching it.
    pub fn enumerate_group(&self, cap: usize) -> Result<Vec<Word>> {
        let n = self.rank();
        let mut seen: HashMap<Matrix, usize> = HashMap::new();
        let mut words: Vec<Word> = vec![Vec::new()];
        let mut queue = VecDeque::from([(Matrix::identity(n), 0usize)]);
        seen.insert(Matrix::identity(n), 0);
        while let Some((g, idx)) = queue.pop_front() {
            for (k, s) in self.reflections.iter().enumerate() {
                let h = g.mul(s);
                if seen.contains_key(&h) {
                    continue;
                }
                if words.len() == cap {
                    return Err(Error::GroupTooLarge(cap));
                }
                let mut w = words[idx].clone();
                w.push(self.vertices[k]);
                seen.insert(h.clone(), words.len());
                queue.push_back((h, words.len()));
                words.push(w);
            }
        }
        Ok(words)
    }

    /// Every word obtained from `word` by one braid move `s_i s_j s_i = s_j s_i s_j`
    /// or commutation `s_i s_j = s_j s_i`.
    pub fn braid_neighbours(&self, word: &[VertexId]) -> Vec<Word> {
        let mut out = BTreeSet::new();
        for p in 0..word.len() {
            if p + 1 < word.len() && word[p] != word[p + 1] && self.m(word[p], word[p + 1]) == Some(2) {
                let mut w = word.to_vec();
                w.swap(p, p + 1);
                out.insert(w);
            }
            if p + 2 < word.len()
                && word[p] == word[p + 2]
                && word[p] != word[p + 1]
                && self.m(word[p], word[p + 1]) == Some(3)
            {
                let mut w = word.to_vec();
                w[p] = word[p + 1];
                w[p + 1] = word[p];
                w[p + 2] = word[p + 1];
                out.insert(w);
            }
        }
        out.into_iter().collect()
    }
}

/// `Some(true)` for a nonzero vector with all coordinates at least zero,
/// `Some(false)` for all at most zero, `None` otherwise.
pub fn root_sign(v: &[Rat]) -> Option<bool> {
    let pos = v.iter().all(|c| !c.is_negative());
    let neg = v.iter().all(|c| !c.is_positive());
    match (pos, neg) {
        (true, false) => Some(true),
        (false, true) => Some(false),
        _ => None,
    }
}

/// Parses `"1,2,3"` (commas and/or whitespace) into a word.
pub fn parse_word(s: &str) -> Result<Word> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Error::SchemaViolation(format!("bad letter {t:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn systems() {
        let a3 = CoxeterSystem::new(&Graph::path(3));
        assert_eq!((a3.m(1, 2), a3.m(2, 3), a3.m(1, 3)), (Some(3), Some(3), Some(2)));
        assert_eq!(a3.form(1, 2), &frac(-1, 2));
        let tri = CoxeterSystem::new(&Graph::triangle());
        assert!(tri.vertices().iter().all(|&i| tri.vertices().iter().all(|&j| i == j || tri.m(i, j) == Some(3))));
        let kron = CoxeterSystem::new(&Graph::new([1, 2], vec![(1, 2), (1, 2)]).unwrap());
        assert_eq!(kron.m(1, 2), None);
        assert_eq!(kron.form(2, 1), &int(-1));
        let pt = CoxeterSystem::new(&Graph::path(1));
        assert_eq!(pt.enumerate_group(10).unwrap().len(), 2);
    }

    #[test]
    fn reducedness() {
        let a3 = CoxeterSystem::new(&Graph::path(3));
        assert!(a3.is_reduced(&[1, 2, 3, 1, 2, 1]).unwrap());
        assert!(!a3.is_reduced(&[1, 1]).unwrap());
        let tri = CoxeterSystem::new(&Graph::triangle());
        assert!(tri.is_reduced(&[1, 2, 3, 1, 3, 2, 1]).unwrap());
        assert!(matches!(a3.is_reduced(&[4]), Err(Error::UnknownLetter(4))));
    }

    #[test]
    fn reduction_and_equality() {
        let a2 = CoxeterSystem::new(&Graph::path(2));
        assert_eq!(a2.reduce_word(&[1, 1]).unwrap(), Vec::<i64>::new());
        let r = a2.reduce_word(&[1, 2, 1, 2]).unwrap();
        assert_eq!(r.len(), 2);
        assert!(a2.elements_equal(&r, &[2, 1]).unwrap());
        assert_eq!(a2.reduce_word(&[1, 2, 1]).unwrap(), [1, 2, 1]);
        assert!(a2.elements_equal(&[1, 2, 1], &[2, 1, 2]).unwrap());
        assert!(!a2.elements_equal(&[1], &[2]).unwrap());
        assert!(a2.elements_equal(&[], &[1, 1]).unwrap());
    }

    #[test]
    fn group_orders() {
        assert_eq!(CoxeterSystem::new(&Graph::path(2)).enumerate_group(100).unwrap().len(), 6);
        assert_eq!(CoxeterSystem::new(&Graph::path(3)).enumerate_group(100).unwrap().len(), 24);
        let tri = CoxeterSystem::new(&Graph::triangle());
        assert_eq!(tri.enumerate_group(100), Err(Error::GroupTooLarge(100)));
    }

    #[test]
    fn braid_moves() {
        let a3 = CoxeterSystem::new(&Graph::path(3));
        let n = a3.braid_neighbours(&[1, 2, 1, 3]);
        assert!(n.contains(&vec![2, 1, 2, 3]));
        assert!(n.contains(&vec![1, 2, 3, 1]));
        assert_eq!(parse_word("1, 2 3").unwrap(), [1, 2, 3]);
    }
}
