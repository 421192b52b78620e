//! Exact linear algebra over the rationals: sparse vectors, incremental
//! echelon bases and small dense matrices.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::rational::Rat;

/// Sparse vector keyed by coordinate index. Never stores zeros.
pub type SparseVec = BTreeMap<usize, Rat>;

pub fn add_scaled(acc: &mut SparseVec, v: &SparseVec, c: &Rat) {
    if c.is_zero() {
        return;
    }
    for (&k, x) in v {
        let entry = acc.entry(k).or_insert_with(Rat::zero);
        *entry += x * c;
        if entry.is_zero() {
            acc.remove(&k);
        }
    }
}

pub fn scaled(v: &SparseVec, c: &Rat) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&k, x)| (k, x * c)).collect()
}

pub fn unit(k: usize) -> SparseVec {
    let mut v = SparseVec::new();
    v.insert(k, Rat::one());
    v
}

/// Incrementally built basis of a subspace in echelon form. Every stored row
/// is normalised so that its largest index (the pivot) has coefficient one.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, k: usize) -> bool {
        self.rows.contains_key(&k)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Residual of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut work = v.clone();
        let mut out = SparseVec::new();
        while let Some((k, c)) = work.pop_last() {
            match self.rows.get(&k) {
                Some(row) => {
                    // row[k] == 1 and every other key of row is below k
                    for (&j, x) in row.range(..k) {
                        let e = work.entry(j).or_insert_with(Rat::zero);
                        *e -= x * &c;
                        if e.is_zero() {
                            work.remove(&j);
                        }
                    }
                }
                None => {
                    out.insert(k, c);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns the new pivot, or `None` if `v` was
    /// already in the span.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let r = self.reduce(v);
        let (&k, lead) = r.last_key_value()?;
        let inv = lead.recip();
        let row = scaled(&r, &inv);
        self.rows.insert(k, row);
        Some(k)
    }

    /// Like [`Echelon::insert`] but also returns the normalised stored row.
    pub fn insert_row(&mut self, v: &SparseVec) -> Option<(usize, &SparseVec)> {
        let k = self.insert(v)?;
        Some((k, &self.rows[&k]))
    }
}

/// Echelon basis that remembers how each row was built from the inserted
/// generators, so that membership queries also return coordinates.
#[derive(Clone, Debug, Default)]
pub struct TrackedEchelon {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    generators: usize,
}

impl TrackedEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Registers generator number `self.generators`. Returns whether it was
    /// independent of the previous ones.
    pub fn push(&mut self, v: &SparseVec) -> bool {
        let g = self.generators;
        self.generators += 1;
        let (res, combo) = self.reduce_tracked(v, unit(g));
        match res.last_key_value() {
            Some((&k, lead)) => {
                let inv = lead.recip();
                self.rows.insert(k, (scaled(&res, &inv), scaled(&combo, &inv)));
                true
            }
            None => false,
        }
    }

    fn reduce_tracked(&self, v: &SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        let mut work = v.clone();
        let mut out = SparseVec::new();
        while let Some((k, c)) = work.pop_last() {
            match self.rows.get(&k) {
                Some((row, rc)) => {
                    for (&j, x) in row.range(..k) {
                        let e = work.entry(j).or_insert_with(Rat::zero);
                        *e -= x * &c;
                        if e.is_zero() {
                            work.remove(&j);
                        }
                    }
                    add_scaled(&mut combo, rc, &-c.clone());
                }
                None => {
                    out.insert(k, c);
                }
            }
        }
        (out, combo)
    }

    /// Coordinates of `v` in terms of the pushed generators, if `v` lies in
    /// their span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let (res, combo) = self.reduce_tracked(v, SparseVec::new());
        if res.is_empty() {
            Some(scaled(&combo, &-Rat::one()))
        } else {
            None
        }
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rat {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds a `rows x cols` matrix whose column `j` is the sparse vector `cols_v[j]`.
    pub fn from_sparse_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (&i, x) in col {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row_vec(&self, r: usize) -> Vec<Rat> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column_sparse(&self, c: usize) -> SparseVec {
        (0..self.rows)
            .filter(|&r| !self[(r, c)].is_zero())
            .map(|r| (r, self[(r, c)].clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Rat::zero();
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        s += &self[(i, k)] * x;
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    let v = &m[(r, j)] * &f;
                    if !v.is_zero() {
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{ x : self * x = 0 }`.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (m, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![Rat::zero(); self.cols];
            x[free] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[(r, free)].clone();
            }
            basis.push(x);
        }
        basis
    }

    /// Assembles a block matrix. `blocks[i][j]` must have `row_dims[i]` rows
    /// and `col_dims[j]` columns; `None` stands for a zero block.
    pub fn from_blocks(row_dims: &[usize], col_dims: &[usize], blocks: &[Vec<Option<Matrix>>]) -> Matrix {
        let rows: usize = row_dims.iter().sum();
        let cols: usize = col_dims.iter().sum();
        let mut m = Matrix::zeros(rows, cols);
        let mut r0 = 0;
        for (i, &rd) in row_dims.iter().enumerate() {
            let mut c0 = 0;
            for (j, &cd) in col_dims.iter().enumerate() {
                if let Some(b) = &blocks[i][j] {
                    assert_eq!((b.rows, b.cols), (rd, cd), "block ({i},{j}) has wrong shape");
                    for r in 0..rd {
                        for c in 0..cd {
                            m[(r0 + r, c0 + c)] = b[(r, c)].clone();
                        }
                    }
                }
                c0 += cd;
            }
            r0 += rd;
        }
        m
    }
}
