//! Exact sparse linear algebra over [`Scalar`]s.
//!
//! Every routine is deterministic: rows are inserted in index order and the
//! pivot of a row is its smallest surviving column, so ties resolve to the
//! smallest column and then the smallest row.

use alloc::collections::{BTreeMap, BinaryHeap};
use core::cmp::Reverse;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::{Field, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Matrices at or below this size in both dimensions use dense elimination.
pub const DENSE_CUTOFF: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinalgError {
    DimensionMismatch { expected: usize, found: usize },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {}, found {}", expected, found)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            field,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i].push((i, field.one()));
        }
        m
    }

    pub fn from_dense(field: Field, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x != 0 {
                    m.data[i].push((j, field.from_i64(x)));
                }
            }
        }
        m
    }

    /// Builds a matrix from its columns (each a sparse vector of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                if !x.is_zero() {
                    m.data[*i].push((j, x.clone()));
                }
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

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    /// Sets an entry; a zero value removes it.
    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        assert!(i < self.rows && j < self.cols);
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => {
                if x.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = x;
                }
            }
            Err(k) => {
                if !x.is_zero() {
                    row.insert(k, (j, x));
                }
            }
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(self.field.zero(), |acc, (j, a)| &acc + &(a * &x[*j]))
            })
            .collect())
    }

    pub fn mul_sparse(&self, x: &SparseVec) -> SparseVec {
        let mut dense: BTreeMap<usize, Scalar> = BTreeMap::new();
        let lookup: BTreeMap<usize, &Scalar> = x.iter().map(|(j, v)| (*j, v)).collect();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = self.field.zero();
            for (j, a) in row {
                if let Some(v) = lookup.get(j) {
                    acc = &acc + &(a * v);
                }
            }
            if !acc.is_zero() {
                dense.insert(i, acc);
            }
        }
        dense.into_iter().collect()
    }

    fn is_small(&self) -> bool {
        self.rows <= DENSE_CUTOFF && self.cols <= DENSE_CUTOFF
    }

    fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                d[i][*j] = x.clone();
            }
        }
        d
    }
}

/// Exact rank.
pub fn rank(m: &SparseMatrix) -> usize {
    if m.is_small() {
        dense_rref(m.to_dense(), m.cols).1.len()
    } else {
        markowitz_rank(m.data.clone(), m.cols)
    }
}

/// Sparse elimination that always pivots in a shortest remaining row, on its
/// column with the fewest entries. Keeps fill-in low on the banded,
/// mostly unit matrices that Hom complexes produce.
fn markowitz_rank(mut rows: Vec<SparseVec>, cols: usize) -> usize {
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); cols];
    let mut heap = BinaryHeap::new();
    let mut active = vec![true; rows.len()];
    for (i, row) in rows.iter().enumerate() {
        for (j, _) in row {
            col_rows[*j].push(i);
        }
        if row.is_empty() {
            active[i] = false;
        } else {
            heap.push(Reverse((row.len(), i)));
        }
    }
    let mut rank = 0;
    while let Some(Reverse((len, r))) = heap.pop() {
        if !active[r] || rows[r].len() != len {
            continue;
        }
        let (k, &(col, _)) = rows[r]
            .iter()
            .enumerate()
            .min_by_key(|(_, (j, _))| col_rows[*j].len())
            .expect("active rows are nonempty");
        let pivot = rows[r][k].1.clone();
        let prow = core::mem::take(&mut rows[r]);
        active[r] = false;
        rank += 1;
        let others = core::mem::take(&mut col_rows[col]);
        for s in others {
            if !active[s] {
                continue;
            }
            let Ok(at) = rows[s].binary_search_by_key(&col, |e| e.0) else { continue };
            let factor = rows[s][at].1.div(&pivot);
            let updated = axpy(&rows[s], &factor, &prow, true);
            for (j, _) in &updated {
                if rows[s].binary_search_by_key(j, |e| e.0).is_err() {
                    col_rows[*j].push(s);
                }
            }
            rows[s] = updated;
            if rows[s].is_empty() {
                active[s] = false;
            } else {
                heap.push(Reverse((rows[s].len(), s)));
            }
        }
        for (j, _) in &prow {
            col_rows[*j].retain(|&s| active[s]);
        }
    }
    rank
}

/// Exact basis of the right kernel, one sparse vector per free column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    let field = m.field;
    let (rows, pivots) = if m.is_small() {
        let (d, pivots) = dense_rref(m.to_dense(), m.cols);
        let rows: Vec<SparseVec> = pivots
            .iter()
            .enumerate()
            .map(|(k, _)| {
                d[k].iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(j, x)| (j, x.clone()))
                    .collect()
            })
            .collect();
        (rows, pivots)
    } else {
        let mut ech = RowEchelon::new(field);
        for row in &m.data {
            ech.insert(row.clone());
        }
        ech.make_reduced();
        let pivots: Vec<usize> = ech.pivots.keys().copied().collect();
        let rows: Vec<SparseVec> = ech.pivots.values().cloned().collect();
        (rows, pivots)
    };
    kernel_from_rref(field, m.cols, &rows, &pivots)
}

fn kernel_from_rref(
    field: Field,
    cols: usize,
    rows: &[SparseVec],
    pivots: &[usize],
) -> Vec<SparseVec> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    // column -> list of (pivot column, coefficient) for entries in free columns
    let mut by_free: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    for (row, &p) in rows.iter().zip(pivots) {
        for (j, x) in row {
            if *j != p {
                by_free.entry(*j).or_default().push((p, -x));
            }
        }
    }
    let mut basis = Vec::new();
    for f in 0..cols {
        if is_pivot[f] {
            continue;
        }
        let mut v: SparseVec = by_free.remove(&f).unwrap_or_default();
        v.push((f, field.one()));
        v.sort_by_key(|e| e.0);
        basis.push(v);
    }
    basis
}

/// Gauss-Jordan on a dense matrix. Returns the reduced rows (pivot rows first)
/// and the pivot columns.
fn dense_rref(mut a: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(k) = (r..nrows).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, k);
        let inv = a[r][c].inv();
        for j in c..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        for k in 0..nrows {
            if k != r && !a[k][c].is_zero() {
                let factor = a[k][c].clone();
                for j in c..cols {
                    if !a[r][j].is_zero() {
                        a[k][j] = &a[k][j] - &(&factor * &a[r][j]);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Solved(Vec<Scalar>),
    NoSolution,
}

/// Some exact solution of `m x = b`, or [`Solution::NoSolution`].
pub fn solve(m: &SparseMatrix, b: &[Scalar]) -> Result<Solution, LinalgError> {
    if b.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let field = m.field;
    let aug = m.cols;
    let mut ech = RowEchelon::new(field);
    for (row, bi) in m.data.iter().zip(b) {
        let mut r = row.clone();
        if !bi.is_zero() {
            r.push((aug, bi.clone()));
        }
        ech.insert(r);
    }
    if ech.pivots.contains_key(&aug) {
        return Ok(Solution::NoSolution);
    }
    ech.make_reduced();
    let mut x = vec![field.zero(); m.cols];
    for (p, row) in &ech.pivots {
        if let Some((_, v)) = row.iter().find(|(j, _)| *j == aug) {
            x[*p] = v.clone();
        }
    }
    Ok(Solution::Solved(x))
}

/// Incremental row echelon form keyed by pivot column. Each stored row is
/// normalized so its pivot entry is one.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    field: Field,
    pivots: BTreeMap<usize, SparseVec>,
}

impl RowEchelon {
    pub fn new(field: Field) -> Self {
        RowEchelon {
            field,
            pivots: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.pivots.values()
    }

    /// Remainder of `v` after reduction by the stored rows (zero iff `v` lies
    /// in the row space).
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        let mut work: BTreeMap<usize, Scalar> = v.into_iter().filter(|e| !e.1.is_zero()).collect();
        let mut cursor = 0usize;
        loop {
            let Some((&c, _)) = work.range(cursor..).next() else {
                break;
            };
            if let Some(row) = self.pivots.get(&c) {
                let factor = work.get(&c).cloned().unwrap();
                for (j, x) in row {
                    let updated = match work.get(j) {
                        Some(old) => old - &(&factor * x),
                        None => -(&factor * x),
                    };
                    if updated.is_zero() {
                        work.remove(j);
                    } else {
                        work.insert(*j, updated);
                    }
                }
            } else {
                cursor = c + 1;
            }
        }
        work.into_iter().collect()
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`; returns true if it increased the rank.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.inv();
        let pivot = r[0].0;
        let normalized: SparseVec = r.into_iter().map(|(j, x)| (j, &x * &inv)).collect();
        self.pivots.insert(pivot, normalized);
        true
    }

    /// Clears every entry above each pivot (reduced row echelon form).
    pub fn make_reduced(&mut self) {
        let keys: Vec<usize> = self.pivots.keys().copied().collect();
        for &p in keys.iter().rev() {
            let prow = self.pivots[&p].clone();
            for &q in keys.iter().filter(|&&q| q < p) {
                let row = self.pivots.get_mut(&q).unwrap();
                let Ok(k) = row.binary_search_by_key(&p, |e| e.0) else {
                    continue;
                };
                let factor = row[k].1.clone();
                *row = axpy(row, &factor, &prow, true);
            }
        }
    }
}

/// `a - factor * b` (when `subtract`) or `a + factor * b`.
pub fn axpy(a: &SparseVec, factor: &Scalar, b: &SparseVec, subtract: bool) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else {
            let scaled = factor * &b[j].1;
            let scaled = if subtract { -scaled } else { scaled };
            if take_b {
                if !scaled.is_zero() {
                    out.push((b[j].0, scaled));
                }
            } else {
                let s = &a[i].1 + &scaled;
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
            }
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: Field = Field::Rational;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::zeros(F, 3, 4)), 0);
        assert_eq!(rank(&SparseMatrix::identity(F, 5)), 5);
        assert_eq!(rank(&SparseMatrix::from_dense(F, &[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::identity(F, 3)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::zeros(F, 2, 3)).len(), 3);
        let k = kernel_basis(&SparseMatrix::from_dense(F, &[vec![1, 1]]));
        assert_eq!(k, vec![vec![(0, F.from_i64(-1)), (1, F.one())]]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![F.from_i64(3), F.from_i64(-2)];
        assert_eq!(
            solve(&SparseMatrix::identity(F, 2), &b).unwrap(),
            Solution::Solved(b.clone())
        );
        assert_eq!(
            solve(&SparseMatrix::zeros(F, 2, 2), &b).unwrap(),
            Solution::NoSolution
        );
        assert_eq!(
            solve(&SparseMatrix::from_dense(F, &[vec![2]]), &[F.one()]).unwrap(),
            Solution::Solved(vec![F.ratio(1, 2)])
        );
        assert!(matches!(
            solve(&SparseMatrix::identity(F, 2), &[F.one()]),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn large_sparse_path_matches_dense() {
        // 70x70 bidiagonal with a dependent last row: exercises the sparse branch.
        let n = 70;
        let mut m = SparseMatrix::zeros(F, n, n);
        for i in 0..n - 1 {
            m.set(i, i, F.one());
            m.set(i, i + 1, F.from_i64(-1));
        }
        m.set(n - 1, 0, F.one());
        m.set(n - 1, n - 1, F.from_i64(-1));
        assert_eq!(rank(&m), n - 1);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_sparse(&k[0]).is_empty());
    }
}
