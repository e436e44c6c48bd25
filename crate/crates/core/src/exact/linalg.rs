//! Exact dense linear algebra over any field of exact scalars, plus an
//! incremental sparse echelon form for the large rational systems of the
//! Koszul computations.

use std::collections::BTreeMap;
use std::fmt;

use super::cyclotomic::CycNum;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Exact scalar field operations used by the elimination routines.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        self.recip()
    }
}

impl Field for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn one() -> Self {
        CycNum::one()
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.add_ref(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.sub_ref(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn inv(&self) -> Result<Self> {
        CycNum::inv(self)
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

pub type CycMatrix = Matrix<CycNum>;

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Usage("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Usage("column length mismatch".into()));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn diagonal(entries: Vec<F>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.into_iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Usage("vector length does not match matrix columns".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Usage("matrix dimension mismatch".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j { *x == F::one() } else { x.is_zero() }
                })
            })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Vec<usize>, Matrix<F>) {
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
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = m[(r, j)].mul(&inv);
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        m[(i, j)] = m[(i, j)].sub(&f.mul(&m[(r, j)]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, m)
    }

    pub fn rank(&self) -> usize {
        self.rref().0.len()
    }

    /// Basis of the null space `{v : M v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let (pivots, red) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = red[(row, f)].neg();
                }
                v
            })
            .collect()
    }

    /// Basis of the column space, taken from the pivot columns of `self`.
    pub fn image_basis(&self) -> Vec<Vec<F>> {
        let (pivots, _) = self.rref();
        pivots.iter().map(|&c| self.column(c)).collect()
    }

    /// An exact solution of `M x = v`, or `None` when the system is inconsistent.
    pub fn solve(&self, v: &[F]) -> Result<Option<Vec<F>>> {
        if v.len() != self.rows {
            return Err(Error::Usage(format!(
                "right-hand side has length {}, matrix has {} rows",
                v.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = v[i].clone();
        }
        let (pivots, red) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = red[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Usage("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = F::one();
        }
        let (pivots, red) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Domain("matrix is not invertible".into()));
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl CycMatrix {
    /// Common cyclotomic order of the entries.
    pub fn order(&self) -> u64 {
        self.data.iter().fold(1, |acc, x| num_integer::lcm(acc, x.order()))
    }

    pub fn promote(&self, order: u64) -> CycMatrix {
        self.map(|x| x.promote(order))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> CycMatrix {
        self.map(CycNum::conj)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<&F> = (0..self.cols).map(|j| &self.data[i * self.cols + j]).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// Rank of a family of vectors (dense), i.e. the dimension of their span.
pub fn span_rank<F: Field>(dim: usize, vectors: &[Vec<F>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(dim, vectors).map(|m| m.rank()).unwrap_or(0)
}

/// Echelon basis maintained incrementally over sparse rational vectors.
///
/// Every stored row is normalised to a leading 1 at its pivot (the smallest
/// index it contains); reducing a vector subtracts stored rows in increasing
/// pivot order until its leading index is no longer a pivot.
#[derive(Default, Clone)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

pub type SparseVec = BTreeMap<usize, Rational>;

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduce `v` against the stored rows; the remainder is zero iff
    /// `v` lies in their span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).find(|(k, _)| self.rows.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((col, c)) = next else { break };
            let row = &self.rows[&col];
            for (k, x) in row {
                let e = v.entry(*k).or_insert_with(Rational::zero);
                *e -= &(&c * x);
                if e.is_zero() {
                    v.remove(k);
                }
            }
            cursor = col + 1;
        }
        v
    }

    /// Insert `v`; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut r = self.reduce(v);
        let Some((&lead, lc)) = r.iter().next() else { return false };
        let inv = lc.recip().expect("leading coefficient is nonzero");
        for x in r.values_mut() {
            *x *= &inv;
        }
        self.rows.insert(lead, std::mem::take(&mut r));
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_rref() {
        let (piv, red) = Matrix::<Rational>::identity(3).rref();
        assert_eq!(piv, vec![0, 1, 2]);
        assert!(red.is_identity());
        assert!(Matrix::<Rational>::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_all_ones() {
        let k = qm(&[&[1, 1], &[1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn fixed_space_of_diag_zeta3_one() {
        let g = CycMatrix::diagonal(vec![CycNum::zeta_pow(3, 1), CycNum::rational_in(3, Rational::one())]);
        let a = g.sub(&CycMatrix::identity(2)).unwrap();
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(k[0][0].is_zero());
        assert!(!k[0][1].is_zero());
        let sol = a.solve(&[CycNum::zero(), CycNum::zero()]).unwrap().unwrap();
        assert!(sol.iter().all(CycNum::is_zero));
    }

    #[test]
    fn solve_inconsistent_and_mismatch() {
        let m = qm(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.solve(&[q(1), q(2)]).unwrap(), None);
        assert_eq!(m.solve(&[q(2), q(2)]).unwrap(), Some(vec![q(2), q(0)]));
        assert!(matches!(m.solve(&[q(1)]), Err(Error::Usage(_))));
        assert!(matches!(m.mul(&qm(&[&[1, 2, 3]])), Err(Error::Usage(_))));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = qm(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn sparse_echelon_membership() {
        let mut e = SparseEchelon::new();
        let v = |pairs: &[(usize, i64)]| -> SparseVec { pairs.iter().map(|&(k, x)| (k, q(x))).collect() };
        assert!(e.insert(v(&[(0, 1), (1, 1)])));
        assert!(e.insert(v(&[(1, 1), (2, 1)])));
        assert!(!e.insert(v(&[(0, 1), (2, -1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(v(&[(0, 2), (1, 3), (2, 1)])));
        assert!(!e.contains(v(&[(2, 1)])));
    }
}
