//! Exact dense linear algebra over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, to_f64, Rational};

/// Row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds from nested rows; all rows must share a length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| crate::rational::int(v)).collect()).collect())
            .expect("rectangular literal")
    }

    /// Column vector.
    pub fn column(v: Vec<Rational>) -> Self {
        let n = v.len();
        Self { rows: n, cols: 1, data: v }
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_skew(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..=i).all(|j| self[(i, j)] == -&self[(j, i)]))
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> Rational {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Rational)> {
        self.data
            .iter()
            .position(|x| !x.is_zero())
            .map(|k| (k / self.cols, k % self.cols, self.data[k].clone()))
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn hstack(blocks: &[&QMat]) -> Result<Self> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    m[(i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.cols;
        }
        Ok(m)
    }

    pub fn vstack(blocks: &[&QMat]) -> Result<Self> {
        let t: Vec<QMat> = blocks.iter().map(|b| b.transpose()).collect();
        Ok(Self::hstack(&t.iter().collect::<Vec<_>>())?.transpose())
    }

    pub fn block_diag(blocks: &[&QMat]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn checked_mul(&self, o: &QMat) -> Result<QMat> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut m = QMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    m.data[i * o.cols + j] += a * &o[(k, j)];
                }
            }
        }
        Ok(m)
    }

    pub fn checked_add(&self, o: &QMat) -> Result<QMat> {
        self.zip(o, |a, b| a + b)
    }

    pub fn checked_sub(&self, o: &QMat) -> Result<QMat> {
        self.zip(o, |a, b| a - b)
    }

    fn zip(&self, o: &QMat, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<QMat> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// `x^T M x` for a square matrix.
    pub fn quadratic_form(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rows {
            if x[i].is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for j in 0..self.cols {
                row += &self[(i, j)] * &x[j];
            }
            acc += &x[i] * row;
        }
        acc
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
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
                    m[(i, j)] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact basis of `{x : M x = 0}`; empty when `M` is injective.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    /// One solution of `M x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let aug = QMat::hstack(&[self, &QMat::column(b.to_vec())])?;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<QMat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = QMat::hstack(&[self, &QMat::identity(n)]).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0..n, n..2 * n))
    }

    /// Basis of the column space, taken from the pivot columns.
    pub fn column_basis(&self) -> Vec<Vec<Rational>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.col(c)).collect()
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| to_f64(&self[(i, j)]))
    }

    /// Minimum eigenvalue (and its eigenvector) of a symmetric matrix in
    /// floating point. Returns `None` for the empty matrix.
    pub fn min_eigen_f64(&self) -> Option<(f64, Vec<f64>)> {
        min_eigen(&self.to_f64())
    }
}

pub fn min_eigen(m: &nalgebra::DMatrix<f64>) -> Option<(f64, Vec<f64>)> {
    if m.nrows() == 0 {
        return None;
    }
    let sym = (m + m.transpose()) * 0.5;
    let eig = nalgebra::SymmetricEigen::new(sym);
    let (k, &lambda) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))?;
    Some((lambda, eig.eigenvectors.column(k).iter().copied().collect()))
}

/// Outcome of the exact semidefiniteness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsdVerdict {
    Psd,
    /// `x^T S x < 0` for the carried witness.
    NotPsd { witness: Vec<Rational>, value: Rational },
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::Psd)
    }
}

/// Decides `S >= 0` exactly by symmetric elimination with diagonal pivoting.
///
/// Each positive pivot is eliminated by a Schur complement. When no positive
/// pivot is left, a negative diagonal entry or a nonzero off-diagonal entry
/// among zero diagonals yields a witness, which is lifted back through the
/// recorded eliminations into original coordinates.
pub fn psd_check_exact(s: &QMat) -> Result<PsdVerdict> {
    if !s.is_square() {
        return Err(Error::NotSquare { rows: s.rows, cols: s.cols });
    }
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = s.rows;
    let mut work = s.clone();
    let mut active: Vec<bool> = vec![true; n];
    // (pivot index, pivot row snapshot at elimination time)
    let mut eliminated: Vec<(usize, Vec<Rational>)> = Vec::new();

    let local_witness = loop {
        let live: Vec<usize> = (0..n).filter(|&i| active[i]).collect();
        if live.is_empty() {
            return Ok(PsdVerdict::Psd);
        }
        if let Some(&k) = live.iter().find(|&&i| work[(i, i)].is_positive()) {
            let pivot = work[(k, k)].clone();
            let row = work.row(k).to_vec();
            for &i in &live {
                if i == k || row[i].is_zero() {
                    continue;
                }
                let f = &row[i] / &pivot;
                for &j in &live {
                    if j == k {
                        continue;
                    }
                    let v = &f * &row[j];
                    work[(i, j)] -= v;
                }
            }
            active[k] = false;
            eliminated.push((k, row));
            continue;
        }
        if let Some(&k) = live.iter().find(|&&i| work[(i, i)].is_negative()) {
            let mut x = vec![Rational::zero(); n];
            x[k] = Rational::one();
            break x;
        }
        // All live diagonals vanish; any nonzero coupling gives a witness.
        let mut found = None;
        'outer: for &i in &live {
            for &j in &live {
                if i != j && !work[(i, j)].is_zero() {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        match found {
            None => return Ok(PsdVerdict::Psd),
            Some((i, j)) => {
                let mut x = vec![Rational::zero(); n];
                x[i] = Rational::one();
                x[j] = if work[(i, j)].is_positive() { -Rational::one() } else { Rational::one() };
                break x;
            }
        }
    };

    let mut x = local_witness;
    for (k, row) in eliminated.iter().rev() {
        let mut acc = Rational::zero();
        for (j, r) in row.iter().enumerate() {
            if j != *k {
                acc += r * &x[j];
            }
        }
        x[*k] = -acc / &row[*k];
    }
    let value = s.quadratic_form(&x);
    if !value.is_negative() {
        return Err(Error::Internal("PSD witness failed to lift".into()));
    }
    Ok(PsdVerdict::NotPsd { witness: x, value })
}

/// Real symmetric embedding `[[X, -Y], [Y, X]]` of the Hermitian matrix
/// `X + jY`; it is PSD exactly when the Hermitian matrix is.
pub fn hermitian_embedding(re: &QMat, im: &QMat) -> QMat {
    let n = re.rows();
    QMat::from_fn(2 * n, 2 * n, |i, j| {
        let (bi, ii) = (i / n, i % n);
        let (bj, jj) = (j / n, j % n);
        match (bi, bj) {
            (0, 0) | (1, 1) => re[(ii, jj)].clone(),
            (0, 1) => -&im[(ii, jj)],
            _ => im[(ii, jj)].clone(),
        }
    })
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &QMat {
    type Output = QMat;
    fn add(self, o: &QMat) -> QMat {
        self.checked_add(o).expect("conformable addition")
    }
}

impl Sub for &QMat {
    type Output = QMat;
    fn sub(self, o: &QMat) -> QMat {
        self.checked_sub(o).expect("conformable subtraction")
    }
}

impl Mul for &QMat {
    type Output = QMat;
    fn mul(self, o: &QMat) -> QMat {
        self.checked_mul(o).expect("conformable product")
    }
}

impl Neg for &QMat {
    type Output = QMat;
    fn neg(self) -> QMat {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}
