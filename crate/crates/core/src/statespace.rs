//! State-space quadruples `(A, B, C, D)` over the rationals: realization of
//! proper transfer matrices, transfer-matrix recovery, and Kalman reduction.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::poly::Poly;
use crate::rational::{int, Rational};
use crate::transfer::{RationalFunction, TransferMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSpace {
    pub a: QMat,
    pub b: QMat,
    pub c: QMat,
    pub d: QMat,
}

impl StateSpace {
    /// Checks `A: n x n`, `B: n x m`, `C: m x n`, `D: m x m` with `m >= 1`.
    pub fn new(a: QMat, b: QMat, c: QMat, d: QMat) -> Result<Self> {
        let n = a.rows();
        let m = d.rows();
        let bad = |what: &str| Error::DimensionMismatch(what.to_string());
        if a.cols() != n {
            return Err(bad("A must be square"));
        }
        if m == 0 || d.cols() != m {
            return Err(bad("D must be square and nonempty"));
        }
        if b.rows() != n || b.cols() != m {
            return Err(bad("B must be n x m"));
        }
        if c.rows() != m || c.cols() != n {
            return Err(bad("C must be m x n"));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn m(&self) -> usize {
        self.d.rows()
    }

    /// `(T^-1 A T, T^-1 B, C T, D)`.
    pub fn similarity(&self, t: &QMat) -> Result<StateSpace> {
        if t.rows() != self.n() || t.cols() != self.n() {
            return Err(Error::DimensionMismatch("similarity transform must be n x n".into()));
        }
        let ti = t.inverse().ok_or_else(|| Error::Hypothesis("similarity transform is singular".into()))?;
        Ok(StateSpace { a: &(&ti * &self.a) * t, b: &ti * &self.b, c: &self.c * t, d: self.d.clone() })
    }

    fn dual(&self) -> StateSpace {
        StateSpace { a: self.a.transpose(), b: self.c.transpose(), c: self.b.transpose(), d: self.d.transpose() }
    }
}

/// `[B, AB, ..., A^(n-1) B]`
pub fn controllability_matrix(a: &QMat, b: &QMat) -> QMat {
    let n = a.rows();
    let mut blocks = Vec::with_capacity(n);
    let mut cur = b.clone();
    for _ in 0..n {
        blocks.push(cur.clone());
        cur = a * &cur;
    }
    let refs: Vec<&QMat> = blocks.iter().collect();
    if refs.is_empty() {
        return QMat::zeros(0, b.cols());
    }
    QMat::hstack(&refs).expect("equal row counts")
}

/// Exact ranks of the controllability and observability matrices.
pub fn ctrb_obsv_ranks(ss: &StateSpace) -> (usize, usize) {
    let rc = controllability_matrix(&ss.a, &ss.b).rank();
    let ro = controllability_matrix(&ss.a.transpose(), &ss.c.transpose()).rank();
    (rc, ro)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationMeta {
    pub controllable: bool,
    pub observable: bool,
    pub n: usize,
    pub reduction_trace: Vec<String>,
}

impl RealizationMeta {
    pub fn minimal(&self) -> bool {
        self.controllable && self.observable
    }
}

/// Restricts to the controllable subspace. Returns the reduced system and
/// the number of removed states.
fn controllable_part(ss: &StateSpace) -> (StateSpace, usize) {
    let n = ss.n();
    let basis = controllability_matrix(&ss.a, &ss.b).column_basis();
    let r = basis.len();
    if r == n {
        return (ss.clone(), 0);
    }
    // Complete the basis with unit vectors.
    let mut cols = basis;
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        let mut trial = cols.clone();
        trial.push(e);
        let m = QMat::from_fn(n, trial.len(), |p, q| trial[q][p].clone());
        if m.rank() == trial.len() {
            cols = trial;
        }
    }
    let t = QMat::from_fn(n, n, |p, q| cols[q][p].clone());
    let full = ss.similarity(&t).expect("completed basis is invertible");
    let reduced = StateSpace {
        a: full.a.submatrix(0..r, 0..r),
        b: full.b.submatrix(0..r, 0..full.b.cols()),
        c: full.c.submatrix(0..full.c.rows(), 0..r),
        d: full.d,
    };
    (reduced, n - r)
}

/// Exact Kalman reduction: controllable part, then observable part.
pub fn minimal_reduction(ss: &StateSpace) -> (StateSpace, Vec<String>) {
    let mut trace = Vec::new();
    let (c, removed) = controllable_part(ss);
    if removed > 0 {
        trace.push(format!("removed {removed} uncontrollable state(s)"));
    }
    let (o, removed) = controllable_part(&c.dual());
    if removed > 0 {
        trace.push(format!("removed {removed} unobservable state(s)"));
    }
    (o.dual(), trace)
}

/// Minimal realization of a proper transfer matrix.
///
/// Each column `j` of the strictly proper part is realized in controllable
/// canonical form from the lcm `d_j` of its denominators; the blocks are
/// stacked and then reduced.
pub fn realize(g: &TransferMatrix) -> Result<(StateSpace, RealizationMeta)> {
    let d = g.value_at_infinity().ok_or_else(|| {
        Error::Hypothesis("realization needs a proper G; decompose non-proper systems spectrally first".into())
    })?;
    let m = g.dim();
    let strict = g.try_sub(&TransferMatrix::constant(&d))?;
    let mut a_blocks = Vec::new();
    let mut b_cols: Vec<(usize, usize)> = Vec::new(); // (column, block size)
    let mut c_blocks = Vec::new();
    for j in 0..m {
        let den = (0..m).fold(Poly::one(), |acc, i| acc.lcm(strict.entry(i, j).den()));
        let k = den.degree().unwrap_or(0);
        if k == 0 {
            continue;
        }
        // Companion form: superdiagonal ones, last row -a_0 .. -a_(k-1).
        let a = QMat::from_fn(k, k, |p, q| {
            if p + 1 == q {
                Rational::one()
            } else if p == k - 1 {
                -den.coeff(q)
            } else {
                Rational::zero()
            }
        });
        let mut c = QMat::zeros(m, k);
        for i in 0..m {
            let e = strict.entry(i, j);
            let num = e.num() * &den.exact_div(e.den())?;
            for q in 0..k {
                c[(i, q)] = num.coeff(q);
            }
        }
        a_blocks.push(a);
        b_cols.push((j, k));
        c_blocks.push(c);
    }
    let n: usize = b_cols.iter().map(|(_, k)| k).sum();
    let a_refs: Vec<&QMat> = a_blocks.iter().collect();
    let a = if n == 0 { QMat::zeros(0, 0) } else { QMat::block_diag(&a_refs) };
    let mut b = QMat::zeros(n, m);
    let mut offset = 0;
    for (j, k) in &b_cols {
        b[(offset + k - 1, *j)] = Rational::one();
        offset += k;
    }
    let c = if n == 0 {
        QMat::zeros(m, 0)
    } else {
        let refs: Vec<&QMat> = c_blocks.iter().collect();
        QMat::hstack(&refs)?
    };
    let full = StateSpace::new(a, b, c, d)?;
    let mut trace = vec![format!("column-wise controllable canonical form with {n} state(s)")];
    let (ss, steps) = minimal_reduction(&full);
    trace.extend(steps);
    if transfer_of(&ss) != *g {
        return Err(Error::Internal("realization does not reproduce G".into()));
    }
    let (rc, ro) = ctrb_obsv_ranks(&ss);
    let meta = RealizationMeta { controllable: rc == ss.n(), observable: ro == ss.n(), n: ss.n(), reduction_trace: trace };
    Ok((ss, meta))
}

/// `det(sI - A)` and the matrix coefficients `M_1..M_n` of
/// `adj(sI - A) = sum_k M_k s^(n-k)` (Faddeev-LeVerrier).
pub fn characteristic_adjugate(a: &QMat) -> (Poly, Vec<QMat>) {
    let n = a.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut ms = Vec::with_capacity(n);
    let mut m = QMat::identity(n);
    for k in 1..=n {
        let am = a * &m;
        let c = -am.trace() / int(k as i64);
        coeffs[n - k] = c.clone();
        ms.push(m);
        m = &am + &QMat::identity(n).scale(&c);
    }
    (Poly::new(coeffs), ms)
}

/// `C (sI - A)^-1 B + D`, computed exactly.
pub fn transfer_of(ss: &StateSpace) -> TransferMatrix {
    let n = ss.n();
    let m = ss.m();
    if n == 0 {
        return TransferMatrix::constant(&ss.d);
    }
    let (chi, ms) = characteristic_adjugate(&ss.a);
    let terms: Vec<QMat> = ms.iter().map(|mk| &(&ss.c * mk) * &ss.b).collect();
    TransferMatrix::from_fn(m, |i, j| {
        let mut coeffs = vec![Rational::zero(); n];
        for (k, t) in terms.iter().enumerate() {
            coeffs[n - 1 - k] = t[(i, j)].clone();
        }
        let num = &Poly::new(coeffs) + &chi.scale(&ss.d[(i, j)]);
        RationalFunction::new(num, chi.clone()).expect("characteristic polynomial is nonzero")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example3() -> StateSpace {
        StateSpace::new(
            QMat::from_ints(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]),
            QMat::from_ints(&[&[1], &[0], &[0], &[0]]),
            QMat::from_ints(&[&[0, 2, 0, 1]]),
            QMat::from_ints(&[&[-2]]),
        )
        .unwrap()
    }

    fn example3_tf() -> TransferMatrix {
        TransferMatrix::new(vec![vec![RationalFunction::new(
            Poly::from_ints(&[1, 0, 0, 0, -2]),
            Poly::from_ints(&[0, 0, 1, 0, 1]),
        )
        .unwrap()]])
        .unwrap()
    }

    #[test]
    fn example3_transfer_and_ranks() {
        let ss = example3();
        assert_eq!(transfer_of(&ss), example3_tf());
        assert_eq!(ctrb_obsv_ranks(&ss), (4, 4));
    }

    #[test]
    fn realize_example3_tf() {
        let (ss, meta) = realize(&example3_tf()).unwrap();
        assert_eq!(ss.n(), 4);
        assert!(meta.minimal());
        assert_eq!(transfer_of(&ss), example3_tf());
    }

    #[test]
    fn constant_and_integrator() {
        let d = QMat::from_ints(&[&[1, 2], &[3, 4]]);
        let (ss, meta) = realize(&TransferMatrix::constant(&d)).unwrap();
        assert_eq!(ss.n(), 0);
        assert!(meta.minimal());
        assert_eq!(ss.d, d);
        let g = TransferMatrix::new(vec![vec![RationalFunction::new(Poly::one(), Poly::s()).unwrap()]]).unwrap();
        let (ss, _) = realize(&g).unwrap();
        assert_eq!((ss.a.clone(), ss.d.clone()), (QMat::zeros(1, 1), QMat::zeros(1, 1)));
        assert_eq!(&ss.c * &ss.b, QMat::identity(1));
        assert!(realize(&TransferMatrix::poly_times(&Poly::s(), &QMat::identity(1))).is_err());
    }

    #[test]
    fn reduction_removes_shared_dynamics() {
        // [[1/s, 1/s], [1/s, 1/s]] has McMillan degree 1, the stacked form 2.
        let e = RationalFunction::new(Poly::one(), Poly::s()).unwrap();
        let g = TransferMatrix::new(vec![vec![e.clone(), e.clone()], vec![e.clone(), e]]).unwrap();
        let (ss, meta) = realize(&g).unwrap();
        assert_eq!(ss.n(), 1);
        assert_eq!(meta.reduction_trace.len(), 2);
    }

    #[test]
    fn rank_edge_cases() {
        let ss = StateSpace::new(QMat::zeros(2, 2), QMat::zeros(2, 1), QMat::zeros(1, 2), QMat::zeros(1, 1)).unwrap();
        assert_eq!(ctrb_obsv_ranks(&ss).0, 0);
        let ss = StateSpace::new(QMat::zeros(2, 2), QMat::identity(2), QMat::identity(2), QMat::zeros(2, 2)).unwrap();
        assert_eq!(ctrb_obsv_ranks(&ss), (2, 2));
    }

    #[test]
    fn similarity_invariance() {
        let ss = example3();
        let t = QMat::from_ints(&[&[1, 2, 0, 0], &[0, 1, 0, 3], &[1, 0, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(transfer_of(&ss.similarity(&t).unwrap()), transfer_of(&ss));
    }
}
