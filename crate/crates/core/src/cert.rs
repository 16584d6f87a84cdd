//! Equality-LMI certificates for lossless systems.
//!
//! * `Eq5` (lossless PR): `PA + A^T P = 0`, `PB - C^T = 0`, `D + D^T = 0`.
//! * `Eq7` (lossless NI, poles at zero allowed): `PA + A^T P = 0`,
//!   `PB - A^T C^T = 0`, `CB + (CB)^T = 0`, `D = D^T`.
//! * `Eq4` (general PR, verification only): `PA + A^T P = -L L^T`,
//!   `PB = C^T - L W`, `D + D^T = W^T W` with `L: n x k`, `W: k x m`.
//!
//! In every case `P = P^T >= 0`. The equality blocks are linear in `P`, so
//! their solution set is an affine family solved exactly; only the PSD
//! constraint over that family needs a search.

use nalgebra::DMatrix;
use num_traits::{Signed, Zero};

use crate::classify::{is_lossless_ni, Verdict};
use crate::error::{Error, Result};
use crate::linalg::{min_eigen, psd_check_exact, PsdVerdict, QMat};
use crate::rational::{rationalize, to_f64, Rational};
use crate::statespace::{ctrb_obsv_ranks, transfer_of, StateSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertKind {
    Eq4,
    Eq5,
    Eq7,
}

impl CertKind {
    pub fn label(&self) -> &'static str {
        match self {
            CertKind::Eq4 => "eq4",
            CertKind::Eq5 => "eq5",
            CertKind::Eq7 => "eq7",
        }
    }
}

impl std::str::FromStr for CertKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq4" => Ok(CertKind::Eq4),
            "eq5" => Ok(CertKind::Eq5),
            "eq7" => Ok(CertKind::Eq7),
            _ => Err(Error::Parse(format!("unknown certificate kind {s:?} (expected eq4, eq5 or eq7)"))),
        }
    }
}

/// `{P0 + sum_k t_k N_k}`: every member satisfies the equality blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineFamily {
    pub p0: QMat,
    pub basis: Vec<QMat>,
}

impl AffineFamily {
    pub fn dim(&self) -> usize {
        self.p0.rows()
    }

    pub fn at(&self, t: &[Rational]) -> QMat {
        let mut p = self.p0.clone();
        for (ti, n) in t.iter().zip(&self.basis) {
            p = &p + &n.scale(ti);
        }
        p
    }

    fn at_f64(&self, t: &[f64]) -> DMatrix<f64> {
        let mut p = self.p0.to_f64();
        for (ti, n) in t.iter().zip(&self.basis) {
            p += n.to_f64() * *ti;
        }
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyOutcome {
    Feasible(AffineFamily),
    /// `block` names the constraint that cannot hold.
    Infeasible { block: String },
}

fn sym_index(n: usize) -> Vec<(usize, usize)> {
    let mut idx = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        for j in i..n {
            idx.push((i, j));
        }
    }
    idx
}

fn sym_from_vec(n: usize, idx: &[(usize, usize)], x: &[Rational]) -> QMat {
    let mut p = QMat::zeros(n, n);
    for (k, &(i, j)) in idx.iter().enumerate() {
        p[(i, j)] = x[k].clone();
        p[(j, i)] = x[k].clone();
    }
    p
}

/// Exact solution set of the equality blocks of `Eq5` or `Eq7`.
pub fn solve_equality_family(ss: &StateSpace, kind: CertKind) -> Result<FamilyOutcome> {
    let (n, m) = (ss.n(), ss.m());
    let rhs_b = match kind {
        CertKind::Eq7 => {
            if !ss.d.is_symmetric() {
                return Ok(FamilyOutcome::Infeasible { block: "D - D^T".into() });
            }
            let cb = &ss.c * &ss.b;
            if !(&cb + &cb.transpose()).is_zero() {
                return Ok(FamilyOutcome::Infeasible { block: "CB + (CB)^T".into() });
            }
            &ss.a.transpose() * &ss.c.transpose()
        }
        CertKind::Eq5 => {
            if !(&ss.d + &ss.d.transpose()).is_zero() {
                return Ok(FamilyOutcome::Infeasible { block: "D + D^T".into() });
            }
            ss.c.transpose()
        }
        CertKind::Eq4 => return Err(Error::Unsupported("eq4 certificates are verified, not searched".into())),
    };
    let idx = sym_index(n);
    let vars = idx.len();
    let var_of = |i: usize, j: usize| if i <= j { idx.iter().position(|&p| p == (i, j)) } else { idx.iter().position(|&p| p == (j, i)) };
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    // (PA + A^T P)_{ij} = sum_k P_ik A_kj + A_ki P_kj, for i <= j.
    for &(i, j) in &idx {
        let mut row = vec![Rational::zero(); vars];
        for k in 0..n {
            row[var_of(i, k).unwrap()] += &ss.a[(k, j)];
            row[var_of(k, j).unwrap()] += &ss.a[(k, i)];
        }
        rows.push(row);
        rhs.push(Rational::zero());
    }
    // (PB)_{ij} = sum_k P_ik B_kj
    for i in 0..n {
        for j in 0..m {
            let mut row = vec![Rational::zero(); vars];
            for k in 0..n {
                row[var_of(i, k).unwrap()] += &ss.b[(k, j)];
            }
            rows.push(row);
            rhs.push(rhs_b[(i, j)].clone());
        }
    }
    if vars == 0 {
        return Ok(FamilyOutcome::Feasible(AffineFamily { p0: QMat::zeros(0, 0), basis: Vec::new() }));
    }
    let system = QMat::from_rows(rows)?;
    let Some(x) = system.solve(&rhs)? else {
        let block = match kind {
            CertKind::Eq7 => "PB - A^T C^T",
            _ => "PB - C^T",
        };
        return Ok(FamilyOutcome::Infeasible { block: block.into() });
    };
    let basis = system.nullspace().iter().map(|v| sym_from_vec(n, &idx, v)).collect();
    Ok(FamilyOutcome::Feasible(AffineFamily { p0: sym_from_vec(n, &idx, &x), basis }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub max_denominator: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { tolerance: 1e-9, max_iterations: 10_000, max_denominator: 1_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    ExactAffine,
    NumericSearch,
    UserSupplied,
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::ExactAffine => "exact-affine",
            Provenance::NumericSearch => "numeric-search",
            Provenance::UserSupplied => "user-supplied",
        }
    }
}

/// A PSD member of a family.
#[derive(Clone, Debug, PartialEq)]
pub struct PsdPoint {
    pub p: QMat,
    pub t: Vec<Rational>,
    /// Exact LDL^T on `p` succeeded.
    pub exact: bool,
    pub min_eigenvalue: f64,
    pub provenance: Provenance,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SearchOutcome {
    Found(PsdPoint),
    NotFound { best_margin: f64, iterations: usize },
}

fn lambda_min(p: &DMatrix<f64>) -> (f64, Vec<f64>) {
    min_eigen(p).unwrap_or((0.0, Vec::new()))
}

fn margin(p: &QMat) -> f64 {
    p.min_eigen_f64().map_or(0.0, |(l, _)| l)
}

/// Searches the family for a PSD member.
pub fn find_psd_point(family: &AffineFamily) -> SearchOutcome {
    find_psd_point_with(family, &SearchOptions::default())
}

/// Single points are decided by exact LDL^T. Otherwise the concave function
/// `t -> lambda_min(P(t))` is maximized from `t = 0` by subgradient ascent
/// (eigenvector of the smallest eigenvalue) with step halving; the best `t`
/// is rounded by continued fractions and re-verified exactly.
pub fn find_psd_point_with(family: &AffineFamily, opts: &SearchOptions) -> SearchOutcome {
    let exact_verdict = |p: &QMat| psd_check_exact(p).map(|v| v.is_psd()).unwrap_or(false);
    if family.basis.is_empty() {
        let p = family.p0.clone();
        if exact_verdict(&p) {
            let min_eigenvalue = margin(&p);
            return SearchOutcome::Found(PsdPoint {
                p,
                t: Vec::new(),
                exact: true,
                min_eigenvalue,
                provenance: Provenance::ExactAffine,
                iterations: 0,
            });
        }
        return SearchOutcome::NotFound { best_margin: margin(&p), iterations: 0 };
    }

    let k = family.basis.len();
    let dirs: Vec<DMatrix<f64>> = family.basis.iter().map(QMat::to_f64).collect();
    let mut t = vec![0.0f64; k];
    let (mut best, mut v) = lambda_min(&family.at_f64(&t));
    let mut step = 1.0f64;
    let mut iterations = 0;
    while iterations < opts.max_iterations && step > 1e-12 {
        iterations += 1;
        let vec = DMatrix::from_column_slice(v.len(), 1, &v);
        let g: Vec<f64> = dirs.iter().map(|n| (vec.transpose() * n * &vec)[(0, 0)]).collect();
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-15 {
            break;
        }
        let trial: Vec<f64> = t.iter().zip(&g).map(|(ti, gi)| ti + step * gi / norm).collect();
        let (l, tv) = lambda_min(&family.at_f64(&trial));
        if l > best {
            t = trial;
            best = l;
            v = tv;
            step *= 1.5;
        } else {
            step *= 0.5;
        }
    }

    if best < -opts.tolerance {
        return SearchOutcome::NotFound { best_margin: best, iterations };
    }
    // Exact re-verification at rounded parameters, then at the raw floats.
    let candidates: Vec<Vec<Rational>> = [
        t.iter().map(|x| rationalize(*x, opts.max_denominator)).collect::<Option<Vec<_>>>(),
        t.iter().map(|x| Rational::from_float(*x)).collect::<Option<Vec<_>>>(),
    ]
    .into_iter()
    .flatten()
    .collect();
    for tr in &candidates {
        let p = family.at(tr);
        if exact_verdict(&p) {
            let min_eigenvalue = margin(&p);
            return SearchOutcome::Found(PsdPoint {
                p,
                t: tr.clone(),
                exact: true,
                min_eigenvalue,
                provenance: Provenance::NumericSearch,
                iterations,
            });
        }
    }
    let tr = candidates.into_iter().last().unwrap_or_else(|| vec![Rational::zero(); k]);
    let p = family.at(&tr);
    SearchOutcome::Found(PsdPoint {
        min_eigenvalue: margin(&p),
        p,
        t: tr,
        exact: false,
        provenance: Provenance::NumericSearch,
        iterations,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub block: String,
    pub max_abs: Rational,
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        self.max_abs.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PsdMargin {
    /// Exact LDL^T verdict on `P`.
    pub exact_psd: bool,
    /// Numeric estimate of the smallest eigenvalue of `P`.
    pub min_eigenvalue: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub kind: CertKind,
    pub p: QMat,
    pub l: Option<QMat>,
    pub w: Option<QMat>,
    pub residuals: Vec<Residual>,
    pub psd_margin: PsdMargin,
    pub provenance: Provenance,
    /// Whether `P` was confirmed exactly (zero residuals, exact PSD).
    pub exact_reverified: bool,
}

impl Certificate {
    /// Builds a user-supplied certificate and evaluates it against `ss`.
    pub fn user_supplied(ss: &StateSpace, kind: CertKind, p: QMat, l: Option<QMat>, w: Option<QMat>) -> Result<Self> {
        let report = verify_witness_parts(ss, kind, &p, l.as_ref(), w.as_ref(), 0.0)?;
        Ok(Certificate {
            kind,
            p,
            l,
            w,
            exact_reverified: report.residuals.iter().all(Residual::is_zero) && report.psd.exact_psd,
            residuals: report.residuals,
            psd_margin: report.psd,
            provenance: Provenance::UserSupplied,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub kind: CertKind,
    pub residuals: Vec<Residual>,
    pub psd: PsdMargin,
    pub tolerance: f64,
    pub pass: bool,
}

fn check_dims(what: &str, m: &QMat, rows: usize, cols: usize) -> Result<()> {
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::DimensionMismatch(format!(
            "{what} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn residual(block: &str, m: QMat) -> Residual {
    Residual { block: block.to_string(), max_abs: m.max_abs() }
}

/// Residuals of every constraint block plus the PSD verdict on `P`. Passes
/// when every residual is at most `tolerance` (zero for exact checks) and
/// `P` is PSD (exactly, or with `lambda_min >= -tolerance` when
/// `tolerance > 0`).
pub fn verify_witness(ss: &StateSpace, cert: &Certificate, kind: CertKind, tolerance: f64) -> Result<VerifyReport> {
    verify_witness_parts(ss, kind, &cert.p, cert.l.as_ref(), cert.w.as_ref(), tolerance)
}

pub fn verify_witness_parts(
    ss: &StateSpace,
    kind: CertKind,
    p: &QMat,
    l: Option<&QMat>,
    w: Option<&QMat>,
    tolerance: f64,
) -> Result<VerifyReport> {
    let (n, m) = (ss.n(), ss.m());
    check_dims("P", p, n, n)?;
    let sym_defect = p - &p.transpose();
    let lyap = &(p * &ss.a) + &(&ss.a.transpose() * p);
    let pb = p * &ss.b;
    let mut residuals = vec![residual("P - P^T", sym_defect)];
    match kind {
        CertKind::Eq5 => {
            residuals.push(residual("PA + A^T P", lyap));
            residuals.push(residual("PB - C^T", &pb - &ss.c.transpose()));
            residuals.push(residual("D + D^T", &ss.d + &ss.d.transpose()));
        }
        CertKind::Eq7 => {
            let cb = &ss.c * &ss.b;
            residuals.push(residual("PA + A^T P", lyap));
            residuals.push(residual("PB - A^T C^T", &pb - &(&ss.a.transpose() * &ss.c.transpose())));
            residuals.push(residual("CB + (CB)^T", &cb + &cb.transpose()));
            residuals.push(residual("D - D^T", &ss.d - &ss.d.transpose()));
        }
        CertKind::Eq4 => {
            let k = l.map(QMat::cols).or(w.map(QMat::rows)).unwrap_or(0);
            let l = l.cloned().unwrap_or_else(|| QMat::zeros(n, k));
            let w = w.cloned().unwrap_or_else(|| QMat::zeros(k, m));
            check_dims("L", &l, n, k)?;
            check_dims("W", &w, k, m)?;
            residuals.push(residual("PA + A^T P + L L^T", &lyap + &(&l * &l.transpose())));
            residuals.push(residual("PB - C^T + L W", &(&pb - &ss.c.transpose()) + &(&l * &w)));
            residuals.push(residual("D + D^T - W^T W", &(&ss.d + &ss.d.transpose()) - &(&w.transpose() * &w)));
        }
    }
    let exact_psd = p.is_symmetric() && matches!(psd_check_exact(p), Ok(PsdVerdict::Psd));
    let min_eigenvalue = margin(p);
    let psd_ok = exact_psd || (tolerance > 0.0 && min_eigenvalue >= -tolerance);
    let residual_ok = residuals.iter().all(|r| r.is_zero() || to_f64(&r.max_abs) <= tolerance);
    Ok(VerifyReport { kind, residuals, psd: PsdMargin { exact_psd, min_eigenvalue }, tolerance, pass: psd_ok && residual_ok })
}

#[derive(Clone, Debug, PartialEq)]
pub enum LemmaOutcome {
    Certified(Certificate),
    Refuted { reason: String, best_margin: Option<f64> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LemmaReport {
    pub outcome: LemmaOutcome,
    pub warnings: Vec<String>,
    pub classifier_verdict: Verdict,
}

impl LemmaReport {
    pub fn certified(&self) -> bool {
        matches!(self.outcome, LemmaOutcome::Certified(_))
    }
}

/// Certifies a realization as LNI through `Eq7`, then cross-checks the
/// answer against the transfer-matrix classifier.
///
/// `(A, B)` must be controllable. An unobservable `(A, C)` only produces a
/// warning, since the statement survives dropping observability.
pub fn lni_lemma_check(ss: &StateSpace) -> Result<LemmaReport> {
    lni_lemma_check_with(ss, &SearchOptions::default())
}

pub fn lni_lemma_check_with(ss: &StateSpace, opts: &SearchOptions) -> Result<LemmaReport> {
    let n = ss.n();
    let (rc, ro) = ctrb_obsv_ranks(ss);
    if rc < n {
        return Err(Error::Uncontrollable { rank: rc, n });
    }
    let mut warnings = Vec::new();
    if ro < n {
        warnings.push(format!("(A, C) is not observable (rank {ro} < {n}); the certificate still applies"));
    }
    if ss.m() > n && n > 0 {
        warnings.push(format!("m = {} exceeds n = {n}", ss.m()));
    }
    let outcome = match solve_equality_family(ss, CertKind::Eq7)? {
        FamilyOutcome::Infeasible { block } => {
            LemmaOutcome::Refuted { reason: format!("equality block {block} cannot vanish"), best_margin: None }
        }
        FamilyOutcome::Feasible(family) => match find_psd_point_with(&family, opts) {
            SearchOutcome::NotFound { best_margin, .. } => LemmaOutcome::Refuted {
                reason: "no positive semidefinite P in the solution family".into(),
                best_margin: Some(best_margin),
            },
            SearchOutcome::Found(pt) => {
                let tol = if pt.exact { 0.0 } else { opts.tolerance };
                let report = verify_witness_parts(ss, CertKind::Eq7, &pt.p, None, None, tol)?;
                if !report.pass {
                    return Err(Error::Internal("family member fails its own equality blocks".into()));
                }
                LemmaOutcome::Certified(Certificate {
                    kind: CertKind::Eq7,
                    p: pt.p,
                    l: None,
                    w: None,
                    exact_reverified: pt.exact && report.residuals.iter().all(Residual::is_zero),
                    residuals: report.residuals,
                    psd_margin: report.psd,
                    provenance: pt.provenance,
                })
            }
        },
    };
    let classifier_verdict = is_lossless_ni(&transfer_of(ss)).verdict;
    let certified = matches!(outcome, LemmaOutcome::Certified(_));
    if certified != (classifier_verdict == Verdict::Lni) {
        return Err(Error::Internal(format!(
            "state-space certificate ({}) disagrees with the classifier ({})",
            if certified { "certified" } else { "refuted" },
            classifier_verdict.label()
        )));
    }
    Ok(LemmaReport { outcome, warnings, classifier_verdict })
}

/// Whether every residual is exactly zero.
pub fn residuals_exact_zero(rs: &[Residual]) -> bool {
    rs.iter().all(|r| !r.max_abs.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn example3() -> StateSpace {
        StateSpace::new(
            QMat::from_ints(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]),
            QMat::from_ints(&[&[1], &[0], &[0], &[0]]),
            QMat::from_ints(&[&[0, 2, 0, 1]]),
            QMat::from_ints(&[&[-2]]),
        )
        .unwrap()
    }

    fn known_p() -> QMat {
        QMat::from_ints(&[&[2, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 1, 0], &[0, 0, 0, 0]])
    }

    #[test]
    fn example3_family_contains_known_p() {
        let FamilyOutcome::Feasible(fam) = solve_equality_family(&example3(), CertKind::Eq7).unwrap() else {
            panic!("expected feasible")
        };
        assert!(fam.basis.is_empty());
        assert_eq!(fam.p0, known_p());
        let r = lni_lemma_check(&example3()).unwrap();
        let LemmaOutcome::Certified(c) = r.outcome else { panic!("expected certificate") };
        assert!(c.exact_reverified);
        assert_eq!(c.provenance, Provenance::ExactAffine);
    }

    #[test]
    fn verify_known_witness_and_perturbation() {
        let ss = example3();
        let r = verify_witness_parts(&ss, CertKind::Eq7, &known_p(), None, None, 0.0).unwrap();
        assert!(r.pass && r.psd.exact_psd);
        assert!(residuals_exact_zero(&r.residuals));
        let mut p = known_p();
        p[(0, 0)] = int(3);
        let r = verify_witness_parts(&ss, CertKind::Eq7, &p, None, None, 0.0).unwrap();
        assert!(!r.pass);
        let lyap = r.residuals.iter().find(|x| x.block == "PA + A^T P").unwrap();
        assert!(!lyap.is_zero());
    }

    #[test]
    fn eq5_integrator_and_eq4_reduction() {
        let ss = StateSpace::new(QMat::zeros(1, 1), QMat::identity(1), QMat::identity(1), QMat::zeros(1, 1)).unwrap();
        let FamilyOutcome::Feasible(fam) = solve_equality_family(&ss, CertKind::Eq5).unwrap() else { panic!() };
        assert_eq!(fam.p0, QMat::identity(1));
        assert!(fam.basis.is_empty());
        let e5 = verify_witness_parts(&ss, CertKind::Eq5, &fam.p0, None, None, 0.0).unwrap();
        let z = QMat::zeros(1, 1);
        let e4 = verify_witness_parts(&ss, CertKind::Eq4, &fam.p0, Some(&z), Some(&z), 0.0).unwrap();
        assert!(e5.pass && e4.pass);
        let v5: Vec<_> = e5.residuals.iter().map(|r| r.max_abs.clone()).collect();
        let v4: Vec<_> = e4.residuals.iter().map(|r| r.max_abs.clone()).collect();
        assert_eq!(v4, v5);
    }

    #[test]
    fn eq7_preconditions() {
        let mut ss = example3();
        ss.c = QMat::from_ints(&[&[1, 2, 0, 1]]);
        assert_eq!(
            solve_equality_family(&ss, CertKind::Eq7).unwrap(),
            FamilyOutcome::Infeasible { block: "CB + (CB)^T".into() }
        );
        let two = StateSpace::new(QMat::zeros(1, 1), QMat::from_ints(&[&[1, 0]]), QMat::from_ints(&[&[1], &[0]]), QMat::from_ints(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(
            solve_equality_family(&two, CertKind::Eq7).unwrap(),
            FamilyOutcome::Infeasible { block: "D - D^T".into() }
        );
    }

    #[test]
    fn first_order_lag_is_refuted() {
        let ss = StateSpace::new(QMat::from_ints(&[&[-1]]), QMat::identity(1), QMat::identity(1), QMat::zeros(1, 1)).unwrap();
        let r = lni_lemma_check(&ss).unwrap();
        assert!(!r.certified());
    }

    #[test]
    fn search_over_families() {
        let fam = AffineFamily { p0: QMat::from_ints(&[&[-1]]), basis: vec![] };
        let SearchOutcome::NotFound { best_margin, .. } = find_psd_point(&fam) else { panic!() };
        assert!((best_margin + 1.0).abs() < 1e-12);

        // diag(t, 1 - t): feasible exactly for t in [0, 1].
        let fam = AffineFamily { p0: QMat::from_ints(&[&[0, 0], &[0, 1]]), basis: vec![QMat::from_ints(&[&[1, 0], &[0, -1]])] };
        let SearchOutcome::Found(pt) = find_psd_point(&fam) else { panic!() };
        assert!(pt.exact);
        assert!(pt.t[0] >= int(0) && pt.t[0] <= int(1));
        assert!((to_f64(&pt.t[0]) - 0.5).abs() < 1e-6 || pt.t[0] == frac(1, 2));
        // Oracle: grid scan over t.
        let feasible = (0..=100).map(|k| frac(k, 100)).filter(|t| psd_check_exact(&fam.at(std::slice::from_ref(t))).unwrap().is_psd()).count();
        assert_eq!(feasible, 101);

        // Infeasible family: diag(t, -1 - t).
        let fam = AffineFamily { p0: QMat::from_ints(&[&[0, 0], &[0, -1]]), basis: vec![QMat::from_ints(&[&[1, 0], &[0, -1]])] };
        assert!(matches!(find_psd_point(&fam), SearchOutcome::NotFound { .. }));
    }

    #[test]
    fn zero_system_certified_with_empty_p() {
        let ss = StateSpace::new(QMat::zeros(0, 0), QMat::zeros(0, 1), QMat::zeros(1, 0), QMat::zeros(1, 1)).unwrap();
        let r = lni_lemma_check(&ss).unwrap();
        assert!(r.certified());
    }
}
