//! Partial-fraction spectral data of transfer matrices with imaginary-axis
//! poles:
//!
//! `G(s) = sum_i (s Q_i + T_i)/(s^2 + w_i^2) + C1/s + C2/s^2 + s A1 + s^2 A2 + D`
//!
//! All limits are read off polynomial coefficients (division by the
//! denominator for the polynomial part, Taylor coefficients at `s = 0` for
//! the Laurent part), never approximated numerically. Mode numerators are
//! obtained by reducing `(s^2 + w^2) G(s)` modulo `s^2 + w^2`, which stays in
//! the rationals even when `w` itself is irrational.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::poly::Poly;
use crate::rational::{exact_sqrt, format_rational, int, sqrt_approx, to_f64, ComplexRational, Rational};
use crate::transfer::{RationalFunction, TransferMatrix};

/// Default Hermitian-defect tolerance for numerically evaluated residues.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Default bit precision of the rational approximation of irrational `w`.
pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// The limit matrices at `s = infinity` and `s = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremeLimits {
    pub a2: QMat,
    pub a1: QMat,
    pub c2: QMat,
    pub c1: QMat,
    pub d_inf: QMat,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Exactness {
    Exact,
    Numeric { precision_bits: u32, tolerance: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub enum ResidueValue {
    Exact { re: QMat, im: QMat },
    Numeric { re: Vec<Vec<f64>>, im: Vec<Vec<f64>> },
}

/// `K = lim_{s -> jw} (s - jw) j G(s)` together with the real mode numerator
/// `(s Q + T)` of the conjugate-pair term. `T = 2w Re K`, `Q = 2 Im K`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueMatrix {
    pub omega_squared: Rational,
    pub k: ResidueValue,
    pub t: QMat,
    pub q: QMat,
    pub exactness: Exactness,
    /// `max |K - K^*|` (exactly zero or within tolerance when Hermitian).
    pub hermitian_defect: f64,
}

impl ResidueMatrix {
    /// Hermitian exactly: `Re K` symmetric and `Im K` skew.
    pub fn is_hermitian(&self) -> bool {
        self.t.is_symmetric() && self.q.is_skew()
    }

    /// Real symmetric matrix congruent to the embedding of `2w K`:
    /// `[[T, -w^2 Q], [w^2 Q, w^2 T]]`. PSD exactly when `K` is.
    pub fn psd_test_matrix(&self) -> QMat {
        let w2 = &self.omega_squared;
        let n = self.t.rows();
        QMat::from_fn(2 * n, 2 * n, |i, j| {
            let (bi, ii) = (i / n, i % n);
            let (bj, jj) = (j / n, j % n);
            match (bi, bj) {
                (0, 0) => self.t[(ii, jj)].clone(),
                (1, 1) => w2 * &self.t[(ii, jj)],
                (0, 1) => -(w2 * &self.q[(ii, jj)]),
                _ => w2 * &self.q[(ii, jj)],
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mode {
    pub omega_squared: Rational,
    pub t: QMat,
    pub q: QMat,
    pub residue: ResidueMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    pub m: usize,
    pub a2: QMat,
    pub a1: QMat,
    pub c2: QMat,
    pub c1: QMat,
    pub d_inf: QMat,
    /// Sorted by `omega_squared`, no duplicates.
    pub modes: Vec<Mode>,
    pub zero_order: usize,
    pub infinity_order: usize,
}

impl SpectralData {
    pub fn zero(m: usize) -> Self {
        let z = QMat::zeros(m, m);
        Self {
            m,
            a2: z.clone(),
            a1: z.clone(),
            c2: z.clone(),
            c1: z.clone(),
            d_inf: z,
            modes: Vec::new(),
            zero_order: 0,
            infinity_order: 0,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.modes.iter().all(|m| m.residue.exactness == Exactness::Exact)
    }

    /// Adds a mode `(s Q + T)/(s^2 + w^2)`, merging with an existing mode at
    /// the same frequency.
    pub fn add_mode(&mut self, omega_squared: Rational, t: QMat, q: QMat) {
        if let Some(existing) = self.modes.iter_mut().find(|m| m.omega_squared == omega_squared) {
            existing.t = &existing.t + &t;
            existing.q = &existing.q + &q;
            existing.residue = residue_from_numerators(&omega_squared, &existing.t, &existing.q, DEFAULT_PRECISION_BITS);
            return;
        }
        let residue = residue_from_numerators(&omega_squared, &t, &q, DEFAULT_PRECISION_BITS);
        self.modes.push(Mode { omega_squared, t, q, residue });
        self.modes.sort_by(|a, b| a.omega_squared.cmp(&b.omega_squared));
    }
}

/// Coefficients `(t0, t1)` of the Taylor series of `n/d` at zero; `d(0) != 0`.
fn taylor2(n: &Poly, d: &Poly) -> (Rational, Rational) {
    let d0 = d.coeff(0);
    let t0 = n.coeff(0) / &d0;
    let t1 = (n.coeff(1) - &t0 * d.coeff(1)) / &d0;
    (t0, t1)
}

/// `(C2, C1)`: Laurent coefficients of `s^-2` and `s^-1` at zero.
pub fn zero_limits(g: &TransferMatrix) -> Result<(QMat, QMat)> {
    let m = g.dim();
    let zero = g.lcm_denominator().zero_root_order();
    if zero > 2 {
        return Err(Error::DoublePoleBound(format!("pole of order {zero} at zero")));
    }
    let mut c2 = QMat::zeros(m, m);
    let mut c1 = QMat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let e = g.entry(i, j);
            let k = e.den().zero_root_order();
            if k == 0 {
                continue;
            }
            let (t0, t1) = taylor2(e.num(), &e.den().shift_down(k));
            if k == 1 {
                c1[(i, j)] = t0;
            } else {
                c2[(i, j)] = t0;
                c1[(i, j)] = t1;
            }
        }
    }
    Ok((c2, c1))
}

/// Matrix of the `s^k` coefficients of the polynomial parts of the entries.
pub fn polynomial_coefficient(g: &TransferMatrix, k: usize) -> QMat {
    let m = g.dim();
    QMat::from_fn(m, m, |i, j| g.entry(i, j).split_polynomial().0.coeff(k))
}

/// `(A2, A1, D_inf)` from the polynomial parts of the entries.
pub fn infinity_limits(g: &TransferMatrix) -> Result<(QMat, QMat, QMat)> {
    let inf = g.infinity_pole_order();
    if inf > 2 {
        return Err(Error::DoublePoleBound(format!("pole of order {inf} at infinity")));
    }
    let m = g.dim();
    let mut a2 = QMat::zeros(m, m);
    let mut a1 = QMat::zeros(m, m);
    let mut d = QMat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let (q, _) = g.entry(i, j).split_polynomial();
            d[(i, j)] = q.coeff(0);
            a1[(i, j)] = q.coeff(1);
            a2[(i, j)] = q.coeff(2);
        }
    }
    Ok((a2, a1, d))
}

/// `A2, A1, C2, C1` and `G(infinity)` of the proper part.
pub fn limits_at_extremes(g: &TransferMatrix) -> Result<ExtremeLimits> {
    let (a2, a1, d_inf) = infinity_limits(g)?;
    let (c2, c1) = zero_limits(g)?;
    Ok(ExtremeLimits { a2, a1, c2, c1, d_inf })
}

/// Residue `lim (s - jw) G(s)` at one root of an irrational pair group,
/// evaluated at rational approximations.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericResidue {
    pub omega: f64,
    pub re: nalgebra::DMatrix<f64>,
    pub im: nalgebra::DMatrix<f64>,
}

/// Residues of `G` at the poles `j w`, `w > 0`, with `-w^2` a root of
/// `factor_in_u` (squarefree, all roots negative). Uses the lcm denominator
/// `D`: each entry `n/d` is rewritten over `D` and the residue is
/// `n (D/d)(jw) / D'(jw)`.
pub fn numeric_residues(g: &TransferMatrix, factor_in_u: &Poly, precision_bits: u32) -> Result<Vec<NumericResidue>> {
    let lcm = g.lcm_denominator();
    let dprime = lcm.derivative();
    let lo = -factor_in_u.root_bound();
    let roots = factor_in_u.real_roots_approx(&lo, &Rational::zero(), precision_bits + 8)?;
    let m = g.dim();
    let mut out = Vec::new();
    for u in roots {
        let w = sqrt_approx(&-u, precision_bits);
        let jw = ComplexRational::imaginary(w.clone());
        let denom = dprime.eval_complex(&jw);
        let mut re = nalgebra::DMatrix::zeros(m, m);
        let mut im = nalgebra::DMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                let e = g.entry(i, j);
                let cof = lcm.exact_div(e.den())?;
                let num = (e.num() * &cof).eval_complex(&jw);
                let v = &num / &denom;
                let (r, iv) = v.to_f64_pair();
                re[(i, j)] = r;
                im[(i, j)] = iv;
            }
        }
        out.push(NumericResidue { omega: to_f64(&w), re, im });
    }
    Ok(out)
}

fn pair_factor(omega_squared: &Rational) -> Poly {
    Poly::new(vec![omega_squared.clone(), Rational::zero(), Rational::one()])
}

/// Multiplicity of `s^2 + w^2` in `p`.
fn pair_multiplicity(p: &Poly, factor: &Poly) -> usize {
    let mut k = 0;
    let mut cur = p.clone();
    while let Ok((q, r)) = cur.divmod(factor) {
        if !r.is_zero() || cur.is_zero() {
            break;
        }
        cur = q;
        k += 1;
    }
    k
}

/// Inverse of `c + e s` modulo `s^2 + w^2`.
fn inverse_mod_pair(c: &Rational, e: &Rational, w2: &Rational) -> Option<(Rational, Rational)> {
    let norm = c * c + e * e * w2;
    if norm.is_zero() {
        return None;
    }
    Some((c / &norm, -e / &norm))
}

/// Numerator `alpha + beta s` of the `(s^2+w^2)` partial fraction of `r`.
fn pair_numerator(r: &RationalFunction, factor: &Poly, w2: &Rational) -> Result<(Rational, Rational)> {
    if pair_multiplicity(r.den(), factor) == 0 {
        return Ok((Rational::zero(), Rational::zero()));
    }
    let deflated = r.den().exact_div(factor)?;
    let n = r.num().rem(factor)?;
    let d = deflated.rem(factor)?;
    let (ic, ie) = inverse_mod_pair(&d.coeff(0), &d.coeff(1), w2)
        .ok_or_else(|| Error::HigherOrderImaginaryPole(format_rational(w2)))?;
    let (a, b) = (n.coeff(0), n.coeff(1));
    // (a + b s)(ic + ie s) with s^2 = -w^2
    let alpha = &a * &ic - &b * &ie * w2;
    let beta = &a * &ie + &b * &ic;
    Ok((alpha, beta))
}

/// Assembles the residue report from a mode numerator `s Q + T`.
pub fn residue_from_numerators(omega_squared: &Rational, t: &QMat, q: &QMat, precision_bits: u32) -> ResidueMatrix {
    let half = Rational::new(1.into(), 2.into());
    match exact_sqrt(omega_squared) {
        Some(w) => {
            let re = t.scale(&(Rational::one() / (int(2) * &w)));
            let im = q.scale(&half);
            let defect = (&re - &re.transpose()).max_abs().max((&im + &im.transpose()).max_abs());
            ResidueMatrix {
                omega_squared: omega_squared.clone(),
                k: ResidueValue::Exact { re, im },
                t: t.clone(),
                q: q.clone(),
                exactness: Exactness::Exact,
                hermitian_defect: to_f64(&defect),
            }
        }
        None => {
            let w = sqrt_approx(omega_squared, precision_bits);
            let scale = Rational::one() / (int(2) * &w);
            let n = t.rows();
            let re: Vec<Vec<f64>> =
                (0..n).map(|i| (0..n).map(|j| to_f64(&(&t[(i, j)] * &scale))).collect()).collect();
            let im: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| to_f64(&(&q[(i, j)] * &half))).collect()).collect();
            let mut defect: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    defect = defect.max((re[i][j] - re[j][i]).abs()).max((im[i][j] + im[j][i]).abs());
                }
            }
            ResidueMatrix {
                omega_squared: omega_squared.clone(),
                k: ResidueValue::Numeric { re, im },
                t: t.clone(),
                q: q.clone(),
                exactness: Exactness::Numeric { precision_bits, tolerance: DEFAULT_TOLERANCE },
                hermitian_defect: defect,
            }
        }
    }
}

/// Residue matrix of `jG(s)` at the simple pole `s = j sqrt(omega_squared)`.
///
/// Exact in complex rationals when `sqrt(omega_squared)` is rational;
/// otherwise `K` is evaluated from the deflated-denominator formula at a
/// rational approximation of `w` with `precision_bits` bits.
pub fn residue_at(g: &TransferMatrix, omega_squared: &Rational, precision_bits: u32) -> Result<ResidueMatrix> {
    if omega_squared <= &Rational::zero() {
        return Err(Error::NotAPole(format_rational(omega_squared)));
    }
    let factor = pair_factor(omega_squared);
    let mult = pair_multiplicity(&g.lcm_denominator(), &factor);
    match mult {
        0 => return Err(Error::NotAPole(format_rational(omega_squared))),
        1 => {}
        _ => return Err(Error::HigherOrderImaginaryPole(format_rational(omega_squared))),
    }
    let m = g.dim();
    let mut t = QMat::zeros(m, m);
    let mut q = QMat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let (alpha, beta) = pair_numerator(g.entry(i, j), &factor, omega_squared)?;
            t[(i, j)] = alpha;
            q[(i, j)] = beta;
        }
    }
    let mut res = residue_from_numerators(omega_squared, &t, &q, precision_bits);
    if let ResidueValue::Numeric { re, im } = &mut res.k {
        // Report K from the deflated formula j N(jw) / D~(jw) at w ~ sqrt(w^2).
        let w = sqrt_approx(omega_squared, precision_bits);
        let jw = ComplexRational::imaginary(w.clone());
        let two_jw = ComplexRational::imaginary(int(2) * &w);
        for i in 0..m {
            for j in 0..m {
                let e = g.entry(i, j);
                if pair_multiplicity(e.den(), &factor) == 0 {
                    re[i][j] = 0.0;
                    im[i][j] = 0.0;
                    continue;
                }
                let dt = e.den().exact_div(&factor)?.eval_complex(&jw);
                let denom = &dt * &two_jw;
                let val = &(&ComplexRational::j() * &e.num().eval_complex(&jw)) / &denom;
                let (r, iv) = val.to_f64_pair();
                re[i][j] = r;
                im[i][j] = iv;
            }
        }
        let mut defect: f64 = 0.0;
        for i in 0..m {
            for j in 0..m {
                defect = defect.max((re[i][j] - re[j][i]).abs()).max((im[i][j] + im[j][i]).abs());
            }
        }
        res.hermitian_defect = defect;
    }
    Ok(res)
}

/// Full spectral decomposition. Requires all poles on the imaginary axis,
/// simple finite nonzero poles with rational `w^2`, and order at most two at
/// zero and infinity.
pub fn partial_fraction_expand(g: &TransferMatrix) -> Result<SpectralData> {
    let table = g.pole_table();
    if let Some(f) = table.off_axis_factors.first() {
        return Err(Error::NonImaginaryPole(format!("denominator factor {f}")));
    }
    if let Some((f, _)) = table.irrational_pair_groups().first() {
        return Err(Error::Unsupported(format!(
            "imaginary pole pairs with irrational w^2 (roots of {f} in u = -w^2)"
        )));
    }
    for (w2, order) in table.rational_pairs() {
        if order > 1 {
            return Err(Error::HigherOrderImaginaryPole(format_rational(&w2)));
        }
    }
    let lim = limits_at_extremes(g)?;
    let mut data = SpectralData {
        m: g.dim(),
        a2: lim.a2,
        a1: lim.a1,
        c2: lim.c2,
        c1: lim.c1,
        d_inf: lim.d_inf,
        modes: Vec::new(),
        zero_order: table.zero_order(),
        infinity_order: table.infinity_order(),
    };
    for (w2, _) in table.rational_pairs() {
        let r = residue_at(g, &w2, DEFAULT_PRECISION_BITS)?;
        data.modes.push(Mode { omega_squared: w2, t: r.t.clone(), q: r.q.clone(), residue: r });
    }
    if reconstruct(&data) != *g {
        return Err(Error::Internal("partial-fraction terms do not reassemble the input".into()));
    }
    Ok(data)
}

/// Reassembles the transfer matrix from its spectral data.
pub fn reconstruct(data: &SpectralData) -> TransferMatrix {
    let m = data.m;
    let s = Poly::s();
    let s2 = Poly::monomial(Rational::one(), 2);
    TransferMatrix::from_fn(m, |i, j| {
        let poly = Poly::new(vec![data.d_inf[(i, j)].clone(), data.a1[(i, j)].clone(), data.a2[(i, j)].clone()]);
        let mut acc = RationalFunction::from_poly(poly);
        let laurent = Poly::new(vec![data.c2[(i, j)].clone(), data.c1[(i, j)].clone()]);
        if !laurent.is_zero() {
            acc = &acc + &RationalFunction::new(laurent, s2.clone()).unwrap();
        }
        for mode in &data.modes {
            let num = &Poly::constant(mode.t[(i, j)].clone()) + &s.scale(&mode.q[(i, j)]);
            if !num.is_zero() {
                acc = &acc + &RationalFunction::new(num, pair_factor(&mode.omega_squared)).unwrap();
            }
        }
        acc
    })
}

/// Which non-modal terms the generator includes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct PoleFlags {
    /// Skew `C1 / s` (vanishes for `m = 1`).
    pub c1: bool,
    /// PSD `C2 / s^2`.
    pub c2: bool,
    /// Skew `s A1` (vanishes for `m = 1`).
    pub a1: bool,
    /// NSD `s^2 A2`.
    pub a2: bool,
}

impl PoleFlags {
    pub fn all() -> [PoleFlags; 16] {
        let mut out = [PoleFlags::default(); 16];
        for (k, f) in out.iter_mut().enumerate() {
            *f = PoleFlags { c1: k & 1 != 0, c2: k & 2 != 0, a1: k & 4 != 0, a2: k & 8 != 0 };
        }
        out
    }

    pub fn is_proper(&self) -> bool {
        !self.a1 && !self.a2
    }

    pub fn has_zero_pole(&self) -> bool {
        self.c1 || self.c2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub m: usize,
    pub modes: usize,
    pub flags: PoleFlags,
    pub seed: u64,
    /// Row count of the random factor `M` in `M^T M`; bounds mode ranks.
    pub max_rank: Option<usize>,
    /// Include a symmetric feedthrough `D`.
    pub feedthrough: bool,
}

impl GeneratorSpec {
    pub fn new(m: usize, modes: usize, flags: PoleFlags, seed: u64) -> Self {
        Self { m, modes, flags, seed, max_rank: None, feedthrough: true }
    }
}

struct Draw {
    rng: ChaCha8Rng,
}

impl Draw {
    fn int_matrix(&mut self, rows: usize, cols: usize) -> QMat {
        QMat::from_fn(rows, cols, |_, _| int(self.rng.gen_range(-2..=2)))
    }

    fn nonzero_matrix(&mut self, rows: usize, cols: usize) -> QMat {
        loop {
            let m = self.int_matrix(rows, cols);
            if !m.is_zero() {
                return m;
            }
        }
    }

    /// Nonzero `M^T M`.
    fn psd(&mut self, m: usize, rank: usize) -> QMat {
        let f = self.nonzero_matrix(rank, m);
        &f.transpose() * &f
    }

    /// `M - M^T`, nonzero whenever `m >= 2`.
    fn skew(&mut self, m: usize) -> QMat {
        if m < 2 {
            return QMat::zeros(m, m);
        }
        loop {
            let f = self.int_matrix(m, m);
            let s = &f - &f.transpose();
            if !s.is_zero() {
                return s;
            }
        }
    }

    fn symmetric(&mut self, m: usize) -> QMat {
        let f = self.int_matrix(m, m);
        &f + &f.transpose()
    }
}

/// Random LNI spectral data: PSD mode numerators `T_i = M^T M`, PSD `C2`,
/// NSD `A2`, skew `A1` and `C1`, symmetric `D`, distinct rational `w_i`.
pub fn generate_lni_data(spec: &GeneratorSpec) -> SpectralData {
    let mut draw = Draw { rng: ChaCha8Rng::seed_from_u64(spec.seed) };
    let m = spec.m;
    let rank = spec.max_rank.unwrap_or(m).clamp(1, m);
    let mut data = SpectralData::zero(m);
    if spec.flags.c2 {
        data.c2 = draw.psd(m, rank);
    }
    if spec.flags.c1 {
        data.c1 = draw.skew(m);
    }
    if spec.flags.a2 {
        data.a2 = -&draw.psd(m, rank);
    }
    if spec.flags.a1 {
        data.a1 = draw.skew(m);
    }
    if spec.feedthrough {
        data.d_inf = draw.symmetric(m);
    }
    let mut used: Vec<Rational> = Vec::new();
    while data.modes.len() < spec.modes {
        let w = Rational::new(draw.rng.gen_range(1..=6).into(), draw.rng.gen_range(1..=3).into());
        let w2 = &w * &w;
        if used.contains(&w2) {
            continue;
        }
        used.push(w2.clone());
        let t = draw.psd(m, rank);
        data.add_mode(w2, t, QMat::zeros(m, m));
    }
    let g = reconstruct(&data);
    // Record the realized pole orders.
    let table = g.pole_table();
    data.zero_order = table.zero_order();
    data.infinity_order = table.infinity_order();
    data
}

/// Random transfer matrix that is LNI by construction.
pub fn generate_lni(spec: &GeneratorSpec) -> TransferMatrix {
    reconstruct(&generate_lni_data(spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    fn example3_tf() -> TransferMatrix {
        TransferMatrix::new(vec![vec![rf(&[1, 0, 0, 0, -2], &[0, 0, 1, 0, 1])]]).unwrap()
    }

    fn example1() -> TransferMatrix {
        TransferMatrix::new(vec![
            vec![rf(&[1], &[1, 0, 1]), rf(&[0, -1], &[1])],
            vec![rf(&[0, 1], &[1]), rf(&[1], &[1, 0, 1])],
        ])
        .unwrap()
    }

    fn example2() -> TransferMatrix {
        TransferMatrix::new(vec![
            vec![rf(&[0, 0, -1], &[1, 0, 1]), rf(&[1, 1], &[0, 1])],
            vec![rf(&[-1, 1], &[0, 1]), rf(&[0, 0, -1], &[1, 0, 1])],
        ])
        .unwrap()
    }

    #[test]
    fn limits_example3_tf() {
        let l = limits_at_extremes(&example3_tf()).unwrap();
        assert_eq!(l.c2, QMat::from_ints(&[&[1]]));
        assert_eq!(l.d_inf, QMat::from_ints(&[&[-2]]));
        assert!(l.a2.is_zero() && l.a1.is_zero() && l.c1.is_zero());
    }

    #[test]
    fn limits_examples() {
        let l = limits_at_extremes(&example1()).unwrap();
        assert_eq!(l.a1, QMat::from_ints(&[&[0, -1], &[1, 0]]));
        assert!(l.a2.is_zero());
        let l = limits_at_extremes(&example2()).unwrap();
        assert_eq!(l.c1, QMat::from_ints(&[&[0, 1], &[-1, 0]]));
        assert_eq!(l.d_inf, QMat::from_ints(&[&[-1, 1], &[1, -1]]));
    }

    #[test]
    fn limits_reject_triple_poles() {
        let g = TransferMatrix::new(vec![vec![rf(&[0, 0, 0, 1], &[1])]]).unwrap();
        assert!(matches!(limits_at_extremes(&g), Err(Error::DoublePoleBound(_))));
        let g = TransferMatrix::new(vec![vec![rf(&[1], &[0, 0, 0, 1])]]).unwrap();
        assert!(matches!(limits_at_extremes(&g), Err(Error::DoublePoleBound(_))));
    }

    #[test]
    fn residue_examples() {
        let r = residue_at(&example1(), &int(1), DEFAULT_PRECISION_BITS).unwrap();
        assert_eq!(r.k, ResidueValue::Exact { re: QMat::from_rows(vec![vec![frac(1, 2), int(0)], vec![int(0), frac(1, 2)]]).unwrap(), im: QMat::zeros(2, 2) });
        assert_eq!(r.t, QMat::identity(2));

        let r = residue_at(&example3_tf(), &int(1), DEFAULT_PRECISION_BITS).unwrap();
        assert_eq!(r.k, ResidueValue::Exact { re: QMat::from_rows(vec![vec![frac(1, 2)]]).unwrap(), im: QMat::zeros(1, 1) });
        assert_eq!(r.t, QMat::from_ints(&[&[1]]));

        assert!(matches!(residue_at(&example3_tf(), &int(4), 64), Err(Error::NotAPole(_))));
        let double = TransferMatrix::new(vec![vec![rf(&[1], &[1, 0, 2, 0, 1])]]).unwrap();
        assert!(matches!(residue_at(&double, &int(1), 64), Err(Error::HigherOrderImaginaryPole(_))));
    }

    #[test]
    fn numeric_residue_path() {
        // 1/(s^2+2) at w^2 = 2: K = 1/(2 sqrt 2).
        let g = TransferMatrix::new(vec![vec![rf(&[1], &[2, 0, 1])]]).unwrap();
        let r = residue_at(&g, &int(2), DEFAULT_PRECISION_BITS).unwrap();
        let ResidueValue::Numeric { re, im } = &r.k else { panic!("expected numeric path") };
        assert!((re[0][0] - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-15);
        assert!(im[0][0].abs() < 1e-15);
        assert!(r.hermitian_defect <= DEFAULT_TOLERANCE);
        assert_eq!(r.t, QMat::from_ints(&[&[1]]));
        // Independent check: (s - jw) jG(s) along s = j(w + h).
        let w = 2f64.sqrt();
        for k in 4..8 {
            let h = 10f64.powi(-k);
            let s = w + h; // s = j s
            // (j s - j w) * j / (w^2 - s^2), with G(js) = 1/(2 - s^2)
            let lim = -(s - w) / (2.0 - s * s);
            assert!((lim - re[0][0]).abs() < 10.0 * h);
        }
    }

    #[test]
    fn expansion_example3_tf() {
        let d = partial_fraction_expand(&example3_tf()).unwrap();
        assert_eq!(d.c2, QMat::from_ints(&[&[1]]));
        assert_eq!(d.d_inf, QMat::from_ints(&[&[-2]]));
        assert_eq!(d.modes.len(), 1);
        assert_eq!(d.modes[0].t, QMat::from_ints(&[&[1]]));
        assert!(d.a1.is_zero() && d.a2.is_zero() && d.c1.is_zero());
        assert_eq!(reconstruct(&d), example3_tf());
    }

    #[test]
    fn expansion_zero_and_example1() {
        let d = partial_fraction_expand(&TransferMatrix::zero(2)).unwrap();
        assert_eq!(d, SpectralData::zero(2));
        assert_eq!(reconstruct(&SpectralData::zero(3)), TransferMatrix::zero(3));

        let d = partial_fraction_expand(&example1()).unwrap();
        assert_eq!(d.a1, QMat::from_ints(&[&[0, -1], &[1, 0]]));
        assert_eq!(d.modes.len(), 1);
        assert_eq!(d.modes[0].t, QMat::identity(2));
        assert!(d.modes[0].q.is_zero());
        assert!(d.c1.is_zero() && d.c2.is_zero() && d.a2.is_zero() && d.d_inf.is_zero());
    }

    #[test]
    fn expansion_preconditions() {
        let g = TransferMatrix::new(vec![vec![rf(&[1], &[1, 1])]]).unwrap();
        assert!(matches!(partial_fraction_expand(&g), Err(Error::NonImaginaryPole(_))));
        let g = TransferMatrix::new(vec![vec![rf(&[1], &[1, 0, 3, 0, 1])]]).unwrap();
        assert!(matches!(partial_fraction_expand(&g), Err(Error::Unsupported(_))));
    }

    #[test]
    fn skew_mode_numerators_round_trip() {
        let mut data = SpectralData::zero(2);
        data.add_mode(int(4), QMat::from_ints(&[&[2, 0], &[0, 2]]), QMat::from_ints(&[&[0, 1], &[-1, 0]]));
        let g = reconstruct(&data);
        let back = partial_fraction_expand(&g).unwrap();
        assert_eq!(back.modes[0].q, QMat::from_ints(&[&[0, 1], &[-1, 0]]));
        assert_eq!(reconstruct(&back), g);
    }

    #[test]
    fn generator_canonical_cases() {
        let mut spec = GeneratorSpec::new(2, 0, PoleFlags { c2: true, ..Default::default() }, 1);
        spec.feedthrough = false;
        let d = generate_lni_data(&spec);
        assert!(d.c2.is_symmetric());
        assert_eq!(d.zero_order, 2);
        let spec = GeneratorSpec { m: 2, modes: 0, flags: PoleFlags { a1: true, ..Default::default() }, seed: 3, max_rank: None, feedthrough: false };
        let d = generate_lni_data(&spec);
        assert!(d.a1.is_skew() && !d.a1.is_zero());
        assert_eq!(d.infinity_order, 1);
    }

    #[test]
    fn generator_is_deterministic() {
        let spec = GeneratorSpec::new(3, 3, PoleFlags::all()[15], 42);
        assert_eq!(generate_lni(&spec), generate_lni(&spec));
        let d = generate_lni_data(&spec);
        assert_eq!(d.modes.len(), 3);
        assert!(d.modes.windows(2).all(|w| w[0].omega_squared < w[1].omega_squared));
    }
}
