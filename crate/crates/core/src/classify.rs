//! Class membership decisions for lossless negative imaginary (LNI) and
//! lossless positive real (LPR) transfer matrices.
//!
//! Both lossless classes are characterized by algebraic identities plus pole
//! and residue conditions, so they are decided exactly. The general
//! (non-lossless) NI and PR inequalities are only sampled on a rational
//! frequency grid and never upgraded to a proof.
//!
//! The LNI conditions, in evaluation order:
//!
//! | id      | condition |
//! |---------|-----------|
//! | `lni-1` | all poles purely imaginary |
//! | `lni-2` | pole at zero at most double, `C2 = lim s^2 G(s)` symmetric PSD |
//! | `lni-3` | finite poles `jw`, `w > 0`, simple with Hermitian PSD residue of `jG` |
//! | `lni-4` | pole at infinity at most double, `A2` symmetric NSD, `A_k = 0` for `k >= 3` |
//! | `lni-5` | `G(s) = G^T(-s)` |

use nalgebra::DMatrix;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_embedding, min_eigen, psd_check_exact, PsdVerdict, QMat};
use crate::poly::Poly;
use crate::rational::{format_rational, frac, int, ComplexRational, Rational};
use crate::spectral::{
    infinity_limits, numeric_residues, partial_fraction_expand, polynomial_coefficient, residue_at, zero_limits,
    SpectralData, DEFAULT_PRECISION_BITS, DEFAULT_TOLERANCE,
};
use crate::transfer::{PoleLocation, PoleTable, TransferMatrix};

#[derive(Clone, Debug, PartialEq)]
pub struct ClassifyOptions {
    /// Max-norm Hermitian defect and negative eigenvalue allowance on the
    /// numeric residue path.
    pub tolerance: f64,
    pub precision_bits: u32,
    /// Positive rational frequencies for the sampled inequality checks.
    pub grid: Vec<Rational>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { tolerance: DEFAULT_TOLERANCE, precision_bits: DEFAULT_PRECISION_BITS, grid: default_grid() }
    }
}

/// `1/10, 1/3, 1/2, 1, 3/2, 2, 3, 5, 10, 100`
pub fn default_grid() -> Vec<Rational> {
    vec![frac(1, 10), frac(1, 3), frac(1, 2), int(1), frac(3, 2), int(2), int(3), int(5), int(10), int(100)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Lni,
    /// Not lossless; NI membership is not decided.
    NiOnlyUndecided,
    /// Violates a necessary condition of the NI class.
    NotNi,
    Lpr,
    /// Not lossless; PR membership is not decided.
    PrUndecided,
    NotPr,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Lni => "LNI",
            Verdict::NiOnlyUndecided => "NI-only-undecided",
            Verdict::NotNi => "not-NI",
            Verdict::Lpr => "LPR",
            Verdict::PrUndecided => "PR-undecided",
            Verdict::NotPr => "not-PR",
        }
    }

    pub fn is_affirmative(&self) -> bool {
        matches!(self, Verdict::Lni | Verdict::Lpr)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ReportExactness {
    Exact,
    ToleranceQualified { tolerance: f64, precision_bits: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionStatus {
    Pass,
    Fail,
    /// Not evaluated because an earlier condition failed.
    Skipped,
}

/// Evidence that an off-axis pole factor has a root in `Re s > 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum RhpEvidence {
    /// Exact Sturm count of positive real roots.
    PositiveRealRoots(usize),
    /// Companion-matrix eigenvalue with clearly positive real part.
    NumericRoot { re: f64, im: f64 },
    /// No right-half-plane root detected.
    NotDetected,
}

/// Value of a sampled Hermitian test matrix `H = X + jY`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencySample {
    pub omega: Rational,
    pub re: QMat,
    pub im: QMat,
    /// Numeric estimate of the smallest eigenvalue of `H`.
    pub min_eigenvalue: f64,
    /// Exact decision of `H >= 0`.
    pub psd: bool,
}

impl FrequencySample {
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    OffAxisPoles { factor: Poly, right_half_plane: RhpEvidence },
    PoleOrder { location: PoleLocation, order: usize, bound: usize },
    /// A matrix that must vanish but does not.
    Defect { label: String, matrix: QMat },
    /// `x^T S x = value < 0` for the matrix `S` that must be PSD.
    NotSemidefinite { label: String, matrix: QMat, vector: Vec<Rational>, value: Rational },
    NumericResidue { omega: f64, hermitian_defect: f64, min_eigenvalue: f64 },
    Frequency(FrequencySample),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    pub id: &'static str,
    pub citation: &'static str,
    pub status: ConditionStatus,
    pub witness: Vec<Witness>,
}

impl ConditionReport {
    fn new(id: &'static str, citation: &'static str) -> Self {
        Self { id, citation, status: ConditionStatus::Pass, witness: Vec::new() }
    }

    fn skipped(id: &'static str, citation: &'static str) -> Self {
        Self { id, citation, status: ConditionStatus::Skipped, witness: Vec::new() }
    }

    fn fail(&mut self, w: Witness) {
        self.status = ConditionStatus::Fail;
        self.witness.push(w);
    }

    pub fn passed(&self) -> bool {
        self.status == ConditionStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == ConditionStatus::Fail
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub conditions: Vec<ConditionReport>,
    pub exactness: ReportExactness,
    pub spectral: Option<SpectralData>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    pub fn condition(&self, id: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.id == id)
    }

    pub fn failed_conditions(&self) -> impl Iterator<Item = &ConditionReport> {
        self.conditions.iter().filter(|c| c.failed())
    }
}

pub const LNI_POLES: &str = "all poles purely imaginary";
pub const LNI_ZERO: &str = "pole at s=0 at most double; lim s^2 G(s) symmetric PSD";
pub const LNI_FINITE: &str = "poles at jw, w>0, simple; residue of jG(s) Hermitian PSD";
pub const LNI_INFINITY: &str = "pole at infinity at most double; lim G(jw)/(jw)^2 symmetric NSD; A_k = 0 for k>=3";
pub const LNI_PARA: &str = "G(s) = G^T(-s)";
pub const NI_SAMPLED: &str = "j[G(jw) - G*(jw)] >= 0 on the sampled grid (not a proof)";
pub const LPR_PARA: &str = "F(s) + F^T(-s) = 0";
pub const LPR_POLES: &str = "all poles purely imaginary";
pub const LPR_SIMPLE: &str = "all poles simple, including s=0 and infinity";
pub const LPR_FINITE: &str = "residues at s=0 and s=jw Hermitian PSD";
pub const LPR_INFINITY: &str = "residue at infinity (coefficient of s) symmetric PSD";
pub const PR_SAMPLED: &str = "F(jw) + F*(jw) >= 0 on the sampled grid (not a proof)";

/// Smallest eigenvalue of the Hermitian `re + j im`.
fn hermitian_min_eig_f64(re: &DMatrix<f64>, im: &DMatrix<f64>) -> f64 {
    let n = re.nrows();
    if n == 0 {
        return 0.0;
    }
    let emb = DMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let (bi, ii, bj, jj) = (i / n, i % n, j / n, j % n);
        match (bi, bj) {
            (0, 0) | (1, 1) => re[(ii, jj)],
            (0, 1) => -im[(ii, jj)],
            _ => im[(ii, jj)],
        }
    });
    min_eigen(&emb).map_or(0.0, |(l, _)| l)
}

fn hermitian_defect_f64(re: &DMatrix<f64>, im: &DMatrix<f64>) -> f64 {
    let n = re.nrows();
    let mut d: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            d = d.max((re[(i, j)] - re[(j, i)]).abs()).max((im[(i, j)] + im[(j, i)]).abs());
        }
    }
    d
}

/// Finds right-half-plane roots of an off-axis factor.
pub fn rhp_evidence(factor: &Poly) -> RhpEvidence {
    if let Ok(n) = factor.count_real_roots_in(Some(&Rational::zero()), None) {
        if n > 0 {
            return RhpEvidence::PositiveRealRoots(n);
        }
    }
    let Some(deg) = factor.degree() else { return RhpEvidence::NotDetected };
    if deg == 0 {
        return RhpEvidence::NotDetected;
    }
    let monic = factor.monic();
    let c: Vec<f64> = monic.coeffs().iter().map(crate::rational::to_f64).collect();
    let companion = DMatrix::from_fn(deg, deg, |i, j| {
        if j == deg - 1 {
            -c[i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let scale = c.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    companion
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.re > 1e-7 * scale)
        .max_by(|a, b| a.re.total_cmp(&b.re))
        .map_or(RhpEvidence::NotDetected, |z| RhpEvidence::NumericRoot { re: z.re, im: z.im })
}

fn sample(omega: &Rational, re: QMat, im: QMat) -> Result<FrequencySample> {
    let emb = hermitian_embedding(&re, &im);
    let psd = psd_check_exact(&emb)?.is_psd();
    let min_eigenvalue = emb.min_eigen_f64().map_or(0.0, |(l, _)| l);
    Ok(FrequencySample { omega: omega.clone(), re, im, min_eigenvalue, psd })
}

/// Exact value of `j[G(jw) - G*(jw)]` as `(re, im)`.
pub fn ni_test_matrix(g: &TransferMatrix, omega: &Rational) -> Result<(QMat, QMat)> {
    let (x, y) = g.evaluate(&ComplexRational::imaginary(omega.clone()))?;
    // G - G* = (X - X^T) + j(Y + Y^T); multiplying by j swaps the parts.
    let re = -&(&y + &y.transpose());
    let im = &x - &x.transpose();
    Ok((re, im))
}

/// Exact value of `F(jw) + F*(jw)` as `(re, im)`.
pub fn pr_test_matrix(f: &TransferMatrix, omega: &Rational) -> Result<(QMat, QMat)> {
    let (x, y) = f.evaluate(&ComplexRational::imaginary(omega.clone()))?;
    Ok((&x + &x.transpose(), &y - &y.transpose()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    /// Sorted by frequency.
    pub samples: Vec<FrequencySample>,
}

impl SampleReport {
    /// First sample whose test matrix is not PSD (decided exactly).
    pub fn violation(&self) -> Option<&FrequencySample> {
        self.samples.iter().find(|s| !s.psd)
    }

    pub fn min_eigenvalue(&self) -> Option<(&Rational, f64)> {
        self.samples.iter().map(|s| (&s.omega, s.min_eigenvalue)).min_by(|a, b| a.1.total_cmp(&b.1))
    }

    pub fn all_zero(&self) -> bool {
        self.samples.iter().all(FrequencySample::is_zero)
    }
}

fn run_samples(
    g: &TransferMatrix,
    grid: &[Rational],
    test: impl Fn(&TransferMatrix, &Rational) -> Result<(QMat, QMat)>,
) -> Result<SampleReport> {
    let mut omegas: Vec<Rational> = grid.to_vec();
    omegas.sort();
    omegas.dedup();
    let mut samples = Vec::with_capacity(omegas.len());
    for w in omegas {
        if !w.is_positive() {
            return Err(Error::Hypothesis(format!("sample frequency {} is not positive", format_rational(&w))));
        }
        if g.is_pole(&ComplexRational::imaginary(w.clone())) {
            return Err(Error::EvaluationAtPole(format!("s = j{}", format_rational(&w))));
        }
        let (re, im) = test(g, &w)?;
        samples.push(sample(&w, re, im)?);
    }
    Ok(SampleReport { samples })
}

/// Samples `j[G(jw) - G*(jw)]` on the grid. A clean result holds only at
/// the sampled points.
pub fn ni_frequency_sample_check(g: &TransferMatrix, grid: &[Rational]) -> Result<SampleReport> {
    run_samples(g, grid, ni_test_matrix)
}

/// Samples `F(jw) + F*(jw)` on the grid.
pub fn pr_frequency_sample_check(f: &TransferMatrix, grid: &[Rational]) -> Result<SampleReport> {
    run_samples(f, grid, pr_test_matrix)
}

fn grid_without_poles(g: &TransferMatrix, grid: &[Rational]) -> Vec<Rational> {
    grid.iter().filter(|w| w.is_positive() && !g.is_pole(&ComplexRational::imaginary((*w).clone()))).cloned().collect()
}

fn check_psd(c: &mut ConditionReport, label: String, m: &QMat) -> bool {
    match psd_check_exact(m) {
        Ok(PsdVerdict::Psd) => true,
        Ok(PsdVerdict::NotPsd { witness, value }) => {
            c.fail(Witness::NotSemidefinite { label, matrix: m.clone(), vector: witness, value });
            false
        }
        Err(_) => {
            c.fail(Witness::Defect { label: format!("{label} - ({label})^T"), matrix: m - &m.transpose() });
            false
        }
    }
}

fn check_zero(c: &mut ConditionReport, label: String, m: QMat) -> bool {
    if m.is_zero() {
        return true;
    }
    c.fail(Witness::Defect { label, matrix: m });
    false
}

fn w2_label(w2: &Rational) -> String {
    format!("omega^2 = {}", format_rational(w2))
}

/// Defects of `G(s) - G^T(-s)` resolved into partial-fraction blocks, when
/// the blocks are computable. With `sign = -1` the defects of
/// `F(s) + F^T(-s)` are produced instead.
fn structured_defects(g: &TransferMatrix, table: &PoleTable, lossless_pr: bool) -> Vec<Witness> {
    let mut out = Vec::new();
    let mut push = |label: String, m: QMat| {
        if !m.is_zero() {
            out.push(Witness::Defect { label, matrix: m });
        }
    };
    // For NI: even blocks symmetric, odd blocks skew. For PR: the reverse.
    let even = |label: &str, m: &QMat| {
        if lossless_pr {
            (format!("{label} + {label}^T"), m + &m.transpose())
        } else {
            (format!("{label} - {label}^T"), m - &m.transpose())
        }
    };
    let odd = |label: &str, m: &QMat| {
        if lossless_pr {
            (format!("{label} - {label}^T"), m - &m.transpose())
        } else {
            (format!("{label} + {label}^T"), m + &m.transpose())
        }
    };
    if let Ok((a2, a1, d)) = infinity_limits(g) {
        let (l, m) = even("D", &d);
        push(l, m);
        let (l, m) = odd("A1", &a1);
        push(l, m);
        let (l, m) = even("A2", &a2);
        push(l, m);
    }
    if let Ok((c2, c1)) = zero_limits(g) {
        let (l, m) = odd("C1", &c1);
        push(l, m);
        let (l, m) = even("C2", &c2);
        push(l, m);
    }
    if table.all_poles_imaginary {
        for (w2, order) in table.rational_pairs() {
            if order != 1 {
                continue;
            }
            if let Ok(r) = residue_at(g, &w2, 64) {
                let (l, m) = even(&format!("T ({})", w2_label(&w2)), &r.t);
                push(l, m);
                let (l, m) = odd(&format!("Q ({})", w2_label(&w2)), &r.q);
                push(l, m);
            }
        }
    }
    out
}

struct PoleCheck {
    report: ConditionReport,
    rhp: bool,
    numeric: bool,
}

fn check_pole_locations(table: &PoleTable, id: &'static str, citation: &'static str) -> PoleCheck {
    let mut report = ConditionReport::new(id, citation);
    let mut rhp = false;
    let mut numeric = false;
    for f in &table.off_axis_factors {
        let ev = rhp_evidence(f);
        match ev {
            RhpEvidence::PositiveRealRoots(_) => rhp = true,
            RhpEvidence::NumericRoot { .. } => {
                rhp = true;
                numeric = true;
            }
            RhpEvidence::NotDetected => {}
        }
        report.fail(Witness::OffAxisPoles { factor: f.clone(), right_half_plane: ev });
    }
    PoleCheck { report, rhp, numeric }
}

/// Decides LNI membership with default options.
pub fn is_lossless_ni(g: &TransferMatrix) -> ClassificationReport {
    is_lossless_ni_with(g, &ClassifyOptions::default())
}

pub fn is_lossless_ni_with(g: &TransferMatrix, opts: &ClassifyOptions) -> ClassificationReport {
    let table = g.pole_table();
    let mut numeric = false;
    // A failure that contradicts the NI definition itself.
    let mut definitive = false;

    let poles = check_pole_locations(&table, "lni-1", LNI_POLES);
    definitive |= poles.rhp;
    numeric |= poles.numeric;
    let mut conditions = vec![poles.report];

    if conditions[0].passed() {
        // Condition 2: pole at zero.
        let mut c = ConditionReport::new("lni-2", LNI_ZERO);
        let k = table.zero_order();
        if k > 2 {
            c.fail(Witness::PoleOrder { location: PoleLocation::Zero, order: k, bound: 2 });
        } else if let Ok((c2, _)) = zero_limits(g) {
            if check_zero(&mut c, "C2 - C2^T".into(), &c2 - &c2.transpose()) {
                check_psd(&mut c, "C2".into(), &c2);
            }
        }
        definitive |= c.failed();
        conditions.push(c);

        // Condition 3: finite nonzero imaginary poles.
        let mut c = ConditionReport::new("lni-3", LNI_FINITE);
        for (w2, order) in table.rational_pairs() {
            if order > 1 {
                c.fail(Witness::PoleOrder { location: PoleLocation::ImaginaryPair { omega_squared: w2 }, order, bound: 1 });
                continue;
            }
            let r = match residue_at(g, &w2, opts.precision_bits) {
                Ok(r) => r,
                Err(e) => {
                    c.fail(Witness::Defect { label: format!("residue unavailable: {e}"), matrix: QMat::zeros(0, 0) });
                    continue;
                }
            };
            let lbl = w2_label(&w2);
            let sym = check_zero(&mut c, format!("T - T^T ({lbl})"), &r.t - &r.t.transpose());
            let skew = check_zero(&mut c, format!("Q + Q^T ({lbl})"), &r.q + &r.q.transpose());
            if sym && skew {
                check_psd(&mut c, format!("[[T, -w^2 Q], [w^2 Q, w^2 T]] ({lbl})"), &r.psd_test_matrix());
            }
        }
        for (factor, order) in table.irrational_pair_groups() {
            if order > 1 {
                let location = PoleLocation::ImaginaryPairs { factor_in_u: factor };
                c.fail(Witness::PoleOrder { location, order, bound: 1 });
                continue;
            }
            numeric = true;
            match numeric_residues(g, &factor, opts.precision_bits) {
                Ok(list) => {
                    for r in list {
                        // K = jR
                        let (kre, kim) = (-&r.im, r.re.clone());
                        let defect = hermitian_defect_f64(&kre, &kim);
                        let min = hermitian_min_eig_f64(&kre, &kim);
                        if defect > opts.tolerance || min < -opts.tolerance {
                            c.fail(Witness::NumericResidue { omega: r.omega, hermitian_defect: defect, min_eigenvalue: min });
                        }
                    }
                }
                Err(e) => c.fail(Witness::Defect { label: format!("residue unavailable: {e}"), matrix: QMat::zeros(0, 0) }),
            }
        }
        definitive |= c.failed();
        conditions.push(c);

        // Condition 4: pole at infinity.
        let mut c = ConditionReport::new("lni-4", LNI_INFINITY);
        let k = table.infinity_order();
        if k > 2 {
            c.fail(Witness::Defect { label: format!("A{k}"), matrix: polynomial_coefficient(g, k) });
        } else if let Ok((a2, _, _)) = infinity_limits(g) {
            if check_zero(&mut c, "A2 - A2^T".into(), &a2 - &a2.transpose()) {
                check_psd(&mut c, "-A2".into(), &-&a2);
            }
        }
        definitive |= c.failed();
        conditions.push(c);
    } else {
        conditions.push(ConditionReport::skipped("lni-2", LNI_ZERO));
        conditions.push(ConditionReport::skipped("lni-3", LNI_FINITE));
        conditions.push(ConditionReport::skipped("lni-4", LNI_INFINITY));
    }

    // Condition 5 is an identity and is always decided.
    let mut c = ConditionReport::new("lni-5", LNI_PARA);
    let para = g.try_sub(&g.para_conjugate()).expect("same dimension");
    if !para.is_zero() {
        c.status = ConditionStatus::Fail;
        c.witness = structured_defects(g, &table, false);
        let grid = grid_without_poles(g, &opts.grid);
        for w in &grid {
            if let Ok((re, im)) = ni_test_matrix(g, w) {
                if !(re.is_zero() && im.is_zero()) {
                    if let Ok(s) = sample(w, re, im) {
                        c.witness.push(Witness::Frequency(s));
                    }
                    break;
                }
            }
        }
    }
    conditions.push(c);

    let mut sampled = ConditionReport::new("ni-sampled", NI_SAMPLED);
    if let Ok(rep) = ni_frequency_sample_check(g, &grid_without_poles(g, &opts.grid)) {
        if let Some(v) = rep.violation() {
            sampled.fail(Witness::Frequency(v.clone()));
            definitive = true;
        }
    }
    conditions.push(sampled);

    let verdict = if conditions.iter().all(|c| c.passed()) {
        Verdict::Lni
    } else if definitive {
        Verdict::NotNi
    } else {
        Verdict::NiOnlyUndecided
    };
    let spectral = if verdict == Verdict::Lni { partial_fraction_expand(g).ok() } else { None };
    let exactness = if numeric {
        ReportExactness::ToleranceQualified { tolerance: opts.tolerance, precision_bits: opts.precision_bits }
    } else {
        ReportExactness::Exact
    };
    ClassificationReport { verdict, conditions, exactness, spectral, notes: Vec::new() }
}

/// Decides LPR membership with default options.
pub fn is_lossless_pr(f: &TransferMatrix) -> ClassificationReport {
    is_lossless_pr_with(f, &ClassifyOptions::default())
}

pub const PR_ASSUMPTION: &str = "positivity on Re s > 0 is inferred from the pole locations and the \
imaginary-axis conditions (classical lossless equivalence)";

pub fn is_lossless_pr_with(f: &TransferMatrix, opts: &ClassifyOptions) -> ClassificationReport {
    let table = f.pole_table();
    let mut numeric = false;
    let mut definitive = false;

    let mut c = ConditionReport::new("lpr-1", LPR_PARA);
    let para = f.try_add(&f.para_conjugate()).expect("same dimension");
    if !para.is_zero() {
        c.status = ConditionStatus::Fail;
        c.witness = structured_defects(f, &table, true);
        for w in &grid_without_poles(f, &opts.grid) {
            if let Ok((re, im)) = pr_test_matrix(f, w) {
                if !(re.is_zero() && im.is_zero()) {
                    if let Ok(s) = sample(w, re, im) {
                        c.witness.push(Witness::Frequency(s));
                    }
                    break;
                }
            }
        }
    }
    let mut conditions = vec![c];

    let poles = check_pole_locations(&table, "lpr-2", LPR_POLES);
    definitive |= poles.rhp;
    numeric |= poles.numeric;
    let located = poles.report.passed();
    conditions.push(poles.report);

    if located {
        let mut c = ConditionReport::new("lpr-3", LPR_SIMPLE);
        for r in &table.records {
            if r.order > 1 {
                c.fail(Witness::PoleOrder { location: r.location.clone(), order: r.order, bound: 1 });
            }
        }
        definitive |= c.failed();
        let simple = c.passed();
        conditions.push(c);
        if simple {
            let mut c = ConditionReport::new("lpr-4", LPR_FINITE);
            if let Ok((_, c1)) = zero_limits(f) {
                if check_zero(&mut c, "C1 - C1^T".into(), &c1 - &c1.transpose()) {
                    check_psd(&mut c, "C1".into(), &c1);
                }
            }
            for (w2, _) in table.rational_pairs() {
                let Ok(r) = residue_at(f, &w2, opts.precision_bits) else { continue };
                let lbl = w2_label(&w2);
                // Residue of F is Q/2 - jT/(2w): Hermitian iff Q symmetric, T skew.
                let sym = check_zero(&mut c, format!("Q - Q^T ({lbl})"), &r.q - &r.q.transpose());
                let skew = check_zero(&mut c, format!("T + T^T ({lbl})"), &r.t + &r.t.transpose());
                if sym && skew {
                    let n = r.t.rows();
                    let m = QMat::from_fn(2 * n, 2 * n, |i, j| match (i / n, j / n) {
                        (0, 0) => &w2 * &r.q[(i, j)],
                        (0, 1) => r.t[(i, j - n)].clone(),
                        (1, 0) => r.t[(j, i - n)].clone(),
                        _ => r.q[(i - n, j - n)].clone(),
                    });
                    check_psd(&mut c, format!("[[w^2 Q, T], [T^T, Q]] ({lbl})"), &m);
                }
            }
            for (factor, _) in table.irrational_pair_groups() {
                numeric = true;
                match numeric_residues(f, &factor, opts.precision_bits) {
                    Ok(list) => {
                        for r in list {
                            let defect = hermitian_defect_f64(&r.re, &r.im);
                            let min = hermitian_min_eig_f64(&r.re, &r.im);
                            if defect > opts.tolerance || min < -opts.tolerance {
                                c.fail(Witness::NumericResidue { omega: r.omega, hermitian_defect: defect, min_eigenvalue: min });
                            }
                        }
                    }
                    Err(e) => {
                        c.fail(Witness::Defect { label: format!("residue unavailable: {e}"), matrix: QMat::zeros(0, 0) })
                    }
                }
            }
            definitive |= c.failed();
            conditions.push(c);

            let mut c = ConditionReport::new("lpr-5", LPR_INFINITY);
            if let Ok((_, a1, _)) = infinity_limits(f) {
                if check_zero(&mut c, "A1 - A1^T".into(), &a1 - &a1.transpose()) {
                    check_psd(&mut c, "A1".into(), &a1);
                }
            }
            definitive |= c.failed();
            conditions.push(c);
        } else {
            conditions.push(ConditionReport::skipped("lpr-4", LPR_FINITE));
            conditions.push(ConditionReport::skipped("lpr-5", LPR_INFINITY));
        }
    } else {
        conditions.push(ConditionReport::skipped("lpr-3", LPR_SIMPLE));
        conditions.push(ConditionReport::skipped("lpr-4", LPR_FINITE));
        conditions.push(ConditionReport::skipped("lpr-5", LPR_INFINITY));
    }

    let mut sampled = ConditionReport::new("pr-sampled", PR_SAMPLED);
    if let Ok(rep) = pr_frequency_sample_check(f, &grid_without_poles(f, &opts.grid)) {
        if let Some(v) = rep.violation() {
            sampled.fail(Witness::Frequency(v.clone()));
            definitive = true;
        }
    }
    conditions.push(sampled);

    let verdict = if conditions.iter().all(|c| c.passed()) {
        Verdict::Lpr
    } else if definitive {
        Verdict::NotPr
    } else {
        Verdict::PrUndecided
    };
    let exactness = if numeric {
        ReportExactness::ToleranceQualified { tolerance: opts.tolerance, precision_bits: opts.precision_bits }
    } else {
        ReportExactness::Exact
    };
    ClassificationReport { verdict, conditions, exactness, spectral: None, notes: vec![PR_ASSUMPTION.to_string()] }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SumClosureReport {
    pub sum: TransferMatrix,
    pub report: ClassificationReport,
}

/// Classifies `G1 + G2` for two LNI summands; the sum must again be LNI.
pub fn check_sum_closure(g1: &TransferMatrix, g2: &TransferMatrix) -> Result<SumClosureReport> {
    for (name, g) in [("first", g1), ("second", g2)] {
        let r = is_lossless_ni(g);
        if r.verdict != Verdict::Lni {
            return Err(Error::Hypothesis(format!("{name} summand is {}", r.verdict.label())));
        }
    }
    let sum = g1.try_add(g2)?;
    let report = is_lossless_ni(&sum);
    if report.verdict != Verdict::Lni {
        return Err(Error::Internal(format!("sum of LNI systems classified {}", report.verdict.label())));
    }
    Ok(SumClosureReport { sum, report })
}

pub const MINOR_G0: &str = "G0 = G - (C1/s + C2/s^2 + s A1 + s^2 A2 + G(inf)) is LNI";
pub const MINOR_A2: &str = "A2 symmetric NSD";
pub const MINOR_C2: &str = "C2 symmetric PSD";
pub const MINOR_A1: &str = "A1 + A1^T = 0";
pub const MINOR_C1: &str = "C1 + C1^T = 0";
pub const MINOR_D: &str = "G(inf) symmetric";
pub const MINOR_HIGH: &str = "A_k = 0 for k >= 3 and no pole of order >= 3 at zero";

#[derive(Clone, Debug, PartialEq)]
pub struct MinorDecompositionReport {
    /// `None` when a pole of order three or more at zero or infinity
    /// prevents the split.
    pub g0: Option<TransferMatrix>,
    pub g0_report: Option<ClassificationReport>,
    pub side_conditions: Vec<ConditionReport>,
    /// `G0` LNI and every side condition holds.
    pub decomposition_lni: bool,
    pub direct_verdict: Verdict,
    /// Whether the decomposition agrees with the direct classification.
    pub coherent: bool,
}

/// Splits off the terms at zero and infinity and checks the remainder and
/// the structured terms separately.
pub fn check_minor_decomposition(g: &TransferMatrix) -> MinorDecompositionReport {
    let direct = is_lossless_ni(g).verdict;
    let mut high = ConditionReport::new("minor-high", MINOR_HIGH);
    let inf = g.infinity_pole_order();
    if inf > 2 {
        high.fail(Witness::Defect { label: format!("A{inf}"), matrix: polynomial_coefficient(g, inf) });
    }
    let zero = g.lcm_denominator().zero_root_order();
    if zero > 2 {
        high.fail(Witness::PoleOrder { location: PoleLocation::Zero, order: zero, bound: 2 });
    }
    let (Ok((a2, a1, d)), Ok((c2, c1))) = (infinity_limits(g), zero_limits(g)) else {
        return MinorDecompositionReport {
            g0: None,
            g0_report: None,
            side_conditions: vec![high],
            decomposition_lni: false,
            direct_verdict: direct,
            coherent: direct != Verdict::Lni,
        };
    };
    let m = g.dim();
    let s = Poly::s();
    let s2 = Poly::monomial(Rational::from_integer(1.into()), 2);
    let extremes = [
        TransferMatrix::over_poly(&c1, &s),
        TransferMatrix::over_poly(&c2, &s2),
        Ok(TransferMatrix::poly_times(&s, &a1)),
        Ok(TransferMatrix::poly_times(&s2, &a2)),
        Ok(TransferMatrix::constant(&d)),
    ];
    let mut g0 = g.clone();
    for t in extremes {
        g0 = g0.try_sub(&t.expect("nonzero divisor")).expect("same dimension");
    }
    debug_assert_eq!(g0.dim(), m);
    let g0_report = is_lossless_ni(&g0);

    let mut sides = Vec::new();
    let mut c = ConditionReport::new("minor-a2", MINOR_A2);
    if check_zero(&mut c, "A2 - A2^T".into(), &a2 - &a2.transpose()) {
        check_psd(&mut c, "-A2".into(), &-&a2);
    }
    sides.push(c);
    let mut c = ConditionReport::new("minor-c2", MINOR_C2);
    if check_zero(&mut c, "C2 - C2^T".into(), &c2 - &c2.transpose()) {
        check_psd(&mut c, "C2".into(), &c2);
    }
    sides.push(c);
    let mut c = ConditionReport::new("minor-a1", MINOR_A1);
    check_zero(&mut c, "A1 + A1^T".into(), &a1 + &a1.transpose());
    sides.push(c);
    let mut c = ConditionReport::new("minor-c1", MINOR_C1);
    check_zero(&mut c, "C1 + C1^T".into(), &c1 + &c1.transpose());
    sides.push(c);
    let mut c = ConditionReport::new("minor-d", MINOR_D);
    check_zero(&mut c, "G(inf) - G(inf)^T".into(), &d - &d.transpose());
    sides.push(c);
    sides.push(high);

    let decomposition_lni = g0_report.verdict == Verdict::Lni && sides.iter().all(|c| c.passed());
    MinorDecompositionReport {
        g0: Some(g0),
        g0_report: Some(g0_report),
        side_conditions: sides,
        decomposition_lni,
        direct_verdict: direct,
        coherent: decomposition_lni == (direct == Verdict::Lni),
    }
}
