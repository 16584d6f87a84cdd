//! Square matrices of real-rational functions of `s`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::poly::Poly;
use crate::rational::{format_rational, ComplexRational, Rational};

/// `num / den` with `den` monic and coprime to `num`; zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g)?;
        let den = den.exact_div(&g)?;
        let lead = den.leading();
        Ok(Self { num: num.scale(&lead.recip()), den: den.monic() })
    }

    pub fn zero() -> Self {
        Self { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        Self { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `deg num - deg den`; `None` for zero.
    pub fn relative_degree_excess(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    pub fn is_proper(&self) -> bool {
        self.relative_degree_excess().is_none_or(|e| e <= 0)
    }

    /// Value at infinity of a proper function.
    pub fn value_at_infinity(&self) -> Option<Rational> {
        match self.relative_degree_excess() {
            None => Some(Rational::zero()),
            Some(e) if e < 0 => Some(Rational::zero()),
            Some(0) => Some(self.num.leading() / self.den.leading()),
            Some(_) => None,
        }
    }

    /// `r(-s)`
    pub fn reflect(&self) -> Self {
        Self::new(self.num.reflect(), self.den.reflect()).expect("nonzero denominator")
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(k), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self::new(&self.num * p, self.den.clone()).expect("nonzero denominator")
    }

    pub fn div_poly(&self, p: &Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.num.clone(), &self.den * p)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::EvaluationAtPole(format!("s = {}", format_rational(x))));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_complex(&self, z: &ComplexRational) -> Result<ComplexRational> {
        let d = self.den.eval_complex(z);
        if d.is_zero() {
            return Err(Error::EvaluationAtPole(format!("s = {z}")));
        }
        Ok(&self.num.eval_complex(z) / &d)
    }

    /// Polynomial part and proper remainder: `num/den = q + r/den`.
    pub fn split_polynomial(&self) -> (Poly, RationalFunction) {
        let (q, r) = self.num.divmod(&self.den).expect("nonzero denominator");
        (q, RationalFunction::new(r, self.den.clone()).expect("nonzero denominator"))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.den == o.den {
            return RationalFunction::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        let g = self.den.gcd(&o.den);
        let a = self.den.exact_div(&g).unwrap();
        let b = o.den.exact_div(&g).unwrap();
        RationalFunction::new(&(&self.num * &b) + &(&o.num * &a), &a * &o.den).unwrap()
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Where a pole sits in the closed right-imaginary half line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoleLocation {
    Zero,
    /// The pair `+-jw` with `w^2 > 0` rational.
    ImaginaryPair { omega_squared: Rational },
    /// Pairs `+-jw` whose `w^2` are the (irrational, negated) roots of this
    /// squarefree factor in `u = s^2`: the pairs are the roots of `f(-w^2)`.
    ImaginaryPairs { factor_in_u: Poly },
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleRecord {
    pub location: PoleLocation,
    pub order: usize,
}

/// Pole structure of a transfer matrix, read from the lcm of its entry
/// denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleTable {
    pub records: Vec<PoleRecord>,
    pub all_poles_imaginary: bool,
    /// Squarefree factors of the lcm denominator (with `s` removed) that have
    /// roots off the imaginary axis.
    pub off_axis_factors: Vec<Poly>,
    pub lcm_denominator: Poly,
}

impl PoleTable {
    pub fn zero_order(&self) -> usize {
        self.order_of(|l| matches!(l, PoleLocation::Zero))
    }

    pub fn infinity_order(&self) -> usize {
        self.order_of(|l| matches!(l, PoleLocation::Infinity))
    }

    fn order_of(&self, pred: impl Fn(&PoleLocation) -> bool) -> usize {
        self.records.iter().find(|r| pred(&r.location)).map_or(0, |r| r.order)
    }

    /// Finite nonzero pole pairs with rational `w^2`, ascending.
    pub fn rational_pairs(&self) -> Vec<(Rational, usize)> {
        self.records
            .iter()
            .filter_map(|r| match &r.location {
                PoleLocation::ImaginaryPair { omega_squared } => Some((omega_squared.clone(), r.order)),
                _ => None,
            })
            .collect()
    }

    pub fn irrational_pair_groups(&self) -> Vec<(Poly, usize)> {
        self.records
            .iter()
            .filter_map(|r| match &r.location {
                PoleLocation::ImaginaryPairs { factor_in_u } => Some((factor_in_u.clone(), r.order)),
                _ => None,
            })
            .collect()
    }
}

/// Coefficient magnitudes above which rational roots are not searched for.
const RATIONAL_ROOT_LIMIT: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TransferMatrix {
    m: usize,
    entries: Vec<RationalFunction>,
}

impl TransferMatrix {
    /// Rejects non-square or ragged input.
    pub fn new(rows: Vec<Vec<RationalFunction>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::DimensionMismatch("empty transfer matrix".into()));
        }
        for r in &rows {
            if r.len() != m {
                return Err(Error::NotSquare { rows: m, cols: r.len() });
            }
        }
        Ok(Self { m, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> RationalFunction) -> Self {
        let mut entries = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                entries.push(f(i, j));
            }
        }
        Self { m, entries }
    }

    pub fn zero(m: usize) -> Self {
        Self::from_fn(m, |_, _| RationalFunction::zero())
    }

    pub fn constant(d: &QMat) -> Self {
        assert!(d.is_square());
        Self::from_fn(d.rows(), |i, j| RationalFunction::constant(d[(i, j)].clone()))
    }

    /// `p(s) * M` for a constant matrix `M`.
    pub fn poly_times(p: &Poly, mat: &QMat) -> Self {
        Self::from_fn(mat.rows(), |i, j| RationalFunction::from_poly(p.scale(&mat[(i, j)])))
    }

    /// `M / p(s)`.
    pub fn over_poly(mat: &QMat, p: &Poly) -> Result<Self> {
        let mut rows = Vec::new();
        for i in 0..mat.rows() {
            let mut row = Vec::new();
            for j in 0..mat.cols() {
                row.push(RationalFunction::new(Poly::constant(mat[(i, j)].clone()), p.clone())?);
            }
            rows.push(row);
        }
        Self::new(rows)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i * self.m + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &RationalFunction> {
        self.entries.iter()
    }

    pub fn rows(&self) -> Vec<Vec<RationalFunction>> {
        (0..self.m).map(|i| self.entries[i * self.m..(i + 1) * self.m].to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RationalFunction::is_zero)
    }

    pub fn map(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        Self { m: self.m, entries: self.entries.iter().map(f).collect() }
    }

    fn check_dim(&self, o: &TransferMatrix) -> Result<()> {
        if self.m != o.m {
            return Err(Error::DimensionMismatch(format!("{}x{} vs {}x{}", self.m, self.m, o.m, o.m)));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &TransferMatrix) -> Result<Self> {
        self.check_dim(o)?;
        Ok(Self { m: self.m, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect() })
    }

    pub fn try_sub(&self, o: &TransferMatrix) -> Result<Self> {
        self.check_dim(o)?;
        Ok(Self { m: self.m, entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a - b).collect() })
    }

    pub fn try_mul(&self, o: &TransferMatrix) -> Result<Self> {
        self.check_dim(o)?;
        let m = self.m;
        Ok(Self::from_fn(m, |i, j| {
            (0..m).fold(RationalFunction::zero(), |acc, k| &acc + &(self.entry(i, k) * o.entry(k, j)))
        }))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map(|e| e.scale(k))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.m, |i, j| self.entry(j, i).clone())
    }

    /// `G^T(-s)`
    pub fn para_conjugate(&self) -> Self {
        Self::from_fn(self.m, |i, j| self.entry(j, i).reflect())
    }

    pub fn is_para_hermitian(&self) -> bool {
        self == &self.para_conjugate()
    }

    /// Exact value at `s0`, as real and imaginary rational matrices.
    pub fn evaluate(&self, s0: &ComplexRational) -> Result<(QMat, QMat)> {
        let mut re = QMat::zeros(self.m, self.m);
        let mut im = QMat::zeros(self.m, self.m);
        for i in 0..self.m {
            for j in 0..self.m {
                let v = self
                    .entry(i, j)
                    .eval_complex(s0)
                    .map_err(|_| Error::EvaluationAtPole(format!("entry ({i},{j}) at s = {s0}")))?;
                re[(i, j)] = v.re;
                im[(i, j)] = v.im;
            }
        }
        Ok((re, im))
    }

    pub fn evaluate_real(&self, x: &Rational) -> Result<QMat> {
        let (re, _) = self.evaluate(&ComplexRational::real(x.clone()))?;
        Ok(re)
    }

    /// Whether `s0` is a pole of some entry.
    pub fn is_pole(&self, s0: &ComplexRational) -> bool {
        self.entries.iter().any(|e| e.den.eval_complex(s0).is_zero())
    }

    pub fn lcm_denominator(&self) -> Poly {
        self.entries.iter().fold(Poly::one(), |acc, e| acc.lcm(&e.den))
    }

    /// Largest `deg num - deg den` over the entries, floored at zero.
    pub fn infinity_pole_order(&self) -> usize {
        self.entries
            .iter()
            .filter_map(RationalFunction::relative_degree_excess)
            .max()
            .map_or(0, |e| e.max(0) as usize)
    }

    pub fn is_proper(&self) -> bool {
        self.infinity_pole_order() == 0
    }

    pub fn value_at_infinity(&self) -> Option<QMat> {
        let mut d = QMat::zeros(self.m, self.m);
        for i in 0..self.m {
            for j in 0..self.m {
                d[(i, j)] = self.entry(i, j).value_at_infinity()?;
            }
        }
        Some(d)
    }

    /// Pole locations and orders. The system pole set is the zero set of the
    /// lcm denominator `d(s)`; all poles are purely imaginary exactly when
    /// `d(s) = s^k e(s^2)` and every root of `e(u)` is real and negative.
    pub fn pole_table(&self) -> PoleTable {
        let lcm = self.lcm_denominator();
        let mut records = Vec::new();
        let mut off_axis = Vec::new();
        let z = lcm.zero_root_order();
        if z > 0 {
            records.push(PoleRecord { location: PoleLocation::Zero, order: z });
        }
        let rest = lcm.shift_down(z);
        let sqf = rest.squarefree_decomposition().unwrap_or_default();
        let mut pairs: Vec<PoleRecord> = Vec::new();
        for (factor, mult) in sqf {
            let Some(e) = factor.even_to_u() else {
                off_axis.push(factor);
                continue;
            };
            let neg = e.count_real_roots_in(None, Some(&Rational::zero())).unwrap_or(0);
            if neg != e.degree().unwrap_or(0) {
                off_axis.push(factor);
                continue;
            }
            // Peel off linear factors u + w^2 with rational w^2.
            let mut remaining = e.clone();
            if let Some(roots) = e.rational_roots(RATIONAL_ROOT_LIMIT) {
                for r in roots {
                    let lin = Poly::new(vec![-&r, Rational::one()]);
                    remaining = remaining.exact_div(&lin).expect("root divides");
                    pairs.push(PoleRecord { location: PoleLocation::ImaginaryPair { omega_squared: -r }, order: mult });
                }
            }
            if !remaining.is_constant() {
                pairs.push(PoleRecord {
                    location: PoleLocation::ImaginaryPairs { factor_in_u: remaining.monic() },
                    order: mult,
                });
            }
        }
        pairs.sort_by(|a, b| match (&a.location, &b.location) {
            (PoleLocation::ImaginaryPair { omega_squared: x }, PoleLocation::ImaginaryPair { omega_squared: y }) => {
                x.cmp(y)
            }
            (PoleLocation::ImaginaryPair { .. }, _) => std::cmp::Ordering::Less,
            (_, PoleLocation::ImaginaryPair { .. }) => std::cmp::Ordering::Greater,
            _ => std::cmp::Ordering::Equal,
        });
        records.extend(pairs);
        let inf = self.infinity_pole_order();
        if inf > 0 {
            records.push(PoleRecord { location: PoleLocation::Infinity, order: inf });
        }
        PoleTable { records, all_poles_imaginary: off_axis.is_empty(), off_axis_factors: off_axis, lcm_denominator: lcm }
    }
}

impl fmt::Display for TransferMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m {
            let row: Vec<String> = (0..self.m).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "[ {} ]", row.join(", "))?;
        }
        Ok(())
    }
}
