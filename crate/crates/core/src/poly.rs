//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros,
//! so two polynomials are equal exactly when their coefficient vectors are.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, ComplexRational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| crate::rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * s^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The polynomial `s`.
    pub fn s() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `s^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Multiplicity of the root at zero.
    pub fn zero_root_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `s^k`; the low coefficients are dropped, so callers must
    /// ensure they vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// `p(-s)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: &ComplexRational) -> ComplexRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ComplexRational::zero(), |acc, c| &(&acc * z) + &ComplexRational::real(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + crate::rational::to_f64(c))
    }

    /// True when `p(-s) = p(s)`.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// True when `p(-s) = -p(s)`.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }

    /// For an even polynomial `p(s) = e(s^2)`, returns `e(u)`.
    pub fn even_to_u(&self) -> Option<Self> {
        if !self.is_even() {
            return None;
        }
        Some(Self::new(self.coeffs.iter().step_by(2).cloned().collect()))
    }

    /// `e(u) -> e(s^2)`
    pub fn u_to_even(&self) -> Self {
        let mut v = Vec::with_capacity(self.coeffs.len() * 2);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                v.push(Rational::zero());
            }
            v.push(c.clone());
        }
        Self::new(v)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.coeffs.len() - 1;
        let lead_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    rem[k + i] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divmod(d)?.1)
    }

    /// Exact quotient; errors unless `d` divides `self`.
    pub fn exact_div(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(d)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_part();
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        (self * other).exact_div(&g).expect("gcd divides product").monic()
    }

    /// Rescales so that the coefficients are coprime integers with a positive
    /// leading coefficient. Keeps Euclid's remainders from swelling.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let den_lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        Poly::new(ints.into_iter().map(|c| Rational::from_integer(&c / &g * &sign)).collect())
    }

    /// Integer coefficients of the primitive part.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.primitive_part().coeffs.iter().map(|c| c.to_integer()).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Yun's algorithm. Returns monic, pairwise coprime, squarefree factors
    /// with their multiplicities (ascending); constant factors are omitted.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = self.monic();
        let mut out = Vec::new();
        if f.is_constant() {
            return Ok(out);
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0)?.monic();
        let mut c = fp.exact_div(&a0)?;
        let mut d = &c - &b.derivative();
        let mut k = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), k));
            }
            b = b.exact_div(&a)?.monic();
            c = d.exact_div(&a)?;
            d = &c - &b.derivative();
            k += 1;
        }
        Ok(out)
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`; `None`
    /// endpoints are infinite. Requires a squarefree polynomial.
    pub fn count_real_roots_in(&self, lo: Option<&Rational>, hi: Option<&Rational>) -> Result<usize> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        if let (Some(a), Some(b)) = (lo, hi) {
            if a >= b {
                return Ok(0);
            }
        }
        let chain = self.sturm_chain();
        let v_lo = match lo {
            Some(a) => sign_variations(chain.iter().map(|p| p.eval(a))),
            None => sign_variations(chain.iter().map(|p| p.sign_at_neg_infinity())),
        };
        let v_hi = match hi {
            Some(b) => sign_variations(chain.iter().map(|p| p.eval(b))),
            None => sign_variations(chain.iter().map(|p| p.leading())),
        };
        // v_lo - v_hi counts roots in (lo, hi]; drop a root sitting on hi.
        let mut n = v_lo - v_hi;
        if let Some(b) = hi {
            if self.eval(b).is_zero() {
                n -= 1;
            }
        }
        Ok(n)
    }

    pub fn sturm_chain(&self) -> Vec<Poly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).expect("nonzero");
            if r.is_zero() {
                break;
            }
            // Positive rescaling keeps signs intact.
            let rp = r.primitive_part();
            let rp = if r.leading().is_negative() { -&rp } else { rp };
            chain.push(-&rp);
        }
        chain
    }

    fn sign_at_neg_infinity(&self) -> Rational {
        match self.degree() {
            Some(d) if d % 2 == 1 => -self.leading(),
            _ => self.leading(),
        }
    }

    /// Rational roots by the rational root theorem, each reported once, in
    /// ascending order. Returns `None` when the candidate search would need
    /// to factor integers beyond `limit`.
    pub fn rational_roots(&self, limit: u64) -> Option<Vec<Rational>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        let mut roots = Vec::new();
        let z = self.zero_root_order();
        if z > 0 {
            roots.push(Rational::zero());
        }
        let p = self.shift_down(z);
        if p.is_constant() {
            return Some(roots);
        }
        let ints = p.integer_coeffs();
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let lim = BigInt::from(limit);
        if a0 > lim || an > lim {
            return None;
        }
        let nums = divisors(num_traits::ToPrimitive::to_u64(&a0)?);
        let dens = divisors(num_traits::ToPrimitive::to_u64(&an)?);
        for n in &nums {
            for d in &dens {
                for sign in [1i64, -1] {
                    let cand = Rational::new(BigInt::from(*n) * sign, BigInt::from(*d));
                    if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn sign_variations(values: impl Iterator<Item = Rational>) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for v in values {
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(l) = last {
            if l != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::new(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Root isolation by Sturm bisection.
impl Poly {
    /// Cauchy bound: every root has magnitude below the returned value.
    pub fn root_bound(&self) -> Rational {
        let lead = self.leading().abs();
        let max = self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(Rational::zero);
        Rational::one() + max / lead
    }

    /// Approximations, within `2^-bits`, of every real root in `(lo, hi)`,
    /// ascending. Exact roots hit by a bisection point are returned exactly.
    pub fn real_roots_approx(&self, lo: &Rational, hi: &Rational, bits: u32) -> Result<Vec<Rational>> {
        let eps = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(2), bits as usize));
        let mut out = Vec::new();
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            let n = self.count_real_roots_in(Some(&a), Some(&b))?;
            if n == 0 {
                continue;
            }
            let mid = (&a + &b) / Rational::from_integer(BigInt::from(2));
            if n == 1 && &b - &a < eps {
                out.push(mid);
                continue;
            }
            if self.eval(&mid).is_zero() {
                out.push(mid.clone());
            }
            stack.push((mid.clone(), b));
            stack.push((a, mid));
        }
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                let s = format_rational(&mag);
                if i > 0 && !mag.is_integer() {
                    write!(f, "({s})")?;
                } else {
                    write!(f, "{s}")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "s")?,
                _ => write!(f, "s^{i}")?,
            }
        }
        Ok(())
    }
}
