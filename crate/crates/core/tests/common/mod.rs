#![allow(dead_code)]

use lni_core::{
    ClassificationReport, GeneratorSpec, PoleFlags, Poly, QMat, RationalFunction, TransferMatrix, Verdict, Witness,
};
use lni_core::rational::int;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
    RationalFunction::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
}

pub fn example1() -> TransferMatrix {
    TransferMatrix::new(vec![
        vec![rf(&[1], &[1, 0, 1]), rf(&[0, -1], &[1])],
        vec![rf(&[0, 1], &[1]), rf(&[1], &[1, 0, 1])],
    ])
    .unwrap()
}

pub fn example2() -> TransferMatrix {
    TransferMatrix::new(vec![
        vec![rf(&[0, 0, -1], &[1, 0, 1]), rf(&[1, 1], &[0, 1])],
        vec![rf(&[-1, 1], &[0, 1]), rf(&[0, 0, -1], &[1, 0, 1])],
    ])
    .unwrap()
}

/// `[[s/(s^2+1), 1], [-1, s/(s^2+1)]]`
pub fn example_f() -> TransferMatrix {
    TransferMatrix::new(vec![
        vec![rf(&[0, 1], &[1, 0, 1]), rf(&[1], &[1])],
        vec![rf(&[-1], &[1]), rf(&[0, 1], &[1, 0, 1])],
    ])
    .unwrap()
}

pub fn example3_tf() -> TransferMatrix {
    TransferMatrix::new(vec![vec![rf(&[1, 0, 0, 0, -2], &[0, 0, 1, 0, 1])]]).unwrap()
}

pub fn int_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> QMat {
    QMat::from_fn(rows, cols, |_, _| int(r.gen_range(-3..=3)))
}

fn nonzero(r: &mut ChaCha8Rng, rows: usize, cols: usize) -> QMat {
    loop {
        let m = int_matrix(r, rows, cols);
        if !m.is_zero() {
            return m;
        }
    }
}

/// Nonzero `M^T M`.
pub fn psd(r: &mut ChaCha8Rng, m: usize) -> QMat {
    let rows = 1 + r.gen_range(0..m);
    let f = nonzero(r, rows, m);
    &f.transpose() * &f
}

/// Nonzero symmetric matrix.
pub fn symmetric(r: &mut ChaCha8Rng, m: usize) -> QMat {
    psd(r, m)
}

/// Nonzero skew matrix; `m >= 2`.
pub fn skew(r: &mut ChaCha8Rng, m: usize) -> QMat {
    assert!(m >= 2);
    loop {
        let f = int_matrix(r, m, m);
        let s = &f - &f.transpose();
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random square rational matrix with small integer coefficients and
/// denominators of degree at most `max_den`.
pub fn random_transfer(r: &mut ChaCha8Rng, m: usize, max_num: usize, max_den: usize) -> TransferMatrix {
    TransferMatrix::from_fn(m, |_, _| loop {
        let num: Vec<i64> = (0..=r.gen_range(0..=max_num)).map(|_| r.gen_range(-3..=3)).collect();
        let mut den: Vec<i64> = (0..=r.gen_range(0..=max_den)).map(|_| r.gen_range(-3..=3)).collect();
        let last = den.len() - 1;
        if den[last] == 0 {
            den[last] = 1;
        }
        if let Ok(f) = RationalFunction::new(Poly::from_ints(&num), Poly::from_ints(&den)) {
            break f;
        }
    })
}

/// Random generator spec: `m` in 1..=3, up to 3 modes, flags cycling
/// through all sixteen combinations.
pub fn spec_for(i: u64) -> GeneratorSpec {
    let mut r = rng(0x5eed ^ i);
    let m = r.gen_range(1..=3);
    let modes = r.gen_range(0..=3);
    let flags = PoleFlags::all()[(i % 16) as usize];
    GeneratorSpec::new(m, modes, flags, i)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// `+ M/(s + 1)`: a pole off the imaginary axis.
    PoleLocation,
    /// `+ (-M^T M)/(s^2 + 49)`: a mode with negative residue.
    ResidueSign,
    /// `+ s S` with `S` symmetric.
    A1Symmetric,
    /// `+ S/s` with `S` symmetric.
    C1Symmetric,
    /// `C2 -> -M^T M`.
    C2Sign,
    /// `A2 -> M^T M`.
    A2Sign,
    /// `+ K` with `K` skew.
    DSkew,
    /// `+ s^3 X`.
    A3,
}

pub const ALL_MUTATIONS: [Mutation; 8] = [
    Mutation::PoleLocation,
    Mutation::ResidueSign,
    Mutation::A1Symmetric,
    Mutation::C1Symmetric,
    Mutation::C2Sign,
    Mutation::A2Sign,
    Mutation::DSkew,
    Mutation::A3,
];

pub const PROPER_MUTATIONS: [Mutation; 5] =
    [Mutation::PoleLocation, Mutation::ResidueSign, Mutation::C1Symmetric, Mutation::C2Sign, Mutation::DSkew];

impl Mutation {
    pub fn min_dim(&self) -> usize {
        if *self == Mutation::DSkew {
            2
        } else {
            1
        }
    }

    /// Applies the mutation to an LNI system `g` (with spectral limits
    /// `c2`, `a2`).
    pub fn apply(&self, g: &TransferMatrix, c2: &QMat, a2: &QMat, r: &mut ChaCha8Rng) -> TransferMatrix {
        let m = g.dim();
        let s = Poly::s();
        let s2 = Poly::from_ints(&[0, 0, 1]);
        let delta = match self {
            Mutation::PoleLocation => TransferMatrix::over_poly(&psd(r, m), &Poly::from_ints(&[1, 1])).unwrap(),
            Mutation::ResidueSign => TransferMatrix::over_poly(&-&psd(r, m), &Poly::from_ints(&[49, 0, 1])).unwrap(),
            Mutation::A1Symmetric => TransferMatrix::poly_times(&s, &symmetric(r, m)),
            Mutation::C1Symmetric => TransferMatrix::over_poly(&symmetric(r, m), &s).unwrap(),
            Mutation::C2Sign => {
                let target = -&psd(r, m);
                TransferMatrix::over_poly(&(&target - c2), &s2).unwrap()
            }
            Mutation::A2Sign => {
                let target = psd(r, m);
                TransferMatrix::poly_times(&s2, &(&target - a2))
            }
            Mutation::DSkew => TransferMatrix::constant(&skew(r, m)),
            Mutation::A3 => TransferMatrix::poly_times(&Poly::from_ints(&[0, 0, 0, 1]), &nonzero(r, m, m)),
        };
        g.try_add(&delta).unwrap()
    }

    /// Whether the report rejects losslessness with a witness that names
    /// the broken condition.
    pub fn witnessed(&self, rep: &ClassificationReport) -> bool {
        if rep.verdict == Verdict::Lni {
            return false;
        }
        let failed = |id: &str| rep.condition(id).map(|c| c.failed()).unwrap_or(false);
        let has = |id: &str, pred: &dyn Fn(&Witness) -> bool| {
            rep.condition(id).map(|c| c.failed() && c.witness.iter().any(pred)).unwrap_or(false)
        };
        let defect = |want: &'static str| move |w: &Witness| matches!(w, Witness::Defect { label, .. } if label == want);
        let not_psd = |want: &'static str| {
            move |w: &Witness| matches!(w, Witness::NotSemidefinite { label, .. } if label.starts_with(want))
        };
        match self {
            Mutation::PoleLocation => has("lni-1", &|w| matches!(w, Witness::OffAxisPoles { .. })),
            Mutation::ResidueSign => has("lni-3", &not_psd("[[T, -w^2 Q], [w^2 Q, w^2 T]] (omega^2 = 49)")),
            Mutation::A1Symmetric => has("lni-5", &defect("A1 + A1^T")),
            Mutation::C1Symmetric => has("lni-5", &defect("C1 + C1^T")),
            Mutation::C2Sign => has("lni-2", &not_psd("C2")),
            Mutation::A2Sign => has("lni-4", &not_psd("-A2")),
            Mutation::DSkew => has("lni-5", &defect("D - D^T")),
            Mutation::A3 => failed("lni-4") && has("lni-4", &defect("A3")),
        }
    }
}
