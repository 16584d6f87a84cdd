//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Runtime bounds are part of each check.

mod common;

use std::time::{Duration, Instant};

use common::*;
use lni_core::rational::{frac, int, to_f64};
use lni_core::spectral::ResidueValue;
use lni_core::*;

const CERT_TOLERANCE: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn exact_residue(r: &ResidueMatrix) -> Option<(QMat, QMat)> {
    match &r.k {
        ResidueValue::Exact { re, im } => Some((re.clone(), im.clone())),
        ResidueValue::Numeric { .. } => None,
    }
}

fn example1_reproduction() -> Outcome {
    let g = example1();
    let verdict = is_lossless_ni(&g).verdict;
    let residue = residue_at(&g, &int(1), 64).ok().and_then(|r| exact_residue(&r));
    let residue_ok = residue == Some((QMat::identity(2).scale(&frac(1, 2)), QMat::zeros(2, 2)));
    let a1_ok = partial_fraction_expand(&g).map(|d| d.a1 == QMat::from_ints(&[&[0, -1], &[1, 0]])).unwrap_or(false);
    let bridge = classify_lni_via_bridge(&g, Route::Zero);
    let f_ok = bridge.as_ref().map(|b| b.routes[0].transformed.f == example_f()).unwrap_or(false);
    let f_lpr = bridge.as_ref().map(|b| b.routes[0].pr_report.verdict == Verdict::Lpr).unwrap_or(false);
    outcome(
        verdict == Verdict::Lni && residue_ok && a1_ok && f_ok && f_lpr,
        format!("verdict {}, residue {residue_ok}, A1 {a1_ok}, F {f_ok}, F LPR {f_lpr}", verdict.label()),
    )
}

fn example2_reproduction() -> Outcome {
    let g = example2();
    let verdict = is_lossless_ni(&g).verdict;
    let c1_ok = partial_fraction_expand(&g).map(|d| d.c1 == QMat::from_ints(&[&[0, 1], &[-1, 0]])).unwrap_or(false);
    let f_ok = to_lpr_via_infinity(&g).map(|t| t.f == example_f()).unwrap_or(false);
    outcome(verdict == Verdict::Lni && c1_ok && f_ok, format!("verdict {}, C1 {c1_ok}, F {f_ok}", verdict.label()))
}

fn example3_reproduction() -> Outcome {
    let ss = StateSpace::new(
        QMat::from_ints(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]),
        QMat::from_ints(&[&[1], &[0], &[0], &[0]]),
        QMat::from_ints(&[&[0, 2, 0, 1]]),
        QMat::from_ints(&[&[-2]]),
    )
    .unwrap();
    let p = QMat::from_ints(&[&[2, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 1, 0], &[0, 0, 0, 0]]);
    let transfer_ok = transfer_of(&ss) == example3_tf();
    let cb = &ss.c * &ss.b;
    let cb_ok = (&cb + &cb.transpose()).is_zero();
    let member = match solve_equality_family(&ss, CertKind::Eq7) {
        Ok(FamilyOutcome::Feasible(f)) => f.basis.is_empty() && f.p0 == p,
        _ => false,
    };
    let cert = Certificate::user_supplied(&ss, CertKind::Eq7, p.clone(), None, None).unwrap();
    let verify_ok = cert.residuals.iter().all(|r| r.is_zero()) && psd_check_exact(&p).ok() == Some(PsdVerdict::Psd);
    let lemma_ok = lni_lemma_check(&ss).map(|r| r.certified()).unwrap_or(false);
    outcome(
        transfer_ok && cb_ok && member && verify_ok && lemma_ok,
        format!("transfer {transfer_ok}, CB {cb_ok}, family {member}, verify {verify_ok}, lemma {lemma_ok}"),
    )
}

fn example3_tf_decomposition() -> Outcome {
    let g = example3_tf();
    let d = match partial_fraction_expand(&g) {
        Ok(d) => d,
        Err(e) => return outcome(false, e.to_string()),
    };
    let one = QMat::from_ints(&[&[1]]);
    let fields = d.c2 == one
        && d.d_inf == QMat::from_ints(&[&[-2]])
        && d.c1.is_zero()
        && d.a1.is_zero()
        && d.a2.is_zero();
    let mode = d.modes.len() == 1
        && d.modes[0].omega_squared == int(1)
        && d.modes[0].t == one
        && d.modes[0].q.is_zero()
        && exact_residue(&d.modes[0].residue) == Some((one.scale(&frac(1, 2)), QMat::zeros(1, 1)));
    let round = reconstruct(&d) == g;
    outcome(fields && mode && round, format!("fields {fields}, mode {mode}, round trip {round}"))
}

fn generator_agreement() -> Outcome {
    let (mut ok, mut na) = (0, 0);
    let mut first_bad = None;
    for i in 0..100u64 {
        let spec = spec_for(i);
        let g = generate_lni(&spec);
        let direct = is_lossless_ni(&g);
        let a = direct.verdict == Verdict::Lni && direct.exactness == lni_core::classify::ReportExactness::Exact;
        let minor = check_minor_decomposition(&g);
        let b = minor.coherent && minor.decomposition_lni;
        let c = match classify_lni_via_bridge(&g, Route::Auto) {
            Ok(r) => r.verdict == Verdict::Lni,
            Err(Error::Hypothesis(_)) => {
                na += 1;
                true
            }
            Err(_) => false,
        };
        if a && b && c {
            ok += 1;
        } else if first_bad.is_none() {
            first_bad = Some(i);
        }
    }
    outcome(
        ok == 100,
        format!("{ok}/100 agree; bridge not applicable (poles at both zero and infinity) for {na}; first failure {first_bad:?}"),
    )
}

fn mutation_negatives() -> Outcome {
    let mut ok = 0;
    let mut first_bad = None;
    for i in 0..100u64 {
        let mutation = ALL_MUTATIONS[(i % 8) as usize];
        let mut spec = spec_for(1000 + i);
        spec.m = spec.m.max(mutation.min_dim());
        let d = generate_lni_data(&spec);
        let bad = mutation.apply(&reconstruct(&d), &d.c2, &d.a2, &mut rng(i));
        if mutation.witnessed(&is_lossless_ni(&bad)) {
            ok += 1;
        } else if first_bad.is_none() {
            first_bad = Some((i, mutation));
        }
    }
    outcome(ok == 100, format!("{ok}/100 rejected with a named witness; first failure {first_bad:?}"))
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

struct Case {
    g: TransferMatrix,
    ss: StateSpace,
    lni: bool,
}

fn proper_cases(mutated: bool, count: usize) -> Vec<Case> {
    let mut out = Vec::new();
    let mut seed = if mutated { 20_000 } else { 10_000 };
    while out.len() < count {
        seed += 1;
        let mut r = rng(seed);
        let m = 1 + (seed % 2) as usize;
        let flags = PoleFlags { c1: seed % 3 == 0, c2: seed % 5 < 2, a1: false, a2: false };
        let mut spec = GeneratorSpec::new(m, (seed % 3) as usize, flags, seed);
        spec.max_rank = Some(1);
        let d = generate_lni_data(&spec);
        let mut g = reconstruct(&d);
        if mutated {
            let mutation = PROPER_MUTATIONS[out.len() % PROPER_MUTATIONS.len()];
            if m < mutation.min_dim() {
                continue;
            }
            g = mutation.apply(&g, &d.c2, &d.a2, &mut r);
        }
        let Ok((ss, meta)) = realize(&g) else { continue };
        if ss.n() > 8 || !meta.minimal() {
            continue;
        }
        out.push(Case { g, ss, lni: !mutated });
    }
    out
}

fn lemma_equivalence() -> Outcome {
    let mut cases = proper_cases(false, 50);
    cases.extend(proper_cases(true, 50));
    let (mut ok, mut certified, mut exact) = (0, 0, 0);
    let mut first_bad = None;
    for (i, case) in cases.iter().enumerate() {
        let classifier = is_lossless_ni(&case.g).verdict == Verdict::Lni;
        let good = match lni_lemma_check(&case.ss) {
            Ok(report) => {
                let mut good = report.certified() == classifier && classifier == case.lni;
                if let LemmaOutcome::Certified(c) = &report.outcome {
                    certified += 1;
                    let tol = if c.exact_reverified { 0.0 } else { CERT_TOLERANCE };
                    let v = verify_witness(&case.ss, c, CertKind::Eq7, tol).map(|v| v.pass).unwrap_or(false);
                    let small = c.residuals.iter().all(|r| r.is_zero() || to_f64(&r.max_abs) <= CERT_TOLERANCE);
                    if c.exact_reverified {
                        exact += 1;
                    }
                    good &= v && small;
                }
                good
            }
            Err(_) => false,
        };
        if good {
            ok += 1;
        } else if first_bad.is_none() {
            first_bad = Some(i);
        }
    }
    let max_n = cases.iter().map(|c| c.ss.n()).max().unwrap_or(0);
    outcome(
        ok == 100,
        format!("{ok}/100 match; {certified} certified ({exact} exact); max n = {max_n}; first failure {first_bad:?}"),
    )
}

fn exactness_invariants() -> Outcome {
    let mut counts = [0usize; 4];
    for i in 0..100u64 {
        let mut r = rng(50_000 + i);
        let m = 1 + (i % 3) as usize;
        let g = random_transfer(&mut r, m, 3, 3);
        if g.para_conjugate().para_conjugate() == g {
            counts[0] += 1;
        }

        let g = generate_lni(&spec_for(2000 + i));
        if partial_fraction_expand(&g).map(|d| reconstruct(&d) == g).unwrap_or(false) {
            counts[1] += 1;
        }

        let proper = loop {
            let g = random_transfer(&mut r, 1 + (i % 2) as usize, 3, 3);
            if g.is_proper() {
                break g;
            }
        };
        if realize(&proper).map(|(ss, _)| transfer_of(&ss) == proper).unwrap_or(false) {
            counts[2] += 1;
        }

        let a = spec_for(3000 + i);
        let b = GeneratorSpec { seed: 4000 + i, ..a.clone() };
        if check_sum_closure(&generate_lni(&a), &generate_lni(&b)).map(|s| s.report.verdict == Verdict::Lni).unwrap_or(false) {
            counts[3] += 1;
        }
    }
    outcome(
        counts.iter().all(|&c| c == 100),
        format!(
            "para-conjugate {}/100, expansion {}/100, realization {}/100, sum closure {}/100",
            counts[0], counts[1], counts[2], counts[3]
        ),
    )
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [Criterion; 8] = [
        ("1 example 1 reproduction", secs(1), example1_reproduction),
        ("2 example 2 reproduction", secs(1), example2_reproduction),
        ("3 example 3 reproduction", secs(5), example3_reproduction),
        ("4 decomposition of (1-2s^4)/(s^2(s^2+1))", None, example3_tf_decomposition),
        ("5 generator/classifier agreement", secs(60), generator_agreement),
        ("6 mutation negatives", None, mutation_negatives),
        ("7 certificate/classifier equivalence", secs(120), lemma_equivalence),
        ("8 exactness invariants", None, exactness_invariants),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let o = check();
        let took = start.elapsed();
        let pass = o.pass && limit.is_none_or(|l| took <= l);
        if !pass {
            failed += 1;
        }
        let limit = limit.map_or(String::new(), |l| format!(", limit {} s", l.as_secs()));
        println!(
            "{} criterion {name}: {} [{:.2} s{limit}]",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
