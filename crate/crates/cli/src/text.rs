//! Plain-text renderings for `--format text`.

use std::fmt::Write;

use lni_core::bridge::BridgeReport;
use lni_core::cert::{LemmaOutcome, LemmaReport, VerifyReport};
use lni_core::classify::{ConditionReport, ConditionStatus, MinorDecompositionReport, ReportExactness, RhpEvidence};
use lni_core::rational::format_rational;
use lni_core::{Certificate, ClassificationReport, PoleLocation, SpectralData, StateSpace, Witness};

fn location(l: &PoleLocation) -> String {
    match l {
        PoleLocation::Zero => "s = 0".into(),
        PoleLocation::Infinity => "infinity".into(),
        PoleLocation::ImaginaryPair { omega_squared } => format!("w^2 = {}", format_rational(omega_squared)),
        PoleLocation::ImaginaryPairs { factor_in_u } => format!("roots of {factor_in_u} in u = -w^2"),
    }
}

fn witness(w: &Witness) -> String {
    match w {
        Witness::OffAxisPoles { factor, right_half_plane } => {
            let rhp = match right_half_plane {
                RhpEvidence::PositiveRealRoots(n) => format!("{n} positive real root(s)"),
                RhpEvidence::NumericRoot { re, im } => format!("root near {re:.6} + {im:.6}j"),
                RhpEvidence::NotDetected => "no right-half-plane root detected".into(),
            };
            format!("off-axis pole factor {factor} ({rhp})")
        }
        Witness::PoleOrder { location: l, order, bound } => {
            format!("pole at {} has order {order} > {bound}", location(l))
        }
        Witness::Defect { label, matrix } => format!("{label} = {matrix}"),
        Witness::NotSemidefinite { label, vector, value, .. } => {
            let x: Vec<String> = vector.iter().map(format_rational).collect();
            format!("{label}: x^T M x = {} for x = [{}]", format_rational(value), x.join(", "))
        }
        Witness::NumericResidue { omega, hermitian_defect, min_eigenvalue } => {
            format!("residue at w = {omega:.9}: hermitian defect {hermitian_defect:e}, min eigenvalue {min_eigenvalue:e}")
        }
        Witness::Frequency(s) => format!(
            "at w = {}: test matrix {} + j{}, min eigenvalue {:e}",
            format_rational(&s.omega),
            s.re,
            s.im,
            s.min_eigenvalue
        ),
    }
}

fn condition(out: &mut String, c: &ConditionReport) {
    let status = match c.status {
        ConditionStatus::Pass => "pass",
        ConditionStatus::Fail => "FAIL",
        ConditionStatus::Skipped => "skip",
    };
    let _ = writeln!(out, "  [{status}] {:<11} {}", c.id, c.citation);
    for w in &c.witness {
        let _ = writeln!(out, "         {}", witness(w));
    }
}

pub fn report(r: &ClassificationReport) -> String {
    let mut out = format!("verdict: {}\n", r.verdict.label());
    if let ReportExactness::ToleranceQualified { tolerance, precision_bits } = r.exactness {
        let _ = writeln!(out, "tolerance-qualified (tolerance {tolerance:e}, {precision_bits} bits)");
    }
    for c in &r.conditions {
        condition(&mut out, c);
    }
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

pub fn minor(r: &MinorDecompositionReport) -> String {
    let mut out = String::from("minor decomposition:\n");
    for c in &r.side_conditions {
        condition(&mut out, c);
    }
    if let Some(g0) = &r.g0_report {
        let _ = writeln!(out, "  remainder verdict: {}", g0.verdict.label());
    }
    let _ = writeln!(out, "  decomposition LNI: {}", r.decomposition_lni);
    out
}

pub fn spectral(d: &SpectralData) -> String {
    let mut out = String::new();
    for (name, m) in [("A2", &d.a2), ("A1", &d.a1), ("D", &d.d_inf), ("C1", &d.c1), ("C2", &d.c2)] {
        if !m.is_zero() {
            let _ = writeln!(out, "{name} = {m}");
        }
    }
    for mode in &d.modes {
        let _ = writeln!(
            out,
            "w^2 = {}: T = {}, Q = {}",
            format_rational(&mode.omega_squared),
            mode.t,
            mode.q
        );
    }
    if out.is_empty() {
        out.push_str("G = 0\n");
    }
    out
}

pub fn bridge(r: &BridgeReport) -> String {
    let mut out = format!("verdict: {}\n", r.verdict.label());
    for route in &r.routes {
        let _ = writeln!(
            out,
            "route {}: anchor {} (symmetric: {}), F is {}",
            route.route.label(),
            route.transformed.anchor,
            route.transformed.anchor_symmetric,
            route.pr_report.verdict.label()
        );
        for line in route.transformed.f.to_string().lines() {
            let _ = writeln!(out, "  {line}");
        }
    }
    out
}

pub fn state_space(ss: &StateSpace) -> String {
    format!("A = {}\nB = {}\nC = {}\nD = {}\n", ss.a, ss.b, ss.c, ss.d)
}

pub fn certificate(c: &Certificate) -> String {
    let mut out = format!("P = {}\nprovenance: {}\nexact: {}\n", c.p, c.provenance.label(), c.exact_reverified);
    for r in &c.residuals {
        let _ = writeln!(out, "  {} : {}", r.block, format_rational(&r.max_abs));
    }
    out
}

pub fn lemma(r: &LemmaReport) -> String {
    let mut out = match &r.outcome {
        LemmaOutcome::Certified(c) => format!("LNI-certified\n{}", certificate(c)),
        LemmaOutcome::Refuted { reason, best_margin } => match best_margin {
            Some(m) => format!("refuted: {reason} (best margin {m:e})\n"),
            None => format!("refuted: {reason}\n"),
        },
    };
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    let _ = writeln!(out, "classifier: {}", r.classifier_verdict.label());
    out
}

pub fn verify(r: &VerifyReport) -> String {
    let mut out = format!("{} {}\n", r.kind.label(), if r.pass { "pass" } else { "FAIL" });
    for res in &r.residuals {
        let _ = writeln!(out, "  {} : {}", res.block, format_rational(&res.max_abs));
    }
    let _ = writeln!(out, "  P >= 0 exactly: {} (min eigenvalue {:e})", r.psd.exact_psd, r.psd.min_eigenvalue);
    out
}
