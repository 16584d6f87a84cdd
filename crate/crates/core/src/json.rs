//! JSON wire formats.
//!
//! Scalars travel as strings: an integer (`"-3"`), a fraction (`"2/7"`) or
//! an exact decimal (`"0.125"`). Plain JSON integers and decimals are also
//! accepted on input and read exactly from their text. Polynomials are
//! ascending coefficient arrays.
//!
//! ```text
//! TransferMatrix  {"m": 2, "entries": [[{"num": ["1"], "den": ["1", "0", "1"]}, ...], ...]}
//! StateSpace      {"A": [[...]], "B": [[...]], "C": [[...]], "D": [[...]]}
//! Certificate     {"P": [[...]], "L": [[...]]?, "W": [[...]]?, ...}
//! ```
//!
//! Output objects have sorted keys, so equal inputs give byte-identical
//! output.

use serde_json::{json, Map, Value};

use crate::bridge::{BridgeReport, RouteOutcome};
use crate::cert::{Certificate, LemmaOutcome, LemmaReport, Residual, VerifyReport};
use crate::classify::{
    ClassificationReport, ConditionReport, ConditionStatus, FrequencySample, MinorDecompositionReport,
    ReportExactness, RhpEvidence, SampleReport, Witness,
};
use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::poly::Poly;
use crate::rational::{format_rational, parse_rational, to_f64, Rational};
use crate::spectral::{Exactness, ResidueValue, SpectralData};
use crate::statespace::{RealizationMeta, StateSpace};
use crate::transfer::{PoleLocation, RationalFunction, TransferMatrix};

fn err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

pub fn rational_from_json(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| err(path, e)),
        Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| err(path, e)),
        _ => Err(err(path, "expected a rational string or number")),
    }
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| err(path, format!("missing key {key:?}")))
}

pub fn poly_from_json(v: &Value, path: &str) -> Result<Poly> {
    let coeffs = array(v, path)?
        .iter()
        .enumerate()
        .map(|(k, c)| rational_from_json(c, &format!("{path}[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

/// Ascending coefficients; the zero polynomial is `["0"]`.
pub fn poly_to_json(p: &Poly) -> Value {
    if p.is_zero() {
        return json!(["0"]);
    }
    Value::Array(p.coeffs().iter().map(rational_to_json).collect())
}

pub fn transfer_matrix_from_json(v: &Value) -> Result<TransferMatrix> {
    let m = field(v, "m", "$")?.as_u64().ok_or_else(|| err("$.m", "expected a positive integer"))? as usize;
    let rows = array(field(v, "entries", "$")?, "$.entries")?;
    if rows.len() != m {
        return Err(err("$.entries", format!("expected {m} rows, found {}", rows.len())));
    }
    let mut out = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("$.entries[{i}]");
        let cells = array(row, &rp)?;
        if cells.len() != m {
            return Err(err(&rp, format!("expected {m} entries, found {}", cells.len())));
        }
        let mut r = Vec::with_capacity(m);
        for (j, cell) in cells.iter().enumerate() {
            let cp = format!("{rp}[{j}]");
            let num = poly_from_json(field(cell, "num", &cp)?, &format!("{cp}.num"))?;
            let den = poly_from_json(field(cell, "den", &cp)?, &format!("{cp}.den"))?;
            r.push(RationalFunction::new(num, den).map_err(|e| err(&cp, e))?);
        }
        out.push(r);
    }
    TransferMatrix::new(out)
}

pub fn rational_function_to_json(r: &RationalFunction) -> Value {
    json!({"num": poly_to_json(r.num()), "den": poly_to_json(r.den())})
}

pub fn transfer_matrix_to_json(g: &TransferMatrix) -> Value {
    let entries: Vec<Value> =
        g.rows().iter().map(|row| Value::Array(row.iter().map(rational_function_to_json).collect())).collect();
    json!({"m": g.dim(), "entries": entries})
}

/// Reads a matrix; `cols` disambiguates matrices without rows.
pub fn qmat_from_json(v: &Value, path: &str, cols_if_empty: usize) -> Result<QMat> {
    let rows = array(v, path)?;
    if rows.is_empty() {
        return Ok(QMat::zeros(0, cols_if_empty));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let rp = format!("{path}[{i}]");
        let r = array(row, &rp)?
            .iter()
            .enumerate()
            .map(|(j, c)| rational_from_json(c, &format!("{rp}[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        out.push(r);
    }
    QMat::from_rows(out).map_err(|e| err(path, e))
}

pub fn qmat_to_json(m: &QMat) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(rational_to_json).collect())).collect())
}

fn f64_matrix_to_json(rows: &[Vec<f64>]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(|x| Value::String(format!("{x:e}"))).collect())).collect())
}

pub fn state_space_from_json(v: &Value) -> Result<StateSpace> {
    let d = qmat_from_json(field(v, "D", "$")?, "$.D", 0)?;
    let m = d.rows();
    let a = qmat_from_json(field(v, "A", "$")?, "$.A", 0)?;
    let n = a.rows();
    let b = qmat_from_json(field(v, "B", "$")?, "$.B", m)?;
    let c_val = field(v, "C", "$")?;
    let mut c = qmat_from_json(c_val, "$.C", n)?;
    if n == 0 && c.cols() == 0 {
        c = QMat::zeros(m, 0);
    }
    StateSpace::new(a, b, c, d).map_err(|e| err("$", e))
}

pub fn state_space_to_json(ss: &StateSpace) -> Value {
    let c = if ss.n() == 0 {
        Value::Array((0..ss.m()).map(|_| json!([])).collect())
    } else {
        qmat_to_json(&ss.c)
    };
    json!({"A": qmat_to_json(&ss.a), "B": qmat_to_json(&ss.b), "C": c, "D": qmat_to_json(&ss.d)})
}

/// Either accepted CLI input form.
#[derive(Clone, Debug, PartialEq)]
pub enum SystemInput {
    Transfer(TransferMatrix),
    StateSpace(StateSpace),
}

/// Detects the input form by its keys.
pub fn system_from_json(v: &Value) -> Result<SystemInput> {
    let has = |k: &str| v.get(k).is_some();
    match (has("entries"), has("A")) {
        (true, false) => Ok(SystemInput::Transfer(transfer_matrix_from_json(v)?)),
        (false, true) => Ok(SystemInput::StateSpace(state_space_from_json(v)?)),
        (true, true) => Err(err("$", "ambiguous input: both \"entries\" and \"A\" present")),
        _ => Err(err("$", "expected a transfer matrix (\"m\", \"entries\") or a state space (\"A\", \"B\", \"C\", \"D\")")),
    }
}

pub fn realization_to_json(ss: &StateSpace, meta: &RealizationMeta) -> Value {
    json!({
        "state_space": state_space_to_json(ss),
        "meta": {
            "n": meta.n,
            "controllable": meta.controllable,
            "observable": meta.observable,
            "reduction_trace": meta.reduction_trace,
        }
    })
}

fn exactness_to_json(e: &Exactness) -> Value {
    match e {
        Exactness::Exact => json!({"mode": "exact"}),
        Exactness::Numeric { precision_bits, tolerance } => {
            json!({"mode": "numeric", "precision_bits": precision_bits, "tolerance": tolerance})
        }
    }
}

pub fn spectral_to_json(d: &SpectralData) -> Value {
    let modes: Vec<Value> = d
        .modes
        .iter()
        .map(|mode| {
            let k = match &mode.residue.k {
                ResidueValue::Exact { re, im } => json!({"re": qmat_to_json(re), "im": qmat_to_json(im)}),
                ResidueValue::Numeric { re, im } => json!({"re": f64_matrix_to_json(re), "im": f64_matrix_to_json(im)}),
            };
            json!({
                "omega_squared": rational_to_json(&mode.omega_squared),
                "T": qmat_to_json(&mode.t),
                "Q": qmat_to_json(&mode.q),
                "K": k,
                "exactness": exactness_to_json(&mode.residue.exactness),
                "hermitian_defect": mode.residue.hermitian_defect,
            })
        })
        .collect();
    json!({
        "m": d.m,
        "A2": qmat_to_json(&d.a2),
        "A1": qmat_to_json(&d.a1),
        "C2": qmat_to_json(&d.c2),
        "C1": qmat_to_json(&d.c1),
        "D_inf": qmat_to_json(&d.d_inf),
        "modes": modes,
        "zero_order": d.zero_order,
        "infinity_order": d.infinity_order,
    })
}

fn location_to_json(l: &PoleLocation) -> Value {
    match l {
        PoleLocation::Zero => json!({"kind": "zero"}),
        PoleLocation::ImaginaryPair { omega_squared } => {
            json!({"kind": "imaginary-pair", "omega_squared": rational_to_json(omega_squared)})
        }
        PoleLocation::ImaginaryPairs { factor_in_u } => {
            json!({"kind": "imaginary-pairs", "factor_in_u": poly_to_json(factor_in_u)})
        }
        PoleLocation::Infinity => json!({"kind": "infinity"}),
    }
}

fn sample_to_json(s: &FrequencySample) -> Value {
    json!({
        "omega": rational_to_json(&s.omega),
        "re": qmat_to_json(&s.re),
        "im": qmat_to_json(&s.im),
        "min_eigenvalue": s.min_eigenvalue,
        "psd": s.psd,
    })
}

pub fn witness_to_json(w: &Witness) -> Value {
    match w {
        Witness::OffAxisPoles { factor, right_half_plane } => {
            let rhp = match right_half_plane {
                RhpEvidence::PositiveRealRoots(n) => json!({"kind": "positive-real-roots", "count": n}),
                RhpEvidence::NumericRoot { re, im } => json!({"kind": "numeric-root", "re": re, "im": im}),
                RhpEvidence::NotDetected => json!({"kind": "not-detected"}),
            };
            json!({"kind": "off-axis-poles", "factor": poly_to_json(factor), "factor_text": factor.to_string(), "right_half_plane": rhp})
        }
        Witness::PoleOrder { location, order, bound } => {
            json!({"kind": "pole-order", "location": location_to_json(location), "order": order, "bound": bound})
        }
        Witness::Defect { label, matrix } => json!({"kind": "defect", "label": label, "matrix": qmat_to_json(matrix)}),
        Witness::NotSemidefinite { label, matrix, vector, value } => json!({
            "kind": "not-semidefinite",
            "label": label,
            "matrix": qmat_to_json(matrix),
            "vector": vector.iter().map(rational_to_json).collect::<Vec<_>>(),
            "value": rational_to_json(value),
        }),
        Witness::NumericResidue { omega, hermitian_defect, min_eigenvalue } => json!({
            "kind": "numeric-residue",
            "omega": omega,
            "hermitian_defect": hermitian_defect,
            "min_eigenvalue": min_eigenvalue,
        }),
        Witness::Frequency(s) => {
            let mut v = sample_to_json(s);
            v["kind"] = json!("frequency");
            v
        }
    }
}

fn condition_to_json(c: &ConditionReport) -> Value {
    let (pass, status) = match c.status {
        ConditionStatus::Pass => (json!(true), "pass"),
        ConditionStatus::Fail => (json!(false), "fail"),
        ConditionStatus::Skipped => (Value::Null, "skipped"),
    };
    json!({
        "id": c.id,
        "citation": c.citation,
        "pass": pass,
        "status": status,
        "witness": c.witness.iter().map(witness_to_json).collect::<Vec<_>>(),
    })
}

fn report_exactness_to_json(e: &ReportExactness) -> Value {
    match e {
        ReportExactness::Exact => json!({"mode": "exact"}),
        ReportExactness::ToleranceQualified { tolerance, precision_bits } => {
            json!({"mode": "tolerance-qualified", "tolerance": tolerance, "precision_bits": precision_bits})
        }
    }
}

pub fn report_to_json(r: &ClassificationReport) -> Value {
    json!({
        "verdict": r.verdict.label(),
        "conditions": r.conditions.iter().map(condition_to_json).collect::<Vec<_>>(),
        "exactness": report_exactness_to_json(&r.exactness),
        "spectral": r.spectral.as_ref().map_or(Value::Null, spectral_to_json),
        "notes": r.notes,
    })
}

pub fn sample_report_to_json(r: &SampleReport) -> Value {
    let min = r.min_eigenvalue().map_or(Value::Null, |(w, l)| json!({"omega": rational_to_json(w), "value": l}));
    json!({
        "samples": r.samples.iter().map(sample_to_json).collect::<Vec<_>>(),
        "min_eigenvalue": min,
        "violation": r.violation().map_or(Value::Null, sample_to_json),
    })
}

pub fn minor_report_to_json(r: &MinorDecompositionReport) -> Value {
    json!({
        "g0": r.g0.as_ref().map_or(Value::Null, transfer_matrix_to_json),
        "g0_report": r.g0_report.as_ref().map_or(Value::Null, report_to_json),
        "side_conditions": r.side_conditions.iter().map(condition_to_json).collect::<Vec<_>>(),
        "decomposition_lni": r.decomposition_lni,
        "direct_verdict": r.direct_verdict.label(),
        "coherent": r.coherent,
    })
}

fn route_to_json(r: &RouteOutcome) -> Value {
    json!({
        "route": r.route.label(),
        "F": transfer_matrix_to_json(&r.transformed.f),
        "anchor": qmat_to_json(&r.transformed.anchor),
        "anchor_symmetric": r.transformed.anchor_symmetric,
        "pr_report": report_to_json(&r.pr_report),
        "lni": r.lni,
    })
}

pub fn bridge_report_to_json(r: &BridgeReport) -> Value {
    json!({
        "verdict": r.verdict.label(),
        "routes": r.routes.iter().map(route_to_json).collect::<Vec<_>>(),
    })
}

fn residuals_to_json(rs: &[Residual]) -> Value {
    let mut m = Map::new();
    for r in rs {
        m.insert(r.block.clone(), rational_to_json(&r.max_abs));
    }
    Value::Object(m)
}

/// `P` is written exactly when it was confirmed exactly; otherwise as
/// decimals with the precision of an `f64`.
pub fn certificate_to_json(c: &Certificate) -> Value {
    let p = if c.exact_reverified {
        qmat_to_json(&c.p)
    } else {
        let rows: Vec<Vec<f64>> = (0..c.p.rows()).map(|i| c.p.row(i).iter().map(to_f64).collect()).collect();
        f64_matrix_to_json(&rows)
    };
    let mut v = json!({
        "kind": c.kind.label(),
        "P": p,
        "P_encoding": if c.exact_reverified { "exact" } else { "decimal-f64" },
        "residuals": residuals_to_json(&c.residuals),
        "psd": {"exact": c.psd_margin.exact_psd, "min_eigenvalue": c.psd_margin.min_eigenvalue},
        "provenance": c.provenance.label(),
        "exact_reverified": c.exact_reverified,
    });
    if let Some(l) = &c.l {
        v["L"] = qmat_to_json(l);
    }
    if let Some(w) = &c.w {
        v["W"] = qmat_to_json(w);
    }
    v
}

/// Reads `P` and the optional `L`, `W` of a certificate.
pub fn certificate_parts_from_json(v: &Value, n: usize, m: usize) -> Result<(QMat, Option<QMat>, Option<QMat>)> {
    let p = qmat_from_json(field(v, "P", "$")?, "$.P", n)?;
    let l = v.get("L").map(|x| qmat_from_json(x, "$.L", 0)).transpose()?;
    let w = v.get("W").map(|x| qmat_from_json(x, "$.W", m)).transpose()?;
    Ok((p, l, w))
}

pub fn verify_report_to_json(r: &VerifyReport) -> Value {
    json!({
        "kind": r.kind.label(),
        "residuals": residuals_to_json(&r.residuals),
        "psd": {"exact": r.psd.exact_psd, "min_eigenvalue": r.psd.min_eigenvalue},
        "tolerance": r.tolerance,
        "pass": r.pass,
    })
}

pub fn lemma_report_to_json(r: &LemmaReport) -> Value {
    let outcome = match &r.outcome {
        LemmaOutcome::Certified(c) => json!({"status": "LNI-certified", "certificate": certificate_to_json(c)}),
        LemmaOutcome::Refuted { reason, best_margin } => {
            json!({"status": "refuted", "reason": reason, "best_margin": best_margin})
        }
    };
    json!({
        "outcome": outcome,
        "warnings": r.warnings,
        "classifier_verdict": r.classifier_verdict.label(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transfer_matrix_round_trip() {
        let v: Value = serde_json::from_str(
            r#"{"m": 1, "entries": [[{"num": ["1", 0, "0", "0", "-2"], "den": ["0", "0", "1", "0", "1"]}]]}"#,
        )
        .unwrap();
        let g = transfer_matrix_from_json(&v).unwrap();
        let back = transfer_matrix_from_json(&transfer_matrix_to_json(&g)).unwrap();
        assert_eq!(g, back);
        assert_eq!(
            serde_json::to_string(&transfer_matrix_to_json(&g)).unwrap(),
            r#"{"entries":[[{"den":["0","0","1","0","1"],"num":["1","0","0","0","-2"]}]],"m":1}"#
        );
    }

    #[test]
    fn parse_errors_carry_locations() {
        let v: Value = serde_json::from_str(r#"{"m": 1, "entries": [[{"num": ["x"], "den": ["1"]}]]}"#).unwrap();
        let e = transfer_matrix_from_json(&v).unwrap_err().to_string();
        assert!(e.contains("$.entries[0][0].num[0]"), "{e}");
        let v: Value = serde_json::from_str(r#"{"m": 2, "entries": [[{"num": ["1"], "den": ["1"]}]]}"#).unwrap();
        assert!(transfer_matrix_from_json(&v).is_err());
        let v: Value = serde_json::from_str(r#"{"m": 1, "entries": [[{"num": ["1"], "den": ["0"]}]]}"#).unwrap();
        assert!(transfer_matrix_from_json(&v).is_err());
    }

    #[test]
    fn state_space_round_trip_including_empty() {
        let v: Value = serde_json::from_str(r#"{"A": [], "B": [], "C": [[], []], "D": [["1", "0"], ["0", "1/2"]]}"#).unwrap();
        let ss = state_space_from_json(&v).unwrap();
        assert_eq!((ss.n(), ss.m()), (0, 2));
        assert_eq!(state_space_from_json(&state_space_to_json(&ss)).unwrap(), ss);
        assert!(matches!(system_from_json(&v).unwrap(), SystemInput::StateSpace(_)));
    }
}
