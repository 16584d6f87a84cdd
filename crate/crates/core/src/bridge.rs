//! Transforms between lossless negative imaginary and lossless positive real
//! transfer matrices.
//!
//! Two routes exist, each with its own hypothesis:
//!
//! * zero route, `F(s) = -(1/s)[G(s) - G(0)]`, for `G` without a pole at zero;
//! * infinity route, `F(s) = s[G(s) - G(inf)]`, for proper `G`.
//!
//! In both cases `G` is LNI exactly when the anchor value (`G(0)` or
//! `G(inf)`) is symmetric and `F` is LPR.

use crate::classify::{is_lossless_pr_with, ClassificationReport, ClassifyOptions, Verdict};
use crate::error::{Error, Result};
use crate::linalg::QMat;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::transfer::{RationalFunction, TransferMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    Zero,
    Infinity,
    /// Every route whose hypothesis holds.
    Auto,
}

impl Route {
    pub fn label(&self) -> &'static str {
        match self {
            Route::Zero => "zero",
            Route::Infinity => "infinity",
            Route::Auto => "auto",
        }
    }
}

impl std::str::FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(Route::Zero),
            "infinity" => Ok(Route::Infinity),
            "auto" => Ok(Route::Auto),
            _ => Err(Error::Parse(format!("unknown route {s:?} (expected zero, infinity or auto)"))),
        }
    }
}

/// Result of one transform: the LPR candidate and the anchor value it was
/// built from.
#[derive(Clone, Debug, PartialEq)]
pub struct Transformed {
    pub f: TransferMatrix,
    pub anchor: QMat,
    pub anchor_symmetric: bool,
}

/// `F(s) = -(1/s)[G(s) - G(0)]`. The singularity at zero cancels exactly.
pub fn to_lpr_via_zero(g: &TransferMatrix) -> Result<Transformed> {
    if g.lcm_denominator().zero_root_order() > 0 {
        return Err(Error::Hypothesis("zero route requires G without a pole at s = 0".into()));
    }
    let g0 = g.evaluate_real(&Rational::from_integer(0.into()))?;
    let m = g.dim();
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(m);
        for j in 0..m {
            let e = g.entry(i, j);
            // n/d - g0 = (n - g0 d)/d, and s divides n - g0 d.
            let num = e.num() - &e.den().scale(&g0[(i, j)]);
            if !num.coeff(0).eq(&Rational::from_integer(0.into())) {
                return Err(Error::Internal(format!("entry ({i},{j}): G - G(0) does not vanish at s = 0")));
            }
            let num = -&num.shift_down(1);
            row.push(RationalFunction::new(num, e.den().clone())?);
        }
        rows.push(row);
    }
    let anchor_symmetric = g0.is_symmetric();
    Ok(Transformed { f: TransferMatrix::new(rows)?, anchor: g0, anchor_symmetric })
}

/// `F(s) = s[G(s) - G(inf)]` for proper `G`.
pub fn to_lpr_via_infinity(g: &TransferMatrix) -> Result<Transformed> {
    let ginf = g
        .value_at_infinity()
        .ok_or_else(|| Error::Hypothesis("infinity route requires a proper G".into()))?;
    let f = g.try_sub(&TransferMatrix::constant(&ginf))?;
    let f = TransferMatrix::poly_times(&Poly::s(), &QMat::identity(g.dim())).try_mul(&f)?;
    let anchor_symmetric = ginf.is_symmetric();
    Ok(Transformed { f, anchor: ginf, anchor_symmetric })
}

/// Hypotheses that hold for `g`, in the order zero, infinity.
pub fn applicable_routes(g: &TransferMatrix) -> Vec<Route> {
    let mut out = Vec::new();
    if g.lcm_denominator().zero_root_order() == 0 {
        out.push(Route::Zero);
    }
    if g.is_proper() {
        out.push(Route::Infinity);
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct RouteOutcome {
    pub route: Route,
    pub transformed: Transformed,
    pub pr_report: ClassificationReport,
    /// Anchor symmetric and `F` LPR.
    pub lni: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BridgeReport {
    pub routes: Vec<RouteOutcome>,
    /// `Lni`, or `NiOnlyUndecided` when the bridge rules out losslessness
    /// (the transforms say nothing about the general NI inequality).
    pub verdict: Verdict,
}

fn run_route(g: &TransferMatrix, route: Route, opts: &ClassifyOptions) -> Result<RouteOutcome> {
    let transformed = match route {
        Route::Zero => to_lpr_via_zero(g)?,
        Route::Infinity => to_lpr_via_infinity(g)?,
        Route::Auto => unreachable!("auto is expanded by the caller"),
    };
    let pr_report = is_lossless_pr_with(&transformed.f, opts);
    let lni = transformed.anchor_symmetric && pr_report.verdict == Verdict::Lpr;
    Ok(RouteOutcome { route, transformed, pr_report, lni })
}

pub fn classify_lni_via_bridge(g: &TransferMatrix, route: Route) -> Result<BridgeReport> {
    classify_lni_via_bridge_with(g, route, &ClassifyOptions::default())
}

/// Decides LNI through the chosen route(s). With [`Route::Auto`] all
/// applicable routes run and any disagreement is an internal error.
pub fn classify_lni_via_bridge_with(g: &TransferMatrix, route: Route, opts: &ClassifyOptions) -> Result<BridgeReport> {
    let routes = match route {
        Route::Auto => {
            let r = applicable_routes(g);
            if r.is_empty() {
                return Err(Error::Hypothesis(
                    "no route applies: G has poles at both zero and infinity".into(),
                ));
            }
            r
        }
        r => vec![r],
    };
    let outcomes = routes.into_iter().map(|r| run_route(g, r, opts)).collect::<Result<Vec<_>>>()?;
    if outcomes.windows(2).any(|w| w[0].lni != w[1].lni) {
        return Err(Error::Internal("zero and infinity routes disagree".into()));
    }
    let verdict = if outcomes[0].lni { Verdict::Lni } else { Verdict::NiOnlyUndecided };
    Ok(BridgeReport { routes: outcomes, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_ints(n), Poly::from_ints(d)).unwrap()
    }

    fn f_example() -> TransferMatrix {
        TransferMatrix::new(vec![
            vec![rf(&[0, 1], &[1, 0, 1]), rf(&[1], &[1])],
            vec![rf(&[-1], &[1]), rf(&[0, 1], &[1, 0, 1])],
        ])
        .unwrap()
    }

    #[test]
    fn zero_route_example1() {
        let g = TransferMatrix::new(vec![
            vec![rf(&[1], &[1, 0, 1]), rf(&[0, -1], &[1])],
            vec![rf(&[0, 1], &[1]), rf(&[1], &[1, 0, 1])],
        ])
        .unwrap();
        let t = to_lpr_via_zero(&g).unwrap();
        assert_eq!(t.f, f_example());
        assert_eq!(t.anchor, QMat::identity(2));
        let r = classify_lni_via_bridge(&g, Route::Zero).unwrap();
        assert_eq!(r.verdict, Verdict::Lni);
        assert!(to_lpr_via_infinity(&g).is_err());
    }

    #[test]
    fn infinity_route_example2() {
        let g = TransferMatrix::new(vec![
            vec![rf(&[0, 0, -1], &[1, 0, 1]), rf(&[1, 1], &[0, 1])],
            vec![rf(&[-1, 1], &[0, 1]), rf(&[0, 0, -1], &[1, 0, 1])],
        ])
        .unwrap();
        let t = to_lpr_via_infinity(&g).unwrap();
        assert_eq!(t.f, f_example());
        assert_eq!(classify_lni_via_bridge(&g, Route::Auto).unwrap().verdict, Verdict::Lni);
        assert!(matches!(to_lpr_via_zero(&g), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn trivial_routes() {
        let d = QMat::from_ints(&[&[1, 2], &[2, 3]]);
        let g = TransferMatrix::constant(&d);
        assert!(to_lpr_via_zero(&g).unwrap().f.is_zero());
        assert!(to_lpr_via_infinity(&g).unwrap().f.is_zero());
        let a1 = QMat::from_ints(&[&[0, 1], &[-1, 0]]);
        let g = TransferMatrix::poly_times(&Poly::s(), &a1);
        assert_eq!(to_lpr_via_zero(&g).unwrap().f, TransferMatrix::constant(&-&a1));
    }

    #[test]
    fn one_over_s_infinity_route() {
        let g = TransferMatrix::new(vec![vec![rf(&[1], &[0, 1])]]).unwrap();
        let t = to_lpr_via_infinity(&g).unwrap();
        assert_eq!(t.f, TransferMatrix::constant(&QMat::identity(1)));
        let r = classify_lni_via_bridge(&g, Route::Auto).unwrap();
        assert_ne!(r.verdict, Verdict::Lni);
        assert_eq!(r.routes.len(), 1);
    }

    #[test]
    fn no_route_for_both_extremes() {
        let g = TransferMatrix::new(vec![vec![rf(&[1, 0, 1], &[0, 1])]]).unwrap();
        assert!(matches!(classify_lni_via_bridge(&g, Route::Auto), Err(Error::Hypothesis(_))));
    }
}
