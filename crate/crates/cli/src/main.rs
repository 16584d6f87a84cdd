//! `lni`: classify, decompose, transform and certify lossless negative
//! imaginary and lossless positive real systems.
//!
//! Exit status: 0 for affirmative verdicts, 1 for negative verdicts, 2 for
//! input and usage errors.

mod text;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use lni_core::cert::{find_psd_point_with, lni_lemma_check_with, verify_witness_parts, SearchOptions};
use lni_core::classify::{check_minor_decomposition, is_lossless_ni_with, is_lossless_pr_with, ClassifyOptions};
use lni_core::json::{self, SystemInput};
use lni_core::rational::parse_rational;
use lni_core::{
    classify_lni_via_bridge, generate_lni, partial_fraction_expand, realize, transfer_of, CertKind, Certificate,
    FamilyOutcome, GeneratorSpec, PoleFlags, Route, SearchOutcome, StateSpace, TransferMatrix,
};

#[derive(Parser)]
#[command(name = "lni", version, about = "Exact analysis of lossless negative imaginary and positive real systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Class {
    Lni,
    Lpr,
}

#[derive(Args)]
struct Common {
    /// System description (transfer matrix or state-space JSON).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Tolerance for numeric paths.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide LNI (default) or LPR membership.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "lni")]
        class: Class,
        /// Comma-separated positive rational sample frequencies.
        #[arg(long)]
        grid: Option<String>,
        /// Also run the minor-decomposition cross-check.
        #[arg(long)]
        decompose: bool,
    },
    /// Partial-fraction spectral data.
    Pfe {
        #[command(flatten)]
        common: Common,
    },
    /// Classify through the LPR transforms.
    Bridge {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "auto")]
        route: String,
    },
    /// Minimal state-space realization of a proper transfer matrix.
    Realize {
        #[command(flatten)]
        common: Common,
    },
    /// Search an equality-LMI certificate (eq7: LNI, eq5: LPR).
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "eq7")]
        kind: String,
    },
    /// Check a supplied certificate against a state-space system.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Certificate JSON with "P" and optionally "L", "W".
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, default_value = "eq7")]
        kind: String,
    },
    /// Random transfer matrix that is LNI by construction.
    Generate {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        modes: usize,
        /// Comma-separated subset of c1,c2,a1,a2.
        #[arg(long, default_value = "")]
        flags: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type CliResult = Result<(Value, String, bool), Failure>;

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(format!("{}: malformed JSON: {e}", path.display())))
}

fn read_system(path: &PathBuf) -> Result<SystemInput, Failure> {
    json::system_from_json(&read_json(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_transfer(path: &PathBuf) -> Result<TransferMatrix, Failure> {
    Ok(match read_system(path)? {
        SystemInput::Transfer(g) => g,
        SystemInput::StateSpace(ss) => transfer_of(&ss),
    })
}

fn read_state_space(path: &PathBuf) -> Result<StateSpace, Failure> {
    Ok(match read_system(path)? {
        SystemInput::StateSpace(ss) => ss,
        SystemInput::Transfer(g) => realize(&g)?.0,
    })
}

fn parse_grid(grid: &str) -> Result<Vec<lni_core::Rational>, Failure> {
    grid.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let w = parse_rational(s).map_err(|e| Failure(format!("--grid: {e}")))?;
            if w <= lni_core::Rational::from_integer(0.into()) {
                return Err(Failure(format!("--grid: frequencies must be positive, got {}", s.trim())));
            }
            Ok(w)
        })
        .collect()
}

fn check_tolerance(t: f64) -> Result<(), Failure> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Failure(format!("--tolerance must be a nonnegative number, got {t}")));
    }
    Ok(())
}

fn parse_flags(flags: &str) -> Result<PoleFlags, Failure> {
    let mut f = PoleFlags::default();
    for name in flags.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match name {
            "c1" => f.c1 = true,
            "c2" => f.c2 = true,
            "a1" => f.a1 = true,
            "a2" => f.a2 = true,
            _ => return Err(Failure(format!("--flags: unknown term {name:?} (expected c1, c2, a1, a2)"))),
        }
    }
    Ok(f)
}

fn run(cli: Cli) -> Result<(Value, String, bool, Format), Failure> {
    let (format, result): (Format, CliResult) = match cli.command {
        Command::Classify { common, class, grid, decompose } => {
            check_tolerance(common.tolerance)?;
            let mut opts = ClassifyOptions { tolerance: common.tolerance, ..Default::default() };
            if let Some(g) = grid {
                opts.grid = parse_grid(&g)?;
            }
            let g = read_transfer(&common.input)?;
            let report = match class {
                Class::Lni => is_lossless_ni_with(&g, &opts),
                Class::Lpr => is_lossless_pr_with(&g, &opts),
            };
            let mut v = json::report_to_json(&report);
            let mut t = text::report(&report);
            if decompose {
                let minor = check_minor_decomposition(&g);
                if !minor.coherent {
                    return Err(Failure("internal inconsistency: minor decomposition disagrees".into()));
                }
                v["minor_decomposition"] = json::minor_report_to_json(&minor);
                t.push_str(&text::minor(&minor));
            }
            (common.format, Ok((v, t, report.verdict.is_affirmative())))
        }
        Command::Pfe { common } => {
            let g = read_transfer(&common.input)?;
            let d = partial_fraction_expand(&g)?;
            (common.format, Ok((json::spectral_to_json(&d), text::spectral(&d), true)))
        }
        Command::Bridge { common, route } => {
            let route: Route = route.parse()?;
            let g = read_transfer(&common.input)?;
            let r = classify_lni_via_bridge(&g, route)?;
            (common.format, Ok((json::bridge_report_to_json(&r), text::bridge(&r), r.verdict.is_affirmative())))
        }
        Command::Realize { common } => {
            let g = read_transfer(&common.input)?;
            let (ss, meta) = realize(&g)?;
            let t = format!("n = {}\n{}", meta.n, text::state_space(&ss));
            (common.format, Ok((json::realization_to_json(&ss, &meta), t, true)))
        }
        Command::Certify { common, kind } => {
            check_tolerance(common.tolerance)?;
            let kind: CertKind = kind.parse()?;
            let ss = read_state_space(&common.input)?;
            let opts = SearchOptions { tolerance: common.tolerance, ..Default::default() };
            (common.format, certify(&ss, kind, &opts))
        }
        Command::Verify { common, cert, kind } => {
            check_tolerance(common.tolerance)?;
            let kind: CertKind = kind.parse()?;
            let ss = read_state_space(&common.input)?;
            let (p, l, w) = json::certificate_parts_from_json(&read_json(&cert)?, ss.n(), ss.m())
                .map_err(|e| Failure(format!("{}: {e}", cert.display())))?;
            let r = verify_witness_parts(&ss, kind, &p, l.as_ref(), w.as_ref(), common.tolerance)?;
            (common.format, Ok((json::verify_report_to_json(&r), text::verify(&r), r.pass)))
        }
        Command::Generate { m, modes, flags, seed, format } => {
            if m == 0 {
                return Err(Failure("--m must be at least 1".into()));
            }
            let spec = GeneratorSpec::new(m, modes, parse_flags(&flags)?, seed);
            let g = generate_lni(&spec);
            (format, Ok((json::transfer_matrix_to_json(&g), g.to_string(), true)))
        }
    };
    let (v, t, ok) = result?;
    Ok((v, t, ok, format))
}

fn certify(ss: &StateSpace, kind: CertKind, opts: &SearchOptions) -> CliResult {
    match kind {
        CertKind::Eq7 => {
            let r = lni_lemma_check_with(ss, opts)?;
            Ok((json::lemma_report_to_json(&r), text::lemma(&r), r.certified()))
        }
        CertKind::Eq5 => {
            let family = match lni_core::solve_equality_family(ss, CertKind::Eq5)? {
                FamilyOutcome::Feasible(f) => f,
                FamilyOutcome::Infeasible { block } => {
                    let v = serde_json::json!({"outcome": {"status": "refuted", "reason": format!("equality block {block} cannot vanish")}});
                    return Ok((v, format!("refuted: equality block {block} cannot vanish\n"), false));
                }
            };
            match find_psd_point_with(&family, opts) {
                SearchOutcome::Found(pt) => {
                    let mut c = Certificate::user_supplied(ss, CertKind::Eq5, pt.p, None, None)?;
                    c.provenance = pt.provenance;
                    let v = serde_json::json!({"outcome": {"status": "LPR-certified", "certificate": json::certificate_to_json(&c)}});
                    Ok((v, text::certificate(&c), true))
                }
                SearchOutcome::NotFound { best_margin, .. } => {
                    let v = serde_json::json!({"outcome": {"status": "refuted", "reason": "no positive semidefinite P in the solution family", "best_margin": best_margin}});
                    Ok((v, format!("refuted: no PSD P (best margin {best_margin:e})\n"), false))
                }
            }
        }
        CertKind::Eq4 => Err(Failure("eq4 certificates can only be verified (`lni verify --kind eq4`)".into())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((v, t, ok, format)) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&v).expect("serializable")),
                Format::Text => print!("{t}"),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
