//! Exact analysis of lossless negative imaginary (LNI) and lossless positive
//! real (LPR) transfer matrices.

pub mod bridge;
pub mod cert;
pub mod classify;
pub mod error;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod spectral;
pub mod statespace;
pub mod transfer;

pub use error::{Error, Result};
pub use linalg::{psd_check_exact, PsdVerdict, QMat};
pub use poly::Poly;
pub use rational::{ComplexRational, Rational};
pub use transfer::{PoleLocation, PoleRecord, PoleTable, RationalFunction, TransferMatrix};
pub use spectral::{
    generate_lni, generate_lni_data, limits_at_extremes, partial_fraction_expand, reconstruct, residue_at,
    GeneratorSpec, Mode, PoleFlags, ResidueMatrix, SpectralData,
};
pub use classify::{
    check_minor_decomposition, check_sum_closure, is_lossless_ni, is_lossless_ni_with, is_lossless_pr,
    is_lossless_pr_with, ni_frequency_sample_check, pr_frequency_sample_check, ClassificationReport, ClassifyOptions,
    ConditionReport, ConditionStatus, Verdict, Witness,
};
pub use bridge::{classify_lni_via_bridge, to_lpr_via_infinity, to_lpr_via_zero, BridgeReport, Route};
pub use statespace::{ctrb_obsv_ranks, realize, transfer_of, RealizationMeta, StateSpace};
pub use cert::{
    find_psd_point, lni_lemma_check, solve_equality_family, verify_witness, AffineFamily, CertKind, Certificate,
    FamilyOutcome, LemmaOutcome, LemmaReport, Provenance, SearchOutcome,
};
