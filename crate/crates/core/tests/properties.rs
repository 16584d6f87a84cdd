mod common;

use common::*;
use lni_core::json::{transfer_matrix_from_json, transfer_matrix_to_json};
use lni_core::*;
use proptest::prelude::*;

fn spec_strategy() -> impl Strategy<Value = GeneratorSpec> {
    (1usize..=3, 0usize..=3, 0usize..16, any::<u64>())
        .prop_map(|(m, modes, f, seed)| GeneratorSpec::new(m, modes, PoleFlags::all()[f], seed))
}

fn proper_spec_strategy() -> impl Strategy<Value = GeneratorSpec> {
    (1usize..=2, 0usize..=2, any::<bool>(), any::<bool>(), any::<u64>()).prop_map(|(m, modes, c1, c2, seed)| {
        let mut s = GeneratorSpec::new(m, modes, PoleFlags { c1, c2, a1: false, a2: false }, seed);
        s.max_rank = Some(1);
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_systems_are_lni(spec in spec_strategy()) {
        let g = generate_lni(&spec);
        let r = is_lossless_ni(&g);
        prop_assert_eq!(r.verdict, Verdict::Lni);
        prop_assert_eq!(r.exactness, lni_core::classify::ReportExactness::Exact);
        let minor = check_minor_decomposition(&g);
        prop_assert!(minor.coherent && minor.decomposition_lni);
    }

    #[test]
    fn pfe_reconstructs(spec in spec_strategy()) {
        let g = generate_lni(&spec);
        let d = partial_fraction_expand(&g).unwrap();
        prop_assert_eq!(reconstruct(&d), g);
        // And the expansion agrees with the data the generator used.
        let src = generate_lni_data(&spec);
        prop_assert_eq!(d.c2, src.c2);
        prop_assert_eq!(d.c1, src.c1);
        prop_assert_eq!(d.a1, src.a1);
        prop_assert_eq!(d.a2, src.a2);
        prop_assert_eq!(d.d_inf, src.d_inf);
        prop_assert_eq!(d.modes.len(), src.modes.len());
    }

    #[test]
    fn para_conjugate_is_an_involution(seed in any::<u64>(), m in 1usize..=3) {
        let g = random_transfer(&mut rng(seed), m, 3, 3);
        prop_assert_eq!(g.para_conjugate().para_conjugate(), g);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), m in 1usize..=3) {
        let g = random_transfer(&mut rng(seed), m, 3, 3);
        prop_assert_eq!(transfer_matrix_from_json(&transfer_matrix_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn bridge_agrees_with_direct(spec in spec_strategy()) {
        let g = generate_lni(&spec);
        if let Ok(r) = classify_lni_via_bridge(&g, Route::Auto) {
            prop_assert_eq!(r.verdict, Verdict::Lni);
            for route in &r.routes {
                prop_assert_eq!(route.pr_report.verdict, Verdict::Lpr);
            }
        } else {
            prop_assert!(spec.flags.has_zero_pole() && !spec.flags.is_proper());
        }
    }

    #[test]
    fn realization_round_trip(seed in any::<u64>(), m in 1usize..=2) {
        let mut r = rng(seed);
        // Strictly proper plus a constant.
        let g = random_transfer(&mut r, m, 1, 3);
        let g = match g.value_at_infinity() {
            Some(_) => g,
            None => return Ok(()),
        };
        let (ss, meta) = realize(&g).unwrap();
        prop_assert!(meta.minimal());
        prop_assert_eq!(transfer_of(&ss), g);
    }

    #[test]
    fn sum_of_lni_is_lni(a in spec_strategy(), seed in any::<u64>()) {
        let b = GeneratorSpec { seed, ..a.clone() };
        let out = check_sum_closure(&generate_lni(&a), &generate_lni(&b)).unwrap();
        prop_assert_eq!(out.report.verdict, Verdict::Lni);
    }

    #[test]
    fn mutants_are_rejected_with_a_named_witness(spec in spec_strategy(), k in 0usize..8, seed in any::<u64>()) {
        let mutation = ALL_MUTATIONS[k];
        let spec = GeneratorSpec { m: spec.m.max(mutation.min_dim()), ..spec };
        let d = generate_lni_data(&spec);
        let g = reconstruct(&d);
        let bad = mutation.apply(&g, &d.c2, &d.a2, &mut rng(seed));
        let r = is_lossless_ni(&bad);
        prop_assert!(mutation.witnessed(&r), "{:?}: {:?}", mutation, r.conditions);
    }

    #[test]
    fn certificate_matches_classifier_on_proper_systems(spec in proper_spec_strategy(), k in 0usize..5, mutate in any::<bool>()) {
        let d = generate_lni_data(&spec);
        let mut g = reconstruct(&d);
        if mutate {
            let mutation = PROPER_MUTATIONS[k];
            if spec.m < mutation.min_dim() {
                return Ok(());
            }
            g = mutation.apply(&g, &d.c2, &d.a2, &mut rng(spec.seed));
        }
        let (ss, _) = realize(&g).unwrap();
        prop_assume!(ss.n() <= 8);
        let lemma = lni_lemma_check(&ss).unwrap();
        prop_assert_eq!(lemma.certified(), is_lossless_ni(&g).verdict == Verdict::Lni);
        prop_assert_eq!(lemma.certified(), !mutate);
    }
}

#[test]
fn eq4_reduces_to_eq5_with_zero_factors() {
    // F = 1/s realized as (0, 1, 1, 0): P = 1 satisfies both forms.
    let ss = StateSpace::new(
        QMat::from_ints(&[&[0]]),
        QMat::from_ints(&[&[1]]),
        QMat::from_ints(&[&[1]]),
        QMat::from_ints(&[&[0]]),
    )
    .unwrap();
    let p = QMat::from_ints(&[&[1]]);
    let l = QMat::zeros(1, 1);
    let w = QMat::zeros(1, 1);
    let r4 = lni_core::cert::verify_witness_parts(&ss, CertKind::Eq4, &p, Some(&l), Some(&w), 0.0).unwrap();
    let r5 = lni_core::cert::verify_witness_parts(&ss, CertKind::Eq5, &p, None, None, 0.0).unwrap();
    assert!(r4.pass && r5.pass);
}

#[test]
fn frequency_sampling_of_one_over_s_plus_one() {
    // 1/(s+1) is NI but not lossless; the sampled test matrix is
    // 2w/(1+w^2) > 0.
    let g = TransferMatrix::new(vec![vec![rf(&[1], &[1, 1])]]).unwrap();
    let samples = ni_frequency_sample_check(&g, &[lni_core::rational::int(1)]).unwrap();
    assert!(samples.violation().is_none());
    assert_eq!(samples.samples[0].re, QMat::from_ints(&[&[1]]));
    assert_ne!(is_lossless_ni(&g).verdict, Verdict::Lni);
}
