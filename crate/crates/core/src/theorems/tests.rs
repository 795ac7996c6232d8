use std::collections::HashSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::grpstruct::sylow_subgroup;
use crate::permcore::{derived_subgroup, normalizer, PermGroup, Permutation};
use crate::testutil::*;

fn d8_in_s4() -> PermGroup {
    let s4 = sym4();
    normalizer(&s4, &sylow_subgroup(&s4, 2).unwrap()).unwrap()
}

fn c6() -> PermGroup {
    PermGroup::new(5, vec![perm(5, &[&[1, 2, 3], &[4, 5]])]).unwrap()
}

fn cited_sl2_16() -> CheckOptions {
    CheckOptions {
        cited: vec![CitedDegrees { p: 2, degrees: vec![1, 2, 4, 8, 16], citation: "2-power degrees".into() }],
        ..CheckOptions::default()
    }
}

fn cited_psl2_17() -> CheckOptions {
    CheckOptions {
        cited: vec![CitedDegrees { p: 17, degrees: (1..=17).step_by(2).collect(), citation: "odd degrees".into() }],
        ..CheckOptions::default()
    }
}

/// `G \ ∪ H^g` by conjugating `H` by every element.
fn brute_derangements(g: &PermGroup, h: &PermGroup) -> Vec<Permutation> {
    let mut covered = HashSet::new();
    for t in g.elements().unwrap() {
        for x in h.elements().unwrap() {
            covered.insert(x.conjugate_by(t));
        }
    }
    let mut out: Vec<Permutation> = g.elements().unwrap().iter().filter(|x| !covered.contains(*x)).cloned().collect();
    out.sort();
    out
}

#[test]
fn derangements_of_sym4_mod_d8() {
    let s4 = sym4();
    let d = derangement_set(&s4, &d8_in_s4()).unwrap();
    assert_eq!(d.len(), 8);
    assert!(d.members.iter().all(|x| x.order() == 3));
    assert!(derangement_set(&s4, &s4).unwrap().is_empty());
}

#[test]
fn derangements_of_sym3_mod_transposition() {
    let s3 = sym(3);
    let h = s3.subgroup(vec![perm(3, &[&[1, 2]])]).unwrap();
    let d = derangement_set(&s3, &h).unwrap();
    let mut expected = vec![perm(3, &[&[1, 2, 3]]), perm(3, &[&[1, 3, 2]])];
    expected.sort();
    assert_eq!(d.members, expected);
}

#[test]
fn derangements_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in [sym4(), w96(), alt4(), sym(5), dihedral(6)] {
        for k in 0..6 {
            let mut gens = vec![g.random_element(&mut rng)];
            if k % 2 == 0 {
                gens.push(g.random_element(&mut rng));
            }
            let h = g.subgroup(gens).unwrap();
            let d = derangement_set(&g, &h).unwrap();
            assert_eq!(d.members, brute_derangements(&g, &h));
            // union of full classes
            let classes = g.conjugacy_classes().unwrap();
            let total: usize = d.classes.iter().map(|&i| classes[i].size()).sum();
            assert_eq!(total, d.len());
        }
    }
}

#[test]
fn property_dp_examples() {
    let s4 = sym4();
    let d8 = d8_in_s4();
    assert!(has_property_dp(&s4, &d8, 3).unwrap());
    let out = property_dp(&s4, &d8, 2).unwrap();
    assert!(!out.holds);
    assert_eq!(out.witness().unwrap().element_order(), 3);
    for p in [2, 3, 5] {
        assert!(has_property_dp(&s4, &s4, p).unwrap());
    }
    assert!(matches!(property_dp(&s4, &sym(3), 2), Err(crate::Error::DegreeMismatch { .. })));
}

#[test]
fn ibr_qprime_examples() {
    assert!(ibr_qprime(&sym4(), 3, 2).unwrap());
    let v = ibr_qprime_with(&w96(), 3, 2, &CheckOptions::default()).unwrap();
    assert!(!v.holds);
    assert!(v.degrees.contains(&6));
    assert_eq!(v.degrees, vec![1, 1, 3, 3, 3, 3, 3, 3, 6]);
    assert_eq!(v.offending, Some(6));
    let g = sl2_16();
    assert!(matches!(ibr_qprime(&g, 2, 17), Err(crate::Error::CapExceeded { .. })));
    let v = ibr_qprime_with(&g, 2, 17, &cited_sl2_16()).unwrap();
    assert!(v.holds);
    assert_eq!(v.provenance, Provenance::Cited);
}

#[test]
fn theorem_a_sym4() {
    let r = check_theorem_a(&sym4(), 3, 2).unwrap();
    assert_eq!((r.hypothesis, r.conclusion), (Some(true), Some(true)));
    assert_eq!(r.verdict, Verdict::Consistent);
    assert_eq!(r.provenance, Provenance::Computed);
}

#[test]
fn theorem_a_psl2_17_counterexample() {
    let g = psl2_17();
    let ctx = CheckContext::new(&g, 17, 2, cited_psl2_17()).unwrap();
    let q = ctx.sylow().unwrap().clone();
    assert_eq!(q.order(), 16);
    assert!(ctx.sylow_normalizer().unwrap().same_as(&q));
    let r = ctx.theorem_a().unwrap();
    assert!(!r.applicable);
    assert_eq!(r.condition("p_solvable"), Some(false));
    assert_eq!(r.condition("q_prime_degrees"), Some(true));
    assert_eq!(r.hypothesis, Some(false));
    assert_eq!(r.conclusion, Some(false));
    assert_eq!(r.verdict, Verdict::HypothesisFails);
    assert_eq!(r.status, "conditional on cited degrees");
    let first = r.witnesses.iter().find(|w| w.condition() == "normalizer_meets_p_regular_classes").unwrap();
    match first {
        Witness::MissedClass { representative, element_order, .. } => {
            assert_eq!(*element_order, 3);
            assert!(!q.contains(representative).unwrap());
        }
        w => panic!("unexpected witness {w:?}"),
    }
}

#[test]
fn theorem_a_sl2_16_counterexample() {
    let g = sl2_16();
    assert_eq!(g.order(), 4080);
    let ctx = CheckContext::new(&g, 2, 17, cited_sl2_16()).unwrap();
    let n = ctx.sylow_normalizer().unwrap().clone();
    assert_eq!(n.order(), 34);
    let d = derived_subgroup(&n);
    assert_eq!(d.order(), 17);
    assert!(d.is_abelian() && !n.is_abelian());
    let r = ctx.theorem_a().unwrap();
    assert_eq!(r.hypothesis, Some(false));
    assert_eq!(r.conclusion, Some(false));
    let orders: Vec<u64> = r
        .witnesses
        .iter()
        .filter_map(|w| match w {
            Witness::MissedClass { element_order, representative, .. } => {
                assert!(n.elements().unwrap().iter().all(|y| y.order() != *element_order || !n.contains(representative).unwrap()));
                Some(*element_order)
            }
            _ => None,
        })
        .collect();
    assert!(orders.contains(&15));
    assert!(n.elements().unwrap().iter().all(|y| y.order() != 15));
}

#[test]
fn manz_wolf_examples() {
    let r = check_manz_wolf(&sym4(), 3, 2).unwrap();
    assert_eq!(r.hypothesis, Some(true));
    assert_eq!(r.conclusion, Some(true));
    for c in ["q_residual_solvable", "q_factors_abelian", "sylow_metabelian", "q_length_at_most_1"] {
        assert_eq!(r.condition(c), Some(true), "{c}");
    }

    let r = check_manz_wolf(&w96(), 3, 2).unwrap();
    assert_eq!(r.conclusion, Some(true));
    assert_eq!(r.condition("q_prime_degrees"), Some(false));
    assert_eq!(r.verdict, Verdict::HypothesisFails);
    assert!(check_theorem_a(&w96(), 3, 2).unwrap().conclusion.unwrap());

    let ctx = CheckContext::new(&psl2_17(), 17, 2, cited_psl2_17()).unwrap();
    let r = ctx.manz_wolf().unwrap();
    assert_eq!(r.condition("q_residual_solvable"), Some(false));
    assert!(r.witnesses.iter().any(|w| w.condition() == "q_residual_solvable"));
}

#[test]
fn theorem_b_examples() {
    let r = check_theorem_b(&sym4(), 2, 3).unwrap();
    assert!(r.applicable);
    assert_eq!(r.left, Some(true));
    assert_eq!(r.verdict, Verdict::Consistent);

    let r = check_theorem_b(&sym4(), 3, 2).unwrap();
    assert!(!r.applicable);
    assert_eq!(r.verdict, Verdict::NotApplicable);
    assert!(r.witnesses.iter().any(|w| matches!(w, Witness::NonCommuting { .. })));

    let r = check_theorem_b(&c6(), 5, 3).unwrap();
    assert_eq!((r.left, r.right), (Some(true), Some(true)));
}

#[test]
fn characterization_sym4() {
    let r = check_characterization(&sym4(), 3, 2).unwrap();
    assert!(r.applicable);
    assert_eq!((r.left, r.right), (Some(true), Some(true)));
    assert!(r.notes.iter().any(|n| n.contains("4 kernels")));
    assert!(r.witnesses.is_empty());
}

#[test]
fn characterization_w96_fails_kernel_condition() {
    let g = w96();
    let r = check_characterization(&g, 3, 2).unwrap();
    assert_eq!((r.left, r.right), (Some(false), Some(false)));
    assert_eq!(r.verdict, Verdict::Consistent);
    assert_eq!(r.condition("4a_conjugate_derived_in_kernel"), Some(false));
    // O_2(L) = V4 x V4: itself and its 15 subgroups of index 2
    assert!(r.notes.iter().any(|n| n.contains("16 kernels")));
    // re-verify: the witness kernel has index 2 in O_2 and contains the
    // derived subgroup of no Sylow 2-subgroup
    let q = sylow_subgroup(&g, 2).unwrap();
    let kernels: Vec<&GroupSummary> = r
        .witnesses
        .iter()
        .filter_map(|w| match w {
            Witness::Kernel { kernel, conjugator: None, .. } => Some(kernel),
            _ => None,
        })
        .collect();
    assert!(!kernels.is_empty());
    for k in kernels {
        assert_eq!(k.order, 8);
        let n = g.subgroup(k.generators.clone()).unwrap();
        for t in g.elements().unwrap() {
            assert!(!derived_subgroup(&q.conjugate(t)).is_subgroup_of(&n));
        }
    }
}

#[test]
fn characterization_vacuous_case() {
    let r = check_characterization(&sym(3), 5, 7).unwrap();
    assert!(r.applicable);
    assert_eq!((r.left, r.right), (Some(true), Some(true)));
    assert_eq!(r.condition("3_o_q_abelian"), Some(true));
}

#[test]
fn characterization_not_applicable_with_nontrivial_o_p() {
    // O_2(S4) = V4
    let r = check_characterization(&sym4(), 2, 3).unwrap();
    assert!(!r.applicable);
    assert!(r.witnesses.iter().any(|w| w.condition() == "o_p_trivial"));
}

#[test]
fn primes_are_validated() {
    assert!(matches!(check_theorem_a(&sym4(), 3, 3), Err(crate::Error::EqualPrimes(3))));
    assert!(matches!(check_theorem_a(&sym4(), 4, 3), Err(crate::Error::NotPrime(4))));
    assert!(CheckKind::parse_list("all").unwrap().len() == 5);
    assert!(CheckKind::parse_list("ibr,theoremB").unwrap().len() == 2);
    assert!(CheckKind::parse_list("theoremC").is_err());
}

#[test]
fn report_json_is_stable() {
    let req = CheckRequest::new("S4", 3, 2, CheckKind::parse_list("all").unwrap()).unwrap();
    let a = run_checks(&req, &sym4(), &[]).unwrap();
    let b = run_checks(&req, &sym4(), &[]).unwrap();
    assert!(!a.has_violation());
    let strip = |r: &CheckReport| {
        let mut r = r.clone();
        r.timings.clear();
        format!("{:?}", r.checks)
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(a.checks.len(), 5);
}

#[test]
fn lemma_suite_small_corpus() {
    let corpus: Vec<(String, PermGroup)> = vec![
        ("S4".into(), sym4()),
        ("S3".into(), sym(3)),
        ("A4".into(), alt4()),
        ("D8".into(), dihedral(4)),
        ("C6".into(), c6()),
    ];
    let report = lemma_property_suite(&corpus, 1).unwrap();
    assert!(report.failures.is_empty(), "{:?}", report.failures);
    for (lemma, count) in &report.counts {
        assert!(*count > 0, "{lemma} never exercised");
    }
}

fn small_groups() -> Vec<PermGroup> {
    vec![sym4(), alt4(), w96(), sym(5), dihedral(6)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn overgroups_keep_property_dp(gi in 0usize..5, seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let g = &small_groups()[gi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = g.subgroup(vec![g.random_element(&mut rng)]).unwrap();
        let k = h.extended_by(&[g.random_element(&mut rng)]);
        if k.order() < g.order() && has_property_dp(g, &h, p).unwrap() {
            prop_assert!(has_property_dp(g, &k, p).unwrap());
        }
    }

    #[test]
    fn derangement_classes_are_closed(gi in 0usize..5, seed in any::<u64>()) {
        let g = &small_groups()[gi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = g.subgroup(vec![g.random_element(&mut rng), g.random_element(&mut rng)]).unwrap();
        let d = derangement_set(g, &h).unwrap();
        for x in &d.members {
            for s in g.generators() {
                prop_assert!(d.contains(&x.conjugate_by(s)));
            }
            prop_assert!(!h.contains(x).unwrap());
        }
    }
}
