use std::collections::HashSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::ffalg::{make_field, FieldCtx, FieldMatrix};
use crate::grpstruct::{o_radical, q_residual, is_p_solvable, quotient_group};
use crate::numbers::{p_part, PrimeSet};
use crate::permcore::PermGroup;
use crate::testutil::*;

fn sorted_dims(fs: &[GModule]) -> Vec<usize> {
    let mut d: Vec<usize> = fs.iter().map(|m| m.dim()).collect();
    d.sort();
    d
}

fn apply_vals(m: &GModule, j: usize, v: &[u32]) -> Vec<u32> {
    m.action()[j].vec_mul(v).unwrap()
}

/// Submodule generated by `v`, as an explicit vector set closed under
/// addition, scalars and the generators.
fn closure_size(m: &GModule, v: &[u32]) -> usize {
    let f = m.field();
    let mut set: HashSet<Vec<u32>> = HashSet::new();
    set.insert(vec![0; m.dim()]);
    let mut frontier = vec![v.to_vec()];
    while let Some(x) = frontier.pop() {
        if set.contains(&x) {
            continue;
        }
        let existing: Vec<Vec<u32>> = set.iter().cloned().collect();
        for y in existing {
            for c in 1..f.order() {
                let z: Vec<u32> = x.iter().zip(&y).map(|(&a, &b)| f.add(f.mul(c, a), b)).collect();
                if !set.contains(&z) {
                    frontier.push(z);
                }
            }
        }
        set.insert(x.clone());
        for j in 0..m.num_generators() {
            frontier.push(apply_vals(m, j, &x));
        }
    }
    set.len()
}

/// Irreducible iff every nonzero vector generates everything.
fn brute_irreducible(m: &GModule) -> bool {
    let q = m.field().order() as u64;
    let total = q.pow(m.dim() as u32) as usize;
    (1..total).all(|code| {
        let mut c = code;
        let v: Vec<u32> = (0..m.dim())
            .map(|_| {
                let d = (c % q as usize) as u32;
                c /= q as usize;
                d
            })
            .collect();
        closure_size(m, &v) == total
    })
}

/// Commutant dimension from the `d^2`-unknown system `Z X = X Z`.
fn brute_endo(m: &GModule) -> usize {
    let f = m.field();
    let d = m.dim();
    let mut rows = Vec::new();
    for x in m.action() {
        for i in 0..d {
            for k in 0..d {
                // (ZX - XZ)[i,k] = Σ_l Z[i,l] X[l,k] - X[i,l] Z[l,k]
                let mut eq = vec![0u32; d * d];
                for l in 0..d {
                    eq[i * d + l] = f.add(eq[i * d + l], x.get(l, k));
                    eq[l * d + k] = f.sub(eq[l * d + k], x.get(i, l));
                }
                rows.push(eq);
            }
        }
    }
    if rows.is_empty() {
        return d * d;
    }
    FieldMatrix::from_rows(f, &rows).unwrap().nullity()
}

fn c2() -> PermGroup {
    cyclic(2)
}

#[test]
fn regular_module_dimensions() {
    assert_eq!(regular_module(&cyclic(3), 2, 1500).unwrap().dim(), 3);
    let t = regular_module(&PermGroup::trivial(3), 5, 1500).unwrap();
    assert_eq!((t.dim(), t.num_generators()), (1, 0));
    let m = regular_module(&sym4(), 3, 1500).unwrap();
    assert_eq!(m.dim(), 24);
    assert_eq!(m.field().characteristic(), 3);
    assert!(matches!(regular_module(&psl2_17(), 2, 1500), Err(Error::CapExceeded { .. })));
}

#[test]
fn regular_module_is_a_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = sym4();
    let m = regular_module(&g, 3, 1500).unwrap();
    assert!(check_homomorphism(&g, &m, 50, &mut rng).unwrap());
    // swapping the two generator actions breaks the relations
    let bad = GModule::new(m.field(), 24, vec![m.action()[1].clone(), m.action()[0].clone()]).unwrap();
    assert!(!check_homomorphism(&g, &bad, 50, &mut rng).unwrap());
}

#[test]
fn module_rejects_singular_action() {
    let f = make_field(3, 1).unwrap();
    assert!(GModule::new(&f, 2, vec![FieldMatrix::zero(&f, 2, 2)]).is_err());
    assert!(GModule::new(&f, 3, vec![FieldMatrix::identity(&f, 2)]).is_err());
}

#[test]
fn spin_examples() {
    let m = regular_module(&sym4(), 3, 1500).unwrap();
    let ones = vec![vec![1u32; 24]];
    assert_eq!(spin_up(&m, &ones).unwrap().rows(), 1);
    assert_eq!(spin_up(&m, &[vec![0; 24]]).unwrap().rows(), 0);
    let mut e = vec![0u32; 24];
    e[5] = 1;
    assert_eq!(spin_up(&m, &[e]).unwrap().rows(), 24);
    assert!(spin_up(&m, &[vec![1; 3]]).is_err());
}

#[test]
fn spin_result_is_invariant_and_reduced() {
    let m = regular_module(&alt4(), 2, 1500).unwrap();
    let mut v = vec![0u32; 12];
    v[0] = 1;
    v[3] = 1;
    let b = spin_up(&m, &[v]).unwrap();
    assert_eq!(b.rref().0, b);
    for x in m.action() {
        let img = b.mul(x).unwrap();
        let stacked = FieldMatrix::from_rows(m.field(), &[b.to_rows(), img.to_rows()].concat()).unwrap();
        assert_eq!(stacked.rank(), b.rows());
    }
}

#[test]
fn chop_c3_over_gf2() {
    let m = regular_module(&cyclic(3), 2, 1500).unwrap();
    let fs = chop(&m, 0).unwrap();
    assert_eq!(sorted_dims(&fs), vec![1, 2]);
    // idempotent e = 1 + g + g^2 splits GF(2)C3 into ranks 1 and 2
    let g = &m.action()[0];
    let e = FieldMatrix::identity(m.field(), 3).add(g).unwrap().add(&g.mul(g).unwrap()).unwrap();
    assert_eq!(e.mul(&e).unwrap(), e);
    assert_eq!(e.rank(), 1);
    assert_eq!(FieldMatrix::identity(m.field(), 3).sub(&e).unwrap().rank(), 2);
    for s in &fs {
        assert!(brute_irreducible(s));
    }
}

#[test]
fn chop_c2_over_gf2_is_uniserial() {
    let m = regular_module(&c2(), 2, 1500).unwrap();
    let fs = chop(&m, 0).unwrap();
    assert_eq!(sorted_dims(&fs), vec![1, 1]);
    assert!(fs.iter().all(|s| s.action()[0].is_identity()));
}

#[test]
fn chop_sym4_over_gf3() {
    let g = sym4();
    let distinct = distinct_constituents(&g, 3, 0, 1500).unwrap();
    let dims: Vec<usize> = distinct.iter().map(|(s, _)| s.dim()).collect();
    assert_eq!(dims, vec![1, 1, 3, 3]);
    assert_eq!(g.p_regular_classes(3).unwrap().len(), 4);
    for (s, _) in &distinct {
        assert!(brute_irreducible(s));
    }
    // composition factors account for the whole module
    let total: usize = distinct.iter().map(|(s, k)| s.dim() * k).sum();
    assert_eq!(total, 24);
}

#[test]
fn chop_factors_are_irreducible_and_sum_to_dim() {
    for (g, p) in [(alt4(), 3u64), (dihedral(4), 2), (w96(), 3), (sym(3), 2)] {
        let m = regular_module(&g, p, 1500).unwrap();
        let fs = chop(&m, 5).unwrap();
        assert_eq!(fs.iter().map(|s| s.dim()).sum::<usize>(), m.dim());
        for s in fs.iter().filter(|s| s.dim() <= 3) {
            assert!(brute_irreducible(s));
        }
    }
}

#[test]
fn chop_is_deterministic() {
    let m = regular_module(&alt4(), 2, 1500).unwrap();
    let a: Vec<_> = chop(&m, 9).unwrap().iter().map(|s| s.action().to_vec()).collect();
    let b: Vec<_> = chop(&m, 9).unwrap().iter().map(|s| s.action().to_vec()).collect();
    assert_eq!(a, b);
}

#[test]
fn chop_reports_iteration_limit() {
    let m = regular_module(&sym4(), 3, 1500).unwrap();
    let cfg = ChopConfig { retries: 0, ..ChopConfig::default() };
    assert!(matches!(chop_with(&m, 0, &cfg), Err(Error::IterationLimit { attempts: 0 })));
}

#[test]
fn endo_degrees() {
    let m = regular_module(&cyclic(3), 2, 1500).unwrap();
    for s in chop(&m, 0).unwrap() {
        let e = endo_degree(&s).unwrap();
        assert_eq!(e, s.dim());
        assert_eq!(e, brute_endo(&s));
    }
    assert!(matches!(endo_degree(&m), Err(Error::NotIrreducible)));
}

#[test]
fn endo_degree_matches_commutant_solve() {
    for (g, p) in [(sym4(), 3u64), (alt4(), 2), (cyclic(7), 2), (cyclic(5), 3), (g1053(), 13)] {
        for (s, _) in distinct_constituents(&g, p, 2, 1500).unwrap() {
            assert_eq!(endo_degree(&s).unwrap(), brute_endo(&s), "{g:?} p={p} dim {}", s.dim());
        }
    }
}

#[test]
fn isomorphism_tests() {
    let distinct = distinct_constituents(&sym4(), 3, 0, 1500).unwrap();
    for (i, (a, _)) in distinct.iter().enumerate() {
        assert!(module_isomorphic(a, a).unwrap());
        for (b, _) in &distinct[i + 1..] {
            assert!(!module_isomorphic(a, b).unwrap());
        }
    }
    // a change of basis gives an isomorphic module
    let (s, _) = &distinct[2];
    let f = s.field();
    let p = FieldMatrix::from_rows(f, &[vec![1, 1, 0], vec![0, 1, 2], vec![0, 0, 2]]).unwrap();
    let pinv = p.inverse().unwrap();
    let conj = GModule::new(f, 3, s.action().iter().map(|x| pinv.mul(x).unwrap().mul(&p).unwrap()).collect()).unwrap();
    assert!(module_isomorphic(s, &conj).unwrap());
    let reducible = regular_module(&sym4(), 3, 1500).unwrap();
    assert!(matches!(module_isomorphic(&reducible, &reducible), Err(Error::NotIrreducible)));
}

#[test]
fn ibr_examples() {
    assert_eq!(ibr_degrees(&sym4(), 3, 0).unwrap().degrees, vec![1, 1, 3, 3]);
    assert_eq!(ibr_degrees(&sym4(), 2, 0).unwrap().degrees, vec![1, 2]);
    assert_eq!(ibr_degrees(&cyclic(3), 2, 0).unwrap().degrees, vec![1, 1, 1]);
    let prof = ibr_degrees(&cyclic(3), 2, 0).unwrap();
    assert_eq!(prof.constituents.iter().map(|c| c.endo_degree).collect::<Vec<_>>(), vec![1, 2]);
    assert!(matches!(ibr_degrees(&psl2_17(), 2, 0), Err(Error::CapExceeded { .. })));
}

#[test]
fn large_endomorphism_field() {
    // 3 has order 16 mod 17: GF(3)C17 = GF(3) + GF(3^16).
    let prof = ibr_degrees(&cyclic(17), 3, 0).unwrap();
    assert_eq!(prof.degrees, vec![1; 17]);
    assert_eq!(prof.constituents.iter().map(|c| (c.dim, c.endo_degree)).collect::<Vec<_>>(), vec![(1, 1), (16, 16)]);
}

#[test]
fn sym4_mod_2_simples_come_from_sym3() {
    let g = sym4();
    let distinct = distinct_constituents(&g, 2, 0, 1500).unwrap();
    let v4 = o_radical(&g, &PrimeSet::single(2)).unwrap();
    let tree = WordTree::new(&g).unwrap();
    for (s, _) in &distinct {
        for x in v4.generators() {
            assert!(tree.element_matrix(s, x).unwrap().is_identity());
        }
        assert!(brute_irreducible(s));
    }
    let (s3, _) = quotient_group(&g, &v4).unwrap();
    assert_eq!(s3.p_regular_classes(2).unwrap().len(), distinct.len());
}

#[test]
fn g1053_degrees_are_1_and_13() {
    let g = g1053();
    let prof = ibr_degrees(&g, 13, 0).unwrap();
    assert_eq!(prof.degree_set(), vec![1, 13]);
    assert_eq!(prof.degrees, [vec![1; 3], vec![13; 6]].concat());
    assert_eq!(prof.class_count, 9);
    let total: usize = prof.constituents.iter().map(|c| c.dim * c.composition_multiplicity).sum();
    assert_eq!(total, 1053);
}

fn invariant_groups() -> Vec<(PermGroup, Vec<u64>)> {
    vec![
        (sym4(), vec![2, 3, 5]),
        (alt4(), vec![2, 3, 5]),
        (dihedral(4), vec![2, 3]),
        (sym(3), vec![2, 3]),
        (cyclic(6), vec![2, 3, 5]),
        (w96(), vec![2, 3]),
        (sym(5), vec![2, 3, 5]),
    ]
}

#[test]
fn count_identity_and_ordinary_case() {
    for (g, ps) in invariant_groups() {
        for p in ps {
            let prof = ibr_degrees(&g, p, 0).unwrap();
            assert_eq!(prof.degrees.len(), g.p_regular_classes(p).unwrap().len());
            for c in &prof.constituents {
                assert_eq!(c.brauer_degree * c.endo_degree, c.dim);
            }
            if g.order() % p as u128 != 0 {
                let sum: u128 = prof.degrees.iter().map(|&d| (d * d) as u128).sum();
                assert_eq!(sum, g.order());
            }
        }
    }
}

#[test]
fn o_p_acts_trivially_on_constituents() {
    for (g, ps) in invariant_groups() {
        let tree = WordTree::new(&g).unwrap();
        for p in ps {
            let op = o_radical(&g, &PrimeSet::single(p)).unwrap();
            for (s, _) in distinct_constituents(&g, p, 0, 1500).unwrap() {
                for x in op.generators() {
                    assert!(tree.element_matrix(&s, x).unwrap().is_identity());
                }
            }
        }
    }
}

#[test]
fn q_part_of_degrees_agrees_with_residual() {
    let max_q_part = |prof: &IBrProfile, q: u64| prof.degrees.iter().map(|&d| p_part(d as u128, q)).max().unwrap();
    let mut checked = 0;
    for (g, ps) in invariant_groups() {
        for &p in &ps {
            for &q in &ps {
                if p == q || g.order() % q as u128 != 0 {
                    continue;
                }
                let l = q_residual(&g, q).unwrap();
                let (top, _) = quotient_group(&g, &l).unwrap();
                if !is_p_solvable(&top, p).unwrap() {
                    continue;
                }
                let a = max_q_part(&ibr_degrees(&g, p, 0).unwrap(), q);
                let b = max_q_part(&ibr_degrees(&l, p, 0).unwrap(), q);
                assert_eq!(a > 1, b > 1, "{g:?} p={p} q={q}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 10);
}

fn field_for(p: u64) -> FieldCtx {
    make_field(p, 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn profiles_do_not_depend_on_seed(seed_a in any::<u64>(), seed_b in any::<u64>(), which in 0usize..6) {
        let (g, p) = [(sym4(), 3u64), (alt4(), 2), (w96(), 3), (sym(5), 2), (dihedral(6), 3), (sym(5), 7)][which].clone();
        prop_assert_eq!(ibr_degrees(&g, p, seed_a).unwrap(), ibr_degrees(&g, p, seed_b).unwrap());
    }

    #[test]
    fn chop_seeds_agree_on_factor_dims(seed in any::<u64>()) {
        let f = field_for(3);
        let g = alt4();
        let m = regular_module(&g, 3, 1500).unwrap();
        let fs = chop(&m, seed).unwrap();
        prop_assert_eq!(fs.iter().map(|s| s.dim()).sum::<usize>(), 12);
        prop_assert!(fs.iter().all(|s| s.field() == &f));
        prop_assert_eq!(sorted_dims(&fs), sorted_dims(&chop(&m, 0).unwrap()));
    }
}
