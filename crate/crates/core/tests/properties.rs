mod common;

use common::{fixtures, support};
use hyperdiag::autgrp::symmetry_group;
use hyperdiag::harness::{brute_force_cost, brute_force_group, delta_supports, DEFAULT_NODE_CAP};
use hyperdiag::{CycloNum, DiagAut, HomogPoly, Monomial};
use num_rational::BigRational;
use proptest::prelude::*;

const LEVELS: &[u64] = &[1, 3, 4, 5, 6, 8, 12];

fn cyclo() -> impl Strategy<Value = CycloNum> {
    (prop::sample::select(LEVELS), prop::collection::vec((-5i64..=5, 1i64..=3), 1..6)).prop_map(|(n, cs)| {
        let coeffs = cs.into_iter().map(|(a, b)| BigRational::new(a.into(), b.into())).collect();
        CycloNum::from_powers(n, coeffs).unwrap()
    })
}

fn nonzero_cyclo() -> impl Strategy<Value = CycloNum> {
    cyclo().prop_filter("nonzero", |x| !x.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &CycloNum::zero(), a.clone());
        prop_assert_eq!(&a * &CycloNum::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn text_form_round_trips(a in cyclo()) {
        let back: CycloNum = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

fn euler_holds(f: &HomogPoly) -> bool {
    let mut acc = HomogPoly::zero(f.num_vars(), f.degree());
    for i in 0..f.num_vars() {
        let term = f.partial(i).mul_var(i);
        if !term.is_zero() {
            acc = acc.add(&term).unwrap();
        }
    }
    acc == f.scale(&CycloNum::from_int(f.degree() as i64))
}

#[test]
fn euler_relation_on_fixtures() {
    for f in fixtures() {
        assert!(euler_holds(&f), "{f}");
    }
}

fn scalars(k: usize) -> impl Strategy<Value = Vec<CycloNum>> {
    prop::collection::vec(nonzero_cyclo(), k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn apply_diagonal_is_multiplicative(
        idx in 0..common::FIXTURES.len(),
        seed in scalars(6),
        seed2 in scalars(6),
    ) {
        let f = &fixtures()[idx];
        let k = f.num_vars();
        let (l, m) = (&seed[..k], &seed2[..k]);
        let lm: Vec<CycloNum> = l.iter().zip(m).map(|(a, b)| a * b).collect();
        let lhs = f.apply_diagonal(&lm).unwrap();
        let rhs = f.apply_diagonal(m).unwrap().apply_diagonal(l).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn order_in_pgl_ignores_scalars_and_permutations(
        level in 1u64..40,
        exps in prop::collection::vec(0u64..1000, 2..6),
        shift in 0u64..1000,
        perm_seed in any::<u64>(),
    ) {
        let exps: Vec<u64> = exps.into_iter().map(|e| e % level).collect();
        let g = DiagAut::new(level, exps.clone()).unwrap();
        prop_assert_eq!(g.shifted(shift % level).order_in_pgl(), g.order_in_pgl());
        let mut perm: Vec<usize> = (0..exps.len()).collect();
        let mut s = perm_seed;
        for i in (1..perm.len()).rev() {
            perm.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        prop_assert_eq!(g.permute(&perm).order_in_pgl(), g.order_in_pgl());
        prop_assert!(g.pow(g.order_in_pgl()).is_scalar());
    }

    #[test]
    fn random_square_supports_match_brute_force(
        d in 3u32..6,
        raw in prop::collection::vec(prop::collection::vec(0u32..6, 4), 4),
    ) {
        let k = 4;
        let supp: Vec<Monomial> = raw
            .into_iter()
            .map(|w| {
                let mut e = vec![0u32; k];
                let mut left = d;
                for (i, &x) in w.iter().enumerate().take(k - 1) {
                    let take = x.min(left);
                    e[i] = take;
                    left -= take;
                }
                e[k - 1] = left;
                Monomial(e)
            })
            .collect();
        let distinct: std::collections::BTreeSet<_> = supp.iter().cloned().collect();
        prop_assume!(distinct.len() == k);
        let cost = match brute_force_cost(&supp) {
            Ok((_, c)) => c,
            Err(_) => return Ok(()),
        };
        prop_assume!(cost <= 1_000_000);
        let snf = symmetry_group(&supp).unwrap();
        let bf = brute_force_group(&supp, DEFAULT_NODE_CAP).unwrap();
        prop_assert_eq!(bf.len() as u128, snf.order());
    }
}

#[test]
fn snf_matches_brute_force_on_delta_supports() {
    let mut compared = 0;
    for n in 0..=3usize {
        for d in 3..=6u32 {
            for s in delta_supports(n, d).unwrap() {
                let m = s.monomials();
                let Ok((_, cost)) = brute_force_cost(&m) else {
                    assert!(symmetry_group(&m).is_err(), "{}", s.id());
                    continue;
                };
                if cost > 1_000_000 {
                    continue;
                }
                let snf = symmetry_group(&m).unwrap();
                let bf = brute_force_group(&m, DEFAULT_NODE_CAP).unwrap();
                assert_eq!(bf.len() as u128, snf.order(), "{} d={d}", s.id());
                let listed: std::collections::BTreeSet<_> = snf.elements(u128::MAX).unwrap().collect();
                let brute: std::collections::BTreeSet<_> = bf.iter().map(DiagAut::pgl_canonical).collect();
                assert_eq!(listed, brute, "{} d={d}", s.id());
                compared += 1;
            }
        }
    }
    assert!(compared > 100);
}

#[test]
fn klein_and_chain_groups() {
    let g = symmetry_group(&support("X0^3*X1 + X1^3*X2 + X2^3*X0")).unwrap();
    assert_eq!(g.invariant_factors, vec![7]);
    let g = symmetry_group(&support("X0^3*X1 + X1^3*X2 + X2^4")).unwrap();
    assert_eq!(g.invariant_factors, vec![9]);
    let gen: DiagAut = "diag(z9, z9^6, 1)".parse().unwrap();
    assert!(g.elements(100).unwrap().any(|x| x.same_in_pgl(&gen)));
}
