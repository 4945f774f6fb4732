//! Randomized properties shared by the property tests and the acceptance run.

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};

use vexgeom::detideal::{self, Generators};
use vexgeom::groebner::{self, Budget, Ideal};
use vexgeom::invariants::{self, GradedWeights};
use vexgeom::poly::{divided_difference, swap_x};
use vexgeom::subword::{self, Word};
use vexgeom::{Monomial, Permutation, Poly, Var};

pub const SEED: u64 = 0x5eed_2143;

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() })
}

fn poly_in(vars: Vec<Var>, max_exp: i32) -> impl Strategy<Value = Poly> {
    let k = vars.len();
    prop::collection::vec((prop::collection::vec(0..=max_exp, k), -3i64..=3), 0..6).prop_map(move |terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_pairs(vars.iter().copied().zip(e)), BigInt::from(c))),
        )
    })
}

fn xy_poly() -> impl Strategy<Value = Poly> {
    poly_in((1..=5).map(Var::x).chain([Var::y(1), Var::y(2)]).collect(), 3)
}

fn z_poly(n: usize) -> impl Strategy<Value = Poly> {
    poly_in((1..=n).flat_map(|i| (1..=n).map(move |j| Var::z(i, j))).collect(), 2)
}

pub fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|v| Permutation::new(v).unwrap())
}

fn monomial_ideal(vars: usize, max_exp: i32, squarefree: bool) -> impl Strategy<Value = Ideal> {
    let top = if squarefree { 1 } else { max_exp };
    prop::collection::vec(prop::collection::vec(0..=top, vars), 1..7).prop_map(move |gens| {
        let ring: Vec<Var> = (1..=vars).map(|i| Var::z(1 + (i - 1) / 3, 1 + (i - 1) % 3)).collect();
        let monos = gens
            .into_iter()
            .map(|e| Monomial::from_pairs(ring.iter().copied().zip(e)))
            .filter(|m| !m.is_one())
            .collect::<Vec<_>>();
        Ideal::monomial(groebner::minimalize(monos), ring)
    })
}

pub fn divided_difference_relations(runner: &mut TestRunner) -> Result<(), String> {
    runner
        .run(&xy_poly(), |f| {
            for i in 1..=4 {
                let d = divided_difference(i, &f);
                prop_assert!(divided_difference(i, &d).is_zero());
                let lhs = &(Poly::var(Var::x(i)) - Poly::var(Var::x(i + 1))) * &d;
                prop_assert_eq!(lhs, &f - &swap_x(i, &f));
                for j in i + 2..=4 {
                    prop_assert_eq!(divided_difference(i, &divided_difference(j, &f)), divided_difference(j, &d));
                }
            }
            for i in 1..=3 {
                let a = divided_difference(i, &divided_difference(i + 1, &divided_difference(i, &f)));
                let b = divided_difference(i + 1, &divided_difference(i, &divided_difference(i + 1, &f)));
                prop_assert_eq!(a, b);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn rank_reconstruction(runner: &mut TestRunner) -> Result<(), String> {
    runner
        .run(&permutation(8), |p| {
            prop_assert_eq!(p.rank_array().reconstruct().unwrap(), p);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn containment_by_search(runner: &mut TestRunner) -> Result<(), String> {
    let word = prop::collection::vec(1usize..=4, 0..=8);
    runner
        .run(&(word, permutation(5)), |(letters, rho)| {
            let w = Word::from_letters(letters).unwrap();
            prop_assert_eq!(subword::contains(&w, &rho), subword::contains_by_search(&w, &rho));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn leading_terms_multiply(runner: &mut TestRunner) -> Result<(), String> {
    runner
        .run(&(z_poly(3), z_poly(3), 0u64..8, any::<bool>()), |(f, g, seed, graded)| {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let ord = match detideal::random_diagonal_order(3, seed) {
                vexgeom::TermOrder::Lex(v) if graded => vexgeom::TermOrder::GradedLex(v),
                o => o,
            };
            let (mf, cf) = f.leading_term(&ord).unwrap();
            let (mg, cg) = g.leading_term(&ord).unwrap();
            prop_assert_eq!((&f * &g).leading_term(&ord).unwrap(), (mf.mul(&mg), cf * cg));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn k_polynomial_routes(runner: &mut TestRunner) -> Result<(), String> {
    let w = GradedWeights::schubert();
    runner
        .run(&(1usize..=8).prop_flat_map(|v| monomial_ideal(v, 1, true)), |ideal| {
            let taylor = invariants::k_polynomial_taylor(&ideal, &w).unwrap();
            let faces = invariants::k_polynomial_faces(&ideal, &w).unwrap();
            prop_assert_eq!(&taylor, &faces);
            prop_assert_eq!(invariants::k_polynomial(&ideal, &w).unwrap(), taylor);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn hilbert_counts(runner: &mut TestRunner) -> Result<(), String> {
    runner
        .run(&(1usize..=4).prop_flat_map(|v| monomial_ideal(v, 3, false)), |ideal| {
            let vars: Vec<Var> = ideal.ring().iter().copied().collect();
            let h = invariants::hilbert_series(&ideal, vars.len()).unwrap();
            let counts = invariants::standard_monomial_counts(&ideal, &vars, 6).unwrap();
            for (d, c) in counts.iter().enumerate() {
                prop_assert_eq!(h.coefficient(d), BigInt::from(*c), "degree {}", d);
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn k_polynomial_order_independence(runner: &mut TestRunner) -> Result<(), String> {
    let vex: Vec<Permutation> = Permutation::all(4).into_iter().filter(|p| p.is_vexillary()).collect();
    let budget = Budget::default();
    runner
        .run(&(prop::sample::select(vex), 0u64..1000, 0u64..1000), |(p, a, b)| {
            let ideal = detideal::schubert_ideal(&p, Generators::Essential);
            let k = |seed| {
                let ord = detideal::random_diagonal_order(4, seed);
                let init = groebner::initial_ideal(&ideal, &ord, &budget).unwrap();
                invariants::k_polynomial(&init, &GradedWeights::schubert()).unwrap()
            };
            prop_assert_eq!(k(a), k(b));
            Ok(())
        })
        .map_err(|e| e.to_string())
}
