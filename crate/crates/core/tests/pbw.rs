mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use walgebra::exact::Rat;
use walgebra::liealg::TypeTag;
use walgebra::pbw::{
    rees_roundtrip, rees_specializations, Degree, NCPoly, ReesElement, ReesWindow, UEnv,
};
use walgebra::poly::Poly;
use walgebra::Error;

use common::*;

fn sl2_env() -> UEnv {
    let (_, s) = sl2();
    UEnv::from_setup(&s).unwrap()
}

fn sl3_env() -> UEnv {
    let g = algebra(TypeTag::A, 2);
    UEnv::new(&g, vec![0; 8]).unwrap()
}

fn gen(env: &UEnv, label: &str) -> u32 {
    env.labels().iter().position(|l| l == label).unwrap() as u32
}

/// Free-algebra rewriting that picks a random violated adjacent pair each
/// step, independent of the library's strategies.
fn random_order_normal_form(env: &UEnv, word: &[u32], rng: &mut ChaCha8Rng) -> NCPoly {
    let mut work: Vec<(Vec<u32>, Rat)> = vec![(word.to_vec(), Rat::one())];
    let mut done: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
    while !work.is_empty() {
        let k = rng.gen_range(0..work.len());
        let (w, c) = work.swap_remove(k);
        let bad: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&p| w[p] < w[p + 1]).collect();
        if bad.is_empty() {
            *done.entry(w).or_insert_with(Rat::zero) += c;
            continue;
        }
        let p = bad[rng.gen_range(0..bad.len())];
        let mut sw = w.clone();
        sw.swap(p, p + 1);
        work.push((sw, c.clone()));
        for (l, v) in env.bracket_of(w[p], w[p + 1]) {
            let mut nw = w[..p].to_vec();
            nw.push(*l);
            nw.extend_from_slice(&w[p + 2..]);
            work.push((nw, &c * v));
        }
    }
    let mut out = NCPoly::zero();
    for (w, c) in done {
        out.add_term(w, c);
    }
    out
}

#[test]
fn sl2_defining_relation() {
    let env = sl2_env();
    let (e, f, h) = (gen(&env, "e"), gen(&env, "f"), gen(&env, "h"));
    // order f < h < e, so e f is already normal
    let ef = env.normal_form(&[e, f], Rat::one()).unwrap();
    let fe = env.normal_form(&[f, e], Rat::one()).unwrap();
    assert_eq!(ef, NCPoly::monomial(vec![e, f], Rat::one()));
    assert_eq!(ef, fe.add(&NCPoly::generator(h)));
    let comm = env
        .commutator(&NCPoly::generator(e), &NCPoly::generator(f))
        .unwrap();
    assert_eq!(comm, NCPoly::generator(h));
}

#[test]
fn sl2_word_eff_against_oracle() {
    let env = sl2_env();
    let (e, f) = (gen(&env, "e"), gen(&env, "f"));
    let nf = env.normal_form(&[e, f, f], Rat::one()).unwrap();
    // trivial representation sends every generator to zero
    assert!(nf.constant_term().is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    assert_eq!(nf, random_order_normal_form(&env, &[e, f, f], &mut rng));
    let prod = env
        .multiply(
            &NCPoly::generator(e),
            &env.multiply(&NCPoly::generator(f), &NCPoly::generator(f)).unwrap(),
        )
        .unwrap();
    assert_eq!(nf, prod);
}

#[test]
fn confluence_on_random_sl3_words() {
    let env = sl3_env();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let len = rng.gen_range(0..=5);
        let w: Vec<u32> = (0..len).map(|_| rng.gen_range(0..8)).collect();
        let a = env.normal_form(&w, Rat::one()).unwrap();
        let b = random_order_normal_form(&env, &w, &mut rng);
        assert_eq!(a, b, "word {w:?}");
        let mut prod = NCPoly::one();
        for &l in &w {
            prod = env.multiply(&prod, &NCPoly::generator(l)).unwrap();
        }
        assert_eq!(a, prod, "word {w:?}");
    }
}

#[test]
fn reversal_is_lower_order() {
    let env = sl3_env();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let len = rng.gen_range(1..=5);
        let w: Vec<u32> = (0..len).map(|_| rng.gen_range(0..8)).collect();
        let mut rev = w.clone();
        rev.reverse();
        let d = env
            .normal_form(&w, Rat::one())
            .unwrap()
            .sub(&env.normal_form(&rev, Rat::one()).unwrap());
        assert!(d.standard_degree() < Degree::Finite(len as i64));
    }
}

#[test]
fn kazhdan_degrees_in_sl2() {
    let env = sl2_env();
    let (e, f, h) = (gen(&env, "e"), gen(&env, "f"), gen(&env, "h"));
    assert_eq!(env.kazhdan_degree(&NCPoly::generator(e)), Degree::Finite(4));
    assert_eq!(env.kazhdan_degree(&NCPoly::generator(h)), Degree::Finite(2));
    assert_eq!(env.kazhdan_degree(&NCPoly::generator(f)), Degree::Finite(0));
    assert_eq!(env.kazhdan_degree(&NCPoly::one()), Degree::Finite(0));
    assert_eq!(env.kazhdan_degree(&NCPoly::zero()), Degree::NegInfinity);
    let ef = env.normal_form(&[e, f], Rat::one()).unwrap();
    assert_eq!(env.kazhdan_degree(&ef), Degree::Finite(4));
}

#[test]
fn bracket_lowers_kazhdan_degree_by_two() {
    for (_, s) in [sl2(), sl3_minimal(), sl3_principal(), sp4_subregular()] {
        let env = UEnv::from_setup(&s).unwrap();
        let kd = env.kazhdan_weights().to_vec();
        for i in 0..env.dim() as u32 {
            for j in 0..env.dim() as u32 {
                let c = env
                    .commutator(&NCPoly::generator(i), &NCPoly::generator(j))
                    .unwrap();
                let bound = kd[i as usize] + kd[j as usize] - 2;
                assert!(env.kazhdan_degree(&c).le(bound));
            }
        }
    }
}

#[test]
fn context_mismatch_is_a_usage_error() {
    let env = sl2_env();
    let alien = NCPoly::generator(7);
    assert!(matches!(env.multiply(&alien, &NCPoly::one()), Err(Error::Usage(_))));
    assert!(matches!(env.normal_form(&[5], Rat::one()), Err(Error::Usage(_))));
}

#[test]
fn text_form_roundtrip() {
    let env = sl2_env();
    let omega = env.parse("e f + f e + 1/2 h^2").unwrap();
    assert_eq!(env.format(&omega), "2*e f + 1/2*h^2 - h");
    assert_eq!(env.parse(&env.format(&omega)).unwrap(), omega);
    assert!(matches!(env.parse("e + q"), Err(Error::Parse { .. })));
}

#[test]
fn symmetrized_invariant_is_central() {
    let env = sl2_env();
    // 2 x_f x_e + x_h^2 / 2 is the trace form invariant in frame coordinates
    let mut q = Poly::zero(3);
    q.add_term(vec![1, 0, 1], Rat::from(2));
    q.add_term(vec![0, 2, 0], Rat::new(1, 2));
    let omega = env.symmetrize(&q).unwrap();
    assert_eq!(omega, env.parse("e f + f e + 1/2 h^2").unwrap());
    for i in 0..3 {
        let c = env.commutator(&NCPoly::generator(i), &omega).unwrap();
        assert!(c.is_zero());
    }
}

fn casimir(env: &UEnv) -> NCPoly {
    env.parse("e f + f e + 1/2 h^2").unwrap()
}

#[test]
fn rees_roundtrip_for_the_casimir_ideal() {
    let env = sl2_env();
    let w = ReesWindow { kazhdan: 8, standard: 4 };
    let rep = rees_roundtrip(&env, &[(casimir(&env), 4)], w).unwrap();
    assert!(rep.saturated && rep.roundtrip && rep.gr_matches, "{rep:?}");
    assert!(rep.at_one_dim > 0);
    let top = rep.rows.last().unwrap();
    assert_eq!(top.degree, 8);
}

#[test]
fn rees_trivial_ideals() {
    let env = sl2_env();
    let w = ReesWindow { kazhdan: 6, standard: 3 };
    let zero = rees_roundtrip(&env, &[], w).unwrap();
    assert!(zero.passed());
    assert!(zero.rows.iter().all(|r| r.intersected == 0));
    let unit = rees_roundtrip(&env, &[(NCPoly::one(), 0)], w).unwrap();
    assert!(unit.passed());
    let specialized = rees_specializations(&env, w).unwrap();
    for (row, s) in unit.rows.iter().zip(&specialized) {
        assert_eq!(row.intersected, s.filtered_count);
    }
}

#[test]
fn rees_level_violation() {
    let env = sl2_env();
    let w = ReesWindow { kazhdan: 6, standard: 3 };
    let r = rees_roundtrip(&env, &[(casimir(&env), 3)], w);
    assert!(matches!(r, Err(Error::Domain(_))));
    assert!(matches!(ReesElement::lift(&env, &casimir(&env), 2), Err(Error::Domain(_))));
}

#[test]
fn rees_specializations_match_counts() {
    let env = sl2_env();
    let rows = rees_specializations(&env, ReesWindow { kazhdan: 8, standard: 4 }).unwrap();
    for r in rows {
        assert_eq!(r.at_one, r.filtered_count, "degree {}", r.degree);
        assert_eq!(r.at_zero, r.graded_count, "degree {}", r.degree);
    }
}

#[test]
fn rees_element_specializations() {
    let env = sl2_env();
    let om = casimir(&env);
    let lifted = ReesElement::lift(&env, &om, 4).unwrap();
    assert!(lifted.check(&env));
    assert_eq!(lifted.at_one(), om);
    assert_eq!(lifted.at_zero(&env), env.kazhdan_symbol(&om));
    // a lift above the degree has zero class at hbar = 0
    let high = ReesElement::lift(&env, &om, 6).unwrap();
    assert!(high.at_zero(&env).is_zero());
}

fn arb_poly(dim: u32, max_len: usize) -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..dim, 0..=max_len), -3i64..=3), 1..4)
}

fn build(env: &UEnv, terms: &[(Vec<u32>, i64)]) -> NCPoly {
    let words: Vec<(Vec<u32>, Rat)> = terms.iter().map(|(w, c)| (w.clone(), Rat::from(*c))).collect();
    env.normal_form_words(&words).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_is_associative(a in arb_poly(8, 3), b in arb_poly(8, 3), c in arb_poly(8, 3)) {
        let env = sl3_env();
        let (a, b, c) = (build(&env, &a), build(&env, &b), build(&env, &c));
        let left = env.multiply(&env.multiply(&a, &b).unwrap(), &c).unwrap();
        let right = env.multiply(&a, &env.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn unit_and_degree_bound(a in arb_poly(8, 3), b in arb_poly(8, 3)) {
        let (_, s) = sl3_minimal();
        let env = UEnv::from_setup(&s).unwrap();
        let (a, b) = (build(&env, &a), build(&env, &b));
        prop_assert_eq!(env.multiply(&NCPoly::one(), &b).unwrap(), b.clone());
        let ab = env.multiply(&a, &b).unwrap();
        prop_assert!(env.kazhdan_degree(&ab) <= env.kazhdan_degree(&a) + env.kazhdan_degree(&b));
    }

    #[test]
    fn top_symbol_of_product(a in arb_poly(8, 3), b in arb_poly(8, 3)) {
        let (_, s) = sl3_principal();
        let env = UEnv::from_setup(&s).unwrap();
        let (a, b) = (build(&env, &a), build(&env, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ab = env.multiply(&a, &b).unwrap();
        let expected = &env.kazhdan_symbol(&a) * &env.kazhdan_symbol(&b);
        prop_assert_eq!(env.kazhdan_symbol(&ab), expected);
    }
}
