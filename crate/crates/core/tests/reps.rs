mod common;

use std::collections::BTreeMap;

use common::*;
use proptest::prelude::*;
use walgebra::exact::{kernel, rat, EchelonSpace, Rat, SparseMat};
use walgebra::ideals::{gr_of_nc_ideal, slice_restrict};
use walgebra::liealg::{Matrix, NilpotentSetup};
use walgebra::pbw::{word_degree, NCPoly, UEnv};
use walgebra::poly::Poly;
use walgebra::report::CheckStatus;
use walgebra::reps::*;
use walgebra::starprod::QuantumComoment;
use walgebra::walg::{c_words, QuotientElem, WAlgebra, WPresentation, WordIndex};

fn build(s: &NilpotentSetup, n: i64) -> (WAlgebra, WPresentation) {
    let w = WAlgebra::build(s, n).unwrap();
    let p = w.presentation().unwrap();
    (w, p)
}

fn scalar_module(values: &[Rat]) -> FinModule {
    FinModule { dim: 1, matrices: values.iter().map(|v| vec![vec![v.clone()]]).collect() }
}

/// Commutative value of an ordered polynomial at a point.
fn eval_commutative(p: &NCPoly, point: &[Rat]) -> Rat {
    let mut out = Rat::zero();
    for (w, c) in p.terms() {
        let mut t = c.clone();
        for &l in w {
            t = &t * &point[l as usize];
        }
        out += &t;
    }
    out
}

fn point_of(ch: &Character, names: &[String]) -> Vec<Rat> {
    names.iter().map(|n| ch.values[n].clone()).collect()
}

/// Counts monomials in generators of the given degrees with total degree
/// at most `k`, by enumeration.
fn monomials_up_to(degrees: &[i64], k: i64) -> usize {
    match degrees.split_first() {
        None => usize::from(k >= 0),
        Some((&d, rest)) => (0..=k / d).map(|a| monomials_up_to(rest, k - a * d)).sum(),
    }
}

#[test]
fn sl2_characters_form_a_line() {
    let (_, s) = sl2();
    let (_, p) = build(&s, 8);
    let r = find_characters(&p).unwrap();
    assert_eq!(r.status, CheckStatus::Pass);
    assert_eq!(r.verified_through, 8);
    assert_eq!(r.relations, 0);
    let fam = r.family.unwrap();
    assert_eq!((fam.dimension, fam.free.clone()), (1, vec!["G1".to_string()]));
    assert!(fam.equations.is_empty());
    // a polynomial algebra in one variable: every scalar is a character
    for c in [rat(-2, 1), rat(1, 3), rat(5, 1)] {
        assert!(verify_module(&p, &scalar_module(&[c])).unwrap().passed());
    }
}

#[test]
fn sl3_principal_characters_form_a_plane() {
    let (_, s) = sl3_principal();
    let (w, p) = build(&s, 8);
    let gens = w.generators();
    assert!(w.commutator(&gens[0].0, &gens[1].0).is_zero());
    let r = find_characters(&p).unwrap();
    assert_eq!(r.status, CheckStatus::Pass);
    let fam = r.family.unwrap();
    assert_eq!(fam.dimension, 2);
    assert_eq!(fam.free, vec!["G1".to_string(), "G2".to_string()]);
}

#[test]
fn sl3_minimal_characters_satisfy_every_relation() {
    let (_, s) = sl3_minimal();
    let (_, p) = build(&s, 8);
    let r = find_characters(&p).unwrap();
    assert_eq!(r.status, CheckStatus::Pass);
    assert!(!r.characters.is_empty());
    for ch in &r.characters {
        let pt = point_of(ch, &r.generators);
        for (_, rel) in p.relations() {
            assert!(eval_commutative(rel, &pt).is_zero());
        }
        let m = FinModule::from_character(ch, &r.generators).unwrap();
        assert!(verify_module(&p, &m).unwrap().passed());
    }
    let fam = r.family.unwrap();
    assert_eq!(fam.dimension, 1);
    assert_eq!(fam.free, vec!["G4".to_string()]);
    // the line G1 = G4/2, G2 = G3 = 0 and nothing off it
    for t in [rat(3, 1), rat(-2, 5)] {
        let on = [&t / &Rat::from(2), Rat::zero(), Rat::zero(), t.clone()];
        assert!(p.relations().iter().all(|(_, rel)| eval_commutative(rel, &on).is_zero()));
        let off = [t.clone(), Rat::zero(), Rat::zero(), t.clone()];
        assert!(p.relations().iter().any(|(_, rel)| !eval_commutative(rel, &off).is_zero()));
    }
}

#[test]
fn truncation_without_all_brackets_is_inconclusive() {
    let (_, s) = sl3_principal();
    // the bracket of the degree 4 and 6 generators has degree 8
    let (_, p) = build(&s, 7);
    assert_eq!(p.omitted_pairs, vec![(0, 1)]);
    let r = find_characters(&p).unwrap();
    assert_eq!(r.status, CheckStatus::Inconclusive);
    assert!(verify_module(&p, &scalar_module(&[Rat::one(), Rat::one()])).unwrap().status == CheckStatus::Inconclusive);
}

#[test]
fn extra_relations_cut_out_points() {
    let (_, s) = sl2();
    let (_, p) = build(&s, 8);
    // G1^2 - 2 has no rational root
    let mut q = NCPoly::monomial(vec![0, 0], Rat::one());
    q.add_term(Vec::new(), rat(-2, 1));
    let r = find_characters_with(&p, &[q]).unwrap();
    assert!(r.characters.is_empty());
    assert_eq!(r.eliminants.len(), 1);
    assert_eq!(r.eliminants[0].polynomial, "G1^2 - 2");
    assert_eq!(r.status, CheckStatus::Pass);
    let r = find_characters_with(&p, &[NCPoly::generator(0), NCPoly::one()]).unwrap();
    assert_eq!(r.status, CheckStatus::Fail);
    assert!(find_characters_with(&p, &[NCPoly::generator(3)]).is_err());
}

#[test]
fn nilpotent_matrix_is_an_sl2_module() {
    let (_, s) = sl2();
    let (_, p) = build(&s, 8);
    let m = FinModule { dim: 2, matrices: vec![vec![vec![rat(0, 1), rat(1, 1)], vec![rat(0, 1), rat(0, 1)]]] };
    assert!(verify_module(&p, &m).unwrap().passed());
    let bad = FinModule { dim: 2, matrices: vec![vec![vec![Rat::one()]]] };
    assert!(verify_module(&p, &bad).is_err());
}

#[test]
fn random_matrices_are_not_modules() {
    let (_, s) = sl3_minimal();
    let (_, p) = build(&s, 8);
    let entries = [[1, 2, -1, 0], [0, 3, 1, 1], [2, -1, 0, 1], [1, 1, 1, -2]];
    let matrices: Vec<Matrix> = entries
        .iter()
        .map(|e| vec![vec![Rat::from(e[0]), Rat::from(e[1])], vec![Rat::from(e[2]), Rat::from(e[3])]])
        .collect();
    let r = verify_module(&p, &FinModule { dim: 2, matrices }).unwrap();
    assert_eq!(r.status, CheckStatus::Fail);
    assert!(r.detail.unwrap().starts_with("relation [G1,G2]"));
}

/// `F_k (Q / Q (z - c))` and the kernel of `m'` on it, for a central
/// Whittaker vector `z`, computed directly on representatives.
fn central_quotient_oracle(w: &WAlgebra, z: &QuotientElem, c: &Rat, d: i64) -> Vec<(usize, usize)> {
    let q = w.quotient();
    let kd = q.env().kazhdan_weights().to_vec();
    let zd = q.kazhdan_degree(z).finite().unwrap();
    let words = c_words(q, d);
    let index = WordIndex::new(words.clone());
    let shifted = z.sub(&QuotientElem::one().scale(c));
    let elem = |w: &Vec<u32>| q.from_rep(NCPoly::monomial(w.clone(), Rat::one())).unwrap();
    let mut out = Vec::new();
    for k in 0..=d {
        let cols: Vec<usize> = (0..words.len()).filter(|&i| word_degree(&words[i], &kd) <= k).collect();
        let mut rel = EchelonSpace::new();
        for &i in &cols {
            if word_degree(&words[i], &kd) + zd <= k {
                rel.insert(&index.coords(&q.product(&elem(&words[i]), &shifted)).unwrap());
            }
        }
        let dim = cols.len() - rel.dim();
        // x in F_k with (f - 1) x in the relations, modulo the relations
        let n = words.len();
        let rel_rows: Vec<Vec<(usize, Rat)>> = (0..words.len())
            .filter(|&i| word_degree(&words[i], &kd) + zd <= k)
            .map(|i| index.coords(&q.product(&elem(&words[i]), &shifted)).unwrap())
            .collect();
        // unknowns: coefficients on cols, then on the relation rows
        let mut a = SparseMat::zeros(n, cols.len() + rel_rows.len());
        for (j, &i) in cols.iter().enumerate() {
            for (r, x) in index.coords(&q.ad_m(0, &elem(&words[i])).unwrap()).unwrap() {
                a.set(r, j, x);
            }
        }
        for (j, row) in rel_rows.iter().enumerate() {
            for (r, x) in row {
                a.set(*r, cols.len() + j, -x);
            }
        }
        let ker = kernel(&a);
        let mut span = EchelonSpace::new();
        for v in &rel_rows {
            span.insert(v);
        }
        let base = span.dim();
        for v in ker {
            let x: Vec<(usize, Rat)> =
                cols.iter().zip(&v).filter(|(_, c)| !c.is_zero()).map(|(&i, c)| (i, c.clone())).collect();
            span.insert(&x);
        }
        out.push((dim, span.dim() - base));
    }
    out
}

#[test]
fn sl2_one_dimensional_skryabin_module() {
    let (_, s) = sl2();
    let (w, p) = build(&s, 8);
    let c = rat(3, 2);
    let r = skryabin_truncated(&w, &scalar_module(std::slice::from_ref(&c)), 6).unwrap();
    assert_eq!(r.status, CheckStatus::Pass);
    assert_eq!(r.stable_annihilator, Some(1));
    assert_eq!(r.stable_from, Some(0));
    assert!(r.nilpotency_order.is_some());
    // one new h-monomial every two degrees
    let dims: Vec<usize> = r.rows.iter().map(|x| x.dim).collect();
    assert_eq!(dims, vec![1, 1, 2, 2, 3, 3, 4]);
    let oracle = central_quotient_oracle(&w, &w.generators()[0].0, &c, 6);
    let got: Vec<(usize, usize)> = r.rows.iter().map(|x| (x.dim, x.annihilator)).collect();
    assert_eq!(got, oracle);
    assert!(verify_module(&p, &scalar_module(&[c])).unwrap().passed());
}

#[test]
fn sl2_two_dimensional_skryabin_module() {
    let (_, s) = sl2();
    let (w, _) = build(&s, 8);
    let m = FinModule { dim: 2, matrices: vec![vec![vec![rat(0, 1), rat(1, 1)], vec![rat(0, 1), rat(0, 1)]]] };
    let r = skryabin_truncated(&w, &m, 6).unwrap();
    assert_eq!(r.status, CheckStatus::Pass);
    assert_eq!(r.stable_annihilator, Some(2));
    let dims: Vec<usize> = r.rows.iter().map(|x| x.dim).collect();
    assert_eq!(dims, vec![2, 2, 4, 4, 6, 6, 8]);
}

#[test]
fn zero_module_stays_zero() {
    let (_, s) = sl2();
    let (w, _) = build(&s, 8);
    let r = skryabin_truncated(&w, &FinModule::zero(1), 6).unwrap();
    assert_eq!(r.status, CheckStatus::Pass);
    assert!(r.rows.iter().all(|x| x.dim == 0 && x.annihilator == 0));
    let g = gk_check(&w, &FinModule::zero(1), 6).unwrap();
    assert_eq!((g.status, g.degree, g.expected), (CheckStatus::Pass, None, None));
}

#[test]
fn skryabin_rejects_non_modules_and_bad_bounds() {
    let (_, s) = sl3_minimal();
    let (w, _) = build(&s, 8);
    let m = scalar_module(&[Rat::one(), Rat::one(), Rat::zero(), Rat::zero()]);
    assert!(matches!(skryabin_truncated(&w, &m, 4), Err(walgebra::Error::Domain(_))));
    let ok = scalar_module(&[Rat::one(), Rat::zero(), Rat::zero(), Rat::from(2)]);
    assert!(matches!(skryabin_truncated(&w, &ok, 0), Err(walgebra::Error::Usage(_))));
    let r = skryabin_truncated(&w, &ok, 6).unwrap();
    assert_eq!((r.status, r.stable_annihilator), (CheckStatus::Pass, Some(1)));
}

#[test]
fn sl2_growth_is_linear() {
    let (_, s) = sl2();
    let (w, _) = build(&s, 8);
    let g = gk_check(&w, &scalar_module(&[Rat::zero()]), 12).unwrap();
    assert_eq!(g.status, CheckStatus::Pass);
    assert_eq!((g.degree, g.dim_m), (Some(1), 1));
    for (k, d) in &g.samples {
        assert_eq!(*d, monomials_up_to(&[2], *k));
    }
}

#[test]
fn sl3_principal_growth_matches_dim_m() {
    let (_, s) = sl3_principal();
    let (w, _) = build(&s, 8);
    assert_eq!(s.m.len(), 3);
    let g = gk_check(&w, &scalar_module(&[Rat::zero(), Rat::zero()]), 20).unwrap();
    assert_eq!(g.status, CheckStatus::Pass);
    assert_eq!((g.degree, g.dim_m), (Some(3), 3));
    // Q is free over W on generators of degrees 2, 2, 4
    for (k, d) in &g.samples {
        assert_eq!(*d, monomials_up_to(&[2, 2, 4], *k));
    }
}

#[test]
fn short_window_is_inconclusive() {
    let (_, s) = sl3_principal();
    let (w, _) = build(&s, 8);
    let g = gk_check(&w, &scalar_module(&[Rat::zero(), Rat::zero()]), 12).unwrap();
    assert_eq!(g.status, CheckStatus::Inconclusive);
}

/// Multiplicities of irreducibles in a list of weights, by repeatedly
/// removing the weights of the highest remaining irreducible.
fn peel(mut weights: Vec<i64>) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    while let Some(&top) = weights.iter().max() {
        for k in 0..=top {
            let pos = weights.iter().position(|&x| x == top - 2 * k).expect("weights form a module");
            weights.swap_remove(pos);
        }
        *out.entry(top).or_insert(0) += 1;
    }
    out
}

#[test]
fn isotypic_dimensions_of_sl2() {
    let (_, s) = sl2();
    let lambdas = [0, 1, 2, 3];
    let r = check_isotypic(&s.slice_degrees(), &lambdas, 12).unwrap();
    assert!(r.passed());
    assert_eq!(r.cases, 4 * 13);
    for d in 0..=12i64 {
        let slice = monomials_up_to(&[4], d) - if d == 0 { 0 } else { monomials_up_to(&[4], d - 1) };
        let mut weights = Vec::new();
        for l in 0..=3i64 {
            for _ in 0..(l + 1) * slice as i64 {
                weights.extend((0..=l).map(|k| l - 2 * k));
            }
        }
        let mults = peel(weights);
        for &l in &lambdas {
            let got = (l + 1) * mults.get(&l).copied().unwrap_or(0);
            assert_eq!(got, (l + 1) * (l + 1) * slice as i64, "lambda {l} degree {d}");
        }
    }
}

#[test]
fn graded_characters_multiply() {
    let mut a = GradedCharacter::new(4);
    a.add_irreducible(1, 0, 1);
    let b = a.tensor(&a);
    // V(1) (x) V(1) = V(2) + V(0)
    assert_eq!(b.irreducible_multiplicity(2, 0), 1);
    assert_eq!(b.irreducible_multiplicity(0, 0), 1);
    assert!(check_isotypic(&[4], &[-1], 4).is_err());
}

/// Applies an sl2 element of the oscillator to `f(x)`: `e = d^2/2`,
/// `f = -x^2/2`, `h = -x d - 1/2`, the Weyl algebra with `[x, p] = 1`
/// acting by `p = -d/dx`.
fn oscillator_apply(letter: &str, f: &Poly) -> Poly {
    let x = Poly::var(1, 0);
    match letter {
        "e" => f.derivative(0, 2).scale(&rat(1, 2)),
        "f" => (&(&x * &x) * f).scale(&rat(-1, 2)),
        "h" => &(&x * &f.derivative(0, 1)).scale(&rat(-1, 1)) - &f.scale(&rat(1, 2)),
        _ => unreachable!(),
    }
}

#[test]
fn oscillator_ideal_has_multiplicity_one() {
    let (g, s) = sl2();
    let cm = QuantumComoment::defining(&g).unwrap();
    let env = UEnv::from_setup(&s).unwrap();
    let j = comoment_kernel(&cm, &s, 2).unwrap();
    assert_eq!(j.len(), 1);
    // the Casimir acts on every polynomial by the same scalar
    let casimir = |f: &Poly| {
        let ef = oscillator_apply("e", &oscillator_apply("f", f));
        let fe = oscillator_apply("f", &oscillator_apply("e", f));
        let hh = oscillator_apply("h", &oscillator_apply("h", f));
        &(&ef + &fe) + &hh.scale(&rat(1, 2))
    };
    let f = Poly::parse("x^3 - 2*x + 5", &["x".to_string()]).unwrap();
    let value = rat(-3, 8);
    assert_eq!(casimir(&f), f.scale(&value));
    let omega = env.parse("e*f + f*e + 1/2*h^2").unwrap();
    let shifted = omega.sub(&NCPoly::constant(value.clone()));
    let lead = j[0].coeff(&[2, 0]);
    assert_eq!(j[0].scale(&lead.recip()), shifted.scale(&rat(1, 2)));

    let gr = gr_of_nc_ideal(&env, &j, 3).unwrap();
    assert!(gr.stable());
    let restricted = slice_restrict(&gr.ideal, &s).unwrap();
    assert_eq!(restricted.generator_strings(), vec!["t1".to_string()]);
    assert_eq!(restricted.codimension(), Some(1));

    let (w, p) = build(&s, 8);
    let img = w.center_image(&j[0]).unwrap();
    let chars = find_characters_with(&p, &[img.in_generators]).unwrap();
    assert_eq!(chars.status, CheckStatus::Pass);
    assert_eq!(chars.characters.len(), 1);
    // the Casimir maps to 2 G1, so G1 takes half its value
    let casimir_image = w.center_image(&omega).unwrap().in_generators;
    let g1 = chars.characters[0].values["G1"].clone();
    assert_eq!(eval_commutative(&casimir_image, std::slice::from_ref(&g1)), value);
    assert_eq!(g1, rat(-3, 16));
}

#[test]
fn report_json_shapes() {
    let (_, s) = sl2();
    let (w, p) = build(&s, 8);
    let r = find_characters(&p).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["verifiedThroughDegree"], 8);
    assert_eq!(v["characters"][0]["values"]["G1"], "0");
    let sk = serde_json::to_value(skryabin_truncated(&w, &scalar_module(&[Rat::zero()]), 4).unwrap()).unwrap();
    assert_eq!(sk["stableAnnihilator"], 1);
    assert_eq!(sk["rows"][2]["dim"], 2);
    let m: FinModule = serde_json::from_str(r#"{"dim":1,"matrices":[[["1/2"]]]}"#).unwrap();
    assert_eq!(m.matrices[0][0][0], rat(1, 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sl2_skryabin_recovers_any_module(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, d in 1i64..=3) {
        let (_, s) = sl2();
        let w = WAlgebra::build(&s, 4).unwrap();
        let m = FinModule { dim: 2, matrices: vec![vec![vec![Rat::from(a), Rat::from(b)], vec![Rat::from(c), Rat::new(a, d)]]] };
        let r = skryabin_truncated(&w, &m, 5).unwrap();
        prop_assert_eq!(r.status, CheckStatus::Pass);
        prop_assert_eq!(r.stable_annihilator, Some(2));
        for row in &r.rows {
            prop_assert_eq!(row.dim, 2 * monomials_up_to(&[2], row.degree));
        }
    }

    #[test]
    fn sl3_minimal_family_points_are_characters(num in -20i64..=20, den in 1i64..=5) {
        let (_, s) = sl3_minimal();
        let (_, p) = build(&s, 6);
        let t = Rat::new(num, den);
        let m = scalar_module(&[&t / &Rat::from(2), Rat::zero(), Rat::zero(), t]);
        prop_assert!(verify_module(&p, &m).unwrap().passed());
    }

    #[test]
    fn returned_characters_annihilate_relations(shift in -4i64..=4) {
        let (_, s) = sl2();
        let (_, p) = build(&s, 8);
        // (G1 - shift)(G1 + 1/2): two rational characters
        let mut q = NCPoly::monomial(vec![0, 0], Rat::one());
        q.add_term(vec![0], &rat(1, 2) - &Rat::from(shift));
        q.add_term(Vec::new(), -&(&Rat::from(shift) * &rat(1, 2)));
        let r = find_characters_with(&p, &[q.clone()]).unwrap();
        prop_assert_eq!(r.characters.len(), 2);
        for ch in &r.characters {
            prop_assert!(eval_commutative(&q, &point_of(ch, &r.generators)).is_zero());
        }
    }
}
