use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use walgebra::exact::Rat;
use walgebra::liealg::{build_classical, Matrix, TypeTag};
use walgebra::pbw::distinct_permutations;
use walgebra::poly::Poly;
use walgebra::report::CheckStatus;
use walgebra::starprod::{
    check_axioms, check_equivalence, check_homogeneity, random_polynomial, transported_product, weyl_identify,
    QuantumComoment, StarContext,
};
use walgebra::Error;

fn r(n: i64) -> Rat {
    Rat::from(n)
}

fn q(a: i64, b: i64) -> Rat {
    Rat::new(a, b)
}

fn sym_bivector() -> Vec<Vec<Rat>> {
    vec![vec![r(0), r(1)], vec![r(1), r(0)]]
}

/// Elements of the Weyl algebra with `[x_i, p_i] = 1`, stored as words in
/// the letters of a Darboux context and normal ordered by brute-force
/// rewriting: every `x` to the left of every `p`.
struct Weyl {
    pairs: usize,
}

type Elem = BTreeMap<Vec<usize>, Rat>;

impl Weyl {
    /// Letter `2i` is `x_i`, letter `2i + 1` is `p_i`; normal order sorts by
    /// `(is_p, pair)`.
    fn key(&self, l: usize) -> (usize, usize) {
        (l % 2, l / 2)
    }

    fn normal(&self, word: &[usize], c: Rat, out: &mut Elem) {
        if c.is_zero() {
            return;
        }
        for k in 0..word.len().saturating_sub(1) {
            let (a, b) = (word[k], word[k + 1]);
            if self.key(a) > self.key(b) {
                let mut swapped = word.to_vec();
                swapped.swap(k, k + 1);
                self.normal(&swapped, c.clone(), out);
                if a % 2 == 1 && b == a - 1 {
                    // p x = x p - 1
                    let mut shorter = word[..k].to_vec();
                    shorter.extend_from_slice(&word[k + 2..]);
                    self.normal(&shorter, -c, out);
                }
                return;
            }
        }
        let e = out.entry(word.to_vec()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            out.remove(word);
        }
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = Elem::new();
        for (u, c) in a {
            for (v, d) in b {
                let mut w = u.clone();
                w.extend(v);
                self.normal(&w, c * d, &mut out);
            }
        }
        out
    }

    /// Symmetric ordering of a commutative polynomial in the context
    /// variables, with `hbar` already specialized away.
    fn symmetric(&self, p: &Poly) -> Elem {
        let mut out = Elem::new();
        for (e, c) in p.terms() {
            assert_eq!(e[2 * self.pairs], 0, "hbar must be specialized");
            let mut letters = Vec::new();
            for (l, &k) in e[..2 * self.pairs].iter().enumerate() {
                letters.extend(std::iter::repeat_n(l as u32, k as usize));
            }
            let perms = distinct_permutations(&letters);
            let share = c / &Rat::from(perms.len() as i64);
            for w in perms {
                let w: Vec<usize> = w.into_iter().map(|l| l as usize).collect();
                self.normal(&w, share.clone(), &mut out);
            }
        }
        out
    }
}

fn darboux_bracket(ctx: &StarContext, f: &Poly, g: &Poly) -> Poly {
    let mut out = ctx.zero();
    for i in 0..ctx.dim() / 2 {
        let (x, p) = (2 * i, 2 * i + 1);
        let term = &(&f.derivative(x, 1) * &g.derivative(p, 1)) - &(&f.derivative(p, 1) * &g.derivative(x, 1));
        out = out + term;
    }
    out
}

#[test]
fn moyal_of_coordinates() {
    let c = StarContext::darboux(1);
    let (x, p) = (c.var(0), c.var(1));
    assert_eq!(c.format(&c.moyal(&x, &p).unwrap()), "x*p + 1/2*hbar");
    assert_eq!(c.format(&c.moyal(&p, &x).unwrap()), "x*p - 1/2*hbar");
    assert_eq!(c.commutator(&x, &p).unwrap(), c.hbar());
}

#[test]
fn moyal_unit_and_two_contractions() {
    let c = StarContext::darboux(1);
    let g = c.parse("3/2 * x^2 p + hbar * x").unwrap();
    assert_eq!(c.moyal(&c.one(), &g).unwrap(), g);
    let lhs = c.moyal(&c.parse("x^2").unwrap(), &c.parse("p^2").unwrap()).unwrap();
    assert_eq!(lhs, c.parse("x^2 p^2 + 2 hbar x p + 1/2 hbar^2").unwrap());
    // P^2(x^2, p^2) = 4
    let terms = c.expansion(&c.parse("x^2").unwrap(), &c.parse("p^2").unwrap()).unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(terms[2], c.constant(q(4, 8)));
}

#[test]
fn moyal_matches_symmetric_ordering_in_one_pair() {
    let c = StarContext::darboux(1);
    let w = Weyl { pairs: 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let f = random_polynomial(&c, &mut rng, 4);
        let g = random_polynomial(&c, &mut rng, 4);
        let star = c.at_hbar(&c.moyal(&f, &g).unwrap(), &Rat::one());
        assert_eq!(w.symmetric(&star), w.mul(&w.symmetric(&f), &w.symmetric(&g)));
    }
}

#[test]
fn moyal_matches_symmetric_ordering_in_two_pairs() {
    let c = StarContext::darboux(2);
    let w = Weyl { pairs: 2 };
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let f = random_polynomial(&c, &mut rng, 3);
        let g = random_polynomial(&c, &mut rng, 3);
        let star = c.at_hbar(&c.moyal(&f, &g).unwrap(), &Rat::one());
        assert_eq!(w.symmetric(&star), w.mul(&w.symmetric(&f), &w.symmetric(&g)));
    }
}

#[test]
fn bracket_is_the_darboux_bracket() {
    let c = StarContext::darboux(2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let f = random_polynomial(&c, &mut rng, 4);
        let g = random_polynomial(&c, &mut rng, 4);
        assert_eq!(c.poisson(&f, &g).unwrap(), darboux_bracket(&c, &f, &g));
    }
}

#[test]
fn axioms_hold_for_two_pairs() {
    let c = StarContext::darboux(2);
    let rep = check_axioms(&c, 4, 10, 7).unwrap();
    assert_eq!(rep.status, CheckStatus::Pass, "{rep:?}");
    assert_eq!(rep.cases, 10);
}

#[test]
fn constant_triples_are_associative() {
    let c = StarContext::darboux(1);
    let rep = check_axioms(&c, 0, 5, 1).unwrap();
    assert!(rep.passed());
    assert!(matches!(check_axioms(&c, 2, 0, 1), Err(Error::Usage(_))));
}

#[test]
fn corrupted_bivector_fails_with_a_monomial() {
    let c = StarContext::unchecked(vec!["x".into(), "p".into()], vec![1, 1], sym_bivector(), 2).unwrap();
    let rep = check_axioms(&c, 3, 20, 5).unwrap();
    assert_eq!(rep.status, CheckStatus::Fail);
    let detail = rep.detail.unwrap();
    assert!(detail.starts_with("semiclassical limit"), "{detail}");
    assert!(detail.contains("has term"), "{detail}");
}

#[test]
fn corrupted_bivector_is_still_associative() {
    // constant bidifferential exponentials always compose associatively;
    // only the semiclassical condition sees the symmetric part
    let c = StarContext::unchecked(vec!["x".into(), "p".into()], vec![1, 1], sym_bivector(), 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let f = random_polynomial(&c, &mut rng, 3);
        let g = random_polynomial(&c, &mut rng, 3);
        let h = random_polynomial(&c, &mut rng, 3);
        let left = c.moyal(&c.moyal(&f, &g).unwrap(), &h).unwrap();
        assert_eq!(left, c.moyal(&f, &c.moyal(&g, &h).unwrap()).unwrap());
    }
}

#[test]
fn homogeneity_for_unit_weights() {
    let rep = check_homogeneity(&StarContext::darboux(2), 3).unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn homogeneity_for_zero_weights_and_k_zero() {
    let c = StarContext::new(
        vec!["x".into(), "p".into()],
        vec![0, 0],
        vec![vec![r(0), r(1)], vec![r(-1), r(0)]],
        0,
    )
    .unwrap();
    assert!(check_homogeneity(&c, 4).unwrap().passed());
}

#[test]
fn homogeneity_fails_for_mismatched_weights() {
    let c = StarContext::new(
        vec!["x".into(), "p".into()],
        vec![1, 2],
        vec![vec![r(0), r(1)], vec![r(-1), r(0)]],
        2,
    )
    .unwrap();
    let rep = check_homogeneity(&c, 2).unwrap();
    assert_eq!(rep.status, CheckStatus::Fail);
    assert!(rep.detail.unwrap().starts_with("j = 1"));
}

#[test]
fn weyl_commutation_in_one_pair() {
    let c = StarContext::darboux(1);
    let w = weyl_identify(&c).unwrap();
    assert!(w.report.passed());
    assert_eq!(w.gram[0][1], r(1));
    assert_eq!(w.gram[0][0], r(0));
    assert_eq!(w.gram[1][1], r(0));
}

#[test]
fn weyl_gram_equals_block_bivector() {
    let c = StarContext::darboux(2);
    let w = weyl_identify(&c).unwrap();
    assert!(w.report.passed());
    assert_eq!(w.gram, c.bivector().to_vec());
    let zero = vec![vec![r(0); 2]; 2];
    let d = StarContext::new(vec!["x".into(), "p".into()], vec![1, 1], zero, 2).unwrap();
    assert!(matches!(weyl_identify(&d), Err(Error::Domain(_))));
}

#[test]
fn equivalent_product_keeps_the_axioms() {
    let c = StarContext::darboux(2);
    let mut op = vec![vec![r(0); 4]; 4];
    op[0][0] = r(1);
    op[1][2] = q(1, 2);
    op[2][1] = q(1, 2);
    op[3][3] = r(-2);
    let rep = check_equivalence(&c, &op, 3, 8, 4).unwrap();
    assert!(rep.passed(), "{rep:?}");
    // the transported product differs from Moyal, so the check is not vacuous
    // T(T^-1 x^2 T^-1 x^2) = x^4 + 8 hbar x^2 + 8 hbar^2 while x^2 * x^2 = x^4
    let xx = c.parse("x1^2").unwrap();
    assert_eq!(
        transported_product(&c, &op, &xx, &xx).unwrap(),
        c.parse("x1^4 + 8 hbar x1^2 + 8 hbar^2").unwrap()
    );
    assert_eq!(c.moyal(&xx, &xx).unwrap(), c.parse("x1^4").unwrap());
    op[0][1] = r(1);
    assert!(matches!(check_equivalence(&c, &op, 3, 1, 4), Err(Error::Usage(_))));
}

#[test]
fn checks_are_deterministic_in_the_seed() {
    let c = StarContext::unchecked(vec!["x".into(), "p".into()], vec![1, 1], sym_bivector(), 2).unwrap();
    assert_eq!(check_axioms(&c, 3, 5, 42).unwrap(), check_axioms(&c, 3, 5, 42).unwrap());
}

fn sl2_comoment() -> QuantumComoment {
    QuantumComoment::defining(&build_classical(TypeTag::A, 1).unwrap()).unwrap()
}

#[test]
fn sl2_hamiltonians() {
    let m = sl2_comoment();
    let c = m.context();
    let g = m.algebra();
    let h = |l: &str| m.hamiltonians()[g.index_of(l).unwrap()].clone();
    assert_eq!(h("e"), c.parse("1/2 p^2").unwrap());
    assert_eq!(h("f"), c.parse("-1/2 x^2").unwrap());
    assert_eq!(h("h"), c.parse("x p").unwrap());
    assert_eq!(darboux_bracket(c, &h("e"), &h("f")), h("h"));
    assert!(m.hamiltonian(&[r(0), r(0), r(0)]).is_zero());
    let one = Rat::one();
    assert_eq!(c.at_hbar(&c.commutator(&h("e"), &h("f")).unwrap(), &one), h("h"));
}

#[test]
fn sl2_comoment_identities() {
    let m = sl2_comoment();
    let d = m.check_derivations(5).unwrap();
    assert!(d.passed(), "{d:?}");
    // 21 monomials of degree at most 5 in two variables, three basis elements
    assert_eq!(d.cases, 63);
    assert!(m.check_homomorphism().unwrap().passed());
}

#[test]
fn sp4_comoment_identities() {
    let m = QuantumComoment::defining(&build_classical(TypeTag::C, 2).unwrap()).unwrap();
    assert!(m.context().is_nondegenerate());
    assert!(m.check_derivations(3).unwrap().passed());
    assert!(m.check_homomorphism().unwrap().passed());
}

#[test]
fn non_symplectic_action_is_rejected() {
    let g = build_classical(TypeTag::A, 1).unwrap();
    let mats = g.matrices.clone().unwrap();
    // two copies of the defining representation, with coordinates ordered
    // so that the Darboux pairs mix the copies
    let doubled: Vec<Matrix> = mats
        .iter()
        .map(|a| {
            let mut m = vec![vec![r(0); 4]; 4];
            for i in 0..2 {
                for j in 0..2 {
                    m[2 * i][2 * j] = a[i][j].clone();
                    m[2 * i + 1][2 * j + 1] = a[i][j].clone();
                }
            }
            m
        })
        .collect();
    let err = QuantumComoment::new(StarContext::darboux(2), &g, doubled).unwrap_err();
    assert!(matches!(err, Error::Domain(ref s) if s.contains("symplectic")), "{err}");

    let bad: Vec<Matrix> = vec![vec![vec![r(1), r(0)], vec![r(0), r(1)]]; 3];
    assert!(matches!(QuantumComoment::new(StarContext::darboux(1), &g, bad), Err(Error::Domain(_))));
}

fn star_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..4, 0u32..4, 0u32..2, -5i64..6), 1..5).prop_map(|terms| {
        Poly::from_terms(3, terms.into_iter().map(|(a, b, h, c)| (vec![a, b, h], Rat::from(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moyal_is_associative(f in star_poly(), g in star_poly(), h in star_poly()) {
        let c = StarContext::darboux(1);
        let left = c.moyal(&c.moyal(&f, &g).unwrap(), &h).unwrap();
        let right = c.moyal(&f, &c.moyal(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn moyal_deforms_the_product(f in star_poly(), g in star_poly()) {
        let c = StarContext::darboux(1);
        let fg = c.moyal(&f, &g).unwrap();
        prop_assert_eq!(c.at_hbar(&fg, &Rat::zero()), c.at_hbar(&(&f * &g), &Rat::zero()));
        let d = &(&fg - &c.moyal(&g, &f).unwrap()) - &(&c.hbar() * &darboux_bracket(&c, &f, &g));
        prop_assert!(c.hbar_coefficient(&d, 0).is_zero());
        prop_assert!(c.hbar_coefficient(&d, 1).is_zero());
    }

    #[test]
    fn hamiltonians_are_linear(a in -4i64..5, b in -4i64..5, d in -4i64..5) {
        let m = sl2_comoment();
        let hs = m.hamiltonians();
        let want = &(&hs[0].scale(&r(a)) + &hs[1].scale(&r(b))) + &hs[2].scale(&r(d));
        prop_assert_eq!(m.hamiltonian(&[r(a), r(b), r(d)]), want);
    }
}
