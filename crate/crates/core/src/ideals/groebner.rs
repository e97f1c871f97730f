use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::poly::{weight_of, Exps, Poly};

/// Polynomial as a list of terms sorted strictly descending by an order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Sorted {
    pub terms: Vec<(Exps, Rat)>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn mul_exps(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl Sorted {
    pub fn from_poly(p: &Poly, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Exps, Rat)> = p.terms().iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Sorted { terms }
    }

    pub fn to_poly(&self, nvars: usize) -> Poly {
        Poly::from_terms(nvars, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Exps {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Rat {
        &self.terms[0].1
    }

    pub fn make_monic(&mut self) {
        if let Some(c) = self.terms.first().map(|t| t.1.recip()) {
            for t in &mut self.terms {
                t.1 = &t.1 * &c;
            }
        }
    }

    /// `self - c * m * q`, merged in order.
    fn sub_mul(&self, c: &Rat, m: &[u32], q: &Sorted, order: &MonomialOrder) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + q.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = q.terms.iter().map(|(e, v)| (mul_exps(e, m), -(c * v))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let x = a.next().unwrap();
                        let y = b.next().unwrap();
                        let s = &x.1 + &y.1;
                        if !s.is_zero() {
                            out.push((y.0, s));
                        }
                    }
                },
            }
        }
        Sorted { terms: out }
    }
}

/// Full reduction of `p` modulo `basis`; the remainder has no term
/// divisible by a leading monomial.
pub(crate) fn normal_form(p: &Sorted, basis: &[Sorted], order: &MonomialOrder) -> Sorted {
    let mut rem: Vec<(Exps, Rat)> = Vec::new();
    let mut cur = p.clone();
    while let Some((lm, lc)) = cur.terms.first().cloned() {
        match basis.iter().find(|g| divides(g.lm(), &lm)) {
            Some(g) => {
                let m = quotient(&lm, g.lm());
                let c = &lc / g.lc();
                cur = cur.sub_mul(&c, &m, g, order);
            }
            None => {
                rem.push((lm, lc));
                cur.terms.remove(0);
            }
        }
    }
    Sorted { terms: rem }
}

fn s_poly(f: &Sorted, g: &Sorted, order: &MonomialOrder) -> Sorted {
    let l = lcm(f.lm(), g.lm());
    let mf = quotient(&l, f.lm());
    let mg = quotient(&l, g.lm());
    let zero = Sorted { terms: Vec::new() };
    let a = zero.sub_mul(&-f.lc().recip(), &mf, f, order);
    a.sub_mul(&g.lc().recip(), &mg, g, order)
}

fn sugar_of(p: &Sorted, weights: &[i64]) -> i64 {
    p.terms.iter().map(|(e, _)| weight_of(e, weights)).max().unwrap_or(0)
}

/// Reduced Groebner basis of the ideal generated by `gens`, monic and
/// sorted ascending by leading monomial. Pairs are treated in order of
/// increasing sugar; Buchberger's product and chain criteria prune pairs.
pub fn buchberger(gens: &[Poly], order: &MonomialOrder) -> Result<Vec<Poly>> {
    let nvars = match gens.first() {
        Some(g) => g.nvars(),
        None => return Ok(Vec::new()),
    };
    if gens.iter().any(|g| g.nvars() != nvars) {
        return Err(Error::usage("generators live in different polynomial rings"));
    }
    let weights = order.weights(nvars);
    if weights.len() != nvars {
        return Err(Error::usage("order weights do not match the number of variables"));
    }
    let mut st = State {
        weights,
        basis: Vec::new(),
        sugar: Vec::new(),
        pairs: BTreeSet::new(),
        pending: BTreeSet::new(),
    };
    for g in gens {
        let mut p = normal_form(&Sorted::from_poly(g, order), &st.basis, order);
        if p.is_zero() {
            continue;
        }
        p.make_monic();
        let s = sugar_of(&p, &st.weights);
        st.add(p, s);
    }

    while let Some(&(s, i, j)) = st.pairs.iter().next() {
        st.pairs.remove(&(s, i, j));
        st.pending.remove(&(i, j));
        let (fi, fj) = (&st.basis[i], &st.basis[j]);
        if coprime(fi.lm(), fj.lm()) || st.chain_criterion(i, j) {
            continue;
        }
        let sp = s_poly(fi, fj, order);
        let mut h = normal_form(&sp, &st.basis, order);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        if h.lm().iter().all(|&e| e == 0) {
            return Ok(vec![Poly::one(nvars)]);
        }
        st.add(h, s);
    }
    Ok(reduce_basis(st.basis, order)
        .into_iter()
        .map(|p| p.to_poly(nvars))
        .collect())
}

struct State {
    weights: Vec<i64>,
    basis: Vec<Sorted>,
    sugar: Vec<i64>,
    /// `(sugar, i, j)` for untreated pairs, smallest sugar first.
    pairs: BTreeSet<(i64, usize, usize)>,
    /// The same pairs keyed by indices.
    pending: BTreeSet<(usize, usize)>,
}

impl State {
    fn add(&mut self, p: Sorted, s: i64) {
        let k = self.basis.len();
        for (i, g) in self.basis.iter().enumerate() {
            let l = lcm(g.lm(), p.lm());
            let si = self.sugar[i] + weight_of(&quotient(&l, g.lm()), &self.weights);
            let sk = s + weight_of(&quotient(&l, p.lm()), &self.weights);
            self.pairs.insert((si.max(sk), i, k));
            self.pending.insert((i, k));
        }
        self.basis.push(p);
        self.sugar.push(s);
    }

    /// Some `g_k` has leading monomial dividing `lcm(i, j)` and both pairs
    /// `(i, k)`, `(j, k)` are already treated.
    fn chain_criterion(&self, i: usize, j: usize) -> bool {
        let l = lcm(self.basis[i].lm(), self.basis[j].lm());
        let key = |a: usize, b: usize| (a.min(b), a.max(b));
        (0..self.basis.len()).any(|k| {
            k != i
                && k != j
                && divides(self.basis[k].lm(), &l)
                && !self.pending.contains(&key(i, k))
                && !self.pending.contains(&key(j, k))
        })
    }
}

/// Minimal, interreduced, monic basis sorted ascending by leading monomial.
fn reduce_basis(basis: Vec<Sorted>, order: &MonomialOrder) -> Vec<Sorted> {
    let mut minimal: Vec<Sorted> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(m, h)| {
            m != k && divides(h.lm(), g.lm()) && (h.lm() != g.lm() || m < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    minimal.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(m, _)| *m != k)
            .map(|(_, g)| g.clone())
            .collect();
        let mut r = normal_form(&minimal[k], &others, order);
        r.make_monic();
        out.push(r);
    }
    out
}

/// Remainder of `p` modulo a Groebner basis.
pub fn reduce_modulo(p: &Poly, basis: &[Poly], order: &MonomialOrder) -> Poly {
    let b: Vec<Sorted> = basis.iter().map(|g| Sorted::from_poly(g, order)).collect();
    normal_form(&Sorted::from_poly(p, order), &b, order).to_poly(p.nvars())
}

/// Leading monomial of a nonzero polynomial.
pub fn leading_monomial(p: &Poly, order: &MonomialOrder) -> Option<Exps> {
    p.terms().keys().max_by(|a, b| order.cmp(a, b)).cloned()
}
