use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use super::ncpoly::{Degree, NCPoly, Word};
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::liealg::{LieAlgebraData, NilpotentSetup};
use crate::parse::{eval_expr, parse_expr};
use crate::poly::Poly;

/// The enveloping algebra `U(g)` of a Lie algebra in a fixed ordered basis,
/// with an `ad(h')`-weight attached to every basis element. A basis element
/// of weight `i` has Kazhdan degree `i + 2`.
pub struct UEnv {
    labels: Vec<String>,
    weights: Vec<i64>,
    kdeg: Vec<i64>,
    brackets: Vec<Vec<Vec<(u32, Rat)>>>,
    memo: Mutex<HashMap<(u32, Word), NCPoly>>,
}

impl std::fmt::Debug for UEnv {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UEnv")
            .field("labels", &self.labels)
            .field("weights", &self.weights)
            .finish()
    }
}

impl UEnv {
    pub fn new(g: &LieAlgebraData, weights: Vec<i64>) -> Result<Self> {
        if weights.len() != g.dim {
            return Err(Error::usage("one weight per basis element is required"));
        }
        let brackets = g
            .bracket
            .iter()
            .map(|row| {
                row.iter()
                    .map(|col| col.iter().map(|(k, v)| (*k as u32, v.clone())).collect())
                    .collect()
            })
            .collect();
        Ok(UEnv {
            labels: g.labels.clone(),
            kdeg: weights.iter().map(|w| w + 2).collect(),
            weights,
            brackets,
            memo: Mutex::new(HashMap::new()),
        })
    }

    /// `U(g)` in the adapted frame of a nilpotent setup.
    pub fn from_setup(s: &NilpotentSetup) -> Result<Self> {
        UEnv::new(s.frame.algebra(), s.frame.weights.clone())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Kazhdan degree of each basis element.
    pub fn kazhdan_weights(&self) -> &[i64] {
        &self.kdeg
    }

    pub fn bracket_of(&self, i: u32, j: u32) -> &[(u32, Rat)] {
        &self.brackets[i as usize][j as usize]
    }

    /// Fails when `a` mentions a generator outside this algebra.
    pub fn check(&self, a: &NCPoly) -> Result<()> {
        match a.max_index() {
            Some(m) if m as usize >= self.dim() => Err(Error::usage(format!(
                "polynomial uses generator {m} but the algebra has dimension {}",
                self.dim()
            ))),
            _ => Ok(()),
        }
    }

    pub fn kazhdan_degree(&self, a: &NCPoly) -> Degree {
        a.degree_by(&self.kdeg)
    }

    pub fn standard_degree(&self, a: &NCPoly) -> Degree {
        a.standard_degree()
    }

    /// `x_i * w` in normal form for a normal word `w`.
    pub fn gen_times_word(&self, i: u32, w: &[u32]) -> NCPoly {
        if w.first().is_none_or(|&j| i >= j) {
            let mut nw = Vec::with_capacity(w.len() + 1);
            nw.push(i);
            nw.extend_from_slice(w);
            return NCPoly::monomial(nw, Rat::one());
        }
        let key = (i, w.to_vec());
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let j = w[0];
        let rest = &w[1..];
        // x_i x_j r = x_j (x_i r) + [x_i, x_j] r
        let inner = self.gen_times_word(i, rest);
        let mut out = self.gen_times(j, &inner);
        for (k, c) in self.bracket_of(i, j) {
            out.add_scaled(c, &self.gen_times_word(*k, rest));
        }
        self.memo.lock().unwrap().insert(key, out.clone());
        out
    }

    pub fn gen_times(&self, i: u32, a: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in a.terms() {
            out.add_scaled(c, &self.gen_times_word(i, w));
        }
        out
    }

    /// Product in `U(g)`.
    pub fn multiply(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &NCPoly, b: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in a.terms() {
            let mut acc = b.clone();
            for &letter in w.iter().rev() {
                acc = self.gen_times(letter, &acc);
            }
            out.add_scaled(c, &acc);
        }
        out
    }

    pub fn commutator(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly> {
        Ok(self.multiply(a, b)?.sub(&self.multiply(b, a)?))
    }

    /// Normal form of `coeff * word` by repeated rewriting of the leftmost
    /// adjacent pair `x_i x_j` with `i < j` into `x_j x_i + [x_i, x_j]`.
    pub fn normal_form(&self, word: &[u32], coeff: Rat) -> Result<NCPoly> {
        if let Some(&m) = word.iter().max() {
            if m as usize >= self.dim() {
                return Err(Error::usage(format!("generator index {m} out of range")));
            }
        }
        let mut pending: BTreeMap<Word, Rat> = BTreeMap::new();
        let mut done = NCPoly::zero();
        if !coeff.is_zero() {
            pending.insert(word.to_vec(), coeff);
        }
        while let Some((w, c)) = pending.pop_last() {
            match w.windows(2).position(|p| p[0] < p[1]) {
                None => done.add_term(w, c),
                Some(k) => {
                    let (i, j) = (w[k], w[k + 1]);
                    let mut swapped = w.clone();
                    swapped.swap(k, k + 1);
                    push(&mut pending, swapped, c.clone());
                    for (l, v) in self.bracket_of(i, j) {
                        let mut nw = w[..k].to_vec();
                        nw.push(*l);
                        nw.extend_from_slice(&w[k + 2..]);
                        push(&mut pending, nw, &c * v);
                    }
                }
            }
        }
        Ok(done)
    }

    /// Normal form of an arbitrary linear combination of words.
    pub fn normal_form_words(&self, words: &[(Vec<u32>, Rat)]) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in words {
            out.add_scaled(&Rat::one(), &self.normal_form(w, c.clone())?);
        }
        Ok(out)
    }

    /// Top Kazhdan component as a commutative polynomial in the basis.
    pub fn kazhdan_symbol(&self, a: &NCPoly) -> Poly {
        match self.kazhdan_degree(a) {
            Degree::NegInfinity => Poly::zero(self.dim()),
            Degree::Finite(d) => self.to_commutative(&a.component_by(&self.kdeg, d)),
        }
    }

    /// Top component for the standard (word length) filtration.
    pub fn standard_symbol(&self, a: &NCPoly) -> Poly {
        match a.standard_degree() {
            Degree::NegInfinity => Poly::zero(self.dim()),
            Degree::Finite(d) => {
                let ones = vec![1; self.dim()];
                self.to_commutative(&a.component_by(&ones, d))
            }
        }
    }

    /// Reads normal words as commutative monomials.
    pub fn to_commutative(&self, a: &NCPoly) -> Poly {
        let n = self.dim();
        Poly::from_terms(
            n,
            a.terms().iter().map(|(w, c)| {
                let mut e = vec![0u32; n];
                for &i in w {
                    e[i as usize] += 1;
                }
                (e, c.clone())
            }),
        )
    }

    /// Symmetrization `S(g) -> U(g)`: each monomial maps to the average of
    /// all orderings of its factors.
    pub fn symmetrize(&self, p: &Poly) -> Result<NCPoly> {
        if p.nvars() != self.dim() {
            return Err(Error::usage("polynomial ring does not match the algebra"));
        }
        let mut out = NCPoly::zero();
        for (e, c) in p.terms() {
            let mut letters = Vec::new();
            for (i, &a) in e.iter().enumerate() {
                letters.extend(std::iter::repeat_n(i as u32, a as usize));
            }
            let arrangements = distinct_permutations(&letters);
            let weight = c / &Rat::from(arrangements.len());
            for w in arrangements {
                out.add_scaled(&Rat::one(), &self.normal_form(&w, weight.clone())?);
            }
        }
        Ok(out)
    }

    pub fn format(&self, a: &NCPoly) -> String {
        a.format(&self.labels)
    }

    /// Parses the text form, e.g. `e f + f e + 1/2 h^2`; products are taken
    /// in the written order.
    pub fn parse(&self, src: &str) -> Result<NCPoly> {
        let e = parse_expr(src, &self.labels)?;
        Ok(eval_expr(
            &e,
            &|r| NCPoly::constant(r.clone()),
            &|i| NCPoly::generator(i as u32),
            &|a, b| a.add(b),
            &|a, b| self.mul_unchecked(a, b),
        ))
    }
}

fn push(map: &mut BTreeMap<Word, Rat>, w: Word, c: Rat) {
    if c.is_zero() {
        return;
    }
    let slot = map.entry(w.clone()).or_insert_with(Rat::zero);
    *slot += c;
    if slot.is_zero() {
        map.remove(&w);
    }
}

/// All distinct orderings of a multiset, in lexicographic order.
pub fn distinct_permutations(letters: &[u32]) -> Vec<Vec<u32>> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &l in letters {
        *counts.entry(l).or_insert(0) += 1;
    }
    let keys: Vec<u32> = counts.keys().copied().collect();
    let mut cnt: Vec<usize> = counts.values().copied().collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(letters.len());
    fn rec(keys: &[u32], cnt: &mut [usize], cur: &mut Vec<u32>, n: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..keys.len() {
            if cnt[k] > 0 {
                cnt[k] -= 1;
                cur.push(keys[k]);
                rec(keys, cnt, cur, n, out);
                cur.pop();
                cnt[k] += 1;
            }
        }
    }
    rec(&keys, &mut cnt, &mut cur, letters.len(), &mut out);
    out
}
