use std::collections::HashMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::liealg::NilpotentSetup;
use crate::pbw::{Degree, NCPoly, UEnv, Word};

/// Element of `Q = U(g)/U(g)m'`, stored by its unique representative: a
/// combination of PBW words that contain no letter of `m`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QuotientElem(NCPoly);

impl QuotientElem {
    pub fn zero() -> Self {
        QuotientElem(NCPoly::zero())
    }

    pub fn one() -> Self {
        QuotientElem(NCPoly::one())
    }

    /// Caller guarantees `p` contains no letter of `m`.
    pub(crate) fn from_normalized(p: NCPoly) -> Self {
        QuotientElem(p)
    }

    pub fn rep(&self) -> &NCPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &QuotientElem) -> QuotientElem {
        QuotientElem(self.0.add(&other.0))
    }

    pub fn sub(&self, other: &QuotientElem) -> QuotientElem {
        QuotientElem(self.0.sub(&other.0))
    }

    pub fn scale(&self, c: &Rat) -> QuotientElem {
        QuotientElem(self.0.scale(c))
    }

    pub fn add_scaled(&mut self, c: &Rat, other: &QuotientElem) {
        self.0.add_scaled(c, &other.0);
    }
}

/// The left `U(g)`-module `Q` for a nilpotent setup, in the adapted frame.
/// Frame letters `0..m_count` span `m` and sit rightmost in PBW words.
pub struct Quotient {
    env: UEnv,
    m_count: u32,
    chi: Vec<Rat>,
    memo: Mutex<HashMap<(u32, Word), NCPoly>>,
}

impl std::fmt::Debug for Quotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Quotient")
            .field("env", &self.env)
            .field("m_count", &self.m_count)
            .finish()
    }
}

impl Quotient {
    pub fn new(s: &NilpotentSetup) -> Result<Self> {
        Ok(Quotient {
            env: UEnv::from_setup(s)?,
            m_count: s.frame.m_count as u32,
            chi: s.frame.chi.clone(),
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn env(&self) -> &UEnv {
        &self.env
    }

    pub fn m_count(&self) -> u32 {
        self.m_count
    }

    /// `<chi, x_i>` for frame letter `i`.
    pub fn chi(&self, i: u32) -> &Rat {
        &self.chi[i as usize]
    }

    /// Letters that may appear in representatives.
    pub fn c_letters(&self) -> std::ops::Range<u32> {
        self.m_count..self.env.dim() as u32
    }

    pub fn kazhdan_degree(&self, q: &QuotientElem) -> Degree {
        self.env.kazhdan_degree(&q.0)
    }

    /// Canonical representative of the class of `a`: each normal word
    /// `c * m_1 ... m_k` becomes `chi(m_1) ... chi(m_k) c`.
    pub fn reduce(&self, a: &NCPoly) -> Result<QuotientElem> {
        self.env.check(a)?;
        let mut out = NCPoly::zero();
        for (w, c) in a.terms() {
            let cut = w.iter().position(|&l| l < self.m_count).unwrap_or(w.len());
            let mut coeff = c.clone();
            for &l in &w[cut..] {
                coeff *= &self.chi[l as usize];
            }
            out.add_term(w[..cut].to_vec(), coeff);
        }
        Ok(QuotientElem(out))
    }

    /// Wraps a polynomial already free of `m` letters.
    pub fn from_rep(&self, a: NCPoly) -> Result<QuotientElem> {
        self.env.check(&a)?;
        if a.terms().keys().flatten().any(|&l| l < self.m_count) {
            return Err(Error::domain("representative contains a letter of m"));
        }
        Ok(QuotientElem(a))
    }

    /// `x_i` applied to a representative word.
    fn act_word(&self, i: u32, w: &[u32]) -> NCPoly {
        match w.first() {
            None if i >= self.m_count => return NCPoly::generator(i),
            None => return NCPoly::constant(self.chi[i as usize].clone()),
            Some(&j) if i >= j => {
                let mut nw = Vec::with_capacity(w.len() + 1);
                nw.push(i);
                nw.extend_from_slice(w);
                return NCPoly::monomial(nw, Rat::one());
            }
            Some(_) => {}
        }
        let key = (i, w.to_vec());
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let (j, rest) = (w[0], &w[1..]);
        // x_i x_j r = x_j (x_i r) + [x_i, x_j] r
        let inner = self.act_word(i, rest);
        let mut out = self.act_poly(j, &inner);
        for (k, c) in self.env.bracket_of(i, j) {
            out.add_scaled(c, &self.act_word(*k, rest));
        }
        self.memo.lock().unwrap().insert(key, out.clone());
        out
    }

    fn act_poly(&self, i: u32, a: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in a.terms() {
            out.add_scaled(c, &self.act_word(i, w));
        }
        out
    }

    /// Left action of a frame letter.
    pub fn act(&self, i: u32, q: &QuotientElem) -> Result<QuotientElem> {
        if i as usize >= self.env.dim() {
            return Err(Error::usage(format!("generator index {i} out of range")));
        }
        Ok(QuotientElem(self.act_poly(i, &q.0)))
    }

    /// Left action `a . q` of an element of `U(g)`.
    pub fn act_by(&self, a: &NCPoly, q: &QuotientElem) -> Result<QuotientElem> {
        self.env.check(a)?;
        let mut out = NCPoly::zero();
        for (w, c) in a.terms() {
            let mut acc = q.0.clone();
            for &l in w.iter().rev() {
                acc = self.act_poly(l, &acc);
            }
            out.add_scaled(c, &acc);
        }
        Ok(QuotientElem(out))
    }

    /// Product induced from `U(g)`; well defined when `b` is a Whittaker
    /// vector.
    pub fn product(&self, a: &QuotientElem, b: &QuotientElem) -> QuotientElem {
        self.act_by(&a.0, b).expect("representatives live in this algebra")
    }

    /// `ad(x_i) q = x_i . q - chi(x_i) q` for a letter of `m`.
    pub fn ad_m(&self, i: u32, q: &QuotientElem) -> Result<QuotientElem> {
        if i >= self.m_count {
            return Err(Error::usage(format!("letter {i} is not in m")));
        }
        let mut out = self.act(i, q)?;
        out.add_scaled(&-self.chi(i), q);
        Ok(out)
    }

    /// True when every letter of `m` acts on `q` by its character.
    pub fn is_whittaker(&self, q: &QuotientElem) -> bool {
        (0..self.m_count).all(|i| self.ad_m(i, q).is_ok_and(|r| r.is_zero()))
    }

    pub fn format(&self, q: &QuotientElem) -> String {
        self.env.format(&q.0)
    }
}
