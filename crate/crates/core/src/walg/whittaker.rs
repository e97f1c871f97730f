use std::collections::{BTreeMap, HashMap};

use super::quotient::{Quotient, QuotientElem};
use crate::error::{Error, Result};
use crate::exact::{kernel, Rat, SparseMat};
use crate::pbw::{word_degree, NCPoly, Word};

/// Representative words of Kazhdan degree at most `max_degree`, ordered by
/// degree ascending, then longer words first, then lexicographically.
pub fn c_words(q: &Quotient, max_degree: i64) -> Vec<Word> {
    let kd = q.env().kazhdan_weights();
    let letters: Vec<u32> = q.c_letters().rev().collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(letters: &[u32], kd: &[i64], budget: i64, cur: &mut Word, out: &mut Vec<Word>) {
        out.push(cur.clone());
        for (k, &l) in letters.iter().enumerate() {
            let d = kd[l as usize];
            if d <= budget {
                cur.push(l);
                rec(&letters[k..], kd, budget - d, cur, out);
                cur.pop();
            }
        }
    }
    if max_degree >= 0 {
        rec(&letters, kd, max_degree, &mut cur, &mut out);
    }
    out.sort_by(|a, b| {
        word_degree(a, kd)
            .cmp(&word_degree(b, kd))
            .then(b.len().cmp(&a.len()))
            .then(a.cmp(b))
    });
    out
}

/// Coordinates of quotient elements against a fixed list of words.
#[derive(Debug, Clone)]
pub struct WordIndex {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl WordIndex {
    pub fn new(words: Vec<Word>) -> Self {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        WordIndex { words, index }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Sparse coordinates; `None` if a word falls outside the index.
    pub fn coords(&self, q: &QuotientElem) -> Option<Vec<(usize, Rat)>> {
        let mut v: Vec<(usize, Rat)> = Vec::with_capacity(q.rep().len());
        for (w, c) in q.rep().terms() {
            v.push((*self.index.get(w)?, c.clone()));
        }
        v.sort_by_key(|e| e.0);
        Some(v)
    }

    pub fn element(&self, coords: &[Rat]) -> QuotientElem {
        let mut p = NCPoly::zero();
        for (w, c) in self.words.iter().zip(coords) {
            p.add_term(w.clone(), c.clone());
        }
        QuotientElem::from_normalized(p)
    }
}

/// The Whittaker vectors of `F_N Q` with an echelon basis adapted to the
/// Kazhdan filtration.
#[derive(Debug, Clone)]
pub struct WhittakerSpace {
    max_degree: i64,
    columns: WordIndex,
    /// Basis vector with its top word's degree; ascending.
    basis: Vec<(QuotientElem, i64)>,
}

impl WhittakerSpace {
    /// Kernel of the stacked maps `x - chi(x)` for `x` in `m` on `F_N Q`.
    pub fn compute(q: &Quotient, max_degree: i64) -> Result<Self> {
        if max_degree < 0 {
            return Err(Error::usage("truncation degree must be nonnegative"));
        }
        let columns = WordIndex::new(c_words(q, max_degree));
        let mut rows: BTreeMap<(u32, Word), usize> = BTreeMap::new();
        let mut cols: Vec<Vec<(usize, Rat)>> = Vec::with_capacity(columns.len());
        for w in columns.words() {
            let elem = QuotientElem::from_normalized(NCPoly::monomial(w.clone(), Rat::one()));
            let mut col = Vec::new();
            for i in 0..q.m_count() {
                for (u, c) in q.ad_m(i, &elem)?.rep().terms() {
                    let next = rows.len();
                    let r = *rows.entry((i, u.clone())).or_insert(next);
                    col.push((r, c.clone()));
                }
            }
            cols.push(col);
        }
        let mat = SparseMat::from_columns(rows.len(), &cols);
        let kd = q.env().kazhdan_weights();
        let basis = kernel(&mat)
            .into_iter()
            .map(|v| {
                let top = v.iter().rposition(|c| !c.is_zero()).expect("kernel vectors are nonzero");
                let d = word_degree(&columns.words()[top], kd);
                (columns.element(&v), d)
            })
            .collect();
        Ok(WhittakerSpace {
            max_degree,
            columns,
            basis,
        })
    }

    pub fn max_degree(&self) -> i64 {
        self.max_degree
    }

    pub fn columns(&self) -> &WordIndex {
        &self.columns
    }

    /// Basis of `F_k W` for `k` up to the truncation.
    pub fn basis_up_to(&self, k: i64) -> Vec<QuotientElem> {
        self.basis
            .iter()
            .filter(|(_, d)| *d <= k)
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// Basis vectors whose top word has degree exactly `k`.
    pub fn new_in_degree(&self, k: i64) -> Vec<QuotientElem> {
        self.basis
            .iter()
            .filter(|(_, d)| *d == k)
            .map(|(v, _)| v.clone())
            .collect()
    }

    /// `dim F_k W` for `k = 0..=N`.
    pub fn filtration_dims(&self) -> Vec<usize> {
        (0..=self.max_degree)
            .map(|k| self.basis.iter().filter(|(_, d)| *d <= k).count())
            .collect()
    }
}

/// Basis of `F_k U(g,e)`.
pub fn whittaker_basis(q: &Quotient, k: i64) -> Result<Vec<QuotientElem>> {
    Ok(WhittakerSpace::compute(q, k)?.basis_up_to(k))
}
