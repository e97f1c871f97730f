use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::Rat;

/// A PBW word: a non-increasing sequence of basis indices. The smallest
/// index stands rightmost.
pub type Word = Vec<u32>;

pub fn is_normal(w: &[u32]) -> bool {
    w.windows(2).all(|p| p[0] >= p[1])
}

/// Filtration degree with a bottom element for the zero polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }

    pub fn le(self, k: i64) -> bool {
        self <= Degree::Finite(k)
    }
}

impl std::ops::Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::NegInfinity => s.serialize_str("-inf"),
            Degree::Finite(d) => s.serialize_i64(*d),
        }
    }
}

/// Element of an enveloping algebra in PBW normal form. Only normal words
/// with nonzero coefficients are stored; the ring context lives elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct NCPoly {
    terms: BTreeMap<Word, Rat>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one() -> Self {
        NCPoly::constant(Rat::one())
    }

    pub fn generator(i: u32) -> Self {
        NCPoly::monomial(vec![i], Rat::one())
    }

    /// Single normal word; panics on a non-normal word.
    pub fn monomial(w: Word, c: Rat) -> Self {
        assert!(is_normal(&w), "word {w:?} is not in normal form");
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rat> {
        &self.terms
    }

    pub fn coeff(&self, w: &[u32]) -> Rat {
        self.terms.get(w).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&[])
    }

    /// Adds `c` times a normal word.
    pub fn add_term(&mut self, w: Word, c: Rat) {
        debug_assert!(is_normal(&w));
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Rat, other: &NCPoly) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(w.clone(), c * v);
        }
    }

    pub fn scale(&self, c: &Rat) -> NCPoly {
        let mut out = NCPoly::zero();
        out.add_scaled(c, self);
        out
    }

    pub fn add(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(&Rat::one(), other);
        out
    }

    pub fn sub(&self, other: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(&Rat::from(-1), other);
        out
    }

    pub fn max_index(&self) -> Option<u32> {
        self.terms.keys().filter_map(|w| w.first().copied()).max()
    }

    /// Maximum word length; `NegInfinity` for zero.
    pub fn standard_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|w| Degree::Finite(w.len() as i64))
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    /// Maximum over words of the summed generator degrees.
    pub fn degree_by(&self, deg: &[i64]) -> Degree {
        self.terms
            .keys()
            .map(|w| Degree::Finite(word_degree(w, deg)))
            .max()
            .unwrap_or(Degree::NegInfinity)
    }

    /// Terms of exactly the given weighted degree.
    pub fn component_by(&self, deg: &[i64], d: i64) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| word_degree(w, deg) == d)
                .map(|(w, v)| (w.clone(), v.clone()))
                .collect(),
        }
    }

    /// Terms whose weighted degree is at most `d`.
    pub fn truncate_by(&self, deg: &[i64], d: i64) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| word_degree(w, deg) <= d)
                .map(|(w, v)| (w.clone(), v.clone()))
                .collect(),
        }
    }

    /// Text form with generator powers grouped, e.g. `2*e h^2 f - h`.
    pub fn format(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_word(w, labels);
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

pub fn word_degree(w: &[u32], deg: &[i64]) -> i64 {
    w.iter().map(|&i| deg[i as usize]).sum()
}

pub fn format_word(w: &[u32], labels: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.len() {
        let mut j = i;
        while j < w.len() && w[j] == w[i] {
            j += 1;
        }
        let name = &labels[w[i] as usize];
        if j - i == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
    parts.join(" ")
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: Rat,
    word: Word,
}

impl Serialize for NCPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(w, c)| TermRepr {
                coeff: c.clone(),
                word: w.clone(),
            })
            .collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for NCPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<TermRepr> = Vec::deserialize(d)?;
        let mut p = NCPoly::zero();
        for t in v {
            if !is_normal(&t.word) {
                return Err(serde::de::Error::custom(format!(
                    "word {:?} is not in normal form",
                    t.word
                )));
            }
            p.add_term(t.word, t.coeff);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_bottom_element() {
        assert!(Degree::NegInfinity < Degree::Finite(-100));
        assert_eq!(NCPoly::zero().standard_degree(), Degree::NegInfinity);
        assert_eq!(NCPoly::one().standard_degree(), Degree::Finite(0));
        assert_eq!(Degree::NegInfinity + Degree::Finite(3), Degree::NegInfinity);
    }

    #[test]
    fn json_terms_roundtrip() {
        let mut p = NCPoly::zero();
        p.add_term(vec![2, 0], Rat::new(3, 2));
        p.add_term(vec![1], Rat::from(-1));
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, r#"[{"coeff":"-1","word":[1]},{"coeff":"3/2","word":[2,0]}]"#);
        let back: NCPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<NCPoly>(r#"[{"coeff":"1","word":[0,2]}]"#).is_err());
    }

    #[test]
    fn text_form_groups_powers() {
        let labels: Vec<String> = ["f", "h", "e"].iter().map(|s| s.to_string()).collect();
        let mut p = NCPoly::zero();
        p.add_term(vec![2, 1, 1, 0], Rat::from(2));
        p.add_term(vec![1], Rat::from(-1));
        assert_eq!(p.format(&labels), "2*e h^2 f - h");
    }
}
