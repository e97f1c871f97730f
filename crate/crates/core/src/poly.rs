//! Commutative polynomials over the rationals in a fixed number of variables.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::Rat;

pub type Exps = Vec<u32>;

/// Polynomial as a map from exponent vectors to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exps, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(e, Rat::one())
    }

    pub fn monomial(exps: Exps, c: Rat) -> Self {
        let mut p = Poly::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exps, Rat)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exps, Rat> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Exps, Rat> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&a| a == 0)
    }

    pub fn add_term(&mut self, exps: Exps, c: Rat) {
        assert_eq!(exps.len(), self.nvars, "exponent vector of the wrong length");
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
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

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exps: &[u32], c: &Rat) -> Poly {
        let mut out = Poly::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            let ne: Exps = e.iter().zip(exps).map(|(a, b)| a + b).collect();
            out.terms.insert(ne, v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        self.terms.keys().map(|e| weight_of(e, weights)).max()
    }

    pub fn is_homogeneous(&self, weights: &[i64]) -> bool {
        let mut it = self.terms.keys().map(|e| weight_of(e, weights));
        match it.next() {
            None => true,
            Some(w) => it.all(|x| x == w),
        }
    }

    /// Weighted-homogeneous component of degree `d`.
    pub fn component(&self, weights: &[i64], d: i64) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| weight_of(e, weights) == d)
                .map(|(e, v)| (e.clone(), v.clone()))
                .collect(),
        }
    }

    /// `k`-th partial derivative in variable `i`.
    pub fn derivative(&self, i: usize, k: u32) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, v) in &self.terms {
            if e[i] < k {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= k;
            out.terms.insert(ne, v * falling(e[i], k));
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`; all images share a ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars), p.clone()]).collect();
        let mut out = Poly::zero(target);
        for (e, v) in &self.terms {
            let mut t = Poly::constant(target, v.clone());
            for (i, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                while powers[i].len() <= a as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][a as usize];
            }
            out = out + t;
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, v)| {
                let mut t = v.clone();
                for (x, &a) in point.iter().zip(e) {
                    if a > 0 {
                        t *= x.pow(a);
                    }
                }
                t
            })
            .sum()
    }

    /// Sets variable `i` to the constant `c`, keeping the ring.
    pub fn specialize(&self, i: usize, c: &Rat) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, v) in &self.terms {
            let mut ne = e.clone();
            let a = ne[i];
            ne[i] = 0;
            out.add_term(ne, v * &c.pow(a));
        }
        out
    }

    /// Embeds into a ring with more variables, mapping variable `i` to
    /// `positions[i]`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Poly {
        let mut out = Poly::zero(nvars);
        for (e, v) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &a) in e.iter().enumerate() {
                ne[positions[i]] += a;
            }
            out.add_term(ne, v.clone());
        }
        out
    }

    /// Variables that occur with a positive exponent.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    /// Reads the text syntax accepted by `format`.
    pub fn parse(src: &str, names: &[String]) -> crate::error::Result<Poly> {
        let n = names.len();
        let e = crate::parse::parse_expr(src, names)?;
        Ok(crate::parse::eval_expr(
            &e,
            &|r| Poly::constant(n, r.clone()),
            &|i| Poly::var(n, i),
            &|a, b| a + b,
            &|a, b| a * b,
        ))
    }

    /// Human-readable form such as `3/2*x^2*p + hbar*x`.
    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        // highest total degree first reads naturally
        let mut terms: Vec<(&Exps, &Rat)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono = format_monomial(e, names);
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                let _ = write!(s, "{abs}");
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{abs}*{mono}");
            }
        }
        s
    }
}

/// Number of monomials of each weighted degree `0..=max` in variables of
/// the given positive weights.
pub fn monomial_counts(weights: &[i64], max: i64) -> Vec<u64> {
    assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
    if max < 0 {
        return Vec::new();
    }
    let mut counts = vec![0u64; max as usize + 1];
    counts[0] = 1;
    for &w in weights {
        for d in w as usize..counts.len() {
            counts[d] += counts[d - w as usize];
        }
    }
    counts
}

pub fn weight_of(e: &[u32], weights: &[i64]) -> i64 {
    e.iter().zip(weights).map(|(&a, &w)| a as i64 * w).sum()
}

fn falling(n: u32, k: u32) -> Rat {
    (0..k).map(|t| Rat::from(n - t)).product()
}

pub fn format_monomial(e: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &a) in e.iter().enumerate() {
        match a {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], a)),
        }
    }
    parts.join("*")
}

impl<'b> Add<&'b Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &'b Poly) -> Poly {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (e, v) in rhs.terms {
            self.add_term(e, v);
        }
        self
    }
}

impl<'b> Sub<&'b Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &'b Poly) -> Poly {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(e.clone(), -v);
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl<'b> Mul<&'b Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &'b Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomials from different rings");
        let mut acc: BTreeMap<Exps, Rat> = BTreeMap::new();
        for (ea, va) in &self.terms {
            for (eb, vb) in &rhs.terms {
                let e: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(Rat::zero) += va * vb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly {
            nvars: self.nvars,
            terms: acc,
        }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Rat::from(-1))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Rat::from(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_monomial_counts() {
        assert_eq!(monomial_counts(&[4], 8), vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
        assert_eq!(monomial_counts(&[1, 1], 3), vec![1, 2, 3, 4]);
        assert_eq!(monomial_counts(&[2, 3], 6), vec![1, 0, 1, 1, 1, 1, 2]);
        assert!(monomial_counts(&[1], -1).is_empty());
    }
    use crate::exact::rat;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn arithmetic_and_format() {
        let x = Poly::var(2, 0);
        let p = Poly::var(2, 1);
        let f = &(&x * &x) * &p.scale(&rat(3, 2)) + x.clone();
        assert_eq!(f.format(&names(&["x", "p"])), "3/2*x^2*p + x");
        let g = &f - &f;
        assert!(g.is_zero());
        assert_eq!((&x + &p).pow(2).len(), 3);
    }

    #[test]
    fn derivative_and_substitution() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let f = x.pow(3) * y.clone();
        assert_eq!(f.derivative(0, 2), (x.clone() * y.clone()).scale(&Rat::from(6)));
        let t = Poly::var(1, 0);
        let s = f.substitute(&[t.clone(), Poly::constant(1, Rat::from(2))]);
        assert_eq!(s, t.pow(3).scale(&Rat::from(2)));
        assert_eq!(f.eval(&[Rat::from(2), Rat::from(5)]), Rat::from(40));
    }

    #[test]
    fn weights_and_components() {
        let w = [4, 2];
        let e = Poly::var(2, 0);
        let h = Poly::var(2, 1);
        let q = e.scale(&Rat::from(2)) + h.pow(2);
        assert!(q.is_homogeneous(&w));
        assert_eq!(q.weighted_degree(&w), Some(4));
        let r = q.clone() + h.clone();
        assert!(!r.is_homogeneous(&w));
        assert_eq!(r.component(&w, 2), h);
    }
}
