use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Rat, SparseMat};
use crate::poly::{Exps, Poly};

/// Flat quantization data: variables with grading weights and a constant
/// bivector `P`. Star polynomials live in the ring of the variables plus a
/// final central variable `hbar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarContext {
    names: Vec<String>,
    weights: Vec<i64>,
    bivector: Vec<Vec<Rat>>,
    /// The product lowers weight by `degree_k` per power of `hbar`.
    degree_k: i64,
    /// `sum_ab P^{ab} u_a v_b` in `2n` variables: `u` differentiates the
    /// left factor, `v` the right one.
    contraction: Poly,
}

/// One term of a star polynomial in JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarTerm {
    pub coeff: Rat,
    pub exponents: Vec<u32>,
    pub hbar: u32,
}

fn check_shape(names: &[String], weights: &[i64], bivector: &[Vec<Rat>]) -> Result<()> {
    let n = names.len();
    if weights.len() != n {
        return Err(Error::usage("one grading weight per variable is required"));
    }
    if bivector.len() != n || bivector.iter().any(|r| r.len() != n) {
        return Err(Error::usage(format!("bivector must be a {n}x{n} matrix")));
    }
    if names.iter().any(|s| s == "hbar") {
        return Err(Error::usage("`hbar` is reserved for the deformation parameter"));
    }
    Ok(())
}

impl StarContext {
    /// Context with an antisymmetric bivector.
    pub fn new(names: Vec<String>, weights: Vec<i64>, bivector: Vec<Vec<Rat>>, degree_k: i64) -> Result<Self> {
        check_shape(&names, &weights, &bivector)?;
        let ctx = StarContext::build(names, weights, bivector, degree_k);
        if let Some((a, b)) = ctx.antisymmetry_violation() {
            return Err(Error::domain(format!(
                "bivector is not antisymmetric at ({}, {})",
                ctx.names[a], ctx.names[b]
            )));
        }
        Ok(ctx)
    }

    /// Context without the antisymmetry requirement, for negative controls.
    pub fn unchecked(names: Vec<String>, weights: Vec<i64>, bivector: Vec<Vec<Rat>>, degree_k: i64) -> Result<Self> {
        check_shape(&names, &weights, &bivector)?;
        Ok(StarContext::build(names, weights, bivector, degree_k))
    }

    fn build(names: Vec<String>, weights: Vec<i64>, bivector: Vec<Vec<Rat>>, degree_k: i64) -> Self {
        let n = names.len();
        let mut contraction = Poly::zero(2 * n);
        for (a, row) in bivector.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                let mut e = vec![0; 2 * n];
                e[a] += 1;
                e[n + b] += 1;
                contraction.add_term(e, c.clone());
            }
        }
        StarContext { names, weights, bivector, degree_k, contraction }
    }

    /// Darboux coordinates `x1, p1, ..., xn, pn` with `P(x_i, p_i) = 1`,
    /// unit weights and `k = 2`; for one pair the names are `x, p`.
    pub fn darboux(pairs: usize) -> Self {
        let n = 2 * pairs;
        let mut names = Vec::with_capacity(n);
        for i in 1..=pairs {
            if pairs == 1 {
                names.extend(["x".to_string(), "p".to_string()]);
            } else {
                names.extend([format!("x{i}"), format!("p{i}")]);
            }
        }
        let mut p = vec![vec![Rat::zero(); n]; n];
        for i in 0..pairs {
            p[2 * i][2 * i + 1] = Rat::one();
            p[2 * i + 1][2 * i] = -Rat::one();
        }
        StarContext::new(names, vec![1; n], p, 2).expect("Darboux bivector is antisymmetric")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Variable names followed by `hbar`.
    pub fn ring_names(&self) -> Vec<String> {
        let mut v = self.names.clone();
        v.push("hbar".into());
        v
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn bivector(&self) -> &[Vec<Rat>] {
        &self.bivector
    }

    pub fn degree_k(&self) -> i64 {
        self.degree_k
    }

    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        (0..n)
            .flat_map(|a| (a..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.bivector[a][b] != -&self.bivector[b][a])
    }

    pub fn is_nondegenerate(&self) -> bool {
        let n = self.dim();
        let mut m = SparseMat::zeros(n, n);
        for (a, row) in self.bivector.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                m.set(a, b, c.clone());
            }
        }
        m.rank() == n
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.dim() + 1)
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.dim() + 1)
    }

    pub fn constant(&self, c: Rat) -> Poly {
        Poly::constant(self.dim() + 1, c)
    }

    pub fn var(&self, i: usize) -> Poly {
        assert!(i < self.dim(), "variable index out of range");
        Poly::var(self.dim() + 1, i)
    }

    pub fn hbar(&self) -> Poly {
        Poly::var(self.dim() + 1, self.dim())
    }

    /// Lifts a polynomial in the variables alone to the star ring.
    pub fn lift(&self, p: &Poly) -> Result<Poly> {
        if p.nvars() != self.dim() {
            return Err(Error::usage("polynomial ring does not match the context"));
        }
        let positions: Vec<usize> = (0..self.dim()).collect();
        Ok(p.embed(self.dim() + 1, &positions))
    }

    fn check(&self, f: &Poly) -> Result<()> {
        if f.nvars() != self.dim() + 1 {
            return Err(Error::usage(format!(
                "star polynomial has {} variables, the context expects {} plus hbar",
                f.nvars(),
                self.dim()
            )));
        }
        Ok(())
    }

    pub fn parse(&self, src: &str) -> Result<Poly> {
        Poly::parse(src, &self.ring_names())
    }

    pub fn format(&self, f: &Poly) -> String {
        f.format(&self.ring_names())
    }

    pub fn terms(&self, f: &Poly) -> Vec<StarTerm> {
        let n = self.dim();
        f.terms()
            .iter()
            .map(|(e, c)| StarTerm { coeff: c.clone(), exponents: e[..n].to_vec(), hbar: e[n] })
            .collect()
    }

    /// Sets `hbar` to `c`, keeping the ring.
    pub fn at_hbar(&self, f: &Poly, c: &Rat) -> Poly {
        f.specialize(self.dim(), c)
    }

    /// Coefficient of `hbar^j`, still in the star ring.
    pub fn hbar_coefficient(&self, f: &Poly, j: u32) -> Poly {
        let n = self.dim();
        Poly::from_terms(
            n + 1,
            f.terms().iter().filter(|(e, _)| e[n] == j).map(|(e, c)| {
                let mut e = e.clone();
                e[n] = 0;
                (e, c.clone())
            }),
        )
    }

    /// Degree in the variables, ignoring `hbar`; `None` for zero.
    pub fn space_degree(&self, f: &Poly) -> Option<u32> {
        let n = self.dim();
        f.terms().keys().map(|e| e[..n].iter().sum()).max()
    }

    /// `sum c d^alpha f d^beta g` over the terms `c u^alpha v^beta` of a
    /// bidifferential symbol.
    fn apply_bidifferential(&self, symbol: &Poly, f: &Poly, g: &Poly) -> Poly {
        let n = self.dim();
        let mut left: HashMap<Exps, Poly> = HashMap::new();
        let mut right: HashMap<Exps, Poly> = HashMap::new();
        let derive = |p: &Poly, alpha: &[u32]| {
            let mut d = p.clone();
            for (i, &a) in alpha.iter().enumerate() {
                if a > 0 && !d.is_zero() {
                    d = d.derivative(i, a);
                }
            }
            d
        };
        let mut out = self.zero();
        for (e, c) in symbol.terms() {
            let (alpha, beta) = (e[..n].to_vec(), e[n..].to_vec());
            let df = left.entry(alpha.clone()).or_insert_with(|| derive(f, &alpha)).clone();
            if df.is_zero() {
                continue;
            }
            let dg = right.entry(beta.clone()).or_insert_with(|| derive(g, &beta));
            if dg.is_zero() {
                continue;
            }
            out = out + (&df * dg).scale(c);
        }
        out
    }

    /// `P(f, g) = sum P^{ab} d_a f d_b g`.
    pub fn contract(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.check(f)?;
        self.check(g)?;
        Ok(self.apply_bidifferential(&self.contraction, f, g))
    }

    /// Bracket given by the bivector; the Poisson bracket when `P` is
    /// antisymmetric.
    pub fn poisson(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        self.contract(f, g)
    }

    /// The terms `D_j(f, g) = (1/2)^j / j! P^j(f, g)` of the expansion,
    /// `j = 0..=min(deg f, deg g)`; every later term vanishes because `P^j`
    /// differentiates each factor `j` times.
    pub fn expansion(&self, f: &Poly, g: &Poly) -> Result<Vec<Poly>> {
        self.check(f)?;
        self.check(g)?;
        let (df, dg) = match (self.space_degree(f), self.space_degree(g)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(vec![self.zero()]),
        };
        let mut out = vec![f * g];
        let mut power = Poly::one(2 * self.dim());
        let mut coeff = Rat::one();
        for j in 1..=df.min(dg) {
            power = &power * &self.contraction;
            coeff = &coeff / &Rat::from(2 * j as i64);
            out.push(self.apply_bidifferential(&power, f, g).scale(&coeff));
        }
        Ok(out)
    }

    /// Moyal product `f * g = sum_j hbar^j D_j(f, g)`.
    pub fn moyal(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        let terms = self.expansion(f, g)?;
        let mut out = self.zero();
        let mut h = self.one();
        for t in &terms {
            out = out + &h * t;
            h = &h * &self.hbar();
        }
        Ok(out)
    }

    pub fn commutator(&self, f: &Poly, g: &Poly) -> Result<Poly> {
        Ok(&self.moyal(f, g)? - &self.moyal(g, f)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_symbol_of_one_pair() {
        let c = StarContext::darboux(1);
        assert_eq!(c.contraction.format(&["ux".into(), "up".into(), "vx".into(), "vp".into()]), "ux*vp - up*vx");
    }

    #[test]
    fn rejects_bad_shapes() {
        let p = vec![vec![Rat::zero(); 2]; 2];
        assert!(matches!(StarContext::new(vec!["x".into()], vec![1], p.clone(), 2), Err(Error::Usage(_))));
        assert!(matches!(
            StarContext::new(vec!["x".into(), "hbar".into()], vec![1, 1], p, 2),
            Err(Error::Usage(_))
        ));
        let sym = vec![vec![Rat::zero(), Rat::one()], vec![Rat::one(), Rat::zero()]];
        assert!(matches!(
            StarContext::new(vec!["x".into(), "p".into()], vec![1, 1], sym.clone(), 2),
            Err(Error::Domain(_))
        ));
        assert!(StarContext::unchecked(vec!["x".into(), "p".into()], vec![1, 1], sym, 2).is_ok());
    }
}
