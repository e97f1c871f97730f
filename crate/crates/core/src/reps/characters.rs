use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::ideals::{buchberger, GradedIdeal, MonomialOrder};
use crate::pbw::NCPoly;
use crate::poly::Poly;
use crate::report::CheckStatus;
use crate::walg::WPresentation;

/// A one-dimensional module: a rational value for every generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Character {
    pub values: BTreeMap<String, Rat>,
}

/// A branch of the solution set where a generator takes an irrational value:
/// the squarefree cofactor left after removing rational roots, with the
/// values already fixed on the branch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eliminant {
    pub variable: String,
    pub polynomial: String,
    pub assigned: BTreeMap<String, Rat>,
}

/// The affine variety of characters, described by a lex Groebner basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterFamily {
    pub dimension: i64,
    /// A maximal set of generators that can be chosen freely.
    pub free: Vec<String>,
    pub equations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterReport {
    pub status: CheckStatus,
    /// Relations were only imposed among generator brackets of degree at
    /// most this bound.
    #[serde(rename = "verifiedThroughDegree")]
    pub verified_through: i64,
    pub generators: Vec<String>,
    pub relations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<CharacterFamily>,
    /// Every rational solution of a zero-dimensional system, or sample
    /// points of a positive-dimensional one.
    pub characters: Vec<Character>,
    pub eliminants: Vec<Eliminant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Commutative image of an ordered polynomial in `k` generators.
pub fn abelianize(p: &NCPoly, k: usize) -> Poly {
    let mut out = Poly::zero(k);
    for (w, c) in p.terms() {
        let mut e = vec![0u32; k];
        for &l in w {
            e[l as usize] += 1;
        }
        out.add_term(e, c.clone());
    }
    out
}

/// Characters of a truncated presentation: each relation `[G_i, G_j] =
/// P_ij` becomes the equation `P_ij = 0`.
pub fn find_characters(pres: &WPresentation) -> Result<CharacterReport> {
    find_characters_with(pres, &[])
}

/// Characters that also kill `extra`, ordered polynomials in the
/// generators (e.g. images of elements of an ideal).
pub fn find_characters_with(pres: &WPresentation, extra: &[NCPoly]) -> Result<CharacterReport> {
    let names: Vec<String> = pres.generators.iter().map(|g| g.name.clone()).collect();
    let k = names.len();
    if extra.iter().any(|p| p.max_index().is_some_and(|m| m as usize >= k)) {
        return Err(Error::usage("extra relation uses a generator outside the presentation"));
    }
    let relations = pres.relations();
    let mut equations: Vec<Poly> = relations.iter().map(|(_, p)| abelianize(p, k)).collect();
    equations.extend(extra.iter().map(|p| abelianize(p, k)));
    equations.retain(|p| !p.is_zero());
    let solution = solve_system(&names, &equations)?;
    for ch in &solution.characters {
        let point: Vec<Rat> = names.iter().map(|n| ch.values[n].clone()).collect();
        if let Some(p) = equations.iter().find(|p| !p.eval(&point).is_zero()) {
            return Err(Error::consistency(format!(
                "solution does not satisfy {}",
                p.format(&names)
            )));
        }
    }
    let omitted = !pres.omitted_pairs.is_empty();
    let found = !solution.characters.is_empty() || !solution.eliminants.is_empty();
    let (status, detail) = match (found, omitted) {
        (false, _) => (CheckStatus::Fail, Some("the relations admit no one-dimensional module".to_string())),
        (true, true) => (
            CheckStatus::Inconclusive,
            Some(format!("{} generator brackets lie beyond the truncation", pres.omitted_pairs.len())),
        ),
        (true, false) => (CheckStatus::Pass, None),
    };
    Ok(CharacterReport {
        status,
        verified_through: pres.truncation,
        generators: names,
        relations: equations.len(),
        family: solution.family,
        characters: solution.characters,
        eliminants: solution.eliminants,
        detail,
    })
}

/// Solutions of a polynomial system over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solutions {
    pub family: Option<CharacterFamily>,
    pub characters: Vec<Character>,
    pub eliminants: Vec<Eliminant>,
}

/// Values tried, in order, for a coordinate left free on a branch.
const SAMPLE_VALUES: [i64; 6] = [0, 1, -1, 2, -2, 3];
/// Bound on the number of rational points collected.
const MAX_POINTS: usize = 64;

/// Solves `equations = 0` in the named variables: a lex Groebner basis
/// describes the variety, and back-substitution from the last variable
/// collects rational points.
pub fn solve_system(names: &[String], equations: &[Poly]) -> Result<Solutions> {
    let n = names.len();
    let ideal = GradedIdeal::new(names.to_vec(), MonomialOrder::Lex, equations)?;
    if ideal.is_unit() {
        return Ok(Solutions { family: None, characters: Vec::new(), eliminants: Vec::new() });
    }
    let lms = ideal.leading_monomials();
    let free = maximal_independent_set(&lms, n);
    let family = CharacterFamily {
        dimension: free.len() as i64,
        free: free.iter().map(|&i| names[i].clone()).collect(),
        equations: ideal.generator_strings(),
    };
    let mut search = Search { names, points: Vec::new(), eliminants: Vec::new() };
    let assigned = vec![None; n];
    search.descend(ideal.basis().to_vec(), n, assigned)?;
    let mut characters = search.points;
    characters.sort();
    characters.dedup();
    Ok(Solutions { family: Some(family), characters, eliminants: search.eliminants })
}

/// Largest set of variables containing the support of no leading monomial;
/// ties prefer later variables, which lex orders eliminate last.
fn maximal_independent_set(lms: &[Vec<u32>], n: usize) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for mask in 0u64..(1u64 << n) {
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let independent = lms.iter().all(|e| e.iter().enumerate().any(|(i, &x)| x > 0 && mask >> i & 1 == 0));
        if !independent {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => set.len() > b.len() || (set.len() == b.len() && set.iter().rev().gt(b.iter().rev())),
        };
        if better {
            best = Some(set);
        }
    }
    best.unwrap_or_default()
}

struct Search<'a> {
    names: &'a [String],
    points: Vec<Character>,
    eliminants: Vec<Eliminant>,
}

impl Search<'_> {
    fn assigned_map(&self, assigned: &[Option<Rat>]) -> BTreeMap<String, Rat> {
        assigned
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.clone().map(|v| (self.names[i].clone(), v)))
            .collect()
    }

    /// Fixes variables `0..level` given values for all later ones; returns
    /// whether a rational point was reached.
    fn descend(&mut self, system: Vec<Poly>, level: usize, assigned: Vec<Option<Rat>>) -> Result<bool> {
        let basis = buchberger(&system, &MonomialOrder::Lex)?;
        if basis.iter().any(|p| p.is_constant() && !p.is_zero()) {
            return Ok(false);
        }
        if level == 0 {
            self.points.push(Character { values: self.assigned_map(&assigned).into_iter().collect() });
            return Ok(true);
        }
        if self.points.len() >= MAX_POINTS {
            return Ok(false);
        }
        let v = level - 1;
        let univariate = basis
            .iter()
            .find(|p| !p.is_constant() && p.support_vars().iter().all(|&i| i == v));
        let branch = |value: &Rat, assigned: &[Option<Rat>]| {
            let mut a = assigned.to_vec();
            a[v] = Some(value.clone());
            let next: Vec<Poly> = basis.iter().map(|p| p.specialize(v, value)).filter(|p| !p.is_zero()).collect();
            (next, a)
        };
        match univariate {
            Some(u) => {
                let coeffs = univariate_coeffs(u, v);
                let (roots, cofactor) = rational_roots(&coeffs);
                if cofactor.len() > 1 {
                    let var = vec![self.names[v].clone()];
                    self.eliminants.push(Eliminant {
                        variable: self.names[v].clone(),
                        polynomial: Poly::from_terms(
                            1,
                            cofactor.iter().enumerate().map(|(d, c)| (vec![d as u32], c.clone())),
                        )
                        .format(&var),
                        assigned: self.assigned_map(&assigned),
                    });
                }
                let mut found = false;
                for r in roots {
                    let (next, a) = branch(&r, &assigned);
                    found |= self.descend(next, v, a)?;
                }
                Ok(found)
            }
            None => {
                for s in SAMPLE_VALUES {
                    let (next, a) = branch(&Rat::from(s), &assigned);
                    if self.descend(next, v, a)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }
}

/// Coefficients, ascending in degree, of a polynomial in variable `v` only.
fn univariate_coeffs(p: &Poly, v: usize) -> Vec<Rat> {
    let deg = p.terms().keys().map(|e| e[v]).max().unwrap_or(0) as usize;
    let mut out = vec![Rat::zero(); deg + 1];
    for (e, c) in p.terms() {
        out[e[v] as usize] += c;
    }
    out
}

fn horner(coeffs: &[Rat], x: &Rat) -> Rat {
    coeffs.iter().rev().fold(Rat::zero(), |acc, c| &(&acc * x) + c)
}

/// Divides by `x - r`, which must be a root.
fn deflate(coeffs: &[Rat], r: &Rat) -> Vec<Rat> {
    let n = coeffs.len() - 1;
    let mut out = vec![Rat::zero(); n];
    let mut carry = Rat::zero();
    for d in (0..n).rev() {
        carry = &coeffs[d + 1] + &(&carry * r);
        out[d] = carry.clone();
    }
    out
}

/// Positive divisors of `|n|` by trial division; `None` when `|n|` is too
/// large to factor this way.
fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64().filter(|&n| n <= 1_000_000_000_000)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Distinct rational roots in ascending order, and the cofactor (ascending
/// coefficients) left after dividing out every rational root with its
/// multiplicity. Roots are searched with the rational root theorem.
pub fn rational_roots(coeffs: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut p: Vec<Rat> = coeffs.to_vec();
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let mut roots = Vec::new();
    if p.len() > 1 && p[0].is_zero() {
        roots.push(Rat::zero());
        while p.len() > 1 && p[0].is_zero() {
            p.remove(0);
        }
    }
    if p.len() <= 1 {
        return (roots, p);
    }
    let l = Rat::denominator_lcm(p.iter());
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let (a0, an) = (&ints[0], ints.last().unwrap());
    if let (Some(ps), Some(qs)) = (divisors(a0), divisors(an)) {
        let mut candidates: Vec<Rat> = Vec::new();
        for &num in &ps {
            for &den in &qs {
                if num.gcd(&den) == 1 {
                    candidates.push(Rat::new(num as i64, den as i64));
                    candidates.push(Rat::new(-(num as i64), den as i64));
                }
            }
        }
        for c in candidates {
            if p.len() > 1 && horner(&p, &c).is_zero() {
                while p.len() > 1 && horner(&p, &c).is_zero() {
                    p = deflate(&p, &c);
                }
                roots.push(c);
            }
        }
    }
    roots.sort();
    let lead = p.last().unwrap().recip();
    let p = p.iter().map(|c| c * &lead).collect();
    (roots, p)
}
