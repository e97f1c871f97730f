use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::monomial_counts;
use crate::report::CheckReport;

/// Formal character of a graded `sl2`-module truncated in degree: the
/// multiplicity of `h`-weight `mu` in degree `d`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GradedCharacter {
    bound: i64,
    mults: BTreeMap<(i64, i64), i64>,
}

impl GradedCharacter {
    pub fn new(bound: i64) -> Self {
        GradedCharacter { bound, mults: BTreeMap::new() }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Adds `copies` of the irreducible `V(lambda)` in degree `d`.
    pub fn add_irreducible(&mut self, lambda: i64, degree: i64, copies: i64) {
        if degree > self.bound || copies == 0 {
            return;
        }
        for k in 0..=lambda {
            *self.mults.entry((degree, lambda - 2 * k)).or_insert(0) += copies;
        }
    }

    pub fn multiplicity(&self, degree: i64, weight: i64) -> i64 {
        self.mults.get(&(degree, weight)).copied().unwrap_or(0)
    }

    /// Character of the tensor product, truncated at the smaller bound.
    pub fn tensor(&self, other: &GradedCharacter) -> GradedCharacter {
        let bound = self.bound.min(other.bound);
        let mut out = GradedCharacter::new(bound);
        for (&(d1, w1), &a) in &self.mults {
            for (&(d2, w2), &b) in &other.mults {
                if d1 + d2 <= bound {
                    *out.mults.entry((d1 + d2, w1 + w2)).or_insert(0) += a * b;
                }
            }
        }
        out.mults.retain(|_, v| *v != 0);
        out
    }

    /// Multiplicity of `V(lambda)` in degree `d`: `m(lambda) - m(lambda+2)`.
    pub fn irreducible_multiplicity(&self, lambda: i64, degree: i64) -> i64 {
        self.multiplicity(degree, lambda) - self.multiplicity(degree, lambda + 2)
    }

    /// `dim` of the `lambda`-isotypic component in each degree `0..=bound`.
    pub fn isotypic_dims(&self, lambda: i64) -> Vec<i64> {
        (0..=self.bound).map(|d| (lambda + 1) * self.irreducible_multiplicity(lambda, d)).collect()
    }
}

/// `K[SL2]` for the left action, up to highest weight `max_lambda`, in
/// degree 0: by Peter-Weyl, `V(lambda)` occurs `lambda + 1` times.
pub fn group_algebra_character(max_lambda: i64, bound: i64) -> GradedCharacter {
    let mut c = GradedCharacter::new(bound);
    for lambda in 0..=max_lambda {
        c.add_irreducible(lambda, 0, lambda + 1);
    }
    c
}

/// `K[S]` with trivial action and polynomial generators in the given
/// degrees.
pub fn slice_character(degrees: &[i64], bound: i64) -> GradedCharacter {
    let mut c = GradedCharacter::new(bound);
    for (d, &n) in monomial_counts(degrees, bound).iter().enumerate() {
        c.add_irreducible(0, d as i64, n as i64);
    }
    c
}

/// Compares, for each `lambda` and each degree up to `bound`, the dimension
/// of the `lambda`-isotypic part of `K[X] = K[G] (x) K[S]` extracted from
/// its weight multiplicities with `dim K[G]_lambda * dim K[S]_d`.
pub fn check_isotypic(slice_degrees: &[i64], lambdas: &[i64], bound: i64) -> Result<CheckReport> {
    const NAME: &str = "isotypic-dimensions";
    if lambdas.iter().any(|&l| l < 0) || bound < 0 {
        return Err(Error::usage("weights and the degree bound must be nonnegative"));
    }
    let max = lambdas.iter().copied().max().unwrap_or(0);
    let x = group_algebra_character(max, bound).tensor(&slice_character(slice_degrees, bound));
    let counts = monomial_counts(slice_degrees, bound);
    let mut cases = 0;
    for &lambda in lambdas {
        let group = (lambda + 1) * (lambda + 1);
        for (d, got) in x.isotypic_dims(lambda).into_iter().enumerate() {
            cases += 1;
            let want = group * counts[d] as i64;
            if got != want {
                return Ok(CheckReport::fail(
                    NAME,
                    cases,
                    format!("lambda = {lambda}, degree {d}: K[X] has {got}, K[G] (x) K[S] has {want}"),
                ));
            }
        }
    }
    Ok(CheckReport::pass(NAME, cases))
}
