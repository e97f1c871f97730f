use serde::Serialize;

use super::groebner::{buchberger, leading_monomial, reduce_modulo};
use super::hilbert::{dimension_and_degree, hilbert_function, hilbert_numerator, independent_set_dimension};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::poly::{Exps, Poly};

/// An ideal of a polynomial ring held by its reduced Groebner basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIdeal {
    names: Vec<String>,
    order: MonomialOrder,
    basis: Vec<Poly>,
}

impl GradedIdeal {
    pub fn new(names: Vec<String>, order: MonomialOrder, gens: &[Poly]) -> Result<Self> {
        let n = names.len();
        if gens.iter().any(|g| g.nvars() != n) {
            return Err(Error::usage("generator ring does not match the variable list"));
        }
        if order.weights(n).len() != n {
            return Err(Error::usage("order weights do not match the variable list"));
        }
        let basis = buchberger(gens, &order)?;
        Ok(GradedIdeal { names, order, basis })
    }

    /// Ideal with the weighted degrevlex order for the given weights.
    pub fn with_weights(names: Vec<String>, weights: Vec<i64>, gens: &[Poly]) -> Result<Self> {
        if weights.iter().any(|&w| w <= 0) {
            return Err(Error::usage("grading weights must be positive"));
        }
        GradedIdeal::new(names, MonomialOrder::degrevlex(weights), gens)
    }

    /// Parses generators written in the text syntax.
    pub fn parse(names: Vec<String>, weights: Vec<i64>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|src| Poly::parse(src, &names)).collect::<Result<Vec<_>>>()?;
        GradedIdeal::with_weights(names, weights, &polys)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn weights(&self) -> Vec<i64> {
        self.order.weights(self.nvars())
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.is_constant())
    }

    pub fn leading_monomials(&self) -> Vec<Exps> {
        self.basis
            .iter()
            .filter_map(|g| leading_monomial(g, &self.order))
            .collect()
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        reduce_modulo(p, &self.basis, &self.order)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn contains_ideal(&self, other: &GradedIdeal) -> bool {
        other.basis.iter().all(|g| self.contains(g))
    }

    /// `dim_K` of the degree-`d` part of `K[x]/LT(I)` for `d = 0..=bound`,
    /// graded by the order weights. For ideals homogeneous in those
    /// weights this is the Hilbert function of `K[x]/I`.
    pub fn hilbert_function(&self, bound: i64) -> Vec<i64> {
        hilbert_function(&self.leading_monomials(), &self.weights(), bound)
    }

    pub fn hilbert_numerator(&self) -> Vec<i64> {
        hilbert_numerator(&self.leading_monomials(), &self.weights())
    }

    /// Krull dimension of `K[x]/I`; -1 for the unit ideal.
    pub fn dimension(&self) -> i64 {
        dimension_and_degree(&self.leading_monomials(), self.nvars()).0
    }

    /// Same dimension through maximal independent sets of variables.
    pub fn dimension_by_independent_sets(&self) -> i64 {
        independent_set_dimension(&self.leading_monomials(), self.nvars())
    }

    /// `dim_K K[x]/I` when finite.
    pub fn codimension(&self) -> Option<u64> {
        let (d, deg) = dimension_and_degree(&self.leading_monomials(), self.nvars());
        match d {
            -1 => Some(0),
            0 => Some(deg as u64),
            _ => None,
        }
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.basis.iter().map(|g| g.format(&self.names)).collect()
    }

    pub fn variety_report(&self) -> VarietyReport {
        let (dimension, degree) = dimension_and_degree(&self.leading_monomials(), self.nvars());
        let (kind, flag) = match dimension {
            -1 | 0 => (MultiplicityKind::Codimension, None),
            _ => (
                MultiplicityKind::LeadingCoefficient,
                Some("unverified-localization".to_string()),
            ),
        };
        VarietyReport {
            status: ReportStatus::Exact,
            dimension,
            multiplicity: degree,
            multiplicity_kind: kind,
            flag,
            component: format!("V({})", self.generator_strings().join(", ")),
        }
    }

    pub fn summary(&self, hilbert_bound: i64) -> IdealSummary {
        IdealSummary {
            variables: self.names.clone(),
            weights: self.weights(),
            order: self.order.tag().to_string(),
            generators: self.generator_strings(),
            hilbert: self.hilbert_function(hilbert_bound),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportStatus {
    Exact,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum MultiplicityKind {
    /// `dim_K` of the quotient of a zero-dimensional ideal.
    Codimension,
    /// Normalized leading Hilbert coefficient.
    LeadingCoefficient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarietyReport {
    pub status: ReportStatus,
    pub dimension: i64,
    #[serde(rename = "multiplicityAtComponent")]
    pub multiplicity: i64,
    #[serde(rename = "multiplicityKind")]
    pub multiplicity_kind: MultiplicityKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
    #[serde(rename = "componentIdealDescription")]
    pub component: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealSummary {
    pub variables: Vec<String>,
    pub weights: Vec<i64>,
    pub order: String,
    pub generators: Vec<String>,
    pub hilbert: Vec<i64>,
}
