use serde::{Deserialize, Serialize};

use super::characters::Character;
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::liealg::algebra::mat_mul;
use crate::liealg::Matrix;
use crate::pbw::NCPoly;
use crate::report::CheckReport;
use crate::walg::WPresentation;

/// A finite-dimensional module given by one `dim x dim` matrix per
/// generator, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinModule {
    pub dim: usize,
    pub matrices: Vec<Matrix>,
}

impl FinModule {
    /// The zero module over `generators` generators.
    pub fn zero(generators: usize) -> Self {
        FinModule { dim: 0, matrices: vec![Vec::new(); generators] }
    }

    /// The one-dimensional module of a character.
    pub fn from_character(ch: &Character, names: &[String]) -> Result<Self> {
        let matrices = names
            .iter()
            .map(|n| {
                ch.values
                    .get(n)
                    .map(|v| vec![vec![v.clone()]])
                    .ok_or_else(|| Error::usage(format!("character has no value for {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FinModule { dim: 1, matrices })
    }

    pub fn check_shape(&self, generators: usize) -> Result<()> {
        if self.matrices.len() != generators {
            return Err(Error::usage(format!(
                "module has {} matrices, the presentation has {generators} generators",
                self.matrices.len()
            )));
        }
        if self.matrices.iter().any(|m| m.len() != self.dim || m.iter().any(|r| r.len() != self.dim)) {
            return Err(Error::usage(format!("every matrix must be {0}x{0}", self.dim)));
        }
        Ok(())
    }

    pub fn identity(&self) -> Matrix {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect())
            .collect()
    }

    /// The matrix of an ordered polynomial in the generators.
    pub fn evaluate(&self, p: &NCPoly) -> Matrix {
        let mut out = vec![vec![Rat::zero(); self.dim]; self.dim];
        for (w, c) in p.terms() {
            let m = w.iter().fold(self.identity(), |acc, &g| mat_mul(&acc, &self.matrices[g as usize]));
            for (row, mrow) in out.iter_mut().zip(&m) {
                for (x, y) in row.iter_mut().zip(mrow) {
                    *x += c * y;
                }
            }
        }
        out
    }

    /// `M v` for a vector of coordinates.
    pub fn apply(&self, g: usize, v: &[Rat]) -> Vec<Rat> {
        self.matrices[g]
            .iter()
            .map(|row| row.iter().zip(v).fold(Rat::zero(), |acc, (a, b)| &acc + &(a * b)))
            .collect()
    }
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    let (ab, ba) = (mat_mul(a, b), mat_mul(b, a));
    ab.iter().zip(&ba).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

/// Checks `[M_i, M_j] = P_ij(M)` for every stored relation and reports the
/// first violation. Relations beyond the truncation make a passing check
/// inconclusive.
pub fn verify_module(pres: &WPresentation, m: &FinModule) -> Result<CheckReport> {
    const NAME: &str = "module-relations";
    m.check_shape(pres.generators.len())?;
    let relations = pres.relations();
    for (k, ((i, j), p)) in relations.iter().enumerate() {
        if m.dim == 0 {
            break;
        }
        let lhs = commutator(&m.matrices[*i], &m.matrices[*j]);
        if lhs != m.evaluate(p) {
            let names: Vec<String> = pres.generators.iter().map(|g| g.name.clone()).collect();
            return Ok(CheckReport::fail(
                NAME,
                k + 1,
                format!("relation [{},{}] = {} is violated", names[*i], names[*j], p.format(&names)),
            ));
        }
    }
    if pres.omitted_pairs.is_empty() {
        Ok(CheckReport::pass(NAME, relations.len()))
    } else {
        Ok(CheckReport::inconclusive(
            NAME,
            relations.len(),
            format!("{} generator brackets lie beyond the truncation", pres.omitted_pairs.len()),
        ))
    }
}
