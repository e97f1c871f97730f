use super::checks::monomials_up_to;
use super::context::StarContext;
use crate::error::{Error, Result};
use crate::exact::{kernel, solve, Rat, SparseMat};
use crate::liealg::algebra::mat_mul;
use crate::liealg::{LieAlgebraData, Matrix};
use crate::poly::Poly;
use crate::report::CheckReport;

fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

fn transpose(a: &Matrix) -> Matrix {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Quadratic Hamiltonians of a linear symplectic action. The matrices
/// `R_i` act on vectors, so coordinate functions transform by the
/// derivation `xi_i . x_a = -sum_b R_i[a][b] x_b`; the Hamiltonian
/// `H_i = 1/2 x^T P^{-1} R_i x` satisfies `{H_i, f} = xi_i . f`.
#[derive(Debug, Clone)]
pub struct QuantumComoment {
    ctx: StarContext,
    algebra: LieAlgebraData,
    rep: Vec<Matrix>,
    hamiltonians: Vec<Poly>,
}

impl QuantumComoment {
    pub fn new(ctx: StarContext, algebra: &LieAlgebraData, rep: Vec<Matrix>) -> Result<Self> {
        let n = ctx.dim();
        if rep.len() != algebra.dim || rep.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
            return Err(Error::usage(format!(
                "need one {n}x{n} matrix per basis element of the algebra"
            )));
        }
        if !ctx.is_nondegenerate() {
            return Err(Error::domain("bivector is degenerate"));
        }
        for i in 0..algebra.dim {
            for j in i + 1..algebra.dim {
                let mut want = vec![vec![Rat::zero(); n]; n];
                for (k, c) in &algebra.bracket[i][j] {
                    for (a, row) in want.iter_mut().enumerate() {
                        for (b, x) in row.iter_mut().enumerate() {
                            *x += c * &rep[*k][a][b];
                        }
                    }
                }
                let got = sub(&mat_mul(&rep[i], &rep[j]), &mat_mul(&rep[j], &rep[i]));
                if got != want {
                    return Err(Error::domain(format!(
                        "matrices do not represent [{}, {}]",
                        algebra.labels[i], algebra.labels[j]
                    )));
                }
            }
        }
        let omega = inverse(ctx.bivector())?;
        let mut hamiltonians = Vec::with_capacity(rep.len());
        for (i, r) in rep.iter().enumerate() {
            let s = mat_mul(&omega, r);
            if s != transpose(&s) {
                return Err(Error::domain(format!("{} does not preserve the symplectic form", algebra.labels[i])));
            }
            let mut h = ctx.zero();
            for (a, row) in s.iter().enumerate() {
                for (b, c) in row.iter().enumerate() {
                    h = h + (&ctx.var(a) * &ctx.var(b)).scale(&(c / &Rat::from(2)));
                }
            }
            hamiltonians.push(h);
        }
        Ok(QuantumComoment { ctx, algebra: algebra.clone(), rep, hamiltonians })
    }

    /// The defining representation of a matrix Lie algebra, with the
    /// bivector inverse to its invariant symplectic form. The form is
    /// scaled so the first nonzero entry of the bivector is 1; Darboux
    /// bivectors keep the names `x, p` (or `x1, p1, ...`), others use
    /// `v1, v2, ...`.
    pub fn defining(algebra: &LieAlgebraData) -> Result<Self> {
        let rep = algebra
            .matrices
            .clone()
            .ok_or_else(|| Error::domain("algebra has no matrix realization"))?;
        let n = rep[0].len();
        if n % 2 != 0 {
            return Err(Error::domain("defining representation has odd dimension"));
        }
        let p = invariant_bivector(&rep)?;
        let darboux = StarContext::darboux(n / 2);
        let ctx = if darboux.bivector() == p.as_slice() {
            darboux
        } else {
            StarContext::new((1..=n).map(|i| format!("v{i}")).collect(), vec![1; n], p, 2)?
        };
        QuantumComoment::new(ctx, algebra, rep)
    }

    pub fn context(&self) -> &StarContext {
        &self.ctx
    }

    pub fn algebra(&self) -> &LieAlgebraData {
        &self.algebra
    }

    pub fn hamiltonians(&self) -> &[Poly] {
        &self.hamiltonians
    }

    /// `H_xi` for a coordinate vector `xi`; linear in `xi`.
    pub fn hamiltonian(&self, xi: &[Rat]) -> Poly {
        let mut h = self.ctx.zero();
        for (c, hi) in xi.iter().zip(&self.hamiltonians) {
            if !c.is_zero() {
                h = h + hi.scale(c);
            }
        }
        h
    }

    /// The derivation `xi . f` computed from the matrices alone.
    pub fn derivation(&self, xi: &[Rat], f: &Poly) -> Poly {
        let n = self.ctx.dim();
        let mut out = self.ctx.zero();
        for a in 0..n {
            let mut image = self.ctx.zero();
            for (k, c) in xi.iter().enumerate() {
                for b in 0..n {
                    let v = c * &self.rep[k][a][b];
                    if !v.is_zero() {
                        image = image - self.ctx.var(b).scale(&v);
                    }
                }
            }
            out = out + &image * &f.derivative(a, 1);
        }
        out
    }

    /// `[H_i, f] = xi_i . f` at `hbar = 1` for every basis element and every
    /// monomial of degree at most `bound`.
    pub fn check_derivations(&self, bound: u32) -> Result<CheckReport> {
        const NAME: &str = "comoment-derivation";
        let n = self.ctx.dim();
        let one = Rat::one();
        let mut cases = 0;
        for e in monomials_up_to(n, bound) {
            let mut e = e;
            e.push(0);
            let f = Poly::monomial(e, Rat::one());
            for i in 0..self.algebra.dim {
                cases += 1;
                let lhs = self.ctx.at_hbar(&self.ctx.commutator(&self.hamiltonians[i], &f)?, &one);
                let rhs = self.derivation(&self.algebra.basis_vector(i), &f);
                if lhs != rhs {
                    return Ok(CheckReport::fail(
                        NAME,
                        cases,
                        format!(
                            "[H_{}, {}] = {} but the action gives {}",
                            self.algebra.labels[i],
                            self.ctx.format(&f),
                            self.ctx.format(&lhs),
                            self.ctx.format(&rhs)
                        ),
                    ));
                }
            }
        }
        Ok(CheckReport::pass(NAME, cases))
    }

    /// `[H_i, H_j] = H_[i,j]` at `hbar = 1` on all basis pairs.
    pub fn check_homomorphism(&self) -> Result<CheckReport> {
        const NAME: &str = "comoment-homomorphism";
        let d = self.algebra.dim;
        let one = Rat::one();
        for i in 0..d {
            for j in 0..d {
                let lhs = self.ctx.at_hbar(&self.ctx.commutator(&self.hamiltonians[i], &self.hamiltonians[j])?, &one);
                let rhs = self.hamiltonian(&self.algebra.bracket(&self.algebra.basis_vector(i), &self.algebra.basis_vector(j)));
                if lhs != rhs {
                    return Ok(CheckReport::fail(
                        NAME,
                        i * d + j + 1,
                        format!(
                            "[H_{a}, H_{b}] = {} but H_[{a},{b}] = {}",
                            self.ctx.format(&lhs),
                            self.ctx.format(&rhs),
                            a = self.algebra.labels[i],
                            b = self.algebra.labels[j]
                        ),
                    ));
                }
            }
        }
        Ok(CheckReport::pass(NAME, d * d))
    }
}

fn inverse(m: &[Vec<Rat>]) -> Result<Matrix> {
    let n = m.len();
    let mut a = SparseMat::zeros(n, n);
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            a.set(i, j, c.clone());
        }
    }
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[k] = Rat::one();
        cols.push(solve(&a, &e)?.ok_or_else(|| Error::domain("bivector is degenerate"))?);
    }
    Ok(transpose(&cols))
}

/// The bivector `P` of the unique invariant symplectic form `omega`, i.e.
/// `omega R` symmetric for every matrix `R`, with `P = omega^-1`.
fn invariant_bivector(rep: &[Matrix]) -> Result<Matrix> {
    let n = rep[0].len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    // omega_{ab} = w_k for (a, b) = pairs[k], a < b
    let entry = |a: usize, b: usize| -> Option<(usize, Rat)> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some((pairs.iter().position(|&x| x == (a, b)).unwrap(), Rat::one())),
            std::cmp::Ordering::Greater => Some((pairs.iter().position(|&x| x == (b, a)).unwrap(), -Rat::one())),
            std::cmp::Ordering::Equal => None,
        }
    };
    let mut rows: Vec<Vec<(usize, Rat)>> = Vec::new();
    for r in rep {
        // (omega R)_{cd} - (omega R)_{dc} = sum_a omega_{ca} R_{ad} - omega_{da} R_{ac}
        for (c, d) in &pairs {
            let mut row = vec![Rat::zero(); pairs.len()];
            for a in 0..n {
                if let Some((k, s)) = entry(*c, a) {
                    row[k] += &s * &r[a][*d];
                }
                if let Some((k, s)) = entry(*d, a) {
                    row[k] -= &s * &r[a][*c];
                }
            }
            rows.push(row.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect());
        }
    }
    let mut m = SparseMat::zeros(rows.len(), pairs.len());
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row {
            m.set(i, *j, v.clone());
        }
    }
    let ker = kernel(&m);
    if ker.len() != 1 {
        return Err(Error::domain(format!(
            "representation has {} independent invariant antisymmetric forms, expected one",
            ker.len()
        )));
    }
    let mut omega = vec![vec![Rat::zero(); n]; n];
    for (k, &(a, b)) in pairs.iter().enumerate() {
        omega[a][b] = ker[0][k].clone();
        omega[b][a] = -&ker[0][k];
    }
    let mut p = inverse(&omega)?;
    let lead = p.iter().flatten().find(|v| !v.is_zero()).expect("inverse is nonzero").recip();
    for v in p.iter_mut().flatten() {
        *v = &*v * &lead;
    }
    Ok(p)
}
