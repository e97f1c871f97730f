use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::algebra::LieAlgebraData;
use super::triple::SL2Triple;
use crate::error::{Error, Result};
use crate::exact::{kernel, solve, vecops, EchelonSpace, Rat, SparseMat};
use crate::poly::Poly;

/// A basis vector of `z_g(e)` with its `ad(h')`-weight and Kazhdan degree
/// (weight + 2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceVector {
    pub vector: Vec<Rat>,
    pub weight: i64,
    pub degree: i64,
    pub label: String,
}

/// An ordered basis of `g` made of `ad(h')`-weight vectors, ascending in
/// weight, with the basis of `y` placed before its complement inside
/// `g(-1)`. The first `m_count` vectors span `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    #[serde(skip)]
    pub algebra: Option<LieAlgebraData>,
    pub vectors: Vec<Vec<Rat>>,
    pub labels: Vec<String>,
    pub weights: Vec<i64>,
    #[serde(rename = "mCount")]
    pub m_count: usize,
    /// `<chi, v>` for each frame vector `v`.
    pub chi: Vec<Rat>,
}

impl Frame {
    /// The Lie algebra with structure constants in the frame basis.
    pub fn algebra(&self) -> &LieAlgebraData {
        self.algebra.as_ref().expect("frame algebra is built with the setup")
    }
}

/// Everything attached to a nilpotent element that the W-algebra
/// construction needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotentSetup {
    pub triple: SL2Triple,
    #[serde(rename = "hPrime")]
    pub h_prime: Vec<Rat>,
    pub grading: BTreeMap<i64, Vec<Vec<Rat>>>,
    pub chi: Vec<Rat>,
    /// Gram matrix of `omega_chi` on the stored basis of `g(-1)`.
    pub omega: Vec<Vec<Rat>>,
    pub y: Vec<Vec<Rat>>,
    pub m: Vec<Vec<Rat>>,
    pub n: Vec<Vec<Rat>>,
    #[serde(rename = "mPrime")]
    pub m_prime: Vec<(Vec<Rat>, Rat)>,
    #[serde(rename = "sliceBasis")]
    pub slice_basis: Vec<SliceVector>,
    /// Basis of `z_g(f)` dual to `slice_basis` under the form; these span
    /// the linear directions of the slice `e + z_g(f)`.
    #[serde(rename = "sliceDual")]
    pub slice_dual: Vec<Vec<Rat>>,
    pub frame: Frame,
}

fn bracket_matrix(g: &LieAlgebraData, x: &[Rat], basis: &[Vec<Rat>]) -> SparseMat {
    let cols: Vec<Vec<(usize, Rat)>> = basis
        .iter()
        .map(|b| vecops::to_sparse(&g.bracket(x, b)))
        .collect();
    SparseMat::from_columns(g.dim, &cols)
}

/// Subspace of `span(basis)` annihilated by `ad(x)`.
fn centralizer_in(g: &LieAlgebraData, x: &[Rat], basis: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    kernel(&bracket_matrix(g, x, basis))
        .into_iter()
        .map(|c| vecops::combine(g.dim, &c, basis))
        .collect()
}

/// Integer eigenspaces of `ad(x)`; fails unless `ad(x)` is diagonalizable
/// with integral spectrum.
pub fn integer_eigenspaces(g: &LieAlgebraData, x: &[Rat]) -> Result<BTreeMap<i64, Vec<Vec<Rat>>>> {
    let ad = g.ad_matrix(x);
    let mut bound = Rat::zero();
    for i in 0..g.dim {
        let s: Rat = (0..g.dim).map(|j| ad.get(i, j).abs()).sum();
        if s > bound {
            bound = s;
        }
    }
    let bound = (bound.numer() / bound.denom()).to_i64().unwrap_or(i64::MAX / 4) + 1;
    let mut spaces = BTreeMap::new();
    let mut total = 0;
    for lambda in -bound..=bound {
        let mut shifted = ad.clone();
        for i in 0..g.dim {
            let cur = shifted.get(i, i);
            shifted.set(i, i, cur - Rat::from(lambda));
        }
        let k = kernel(&shifted);
        if !k.is_empty() {
            total += k.len();
            spaces.insert(lambda, k);
        }
        if total == g.dim {
            break;
        }
    }
    if total != g.dim {
        return Err(Error::domain(
            "ad(h') is not diagonalizable with integer eigenvalues",
        ));
    }
    Ok(spaces)
}

fn omega_gram(g: &LieAlgebraData, chi_vec: &[Rat], basis: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| vecops::dot(chi_vec, &g.bracket(a, b)))
                .collect()
        })
        .collect()
}

/// Greedy lagrangian: repeatedly take the first vector of the echelon basis
/// of the skew-orthogonal of the current span that is not yet in the span.
fn greedy_lagrangian(gram: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let n = gram.len();
    let mut y: Vec<Vec<Rat>> = Vec::new();
    let mut span = EchelonSpace::new();
    while 2 * y.len() < n {
        let mut cons = SparseMat::zeros(y.len().max(1), n);
        for (r, v) in y.iter().enumerate() {
            for j in 0..n {
                let s: Rat = (0..n).map(|i| &v[i] * &gram[i][j]).sum();
                cons.set(r, j, s);
            }
        }
        let orth = kernel(&cons);
        let next = orth
            .into_iter()
            .find(|c| !span.contains(&vecops::to_sparse(c)))
            .expect("isotropic subspace of a symplectic space extends");
        span.insert(&vecops::to_sparse(&next));
        y.push(next);
    }
    y
}

fn label_for(g: &LieAlgebraData, v: &[Rat]) -> String {
    let d = g.describe(v);
    if d.contains(['+', '-', '*']) {
        format!("[{d}]")
    } else {
        d
    }
}

/// Options for [`build_setup`].
#[derive(Debug, Clone, Default)]
pub struct SetupOptions {
    pub h_prime: Option<Vec<Rat>>,
    /// Explicit lagrangian subspace of `g(-1)`, overriding the greedy choice.
    pub y: Option<Vec<Vec<Rat>>>,
}

pub fn build_setup(g: &LieAlgebraData, triple: &SL2Triple, opts: &SetupOptions) -> Result<NilpotentSetup> {
    triple.verify(g)?;
    let dim = g.dim;
    let h_prime = opts.h_prime.clone().unwrap_or_else(|| triple.h.clone());
    if g.bracket(&h_prime, &triple.e) != vecops::scale(&Rat::from(2), &triple.e) {
        return Err(Error::domain("h' must satisfy [h',e] = 2e"));
    }
    if !vecops::is_zero(&g.bracket(&h_prime, &triple.h)) {
        return Err(Error::domain("h' must commute with h"));
    }
    let grading = integer_eigenspaces(g, &h_prime)?;

    let mut slice_basis = Vec::new();
    let mut z_dim = 0;
    for (&w, basis) in &grading {
        let z = centralizer_in(g, &triple.e, basis);
        z_dim += z.len();
        if !z.is_empty() && w < 0 {
            return Err(Error::domain(
                "ad(h') has a negative eigenvalue on the centralizer of e",
            ));
        }
        for v in z {
            slice_basis.push(SliceVector {
                label: label_for(g, &v),
                vector: v,
                weight: w,
                degree: w + 2,
            });
        }
    }
    let full_z = kernel(&g.ad_matrix(&triple.e)).len();
    if z_dim != full_z {
        return Err(Error::consistency("centralizer of e is not ad(h')-graded"));
    }

    let chi: Vec<Rat> = (0..dim)
        .map(|j| g.form_eval(&triple.e, &g.basis_vector(j)))
        .collect();

    let gm1 = grading.get(&-1).cloned().unwrap_or_default();
    let omega = omega_gram(g, &chi, &gm1);
    let omega_rank = SparseMat::from_dense(&omega).rank();
    if !gm1.is_empty() && omega_rank != gm1.len() {
        return Err(Error::consistency("omega_chi is degenerate on g(-1)"));
    }

    let y: Vec<Vec<Rat>> = match &opts.y {
        Some(y) => {
            let in_gm1 = y.iter().all(|v| {
                let mut s = EchelonSpace::new();
                gm1.iter().for_each(|b| {
                    s.insert(&vecops::to_sparse(b));
                });
                s.contains(&vecops::to_sparse(v))
            });
            if !in_gm1 || 2 * y.len() != gm1.len() {
                return Err(Error::domain("y must be a half-dimensional subspace of g(-1)"));
            }
            for a in y {
                for b in y {
                    if !vecops::dot(&chi, &g.bracket(a, b)).is_zero() {
                        return Err(Error::domain("y is not isotropic for omega_chi"));
                    }
                }
            }
            y.clone()
        }
        None => greedy_lagrangian(&omega)
            .into_iter()
            .map(|c| vecops::combine(dim, &c, &gm1))
            .collect(),
    };

    // skew-orthogonal of y inside g(-1)
    let y_perp: Vec<Vec<Rat>> = if gm1.is_empty() {
        Vec::new()
    } else {
        let mut cons = SparseMat::zeros(y.len().max(1), gm1.len());
        for (r, v) in y.iter().enumerate() {
            for (j, b) in gm1.iter().enumerate() {
                cons.set(r, j, vecops::dot(&chi, &g.bracket(v, b)));
            }
        }
        kernel(&cons)
            .into_iter()
            .map(|c| vecops::combine(dim, &c, &gm1))
            .collect()
    };

    let low: Vec<Vec<Rat>> = grading
        .range(..=-2)
        .flat_map(|(_, b)| b.iter().cloned())
        .collect();
    let mut m = low.clone();
    m.extend(y.iter().cloned());
    let mut n = low;
    n.extend(y_perp);
    let m_prime: Vec<(Vec<Rat>, Rat)> = m
        .iter()
        .map(|v| (v.clone(), vecops::dot(&chi, v)))
        .collect();

    if 2 * m.len() != dim - z_dim {
        return Err(Error::consistency(format!(
            "dim m = {} but (dim g - dim z_g(e))/2 = {}",
            m.len(),
            (dim - z_dim) / 2
        )));
    }

    // frame: weights ascending, y before its complement in g(-1)
    let mut vectors = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    for (&w, basis) in &grading {
        if w == -1 {
            let mut span = EchelonSpace::new();
            for v in &y {
                span.insert(&vecops::to_sparse(v));
                vectors.push(v.clone());
                weights.push(-1);
            }
            for b in basis {
                if span.insert(&vecops::to_sparse(b)) {
                    vectors.push(b.clone());
                    weights.push(-1);
                }
            }
        } else {
            for b in basis {
                vectors.push(b.clone());
                weights.push(w);
            }
        }
    }
    let labels: Vec<String> = vectors.iter().map(|v| label_for(g, v)).collect();
    let frame_chi: Vec<Rat> = vectors.iter().map(|v| vecops::dot(&chi, v)).collect();
    let rebased = g.rebase(&vectors, labels.clone())?;
    let frame = Frame {
        algebra: Some(rebased),
        vectors,
        labels,
        weights,
        m_count: m.len(),
        chi: frame_chi,
    };

    // z_g(f), graded, then dualized against the slice basis
    let mut zf = Vec::new();
    for basis in grading.values() {
        zf.extend(centralizer_in(g, &triple.f, basis));
    }
    if zf.len() != slice_basis.len() {
        return Err(Error::consistency("dim z_g(f) != dim z_g(e)"));
    }
    let k = zf.len();
    let mut gram = SparseMat::zeros(k, k);
    for (a, s) in slice_basis.iter().enumerate() {
        for (b, z) in zf.iter().enumerate() {
            gram.set(a, b, g.form_eval(&s.vector, z));
        }
    }
    let mut slice_dual = Vec::with_capacity(k);
    for c in 0..k {
        let coeffs = solve(&gram, &vecops::unit(k, c))?
            .ok_or_else(|| Error::consistency("form pairs z_g(e) and z_g(f) degenerately"))?;
        slice_dual.push(vecops::combine(dim, &coeffs, &zf));
    }

    Ok(NilpotentSetup {
        triple: triple.clone(),
        h_prime,
        grading,
        chi,
        omega,
        y,
        m,
        n,
        m_prime,
        slice_basis,
        slice_dual,
        frame,
    })
}

/// Centralizer of the whole triple, `z(e,h,f)`.
pub fn triple_centralizer(g: &LieAlgebraData, t: &SL2Triple) -> Vec<Vec<Rat>> {
    let mut a = SparseMat::zeros(3 * g.dim, g.dim);
    for (blk, x) in [&t.e, &t.h, &t.f].into_iter().enumerate() {
        let ad = g.ad_matrix(x);
        for (&(i, j), v) in ad.entries() {
            a.set(blk * g.dim + i, j, v.clone());
        }
    }
    kernel(&a)
}

impl NilpotentSetup {
    pub fn dim_z(&self) -> usize {
        self.slice_basis.len()
    }

    pub fn slice_degrees(&self) -> Vec<i64> {
        self.slice_basis.iter().map(|s| s.degree).collect()
    }

    pub fn grading_dims(&self) -> BTreeMap<i64, usize> {
        self.grading.iter().map(|(w, b)| (*w, b.len())).collect()
    }

    /// Frame coordinate functions `x_k = (b_k, .)` restricted to the slice
    /// `e + sum t_i f_i`, where `f_i` runs over `slice_dual`. Coordinate
    /// `t_i` has weight `slice_degrees()[i]`.
    pub fn slice_parametrization(&self) -> Result<Vec<Poly>> {
        let fa = self.frame.algebra();
        let n = fa.dim;
        let k = self.slice_dual.len();
        let cols: Vec<Vec<(usize, Rat)>> = self.frame.vectors.iter().map(|v| vecops::to_sparse(v)).collect();
        let basis = SparseMat::from_columns(n, &cols);
        let in_frame = |v: &[Rat]| -> Result<Vec<Rat>> {
            solve(&basis, v)?.ok_or_else(|| Error::consistency("frame does not span g"))
        };
        let e = in_frame(&self.triple.e)?;
        let duals = self.slice_dual.iter().map(|v| in_frame(v)).collect::<Result<Vec<_>>>()?;
        let pair = |i: usize, x: &[Rat]| fa.form_eval(&vecops::unit(n, i), x);
        Ok((0..n)
            .map(|i| {
                let mut p = Poly::constant(k, pair(i, &e));
                for (t, d) in duals.iter().enumerate() {
                    p = &p + &Poly::var(k, t).scale(&pair(i, d));
                }
                p
            })
            .collect())
    }

    /// The nilpotent element in frame coordinates.
    pub fn e_in_frame(&self) -> Result<Vec<Rat>> {
        let n = self.frame.vectors.len();
        let cols: Vec<Vec<(usize, Rat)>> = self.frame.vectors.iter().map(|v| vecops::to_sparse(v)).collect();
        solve(&SparseMat::from_columns(n, &cols), &self.triple.e)?
            .ok_or_else(|| Error::consistency("frame does not span g"))
    }

    /// Recomputes the frame algebra after deserialization.
    pub fn rebuild_frame(&mut self, g: &LieAlgebraData) -> Result<()> {
        self.frame.algebra = Some(g.rebase(&self.frame.vectors, self.frame.labels.clone())?);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::algebra::{build_classical, TypeTag};
    use crate::liealg::triple::{jacobson_morozov, matrix_coords, partition_triple};

    fn e_of(g: &LieAlgebraData, terms: &[(&str, i64)]) -> Vec<Rat> {
        let mut v = vecops::zeros(g.dim);
        for (l, c) in terms {
            v[g.index_of(l).unwrap()] += Rat::from(*c);
        }
        v
    }

    fn check_invariants(g: &LieAlgebraData, s: &NilpotentSetup) {
        assert_eq!(2 * s.m.len(), g.dim - s.dim_z());
        for a in &s.m {
            for b in &s.m {
                assert!(vecops::dot(&s.chi, &g.bracket(a, b)).is_zero());
            }
        }
        for sv in &s.slice_basis {
            assert!(sv.weight >= 0);
            assert_eq!(
                g.bracket(&s.h_prime, &sv.vector),
                vecops::scale(&Rat::from(sv.weight), &sv.vector)
            );
            assert_eq!(sv.degree, sv.weight + 2);
        }
        for y1 in &s.y {
            for y2 in &s.y {
                assert!(vecops::dot(&s.chi, &g.bracket(y1, y2)).is_zero());
            }
        }
        let gm1 = s.grading.get(&-1).map_or(0, |b| b.len());
        assert_eq!(2 * s.y.len(), gm1);
        let fa = s.frame.algebra();
        assert_eq!(fa.check_jacobi(), None);
        // duality of the slice directions
        for (a, sv) in s.slice_basis.iter().enumerate() {
            for (b, d) in s.slice_dual.iter().enumerate() {
                let want = if a == b { Rat::one() } else { Rat::zero() };
                assert_eq!(g.form_eval(&sv.vector, d), want);
            }
        }
    }

    #[test]
    fn sl2_principal_setup() {
        let g = build_classical(TypeTag::A, 1).unwrap();
        let t = partition_triple(&g, &[2]).unwrap();
        let s = build_setup(&g, &t, &SetupOptions::default()).unwrap();
        assert!(s.grading.get(&-1).is_none());
        assert!(s.y.is_empty());
        assert_eq!(s.m, vec![e_of(&g, &[("f", 1)])]);
        assert_eq!(s.m_prime, vec![(e_of(&g, &[("f", 1)]), Rat::one())]);
        assert_eq!(s.slice_degrees(), vec![4]);
        check_invariants(&g, &s);
    }

    #[test]
    fn sl3_minimal_setup() {
        let g = build_classical(TypeTag::A, 2).unwrap();
        let t = jacobson_morozov(&g, &e_of(&g, &[("E13", 1)])).unwrap();
        let s = build_setup(&g, &t, &SetupOptions::default()).unwrap();
        let gm1 = &s.grading[&-1];
        assert_eq!(gm1.len(), 2);
        assert_eq!(gm1[0], e_of(&g, &[("E21", 1)]));
        assert_eq!(gm1[1], e_of(&g, &[("E32", 1)]));
        assert_eq!(s.omega[0][1], Rat::from(-1));
        assert_eq!(s.y.len(), 1);
        assert_eq!(s.dim_z(), 4);
        let mut d = s.slice_degrees();
        d.sort();
        assert_eq!(d, vec![2, 3, 3, 4]);
        check_invariants(&g, &s);
    }

    #[test]
    fn sl3_principal_setup() {
        let g = build_classical(TypeTag::A, 2).unwrap();
        let t = partition_triple(&g, &[3]).unwrap();
        let s = build_setup(&g, &t, &SetupOptions::default()).unwrap();
        assert_eq!(s.slice_degrees(), vec![4, 6]);
        assert_eq!(s.grading[&-2].len(), 2);
        // m also contains g(-4) = span(E31)
        assert_eq!(s.m.len(), 3);
        check_invariants(&g, &s);
    }

    #[test]
    fn sp4_subregular_setup() {
        let g = build_classical(TypeTag::C, 2).unwrap();
        let e = g.basis_vector(g.index_of("X1_2").unwrap());
        let t = jacobson_morozov(&g, &e).unwrap();
        let s = build_setup(&g, &t, &SetupOptions::default()).unwrap();
        let mut d = s.slice_degrees();
        d.sort();
        assert_eq!(d, vec![2, 4, 4, 4]);
        check_invariants(&g, &s);
    }

    #[test]
    fn alternative_h_prime_for_sl3_minimal() {
        let g = build_classical(TypeTag::A, 2).unwrap();
        let t = jacobson_morozov(&g, &e_of(&g, &[("E13", 1)])).unwrap();
        let cent = triple_centralizer(&g, &t);
        assert_eq!(cent.len(), 1);
        let m = |d: [i64; 3]| {
            let mut x = vec![vec![Rat::zero(); 3]; 3];
            for i in 0..3 {
                x[i][i] = Rat::new(d[i], 3);
            }
            matrix_coords(&g, &x).unwrap()
        };
        // h + h0/3 with h0 = diag(1,-2,1)
        let hp = vecops::add(&t.h, &m([1, -2, 1]));
        assert_eq!(hp, m([4, -2, -2]));
        let s = build_setup(
            &g,
            &t,
            &SetupOptions {
                h_prime: Some(hp),
                y: None,
            },
        )
        .unwrap();
        assert!(s.grading.get(&-1).is_none());
        let mut d = s.slice_degrees();
        d.sort();
        assert_eq!(d, vec![2, 2, 4, 4]);
        check_invariants(&g, &s);
    }

    #[test]
    fn invalid_h_prime() {
        let g = build_classical(TypeTag::A, 2).unwrap();
        let t = jacobson_morozov(&g, &e_of(&g, &[("E13", 1)])).unwrap();
        let bad = vecops::scale(&Rat::from(2), &t.h);
        let r = build_setup(&g, &t, &SetupOptions { h_prime: Some(bad), y: None });
        assert!(matches!(r, Err(Error::Domain(_))));
        // h + h0 gives weight -2 on E23, which lies in z_g(e)
        let mut x = vec![vec![Rat::zero(); 3]; 3];
        x[0][0] = Rat::from(2);
        x[1][1] = Rat::from(-2);
        x[2][2] = Rat::from(0);
        let hp = matrix_coords(&g, &x).unwrap();
        let r = build_setup(&g, &t, &SetupOptions { h_prime: Some(hp), y: None });
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn explicit_y_choice() {
        let g = build_classical(TypeTag::A, 2).unwrap();
        let t = jacobson_morozov(&g, &e_of(&g, &[("E13", 1)])).unwrap();
        let y = vec![e_of(&g, &[("E32", 1)])];
        let s = build_setup(&g, &t, &SetupOptions { h_prime: None, y: Some(y.clone()) }).unwrap();
        assert_eq!(s.y, y);
        check_invariants(&g, &s);
        let bad = build_setup(
            &g,
            &t,
            &SetupOptions { h_prime: None, y: Some(vec![e_of(&g, &[("E12", 1)])]) },
        );
        assert!(matches!(bad, Err(Error::Domain(_))));
    }
}
