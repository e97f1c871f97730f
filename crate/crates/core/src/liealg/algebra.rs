use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{solve, vecops, Rat, SparseMat};
use crate::poly::Poly;

/// Cartan type of a classical simple Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeTag {
    A,
    B,
    C,
    D,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeTag::A => "A",
            TypeTag::B => "B",
            TypeTag::C => "C",
            TypeTag::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for TypeTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeTag::A),
            "B" => Ok(TypeTag::B),
            "C" => Ok(TypeTag::C),
            "D" => Ok(TypeTag::D),
            other => Err(Error::usage(format!("unknown Lie type `{other}`"))),
        }
    }
}

/// Square matrix with rational entries, row major.
pub type Matrix = Vec<Vec<Rat>>;

/// A finite-dimensional Lie algebra given by exact structure constants
/// together with an invariant symmetric bilinear form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraData {
    #[serde(rename = "typeTag")]
    pub type_tag: TypeTag,
    pub rank: usize,
    pub dim: usize,
    #[serde(rename = "basisLabels")]
    pub labels: Vec<String>,
    /// `bracket[i][j]` lists the nonzero coordinates of `[b_i, b_j]`.
    pub bracket: Vec<Vec<Vec<(usize, Rat)>>>,
    pub form: SparseMat,
    /// Indices of basis elements spanning the diagonal Cartan subalgebra.
    /// Empty for algebras expressed in a rebased frame.
    #[serde(default)]
    pub cartan: Vec<usize>,
    /// Basis elements as matrices of the defining representation, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Matrix>>,
}

fn mat_zero(n: usize) -> Matrix {
    vec![vec![Rat::zero(); n]; n]
}

fn mat_unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = mat_zero(n);
    m[i][j] = Rat::one();
    m
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = mat_zero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    let p = &a[i][k] * &b[k][j];
                    c[i][j] += p;
                }
            }
        }
    }
    c
}

fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| vecops::sub(r, s))
        .collect()
}

fn mat_add_scaled(acc: &mut Matrix, c: &Rat, m: &Matrix) {
    for (r, s) in acc.iter_mut().zip(m) {
        vecops::add_scaled(r, c, s);
    }
}

fn mat_transpose(a: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].clone()).collect()).collect()
}

fn trace(a: &Matrix) -> Rat {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

fn is_zero_mat(a: &Matrix) -> bool {
    a.iter().all(|r| vecops::is_zero(r))
}

/// How to read coordinates off a matrix of the defining representation:
/// off-diagonal basis elements own one matrix position each, the Cartan part
/// is solved from the diagonal.
struct MatrixBasis {
    n: usize,
    elems: Vec<Matrix>,
    labels: Vec<String>,
    off_diag_key: Vec<Option<(usize, usize)>>,
    cartan: Vec<usize>,
}

impl MatrixBasis {
    fn coords(&self, m: &Matrix) -> Result<Vec<Rat>> {
        let dim = self.elems.len();
        let mut c = vecops::zeros(dim);
        for (k, key) in self.off_diag_key.iter().enumerate() {
            if let Some((i, j)) = key {
                c[k] = m[*i][*j].clone();
            }
        }
        if !self.cartan.is_empty() {
            let a = SparseMat::from_dense(
                &(0..self.n)
                    .map(|d| {
                        self.cartan
                            .iter()
                            .map(|&h| self.elems[h][d][d].clone())
                            .collect()
                    })
                    .collect::<Vec<Vec<Rat>>>(),
            );
            let diag: Vec<Rat> = (0..self.n).map(|d| m[d][d].clone()).collect();
            let x = solve(&a, &diag)?
                .ok_or_else(|| Error::consistency("diagonal part outside the Cartan span"))?;
            for (&h, v) in self.cartan.iter().zip(x) {
                c[h] = v;
            }
        }
        let mut back = mat_zero(self.n);
        for (k, v) in c.iter().enumerate() {
            mat_add_scaled(&mut back, v, &self.elems[k]);
        }
        if &back != m {
            return Err(Error::consistency("matrix does not lie in the algebra"));
        }
        Ok(c)
    }
}

fn sl_basis(n: usize) -> MatrixBasis {
    let name = |i: usize, j: usize| {
        if n <= 9 {
            format!("E{}{}", i + 1, j + 1)
        } else {
            format!("E{}_{}", i + 1, j + 1)
        }
    };
    let mut elems = Vec::new();
    let mut labels = Vec::new();
    let mut keys = Vec::new();
    let mut cartan = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            elems.push(mat_unit(n, i, j));
            labels.push(name(i, j));
            keys.push(Some((i, j)));
        }
    }
    for i in 0..n - 1 {
        let mut h = mat_unit(n, i, i);
        h[i + 1][i + 1] = Rat::from(-1);
        cartan.push(elems.len());
        elems.push(h);
        labels.push(format!("H{}", i + 1));
        keys.push(None);
    }
    for i in 0..n {
        for j in 0..i {
            elems.push(mat_unit(n, i, j));
            labels.push(name(i, j));
            keys.push(Some((i, j)));
        }
    }
    if n == 2 {
        labels = vec!["e".into(), "h".into(), "f".into()];
    }
    MatrixBasis {
        n,
        elems,
        labels,
        off_diag_key: keys,
        cartan,
    }
}

/// Basis of `{X : X^T J + J X = 0}` for an antidiagonal `J` with signs
/// `signs[i] = J[i][n-1-i]`.
fn form_preserving_basis(signs: &[i64]) -> MatrixBasis {
    let n = signs.len();
    let mut j = mat_zero(n);
    for (i, s) in signs.iter().enumerate() {
        j[i][n - 1 - i] = Rat::from(*s);
    }
    let jt = j.clone();
    let member = |x: &Matrix| {
        let lhs = mat_mul(&mat_transpose(x), &jt);
        let rhs = mat_mul(&jt, x);
        is_zero_mat(&lhs.iter().zip(&rhs).map(|(a, b)| vecops::add(a, b)).collect())
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut pos = Vec::new();
    let mut diag = Vec::new();
    let mut neg = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mirror = (n - 1 - b, n - 1 - a);
            let key = (a, b).min(mirror);
            if key != (a, b) || seen.contains(&key) {
                continue;
            }
            let mut found = None;
            if mirror == (a, b) {
                let x = mat_unit(n, a, b);
                if member(&x) {
                    found = Some(x);
                }
            } else {
                for c in [-1i64, 1] {
                    let mut x = mat_unit(n, a, b);
                    x[mirror.0][mirror.1] += Rat::from(c);
                    if !is_zero_mat(&x) && member(&x) {
                        found = Some(x);
                        break;
                    }
                }
            }
            if let Some(x) = found {
                seen.insert(key);
                let entry = (x, key);
                match a.cmp(&b) {
                    std::cmp::Ordering::Less => pos.push(entry),
                    std::cmp::Ordering::Equal => diag.push(entry),
                    std::cmp::Ordering::Greater => neg.push(entry),
                }
            }
        }
    }
    let mut elems = Vec::new();
    let mut labels = Vec::new();
    let mut keys = Vec::new();
    let mut cartan = Vec::new();
    for (x, (a, b)) in pos {
        elems.push(x);
        labels.push(format!("X{}_{}", a + 1, b + 1));
        keys.push(Some((a, b)));
    }
    for (x, (a, _)) in diag {
        cartan.push(elems.len());
        elems.push(x);
        labels.push(format!("H{}", a + 1));
        keys.push(None);
    }
    for (x, (a, b)) in neg {
        elems.push(x);
        labels.push(format!("X{}_{}", a + 1, b + 1));
        keys.push(Some((a, b)));
    }
    MatrixBasis {
        n,
        elems,
        labels,
        off_diag_key: keys,
        cartan,
    }
}

/// Builds `sl_{r+1}`, `so_{2r+1}`, `sp_{2r}` or `so_{2r}` in a matrix basis
/// adapted to the diagonal Cartan subalgebra. The form is the trace form of
/// the defining representation.
pub fn build_classical(type_tag: TypeTag, rank: usize) -> Result<LieAlgebraData> {
    let basis = match (type_tag, rank) {
        (_, 0) => return Err(Error::usage("rank must be at least 1")),
        (TypeTag::D, 1) => return Err(Error::usage("type D needs rank at least 2")),
        (TypeTag::A, r) => sl_basis(r + 1),
        (TypeTag::B, r) => form_preserving_basis(&vec![1; 2 * r + 1]),
        (TypeTag::C, r) => {
            let mut s = vec![1; r];
            s.extend(vec![-1; r]);
            form_preserving_basis(&s)
        }
        (TypeTag::D, r) => form_preserving_basis(&vec![1; 2 * r]),
    };
    from_matrix_basis(type_tag, rank, basis)
}

fn from_matrix_basis(type_tag: TypeTag, rank: usize, basis: MatrixBasis) -> Result<LieAlgebraData> {
    let dim = basis.elems.len();
    let mut bracket = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in i + 1..dim {
            let a = &basis.elems[i];
            let b = &basis.elems[j];
            let comm = mat_sub(&mat_mul(a, b), &mat_mul(b, a));
            let c = basis.coords(&comm)?;
            bracket[i][j] = vecops::to_sparse(&c);
            bracket[j][i] = vecops::to_sparse(&vecops::scale(&Rat::from(-1), &c));
        }
    }
    let mut form = SparseMat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            form.set(i, j, trace(&mat_mul(&basis.elems[i], &basis.elems[j])));
        }
    }
    Ok(LieAlgebraData {
        type_tag,
        rank,
        dim,
        labels: basis.labels,
        bracket,
        form,
        cartan: basis.cartan,
        matrices: Some(basis.elems),
    })
}

impl LieAlgebraData {
    /// Size of the defining representation, when matrices are known.
    pub fn matrix_size(&self) -> Option<usize> {
        self.matrices.as_ref().map(|m| m[0].len())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rat> {
        vecops::unit(self.dim, i)
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vecops::zeros(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, v) in &self.bracket[i][j] {
                    out[*k] += &c * v;
                }
            }
        }
        out
    }

    pub fn form_eval(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (&(i, j), v) in self.form.entries() {
            if !x[i].is_zero() && !y[j].is_zero() {
                acc += v * &x[i] * &y[j];
            }
        }
        acc
    }

    /// Matrix of `ad(x)`: column `j` holds `[x, b_j]`.
    pub fn ad_matrix(&self, x: &[Rat]) -> SparseMat {
        let cols: Vec<Vec<(usize, Rat)>> = (0..self.dim)
            .map(|j| vecops::to_sparse(&self.bracket(x, &self.basis_vector(j))))
            .collect();
        SparseMat::from_columns(self.dim, &cols)
    }

    pub fn is_ad_nilpotent(&self, x: &[Rat]) -> bool {
        let ad = self.ad_matrix(x).to_dense();
        let mut p = ad.clone();
        for _ in 0..self.dim {
            if is_zero_mat(&p) {
                return true;
            }
            p = mat_mul(&p, &ad);
        }
        is_zero_mat(&p)
    }

    /// Element of the defining representation for coordinates `x`.
    pub fn to_matrix(&self, x: &[Rat]) -> Option<Matrix> {
        let mats = self.matrices.as_ref()?;
        let n = mats[0].len();
        let mut m = mat_zero(n);
        for (c, b) in x.iter().zip(mats) {
            mat_add_scaled(&mut m, c, b);
        }
        Some(m)
    }

    /// First violation of antisymmetry, if any.
    pub fn check_antisymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = vecops::from_sparse(self.dim, &self.bracket[i][j]);
                let b = vecops::from_sparse(self.dim, &self.bracket[j][i]);
                if !vecops::is_zero(&vecops::add(&a, &b)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First basis triple `i < j < k` violating the Jacobi identity.
    pub fn check_jacobi(&self) -> Option<(usize, usize, usize)> {
        let e = |i| self.basis_vector(i);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let ij = self.bracket(&e(i), &e(j));
                for k in j + 1..self.dim {
                    let jk = self.bracket(&e(j), &e(k));
                    let ki = self.bracket(&e(k), &e(i));
                    let mut s = self.bracket(&ij, &e(k));
                    vecops::add_scaled(&mut s, &Rat::one(), &self.bracket(&jk, &e(i)));
                    vecops::add_scaled(&mut s, &Rat::one(), &self.bracket(&ki, &e(j)));
                    if !vecops::is_zero(&s) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// First basis triple violating `<[x,y],z> + <y,[x,z]> = 0`.
    pub fn check_form_invariance(&self) -> Option<(usize, usize, usize)> {
        let e = |i| self.basis_vector(i);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let xy = self.bracket(&e(i), &e(j));
                for k in 0..self.dim {
                    let xz = self.bracket(&e(i), &e(k));
                    let s = self.form_eval(&xy, &e(k)) + self.form_eval(&e(j), &xz);
                    if !s.is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn form_is_symmetric(&self) -> bool {
        self.form == self.form.transpose()
    }

    pub fn form_determinant(&self) -> Rat {
        self.form.determinant().expect("form is square")
    }

    /// Coordinates of the basis dual to the current one under the form:
    /// row `i` is `d_i` with `(d_i, b_j) = delta_ij`.
    pub fn dual_basis(&self) -> Result<Vec<Vec<Rat>>> {
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let d = solve(&self.form, &vecops::unit(self.dim, i))?
                .ok_or_else(|| Error::domain("the invariant form is degenerate"))?;
            out.push(d);
        }
        Ok(out)
    }

    /// The invariant polynomial `tr(X^k)` on `g*`, where `X = sum x_i d_i`
    /// and `x_i` is the coordinate function of basis element `b_i`.
    pub fn trace_invariant(&self, k: u32) -> Result<Poly> {
        let mats = self
            .matrices
            .as_ref()
            .ok_or_else(|| Error::domain("no matrix realization for trace invariants"))?;
        let n = mats[0].len();
        let duals: Vec<Matrix> = self
            .dual_basis()?
            .iter()
            .map(|d| self.to_matrix(d).expect("matrices present"))
            .collect();
        let mut x = vec![vec![Poly::zero(self.dim); n]; n];
        for (i, m) in duals.iter().enumerate() {
            for (r, row) in m.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        x[r][c] = &x[r][c] + &Poly::var(self.dim, i).scale(v);
                    }
                }
            }
        }
        let mut p = vec![vec![Poly::zero(self.dim); n]; n];
        for (r, row) in p.iter_mut().enumerate() {
            row[r] = Poly::one(self.dim);
        }
        for _ in 0..k {
            let mut q = vec![vec![Poly::zero(self.dim); n]; n];
            for r in 0..n {
                for m in 0..n {
                    if p[r][m].is_zero() {
                        continue;
                    }
                    for c in 0..n {
                        if !x[m][c].is_zero() {
                            q[r][c] = &q[r][c] + &(&p[r][m] * &x[m][c]);
                        }
                    }
                }
            }
            p = q;
        }
        let mut tr = Poly::zero(self.dim);
        for (i, row) in p.iter().enumerate() {
            tr = &tr + &row[i];
        }
        Ok(tr)
    }

    /// Expresses the algebra in a new basis given by coordinate vectors.
    pub fn rebase(&self, basis: &[Vec<Rat>], labels: Vec<String>) -> Result<LieAlgebraData> {
        let n = self.dim;
        if basis.len() != n || labels.len() != n {
            return Err(Error::usage("new basis must have one vector per dimension"));
        }
        let cols: Vec<Vec<(usize, Rat)>> = basis.iter().map(|v| vecops::to_sparse(v)).collect();
        let b = SparseMat::from_columns(n, &cols);
        if b.rank() != n {
            return Err(Error::domain("new basis vectors are linearly dependent"));
        }
        let coords = |v: &[Rat]| -> Result<Vec<Rat>> {
            solve(&b, v)?.ok_or_else(|| Error::consistency("vector outside the span of a basis"))
        };
        let mut bracket = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let c = coords(&self.bracket(&basis[i], &basis[j]))?;
                bracket[i][j] = vecops::to_sparse(&c);
                bracket[j][i] = vecops::to_sparse(&vecops::scale(&Rat::from(-1), &c));
            }
        }
        let mut form = SparseMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                form.set(i, j, self.form_eval(&basis[i], &basis[j]));
            }
        }
        let matrices = self.matrices.as_ref().map(|_| basis
                    .iter()
                    .map(|v| self.to_matrix(v).expect("matrices present"))
                    .collect());
        Ok(LieAlgebraData {
            type_tag: self.type_tag,
            rank: self.rank,
            dim: n,
            labels,
            bracket,
            form,
            cartan: Vec::new(),
            matrices,
        })
    }

    /// Human-readable name of a coordinate vector, e.g. `E12+2*E23`.
    pub fn describe(&self, v: &[Rat]) -> String {
        let terms: Vec<(usize, &Rat)> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (i, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            if k > 0 {
                s.push(if neg { '-' } else { '+' });
            } else if neg {
                s.push('-');
            }
            let a = c.abs();
            if !a.is_one() {
                s.push_str(&format!("{a}*"));
            }
            s.push_str(&self.labels[*i]);
        }
        s
    }

    /// Parses `label=coef,label=coef` or a full comma-separated coordinate list.
    pub fn parse_vector(&self, text: &str) -> Result<Vec<Rat>> {
        let text = text.trim();
        let mut v = vecops::zeros(self.dim);
        if text.contains('=') {
            for (pos, part) in text.split(',').enumerate() {
                let (l, c) = part.split_once('=').ok_or_else(|| Error::Parse {
                    line: 1,
                    column: pos + 1,
                    message: format!("expected label=value, found `{part}`"),
                })?;
                let i = self.index_of(l.trim()).ok_or_else(|| {
                    Error::usage(format!("unknown basis label `{}`", l.trim()))
                })?;
                v[i] += c.trim().parse::<Rat>().map_err(|e| Error::Parse {
                    line: 1,
                    column: pos + 1,
                    message: e.to_string(),
                })?;
            }
        } else {
            let parts: Vec<&str> = text.split(',').collect();
            if parts.len() != self.dim {
                return Err(Error::usage(format!(
                    "expected {} coordinates, found {}",
                    self.dim,
                    parts.len()
                )));
            }
            for (i, p) in parts.iter().enumerate() {
                v[i] = p.trim().parse::<Rat>().map_err(|e| Error::Parse {
                    line: 1,
                    column: i + 1,
                    message: e.to_string(),
                })?;
            }
        }
        Ok(v)
    }
}
