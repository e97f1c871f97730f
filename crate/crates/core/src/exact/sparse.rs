use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Rat;
use crate::error::{Error, Result};

/// Sparse matrix over the rationals. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_dense(rows: &[Vec<Rat>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMat::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rat::from(v)).collect())
            .collect();
        SparseMat::from_dense(&dense)
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`, given sparsely.
    pub fn from_columns(rows: usize, columns: &[Vec<(usize, Rat)>]) -> Self {
        let mut m = SparseMat::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                let cur = m.get(*i, j);
                m.set(*i, j, cur + v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rat)> {
        self.entries.iter()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        let mut d = vec![vec![Rat::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn transpose(&self) -> SparseMat {
        let mut t = SparseMat::zeros(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            t.entries.insert((j, i), v.clone());
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Result<Vec<Rat>> {
        if x.len() != self.cols {
            return Err(Error::usage(format!(
                "vector of length {} applied to matrix with {} columns",
                x.len(),
                self.cols
            )));
        }
        let mut out = vec![Rat::zero(); self.rows];
        for (&(i, j), v) in &self.entries {
            if !x[j].is_zero() {
                out[i] += v * &x[j];
            }
        }
        Ok(out)
    }

    fn sparse_rows(&self) -> Vec<Vec<(usize, Rat)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            rows[i].push((j, v.clone()));
        }
        rows
    }

    pub fn rank(&self) -> usize {
        Rref::from_rows(self.cols, self.sparse_rows()).rank()
    }

    /// Determinant of a square matrix, by exact elimination.
    pub fn determinant(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::usage("determinant of a non-square matrix"));
        }
        let n = self.rows;
        let mut a = self.to_dense();
        let mut det = Rat::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(Rat::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &piv;
                for k in c..n {
                    let d = &f * &a[c][k];
                    a[r][k] -= d;
                }
            }
        }
        Ok(det)
    }
}

/// Solves `A x = b`. Returns `None` when the system is inconsistent; free
/// variables of the particular solution are set to zero.
pub fn solve(a: &SparseMat, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
    if b.len() != a.rows {
        return Err(Error::usage(format!(
            "right-hand side of length {} for a matrix with {} rows",
            b.len(),
            a.rows
        )));
    }
    let mut rows = a.sparse_rows();
    for (i, v) in b.iter().enumerate() {
        if !v.is_zero() {
            rows[i].push((a.cols, v.clone()));
        }
    }
    let rref = Rref::from_rows(a.cols + 1, rows);
    if rref.pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![Rat::zero(); a.cols];
    for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
        if let Some((_, v)) = row.iter().find(|(c, _)| *c == a.cols) {
            x[p] = v.clone();
        }
    }
    Ok(Some(x))
}

/// Solves `A x = b` for several right-hand sides with one elimination.
/// Entry `j` of the result is `None` exactly when `A x = bs[j]` is
/// inconsistent.
pub fn solve_many(a: &SparseMat, bs: &[Vec<Rat>]) -> Result<Vec<Option<Vec<Rat>>>> {
    if let Some(b) = bs.iter().find(|b| b.len() != a.rows) {
        return Err(Error::usage(format!(
            "right-hand side of length {} for a matrix with {} rows",
            b.len(),
            a.rows
        )));
    }
    let mut rows = a.sparse_rows();
    for (j, b) in bs.iter().enumerate() {
        for (i, v) in b.iter().enumerate() {
            if !v.is_zero() {
                rows[i].push((a.cols + j, v.clone()));
            }
        }
    }
    let rref = Rref::from_rows(a.cols + bs.len(), rows);
    let mut out: Vec<Option<Vec<Rat>>> = vec![Some(vec![Rat::zero(); a.cols]); bs.len()];
    for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
        for (c, v) in row {
            if *c < a.cols {
                continue;
            }
            let j = c - a.cols;
            if p >= a.cols {
                // a row with zero A-part that touches b_j
                out[j] = None;
            } else if let Some(x) = out[j].as_mut() {
                x[p] = v.clone();
            }
        }
    }
    Ok(out)
}

/// Null space basis of `A`, one vector per free column in ascending order.
///
/// The vector attached to free column `f` has a `1` in position `f`, zeros in
/// every other free position, and its remaining support lies in pivot
/// columns smaller than `f`. So `f` is the last nonzero coordinate.
pub fn kernel(a: &SparseMat) -> Vec<Vec<Rat>> {
    Rref::from_rows(a.cols, a.sparse_rows()).kernel()
}

type IntRow = Vec<(usize, BigInt)>;

fn content_normalize(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    if let Some((_, lead)) = row.first() {
        if lead.is_negative() {
            for (_, v) in row.iter_mut() {
                *v = -&*v;
            }
        }
    }
}

fn to_int_row(mut row: Vec<(usize, Rat)>) -> IntRow {
    row.sort_by_key(|(c, _)| *c);
    let mut merged: Vec<(usize, Rat)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match merged.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => merged.push((c, v)),
        }
    }
    merged.retain(|(_, v)| !v.is_zero());
    let l = Rat::denominator_lcm(merged.iter().map(|(_, v)| v));
    let mut out: IntRow = merged
        .into_iter()
        .map(|(c, v)| (c, v.numer() * (&l / v.denom())))
        .collect();
    content_normalize(&mut out);
    out
}

/// `target := b*target - a*pivot`, where `a` is target's entry at the pivot
/// column and `b` is the pivot's leading entry. Content is removed afterwards.
fn eliminate(target: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let a = match target.iter().find(|(c, _)| *c == col) {
        Some((_, v)) => v.clone(),
        None => return target.clone(),
    };
    let b = pivot[0].1.clone();
    let g = a.gcd(&b);
    let a = a / &g;
    let b = b / &g;
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ci = target.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push((ci, &b * &target[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(&a * &pivot[j].1)));
            j += 1;
        } else {
            let v = &b * &target[i].1 - &a * &pivot[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    content_normalize(&mut out);
    out
}

/// Reduced row echelon form of a sparse matrix, normalized to unit pivots.
///
/// Forward elimination runs fraction-free on integer rows with content
/// removal; rationals only appear in the final normalization. The result is
/// unique, so it does not depend on row order.
#[derive(Debug, Clone)]
pub struct Rref {
    ncols: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<(usize, Rat)>>,
}

impl Rref {
    pub fn from_rows(ncols: usize, rows: Vec<Vec<(usize, Rat)>>) -> Self {
        let mut pivot_rows: BTreeMap<usize, IntRow> = BTreeMap::new();
        for row in rows {
            let mut r = to_int_row(row);
            while let Some(&(lead, _)) = r.first() {
                assert!(lead < ncols, "column index out of bounds");
                match pivot_rows.get(&lead) {
                    Some(p) => r = eliminate(&r, p, lead),
                    None => {
                        pivot_rows.insert(lead, r);
                        break;
                    }
                }
            }
        }
        let pivots: Vec<usize> = pivot_rows.keys().copied().collect();
        // back substitution, highest pivot first
        for k in (0..pivots.len()).rev() {
            let pk = pivots[k];
            let mut row = pivot_rows.remove(&pk).unwrap();
            for &pj in &pivots[k + 1..] {
                if row.iter().any(|(c, _)| *c == pj) {
                    row = eliminate(&row, &pivot_rows[&pj], pj);
                }
            }
            pivot_rows.insert(pk, row);
        }
        let rows = pivots
            .iter()
            .map(|p| {
                let r = &pivot_rows[p];
                let lead = Rat::from(r[0].1.clone());
                r.iter()
                    .map(|(c, v)| (*c, Rat::from(v.clone()) / &lead))
                    .collect()
            })
            .collect();
        Rref {
            ncols,
            pivots,
            rows,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<(usize, Rat)>] {
        &self.rows
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut free = Vec::with_capacity(self.ncols - self.pivots.len());
        let mut pi = self.pivots.iter().peekable();
        for c in 0..self.ncols {
            if pi.peek() == Some(&&c) {
                pi.next();
            } else {
                free.push(c);
            }
        }
        free
    }

    /// The representative of `v` modulo the row space with zeros in every
    /// pivot column; linear in `v`.
    pub fn normal_form(&self, v: &[(usize, Rat)]) -> Vec<(usize, Rat)> {
        let mut dense: BTreeMap<usize, Rat> = BTreeMap::new();
        for (c, x) in v {
            *dense.entry(*c).or_insert_with(Rat::zero) += x;
        }
        for (row, p) in self.rows.iter().zip(&self.pivots) {
            let c = match dense.get(p) {
                Some(c) if !c.is_zero() => c.clone(),
                _ => continue,
            };
            for (j, x) in row {
                *dense.entry(*j).or_insert_with(Rat::zero) -= &c * x;
            }
        }
        dense.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let free = self.free_columns();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rat::zero(); self.ncols];
            v[f] = Rat::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if let Some((_, x)) = row.iter().find(|(c, _)| *c == f) {
                    v[p] = -x;
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Incrementally maintained echelon basis of a subspace of `K^n`, used for
/// rank and membership tests on vectors given sparsely.
#[derive(Debug, Clone, Default)]
pub struct EchelonSpace {
    pivots: BTreeMap<usize, IntRow>,
}

impl EchelonSpace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    fn reduce_int(&self, mut r: IntRow) -> IntRow {
        let mut pos = 0;
        while pos < r.len() {
            let c = r[pos].0;
            match self.pivots.get(&c) {
                Some(p) => {
                    r = eliminate(&r, p, c);
                    // columns before `c` only get rescaled
                    pos = r.iter().position(|(cc, _)| *cc > c).unwrap_or(r.len());
                }
                None => pos += 1,
            }
        }
        r
    }

    /// Leading (smallest) column of every stored row, ascending.
    pub fn leading_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// True when `v` lies in the span.
    pub fn contains(&self, v: &[(usize, Rat)]) -> bool {
        self.reduce_int(to_int_row(v.to_vec())).is_empty()
    }

    /// Inserts `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[(usize, Rat)]) -> bool {
        let r = self.reduce_int(to_int_row(v.to_vec()));
        match r.first() {
            Some(&(lead, _)) => {
                // keep pivots lead-reduced: only the lead column matters for insert
                self.pivots.insert(lead, r);
                true
            }
            None => false,
        }
    }
}
