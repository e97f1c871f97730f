use serde::{Deserialize, Serialize};

use super::algebra::{LieAlgebraData, TypeTag};
use crate::error::{Error, Result};
use crate::exact::{solve, vecops, Rat, SparseMat};

/// An `sl_2`-triple `(e, h, f)` in coordinates of the algebra basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SL2Triple {
    pub e: Vec<Rat>,
    pub h: Vec<Rat>,
    pub f: Vec<Rat>,
}

impl SL2Triple {
    /// Checks `[h,e]=2e`, `[h,f]=-2f`, `[e,f]=h`.
    pub fn verify(&self, g: &LieAlgebraData) -> Result<()> {
        let two = Rat::from(2);
        if g.bracket(&self.h, &self.e) != vecops::scale(&two, &self.e) {
            return Err(Error::consistency("[h,e] != 2e"));
        }
        if g.bracket(&self.h, &self.f) != vecops::scale(&-two, &self.f) {
            return Err(Error::consistency("[h,f] != -2f"));
        }
        if g.bracket(&self.e, &self.f) != self.h {
            return Err(Error::consistency("[e,f] != h"));
        }
        Ok(())
    }
}

fn stack(blocks: &[(&SparseMat, usize)], cols: usize) -> SparseMat {
    let rows: usize = blocks.iter().map(|(m, _)| m.rows()).sum();
    let mut out = SparseMat::zeros(rows, cols);
    let mut off = 0;
    for (m, _) in blocks {
        for (&(i, j), v) in m.entries() {
            out.set(off + i, j, v.clone());
        }
        off += m.rows();
    }
    out
}

fn mat_product(a: &SparseMat, b: &SparseMat) -> SparseMat {
    let mut out = SparseMat::zeros(a.rows(), b.cols());
    let bd = b.to_dense();
    for (&(i, k), v) in a.entries() {
        for (j, w) in bd[k].iter().enumerate() {
            if !w.is_zero() {
                let cur = out.get(i, j);
                out.set(i, j, cur + v * w);
            }
        }
    }
    out
}

/// Completes a nonzero nilpotent `e` to an `sl_2`-triple.
///
/// `h` is sought as `[e, z]` with `[h, e] = 2e`, preferring a solution with
/// `h` in the diagonal Cartan subalgebra when the algebra records one. `f` is
/// then the unique solution of `[e, f] = h`, `[h, f] = -2f`.
pub fn jacobson_morozov(g: &LieAlgebraData, e: &[Rat]) -> Result<SL2Triple> {
    if e.len() != g.dim {
        return Err(Error::usage("nilpotent vector has the wrong length"));
    }
    if vecops::is_zero(e) {
        return Err(Error::domain("e = 0 has no sl2-triple"));
    }
    if !g.is_ad_nilpotent(e) {
        return Err(Error::domain("ad(e) is not nilpotent"));
    }
    let n = g.dim;
    let ad_e = g.ad_matrix(e);
    let ad_e2 = mat_product(&ad_e, &ad_e);
    let rhs_2e: Vec<Rat> = e.iter().map(|x| Rat::from(-2) * x).collect();

    let mut z = None;
    if !g.cartan.is_empty() {
        // rows of ad(e) outside the Cartan part must vanish on z
        let mut off_cartan = SparseMat::zeros(n - g.cartan.len(), n);
        let mut r = 0;
        for i in 0..n {
            if g.cartan.contains(&i) {
                continue;
            }
            for j in 0..n {
                off_cartan.set(r, j, ad_e.get(i, j));
            }
            r += 1;
        }
        let a = stack(&[(&ad_e2, 0), (&off_cartan, 0)], n);
        let mut b = rhs_2e.clone();
        b.extend(vecops::zeros(off_cartan.rows()));
        z = solve(&a, &b)?;
    }
    let z = match z {
        Some(z) => z,
        None => solve(&ad_e2, &rhs_2e)?
            .ok_or_else(|| Error::consistency("no h with [h,e]=2e in the image of ad(e)"))?,
    };
    let h = ad_e.mul_vec(&z)?;

    let ad_h = g.ad_matrix(&h);
    let mut shifted = ad_h.clone();
    for i in 0..n {
        let cur = shifted.get(i, i);
        shifted.set(i, i, cur + Rat::from(2));
    }
    let a = stack(&[(&ad_e, 0), (&shifted, 0)], n);
    let mut b = h.clone();
    b.extend(vecops::zeros(n));
    let f = solve(&a, &b)?
        .ok_or_else(|| Error::consistency("no f completing the triple"))?;
    let t = SL2Triple {
        e: e.to_vec(),
        h,
        f,
    };
    t.verify(g)?;
    Ok(t)
}

/// The standard triple of the Jordan-type nilpotent for a partition of `n`
/// in `sl_n`: one principal block per part.
pub fn partition_triple(g: &LieAlgebraData, partition: &[usize]) -> Result<SL2Triple> {
    if g.type_tag != TypeTag::A {
        return Err(Error::usage("partitions are supported only for type A"));
    }
    let n = g.rank + 1;
    if partition.iter().sum::<usize>() != n || partition.contains(&0) {
        return Err(Error::usage(format!("{partition:?} is not a partition of {n}")));
    }
    let mut parts = partition.to_vec();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    if parts[0] == 1 {
        return Err(Error::domain("partition (1,...,1) gives e = 0"));
    }
    let mut e = vec![vec![Rat::zero(); n]; n];
    let mut h = vec![vec![Rat::zero(); n]; n];
    let mut f = vec![vec![Rat::zero(); n]; n];
    let mut start = 0;
    for &d in &parts {
        for i in 0..d {
            h[start + i][start + i] = Rat::from(d as i64 - 1 - 2 * i as i64);
            if i + 1 < d {
                e[start + i][start + i + 1] = Rat::one();
                f[start + i + 1][start + i] = Rat::from(((i + 1) * (d - i - 1)) as i64);
            }
        }
        start += d;
    }
    let coords = |m: &Vec<Vec<Rat>>| -> Result<Vec<Rat>> { matrix_coords(g, m) };
    let t = SL2Triple {
        e: coords(&e)?,
        h: coords(&h)?,
        f: coords(&f)?,
    };
    t.verify(g)?;
    Ok(t)
}

/// Coordinates of a matrix of the defining representation.
pub fn matrix_coords(g: &LieAlgebraData, m: &[Vec<Rat>]) -> Result<Vec<Rat>> {
    let mats = g
        .matrices
        .as_ref()
        .ok_or_else(|| Error::usage("algebra has no matrix realization"))?;
    let size = mats[0].len();
    let cols: Vec<Vec<(usize, Rat)>> = mats
        .iter()
        .map(|b| {
            vecops::to_sparse(&b.iter().flatten().cloned().collect::<Vec<Rat>>())
        })
        .collect();
    let a = SparseMat::from_columns(size * size, &cols);
    let rhs: Vec<Rat> = m.iter().flatten().cloned().collect();
    solve(&a, &rhs)?.ok_or_else(|| Error::domain("matrix is not in the algebra"))
}
