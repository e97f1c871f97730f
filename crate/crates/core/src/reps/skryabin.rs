use num_integer::Integer;
use serde::Serialize;

use super::module::{verify_module, FinModule};
use crate::error::{Error, Result};
use crate::exact::{EchelonSpace, Rat, Rref, SparseMat};
use crate::pbw::word_degree;
use crate::report::CheckStatus;
use crate::walg::{c_words, QuotientElem, WAlgebra, WordIndex};

/// `F_k (Q (x)_W M)` through a degree bound, with the action of `m'`.
///
/// The space is `(F_d Q (x) M) / R` where `R` is spanned by `q G_j (x) v -
/// q (x) G_j v` over words `q` and generators with `deg q + deg G_j <= d`.
/// Since `Q` is graded free over `W`, `R` meets `F_k Q (x) M` in the
/// relations of degree at most `k`, so one reduction serves every `k`.
struct Truncation {
    /// Kazhdan degree of each free column, in free-column order.
    degrees: Vec<i64>,
    /// `(x_i - chi(x_i))` on the free columns, one sparse image per column
    /// for each letter of `m`.
    ops: Vec<Vec<Vec<(usize, Rat)>>>,
}

impl Truncation {
    fn build(alg: &WAlgebra, m: &FinModule, d: i64) -> Result<Self> {
        let q = alg.quotient();
        let kd = q.env().kazhdan_weights().to_vec();
        let words = c_words(q, d);
        let index = WordIndex::new(words.clone());
        let nw = words.len();
        let dm = m.dim;
        // higher degrees first, so pivots prefer them
        let col = |w: usize, v: usize| (nw - 1 - w) * dm + v;
        let coords = |e: &QuotientElem| {
            index.coords(e).ok_or_else(|| Error::consistency("product left the truncation window"))
        };
        let mut rows = Vec::new();
        for (wi, w) in words.iter().enumerate() {
            let a = word_degree(w, &kd);
            let qw = q.from_rep(crate::pbw::NCPoly::monomial(w.clone(), Rat::one()))?;
            for (j, (g, b)) in alg.generators().iter().enumerate() {
                if a + b > d {
                    continue;
                }
                let prod = coords(&q.product(&qw, g))?;
                for v in 0..dm {
                    let mut row: Vec<(usize, Rat)> = prod.iter().map(|(c, x)| (col(*c, v), x.clone())).collect();
                    for (u, x) in m.matrices[j].iter().map(|r| &r[v]).enumerate() {
                        if !x.is_zero() {
                            row.push((col(wi, u), -x));
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let ncols = nw * dm;
        let rref = Rref::from_rows(ncols, rows);
        let free = rref.free_columns();
        let mut position = vec![None; ncols];
        for (i, &c) in free.iter().enumerate() {
            position[c] = Some(i);
        }
        let word_of = |c: usize| nw - 1 - c / dm;
        let degrees = free.iter().map(|&c| word_degree(&words[word_of(c)], &kd)).collect();
        let mut ops = Vec::with_capacity(q.m_count() as usize);
        for i in 0..q.m_count() {
            let mut images = Vec::with_capacity(free.len());
            for &c in &free {
                let (w, v) = (word_of(c), c % dm);
                let qw = q.from_rep(crate::pbw::NCPoly::monomial(words[w].clone(), Rat::one()))?;
                let img: Vec<(usize, Rat)> = coords(&q.ad_m(i, &qw)?)?.into_iter().map(|(c, x)| (col(c, v), x)).collect();
                let nf = rref.normal_form(&img);
                let mut out = Vec::with_capacity(nf.len());
                for (c, x) in nf {
                    let p = position[c].ok_or_else(|| Error::consistency("normal form has a pivot entry"))?;
                    out.push((p, x));
                }
                images.push(out);
            }
            ops.push(images);
        }
        Ok(Truncation { degrees, ops })
    }

    fn dim_up_to(&self, k: i64) -> usize {
        self.degrees.iter().filter(|&&d| d <= k).count()
    }

    /// Dimension of the common kernel of `m'` on `F_k`.
    fn annihilator(&self, k: i64) -> usize {
        let cols: Vec<usize> = (0..self.degrees.len()).filter(|&c| self.degrees[c] <= k).collect();
        let n = self.degrees.len();
        let mut a = SparseMat::zeros(self.ops.len() * n, cols.len());
        for (i, images) in self.ops.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                for (r, x) in &images[c] {
                    a.set(i * n + r, j, x.clone());
                }
            }
        }
        cols.len() - a.rank()
    }

    /// Smallest `t` with `(m')^t F_d = 0`, if it is at most `dim F_d + 1`.
    fn nilpotency_order(&self) -> Option<usize> {
        let n = self.degrees.len();
        let mut current: Vec<Vec<(usize, Rat)>> = (0..n).map(|c| vec![(c, Rat::one())]).collect();
        for t in 0..=n + 1 {
            if current.is_empty() {
                return Some(t);
            }
            let mut span = EchelonSpace::new();
            let mut next = Vec::new();
            for v in &current {
                for images in &self.ops {
                    let mut acc: std::collections::BTreeMap<usize, Rat> = Default::default();
                    for (c, x) in v {
                        for (r, y) in &images[*c] {
                            *acc.entry(*r).or_insert_with(Rat::zero) += x * y;
                        }
                    }
                    let img: Vec<(usize, Rat)> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                    if span.insert(&img) {
                        next.push(img);
                    }
                }
            }
            current = next;
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkryabinRow {
    pub degree: i64,
    /// `dim F_k S(M)`.
    pub dim: usize,
    /// Dimension of the `m'`-annihilator of `F_k S(M)`.
    pub annihilator: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkryabinReport {
    pub status: CheckStatus,
    #[serde(rename = "moduleDim")]
    pub module_dim: usize,
    #[serde(rename = "degreeBound")]
    pub degree_bound: i64,
    pub rows: Vec<SkryabinRow>,
    /// Smallest `t` with `(m')^t` killing the whole truncation.
    #[serde(rename = "nilpotencyOrder")]
    pub nilpotency_order: Option<usize>,
    /// First degree of three consecutive degrees with equal annihilator
    /// dimension.
    #[serde(rename = "stableFrom")]
    pub stable_from: Option<i64>,
    #[serde(rename = "stableAnnihilator")]
    pub stable_annihilator: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn checked_module(alg: &WAlgebra, m: &FinModule) -> Result<()> {
    let report = verify_module(&alg.presentation()?, m)?;
    if report.status == CheckStatus::Fail {
        return Err(Error::domain(format!(
            "matrices do not define a module: {}",
            report.detail.unwrap_or_default()
        )));
    }
    Ok(())
}

/// Builds `F_k S(M)` for `k <= d`, checks that `m'` acts nilpotently and
/// that the annihilator stabilizes at `dim M`.
pub fn skryabin_truncated(alg: &WAlgebra, m: &FinModule, d: i64) -> Result<SkryabinReport> {
    if d < 1 {
        return Err(Error::usage("degree bound must be at least 1"));
    }
    checked_module(alg, m)?;
    let t = Truncation::build(alg, m, d)?;
    let rows: Vec<SkryabinRow> = (0..=d)
        .map(|k| SkryabinRow { degree: k, dim: t.dim_up_to(k), annihilator: t.annihilator(k) })
        .collect();
    let nilpotency_order = t.nilpotency_order();
    let stable_from = rows
        .windows(3)
        .find(|w| w[0].annihilator == w[1].annihilator && w[1].annihilator == w[2].annihilator)
        .map(|w| w[0].degree);
    let stable_annihilator = stable_from.map(|k| rows[k as usize].annihilator);
    let (status, detail) = match (nilpotency_order, stable_annihilator) {
        (None, _) => (CheckStatus::Fail, Some("m' does not act nilpotently on the truncation".to_string())),
        (_, None) => (
            CheckStatus::Inconclusive,
            Some(format!("annihilator did not stabilize in degrees 0..={d}")),
        ),
        (_, Some(a)) if a != m.dim => (
            CheckStatus::Fail,
            Some(format!("stable annihilator has dimension {a}, the module has dimension {}", m.dim)),
        ),
        _ => (CheckStatus::Pass, None),
    };
    Ok(SkryabinReport {
        status,
        module_dim: m.dim,
        degree_bound: d,
        rows,
        nilpotency_order,
        stable_from,
        stable_annihilator,
        detail,
    })
}

/// `dim F_k S(M)` for `k = 0..=d`.
pub fn truncation_dims(alg: &WAlgebra, m: &FinModule, d: i64) -> Result<Vec<usize>> {
    checked_module(alg, m)?;
    let t = Truncation::build(alg, m, d)?;
    Ok((0..=d).map(|k| t.dim_up_to(k)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GkReport {
    pub status: CheckStatus,
    #[serde(rename = "moduleDim")]
    pub module_dim: usize,
    #[serde(rename = "dimM")]
    pub dim_m: usize,
    /// Samples are taken at multiples of this period.
    pub period: i64,
    /// `(k, dim F_k S(M))` at the sampled degrees.
    pub samples: Vec<(i64, usize)>,
    /// Degree of the fitted polynomial; `None` for zero growth.
    pub degree: Option<i64>,
    pub expected: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Degrees of free polynomial generators of `Q` over `W`: the Kazhdan
/// degrees of the representative letters with the generator degrees of `W`
/// removed; `None` if the latter do not occur among the former.
fn free_generator_degrees(alg: &WAlgebra) -> Option<Vec<i64>> {
    let q = alg.quotient();
    let kd = q.env().kazhdan_weights();
    let mut pool: Vec<i64> = q.c_letters().map(|l| kd[l as usize]).collect();
    for d in alg.generator_degrees() {
        let pos = pool.iter().position(|&x| x == d)?;
        pool.remove(pos);
    }
    Some(pool)
}

/// Fits `k -> dim F_k S(M)` by a polynomial along multiples of a period and
/// compares its degree with `dim m`. The degree is `r` when the `(r+1)`-th
/// finite differences vanish at two or more points; otherwise the window is
/// too small.
pub fn gk_check(alg: &WAlgebra, m: &FinModule, window: i64) -> Result<GkReport> {
    let q = alg.quotient();
    let kd = q.env().kazhdan_weights();
    let period = match free_generator_degrees(alg) {
        Some(ds) if !ds.is_empty() => ds.iter().fold(1i64, |a, &b| a.lcm(&b)),
        Some(_) => 1,
        None => q.c_letters().map(|l| kd[l as usize]).fold(1i64, |a, b| a.lcm(&b)),
    };
    let dims = truncation_dims(alg, m, window.max(1))?;
    let samples: Vec<(i64, usize)> = (0..=window / period).map(|t| (t * period, dims[(t * period) as usize])).collect();
    let mut diff: Vec<i64> = samples.iter().map(|s| s.1 as i64).collect();
    let mut degree = None;
    let mut fitted = false;
    for r in 0.. {
        if diff.len() < 2 {
            break;
        }
        if diff.iter().all(|&x| x == 0) {
            degree = if r == 0 { None } else { Some(r - 1) };
            fitted = true;
            break;
        }
        diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let dim_m = q.m_count() as usize;
    let expected = (m.dim > 0).then_some(dim_m as i64);
    let (status, detail) = if !fitted {
        (
            CheckStatus::Inconclusive,
            Some(format!("window 0..={window} with period {period} is too small to fit the growth")),
        )
    } else if degree == expected {
        (CheckStatus::Pass, None)
    } else {
        (
            CheckStatus::Fail,
            Some(format!("growth degree {degree:?} differs from the expected {expected:?}")),
        )
    };
    Ok(GkReport { status, module_dim: m.dim, dim_m, period, samples, degree, expected, detail })
}
