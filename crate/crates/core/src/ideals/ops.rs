use std::collections::BTreeMap;

use serde::Serialize;

use super::ideal::{GradedIdeal, ReportStatus, VarietyReport};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::exact::{Rat, Rref};
use crate::liealg::{LieAlgebraData, NilpotentSetup, TypeTag};
use crate::pbw::{ad_closure, NCPoly, UEnv, Word};
use crate::poly::Poly;

/// `I1 ∩ I2` by eliminating `t` from `t I1 + (1 - t) I2`.
pub fn intersection(a: &GradedIdeal, b: &GradedIdeal) -> Result<GradedIdeal> {
    if a.names() != b.names() || a.order() != b.order() {
        return Err(Error::usage("ideals live in different rings"));
    }
    let n = a.nvars();
    let shift: Vec<usize> = (1..=n).collect();
    let t = Poly::var(n + 1, 0);
    let one_minus_t = &Poly::one(n + 1) - &t;
    let mut gens: Vec<Poly> = a.basis().iter().map(|g| &t * &g.embed(n + 1, &shift)).collect();
    gens.extend(b.basis().iter().map(|g| &one_minus_t * &g.embed(n + 1, &shift)));
    let mut weights = vec![1];
    weights.extend(a.weights());
    let order = MonomialOrder::Elimination { block: 1, weights };
    let elim = super::groebner::buchberger(&gens, &order)?;
    let kept: Vec<Poly> = elim
        .into_iter()
        .filter(|g| g.terms().keys().all(|e| e[0] == 0))
        .map(|g| {
            Poly::from_terms(n, g.into_terms().into_iter().map(|(e, c)| (e[1..].to_vec(), c)))
        })
        .collect();
    GradedIdeal::new(a.names().to_vec(), a.order().clone(), &kept)
}

/// Names of the slice coordinates.
pub fn slice_names(s: &NilpotentSetup) -> Vec<String> {
    (1..=s.dim_z()).map(|i| format!("t{i}")).collect()
}

/// The ideal of `K[S]` obtained by restricting `gr J ⊂ K[g]` (in frame
/// coordinates) to the slice; `t_i` carries the slice degree.
pub fn slice_restrict(gr_j: &GradedIdeal, s: &NilpotentSetup) -> Result<GradedIdeal> {
    let n = s.frame.vectors.len();
    if gr_j.nvars() != n {
        return Err(Error::usage(format!(
            "ideal has {} variables but the frame of the setup has {n}",
            gr_j.nvars()
        )));
    }
    let images = s.slice_parametrization()?;
    let gens: Vec<Poly> = gr_j.basis().iter().map(|g| g.substitute(&images)).collect();
    GradedIdeal::with_weights(slice_names(s), s.slice_degrees(), &gens)
}

/// Generators of the nilpotent cone: `tr X^k` for `k = 2..=n+1` in type
/// `A`, and even `k = 2..=2r` otherwise, in the algebra's own basis.
pub fn nilpotent_cone_generators(g: &LieAlgebraData) -> Result<Vec<Poly>> {
    let ks: Vec<u32> = match g.type_tag {
        TypeTag::A => (2..=g.rank as u32 + 1).collect(),
        _ => (1..=g.rank as u32).map(|k| 2 * k).collect(),
    };
    ks.into_iter().map(|k| g.trace_invariant(k)).collect()
}

/// Hilbert values of the symbol ideal in one degree, computed from the
/// window at the bound and at the bound plus one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolRow {
    pub degree: i64,
    pub hilbert: i64,
    #[serde(rename = "hilbertNext")]
    pub hilbert_next: i64,
}

#[derive(Debug, Clone)]
pub struct GrResult {
    pub ideal: GradedIdeal,
    pub bound: i64,
    pub rows: Vec<SymbolRow>,
}

impl GrResult {
    /// Enlarging the window by one degree changes no Hilbert value up to
    /// the bound.
    pub fn stable(&self) -> bool {
        self.rows.iter().all(|r| r.hilbert == r.hilbert_next)
    }

    /// Variety report of the symbol ideal; inconclusive unless the Hilbert
    /// function has stabilized.
    pub fn variety_report(&self) -> VarietyReport {
        let mut r = self.ideal.variety_report();
        if !self.stable() {
            r.status = ReportStatus::Inconclusive;
        }
        r
    }
}

/// Commutative ideal generated by the top symbols (standard filtration) of
/// the two-sided ideal spanned, up to standard degree `bound`, by the
/// products `u v` with `u` a PBW word and `v` in the ad-closure of `gens`.
/// The result is contained in `gr I`; stabilization is tested against the
/// window of degree `bound + 1`.
pub fn gr_of_nc_ideal(env: &UEnv, gens: &[NCPoly], bound: i64) -> Result<GrResult> {
    let top = gens
        .iter()
        .map(|g| g.standard_degree().finite().unwrap_or(0))
        .max()
        .unwrap_or(0);
    if bound < top {
        return Err(Error::usage(format!("bound {bound} is below the generator degree {top}")));
    }
    let closure = ad_closure(env, gens)?;
    let ideal = symbol_ideal(env, &closure, bound)?;
    let next = symbol_ideal(env, &closure, bound + 1)?;
    let (h, hn) = (ideal.hilbert_function(bound), next.hilbert_function(bound));
    let rows = (0..=bound)
        .map(|d| SymbolRow { degree: d, hilbert: h[d as usize], hilbert_next: hn[d as usize] })
        .collect();
    Ok(GrResult { ideal, bound, rows })
}

fn symbol_ideal(env: &UEnv, closure: &[NCPoly], bound: i64) -> Result<GradedIdeal> {
    let n = env.dim();
    let mut elems: Vec<NCPoly> = Vec::new();
    for v in closure {
        let dv = v.standard_degree().finite().unwrap_or(0);
        for w in all_words(n as u32, (bound - dv) as usize) {
            elems.push(env.multiply(&NCPoly::monomial(w, Rat::one()), v)?);
        }
    }
    // columns sorted by standard degree descending, so pivots are top words
    let mut words: Vec<Word> = elems.iter().flat_map(|e| e.terms().keys().cloned()).collect();
    words.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    words.dedup();
    let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let rows: Vec<Vec<(usize, Rat)>> = elems
        .iter()
        .map(|e| {
            let mut r: Vec<(usize, Rat)> = e.terms().iter().map(|(w, c)| (index[w], c.clone())).collect();
            r.sort_by_key(|x| x.0);
            r
        })
        .collect();
    let rref = Rref::from_rows(words.len(), rows);
    let mut symbols = Vec::new();
    for (row, &p) in rref.rows().iter().zip(rref.pivots()) {
        let d = words[p].len();
        let mut top = NCPoly::zero();
        for (c, v) in row {
            if words[*c].len() == d {
                top.add_term(words[*c].clone(), v.clone());
            }
        }
        symbols.push(env.to_commutative(&top));
    }
    GradedIdeal::with_weights(env.labels().to_vec(), vec![1; n], &symbols)
}

/// Normal words of length at most `max` in `n` letters.
fn all_words(n: u32, max: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Word> = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &frontier {
            let cap = w.last().map_or(n, |&l| l + 1);
            for l in 0..cap {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// True when every generator is homogeneous for the ideal's weights.
pub fn is_homogeneous(i: &GradedIdeal) -> bool {
    let w = i.weights();
    i.basis().iter().all(|g| g.is_homogeneous(&w))
}
