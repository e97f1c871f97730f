//! Rees algebra `R_hbar = sum hbar^i F_i` of `U(g)` with the Kazhdan
//! filtration, checked on a finite window of the bifiltration by Kazhdan and
//! standard degree.

use std::collections::BTreeMap;

use serde::Serialize;

use super::env::UEnv;
use super::ncpoly::{word_degree, Degree, NCPoly, Word};
use crate::error::{Error, Result};
use crate::exact::{EchelonSpace, Rat};
use crate::poly::Poly;

/// Sum of `hbar^power * coefficient` with each coefficient in `F_power`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReesElement {
    pub pieces: Vec<(NCPoly, i64)>,
}

impl ReesElement {
    /// `hbar^level * a`; fails when `a` is not in `F_level`.
    pub fn lift(env: &UEnv, a: &NCPoly, level: i64) -> Result<Self> {
        if !env.kazhdan_degree(a).le(level) {
            return Err(Error::domain(format!(
                "element of Kazhdan degree {} declared at level {level}",
                env.kazhdan_degree(a)
            )));
        }
        Ok(ReesElement {
            pieces: vec![(a.clone(), level)],
        })
    }

    pub fn check(&self, env: &UEnv) -> bool {
        self.pieces.iter().all(|(a, i)| env.kazhdan_degree(a).le(*i))
    }

    /// Specialization `hbar = 1`.
    pub fn at_one(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (a, _) in &self.pieces {
            out.add_scaled(&Rat::one(), a);
        }
        out
    }

    /// Specialization `hbar = 0`: the class of each piece in `F_i / F_{i-1}`,
    /// as a sum of commutative symbols.
    pub fn at_zero(&self, env: &UEnv) -> Poly {
        let mut out = Poly::zero(env.dim());
        for (a, i) in &self.pieces {
            let top = a.component_by(env.kazhdan_weights(), *i);
            out = out + env.to_commutative(&top);
        }
        out
    }
}

/// Bounds of the finite window: Kazhdan degree at most `kazhdan`, word
/// length at most `standard`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReesWindow {
    pub kazhdan: i64,
    pub standard: usize,
}

/// All normal words inside the window, highest Kazhdan degree first.
pub fn window_words(env: &UEnv, w: ReesWindow) -> Vec<Word> {
    let deg = env.kazhdan_weights();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(deg: &[i64], w: ReesWindow, top: u32, used: i64, cur: &mut Vec<u32>, out: &mut Vec<Word>) {
        out.push(cur.clone());
        if cur.len() == w.standard {
            return;
        }
        for i in 0..=top {
            let d = used + deg[i as usize];
            // negative-degree letters could bring the sum back down
            if d <= w.kazhdan || deg.iter().any(|&x| x < 0) {
                cur.push(i);
                rec(deg, w, i, d, cur, out);
                cur.pop();
            }
        }
    }
    if env.dim() > 0 {
        rec(deg, w, env.dim() as u32 - 1, 0, &mut cur, &mut out);
    } else {
        out.push(Vec::new());
    }
    out.retain(|x| word_degree(x, deg) <= w.kazhdan);
    out.sort_by(|a, b| {
        word_degree(b, deg)
            .cmp(&word_degree(a, deg))
            .then_with(|| a.cmp(b))
    });
    out
}

struct Coords {
    index: BTreeMap<Word, usize>,
    degree: Vec<i64>,
}

impl Coords {
    fn new(env: &UEnv, w: ReesWindow) -> Self {
        let words = window_words(env, w);
        let degree = words
            .iter()
            .map(|x| word_degree(x, env.kazhdan_weights()))
            .collect();
        Coords {
            index: words.into_iter().enumerate().map(|(i, x)| (x, i)).collect(),
            degree,
        }
    }

    /// Sparse coordinates; `None` if the element leaves the window.
    fn of(&self, a: &NCPoly) -> Option<Vec<(usize, Rat)>> {
        let mut v = Vec::with_capacity(a.len());
        for (w, c) in a.terms() {
            v.push((*self.index.get(w)?, c.clone()));
        }
        v.sort_by_key(|x| x.0);
        Some(v)
    }
}

/// Echelon span that also records the Kazhdan degree of every row's leading
/// (highest-degree) coordinate.
struct FilteredSpan<'a> {
    coords: &'a Coords,
    space: EchelonSpace,
}

impl<'a> FilteredSpan<'a> {
    fn new(coords: &'a Coords) -> Self {
        FilteredSpan {
            coords,
            space: EchelonSpace::new(),
        }
    }

    fn insert(&mut self, v: &[(usize, Rat)]) {
        self.space.insert(v);
    }

    /// `dim (span ∩ F_i)`.
    fn dim_at(&self, i: i64) -> usize {
        self.space
            .leading_columns()
            .filter(|&c| self.coords.degree[c] <= i)
            .count()
    }

    fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Closes the span of `gens` under `ad(x_i)` for all basis elements.
pub fn ad_closure(env: &UEnv, gens: &[NCPoly]) -> Result<Vec<NCPoly>> {
    let mut basis: Vec<NCPoly> = Vec::new();
    let mut index: BTreeMap<Word, usize> = BTreeMap::new();
    let mut space = EchelonSpace::new();
    let mut queue: Vec<NCPoly> = gens.to_vec();
    let coord = |a: &NCPoly, index: &mut BTreeMap<Word, usize>| -> Vec<(usize, Rat)> {
        let mut v: Vec<(usize, Rat)> = a
            .terms()
            .iter()
            .map(|(w, c)| {
                let n = index.len();
                (*index.entry(w.clone()).or_insert(n), c.clone())
            })
            .collect();
        v.sort_by_key(|x| x.0);
        v
    };
    while let Some(a) = queue.pop() {
        env.check(&a)?;
        let v = coord(&a, &mut index);
        if space.insert(&v) {
            for i in 0..env.dim() as u32 {
                let x = NCPoly::generator(i);
                let b = env.commutator(&x, &a)?;
                if !b.is_zero() {
                    queue.push(b);
                }
            }
            basis.push(a);
        }
    }
    Ok(basis)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReesDegreeRow {
    pub degree: i64,
    /// `dim` of the degree-`i` piece of the Rees ideal generated by the
    /// lifted generators, restricted to the window.
    pub generated: usize,
    /// `dim (F_i ∩ I)` inside the window.
    pub intersected: usize,
    /// Graded piece `R_i(I) / hbar R_{i-1}(I)`.
    #[serde(rename = "reesGraded")]
    pub rees_graded: usize,
    /// Degree-`i` piece of the commutative ideal generated by the symbols.
    #[serde(rename = "symbolGraded")]
    pub symbol_graded: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReesRoundtrip {
    pub window: ReesWindow,
    pub rows: Vec<ReesDegreeRow>,
    /// `dim` of the two-sided ideal inside the window, computed from
    /// products `u g v` without the ad-closure shortcut.
    #[serde(rename = "twoSidedDim")]
    pub two_sided_dim: usize,
    /// `dim` of the `hbar = 1` image of the Rees ideal.
    #[serde(rename = "atOneDim")]
    pub at_one_dim: usize,
    pub saturated: bool,
    pub roundtrip: bool,
    #[serde(rename = "grMatches")]
    pub gr_matches: bool,
}

impl ReesRoundtrip {
    pub fn passed(&self) -> bool {
        self.saturated && self.roundtrip && self.gr_matches
    }
}

/// Ideal -> Rees ideal -> `hbar = 1` and `hbar = 0`, degree by degree.
///
/// Generators come with their declared filtration levels. The two-sided
/// ideal equals the left ideal generated by the ad-closure of the
/// generators, whose Rees lift is generated by `hbar^{deg v} v`.
pub fn rees_roundtrip(env: &UEnv, gens: &[(NCPoly, i64)], window: ReesWindow) -> Result<ReesRoundtrip> {
    for (g, level) in gens {
        ReesElement::lift(env, g, *level)?;
    }
    let coords = Coords::new(env, window);
    let kd = env.kazhdan_weights();
    let plain: Vec<NCPoly> = gens.iter().map(|(g, _)| g.clone()).filter(|g| !g.is_zero()).collect();
    let closure = ad_closure(env, &plain)?;
    let words = window_words(env, window);

    // left multiples m * v inside the window, each tagged with its level
    let mut products: Vec<(NCPoly, i64)> = Vec::new();
    for v in &closure {
        let lv = env.kazhdan_degree(v).finite().unwrap_or(0);
        let sv = v.standard_degree().finite().unwrap_or(0) as usize;
        for m in &words {
            if m.len() + sv > window.standard {
                continue;
            }
            let level = word_degree(m, kd) + lv;
            if level > window.kazhdan {
                continue;
            }
            let p = env.mul_unchecked(&NCPoly::monomial(m.clone(), Rat::one()), v);
            products.push((p, level));
        }
    }

    let mut whole = FilteredSpan::new(&coords);
    for (p, _) in &products {
        if let Some(c) = coords.of(p) {
            whole.insert(&c);
        }
    }

    // symbols of the closure generate the commutative side
    let symbols: Vec<Poly> = closure.iter().map(|v| env.kazhdan_symbol(v)).collect();
    let comm_words = &words;

    let lo = coords.degree.iter().copied().min().unwrap_or(0);
    let mut rows = Vec::new();
    let mut saturated = true;
    let mut gr_matches = true;
    let mut prev_inter = 0;
    for i in lo..=window.kazhdan {
        let mut gen_span = FilteredSpan::new(&coords);
        for (p, level) in &products {
            if *level <= i {
                if let Some(c) = coords.of(p) {
                    gen_span.insert(&c);
                }
            }
        }
        let generated = gen_span.dim();
        let intersected = whole.dim_at(i);
        let rees_graded = intersected - prev_inter;
        prev_inter = intersected;

        let mut sym_span = EchelonSpace::new();
        let mut sym_index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for (s, v) in symbols.iter().zip(&closure) {
            let Some(dv) = env.kazhdan_degree(v).finite() else { continue };
            let sv = v.standard_degree().finite().unwrap_or(0) as usize;
            for m in comm_words {
                if m.len() + sv > window.standard || word_degree(m, kd) + dv != i {
                    continue;
                }
                let mono = env.to_commutative(&NCPoly::monomial(m.clone(), Rat::one()));
                let prod = &mono * s;
                let mut c: Vec<(usize, Rat)> = prod
                    .terms()
                    .iter()
                    .map(|(e, x)| {
                        let n = sym_index.len();
                        (*sym_index.entry(e.clone()).or_insert(n), x.clone())
                    })
                    .collect();
                c.sort_by_key(|x| x.0);
                sym_span.insert(&c);
            }
        }
        let symbol_graded = sym_span.dim();
        saturated &= generated == intersected;
        gr_matches &= rees_graded == symbol_graded;
        rows.push(ReesDegreeRow {
            degree: i,
            generated,
            intersected,
            rees_graded,
            symbol_graded,
        });
    }

    // two-sided products u g v, without the ad-closure
    let mut two = EchelonSpace::new();
    let mut union = whole.space.clone();
    for g in &plain {
        let sg = g.standard_degree().finite().unwrap_or(0) as usize;
        for u in &words {
            for v in &words {
                if u.len() + v.len() + sg > window.standard {
                    continue;
                }
                let left = NCPoly::monomial(u.clone(), Rat::one());
                let right = NCPoly::monomial(v.clone(), Rat::one());
                let p = env.mul_unchecked(&env.mul_unchecked(&left, g), &right);
                if env.kazhdan_degree(&p) > Degree::Finite(window.kazhdan) {
                    continue;
                }
                if let Some(c) = coords.of(&p) {
                    two.insert(&c);
                    union.insert(&c);
                }
            }
        }
    }
    let at_one_dim = whole.dim();
    let two_sided_dim = two.dim();
    let roundtrip = two_sided_dim == at_one_dim && union.dim() == at_one_dim;
    Ok(ReesRoundtrip {
        window,
        rows,
        two_sided_dim,
        at_one_dim,
        saturated,
        roundtrip,
        gr_matches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecializationRow {
    pub degree: i64,
    /// `dim` of the `hbar = 1` image of `R_i`, spanned by all words.
    #[serde(rename = "atOne")]
    pub at_one: usize,
    /// `dim R_i / hbar R_{i-1}`.
    #[serde(rename = "atZero")]
    pub at_zero: usize,
    /// Commutative monomials of Kazhdan degree at most `i`.
    #[serde(rename = "filteredCount")]
    pub filtered_count: usize,
    /// Commutative monomials of Kazhdan degree exactly `i`.
    #[serde(rename = "gradedCount")]
    pub graded_count: usize,
}

/// `R/(hbar-1)R ≅ A` and `R/hbar R ≅ gr A` as dimension equalities in the
/// window. Ranks come from arbitrary words rewritten to normal form;
/// counts come from commutative monomials.
pub fn rees_specializations(env: &UEnv, window: ReesWindow) -> Result<Vec<SpecializationRow>> {
    let coords = Coords::new(env, window);
    let kd = env.kazhdan_weights();
    let n = env.dim() as u32;
    let mut all_words: Vec<Vec<u32>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..window.standard {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..n {
                let mut x = w.clone();
                x.push(i);
                next.push(x);
            }
        }
        all_words.extend(next.iter().cloned());
        frontier = next;
    }
    let normal = window_words(env, window);
    let lo = coords.degree.iter().copied().min().unwrap_or(0);
    let mut rows = Vec::new();
    let mut prev = 0;
    for i in lo..=window.kazhdan {
        let mut span = EchelonSpace::new();
        for w in &all_words {
            if word_degree(w, kd) > i {
                continue;
            }
            let p = env.normal_form(w, Rat::one())?;
            let c = coords
                .of(&p)
                .ok_or_else(|| Error::consistency("normal form left the window"))?;
            span.insert(&c);
        }
        let at_one = span.dim();
        let filtered_count = normal.iter().filter(|w| word_degree(w, kd) <= i).count();
        let graded_count = normal.iter().filter(|w| word_degree(w, kd) == i).count();
        rows.push(SpecializationRow {
            degree: i,
            at_one,
            at_zero: at_one - prev,
            filtered_count,
            graded_count,
        });
        prev = at_one;
    }
    Ok(rows)
}
