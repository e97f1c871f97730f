use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{kernel, Rat, SparseMat};
use crate::liealg::NilpotentSetup;
use crate::pbw::{NCPoly, Word};
use crate::poly::Exps;
use crate::starprod::QuantumComoment;

/// Non-increasing words over `n` letters of length at most `max`.
fn normal_words(n: u32, max: u32) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for w in &layer {
            let top = w.last().map_or(n, |&l| l + 1);
            for l in 0..top {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// The elements of standard degree at most `degree` in the kernel of
/// `U(g) -> A_hbar` at `hbar = 1`, `x -> H_x`, written in the frame letters
/// of `s`. The comoment must be built on the algebra of `s`.
pub fn comoment_kernel(cm: &QuantumComoment, s: &NilpotentSetup, degree: u32) -> Result<Vec<NCPoly>> {
    let g = cm.algebra();
    if s.frame.vectors.iter().any(|v| v.len() != g.dim) {
        return Err(Error::usage("setup and comoment are built on different algebras"));
    }
    let ctx = cm.context();
    let letters: Vec<_> = s.frame.vectors.iter().map(|v| cm.hamiltonian(v)).collect();
    let words = normal_words(letters.len() as u32, degree);
    let one = Rat::one();
    let mut rows: BTreeMap<Exps, usize> = BTreeMap::new();
    let mut columns = Vec::with_capacity(words.len());
    for w in &words {
        let mut img = ctx.one();
        for &l in w {
            img = ctx.moyal(&img, &letters[l as usize])?;
        }
        let img = ctx.at_hbar(&img, &one);
        let mut col = Vec::with_capacity(img.len());
        for (e, c) in img.terms() {
            let next = rows.len();
            let r = *rows.entry(e.clone()).or_insert(next);
            col.push((r, c.clone()));
        }
        columns.push(col);
    }
    let m = SparseMat::from_columns(rows.len(), &columns);
    Ok(kernel(&m)
        .into_iter()
        .map(|v| {
            let mut p = NCPoly::zero();
            for (w, c) in words.iter().zip(v) {
                p.add_term(w.clone(), c);
            }
            p
        })
        .collect())
}
