//! Hilbert data of monomial ideals, given by generating exponent vectors.

use crate::poly::{weight_of, Exps};

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Minimal generators, sorted.
fn minimalize(mut gens: Vec<Exps>) -> Vec<Exps> {
    gens.sort();
    gens.dedup();
    let keep: Vec<bool> = (0..gens.len())
        .map(|k| !(0..gens.len()).any(|m| m != k && divides(&gens[m], &gens[k])))
        .collect();
    gens.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect()
}

fn pad(p: &mut Vec<i64>, len: usize) {
    if p.len() < len {
        p.resize(len, 0);
    }
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// `a - t^shift * b`.
fn sub_shifted(a: &[i64], b: &[i64], shift: usize) -> Vec<i64> {
    let mut out = a.to_vec();
    pad(&mut out, b.len() + shift);
    for (i, v) in b.iter().enumerate() {
        out[i + shift] -= v;
    }
    trim(out)
}

/// Numerator `N(t)` of the Hilbert series `N(t) / prod (1 - t^{w_i})` of
/// `K[x]/M`, coefficients by degree. The zero vector denotes the unit
/// monomial.
pub fn hilbert_numerator(gens: &[Exps], weights: &[i64]) -> Vec<i64> {
    let gens = minimalize(gens.to_vec());
    numerator_rec(gens, weights)
}

fn numerator_rec(gens: Vec<Exps>, weights: &[i64]) -> Vec<i64> {
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| {
        gens[i + 1..]
            .iter()
            .all(|b| a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0))
    });
    if pairwise_coprime {
        let mut p = vec![1i64];
        for g in &gens {
            let w = weight_of(g, weights) as usize;
            p = sub_shifted(&p, &p, w);
        }
        return p;
    }
    // N(J + m) = N(J) - t^{w(m)} N(J : m)
    let mut rest = gens;
    let m = rest.pop().unwrap();
    let colon: Vec<Exps> = rest
        .iter()
        .map(|g| g.iter().zip(&m).map(|(a, b)| a.saturating_sub(*b)).collect())
        .collect();
    let a = numerator_rec(rest, weights);
    let b = numerator_rec(minimalize(colon), weights);
    sub_shifted(&a, &b, weight_of(&m, weights) as usize)
}

/// Graded dimensions of `K[x]/M` for degrees `0..=bound`.
pub fn hilbert_function(gens: &[Exps], weights: &[i64], bound: i64) -> Vec<i64> {
    if bound < 0 {
        return Vec::new();
    }
    let mut f = hilbert_numerator(gens, weights);
    pad(&mut f, bound as usize + 1);
    f.truncate(bound as usize + 1);
    for &w in weights {
        let w = w as usize;
        for d in w..f.len() {
            f[d] += f[d - w];
        }
    }
    f
}

/// Krull dimension and degree from the unit-graded numerator: `N(t) =
/// (1-t)^{n-d} h(t)` with `h(1) != 0`. The empty variety has dimension -1.
pub fn dimension_and_degree(gens: &[Exps], nvars: usize) -> (i64, i64) {
    let mut p = hilbert_numerator(gens, &vec![1; nvars]);
    if p.is_empty() {
        return (-1, 0);
    }
    let mut order = 0;
    loop {
        let at_one: i64 = p.iter().sum();
        if at_one != 0 {
            return (nvars as i64 - order, at_one.abs());
        }
        // p = (t - 1) q
        let d = p.len() - 1;
        let mut q = vec![0i64; d];
        q[d - 1] = p[d];
        for i in (1..d).rev() {
            q[i - 1] = p[i] + q[i];
        }
        p = q.into_iter().map(|c| -c).collect();
        order += 1;
    }
}

/// Largest set of variables containing the support of no generator; its
/// size is the Krull dimension of `K[x]/M`.
pub fn independent_set_dimension(gens: &[Exps], nvars: usize) -> i64 {
    let masks: Vec<u64> = gens
        .iter()
        .map(|g| g.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |m, (i, _)| m | 1 << i))
        .collect();
    assert!(nvars < 64, "too many variables for subset search");
    let mut best = -1i64;
    for set in 0u64..(1u64 << nvars) {
        let size = set.count_ones() as i64;
        if size > best && masks.iter().all(|m| m & !set != 0) {
            best = size;
        }
    }
    best
}
