use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::context::StarContext;
use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::poly::{format_monomial, weight_of, Exps, Poly};
use crate::report::CheckReport;

/// Random polynomial in the variables of `ctx` (no `hbar`) with total
/// degree at most `degree`, one to four terms and small rational
/// coefficients.
pub fn random_polynomial(ctx: &StarContext, rng: &mut impl Rng, degree: u32) -> Poly {
    let n = ctx.dim();
    let terms = rng.gen_range(1..=4);
    let mut p = ctx.zero();
    for _ in 0..terms {
        let mut e = vec![0u32; n + 1];
        let total = rng.gen_range(0..=degree);
        for _ in 0..total {
            e[rng.gen_range(0..n)] += 1;
        }
        let num: i64 = rng.gen_range(-6..=6);
        let den: i64 = rng.gen_range(1..=3);
        p.add_term(e, Rat::new(num, den));
    }
    p
}

/// First term of `p`, as a monomial over the star ring.
fn first_monomial(ctx: &StarContext, p: &Poly) -> String {
    let (e, c) = p.terms().iter().next().expect("nonzero polynomial");
    format!("{} (coefficient {c})", format_monomial(e, &ctx.ring_names()))
}

/// Unit, associativity and the semiclassical limit
/// `f*g - g*f = hbar P(f, g) + O(hbar^2)` on `trials` random triples of
/// degree at most `degree`. Stops at the first violated identity and names
/// its leading offending monomial.
pub fn check_axioms(ctx: &StarContext, degree: u32, trials: usize, seed: u64) -> Result<CheckReport> {
    const NAME: &str = "star-axioms";
    if trials == 0 {
        return Err(Error::usage("at least one trial is required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let f = random_polynomial(ctx, &mut rng, degree);
        let g = random_polynomial(ctx, &mut rng, degree);
        let h = random_polynomial(ctx, &mut rng, degree);
        let one = ctx.one();
        for (label, a, b) in [("1*f - f", ctx.moyal(&one, &f)?, &f), ("f*1 - f", ctx.moyal(&f, &one)?, &f)] {
            let d = &a - b;
            if !d.is_zero() {
                return Ok(CheckReport::fail(NAME, t + 1, format!("unit: {label} has term {}", first_monomial(ctx, &d))));
            }
        }
        let fg = ctx.moyal(&f, &g)?;
        let left = ctx.moyal(&fg, &h)?;
        let right = ctx.moyal(&f, &ctx.moyal(&g, &h)?)?;
        let d = &left - &right;
        if !d.is_zero() {
            return Ok(CheckReport::fail(
                NAME,
                t + 1,
                format!("associativity: (f*g)*h - f*(g*h) has term {}", first_monomial(ctx, &d)),
            ));
        }
        let gf = ctx.moyal(&g, &f)?;
        let mut d = &fg - &gf;
        d = &d - &(&ctx.hbar() * &ctx.poisson(&f, &g)?);
        let low = &ctx.hbar_coefficient(&d, 0) + &(&ctx.hbar() * &ctx.hbar_coefficient(&d, 1));
        if !low.is_zero() {
            return Ok(CheckReport::fail(
                NAME,
                t + 1,
                format!("semiclassical limit: f*g - g*f - hbar P(f,g) has term {}", first_monomial(ctx, &low)),
            ));
        }
    }
    Ok(CheckReport::pass(NAME, trials))
}

pub(crate) fn monomials_up_to(n: usize, max: u32) -> Vec<Exps> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for e in &out {
            let used: u32 = e.iter().sum();
            for a in 0..=max - used {
                let mut f = e.clone();
                f.push(a);
                next.push(f);
            }
        }
        out = next;
    }
    out
}

/// Each expansion term `D_j(f, g)` of two monomials of degree at most
/// `bound` is homogeneous of weight `w(f) + w(g) - k j`.
pub fn check_homogeneity(ctx: &StarContext, bound: u32) -> Result<CheckReport> {
    const NAME: &str = "star-homogeneity";
    let n = ctx.dim();
    let mut weights = ctx.weights().to_vec();
    weights.push(0);
    let mons = monomials_up_to(n, bound);
    let mut cases = 0;
    for a in &mons {
        for b in &mons {
            let lift = |e: &Exps| {
                let mut e = e.clone();
                e.push(0);
                Poly::monomial(e, Rat::one())
            };
            let (f, g) = (lift(a), lift(b));
            let base = weight_of(a, ctx.weights()) + weight_of(b, ctx.weights());
            for (j, term) in ctx.expansion(&f, &g)?.iter().enumerate() {
                cases += 1;
                let want = base - ctx.degree_k() * j as i64;
                if let Some((e, _)) = term.terms().iter().find(|(e, _)| weight_of(e, &weights) != want) {
                    return Ok(CheckReport::fail(
                        NAME,
                        cases,
                        format!(
                            "j = {j}: D_j({}, {}) has term {} of weight {}, expected {want}",
                            ctx.format(&f),
                            ctx.format(&g),
                            format_monomial(e, &ctx.ring_names()),
                            weight_of(e, &weights)
                        ),
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass(NAME, cases))
}

/// Commutators of the coordinates at `hbar = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeylCheck {
    pub report: CheckReport,
    /// `[x_a, x_b]` at `hbar = 1`, which must be the constant `P^{ab}`.
    pub gram: Vec<Vec<Rat>>,
}

/// Confirms `[u, v] = omega(u, v)` for all pairs of coordinates at
/// `hbar = 1`, which defines a map from the Weyl algebra of
/// `omega = P`.
pub fn weyl_identify(ctx: &StarContext) -> Result<WeylCheck> {
    if !ctx.is_nondegenerate() {
        return Err(Error::domain("bivector is degenerate; there is no Weyl algebra to identify"));
    }
    let n = ctx.dim();
    let mut gram = vec![vec![Rat::zero(); n]; n];
    let mut failure = None;
    for a in 0..n {
        for b in 0..n {
            let c = ctx.at_hbar(&ctx.commutator(&ctx.var(a), &ctx.var(b))?, &Rat::one());
            if !(c.is_zero() || c.is_constant()) && failure.is_none() {
                failure = Some(format!("[{}, {}] = {} is not a scalar", ctx.names()[a], ctx.names()[b], ctx.format(&c)));
            }
            gram[a][b] = c.constant_term();
            if gram[a][b] != ctx.bivector()[a][b] && failure.is_none() {
                failure = Some(format!(
                    "[{}, {}] = {} but omega gives {}",
                    ctx.names()[a],
                    ctx.names()[b],
                    gram[a][b],
                    ctx.bivector()[a][b]
                ));
            }
        }
    }
    let report = match failure {
        None => CheckReport::pass("weyl-commutation", n * n),
        Some(d) => CheckReport::fail("weyl-commutation", n * n, d),
    };
    Ok(WeylCheck { report, gram })
}

/// `exp(s hbar D) f` for the constant-coefficient operator `D = sum c_ab
/// d_a d_b` with `c` symmetric; the series stops once `2k` exceeds the
/// degree of `f`.
pub fn apply_exponential(ctx: &StarContext, op: &[Vec<Rat>], s: &Rat, f: &Poly) -> Poly {
    let n = ctx.dim();
    let apply = |p: &Poly| {
        let mut out = ctx.zero();
        for a in 0..n {
            for b in 0..n {
                if !op[a][b].is_zero() {
                    out = out + p.derivative(a, 1).derivative(b, 1).scale(&op[a][b]);
                }
            }
        }
        out
    };
    let mut out = f.clone();
    let mut term = f.clone();
    let mut k = 0i64;
    while !term.is_zero() {
        k += 1;
        term = (&apply(&term) * &ctx.hbar()).scale(&(s / &Rat::from(k)));
        out = out + term.clone();
    }
    out
}

/// The transported product `T(T^-1 f * T^-1 g)` with `T = exp(hbar D)`.
pub fn transported_product(ctx: &StarContext, op: &[Vec<Rat>], f: &Poly, g: &Poly) -> Result<Poly> {
    let minus = -Rat::one();
    let a = apply_exponential(ctx, op, &minus, f);
    let b = apply_exponential(ctx, op, &minus, g);
    Ok(apply_exponential(ctx, op, &Rat::one(), &ctx.moyal(&a, &b)?))
}

/// Randomized check that the transported product is associative, has the
/// classical product at `hbar = 0` and the same bracket at first order.
pub fn check_equivalence(
    ctx: &StarContext,
    op: &[Vec<Rat>],
    degree: u32,
    trials: usize,
    seed: u64,
) -> Result<CheckReport> {
    const NAME: &str = "star-equivalence";
    let n = ctx.dim();
    if op.len() != n || op.iter().any(|r| r.len() != n) {
        return Err(Error::usage(format!("operator must be a {n}x{n} matrix")));
    }
    if (0..n).any(|a| (0..n).any(|b| op[a][b] != op[b][a])) {
        return Err(Error::usage("operator coefficients must be symmetric"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let f = random_polynomial(ctx, &mut rng, degree);
        let g = random_polynomial(ctx, &mut rng, degree);
        let h = random_polynomial(ctx, &mut rng, degree);
        let star = |a: &Poly, b: &Poly| transported_product(ctx, op, a, b);
        let fg = star(&f, &g)?;
        let d = &star(&fg, &h)? - &star(&f, &star(&g, &h)?)?;
        if !d.is_zero() {
            return Ok(CheckReport::fail(NAME, t + 1, format!("associativity has term {}", first_monomial(ctx, &d))));
        }
        let classical = &ctx.hbar_coefficient(&fg, 0) - &(&f * &g);
        if !classical.is_zero() {
            return Ok(CheckReport::fail(
                NAME,
                t + 1,
                format!("classical limit has term {}", first_monomial(ctx, &classical)),
            ));
        }
        let gf = star(&g, &f)?;
        let first = &ctx.hbar_coefficient(&(&fg - &gf), 1) - &ctx.poisson(&f, &g)?;
        if !first.is_zero() {
            return Ok(CheckReport::fail(
                NAME,
                t + 1,
                format!("first-order bracket has term {}", first_monomial(ctx, &first)),
            ));
        }
    }
    Ok(CheckReport::pass(NAME, trials))
}
