use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::quotient::{Quotient, QuotientElem};
use super::whittaker::WhittakerSpace;
use crate::error::{Error, Result};
use crate::exact::{solve_many, vecops, EchelonSpace, Rat, SparseMat};
use crate::liealg::NilpotentSetup;
use crate::pbw::{Degree, NCPoly, Word};
use crate::poly::{monomial_counts, Poly};

/// A truncated model of `U(g,e)`: the Whittaker space, a set of
/// generators lifting the slice coordinates, and the images of all ordered
/// generator monomials through the truncation degree.
#[derive(Debug)]
pub struct WAlgebra {
    quotient: Quotient,
    setup: NilpotentSetup,
    truncation: i64,
    space: WhittakerSpace,
    generators: Vec<(QuotientElem, i64)>,
    monomials: Vec<(Word, i64)>,
    /// Column `j` holds the image of `monomials[j]` in word coordinates.
    images: SparseMat,
    slice_frame: SliceFrame,
}

/// Frame coordinate functions restricted to the slice `e + z_g(f)`, as
/// affine polynomials in the slice coordinates.
#[derive(Debug, Clone)]
struct SliceFrame {
    images: Vec<Poly>,
    names: Vec<String>,
    degrees: Vec<i64>,
}

impl SliceFrame {
    fn new(s: &NilpotentSetup) -> Result<Self> {
        Ok(SliceFrame {
            images: s.slice_parametrization()?,
            names: (1..=s.dim_z()).map(|i| format!("t{i}")).collect(),
            degrees: s.slice_degrees(),
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorInfo {
    pub name: String,
    pub degree: i64,
    pub element: QuotientElem,
    pub text: String,
    /// Top symbol restricted to the slice, in slice coordinates `t_i`.
    #[serde(rename = "sliceSymbol")]
    pub slice_symbol: String,
    #[serde(rename = "leadingSliceMonomial")]
    pub leading_slice_monomial: String,
}

/// Serializable summary of a truncated presentation.
#[derive(Debug, Clone, Serialize)]
pub struct WPresentation {
    pub algebra: String,
    pub nilpotent: String,
    #[serde(rename = "N")]
    pub truncation: i64,
    #[serde(rename = "sliceDegrees")]
    pub slice_degrees: Vec<i64>,
    /// Nonzero dimensions of the graded pieces of `gr U(g,e)`.
    #[serde(rename = "gradedDims")]
    pub graded_dims: BTreeMap<i64, usize>,
    /// `dim F_k U(g,e)` for `k = 0..=N`.
    #[serde(rename = "filtrationDims")]
    pub filtration_dims: BTreeMap<i64, usize>,
    pub generators: Vec<GeneratorInfo>,
    /// `[G_i, G_j]` for `i < j` as ordered polynomials in the generators.
    #[serde(rename = "structureConsts")]
    pub structure_consts: BTreeMap<String, NCPoly>,
    #[serde(rename = "structureText")]
    pub structure_text: BTreeMap<String, String>,
    /// Pairs whose commutator lies beyond the truncation.
    #[serde(rename = "omittedPairs")]
    pub omitted_pairs: Vec<(usize, usize)>,
}

impl WPresentation {
    /// The stored relations `[G_i, G_j] = P_ij` with their index pairs.
    pub fn relations(&self) -> Vec<((usize, usize), &NCPoly)> {
        let index = |name: &str| self.generators.iter().position(|g| g.name == name);
        let mut out: Vec<((usize, usize), &NCPoly)> = self
            .structure_consts
            .iter()
            .filter_map(|(key, p)| {
                let (a, b) = key.strip_prefix('[')?.strip_suffix(']')?.split_once(',')?;
                Some(((index(a)?, index(b)?), p))
            })
            .collect();
        out.sort_by_key(|(ij, _)| *ij);
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CenterImage {
    pub element: QuotientElem,
    pub text: String,
    pub degree: i64,
    #[serde(rename = "inGenerators")]
    pub in_generators: NCPoly,
    #[serde(rename = "inGeneratorsText")]
    pub in_generators_text: String,
    /// Generators whose commutator with the image was checked to vanish.
    #[serde(rename = "commutesWith")]
    pub commutes_with: Vec<usize>,
    pub central: bool,
}

/// Ordered (non-increasing) words in generators of the given degrees with
/// total degree at most `max`.
fn generator_words(degrees: &[i64], max: i64) -> Vec<(Word, i64)> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(top: usize, degrees: &[i64], budget: i64, used: i64, cur: &mut Word, out: &mut Vec<(Word, i64)>) {
        out.push((cur.clone(), used));
        for g in (0..top).rev() {
            if degrees[g] <= budget {
                cur.push(g as u32);
                rec(g + 1, degrees, budget - degrees[g], used + degrees[g], cur, out);
                cur.pop();
            }
        }
    }
    rec(degrees.len(), degrees, max, 0, &mut cur, &mut out);
    out.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    out
}

impl WAlgebra {
    /// Builds the truncated presentation through Kazhdan degree `n`.
    pub fn build(s: &NilpotentSetup, n: i64) -> Result<Self> {
        let degrees = s.slice_degrees();
        let top = degrees.iter().copied().max().unwrap_or(0);
        if n < top {
            return Err(Error::usage(format!(
                "truncation degree {n} is below the largest slice degree {top}"
            )));
        }
        let quotient = Quotient::new(s)?;
        let space = WhittakerSpace::compute(&quotient, n)?;

        let expected = monomial_counts(&degrees, n);
        let dims = space.filtration_dims();
        let mut cumulative = 0;
        for (k, &c) in expected.iter().enumerate() {
            cumulative += c as usize;
            if dims[k] != cumulative {
                return Err(Error::consistency(format!(
                    "dim F_{k} U(g,e) = {} but the slice predicts {cumulative}",
                    dims[k]
                )));
            }
        }

        let cols = space.columns().clone();
        let coords = |q: &QuotientElem| -> Result<Vec<(usize, Rat)>> {
            cols.coords(q)
                .ok_or_else(|| Error::consistency("product left the truncation window"))
        };

        let mut generators: Vec<(QuotientElem, i64)> = Vec::new();
        let mut images: HashMap<Word, QuotientElem> = HashMap::new();
        images.insert(Vec::new(), QuotientElem::one());
        let mut span = EchelonSpace::new();
        span.insert(&coords(&QuotientElem::one())?);
        for d in 1..=n {
            let gdeg: Vec<i64> = generators.iter().map(|g| g.1).collect();
            for (w, wd) in generator_words(&gdeg, d) {
                if wd != d || images.contains_key(&w) {
                    continue;
                }
                // G_{w0} acting on the image of the shorter tail
                let tail = images[&w[1..].to_vec()].clone();
                let img = quotient.product(&generators[w[0] as usize].0, &tail);
                span.insert(&coords(&img)?);
                images.insert(w, img);
            }
            let mut found = 0;
            for v in space.new_in_degree(d) {
                if span.insert(&coords(&v)?) {
                    images.insert(vec![generators.len() as u32], v.clone());
                    generators.push((v, d));
                    found += 1;
                }
            }
            let want = degrees.iter().filter(|&&x| x == d).count();
            if found != want {
                return Err(Error::consistency(format!(
                    "found {found} generators in degree {d}, the slice has {want} coordinates there"
                )));
            }
        }

        let gdeg: Vec<i64> = generators.iter().map(|g| g.1).collect();
        let monomials = generator_words(&gdeg, n);
        let mut columns = Vec::with_capacity(monomials.len());
        for (w, _) in &monomials {
            columns.push(coords(&images[w])?);
        }
        let images_mat = SparseMat::from_columns(cols.len(), &columns);
        if images_mat.rank() != columns.len() || columns.len() != *dims.last().unwrap() {
            return Err(Error::consistency("ordered generator monomials are not a basis of F_N U(g,e)"));
        }

        Ok(WAlgebra {
            slice_frame: SliceFrame::new(s)?,
            quotient,
            setup: s.clone(),
            truncation: n,
            space,
            generators,
            monomials,
            images: images_mat,
        })
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn setup(&self) -> &NilpotentSetup {
        &self.setup
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn space(&self) -> &WhittakerSpace {
        &self.space
    }

    /// Generators with their Kazhdan degrees, ascending.
    pub fn generators(&self) -> &[(QuotientElem, i64)] {
        &self.generators
    }

    pub fn generator_degrees(&self) -> Vec<i64> {
        self.generators.iter().map(|g| g.1).collect()
    }

    pub fn generator_names(&self) -> Vec<String> {
        (1..=self.generators.len()).map(|i| format!("G{i}")).collect()
    }

    pub fn product(&self, a: &QuotientElem, b: &QuotientElem) -> QuotientElem {
        self.quotient.product(a, b)
    }

    pub fn commutator(&self, a: &QuotientElem, b: &QuotientElem) -> QuotientElem {
        self.product(a, b).sub(&self.product(b, a))
    }

    /// Coordinates in the ordered generator monomials; `None` when `q` is
    /// not a Whittaker vector of degree at most `N`.
    pub fn express(&self, q: &QuotientElem) -> Result<Option<NCPoly>> {
        Ok(self.express_many(std::slice::from_ref(q))?.pop().unwrap())
    }

    pub fn express_many(&self, qs: &[QuotientElem]) -> Result<Vec<Option<NCPoly>>> {
        let cols = self.space.columns();
        let mut rhs = Vec::with_capacity(qs.len());
        let mut inside = Vec::with_capacity(qs.len());
        for q in qs {
            match cols.coords(q) {
                Some(c) => {
                    rhs.push(vecops::from_sparse(cols.len(), &c));
                    inside.push(true);
                }
                None => {
                    rhs.push(vecops::zeros(cols.len()));
                    inside.push(false);
                }
            }
        }
        let sols = solve_many(&self.images, &rhs)?;
        Ok(sols
            .into_iter()
            .zip(inside)
            .map(|(x, ok)| {
                let x = x.filter(|_| ok)?;
                let mut p = NCPoly::zero();
                for ((w, _), c) in self.monomials.iter().zip(&x) {
                    p.add_term(w.clone(), c.clone());
                }
                Some(p)
            })
            .collect())
    }

    /// Evaluates an ordered polynomial in the generators.
    pub fn evaluate(&self, p: &NCPoly) -> Result<QuotientElem> {
        let mut out = QuotientElem::zero();
        for (w, c) in p.terms() {
            let mut acc = QuotientElem::one();
            for &g in w.iter().rev() {
                let gen = self
                    .generators
                    .get(g as usize)
                    .ok_or_else(|| Error::usage(format!("no generator with index {g}")))?;
                acc = self.product(&gen.0, &acc);
            }
            out.add_scaled(c, &acc);
        }
        Ok(out)
    }

    /// Top Kazhdan symbol restricted to the slice.
    pub fn slice_symbol(&self, q: &QuotientElem) -> Poly {
        let env = self.quotient.env();
        env.kazhdan_symbol(q.rep()).substitute(&self.slice_frame.images)
    }

    pub fn slice_names(&self) -> &[String] {
        &self.slice_frame.names
    }

    /// Pairs `i < j` whose commutator degree `d_i + d_j - 2` fits in the
    /// truncation.
    pub fn bracket_pairs(&self) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        let mut inside = Vec::new();
        let mut beyond = Vec::new();
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                if self.generators[i].1 + self.generators[j].1 - 2 <= self.truncation {
                    inside.push((i, j));
                } else {
                    beyond.push((i, j));
                }
            }
        }
        (inside, beyond)
    }

    /// `[G_i, G_j]` in generator monomials for all pairs inside the window.
    pub fn structure_constants(&self) -> Result<BTreeMap<(usize, usize), NCPoly>> {
        let (pairs, _) = self.bracket_pairs();
        let comms: Vec<QuotientElem> = pairs
            .iter()
            .map(|&(i, j)| self.commutator(&self.generators[i].0, &self.generators[j].0))
            .collect();
        let mut out = BTreeMap::new();
        for (p, c) in pairs.into_iter().zip(self.express_many(&comms)?) {
            let c = c.ok_or_else(|| {
                Error::consistency(format!("commutator [G{}, G{}] is not in the span of generator monomials", p.0 + 1, p.1 + 1))
            })?;
            out.insert(p, c);
        }
        Ok(out)
    }

    /// Assigns each generator a distinct slice coordinate occurring in the
    /// linear part of its slice symbol, by elimination in generator order.
    fn leading_slice_coordinates(&self) -> Result<Vec<usize>> {
        let k = self.slice_frame.names.len();
        let mut picked: Vec<(usize, Vec<Rat>)> = Vec::new();
        let mut out = Vec::new();
        for (g, _) in &self.generators {
            let sym = self.slice_symbol(g);
            let mut lin: Vec<Rat> = (0..k).map(|t| sym.coeff(&unit_exps(k, t))).collect();
            for (p, row) in &picked {
                if !lin[*p].is_zero() {
                    let c = lin[*p].clone();
                    vecops::add_scaled(&mut lin, &-c, row);
                }
            }
            let p = lin.iter().position(|c| !c.is_zero()).ok_or_else(|| {
                Error::consistency("generator symbols do not restrict to independent slice coordinates")
            })?;
            let c = lin[p].recip();
            let row = vecops::scale(&c, &lin);
            picked.push((p, row));
            out.push(p);
        }
        Ok(out)
    }

    pub fn presentation(&self) -> Result<WPresentation> {
        let g = self.setup.frame.algebra();
        let names = self.generator_names();
        let leads = self.leading_slice_coordinates()?;
        let generators = self
            .generators
            .iter()
            .zip(&leads)
            .enumerate()
            .map(|(i, ((q, d), &p))| GeneratorInfo {
                name: names[i].clone(),
                degree: *d,
                element: q.clone(),
                text: self.quotient.format(q),
                slice_symbol: self.slice_symbol(q).format(&self.slice_frame.names),
                leading_slice_monomial: self.slice_frame.names[p].clone(),
            })
            .collect();
        let dims = self.space.filtration_dims();
        let filtration_dims: BTreeMap<i64, usize> =
            dims.iter().enumerate().map(|(k, &d)| (k as i64, d)).collect();
        let mut graded_dims = BTreeMap::new();
        for (k, &d) in dims.iter().enumerate() {
            let prev = if k == 0 { 0 } else { dims[k - 1] };
            if d > prev {
                graded_dims.insert(k as i64, d - prev);
            }
        }
        let sc = self.structure_constants()?;
        let key = |i: usize, j: usize| format!("[{},{}]", names[i], names[j]);
        let (_, omitted) = self.bracket_pairs();
        Ok(WPresentation {
            algebra: format!("{}{}", g.type_tag, g.rank),
            nilpotent: self.setup.frame.algebra().describe(&self.setup.e_in_frame()?),
            truncation: self.truncation,
            slice_degrees: self.slice_frame.degrees.clone(),
            graded_dims,
            filtration_dims,
            generators,
            structure_text: sc.iter().map(|(&(i, j), p)| (key(i, j), p.format(&names))).collect(),
            structure_consts: sc.into_iter().map(|((i, j), p)| (key(i, j), p)).collect(),
            omitted_pairs: omitted,
        })
    }

    /// The image of a central element of `U(g)` (in frame coordinates).
    pub fn center_image(&self, z: &NCPoly) -> Result<CenterImage> {
        let env = self.quotient.env();
        for i in 0..env.dim() as u32 {
            if !env.commutator(&NCPoly::generator(i), z)?.is_zero() {
                return Err(Error::domain(format!(
                    "element does not commute with {}",
                    env.labels()[i as usize]
                )));
            }
        }
        let image = self.quotient.reduce(z)?;
        if !self.quotient.is_whittaker(&image) {
            return Err(Error::consistency("image of a central element is not a Whittaker vector"));
        }
        let degree = match self.quotient.kazhdan_degree(&image) {
            Degree::Finite(d) => d,
            Degree::NegInfinity => 0,
        };
        if degree > self.truncation {
            return Err(Error::usage(format!(
                "image has degree {degree}, beyond the truncation {}",
                self.truncation
            )));
        }
        let in_generators = self
            .express(&image)?
            .ok_or_else(|| Error::consistency("central image is outside the generator span"))?;
        let mut commutes_with = Vec::new();
        let mut central = true;
        for (i, (g, d)) in self.generators.iter().enumerate() {
            if degree + d - 2 <= self.truncation {
                if self.commutator(&image, g).is_zero() {
                    commutes_with.push(i);
                } else {
                    central = false;
                }
            }
        }
        Ok(CenterImage {
            text: self.quotient.format(&image),
            in_generators_text: in_generators.format(&self.generator_names()),
            element: image,
            degree,
            in_generators,
            commutes_with,
            central,
        })
    }
}

fn unit_exps(k: usize, t: usize) -> Vec<u32> {
    let mut e = vec![0; k];
    e[t] = 1;
    e
}


/// The central element of `U(g)` symmetrizing `tr(X^k)`, in frame letters.
pub fn trace_casimir(s: &NilpotentSetup, k: u32) -> Result<NCPoly> {
    let fa = s.frame.algebra();
    let env = crate::pbw::UEnv::from_setup(s)?;
    env.symmetrize(&fa.trace_invariant(k)?)
}
