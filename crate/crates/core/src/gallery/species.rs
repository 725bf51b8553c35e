use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::permutations;
use crate::enriched::{Coend, Factor, FinVCat, Generator, Integrand, Module, Slot};
use crate::error::{Error, Result};
use crate::linalg::{int, one, Matrix};
use crate::promonoidal::{convolve, PromonoidalStructure};

pub const MAX_SPECIES_TRUNCATION: usize = 6;
pub const MAX_ANALYTIC_DIM: usize = 4;

/// The free `V`-category on finite sets `0..=N` and their bijections, with
/// the Day structure `p(a,b,c) = k[Bij(a ⊔ b, c)]` and `j = δ_0`.
#[derive(Clone, Debug)]
pub struct SpeciesCategory {
    pub truncation: usize,
    pub cat: Arc<FinVCat>,
    pub ps: PromonoidalStructure,
    /// `perms[n]`: the basis of `k[S_n]` in lexicographic order.
    perms: Vec<Vec<Vec<usize>>>,
}

fn perm_index(perms: &[Vec<usize>], p: &[usize]) -> usize {
    perms.binary_search_by(|q| q.as_slice().cmp(p)).expect("permutation")
}

/// Adjacent transposition `(i i+1)` on `0..n`.
fn adjacent(n: usize, i: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(i, i + 1);
    p
}

pub fn build_species_category(truncation: usize) -> Result<SpeciesCategory> {
    let n_max = truncation;
    if n_max > MAX_SPECIES_TRUNCATION {
        return Err(Error::Oversized(format!("species truncation {n_max} exceeds {MAX_SPECIES_TRUNCATION}")));
    }
    let perms: Vec<Vec<Vec<usize>>> = (0..=n_max).map(permutations).collect();
    let count = n_max + 1;
    let hom = (0..count * count).map(|i| if i / count == i % count { perms[i / count].len() } else { 0 }).collect();
    let objects = (0..count).map(|n| n.to_string()).collect();
    let generators = (2..count)
        .flat_map(|n| {
            let perms = &perms;
            (0..n - 1).map(move |i| Generator { src: n, dst: n, vector: vec![(perm_index(&perms[n], &adjacent(n, i)), one())] })
        })
        .collect();
    let cat = FinVCat::monomial(
        format!("Bij≤{n_max}"),
        objects,
        hom,
        |a, _, _, psi, phi| {
            let (s, t) = (&perms[a][psi], &perms[a][phi]);
            let st: Vec<usize> = t.iter().map(|&k| s[k]).collect();
            Some(perm_index(&perms[a], &st))
        },
        |_| 0,
    )?
    .with_generators(generators)?;
    let cat = Arc::new(cat);
    let slots = vec![Slot::contra(&cat), Slot::contra(&cat), Slot::co(&cat)];
    let dims = (0..count * count * count)
        .map(|i| {
            let (a, b, c) = (i / (count * count), (i / count) % count, i % count);
            if a + b == c { perms[c].len() } else { 0 }
        })
        .collect();
    let p = Module::from_fn("k[Bij(a⊔b,c)]", slots, dims, |s, idx, _| {
        let (a, b, c) = (idx / (count * count), (idx / count) % count, idx % count);
        if a + b != c {
            return None;
        }
        let basis = &perms[c];
        let hom_basis = &perms[[a, b, c][s]];
        let w = basis.len();
        let mut entries = Vec::with_capacity(hom_basis.len() * w);
        for (g, sigma) in hom_basis.iter().enumerate() {
            for (v, beta) in basis.iter().enumerate() {
                let out: Vec<usize> = match s {
                    // β ∘ (σ ⊔ 1)
                    0 => (0..c).map(|k| if k < a { beta[sigma[k]] } else { beta[k] }).collect(),
                    // β ∘ (1 ⊔ σ)
                    1 => (0..c).map(|k| if k < a { beta[k] } else { beta[a + sigma[k - a]] }).collect(),
                    // σ ∘ β
                    _ => beta.iter().map(|&k| sigma[k]).collect(),
                };
                entries.push((perm_index(basis, &out), g * w + v, one()));
            }
        }
        Some(Matrix::from_triplets(w, hom_basis.len() * w, entries))
    })?;
    let j = Module::functor("δ0", &cat, (0..count).map(|n| usize::from(n == 0)).collect(), |a, _| {
        (a == 0).then(|| Matrix::identity(1))
    })?;
    let ps = PromonoidalStructure::new(&cat, p, Some(j))?;
    Ok(SpeciesCategory { truncation: n_max, cat, ps, perms })
}

/// A species truncated at `N`: for each `n ≤ N` a representation of `S_n`
/// given by the images of the adjacent transpositions.
#[derive(Clone, Debug)]
pub struct Species {
    pub name: String,
    pub truncation: usize,
    pub dims: Vec<usize>,
    /// `generators[n][i]` is the image of `(i i+1)`.
    pub generators: Vec<Vec<Matrix>>,
}

impl Species {
    /// Checks shapes and the Coxeter relations of `S_n`.
    pub fn new(name: impl Into<String>, generators: Vec<Vec<Matrix>>, dims: Vec<usize>) -> Result<Species> {
        let name = name.into();
        if dims.len() != generators.len() || dims.is_empty() {
            return Err(Error::InvalidRepresentation(format!("{name}: one entry per degree is required")));
        }
        let truncation = dims.len() - 1;
        for (n, gens) in generators.iter().enumerate() {
            let d = dims[n];
            if gens.len() != n.saturating_sub(1) {
                return Err(Error::InvalidRepresentation(format!("{name}: S_{n} needs {} generators", n.saturating_sub(1))));
            }
            if gens.iter().any(|g| g.shape() != (d, d)) {
                return Err(Error::InvalidRepresentation(format!("{name}: generator of S_{n} is not {d}x{d}")));
            }
            let id = Matrix::identity(d);
            for i in 0..gens.len() {
                if gens[i].mul(&gens[i]) != id {
                    return Err(Error::InvalidRepresentation(format!("{name}: s{i}² ≠ 1 in degree {n}")));
                }
                for k in i + 1..gens.len() {
                    let st = gens[i].mul(&gens[k]);
                    let ok = if k == i + 1 { st.mul(&st).mul(&st) == id } else { st.mul(&st) == id };
                    if !ok {
                        return Err(Error::InvalidRepresentation(format!(
                            "{name}: braid relation between s{i} and s{k} fails in degree {n}"
                        )));
                    }
                }
            }
        }
        Ok(Species { name, truncation, dims, generators })
    }

    /// Multiplicities of the trivial and sign representations in each degree.
    pub fn from_characters(name: impl Into<String>, trivial: &[usize], sign: &[usize]) -> Result<Species> {
        if trivial.len() != sign.len() {
            return Err(Error::InvalidRepresentation("multiplicity lists differ in length".into()));
        }
        let dims: Vec<usize> = trivial.iter().zip(sign).map(|(t, s)| t + s).collect();
        let generators = (0..dims.len())
            .map(|n| {
                let diag = Matrix::identity(trivial[n]).direct_sum(&Matrix::identity(sign[n]).scale(&int(-1)));
                vec![diag; n.saturating_sub(1)]
            })
            .collect();
        Species::new(name, generators, dims)
    }

    pub fn zero(truncation: usize) -> Species {
        let z = vec![0; truncation + 1];
        Species::from_characters("0", &z, &z).expect("zero species")
    }

    /// `X`: one point in degree 1.
    pub fn singleton(truncation: usize) -> Species {
        let t: Vec<usize> = (0..=truncation).map(|n| usize::from(n == 1)).collect();
        Species::from_characters("X", &t, &vec![0; truncation + 1]).expect("singleton species")
    }

    /// `E`: the trivial representation in every degree.
    pub fn exponential(truncation: usize) -> Species {
        Species::from_characters("E", &vec![1; truncation + 1], &vec![0; truncation + 1]).expect("exponential species")
    }

    /// Seeded sum of trivial and sign representations, at most `max_mult`
    /// copies of each per degree.
    pub fn random(truncation: usize, max_mult: usize, seed: u64) -> Species {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || (0..=truncation).map(|_| rng.random_range(0..=max_mult)).collect::<Vec<_>>();
        let trivial = draw();
        let mut sign = draw();
        // Degrees 0 and 1 have only one irreducible.
        for s in sign.iter_mut().take(2) {
            *s = 0;
        }
        Species::from_characters(format!("sp{seed}"), &trivial, &sign).expect("random species")
    }

    /// `dim f(n)`, or an overflow error past the truncation.
    pub fn coefficient(&self, n: usize) -> Result<usize> {
        self.dims.get(n).copied().ok_or(Error::TruncationOverflow { requested: n, truncation: self.truncation })
    }

    fn require_truncation(&self, sc: &SpeciesCategory) -> Result<()> {
        if self.truncation < sc.truncation {
            return Err(Error::TruncationOverflow { requested: sc.truncation, truncation: self.truncation });
        }
        if self.truncation > sc.truncation {
            return Err(Error::TruncationOverflow { requested: self.truncation, truncation: sc.truncation });
        }
        Ok(())
    }

    /// The image of every permutation of `0..n`, in `perms` order.
    fn all_images(&self, n: usize, perms: &[Vec<usize>]) -> Vec<Matrix> {
        let d = self.dims[n];
        let mut images: Vec<Option<Matrix>> = vec![None; perms.len()];
        images[0] = Some(Matrix::identity(d));
        let mut queue = vec![0];
        while let Some(t) = queue.pop() {
            for i in 0..n.saturating_sub(1) {
                let s = adjacent(n, i);
                let st: Vec<usize> = perms[t].iter().map(|&k| s[k]).collect();
                let idx = perm_index(perms, &st);
                if images[idx].is_none() {
                    let m = self.generators[n][i].mul(images[t].as_ref().expect("visited"));
                    images[idx] = Some(m);
                    queue.push(idx);
                }
            }
        }
        images.into_iter().map(|m| m.expect("adjacent transpositions generate S_n")).collect()
    }

    /// The species as a functor on the category of finite sets.
    pub fn to_module(&self, sc: &SpeciesCategory) -> Result<Module> {
        self.require_truncation(sc)?;
        let images: Vec<Vec<Matrix>> = (0..=self.truncation).map(|n| self.all_images(n, &sc.perms[n])).collect();
        Module::functor(self.name.clone(), &sc.cat, self.dims.clone(), |a, _| {
            let refs: Vec<&Matrix> = images[a].iter().collect();
            Some(Matrix::hstack(&refs, self.dims[a]).expect("square blocks"))
        })
    }

    /// Reads a functor on the category back as generator images.
    pub fn from_module(name: impl Into<String>, m: &Module, sc: &SpeciesCategory) -> Result<Species> {
        let dims: Vec<usize> = (0..=sc.truncation).map(|n| m.dim(n)).collect();
        let generators = (0..=sc.truncation)
            .map(|n| {
                (0..n.saturating_sub(1))
                    .map(|i| {
                        let g = vec![(perm_index(&sc.perms[n], &adjacent(n, i)), one())];
                        m.act_by(0, n, n, &g)
                    })
                    .collect()
            })
            .collect();
        Species::new(name, generators, dims)
    }
}

/// `(f ∗ g)(n) = ∫^{ab} f(a) ⊗ g(b) ⊗ k[Bij(a ⊔ b, n)]` by the coend engine.
pub fn species_convolve(sc: &SpeciesCategory, f: &Species, g: &Species) -> Result<Species> {
    let fm = Arc::new(f.to_module(sc)?);
    let gm = Arc::new(g.to_module(sc)?);
    let h = convolve(&sc.ps, &fm, &gm)?;
    Species::from_module(format!("{}∗{}", f.name, g.name), &h, sc)
}

/// Pointwise tensor with the diagonal action.
pub fn species_hadamard(f: &Species, g: &Species) -> Result<Species> {
    if f.truncation != g.truncation {
        let (lo, hi) = (f.truncation.min(g.truncation), f.truncation.max(g.truncation));
        return Err(Error::TruncationOverflow { requested: hi, truncation: lo });
    }
    let dims = f.dims.iter().zip(&g.dims).map(|(a, b)| a * b).collect();
    let generators = f
        .generators
        .iter()
        .zip(&g.generators)
        .map(|(fs, gs)| fs.iter().zip(gs).map(|(x, y)| x.kron(y)).collect())
        .collect();
    Species::new(format!("{}×{}", f.name, g.name), generators, dims)
}

/// `dim f(n) ⊗_{S_n} (k^d)^{⊗n}` for `n = 0..=N`.
pub fn analytic_evaluate(sc: &SpeciesCategory, f: &Species, d: usize) -> Result<Vec<usize>> {
    if d > MAX_ANALYTIC_DIM {
        return Err(Error::Oversized(format!("analytic evaluation at dimension {d} exceeds {MAX_ANALYTIC_DIM}")));
    }
    let fm = Arc::new(f.to_module(sc)?);
    let count = sc.truncation + 1;
    let mut out = Vec::with_capacity(count);
    for n in 0..count {
        // (k^d)^{⊗n} in degree n only, with σ acting by w ↦ w ∘ σ on words.
        let words = d.pow(n as u32);
        let dims = (0..count).map(|m| if m == n { words } else { 0 }).collect();
        let perms = &sc.perms[n];
        let power = Module::from_fn(format!("V^{n}"), vec![Slot::contra(&sc.cat)], dims, |_, a, _| {
            if a != n {
                return None;
            }
            let mut entries = Vec::with_capacity(perms.len() * words);
            for (g, sigma) in perms.iter().enumerate() {
                for w in 0..words {
                    let letters: Vec<usize> = (0..n).map(|k| w / d.pow((n - 1 - k) as u32) % d).collect();
                    let image = sigma.iter().fold(0, |acc, &k| acc * d + letters[k]);
                    entries.push((image, g * words + w, one()));
                }
            }
            Some(Matrix::from_triplets(words, perms.len() * words, entries))
        })?;
        let integrand = Integrand::new(
            vec![Slot::contra(&sc.cat), Slot::co(&sc.cat)],
            vec![Factor::new(Arc::new(power), vec![0]), Factor::new(fm.clone(), vec![1])],
        )?;
        out.push(Coend::compute(integrand, vec![(0, 1)])?.dim(0));
    }
    Ok(out)
}
