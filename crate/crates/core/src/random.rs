//! Seeded random functors for test families.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enriched::{representable, FinVCat, Module, Slot};

/// A random functor `cat → V`, deterministic in `(cat, max_dim, seed)`.
///
/// The functor is a direct sum `⊕_a A(a,−)^{m_a}`. Each multiplicity is
/// drawn from `0..=max_dim / w_a` where `w_a` is the largest dimension of
/// `A(a,−)`, so values stay within `max_dim` whenever some copy fits; when
/// no copy fits the multiplicity is at most one.
pub fn gen_random_functor(cat: &Arc<FinVCat>, max_dim: usize, seed: u64) -> Module {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = cat.len();
    let name = format!("rand{seed}");
    let mut out = Module::new(name.clone(), vec![Slot::co(cat)], vec![0; n]).expect("zero functor");
    if max_dim == 0 {
        return out;
    }
    for a in 0..n {
        let widest = (0..n).map(|b| cat.hom_dim(a, b)).max().unwrap_or(1).max(1);
        let cap = (max_dim / widest).max(1);
        let m = rng.random_range(0..=cap);
        if m == 0 {
            continue;
        }
        let r = representable(cat, a).expect("object in range");
        for _ in 0..m {
            out = out.direct_sum(&r).expect("same category");
        }
    }
    out.renamed(name)
}

/// `gen_random_functor` wrapped in an `Arc`, for building families.
pub fn random_family(cat: &Arc<FinVCat>, count: usize, max_dim: usize, seed: u64) -> Vec<Arc<Module>> {
    (0..count as u64).map(|i| Arc::new(gen_random_functor(cat, max_dim, seed.wrapping_mul(1000).wrapping_add(i)))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        let cat = Arc::new(FinVCat::monomial("kZ3", vec!["*".into()], vec![3], |_, _, _, p, q| Some((p + q) % 3), |_| 0).unwrap());
        let a = gen_random_functor(&cat, 4, 7);
        let b = gen_random_functor(&cat, 4, 7);
        assert_eq!(a, b);
        assert!(a.check().all_passed());
        assert_eq!(gen_random_functor(&cat, 0, 7).total_dim(), 0);
        let d = Arc::new(FinVCat::discrete("D", vec!["x".into(), "y".into()]));
        for s in 0..20 {
            let f = gen_random_functor(&d, 3, s);
            assert!(f.dims().iter().all(|&x| x <= 3));
            assert!(f.check().all_passed());
        }
    }
}
