use std::sync::Arc;

use catfourier::enriched::{check_functor, coend, end, hom_bimodule};
use catfourier::gallery::{
    bool_enumerate_kernels, build_discrete_monoidal_group, build_group_hopf, build_species_category, hopf_fourier_iso,
    species_convolve, BoolInstance, FiniteGroup, HopfData, SchemeData, Species,
};
use catfourier::kernel::transform;
use catfourier::linalg::{format_rational, parse_rational, ratio};
use catfourier::promonoidal::convolve;
use catfourier::random::gen_random_functor;
use catfourier::{FinVCat, Kernel, Matrix, Module, Slot};
use proptest::prelude::*;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn group_strategy() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![(1usize..=12).prop_map(FiniteGroup::cyclic), (1usize..=3).prop_map(FiniteGroup::symmetric)]
}

fn small_cat() -> impl Strategy<Value = Arc<FinVCat>> {
    prop_oneof![
        (1usize..=4).prop_map(|n| build_discrete_monoidal_group(&FiniteGroup::cyclic(n), false).unwrap().cat),
        (2usize..=3).prop_map(|n| build_group_hopf(&FiniteGroup::cyclic(n)).unwrap().cat),
        Just(build_group_hopf(&FiniteGroup::symmetric(3)).unwrap().cat),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn fourier_maps_are_mutually_inverse(group in group_strategy()) {
        let h = HopfData::from_group(&group);
        prop_assert!(h.check().all_passed());
        let (iso, report) = hopf_fourier_iso(&h);
        prop_assert!(report.all_passed());
        let n = group.order();
        prop_assert!(iso.phi.compose(&iso.phi_inverse).unwrap() == Matrix::identity(n * n));
        // Φ(g⊗h) = gh⁻¹⊗h.
        let perm: Vec<usize> = (0..n * n).map(|i| group.mul(i / n, group.inv(i % n)) * n + i % n).collect();
        prop_assert_eq!(iso.phi, Matrix::permutation(&perm));
    }

    #[test]
    fn cyclic_schemes_count_correctly(n in 1usize..=9) {
        let s = SchemeData::cyclic(n).unwrap();
        prop_assert_eq!(s.classes, n);
        let class = |x: usize, y: usize| s.class_of[x * n + y];
        for c in 0..n {
            let (x, y) = (0..n * n).map(|i| (i / n, i % n)).find(|&(x, y)| class(x, y) == c).unwrap();
            for a in 0..n {
                for b in 0..n {
                    let count = (0..n).filter(|&z| class(x, z) == a && class(z, y) == b).count();
                    prop_assert_eq!(s.p(a, b, c), count);
                    let st = &s.involution;
                    prop_assert_eq!(s.p(a, b, c), s.p(st[b], st[a], st[c]));
                }
            }
        }
        prop_assert_eq!((0..n).map(|a| s.valency(a)).sum::<usize>(), n);
    }

    #[test]
    fn boolean_submodules_are_subgroups(m in 1usize..=12) {
        let mut got = bool_enumerate_kernels(&BoolInstance::submodule(m).unwrap()).unwrap();
        let mut want: Vec<Vec<usize>> = vec![vec![]];
        want.extend((1..=m).filter(|d| m % d == 0).map(|d| (0..m).filter(|x| x % d == 0).collect::<Vec<_>>()));
        got.sort();
        want.sort();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn random_functors_are_valid_and_deterministic(cat in small_cat(), max_dim in 0usize..=4, seed in any::<u64>()) {
        let f = gen_random_functor(&cat, max_dim, seed);
        prop_assert!(check_functor(&f).all_passed());
        prop_assert_eq!(&f, &gen_random_functor(&cat, max_dim, seed));
        if max_dim == 0 {
            prop_assert_eq!(f.total_dim(), 0);
        }
    }

    #[test]
    fn coend_and_end_of_dual_agree(cat in small_cat(), seed in 0u64..10_000) {
        let op = Arc::new(cat.opposite());
        let left = gen_random_functor(&op, 2, seed).op_slot_with(0, &cat);
        let right = gen_random_functor(&cat, 2, seed + 1);
        let t = Arc::new(left.exterior(&right).unwrap().direct_sum(&hom_bimodule(&cat)).unwrap());
        let dual = Arc::new(t.dual().permute_slots(&[1, 0]));
        prop_assert_eq!(coend(&t).unwrap().dim(0), end(&dual).unwrap().dim(0));
    }

    #[test]
    fn hom_kernel_transform_is_identity_on_dims(cat in small_cat(), seed in any::<u64>()) {
        let f = Arc::new(gen_random_functor(&cat, 3, seed));
        let n = cat.len();
        let p = Module::new("p", vec![Slot::contra(&cat), Slot::contra(&cat), Slot::co(&cat)], vec![0; n * n * n]);
        let ps = catfourier::PromonoidalStructure::new(&cat, p.unwrap(), None).unwrap();
        let kf = transform(&Kernel::hom(&ps), &f).unwrap();
        prop_assert_eq!(kf.dims(), f.dims());
    }

    #[test]
    fn discrete_group_convolution_counts(n in 1usize..=5, fd in prop::collection::vec(0usize..3, 5), gd in prop::collection::vec(0usize..3, 5)) {
        let group = FiniteGroup::cyclic(n);
        let dg = build_discrete_monoidal_group(&group, false).unwrap();
        let f = Arc::new(Module::discrete("f", vec![Slot::co(&dg.cat)], fd[..n].to_vec()).unwrap());
        let g = Arc::new(Module::discrete("g", vec![Slot::co(&dg.cat)], gd[..n].to_vec()).unwrap());
        let h = convolve(&dg.ps, &f, &g).unwrap();
        for c in 0..n {
            let want: usize = (0..n).flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| group.mul(a, b) == c)
                .map(|(a, b)| fd[a] * gd[b])
                .sum();
            prop_assert_eq!(h.dim(c), want);
        }
    }

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = ratio(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn species_convolution_is_binomial(seed in any::<u64>(), trunc in 1usize..=4) {
        let sc = build_species_category(trunc).unwrap();
        let f = Species::random(trunc, 2, seed);
        let g = Species::random(trunc, 2, seed ^ 0x9e37);
        let h = species_convolve(&sc, &f, &g).unwrap();
        for n in 0..=trunc {
            let want: usize = (0..=n).map(|k| binom(n, k) * f.dims[k] * g.dims[n - k]).sum();
            prop_assert_eq!(h.dims[n], want);
        }
    }
}
