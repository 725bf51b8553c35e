use std::sync::Arc;

use super::*;
use crate::enriched::check_category_axioms;
use crate::kernel::check_kernel_multiplicative;
use crate::linalg::{int, Matrix};
use crate::promonoidal::{check_s_autonomy, check_unit_laws, convolve};

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn group_tables() {
    let s3 = FiniteGroup::symmetric(3);
    assert_eq!(s3.order(), 6);
    // Non-abelian: some pair does not commute.
    assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
    let bad = FiniteGroup::new("bad", vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 0]]);
    assert!(matches!(bad, Err(crate::Error::InvalidGroup(_))));
    assert_eq!(FiniteGroup::from_name("z4").unwrap().order(), 4);
    assert!(FiniteGroup::from_name("q8").is_err());
    assert_eq!(permutations(3).len(), 6);
}

#[test]
fn hopf_axioms_and_fourier() {
    for g in [FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
        let h = HopfData::from_group(&g);
        let r = h.check();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let (iso, r) = hopf_fourier_iso(&h);
        assert!(r.all_passed());
        // Φ(x⊗y) = xy⁻¹⊗y, checked basis element by basis element.
        let n = g.order();
        for x in 0..n {
            for y in 0..n {
                let col = iso.phi.column(x * n + y);
                assert_eq!(col.len(), 1);
                assert_eq!(col[0].0, g.mul(x, g.inv(y)) * n + y);
            }
        }
    }
}

#[test]
fn z2_fourier_is_the_listed_permutation() {
    let (iso, _) = hopf_fourier_iso(&HopfData::from_group(&FiniteGroup::cyclic(2)));
    // e⊗e ↦ e⊗e, e⊗g ↦ g⊗g, g⊗e ↦ g⊗e, g⊗g ↦ e⊗g
    assert_eq!(iso.phi, Matrix::permutation(&[0, 3, 2, 1]));
}

#[test]
fn group_hopf_structure() {
    let gh = build_group_hopf(&FiniteGroup::cyclic(2)).unwrap();
    assert_eq!(gh.cat.hom_dim(0, 0), 2);
    assert_eq!(gh.ps.p_dim(0, 0, 0), 4);
    for ps in [&gh.ps, &gh.pointwise] {
        let r = ps.check();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
    assert!(gh.antipode.check().all_passed());
    let r = check_kernel_multiplicative(&gh.kernel).unwrap();
    assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    let s3 = build_group_hopf(&FiniteGroup::symmetric(3)).unwrap();
    assert!(check_category_axioms(&s3.cat).all_passed());
    assert!(s3.ps.check().all_passed());
}

#[test]
fn hopf_convolution_has_product_dims() {
    let gh = build_group_hopf(&FiniteGroup::cyclic(3)).unwrap();
    let fam = crate::random::random_family(&gh.cat, 3, 4, 7);
    for f in &fam {
        for g in &fam {
            let h = convolve(&gh.ps, f, g).unwrap();
            assert_eq!(h.dim(0), f.dim(0) * g.dim(0));
        }
    }
}

#[test]
fn discrete_group_tables() {
    let z2 = FiniteGroup::cyclic(2);
    let dg = build_discrete_monoidal_group(&z2, false).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                assert_eq!(dg.ps.p_dim(a, b, c), usize::from((a + b) % 2 == c));
            }
        }
    }
    let z3 = FiniteGroup::cyclic(3);
    let mono = build_discrete_monoidal_group(&z3, false).unwrap();
    let closed = build_discrete_monoidal_group(&z3, true).unwrap();
    assert_eq!(mono.ps.p().dims(), closed.ps.p().dims());
    assert!(check_s_autonomy(&closed.ps, &closed.antipode).all_passed());
    // p(a,b,Sc) = [abc = e]
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                assert_eq!(closed.ps.p_dim(a, b, z3.inv(c)), usize::from((a + b + c) % 3 == 0));
            }
        }
    }
    assert!(closed.kernel.check().all_passed());
}

fn hamming() -> SchemeData {
    SchemeData::hamming(2, 2).unwrap()
}

#[test]
fn hamming_intersection_numbers() {
    let s = hamming();
    assert_eq!(s.classes, 3);
    // Brute force: z with d(x,z) = d(z,y) = 1, for (x,y) at each distance.
    let d = |x: usize, y: usize| (x ^ y).count_ones() as usize;
    for c in 0..3 {
        let (x, y) = (0..4).flat_map(|x| (0..4).map(move |y| (x, y))).find(|&(x, y)| d(x, y) == c).unwrap();
        let count = (0..4).filter(|&z| d(x, z) == 1 && d(z, y) == 1).count();
        assert_eq!(s.p(1, 1, c), count);
    }
    assert_eq!((0..3).map(|c| s.p(1, 1, c)).collect::<Vec<_>>(), vec![2, 0, 2]);
    let m = |a| s.matrix(a);
    let rhs = m(0).scale(&int(2)).add(&m(2).scale(&int(2))).unwrap();
    assert_eq!(m(1).compose(&m(1)).unwrap(), rhs);
    assert!(verify_scheme_kernel(&s).all_passed());
}

#[test]
fn scheme_galleries() {
    for s in [hamming(), SchemeData::cyclic(4).unwrap()] {
        let r = verify_scheme_kernel(&s);
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let g = build_scheme(s).unwrap();
        assert!(g.ps.check().all_passed());
        let r = check_kernel_multiplicative(&g.kernel).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let u = check_unit_laws(&g.ps, &Arc::new(crate::enriched::representable(&g.cat, 1).unwrap())).unwrap();
        assert!(u.all_passed());
    }
    let c4 = SchemeData::cyclic(4).unwrap();
    assert_eq!(c4.classes, 4);
    let trivial = SchemeData::from_partition("pt", 1, &[0]).unwrap();
    assert_eq!(trivial.classes, 1);
}

#[test]
fn non_scheme_partition_is_rejected() {
    // On 3 points: diagonal, the pair {(0,1),(1,0)}, and everything else.
    // p(1,1,0) is 1 at (0,0) but 0 at (2,2).
    let labels = [0, 1, 2, 1, 0, 2, 2, 2, 0];
    let err = SchemeData::from_partition("bad", 3, &labels).unwrap_err();
    assert!(matches!(err, crate::Error::NotAScheme(_)), "{err}");
    // The diagonal must be a class.
    assert!(SchemeData::from_partition("bad", 2, &[0, 1, 1, 1]).is_err());
}

#[test]
fn restriction_kernels_discriminate() {
    let (z2, z4) = (FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
    let a2 = build_discrete_monoidal_group(&z2, false).unwrap();
    let a4 = build_discrete_monoidal_group(&z4, false).unwrap();
    // Inclusion x ↦ 2x as the representable kernel X(φa, x).
    let phi = FinFunctor::discrete(&a2.cat, &a4.cat, vec![0, 2]).unwrap();
    let inc = build_representable_kernel(&a2.ps, &a4.ps, &phi).unwrap();
    assert!(check_kernel_multiplicative(&inc).unwrap().all_passed());
    // Quotient x ↦ x mod 2 as A(a, ψx).
    let psi = FinFunctor::discrete(&a4.cat, &a2.cat, vec![0, 1, 0, 1]).unwrap();
    let quo = build_restriction_kernel(&a2.ps, &a4.ps, &psi).unwrap();
    assert!(quo.surjective_on_objects);
    let r = check_kernel_multiplicative(&quo.kernel).unwrap();
    let fail = r.failures().next().expect("quotient kernel is not multiplicative");
    let locus = fail.locus.as_ref().unwrap();
    assert_eq!((locus.lhs, locus.rhs), (2, 1));
    // Identity restriction is the hom kernel.
    let id = build_restriction_kernel(&a4.ps, &a4.ps, &FinFunctor::identity(&a4.cat)).unwrap();
    assert!(check_kernel_multiplicative(&id.kernel).unwrap().all_passed());
}

#[test]
fn functor_validation() {
    let gh = build_group_hopf(&FiniteGroup::cyclic(2)).unwrap();
    // Sending both elements to the identity is a functor; swapping e and g is not.
    let triv = Matrix::from_triplets(2, 2, [(0, 0, int(1)), (0, 1, int(1))]);
    assert!(FinFunctor::new(&gh.cat, &gh.cat, vec![0], vec![triv]).is_ok());
    let bad = Matrix::permutation(&[1, 0]);
    assert!(matches!(FinFunctor::new(&gh.cat, &gh.cat, vec![0], vec![bad]), Err(crate::Error::NotAFunctor(_))));
}

#[test]
fn boolean_kernels() {
    let z4 = BoolInstance::submodule(4).unwrap();
    assert_eq!(bool_enumerate_kernels(&z4).unwrap(), vec![vec![], vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
    let line = BoolInstance::convexity_line(4).unwrap();
    let mut intervals: Vec<Vec<usize>> = vec![vec![]];
    for i in 0..4 {
        for j in i..4 {
            intervals.push((i..=j).collect());
        }
    }
    let mut got = bool_enumerate_kernels(&line).unwrap();
    got.sort();
    intervals.sort();
    assert_eq!(got, intervals);
    assert!(bool_kernel_check(&z4.clone().with_candidate(&[0, 1, 2, 3])));
    assert!(!bool_kernel_check(&z4.with_candidate(&[2])));
}

#[test]
fn boolean_submodules_match_brute_force() {
    // Submodules of Z/m are the subgroups dZ/m for d | m.
    for m in 1..=8 {
        let inst = BoolInstance::submodule(m).unwrap();
        let mut want: Vec<Vec<usize>> = vec![vec![]];
        for d in (1..=m).filter(|d| m % d == 0) {
            want.push((0..m).filter(|x| x % d == 0).collect());
        }
        want.sort();
        let mut got = bool_enumerate_kernels(&inst).unwrap();
        got.sort();
        assert_eq!(got, want, "Z/{m}");
    }
    assert!(BoolInstance::submodule(13).is_err());
}

#[test]
fn species_category_is_promonoidal() {
    let sc = build_species_category(3).unwrap();
    assert!(check_category_axioms(&sc.cat).all_passed());
    let r = sc.ps.check();
    assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    assert!(build_species_category(7).is_err());
}

#[test]
fn species_convolution_dims() {
    let sc = build_species_category(4).unwrap();
    let x = Species::singleton(4);
    let xx = species_convolve(&sc, &x, &x).unwrap();
    assert_eq!(xx.dims[2], 2);
    let e = Species::exponential(4);
    let ee = species_convolve(&sc, &e, &e).unwrap();
    assert_eq!(ee.dims, (0..=4).map(|n| 1 << n).collect::<Vec<_>>());
    for seed in 0..3 {
        let f = Species::random(4, 1, seed);
        let g = Species::random(4, 1, seed + 10);
        let h = species_convolve(&sc, &f, &g).unwrap();
        for n in 0..=4 {
            let want: usize = (0..=n).map(|k| binom(n, k) * f.dims[k] * g.dims[n - k]).sum();
            assert_eq!(h.dims[n], want);
        }
    }
}

#[test]
fn species_errors_and_hadamard() {
    let sc = build_species_category(3).unwrap();
    let short = Species::exponential(2);
    assert!(matches!(
        species_convolve(&sc, &short, &short),
        Err(crate::Error::TruncationOverflow { requested: 3, truncation: 2 })
    ));
    assert!(matches!(Species::exponential(3).coefficient(4), Err(crate::Error::TruncationOverflow { .. })));
    let bad = Species::new("bad", vec![vec![], vec![], vec![Matrix::identity(1).scale(&int(2))]], vec![0, 0, 1]);
    assert!(matches!(bad, Err(crate::Error::InvalidRepresentation(_))));
    let f = Species::random(3, 2, 1);
    let g = Species::random(3, 2, 2);
    let h = species_hadamard(&f, &g).unwrap();
    for n in 0..=3 {
        assert_eq!(h.dims[n], f.dims[n] * g.dims[n]);
    }
}

#[test]
fn analytic_functor_of_e_is_symmetric_power() {
    let sc = build_species_category(4).unwrap();
    let e = Species::exponential(4);
    assert_eq!(analytic_evaluate(&sc, &e, 2).unwrap(), (0..=4).map(|n| binom(n + 1, n)).collect::<Vec<_>>());
    // Sign representation gives exterior powers of k^3.
    let sign = Species::from_characters("Λ", &[1, 1, 0, 0, 0], &[0, 0, 1, 1, 1]).unwrap();
    assert_eq!(analytic_evaluate(&sc, &sign, 3).unwrap(), vec![1, 3, 3, 1, 0]);
}
