use std::sync::Arc;

use super::*;
use crate::enriched::representable;
use crate::gallery::{
    build_discrete_monoidal_group, build_discrete_pointwise, build_group_hopf, build_representable_kernel, build_scheme,
    FinFunctor, FiniteGroup, SchemeData,
};
use crate::linalg::{rank, Matrix};
use crate::random::random_family;

fn failures(r: &Report) -> Vec<&CheckRecord> {
    r.failures().collect()
}

#[test]
fn hom_kernel_is_fully_faithful() {
    let gh = build_group_hopf(&FiniteGroup::cyclic(2)).unwrap();
    let k = &gh.kernel;
    let family = default_family(&gh.cat, 3, 4, 1);
    for f in &family {
        let kf = transform(k, f).unwrap();
        assert_eq!(kf.dims(), f.dims());
        let u = adjunction_unit(k, f).unwrap();
        assert!(u.eta.is_isomorphism());
    }
    let c = classify_transform(k, &family).unwrap();
    assert_eq!(c.summary, Verdict::FullyFaithful);
    assert!(c.to_report().all_passed());
}

#[test]
fn triangle_identities_hold() {
    let gh = build_group_hopf(&FiniteGroup::cyclic(3)).unwrap();
    let fam = random_family(&gh.cat, 2, 3, 5);
    let r = check_triangle_identities(&gh.kernel, &fam[0], &fam[1]).unwrap();
    assert!(r.all_passed(), "{:?}", failures(&r));
    let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(2), true).unwrap();
    let f = Arc::new(representable(&dg.cat, 1).unwrap());
    let g = random_family(dg.kernel.target_cat(), 1, 2, 3).remove(0);
    let r = check_triangle_identities(&dg.kernel, &f, &g).unwrap();
    assert!(r.all_passed(), "{:?}", failures(&r));
}

#[test]
fn adjunction_hom_dims_agree() {
    // dim [X,V](K̄f, g) = dim [A,V](f, K̲g)
    let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(3), true).unwrap();
    let k = &dg.kernel;
    let fs = random_family(&dg.cat, 2, 2, 11);
    let gs = random_family(k.target_cat(), 2, 2, 12);
    for f in &fs {
        for g in &gs {
            let lhs = nat_space(&transform(k, f).unwrap(), g).unwrap().dim(0);
            let rhs = nat_space(f, &right_adjoint(k, g).unwrap()).unwrap().dim(0);
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn zero_kernel_is_neither() {
    let gh = build_group_hopf(&FiniteGroup::cyclic(2)).unwrap();
    let k = Kernel::zero(&gh.ps, &gh.pointwise);
    let f = Arc::new(representable(&gh.cat, 0).unwrap());
    let c = classify_transform(&k, std::slice::from_ref(&f)).unwrap();
    assert_eq!(c.summary, Verdict::Neither);
    let r = conservativity_sufficient_conditions(&k, &f, None).unwrap();
    assert!(!r.all_passed());
}

#[test]
fn example12_is_conservative() {
    let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(3), true).unwrap();
    let k = &dg.kernel;
    let family = default_family(&dg.cat, 3, 3, 1);
    for f in &family {
        let u = adjunction_unit(k, f).unwrap();
        for (a, eta) in u.eta.components.iter().enumerate() {
            assert_eq!(rank(eta), f.dim(a));
            // K̲K̄f(a) is |G| copies of f(a).
            assert_eq!(eta.rows(), 3 * f.dim(a));
        }
    }
    let c = classify_transform(k, &family).unwrap();
    assert_eq!(c.summary, Verdict::Conservative);
    let r = conservativity_sufficient_conditions(k, &family[0], None).unwrap();
    assert!(r.all_passed(), "{:?}", failures(&r));
}

#[test]
fn joy_hom_matches_nat() {
    let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(2), true).unwrap();
    let fam = default_family(&dg.cat, 1, 2, 4);
    for f in &fam {
        for g in &fam {
            let joy = joy_hom(&dg.kernel, f, g).unwrap();
            assert_eq!(joy.dim, nat_space(f, g).unwrap().dim(0));
        }
    }
    let gh = build_group_hopf(&FiniteGroup::cyclic(2)).unwrap();
    let fam = random_family(&gh.cat, 2, 2, 9);
    let joy = joy_hom(&gh.kernel, &fam[0], &fam[1]).unwrap();
    assert_eq!(joy.dim, nat_space(&fam[0], &fam[1]).unwrap().dim(0));
}

#[test]
fn dual_transform_identity() {
    let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(3), false).unwrap();
    for f in random_family(&dg.cat, 3, 3, 2) {
        let h = Arc::new(f.dual());
        assert!(check_dual_transform_identity(&dg.kernel, &h).unwrap().passed());
    }
}

#[test]
fn multiplicative_kernels_preserve_convolution() {
    let gh = build_group_hopf(&FiniteGroup::cyclic(2)).unwrap();
    let fam = random_family(&gh.cat, 2, 2, 3);
    let r = verify_transform_multiplicativity(&gh.kernel, &fam[0], &fam[1]).unwrap();
    assert!(r.all_passed());
    let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(2), false).unwrap();
    let m = check_kernel_multiplicative(&dg.kernel).unwrap();
    assert!(m.all_passed(), "{:?}", failures(&m));
    let fam = random_family(&dg.cat, 2, 2, 3);
    let r = verify_transform_multiplicativity(&dg.kernel, &fam[0], &fam[1]).unwrap();
    assert!(r.all_passed(), "{:?}", failures(&r));
}

#[test]
fn composite_of_inclusions() {
    let groups: Vec<_> = [2, 4, 8]
        .iter()
        .map(|&n| build_discrete_monoidal_group(&FiniteGroup::cyclic(n), false).unwrap())
        .collect();
    let f1 = FinFunctor::discrete(&groups[0].cat, &groups[1].cat, vec![0, 2]).unwrap();
    let f2 = FinFunctor::discrete(&groups[1].cat, &groups[2].cat, vec![0, 2, 4, 6]).unwrap();
    let f12 = FinFunctor::discrete(&groups[0].cat, &groups[2].cat, vec![0, 4]).unwrap();
    let k1 = build_representable_kernel(&groups[0].ps, &groups[1].ps, &f1).unwrap();
    let k2 = build_representable_kernel(&groups[1].ps, &groups[2].ps, &f2).unwrap();
    let k12 = build_representable_kernel(&groups[0].ps, &groups[2].ps, &f12).unwrap();
    let comp = compose_kernels(&k1, &k2).unwrap();
    assert_eq!(comp.data().dims(), k12.data().dims());
    assert!(check_kernel_multiplicative(&comp).unwrap().all_passed());
}

#[test]
fn gamma_inverts_the_transform() {
    let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(3), false).unwrap();
    let rho = discrete_right_unit_witness(&dg.ps).unwrap();
    for f in default_family(&dg.cat, 2, 3, 8) {
        let r = verify_gamma_left_inverse(&dg.kernel, &rho, &f).unwrap();
        assert!(r.all_passed(), "{:?}", failures(&r));
    }
    let sg = build_scheme(SchemeData::hamming(2, 2).unwrap()).unwrap();
    let k = example2_kernel(&sg.ps).unwrap();
    let rho = discrete_right_unit_witness(&sg.ps).unwrap();
    for f in random_family(&sg.cat, 2, 3, 8) {
        let r = verify_gamma_left_inverse(&k, &rho, &f).unwrap();
        assert!(r.all_passed(), "{:?}", failures(&r));
        let g = gamma_transform(&k, &transform(&k, &f).unwrap()).unwrap();
        assert_eq!(g.result().dims(), f.dims());
    }
}

#[test]
fn faithfulness_needs_a_faithful_unit() {
    let (cat, ps) = build_discrete_pointwise(vec!["u".into(), "v".into()]).unwrap();
    assert!(is_faithful(ps.j().unwrap()));
    let k = example2_kernel(&ps).unwrap();
    for f in random_family(&cat, 2, 2, 6) {
        let kf = transform(&k, &f).unwrap();
        let r = verify_faithfulness_proposition(&ps, &kf).unwrap();
        assert!(r.all_passed(), "{:?}", failures(&r));
    }
    let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(3), false).unwrap();
    assert!(!is_faithful(dg.ps.j().unwrap()));
    let f = Arc::new(representable(&dg.cat, 1).unwrap());
    let kf = transform(&dg.kernel, &f).unwrap();
    let r = verify_faithfulness_proposition(&dg.ps, &kf).unwrap();
    assert!(r.records[0].note.as_deref().unwrap().contains("not faithful"));
}

/// `⟨g, h⟩ = [gh = e]`, natural on a group algebra.
fn inverse_pairing(g: &FiniteGroup) -> Vec<Matrix> {
    vec![Matrix::permutation(&(0..g.order()).map(|x| g.inv(x)).collect::<Vec<_>>())]
}

#[test]
fn dual_hom_lemma() {
    let z3 = FiniteGroup::cyclic(3);
    let gh = build_group_hopf(&z3).unwrap();
    for g in random_family(&gh.cat, 3, 4, 21) {
        let r = lemma_dual_hom(&gh.cat, &inverse_pairing(&z3), &g, 0).unwrap();
        assert!(r.all_passed(), "{:?}", failures(&r));
    }
    let g = random_family(&gh.cat, 1, 2, 1).remove(0);
    let broken = vec![Matrix::identity(3)];
    assert!(matches!(lemma_dual_hom(&gh.cat, &broken, &g, 0), Err(crate::Error::PairingNotNatural(_))));
    let r = conservativity_sufficient_conditions(&gh.kernel, &g, Some(&inverse_pairing(&z3))).unwrap();
    assert!(r.all_passed(), "{:?}", failures(&r));
}

#[test]
fn parseval_on_hom_kernel() {
    let gh = build_group_hopf(&FiniteGroup::cyclic(2)).unwrap();
    let fam = random_family(&gh.cat, 2, 3, 13);
    let r = parseval_check(&gh.kernel, &fam[0], &fam[1]).unwrap();
    assert!(r.all_passed());
    assert_eq!(r.records[0].status, crate::report::Status::Pass);
    // Example 12 kernel is not fully faithful, so the check is skipped.
    let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(2), true).unwrap();
    let f = Arc::new(representable(&dg.cat, 0).unwrap());
    let r = parseval_check(&dg.kernel, &f, &f).unwrap();
    assert_eq!(r.records[0].status, crate::report::Status::Skipped);
}

#[test]
fn wrong_kernel_shape() {
    let gh = build_group_hopf(&FiniteGroup::cyclic(2)).unwrap();
    let bad = Kernel::new("bad", gh.ps.clone(), gh.ps.clone(), gh.ps.j().unwrap().as_ref().clone());
    assert!(matches!(bad, Err(crate::Error::WrongKernelShape(_))));
}
