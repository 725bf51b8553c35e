//! Acceptance run: one line per criterion, with its time budget.
//!
//! Oracles here are computed directly from group tables, point sets and
//! binomial sums, never from the engine's own coends.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use catfourier::enriched::{coend, end, hom_bimodule, representable, representable_contravariant};
use catfourier::gallery::{
    analytic_evaluate, bool_enumerate_kernels, build_discrete_monoidal_group, build_group_hopf,
    build_representable_kernel, build_restriction_kernel, build_scheme, build_species_category, hopf_fourier_iso,
    species_convolve, verify_scheme_kernel, BoolInstance, FinFunctor, FiniteGroup, SchemeData, Species,
};
use catfourier::kernel::{
    adjunction_unit, check_kernel_multiplicative, classify_transform, default_family, discrete_right_unit_witness,
    joy_hom, parseval_check, transform, transform_coend, verify_gamma_left_inverse, verify_transform_multiplicativity,
    Verdict,
};
use catfourier::linalg::{is_isomorphism, rank};
use catfourier::promonoidal::{convolve, internal_hom, verify_star_autonomy};
use catfourier::random::random_family;
use catfourier::{FinVCat, Kernel, Matrix, Module, Report};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(r: &Report, what: &str) -> Outcome {
    match r.failures().next() {
        None => Ok(()),
        Some(f) => Err(format!("{what}: {} failed ({:?})", f.id, f.locus)),
    }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Representables first, then seeded random functors, eight in all.
fn family8(cat: &Arc<FinVCat>, seed: u64) -> Vec<Arc<Module>> {
    let mut fam = default_family(cat, 8usize.saturating_sub(cat.len()), 4, seed);
    fam.truncate(8);
    fam
}

fn hopf_fourier() -> Outcome {
    for group in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)] {
        let gh = build_group_hopf(&group).map_err(|e| e.to_string())?;
        let (iso, report) = hopf_fourier_iso(&gh.hopf);
        passed(&report, group.name())?;
        // Φ(g⊗h) = gh⁻¹⊗h and Φ'(g⊗h) = gh⊗h on the basis.
        let n = group.order();
        let perm = |f: &dyn Fn(usize, usize) -> usize| -> Vec<usize> {
            (0..n * n).map(|i| f(i / n, i % n) * n + i % n).collect()
        };
        let phi = Matrix::permutation(&perm(&|g, h| group.mul(g, group.inv(h))));
        let phi_inv = Matrix::permutation(&perm(&|g, h| group.mul(g, h)));
        ensure(iso.phi == phi, || format!("{}: Φ is not g⊗h ↦ gh⁻¹⊗h", group.name()))?;
        ensure(iso.phi_inverse == phi_inv, || format!("{}: Φ' is not g⊗h ↦ gh⊗h", group.name()))?;
        ensure(iso.phi.compose(&iso.phi_inverse).unwrap().is_identity(), || "ΦΦ' ≠ 1".into())?;
        ensure(iso.phi_inverse.compose(&iso.phi).unwrap().is_identity(), || "Φ'Φ ≠ 1".into())?;
        let fam = random_family(&gh.cat, 3, 4, 1);
        for f in &fam {
            for g in &fam {
                let fg = convolve(&gh.ps, f, g).map_err(|e| e.to_string())?;
                let kfg = transform(&gh.kernel, &fg).map_err(|e| e.to_string())?;
                let want = f.dim(0) * g.dim(0);
                ensure(kfg.dim(0) == want, || format!("{}: dim K̄(f⊛g) = {} vs {want}", group.name(), kfg.dim(0)))?;
            }
        }
    }
    Ok(())
}

/// `p(a,b,c)` by counting points, for a fixed pair in class `c`.
fn count_intersections(s: &SchemeData) -> Vec<usize> {
    let (n, r) = (s.points, s.classes);
    let class = |x: usize, y: usize| s.class_of[x * n + y];
    let mut out = vec![0; r * r * r];
    for c in 0..r {
        let (x, y) = (0..n * n).map(|i| (i / n, i % n)).find(|&(x, y)| class(x, y) == c).unwrap();
        for a in 0..r {
            for b in 0..r {
                out[(a * r + b) * r + c] = (0..n).filter(|&z| class(x, z) == a && class(z, y) == b).count();
            }
        }
    }
    out
}

fn association_scheme() -> Outcome {
    let h = SchemeData::hamming(2, 2).map_err(|e| e.to_string())?;
    let row: Vec<usize> = (0..3).map(|c| h.p(1, 1, c)).collect();
    ensure(row == vec![2, 0, 2], || format!("p(1,1,·) = {row:?}"))?;
    let m1m1 = h.matrix(1).compose(&h.matrix(1)).unwrap();
    let rhs = h.matrix(0).scale(&catfourier::linalg::int(2)).add(&h.matrix(2).scale(&catfourier::linalg::int(2))).unwrap();
    ensure(m1m1 == rhs, || "M1·M1 ≠ 2M0 + 2M2".into())?;
    for s in [h, SchemeData::cyclic(4).map_err(|e| e.to_string())?] {
        ensure(s.intersection == count_intersections(&s), || format!("{}: p-table differs from point counts", s.name))?;
        passed(&verify_scheme_kernel(&s), &s.name)?;
        let r = s.classes;
        let star = &s.involution;
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    ensure(s.p(a, b, c) == s.p(star[b], star[a], star[c]), || format!("{}: antipode at {a},{b},{c}", s.name))?;
                }
            }
        }
    }
    Ok(())
}

fn gallery_kernels() -> Vec<Kernel> {
    let mut out = Vec::new();
    let gh = build_group_hopf(&FiniteGroup::cyclic(3)).unwrap();
    out.push(gh.kernel.clone());
    out.push(Kernel::hom(&gh.ps));
    for n in [2, 3] {
        let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(n), true).unwrap();
        out.push(dg.kernel.clone());
        out.push(Kernel::hom(&dg.ps));
    }
    let a2 = build_discrete_monoidal_group(&FiniteGroup::cyclic(2), false).unwrap();
    let a4 = build_discrete_monoidal_group(&FiniteGroup::cyclic(4), false).unwrap();
    let phi = FinFunctor::discrete(&a2.cat, &a4.cat, vec![0, 2]).unwrap();
    out.push(build_representable_kernel(&a2.ps, &a4.ps, &phi).unwrap());
    let psi = FinFunctor::discrete(&a4.cat, &a2.cat, vec![0, 1, 0, 1]).unwrap();
    out.push(build_restriction_kernel(&a2.ps, &a4.ps, &psi).unwrap().kernel);
    let sg = build_scheme(SchemeData::hamming(2, 2).unwrap()).unwrap();
    out.push(sg.kernel.clone());
    out
}

fn transform_theorem() -> Outcome {
    let mut tested = 0;
    for k in gallery_kernels() {
        if !check_kernel_multiplicative(&k).map_err(|e| e.to_string())?.all_passed() {
            continue;
        }
        tested += 1;
        let fam = family8(k.source_cat(), 1);
        for f in &fam {
            for g in &fam {
                let r = verify_transform_multiplicativity(&k, f, g).map_err(|e| e.to_string())?;
                passed(&r, k.name())?;
            }
        }
    }
    ensure(tested >= 6, || format!("only {tested} kernels were multiplicative"))
}

fn star_autonomy() -> Outcome {
    for n in [2, 3] {
        let group = FiniteGroup::cyclic(n);
        let dg = build_discrete_monoidal_group(&group, false).map_err(|e| e.to_string())?;
        let fam = random_family(&dg.cat, 4, 3, 1);
        for f in &fam {
            for g in &fam {
                passed(&verify_star_autonomy(&dg.ps, &dg.antipode, f, g).map_err(|e| e.to_string())?, "star")?;
                let ih = internal_hom(&dg.ps, f, g).map_err(|e| e.to_string())?;
                for c in 0..n {
                    let want: usize = (0..n).map(|a| f.dim(a) * g.dim(group.mul(c, a))).sum();
                    ensure(ih.dim(c) == want, || format!("Z{n}: dim [f,g]({c}) = {} vs {want}", ih.dim(c)))?;
                }
            }
        }
    }
    Ok(())
}

fn example2() -> Outcome {
    for n in [2, 3] {
        let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(n), false).map_err(|e| e.to_string())?;
        let rho = discrete_right_unit_witness(&dg.ps).map_err(|e| e.to_string())?;
        for f in default_family(&dg.cat, 3, 3, 1) {
            passed(&verify_gamma_left_inverse(&dg.kernel, &rho, &f).map_err(|e| e.to_string())?, "group Γ")?;
        }
    }
    let sg = build_scheme(SchemeData::hamming(2, 2).unwrap()).map_err(|e| e.to_string())?;
    let k = catfourier::kernel::example2_kernel(&sg.ps).map_err(|e| e.to_string())?;
    let rho = discrete_right_unit_witness(&sg.ps).map_err(|e| e.to_string())?;
    for f in default_family(&sg.cat, 3, 3, 1) {
        passed(&verify_gamma_left_inverse(&k, &rho, &f).map_err(|e| e.to_string())?, "scheme Γ")?;
    }
    Ok(())
}

fn example12() -> Outcome {
    let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(3), true).map_err(|e| e.to_string())?;
    let fam = default_family(&dg.cat, 5, 3, 1);
    for f in &fam {
        let u = adjunction_unit(&dg.kernel, f).map_err(|e| e.to_string())?;
        let r: usize = u.eta.components.iter().map(rank).sum();
        ensure(r == f.total_dim(), || format!("rank η_{} = {r} vs dim {}", f.name(), f.total_dim()))?;
        ensure(u.eta.is_monomorphism(), || format!("η_{} is not mono", f.name()))?;
        // Split: every component has a left inverse, i.e. full column rank.
        for c in &u.eta.components {
            ensure(rank(c) == c.cols(), || "component is not split mono".into())?;
        }
    }
    let cls = classify_transform(&dg.kernel, &fam).map_err(|e| e.to_string())?;
    ensure(cls.summary == Verdict::Conservative, || format!("summary {:?}", cls.summary))?;
    ensure(cls.per_functor.iter().all(|v| v.verdict != Verdict::FullyFaithful || v.dim == 0), || {
        "a nonzero functor came out fully faithful".into()
    })
}

fn joy() -> Outcome {
    for closed in [false, true] {
        let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(3), closed).map_err(|e| e.to_string())?;
        let kernels = [Kernel::hom(&dg.ps), dg.kernel.clone()];
        let fam = default_family(&dg.cat, 1, 2, 1);
        for k in &kernels {
            for f in &fam {
                for g in &fam {
                    let d = joy_hom(k, f, g).map_err(|e| e.to_string())?.dim;
                    // Natural transformations on a discrete category: Σ_a f(a)·g(a).
                    let want: usize = (0..dg.cat.len()).map(|a| f.dim(a) * g.dim(a)).sum();
                    ensure(d == want, || format!("{}: Joy({},{}) = {d} vs {want}", k.name(), f.name(), g.name()))?;
                }
            }
        }
    }
    Ok(())
}

fn restriction() -> Outcome {
    let a2 = build_discrete_monoidal_group(&FiniteGroup::cyclic(2), false).map_err(|e| e.to_string())?;
    let a4 = build_discrete_monoidal_group(&FiniteGroup::cyclic(4), false).map_err(|e| e.to_string())?;
    let phi = FinFunctor::discrete(&a2.cat, &a4.cat, vec![0, 2]).map_err(|e| e.to_string())?;
    let inc = build_representable_kernel(&a2.ps, &a4.ps, &phi).map_err(|e| e.to_string())?;
    passed(&check_kernel_multiplicative(&inc).map_err(|e| e.to_string())?, "inclusion")?;
    let psi = FinFunctor::discrete(&a4.cat, &a2.cat, vec![0, 1, 0, 1]).map_err(|e| e.to_string())?;
    let quo = build_restriction_kernel(&a2.ps, &a4.ps, &psi).map_err(|e| e.to_string())?;
    let r = check_kernel_multiplicative(&quo.kernel).map_err(|e| e.to_string())?;
    let f = r.failures().next().ok_or("quotient kernel passed")?;
    let l = f.locus.as_ref().ok_or("failure without locus")?;
    ensure((l.lhs, l.rhs) == (2, 1), || format!("quotient reported {} vs {}", l.lhs, l.rhs))
}

fn boolean() -> Outcome {
    let z4 = bool_enumerate_kernels(&BoolInstance::submodule(4).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(z4 == vec![vec![], vec![0], vec![0, 2], vec![0, 1, 2, 3]], || format!("Z/4: {z4:?}"))?;
    let mut line =
        bool_enumerate_kernels(&BoolInstance::convexity_line(4).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let mut want: Vec<Vec<usize>> = vec![vec![]];
    for i in 0..4 {
        for j in i..4 {
            want.push((i..=j).collect());
        }
    }
    line.sort();
    want.sort();
    ensure(line == want, || format!("convexity: {line:?}"))
}

fn species() -> Outcome {
    const N: usize = 5;
    let sc = build_species_category(N).map_err(|e| e.to_string())?;
    for seed in 0..4 {
        let f = Species::random(N, 1, 2 * seed + 1);
        let g = Species::random(N, 1, 2 * seed + 2);
        let h = species_convolve(&sc, &f, &g).map_err(|e| e.to_string())?;
        for n in 0..=N {
            let want: usize = (0..=n).map(|k| binom(n, k) * f.dims[k] * g.dims[n - k]).sum();
            ensure(h.dims[n] == want, || format!("seed {seed}: dim (f∗g)({n}) = {} vs {want}", h.dims[n]))?;
        }
    }
    let e = Species::exponential(N);
    let got = analytic_evaluate(&sc, &e, 2).map_err(|e| e.to_string())?;
    ensure(got == (0..=N).map(|n| binom(n + 1, n)).collect::<Vec<_>>(), || format!("E(k²) = {got:?}"))
}

/// `∫^a A(a,x) ⊗ f(a) → f(x)` built from the action of `f` is invertible.
fn yoneda_iso(cat: &Arc<FinVCat>, ps: &catfourier::PromonoidalStructure, f: &Arc<Module>) -> Outcome {
    let k = Kernel::hom(ps);
    let c = transform_coend(&k, f).map_err(|e| e.to_string())?;
    for x in 0..cat.len() {
        let m = c
            .factor_cowedge(x, f.dim(x), |d| f.action(0, d[0], x).into_owned())
            .map_err(|e| format!("{}: {e}", cat.name()))?;
        ensure(is_isomorphism(&m), || format!("{}: Yoneda map at {} is not invertible", cat.name(), cat.objects()[x]))?;
    }
    Ok(())
}

fn engine_oracles() -> Outcome {
    let s3 = build_group_hopf(&FiniteGroup::symmetric(3)).map_err(|e| e.to_string())?;
    let reg = Arc::new(hom_bimodule(&s3.cat));
    let ce = coend(&reg).map_err(|e| e.to_string())?.dim(0);
    let en = end(&reg).map_err(|e| e.to_string())?.dim(0);
    ensure((ce, en) == (3, 3), || format!("k[S3]: coend {ce}, end {en}"))?;

    let mut galleries: Vec<(Arc<FinVCat>, catfourier::PromonoidalStructure)> = Vec::new();
    for g in [FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)] {
        let gh = build_group_hopf(&g).map_err(|e| e.to_string())?;
        galleries.push((gh.cat.clone(), gh.ps.clone()));
        let dg = build_discrete_monoidal_group(&g, true).map_err(|e| e.to_string())?;
        galleries.push((dg.cat.clone(), dg.ps.clone()));
    }
    let sg = build_scheme(SchemeData::hamming(2, 2).unwrap()).map_err(|e| e.to_string())?;
    galleries.push((sg.cat.clone(), sg.ps.clone()));
    galleries.push((sg.target.base().clone(), sg.target.clone()));
    let sc = build_species_category(3).map_err(|e| e.to_string())?;
    galleries.push((sc.cat.clone(), sc.ps.clone()));
    for (cat, ps) in &galleries {
        for f in random_family(cat, 2, 3, 1) {
            yoneda_iso(cat, ps, &f)?;
        }
        yoneda_iso(cat, ps, &Arc::new(representable(cat, 0).map_err(|e| e.to_string())?))?;
    }

    // (∫^a T(a,a))* ≅ ∫_a T(a,a)* on seeded bimodules T = M ⊗ N.
    let cats = [galleries[0].0.clone(), galleries[1].0.clone(), galleries[4].0.clone()];
    for seed in 0..50u64 {
        let cat = &cats[seed as usize % cats.len()];
        let op = Arc::new(cat.opposite());
        let left = catfourier::random::gen_random_functor(&op, 2, 2 * seed).op_slot_with(0, cat);
        let right = catfourier::random::gen_random_functor(cat, 2, 2 * seed + 1);
        let mut t = left.exterior(&right).map_err(|e| e.to_string())?;
        if seed % 5 == 0 {
            t = t.direct_sum(&hom_bimodule(cat)).map_err(|e| e.to_string())?;
        }
        let t = Arc::new(t);
        let lhs = coend(&t).map_err(|e| e.to_string())?.dim(0);
        let dual = Arc::new(t.dual().permute_slots(&[1, 0]));
        let rhs = end(&dual).map_err(|e| e.to_string())?.dim(0);
        ensure(lhs == rhs, || format!("seed {seed}: coend {lhs} vs end of dual {rhs}"))?;
    }
    // A representable pairs with itself through the contravariant Yoneda.
    let rep = Arc::new(representable_contravariant(&galleries[0].0, 0).map_err(|e| e.to_string())?);
    ensure(rep.dim(0) == 3, || "k[Z3](-,*) has the wrong dimension".into())
}

fn parseval() -> Outcome {
    for n in [2, 3] {
        let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(n), false).map_err(|e| e.to_string())?;
        let k = Kernel::hom(&dg.ps);
        let fam = random_family(&dg.cat, 3, 3, 1);
        for f in &fam {
            for g in &fam {
                let r = parseval_check(&k, f, g).map_err(|e| e.to_string())?;
                passed(&r, "parseval")?;
                let rec = &r.records[0];
                ensure(rec.status == catfourier::Status::Pass, || "parseval was skipped".into())?;
                let want: usize = (0..n).map(|a| f.dim(a) * g.dim(a)).sum();
                ensure(rec.table[0].lhs == want, || format!("⟨f,g⟩ = {} vs {want}", rec.table[0].lhs))?;
            }
        }
        let gh = build_group_hopf(&FiniteGroup::cyclic(n)).map_err(|e| e.to_string())?;
        let fam = random_family(&gh.cat, 2, 3, 1);
        passed(&parseval_check(&Kernel::hom(&gh.ps), &fam[0], &fam[1]).map_err(|e| e.to_string())?, "hopf parseval")?;
    }
    Ok(())
}

/// Name, time budget in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("hopf fourier isomorphism", 5, hopf_fourier),
        ("association scheme tables", 2, association_scheme),
        ("transform preserves convolution", 30, transform_theorem),
        ("star-autonomy closed form", 5, star_autonomy),
        ("gamma left inverse", 10, example2),
        ("conservative not fully faithful", 5, example12),
        ("joyal-wiener homs", 10, joy),
        ("restriction kernels", 2, restriction),
        ("boolean kernels", 1, boolean),
        ("species convolution", 60, species),
        ("engine oracles", 30, engine_oracles),
        ("parseval", 5, parseval),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        let ok = outcome.is_ok() && !over;
        if !ok {
            failures += 1;
        }
        let detail = match (&outcome, over) {
            (Err(e), _) => format!("  {e}"),
            (Ok(()), true) => format!("  over the {budget} s budget"),
            _ => String::new(),
        };
        println!(
            "criterion {:>2} {:<34} {}  {:>7.2} s / {budget} s{detail}",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
