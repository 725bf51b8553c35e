use std::hint::black_box;
use std::sync::Arc;

use catfourier::enriched::{coend, hom_bimodule};
use catfourier::gallery::{
    build_discrete_monoidal_group, build_group_hopf, build_species_category, hopf_fourier_iso, species_convolve,
    FiniteGroup, Species,
};
use catfourier::kernel::{check_kernel_multiplicative, transform};
use catfourier::promonoidal::convolve;
use catfourier::random::random_family;
use criterion::{criterion_group, criterion_main, Criterion};

fn coends(c: &mut Criterion) {
    let s3 = build_group_hopf(&FiniteGroup::symmetric(3)).unwrap();
    let reg = Arc::new(hom_bimodule(&s3.cat));
    c.bench_function("coend k[S3] regular bimodule", |b| b.iter(|| coend(black_box(&reg)).unwrap().dim(0)));
}

fn convolution(c: &mut Criterion) {
    let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(6), false).unwrap();
    let fam = random_family(&dg.cat, 2, 4, 1);
    c.bench_function("day convolution Z6", |b| b.iter(|| convolve(&dg.ps, black_box(&fam[0]), &fam[1]).unwrap()));
    let gh = build_group_hopf(&FiniteGroup::cyclic(4)).unwrap();
    let fam = random_family(&gh.cat, 2, 4, 1);
    c.bench_function("day convolution k[Z4]", |b| b.iter(|| convolve(&gh.ps, black_box(&fam[0]), &fam[1]).unwrap()));
}

fn kernels(c: &mut Criterion) {
    let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(3), true).unwrap();
    let f = random_family(&dg.cat, 1, 3, 1).remove(0);
    c.bench_function("transform example-12 kernel", |b| b.iter(|| transform(&dg.kernel, black_box(&f)).unwrap()));
    c.bench_function("multiplicativity example-12 kernel", |b| {
        b.iter(|| check_kernel_multiplicative(black_box(&dg.kernel)).unwrap())
    });
}

fn hopf(c: &mut Criterion) {
    let gh = build_group_hopf(&FiniteGroup::symmetric(3)).unwrap();
    c.bench_function("hopf fourier S3", |b| b.iter(|| hopf_fourier_iso(black_box(&gh.hopf))));
}

fn species(c: &mut Criterion) {
    let sc = build_species_category(4).unwrap();
    let (f, g) = (Species::random(4, 2, 1), Species::random(4, 2, 2));
    c.bench_function("species convolution N=4", |b| b.iter(|| species_convolve(&sc, black_box(&f), &g).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = coends, convolution, kernels, hopf, species
}
criterion_main!(benches);
