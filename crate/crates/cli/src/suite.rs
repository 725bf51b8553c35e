//! Suite orchestration over a loaded spec.

use std::sync::Arc;
use std::time::Instant;

use catfourier::kernel::{
    adjunction_unit, check_kernel_multiplicative, classify_transform, default_family, discrete_right_unit_witness,
    example2_kernel, joy_hom, nat_space, parseval_check, verify_gamma_left_inverse, verify_transform_multiplicativity,
};
use catfourier::promonoidal::{check_associativity_dims, check_s_autonomy, check_unit_laws, verify_star_autonomy};
use catfourier::random::random_family;
use catfourier::report::{anchors, DimRow};
use catfourier::{CheckRecord, EvidenceLevel, FinVCat, Kernel, Module, Report};

use crate::error::CliError;
use crate::spec::SpecDocument;

pub const SUITES: &[&str] =
    &["axioms", "convolution", "star-autonomy", "kernel", "transform-theorem", "classify", "joy", "parseval", "gamma"];

/// Random functors added to every family, and their dimension cap.
const RANDOM_COUNT: usize = 2;
const RANDOM_MAX_DIM: usize = 3;
/// Example 2 kernels land in `A^op ⊗ A`; larger bases are skipped.
const GAMMA_MAX_OBJECTS: usize = 4;

pub fn default_seed() -> u64 {
    std::env::var("CATFOURIER_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(1)
}

/// Runs one suite (or `all`) and returns the records sorted by id.
pub fn run_suite(doc: &SpecDocument, suite: &str, seed: u64) -> Result<Report, CliError> {
    run_suite_timed(doc, suite, seed, false)
}

pub fn run_suite_timed(doc: &SpecDocument, suite: &str, seed: u64, timings: bool) -> Result<Report, CliError> {
    let names: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        other => return Err(CliError::UnknownSuite(other.into())),
    };
    let mut report = Report::new();
    for name in names {
        let start = Instant::now();
        let mut part = match name {
            "axioms" => axioms(doc),
            "convolution" => convolution(doc, seed)?,
            "star-autonomy" => star_autonomy(doc, seed)?,
            "kernel" => kernel(doc)?,
            "transform-theorem" => transform_theorem(doc, seed)?,
            "classify" => classify(doc, seed)?,
            "joy" => joy(doc, seed)?,
            "parseval" => parseval(doc, seed)?,
            "gamma" => gamma(doc, seed)?,
            _ => unreachable!(),
        };
        if timings {
            let ms = start.elapsed().as_millis() as u64;
            for r in &mut part.records {
                r.elapsed_ms = Some(ms);
            }
        }
        report.extend(part.scoped(name));
    }
    Ok(report.finalize())
}

/// Spec functors on `cat` followed by seeded random ones.
fn family(doc: &SpecDocument, cat: &Arc<FinVCat>, seed: u64) -> Vec<Arc<Module>> {
    let mut fam = doc.functors_on(cat);
    fam.extend(random_family(cat, RANDOM_COUNT, RANDOM_MAX_DIM, seed));
    fam
}

fn pairs(fam: &[Arc<Module>]) -> Vec<(Arc<Module>, Arc<Module>)> {
    fam.iter().flat_map(|f| fam.iter().map(move |g| (f.clone(), g.clone()))).collect()
}

fn axioms(doc: &SpecDocument) -> Report {
    let mut r = Report::new();
    for c in doc.categories.values() {
        r.extend(c.check_axioms().scoped(&format!("category/{}", c.name())));
    }
    for (name, m) in &doc.modules {
        r.extend(m.check().scoped(&format!("functor/{name}")));
    }
    for (name, s) in &doc.antipodes {
        r.extend(s.check().scoped(&format!("antipode/{name}")));
    }
    r
}

fn convolution(doc: &SpecDocument, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new();
    for (name, st) in &doc.structures {
        let fam = family(doc, st.ps.base(), seed);
        let mut part = Report::new();
        if st.ps.j().is_some() {
            for f in &fam {
                part.extend(check_unit_laws(&st.ps, f)?);
            }
        }
        let n = fam.len();
        for i in 0..n {
            part.push(check_associativity_dims(&st.ps, &fam[i], &fam[(i + 1) % n], &fam[(i + 2) % n])?);
        }
        r.extend(part.scoped(name));
    }
    Ok(r)
}

fn star_autonomy(doc: &SpecDocument, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new();
    for (name, st) in &doc.structures {
        let Some(s) = st.antipode.as_ref().map(|a| &doc.antipodes[a]) else {
            continue;
        };
        let mut part = check_s_autonomy(&st.ps, s);
        for (f, g) in pairs(&family(doc, st.ps.base(), seed)) {
            part.extend(verify_star_autonomy(&st.ps, s, &f, &g)?);
        }
        r.extend(part.scoped(name));
    }
    Ok(r)
}

fn kernel(doc: &SpecDocument) -> Result<Report, CliError> {
    let mut r = Report::new();
    for k in doc.kernels.values() {
        r.extend(check_kernel_multiplicative(k)?);
    }
    Ok(r)
}

fn transform_theorem(doc: &SpecDocument, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new();
    for k in doc.kernels.values() {
        if !check_kernel_multiplicative(k)?.all_passed() {
            r.push(CheckRecord::skipped(
                format!("{}/transform-theorem", k.name()),
                anchors::TRANSFORM_THEOREM,
                "the kernel is not multiplicative",
            ));
            continue;
        }
        for (f, g) in pairs(&family(doc, k.source_cat(), seed)) {
            r.extend(verify_transform_multiplicativity(k, &f, &g)?);
        }
    }
    Ok(r)
}

fn classify(doc: &SpecDocument, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new();
    for k in doc.kernels.values() {
        r.extend(classify_kernel(k, RANDOM_COUNT, seed)?);
    }
    Ok(r)
}

pub fn classify_kernel(k: &Kernel, family_size: usize, seed: u64) -> Result<Report, CliError> {
    let fam = default_family(k.source_cat(), family_size, RANDOM_MAX_DIM, seed);
    Ok(classify_transform(k, &fam)?.to_report())
}

fn joy(doc: &SpecDocument, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new();
    for k in doc.kernels.values() {
        let fam = family(doc, k.source_cat(), seed);
        let injective: Vec<bool> =
            fam.iter().map(|f| adjunction_unit(k, f).map(|u| u.eta.is_monomorphism())).collect::<Result<_, _>>()?;
        for (i, f) in fam.iter().enumerate() {
            for (j, g) in fam.iter().enumerate() {
                let id = format!("{}/joy/{},{}", k.name(), f.name(), g.name());
                if !(injective[i] && injective[j]) {
                    r.push(CheckRecord::skipped(id, anchors::JOYAL_WIENER, "the unit is not injective on this pair"));
                    continue;
                }
                let lhs = joy_hom(k, f, g)?.dim;
                let rhs = nat_space(f, g)?.dim(0);
                r.push(CheckRecord::from_table(
                    id,
                    anchors::JOYAL_WIENER,
                    EvidenceLevel::ExactEquation,
                    vec![DimRow { objects: vec![], lhs, rhs }],
                ));
            }
        }
    }
    Ok(r)
}

fn parseval(doc: &SpecDocument, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new();
    for k in doc.kernels.values() {
        for (f, g) in pairs(&family(doc, k.source_cat(), seed)) {
            r.extend(parseval_check(k, &f, &g)?);
        }
    }
    Ok(r)
}

fn gamma(doc: &SpecDocument, seed: u64) -> Result<Report, CliError> {
    let mut r = Report::new();
    for (name, st) in &doc.structures {
        let base = st.ps.base();
        if !base.is_discrete() || st.ps.j().is_none() || base.len() > GAMMA_MAX_OBJECTS {
            continue;
        }
        let rho = match discrete_right_unit_witness(&st.ps) {
            Ok(rho) => rho,
            Err(e) => {
                r.push(CheckRecord::skipped(format!("{name}/gamma"), anchors::GAMMA, format!("no right unit witness: {e}")));
                continue;
            }
        };
        let k = example2_kernel(&st.ps)?;
        let mut part = Report::new();
        for f in family(doc, base, seed) {
            part.extend(verify_gamma_left_inverse(&k, &rho, &f)?);
        }
        r.extend(part.scoped(name));
    }
    Ok(r)
}
