//! Built-in gallery instances: each yields a report and, where the instance
//! is an ordinary promonoidal setup, a spec that `check` can reload.

use catfourier::gallery::{
    bool_enumerate_kernels, build_discrete_monoidal_group, build_group_hopf, build_representable_kernel,
    build_restriction_kernel, build_scheme, build_species_category, hopf_fourier_iso, species_convolve,
    verify_scheme_kernel, BoolInstance, FinFunctor, FiniteGroup, SchemeData, SchemeGallery, Species,
};
use catfourier::kernel::check_kernel_multiplicative;
use catfourier::promonoidal::check_s_autonomy;
use catfourier::report::{anchors, DimRow};
use catfourier::{CheckRecord, EvidenceLevel, Report};

use crate::error::CliError;
use crate::spec::{RawSpec, SpecBuilder};

#[derive(Clone, Debug, clap::Subcommand)]
pub enum GalleryCmd {
    /// Group Hopf algebra k[G] with its Fourier isomorphism.
    Hopf {
        /// `z<n>` (n ≤ 12), `s<n>` (n ≤ 4) or `trivial`.
        #[arg(long, default_value = "z3")]
        group: String,
    },
    /// Hamming scheme H(n,q).
    Hamming {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        q: usize,
    },
    /// The scheme of Z/n acting on itself.
    Scheme {
        #[arg(long, default_value_t = 4)]
        cyclic: usize,
    },
    /// Discrete monoidal group Z/n with Sa = a⁻¹.
    Group {
        #[arg(long, default_value_t = 3)]
        order: usize,
        #[arg(long)]
        closed: bool,
    },
    /// Truncated species: the convolution dimension law on seeded inputs.
    Species {
        #[arg(long, default_value_t = 4)]
        trunc: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Boolean kernels by enumeration.
    Bool {
        #[arg(long, value_enum, default_value = "submodule")]
        mode: BoolModeArg,
        /// Carrier size: the modulus, or the number of points on the line.
        #[arg(long, default_value_t = 4)]
        modulus: usize,
    },
    /// Kernels along Z/2 → Z/4 (inclusion) or Z/4 → Z/2 (quotient).
    Restriction {
        #[arg(long, value_enum, default_value = "inclusion")]
        kind: RestrictionKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum BoolModeArg {
    Submodule,
    Convexity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RestrictionKind {
    Inclusion,
    Quotient,
}

pub struct GalleryOutput {
    pub report: Report,
    pub spec: Option<RawSpec>,
}

pub fn run_gallery(cmd: &GalleryCmd) -> Result<GalleryOutput, CliError> {
    match cmd {
        GalleryCmd::Hopf { group } => hopf(group),
        GalleryCmd::Hamming { n, q } => scheme(SchemeData::hamming(*n, *q)?),
        GalleryCmd::Scheme { cyclic } => scheme(SchemeData::cyclic(*cyclic)?),
        GalleryCmd::Group { order, closed } => group(*order, *closed),
        GalleryCmd::Species { trunc, seed } => species(*trunc, seed.unwrap_or_else(crate::suite::default_seed)),
        GalleryCmd::Bool { mode, modulus } => boolean(*mode, *modulus),
        GalleryCmd::Restriction { kind } => restriction(*kind),
    }
}

fn hopf(name: &str) -> Result<GalleryOutput, CliError> {
    let group = FiniteGroup::from_name(name)?;
    let gh = build_group_hopf(&group)?;
    let mut report = gh.hopf.check();
    report.extend(hopf_fourier_iso(&gh.hopf).1);
    report.extend(check_kernel_multiplicative(&gh.kernel)?);
    let mut b = SpecBuilder::new();
    let s = b.antipode("S", &gh.antipode);
    b.promonoidal("source", &gh.ps, Some(&s));
    b.promonoidal("pointwise", &gh.pointwise, None);
    b.kernel(&gh.kernel, "source", "pointwise");
    Ok(GalleryOutput { report: report.finalize(), spec: Some(b.finish()) })
}

fn scheme(data: SchemeData) -> Result<GalleryOutput, CliError> {
    let report = verify_scheme_kernel(&data);
    let sg: SchemeGallery = build_scheme(data)?;
    // Intersection numbers are not cyclic once valencies differ, so the
    // antipode is exported but not attached to the structure.
    let mut b = SpecBuilder::new();
    b.antipode("S", &sg.antipode);
    b.promonoidal("scheme", &sg.ps, None);
    b.promonoidal("matrices", &sg.target, None);
    b.kernel(&sg.kernel, "scheme", "matrices");
    Ok(GalleryOutput { report: report.finalize(), spec: Some(b.finish()) })
}

fn group(order: usize, closed: bool) -> Result<GalleryOutput, CliError> {
    if order == 0 || order > 12 {
        return Err(CliError::Usage(format!("group order must be between 1 and 12, got {order}")));
    }
    let dg = build_discrete_monoidal_group(&FiniteGroup::cyclic(order), closed)?;
    let mut report = dg.ps.check();
    report.extend(check_s_autonomy(&dg.ps, &dg.antipode));
    report.extend(check_kernel_multiplicative(&dg.kernel)?);
    let mut b = SpecBuilder::new();
    let s = b.antipode("S", &dg.antipode);
    b.promonoidal("group", &dg.ps, Some(&s));
    let target = dg.kernel.target();
    b.promonoidal("bimodules", target, None);
    b.kernel(&dg.kernel, "group", "bimodules");
    Ok(GalleryOutput { report: report.finalize(), spec: Some(b.finish()) })
}

fn species(trunc: usize, seed: u64) -> Result<GalleryOutput, CliError> {
    let sc = build_species_category(trunc)?;
    let mut report = Report::new();
    for i in 0..3u64 {
        let f = Species::random(trunc, 2, seed.wrapping_mul(100).wrapping_add(2 * i));
        let g = Species::random(trunc, 2, seed.wrapping_mul(100).wrapping_add(2 * i + 1));
        let fg = species_convolve(&sc, &f, &g)?;
        let mut rows = Vec::new();
        for n in 0..=trunc {
            let want: usize =
                (0..=n).map(|k| binomial(n, k) * f.coefficient(k).unwrap_or(0) * g.coefficient(n - k).unwrap_or(0)).sum();
            rows.push(DimRow { objects: vec![n.to_string()], lhs: fg.coefficient(n)?, rhs: want });
        }
        report.push(
            CheckRecord::from_table(
                format!("species/convolution/{},{}", f.name, g.name),
                anchors::SPECIES,
                EvidenceLevel::DimensionOnly,
                rows,
            )
            .with_note("dim (f∗g)(n) against Σ C(n,k) dim f(k) dim g(n−k)"),
        );
    }
    Ok(GalleryOutput { report: report.finalize(), spec: None })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn boolean(mode: BoolModeArg, size: usize) -> Result<GalleryOutput, CliError> {
    let inst = match mode {
        BoolModeArg::Submodule => BoolInstance::submodule(size)?,
        BoolModeArg::Convexity => BoolInstance::convexity_line(size)?,
    };
    let found = bool_enumerate_kernels(&inst)?;
    let mut report = Report::new();
    let label = match mode {
        BoolModeArg::Submodule => format!("submodule-Z{size}"),
        BoolModeArg::Convexity => format!("convexity-{size}"),
    };
    let sets: Vec<String> = found
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    report.push(
        CheckRecord::pass(format!("bool/{label}"), anchors::BOOLEAN_KERNEL, EvidenceLevel::Enumeration)
            .with_note(format!("{} kernels: {}", found.len(), sets.join(" "))),
    );
    Ok(GalleryOutput { report, spec: None })
}

fn restriction(kind: RestrictionKind) -> Result<GalleryOutput, CliError> {
    let a2 = build_discrete_monoidal_group(&FiniteGroup::cyclic(2), false)?;
    let a4 = build_discrete_monoidal_group(&FiniteGroup::cyclic(4), false)?;
    let kernel = match kind {
        RestrictionKind::Inclusion => {
            let phi = FinFunctor::discrete(&a2.cat, &a4.cat, vec![0, 2])?;
            build_representable_kernel(&a2.ps, &a4.ps, &phi)?
        }
        RestrictionKind::Quotient => {
            let psi = FinFunctor::discrete(&a4.cat, &a2.cat, vec![0, 1, 0, 1])?;
            build_restriction_kernel(&a2.ps, &a4.ps, &psi)?.kernel
        }
    };
    let report = check_kernel_multiplicative(&kernel)?;
    let mut b = SpecBuilder::new();
    let s2 = b.antipode("S2", &a2.antipode);
    let s4 = b.antipode("S4", &a4.antipode);
    b.promonoidal("Z2", &a2.ps, Some(&s2));
    b.promonoidal("Z4", &a4.ps, Some(&s4));
    b.kernel(&kernel, "Z2", "Z4");
    Ok(GalleryOutput { report: report.finalize(), spec: Some(b.finish()) })
}
