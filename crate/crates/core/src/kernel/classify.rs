use std::sync::Arc;

use serde::Serialize;

use super::gamma::check_pairing;
use super::{adjunction_unit, right_adjoint_map, transform_coend, transform_map, Kernel};
use crate::enriched::{representable, End, Factor, FinVCat, Integrand, Module, Slot};
use crate::error::Result;
use crate::linalg::{is_injective, kernel_subspace, rank, Matrix, SparseVec};
use crate::promonoidal::{inner_pairing, require_functor_on};
use crate::random::random_family;
use crate::report::{anchors, CheckRecord, DimRow, EvidenceLevel, Locus, Report};

/// How far `K̄` is from an embedding, judged from `η_f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// `η_f` is an isomorphism.
    FullyFaithful,
    /// `η_f` is injective but not onto.
    Conservative,
    Neither,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::FullyFaithful => "FULLY_FAITHFUL",
            Verdict::Conservative => "CONSERVATIVE",
            Verdict::Neither => "NEITHER",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctorVerdict {
    pub functor: String,
    pub verdict: Verdict,
    /// Total rank of `η_f` over all objects.
    pub rank: usize,
    /// Total dimension of `f`.
    pub dim: usize,
    /// Total dimension of `K̲K̄f`.
    pub target_dim: usize,
}

/// Per-functor verdicts and a summary that holds only for the tested family.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub kernel: String,
    pub per_functor: Vec<FunctorVerdict>,
    pub summary: Verdict,
}

impl Classification {
    pub fn to_report(&self) -> Report {
        let mut report = Report::new();
        for v in &self.per_functor {
            report.push(
                CheckRecord::pass(
                    format!("{}/classify/{}", self.kernel, v.functor),
                    anchors::CLASSIFICATION,
                    EvidenceLevel::ExactEquation,
                )
                .with_note(format!(
                    "{}: rank η = {} of dim f = {}, dim K̲K̄f = {}",
                    v.verdict.as_str(),
                    v.rank,
                    v.dim,
                    v.target_dim
                )),
            );
        }
        let names: Vec<&str> = self.per_functor.iter().map(|v| v.functor.as_str()).collect();
        report.push(
            CheckRecord::pass(format!("{}/classify/summary", self.kernel), anchors::CLASSIFICATION, EvidenceLevel::Enumeration)
                .with_note(format!(
                    "{} relative to the tested family of {} functors [{}]",
                    self.summary.as_str(),
                    names.len(),
                    names.join(", ")
                )),
        );
        report
    }
}

/// All representables followed by `count` seeded random functors.
pub fn default_family(cat: &Arc<FinVCat>, count: usize, max_dim: usize, seed: u64) -> Vec<Arc<Module>> {
    let mut family: Vec<Arc<Module>> =
        (0..cat.len()).map(|a| Arc::new(representable(cat, a).expect("object in range"))).collect();
    family.extend(random_family(cat, count, max_dim, seed));
    family
}

pub fn classify_transform(k: &Kernel, family: &[Arc<Module>]) -> Result<Classification> {
    let mut per_functor = Vec::with_capacity(family.len());
    for f in family {
        let unit = adjunction_unit(k, f)?;
        let eta = &unit.eta;
        let verdict = if eta.is_isomorphism() {
            Verdict::FullyFaithful
        } else if eta.is_monomorphism() {
            Verdict::Conservative
        } else {
            Verdict::Neither
        };
        per_functor.push(FunctorVerdict {
            functor: f.name().to_string(),
            verdict,
            rank: eta.components.iter().map(rank).sum(),
            dim: f.total_dim(),
            target_dim: eta.target.total_dim(),
        });
    }
    let summary = if per_functor.is_empty() {
        Verdict::Neither
    } else {
        per_functor.iter().map(|v| v.verdict).max().unwrap_or(Verdict::Neither)
    };
    Ok(Classification { kernel: k.name().to_string(), per_functor, summary })
}

/// `[A,V](f, g) = ∫_a [f(a), g(a)]` for functors on one category.
pub fn nat_space(f: &Arc<Module>, g: &Arc<Module>) -> Result<End> {
    let a = f.slot(0).cat.clone();
    require_functor_on(f, &a)?;
    require_functor_on(g, &a)?;
    let integrand = Integrand::new(
        vec![Slot::contra(&a), Slot::co(&a)],
        vec![Factor::new(Arc::new(f.dual()), vec![0]), Factor::new(g.clone(), vec![1])],
    )?;
    End::compute(integrand, vec![(0, 1)])
}

/// A basis of `[A,V](f, g)`, each element given by its components.
pub fn nat_basis(space: &End, f: &Module, g: &Module) -> Vec<Vec<Matrix>> {
    (0..space.dim(0))
        .map(|e| {
            (0..f.len())
                .map(|a| {
                    let col = space.projection_to(0, &[a]).column(e);
                    Matrix::unvec(&col, f.dim(a), g.dim(a)).transpose()
                })
                .collect()
        })
        .collect()
}

/// Hom-space of the Joyal-Wiener category: the transformations
/// `α: K̄f → K̄g` with `K̄K̲(α) ∘ K̄(η_f) = K̄(η_g) ∘ α`.
#[derive(Clone, Debug)]
pub struct JoyHom {
    pub dim: usize,
    /// `dim [X,V](K̄f, K̄g)`.
    pub ambient_dim: usize,
    pub basis: Vec<Vec<Matrix>>,
}

pub fn joy_hom(k: &Kernel, f: &Arc<Module>, g: &Arc<Module>) -> Result<JoyHom> {
    let uf = adjunction_unit(k, f)?;
    let ug = adjunction_unit(k, g)?;
    let (kf, kg) = (uf.transform.result().clone(), ug.transform.result().clone());
    let kkkf = transform_coend(k, uf.monad.result())?;
    let kkkg = transform_coend(k, ug.monad.result())?;
    let keta_f = transform_map(&uf.transform, &kkkf, &uf.eta.components)?;
    let keta_g = transform_map(&ug.transform, &kkkg, &ug.eta.components)?;
    let space = nat_space(&kf, &kg)?;
    let basis = nat_basis(&space, &kf, &kg);
    let nx = kf.len();
    // Columns: vectorized lhs − rhs for each basis transformation.
    let mut columns: Vec<SparseVec> = Vec::with_capacity(basis.len());
    let mut total = 0;
    for alpha in &basis {
        let k_alpha = right_adjoint_map(&uf.monad, &ug.monad, alpha)?;
        let kk_alpha = transform_map(&kkkf, &kkkg, &k_alpha)?;
        let mut col = SparseVec::new();
        let mut offset = 0;
        for x in 0..nx {
            let lhs = kk_alpha[x].compose(&keta_f[x])?;
            let rhs = keta_g[x].compose(&alpha[x])?;
            let d = lhs.sub(&rhs)?;
            col.extend(d.vec().into_iter().map(|(i, v)| (offset + i, v)));
            offset += d.rows() * d.cols();
        }
        total = offset;
        columns.push(col);
    }
    let m = Matrix::from_triplets(
        total,
        columns.len(),
        columns.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v.clone()))),
    );
    let ker = kernel_subspace(&m);
    let joy_basis = (0..ker.dim)
        .map(|e| {
            let coeffs = ker.section.column(e);
            (0..nx)
                .map(|x| {
                    let mut acc = Matrix::zeros(kg.dim(x), kf.dim(x));
                    for (i, c) in &coeffs {
                        acc = acc.add(&basis[*i][x].scale(c)).expect("same shape");
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Ok(JoyHom { dim: ker.dim, ambient_dim: basis.len(), basis: joy_basis })
}

/// Injectivity of every coprojection `K(a,x) ⊗ f(a) → K̄f(x)` and of the
/// identity `I → ∫_x [K(a,x), K(a,x)]`; with a pairing, also the hypothesis
/// `A(a,b) ≅ A(b,a)*`.
pub fn conservativity_sufficient_conditions(k: &Kernel, f: &Arc<Module>, pairing: Option<&[Matrix]>) -> Result<Report> {
    let (a, x) = (k.source_cat(), k.target_cat());
    let kf = transform_coend(k, f)?;
    let mut report = Report::new();
    let mut rows = Vec::new();
    for xi in 0..x.len() {
        for ai in 0..a.len() {
            let q = kf.coprojection(xi, &[ai]);
            rows.push(DimRow {
                objects: vec![a.objects()[ai].clone(), x.objects()[xi].clone()],
                lhs: rank(&q),
                rhs: q.cols(),
            });
        }
    }
    report.push(
        CheckRecord::from_table(
            format!("{}/coprojections-injective/{}", k.name(), f.name()),
            anchors::CONSERVATIVITY,
            EvidenceLevel::ExactEquation,
            rows,
        )
        .with_note("rank of each coprojection against its domain dimension"),
    );
    // id: I → ∫_x K(a,x)* ⊗ K(a,x), one object a at a time.
    let kdual = Arc::new(k.data().dual());
    let integrand = Integrand::new(
        vec![Slot::co(a), Slot::contra(x), Slot::contra(a), Slot::co(x)],
        vec![Factor::new(kdual, vec![0, 1]), Factor::new(k.data().clone(), vec![2, 3])],
    )?;
    let ends = End::compute(integrand, vec![(1, 3)])?;
    let mut failures = 0;
    for ai in 0..a.len() {
        let idx = ends.result().index(&[ai, ai]);
        let id = ends.factor_wedge(idx, 1, |d| {
            let n = k.dim(ai, d[0]);
            let entries = (0..n).map(|i| (i * n + i, 0, crate::linalg::one()));
            Matrix::from_triplets(n * n, 1, entries)
        })?;
        if !is_injective(&id) {
            failures += 1;
            report.push(CheckRecord::fail(
                format!("{}/identity-mono/{}", k.name(), a.objects()[ai]),
                anchors::CONSERVATIVITY,
                EvidenceLevel::ExactEquation,
                Locus { objects: vec![a.objects()[ai].clone()], quantity: "rank".into(), lhs: 0, rhs: 1 },
            ));
        }
    }
    if failures == 0 {
        report.push(CheckRecord::pass(
            format!("{}/identity-mono", k.name()),
            anchors::CONSERVATIVITY,
            EvidenceLevel::ExactEquation,
        ));
    }
    if let Some(p) = pairing {
        report.extend(check_pairing(a, p)?.scoped(&format!("{}/pairing", k.name())));
    }
    Ok(report)
}

/// `⟨f,g⟩ ≅ ⟨K̄f,K̄g⟩` in dimension, gated on `η_f` and `η_g` being
/// isomorphisms.
pub fn parseval_check(k: &Kernel, f: &Arc<Module>, g: &Arc<Module>) -> Result<Report> {
    let id = format!("{}/parseval/{},{}", k.name(), f.name(), g.name());
    let mut report = Report::new();
    let uf = adjunction_unit(k, f)?;
    let ug = adjunction_unit(k, g)?;
    if !uf.eta.is_isomorphism() || !ug.eta.is_isomorphism() {
        report.push(CheckRecord::skipped(
            id,
            anchors::PARSEVAL,
            "the unit is not an isomorphism on these functors, so the transform is not known to be fully faithful here",
        ));
        return Ok(report);
    }
    let lhs = inner_pairing(f, g)?;
    let kf = uf.transform.result().clone();
    let kg = ug.transform.result().clone();
    let rhs = inner_pairing(&kf, &kg)?;
    report.push(CheckRecord::from_table(
        id,
        anchors::PARSEVAL,
        EvidenceLevel::DimensionOnly,
        vec![DimRow { objects: vec![], lhs: lhs.dim(0), rhs: rhs.dim(0) }],
    ));
    Ok(report)
}
