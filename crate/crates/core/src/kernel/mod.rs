//! Kernels `K: A^op ⊗ X → V`, their transforms and the Kan adjunction.

mod classify;
mod gamma;

use std::sync::Arc;

pub use classify::{
    classify_transform, conservativity_sufficient_conditions, default_family, joy_hom, nat_basis, nat_space,
    parseval_check, Classification, FunctorVerdict, JoyHom, Verdict,
};
pub use gamma::{
    discrete_right_unit_witness, example2_kernel, gamma_transform, is_faithful, lemma_dual_hom, unit_coend,
    verify_faithfulness_proposition, verify_gamma_left_inverse,
};

use crate::enriched::{hom_bimodule, same_category, Coend, End, Factor, FinVCat, Integrand, Module, NatTransform, Slot};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::promonoidal::{convolve, require_functor_on, PromonoidalStructure};
use crate::report::{anchors, CheckRecord, DimRow, EvidenceLevel, Locus, Report};

/// Structure isomorphisms of a multiplicative kernel, in the bases the
/// engine computes for the two sides.
///
/// `product` is indexed like the tuples `(a, b, x)` and maps
/// `∫^{yz} K(a,y) ⊗ K(b,z) ⊗ p(y,z,x)` to `∫^c K(c,x) ⊗ p(a,b,c)`;
/// `unit` is indexed by `x` and maps `j(x)` to `∫^c K(c,x) ⊗ j(c)`.
#[derive(Clone, Debug)]
pub struct Witnesses {
    pub product: Vec<Matrix>,
    pub unit: Vec<Matrix>,
}

/// A module `K: A^op ⊗ X → V` between two promonoidal categories.
#[derive(Clone, Debug)]
pub struct Kernel {
    name: String,
    data: Arc<Module>,
    source: PromonoidalStructure,
    target: PromonoidalStructure,
    witnesses: Option<Witnesses>,
}

impl Kernel {
    pub fn new(
        name: impl Into<String>,
        source: PromonoidalStructure,
        target: PromonoidalStructure,
        data: Module,
    ) -> Result<Kernel> {
        let ok = data.arity() == 2
            && data.slot(0).same(&Slot::contra(source.base()))
            && data.slot(1).same(&Slot::co(target.base()));
        if !ok {
            return Err(Error::WrongKernelShape(format!(
                "{} must be contravariant over {} and covariant over {}",
                data.name(),
                source.base().name(),
                target.base().name()
            )));
        }
        Ok(Kernel { name: name.into(), data: Arc::new(data), source, target, witnesses: None })
    }

    /// `K = A(−,−)` from a promonoidal category to itself.
    pub fn hom(ps: &PromonoidalStructure) -> Kernel {
        let data = hom_bimodule(ps.base());
        Kernel::new(format!("hom({})", ps.base().name()), ps.clone(), ps.clone(), data).expect("hom kernel shape")
    }

    /// The zero kernel.
    pub fn zero(source: &PromonoidalStructure, target: &PromonoidalStructure) -> Kernel {
        let slots = vec![Slot::contra(source.base()), Slot::co(target.base())];
        let n = source.base().len() * target.base().len();
        let data = Module::new("0", slots, vec![0; n]).expect("zero kernel shape");
        Kernel::new("0", source.clone(), target.clone(), data).expect("zero kernel shape")
    }

    pub fn with_witnesses(mut self, w: Witnesses) -> Kernel {
        self.witnesses = Some(w);
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Kernel {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn data(&self) -> &Arc<Module> {
        &self.data
    }

    pub fn source(&self) -> &PromonoidalStructure {
        &self.source
    }

    pub fn target(&self) -> &PromonoidalStructure {
        &self.target
    }

    pub fn source_cat(&self) -> &Arc<FinVCat> {
        self.source.base()
    }

    pub fn target_cat(&self) -> &Arc<FinVCat> {
        self.target.base()
    }

    pub fn witnesses(&self) -> Option<&Witnesses> {
        self.witnesses.as_ref()
    }

    pub fn dim(&self, a: usize, x: usize) -> usize {
        self.data.dim_at(&[a, x])
    }

    /// Module axioms of the data.
    pub fn check(&self) -> Report {
        self.data.check()
    }
}

/// `K̄(f)(x) = ∫^a K(a,x) ⊗ f(a)`, with its coprojections.
pub fn transform_coend(k: &Kernel, f: &Arc<Module>) -> Result<Coend> {
    let a = k.source_cat();
    require_functor_on(f, a)?;
    let vars = vec![Slot::contra(a), Slot::co(k.target_cat()), Slot::co(a)];
    let integrand =
        Integrand::new(vars, vec![Factor::new(k.data.clone(), vec![0, 1]), Factor::new(f.clone(), vec![2])])?;
    Coend::compute(integrand, vec![(0, 2)])
}

pub fn transform(k: &Kernel, f: &Arc<Module>) -> Result<Arc<Module>> {
    let c = transform_coend(k, f)?;
    Ok(Arc::new(c.result().as_ref().clone().renamed(format!("{}̄({})", k.name, f.name()))))
}

/// `K̲(g)(a) = ∫_x [K(a,x), g(x)]`.
pub fn right_adjoint_end(k: &Kernel, g: &Arc<Module>) -> Result<End> {
    let x = k.target_cat();
    require_functor_on(g, x)?;
    let vars = vec![Slot::co(k.source_cat()), Slot::contra(x), Slot::co(x)];
    let integrand = Integrand::new(
        vars,
        vec![Factor::new(Arc::new(k.data.dual()), vec![0, 1]), Factor::new(g.clone(), vec![2])],
    )?;
    End::compute(integrand, vec![(1, 2)])
}

pub fn right_adjoint(k: &Kernel, g: &Arc<Module>) -> Result<Arc<Module>> {
    let e = right_adjoint_end(k, g)?;
    Ok(Arc::new(e.result().as_ref().clone().renamed(format!("{}̲({})", k.name, g.name()))))
}

/// `K̄^∨(h)(x) = ∫_a [K(a,x), h(a)]` for `h` contravariant on `A`; the
/// result is contravariant on `X`.
pub fn dual_transform_end(k: &Kernel, h: &Arc<Module>) -> Result<End> {
    let a = k.source_cat();
    if h.arity() != 1 || !h.slot(0).same(&Slot::contra(a)) {
        return Err(Error::BaseMismatch(format!("{} is not a functor on the opposite of {}", h.name(), a.name())));
    }
    let vars = vec![Slot::co(a), Slot::contra(k.target_cat()), Slot::contra(a)];
    let integrand = Integrand::new(
        vars,
        vec![Factor::new(Arc::new(k.data.dual()), vec![0, 1]), Factor::new(h.clone(), vec![2])],
    )?;
    End::compute(integrand, vec![(2, 0)])
}

pub fn dual_transform(k: &Kernel, h: &Arc<Module>) -> Result<Arc<Module>> {
    let e = dual_transform_end(k, h)?;
    Ok(Arc::new(e.result().as_ref().clone().renamed(format!("{}̄∨({})", k.name, h.name()))))
}

/// Dimension table for `K̄^∨(h) ≅ K̄(h*)*`.
pub fn check_dual_transform_identity(k: &Kernel, h: &Arc<Module>) -> Result<CheckRecord> {
    let lhs = dual_transform(k, h)?;
    let hs = Arc::new(h.dual());
    let rhs = transform(k, &hs)?;
    let x = k.target_cat();
    let rows = (0..x.len())
        .map(|i| DimRow { objects: vec![x.objects()[i].clone()], lhs: lhs.dim(i), rhs: rhs.dim(i) })
        .collect();
    Ok(CheckRecord::from_table(
        format!("{}/dual-transform/{}", k.name, h.name()),
        anchors::DUAL_TRANSFORM,
        EvidenceLevel::DimensionOnly,
        rows,
    ))
}

/// `Q: K ⊗ F → G` (rows `dg`, columns `dk·df`) as `F → K* ⊗ G`.
pub(crate) fn curry(q: &Matrix, dk: usize, df: usize) -> Matrix {
    let dg = q.rows();
    Matrix::from_triplets(dk * dg, df, q.entries().map(|(j, col, v)| ((col / df) * dg + j, col % df, v.clone())))
}

/// `P: E → K* ⊗ G` (rows `dk·dg`) as the evaluation `K ⊗ E → G`.
pub(crate) fn uncurry(p: &Matrix, dk: usize, dg: usize) -> Matrix {
    let de = p.cols();
    Matrix::from_triplets(dg, dk * de, p.entries().map(|(row, e, v)| (row % dg, (row / dg) * de + e, v.clone())))
}

/// Components of `K̄(n): K̄f → K̄g` for a transformation `n: f → g`.
pub fn transform_map(kf: &Coend, kg: &Coend, n: &[Matrix]) -> Result<Vec<Matrix>> {
    (0..kf.result().len())
        .map(|x| {
            kf.induced_map(kg, x, |d| {
                let asg = kf.assignment(x, d);
                let dk = kf.integrand().factors()[0].module.dim_at(&[asg[0], asg[1]]);
                Matrix::identity(dk).kron(&n[d[0]])
            })
        })
        .collect()
}

/// Components of `K̲(n): K̲g → K̲g'` for a transformation `n: g → g'`.
pub fn right_adjoint_map(kg: &End, kg2: &End, n: &[Matrix]) -> Result<Vec<Matrix>> {
    (0..kg.result().len())
        .map(|a| {
            kg.induced_map(kg2, a, |d| {
                let asg = kg.assignment(a, d);
                let dk = kg.integrand().factors()[0].module.dim_at(&[asg[0], asg[1]]);
                Matrix::identity(dk).kron(&n[d[0]])
            })
        })
        .collect()
}

/// The unit `η_f: f → K̲K̄f` together with the computed transforms.
#[derive(Clone, Debug)]
pub struct AdjunctionUnit {
    pub transform: Coend,
    pub monad: End,
    pub eta: NatTransform,
}

/// `η_f(a)`: the coprojections `K(a,x) ⊗ f(a) → K̄f(x)`, curried and
/// factored through the end.
pub fn adjunction_unit(k: &Kernel, f: &Arc<Module>) -> Result<AdjunctionUnit> {
    let kf = transform_coend(k, f)?;
    let kf_mod = kf.result().clone();
    let monad = right_adjoint_end(k, &kf_mod)?;
    let mut comps = Vec::with_capacity(f.len());
    for a in 0..f.len() {
        let df = f.dim(a);
        let m = monad
            .factor_wedge(a, df, |d| {
                let x = d[0];
                curry(&kf.coprojection(x, &[a]), k.dim(a, x), df)
            })
            .map_err(|e| Error::InternalInconsistency(format!("unit of {} at {}: {e}", k.name, f.name())))?;
        comps.push(m);
    }
    let eta = NatTransform::new(f.clone(), monad.result().clone(), comps)?;
    Ok(AdjunctionUnit { transform: kf, monad, eta })
}

/// The counit `ε_g: K̄K̲g → g` together with the computed transforms.
#[derive(Clone, Debug)]
pub struct AdjunctionCounit {
    pub adjoint: End,
    pub comonad: Coend,
    pub epsilon: NatTransform,
}

pub fn adjunction_counit(k: &Kernel, g: &Arc<Module>) -> Result<AdjunctionCounit> {
    let kg = right_adjoint_end(k, g)?;
    let kg_mod = kg.result().clone();
    let comonad = transform_coend(k, &kg_mod)?;
    let mut comps = Vec::with_capacity(g.len());
    for x in 0..g.len() {
        let dg = g.dim(x);
        let m = comonad
            .factor_cowedge(x, dg, |d| {
                let a = d[0];
                uncurry(&kg.projection_to(a, &[x]), k.dim(a, x), dg)
            })
            .map_err(|e| Error::InternalInconsistency(format!("counit of {} at {}: {e}", k.name, g.name())))?;
        comps.push(m);
    }
    let epsilon = NatTransform::new(comonad.result().clone(), g.clone(), comps)?;
    Ok(AdjunctionCounit { adjoint: kg, comonad, epsilon })
}

/// Both triangle identities as exact matrix equations:
/// `ε_{K̄f} ∘ K̄η_f = 1` and `K̲ε_g ∘ η_{K̲g} = 1`.
pub fn check_triangle_identities(k: &Kernel, f: &Arc<Module>, g: &Arc<Module>) -> Result<Report> {
    let mut report = Report::new();
    let unit = adjunction_unit(k, f)?;
    let kf = unit.transform.result().clone();
    let counit = adjunction_counit(k, &kf)?;
    let kkkf = transform_coend(k, unit.monad.result())?;
    let keta = transform_map(&unit.transform, &kkkf, &unit.eta.components)?;
    let x = k.target_cat();
    let mut bad = 0;
    for (i, m) in keta.iter().enumerate() {
        let lhs = counit.epsilon.components[i].compose(m)?;
        if !lhs.is_identity() {
            bad += 1;
            report.push(crate::enriched::equation_record(
                format!("{}/triangle-left/{}/{}", k.name, f.name(), x.objects()[i]),
                anchors::KAN_ADJUNCTION,
                &lhs,
                &Matrix::identity(kf.dim(i)),
                vec![x.objects()[i].clone()],
            ));
        }
    }
    let counit_g = adjunction_counit(k, g)?;
    let kg = counit_g.adjoint.result().clone();
    let unit_kg = adjunction_unit(k, &kg)?;
    let keps = right_adjoint_map(&unit_kg.monad, &counit_g.adjoint, &counit_g.epsilon.components)?;
    let a = k.source_cat();
    for (i, m) in keps.iter().enumerate() {
        let lhs = m.compose(&unit_kg.eta.components[i])?;
        if !lhs.is_identity() {
            bad += 1;
            report.push(crate::enriched::equation_record(
                format!("{}/triangle-right/{}/{}", k.name, g.name(), a.objects()[i]),
                anchors::KAN_ADJUNCTION,
                &lhs,
                &Matrix::identity(kg.dim(i)),
                vec![a.objects()[i].clone()],
            ));
        }
    }
    if bad == 0 {
        report.push(CheckRecord::pass(
            format!("{}/triangles/{},{}", k.name, f.name(), g.name()),
            anchors::KAN_ADJUNCTION,
            EvidenceLevel::ExactEquation,
        ));
    }
    Ok(report)
}

/// The two sides of the product structure isomorphism, as modules in
/// `(a, b, x)`.
pub fn multiplicativity_sides(k: &Kernel) -> Result<(Coend, Coend)> {
    let (a, x) = (k.source_cat(), k.target_cat());
    // vars: 0 a, 1 y, 2 b, 3 z, 4 y', 5 z', 6 x
    let lhs = Integrand::new(
        vec![Slot::contra(a), Slot::co(x), Slot::contra(a), Slot::co(x), Slot::contra(x), Slot::contra(x), Slot::co(x)],
        vec![
            Factor::new(k.data.clone(), vec![0, 1]),
            Factor::new(k.data.clone(), vec![2, 3]),
            Factor::new(k.target.p().clone(), vec![4, 5, 6]),
        ],
    )?;
    let lhs = Coend::compute(lhs, vec![(4, 1), (5, 3)])?;
    // vars: 0 a, 1 b, 2 c', 3 c, 4 x
    let rhs = Integrand::new(
        vec![Slot::contra(a), Slot::contra(a), Slot::co(a), Slot::contra(a), Slot::co(x)],
        vec![Factor::new(k.source.p().clone(), vec![0, 1, 2]), Factor::new(k.data.clone(), vec![3, 4])],
    )?;
    let rhs = Coend::compute(rhs, vec![(3, 2)])?;
    Ok((lhs, rhs))
}

/// `∫^c K(c,x) ⊗ j(c)`, as a functor in `x`.
pub fn unit_side(k: &Kernel) -> Result<Option<Coend>> {
    let Some(j) = k.source.j() else { return Ok(None) };
    let (a, x) = (k.source_cat(), k.target_cat());
    let integrand = Integrand::new(
        vec![Slot::contra(a), Slot::co(x), Slot::co(a)],
        vec![Factor::new(k.data.clone(), vec![0, 1]), Factor::new(j.clone(), vec![2])],
    )?;
    Ok(Some(Coend::compute(integrand, vec![(0, 2)])?))
}

/// Per-`(a,b,x)` and per-`x` dimension comparisons of the two structure
/// isomorphisms, plus naturality and invertibility of supplied witnesses.
pub fn check_kernel_multiplicative(k: &Kernel) -> Result<Report> {
    let x = k.target_cat();
    let (lhs, rhs) = multiplicativity_sides(k)?;
    let mut report = Report::new();
    let mut rows = Vec::new();
    for idx in 0..lhs.result().len() {
        let names = lhs.result().tuple_names(idx);
        rows.push(DimRow { objects: names, lhs: lhs.dim(idx), rhs: rhs.dim(idx) });
    }
    for r in rows.iter().filter(|r| r.lhs != r.rhs) {
        report.push(CheckRecord::from_table(
            format!("{}/multiplicative/{}", k.name, r.objects.join(",")),
            anchors::MULTIPLICATIVE_KERNEL,
            EvidenceLevel::DimensionOnly,
            vec![r.clone()],
        ));
    }
    let mut product = CheckRecord::from_table(
        format!("{}/multiplicative/product", k.name),
        anchors::MULTIPLICATIVE_KERNEL,
        EvidenceLevel::DimensionOnly,
        rows,
    );
    let unit = unit_side(k)?;
    let mut unit_record = match (&unit, k.target.j()) {
        (Some(u), Some(jx)) => {
            let rows: Vec<DimRow> = (0..x.len())
                .map(|i| DimRow { objects: vec![x.objects()[i].clone()], lhs: jx.dim(i), rhs: u.dim(i) })
                .collect();
            for r in rows.iter().filter(|r| r.lhs != r.rhs) {
                report.push(CheckRecord::from_table(
                    format!("{}/multiplicative-unit/{}", k.name, r.objects.join(",")),
                    anchors::MULTIPLICATIVE_KERNEL,
                    EvidenceLevel::DimensionOnly,
                    vec![r.clone()],
                ));
            }
            Some(CheckRecord::from_table(
                format!("{}/multiplicative/unit", k.name),
                anchors::MULTIPLICATIVE_KERNEL,
                EvidenceLevel::DimensionOnly,
                rows,
            ))
        }
        _ => {
            report.push(CheckRecord::skipped(
                format!("{}/multiplicative/unit", k.name),
                anchors::MULTIPLICATIVE_KERNEL,
                "one of the promonoidal structures has no unit",
            ));
            None
        }
    };
    if let Some(w) = &k.witnesses {
        let nat = NatTransform::new(lhs.result().clone(), rhs.result().clone(), w.product.clone());
        match nat {
            Ok(nt) => {
                let ok = witness_checks(&nt, &format!("{}/witness-product", k.name), &mut report);
                if ok && product.passed() {
                    product.level = EvidenceLevel::IsomorphismVerified;
                }
            }
            Err(e) => report.push(CheckRecord::skipped(
                format!("{}/witness-product", k.name),
                anchors::MULTIPLICATIVE_KERNEL,
                format!("witness rejected: {e}"),
            )),
        }
        if let (Some(u), Some(jx), Some(rec)) = (&unit, k.target.j(), unit_record.as_mut()) {
            match NatTransform::new(jx.clone(), u.result().clone(), w.unit.clone()) {
                Ok(nt) => {
                    let ok = witness_checks(&nt, &format!("{}/witness-unit", k.name), &mut report);
                    if ok && rec.passed() {
                        rec.level = EvidenceLevel::IsomorphismVerified;
                    }
                }
                Err(e) => report.push(CheckRecord::skipped(
                    format!("{}/witness-unit", k.name),
                    anchors::MULTIPLICATIVE_KERNEL,
                    format!("witness rejected: {e}"),
                )),
            }
        }
    }
    report.push(product);
    if let Some(r) = unit_record {
        report.push(r);
    }
    Ok(report)
}

fn witness_checks(nt: &NatTransform, id: &str, report: &mut Report) -> bool {
    let nat = nt.check();
    let natural = nat.all_passed();
    report.extend(nat.scoped(id));
    let iso = nt.is_isomorphism();
    if !iso {
        report.push(CheckRecord::fail(
            format!("{id}/invertible"),
            anchors::MULTIPLICATIVE_KERNEL,
            EvidenceLevel::IsomorphismVerified,
            Locus { objects: vec![], quantity: "invertible".into(), lhs: 0, rhs: 1 },
        ));
    }
    natural && iso
}

/// `dim K̄(f ⊛ g)(x) = dim (K̄f ⊛ K̄g)(x)` at every `x`.
pub fn verify_transform_multiplicativity(k: &Kernel, f: &Arc<Module>, g: &Arc<Module>) -> Result<Report> {
    let fg = convolve(&k.source, f, g)?;
    let lhs = transform(k, &fg)?;
    let rhs = convolve(&k.target, &transform(k, f)?, &transform(k, g)?)?;
    let x = k.target_cat();
    let rows = (0..x.len())
        .map(|i| DimRow { objects: vec![x.objects()[i].clone()], lhs: lhs.dim(i), rhs: rhs.dim(i) })
        .collect();
    let mut report = Report::new();
    report.push(CheckRecord::from_table(
        format!("{}/transform-theorem/{},{}", k.name, f.name(), g.name()),
        anchors::TRANSFORM_THEOREM,
        EvidenceLevel::DimensionOnly,
        rows,
    ));
    Ok(report)
}

/// Module composite `(K2 ∘ K1)(a, y) = ∫^x K1(a,x) ⊗ K2(x,y)`. Witnesses are
/// not transported.
pub fn compose_kernels(k1: &Kernel, k2: &Kernel) -> Result<Kernel> {
    if !same_category(k1.target_cat(), k2.source_cat()) {
        return Err(Error::BaseMismatch(format!(
            "{} ends at {} but {} starts at {}",
            k1.name,
            k1.target_cat().name(),
            k2.name,
            k2.source_cat().name()
        )));
    }
    let (a, x, y) = (k1.source_cat(), k1.target_cat(), k2.target_cat());
    let integrand = Integrand::new(
        vec![Slot::contra(a), Slot::co(x), Slot::contra(x), Slot::co(y)],
        vec![Factor::new(k1.data.clone(), vec![0, 1]), Factor::new(k2.data.clone(), vec![2, 3])],
    )?;
    let c = Coend::compute(integrand, vec![(2, 1)])?;
    let name = format!("{}∘{}", k2.name, k1.name);
    let data = c.result().as_ref().clone().renamed(name.clone());
    Kernel::new(name, k1.source.clone(), k2.target.clone(), data)
}

#[cfg(test)]
mod tests;
