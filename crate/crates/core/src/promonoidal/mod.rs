//! Promonoidal structures, Day convolution, antipodes and S-autonomy.

mod antipode;

use std::sync::Arc;

pub use antipode::Antipode;

use crate::enriched::{hom_bimodule, Coend, End, Factor, FinVCat, Integrand, Module, NatTransform, Slot, Variance};
use crate::error::{Error, Result};
use crate::report::{anchors, CheckRecord, DimRow, EvidenceLevel, Report};

/// A promonoidal structure `(p, j)` on a finite category `A`.
///
/// `p` has slots `[contra A, contra A, co A]` and `j` is a functor on `A`.
/// `j` is optional so that structures without a unit can be represented.
/// `cyclic`, when present, is a witness family `p(a,b,Sc) → p(b,c,Sa)` for
/// an antipode supplied alongside.
#[derive(Clone, Debug)]
pub struct PromonoidalStructure {
    base: Arc<FinVCat>,
    p: Arc<Module>,
    j: Option<Arc<Module>>,
    cyclic: Option<Vec<crate::linalg::Matrix>>,
}

fn require_slots(m: &Module, want: &[Slot], what: &str) -> Result<()> {
    if m.arity() != want.len() || !m.slots().iter().zip(want).all(|(a, b)| a.same(b)) {
        return Err(Error::BaseMismatch(format!("{what} {} has the wrong variables", m.name())));
    }
    Ok(())
}

/// Errors unless `f` is a functor on `cat`.
pub fn require_functor_on(f: &Module, cat: &Arc<FinVCat>) -> Result<()> {
    require_slots(f, &[Slot::co(cat)], "functor")
}

impl PromonoidalStructure {
    pub fn new(base: &Arc<FinVCat>, p: Module, j: Option<Module>) -> Result<Self> {
        require_slots(&p, &[Slot::contra(base), Slot::contra(base), Slot::co(base)], "p")?;
        if let Some(j) = &j {
            require_functor_on(j, base)?;
        }
        Ok(PromonoidalStructure { base: base.clone(), p: Arc::new(p), j: j.map(Arc::new), cyclic: None })
    }

    /// Attaches a cyclic witness family, indexed like `p`'s tuples `(a,b,c)`,
    /// each a map `p(a,b,Sc) → p(b,c,Sa)`.
    pub fn with_cyclic_witness(mut self, family: Vec<crate::linalg::Matrix>) -> Self {
        self.cyclic = Some(family);
        self
    }

    pub fn base(&self) -> &Arc<FinVCat> {
        &self.base
    }

    pub fn p(&self) -> &Arc<Module> {
        &self.p
    }

    pub fn j(&self) -> Option<&Arc<Module>> {
        self.j.as_ref()
    }

    pub fn p_dim(&self, a: usize, b: usize, c: usize) -> usize {
        self.p.dim_at(&[a, b, c])
    }

    /// The same structure with the two inputs of `p` swapped.
    pub fn reversed(&self) -> PromonoidalStructure {
        let p = self.p.permute_slots(&[1, 0, 2]).renamed(format!("{}ʳ", self.p.name()));
        PromonoidalStructure { base: self.base.clone(), p: Arc::new(p), j: self.j.clone(), cyclic: None }
    }

    /// Module axioms for `p` and `j`.
    pub fn check(&self) -> Report {
        let mut r = self.p.check();
        if let Some(j) = &self.j {
            r.extend(j.check());
        }
        r
    }
}

/// `(f ⊛ g)(c) = ∫^{ab} f(a) ⊗ g(b) ⊗ p(a,b,c)`, with its coprojections.
pub fn upper_convolution(ps: &PromonoidalStructure, f: &Arc<Module>, g: &Arc<Module>) -> Result<Coend> {
    let a = &ps.base;
    require_functor_on(f, a)?;
    require_functor_on(g, a)?;
    let vars = vec![Slot::co(a), Slot::co(a), Slot::contra(a), Slot::contra(a), Slot::co(a)];
    let integrand = Integrand::new(
        vars,
        vec![
            Factor::new(f.clone(), vec![0]),
            Factor::new(g.clone(), vec![1]),
            Factor::new(ps.p.clone(), vec![2, 3, 4]),
        ],
    )?;
    Coend::compute(integrand, vec![(2, 0), (3, 1)])
}

/// The upper convolution as a functor.
pub fn convolve(ps: &PromonoidalStructure, f: &Arc<Module>, g: &Arc<Module>) -> Result<Arc<Module>> {
    let c = upper_convolution(ps, f, g)?;
    Ok(Arc::new(c.result().as_ref().clone().renamed(format!("{}⊛{}", f.name(), g.name()))))
}

/// The unit of upper convolution, `j`.
pub fn convolution_unit(ps: &PromonoidalStructure) -> Result<Arc<Module>> {
    ps.j.clone().ok_or_else(|| Error::BaseMismatch("this promonoidal structure has no unit".into()))
}

/// `f*(a) = f(Sa)*`.
pub fn dual_functor(s: &Antipode, f: &Module) -> Result<Module> {
    require_functor_on(f, s.base())?;
    let name = format!("{}^", f.name());
    Ok(s.precompose(f, 0)?.dual().renamed(name))
}

/// `h ⊛̲ k`, computed as `(h* ⊛ k*)*` through the antipode.
pub fn lower_convolution(ps: &PromonoidalStructure, s: &Antipode, h: &Arc<Module>, k: &Arc<Module>) -> Result<Module> {
    let hs = Arc::new(dual_functor(s, h)?);
    let ks = Arc::new(dual_functor(s, k)?);
    let conv = upper_convolution(ps, &hs, &ks)?;
    dual_functor(s, conv.result())
}

/// `f ⊛̲_q g = (∫^{ab} f(a)* ⊗ g(b)* ⊗ q(a,b,−))*` for a promonoidal
/// structure `q` on `A^op`, straight from the definition.
pub fn lower_convolution_direct(q: &PromonoidalStructure, f: &Module, g: &Module) -> Result<Module> {
    let aop = q.base.clone();
    let fo = Arc::new(f.dual().op_slot_with(0, &aop));
    let go = Arc::new(g.dual().op_slot_with(0, &aop));
    let conv = upper_convolution(q, &fo, &go)?;
    let a = f.slot(0).cat.clone();
    Ok(conv.result().op_slot_with(0, &a).dual())
}

/// `[f, g](c) = ∫_{ab} [f(a) ⊗ p(c,a,b), g(b)]`.
pub fn internal_hom_end(ps: &PromonoidalStructure, f: &Arc<Module>, g: &Arc<Module>) -> Result<End> {
    let a = &ps.base;
    require_functor_on(f, a)?;
    require_functor_on(g, a)?;
    // variables: 0 a(f*), 1 c(p*), 2 a(p*), 3 b(p*), 4 b(g)
    let vars = vec![Slot::contra(a), Slot::co(a), Slot::co(a), Slot::contra(a), Slot::co(a)];
    let integrand = Integrand::new(
        vars,
        vec![
            Factor::new(Arc::new(f.dual()), vec![0]),
            Factor::new(Arc::new(ps.p.dual()), vec![1, 2, 3]),
            Factor::new(g.clone(), vec![4]),
        ],
    )?;
    End::compute(integrand, vec![(0, 2), (3, 4)])
}

pub fn internal_hom(ps: &PromonoidalStructure, f: &Arc<Module>, g: &Arc<Module>) -> Result<Arc<Module>> {
    let e = internal_hom_end(ps, f, g)?;
    Ok(Arc::new(e.result().as_ref().clone().renamed(format!("[{},{}]", f.name(), g.name()))))
}

/// `p(a,b,Sc)` and `p(b,c,Sa)` as modules in `(a,b,c)`, all slots
/// contravariant.
pub fn cyclic_sides(ps: &PromonoidalStructure, s: &Antipode) -> Result<(Module, Module)> {
    let lhs = s.precompose(&ps.p, 2)?;
    // p(b, c, Sa): slots (x0=b, x1=c, x2=Sa) → reorder to (a, b, c).
    let rhs = s.precompose(&ps.p, 2)?.permute_slots(&[2, 0, 1]);
    Ok((lhs, rhs))
}

/// The cyclic condition `p(a,b,Sc) ≅ p(b,c,Sa)`: a dimension table over all
/// triples, plus naturality and invertibility of a supplied witness.
pub fn check_s_autonomy(ps: &PromonoidalStructure, s: &Antipode) -> Report {
    let a = &ps.base;
    let n = a.len();
    let names = a.objects();
    let mut rows = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                rows.push(DimRow {
                    objects: vec![names[x].clone(), names[y].clone(), names[z].clone()],
                    lhs: ps.p_dim(x, y, s.apply(z)),
                    rhs: ps.p_dim(y, z, s.apply(x)),
                });
            }
        }
    }
    let mut report = Report::new();
    let mut table = CheckRecord::from_table(
        format!("{}/cyclic-dims", a.name()),
        anchors::CYCLIC_CONDITION,
        EvidenceLevel::DimensionOnly,
        rows.clone(),
    );
    // Per-triple failures, so that a corrupted triple is located exactly.
    for r in rows.iter().filter(|r| r.lhs != r.rhs) {
        report.push(CheckRecord::from_table(
            format!("{}/cyclic/{}", a.name(), r.objects.join(",")),
            anchors::CYCLIC_CONDITION,
            EvidenceLevel::DimensionOnly,
            vec![r.clone()],
        ));
    }
    if let Some(w) = &ps.cyclic {
        match cyclic_sides(ps, s).and_then(|(l, r)| NatTransform::new(Arc::new(l), Arc::new(r), w.clone())) {
            Ok(nt) => {
                let nat = nt.check();
                let iso = nt.is_isomorphism();
                report.extend(nat.scoped(&format!("{}/cyclic-witness", a.name())));
                if iso {
                    table.level = EvidenceLevel::IsomorphismVerified;
                } else {
                    report.push(CheckRecord::fail(
                        format!("{}/cyclic-witness/invertible", a.name()),
                        anchors::CYCLIC_CONDITION,
                        EvidenceLevel::IsomorphismVerified,
                        crate::report::Locus { objects: vec![], quantity: "invertible".into(), lhs: 0, rhs: 1 },
                    ));
                }
            }
            Err(e) => report.push(CheckRecord::skipped(
                format!("{}/cyclic-witness", a.name()),
                anchors::CYCLIC_CONDITION,
                format!("witness rejected: {e}"),
            )),
        }
    }
    report.push(table);
    report
}

/// `q(a,b,c) = p(Sa,Sb,Sc)` and `k(c) = j(Sc)` on `A^op`.
pub fn derive_opposite_promonoidal(ps: &PromonoidalStructure, s: &Antipode) -> Result<PromonoidalStructure> {
    let aop = s.op_base().clone();
    let hm = |x: usize, y: usize| s.hom_map(y, x).clone();
    let mut q = (*ps.p).clone();
    for slot in 0..3 {
        q = q.reindex_slot(slot, &aop, s.object_map(), hm)?;
    }
    let q = q.renamed(format!("{}∘S", ps.p.name()));
    let k = match &ps.j {
        Some(j) => Some(j.reindex_slot(0, &aop, s.object_map(), hm)?.renamed(format!("{}∘S", j.name()))),
        None => None,
    };
    PromonoidalStructure::new(&aop, q, k)
}

/// `dim [f,g](c) = dim (f ⊛ g*)*(c)` at every object.
pub fn verify_star_autonomy(ps: &PromonoidalStructure, s: &Antipode, f: &Arc<Module>, g: &Arc<Module>) -> Result<Report> {
    let hom = internal_hom(ps, f, g)?;
    let gs = Arc::new(dual_functor(s, g)?);
    let conv = upper_convolution(ps, f, &gs)?;
    let rhs = dual_functor(s, conv.result())?;
    let a = &ps.base;
    let rows = (0..a.len())
        .map(|c| DimRow { objects: vec![a.objects()[c].clone()], lhs: hom.dim(c), rhs: rhs.dim(c) })
        .collect();
    let mut report = Report::new();
    report.push(
        CheckRecord::from_table(
            format!("{}/star-autonomy/{},{}", a.name(), f.name(), g.name()),
            anchors::STAR_AUTONOMY,
            EvidenceLevel::DimensionOnly,
            rows,
        )
        .with_note("[f,g] against (f ⊛ g*)*"),
    );
    Ok(report)
}

/// `⟨f, g⟩ = ∫^a f(a)* ⊗ g(a)`.
pub fn inner_pairing(f: &Module, g: &Arc<Module>) -> Result<Coend> {
    let a = f.slot(0).cat.clone();
    require_functor_on(f, &a)?;
    require_functor_on(g, &a)?;
    let integrand = Integrand::new(
        vec![Slot::contra(&a), Slot::co(&a)],
        vec![Factor::new(Arc::new(f.dual()), vec![0]), Factor::new(g.clone(), vec![1])],
    )?;
    Coend::compute(integrand, vec![(0, 1)])
}

/// Turns a functor on `A^op` (covariant over the opposite, or contravariant
/// over `A`) into a one-slot contravariant module over `A`.
fn as_contravariant(phi: &Module, a: &Arc<FinVCat>) -> Result<Module> {
    let slot = phi.slot(0);
    if phi.arity() == 1 && slot.variance == Variance::Contravariant && crate::enriched::same_category(&slot.cat, a) {
        return Ok(phi.clone());
    }
    if phi.arity() == 1 && slot.variance == Variance::Covariant && *slot.cat == a.opposite() {
        return Ok(phi.op_slot_with(0, a));
    }
    Err(Error::BaseMismatch(format!("{} is not a functor on the opposite of {}", phi.name(), a.name())))
}

/// `∫^c φ(c) ⊗ p(a,b,c) ≅ φ(a) ⊗ φ(b)` and `∫^c φ(c) ⊗ j(c) ≅ I`, at the
/// level of dimensions.
pub fn check_multiplicative_functor(ps: &PromonoidalStructure, phi: &Module) -> Result<Report> {
    let a = &ps.base;
    let phi = Arc::new(as_contravariant(phi, a)?);
    let names = a.objects();
    let integrand = Integrand::new(
        vec![Slot::contra(a), Slot::contra(a), Slot::contra(a), Slot::co(a)],
        vec![Factor::new(phi.clone(), vec![0]), Factor::new(ps.p.clone(), vec![1, 2, 3])],
    )?;
    let c = Coend::compute(integrand, vec![(0, 3)])?;
    let mut rows = Vec::new();
    for x in 0..a.len() {
        for y in 0..a.len() {
            let idx = c.result().index(&[x, y]);
            rows.push(DimRow {
                objects: vec![names[x].clone(), names[y].clone()],
                lhs: c.dim(idx),
                rhs: phi.dim(x) * phi.dim(y),
            });
        }
    }
    let mut report = Report::new();
    for r in rows.iter().filter(|r| r.lhs != r.rhs) {
        report.push(CheckRecord::from_table(
            format!("{}/multiplicative/{}/{}", a.name(), phi.name(), r.objects.join(",")),
            anchors::MULTIPLICATIVE_FUNCTOR,
            EvidenceLevel::DimensionOnly,
            vec![r.clone()],
        ));
    }
    report.push(CheckRecord::from_table(
        format!("{}/multiplicative/{}/product", a.name(), phi.name()),
        anchors::MULTIPLICATIVE_FUNCTOR,
        EvidenceLevel::DimensionOnly,
        rows,
    ));
    if let Some(j) = &ps.j {
        let integrand = Integrand::new(
            vec![Slot::contra(a), Slot::co(a)],
            vec![Factor::new(phi.clone(), vec![0]), Factor::new(j.clone(), vec![1])],
        )?;
        let u = Coend::compute(integrand, vec![(0, 1)])?;
        report.push(CheckRecord::from_table(
            format!("{}/multiplicative/{}/unit", a.name(), phi.name()),
            anchors::MULTIPLICATIVE_FUNCTOR,
            EvidenceLevel::DimensionOnly,
            vec![DimRow { objects: vec![], lhs: u.dim(0), rhs: 1 }],
        ));
    }
    Ok(report)
}

/// Dimension tables for the unit laws `j ⊛ f ≅ f ≅ f ⊛ j`.
pub fn check_unit_laws(ps: &PromonoidalStructure, f: &Arc<Module>) -> Result<Report> {
    let j = convolution_unit(ps)?;
    let left = convolve(ps, &j, f)?;
    let right = convolve(ps, f, &j)?;
    let names = ps.base.objects();
    let mut report = Report::new();
    for (side, m) in [("left", left), ("right", right)] {
        let rows = (0..ps.base.len())
            .map(|c| DimRow { objects: vec![names[c].clone()], lhs: m.dim(c), rhs: f.dim(c) })
            .collect();
        report.push(CheckRecord::from_table(
            format!("{}/unit-{side}/{}", ps.base.name(), f.name()),
            anchors::UPPER_CONVOLUTION,
            EvidenceLevel::DimensionOnly,
            rows,
        ));
    }
    Ok(report)
}

/// Dimension table for `(f ⊛ g) ⊛ h` against `f ⊛ (g ⊛ h)`.
pub fn check_associativity_dims(
    ps: &PromonoidalStructure,
    f: &Arc<Module>,
    g: &Arc<Module>,
    h: &Arc<Module>,
) -> Result<CheckRecord> {
    let left = convolve(ps, &convolve(ps, f, g)?, h)?;
    let right = convolve(ps, f, &convolve(ps, g, h)?)?;
    let names = ps.base.objects();
    let rows = (0..ps.base.len())
        .map(|c| DimRow { objects: vec![names[c].clone()], lhs: left.dim(c), rhs: right.dim(c) })
        .collect();
    Ok(CheckRecord::from_table(
        format!("{}/associativity/{},{},{}", ps.base.name(), f.name(), g.name(), h.name()),
        anchors::UPPER_CONVOLUTION,
        EvidenceLevel::DimensionOnly,
        rows,
    ))
}


/// Bimodule composition on `X = B^op ⊗ B`:
/// `p((u1,v1),(u2,v2),(u3,v3)) = B(u3,u1) ⊗ B(v1,u2) ⊗ B(v2,v3)` and
/// `j(u,v) = B(u,v)`, so that `F ⊛ G` is `(u,w) ↦ ∫^v F(u,v) ⊗ G(v,w)`.
///
/// Returns the structure together with `B^op`; the base is `B^op ⊗ B`.
pub fn bimodule_composition(b: &Arc<FinVCat>) -> Result<(PromonoidalStructure, Arc<FinVCat>)> {
    let bop = Arc::new(b.opposite());
    let x = Arc::new(bop.tensor(b));
    let h = hom_bimodule(b);
    // exterior slots: [u3 contra, u1 co, v1 contra, u2 co, v2 contra, v3 co]
    let t = h.exterior(&h)?.exterior(&h)?;
    let t = t.permute_slots(&[1, 2, 3, 4, 0, 5]);
    // now [u1 co, v1 contra, u2 co, v2 contra, u3 contra, v3 co]
    let t = t.op_slot_with(0, &bop).op_slot_with(2, &bop).op_slot_with(4, &bop);
    let p = t.merge_slots(4, &x)?.merge_slots(2, &x)?.merge_slots(0, &x)?;
    let p = p.renamed(format!("{}∘", b.name()));
    let j = h.op_slot_with(0, &bop).merge_slots(0, &x)?.renamed(format!("{}(-,-)", b.name()));
    Ok((PromonoidalStructure::new(&x, p, Some(j))?, bop))
}
