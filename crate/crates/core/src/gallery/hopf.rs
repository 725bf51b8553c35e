use std::sync::Arc;

use super::group::FiniteGroup;
use crate::enriched::{equation_record, hom_bimodule, FinVCat, Module};
use crate::error::Result;
use crate::kernel::Kernel;
use crate::linalg::{one, Matrix};
use crate::promonoidal::{Antipode, PromonoidalStructure};
use crate::report::{anchors, Report};

/// The group algebra `k[G]` as a Hopf algebra, on the basis of group
/// elements. Tensor basis `x⊗y` sits at `x·n + y`.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub group: FiniteGroup,
    /// `H⊗H → H`.
    pub mu: Matrix,
    /// `H → H⊗H`, `g ↦ g⊗g`.
    pub delta: Matrix,
    /// `g ↦ g⁻¹`.
    pub antipode: Matrix,
    /// `k → H`.
    pub unit: Matrix,
    /// `H → k`.
    pub counit: Matrix,
}

impl HopfData {
    pub fn from_group(group: &FiniteGroup) -> HopfData {
        let n = group.order();
        let mu = Matrix::from_triplets(
            n,
            n * n,
            (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).map(|(x, y)| (group.mul(x, y), x * n + y, one())),
        );
        let delta = Matrix::from_triplets(n * n, n, (0..n).map(|g| (g * n + g, g, one())));
        let antipode = Matrix::permutation(&(0..n).map(|g| group.inv(g)).collect::<Vec<_>>());
        let unit = Matrix::from_triplets(n, 1, [(group.identity(), 0, one())]);
        let counit = Matrix::from_triplets(1, n, (0..n).map(|g| (0, g, one())));
        HopfData { group: group.clone(), mu, delta, antipode, unit, counit }
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    /// Hopf axioms as exact matrix equations.
    pub fn check(&self) -> Report {
        let n = self.dim();
        let id = Matrix::identity(n);
        let name = format!("hopf({})", self.group.name());
        let eqs: Vec<(&str, Matrix, Matrix)> = vec![
            ("associativity", self.mu.mul(&self.mu.kron(&id)), self.mu.mul(&id.kron(&self.mu))),
            ("coassociativity", self.delta.kron(&id).mul(&self.delta), id.kron(&self.delta).mul(&self.delta)),
            ("left-unit", self.mu.mul(&self.unit.kron(&id)), id.clone()),
            ("right-unit", self.mu.mul(&id.kron(&self.unit)), id.clone()),
            ("left-counit", self.counit.kron(&id).mul(&self.delta), id.clone()),
            ("right-counit", id.kron(&self.counit).mul(&self.delta), id.clone()),
            (
                "bialgebra",
                self.delta.mul(&self.mu),
                self.mu
                    .kron(&self.mu)
                    .mul(&id.kron(&Matrix::swap(n, n)).kron(&id))
                    .mul(&self.delta.kron(&self.delta)),
            ),
            (
                "antipode-left",
                self.mu.mul(&self.antipode.kron(&id)).mul(&self.delta),
                self.unit.mul(&self.counit),
            ),
            (
                "antipode-right",
                self.mu.mul(&id.kron(&self.antipode)).mul(&self.delta),
                self.unit.mul(&self.counit),
            ),
        ];
        let mut report = Report::new();
        for (what, lhs, rhs) in eqs {
            report.push(equation_record(format!("{name}/{what}"), anchors::HOPF_FOURIER, &lhs, &rhs, vec![]));
        }
        report
    }
}

/// `Φ = (μ⊗1)(1⊗S⊗1)(1⊗δ)` and `Φ' = (μ⊗1)(1⊗δ)` on `H⊗H`.
#[derive(Clone, Debug)]
pub struct FourierIso {
    pub phi: Matrix,
    pub phi_inverse: Matrix,
}

pub fn hopf_fourier_iso(h: &HopfData) -> (FourierIso, Report) {
    let n = h.dim();
    let id = Matrix::identity(n);
    let split = id.kron(&h.delta);
    let mu1 = h.mu.kron(&id);
    let phi = mu1.mul(&id.kron(&h.antipode).kron(&id)).mul(&split);
    let phi_inverse = mu1.mul(&split);
    let name = format!("fourier({})", h.group.name());
    let mut report = Report::new();
    let nn = Matrix::identity(n * n);
    report.push(equation_record(format!("{name}/phi-after-inverse"), anchors::HOPF_FOURIER, &phi.mul(&phi_inverse), &nn, vec![]));
    report.push(equation_record(format!("{name}/inverse-after-phi"), anchors::HOPF_FOURIER, &phi_inverse.mul(&phi), &nn, vec![]));
    (FourierIso { phi, phi_inverse }, report)
}

/// Everything built from a group algebra.
#[derive(Clone, Debug)]
pub struct GroupHopf {
    pub cat: Arc<FinVCat>,
    /// `p(a,b,c) = A(a,Sb) ⊗ A(b,c)`, `j = I`.
    pub ps: PromonoidalStructure,
    /// Pointwise tensor: `p(y,z,x) = A(y,x) ⊗ A(z,x)`, `j = I`.
    pub pointwise: PromonoidalStructure,
    pub antipode: Antipode,
    /// `K = A(−,−)` from `ps` to `pointwise`.
    pub kernel: Kernel,
    pub hopf: HopfData,
}

/// The trivial representation `g ↦ 1`.
fn trivial_rep(cat: &Arc<FinVCat>, n: usize) -> Result<Module> {
    Module::functor("I", cat, vec![1], |_, _| Some(Matrix::from_triplets(1, n, (0..n).map(|g| (0, g, one())))))
}

pub fn build_group_hopf(group: &FiniteGroup) -> Result<GroupHopf> {
    let n = group.order();
    let cat = Arc::new(group.algebra());
    let inversion = Matrix::permutation(&(0..n).map(|g| group.inv(g)).collect::<Vec<_>>());
    let antipode = Antipode::new(
        &cat,
        vec![0],
        vec![inversion.clone()],
        Some(vec![inversion]),
        Some(vec![vec![(group.identity(), one())]]),
    )?;
    let hom = hom_bimodule(&cat);
    let twisted = antipode.precompose(&hom, 1)?;
    let p = twisted.exterior(&hom)?.diagonal(1, 2)?.renamed("A(a,Sb)⊗A(b,c)");
    let ps = PromonoidalStructure::new(&cat, p, Some(trivial_rep(&cat, n)?))?;
    let q = hom.exterior(&hom)?.permute_slots(&[0, 2, 1, 3]).diagonal(2, 3)?.renamed("A(y,x)⊗A(z,x)");
    let pointwise = PromonoidalStructure::new(&cat, q, Some(trivial_rep(&cat, n)?))?;
    let kernel = Kernel::new(format!("hom({})", cat.name()), ps.clone(), pointwise.clone(), hom)?;
    Ok(GroupHopf { cat, ps, pointwise, antipode, kernel, hopf: HopfData::from_group(group) })
}
