use std::sync::Arc;

use super::group::FiniteGroup;
use crate::enriched::{FinVCat, Module, Slot};
use crate::error::Result;
use crate::kernel::{example2_kernel, Kernel};
use crate::promonoidal::{Antipode, PromonoidalStructure};

/// A group viewed as a discrete monoidal category.
#[derive(Clone, Debug)]
pub struct DiscreteGroup {
    pub group: FiniteGroup,
    pub cat: Arc<FinVCat>,
    pub ps: PromonoidalStructure,
    /// `Sa = a⁻¹`.
    pub antipode: Antipode,
    /// `K = p` into `A^op ⊗ A`.
    pub kernel: Kernel,
    pub closed: bool,
}

/// Objects are the group elements. Monoidal: `p(a,b,c) = [ab = c]`. Closed:
/// `p(a,x,y) = A(a,[x,y]) = [a = yx⁻¹]`, which is the same table read
/// through the internal hom. `j = δ_e`.
pub fn build_discrete_monoidal_group(group: &FiniteGroup, closed: bool) -> Result<DiscreteGroup> {
    let n = group.order();
    let cat = Arc::new(group.discrete());
    let slots = vec![Slot::contra(&cat), Slot::contra(&cat), Slot::co(&cat)];
    let dims = (0..n * n * n)
        .map(|i| {
            let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
            let hit = if closed { a == group.mul(c, group.inv(b)) } else { group.mul(a, b) == c };
            usize::from(hit)
        })
        .collect();
    let name = if closed { "[a=yx⁻¹]" } else { "[ab=c]" };
    let p = Module::discrete(name, slots, dims)?;
    let e = group.identity();
    let j = Module::discrete("δe", vec![Slot::co(&cat)], (0..n).map(|a| usize::from(a == e)).collect())?;
    let ps = PromonoidalStructure::new(&cat, p, Some(j))?;
    let antipode = Antipode::discrete_involution(&cat, (0..n).map(|a| group.inv(a)).collect())?;
    let kernel = example2_kernel(&ps)?;
    Ok(DiscreteGroup { group: group.clone(), cat, ps, antipode, kernel, closed })
}

/// Pointwise tensor on a discrete category: `p(a,b,c) = [a = b = c]`, `j ≡ I`.
pub fn build_discrete_pointwise(objects: Vec<String>) -> Result<(Arc<FinVCat>, PromonoidalStructure)> {
    let n = objects.len();
    let cat = Arc::new(FinVCat::discrete("pts", objects));
    let slots = vec![Slot::contra(&cat), Slot::contra(&cat), Slot::co(&cat)];
    let dims = (0..n * n * n)
        .map(|i| {
            let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
            usize::from(a == b && b == c)
        })
        .collect();
    let p = Module::discrete("[a=b=c]", slots, dims)?;
    let j = Module::discrete("I", vec![Slot::co(&cat)], vec![1; n])?;
    let ps = PromonoidalStructure::new(&cat, p, Some(j))?;
    Ok((cat, ps))
}
