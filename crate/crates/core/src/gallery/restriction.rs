use std::sync::Arc;

use crate::enriched::{hom_bimodule, same_category, FinVCat};
use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::linalg::Matrix;
use crate::promonoidal::PromonoidalStructure;

/// A `V`-functor between finite categories. `hom_maps[a·n + b]` sends
/// `hom(a,b)` to `hom(Fa,Fb)`.
#[derive(Clone, Debug)]
pub struct FinFunctor {
    pub source: Arc<FinVCat>,
    pub target: Arc<FinVCat>,
    pub object_map: Vec<usize>,
    pub hom_maps: Vec<Matrix>,
}

impl FinFunctor {
    /// Checks shapes, identities and composition.
    pub fn new(
        source: &Arc<FinVCat>,
        target: &Arc<FinVCat>,
        object_map: Vec<usize>,
        hom_maps: Vec<Matrix>,
    ) -> Result<FinFunctor> {
        let n = source.len();
        if object_map.len() != n || object_map.iter().any(|&o| o >= target.len()) {
            return Err(Error::NotAFunctor("object map does not fit the categories".into()));
        }
        if hom_maps.len() != n * n {
            return Err(Error::NotAFunctor("one hom map per pair is required".into()));
        }
        let f = &object_map;
        let name = |a: usize| source.objects()[a].clone();
        for a in 0..n {
            for b in 0..n {
                if hom_maps[a * n + b].shape() != (target.hom_dim(f[a], f[b]), source.hom_dim(a, b)) {
                    return Err(Error::NotAFunctor(format!("hom map at ({},{}) has the wrong shape", name(a), name(b))));
                }
            }
        }
        for a in 0..n {
            if hom_maps[a * n + a].mul(source.ident(a)) != *target.ident(f[a]) {
                return Err(Error::NotAFunctor(format!("identity of {} is not preserved", name(a))));
            }
            for b in 0..n {
                for c in 0..n {
                    let lhs = hom_maps[a * n + c].mul(source.comp(a, b, c));
                    let rhs = target
                        .comp(f[a], f[b], f[c])
                        .mul(&hom_maps[b * n + c].kron(&hom_maps[a * n + b]));
                    if lhs != rhs {
                        return Err(Error::NotAFunctor(format!(
                            "composition through ({},{},{}) is not preserved",
                            name(a),
                            name(b),
                            name(c)
                        )));
                    }
                }
            }
        }
        Ok(FinFunctor { source: source.clone(), target: target.clone(), object_map, hom_maps })
    }

    pub fn identity(cat: &Arc<FinVCat>) -> FinFunctor {
        let n = cat.len();
        let hom_maps = (0..n * n).map(|i| Matrix::identity(cat.hom_dim(i / n, i % n))).collect();
        FinFunctor { source: cat.clone(), target: cat.clone(), object_map: (0..n).collect(), hom_maps }
    }

    /// Between discrete categories any object map is a functor.
    pub fn discrete(source: &Arc<FinVCat>, target: &Arc<FinVCat>, object_map: Vec<usize>) -> Result<FinFunctor> {
        if !source.is_discrete() || !target.is_discrete() {
            return Err(Error::NotAFunctor("both categories must be discrete".into()));
        }
        let n = source.len();
        let hom_maps = (0..n * n)
            .map(|i| {
                let (a, b) = (i / n, i % n);
                if a == b {
                    Matrix::identity(1)
                } else {
                    Matrix::zeros(target.hom_dim(object_map[a], object_map[b]), 0)
                }
            })
            .collect();
        FinFunctor::new(source, target, object_map, hom_maps)
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        (0..self.target.len()).all(|x| self.object_map.contains(&x))
    }

    pub fn hom_map(&self, a: usize, b: usize) -> &Matrix {
        &self.hom_maps[a * self.source.len() + b]
    }
}

#[derive(Clone, Debug)]
pub struct RestrictionKernel {
    pub kernel: Kernel,
    pub surjective_on_objects: bool,
}

/// `K(a,x) = A(a,ψx)` for `ψ: X → A`.
pub fn build_restriction_kernel(
    source: &PromonoidalStructure,
    target: &PromonoidalStructure,
    psi: &FinFunctor,
) -> Result<RestrictionKernel> {
    if !same_category(&psi.source, target.base()) || !same_category(&psi.target, source.base()) {
        return Err(Error::NotAFunctor("ψ must go from the target category to the source category".into()));
    }
    let data = hom_bimodule(source.base())
        .reindex_slot(1, target.base(), &psi.object_map, |x, y| psi.hom_map(x, y).clone())?
        .renamed("A(a,ψx)");
    let kernel = Kernel::new(format!("restrict({})", source.base().name()), source.clone(), target.clone(), data)?;
    Ok(RestrictionKernel { kernel, surjective_on_objects: psi.is_surjective_on_objects() })
}

/// `K(a,x) = X(φa,x)` for `φ: A → X`.
pub fn build_representable_kernel(
    source: &PromonoidalStructure,
    target: &PromonoidalStructure,
    phi: &FinFunctor,
) -> Result<Kernel> {
    if !same_category(&phi.source, source.base()) || !same_category(&phi.target, target.base()) {
        return Err(Error::NotAFunctor("φ must go from the source category to the target category".into()));
    }
    let data = hom_bimodule(target.base())
        .reindex_slot(0, source.base(), &phi.object_map, |a, b| phi.hom_map(a, b).clone())?
        .renamed("X(φa,x)");
    Kernel::new(format!("along({})", target.base().name()), source.clone(), target.clone(), data)
}
