//! Finite `Vect`-enriched categories, modules over them, and the coend/end
//! engine.

mod category;
mod integrand;
mod module;
mod nat;

pub use category::{check_category_axioms, same_category, FinVCat, Generator};
pub use integrand::{
    coend, end, induced_map_on_coend, Coend, End, Factor, Integrand,
};
pub use module::{
    check_bimodule, check_functor, hom_bimodule, representable, representable_contravariant, Module, Slot,
    Variance,
};
pub use nat::{check_natural, NatTransform};
pub(crate) use module::unit;

use crate::linalg::{rank, Matrix};
use crate::report::{CheckRecord, EvidenceLevel, Locus};

/// A record for the matrix equation `lhs = rhs`. On failure the locus carries
/// `rank(lhs - rhs)`.
pub(crate) fn equation_record(
    id: String,
    anchor: &str,
    lhs: &Matrix,
    rhs: &Matrix,
    objects: Vec<String>,
) -> CheckRecord {
    if lhs.shape() != rhs.shape() {
        return CheckRecord::fail(
            id,
            anchor,
            EvidenceLevel::ExactEquation,
            Locus { objects, quantity: "rows".into(), lhs: lhs.rows(), rhs: rhs.rows() },
        )
        .with_note(format!("shape {:?} vs {:?}", lhs.shape(), rhs.shape()));
    }
    if lhs == rhs {
        return CheckRecord::pass(id, anchor, EvidenceLevel::ExactEquation);
    }
    let diff = lhs.sub(rhs).expect("same shape");
    CheckRecord::fail(
        id,
        anchor,
        EvidenceLevel::ExactEquation,
        Locus { objects, quantity: "rank(lhs-rhs)".into(), lhs: rank(&diff), rhs: 0 },
    )
}
