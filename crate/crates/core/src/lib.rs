//! Exact verification engine for finite `Vect`-enriched promonoidal
//! categories: Day convolution, Kan-extension transforms, multiplicative
//! kernels, and constructors for the classical worked examples.

pub mod enriched;
pub mod error;
pub mod gallery;
pub mod kernel;
pub mod linalg;
pub mod promonoidal;
pub mod random;
pub mod report;

pub use enriched::{Coend, End, FinVCat, Module, NatTransform, Slot, Variance};
pub use error::{Error, Result};
pub use kernel::Kernel;
pub use linalg::{Matrix, Rational, SubquotientPresentation};
pub use promonoidal::{Antipode, PromonoidalStructure};
pub use report::{CheckRecord, EvidenceLevel, Report, Status};
