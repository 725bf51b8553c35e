use std::sync::Arc;

use super::equation_record;
use super::module::Module;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{anchors, CheckRecord, EvidenceLevel, Report};

/// A family of linear maps `source(t) → target(t)`, one per object tuple.
#[derive(Clone, Debug)]
pub struct NatTransform {
    pub source: Arc<Module>,
    pub target: Arc<Module>,
    pub components: Vec<Matrix>,
}

impl NatTransform {
    pub fn new(source: Arc<Module>, target: Arc<Module>, components: Vec<Matrix>) -> Result<Self> {
        source.require_same_slots(&target)?;
        if components.len() != source.len() {
            return Err(Error::ShapeMismatch("one component per object tuple is required".into()));
        }
        for (i, c) in components.iter().enumerate() {
            if c.shape() != (target.dim(i), source.dim(i)) {
                return Err(Error::ShapeMismatch(format!(
                    "component at {} is {}x{}, expected {}x{}",
                    source.tuple_label(i),
                    c.rows(),
                    c.cols(),
                    target.dim(i),
                    source.dim(i)
                )));
            }
        }
        Ok(NatTransform { source, target, components })
    }

    pub fn identity(m: &Arc<Module>) -> Self {
        let components = m.dims().iter().map(|&d| Matrix::identity(d)).collect();
        NatTransform { source: m.clone(), target: m.clone(), components }
    }

    pub fn zero(source: &Arc<Module>, target: &Arc<Module>) -> Result<Self> {
        let components = (0..source.len()).map(|i| Matrix::zeros(target.dim(i), source.dim(i))).collect();
        NatTransform::new(source.clone(), target.clone(), components)
    }

    /// `self` after `first`.
    pub fn after(&self, first: &NatTransform) -> Result<Self> {
        let components = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(a, b)| a.compose(b))
            .collect::<Result<Vec<_>>>()?;
        NatTransform::new(first.source.clone(), self.target.clone(), components)
    }

    pub fn component(&self, idx: usize) -> &Matrix {
        &self.components[idx]
    }

    /// Every component invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.components.iter().all(crate::linalg::is_isomorphism)
    }

    /// Every component injective.
    pub fn is_monomorphism(&self) -> bool {
        self.components.iter().all(crate::linalg::is_injective)
    }

    /// Naturality squares along every generator of every slot.
    pub fn check(&self) -> Report {
        let (src, tgt) = (&self.source, &self.target);
        let mut report = Report::new();
        let mut failures = 0;
        for s in 0..src.arity() {
            let cat = src.slot(s).cat.clone();
            for g in cat.generators() {
                let start = src.generator_start(s, g);
                for idx in 0..src.len() {
                    if src.slot_obj(idx, s) != start {
                        continue;
                    }
                    let (ms, dst) = src.apply_generator(s, idx, g);
                    let (mt, _) = tgt.apply_generator(s, idx, g);
                    let lhs = mt.mul(&self.components[idx]);
                    let rhs = self.components[dst].mul(&ms);
                    if lhs != rhs {
                        failures += 1;
                        report.push(equation_record(
                            format!("{}=>{}/naturality/slot{s}/{}", src.name(), tgt.name(), src.tuple_label(idx)),
                            anchors::NATURALITY,
                            &lhs,
                            &rhs,
                            src.tuple_names(idx),
                        ));
                    }
                }
            }
        }
        if failures == 0 {
            report.push(CheckRecord::pass(
                format!("{}=>{}/naturality", src.name(), tgt.name()),
                anchors::NATURALITY,
                EvidenceLevel::ExactEquation,
            ));
        }
        report
    }
}

pub fn check_natural(n: &NatTransform) -> Report {
    n.check()
}
