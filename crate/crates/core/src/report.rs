//! Check reports shared by every verifier in the crate.

use serde::{Deserialize, Serialize};

/// Stable topic anchors attached to report records.
pub mod anchors {
    pub const CATEGORY_AXIOMS: &str = "enriched-category-axioms";
    pub const FUNCTOR_AXIOMS: &str = "enriched-functor-axioms";
    pub const NATURALITY: &str = "enriched-naturality";
    pub const COEND: &str = "coend-engine";
    pub const YONEDA: &str = "yoneda-reduction";
    pub const UPPER_CONVOLUTION: &str = "upper-convolution";
    pub const LOWER_CONVOLUTION: &str = "lower-convolution";
    pub const ANTIPODE: &str = "antipode";
    pub const CYCLIC_CONDITION: &str = "s-autonomy-cyclic-condition";
    pub const STAR_AUTONOMY: &str = "star-autonomy-theorem";
    pub const MULTIPLICATIVE_FUNCTOR: &str = "multiplicative-functor";
    pub const MULTIPLICATIVE_KERNEL: &str = "multiplicative-kernel";
    pub const TRANSFORM_THEOREM: &str = "transform-preserves-convolution";
    pub const DUAL_TRANSFORM: &str = "dual-transform";
    pub const KAN_ADJUNCTION: &str = "kan-adjunction";
    pub const CLASSIFICATION: &str = "analytic-transform-classification";
    pub const CONSERVATIVITY: &str = "conservativity-sufficient-conditions";
    pub const JOYAL_WIENER: &str = "joyal-wiener-hom";
    pub const PARSEVAL: &str = "parseval-relation";
    pub const GAMMA: &str = "gamma-left-inverse";
    pub const GAMMA_FAITHFUL: &str = "gamma-faithfulness";
    pub const DUAL_HOM_LEMMA: &str = "dual-hom-lemma";
    pub const HOPF_FOURIER: &str = "hopf-fourier-isomorphism";
    pub const ASSOCIATION_SCHEME: &str = "association-scheme-kernel";
    pub const RESTRICTION_KERNEL: &str = "restriction-kernel";
    pub const BOOLEAN_KERNEL: &str = "boolean-kernels";
    pub const SPECIES: &str = "species-convolution";

    pub const ALL: &[&str] = &[
        CATEGORY_AXIOMS,
        FUNCTOR_AXIOMS,
        NATURALITY,
        COEND,
        YONEDA,
        UPPER_CONVOLUTION,
        LOWER_CONVOLUTION,
        ANTIPODE,
        CYCLIC_CONDITION,
        STAR_AUTONOMY,
        MULTIPLICATIVE_FUNCTOR,
        MULTIPLICATIVE_KERNEL,
        TRANSFORM_THEOREM,
        DUAL_TRANSFORM,
        KAN_ADJUNCTION,
        CLASSIFICATION,
        CONSERVATIVITY,
        JOYAL_WIENER,
        PARSEVAL,
        GAMMA,
        GAMMA_FAITHFUL,
        DUAL_HOM_LEMMA,
        HOPF_FOURIER,
        ASSOCIATION_SCHEME,
        RESTRICTION_KERNEL,
        BOOLEAN_KERNEL,
        SPECIES,
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// How strong the evidence behind a record is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceLevel {
    /// An exact matrix equation was checked.
    ExactEquation,
    /// An explicit map was constructed and shown invertible.
    IsomorphismVerified,
    /// Only dimensions were compared.
    DimensionOnly,
    /// Finite enumeration over a discrete carrier.
    Enumeration,
}

/// One row of a dimension table: an object tuple and the two compared numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub objects: Vec<String>,
    pub lhs: usize,
    pub rhs: usize,
}

/// Where a failing check broke.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Locus {
    pub objects: Vec<String>,
    /// What `lhs` and `rhs` measure, e.g. `"dim"` or `"rank(lhs-rhs)"`.
    pub quantity: String,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub level: EvidenceLevel,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<DimRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locus: Option<Locus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, anchor: &str, status: Status, level: EvidenceLevel) -> Self {
        CheckRecord {
            id: id.into(),
            anchor: anchor.to_string(),
            status,
            level,
            table: Vec::new(),
            locus: None,
            note: None,
            elapsed_ms: None,
        }
    }

    pub fn pass(id: impl Into<String>, anchor: &str, level: EvidenceLevel) -> Self {
        Self::new(id, anchor, Status::Pass, level)
    }

    pub fn fail(id: impl Into<String>, anchor: &str, level: EvidenceLevel, locus: Locus) -> Self {
        let mut r = Self::new(id, anchor, Status::Fail, level);
        r.locus = Some(locus);
        r
    }

    pub fn skipped(id: impl Into<String>, anchor: &str, note: impl Into<String>) -> Self {
        let mut r = Self::new(id, anchor, Status::Skipped, EvidenceLevel::DimensionOnly);
        r.note = Some(note.into());
        r
    }

    /// Compares dimension rows; fails at the first mismatching row.
    pub fn from_table(id: impl Into<String>, anchor: &str, level: EvidenceLevel, table: Vec<DimRow>) -> Self {
        let bad = table.iter().find(|r| r.lhs != r.rhs).cloned();
        let mut r = match bad {
            None => Self::pass(id, anchor, level),
            Some(row) => Self::fail(
                id,
                anchor,
                level,
                Locus { objects: row.objects, quantity: "dim".into(), lhs: row.lhs, rhs: row.rhs },
            ),
        };
        r.table = table;
        r
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report {
    pub records: Vec<CheckRecord>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    /// Prefixes every record id.
    pub fn scoped(mut self, prefix: &str) -> Report {
        for r in &mut self.records {
            r.id = format!("{prefix}/{}", r.id);
        }
        self
    }

    /// Sorts records by id; the order is then independent of evaluation order.
    pub fn finalize(mut self) -> Report {
        self.records.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_failure_carries_locus() {
        let rows = vec![
            DimRow { objects: vec!["a".into()], lhs: 1, rhs: 1 },
            DimRow { objects: vec!["b".into()], lhs: 2, rhs: 1 },
        ];
        let r = CheckRecord::from_table("t", anchors::COEND, EvidenceLevel::DimensionOnly, rows);
        assert_eq!(r.status, Status::Fail);
        let locus = r.locus.unwrap();
        assert_eq!((locus.lhs, locus.rhs), (2, 1));
        assert_eq!(locus.objects, vec!["b".to_string()]);
    }

    #[test]
    fn finalize_orders_by_id() {
        let mut rep = Report::new();
        rep.push(CheckRecord::pass("b", anchors::COEND, EvidenceLevel::ExactEquation));
        rep.push(CheckRecord::pass("a", anchors::COEND, EvidenceLevel::ExactEquation));
        let rep = rep.finalize();
        assert_eq!(rep.records[0].id, "a");
        assert!(rep.all_passed());
    }
}
