use std::collections::BTreeMap;

use num_traits::One;

use super::matrix::{axpy, Matrix, SparseVec};
use super::rational::Rational;
use crate::error::{Error, Result};

/// Incremental row echelon basis of a subspace of `k^n`.
///
/// Rows are keyed by pivot (their smallest index) and carry a leading 1.
/// [`Echelon::finish`] brings the basis to reduced row-echelon form, whose
/// pivot set is independent of insertion order.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    rows: BTreeMap<usize, SparseVec>,
    reduced: bool,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon { n, rows: BTreeMap::new(), reduced: true }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    /// Adds a vector to the spanning set. Returns true if the rank grew.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        debug_assert!(v.iter().all(|e| e.0 < self.n));
        loop {
            let Some((p, lead)) = v.first().cloned() else {
                return false;
            };
            match self.rows.get(&p) {
                Some(row) => v = axpy(&v, &-lead, row),
                None => {
                    let inv = lead.recip();
                    let row: SparseVec = v.into_iter().map(|(j, x)| (j, x * &inv)).collect();
                    self.rows.insert(p, row);
                    self.reduced = false;
                    return true;
                }
            }
        }
    }

    /// Back-substitutes to reduced row-echelon form.
    pub fn finish(&mut self) {
        if self.reduced {
            return;
        }
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for q in pivots {
            let row = self.rows.remove(&q).expect("pivot row");
            let hits: Vec<(usize, Rational)> = row
                .iter()
                .skip(1)
                .filter(|(j, _)| self.rows.contains_key(j))
                .cloned()
                .collect();
            let mut row = row;
            for (j, c) in hits {
                // Rows with larger pivots are already reduced.
                row = axpy(&row, &-c, &self.rows[&j]);
            }
            self.rows.insert(q, row);
        }
        self.reduced = true;
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn pivot_row(&self, p: usize) -> Option<&SparseVec> {
        self.rows.get(&p)
    }

    /// Fully reduces `v` modulo the span; zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        loop {
            let hit = v.iter().find(|(j, _)| self.rows.contains_key(j)).cloned();
            match hit {
                None => return v,
                Some((j, c)) => v = axpy(&v, &-c, &self.rows[&j]),
            }
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// A computed subspace or quotient of `k^ambient_dim` with a chosen splitting.
///
/// For a quotient, `projection` is the quotient map and `section` a right
/// inverse. For a subspace, `section` is the inclusion and `projection` a
/// retraction. In both cases `projection · section = I_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubquotientPresentation {
    pub ambient_dim: usize,
    pub dim: usize,
    pub projection: Matrix,
    pub section: Matrix,
}

impl SubquotientPresentation {
    /// Quotient of `k^n` by the span held in `ech`. Quotient coordinates are the non-pivot columns.
    pub fn quotient_of(mut ech: Echelon) -> Self {
        ech.finish();
        let n = ech.ambient();
        let pivots = ech.pivots();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut qidx = vec![usize::MAX; n];
        let mut dim = 0;
        for i in 0..n {
            if !is_pivot[i] {
                qidx[i] = dim;
                dim += 1;
            }
        }
        let mut proj = Vec::new();
        let mut sect = Vec::new();
        for i in 0..n {
            if !is_pivot[i] {
                proj.push((qidx[i], i, Rational::one()));
                sect.push((i, qidx[i], Rational::one()));
            }
        }
        for &p in &pivots {
            for (j, c) in ech.pivot_row(p).unwrap().iter().skip(1) {
                proj.push((qidx[*j], p, -c.clone()));
            }
        }
        SubquotientPresentation {
            ambient_dim: n,
            dim,
            projection: Matrix::from_triplets(dim, n, proj),
            section: Matrix::from_triplets(n, dim, sect),
        }
    }

    /// Null space of the constraints held in `ech`. Coordinates are the free columns.
    pub fn kernel_of(mut ech: Echelon) -> Self {
        ech.finish();
        let n = ech.ambient();
        let pivots = ech.pivots();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut fidx = vec![usize::MAX; n];
        let mut dim = 0;
        for i in 0..n {
            if !is_pivot[i] {
                fidx[i] = dim;
                dim += 1;
            }
        }
        let mut incl = Vec::new();
        let mut retr = Vec::new();
        for i in 0..n {
            if !is_pivot[i] {
                incl.push((i, fidx[i], Rational::one()));
                retr.push((fidx[i], i, Rational::one()));
            }
        }
        for &p in &pivots {
            for (j, c) in ech.pivot_row(p).unwrap().iter().skip(1) {
                incl.push((p, fidx[*j], -c.clone()));
            }
        }
        SubquotientPresentation {
            ambient_dim: n,
            dim,
            projection: Matrix::from_triplets(dim, n, retr),
            section: Matrix::from_triplets(n, dim, incl),
        }
    }

    /// Checks `projection · section = I`.
    pub fn is_split(&self) -> bool {
        self.projection.mul(&self.section) == Matrix::identity(self.dim)
    }
}

fn row_echelon(a: &Matrix) -> Echelon {
    let mut ech = Echelon::new(a.cols());
    for i in 0..a.rows() {
        ech.insert(a.row(i).clone());
    }
    ech
}

pub fn rank(a: &Matrix) -> usize {
    if a.rows() > a.cols() {
        row_echelon(&a.transpose()).rank()
    } else {
        row_echelon(a).rank()
    }
}

/// Row-reduced echelon form and its pivot columns.
pub fn rref(a: &Matrix) -> (Matrix, Vec<usize>) {
    let mut ech = row_echelon(a);
    ech.finish();
    let pivots = ech.pivots();
    let mut rows: Vec<SparseVec> = pivots.iter().map(|p| ech.pivot_row(*p).unwrap().clone()).collect();
    rows.resize(a.rows(), Vec::new());
    (Matrix::from_sparse_rows(a.cols(), rows), pivots)
}

/// Presentation of `coker(a) = k^{a.rows} / im(a)`.
pub fn cokernel(a: &Matrix) -> SubquotientPresentation {
    let mut ech = Echelon::new(a.rows());
    let t = a.transpose();
    for j in 0..t.rows() {
        if ech.is_full() {
            break;
        }
        ech.insert(t.row(j).clone());
    }
    SubquotientPresentation::quotient_of(ech)
}

/// Presentation of `ker(a) ⊆ k^{a.cols}`, inclusion as section.
pub fn kernel_subspace(a: &Matrix) -> SubquotientPresentation {
    SubquotientPresentation::kernel_of(row_echelon(a))
}

pub fn is_isomorphism(a: &Matrix) -> bool {
    a.rows() == a.cols() && rank(a) == a.rows()
}

/// Some `x` with `a·x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: a has {} rows, b has {}",
            a.rows(),
            b.rows()
        )));
    }
    let aug = Matrix::hstack(&[a, b], a.rows())?;
    let mut ech = row_echelon(&aug);
    ech.finish();
    let n = a.cols();
    let pivots = ech.pivots();
    if pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut entries = Vec::new();
    for p in pivots {
        for (j, c) in ech.pivot_row(p).unwrap() {
            if *j >= n {
                entries.push((p, j - n, c.clone()));
            }
        }
    }
    Ok(Some(Matrix::from_triplets(n, b.cols(), entries)))
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    if !is_isomorphism(a) {
        return None;
    }
    solve(a, &Matrix::identity(a.rows())).ok().flatten()
}

/// Is the matrix injective (full column rank)?
pub fn is_injective(a: &Matrix) -> bool {
    rank(a) == a.cols()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::int;

    #[test]
    fn cokernel_of_zero_and_identity() {
        let c = cokernel(&Matrix::zeros(3, 2));
        assert_eq!(c.dim, 3);
        assert_eq!(c.projection, Matrix::identity(3));
        assert_eq!(cokernel(&Matrix::identity(4)).dim, 0);
        let c = cokernel(&Matrix::from_ints(&[&[1, 0], &[0, 0]]));
        assert_eq!(c.dim, 1);
        assert!(c.projection.mul(&Matrix::from_ints(&[&[1, 0], &[0, 0]])).is_zero());
        assert!(c.is_split());
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        let k = kernel_subspace(&Matrix::zeros(2, 3));
        assert_eq!(k.dim, 3);
        assert_eq!(kernel_subspace(&Matrix::identity(3)).dim, 0);
    }

    #[test]
    fn rref_pivots_independent_of_row_order() {
        let a = Matrix::from_ints(&[&[0, 2, 4, 1], &[1, 1, 1, 1], &[1, 3, 5, 2]]);
        let b = Matrix::from_ints(&[&[1, 3, 5, 2], &[0, 2, 4, 1], &[1, 1, 1, 1]]);
        let (ra, pa) = rref(&a);
        let (rb, pb) = rref(&b);
        assert_eq!(pa, pb);
        assert_eq!(ra, rb);
        assert_eq!(pa, vec![0, 1]);
    }

    #[test]
    fn solve_inconsistent() {
        let a = Matrix::from_ints(&[&[1, 0], &[0, 0]]);
        let b = Matrix::from_ints(&[&[1], &[1]]);
        assert!(solve(&a, &b).unwrap().is_none());
        let x = solve(&a, &Matrix::from_ints(&[&[3], &[0]])).unwrap().unwrap();
        assert_eq!(a.mul(&x), Matrix::from_ints(&[&[3], &[0]]));
    }

    #[test]
    fn iso_predicates() {
        assert!(is_isomorphism(&Matrix::identity(4)));
        assert!(!is_isomorphism(&Matrix::zeros(2, 3)));
        let a = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert_eq!(inv.get(0, 0), int(1));
    }
}
