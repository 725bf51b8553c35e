use std::fmt;

use num_traits::{One, Zero};

use super::rational::{format_rational, int, Rational};
use crate::error::{Error, Result};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Exact matrix over the rationals.
///
/// Storage is row-wise sparse, but the type behaves as a dense `rows × cols`
/// array: equality, indexing and every operation are defined entrywise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

/// `out += c * v` on sparse vectors.
pub(crate) fn axpy(out: &SparseVec, c: &Rational, v: &SparseVec) -> SparseVec {
    let mut res = Vec::with_capacity(out.len() + v.len());
    let (mut i, mut j) = (0, 0);
    while i < out.len() || j < v.len() {
        let take_left = j >= v.len() || (i < out.len() && out[i].0 < v[j].0);
        let take_right = i >= out.len() || (j < v.len() && v[j].0 < out[i].0);
        if take_left {
            res.push(out[i].clone());
            i += 1;
        } else if take_right {
            let x = c * &v[j].1;
            if !x.is_zero() {
                res.push((v[j].0, x));
            }
            j += 1;
        } else {
            let x = &out[i].1 + c * &v[j].1;
            if !x.is_zero() {
                res.push((out[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    res
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i, Rational::one())]).collect() }
    }

    /// Builds from triplets; duplicate positions are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut data: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (i, j, v) in entries {
            assert!(i < rows && j < cols, "triplet ({i},{j}) outside {rows}x{cols}");
            data[i].push((j, v));
        }
        let data = data
            .into_iter()
            .map(|mut row| {
                row.sort_by_key(|e| e.0);
                let mut out: SparseVec = Vec::with_capacity(row.len());
                for (j, v) in row {
                    match out.last_mut() {
                        Some(last) if last.0 == j => last.1 += v,
                        _ => out.push((j, v)),
                    }
                }
                out.retain(|e| !e.1.is_zero());
                out
            })
            .collect();
        Matrix { rows, cols, data }
    }

    /// Builds from already-normalized sparse rows.
    pub fn from_sparse_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        debug_assert!(data.iter().all(|r| r.windows(2).all(|w| w[0].0 < w[1].0)
            && r.iter().all(|e| e.0 < cols && !e.1.is_zero())));
        Matrix { rows: data.len(), cols, data }
    }

    pub fn from_dense(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let data = entries
            .chunks(cols.max(1))
            .take(rows)
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect::<Vec<SparseVec>>();
        let data = if cols == 0 { vec![Vec::new(); rows] } else { data };
        Ok(Matrix { rows, cols, data })
    }

    /// Convenience constructor from integer rows.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| {
                assert_eq!(r.len(), cols, "ragged integer rows");
                r.iter().enumerate().map(move |(j, &v)| (i, j, int(v)))
            })
            .collect::<Vec<_>>();
        Matrix::from_triplets(rows.len(), cols, entries)
    }

    /// Column vector from a sparse vector.
    pub fn column_vector(len: usize, v: &SparseVec) -> Self {
        Matrix::from_triplets(len, 1, v.iter().map(|(i, x)| (*i, 0, x.clone())))
    }

    /// Permutation matrix sending basis vector `j` to basis vector `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        Matrix::from_triplets(n, n, perm.iter().enumerate().map(|(j, &i)| (i, j, Rational::one())))
    }

    /// Commutation matrix `x ⊗ y ↦ y ⊗ x` for `x ∈ k^m`, `y ∈ k^n`.
    pub fn swap(m: usize, n: usize) -> Self {
        let mut perm = vec![0; m * n];
        for x in 0..m {
            for y in 0..n {
                perm[x * n + y] = y * m + x;
            }
        }
        Matrix::permutation(&perm)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    /// Iterates over stored nonzero entries `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    /// Column `j` as a sparse vector.
    pub fn column(&self, j: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.binary_search_by_key(&j, |e| e.0).ok().map(|k| (i, r[k].1.clone())))
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, v) in r {
                data[*j].push((i, v.clone()));
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    /// Exact product `self · other`.
    pub fn compose(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut acc: Vec<Rational> = vec![Rational::zero(); other.cols];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; other.cols];
        let data = self
            .data
            .iter()
            .map(|row| {
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        if !mark[*j] {
                            mark[*j] = true;
                            touched.push(*j);
                        }
                        acc[*j] += a * b;
                    }
                }
                touched.sort_unstable();
                let mut out = Vec::with_capacity(touched.len());
                for &j in &touched {
                    mark[j] = false;
                    let v = std::mem::replace(&mut acc[j], Rational::zero());
                    if !v.is_zero() {
                        out.push((j, v));
                    }
                }
                touched.clear();
                out
            })
            .collect();
        Ok(Matrix { rows: self.rows, cols: other.cols, data })
    }

    /// `self · other`, panicking on a shape error. For internal use where shapes are structural.
    pub(crate) fn mul(&self, other: &Matrix) -> Matrix {
        self.compose(other).expect("structural shape")
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.combine(other, &Rational::one())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.combine(other, &-Rational::one())
    }

    fn combine(&self, other: &Matrix, c: &Rational) -> Result<Matrix> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| axpy(a, c, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        if c.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect())
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// Kronecker product: `(a⊗b)[i·b.rows+k, j·b.cols+l] = a[i,j]·b[k,l]`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows);
        for ra in &self.data {
            for rb in &other.data {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (j, x) in ra {
                    for (l, y) in rb {
                        row.push((j * other.cols + l, x * y));
                    }
                }
                data.push(row);
            }
        }
        Matrix { rows, cols, data }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut data = self.data.clone();
        data.extend(
            other
                .data
                .iter()
                .map(|r| r.iter().map(|(j, v)| (j + self.cols, v.clone())).collect()),
        );
        Matrix { rows: self.rows + other.rows, cols: self.cols + other.cols, data }
    }

    /// Block-diagonal sum of many blocks.
    pub fn block_diagonal(blocks: &[Matrix]) -> Matrix {
        let mut out = Matrix::zeros(0, 0);
        for b in blocks {
            out = out.direct_sum(b);
        }
        out
    }

    /// Dual map in dual bases: the transpose.
    pub fn dual(&self) -> Matrix {
        self.transpose()
    }

    pub fn hstack(blocks: &[&Matrix], rows: usize) -> Result<Matrix> {
        let mut data: Vec<SparseVec> = vec![Vec::new(); rows];
        let mut offset = 0;
        for b in blocks {
            if b.rows != rows {
                return Err(Error::DimensionMismatch(format!(
                    "hstack block has {} rows, expected {rows}",
                    b.rows
                )));
            }
            for (i, r) in b.data.iter().enumerate() {
                data[i].extend(r.iter().map(|(j, v)| (j + offset, v.clone())));
            }
            offset += b.cols;
        }
        Ok(Matrix { rows, cols: offset, data })
    }

    pub fn vstack(blocks: &[&Matrix], cols: usize) -> Result<Matrix> {
        let mut data = Vec::new();
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch(format!(
                    "vstack block has {} cols, expected {cols}",
                    b.cols
                )));
            }
            data.extend(b.data.iter().cloned());
        }
        Ok(Matrix { rows: data.len(), cols, data })
    }

    /// Columns `start .. start + len`.
    pub fn column_block(&self, start: usize, len: usize) -> Matrix {
        assert!(start + len <= self.cols, "column block out of range");
        let data = self
            .data
            .iter()
            .map(|r| {
                r.iter()
                    .filter(|(j, _)| *j >= start && *j < start + len)
                    .map(|(j, v)| (j - start, v.clone()))
                    .collect()
            })
            .collect();
        Matrix { rows: self.rows, cols: len, data }
    }

    /// Rows `start .. start + len`.
    pub fn row_block(&self, start: usize, len: usize) -> Matrix {
        assert!(start + len <= self.rows, "row block out of range");
        Matrix { rows: len, cols: self.cols, data: self.data[start..start + len].to_vec() }
    }

    /// Re-reads a column vector of length `rows·cols` (index `i·cols + j`) as a matrix.
    pub fn unvec(v: &SparseVec, rows: usize, cols: usize) -> Matrix {
        Matrix::from_triplets(rows, cols, v.iter().map(|(k, x)| (k / cols, k % cols, x.clone())))
    }

    /// Row-major vectorization, as a sparse vector of length `rows·cols`.
    pub fn vec(&self) -> SparseVec {
        self.entries().map(|(i, j, v)| (i * self.cols + j, v.clone())).collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        if self.rows * self.cols <= 64 {
            let rows: Vec<Vec<String>> = self
                .to_dense()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect();
            write!(f, "{rows:?}")
        } else {
            write!(f, "({} nonzeros)", self.nnz())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::ratio;

    #[test]
    fn hand_product() {
        let a = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.compose(&b).unwrap(), Matrix::from_ints(&[&[2, 1], &[4, 3]]));
        assert_eq!(Matrix::identity(3).compose(&Matrix::identity(3)).unwrap(), Matrix::identity(3));
        assert!(a.compose(&Matrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn kron_convention() {
        assert_eq!(Matrix::identity(2).kron(&Matrix::identity(3)), Matrix::identity(6));
        assert_eq!(Matrix::from_ints(&[&[2]]).kron(&Matrix::from_ints(&[&[3]])), Matrix::from_ints(&[&[6]]));
        let a = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_ints(&[&[0, 5], &[6, 7]]);
        let k = a.kron(&b);
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        assert_eq!(k.get(i * 2 + p, j * 2 + q), a.get(i, j) * b.get(p, q));
                    }
                }
            }
        }
    }

    #[test]
    fn direct_sum_units() {
        assert_eq!(Matrix::identity(2).direct_sum(&Matrix::identity(3)), Matrix::identity(5));
        let a = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        assert_eq!(Matrix::zeros(0, 0).direct_sum(&a), a);
    }

    #[test]
    fn swap_exchanges_factors() {
        let x = Matrix::from_ints(&[&[1], &[2]]);
        let y = Matrix::from_ints(&[&[3], &[5], &[7]]);
        assert_eq!(Matrix::swap(2, 3).mul(&x.kron(&y)), y.kron(&x));
    }

    #[test]
    fn vec_unvec() {
        let a = Matrix::from_triplets(2, 3, vec![(0, 2, ratio(1, 2)), (1, 0, int(4))]);
        assert_eq!(Matrix::unvec(&a.vec(), 2, 3), a);
    }

    #[test]
    fn dense_roundtrip_with_zero_cols() {
        let m = Matrix::from_dense(3, 0, vec![]).unwrap();
        assert_eq!(m.shape(), (3, 0));
        assert!(Matrix::from_dense(2, 2, vec![int(1)]).is_err());
    }
}
