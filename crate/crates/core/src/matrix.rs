//! Dense exact matrices and column vectors.

use std::fmt;
use std::ops::Index;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A dense row-major matrix of rationals.
///
/// The public API never mutates a matrix in place; every operation returns a
/// fresh value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// A column vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Builds a matrix from a row-major entry list.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "from_entries",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows, which must all have the same length.
    /// An empty list gives the 0x0 matrix.
    pub fn from_rows<R, T>(rows: R) -> Result<Self>
    where
        R: IntoIterator,
        R::Item: IntoIterator<Item = T>,
        T: Into<Rational>,
    {
        let mut entries = Vec::new();
        let mut n_rows = 0;
        let mut n_cols = None;
        for row in rows {
            let before = entries.len();
            entries.extend(row.into_iter().map(Into::into));
            let width = entries.len() - before;
            match n_cols {
                None => n_cols = Some(width),
                Some(c) if c != width => {
                    return Err(Error::DimensionMismatch {
                        op: "from_rows",
                        left: (n_rows, c),
                        right: (1, width),
                    })
                }
                _ => {}
            }
            n_rows += 1;
        }
        Ok(Matrix {
            rows: n_rows,
            cols: n_cols.unwrap_or(0),
            entries,
        })
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.dim() != rows {
                return Err(Error::DimensionMismatch {
                    op: "from_columns",
                    left: (rows, 1),
                    right: (col.dim(), 1),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m.entries[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Rational> {
        (i < self.rows && j < self.cols).then(|| &self.entries[i * self.cols + j])
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector::new((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self.row(i).iter().enumerate().all(
                    |(j, v)| {
                        if i == j {
                            v.is_one()
                        } else {
                            v.is_zero()
                        }
                    },
                )
            })
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "mat_mul",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let lhs_row = self.row(i);
            for j in 0..rhs.cols {
                let mut acc = Rational::zero();
                for (k, a) in lhs_row.iter().enumerate() {
                    if !a.is_zero() {
                        let b = &rhs[(k, j)];
                        if !b.is_zero() {
                            acc += &(a * b);
                        }
                    }
                }
                out.entries[i * rhs.cols + j] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                op: "mat_vec_mul",
                left: self.shape(),
                right: (v.dim(), 1),
            });
        }
        Ok(Vector::new(
            self.row_iter()
                .map(|row| {
                    row.iter()
                        .zip(v.iter())
                        .fold(Rational::zero(), |mut acc, (a, b)| {
                            if !a.is_zero() && !b.is_zero() {
                                acc += &(a * b);
                            }
                            acc
                        })
                })
                .collect(),
        ))
    }

    fn zip_with(
        &self,
        rhs: &Matrix,
        op: &'static str,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Matrix> {
        if self.shape() != rhs.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, "mat_sub", |a, b| a - b)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, "mat_add", |a, b| a + b)
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| v * c).collect(),
        }
    }

    /// `[self | rhs]`, the column-wise concatenation.
    pub fn augment(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch {
                op: "augment",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let cols = self.cols + rhs.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(rhs.row(i));
        }
        Ok(Matrix {
            rows: self.rows,
            cols,
            entries,
        })
    }

    /// Columns `range` of every row.
    pub fn column_slice(&self, range: std::ops::Range<usize>) -> Matrix {
        assert!(range.end <= self.cols, "column range out of bounds");
        let cols = range.len();
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend_from_slice(&self.row(i)[range.clone()]);
        }
        Matrix {
            rows: self.rows,
            cols,
            entries,
        }
    }

    /// The matrix with its rows reordered: row `i` of the result is row
    /// `order[i]` of `self`.
    pub fn permute_rows(&self, order: &[usize]) -> Result<Matrix> {
        let mut seen = vec![false; self.rows];
        if order.len() != self.rows {
            return Err(Error::DimensionMismatch {
                op: "permute_rows",
                left: self.shape(),
                right: (order.len(), 1),
            });
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for &src in order {
            if src >= self.rows || std::mem::replace(&mut seen[src], true) {
                return Err(Error::RowOutOfRange {
                    index: src,
                    rows: self.rows,
                });
            }
            entries.extend_from_slice(self.row(src));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let (head, tail) = self.entries.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    pub(crate) fn scale_row(&mut self, i: usize, factor: &Rational) {
        for v in &mut self.entries[i * self.cols..(i + 1) * self.cols] {
            if !v.is_zero() {
                *v = &*v * factor;
            }
        }
    }

    /// `row[target] += factor * row[source]`
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &Rational) {
        debug_assert_ne!(target, source);
        for j in 0..self.cols {
            let s = &self.entries[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let delta = s * factor;
            self.entries[target * self.cols + j] += &delta;
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.row_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            f.debug_list().entries(row).finish()?;
        }
        write!(f, "]")
    }
}

/// Matrix-file body rendering: one row per line, entries separated by a space.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.row_iter() {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Rational>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries: self.row_iter().map(<[Rational]>::to_vec).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(D::Error::custom(format!(
                "matrix body does not match declared shape {}x{}",
                repr.rows, repr.cols
            )));
        }
        Ok(Matrix {
            rows: repr.rows,
            cols: repr.cols,
            entries: repr.entries.into_iter().flatten().collect(),
        })
    }
}

impl Vector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Vector { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Vector::new(vec![Rational::zero(); dim])
    }

    /// The `i`-th standard basis vector of dimension `dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.entries[i] = Rational::one();
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Vector::new(values.iter().map(|&v| Rational::from(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        Vector::new(self.entries.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, rhs: &Vector) -> Result<Vector> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                op: "vec_add",
                left: (self.dim(), 1),
                right: (rhs.dim(), 1),
            });
        }
        Ok(Vector::new(
            self.iter().zip(rhs.iter()).map(|(a, b)| a + b).collect(),
        ))
    }

    /// The vector as an `n x 1` matrix.
    pub fn to_matrix(&self) -> Matrix {
        Matrix {
            rows: self.dim(),
            cols: 1,
            entries: self.entries.clone(),
        }
    }
}

impl Index<usize> for Vector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.entries[i]
    }
}

impl FromIterator<Rational> for Vector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        Vector::new(iter.into_iter().collect())
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.entries).finish()
    }
}

impl Serialize for Vector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Vec::<Rational>::deserialize(deserializer).map(Vector::new)
    }
}

/// Shorthand for building integer matrices in tests and examples.
#[macro_export]
macro_rules! mat {
    () => { $crate::Matrix::identity(0) };
    ($([$($x:expr),* $(,)?]),+ $(,)?) => {
        $crate::Matrix::from_rows(vec![$(vec![$($crate::Rational::from($x as i64)),*]),+])
            .expect("ragged matrix literal")
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn identity_shapes() {
        assert_eq!(Matrix::identity(1), mat![[1]]);
        assert_eq!(Matrix::identity(3), mat![[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
        let empty = Matrix::identity(0);
        assert_eq!(empty.shape(), (0, 0));
        assert!(empty.is_identity());
        assert_eq!(empty.mul(&empty).unwrap(), empty);
    }

    #[test]
    fn products() {
        let i2 = Matrix::identity(2);
        assert_eq!(i2.mul(&i2).unwrap(), i2);

        let a = mat![[1, 2], [3, 4]];
        let inv =
            Matrix::from_rows(vec![vec![q(-2, 1), q(1, 1)], vec![q(3, 2), q(-1, 2)]]).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), i2);
        assert_eq!(inv.mul(&a).unwrap(), i2);

        let ones = mat![[1, 1], [1, 1]];
        assert_eq!(ones.mul(&mat![[1], [-1]]).unwrap(), Matrix::zeros(2, 1));
    }

    #[test]
    fn mismatch_names_both_shapes() {
        let err = mat![[1, 2, 3]].mul(&mat![[1, 2]]).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                op: "mat_mul",
                left: (1, 3),
                right: (1, 2)
            }
        );
        assert!(err.to_string().contains("1x3") && err.to_string().contains("1x2"));
        assert!(mat![[1]].sub(&mat![[1, 2]]).is_err());
    }

    #[test]
    fn subtraction() {
        let i2 = Matrix::identity(2);
        assert!(i2.sub(&i2).unwrap().is_zero());
        assert_eq!(mat![[1, 2], [3, 4]].sub(&i2).unwrap(), mat![[0, 2], [3, 3]]);
    }

    #[test]
    fn row_helpers() {
        let mut m = mat![[1, 2], [3, 4], [5, 6]];
        m.swap_rows(0, 2);
        assert_eq!(m, mat![[5, 6], [3, 4], [1, 2]]);
        m.scale_row(1, &q(1, 3));
        assert_eq!(m.row(1), &[q(1, 1), q(4, 3)]);
        m.add_row_multiple(0, 2, &q(-5, 1));
        assert_eq!(m.row(0), &[q(0, 1), q(-4, 1)]);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::from_rows(vec![vec![q(1, 1)], vec![]]).is_err());
        assert!(Matrix::from_entries(2, 2, vec![Rational::one()]).is_err());
    }

    #[test]
    fn serde_shape_checked() {
        let m = mat![[1, 2], [3, 4]].scale(&q(1, 2));
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(
            json,
            r#"{"rows":2,"cols":2,"entries":[["1/2","1"],["3/2","2"]]}"#
        );
        assert_eq!(serde_json::from_str::<Matrix>(&json).unwrap(), m);
        assert!(
            serde_json::from_str::<Matrix>(r#"{"rows":2,"cols":1,"entries":[["1"]]}"#).is_err()
        );
    }
}
