//! Gauss–Jordan reduction to reduced row-echelon form.
//!
//! Row equivalence is certified by a replayable list of [`RowOp`]s. Elementary
//! matrices are never formed; replay acts on rows directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::rational::Rational;

/// A single row operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum RowOp {
    Swap {
        i: usize,
        j: usize,
    },
    /// `row[row] *= factor`, factor nonzero.
    Scale {
        row: usize,
        factor: Rational,
    },
    /// `row[target] += factor * row[source]`, target != source.
    AddMultiple {
        target: usize,
        source: usize,
        factor: Rational,
    },
}

impl RowOp {
    /// The operation undoing `self`.
    pub fn inverse(&self) -> Result<RowOp> {
        Ok(match self {
            RowOp::Swap { i, j } => RowOp::Swap { i: *i, j: *j },
            RowOp::Scale { row, factor } => RowOp::Scale {
                row: *row,
                factor: factor.recip().ok_or(Error::ZeroScale)?,
            },
            RowOp::AddMultiple {
                target,
                source,
                factor,
            } => RowOp::AddMultiple {
                target: *target,
                source: *source,
                factor: -factor,
            },
        })
    }

    pub fn validate(&self, rows: usize) -> Result<()> {
        let check = |index: usize| {
            if index < rows {
                Ok(())
            } else {
                Err(Error::RowOutOfRange { index, rows })
            }
        };
        match self {
            RowOp::Swap { i, j } => {
                check(*i)?;
                check(*j)
            }
            RowOp::Scale { row, factor } => {
                check(*row)?;
                if factor.is_zero() {
                    return Err(Error::ZeroScale);
                }
                Ok(())
            }
            RowOp::AddMultiple { target, source, .. } => {
                check(*target)?;
                check(*source)?;
                if target == source {
                    return Err(Error::SelfAddition { row: *target });
                }
                Ok(())
            }
        }
    }

    pub(crate) fn apply_in_place(&self, m: &mut Matrix) {
        match self {
            RowOp::Swap { i, j } => m.swap_rows(*i, *j),
            RowOp::Scale { row, factor } => m.scale_row(*row, factor),
            RowOp::AddMultiple {
                target,
                source,
                factor,
            } => m.add_row_multiple(*target, *source, factor),
        }
    }
}

impl std::fmt::Display for RowOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RowOp::Swap { i, j } => write!(f, "swap R{i} R{j}"),
            RowOp::Scale { row, factor } => write!(f, "R{row} <- ({factor}) R{row}"),
            RowOp::AddMultiple {
                target,
                source,
                factor,
            } => write!(f, "R{target} <- R{target} + ({factor}) R{source}"),
        }
    }
}

/// Result of reducing a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RrefDecomposition {
    /// The reduced row-echelon form.
    pub reduced: Matrix,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
    /// Operations that take the input to `reduced`, in order.
    pub trace: Vec<RowOp>,
}

impl RrefDecomposition {
    pub fn pivot_in_every_column(&self) -> bool {
        self.rank == self.reduced.cols()
    }

    pub fn pivot_in_every_row(&self) -> bool {
        self.rank == self.reduced.rows()
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_cols(&self) -> Vec<usize> {
        let mut pivots = self.pivot_cols.iter().peekable();
        (0..self.reduced.cols())
            .filter(|c| {
                if pivots.peek() == Some(&c) {
                    pivots.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// Applies the trace to a right-hand side vector.
    pub fn transform(&self, rhs: &Vector) -> Result<Vector> {
        Ok(apply_trace(&self.trace, &rhs.to_matrix())?.column(0))
    }

    /// The vector `b` that the trace carries to the unit vector `e_row`.
    ///
    /// When `row` is a zero row of the reduced form, `Ax = b` is infeasible:
    /// the augmented system reduces to a row `[0 ... 0 | 1]`.
    pub fn preimage_of_unit(&self, row: usize) -> Result<Vector> {
        let rows = self.reduced.rows();
        if row >= rows {
            return Err(Error::RowOutOfRange { index: row, rows });
        }
        let undo = self
            .trace
            .iter()
            .rev()
            .map(RowOp::inverse)
            .collect::<Result<Vec<_>>>()?;
        Ok(apply_trace(&undo, &Vector::unit(rows, row).to_matrix())?.column(0))
    }
}

/// Reduces `a` to RREF with full Gauss–Jordan elimination.
///
/// The pivot of each column is the first nonzero entry at or below the
/// current row. No-op steps (swap with itself, scale by one, adding a zero
/// multiple) are not recorded, so an already reduced matrix yields an empty
/// trace.
pub fn rref(a: &Matrix) -> RrefDecomposition {
    let mut work = a.clone();
    let mut trace = Vec::new();
    let mut pivot_cols = Vec::new();
    let (rows, cols) = a.shape();
    let mut pivot_row = 0;

    let mut record = |op: RowOp, work: &mut Matrix| {
        op.apply_in_place(work);
        trace.push(op);
    };

    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&r| !work[(r, col)].is_zero()) else {
            continue;
        };
        if found != pivot_row {
            record(
                RowOp::Swap {
                    i: pivot_row,
                    j: found,
                },
                &mut work,
            );
        }
        let lead = &work[(pivot_row, col)];
        if !lead.is_one() {
            let factor = lead.recip().expect("pivot is nonzero");
            record(
                RowOp::Scale {
                    row: pivot_row,
                    factor,
                },
                &mut work,
            );
        }
        for r in 0..rows {
            if r == pivot_row || work[(r, col)].is_zero() {
                continue;
            }
            let factor = -&work[(r, col)];
            record(
                RowOp::AddMultiple {
                    target: r,
                    source: pivot_row,
                    factor,
                },
                &mut work,
            );
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }

    RrefDecomposition {
        reduced: work,
        rank: pivot_cols.len(),
        pivot_cols,
        trace,
    }
}

/// Replays `trace` against `m`.
pub fn apply_trace(trace: &[RowOp], m: &Matrix) -> Result<Matrix> {
    let mut out = m.clone();
    for op in trace {
        op.validate(out.rows())?;
        op.apply_in_place(&mut out);
    }
    Ok(out)
}

pub fn rank(a: &Matrix) -> usize {
    rref(a).rank
}

/// Checks the structural RREF conditions on `m` against a claimed pivot
/// profile.
pub fn is_rref(m: &Matrix, pivot_cols: &[usize]) -> bool {
    if pivot_cols.len() > m.rows() || pivot_cols.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    for (r, &c) in pivot_cols.iter().enumerate() {
        if c >= m.cols() || !m[(r, c)].is_one() {
            return false;
        }
        if m.row(r)[..c].iter().any(|v| !v.is_zero()) {
            return false;
        }
        if (0..m.rows()).any(|k| k != r && !m[(k, c)].is_zero()) {
            return false;
        }
    }
    (pivot_cols.len()..m.rows()).all(|r| m.row(r).iter().all(Rational::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat;

    #[test]
    fn identity_is_already_reduced() {
        let d = rref(&Matrix::identity(3));
        assert_eq!(d.reduced, Matrix::identity(3));
        assert_eq!(d.pivot_cols, vec![0, 1, 2]);
        assert_eq!(d.rank, 3);
        assert!(d.trace.is_empty());
    }

    #[test]
    fn rank_one_ones() {
        let d = rref(&mat![[1, 1], [1, 1]]);
        assert_eq!(d.reduced, mat![[1, 1], [0, 0]]);
        assert_eq!(d.pivot_cols, vec![0]);
        assert_eq!(d.rank, 1);
        assert_eq!(d.free_cols(), vec![1]);
    }

    #[test]
    fn antidiagonal_needs_a_swap() {
        // By hand: swap rows -> [[3,0],[0,2]], scale R0 by 1/3, scale R1 by 1/2.
        let a = mat![[0, 2], [3, 0]];
        let d = rref(&a);
        assert_eq!(d.reduced, Matrix::identity(2));
        assert_eq!(d.pivot_cols, vec![0, 1]);
        assert_eq!(d.rank, 2);
        assert_eq!(
            d.trace,
            vec![
                RowOp::Swap { i: 0, j: 1 },
                RowOp::Scale {
                    row: 0,
                    factor: Rational::new(1, 3).unwrap()
                },
                RowOp::Scale {
                    row: 1,
                    factor: Rational::new(1, 2).unwrap()
                },
            ]
        );
        assert_eq!(apply_trace(&d.trace, &a).unwrap(), d.reduced);
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&Matrix::identity(4)), 4);
        assert_eq!(rank(&Matrix::zeros(3, 3)), 0);
        assert_eq!(rank(&mat![[1, 2], [2, 4]]), 1);
        assert_eq!(rank(&Matrix::identity(0)), 0);
        assert_eq!(rank(&Matrix::zeros(0, 3)), 0);
        assert_eq!(rank(&Matrix::zeros(3, 0)), 0);
    }

    #[test]
    fn replay_basics() {
        let m = mat![[7], [9]];
        assert_eq!(apply_trace(&[], &m).unwrap(), m);
        assert_eq!(
            apply_trace(&[RowOp::Swap { i: 0, j: 1 }], &m).unwrap(),
            mat![[9], [7]]
        );
    }

    #[test]
    fn replay_rejects_bad_ops() {
        let m = Matrix::identity(2);
        assert_eq!(
            apply_trace(&[RowOp::Swap { i: 0, j: 2 }], &m),
            Err(Error::RowOutOfRange { index: 2, rows: 2 })
        );
        let zero_scale = RowOp::Scale {
            row: 0,
            factor: Rational::zero(),
        };
        assert_eq!(apply_trace(&[zero_scale], &m), Err(Error::ZeroScale));
        let self_add = RowOp::AddMultiple {
            target: 1,
            source: 1,
            factor: Rational::one(),
        };
        assert_eq!(
            apply_trace(&[self_add], &m),
            Err(Error::SelfAddition { row: 1 })
        );
    }

    #[test]
    fn zero_rows_sink_to_the_bottom() {
        let d = rref(&mat![[0, 0, 0], [0, 0, 5], [0, 0, 0], [2, 4, 0]]);
        assert_eq!(d.reduced, mat![[1, 2, 0], [0, 0, 1], [0, 0, 0], [0, 0, 0]]);
        assert_eq!(d.pivot_cols, vec![0, 2]);
        assert!(is_rref(&d.reduced, &d.pivot_cols));
    }

    #[test]
    fn preimage_of_zero_row_is_infeasible() {
        let a = mat![[1, 2], [2, 4]];
        let d = rref(&a);
        let b = d.preimage_of_unit(1).unwrap();
        assert_eq!(d.transform(&b).unwrap(), Vector::unit(2, 1));
        let aug = rref(&a.augment(&b.to_matrix()).unwrap());
        assert_eq!(aug.pivot_cols.last(), Some(&2));
    }

    #[test]
    fn is_rref_detects_violations() {
        assert!(is_rref(&mat![[1, 0], [0, 1]], &[0, 1]));
        assert!(!is_rref(&mat![[2, 0], [0, 1]], &[0, 1]));
        assert!(!is_rref(&mat![[1, 1], [0, 1]], &[0, 1]));
        assert!(!is_rref(&mat![[0, 0], [1, 0]], &[0]));
        assert!(!is_rref(&mat![[1, 0], [0, 1]], &[1, 0]));
    }
}
