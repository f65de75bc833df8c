//! Exact solution of `Ax = b`, nullspaces, and right inverses built from the
//! unit systems `Ax = e_i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::rational::Rational;
use crate::rref::rref;

/// Classification of a linear system `Ax = b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolveOutcome {
    Unique {
        x: Vector,
    },
    /// Every solution is `particular` plus a combination of the basis.
    /// Free variables of `particular` are zero.
    Infinite {
        particular: Vector,
        nullspace_basis: Vec<Vector>,
    },
    /// Row `witness_row` of the reduced augmented matrix reads `[0 ... 0 | 1]`.
    Infeasible {
        witness_row: usize,
    },
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, SolveOutcome::Infeasible { .. })
    }

    /// A solution, if any exists.
    pub fn solution(&self) -> Option<&Vector> {
        match self {
            SolveOutcome::Unique { x } => Some(x),
            SolveOutcome::Infinite { particular, .. } => Some(particular),
            SolveOutcome::Infeasible { .. } => None,
        }
    }
}

/// Reads the nullspace basis off a reduced matrix: one vector per free
/// column, with that free variable set to one and the others to zero.
fn basis_from_reduced(reduced: &Matrix, pivot_cols: &[usize], cols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; cols];
    for &c in pivot_cols {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (r, &p) in pivot_cols.iter().enumerate() {
                v[p] = -&reduced[(r, free)];
            }
            Vector::new(v)
        })
        .collect()
}

/// Solves `Ax = b` by reducing the augmented matrix `[A | b]`.
pub fn solve(a: &Matrix, b: &Vector) -> Result<SolveOutcome> {
    if a.rows() != b.dim() {
        return Err(Error::DimensionMismatch {
            op: "solve",
            left: a.shape(),
            right: (b.dim(), 1),
        });
    }
    let n = a.cols();
    let aug = rref(&a.augment(&b.to_matrix())?);
    if let Some(&last) = aug.pivot_cols.last() {
        if last == n {
            return Ok(SolveOutcome::Infeasible {
                witness_row: aug.rank - 1,
            });
        }
    }

    let mut x = vec![Rational::zero(); n];
    for (r, &p) in aug.pivot_cols.iter().enumerate() {
        x[p] = aug.reduced[(r, n)].clone();
    }
    let x = Vector::new(x);
    if aug.rank == n {
        return Ok(SolveOutcome::Unique { x });
    }
    Ok(SolveOutcome::Infinite {
        particular: x,
        nullspace_basis: basis_from_reduced(&aug.reduced, &aug.pivot_cols, n),
    })
}

/// A basis of `{x : Ax = 0}`, empty exactly when the columns of `a` are
/// linearly independent.
pub fn nullspace_basis(a: &Matrix) -> Vec<Vector> {
    let d = rref(a);
    basis_from_reduced(&d.reduced, &d.pivot_cols, a.cols())
}

/// Outcome of [`right_inverse`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RightInverse {
    /// `A X = I`; column `i` of `X` solves `Ax = e_i`.
    Exists { inverse: Matrix },
    /// `Ax = e_i` has no solution for `i = first_infeasible`, the smallest
    /// such index.
    Missing { first_infeasible: usize },
}

impl RightInverse {
    pub fn matrix(&self) -> Option<&Matrix> {
        match self {
            RightInverse::Exists { inverse } => Some(inverse),
            RightInverse::Missing { .. } => None,
        }
    }

    pub fn into_matrix(self) -> Option<Matrix> {
        match self {
            RightInverse::Exists { inverse } => Some(inverse),
            RightInverse::Missing { .. } => None,
        }
    }
}

/// Builds `X` with `AX = I` by solving `Ax = e_i` for every `i`.
///
/// All `n` systems share one reduction of `A`: the trace is replayed on the
/// identity, which transforms every right-hand side `e_i` at once, and each
/// column is then read off the pivots.
pub fn right_inverse(a: &Matrix) -> Result<RightInverse> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            op: "right_inverse",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let d = rref(a);
    let rhs = crate::rref::apply_trace(&d.trace, &Matrix::identity(n))?;

    let mut columns = Vec::with_capacity(n);
    for i in 0..n {
        // e_i is feasible iff its transform vanishes on the zero rows of R.
        if (d.rank..n).any(|r| !rhs[(r, i)].is_zero()) {
            return Ok(RightInverse::Missing {
                first_infeasible: i,
            });
        }
        let mut x = vec![Rational::zero(); n];
        for (r, &p) in d.pivot_cols.iter().enumerate() {
            x[p] = rhs[(r, i)].clone();
        }
        columns.push(Vector::new(x));
    }
    // Square and every e_i feasible forces a pivot in every column, so each
    // solution above is the unique one.
    assert_eq!(d.rank, n, "all unit systems feasible but rank deficient");
    Ok(RightInverse::Exists {
        inverse: Matrix::from_columns(n, &columns)?,
    })
}

/// `sum_i b_i s_i`. When each `s_i` solves `Ax = e_i`, the result solves
/// `Ax = b` by linearity.
pub fn combine_unit_solutions(solutions: &[Vector], b: &Vector) -> Result<Vector> {
    let n = b.dim();
    if solutions.len() != n {
        return Err(Error::DimensionMismatch {
            op: "combine_unit_solutions",
            left: (n, solutions.len()),
            right: (n, 1),
        });
    }
    let mut acc = vec![Rational::zero(); n];
    for (s, coeff) in solutions.iter().zip(b.iter()) {
        if s.dim() != n {
            return Err(Error::DimensionMismatch {
                op: "combine_unit_solutions",
                left: (s.dim(), 1),
                right: (n, 1),
            });
        }
        if coeff.is_zero() {
            continue;
        }
        for (slot, v) in acc.iter_mut().zip(s.iter()) {
            *slot += &(coeff * v);
        }
    }
    Ok(Vector::new(acc))
}
