//! Two-sidedness checks and the invertible matrix theorem.
//!
//! [`imt_report`] evaluates eight characterizations of invertibility, each
//! through its own computation, so that agreement among them is an observed
//! fact rather than a consequence of shared code paths.

use std::num::NonZeroU32;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate::{SplitMix64, DEFAULT_ENTRY_BOUND};
use crate::matrix::{Matrix, Vector};
use crate::rref::{rank, rref, RowOp};
use crate::solver::{nullspace_basis, right_inverse, solve, RightInverse, SolveOutcome};

pub const DEFAULT_PROBES: usize = 25;

/// Column `j` of `Z = BA - I` that is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffendingColumn {
    pub index: usize,
    pub column: Vector,
    /// Whether `A z_j = 0`. If `AB = I` this would contradict the
    /// independence of the columns of `A`.
    pub annihilated_by_a: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSidedReport {
    pub ab_is_identity: bool,
    pub ba_is_identity: bool,
    /// `BA - I`.
    pub z_matrix: Matrix,
    /// First nonzero column of `z_matrix`; present iff `BA != I`.
    pub offending_column: Option<OffendingColumn>,
}

impl TwoSidedReport {
    /// `AB = I` implies `BA = I`.
    pub fn implication_holds(&self) -> bool {
        !self.ab_is_identity || self.ba_is_identity
    }
}

fn require_square(op: &'static str, m: &Matrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::NotSquare {
            op,
            rows: m.rows(),
            cols: m.cols(),
        })
    }
}

/// Computes `AB` and `BA` independently and compares each with `I`. Never
/// assumes `AB = I`.
pub fn two_sided_check(a: &Matrix, b: &Matrix) -> Result<TwoSidedReport> {
    require_square("two_sided_check", a)?;
    require_square("two_sided_check", b)?;
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            op: "two_sided_check",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let n = a.rows();
    let ab_is_identity = a.mul(b)?.is_identity();
    let z_matrix = b.mul(a)?.sub(&Matrix::identity(n))?;
    let offending_column = match (0..n).find(|&j| !z_matrix.column(j).is_zero()) {
        Some(index) => {
            let column = z_matrix.column(index);
            let annihilated_by_a = a.mul_vec(&column)?.is_zero();
            Some(OffendingColumn {
                index,
                column,
                annihilated_by_a,
            })
        }
        None => None,
    };
    Ok(TwoSidedReport {
        ab_is_identity,
        ba_is_identity: offending_column.is_none(),
        z_matrix,
        offending_column,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Independence {
    Independent {
        pivot_count: usize,
    },
    /// `A witness = 0` with `witness != 0`.
    Dependent {
        witness: Vector,
    },
}

/// Decides whether the columns of `a` are linearly independent, with a
/// nonzero kernel vector as the counter-witness.
pub fn independence_certificate(a: &Matrix) -> Independence {
    let d = rref(a);
    if d.pivot_in_every_column() {
        Independence::Independent {
            pivot_count: d.rank,
        }
    } else {
        let witness = nullspace_basis(a)
            .into_iter()
            .next()
            .expect("a free column yields a kernel vector");
        Independence::Dependent { witness }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImtOptions {
    /// Random right-hand sides tried by the feasibility probe.
    pub probes: usize,
    pub seed: u64,
    /// Evaluate the predicates on separate threads.
    pub parallel: bool,
}

impl Default for ImtOptions {
    fn default() -> Self {
        ImtOptions {
            probes: DEFAULT_PROBES,
            seed: 0,
            parallel: false,
        }
    }
}

/// Random-probe half of the "every `b` is feasible" predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeSummary {
    pub count: usize,
    pub seed: u64,
    pub feasible: usize,
    /// First probe right-hand side with no solution.
    pub first_infeasible: Option<Vector>,
    /// The deterministic certificate's answer.
    pub certificate: bool,
    /// Probes and certificate disagree.
    pub divergence: bool,
}

/// The eight statements, each with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImtReport {
    pub size: usize,
    pub invertible: bool,
    pub row_equiv_identity: bool,
    pub feasible_all_b: bool,
    pub pivot_every_row: bool,
    pub columns_independent: bool,
    pub trivial_nullspace: bool,
    pub columns_span: bool,
    pub columns_basis: bool,
    /// All eight statements agree.
    pub verdict: bool,

    /// `X` with `AX = I`.
    pub inverse: Option<Matrix>,
    /// Smallest `i` with `Ax = e_i` infeasible.
    pub first_infeasible_unit: Option<usize>,
    pub reduced: Matrix,
    pub row_trace: Vec<RowOp>,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
    /// Kernel vector from the nullspace basis.
    pub dependence_witness: Option<Vector>,
    /// Nonzero solution of `Ax = 0` from the homogeneous solve.
    pub nontrivial_solution: Option<Vector>,
    /// A right-hand side `b` for which `Ax = b` has no solution.
    pub infeasible_b: Option<Vector>,
    pub probes: ProbeSummary,
}

impl ImtReport {
    pub fn predicates(&self) -> [(&'static str, bool); 8] {
        [
            ("invertible", self.invertible),
            ("row_equiv_identity", self.row_equiv_identity),
            ("feasible_all_b", self.feasible_all_b),
            ("pivot_every_row", self.pivot_every_row),
            ("columns_independent", self.columns_independent),
            ("trivial_nullspace", self.trivial_nullspace),
            ("columns_span", self.columns_span),
            ("columns_basis", self.columns_basis),
        ]
    }

    /// Verdict holds and the feasibility probes agree with their certificate.
    pub fn consistent(&self) -> bool {
        self.verdict && !self.probes.divergence
    }
}

struct InvertiblePart {
    holds: bool,
    inverse: Option<Matrix>,
    first_infeasible_unit: Option<usize>,
}

fn eval_invertible(a: &Matrix) -> Result<InvertiblePart> {
    Ok(match right_inverse(a)? {
        RightInverse::Exists { inverse } => InvertiblePart {
            holds: true,
            inverse: Some(inverse),
            first_infeasible_unit: None,
        },
        RightInverse::Missing { first_infeasible } => InvertiblePart {
            holds: false,
            inverse: None,
            first_infeasible_unit: Some(first_infeasible),
        },
    })
}

fn eval_row_equiv_identity(a: &Matrix) -> (bool, Matrix, Vec<RowOp>) {
    let d = rref(a);
    (d.reduced == Matrix::identity(a.rows()), d.reduced, d.trace)
}

fn eval_pivot_every_row(a: &Matrix) -> (bool, Vec<usize>) {
    let d = rref(a);
    (d.pivot_cols.len() == a.rows(), d.pivot_cols)
}

/// Deterministic certificate: reduce `[A | I]`. A zero row `k` on the left
/// carries a nonzero `y` on the right with `y^T A = 0`; any `e_j` with
/// `y_j != 0` is then unreachable.
fn feasibility_certificate(a: &Matrix) -> Result<Option<Vector>> {
    let n = a.rows();
    let d = rref(&a.augment(&Matrix::identity(n))?);
    for k in 0..n {
        if d.reduced.row(k)[..a.cols()].iter().all(|v| v.is_zero()) {
            let y = &d.reduced.row(k)[a.cols()..];
            let j = y
                .iter()
                .position(|v| !v.is_zero())
                .expect("row transform is invertible");
            return Ok(Some(Vector::unit(n, j)));
        }
    }
    Ok(None)
}

fn eval_feasible_all_b(
    a: &Matrix,
    opts: &ImtOptions,
) -> Result<(bool, Option<Vector>, ProbeSummary)> {
    let bound = NonZeroU32::new(DEFAULT_ENTRY_BOUND).expect("nonzero");
    let mut rng = SplitMix64::new(opts.seed);
    let mut feasible = 0;
    let mut first_infeasible = None;
    for _ in 0..opts.probes {
        let b = rng.vector(a.rows(), bound);
        if solve(a, &b)?.is_feasible() {
            feasible += 1;
        } else if first_infeasible.is_none() {
            first_infeasible = Some(b);
        }
    }
    let probes_pass = feasible == opts.probes;
    let counterexample = feasibility_certificate(a)?;
    let certificate = counterexample.is_none();
    let summary = ProbeSummary {
        count: opts.probes,
        seed: opts.seed,
        feasible,
        first_infeasible,
        certificate,
        divergence: certificate != probes_pass,
    };
    Ok((certificate && probes_pass, counterexample, summary))
}

fn eval_columns_independent(a: &Matrix) -> (bool, Option<Vector>) {
    let basis = nullspace_basis(a);
    (basis.is_empty(), basis.into_iter().next())
}

fn eval_trivial_nullspace(a: &Matrix) -> Result<(bool, Option<Vector>)> {
    Ok(match solve(a, &Vector::zeros(a.rows()))? {
        SolveOutcome::Unique { x } => {
            assert!(
                x.is_zero(),
                "homogeneous system has a nonzero unique solution"
            );
            (true, None)
        }
        SolveOutcome::Infinite {
            nullspace_basis, ..
        } => (false, nullspace_basis.into_iter().next()),
        SolveOutcome::Infeasible { .. } => unreachable!("x = 0 always solves Ax = 0"),
    })
}

fn eval_columns_span(a: &Matrix) -> (bool, usize) {
    let r = rank(a);
    (r == a.rows(), r)
}

/// Evaluates the eight statements with default options.
pub fn imt_report(a: &Matrix) -> Result<ImtReport> {
    imt_report_with(a, &ImtOptions::default())
}

pub fn imt_report_with(a: &Matrix, opts: &ImtOptions) -> Result<ImtReport> {
    require_square("imt_report", a)?;

    let (inv, row_eq, feas, pivots, indep, trivial, span) = if opts.parallel {
        std::thread::scope(|s| {
            let inv = s.spawn(|| eval_invertible(a));
            let row_eq = s.spawn(|| eval_row_equiv_identity(a));
            let feas = s.spawn(|| eval_feasible_all_b(a, opts));
            let pivots = s.spawn(|| eval_pivot_every_row(a));
            let indep = s.spawn(|| eval_columns_independent(a));
            let trivial = s.spawn(|| eval_trivial_nullspace(a));
            let span = eval_columns_span(a);
            let join = "predicate thread panicked";
            (
                inv.join().expect(join),
                row_eq.join().expect(join),
                feas.join().expect(join),
                pivots.join().expect(join),
                indep.join().expect(join),
                trivial.join().expect(join),
                span,
            )
        })
    } else {
        (
            eval_invertible(a),
            eval_row_equiv_identity(a),
            eval_feasible_all_b(a, opts),
            eval_pivot_every_row(a),
            eval_columns_independent(a),
            eval_trivial_nullspace(a),
            eval_columns_span(a),
        )
    };
    let inv = inv?;
    let (row_equiv_identity, reduced, row_trace) = row_eq;
    let (feasible_all_b, infeasible_b, probes) = feas?;
    let (pivot_every_row, pivot_cols) = pivots;
    let (columns_independent, dependence_witness) = indep;
    let (trivial_nullspace, nontrivial_solution) = trivial?;
    let (columns_span, rank) = span;
    let columns_basis = columns_independent && columns_span;

    let all = [
        inv.holds,
        row_equiv_identity,
        feasible_all_b,
        pivot_every_row,
        columns_independent,
        trivial_nullspace,
        columns_span,
        columns_basis,
    ];
    let verdict = all.iter().all(|&p| p == all[0]);

    Ok(ImtReport {
        size: a.rows(),
        invertible: inv.holds,
        row_equiv_identity,
        feasible_all_b,
        pivot_every_row,
        columns_independent,
        trivial_nullspace,
        columns_span,
        columns_basis,
        verdict,
        inverse: inv.inverse,
        first_infeasible_unit: inv.first_infeasible_unit,
        reduced,
        row_trace,
        pivot_cols,
        rank,
        dependence_witness,
        nontrivial_solution,
        infeasible_b,
        probes,
    })
}
