//! Seeded instance generators.
//!
//! All randomness comes from [`SplitMix64`], defined bit-exactly so that a
//! seed reproduces the same matrices on every platform and in any language
//! that ports the generator:
//!
//! ```text
//! state  <- state + 0x9E3779B97F4A7C15            (wrapping)
//! z      <- state
//! z      <- (z xor (z >> 30)) * 0xBF58476D1CE4E5B9 (wrapping)
//! z      <- (z xor (z >> 27)) * 0x94D049BB133111EB (wrapping)
//! output <- z xor (z >> 31)
//! ```
//!
//! A draw below `k` is `next_u64() mod k`. The small modulo bias is accepted
//! in exchange for a trivially portable definition.

use std::num::NonZeroU32;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::rational::Rational;
use crate::rref::{rank, RowOp};

/// Largest magnitude allowed for any numerator or denominator produced by
/// [`random_invertible`].
pub const ENTRY_CAP: i64 = 1000;

/// Attempts at drawing a row operation that respects [`ENTRY_CAP`] before
/// falling back to a growth-free operation.
pub const MAX_REROLLS: usize = 16;

pub const DEFAULT_ENTRY_BOUND: u32 = 5;

/// Row-operation factors, as `(numerator, denominator)`.
pub const FACTORS: [(i64, i64); 8] = [
    (1, 1),
    (-1, 1),
    (2, 1),
    (-2, 1),
    (1, 2),
    (-1, 2),
    (3, 1),
    (-3, 1),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw from `0..bound`. Panics if `bound` is zero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        self.next_u64() % bound
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.below(bound as u64) as usize
    }

    /// Two distinct indices in `0..bound`, `bound >= 2`.
    pub fn distinct_pair(&mut self, bound: usize) -> (usize, usize) {
        let i = self.index(bound);
        let mut j = self.index(bound - 1);
        if j >= i {
            j += 1;
        }
        (i, j)
    }

    /// Numerator uniform in `[-bound, bound]`, denominator from `{1, 2, 3}`.
    pub fn rational(&mut self, bound: NonZeroU32) -> Rational {
        let b = i64::from(bound.get());
        let num = self.below((2 * b + 1) as u64) as i64 - b;
        let den = 1 + self.below(3) as i64;
        Rational::new(num, den).expect("denominator is positive")
    }

    pub fn vector(&mut self, dim: usize, bound: NonZeroU32) -> Vector {
        (0..dim).map(|_| self.rational(bound)).collect()
    }

    /// Fisher–Yates shuffle of `0..n`.
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.index(i + 1);
            p.swap(i, j);
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub size: usize,
    /// Numerators of random entries are drawn from `[-entry_bound, entry_bound]`.
    pub entry_bound: NonZeroU32,
    /// Random row operations applied by [`random_invertible`].
    pub op_count: usize,
}

impl GenConfig {
    /// Defaults: entry bound 5, `8 * size` row operations.
    pub fn new(seed: u64, size: usize) -> Self {
        GenConfig {
            seed,
            size,
            entry_bound: NonZeroU32::new(DEFAULT_ENTRY_BOUND).expect("nonzero"),
            op_count: 8 * size,
        }
    }

    pub fn with_op_count(mut self, op_count: usize) -> Self {
        self.op_count = op_count;
        self
    }

    pub fn with_entry_bound(mut self, entry_bound: NonZeroU32) -> Self {
        self.entry_bound = entry_bound;
        self
    }
}

fn factor(rng: &mut SplitMix64) -> Rational {
    let (n, d) = FACTORS[rng.index(FACTORS.len())];
    Rational::new(n, d).expect("nonzero denominator")
}

fn within_cap(values: &[Rational]) -> bool {
    let cap = num_bigint::BigInt::from(ENTRY_CAP);
    values
        .iter()
        .all(|v| v.numerator().magnitude() <= cap.magnitude() && v.denominator() <= &cap)
}

fn draw_op(rng: &mut SplitMix64, n: usize) -> RowOp {
    let kind = if n == 1 { 1 } else { rng.below(3) };
    match kind {
        0 => {
            let (i, j) = rng.distinct_pair(n);
            RowOp::Swap { i, j }
        }
        1 => RowOp::Scale {
            row: rng.index(n),
            factor: factor(rng),
        },
        _ => {
            let (target, source) = rng.distinct_pair(n);
            RowOp::AddMultiple {
                target,
                source,
                factor: factor(rng),
            }
        }
    }
}

/// The row `op` would write, or `None` for a swap (which cannot grow entries).
fn updated_row(m: &Matrix, op: &RowOp) -> Option<Vec<Rational>> {
    match op {
        RowOp::Swap { .. } => None,
        RowOp::Scale { row, factor } => Some(m.row(*row).iter().map(|v| v * factor).collect()),
        RowOp::AddMultiple {
            target,
            source,
            factor,
        } => Some(
            m.row(*target)
                .iter()
                .zip(m.row(*source))
                .map(|(t, s)| t + &(s * factor))
                .collect(),
        ),
    }
}

/// Applies `cfg.op_count` random row operations to the identity.
///
/// Row operations preserve rank, so the result is invertible. A drawn
/// operation that would push an entry past [`ENTRY_CAP`] is re-rolled, up to
/// [`MAX_REROLLS`] times, after which a swap (or, for `n = 1`, negation) is
/// used instead.
pub fn random_invertible(cfg: &GenConfig) -> Matrix {
    let n = cfg.size;
    let mut m = Matrix::identity(n);
    if n == 0 {
        return m;
    }
    let mut rng = SplitMix64::new(cfg.seed);
    for _ in 0..cfg.op_count {
        let mut chosen = None;
        for _ in 0..MAX_REROLLS {
            let op = draw_op(&mut rng, n);
            match updated_row(&m, &op) {
                Some(row) if !within_cap(&row) => continue,
                _ => {
                    chosen = Some(op);
                    break;
                }
            }
        }
        let op = chosen.unwrap_or_else(|| {
            if n == 1 {
                RowOp::Scale {
                    row: 0,
                    factor: Rational::from(-1),
                }
            } else {
                let (i, j) = rng.distinct_pair(n);
                RowOp::Swap { i, j }
            }
        });
        op.apply_in_place(&mut m);
    }
    m
}

/// An `n x n` matrix of rank exactly `r`, built as `P Q` where `P` holds the
/// first `r` columns of one random invertible matrix and `Q` the first `r`
/// rows of another.
pub fn random_with_rank(cfg: &GenConfig, r: usize) -> Result<Matrix> {
    let n = cfg.size;
    if r > n {
        return Err(Error::RankTooLarge { rank: r, n });
    }
    let mut rng = SplitMix64::new(cfg.seed);
    let left = random_invertible(&GenConfig {
        seed: rng.next_u64(),
        ..cfg.clone()
    });
    let right = random_invertible(&GenConfig {
        seed: rng.next_u64(),
        ..cfg.clone()
    });
    let p = left.column_slice(0..r);
    let q = right.transpose().column_slice(0..r).transpose();
    let m = p.mul(&q)?;
    assert_eq!(rank(&m), r, "rank construction failed");
    Ok(m)
}

/// A `rows x cols` matrix with independent entries drawn as in
/// [`SplitMix64::rational`].
pub fn random_matrix(cfg: &GenConfig, rows: usize, cols: usize) -> Matrix {
    let mut rng = SplitMix64::new(cfg.seed);
    let entries = (0..rows * cols)
        .map(|_| rng.rational(cfg.entry_bound))
        .collect();
    Matrix::from_entries(rows, cols, entries).expect("entry count matches shape")
}
