//! Test oracles that share no code with the elimination engine.
#![allow(dead_code)]

use twosided::{Matrix, Rational};

/// Determinant by cofactor expansion along the first row. Exponential; only
/// meant for n <= 6.
pub fn det(m: &Matrix) -> Rational {
    assert!(m.is_square());
    let n = m.rows();
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    det_minor(m, &rows, &cols)
}

fn det_minor(m: &Matrix, rows: &[usize], cols: &[usize]) -> Rational {
    match rows.len() {
        0 => Rational::one(),
        1 => m[(rows[0], cols[0])].clone(),
        _ => {
            let mut acc = Rational::zero();
            let top = rows[0];
            for (k, &c) in cols.iter().enumerate() {
                let entry = &m[(top, c)];
                if entry.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = entry * &det_minor(m, &rows[1..], &sub_cols);
                if k % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

/// Transpose of the cofactor matrix.
pub fn adjugate(m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut entries = vec![Rational::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = det_minor(m, &rows, &cols);
            let cofactor = if (i + j) % 2 == 0 { minor } else { -minor };
            // adj[j][i] = C[i][j]
            entries[j * n + i] = cofactor;
        }
    }
    Matrix::from_entries(n, n, entries).unwrap()
}

/// `(1/det) adj(m)`, or `None` when singular.
pub fn adjugate_inverse(m: &Matrix) -> Option<Matrix> {
    let d = det(m);
    let inv_det = d.recip()?;
    Some(adjugate(m).scale(&inv_det))
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).unwrap()
}

#[test]
fn oracle_self_check() {
    let a = twosided::mat![[1, 2], [3, 4]];
    assert_eq!(det(&a), Rational::from(-2));
    assert_eq!(adjugate(&a), twosided::mat![[4, -2], [-3, 1]]);
    let expected =
        Matrix::from_rows(vec![vec![q(-2, 1), q(1, 1)], vec![q(3, 2), q(-1, 2)]]).unwrap();
    assert_eq!(adjugate_inverse(&a), Some(expected));
    assert_eq!(
        det(&twosided::mat![[2, 0, 1], [1, 3, 2], [1, 1, 2]]),
        Rational::from(6)
    );
    assert_eq!(det(&Matrix::identity(0)), Rational::one());
    assert_eq!(adjugate_inverse(&twosided::mat![[1, 1], [1, 1]]), None);
}
