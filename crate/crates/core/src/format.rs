//! The plain-text matrix file format.
//!
//! ```text
//! # comment lines start with '#', blank lines are ignored
//! 2 3
//! 1 -2 1/2
//! 0 3/4 -7
//! ```
//!
//! The first significant line declares `rows cols`; each of the next `rows`
//! significant lines holds `cols` whitespace-separated literals of the form
//! `p`, `-p` or `p/q`.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::rational::Rational;

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based starting column.
fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let start = rest.find(|c: char| !c.is_whitespace())?;
        let tail = &rest[start..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let col = line[..offset + start].chars().count() + 1;
        let tok = &tail[..len];
        offset += start + len;
        rest = &tail[len..];
        Some((col, tok))
    })
}

pub fn parse_matrix_file(text: &str) -> Result<Matrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        });

    let (header_no, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "missing \"rows cols\" header"))?;
    let dims: Vec<(usize, &str)> = tokens(header).collect();
    if dims.len() != 2 {
        return Err(parse_error(
            header_no,
            1,
            format!("header must be \"rows cols\", found {} fields", dims.len()),
        ));
    }
    let mut shape = [0usize; 2];
    for (slot, (col, tok)) in shape.iter_mut().zip(&dims) {
        *slot = tok
            .parse()
            .map_err(|_| parse_error(header_no, *col, format!("invalid dimension {tok:?}")))?;
    }
    let [rows, cols] = shape;

    let mut entries = Vec::with_capacity(rows.saturating_mul(cols).min(1 << 20));
    let mut last_line = header_no;
    for r in 0..rows {
        let Some((line_no, line)) = lines.next() else {
            return Err(parse_error(
                last_line + 1,
                1,
                format!("expected {rows} rows, found {r}"),
            ));
        };
        last_line = line_no;
        let mut count = 0;
        for (col, tok) in tokens(line) {
            if count == cols {
                return Err(parse_error(
                    line_no,
                    col,
                    format!("expected {cols} entries, found more"),
                ));
            }
            let value = tok.parse::<Rational>().map_err(|e| match e {
                Error::ZeroDenominator => {
                    parse_error(line_no, col, format!("zero denominator in {tok:?}"))
                }
                _ => parse_error(line_no, col, format!("malformed rational {tok:?}")),
            })?;
            entries.push(value);
            count += 1;
        }
        if count < cols {
            return Err(parse_error(
                line_no,
                line.trim_end().chars().count() + 1,
                format!("expected {cols} entries, found {count}"),
            ));
        }
    }
    if let Some((line_no, line)) = lines.next() {
        let col = tokens(line).next().map_or(1, |(c, _)| c);
        return Err(parse_error(
            line_no,
            col,
            format!("unexpected content after the {rows}x{cols} body"),
        ));
    }
    Matrix::from_entries(rows, cols, entries)
}

/// Reads a vector from a matrix file holding a single column or a single row.
pub fn parse_vector_file(text: &str) -> Result<Vector> {
    let m = parse_matrix_file(text)?;
    match m.shape() {
        (_, 1) => Ok(m.column(0)),
        (1, _) => Ok(Vector::new(m.row(0).to_vec())),
        (rows, cols) => Err(parse_error(
            1,
            1,
            format!("expected a single row or column, found {rows}x{cols}"),
        )),
    }
}

pub fn render_matrix_file(m: &Matrix) -> String {
    format!("{} {}\n{}", m.rows(), m.cols(), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat;

    fn location(text: &str) -> (usize, usize) {
        match parse_matrix_file(text) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_identity() {
        assert_eq!(
            parse_matrix_file("2 2\n1 0\n0 1").unwrap(),
            Matrix::identity(2)
        );
    }

    #[test]
    fn parses_fractions() {
        let m = parse_matrix_file("1 3\n1/2 -3 0").unwrap();
        assert_eq!(
            m.row(0),
            &[
                Rational::new(1, 2).unwrap(),
                Rational::from(-3),
                Rational::zero()
            ]
        );
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a comment\n\n2 1\n  # another\n5\n\n-6\n# trailing\n";
        assert_eq!(parse_matrix_file(text).unwrap(), mat![[5], [-6]]);
    }

    #[test]
    fn short_row() {
        let err = parse_matrix_file("2 2\n1 2\n3").unwrap_err();
        assert_eq!(location("2 2\n1 2\n3"), (3, 2));
        assert!(err.to_string().contains("expected 2 entries"), "{err}");
    }

    #[test]
    fn error_locations() {
        assert_eq!(location("2 2\n1 2 3\n4 5"), (2, 5));
        assert_eq!(location("1 2\n1 x"), (2, 3));
        assert_eq!(location("1 2\n  1/0 1"), (2, 3));
        assert_eq!(location("2 2\n1 2"), (3, 1));
        assert_eq!(location("1 1\n1\n2"), (3, 1));
        assert_eq!(location("2\n1 2"), (1, 1));
        assert_eq!(location("2 -1\n"), (1, 3));
        assert_eq!(location(""), (1, 1));
        let err = parse_matrix_file("1 1\n3/0").unwrap_err();
        assert!(err.to_string().contains("zero denominator"));
    }

    #[test]
    fn degenerate_shapes() {
        assert_eq!(parse_matrix_file("0 0\n").unwrap(), Matrix::identity(0));
        assert_eq!(parse_matrix_file("0 3").unwrap(), Matrix::zeros(0, 3));
    }

    #[test]
    fn renders_canonically() {
        let m = mat![[1, -2], [0, 4]].scale(&Rational::new(1, 2).unwrap());
        let text = render_matrix_file(&m);
        assert_eq!(text, "2 2\n1/2 -1\n0 2\n");
        assert_eq!(parse_matrix_file(&text).unwrap(), m);
        assert_eq!(render_matrix_file(&Matrix::identity(0)), "0 0\n");
    }

    #[test]
    fn vectors_from_rows_or_columns() {
        let v = Vector::from_ints(&[1, 2, 3]);
        assert_eq!(parse_vector_file("3 1\n1\n2\n3").unwrap(), v);
        assert_eq!(parse_vector_file("1 3\n1 2 3").unwrap(), v);
        assert!(parse_vector_file("2 2\n1 0\n0 1").is_err());
    }
}
