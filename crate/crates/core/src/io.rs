//! Delimited text I/O for view matrices, representations and label files.
//!
//! Rows are samples; fields are separated by commas and/or whitespace.
//! Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::Matrix;

fn parse_error(path: &Path, line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        reason: reason.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses a rectangular numeric table from text. `path` only labels errors.
pub fn parse_matrix(text: &str, path: &Path) -> Result<Matrix> {
    let mut values = Vec::new();
    let mut width: Option<usize> = None;
    let mut rows = 0;
    for (line_no, line) in content_lines(text) {
        let before = values.len();
        for token in line.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let v: f64 = token
                .parse()
                .map_err(|_| parse_error(path, line_no, format!("non-numeric token {token:?}")))?;
            if !v.is_finite() {
                return Err(parse_error(path, line_no, format!("non-finite value {token:?}")));
            }
            values.push(v);
        }
        let count = values.len() - before;
        match width {
            None => width = Some(count),
            Some(w) if w != count => {
                return Err(parse_error(
                    path,
                    line_no,
                    format!("ragged row: expected {w} fields, found {count}"),
                ))
            }
            _ => {}
        }
        rows += 1;
    }
    let cols = width.unwrap_or(0);
    Ok(Matrix::from_row_slice(rows, cols, &values))
}

pub fn load_matrix(path: &Path) -> Result<Matrix> {
    let text = fs::read_to_string(path)?;
    parse_matrix(&text, path)
}

/// Loads one view: `n × d_t`, one sample per row.
pub fn load_view(path: &Path) -> Result<Matrix> {
    let m = load_matrix(path)?;
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(parse_error(path, 0, "view file contains no data"));
    }
    Ok(m)
}

/// Writes a matrix with full round-trip precision, space-separated.
pub fn save_matrix(path: &Path, m: &Matrix) -> Result<()> {
    let mut out = String::with_capacity(m.nrows() * m.ncols() * 24);
    for row in m.row_iter() {
        let mut first = true;
        for v in row.iter() {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v:e}").expect("write to String");
        }
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn load_labels(path: &Path) -> Result<Vec<usize>> {
    let text = fs::read_to_string(path)?;
    content_lines(&text)
        .map(|(line_no, line)| {
            line.parse::<usize>().map_err(|_| {
                parse_error(path, line_no, format!("expected a nonnegative integer label, got {line:?}"))
            })
        })
        .collect()
}

pub fn save_labels(path: &Path, labels: &[usize]) -> Result<()> {
    let mut out = String::with_capacity(labels.len() * 3);
    for l in labels {
        writeln!(out, "{l}").expect("write to String");
    }
    fs::write(path, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::gaussian_matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parses_small_table() {
        let m = parse_matrix("1 2\n3,4\n# note\n\n5 , 6\n", Path::new("x")).unwrap();
        assert_eq!(m, Matrix::from_row_slice(3, 2, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]));
    }

    #[test]
    fn ragged_row_reports_line() {
        let err = parse_matrix("1 2\n3 4\n5\n", Path::new("v.txt")).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_numeric_reports_line() {
        let err = parse_matrix("1 2\nx 4\n", Path::new("v.txt")).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn matrix_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.txt");
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = gaussian_matrix(&mut rng, 7, 4) * 1e3;
        save_matrix(&path, &m).unwrap();
        let back = load_view(&path).unwrap();
        assert!((back - m).amax() <= 1e-12);
    }

    #[test]
    fn labels_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("labels.txt");
        save_labels(&path, &[0, 2, 1, 1]).unwrap();
        assert_eq!(load_labels(&path).unwrap(), vec![0, 2, 1, 1]);
        fs::write(&path, "0\n-1\n").unwrap();
        assert!(matches!(load_labels(&path), Err(Error::Parse { line: 2, .. })));
    }
}
