//! Label map serialization.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use superpix::{Image, LabelMap};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelFormat {
    /// One text row per image row, comma-separated decimal labels.
    Csv,
    /// Binary P5, maxval 255, one byte per label.
    Pgm,
}

pub fn encode_csv(labels: &LabelMap) -> String {
    let mut out = String::with_capacity(labels.len() * 4);
    for row in labels.pixels().chunks_exact(labels.width()) {
        for (i, l) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{l}").expect("write to String");
        }
        out.push('\n');
    }
    out
}

pub fn parse_csv(text: &str) -> Result<LabelMap, String> {
    let mut width = None;
    let mut data = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let row: Vec<u32> = line
            .split(',')
            .map(|v| v.trim().parse().map_err(|e| format!("line {}: {e}", n + 1)))
            .collect::<Result<_, _>>()?;
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(format!(
                    "line {}: expected {w} labels, found {}",
                    n + 1,
                    row.len()
                ))
            }
            _ => {}
        }
        data.extend(row);
    }
    let width = width.ok_or("empty label file")?;
    let height = data.len() / width;
    Image::new(width, height, data).map_err(|e| e.to_string())
}

/// Returns `None` when some label does not fit in a byte.
pub fn encode_pgm(labels: &LabelMap) -> Option<Vec<u8>> {
    let max = labels.pixels().iter().copied().max().unwrap_or(0);
    if max > 255 {
        return None;
    }
    let mut out = format!("P5\n{} {}\n255\n", labels.width(), labels.height()).into_bytes();
    out.extend(labels.pixels().iter().map(|&l| l as u8));
    Some(out)
}

pub fn write_labels(labels: &LabelMap, path: &Path, format: LabelFormat) -> Result<(), CliError> {
    let bytes = match format {
        LabelFormat::Csv => encode_csv(labels).into_bytes(),
        LabelFormat::Pgm => encode_pgm(labels).ok_or_else(|| CliError::LabelCapacity {
            path: path.to_owned(),
            max_label: labels.pixels().iter().copied().max().unwrap_or(0),
        })?,
    };
    fs::write(path, bytes).map_err(|source| CliError::Output {
        path: path.to_owned(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn csv_two_by_two() {
        let l = Image::new(2, 2, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(encode_csv(&l), "0,1\n2,3\n");
    }

    #[test]
    fn pgm_single_pixel() {
        let l = Image::new(1, 1, vec![0]).unwrap();
        assert_eq!(encode_pgm(&l).unwrap(), b"P5\n1 1\n255\n\0");
    }

    #[test]
    fn pgm_capacity_error_writes_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("labels.pgm");
        let l = Image::new(300, 1, (0..300).collect()).unwrap();
        let err = write_labels(&l, &path, LabelFormat::Pgm).unwrap_err();
        assert!(matches!(
            err,
            CliError::LabelCapacity { max_label: 299, .. }
        ));
        assert_eq!(err.exit_code(), 2);
        assert!(!path.exists());
    }

    #[test]
    fn csv_parse_rejects_ragged_rows() {
        assert!(parse_csv("0,1\n2\n").is_err());
        assert!(parse_csv("").is_err());
        assert!(parse_csv("a,b\n").is_err());
    }

    proptest! {
        #[test]
        fn csv_roundtrip(w in 1usize..12, h in 1usize..12, raw in proptest::collection::vec(any::<u32>(), 144)) {
            let l = Image::from_fn(w, h, |x, y| raw[y * 12 + x]);
            prop_assert_eq!(parse_csv(&encode_csv(&l)).unwrap(), l);
        }
    }
}
