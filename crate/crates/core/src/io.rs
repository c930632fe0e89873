//! File formats: headerless CSV for point sets and distance matrices, and
//! a small JSON schema for simplicial complexes that stores only maximal
//! simplices and rebuilds the closure on load.

use crate::complex::{ComplexError, SimplicialComplex};
use crate::metric::{FiniteMetricSpace, MetricError};
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufReader, BufWriter, Write as _};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("row {row} has {got} fields, expected {expected}")]
    RaggedRow { row: usize, expected: usize, got: usize },
    #[error("row {row}, column {col}: not a finite number")]
    BadNumber { row: usize, col: usize },
    #[error("file holds no rows")]
    EmptyFile,
    #[error("stored max_dim {stored} disagrees with rebuilt closure {rebuilt}")]
    DimensionMismatch { stored: usize, rebuilt: usize },
}

/// Reads a headerless CSV of floats, one point per row. All rows must have
/// the same width and every entry must be finite.
pub fn read_points_csv(path: impl AsRef<Path>) -> Result<Vec<Vec<f64>>, IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path.as_ref())?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let mut row = Vec::with_capacity(record.len());
        for (j, field) in record.iter().enumerate() {
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|_| IoError::BadNumber { row: i, col: j })?;
            if !v.is_finite() {
                return Err(IoError::BadNumber { row: i, col: j });
            }
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(IoError::RaggedRow { row: i, expected: first.len(), got: row.len() });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(IoError::EmptyFile);
    }
    Ok(rows)
}

pub fn write_points_csv(path: impl AsRef<Path>, rows: &[Vec<f64>]) -> Result<(), IoError> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path.as_ref())?;
    for row in rows {
        writer.write_record(row.iter().map(|v| format_float(*v)))?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads a square symmetric distance matrix from headerless CSV and
/// validates the metric axioms.
pub fn read_matrix_csv(path: impl AsRef<Path>) -> Result<FiniteMetricSpace, IoError> {
    let rows = read_points_csv(path)?;
    Ok(FiniteMetricSpace::from_matrix(rows)?)
}

pub fn write_matrix_csv(path: impl AsRef<Path>, ms: &FiniteMetricSpace) -> Result<(), IoError> {
    write_points_csv(path, &ms.matrix_rows())
}

/// Round-trips f64 exactly while keeping simple values short.
fn format_float(v: f64) -> String {
    let short = format!("{v}");
    if short.parse::<f64>() == Ok(v) {
        short
    } else {
        format!("{v:?}")
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    max_dim: usize,
    simplices: Vec<Vec<u32>>,
}

/// Writes a complex as its maximal simplices plus the dimension, pretty
/// printed for diffability.
pub fn write_complex_json(path: impl AsRef<Path>, k: &SimplicialComplex) -> Result<(), IoError> {
    let file = ComplexFile {
        max_dim: k.max_dim(),
        simplices: k.maximal_simplices(),
    };
    let mut out = BufWriter::new(File::create(path.as_ref())?);
    serde_json::to_writer_pretty(&mut out, &file)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

/// Reads a complex written by `write_complex_json`, rebuilding the closure
/// from the maximal simplices and validating the recorded dimension.
pub fn read_complex_json(path: impl AsRef<Path>) -> Result<SimplicialComplex, IoError> {
    let file: ComplexFile = serde_json::from_reader(BufReader::new(File::open(path.as_ref())?))?;
    let k = SimplicialComplex::from_maximal_simplices(file.simplices)?;
    if k.max_dim() != file.max_dim {
        return Err(IoError::DimensionMismatch { stored: file.max_dim, rebuilt: k.max_dim() });
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn scratch(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("recon-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        dir.join(name)
    }

    #[test]
    fn points_round_trip() {
        let rows = vec![
            vec![0.0, 1.5, -2.25],
            vec![std::f64::consts::PI, 1e-300, 3.0],
        ];
        let path = scratch("points.csv");
        write_points_csv(&path, &rows).unwrap();
        let back = read_points_csv(&path).unwrap();
        assert_eq!(back, rows);
    }

    #[test]
    fn points_reject_ragged_and_empty() {
        let path = scratch("ragged.csv");
        std::fs::write(&path, "1.0,2.0\n3.0\n").unwrap();
        assert!(matches!(read_points_csv(&path), Err(IoError::RaggedRow { row: 1, .. })));
        let path = scratch("empty.csv");
        std::fs::write(&path, "").unwrap();
        assert!(matches!(read_points_csv(&path), Err(IoError::EmptyFile)));
        let path = scratch("nan.csv");
        std::fs::write(&path, "1.0,nan\n").unwrap();
        assert!(matches!(read_points_csv(&path), Err(IoError::BadNumber { row: 0, col: 1 })));
    }

    #[test]
    fn matrix_round_trip_validates() {
        let ms = FiniteMetricSpace::from_matrix(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 1.5],
            vec![2.0, 1.5, 0.0],
        ])
        .unwrap();
        let path = scratch("matrix.csv");
        write_matrix_csv(&path, &ms).unwrap();
        let back = read_matrix_csv(&path).unwrap();
        assert_eq!(back, ms);

        let bad = scratch("asym.csv");
        std::fs::write(&bad, "0,1\n2,0\n").unwrap();
        assert!(read_matrix_csv(&bad).is_err());
    }

    #[test]
    fn complex_round_trip_rebuilds_closure() {
        let k = SimplicialComplex::from_maximal_simplices(vec![vec![0, 1, 2], vec![2, 3]])
            .unwrap();
        let path = scratch("complex.json");
        write_complex_json(&path, &k).unwrap();
        let back = read_complex_json(&path).unwrap();
        assert_eq!(back, k);
        assert_eq!(back.counts(), vec![4, 4, 1]);

        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("\"max_dim\": 2"));
    }

    #[test]
    fn complex_rejects_dimension_lie() {
        let path = scratch("lie.json");
        std::fs::write(&path, r#"{"max_dim": 3, "simplices": [[0,1,2]]}"#).unwrap();
        assert!(matches!(
            read_complex_json(&path),
            Err(IoError::DimensionMismatch { stored: 3, rebuilt: 2 })
        ));
    }
}
