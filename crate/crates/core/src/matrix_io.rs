//! CSV interchange for distance matrices.
//!
//! Format: the first record holds the `n` point labels; the following `n`
//! records hold the full `n x n` matrix. Values round-trip exactly because
//! writing uses the shortest decimal representation that reparses to the
//! same float.
//!
//! The parser rejects what a distance table can never contain: missing or
//! unparseable fields, negative or non-finite values, duplicate labels, and
//! asymmetry beyond `tol_abs` (a file claiming to be a distance sample gets
//! the symmetry check up front; in-memory tables keep asymmetry as an axiom
//! violation instead). A nonzero diagonal or an off-diagonal zero is left
//! for [`crate::check_point_axioms`] to report.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::distances::{DistanceMatrix, PointSet};
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

pub fn read_matrix_csv(path: impl AsRef<Path>, tol: &Tolerances) -> Result<DistanceMatrix> {
    let file = File::open(path.as_ref())?;
    parse_matrix_csv(file, tol)
}

pub fn parse_matrix_csv(reader: impl Read, tol: &Tolerances) -> Result<DistanceMatrix> {
    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = csv_reader.records();

    let header = match records.next() {
        Some(record) => record.map_err(|e| Error::Malformed(format!("csv: {e}")))?,
        None => return Err(Error::Malformed("empty file; expected a label row".into())),
    };
    let labels: Vec<String> = header.iter().map(str::to_owned).collect();
    let n = labels.len();
    let points = PointSet::new(labels)?;

    let mut entries = Vec::with_capacity(n * n);
    let mut row_count = 0usize;
    for record in records {
        let record = record.map_err(|e| Error::Malformed(format!("csv: {e}")))?;
        if record.len() == 1 && record.get(0) == Some("") {
            continue; // trailing blank line
        }
        if record.len() != n {
            return Err(Error::Malformed(format!(
                "row {row_count} has {} fields, expected {n}",
                record.len()
            )));
        }
        for (col, field) in record.iter().enumerate() {
            let value: f64 = field.parse().map_err(|_| {
                Error::Malformed(format!("unparseable value `{field}` at ({row_count}, {col})"))
            })?;
            entries.push(value);
        }
        row_count += 1;
    }
    if row_count != n {
        return Err(Error::Malformed(format!("expected {n} matrix rows, got {row_count}")));
    }

    let d = DistanceMatrix::from_flat(points, entries)?;
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (d.get(i, j), d.get(j, i));
            if (a - b).abs() > tol.tol_abs {
                return Err(Error::Malformed(format!(
                    "asymmetric entries at ({i}, {j}): {a} vs {b}"
                )));
            }
        }
    }
    Ok(d)
}

pub fn write_matrix_csv(path: impl AsRef<Path>, d: &DistanceMatrix) -> Result<()> {
    let mut file = File::create(path.as_ref())?;
    file.write_all(matrix_to_csv_string(d).as_bytes())?;
    Ok(())
}

pub fn matrix_to_csv_string(d: &DistanceMatrix) -> String {
    let n = d.n();
    let mut out = String::new();
    out.push_str(&d.points().labels().join(","));
    out.push('\n');
    for i in 0..n {
        for j in 0..n {
            if j > 0 {
                out.push(',');
            }
            out.push_str(&format!("{}", d.get(i, j)));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn round_trip_is_exact() {
        let source = "a,b,c\n0,0.1,4e-3\n0.1,0,0.30000000000000004\n0.004,0.30000000000000004,0\n";
        let d = parse_matrix_csv(source.as_bytes(), &tol()).unwrap();
        assert_eq!(d.points().labels(), &["a", "b", "c"]);
        assert_eq!(d.get(0, 1), 0.1);
        assert_eq!(d.get(0, 2), 0.004);
        assert_eq!(d.get(1, 2), 0.1 + 0.2);
        let rewritten = matrix_to_csv_string(&d);
        let reparsed = parse_matrix_csv(rewritten.as_bytes(), &tol()).unwrap();
        assert_eq!(reparsed, d);
    }

    #[test]
    fn rejects_malformed_files() {
        let cases: &[(&str, &str)] = &[
            ("", "empty"),
            ("a,b\n0,1\n", "missing row"),
            ("a,b\n0,1\n1,0\n0,1\n", "extra row"),
            ("a,b\n0,1,2\n1,0\n", "ragged row"),
            ("a,b\n0,x\n1,0\n", "unparseable"),
            ("a,b\n0,-1\n-1,0\n", "negative"),
            ("a,b\n0,inf\ninf,0\n", "non-finite"),
            ("a,a\n0,1\n1,0\n", "duplicate labels"),
            ("a,b\n0,1\n2,0\n", "asymmetric"),
        ];
        for (source, what) in cases {
            let result = parse_matrix_csv(source.as_bytes(), &tol());
            assert!(
                matches!(result, Err(Error::Malformed(_))),
                "{what}: expected Malformed, got {result:?}"
            );
        }
    }

    #[test]
    fn asymmetry_within_tolerance_loads() {
        let source = "a,b\n0,1\n1.0000000000001,0\n";
        let loose = Tolerances { tol_abs: 1e-9, ..Tolerances::default() };
        assert!(parse_matrix_csv(source.as_bytes(), &loose).is_ok());
    }

    #[test]
    fn axiom_violations_still_load() {
        // nonzero diagonal and zero off-diagonal are axiom business, not parser business
        let source = "a,b\n5,0\n0,0\n";
        let d = parse_matrix_csv(source.as_bytes(), &tol()).unwrap();
        assert_eq!(d.get(0, 0), 5.0);
        assert_eq!(d.get(0, 1), 0.0);
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join(format!("metric-forge-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("matrix.csv");
        let source = "a,b\n0,2.5\n2.5,0\n";
        let d = parse_matrix_csv(source.as_bytes(), &tol()).unwrap();
        write_matrix_csv(&path, &d).unwrap();
        let reloaded = read_matrix_csv(&path, &tol()).unwrap();
        assert_eq!(reloaded, d);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
