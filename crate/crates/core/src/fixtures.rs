//! Reference binary parity-check matrices from ordered points of PG(2,2)
//! (window 3) and PG(3,2) (window 4), with their expected verdicts.

use serde::Serialize;

use crate::bmetric::{min_bdist_exhaustive, CodeReport};
use crate::geometry::{validate_ordering, Mode, Ordering};
use crate::gf::FieldSpec;
use crate::linalg::{LinearCode, MatGF};

const PG22: &[(usize, [&str; 3], &[u32])] = &[
    (3, ["011", "110", "001"], &[2, 6, 5]),
    (4, ["0110", "1100", "0011"], &[2, 6, 5, 1]),
    (5, ["01110", "11001", "00101"], &[2, 6, 5, 4, 3]),
    (6, ["011110", "110010", "001011"], &[2, 6, 5, 4, 7, 1]),
    (7, ["0111001", "1100101", "0010111"], &[2, 6, 5, 4, 3, 1, 7]),
];

const PG32: &[(usize, [&str; 4], &[u32])] = &[
    (5, ["11011", "00011", "10100", "00110"], &[10, 8, 3, 13, 12]),
    (7, ["0001011", "1000100", "0100010", "0011110"], &[4, 2, 1, 9, 5, 11, 8]),
    (8, ["11101000", "01001101", "10110100", "11000110"], &[11, 13, 10, 2, 12, 7, 1, 4]),
    (
        10,
        ["1011001110", "0111100101", "0100011111", "1010010111"],
        &[9, 6, 13, 12, 4, 3, 10, 15, 11, 7],
    ),
    (
        13,
        ["1101001011000", "1000110111100", "1100011001111", "0011011111010"],
        &[14, 10, 1, 9, 4, 7, 11, 5, 13, 15, 6, 3, 2],
    ),
    (
        15,
        ["000101001011111", "100010110011011", "010001110111100", "001111010101010"],
        &[4, 2, 1, 9, 5, 11, 6, 7, 8, 3, 14, 15, 10, 13, 12],
    ),
];

/// Column counts of the PG(3,2) matrix read as prefixes.
pub const PG32_PREFIXES: &[usize] = &[4, 6, 9, 11, 12, 14, 15];

fn gf2() -> FieldSpec {
    FieldSpec::prime(2).expect("2 is prime")
}

fn parse_bits(rows: &[&str]) -> MatGF {
    let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.bytes().map(|c| u32::from(c == b'1')).collect()).collect();
    MatGF::from_rows(&gf2(), &rows, rows[0].len()).expect("rectangular")
}

/// Column values with the top row as the most significant bit.
pub fn column_codes(m: &MatGF) -> Vec<u32> {
    (0..m.cols())
        .map(|c| m.column(c).iter().fold(0, |acc, &bit| acc << 1 | bit))
        .collect()
}

/// The PG(2,2) ordering with n columns, 3 <= n <= 7.
pub fn table1(n: usize) -> Option<MatGF> {
    PG22.iter().find(|e| e.0 == n).map(|e| parse_bits(&e.1))
}

/// The PG(3,2) ordering with n columns, n in {5, 7, 8, 10, 13, 15}.
pub fn table2(n: usize) -> Option<MatGF> {
    PG32.iter().find(|e| e.0 == n).map(|e| parse_bits(&e.1))
}

/// The first n columns of the 15-column PG(3,2) ordering.
pub fn table2_prefix(n: usize) -> Option<MatGF> {
    let full = table2(15)?;
    (1..=15).contains(&n).then(|| full.select_columns(&(0..n).collect::<Vec<_>>()).expect("in range"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub validates: bool,
    /// Present when the entry is long enough (n >= 2b + 1) to certify.
    pub d_b: Option<usize>,
    pub is_mds: Option<bool>,
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub matrix: MatGF,
    pub b: usize,
    pub expected: Expected,
    /// Independent copy of the columns, for detecting corrupted entries.
    pub column_codes: Vec<u32>,
}

fn fixture(name: String, matrix: MatGF, b: usize, codes: Vec<u32>) -> Fixture {
    let n = matrix.cols();
    let certify = n > 2 * b;
    Fixture {
        name,
        matrix,
        b,
        expected: Expected {
            validates: true,
            d_b: certify.then_some(2 * b + 1),
            is_mds: certify.then_some(true),
        },
        column_codes: codes,
    }
}

/// Every reference entry: PG(2,2) with b = 2, PG(3,2) with b = 3, and the
/// prefixes of the 15-column PG(3,2) matrix.
pub fn all() -> Vec<Fixture> {
    let mut out = Vec::new();
    for (n, rows, codes) in PG22 {
        out.push(fixture(format!("table1-n{n}"), parse_bits(rows), 2, codes.to_vec()));
    }
    for (n, rows, codes) in PG32 {
        out.push(fixture(format!("table2-n{n}"), parse_bits(rows), 3, codes.to_vec()));
    }
    let full_codes = PG32.last().expect("nonempty").2;
    for &n in PG32_PREFIXES {
        let m = table2_prefix(n).expect("prefix in range");
        out.push(fixture(format!("table2-prefix-n{n}"), m, 3, full_codes[..n].to_vec()));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub passed: bool,
    pub validates: bool,
    pub d_b: Option<usize>,
    pub is_mds: Option<bool>,
    pub detail: String,
    #[serde(skip)]
    pub report: Option<CodeReport>,
}

/// Validates the ordering and, where expected, certifies the code by
/// exhaustive enumeration.
pub fn check(f: &Fixture) -> FixtureOutcome {
    let mut problems = Vec::new();
    if column_codes(&f.matrix) != f.column_codes {
        problems.push("matrix entries differ from the reference columns".to_string());
    }
    let points = (0..f.matrix.cols()).map(|c| f.matrix.column(c)).collect();
    let validates = Ordering::new(f.matrix.field(), f.matrix.rows() - 1, f.b, Mode::Projective, points)
        .map(|o| validate_ordering(&o).ok)
        .unwrap_or(false);
    if validates != f.expected.validates {
        problems.push(format!("validation gave {validates}"));
    }
    let mut report = None;
    if f.expected.d_b.is_some() {
        let code = LinearCode::from_parity(&f.matrix);
        match min_bdist_exhaustive(&code, f.b, 1 << 20) {
            Ok(r) => {
                if Some(r.d_b) != f.expected.d_b || Some(r.is_mds) != f.expected.is_mds {
                    problems.push(format!("d_b = {}, is_mds = {}", r.d_b, r.is_mds));
                }
                report = Some(r);
            }
            Err(e) => problems.push(e.to_string()),
        }
    }
    FixtureOutcome {
        name: f.name.clone(),
        passed: problems.is_empty(),
        validates,
        d_b: report.as_ref().map(|r| r.d_b),
        is_mds: report.as_ref().map(|r| r.is_mds),
        detail: problems.join("; "),
        report,
    }
}

pub fn run_all() -> Vec<FixtureOutcome> {
    all().iter().map(check).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_passes() {
        for o in run_all() {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
    }

    #[test]
    fn names_and_counts() {
        let names: Vec<String> = all().into_iter().map(|f| f.name).collect();
        assert_eq!(names.len(), 5 + 6 + 7);
        assert!(names.contains(&"table1-n7".to_string()));
        assert!(names.contains(&"table2-n15".to_string()));
        assert!(names.contains(&"table2-prefix-n4".to_string()));
    }

    #[test]
    fn single_bit_flips_are_caught() {
        for f in all() {
            for r in 0..f.matrix.rows() {
                for c in 0..f.matrix.cols() {
                    let mut data = f.matrix.data().to_vec();
                    data[r * f.matrix.cols() + c] ^= 1;
                    let m = MatGF::new(f.matrix.field(), f.matrix.rows(), f.matrix.cols(), data).unwrap();
                    let mutated = Fixture { matrix: m, ..f.clone() };
                    let out = check(&mutated);
                    assert!(!out.passed, "{} flip ({r},{c}) went unnoticed", f.name);
                    assert_eq!(out.name, f.name);
                }
            }
        }
    }
}
