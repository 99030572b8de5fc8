//! Human-readable renderings of reports.

use std::fmt::Write;

use crate::cyclo::CycloInt;
use crate::duality::{CycloMatrix, DualityCertificate};

pub const DEFAULT_APPROX_DIGITS: usize = 6;

fn approx(v: &CycloInt, digits: usize) -> String {
    let a = v.approx().value;
    // avoid printing -0.000000
    let re = if a.re.abs() < 0.5 * 10f64.powi(-(digits as i32)) { 0.0 } else { a.re };
    if a.im.abs() < 1e-9 {
        format!("{re:.digits$}")
    } else {
        format!("{re:.digits$}{:+.digits$}i", a.im)
    }
}

/// One line per entry: `matrix`, `row`, `col`, exact value, approximation.
pub fn matrix_tsv(name: &str, m: &CycloMatrix, digits: usize) -> String {
    let mut out = String::new();
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            writeln!(out, "{name}\t{i}\t{j}\t{v}\t{}", approx(v, digits)).unwrap();
        }
    }
    out
}

/// `Q` and `P` as TSV, with a header line.
pub fn certificate_tables(cert: &DualityCertificate, digits: usize) -> String {
    let mut out = String::from("matrix\trow\tcol\texact\tapprox\n");
    if let Some(q) = &cert.q {
        out.push_str(&matrix_tsv("Q", q, digits));
    }
    if let Some(p) = &cert.p {
        out.push_str(&matrix_tsv("P", p, digits));
    }
    out
}

/// A one-line verdict.
pub fn certificate_summary(cert: &DualityCertificate) -> String {
    format!(
        "{}: {} vs {} ({} mode, |X| = {}): {}",
        if cert.pass { "PASS" } else { "FAIL" },
        cert.scheme,
        cert.dual_scheme,
        match cert.mode {
            crate::duality::Mode::SelfDual => "self",
            crate::duality::Mode::Cross => "cross",
        },
        cert.size,
        cert.status
    )
}
