use std::path::PathBuf;

use serde_json::json;

use bsymbol::bmetric::CodeReport;
use bsymbol::geometry::ValidationReport;

use crate::args::Format;

fn report_text(r: &CodeReport) -> String {
    let d_h = r.d_h.map_or_else(|| "unknown".to_string(), |d| d.to_string());
    let status = if r.certified { "certified" } else { "not certified" };
    format!(
        "[n, k] = [{}, {}] over GF({}), b = {}\nd_b = {} ({status}, {})\nd_H = {d_h}\nM = {}, bound = {}\nMDS: {}",
        r.n,
        r.k,
        r.q,
        r.b,
        r.d_b,
        serde_json::to_value(r.method).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default(),
        r.m,
        r.singleton_m,
        if r.is_mds { "yes" } else { "no" },
    )
}

pub fn print_report(format: Format, r: &CodeReport, files: &[PathBuf]) {
    match format {
        Format::Json => println!("{}", json!({ "report": r, "files": files })),
        Format::Text => {
            println!("{}", report_text(r));
            for f in files {
                println!("wrote {}", f.display());
            }
        }
    }
}

pub fn print_validation(format: Format, v: &ValidationReport, r: &CodeReport) {
    match format {
        Format::Json => println!("{}", json!({ "validation": v, "report": r })),
        Format::Text => {
            println!("ordering valid: {}", v.ok);
            if let Some(w) = v.first_bad_window {
                println!("first dependent window starts at {w}");
            }
            if let Some((i, j)) = v.duplicate_pair {
                println!("points {i} and {j} coincide");
            }
            if v.too_short {
                println!("sequence is shorter than one window");
            }
            println!("{}", report_text(r));
            println!("{}", r.to_json());
        }
    }
}
