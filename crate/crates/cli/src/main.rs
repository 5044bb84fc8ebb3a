//! `bsymbol`: construct, verify and certify b-symbol codes.

mod args;
mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use serde_json::json;

use bsymbol::bmetric::{feasible_2b1, mds_check, CodeReport};
use bsymbol::constacyclic::build_primitive_family;
use bsymbol::fixtures;
use bsymbol::geometry::{
    concat_orderings, greedy_order, greedy_vectors, order_pg2, shared_prefix_bases, tile_basis, validate_ordering,
    Mode, Ordering, ValidationReport,
};
use bsymbol::gf::FieldSpec;
use bsymbol::linalg::{LinearCode, MatGF};

use args::{Cli, Command, Family, FamilyArgs, Format, SearchArgs};
use output::{print_report, print_validation};

/// Certified and OK.
const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
/// Completed but not certified.
const EXIT_UNCERTIFIED: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Construct { family, search, out } => construct(cli.format, family, search, out),
        Command::Verify { file, b, mode, search } => verify(cli.format, file, *b, *mode, search),
        Command::Mindist { file, b, generator, search } => mindist(cli.format, file, *b, *generator, search),
        Command::Order { family, search, out } => order(cli.format, family, search, out.as_deref()),
        Command::Tables => tables(cli.format),
        Command::Feasible { n, b, q } => feasible(cli.format, *n, *b, *q),
    }
}

fn field_of(fam: &FamilyArgs) -> Result<FieldSpec> {
    let lit = fam.q.as_deref().ok_or_else(|| anyhow!("--q is required"))?;
    lit.parse().with_context(|| format!("bad field `{lit}`"))
}

fn need(v: Option<usize>, flag: &str) -> Result<usize> {
    v.ok_or_else(|| anyhow!("--{flag} is required for this family"))
}

fn build_ordering(fam: &FamilyArgs, search: &SearchArgs) -> Result<Ordering> {
    let field = field_of(fam)?;
    let n = need(fam.n, "n")?;
    let o = match fam.family {
        Family::Pg2 => {
            if fam.b.is_some_and(|b| b != 2) {
                bail!("the pg2 family has b = 2");
            }
            order_pg2(&field, n)?
        }
        Family::Greedy => {
            let b = need(fam.b, "b")?;
            greedy_order(fam.r.unwrap_or(b), &field, b, n, fam.seed, search.budget_nodes)?
        }
        Family::Vectors => greedy_vectors(need(fam.b, "b")?, &field, n, fam.seed, search.budget_nodes)?,
        Family::Tiling => tile_basis(need(fam.b, "b")?, &field, n)?,
        Family::Concat => {
            let b = need(fam.b, "b")?;
            if b == 0 || n % b != 0 {
                bail!("the concat family needs b | n");
            }
            concat_orderings(&shared_prefix_bases(b, &field, n / b)?)?
        }
        Family::Constacyclic => bail!("the constacyclic family has no point ordering"),
    };
    Ok(o)
}

fn stem(fam: &FamilyArgs, n: usize, b: usize) -> String {
    format!("{}-q{}-n{n}-b{b}", fam.family.as_str(), fam.q.as_deref().unwrap_or("").replace(['^', '/', ','], "_"))
}

fn write(dir: &Path, name: &str, text: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}

fn report_exit(report: &CodeReport, need_mds: bool) -> u8 {
    match (report.certified, report.is_mds || !need_mds) {
        (false, _) => EXIT_UNCERTIFIED,
        (true, true) => EXIT_OK,
        (true, false) => EXIT_ERROR,
    }
}

fn construct(format: Format, fam: &FamilyArgs, search: &SearchArgs, out: &Path) -> Result<u8> {
    if fam.family == Family::Constacyclic {
        let field = field_of(fam)?;
        let b = need(fam.b, "b")?;
        let t = build_primitive_family(&field, b, search.w_cap)?;
        if fam.n.is_some_and(|n| n != t.code.n) {
            bail!("the constacyclic family with b = {b} has n = {}", t.code.n);
        }
        let name = stem(fam, t.code.n, b);
        let mut files = vec![
            write(out, &format!("{name}.mat"), &t.code.code.parity_check().to_text())?,
            write(out, &format!("{name}.poly"), &format!("{}\n", t.code.g.to_text()))?,
        ];
        let Some(report) = t.report else {
            eprintln!("no nonzero codeword found with Hamming weight <= {}", search.w_cap);
            return Ok(EXIT_UNCERTIFIED);
        };
        files.push(write(out, &format!("{name}.json"), &report.to_json())?);
        print_report(format, &report, &files);
        return Ok(report_exit(&report, true));
    }
    let o = build_ordering(fam, search)?;
    let code = LinearCode::from_parity(&o.to_parity());
    let report = mds_check(&code, o.b(), search.strategy())?;
    let name = stem(fam, o.len(), o.b());
    let files = vec![
        write(out, &format!("{name}.mat"), &o.to_parity().to_text())?,
        write(out, &format!("{name}.ord"), &o.to_text())?,
        write(out, &format!("{name}.json"), &report.to_json())?,
    ];
    print_report(format, &report, &files);
    Ok(report_exit(&report, true))
}

enum Input {
    Matrix(MatGF),
    Ordering(Ordering),
}

fn read_input(file: &Path) -> Result<Input> {
    let text = fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    let ctx = || format!("parse error in {}", file.display());
    if first.split_whitespace().next() == Some("pg") {
        Ok(Input::Ordering(Ordering::from_text(&text).with_context(ctx)?))
    } else {
        Ok(Input::Matrix(MatGF::from_text(&text).with_context(ctx)?))
    }
}

fn verify(format: Format, file: &Path, b: Option<usize>, mode: Option<Mode>, search: &SearchArgs) -> Result<u8> {
    let (o, h) = match read_input(file)? {
        Input::Ordering(o) => {
            if b.is_some_and(|b| b != o.b()) || mode.is_some_and(|m| m != o.mode()) {
                bail!("--b/--mode disagree with the ordering header");
            }
            let h = o.to_parity();
            (o, h)
        }
        Input::Matrix(h) => {
            let b = b.ok_or_else(|| anyhow!("--b is required for a matrix file"))?;
            let mode = mode.unwrap_or(Mode::Projective);
            let r = match mode {
                Mode::Projective => h.rows().checked_sub(1).ok_or_else(|| anyhow!("matrix has no rows"))?,
                Mode::Vector => h.rows(),
            };
            let points = (0..h.cols()).map(|c| h.column(c)).collect();
            (Ordering::new(h.field(), r, b, mode, points)?, h)
        }
    };
    let validation: ValidationReport = validate_ordering(&o);
    let code = LinearCode::from_parity(&h);
    let report = mds_check(&code, o.b(), search.strategy())?;
    print_validation(format, &validation, &report);
    if !validation.ok {
        return Ok(EXIT_ERROR);
    }
    Ok(report_exit(&report, false))
}

fn mindist(format: Format, file: &Path, b: usize, generator: bool, search: &SearchArgs) -> Result<u8> {
    let code = match read_input(file)? {
        Input::Ordering(o) => LinearCode::from_parity(&o.to_parity()),
        Input::Matrix(m) if generator => LinearCode::from_generator(&m),
        Input::Matrix(m) => LinearCode::from_parity(&m),
    };
    let report = mds_check(&code, b, search.strategy())?;
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => println!("{}", report.d_b),
    }
    Ok(report_exit(&report, false))
}

fn order(format: Format, fam: &FamilyArgs, search: &SearchArgs, out: Option<&Path>) -> Result<u8> {
    let o = build_ordering(fam, search)?;
    let validation = validate_ordering(&o);
    match out {
        Some(dir) => {
            let path = write(dir, &format!("{}.ord", stem(fam, o.len(), o.b())), &o.to_text())?;
            match format {
                Format::Json => println!(
                    "{}",
                    json!({ "file": path, "n": o.len(), "validation": validation })
                ),
                Format::Text => println!("wrote {} ({} points, valid: {})", path.display(), o.len(), validation.ok),
            }
        }
        None => print!("{}", o.to_text()),
    }
    Ok(if validation.ok { EXIT_OK } else { EXIT_ERROR })
}

fn tables(format: Format) -> Result<u8> {
    let outcomes = fixtures::run_all();
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&outcomes)?),
        Format::Text => {
            for o in &outcomes {
                let cert = match (o.d_b, o.is_mds) {
                    (Some(d), Some(mds)) => format!(" d_b = {d}, MDS: {mds}"),
                    _ => String::new(),
                };
                let status = if o.passed { "PASS" } else { "FAIL" };
                let detail = if o.detail.is_empty() { String::new() } else { format!(" ({})", o.detail) };
                println!("{status} {}: validates = {}{cert}{detail}", o.name, o.validates);
            }
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        eprintln!("{failed} of {} fixtures failed", outcomes.len());
        return Ok(EXIT_ERROR);
    }
    Ok(EXIT_OK)
}

fn feasible(format: Format, n: u64, b: u64, q: u64) -> Result<u8> {
    let ok = feasible_2b1(n, b, q);
    match format {
        Format::Json => println!("{}", json!({ "n": n, "b": b, "q": q, "feasible": ok })),
        Format::Text => println!("{}", if ok { "feasible" } else { "infeasible" }),
    }
    Ok(EXIT_OK)
}
