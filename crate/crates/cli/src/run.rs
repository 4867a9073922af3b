use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use amn_core::algebra::{format_rational, parse_rational};
use amn_core::field::{
    cubic_grid, sample_point, FamilyLabel, FieldSample, RootSign, ZeroModeField,
};
use amn_core::growth::coefficient_growth;
use amn_core::recurrence::{
    build_amn_polynomial, closed_form_extremes, instantiate_solution, verify_system,
    PolynomialRecord, SolutionRecord,
};
use amn_core::roots::{
    predicted_roots, rational_root_oracle, verify_factorization_of, verify_order, VerifyOptions,
};
use amn_core::Rational;

use crate::args::{
    BenchArgs, FieldArgs, Format, ModeArgs, OutputArgs, PolyArgs, RootsArgs, Selector, SignArg,
    VerifyArgs,
};

pub const MAX_POLY_ORDER: usize = 500;
pub const MAX_FIELD_ORDER: usize = 50;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<amn_core::Error> for CliError {
    fn from(e: amn_core::Error) -> Self {
        use amn_core::Error as E;
        match e {
            E::PolynomialOrder | E::SeedOrder | E::ParseRational(_) => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Failed(e.to_string()),
        }
    }
}

type CliResult = Result<(), CliError>;

fn check_poly_order(m: usize) -> Result<(), CliError> {
    if m < 1 {
        return Err(amn_core::Error::PolynomialOrder.into());
    }
    if m > MAX_POLY_ORDER {
        return Err(CliError::Usage(format!(
            "m must be at most {MAX_POLY_ORDER}"
        )));
    }
    Ok(())
}

fn check_field_order(m: usize) -> Result<(), CliError> {
    if m > MAX_FIELD_ORDER {
        return Err(CliError::Usage(format!(
            "field operations support m ≤ {MAX_FIELD_ORDER}"
        )));
    }
    Ok(())
}

fn emit(out: &OutputArgs, content: &str) -> CliResult {
    match &out.output {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn to_csv<I, R>(header: &[&str], rows: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut writer = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| CliError::Io(e.to_string());
    writer.write_record(header).map_err(io_err)?;
    for row in rows {
        writer.write_record(row).map_err(io_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

pub fn poly(args: &PolyArgs) -> CliResult {
    check_poly_order(args.m)?;
    let poly = build_amn_polynomial(args.m)?;
    let extremes = closed_form_extremes(args.m)?;
    let record = PolynomialRecord::new(&poly, &extremes);
    let content = match args.out.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&record)?,
        Format::Csv => to_csv(
            &["power", "rational", "integer"],
            record
                .rational_coefficients
                .iter()
                .zip(record.integer_coefficients.to_decimal_strings())
                .enumerate()
                .map(|(k, (r, i))| [k.to_string(), r.clone(), i]),
        )?,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "m = {}", poly.m);
            let _ = writeln!(s, "P(t) = {}", poly.integer);
            let _ = writeln!(
                s,
                "rational form = ({}) * P(t)",
                format_rational(&poly.scale.recip())
            );
            let _ = writeln!(s, "c_m = {}", record.c_m);
            let _ = writeln!(s, "d_m = {}", record.d_m);
            s
        }
    };
    emit(&args.out, &content)
}

#[derive(Debug, Serialize)]
struct RootsRecord {
    m: usize,
    predicted: Vec<String>,
    found: Vec<String>,
    factorization_ok: bool,
    agree: bool,
}

pub fn roots(args: &RootsArgs) -> CliResult {
    check_poly_order(args.m)?;
    let poly = build_amn_polynomial(args.m)?;
    let predicted = predicted_roots(args.m)?;
    let found = rational_root_oracle(&poly.integer)?;
    let factorization = verify_factorization_of(args.m, &poly.rational);
    let record = RootsRecord {
        m: args.m,
        predicted: predicted.roots.iter().map(format_rational).collect(),
        found: found.iter().map(format_rational).collect(),
        factorization_ok: factorization.is_ok(),
        agree: found == predicted.roots,
    };
    let content = match args.out.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&record)?,
        Format::Csv => to_csv(
            &["j", "predicted", "found"],
            (0..record.predicted.len().max(record.found.len())).map(|i| {
                [
                    (i + 1).to_string(),
                    record.predicted.get(i).cloned().unwrap_or_default(),
                    record.found.get(i).cloned().unwrap_or_default(),
                ]
            }),
        )?,
        Format::Text => format!(
            "m = {}\npredicted: {}\nfound:     {}\n",
            record.m,
            record.predicted.join(", "),
            record.found.join(", ")
        ),
    };
    emit(&args.out, &content)?;
    if let Err(e) = factorization {
        return Err(CliError::Failed(format!("factorization check failed: {e}")));
    }
    if !record.agree {
        return Err(CliError::Failed(format!(
            "rational roots differ from the predicted set for m = {}",
            args.m
        )));
    }
    Ok(())
}

pub fn verify(args: &VerifyArgs) -> CliResult {
    check_poly_order(args.m)?;
    let options = VerifyOptions {
        chain: args.chain,
        oracle: args.oracle,
        tamper: args.tamper,
    };
    let report = verify_order(args.m, options)?;
    let content = match args.out.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&report)?,
        Format::Csv => to_csv(
            &["check", "passed", "detail"],
            report.checks.iter().map(|c| {
                [
                    c.name.clone(),
                    c.passed.to_string(),
                    c.detail.clone().unwrap_or_default(),
                ]
            }),
        )?,
        Format::Text => {
            let mut s = format!("m = {}\nroots: {}\n", report.m, report.predicted.join(", "));
            for c in &report.checks {
                let status = if c.passed { "pass" } else { "FAIL" };
                let _ = write!(s, "{status}  {}", c.name);
                if let Some(detail) = &c.detail {
                    let _ = write!(s, ": {detail}");
                }
                s.push('\n');
            }
            s
        }
    };
    emit(&args.out, &content)?;
    match report.first_failure() {
        None => Ok(()),
        Some(c) => Err(CliError::Failed(format!(
            "check `{}` failed: {}",
            c.name,
            c.detail.as_deref().unwrap_or("no detail")
        ))),
    }
}

fn resolve(m: usize, selector: &Selector) -> Result<(Rational, Option<FamilyLabel>), CliError> {
    if let Some(text) = &selector.b0 {
        return Ok((parse_rational(text)?, None));
    }
    let label = match selector.j {
        Some(j) => {
            if j < 1 || j > m + 1 {
                return Err(CliError::Usage(format!(
                    "j must lie in 1…{} for m = {m}",
                    m + 1
                )));
            }
            let sign = match selector.sign {
                SignArg::Plus => RootSign::Plus,
                SignArg::Minus => RootSign::Minus,
            };
            FamilyLabel { j, sign }
        }
        None => FamilyLabel {
            j: m + 1,
            sign: RootSign::Plus,
        },
    };
    Ok((label.b0(), Some(label)))
}

#[derive(Debug, Serialize)]
struct ModeRecord {
    #[serde(flatten)]
    solution: SolutionRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<FamilyLabel>,
    alpha: String,
    exact: bool,
}

pub fn mode(args: &ModeArgs) -> CliResult {
    check_field_order(args.m)?;
    let (b0, label) = resolve(args.m, &args.selector)?;
    let solution = instantiate_solution(args.m, &b0);
    let failing = verify_system(&solution).iter().position(|r| !r.is_zero());
    let record = ModeRecord {
        solution: solution.to_record(),
        label,
        alpha: format_rational(&(Rational::from_integer(3.into()) * &b0)),
        exact: failing.is_none(),
    };
    let content = match args.out.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&record)?,
        Format::Csv => to_csv(
            &["n", "a", "b"],
            record
                .solution
                .a
                .iter()
                .zip(&record.solution.b)
                .enumerate()
                .map(|(n, (a, b))| [n.to_string(), a.clone(), b.clone()]),
        )?,
        Format::Text => {
            let mut s = format!("m = {}\nb0 = {}\n", record.solution.m, record.solution.b0);
            for (n, (a, b)) in record.solution.a.iter().zip(&record.solution.b).enumerate() {
                let _ = writeln!(s, "a_{n} = {a}    b_{n} = {b}");
            }
            let _ = writeln!(s, "exact: {}", record.exact);
            s
        }
    };
    emit(&args.out, &content)?;
    match failing {
        None => Ok(()),
        Some(eq) => Err(CliError::Failed(format!(
            "b0 = {} does not solve the system: equation ({}) fails",
            record.solution.b0,
            eq + 1
        ))),
    }
}

pub fn field(args: &FieldArgs) -> CliResult {
    check_field_order(args.m)?;
    if args.grid == 0 || !(args.extent.is_finite() && args.extent >= 0.0) {
        return Err(CliError::Usage(
            "grid must be positive and extent finite".into(),
        ));
    }
    if args.step.is_nan() || args.step <= 0.0 {
        return Err(CliError::Usage("step must be positive".into()));
    }
    let (b0, label) = resolve(args.m, &args.selector)?;
    let field = match label {
        Some(label) => ZeroModeField::member(args.m, label)?,
        None => ZeroModeField::new(instantiate_solution(args.m, &b0))?,
    };
    let samples: Vec<FieldSample> = cubic_grid(args.grid, args.extent)
        .into_par_iter()
        .map(|x| sample_point(&field, x, args.step))
        .collect::<Result<_, _>>()?;
    let content = match args.out.format.unwrap_or(Format::Csv) {
        Format::Csv => to_csv(
            &FieldSample::HEADER,
            samples.iter().map(FieldSample::to_record),
        )?,
        Format::Json => to_json(&samples)?,
        Format::Text => {
            let max = samples
                .iter()
                .map(|s| s.residual / s.psi.norm())
                .fold(0.0, f64::max);
            format!(
                "m = {}\nb0 = {}\npoints = {}\nmax relative residual = {max:e}\n",
                args.m,
                format_rational(&b0),
                samples.len()
            )
        }
    };
    emit(&args.out, &content)
}

pub fn bench(args: &BenchArgs) -> CliResult {
    check_poly_order(args.m_max)?;
    let rows = coefficient_growth(args.m_max)?;
    let content = match args.out.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&rows)?,
        Format::Csv => to_csv(
            &["m", "wall_ms", "peak_bits", "rational_peak_bits"],
            rows.iter().map(|r| {
                [
                    r.m.to_string(),
                    r.wall_ms.to_string(),
                    r.peak_bits.to_string(),
                    r.rational_peak_bits.to_string(),
                ]
            }),
        )?,
        Format::Text => {
            let mut s = String::from("    m     wall_ms  peak_bits\n");
            for r in &rows {
                let _ = writeln!(s, "{:>5} {:>11.3} {:>10}", r.m, r.wall_ms, r.peak_bits);
            }
            s
        }
    };
    emit(&args.out, &content)
}
