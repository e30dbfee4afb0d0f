//! JSON and CSV encodings. Big integers are written as decimal strings.

use std::io::Write;

use num_bigint::BigInt;
use pkw_core::driver::{KernelReport, ReportStatus};
use pkw_core::eval::{LinearForm, Point};
use pkw_core::linalg::IntMatrix;
use pkw_core::{Filling, Partition, SymmetrizedTableau};
use serde::{Deserialize, Serialize};

use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointJson {
    pub power: usize,
    pub forms: Vec<Vec<i64>>,
}

impl From<&Point> for PointJson {
    fn from(p: &Point) -> Self {
        Self {
            power: p.power(),
            forms: p.forms().iter().map(|f| f.coords().to_vec()).collect(),
        }
    }
}

impl TryFrom<&PointJson> for Point {
    type Error = Error;

    fn try_from(p: &PointJson) -> Result<Self, Error> {
        let forms = p.forms.iter().map(|c| LinearForm::new(c.clone())).collect();
        Ok(Point::new(forms, p.power)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl From<&IntMatrix> for MatrixJson {
    fn from(m: &IntMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|r| m.row(r).iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for IntMatrix {
    type Error = Error;

    fn try_from(m: &MatrixJson) -> Result<Self, Error> {
        let rows = m
            .entries
            .iter()
            .map(|r| r.iter().map(|x| parse_bigint(x)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        if rows.len() != m.rows {
            return Err(Error::Format(format!(
                "matrix declares {} rows, has {}",
                m.rows,
                rows.len()
            )));
        }
        Ok(IntMatrix::from_rows(rows, m.cols)?)
    }
}

pub fn parse_bigint(s: &str) -> Result<BigInt, Error> {
    s.parse()
        .map_err(|_| Error::Format(format!("not a decimal integer: {s:?}")))
}

/// One kernel report per JSON line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub a: usize,
    pub b: usize,
    pub lambda: String,
    pub p: usize,
    pub p_prime: usize,
    pub rank: usize,
    pub kernel_mult: usize,
    pub seed: u64,
    pub status: String,
    /// Base fillings of the source basis `f_1..f_p`.
    pub tableaux: Vec<String>,
    pub points: Vec<PointJson>,
    pub points_prime: Vec<PointJson>,
    pub matrix: MatrixJson,
}

impl From<&KernelReport> for ReportJson {
    fn from(r: &KernelReport) -> Self {
        Self {
            a: r.a,
            b: r.b,
            lambda: r.lambda.to_string(),
            p: r.p,
            p_prime: r.p_prime,
            rank: r.rank,
            kernel_mult: r.kernel_mult,
            seed: r.seed,
            status: r.status.name().to_string(),
            tableaux: r.tableaux.iter().map(|t| t.base().to_string()).collect(),
            points: r.points.iter().map(PointJson::from).collect(),
            points_prime: r.points_prime.iter().map(PointJson::from).collect(),
            matrix: MatrixJson::from(&r.matrix),
        }
    }
}

impl TryFrom<&ReportJson> for KernelReport {
    type Error = Error;

    fn try_from(r: &ReportJson) -> Result<Self, Error> {
        let status = match r.status.as_str() {
            "computed" => ReportStatus::Computed,
            "skipped" => ReportStatus::Skipped,
            other => return Err(Error::Format(format!("unknown status {other:?}"))),
        };
        let tableaux = r
            .tableaux
            .iter()
            .map(|t| Ok(SymmetrizedTableau::new(&t.parse::<Filling>()?)))
            .collect::<Result<Vec<_>, Error>>()?;
        let points = |ps: &[PointJson]| ps.iter().map(Point::try_from).collect::<Result<Vec<_>, _>>();
        Ok(KernelReport {
            a: r.a,
            b: r.b,
            lambda: r.lambda.parse::<Partition>()?,
            p: r.p,
            p_prime: r.p_prime,
            rank: r.rank,
            kernel_mult: r.kernel_mult,
            seed: r.seed,
            status,
            elapsed: None,
            tableaux,
            points: points(&r.points)?,
            points_prime: points(&r.points_prime)?,
            matrix: IntMatrix::try_from(&r.matrix)?,
        })
    }
}

/// `(lambda, p, p')` line printed by `dims`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsJson {
    pub lambda: String,
    pub p: u64,
    pub p_prime: u64,
}

/// Error line for a partition whose computation failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorJson {
    pub lambda: String,
    pub error: String,
}

pub fn write_json_line<W: Write + ?Sized, T: Serialize>(out: &mut W, value: &T) -> Result<(), Error> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Summary table with columns `lambda, p, p_prime, rank, kernel_mult`.
pub fn write_summary_csv<W: Write>(out: W, reports: &[KernelReport]) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["lambda", "p", "p_prime", "rank", "kernel_mult"])?;
    for r in reports {
        w.write_record([
            r.lambda.to_string(),
            r.p.to_string(),
            r.p_prime.to_string(),
            r.rank.to_string(),
            r.kernel_mult.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_dims_csv<W: Write>(out: W, dims: &[DimsJson]) -> Result<(), Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["lambda", "p", "p_prime"])?;
    for d in dims {
        w.write_record([d.lambda.clone(), d.p.to_string(), d.p_prime.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
