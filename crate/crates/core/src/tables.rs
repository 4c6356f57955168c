//! The CM tables as plain rows, rendered as aligned text, CSV or JSON.
//!
//! JSON integers beyond 2^53 and all reals are emitted as decimal strings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{Map, Value};

use crate::arith::Rational;
use crate::asymptotics::{c_value, cm_asymptotic, main_term_rep_j, report};
use crate::cm::{cm_count_table, cm_minimal_table, cm_orders, count_rep_cm, CmOrder};
use crate::error::{Error, Result};
use crate::families::{is_special_j, JInvariantData, WeierstrassCurve};
use crate::heights::HeightSpec;
use crate::parse::rational_string;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableName {
    CmMinimal,
    CmCounts,
    Coefficients,
    RelativeError,
}

impl TableName {
    pub const ALL: [TableName; 4] =
        [TableName::CmMinimal, TableName::CmCounts, TableName::Coefficients, TableName::RelativeError];
}

impl fmt::Display for TableName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableName::CmMinimal => "cm-minimal",
            TableName::CmCounts => "cm-counts",
            TableName::Coefficients => "coefficients",
            TableName::RelativeError => "relative-error",
        })
    }
}

impl FromStr for TableName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        TableName::ALL
            .into_iter()
            .find(|t| t.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown table name {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Parse(format!("unknown output format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Int(BigInt),
    Text(String),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        const SAFE: i64 = 1 << 53;
        match self {
            Cell::Int(n) => match n.to_i64() {
                Some(v) if v.abs() <= SAFE => Value::from(v),
                _ => Value::String(n.to_string()),
            },
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

impl From<BigInt> for Cell {
    fn from(n: BigInt) -> Self {
        Cell::Int(n)
    }
}

impl From<i64> for Cell {
    fn from(n: i64) -> Self {
        Cell::Int(n.into())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

/// Integers render as integers, everything else as `p/q`.
fn rational_cell(q: &Rational) -> Cell {
    if q.is_integer() {
        Cell::Int(q.to_integer())
    } else {
        Cell::Text(rational_string(q))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Table => Ok(self.render_text()),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_text(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|i| {
                cells.iter().map(|r| r[i].chars().count()).chain([self.headers[i].chars().count()]).max().unwrap_or(0)
            })
            .collect();
        let line = |row: &[String]| {
            let parts: Vec<String> = row.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.headers);
        for r in &cells {
            out += &line(r);
        }
        out
    }

    fn render_csv(&self) -> Result<String> {
        let io = |e: csv::Error| Error::Parse(format!("csv: {e}"));
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).map_err(io)?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::text)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    fn render_json(&self) -> Result<String> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.headers.iter().cloned().zip(r.iter().map(Cell::json)).collect::<Map<_, _>>()))
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(rows)).map_err(|e| Error::Parse(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

fn order_cells(o: &CmOrder) -> Vec<Cell> {
    vec![o.d_k.into(), i64::from(o.f).into(), o.j.clone().into()]
}

fn order_headers() -> Vec<String> {
    vec!["d_K".into(), "f".into(), "j".into()]
}

/// `y^2 = x^3 - 15x ± 22` for a pair differing only in the sign of B, and
/// `y^2 = x^3 ± x` for the pair `(±1, 0)`.
pub fn pm_equation(pair: &[WeierstrassCurve; 2]) -> String {
    let [p, q] = pair;
    if p.a() == q.a() && p.b() == &-q.b() {
        let head = WeierstrassCurve::new(p.a().clone(), 0).to_string();
        format!("{head} ± {}", p.b().abs())
    } else if p.b() == q.b() && p.a() == &-q.a() {
        let coeff = p.a().abs();
        let x = if coeff == BigInt::from(1) { "x".to_string() } else { format!("{coeff}x") };
        let tail = WeierstrassCurve::new(0, p.b().clone()).to_string();
        format!("y^2 = x^3 ± {x}{}", &tail["y^2 = x^3".len()..])
    } else {
        format!("{p}; {q}")
    }
}

pub fn cm_minimal(spec: &HeightSpec) -> Result<Table> {
    let mut headers = order_headers();
    headers.extend(["curves", "A", "B", "height"].map(String::from));
    let rows = cm_minimal_table(spec)?
        .into_iter()
        .map(|r| {
            let mut row = order_cells(&r.order);
            let [plus, _] = &r.curves;
            row.push(Cell::Text(pm_equation(&r.curves)));
            row.push(plus.a().clone().into());
            row.push(plus.b().clone().into());
            row.push(rational_cell(&r.height));
            row
        })
        .collect();
    Ok(Table { headers, rows })
}

/// `10^10, 10^15, ..., 10^30`
pub fn default_count_bounds() -> Vec<Rational> {
    (2..=6).map(|k| Rational::from_integer(BigInt::from(10).pow(5 * k))).collect()
}

/// `10, 10^2, ..., 10^7` and `2.7 * 10^10`
pub fn default_relative_error_bounds() -> Vec<Rational> {
    let mut v: Vec<Rational> = (1..=7).map(|k| Rational::from_integer(BigInt::from(10).pow(k))).collect();
    v.push(Rational::from_integer(BigInt::from(27_000_000_000i64)));
    v
}

/// `1e25` for powers of ten from 100 on, otherwise the exact value.
pub fn bound_label(q: &Rational) -> String {
    if q.is_integer() && q.numer() >= &BigInt::from(100) {
        let s = q.numer().to_string();
        if s.starts_with('1') && s[1..].bytes().all(|b| b == b'0') {
            return format!("1e{}", s.len() - 1);
        }
    }
    if q.is_integer() {
        q.numer().to_string()
    } else {
        rational_string(q)
    }
}

pub fn cm_counts(spec: &HeightSpec, bounds: &[Rational]) -> Result<Table> {
    let t = cm_count_table(spec, bounds)?;
    let mut headers = order_headers();
    headers.extend(bounds.iter().map(bound_label));
    let mut rows: Vec<Vec<Cell>> = t
        .rows
        .into_iter()
        .map(|(o, counts)| {
            let mut row = order_cells(&o);
            row.extend(counts.into_iter().map(Cell::Int));
            row
        })
        .collect();
    let mut total = vec![Cell::Text("total".into()), Cell::Text(String::new()), Cell::Text(String::new())];
    total.extend(t.totals.into_iter().map(Cell::Int));
    rows.push(total);
    Ok(Table { headers, rows })
}

pub fn coefficients(spec: &HeightSpec) -> Result<Table> {
    let mut headers = order_headers();
    headers.extend(["c_pow6", "c", "coefficient"].map(String::from));
    let one = Rational::from_integer(1.into());
    let mut rows = Vec::new();
    for o in cm_orders().iter().filter(|o| !is_special_j(&o.j_invariant())) {
        let j = o.j_invariant();
        let data = JInvariantData::new(&j, spec)?;
        let mut row = order_cells(o);
        row.push(rational_cell(data.c_pow6()));
        row.push(Cell::Text(c_value(&j, spec)?.to_string_digits(20)));
        row.push(Cell::Text(main_term_rep_j(&j, spec, &one)?.to_string_digits(10)));
        rows.push(row);
    }
    Ok(Table { headers, rows })
}

pub fn relative_error(spec: &HeightSpec, bounds: &[Rational]) -> Result<Table> {
    if bounds.is_empty() {
        return Err(Error::EmptyBounds);
    }
    let headers = ["X", "exact", "approximation", "relative_error"].map(String::from).to_vec();
    let mut rows = Vec::new();
    for x in bounds {
        let r = report(&count_rep_cm(spec, x)?, &cm_asymptotic(spec, x)?)?;
        rows.push(vec![
            Cell::Text(bound_label(x)),
            Cell::Int(r.exact.clone()),
            Cell::Text(r.approximation.to_string_fixed(2)),
            Cell::Text(r.percent()),
        ]);
    }
    Ok(Table { headers, rows })
}

/// A named table with its default bounds.
pub fn build_table(name: TableName, spec: &HeightSpec) -> Result<Table> {
    match name {
        TableName::CmMinimal => cm_minimal(spec),
        TableName::CmCounts => cm_counts(spec, &default_count_bounds()),
        TableName::Coefficients => coefficients(spec),
        TableName::RelativeError => relative_error(spec, &default_relative_error_bounds()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cal() -> HeightSpec {
        HeightSpec::calibrated()
    }

    #[test]
    fn names_round_trip() {
        for t in TableName::ALL {
            assert_eq!(t.to_string().parse::<TableName>(), Ok(t));
        }
        assert!("cm".parse::<TableName>().is_err());
        assert_eq!("csv".parse(), Ok(OutputFormat::Csv));
    }

    #[test]
    fn equations() {
        let t = cm_minimal(&cal()).unwrap();
        let eq: Vec<String> = t.rows.iter().map(|r| r[3].text()).collect();
        assert_eq!(eq[0], "y^2 = x^3 ± 1");
        assert_eq!(eq[1], "y^2 = x^3 - 15x ± 22");
        assert_eq!(eq[3], "y^2 = x^3 ± x");
        assert_eq!(eq[12], "y^2 = x^3 - 8697680x ± 9873093538");
        assert_eq!(t.rows[12][6], Cell::Int("2631905352272628650988".parse().unwrap()));
    }

    #[test]
    fn labels() {
        assert_eq!(bound_label(&Rational::from_integer(BigInt::from(10).pow(25))), "1e25");
        assert_eq!(bound_label(&Rational::from_integer(10.into())), "10");
        assert_eq!(bound_label(&Rational::from_integer(27_000_000_000i64.into())), "27000000000");
        assert_eq!(bound_label(&Rational::new(1.into(), 2.into())), "1/2");
    }

    #[test]
    fn json_keeps_large_integers_exact() {
        let t = cm_counts(&cal(), &default_count_bounds()).unwrap();
        let v: Value = serde_json::from_str(&t.render(OutputFormat::Json).unwrap()).unwrap();
        assert_eq!(v[0]["1e30"], Value::from(384900179459750i64));
        assert_eq!(v[0]["1e10"], Value::from(38490));
        assert_eq!(v[12]["j"], Value::String("-262537412640768000".into()));
        assert_eq!(v.as_array().unwrap().len(), 14);
    }

    #[test]
    fn csv_has_header() {
        let t = coefficients(&cal()).unwrap();
        let s = t.render(OutputFormat::Csv).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("d_K,f,j,c_pow6,c,coefficient"));
        assert_eq!(lines.next(), Some("-3,2,54000,1/13500,0.20493259460083236230,0.2491681566"));
        assert_eq!(s.lines().count(), 12);
    }

    #[test]
    fn relative_error_rows() {
        let t = relative_error(&cal(), &default_relative_error_bounds()).unwrap();
        let pct: Vec<String> = t.rows.iter().map(|r| r[3].text()).collect();
        assert_eq!(pct, ["170%", "95%", "14%", "3.5%", "0.86%", "0.33%", "0.40%", "0.014%"]);
        assert!(relative_error(&cal(), &[]).is_err());
    }
}
