//! Closed-form bounds on the limiting ratio `s_{i,j}` and table assembly.
//!
//! Upper bounds come from the two general inequalities:
//!
//! * `i ≥ 1`: `s_{i,j} ≤ ½·√((i+j+1) / (i(j+1)))`
//! * `i = 0`: `s_{0,j} ≤ ½·(1 + √((j+2)/(j+1)))`
//!
//! Lower bounds in [`best_known`] are never read from a constant: each one is
//! recomputed by running the eigensolver on its certificate graph.

use std::fmt;

use thiserror::Error;

use crate::codec::{search_graphs, Certificate};
use crate::constructions::{ConstructionError, Family, HadamardMatrix};
use crate::format;
use crate::graph::LoopedGraph;
use crate::spectral::{spread_ratio, SpectralError, SpreadQuery};

/// Largest tabulated index for certificate-backed cells.
pub const TABLE_MAX: usize = 4;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("the general upper bound needs i >= 1 (use the row-zero bound for i = 0)")]
    RowZero,
    #[error("{name} must be at least {min}, got {value}")]
    OutOfRange {
        name: &'static str,
        value: usize,
        min: usize,
    },
    #[error("cell ({i},{j}) is outside the tabulated range 0..={max}")]
    OutsideTable { i: usize, j: usize, max: usize },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// `s_{0,0}` for simple graphs, `2/√3` (cited maximum-spread result).
pub fn max_spread_simple() -> f64 {
    2.0 / 3f64.sqrt()
}

/// `½·√((i+j+1)/(i(j+1)))` for `i ≥ 1`.
pub fn ub_general(i: usize, j: usize) -> Result<f64, BoundsError> {
    if i == 0 {
        return Err(BoundsError::RowZero);
    }
    let (i, j) = (i as f64, j as f64);
    Ok(0.5 * ((i + j + 1.0) / (i * (j + 1.0))).sqrt())
}

/// `½·(1 + √((j+2)/(j+1)))`.
pub fn ub_row0(j: usize) -> f64 {
    let j = j as f64;
    0.5 * (1.0 + ((j + 2.0) / (j + 1.0)).sqrt())
}

fn at_least(name: &'static str, value: usize, min: usize) -> Result<(), BoundsError> {
    if value < min {
        Err(BoundsError::OutOfRange { name, value, min })
    } else {
        Ok(())
    }
}

/// `(j+2)/(2j+3)` from `K_{j+2} ∪ K*_{j+1}`.
pub fn lb_1j(j: usize) -> Result<f64, BoundsError> {
    at_least("j", j, 1)?;
    Ok((j + 2) as f64 / (2 * j + 3) as f64)
}

/// `(i+1)/(2i+1)` from `K_{(i+1)*,i}`.
pub fn lb_i0(i: usize) -> Result<f64, BoundsError> {
    at_least("i", i, 1)?;
    Ok((i + 1) as f64 / (2 * i + 1) as f64)
}

/// `((2j+5) + √(4j²+16j+17)) / (4(j+2))` from `K_{2j+4}^{(j+2)*}`.
pub fn lb_0j(j: usize) -> Result<f64, BoundsError> {
    at_least("j", j, 1)?;
    let j = j as f64;
    Ok((2.0 * j + 5.0 + (4.0 * j * j + 16.0 * j + 17.0).sqrt()) / (4.0 * (j + 2.0)))
}

/// `1/√(2k)` when the factory has a symmetric Hadamard matrix of order `2k`.
pub fn exact_hadamard(k: usize) -> Option<f64> {
    if k == 0 {
        return None;
    }
    HadamardMatrix::of_order(2 * k).ok()?;
    Some(1.0 / ((2 * k) as f64).sqrt())
}

/// Printable form of `1/√(2k)` for `k` a power of two: `1/√2`, `1/2`, `√2/4`, ...
fn hadamard_symbol(k: usize) -> String {
    let e = (2 * k).trailing_zeros();
    if e.is_multiple_of(2) {
        format!("1/{}", 1usize << (e / 2))
    } else if e == 1 {
        "1/√2".to_string()
    } else {
        format!("√2/{}", 1usize << e.div_ceil(2))
    }
}

/// The two-sided estimate from the Hadamard graphs of order `4·2^m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sandwich {
    /// Smallest `m` with `max{i, j+1} ≤ 2^m`.
    pub m: u32,
    /// `1/(2√max{i, j+1})`, strictly below `s_{i,j}`.
    pub strict_lower: f64,
    /// `1/(2√(2^{m−1}))`, the value of the Hadamard graph itself.
    pub hadamard_lower: f64,
    /// `1/√(2·min{i, j+1})`.
    pub upper: f64,
}

pub fn sandwich(i: usize, j: usize) -> Result<Sandwich, BoundsError> {
    at_least("i", i, 1)?;
    let hi = i.max(j + 1);
    let lo = i.min(j + 1);
    let m = hi.next_power_of_two().trailing_zeros();
    Ok(Sandwich {
        m,
        strict_lower: 1.0 / (2.0 * (hi as f64).sqrt()),
        hadamard_lower: 1.0 / (2.0 * 2f64.powi(m as i32 - 1).sqrt()),
        upper: 1.0 / (2.0 * lo as f64).sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperSource {
    /// `½·√((i+j+1)/(i(j+1)))`
    General,
    /// `½·(1 + √((j+2)/(j+1)))`
    RowZero,
    /// Cited value `2/√3` for the classical spread.
    MaxSpreadSimple,
}

impl fmt::Display for UpperSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpperSource::General => "general bound",
            UpperSource::RowZero => "row-zero bound",
            UpperSource::MaxSpreadSimple => "max spread of simple graphs (cited)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Upper {
    pub value: f64,
    pub source: UpperSource,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Lower {
    /// Computed from a certificate graph on `n` vertices.
    Certified { value: f64, certificate: String, n: usize },
    /// Closed form, no graph evaluated.
    Formula { value: f64, family: String },
    /// The certificate exists only as a description.
    Unavailable {
        certificate: &'static str,
        reason: &'static str,
    },
}

impl Lower {
    pub fn value(&self) -> Option<f64> {
        match self {
            Lower::Certified { value, .. } | Lower::Formula { value, .. } => Some(*value),
            Lower::Unavailable { .. } => None,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            Lower::Certified { certificate, .. } => certificate,
            Lower::Formula { family, .. } => family,
            Lower::Unavailable { certificate, .. } => certificate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactSource {
    MaxSpreadSimple,
    /// Hadamard equality graph with parameter `k`.
    Hadamard {
        k: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactValue {
    pub value: f64,
    pub symbol: String,
    pub source: ExactSource,
}

/// Bounds for one `(i, j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsCell {
    pub i: usize,
    pub j: usize,
    pub upper: Upper,
    pub lower: Lower,
    /// Only for proven values; conjectures go in `conjecture`.
    pub exact: Option<ExactValue>,
    pub conjecture: Option<String>,
}

impl BoundsCell {
    pub fn is_available(&self) -> bool {
        self.lower.value().is_some()
    }

    /// Consistency problems: lower above upper, or an exact value that the
    /// two sides do not both reproduce.
    pub fn violations(&self, tol: f64) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(lo) = self.lower.value() {
            if lo > self.upper.value + 1e-12 {
                out.push(format!("lower {lo} exceeds upper {}", self.upper.value));
            }
            if let Some(ex) = &self.exact {
                if (lo - ex.value).abs() > tol {
                    out.push(format!("lower {lo} differs from exact {}", ex.symbol));
                }
            }
        }
        if let Some(ex) = &self.exact {
            if (self.upper.value - ex.value).abs() > tol {
                out.push(format!("upper {} differs from exact {}", self.upper.value, ex.symbol));
            }
        }
        out
    }

    pub fn lower_text(&self) -> String {
        match (&self.exact, &self.lower) {
            (Some(ex), _) => ex.symbol.clone(),
            (None, Lower::Unavailable { reason, .. }) => format!("n/a ({reason})"),
            (None, lower) => format::three_decimals(lower.value().expect("available")),
        }
    }

    pub fn upper_text(&self) -> String {
        match &self.exact {
            Some(ex) => ex.symbol.clone(),
            None => format::three_decimals(self.upper.value),
        }
    }
}

fn upper_for(i: usize, j: usize) -> Upper {
    match (i, j) {
        (0, 0) => Upper {
            value: max_spread_simple(),
            source: UpperSource::MaxSpreadSimple,
        },
        (0, j) => Upper {
            value: ub_row0(j),
            source: UpperSource::RowZero,
        },
        (i, j) => Upper {
            value: ub_general(i, j).expect("i >= 1"),
            source: UpperSource::General,
        },
    }
}

fn exact_for(i: usize, j: usize) -> Option<ExactValue> {
    if (i, j) == (0, 0) {
        return Some(ExactValue {
            value: max_spread_simple(),
            symbol: "2/√3".to_string(),
            source: ExactSource::MaxSpreadSimple,
        });
    }
    let k = i;
    if k >= 1 && j + 1 == k {
        return exact_hadamard(k).map(|value| ExactValue {
            value,
            symbol: hadamard_symbol(k),
            source: ExactSource::Hadamard { k },
        });
    }
    None
}

fn conjecture_for(i: usize, j: usize) -> Option<String> {
    match (i, j) {
        (1, j) if j >= 1 => Some(format!("s_1,{j} = {j2}/{d}", j2 = j + 2, d = 2 * j + 3)),
        (i, 0) if i >= 2 => Some(format!("s_{i},0 = {}/{}", i + 1, 2 * i + 1)),
        (0, j) if j >= 1 => Some(format!(
            "s_0,{j} = ({} + √{})/{}",
            2 * j + 5,
            4 * j * j + 16 * j + 17,
            4 * (j + 2)
        )),
        _ => None,
    }
}

/// Which graph certifies the lower bound of a tabulated cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellCertificate {
    Family(Family),
    Registry(&'static str),
}

impl CellCertificate {
    pub fn label(&self) -> String {
        match self {
            CellCertificate::Family(f) => f.label(),
            CellCertificate::Registry(name) => name.to_string(),
        }
    }
}

/// Certificate for `(i, j)` with `i, j ≤ 4`.
pub fn certificate_for(i: usize, j: usize) -> Result<CellCertificate, BoundsError> {
    if i > TABLE_MAX || j > TABLE_MAX {
        return Err(BoundsError::OutsideTable { i, j, max: TABLE_MAX });
    }
    let family = match (i, j) {
        (0, 0) => Some(Family::CliqueLoops { n: 3, t: 2 }),
        (0, j) => Some(Family::CliqueLoops { n: 2 * j + 4, t: j + 2 }),
        (1, 0) => Some(Family::ClosedPath),
        (1, j) => Some(Family::CliqueUnion { j }),
        (i, 0) => Some(Family::HalfClosedBipartite { i }),
        (2, 1) => Some(Family::ClosedCube),
        (4, 3) => Some(Family::HadamardEquality { k: 4 }),
        _ => None,
    };
    if let Some(f) = family {
        return Ok(CellCertificate::Family(f));
    }
    let entry = search_graphs()
        .for_cell(i, j)
        .expect("every remaining cell has a registry graph");
    Ok(CellCertificate::Registry(entry.name))
}

fn certified(q: SpreadQuery, label: String, g: &LoopedGraph) -> Result<Lower, BoundsError> {
    Ok(Lower::Certified {
        value: spread_ratio(g, q)?,
        certificate: label,
        n: g.n(),
    })
}

/// Best known bounds for a tabulated cell, lower bound recomputed from its certificate.
pub fn best_known(i: usize, j: usize) -> Result<BoundsCell, BoundsError> {
    let cert = certificate_for(i, j)?;
    let q = SpreadQuery::new(i, j);
    let lower = match cert {
        CellCertificate::Family(f) => certified(q, cert.label(), &f.build()?)?,
        CellCertificate::Registry(name) => {
            let entry = search_graphs().get(name).expect("registry name");
            match entry.certificate() {
                Certificate::Available(g) => certified(q, cert.label(), g)?,
                Certificate::Unavailable { name, reason } => Lower::Unavailable {
                    certificate: name,
                    reason,
                },
            }
        }
    };
    Ok(BoundsCell {
        i,
        j,
        upper: upper_for(i, j),
        lower,
        exact: exact_for(i, j),
        conjecture: conjecture_for(i, j),
    })
}

/// Bounds from closed forms only; works for any `(i, j)`.
///
/// The lower bound is the best of the family formulas and the Hadamard
/// monotonicity bound `1/(2√(2^{m−1}))`.
pub fn formula_cell(i: usize, j: usize) -> BoundsCell {
    let mut candidates: Vec<(f64, String)> = Vec::new();
    match (i, j) {
        (0, 0) => candidates.push((max_spread_simple(), "K_3^(2)*".to_string())),
        (0, j) => candidates.push((
            lb_0j(j).expect("j >= 1"),
            Family::CliqueLoops { n: 2 * j + 4, t: j + 2 }.label(),
        )),
        (1, 0) => candidates.push((1.0 / 2f64.sqrt(), "P_4*".to_string())),
        (1, j) => candidates.push((lb_1j(j).expect("j >= 1"), Family::CliqueUnion { j }.label())),
        (i, 0) => candidates.push((lb_i0(i).expect("i >= 1"), Family::HalfClosedBipartite { i }.label())),
        _ => {}
    }
    if i >= 1 {
        let s = sandwich(i, j).expect("i >= 1");
        let k = 1usize << s.m;
        candidates.push((s.hadamard_lower, format!("Hadamard k={k} (monotone)")));
    }
    let (value, family) = candidates
        .into_iter()
        .fold(None::<(f64, String)>, |best, c| match best {
            Some(b) if b.0 >= c.0 => Some(b),
            _ => Some(c),
        })
        .expect("at least one candidate");
    BoundsCell {
        i,
        j,
        upper: upper_for(i, j),
        lower: Lower::Formula { value, family },
        exact: exact_for(i, j),
        conjecture: conjecture_for(i, j),
    }
}

/// Every certificate-backed cell with `i ≤ imax`, `j ≤ jmax`, row-major.
pub fn best_known_table(imax: usize, jmax: usize) -> Result<Vec<BoundsCell>, BoundsError> {
    let mut cells = Vec::new();
    for i in 0..=imax {
        for j in 0..=jmax {
            cells.push(best_known(i, j)?);
        }
    }
    Ok(cells)
}

pub fn formula_table(imax: usize, jmax: usize) -> Vec<BoundsCell> {
    (0..=imax)
        .flat_map(|i| (0..=jmax).map(move |j| formula_cell(i, j)))
        .collect()
}

pub const CSV_HEADER: [&str; 10] = [
    "i",
    "j",
    "lower",
    "upper",
    "lower_table",
    "upper_table",
    "exact",
    "certificate",
    "upper_source",
    "status",
];

/// CSV with full-precision values and the 3-decimal table strings.
pub fn render_csv(cells: &[BoundsCell]) -> Result<String, BoundsError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for c in cells {
        let status = match &c.lower {
            Lower::Unavailable { reason, .. } => format!("n/a ({reason})"),
            _ => "ok".to_string(),
        };
        w.write_record([
            c.i.to_string(),
            c.j.to_string(),
            c.lower.value().map(|v| v.to_string()).unwrap_or_default(),
            c.upper.value.to_string(),
            c.lower_text(),
            c.upper_text(),
            c.exact.as_ref().map(|e| e.symbol.clone()).unwrap_or_default(),
            c.lower.label().to_string(),
            c.upper.source.to_string(),
            status,
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn grid(cells: &[BoundsCell]) -> (usize, usize, Vec<Vec<&BoundsCell>>) {
    let imax = cells.iter().map(|c| c.i).max().unwrap_or(0);
    let jmax = cells.iter().map(|c| c.j).max().unwrap_or(0);
    let mut rows: Vec<Vec<&BoundsCell>> = vec![Vec::new(); imax + 1];
    for c in cells {
        rows[c.i].push(c);
    }
    (imax, jmax, rows)
}

/// Markdown table: one row per `i`, a lower and an upper column per `j`.
pub fn render_markdown(cells: &[BoundsCell]) -> String {
    let (_, jmax, rows) = grid(cells);
    let mut table: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["i \\ j".to_string()];
    for j in 0..=jmax {
        header.push(format!("{j} lower"));
        header.push(format!("{j} upper"));
    }
    table.push(header);
    for (i, row) in rows.iter().enumerate() {
        let mut line = vec![i.to_string()];
        for c in row {
            line.push(c.lower_text());
            line.push(c.upper_text());
        }
        table.push(line);
    }
    let widths: Vec<usize> = (0..table[0].len())
        .map(|k| {
            table
                .iter()
                .map(|r| r.get(k).map_or(0, |s| s.chars().count()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let fmt_row = |r: &[String]| {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
            .collect();
        format!("| {} |", cells.join(" | "))
    };
    let mut out = String::new();
    out.push_str(&fmt_row(&table[0]));
    out.push('\n');
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    out.push_str(&format!("|-{}-|\n", rule.join("-|-")));
    for r in &table[1..] {
        out.push_str(&fmt_row(r));
        out.push('\n');
    }
    out
}

/// Plain text grid, `lower/upper` per cell.
pub fn render_text(cells: &[BoundsCell]) -> String {
    let (_, jmax, rows) = grid(cells);
    let texts: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| match &c.exact {
                    Some(ex) => ex.symbol.clone(),
                    None => format!("{}/{}", c.lower_text(), c.upper_text()),
                })
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..=jmax)
        .map(|j| {
            texts
                .iter()
                .filter_map(|r| r.get(j))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(1)
                .max(3)
        })
        .collect();
    let mut out = format!("{:>3} |", "i\\j");
    for (j, w) in widths.iter().enumerate() {
        out.push_str(&format!(" {j:^w$} |"));
    }
    out.push('\n');
    for (i, row) in texts.iter().enumerate() {
        out.push_str(&format!("{i:>3} |"));
        for (s, w) in row.iter().zip(&widths) {
            out.push_str(&format!(" {s}{} |", " ".repeat(w - s.chars().count())));
        }
        out.push('\n');
    }
    out
}
