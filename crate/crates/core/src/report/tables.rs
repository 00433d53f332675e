use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableKind {
    /// Proven minima `t(q)`.
    ExactT,
    /// Smallest known sizes `t̄(q)`.
    KnownTbar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableSource {
    EmbeddedExact,
    EmbeddedSample,
    File(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub q: u64,
    pub value: u64,
    /// Printed `value / √(q ln q)`, rounded up.
    pub t_star: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceTable {
    pub kind: TableKind,
    pub rows: Vec<TableRow>,
    pub source: TableSource,
}

/// Exact minima for every prime power `q ≤ 32`.
pub const EXACT_MINIMA: [(u64, u64); 15] = [
    (5, 5),
    (7, 6),
    (8, 6),
    (9, 6),
    (11, 8),
    (13, 8),
    (16, 9),
    (17, 10),
    (19, 11),
    (23, 12),
    (25, 12),
    (27, 13),
    (29, 13),
    (31, 14),
    (32, 15),
];

/// Non-prime orders up to 2048 with their smallest known sizes and printed
/// starred values.
const SAMPLE_NONPRIME: [(u64, u64, f64); 30] = [
    (8, 6, 1.48),
    (9, 6, 1.35),
    (16, 9, 1.36),
    (25, 12, 1.34),
    (27, 13, 1.38),
    (32, 15, 1.43),
    (49, 18, 1.31),
    (64, 22, 1.35),
    (81, 25, 1.33),
    (121, 33, 1.37),
    (125, 35, 1.43),
    (128, 35, 1.41),
    (169, 41, 1.40),
    (243, 53, 1.46),
    (256, 55, 1.46),
    (289, 58, 1.44),
    (343, 66, 1.48),
    (361, 66, 1.44),
    (512, 84, 1.49),
    (529, 85, 1.48),
    (625, 96, 1.52),
    (729, 102, 1.48),
    (841, 114, 1.52),
    (961, 122, 1.51),
    (1024, 127, 1.51),
    (1331, 150, 1.54),
    (1369, 152, 1.53),
    (1681, 173, 1.55),
    (1849, 182, 1.55),
    (2048, 194, 1.56),
];

/// Primes spread over `13 ≤ q ≤ 33013`.
const SAMPLE_PRIME: [(u64, u64, f64); 10] = [
    (13, 8, 1.386),
    (19, 11, 1.471),
    (307, 62, 1.479),
    (557, 89, 1.500),
    (907, 120, 1.527),
    (1499, 162, 1.548),
    (2267, 208, 1.572),
    (4049, 291, 1.587),
    (16759, 654, 1.620),
    (32941, 957, 1.635),
];

impl ReferenceTable {
    pub fn exact_minima() -> Self {
        ReferenceTable {
            kind: TableKind::ExactT,
            rows: EXACT_MINIMA.iter().map(|&(q, value)| TableRow { q, value, t_star: None }).collect(),
            source: TableSource::EmbeddedExact,
        }
    }

    /// The embedded sample of smallest known sizes, sorted by `q`.
    pub fn curated_sample() -> Self {
        let mut rows: Vec<TableRow> = SAMPLE_NONPRIME
            .iter()
            .chain(&SAMPLE_PRIME)
            .map(|&(q, value, s)| TableRow { q, value, t_star: Some(s) })
            .collect();
        rows.sort_by_key(|r| r.q);
        ReferenceTable {
            kind: TableKind::KnownTbar,
            rows,
            source: TableSource::EmbeddedSample,
        }
    }

    /// Exact minimum from the embedded table.
    pub fn exact_t(q: u64) -> Option<u64> {
        EXACT_MINIMA.iter().find(|&&(p, _)| p == q).map(|&(_, t)| t)
    }

    pub fn get(&self, q: u64) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.q == q)
    }

    /// Reads CSV with header `q,tbar` or `q,tbar,tstar`; an empty `tstar`
    /// cell means no printed value.
    pub fn from_csv<R: Read>(input: R, source: TableSource) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
        let header = rdr
            .headers()
            .map_err(|e| Error::Parse { line: 1, message: e.to_string() })?
            .clone();
        let cols: Vec<&str> = header.iter().collect();
        let with_star = match cols.as_slice() {
            ["q", "tbar"] => false,
            ["q", "tbar", "tstar"] => true,
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("expected header `q,tbar[,tstar]`, got `{}`", cols.join(",")),
                })
            }
        };
        let mut rows: Vec<TableRow> = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Parse {
                line: e.position().map_or(0, |p| p.line() as usize),
                message: e.to_string(),
            })?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            let bad = |what: &str, v: &str| Error::Parse { line, message: format!("bad {what} `{v}`") };
            let q: u64 = rec[0].parse().map_err(|_| bad("q", &rec[0]))?;
            let value: u64 = rec[1].parse().map_err(|_| bad("tbar", &rec[1]))?;
            let t_star = if with_star && !rec[2].is_empty() {
                Some(rec[2].parse::<f64>().map_err(|_| bad("tstar", &rec[2]))?)
            } else {
                None
            };
            if let Some(prev) = rows.last() {
                if q <= prev.q {
                    return Err(Error::Parse {
                        line,
                        message: format!("q = {q} does not increase (previous {})", prev.q),
                    });
                }
            }
            rows.push(TableRow { q, value, t_star });
        }
        Ok(ReferenceTable {
            kind: TableKind::KnownTbar,
            rows,
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        Self::from_csv(file, TableSource::File(path.display().to_string()))
    }
}
