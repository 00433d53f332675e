//! Reference data, table verification and run records.

pub mod record;
pub mod tables;

use serde::{Deserialize, Serialize};

pub use record::RunRecord;
pub use tables::{ReferenceTable, TableKind, TableRow, TableSource, EXACT_MINIMA};

use crate::bounds::{star, theta};

/// Largest gap allowed between a printed (rounded up) starred value and the
/// computed one.
pub const STAR_ROUNDING_GAP: f64 = 0.01;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowVerdict {
    pub q: u64,
    pub value: u64,
    pub theta: Option<f64>,
    pub computed_star: f64,
    pub printed_star: Option<f64>,
    /// Empty when the row passes.
    pub failures: Vec<String>,
}

impl RowVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub rows: Vec<RowVerdict>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RowVerdict::passed)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.passed()).count()
    }
}

/// Checks every row against `Θ(q)`, the trivial lower bound 3, and the
/// printed starred value when there is one.
pub fn verify_row(row: &TableRow) -> RowVerdict {
    let mut failures = Vec::new();
    let th = theta(row.q);
    if let Err(e) = &th {
        failures.push(e.to_string());
    }
    let th = th.ok();
    if let Some(th) = th {
        if (row.value as f64) >= th {
            failures.push(format!("{} is not below Θ(q) = {th:.4}", row.value));
        }
    }
    if row.value < 3 {
        failures.push(format!("{} is below 3", row.value));
    }
    let computed_star = star(row.q as f64, row.value as f64);
    if let Some(printed) = row.t_star {
        if computed_star > printed {
            failures.push(format!("starred value {computed_star:.5} exceeds printed {printed}"));
        } else if printed - computed_star >= STAR_ROUNDING_GAP {
            failures.push(format!("printed {printed} is not a round-up of {computed_star:.5}"));
        }
    }
    RowVerdict {
        q: row.q,
        value: row.value,
        theta: th,
        computed_star,
        printed_star: row.t_star,
        failures,
    }
}

pub fn verify(table: &ReferenceTable) -> VerifyReport {
    VerifyReport {
        rows: table.rows.iter().map(verify_row).collect(),
    }
}
