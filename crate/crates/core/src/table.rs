//! `B_{n,k}` tables by a selectable route.

use std::fmt;
use std::str::FromStr;

use crate::closedform::{b_alt, b_complement, b_explicit};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::numeric::Count;
use crate::recurrences::{b_recurrence_table, Decomposition};

/// Reference values of `B_{n,k}` for `1 <= n, k <= 15`, one `n,k,B` row per
/// cell, `n` ascending then `k` ascending.
pub const TABLE1_CSV: &str = include_str!("../data/table1.csv");

/// Route used to compute `B_{n,k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Two binomial sums over multiples of `k + 1`.
    Explicit,
    /// Three-term second-difference sum.
    Alt,
    /// First-return recurrence.
    Rec1,
    /// Last-return recurrence.
    Rec2,
    /// `C_n` minus the two-barrier reflection count of `A_{n,k-1}`.
    Complement,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Explicit,
        Method::Alt,
        Method::Rec1,
        Method::Rec2,
        Method::Complement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Explicit => "explicit",
            Method::Alt => "alt",
            Method::Rec1 => "rec1",
            Method::Rec2 => "rec2",
            Method::Complement => "complement",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown method {s:?}")))
    }
}

/// `B_{n,k}` for a single cell.
pub fn b_value(n: u32, k: u32, method: Method) -> Count {
    assert!(k >= 1, "k must be at least 1");
    match method {
        Method::Explicit => b_explicit(n, k),
        Method::Alt => b_alt(n, k),
        Method::Complement if n == 0 => Count::ZERO,
        Method::Complement => b_complement(n, k),
        Method::Rec1 => crate::recurrences::b_recurrence_first(n, k),
        Method::Rec2 => crate::recurrences::b_recurrence_second(n, k),
    }
}

/// Rows `n = 1..=n_max`, each holding `B_{n,1..=k_max}`.
pub fn b_table(n_max: u32, k_max: u32, method: Method, exec: Execution) -> Result<Vec<Vec<Count>>> {
    if n_max == 0 || k_max == 0 {
        return Err(Error::Argument(format!(
            "table bounds must be positive, got n_max={n_max}, k_max={k_max}"
        )));
    }
    let rows = match method {
        Method::Rec1 | Method::Rec2 => {
            let route = if method == Method::Rec1 {
                Decomposition::FirstReturn
            } else {
                Decomposition::LastReturn
            };
            let table = b_recurrence_table(n_max as usize, k_max as usize, route);
            (1..=n_max as usize)
                .map(|n| table.row(n)[1..].to_vec())
                .collect()
        }
        _ => exec.map(1..n_max as usize + 1, |n| {
            (1..=k_max).map(|k| b_value(n as u32, k, method)).collect()
        }),
    };
    Ok(rows)
}

/// Parses [`TABLE1_CSV`]-style text into `(n, k, B)` triples.
pub fn parse_long_csv(text: &str) -> Result<Vec<(u32, u32, Count)>> {
    let mut lines = text.lines();
    match lines.next() {
        Some("n,k,B") => {}
        other => return Err(Error::Argument(format!("bad header {other:?}"))),
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let bad = || Error::Argument(format!("bad row {line:?}"));
            let mut parts = line.split(',');
            let n = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
            let k = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
            let b = parts.next().and_then(|v| v.parse().ok()).ok_or_else(bad)?;
            if parts.next().is_some() {
                return Err(bad());
            }
            Ok((n, k, b))
        })
        .collect()
}
