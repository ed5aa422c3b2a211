//! Grid mini-language: `pow10:a..b` and `dyadic:a..b`, inclusive.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridKind {
    Pow10,
    Dyadic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid {
    pub kind: GridKind,
    pub start: u32,
    pub end: u32,
}

impl Grid {
    pub const fn new(kind: GridKind, start: u32, end: u32) -> Self {
        Grid { kind, start, end }
    }

    /// Exponents `start..=end`.
    pub fn levels(&self) -> impl Iterator<Item = u32> {
        self.start..=self.end
    }

    /// Counts `10^k` or `2^k` for each level.
    pub fn counts(&self) -> Result<Vec<u64>> {
        let radix: u64 = match self.kind {
            GridKind::Pow10 => 10,
            GridKind::Dyadic => 2,
        };
        self.levels()
            .map(|k| {
                radix
                    .checked_pow(k)
                    .ok_or_else(|| Error::Invalid(format!("grid value {radix}^{k} overflows")))
            })
            .collect()
    }

    /// Steps `10^−k` or `2^−k` for each level.
    pub fn steps(&self) -> Vec<f64> {
        self.levels()
            .map(|k| match self.kind {
                GridKind::Pow10 => 10f64.powi(-(k as i32)),
                GridKind::Dyadic => 2f64.powi(-(k as i32)),
            })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("grid must look like pow10:a..b or dyadic:a..b, got {s:?}"));
        let (kind, range) = s.split_once(':').ok_or_else(bad)?;
        let kind = match kind {
            "pow10" => GridKind::Pow10,
            "dyadic" => GridKind::Dyadic,
            _ => return Err(bad()),
        };
        let (a, b) = range.split_once("..").ok_or_else(bad)?;
        let start: u32 = a.trim().parse().map_err(|_| bad())?;
        let end: u32 = b.trim().parse().map_err(|_| bad())?;
        if start > end {
            return Err(Error::Invalid(format!("grid range {start}..{end} is empty")));
        }
        Ok(Grid { kind, start, end })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            GridKind::Pow10 => "pow10",
            GridKind::Dyadic => "dyadic",
        };
        write!(f, "{kind}:{}..{}", self.start, self.end)
    }
}
