//! Relative class numbers via the Maillet determinant, and the narrow class
//! number parity table for quadratic bases.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mod_inv};
use crate::error::{Error, Result};
use crate::linalg::bareiss_det;

pub const MAILLET_MAX_R: u64 = 200;

/// Parity table shipped with the crate.
pub const DEFAULT_HPLUS_TABLE: &str = include_str!("../../../data/hplus_table.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: &BigInt) -> Parity {
        if n.is_odd() {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HMinusResult {
    pub r: u64,
    pub h_minus: BigInt,
    pub parity: Parity,
    pub determinant: BigInt,
    pub scaling_exponent: u64,
}

/// Maillet matrix: entry (a, b) is the least positive residue of a·b⁻¹ mod r,
/// for 1 ≤ a, b ≤ (r-1)/2.
pub fn maillet_matrix(r: u64) -> Vec<Vec<BigInt>> {
    let m = (r - 1) / 2;
    (1..=m)
        .map(|a| {
            (1..=m)
                .map(|b| {
                    let inv = mod_inv(b, r).expect("r prime");
                    BigInt::from(a * inv % r)
                })
                .collect()
        })
        .collect()
}

pub fn maillet_h_minus(r: u64) -> Result<HMinusResult> {
    if !is_prime(r) {
        return Err(Error::InvalidPrime(r));
    }
    if !(5..=MAILLET_MAX_R).contains(&r) {
        return Err(Error::PrimeOutOfRange { r, min: 5, max: MAILLET_MAX_R });
    }
    let determinant = bareiss_det(maillet_matrix(r));
    let exponent = (r - 3) / 2;
    let scale = num_traits::pow(BigInt::from(r), exponent as usize);
    let (q, rem) = determinant.div_rem(&scale);
    if !rem.is_zero() || q.is_zero() {
        return Err(Error::InexactDivision { r, exponent });
    }
    let h_minus = q.abs();
    Ok(HMinusResult { r, parity: Parity::of(&h_minus), h_minus, determinant, scaling_exponent: exponent })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPlusTableEntry {
    pub base_d: u64,
    pub r: u64,
    pub parity: Parity,
    pub source: String,
}

/// Parity lookups keyed by (d, r).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HPlusTable {
    entries: BTreeMap<(u64, u64), HPlusTableEntry>,
}

impl HPlusTable {
    /// Parses `d r parity source…` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: &str| Error::TableParse { line: line_no, message: message.to_string() };
            let mut parts = line.split_whitespace();
            let base_d: u64 = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad d"))?;
            let r: u64 = parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad r"))?;
            let parity = match parts.next() {
                Some("odd") => Parity::Odd,
                Some("even") => Parity::Even,
                _ => return Err(bad("parity must be odd or even")),
            };
            let source = parts.collect::<Vec<_>>().join(" ");
            if source.is_empty() {
                return Err(bad("missing source"));
            }
            if entries.contains_key(&(base_d, r)) {
                return Err(Error::DuplicateTableEntry { d: base_d, r });
            }
            entries.insert((base_d, r), HPlusTableEntry { base_d, r, parity, source });
        }
        Ok(HPlusTable { entries })
    }

    pub fn shipped() -> Self {
        Self::parse(DEFAULT_HPLUS_TABLE).expect("shipped table parses")
    }

    pub fn get(&self, d: u64, r: u64) -> Option<&HPlusTableEntry> {
        self.entries.get(&(d, r))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = &HPlusTableEntry> {
        self.entries.values()
    }
}

/// Where a parity came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityEvidence {
    pub parity: Parity,
    pub source: String,
    /// h⁻ when the parity was computed rather than looked up
    pub h_minus: Option<BigInt>,
}

/// Parity of h⁺; `None` when a quadratic base has no table entry.
pub fn h_plus_parity(base_d: u64, r: u64, table: &HPlusTable) -> Result<Option<ParityEvidence>> {
    if base_d == 0 {
        let h = maillet_h_minus(r)?;
        return Ok(Some(ParityEvidence {
            parity: h.parity,
            source: "relative class number parity (Maillet determinant)".into(),
            h_minus: Some(h.h_minus),
        }));
    }
    Ok(table.get(base_d, r).map(|e| ParityEvidence { parity: e.parity, source: e.source.clone(), h_minus: None }))
}
