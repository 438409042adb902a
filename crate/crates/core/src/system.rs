//! Coin systems, representations and verdicts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest denomination accepted: twice it must still fit in a `u64`.
pub const MAX_DENOMINATION: u64 = u64::MAX / 2;

/// A validated coin system `1 = c_1 < c_2 < ... < c_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CoinSystem {
    denoms: Vec<u64>,
}

impl CoinSystem {
    pub fn new(values: impl Into<Vec<u64>>) -> Result<Self> {
        let denoms = values.into();
        if denoms.is_empty() {
            return Err(Error::EmptyList);
        }
        if let Some(index) = denoms.iter().position(|&v| v == 0) {
            return Err(Error::NonPositiveValue { index, value: 0 });
        }
        if denoms[0] != 1 {
            return Err(Error::FirstNotOne(denoms[0]));
        }
        for (index, w) in denoms.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::NotStrictlyIncreasing {
                    index: index + 1,
                    previous: w[0],
                    value: w[1],
                });
            }
        }
        let largest = *denoms.last().unwrap();
        if largest > MAX_DENOMINATION {
            return Err(Error::Overflow(largest as u128));
        }
        Ok(Self { denoms })
    }

    /// Validates signed input, reporting zero and negative entries as
    /// `NonPositiveValue` rather than failing to convert.
    pub fn from_signed(values: &[i128]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyList);
        }
        let mut denoms = Vec::with_capacity(values.len());
        for (index, &v) in values.iter().enumerate() {
            if v <= 0 {
                return Err(Error::NonPositiveValue { index, value: v });
            }
            if v > u64::MAX as i128 {
                return Err(Error::Overflow(v as u128));
            }
            denoms.push(v as u64);
        }
        Self::new(denoms)
    }

    pub fn denoms(&self) -> &[u64] {
        &self.denoms
    }

    /// Number of denominations.
    pub fn m(&self) -> usize {
        self.denoms.len()
    }

    /// The `i`-th coin, 1-indexed as in the usual `c_i` notation.
    pub fn c(&self, i: usize) -> u64 {
        self.denoms[i - 1]
    }

    pub fn largest(&self) -> u64 {
        *self.denoms.last().unwrap()
    }

    pub fn contains(&self, value: u64) -> bool {
        self.denoms.binary_search(&value).is_ok()
    }

    /// Gap sequence `d_i = c_i - c_{i-1}` with `c_0 = 0`.
    pub fn gaps(&self) -> Vec<u64> {
        let mut prev = 0;
        self.denoms
            .iter()
            .map(|&c| {
                let d = c - prev;
                prev = c;
                d
            })
            .collect()
    }

    /// The subsystem made of the first `len` coins.
    pub fn prefix(&self, len: usize) -> CoinSystem {
        assert!(
            (1..=self.m()).contains(&len),
            "prefix length {len} out of range"
        );
        CoinSystem {
            denoms: self.denoms[..len].to_vec(),
        }
    }

    /// Appends a coin larger than the current largest one.
    pub fn extend(&self, coin: u64) -> Result<CoinSystem> {
        if coin <= self.largest() {
            return Err(Error::NotAnExtension {
                largest: self.largest(),
                new: coin,
            });
        }
        let mut denoms = self.denoms.clone();
        denoms.push(coin);
        CoinSystem::new(denoms)
    }
}

impl fmt::Display for CoinSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.denoms.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Parses comma-separated decimal denominations, e.g. `"1, 5, 10, 25"`.
impl FromStr for CoinSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::EmptyList);
        }
        let values = trimmed
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<i128>().map_err(|_| Error::Parse {
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_signed(&values)
    }
}

impl<'de> Deserialize<'de> for CoinSystem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let values = Vec::<u64>::deserialize(d)?;
        CoinSystem::new(values).map_err(serde::de::Error::custom)
    }
}

/// Per-denomination coin counts for some amount.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Representation {
    pub counts: Vec<u64>,
    pub value: u64,
    pub size: u64,
}

impl Representation {
    pub fn from_counts(sys: &CoinSystem, counts: Vec<u64>) -> Self {
        assert_eq!(counts.len(), sys.m(), "counts must align with the system");
        let value = counts.iter().zip(sys.denoms()).map(|(n, c)| n * c).sum();
        let size = counts.iter().sum();
        Self {
            counts,
            value,
            size,
        }
    }

    pub fn zero(sys: &CoinSystem) -> Self {
        Self {
            counts: vec![0; sys.m()],
            value: 0,
            size: 0,
        }
    }

    /// Indices (0-based) of the denominations actually used.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(i, _)| i)
    }

    pub fn disjoint_from(&self, other: &Representation) -> bool {
        self.counts
            .iter()
            .zip(&other.counts)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Recomputes value and size from the counts and compares them with the stored fields.
    pub fn is_consistent(&self, sys: &CoinSystem) -> bool {
        self.counts.len() == sys.m() && *self == Self::from_counts(sys, self.counts.clone())
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, n) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        f.write_str(")")
    }
}

/// An amount whose greedy representation uses strictly more coins than an optimal one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub x: u64,
    pub greedy: Representation,
    pub optimal: Representation,
}

impl Counterexample {
    /// Checks the witness against `sys`: both representations are consistent,
    /// both sum to `x`, and greedy is strictly larger.
    pub fn is_valid_for(&self, sys: &CoinSystem) -> bool {
        self.greedy.is_consistent(sys)
            && self.optimal.is_consistent(sys)
            && self.greedy.value == self.x
            && self.optimal.value == self.x
            && self.greedy.size > self.optimal.size
            && self.greedy == crate::repr::greedy(sys, self.x)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "kebab-case")]
pub enum Verdict {
    Canonical,
    NonCanonical(Counterexample),
}

impl Verdict {
    pub fn is_canonical(&self) -> bool {
        matches!(self, Verdict::Canonical)
    }

    pub fn witness(&self) -> Option<&Counterexample> {
        match self {
            Verdict::Canonical => None,
            Verdict::NonCanonical(cex) => Some(cex),
        }
    }
}

impl From<Option<Counterexample>> for Verdict {
    fn from(cex: Option<Counterexample>) -> Self {
        cex.map_or(Verdict::Canonical, Verdict::NonCanonical)
    }
}
