//! Uniform entry point over every canonicity test.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algos::{is_canonical_tight_extended, is_canonical_tight_verbatim, pearson_check};
use crate::charact::{check_five, check_four, check_three};
use crate::error::Result;
use crate::oracle::is_canonical_oracle;
use crate::system::{CoinSystem, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Oracle,
    /// Closed-form tests for up to five coins, the candidate search beyond.
    Auto,
    Pearson,
    TightVerbatim,
    TightExtended,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Oracle,
        Method::Auto,
        Method::Pearson,
        Method::TightVerbatim,
        Method::TightExtended,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Auto => "auto",
            Method::Pearson => "pearson",
            Method::TightVerbatim => "tight-verbatim",
            Method::TightExtended => "tight-extended",
        }
    }

    /// Tight methods only accept systems with at least six coins.
    pub fn min_coins(self) -> usize {
        match self {
            Method::TightVerbatim | Method::TightExtended => 6,
            _ => 1,
        }
    }

    pub fn is_tight_method(self) -> bool {
        self.min_coins() > 1
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

/// Runs `method` on `sys`. Tight methods trust the caller that `sys` is tight.
pub fn check(sys: &CoinSystem, method: Method) -> Result<Verdict> {
    match method {
        Method::Oracle => is_canonical_oracle(sys),
        Method::Auto => match sys.m() {
            0..=2 => Ok(Verdict::Canonical),
            3 => check_three(sys).map(|(v, _)| v),
            4 => check_four(sys),
            5 => check_five(sys),
            _ => Ok(pearson_check(sys)),
        },
        Method::Pearson => Ok(pearson_check(sys)),
        Method::TightVerbatim => is_canonical_tight_verbatim(sys).map(|r| r.verdict),
        Method::TightExtended => is_canonical_tight_extended(sys).map(|r| r.verdict),
    }
}
