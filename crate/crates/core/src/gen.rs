//! Coin system generators: named families, exhaustive enumeration, seeded
//! random draws and oracle-filtered tight corpora.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::oracle::{is_canonical_oracle, is_tight};
use crate::system::CoinSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `1, 1 + step, 1 + 2 step, ...`
    Arithmetic { step: u64 },
    /// `1, ratio, ratio^2, ...`
    Geometric { ratio: u64 },
    /// `1, 2, 3, 5, 8, ...` (the repeated leading 1 dropped)
    Fibonacci,
}

pub fn family(kind: Family, m: usize) -> Result<CoinSystem> {
    if m == 0 {
        return Err(Error::EmptyList);
    }
    let mut denoms = Vec::with_capacity(m);
    match kind {
        Family::Arithmetic { step } => {
            if step == 0 {
                return Err(Error::NotStrictlyIncreasing { index: 1, previous: 1, value: 1 });
            }
            for i in 0..m as u64 {
                let v = i
                    .checked_mul(step)
                    .and_then(|v| v.checked_add(1))
                    .ok_or(Error::Overflow(1 + i as u128 * step as u128))?;
                denoms.push(v);
            }
        }
        Family::Geometric { ratio } => {
            if ratio < 2 {
                return Err(Error::NotStrictlyIncreasing { index: 1, previous: 1, value: ratio });
            }
            let mut v: u64 = 1;
            for i in 0..m {
                if i > 0 {
                    v = v
                        .checked_mul(ratio)
                        .ok_or(Error::Overflow(v as u128 * ratio as u128))?;
                }
                denoms.push(v);
            }
        }
        Family::Fibonacci => {
            let (mut a, mut b): (u64, u64) = (1, 2);
            for _ in 0..m {
                denoms.push(a);
                let next = a.checked_add(b).ok_or(Error::Overflow(a as u128 + b as u128))?;
                (a, b) = (b, next);
            }
        }
    }
    CoinSystem::new(denoms)
}

impl FromStr for Family {
    type Err = String;

    /// `arithmetic:STEP`, `geometric:RATIO` or `fibonacci`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let num = |a: Option<&str>, default: u64| -> std::result::Result<u64, String> {
            a.map_or(Ok(default), |a| a.trim().parse().map_err(|_| format!("bad family parameter {a:?}")))
        };
        match name.trim() {
            "arithmetic" => Ok(Family::Arithmetic { step: num(arg, 1)? }),
            "geometric" => Ok(Family::Geometric { ratio: num(arg, 2)? }),
            "fibonacci" => Ok(Family::Fibonacci),
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Arithmetic { step } => write!(f, "arithmetic:{step}"),
            Family::Geometric { ratio } => write!(f, "geometric:{ratio}"),
            Family::Fibonacci => f.write_str("fibonacci"),
        }
    }
}

/// Every system with `m` coins and largest coin at most `cmax`, in
/// lexicographic order. There are `C(cmax - 1, m - 1)` of them.
pub fn enumerate_all(m: usize, cmax: u64) -> impl Iterator<Item = CoinSystem> {
    let upper = if m == 0 { 0..0 } else { 2..cmax + 1 };
    upper
        .combinations(m.saturating_sub(1))
        .filter(move |_| m >= 1)
        .map(|rest| {
            let mut denoms = Vec::with_capacity(rest.len() + 1);
            denoms.push(1);
            denoms.extend(rest);
            CoinSystem::new(denoms).expect("combinations are strictly increasing")
        })
}

/// Uniform draw among systems with `m` coins and largest coin at most `cmax`.
pub fn random_system(m: usize, cmax: u64, seed: u64) -> CoinSystem {
    random_system_with(&mut ChaCha8Rng::seed_from_u64(seed), m, cmax)
}

pub fn random_system_with<R: Rng + ?Sized>(rng: &mut R, m: usize, cmax: u64) -> CoinSystem {
    assert!(m >= 1 && cmax >= m as u64, "need cmax >= m >= 1");
    let pool = (cmax - 1) as usize;
    let mut denoms: Vec<u64> = sample(rng, pool, m - 1).into_iter().map(|i| i as u64 + 2).collect();
    denoms.sort_unstable();
    denoms.insert(0, 1);
    CoinSystem::new(denoms).expect("sampled values are distinct")
}

/// A corpus member with its oracle annotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub system: CoinSystem,
    pub canonical: Option<bool>,
    pub tight: Option<bool>,
}

impl CorpusEntry {
    pub fn bare(system: CoinSystem) -> Self {
        Self { system, canonical: None, tight: None }
    }

    pub fn annotated(system: CoinSystem) -> Result<Self> {
        let canonical = is_canonical_oracle(&system)?.is_canonical();
        let tight = is_tight(&system)?.0;
        Ok(Self { system, canonical: Some(canonical), tight: Some(tight) })
    }
}

/// Corpus line: comma-separated denominations, then optional annotations after `#`.
impl fmt::Display for CorpusEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.system)?;
        let mut notes = Vec::new();
        if let Some(c) = self.canonical {
            notes.push(if c { "canonical" } else { "non-canonical" });
        }
        if let Some(t) = self.tight {
            notes.push(if t { "tight" } else { "not-tight" });
        }
        if !notes.is_empty() {
            write!(f, " # {}", notes.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for CorpusEntry {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let (coins, notes) = match line.split_once('#') {
            Some((c, n)) => (c, n),
            None => (line, ""),
        };
        let mut entry = CorpusEntry::bare(coins.parse()?);
        for word in notes.split_whitespace() {
            match word {
                "canonical" => entry.canonical = Some(true),
                "non-canonical" => entry.canonical = Some(false),
                "tight" => entry.tight = Some(true),
                "not-tight" => entry.tight = Some(false),
                _ => {}
            }
        }
        Ok(entry)
    }
}

/// Parses a corpus file, skipping blank lines and lines starting with `#`.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::parse)
        .collect()
}

/// Attempts allowed per requested system before giving up.
pub const ATTEMPTS_PER_TARGET: usize = 2_000;

/// Random tight systems, each annotated with its oracle verdict. Draws are
/// deduplicated; the search stops with `BudgetExhausted` after
/// `ATTEMPTS_PER_TARGET * target_count` draws.
pub fn tight_corpus(m: usize, cmax: u64, seed: u64, target_count: usize) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(target_count);
    let attempts = ATTEMPTS_PER_TARGET.saturating_mul(target_count.max(1));
    for _ in 0..attempts {
        if out.len() == target_count {
            return Ok(out);
        }
        let sys = random_system_with(&mut rng, m, cmax);
        if !seen.insert(sys.clone()) {
            continue;
        }
        if is_tight(&sys)?.0 {
            let canonical = is_canonical_oracle(&sys)?.is_canonical();
            out.push(CorpusEntry { system: sys, canonical: Some(canonical), tight: Some(true) });
        }
    }
    if out.len() == target_count {
        return Ok(out);
    }
    Err(Error::BudgetExhausted(format!(
        "found {} of {target_count} tight systems with m={m}, cmax={cmax} after {attempts} draws",
        out.len()
    )))
}

/// Random tight systems near an arithmetic run: `1..=len` with each coin
/// above 2 dropped independently (rate drawn from `[0.05, 0.4)`), then one top
/// coin appended at most `len` above the last survivor. `len` is drawn from
/// `10..=max_len`. These long, dense systems reach structural cases that
/// uniform draws with few coins almost never produce.
pub fn tight_mutation_corpus(seed: u64, target_count: usize, max_len: u64) -> Result<Vec<CorpusEntry>> {
    assert!(max_len >= 10, "max_len must be at least 10");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(target_count);
    let attempts = ATTEMPTS_PER_TARGET.saturating_mul(target_count.max(1));
    for _ in 0..attempts {
        if out.len() == target_count {
            break;
        }
        let len = rng.gen_range(10..=max_len);
        let drop_rate = rng.gen_range(0.05..0.4);
        let mut denoms: Vec<u64> = (1..=len).filter(|&c| c <= 2 || !rng.gen_bool(drop_rate)).collect();
        let last = *denoms.last().unwrap();
        denoms.push(last + rng.gen_range(1..=len));
        let sys = CoinSystem::new(denoms)?;
        if !seen.insert(sys.clone()) {
            continue;
        }
        if is_tight(&sys)?.0 {
            let canonical = is_canonical_oracle(&sys)?.is_canonical();
            out.push(CorpusEntry { system: sys, canonical: Some(canonical), tight: Some(true) });
        }
    }
    if out.len() == target_count {
        return Ok(out);
    }
    Err(Error::BudgetExhausted(format!(
        "found {} of {target_count} tight mutated systems after {attempts} draws",
        out.len()
    )))
}
