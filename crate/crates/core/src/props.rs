//! Executable structural statements about smallest counterexamples.
//!
//! Each predicate checks its own hypotheses first and reports one of three
//! outcomes, so corpus sweeps can tell "verified" apart from "did not apply".
//!
//! Several statements concern three nested systems built from one coin system
//! `<1, c_2, ..., c_n>`: the three-coin prefix, the prefix without the
//! largest coin, and the full system. [`Facts`] gathers what they need about
//! all three in one pass.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algos::smallest_witness_is_pair;
use crate::charact::check_three;
use crate::error::{Error, Result};
use crate::oracle::smallest_counterexample_unrestricted;
use crate::repr::{dp_table, greedy_size, Budget, DEFAULT_ENUMERATION_CAP};
use crate::system::{CoinSystem, Counterexample};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "detail", rename_all = "kebab-case")]
pub enum Outcome {
    Holds,
    Fails(String),
    NotApplicable(String),
}

impl Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds)
    }

    pub fn is_applicable(&self) -> bool {
        !matches!(self, Outcome::NotApplicable(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Predicate {
    Thm1,
    Thm3,
    Thm8,
    Thm11,
    Lem12,
    Lem13,
}

impl Predicate {
    pub const ALL: [Predicate; 6] = [
        Predicate::Thm1,
        Predicate::Thm3,
        Predicate::Thm8,
        Predicate::Thm11,
        Predicate::Lem12,
        Predicate::Lem13,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::Thm1 => "thm1",
            Predicate::Thm3 => "thm3",
            Predicate::Thm8 => "thm8",
            Predicate::Thm11 => "thm11",
            Predicate::Lem12 => "lem12",
            Predicate::Lem13 => "lem13",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Predicate::Thm1 => "greedy and some optimal representation of the smallest counterexample use disjoint coins",
            Predicate::Thm3 => "smallest counterexample lies strictly between c_3 + 1 and c_{m-1} + c_m",
            Predicate::Thm8 => "non-canonical 3-coin prefix forces a counterexample below c_m + c_3",
            Predicate::Thm11 => "tight sandwich: some counterexample is a pair sum c_i + c_j above the largest coin",
            Predicate::Lem12 => "tight sandwich without c_{m} + c_i witnesses: the last gap is the largest",
            Predicate::Lem13 => "tight sandwich without c_m + c_i or c_{m-1} + c_j witnesses: smallest counterexample is a pair sum",
        }
    }

    pub fn evaluate(self, facts: &Facts) -> Result<Outcome> {
        match self {
            Predicate::Thm1 => thm1_with(facts),
            Predicate::Thm3 => Ok(thm3_with(facts)),
            Predicate::Thm8 => Ok(thm8_with(facts)),
            Predicate::Thm11 => Ok(thm11_with(facts)),
            Predicate::Lem12 => Ok(lemma12_with(facts)),
            Predicate::Lem13 => Ok(lemma13_with(facts)),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown predicate {s:?}"))
    }
}

/// Smallest counterexamples of a system and of its two relevant prefixes.
#[derive(Debug, Clone)]
pub struct Facts {
    pub sys: CoinSystem,
    /// Smallest counterexample of the full system.
    pub smallest: Option<Counterexample>,
    /// Smallest counterexample amount of the 3-coin prefix (`m >= 3`).
    pub three_prefix: Option<u64>,
    /// Smallest counterexample amount of the prefix without the largest coin (`m >= 2`).
    pub upper_prefix: Option<u64>,
}

impl Facts {
    pub fn gather(sys: &CoinSystem) -> Result<Self> {
        Self::gather_within(sys, Budget::default())
    }

    pub fn gather_within(sys: &CoinSystem, budget: Budget) -> Result<Self> {
        let m = sys.m();
        let smallest = smallest_counterexample_unrestricted(sys, budget)?;
        let three_prefix = if m >= 3 {
            check_three(&sys.prefix(3))?.0.witness().map(|c| c.x)
        } else {
            None
        };
        let upper_prefix = match m {
            0..=1 => None,
            _ if m - 1 == 3 => three_prefix,
            _ => smallest_counterexample_unrestricted(&sys.prefix(m - 1), budget)?.map(|c| c.x),
        };
        Ok(Self {
            sys: sys.clone(),
            smallest,
            three_prefix,
            upper_prefix,
        })
    }

    fn tight(smallest: Option<u64>, largest: u64) -> bool {
        smallest.is_none_or(|x| x >= largest)
    }

    /// Hypotheses shared by the tight-sandwich statements: at least five
    /// coins, all three nested systems tight, the 3-coin prefix canonical,
    /// the upper prefix and the full system non-canonical.
    fn sandwich(&self) -> std::result::Result<&Counterexample, String> {
        let sys = &self.sys;
        let m = sys.m();
        if m < 5 {
            return Err("needs at least 5 coins".into());
        }
        if self.three_prefix.is_some() {
            return Err("3-coin prefix is non-canonical".into());
        }
        let Some(upper) = self.upper_prefix else {
            return Err("prefix without the largest coin is canonical".into());
        };
        if !Self::tight(Some(upper), sys.c(m - 1)) {
            return Err("prefix without the largest coin is not tight".into());
        }
        let Some(cex) = self.smallest.as_ref() else {
            return Err("system is canonical".into());
        };
        if !Self::tight(Some(cex.x), sys.largest()) {
            return Err("system is not tight".into());
        }
        Ok(cex)
    }

    /// Whether `c_a + c_i` exceeds the largest coin and is a counterexample
    /// for some `1 < c_i <= c_{m-1}` (`a` is 1-indexed).
    fn has_pair_counterexample_with(&self, a: usize) -> bool {
        let sys = &self.sys;
        let m = sys.m();
        let top = sys.largest();
        (2..m).any(|i| {
            let sum = sys.c(a) + sys.c(i);
            sum > top && greedy_size(sys, sum) > 2
        })
    }
}

/// Smallest-counterexample support disjointness, existential form.
pub fn thm1_disjoint_support(sys: &CoinSystem) -> Result<Outcome> {
    thm1_with(&Facts::gather(sys)?)
}

fn thm1_with(facts: &Facts) -> Result<Outcome> {
    let Some(cex) = &facts.smallest else {
        return Ok(Outcome::NotApplicable("system is canonical".into()));
    };
    let set = dp_table(&facts.sys, cex.x)?.all_representations(cex.x, DEFAULT_ENUMERATION_CAP);
    if set.reps.iter().any(|r| r.disjoint_from(&cex.greedy)) {
        return Ok(Outcome::Holds);
    }
    Ok(Outcome::Fails(format!(
        "no optimal representation of {} is disjoint from greedy {}{}",
        cex.x,
        cex.greedy,
        if set.truncated { " (enumeration truncated)" } else { "" }
    )))
}

/// Universal form of the disjointness statement: every optimal representation
/// of the smallest counterexample avoids the greedy coins. Reported, not asserted.
pub fn thm1_universal(sys: &CoinSystem) -> Result<Outcome> {
    let facts = Facts::gather(sys)?;
    let Some(cex) = &facts.smallest else {
        return Ok(Outcome::NotApplicable("system is canonical".into()));
    };
    let set = dp_table(sys, cex.x)?.all_representations(cex.x, DEFAULT_ENUMERATION_CAP);
    match set.reps.iter().find(|r| !r.disjoint_from(&cex.greedy)) {
        None if !set.truncated => Ok(Outcome::Holds),
        None => Ok(Outcome::NotApplicable("enumeration truncated".into())),
        Some(r) => Ok(Outcome::Fails(format!(
            "optimal {r} of {} shares a coin with greedy {}",
            cex.x, cex.greedy
        ))),
    }
}

/// The smallest counterexample lies in the open window `(c_3 + 1, c_{m-1} + c_m)`.
pub fn thm3_window(sys: &CoinSystem) -> Result<Outcome> {
    Ok(thm3_with(&Facts::gather(sys)?))
}

fn thm3_with(facts: &Facts) -> Outcome {
    let sys = &facts.sys;
    let m = sys.m();
    if m < 3 {
        return Outcome::NotApplicable("fewer than 3 coins".into());
    }
    let Some(cex) = &facts.smallest else {
        return Outcome::NotApplicable("system is canonical".into());
    };
    let (lo, hi) = (sys.c(3) + 1, sys.c(m - 1) + sys.c(m));
    if lo < cex.x && cex.x < hi {
        Outcome::Holds
    } else {
        Outcome::Fails(format!("smallest counterexample {} outside ({lo}, {hi})", cex.x))
    }
}

/// A non-canonical 3-coin prefix yields a counterexample below `c_m + c_3`.
pub fn thm8_propagation_bound(sys: &CoinSystem) -> Result<Outcome> {
    Ok(thm8_with(&Facts::gather(sys)?))
}

fn thm8_with(facts: &Facts) -> Outcome {
    let sys = &facts.sys;
    if sys.m() < 4 {
        return Outcome::NotApplicable("fewer than 4 coins".into());
    }
    if facts.three_prefix.is_none() {
        return Outcome::NotApplicable("3-coin prefix is canonical".into());
    }
    let bound = sys.largest() + sys.c(3);
    match &facts.smallest {
        Some(cex) if cex.x < bound => Outcome::Holds,
        Some(cex) => Outcome::Fails(format!("smallest counterexample {} >= {bound}", cex.x)),
        None => Outcome::Fails("system is canonical".into()),
    }
}

/// In a tight sandwich, some pair sum `c_i + c_j > c_m` with
/// `1 < c_i <= c_j <= c_{m-1}` is a counterexample.
pub fn thm11_pair_witness(sys: &CoinSystem) -> Result<Outcome> {
    Ok(thm11_with(&Facts::gather(sys)?))
}

fn thm11_with(facts: &Facts) -> Outcome {
    if let Err(why) = facts.sandwich() {
        return Outcome::NotApplicable(why);
    }
    let m = facts.sys.m();
    if (2..m).any(|a| facts.has_pair_counterexample_with(a)) {
        Outcome::Holds
    } else {
        Outcome::Fails("no pair sum above the largest coin is a counterexample".into())
    }
}

/// In a tight sandwich with no counterexample `c_{m-1} + c_i > c_m`, the last
/// gap `c_m - c_{m-1}` is the largest gap.
pub fn lemma12_max_gap(sys: &CoinSystem) -> Result<Outcome> {
    Ok(lemma12_with(&Facts::gather(sys)?))
}

fn lemma12_with(facts: &Facts) -> Outcome {
    if let Err(why) = facts.sandwich() {
        return Outcome::NotApplicable(why);
    }
    let m = facts.sys.m();
    if facts.has_pair_counterexample_with(m - 1) {
        return Outcome::NotApplicable(format!(
            "c_{} + c_i is a counterexample for some i",
            m - 1
        ));
    }
    let gaps = facts.sys.gaps();
    let last = *gaps.last().unwrap();
    let max = *gaps.iter().max().unwrap();
    if last == max {
        Outcome::Holds
    } else {
        Outcome::Fails(format!("last gap {last} is below the largest gap {max}"))
    }
}

/// In a tight sandwich with no counterexample `c_{m-1} + c_i > c_m` or
/// `c_{m-2} + c_j > c_m`, the smallest counterexample is a sum of two coins.
pub fn lemma13_smallest_is_pair(sys: &CoinSystem) -> Result<Outcome> {
    Ok(lemma13_with(&Facts::gather(sys)?))
}

fn lemma13_with(facts: &Facts) -> Outcome {
    let cex = match facts.sandwich() {
        Ok(cex) => cex,
        Err(why) => return Outcome::NotApplicable(why),
    };
    let m = facts.sys.m();
    for a in [m - 1, m - 2] {
        if facts.has_pair_counterexample_with(a) {
            return Outcome::NotApplicable(format!("c_{a} + c_i is a counterexample for some i"));
        }
    }
    if smallest_witness_is_pair(&facts.sys, cex) {
        Outcome::Holds
    } else {
        Outcome::Fails(format!("smallest counterexample {} is not a sum of two coins", cex.x))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub holds: u64,
    pub fails: u64,
    pub not_applicable: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub system: CoinSystem,
    pub predicate: Predicate,
    pub detail: String,
}

/// Aggregated outcome of running predicates over a corpus.
#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepReport {
    pub tallies: BTreeMap<Predicate, Tally>,
    pub failures: Vec<Failure>,
    /// Systems skipped because a table exceeded the budget.
    pub skipped: u64,
}

impl SweepReport {
    pub fn record(&mut self, sys: &CoinSystem, predicate: Predicate, outcome: &Outcome) {
        let tally = self.tallies.entry(predicate).or_default();
        match outcome {
            Outcome::Holds => tally.holds += 1,
            Outcome::NotApplicable(_) => tally.not_applicable += 1,
            Outcome::Fails(detail) => {
                tally.fails += 1;
                self.failures.push(Failure {
                    system: sys.clone(),
                    predicate,
                    detail: detail.clone(),
                });
            }
        }
    }

    pub fn merge(&mut self, other: SweepReport) {
        for (p, t) in other.tallies {
            let mine = self.tallies.entry(p).or_default();
            mine.holds += t.holds;
            mine.fails += t.fails;
            mine.not_applicable += t.not_applicable;
        }
        self.failures.extend(other.failures);
        self.skipped += other.skipped;
    }

    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates `predicates` on one system, folding the outcomes into `report`.
pub fn sweep_one(sys: &CoinSystem, predicates: &[Predicate], report: &mut SweepReport) -> Result<()> {
    let facts = match Facts::gather(sys) {
        Ok(f) => f,
        Err(Error::LimitExceeded { .. }) => {
            report.skipped += 1;
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    for &p in predicates {
        let outcome = p.evaluate(&facts)?;
        report.record(sys, p, &outcome);
    }
    Ok(())
}

pub fn sweep<'a>(
    systems: impl IntoIterator<Item = &'a CoinSystem>,
    predicates: &[Predicate],
) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    for sys in systems {
        sweep_one(sys, predicates, &mut report)?;
    }
    Ok(report)
}
