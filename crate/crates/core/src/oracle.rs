//! Ground-truth canonicity and tightness by comparing greedy against
//! dynamic programming over a finite window.
//!
//! If a system is not canonical, its smallest counterexample lies strictly
//! between `c_3 + 1` and `c_{m-1} + c_m`, so scanning that open interval is
//! enough to decide canonicity.

use crate::error::Result;
use crate::repr::{greedy, Budget, DpTable};
use crate::system::{CoinSystem, Counterexample, Verdict};

/// Open interval `(lo, hi)` that contains the smallest counterexample of any
/// non-canonical system, or `None` when `m <= 2`.
pub fn search_window(sys: &CoinSystem) -> Option<(u64, u64)> {
    let m = sys.m();
    if m < 3 {
        return None;
    }
    Some((sys.c(3) + 1, sys.c(m - 1) + sys.c(m)))
}

/// First amount in `lo..hi` whose greedy representation is not optimal.
///
/// Greedy and optimal sizes are filled in together so the scan can stop at the
/// first hit; only the table prefix up to the hit is ever allocated.
pub fn first_counterexample_in(
    sys: &CoinSystem,
    lo: u64,
    hi: u64,
    budget: Budget,
) -> Result<Option<Counterexample>> {
    if hi <= lo {
        return Ok(None);
    }
    budget.check(hi - 1)?;
    let coins = sys.denoms();
    let end = hi as usize;
    let mut opt: Vec<u32> = Vec::with_capacity(end.min(1 << 20));
    let mut grd: Vec<u32> = Vec::with_capacity(end.min(1 << 20));
    opt.push(0);
    grd.push(0);
    let mut top = 0;
    for x in 1..end {
        while top + 1 < coins.len() && coins[top + 1] as usize <= x {
            top += 1;
        }
        let mut best = u32::MAX;
        for &c in &coins[..=top] {
            best = best.min(opt[x - c as usize]);
        }
        opt.push(best + 1);
        grd.push(grd[x - coins[top] as usize] + 1);
        if x as u64 >= lo && grd[x] > opt[x] {
            let table = DpTable::from_sizes(sys, opt);
            let x = x as u64;
            return Ok(Some(Counterexample {
                x,
                greedy: greedy(sys, x),
                optimal: table.representation(x),
            }));
        }
    }
    Ok(None)
}

/// Smallest counterexample, found by scanning the bounded window.
pub fn smallest_counterexample(sys: &CoinSystem) -> Result<Option<Counterexample>> {
    smallest_counterexample_within(sys, Budget::default())
}

pub fn smallest_counterexample_within(
    sys: &CoinSystem,
    budget: Budget,
) -> Result<Option<Counterexample>> {
    match search_window(sys) {
        None => Ok(None),
        Some((lo, hi)) => first_counterexample_in(sys, lo + 1, hi, budget),
    }
}

pub fn is_canonical_oracle(sys: &CoinSystem) -> Result<Verdict> {
    smallest_counterexample(sys).map(Verdict::from)
}

pub fn is_canonical_oracle_within(sys: &CoinSystem, budget: Budget) -> Result<Verdict> {
    smallest_counterexample_within(sys, budget).map(Verdict::from)
}

/// Tightness: no counterexample below the largest coin. Returns the smallest
/// violating amount when the system is not tight.
pub fn is_tight(sys: &CoinSystem) -> Result<(bool, Option<Counterexample>)> {
    is_tight_within(sys, Budget::default())
}

pub fn is_tight_within(
    sys: &CoinSystem,
    budget: Budget,
) -> Result<(bool, Option<Counterexample>)> {
    let cex = first_counterexample_in(sys, 1, sys.largest(), budget)?;
    Ok((cex.is_none(), cex))
}

/// Smallest counterexample without the window restriction, scanning every
/// amount below `2 * c_m`.
pub fn smallest_counterexample_unrestricted(
    sys: &CoinSystem,
    budget: Budget,
) -> Result<Option<Counterexample>> {
    first_counterexample_in(sys, 1, 2 * sys.largest(), budget)
}
