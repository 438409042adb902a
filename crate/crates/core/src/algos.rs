//! Polynomial canonicity algorithms.
//!
//! [`pearson_check`] works for every system in `O(m^3)`. The tight-system
//! test runs in `O(m^2)` but is only meant for systems with no counterexample
//! below their largest coin; it comes in two variants:
//!
//! * [`is_canonical_tight_verbatim`] is the bare procedure, followed
//!   step for step: the three-coin test, then a scan of every coin pair whose
//!   sum exceeds the largest coin.
//! * [`is_canonical_tight_extended`] adds the one-point test on the largest
//!   coin when the pair scan is clean. Without it, systems such as
//!   `<1, 5, 10, 25, 50, 100, 220>` (counterexample 300) are reported
//!   canonical, because their 6-coin prefix is canonical and the pair scan
//!   only covers the case where that prefix is not.

use serde::Serialize;

use crate::charact::{one_point_extension, propagation_witness, Kz3Analysis};
use crate::error::{Error, Result};
use crate::repr::{greedy, greedy_size};
use crate::system::{CoinSystem, Counterexample, Representation, Verdict};

/// Candidate search over all pairs `l <= r < m`.
///
/// For each `r`, take the greedy representation `G` of `c_{r+1} - 1`, zero
/// everything outside `l..=r` and add one coin `c_l`. The resulting amount is
/// a counterexample if greedy pays it with more coins than the candidate uses.
/// The smallest firing amount is the smallest counterexample, and the
/// smallest candidate for that amount is an optimal representation of it.
pub fn pearson_check(sys: &CoinSystem) -> Verdict {
    let coins = sys.denoms();
    let m = coins.len();
    // (x, size, l, r), 0-based l and r
    let mut best: Option<(u64, u64, usize, usize)> = None;
    for r in 0..m.saturating_sub(1) {
        let g = greedy(sys, coins[r + 1] - 1);
        let (mut value, mut size) = (0u64, 0u64);
        for l in (0..=r).rev() {
            value += g.counts[l] * coins[l];
            size += g.counts[l];
            let x = value + coins[l];
            let candidate_size = size + 1;
            if greedy_size(sys, x) > candidate_size {
                let better = match best {
                    None => true,
                    Some((bx, bs, _, _)) => (x, candidate_size) < (bx, bs),
                };
                if better {
                    best = Some((x, candidate_size, l, r));
                }
            }
        }
    }
    match best {
        None => Verdict::Canonical,
        Some((x, _, l, r)) => {
            let g = greedy(sys, coins[r + 1] - 1);
            let mut counts = vec![0; m];
            counts[l..=r].copy_from_slice(&g.counts[l..=r]);
            counts[l] += 1;
            Verdict::NonCanonical(Counterexample {
                x,
                greedy: greedy(sys, x),
                optimal: Representation::from_counts(sys, counts),
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Verbatim,
    Extended,
}

/// How membership of `c_i + c_j - c_top` in the coin set was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MembershipPath {
    /// Direct-address bitmap over `[0, c_top]`, `O(1)` per query.
    Bitmap,
    /// Binary search over the coins, `O(log m)` per query.
    BinarySearch,
}

/// Largest top coin for which the bitmap path is used.
pub const BITMAP_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TightCheckReport {
    pub verdict: Verdict,
    pub variant: Variant,
    /// Pair iterations performed before the verdict was settled.
    pub pairs_scanned: u64,
    pub step1_fired: bool,
    pub membership: MembershipPath,
    /// Set when the extended variant's one-point test produced the verdict.
    pub one_point_fired: bool,
}

enum CoinSet<'a> {
    Bitmap(Vec<u64>),
    Sorted(&'a [u64]),
}

impl<'a> CoinSet<'a> {
    fn new(coins: &'a [u64]) -> Self {
        let top = *coins.last().unwrap();
        if top <= BITMAP_LIMIT {
            let mut words = vec![0u64; (top as usize >> 6) + 1];
            for &c in coins {
                words[c as usize >> 6] |= 1 << (c & 63);
            }
            CoinSet::Bitmap(words)
        } else {
            CoinSet::Sorted(coins)
        }
    }

    fn contains(&self, v: u64) -> bool {
        match self {
            CoinSet::Bitmap(words) => words
                .get(v as usize >> 6)
                .is_some_and(|w| w & (1 << (v & 63)) != 0),
            CoinSet::Sorted(coins) => coins.binary_search(&v).is_ok(),
        }
    }

    fn path(&self) -> MembershipPath {
        match self {
            CoinSet::Bitmap(_) => MembershipPath::Bitmap,
            CoinSet::Sorted(_) => MembershipPath::BinarySearch,
        }
    }
}

fn tight_check(sys: &CoinSystem, variant: Variant) -> Result<TightCheckReport> {
    let n = sys.m();
    if n < 6 {
        return Err(Error::WrongArity {
            expected: "at least 6",
            found: n,
        });
    }
    let set = CoinSet::new(sys.denoms());
    let mut report = TightCheckReport {
        verdict: Verdict::Canonical,
        variant,
        pairs_scanned: 0,
        step1_fired: false,
        membership: set.path(),
        one_point_fired: false,
    };

    if Kz3Analysis::of(sys.c(2), sys.c(3)).non_canonical {
        report.step1_fired = true;
        report.verdict = Verdict::NonCanonical(propagation_witness(sys)?);
        return Ok(report);
    }

    let top = sys.largest();
    let rest = &sys.denoms()[..n - 1];
    // top < sum < 2 * top, so greedy takes `top` once and the pair needs more
    // than two coins exactly when the remainder is not a coin.
    let fires = |sum: u64| sum > top && !set.contains(sum - top);
    let mut fired = false;
    'scan: for i in (0..rest.len()).rev() {
        for j in (0..=i).rev() {
            report.pairs_scanned += 1;
            if fires(rest[i] + rest[j]) {
                fired = true;
                break 'scan;
            }
        }
    }
    if fired {
        // The verdict is settled; report the smallest firing pair as witness.
        let (i, j) = (0..rest.len())
            .flat_map(|i| (0..=i).map(move |j| (i, j)))
            .filter(|&(i, j)| fires(rest[i] + rest[j]))
            .min_by_key(|&(i, j)| rest[i] + rest[j])
            .expect("a pair fired");
        let sum = rest[i] + rest[j];
        let mut counts = vec![0; n];
        counts[i] += 1;
        counts[j] += 1;
        // sum exceeds every coin, so two coins is optimal
        report.verdict = Verdict::NonCanonical(Counterexample {
            x: sum,
            greedy: greedy(sys, sum),
            optimal: Representation::from_counts(sys, counts),
        });
        return Ok(report);
    }

    if variant == Variant::Extended {
        let verdict = one_point_extension(&sys.prefix(n - 1), top)?;
        report.one_point_fired = !verdict.is_canonical();
        report.verdict = verdict;
    }
    Ok(report)
}

/// The bare `O(m^2)` procedure for tight systems with at least six coins,
/// with no extra checks.
pub fn is_canonical_tight_verbatim(sys: &CoinSystem) -> Result<TightCheckReport> {
    tight_check(sys, Variant::Verbatim)
}

/// The verbatim procedure followed by the one-point test on the largest coin.
pub fn is_canonical_tight_extended(sys: &CoinSystem) -> Result<TightCheckReport> {
    tight_check(sys, Variant::Extended)
}

/// Whether `cex.x` is the sum of two coins, both larger than 1.
pub fn smallest_witness_is_pair(sys: &CoinSystem, cex: &Counterexample) -> bool {
    pair_decomposition(sys, cex.x).is_some()
}

/// Some `(c_i, c_j)` with `1 < c_i <= c_j` and `c_i + c_j = x`.
pub fn pair_decomposition(sys: &CoinSystem, x: u64) -> Option<(u64, u64)> {
    let coins = &sys.denoms()[1..];
    if coins.is_empty() {
        return None;
    }
    let (mut lo, mut hi) = (0, coins.len() - 1);
    while lo <= hi {
        let sum = coins[lo] + coins[hi];
        match sum.cmp(&x) {
            std::cmp::Ordering::Equal => return Some((coins[lo], coins[hi])),
            std::cmp::Ordering::Less => lo += 1,
            std::cmp::Ordering::Greater => {
                if hi == 0 {
                    break;
                }
                hi -= 1;
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{is_canonical_oracle, is_tight};

    fn sys(v: &[u64]) -> CoinSystem {
        CoinSystem::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pearson_examples() {
        let v = pearson_check(&sys(&[1, 3, 4]));
        let cex = v.witness().unwrap();
        assert_eq!((cex.x, cex.greedy.size, cex.optimal.counts.clone()), (6, 3, vec![0, 2, 0]));
        assert!(pearson_check(&sys(&[1, 5, 10, 25])).is_canonical());
        let v = pearson_check(&sys(&[1, 7, 10, 11]));
        assert_eq!(v.witness().unwrap().x, 14);
        assert_eq!(v.witness().unwrap().optimal.counts, vec![0, 2, 0, 0]);
    }

    #[test]
    fn pearson_tiny_systems() {
        assert!(pearson_check(&sys(&[1])).is_canonical());
        assert!(pearson_check(&sys(&[1, 9])).is_canonical());
    }

    #[test]
    fn tight_pair_scan_fires() {
        let s = sys(&[1, 2, 4, 6, 8, 9]);
        assert!(is_tight(&s).unwrap().0);
        for report in [is_canonical_tight_verbatim(&s).unwrap(), is_canonical_tight_extended(&s).unwrap()] {
            let cex = report.verdict.witness().unwrap();
            assert_eq!(cex.x, 12);
            assert!(cex.is_valid_for(&s));
            assert!(!report.step1_fired);
            assert_eq!(report.membership, MembershipPath::Bitmap);
        }
        assert_eq!(is_canonical_oracle(&s).unwrap().witness().unwrap().x, 12);
    }

    #[test]
    fn tight_canonical() {
        let s = sys(&[1, 5, 10, 25, 50, 100]);
        let v = is_canonical_tight_verbatim(&s).unwrap();
        assert!(v.verdict.is_canonical());
        assert_eq!(v.pairs_scanned, 15);
        assert!(is_canonical_tight_extended(&s).unwrap().verdict.is_canonical());
    }

    #[test]
    fn documented_divergence() {
        let s = sys(&[1, 5, 10, 25, 50, 100, 220]);
        assert!(is_tight(&s).unwrap().0);
        assert!(is_canonical_tight_verbatim(&s).unwrap().verdict.is_canonical());
        let ext = is_canonical_tight_extended(&s).unwrap();
        let cex = ext.verdict.witness().unwrap();
        assert_eq!((cex.x, cex.greedy.size, cex.optimal.size), (300, 4, 3));
        assert!(ext.one_point_fired);
        assert_eq!(is_canonical_oracle(&s).unwrap().witness().unwrap().x, 300);
    }

    #[test]
    fn step_one() {
        let s = sys(&[1, 3, 4, 5, 6, 7]);
        let r = is_canonical_tight_verbatim(&s).unwrap();
        assert!(r.step1_fired);
        assert_eq!(r.pairs_scanned, 0);
        assert!(r.verdict.witness().unwrap().is_valid_for(&s));
    }

    #[test]
    fn arity() {
        assert!(matches!(
            is_canonical_tight_verbatim(&sys(&[1, 2, 3, 4, 5])),
            Err(Error::WrongArity { found: 5, .. })
        ));
    }

    #[test]
    fn binary_search_path() {
        let big = BITMAP_LIMIT + 10;
        let s = sys(&[1, 2, 3, 4, 5, big]);
        let r = is_canonical_tight_verbatim(&s).unwrap();
        assert_eq!(r.membership, MembershipPath::BinarySearch);
        assert!(r.verdict.is_canonical());
    }

    #[test]
    fn pair_witness_examples() {
        let s = sys(&[1, 2, 4, 6, 8, 9]);
        let cex = is_canonical_oracle(&s).unwrap().witness().cloned().unwrap();
        assert!(smallest_witness_is_pair(&s, &cex));
        let s = sys(&[1, 7, 10, 11]);
        let cex = is_canonical_oracle(&s).unwrap().witness().cloned().unwrap();
        assert_eq!(pair_decomposition(&s, cex.x), Some((7, 7)));
        let s = sys(&[1, 5, 10, 25, 50, 100, 220]);
        let cex = is_canonical_oracle(&s).unwrap().witness().cloned().unwrap();
        assert!(!smallest_witness_is_pair(&s, &cex));
        assert_eq!(pair_decomposition(&sys(&[1]), 2), None);
    }
}
