//! Greedy and optimal representations.

use crate::error::{Error, Result};
use crate::system::{CoinSystem, Representation};

/// Default ceiling on dynamic-programming table entries (2^28).
pub const DEFAULT_BUDGET: u64 = 1 << 28;

/// Default ceiling on the number of representations returned by [`optimal_all`].
pub const DEFAULT_ENUMERATION_CAP: usize = 10_000;

/// Upper bound on the number of table entries a caller is willing to allocate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn check(self, limit: u64) -> Result<()> {
        let requested = limit.saturating_add(1);
        if requested > self.0 {
            return Err(Error::LimitExceeded {
                requested,
                budget: self.0,
            });
        }
        Ok(())
    }
}

/// Greedy representation of `x`: repeatedly take the largest coin not
/// exceeding what is left.
pub fn greedy(sys: &CoinSystem, x: u64) -> Representation {
    let mut counts = vec![0; sys.m()];
    let mut rest = x;
    for (i, &c) in sys.denoms().iter().enumerate().rev() {
        if rest >= c {
            counts[i] = rest / c;
            rest %= c;
        }
    }
    debug_assert_eq!(rest, 0);
    Representation {
        counts,
        value: x,
        size: 0,
    }
    .with_size()
}

/// Size of the greedy representation of `x` without materialising the counts.
pub fn greedy_size(sys: &CoinSystem, x: u64) -> u64 {
    let mut rest = x;
    let mut size = 0;
    for &c in sys.denoms().iter().rev() {
        if rest >= c {
            size += rest / c;
            rest %= c;
        }
    }
    size
}

/// Greedy sizes for every amount in `0..=limit`, built incrementally
/// through `g(x) = 1 + g(x - largest coin <= x)`.
pub fn greedy_sizes(sys: &CoinSystem, limit: u64, budget: Budget) -> Result<Vec<u32>> {
    budget.check(limit)?;
    let n = limit as usize;
    let mut g = vec![0u32; n + 1];
    let coins = sys.denoms();
    let mut top = 0;
    for x in 1..=n {
        while top + 1 < coins.len() && coins[top + 1] as usize <= x {
            top += 1;
        }
        g[x] = g[x - coins[top] as usize] + 1;
    }
    Ok(g)
}

impl Representation {
    fn with_size(mut self) -> Self {
        self.size = self.counts.iter().sum();
        self
    }
}

/// Minimal representation sizes for all amounts `0..=limit`.
#[derive(Debug, Clone)]
pub struct DpTable {
    sys: CoinSystem,
    opt_size: Vec<u32>,
}

impl DpTable {
    pub fn build(sys: &CoinSystem, limit: u64, budget: Budget) -> Result<Self> {
        budget.check(limit)?;
        let n = limit as usize;
        let mut opt = vec![0u32; n + 1];
        let coins = sys.denoms();
        for x in 1..=n {
            let mut best = u32::MAX;
            for &c in coins {
                let c = c as usize;
                if c > x {
                    break;
                }
                best = best.min(opt[x - c]);
            }
            opt[x] = best + 1;
        }
        Ok(Self {
            sys: sys.clone(),
            opt_size: opt,
        })
    }

    pub(crate) fn from_sizes(sys: &CoinSystem, opt_size: Vec<u32>) -> Self {
        Self {
            sys: sys.clone(),
            opt_size,
        }
    }

    pub fn system(&self) -> &CoinSystem {
        &self.sys
    }

    pub fn limit(&self) -> u64 {
        (self.opt_size.len() - 1) as u64
    }

    pub fn opt_size(&self, x: u64) -> u64 {
        self.opt_size[x as usize] as u64
    }

    pub fn sizes(&self) -> &[u32] {
        &self.opt_size
    }

    /// Reconstructs one optimal representation, preferring the largest
    /// denomination whenever several coins reach the minimum.
    pub fn representation(&self, x: u64) -> Representation {
        assert!(x <= self.limit(), "amount {x} beyond table limit");
        let coins = self.sys.denoms();
        let mut counts = vec![0; coins.len()];
        let mut rest = x as usize;
        while rest > 0 {
            let target = self.opt_size[rest] - 1;
            let idx = (0..coins.len())
                .rev()
                .find(|&i| coins[i] as usize <= rest && self.opt_size[rest - coins[i] as usize] == target)
                .expect("table is consistent");
            counts[idx] += 1;
            rest -= coins[idx] as usize;
        }
        Representation::from_counts(&self.sys, counts)
    }

    /// Every minimal representation of `x`, up to `cap` of them.
    pub fn all_representations(&self, x: u64, cap: usize) -> OptimalSet {
        assert!(x <= self.limit(), "amount {x} beyond table limit");
        assert!(cap >= 1);
        let coins = self.sys.denoms();
        let mut reps = Vec::new();
        let mut truncated = false;
        // Coins are taken in non-increasing index order so each multiset shows up once.
        let mut stack = vec![(x as usize, coins.len() - 1, vec![0u64; coins.len()])];
        while let Some((rest, max_idx, counts)) = stack.pop() {
            if rest == 0 {
                if reps.len() == cap {
                    truncated = true;
                    break;
                }
                reps.push(Representation::from_counts(&self.sys, counts));
                continue;
            }
            let target = self.opt_size[rest] - 1;
            for i in 0..=max_idx {
                let c = coins[i] as usize;
                if c > rest {
                    break;
                }
                if self.opt_size[rest - c] == target {
                    let mut next = counts.clone();
                    next[i] += 1;
                    stack.push((rest - c, i, next));
                }
            }
        }
        OptimalSet { reps, truncated }
    }
}

/// Result of enumerating optimal representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalSet {
    pub reps: Vec<Representation>,
    /// Set when the enumeration stopped at the cap.
    pub truncated: bool,
}

pub fn dp_table(sys: &CoinSystem, limit: u64) -> Result<DpTable> {
    DpTable::build(sys, limit, Budget::default())
}

/// A minimum-size representation of `x`.
pub fn optimal(sys: &CoinSystem, x: u64) -> Result<Representation> {
    optimal_within(sys, x, Budget::default())
}

pub fn optimal_within(sys: &CoinSystem, x: u64, budget: Budget) -> Result<Representation> {
    Ok(DpTable::build(sys, x, budget)?.representation(x))
}

pub fn optimal_all(sys: &CoinSystem, x: u64, cap: usize) -> Result<OptimalSet> {
    Ok(dp_table(sys, x)?.all_representations(x, cap))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(v: &[u64]) -> CoinSystem {
        CoinSystem::new(v.to_vec()).unwrap()
    }

    /// Every count vector of `sys` with value exactly `x`.
    fn brute_reps(sys: &CoinSystem, x: u64) -> Vec<Vec<u64>> {
        fn go(coins: &[u64], i: usize, rest: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if i == coins.len() {
                if rest == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            for n in 0..=rest / coins[i] {
                cur.push(n);
                go(coins, i + 1, rest - n * coins[i], cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(sys.denoms(), 0, x, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn greedy_examples() {
        let g = greedy(&sys(&[1, 7, 10, 11]), 14);
        assert_eq!(g.counts, vec![3, 0, 0, 1]);
        assert_eq!(g.size, 4);
        let z = greedy(&sys(&[1, 5, 10, 25]), 0);
        assert_eq!(z, Representation::zero(&sys(&[1, 5, 10, 25])));
        let g = greedy(&sys(&[1, 5, 10, 25]), 41);
        assert_eq!((g.counts, g.size), (vec![1, 1, 1, 1], 4));
    }

    #[test]
    fn optimal_examples() {
        let o = optimal(&sys(&[1, 7, 10, 11]), 14).unwrap();
        assert_eq!((o.counts, o.size), (vec![0, 2, 0, 0], 2));
        assert_eq!(optimal(&sys(&[1, 3, 4]), 0).unwrap().size, 0);
        let o = optimal(&sys(&[1, 3, 4]), 6).unwrap();
        assert_eq!((o.counts, o.size), (vec![0, 2, 0], 2));
    }

    #[test]
    fn dp_examples() {
        assert_eq!(dp_table(&sys(&[1, 2]), 5).unwrap().sizes(), &[0, 1, 1, 2, 2, 3]);
        assert_eq!(dp_table(&sys(&[1]), 3).unwrap().sizes(), &[0, 1, 2, 3]);
        assert_eq!(dp_table(&sys(&[1, 7, 10, 11]), 14).unwrap().opt_size(14), 2);
    }

    #[test]
    fn optimal_all_examples() {
        let set = optimal_all(&sys(&[1, 7, 10, 11]), 14, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(set.reps.len(), 1);
        assert_eq!(set.reps[0].counts, vec![0, 2, 0, 0]);
        let set = optimal_all(&sys(&[1, 3, 4]), 7, 10).unwrap();
        assert_eq!(set.reps.iter().map(|r| r.counts.clone()).collect::<Vec<_>>(), vec![vec![0, 1, 1]]);
        let set = optimal_all(&sys(&[1, 3, 4]), 0, 10).unwrap();
        assert_eq!(set.reps, vec![Representation::zero(&sys(&[1, 3, 4]))]);
        assert!(!set.truncated);
    }

    #[test]
    fn optimal_all_truncates() {
        let s = sys(&[1, 2, 3, 4, 5, 6, 7, 8]);
        let full = optimal_all(&s, 12, 100).unwrap();
        // 12 = 4+8 = 5+7 = 6+6
        assert_eq!(full.reps.len(), 3);
        let cut = optimal_all(&s, 12, 2).unwrap();
        assert_eq!(cut.reps.len(), 2);
        assert!(cut.truncated);
    }

    #[test]
    fn budget_is_enforced() {
        let err = DpTable::build(&sys(&[1, 2]), 100, Budget(50)).unwrap_err();
        assert_eq!(
            err,
            Error::LimitExceeded {
                requested: 101,
                budget: 50
            }
        );
        assert!(DpTable::build(&sys(&[1, 2]), 49, Budget(50)).is_ok());
    }

    #[test]
    fn brute_force_agreement() {
        for s in [sys(&[1, 3, 4]), sys(&[1, 5, 6, 9]), sys(&[1, 2, 5, 6, 10]), sys(&[1, 7, 10, 11])] {
            let table = dp_table(&s, 40).unwrap();
            let greedy_table = greedy_sizes(&s, 40, Budget::default()).unwrap();
            for x in 0..=40 {
                let reps = brute_reps(&s, x);
                let best = reps.iter().map(|r| r.iter().sum::<u64>()).min().unwrap();
                assert_eq!(table.opt_size(x), best, "{s} x={x}");
                let mut expected: Vec<_> = reps.into_iter().filter(|r| r.iter().sum::<u64>() == best).collect();
                expected.sort();
                let mut got: Vec<_> = table.all_representations(x, 10_000).reps.into_iter().map(|r| r.counts).collect();
                got.sort();
                assert_eq!(got, expected, "{s} x={x}");
                assert_eq!(greedy_table[x as usize] as u64, greedy(&s, x).size);
                assert_eq!(greedy_size(&s, x), greedy(&s, x).size);
            }
        }
    }
}
