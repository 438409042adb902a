//! Closed-form canonicity tests for systems with three, four and five coins,
//! the one-point extension test, and the three-coin propagation witness.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{first_counterexample_in, smallest_counterexample};
use crate::repr::{greedy, optimal};
use crate::system::{CoinSystem, Counterexample, Representation, Verdict};

/// Division of the third coin by the second: `c_3 = q * c_2 + r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Kz3Analysis {
    pub q: u64,
    pub r: u64,
    /// `0 < r < c_2 - q`.
    pub non_canonical: bool,
}

impl Kz3Analysis {
    pub fn of(c2: u64, c3: u64) -> Self {
        let (q, r) = (c3 / c2, c3 % c2);
        Self {
            q,
            r,
            non_canonical: r > 0 && r + q < c2,
        }
    }

    /// The amount `c_2 + c_3 - 1` together with the `(r-1, q+1, 0)`
    /// representation that beats greedy on it, when the system is non-canonical.
    pub fn improving_representation(&self, sys: &CoinSystem) -> Option<(u64, Representation)> {
        if !self.non_canonical {
            return None;
        }
        let x = sys.c(2) + sys.c(3) - 1;
        Some((x, Representation::from_counts(sys, vec![self.r - 1, self.q + 1, 0])))
    }
}

fn require_arity(sys: &CoinSystem, m: usize, expected: &'static str) -> Result<()> {
    if sys.m() != m {
        return Err(Error::WrongArity {
            expected,
            found: sys.m(),
        });
    }
    Ok(())
}

/// Three-coin test. When non-canonical the witness is the smallest
/// counterexample `(q + 1) * c_2`, paid optimally with `q + 1` coins of `c_2`.
pub fn check_three(sys: &CoinSystem) -> Result<(Verdict, Kz3Analysis)> {
    require_arity(sys, 3, "exactly 3")?;
    let analysis = Kz3Analysis::of(sys.c(2), sys.c(3));
    if !analysis.non_canonical {
        return Ok((Verdict::Canonical, analysis));
    }
    let x = (analysis.q + 1) * sys.c(2);
    let cex = Counterexample {
        x,
        greedy: greedy(sys, x),
        optimal: Representation::from_counts(sys, vec![0, analysis.q + 1, 0]),
    };
    Ok((Verdict::NonCanonical(cex), analysis))
}

/// Decides a canonical system extended by one larger coin.
///
/// With `k * c_m < c_new < (k + 1) * c_m`, the extension is non-canonical iff
/// greedy needs more than `k + 1` coins for `(k + 1) * c_m`. The prefix is
/// trusted to be canonical.
pub fn one_point_extension(prefix: &CoinSystem, c_new: u64) -> Result<Verdict> {
    let extended = prefix.extend(c_new)?;
    let top = prefix.largest();
    if c_new.is_multiple_of(top) {
        return Ok(Verdict::Canonical);
    }
    let k = c_new / top;
    let x = (k + 1) * top;
    let g = greedy(&extended, x);
    if g.size <= k + 1 {
        return Ok(Verdict::Canonical);
    }
    let optimal = optimal(&extended, x)?;
    Ok(Verdict::NonCanonical(Counterexample {
        x,
        greedy: g,
        optimal,
    }))
}

/// Four-coin test: a non-canonical three-coin prefix propagates, otherwise
/// the one-point test on the fourth coin decides.
pub fn check_four(sys: &CoinSystem) -> Result<Verdict> {
    require_arity(sys, 4, "exactly 4")?;
    let (prefix_verdict, _) = check_three(&sys.prefix(3))?;
    if !prefix_verdict.is_canonical() {
        return propagation_witness(sys).map(Verdict::NonCanonical);
    }
    one_point_extension(&sys.prefix(3), sys.c(4))
}

/// Whether the system is `<1, 2, c, c+1, 2c>` with `c > 3`, the only shape in
/// which a non-canonical four-coin prefix becomes canonical again.
pub fn is_restoring_family(sys: &CoinSystem) -> bool {
    if sys.m() != 5 {
        return false;
    }
    let c3 = sys.c(3);
    sys.c(2) == 2 && c3 > 3 && sys.c(4) == c3 + 1 && sys.c(5) == 2 * c3
}

/// Five-coin test.
///
/// Decision tree: a non-canonical three-coin prefix makes the system
/// non-canonical; a canonical three-coin prefix with a non-canonical four-coin
/// prefix is canonical exactly for `<1, 2, c, c+1, 2c>` with `c > 3`; a
/// canonical four-coin prefix defers to the one-point test.
pub fn check_five(sys: &CoinSystem) -> Result<Verdict> {
    require_arity(sys, 5, "exactly 5")?;
    let (three, _) = check_three(&sys.prefix(3))?;
    if !three.is_canonical() {
        return propagation_witness(sys).map(Verdict::NonCanonical);
    }
    let four = check_four(&sys.prefix(4))?;
    if four.is_canonical() {
        return one_point_extension(&sys.prefix(4), sys.c(5));
    }
    if is_restoring_family(sys) {
        return Ok(Verdict::Canonical);
    }
    match smallest_counterexample(sys)? {
        Some(cex) => Ok(Verdict::NonCanonical(cex)),
        None => Err(Error::TheoremViolation(format!(
            "<{sys}> has a non-canonical 4-coin prefix, is outside the restoring family, yet no counterexample was found"
        ))),
    }
}

/// For a system with at least four coins whose first three coins are
/// non-canonical: the smallest counterexample, which must lie below `c_m + c_3`.
pub fn propagation_witness(sys: &CoinSystem) -> Result<Counterexample> {
    if sys.m() < 4 {
        return Err(Error::WrongArity {
            expected: "at least 4",
            found: sys.m(),
        });
    }
    let (three, _) = check_three(&sys.prefix(3))?;
    if three.is_canonical() {
        return Err(Error::PreconditionUnmet(format!(
            "the 3-coin prefix of <{sys}> is canonical"
        )));
    }
    let bound = sys.largest() + sys.c(3);
    first_counterexample_in(sys, 1, bound, Default::default())?.ok_or_else(|| {
        Error::TheoremViolation(format!(
            "<{sys}> has a non-canonical 3-coin prefix but no counterexample below {bound}"
        ))
    })
}
