//! Timing harness for the scaling comparison between canonicity methods.
//!
//! Inputs are arithmetic progressions `<1, 2, ..., m>`: canonical, hence
//! tight, so every method must report `Canonical` and tight methods can
//! skip the pseudo-polynomial tightness check.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gen::{family, Family};
use crate::method::{check, Method};
use crate::system::{CoinSystem, Verdict};

pub const CSV_HEADER: &str = "method,m,c_max,trial,elapsed_ns,verdict";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub method: Method,
    pub m: usize,
    pub c_max: u64,
    pub trial: usize,
    pub elapsed_ns: u128,
    pub verdict: String,
}

impl BenchRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.method, self.m, self.c_max, self.trial, self.elapsed_ns, self.verdict
        )
    }
}

/// Benchmark input for size `m`.
pub fn bench_system(m: usize) -> Result<CoinSystem> {
    family(Family::Arithmetic { step: 1 }, m)
}

fn verdict_label(v: &Verdict) -> String {
    match v {
        Verdict::Canonical => "canonical".into(),
        Verdict::NonCanonical(cex) => format!("non-canonical:{}", cex.x),
    }
}

/// Times every `(method, m)` combination `trials` times after one discarded
/// warm-up run. The seed only fixes the order in which combinations run.
/// Fails if two methods disagree on the verdict for the same input.
pub fn scaling_run(methods: &[Method], sizes: &[usize], trials: usize, seed: u64) -> Result<Vec<BenchRow>> {
    if trials == 0 {
        return Err(Error::BudgetExhausted("at least one trial is required".into()));
    }
    for &method in methods {
        if let Some(&m) = sizes.iter().find(|&&m| m < method.min_coins()) {
            return Err(Error::WrongArity {
                expected: "at least 6 for tight methods",
                found: m,
            });
        }
    }
    let mut jobs: Vec<(Method, usize)> = methods
        .iter()
        .flat_map(|&method| sizes.iter().map(move |&m| (method, m)))
        .collect();
    jobs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut rows = Vec::with_capacity(jobs.len() * trials);
    for (method, m) in jobs {
        let sys = bench_system(m)?;
        check(&sys, method)?;
        for trial in 0..trials {
            let start = Instant::now();
            let verdict = check(&sys, method)?;
            let elapsed_ns = start.elapsed().as_nanos();
            rows.push(BenchRow {
                method,
                m,
                c_max: sys.largest(),
                trial,
                elapsed_ns,
                verdict: verdict_label(&verdict),
            });
        }
    }

    for &m in sizes {
        let mut labels = rows.iter().filter(|r| r.m == m).map(|r| &r.verdict);
        if let Some(first) = labels.next() {
            if let Some(other) = labels.find(|l| *l != first) {
                return Err(Error::TheoremViolation(format!(
                    "methods disagree at m={m}: {first} vs {other}"
                )));
            }
        }
    }
    rows.sort_by_key(|r| (r.method, r.m, r.trial));
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub method: Method,
    pub m: usize,
    pub median_ns: f64,
}

pub fn median(values: &mut [u128]) -> f64 {
    assert!(!values.is_empty());
    values.sort_unstable();
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2] as f64
    } else {
        (values[n / 2 - 1] as f64 + values[n / 2] as f64) / 2.0
    }
}

/// Median elapsed time per `(method, m)`, sorted by method then size.
pub fn summarize(rows: &[BenchRow]) -> Vec<Summary> {
    let mut groups: std::collections::BTreeMap<(Method, usize), Vec<u128>> = Default::default();
    for r in rows {
        groups.entry((r.method, r.m)).or_default().push(r.elapsed_ns);
    }
    groups
        .into_iter()
        .map(|((method, m), mut v)| Summary {
            method,
            m,
            median_ns: median(&mut v),
        })
        .collect()
}

/// Least-squares slope of `log(time)` against `log(m)`.
pub fn loglog_slope(points: &[(usize, f64)]) -> f64 {
    assert!(points.len() >= 2, "need at least two points");
    let xs: Vec<f64> = points.iter().map(|(m, _)| (*m as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, t)| t.max(1.0).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

/// Slope for one method over the summaries produced by [`summarize`].
pub fn method_slope(summaries: &[Summary], method: Method) -> f64 {
    let pts: Vec<(usize, f64)> = summaries
        .iter()
        .filter(|s| s.method == method)
        .map(|s| (s.m, s.median_ns))
        .collect();
    loglog_slope(&pts)
}
