//! Browser bindings. Every export takes plain strings and numbers and returns
//! a JSON document, so the page needs no generated type glue beyond strings.
//! Errors come back as strings and surface as thrown exceptions in JS.

use coinage::oracle::{is_canonical_oracle_within, is_tight_within};
use coinage::repr::{greedy_sizes, Budget, DpTable};
use coinage::{CoinSystem, Counterexample, Method};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest amount `size_profile` will tabulate.
pub const PROFILE_LIMIT: u64 = 100_000;

/// Budget for oracle tables in the browser; keeps a tab from allocating gigabytes.
const BROWSER_BUDGET: Budget = Budget(1 << 24);

#[derive(Serialize)]
struct Witness {
    x: u64,
    greedy_counts: Vec<u64>,
    greedy_size: u64,
    optimal_counts: Vec<u64>,
    optimal_size: u64,
}

impl From<&Counterexample> for Witness {
    fn from(c: &Counterexample) -> Self {
        Witness {
            x: c.x,
            greedy_counts: c.greedy.counts.clone(),
            greedy_size: c.greedy.size,
            optimal_counts: c.optimal.counts.clone(),
            optimal_size: c.optimal.size,
        }
    }
}

#[derive(Serialize)]
struct CheckResult<'a> {
    system: &'a [u64],
    verdict: &'static str,
    witness: Option<Witness>,
    method: &'static str,
}

#[derive(Serialize)]
struct Profile {
    system: Vec<u64>,
    greedy: Vec<u32>,
    optimal: Vec<u32>,
    counterexamples: Vec<u64>,
}

fn parse(coins: &str) -> Result<CoinSystem, String> {
    coins.parse().map_err(|e: coinage::Error| e.to_string())
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string(value).expect("serializable")
}

/// Decides canonicity with `method` (`oracle`, `auto`, `pearson`,
/// `tight-verbatim`, `tight-extended`).
#[wasm_bindgen]
pub fn check(coins: &str, method: &str) -> Result<String, String> {
    let sys = parse(coins)?;
    let method: Method = method.parse()?;
    if sys.m() < method.min_coins() {
        return Err(format!("{method} needs at least {} coins", method.min_coins()));
    }
    let verdict = match method {
        Method::Oracle => is_canonical_oracle_within(&sys, BROWSER_BUDGET),
        _ => coinage::check(&sys, method),
    }
    .map_err(|e| e.to_string())?;
    Ok(to_json(&CheckResult {
        system: sys.denoms(),
        verdict: if verdict.is_canonical() { "canonical" } else { "non-canonical" },
        witness: verdict.witness().map(Witness::from),
        method: method.name(),
    }))
}

/// Greedy and optimal coin counts for every amount in `0..=limit`, plus the
/// amounts where they differ.
#[wasm_bindgen]
pub fn size_profile(coins: &str, limit: u64) -> Result<String, String> {
    let sys = parse(coins)?;
    if limit > PROFILE_LIMIT {
        return Err(format!("limit {limit} exceeds {PROFILE_LIMIT}"));
    }
    let greedy = greedy_sizes(&sys, limit, BROWSER_BUDGET).map_err(|e| e.to_string())?;
    let table = DpTable::build(&sys, limit, BROWSER_BUDGET).map_err(|e| e.to_string())?;
    let optimal = table.sizes().to_vec();
    let counterexamples = (0..=limit)
        .filter(|&x| greedy[x as usize] > optimal[x as usize])
        .collect();
    Ok(to_json(&Profile {
        system: sys.denoms().to_vec(),
        greedy,
        optimal,
        counterexamples,
    }))
}

/// Whether no counterexample lies below the largest coin.
#[wasm_bindgen]
pub fn tight(coins: &str) -> Result<String, String> {
    let sys = parse(coins)?;
    let (tight, cex) = is_tight_within(&sys, BROWSER_BUDGET).map_err(|e| e.to_string())?;
    Ok(to_json(&CheckResult {
        system: sys.denoms(),
        verdict: if tight { "tight" } else { "not-tight" },
        witness: cex.as_ref().map(Witness::from),
        method: "oracle",
    }))
}
