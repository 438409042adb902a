use coinage::charact::one_point_extension;
use coinage::gen::{enumerate_all, random_system, tight_corpus};
use coinage::oracle::{is_canonical_oracle, is_tight, search_window, smallest_counterexample_unrestricted};
use coinage::props::{thm1_universal, Outcome};
use coinage::repr::greedy_size;
use coinage::{greedy, optimal, optimal_all, Budget, CoinSystem, Representation};
use proptest::prelude::*;
use rayon::prelude::*;

/// Small coin systems: 1 followed by up to `max_extra` distinct values in `2..=cmax`.
fn small_system(max_extra: usize, cmax: u64) -> impl Strategy<Value = CoinSystem> {
    proptest::collection::btree_set(2..=cmax, 0..=max_extra).prop_map(|rest| {
        let mut v = vec![1];
        v.extend(rest);
        CoinSystem::new(v).unwrap()
    })
}

/// Every representation of `x`, by exhaustive recursion.
fn brute_force(sys: &CoinSystem, x: u64) -> Vec<Vec<u64>> {
    fn go(d: &[u64], i: usize, rest: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == d.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=rest / d[i] {
            cur[i] = k;
            go(d, i + 1, rest - k * d[i], cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(sys.denoms(), 0, x, &mut vec![0; sys.m()], &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 300,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn gaps_sum_to_largest(sys in small_system(8, 500)) {
        prop_assert_eq!(sys.gaps().iter().sum::<u64>(), sys.largest());
    }

    #[test]
    fn display_parse_roundtrip(sys in small_system(8, 10_000)) {
        prop_assert_eq!(sys.to_string().parse::<CoinSystem>().unwrap(), sys);
    }

    #[test]
    fn greedy_is_consistent_and_dominated(sys in small_system(6, 100), x in 0u64..400) {
        let g = greedy(&sys, x);
        prop_assert!(g.is_consistent(&sys));
        prop_assert_eq!(g.value, x);
        prop_assert!(g.size >= optimal(&sys, x).unwrap().size);
    }

    /// Greedy is the unique representation whose value below each coin stays under that coin.
    #[test]
    fn greedy_prefix_condition(sys in small_system(4, 30), x in 0u64..80) {
        let d = sys.denoms();
        let matching: Vec<Vec<u64>> = brute_force(&sys, x)
            .into_iter()
            .filter(|counts| {
                (1..d.len()).all(|i| counts[..i].iter().zip(d).map(|(k, c)| k * c).sum::<u64>() < d[i])
            })
            .collect();
        prop_assert_eq!(matching, vec![greedy(&sys, x).counts]);
    }

    #[test]
    fn optimal_matches_brute_force(sys in small_system(4, 30), x in 0u64..=60) {
        let all = brute_force(&sys, x);
        let best = all.iter().map(|c| c.iter().sum::<u64>()).min().unwrap();
        let opt = optimal(&sys, x).unwrap();
        prop_assert_eq!(opt.size, best);
        prop_assert!(opt.is_consistent(&sys) && opt.value == x);
        let mut expected: Vec<Vec<u64>> = all.into_iter().filter(|c| c.iter().sum::<u64>() == best).collect();
        expected.sort();
        let set = optimal_all(&sys, x, 10_000).unwrap();
        prop_assert!(!set.truncated);
        let mut got: Vec<Vec<u64>> = set.reps.into_iter().map(|r: Representation| r.counts).collect();
        got.sort();
        prop_assert_eq!(got, expected);
    }

    /// The smallest counterexample found without any window lies inside the window.
    #[test]
    fn window_is_sound(sys in small_system(6, 120)) {
        let cex = smallest_counterexample_unrestricted(&sys, Budget::default()).unwrap();
        match (cex, search_window(&sys)) {
            (None, _) => {}
            (Some(c), Some((lo, hi))) => prop_assert!(lo < c.x && c.x < hi, "{} not in ({lo}, {hi})", c.x),
            (Some(c), None) => prop_assert!(false, "counterexample {} for <{}> with fewer than 3 coins", c.x, sys),
        }
    }

    #[test]
    fn canonical_implies_tight(sys in small_system(6, 120)) {
        if is_canonical_oracle(&sys).unwrap().is_canonical() {
            prop_assert!(is_tight(&sys).unwrap().0);
        }
    }

    #[test]
    fn one_point_test_matches_oracle(sys in small_system(5, 80), extra in 1u64..200) {
        prop_assume!(is_canonical_oracle(&sys).unwrap().is_canonical());
        let c_new = sys.largest() + extra;
        let verdict = one_point_extension(&sys, c_new).unwrap();
        let want = is_canonical_oracle(&sys.extend(c_new).unwrap()).unwrap();
        prop_assert_eq!(verdict.is_canonical(), want.is_canonical(), "<{}> + {}", sys, c_new);
    }

    #[test]
    fn greedy_size_agrees(sys in small_system(6, 1000), x in 0u64..100_000) {
        prop_assert_eq!(greedy_size(&sys, x), greedy(&sys, x).size);
    }
}

#[test]
fn random_three_coin_systems_are_uniform() {
    // <1, a, b> with 2 <= a < b <= 6: ten equally likely systems.
    let draws = 100_000u64;
    let mut counts = std::collections::BTreeMap::<Vec<u64>, u64>::new();
    for seed in 0..draws {
        *counts.entry(random_system(3, 6, seed).denoms().to_vec()).or_default() += 1;
    }
    assert_eq!(counts.len(), 10);
    for (sys, n) in &counts {
        let freq = *n as f64 / draws as f64;
        assert!((freq - 0.1).abs() < 0.01, "{sys:?} frequency {freq}");
    }
    let expected = draws as f64 / 10.0;
    let chi2: f64 = counts.values().map(|&n| (n as f64 - expected).powi(2) / expected).sum();
    // 9 degrees of freedom, 0.999 quantile.
    assert!(chi2 < 27.88, "chi-square {chi2}");
}

#[test]
fn enumeration_count_and_uniqueness() {
    for (m, cmax, want) in [(1, 5, 1), (2, 10, 9), (3, 12, 55), (4, 20, 969)] {
        let all: Vec<CoinSystem> = enumerate_all(m, cmax).collect();
        assert_eq!(all.len(), want, "m={m} cmax={cmax}");
        let unique: std::collections::BTreeSet<_> = all.iter().collect();
        assert_eq!(unique.len(), all.len());
        assert!(all.windows(2).all(|w| w[0].denoms() < w[1].denoms()));
    }
}

#[test]
fn tight_corpus_membership() {
    // Exhausting the search space forces every tight 4-coin system with c_4 <= 11 in.
    let total = enumerate_all(4, 11).count();
    let tight: Vec<CoinSystem> = enumerate_all(4, 11).filter(|s| is_tight(s).unwrap().0).collect();
    assert!(tight.len() < total);
    let corpus = tight_corpus(4, 11, 7, tight.len()).unwrap();
    let members: std::collections::BTreeSet<CoinSystem> = corpus.into_iter().map(|e| e.system).collect();
    assert!(members.contains(&"1,7,10,11".parse().unwrap()));
    assert_eq!(members, tight.into_iter().collect());

    let corpus = tight_corpus(4, 60, 7, 200).unwrap();
    let not_tight: CoinSystem = "1,7,10,50".parse().unwrap();
    assert!(corpus.iter().all(|e| e.system != not_tight && e.tight == Some(true)));
}

/// The universal form of support disjointness (every optimal representation
/// is disjoint from greedy) is reported, not asserted, since nothing guarantees it.
#[test]
fn universal_disjointness_is_reported() {
    let systems: Vec<CoinSystem> = (3..=5).flat_map(|m| enumerate_all(m, 25)).collect();
    let outcomes: Vec<Outcome> = systems.par_iter().map(|s| thm1_universal(s).unwrap()).collect();
    let holds = outcomes.iter().filter(|o| o.holds()).count();
    let fails = outcomes.iter().filter(|o| matches!(o, Outcome::Fails(_))).count();
    println!("universal disjointness over {} systems: holds {holds}, fails {fails}", systems.len());
    assert!(holds > 0);
}
