//! Property suites over random inputs and all fixtures.

mod support;

use coalition_core::analysis::{
    characteristic_from_fn, cooperation_check, core_empty, frequencies, shapley_value, simulate,
    stability_k_star, Policy,
};
use coalition_core::equilibrium::{
    eliminate_weakly_dominated, max_regret, mixed_support_2p, pure_nash, strong_nash_check,
    verify_candidate,
};
use coalition_core::game::{
    build_game, expected_payoff, formation_rule, quotient_strategies, realized_distribution, Game,
    MixedProfile, PureProfile,
};
use coalition_core::io::{fixture_profile, fixture_spec, FixtureParams, Miscoordination};
use coalition_core::partition::{
    canonical_string, enumerate_partitions, parse_partition, Coalition, PlayerSet,
};
use coalition_core::rational::{int, one, ratio, to_f64, zero, Rational};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashSet};

const FIXTURES: [&str; 4] = ["dinner", "lunch", "bos", "staghare"];

fn fixture_game(name: &str, k: usize) -> Game {
    build_game(&fixture_spec(name, &FixtureParams::default()).unwrap(), k).unwrap()
}

fn for_each_profile(counts: &[usize], mut f: impl FnMut(&[usize])) {
    let mut p = vec![0usize; counts.len()];
    loop {
        f(&p);
        let mut i = 0;
        while i < p.len() {
            p[i] += 1;
            if p[i] < counts[i] {
                break;
            }
            p[i] = 0;
            i += 1;
        }
        if i == p.len() {
            return;
        }
    }
}

fn random_mixed(g: &Game, rng: &mut ChaCha8Rng) -> MixedProfile {
    let dists = g
        .strategy_counts()
        .iter()
        .map(|&c| {
            let support: BTreeSet<usize> = (0..rng.gen_range(1..=c.min(3)))
                .map(|_| rng.gen_range(0..c))
                .collect();
            let weights: Vec<i64> = support.iter().map(|_| rng.gen_range(1..5)).collect();
            let total: i64 = weights.iter().sum();
            support
                .into_iter()
                .zip(weights)
                .map(|(s, w)| (s, ratio(w, total)))
                .collect()
        })
        .collect();
    MixedProfile::new(g, dists).unwrap()
}

// ---- partitions ----

proptest! {
    #[test]
    fn partition_sets_nest_and_round_trip(n in 1usize..=7, k in 1usize..=7) {
        let k = k.min(n);
        let small = enumerate_partitions(n, k).unwrap();
        let labels: Vec<String> = (0..n).map(|i| format!("q{i}")).collect();
        let ps = PlayerSet::new(labels).unwrap();
        if k < n {
            let big: HashSet<_> = enumerate_partitions(n, k + 1).unwrap().into_iter().collect();
            prop_assert!(big.len() >= small.len());
            prop_assert!(small.iter().all(|p| big.contains(p)));
        }
        for p in &small {
            prop_assert!(p.max_block() <= k);
            prop_assert_eq!(&parse_partition(&canonical_string(p, &ps), &ps).unwrap(), p);
            for i in 0..n {
                let b = p.block_of(i);
                prop_assert!(b.contains(i));
                for j in 0..n {
                    let c = p.block_of(j);
                    prop_assert!(b == c || b.mask() & c.mask() == 0);
                }
            }
        }
    }
}

// ---- formation rule ----

#[test]
fn formation_rule_is_invariant_within_classes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in FIXTURES {
        let spec = fixture_spec(name, &FixtureParams::default()).unwrap();
        let g = build_game(&spec, spec.n()).unwrap();
        let classes: Vec<Vec<Vec<usize>>> =
            (0..g.n()).map(|i| quotient_strategies(&g, i)).collect();
        let counts = g.strategy_counts();
        for _ in 0..10_000 {
            let choices: Vec<usize> = counts.iter().map(|&c| rng.gen_range(0..c)).collect();
            let p = PureProfile::new(&g, choices.clone()).unwrap();
            let before = formation_rule(&g, &p);
            let i = rng.gen_range(0..g.n());
            let class = classes[i].iter().find(|c| c.contains(&choices[i])).unwrap();
            let mut swapped = choices.clone();
            swapped[i] = class[rng.gen_range(0..class.len())];
            let after = formation_rule(&g, &PureProfile::new(&g, swapped).unwrap());
            assert_eq!(before, after, "{name}");
            // Unanimity soundness.
            for b in before.blocks() {
                assert!(b.len() <= g.k());
                if b.len() > 1 {
                    assert!(b
                        .members()
                        .all(|j| g.class_of(j, choices[j]).own_block == *b));
                }
            }
        }
    }
}

#[test]
fn realized_distribution_is_a_distribution() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in FIXTURES {
        for k in 1..=2 {
            let g = fixture_game(name, k).class_representatives();
            let allowed: HashSet<_> = enumerate_partitions(g.n(), k)
                .unwrap()
                .into_iter()
                .collect();
            for _ in 0..50 {
                let d = realized_distribution(&g, &random_mixed(&g, &mut rng));
                assert_eq!(d.values().cloned().sum::<Rational>(), one());
                assert!(d.keys().all(|p| allowed.contains(p)));
            }
        }
    }
}

#[test]
fn expected_payoff_is_multilinear() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for name in FIXTURES {
        let g = fixture_game(name, 2).class_representatives();
        for _ in 0..30 {
            let a = random_mixed(&g, &mut rng);
            let b = random_mixed(&g, &mut rng);
            let i = rng.gen_range(0..g.n());
            let lambda = ratio(rng.gen_range(0..=6), 6);
            let mut mixed = a.dists().to_vec();
            let mut combined: Vec<(usize, Rational)> = Vec::new();
            for (s, p) in a.dist(i) {
                combined.push((*s, p * &lambda));
            }
            for (s, p) in b.dist(i) {
                let w = p * (one() - &lambda);
                match combined.iter_mut().find(|(t, _)| t == s) {
                    Some((_, q)) => *q += w,
                    None => combined.push((*s, w)),
                }
            }
            combined.retain(|(_, p)| *p != zero());
            mixed[i] = combined;
            let mut only_b = a.dists().to_vec();
            only_b[i] = b.dist(i).to_vec();
            let lhs = expected_payoff(&g, &MixedProfile::new(&g, mixed).unwrap());
            let ea = expected_payoff(&g, &a);
            let eb = expected_payoff(&g, &MixedProfile::new(&g, only_b).unwrap());
            for j in 0..g.n() {
                assert_eq!(lhs[j], &lambda * &ea[j] + (one() - &lambda) * &eb[j]);
            }
        }
    }
}

#[test]
fn equilibria_embed_into_larger_games() {
    for name in FIXTURES {
        let spec = fixture_spec(name, &FixtureParams::default()).unwrap();
        let small = build_game(&spec, 1).unwrap();
        let big = build_game(&spec, 2).unwrap();
        for p in pure_nash(&small, true).unwrap() {
            let m = MixedProfile::pure(&p);
            let e = m.embed(&small, &big).unwrap();
            assert_eq!(expected_payoff(&small, &m), expected_payoff(&big, &e));
        }
    }
}

// ---- equilibrium solvers ----

#[test]
fn strong_check_with_singletons_is_the_nash_check() {
    for name in FIXTURES {
        for k in 1..=2 {
            let g = fixture_game(name, k).class_representatives();
            for_each_profile(&g.strategy_counts(), |choices| {
                let p = PureProfile::new(&g, choices.to_vec()).unwrap();
                let nash = max_regret(&g, &MixedProfile::pure(&p)) == zero();
                assert_eq!(
                    strong_nash_check(&g, &p, 1).0,
                    nash,
                    "{name} k={k} {choices:?}"
                );
            });
        }
    }
}

fn bos_params() -> Vec<FixtureParams> {
    let mut out = Vec::new();
    for eps in [zero(), ratio(1, 10), one()] {
        for mis in [Miscoordination::Epsilon, Miscoordination::Zero] {
            out.push(FixtureParams {
                epsilon: eps.clone(),
                miscoordination: mis,
                ..FixtureParams::default()
            });
        }
    }
    out
}

#[test]
fn solver_outputs_reverify() {
    let mut games = Vec::new();
    for params in bos_params() {
        let spec = fixture_spec("bos", &params).unwrap();
        games.push(build_game(&spec, 1).unwrap());
        games.push(build_game(&spec, 2).unwrap());
    }
    for name in FIXTURES {
        games.push(fixture_game(name, 2));
    }
    for g in &games {
        let reps = g.class_representatives();
        for p in pure_nash(&reps, true).unwrap() {
            let m = MixedProfile::pure(&p);
            assert_eq!(max_regret(&reps, &m), zero());
            assert_eq!(max_regret(g, &m.embed(&reps, g).unwrap()), zero());
        }
        if g.n() == 2 {
            for (m, exact) in mixed_support_2p(g, 4).unwrap() {
                assert!(exact);
                assert_eq!(verify_candidate(g, &m), (true, zero()));
            }
        }
    }
}

#[test]
fn constant_shift_leaves_bos_equilibria_unchanged() {
    // Miscoordination (0,0) vs (ε,ε) at ε = 0 coincide; the shift by ε only on
    // joint outcomes must not change the joint-joint mixed equilibrium.
    let base = FixtureParams {
        epsilon: zero(),
        ..FixtureParams::default()
    };
    let g = build_game(&fixture_spec("bos", &base).unwrap(), 2).unwrap();
    let shifted_spec = fixture_spec(
        "bos",
        &FixtureParams {
            epsilon: ratio(1, 3),
            ..FixtureParams::default()
        },
    )
    .unwrap();
    let shifted = build_game(&shifted_spec, 2).unwrap();
    let joint = |g: &Game| -> Vec<Vec<Rational>> {
        let mut v: Vec<Vec<Rational>> = mixed_support_2p(g, 4)
            .unwrap()
            .into_iter()
            .filter(|(m, _)| {
                (0..2).all(|i| {
                    m.dist(i).len() == 2
                        && m.dist(i)
                            .iter()
                            .all(|(s, _)| g.class_of(i, *s).own_block.len() == 2)
                })
            })
            .map(|(m, _)| {
                m.dists()
                    .iter()
                    .flat_map(|d| d.iter().map(|(_, p)| p.clone()))
                    .collect()
            })
            .collect();
        v.sort();
        v
    };
    let a = joint(&g);
    assert!(!a.is_empty());
    assert_eq!(a, joint(&shifted));
}

fn random_spec_strategy() -> impl Strategy<Value = (usize, Vec<usize>, Vec<i64>, usize)> {
    (2usize..=3).prop_flat_map(|n| {
        (
            Just(n),
            proptest::collection::vec(1usize..=2, n),
            proptest::collection::vec(-3i64..6, 1..40),
            1usize..=n,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduced_pure_nash_finds_the_same_outcome_classes((n, actions, values, k) in random_spec_strategy()) {
        let spec = support::dense_spec(n, &actions, &values);
        let g = build_game(&spec, k).unwrap();
        let key = |p: &PureProfile| -> Vec<_> { (0..n).map(|i| g.class_of(i, p.choices[i])).collect() };
        let reduced: BTreeSet<_> = pure_nash(&g, true).unwrap().iter().map(key).collect();
        let full: BTreeSet<_> = pure_nash(&g, false).unwrap().iter().map(key).collect();
        prop_assert_eq!(reduced, full);
    }

    #[test]
    fn elimination_never_removes_a_unique_best_response((n, actions, values, k) in random_spec_strategy()) {
        let spec = support::dense_spec(n, &actions, &values);
        let g = build_game(&spec, k).unwrap().class_representatives();
        let (_, trace) = eliminate_weakly_dominated(&g).unwrap();
        let mut alive: Vec<BTreeSet<usize>> = g.strategy_counts().iter().map(|&c| (0..c).collect()).collect();
        for round in &trace.rounds {
            for r in round {
                let i = r.player;
                let others: Vec<Vec<usize>> = (0..n).map(|j| alive[j].iter().cloned().collect()).collect();
                let counts: Vec<usize> = others.iter().map(Vec::len).collect();
                for_each_profile(&counts, |idx| {
                    let mut p: Vec<usize> = idx.iter().enumerate().map(|(j, &x)| others[j][x]).collect();
                    p[i] = r.strategy;
                    let mine = g.payoff_of(&p)[i].clone();
                    let matched = alive[i].iter().any(|&t| {
                        p[i] = t;
                        t != r.strategy && g.payoff_of(&p)[i] >= mine
                    });
                    assert!(matched, "removed strategy is a unique best response");
                });
            }
            for r in round {
                alive[r.player].remove(&r.strategy);
            }
        }
        for (i, s) in trace.survivors.iter().enumerate() {
            prop_assert_eq!(s.iter().cloned().collect::<BTreeSet<_>>(), alive[i].clone());
        }
    }

    #[test]
    fn random_two_player_equilibria_verify((_, actions, values, k) in random_spec_strategy().prop_filter("two players", |t| t.0 == 2)) {
        let spec = support::dense_spec(2, &actions, &values);
        let g = build_game(&spec, k).unwrap();
        let found = mixed_support_2p(&g, 4).unwrap();
        prop_assert!(!found.is_empty(), "every finite game has an equilibrium");
        for (m, _) in found {
            prop_assert_eq!(max_regret(&g, &m), zero());
        }
        // K* never drops below k0.
        if k == 1 {
            let g1 = build_game(&spec, 1).unwrap();
            if let Some(p) = pure_nash(&g1, true).unwrap().first() {
                let r = stability_k_star(&spec, 1, &MixedProfile::pure(p), Policy::Forall).unwrap();
                prop_assert!(r.k_star >= 1);
                let ks: Vec<usize> = r.per_k.iter().map(|v| v.k).collect();
                let expected: Vec<usize> = (1..=(r.k_star + 1).min(2)).collect();
                prop_assert_eq!(ks, expected);
            }
        }
    }
}

// ---- analysis ----

#[test]
fn ex_ante_cooperation_implies_ex_post_1() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for name in FIXTURES {
        let g = fixture_game(name, 2).class_representatives();
        let n = g.n();
        for _ in 0..300 {
            let m = random_mixed(&g, &mut rng);
            let c = Coalition::from_mask(rng.gen_range(1..(1u64 << n))).unwrap();
            let r = cooperation_check(&g, &m, c, &zero()).unwrap();
            assert!(!r.ex_ante || r.ex_post_1, "{name}");
            assert_eq!(r.complete, r.ex_ante && r.ex_post_1 && r.ex_post_2);
        }
    }
}

#[test]
fn stability_never_drops_below_k0_on_fixtures() {
    let params = FixtureParams::default();
    for (name, profile) in [("staghare", "hare"), ("bos", "textbook-k1")] {
        let spec = fixture_spec(name, &params).unwrap();
        let g = build_game(&spec, 1).unwrap();
        let base = fixture_profile(name, profile, &params)
            .unwrap()
            .to_mixed(&g)
            .unwrap();
        for policy in [Policy::Forall, Policy::Exists] {
            let r = stability_k_star(&spec, 1, &base, policy).unwrap();
            assert!(r.k_star >= 1);
            assert_eq!(r.per_k[0].k, 1);
            assert!(r.per_k[0].passes);
        }
    }
}

fn players(n: usize) -> PlayerSet {
    PlayerSet::new((0..n).map(|i| format!("P{i}"))).unwrap()
}

proptest! {
    #[test]
    fn core_verdicts_carry_valid_certificates(n in 2usize..=4, raw in proptest::collection::vec(-5i64..15, 16)) {
        let cf = characteristic_from_fn(players(n), |c| int(raw[c.mask() as usize % raw.len()]));
        let verdict = core_empty(&cf).unwrap();
        prop_assert!(verdict.verify(&cf));
    }

    #[test]
    fn shapley_axioms(n in 4usize..=5, raw in proptest::collection::vec(-6i64..20, 32), dummy in -3i64..4) {
        // Players 0 and 1 are symmetric; the last player is a dummy worth `dummy`.
        let d = n - 1;
        let v = |mask: u64| -> Rational {
            let rest = mask & !(1u64 << d);
            let sym = if (rest & 1 != 0) != (rest & 2 != 0) { rest & !3 | 1 } else { rest };
            let base = if rest == 0 { zero() } else { int(raw[sym as usize % raw.len()]) };
            if mask & (1 << d) != 0 { base + int(dummy) } else { base }
        };
        let cf = characteristic_from_fn(players(n), |c| v(c.mask()));
        let phi = shapley_value(&cf);
        prop_assert_eq!(phi.iter().cloned().sum::<Rational>(), v((1u64 << n) - 1));
        prop_assert_eq!(&phi[0], &phi[1]);
        prop_assert_eq!(&phi[d], &int(dummy));
    }
}

#[test]
fn simulation_tracks_the_realized_distribution() {
    let params = FixtureParams::default();
    let cases = [
        ("dinner", "equilibrium"),
        ("lunch", "uniform"),
        ("bos", "joint-mixed"),
        ("staghare", "hare"),
    ];
    let steps = 100_000usize;
    for (name, profile) in cases {
        let spec = fixture_spec(name, &params).unwrap();
        let doc = fixture_profile(name, profile, &params).unwrap();
        let g = build_game(&spec, doc.k.unwrap()).unwrap();
        let m = doc.to_mixed(&g).unwrap();
        let sample = simulate(&g, &m, steps, 42, profile).unwrap();
        let dist = realized_distribution(&g, &m);
        let freq = frequencies(&sample);
        assert!(freq.keys().all(|p| dist.contains_key(p)), "{name}");
        for (p, q) in &dist {
            let q = to_f64(q);
            let got = *freq.get(p).unwrap_or(&0) as f64 / steps as f64;
            let se = (q * (1.0 - q) / steps as f64).sqrt();
            assert!((got - q).abs() <= 4.0 * se + 1e-12, "{name}: {got} vs {q}");
        }
    }
}
