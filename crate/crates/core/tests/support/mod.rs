#![allow(dead_code)]

use coalition_core::game::{ActionPattern, GameSpec, PartitionPattern, PayoffEntry};
use coalition_core::partition::{enumerate_partitions, PlayerSet};
use coalition_core::rational::{int, Rational};
use std::sync::Arc;

/// A spec listing every partition (and action profile) explicitly, with
/// payoffs drawn from `values` in order, cycling.
pub fn dense_spec(n: usize, actions: &[usize], values: &[i64]) -> Arc<GameSpec> {
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let ps = PlayerSet::new(labels).unwrap();
    let action_lists: Option<Vec<Vec<String>>> = (!actions.iter().all(|&a| a == 1)).then(|| {
        actions
            .iter()
            .map(|&c| (0..c).map(|a| format!("a{a}")).collect())
            .collect()
    });
    let mut entries = Vec::new();
    let mut next = 0usize;
    let mut draw = || {
        let v = values[next % values.len()];
        next += 1;
        int(v)
    };
    for p in enumerate_partitions(n, n).unwrap() {
        let mut profile = vec![0usize; n];
        loop {
            let payoff: Vec<Rational> = (0..n).map(|_| draw()).collect();
            entries.push(PayoffEntry {
                partition: PartitionPattern::Exact(p.clone()),
                actions: action_lists
                    .as_ref()
                    .map(|_| profile.iter().map(|&a| ActionPattern::Exact(a)).collect()),
                payoff,
            });
            if action_lists.is_none() {
                break;
            }
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                profile[i] += 1;
                if profile[i] < actions[i] {
                    break;
                }
                profile[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    Arc::new(GameSpec::new("random", ps, action_lists, entries, vec![int(0); n]).unwrap())
}
