//! Equilibrium partition sets and seeded trajectory sampling.

use crate::error::{Error, Result};
use crate::game::{realized_distribution, Game, MixedProfile};
use crate::partition::Partition;
use crate::rational::to_f64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

/// Union of the realized-partition supports of the given profiles.
pub fn equilibrium_partitions(g: &Game, equilibria: &[MixedProfile]) -> BTreeSet<Partition> {
    equilibria
        .iter()
        .flat_map(|m| realized_distribution(g, m).into_keys())
        .collect()
}

/// At least two equilibrium partitions.
pub fn is_stochastic(g: &Game, equilibria: &[MixedProfile]) -> bool {
    equilibrium_partitions(g, equilibria).len() >= 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrajectorySample {
    pub states: Vec<Partition>,
    pub seed: u64,
    pub game: String,
    pub profile: String,
}

/// Samples `steps` independent plays of `m`: each step draws every player's
/// strategy and applies the formation rule.
pub fn simulate(
    g: &Game,
    m: &MixedProfile,
    steps: usize,
    seed: u64,
    profile_label: &str,
) -> Result<TrajectorySample> {
    if steps == 0 {
        return Err(Error::Domain("simulation needs at least one step".into()));
    }
    let samplers: Vec<(Vec<usize>, WeightedIndex<f64>)> = m
        .dists()
        .iter()
        .map(|d| {
            let idx = d.iter().map(|(s, _)| *s).collect();
            let w = WeightedIndex::new(d.iter().map(|(_, p)| to_f64(p))).expect("positive weights");
            (idx, w)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut profile = vec![0usize; g.n()];
    let mut states = Vec::with_capacity(steps);
    for _ in 0..steps {
        for (slot, (idx, w)) in profile.iter_mut().zip(&samplers) {
            *slot = idx[w.sample(&mut rng)];
        }
        states.push(g.realize(&profile));
    }
    Ok(TrajectorySample {
        states,
        seed,
        game: format!("{} K={}", g.spec().name, g.k()),
        profile: profile_label.to_string(),
    })
}

/// Count of each visited partition.
pub fn frequencies(sample: &TrajectorySample) -> BTreeMap<Partition, usize> {
    let mut out = BTreeMap::new();
    for s in &sample.states {
        *out.entry(s.clone()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{build_game, PureProfile};
    use crate::io::{fixture_profile, fixture_spec, FixtureParams};

    #[test]
    fn pure_profiles_give_constant_trajectories() {
        let spec = fixture_spec("staghare", &FixtureParams::default()).unwrap();
        let g = build_game(&spec, 2).unwrap();
        let m = MixedProfile::pure(&PureProfile::new(&g, vec![0, 0]).unwrap());
        let t = simulate(&g, &m, 50, 7, "pure").unwrap();
        assert!(t.states.iter().all(|s| *s == t.states[0]));
        assert!(!is_stochastic(&g, &[m]));
    }

    #[test]
    fn same_seed_same_states() {
        let params = FixtureParams::default();
        let spec = fixture_spec("lunch", &params).unwrap();
        let g = build_game(&spec, 2).unwrap();
        let m = fixture_profile("lunch", "uniform", &params)
            .unwrap()
            .to_mixed(&g)
            .unwrap();
        let a = simulate(&g, &m, 500, 42, "uniform").unwrap();
        let b = simulate(&g, &m, 500, 42, "uniform").unwrap();
        assert_eq!(a, b);
        assert!(is_stochastic(&g, &[m]));
        assert!(simulate(&g, &a_profile(&g), 0, 1, "x").is_err());
    }

    fn a_profile(g: &Game) -> MixedProfile {
        MixedProfile::pure(&PureProfile::new(g, vec![0; g.n()]).unwrap())
    }
}
