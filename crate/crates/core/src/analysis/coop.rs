//! Cooperative-game cross-checks on a characteristic function extracted from
//! the partition-form payoffs.

use crate::error::{Error, Result};
use crate::game::{for_each_profile, GameSpec};
use crate::lp::{maximize, LpOutcome};
use crate::partition::{enumerate_partitions, Coalition, PlayerSet};
use crate::rational::{one, zero, Rational};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Largest player count accepted by [`core_empty`].
pub const MAX_CORE_PLAYERS: usize = 6;
/// Partition × action-profile evaluations allowed during extraction.
pub const MAX_EXTRACTION_WORK: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    /// Best value a coalition attains over the partitions containing it.
    #[default]
    Optimistic,
    /// Worst such value.
    Pessimistic,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::Optimistic => "optimistic",
            Convention::Pessimistic => "pessimistic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicFunction {
    players: PlayerSet,
    convention: Convention,
    /// Indexed by coalition mask; entry 0 is v(∅) = 0.
    values: Vec<Rational>,
}

impl CharacteristicFunction {
    /// `values[mask]` for every mask in `1..2^n`; `values[0]` must be zero.
    pub fn from_values(
        players: PlayerSet,
        convention: Convention,
        values: Vec<Rational>,
    ) -> Result<Self> {
        let n = players.len();
        if n > 20 || values.len() != 1usize << n {
            return Err(Error::Domain(format!(
                "expected {} coalition values for {n} players, got {}",
                1u64 << n.min(63),
                values.len()
            )));
        }
        if values[0] != zero() {
            return Err(Error::Domain("v(empty set) must be 0".into()));
        }
        Ok(CharacteristicFunction {
            players,
            convention,
            values,
        })
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    pub fn n(&self) -> usize {
        self.players.len()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn value(&self, c: Coalition) -> &Rational {
        &self.values[c.mask() as usize]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn grand_value(&self) -> &Rational {
        &self.values[self.values.len() - 1]
    }
}

/// v(S) = max or min, over partitions containing S as a block (and over action
/// profiles), of the payoff sum of S's members.
pub fn extract_characteristic(
    spec: &GameSpec,
    convention: Convention,
) -> Result<CharacteristicFunction> {
    let n = spec.n();
    if n > 20 {
        return Err(Error::Resource(format!(
            "{n} players is too many for a characteristic function"
        )));
    }
    let partitions = enumerate_partitions(n, n)?;
    let work = partitions.len() as u128 * spec.action_profile_count() as u128;
    if work > MAX_EXTRACTION_WORK {
        return Err(Error::Resource(format!(
            "extraction needs {work} payoff evaluations, limit is {MAX_EXTRACTION_WORK}"
        )));
    }
    let counts: Vec<usize> = spec.actions().iter().map(Vec::len).collect();
    let mut best: Vec<Option<Rational>> = vec![None; 1usize << n];
    for p in &partitions {
        for_each_profile(&counts, |a| {
            let u = spec.payoff(p, a);
            for &b in p.blocks() {
                let sum: Rational = b.members().map(|i| &u[i]).sum();
                let slot = &mut best[b.mask() as usize];
                let replace = match (slot.as_ref(), convention) {
                    (None, _) => true,
                    (Some(cur), Convention::Optimistic) => sum > *cur,
                    (Some(cur), Convention::Pessimistic) => sum < *cur,
                };
                if replace {
                    *slot = Some(sum);
                }
            }
        });
    }
    let mut values = Vec::with_capacity(best.len());
    values.push(zero());
    values.extend(
        best.into_iter()
            .skip(1)
            .map(|v| v.expect("every coalition is a block of some partition")),
    );
    CharacteristicFunction::from_values(spec.players().clone(), convention, values)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreVerdict {
    /// A point in the core.
    NonEmpty { point: Vec<Rational> },
    /// Balancing weights λ_S with Σ_S λ_S v(S) > v(N).
    Empty {
        weights: BTreeMap<Coalition, Rational>,
        weighted_value: Rational,
    },
}

impl CoreVerdict {
    pub fn is_empty(&self) -> bool {
        matches!(self, CoreVerdict::Empty { .. })
    }

    /// Re-checks the verdict exactly against `cf`.
    pub fn verify(&self, cf: &CharacteristicFunction) -> bool {
        let n = cf.n();
        match self {
            CoreVerdict::NonEmpty { point } => {
                point.len() == n
                    && point.iter().sum::<Rational>() == *cf.grand_value()
                    && Coalition::all_nonempty(n)
                        .all(|c| c.members().map(|i| &point[i]).sum::<Rational>() >= *cf.value(c))
            }
            CoreVerdict::Empty {
                weights,
                weighted_value,
            } => {
                let balanced = (0..n).all(|i| {
                    weights
                        .iter()
                        .filter(|(c, _)| c.contains(i))
                        .map(|(_, w)| w)
                        .sum::<Rational>()
                        == one()
                });
                let nonneg = weights.values().all(|w| *w >= zero());
                let total: Rational = weights.iter().map(|(c, w)| w * cf.value(*c)).sum();
                balanced && nonneg && total == *weighted_value && total > *cf.grand_value()
            }
        }
    }
}

/// Decides core emptiness exactly: the balancing LP max Σ λ_S v(S) over
/// balanced weights exceeds v(N) iff the core is empty.
pub fn core_empty(cf: &CharacteristicFunction) -> Result<CoreVerdict> {
    let n = cf.n();
    if n > MAX_CORE_PLAYERS {
        return Err(Error::Resource(format!(
            "core check supports at most {MAX_CORE_PLAYERS} players, got {n}"
        )));
    }
    let coalitions: Vec<Coalition> = Coalition::all_nonempty(n).collect();
    let c: Vec<Rational> = coalitions.iter().map(|s| cf.value(*s).clone()).collect();
    let a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            coalitions
                .iter()
                .map(|s| if s.contains(i) { one() } else { zero() })
                .collect()
        })
        .collect();
    let b = vec![one(); n];
    let LpOutcome::Optimal { x, value } = maximize(&c, &a, &b) else {
        unreachable!("balancing LP is feasible (λ_N = 1) and bounded (λ ≤ 1)")
    };
    if value > *cf.grand_value() {
        let weights = coalitions
            .iter()
            .zip(x)
            .filter(|(_, w)| *w != zero())
            .map(|(s, w)| (*s, w))
            .collect();
        return Ok(CoreVerdict::Empty {
            weights,
            weighted_value: value,
        });
    }
    Ok(CoreVerdict::NonEmpty {
        point: core_point(cf, &coalitions),
    })
}

/// min Σ x_i subject to x(S) ≥ v(S); optimal value equals v(N) when the core is nonempty.
fn core_point(cf: &CharacteristicFunction, coalitions: &[Coalition]) -> Vec<Rational> {
    let n = cf.n();
    // x_i = v({i}) + y_i with y ≥ 0; one surplus column per coalition.
    let base: Vec<Rational> = (0..n)
        .map(|i| cf.value(Coalition::singleton(i)).clone())
        .collect();
    let m = coalitions.len();
    let mut c = vec![-one(); n];
    c.extend((0..m).map(|_| zero()));
    let mut a = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (r, s) in coalitions.iter().enumerate() {
        let mut row: Vec<Rational> = (0..n)
            .map(|i| if s.contains(i) { one() } else { zero() })
            .collect();
        row.extend((0..m).map(|j| if j == r { -one() } else { zero() }));
        a.push(row);
        rhs.push(cf.value(*s) - s.members().map(|i| &base[i]).sum::<Rational>());
    }
    let LpOutcome::Optimal { x, .. } = maximize(&c, &a, &rhs) else {
        unreachable!("x_i large enough satisfies every constraint; Σx is bounded below by v(N)")
    };
    (0..n).map(|i| &base[i] + &x[i]).collect()
}

/// Shapley value by the subset formula.
pub fn shapley_value(cf: &CharacteristicFunction) -> Vec<Rational> {
    let n = cf.n();
    let fact: Vec<BigInt> = (0..=n)
        .scan(BigInt::from(1), |acc, k| {
            if k > 0 {
                *acc *= k;
            }
            Some(acc.clone())
        })
        .collect();
    let total = Rational::from_integer(fact[n].clone());
    (0..n)
        .map(|i| {
            let bit = 1usize << i;
            let mut phi = zero();
            for s in 0..(1usize << n) {
                if s & bit != 0 {
                    continue;
                }
                let size = s.count_ones() as usize;
                let weight = Rational::from_integer(&fact[size] * &fact[n - size - 1]);
                phi += weight * (&cf.values[s | bit] - &cf.values[s]);
            }
            phi / &total
        })
        .collect()
}

/// Characteristic function of v(S) = f(S) for every nonempty S.
pub fn characteristic_from_fn(
    players: PlayerSet,
    f: impl Fn(Coalition) -> Rational,
) -> CharacteristicFunction {
    let n = players.len();
    let mut values = vec![zero(); 1usize << n];
    for c in Coalition::all_nonempty(n) {
        values[c.mask() as usize] = f(c);
    }
    CharacteristicFunction::from_values(players, Convention::Optimistic, values)
        .expect("sizes match")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{fixture_spec, FixtureParams};
    use crate::partition::parse_coalition;
    use crate::rational::{int, ratio};

    #[test]
    fn dinner_values_and_empty_core() {
        let spec = fixture_spec("dinner", &FixtureParams::default()).unwrap();
        let cf = extract_characteristic(&spec, Convention::Optimistic).unwrap();
        let ps = spec.players();
        assert_eq!(*cf.value(parse_coalition("A,B", ps).unwrap()), int(20));
        assert_eq!(*cf.value(parse_coalition("C1,C2", ps).unwrap()), int(10));
        assert_eq!(*cf.value(parse_coalition("C1", ps).unwrap()), int(3));
        assert_eq!(*cf.grand_value(), int(4));
        let verdict = core_empty(&cf).unwrap();
        assert!(verdict.is_empty());
        assert!(verdict.verify(&cf));
    }

    #[test]
    fn majority_game_has_empty_core() {
        let ps = PlayerSet::new(["1", "2", "3"]).unwrap();
        let cf = characteristic_from_fn(ps, |c| if c.len() >= 2 { one() } else { zero() });
        let v = core_empty(&cf).unwrap();
        assert!(v.is_empty() && v.verify(&cf));
        assert_eq!(shapley_value(&cf), vec![ratio(1, 3); 3]);
    }

    #[test]
    fn additive_game_core_point() {
        let ps = PlayerSet::new(["1", "2", "3"]).unwrap();
        let w = [int(2), int(-1), ratio(1, 2)];
        let cf = characteristic_from_fn(ps, |c| c.members().map(|i| w[i].clone()).sum());
        match core_empty(&cf).unwrap() {
            v @ CoreVerdict::NonEmpty { .. } => {
                assert!(v.verify(&cf));
                if let CoreVerdict::NonEmpty { point } = v {
                    assert_eq!(point, w.to_vec());
                }
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(shapley_value(&cf), w.to_vec());
    }

    #[test]
    fn glove_shapley() {
        let ps = PlayerSet::new(["1", "2", "3"]).unwrap();
        let cf = characteristic_from_fn(ps, |c| {
            if c.contains(0) && c.contains(1) {
                one()
            } else {
                zero()
            }
        });
        assert_eq!(shapley_value(&cf), vec![ratio(1, 2), ratio(1, 2), zero()]);
    }

    #[test]
    fn too_many_players_for_core() {
        let labels: Vec<String> = (0..7).map(|i| format!("p{i}")).collect();
        let cf = characteristic_from_fn(PlayerSet::new(labels).unwrap(), |c| int(c.len() as i64));
        assert!(matches!(core_empty(&cf), Err(Error::Resource(_))));
    }
}
