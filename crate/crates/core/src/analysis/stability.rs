//! The K* stability criterion over the nested family Γ(k0) ⊂ … ⊂ Γ(N).
//!
//! For each k ≥ k0 two conditions are checked:
//! 1. payoffs: equilibria of Γ(k) that use a coalition larger than k0 (the
//!    ones Γ(k0) could not reach) pay no player more than the base equilibrium;
//! 2. domain: the base equilibrium, embedded in Γ(k), is still an exact
//!    equilibrium with the same class support.
//!
//! Equilibria of Γ(k) are collected on outcome-class representatives after
//! iterated weak-dominance elimination: every pure equilibrium, plus support
//! enumeration for two players. Without the refinement, unreached coalitions
//! admit "equilibria" in which a player keeps asking for a block that never
//! forms, and those pay exactly what Γ(k0)'s own equilibria pay.

use crate::equilibrium::{
    eliminate_weakly_dominated, max_regret, mixed_support_2p, pure_nash, DEFAULT_MAX_SUPPORT,
};
use crate::error::{Error, Result};
use crate::game::{build_game, expected_payoff, GameSpec, MixedProfile};
use crate::rational::Rational;
use num_traits::Zero;
use std::collections::HashSet;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Policy {
    /// Every new equilibrium must respect condition 1.
    #[default]
    Forall,
    /// Some equilibrium of Γ(k) must satisfy both conditions; the embedded
    /// base equilibrium is the natural witness.
    Exists,
}

impl Policy {
    pub fn name(self) -> &'static str {
        match self {
            Policy::Forall => "forall",
            Policy::Exists => "exists",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepVerdict {
    pub k: usize,
    /// Condition 1 per player over the examined equilibria.
    pub payoff_ok: Vec<bool>,
    /// Condition 2.
    pub domain_ok: bool,
    /// Equilibria of Γ(k) found.
    pub examined: usize,
    /// Of those, equilibria using a block larger than k0.
    pub new_equilibria: usize,
    pub passes: bool,
    /// Payoffs of a new equilibrium beating the base, when one exists.
    pub witness: Option<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub k0: usize,
    pub k_star: usize,
    pub policy: Policy,
    pub base_payoffs: Vec<Rational>,
    pub per_k: Vec<StepVerdict>,
}

/// `base` must be a profile of `build_game(spec, k0)`.
pub fn stability_k_star(
    spec: &Arc<GameSpec>,
    k0: usize,
    base: &MixedProfile,
    policy: Policy,
) -> Result<StabilityReport> {
    let g0 = build_game(spec, k0)?;
    if MixedProfile::new(&g0, base.dists().to_vec()).is_err() {
        return Err(Error::Precondition(format!(
            "base profile is not a profile of Γ({k0})"
        )));
    }
    let r0 = max_regret(&g0, base);
    if !r0.is_zero() {
        return Err(Error::Precondition(format!(
            "base profile is not an equilibrium of Γ({k0}): max regret {}",
            crate::rational::format_rational(&r0)
        )));
    }
    let base_payoffs = expected_payoff(&g0, base);
    let base_domain = base.class_support(&g0);
    let n = spec.n();
    let mut per_k = Vec::new();
    for k in k0..=n {
        if k == k0 {
            per_k.push(StepVerdict {
                k,
                payoff_ok: vec![true; n],
                domain_ok: true,
                examined: 1,
                new_equilibria: 0,
                passes: true,
                witness: None,
            });
            continue;
        }
        let gk = build_game(spec, k)?;
        let embedded = base.embed(&g0, &gk)?;
        let domain_ok =
            max_regret(&gk, &embedded).is_zero() && embedded.class_support(&gk) == base_domain;

        let reps = gk.class_representatives();
        let (reduced, _) = eliminate_weakly_dominated(&reps)?;
        let mut eqs: Vec<MixedProfile> = pure_nash(&reduced, false)?
            .iter()
            .map(MixedProfile::pure)
            .collect();
        if n == 2 {
            let mut seen: HashSet<MixedProfile> = eqs.iter().cloned().collect();
            for (m, _) in mixed_support_2p(&reduced, DEFAULT_MAX_SUPPORT)? {
                if seen.insert(m.clone()) {
                    eqs.push(m);
                }
            }
        }
        let mut payoff_ok = vec![true; n];
        let mut new_equilibria = 0;
        let mut witness = None;
        for m in &eqs {
            let uses_new = m
                .class_support(&reduced)
                .iter()
                .flatten()
                .any(|c| c.own_block.len() > k0);
            if !uses_new {
                continue;
            }
            new_equilibria += 1;
            let eu = expected_payoff(&reduced, m);
            let mut beaten = false;
            for (i, (u, b)) in eu.iter().zip(&base_payoffs).enumerate() {
                if u > b {
                    payoff_ok[i] = false;
                    beaten = true;
                }
            }
            if beaten && witness.is_none() {
                witness = Some(eu);
            }
        }
        let passes = match policy {
            Policy::Forall => domain_ok && payoff_ok.iter().all(|&ok| ok),
            Policy::Exists => domain_ok,
        };
        per_k.push(StepVerdict {
            k,
            payoff_ok,
            domain_ok,
            examined: eqs.len(),
            new_equilibria,
            passes,
            witness,
        });
    }
    let k_star = per_k
        .iter()
        .take_while(|v| v.passes)
        .last()
        .map(|v| v.k)
        .unwrap_or(k0);
    Ok(StabilityReport {
        k0,
        k_star,
        policy,
        base_payoffs,
        per_k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{fixture_profile, fixture_spec, FixtureParams};

    fn k_star(name: &str, profile: &str, k0: usize) -> StabilityReport {
        let params = FixtureParams::default();
        let spec = fixture_spec(name, &params).unwrap();
        let g0 = build_game(&spec, k0).unwrap();
        let base = fixture_profile(name, profile, &params)
            .unwrap()
            .to_mixed(&g0)
            .unwrap();
        stability_k_star(&spec, k0, &base, Policy::Forall).unwrap()
    }

    #[test]
    fn staghare_is_not_stable_beyond_one() {
        let r = k_star("staghare", "hare", 1);
        assert_eq!(r.k_star, 1);
        assert!(!r.per_k[1].passes);
        assert!(r.per_k[1].domain_ok);
    }

    #[test]
    fn non_equilibrium_base_is_rejected() {
        let params = FixtureParams::default();
        let spec = fixture_spec("bos", &params).unwrap();
        let g0 = build_game(&spec, 1).unwrap();
        let bad = MixedProfile::new(
            &g0,
            vec![
                vec![(0, crate::rational::one())],
                vec![(1, crate::rational::one())],
            ],
        )
        .unwrap();
        assert!(matches!(
            stability_k_star(&spec, 1, &bad, Policy::Forall),
            Err(Error::Precondition(_))
        ));
    }
}
