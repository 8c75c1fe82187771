//! Candidate-profile documents: a mixed profile written by strategy value so it
//! can be loaded into any Γ(K) whose strategy sets contain it.
//!
//! ```json
//! { "format_version": 1, "k": 2, "label": "…",
//!   "strategies": [ { "player": "A", "partition": "A,B|C1|C2", "probability": "1/2" } ] }
//! ```

use crate::error::{Error, Result};
use crate::game::{Game, MixedProfile, Strategy};
use crate::partition::parse_partition;
use crate::rational::{serde_q, Rational};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedStrategy {
    pub player: String,
    pub partition: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
    #[serde(with = "serde_q")]
    pub probability: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDocument {
    pub format_version: u32,
    /// Coalition-size bound the profile was written for, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
    pub strategies: Vec<WeightedStrategy>,
}

pub fn parse_profile(text: &str) -> Result<ProfileDocument> {
    serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

impl ProfileDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("profile serializes")
    }

    pub fn to_mixed(&self, g: &Game) -> Result<MixedProfile> {
        let spec = g.spec();
        let ps = spec.players();
        let mut dists: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); g.n()];
        for (e, w) in self.strategies.iter().enumerate() {
            let i = ps.index_of(&w.player).ok_or_else(|| {
                Error::Profile(format!("strategies[{e}]: unknown player \"{}\"", w.player))
            })?;
            let desired = parse_partition(&w.partition, ps)
                .map_err(|err| Error::Profile(format!("strategies[{e}]: {err}")))?;
            let actions = &spec.actions()[i];
            let action = match &w.action {
                Some(label) => actions.iter().position(|a| a == label).ok_or_else(|| {
                    Error::Profile(format!(
                        "strategies[{e}]: unknown action \"{label}\" for player \"{}\"",
                        w.player
                    ))
                })?,
                None if actions.len() == 1 => 0,
                None => {
                    return Err(Error::Profile(format!(
                    "strategies[{e}]: player \"{}\" has several actions; \"action\" is required",
                    w.player
                )))
                }
            };
            let s = g
                .index_of(i, &Strategy { desired, action })
                .ok_or_else(|| {
                    Error::Profile(format!(
                        "strategies[{e}]: \"{}\" is not a strategy of Γ({}) for player \"{}\"",
                        w.partition,
                        g.k(),
                        w.player
                    ))
                })?;
            dists[i].push((s, w.probability.clone()));
        }
        if let Some(i) = dists.iter().position(Vec::is_empty) {
            return Err(Error::Profile(format!(
                "no strategy listed for player \"{}\"",
                ps.label(i)
            )));
        }
        MixedProfile::new(g, dists)
    }

    pub fn from_mixed(g: &Game, m: &MixedProfile, label: impl Into<String>) -> ProfileDocument {
        let spec = g.spec();
        let dummy = spec.has_dummy_actions();
        let strategies = m
            .dists()
            .iter()
            .enumerate()
            .flat_map(|(i, d)| {
                d.iter().map(move |(s, p)| {
                    let strat = &g.strategies(i)[*s];
                    WeightedStrategy {
                        player: spec.players().label(i).to_string(),
                        partition: strat.desired.render(spec.players()),
                        action: (!dummy).then(|| spec.actions()[i][strat.action].clone()),
                        probability: p.clone(),
                    }
                })
            })
            .collect();
        ProfileDocument {
            format_version: 1,
            k: Some(g.k()),
            label: label.into(),
            strategies,
        }
    }
}
