//! JSON game-spec documents (format version 1).
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "metadata": { "name": "dinner", "notes": [] },
//!   "players": ["A", "B", "C1", "C2"],
//!   "payoffs": [
//!     { "partition": "A,B|C1|C2", "payoff": [10, 10, 3, 3] }
//!   ],
//!   "default_payoff": [1, 1, 1, 1]
//! }
//! ```
//!
//! `actions` is optional (one list per player, in player order); an entry's
//! `actions` pattern lists one label or `"*"` per player. A `"*"` partition
//! matches every partition without an exact entry. Payoff values are JSON
//! integers or exact rational strings such as `"21/10"`.

use crate::error::{Diagnostic, Error, Result};
use crate::game::{
    overlap_diagnostics, ActionPattern, GameSpec, PartitionPattern, PayoffEntry, DUMMY_ACTION,
};
use crate::partition::{parse_partition, PlayerSet};
use crate::rational::{serde_q_vec, Rational};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default)]
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDocument {
    pub partition: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actions: Option<Vec<String>>,
    #[serde(with = "serde_q_vec")]
    pub payoff: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameSpecDocument {
    pub format_version: u32,
    #[serde(default)]
    pub metadata: Metadata,
    pub players: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actions: Option<Vec<Vec<String>>>,
    pub payoffs: Vec<EntryDocument>,
    #[serde(with = "serde_q_vec")]
    pub default_payoff: Vec<Rational>,
}

/// Strict parse: syntax errors carry line/column, semantic problems are
/// returned together as [`Error::Validation`].
pub fn parse_gamespec(text: &str) -> Result<GameSpecDocument> {
    let doc: GameSpecDocument = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.to_spec()?;
    Ok(doc)
}

/// Parses and validates, returning the built spec.
pub fn load_spec(text: &str) -> Result<Arc<GameSpec>> {
    let doc = parse_gamespec(text)?;
    Ok(Arc::new(doc.to_spec()?))
}

impl GameSpecDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Validates into a [`GameSpec`], collecting every problem found.
    pub fn to_spec(&self) -> Result<GameSpec> {
        let mut problems = Vec::new();
        if self.format_version != FORMAT_VERSION {
            problems.push(Diagnostic {
                location: "format_version".into(),
                message: format!(
                    "unsupported version {} (expected {FORMAT_VERSION})",
                    self.format_version
                ),
            });
        }
        let players = match PlayerSet::new(self.players.iter().cloned()) {
            Ok(p) => p,
            Err(e) => {
                problems.push(Diagnostic {
                    location: "players".into(),
                    message: e.to_string(),
                });
                return Err(Error::Validation(problems));
            }
        };
        let n = players.len();
        let action_lists: Vec<Vec<String>> = self
            .actions
            .clone()
            .unwrap_or_else(|| vec![vec![DUMMY_ACTION.to_string()]; n]);

        if self.default_payoff.len() != n {
            problems.push(Diagnostic {
                location: "default_payoff".into(),
                message: format!(
                    "payoff vector has length {}, expected {n}",
                    self.default_payoff.len()
                ),
            });
        }
        let mut entries = Vec::with_capacity(self.payoffs.len());
        for (e, entry) in self.payoffs.iter().enumerate() {
            if entry.payoff.len() != n {
                problems.push(Diagnostic {
                    location: format!("payoffs[{e}].payoff"),
                    message: format!(
                        "payoff vector has length {}, expected {n}",
                        entry.payoff.len()
                    ),
                });
            }
            let partition = if entry.partition.trim() == "*" {
                Some(PartitionPattern::Any)
            } else {
                match parse_partition(&entry.partition, &players) {
                    Ok(p) => Some(PartitionPattern::Exact(p)),
                    Err(err) => {
                        problems.push(Diagnostic {
                            location: format!("payoffs[{e}].partition"),
                            message: err.to_string(),
                        });
                        None
                    }
                }
            };
            let actions = match &entry.actions {
                None => Some(None),
                Some(labels) if labels.len() != n => {
                    problems.push(Diagnostic {
                        location: format!("payoffs[{e}].actions"),
                        message: format!(
                            "action pattern has length {}, expected {n}",
                            labels.len()
                        ),
                    });
                    None
                }
                Some(labels) => {
                    let mut pat = Vec::with_capacity(n);
                    let mut ok = true;
                    for (i, label) in labels.iter().enumerate() {
                        if label == "*" {
                            pat.push(ActionPattern::Any);
                        } else if let Some(a) = action_lists
                            .get(i)
                            .and_then(|l| l.iter().position(|x| x == label))
                        {
                            pat.push(ActionPattern::Exact(a));
                        } else {
                            ok = false;
                            problems.push(Diagnostic {
                                location: format!("payoffs[{e}].actions[{i}]"),
                                message: format!(
                                    "unknown action \"{label}\" for player \"{}\"",
                                    players.label(i)
                                ),
                            });
                        }
                    }
                    ok.then_some(Some(pat))
                }
            };
            if let (Some(partition), Some(actions)) = (partition, actions) {
                entries.push((
                    e,
                    PayoffEntry {
                        partition,
                        actions,
                        payoff: entry.payoff.clone(),
                    },
                ));
            }
        }
        if !problems.is_empty() {
            // Report structural problems first; overlap checks need well-formed entries.
            let numbered: Vec<(usize, &PayoffEntry)> =
                entries.iter().map(|(e, x)| (*e, x)).collect();
            problems.extend(overlap_diagnostics(&numbered));
            return Err(Error::Validation(problems));
        }
        GameSpec::new(
            self.metadata.name.clone(),
            players,
            self.actions.clone(),
            entries.into_iter().map(|(_, x)| x).collect(),
            self.default_payoff.clone(),
        )
    }

    /// Serializes a validated spec back into a document.
    pub fn from_spec(spec: &GameSpec, notes: Vec<String>) -> GameSpecDocument {
        let ps = spec.players();
        let dummy = spec.has_dummy_actions();
        let payoffs = spec
            .entries()
            .iter()
            .map(|e| EntryDocument {
                partition: match &e.partition {
                    PartitionPattern::Exact(p) => p.render(ps),
                    PartitionPattern::Any => "*".into(),
                },
                actions: e.actions.as_ref().map(|pat| {
                    pat.iter()
                        .enumerate()
                        .map(|(i, a)| match a {
                            ActionPattern::Exact(a) => spec.actions()[i][*a].clone(),
                            ActionPattern::Any => "*".into(),
                        })
                        .collect()
                }),
                payoff: e.payoff.clone(),
                note: None,
            })
            .collect();
        GameSpecDocument {
            format_version: FORMAT_VERSION,
            metadata: Metadata {
                name: spec.name.clone(),
                notes,
            },
            players: ps.labels().to_vec(),
            actions: (!dummy).then(|| spec.actions().to_vec()),
            payoffs,
            default_payoff: spec.default_payoff().to_vec(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    const MINIMAL: &str = r#"{
        "format_version": 1,
        "players": ["1", "2"],
        "payoffs": [ { "partition": "1,2", "payoff": [2, "3/2"] } ],
        "default_payoff": [0, 0]
    }"#;

    #[test]
    fn minimal_document_is_valid() {
        let spec = load_spec(MINIMAL).unwrap();
        assert_eq!(spec.n(), 2);
        assert_eq!(spec.entries()[0].payoff[1], crate::rational::ratio(3, 2));
    }

    #[test]
    fn missing_player_is_named() {
        let text = r#"{
            "format_version": 1,
            "players": ["A", "B", "C"],
            "payoffs": [ { "partition": "A,B", "payoff": [1, 1, 1] } ],
            "default_payoff": [0, 0, 0]
        }"#;
        let err = parse_gamespec(text).unwrap_err();
        match err {
            Error::Validation(d) => {
                assert_eq!(d[0].location, "payoffs[0].partition");
                assert!(d[0].message.contains("\"C\""), "{}", d[0].message);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn syntax_errors_are_located() {
        let err =
            parse_gamespec("{\n  \"format_version\": 1,\n  \"players\": [\"A\",\n}").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 4, .. }), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = MINIMAL.replace("\"players\"", "\"colour\": 1, \"players\"");
        assert!(matches!(parse_gamespec(&text), Err(Error::Syntax { .. })));
    }

    #[test]
    fn semantic_errors_are_collected() {
        let text = r#"{
            "format_version": 1,
            "players": ["1", "2"],
            "actions": [["x", "y"], ["x"]],
            "payoffs": [
                { "partition": "1,2", "actions": ["z", "x"], "payoff": [1, 1] },
                { "partition": "1|2", "payoff": [1] },
                { "partition": "1|2", "payoff": [1, 2] }
            ],
            "default_payoff": [0, 0]
        }"#;
        match parse_gamespec(text).unwrap_err() {
            Error::Validation(d) => {
                let locs: Vec<&str> = d.iter().map(|x| x.location.as_str()).collect();
                assert!(locs.contains(&"payoffs[0].actions[0]"), "{locs:?}");
                assert!(locs.contains(&"payoffs[1].payoff"), "{locs:?}");
                assert!(locs.contains(&"payoffs[2]"), "{locs:?}");
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn decimals_and_integers_parse_exactly() {
        let text = MINIMAL.replace("[2, \"3/2\"]", "[0.1, -4]");
        let spec = load_spec(&text).unwrap();
        assert_eq!(
            spec.entries()[0].payoff,
            vec![crate::rational::ratio(1, 10), int(-4)]
        );
    }
}
