//! Built-in games: corporate dinner, office lunch, the coalition version of
//! Battle of the Sexes, and the expanded stag hunt. Each comes with named
//! candidate profiles that the CLI and tests load by name.

use crate::error::{Error, Result};
use crate::game::GameSpec;
use crate::io::document::{EntryDocument, GameSpecDocument, Metadata, FORMAT_VERSION};
use crate::io::profile::{ProfileDocument, WeightedStrategy};
use crate::rational::{format_rational, int, ratio, Rational};
use num_traits::Signed;
use std::sync::Arc;

pub const FIXTURE_NAMES: [&str; 4] = ["dinner", "lunch", "bos", "staghare"];

/// What the BoS couple gets when both choose to be together but pick different venues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Miscoordination {
    /// Each still gets the togetherness bonus ε.
    #[default]
    Epsilon,
    /// Nobody gets anything.
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureParams {
    /// Togetherness bonus of the BoS game.
    pub epsilon: Rational,
    pub miscoordination: Miscoordination,
    /// Payoff every lunch player gets when two pairs form.
    pub lunch_two_pair: Rational,
}

impl Default for FixtureParams {
    fn default() -> Self {
        FixtureParams {
            epsilon: ratio(1, 10),
            miscoordination: Miscoordination::Epsilon,
            lunch_two_pair: int(3),
        }
    }
}

fn entry(partition: &str, payoff: &[Rational], note: &str) -> EntryDocument {
    EntryDocument {
        partition: partition.into(),
        actions: None,
        payoff: payoff.to_vec(),
        note: (!note.is_empty()).then(|| note.into()),
    }
}

fn action_entry(partition: &str, actions: [&str; 2], payoff: [Rational; 2]) -> EntryDocument {
    EntryDocument {
        partition: partition.into(),
        actions: Some(actions.iter().map(|s| s.to_string()).collect()),
        payoff: payoff.to_vec(),
        note: None,
    }
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn fixture(name: &str, params: &FixtureParams) -> Result<GameSpecDocument> {
    match name {
        "dinner" => Ok(dinner()),
        "lunch" => Ok(lunch(&params.lunch_two_pair)),
        "bos" => bos(&params.epsilon, params.miscoordination),
        "staghare" => Ok(staghare()),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

pub fn fixture_spec(name: &str, params: &FixtureParams) -> Result<Arc<GameSpec>> {
    Ok(Arc::new(fixture(name, params)?.to_spec()?))
}

fn dinner() -> GameSpecDocument {
    GameSpecDocument {
        format_version: FORMAT_VERSION,
        metadata: Metadata {
            name: "dinner".into(),
            notes: vec![
                "Corporate dinner: A is the president, B a senior vice-president, C1 and C2 vice-presidents.".into(),
                "Listed partitions are the best final partitions; every other partition pays (1,1,1,1).".into(),
            ],
        },
        players: vec!["A".into(), "B".into(), "C1".into(), "C2".into()],
        actions: None,
        payoffs: vec![
            entry("A,B|C1|C2", &ints(&[10, 10, 3, 3]), ""),
            entry("A,B|C1,C2", &ints(&[8, 8, 5, 5]), "equilibrium partition"),
            entry("A,C1|B,C2", &ints(&[3, 5, 10, 5]), ""),
            entry("A,C1|B|C2", &ints(&[3, 3, 10, 3]), ""),
            entry("A,C2|B,C1", &ints(&[3, 5, 5, 10]), ""),
            entry("A,C2|B|C1", &ints(&[3, 3, 3, 10]), ""),
        ],
        default_payoff: ints(&[1, 1, 1, 1]),
    }
}

fn lunch(two_pair: &Rational) -> GameSpecDocument {
    let tp = vec![two_pair.clone(); 4];
    GameSpecDocument {
        format_version: FORMAT_VERSION,
        metadata: Metadata {
            name: "lunch".into(),
            notes: vec![
                "Office lunch with four identical players; partitions with a block of 3 or 4 pay (0,0,0,0).".into(),
                format!(
                    "Two-pair partitions are not listed among the best rows; they are completed with {} for everyone.",
                    format_rational(two_pair)
                ),
                "The listed coalition value 29 for {C,D} does not match the payoff rows and is not used.".into(),
            ],
        },
        players: vec!["A".into(), "B".into(), "C".into(), "D".into()],
        actions: None,
        payoffs: vec![
            entry("A,B|C|D", &ints(&[10, 10, 3, 3]), ""),
            entry("A,C|B|D", &ints(&[10, 3, 10, 3]), ""),
            entry("A,D|B|C", &ints(&[10, 3, 3, 10]), ""),
            entry("A|B|C,D", &ints(&[3, 3, 10, 10]), ""),
            entry("A|B,C|D", &ints(&[3, 10, 10, 3]), ""),
            entry("A|B,D|C", &ints(&[3, 10, 3, 10]), ""),
            entry("A|B|C|D", &ints(&[3, 3, 3, 3]), ""),
            entry("A,B|C,D", &tp, "two-pair completion"),
            entry("A,C|B,D", &tp, "two-pair completion"),
            entry("A,D|B,C", &tp, "two-pair completion"),
        ],
        default_payoff: ints(&[0, 0, 0, 0]),
    }
}

fn bos(epsilon: &Rational, miss: Miscoordination) -> Result<GameSpecDocument> {
    if epsilon.is_negative() {
        return Err(Error::FixtureParameter(format!(
            "epsilon must be non-negative, got {}",
            format_rational(epsilon)
        )));
    }
    let e = epsilon.clone();
    let missed = match miss {
        Miscoordination::Epsilon => e.clone(),
        Miscoordination::Zero => int(0),
    };
    let sep = "1|2";
    let joint = "1,2";
    let payoffs = vec![
        action_entry(sep, ["B", "B"], [int(2), int(1)]),
        action_entry(sep, ["B", "O"], [int(0), int(0)]),
        action_entry(sep, ["O", "B"], [int(0), int(0)]),
        action_entry(sep, ["O", "O"], [int(1), int(2)]),
        action_entry(joint, ["B", "B"], [int(2) + &e, int(1) + &e]),
        action_entry(joint, ["B", "O"], [missed.clone(), missed.clone()]),
        action_entry(joint, ["O", "B"], [missed.clone(), missed]),
        action_entry(joint, ["O", "O"], [int(1) + &e, int(2) + &e]),
    ];
    let variant = match miss {
        Miscoordination::Epsilon => "together but at different venues pays (eps,eps)",
        Miscoordination::Zero => "together but at different venues pays (0,0)",
    };
    Ok(GameSpecDocument {
        format_version: FORMAT_VERSION,
        metadata: Metadata {
            name: "bos".into(),
            notes: vec![
                "Battle of the Sexes with a coalition choice: player 1 is Ann, player 2 is Bob; B is Box, O is Opera.".into(),
                format!("Being together adds eps = {} to each payoff; {variant}.", format_rational(epsilon)),
            ],
        },
        players: vec!["1".into(), "2".into()],
        actions: Some(vec![vec!["B".into(), "O".into()], vec!["B".into(), "O".into()]]),
        payoffs,
        default_payoff: ints(&[0, 0]),
    })
}

fn staghare() -> GameSpecDocument {
    let sep = "1|2";
    let joint = "1,2";
    GameSpecDocument {
        format_version: FORMAT_VERSION,
        metadata: Metadata {
            name: "staghare".into(),
            notes: vec![
                "Expanded stag hunt: hunting alone or together, for a hare or a stag.".into(),
            ],
        },
        players: vec!["1".into(), "2".into()],
        actions: Some(vec![
            vec!["hare".into(), "stag".into()],
            vec!["hare".into(), "stag".into()],
        ]),
        payoffs: vec![
            action_entry(sep, ["hare", "hare"], [int(8), int(8)]),
            action_entry(sep, ["hare", "stag"], [int(8), int(0)]),
            action_entry(sep, ["stag", "hare"], [int(0), int(8)]),
            action_entry(sep, ["stag", "stag"], [int(0), int(0)]),
            action_entry(joint, ["hare", "hare"], [int(4), int(4)]),
            action_entry(joint, ["hare", "stag"], [int(8), int(0)]),
            action_entry(joint, ["stag", "hare"], [int(0), int(8)]),
            action_entry(joint, ["stag", "stag"], [int(100), int(100)]),
        ],
        default_payoff: ints(&[0, 0]),
    }
}

/// Names of the candidate profiles shipped with a fixture.
pub fn profile_names(fixture: &str) -> &'static [&'static str] {
    match fixture {
        "dinner" => &["equilibrium"],
        "lunch" => &["uniform"],
        "bos" => &[
            "textbook-k1",
            "joint-mixed",
            "stated-formula",
            "stated-formula-literal",
        ],
        "staghare" => &["hare", "stag"],
        _ => &[],
    }
}

fn ws(player: &str, partition: &str, action: Option<&str>, p: Rational) -> WeightedStrategy {
    WeightedStrategy {
        player: player.into(),
        partition: partition.into(),
        action: action.map(Into::into),
        probability: p,
    }
}

fn profile(k: usize, label: &str, strategies: Vec<WeightedStrategy>) -> ProfileDocument {
    ProfileDocument {
        format_version: 1,
        k: Some(k),
        label: label.into(),
        strategies,
    }
}

/// A named candidate profile of a fixture.
///
/// BoS `stated-formula` puts (1+ε)/(3+2ε) on each player's less preferred
/// joint venue (O for player 1, B for player 2); `stated-formula-literal`
/// puts it on B for both players.
pub fn fixture_profile(
    fixture: &str,
    name: &str,
    params: &FixtureParams,
) -> Result<ProfileDocument> {
    let half = ratio(1, 2);
    let third = ratio(1, 3);
    let unknown = || {
        Error::FixtureParameter(format!(
            "unknown profile \"{name}\" for fixture \"{fixture}\" (known: {})",
            profile_names(fixture).join(", ")
        ))
    };
    match (fixture, name) {
        ("dinner", "equilibrium") => Ok(profile(
            2,
            "A and B mix over the two partitions with block {A,B}; C1 and C2 desire {C1,C2}",
            vec![
                ws("A", "A,B|C1|C2", None, half.clone()),
                ws("A", "A,B|C1,C2", None, half.clone()),
                ws("B", "A,B|C1|C2", None, half.clone()),
                ws("B", "A,B|C1,C2", None, half),
                ws("C1", "A,B|C1,C2", None, int(1)),
                ws("C2", "A,B|C1,C2", None, int(1)),
            ],
        )),
        ("lunch", "uniform") => {
            let players = ["A", "B", "C", "D"];
            let mut strategies = Vec::new();
            for (i, me) in players.iter().enumerate() {
                for j in (0..players.len()).filter(|&j| j != i) {
                    let (lo, hi) = (i.min(j), i.max(j));
                    let mut blocks = vec![format!("{},{}", players[lo], players[hi])];
                    blocks.extend(
                        (0..players.len())
                            .filter(|&l| l != i && l != j)
                            .map(|l| players[l].to_string()),
                    );
                    strategies.push(ws(me, &blocks.join("|"), None, third.clone()));
                }
            }
            Ok(profile(
                2,
                "every player desires each partner with probability 1/3",
                strategies,
            ))
        }
        ("bos", "textbook-k1") => Ok(profile(
            1,
            "separate venues, classic mixed equilibrium",
            vec![
                ws("1", "1|2", Some("B"), ratio(2, 3)),
                ws("1", "1|2", Some("O"), ratio(1, 3)),
                ws("2", "1|2", Some("B"), ratio(1, 3)),
                ws("2", "1|2", Some("O"), ratio(2, 3)),
            ],
        )),
        ("bos", "joint-mixed") => Ok(profile(
            2,
            "both choose to be together and mix venues 2/3-1/3",
            vec![
                ws("1", "1,2", Some("B"), ratio(2, 3)),
                ws("1", "1,2", Some("O"), ratio(1, 3)),
                ws("2", "1,2", Some("B"), ratio(1, 3)),
                ws("2", "1,2", Some("O"), ratio(2, 3)),
            ],
        )),
        ("bos", "stated-formula") | ("bos", "stated-formula-literal") => {
            let e = &params.epsilon;
            let denom = int(3) + int(2) * e;
            let low = (int(1) + e) / &denom;
            let high = (int(2) + e) / &denom;
            let (a_b, a_o, b_b, b_o) = if name == "stated-formula" {
                (high.clone(), low.clone(), low, high)
            } else {
                (low.clone(), high.clone(), low, high)
            };
            Ok(profile(
                2,
                "joint venues weighted (1+eps)/(3+2eps) and (2+eps)/(3+2eps)",
                vec![
                    ws("1", "1,2", Some("B"), a_b),
                    ws("1", "1,2", Some("O"), a_o),
                    ws("2", "1,2", Some("B"), b_b),
                    ws("2", "1,2", Some("O"), b_o),
                ],
            ))
        }
        ("staghare", "hare") => Ok(profile(
            1,
            "both hunt hare alone",
            vec![
                ws("1", "1|2", Some("hare"), int(1)),
                ws("2", "1|2", Some("hare"), int(1)),
            ],
        )),
        ("staghare", "stag") => Ok(profile(
            2,
            "both hunt stag together",
            vec![
                ws("1", "1,2", Some("stag"), int(1)),
                ws("2", "1,2", Some("stag"), int(1)),
            ],
        )),
        _ if !FIXTURE_NAMES.contains(&fixture) => Err(Error::UnknownFixture(fixture.into())),
        _ => Err(unknown()),
    }
}
