//! Report views: serializable summaries of analysis results, rendered as
//! aligned text tables or versioned JSON.

use crate::analysis::{
    CharacteristicFunction, CooperationReport, CoreVerdict, StabilityReport, TrajectorySample,
};
use crate::equilibrium::{regret, EliminationTrace};
use crate::error::{Error, Result};
use crate::game::{
    expected_payoff, quotient_strategies, realized_distribution, Game, MixedProfile,
};
use crate::partition::{Coalition, Partition};
use crate::rational::{
    format_rational, format_vector, serde_q, serde_q_opt, serde_q_vec, to_f64, Rational,
};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub report: Report,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Report {
    Partitions(PartitionsView),
    Equilibrium(EquilibriumReport),
    Cooperation(CooperationView),
    Stability(StabilityView),
    Simulation(SimulationView),
    CoopTheory(CoopTheoryView),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionsView {
    pub game: String,
    pub k: usize,
    pub partitions: Vec<String>,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyWeight {
    pub strategy: String,
    #[serde(with = "serde_q")]
    pub probability: Rational,
    /// Strategies of the full game with the same own block and action.
    pub class_members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerMix {
    pub player: String,
    pub support: Vec<StrategyWeight>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizedView {
    pub partition: String,
    #[serde(with = "serde_q")]
    pub probability: Rational,
    #[serde(with = "serde_q_vec")]
    pub payoffs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilibriumView {
    /// `pure`, `support-enumeration` or `candidate`.
    pub method: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub label: String,
    pub players: Vec<PlayerMix>,
    pub realized: Vec<RealizedView>,
    #[serde(with = "serde_q_vec")]
    pub expected_payoffs: Vec<Rational>,
    #[serde(with = "serde_q_vec")]
    pub regrets: Vec<Rational>,
    #[serde(with = "serde_q")]
    pub max_regret: Rational,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strong_nash: Option<bool>,
}

impl EquilibriumView {
    pub fn is_pure(&self) -> bool {
        self.players.iter().all(|p| p.support.len() == 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovalView {
    pub player: String,
    pub strategy: String,
    pub dominated_by: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub game: String,
    pub k: usize,
    pub players: Vec<String>,
    #[serde(with = "serde_q")]
    pub tolerance: Rational,
    pub reduced: bool,
    pub eliminated: bool,
    #[serde(default)]
    pub strong_only: bool,
    /// Removals per elimination round.
    pub elimination: Vec<Vec<RemovalView>>,
    pub equilibria: Vec<EquilibriumView>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate: Option<EquilibriumView>,
    /// Distinct (realized partition distribution, payoff) outcomes of the equilibria.
    pub outcome_classes: Vec<String>,
    pub equilibrium_partitions: Vec<String>,
    pub stochastic: bool,
    pub notes: Vec<String>,
}

impl EquilibriumReport {
    pub fn pure_count(&self) -> usize {
        self.equilibria.iter().filter(|e| e.is_pure()).count()
    }

    pub fn mixed_count(&self) -> usize {
        self.equilibria.len() - self.pure_count()
    }
}

/// Outcome key of an equilibrium: its realized partitions with probabilities, then payoffs.
pub fn outcome_key(e: &EquilibriumView) -> String {
    let parts: Vec<String> = e
        .realized
        .iter()
        .map(|x| {
            if x.probability == crate::rational::one() {
                x.partition.clone()
            } else {
                format!("{}@{}", x.partition, format_rational(&x.probability))
            }
        })
        .collect();
    format!("{} {}", parts.join(" "), format_vector(&e.expected_payoffs))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CooperationView {
    pub game: String,
    pub k: usize,
    pub coalition: String,
    pub ex_ante: bool,
    pub ex_post_1: bool,
    pub ex_post_2: bool,
    pub complete: bool,
    #[serde(with = "serde_q")]
    pub max_regret: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ex_ante_witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ex_post_1_witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ex_post_2_witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepView {
    pub k: usize,
    pub passes: bool,
    pub payoff_ok: Vec<bool>,
    pub domain_ok: bool,
    pub examined: usize,
    pub new_equilibria: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityView {
    pub game: String,
    pub k0: usize,
    pub k_star: usize,
    pub policy: String,
    pub base: String,
    #[serde(with = "serde_q_vec")]
    pub base_payoffs: Vec<Rational>,
    pub per_k: Vec<StepView>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyView {
    pub partition: String,
    pub count: usize,
    pub empirical: f64,
    #[serde(with = "serde_q")]
    pub expected: Rational,
    pub standard_error: f64,
    /// (empirical - expected) / standard_error; 0 when the error is 0.
    pub z: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationView {
    pub game: String,
    pub profile: String,
    pub seed: u64,
    pub steps: usize,
    pub head: Vec<String>,
    pub frequencies: Vec<FrequencyView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoalitionValue {
    pub coalition: String,
    #[serde(with = "serde_q")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreView {
    pub empty: bool,
    pub verified: bool,
    #[serde(with = "serde_q")]
    pub grand_value: Rational,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "serde_q_vec_opt"
    )]
    pub point: Option<Vec<Rational>>,
    /// Balancing weights when the core is empty.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub certificate: Vec<CoalitionValue>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "serde_q_opt")]
    pub weighted_value: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoopTheoryView {
    pub game: String,
    pub convention: String,
    pub values: Vec<CoalitionValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub core: Option<CoreView>,
    #[serde(with = "serde_q_vec")]
    pub shapley: Vec<Rational>,
    pub notes: Vec<String>,
}

mod serde_q_vec_opt {
    use crate::rational::{serde_q_vec, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => serde_q_vec::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "serde_q_vec")] Vec<Rational>);
        Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
    }
}

// ---------------------------------------------------------------- builders

fn class_members(g: &Game, full: &Game, i: usize, s: usize) -> Vec<String> {
    let class = g.class_of(i, s);
    quotient_strategies(full, i)
        .into_iter()
        .find(|members| full.class_of(i, members[0]) == class)
        .map(|members| {
            members
                .into_iter()
                .map(|t| full.render_strategy(i, t))
                .collect()
        })
        .unwrap_or_default()
}

/// Summary of `m` (a profile of `g`); class members are listed from `full`.
pub fn equilibrium_view(
    g: &Game,
    full: &Game,
    m: &MixedProfile,
    method: &str,
    label: &str,
    tolerance: &Rational,
) -> EquilibriumView {
    let ps = g.players();
    let players = (0..g.n())
        .map(|i| PlayerMix {
            player: ps.label(i).to_string(),
            support: m
                .dist(i)
                .iter()
                .map(|(s, p)| StrategyWeight {
                    strategy: g.render_strategy(i, *s),
                    probability: p.clone(),
                    class_members: class_members(g, full, i, *s),
                })
                .collect(),
        })
        .collect();
    let realized = realized_view(g, m);
    let regrets: Vec<Rational> = (0..g.n()).map(|i| regret(g, m, i)).collect();
    let max_regret = regrets.iter().max().cloned().unwrap_or_else(Rational::zero);
    EquilibriumView {
        method: method.into(),
        label: label.into(),
        players,
        realized,
        expected_payoffs: expected_payoff(g, m),
        verified: max_regret <= *tolerance,
        regrets,
        max_regret,
        strong_nash: None,
    }
}

fn realized_view(g: &Game, m: &MixedProfile) -> Vec<RealizedView> {
    // Payoffs of a realized partition can vary with actions; report the
    // conditional expectation given the partition.
    let mut sums: BTreeMap<Partition, (Rational, Vec<Rational>)> = BTreeMap::new();
    let supports: Vec<&[(usize, Rational)]> = m.dists().iter().map(|d| d.as_slice()).collect();
    crate::game::for_each_weighted(&supports, |profile, w| {
        let entry = sums
            .entry(g.realize(profile))
            .or_insert_with(|| (Rational::zero(), vec![Rational::zero(); g.n()]));
        entry.0 += w;
        for (acc, u) in entry.1.iter_mut().zip(g.payoff_of(profile)) {
            *acc += w * u;
        }
    });
    debug_assert_eq!(sums.len(), realized_distribution(g, m).len());
    sums.into_iter()
        .map(|(p, (prob, total))| RealizedView {
            partition: p.render(g.players()),
            payoffs: total.into_iter().map(|t| t / &prob).collect(),
            probability: prob,
        })
        .collect()
}

pub fn elimination_view(g: &Game, trace: &EliminationTrace) -> Vec<Vec<RemovalView>> {
    trace
        .rounds
        .iter()
        .map(|round| {
            round
                .iter()
                .map(|r| RemovalView {
                    player: g.players().label(r.player).to_string(),
                    strategy: g.render_strategy(r.player, r.strategy),
                    dominated_by: g.render_strategy(r.player, r.dominated_by),
                })
                .collect()
        })
        .collect()
}

pub fn cooperation_view(g: &Game, r: &CooperationReport) -> CooperationView {
    let ps = g.players();
    CooperationView {
        game: g.spec().name.clone(),
        k: g.k(),
        coalition: r.coalition.render(ps),
        ex_ante: r.ex_ante,
        ex_post_1: r.ex_post_1,
        ex_post_2: r.ex_post_2,
        complete: r.complete,
        max_regret: r.max_regret.clone(),
        ex_ante_witness: r.ex_ante_witness.map(|(i, s)| {
            format!(
                "{} plays {}, which does not contain the coalition",
                ps.label(i),
                g.render_strategy(i, s)
            )
        }),
        ex_post_1_witness: r.ex_post_1_witness.as_ref().map(|(p, q)| {
            format!(
                "{} is realized with probability {}",
                p.render(ps),
                format_rational(q)
            )
        }),
        ex_post_2_witness: r
            .ex_post_2_witness
            .as_ref()
            .map(|(i, q)| format!("{} has regret {}", ps.label(*i), format_rational(q))),
    }
}

pub fn stability_view(game: &str, base: &str, r: &StabilityReport) -> StabilityView {
    StabilityView {
        game: game.into(),
        k0: r.k0,
        k_star: r.k_star,
        policy: r.policy.name().into(),
        base: base.into(),
        base_payoffs: r.base_payoffs.clone(),
        per_k: r
            .per_k
            .iter()
            .map(|v| StepView {
                k: v.k,
                passes: v.passes,
                payoff_ok: v.payoff_ok.clone(),
                domain_ok: v.domain_ok,
                examined: v.examined,
                new_equilibria: v.new_equilibria,
                witness: v.witness.as_ref().map(|w| format_vector(w)),
            })
            .collect(),
    }
}

pub fn simulation_view(
    g: &Game,
    m: &MixedProfile,
    sample: &TrajectorySample,
    head: usize,
) -> SimulationView {
    let ps = g.players();
    let counts = crate::analysis::frequencies(sample);
    let expected = realized_distribution(g, m);
    let steps = sample.states.len();
    let frequencies = expected
        .iter()
        .map(|(p, q)| {
            let count = counts.get(p).copied().unwrap_or(0);
            let empirical = count as f64 / steps as f64;
            let pq = to_f64(q);
            let standard_error = (pq * (1.0 - pq) / steps as f64).sqrt();
            let z = if standard_error > 0.0 {
                (empirical - pq) / standard_error
            } else {
                0.0
            };
            FrequencyView {
                partition: p.render(ps),
                count,
                empirical,
                expected: q.clone(),
                standard_error,
                z,
            }
        })
        .collect();
    SimulationView {
        game: sample.game.clone(),
        profile: sample.profile.clone(),
        seed: sample.seed,
        steps,
        head: sample
            .states
            .iter()
            .take(head)
            .map(|p| p.render(ps))
            .collect(),
        frequencies,
    }
}

pub fn coop_theory_view(
    game: &str,
    cf: &CharacteristicFunction,
    core: Option<&CoreVerdict>,
    shapley: &[Rational],
    notes: Vec<String>,
) -> CoopTheoryView {
    let ps = cf.players();
    let mut coalitions: Vec<Coalition> = Coalition::all_nonempty(cf.n()).collect();
    coalitions.sort_by_key(|c| (c.len(), c.members().collect::<Vec<_>>()));
    let values = coalitions
        .iter()
        .map(|c| CoalitionValue {
            coalition: c.render(ps),
            value: cf.value(*c).clone(),
        })
        .collect();
    let core = core.map(|v| match v {
        CoreVerdict::NonEmpty { point } => CoreView {
            empty: false,
            verified: v.verify(cf),
            grand_value: cf.grand_value().clone(),
            point: Some(point.clone()),
            certificate: Vec::new(),
            weighted_value: None,
        },
        CoreVerdict::Empty {
            weights,
            weighted_value,
        } => CoreView {
            empty: true,
            verified: v.verify(cf),
            grand_value: cf.grand_value().clone(),
            point: None,
            certificate: weights
                .iter()
                .map(|(c, w)| CoalitionValue {
                    coalition: c.render(ps),
                    value: w.clone(),
                })
                .collect(),
            weighted_value: Some(weighted_value.clone()),
        },
    });
    CoopTheoryView {
        game: game.into(),
        convention: cf.convention().name().into(),
        values,
        core,
        shapley: shapley.to_vec(),
        notes,
    }
}

// ---------------------------------------------------------------- rendering

pub fn to_json(report: &Report) -> String {
    serde_json::to_string_pretty(&ReportDocument {
        schema_version: REPORT_SCHEMA_VERSION,
        report: report.clone(),
    })
    .expect("report serializes")
}

pub fn parse_report(text: &str) -> Result<ReportDocument> {
    let doc: ReportDocument = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.schema_version != REPORT_SCHEMA_VERSION {
        return Err(Error::Syntax {
            line: 1,
            column: 1,
            message: format!("unsupported report schema version {}", doc.schema_version),
        });
    }
    Ok(doc)
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (j, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if j + 1 == cells.len() {
                s.push_str(cell);
            } else {
                s.push_str(cell);
                s.push_str(&" ".repeat(w - cell.chars().count() + 2));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(headers.to_vec());
    out += &line(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    );
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn mix_text(p: &PlayerMix) -> String {
    p.support
        .iter()
        .map(|w| {
            if w.probability == crate::rational::one() {
                w.strategy.clone()
            } else {
                format!("{}:{}", format_rational(&w.probability), w.strategy)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn equilibrium_block(e: &EquilibriumView, heading: &str) -> String {
    let mut out = format!(
        "{heading} [{}{}] EU {}  max regret {}{}\n",
        e.method,
        if e.label.is_empty() {
            String::new()
        } else {
            format!(": {}", e.label)
        },
        format_vector(&e.expected_payoffs),
        format_rational(&e.max_regret),
        match e.strong_nash {
            Some(true) => "  strong",
            Some(false) => "  not strong",
            None => "",
        }
    );
    let rows: Vec<Vec<String>> = e
        .players
        .iter()
        .map(|p| vec![p.player.clone(), mix_text(p)])
        .collect();
    for l in table(&["player", "strategy"], &rows).lines() {
        out += &format!("    {l}\n");
    }
    let rows: Vec<Vec<String>> = e
        .realized
        .iter()
        .map(|r| {
            vec![
                r.partition.clone(),
                format_rational(&r.probability),
                format_vector(&r.payoffs),
            ]
        })
        .collect();
    for l in table(&["partition", "probability", "payoff profile"], &rows).lines() {
        out += &format!("    {l}\n");
    }
    out
}

pub fn to_text(report: &Report) -> String {
    match report {
        Report::Partitions(p) => {
            let mut out = format!("{} partitions with blocks of at most {}\n", p.game, p.k);
            for s in &p.partitions {
                out += s;
                out.push('\n');
            }
            out += &format!("count: {}\n", p.count);
            out
        }
        Report::Equilibrium(r) => {
            let mut out = format!(
                "game {}  K={}  tolerance {}  reduced {}  dominance elimination {}{}\n",
                r.game,
                r.k,
                format_rational(&r.tolerance),
                yes(r.reduced),
                yes(r.eliminated),
                if r.strong_only { "  strong only" } else { "" }
            );
            for (j, round) in r.elimination.iter().enumerate() {
                out += &format!("elimination round {}: {} removed\n", j + 1, round.len());
                let rows: Vec<Vec<String>> = round
                    .iter()
                    .map(|x| vec![x.player.clone(), x.strategy.clone(), x.dominated_by.clone()])
                    .collect();
                for l in table(&["player", "removed", "dominated by"], &rows).lines() {
                    out += &format!("    {l}\n");
                }
            }
            out += &format!(
                "equilibria: {} ({} pure, {} mixed)\n",
                r.equilibria.len(),
                r.pure_count(),
                r.mixed_count()
            );
            let rows: Vec<Vec<String>> = r
                .equilibria
                .iter()
                .enumerate()
                .map(|(j, e)| {
                    let parts: Vec<String> = e
                        .realized
                        .iter()
                        .map(|x| {
                            if x.probability == crate::rational::one() {
                                x.partition.clone()
                            } else {
                                format!("{}@{}", x.partition, format_rational(&x.probability))
                            }
                        })
                        .collect();
                    vec![
                        format!("{}", j + 1),
                        e.method.clone(),
                        parts.join(" "),
                        format_vector(&e.expected_payoffs),
                        match e.strong_nash {
                            Some(b) => yes(b),
                            None => "-".into(),
                        },
                    ]
                })
                .collect();
            out += &table(
                &["#", "method", "partition", "payoff profile", "strong"],
                &rows,
            );
            for (j, e) in r.equilibria.iter().enumerate() {
                if !e.is_pure() {
                    out += &equilibrium_block(e, &format!("equilibrium {}", j + 1));
                }
            }
            if let Some(c) = &r.candidate {
                out += &equilibrium_block(
                    c,
                    if c.verified {
                        "candidate (verified)"
                    } else {
                        "candidate (NOT an equilibrium)"
                    },
                );
                let rows: Vec<Vec<String>> = r
                    .players
                    .iter()
                    .zip(&c.regrets)
                    .map(|(p, q)| vec![p.clone(), format_rational(q)])
                    .collect();
                for l in table(&["player", "regret"], &rows).lines() {
                    out += &format!("    {l}\n");
                }
            }
            out += &format!("outcome classes ({}):\n", r.outcome_classes.len());
            for o in &r.outcome_classes {
                out += &format!("    {o}\n");
            }
            out += &format!(
                "equilibrium partitions ({}): {}\nstochastic: {}\n",
                r.equilibrium_partitions.len(),
                r.equilibrium_partitions.join("  "),
                yes(r.stochastic)
            );
            for n in &r.notes {
                out += &format!("note: {n}\n");
            }
            out
        }
        Report::Cooperation(c) => {
            let mut out = format!("game {}  K={}  coalition {}\n", c.game, c.k, c.coalition);
            let rows = vec![
                vec![
                    "ex ante".into(),
                    yes(c.ex_ante),
                    c.ex_ante_witness.clone().unwrap_or_default(),
                ],
                vec![
                    "ex post 1".into(),
                    yes(c.ex_post_1),
                    c.ex_post_1_witness.clone().unwrap_or_default(),
                ],
                vec![
                    "ex post 2".into(),
                    yes(c.ex_post_2),
                    c.ex_post_2_witness.clone().unwrap_or_default(),
                ],
                vec!["complete".into(), yes(c.complete), String::new()],
            ];
            out += &table(&["condition", "holds", "witness"], &rows);
            out += &format!("max regret: {}\n", format_rational(&c.max_regret));
            out
        }
        Report::Stability(s) => {
            let mut out = format!(
                "game {}  k0={}  policy {}  base {}  base payoffs {}\n",
                s.game,
                s.k0,
                s.policy,
                s.base,
                format_vector(&s.base_payoffs)
            );
            let rows: Vec<Vec<String>> = s
                .per_k
                .iter()
                .map(|v| {
                    vec![
                        v.k.to_string(),
                        yes(v.passes),
                        v.payoff_ok
                            .iter()
                            .map(|&b| if b { "ok" } else { "beaten" })
                            .collect::<Vec<_>>()
                            .join(","),
                        yes(v.domain_ok),
                        v.examined.to_string(),
                        v.new_equilibria.to_string(),
                        v.witness.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            out += &table(
                &[
                    "k",
                    "passes",
                    "payoffs",
                    "domain",
                    "equilibria",
                    "new",
                    "witness",
                ],
                &rows,
            );
            out += &format!("K* = {}\n", s.k_star);
            out
        }
        Report::Simulation(s) => {
            let mut out = format!(
                "game {}  profile {}  seed {}  steps {}\n",
                s.game, s.profile, s.seed, s.steps
            );
            out += &format!("first states: {}\n", s.head.join(" "));
            let rows: Vec<Vec<String>> = s
                .frequencies
                .iter()
                .map(|f| {
                    vec![
                        f.partition.clone(),
                        f.count.to_string(),
                        format!("{:.6}", f.empirical),
                        format_rational(&f.expected),
                        format!("{:.6}", f.standard_error),
                        format!("{:+.3}", f.z),
                    ]
                })
                .collect();
            out += &table(
                &[
                    "partition",
                    "count",
                    "empirical",
                    "expected",
                    "std error",
                    "z",
                ],
                &rows,
            );
            out
        }
        Report::CoopTheory(c) => {
            let mut out = format!("game {}  convention {}\n", c.game, c.convention);
            let rows: Vec<Vec<String>> = c
                .values
                .iter()
                .map(|v| vec![v.coalition.clone(), format_rational(&v.value)])
                .collect();
            out += &table(&["coalition", "v"], &rows);
            if let Some(core) = &c.core {
                if core.empty {
                    out += &format!(
                        "core: empty (verified {}); balancing weights give {} > v(N) = {}\n",
                        yes(core.verified),
                        core.weighted_value
                            .as_ref()
                            .map(format_rational)
                            .unwrap_or_default(),
                        format_rational(&core.grand_value)
                    );
                    let rows: Vec<Vec<String>> = core
                        .certificate
                        .iter()
                        .map(|w| vec![w.coalition.clone(), format_rational(&w.value)])
                        .collect();
                    for l in table(&["coalition", "weight"], &rows).lines() {
                        out += &format!("    {l}\n");
                    }
                } else {
                    out += &format!(
                        "core: nonempty (verified {}); point {}\n",
                        yes(core.verified),
                        core.point.as_deref().map(format_vector).unwrap_or_default()
                    );
                }
            }
            out += &format!("shapley value: {}\n", format_vector(&c.shapley));
            for n in &c.notes {
                out += &format!("note: {n}\n");
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn json_round_trip() {
        let r = Report::Stability(StabilityView {
            game: "g".into(),
            k0: 1,
            k_star: 2,
            policy: "forall".into(),
            base: "b".into(),
            base_payoffs: vec![ratio(137, 27), int(3)],
            per_k: vec![StepView {
                k: 1,
                passes: true,
                payoff_ok: vec![true, false],
                domain_ok: true,
                examined: 3,
                new_equilibria: 1,
                witness: Some("(1,2)".into()),
            }],
        });
        let doc = parse_report(&to_json(&r)).unwrap();
        assert_eq!(doc.report, r);
        assert!(to_text(&r).contains("K* = 2"));
    }

    #[test]
    fn tables_align() {
        let t = table(&["a", "bb"], &[vec!["xxx".into(), "y".into()]]);
        assert_eq!(t, "a    bb\n---  --\nxxx  y\n");
    }
}
