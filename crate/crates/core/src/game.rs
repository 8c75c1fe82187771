//! The game family Γ(K): declarative payoff specs, strategy sets induced by a
//! coalition-size bound, the formation rule, and pure/mixed profile payoffs.

use crate::error::{Diagnostic, Error, Result};
use crate::partition::{enumerate_partitions, Coalition, Partition, PlayerSet};
use crate::rational::{format_rational, one, zero, Rational};
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Label of the single action given to players whose actions are not declared.
pub const DUMMY_ACTION: &str = "-";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PartitionPattern {
    Exact(Partition),
    /// Matches any partition not covered by an exact entry.
    Any,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActionPattern {
    Exact(usize),
    Any,
}

impl ActionPattern {
    fn matches(self, a: usize) -> bool {
        match self {
            ActionPattern::Exact(b) => a == b,
            ActionPattern::Any => true,
        }
    }

    fn overlaps(self, other: ActionPattern) -> bool {
        match (self, other) {
            (ActionPattern::Exact(a), ActionPattern::Exact(b)) => a == b,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayoffEntry {
    pub partition: PartitionPattern,
    /// `None` matches every action profile.
    pub actions: Option<Vec<ActionPattern>>,
    pub payoff: Vec<Rational>,
}

impl PayoffEntry {
    fn action_matches(&self, actions: &[usize]) -> bool {
        match &self.actions {
            None => true,
            Some(pat) => pat.iter().zip(actions).all(|(p, &a)| p.matches(a)),
        }
    }

    fn actions_overlap(&self, other: &PayoffEntry) -> bool {
        match (&self.actions, &other.actions) {
            (Some(a), Some(b)) => a.iter().zip(b).all(|(x, y)| x.overlaps(*y)),
            _ => true,
        }
    }
}

/// Payoffs over (realized partition, action profile).
///
/// Matching is tiered: entries with an exact partition take precedence over
/// `*` entries, and within a tier at most one entry may match any outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSpec {
    pub name: String,
    players: PlayerSet,
    actions: Vec<Vec<String>>,
    entries: Vec<PayoffEntry>,
    default_payoff: Vec<Rational>,
    exact_index: HashMap<Partition, Vec<usize>>,
    wildcard: Vec<usize>,
}

impl GameSpec {
    /// Validates and indexes a spec. `actions = None` gives every player one dummy action.
    pub fn new(
        name: impl Into<String>,
        players: PlayerSet,
        actions: Option<Vec<Vec<String>>>,
        entries: Vec<PayoffEntry>,
        default_payoff: Vec<Rational>,
    ) -> Result<Self> {
        let n = players.len();
        let mut problems = Vec::new();
        let actions = actions.unwrap_or_else(|| vec![vec![DUMMY_ACTION.to_string()]; n]);
        if actions.len() != n {
            problems.push(diag(
                "actions",
                format!("expected {n} action lists, found {}", actions.len()),
            ));
        }
        for (i, list) in actions.iter().enumerate() {
            if list.is_empty() {
                problems.push(diag(format!("actions[{i}]"), "action list is empty"));
            }
            for (j, a) in list.iter().enumerate() {
                if a.is_empty() || a == "*" {
                    problems.push(diag(
                        format!("actions[{i}][{j}]"),
                        format!("invalid action label \"{a}\""),
                    ));
                }
                if list[..j].contains(a) {
                    problems.push(diag(
                        format!("actions[{i}][{j}]"),
                        format!("duplicate action \"{a}\""),
                    ));
                }
            }
        }
        if default_payoff.len() != n {
            problems.push(diag(
                "default_payoff",
                format!(
                    "payoff vector has length {}, expected {n}",
                    default_payoff.len()
                ),
            ));
        }
        for (e, entry) in entries.iter().enumerate() {
            if entry.payoff.len() != n {
                problems.push(diag(
                    format!("payoffs[{e}].payoff"),
                    format!(
                        "payoff vector has length {}, expected {n}",
                        entry.payoff.len()
                    ),
                ));
            }
            if let Some(pat) = &entry.actions {
                if pat.len() != n {
                    problems.push(diag(
                        format!("payoffs[{e}].actions"),
                        format!("action pattern has length {}, expected {n}", pat.len()),
                    ));
                } else {
                    for (i, p) in pat.iter().enumerate() {
                        if let ActionPattern::Exact(a) = p {
                            if actions.get(i).is_some_and(|l| *a >= l.len()) {
                                problems.push(diag(
                                    format!("payoffs[{e}].actions[{i}]"),
                                    format!("action index {a} out of range"),
                                ));
                            }
                        }
                    }
                }
            }
            if let PartitionPattern::Exact(p) = &entry.partition {
                let covered: u64 = p.blocks().iter().fold(0, |m, b| m | b.mask());
                if covered != Coalition::full(n).mask() {
                    problems.push(diag(
                        format!("payoffs[{e}].partition"),
                        "partition does not cover the player set",
                    ));
                }
            }
        }
        let numbered: Vec<(usize, &PayoffEntry)> = entries.iter().enumerate().collect();
        problems.extend(overlap_diagnostics(&numbered));
        if !problems.is_empty() {
            return Err(Error::Validation(problems));
        }

        let mut exact_index: HashMap<Partition, Vec<usize>> = HashMap::new();
        let mut wildcard = Vec::new();
        for (e, entry) in entries.iter().enumerate() {
            match &entry.partition {
                PartitionPattern::Exact(p) => exact_index.entry(p.clone()).or_default().push(e),
                PartitionPattern::Any => wildcard.push(e),
            }
        }
        Ok(GameSpec {
            name: name.into(),
            players,
            actions,
            entries,
            default_payoff,
            exact_index,
            wildcard,
        })
    }

    pub fn players(&self) -> &PlayerSet {
        &self.players
    }

    pub fn n(&self) -> usize {
        self.players.len()
    }

    pub fn actions(&self) -> &[Vec<String>] {
        &self.actions
    }

    pub fn entries(&self) -> &[PayoffEntry] {
        &self.entries
    }

    pub fn default_payoff(&self) -> &[Rational] {
        &self.default_payoff
    }

    /// True when no player declares more than the single dummy action.
    pub fn has_dummy_actions(&self) -> bool {
        self.actions
            .iter()
            .all(|l| l.len() == 1 && l[0] == DUMMY_ACTION)
    }

    /// Payoff vector of an outcome: the matching entry of the most specific tier, else the default.
    pub fn payoff(&self, realized: &Partition, actions: &[usize]) -> &[Rational] {
        self.payoff_by_id(self.payoff_id(realized, actions))
    }

    /// Index of the matching entry, or `entries().len()` for the default payoff.
    pub fn payoff_id(&self, realized: &Partition, actions: &[usize]) -> usize {
        if let Some(list) = self.exact_index.get(realized) {
            if let Some(&e) = list
                .iter()
                .find(|&&e| self.entries[e].action_matches(actions))
            {
                return e;
            }
        }
        self.wildcard
            .iter()
            .copied()
            .find(|&e| self.entries[e].action_matches(actions))
            .unwrap_or(self.entries.len())
    }

    pub fn payoff_by_id(&self, id: usize) -> &[Rational] {
        self.entries
            .get(id)
            .map_or(&self.default_payoff[..], |e| &e.payoff[..])
    }

    /// Number of distinct action profiles.
    pub fn action_profile_count(&self) -> usize {
        self.actions.iter().map(Vec::len).product()
    }
}

/// Pairs of entries that could both match one outcome within the same tier.
/// Entries are numbered by their position in the source document.
pub(crate) fn overlap_diagnostics(entries: &[(usize, &PayoffEntry)]) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for (x, &(a, ea)) in entries.iter().enumerate() {
        for &(b, eb) in &entries[..x] {
            if ea.partition == eb.partition && ea.actions_overlap(eb) {
                out.push(diag(
                    format!("payoffs[{a}]"),
                    format!("overlaps payoffs[{b}] (same partition pattern, overlapping action patterns)"),
                ));
            }
        }
    }
    out
}

fn diag(location: impl Into<String>, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        location: location.into(),
        message: message.into(),
    }
}

/// How desired own-blocks turn into a realized partition.
///
/// Rules see only each player's own block in their desired partition, which
/// is what makes the outcome-equivalence quotient exact.
pub trait FormationRule: Send + Sync + std::fmt::Debug {
    fn name(&self) -> &str;
    fn realize(&self, own_blocks: &[Coalition]) -> Partition;
}

/// A block forms iff every member desires exactly that block; everyone else is alone.
#[derive(Debug, Clone, Copy, Default)]
pub struct Unanimity;

impl FormationRule for Unanimity {
    fn name(&self) -> &str {
        "unanimity"
    }

    fn realize(&self, own_blocks: &[Coalition]) -> Partition {
        let n = own_blocks.len();
        let mut assigned = 0u64;
        let mut blocks = Vec::with_capacity(n);
        for i in 0..n {
            if assigned & (1u64 << i) != 0 {
                continue;
            }
            let b = own_blocks[i];
            let agreed = b.len() >= 2 && b.members().all(|j| j < n && own_blocks[j] == b);
            if agreed {
                assigned |= b.mask();
                blocks.push(b);
            } else {
                assigned |= 1u64 << i;
                blocks.push(Coalition::singleton(i));
            }
        }
        Partition::from_blocks_unchecked(blocks)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strategy {
    pub desired: Partition,
    pub action: usize,
}

/// Outcome-equivalence key of a strategy for player `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StrategyClass {
    pub own_block: Coalition,
    pub action: usize,
}

/// Γ(K) realized over a spec: explicit per-player strategy lists.
///
/// Built games have strategy sets 𝒫(K) × actions; [`Game::restrict`] derives
/// subgames with fewer strategies (dominance elimination, class representatives).
#[derive(Debug, Clone)]
pub struct Game {
    spec: Arc<GameSpec>,
    k: usize,
    rule: Arc<dyn FormationRule>,
    strategies: Vec<Vec<Strategy>>,
    classes: Vec<Vec<StrategyClass>>,
}

pub fn build_game(spec: &Arc<GameSpec>, k: usize) -> Result<Game> {
    Game::build(spec.clone(), k, Arc::new(Unanimity))
}

impl Game {
    pub fn build(spec: Arc<GameSpec>, k: usize, rule: Arc<dyn FormationRule>) -> Result<Game> {
        let n = spec.n();
        let partitions = enumerate_partitions(n, k)?;
        let strategies: Vec<Vec<Strategy>> = (0..n)
            .map(|i| {
                partitions
                    .iter()
                    .flat_map(|p| {
                        (0..spec.actions()[i].len()).map(move |a| Strategy {
                            desired: p.clone(),
                            action: a,
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(Game::from_parts(spec, k, rule, strategies))
    }

    fn from_parts(
        spec: Arc<GameSpec>,
        k: usize,
        rule: Arc<dyn FormationRule>,
        strategies: Vec<Vec<Strategy>>,
    ) -> Game {
        let classes = strategies
            .iter()
            .enumerate()
            .map(|(i, list)| {
                list.iter()
                    .map(|s| StrategyClass {
                        own_block: s.desired.block_of(i),
                        action: s.action,
                    })
                    .collect()
            })
            .collect();
        Game {
            spec,
            k,
            rule,
            strategies,
            classes,
        }
    }

    pub fn spec(&self) -> &GameSpec {
        &self.spec
    }

    pub fn spec_arc(&self) -> &Arc<GameSpec> {
        &self.spec
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn players(&self) -> &PlayerSet {
        self.spec.players()
    }

    pub fn rule(&self) -> &dyn FormationRule {
        self.rule.as_ref()
    }

    pub fn strategies(&self, i: usize) -> &[Strategy] {
        &self.strategies[i]
    }

    pub fn strategy_counts(&self) -> Vec<usize> {
        self.strategies.iter().map(Vec::len).collect()
    }

    pub fn class_of(&self, i: usize, s: usize) -> StrategyClass {
        self.classes[i][s]
    }

    pub fn profile_count(&self) -> u128 {
        self.strategies
            .iter()
            .fold(1u128, |acc, l| acc.saturating_mul(l.len() as u128))
    }

    pub fn index_of(&self, i: usize, s: &Strategy) -> Option<usize> {
        self.strategies[i].iter().position(|t| t == s)
    }

    /// Subgame keeping `keep[i]` (indices into this game's lists) for each player.
    pub fn restrict(&self, keep: &[Vec<usize>]) -> Game {
        let strategies = keep
            .iter()
            .enumerate()
            .map(|(i, idx)| idx.iter().map(|&s| self.strategies[i][s].clone()).collect())
            .collect();
        Game::from_parts(self.spec.clone(), self.k, self.rule.clone(), strategies)
    }

    /// One representative (the first listed strategy) per outcome-equivalence class.
    pub fn class_representatives(&self) -> Game {
        let keep: Vec<Vec<usize>> = (0..self.n())
            .map(|i| {
                quotient_strategies(self, i)
                    .into_iter()
                    .map(|c| c[0])
                    .collect()
            })
            .collect();
        self.restrict(&keep)
    }

    pub fn realize(&self, profile: &[usize]) -> Partition {
        let blocks: Vec<Coalition> = profile
            .iter()
            .enumerate()
            .map(|(i, &s)| self.classes[i][s].own_block)
            .collect();
        self.rule.realize(&blocks)
    }

    pub fn payoff_of(&self, profile: &[usize]) -> &[Rational] {
        self.spec.payoff_by_id(self.payoff_id_of(profile))
    }

    pub fn payoff_id_of(&self, profile: &[usize]) -> usize {
        let realized = self.realize(profile);
        let actions: Vec<usize> = profile
            .iter()
            .enumerate()
            .map(|(i, &s)| self.classes[i][s].action)
            .collect();
        self.spec.payoff_id(&realized, &actions)
    }

    pub fn render_strategy(&self, i: usize, s: usize) -> String {
        render_strategy(&self.spec, &self.strategies[i][s], i)
    }
}

pub fn render_strategy(spec: &GameSpec, s: &Strategy, i: usize) -> String {
    let p = s.desired.render(spec.players());
    if spec.has_dummy_actions() {
        p
    } else {
        format!("{p};{}", spec.actions()[i][s.action])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureProfile {
    pub choices: Vec<usize>,
}

impl PureProfile {
    pub fn new(g: &Game, choices: Vec<usize>) -> Result<Self> {
        if choices.len() != g.n() {
            return Err(Error::Profile(format!(
                "profile has {} choices, game has {} players",
                choices.len(),
                g.n()
            )));
        }
        for (i, &s) in choices.iter().enumerate() {
            if s >= g.strategies(i).len() {
                return Err(Error::Profile(format!(
                    "strategy {s} out of range for player {i}"
                )));
            }
        }
        Ok(PureProfile { choices })
    }
}

/// Per-player distributions over strategy indices of one game.
///
/// Entries are sorted by strategy index and carry strictly positive mass;
/// the listed indices are the support.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedProfile {
    dists: Vec<Vec<(usize, Rational)>>,
}

impl MixedProfile {
    pub fn new(g: &Game, dists: Vec<Vec<(usize, Rational)>>) -> Result<Self> {
        if dists.len() != g.n() {
            return Err(Error::Profile(format!(
                "profile covers {} players, game has {}",
                dists.len(),
                g.n()
            )));
        }
        let mut clean = Vec::with_capacity(dists.len());
        for (i, d) in dists.into_iter().enumerate() {
            let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
            for (s, p) in d {
                if s >= g.strategies(i).len() {
                    return Err(Error::Profile(format!(
                        "strategy {s} out of range for player {i}"
                    )));
                }
                if p.is_negative() {
                    return Err(Error::Profile(format!(
                        "negative probability {} for player {i}",
                        format_rational(&p)
                    )));
                }
                *merged.entry(s).or_insert_with(zero) += p;
            }
            let total: Rational = merged.values().cloned().sum();
            if !total.is_one() {
                return Err(Error::Profile(format!(
                    "probabilities of player {i} sum to {}, not 1",
                    format_rational(&total)
                )));
            }
            clean.push(merged.into_iter().filter(|(_, p)| !p.is_zero()).collect());
        }
        Ok(MixedProfile { dists: clean })
    }

    pub fn pure(p: &PureProfile) -> Self {
        MixedProfile {
            dists: p.choices.iter().map(|&s| vec![(s, one())]).collect(),
        }
    }

    /// Uniform over the listed strategies of each player.
    pub fn uniform(g: &Game, supports: &[Vec<usize>]) -> Result<Self> {
        let dists = supports
            .iter()
            .map(|sup| {
                let w = Rational::new(1.into(), (sup.len() as i64).into());
                sup.iter().map(|&s| (s, w.clone())).collect()
            })
            .collect();
        MixedProfile::new(g, dists)
    }

    pub fn dists(&self) -> &[Vec<(usize, Rational)>] {
        &self.dists
    }

    pub fn dist(&self, i: usize) -> &[(usize, Rational)] {
        &self.dists[i]
    }

    pub fn support(&self, i: usize) -> Vec<usize> {
        self.dists[i].iter().map(|(s, _)| *s).collect()
    }

    pub fn probability(&self, i: usize, s: usize) -> Rational {
        self.dists[i]
            .iter()
            .find(|(t, _)| *t == s)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(zero)
    }

    pub fn is_pure(&self) -> bool {
        self.dists.iter().all(|d| d.len() == 1)
    }

    pub fn as_pure(&self) -> Option<PureProfile> {
        self.is_pure().then(|| PureProfile {
            choices: self.dists.iter().map(|d| d[0].0).collect(),
        })
    }

    /// Support expressed as outcome-equivalence classes per player (the "domain").
    pub fn class_support(&self, g: &Game) -> Vec<Vec<StrategyClass>> {
        self.dists
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let mut cl: Vec<StrategyClass> = d.iter().map(|(s, _)| g.class_of(i, *s)).collect();
                cl.sort();
                cl.dedup();
                cl
            })
            .collect()
    }

    /// Re-expresses this profile (defined on `from`) in game `to` by strategy value.
    pub fn embed(&self, from: &Game, to: &Game) -> Result<MixedProfile> {
        let mut dists = Vec::with_capacity(self.dists.len());
        for (i, d) in self.dists.iter().enumerate() {
            let mut out = Vec::with_capacity(d.len());
            for (s, p) in d {
                let strat = &from.strategies(i)[*s];
                let t = to.index_of(i, strat).ok_or_else(|| {
                    Error::Profile(format!(
                        "strategy {} of player {} is not available in the target game",
                        from.render_strategy(i, *s),
                        from.players().label(i)
                    ))
                })?;
                out.push((t, p.clone()));
            }
            dists.push(out);
        }
        MixedProfile::new(to, dists)
    }
}

pub fn formation_rule(g: &Game, profile: &PureProfile) -> Partition {
    g.realize(&profile.choices)
}

pub fn outcome_payoff(g: &Game, profile: &PureProfile) -> Vec<Rational> {
    g.payoff_of(&profile.choices).to_vec()
}

/// Visits every pure profile in the product of the given weighted supports,
/// passing the profile and its probability.
pub(crate) fn for_each_weighted(
    supports: &[&[(usize, Rational)]],
    mut f: impl FnMut(&[usize], &Rational),
) {
    let n = supports.len();
    if supports.iter().any(|s| s.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; n];
    let mut profile: Vec<usize> = supports.iter().map(|s| s[0].0).collect();
    // prefix[j] = product of probabilities of positions < j
    let mut prefix: Vec<Rational> = Vec::with_capacity(n + 1);
    prefix.push(one());
    for j in 0..n {
        let next = &prefix[j] * &supports[j][0].1;
        prefix.push(next);
    }
    loop {
        f(&profile, &prefix[n]);
        let mut j = n;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < supports[j].len() {
                break;
            }
            idx[j] = 0;
        }
        for t in j..n {
            profile[t] = supports[t][idx[t]].0;
            prefix[t + 1] = &prefix[t] * &supports[t][idx[t]].1;
        }
    }
}

/// Visits every pure profile of a product of index ranges (mixed radix).
pub(crate) fn for_each_profile(counts: &[usize], mut f: impl FnMut(&[usize])) {
    if counts.contains(&0) {
        return;
    }
    let n = counts.len();
    let mut profile = vec![0usize; n];
    loop {
        f(&profile);
        let mut j = n;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            profile[j] += 1;
            if profile[j] < counts[j] {
                break;
            }
            profile[j] = 0;
        }
    }
}

pub fn expected_payoff(g: &Game, m: &MixedProfile) -> Vec<Rational> {
    let n = g.n();
    let mut total = vec![zero(); n];
    let supports: Vec<&[(usize, Rational)]> = m.dists.iter().map(|d| d.as_slice()).collect();
    for_each_weighted(&supports, |profile, w| {
        for (t, u) in total.iter_mut().zip(g.payoff_of(profile)) {
            *t += w * u;
        }
    });
    total
}

/// Expected payoff of player `i` for each of its strategies against `m_{-i}`.
pub fn deviation_payoffs(g: &Game, m: &MixedProfile, i: usize) -> Vec<Rational> {
    let count = g.strategies(i).len();
    // Evaluate one representative per class; members share payoffs exactly.
    let mut class_rep: HashMap<StrategyClass, usize> = HashMap::new();
    let mut reps = Vec::new();
    let mut rep_of = Vec::with_capacity(count);
    for s in 0..count {
        let c = g.class_of(i, s);
        let r = *class_rep.entry(c).or_insert_with(|| {
            reps.push(s);
            reps.len() - 1
        });
        rep_of.push(r);
    }
    let mut values = vec![zero(); reps.len()];
    let placeholder = [(0usize, one())];
    let supports: Vec<&[(usize, Rational)]> = (0..g.n())
        .map(|j| if j == i { &placeholder[..] } else { m.dist(j) })
        .collect();
    let mut buf = vec![0usize; g.n()];
    for_each_weighted(&supports, |profile, w| {
        buf.copy_from_slice(profile);
        for (r, &s) in reps.iter().enumerate() {
            buf[i] = s;
            values[r] += w * &g.payoff_of(&buf)[i];
        }
    });
    rep_of.into_iter().map(|r| values[r].clone()).collect()
}

pub fn realized_distribution(g: &Game, m: &MixedProfile) -> BTreeMap<Partition, Rational> {
    let mut out: BTreeMap<Partition, Rational> = BTreeMap::new();
    let supports: Vec<&[(usize, Rational)]> = m.dists.iter().map(|d| d.as_slice()).collect();
    for_each_weighted(&supports, |profile, w| {
        *out.entry(g.realize(profile)).or_insert_with(zero) += w;
    });
    out
}

/// Γ(1), …, Γ(N) over one spec.
pub fn nested_family(spec: &Arc<GameSpec>) -> Result<Vec<Game>> {
    (1..=spec.n()).map(|k| build_game(spec, k)).collect()
}

/// Strategy indices of player `i` grouped by (own block, action), in order of first appearance.
pub fn quotient_strategies(g: &Game, i: usize) -> Vec<Vec<usize>> {
    let mut order: Vec<StrategyClass> = Vec::new();
    let mut groups: HashMap<StrategyClass, Vec<usize>> = HashMap::new();
    for s in 0..g.strategies(i).len() {
        let c = g.class_of(i, s);
        groups
            .entry(c)
            .or_insert_with(|| {
                order.push(c);
                Vec::new()
            })
            .push(s);
    }
    order
        .into_iter()
        .map(|c| groups.remove(&c).unwrap())
        .collect()
}
