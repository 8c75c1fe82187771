//! Equilibrium computation and verification over Γ(K).
//!
//! Everything that certifies an equilibrium runs in exact rational
//! arithmetic. The only float code is the damped iteration inside
//! [`solve_indifference`], whose result is rationalized and re-verified.

use crate::error::{Error, Result};
use crate::game::{
    deviation_payoffs, for_each_profile, quotient_strategies, Game, MixedProfile, PureProfile,
};
use crate::linalg::{solve_exact, solve_f64};
use crate::partition::Coalition;
use crate::rational::{approximate, one, to_f64, zero, Rational};
use num_traits::{Signed, Zero};
use std::collections::HashSet;

pub const DEFAULT_PROFILE_CAP: u128 = 10_000_000;
pub const DEFAULT_MAX_SUPPORT: usize = 4;
/// Largest per-player class count accepted by the two-player support enumeration.
pub const MAX_2P_STRATEGIES: usize = 30;
const MAX_SUPPORT_PAIRS: usize = 2_000_000;

/// Payoff-entry ids for every pure profile of a game, indexed in mixed radix.
pub struct PayoffTable<'g> {
    game: &'g Game,
    strides: Vec<usize>,
    ids: Vec<u32>,
}

impl<'g> PayoffTable<'g> {
    pub fn new(game: &'g Game, cap: u128) -> Result<Self> {
        let total = game.profile_count();
        if total > cap {
            return Err(Error::Resource(format!(
                "{total} pure profiles exceed the cap of {cap}; use the outcome-class reduction or a smaller k"
            )));
        }
        let counts = game.strategy_counts();
        let mut strides = vec![1usize; counts.len()];
        for j in (0..counts.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * counts[j + 1];
        }
        let mut ids = Vec::with_capacity(total as usize);
        for_each_profile(&counts, |p| ids.push(game.payoff_id_of(p) as u32));
        Ok(PayoffTable { game, strides, ids })
    }

    pub fn index(&self, profile: &[usize]) -> usize {
        profile.iter().zip(&self.strides).map(|(s, w)| s * w).sum()
    }

    pub fn payoff_at(&self, index: usize) -> &'g [Rational] {
        self.game.spec().payoff_by_id(self.ids[index] as usize)
    }

    pub fn payoff(&self, profile: &[usize]) -> &'g [Rational] {
        self.payoff_at(self.index(profile))
    }
}

/// Best unilateral deviation payoff minus current expected payoff for player `i`.
pub fn regret(g: &Game, m: &MixedProfile, i: usize) -> Rational {
    let dev = deviation_payoffs(g, m, i);
    let current: Rational = m.dist(i).iter().map(|(s, p)| p * &dev[*s]).sum();
    let best = dev.into_iter().max().expect("player has strategies");
    best - current
}

pub fn max_regret(g: &Game, m: &MixedProfile) -> Rational {
    (0..g.n())
        .map(|i| regret(g, m, i))
        .max()
        .unwrap_or_else(zero)
}

/// Exact verification: an equilibrium iff the largest regret is not positive.
pub fn verify_candidate(g: &Game, m: &MixedProfile) -> (bool, Rational) {
    verify_with_tolerance(g, m, &zero())
}

pub fn verify_with_tolerance(g: &Game, m: &MixedProfile, tol: &Rational) -> (bool, Rational) {
    let r = max_regret(g, m);
    (r <= *tol, r)
}

/// All pure Nash equilibria. With `reduce`, one representative profile per
/// tuple of outcome-equivalence classes (indices still refer to `g`).
pub fn pure_nash(g: &Game, reduce: bool) -> Result<Vec<PureProfile>> {
    pure_nash_capped(g, reduce, DEFAULT_PROFILE_CAP)
}

pub fn pure_nash_capped(g: &Game, reduce: bool, cap: u128) -> Result<Vec<PureProfile>> {
    let (work, map) = if reduce {
        let keep: Vec<Vec<usize>> = (0..g.n())
            .map(|i| {
                quotient_strategies(g, i)
                    .into_iter()
                    .map(|c| c[0])
                    .collect()
            })
            .collect();
        (g.restrict(&keep), Some(keep))
    } else {
        (g.clone(), None)
    };
    let table = PayoffTable::new(&work, cap)?;
    let counts = work.strategy_counts();
    let mut found = Vec::new();
    for_each_profile(&counts, |p| {
        let base = table.index(p);
        let here = table.payoff_at(base);
        let stable = (0..p.len()).all(|i| {
            let offset = base - p[i] * table.strides[i];
            (0..counts[i]).all(|s| table.payoff_at(offset + s * table.strides[i])[i] <= here[i])
        });
        if stable {
            let choices = match &map {
                Some(keep) => p.iter().enumerate().map(|(i, &s)| keep[i][s]).collect(),
                None => p.to_vec(),
            };
            found.push(PureProfile { choices });
        }
    });
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Removal {
    pub player: usize,
    /// Index in the game passed to the elimination.
    pub strategy: usize,
    pub dominated_by: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EliminationTrace {
    pub rounds: Vec<Vec<Removal>>,
    /// Surviving strategy indices per player.
    pub survivors: Vec<Vec<usize>>,
}

/// Iterated simultaneous removal of weakly dominated pure strategies.
pub fn eliminate_weakly_dominated(g: &Game) -> Result<(Game, EliminationTrace)> {
    let table = PayoffTable::new(g, DEFAULT_PROFILE_CAP)?;
    let n = g.n();
    let mut alive: Vec<Vec<usize>> = g
        .strategy_counts()
        .into_iter()
        .map(|c| (0..c).collect())
        .collect();
    let mut trace = EliminationTrace::default();
    loop {
        let mut round = Vec::new();
        for i in 0..n {
            let outcomes: Vec<Vec<&Rational>> = alive[i]
                .iter()
                .map(|&s| payoff_row(&table, &alive, i, s))
                .collect();
            for (a, &s) in alive[i].iter().enumerate() {
                let dominator = alive[i]
                    .iter()
                    .enumerate()
                    .find(|&(b, _)| b != a && weakly_dominates(&outcomes[b], &outcomes[a]));
                if let Some((_, &t)) = dominator {
                    round.push(Removal {
                        player: i,
                        strategy: s,
                        dominated_by: t,
                    });
                }
            }
        }
        if round.is_empty() {
            break;
        }
        for r in &round {
            alive[r.player].retain(|&s| s != r.strategy);
        }
        trace.rounds.push(round);
    }
    trace.survivors = alive.clone();
    Ok((g.restrict(&alive), trace))
}

/// Player `i`'s payoffs from strategy `s` against every surviving opponent profile.
fn payoff_row<'g>(
    table: &PayoffTable<'g>,
    alive: &[Vec<usize>],
    i: usize,
    s: usize,
) -> Vec<&'g Rational> {
    let counts: Vec<usize> = alive
        .iter()
        .enumerate()
        .map(|(j, a)| if j == i { 1 } else { a.len() })
        .collect();
    let mut row = Vec::new();
    let mut profile = vec![0usize; alive.len()];
    for_each_profile(&counts, |p| {
        for (j, &c) in p.iter().enumerate() {
            profile[j] = if j == i { s } else { alive[j][c] };
        }
        row.push(&table.payoff(&profile)[i]);
    });
    row
}

fn weakly_dominates(a: &[&Rational], b: &[&Rational]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        if x > y {
            strict = true;
        }
    }
    strict
}

fn subsets_up_to(count: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        start: usize,
        count: usize,
        max: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            return;
        }
        for s in start..count {
            cur.push(s);
            rec(s + 1, count, max, cur, out);
            cur.pop();
        }
    }
    rec(0, count, max, &mut cur, &mut out);
    out.sort_by_key(Vec::len);
    out
}

/// Solves for the opponent mix over `cols` that makes every row in `rows` indifferent.
fn indifference_mix(
    payoff: &dyn Fn(usize, usize) -> Rational,
    rows: &[usize],
    cols: &[usize],
) -> Option<Vec<Rational>> {
    let unknowns = cols.len() + 1;
    let mut a = Vec::with_capacity(rows.len() + 1);
    let mut b = Vec::with_capacity(rows.len() + 1);
    for &r in rows {
        let mut row: Vec<Rational> = cols.iter().map(|&c| payoff(r, c)).collect();
        row.push(-one());
        a.push(row);
        b.push(zero());
    }
    let mut norm = vec![one(); cols.len()];
    norm.push(zero());
    a.push(norm);
    b.push(one());
    debug_assert_eq!(a[0].len(), unknowns);
    let x = solve_exact(&a, &b)?;
    let probs = x[..cols.len()].to_vec();
    probs.iter().all(|p| !p.is_negative()).then_some(probs)
}

/// Support enumeration for two-player games, exact over rationals.
///
/// Runs on one representative per outcome class; every returned profile has
/// exact regret zero. The flag is always `true` (exact solution).
pub fn mixed_support_2p(g: &Game, max_support: usize) -> Result<Vec<(MixedProfile, bool)>> {
    if g.n() != 2 {
        return Err(Error::WrongArity(g.n()));
    }
    let keep: Vec<Vec<usize>> = (0..2)
        .map(|i| {
            quotient_strategies(g, i)
                .into_iter()
                .map(|c| c[0])
                .collect()
        })
        .collect();
    let reps = g.restrict(&keep);
    let counts = reps.strategy_counts();
    if counts.iter().any(|&c| c > MAX_2P_STRATEGIES) {
        return Err(Error::Resource(format!(
            "support enumeration accepts at most {MAX_2P_STRATEGIES} outcome classes per player, found {counts:?}"
        )));
    }
    let table = PayoffTable::new(&reps, DEFAULT_PROFILE_CAP)?;
    let row_payoff = |r: usize, c: usize| table.payoff(&[r, c])[0].clone();
    let col_payoff = |c: usize, r: usize| table.payoff(&[r, c])[1].clone();
    let sup0 = subsets_up_to(counts[0], max_support.max(1));
    let sup1 = subsets_up_to(counts[1], max_support.max(1));
    if sup0.len().saturating_mul(sup1.len()) > MAX_SUPPORT_PAIRS {
        return Err(Error::Resource(format!(
            "{} support pairs exceed the limit of {MAX_SUPPORT_PAIRS}; lower max_support",
            sup0.len() * sup1.len()
        )));
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s0 in &sup0 {
        for s1 in &sup1 {
            let Some(y) = indifference_mix(&row_payoff, s0, s1) else {
                continue;
            };
            let Some(x) = indifference_mix(&col_payoff, s1, s0) else {
                continue;
            };
            let dists = vec![
                s0.iter().cloned().zip(x).collect::<Vec<_>>(),
                s1.iter().cloned().zip(y).collect::<Vec<_>>(),
            ];
            let Ok(m) = MixedProfile::new(&reps, dists) else {
                continue;
            };
            if !max_regret(&reps, &m).is_zero() {
                continue;
            }
            let mapped = m.embed(&reps, g)?;
            if seen.insert(mapped.clone()) {
                out.push((mapped, true));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct IndifferenceOutcome {
    pub profile: Option<MixedProfile>,
    pub max_regret: Option<Rational>,
    pub iterations: usize,
    pub residual: f64,
    pub message: String,
}

/// Damped least-squares search for a profile supported exactly on `supports`
/// that equalizes each player's payoffs across their support.
///
/// Success means the rationalized profile has exact regret `<= tol` over all
/// strategies of `g`; `None` is not a proof that no such profile exists.
pub fn solve_indifference(
    g: &Game,
    supports: &[Vec<usize>],
    tol: &Rational,
    max_iter: usize,
) -> Result<IndifferenceOutcome> {
    let n = g.n();
    if n < 2 || supports.len() != n || supports.iter().any(Vec::is_empty) {
        return Err(Error::Precondition(
            "indifference solving needs at least 2 players and a nonempty support for each".into(),
        ));
    }
    for (i, sup) in supports.iter().enumerate() {
        if sup.iter().any(|&s| s >= g.strategies(i).len()) {
            return Err(Error::Profile(format!(
                "support index out of range for player {i}"
            )));
        }
    }
    let sizes: Vec<usize> = supports.iter().map(Vec::len).collect();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let dim: usize = sizes.iter().sum();

    // Float payoffs over the support product.
    let mut cells: Vec<(Vec<usize>, Vec<f64>)> = Vec::new();
    for_each_profile(&sizes, |p| {
        let profile: Vec<usize> = p.iter().enumerate().map(|(i, &c)| supports[i][c]).collect();
        let u = g.payoff_of(&profile).iter().map(to_f64).collect();
        cells.push((p.to_vec(), u));
    });

    let evaluate = |x: &[f64]| -> (Vec<f64>, Vec<Vec<f64>>) {
        // util[i][a] = U_i(a-th support strategy, x_{-i}); grad[i][a][col] = d/dx_col
        let mut util = vec![vec![0.0; dim]; n];
        let mut grad = vec![vec![vec![0.0; dim]; dim]; n];
        for (p, u) in &cells {
            for i in 0..n {
                let ai = offsets[i] + p[i];
                let w: f64 = (0..n)
                    .filter(|&l| l != i)
                    .map(|l| x[offsets[l] + p[l]])
                    .product();
                util[i][ai] += w * u[i];
                for j in 0..n {
                    if j == i {
                        continue;
                    }
                    let wj: f64 = (0..n)
                        .filter(|&l| l != i && l != j)
                        .map(|l| x[offsets[l] + p[l]])
                        .product();
                    grad[i][ai][offsets[j] + p[j]] += wj * u[i];
                }
            }
        }
        let mut f = Vec::with_capacity(dim);
        let mut jac = Vec::with_capacity(dim);
        for i in 0..n {
            let o = offsets[i];
            f.push(x[o..o + sizes[i]].iter().sum::<f64>() - 1.0);
            let mut row = vec![0.0; dim];
            row[o..o + sizes[i]].iter_mut().for_each(|v| *v = 1.0);
            jac.push(row);
            for a in 1..sizes[i] {
                f.push(util[i][o + a] - util[i][o]);
                jac.push(
                    (0..dim)
                        .map(|c| grad[i][o + a][c] - grad[i][o][c])
                        .collect(),
                );
            }
        }
        (f, jac)
    };
    let norm = |f: &[f64]| f.iter().map(|v| v * v).sum::<f64>().sqrt();

    let mut x: Vec<f64> = sizes
        .iter()
        .flat_map(|&s| std::iter::repeat_n(1.0 / s as f64, s))
        .collect();
    let (mut f, mut jac) = evaluate(&x);
    let mut res = norm(&f);
    let mut lambda = 1e-3;
    let mut iterations = 0;
    while res > 1e-13 && iterations < max_iter {
        iterations += 1;
        let mut jtj = vec![vec![0.0; dim]; dim];
        let mut rhs = vec![0.0; dim];
        for r in 0..dim {
            for a in 0..dim {
                rhs[a] -= jac[r][a] * f[r];
                for b in 0..dim {
                    jtj[a][b] += jac[r][a] * jac[r][b];
                }
            }
        }
        let mut improved = false;
        for _ in 0..30 {
            let mut damped = jtj.clone();
            for (a, row) in damped.iter_mut().enumerate() {
                row[a] += lambda * (1.0 + jtj[a][a]);
            }
            if let Some(step) = solve_f64(damped, rhs.clone()) {
                let trial: Vec<f64> = x.iter().zip(&step).map(|(v, d)| (v + d).max(0.0)).collect();
                let (tf, tj) = evaluate(&trial);
                let tres = norm(&tf);
                if tres < res {
                    x = trial;
                    f = tf;
                    jac = tj;
                    res = tres;
                    lambda = (lambda / 3.0).max(1e-15);
                    improved = true;
                    break;
                }
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }

    let fail = |msg: String, iterations, residual| {
        Ok(IndifferenceOutcome {
            profile: None,
            max_regret: None,
            iterations,
            residual,
            message: msg,
        })
    };
    if res > 1e-9 {
        return fail(
            format!("no convergence after {iterations} iterations (residual {res:.3e})"),
            iterations,
            res,
        );
    }

    let mut best: Option<(MixedProfile, Rational)> = None;
    for max_den in [10u64, 100, 1_000, 10_000, 100_000, 1_000_000] {
        let Some(profile) = rationalize(g, supports, &x, &offsets, max_den) else {
            continue;
        };
        let (_, r) = verify_with_tolerance(g, &profile, tol);
        let better = best.as_ref().is_none_or(|(_, b)| r < *b);
        if better {
            best = Some((profile, r.clone()));
        }
        if r <= *tol {
            break;
        }
    }
    match best {
        Some((profile, r)) if r <= *tol => Ok(IndifferenceOutcome {
            profile: Some(profile),
            max_regret: Some(r),
            iterations,
            residual: res,
            message: "converged; exact verification passed".into(),
        }),
        Some((_, r)) => Ok(IndifferenceOutcome {
            profile: None,
            max_regret: Some(r.clone()),
            iterations,
            residual: res,
            message: format!(
                "converged on the support but exact regret {} exceeds tolerance (an off-support strategy is better)",
                crate::rational::format_rational(&r)
            ),
        }),
        None => fail("converged point has zero mass on a support strategy".into(), iterations, res),
    }
}

fn rationalize(
    g: &Game,
    supports: &[Vec<usize>],
    x: &[f64],
    offsets: &[usize],
    max_den: u64,
) -> Option<MixedProfile> {
    let mut dists = Vec::with_capacity(supports.len());
    for (i, sup) in supports.iter().enumerate() {
        let mut probs: Vec<Rational> = Vec::with_capacity(sup.len());
        for a in 0..sup.len() - 1 {
            probs.push(approximate(x[offsets[i] + a], max_den)?);
        }
        let rest = one() - probs.iter().cloned().sum::<Rational>();
        probs.push(rest);
        if probs.iter().any(|p| !p.is_positive()) {
            return None;
        }
        dists.push(sup.iter().cloned().zip(probs).collect());
    }
    MixedProfile::new(g, dists).ok()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionDeviation {
    pub coalition: Coalition,
    /// Full profile after the joint deviation.
    pub profile: PureProfile,
    pub before: Vec<Rational>,
    pub after: Vec<Rational>,
}

/// Strong Nash test: no coalition of at most `max_coalition` members has a
/// joint pure deviation that makes every member strictly better off.
pub fn strong_nash_check(
    g: &Game,
    p: &PureProfile,
    max_coalition: usize,
) -> (bool, Option<CoalitionDeviation>) {
    let n = g.n();
    let before = g.payoff_of(&p.choices).to_vec();
    let reps: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            quotient_strategies(g, i)
                .into_iter()
                .map(|c| c[0])
                .collect()
        })
        .collect();
    let mut coalitions: Vec<Coalition> = Coalition::all_nonempty(n)
        .filter(|c| c.len() <= max_coalition)
        .collect();
    coalitions.sort_by_key(|c| (c.len(), c.mask()));
    for c in coalitions {
        let members: Vec<usize> = c.members().collect();
        let counts: Vec<usize> = members.iter().map(|&i| reps[i].len()).collect();
        let mut witness = None;
        let mut profile = p.choices.clone();
        for_each_profile(&counts, |d| {
            if witness.is_some() {
                return;
            }
            for (a, &i) in members.iter().enumerate() {
                profile[i] = reps[i][d[a]];
            }
            let after = g.payoff_of(&profile);
            if members.iter().all(|&i| after[i] > before[i]) {
                witness = Some(CoalitionDeviation {
                    coalition: c,
                    profile: PureProfile {
                        choices: profile.clone(),
                    },
                    before: before.clone(),
                    after: after.to_vec(),
                });
            }
        });
        if witness.is_some() {
            return (false, witness);
        }
    }
    (true, None)
}
