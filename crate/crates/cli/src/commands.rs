use crate::{
    ConventionArg, CoopTheoryArgs, CooperateArgs, FixtureArgs, Format, Miscoordination, Outcome,
    ParamArgs, PolicyArg, ProfileArgs, SimulateArgs, SolveArgs, SourceArgs, StabilityArgs,
};
use coalition_core::analysis::{
    cooperation_check, core_empty, equilibrium_partitions, extract_characteristic, shapley_value,
    simulate as sample, stability_k_star, Convention, Policy, MAX_CORE_PLAYERS,
};
use coalition_core::equilibrium::{
    eliminate_weakly_dominated, max_regret, mixed_support_2p, pure_nash, strong_nash_check,
    verify_with_tolerance,
};
use coalition_core::game::{build_game, Game, GameSpec, MixedProfile};
use coalition_core::io::fixtures::{self, profile_names, FIXTURE_NAMES};
use coalition_core::io::report::{self, outcome_key, EquilibriumReport, PartitionsView, Report};
use coalition_core::io::{
    fixture_profile, fixture_spec, load_spec, parse_profile, FixtureParams, ProfileDocument,
};
use coalition_core::partition::{enumerate_partitions, parse_coalition, Partition};
use coalition_core::rational::{format_rational, zero, Rational};
use coalition_core::{Error, Result};
use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

fn fixture_params(p: &ParamArgs) -> FixtureParams {
    let mut out = FixtureParams::default();
    if let Some(e) = &p.epsilon {
        out.epsilon = e.clone();
    }
    if let Some(m) = p.miscoordination {
        out.miscoordination = match m {
            Miscoordination::Epsilon => fixtures::Miscoordination::Epsilon,
            Miscoordination::Zero => fixtures::Miscoordination::Zero,
        };
    }
    if let Some(t) = &p.two_pair {
        out.lunch_two_pair = t.clone();
    }
    out
}

fn read(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))
}

struct Source {
    spec: Arc<GameSpec>,
    fixture: Option<String>,
    params: FixtureParams,
}

fn load(source: &SourceArgs) -> Result<Source> {
    let params = fixture_params(&source.params);
    match (&source.fixture, &source.spec) {
        (Some(name), _) => Ok(Source {
            spec: fixture_spec(name, &params)?,
            fixture: Some(name.clone()),
            params,
        }),
        (None, Some(path)) => Ok(Source {
            spec: load_spec(&read(path)?)?,
            fixture: None,
            params,
        }),
        (None, None) => Err(Error::Domain("give --fixture NAME or --spec PATH".into())),
    }
}

fn render(r: &Report, format: Format) -> String {
    match format {
        Format::Text => report::to_text(r),
        Format::Json => report::to_json(r) + "\n",
    }
}

fn ok(text: String) -> Result<Outcome> {
    Ok(Outcome { text, code: 0 })
}

/// Fixture profile used when none is given and its K matches.
fn default_profile(fixture: &str) -> Option<&'static str> {
    match fixture {
        "dinner" => Some("equilibrium"),
        "lunch" => Some("uniform"),
        "staghare" => Some("hare"),
        _ => None,
    }
}

fn explicit_profile(src: &Source, args: &ProfileArgs) -> Result<Option<ProfileDocument>> {
    if let Some(path) = &args.candidate {
        return parse_profile(&read(path)?).map(Some);
    }
    if let Some(name) = &args.profile {
        let Some(fixture) = &src.fixture else {
            return Err(Error::Domain(
                "--profile needs --fixture; use --candidate with spec files".into(),
            ));
        };
        return fixture_profile(fixture, name, &src.params).map(Some);
    }
    Ok(None)
}

/// Every equilibrium the solver pipeline finds on class representatives of `g`.
fn equilibria_of(g: &Game) -> Result<Vec<MixedProfile>> {
    let reps = g.class_representatives();
    let mut out: Vec<MixedProfile> = pure_nash(&reps, false)?
        .iter()
        .map(MixedProfile::pure)
        .collect();
    if g.n() == 2 {
        let mut seen: HashSet<MixedProfile> = out.iter().cloned().collect();
        for (m, _) in mixed_support_2p(&reps, coalition_core::equilibrium::DEFAULT_MAX_SUPPORT)? {
            if seen.insert(m.clone()) {
                out.push(m);
            }
        }
    }
    out.into_iter().map(|m| m.embed(&reps, g)).collect()
}

/// Resolves the equilibrium an analysis runs on: an explicit profile, the
/// fixture default, or the unique equilibrium of Γ(k).
fn resolve(
    src: &Source,
    args: &ProfileArgs,
    k: Option<usize>,
) -> Result<(Game, MixedProfile, String)> {
    let mut doc = explicit_profile(src, args)?;
    if doc.is_none() {
        if let Some(name) = src.fixture.as_deref().and_then(default_profile) {
            let d = fixture_profile(src.fixture.as_deref().unwrap(), name, &src.params)?;
            if k.is_none() || k == d.k {
                doc = Some(d);
            }
        }
    }
    if let Some(doc) = doc {
        let k = k.or(doc.k).ok_or_else(|| {
            Error::Domain("the profile does not say which K it is for; pass --k".into())
        })?;
        let g = build_game(&src.spec, k)?;
        let m = doc.to_mixed(&g)?;
        let label = if doc.label.is_empty() {
            "candidate".to_string()
        } else {
            doc.label.clone()
        };
        return Ok((g, m, label));
    }
    let k = k.ok_or_else(|| {
        Error::Domain("no profile given; pass --k to select the unique equilibrium".into())
    })?;
    let g = build_game(&src.spec, k)?;
    let mut eqs = equilibria_of(&g)?;
    if eqs.len() == 1 {
        return Ok((g, eqs.pop().unwrap(), "unique equilibrium".into()));
    }
    let listed: Vec<String> = eqs
        .iter()
        .map(|m| {
            let parts: Vec<String> = (0..g.n())
                .map(|i| {
                    m.dist(i)
                        .iter()
                        .map(|(s, p)| {
                            format!("{}:{}", format_rational(p), g.render_strategy(i, *s))
                        })
                        .collect::<Vec<_>>()
                        .join("+")
                })
                .collect();
            format!("[{}]", parts.join(" | "))
        })
        .collect();
    let hint = src
        .fixture
        .as_deref()
        .map(|f| format!("; named profiles: {}", profile_names(f).join(", ")))
        .unwrap_or_default();
    Err(Error::Precondition(format!(
        "Γ({k}) has {} equilibria, select one with --candidate or --profile{hint}: {}",
        eqs.len(),
        listed.join(" ")
    )))
}

pub fn partitions(source: &SourceArgs, k: usize, format: Format) -> Result<Outcome> {
    let src = load(source)?;
    let ps = src.spec.players();
    let parts = enumerate_partitions(ps.len(), k)?;
    let view = PartitionsView {
        game: src.spec.name.clone(),
        k,
        count: parts.len(),
        partitions: parts.iter().map(|p| p.render(ps)).collect(),
    };
    ok(render(&Report::Partitions(view), format))
}

pub fn solve(a: &SolveArgs) -> Result<Outcome> {
    let src = load(&a.source)?;
    let g = build_game(&src.spec, a.k)?;
    let n = g.n();
    let mut work = if a.reduce {
        g.class_representatives()
    } else {
        g.clone()
    };
    let mut elimination = Vec::new();
    if a.eliminate_dominated {
        let (reduced, trace) = eliminate_weakly_dominated(&work)?;
        elimination = report::elimination_view(&work, &trace);
        work = reduced;
    }
    let tol = &a.tolerance;
    let mut profiles: Vec<(MixedProfile, &str)> = pure_nash(&work, false)?
        .iter()
        .map(|p| (MixedProfile::pure(p), "pure"))
        .collect();
    if n == 2 {
        let mut seen: HashSet<MixedProfile> = profiles.iter().map(|(m, _)| m.clone()).collect();
        for (m, _) in mixed_support_2p(&work, a.max_support)? {
            if !m.is_pure() && seen.insert(m.clone()) {
                profiles.push((m, "support-enumeration"));
            }
        }
    }
    let check_strong = a.strong || a.strong_only;
    let mut equilibria = Vec::with_capacity(profiles.len());
    let mut eq_profiles = Vec::with_capacity(profiles.len());
    for (m, method) in profiles {
        let mut view = report::equilibrium_view(&work, &g, &m, method, "", tol);
        if check_strong {
            if let Some(p) = m.embed(&work, &g)?.as_pure() {
                view.strong_nash = Some(strong_nash_check(&g, &p, n).0);
            }
        }
        if a.strong_only && view.strong_nash != Some(true) {
            continue;
        }
        equilibria.push(view);
        eq_profiles.push(m);
    }
    let mut partitions: BTreeSet<Partition> = equilibrium_partitions(&work, &eq_profiles);

    let candidate = match explicit_profile(&src, &a.profile)? {
        Some(doc) => {
            let m = doc.to_mixed(&g)?;
            let view = report::equilibrium_view(&g, &g, &m, "candidate", &doc.label, tol);
            if view.verified {
                partitions.extend(equilibrium_partitions(&g, std::slice::from_ref(&m)));
            }
            Some(view)
        }
        None => None,
    };
    let mut outcome_classes: Vec<String> = Vec::new();
    for e in &equilibria {
        let key = outcome_key(e);
        if !outcome_classes.contains(&key) {
            outcome_classes.push(key);
        }
    }
    let mut r = EquilibriumReport {
        game: src.spec.name.clone(),
        k: a.k,
        players: src.spec.players().labels().to_vec(),
        tolerance: tol.clone(),
        reduced: a.reduce,
        eliminated: a.eliminate_dominated,
        strong_only: a.strong_only,
        elimination,
        equilibria,
        candidate,
        outcome_classes,
        stochastic: partitions.len() >= 2,
        equilibrium_partitions: partitions
            .iter()
            .map(|p| p.render(src.spec.players()))
            .collect(),
        notes: Vec::new(),
    };
    r.notes = solve_notes(&src, &g, &r)?;
    ok(render(&Report::Equilibrium(r), a.out.format))
}

fn solve_notes(src: &Source, g: &Game, r: &EquilibriumReport) -> Result<Vec<String>> {
    let mut notes = Vec::new();
    let classes = r.outcome_classes.len();
    if r.stochastic {
        notes.push(format!(
            "{} equilibrium partitions: the game is stochastic (at least 2 partitions)",
            r.equilibrium_partitions.len()
        ));
    }
    if r.strong_only {
        notes.push("only equilibria passing the strong-Nash check are listed".into());
    }
    if r.eliminated && classes > 1 {
        notes.push(format!(
            "{classes} equilibrium outcome classes survive weak-dominance elimination; the equilibrium outcome is not unique"
        ));
    }
    let strong: Vec<String> = r
        .equilibria
        .iter()
        .filter(|e| e.strong_nash == Some(true))
        .map(outcome_key)
        .collect();
    if r.equilibria.iter().any(|e| e.strong_nash.is_some()) {
        let mut uniq: Vec<String> = Vec::new();
        for k in strong {
            if !uniq.contains(&k) {
                uniq.push(k);
            }
        }
        notes.push(format!(
            "{} of {classes} outcome classes pass the strong-Nash check: {}",
            uniq.len(),
            if uniq.is_empty() {
                "none".to_string()
            } else {
                uniq.join("; ")
            }
        ));
    }
    match src.fixture.as_deref() {
        Some("dinner") if classes > 1 => notes.push(format!(
            "discrepancy: the dinner game is described as having a unique equilibrium; {classes} equilibrium outcome classes are found here{}",
            if r.eliminated { " even after dominance elimination" } else { " (try --eliminate-dominated and --strong)" }
        )),
        Some("dinner") if r.strong_only => notes.push(
            "the unique equilibrium outcome of the dinner game is reproduced only after keeping strong-Nash equilibria".into(),
        ),
        Some("lunch") if r.pure_count() > 0 => notes.push(format!(
            "discrepancy: the lunch game is described as having no pure-strategy equilibrium; {} pure equilibria are found with two-pair partitions paying {} each",
            r.pure_count(),
            format_rational(&src.params.lunch_two_pair)
        )),
        Some("bos") if g.k() == 2 => {
            for name in ["stated-formula", "stated-formula-literal"] {
                let m = fixture_profile("bos", name, &src.params)?.to_mixed(g)?;
                let regret = max_regret(g, &m);
                let verdict = if regret == zero() { "verifies (regret 0)".to_string() } else { format!("fails verification (max regret {})", format_rational(&regret)) };
                notes.push(format!(
                    "stated mixed strategy (1+eps)/(3+2eps), profile {name}: {verdict} with eps = {} and miscoordination paying {}",
                    format_rational(&src.params.epsilon),
                    match src.params.miscoordination {
                        fixtures::Miscoordination::Epsilon => "(eps,eps)",
                        fixtures::Miscoordination::Zero => "(0,0)",
                    }
                ));
            }
        }
        _ => {}
    }
    Ok(notes)
}

pub fn cooperate(a: &CooperateArgs) -> Result<Outcome> {
    let src = load(&a.source)?;
    let coalition = parse_coalition(&a.coalition, src.spec.players())?;
    let (g, m, _) = resolve(&src, &a.profile, a.k)?;
    let r = cooperation_check(&g, &m, coalition, &a.tolerance)?;
    let view = report::cooperation_view(&g, &r);
    let text = render(&Report::Cooperation(view), a.out.format);
    Ok(Outcome {
        text,
        code: if r.ex_post_2 { 0 } else { 4 },
    })
}

pub fn stability(a: &StabilityArgs) -> Result<Outcome> {
    let src = load(&a.source)?;
    let (_, m, label) = resolve(&src, &a.profile, Some(a.k0))?;
    let policy = match a.policy {
        PolicyArg::Forall => Policy::Forall,
        PolicyArg::Exists => Policy::Exists,
    };
    let r = stability_k_star(&src.spec, a.k0, &m, policy)?;
    ok(render(
        &Report::Stability(report::stability_view(&src.spec.name, &label, &r)),
        a.out.format,
    ))
}

pub fn simulate(a: &SimulateArgs) -> Result<Outcome> {
    let src = load(&a.source)?;
    if a.steps == 0 {
        return Err(Error::Domain("--steps must be at least 1".into()));
    }
    let (g, m, label) = resolve(&src, &a.profile, a.k)?;
    let (verified, regret) = verify_with_tolerance(&g, &m, &zero());
    if !verified {
        return Err(Error::Precondition(format!(
            "profile \"{label}\" is not an equilibrium of Γ({}): max regret {}",
            g.k(),
            format_rational(&regret)
        )));
    }
    let t = sample(&g, &m, a.steps, a.seed, &label)?;
    ok(render(
        &Report::Simulation(report::simulation_view(&g, &m, &t, a.head)),
        a.out.format,
    ))
}

pub fn coop_theory(a: &CoopTheoryArgs) -> Result<Outcome> {
    let src = load(&a.source)?;
    let convention = match a.convention {
        ConventionArg::Optimistic => Convention::Optimistic,
        ConventionArg::Pessimistic => Convention::Pessimistic,
    };
    let cf = extract_characteristic(&src.spec, convention)?;
    if cf.n() > MAX_CORE_PLAYERS {
        return Err(Error::Resource(format!(
            "core check supports at most {MAX_CORE_PLAYERS} players, got {}",
            cf.n()
        )));
    }
    let verdict = core_empty(&cf)?;
    let shapley = shapley_value(&cf);
    let mut notes = Vec::new();
    if src.fixture.as_deref() == Some("lunch") {
        notes.push("the listed coalition value 29 for {C,D} is not reproduced; values come from the payoff rows".into());
    }
    if let Some(worst) = worst_block(&cf) {
        notes.push(worst);
    }
    let view = report::coop_theory_view(&src.spec.name, &cf, Some(&verdict), &shapley, notes);
    ok(render(&Report::CoopTheory(view), a.out.format))
}

/// The coalition whose value most exceeds v(N), when one does.
fn worst_block(cf: &coalition_core::analysis::CharacteristicFunction) -> Option<String> {
    let grand = cf.grand_value();
    let (c, v): (_, &Rational) = coalition_core::partition::Coalition::all_nonempty(cf.n())
        .map(|c| (c, cf.value(c)))
        .max_by(|a, b| a.1.cmp(b.1))?;
    (v > grand).then(|| {
        format!(
            "v({}) = {} exceeds v(N) = {}, so no efficient allocation satisfies that coalition",
            c.render(cf.players()),
            format_rational(v),
            format_rational(grand)
        )
    })
}

pub fn fixture(a: &FixtureArgs) -> Result<Outcome> {
    let params = fixture_params(&a.params);
    if a.list {
        let mut text = String::new();
        for name in FIXTURE_NAMES {
            text += &format!("{name}: profiles {}\n", profile_names(name).join(", "));
        }
        return ok(text);
    }
    let name = a
        .name
        .as_deref()
        .expect("clap requires a name without --list");
    match &a.profile {
        Some(p) => ok(fixture_profile(name, p, &params)?.to_json() + "\n"),
        None => ok(coalition_core::io::fixture(name, &params)?.to_json() + "\n"),
    }
}
