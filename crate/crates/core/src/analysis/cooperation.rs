//! Complete cooperation in a coalition: ex ante (every member's support always
//! desires the coalition), ex post 1 (every realized partition contains it)
//! and ex post 2 (the profile is an equilibrium).

use crate::equilibrium::regret;
use crate::error::{Error, Result};
use crate::game::{realized_distribution, Game, MixedProfile};
use crate::partition::{Coalition, Partition};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CooperationReport {
    pub coalition: Coalition,
    pub ex_ante: bool,
    pub ex_post_1: bool,
    pub ex_post_2: bool,
    pub complete: bool,
    pub max_regret: Rational,
    /// (player, strategy) in the support whose desired partition lacks the coalition.
    pub ex_ante_witness: Option<(usize, usize)>,
    /// A realized partition, with its probability, that lacks the coalition.
    pub ex_post_1_witness: Option<(Partition, Rational)>,
    /// Player with the largest regret when the profile is not an equilibrium.
    pub ex_post_2_witness: Option<(usize, Rational)>,
}

pub fn cooperation_check(
    g: &Game,
    m: &MixedProfile,
    coalition: Coalition,
    tolerance: &Rational,
) -> Result<CooperationReport> {
    let n = g.n();
    if coalition.is_empty() || !coalition.is_subset_of(Coalition::full(n)) {
        return Err(Error::Domain(format!(
            "coalition mask {:#b} is not a nonempty subset of the {n} players",
            coalition.mask()
        )));
    }
    let ex_ante_witness = coalition.members().find_map(|i| {
        m.support(i)
            .into_iter()
            .find(|&s| !g.strategies(i)[s].desired.contains_coalition(coalition))
            .map(|s| (i, s))
    });
    let ex_post_1_witness = realized_distribution(g, m)
        .into_iter()
        .find(|(p, _)| !p.contains_coalition(coalition));

    let regrets: Vec<Rational> = (0..n).map(|i| regret(g, m, i)).collect();
    let (worst, max_regret) = regrets
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(i, r)| (i, r.clone()))
        .expect("at least one player");
    let ex_post_2 = max_regret <= *tolerance;

    let ex_ante = ex_ante_witness.is_none();
    let ex_post_1 = ex_post_1_witness.is_none();
    Ok(CooperationReport {
        coalition,
        ex_ante,
        ex_post_1,
        ex_post_2,
        complete: ex_ante && ex_post_1 && ex_post_2,
        ex_post_2_witness: (!ex_post_2).then(|| (worst, max_regret.clone())),
        max_regret,
        ex_ante_witness,
        ex_post_1_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::build_game;
    use crate::io::{fixture_profile, fixture_spec, FixtureParams};
    use crate::partition::parse_coalition;
    use crate::rational::zero;

    fn dinner() -> (Game, MixedProfile) {
        let params = FixtureParams::default();
        let spec = fixture_spec("dinner", &params).unwrap();
        let g = build_game(&spec, 2).unwrap();
        let m = fixture_profile("dinner", "equilibrium", &params)
            .unwrap()
            .to_mixed(&g)
            .unwrap();
        (g, m)
    }

    #[test]
    fn dinner_coalitions() {
        let (g, m) = dinner();
        let ps = g.players().clone();
        let c = cooperation_check(&g, &m, parse_coalition("C1,C2", &ps).unwrap(), &zero()).unwrap();
        assert!(c.complete);
        let ab = cooperation_check(&g, &m, parse_coalition("A,B", &ps).unwrap(), &zero()).unwrap();
        assert!(ab.complete);
        let ac = cooperation_check(&g, &m, parse_coalition("A,C1", &ps).unwrap(), &zero()).unwrap();
        assert!(!ac.ex_ante && !ac.complete);
        assert_eq!(ac.ex_ante_witness.map(|w| w.0), Some(0));
    }

    #[test]
    fn out_of_range_coalition_is_a_domain_error() {
        let (g, m) = dinner();
        let c = Coalition::from_mask(1 << 5).unwrap();
        assert!(matches!(
            cooperation_check(&g, &m, c, &zero()),
            Err(Error::Domain(_))
        ));
    }
}
