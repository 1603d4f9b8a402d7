//! Finite Bayesian games: strategy sets, private type sets, a common prior
//! over type profiles, and a utility tensor over (strategy profile, type
//! profile) pairs.
//!
//! A game where every agent has a single type degrades to a
//! publicly-known-utility game; [`BayesianGame::from_normal_form`] performs
//! that lift in reverse.

use crate::enumerate::{index_product, product_count};
use crate::error::{Error, Result};
use crate::game::{NormalFormGame, Profile, MAX_ENUMERATED_PROFILES};
use crate::scalar::{strictly_greater, Scalar};

/// A finite Bayesian game.
#[derive(Debug, Clone, PartialEq)]
pub struct BayesianGame<R> {
    agents: Vec<String>,
    strategies: Vec<Vec<String>>,
    types: Vec<Vec<String>>,
    /// Indexed by flat type-profile index.
    prior: Vec<R>,
    /// `utilities[strategy_flat * type_count + type_flat][agent]`.
    utilities: Vec<Vec<R>>,
}

impl<R: Scalar> BayesianGame<R> {
    /// Builds a game from a utility function evaluated on every
    /// (strategy profile, type profile) pair. The prior is indexed by flat
    /// type-profile index (lexicographic) and must sum to 1 within 1e-9.
    pub fn from_fn(
        agents: Vec<String>,
        strategies: Vec<Vec<String>>,
        types: Vec<Vec<String>>,
        prior: Vec<R>,
        mut utility: impl FnMut(&[usize], &[usize]) -> Vec<R>,
    ) -> Result<Self> {
        if agents.len() < 2 {
            return Err(Error::TooFewAgents(agents.len()));
        }
        if strategies.len() != agents.len() || types.len() != agents.len() {
            return Err(Error::ProfileLength {
                got: strategies.len().min(types.len()),
                expected: agents.len(),
            });
        }
        for (agent, set) in strategies.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptyActionSet { agent });
            }
        }
        for (agent, set) in types.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptyActionSet { agent });
            }
        }
        let strat_sizes: Vec<usize> = strategies.iter().map(Vec::len).collect();
        let type_sizes: Vec<usize> = types.iter().map(Vec::len).collect();
        let pair_count = product_count(&strat_sizes) * product_count(&type_sizes);
        if pair_count > MAX_ENUMERATED_PROFILES {
            return Err(Error::EnumerationTooLarge {
                profiles: pair_count,
                limit: MAX_ENUMERATED_PROFILES,
            });
        }
        let type_count = product_count(&type_sizes) as usize;
        if prior.len() != type_count {
            return Err(Error::PriorLength {
                got: prior.len(),
                expected: type_count,
            });
        }
        let sum = prior.iter().fold(R::zero(), |acc, &p| acc + p);
        if (sum - R::one()).abs() > R::tie_tolerance() {
            return Err(Error::PriorNotNormalized {
                sum: sum.to_f64().unwrap_or(f64::NAN),
            });
        }
        let n = agents.len();
        let mut utilities = Vec::with_capacity(pair_count as usize);
        for strat in index_product(&strat_sizes) {
            for typ in index_product(&type_sizes) {
                let row = utility(&strat, &typ);
                if row.len() != n {
                    return Err(Error::PayoffArity {
                        profile: strat.iter().map(|i| format!("#{i}")).collect(),
                        got: row.len(),
                        expected: n,
                    });
                }
                utilities.push(row);
            }
        }
        Ok(Self {
            agents,
            strategies,
            types,
            prior,
            utilities,
        })
    }

    /// Lifts a publicly-known-utility game: one type per agent, prior 1.
    pub fn from_normal_form(game: &NormalFormGame<R>) -> Self {
        let n = game.agent_count();
        Self::from_fn(
            game.agents().to_vec(),
            game.actions().to_vec(),
            vec![vec!["*".to_string()]; n],
            vec![R::one()],
            |strat, _| game.payoff(strat).expect("complete tensor").to_vec(),
        )
        .expect("lift preserves validity")
    }

    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn strategies(&self) -> &[Vec<String>] {
        &self.strategies
    }

    pub fn types(&self) -> &[Vec<String>] {
        &self.types
    }

    /// True when every agent has exactly one type, so utilities are
    /// effectively public.
    pub fn is_publicly_known(&self) -> bool {
        self.types.iter().all(|t| t.len() == 1)
    }

    pub fn strategy_sizes(&self) -> Vec<usize> {
        self.strategies.iter().map(Vec::len).collect()
    }

    pub fn type_sizes(&self) -> Vec<usize> {
        self.types.iter().map(Vec::len).collect()
    }

    fn type_count(&self) -> usize {
        product_count(&self.type_sizes()) as usize
    }

    fn flat(sets: &[Vec<String>], profile: &[usize]) -> usize {
        let mut idx = 0;
        for (&a, set) in profile.iter().zip(sets) {
            idx = idx * set.len() + a;
        }
        idx
    }

    /// Prior probability of a type profile.
    pub fn prior(&self, type_profile: &[usize]) -> R {
        self.prior[Self::flat(&self.types, type_profile)]
    }

    /// Per-agent utilities at a (strategy profile, type profile) pair.
    pub fn utility(&self, strategy_profile: &[usize], type_profile: &[usize]) -> &[R] {
        let s = Self::flat(&self.strategies, strategy_profile);
        let t = Self::flat(&self.types, type_profile);
        &self.utilities[s * self.type_count() + t]
    }

    /// Resolves per-agent strategy labels to an index profile.
    pub fn strategy_profile_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Profile> {
        resolve_labels(&self.strategies, labels)
    }

    /// Resolves per-agent type labels to an index profile.
    pub fn type_profile_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Profile> {
        resolve_labels(&self.types, labels)
    }

    /// Strategy labels for an index profile.
    pub fn strategy_labels(&self, profile: &[usize]) -> Vec<String> {
        profile
            .iter()
            .zip(&self.strategies)
            .map(|(&i, set)| set[i].clone())
            .collect()
    }

    /// Type labels for an index profile.
    pub fn type_labels(&self, profile: &[usize]) -> Vec<String> {
        profile
            .iter()
            .zip(&self.types)
            .map(|(&i, set)| set[i].clone())
            .collect()
    }

    /// First strictly profitable unilateral strategy deviation at a fixed
    /// type realization, in enumeration order:
    /// `(agent, strategy, utility_held, utility_gained)`.
    pub fn find_profitable_deviation(
        &self,
        strategy_profile: &[usize],
        type_profile: &[usize],
    ) -> Option<(usize, usize, R, R)> {
        let mut scratch = strategy_profile.to_vec();
        for agent in 0..self.agents.len() {
            let held = self.utility(strategy_profile, type_profile)[agent];
            for strategy in 0..self.strategies[agent].len() {
                if strategy == strategy_profile[agent] {
                    continue;
                }
                scratch[agent] = strategy;
                let u = self.utility(&scratch, type_profile)[agent];
                if strictly_greater(u, held) {
                    return Some((agent, strategy, held, u));
                }
            }
            scratch[agent] = strategy_profile[agent];
        }
        None
    }

    /// Whether the strategy profile is a pure equilibrium at the given type
    /// realization.
    pub fn is_pure_equilibrium_at(
        &self,
        strategy_profile: &[usize],
        type_profile: &[usize],
    ) -> bool {
        self.find_profitable_deviation(strategy_profile, type_profile)
            .is_none()
    }

    /// The normal-form game induced by fixing a type realization.
    pub fn induced_game(&self, type_profile: &[usize]) -> NormalFormGame<R> {
        NormalFormGame::from_fn(
            self.agents.clone(),
            self.strategies.clone(),
            |strat| self.utility(strat, type_profile).to_vec(),
        )
        .expect("induced game inherits validity")
    }
}

fn resolve_labels<S: AsRef<str>>(sets: &[Vec<String>], labels: &[S]) -> Result<Profile> {
    if labels.len() != sets.len() {
        return Err(Error::ProfileLength {
            got: labels.len(),
            expected: sets.len(),
        });
    }
    labels
        .iter()
        .enumerate()
        .map(|(agent, l)| {
            sets[agent]
                .iter()
                .position(|x| x == l.as_ref())
                .ok_or_else(|| Error::UnknownLabel {
                    agent,
                    label: l.as_ref().to_string(),
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::make_tcp_game;

    #[test]
    fn normal_form_lift_is_publicly_known() {
        let g = BayesianGame::from_normal_form(&make_tcp_game::<f64>());
        assert!(g.is_publicly_known());
        assert_eq!(g.utility(&[0, 0], &[0, 0]), &[2.0, 2.0]);
        assert_eq!(g.prior(&[0, 0]), 1.0);
    }

    #[test]
    fn prior_must_normalize() {
        let err = BayesianGame::<f64>::from_fn(
            vec!["a".into(), "b".into()],
            vec![vec!["s".into()], vec!["s".into()]],
            vec![vec!["t0".into(), "t1".into()], vec!["t".into()]],
            vec![0.5, 0.4],
            |_, _| vec![1.0, 1.0],
        )
        .unwrap_err();
        assert!(matches!(err, Error::PriorNotNormalized { .. }));
    }

    #[test]
    fn equilibrium_check_matches_induced_game() {
        let g = BayesianGame::from_normal_form(&make_tcp_game::<f64>());
        // (Dishonest, Dishonest) holds; (Honest, Honest) admits a deviation.
        assert!(g.is_pure_equilibrium_at(&[1, 1], &[0, 0]));
        let (agent, strategy, held, gained) =
            g.find_profitable_deviation(&[0, 0], &[0, 0]).unwrap();
        assert_eq!((agent, strategy), (0, 1));
        assert_eq!((held, gained), (2.0, 3.0));
        let induced = g.induced_game(&[0, 0]);
        assert_eq!(induced.pure_nash_equilibria().unwrap().len(), 3);
    }
}
