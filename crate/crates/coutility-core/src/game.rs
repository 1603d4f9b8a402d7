//! Finite normal-form games and brute-force solution concepts.
//!
//! Games are complete payoff tensors over the Cartesian product of per-agent
//! action sets. Equilibria and dominant strategies are computed by exhaustive
//! enumeration; a size guard refuses games beyond [`MAX_ENUMERATED_PROFILES`]
//! profiles. Actions are addressed by index; labels exist for construction,
//! display and file formats.

use serde::{Deserialize, Serialize};

use crate::enumerate::{index_product, product_count};
use crate::error::{Error, Result};
use crate::scalar::{at_least, strictly_greater, Scalar};

/// Action indices, one per agent, ordered by agent index.
pub type Profile = Vec<usize>;

/// Brute-force enumeration refuses games with more profiles than this.
pub const MAX_ENUMERATED_PROFILES: u128 = 10_000_000;

/// Strict or weak dominance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DominanceMode {
    /// Strictly better than every alternative against every opponent profile.
    Strict,
    /// At least as good everywhere and strictly better somewhere, against
    /// every alternative.
    Weak,
}

/// A finite game in normal form: complete payoff tensor over action profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormGame<R> {
    agents: Vec<String>,
    actions: Vec<Vec<String>>,
    /// Row-major over profiles (last agent's action varies fastest);
    /// `payoffs[flat_profile][agent]`.
    payoffs: Vec<Vec<R>>,
}

impl<R: Scalar> NormalFormGame<R> {
    /// Builds a game from a payoff function evaluated on every profile.
    pub fn from_fn(
        agents: Vec<String>,
        actions: Vec<Vec<String>>,
        mut payoff: impl FnMut(&[usize]) -> Vec<R>,
    ) -> Result<Self> {
        if agents.len() < 2 {
            return Err(Error::TooFewAgents(agents.len()));
        }
        if actions.len() != agents.len() {
            return Err(Error::ProfileLength {
                got: actions.len(),
                expected: agents.len(),
            });
        }
        for (agent, set) in actions.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::EmptyActionSet { agent });
            }
        }
        let sizes: Vec<usize> = actions.iter().map(Vec::len).collect();
        let profiles = product_count(&sizes);
        if profiles > MAX_ENUMERATED_PROFILES {
            return Err(Error::EnumerationTooLarge {
                profiles,
                limit: MAX_ENUMERATED_PROFILES,
            });
        }
        let n = agents.len();
        let mut payoffs = Vec::with_capacity(profiles as usize);
        for profile in index_product(&sizes) {
            let row = payoff(&profile);
            if row.len() != n {
                return Err(Error::PayoffArity {
                    profile: labels_of(&actions, &profile),
                    got: row.len(),
                    expected: n,
                });
            }
            payoffs.push(row);
        }
        Ok(Self {
            agents,
            actions,
            payoffs,
        })
    }

    /// Number of agents.
    pub fn agent_count(&self) -> usize {
        self.agents.len()
    }

    /// Agent names.
    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    /// Per-agent action labels.
    pub fn actions(&self) -> &[Vec<String>] {
        &self.actions
    }

    /// Sizes of the per-agent action sets.
    pub fn action_counts(&self) -> Vec<usize> {
        self.actions.iter().map(Vec::len).collect()
    }

    /// Total number of action profiles.
    pub fn profile_count(&self) -> u128 {
        product_count(&self.action_counts())
    }

    fn check_enumerable(&self) -> Result<()> {
        let profiles = self.profile_count();
        if profiles > MAX_ENUMERATED_PROFILES {
            return Err(Error::EnumerationTooLarge {
                profiles,
                limit: MAX_ENUMERATED_PROFILES,
            });
        }
        Ok(())
    }

    fn check_agent(&self, agent: usize) -> Result<()> {
        if agent >= self.agents.len() {
            return Err(Error::UnknownAgent {
                agent,
                agent_count: self.agents.len(),
            });
        }
        Ok(())
    }

    fn check_profile(&self, profile: &[usize]) -> Result<()> {
        if profile.len() != self.agents.len() {
            return Err(Error::ProfileLength {
                got: profile.len(),
                expected: self.agents.len(),
            });
        }
        for (agent, (&a, set)) in profile.iter().zip(&self.actions).enumerate() {
            if a >= set.len() {
                return Err(Error::UnknownLabel {
                    agent,
                    label: format!("#{a}"),
                });
            }
        }
        Ok(())
    }

    fn flat_index(&self, profile: &[usize]) -> usize {
        let mut idx = 0;
        for (&a, set) in profile.iter().zip(&self.actions) {
            idx = idx * set.len() + a;
        }
        idx
    }

    /// Per-agent utilities at `profile`.
    pub fn payoff(&self, profile: &[usize]) -> Result<&[R]> {
        self.check_profile(profile)?;
        Ok(&self.payoffs[self.flat_index(profile)])
    }

    /// Utility of one agent at `profile`.
    pub fn utility(&self, agent: usize, profile: &[usize]) -> Result<R> {
        self.check_agent(agent)?;
        Ok(self.payoff(profile)?[agent])
    }

    /// Resolves an action label for one agent to its index.
    pub fn action_index(&self, agent: usize, label: &str) -> Result<usize> {
        self.check_agent(agent)?;
        self.actions[agent]
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel {
                agent,
                label: label.to_string(),
            })
    }

    /// Resolves a full profile of labels to indices.
    pub fn profile_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Profile> {
        if labels.len() != self.agents.len() {
            return Err(Error::ProfileLength {
                got: labels.len(),
                expected: self.agents.len(),
            });
        }
        labels
            .iter()
            .enumerate()
            .map(|(agent, l)| self.action_index(agent, l.as_ref()))
            .collect()
    }

    /// Labels for an index profile.
    pub fn profile_labels(&self, profile: &[usize]) -> Vec<String> {
        labels_of(&self.actions, profile)
    }

    /// Per-agent utilities addressed by labels.
    pub fn payoff_by_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<&[R]> {
        let profile = self.profile_from_labels(labels)?;
        Ok(&self.payoffs[self.flat_index(&profile)])
    }

    /// All actions of `agent` maximizing her utility against a fixed
    /// opponent profile. `opponents` must assign an action to every agent
    /// except `agent`, which must be `None`.
    pub fn best_responses(&self, agent: usize, opponents: &[Option<usize>]) -> Result<Vec<usize>> {
        self.check_agent(agent)?;
        if opponents.len() != self.agents.len() {
            return Err(Error::ProfileLength {
                got: opponents.len(),
                expected: self.agents.len(),
            });
        }
        if opponents[agent].is_some() {
            return Err(Error::OpponentProfileContainsAgent { agent });
        }
        for (other, slot) in opponents.iter().enumerate() {
            if other != agent && slot.is_none() {
                return Err(Error::OpponentProfileIncomplete { missing: other });
            }
        }
        let mut profile: Profile = opponents
            .iter()
            .map(|slot| slot.unwrap_or(0))
            .collect();
        let mut best = R::neg_infinity();
        let mut utilities = Vec::with_capacity(self.actions[agent].len());
        for action in 0..self.actions[agent].len() {
            profile[agent] = action;
            self.check_profile(&profile)?;
            let u = self.payoffs[self.flat_index(&profile)][agent];
            if u > best {
                best = u;
            }
            utilities.push(u);
        }
        Ok(utilities
            .iter()
            .enumerate()
            .filter(|(_, &u)| at_least(u, best))
            .map(|(a, _)| a)
            .collect())
    }

    /// Whether `profile` is a pure Nash equilibrium: no agent has a strictly
    /// profitable unilateral deviation.
    pub fn is_pure_nash(&self, profile: &[usize]) -> Result<bool> {
        Ok(self.find_profitable_deviation(profile)?.is_none())
    }

    /// First strictly profitable unilateral deviation from `profile` in
    /// enumeration order, if any: `(agent, action, gain_from, gain_to)`.
    pub fn find_profitable_deviation(
        &self,
        profile: &[usize],
    ) -> Result<Option<(usize, usize, R, R)>> {
        self.check_profile(profile)?;
        let current = self.flat_index(profile);
        let mut scratch = profile.to_vec();
        for agent in 0..self.agents.len() {
            let held = self.payoffs[current][agent];
            for action in 0..self.actions[agent].len() {
                if action == profile[agent] {
                    continue;
                }
                scratch[agent] = action;
                let u = self.payoffs[self.flat_index(&scratch)][agent];
                if strictly_greater(u, held) {
                    return Ok(Some((agent, action, held, u)));
                }
            }
            scratch[agent] = profile[agent];
        }
        Ok(None)
    }

    /// All pure Nash equilibria, by exhaustive enumeration, in lexicographic
    /// order of action indices.
    pub fn pure_nash_equilibria(&self) -> Result<Vec<Profile>> {
        self.check_enumerable()?;
        let sizes = self.action_counts();
        let mut out = Vec::new();
        for profile in index_product(&sizes) {
            if self.find_profitable_deviation(&profile)?.is_none() {
                out.push(profile);
            }
        }
        Ok(out)
    }

    /// Dominant strategies for one agent, in the requested mode, sorted by
    /// action index. An agent with a single action has it vacuously.
    pub fn dominant_strategies(&self, agent: usize, mode: DominanceMode) -> Result<Vec<usize>> {
        self.check_agent(agent)?;
        self.check_enumerable()?;
        let my_actions = self.actions[agent].len();
        let opponent_sizes: Vec<usize> = self
            .actions
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != agent)
            .map(|(_, set)| set.len())
            .collect();
        let mut out = Vec::new();
        'candidates: for candidate in 0..my_actions {
            for alternative in 0..my_actions {
                if alternative == candidate {
                    continue;
                }
                let mut somewhere_better = false;
                for opp in index_product(&opponent_sizes) {
                    let profile_with = |mine: usize| -> Profile {
                        let mut p = Vec::with_capacity(self.agents.len());
                        let mut it = opp.iter();
                        for i in 0..self.agents.len() {
                            if i == agent {
                                p.push(mine);
                            } else {
                                p.push(*it.next().unwrap());
                            }
                        }
                        p
                    };
                    let u_cand = self.payoffs[self.flat_index(&profile_with(candidate))][agent];
                    let u_alt = self.payoffs[self.flat_index(&profile_with(alternative))][agent];
                    match mode {
                        DominanceMode::Strict => {
                            if !strictly_greater(u_cand, u_alt) {
                                continue 'candidates;
                            }
                        }
                        DominanceMode::Weak => {
                            if !at_least(u_cand, u_alt) {
                                continue 'candidates;
                            }
                            if strictly_greater(u_cand, u_alt) {
                                somewhere_better = true;
                            }
                        }
                    }
                }
                if mode == DominanceMode::Weak && !somewhere_better {
                    continue 'candidates;
                }
            }
            out.push(candidate);
        }
        Ok(out)
    }

    /// Applies `u_i' = scale_i · u_i + offset_i` to every profile.
    /// Every scale must be strictly positive.
    pub fn affine_transform(&self, scales: &[R], offsets: &[R]) -> Result<Self> {
        if scales.len() != self.agents.len() || offsets.len() != self.agents.len() {
            return Err(Error::ProfileLength {
                got: scales.len().min(offsets.len()),
                expected: self.agents.len(),
            });
        }
        for (agent, &s) in scales.iter().enumerate() {
            if s <= R::zero() {
                return Err(Error::NonPositiveScale {
                    agent,
                    scale: s.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let payoffs = self
            .payoffs
            .iter()
            .map(|row| {
                row.iter()
                    .zip(scales.iter().zip(offsets))
                    .map(|(&u, (&s, &o))| s * u + o)
                    .collect()
            })
            .collect();
        Ok(Self {
            agents: self.agents.clone(),
            actions: self.actions.clone(),
            payoffs,
        })
    }
}

fn labels_of(actions: &[Vec<String>], profile: &[usize]) -> Vec<String> {
    profile
        .iter()
        .zip(actions)
        .map(|(&a, set)| {
            set.get(a)
                .cloned()
                .unwrap_or_else(|| format!("#{a}"))
        })
        .collect()
}

/// The two-agent congestion game over honest and dishonest transport
/// implementations, with bandwidth payoffs
/// (2,2), (1,3), (3,1), (1,1).
pub fn make_tcp_game<R: Scalar>() -> NormalFormGame<R> {
    let payoff = |p: &[usize]| -> Vec<R> {
        let r = |x: f64| R::from_f64(x).unwrap();
        match (p[0], p[1]) {
            (0, 0) => vec![r(2.0), r(2.0)],
            (0, 1) => vec![r(1.0), r(3.0)],
            (1, 0) => vec![r(3.0), r(1.0)],
            (1, 1) => vec![r(1.0), r(1.0)],
            _ => unreachable!(),
        }
    };
    NormalFormGame::from_fn(
        vec!["Alice".into(), "Bob".into()],
        vec![
            vec!["Honest".into(), "Dishonest".into()],
            vec!["Honest".into(), "Dishonest".into()],
        ],
        payoff,
    )
    .expect("static game construction")
}

/// Battle-of-the-Sexes payoffs: diagonal `(a_w, b_h)` / `(b_w, a_h)`,
/// off-diagonal `(c, c)`. Requires `a_w > b_w > c` and `a_h > b_h > c`.
/// Agent 0 is the wife, agent 1 the husband; action 0 is Opera, 1 Football.
pub fn make_bos<R: Scalar>(a_w: R, b_w: R, a_h: R, b_h: R, c: R) -> Result<NormalFormGame<R>> {
    for (name, ok) in [
        ("a_W > b_W", strictly_greater(a_w, b_w)),
        ("b_W > c", strictly_greater(b_w, c)),
        ("a_H > b_H", strictly_greater(a_h, b_h)),
        ("b_H > c", strictly_greater(b_h, c)),
    ] {
        if !ok {
            return Err(Error::ConstraintViolation(name.to_string()));
        }
    }
    NormalFormGame::from_fn(
        vec!["Wife".into(), "Husband".into()],
        vec![
            vec!["Opera".into(), "Football".into()],
            vec!["Opera".into(), "Football".into()],
        ],
        |p| match (p[0], p[1]) {
            (0, 0) => vec![a_w, b_h],
            (1, 1) => vec![b_w, a_h],
            _ => vec![c, c],
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    type Game = NormalFormGame<f64>;

    fn tcp() -> Game {
        make_tcp_game()
    }

    #[test]
    fn tcp_payoffs_match_table() {
        let g = tcp();
        assert_eq!(g.payoff_by_labels(&["Honest", "Honest"]).unwrap(), &[2.0, 2.0]);
        assert_eq!(g.payoff_by_labels(&["Honest", "Dishonest"]).unwrap(), &[1.0, 3.0]);
        assert_eq!(g.payoff_by_labels(&["Dishonest", "Honest"]).unwrap(), &[3.0, 1.0]);
        assert_eq!(g.payoff_by_labels(&["Dishonest", "Dishonest"]).unwrap(), &[1.0, 1.0]);
    }

    #[test]
    fn best_responses_tcp() {
        let g = tcp();
        // Alice vs Bob=Honest: 3 > 2, dishonest only.
        assert_eq!(g.best_responses(0, &[None, Some(0)]).unwrap(), vec![1]);
        // Alice vs Bob=Dishonest: 1 = 1, both tie.
        assert_eq!(g.best_responses(0, &[None, Some(1)]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn best_responses_singleton_action() {
        let g = NormalFormGame::<f64>::from_fn(
            vec!["a".into(), "b".into()],
            vec![vec!["only".into()], vec!["x".into(), "y".into()]],
            |_| vec![1.0, 1.0],
        )
        .unwrap();
        assert_eq!(g.best_responses(0, &[None, Some(1)]).unwrap(), vec![0]);
    }

    #[test]
    fn best_responses_rejects_bad_opponent_profiles() {
        let g = tcp();
        assert!(matches!(
            g.best_responses(0, &[Some(0), Some(0)]),
            Err(Error::OpponentProfileContainsAgent { agent: 0 })
        ));
        assert!(matches!(
            g.best_responses(0, &[None, None]),
            Err(Error::OpponentProfileIncomplete { missing: 1 })
        ));
        assert!(matches!(
            g.best_responses(5, &[None, Some(0)]),
            Err(Error::UnknownAgent { agent: 5, .. })
        ));
    }

    #[test]
    fn tcp_equilibria() {
        let g = tcp();
        let nash = g.pure_nash_equilibria().unwrap();
        assert_eq!(nash, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn matching_pennies_has_no_pure_equilibrium() {
        let g = NormalFormGame::<f64>::from_fn(
            vec!["row".into(), "col".into()],
            vec![
                vec!["heads".into(), "tails".into()],
                vec!["heads".into(), "tails".into()],
            ],
            |p| {
                let row_wins = p[0] == p[1];
                if row_wins {
                    vec![1.0, -1.0]
                } else {
                    vec![-1.0, 1.0]
                }
            },
        )
        .unwrap();
        assert!(g.pure_nash_equilibria().unwrap().is_empty());
    }

    #[test]
    fn tcp_dominance() {
        let g = tcp();
        for agent in 0..2 {
            assert_eq!(g.dominant_strategies(agent, DominanceMode::Weak).unwrap(), vec![1]);
            assert!(g.dominant_strategies(agent, DominanceMode::Strict).unwrap().is_empty());
        }
    }

    #[test]
    fn single_action_dominates_vacuously() {
        let g = NormalFormGame::<f64>::from_fn(
            vec!["a".into(), "b".into()],
            vec![vec!["only".into()], vec!["x".into(), "y".into()]],
            |p| vec![p[1] as f64, 0.0],
        )
        .unwrap();
        assert_eq!(g.dominant_strategies(0, DominanceMode::Weak).unwrap(), vec![0]);
    }

    #[test]
    fn bos_payoffs_and_equilibria() {
        let g = make_bos(3.0, 2.0, 3.0, 2.0, 1.0).unwrap();
        assert_eq!(g.payoff_by_labels(&["Opera", "Opera"]).unwrap(), &[3.0, 2.0]);
        assert_eq!(g.payoff_by_labels(&["Opera", "Football"]).unwrap(), &[1.0, 1.0]);
        assert_eq!(g.payoff_by_labels(&["Football", "Football"]).unwrap(), &[2.0, 3.0]);
        let nash = g.pure_nash_equilibria().unwrap();
        assert_eq!(nash, vec![vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn bos_rejects_constraint_violations() {
        let err = make_bos(2.0, 3.0, 3.0, 2.0, 1.0).unwrap_err();
        assert_eq!(err, Error::ConstraintViolation("a_W > b_W".into()));
        let err = make_bos(3.0, 2.0, 3.0, 0.5, 1.0).unwrap_err();
        assert_eq!(err, Error::ConstraintViolation("b_H > c".into()));
    }

    #[test]
    fn affine_identity_and_shift() {
        let g = tcp();
        let same = g.affine_transform(&[1.0, 1.0], &[0.0, 0.0]).unwrap();
        assert_eq!(g, same);
        let shifted = g.affine_transform(&[2.0, 2.0], &[1.0, 1.0]).unwrap();
        assert_eq!(shifted.payoff_by_labels(&["Honest", "Honest"]).unwrap(), &[5.0, 5.0]);
        assert_eq!(shifted.pure_nash_equilibria().unwrap(), g.pure_nash_equilibria().unwrap());
    }

    #[test]
    fn affine_rejects_nonpositive_scale() {
        let g = tcp();
        assert!(matches!(
            g.affine_transform(&[0.0, 1.0], &[0.0, 0.0]),
            Err(Error::NonPositiveScale { agent: 0, .. })
        ));
    }

    #[test]
    fn enumeration_guard_trips_before_allocating() {
        // 24 actions each over 6 agents: 24^6 ≈ 1.9e8 profiles.
        let actions: Vec<Vec<String>> = (0..6)
            .map(|_| (0..24).map(|i| format!("a{i}")).collect())
            .collect();
        let agents = (0..6).map(|i| format!("p{i}")).collect();
        let err = NormalFormGame::<f64>::from_fn(agents, actions, |_| vec![0.0; 6]).unwrap_err();
        assert!(matches!(err, Error::EnumerationTooLarge { .. }));
    }

    #[test]
    fn f32_games_work() {
        let g: NormalFormGame<f32> = make_tcp_game();
        assert_eq!(g.pure_nash_equilibria().unwrap().len(), 3);
    }
}
