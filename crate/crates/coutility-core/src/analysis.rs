//! Executable protocol classification: self-enforcing, coordination,
//! co-utility-amenable, and strictly/relaxedly co-utile verdicts over finite
//! Bayesian games, each established by exhaustive checking with replayable
//! witnesses.
//!
//! Positivity comes in two modes. `ExPost` demands every agent's utility be
//! strictly positive at every (input, aux, type) combination, with the
//! protocol output required to be a pure equilibrium at every type
//! realization. `Expected` covers protocols whose inputs are the reported
//! types themselves (the input domains must equal the type sets): outputs
//! are checked for equilibrium on truthful runs, and each agent's utility
//! must be positive in expectation over the common prior. The second mode
//! exists for mechanisms like second-price auctions, where losers get zero
//! ex post yet positive expected utility keeps participation rational.

use serde::Serialize;

use crate::bayesian::BayesianGame;
use crate::enumerate::index_product;
use crate::error::{Error, Result};
use crate::game::Profile;
use crate::protocol::ProtocolTable;
use crate::scalar::{approx_eq, at_least, strictly_positive, Scalar};

/// How Definition-style positivity is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PositivityMode {
    /// Positivity per (input, aux, type) combination; equilibrium per
    /// (input, aux, type).
    ExPost,
    /// Equilibrium on truthful runs (inputs are the reported types);
    /// positivity in expectation over the prior.
    Expected,
}

/// Why a protocol is not self-enforcing.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SelfEnforcingFailure<R> {
    /// Some agent can strictly gain by deviating from the protocol output.
    NotEquilibrium {
        inputs: Vec<String>,
        aux: String,
        types: Vec<String>,
        output: Vec<String>,
        agent: usize,
        deviation: String,
        utility_held: R,
        utility_gained: R,
    },
    /// Some agent's utility at the protocol output is not strictly positive.
    NonPositiveUtility {
        inputs: Vec<String>,
        aux: String,
        types: Vec<String>,
        output: Vec<String>,
        agent: usize,
        utility: R,
    },
    /// Some agent's expected utility over the prior is not strictly positive.
    NonPositiveExpectedUtility {
        aux: String,
        agent: usize,
        expected_utility: R,
    },
}

/// Outcome of the self-enforcing check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelfEnforcingReport<R> {
    pub mode: PositivityMode,
    pub holds: bool,
    pub witness: Option<SelfEnforcingFailure<R>>,
}

/// A misreport by agents other than `affected_agent` that changes her
/// utility under the protocol output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoordinationWitness<R> {
    pub types: Vec<String>,
    pub aux: String,
    pub inputs: Vec<String>,
    pub misreported_inputs: Vec<String>,
    pub affected_agent: usize,
    pub utility_held: R,
    pub utility_after: R,
}

/// Outcome of the coordination check.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CoordinationOutcome<R> {
    /// The protocol is not self-enforcing, so the question does not arise.
    NotApplicable {
        self_enforcing_witness: SelfEnforcingFailure<R>,
    },
    Verdict {
        is_coordination: bool,
        witness: Option<CoordinationWitness<R>>,
    },
}

/// A type change of one agent that moves another agent's utility.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmenabilityWitness<R> {
    pub varying_agent: usize,
    pub affected_agent: usize,
    pub strategy_profile: Vec<String>,
    pub types: Vec<String>,
    pub varied_type: String,
    pub utility_held: R,
    pub utility_after: R,
}

/// Outcome of the co-utility-amenability check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AmenabilityReport<R> {
    pub holds: bool,
    pub witness: Option<AmenabilityWitness<R>>,
}

/// Co-utility level of a protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoUtilityLevel {
    /// Every agent's utility at the protocol output is maximal over all
    /// strategy profiles, for every input and type realization.
    Strict,
    /// At least one agent enjoys that maximality.
    Relaxed,
    /// Neither agent does.
    None,
}

/// Per-agent maximality and the resulting level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoUtilityReport {
    pub level: CoUtilityLevel,
    pub per_agent_maximal: Vec<bool>,
}

/// Full classification ladder for one (protocol, game) pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport<R> {
    pub positivity_mode: PositivityMode,
    pub self_enforcing: bool,
    pub self_enforcing_witness: Option<SelfEnforcingFailure<R>>,
    /// `None` when the protocol is not self-enforcing.
    pub coordination: Option<bool>,
    pub coordination_witness: Option<CoordinationWitness<R>>,
    pub amenable: bool,
    pub amenable_witness: Option<AmenabilityWitness<R>>,
    /// `None` when the ladder's preconditions exclude co-utility.
    pub coutility: Option<CoUtilityReport>,
    /// Records the implemented reading of output maximality.
    pub maximality_interpretation: &'static str,
}

const MAXIMALITY_NOTE: &str =
    "protocol output weakly dominates every alternative strategy profile for the agent, \
     at every input, auxiliary value and type realization";

/// Binds protocol outputs to a game's strategy space, validating domains.
fn resolve_outputs<R: Scalar>(
    protocol: &ProtocolTable,
    game: &BayesianGame<R>,
) -> Result<Vec<(Vec<usize>, usize, Profile)>> {
    if protocol.agent_count() != game.agent_count() {
        return Err(Error::DomainMismatch(format!(
            "protocol takes inputs from {} agents, game has {}",
            protocol.agent_count(),
            game.agent_count()
        )));
    }
    protocol
        .domain_iter()
        .map(|(inputs, aux)| {
            let labels = protocol.output(&inputs, aux);
            let profile = game.strategy_profile_from_labels(labels).map_err(|e| {
                Error::DomainMismatch(format!("protocol output {labels:?}: {e}"))
            })?;
            Ok((inputs, aux, profile))
        })
        .collect()
}

fn require_type_aligned_inputs<R: Scalar>(
    protocol: &ProtocolTable,
    game: &BayesianGame<R>,
) -> Result<()> {
    if protocol.input_domains() != game.types() {
        return Err(Error::DomainMismatch(
            "expected-positivity mode requires the protocol's input domains to equal the \
             game's type sets (inputs are the reported types)"
                .into(),
        ));
    }
    Ok(())
}

/// Checks Definition-style self-enforcement: every protocol output is a pure
/// equilibrium with (ex-post or expected) strictly positive utilities.
pub fn check_self_enforcing<R: Scalar>(
    protocol: &ProtocolTable,
    game: &BayesianGame<R>,
    mode: PositivityMode,
) -> Result<SelfEnforcingReport<R>> {
    let resolved = resolve_outputs(protocol, game)?;
    let witness = match mode {
        PositivityMode::ExPost => ex_post_witness(protocol, game, &resolved),
        PositivityMode::Expected => {
            require_type_aligned_inputs(protocol, game)?;
            expected_witness(protocol, game, &resolved)
        }
    };
    Ok(SelfEnforcingReport {
        mode,
        holds: witness.is_none(),
        witness,
    })
}

fn ex_post_witness<R: Scalar>(
    protocol: &ProtocolTable,
    game: &BayesianGame<R>,
    resolved: &[(Vec<usize>, usize, Profile)],
) -> Option<SelfEnforcingFailure<R>> {
    let type_sizes = game.type_sizes();
    for (inputs, aux, output) in resolved {
        for types in index_product(&type_sizes) {
            if let Some(failure) =
                output_failure_at(protocol, game, inputs, *aux, output, &types)
            {
                return Some(failure);
            }
        }
    }
    None
}

fn output_failure_at<R: Scalar>(
    protocol: &ProtocolTable,
    game: &BayesianGame<R>,
    inputs: &[usize],
    aux: usize,
    output: &Profile,
    types: &[usize],
) -> Option<SelfEnforcingFailure<R>> {
    if let Some((agent, strategy, held, gained)) = game.find_profitable_deviation(output, types) {
        return Some(SelfEnforcingFailure::NotEquilibrium {
            inputs: protocol.input_labels(inputs),
            aux: protocol.aux_domain()[aux].clone(),
            types: game.type_labels(types),
            output: game.strategy_labels(output),
            agent,
            deviation: game.strategies()[agent][strategy].clone(),
            utility_held: held,
            utility_gained: gained,
        });
    }
    let utilities = game.utility(output, types);
    for (agent, &u) in utilities.iter().enumerate() {
        if !strictly_positive(u) {
            return Some(SelfEnforcingFailure::NonPositiveUtility {
                inputs: protocol.input_labels(inputs),
                aux: protocol.aux_domain()[aux].clone(),
                types: game.type_labels(types),
                output: game.strategy_labels(output),
                agent,
                utility: u,
            });
        }
    }
    None
}

fn expected_witness<R: Scalar>(
    protocol: &ProtocolTable,
    game: &BayesianGame<R>,
    resolved: &[(Vec<usize>, usize, Profile)],
) -> Option<SelfEnforcingFailure<R>> {
    let aux_len = protocol.aux_domain().len();
    // Inputs are type-aligned, so the flat layout of `resolved` is
    // (type profile, aux), lexicographic.
    let lookup = |types_flat: usize, aux: usize| -> &Profile {
        &resolved[types_flat * aux_len + aux].2
    };
    let type_sizes = game.type_sizes();
    for aux in 0..aux_len {
        // Equilibrium on truthful runs.
        for (types_flat, types) in index_product(&type_sizes).enumerate() {
            let output = lookup(types_flat, aux);
            if let Some((agent, strategy, held, gained)) =
                game.find_profitable_deviation(output, &types)
            {
                return Some(SelfEnforcingFailure::NotEquilibrium {
                    inputs: game.type_labels(&types),
                    aux: protocol.aux_domain()[aux].clone(),
                    types: game.type_labels(&types),
                    output: game.strategy_labels(output),
                    agent,
                    deviation: game.strategies()[agent][strategy].clone(),
                    utility_held: held,
                    utility_gained: gained,
                });
            }
        }
        // Expected positivity over the prior.
        for agent in 0..game.agent_count() {
            let mut expected = R::zero();
            for (types_flat, types) in index_product(&type_sizes).enumerate() {
                let output = lookup(types_flat, aux);
                expected = expected + game.prior(&types) * game.utility(output, &types)[agent];
            }
            if !strictly_positive(expected) {
                return Some(SelfEnforcingFailure::NonPositiveExpectedUtility {
                    aux: protocol.aux_domain()[aux].clone(),
                    agent,
                    expected_utility: expected,
                });
            }
        }
    }
    None
}

/// Checks whether a self-enforcing protocol is a coordination protocol:
/// some agent's utility under the output depends on inputs provided by the
/// other agents.
pub fn is_coordination<R: Scalar>(
    protocol: &ProtocolTable,
    game: &BayesianGame<R>,
    mode: PositivityMode,
) -> Result<CoordinationOutcome<R>> {
    let enforcing = check_self_enforcing(protocol, game, mode)?;
    if let Some(witness) = enforcing.witness {
        return Ok(CoordinationOutcome::NotApplicable {
            self_enforcing_witness: witness,
        });
    }
    let witness = coordination_witness(protocol, game);
    Ok(CoordinationOutcome::Verdict {
        is_coordination: witness.is_some(),
        witness,
    })
}

fn coordination_witness<R: Scalar>(
    protocol: &ProtocolTable,
    game: &BayesianGame<R>,
) -> Option<CoordinationWitness<R>> {
    let input_sizes = protocol.input_sizes();
    let type_sizes = game.type_sizes();
    for affected in 0..game.agent_count() {
        for types in index_product(&type_sizes) {
            for aux in 0..protocol.aux_domain().len() {
                for base in index_product(&input_sizes) {
                    let held_output = game
                        .strategy_profile_from_labels(protocol.output(&base, aux))
                        .expect("validated by caller");
                    let held = game.utility(&held_output, &types)[affected];
                    for misreport in index_product(&input_sizes) {
                        if misreport == base || misreport[affected] != base[affected] {
                            continue;
                        }
                        let output = game
                            .strategy_profile_from_labels(protocol.output(&misreport, aux))
                            .expect("validated by caller");
                        let after = game.utility(&output, &types)[affected];
                        if !approx_eq(held, after) {
                            return Some(CoordinationWitness {
                                types: game.type_labels(&types),
                                aux: protocol.aux_domain()[aux].clone(),
                                inputs: protocol.input_labels(&base),
                                misreported_inputs: protocol.input_labels(&misreport),
                                affected_agent: affected,
                                utility_held: held,
                                utility_after: after,
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

/// Checks whether a game is co-utility-amenable: no agent's utility depends
/// on any other agent's type.
pub fn is_coutility_amenable<R: Scalar>(game: &BayesianGame<R>) -> AmenabilityReport<R> {
    let strat_sizes = game.strategy_sizes();
    let type_sizes = game.type_sizes();
    for varying in 0..game.agent_count() {
        for affected in 0..game.agent_count() {
            if affected == varying {
                continue;
            }
            for strat in index_product(&strat_sizes) {
                for types in index_product(&type_sizes) {
                    let held = game.utility(&strat, &types)[affected];
                    for alt in 0..type_sizes[varying] {
                        if alt == types[varying] {
                            continue;
                        }
                        let mut varied = types.clone();
                        varied[varying] = alt;
                        let after = game.utility(&strat, &varied)[affected];
                        if !approx_eq(held, after) {
                            return AmenabilityReport {
                                holds: false,
                                witness: Some(AmenabilityWitness {
                                    varying_agent: varying,
                                    affected_agent: affected,
                                    strategy_profile: game.strategy_labels(&strat),
                                    types: game.type_labels(&types),
                                    varied_type: game.types()[varying][alt].clone(),
                                    utility_held: held,
                                    utility_after: after,
                                }),
                            };
                        }
                    }
                }
            }
        }
    }
    AmenabilityReport {
        holds: true,
        witness: None,
    }
}

/// Classifies a protocol's co-utility level. Preconditions (two agents,
/// amenable game, self-enforcing, not coordination) are reported as
/// distinct errors.
pub fn classify_coutility<R: Scalar>(
    protocol: &ProtocolTable,
    game: &BayesianGame<R>,
    mode: PositivityMode,
) -> Result<CoUtilityReport> {
    if game.agent_count() != 2 {
        return Err(Error::TwoAgentsRequired(game.agent_count()));
    }
    if !is_coutility_amenable(game).holds {
        return Err(Error::AmenableGameRequired);
    }
    match is_coordination(protocol, game, mode)? {
        CoordinationOutcome::NotApplicable { .. } => Err(Error::SelfEnforcingRequired),
        CoordinationOutcome::Verdict {
            is_coordination: true,
            ..
        } => Err(Error::CoordinationProtocolExcluded),
        CoordinationOutcome::Verdict {
            is_coordination: false,
            ..
        } => Ok(coutility_flags(protocol, game)),
    }
}

fn coutility_flags<R: Scalar>(
    protocol: &ProtocolTable,
    game: &BayesianGame<R>,
) -> CoUtilityReport {
    let strat_sizes = game.strategy_sizes();
    let type_sizes = game.type_sizes();
    let resolved: Vec<(Vec<usize>, usize, Profile)> = protocol
        .domain_iter()
        .map(|(inputs, aux)| {
            let profile = game
                .strategy_profile_from_labels(protocol.output(&inputs, aux))
                .expect("validated by caller");
            (inputs, aux, profile)
        })
        .collect();
    let per_agent_maximal: Vec<bool> = (0..game.agent_count())
        .map(|agent| {
            resolved.iter().all(|(_, _, output)| {
                index_product(&type_sizes).all(|types| {
                    let held = game.utility(output, &types)[agent];
                    index_product(&strat_sizes)
                        .all(|alt| at_least(held, game.utility(&alt, &types)[agent]))
                })
            })
        })
        .collect();
    let level = match per_agent_maximal.iter().filter(|&&m| m).count() {
        n if n == per_agent_maximal.len() => CoUtilityLevel::Strict,
        0 => CoUtilityLevel::None,
        _ => CoUtilityLevel::Relaxed,
    };
    CoUtilityReport {
        level,
        per_agent_maximal,
    }
}

/// Runs the full ladder: self-enforcing, coordination, amenability, and
/// co-utility when the preconditions admit it.
pub fn classify_protocol<R: Scalar>(
    protocol: &ProtocolTable,
    game: &BayesianGame<R>,
    mode: PositivityMode,
) -> Result<ClassificationReport<R>> {
    let enforcing = check_self_enforcing(protocol, game, mode)?;
    let amenability = is_coutility_amenable(game);
    let (coordination, coordination_witness) = if enforcing.holds {
        let witness = coordination_witness(protocol, game);
        (Some(witness.is_some()), witness)
    } else {
        (None, None)
    };
    let coutility = if enforcing.holds
        && coordination == Some(false)
        && amenability.holds
        && game.agent_count() == 2
    {
        Some(coutility_flags(protocol, game))
    } else {
        None
    };
    Ok(ClassificationReport {
        positivity_mode: mode,
        self_enforcing: enforcing.holds,
        self_enforcing_witness: enforcing.witness,
        coordination,
        coordination_witness,
        amenable: amenability.holds,
        amenable_witness: amenability.witness,
        coutility,
        maximality_interpretation: MAXIMALITY_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{make_bos, make_tcp_game};

    fn tcp_bayesian() -> BayesianGame<f64> {
        BayesianGame::from_normal_form(&make_tcp_game())
    }

    fn constant(output: &[&str]) -> ProtocolTable {
        ProtocolTable::constant(2, output.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn honest_constant_protocol_is_not_self_enforcing() {
        let report = check_self_enforcing(
            &constant(&["Honest", "Honest"]),
            &tcp_bayesian(),
            PositivityMode::ExPost,
        )
        .unwrap();
        assert!(!report.holds);
        match report.witness.unwrap() {
            SelfEnforcingFailure::NotEquilibrium {
                agent, deviation, ..
            } => {
                assert_eq!(agent, 0);
                assert_eq!(deviation, "Dishonest");
            }
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn dishonest_constant_protocol_is_self_enforcing() {
        let report = check_self_enforcing(
            &constant(&["Dishonest", "Dishonest"]),
            &tcp_bayesian(),
            PositivityMode::ExPost,
        )
        .unwrap();
        assert!(report.holds);
    }

    #[test]
    fn bos_constant_opera_is_self_enforcing() {
        let game = BayesianGame::from_normal_form(&make_bos(3.0, 2.0, 3.0, 2.0, 1.0).unwrap());
        let report =
            check_self_enforcing(&constant(&["Opera", "Opera"]), &game, PositivityMode::ExPost)
                .unwrap();
        assert!(report.holds);
    }

    #[test]
    fn constant_protocol_is_never_coordination() {
        let outcome = is_coordination(
            &constant(&["Dishonest", "Dishonest"]),
            &tcp_bayesian(),
            PositivityMode::ExPost,
        )
        .unwrap();
        match outcome {
            CoordinationOutcome::Verdict {
                is_coordination, ..
            } => assert!(!is_coordination),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn singleton_types_are_trivially_amenable() {
        assert!(is_coutility_amenable(&tcp_bayesian()).holds);
    }

    #[test]
    fn amenability_witness_replays() {
        // u_0 depends on agent 1's type.
        let game = BayesianGame::<f64>::from_fn(
            vec!["a".into(), "b".into()],
            vec![vec!["s".into()], vec!["s".into()]],
            vec![vec!["t".into()], vec!["lo".into(), "hi".into()]],
            vec![0.5, 0.5],
            |_, types| vec![types[1] as f64 + 1.0, 1.0],
        )
        .unwrap();
        let report = is_coutility_amenable(&game);
        assert!(!report.holds);
        let w = report.witness.unwrap();
        assert_eq!(w.varying_agent, 1);
        assert_eq!(w.affected_agent, 0);
        let base = game.type_profile_from_labels(&w.types).unwrap();
        let strat = game.strategy_profile_from_labels(&w.strategy_profile).unwrap();
        let mut varied = base.clone();
        varied[w.varying_agent] = game.types()[w.varying_agent]
            .iter()
            .position(|t| *t == w.varied_type)
            .unwrap();
        assert_eq!(game.utility(&strat, &base)[w.affected_agent], w.utility_held);
        assert_eq!(game.utility(&strat, &varied)[w.affected_agent], w.utility_after);
    }

    #[test]
    fn classify_coutility_precondition_errors_are_distinct() {
        let game = tcp_bayesian();
        // (Honest, Honest) is not self-enforcing.
        let err = classify_coutility(
            &constant(&["Honest", "Honest"]),
            &game,
            PositivityMode::ExPost,
        )
        .unwrap_err();
        assert_eq!(err, Error::SelfEnforcingRequired);
    }

    #[test]
    fn ladder_marks_coutility_not_applicable_when_not_self_enforcing() {
        let report = classify_protocol(
            &constant(&["Honest", "Honest"]),
            &tcp_bayesian(),
            PositivityMode::ExPost,
        )
        .unwrap();
        assert!(!report.self_enforcing);
        assert_eq!(report.coordination, None);
        assert!(report.coutility.is_none());
    }

    #[test]
    fn expected_mode_requires_type_aligned_inputs() {
        let game = BayesianGame::<f64>::from_fn(
            vec!["a".into(), "b".into()],
            vec![vec!["s".into()], vec!["s".into()]],
            vec![vec!["lo".into(), "hi".into()], vec!["t".into()]],
            vec![0.5, 0.5],
            |_, _| vec![1.0, 1.0],
        )
        .unwrap();
        let err = check_self_enforcing(&constant(&["s", "s"]), &game, PositivityMode::Expected)
            .unwrap_err();
        assert!(matches!(err, Error::DomainMismatch(_)));
    }
}
