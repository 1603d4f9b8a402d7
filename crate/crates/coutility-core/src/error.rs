//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by game construction, protocol checks and the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("game needs at least two agents, got {0}")]
    TooFewAgents(usize),
    #[error("agent {agent} has an empty action set")]
    EmptyActionSet { agent: usize },
    #[error("unknown agent index {agent} (game has {agent_count} agents)")]
    UnknownAgent { agent: usize, agent_count: usize },
    #[error("unknown label {label:?} for agent {agent}")]
    UnknownLabel { agent: usize, label: String },
    #[error("profile has {got} entries, expected {expected}")]
    ProfileLength { got: usize, expected: usize },
    #[error("payoff vector for profile {profile:?} has {got} entries, expected {expected}")]
    PayoffArity {
        profile: Vec<String>,
        got: usize,
        expected: usize,
    },
    #[error("profile {0:?} appears more than once")]
    DuplicateProfile(Vec<String>),
    #[error("payoff table is incomplete: missing {missing} of {expected} profiles")]
    IncompleteTable { missing: usize, expected: usize },
    #[error("opponent profile must leave exactly agent {agent} unset")]
    OpponentProfileContainsAgent { agent: usize },
    #[error("opponent profile is incomplete: agent {missing} has no action")]
    OpponentProfileIncomplete { missing: usize },
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("affine scale for agent {agent} must be strictly positive, got {scale}")]
    NonPositiveScale { agent: usize, scale: f64 },
    #[error("enumeration guard: game has {profiles} profiles, limit is {limit}")]
    EnumerationTooLarge { profiles: u128, limit: u128 },
    #[error("type prior sums to {sum}, expected 1 within 1e-9")]
    PriorNotNormalized { sum: f64 },
    #[error("prior has {got} entries, expected {expected} (one per type profile)")]
    PriorLength { got: usize, expected: usize },
    #[error("utility table has {got} entries, expected {expected}")]
    UtilityTableLength { got: usize, expected: usize },
    #[error("protocol/game domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("protocol table is not total: missing row for inputs {inputs:?}, aux {aux:?}")]
    ProtocolNotTotal { inputs: Vec<String>, aux: String },
    #[error("protocol table row for inputs {inputs:?}, aux {aux:?} appears more than once")]
    DuplicateProtocolRow { inputs: Vec<String>, aux: String },
    #[error("classification requires a two-agent game, got {0} agents")]
    TwoAgentsRequired(usize),
    #[error("co-utility classification requires a self-enforcing protocol")]
    SelfEnforcingRequired,
    #[error("co-utility classification requires a co-utility-amenable game")]
    AmenableGameRequired,
    #[error("co-utility classification rejects coordination protocols")]
    CoordinationProtocolExcluded,
    #[error("malformed ranking: {0}")]
    MalformedRanking(String),
    #[error("reported fixed point {0:?} is absent from the wife's ranking")]
    UnrankedEquilibrium(Vec<String>),
    #[error("auction needs at least two bids, got {0}")]
    TooFewBids(usize),
    #[error("bid {index} is negative ({value})")]
    NegativeBid { index: usize, value: f64 },
    #[error("valuations ({valuations}) and bids ({bids}) differ in length")]
    BidLengthMismatch { valuations: usize, bids: usize },
    #[error("truthfulness check needs non-empty grids")]
    EmptyGrid,
    #[error("query {0:?} is not pending with interest for this agent")]
    QueryNotPending(String),
    #[error("inconsistent action pair: {0}")]
    InconsistentActionPair(String),
    #[error("invalid scenario: {field}: {reason}")]
    InvalidScenario {
        field: &'static str,
        reason: String,
    },
    #[error("event log does not match scenario: {0}")]
    LogMismatch(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
