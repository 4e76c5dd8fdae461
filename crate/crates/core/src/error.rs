use thiserror::Error;

use crate::model::AgentId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate agent name `{0}`")]
    DuplicateName(String),

    #[error("unknown agent `{0}`")]
    UnknownAgent(String),

    #[error("incomplete preference for `{agent}`: {problem}")]
    IncompletePreference { agent: String, problem: String },

    #[error("status quo is not an involution at `{0}`")]
    StatusQuoNotInvolution(String),

    #[error("status quo pairs `{0}` with `{1}`, which are on the same side")]
    StatusQuoCrossesSides(String, String),

    #[error("{candidate} is not ranked by {agent}")]
    NotInDomain { agent: AgentId, candidate: AgentId },

    #[error("invalid match: {0}")]
    InvalidMatch(String),

    #[error("path is not complete and alternating")]
    NotCompleteAlternating,

    #[error("edge is not a loop")]
    NotALoop,

    #[error("standing worker {0} has no eligible firm to point at")]
    StandingWorkerCannotPoint(AgentId),

    #[error("instance has {agents} agents, enumeration cap is {cap}")]
    InstanceTooLarge { agents: usize, cap: usize },

    #[error("misreport search over {firms} firms exceeds the budget of {max_firms}")]
    SearchBudgetExceeded { firms: usize, max_firms: usize },

    #[error("fixture profile {profile} does not reproduce the expected core: {detail}")]
    FixtureCoreMismatch { profile: String, detail: String },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}
