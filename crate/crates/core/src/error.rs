use thiserror::Error;

use crate::branch::BranchViolation;
use crate::resolving::ClosureViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid registry: {0}")]
    InvalidRegistry(String),
    #[error("unknown tube `{0}`")]
    UnknownTube(String),
    #[error("registry has no unnamed homogeneous rest")]
    RestFlagMismatch,
    #[error("invalid tube id `{0}`")]
    InvalidTubeId(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("length {len} is not below rank {rank}")]
    LengthBound { len: u32, rank: u32 },
    #[error("rank {rank} exceeds the bound {max}")]
    RankBound { rank: u32, max: u32 },
    #[error("length {len} exceeds the oracle bound {max}")]
    OracleLength { len: u32, max: u32 },
    #[error("not exceptional: {0}")]
    NotExceptional(String),
    #[error("not a branch module: {0}")]
    NotBranch(BranchViolation),
    #[error("filter not closed: {0}")]
    Closure(ClosureViolation),
    #[error("registries differ")]
    RegistryMismatch,
    #[error("not a union of segments and cliques: {0}")]
    SegmentShape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage: {0}")]
    Usage(String),
}

impl Error {
    /// Stable identifier of the violated invariant.
    pub fn check_id(&self) -> &'static str {
        match self {
            Error::UnknownPreset(_) => "registry.preset",
            Error::InvalidRegistry(_) => "registry.invariants",
            Error::UnknownTube(_) => "registry.tube_id",
            Error::RestFlagMismatch => "registry.rest_flag",
            Error::InvalidTubeId(_) => "registry.tube_id_syntax",
            Error::Unsupported(_) => "tube.unsupported",
            Error::LengthBound { .. } => "tube.length_bound",
            Error::RankBound { .. } => "oracle.rank_bound",
            Error::OracleLength { .. } => "oracle.length_bound",
            Error::NotExceptional(_) => "branch.exceptional",
            Error::NotBranch(v) => v.check_id(),
            Error::Closure(v) => v.check_id(),
            Error::RegistryMismatch => "classify.registry_mismatch",
            Error::SegmentShape(_) => "localize.segment_shape",
            Error::Parse(_) => "cli.parse",
            Error::Usage(_) => "cli.usage",
        }
    }

    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse(_) | Error::Usage(_) | Error::UnknownPreset(_)
        )
    }
}
