//! Best responses, exact equilibrium certificates, iterated interim dominance,
//! closed-form threshold bounds and critical-noise search.

mod best_response;
mod bounds;
mod critical;
mod elimination;
mod verify;

pub use best_response::{
    best_response_report, interim_payoffs, resolution_bound, BestResponseReport, InfoEval, Optimal,
    TailCertificate,
};
pub use bounds::{lambda_cutoff, threshold_bounds, ThresholdBounds};
pub use critical::{critical_psi, CriticalPsiReport};
pub use elimination::{
    iterated_elimination, BaseCheck, EliminationReport, LevelReport, LevelStatus,
};
pub use verify::{
    replay_witness, verify, verify_at_depth, EquilibriumCertificate, Mode, Verdict, Witness,
    DEFAULT_DEPTH_CAP,
};

use thiserror::Error;

use crate::beliefs::BeliefError;
use crate::model::ParamError;
use crate::protocol::ProtocolError;
use crate::strategies::StrategyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquilibriumError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
    #[error(transparent)]
    Belief(#[from] BeliefError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("tail certificate needs depth {needed}, above the cap {cap}")]
    CannotCertifyTail { needed: u32, cap: u32 },
    #[error("distribution depth {depth} is below the {needed} needed to certify the tail")]
    DepthTooShallow { depth: u32, needed: u32 },
    #[error("critical-psi scan needs at least 16 grid points (got {0})")]
    ResolutionTooSmall(u32),
    #[error("no scanned psi value yields an equilibrium")]
    NoEquilibrium,
}
