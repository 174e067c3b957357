//! Exact equilibrium verification and simulation for the electronic mail game
//! with primary signals (message counts) and secondary signals (noisy readings
//! of the opponent's count).
//!
//! All probabilities and payoffs are exact rationals. The infinite signal
//! lattice is handled by enumerating the protocol up to a finite depth and
//! closing the remainder with support arguments, so equilibrium verdicts are
//! exact rather than numerical.

pub mod beliefs;
pub mod cli;
pub mod equilibrium;
pub mod model;
pub mod montecarlo;
pub mod protocol;
pub mod strategies;
pub mod welfare;

pub use model::{payoff, validate, Action, GameParams, ParamError, Player, Rational, State};
