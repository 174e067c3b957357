//! Interim posteriors over the opponent's information.
//!
//! Every posterior is computed from an enumerated distribution; the closed
//! forms in this module exist to cross-check the enumeration.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Action, GameParams, Player, Rational, State};
use crate::protocol::{
    signal_distribution, OutcomeDistribution, ProtocolError, SignalDistribution,
};
use crate::strategies::Strategy;

/// A player's realised `(T, Z)` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct InfoSet {
    pub player: Player,
    pub t: u32,
    pub z: u32,
}

impl InfoSet {
    pub fn new(player: Player, t: u32, z: u32) -> Self {
        InfoSet { player, t, z }
    }

    /// Largest count an atom in this information set can carry.
    pub fn required_depth(&self) -> u32 {
        self.t.max(self.z.min(self.t + 1))
    }
}

impl fmt::Display for InfoSet {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "player {} (t={}, z={})", self.player, self.t, self.z)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BeliefError {
    #[error("{0} has zero probability")]
    ZeroProbability(InfoSet),
    #[error("{info} needs enumeration depth {needed}, distribution has {depth}")]
    InsufficientDepth {
        info: InfoSet,
        needed: u32,
        depth: u32,
    },
    #[error("strategy belongs to player {found}, expected player {expected}")]
    WrongPlayer { expected: Player, found: Player },
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosteriorCell {
    pub state: State,
    pub t_opp: u32,
    pub z_opp: u32,
    pub prob: Rational,
}

/// Conditional distribution of `(state, opponent t, opponent z)` given an information set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Posterior {
    pub info: InfoSet,
    /// Unconditional probability of the information set.
    pub mass: Rational,
    pub cells: Vec<PosteriorCell>,
}

impl Posterior {
    pub fn prob_where(&self, pred: impl Fn(&PosteriorCell) -> bool) -> Rational {
        self.cells.iter().filter(|c| pred(c)).map(|c| &c.prob).sum()
    }

    pub fn prob_state(&self, state: State) -> Rational {
        self.prob_where(|c| c.state == state)
    }

    pub fn total(&self) -> Rational {
        self.cells.iter().map(|c| &c.prob).sum()
    }
}

/// Exact Bayes posterior for `info` under `dist`.
pub fn posterior(dist: &SignalDistribution, info: InfoSet) -> Result<Posterior, BeliefError> {
    let needed = info.required_depth();
    if needed > dist.depth {
        return Err(BeliefError::InsufficientDepth {
            info,
            needed,
            depth: dist.depth,
        });
    }
    let opponent = info.player.other();
    let mut grouped: BTreeMap<(State, u32, u32), Rational> = BTreeMap::new();
    for atom in dist.atoms_at(info.player, info.t, info.z) {
        let (t_opp, z_opp) = atom.info(opponent);
        *grouped
            .entry((atom.state, t_opp, z_opp))
            .or_insert_with(Rational::zero) += &atom.prob;
    }
    let mass: Rational = grouped.values().sum();
    if mass.is_zero() {
        return Err(BeliefError::ZeroProbability(info));
    }
    let cells = grouped
        .into_iter()
        .map(|((state, t_opp, z_opp), prob)| PosteriorCell {
            state,
            t_opp,
            z_opp,
            prob: prob / &mass,
        })
        .collect();
    Ok(Posterior { info, mass, cells })
}

/// Posterior over `(state, opponent count)` in the game without secondary signals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountPosterior {
    pub player: Player,
    pub t: u32,
    pub cells: Vec<(State, u32, Rational)>,
}

pub fn count_posterior(
    dist: &OutcomeDistribution,
    player: Player,
    t: u32,
) -> Result<CountPosterior, BeliefError> {
    let info = InfoSet::new(player, t, 0);
    if t + 1 > dist.depth {
        return Err(BeliefError::InsufficientDepth {
            info,
            needed: t + 1,
            depth: dist.depth,
        });
    }
    let mut grouped: BTreeMap<(State, u32), Rational> = BTreeMap::new();
    for atom in dist.atoms.iter().filter(|a| a.count(player) == t) {
        *grouped
            .entry((atom.state, atom.count(player.other())))
            .or_insert_with(Rational::zero) += &atom.prob;
    }
    let mass: Rational = grouped.values().sum();
    if mass.is_zero() {
        return Err(BeliefError::ZeroProbability(info));
    }
    let cells = grouped
        .into_iter()
        .map(|((s, t_opp), q)| (s, t_opp, q / &mass))
        .collect();
    Ok(CountPosterior { player, t, cells })
}

/// `psi / (psi + (1 - eps)/2 (1 - psi))`.
pub fn lambda_closed_form(params: &GameParams) -> Rational {
    let one = Rational::one();
    let half_keep = (&one - &params.eps) / Rational::from_integer(2.into());
    &params.psi / (&params.psi + half_keep * (&one - &params.psi))
}

/// The published value `psi / (psi + (1 - eps)(1 - psi))` for the `T2 = n + 1` case.
pub fn mu_published(params: &GameParams) -> Rational {
    let one = Rational::one();
    &params.psi / (&params.psi + (&one - &params.eps) * (&one - &params.psi))
}

/// `psi / (psi + 2 (1 - eps)(1 - psi))`, what enumeration gives at `rho = 1/2`.
pub fn mu_reconstructed(params: &GameParams) -> Rational {
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    &params.psi / (&params.psi + two * (&one - &params.eps) * (&one - &params.psi))
}

fn player_one_at_most(
    params: &GameParams,
    n: u32,
    t2: u32,
    z2: u32,
) -> Result<Rational, BeliefError> {
    let info = InfoSet::new(Player::Two, t2, z2);
    let dist = signal_distribution(params, info.required_depth().max(2))?;
    Ok(posterior(&dist, info)?.prob_where(|c| c.t_opp <= n))
}

/// `P(T1 <= n | T2 = n, Z2 = n + 1)` from enumeration.
pub fn lambda_enumerated(params: &GameParams, n: u32) -> Result<Rational, BeliefError> {
    player_one_at_most(params, n, n, n + 1)
}

/// `P(T1 <= n | T2 = n + 1, Z2 = n + 1)` from enumeration.
pub fn mu_enumerated(params: &GameParams, n: u32) -> Result<Rational, BeliefError> {
    player_one_at_most(params, n, n + 1, n + 1)
}

/// Posterior probability that the opponent plays `B`.
pub fn prob_opponent_plays(
    posterior: &Posterior,
    opponent: &Strategy,
) -> Result<Rational, BeliefError> {
    let expected = posterior.info.player.other();
    if opponent.player() != expected {
        return Err(BeliefError::WrongPlayer {
            expected,
            found: opponent.player(),
        });
    }
    Ok(posterior.prob_where(|c| opponent.action(c.t_opp, c.z_opp) == Action::B))
}
