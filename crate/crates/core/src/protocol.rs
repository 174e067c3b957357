//! Exact enumeration of the message protocol and of the secondary signals.
//!
//! In state `b` the first-informed player counts nature's notice as its first
//! received message, then the two players alternate confirmations, each lost
//! independently with probability `eps`. Counts therefore end either equal or
//! with the first-informed player one ahead.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::model::{fmt_rational, pow, GameParams, Player, Rational, State};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProtocolError {
    #[error("enumeration depth must be at least 2 (got {0})")]
    DepthTooSmall(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeAtom {
    pub state: State,
    pub first: Option<Player>,
    pub t1: u32,
    pub t2: u32,
    pub prob: Rational,
}

impl OutcomeAtom {
    pub fn count(&self, player: Player) -> u32 {
        match player {
            Player::One => self.t1,
            Player::Two => self.t2,
        }
    }
}

/// Protocol outcomes with `max(t1, t2) <= depth`, plus the exact mass beyond.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeDistribution {
    pub atoms: Vec<OutcomeAtom>,
    pub depth: u32,
    pub tail_mass: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalAtom {
    pub state: State,
    pub first: Option<Player>,
    pub t1: u32,
    pub t2: u32,
    /// Player 1's noisy reading of `t2`.
    pub z1: u32,
    /// Player 2's noisy reading of `t1`.
    pub z2: u32,
    pub prob: Rational,
}

impl SignalAtom {
    /// `(t, z)` as observed by `player`.
    pub fn info(&self, player: Player) -> (u32, u32) {
        match player {
            Player::One => (self.t1, self.z1),
            Player::Two => (self.t2, self.z2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignalDistribution {
    pub atoms: Vec<SignalAtom>,
    pub depth: u32,
    pub tail_mass: Rational,
}

impl OutcomeDistribution {
    pub fn atom_mass(&self) -> Rational {
        self.atoms.iter().map(|a| &a.prob).sum()
    }
}

impl SignalDistribution {
    pub fn atom_mass(&self) -> Rational {
        self.atoms.iter().map(|a| &a.prob).sum()
    }

    /// Atoms consistent with `player` observing `(t, z)`.
    pub fn atoms_at(&self, player: Player, t: u32, z: u32) -> impl Iterator<Item = &SignalAtom> {
        self.atoms.iter().filter(move |a| a.info(player) == (t, z))
    }

    /// CSV dump in canonical atom order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("state,first,t1,t2,z1,z2,prob\n");
        for atom in &self.atoms {
            let first = atom.first.map_or("-".to_string(), |p| p.to_string());
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                atom.state,
                first,
                atom.t1,
                atom.t2,
                atom.z1,
                atom.z2,
                fmt_rational(&atom.prob)
            );
        }
        out
    }
}

/// Probability that `max(T1, T2) > depth`: `p (1 - eps)^(2 depth)`.
pub fn tail_mass(params: &GameParams, depth: u32) -> Rational {
    let keep = Rational::one() - &params.eps;
    &params.p * pow(&keep, 2 * depth)
}

/// Enumerates every protocol outcome with `max(t1, t2) <= depth`.
///
/// Atom order: the state-`a` atom, then state `b` by first-informed player
/// (1 before 2), by the leader's count `t`, with `(t, t - 1)` before `(t, t)`.
/// Outcomes of zero probability (e.g. player 2 first when `rho = 1`) are omitted.
pub fn enumerate_outcomes(
    params: &GameParams,
    depth: u32,
) -> Result<OutcomeDistribution, ProtocolError> {
    if depth < 2 {
        return Err(ProtocolError::DepthTooSmall(depth));
    }
    let keep = Rational::one() - &params.eps;
    let mut atoms = Vec::with_capacity(1 + 4 * depth as usize);
    atoms.push(OutcomeAtom {
        state: State::A,
        first: None,
        t1: 0,
        t2: 0,
        prob: Rational::one() - &params.p,
    });
    for first in Player::BOTH {
        let weight = &params.p * params.first_informed(first);
        if weight.is_zero() {
            continue;
        }
        // (1 - eps)^(2t - 2) for the current t
        let mut reach = Rational::one();
        for t in 1..=depth {
            let behind = &weight * &reach * &params.eps;
            let even = &weight * &reach * &keep * &params.eps;
            for (lead, other, prob) in [(t, t - 1, behind), (t, t, even)] {
                let (t1, t2) = match first {
                    Player::One => (lead, other),
                    Player::Two => (other, lead),
                };
                atoms.push(OutcomeAtom {
                    state: State::B,
                    first: Some(first),
                    t1,
                    t2,
                    prob,
                });
            }
            reach = reach * &keep * &keep;
        }
    }
    Ok(OutcomeDistribution {
        atoms,
        depth,
        tail_mass: tail_mass(params, depth),
    })
}

/// Splits every outcome into its secondary-signal realisations.
///
/// Split order per atom: `(z1, z2) = (t2, t1), (t2, t1 + 1), (t2 + 1, t1), (t2 + 1, t1 + 1)`;
/// zero-weight splits are dropped.
pub fn attach_signals(dist: &OutcomeDistribution, psi: &Rational) -> SignalDistribution {
    let exact = Rational::one() - psi;
    let weights = [(0u32, exact.clone()), (1u32, psi.clone())];
    let mut atoms = Vec::with_capacity(dist.atoms.len() * 4);
    for outcome in &dist.atoms {
        for (shift1, w1) in &weights {
            for (shift2, w2) in &weights {
                let weight = w1 * w2;
                if weight.is_zero() {
                    continue;
                }
                atoms.push(SignalAtom {
                    state: outcome.state,
                    first: outcome.first,
                    t1: outcome.t1,
                    t2: outcome.t2,
                    z1: outcome.t2 + shift1,
                    z2: outcome.t1 + shift2,
                    prob: &outcome.prob * weight,
                });
            }
        }
    }
    SignalDistribution {
        atoms,
        depth: dist.depth,
        tail_mass: dist.tail_mass.clone(),
    }
}

pub fn signal_distribution(
    params: &GameParams,
    depth: u32,
) -> Result<SignalDistribution, ProtocolError> {
    Ok(attach_signals(
        &enumerate_outcomes(params, depth)?,
        &params.psi,
    ))
}

/// What a player observing `(t, z)` can be sure of, independent of any truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    /// Feasible `(state, opponent count)` pairs; empty when `(t, z)` cannot occur.
    pub cells: Vec<(State, u32)>,
    /// Feasible values of the opponent's secondary signal.
    pub opponent_z: Vec<u32>,
}

impl Support {
    pub fn is_feasible(&self) -> bool {
        !self.cells.is_empty()
    }

    pub fn opponent_t(&self) -> impl Iterator<Item = u32> + '_ {
        self.cells.iter().map(|&(_, t)| t)
    }

    pub fn state_b_certain(&self) -> bool {
        self.is_feasible() && self.cells.iter().all(|&(s, _)| s == State::B)
    }

    /// Every feasible `(state, opponent t, opponent z)` triple.
    pub fn triples(&self) -> Vec<(State, u32, u32)> {
        let mut out = Vec::new();
        for &(state, t_opp) in &self.cells {
            for &z_opp in &self.opponent_z {
                out.push((state, t_opp, z_opp));
            }
        }
        out
    }
}

/// Exact support of the opponent's information given `player` observes `(t, z)`.
///
/// Uses only the structure of the protocol: `|t1 - t2| <= 1`, the leader is
/// the first-informed player, and `z` equals the opponent's count or one more.
pub fn support_bounds(params: &GameParams, player: Player, t: u32, z: u32) -> Support {
    let own_first = !params.first_informed(player).is_zero();
    let opp_first = !params.first_informed(player.other()).is_zero();
    let noisy = !params.psi.is_zero();

    let mut by_count: Vec<(State, u32)> = Vec::new();
    if t == 0 {
        by_count.push((State::A, 0));
        if opp_first {
            by_count.push((State::B, 1));
        }
    } else {
        if own_first {
            by_count.push((State::B, t - 1));
        }
        by_count.push((State::B, t));
        if opp_first {
            by_count.push((State::B, t + 1));
        }
    }
    let cells: Vec<(State, u32)> = by_count
        .into_iter()
        .filter(|&(_, t_opp)| t_opp == z || (noisy && t_opp + 1 == z))
        .collect();
    let opponent_z = if cells.is_empty() {
        Vec::new()
    } else if noisy {
        vec![t, t + 1]
    } else {
        vec![t]
    };
    Support { cells, opponent_z }
}
