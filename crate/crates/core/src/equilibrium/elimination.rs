use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::EquilibriumError;
use crate::beliefs::{count_posterior, BeliefError, CountPosterior};
use crate::model::{own_payoff, rational_serde, validate, Action, GameParams, Player, Rational};
use crate::protocol::enumerate_outcomes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelStatus {
    AForced,
    BForced,
    Unresolved,
    /// The count has probability zero for this player.
    OffPath,
}

/// Level-0 comparison under the premise that the opponent plays `A` at
/// count 0 and `B` at every positive count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseCheck {
    pub player: Player,
    #[serde(with = "rational_serde")]
    pub payoff_a: Rational,
    #[serde(with = "rational_serde")]
    pub payoff_b: Rational,
    /// `(1 - p) M / ((1 - p) + r p eps)` with `r` the chance the opponent is informed first.
    #[serde(with = "rational_serde")]
    pub a_tilde: Rational,
    /// `(-(1 - p) L + r p eps M) / ((1 - p) + r p eps)`.
    #[serde(with = "rational_serde")]
    pub b_tilde: Rational,
}

impl BaseCheck {
    pub fn holds(&self) -> bool {
        self.payoff_a >= self.a_tilde
            && self.payoff_b <= self.b_tilde
            && self.a_tilde > self.b_tilde
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub t: u32,
    pub player: Player,
    pub status: LevelStatus,
    /// Payoffs against the final worst case for `A` (unresolved opponent counts play `B`).
    #[serde(with = "rational_serde::option")]
    pub payoff_a: Option<Rational>,
    #[serde(with = "rational_serde::option")]
    pub payoff_b: Option<Rational>,
    /// Posterior probability that the opponent's count is `A`-forced.
    #[serde(with = "rational_serde::option")]
    pub opponent_a: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EliminationReport {
    pub params: GameParams,
    pub depth: u32,
    pub base: Vec<BaseCheck>,
    pub levels: Vec<LevelReport>,
    /// First count at which some player is left unresolved.
    pub stall_level: Option<u32>,
}

impl EliminationReport {
    pub fn status(&self, player: Player, t: u32) -> Option<LevelStatus> {
        self.levels
            .iter()
            .find(|l| l.player == player && l.t == t)
            .map(|l| l.status)
    }

    /// Every on-path count up to the depth is `A`-forced for both players.
    pub fn forces_a_everywhere(&self) -> bool {
        self.stall_level.is_none()
            && self
                .levels
                .iter()
                .all(|l| matches!(l.status, LevelStatus::AForced | LevelStatus::OffPath))
    }

    pub fn base_holds(&self) -> bool {
        self.base.iter().all(BaseCheck::holds)
    }
}

/// Rules for the opponent's counts, keyed by `(player, t)`.
type Resolved = BTreeMap<(Player, u32), Action>;

fn payoffs(
    params: &GameParams,
    post: &CountPosterior,
    resolved: &Resolved,
    default: Action,
) -> (Rational, Rational, Rational) {
    let opponent = post.player.other();
    let mut pay_a = Rational::zero();
    let mut pay_b = Rational::zero();
    let mut forced_a = Rational::zero();
    for (state, t_opp, q) in &post.cells {
        let other = resolved
            .get(&(opponent, *t_opp))
            .copied()
            .unwrap_or(default);
        if resolved.get(&(opponent, *t_opp)) == Some(&Action::A) {
            forced_a += q;
        }
        pay_a += q * own_payoff(*state, Action::A, other, params);
        pay_b += q * own_payoff(*state, Action::B, other, params);
    }
    (pay_a, pay_b, forced_a)
}

fn base_check(params: &GameParams, post: &CountPosterior) -> BaseCheck {
    let player = post.player;
    let mut premise = Resolved::new();
    premise.insert((player.other(), 0), Action::A);
    let (payoff_a, payoff_b, _) = payoffs(params, post, &premise, Action::B);
    let one = Rational::one();
    let stay = &one - &params.p;
    let lost = params.first_informed(player.other()) * &params.p * &params.eps;
    let denom = &stay + &lost;
    BaseCheck {
        player,
        payoff_a,
        payoff_b,
        a_tilde: &stay * &params.gain / &denom,
        b_tilde: (-(&stay * &params.loss) + &lost * &params.gain) / &denom,
    }
}

/// Iterated interim dominance in the game where each player sees only its
/// own message count.
///
/// Count 0 is resolved to `A` for both players (checked by the base bounds).
/// A count is then `A`-forced once `A` is strictly better even if every
/// unresolved opponent count plays `B`, and `B`-forced once `B` is strictly
/// better even if every unresolved count plays `A`; this repeats until
/// nothing changes.
pub fn iterated_elimination(
    params: &GameParams,
    depth: u32,
) -> Result<EliminationReport, EquilibriumError> {
    validate(params)?;
    let dist = enumerate_outcomes(params, depth.max(1) + 1)?;
    let mut posts: BTreeMap<(Player, u32), CountPosterior> = BTreeMap::new();
    for player in Player::BOTH {
        for t in 0..=depth {
            match count_posterior(&dist, player, t) {
                Ok(post) => {
                    posts.insert((player, t), post);
                }
                Err(BeliefError::ZeroProbability(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }

    let base: Vec<BaseCheck> = Player::BOTH
        .iter()
        .filter_map(|p| posts.get(&(*p, 0)))
        .map(|post| base_check(params, post))
        .collect();

    let mut resolved = Resolved::new();
    for player in Player::BOTH {
        resolved.insert((player, 0), Action::A);
    }
    loop {
        let mut changed = false;
        for (key, post) in &posts {
            if resolved.contains_key(key) {
                continue;
            }
            let (a_worst, b_worst, _) = payoffs(params, post, &resolved, Action::B);
            if a_worst > b_worst {
                resolved.insert(*key, Action::A);
                changed = true;
                continue;
            }
            let (a_best, b_best, _) = payoffs(params, post, &resolved, Action::A);
            if b_best > a_best {
                resolved.insert(*key, Action::B);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let mut levels = Vec::new();
    let mut stall_level = None;
    for t in 0..=depth {
        for player in Player::BOTH {
            let Some(post) = posts.get(&(player, t)) else {
                levels.push(LevelReport {
                    t,
                    player,
                    status: LevelStatus::OffPath,
                    payoff_a: None,
                    payoff_b: None,
                    opponent_a: None,
                });
                continue;
            };
            let status = match resolved.get(&(player, t)) {
                Some(Action::A) => LevelStatus::AForced,
                Some(Action::B) => LevelStatus::BForced,
                None => LevelStatus::Unresolved,
            };
            if status != LevelStatus::AForced && stall_level.is_none() {
                stall_level = Some(t);
            }
            let (a, b, forced) = payoffs(params, post, &resolved, Action::B);
            levels.push(LevelReport {
                t,
                player,
                status,
                payoff_a: Some(a),
                payoff_b: Some(b),
                opponent_a: Some(forced),
            });
        }
    }
    Ok(EliminationReport {
        params: params.clone(),
        depth,
        base,
        levels,
        stall_level,
    })
}
