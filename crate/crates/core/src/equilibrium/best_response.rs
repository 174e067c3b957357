use num_traits::Zero;

use super::EquilibriumError;
use crate::beliefs::{posterior, BeliefError, InfoSet, Posterior};
use crate::model::{own_payoff, Action, GameParams, Rational, State};
use crate::protocol::SignalDistribution;
use crate::strategies::Strategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Optimal {
    A,
    B,
    Both,
}

impl Optimal {
    pub fn contains(self, action: Action) -> bool {
        matches!(
            (self, action),
            (Optimal::Both, _) | (Optimal::A, Action::A) | (Optimal::B, Action::B)
        )
    }
}

/// Interim comparison at one positive-probability information set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfoEval {
    pub info: InfoSet,
    /// Unconditional probability of the information set.
    pub mass: Rational,
    pub payoff_a: Rational,
    pub payoff_b: Rational,
    pub prescribed: Action,
    pub optimal: Optimal,
    /// `payoff(prescribed) - payoff(other action)`.
    pub slack: Rational,
    pub opponent_b: Rational,
    /// Set when the opponent's action is the same on the whole posterior support.
    pub opponent_sure: Option<Action>,
}

/// Resolution of every information set with `max(t, z)` beyond the explicit box.
///
/// Those sets have `t >= bound - 1 >= 2`, so the state is `b`, and the
/// opponent's count exceeds its own table bound, so both players follow
/// their tail actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailCertificate {
    pub resolution_bound: u32,
    pub own_tail: Action,
    pub opponent_tail: Action,
    pub payoff_a: Rational,
    pub payoff_b: Rational,
    pub slack: Rational,
    /// A positive-probability member of the tail region.
    pub representative: InfoSet,
}

impl TailCertificate {
    pub fn describe(&self) -> String {
        format!(
            "max(t, z) > {}: state b certain, opponent plays tail {}, prescribed {} (slack {})",
            self.resolution_bound, self.opponent_tail, self.own_tail, self.slack
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponseReport {
    pub player: crate::model::Player,
    pub evaluations: Vec<InfoEval>,
    pub off_path: Vec<InfoSet>,
    pub tail: TailCertificate,
}

/// Smallest box `max(t, z) <= R` outside of which both strategies sit in their tails.
pub fn resolution_bound(own: &Strategy, opponent: &Strategy) -> u32 {
    own.bound().max(opponent.bound()) + 3
}

fn evaluate(
    params: &GameParams,
    post: &Posterior,
    opponent: &Strategy,
) -> (Rational, Rational, Rational) {
    let mut pay_a = Rational::zero();
    let mut pay_b = Rational::zero();
    let mut opp_b = Rational::zero();
    for cell in &post.cells {
        let other = opponent.action(cell.t_opp, cell.z_opp);
        if other == Action::B {
            opp_b += &cell.prob;
        }
        pay_a += &cell.prob * own_payoff(cell.state, Action::A, other, params);
        pay_b += &cell.prob * own_payoff(cell.state, Action::B, other, params);
    }
    (pay_a, pay_b, opp_b)
}

/// Expected payoffs of `A` and `B` at `info` against `opponent`.
pub fn interim_payoffs(
    params: &GameParams,
    dist: &SignalDistribution,
    info: InfoSet,
    opponent: &Strategy,
) -> Result<(Rational, Rational), BeliefError> {
    let post = posterior(dist, info)?;
    let (a, b, _) = evaluate(params, &post, opponent);
    Ok((a, b))
}

fn compare(prescribed: Action, pay_a: &Rational, pay_b: &Rational) -> (Optimal, Rational) {
    let optimal = match pay_a.cmp(pay_b) {
        std::cmp::Ordering::Greater => Optimal::A,
        std::cmp::Ordering::Less => Optimal::B,
        std::cmp::Ordering::Equal => Optimal::Both,
    };
    let slack = match prescribed {
        Action::A => pay_a - pay_b,
        Action::B => pay_b - pay_a,
    };
    (optimal, slack)
}

/// Interim payoff comparison for every information set of `own.player()` in
/// the box `max(t, z) <= dist.depth - 1`, plus a symbolic tail certificate.
pub fn best_response_report(
    params: &GameParams,
    dist: &SignalDistribution,
    own: &Strategy,
    opponent: &Strategy,
) -> Result<BestResponseReport, EquilibriumError> {
    let player = own.player();
    if opponent.player() != player.other() {
        return Err(BeliefError::WrongPlayer {
            expected: player.other(),
            found: opponent.player(),
        }
        .into());
    }
    let needed = resolution_bound(own, opponent) + 1;
    if dist.depth < needed {
        return Err(EquilibriumError::DepthTooShallow {
            depth: dist.depth,
            needed,
        });
    }
    let bound = dist.depth - 1;

    let mut evaluations = Vec::new();
    let mut off_path = Vec::new();
    for t in 0..=bound {
        for z in 0..=bound {
            let info = InfoSet::new(player, t, z);
            let post = match posterior(dist, info) {
                Ok(post) => post,
                Err(BeliefError::ZeroProbability(_)) => {
                    off_path.push(info);
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            let (payoff_a, payoff_b, opponent_b) = evaluate(params, &post, opponent);
            let prescribed = own.action(t, z);
            let (optimal, slack) = compare(prescribed, &payoff_a, &payoff_b);
            let opponent_sure = if opponent_b.is_zero() {
                Some(Action::A)
            } else if post
                .cells
                .iter()
                .all(|c| opponent.action(c.t_opp, c.z_opp) == Action::B)
            {
                Some(Action::B)
            } else {
                None
            };
            evaluations.push(InfoEval {
                info,
                mass: post.mass,
                payoff_a,
                payoff_b,
                prescribed,
                optimal,
                slack,
                opponent_b,
                opponent_sure,
            });
        }
    }

    let opponent_tail = opponent.tail();
    let payoff_a = own_payoff(State::B, Action::A, opponent_tail, params);
    let payoff_b = own_payoff(State::B, Action::B, opponent_tail, params);
    let (_, slack) = compare(own.tail(), &payoff_a, &payoff_b);
    let tail = TailCertificate {
        resolution_bound: bound,
        own_tail: own.tail(),
        opponent_tail,
        payoff_a,
        payoff_b,
        slack,
        representative: InfoSet::new(player, bound + 1, bound + 1),
    };
    Ok(BestResponseReport {
        player,
        evaluations,
        off_path,
        tail,
    })
}
