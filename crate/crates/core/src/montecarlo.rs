//! Seeded simulation of the message protocol, used as a statistical check on
//! the exact engine.
//!
//! Samples are split into batches of [`BATCH`]; batch `k` draws from a
//! ChaCha8 generator seeded with the master seed on stream `k`. Batches run in
//! parallel and only add integer counters, so the result does not depend on
//! the thread count.

use num_traits::ToPrimitive;
use rand::distr::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::model::{
    int, payoff, validate, Action, GameParams, ParamError, Player, Rational, State,
};
use crate::strategies::StrategyProfile;
use crate::welfare::WelfareReport;

pub const BATCH: u64 = 1 << 14;
/// Message rounds after which a sample is abandoned.
pub const ROUND_CAP: u32 = 1_000_000;

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub samples: u64,
    pub seed: u64,
    pub params: GameParams,
    pub profile: StrategyProfile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellCount {
    pub state: State,
    pub action1: Action,
    pub action2: Action,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    pub seed: u64,
    pub samples: u64,
    /// Samples dropped at the round cap; excluded from every statistic.
    pub aborted: u64,
    pub params: GameParams,
    pub cells: Vec<CellCount>,
    pub frequencies: Vec<f64>,
    pub prob_state_b: f64,
    pub se_prob_state_b: f64,
    pub prob_both_b_given_b: f64,
    pub se_prob_both_b_given_b: f64,
    pub mean_total_payoff: f64,
    pub mean_loss: f64,
    pub se_mean_loss: f64,
}

impl SimResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result serializes")
    }

    fn completed(&self) -> u64 {
        self.samples - self.aborted
    }
}

const CELLS: [(State, Action, Action); 8] = [
    (State::A, Action::A, Action::A),
    (State::A, Action::A, Action::B),
    (State::A, Action::B, Action::A),
    (State::A, Action::B, Action::B),
    (State::B, Action::A, Action::A),
    (State::B, Action::A, Action::B),
    (State::B, Action::B, Action::A),
    (State::B, Action::B, Action::B),
];

fn cell_index(state: State, a1: Action, a2: Action) -> usize {
    let bit = |a: Action| usize::from(a == Action::B);
    usize::from(state == State::B) * 4 + bit(a1) * 2 + bit(a2)
}

fn bernoulli(r: &Rational) -> Bernoulli {
    Bernoulli::new(r.to_f64().expect("probability is finite")).expect("probability lies in [0, 1]")
}

struct Draws {
    state_b: Bernoulli,
    one_first: Bernoulli,
    lost: Bernoulli,
    noisy: Bernoulli,
}

/// Counts for one sample, or `None` when the round cap is hit.
fn draw_one(rng: &mut ChaCha8Rng, d: &Draws, profile: &StrategyProfile) -> Option<usize> {
    let (state, t1, t2) = if d.state_b.sample(rng) {
        let first = if d.one_first.sample(rng) {
            Player::One
        } else {
            Player::Two
        };
        // the notice from nature counts as the first message
        let mut counts = [0u32; 2];
        counts[first.id() as usize - 1] = 1;
        let mut receiver = first.other();
        let mut rounds = 0;
        while !d.lost.sample(rng) {
            counts[receiver.id() as usize - 1] += 1;
            receiver = receiver.other();
            rounds += 1;
            if rounds >= ROUND_CAP {
                return None;
            }
        }
        (State::B, counts[0], counts[1])
    } else {
        (State::A, 0, 0)
    };
    let z1 = t2 + u32::from(d.noisy.sample(rng));
    let z2 = t1 + u32::from(d.noisy.sample(rng));
    let a1 = profile.one.action(t1, z1);
    let a2 = profile.two.action(t2, z2);
    Some(cell_index(state, a1, a2))
}

pub fn simulate(config: &SimConfig) -> Result<SimResult, ParamError> {
    validate(&config.params)?;
    let params = &config.params;
    let draws = Draws {
        state_b: bernoulli(&params.p),
        one_first: bernoulli(&params.rho),
        lost: bernoulli(&params.eps),
        noisy: bernoulli(&params.psi),
    };
    let batches = config.samples.div_ceil(BATCH);
    let (counts, aborted) = (0..batches)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(k);
            let size = BATCH.min(config.samples - k * BATCH);
            let mut counts = [0u64; 8];
            let mut aborted = 0u64;
            for _ in 0..size {
                match draw_one(&mut rng, &draws, &config.profile) {
                    Some(i) => counts[i] += 1,
                    None => aborted += 1,
                }
            }
            (counts, aborted)
        })
        .reduce(
            || ([0u64; 8], 0u64),
            |(mut a, x), (b, y)| {
                for (l, r) in a.iter_mut().zip(b) {
                    *l += r;
                }
                (a, x + y)
            },
        );
    Ok(summarize(config, counts, aborted))
}

fn summarize(config: &SimConfig, counts: [u64; 8], aborted: u64) -> SimResult {
    let params = &config.params;
    let n = (config.samples - aborted) as f64;
    let two_m = int(2) * &params.gain;
    let f = |r: Rational| r.to_f64().expect("finite");
    let mut total = 0.0;
    let mut loss = 0.0;
    let mut loss_sq = 0.0;
    let mut n_b = 0u64;
    for (i, &(state, a1, a2)) in CELLS.iter().enumerate() {
        let (u1, u2) = payoff(state, a1, a2, params);
        let sum = u1 + u2;
        let shortfall = f(&two_m - &sum);
        let c = counts[i] as f64;
        total += c * f(sum);
        loss += c * shortfall;
        loss_sq += c * shortfall * shortfall;
        if state == State::B {
            n_b += counts[i];
        }
    }
    let both_b = counts[cell_index(State::B, Action::B, Action::B)] as f64;
    let mean_loss = loss / n;
    let var_loss = (loss_sq / n - mean_loss * mean_loss).max(0.0);
    let pb = n_b as f64 / n;
    let q = if n_b > 0 { both_b / n_b as f64 } else { 0.0 };
    SimResult {
        seed: config.seed,
        samples: config.samples,
        aborted,
        params: params.clone(),
        cells: CELLS
            .iter()
            .zip(counts)
            .map(|(&(state, action1, action2), count)| CellCount {
                state,
                action1,
                action2,
                count,
            })
            .collect(),
        frequencies: counts.iter().map(|&c| c as f64 / n).collect(),
        prob_state_b: pb,
        se_prob_state_b: (pb * (1.0 - pb) / n).sqrt(),
        prob_both_b_given_b: q,
        se_prob_both_b_given_b: if n_b > 0 {
            (q * (1.0 - q) / n_b as f64).sqrt()
        } else {
            0.0
        },
        mean_total_payoff: total / n,
        mean_loss,
        se_mean_loss: (var_loss / n).sqrt(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Statistic {
    pub name: String,
    pub empirical: f64,
    pub exact: f64,
    pub std_error: f64,
    pub z: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub sigma: f64,
    pub statistics: Vec<Statistic>,
    pub pass: bool,
}

fn statistic(
    name: &str,
    empirical: f64,
    exact: &Rational,
    std_error: f64,
    sigma: f64,
) -> Statistic {
    let exact = exact.to_f64().expect("finite");
    let gap = empirical - exact;
    let z = if std_error > 0.0 {
        gap / std_error
    } else if gap.abs() < 1e-12 {
        0.0
    } else {
        f64::INFINITY.copysign(gap)
    };
    Statistic {
        name: name.to_string(),
        empirical,
        exact,
        std_error,
        z,
        pass: z.abs() < sigma,
    }
}

/// Compares the simulation with the exact report at a `sigma` standard-error band.
pub fn convergence_check(
    result: &SimResult,
    exact: &WelfareReport,
    sigma: f64,
) -> ConvergenceReport {
    let statistics = vec![
        statistic(
            "prob_state_b",
            result.prob_state_b,
            &exact.prob_state_b,
            result.se_prob_state_b,
            sigma,
        ),
        statistic(
            "prob_both_b_given_b",
            result.prob_both_b_given_b,
            &exact.prob_both_b_given_b,
            result.se_prob_both_b_given_b,
            sigma,
        ),
        statistic(
            "mean_loss",
            result.mean_loss,
            &exact.loss_exact,
            result.se_mean_loss,
            sigma,
        ),
    ];
    let pass = result.completed() > 0 && statistics.iter().all(|s| s.pass);
    ConvergenceReport {
        sigma,
        statistics,
        pass,
    }
}
