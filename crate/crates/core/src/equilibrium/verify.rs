use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::best_response::{
    best_response_report, interim_payoffs, resolution_bound, BestResponseReport,
};
use super::EquilibriumError;
use crate::beliefs::InfoSet;
use crate::model::{fmt_rational, validate, Action, GameParams, Player, Rational};
use crate::protocol::signal_distribution;
use crate::strategies::StrategyProfile;

/// Largest enumeration depth `verify` will grow to.
pub const DEFAULT_DEPTH_CAP: u32 = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// No strictly profitable deviation; ties allowed.
    Weak,
    /// Prescribed action uniquely optimal everywhere on path.
    Strict,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(match self {
            Mode::Weak => "weak",
            Mode::Strict => "strict",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "equilibrium")]
    Equilibrium,
    #[serde(rename = "not-equilibrium")]
    NotEquilibrium,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(match self {
            Verdict::Equilibrium => "equilibrium",
            Verdict::NotEquilibrium => "not-equilibrium",
        })
    }
}

/// A strictly profitable deviation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub info: InfoSet,
    pub prescribed: Action,
    pub deviation: Action,
    pub gain: Rational,
    /// The opponent's action is constant on the whole posterior support, so
    /// the deviation pays for every value of the noise parameters.
    pub sure: bool,
    pub in_tail: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquilibriumCertificate {
    pub verdict: Verdict,
    pub mode: Mode,
    pub depth: u32,
    pub resolution_bound: u32,
    /// Information set with the smallest slack.
    pub binding: InfoSet,
    pub min_slack: Rational,
    /// Primary refutation witness; see [`EquilibriumCertificate::witnesses`].
    pub witness: Option<Witness>,
    pub witnesses: Vec<Witness>,
    /// On-path sets where both actions pay the same.
    pub indifferent: Vec<InfoSet>,
    pub off_path: Vec<InfoSet>,
    pub tail: [String; 2],
    pub reports: [BestResponseReport; 2],
}

impl EquilibriumCertificate {
    pub fn is_equilibrium(&self) -> bool {
        self.verdict == Verdict::Equilibrium
    }

    pub fn to_json(&self, params: &GameParams) -> serde_json::Value {
        let info_json =
            |i: &InfoSet| serde_json::json!({"player": i.player.id(), "t": i.t, "z": i.z});
        let witness_json = |w: &Witness| {
            serde_json::json!({
                "info_set": info_json(&w.info),
                "prescribed": w.prescribed.to_string(),
                "deviation": w.deviation.to_string(),
                "gain": fmt_rational(&w.gain),
                "sure": w.sure,
                "in_tail": w.in_tail,
            })
        };
        let mut value = serde_json::json!({
            "verdict": self.verdict,
            "mode": self.mode,
            "depth": self.depth,
            "binding_info_set": info_json(&self.binding),
            "min_slack": fmt_rational(&self.min_slack),
            "params": params,
            "resolution_bound": self.resolution_bound,
            "indifferent": self.indifferent.iter().map(info_json).collect::<Vec<_>>(),
            "off_path_count": self.off_path.len(),
            "tail": self.tail,
        });
        if let Some(w) = &self.witness {
            value["witness"] = witness_json(w);
            value["witnesses"] = self
                .witnesses
                .iter()
                .map(witness_json)
                .collect::<Vec<_>>()
                .into();
        }
        value
    }
}

/// Verifies `profile` with the enumeration depth chosen automatically.
pub fn verify(
    params: &GameParams,
    profile: &StrategyProfile,
    mode: Mode,
) -> Result<EquilibriumCertificate, EquilibriumError> {
    let needed = resolution_bound(&profile.one, &profile.two) + 1;
    if needed > DEFAULT_DEPTH_CAP {
        return Err(EquilibriumError::CannotCertifyTail {
            needed,
            cap: DEFAULT_DEPTH_CAP,
        });
    }
    verify_at_depth(params, profile, mode, needed)
}

/// Verifies with an explicit depth; information sets with `max(t, z) < depth`
/// are checked one by one and the rest through the tail certificate.
pub fn verify_at_depth(
    params: &GameParams,
    profile: &StrategyProfile,
    mode: Mode,
    depth: u32,
) -> Result<EquilibriumCertificate, EquilibriumError> {
    validate(params)?;
    let dist = signal_distribution(params, depth)?;
    let reports = [
        best_response_report(params, &dist, &profile.one, &profile.two)?,
        best_response_report(params, &dist, &profile.two, &profile.one)?,
    ];

    let mut witnesses = Vec::new();
    let mut indifferent = Vec::new();
    let mut off_path = Vec::new();
    let mut binding: Option<(InfoSet, Rational)> = None;
    let consider = |info: InfoSet, slack: &Rational, binding: &mut Option<(InfoSet, Rational)>| {
        if binding.as_ref().is_none_or(|(_, s)| slack < s) {
            *binding = Some((info, slack.clone()));
        }
    };
    for report in &reports {
        for eval in &report.evaluations {
            consider(eval.info, &eval.slack, &mut binding);
            if eval.slack.is_zero() {
                indifferent.push(eval.info);
            } else if eval.slack.is_negative() {
                witnesses.push(Witness {
                    info: eval.info,
                    prescribed: eval.prescribed,
                    deviation: eval.prescribed.other(),
                    gain: -eval.slack.clone(),
                    sure: eval.opponent_sure.is_some(),
                    in_tail: false,
                });
            }
        }
        let tail = &report.tail;
        consider(tail.representative, &tail.slack, &mut binding);
        if tail.slack.is_zero() {
            indifferent.push(tail.representative);
        } else if tail.slack.is_negative() {
            witnesses.push(Witness {
                info: tail.representative,
                prescribed: tail.own_tail,
                deviation: tail.own_tail.other(),
                gain: -tail.slack.clone(),
                sure: true,
                in_tail: true,
            });
        }
        off_path.extend(report.off_path.iter().copied());
    }

    let failed = !witnesses.is_empty() || (mode == Mode::Strict && !indifferent.is_empty());
    let verdict = if failed {
        Verdict::NotEquilibrium
    } else {
        Verdict::Equilibrium
    };
    let witness = primary_witness(&witnesses);
    let (binding, min_slack) = binding.expect("at least one information set is on path");
    let tail = [reports[0].tail.describe(), reports[1].tail.describe()];
    Ok(EquilibriumCertificate {
        verdict,
        mode,
        depth,
        resolution_bound: depth - 1,
        binding,
        min_slack,
        witness,
        witnesses,
        indifferent,
        off_path,
        tail,
        reports,
    })
}

/// Sure deviations first (lowest player, then lowest `(t, z)`), else the largest gain.
fn primary_witness(witnesses: &[Witness]) -> Option<Witness> {
    let key = |w: &Witness| (w.info.player, w.info.t, w.info.z);
    if let Some(sure) = witnesses.iter().filter(|w| w.sure).min_by_key(|w| key(w)) {
        return Some(sure.clone());
    }
    witnesses
        .iter()
        .max_by(|a, b| a.gain.cmp(&b.gain).then_with(|| key(b).cmp(&key(a))))
        .cloned()
}

/// Applies the witness deviation and returns the deviator's payoff change at
/// the witness information set, recomputed from scratch.
pub fn replay_witness(
    params: &GameParams,
    profile: &StrategyProfile,
    witness: &Witness,
) -> Result<Rational, EquilibriumError> {
    let player = witness.info.player;
    let original = profile.get(player);
    let opponent = profile.get(player.other());
    let (t, z) = (witness.info.t, witness.info.z);
    let deviated = original.with_action(t, z, witness.deviation);
    let depth = witness.info.required_depth().max(2);
    let dist = signal_distribution(params, depth)?;
    let (pay_a, pay_b) = interim_payoffs(params, &dist, witness.info, opponent)?;
    let pay = |a: Action| {
        if a == Action::A {
            pay_a.clone()
        } else {
            pay_b.clone()
        }
    };
    Ok(pay(deviated.action(t, z)) - pay(original.action(t, z)))
}

impl Witness {
    pub fn player(&self) -> Player {
        self.info.player
    }
}
