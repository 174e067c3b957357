//! Expected welfare loss against perfect coordination.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::equilibrium::{resolution_bound, verify, EquilibriumError, Mode};
use crate::model::{
    fmt_rational, int, pow, rational_serde, validate, Action, GameParams, Rational, State,
};
use crate::protocol::signal_distribution;
use crate::strategies::{Lead, ProfileFamily, StrategyProfile};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WelfareReport {
    pub family: Option<String>,
    pub n: Option<u32>,
    /// `P(state b, both play A)`
    #[serde(with = "rational_serde")]
    pub prob_wrong_coordination: Rational,
    /// `P(state a, both play B)`
    #[serde(with = "rational_serde")]
    pub prob_wrong_state_a: Rational,
    /// `P(actions differ)`
    #[serde(with = "rational_serde")]
    pub prob_miscoordination: Rational,
    #[serde(with = "rational_serde")]
    pub prob_state_b: Rational,
    #[serde(with = "rational_serde")]
    pub prob_both_b_given_b: Rational,
    #[serde(with = "rational_serde")]
    pub loss_exact: Rational,
    #[serde(with = "rational_serde::option")]
    pub loss_closed_form: Option<Rational>,
    pub depth: u32,
}

impl WelfareReport {
    /// `2M (P(b, AA) + P(a, BB)) + (2M + L) P(miscoordination)`.
    pub fn decomposed_loss(&self, params: &GameParams) -> Rational {
        let two_m = int(2) * &params.gain;
        &two_m * (&self.prob_wrong_coordination + &self.prob_wrong_state_a)
            + (&two_m + &params.loss) * &self.prob_miscoordination
    }
}

/// Combined payoff shortfall against `2M`.
fn atom_loss(params: &GameParams, state: State, a1: Action, a2: Action) -> Rational {
    let two_m = int(2) * &params.gain;
    match (state, a1, a2) {
        (_, x, y) if x != y => two_m + &params.loss,
        (State::A, Action::A, _) | (State::B, Action::B, _) => Rational::zero(),
        _ => two_m,
    }
}

/// Exact expected loss of `profile`.
///
/// Both strategies are constant beyond their table bounds, so every outcome
/// past the enumeration depth is a state-`b` outcome played with the two tail
/// actions; the tail contributes `tail_mass * loss(tail pair)`.
pub fn loss_exact(
    params: &GameParams,
    profile: &StrategyProfile,
) -> Result<WelfareReport, EquilibriumError> {
    validate(params)?;
    let depth = resolution_bound(&profile.one, &profile.two);
    let dist = signal_distribution(params, depth)?;
    let mut wrong = Rational::zero();
    let mut wrong_a = Rational::zero();
    let mut mis = Rational::zero();
    let mut both_b = Rational::zero();
    let mut loss = Rational::zero();
    for atom in &dist.atoms {
        let a1 = profile.one.action(atom.t1, atom.z1);
        let a2 = profile.two.action(atom.t2, atom.z2);
        tally(
            atom.state,
            a1,
            a2,
            &atom.prob,
            &mut wrong,
            &mut wrong_a,
            &mut mis,
            &mut both_b,
        );
        loss += &atom.prob * atom_loss(params, atom.state, a1, a2);
    }
    let (t1, t2) = (profile.one.tail(), profile.two.tail());
    tally(
        State::B,
        t1,
        t2,
        &dist.tail_mass,
        &mut wrong,
        &mut wrong_a,
        &mut mis,
        &mut both_b,
    );
    loss += &dist.tail_mass * atom_loss(params, State::B, t1, t2);

    let family = profile.one.family().zip(profile.two.family());
    let (name, n, closed) = match family {
        Some((f1, f2)) => {
            let n = f1.cutoff().filter(|n| Some(*n) == f2.cutoff());
            let kind = match (f1.name(), f2.name()) {
                ("asym", "asym") => Some(if f1.lead() == Some(Lead::T) {
                    "asym"
                } else {
                    "mirror-asym"
                }),
                (a, b) if a == b => Some(a),
                _ => None,
            };
            let closed = match (kind, n) {
                (Some("asym") | Some("mirror-asym"), Some(n)) => {
                    Some(loss_closed_form(params, "asym", n))
                }
                (Some("sym"), Some(n)) => Some(loss_closed_form(params, "sym", n)),
                _ => None,
            };
            (kind.map(str::to_string), n, closed)
        }
        None => (None, None, None),
    };
    Ok(WelfareReport {
        family: name,
        n,
        prob_wrong_coordination: wrong,
        prob_wrong_state_a: wrong_a,
        prob_miscoordination: mis,
        prob_state_b: params.p.clone(),
        prob_both_b_given_b: both_b / &params.p,
        loss_exact: loss,
        loss_closed_form: closed,
        depth,
    })
}

#[allow(clippy::too_many_arguments)]
fn tally(
    state: State,
    a1: Action,
    a2: Action,
    prob: &Rational,
    wrong: &mut Rational,
    wrong_a: &mut Rational,
    mis: &mut Rational,
    both_b: &mut Rational,
) {
    match (state, a1, a2) {
        (_, x, y) if x != y => *mis += prob,
        (State::B, Action::A, _) => *wrong += prob,
        (State::B, Action::B, _) => *both_b += prob,
        (State::A, Action::B, _) => *wrong_a += prob,
        _ => {}
    }
}

/// Closed-form losses: `l_n` for `"asym"`, `l~_n` for `"sym"`.
///
/// # Panics
/// On any other family name.
pub fn loss_closed_form(params: &GameParams, family: &str, n: u32) -> Rational {
    closed_form(params, family, n, false)
}

/// As [`loss_closed_form`], with the `(1 - eps)^(2n) (1 - psi) / 2` term of
/// `l_n` multiplied by `eps`. At `psi = 0` this equals the exact loss.
pub fn loss_closed_form_amended(params: &GameParams, family: &str, n: u32) -> Rational {
    closed_form(params, family, n, true)
}

fn closed_form(params: &GameParams, family: &str, n: u32, amended: bool) -> Rational {
    let one = Rational::one();
    let keep = &one - &params.eps;
    let (eps, psi, p) = (&params.eps, &params.psi, &params.p);
    let two_m = int(2) * &params.gain;
    let miss = &two_m + &params.loss;
    let base = pow(&keep, 2 * (n - 1));
    match family {
        "asym" => {
            let bracket = &one - &base
                + &base * eps * (&one + (&one - psi) * &keep)
                + Rational::new(1.into(), 2.into())
                    * pow(&keep, 2 * n)
                    * (&one - psi)
                    * if amended { eps.clone() } else { one.clone() };
            p * (pow(&keep, 2 * n - 1) * eps * psi * &miss + bracket * &two_m)
        }
        "sym" => {
            let inner = eps * psi * &miss + pow(&keep, 2) * (-&one + eps * (&one - psi)) * &two_m;
            p * &base * inner + p * &two_m
        }
        other => panic!("no closed form for family {other}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub n: u32,
    pub asym: WelfareReport,
    pub sym: WelfareReport,
    /// `loss(asym) - loss(sym)`
    #[serde(with = "rational_serde")]
    pub difference: Rational,
    /// `l_n - l~_n`
    #[serde(with = "rational_serde")]
    pub closed_form_difference: Rational,
    pub asym_verified: bool,
    pub sym_verified: bool,
    /// Asymmetric loss strictly below symmetric.
    pub dominates: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WelfareComparison {
    pub params: GameParams,
    pub rows: Vec<ComparisonRow>,
}

impl WelfareComparison {
    /// Cutoffs where both profiles are equilibria yet asym does not do strictly better.
    pub fn dominance_failures(&self) -> Vec<u32> {
        self.rows
            .iter()
            .filter(|r| r.asym_verified && r.sym_verified && !r.dominates)
            .map(|r| r.n)
            .collect()
    }

    /// Columns: `n,family,prob_wrong,prob_miscoord,loss_exact,loss_paper_formula,diff`,
    /// two rows per cutoff (asym first); `diff` is `asym - sym` on both.
    pub fn to_csv(&self, decimals: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", crate::cli::params_comment(&self.params));
        out.push_str("n,family,prob_wrong,prob_miscoord,loss_exact,loss_paper_formula,diff");
        if decimals {
            out.push_str(",loss_exact_decimal");
        }
        out.push('\n');
        for row in &self.rows {
            for (name, r) in [("asym", &row.asym), ("sym", &row.sym)] {
                let closed = r
                    .loss_closed_form
                    .as_ref()
                    .map(fmt_rational)
                    .unwrap_or_default();
                let _ = write!(
                    out,
                    "{},{},{},{},{},{},{}",
                    row.n,
                    name,
                    fmt_rational(&r.prob_wrong_coordination),
                    fmt_rational(&r.prob_miscoordination),
                    fmt_rational(&r.loss_exact),
                    closed,
                    fmt_rational(&row.difference)
                );
                if decimals {
                    let _ = write!(out, ",{}", crate::model::to_decimal(&r.loss_exact, 30));
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Asymmetric (`T` lead) against symmetric losses for each cutoff.
pub fn compare(params: &GameParams, ns: &[u32]) -> Result<WelfareComparison, EquilibriumError> {
    validate(params)?;
    let rows = ns
        .par_iter()
        .map(|&n| {
            let asym_profile = ProfileFamily::Asym(Lead::T).profile(n)?;
            let sym_profile = ProfileFamily::Sym.profile(n)?;
            let asym = loss_exact(params, &asym_profile)?;
            let sym = loss_exact(params, &sym_profile)?;
            let difference = &asym.loss_exact - &sym.loss_exact;
            let closed_form_difference =
                loss_closed_form(params, "asym", n) - loss_closed_form(params, "sym", n);
            Ok(ComparisonRow {
                n,
                asym_verified: verify(params, &asym_profile, Mode::Weak)?.is_equilibrium(),
                sym_verified: verify(params, &sym_profile, Mode::Weak)?.is_equilibrium(),
                dominates: difference < Rational::zero(),
                asym,
                sym,
                difference,
                closed_form_difference,
            })
        })
        .collect::<Result<Vec<_>, EquilibriumError>>()?;
    Ok(WelfareComparison {
        params: params.clone(),
        rows,
    })
}
