use num_traits::{One, Zero};
use serde::Serialize;

use crate::model::{rational_serde, GameParams, Rational};

/// Closed-form sufficiency bounds on the secondary-signal noise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdBounds {
    /// `L / (L + M)`
    #[serde(with = "rational_serde")]
    pub psi1: Rational,
    /// `(1 - eps) M / (2L - (1 - eps) M)`
    #[serde(with = "rational_serde")]
    pub psi2: Rational,
    /// `(1 - eps) M / (L + (1 - eps) M)`
    #[serde(with = "rational_serde")]
    pub psi3: Rational,
    /// `M / (L + M)`, used when player 1 is always informed first.
    #[serde(with = "rational_serde")]
    pub psibar2: Rational,
}

impl ThresholdBounds {
    pub fn evaluate(loss: &Rational, gain: &Rational, eps: &Rational) -> Self {
        let kept = (Rational::one() - eps) * gain;
        let two_l = loss * Rational::from_integer(2.into());
        ThresholdBounds {
            psi1: loss / (loss + gain),
            psi2: &kept / (two_l - &kept),
            psi3: &kept / (loss + &kept),
            psibar2: gain / (loss + gain),
        }
    }

    /// The same formulas at `eps = 0`.
    pub fn noiseless_limit(loss: &Rational, gain: &Rational) -> Self {
        Self::evaluate(loss, gain, &Rational::zero())
    }

    /// `min(psi1, psi2)`, the asymmetric sufficiency region.
    pub fn asymmetric(&self) -> Rational {
        self.psi1.clone().min(self.psi2.clone())
    }
}

pub fn threshold_bounds(params: &GameParams) -> ThresholdBounds {
    ThresholdBounds::evaluate(&params.loss, &params.gain, &params.eps)
}

/// Largest noise at which a player who holds `(n, n + 1)` against a `T`-lead
/// partner still weakly prefers `B`: `(1 - eps) M / (2L + (1 - eps) M)`.
pub fn lambda_cutoff(params: &GameParams) -> Rational {
    let kept = (Rational::one() - &params.eps) * &params.gain;
    let two_l = &params.loss * Rational::from_integer(2.into());
    &kept / (two_l + &kept)
}
