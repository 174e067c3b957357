//! Model primitives: exact parameters, states, actions and the two payoff
//! matrices of the symmetric mail game.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational used for every parameter, probability and payoff.
pub type Rational = BigRational;

/// Builds `num / den` as an exact rational. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `base^exp` for a non-negative integer exponent.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse rational from {0:?}: expected \"num/den\" or an integer")]
pub struct ParseRationalError(pub String);

/// Parses `"n/d"` or an integer string.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let trimmed = text.trim();
    Rational::from_str(trimmed).map_err(|_| ParseRationalError(text.to_string()))
}

/// Formats a rational as `"n/d"`, or `"n"` when the denominator is one.
pub fn fmt_rational(value: &Rational) -> String {
    value.to_string()
}

/// Decimal rendering with `digits` significant digits, rounded half away from zero.
pub fn to_decimal(value: &Rational, digits: usize) -> String {
    if value.is_zero() {
        return "0".to_string();
    }
    let digits = digits.max(1);
    let negative = value.is_negative();
    let abs = value.abs();
    let ten = BigInt::from(10);

    // Find exponent e with 10^e <= abs < 10^(e+1).
    let mut exponent: i64 = 0;
    let mut scaled = abs.clone();
    let ten_q = Rational::from_integer(ten.clone());
    while scaled >= ten_q {
        scaled /= &ten_q;
        exponent += 1;
    }
    while scaled < Rational::one() {
        scaled *= &ten_q;
        exponent -= 1;
    }
    // scaled in [1, 10); take digits significant digits.
    let shift = num_traits::pow(ten.clone(), digits - 1);
    let shifted = scaled * Rational::from_integer(shift);
    let mut mantissa = shifted.floor().to_integer();
    let remainder = shifted - Rational::from_integer(mantissa.clone());
    if remainder * int(2) >= Rational::one() {
        mantissa += 1;
    }
    let mut mantissa_digits = mantissa.to_string();
    if mantissa_digits.len() > digits {
        // rounding carried into a new digit, e.g. 9.99 -> 10.0
        mantissa_digits.truncate(digits);
        exponent += 1;
    }
    let point = exponent + 1; // digits before the decimal point
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        for _ in 0..(-point) {
            out.push('0');
        }
        out.push_str(&mantissa_digits);
    } else if point as usize >= mantissa_digits.len() {
        out.push_str(&mantissa_digits);
        for _ in 0..(point as usize - mantissa_digits.len()) {
            out.push('0');
        }
    } else {
        let (head, tail) = mantissa_digits.split_at(point as usize);
        out.push_str(head);
        out.push('.');
        out.push_str(tail);
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

/// Serde adapter writing rationals as `"n/d"` strings. Integers are accepted
/// on input both as strings and as JSON numbers.
pub mod rational_serde {
    use super::{fmt_rational, parse_rational, Rational};
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&fmt_rational(value))
    }

    struct RationalVisitor;

    impl<'de> Visitor<'de> for RationalVisitor {
        type Value = Rational;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a rational string \"n/d\" or an integer")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
            parse_rational(v).map_err(E::custom)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
            Ok(super::int(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
            i64::try_from(v)
                .map(super::int)
                .map_err(|_| E::custom("integer out of range"))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        deserializer.deserialize_any(RationalVisitor)
    }

    pub mod option {
        use super::Rational;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(
            value: &Option<Rational>,
            serializer: S,
        ) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => super::serialize(v, serializer),
                None => serializer.serialize_none(),
            }
        }

        #[derive(Deserialize)]
        struct Wrapped(#[serde(with = "super")] Rational);

        pub fn deserialize<'de, D: Deserializer<'de>>(
            deserializer: D,
        ) -> Result<Option<Rational>, D::Error> {
            Ok(Option::<Wrapped>::deserialize(deserializer)?.map(|w| w.0))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum State {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(match self {
            State::A => "a",
            State::B => "b",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Action {
    A,
    B,
}

impl Action {
    pub fn other(self) -> Action {
        match self {
            Action::A => Action::B,
            Action::B => Action::A,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(match self {
            Action::A => "A",
            Action::B => "B",
        })
    }
}

impl FromStr for Action {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Action::A),
            "B" | "b" => Ok(Action::B),
            other => Err(format!("unknown action {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::One, Player::Two];

    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    /// 1 or 2.
    pub fn id(self) -> u8 {
        match self {
            Player::One => 1,
            Player::Two => 2,
        }
    }

    pub fn from_id(id: u8) -> Option<Player> {
        match id {
            1 => Some(Player::One),
            2 => Some(Player::Two),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

impl Serialize for Player {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.id())
    }
}

impl<'de> Deserialize<'de> for Player {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let id = u8::deserialize(deserializer)?;
        Player::from_id(id).ok_or_else(|| serde::de::Error::custom("player must be 1 or 2"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("p must satisfy 0 < p < 1/2 (got {0})")]
    PriorOutOfRange(String),
    #[error("M must be positive (got {0})")]
    CoordinationPayoffNotPositive(String),
    #[error("L must exceed M (got L = {l}, M = {m})")]
    LossNotAboveCoordination { l: String, m: String },
    #[error("epsilon must satisfy 0 < epsilon < 1 (got {0})")]
    EpsilonOutOfRange(String),
    #[error("psi must satisfy 0 <= psi < 1 (got {0})")]
    PsiOutOfRange(String),
    #[error("rho must satisfy 0 <= rho <= 1 (got {0})")]
    RhoOutOfRange(String),
}

/// All model primitives as exact rationals.
///
/// `rho` is the probability that player 1 is the one informed in state `b`;
/// the symmetric game uses `1/2`, Rubinstein's original game uses `1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameParams {
    #[serde(with = "rational_serde")]
    pub p: Rational,
    #[serde(rename = "epsilon", with = "rational_serde")]
    pub eps: Rational,
    #[serde(with = "rational_serde")]
    pub psi: Rational,
    #[serde(rename = "L", with = "rational_serde")]
    pub loss: Rational,
    #[serde(rename = "M", with = "rational_serde")]
    pub gain: Rational,
    #[serde(with = "rational_serde")]
    pub rho: Rational,
}

impl GameParams {
    pub fn new(
        p: Rational,
        eps: Rational,
        psi: Rational,
        loss: Rational,
        gain: Rational,
        rho: Rational,
    ) -> Result<Self, ParamError> {
        let params = GameParams {
            p,
            eps,
            psi,
            loss,
            gain,
            rho,
        };
        validate(&params)?;
        Ok(params)
    }

    /// The reference point `p = 1/4, eps = 1/10, psi = 1/100, L = 2, M = 1, rho = 1/2`.
    pub fn reference() -> Self {
        GameParams {
            p: ratio(1, 4),
            eps: ratio(1, 10),
            psi: ratio(1, 100),
            loss: int(2),
            gain: int(1),
            rho: ratio(1, 2),
        }
    }

    pub fn with_psi(&self, psi: Rational) -> Self {
        GameParams {
            psi,
            ..self.clone()
        }
    }

    pub fn with_eps(&self, eps: Rational) -> Self {
        GameParams {
            eps,
            ..self.clone()
        }
    }

    pub fn with_rho(&self, rho: Rational) -> Self {
        GameParams {
            rho,
            ..self.clone()
        }
    }

    /// Multiplies both payoff magnitudes by `factor`.
    pub fn scaled(&self, factor: &Rational) -> Self {
        GameParams {
            loss: &self.loss * factor,
            gain: &self.gain * factor,
            ..self.clone()
        }
    }

    /// Probability that `player` is the first-informed player in state `b`.
    pub fn first_informed(&self, player: Player) -> Rational {
        match player {
            Player::One => self.rho.clone(),
            Player::Two => Rational::one() - &self.rho,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rho == ratio(1, 2)
    }
}

pub fn validate(params: &GameParams) -> Result<(), ParamError> {
    let zero = Rational::zero();
    let one = Rational::one();
    let half = ratio(1, 2);
    if params.p <= zero || params.p >= half {
        return Err(ParamError::PriorOutOfRange(fmt_rational(&params.p)));
    }
    if params.gain <= zero {
        return Err(ParamError::CoordinationPayoffNotPositive(fmt_rational(
            &params.gain,
        )));
    }
    if params.loss <= params.gain {
        return Err(ParamError::LossNotAboveCoordination {
            l: fmt_rational(&params.loss),
            m: fmt_rational(&params.gain),
        });
    }
    if params.eps <= zero || params.eps >= one {
        return Err(ParamError::EpsilonOutOfRange(fmt_rational(&params.eps)));
    }
    if params.psi < zero || params.psi >= one {
        return Err(ParamError::PsiOutOfRange(fmt_rational(&params.psi)));
    }
    if params.rho < zero || params.rho > one {
        return Err(ParamError::RhoOutOfRange(fmt_rational(&params.rho)));
    }
    Ok(())
}

/// Payoff pair `(u1, u2)` for the given state and action profile.
pub fn payoff(state: State, a1: Action, a2: Action, params: &GameParams) -> (Rational, Rational) {
    let m = params.gain.clone();
    let l = -params.loss.clone();
    let zero = Rational::zero();
    match (state, a1, a2) {
        (State::A, Action::A, Action::A) => (m.clone(), m),
        (State::B, Action::B, Action::B) => (m.clone(), m),
        (_, Action::A, Action::B) => (zero, l),
        (_, Action::B, Action::A) => (l, zero),
        (State::A, Action::B, Action::B) | (State::B, Action::A, Action::A) => (zero.clone(), zero),
    }
}

/// Payoff of one player choosing `own` against `opponent` in `state`.
pub fn own_payoff(state: State, own: Action, opponent: Action, params: &GameParams) -> Rational {
    payoff(state, own, opponent, params).0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> GameParams {
        GameParams::reference()
    }

    #[test]
    fn reference_params_validate() {
        assert_eq!(validate(&base()), Ok(()));
    }

    #[test]
    fn each_violation_has_its_own_error() {
        let p = GameParams {
            p: ratio(1, 2),
            ..base()
        };
        assert!(matches!(validate(&p), Err(ParamError::PriorOutOfRange(_))));
        let p = GameParams {
            p: int(0),
            ..base()
        };
        assert!(matches!(validate(&p), Err(ParamError::PriorOutOfRange(_))));
        let lm = GameParams {
            loss: int(1),
            gain: int(1),
            ..base()
        };
        assert!(matches!(
            validate(&lm),
            Err(ParamError::LossNotAboveCoordination { .. })
        ));
        assert!(validate(&lm)
            .unwrap_err()
            .to_string()
            .contains("L must exceed M"));
        let m = GameParams {
            gain: int(0),
            ..base()
        };
        assert!(matches!(
            validate(&m),
            Err(ParamError::CoordinationPayoffNotPositive(_))
        ));
        let e = GameParams {
            eps: int(1),
            ..base()
        };
        assert!(matches!(
            validate(&e),
            Err(ParamError::EpsilonOutOfRange(_))
        ));
        let e = GameParams {
            eps: int(0),
            ..base()
        };
        assert!(matches!(
            validate(&e),
            Err(ParamError::EpsilonOutOfRange(_))
        ));
        let s = GameParams {
            psi: int(1),
            ..base()
        };
        assert!(matches!(validate(&s), Err(ParamError::PsiOutOfRange(_))));
        let s = GameParams {
            psi: ratio(-1, 10),
            ..base()
        };
        assert!(matches!(validate(&s), Err(ParamError::PsiOutOfRange(_))));
        let r = GameParams {
            rho: ratio(3, 2),
            ..base()
        };
        assert!(matches!(validate(&r), Err(ParamError::RhoOutOfRange(_))));
        assert_eq!(
            validate(&GameParams {
                psi: int(0),
                rho: int(1),
                ..base()
            }),
            Ok(())
        );
    }

    #[test]
    fn payoff_table_cells() {
        let params = base();
        assert_eq!(
            payoff(State::B, Action::B, Action::B, &params),
            (int(1), int(1))
        );
        assert_eq!(
            payoff(State::A, Action::B, Action::A, &params),
            (int(-2), int(0))
        );
        assert_eq!(
            payoff(State::B, Action::A, Action::A, &params),
            (int(0), int(0))
        );
        assert_eq!(
            payoff(State::A, Action::A, Action::A, &params),
            (int(1), int(1))
        );
        assert_eq!(
            payoff(State::A, Action::B, Action::B, &params),
            (int(0), int(0))
        );
        assert_eq!(
            payoff(State::B, Action::A, Action::B, &params),
            (int(0), int(-2))
        );
    }

    #[test]
    fn payoffs_swap_with_player_labels() {
        let params = base();
        for state in [State::A, State::B] {
            for x in [Action::A, Action::B] {
                for y in [Action::A, Action::B] {
                    let (u1, u2) = payoff(state, x, y, &params);
                    let (v1, v2) = payoff(state, y, x, &params);
                    assert_eq!((u1, u2), (v2, v1));
                }
            }
        }
    }

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(parse_rational("1/10").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational(" 3 ").unwrap(), int(3));
        assert_eq!(parse_rational("2/4").unwrap(), ratio(1, 2));
        assert!(parse_rational("0.5").is_err());
        assert_eq!(fmt_rational(&ratio(9, 31)), "9/31");
        assert_eq!(fmt_rational(&int(-2)), "-2");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&ratio(1, 3), 5), "0.33333");
        assert_eq!(to_decimal(&ratio(2, 3), 3), "0.667");
        assert_eq!(to_decimal(&ratio(-7, 16), 30), "-0.4375");
        assert_eq!(to_decimal(&int(1234), 2), "1200");
        assert_eq!(to_decimal(&ratio(999, 1000), 2), "1");
        assert_eq!(to_decimal(&ratio(1, 1000), 3), "0.001");
    }

    #[test]
    fn params_json_uses_rational_strings() {
        let json = serde_json::to_string(&base()).unwrap();
        assert_eq!(
            json,
            r#"{"p":"1/4","epsilon":"1/10","psi":"1/100","L":"2","M":"1","rho":"1/2"}"#
        );
        let back: GameParams = serde_json::from_str(
            r#"{"p":"1/4","epsilon":"1/10","psi":"1/100","L":2,"M":"1","rho":"1/2"}"#,
        )
        .unwrap();
        assert_eq!(back, base());
    }
}
