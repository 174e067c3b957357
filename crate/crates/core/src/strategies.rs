//! Pure strategies on the `(T, Z)` lattice and the named threshold families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Action, Player};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("unknown strategy family {0:?}")]
    UnknownFamily(String),
    #[error("threshold families need n >= 1 (got {0})")]
    CutoffTooSmall(u32),
    #[error("family {0} needs a cutoff n")]
    MissingCutoff(String),
    #[error("custom table entry ({t}, {z}) lies outside bound {bound}")]
    EntryOutOfBounds { t: u32, z: u32, bound: u32 },
    #[error("custom table assigns two actions to ({t}, {z})")]
    ConflictingEntry { t: u32, z: u32 },
    #[error("custom table has no action for ({t}, {z})")]
    IncompleteTable { t: u32, z: u32 },
    #[error("custom strategy needs {0}")]
    MissingField(&'static str),
    #[error("profile expects player {expected} in this slot, got player {found}")]
    PlayerMismatch { expected: Player, found: Player },
    #[error("invalid strategy json: {0}")]
    Json(String),
}

/// Which signal a threshold rule leans on for its `n + 1` requirement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Lead {
    T,
    Z,
}

impl Lead {
    pub fn other(self) -> Lead {
        match self {
            Lead::T => Lead::Z,
            Lead::Z => Lead::T,
        }
    }
}

impl FromStr for Lead {
    type Err = StrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "T" | "t" => Ok(Lead::T),
            "Z" | "z" => Ok(Lead::Z),
            other => Err(StrategyError::UnknownFamily(format!("lead {other}"))),
        }
    }
}

impl fmt::Display for Lead {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(match self {
            Lead::T => "T",
            Lead::Z => "Z",
        })
    }
}

/// Decision rules with a closed-form predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    AllA,
    AllB,
    /// `T`-lead: B iff `t >= n + 1 && z >= n`; `Z`-lead: B iff `z >= n + 1 && t >= n`.
    Asym {
        n: u32,
        lead: Lead,
    },
    /// B iff `t >= n + 1 && z >= n + 1`.
    Sym {
        n: u32,
    },
    /// B iff `t >= n + 1 && z >= n + 2`.
    SymShifted {
        n: u32,
    },
    /// `T`-lead: B iff `t >= n + 1`; `Z`-lead: B iff `z >= n + 1 && t >= n`.
    Rubinstein {
        n: u32,
        lead: Lead,
    },
}

impl Family {
    pub fn cutoff(&self) -> Option<u32> {
        match *self {
            Family::AllA | Family::AllB => None,
            Family::Asym { n, .. }
            | Family::Sym { n }
            | Family::SymShifted { n }
            | Family::Rubinstein { n, .. } => Some(n),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::AllA => "all_a",
            Family::AllB => "all_b",
            Family::Asym { .. } => "asym",
            Family::Sym { .. } => "sym",
            Family::SymShifted { .. } => "sym-shifted",
            Family::Rubinstein { .. } => "rubinstein",
        }
    }

    pub fn lead(&self) -> Option<Lead> {
        match *self {
            Family::Asym { lead, .. } | Family::Rubinstein { lead, .. } => Some(lead),
            _ => None,
        }
    }

    /// The defining predicate.
    pub fn prescribes(&self, t: u32, z: u32) -> Action {
        let b = match *self {
            Family::AllA => false,
            Family::AllB => true,
            Family::Asym { n, lead: Lead::T } => t > n && z >= n,
            Family::Asym { n, lead: Lead::Z } => z > n && t >= n,
            Family::Sym { n } => t > n && z > n,
            Family::SymShifted { n } => t > n && z > n + 1,
            Family::Rubinstein { n, lead: Lead::T } => t > n,
            Family::Rubinstein { n, lead: Lead::Z } => z > n && t >= n,
        };
        if b {
            Action::B
        } else {
            Action::A
        }
    }

    /// Box size beyond which the rule is constant on every structurally feasible
    /// signal pair (those with `t - 1 <= z <= t + 2`).
    fn table_bound(&self) -> u32 {
        self.cutoff().map_or(0, |n| n + 3)
    }

    pub fn strategy(self, player: Player) -> Result<Strategy, StrategyError> {
        if let Some(n) = self.cutoff() {
            if n < 1 {
                return Err(StrategyError::CutoffTooSmall(n));
            }
        }
        let bound = self.table_bound();
        let side = bound + 1;
        let mut table = Vec::with_capacity((side * side) as usize);
        for t in 0..=bound {
            for z in 0..=bound {
                table.push(self.prescribes(t, z));
            }
        }
        let tail = self.prescribes(bound + 1, bound + 1);
        Ok(Strategy {
            player,
            bound,
            table,
            tail,
            family: Some(self),
        })
    }
}

/// Builds a family member by name. `lead` defaults to `T` for `asym`; for
/// `rubinstein` it defaults to the player's role (player 1 leads with `T`).
pub fn make_family(
    name: &str,
    n: Option<u32>,
    lead: Option<Lead>,
    player: Player,
) -> Result<Strategy, StrategyError> {
    let need_n = || n.ok_or_else(|| StrategyError::MissingCutoff(name.to_string()));
    let family = match name {
        "all_a" => Family::AllA,
        "all_b" => Family::AllB,
        "asym" => Family::Asym {
            n: need_n()?,
            lead: lead.unwrap_or(Lead::T),
        },
        "sym" => Family::Sym { n: need_n()? },
        "sym-shifted" => Family::SymShifted { n: need_n()? },
        "rubinstein" => {
            let default = if player == Player::One {
                Lead::T
            } else {
                Lead::Z
            };
            Family::Rubinstein {
                n: need_n()?,
                lead: lead.unwrap_or(default),
            }
        }
        other => return Err(StrategyError::UnknownFamily(other.to_string())),
    };
    family.strategy(player)
}

/// Eventually constant pure strategy: an explicit table for `max(t, z) <= bound`
/// and a single tail action beyond.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strategy {
    player: Player,
    bound: u32,
    table: Vec<Action>,
    tail: Action,
    family: Option<Family>,
}

impl Strategy {
    /// Custom strategy from explicit `(t, z, action)` entries covering the whole box.
    pub fn custom(
        player: Player,
        bound: u32,
        entries: impl IntoIterator<Item = (u32, u32, Action)>,
        tail: Action,
    ) -> Result<Self, StrategyError> {
        let side = bound as usize + 1;
        let mut table: Vec<Option<Action>> = vec![None; side * side];
        for (t, z, action) in entries {
            if t > bound || z > bound {
                return Err(StrategyError::EntryOutOfBounds { t, z, bound });
            }
            let slot = &mut table[t as usize * side + z as usize];
            match slot {
                Some(existing) if *existing != action => {
                    return Err(StrategyError::ConflictingEntry { t, z })
                }
                _ => *slot = Some(action),
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, a)| {
                a.ok_or(StrategyError::IncompleteTable {
                    t: (i / side) as u32,
                    z: (i % side) as u32,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Strategy {
            player,
            bound,
            table,
            tail,
            family: None,
        })
    }

    pub fn player(&self) -> Player {
        self.player
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn tail(&self) -> Action {
        self.tail
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    /// Prescribed action. Family members answer from their predicate, which
    /// coincides with `table_action` on every structurally feasible pair.
    pub fn action(&self, t: u32, z: u32) -> Action {
        match self.family {
            Some(family) => family.prescribes(t, z),
            None => self.table_action(t, z),
        }
    }

    /// The table-plus-tail view.
    pub fn table_action(&self, t: u32, z: u32) -> Action {
        if t > self.bound || z > self.bound {
            self.tail
        } else {
            let side = self.bound as usize + 1;
            self.table[t as usize * side + z as usize]
        }
    }

    /// Same rule for the other player.
    pub fn relabel(&self, player: Player) -> Strategy {
        Strategy {
            player,
            ..self.clone()
        }
    }

    /// Copy with the action at `(t, z)` replaced; the result is a custom strategy.
    pub fn with_action(&self, t: u32, z: u32, action: Action) -> Strategy {
        let bound = self.bound.max(t).max(z);
        let mut entries = Vec::new();
        for tt in 0..=bound {
            for zz in 0..=bound {
                let a = if (tt, zz) == (t, z) {
                    action
                } else {
                    self.action(tt, zz)
                };
                entries.push((tt, zz, a));
            }
        }
        Strategy::custom(self.player, bound, entries, self.tail).expect("box is complete")
    }

    pub fn to_spec(&self) -> StrategySpec {
        match self.family {
            Some(family) => StrategySpec {
                player: self.player,
                family: family.name().to_string(),
                n: family.cutoff(),
                lead: family.lead(),
                bound: None,
                table: None,
                tail: None,
            },
            None => {
                let mut table = Vec::with_capacity(self.table.len());
                for t in 0..=self.bound {
                    for z in 0..=self.bound {
                        table.push((t, z, self.action(t, z)));
                    }
                }
                StrategySpec {
                    player: self.player,
                    family: "custom".to_string(),
                    n: None,
                    lead: None,
                    bound: Some(self.bound),
                    table: Some(table),
                    tail: Some(self.tail),
                }
            }
        }
    }

    pub fn from_spec(spec: &StrategySpec) -> Result<Self, StrategyError> {
        if spec.family == "custom" {
            let bound = spec.bound.ok_or(StrategyError::MissingField("bound"))?;
            let table = spec
                .table
                .clone()
                .ok_or(StrategyError::MissingField("table"))?;
            let tail = spec.tail.ok_or(StrategyError::MissingField("tail"))?;
            Strategy::custom(spec.player, bound, table, tail)
        } else {
            make_family(&spec.family, spec.n, spec.lead, spec.player)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("strategy spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, StrategyError> {
        let spec: StrategySpec =
            serde_json::from_str(text).map_err(|e| StrategyError::Json(e.to_string()))?;
        Strategy::from_spec(&spec)
    }
}

/// JSON form of a strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategySpec {
    pub player: Player,
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lead: Option<Lead>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub table: Option<Vec<(u32, u32, Action)>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tail: Option<Action>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyProfile {
    pub one: Strategy,
    pub two: Strategy,
}

pub fn profile(s1: Strategy, s2: Strategy) -> Result<StrategyProfile, StrategyError> {
    if s1.player() != Player::One {
        return Err(StrategyError::PlayerMismatch {
            expected: Player::One,
            found: s1.player(),
        });
    }
    if s2.player() != Player::Two {
        return Err(StrategyError::PlayerMismatch {
            expected: Player::Two,
            found: s2.player(),
        });
    }
    Ok(StrategyProfile { one: s1, two: s2 })
}

#[derive(Serialize, Deserialize)]
struct ProfileSpec {
    player1: StrategySpec,
    player2: StrategySpec,
}

impl StrategyProfile {
    pub fn get(&self, player: Player) -> &Strategy {
        match player {
            Player::One => &self.one,
            Player::Two => &self.two,
        }
    }

    /// Swaps the roles of the two players.
    pub fn mirror(&self) -> StrategyProfile {
        StrategyProfile {
            one: self.two.relabel(Player::One),
            two: self.one.relabel(Player::Two),
        }
    }

    pub fn to_json(&self) -> String {
        let spec = ProfileSpec {
            player1: self.one.to_spec(),
            player2: self.two.to_spec(),
        };
        serde_json::to_string(&spec).expect("profile spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, StrategyError> {
        let spec: ProfileSpec =
            serde_json::from_str(text).map_err(|e| StrategyError::Json(e.to_string()))?;
        profile(
            Strategy::from_spec(&spec.player1)?,
            Strategy::from_spec(&spec.player2)?,
        )
    }
}

/// Named strategy profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileFamily {
    AllA,
    AllB,
    /// Player 1 uses the given lead, player 2 the opposite one.
    Asym(Lead),
    Sym,
    SymShifted,
    /// Player 1 acts on `T` alone, player 2 uses the `Z`-lead rule.
    Rubinstein,
}

impl ProfileFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileFamily::AllA => "all_a",
            ProfileFamily::AllB => "all_b",
            ProfileFamily::Asym(Lead::T) => "asym",
            ProfileFamily::Asym(Lead::Z) => "mirror-asym",
            ProfileFamily::Sym => "sym",
            ProfileFamily::SymShifted => "sym-shifted",
            ProfileFamily::Rubinstein => "rubinstein",
        }
    }

    /// Parses a family name; `lead` only matters for `asym`.
    pub fn parse(name: &str, lead: Option<Lead>) -> Result<Self, StrategyError> {
        Ok(match name {
            "all_a" => ProfileFamily::AllA,
            "all_b" => ProfileFamily::AllB,
            "asym" => ProfileFamily::Asym(lead.unwrap_or(Lead::T)),
            "mirror-asym" => ProfileFamily::Asym(lead.map_or(Lead::Z, Lead::other)),
            "sym" => ProfileFamily::Sym,
            "sym-shifted" => ProfileFamily::SymShifted,
            "rubinstein" => ProfileFamily::Rubinstein,
            other => return Err(StrategyError::UnknownFamily(other.to_string())),
        })
    }

    pub fn has_cutoff(&self) -> bool {
        !matches!(self, ProfileFamily::AllA | ProfileFamily::AllB)
    }

    pub fn profile(&self, n: u32) -> Result<StrategyProfile, StrategyError> {
        let (f1, f2) = match *self {
            ProfileFamily::AllA => (Family::AllA, Family::AllA),
            ProfileFamily::AllB => (Family::AllB, Family::AllB),
            ProfileFamily::Asym(lead) => (
                Family::Asym { n, lead },
                Family::Asym {
                    n,
                    lead: lead.other(),
                },
            ),
            ProfileFamily::Sym => (Family::Sym { n }, Family::Sym { n }),
            ProfileFamily::SymShifted => (Family::SymShifted { n }, Family::SymShifted { n }),
            ProfileFamily::Rubinstein => (
                Family::Rubinstein { n, lead: Lead::T },
                Family::Rubinstein { n, lead: Lead::Z },
            ),
        };
        profile(f1.strategy(Player::One)?, f2.strategy(Player::Two)?)
    }
}

impl fmt::Display for ProfileFamily {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Signal pairs that can occur for some parameters: `t - 1 <= z <= t + 2`.
pub fn structurally_feasible(t: u32, z: u32) -> bool {
    z + 1 >= t && z <= t + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use Action::{A, B};

    fn all_families(n: u32) -> Vec<Family> {
        vec![
            Family::AllA,
            Family::AllB,
            Family::Asym { n, lead: Lead::T },
            Family::Asym { n, lead: Lead::Z },
            Family::Sym { n },
            Family::SymShifted { n },
            Family::Rubinstein { n, lead: Lead::T },
            Family::Rubinstein { n, lead: Lead::Z },
        ]
    }

    #[test]
    fn asym_t_lead_cells() {
        let s = Family::Asym {
            n: 1,
            lead: Lead::T,
        }
        .strategy(Player::One)
        .unwrap();
        assert_eq!(s.action(2, 1), B);
        assert_eq!(s.action(2, 0), A);
        assert_eq!(s.action(1, 5), A);
    }

    #[test]
    fn sym_cells() {
        let s = Family::Sym { n: 2 }.strategy(Player::Two).unwrap();
        assert_eq!(s.action(3, 3), B);
        assert_eq!(s.action(3, 2), A);
    }

    #[test]
    fn all_a_everywhere() {
        let s = Family::AllA.strategy(Player::One).unwrap();
        for t in 0..20 {
            for z in 0..20 {
                assert_eq!(s.action(t, z), A);
            }
        }
    }

    #[test]
    fn rejects_bad_family_requests() {
        assert_eq!(
            make_family("triangle", Some(1), None, Player::One),
            Err(StrategyError::UnknownFamily("triangle".into()))
        );
        assert_eq!(
            Family::Sym { n: 0 }.strategy(Player::One),
            Err(StrategyError::CutoffTooSmall(0))
        );
        assert!(matches!(
            make_family("sym", None, None, Player::One),
            Err(StrategyError::MissingCutoff(_))
        ));
    }

    #[test]
    fn tables_agree_with_predicates_on_feasible_pairs() {
        for n in 1..=6 {
            for family in all_families(n) {
                let s = family.strategy(Player::One).unwrap();
                for t in 0..=3 * n + 5 {
                    for z in 0..=3 * n + 5 {
                        assert_eq!(s.action(t, z), family.prescribes(t, z));
                        if structurally_feasible(t, z) {
                            assert_eq!(
                                s.table_action(t, z),
                                family.prescribes(t, z),
                                "{family:?} at ({t}, {z})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn thresholds_are_monotone() {
        for n in 1..=5 {
            for family in all_families(n) {
                let s = family.strategy(Player::Two).unwrap();
                for t in 0..=3 * n + 5 {
                    for z in 0..=3 * n + 5 {
                        if s.action(t, z) == B {
                            assert_eq!(s.action(t + 1, z), B);
                            assert_eq!(s.action(t, z + 1), B);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mirror_swaps_leads() {
        let p = ProfileFamily::Asym(Lead::T).profile(3).unwrap();
        let m = p.mirror();
        assert_eq!(m, ProfileFamily::Asym(Lead::Z).profile(3).unwrap());
        let sym = ProfileFamily::Sym.profile(2).unwrap();
        assert_eq!(sym.mirror(), sym);
    }

    #[test]
    fn profile_checks_players() {
        let a1 = Family::AllA.strategy(Player::One).unwrap();
        assert!(matches!(
            profile(a1.clone(), a1),
            Err(StrategyError::PlayerMismatch { .. })
        ));
    }

    #[test]
    fn json_forms() {
        let s = Family::Asym {
            n: 1,
            lead: Lead::T,
        }
        .strategy(Player::One)
        .unwrap();
        assert_eq!(
            s.to_json(),
            r#"{"player":1,"family":"asym","n":1,"lead":"T"}"#
        );
        let custom = Strategy::from_json(
            r#"{"player":2,"family":"custom","bound":1,"table":[[0,0,"A"],[0,1,"A"],[1,0,"A"],[1,1,"B"]],"tail":"B"}"#,
        )
        .unwrap();
        assert_eq!(custom.action(1, 1), B);
        assert_eq!(custom.action(7, 0), B);
        assert_eq!(Strategy::from_json(&custom.to_json()).unwrap(), custom);
        assert!(matches!(
            Strategy::from_json(
                r#"{"player":2,"family":"custom","bound":1,"table":[[0,0,"A"]],"tail":"B"}"#
            ),
            Err(StrategyError::IncompleteTable { .. })
        ));
        let all_a = ProfileFamily::AllA.profile(1).unwrap();
        assert_eq!(StrategyProfile::from_json(&all_a.to_json()).unwrap(), all_a);
    }

    #[test]
    fn single_cell_override() {
        let s = Family::Sym { n: 1 }.strategy(Player::One).unwrap();
        let d = s.with_action(3, 2, B);
        assert_eq!(d.action(3, 2), B);
        assert_eq!(d.action(2, 2), B);
        assert_eq!(d.action(2, 1), A);
        let far = s.with_action(9, 9, A);
        assert_eq!(far.action(9, 9), A);
        assert_eq!(far.action(10, 10), B);
        assert_eq!(far.action(8, 9), B);
    }
}
