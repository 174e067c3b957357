#![allow(dead_code)]

use emailgame::equilibrium::{verify, verify_at_depth, Mode};
use emailgame::model::{int, ratio};
use emailgame::protocol::{enumerate_outcomes, signal_distribution};
use emailgame::strategies::{Lead, ProfileFamily};
use emailgame::{Action, GameParams, Player, Rational};
use num_traits::One;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn any_params() -> impl Strategy<Value = GameParams> {
    (1i64..50, 1i64..100, 0i64..100, 1i64..5, 1i64..9, 0i64..5).prop_map(
        |(p, e, s, m, extra, r)| {
            GameParams::new(
                ratio(p, 100),
                ratio(e, 100),
                ratio(s, 100),
                int(m + extra),
                int(m),
                ratio(r, 4),
            )
            .expect("generated params are valid")
        },
    )
}

pub fn symmetric_params() -> impl Strategy<Value = GameParams> {
    any_params().prop_map(|p| p.with_rho(ratio(1, 2)))
}

pub fn any_family() -> impl Strategy<Value = ProfileFamily> {
    prop_oneof![
        Just(ProfileFamily::AllA),
        Just(ProfileFamily::AllB),
        Just(ProfileFamily::Asym(Lead::T)),
        Just(ProfileFamily::Asym(Lead::Z)),
        Just(ProfileFamily::Sym),
        Just(ProfileFamily::SymShifted),
        Just(ProfileFamily::Rubinstein),
    ]
}

pub fn normalization(params: &GameParams, depth: u32) -> Result<(), TestCaseError> {
    let outcomes = enumerate_outcomes(params, depth).unwrap();
    prop_assert_eq!(outcomes.atom_mass() + &outcomes.tail_mass, Rational::one());
    let signals = signal_distribution(params, depth).unwrap();
    prop_assert_eq!(signals.atom_mass() + &signals.tail_mass, Rational::one());
    prop_assert!(signals.atoms.iter().all(|a| a.prob > int(0)));
    Ok(())
}

pub fn mirror_symmetry(
    params: &GameParams,
    family: ProfileFamily,
    n: u32,
) -> Result<(), TestCaseError> {
    let profile = family.profile(n).unwrap();
    let direct = verify(params, &profile, Mode::Weak).unwrap();
    let mirrored = verify(params, &profile.mirror(), Mode::Weak).unwrap();
    prop_assert_eq!(direct.verdict, mirrored.verdict);
    prop_assert_eq!(&direct.min_slack, &mirrored.min_slack);
    if let ProfileFamily::Asym(lead) = family {
        let other = verify(
            params,
            &ProfileFamily::Asym(lead.other()).profile(n).unwrap(),
            Mode::Weak,
        )
        .unwrap();
        prop_assert_eq!(direct.verdict, other.verdict);
    }
    Ok(())
}

pub fn scaling_invariance(
    params: &GameParams,
    family: ProfileFamily,
    n: u32,
) -> Result<(), TestCaseError> {
    let profile = family.profile(n).unwrap();
    let base = verify(params, &profile, Mode::Weak).unwrap();
    let scaled = verify(&params.scaled(&int(7)), &profile, Mode::Weak).unwrap();
    prop_assert_eq!(base.verdict, scaled.verdict);
    prop_assert_eq!(base.binding, scaled.binding);
    prop_assert_eq!(&base.min_slack * int(7), scaled.min_slack.clone());
    let infos = |c: &emailgame::equilibrium::EquilibriumCertificate| {
        c.witnesses
            .iter()
            .map(|w| (w.info, w.deviation))
            .collect::<Vec<_>>()
    };
    prop_assert_eq!(infos(&base), infos(&scaled));
    for (a, b) in base.reports.iter().zip(&scaled.reports) {
        for (x, y) in a.evaluations.iter().zip(&b.evaluations) {
            prop_assert_eq!(x.optimal, y.optimal);
        }
    }
    Ok(())
}

pub fn depth_robustness(
    params: &GameParams,
    family: ProfileFamily,
    n: u32,
    extra: u32,
) -> Result<(), TestCaseError> {
    let profile = family.profile(n).unwrap();
    let auto = verify(params, &profile, Mode::Weak).unwrap();
    let deeper = verify_at_depth(params, &profile, Mode::Weak, auto.depth + extra).unwrap();
    prop_assert_eq!(auto.verdict, deeper.verdict);
    prop_assert_eq!(&auto.min_slack, &deeper.min_slack);
    prop_assert_eq!(auto.witness.map(|w| w.info), deeper.witness.map(|w| w.info));
    Ok(())
}

pub fn strategy_monotonicity(family: ProfileFamily, n: u32) -> Result<(), TestCaseError> {
    let profile = family.profile(n).unwrap();
    for player in Player::BOTH {
        let s = profile.get(player);
        for t in 0..3 * n + 6 {
            for z in 0..3 * n + 6 {
                if s.action(t, z) == Action::B {
                    prop_assert_eq!(s.action(t + 1, z), Action::B);
                    prop_assert_eq!(s.action(t, z + 1), Action::B);
                }
            }
        }
    }
    Ok(())
}
