//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use emailgame::beliefs::lambda_enumerated;
use emailgame::equilibrium::{
    iterated_elimination, threshold_bounds, verify, Mode, ThresholdBounds,
};
use emailgame::model::{int, pow, ratio};
use emailgame::montecarlo::{convergence_check, simulate, SimConfig};
use emailgame::strategies::{Lead, ProfileFamily};
use emailgame::welfare::loss_exact;
use emailgame::{payoff, Action, GameParams, Rational, State};
use num_traits::Zero;
use proptest::test_runner::{Config, TestError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1_payoff_tables() -> Outcome {
    let p = GameParams::reference();
    let (m, l) = (int(1), int(2));
    let z = Rational::zero();
    let cells = [
        (State::A, Action::A, Action::A, (m.clone(), m.clone())),
        (State::A, Action::A, Action::B, (z.clone(), -l.clone())),
        (State::A, Action::B, Action::A, (-l.clone(), z.clone())),
        (State::A, Action::B, Action::B, (z.clone(), z.clone())),
        (State::B, Action::A, Action::A, (z.clone(), z.clone())),
        (State::B, Action::A, Action::B, (z.clone(), -l.clone())),
        (State::B, Action::B, Action::A, (-l.clone(), z.clone())),
        (State::B, Action::B, Action::B, (m.clone(), m.clone())),
    ];
    for (s, a1, a2, want) in cells {
        check(
            payoff(s, a1, a2, &p) == want,
            format!("cell {s:?} {a1} {a2}"),
        )?;
    }
    Ok("16 payoff entries exact".into())
}

fn c2_convention_anchor() -> Outcome {
    let mut count = 0;
    for eps in [ratio(1, 100), ratio(1, 10), ratio(1, 3)] {
        for psi in [ratio(1, 1000), ratio(1, 100), ratio(1, 10)] {
            let params = GameParams::reference()
                .with_eps(eps.clone())
                .with_psi(psi.clone());
            let expected = &psi / (&psi + (int(1) - &eps) / int(2) * (int(1) - &psi));
            for n in 1..=3 {
                let got = lambda_enumerated(&params, n).map_err(err)?;
                check(
                    got == expected,
                    format!("eps {eps} psi {psi} n {n}: {got} != {expected}"),
                )?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} exact equalities"))
}

fn c3_trivial_equilibria() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let m = rng.random_range(1..5);
        let params = GameParams::new(
            ratio(rng.random_range(1..50), 100),
            ratio(rng.random_range(1..100), 100),
            ratio(rng.random_range(0..100), 100),
            int(m + rng.random_range(1..6)),
            int(m),
            ratio(rng.random_range(0..5), 4),
        )
        .map_err(err)?;
        let all_a = verify(
            &params,
            &ProfileFamily::AllA.profile(1).map_err(err)?,
            Mode::Weak,
        )
        .map_err(err)?;
        let all_b = verify(
            &params,
            &ProfileFamily::AllB.profile(1).map_err(err)?,
            Mode::Weak,
        )
        .map_err(err)?;
        check(
            all_a.is_equilibrium(),
            format!("all_a refuted at {params:?}"),
        )?;
        check(
            all_b.is_equilibrium(),
            format!("all_b refuted at {params:?}"),
        )?;
    }
    Ok("10 random points, both verify (all_b weakly)".into())
}

fn c4_asymmetric() -> Outcome {
    let params = GameParams::reference();
    let mut certs = 0;
    for lead in [Lead::T, Lead::Z] {
        for n in 1..=5 {
            let cert = verify(
                &params,
                &ProfileFamily::Asym(lead).profile(n).map_err(err)?,
                Mode::Weak,
            )
            .map_err(err)?;
            check(cert.is_equilibrium(), format!("lead {lead} n {n} refuted"))?;
            for report in &cert.reports {
                for e in &report.evaluations {
                    check(
                        e.slack > int(0) || cert.indifferent.contains(&e.info),
                        format!("lead {lead} n {n}: slack {} at {}", e.slack, e.info),
                    )?;
                }
                check(report.tail.slack > int(0), "tail slack")?;
            }
            certs += 1;
        }
    }
    Ok(format!("{certs} certificates, all on-path slack > 0"))
}

fn c5_symmetric() -> Outcome {
    let params = GameParams::reference();
    for n in 1..=5 {
        let cert = verify(
            &params,
            &ProfileFamily::Sym.profile(n).map_err(err)?,
            Mode::Weak,
        )
        .map_err(err)?;
        check(cert.is_equilibrium(), format!("sym n {n} refuted"))?;
        let cert = verify(
            &params,
            &ProfileFamily::SymShifted.profile(n).map_err(err)?,
            Mode::Weak,
        )
        .map_err(err)?;
        check(
            !cert.is_equilibrium(),
            format!("sym-shifted n {n} verified"),
        )?;
        let w = cert.witness.ok_or("no witness")?;
        check(
            (w.info.t, w.info.z) == (n + 2, n + 1),
            format!("witness {} for n {n}", w.info),
        )?;
        check(
            w.gain > int(0) && w.deviation == Action::B,
            "witness gain or deviation",
        )?;
    }
    Ok("sym verifies n=1..5; sym-shifted refuted at (n+2, n+1)".into())
}

fn c6_region() -> Outcome {
    let mut certs = 0;
    for eps in [ratio(1, 100), ratio(1, 20), ratio(1, 10)] {
        for psi in [ratio(1, 1000), ratio(1, 200), ratio(1, 100)] {
            let params = GameParams::reference()
                .with_eps(eps.clone())
                .with_psi(psi.clone());
            for fam in [
                ProfileFamily::Asym(Lead::T),
                ProfileFamily::Asym(Lead::Z),
                ProfileFamily::Sym,
            ] {
                for n in 1..=3 {
                    let cert =
                        verify(&params, &fam.profile(n).map_err(err)?, Mode::Weak).map_err(err)?;
                    check(
                        cert.is_equilibrium(),
                        format!("{fam} n {n} eps {eps} psi {psi}"),
                    )?;
                    certs += 1;
                }
            }
        }
    }
    let b = threshold_bounds(&GameParams::reference());
    check(
        b.psi1 == ratio(2, 3) && b.psi2 == ratio(9, 31) && b.psi3 == ratio(9, 29),
        "closed-form bounds",
    )?;
    let lim = ThresholdBounds::noiseless_limit(&int(2), &int(1));
    check(
        lim.psi2 == ratio(1, 3) && lim.psi3 == ratio(1, 3),
        "eps = 0 limits",
    )?;
    Ok(format!(
        "{certs} certificates; psi1=2/3 psi2=9/31 psi3=9/29; limits 1/3, 1/3"
    ))
}

fn c7_welfare() -> Outcome {
    let base = GameParams::reference();
    let noiseless = base.with_psi(int(0));
    let keep = int(1) - &base.eps;
    let loss = |params: &GameParams, fam: ProfileFamily, n: u32| -> Result<Rational, String> {
        Ok(loss_exact(params, &fam.profile(n).map_err(err)?)
            .map_err(err)?
            .loss_exact)
    };
    for n in 1..=5 {
        let d = loss(&noiseless, ProfileFamily::Asym(Lead::T), n)?
            - loss(&noiseless, ProfileFamily::Sym, n)?;
        let want = -&base.p * &base.gain * &base.eps * pow(&keep, 2 * n);
        check(d == want, format!("psi=0 n {n}: {d} != {want}"))?;
    }
    for psi in [int(0), ratio(1, 1000)] {
        let params = base.with_psi(psi.clone());
        let losses = (1..=5)
            .map(|n| loss(&params, ProfileFamily::Asym(Lead::T), n))
            .collect::<Result<Vec<_>, _>>()?;
        check(
            losses.windows(2).all(|w| w[0] < w[1]),
            format!("asym loss not increasing at psi {psi}"),
        )?;
    }
    let small = base.with_psi(ratio(1, 1000));
    for n in 1..=5 {
        let (a, s) = (
            loss(&small, ProfileFamily::Asym(Lead::T), n)?,
            loss(&small, ProfileFamily::Sym, n)?,
        );
        check(a < s, format!("no dominance at n {n}"))?;
    }
    Ok("psi=0 gap exact for n=1..5; monotone; asym dominates at psi=1/1000".into())
}

fn c8_sequential_variant() -> Outcome {
    let params = GameParams::reference().with_rho(int(1));
    for n in 1..=5 {
        let cert = verify(
            &params,
            &ProfileFamily::Rubinstein.profile(n).map_err(err)?,
            Mode::Weak,
        )
        .map_err(err)?;
        check(cert.is_equilibrium(), format!("n {n} refuted"))?;
    }
    Ok("rho=1 profile verifies for n=1..5".into())
}

fn c9_elimination() -> Outcome {
    let base = GameParams::reference().with_psi(int(0));
    let seq = iterated_elimination(&base.with_rho(int(1)), 64).map_err(err)?;
    check(
        seq.forces_a_everywhere(),
        format!("rho=1 stalls at {:?}", seq.stall_level),
    )?;
    check(seq.base_holds(), "rho=1 base bounds")?;
    for eps in [ratio(1, 100), ratio(1, 10), ratio(1, 3)] {
        let params = GameParams {
            loss: int(5),
            ..base.with_eps(eps.clone())
        };
        let r = iterated_elimination(&params, 64).map_err(err)?;
        check(
            r.forces_a_everywhere(),
            format!("L=5 eps {eps} stalls at {:?}", r.stall_level),
        )?;
        check(r.base_holds(), format!("base bounds at eps {eps}"))?;
    }
    let small = iterated_elimination(&base, 64).map_err(err)?;
    check(small.base_holds(), "base bounds at L=2")?;
    let note = match small.stall_level {
        Some(t) => format!("finding: rho=1/2, L=2, M=1 stalls at t={t}"),
        None => "rho=1/2, L=2 forces A".to_string(),
    };
    Ok(format!(
        "rho=1 forces A to 64; L=5 forces A; A~ > B~ everywhere; {note}"
    ))
}

fn c10_monte_carlo() -> Outcome {
    let params = GameParams::reference();
    let profile = ProfileFamily::Asym(Lead::T).profile(1).map_err(err)?;
    let config = SimConfig {
        samples: 1_000_000,
        seed: 42,
        params: params.clone(),
        profile: profile.clone(),
    };
    let first = simulate(&config).map_err(err)?;
    let second = simulate(&config).map_err(err)?;
    check(first.to_json() == second.to_json(), "rerun differs")?;
    let exact = loss_exact(&params, &profile).map_err(err)?;
    let report = convergence_check(&first, &exact, 4.0);
    let zs: Vec<String> = report
        .statistics
        .iter()
        .map(|s| format!("{}={:.2}", s.name, s.z))
        .collect();
    check(report.pass, format!("outside 4 sigma: {}", zs.join(" ")))?;
    Ok(format!(
        "10^6 samples, seed 42, z: {}; rerun identical",
        zs.join(" ")
    ))
}

fn c11_properties() -> Outcome {
    let cases = 100;
    let runner = || {
        TestRunner::new(Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        })
    };
    runner()
        .run(&(common::any_params(), 2u32..40), |(p, d)| {
            common::normalization(&p, d)
        })
        .map_err(|e| fail("normalization", e))?;
    runner()
        .run(
            &(common::symmetric_params(), common::any_family(), 1u32..5),
            |(p, f, n)| common::mirror_symmetry(&p, f, n),
        )
        .map_err(|e| fail("mirror", e))?;
    runner()
        .run(
            &(common::any_params(), common::any_family(), 1u32..5),
            |(p, f, n)| common::scaling_invariance(&p, f, n),
        )
        .map_err(|e| fail("scaling", e))?;
    runner()
        .run(
            &(common::any_params(), common::any_family(), 1u32..4, 1u32..6),
            |(p, f, n, k)| common::depth_robustness(&p, f, n, k),
        )
        .map_err(|e| fail("depth", e))?;
    runner()
        .run(&(common::any_family(), 1u32..8), |(f, n)| {
            common::strategy_monotonicity(f, n)
        })
        .map_err(|e| fail("monotonicity", e))?;
    Ok(format!("5 suites x {cases} cases"))
}

fn fail<T: std::fmt::Debug>(name: &str, e: TestError<T>) -> String {
    format!("{name}: {e}")
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("payoff tables", c1_payoff_tables),
        ("convention anchor", c2_convention_anchor),
        ("all-A / all-B equilibria", c3_trivial_equilibria),
        ("asymmetric threshold equilibria", c4_asymmetric),
        ("symmetric and shifted profiles", c5_symmetric),
        ("existence region and bounds", c6_region),
        ("welfare comparison", c7_welfare),
        ("sequential first-informed variant", c8_sequential_variant),
        ("iterated elimination", c9_elimination),
        ("Monte Carlo cross-check", c10_monte_carlo),
        ("property suites", c11_properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({}) - {detail}", i + 1, secs(took)),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({}) - {detail}", i + 1, secs(took));
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}
