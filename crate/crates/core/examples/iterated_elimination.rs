//! Iterated elimination of dominated actions under both protocols.

use emailgame::equilibrium::iterated_elimination;
use emailgame::model::{fmt_rational, int, ratio};
use emailgame::GameParams;

fn main() {
    let cases = [
        (
            "simultaneous, L=2",
            GameParams::reference().with_psi(int(0)),
        ),
        (
            "simultaneous, L=5",
            GameParams::new(
                ratio(1, 4),
                ratio(1, 10),
                int(0),
                int(5),
                int(1),
                ratio(1, 2),
            )
            .unwrap(),
        ),
        (
            "sequential, L=2",
            GameParams::reference().with_psi(int(0)).with_rho(int(1)),
        ),
    ];
    for (label, params) in cases {
        let report = iterated_elimination(&params, 32).unwrap();
        println!("{label}");
        for base in &report.base {
            println!(
                "  base P{}: A pays {} B pays {} holds {}",
                base.player.id(),
                fmt_rational(&base.payoff_a),
                fmt_rational(&base.payoff_b),
                base.holds()
            );
        }
        match report.stall_level {
            Some(t) => println!("  stalls at t={t}"),
            None => println!("  A forced at every level up to {}", report.depth),
        }
    }
}
