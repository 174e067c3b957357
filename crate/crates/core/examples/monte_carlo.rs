//! Seeded simulation of the game checked against the exact welfare report.

use emailgame::montecarlo::{convergence_check, simulate, SimConfig};
use emailgame::strategies::{Lead, ProfileFamily};
use emailgame::welfare::loss_exact;
use emailgame::GameParams;

fn main() {
    let params = GameParams::reference();
    let profile = ProfileFamily::Asym(Lead::T).profile(2).unwrap();
    let exact = loss_exact(&params, &profile).unwrap();
    let config = SimConfig {
        samples: 1_000_000,
        seed: 42,
        params,
        profile,
    };
    let result = simulate(&config).unwrap();
    let check = convergence_check(&result, &exact, 4.0);
    for s in &check.statistics {
        println!(
            "{:<22} empirical {:.6} exact {:.6} z {:+.2}",
            s.name, s.empirical, s.exact, s.z
        );
    }
    println!("within {} standard errors: {}", check.sigma, check.pass);
}
