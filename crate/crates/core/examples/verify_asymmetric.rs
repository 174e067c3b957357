//! Exact certificate that the asymmetric threshold profile is an equilibrium.

use emailgame::equilibrium::{lambda_cutoff, verify, Mode};
use emailgame::model::{fmt_rational, ratio};
use emailgame::strategies::{Lead, ProfileFamily};
use emailgame::GameParams;

fn main() {
    let params = GameParams::reference();
    println!(
        "break-even noise level {}",
        fmt_rational(&lambda_cutoff(&params))
    );
    for n in 1..=4 {
        let profile = ProfileFamily::Asym(Lead::T).profile(n).unwrap();
        let cert = verify(&params, &profile, Mode::Strict).unwrap();
        println!(
            "n={n} {} depth {} min slack {}",
            cert.verdict,
            cert.depth,
            fmt_rational(&cert.min_slack),
        );
    }

    let noisy = params.with_psi(ratio(1, 4));
    let cert = verify(
        &noisy,
        &ProfileFamily::Asym(Lead::T).profile(1).unwrap(),
        Mode::Weak,
    )
    .unwrap();
    println!("\npsi=1/4:");
    println!(
        "{}",
        serde_json::to_string_pretty(&cert.to_json(&noisy)).unwrap()
    );
}
