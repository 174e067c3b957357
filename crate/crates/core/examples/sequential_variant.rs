//! Player 1 always sends first: the count-only rule against the reading-led rule.

use emailgame::equilibrium::{threshold_bounds, verify, Mode};
use emailgame::model::{fmt_rational, int, ratio};
use emailgame::strategies::ProfileFamily;
use emailgame::GameParams;

fn main() {
    let params = GameParams::reference().with_rho(int(1));
    println!(
        "psibar2 = {}",
        fmt_rational(&threshold_bounds(&params).psibar2)
    );
    for psi in [ratio(1, 100), ratio(3, 10), ratio(9, 29), ratio(8, 25)] {
        let params = params.with_psi(psi);
        let profile = ProfileFamily::Rubinstein.profile(1).unwrap();
        let cert = verify(&params, &profile, Mode::Weak).unwrap();
        let at = cert.witness.as_ref().map_or(String::new(), |w| {
            format!(
                " at P{} (t={}, z={})",
                w.info.player.id(),
                w.info.t,
                w.info.z
            )
        });
        println!("psi {:<6} {}{at}", fmt_rational(&params.psi), cert.verdict);
    }
}
