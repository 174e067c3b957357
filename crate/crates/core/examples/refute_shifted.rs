//! The shifted symmetric profile fails at every cutoff; each witness replays exactly.

use emailgame::equilibrium::{replay_witness, verify, Mode};
use emailgame::model::fmt_rational;
use emailgame::strategies::ProfileFamily;
use emailgame::GameParams;

fn main() {
    let params = GameParams::reference();
    for n in 1..=4 {
        let profile = ProfileFamily::SymShifted.profile(n).unwrap();
        let cert = verify(&params, &profile, Mode::Weak).unwrap();
        let w = cert.witness.as_ref().expect("refuted");
        let replay = replay_witness(&params, &profile, w).unwrap();
        println!(
            "n={n} {}: P{} at (t={}, z={}) prefers {} over {} by {} (replay {}, sure {})",
            cert.verdict,
            w.info.player.id(),
            w.info.t,
            w.info.z,
            w.deviation,
            w.prescribed,
            fmt_rational(&w.gain),
            fmt_rational(&replay),
            w.sure,
        );
    }
}
