//! Verdict grid over noise and error rates, printed as a map.

use emailgame::equilibrium::{verify, Mode};
use emailgame::model::{fmt_rational, ratio};
use emailgame::strategies::{Lead, ProfileFamily};
use emailgame::GameParams;

fn main() {
    let eps_grid = [ratio(1, 100), ratio(1, 20), ratio(1, 10), ratio(1, 5)];
    let psi_grid = [
        ratio(1, 1000),
        ratio(1, 100),
        ratio(1, 10),
        ratio(1, 5),
        ratio(1, 3),
    ];
    for family in [ProfileFamily::Asym(Lead::T), ProfileFamily::Sym] {
        println!("{family} (n=2), rows eps, columns psi; + equilibrium, x refuted");
        print!("{:>8}", "");
        for psi in &psi_grid {
            print!("{:>7}", fmt_rational(psi));
        }
        println!();
        for eps in &eps_grid {
            print!("{:>8}", fmt_rational(eps));
            for psi in &psi_grid {
                let params = GameParams::reference()
                    .with_eps(eps.clone())
                    .with_psi(psi.clone());
                let cert = verify(&params, &family.profile(2).unwrap(), Mode::Weak).unwrap();
                print!("{:>7}", if cert.is_equilibrium() { "+" } else { "x" });
            }
            println!();
        }
    }
}
