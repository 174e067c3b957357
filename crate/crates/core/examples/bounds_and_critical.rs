//! Closed-form noise bounds next to the exact critical noise levels found by bisection.

use emailgame::equilibrium::{critical_psi, threshold_bounds};
use emailgame::model::{fmt_rational, int, to_decimal};
use emailgame::strategies::{Lead, ProfileFamily};
use emailgame::GameParams;

fn main() {
    let params = GameParams::reference();
    let b = threshold_bounds(&params);
    println!(
        "psi1 {}  psi2 {}  psi3 {}  psibar2 {}",
        b.psi1, b.psi2, b.psi3, b.psibar2
    );

    let runs = [
        (params.clone(), ProfileFamily::Asym(Lead::T)),
        (params.clone(), ProfileFamily::Sym),
        (params.with_rho(int(1)), ProfileFamily::Rubinstein),
    ];
    for (params, family) in runs {
        let report = critical_psi(&params, family, 2, 24).unwrap();
        println!(
            "{:<10} critical psi in [{}, {}]  ~ {}  monotone {}",
            family.name(),
            fmt_rational(&report.lo),
            fmt_rational(&report.hi),
            to_decimal(&report.lo, 6),
            report.monotone,
        );
    }
}
