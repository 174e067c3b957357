//! Expected coordination loss of the asymmetric and symmetric profiles.

use emailgame::model::{fmt_rational, int};
use emailgame::welfare::compare;
use emailgame::GameParams;

fn main() {
    for params in [
        GameParams::reference(),
        GameParams::reference().with_psi(int(0)),
    ] {
        let table = compare(&params, &[1, 2, 3, 4, 5]).unwrap();
        println!("psi = {}", fmt_rational(&params.psi));
        for row in &table.rows {
            println!(
                "  n={} asym {} sym {} diff {} dominates {}",
                row.n,
                fmt_rational(&row.asym.loss_exact),
                fmt_rational(&row.sym.loss_exact),
                fmt_rational(&row.difference),
                row.dominates,
            );
        }
        println!("  dominance failures {:?}", table.dominance_failures());
    }
    print!(
        "\n{}",
        compare(&GameParams::reference(), &[1, 2])
            .unwrap()
            .to_csv(true)
    );
}
