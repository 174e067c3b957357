//! Joint distribution of message counts and noisy readings, truncated at a small depth.

use emailgame::model::fmt_rational;
use emailgame::protocol::signal_distribution;
use emailgame::GameParams;

fn main() {
    let params = GameParams::reference();
    let dist = signal_distribution(&params, 3).expect("valid depth");
    println!(
        "{:>5} {:>5} {:>3} {:>3} {:>3} {:>3}  prob",
        "state", "first", "t1", "t2", "z1", "z2"
    );
    for a in &dist.atoms {
        let first = a.first.map_or("-".to_string(), |p| format!("P{}", p.id()));
        println!(
            "{:>5} {:>5} {:>3} {:>3} {:>3} {:>3}  {}",
            a.state,
            first,
            a.t1,
            a.t2,
            a.z1,
            a.z2,
            fmt_rational(&a.prob)
        );
    }
    println!(
        "tail beyond depth {}: {}",
        dist.depth,
        fmt_rational(&dist.tail_mass)
    );
}
