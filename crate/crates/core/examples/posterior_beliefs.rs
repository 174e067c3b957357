//! Posterior of an informed player and the conditional probabilities behind the cutoffs.

use emailgame::beliefs::{
    lambda_closed_form, lambda_enumerated, mu_enumerated, posterior, InfoSet,
};
use emailgame::model::fmt_rational;
use emailgame::protocol::signal_distribution;
use emailgame::{GameParams, Player, State};

fn main() {
    let params = GameParams::reference();
    let info = InfoSet::new(Player::One, 3, 2);
    let dist = signal_distribution(&params, info.required_depth()).expect("valid depth");
    let post = posterior(&dist, info).expect("reachable");
    println!("P1 at (t=3, z=2)");
    for cell in &post.cells {
        println!(
            "  state {} t_opp {} z_opp {}  {}",
            cell.state,
            cell.t_opp,
            cell.z_opp,
            fmt_rational(&cell.prob)
        );
    }
    println!(
        "  P(state b) = {}",
        fmt_rational(&post.prob_state(State::B))
    );

    for n in 1..=3 {
        println!(
            "n={n}  lambda {}  mu {}",
            fmt_rational(&lambda_enumerated(&params, n).unwrap()),
            fmt_rational(&mu_enumerated(&params, n).unwrap()),
        );
    }
    println!(
        "lambda closed form {}",
        fmt_rational(&lambda_closed_form(&params))
    );
}
