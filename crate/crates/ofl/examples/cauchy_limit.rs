//! Finite-horizon limit of a functional that is Cauchy at infinity on the
//! series field: probe it along the net of characteristic series
//! t^(-(theta+1)), record each coefficient track, and read off the limit
//! gamma from the stabilized tails.

use ofl::rat::{format_rat, int};
use ofl::scott::{coefficient_track, gamma_from_cauchy, CauchyFunctional};
use ofl::series::parse_series;

fn main() {
    let s0 = parse_series("2 + t").unwrap();
    let f = CauchyFunctional::inv_shift(s0);
    println!("functional: {}", f.description());

    // F(t^(-(theta+1))) = s0 + t^(theta+1): the track at exponent 5 spikes
    // once, at theta = 4, then settles
    for g in [int(0), int(1), int(5)] {
        let track = coefficient_track(&f, &g, 8).unwrap();
        let shown: Vec<String> = track.iter().map(|c| format_rat(c)).collect();
        println!("track g={}: {}", format_rat(&g), shown.join(","));
    }

    let exps = [int(-1), int(0), int(1), int(2)];
    let report = gamma_from_cauchy(&f, &exps, 16, 4).unwrap();
    println!("{report}");

    // a functional that keeps oscillating is reported, not averaged away
    let osc = CauchyFunctional::oscillator();
    match gamma_from_cauchy(&osc, &[int(0)], 16, 4) {
        Ok(_) => unreachable!("the oscillator never settles"),
        Err(e) => println!("oscillator: {e}"),
    }
}
