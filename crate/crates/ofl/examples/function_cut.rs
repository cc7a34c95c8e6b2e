//! A gap carved out by a function that is Cauchy at infinity: the cut of
//! values cofinally dominated by the sqrt(2) continued-fraction convergent
//! staircase. Membership is decided over a finite sample horizon and
//! reported as undecidable when the horizon is too short.

use ofl::cuts::{sqrt2_convergent, sqrt2_convergent_fn, CutSpec};
use ofl::rat::{format_rat, int, rat};
use ofl::AlgebraicNumber;

fn main() {
    for n in 1..=5 {
        println!("convergent {n} = {}", format_rat(&sqrt2_convergent(n)));
    }

    let cut = CutSpec::function(sqrt2_convergent_fn(), 50);
    // away from sqrt(2) the function cut agrees with the algebraic one
    let algebraic = CutSpec::algebraic(AlgebraicNumber::sqrt2());
    for q in [int(1), rat(7, 5), rat(141, 100), rat(142, 100), rat(3, 2)] {
        let f = cut.contains(&q).unwrap();
        let a = algebraic.contains(&q).unwrap();
        println!("contains[{}]: function={f} algebraic={a}", format_rat(&q));
    }

    // probes too close to the limit exhaust the horizon instead of guessing
    let close = rat(239, 169); // convergent 4, above sqrt(2) by ~2e-5
    match cut.contains(&close) {
        Ok(v) => println!("contains[239/169] = {v}"),
        Err(e) => println!("contains[239/169]: {e}"),
    }

    // the sup bracket of the function cut pins down the limit
    let (lo, hi) = cut.sup_approx(&rat(1, 10_000), 4096).unwrap();
    println!("sup in [{}, {}]", format_rat(&lo), format_rat(&hi));
}
