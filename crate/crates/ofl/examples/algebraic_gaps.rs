//! Gaps of the rationals located at real algebraic numbers: membership,
//! gap detection, regularity witnesses, supremum bracketing, and the
//! failure of the intermediate value property over the rationals.

use ofl::cuts::{ivp_failure_witness, CutSpec};
use ofl::poly::parse_poly;
use ofl::rat::{format_rat, int, rat};
use ofl::AlgebraicNumber;

fn main() {
    // the set of rationals below sqrt(2) is a cut with no rational sup
    let cut = CutSpec::algebraic(AlgebraicNumber::sqrt2());
    for q in [int(1), rat(7, 5), rat(3, 2), int(2)] {
        println!(
            "contains[{}] = {}",
            format_rat(&q),
            cut.contains(&q).unwrap()
        );
    }
    println!("is_gap = {}", cut.is_gap().unwrap());

    // translation preserves being a gap
    let shifted = cut.clone().translate(int(5));
    println!("is_gap after +5 = {}", shifted.is_gap().unwrap());

    // a rational cut is not a gap: its sup is attained
    let three = AlgebraicNumber::root_of(parse_poly("x - 3").unwrap(), 0).unwrap();
    println!(
        "is_gap at 3 = {}",
        CutSpec::algebraic(three).is_gap().unwrap()
    );

    // regularity: for every eps there is x in the cut with x + eps outside
    for eps in [int(1), rat(1, 1000), rat(1, 1_000_000)] {
        let w = cut.regularity_probe(&eps, 4096).unwrap();
        println!(
            "regularity witness: eps={} x={}",
            format_rat(&w.epsilon),
            format_rat(&w.x)
        );
    }

    // bracketing the missing supremum to a billionth
    let (lo, hi) = cut.sup_approx(&rat(1, 1_000_000_000), 4096).unwrap();
    println!("sup in [{}, {}]", format_rat(&lo), format_rat(&hi));

    // x^2 - 2 changes sign on [1, 2] yet has no rational root there
    let report = ivp_failure_witness(&parse_poly("x^2 - 2").unwrap(), &int(1), &int(2));
    println!("{report}");
}
