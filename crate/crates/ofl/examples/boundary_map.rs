//! A continuous injection of [0, 1] into itself that sends the interior
//! point 1/2 to a boundary point of its image: every other point maps
//! strictly above 1/2. The construction slices the interval along nets
//! converging to 1/2, with slice boundaries at irrational gap points, and
//! transports each slice affinely into a slice above 1/2.

use ofl::cex::PiecewiseLinearMap;
use ofl::rat::{format_rat, int, pow2, rat};

fn main() {
    let c = rat(1, 2);
    let map = PiecewiseLinearMap::theorem12(int(0), int(1), c.clone()).unwrap();

    println!("f(1/2) = {}", format_rat(&map.eval(&c).unwrap()));
    for x in [int(0), rat(1, 4), rat(49, 100), rat(51, 100), int(1)] {
        let y = map.eval(&x).unwrap();
        println!("f({}) = {}", format_rat(&x), format_rat(&y));
    }

    // points arbitrarily close to the fixed point still work: locating the
    // slice deepens the segment cache on demand
    let close = &c - pow2(-20);
    let y = map.eval(&close).unwrap();
    println!("f(1/2 - 2^-20) = {}", format_rat(&y));
    println!("materialized segments: {}", map.materialized_segments().len());

    // every committed image interval sits inside its assigned slice above c
    println!("segment images verified: {}", map.verify_segment_images());

    // the sampling probe: no collisions, everything above c
    let report = map.probe_pathologies(2000, 7).unwrap();
    print!("{report}");
}
