//! Two more pathologies of continuous maps on rational intervals.
//!
//! The first map on [0, 1] is continuous yet unbounded, not uniformly
//! continuous, and its range accumulates at 0 without containing it. The
//! trick: slice [0, 1] along nets converging to two irrational points and
//! stretch the n-th slices onto [n+1, n+2) and [-1/(n+1), -1/(n+2)).
//!
//! The second map fixes c = 1/2 and sends interior points to interior
//! points of the image, yet is not open: the image of any neighborhood of
//! c has c on its boundary.

use ofl::cex::PiecewiseLinearMap;
use ofl::rat::{format_rat, int, rat};

fn main() {
    let m = PiecewiseLinearMap::theorem21i(int(0), int(1)).unwrap();
    println!("f(0)   = {}", format_rat(&m.eval(&int(0)).unwrap()));
    println!("f(1/2) = {}", format_rat(&m.eval(&rat(1, 2)).unwrap()));
    println!("f(1)   = {}", format_rat(&m.eval(&int(1)).unwrap()));

    // deep in the lower slices the values blow up
    let x = m.lower_net().term(5000);
    println!("f(a_5000) = {}", format_rat(&m.eval(&x).unwrap()));
    // deep in the upper slices they crawl toward 0 from below
    let x = m.upper_net().term(5000);
    println!("f(b_5000) = {}", format_rat(&m.eval(&x).unwrap()));

    let report = m.probe_pathologies(500, 7).unwrap();
    print!("{report}");

    println!();
    let m = PiecewiseLinearMap::theorem21ii(int(0), int(1), rat(1, 2)).unwrap();
    println!("g(1/2)    = {}", format_rat(&m.eval(&rat(1, 2)).unwrap()));
    // the topmost slice above c is spread over [0, 1/2) instead
    println!("g(1)      = {}", format_rat(&m.eval(&int(1)).unwrap()));
    println!("g(95/100) = {}", format_rat(&m.eval(&rat(95, 100)).unwrap()));
    let report = m.probe_pathologies(500, 7).unwrap();
    print!("{report}");
}
