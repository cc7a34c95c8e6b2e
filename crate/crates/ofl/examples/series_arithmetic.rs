//! Tour of the truncated generalized power series field: rational
//! exponents, Cauchy products, leading-term order, division, square roots,
//! and how truncation orders propagate.

use ofl::rat::{int, rat};
use ofl::series::{format_series, parse_series, ComparisonResult, Series};

fn show(label: &str, s: &Series) {
    println!("{label:>28}: {}", format_series(s));
}

fn main() {
    // literals parse and print in a canonical form
    let a = parse_series("2 + t^(1/2) - 3*t").unwrap();
    let b = parse_series("t^(-1) + 1 + O(t^2)").unwrap();
    show("a", &a);
    show("b (truncated)", &b);

    // products keep every coefficient that is certain: the truncation of
    // the result is min over trunc + other's leading exponent
    show("a*b", &a.mul(&b));

    // t is a positive infinitesimal, so t^(-1) dominates any constant
    let big = Series::char_fn(int(-1));
    let thousand = Series::constant(int(1000));
    assert_eq!(big.compare(&thousand), ComparisonResult::Greater);
    println!("{:>28}: t^(-1) > 1000", "order");

    // division is multiplication by the inverse at a working order
    let geom = Series::one().sub(&Series::char_fn(int(1)));
    let inv = geom.invert(&int(6)).unwrap();
    show("1/(1-t) at order 6", &inv);
    show("check (1-t)*inverse", &geom.mul(&inv));

    // inverses of series with fractional leading exponents are exact about
    // how far they are trustworthy
    let s = parse_series("2 + t^(1/2)").unwrap();
    show("invert(2 + t^(1/2))", &s.invert(&rat(3, 2)).unwrap());

    // square roots by the binomial series; the square returns the input up
    // to the propagated truncation
    let one_plus_t = parse_series("1 + t").unwrap();
    let root = one_plus_t.sqrt(&int(5)).unwrap();
    show("sqrt(1+t)", &root);
    show("sqrt(1+t)^2", &root.mul(&root));

    // a leading coefficient that is not a rational square is an error: the
    // coefficient field is not real closed
    let err = parse_series("2*t").unwrap().sqrt(&int(4)).unwrap_err();
    println!("{:>28}: {err}", "sqrt(2*t)");
}
