//! The exponent-doubling automorphism, the subring R of series with no
//! negative-exponent part beyond order 0, and the infinite prime of R.
//!
//! R consists of exact series whose exponents are all <= 0. The series
//! `1 + t^(-1) + t^(-1/2) + t^(-1/3) + ...` (finitely many terms here) lies
//! in R and is prime there, yet its square root exists in the ambient
//! series field and picks up no exponent <= 0 beyond those allowed, so R is
//! far from integrally closed.

use ofl::rat::int;
use ofl::series::{format_series, Series};

fn main() {
    let p = Series::pitteloud_prime(6);
    println!("prime p   = {}", format_series(&p));
    println!("p in R    = {}", p.is_in_subring_r());

    // A doubles every exponent: a ring automorphism of the series field
    let doubled = p.automorphism_double();
    println!("A(p)      = {}", format_series(&doubled));
    assert_eq!(doubled.automorphism_halve(), p);

    // fixed points of A among finite-support series are the constants
    let c = Series::constant(int(7));
    assert_eq!(c.automorphism_double(), c);

    // the square root leaves R: it has visible terms at positive exponents
    let root = p.sqrt(&int(2)).unwrap();
    println!("sqrt(p)   = {}", format_series(&root));
    println!("sqrt in R = {}", root.is_in_subring_r());
    let squared = root.mul(&root);
    println!("sqrt(p)^2 = {}", format_series(&squared));
}
