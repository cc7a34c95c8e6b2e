//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Computed values are checked against independent oracles (brute
//! force convolution, sign scans, squaring) rather than the code paths
//! under test.

use std::cmp::Ordering;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ofl::cex::PiecewiseLinearMap;
use ofl::cuts::{ivp_failure_witness, sqrt2_convergent_fn, CutSpec};
use ofl::poly::{parse_poly, IntPoly};
use ofl::rat::{int, rat, Rat};
use ofl::scott::{gamma_from_cauchy, CauchyFunctional};
use ofl::series::{parse_series, ComparisonResult, Series, Trunc};
use ofl::AlgebraicNumber;

fn verdict(id: u32, name: &str, ok: bool) {
    println!(
        "criterion {id:2} {}: {name}",
        if ok { "pass" } else { "FAIL" }
    );
    assert!(ok, "criterion {id} failed: {name}");
}

fn random_rat(rng: &mut ChaCha8Rng, num_abs: i64, den_max: i64) -> Rat {
    let n = rng.gen_range(-num_abs..=num_abs);
    let d = rng.gen_range(1..=den_max);
    rat(n, d)
}

/// Exact series with at most 6 terms, exponents p/q with |p| <= 10, q <= 6.
fn random_series(rng: &mut ChaCha8Rng) -> Series {
    let n_terms = rng.gen_range(0..=6);
    let terms: Vec<(Rat, Rat)> = (0..n_terms)
        .map(|_| {
            let e = random_rat(rng, 10, 6);
            let c = random_rat(rng, 20, 10);
            (e, c)
        })
        .collect();
    Series::from_terms(terms, Trunc::Exact)
}

fn random_nonzero_series(rng: &mut ChaCha8Rng) -> Series {
    loop {
        let s = random_series(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

#[test]
fn c01_ring_laws_and_order() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let pool: Vec<Series> = (0..1000).map(|_| random_series(&mut rng)).collect();
    let zero = Series::zero();
    let one = Series::one();
    let mut ok = true;
    for w in pool.chunks(3) {
        let (a, b, c) = (&w[0], &w[1 % w.len()], &w[2 % w.len()]);
        ok &= a.add(b).add(c) == a.add(&b.add(c));
        ok &= a.add(b) == b.add(a);
        ok &= a.mul(b) == b.mul(a);
        ok &= a.mul(b).mul(c) == a.mul(&b.mul(c));
        ok &= a.mul(&b.add(c)) == a.mul(b).add(&a.mul(c));
        ok &= one.mul(a) == *a;
        ok &= a.add(&a.neg()) == zero;
        // order compatibility: translation invariance and positive products
        if a.compare(b) == ComparisonResult::Less {
            ok &= a.add(c).compare(&b.add(c)) == ComparisonResult::Less;
        }
        if a.compare(&zero) == ComparisonResult::Greater
            && b.compare(&zero) == ComparisonResult::Greater
        {
            ok &= a.mul(b).compare(&zero) == ComparisonResult::Greater;
        }
    }
    ok &= started.elapsed().as_secs() < 10;
    verdict(1, "ring laws and order compatibility on 1000 series", ok);
}

#[test]
fn c02_invert_and_sqrt_oracles() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut ok = true;
    for _ in 0..500 {
        let a = random_nonzero_series(&mut rng);
        // three relative orders past the lead: random exponents can sit far
        // from zero, so an absolute target order is the wrong yardstick
        let order = a.lead().map(|(e, _)| e + int(3)).unwrap();
        let inv = a.invert(&order).unwrap();
        let prod = a.mul(&inv);
        ok &= matches!(
            prod.compare(&Series::one()),
            ComparisonResult::Equal | ComparisonResult::EqualUpToTruncation(_)
        );
    }
    for _ in 0..200 {
        let s = random_nonzero_series(&mut rng);
        // scaling by the leading coefficient squares it, so the root exists
        let (mu, lead) = s.lead().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let a = s.scale(&lead);
        // the root's lead sits at mu/2; three relative orders past that
        let order = mu / int(2) + int(3);
        let root = a.sqrt(&order).unwrap();
        let squared = root.mul(&root);
        ok &= matches!(
            squared.compare(&a),
            ComparisonResult::Equal | ComparisonResult::EqualUpToTruncation(_)
        );
    }
    ok &= started.elapsed().as_secs() < 30;
    verdict(2, "invert and sqrt against multiplication oracles", ok);
}

/// Brute-force convolution, written independently of Series::mul.
fn convolve_oracle(a: &Series, b: &Series) -> Vec<(Rat, Rat)> {
    let mut acc: std::collections::BTreeMap<Rat, Rat> = std::collections::BTreeMap::new();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            *acc.entry(ea + eb).or_insert_with(|| int(0)) += ca * cb;
        }
    }
    acc.into_iter().filter(|(_, c)| *c != int(0)).collect()
}

#[test]
fn c03_cauchy_product_matches_convolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut ok = true;
    for _ in 0..500 {
        let a = random_series(&mut rng);
        let b = random_series(&mut rng);
        let got = a.mul(&b);
        let want = convolve_oracle(&a, &b);
        // exact inputs: every convolution coefficient must appear verbatim
        ok &= got.terms() == want.as_slice();
        ok &= *got.trunc() == Trunc::Exact;
    }
    verdict(3, "Cauchy product equals brute-force convolution", ok);
}

#[test]
fn c04_automorphism_homomorphism_and_fixed_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut ok = true;
    for _ in 0..500 {
        let a = random_series(&mut rng);
        let b = random_series(&mut rng);
        ok &= a.add(&b).automorphism_double()
            == a.automorphism_double().add(&b.automorphism_double());
        ok &= a.mul(&b).automorphism_double()
            == a.automorphism_double().mul(&b.automorphism_double());
        ok &= a.compare(&b) == a.automorphism_double().compare(&b.automorphism_double());
        ok &= a.automorphism_double().automorphism_halve() == a;
    }
    // fixed points among small-support series over a 21-point exponent grid
    let grid: Vec<Rat> = (-10..=10).map(|p| rat(p, 2)).collect();
    assert_eq!(grid.len(), 21);
    let coeffs = [int(1), int(-1), rat(3, 2)];
    for (i, e1) in grid.iter().enumerate() {
        for c1 in &coeffs {
            let s = Series::monomial(e1.clone(), c1.clone());
            let fixed = s.automorphism_double() == s;
            ok &= fixed == (*e1 == int(0));
            for e2 in grid.iter().skip(i + 1) {
                for c2 in &coeffs {
                    let s = Series::from_terms(
                        vec![(e1.clone(), c1.clone()), (e2.clone(), c2.clone())],
                        Trunc::Exact,
                    );
                    let support_zero = s.terms().iter().all(|(e, _)| *e == int(0));
                    ok &= (s.automorphism_double() == s) == support_zero;
                }
            }
        }
    }
    verdict(4, "exponent doubling is an order homomorphism fixing only constants", ok);
}

#[test]
fn c05_prime_series_and_its_root() {
    let mut ok = true;
    for n in 1..=12u32 {
        let p = Series::pitteloud_prime(n);
        ok &= p.is_in_subring_r();
        let root = p.sqrt(&int(2)).unwrap();
        ok &= root.terms().iter().any(|(e, _)| *e > int(0));
        ok &= !root.is_in_subring_r();
        let squared = root.mul(&root);
        ok &= matches!(
            squared.compare(&p),
            ComparisonResult::Equal | ComparisonResult::EqualUpToTruncation(_)
        );
    }
    verdict(5, "prime series lies in R, its square root does not", ok);
}

/// Root-count oracle: exact sign scan over [-10, 10] at step 1/1000.
fn scan_roots(p: &IntPoly) -> u32 {
    // sign of p(k/1000) equals sign of sum c_i k^i 1000^(deg-i), an i128
    // Horner pass (|coeff| <= 10, |k| <= 10^4, deg <= 4: far below overflow)
    let coeffs: Vec<i128> = p
        .coeffs()
        .iter()
        .map(|c| i128::try_from(c.clone()).unwrap())
        .collect();
    let deg = coeffs.len() - 1;
    let eval_scaled = |k: i128| -> Ordering {
        let mut v = coeffs[deg];
        let mut scale = 1i128;
        for i in (0..deg).rev() {
            scale *= 1000;
            v = v * k + coeffs[i] * scale;
        }
        v.cmp(&0)
    };
    let mut count = 0u32;
    let mut prev = eval_scaled(-10_000);
    for k in -9_999..=10_000i128 {
        let cur = eval_scaled(k);
        if prev == Ordering::Equal {
            count += 1;
        } else if cur != Ordering::Equal && cur != prev {
            count += 1;
        }
        prev = cur;
    }
    if prev == Ordering::Equal {
        count += 1;
    }
    count
}

#[test]
fn c06_sturm_counts_match_sign_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut ok = true;
    let mut tested = 0;
    while tested < 200 {
        let degree = if rng.gen() { 3 } else { 4 };
        let coeffs: Vec<i64> = (0..=degree)
            .map(|i| {
                if i == degree {
                    // nonzero leading coefficient
                    let c = rng.gen_range(1..=10i64);
                    if rng.gen() { c } else { -c }
                } else {
                    rng.gen_range(-10..=10i64)
                }
            })
            .collect();
        let p = IntPoly::new(coeffs.iter().map(|c| BigInt::from(*c)).collect());
        if !p.is_squarefree() {
            continue;
        }
        tested += 1;
        // roots inside (-10, 10); endpoints nudged off potential roots
        let inside =
            p.count_roots_below(&rat(10_001, 1000)).unwrap()
                - p.count_roots_below(&rat(-10_001, 1000)).unwrap();
        ok &= inside == scan_roots(&p);
    }
    verdict(6, "Sturm root counts equal brute-force sign scans", ok);
}

#[test]
fn c07_sqrt2_cut_membership_and_regularity() {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let cut = CutSpec::algebraic(AlgebraicNumber::sqrt2());
    let mut ok = true;
    for _ in 0..10_000 {
        let q = random_rat(&mut rng, 4000, 2000);
        let oracle = q < int(0) || &q * &q < int(2);
        ok &= cut.contains(&q).unwrap() == oracle;
    }
    for eps in [int(1), rat(1, 1000), rat(1, 1_000_000)] {
        let w = cut.regularity_probe(&eps, 4096).unwrap();
        let inside = w.x.clone();
        let outside = &w.x + &w.epsilon;
        ok &= (inside < int(0) || &inside * &inside < int(2))
            && outside >= int(0)
            && &outside * &outside > int(2);
    }
    let tol = rat(1, 1_000_000_000);
    let (m, big) = cut.sup_approx(&tol, 4096).unwrap();
    ok &= &m * &m < int(2) && &big * &big > int(2) && &big - &m <= tol;
    verdict(7, "algebraic sqrt(2) cut: membership, regularity, sup bracket", ok);
}

#[test]
fn c08_function_cut_tracks_algebraic_cut() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let psi = CutSpec::function(sqrt2_convergent_fn(), 50);
    let mut ok = true;
    let mut probes = 0;
    while probes < 500 {
        let q = int(1) + random_rat(&mut rng, 1000, 1000).abs() / int(2);
        // keep a safe distance from sqrt(2): |q^2 - 2| > 3e-6 puts q more
        // than 1e-6 away (the derivative of squaring is < 3 near sqrt(2))
        let gap = (&q * &q - int(2)).abs();
        if gap <= rat(3, 1_000_000) {
            continue;
        }
        probes += 1;
        let oracle = &q * &q < int(2);
        ok &= psi.contains(&q).unwrap() == oracle;
    }
    let tol = rat(1, 10_000);
    let (m, big) = psi.sup_approx(&tol, 4096).unwrap();
    ok &= &m * &m < int(2) && &big * &big > int(2) && &big - &m <= tol;
    verdict(8, "function-induced cut agrees with the sqrt(2) cut", ok);
}

#[test]
fn c09_boundary_map_injective_above_fixed_point() {
    let started = Instant::now();
    let c = rat(1, 2);
    let map = PiecewiseLinearMap::theorem12(int(0), int(1), c.clone()).unwrap();
    let report = map.probe_pathologies(10_000, 7).unwrap();
    let mut ok = report.collisions == Some(0);
    ok &= report.fixed_point_ok == Some(true);
    ok &= report.all_images_above_c == Some(true);
    ok &= report.min_image.map_or(false, |m| m > c);
    ok &= report.segment_images_in_slices;
    ok &= started.elapsed().as_secs() < 20;
    verdict(9, "interior point maps to a boundary point, injectively", ok);
}

#[test]
fn c10_unbounded_map_pathologies() {
    let map = PiecewiseLinearMap::theorem21i(int(0), int(1)).unwrap();
    let report = map.probe_pathologies(1000, 7).unwrap();
    let mut ok = true;
    for k in 1..=20u32 {
        let hit = report.delta_witnesses.iter().any(|(kk, x1, x2, gap)| {
            *kk == k && (x2 - x1) < ofl::rat::pow2(-(k as i64)) && *gap >= int(1)
        });
        ok &= hit;
    }
    ok &= report
        .unbounded_witness
        .as_ref()
        .map_or(false, |(_, y)| *y > int(1000));
    // range accumulates at 0 but never attains it
    ok &= report
        .near_zero_slice
        .as_ref()
        .map_or(false, |(_, v)| v.abs() <= rat(1, 1_000_000) && *v != int(0));
    ok &= report.zero_attained == Some(false);
    ok &= report.segment_images_in_slices;
    verdict(10, "non-uniform continuity, unboundedness, non-closed range", ok);
}

#[test]
fn c11_non_open_map_keeps_interior_points_interior() {
    let c = rat(1, 2);
    let map = PiecewiseLinearMap::theorem21ii(int(0), int(1), c.clone()).unwrap();
    let report = map.probe_pathologies(1000, 7).unwrap();
    let mut ok = report.no_image_below_c == Some(true);
    ok &= report.fixed_point_ok == Some(true);
    ok &= report
        .t0_samples
        .map_or(false, |(total, hit)| total > 0 && total == hit);
    ok &= report.segment_images_in_slices;
    verdict(11, "interior goes to interior, yet the map is not open at c", ok);
}

#[test]
fn c12_cauchy_functional_limit() {
    let s0 = parse_series("2 + t").unwrap();
    let f = CauchyFunctional::inv_shift(s0);
    let exps = [int(-1), int(0), int(1), int(2)];
    let report = gamma_from_cauchy(&f, &exps, 16, 4).unwrap();
    let mut ok = report.gamma.coeff_at(&int(-1)) == int(0);
    ok &= report.gamma.coeff_at(&int(0)) == int(2);
    ok &= report.gamma.coeff_at(&int(1)) == int(1);
    ok &= report.gamma.coeff_at(&int(2)) == int(0);
    ok &= exps.iter().all(|g| report.stabilization.contains_key(g));
    let leads: Vec<&Rat> = report
        .residuals
        .iter()
        .filter_map(|(_, l)| l.as_ref())
        .collect();
    ok &= !leads.is_empty() && leads.windows(2).all(|w| w[0] < w[1]);
    verdict(12, "limit of the Cauchy functional recovers the shift", ok);
}

#[test]
fn c13_intermediate_value_failure_witness() {
    let p = parse_poly("x^2 - 2").unwrap();
    let report = ivp_failure_witness(&p, &int(1), &int(2));
    let ok = report.sign_a == -1
        && report.sign_b == 1
        && report.rational_roots_in_interval.is_empty()
        && report.witnesses_failure();
    verdict(13, "sign change without a rational root on [1, 2]", ok);
}
