//! End-to-end acceptance checks. Each test prints one pass/fail line
//! (visible with `cargo test -- --nocapture`); a failed assertion marks the
//! criterion failed.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use slgalois::cycles::CycleType;
use slgalois::experiments::{census_genericity, equidist_report, fit_exponent};
use slgalois::galois::{
    classical_criterion, exact_oracle_small_degree, jordan_certificate, GaloisVerdict,
};
use slgalois::lattice::{congruence_fiber_counts, count_ball, enumerate_ball, BallSpec};
use slgalois::matrix::det_exact;
use slgalois::poly::{discriminant, IntPolynomial};
use slgalois::sieve::{
    compute_m, compute_v, exponent_bounds, rational_f64, sifted_count, sl_group_order,
    ExponentInputs, SieveParams,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

struct Outcome(&'static str);

impl Outcome {
    fn check(self, ok: bool, detail: &str) {
        if ok {
            println!("{}: PASS", self.0);
        } else {
            println!("{}: FAIL ({detail})", self.0);
            panic!("{}: FAIL ({detail})", self.0);
        }
    }
}

#[test]
fn criterion_1_exponent_formulas() {
    let o = Outcome("criterion 1 (exponent formulas)");
    // d = 2: dim 3, two_ne = 2 gives delta_sup = 1/80
    let b2 = exponent_bounds(&ExponentInputs::new(rat(1, 1), 1, 3, 2).unwrap());
    let d2_ok = b2.delta_sup == rat(1, 80);
    // even d with two_ne = 2d: delta_sup = 1 / (d^3 (6 d^2 - 4))
    let mut even_ok = true;
    for d in [4i64, 6, 8] {
        let dim = (d * d - 1) as u32;
        let b = exponent_bounds(&ExponentInputs::new(rat(1, 1), 1, dim, 2 * d as u32).unwrap());
        let expect = rat(1, d * d * d * (6 * d * d - 4));
        even_ok &= b.delta_sup == expect;
    }
    let d4 = exponent_bounds(&ExponentInputs::new(rat(1, 1), 1, 15, 8).unwrap());
    o.check(
        d2_ok && even_ok && d4.delta_sup == rat(1, 5888),
        &format!(
            "delta_2 = {}, delta_4 = {}",
            rational_f64(&b2.delta_sup),
            rational_f64(&d4.delta_sup)
        ),
    );
}

/// Exhaustive det-and-norm scan: every d x d integer matrix with entries in
/// [-B, B], kept when the norm fits and det = 1.
fn brute_ball(d: usize, t2: &BigRational) -> Vec<Vec<i64>> {
    let bound = {
        let mut b = 0i64;
        while BigRational::from(BigInt::from((b + 1) * (b + 1))) <= *t2 {
            b += 1;
        }
        b
    };
    let n = d * d;
    let mut out = Vec::new();
    let mut entries = vec![-bound; n];
    loop {
        let norm: BigInt = entries.iter().map(|&e| BigInt::from(e * e)).sum();
        if BigRational::from(norm) <= *t2 && det_exact(&entries, d) == BigInt::one() {
            out.push(entries.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if entries[i] < bound {
                entries[i] += 1;
                for e in entries.iter_mut().skip(i + 1) {
                    *e = -bound;
                }
                break;
            }
        }
    }
}

#[test]
fn criterion_2_brute_force_ball_equivalence() {
    let o = Outcome("criterion 2 (brute-force ball equivalence)");
    let cases: Vec<(usize, BigRational)> = vec![
        (2, rat(2, 1)),
        (2, rat(9, 4)),
        (2, rat(25, 1)),
        (2, rat(100, 1)),
        (3, rat(3, 1)),
        (3, rat(6, 1)),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for (d, t2) in cases {
        let spec = BallSpec::new(d, t2.clone()).unwrap();
        let mut got: Vec<Vec<i64>> = Vec::new();
        enumerate_ball(&spec, 10_000_000, &mut |e| got.push(e.to_vec())).unwrap();
        let mut expect = brute_ball(d, &t2);
        let mut got_sorted = got.clone();
        got_sorted.sort();
        expect.sort();
        // exact multiset equality, and no duplicates from the enumerator
        let mut dedup = got_sorted.clone();
        dedup.dedup();
        if got_sorted != expect || dedup.len() != got_sorted.len() {
            ok = false;
            detail = format!("mismatch at d = {d}, T^2 = {t2}");
            break;
        }
    }
    o.check(ok, &detail);
}

#[test]
fn criterion_3_certificate_soundness_sweep() {
    let o = Outcome("criterion 3 (certificate soundness sweep)");
    let mut mismatches = 0u64;
    let mut scanned = 0u64;
    for a in -10i64..=10 {
        for b in -10i64..=10 {
            for c in -10i64..=10 {
                let f = IntPolynomial::from_i64(&[1, a, b, c]).unwrap();
                if discriminant(&f).unwrap().is_zero() {
                    continue;
                }
                scanned += 1;
                let oracle = exact_oracle_small_degree(&f).unwrap();
                if !oracle.is_proper() {
                    continue;
                }
                let jordan = jordan_certificate(&f, 1000).unwrap();
                let classical = classical_criterion(&f, 1000).unwrap();
                if jordan.is_full() || classical.is_full() {
                    mismatches += 1;
                }
            }
        }
    }
    o.check(
        mismatches == 0 && scanned > 8000,
        &format!("{mismatches} mismatches over {scanned} squarefree cubics"),
    );
}

#[test]
fn criterion_4_class_densities() {
    let o = Outcome("criterion 4 (class densities mod p)");
    let split = CycleType::new(vec![1, 1]).unwrap();
    let inert = CycleType::new(vec![2]).unwrap();
    let mut ok = true;
    let mut detail = String::new();
    for p in [5u64, 7, 11, 13, 17, 19, 23, 29, 31] {
        let cd = slgalois::sieve::class_density_exact(2, p, 10_000_000).unwrap();
        let half = rat(1, 2);
        let tol = rat(2, p as i64);
        for class in [&split, &inert] {
            let r = cd.per_class.get(class).cloned().unwrap_or_else(BigRational::zero);
            if (r - &half).abs() > tol {
                ok = false;
                detail = format!("class {class} off by more than 2/{p}");
            }
        }
        if cd.singular_fraction > rat(4, p as i64) {
            ok = false;
            detail = format!("singular fraction above 4/{p}");
        }
    }
    o.check(ok, &detail);
}

#[test]
fn criterion_5_equidistribution_trend() {
    let o = Outcome("criterion 5 (equidistribution trend)");
    let small = equidist_report(2, &rat(25, 1), 3, 10_000_000, 10_000_000).unwrap();
    let large = equidist_report(2, &rat(400, 1), 3, 10_000_000, 10_000_000).unwrap();
    // fibers sum to N_T exactly
    let mut sums_ok = true;
    for t in [rat(25, 1), rat(400, 1)] {
        let spec = BallSpec::from_radius(2, t).unwrap();
        let table = congruence_fiber_counts(&spec, 3, 10_000_000, 10_000_000).unwrap();
        let fiber_sum: u64 = table.counts.values().sum();
        let n_t = count_ball(&spec, 10_000_000).unwrap();
        sums_ok &= fiber_sum == table.total && table.total == n_t;
    }
    o.check(
        large.max_rel_dev < small.max_rel_dev && sums_ok,
        &format!(
            "max_rel_dev T=400: {}, T=25: {}, sums_ok: {sums_ok}",
            large.max_rel_dev, small.max_rel_dev
        ),
    );
}

#[test]
fn criterion_6_genericity_decay() {
    let o = Outcome("criterion 6 (genericity decay)");
    let ts: Vec<BigRational> = [50, 100, 200, 400, 800].iter().map(|&t| rat(t, 1)).collect();
    let rows = census_genericity(2, &ts, 200, 10_000_000, false).unwrap();
    let t_of = |row: &slgalois::experiments::CensusRow| -> f64 {
        let (n, d) = row.t.split_once('/').unwrap();
        n.parse::<f64>().unwrap() / d.parse::<f64>().unwrap()
    };
    let total: Vec<(f64, f64)> = rows.iter().map(|r| (t_of(r), r.n_t as f64)).collect();
    let exceptional: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (t_of(r), (r.non_regular + r.certified_proper) as f64))
        .collect();
    let (slope_total, _) = fit_exponent(&total).unwrap();
    let (slope_exc, _) = fit_exponent(&exceptional).unwrap();
    o.check(
        (1.85..=2.15).contains(&slope_total) && slope_total - slope_exc >= 0.5,
        &format!("N_T slope {slope_total}, exceptional slope {slope_exc}"),
    );
}

#[test]
fn criterion_7_sieve_formula_oracles() {
    let o = Outcome("criterion 7 (sieve formula oracles)");
    // V, one prime with density r: V = r / (1 - r)
    let v1 = compute_v(&[rat(1, 3)], 1).unwrap();
    // V, two primes, ideals up to two factors: r1/(1-r1) + r2/(1-r2) + product
    let v2 = compute_v(&[rat(1, 4), rat(1, 3)], 2).unwrap();
    let v2_expect = rat(1, 3) + rat(1, 2) + rat(1, 3) * rat(1, 2);
    // M, one prime: the only ideal is (p), so M = |Y_p| * sqrt(|Y_p|^2)
    let y5 = sl_group_order(2, 5);
    let m1 = compute_m(&[(5, y5.clone())], 1).unwrap();
    let m1_expect = BigRational::from(&y5 * &y5);
    let m1_ok = m1.upper.clone() - m1.error.clone() <= m1_expect && m1_expect <= m1.upper;
    // M, two primes (orders 6 and 120), k = 2: the maximizing ideal is (10)
    // and M = 720 (sqrt(4320) + sqrt(86400) + 720)
    let y2 = sl_group_order(2, 2);
    let m2 = compute_m(&[(2, y2), (5, y5)], 2).unwrap();
    let m2_expect = 720.0 * (4320.0f64.sqrt() + 86400.0f64.sqrt() + 720.0);
    let m2_val = rational_f64(&m2.upper);
    let m2_err = rational_f64(&m2.error);
    let m2_ok = m2_val >= m2_expect - 1e-6 && m2_val - m2_err <= m2_expect + 1e-6;
    o.check(
        v1 == rat(1, 2) && v2 == v2_expect && m1_ok && m2_ok,
        &format!("V1 = {v1}, V2 = {v2}, M2 = {m2_val} vs {m2_expect}"),
    );
}

#[test]
fn criterion_8_sifted_monotonicity_and_consistency() {
    let o = Outcome("criterion 8 (sifted monotonicity and consistency)");
    let spec = BallSpec::new(2, rat(2500, 1)).unwrap();
    let mut ok = true;
    let mut detail = String::new();
    for class in [CycleType::new(vec![2]).unwrap(), CycleType::new(vec![1, 1]).unwrap()] {
        let mut prev: Option<u64> = None;
        for l in [2u64, 3, 5, 7, 11, 13] {
            let params = SieveParams::new(l, BTreeSet::new(), 1);
            let counts = sifted_count(&spec, &class, &params, 10_000_000).unwrap();
            if counts.sifted + counts.exhibiting != counts.n_t {
                ok = false;
                detail = format!("partition failure for class {class} at L = {l}");
            }
            if let Some(p) = prev {
                if counts.sifted > p {
                    ok = false;
                    detail = format!("sifted count grew for class {class} at L = {l}");
                }
            }
            prev = Some(counts.sifted);
        }
    }
    o.check(ok, &detail);
}
