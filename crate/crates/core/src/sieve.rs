//! Explicit large-sieve quantities: prime sets, group orders, exact class
//! densities mod p, V, M(L), the sieve upper bound, exponent bounds, and the
//! sifted-set counter.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cycles::CycleType;
use crate::error::{Error, Result};
use crate::lattice::{enumerate_ball, BallSpec};
use crate::matrix::charpoly_of_entries;
use crate::modp::{cycle_type_mod_p, distinct_degree_factor_degrees, PolyModP};
use crate::primes::{is_prime, mul_mod, pow_mod, primes_up_to};

/// |SL_d(F_p)| = p^{d(d-1)/2} * prod_{i=2..d} (p^i - 1).
pub fn sl_group_order(d: u32, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let mut order = pb.clone().pow(d * (d - 1) / 2);
    for i in 2..=d {
        order *= pb.clone().pow(i) - BigInt::one();
    }
    order
}

/// Sieve support configuration: primes <= prime_bound minus an excluded set;
/// the ideal set is square-free products of up to max_ideal_factors of them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SieveParams {
    pub prime_bound: u64,
    pub excluded: BTreeSet<u64>,
    pub max_ideal_factors: usize,
}

impl SieveParams {
    pub fn new(prime_bound: u64, excluded: BTreeSet<u64>, max_ideal_factors: usize) -> Self {
        SieveParams {
            prime_bound,
            excluded,
            max_ideal_factors,
        }
    }
}

/// All primes <= L not excluded, ascending.
pub fn admissible_primes(params: &SieveParams) -> Vec<u64> {
    primes_up_to(params.prime_bound)
        .into_iter()
        .filter(|p| !params.excluded.contains(p))
        .collect()
}

/// Exact distribution of characteristic-polynomial factorization types over
/// all of SL_d(F_p).
#[derive(Debug, Clone, PartialEq)]
pub struct ClassDensities {
    pub prime: u64,
    pub per_class: BTreeMap<CycleType, BigRational>,
    /// Fraction of elements whose characteristic polynomial mod p is not
    /// squarefree (non-regular locus).
    pub singular_fraction: BigRational,
}

/// Determinant over F_p by Gaussian elimination.
fn det_mod_p(m: &mut [u64], n: usize, p: u64) -> u64 {
    let mut det = 1u64;
    for k in 0..n {
        let mut pivot = None;
        for r in k..n {
            if m[r * n + k] != 0 {
                pivot = Some(r);
                break;
            }
        }
        let Some(pi) = pivot else {
            return 0;
        };
        if pi != k {
            for c in 0..n {
                m.swap(k * n + c, pi * n + c);
            }
            det = (p - det) % p;
        }
        let pv = m[k * n + k];
        det = mul_mod(det, pv, p);
        let inv = pow_mod(pv, p - 2, p);
        for r in k + 1..n {
            let f = mul_mod(m[r * n + k], inv, p);
            if f == 0 {
                continue;
            }
            for c in k..n {
                let sub = mul_mod(f, m[k * n + c], p);
                m[r * n + c] = (m[r * n + c] + p - sub) % p;
            }
        }
    }
    det
}

/// Coefficients (lowest first) of det(x Id - M) over F_p, via sums of
/// principal minors. Division-free in the matrix entries.
fn charpoly_mod_p(mat: &[u64], d: usize, p: u64) -> Vec<u64> {
    let mut coeffs = vec![0u64; d + 1];
    coeffs[d] = 1;
    // subsets of rows/columns of each size k
    let mut subset: Vec<usize> = Vec::new();
    fn rec(
        mat: &[u64],
        d: usize,
        p: u64,
        k: usize,
        start: usize,
        subset: &mut Vec<usize>,
        acc: &mut u64,
    ) {
        if subset.len() == k {
            let m = subset.len();
            let mut sub = vec![0u64; m * m];
            for (i, &r) in subset.iter().enumerate() {
                for (j, &c) in subset.iter().enumerate() {
                    sub[i * m + j] = mat[r * d + c];
                }
            }
            *acc = (*acc + det_mod_p(&mut sub, m, p)) % p;
            return;
        }
        for i in start..d {
            subset.push(i);
            rec(mat, d, p, k, i + 1, subset, acc);
            subset.pop();
        }
    }
    for k in 1..=d {
        let mut ek = 0u64;
        subset.clear();
        rec(mat, d, p, k, 0, &mut subset, &mut ek);
        // coefficient of x^{d-k} is (-1)^k e_k
        coeffs[d - k] = if k % 2 == 0 { ek } else { (p - ek) % p };
    }
    coeffs
}

/// Factorization-type bin of one residue element.
enum TypeBin {
    Class(CycleType),
    Singular,
}

fn bin_charpoly(coeffs: &[u64], p: u64) -> Result<TypeBin> {
    let f = PolyModP::new(p, coeffs.to_vec());
    if f.degree() != coeffs.len() - 1 || !f.is_squarefree() {
        return Ok(TypeBin::Singular);
    }
    let degs = distinct_degree_factor_degrees(&f);
    Ok(TypeBin::Class(CycleType::new(degs)?))
}

/// Full enumeration of SL_d(F_p) with exact rational class densities.
pub fn class_density_exact(d: u32, p: u64, group_cap: u64) -> Result<ClassDensities> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if d < 2 {
        return Err(Error::Invalid("d must be >= 2".into()));
    }
    let order = sl_group_order(d, p);
    if order > BigInt::from(group_cap) {
        return Err(Error::ResourceCap(format!(
            "|SL_{d}(F_{p})| = {order} exceeds the enumeration cap {group_cap}"
        )));
    }
    let d = d as usize;
    let n = d * d;
    // iterate the first n-1 entries; det is linear in the last entry:
    // det = cof * x + base, so count solutions directly.
    let mut class_counts: BTreeMap<CycleType, BigInt> = BTreeMap::new();
    let mut singular = BigInt::zero();
    let mut total = BigInt::zero();
    let mut type_cache: HashMap<Vec<u64>, Option<CycleType>> = HashMap::new();
    let mut mat = vec![0u64; n];
    loop {
        // determinant as a function of the last entry
        mat[n - 1] = 0;
        let base = {
            let mut m = mat.clone();
            det_mod_p(&mut m, d, p)
        };
        let cof = {
            mat[n - 1] = 1;
            let mut m = mat.clone();
            let det1 = det_mod_p(&mut m, d, p);
            (det1 + p - base) % p
        };
        let solutions: Vec<u64> = if cof != 0 {
            // unique x with cof*x + base = 1
            let inv = pow_mod(cof, p - 2, p);
            vec![mul_mod((1 + p - base) % p, inv, p)]
        } else if base == 1 {
            (0..p).collect()
        } else {
            Vec::new()
        };
        for x in solutions {
            mat[n - 1] = x;
            let coeffs = charpoly_mod_p(&mat, d, p);
            let bin = match type_cache.get(&coeffs) {
                Some(cached) => cached.clone(),
                None => {
                    let computed = match bin_charpoly(&coeffs, p)? {
                        TypeBin::Class(c) => Some(c),
                        TypeBin::Singular => None,
                    };
                    type_cache.insert(coeffs.clone(), computed.clone());
                    computed
                }
            };
            match bin {
                Some(c) => *class_counts.entry(c).or_insert_with(BigInt::zero) += 1,
                None => singular += 1,
            }
            total += 1;
        }
        // odometer over the first n-1 entries
        let mut i = n - 1;
        loop {
            if i == 0 {
                if total != order {
                    return Err(Error::Invariant(format!(
                        "enumerated {total} elements of SL_{d}(F_{p}), expected {order}"
                    )));
                }
                let per_class = class_counts
                    .into_iter()
                    .map(|(c, cnt)| (c, BigRational::new(cnt, order.clone())))
                    .collect();
                return Ok(ClassDensities {
                    prime: p,
                    per_class,
                    singular_fraction: BigRational::new(singular, order),
                });
            }
            i -= 1;
            if mat[i] + 1 < p {
                mat[i] += 1;
                for e in mat.iter_mut().take(n - 1).skip(i + 1) {
                    *e = 0;
                }
                break;
            }
            mat[i] = 0;
        }
    }
}

/// V = sum over square-free products a of <= k listed primes (nonempty) of
/// prod_{p|a} r_p / (1 - r_p).
pub fn compute_v(densities: &[BigRational], max_ideal_factors: usize) -> Result<BigRational> {
    let one = BigRational::one();
    let mut weights = Vec::with_capacity(densities.len());
    for r in densities {
        if r.is_negative() || r >= &one {
            return Err(Error::Invalid(format!("density {r} outside [0, 1)")));
        }
        weights.push(r / (&one - r));
    }
    // elementary symmetric sums e_1..e_k of the weights
    let k = max_ideal_factors.min(weights.len()).max(1);
    let mut e = vec![BigRational::zero(); k + 1];
    e[0] = BigRational::one();
    for w in &weights {
        for j in (1..=k).rev() {
            let add = &e[j - 1] * w;
            e[j] += add;
        }
    }
    Ok(e[1..=k].iter().sum())
}

/// Outward-rounded upper bound for M(L), with the accumulated rounding slack.
#[derive(Debug, Clone, PartialEq)]
pub struct MBound {
    /// Rational upper bound on M (square roots rounded outward).
    pub upper: BigRational,
    /// Total outward-rounding slack: M >= upper - error.
    pub error: BigRational,
}

/// sqrt(n) bracketed from above at 2^-64 resolution.
fn sqrt_upper(n: &BigInt) -> (BigRational, BigRational) {
    debug_assert!(!n.is_negative());
    let scaled: BigInt = n << 128;
    let root = scaled.sqrt();
    let denom: BigInt = BigInt::one() << 64;
    let upper = BigRational::new(root + BigInt::one(), denom.clone());
    let err = BigRational::new(BigInt::one(), denom);
    (upper, err)
}

/// M(L) = max over ideals a of sum over ideals b of
/// |Y_[a,b]| * |Y_a|^{1/2} * |Y_b|^{1/2}, ideal set = nonempty square-free
/// products of <= k of the given primes.
pub fn compute_m(orders: &[(u64, BigInt)], max_ideal_factors: usize) -> Result<MBound> {
    let n = orders.len();
    if n == 0 {
        return Ok(MBound {
            upper: BigRational::zero(),
            error: BigRational::zero(),
        });
    }
    if n > 20 {
        return Err(Error::ResourceCap(format!(
            "ideal-set enumeration over {n} primes is capped at 20"
        )));
    }
    let k = max_ideal_factors.max(1);
    let mut ideals: Vec<u32> = Vec::new(); // bitmasks over the prime list
    for mask in 1u32..(1 << n) {
        if (mask.count_ones() as usize) <= k {
            ideals.push(mask);
        }
    }
    let y = |mask: u32| -> BigInt {
        let mut v = BigInt::one();
        for (i, (_, ord)) in orders.iter().enumerate() {
            if mask & (1 << i) != 0 {
                v *= ord;
            }
        }
        v
    };
    let mut best: Option<MBound> = None;
    for &a in &ideals {
        let ya = y(a);
        let mut sum = BigRational::zero();
        let mut err = BigRational::zero();
        for &b in &ideals {
            let yb = y(b);
            let ylcm = y(a | b);
            let (s, se) = sqrt_upper(&(&ya * &yb));
            sum += BigRational::from(ylcm.clone()) * &s;
            err += BigRational::from(ylcm) * se;
        }
        let better = match &best {
            None => true,
            Some(cur) => sum > cur.upper,
        };
        if better {
            best = Some(MBound { upper: sum, error: err });
        }
    }
    Ok(best.expect("nonempty ideal set"))
}

/// (N_T + C * N_T^{1-rho} * M) / V.
pub fn sieve_upper_bound(n_t: f64, fitted_c: f64, rho: f64, m: f64, v: f64) -> Result<f64> {
    if v <= 0.0 {
        return Err(Error::Invalid("V must be positive".into()));
    }
    Ok((n_t + fitted_c * n_t.powf(1.0 - rho) * m) / v)
}

/// The sieve support cut N_T^{rho/(3 dim + 1)}.
pub fn choose_l(n_t: f64, rho: f64, dim_g: u32) -> f64 {
    n_t.powf(rho / (3.0 * dim_g as f64 + 1.0))
}

/// Configuration inputs for the exponent formulas. The Holder exponent a and
/// the integrability surrogate two_ne are never computed, only supplied.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExponentInputs {
    /// Holder exponent of the height balls, in (0, 1].
    pub a: BigRational,
    /// [F:Q]; fixed to 1 in scope.
    pub deg_f: u32,
    /// dim SL_d = d^2 - 1.
    pub dim_g: u32,
    /// 2 n_e(p_S), or the bi-invariant replacement p_S.
    pub two_ne: u32,
}

impl ExponentInputs {
    pub fn new(a: BigRational, deg_f: u32, dim_g: u32, two_ne: u32) -> Result<Self> {
        if !a.is_positive() || a > BigRational::one() {
            return Err(Error::Invalid("Holder exponent a must lie in (0, 1]".into()));
        }
        if deg_f == 0 || dim_g == 0 || two_ne == 0 {
            return Err(Error::Invalid("deg_f, dim_g, two_ne must be positive".into()));
        }
        Ok(ExponentInputs {
            a,
            deg_f,
            dim_g,
            two_ne,
        })
    }
}

/// Suprema of the admissible exponents; any strictly smaller value works.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentBounds {
    pub rho_sup: BigRational,
    pub delta_sup: BigRational,
    pub sigma_sup: BigRational,
}

/// rho_sup = a / ((a + deg_F * dim_G) * two_ne),
/// delta_sup = rho_sup / (3 dim_G + 1), sigma_sup = rho_sup / dim_G.
pub fn exponent_bounds(inputs: &ExponentInputs) -> ExponentBounds {
    let dim = BigRational::from(BigInt::from(inputs.dim_g));
    let deg = BigRational::from(BigInt::from(inputs.deg_f));
    let two_ne = BigRational::from(BigInt::from(inputs.two_ne));
    let rho_sup = &inputs.a / ((&inputs.a + deg * &dim) * two_ne);
    let delta_sup =
        &rho_sup / (BigRational::from(BigInt::from(3u32)) * &dim + BigRational::one());
    let sigma_sup = &rho_sup / &dim;
    ExponentBounds {
        rho_sup,
        delta_sup,
        sigma_sup,
    }
}

/// Result of a sifted-set count over a ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SiftedCounts {
    /// Elements for which no admissible prime exhibits the class.
    pub sifted: u64,
    /// Elements with at least one witness prime for the class.
    pub exhibiting: u64,
    pub n_t: u64,
}

/// Count ball elements gamma such that no admissible prime p <= L gives
/// cycle_type_mod_p(charpoly(gamma), p) = class. Primes where the reduction
/// is not squarefree carry no information and are skipped per element.
pub fn sifted_count(
    spec: &BallSpec,
    class: &CycleType,
    params: &SieveParams,
    enum_cap: u64,
) -> Result<SiftedCounts> {
    if class.total() as usize != spec.dim() {
        return Err(Error::Invalid(format!(
            "class {class} is not a partition of d = {}",
            spec.dim()
        )));
    }
    let primes = admissible_primes(params);
    let dim = spec.dim();
    let mut sifted = 0u64;
    let mut exhibiting = 0u64;
    let mut inner_err: Option<Error> = None;
    let stats = enumerate_ball(spec, enum_cap, &mut |entries| {
        if inner_err.is_some() {
            return;
        }
        let f = charpoly_of_entries(entries, dim);
        let mut found = false;
        for &p in &primes {
            match cycle_type_mod_p(&f, p) {
                Ok(Some(t)) if &t == class => {
                    found = true;
                    break;
                }
                Ok(_) => {}
                Err(e) => {
                    inner_err = Some(e);
                    return;
                }
            }
        }
        if found {
            exhibiting += 1;
        } else {
            sifted += 1;
        }
    })?;
    if let Some(e) = inner_err {
        return Err(e);
    }
    Ok(SiftedCounts {
        sifted,
        exhibiting,
        n_t: stats.count,
    })
}

/// Serializable sieve evaluation; field names are part of the JSON contract.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SieveReport {
    /// Exact rational V, as "p/q".
    pub v: String,
    /// Outward-rounded rational upper bound for M(L), as "p/q".
    pub m: String,
    pub n_t: u64,
    /// Rational rho used, as "p/q".
    pub rho: String,
    pub fitted_c: f64,
    pub bound: f64,
    pub empirical_sifted: u64,
    pub prime_bound: u64,
    pub class: String,
}

pub fn rational_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Brute-force |SL_d(F_p)| by scanning all matrices.
    fn brute_group_order(d: usize, p: u64) -> u64 {
        let n = d * d;
        let total = (p as u128).pow(n as u32);
        let mut count = 0u64;
        for idx in 0..total {
            let mut mat = vec![0u64; n];
            let mut rest = idx;
            for e in mat.iter_mut() {
                *e = (rest % p as u128) as u64;
                rest /= p as u128;
            }
            if det_mod_p(&mut mat.clone(), d, p) == 1 {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn group_order_formula_matches_brute_force() {
        for (d, p, expect) in [(2u32, 2u64, 6u64), (2, 3, 24), (2, 5, 120), (3, 2, 168)] {
            assert_eq!(sl_group_order(d, p), BigInt::from(expect));
            assert_eq!(brute_group_order(d as usize, p), expect);
        }
    }

    #[test]
    fn admissible_prime_lists() {
        let params = SieveParams::new(20, [2u64, 3].into_iter().collect(), 1);
        assert_eq!(admissible_primes(&params), vec![5, 7, 11, 13, 17, 19]);
        let empty = SieveParams::new(2, [2u64].into_iter().collect(), 1);
        assert!(admissible_primes(&empty).is_empty());
        let all = SieveParams::new(1000, BTreeSet::new(), 1);
        assert_eq!(admissible_primes(&all).len(), 168);
    }

    #[test]
    fn class_densities_sl2_f5() {
        let cd = class_density_exact(2, 5, 1_000_000).unwrap();
        let total: BigRational =
            cd.per_class.values().sum::<BigRational>() + &cd.singular_fraction;
        assert_eq!(total, BigRational::one());
        let split = CycleType::new(vec![1, 1]).unwrap();
        let inert = CycleType::new(vec![2]).unwrap();
        // exact values from the 120-element enumeration: 30 split, 40 inert
        assert_eq!(cd.per_class[&split], rat(1, 4));
        assert_eq!(cd.per_class[&inert], rat(1, 3));
        assert_eq!(cd.singular_fraction, rat(5, 12));
        let half = rat(1, 2);
        let tol = rat(2, 5);
        assert!((cd.per_class[&split].clone() - &half).abs() <= tol);
        assert!((cd.per_class[&inert].clone() - &half).abs() <= tol);
    }

    #[test]
    fn compute_v_closed_forms() {
        // one prime, r = 1/2, k = 1 -> V = 1
        assert_eq!(compute_v(&[rat(1, 2)], 1).unwrap(), rat(1, 1));
        // two primes, k = 1 -> sum of weights
        let r1 = rat(1, 3);
        let r2 = rat(1, 4);
        let w1 = &r1 / &(BigRational::one() - &r1);
        let w2 = &r2 / &(BigRational::one() - &r2);
        assert_eq!(compute_v(&[r1.clone(), r2.clone()], 1).unwrap(), &w1 + &w2);
        // k = 2 adds the product term
        assert_eq!(
            compute_v(&[r1, r2], 2).unwrap(),
            &w1 + &w2 + &w1 * &w2
        );
        assert!(compute_v(&[rat(1, 1)], 1).is_err());
    }

    #[test]
    fn compute_m_single_prime() {
        // single prime, k=1: M = |Y_p|^2 exactly (sqrt of a perfect square)
        let y5 = sl_group_order(2, 5);
        let m = compute_m(&[(5, y5.clone())], 1).unwrap();
        let exact = BigRational::from(&y5 * &y5);
        assert!(m.upper.clone() - &exact >= BigRational::zero());
        assert!(m.upper - exact <= m.error);
    }

    #[test]
    fn compute_m_two_primes_closed_form() {
        // L = {3, 5}, d = 2, k = 1: M = 14400 + 2880 sqrt(2880)
        let y3 = sl_group_order(2, 3);
        let y5 = sl_group_order(2, 5);
        let m = compute_m(&[(3, y3), (5, y5)], 1).unwrap();
        let expected = 14400.0 + 2880.0 * 2880.0f64.sqrt();
        let got = rational_f64(&m.upper);
        assert!((got - expected).abs() < 1e-6, "{got} vs {expected}");
        assert!(got >= expected); // outward rounding
    }

    #[test]
    fn m_monotone_in_prime_set() {
        let y3 = sl_group_order(2, 3);
        let y5 = sl_group_order(2, 5);
        let y7 = sl_group_order(2, 7);
        let m2 = compute_m(&[(3, y3.clone()), (5, y5.clone())], 1).unwrap();
        let m3 = compute_m(&[(3, y3), (5, y5), (7, y7)], 1).unwrap();
        assert!(m3.upper >= m2.upper);
    }

    #[test]
    fn upper_bound_shapes() {
        let b = sieve_upper_bound(1e6, 1.0, 0.1, 1e3, 4.0).unwrap();
        let expect = (1e6 + 1e6f64.powf(0.9) * 1e3) / 4.0;
        assert!((b - expect).abs() < 1e-6);
        assert!(b >= 1e6 / 4.0);
        assert_eq!(sieve_upper_bound(1e6, 0.0, 0.1, 1e3, 4.0).unwrap(), 1e6 / 4.0);
        assert!(sieve_upper_bound(1.0, 1.0, 0.1, 1.0, 0.0).is_err());
    }

    #[test]
    fn choose_l_values() {
        let v = choose_l(2f64.powi(80), 0.125, 3);
        assert!((v - 2.0).abs() < 1e-9);
        assert_eq!(choose_l(100.0, 0.0, 3), 1.0);
        assert!(choose_l(1e6, 0.1, 3) <= choose_l(1e9, 0.1, 3));
    }

    #[test]
    fn exponent_formulas_from_intro() {
        // d = 2: rho = 1/8, delta = 1/80, sigma = 1/24
        let b = exponent_bounds(&ExponentInputs::new(BigRational::one(), 1, 3, 2).unwrap());
        assert_eq!(b.rho_sup, rat(1, 8));
        assert_eq!(b.delta_sup, rat(1, 80));
        assert_eq!(b.sigma_sup, rat(1, 24));
        // d = 4 (dim 15, two_ne 8): delta = 1/5888 = d^-3 (6d^2-4)^-1
        let b4 = exponent_bounds(&ExponentInputs::new(BigRational::one(), 1, 15, 8).unwrap());
        assert_eq!(b4.delta_sup, rat(1, 5888));
        assert_eq!(rat(1, 5888), rat(1, 64 * 92));
        // doubling two_ne halves rho_sup
        let b2 = exponent_bounds(&ExponentInputs::new(BigRational::one(), 1, 3, 4).unwrap());
        assert_eq!(b2.rho_sup * BigRational::from(BigInt::from(2)), b.rho_sup);
    }

    #[test]
    fn sifted_tiny_ball() {
        let spec = BallSpec::new(2, rat(9, 4)).unwrap();
        let class = CycleType::new(vec![1, 1]).unwrap();
        let params = SieveParams::new(10, BTreeSet::new(), 1);
        let out = sifted_count(&spec, &class, &params, 1000).unwrap();
        // +-Id never squarefree; +-J hits (1,1) at p=5
        assert_eq!(out.sifted, 2);
        assert_eq!(out.exhibiting, 2);
        assert_eq!(out.n_t, 4);
        // empty prime list: vacuous condition
        let none = SieveParams::new(1, BTreeSet::new(), 1);
        let all = sifted_count(&spec, &class, &none, 1000).unwrap();
        assert_eq!(all.sifted, 4);
    }
}
