//! Desk-scale reproductions: genericity census over height balls,
//! congruence equidistribution, exponent fitting, and the polynomial-model
//! comparison census.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{exact_oracle_small_degree, jordan_certificate, GaloisVerdict};
use crate::lattice::{congruence_fiber_counts, enumerate_ball, BallSpec};
use crate::matrix::{charpoly_i128, charpoly_of_entries};
use crate::poly::{discriminant, IntPolynomial};
use crate::sieve::{rational_str, sl_group_order};

/// One census row: how the ball at radius T splits by verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusRow {
    /// Radius T as exact rational text "p/q".
    pub t: String,
    pub n_t: u64,
    pub non_regular: u64,
    pub certified_full: u64,
    pub certified_proper: u64,
    pub inconclusive: u64,
    pub prime_bound: u64,
}

impl CensusRow {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}\n",
            self.t,
            self.n_t,
            self.non_regular,
            self.certified_full,
            self.certified_proper,
            self.inconclusive,
            self.prime_bound
        )
    }
}

pub const CENSUS_CSV_HEADER: &str =
    "T,n_t,non_regular,certified_full,certified_proper,inconclusive,prime_bound\n";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ElementClass {
    NonRegular,
    Full,
    Proper,
    Inconclusive,
}

/// Discriminant of a monic quadratic or cubic from i128 coefficients.
fn disc_i128(coeffs: &[i128]) -> Option<i128> {
    match coeffs.len() {
        3 => {
            let (b, c) = (coeffs[1], coeffs[2]);
            b.checked_mul(b)?.checked_sub(4 * c)
        }
        4 => {
            let (a, b, c) = (coeffs[1], coeffs[2], coeffs[3]);
            // 18abc - 4a^3 c + a^2 b^2 - 4 b^3 - 27 c^2
            let t1 = 18i128.checked_mul(a)?.checked_mul(b)?.checked_mul(c)?;
            let t2 = 4i128
                .checked_mul(a)?
                .checked_mul(a)?
                .checked_mul(a)?
                .checked_mul(c)?;
            let t3 = a.checked_mul(a)?.checked_mul(b)?.checked_mul(b)?;
            let t4 = 4i128.checked_mul(b)?.checked_mul(b)?.checked_mul(b)?;
            let t5 = 27i128.checked_mul(c)?.checked_mul(c)?;
            t1.checked_sub(t2)?
                .checked_add(t3)?
                .checked_sub(t4)?
                .checked_sub(t5)
        }
        _ => None,
    }
}

fn is_square_i128(n: i128) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i128;
    for c in r.saturating_sub(2)..=r + 2 {
        if c >= 0 && c * c == n {
            return true;
        }
    }
    false
}

/// Rational-root existence for a monic i128 polynomial (roots divide the
/// constant term).
fn has_int_root_i128(coeffs: &[i128]) -> Option<bool> {
    let c0 = *coeffs.last()?;
    if c0 == 0 {
        return Some(true);
    }
    let m = c0.unsigned_abs();
    if m > u64::MAX as u128 {
        return None;
    }
    let m = m as u64;
    let eval = |x: i128| -> Option<i128> {
        let mut acc = 0i128;
        for &c in coeffs {
            acc = acc.checked_mul(x)?.checked_add(c)?;
        }
        Some(acc)
    };
    let mut i = 1u64;
    while i * i <= m {
        if m % i == 0 {
            for d in [i, m / i] {
                let d = d as i128;
                if eval(d)? == 0 || eval(-d)? == 0 {
                    return Some(true);
                }
            }
        }
        i += 1;
    }
    Some(false)
}

/// Classify one ball element. For d <= 3 the exact oracle decides;
/// optionally cross-checked against the coverage certificate (a certificate
/// claiming full where the oracle says proper is an invariant violation).
fn classify_element(entries: &[i64], d: usize, l: u64, crosscheck: bool) -> Result<ElementClass> {
    // fast integer path for d <= 3
    if d <= 3 && !crosscheck {
        if let Some(coeffs) = charpoly_i128(entries, d) {
            if let Some(disc) = disc_i128(&coeffs) {
                if disc == 0 {
                    return Ok(ElementClass::NonRegular);
                }
                let reducible = match d {
                    2 => Some(is_square_i128(disc)),
                    3 => has_int_root_i128(&coeffs),
                    _ => None,
                };
                if let Some(red) = reducible {
                    if red || (d == 3 && is_square_i128(disc)) {
                        return Ok(ElementClass::Proper);
                    }
                    return Ok(ElementClass::Full);
                }
            }
        }
    }
    let f = charpoly_of_entries(entries, d);
    let disc = discriminant(&f)?;
    if disc.is_zero() {
        return Ok(ElementClass::NonRegular);
    }
    if d <= 3 {
        let oracle = exact_oracle_small_degree(&f)?;
        if crosscheck {
            let cert = jordan_certificate(&f, l)?;
            if cert.is_full() && oracle.is_proper() {
                return Err(Error::Invariant(format!(
                    "certificate contradicts exact oracle on {f}"
                )));
            }
        }
        return Ok(match oracle {
            GaloisVerdict::CertifiedFull { .. } => ElementClass::Full,
            GaloisVerdict::CertifiedProper { .. } => ElementClass::Proper,
            _ => ElementClass::Inconclusive,
        });
    }
    Ok(match jordan_certificate(&f, l)? {
        GaloisVerdict::CertifiedFull { .. } => ElementClass::Full,
        GaloisVerdict::CertifiedProper { .. } => ElementClass::Proper,
        GaloisVerdict::Inconclusive { .. } => ElementClass::Inconclusive,
        GaloisVerdict::Degenerate { .. } => ElementClass::NonRegular,
    })
}

/// Genericity census over nested balls: one enumeration of the largest ball,
/// each element classified once and binned into every row it belongs to.
pub fn census_genericity(
    d: usize,
    t_list: &[BigRational],
    prime_bound: u64,
    enum_cap: u64,
    crosscheck: bool,
) -> Result<Vec<CensusRow>> {
    if t_list.is_empty() {
        return Err(Error::Invalid("empty T list".into()));
    }
    let mut ts: Vec<BigRational> = t_list.to_vec();
    ts.sort();
    ts.dedup();
    let t_max = ts.last().unwrap().clone();
    let spec = BallSpec::from_radius(d, t_max)?;
    // per-row thresholds as integer predicates sum_sq * den <= num
    let thresholds: Vec<(i128, i128)> = ts
        .iter()
        .map(|t| {
            let t2 = t * t;
            let num = t2.numer().to_i128().ok_or_else(|| {
                Error::ResourceCap("T^2 numerator exceeds the supported range".into())
            })?;
            let den = t2.denom().to_i128().ok_or_else(|| {
                Error::ResourceCap("T^2 denominator exceeds the supported range".into())
            })?;
            Ok((num, den))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rows: Vec<[u64; 5]> = vec![[0; 5]; ts.len()];
    let mut inner_err: Option<Error> = None;
    enumerate_ball(&spec, enum_cap, &mut |entries| {
        if inner_err.is_some() {
            return;
        }
        let h2: i128 = entries.iter().map(|&e| (e as i128) * (e as i128)).sum();
        let class = match classify_element(entries, d, prime_bound, crosscheck) {
            Ok(c) => c,
            Err(e) => {
                inner_err = Some(e);
                return;
            }
        };
        for (i, &(num, den)) in thresholds.iter().enumerate() {
            if h2 * den <= num {
                rows[i][0] += 1;
                let slot = match class {
                    ElementClass::NonRegular => 1,
                    ElementClass::Full => 2,
                    ElementClass::Proper => 3,
                    ElementClass::Inconclusive => 4,
                };
                rows[i][slot] += 1;
            }
        }
    })?;
    if let Some(e) = inner_err {
        return Err(e);
    }
    let out: Vec<CensusRow> = ts
        .iter()
        .zip(rows.iter())
        .map(|(t, r)| {
            let row = CensusRow {
                t: rational_str(t),
                n_t: r[0],
                non_regular: r[1],
                certified_full: r[2],
                certified_proper: r[3],
                inconclusive: r[4],
                prime_bound,
            };
            debug_assert_eq!(
                row.non_regular + row.certified_full + row.certified_proper + row.inconclusive,
                row.n_t
            );
            row
        })
        .collect();
    for row in &out {
        if row.non_regular + row.certified_full + row.certified_proper + row.inconclusive != row.n_t
        {
            return Err(Error::Invariant(format!(
                "census row at T = {} does not partition the ball",
                row.t
            )));
        }
    }
    Ok(out)
}

/// Least-squares slope of log(count) against log(T), with RMS residual.
pub fn fit_exponent(series: &[(f64, f64)]) -> Result<(f64, f64)> {
    if series.len() < 2 {
        return Err(Error::Invalid("need at least two points to fit".into()));
    }
    if series.iter().any(|&(t, c)| t <= 0.0 || c <= 0.0) {
        return Err(Error::Invalid("nonpositive T or count in fit input".into()));
    }
    let pts: Vec<(f64, f64)> = series.iter().map(|&(t, c)| (t.ln(), c.ln())).collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom == 0.0 {
        return Err(Error::Invalid("degenerate fit: all T equal".into()));
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let sse: f64 = pts
        .iter()
        .map(|&(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    Ok((slope, (sse / n).sqrt()))
}

/// Deviation of congruence fibers from the uniform prediction N_T / |Y_p|.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquidistReport {
    pub prime: u64,
    /// Radius T as "p/q".
    pub t: String,
    pub n_t: u64,
    pub fibers: u64,
    pub max_rel_dev: f64,
    pub l1_dev: f64,
}

pub fn equidist_report(
    d: usize,
    t: &BigRational,
    p: u64,
    group_cap: u64,
    enum_cap: u64,
) -> Result<EquidistReport> {
    let spec = BallSpec::from_radius(d, t.clone())?;
    let table = congruence_fiber_counts(&spec, p, group_cap, enum_cap)?;
    if table.total == 0 {
        return Err(Error::Invalid("empty ball: deviations undefined".into()));
    }
    let order = sl_group_order(d as u32, p)
        .to_f64()
        .ok_or_else(|| Error::ResourceCap("group order overflows f64".into()))?;
    let n = table.total as f64;
    let pred = n / order;
    let mut max_rel = 0.0f64;
    let mut l1 = 0.0f64;
    for &c in table.counts.values() {
        let dev = (c as f64 - pred).abs();
        max_rel = max_rel.max(dev / pred);
        l1 += (c as f64 / n - 1.0 / order).abs();
    }
    let missing = order - table.counts.len() as f64;
    if missing > 0.0 {
        max_rel = max_rel.max(1.0); // empty fibers deviate by the full prediction
        l1 += missing / order;
    }
    Ok(EquidistReport {
        prime: p,
        t: rational_str(t),
        n_t: table.total,
        fibers: table.counts.len() as u64,
        max_rel_dev: max_rel,
        l1_dev: l1,
    })
}

/// Polynomial-model census over the coefficient box |a_i| <= T.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GallagherReport {
    pub total: u64,
    pub non_full: u64,
    pub undetermined: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GallagherMode {
    Exhaustive,
    Sample(u64),
}

fn classify_poly(coeffs: &[BigInt], d: usize, l: u64) -> Result<ElementClass> {
    let mut all = vec![BigInt::from(1)];
    all.extend_from_slice(coeffs);
    let f = IntPolynomial::new(all)?;
    if d == 1 {
        return Ok(ElementClass::Full);
    }
    let disc = discriminant(&f)?;
    if disc.is_zero() {
        // repeated roots: the group acts on < d roots, so it is never S_d
        return Ok(ElementClass::Proper);
    }
    if d <= 3 {
        return Ok(match exact_oracle_small_degree(&f)? {
            GaloisVerdict::CertifiedFull { .. } => ElementClass::Full,
            _ => ElementClass::Proper,
        });
    }
    Ok(match jordan_certificate(&f, l)? {
        GaloisVerdict::CertifiedFull { .. } => ElementClass::Full,
        GaloisVerdict::CertifiedProper { .. } => ElementClass::Proper,
        GaloisVerdict::Degenerate { .. } => ElementClass::Proper,
        GaloisVerdict::Inconclusive { .. } => ElementClass::Inconclusive,
    })
}

pub fn gallagher_census(
    d: usize,
    t_bound: u64,
    mode: GallagherMode,
    prime_bound: u64,
    seed: u64,
    cap: u64,
) -> Result<GallagherReport> {
    if d == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    let width = 2 * t_bound + 1;
    let mut total = 0u64;
    let mut non_full = 0u64;
    let mut undetermined = 0u64;
    let mut tally = |coeffs: &[BigInt]| -> Result<()> {
        match classify_poly(coeffs, d, prime_bound)? {
            ElementClass::Full => {}
            ElementClass::Inconclusive => undetermined += 1,
            _ => non_full += 1,
        }
        total += 1;
        Ok(())
    };
    match mode {
        GallagherMode::Exhaustive => {
            let box_size = (width as u128).pow(d as u32);
            if box_size > cap as u128 {
                return Err(Error::ResourceCap(format!(
                    "exhaustive box of {box_size} polynomials exceeds the cap {cap}"
                )));
            }
            let t = t_bound as i128;
            let mut coeffs = vec![-t; d];
            loop {
                let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
                tally(&big)?;
                let mut i = d;
                loop {
                    if i == 0 {
                        return Ok(GallagherReport {
                            total,
                            non_full,
                            undetermined,
                        });
                    }
                    i -= 1;
                    if coeffs[i] < t {
                        coeffs[i] += 1;
                        for c in coeffs.iter_mut().skip(i + 1) {
                            *c = -t;
                        }
                        break;
                    }
                }
            }
        }
        GallagherMode::Sample(n) => {
            if n > cap {
                return Err(Error::ResourceCap(format!(
                    "sample size {n} exceeds the cap {cap}"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = t_bound as i64;
            for _ in 0..n {
                let coeffs: Vec<BigInt> = (0..d)
                    .map(|_| BigInt::from(rng.gen_range(-t..=t)))
                    .collect();
                tally(&coeffs)?;
            }
            Ok(GallagherReport {
                total,
                non_full,
                undetermined,
            })
        }
    }
}
