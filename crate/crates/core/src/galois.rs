//! Galois-group certification from Frobenius cycle types.
//!
//! Certificates are one-sided: CertifiedFull rests on the coverage argument
//! (a subgroup of S_d meeting every conjugacy class is S_d, and each defined
//! cycle type mod p is the type of an actual Frobenius element), or on the
//! classical transposition-plus-prime-cycle witness set. For degree <= 3 an
//! exact oracle provides ground truth.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cycles::{partitions_of, CycleType};
use crate::error::{Error, Result};
use crate::matrix::GroupElement;
use crate::modp::{cycle_type_mod_p, distinct_degree_factor_degrees, reduce_mod_p};
use crate::poly::{discriminant, IntPolynomial};
use crate::primes::{is_prime, primes_up_to};

/// Observed Frobenius cycle types: class -> smallest witness prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageRecord {
    pub degree: u32,
    pub observed: BTreeMap<CycleType, u64>,
    pub primes_scanned: u64,
    pub prime_bound: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FullWitness {
    /// Every conjugacy class of S_d observed as a Frobenius cycle type.
    Coverage { coverage: CoverageRecord },
    /// Irreducible + transposition + q-cycle (q prime, q > d/2).
    Classical {
        transposition_prime: u64,
        q_cycle_prime: u64,
        q: u32,
    },
    /// Decided exactly (degree <= 3 only).
    SmallDegreeOracle { group: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum GaloisVerdict {
    CertifiedFull {
        witness: FullWitness,
    },
    CertifiedProper {
        reason: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        group: Option<String>,
    },
    Inconclusive {
        coverage: CoverageRecord,
    },
    Degenerate {
        reason: String,
    },
}

impl GaloisVerdict {
    pub fn is_full(&self) -> bool {
        matches!(self, GaloisVerdict::CertifiedFull { .. })
    }

    pub fn is_proper(&self) -> bool {
        matches!(self, GaloisVerdict::CertifiedProper { .. })
    }
}

/// True iff charpoly(g) is squarefree, i.e. g is regular semisimple.
pub fn regularity_check(g: &GroupElement) -> bool {
    let f = g.charpoly();
    !discriminant(&f).expect("charpoly is monic of degree >= 2").is_zero()
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// Positive divisors of |n|, n nonzero. Desk scale: |n| must fit u64.
fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let m = n
        .abs()
        .to_u64()
        .ok_or_else(|| Error::ResourceCap("constant term too large for divisor search".into()))?;
    debug_assert!(m != 0);
    let mut divs = Vec::new();
    let mut i = 1u64;
    while i * i <= m {
        if m % i == 0 {
            divs.push(BigInt::from(i));
            if i != m / i {
                divs.push(BigInt::from(m / i));
            }
        }
        i += 1;
    }
    divs.sort();
    Ok(divs)
}

fn has_rational_root(f: &IntPolynomial) -> Result<bool> {
    if f.constant_term().is_zero() {
        return Ok(true);
    }
    for d in positive_divisors(f.constant_term())? {
        if f.eval(&d).is_zero() || f.eval(&(-&d)).is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Does a monic quadratic x^2 + bx + c with integer b, c divide the quartic?
/// The factor's constant term divides the quartic's; b, e are then pinned by
/// the coefficient equations and checked exactly.
fn quartic_has_quadratic_factor(f: &IntPolynomial) -> Result<bool> {
    debug_assert_eq!(f.degree(), 4);
    let a1 = &f.coeffs()[1];
    let a2 = &f.coeffs()[2];
    let a3 = &f.coeffs()[3];
    let a4 = &f.coeffs()[4];
    debug_assert!(!a4.is_zero()); // no rational root implies nonzero constant
    let two = BigInt::from(2);
    for c_abs in positive_divisors(a4)? {
        for c in [c_abs.clone(), -c_abs] {
            let g = a4 / &c;
            // b + e = a1, b e = a2 - c - g, b g + e c = a3
            let prod = a2 - &c - &g;
            let disc_t = a1 * a1 - BigInt::from(4) * &prod;
            if disc_t.is_negative() || !is_perfect_square(&disc_t) {
                continue;
            }
            let s = disc_t.sqrt();
            for b in [(a1 + &s), (a1 - &s)] {
                if (&b % &two).is_zero() {
                    let b = b / &two;
                    let e = a1 - &b;
                    if &b * &g + &e * &c == *a3 {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Exhaustive search for a monic factor of degree deg, coefficients bounded
/// by a Mignotte-style bound; used only as the exact fallback for degree >= 5.
fn has_monic_factor_of_degree(f: &IntPolynomial, deg: usize, cand_cap: u64) -> Result<bool> {
    let bound: BigInt = (BigInt::from(1) << deg) * (f.norm2_sq().sqrt() + BigInt::one());
    let b = bound
        .to_i64()
        .ok_or_else(|| Error::ResourceCap("factor coefficient bound too large".into()))?;
    let divisors = positive_divisors(f.constant_term())?;
    let width = 2 * b as u128 + 1;
    let cand_count = (divisors.len() as u128 * 2).saturating_mul(width.pow(deg as u32 - 1));
    if cand_count > cand_cap as u128 {
        return Err(Error::ResourceCap(format!(
            "trial factorization would scan {cand_count} candidates (cap {cand_cap})"
        )));
    }
    let mut mid = vec![-b; deg - 1];
    loop {
        for c0 in &divisors {
            for c in [c0.clone(), -c0] {
                let mut coeffs = vec![BigInt::one()];
                coeffs.extend(mid.iter().map(|&v| BigInt::from(v)));
                coeffs.push(c);
                let cand = IntPolynomial::new(coeffs)?;
                if f.div_exact_monic(&cand).is_some() {
                    return Ok(true);
                }
            }
        }
        let mut i = deg - 1;
        loop {
            if i == 0 {
                return Ok(false);
            }
            i -= 1;
            if mid[i] < b {
                mid[i] += 1;
                for v in mid.iter_mut().skip(i + 1) {
                    *v = -b;
                }
                break;
            }
        }
    }
}

/// Irreducibility over Q for a squarefree monic polynomial.
/// Exact for every degree; degree >= 5 first tries a mod-p certificate
/// (irreducible reduction at a good prime) before the bounded trial search.
pub fn irreducible_over_q(f: &IntPolynomial) -> Result<bool> {
    if !f.is_monic() {
        return Err(Error::Invalid("irreducibility test requires monic input".into()));
    }
    let d = f.degree();
    if d == 0 {
        return Err(Error::Invalid("degree-0 polynomial rejected".into()));
    }
    if d == 1 {
        return Ok(true);
    }
    if has_rational_root(f)? {
        return Ok(false);
    }
    if d <= 3 {
        return Ok(true);
    }
    if d == 4 {
        return Ok(!quartic_has_quadratic_factor(f)?);
    }
    // mod-p pre-check: an irreducible squarefree reduction certifies
    // irreducibility over Q
    let disc = discriminant(f)?;
    for p in primes_up_to(200) {
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_mod_p(f, p);
        if fp.degree() == d && fp.is_squarefree() {
            let degs = distinct_degree_factor_degrees(&fp);
            if degs.len() == 1 {
                return Ok(true);
            }
        }
    }
    for k in 2..=d / 2 {
        if has_monic_factor_of_degree(f, k, 50_000_000)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn precheck(f: &IntPolynomial, l: u64) -> Result<std::result::Result<BigInt, GaloisVerdict>> {
    if l < 2 {
        return Err(Error::Invalid("prime bound L must be >= 2".into()));
    }
    if !f.is_monic() || f.degree() < 2 {
        return Err(Error::Invalid(
            "certification requires a monic polynomial of degree >= 2".into(),
        ));
    }
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Ok(Err(GaloisVerdict::Degenerate {
            reason: "not squarefree".into(),
        }));
    }
    if !irreducible_over_q(f)? {
        return Ok(Err(GaloisVerdict::CertifiedProper {
            reason: "reducible".into(),
            group: None,
        }));
    }
    Ok(Ok(disc))
}

/// Coverage certificate: scan primes p <= L, record every defined Frobenius
/// cycle type; observing every partition of d certifies Gal = S_d.
pub fn jordan_certificate(f: &IntPolynomial, l: u64) -> Result<GaloisVerdict> {
    let disc = match precheck(f, l)? {
        Ok(disc) => disc,
        Err(verdict) => return Ok(verdict),
    };
    let d = f.degree() as u32;
    let targets = partitions_of(d)?;
    let mut observed: BTreeMap<CycleType, u64> = BTreeMap::new();
    let mut scanned = 0u64;
    for p in primes_up_to(l) {
        scanned += 1;
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        if let Some(t) = cycle_type_mod_p(f, p)? {
            observed.entry(t).or_insert(p);
            if observed.len() == targets.len() {
                break;
            }
        }
    }
    let coverage = CoverageRecord {
        degree: d,
        observed,
        primes_scanned: scanned,
        prime_bound: l,
    };
    if coverage.observed.len() == targets.len() {
        Ok(GaloisVerdict::CertifiedFull {
            witness: FullWitness::Coverage { coverage },
        })
    } else {
        Ok(GaloisVerdict::Inconclusive { coverage })
    }
}

/// Cheaper witness set: irreducible + observed transposition type
/// (2,1,...,1) + observed (q,1,...,1) with q prime, q > d/2. The q-cycle
/// forces primitivity, and a primitive group containing a transposition is
/// the full symmetric group.
pub fn classical_criterion(f: &IntPolynomial, l: u64) -> Result<GaloisVerdict> {
    let disc = match precheck(f, l)? {
        Ok(disc) => disc,
        Err(verdict) => return Ok(verdict),
    };
    let d = f.degree() as u32;
    let transposition = CycleType::transposition(d);
    let mut observed: BTreeMap<CycleType, u64> = BTreeMap::new();
    let mut transposition_prime = None;
    let mut q_witness: Option<(u64, u32)> = None;
    let mut scanned = 0u64;
    for p in primes_up_to(l) {
        scanned += 1;
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        if let Some(t) = cycle_type_mod_p(f, p)? {
            if transposition_prime.is_none() && t == transposition {
                transposition_prime = Some(p);
            }
            if q_witness.is_none() {
                let q = t.parts()[0];
                if 2 * q > d && is_prime(q as u64) && t.is_q_cycle(q) {
                    q_witness = Some((p, q));
                }
            }
            observed.entry(t).or_insert(p);
            if transposition_prime.is_some() && q_witness.is_some() {
                break;
            }
        }
    }
    match (transposition_prime, q_witness) {
        (Some(tp), Some((qp, q))) => Ok(GaloisVerdict::CertifiedFull {
            witness: FullWitness::Classical {
                transposition_prime: tp,
                q_cycle_prime: qp,
                q,
            },
        }),
        _ => Ok(GaloisVerdict::Inconclusive {
            coverage: CoverageRecord {
                degree: d,
                observed,
                primes_scanned: scanned,
                prime_bound: l,
            },
        }),
    }
}

/// Exact ground truth for degree <= 3: always a definitive verdict.
pub fn exact_oracle_small_degree(f: &IntPolynomial) -> Result<GaloisVerdict> {
    if !f.is_monic() {
        return Err(Error::Invalid("oracle requires monic input".into()));
    }
    let d = f.degree();
    if d == 0 || d > 3 {
        return Err(Error::Invalid(format!(
            "exact oracle supports degree 1..3, got {d}"
        )));
    }
    if d == 1 {
        return Ok(GaloisVerdict::CertifiedFull {
            witness: FullWitness::SmallDegreeOracle {
                group: "S_1".into(),
            },
        });
    }
    let disc = discriminant(f)?;
    if disc.is_zero() {
        return Ok(GaloisVerdict::Degenerate {
            reason: "not squarefree".into(),
        });
    }
    match d {
        2 => {
            if is_perfect_square(&disc) {
                // disc a square <=> rational roots
                Ok(GaloisVerdict::CertifiedProper {
                    reason: "reducible".into(),
                    group: Some("trivial".into()),
                })
            } else {
                Ok(GaloisVerdict::CertifiedFull {
                    witness: FullWitness::SmallDegreeOracle {
                        group: "S_2".into(),
                    },
                })
            }
        }
        3 => {
            if has_rational_root(f)? {
                Ok(GaloisVerdict::CertifiedProper {
                    reason: "reducible".into(),
                    group: None,
                })
            } else if is_perfect_square(&disc) {
                Ok(GaloisVerdict::CertifiedProper {
                    reason: "square-discriminant".into(),
                    group: Some("A_3".into()),
                })
            } else {
                Ok(GaloisVerdict::CertifiedFull {
                    witness: FullWitness::SmallDegreeOracle {
                        group: "S_3".into(),
                    },
                })
            }
        }
        _ => unreachable!(),
    }
}
