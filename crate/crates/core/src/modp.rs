//! Polynomial arithmetic over F_p and cycle types of reductions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::cycles::CycleType;
use crate::error::{Error, Result};
use crate::poly::IntPolynomial;
use crate::primes::{is_prime, mul_mod, pow_mod};

/// Dense polynomial over F_p, coefficients lowest-degree first, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyModP {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl PolyModP {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        let mut poly = PolyModP { p, coeffs };
        poly.trim();
        poly
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && *self.coeffs.last().unwrap() == 0 {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(0);
        }
    }

    pub fn zero(p: u64) -> Self {
        PolyModP { p, coeffs: vec![0] }
    }

    pub fn x(p: u64) -> Self {
        PolyModP {
            p,
            coeffs: vec![0, 1],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap()
    }

    pub fn make_monic(&mut self) {
        let lc = self.leading();
        if lc == 0 || lc == 1 {
            return;
        }
        let inv = pow_mod(lc, self.p - 2, self.p);
        for c in &mut self.coeffs {
            *c = mul_mod(*c, inv, self.p);
        }
    }

    pub fn mul(&self, other: &PolyModP) -> PolyModP {
        let p = self.p;
        if self.is_zero() || other.is_zero() {
            return PolyModP::zero(p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        PolyModP::new(p, out)
    }

    pub fn sub(&self, other: &PolyModP) -> PolyModP {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            out[i] = (a + p - b) % p;
        }
        PolyModP::new(p, out)
    }

    /// Remainder of self mod div (div nonzero).
    pub fn rem(&self, div: &PolyModP) -> PolyModP {
        assert!(!div.is_zero());
        let p = self.p;
        if self.degree() < div.degree() {
            return self.clone();
        }
        let lc_inv = pow_mod(div.leading(), p - 2, p);
        let mut rem = self.coeffs.clone();
        let dd = div.degree();
        for i in (dd..rem.len()).rev() {
            let q = mul_mod(rem[i], lc_inv, p);
            if q == 0 {
                continue;
            }
            rem[i] = 0;
            for (j, &dc) in div.coeffs.iter().enumerate().take(dd) {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + p - mul_mod(q, dc, p)) % p;
            }
        }
        rem.truncate(dd.max(1));
        PolyModP::new(p, rem)
    }

    /// Exact quotient by a divisor known to divide self.
    pub fn div_exact(&self, div: &PolyModP) -> PolyModP {
        assert!(!div.is_zero());
        let p = self.p;
        if self.is_zero() {
            return PolyModP::zero(p);
        }
        let lc_inv = pow_mod(div.leading(), p - 2, p);
        let mut rem = self.coeffs.clone();
        let dd = div.degree();
        let mut quot = vec![0u64; self.degree() - dd + 1];
        for i in (dd..rem.len()).rev() {
            let q = mul_mod(rem[i], lc_inv, p);
            quot[i - dd] = q;
            if q == 0 {
                continue;
            }
            rem[i] = 0;
            for (j, &dc) in div.coeffs.iter().enumerate().take(dd) {
                let idx = i - dd + j;
                rem[idx] = (rem[idx] + p - mul_mod(q, dc, p)) % p;
            }
        }
        debug_assert!(rem.iter().all(|&c| c == 0));
        PolyModP::new(p, quot)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &PolyModP) -> PolyModP {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic();
        a
    }

    pub fn derivative(&self) -> PolyModP {
        let p = self.p;
        if self.degree() == 0 {
            return PolyModP::zero(p);
        }
        let coeffs: Vec<u64> = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| mul_mod(c, (i as u64 + 1) % p, p))
            .collect();
        PolyModP::new(p, coeffs)
    }

    /// self^exp mod m.
    pub fn pow_mod(&self, mut exp: u64, m: &PolyModP) -> PolyModP {
        let mut base = self.rem(m);
        let mut acc = PolyModP::new(self.p, vec![1]);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            exp >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }
}

/// Reduce an integer polynomial mod p.
pub fn reduce_mod_p(f: &IntPolynomial, p: u64) -> PolyModP {
    let pb = BigInt::from(p);
    let coeffs: Vec<u64> = f
        .coeffs()
        .iter()
        .rev()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    PolyModP::new(p, coeffs)
}

/// Degrees of irreducible factors (with multiplicity of occurrence) of a
/// squarefree monic polynomial over F_p, by distinct-degree factorization.
/// Full factor recovery is never performed.
pub fn distinct_degree_factor_degrees(f: &PolyModP) -> Vec<u32> {
    debug_assert!(f.is_squarefree());
    let p = f.p;
    let mut v = f.clone();
    v.make_monic();
    let mut degrees = Vec::new();
    let mut h = PolyModP::x(p);
    let mut i = 0u32;
    while v.degree() > 0 {
        i += 1;
        if 2 * i as usize > v.degree() {
            degrees.push(v.degree() as u32);
            break;
        }
        h = h.pow_mod(p, &v); // h = x^(p^i) mod v
        let g = h.sub(&PolyModP::x(p)).gcd(&v);
        if g.degree() > 0 {
            let count = g.degree() as u32 / i;
            for _ in 0..count {
                degrees.push(i);
            }
            v = v.div_exact(&g);
            h = h.rem(&v);
        }
    }
    degrees
}

/// Cycle type of Frob_p on the roots of f, when defined.
///
/// Returns None (the explicit "Undefined" value) when the reduction of f
/// mod p is not squarefree; errors when p is not prime.
pub fn cycle_type_mod_p(f: &IntPolynomial, p: u64) -> Result<Option<CycleType>> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if !f.is_monic() {
        return Err(Error::Invalid("cycle_type_mod_p requires a monic polynomial".into()));
    }
    let fp = reduce_mod_p(f, p);
    if fp.degree() != f.degree() || !fp.is_squarefree() {
        return Ok(None);
    }
    let degrees = distinct_degree_factor_degrees(&fp);
    Ok(Some(CycleType::new(degrees)?))
}
