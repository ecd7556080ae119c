//! Elements of SL_d(Z): exact determinants, characteristic polynomials,
//! squared heights.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{det_bigint, IntPolynomial};

/// A d x d integer matrix with determinant exactly 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    dim: usize,
    entries: Vec<BigInt>, // row-major
}

impl GroupElement {
    pub fn new(dim: usize, entries: Vec<BigInt>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Invalid("dim must be >= 2".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::Invalid(format!(
                "expected {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let det = det_bigint(&entries, dim);
        if !det.is_one() {
            return Err(Error::Invalid(format!("determinant is {det}, not 1")));
        }
        Ok(GroupElement { dim, entries })
    }

    pub fn from_i64(dim: usize, entries: &[i64]) -> Result<Self> {
        Self::new(dim, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        GroupElement { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    /// Squared Frobenius norm, exact. H(g) <= T is evaluated as height2 <= T^2.
    pub fn height2(&self) -> BigInt {
        self.entries.iter().map(|e| e * e).sum()
    }

    /// det(x Id - g), monic of degree d, by the Faddeev-LeVerrier recurrence
    /// with exact integer divisions.
    pub fn charpoly(&self) -> IntPolynomial {
        let coeffs = charpoly_bigint(&self.entries, self.dim);
        IntPolynomial::new(coeffs).expect("charpoly is monic by construction")
    }
}

/// Faddeev-LeVerrier over BigInt; returns highest-first coefficients of
/// det(x Id - A). Every division by k is exact.
pub fn charpoly_bigint(a: &[BigInt], n: usize) -> Vec<BigInt> {
    let trace = |m: &[BigInt]| -> BigInt { (0..n).map(|i| m[i * n + i].clone()).sum() };
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(BigInt::one());
    let mut mk: Vec<BigInt> = a.to_vec();
    let mut ck = -trace(&mk);
    coeffs.push(ck.clone());
    for k in 2..=n {
        // M_k = A (M_{k-1} + c_{k-1} I)
        let mut shifted = mk.clone();
        for i in 0..n {
            shifted[i * n + i] += &ck;
        }
        let mut next = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for l in 0..n {
                let aval = &a[i * n + l];
                if aval.is_zero() {
                    continue;
                }
                for j in 0..n {
                    next[i * n + j] += aval * &shifted[l * n + j];
                }
            }
        }
        mk = next;
        let t = trace(&mk);
        let k_big = BigInt::from(k);
        debug_assert!((&t % &k_big).is_zero());
        ck = -t / k_big;
        coeffs.push(ck.clone());
    }
    coeffs
}

/// i128 fast path for charpoly of small matrices; None on (unlikely) overflow.
pub fn charpoly_i128(a: &[i64], n: usize) -> Option<Vec<i128>> {
    let trace = |m: &[i128]| -> Option<i128> {
        let mut s = 0i128;
        for i in 0..n {
            s = s.checked_add(m[i * n + i])?;
        }
        Some(s)
    };
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(1i128);
    let mut mk: Vec<i128> = a.iter().map(|&e| e as i128).collect();
    let mut ck = -trace(&mk)?;
    coeffs.push(ck);
    for k in 2..=n as i128 {
        let mut shifted = mk.clone();
        for i in 0..n {
            shifted[i * n + i] = shifted[i * n + i].checked_add(ck)?;
        }
        let mut next = vec![0i128; n * n];
        for i in 0..n {
            for l in 0..n {
                let aval = a[i * n + l] as i128;
                if aval == 0 {
                    continue;
                }
                for j in 0..n {
                    next[i * n + j] =
                        next[i * n + j].checked_add(aval.checked_mul(shifted[l * n + j])?)?;
                }
            }
        }
        mk = next;
        let t = trace(&mk)?;
        debug_assert_eq!(t % k, 0);
        ck = -(t / k);
        coeffs.push(ck);
    }
    Some(coeffs)
}

/// Determinant of an i64 matrix with exact i128 Bareiss elimination;
/// None on overflow (callers fall back to BigInt).
pub fn det_i128(mat: &[i64], n: usize) -> Option<i128> {
    let mut m: Vec<i128> = mat.iter().map(|&e| e as i128).collect();
    det_i128_inplace(&mut m, n)
}

pub fn det_i128_inplace(m: &mut [i128], n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k * n + k] == 0 {
            let mut found = None;
            for r in k + 1..n {
                if m[r * n + k] != 0 {
                    found = Some(r);
                    break;
                }
            }
            match found {
                Some(r) => {
                    for c in 0..n {
                        m.swap(k * n + c, r * n + c);
                    }
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i * n + j]
                    .checked_mul(m[k * n + k])?
                    .checked_sub(m[i * n + k].checked_mul(m[k * n + j])?)?;
                m[i * n + j] = num / prev;
            }
            m[i * n + k] = 0;
        }
        prev = m[k * n + k];
    }
    Some(sign * m[(n - 1) * n + (n - 1)])
}

/// Exact integer det of an i64 matrix, BigInt fallback on overflow.
pub fn det_exact(mat: &[i64], n: usize) -> BigInt {
    match det_i128(mat, n) {
        Some(d) => BigInt::from(d),
        None => {
            let big: Vec<BigInt> = mat.iter().map(|&e| BigInt::from(e)).collect();
            det_bigint(&big, n)
        }
    }
}

/// Convenience: monic charpoly of an i64 matrix as an IntPolynomial.
pub fn charpoly_of_entries(entries: &[i64], n: usize) -> IntPolynomial {
    if let Some(c) = charpoly_i128(entries, n) {
        if c.iter().all(|v| v.abs() <= i64::MAX as i128) {
            return IntPolynomial::new(c.iter().map(|&v| BigInt::from(v)).collect())
                .expect("monic");
        }
    }
    let big: Vec<BigInt> = entries.iter().map(|&e| BigInt::from(e)).collect();
    IntPolynomial::new(charpoly_bigint(&big, n)).expect("monic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(coeffs).unwrap()
    }

    #[test]
    fn charpoly_triangular() {
        let g = GroupElement::from_i64(2, &[1, 1, 0, 1]).unwrap();
        assert_eq!(g.charpoly(), poly(&[1, -2, 1]));
    }

    #[test]
    fn charpoly_rotation() {
        let g = GroupElement::from_i64(2, &[0, -1, 1, 0]).unwrap();
        assert_eq!(g.charpoly(), poly(&[1, 0, 1]));
    }

    #[test]
    fn charpoly_trace_det_formula() {
        let g = GroupElement::from_i64(2, &[2, 1, 1, 1]).unwrap();
        assert_eq!(g.charpoly(), poly(&[1, -3, 1]));
    }

    #[test]
    fn heights() {
        assert_eq!(GroupElement::identity(2).height2(), BigInt::from(2));
        let j = GroupElement::from_i64(2, &[0, 1, -1, 0]).unwrap();
        assert_eq!(j.height2(), BigInt::from(2));
        let g = GroupElement::from_i64(2, &[2, 1, 1, 1]).unwrap();
        assert_eq!(g.height2(), BigInt::from(7));
    }

    #[test]
    fn non_unimodular_rejected() {
        assert!(GroupElement::from_i64(2, &[1, 0, 0, 2]).is_err());
        assert!(GroupElement::from_i64(2, &[0, 1, 1, 0]).is_err()); // det -1
        assert!(GroupElement::from_i64(1, &[1]).is_err());
    }

    #[test]
    fn charpoly_3x3_known() {
        // companion-like element of SL_3(Z): det = 1
        let g = GroupElement::from_i64(3, &[0, 0, 1, 1, 0, 0, 0, 1, 0]).unwrap();
        // permutation matrix of a 3-cycle: charpoly x^3 - 1
        assert_eq!(g.charpoly(), poly(&[1, 0, 0, -1]));
    }

    proptest! {
        // charpoly of a random SL_2 element built as product of elementary
        // matrices: monic, degree d, constant term (-1)^d.
        #[test]
        fn charpoly_monic_and_constant_term(
            shears in proptest::collection::vec((-4i64..=4, proptest::bool::ANY), 1..6)
        ) {
            // build an SL_2(Z) element as a word in upper/lower shears
            let mut m = [1i64, 0, 0, 1];
            for (k, upper) in shears {
                let s = if upper { [1, k, 0, 1] } else { [1, 0, k, 1] };
                m = [
                    m[0] * s[0] + m[1] * s[2],
                    m[0] * s[1] + m[1] * s[3],
                    m[2] * s[0] + m[3] * s[2],
                    m[2] * s[1] + m[3] * s[3],
                ];
            }
            let g = GroupElement::from_i64(2, &m).unwrap();
            let f = g.charpoly();
            prop_assert!(f.is_monic());
            prop_assert_eq!(f.degree(), 2);
            prop_assert_eq!(f.constant_term(), &BigInt::one());
        }

        #[test]
        fn i128_and_bigint_charpoly_agree(entries in proptest::collection::vec(-30i64..=30, 9..=9)) {
            let fast = charpoly_i128(&entries, 3).unwrap();
            let big: Vec<BigInt> = entries.iter().map(|&e| BigInt::from(e)).collect();
            let slow = charpoly_bigint(&big, 3);
            let fast_big: Vec<BigInt> = fast.iter().map(|&v| BigInt::from(v)).collect();
            prop_assert_eq!(fast_big, slow);
        }

        #[test]
        fn det_i128_matches_bigint(entries in proptest::collection::vec(-50i64..=50, 16..=16)) {
            let fast = det_i128(&entries, 4).unwrap();
            let big: Vec<BigInt> = entries.iter().map(|&e| BigInt::from(e)).collect();
            prop_assert_eq!(BigInt::from(fast), det_bigint(&big, 4));
        }
    }
}
