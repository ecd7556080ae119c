//! Monic integer polynomials: construction, parsing, discriminants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An integer polynomial, coefficients stored highest-degree first.
/// The leading coefficient is nonzero; most call sites require monic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Build from highest-first coefficients. Leading zeros are rejected
    /// (degree is part of the contract, not inferred).
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Invalid("empty coefficient list".into()));
        }
        if coeffs.len() > 1 && coeffs[0].is_zero() {
            return Err(Error::Invalid("leading coefficient is zero".into()));
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Highest-first coefficients.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn constant_term(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs[0].is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in &self.coeffs {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        let d = self.degree();
        if d == 0 {
            return IntPolynomial {
                coeffs: vec![BigInt::zero()],
            };
        }
        let coeffs: Vec<BigInt> = self.coeffs[..d]
            .iter()
            .enumerate()
            .map(|(i, c)| c * BigInt::from(d - i))
            .collect();
        IntPolynomial { coeffs }
    }

    /// Exact division by a monic divisor; None when it does not divide.
    pub fn div_exact_monic(&self, div: &IntPolynomial) -> Option<IntPolynomial> {
        assert!(div.is_monic());
        let n = self.degree();
        let m = div.degree();
        if m > n {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for i in 0..=(n - m) {
            let q = rem[i].clone();
            quot[i] = q.clone();
            if q.is_zero() {
                continue;
            }
            for j in 0..=m {
                rem[i + j] = &rem[i + j] - &q * &div.coeffs[j];
            }
        }
        if rem.iter().all(|c| c.is_zero()) {
            IntPolynomial::new(quot).ok()
        } else {
            None
        }
    }

    /// Squared l2 norm of the coefficient vector.
    pub fn norm2_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }
}

impl fmt::Display for IntPolynomial {
    /// Canonical printer: `x^3-x-1` style, parseable by `parse_poly`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() && d > 0 {
                continue;
            }
            let exp = d - i;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            match exp {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if exp == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{exp}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Parse a monic integer polynomial in x, e.g. `x^3-x-1`.
/// Rejects non-monic input; errors carry the byte position.
pub fn parse_poly(text: &str) -> Result<IntPolynomial> {
    let bytes: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let mut terms: Vec<(usize, BigInt)> = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(Error::Parse {
            pos,
            msg: "empty polynomial".into(),
        });
    }
    while pos < bytes.len() {
        skip_ws(&mut pos);
        let mut sign = 1i32;
        if !terms.is_empty() {
            match bytes.get(pos) {
                Some('+') => pos += 1,
                Some('-') => {
                    sign = -1;
                    pos += 1;
                }
                Some(c) => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("expected '+' or '-', found {c:?}"),
                    })
                }
                None => break,
            }
        } else if bytes.get(pos) == Some(&'-') {
            sign = -1;
            pos += 1;
        }
        skip_ws(&mut pos);
        // optional integer coefficient
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let coeff_txt: String = bytes[start..pos].iter().collect();
        let mut coeff = if coeff_txt.is_empty() {
            None
        } else {
            Some(coeff_txt.parse::<BigInt>().map_err(|e| Error::Parse {
                pos: start,
                msg: e.to_string(),
            })?)
        };
        // optional x[^k]
        let mut exp = 0usize;
        if bytes.get(pos) == Some(&'x') {
            pos += 1;
            exp = 1;
            if bytes.get(pos) == Some(&'^') {
                pos += 1;
                let estart = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if estart == pos {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected exponent after '^'".into(),
                    });
                }
                let etxt: String = bytes[estart..pos].iter().collect();
                exp = etxt.parse::<usize>().map_err(|e| Error::Parse {
                    pos: estart,
                    msg: e.to_string(),
                })?;
            }
        } else if coeff.is_none() {
            return Err(Error::Parse {
                pos,
                msg: "expected coefficient or 'x'".into(),
            });
        }
        let c = coeff.take().unwrap_or_else(BigInt::one) * BigInt::from(sign);
        terms.push((exp, c));
        skip_ws(&mut pos);
    }
    let degree = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); degree + 1];
    for (e, c) in terms {
        coeffs[degree - e] += c;
    }
    if !coeffs[0].is_one() {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("polynomial is not monic (leading coefficient {})", coeffs[0]),
        });
    }
    IntPolynomial::new(coeffs)
}

/// Fraction-free (Bareiss) determinant of a square BigInt matrix, row-major.
pub fn det_bigint(mat: &[BigInt], n: usize) -> BigInt {
    assert_eq!(mat.len(), n * n);
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<BigInt> = mat.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            // pivot search
            let mut found = None;
            for r in k + 1..n {
                if !m[r * n + k].is_zero() {
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
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = num / &prev;
            }
            m[i * n + k] = BigInt::zero();
        }
        prev = m[k * n + k].clone();
    }
    let det = m[(n - 1) * n + (n - 1)].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Resultant of f and g via the Sylvester matrix.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> BigInt {
    let m = f.degree();
    let n = g.degree();
    if m == 0 {
        return f.coeffs[0].clone().pow(n as u32);
    }
    if n == 0 {
        return g.coeffs[0].clone().pow(m as u32);
    }
    let size = m + n;
    let mut mat = vec![BigInt::zero(); size * size];
    for row in 0..n {
        for (i, c) in f.coeffs.iter().enumerate() {
            mat[row * size + row + i] = c.clone();
        }
    }
    for row in 0..m {
        for (i, c) in g.coeffs.iter().enumerate() {
            mat[(n + row) * size + row + i] = c.clone();
        }
    }
    det_bigint(&mat, size)
}

/// Polynomial discriminant of a monic f, via Res(f, f').
/// Zero exactly when f has a repeated complex root.
pub fn discriminant(f: &IntPolynomial) -> Result<BigInt> {
    if !f.is_monic() {
        return Err(Error::Invalid("discriminant requires a monic polynomial".into()));
    }
    let d = f.degree();
    if d == 0 {
        return Err(Error::Invalid("discriminant of a degree-0 polynomial rejected".into()));
    }
    if d == 1 {
        return Ok(BigInt::one());
    }
    let res = resultant(f, &f.derivative());
    // disc = (-1)^{d(d-1)/2} Res(f, f') / lc(f), lc = 1
    let sign_flip = (d * (d - 1) / 2) % 2 == 1;
    Ok(if sign_flip { -res } else { res })
}
