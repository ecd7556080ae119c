//! Enumeration of SL_d(Z) in height balls and congruence fiber counting.
//!
//! The ball predicate is exact: membership is sum-of-squares <= T^2 with T^2
//! a rational, so no floating point enters the search. The search is
//! depth-first over entries in row-major order, each entry scanned in
//! increasing value; the last entry of the final row is solved from the
//! determinant equation instead of scanned.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::det_i128_inplace;
use crate::primes::is_prime;
use crate::sieve::sl_group_order;

/// Ball {g in SL_d(Z) : H(g)^2 <= t2} with t2 an exact rational.
#[derive(Debug, Clone, PartialEq)]
pub struct BallSpec {
    dim: usize,
    t2: BigRational,
}

impl BallSpec {
    pub fn new(dim: usize, t2: BigRational) -> Result<Self> {
        if dim < 2 {
            return Err(Error::Invalid("dim must be >= 2".into()));
        }
        if !t2.is_positive() {
            return Err(Error::Invalid("T^2 must be positive".into()));
        }
        Ok(BallSpec { dim, t2 })
    }

    /// Spec from the radius T itself (squared internally, stays exact).
    pub fn from_radius(dim: usize, t: BigRational) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::Invalid("T must be positive".into()));
        }
        Self::new(dim, &t * &t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn t2(&self) -> &BigRational {
        &self.t2
    }

    pub fn ints(&self) -> Result<SpecInts> {
        let num = self.t2.numer().to_i128().ok_or_else(|| {
            Error::ResourceCap("T^2 numerator exceeds the supported range".into())
        })?;
        let den = self.t2.denom().to_i128().ok_or_else(|| {
            Error::ResourceCap("T^2 denominator exceeds the supported range".into())
        })?;
        Ok(SpecInts {
            dim: self.dim,
            num,
            den,
        })
    }
}

/// Integer form of the ball predicate: sum_sq * den <= num.
#[derive(Debug, Clone, Copy)]
pub struct SpecInts {
    pub dim: usize,
    num: i128,
    den: i128,
}

impl SpecInts {
    fn contains_sum(&self, sum_sq: i128) -> bool {
        sum_sq * self.den <= self.num
    }

    /// Largest e >= 0 with sum_sq + e^2 still inside the ball, or None.
    fn entry_bound(&self, sum_sq: i128) -> Option<i64> {
        let rem = self.num - sum_sq * self.den;
        if rem < 0 {
            return None;
        }
        Some(isqrt_i128(rem / self.den))
    }
}

fn isqrt_i128(v: i128) -> i64 {
    if v < 0 {
        return -1;
    }
    let mut r = (v as f64).sqrt() as i128;
    while r > 0 && r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r as i64
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn row_gcd(row: &[i64]) -> i64 {
    row.iter().fold(0i64, |g, &e| gcd_i64(g, e))
}

/// Rank over Q of an r x d integer matrix, fraction-free elimination.
fn rank_i128(rows: &[i128], r: usize, d: usize) -> usize {
    let mut m = rows.to_vec();
    let mut rank = 0usize;
    let mut col = 0usize;
    while rank < r && col < d {
        let mut pivot = None;
        for i in rank..r {
            if m[i * d + col] != 0 {
                pivot = Some(i);
                break;
            }
        }
        let Some(pi) = pivot else {
            col += 1;
            continue;
        };
        if pi != rank {
            for j in 0..d {
                m.swap(rank * d + j, pi * d + j);
            }
        }
        let pv = m[rank * d + col];
        for i in rank + 1..r {
            let f = m[i * d + col];
            if f == 0 {
                continue;
            }
            for j in col..d {
                m[i * d + j] = m[i * d + j] * pv - f * m[rank * d + j];
            }
        }
        rank += 1;
        col += 1;
    }
    rank
}

/// Statistics from one enumeration run.
#[derive(Debug, Clone, Copy)]
pub struct EnumStats {
    pub count: u64,
    pub max_abs_entry: i64,
    pub wall_ms: u128,
}

/// All feasible first rows in lexicographic order: norm within budget and
/// gcd 1 (the gcd of any row divides the determinant).
pub fn first_rows(spec: &BallSpec) -> Result<Vec<Vec<i64>>> {
    let si = spec.ints()?;
    let d = si.dim;
    let mut rows = Vec::new();
    let mut row = vec![0i64; d];
    fn rec(si: &SpecInts, d: usize, idx: usize, sum_sq: i128, row: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if idx == d {
            if row_gcd(row) == 1 {
                out.push(row.clone());
            }
            return;
        }
        let Some(bound) = si.entry_bound(sum_sq) else {
            return;
        };
        for e in -bound..=bound {
            row[idx] = e;
            rec(si, d, idx + 1, sum_sq + (e as i128) * (e as i128), row, out);
        }
        row[idx] = 0;
    }
    rec(&si, d, 0, 0, &mut row, &mut rows);
    Ok(rows)
}

/// Enumerate all completions of a fixed first row; the visitor returns false
/// to abort. Returns false when aborted.
pub fn enumerate_suffix(
    si: &SpecInts,
    first_row: &[i64],
    visit: &mut dyn FnMut(&[i64]) -> bool,
) -> bool {
    let d = si.dim;
    debug_assert_eq!(first_row.len(), d);
    let mut entries = vec![0i64; d * d];
    entries[..d].copy_from_slice(first_row);
    let sum0: i128 = first_row.iter().map(|&e| (e as i128) * (e as i128)).sum();
    if !si.contains_sum(sum0) {
        return true;
    }
    fill_middle_rows(si, &mut entries, 1, sum0, visit)
}

/// Recursively fill rows 1..d-2, then hand off to the last-row scan.
fn fill_middle_rows(
    si: &SpecInts,
    entries: &mut Vec<i64>,
    row: usize,
    sum_sq: i128,
    visit: &mut dyn FnMut(&[i64]) -> bool,
) -> bool {
    let d = si.dim;
    if row == d - 1 {
        return last_row_scan(si, entries, sum_sq, visit);
    }
    fn rec(
        si: &SpecInts,
        entries: &mut Vec<i64>,
        row: usize,
        idx: usize,
        sum_sq: i128,
        visit: &mut dyn FnMut(&[i64]) -> bool,
    ) -> bool {
        let d = si.dim;
        if idx == d {
            // completed row: gcd and linear-independence pruning
            let r = &entries[row * d..(row + 1) * d];
            if row_gcd(r) != 1 {
                return true;
            }
            let upper: Vec<i128> = entries[..(row + 1) * d].iter().map(|&e| e as i128).collect();
            if rank_i128(&upper, row + 1, d) != row + 1 {
                return true;
            }
            return fill_middle_rows(si, entries, row + 1, sum_sq, visit);
        }
        let Some(bound) = si.entry_bound(sum_sq) else {
            return true;
        };
        for e in -bound..=bound {
            entries[row * d + idx] = e;
            if !rec(si, entries, row, idx + 1, sum_sq + (e as i128) * (e as i128), visit) {
                return false;
            }
        }
        entries[row * d + idx] = 0;
        true
    }
    rec(si, entries, row, 0, sum_sq, visit)
}

/// Scan the first d-1 entries of the last row; solve the final entry from
/// det = 1. The determinant is linear in the last row:
/// det = sum_j entries[d-1][j] * cof_j, with cof_j fixed by the upper rows.
fn last_row_scan(
    si: &SpecInts,
    entries: &mut Vec<i64>,
    sum_sq: i128,
    visit: &mut dyn FnMut(&[i64]) -> bool,
) -> bool {
    let d = si.dim;
    // cofactors along the last row
    let mut cof = vec![0i128; d];
    let mut minor = vec![0i128; (d - 1) * (d - 1)];
    for j in 0..d {
        let mut idx = 0;
        for r in 0..d - 1 {
            for c in 0..d {
                if c == j {
                    continue;
                }
                minor[idx] = entries[r * d + c] as i128;
                idx += 1;
            }
        }
        let det = det_i128_inplace(&mut minor.clone(), d - 1).expect("desk-scale minors fit i128");
        let sign = if (d - 1 + j) % 2 == 0 { 1 } else { -1 };
        cof[j] = sign as i128 * det;
    }
    if cof.iter().all(|&c| c == 0) {
        // upper rows are rank-deficient in every way; det can never be 1
        return true;
    }
    let solve_col = d - 1;
    fn rec(
        si: &SpecInts,
        entries: &mut Vec<i64>,
        cof: &[i128],
        idx: usize,
        solve_col: usize,
        sum_sq: i128,
        dot: i128,
        visit: &mut dyn FnMut(&[i64]) -> bool,
    ) -> bool {
        let d = si.dim;
        let base = (d - 1) * d;
        if idx == solve_col {
            let a = cof[solve_col];
            if a != 0 {
                let num = 1 - dot;
                if num % a != 0 {
                    return true;
                }
                let x = num / a;
                let x2 = x * x;
                if !si.contains_sum(sum_sq + x2) {
                    return true;
                }
                let Ok(xi) = i64::try_from(x) else {
                    return true;
                };
                entries[base + solve_col] = xi;
                return visit(entries);
            }
            // determinant independent of the solved entry
            if dot != 1 {
                return true;
            }
            let Some(bound) = si.entry_bound(sum_sq) else {
                return true;
            };
            for x in -bound..=bound {
                entries[base + solve_col] = x;
                if !visit(entries) {
                    return false;
                }
            }
            return true;
        }
        let Some(bound) = si.entry_bound(sum_sq) else {
            return true;
        };
        for e in -bound..=bound {
            entries[base + idx] = e;
            let e128 = e as i128;
            if !rec(
                si,
                entries,
                cof,
                idx + 1,
                solve_col,
                sum_sq + e128 * e128,
                dot + e128 * cof[idx],
                visit,
            ) {
                return false;
            }
        }
        entries[base + idx] = 0;
        true
    }
    rec(si, entries, &cof, 0, solve_col, sum_sq, 0, visit)
}

/// Visit every element of the ball exactly once, in lexicographic order over
/// entries. Errors with a resource cap when more than `cap` elements appear.
pub fn enumerate_ball(
    spec: &BallSpec,
    cap: u64,
    visitor: &mut dyn FnMut(&[i64]),
) -> Result<EnumStats> {
    let si = spec.ints()?;
    let start = Instant::now();
    let rows = first_rows(spec)?;
    let mut count = 0u64;
    let mut max_abs = 0i64;
    let mut over_cap = false;
    for row in &rows {
        let ok = enumerate_suffix(&si, row, &mut |entries| {
            if count >= cap {
                over_cap = true;
                return false;
            }
            count += 1;
            for &e in entries.iter() {
                max_abs = max_abs.max(e.abs());
            }
            debug_assert!(crate::matrix::det_exact(entries, si.dim) == BigInt::from(1));
            visitor(entries);
            true
        });
        if !ok {
            break;
        }
    }
    if over_cap {
        return Err(Error::ResourceCap(format!(
            "ball enumeration exceeded the cap of {cap} elements"
        )));
    }
    Ok(EnumStats {
        count,
        max_abs_entry: max_abs,
        wall_ms: start.elapsed().as_millis(),
    })
}

/// N_T: number of elements in the ball.
pub fn count_ball(spec: &BallSpec, cap: u64) -> Result<u64> {
    Ok(enumerate_ball(spec, cap, &mut |_| {})?.count)
}

/// Parallel count: deterministic (plain sum over first-row shards).
pub fn count_ball_parallel(spec: &BallSpec, cap: u64) -> Result<u64> {
    let si = spec.ints()?;
    let rows = first_rows(spec)?;
    let total: u64 = rows.par_iter().map(|row| count_suffix(&si, row)).sum();
    if total > cap {
        return Err(Error::ResourceCap(format!(
            "ball enumeration exceeded the cap of {cap} elements"
        )));
    }
    Ok(total)
}

/// Number of completions of one first row.
pub fn count_suffix(si: &SpecInts, row: &[i64]) -> u64 {
    let mut n = 0u64;
    enumerate_suffix(si, row, &mut |_| {
        n += 1;
        true
    });
    n
}

/// Fiber sizes of the reduction map pi_p restricted to the ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberTable {
    pub prime: u64,
    /// Keyed by the reduced matrix, entries row-major in [0, p).
    pub counts: BTreeMap<Vec<u16>, u64>,
    pub total: u64,
}

/// Count elements of the ball per residue class mod p.
/// `group_cap` bounds |SL_d(F_p)| (table memory), `enum_cap` the ball size.
pub fn congruence_fiber_counts(
    spec: &BallSpec,
    p: u64,
    group_cap: u64,
    enum_cap: u64,
) -> Result<FiberTable> {
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    let order = sl_group_order(spec.dim() as u32, p);
    if order > BigInt::from(group_cap) {
        return Err(Error::ResourceCap(format!(
            "|SL_{d}(F_{p})| = {order} exceeds the memory cap {group_cap}",
            d = spec.dim()
        )));
    }
    let mut counts: BTreeMap<Vec<u16>, u64> = BTreeMap::new();
    let pi = p as i64;
    let stats = enumerate_ball(spec, enum_cap, &mut |entries| {
        let key: Vec<u16> = entries.iter().map(|&e| (e.rem_euclid(pi)) as u16).collect();
        *counts.entry(key).or_insert(0) += 1;
    })?;
    Ok(FiberTable {
        prime: p,
        counts,
        total: stats.count,
    })
}

/// One checkpoint line: the first-row entries then the partial count.
pub fn checkpoint_line(row: &[i64], count: u64) -> String {
    let mut s = row
        .iter()
        .map(|e| e.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    s.push(' ');
    s.push_str(&count.to_string());
    s.push('\n');
    s
}

/// Parse checkpoint text: one line per completed first-row shard.
pub fn parse_checkpoint(text: &str, dim: usize) -> Result<BTreeMap<Vec<i64>, u64>> {
    let mut out = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != dim + 1 {
            return Err(Error::Invalid(format!(
                "checkpoint line {}: expected {} fields, got {}",
                lineno + 1,
                dim + 1,
                fields.len()
            )));
        }
        let row: std::result::Result<Vec<i64>, _> =
            fields[..dim].iter().map(|f| f.parse::<i64>()).collect();
        let count = fields[dim].parse::<u64>();
        match (row, count) {
            (Ok(r), Ok(c)) => {
                out.insert(r, c);
            }
            _ => {
                return Err(Error::Invalid(format!(
                    "checkpoint line {}: malformed entry",
                    lineno + 1
                )))
            }
        }
    }
    Ok(out)
}
