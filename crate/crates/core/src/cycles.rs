//! Cycle types: partitions of d, indexing the conjugacy classes of S_d.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A partition of d, stored with parts in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType {
    parts: Vec<u32>,
}

impl CycleType {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(Error::Invalid("cycle type parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of parts, i.e. the d this is a partition of.
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// The transposition class (2, 1, ..., 1) in S_d.
    pub fn transposition(d: u32) -> Self {
        assert!(d >= 2);
        let mut parts = vec![1u32; d as usize - 1];
        parts[0] = 2;
        CycleType { parts }
    }

    /// True if this is (q, 1, ..., 1) for the given q.
    pub fn is_q_cycle(&self, q: u32) -> bool {
        self.parts[0] == q && self.parts[1..].iter().all(|&p| p == 1)
    }
}

impl serde::Serialize for CycleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for CycleType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl FromStr for CycleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: std::result::Result<Vec<u32>, _> =
            s.split(',').map(|t| t.trim().parse::<u32>()).collect();
        match parts {
            Ok(v) => CycleType::new(v),
            Err(_) => Err(Error::Invalid(format!("bad cycle type {s:?}"))),
        }
    }
}

/// All partitions of d in canonical order: non-increasing parts, generated in
/// descending lexicographic order, so (d) comes first and (1,...,1) last.
pub fn partitions_of(d: u32) -> Result<Vec<CycleType>> {
    if d == 0 {
        return Err(Error::Invalid("partitions_of(0) rejected".into()));
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<CycleType>) {
        if remaining == 0 {
            out.push(CycleType {
                parts: current.clone(),
            });
            return;
        }
        let hi = max_part.min(remaining);
        for part in (1..=hi).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(d, d, &mut current, &mut out);
    Ok(out)
}
