//! Integer partitions: the index set of every symmetric-function basis.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition parts must be weakly decreasing: {0:?}")]
    NotDecreasing(Vec<u32>),
    #[error("partition parts must be positive: {0:?}")]
    ZeroPart(Vec<u32>),
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("dominance order needs equal weights, got {0} and {1}")]
    WeightMismatch(u32, u32),
}

/// A weakly decreasing sequence of positive integers.
///
/// The derived `Ord` is lexicographic on the parts; `partitions_of` lists a
/// weight class in the reverse of that order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart(parts));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros, so any multiset of parts is accepted.
    pub fn from_multiset(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (zero-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0);
        let parts = (1..=cols)
            .map(|c| self.0.iter().take_while(|&&p| p >= c).count() as u32)
            .collect();
        Partition(parts)
    }

    /// `self ≤ other` in dominance order.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool, PartitionError> {
        let (a, b) = (self.weight(), other.weight());
        if a != b {
            return Err(PartitionError::WeightMismatch(a, b));
        }
        let len = self.len().max(other.len());
        let (mut s, mut t) = (0u32, 0u32);
        for i in 0..len {
            s += self.part(i);
            t += other.part(i);
            if s > t {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// z_λ = Π_i i^{m_i} m_i!, where m_i is the multiplicity of part i.
    pub fn z_factor(&self) -> BigUint {
        let mut z = BigUint::one();
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let mult = self.0[i..].iter().take_while(|&&q| q == p).count();
            for r in 1..=mult {
                z *= BigUint::from(p) * BigUint::from(r);
            }
            i += mult;
        }
        z
    }

    /// λ lies in the (n, m)-hook: λ_{n+1} ≤ m.
    pub fn in_hook(&self, n: usize, m: usize) -> bool {
        self.part(n) as usize <= m
    }

    /// Multiplicities of each part size, indexed by size (index 0 unused).
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut mult = vec![0; self.part(0) as usize + 1];
        for &p in &self.0 {
            mult[p as usize] += 1;
        }
        mult
    }
}

/// All partitions of `d` in reverse-lexicographic order.
pub fn partitions_of(d: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out
}

/// All partitions of weight at most `d`, by weight, each class reverse-lex.
pub fn partitions_up_to(d: u32) -> Vec<Partition> {
    (0..=d).flat_map(partitions_of).collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| PartitionError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn dominance_examples() {
        assert!(p("1,1").dominance_leq(&p("2")).unwrap());
        assert!(p("2,2").dominance_leq(&p("3,1")).unwrap());
        assert!(!p("2,2,2").dominance_leq(&p("3,1,1,1")).unwrap());
        assert!(!p("3,1,1,1").dominance_leq(&p("2,2,2")).unwrap());
        assert_eq!(
            p("2").dominance_leq(&p("2,1")),
            Err(PartitionError::WeightMismatch(2, 3))
        );
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p("3,1").conjugate(), p("2,1,1"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p("2,2").conjugate(), p("2,2"));
    }

    #[test]
    fn z_factor_examples() {
        assert_eq!(p("1").z_factor(), BigUint::from(1u32));
        assert_eq!(p("2,1").z_factor(), BigUint::from(2u32));
        assert_eq!(p("2,2").z_factor(), BigUint::from(8u32));
        assert_eq!(Partition::empty().z_factor(), BigUint::from(1u32));
    }

    #[test]
    fn hook_examples() {
        assert!(!p("2,2").in_hook(1, 1));
        assert!(p("3,1").in_hook(2, 2));
        assert!(p("1,1,1").in_hook(0, 1));
    }

    #[test]
    fn enumeration() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(2), vec![p("2"), p("1,1")]);
        assert_eq!(partitions_of(4).len(), 5);
        let counts: Vec<usize> = (0..=12).map(|d| partitions_of(d).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("3,1").to_string(), "3,1");
        assert_eq!(Partition::empty().to_string(), "");
        assert!("1,2".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn order_properties() {
        for d in 0..=12 {
            for l in partitions_of(d) {
                assert_eq!(l.conjugate().conjugate(), l);
            }
        }
        for d in 0..=10 {
            let class = partitions_of(d);
            for a in &class {
                assert!(a.dominance_leq(a).unwrap());
                for b in &class {
                    let ab = a.dominance_leq(b).unwrap();
                    let ba = b.dominance_leq(a).unwrap();
                    if ab && ba {
                        assert_eq!(a, b);
                    }
                    assert_eq!(ab, b.conjugate().dominance_leq(&a.conjugate()).unwrap());
                    for c in &class {
                        if ab && b.dominance_leq(c).unwrap() {
                            assert!(a.dominance_leq(c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reverse_lex_extends_dominance() {
        for d in 0..=9 {
            let class = partitions_of(d);
            for (i, a) in class.iter().enumerate() {
                for b in &class[i + 1..] {
                    assert!(a > b);
                    assert!(!a.dominance_leq(b).unwrap());
                }
            }
        }
    }
}
