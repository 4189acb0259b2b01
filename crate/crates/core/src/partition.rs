//! Partitions as Jordan types: admissibility, dominance, transpose and the
//! ε-collapse.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The sign of the invariant bilinear form on the natural representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    /// ε = +1: symmetric form, orthogonal algebras.
    Orthogonal,
    /// ε = −1: skew form, symplectic algebras.
    Symplectic,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Orthogonal => 1,
            Sign::Symplectic => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Orthogonal => Sign::Symplectic,
            Sign::Symplectic => Sign::Orthogonal,
        }
    }

    /// `(-1)^count · self`
    pub fn flip_times(self, count: usize) -> Sign {
        if count.is_multiple_of(2) {
            self
        } else {
            self.flip()
        }
    }

    /// Whether parts of this size must occur with even multiplicity.
    pub fn constrains(self, part: usize) -> bool {
        match self {
            Sign::Orthogonal => part.is_multiple_of(2),
            Sign::Symplectic => part % 2 == 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Orthogonal => "+1",
            Sign::Symplectic => "-1",
        })
    }
}

/// A partition in canonical weakly decreasing form. Zero parts are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, sorting the parts and dropping zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `[1^m]`, the Jordan type of the zero orbit.
    pub fn ones(m: usize) -> Self {
        Partition { parts: vec![1; m] }
    }

    /// Builds a partition from `(part, multiplicity)` pairs in any order.
    pub fn from_exponents(pairs: &[(usize, usize)]) -> Self {
        Partition::new(
            pairs
                .iter()
                .flat_map(|&(part, mult)| std::iter::repeat_n(part, mult))
                .collect(),
        )
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The partitioned integer.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Part `i` (0-based), with zero padding past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Distinct parts `d₁ > … > d_k` with their multiplicities `s₁, …, s_k`.
    pub fn exponents(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, s)) if *q == p => *s += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&p| p == part).count()
    }

    /// Column lengths of the Young diagram.
    pub fn transpose(&self) -> Partition {
        let cols = self.largest();
        let parts = (1..=cols)
            .map(|c| self.parts.iter().take_while(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    fn prefix_sums(&self, len: usize) -> impl Iterator<Item = usize> + '_ {
        (0..len).scan(0, move |acc, i| {
            *acc += self.part(i);
            Some(*acc)
        })
    }

    /// Dominance order: every prefix sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        let len = self.len().max(other.len());
        Ok(self
            .prefix_sums(len)
            .zip(other.prefix_sums(len))
            .all(|(a, b)| a >= b))
    }

    /// Dominance for partitions already known to have equal size.
    pub(crate) fn dominates_same_size(&self, other: &Partition) -> bool {
        debug_assert_eq!(self.size(), other.size());
        let len = self.len().max(other.len());
        self.prefix_sums(len)
            .zip(other.prefix_sums(len))
            .all(|(a, b)| a >= b)
    }

    /// Every part of the constrained parity occurs with even multiplicity.
    pub fn is_admissible(&self, sign: Sign) -> bool {
        self.exponents()
            .iter()
            .all(|&(p, s)| !sign.constrains(p) || s % 2 == 0)
    }

    /// All parts even, each with even multiplicity. The empty partition is
    /// not very even.
    pub fn is_very_even(&self) -> bool {
        !self.is_empty()
            && self
                .exponents()
                .iter()
                .all(|&(p, s)| p % 2 == 0 && s % 2 == 0)
    }

    /// Every integer from 1 to the largest part occurs as a part.
    pub fn has_full_members(&self) -> bool {
        let ex = self.exponents();
        ex.len() == self.largest()
    }

    /// The dominance-maximal `sign`-admissible partition dominated by `self`.
    pub fn collapse(&self, sign: Sign) -> Result<Partition> {
        if sign == Sign::Symplectic && self.size() % 2 == 1 {
            return Err(Error::NoAdmissible {
                size: self.size(),
                sign: sign.to_string(),
            });
        }
        let mut parts = self.parts.clone();
        loop {
            let current = Partition::new(parts.clone());
            let offender = current
                .exponents()
                .into_iter()
                .find(|&(p, s)| sign.constrains(p) && s % 2 == 1)
                .map(|(p, _)| p);
            let Some(q) = offender else {
                return Ok(current);
            };
            parts = current.parts;
            let last = parts.iter().rposition(|&p| p == q).expect("offender present");
            parts[last] -= 1;
            match (last + 1..parts.len()).find(|&j| parts[j] + 1 < q) {
                Some(j) => parts[j] += 1,
                None => parts.push(1),
            }
        }
    }

    /// All partitions of `m` in decreasing lexicographic order.
    pub fn all(m: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill_partitions(m, m, &mut current, &mut out);
        out
    }

    /// All `sign`-admissible partitions of `m`, decreasing lexicographic order.
    pub fn admissible(m: usize, sign: Sign) -> Vec<Partition> {
        Partition::all(m)
            .into_iter()
            .filter(|p| p.is_admissible(sign))
            .collect()
    }

    /// `[6,3^2]` style.
    pub fn bracketed(&self) -> String {
        format!("[{self}]")
    }
}

fn fill_partitions(
    remaining: usize,
    max_part: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        current.push(p);
        fill_partitions(remaining - p, p, current, out);
        current.pop();
    }
}

impl fmt::Display for Partition {
    /// Exponent notation with exponents written only when greater than one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, s) in self.exponents() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            if s > 1 {
                write!(f, "{p}^{s}")?;
            } else {
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Result of parsing partition text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedPartition {
    pub partition: Partition,
    /// The input listed its parts out of weakly decreasing order.
    pub reordered: bool,
}

/// Parses `"6,3,3"` or `"6,3^2"`. Whitespace is ignored, as are enclosing
/// square brackets. Out-of-order input is sorted and flagged.
pub fn parse_partition(text: &str) -> Result<ParsedPartition> {
    let malformed = |reason: &str| Error::MalformedPartition {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let body = compact
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .unwrap_or(&compact);
    if body.is_empty() {
        return Ok(ParsedPartition {
            partition: Partition::empty(),
            reordered: false,
        });
    }
    let mut raw = Vec::new();
    for token in body.split(',') {
        let (base, exp) = match token.split_once('^') {
            Some((b, e)) => (b, Some(e)),
            None => (token, None),
        };
        let part: usize = base
            .parse()
            .map_err(|_| malformed(&format!("bad part {base:?}")))?;
        if part == 0 {
            return Err(malformed("parts must be positive"));
        }
        let mult: usize = match exp {
            Some(e) => e
                .parse()
                .map_err(|_| malformed(&format!("bad exponent {e:?}")))?,
            None => 1,
        };
        if mult == 0 {
            return Err(malformed("exponents must be positive"));
        }
        raw.extend(std::iter::repeat_n(part, mult));
    }
    let reordered = raw.windows(2).any(|w| w[0] < w[1]);
    Ok(ParsedPartition {
        partition: Partition::new(raw),
        reordered,
    })
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_partition(s).map(|p| p.partition)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(p(&[5, 4, 4, 1]).transpose(), p(&[4, 3, 3, 3, 1]));
        assert_eq!(p(&[1, 1, 1]).transpose(), p(&[3]));
        assert_eq!(Partition::empty().transpose(), Partition::empty());
    }

    #[test]
    fn dominance_examples() {
        assert!(p(&[4, 2]).dominates(&p(&[2, 2, 2])).unwrap());
        assert!(!p(&[5, 5]).dominates(&p(&[6, 3, 1])).unwrap());
        assert!(p(&[3, 1]).dominates(&p(&[3, 1])).unwrap());
        assert!(matches!(
            p(&[3]).dominates(&p(&[2, 2])),
            Err(Error::SizeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn admissibility_examples() {
        assert!(p(&[2, 2, 1, 1]).is_admissible(Sign::Orthogonal));
        assert!(!p(&[2, 1, 1]).is_admissible(Sign::Orthogonal));
        assert!(p(&[2, 1, 1]).is_admissible(Sign::Symplectic));
        assert!(p(&[6, 3, 3]).is_admissible(Sign::Symplectic));
        assert!(Partition::empty().is_admissible(Sign::Orthogonal));
    }

    #[test]
    fn very_even_and_full_members() {
        assert!(p(&[4, 4]).is_very_even());
        assert!(!p(&[2, 2, 1, 1]).is_very_even());
        assert!(p(&[2, 2, 2, 2]).is_very_even());
        assert!(!Partition::empty().is_very_even());

        assert!(p(&[2, 1, 1]).has_full_members());
        assert!(!p(&[6, 3, 3]).has_full_members());
        assert!(p(&[1, 1, 1, 1]).has_full_members());
        assert!(!p(&[2, 2]).has_full_members());
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(p(&[4, 2, 1]).collapse(Sign::Orthogonal).unwrap(), p(&[3, 3, 1]));
        assert_eq!(p(&[3, 1]).collapse(Sign::Symplectic).unwrap(), p(&[2, 2]));
        assert_eq!(p(&[2, 2]).collapse(Sign::Symplectic).unwrap(), p(&[2, 2]));
        assert!(matches!(
            p(&[2, 1]).collapse(Sign::Symplectic),
            Err(Error::NoAdmissible { size: 3, .. })
        ));
    }

    #[test]
    fn admissible_enumeration() {
        assert_eq!(
            Partition::admissible(4, Sign::Symplectic),
            vec![p(&[4]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        let so8 = Partition::admissible(8, Sign::Orthogonal);
        assert_eq!(so8.len(), 10);
        assert!(so8.contains(&p(&[3, 2, 2, 1])));
        assert_eq!(Partition::admissible(3, Sign::Symplectic), vec![]);
        assert_eq!(Partition::all(5).len(), 7);
    }

    #[test]
    fn parsing() {
        assert_eq!("6,3^2".parse::<Partition>().unwrap(), p(&[6, 3, 3]));
        assert_eq!("2,1^2".parse::<Partition>().unwrap(), p(&[2, 1, 1]));
        assert_eq!(" [ 2 , 1 ^ 2 ] ".parse::<Partition>().unwrap(), p(&[2, 1, 1]));
        assert!("0,3".parse::<Partition>().is_err());
        assert!("3^0".parse::<Partition>().is_err());
        assert!("3,,1".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());

        let parsed = parse_partition("1,3,3").unwrap();
        assert!(parsed.reordered);
        assert_eq!(parsed.partition, p(&[3, 3, 1]));
        assert!(!parse_partition("3,3,1").unwrap().reordered);
    }

    #[test]
    fn display_uses_exponents() {
        assert_eq!(p(&[6, 3, 3]).to_string(), "6,3^2");
        assert_eq!(p(&[2, 1, 1]).bracketed(), "[2,1^2]");
        assert_eq!(Partition::empty().bracketed(), "[]");
    }
}
