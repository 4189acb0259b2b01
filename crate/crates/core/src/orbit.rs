//! Nilpotent orbits of classical algebras, their dimensions, weighted
//! Dynkin diagrams and Jacobson–Morozov flag types.

use std::fmt;

use serde::Serialize;

use crate::algebra::{Algebra, Family};
use crate::error::{Error, Result};
use crate::partition::{Partition, Sign};

/// Tag distinguishing the two orbits sharing a very even Jordan type in type D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VeryEvenLabel {
    I,
    II,
}

impl fmt::Display for VeryEvenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VeryEvenLabel::I => "I",
            VeryEvenLabel::II => "II",
        })
    }
}

/// Whether the Jordan type `p` in `algebra` splits into two labelled orbits.
pub fn needs_label(algebra: Algebra, p: &Partition) -> bool {
    algebra.family() == Family::D && p.is_very_even()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NilpotentOrbit {
    algebra: Algebra,
    partition: Partition,
    label: Option<VeryEvenLabel>,
}

impl NilpotentOrbit {
    /// Validates size, admissibility and label presence.
    pub fn new(algebra: Algebra, partition: Partition, label: Option<VeryEvenLabel>) -> Result<Self> {
        if partition.size() != algebra.natural_dim() {
            return Err(Error::SizeMismatch {
                left: partition.size(),
                right: algebra.natural_dim(),
            });
        }
        if let Some(sign) = algebra.sign() {
            if !partition.is_admissible(sign) {
                return Err(Error::Inadmissible {
                    partition: partition.to_string(),
                    algebra: algebra.to_string(),
                });
            }
        }
        match (needs_label(algebra, &partition), label) {
            (true, None) => Err(Error::precondition(format!(
                "very even partition [{partition}] in {algebra} needs a label I or II"
            ))),
            (false, Some(_)) => Err(Error::precondition(format!(
                "partition [{partition}] in {algebra} takes no very even label"
            ))),
            _ => Ok(NilpotentOrbit {
                algebra,
                partition,
                label,
            }),
        }
    }

    /// Like [`NilpotentOrbit::new`], but attaches label I when one is needed
    /// and none was given.
    pub fn with_default_label(algebra: Algebra, partition: Partition) -> Result<Self> {
        let label = needs_label(algebra, &partition).then_some(VeryEvenLabel::I);
        NilpotentOrbit::new(algebra, partition, label)
    }

    pub fn zero(algebra: Algebra) -> Self {
        let partition = Partition::ones(algebra.natural_dim());
        NilpotentOrbit {
            algebra,
            partition,
            label: None,
        }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn label(&self) -> Option<VeryEvenLabel> {
        self.label
    }

    pub fn is_zero(&self) -> bool {
        self.partition.largest() <= 1
    }

    /// `(dim g − dim O)`
    pub fn codim(&self) -> usize {
        self.algebra.dim() - orbit_dimension(self)
    }

    pub(crate) fn require_bcd(&self) -> Result<Sign> {
        self.algebra.sign().ok_or_else(|| {
            Error::precondition(format!("{} is of type A; expected B, C or D", self.algebra))
        })
    }
}

impl fmt::Display for NilpotentOrbit {
    /// `C6:[6,3^2]`, `D4:[4^2]/I`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.algebra, self.partition.bracketed())?;
        if let Some(label) = self.label {
            write!(f, "/{label}")?;
        }
        Ok(())
    }
}

impl Serialize for NilpotentOrbit {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("NilpotentOrbit", 3)?;
        st.serialize_field("algebra", &self.algebra)?;
        st.serialize_field("partition", &self.partition)?;
        st.serialize_field("label", &self.label)?;
        st.end()
    }
}

/// Every orbit of `algebra`, in decreasing lexicographic order of Jordan
/// type, with label I before II.
pub fn enumerate_orbits(algebra: Algebra) -> Vec<NilpotentOrbit> {
    let m = algebra.natural_dim();
    let partitions = match algebra.sign() {
        Some(sign) => Partition::admissible(m, sign),
        None => Partition::all(m),
    };
    lift_partitions(algebra, partitions)
}

/// Turns Jordan types into orbits, doubling the very even ones in type D.
pub(crate) fn lift_partitions(
    algebra: Algebra,
    partitions: impl IntoIterator<Item = Partition>,
) -> Vec<NilpotentOrbit> {
    let mut out = Vec::new();
    for partition in partitions {
        if needs_label(algebra, &partition) {
            for label in [VeryEvenLabel::I, VeryEvenLabel::II] {
                out.push(NilpotentOrbit {
                    algebra,
                    partition: partition.clone(),
                    label: Some(label),
                });
            }
        } else {
            out.push(NilpotentOrbit {
                algebra,
                partition,
                label: None,
            });
        }
    }
    out
}

/// Orbit dimension from the Jordan type.
///
/// With `t` the transpose of `d`: type A gives `m² − Σtᵢ²`; `so(m)` gives
/// `(m²−m)/2 − (Σtᵢ² − #odd parts)/2`; `sp(m)` gives
/// `(m²+m)/2 − (Σtᵢ² + #odd parts)/2`.
pub fn orbit_dimension(orbit: &NilpotentOrbit) -> usize {
    partition_orbit_dimension(orbit.algebra, &orbit.partition)
}

pub(crate) fn partition_orbit_dimension(algebra: Algebra, d: &Partition) -> usize {
    let m = algebra.natural_dim();
    let t = d.transpose();
    let sq: usize = t.parts().iter().map(|x| x * x).sum();
    let odd = d.parts().iter().filter(|&&x| x % 2 == 1).count();
    match algebra.sign() {
        None => m * m - sq,
        Some(Sign::Orthogonal) => (m * m - m) / 2 - (sq - odd) / 2,
        Some(Sign::Symplectic) => (m * m + m) / 2 - (sq + odd) / 2,
    }
}

/// The eigenvalues of the neutral element `h`: `d−1, d−3, …, 1−d` for each
/// part `d`, sorted non-increasingly.
pub fn h_eigenvalues(d: &Partition) -> Vec<i64> {
    let mut seq: Vec<i64> = d
        .parts()
        .iter()
        .flat_map(|&part| {
            let part = part as i64;
            (0..part).map(move |i| part - 1 - 2 * i)
        })
        .collect();
    seq.sort_unstable_by(|a, b| b.cmp(a));
    seq
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedDynkinDiagram {
    pub algebra: Algebra,
    pub labels: Vec<u8>,
}

impl fmt::Display for WeightedDynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.labels.iter().map(u8::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Labels `α(h)` on the simple roots, in Bourbaki order (the node carrying the
/// special B/C root, or the fork in type D, comes last).
pub fn weighted_dynkin(orbit: &NilpotentOrbit) -> Result<WeightedDynkinDiagram> {
    let algebra = orbit.algebra;
    let h = h_eigenvalues(&orbit.partition);
    let n = algebra.rank();
    let diff = |i: usize| h[i] - h[i + 1];
    let raw: Vec<i64> = match algebra.family() {
        Family::A => (0..n).map(diff).collect(),
        Family::B if n >= 1 => (0..n - 1).map(diff).chain([h[n - 1]]).collect(),
        Family::C if n >= 1 => (0..n - 1).map(diff).chain([2 * h[n - 1]]).collect(),
        Family::D if n >= 2 => (0..n - 2)
            .map(diff)
            .chain([h[n - 2] - h[n - 1], h[n - 2] + h[n - 1]])
            .collect(),
        _ => Vec::new(),
    };
    let labels = raw
        .into_iter()
        .map(|x| {
            u8::try_from(x)
                .ok()
                .filter(|&l| l <= 2)
                .ok_or_else(|| Error::invariant(format!("Dynkin label {x} outside 0..=2 for {orbit}")))
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(WeightedDynkinDiagram { algebra, labels })
}

/// Block sizes `(t₁, …, t_l)` of a (possibly isotropic) flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FlagType(pub Vec<usize>);

impl FlagType {
    pub fn blocks(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// The middle block of an odd-length palindrome, 0 for even length.
    pub fn middle(&self) -> usize {
        if self.0.len() % 2 == 1 {
            self.0[self.0.len() / 2]
        } else {
            0
        }
    }
}

impl fmt::Display for FlagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

/// Flag type of the Jacobson–Morozov parabolic: multiplicities of the
/// distinct eigenvalues of `h`.
pub fn jm_flag_type(orbit: &NilpotentOrbit) -> FlagType {
    let h = h_eigenvalues(&orbit.partition);
    let mut blocks: Vec<usize> = Vec::new();
    let mut prev = None;
    for x in h {
        if prev == Some(x) {
            *blocks.last_mut().expect("nonempty") += 1;
        } else {
            blocks.push(1);
            prev = Some(x);
        }
    }
    FlagType(blocks)
}

/// `b₂(G/P)` of the Jacobson–Morozov parabolic, defined for full-member
/// Jordan types in B, C, D: `k − 1` for largest part `k`, or `k` when type D
/// puts a block of size exactly 2 in the middle.
pub fn jm_picard_number(orbit: &NilpotentOrbit) -> Result<usize> {
    orbit.require_bcd()?;
    if !orbit.partition.has_full_members() {
        return Err(Error::precondition(format!(
            "{orbit} does not have full members"
        )));
    }
    let k = orbit.partition.largest();
    let flag = jm_flag_type(orbit);
    let d_middle_two = orbit.algebra.family() == Family::D
        && flag.blocks().len() == 2 * k - 1
        && flag.middle() == 2;
    Ok(if d_middle_two { k } else { k.saturating_sub(1) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orbit(alg: &str, d: &str) -> NilpotentOrbit {
        NilpotentOrbit::with_default_label(alg.parse().unwrap(), d.parse().unwrap()).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let c2 = enumerate_orbits("C2".parse().unwrap());
        let names: Vec<String> = c2.iter().map(|o| o.partition().to_string()).collect();
        assert_eq!(names, ["4", "2^2", "2,1^2", "1^4"]);
        assert_eq!(enumerate_orbits("D4".parse().unwrap()).len(), 12);
        assert_eq!(enumerate_orbits("A2".parse().unwrap()).len(), 3);
    }

    #[test]
    fn validation() {
        let c2: Algebra = "C2".parse().unwrap();
        assert!(NilpotentOrbit::new(c2, "3,1".parse().unwrap(), None).is_err());
        assert!(NilpotentOrbit::new(c2, "3".parse().unwrap(), None).is_err());
        let d4: Algebra = "D4".parse().unwrap();
        assert!(NilpotentOrbit::new(d4, "4,4".parse().unwrap(), None).is_err());
        assert!(NilpotentOrbit::new(d4, "5,3".parse().unwrap(), Some(VeryEvenLabel::I)).is_err());
        assert!(NilpotentOrbit::new(d4, "4,4".parse().unwrap(), Some(VeryEvenLabel::II)).is_ok());
    }

    #[test]
    fn dimensions() {
        assert_eq!(orbit_dimension(&orbit("C2", "2,1,1")), 4);
        assert_eq!(orbit_dimension(&orbit("C6", "6,3^2")), 62);
        assert_eq!(orbit_dimension(&orbit("C6", "1^12")), 0);
        assert_eq!(orbit_dimension(&orbit("A2", "3")), 6);
        assert_eq!(orbit_dimension(&orbit("D3", "2^2,1^2")), 6);
    }

    #[test]
    fn dynkin_labels() {
        assert_eq!(weighted_dynkin(&orbit("C1", "2")).unwrap().labels, [2]);
        assert_eq!(weighted_dynkin(&orbit("C2", "2,1,1")).unwrap().labels, [1, 0]);
        assert_eq!(weighted_dynkin(&orbit("B3", "1^7")).unwrap().labels, [0, 0, 0]);
        // regular orbits are labelled 2 everywhere
        assert_eq!(weighted_dynkin(&orbit("D4", "7,1")).unwrap().labels, [2, 2, 2, 2]);
        assert_eq!(weighted_dynkin(&orbit("A3", "4")).unwrap().labels, [2, 2, 2]);
        // the two fork labels of a very even orbit
        assert_eq!(weighted_dynkin(&orbit("D2", "2,2")).unwrap().labels, [0, 2]);
    }

    #[test]
    fn flag_types() {
        assert_eq!(jm_flag_type(&orbit("C2", "2,1,1")).0, [1, 2, 1]);
        assert_eq!(jm_flag_type(&orbit("D3", "2,2,1,1")).0, [2, 2, 2]);
        assert_eq!(
            jm_flag_type(&orbit("C6", "6,3,3")).0,
            [1, 1, 2, 1, 2, 1, 2, 1, 1]
        );
        assert_eq!(jm_flag_type(&orbit("C6", "6,3,3")).to_string(), "(1,1,2,1,2,1,2,1,1)");
    }

    #[test]
    fn picard_numbers() {
        assert_eq!(jm_picard_number(&orbit("C2", "2,1,1")).unwrap(), 1);
        assert_eq!(jm_picard_number(&orbit("D3", "2,2,1,1")).unwrap(), 2);
        assert_eq!(jm_picard_number(&orbit("B3", "2,2,1,1,1")).unwrap(), 1);
        assert!(jm_picard_number(&orbit("B3", "3,2,2")).is_err());
        assert!(jm_picard_number(&orbit("C6", "6,3,3")).is_err());
        assert!(jm_picard_number(&orbit("A2", "2,1")).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(orbit("C6", "6,3,3").to_string(), "C6:[6,3^2]");
        assert_eq!(orbit("D4", "4,4").to_string(), "D4:[4^2]/I");
    }
}
