use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    /// `None` for type A, which has no invariant form.
    pub fn sign(self) -> Option<Sign> {
        match self {
            Family::A => None,
            Family::B | Family::D => Some(Sign::Orthogonal),
            Family::C => Some(Sign::Symplectic),
        }
    }

    pub fn is_classical_bcd(self) -> bool {
        self != Family::A
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            _ => Err(Error::MalformedAlgebra {
                text: s.to_string(),
                reason: "family must be one of A, B, C, D".into(),
            }),
        }
    }
}

/// A classical Lie algebra: `sl(n+1)`, `so(2n+1)`, `sp(2n)` or `so(2n)`.
///
/// User-facing constructors enforce the usual rank bounds. Levi factors
/// produced by induction may be degenerate (`sp(0)`, `so(1)`, `so(2)`), so
/// [`Algebra::classical`] accepts them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Algebra {
    family: Family,
    rank: usize,
}

impl Algebra {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::D => 2,
            _ => 1,
        };
        if rank < min {
            return Err(Error::MalformedAlgebra {
                text: format!("{family}{rank}"),
                reason: format!("rank of type {family} must be at least {min}"),
            });
        }
        Ok(Algebra { family, rank })
    }

    /// The orthogonal or symplectic algebra on an `m`-dimensional space,
    /// including the degenerate small cases.
    pub fn classical(sign: Sign, m: usize) -> Result<Self> {
        match sign {
            Sign::Orthogonal if m % 2 == 1 => Ok(Algebra {
                family: Family::B,
                rank: (m - 1) / 2,
            }),
            Sign::Orthogonal => Ok(Algebra {
                family: Family::D,
                rank: m / 2,
            }),
            Sign::Symplectic if m.is_multiple_of(2) => Ok(Algebra {
                family: Family::C,
                rank: m / 2,
            }),
            Sign::Symplectic => Err(Error::precondition(format!(
                "symplectic space of odd dimension {m}"
            ))),
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    pub fn sign(self) -> Option<Sign> {
        self.family.sign()
    }

    /// Dimension `m` of the natural representation.
    pub fn natural_dim(self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::B => 2 * self.rank + 1,
            Family::C | Family::D => 2 * self.rank,
        }
    }

    /// Dimension of the Lie algebra itself.
    pub fn dim(self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * n + 2 * n,
            Family::B | Family::C => 2 * n * n + n,
            Family::D => 2 * n * n - n,
        }
    }

    /// `sp(12)`, `so(7)`, `sl(3)`.
    pub fn matrix_name(self) -> String {
        let m = self.natural_dim();
        match self.family {
            Family::A => format!("sl({m})"),
            Family::B | Family::D => format!("so({m})"),
            Family::C => format!("sp({m})"),
        }
    }

    /// All user-facing algebras of `family` whose natural dimension is at most `max_m`.
    pub fn up_to(family: Family, max_m: usize) -> Vec<Algebra> {
        (1..=max_m)
            .filter_map(|rank| Algebra::new(family, rank).ok())
            .filter(|a| a.natural_dim() <= max_m)
            .collect()
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl Serialize for Algebra {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Algebra {
    type Err = Error;

    /// `C6`, `B3`, `D4`, `A3`, or by natural dimension: `sp12`, `so13`, `so8`, `sl4`.
    fn from_str(text: &str) -> Result<Self> {
        let malformed = |reason: &str| Error::MalformedAlgebra {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = text
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '(' && *c != ')')
            .collect::<String>()
            .to_ascii_lowercase();
        let split = compact
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| malformed("missing rank or dimension"))?;
        let (name, digits) = compact.split_at(split);
        let number: usize = digits
            .parse()
            .map_err(|_| malformed("rank or dimension is not an integer"))?;
        match name {
            "a" | "b" | "c" | "d" => Algebra::new(name.parse()?, number),
            "sl" => {
                if number < 2 {
                    return Err(malformed("sl(m) needs m >= 2"));
                }
                Algebra::new(Family::A, number - 1)
            }
            "sp" => {
                if number % 2 == 1 {
                    return Err(malformed("sp(m) needs even m"));
                }
                Algebra::new(Family::C, number / 2)
            }
            "so" => {
                if number % 2 == 1 {
                    Algebra::new(Family::B, (number - 1) / 2)
                } else {
                    Algebra::new(Family::D, number / 2)
                }
            }
            _ => Err(malformed("unknown family")),
        }
    }
}
