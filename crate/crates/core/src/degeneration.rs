//! Closure order, minimal degenerations and their Kraft–Procesi
//! classification.

use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::orbit::{enumerate_orbits, lift_partitions, orbit_dimension, partition_orbit_dimension, NilpotentOrbit};
use crate::par;
use crate::partition::{Partition, Sign};

/// Index pairs `(upper, lower)` of the cover relation of dominance restricted
/// to `partitions`, found by brute-force transitive reduction.
pub fn partition_covers(partitions: &[Partition]) -> Vec<(usize, usize)> {
    let n = partitions.len();
    let above: Vec<Vec<bool>> = par::map(partitions, |u| {
        partitions
            .iter()
            .map(|v| u != v && u.size() == v.size() && u.dominates_same_size(v))
            .collect()
    });
    let idx: Vec<usize> = (0..n).collect();
    par::flat_map(&idx, |&i| {
        (0..n)
            .filter(|&j| above[i][j] && !(0..n).any(|k| above[i][k] && above[k][j]))
            .map(|j| (i, j))
            .collect()
    })
}

fn admissible_or_all(algebra: Algebra) -> Vec<Partition> {
    let m = algebra.natural_dim();
    match algebra.sign() {
        Some(sign) => Partition::admissible(m, sign),
        None => Partition::all(m),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassLetter {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "d")]
    D,
    #[serde(rename = "e")]
    E,
    #[serde(rename = "f")]
    F,
    #[serde(rename = "g")]
    G,
    #[serde(rename = "h")]
    H,
}

impl fmt::Display for ClassLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            ClassLetter::A => "a",
            ClassLetter::B => "b",
            ClassLetter::C => "c",
            ClassLetter::D => "d",
            ClassLetter::E => "e",
            ClassLetter::F => "f",
            ClassLetter::G => "g",
            ClassLetter::H => "h",
        };
        f.write_str(c)
    }
}

/// One of the eight minimal irreducible degenerations, with its parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IrreducibleClass {
    pub letter: ClassLetter,
    pub n: usize,
    pub codim: usize,
}

impl fmt::Display for IrreducibleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={})", self.letter, self.n)
    }
}

/// Matches an irreducible minimal pair against the list a–h.
pub fn classify_irreducible(d: &Partition, f: &Partition, sign: Sign) -> Result<IrreducibleClass> {
    use ClassLetter::*;
    let dp = d.parts();
    let fp = f.parts();
    let is_ones = |p: &[usize], len: usize| p.len() == len && p.iter().all(|&x| x == 1);
    let class = |letter, n, codim| IrreducibleClass { letter, n, codim };

    let found = match (sign, dp) {
        (Sign::Symplectic, [2]) if is_ones(fp, 2) => Some(class(A, 1, 2)),
        (Sign::Symplectic, &[x]) if x % 2 == 0 && x >= 4 && fp == [x - 2, 2] => {
            Some(class(B, x / 2, 2))
        }
        (Sign::Orthogonal, &[x]) if x % 2 == 1 && x >= 3 && fp == [x - 2, 1, 1] => {
            Some(class(C, (x - 1) / 2, 2))
        }
        (Sign::Symplectic, &[x, y]) if x == y && x % 2 == 1 && fp == [x - 1, x - 1, 2] => {
            Some(class(D, (x - 1) / 2, 2))
        }
        (Sign::Orthogonal, &[x, y]) if x == y && x % 2 == 0 && x >= 2 && fp == [x - 1, x - 1, 1, 1] => {
            Some(class(E, x / 2, 2))
        }
        _ => None,
    };
    if let Some(c) = found {
        return Ok(c);
    }

    // f, g, h: d has a few 2s followed by 1s and f is the zero orbit.
    let twos = dp.iter().take_while(|&&x| x == 2).count();
    let ones = dp.len() - twos;
    let tail_ok = dp[twos..].iter().all(|&x| x == 1);
    if tail_ok && twos > 0 && is_ones(fp, d.size()) {
        match (sign, twos) {
            // (2², 1^{2n−3}) in so(2n+1), n > 1
            (Sign::Orthogonal, 2) if ones % 2 == 1 && ones >= 1 => {
                let n = (ones + 3) / 2;
                return Ok(class(F, n, 4 * n - 4));
            }
            // (2², 1^{2n−4}) in so(2n), n > 2
            (Sign::Orthogonal, 2) if ones.is_multiple_of(2) && ones >= 2 => {
                let n = (ones + 4) / 2;
                return Ok(class(H, n, 4 * n - 6));
            }
            // (2, 1^{2n−2}) in sp(2n), n > 1
            (Sign::Symplectic, 1) if ones.is_multiple_of(2) && ones >= 2 => {
                let n = (ones + 2) / 2;
                return Ok(class(G, n, 2 * n));
            }
            _ => {}
        }
    }
    Err(Error::invariant(format!(
        "pair ([{d}], [{f}]) with ε = {sign} matches none of the classes a–h"
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ErasureKind {
    Rows,
    Columns,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErasureStep {
    pub kind: ErasureKind,
    pub count: usize,
    /// The erased rows, or the lengths of the erased columns.
    pub block: Partition,
    pub sign_before: Sign,
    pub sign_after: Sign,
}

/// Record of a Kraft–Procesi row/column reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KpTrace {
    pub upper: Partition,
    pub lower: Partition,
    pub sign: Sign,
    pub steps: Vec<ErasureStep>,
    pub upper_irreducible: Partition,
    pub lower_irreducible: Partition,
    pub sign_irreducible: Sign,
}

impl KpTrace {
    /// Undoes every erasure, recovering the original pair.
    pub fn replay(&self) -> (Partition, Partition) {
        let mut d = self.upper_irreducible.clone();
        let mut f = self.lower_irreducible.clone();
        for step in self.steps.iter().rev() {
            match step.kind {
                ErasureKind::Rows => {
                    d = prepend_rows(&step.block, &d);
                    f = prepend_rows(&step.block, &f);
                }
                ErasureKind::Columns => {
                    d = prepend_rows(&step.block, &d.transpose()).transpose();
                    f = prepend_rows(&step.block, &f.transpose()).transpose();
                }
            }
        }
        (d, f)
    }
}

fn prepend_rows(block: &Partition, rest: &Partition) -> Partition {
    Partition::new(block.parts().iter().chain(rest.parts()).copied().collect())
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Strips common leading columns (maximal block first) and then the longest
/// admissible block of common leading rows, until neither applies.
pub fn kp_reduce(d: &Partition, f: &Partition, sign: Sign) -> Result<KpTrace> {
    if d.size() != f.size() {
        return Err(Error::SizeMismatch {
            left: d.size(),
            right: f.size(),
        });
    }
    for p in [d, f] {
        if !p.is_admissible(sign) {
            return Err(Error::precondition(format!("[{p}] is not {sign}-admissible")));
        }
    }
    if d == f || !d.dominates_same_size(f) {
        return Err(Error::precondition(format!("[{d}] does not strictly dominate [{f}]")));
    }
    if !is_minimal_pair(d, f, sign) {
        return Err(Error::precondition(format!("([{d}], [{f}]) is not a minimal degeneration")));
    }

    let mut cur_d = d.clone();
    let mut cur_f = f.clone();
    let mut cur_sign = sign;
    let mut steps = Vec::new();
    loop {
        let td = cur_d.transpose();
        let tf = cur_f.transpose();
        let cols = common_prefix(td.parts(), tf.parts());
        if cols > 0 {
            let block = Partition::new(td.parts()[..cols].to_vec());
            let strip = |p: &Partition| {
                Partition::new(p.parts().iter().map(|&x| x.saturating_sub(cols)).collect())
            };
            cur_d = strip(&cur_d);
            cur_f = strip(&cur_f);
            let after = cur_sign.flip_times(cols);
            steps.push(ErasureStep {
                kind: ErasureKind::Columns,
                count: cols,
                block,
                sign_before: cur_sign,
                sign_after: after,
            });
            cur_sign = after;
            continue;
        }
        let common = common_prefix(cur_d.parts(), cur_f.parts());
        let rows = (1..=common)
            .rev()
            .find(|&r| Partition::new(cur_d.parts()[..r].to_vec()).is_admissible(cur_sign));
        match rows {
            Some(r) => {
                let block = Partition::new(cur_d.parts()[..r].to_vec());
                cur_d = Partition::new(cur_d.parts()[r..].to_vec());
                cur_f = Partition::new(cur_f.parts()[r..].to_vec());
                steps.push(ErasureStep {
                    kind: ErasureKind::Rows,
                    count: r,
                    block,
                    sign_before: cur_sign,
                    sign_after: cur_sign,
                });
            }
            None => break,
        }
    }
    Ok(KpTrace {
        upper: d.clone(),
        lower: f.clone(),
        sign,
        steps,
        upper_irreducible: cur_d,
        lower_irreducible: cur_f,
        sign_irreducible: cur_sign,
    })
}

fn is_minimal_pair(d: &Partition, f: &Partition, sign: Sign) -> bool {
    !Partition::admissible(d.size(), sign)
        .iter()
        .any(|w| w != d && w != f && d.dominates_same_size(w) && w.dominates_same_size(f))
}

/// `dim O_d − dim O_f` for a strict degeneration `d > f` in `algebra`.
pub fn degeneration_codim(d: &Partition, f: &Partition, algebra: Algebra) -> Result<usize> {
    for p in [d, f] {
        NilpotentOrbit::with_default_label(algebra, p.clone())?;
    }
    if d == f || !d.dominates_same_size(f) {
        return Err(Error::precondition(format!(
            "[{d}] does not strictly dominate [{f}]"
        )));
    }
    Ok(partition_orbit_dimension(algebra, d) - partition_orbit_dimension(algebra, f))
}

/// A degeneration `O_lower ⊂ closure(O_upper)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Degeneration {
    pub upper: NilpotentOrbit,
    pub lower: NilpotentOrbit,
    pub minimal: bool,
    pub trace: Option<KpTrace>,
    pub class: Option<IrreducibleClass>,
    pub codim: usize,
}

/// Classifies a partition-level cover, checking the class codimension
/// against the orbit dimensions.
fn classify_cover(
    algebra: Algebra,
    d: &Partition,
    f: &Partition,
) -> Result<(Option<KpTrace>, Option<IrreducibleClass>, usize)> {
    let codim = partition_orbit_dimension(algebra, d) - partition_orbit_dimension(algebra, f);
    let Some(sign) = algebra.sign() else {
        return Ok((None, None, codim));
    };
    let trace = kp_reduce(d, f, sign)?;
    let class = classify_irreducible(
        &trace.upper_irreducible,
        &trace.lower_irreducible,
        trace.sign_irreducible,
    )?;
    if class.codim != codim {
        return Err(Error::invariant(format!(
            "{algebra}: cover [{d}] > [{f}] has codimension {codim} but class {class} predicts {}",
            class.codim
        )));
    }
    Ok((Some(trace), Some(class), codim))
}

/// One degeneration per orbit covered by `orbit`. A very even lower Jordan
/// type in type D yields two entries, one per label.
pub fn minimal_degenerations(orbit: &NilpotentOrbit) -> Result<Vec<Degeneration>> {
    let algebra = orbit.algebra();
    let d = orbit.partition();
    let partitions = admissible_or_all(algebra);
    let me = partitions
        .iter()
        .position(|p| p == d)
        .ok_or_else(|| Error::invariant(format!("{orbit} missing from its own catalog")))?;
    let mut out = Vec::new();
    for (_, j) in partition_covers(&partitions).into_iter().filter(|&(i, _)| i == me) {
        let f = &partitions[j];
        let (trace, class, codim) = classify_cover(algebra, d, f)?;
        for lower in lift_partitions(algebra, [f.clone()]) {
            out.push(Degeneration {
                upper: orbit.clone(),
                lower,
                minimal: true,
                trace: trace.clone(),
                class,
                codim,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SingularCodim {
    /// The zero orbit: its closure is a point.
    Smooth,
    Two,
    AtLeastFour,
}

impl fmt::Display for SingularCodim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SingularCodim::Smooth => "smooth",
            SingularCodim::Two => "2",
            SingularCodim::AtLeastFour => ">=4",
        })
    }
}

/// Codimension of the singular locus of the orbit closure, read off from
/// whether the Jordan type has full members.
pub fn singular_locus_codim(orbit: &NilpotentOrbit) -> Result<SingularCodim> {
    orbit.require_bcd()?;
    Ok(if orbit.is_zero() {
        SingularCodim::Smooth
    } else if orbit.partition().has_full_members() {
        SingularCodim::AtLeastFour
    } else {
        SingularCodim::Two
    })
}

/// [`singular_locus_codim`], cross-checked against the smallest codimension
/// among the minimal degenerations.
pub fn singular_locus_codim_verified(orbit: &NilpotentOrbit) -> Result<SingularCodim> {
    let claimed = singular_locus_codim(orbit)?;
    if claimed == SingularCodim::Smooth {
        return Ok(claimed);
    }
    let min = minimal_degenerations(orbit)?
        .iter()
        .map(|deg| deg.codim)
        .min()
        .ok_or_else(|| Error::invariant(format!("nonzero orbit {orbit} has no degenerations")))?;
    let observed = if min >= 4 {
        SingularCodim::AtLeastFour
    } else {
        SingularCodim::Two
    };
    if observed != claimed {
        return Err(Error::invariant(format!(
            "{orbit}: full-members test gives {claimed}, minimal cover codimension is {min}"
        )));
    }
    Ok(claimed)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverEdge {
    pub upper: usize,
    pub lower: usize,
    pub class: Option<IrreducibleClass>,
    pub codim: usize,
}

/// Orbits of one algebra with the cover relation of the closure order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosurePoset {
    pub algebra: Algebra,
    pub nodes: Vec<NilpotentOrbit>,
    pub edges: Vec<CoverEdge>,
}

pub fn closure_poset(algebra: Algebra) -> Result<ClosurePoset> {
    let partitions = admissible_or_all(algebra);
    let nodes = enumerate_orbits(algebra);
    let covers = partition_covers(&partitions);
    let classified = par::map(&covers, |&(i, j)| {
        classify_cover(algebra, &partitions[i], &partitions[j])
    });
    let mut edges = Vec::new();
    for (&(i, j), result) in covers.iter().zip(classified) {
        let (_, class, codim) = result?;
        let uppers = orbit_indices(&nodes, &partitions[i]);
        let lowers = orbit_indices(&nodes, &partitions[j]);
        for &u in &uppers {
            for &l in &lowers {
                edges.push(CoverEdge {
                    upper: u,
                    lower: l,
                    class,
                    codim,
                });
            }
        }
    }
    edges.sort_by_key(|e| (e.upper, e.lower));
    Ok(ClosurePoset {
        algebra,
        nodes,
        edges,
    })
}

fn orbit_indices(nodes: &[NilpotentOrbit], p: &Partition) -> Vec<usize> {
    nodes
        .iter()
        .enumerate()
        .filter(|(_, o)| o.partition() == p)
        .map(|(i, _)| i)
        .collect()
}

impl ClosurePoset {
    /// Graphviz rendering; nodes read `partition[/label] (dim)`, edges carry
    /// the class letter and codimension.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", self.algebra);
        let _ = writeln!(out, "  rankdir=TB;");
        for (i, node) in self.nodes.iter().enumerate() {
            let mut label = node.partition().bracketed();
            if let Some(l) = node.label() {
                let _ = write!(label, "/{l}");
            }
            let _ = writeln!(out, "  n{i} [label=\"{label} ({})\"];", orbit_dimension(node));
        }
        for e in &self.edges {
            let tag = match e.class {
                Some(c) => format!("{} {}", c.letter, e.codim),
                None => e.codim.to_string(),
            };
            let _ = writeln!(out, "  n{} -> n{} [label=\"{tag}\"];", e.upper, e.lower);
        }
        out.push_str("}\n");
        out
    }
}
