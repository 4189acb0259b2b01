//! Induction of orbits from Levi subalgebras `gl(r) ⊕ g'` and its inverse,
//! the peel.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::orbit::{enumerate_orbits, lift_partitions, needs_label, NilpotentOrbit, VeryEvenLabel};
use crate::par;
use crate::partition::{Partition, Sign};

/// A peel choice: the `p`-th distinct part (1-based) and the resulting
/// `gl(r)` block size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Peel {
    pub p: usize,
    pub r: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InductionKind {
    /// Subtract 2 from the first `r` parts; the Springer map is birational.
    Standard,
    /// Replace a pair `d_p²` by `(d_p − 1)²`; the map is not birational.
    Paired,
}

/// Levi factor `gl(r₁) ⊕ … ⊕ gl(r_j) ⊕ g'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviDatum {
    pub gl_blocks: Vec<usize>,
    pub inner: Algebra,
}

impl LeviDatum {
    pub fn new(ambient: Algebra, gl_blocks: Vec<usize>) -> Result<Self> {
        let sign = require_sign(ambient)?;
        let used: usize = 2 * gl_blocks.iter().sum::<usize>();
        let m = ambient.natural_dim();
        if used > m || gl_blocks.contains(&0) {
            return Err(Error::precondition(format!(
                "gl blocks {gl_blocks:?} do not fit in {}",
                ambient.matrix_name()
            )));
        }
        Ok(LeviDatum {
            inner: Algebra::classical(sign, m - used)?,
            gl_blocks,
        })
    }

    pub fn dim(&self) -> usize {
        self.gl_blocks.iter().map(|r| r * r).sum::<usize>() + self.inner.dim()
    }
}

/// One induction `source ↦ target` through `gl(r) ⊕ g'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InductionStep {
    pub source: NilpotentOrbit,
    pub target: NilpotentOrbit,
    pub r: usize,
    pub p: usize,
    pub kind: InductionKind,
    pub birational: bool,
}

impl InductionStep {
    pub fn levi(&self) -> LeviDatum {
        LeviDatum {
            gl_blocks: vec![self.r],
            inner: self.source.algebra(),
        }
    }
}

fn require_sign(algebra: Algebra) -> Result<Sign> {
    algebra
        .sign()
        .ok_or_else(|| Error::precondition(format!("{algebra} is of type A; expected B, C or D")))
}

/// Every `(p, r)` with `d_p ≥ d_{p+1} + 2` (taking `d_{k+1} = 0`) and
/// `r = s₁ + … + s_p`. Empty exactly when the Jordan type has full members.
pub fn available_peels(orbit: &NilpotentOrbit) -> Result<Vec<Peel>> {
    orbit.require_bcd()?;
    let ex = orbit.partition().exponents();
    let mut out = Vec::new();
    let mut r = 0;
    for (i, &(d, s)) in ex.iter().enumerate() {
        r += s;
        let next = ex.get(i + 1).map_or(0, |&(n, _)| n);
        if d >= next + 2 {
            out.push(Peel { p: i + 1, r });
        }
    }
    Ok(out)
}

/// Label of the inner orbit when the outer one carries `label`.
fn carry_label(algebra: Algebra, p: &Partition, label: Option<VeryEvenLabel>) -> Option<VeryEvenLabel> {
    needs_label(algebra, p).then(|| label.unwrap_or(VeryEvenLabel::I))
}

/// The standard peel at distinct part `p`: the source orbit lives in the
/// algebra of dimension `m − 2r` with every part among the first `r`
/// lowered by 2.
pub fn peel(orbit: &NilpotentOrbit, p: usize) -> Result<InductionStep> {
    let sign = orbit.require_bcd()?;
    let choice = available_peels(orbit)?
        .into_iter()
        .find(|c| c.p == p)
        .ok_or_else(|| Error::precondition(format!("no standard peel at p = {p} for {orbit}")))?;
    let r = choice.r;
    let d = orbit.partition();
    let parts: Vec<usize> = d
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &x)| if i < r { x - 2 } else { x })
        .collect();
    let source_partition = Partition::new(parts);
    let inner = Algebra::classical(sign, d.size() - 2 * r)?;
    let label = carry_label(inner, &source_partition, orbit.label());
    let source = NilpotentOrbit::new(inner, source_partition, label)?;
    Ok(InductionStep {
        source,
        target: orbit.clone(),
        r,
        p,
        kind: InductionKind::Standard,
        birational: true,
    })
}

/// Jordan type of the orbit induced from `0 ⊕ O_inner` on `gl(r) ⊕ g'`: pad
/// `inner` to `r` parts, add 2 to each of the first `r`, then collapse.
pub fn induce(ambient: Algebra, r: usize, inner: &Partition) -> Result<Partition> {
    let sign = require_sign(ambient)?;
    let m = ambient.natural_dim();
    if r == 0 || 2 * r > m {
        return Err(Error::precondition(format!(
            "gl({r}) does not fit in {}",
            ambient.matrix_name()
        )));
    }
    if inner.size() != m - 2 * r {
        return Err(Error::SizeMismatch {
            left: inner.size(),
            right: m - 2 * r,
        });
    }
    if !inner.is_admissible(sign) {
        return Err(Error::Inadmissible {
            partition: inner.to_string(),
            algebra: Algebra::classical(sign, m - 2 * r)?.to_string(),
        });
    }
    let len = inner.len().max(r);
    let raised: Vec<usize> = (0..len)
        .map(|i| inner.part(i) + if i < r { 2 } else { 0 })
        .collect();
    Partition::new(raised).collapse(sign)
}

/// [`induce`] on orbits; a very even result keeps the inner orbit's label
/// and otherwise gets label I.
pub fn induce_orbit(ambient: Algebra, r: usize, inner: &NilpotentOrbit) -> Result<NilpotentOrbit> {
    let raised = induce(ambient, r, inner.partition())?;
    let label = carry_label(ambient, &raised, inner.label());
    NilpotentOrbit::new(ambient, raised, label)
}

/// The non-birational induction available when the `p`-th distinct part
/// has multiplicity exactly 2 and the constrained parity opposite to ε
/// (odd for orthogonal, even for symplectic). The result is checked by
/// inducing back.
pub fn peel_another_type(orbit: &NilpotentOrbit, p: usize) -> Result<InductionStep> {
    let sign = orbit.require_bcd()?;
    let ex = orbit.partition().exponents();
    let &(dp, sp) = p
        .checked_sub(1)
        .and_then(|i| ex.get(i))
        .ok_or_else(|| Error::precondition(format!("{orbit} has no distinct part with index {p}")))?;
    let parity_ok = match sign {
        Sign::Orthogonal => dp % 2 == 1,
        Sign::Symplectic => dp % 2 == 0,
    };
    if sp != 2 || !parity_ok {
        return Err(Error::precondition(format!(
            "part {dp} of {orbit} must have multiplicity 2 and be {}",
            if sign == Sign::Orthogonal { "odd" } else { "even" }
        )));
    }
    let r = ex[..p - 1].iter().map(|&(_, s)| s).sum::<usize>() + 1;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (i, &(d, s)) in ex.iter().enumerate() {
        let idx = i + 1;
        if idx < p {
            pairs.push((d - 2, s));
        } else if idx == p {
            pairs.push((d - 1, 2));
        } else {
            pairs.push((d, s));
        }
    }
    let source_partition = Partition::from_exponents(&pairs);
    let ambient = orbit.algebra();
    let inner = Algebra::classical(sign, ambient.natural_dim() - 2 * r)?;
    let label = carry_label(inner, &source_partition, orbit.label());
    let source = NilpotentOrbit::new(inner, source_partition, label)?;
    let back = induce(ambient, r, source.partition())?;
    if &back != orbit.partition() {
        return Err(Error::invariant(format!(
            "paired peel of {orbit} at p = {p} induces back to [{back}]"
        )));
    }
    Ok(InductionStep {
        source,
        target: orbit.clone(),
        r,
        p,
        kind: InductionKind::Paired,
        birational: false,
    })
}

/// Closed-form rigidity test. In B, C, D: full members and no member of the
/// ε-unconstrained parity with multiplicity exactly 2. In A only the zero
/// orbit is rigid.
pub fn is_rigid(orbit: &NilpotentOrbit) -> bool {
    let d = orbit.partition();
    match orbit.algebra().sign() {
        None => orbit.is_zero(),
        Some(sign) => {
            d.has_full_members()
                && !d
                    .exponents()
                    .iter()
                    .any(|&(part, s)| s == 2 && !sign.constrains(part))
        }
    }
}

/// Every orbit of `algebra` obtained as `induce(algebra, r, inner)` for some
/// `r ≥ 1` and inner orbit. Deeper Levi factors add nothing by transitivity
/// of induction.
pub fn induced_orbit_set(algebra: Algebra) -> Result<Vec<NilpotentOrbit>> {
    let sign = require_sign(algebra)?;
    let m = algebra.natural_dim();
    let inputs: Vec<(usize, Partition)> = (1..=m / 2)
        .flat_map(|r| {
            Partition::admissible(m - 2 * r, sign)
                .into_iter()
                .map(move |p| (r, p))
        })
        .collect();
    let results = par::map(&inputs, |(r, inner)| induce(algebra, *r, inner));
    let mut partitions = BTreeSet::new();
    for res in results {
        partitions.insert(res?);
    }
    // Richardson orbits of both classes of maximal isotropic parabolics
    // account for both labels of a very even induced orbit.
    let mut orbits = lift_partitions(algebra, partitions.into_iter().rev());
    let order = enumerate_orbits(algebra);
    orbits.sort_by_key(|o| order.iter().position(|x| x == o));
    Ok(orbits)
}
