//! Q-factorial terminalizations built from chains of birational peels, and
//! the graph of Mukai flops joining them.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{Algebra, Family};
use crate::error::{Error, Result};
use crate::induction::{available_peels, peel, InductionStep, Peel};
use crate::orbit::{orbit_dimension, FlagType, NilpotentOrbit};
use crate::par;
use crate::partition::Partition;

/// Which of the two classes of maximal isotropic subspaces the final
/// Springer step uses in the `so(4n+2)`, `[2^{2n},1²]` case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SpinorChoice {
    I,
    II,
}

impl fmt::Display for SpinorChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpinorChoice::I => "I",
            SpinorChoice::II => "II",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Always peel at the smallest available index.
    First,
    /// Always peel at the largest available index.
    Last,
}

/// `so(4n+2)` with Jordan type `[2^{2n}, 1²]`: full members, yet not
/// Q-factorial.
pub fn is_exceptional(orbit: &NilpotentOrbit) -> bool {
    orbit.algebra().family() == Family::D
        && matches!(orbit.partition().exponents().as_slice(), &[(2, twos), (1, 2)] if twos % 2 == 0)
}

/// Whether the normalized orbit closure already has Q-factorial terminal
/// singularities.
pub fn is_q_factorial_terminal(orbit: &NilpotentOrbit) -> bool {
    match orbit.algebra().family() {
        Family::A => orbit.is_zero(),
        _ => orbit.partition().has_full_members() && !is_exceptional(orbit),
    }
}

/// A Q-factorial terminalization, recorded as the peels that produce it.
///
/// For type A the chain is a Springer resolution: `radii` is the flag type,
/// `steps` is empty and there is no residual orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TerminalizationChain {
    pub top: NilpotentOrbit,
    pub radii: Vec<usize>,
    pub steps: Vec<InductionStep>,
    pub residual: Option<NilpotentOrbit>,
    pub spinor: Option<SpinorChoice>,
    pub flag: FlagType,
    pub picard: usize,
}

impl TerminalizationChain {
    fn from_steps(top: NilpotentOrbit, steps: Vec<InductionStep>, spinor: Option<SpinorChoice>) -> Self {
        let residual = steps.last().map_or_else(|| top.clone(), |s| s.source.clone());
        let radii: Vec<usize> = steps.iter().map(|s| s.r).collect();
        let flag = compose_flag(top.algebra(), &radii, spinor.is_some());
        let mut picard = radii.len() + usize::from(spinor.is_some());
        // A middle so(2) block contributes its own one-dimensional centre.
        if top.algebra().family() == Family::D && !radii.is_empty() && flag.middle() == 2 {
            picard += 1;
        }
        TerminalizationChain {
            top,
            radii,
            steps,
            residual: Some(residual),
            spinor,
            flag,
            picard,
        }
    }

    /// Chain identity: ordered radii plus spinor choice.
    pub fn key(&self) -> (Vec<usize>, Option<SpinorChoice>) {
        (self.radii.clone(), self.spinor)
    }

    pub fn peels(&self) -> Vec<Peel> {
        self.steps.iter().map(|s| Peel { p: s.p, r: s.r }).collect()
    }

    /// The orbits passed through, starting below the top.
    pub fn intermediates(&self) -> Vec<&NilpotentOrbit> {
        self.steps.iter().map(|s| &s.source).collect()
    }

    /// Size of the maximal isotropic block used by the spinor step.
    pub fn spinor_block(&self) -> Option<usize> {
        let residual = self.residual.as_ref()?;
        self.spinor.map(|_| residual.algebra().natural_dim() / 2)
    }

    /// Verifies `dim O_top − dim O_residual = Σ (dim gᵢ − dim lᵢ)` along the
    /// standard steps, and that the spinor step (if any) is Richardson for
    /// `gl(m′/2)`.
    pub fn check_dimensions(&self) -> Result<()> {
        let Some(residual) = &self.residual else {
            return Ok(());
        };
        let drop: usize = self
            .steps
            .iter()
            .map(|s| s.target.algebra().dim() - s.levi().dim())
            .sum();
        let top = orbit_dimension(&self.top);
        let bottom = orbit_dimension(residual);
        if top != bottom + drop {
            return Err(Error::invariant(format!(
                "chain {:?} of {}: dim {top} != {bottom} + {drop}",
                self.radii, self.top
            )));
        }
        if let Some(block) = self.spinor_block() {
            let richardson = residual.algebra().dim() - block * block;
            if bottom != richardson {
                return Err(Error::invariant(format!(
                    "spinor step of {}: dim {bottom} != {richardson}",
                    self.top
                )));
            }
        }
        Ok(())
    }

    /// `flag residual [spinor]`, used for graph labels.
    pub fn describe(&self) -> String {
        let mut s = self.flag.to_string();
        if let Some(res) = &self.residual {
            let _ = write!(s, " {res}");
        }
        if let Some(choice) = self.spinor {
            let _ = write!(s, " spinor {choice}");
        }
        s
    }
}

/// `(r₁, …, r_j, m − 2Σrᵢ, r_j, …, r₁)`; a spinor step replaces the middle by
/// two halves of size `(m − 2Σrᵢ)/2` and the empty middle is dropped.
fn compose_flag(ambient: Algebra, radii: &[usize], spinor: bool) -> FlagType {
    let middle = ambient.natural_dim() - 2 * radii.iter().sum::<usize>();
    let mut blocks: Vec<usize> = radii.to_vec();
    if spinor {
        blocks.extend([middle / 2, middle / 2]);
    } else {
        blocks.push(middle);
    }
    blocks.extend(radii.iter().rev());
    FlagType(blocks)
}

/// Public form of the flag composition for an existing chain.
pub fn composed_flag_type(chain: &TerminalizationChain) -> FlagType {
    match &chain.residual {
        Some(_) if chain.top.algebra().family() != Family::A => {
            compose_flag(chain.top.algebra(), &chain.radii, chain.spinor.is_some())
        }
        _ => FlagType(chain.radii.clone()),
    }
}

/// Greedy peeling until the residual has full members.
pub fn terminalize_one(orbit: &NilpotentOrbit, strategy: Strategy) -> Result<TerminalizationChain> {
    if orbit.algebra().family() == Family::A {
        let mut t = orbit.partition().transpose().parts().to_vec();
        if strategy == Strategy::Last {
            t.reverse();
        }
        return Ok(type_a_chain(orbit, t));
    }
    let mut current = orbit.clone();
    let mut steps = Vec::new();
    loop {
        let peels = available_peels(&current)?;
        let pick = match strategy {
            Strategy::First => peels.first(),
            Strategy::Last => peels.last(),
        };
        let Some(choice) = pick else { break };
        let step = peel(&current, choice.p)?;
        current = step.source.clone();
        steps.push(step);
    }
    let spinor = is_exceptional(&current).then_some(SpinorChoice::I);
    Ok(TerminalizationChain::from_steps(orbit.clone(), steps, spinor))
}

fn extend_chains(
    top: &NilpotentOrbit,
    current: &NilpotentOrbit,
    steps: &mut Vec<InductionStep>,
    out: &mut Vec<TerminalizationChain>,
) -> Result<()> {
    let peels = available_peels(current)?;
    if peels.is_empty() {
        if is_exceptional(current) {
            for choice in [SpinorChoice::I, SpinorChoice::II] {
                out.push(TerminalizationChain::from_steps(top.clone(), steps.clone(), Some(choice)));
            }
        } else {
            out.push(TerminalizationChain::from_steps(top.clone(), steps.clone(), None));
        }
        return Ok(());
    }
    for choice in peels {
        let step = peel(current, choice.p)?;
        let next = step.source.clone();
        steps.push(step);
        extend_chains(top, &next, steps, out)?;
        steps.pop();
    }
    Ok(())
}

/// All maximal chains of standard peels, deduplicated by
/// (radii, spinor choice) and sorted by radii then spinor.
pub fn enumerate_terminalizations(orbit: &NilpotentOrbit) -> Result<Vec<TerminalizationChain>> {
    if orbit.algebra().family() == Family::A {
        let mut chains: Vec<TerminalizationChain> = type_a_orderings(orbit.partition())
            .into_iter()
            .map(|t| type_a_chain(orbit, t))
            .collect();
        chains.sort_by_key(TerminalizationChain::key);
        return Ok(chains);
    }
    let first = available_peels(orbit)?;
    let mut chains = if first.is_empty() {
        let mut out = Vec::new();
        extend_chains(orbit, orbit, &mut Vec::new(), &mut out)?;
        out
    } else {
        let branches = par::map(&first, |choice| -> Result<Vec<TerminalizationChain>> {
            let step = peel(orbit, choice.p)?;
            let next = step.source.clone();
            let mut steps = vec![step];
            let mut out = Vec::new();
            extend_chains(orbit, &next, &mut steps, &mut out)?;
            Ok(out)
        });
        let mut all = Vec::new();
        for b in branches {
            all.extend(b?);
        }
        all
    };
    chains.sort_by_key(TerminalizationChain::key);
    chains.dedup_by_key(|c| c.key());
    Ok(chains)
}

fn type_a_chain(orbit: &NilpotentOrbit, ordering: Vec<usize>) -> TerminalizationChain {
    TerminalizationChain {
        top: orbit.clone(),
        picard: ordering.len().saturating_sub(1),
        flag: FlagType(ordering.clone()),
        radii: ordering,
        steps: Vec::new(),
        residual: None,
        spinor: None,
    }
}

/// Distinct orderings of the transposed Jordan type.
fn type_a_orderings(d: &Partition) -> Vec<Vec<usize>> {
    fn go(counts: &mut Vec<(usize, usize)>, len: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i].1 == 0 {
                continue;
            }
            counts[i].1 -= 1;
            cur.push(counts[i].0);
            go(counts, len, cur, out);
            cur.pop();
            counts[i].1 += 1;
        }
    }
    let t = d.transpose();
    let mut counts = t.exponents();
    let mut out = Vec::new();
    go(&mut counts, t.len(), &mut Vec::new(), &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FlopKind {
    /// Mukai flop of type `A_k`.
    A(usize),
    D,
}

impl fmt::Display for FlopKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlopKind::A(k) => write!(f, "A_{k}"),
            FlopKind::D => f.write_str("D"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlopEdge {
    pub a: usize,
    pub b: usize,
    pub kind: FlopKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlopGraph {
    pub top: NilpotentOrbit,
    pub nodes: Vec<TerminalizationChain>,
    pub edges: Vec<FlopEdge>,
    /// Set for very even tops in type D, whose two labels share one chain set.
    pub note: Option<String>,
}

/// The flop joining two chains, if they differ by one elementary move.
fn flop_between(x: &TerminalizationChain, y: &TerminalizationChain) -> Option<FlopKind> {
    if x.radii == y.radii {
        return match (x.spinor, y.spinor) {
            (Some(a), Some(b)) if a != b => Some(FlopKind::D),
            _ => None,
        };
    }
    if x.spinor != y.spinor || x.radii.len() != y.radii.len() {
        return None;
    }
    let diff: Vec<usize> = (0..x.radii.len()).filter(|&i| x.radii[i] != y.radii[i]).collect();
    match diff.as_slice() {
        &[i, j] if j == i + 1 && x.radii[i] == y.radii[j] && x.radii[j] == y.radii[i] => {
            Some(FlopKind::A(x.radii[i] + x.radii[j] - 1))
        }
        _ => None,
    }
}

fn build_graph(top: &NilpotentOrbit, nodes: Vec<TerminalizationChain>) -> FlopGraph {
    let mut edges = Vec::new();
    for a in 0..nodes.len() {
        for b in a + 1..nodes.len() {
            if let Some(kind) = flop_between(&nodes[a], &nodes[b]) {
                edges.push(FlopEdge { a, b, kind });
            }
        }
    }
    let note = (top.label().is_some()).then(|| {
        format!(
            "very even Jordan type {}: labels I and II share this chain set",
            top.partition().bracketed()
        )
    });
    FlopGraph {
        top: top.clone(),
        nodes,
        edges,
        note,
    }
}

/// Terminalizations of `orbit` joined by Mukai flops: type A edges swap two
/// adjacent unequal radii, type D edges swap the spinor choice.
pub fn flop_graph(orbit: &NilpotentOrbit) -> Result<FlopGraph> {
    let nodes = enumerate_terminalizations(orbit)?;
    Ok(build_graph(orbit, nodes))
}

/// Springer resolutions of a type A orbit: one node per distinct ordering of
/// the transposed Jordan type.
pub fn terminalize_type_a(orbit: &NilpotentOrbit) -> Result<FlopGraph> {
    if orbit.algebra().family() != Family::A {
        return Err(Error::precondition(format!("{} is not of type A", orbit.algebra())));
    }
    flop_graph(orbit)
}

impl FlopGraph {
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for e in &self.edges {
                let w = if e.a == v {
                    e.b
                } else if e.b == v {
                    e.a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Distinct residual Jordan types across the nodes.
    pub fn residual_partitions(&self) -> BTreeSet<Option<Partition>> {
        self.nodes
            .iter()
            .map(|c| c.residual.as_ref().map(|r| r.partition().clone()))
            .collect()
    }

    /// Distinct sorted radius multisets across the nodes.
    pub fn radius_multisets(&self) -> BTreeSet<Vec<usize>> {
        self.nodes
            .iter()
            .map(|c| {
                let mut r = c.radii.clone();
                r.sort_unstable();
                r
            })
            .collect()
    }

    /// Undirected Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", self.top);
        for (i, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", node.describe());
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -- n{} [label=\"{}\"];", e.a, e.b, e.kind);
        }
        out.push_str("}\n");
        out
    }
}
