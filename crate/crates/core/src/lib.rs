//! Nilpotent orbits of the classical Lie algebras: partitions, the closure
//! order and its minimal degenerations, induction from Levi subalgebras, and
//! Q-factorial terminalizations of orbit closures.

#![forbid(unsafe_code)]

pub mod algebra;
pub mod degeneration;
pub mod error;
pub mod induction;
pub mod oracle;
pub mod orbit;
mod par;
pub mod partition;
pub mod terminalization;

pub use algebra::{Algebra, Family};
pub use degeneration::{
    classify_irreducible, closure_poset, degeneration_codim, kp_reduce, minimal_degenerations,
    partition_covers, singular_locus_codim, singular_locus_codim_verified, ClassLetter, ClosurePoset,
    CoverEdge, Degeneration, IrreducibleClass, KpTrace, SingularCodim,
};
pub use error::{Error, Result};
pub use induction::{
    available_peels, induce, induce_orbit, induced_orbit_set, is_rigid, peel, peel_another_type,
    InductionKind, InductionStep, LeviDatum, Peel,
};
pub use orbit::{
    enumerate_orbits, h_eigenvalues, jm_flag_type, jm_picard_number, needs_label, orbit_dimension,
    weighted_dynkin, FlagType, NilpotentOrbit, VeryEvenLabel, WeightedDynkinDiagram,
};
pub use partition::{parse_partition, ParsedPartition, Partition, Sign};
pub use terminalization::{
    composed_flag_type, enumerate_terminalizations, flop_graph, is_exceptional, is_q_factorial_terminal,
    terminalize_one, terminalize_type_a, FlopEdge, FlopGraph, FlopKind, SpinorChoice, Strategy,
    TerminalizationChain,
};

/// Version string embedded in reports.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
