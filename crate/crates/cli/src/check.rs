//! Oracle suites behind `orbitcalc check`. Each suite sweeps every algebra of
//! the requested families up to a natural dimension and stops at the first
//! violated invariant, reporting it together with the witness.

use std::collections::BTreeSet;
use std::fmt;

use orbitcalc_core::oracle::{collapse_brute_force, orbit_dim_via_centralizer};
use orbitcalc_core::{
    available_peels, closure_poset, enumerate_orbits, flop_graph, induce, induced_orbit_set,
    is_exceptional, is_q_factorial_terminal, is_rigid, jm_picard_number, minimal_degenerations,
    orbit_dimension, peel, Algebra, Error, Family, NilpotentOrbit, Partition,
};
use serde::Serialize;

use crate::args::SuiteArg;
use crate::commands::family_of;
use crate::report::{table, Context, Failure, Outcome};

/// A failed invariant and the smallest instance that exhibits it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub invariant: String,
    pub witness: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invariant '{}' violated at {}: {}", self.invariant, self.witness, self.detail)
    }
}

fn violation(invariant: &str, witness: impl fmt::Display, detail: impl Into<String>) -> Violation {
    Violation {
        invariant: invariant.into(),
        witness: witness.to_string(),
        detail: detail.into(),
    }
}

/// Turns an engine error into a violation attributed to `witness`.
fn engine(invariant: &str, witness: impl fmt::Display) -> impl FnOnce(Error) -> Violation {
    let witness = witness.to_string();
    let invariant = invariant.to_string();
    move |e| Violation {
        invariant,
        witness,
        detail: e.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub family: String,
    pub status: Status,
    pub instances: usize,
    pub violation: Option<Violation>,
}

type SuiteFn = fn(Family, usize) -> Option<Result<usize, Violation>>;

fn suite_table() -> [(SuiteArg, &'static str, SuiteFn); 7] {
    [
        (SuiteArg::Poset, "poset", poset),
        (SuiteArg::Codim, "codim", codim),
        (SuiteArg::Rigidity, "rigidity", rigidity),
        (SuiteArg::RoundTrip, "round-trip", round_trip),
        (SuiteArg::Connectivity, "connectivity", connectivity),
        (SuiteArg::Collapse, "collapse", collapse),
        (SuiteArg::Counting, "counting", counting),
    ]
}

/// Runs the selected suites (all when `selected` is empty).
pub fn run_suites(families: &[Family], max_m: usize, selected: &[SuiteArg]) -> Vec<SuiteResult> {
    let mut out = Vec::new();
    for &family in families {
        for (arg, name, f) in suite_table() {
            if !selected.is_empty() && !selected.contains(&arg) {
                continue;
            }
            let (status, instances, violation) = match f(family, max_m) {
                None => (Status::Skipped, 0, None),
                Some(Ok(n)) => (Status::Pass, n, None),
                Some(Err(v)) => (Status::Fail, 0, Some(v)),
            };
            out.push(SuiteResult {
                suite: name,
                family: family.to_string(),
                status,
                instances,
                violation,
            });
        }
    }
    out
}

#[derive(Serialize)]
struct CheckInput<'a> {
    family: &'a str,
    max_m: usize,
    suites: Vec<String>,
}

#[derive(Serialize)]
struct CheckView {
    passed: bool,
    suites: Vec<SuiteResult>,
}

pub(crate) fn command(ctx: &mut Context, family: &str, max_m: usize, selected: &[SuiteArg]) -> Result<Outcome, Failure> {
    let families = family_of(family)?;
    ctx.within_cap(max_m)?;
    let results = run_suites(&families, max_m, selected);
    let passed = results.iter().all(|r| r.status != Status::Fail);
    let rows: Vec<Vec<String>> = results
        .iter()
        .map(|r| {
            let status = match r.status {
                Status::Pass => format!("pass ({} instances)", r.instances),
                Status::Fail => "FAIL".into(),
                Status::Skipped => "skipped".into(),
            };
            vec![r.family.clone(), r.suite.into(), status]
        })
        .collect();
    let mut text = table(&["family", "suite", "status"], &rows);
    for r in &results {
        if let Some(v) = &r.violation {
            text.push_str(&format!("{} {}: {v}\n", r.family, r.suite));
        }
    }
    let inputs = CheckInput {
        family,
        max_m,
        suites: selected.iter().map(|s| format!("{s:?}").to_lowercase()).collect(),
    };
    let code = if passed { crate::EXIT_OK } else { crate::EXIT_INTERNAL };
    ctx.emit_with_code(None, inputs, CheckView { passed, suites: results }, text, code)
}

fn algebras(family: Family, max_m: usize) -> Vec<Algebra> {
    Algebra::up_to(family, max_m)
}

/// Orbit dimensions against the centralizer oracle, and every cover edge
/// against the classification and the dimension drop.
fn poset(family: Family, max_m: usize) -> Option<Result<usize, Violation>> {
    Some((|| {
        let mut n = 0;
        for algebra in algebras(family, max_m) {
            let poset = closure_poset(algebra).map_err(engine("closure poset builds", algebra))?;
            let mut dims = Vec::new();
            for orbit in &poset.nodes {
                let dim = orbit_dimension(orbit);
                let oracle = orbit_dim_via_centralizer(algebra, orbit.partition())
                    .map_err(engine("centralizer oracle", orbit))?;
                if dim != oracle {
                    return Err(violation(
                        "orbit dimension = dim g - dim centralizer",
                        orbit,
                        format!("formula {dim}, oracle {oracle}"),
                    ));
                }
                dims.push(dim);
                n += 1;
            }
            for e in &poset.edges {
                let witness = format!("{} -> {}", poset.nodes[e.upper], poset.nodes[e.lower]);
                if dims[e.upper] <= dims[e.lower] || e.codim != dims[e.upper] - dims[e.lower] {
                    return Err(violation("cover codim = dimension drop > 0", witness, format!("codim {}", e.codim)));
                }
                match (family, &e.class) {
                    (Family::A, _) => {}
                    (_, None) => return Err(violation("every classical cover classifies", witness, "no class")),
                    (_, Some(c)) if c.codim != e.codim => {
                        return Err(violation(
                            "class codim = cover codim",
                            witness,
                            format!("class {} gives {}, cover has {}", c.letter, c.codim, e.codim),
                        ))
                    }
                    _ => {}
                }
                n += 1;
            }
        }
        Ok(n)
    })())
}

/// Full members exactly when every cover has codimension at least 4.
fn codim(family: Family, max_m: usize) -> Option<Result<usize, Violation>> {
    if family == Family::A {
        return None;
    }
    Some((|| {
        let mut n = 0;
        for algebra in algebras(family, max_m) {
            for orbit in enumerate_orbits(algebra) {
                if orbit.is_zero() {
                    continue;
                }
                let dim = |p: &Partition| orbit_dim_via_centralizer(algebra, p);
                let top = dim(orbit.partition()).map_err(engine("centralizer oracle", &orbit))?;
                let covers = minimal_degenerations(&orbit).map_err(engine("covers", &orbit))?;
                let mut min = usize::MAX;
                for c in &covers {
                    let low = dim(c.lower.partition()).map_err(engine("centralizer oracle", &c.lower))?;
                    min = min.min(top - low);
                }
                if orbit.partition().has_full_members() != (min >= 4) {
                    return Err(violation(
                        "full members <=> minimal cover codim >= 4",
                        &orbit,
                        format!("full members {}, min codim {min}", orbit.partition().has_full_members()),
                    ));
                }
                n += 1;
            }
        }
        Ok(n)
    })())
}

/// Closed-form rigidity against the complement of the induced set.
fn rigidity(family: Family, max_m: usize) -> Option<Result<usize, Violation>> {
    if family == Family::A {
        return None;
    }
    Some((|| {
        let mut n = 0;
        for algebra in algebras(family, max_m) {
            let induced: BTreeSet<NilpotentOrbit> = induced_orbit_set(algebra)
                .map_err(engine("induced set", algebra))?
                .into_iter()
                .collect();
            for orbit in enumerate_orbits(algebra) {
                if is_rigid(&orbit) == induced.contains(&orbit) {
                    return Err(violation(
                        "rigid <=> not induced",
                        &orbit,
                        format!("closed form {}, induced {}", is_rigid(&orbit), induced.contains(&orbit)),
                    ));
                }
                n += 1;
            }
        }
        Ok(n)
    })())
}

/// Every peel induces back to its orbit and keeps the codimension.
fn round_trip(family: Family, max_m: usize) -> Option<Result<usize, Violation>> {
    if family == Family::A {
        return None;
    }
    Some((|| {
        let mut n = 0;
        for algebra in algebras(family, max_m) {
            for orbit in enumerate_orbits(algebra) {
                for choice in available_peels(&orbit).map_err(engine("peels", &orbit))? {
                    let witness = format!("{orbit} p={}", choice.p);
                    let step = peel(&orbit, choice.p).map_err(engine("peel", &witness))?;
                    let back = induce(algebra, step.r, step.source.partition()).map_err(engine("induce", &witness))?;
                    if &back != orbit.partition() {
                        return Err(violation("induce(peel(O)) = O", witness, format!("got [{back}]")));
                    }
                    let lhs = algebra.dim() - orbit_dimension(&orbit);
                    let rhs = step.levi().dim() - orbit_dimension(&step.source);
                    if lhs != rhs {
                        return Err(violation(
                            "codim in g = codim in Levi",
                            witness,
                            format!("{lhs} vs {rhs}"),
                        ));
                    }
                    n += 1;
                }
            }
        }
        Ok(n)
    })())
}

/// Flop graphs are connected and their chains agree on residual and radii.
fn connectivity(family: Family, max_m: usize) -> Option<Result<usize, Violation>> {
    Some((|| {
        let mut n = 0;
        for algebra in algebras(family, max_m) {
            for orbit in enumerate_orbits(algebra) {
                let graph = flop_graph(&orbit).map_err(engine("flop graph", &orbit))?;
                if !graph.is_connected() {
                    return Err(violation("flop graph connected", &orbit, format!("{} nodes", graph.nodes.len())));
                }
                if graph.residual_partitions().len() != 1 || graph.radius_multisets().len() != 1 {
                    return Err(violation(
                        "chains share residual and radius multiset",
                        &orbit,
                        format!("{:?}", graph.radius_multisets()),
                    ));
                }
                for chain in &graph.nodes {
                    chain.check_dimensions().map_err(engine("dimension bookkeeping", &orbit))?;
                    if let Some(res) = &chain.residual {
                        let ok = if chain.spinor.is_some() {
                            is_exceptional(res)
                        } else {
                            is_q_factorial_terminal(res)
                        };
                        if !ok {
                            return Err(violation("residual is Q-factorial terminal", &orbit, res.to_string()));
                        }
                    }
                }
                if family == Family::A {
                    let t = orbit.partition().transpose();
                    let fact = |k: usize| (1..=k).product::<usize>();
                    let expected = fact(t.len()) / t.exponents().iter().map(|&(_, s)| fact(s)).product::<usize>();
                    if graph.nodes.len() != expected {
                        return Err(violation(
                            "one Springer resolution per ordering of the transpose",
                            &orbit,
                            format!("{} nodes, {expected} orderings", graph.nodes.len()),
                        ));
                    }
                }
                n += 1;
            }
        }
        Ok(n)
    })())
}

/// Greedy collapse against the brute-force dominated maximum.
fn collapse(family: Family, max_m: usize) -> Option<Result<usize, Violation>> {
    let sign = family.sign()?;
    Some((|| {
        let mut n = 0;
        for m in 1..=max_m {
            for p in Partition::all(m) {
                let greedy = p.collapse(sign).ok();
                let brute = collapse_brute_force(&p, sign);
                if greedy != brute {
                    return Err(violation(
                        "collapse = maximal admissible dominated partition",
                        format!("[{p}] sign {sign}"),
                        format!("greedy {greedy:?}, brute force {brute:?}"),
                    ));
                }
                n += 1;
            }
        }
        Ok(n)
    })())
}

/// Orbit counts against the partition filter, and the divisor count against
/// the Picard number with the so(4n+2) exception.
fn counting(family: Family, max_m: usize) -> Option<Result<usize, Violation>> {
    Some((|| {
        let mut n = 0;
        for algebra in algebras(family, max_m) {
            let m = algebra.natural_dim();
            let orbits = enumerate_orbits(algebra);
            let filtered: Vec<Partition> = Partition::all(m)
                .into_iter()
                .filter(|p| family.sign().is_none_or(|s| p.is_admissible(s)))
                .collect();
            let distinct: Vec<Partition> = {
                let mut v: Vec<Partition> = orbits.iter().map(|o| o.partition().clone()).collect();
                v.dedup();
                v
            };
            if distinct != filtered {
                return Err(violation("orbits = admissible partitions", algebra, "enumeration mismatch"));
            }
            n += 1;
            if family == Family::A {
                continue;
            }
            for orbit in orbits {
                if orbit.is_zero() || !orbit.partition().has_full_members() {
                    continue;
                }
                let covers = minimal_degenerations(&orbit).map_err(engine("covers", &orbit))?.len();
                let picard = jm_picard_number(&orbit).map_err(engine("picard number", &orbit))?;
                if (covers < picard) != is_exceptional(&orbit) {
                    return Err(violation(
                        "cover count >= b2 except so(4n+2) [2^2n,1^2]",
                        &orbit,
                        format!("{covers} covers, b2 = {picard}"),
                    ));
                }
                n += 1;
            }
        }
        Ok(n)
    })())
}
