//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use orbitcalc_core::degeneration::ErasureKind;
use orbitcalc_core::oracle::{collapse_brute_force, orbit_dim_via_centralizer};
use orbitcalc_core::{
    available_peels, classify_irreducible, closure_poset, degeneration_codim, enumerate_orbits, flop_graph,
    induce, induced_orbit_set, is_exceptional, is_q_factorial_terminal, is_rigid, jm_picard_number,
    kp_reduce, minimal_degenerations, orbit_dimension, partition_covers, peel, terminalize_type_a, Algebra,
    ClassLetter, Family, NilpotentOrbit, Partition, Sign,
};
use serde_json::Value;

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn bcd(max_m: usize) -> Vec<Algebra> {
    [Family::B, Family::C, Family::D]
        .into_iter()
        .flat_map(|f| Algebra::up_to(f, max_m))
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_worked_example() -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = orbitcalc_cli::run(
        ["orbitcalc", "terminalize", "C6", "6,3^2", "--all", "--json"],
        &mut out,
        &mut err,
    );
    ensure(code == 0, || format!("exit code {code}: {}", String::from_utf8_lossy(&err)))?;
    let report: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let result = &report["result"];
    let chains = result["chains"].as_array().ok_or("no chains")?;
    ensure(chains.len() == 2, || format!("{} chains", chains.len()))?;
    let mut seen = BTreeSet::new();
    for chain in chains {
        let flag: Vec<u64> = chain["flag"]
            .as_array()
            .ok_or("no flag")?
            .iter()
            .filter_map(Value::as_u64)
            .collect();
        let middle = chain["peels"][0]["to"].as_str().ok_or("no intermediate")?.to_string();
        let residual = chain["residual"].as_str().ok_or("no residual")?.to_string();
        seen.insert((flag, middle, residual));
    }
    let expected: BTreeSet<(Vec<u64>, String, String)> = [
        (vec![3, 1, 4, 1, 3], "C3:[4,1^2]".to_string(), "C2:[2,1^2]".to_string()),
        (vec![1, 3, 4, 3, 1], "C5:[4,3^2]".to_string(), "C2:[2,1^2]".to_string()),
    ]
    .into_iter()
    .collect();
    ensure(seen == expected, || format!("chains {seen:?}"))?;
    let edges = result["edges"].as_array().ok_or("no edges")?;
    ensure(edges.len() == 1 && edges[0]["kind"] == "A_3", || format!("edges {edges:?}"))?;
    Ok("2 chains, residual C2:[2,1^2], one A_3 flop".into())
}

fn c2_classification() -> Outcome {
    let mut edges = 0;
    for algebra in bcd(12) {
        let sign = algebra.sign().unwrap();
        let parts = Partition::admissible(algebra.natural_dim(), sign);
        for (i, j) in partition_covers(&parts) {
            let (d, f) = (&parts[i], &parts[j]);
            let trace = kp_reduce(d, f, sign).map_err(|e| format!("{algebra} {d} > {f}: {e}"))?;
            for step in &trace.steps {
                if step.kind == ErasureKind::Columns {
                    ensure(step.sign_after == step.sign_before.flip_times(step.count), || {
                        format!("{algebra} {d} > {f}: column erasure kept the sign")
                    })?;
                }
            }
            let class = classify_irreducible(&trace.upper_irreducible, &trace.lower_irreducible, trace.sign_irreducible)
                .map_err(|e| format!("{algebra} {d} > {f}: {e}"))?;
            let expected = match class.letter {
                ClassLetter::F => 4 * class.n - 4,
                ClassLetter::G => 2 * class.n,
                ClassLetter::H => 4 * class.n - 6,
                _ => 2,
            };
            let codim = degeneration_codim(d, f, algebra).map_err(|e| e.to_string())?;
            ensure(codim == expected && class.codim == expected, || {
                format!("{algebra} {d} > {f}: class {} n={} codim {codim}", class.letter, class.n)
            })?;
            edges += 1;
        }
        closure_poset(algebra).map_err(|e| format!("{algebra}: {e}"))?;
    }
    Ok(format!("{edges} partition-level covers classified"))
}

fn c3_full_members() -> Outcome {
    let mut n = 0;
    for algebra in bcd(12) {
        for orbit in enumerate_orbits(algebra) {
            if orbit.is_zero() {
                continue;
            }
            let top = orbit_dim_via_centralizer(algebra, orbit.partition()).map_err(|e| e.to_string())?;
            let mut min = usize::MAX;
            for cover in minimal_degenerations(&orbit).map_err(|e| e.to_string())? {
                let low = orbit_dim_via_centralizer(algebra, cover.lower.partition()).map_err(|e| e.to_string())?;
                min = min.min(top - low);
            }
            ensure(orbit.partition().has_full_members() == (min >= 4), || {
                format!("{orbit}: min cover codim {min}")
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} nonzero orbits"))
}

fn c4_counting() -> Outcome {
    let mut strict = Vec::new();
    let mut n = 0;
    for algebra in bcd(12) {
        for orbit in enumerate_orbits(algebra) {
            if orbit.is_zero() || !orbit.partition().has_full_members() {
                continue;
            }
            let covers = minimal_degenerations(&orbit).map_err(|e| e.to_string())?.len();
            let b2 = jm_picard_number(&orbit).map_err(|e| e.to_string())?;
            if covers < b2 {
                strict.push(format!("{} {}", algebra.matrix_name(), orbit.partition().bracketed()));
                ensure(is_exceptional(&orbit), || format!("{orbit} fails outside so(4n+2)"))?;
            }
            n += 1;
        }
    }
    ensure(strict == ["so(6) [2^2,1^2]", "so(10) [2^4,1^2]"], || format!("failures {strict:?}"))?;
    Ok(format!("{n} full-member orbits; strict failures {}", strict.join(", ")))
}

fn c5_rigidity() -> Outcome {
    let mut n = 0;
    for algebra in bcd(12) {
        let induced: BTreeSet<NilpotentOrbit> = induced_orbit_set(algebra)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        for orbit in enumerate_orbits(algebra) {
            ensure(is_rigid(&orbit) != induced.contains(&orbit), || format!("{orbit}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} orbits"))
}

fn c6_round_trip() -> Outcome {
    let mut n = 0;
    for algebra in bcd(14) {
        for orbit in enumerate_orbits(algebra) {
            for choice in available_peels(&orbit).map_err(|e| e.to_string())? {
                let step = peel(&orbit, choice.p).map_err(|e| e.to_string())?;
                let back = induce(algebra, step.r, step.source.partition()).map_err(|e| e.to_string())?;
                ensure(&back == orbit.partition(), || format!("{orbit} p={}: got [{back}]", choice.p))?;
                let lhs = algebra.dim() - orbit_dimension(&orbit);
                let rhs = step.levi().dim() - orbit_dimension(&step.source);
                ensure(lhs == rhs, || format!("{orbit} p={}: codim {lhs} vs {rhs}", choice.p))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} peels"))
}

fn c7_terminalizations() -> Outcome {
    let mut n = 0;
    for algebra in bcd(12) {
        for orbit in enumerate_orbits(algebra) {
            let graph = flop_graph(&orbit).map_err(|e| e.to_string())?;
            ensure(graph.residual_partitions().len() == 1, || format!("{orbit}: residuals differ"))?;
            ensure(graph.radius_multisets().len() == 1, || format!("{orbit}: radii differ"))?;
            ensure(graph.is_connected(), || format!("{orbit}: flop graph disconnected"))?;
            for chain in &graph.nodes {
                let residual = chain.residual.as_ref().ok_or("missing residual")?;
                let terminal = if chain.spinor.is_some() {
                    is_exceptional(residual)
                } else {
                    is_q_factorial_terminal(residual)
                };
                ensure(terminal, || format!("{orbit}: residual {residual}"))?;
                chain.check_dimensions().map_err(|e| e.to_string())?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} orbits"))
}

fn c8_type_a() -> Outcome {
    let fact = |k: usize| (1..=k).product::<usize>();
    let mut n = 0;
    for algebra in Algebra::up_to(Family::A, 8) {
        for orbit in enumerate_orbits(algebra) {
            let graph = terminalize_type_a(&orbit).map_err(|e| e.to_string())?;
            let t = orbit.partition().transpose();
            let orderings = fact(t.len()) / t.exponents().iter().map(|&(_, s)| fact(s)).product::<usize>();
            ensure(graph.nodes.len() == orderings, || {
                format!("{orbit}: {} nodes, {orderings} orderings", graph.nodes.len())
            })?;
            ensure(graph.is_connected(), || format!("{orbit}: disconnected"))?;
            n += 1;
        }
    }
    Ok(format!("{n} orbits of sl(2)..sl(8)"))
}

fn c9_collapse() -> Outcome {
    let mut n = 0;
    for m in 1..=16 {
        for p in Partition::all(m) {
            for sign in [Sign::Orthogonal, Sign::Symplectic] {
                let greedy = p.collapse(sign).ok();
                let brute = collapse_brute_force(&p, sign);
                ensure(greedy == brute, || format!("[{p}] sign {sign}: {greedy:?} vs {brute:?}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} (partition, sign) pairs"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "sp(12) [6,3^2] terminalizations", limit: Some(Duration::from_secs(1)), run: c1_worked_example },
        Criterion { id: 2, title: "cover classification m <= 12", limit: Some(Duration::from_secs(30)), run: c2_classification },
        Criterion { id: 3, title: "full members <=> codim >= 4", limit: None, run: c3_full_members },
        Criterion { id: 4, title: "cover count vs b2", limit: None, run: c4_counting },
        Criterion { id: 5, title: "rigidity vs induced set", limit: None, run: c5_rigidity },
        Criterion { id: 6, title: "peel/induce round trip m <= 14", limit: None, run: c6_round_trip },
        Criterion { id: 7, title: "terminalization invariants m <= 12", limit: Some(Duration::from_secs(60)), run: c7_terminalizations },
        Criterion { id: 8, title: "type A Springer resolutions", limit: None, run: c8_type_a },
        Criterion { id: 9, title: "collapse extremality m <= 16", limit: None, run: c9_collapse },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {} ({detail}; {elapsed:.2?})", c.id, c.title),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {} ({detail}; {elapsed:.2?})", c.id, c.title);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
