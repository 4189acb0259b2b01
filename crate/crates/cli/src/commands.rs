use orbitcalc_core::degeneration::ErasureKind;
use orbitcalc_core::{
    closure_poset, degeneration_codim, enumerate_orbits, flop_graph,
    is_q_factorial_terminal, is_rigid, jm_flag_type, jm_picard_number, kp_reduce, orbit_dimension,
    terminalize_one, weighted_dynkin, Algebra, Family, FlopGraph, KpTrace, Partition,
    Strategy, TerminalizationChain,
};
use serde::Serialize;

use crate::args::{Command, StrategyArg};
use crate::check;
use crate::report::{table, yes_no, Context, Failure, Outcome};

pub(crate) fn dispatch(ctx: &mut Context, command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Orbits { algebra } => orbits(ctx, &algebra),
        Command::Poset { algebra, dot } => poset(ctx, &algebra, dot),
        Command::Dynkin { algebra, partition } => dynkin(ctx, &algebra, &partition),
        Command::Degeneration { algebra, upper, lower } => degeneration(ctx, &algebra, &upper, &lower),
        Command::Terminalize {
            algebra,
            partition,
            all,
            strategy,
        } => terminalize(ctx, &algebra, &partition, all, strategy),
        Command::Flops { algebra, partition, dot } => flops(ctx, &algebra, &partition, dot),
        Command::Check { family, max_m, suite } => check::command(ctx, &family, max_m, &suite),
    }
}

#[derive(Serialize)]
struct AlgebraInput<'a> {
    algebra: &'a str,
}

#[derive(Serialize)]
struct OrbitInput<'a> {
    algebra: &'a str,
    partition: &'a str,
}

#[derive(Serialize)]
struct OrbitRow {
    orbit: String,
    partition: Partition,
    label: Option<String>,
    dim: usize,
    full_members: bool,
    rigid: bool,
    qf_terminal: bool,
}

#[derive(Serialize)]
struct OrbitList {
    count: usize,
    orbits: Vec<OrbitRow>,
}

fn orbits(ctx: &mut Context, alg: &str) -> Result<Outcome, Failure> {
    let algebra = ctx.algebra(alg)?;
    let rows: Vec<OrbitRow> = enumerate_orbits(algebra)
        .into_iter()
        .map(|o| OrbitRow {
            orbit: o.to_string(),
            partition: o.partition().clone(),
            label: o.label().map(|l| l.to_string()),
            dim: orbit_dimension(&o),
            full_members: o.partition().has_full_members(),
            rigid: is_rigid(&o),
            qf_terminal: is_q_factorial_terminal(&o),
        })
        .collect();
    let mut text = format!(
        "{algebra} = {}, dim {}, {} orbits\n",
        algebra.matrix_name(),
        algebra.dim(),
        rows.len()
    );
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.partition.to_string(),
                r.label.clone().unwrap_or_default(),
                r.dim.to_string(),
                yes_no(r.full_members).into(),
                yes_no(r.rigid).into(),
                yes_no(r.qf_terminal).into(),
            ]
        })
        .collect();
    text.push_str(&table(&["partition", "label", "dim", "full", "rigid", "qf-terminal"], &cells));
    let result = OrbitList {
        count: rows.len(),
        orbits: rows,
    };
    ctx.emit(Some(algebra), AlgebraInput { algebra: alg }, result, text)
}

#[derive(Serialize)]
struct ClassView {
    letter: String,
    n: usize,
    codim: usize,
}

impl ClassView {
    fn new(c: &orbitcalc_core::IrreducibleClass) -> Self {
        ClassView {
            letter: c.letter.to_string(),
            n: c.n,
            codim: c.codim,
        }
    }
}

#[derive(Serialize)]
struct PosetNode {
    orbit: String,
    dim: usize,
}

#[derive(Serialize)]
struct PosetEdge {
    upper: usize,
    lower: usize,
    codim: usize,
    class: Option<ClassView>,
}

#[derive(Serialize)]
struct PosetView {
    nodes: Vec<PosetNode>,
    edges: Vec<PosetEdge>,
}

fn poset(ctx: &mut Context, alg: &str, dot: bool) -> Result<Outcome, Failure> {
    let algebra = ctx.algebra(alg)?;
    let poset = closure_poset(algebra)?;
    if dot {
        return Ok(ctx.raw(poset.to_dot()));
    }
    let view = PosetView {
        nodes: poset
            .nodes
            .iter()
            .map(|o| PosetNode {
                orbit: o.to_string(),
                dim: orbit_dimension(o),
            })
            .collect(),
        edges: poset
            .edges
            .iter()
            .map(|e| PosetEdge {
                upper: e.upper,
                lower: e.lower,
                codim: e.codim,
                class: e.class.as_ref().map(ClassView::new),
            })
            .collect(),
    };
    let mut text = format!(
        "{algebra}: {} orbits, {} cover edges\n",
        view.nodes.len(),
        view.edges.len()
    );
    let cells: Vec<Vec<String>> = view
        .edges
        .iter()
        .map(|e| {
            vec![
                view.nodes[e.upper].orbit.clone(),
                view.nodes[e.lower].orbit.clone(),
                e.class.as_ref().map_or("-".into(), |c| format!("{} (n={})", c.letter, c.n)),
                e.codim.to_string(),
            ]
        })
        .collect();
    text.push_str(&table(&["upper", "lower", "class", "codim"], &cells));
    ctx.emit(Some(algebra), AlgebraInput { algebra: alg }, view, text)
}

#[derive(Serialize)]
struct DynkinView {
    orbit: String,
    labels: Vec<u8>,
    flag: Vec<usize>,
    picard: Option<usize>,
}

fn dynkin(ctx: &mut Context, alg: &str, part: &str) -> Result<Outcome, Failure> {
    let algebra = ctx.algebra(alg)?;
    let orbit = ctx.orbit(algebra, part)?;
    let wd = weighted_dynkin(&orbit)?;
    let flag = jm_flag_type(&orbit);
    let picard = match jm_picard_number(&orbit) {
        Ok(b) => Some(b),
        Err(e) if e.is_internal() => return Err(e.into()),
        Err(_) => None,
    };
    let mut text = format!("{orbit}\nlabels {wd}\nflag {flag}\n");
    if let Some(b) = picard {
        text.push_str(&format!("b2 {b}\n"));
    }
    let view = DynkinView {
        orbit: orbit.to_string(),
        labels: wd.labels,
        flag: flag.0,
        picard,
    };
    ctx.emit(
        Some(algebra),
        OrbitInput {
            algebra: alg,
            partition: part,
        },
        view,
        text,
    )
}

#[derive(Serialize)]
struct DegenerationInput<'a> {
    algebra: &'a str,
    upper: &'a str,
    lower: &'a str,
}

#[derive(Serialize)]
struct StepView {
    kind: &'static str,
    count: usize,
    block: Partition,
    sign_before: String,
    sign_after: String,
}

#[derive(Serialize)]
struct TraceView {
    steps: Vec<StepView>,
    upper_irreducible: Partition,
    lower_irreducible: Partition,
    sign_irreducible: String,
}

impl TraceView {
    fn new(t: &KpTrace) -> Self {
        TraceView {
            steps: t
                .steps
                .iter()
                .map(|s| StepView {
                    kind: match s.kind {
                        ErasureKind::Rows => "rows",
                        ErasureKind::Columns => "columns",
                    },
                    count: s.count,
                    block: s.block.clone(),
                    sign_before: s.sign_before.to_string(),
                    sign_after: s.sign_after.to_string(),
                })
                .collect(),
            upper_irreducible: t.upper_irreducible.clone(),
            lower_irreducible: t.lower_irreducible.clone(),
            sign_irreducible: t.sign_irreducible.to_string(),
        }
    }
}

#[derive(Serialize)]
struct DegenerationView {
    upper: Partition,
    lower: Partition,
    codim: usize,
    minimal: bool,
    trace: Option<TraceView>,
    class: Option<ClassView>,
}

fn is_cover(algebra: Algebra, d: &Partition, f: &Partition) -> bool {
    let candidates = match algebra.sign() {
        Some(sign) => Partition::admissible(algebra.natural_dim(), sign),
        None => Partition::all(algebra.natural_dim()),
    };
    !candidates.iter().any(|k| {
        k != d && k != f && d.dominates(k).unwrap_or(false) && k.dominates(f).unwrap_or(false)
    })
}

fn degeneration(ctx: &mut Context, alg: &str, up: &str, low: &str) -> Result<Outcome, Failure> {
    let algebra = ctx.algebra(alg)?;
    let upper = ctx.orbit(algebra, up)?;
    let lower = ctx.orbit(algebra, low)?;
    let (d, f) = (upper.partition(), lower.partition());
    let codim = degeneration_codim(d, f, algebra)?;
    let minimal = is_cover(algebra, d, f);
    let (trace, class) = match algebra.sign() {
        Some(sign) if minimal => {
            let trace = kp_reduce(d, f, sign)?;
            let class = orbitcalc_core::classify_irreducible(
                &trace.upper_irreducible,
                &trace.lower_irreducible,
                trace.sign_irreducible,
            )?;
            if class.codim != codim {
                return Err(Failure::Internal(format!(
                    "class {} codim {} disagrees with dimension difference {codim} for {d} > {f}",
                    class.letter, class.codim
                )));
            }
            (Some(TraceView::new(&trace)), Some(ClassView::new(&class)))
        }
        _ => (None, None),
    };
    let mut text = format!(
        "{algebra}: {} > {}\ncodim {codim}\nminimal {}\n",
        d.bracketed(),
        f.bracketed(),
        yes_no(minimal)
    );
    if let Some(t) = &trace {
        for s in &t.steps {
            text.push_str(&format!(
                "erase {} {} {}: sign {} -> {}\n",
                s.count, s.kind, s.block.bracketed(), s.sign_before, s.sign_after
            ));
        }
        text.push_str(&format!(
            "irreducible {} > {} (sign {})\n",
            t.upper_irreducible.bracketed(),
            t.lower_irreducible.bracketed(),
            t.sign_irreducible
        ));
    }
    if let Some(c) = &class {
        text.push_str(&format!("class {} (n={}), codim {}\n", c.letter, c.n, c.codim));
    }
    let view = DegenerationView {
        upper: d.clone(),
        lower: f.clone(),
        codim,
        minimal,
        trace,
        class,
    };
    ctx.emit(
        Some(algebra),
        DegenerationInput {
            algebra: alg,
            upper: up,
            lower: low,
        },
        view,
        text,
    )
}

#[derive(Serialize)]
struct PeelView {
    p: usize,
    r: usize,
    from: String,
    to: String,
    levi: String,
}

#[derive(Serialize)]
struct ChainView {
    radii: Vec<usize>,
    spinor: Option<String>,
    flag: Vec<usize>,
    picard: usize,
    peels: Vec<PeelView>,
    residual: Option<String>,
}

fn levi_name(gl: usize, inner: Algebra) -> String {
    if inner.natural_dim() == 0 {
        format!("gl({gl})")
    } else {
        format!("gl({gl}) + {}", inner.matrix_name())
    }
}

impl ChainView {
    fn new(c: &TerminalizationChain) -> Self {
        ChainView {
            radii: c.radii.clone(),
            spinor: c.spinor.map(|s| s.to_string()),
            flag: c.flag.0.clone(),
            picard: c.picard,
            peels: c
                .steps
                .iter()
                .map(|s| PeelView {
                    p: s.p,
                    r: s.r,
                    from: s.target.to_string(),
                    to: s.source.to_string(),
                    levi: levi_name(s.r, s.source.algebra()),
                })
                .collect(),
            residual: c.residual.as_ref().map(ToString::to_string),
        }
    }

    fn render(&self, index: usize, out: &mut String) {
        let radii: Vec<String> = self.radii.iter().map(ToString::to_string).collect();
        let flag: Vec<String> = self.flag.iter().map(ToString::to_string).collect();
        out.push_str(&format!(
            "chain {index}: radii ({}), flag ({}), picard {}",
            radii.join(","),
            flag.join(","),
            self.picard
        ));
        if let Some(s) = &self.spinor {
            out.push_str(&format!(", spinor {s}"));
        }
        out.push('\n');
        for p in &self.peels {
            out.push_str(&format!("  peel p={} r={}: {} -> {} in {}\n", p.p, p.r, p.from, p.to, p.levi));
        }
        if let Some(r) = &self.residual {
            out.push_str(&format!("  residual {r}\n"));
        }
    }
}

#[derive(Serialize)]
struct EdgeView {
    a: usize,
    b: usize,
    kind: String,
}

#[derive(Serialize)]
struct GraphView {
    top: String,
    chains: Vec<ChainView>,
    edges: Vec<EdgeView>,
    connected: bool,
    note: Option<String>,
}

impl GraphView {
    fn new(g: &FlopGraph) -> Self {
        GraphView {
            top: g.top.to_string(),
            chains: g.nodes.iter().map(ChainView::new).collect(),
            edges: g
                .edges
                .iter()
                .map(|e| EdgeView {
                    a: e.a,
                    b: e.b,
                    kind: e.kind.to_string(),
                })
                .collect(),
            connected: g.is_connected(),
            note: g.note.clone(),
        }
    }

    fn render(&self) -> String {
        let mut text = format!("{}: {} terminalizations\n", self.top, self.chains.len());
        for (i, c) in self.chains.iter().enumerate() {
            c.render(i, &mut text);
        }
        text.push_str(&format!("flops: {} edges, connected {}\n", self.edges.len(), yes_no(self.connected)));
        for e in &self.edges {
            text.push_str(&format!("  {} -- {}: {}\n", e.a, e.b, e.kind));
        }
        if let Some(n) = &self.note {
            text.push_str(&format!("note: {n}\n"));
        }
        text
    }
}

#[derive(Serialize)]
struct TerminalizeInput<'a> {
    algebra: &'a str,
    partition: &'a str,
    all: bool,
    strategy: &'static str,
}

#[derive(Serialize)]
struct SingleChainView {
    top: String,
    chain: ChainView,
}

fn terminalize(
    ctx: &mut Context,
    alg: &str,
    part: &str,
    all: bool,
    strategy: StrategyArg,
) -> Result<Outcome, Failure> {
    let algebra = ctx.algebra(alg)?;
    let orbit = ctx.orbit(algebra, part)?;
    let inputs = TerminalizeInput {
        algebra: alg,
        partition: part,
        all,
        strategy: match strategy {
            StrategyArg::First => "first",
            StrategyArg::Last => "last",
        },
    };
    if all {
        let view = GraphView::new(&flop_graph(&orbit)?);
        let text = view.render();
        return ctx.emit(Some(algebra), inputs, view, text);
    }
    let strategy = match strategy {
        StrategyArg::First => Strategy::First,
        StrategyArg::Last => Strategy::Last,
    };
    let chain = terminalize_one(&orbit, strategy)?;
    chain.check_dimensions()?;
    let view = SingleChainView {
        top: orbit.to_string(),
        chain: ChainView::new(&chain),
    };
    let mut text = format!("{orbit}\n");
    view.chain.render(0, &mut text);
    ctx.emit(Some(algebra), inputs, view, text)
}

fn flops(ctx: &mut Context, alg: &str, part: &str, dot: bool) -> Result<Outcome, Failure> {
    let algebra = ctx.algebra(alg)?;
    let orbit = ctx.orbit(algebra, part)?;
    let graph = flop_graph(&orbit)?;
    if dot {
        return Ok(ctx.raw(graph.to_dot()));
    }
    let view = GraphView::new(&graph);
    let text = view.render();
    ctx.emit(
        Some(algebra),
        OrbitInput {
            algebra: alg,
            partition: part,
        },
        view,
        text,
    )
}

pub(crate) fn family_of(text: &str) -> Result<Vec<Family>, Failure> {
    if text.eq_ignore_ascii_case("all") {
        return Ok(vec![Family::A, Family::B, Family::C, Family::D]);
    }
    text.parse::<Family>()
        .map(|f| vec![f])
        .map_err(|e| Failure::Input(e.to_string()))
}
