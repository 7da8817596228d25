//! Command-line front end. [`run`] takes the full argument list and writes
//! to the given sinks, so it can be driven from tests as well as `main`.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cocycle::{
    nontrivial_cocycle, shadow_statesum_3cocycle, statesum_2cocycle, Cocycle, StateSumResult,
};
use crate::coloring::{
    count_colorings, enumerate_colorings, enumerate_shadow_colorings, fundamental_cycle,
};
use crate::diagram::LinkDiagram;
use crate::homology::{build_complex, Coefficients, Theory};
use crate::quandle::{
    inner_orbits, is_connected, is_faithful, is_homogeneous, table_from_json, table_from_text,
    validate, FiniteRack,
};
use crate::spaces::{action_quandle_census, extended_quandle_census, quandle_graph, rack_graph};
use crate::verify::{fixture_diagrams, fixture_dir, run_suite, Suite, SuiteOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Quandle colorings, shadow colorings, rack and quandle homology, and
/// cocycle state-sums of link diagrams.
///
/// QUANDLE arguments are spec strings (dihedral:3, alexander:5:2, cyclic:2,
/// trivial:3, alexander-poly:2:1,1) or paths to a Cayley table in text or
/// JSON form. DIAGRAM arguments are inline PD codes, a standard name
/// (unknot, trefoil, trefoil-mirror, figure-eight, hopf, granny, square) or a
/// path to a PD file.
#[derive(Debug, Parser)]
#[command(name = "qshadow", version)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Axiom report and basic properties; exits 0 iff the table is a rack.
    Info { quandle: String },
    /// H_n or H^n of the rack (R), degenerate (D) or quandle (Q) complex.
    Homology {
        quandle: String,
        theory: String,
        degree: usize,
        #[arg(default_value = "Z")]
        coefficients: String,
        /// Compute cohomology and list a spanning set of cocycles.
        #[arg(long)]
        cocycles: bool,
        /// Print the boundary matrix d_n as sparse triplets.
        #[arg(long)]
        matrix: bool,
    },
    /// Count (or list) quandle colorings of a diagram.
    Color {
        diagram: String,
        quandle: String,
        #[arg(long)]
        shadow: bool,
        #[arg(long)]
        list: bool,
        /// With --shadow --list, also print each fundamental cycle.
        #[arg(long)]
        cycles: bool,
    },
    /// Rack graph (or quandle graph) with its component count.
    Graph {
        quandle: String,
        #[arg(long)]
        quandle_graph: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Cocycle state-sum as a multiset of weights in Z/m.
    Statesum {
        diagram: String,
        quandle: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        degree: u8,
        #[arg(long = "mod")]
        modulus: u64,
        /// `auto` (first non-coboundary found), `zero`, or a cocycle JSON file.
        #[arg(long, default_value = "auto")]
        cocycle: String,
        /// For degree 2, also evaluate the shadow state-sum of the pulled-back
        /// 3-cocycle.
        #[arg(long)]
        pullback: bool,
    },
    /// Run one of the check suites: prop23, scol-identity, moves, consum, spaces.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run every programmatic R2 rewrite instead of a seeded sample.
        #[arg(long)]
        all_r2: bool,
    },
    /// Cell census of the extended quandle space through dimension 3.
    Census {
        quandle: String,
        /// Inventory of the action quandle space instead.
        #[arg(long)]
        action: bool,
    },
}

/// A failed command: the message and the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    }
}

/// Successful output plus the exit code (0, or 1 for a failed check).
struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            code: EXIT_OK,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            if !o.text.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Info { quandle } => info(quandle, json),
        Command::Homology {
            quandle,
            theory,
            degree,
            coefficients,
            cocycles,
            matrix,
        } => homology_cmd(
            quandle,
            theory,
            *degree,
            coefficients,
            *cocycles,
            *matrix,
            json,
        ),
        Command::Color {
            diagram,
            quandle,
            shadow,
            list,
            cycles,
        } => color(diagram, quandle, *shadow, *list, *cycles, json),
        Command::Graph {
            quandle,
            quandle_graph,
            dot,
        } => graph(quandle, *quandle_graph, *dot, json),
        Command::Statesum {
            diagram,
            quandle,
            degree,
            modulus,
            cocycle,
            pullback,
        } => statesum(
            diagram,
            quandle,
            *degree as usize,
            *modulus,
            cocycle,
            *pullback,
            json,
        ),
        Command::Verify {
            suite,
            seed,
            all_r2,
        } => verify(suite, *seed, *all_r2, json),
        Command::Census { quandle, action } => census(quandle, *action, json),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn find_file(arg: &str, subdir: &str, extensions: &[&str]) -> Option<PathBuf> {
    let direct = Path::new(arg);
    if direct.is_file() {
        return Some(direct.to_path_buf());
    }
    let base = fixture_dir().join(subdir);
    std::iter::once(base.join(arg))
        .chain(extensions.iter().map(|e| base.join(format!("{arg}.{e}"))))
        .find(|p| p.is_file())
}

/// Raw Cayley table of a quandle argument, valid or not.
fn load_table(arg: &str) -> Result<Vec<Vec<usize>>, Failure> {
    if arg.contains(':') {
        return FiniteRack::from_spec(arg).map(|x| x.rows()).map_err(usage);
    }
    let path = find_file(arg, "quandles", &["json", "txt"])
        .ok_or_else(|| usage(format!("no quandle spec or table file named {arg:?}")))?;
    let text = fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let parsed = if text.trim_start().starts_with('{') {
        table_from_json(&text)
    } else {
        table_from_text(&text)
    };
    parsed.map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_rack(arg: &str) -> Result<FiniteRack, Failure> {
    FiniteRack::from_table(load_table(arg)?).map_err(usage)
}

fn load_diagram(arg: &str) -> Result<LinkDiagram, Failure> {
    if arg.trim_start().starts_with("PD") {
        return LinkDiagram::parse_pd(arg).map_err(usage);
    }
    if let Some((_, d)) = fixture_diagrams().into_iter().find(|(n, _)| *n == arg) {
        return Ok(d);
    }
    let path = find_file(arg, "moves", &[])
        .ok_or_else(|| usage(format!("no PD code, diagram name or file {arg:?}")))?;
    let text = fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    LinkDiagram::parse_pd(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn info(arg: &str, json: bool) -> Result<Output, Failure> {
    let table = load_table(arg)?;
    let report = validate(&table).map_err(usage)?;
    let mut v = json!({
        "size": report.size,
        "axioms": {
            "distributivity": report.distributivity.to_string(),
            "invertibility": report.invertibility.to_string(),
            "idempotency": report.idempotency.to_string(),
        },
        "rack": report.is_rack(),
        "quandle": report.is_quandle(),
    });
    let mut text = format!("size: {}\n{report}", report.size);
    if !text.ends_with('\n') {
        text.push('\n');
    }
    let kind = if report.is_quandle() {
        "quandle"
    } else if report.is_rack() {
        "rack, not a quandle"
    } else {
        "not a rack"
    };
    let _ = writeln!(text, "structure: {kind}");
    if !report.is_rack() {
        return Ok(Output {
            text: if json { pretty(&v) } else { text },
            code: EXIT_FAILED,
        });
    }
    let x = FiniteRack::from_table(table).map_err(usage)?;
    let orbits = inner_orbits(&x);
    let homogeneous = is_homogeneous(&x).ok();
    v["connected"] = json!(is_connected(&x));
    v["faithful"] = json!(is_faithful(&x));
    v["orbits"] = json!(orbits.blocks);
    v["inn_order"] = json!(orbits.group_order);
    v["homogeneous"] = json!(homogeneous);
    let _ = writeln!(text, "connected: {}", is_connected(&x));
    let _ = writeln!(text, "faithful: {}", is_faithful(&x));
    let _ = writeln!(
        text,
        "homogeneous: {}",
        homogeneous.map_or("not checked (size above search bound)".to_string(), |h| h
            .to_string())
    );
    let _ = writeln!(text, "orbits: {} {:?}", orbits.blocks.len(), orbits.blocks);
    let _ = writeln!(text, "|Inn(X)|: {}", orbits.group_order);
    Ok(Output::ok(if json { pretty(&v) } else { text }))
}

#[allow(clippy::too_many_arguments)]
fn homology_cmd(
    q: &str,
    theory: &str,
    n: usize,
    coeff: &str,
    cocycles: bool,
    matrix: bool,
    json: bool,
) -> Result<Output, Failure> {
    let x = load_rack(q)?;
    let theory: Theory = theory.parse().map_err(usage)?;
    let coeff: Coefficients = coeff.parse().map_err(usage)?;
    let top = n + 1;
    let complex = build_complex(&x, theory, top).map_err(usage)?;
    let group = complex.homology(n, coeff).map_err(usage)?;
    let mut v = json!({
        "theory": theory.to_string(),
        "degree": n,
        "coefficients": coeff.to_string(),
        "homology": group,
    });
    let mut text = format!("H_{n}^{theory}(X; {coeff}) = {group}\n");
    if cocycles {
        let h = complex.cohomology(n, coeff).map_err(usage)?;
        let _ = writeln!(text, "H^{n}_{theory}(X; {coeff}) = {}", h.group);
        let list: Vec<Value> = h
            .cocycles
            .iter()
            .zip(&h.coboundary)
            .map(|(c, &b)| {
                let support: Vec<Value> = h
                    .basis
                    .iter()
                    .zip(c)
                    .filter(|(_, &val)| val != 0)
                    .map(|(t, val)| json!([t, val]))
                    .collect();
                json!({"coboundary": b, "support": support})
            })
            .collect();
        for (i, c) in list.iter().enumerate() {
            let _ = writeln!(
                text,
                "cocycle {i} ({}): {}",
                if c["coboundary"] == json!(true) {
                    "coboundary"
                } else {
                    "nontrivial"
                },
                c["support"]
            );
        }
        v["cohomology"] = json!({"group": h.group, "cocycles": list});
    }
    if matrix {
        let m: Value =
            serde_json::from_str(&complex.boundary_json(n).map_err(usage)?).expect("boundary json");
        let _ = writeln!(text, "{m}");
        v["boundary"] = m;
    }
    Ok(Output::ok(if json { pretty(&v) } else { text }))
}

fn color(
    d: &str,
    q: &str,
    shadow: bool,
    list: bool,
    cycles: bool,
    json: bool,
) -> Result<Output, Failure> {
    let d = load_diagram(d)?;
    let x = load_rack(q)?;
    let mut v = json!({"arcs": d.arc_count(), "regions": d.regions().len()});
    let mut text = String::new();
    if shadow {
        let all = enumerate_shadow_colorings(&d, &x).map_err(usage)?;
        v["shadow_colorings"] = json!(all.len());
        let _ = writeln!(text, "shadow colorings: {}", all.len());
        if list {
            let items: Vec<Value> = all
                .iter()
                .map(|s| {
                    let mut item = json!({"arcs": s.arcs, "regions": s.regions});
                    if cycles {
                        let terms: Vec<Value> = fundamental_cycle(&d, s)
                            .terms
                            .iter()
                            .map(|(sign, [r, a, b])| json!([sign, r, a, b]))
                            .collect();
                        item["cycle"] = json!(terms);
                    }
                    item
                })
                .collect();
            for item in &items {
                let _ = writeln!(text, "{item}");
            }
            v["list"] = json!(items);
        }
    } else {
        let count = count_colorings(&d, &x);
        v["colorings"] = json!(count);
        let _ = writeln!(text, "colorings: {count}");
        if list {
            let all: Vec<Value> = enumerate_colorings(&d, &x)
                .iter()
                .map(|c| json!(c.0))
                .collect();
            for c in &all {
                let _ = writeln!(text, "{c}");
            }
            v["list"] = json!(all);
        }
    }
    Ok(Output::ok(if json { pretty(&v) } else { text }))
}

fn graph(q: &str, quandle: bool, dot: bool, json: bool) -> Result<Output, Failure> {
    let x = load_rack(q)?;
    if quandle {
        x.require_quandle().map_err(usage)?;
    }
    let g = if quandle {
        quandle_graph(&x)
    } else {
        rack_graph(&x)
    };
    let v = json!({
        "kind": if quandle { "quandle" } else { "rack" },
        "vertices": g.vertices,
        "edges": g.edges.len(),
        "components": g.component_count(),
        "strong_components": g.strong_component_count(),
        "dot": if dot { Value::from(g.to_dot()) } else { Value::Null },
    });
    if json {
        return Ok(Output::ok(pretty(&v)));
    }
    let mut text = String::new();
    if dot {
        text.push_str(&g.to_dot());
    }
    let _ = writeln!(text, "components: {}", g.component_count());
    Ok(Output::ok(text))
}

fn statesum(
    d: &str,
    q: &str,
    degree: usize,
    m: u64,
    source: &str,
    pullback: bool,
    json: bool,
) -> Result<Output, Failure> {
    let d = load_diagram(d)?;
    let x = load_rack(q)?;
    x.require_quandle().map_err(usage)?;
    if m < 2 {
        return Err(usage("--mod must be at least 2"));
    }
    let cocycle = match source {
        "auto" => nontrivial_cocycle(&x, degree, m)
            .map_err(usage)?
            .ok_or_else(|| usage(format!("H^{degree}_Q(X; Z/{m}) has no nontrivial class")))?,
        "zero" => Cocycle::zero(x.size(), degree, m).map_err(usage)?,
        path => {
            let text = fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
            let c = Cocycle::from_json(&text, &x).map_err(usage)?;
            if c.degree() != degree || c.modulus() != m {
                return Err(usage(format!(
                    "{path} holds a degree {} cocycle mod {}, expected degree {degree} mod {m}",
                    c.degree(),
                    c.modulus()
                )));
            }
            c
        }
    };
    let result = if degree == 2 {
        statesum_2cocycle(&d, &x, &cocycle)
    } else {
        shadow_statesum_3cocycle(&d, &x, &cocycle)
    }
    .map_err(usage)?;
    let entry = |r: &StateSumResult| json!({"m": r.modulus, "pairs": r.pairs()});
    let mut v = json!({"degree": degree, "statesum": entry(&result)});
    let mut text = format!("state-sum: {result}\n");
    if source == "auto" {
        v["cocycle"] = serde_json::from_str(&cocycle.to_json()).expect("cocycle json");
        let _ = writeln!(text, "cocycle: {}", cocycle.to_json());
    }
    if pullback {
        if degree != 2 {
            return Err(usage("--pullback needs --degree 2"));
        }
        let theta = cocycle.pullback();
        let shadow = shadow_statesum_3cocycle(&d, &x, &theta).map_err(usage)?;
        let scaled = result.scale(x.size() as u64);
        let holds = shadow == scaled;
        v["pullback"] = json!({"statesum": entry(&shadow), "equals_size_times": holds});
        let _ = writeln!(text, "pulled-back shadow state-sum: {shadow}");
        let _ = writeln!(text, "equals |X| times the state-sum: {holds}");
    }
    Ok(Output::ok(if json { pretty(&v) } else { text }))
}

fn verify(suite: &str, seed: u64, all_r2: bool, json: bool) -> Result<Output, Failure> {
    let suite: Suite = suite.parse().map_err(usage)?;
    let opts = SuiteOptions {
        seed,
        r2_sample: if all_r2 {
            None
        } else {
            SuiteOptions::default().r2_sample
        },
        ..SuiteOptions::default()
    };
    let report = run_suite(suite, &opts).map_err(usage)?;
    Ok(Output {
        text: if json {
            report.to_json()
        } else {
            report.to_string()
        },
        code: if report.passed() {
            EXIT_OK
        } else {
            EXIT_FAILED
        },
    })
}

fn census(q: &str, action: bool, json: bool) -> Result<Output, Failure> {
    let x = load_rack(q)?;
    let c = if action {
        action_quandle_census(&x)
    } else {
        extended_quandle_census(&x)
    }
    .map_err(usage)?;
    if json {
        return Ok(Output::ok(c.to_json()));
    }
    let mut text = String::new();
    for (n, d) in c.dimensions.iter().enumerate() {
        let _ = writeln!(
            text,
            "dim {n}: {} = {} cubes + {} capping + {} cone",
            d.total(),
            d.original,
            d.capping,
            d.cone
        );
    }
    Ok(Output::ok(text))
}
