//! Argument parsing and the five subcommands.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use isoendo_core::analysis::{conductor_predicates, independence_report, OrderStatus};
use isoendo_core::arith::Field;
use isoendo_core::graph::{cycle_to_chain, enumerate_cycles, expected_vertex_count, Cycle, IsogenyGraph};
use isoendo_core::quaternion::{b_p_infty, maximal_superorders, realize_pair, QuatElement, QuatOrder, DEFAULT_SUPERORDER_BUDGET};
use isoendo_core::schoof::{check_relation, trace_oracle, BoundMode};
use isoendo_core::{Error, Result};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::{cache_dir, Session};
use crate::labels::{default_names, display, resolve};
use crate::reproduce::reproduce;

#[derive(Parser, Debug)]
#[command(name = "isoendo", version, about = "Supersingular isogeny graphs, cycle traces and endomorphism rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Characteristic.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Isogeny degree.
    #[arg(long, global = true, default_value_t = 2)]
    pub ell: u64,
    /// Vertex: a j-invariant ("23" or "3,28" for c0 + c1·s), or a, A, b, B
    /// for the named vertices of the example graphs.
    #[arg(long, global = true)]
    pub j: Option<String>,
    #[arg(long = "max-len", global = true, default_value_t = 8)]
    pub max_len: usize,
    /// Cycle as comma separated edge ids; repeat for a second cycle.
    #[arg(long, global = true)]
    pub cycle: Vec<String>,
    /// Cross-check traces against the pointwise oracle.
    #[arg(long, global = true)]
    pub verify: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Cache directory; ISOGENY_ENDO_CACHE takes precedence.
    #[arg(long = "cache-dir", global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long = "bound-mode", global = true, value_enum, default_value_t = Bound::Sharp)]
    pub bound_mode: Bound,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest denominator tried when writing elements in the basis 1, i, j, ij.
    #[arg(long = "denom-bound", global = true, default_value_t = 40)]
    pub denom_bound: u64,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Vertices and edges of G(p, ℓ).
    Graph,
    /// Cycles without backtracking at a vertex.
    Cycles,
    /// Trace and norm of one cycle.
    Trace,
    /// The order generated by two cycles at one vertex.
    Endoring,
    /// Recompute a published example and compare.
    Reproduce,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Table,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Sharp,
    Paper,
}

impl From<Bound> for BoundMode {
    fn from(b: Bound) -> BoundMode {
        match b {
            Bound::Sharp => BoundMode::Sharp,
            Bound::Paper => BoundMode::Paper,
        }
    }
}

/// What a command produced: text for stdout and the exit status.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

/// Exit status for an error: 2 for unusable input, 1 for failed checks.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BadInput(_)
        | Error::BadPrime(_)
        | Error::NotAVertex(_)
        | Error::BadChain(_)
        | Error::BadKernel(_)
        | Error::Unsupported(_)
        | Error::TooLarge(_)
        | Error::NotRealizable(_) => 2,
        _ => 1,
    }
}

fn parse_cycle(g: &IsogenyGraph, s: &str) -> Result<Cycle> {
    let ids = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::BadInput(format!("bad edge id '{}'", t))))
        .collect::<Result<Vec<_>>>()?;
    Cycle::new(g, ids)
}

fn vertex_arg(g: &IsogenyGraph, names: &BTreeMap<&'static str, usize>, j: Option<&str>) -> Result<usize> {
    let j = j.ok_or_else(|| Error::BadInput("--j is required".into()))?;
    resolve(g, names, j)
}

fn json_text(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn cycle_json(g: &IsogenyGraph, names: &BTreeMap<&'static str, usize>, c: &Cycle) -> Value {
    json!({
        "edges": c.edges,
        "vertices": c.vertices(g).iter().map(|&v| display(g, names, v)).collect::<Vec<_>>(),
        "length": c.len(),
        "no_backtracking": c.no_backtracking(g),
        "first_dual_last": c.first_dual_last(g),
    })
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let p = cli.p.ok_or_else(|| Error::BadInput("--p is required".into()))?;
    if cli.format == Format::Dot && cli.command != Command::Graph {
        return Err(Error::BadInput("--format dot only applies to graph".into()));
    }
    let dir = cache_dir(cli.cache_dir.as_deref());
    let mut s = Session::open(p, cli.ell, dir.as_deref())?;
    let out = match cli.command {
        Command::Graph => cmd_graph(cli, &s.graph),
        Command::Cycles => cmd_cycles(cli, &s.graph),
        Command::Trace => cmd_trace(cli, &mut s),
        Command::Endoring => cmd_endoring(cli, &s.graph),
        Command::Reproduce => cmd_reproduce(cli, &mut s),
    };
    s.save();
    out
}

fn cmd_graph(cli: &Cli, g: &IsogenyGraph) -> Result<Outcome> {
    let names = default_names(g);
    let want = expected_vertex_count(g.p);
    let ok = g.vertices.len() as u64 == want;
    if !ok {
        eprintln!("vertex count {} differs from ⌊p/12⌋ + ε = {}", g.vertices.len(), want);
    }
    let code = if ok { 0 } else { 1 };
    let f = &g.field;
    let stdout = match cli.format {
        Format::Json => json_text(&json!({
            "p": g.p,
            "ell": g.ell,
            "vertex_count": g.vertices.len(),
            "expected_vertex_count": want,
            "vertex_count_ok": ok,
            "vertices": g.vertices.iter().enumerate().map(|(i, v)| json!({
                "id": i,
                "j": f.encode(&v.j),
                "name": display(g, &names, i),
                "conjugate": g.conjugate(i),
                "a": f.encode(&v.curve.a),
                "b": f.encode(&v.curve.b),
            })).collect::<Vec<_>>(),
            "edges": g.edges.iter().map(|e| json!({
                "id": e.id,
                "from": e.from,
                "to": e.to,
                "dual": e.dual,
                "kernel": e.kernel.coeffs().iter().map(|c| f.encode(c)).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })),
        Format::Dot => {
            let mut s = format!("digraph \"G({},{})\" {{\n", g.p, g.ell);
            for i in 0..g.vertices.len() {
                let _ = writeln!(s, "  v{} [label=\"{}\"];", i, display(g, &names, i));
            }
            for e in &g.edges {
                let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"];", e.from, e.to, e.id);
            }
            s.push_str("}\n");
            s
        }
        Format::Table => {
            let mut s = format!("G({}, {}): {} vertices (expected {})\n", g.p, g.ell, g.vertices.len(), want);
            s.push_str("vertex\tj\tout-edges\n");
            for i in 0..g.vertices.len() {
                let outs: Vec<String> =
                    g.out[i].iter().map(|&e| format!("{}→{}", e, display(g, &names, g.edges[e].to))).collect();
                let _ = writeln!(s, "{}\t{}\t{}", i, display(g, &names, i), outs.join(" "));
            }
            s
        }
    };
    Ok(Outcome { stdout, code })
}

fn cmd_cycles(cli: &Cli, g: &IsogenyGraph) -> Result<Outcome> {
    let names = default_names(g);
    let v = vertex_arg(g, &names, cli.j.as_deref())?;
    let cs = enumerate_cycles(g, v, cli.max_len);
    let stdout = match cli.format {
        Format::Table => {
            let mut s = String::from("edges\tvertices\tlength\tfirst_dual_last\n");
            for c in &cs {
                let vs: Vec<String> = c.vertices(g).iter().map(|&w| display(g, &names, w)).collect();
                let es: Vec<String> = c.edges.iter().map(|e| e.to_string()).collect();
                let _ = writeln!(s, "{}\t{}\t{}\t{}", es.join(","), vs.join("-"), c.len(), c.first_dual_last(g));
            }
            s
        }
        _ => json_text(&cs.iter().map(|c| cycle_json(g, &names, c)).collect::<Vec<_>>()),
    };
    Ok(Outcome { stdout, code: 0 })
}

fn cmd_trace(cli: &Cli, s: &mut Session) -> Result<Outcome> {
    let [arg] = cli.cycle.as_slice() else {
        return Err(Error::BadInput("trace takes exactly one --cycle".into()));
    };
    let c = parse_cycle(&s.graph, arg)?;
    let r = s.trace(&c, cli.bound_mode.into())?;
    let names = default_names(&s.graph);
    let mut code = 0;
    let mut verified = None;
    if cli.verify {
        let chain = cycle_to_chain(&s.graph, &c)?;
        let oracle = match trace_oracle(&chain) {
            Ok(t) => Some(BigInt::from(t)),
            Err(Error::TooLarge(m)) => {
                eprintln!("oracle skipped: {}", m);
                None
            }
            Err(e) => return Err(e),
        };
        let relation = check_relation(&chain, &r.trace, 2, 4, cli.seed)?;
        let agree = oracle.as_ref().is_none_or(|t| *t == r.trace) && relation;
        if !agree {
            eprintln!(
                "verification failed: schoof trace {}, oracle {}, relation check {}",
                r.trace,
                oracle.as_ref().map_or("-".to_string(), |t| t.to_string()),
                relation
            );
            code = 1;
        }
        verified = Some(json!({
            "oracle_trace": oracle.map(|t| t.to_string()),
            "relation_holds": relation,
            "agree": agree,
        }));
    }
    let stdout = match cli.format {
        Format::Table => {
            let res: Vec<String> = r.residues.iter().map(|(m, t)| format!("{}:{}", m, t)).collect();
            let mut out = format!("trace\t{}\nnorm\t{}\nresidues\t{}\n", r.trace, r.norm, res.join(" "));
            if let Some(v) = &verified {
                let _ = writeln!(out, "verified\t{}", v["agree"]);
            }
            out
        }
        _ => json_text(&json!({
            "cycle": cycle_json(&s.graph, &names, &c),
            "trace": r.trace.to_string(),
            "norm": r.norm.to_string(),
            "residues": r.residues,
            "verify": verified,
        })),
    };
    Ok(Outcome { stdout, code })
}

fn elements(o: &QuatOrder) -> Vec<String> {
    o.basis.iter().map(QuatElement::to_string).collect()
}

fn cmd_endoring(cli: &Cli, g: &IsogenyGraph) -> Result<Outcome> {
    let [s1, s2] = cli.cycle.as_slice() else {
        return Err(Error::BadInput("endoring takes exactly two --cycle".into()));
    };
    let names = default_names(g);
    let c1 = parse_cycle(g, s1)?;
    let c2 = parse_cycle(g, s2)?;
    if cli.j.is_some() {
        let v = vertex_arg(g, &names, cli.j.as_deref())?;
        if c1.base != v || c2.base != v {
            return Err(Error::BadInput("cycles do not start at --j".into()));
        }
    }
    let r = independence_report(g, &c1, &c2, cli.bound_mode.into())?;
    let alg = b_p_infty(g.p)?;
    let mut basis = None;
    let mut superorders = None;
    if r.independent {
        let n1 = BigInt::from(r.norms.0.clone());
        let n2 = BigInt::from(r.norms.1.clone());
        match realize_pair(&alg, (&r.traces.0, &n1), (&r.traces.1, &n2), &r.traces.2, cli.denom_bound) {
            Ok((a, b)) => {
                let ab = alg.mul(&a, &b);
                let o = QuatOrder::new(alg.clone(), vec![QuatElement::one(), a, b, ab])?;
                if !o.is_maximal() {
                    let sup = maximal_superorders(&o, DEFAULT_SUPERORDER_BUDGET)?;
                    superorders = Some(sup.iter().map(elements).collect::<Vec<_>>());
                }
                basis = Some(elements(&o));
            }
            Err(e @ (Error::NotFound | Error::Budget)) => eprintln!("no quaternion realization: {}", e),
            Err(e) => return Err(e),
        }
    }
    let status = match &r.order_status {
        OrderStatus::Maximal => "maximal".to_string(),
        OrderStatus::NonMaximal(_) => "nonmaximal".to_string(),
        OrderStatus::Undetermined => "undetermined".to_string(),
    };
    let e1 = c1.len();
    let cond = |t: &BigInt, e: usize| {
        let c = conductor_predicates(g.ell, e, t);
        json!({ "conductor_coprime_to_ell": c.conductor_coprime_to_ell, "ell_splits": c.ell_splits })
    };
    let gram: Vec<Vec<String>> = r.gram4.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect();
    let report = json!({
        "cycles": [cycle_json(g, &names, &c1), cycle_json(g, &names, &c2)],
        "traces": [r.traces.0.to_string(), r.traces.1.to_string(), r.traces.2.to_string()],
        "norms": [r.norms.0.to_string(), r.norms.1.to_string()],
        "commute": r.commute,
        "independent": r.independent,
        "gram": gram,
        "reduced_discriminant": r.disc_reduced.as_ref().map(|d| d.to_string()),
        "order_status": status,
        "obstruction": r.obstruction.as_ref().map(|w| w.iter().map(|&v| display(g, &names, v)).collect::<Vec<_>>()),
        "conductor": [cond(&r.traces.0, e1), cond(&r.traces.1, c2.len())],
        "basis": basis,
        "maximal_superorders": superorders,
    });
    let stdout = match cli.format {
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "traces\t{} {} {}", r.traces.0, r.traces.1, r.traces.2);
            let _ = writeln!(s, "norms\t{} {}", r.norms.0, r.norms.1);
            let _ = writeln!(s, "independent\t{}", r.independent);
            let _ = writeln!(s, "commute\t{}", r.commute);
            let _ = writeln!(
                s,
                "reduced_discriminant\t{}",
                r.disc_reduced.as_ref().map_or("-".to_string(), |d| d.to_string())
            );
            let _ = writeln!(s, "order_status\t{}", status);
            if let Some(b) = report["basis"].as_array() {
                let b: Vec<&str> = b.iter().filter_map(Value::as_str).collect();
                let _ = writeln!(s, "basis\t{}", b.join(", "));
            }
            if let Some(sup) = report["maximal_superorders"].as_array() {
                let _ = writeln!(s, "maximal_superorders\t{}", sup.len());
            }
            s
        }
        _ => json_text(&report),
    };
    Ok(Outcome { stdout, code: 0 })
}

fn cmd_reproduce(cli: &Cli, s: &mut Session) -> Result<Outcome> {
    let r = reproduce(s, cli.bound_mode.into(), cli.denom_bound)?;
    let code = if r.passed() { 0 } else { 1 };
    for i in r.items.iter().filter(|i| !i.ok && !i.informational) {
        eprintln!("mismatch: {}: {}", i.name, i.detail);
    }
    let stdout = match cli.format {
        Format::Table => {
            let mut out = String::new();
            for i in &r.items {
                let tag = if i.informational { "NOTE" } else if i.ok { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{}\t{}\t{}", tag, i.name, i.detail);
            }
            let checked: Vec<_> = r.items.iter().filter(|i| !i.informational).collect();
            let passed = checked.iter().filter(|i| i.ok).count();
            let _ = writeln!(out, "{}/{} items passed", passed, checked.len());
            out
        }
        _ => json_text(&json!({ "passed": r.passed(), "report": r })),
    };
    Ok(Outcome { stdout, code })
}
