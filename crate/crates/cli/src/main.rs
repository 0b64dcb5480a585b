//! `leavitt`: JSON reports on path algebras and Leavitt path algebras of
//! graphs read from `.graph` files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use leavitt_core::analysis::{analyze, hereditary_saturated_closure, is_hereditary, is_saturated};
use leavitt_core::quotients::{quotient_graph, restriction_graph, right_denominator, socle_set, QuotientMorphism};
use leavitt_core::semisimple::{element_group_inverse, matrix_decomposition};
use leavitt_core::toeplitz::toeplitz_check;
use leavitt_core::{parse_element_in, parse_graph, Element, Error, Field, Graph, VertexSet};
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "leavitt", version, about = "Normal forms and structure reports for Leavitt path algebras")]
struct Cli {
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Plain text instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Degree bound for enumerations.
    #[arg(long, global = true, default_value_t = 4)]
    degree: usize,
    /// Toeplitz matrix window size.
    #[arg(long, global = true, default_value_t = 12)]
    window: usize,
    /// Path-length cap for restriction graphs.
    #[arg(long, global = true, default_value_t = 4)]
    truncate: usize,
    /// Print only this key of the result.
    #[arg(long, global = true)]
    only: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural report: semiprimeness, line points, socle, cycles.
    Analyze { graph: PathBuf },
    /// Normal form of an expression.
    Nf { graph: PathBuf, expr: String },
    /// Product of two expressions.
    Mul { graph: PathBuf, x: String, y: String },
    /// Whether two expressions are equal in the algebra.
    Eq { graph: PathBuf, x: String, y: String },
    /// Matrix decomposition of an acyclic graph.
    Decompose { graph: PathBuf },
    /// Group inverse of an element of a semisimple algebra.
    GroupInverse { graph: PathBuf, expr: String },
    /// Whether an element lies in the socle.
    SocleMember { graph: PathBuf, expr: String },
    /// The quotient graph E/H and the morphism onto it.
    Quotient {
        graph: PathBuf,
        /// Comma-separated hereditary vertex set.
        #[arg(long)]
        set: String,
        /// Element to push through the morphism.
        expr: Option<String>,
    },
    /// The restriction graph of a hereditary set, truncated at `--truncate`.
    Restrict {
        graph: PathBuf,
        /// Comma-separated hereditary vertex set; defaults to the socle set.
        #[arg(long)]
        set: Option<String>,
        /// Element of the restriction graph's algebra to embed.
        expr: Option<String>,
    },
    /// A right denominator r with p·r ≠ 0 and q·r in the path algebra.
    Denominator { graph: PathBuf, p: String, q: String },
    /// Recognition, exact sequence and matrix-window checks for E(n, F).
    ToeplitzCheck { graph: PathBuf },
    /// Hereditary saturated closure of a vertex set.
    Closure {
        graph: PathBuf,
        #[arg(long)]
        set: String,
    },
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    graph: String,
    version: &'static str,
    result: Value,
}

enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(..) => 1,
            Failure::Core(_) | Failure::Usage(_) => 2,
        }
    }

    fn to_json(&self, command: Option<&str>) -> Value {
        let (kind, message) = match self {
            Failure::Core(e) => (e.kind().to_string(), e.to_string()),
            Failure::Io(p, e) => ("io".to_string(), format!("{}: {e}", p.display())),
            Failure::Usage(m) => ("usage".to_string(), m.clone()),
        };
        json!({ "error": { "kind": kind, "message": message }, "command": command })
    }
}

fn load(path: &Path) -> Result<Arc<Graph>, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    Ok(Arc::new(parse_graph(&text)?))
}

fn vertex_list(g: &Graph, list: &str) -> Result<VertexSet, Failure> {
    let names: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Ok(g.vertex_set(&names)?)
}

fn graph_json(g: &Graph) -> Value {
    json!({
        "name": g.name(),
        "vertices": g.vertices().map(|v| g.vertex_name(v)).collect::<Vec<_>>(),
        "edges": g.edges().map(|e| json!([g.edge_name(e), g.vertex_name(g.source(e)), g.vertex_name(g.range(e))])).collect::<Vec<_>>(),
    })
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Nf { .. } => "nf",
        Command::Mul { .. } => "mul",
        Command::Eq { .. } => "eq",
        Command::Decompose { .. } => "decompose",
        Command::GroupInverse { .. } => "group-inverse",
        Command::SocleMember { .. } => "socle-member",
        Command::Quotient { .. } => "quotient",
        Command::Restrict { .. } => "restrict",
        Command::Denominator { .. } => "denominator",
        Command::ToeplitzCheck { .. } => "toeplitz-check",
        Command::Closure { .. } => "closure",
    }
}

fn run(cli: &Cli) -> Result<(String, Value), Failure> {
    let field: Field = cli.field.parse()?;
    let elem = |g: &Arc<Graph>, s: &str| -> Result<Element, Failure> { Ok(parse_element_in(g, field, s)?) };
    let (g, result) = match &cli.command {
        Command::Analyze { graph } => {
            let g = load(graph)?;
            let r = to_value(analyze(&g));
            (g, r)
        }
        Command::Nf { graph, expr } => {
            let g = load(graph)?;
            let x = elem(&g, expr)?;
            let r = json!({ "input": expr, "normal_form": x.to_string(), "terms": x.support_len(), "grade": x.homogeneous_degree() });
            (g, r)
        }
        Command::Mul { graph, x, y } => {
            let g = load(graph)?;
            let p = &elem(&g, x)? * &elem(&g, y)?;
            (g, json!({ "product": p.to_string() }))
        }
        Command::Eq { graph, x, y } => {
            let g = load(graph)?;
            let (a, b) = (elem(&g, x)?, elem(&g, y)?);
            let r = json!({ "equal": a == b, "left": a.to_string(), "right": b.to_string(), "difference": (&a - &b).to_string() });
            (g, r)
        }
        Command::Decompose { graph } => {
            let g = load(graph)?;
            let r = to_value(matrix_decomposition(&g)?.report());
            (g, r)
        }
        Command::GroupInverse { graph, expr } => {
            let g = load(graph)?;
            let x = elem(&g, expr)?;
            let d = matrix_decomposition(&g)?;
            let inv = element_group_inverse(&x)?;
            let r = json!({
                "element": x.to_string(),
                "inverse": inv.to_string(),
                "blocks": to_value(d.to_matrix(&x)?),
                "inverse_blocks": to_value(d.to_matrix(&inv)?),
            });
            (g, r)
        }
        Command::SocleMember { graph, expr } => {
            let g = load(graph)?;
            let x = elem(&g, expr)?;
            let h = socle_set(&g);
            let r = json!({
                "element": x.to_string(),
                "in_socle": leavitt_core::quotients::in_socle(&x),
                "socle_vertices": g.vertex_names(&h),
            });
            (g, r)
        }
        Command::Quotient { graph, set, expr } => {
            let g = load(graph)?;
            let h = vertex_list(&g, set)?;
            let q = quotient_graph(&g, &h)?;
            let mut r = Map::new();
            r.insert("hereditary_set".into(), json!(g.vertex_names(&h)));
            r.insert("saturated".into(), json!(is_saturated(&g, &h)));
            r.insert("quotient_graph".into(), graph_json(&q));
            match QuotientMorphism::new(&g, &h) {
                Ok(pi) => {
                    r.insert("generator_images".into(), to_value(pi.generator_images()));
                    if let Some(s) = expr {
                        let x = elem(&g, s)?;
                        let y = pi.apply(&x)?;
                        r.insert("element".into(), json!(x.to_string()));
                        r.insert("image".into(), json!(y.to_string()));
                        r.insert("in_graded_ideal".into(), json!(y.is_zero()));
                    }
                }
                Err(e) if expr.is_some() => return Err(e.into()),
                Err(_) => {
                    r.insert("generator_images".into(), Value::Null);
                }
            }
            (g, Value::Object(r))
        }
        Command::Restrict { graph, set, expr } => {
            let g = load(graph)?;
            let h = match set {
                Some(s) => vertex_list(&g, s)?,
                None => socle_set(&g),
            };
            let rg = restriction_graph(&g, &h, cli.truncate)?;
            let mut r = match to_value(rg.summary()) {
                Value::Object(m) => m,
                _ => unreachable!("summary is a struct"),
            };
            r.insert("hereditary_set".into(), json!(g.vertex_names(&h)));
            if let Some(s) = expr {
                let y = elem(rg.graph(), s)?;
                r.insert("element".into(), json!(y.to_string()));
                r.insert("embedding".into(), json!(rg.embed(&y)?.to_string()));
            }
            (g, Value::Object(r))
        }
        Command::Denominator { graph, p, q } => {
            let g = load(graph)?;
            let (p, q) = (elem(&g, p)?, elem(&g, q)?);
            let d = right_denominator(&p, &q)?;
            let r = json!({
                "p": p.to_string(),
                "q": q.to_string(),
                "r": d.r.to_string(),
                "p_r": (&p * &d.r).to_string(),
                "q_r": (&q * &d.r).to_string(),
                "iterations": d.iterations,
                "bound": d.bound,
            });
            (g, r)
        }
        Command::ToeplitzCheck { graph } => {
            let g = load(graph)?;
            let r = to_value(toeplitz_check(&g, cli.degree, cli.window)?);
            (g, r)
        }
        Command::Closure { graph, set } => {
            let g = load(graph)?;
            let x = vertex_list(&g, set)?;
            let c = hereditary_saturated_closure(&g, &x);
            let r = json!({
                "set": g.vertex_names(&x),
                "closure": g.vertex_names(&c),
                "hereditary": is_hereditary(&g, &x),
                "saturated": is_saturated(&g, &x),
            });
            (g, r)
        }
    };
    Ok((g.name().to_string(), result))
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn render_pretty(report: &Report) -> String {
    let mut out = format!("{} on {} (leavitt {})\n", report.command, report.graph, report.version);
    match &report.result {
        Value::Object(m) => {
            for (k, v) in m {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        let body = serde_json::to_string_pretty(v).expect("json");
                        out.push_str(&format!("{k}:\n"));
                        for line in body.lines() {
                            out.push_str(&format!("  {line}\n"));
                        }
                    }
                    _ => out.push_str(&format!("{k}: {}\n", scalar_text(v))),
                }
            }
        }
        other => out.push_str(&format!("{}\n", scalar_text(other))),
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            let f = Failure::Usage(first);
            eprintln!("{}", f.to_json(None));
            return ExitCode::from(f.exit_code());
        }
    };
    let command = command_name(&cli.command);
    let (graph, mut result) = match run(&cli) {
        Ok(x) => x,
        Err(f) => {
            eprintln!("{}", f.to_json(Some(command)));
            return ExitCode::from(f.exit_code());
        }
    };
    if let Some(key) = &cli.only {
        match result.get(key) {
            Some(v) => result = v.clone(),
            None => {
                let f = Failure::Usage(format!("no key `{key}` in the {command} result"));
                eprintln!("{}", f.to_json(Some(command)));
                return ExitCode::from(f.exit_code());
            }
        }
    }
    let report = Report { command, graph, version: env!("CARGO_PKG_VERSION"), result };
    if cli.pretty {
        print!("{}", render_pretty(&report));
    } else {
        println!("{}", serde_json::to_string(&report).expect("json"));
    }
    ExitCode::SUCCESS
}
