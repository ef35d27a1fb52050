//! `siltwb`: command-line front end for the silting and SMC engines.
//!
//! Exit codes: 0 on success, 1 when a precondition or a requested check fails
//! (the violated condition is named), 2 on parse errors.

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use siltwb::derived::{dhom_basis, dhom_dim, thick_perp_project, DObject, Stalk};
use siltwb::io::{
    morphism_to_json, object_label, object_to_json, parse_object, parse_quiver, parse_store,
    quiver_to_json, rep_to_json, stalk_label, stalk_to_json, ObjectStore,
};
use siltwb::oracle::{TypeAOracle, Window};
use siltwb::quiver::Quiver;
use siltwb::rep::{set_fallback_seed, EndRing, Representation};
use siltwb::silting::{
    bongartz_complete, class_determinant, complete_presilting, is_silting, mutate_left,
    mutate_right, presilting_violation, silting_to_tilting, Mutation,
};
use siltwb::smc::{complete_presmc, ext_quiver, pre_smc_violations, ExtQuiver, PreSmcCompletion};
use siltwb::{Error, Field, Result};

#[derive(Parser)]
#[command(name = "siltwb", version, about = "Exact silting and simple-minded collection computations over path algebras")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Opts {
    /// Quiver file (text or JSON), or one of `A<n>`, `kronecker`.
    #[arg(long, global = true, default_value = "A2")]
    quiver: String,
    /// Prime `p` or `Q`; defaults to $SILTWB_FIELD, then 101.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized fallback searches.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Log every approximation triangle with its maps.
    #[arg(long, global = true)]
    verbose_triangles: bool,
    /// JSON file of named objects usable in expressions.
    #[arg(long, global = true)]
    objects: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of Hom(A, B[d]).
    Hom {
        a: String,
        b: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        degree: i32,
    },
    /// Dimension of Hom(A, B[1]).
    Ext { a: String, b: String },
    /// Indecomposable summands with multiplicities.
    Decompose { a: String },
    CheckPresilting { t: String },
    CheckSilting { t: String },
    /// Left or right mutation of a silting object at a summand.
    Mutate {
        t: String,
        #[arg(long)]
        at: String,
        #[arg(long, conflicts_with = "right", required_unless_present = "right")]
        left: bool,
        #[arg(long)]
        right: bool,
    },
    CompletePresilting { t: String },
    SiltingToTilting { t: String },
    /// Complement of a rigid module to a tilting module.
    Bongartz { m: String },
    ExtQuiver { x: String },
    CheckPresmc { x: String },
    CompletePresmc { x: String },
    /// Projection of an object onto the perpendicular category of an exceptional object.
    Reduce {
        #[arg(long)]
        exceptional: String,
        #[arg(long)]
        object: String,
    },
    /// Brute-force enumerations on type A quivers.
    Oracle {
        #[command(subcommand)]
        what: OracleCommand,
    },
}

#[derive(Subcommand, Clone)]
enum OracleCommand {
    EnumerateSilting {
        #[arg(long, num_args = 2, allow_hyphen_values = true, value_names = ["MIN", "MAX"])]
        window: Option<Vec<i32>>,
    },
    EnumerateTilting,
    EnumerateSmc {
        #[arg(long, num_args = 2, allow_hyphen_values = true, value_names = ["MIN", "MAX"])]
        window: Option<Vec<i32>>,
    },
}

struct Session {
    quiver: Arc<Quiver>,
    field: Field,
    store: ObjectStore,
    verbose: bool,
}

/// Outcome of a command: text lines, a JSON document, and whether it succeeded.
struct Report {
    lines: Vec<String>,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(lines: Vec<String>, json: Value) -> Self {
        Report { lines, json, ok: true }
    }
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read `{path}`: {e}")))
}

fn load_quiver(spec: &str) -> Result<Quiver> {
    if Path::new(spec).exists() {
        return parse_quiver(&read_file(spec)?);
    }
    let lower = spec.to_ascii_lowercase();
    if lower == "kronecker" {
        return Ok(Quiver::kronecker());
    }
    if let Some(n) = lower.strip_prefix('a').and_then(|n| n.parse::<usize>().ok()) {
        if n >= 1 {
            return Ok(Quiver::linear_a(n));
        }
    }
    Err(Error::Parse(format!("`{spec}` is neither a quiver file nor a known quiver name")))
}

fn resolve_field(flag: Option<&str>) -> Result<Field> {
    match flag {
        Some(f) => f.parse(),
        None => match std::env::var("SILTWB_FIELD") {
            Ok(v) if !v.trim().is_empty() => v.parse(),
            _ => Ok(Field::default()),
        },
    }
}

impl Session {
    fn new(opts: &Opts) -> Result<Self> {
        let quiver = Arc::new(load_quiver(&opts.quiver)?);
        let field = resolve_field(opts.field.as_deref())?;
        let store = match &opts.objects {
            Some(path) => parse_store(&quiver, field, &read_file(path)?)?,
            None => ObjectStore::new(),
        };
        Ok(Session {
            quiver,
            field,
            store,
            verbose: opts.verbose_triangles,
        })
    }

    /// An object expression, inline JSON, or `@file` with either.
    fn object(&self, spec: &str) -> Result<DObject> {
        let text = match spec.strip_prefix('@') {
            Some(path) => read_file(path)?,
            None => spec.to_string(),
        };
        parse_object(&self.quiver, self.field, &text, &self.store)
    }

    fn stalk(&self, spec: &str) -> Result<Stalk> {
        let obj = self.object(spec)?;
        match obj.summands() {
            [s] => Ok(s.clone()),
            _ => Err(Error::PreconditionFailed(format!(
                "`{spec}` must be a single indecomposable object, got {}",
                object_label(&obj)
            ))),
        }
    }

    fn collection(&self, spec: &str) -> Result<Vec<Stalk>> {
        Ok(self.object(spec)?.summands().to_vec())
    }

    fn module(&self, spec: &str) -> Result<Representation> {
        let obj = self.object(spec)?;
        if !obj.is_module() {
            return Err(Error::PreconditionFailed(format!(
                "`{spec}` is not concentrated in degree 0"
            )));
        }
        let parts: Vec<&Representation> = obj.summands().iter().map(|s| &s.rep).collect();
        Ok(Representation::direct_sum(self.quiver.clone(), self.field, &parts))
    }
}

fn labels(xs: &[Stalk]) -> Vec<String> {
    xs.iter().map(stalk_label).collect()
}

fn hom_report(s: &Session, a: &str, b: &str, degree: i32, command: &str) -> Result<Report> {
    let (x, y) = (s.object(a)?, s.object(b)?);
    let dim = dhom_dim(&x, &y, degree);
    let mut lines = vec![format!(
        "dim Hom({}, ({})[{degree}]) = {dim}",
        object_label(&x),
        object_label(&y)
    )];
    let mut j = json!({
        "command": command,
        "source": object_to_json(&x),
        "target": object_to_json(&y),
        "degree": degree,
        "dimension": dim,
    });
    if s.verbose {
        let basis: Vec<Value> = dhom_basis(&x, &y, degree).iter().map(morphism_to_json).collect();
        for b in &basis {
            lines.push(format!("  basis element: {b}"));
        }
        j["basis"] = Value::Array(basis);
    }
    Ok(Report::ok(lines, j))
}

fn decompose_report(s: &Session, a: &str) -> Result<Report> {
    let x = s.object(a)?;
    let certified = x
        .summands()
        .iter()
        .all(|st| EndRing::new(&st.rep).radical().is_some());
    let grouped = x.grouped();
    let mut lines: Vec<String> = grouped
        .iter()
        .map(|(st, m)| format!("{} x {m}", stalk_label(st)))
        .collect();
    if !certified {
        lines.push("warning: some endomorphism radicals were not certified".into());
    }
    let parts: Vec<Value> = grouped
        .iter()
        .map(|(st, m)| json!({ "summand": stalk_to_json(st), "multiplicity": m }))
        .collect();
    Ok(Report::ok(
        lines,
        json!({ "command": "decompose", "summands": parts, "certified": certified }),
    ))
}

fn check_presilting(s: &Session, t: &str) -> Result<Report> {
    let x = s.object(t)?;
    let label = object_label(&x);
    Ok(match presilting_violation(&x) {
        None => Report::ok(
            vec![format!("presilting: {label}")],
            json!({ "command": "check-presilting", "object": object_to_json(&x), "presilting": true }),
        ),
        Some((d, dim)) => Report {
            lines: vec![format!("not presilting: Hom(T, T[{d}]) has dimension {dim}")],
            json: json!({
                "command": "check-presilting",
                "object": object_to_json(&x),
                "presilting": false,
                "violation": { "degree": d, "dimension": dim },
            }),
            ok: false,
        },
    })
}

fn check_silting(s: &Session, t: &str) -> Result<Report> {
    let x = s.object(t)?;
    let n = s.quiver.vertex_count();
    let basic = x.basic();
    let violation = presilting_violation(&x);
    let silting = is_silting(&x);
    let det = class_determinant(&basic);
    let line = if silting {
        format!("silting, {n} summands, det {det}")
    } else if let Some((d, dim)) = violation {
        format!("not silting: Hom(T, T[{d}]) has dimension {dim}")
    } else {
        format!("not silting: {} basic summands, expected {n}", basic.len())
    };
    Ok(Report {
        lines: vec![line],
        json: json!({
            "command": "check-silting",
            "object": object_to_json(&x),
            "silting": silting,
            "basic_summands": basic.len(),
            "vertices": n,
            "class_determinant": det.to_string(),
        }),
        ok: silting,
    })
}

fn mutation_report(s: &Session, mu: &Mutation, left: bool) -> Report {
    let removed = stalk_label(&mu.removed);
    let new = object_label(&mu.new_summand);
    let middle = if left {
        object_label(mu.approx.target())
    } else {
        object_label(mu.approx.source())
    };
    let triangle = if left {
        format!("{removed} -> {middle} -> {new} -> {removed}[1]")
    } else {
        format!("{new} -> {middle} -> {removed} -> ({new})[1]")
    };
    let mut lines = vec![
        format!("removed summand: {removed}"),
        format!("new summand: {new}"),
        format!("triangle: {triangle}"),
        format!("result: {}", object_label(&mu.result)),
    ];
    let mut j = json!({
        "command": "mutate",
        "direction": if left { "left" } else { "right" },
        "removed": stalk_to_json(&mu.removed),
        "new_summand": object_to_json(&mu.new_summand),
        "triangle": triangle,
        "result": object_to_json(&mu.result),
    });
    if s.verbose {
        let a = morphism_to_json(&mu.approx);
        lines.push(format!("approximation: {a}"));
        j["approximation"] = a;
    }
    Report::ok(lines, j)
}

fn ext_quiver_lines(xs: &[Stalk], q: &ExtQuiver) -> Vec<String> {
    let names = labels(xs);
    let mut lines: Vec<String> = names
        .iter()
        .enumerate()
        .map(|(i, n)| format!("vertex {}: {n}", i + 1))
        .collect();
    for (i, j, m) in q.adjacency() {
        lines.push(format!("arrow {} -> {} x {m}", names[i - 1], names[j - 1]));
    }
    lines
}

fn ext_quiver_json(xs: &[Stalk], q: &ExtQuiver) -> Value {
    let arrows: Vec<Value> = q
        .adjacency()
        .iter()
        .map(|&(i, j, m)| json!({ "from": i, "to": j, "multiplicity": m }))
        .collect();
    json!({ "vertices": labels(xs), "arrows": arrows, "acyclic": q.is_acyclic() })
}

fn complete_presmc_report(s: &Session, x: &str) -> Result<Report> {
    let xs = s.collection(x)?;
    let names = labels(&xs);
    match complete_presmc(&xs)? {
        PreSmcCompletion::NotCompletable { cycle } => {
            let line = if cycle.len() == 1 {
                format!("NotCompletable: loop at {}", names[cycle[0]])
            } else {
                let mut path: Vec<&str> = cycle.iter().map(|&i| names[i].as_str()).collect();
                path.push(&names[cycle[0]]);
                format!("NotCompletable: cycle {}", path.join(" -> "))
            };
            let cyc: Vec<&String> = cycle.iter().map(|&i| &names[i]).collect();
            Ok(Report::ok(
                vec![line],
                json!({ "command": "complete-presmc", "completable": false, "cycle": cyc }),
            ))
        }
        PreSmcCompletion::Completed(c) => {
            let mut lines = vec![
                format!("input order: {}", labels(&c.ordered_input).join(", ")),
                format!("added: {}", labels(&c.added).join(", ")),
                format!("simple-minded collection: {}", labels(&c.collection).join(", ")),
                format!("class determinant: {}", c.class_determinant),
            ];
            lines.extend(ext_quiver_lines(&c.collection, &ext_quiver(&c.collection)?));
            let added: Vec<Value> = c.added.iter().map(stalk_to_json).collect();
            let coll: Vec<Value> = c.collection.iter().map(stalk_to_json).collect();
            Ok(Report::ok(
                lines,
                json!({
                    "command": "complete-presmc",
                    "completable": true,
                    "added": added,
                    "collection": coll,
                    "ext_quiver": ext_quiver_json(&c.ordered_input, &c.ext_quiver),
                    "class_determinant": c.class_determinant.to_string(),
                }),
            ))
        }
    }
}

fn reduce_report(s: &Session, e: &str, y: &str) -> Result<Report> {
    let e = s.stalk(e)?;
    let y = s.object(y)?;
    let p = thick_perp_project(&e, &y)?;
    let mut lines = vec![
        format!(
            "triangle: {} -> {} -> {} -> ...",
            object_label(p.approx.source()),
            object_label(&y),
            object_label(&p.result)
        ),
        format!("projection: {}", object_label(&p.result)),
    ];
    let mut j = json!({
        "command": "reduce",
        "exceptional": stalk_to_json(&e),
        "object": object_to_json(&y),
        "approximation_source": object_to_json(p.approx.source()),
        "result": object_to_json(&p.result),
    });
    if s.verbose {
        let a = morphism_to_json(&p.approx);
        lines.push(format!("approximation: {a}"));
        j["approximation"] = a;
    }
    Ok(Report::ok(lines, j))
}

fn window(w: Option<Vec<i32>>) -> Result<Window> {
    match w.as_deref() {
        None => Ok(Window::default()),
        Some([a, b]) => Window::new(*a, *b),
        Some(_) => Err(Error::Parse("--window takes two integers".into())),
    }
}

fn oracle_report(s: &Session, what: OracleCommand) -> Result<Report> {
    let oracle = TypeAOracle::new(&s.quiver, s.field)?;
    let caveat = "closure is window-certified: computed within the stated window";
    let (name, w, items): (&str, Option<Window>, Vec<Value>) = match what {
        OracleCommand::EnumerateSilting { window: w } => {
            let w = window(w)?;
            let items = oracle.enumerate_silting(w).iter().map(object_to_json).collect();
            ("enumerate-silting", Some(w), items)
        }
        OracleCommand::EnumerateTilting => {
            let items = oracle
                .enumerate_tilting_modules()
                .into_iter()
                .map(|m| object_to_json(&DObject::stalk(m, 0)))
                .collect();
            ("enumerate-tilting", None, items)
        }
        OracleCommand::EnumerateSmc { window: w } => {
            let w = window(w)?;
            let items = oracle
                .enumerate_smc(w)
                .iter()
                .map(|c| Value::Array(c.iter().map(stalk_to_json).collect()))
                .collect();
            ("enumerate-smc", Some(w), items)
        }
    };
    let mut lines = Vec::new();
    if let Some(w) = w {
        lines.push(format!("window [{}, {}]; {caveat}", w.min_shift, w.max_shift));
    }
    lines.push(format!("count: {}", items.len()));
    for it in &items {
        let label = match it {
            Value::Array(a) => a.iter().filter_map(|x| x["label"].as_str()).collect::<Vec<_>>().join(", "),
            other => other["summands"]
                .as_array()
                .map(|a| a.iter().filter_map(|x| x["label"].as_str()).collect::<Vec<_>>().join(" + "))
                .unwrap_or_default(),
        };
        lines.push(format!("  {label}"));
    }
    Ok(Report::ok(
        lines,
        json!({ "command": format!("oracle {name}"), "window": w, "count": items.len(), "items": items, "caveat": caveat }),
    ))
}

fn run(cli: Cli) -> Result<Report> {
    if let Some(seed) = cli.opts.seed {
        set_fallback_seed(seed);
    }
    let s = Session::new(&cli.opts)?;
    let mut report = match cli.command {
        Command::Hom { a, b, degree } => hom_report(&s, &a, &b, degree, "hom")?,
        Command::Ext { a, b } => hom_report(&s, &a, &b, 1, "ext")?,
        Command::Decompose { a } => decompose_report(&s, &a)?,
        Command::CheckPresilting { t } => check_presilting(&s, &t)?,
        Command::CheckSilting { t } => check_silting(&s, &t)?,
        Command::Mutate { t, at, left, .. } => {
            let x = s.object(&t)?;
            let m = s.stalk(&at)?;
            let mu = if left { mutate_left(&x, &m)? } else { mutate_right(&x, &m)? };
            mutation_report(&s, &mu, left)
        }
        Command::CompletePresilting { t } => {
            let x = s.object(&t)?;
            let out = complete_presilting(&x)?;
            Report::ok(
                vec![
                    format!("silting completion: {}", object_label(&out)),
                    format!("class determinant: {}", class_determinant(&out)),
                ],
                json!({
                    "command": "complete-presilting",
                    "input": object_to_json(&x),
                    "result": object_to_json(&out),
                    "class_determinant": class_determinant(&out).to_string(),
                }),
            )
        }
        Command::SiltingToTilting { t } => {
            let x = s.object(&t)?;
            let m = silting_to_tilting(&x)?;
            let obj = DObject::stalk(m.clone(), 0);
            Report::ok(
                vec![format!("tilting module: {}", object_label(&obj))],
                json!({ "command": "silting-to-tilting", "input": object_to_json(&x), "result": object_to_json(&obj), "module": rep_to_json(&m) }),
            )
        }
        Command::Bongartz { m } => {
            let rep = s.module(&m)?;
            let n = bongartz_complete(&rep)?;
            let (mo, no) = (DObject::stalk(rep, 0), DObject::stalk(n, 0));
            Report::ok(
                vec![
                    format!("complement: {}", object_label(&no)),
                    format!("tilting module: {}", object_label(&mo.direct_sum(&no))),
                ],
                json!({ "command": "bongartz", "input": object_to_json(&mo), "complement": object_to_json(&no), "result": object_to_json(&mo.direct_sum(&no)) }),
            )
        }
        Command::ExtQuiver { x } => {
            let xs = s.collection(&x)?;
            let q = ext_quiver(&xs)?;
            let mut lines = ext_quiver_lines(&xs, &q);
            lines.push(format!("acyclic: {}", q.is_acyclic()));
            Report::ok(lines, json!({ "command": "ext-quiver", "ext_quiver": ext_quiver_json(&xs, &q) }))
        }
        Command::CheckPresmc { x } => {
            let xs = s.collection(&x)?;
            let v = pre_smc_violations(&xs);
            let ok = v.is_empty();
            let mut lines = vec![if ok {
                format!("pre-simple-minded: {}", labels(&xs).join(", "))
            } else {
                "not pre-simple-minded:".to_string()
            }];
            lines.extend(v.iter().map(|l| format!("  {l}")));
            Report {
                lines,
                json: json!({ "command": "check-presmc", "collection": labels(&xs), "pre_smc": ok, "violations": v }),
                ok,
            }
        }
        Command::CompletePresmc { x } => complete_presmc_report(&s, &x)?,
        Command::Reduce { exceptional, object } => reduce_report(&s, &exceptional, &object)?,
        Command::Oracle { what } => oracle_report(&s, what)?,
    };
    if let Value::Object(map) = &mut report.json {
        map.insert("quiver".into(), quiver_to_json(&s.quiver));
        map.insert("field".into(), json!(s.field.to_string()));
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let as_json = cli.opts.json;
    match run(cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            // Write errors (e.g. a closed pipe) are not failures of the computation.
            let _ = if as_json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report.json).expect("serializable"))
            } else {
                report.lines.iter().try_for_each(|l| writeln!(out, "{l}"))
            };
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = if matches!(e, Error::Parse(_)) { 2 } else { 1 };
            if as_json {
                println!("{}", json!({ "error": e.to_string(), "exit_code": code }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}
