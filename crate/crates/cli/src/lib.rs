//! `helsinki` command-line front end.
//!
//! Every subcommand produces one document: a JSON object carrying
//! `schema_version` and `command`, or an equivalent plain-text rendering.
//! Exit codes: 0 on success, 1 when a domain check fails (empty support,
//! invalid structure, a counterexample or loop failure), 2 on usage and
//! parse errors.

pub mod render;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use helsinki_core::{
    build_chain, build_h_cell, canonicalize_inputs, completion_distribution,
    consistency_of, consistency_sweep, epistemic_state, hidden_state_set, input_classes,
    loop_exclusions, loop_universality, marginal, nonlocality_witnesses, parse_binding,
    parse_scenario_document, retro_witnesses, signalling_score, solve_loop, state_table,
    Assignment, Channel, ConsistencyReport, EdgeId, Error, Flavor, HiddenState, InputTriple,
    Probability, Scenario, Solver,
};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "helsinki", version, about = "Constraint analyses for the Helsinki toy model")]
struct Cli {
    /// Output document format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Graph,
    Ascii,
}

fn flavor(s: &str) -> Result<Flavor, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn channel(s: &str) -> Result<Channel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args, Debug)]
struct Triple {
    #[arg(long, value_parser = flavor)]
    left: Flavor,
    #[arg(long, value_parser = flavor)]
    center: Flavor,
    #[arg(long, value_parser = flavor)]
    right: Flavor,
}

impl Triple {
    fn get(&self) -> InputTriple {
        InputTriple::new(self.left, self.center, self.right)
    }
}

#[derive(Args, Debug)]
struct LoopArgs {
    #[arg(long, value_parser = flavor)]
    left: Flavor,
    #[arg(long, value_parser = flavor)]
    center: Flavor,
    /// Images of A, B and C, e.g. `ACB`.
    #[arg(long, value_parser = channel)]
    channel: Channel,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Structure file (JSON).
    #[arg(long)]
    structure: Option<PathBuf>,
    /// Built-in structure: `h-cell` or `chain:K`.
    #[arg(long)]
    builder: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The state table: admissible hidden states per input class.
    Table,
    /// Hidden states compatible with the three inputs.
    Hidden(Triple),
    /// The four canonical input classes.
    Classes,
    /// Canonical form of an input triple.
    Canon(Triple),
    /// Wing-input changes that alter the admissible hidden states.
    Retro,
    /// Wing-input changes that alter the opposite wing's outputs.
    Nonlocal,
    /// Exhaustive consistency sweep over chains of h-cells.
    Consistency {
        #[arg(long)]
        max_cells: usize,
        /// Also sweep this structure, holding its embedded assignment fixed.
        #[arg(long)]
        structure: Option<PathBuf>,
    },
    /// Solutions with the left output fed back into the right input.
    Loop(LoopArgs),
    /// Every channel against every left/center input pair.
    LoopSweep,
    /// Hidden states a channel rules out.
    LoopExclusions(LoopArgs),
    /// Uniform distribution over completions of the three inputs.
    Prob {
        #[command(flatten)]
        inputs: Triple,
        /// Report only the marginal on this edge.
        #[arg(long)]
        marginal: Option<String>,
    },
    /// Dependence of an output marginal on a remote input.
    Signal {
        #[arg(long)]
        target: String,
        #[arg(long)]
        remote: String,
        #[arg(long, value_parser = flavor)]
        left: Option<Flavor>,
        #[arg(long, value_parser = flavor)]
        center: Option<Flavor>,
        #[arg(long, value_parser = flavor)]
        right: Option<Flavor>,
    },
    /// Hidden-state weights given a center input and known settings.
    Epistemic {
        #[arg(long, value_parser = flavor)]
        center: Flavor,
        #[arg(long = "l-in", value_parser = flavor)]
        l_in: Option<Flavor>,
        #[arg(long = "r-in", value_parser = flavor)]
        r_in: Option<Flavor>,
    },
    /// Enumerate admissible completions of a structure.
    Solve {
        #[command(flatten)]
        source: Source,
        /// `EDGE=FLAVOR`, repeatable.
        #[arg(long = "assign")]
        assign: Vec<String>,
        #[arg(long)]
        count_only: bool,
    },
    /// Draw a structure.
    Render {
        #[command(flatten)]
        source: Source,
        #[arg(long = "assign")]
        assign: Vec<String>,
        #[arg(long, value_enum)]
        format: RenderFormat,
    },
}

/// A successful document.
struct Doc {
    json: Value,
    text: String,
    /// Nonzero when the command ran but its check failed.
    code: i32,
}

impl Doc {
    fn ok(json: Value, text: String) -> Self {
        Doc { json, text, code: 0 }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invalid(_) | Error::EmptySupport(_) => 1,
        Error::Contract(_) | Error::Parse { .. } => 2,
    }
}

fn failure(code: i32, message: String) -> CommandResult {
    CommandResult {
        code,
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
    }
}

/// Parses `argv` (program name first) and runs the selected subcommand.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            return if code == 0 {
                CommandResult {
                    code,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                CommandResult {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    let name = command_name(&cli.command);
    match execute(cli.command) {
        Ok(doc) => {
            let stdout = match cli.output {
                OutputFormat::Json => {
                    let mut json = json!({ "schema_version": SCHEMA_VERSION, "command": name });
                    if let (Value::Object(head), Value::Object(body)) = (&mut json, doc.json) {
                        head.extend(body);
                    }
                    let mut s = serde_json::to_string_pretty(&json).expect("json values serialize");
                    s.push('\n');
                    s
                }
                OutputFormat::Text => doc.text,
            };
            CommandResult {
                code: doc.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(CliError::Core(e)) => failure(exit_code(&e), e.to_string()),
        Err(CliError::Usage(msg)) => failure(2, msg),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Table => "table",
        Command::Hidden(_) => "hidden",
        Command::Classes => "classes",
        Command::Canon(_) => "canon",
        Command::Retro => "retro",
        Command::Nonlocal => "nonlocal",
        Command::Consistency { .. } => "consistency",
        Command::Loop(_) => "loop",
        Command::LoopSweep => "loop-sweep",
        Command::LoopExclusions(_) => "loop-exclusions",
        Command::Prob { .. } => "prob",
        Command::Signal { .. } => "signal",
        Command::Epistemic { .. } => "epistemic",
        Command::Solve { .. } => "solve",
        Command::Render { .. } => "render",
    }
}

enum CliError {
    Core(Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn rat(p: Probability) -> String {
    p.to_string()
}

fn hidden_key(h: &HiddenState) -> String {
    format!("{}{}", h.left, h.right)
}

fn hidden_list(set: &BTreeSet<HiddenState>) -> Vec<String> {
    set.iter().map(hidden_key).collect()
}

fn flavor_list(set: &BTreeSet<Flavor>) -> Vec<String> {
    set.iter().map(|f| f.to_string()).collect()
}

fn braces<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn assignment_json(a: &Assignment) -> Value {
    Value::Object(a.iter().map(|(e, f)| (e.to_string(), json!(f.to_string()))).collect())
}

fn load_source(source: &Source) -> CliResult<(Scenario, Assignment)> {
    if let Some(path) = &source.structure {
        let (scenario, embedded) = load_file(path)?;
        return Ok((scenario, embedded.unwrap_or_default()));
    }
    let spec = source.builder.as_deref().unwrap_or_default();
    let scenario = if spec == "h-cell" {
        build_h_cell()
    } else if let Some(k) = spec.strip_prefix("chain:") {
        let k: usize = k
            .parse()
            .map_err(|_| CliError::Usage(format!("bad chain length in {spec:?}")))?;
        build_chain(k)?
    } else {
        return Err(CliError::Usage(format!(
            "unknown builder {spec:?} (expected h-cell or chain:K)"
        )));
    };
    Ok((scenario, Assignment::new()))
}

fn load_file(path: &PathBuf) -> CliResult<(Scenario, Option<Assignment>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_scenario_document(&text)?)
}

fn bindings(base: Assignment, assign: &[String], s: &Scenario) -> CliResult<Assignment> {
    let mut a = base;
    for b in assign {
        let (edge, f) = parse_binding(b)?;
        if s.structure.edge(edge.as_str()).is_none() {
            return Err(CliError::Usage(format!("unknown edge {edge} in --assign {b}")));
        }
        a.insert(edge, f);
    }
    Ok(a)
}

fn execute(command: Command) -> CliResult<Doc> {
    match command {
        Command::Table => Ok(table()),
        Command::Hidden(t) => Ok(hidden(t.get())),
        Command::Classes => Ok(classes()),
        Command::Canon(t) => Ok(canon(t.get())),
        Command::Retro => Ok(retro()),
        Command::Nonlocal => Ok(nonlocal()),
        Command::Consistency {
            max_cells,
            structure,
        } => consistency(max_cells, structure),
        Command::Loop(args) => Ok(loop_solutions(&args)),
        Command::LoopSweep => Ok(loop_sweep()),
        Command::LoopExclusions(args) => Ok(exclusions(&args)),
        Command::Prob { inputs, marginal } => prob(inputs.get(), marginal),
        Command::Signal {
            target,
            remote,
            left,
            center,
            right,
        } => signal(&target, &remote, left, center, right),
        Command::Epistemic { center, l_in, r_in } => Ok(epistemic(center, l_in, r_in)),
        Command::Solve {
            source,
            assign,
            count_only,
        } => solve(&source, &assign, count_only),
        Command::Render {
            source,
            assign,
            format,
        } => {
            let (scenario, base) = load_source(&source)?;
            scenario.validate().into_result()?;
            let a = bindings(base, &assign, &scenario)?;
            let format = match format {
                RenderFormat::Graph => render::Format::Graph,
                RenderFormat::Ascii => render::Format::Ascii,
            };
            let diagram = render::render(&scenario, (!a.is_empty()).then_some(&a), format);
            Ok(Doc::ok(json!({ "diagram": diagram }), diagram))
        }
    }
}

fn table() -> Doc {
    let table = state_table();
    let columns: Vec<String> = table.columns.iter().map(hidden_key).collect();
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|(t, cells)| {
            let allowed: serde_json::Map<String, Value> = columns
                .iter()
                .zip(cells)
                .map(|(c, ok)| (c.clone(), json!(ok)))
                .collect();
            json!({ "inputs": t.to_string(), "allowed": allowed })
        })
        .collect();

    let mut text = String::from("State table: admissible hidden states per input class (L_C_R)\n\n");
    let _ = write!(text, "{:<8}", "inputs");
    for h in &table.columns {
        let _ = write!(text, "  {:^4}", h.to_string());
    }
    text.push('\n');
    for (t, cells) in &table.rows {
        let _ = write!(text, "{:<8}", t.to_string());
        for ok in cells {
            let _ = write!(text, "  {:^4}", if *ok { "✓" } else { "✗" });
        }
        text.push('\n');
    }
    Doc::ok(json!({ "columns": columns, "rows": rows }), text)
}

fn hidden(t: InputTriple) -> Doc {
    let set = hidden_state_set(t);
    let text = format!(
        "{t}: {}\n",
        set.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" ")
    );
    Doc::ok(json!({ "inputs": t.to_string(), "hidden": hidden_list(&set) }), text)
}

fn classes() -> Doc {
    let classes: Vec<String> = input_classes().iter().map(|t| t.to_string()).collect();
    let text = format!("{}\n", classes.join("\n"));
    Doc::ok(json!({ "classes": classes }), text)
}

fn canon(t: InputTriple) -> Doc {
    let (c, transform) = canonicalize_inputs(t);
    let text = format!(
        "{t} -> {c} (permutation {}{})\n",
        transform.permutation,
        if transform.reflected { ", reflected" } else { "" }
    );
    Doc::ok(
        json!({
            "inputs": t.to_string(),
            "canonical": c.to_string(),
            "permutation": transform.permutation.to_string(),
            "reflected": transform.reflected,
        }),
        text,
    )
}

fn retro() -> Doc {
    let witnesses = retro_witnesses();
    let mut text = String::from("Wing-input changes that alter the admissible hidden states\n\n");
    let items: Vec<Value> = witnesses
        .iter()
        .map(|w| {
            let _ = writeln!(
                text,
                "{} {}->{}: lost {} gained {}",
                w.base,
                w.changed_input,
                w.new_value,
                braces(&w.lost_hidden),
                braces(&w.gained_hidden)
            );
            json!({
                "base": w.base.to_string(),
                "changed_input": w.changed_input.to_string(),
                "new_value": w.new_value.to_string(),
                "lost_hidden": hidden_list(&w.lost_hidden),
                "gained_hidden": hidden_list(&w.gained_hidden),
            })
        })
        .collect();
    Doc::ok(json!({ "witnesses": items }), text)
}

fn nonlocal() -> Doc {
    let witnesses = nonlocality_witnesses();
    let mut text = String::from("Wing-input changes that alter the opposite wing's admissible outputs\n\n");
    let items: Vec<Value> = witnesses
        .iter()
        .map(|w| {
            let _ = writeln!(
                text,
                "{} {}->{}: {} {} -> {}",
                w.base,
                w.changed_input,
                w.new_value,
                w.remote_output,
                braces(&w.before),
                braces(&w.after)
            );
            json!({
                "base": w.base.to_string(),
                "changed_input": w.changed_input.to_string(),
                "new_value": w.new_value.to_string(),
                "remote_output": w.remote_output.to_string(),
                "before": flavor_list(&w.before),
                "after": flavor_list(&w.after),
            })
        })
        .collect();
    Doc::ok(json!({ "witnesses": items }), text)
}

fn report_json(r: &ConsistencyReport) -> Value {
    json!({
        "family": r.family,
        "max_cells": r.max_cells,
        "checked": r.checked,
        "counterexample": r.counterexample.as_ref().map(|c| json!({
            "inputs": assignment_json(&c.inputs),
            "structure": serde_json::from_str::<Value>(&helsinki_core::serialize_scenario(&c.scenario))
                .expect("serialized scenario is json"),
        })),
    })
}

fn report_text(r: &ConsistencyReport) -> String {
    match &r.counterexample {
        None => format!(
            "{}: {} intervention assignments checked, no counterexample\n",
            r.family, r.checked
        ),
        Some(c) => format!(
            "{}: counterexample after {} assignments: {}\n",
            r.family,
            r.checked,
            helsinki_core::assignment::display_assignment(&c.inputs)
        ),
    }
}

fn consistency(max_cells: usize, structure: Option<PathBuf>) -> CliResult<Doc> {
    if max_cells == 0 {
        return Err(CliError::Usage("--max-cells must be at least 1".into()));
    }
    let mut reports = vec![consistency_sweep(max_cells)?];
    if let Some(path) = structure {
        let (scenario, embedded) = load_file(&path)?;
        reports.push(consistency_of(
            format!("file {}", path.display()),
            &scenario,
            &embedded.unwrap_or_default(),
        )?);
    }
    let code = if reports.iter().all(ConsistencyReport::is_consistent) { 0 } else { 1 };
    let text: String = reports.iter().map(report_text).collect();
    let json = json!({ "reports": reports.iter().map(report_json).collect::<Vec<_>>() });
    Ok(Doc { json, text, code })
}

fn loop_solutions(args: &LoopArgs) -> Doc {
    let solutions = solve_loop(args.left, args.center, &args.channel);
    let mut text = format!(
        "left {} center {} channel {}: {} solution(s)\n",
        args.left,
        args.center,
        args.channel,
        solutions.len()
    );
    let items: Vec<Value> = solutions
        .iter()
        .map(|s| {
            let _ = writeln!(
                text,
                "  hidden {}  l_out {}  r_in {}  r_out {}",
                s.hidden, s.left_out, s.right_in, s.right_out
            );
            json!({
                "hidden": hidden_key(&s.hidden),
                "left_out": s.left_out.to_string(),
                "right_in": s.right_in.to_string(),
                "right_out": s.right_out.to_string(),
            })
        })
        .collect();
    Doc::ok(
        json!({
            "left": args.left.to_string(),
            "center": args.center.to_string(),
            "channel": args.channel.to_string(),
            "solutions": items,
        }),
        text,
    )
}

fn loop_sweep() -> Doc {
    let report = loop_universality();
    let case = |c: &helsinki_core::loops::LoopCase| {
        json!({
            "channel": c.channel.to_string(),
            "left": c.left_in.to_string(),
            "center": c.center_in.to_string(),
            "solutions": c.solutions,
        })
    };
    let min = report.cases.iter().map(|c| c.solutions).min().unwrap_or(0);
    let mut text = format!(
        "{} cases, {} failure(s), fewest solutions in any case: {min}\n",
        report.total,
        report.failures.len()
    );
    for f in &report.failures {
        let _ = writeln!(text, "  no solution: channel {} left {} center {}", f.channel, f.left_in, f.center_in);
    }
    Doc {
        json: json!({
            "total": report.total,
            "failures": report.failures.iter().map(case).collect::<Vec<_>>(),
            "cases": report.cases.iter().map(case).collect::<Vec<_>>(),
        }),
        text,
        code: if report.failures.is_empty() { 0 } else { 1 },
    }
}

fn exclusions(args: &LoopArgs) -> Doc {
    let ex = loop_exclusions(args.left, args.center, &args.channel);
    let text = format!(
        "left {} center {} channel {}: excludes {}\n",
        args.left,
        args.center,
        args.channel,
        braces(&ex)
    );
    Doc::ok(
        json!({
            "left": args.left.to_string(),
            "center": args.center.to_string(),
            "channel": args.channel.to_string(),
            "excluded": hidden_list(&ex),
        }),
        text,
    )
}

const MEASURE_NOTE: &str = "uniform over admissible completions";

fn distribution_text(d: &helsinki_core::FlavorDistribution) -> String {
    Flavor::ALL
        .iter()
        .map(|f| format!("{f}:{}", rat(d.get(*f))))
        .collect::<Vec<_>>()
        .join(" ")
}

fn distribution_json(d: &helsinki_core::FlavorDistribution) -> Value {
    Value::Object(
        Flavor::ALL
            .iter()
            .map(|f| (f.to_string(), json!(rat(d.get(*f)))))
            .collect(),
    )
}

fn prob(t: InputTriple, edge: Option<String>) -> CliResult<Doc> {
    let cell = build_h_cell();
    let d = completion_distribution(&cell, &t.to_assignment())?;
    if let Some(edge) = edge {
        let e = EdgeId::new(edge);
        if cell.structure.edge(e.as_str()).is_none() {
            return Err(CliError::Usage(format!("unknown edge {e}")));
        }
        let m = marginal(&d, &e)?;
        let text = format!("{t} marginal on {e} ({MEASURE_NOTE}): {}\n", distribution_text(&m));
        return Ok(Doc::ok(
            json!({
                "measure": MEASURE_NOTE,
                "inputs": t.to_string(),
                "edge": e.to_string(),
                "marginal": distribution_json(&m),
            }),
            text,
        ));
    }
    let mut text = format!("{t} ({MEASURE_NOTE}): {} atom(s)\n", d.support.len());
    let atoms: Vec<Value> = d
        .support
        .iter()
        .map(|(a, w)| {
            let _ = writeln!(
                text,
                "  {}  hidden {}  l_out {}  r_out {}",
                rat(*w),
                analysis_hidden(a),
                a[&EdgeId::from("l_out")],
                a[&EdgeId::from("r_out")]
            );
            json!({ "assignment": assignment_json(a), "probability": rat(*w) })
        })
        .collect();
    Ok(Doc::ok(
        json!({ "measure": MEASURE_NOTE, "inputs": t.to_string(), "support": atoms }),
        text,
    ))
}

fn analysis_hidden(a: &Assignment) -> HiddenState {
    HiddenState::new(a[&EdgeId::from("h_left")], a[&EdgeId::from("h_right")])
}

fn signal(
    target: &str,
    remote: &str,
    left: Option<Flavor>,
    center: Option<Flavor>,
    right: Option<Flavor>,
) -> CliResult<Doc> {
    let cell = build_h_cell();
    let context: Assignment = [("l_in", left), ("c_in", center), ("r_in", right)]
        .into_iter()
        .filter(|(e, _)| *e != remote)
        .filter_map(|(e, f)| f.map(|f| (EdgeId::from(e), f)))
        .collect();
    let score = signalling_score(&cell, &EdgeId::from(target), &EdgeId::from(remote), &context)?;
    let text = format!(
        "signalling score of {remote} on {target} given {} ({MEASURE_NOTE}): {}\n",
        helsinki_core::assignment::display_assignment(&context),
        rat(score)
    );
    Ok(Doc::ok(
        json!({
            "measure": MEASURE_NOTE,
            "target": target,
            "remote": remote,
            "context": assignment_json(&context),
            "score": rat(score),
        }),
        text,
    ))
}

fn epistemic(center: Flavor, l_in: Option<Flavor>, r_in: Option<Flavor>) -> Doc {
    let state = epistemic_state(center, l_in, r_in);
    let known = |f: Option<Flavor>| f.map_or("?".to_string(), |f| f.to_string());
    let mut text = format!(
        "center {center}, l_in {}, r_in {} (settings weighted uniformly)\n",
        known(l_in),
        known(r_in)
    );
    for (h, w) in &state.weights {
        let _ = writeln!(text, "  {h}: {}", rat(*w));
    }
    let weights: serde_json::Map<String, Value> = state
        .weights
        .iter()
        .map(|(h, w)| (hidden_key(h), json!(rat(*w))))
        .collect();
    Doc::ok(
        json!({
            "center": center.to_string(),
            "l_in": l_in.map(|f| f.to_string()),
            "r_in": r_in.map(|f| f.to_string()),
            "weights": weights,
        }),
        text,
    )
}

fn solve(source: &Source, assign: &[String], count_only: bool) -> CliResult<Doc> {
    let (scenario, base) = load_source(source)?;
    let partial = bindings(base, assign, &scenario)?;
    let solver = Solver::new(&scenario.structure)?;
    if count_only {
        let n = solver.count(&partial)?;
        return Ok(Doc::ok(
            json!({ "partial": assignment_json(&partial), "count": n }),
            format!("{n}\n"),
        ));
    }
    let result = solver.complete(&partial)?;
    let mut text = format!("{} solution(s)\n", result.solutions.len());
    for a in &result.solutions {
        let _ = writeln!(text, "  {}", helsinki_core::assignment::display_assignment(a));
    }
    Ok(Doc::ok(
        json!({
            "partial": assignment_json(&partial),
            "count": result.solutions.len(),
            "explored": result.explored,
            "solutions": result.solutions.iter().map(assignment_json).collect::<Vec<_>>(),
        }),
        text,
    ))
}
