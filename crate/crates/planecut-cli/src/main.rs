//! Batch front-end: parse an instance, run one of the library
//! pipelines, print a single JSON object on stdout.
//!
//! Exit codes: 0 success, 2 infeasible, 3 unbounded or not pointed,
//! 4 parse or input error, 5 internal invariant violation.

use clap::{Args, Parser, Subcommand};
use planecut::closure::{
    chvatal_closure, split_closure, split_rank_check, SplitRank, DEFAULT_DEPTH,
};
use planecut::geom::{Int, IntVec, Rat};
use planecut::hull::polyhedron_hull;
use planecut::instance::{parse, InstanceFile};
use planecut::oracle::{
    brute_chvatal_closure, brute_ip, brute_split_closure, lattice_points, verify_divergence,
    IpOutcome, Window,
};
use planecut::poly::{Polyhedron, Shape};
use planecut::solver::{solve, Caps, CutKind, IterationRecord, SolveError, SolveOutcome, SolveTrace};
use planecut::HalfPlane;
use serde_json::{Map, Value};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "planecut", version, about = "Exact 2D integer programming toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the cutting-plane solver on an instance.
    Solve(InstanceArgs),
    /// Print the integer hull of the feasible region.
    Hull(InstanceArgs),
    /// Print the Chvatal closure of the feasible region.
    Chvatal(InstanceArgs),
    /// Print the split closure of the feasible region.
    SplitClosure(InstanceArgs),
    /// Report the split rank of the feasible region (0, 1 or 2).
    Rank(InstanceArgs),
    /// Replay the divergent best-cut recurrence and report each step.
    Divergence(DivergenceArgs),
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance file: `maximize c1 c2`, `subject`, rows `a1 a2 b`.
    file: PathBuf,
    /// Include the per-iteration trace in the JSON output.
    #[arg(long)]
    trace: bool,
    /// Write an SVG rendering of the solve trace to this path.
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Cross-check the result against the enumeration oracle.
    #[arg(long)]
    check: bool,
    /// Enumeration window half-width for --check (default: derived).
    #[arg(long = "box", value_name = "N", value_parser = clap::value_parser!(i64).range(1..=100_000))]
    box_size: Option<i64>,
    /// Split/cut normal bound for --check (default: twice the row norm).
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(i64).range(1..=10_000))]
    norm_bound: Option<i64>,
    /// Separation search depth for closure commands.
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u32).range(1..=1_000_000))]
    depth: Option<u32>,
    /// Iteration cap constant for the solver.
    #[arg(long, value_name = "K", value_parser = clap::value_parser!(u32).range(1..))]
    cap_constant: Option<u32>,
}

#[derive(Args)]
struct DivergenceArgs {
    /// Number of recurrence steps to replay.
    #[arg(long, value_name = "N", default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=60))]
    steps: u32,
    /// Include per-step detail in the JSON output.
    #[arg(long)]
    trace: bool,
}

fn int_json(z: &Int) -> Value {
    use num::ToPrimitive;
    match z.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(z.to_string()),
    }
}

fn rat_json(r: &Rat) -> Value {
    Value::from(r.to_string())
}

fn row_json(row: &HalfPlane) -> Value {
    Value::from(vec![int_json(&row.a.x), int_json(&row.a.y), int_json(&row.b)])
}

fn rows_json(p: &Polyhedron) -> Value {
    Value::from(p.rows().iter().map(row_json).collect::<Vec<_>>())
}

struct Output {
    map: Map<String, Value>,
}

impl Output {
    fn new(status: &str) -> Output {
        let mut map = Map::new();
        map.insert("schema".into(), Value::from(1));
        map.insert("status".into(), Value::from(status));
        Output { map }
    }

    fn set(mut self, key: &str, value: Value) -> Output {
        self.map.insert(key.into(), value);
        self
    }

    fn emit(self, code: i32) -> i32 {
        println!("{}", Value::Object(self.map));
        code
    }
}

fn load(args: &InstanceArgs) -> Result<(InstanceFile, Polyhedron), i32> {
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            let msg = format!("cannot read {}: {e}", args.file.display());
            return Err(Output::new("error").set("message", Value::from(msg)).emit(4));
        }
    };
    match parse(&text) {
        Ok(f) => {
            let p = f.polyhedron();
            Ok((f, p))
        }
        Err(e) => Err(Output::new("parse-error")
            .set("line", Value::from(e.line))
            .set("column", Value::from(e.column))
            .set("message", Value::from(e.message))
            .emit(4)),
    }
}

fn window_for(p: &Polyhedron, args: &InstanceArgs) -> Window {
    match args.box_size {
        Some(n) => Window::new(IntVec::new(-n, -n), IntVec::new(n, n)),
        None => Window::around(p),
    }
}

fn norm_bound_for(p: &Polyhedron, args: &InstanceArgs) -> Int {
    use num::One;
    match args.norm_bound {
        Some(n) => Int::from(n),
        None => {
            let norm = p
                .rows()
                .iter()
                .map(|r| r.a.norm_inf())
                .max()
                .unwrap_or_else(Int::one);
            Int::from(2) * norm.max(Int::one())
        }
    }
}

fn kind_json(kind: CutKind) -> Value {
    Value::from(match kind {
        CutKind::Strengthening => "strengthening",
        CutKind::ChvatalTilt => "chvatal-tilt",
        CutKind::SplitTilt => "split-tilt",
    })
}

fn record_json(rec: &IterationRecord) -> Value {
    let mut m = Map::new();
    m.insert("row_count".into(), Value::from(rec.row_count));
    m.insert(
        "vertex".into(),
        Value::from(vec![rat_json(&rec.vertex.x), rat_json(&rec.vertex.y)]),
    );
    m.insert("kind".into(), kind_json(rec.kind));
    m.insert("cut".into(), row_json(&rec.cut));
    m.insert(
        "family".into(),
        rec.family.map_or(Value::Null, Value::from),
    );
    m.insert("potential_early".into(), Value::from(rec.potential_early));
    m.insert("live_families".into(), Value::from(rec.live_families));
    Value::Object(m)
}

fn trace_json(trace: &SolveTrace) -> Value {
    Value::from(trace.records.iter().map(record_json).collect::<Vec<_>>())
}

fn write_svg(path: &PathBuf, p: &Polyhedron, trace: &SolveTrace) -> Result<(), i32> {
    let svg = planecut::svg::render_trace(p, trace);
    std::fs::write(path, svg).map_err(|e| {
        let msg = format!("cannot write {}: {e}", path.display());
        Output::new("error").set("message", Value::from(msg)).emit(4)
    })
}

fn run_solve(args: &InstanceArgs) -> i32 {
    let (f, p) = match load(args) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let caps = Caps { constant: args.cap_constant.unwrap_or(Caps::default().constant) };
    match solve(&p, &f.objective, &caps) {
        Ok(solved) => {
            if let Some(path) = &args.svg {
                if let Err(code) = write_svg(path, &p, &solved.trace) {
                    return code;
                }
            }
            match solved.outcome {
                SolveOutcome::Optimal { point, value } => {
                    let mut out = Output::new("optimal")
                        .set("point", Value::from(vec![int_json(&point.x), int_json(&point.y)]))
                        .set("value", int_json(&value))
                        .set("cuts", Value::from(solved.trace.records.len()));
                    if args.trace {
                        out = out.set("trace", trace_json(&solved.trace));
                    }
                    if args.check {
                        let brute = brute_ip(&p, &f.objective, &window_for(&p, args));
                        let agrees = matches!(
                            &brute,
                            IpOutcome::Optimal { value: bv, .. } if *bv == value
                        );
                        out = out.set("check", Value::from(if agrees { "match" } else { "mismatch" }));
                        if !agrees {
                            return out.emit(5);
                        }
                    }
                    out.emit(0)
                }
                SolveOutcome::Infeasible => {
                    let mut out = Output::new("infeasible");
                    if args.trace {
                        out = out.set("trace", trace_json(&solved.trace));
                    }
                    if args.check {
                        let agrees = p.is_empty()
                            || brute_ip(&p, &f.objective, &window_for(&p, args)) == IpOutcome::Infeasible;
                        out = out.set("check", Value::from(if agrees { "match" } else { "mismatch" }));
                        if !agrees {
                            return out.emit(5);
                        }
                    }
                    out.emit(2)
                }
            }
        }
        Err(SolveError::Unbounded) => Output::new("unbounded").emit(3),
        Err(SolveError::NotPointed) => Output::new("not-pointed").emit(3),
        Err(SolveError::CapExceeded) => Output::new("cap-exceeded").emit(5),
    }
}

fn run_hull(args: &InstanceArgs) -> i32 {
    let (_, p) = match load(args) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let hull = polyhedron_hull(&p);
    let mut out = Output::new("ok").set("rows", rows_json(&hull));
    if args.check {
        let ok = hull_check(&p, &hull, args);
        out = out.set("oracle", Value::from(if ok { "match" } else { "mismatch" }));
        if !ok {
            return out.emit(5);
        }
    }
    out.emit(0)
}

/// Lattice points of p in the window satisfy every hull row, and hull
/// vertices are integral points of p.
fn hull_check(p: &Polyhedron, hull: &Polyhedron, args: &InstanceArgs) -> bool {
    let vertices_ok = hull.points().iter().all(|v| {
        v.is_integral() && p.contains(v)
    });
    if !vertices_ok {
        return false;
    }
    if p.is_empty() || p.shape() == Shape::Plane {
        return hull.is_empty() == lattice_free(p);
    }
    let w = window_for(p, args);
    lattice_points(p, &w).iter().all(|z| hull.contains(&z.to_point()))
}

fn lattice_free(p: &Polyhedron) -> bool {
    if p.is_empty() {
        return true;
    }
    // A plane always has lattice points.
    false
}

fn run_chvatal(args: &InstanceArgs) -> i32 {
    let (_, p) = match load(args) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let res = chvatal_closure(&p, args.depth.unwrap_or(DEFAULT_DEPTH));
    let mut out = Output::new("ok")
        .set("rows", rows_json(&res.closure))
        .set("approximate", Value::from(res.approximate));
    if args.check {
        let brute = brute_chvatal_closure(&p, &norm_bound_for(&p, args));
        let ok = res.closure.same_set(&brute);
        out = out.set("oracle", Value::from(if ok { "match" } else { "mismatch" }));
        if !ok {
            return out.emit(5);
        }
    }
    out.emit(0)
}

fn run_split_closure(args: &InstanceArgs) -> i32 {
    let (_, p) = match load(args) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let res = split_closure(&p);
    let mut out = Output::new("ok")
        .set("rows", rows_json(&res.closure))
        .set("approximate", Value::from(res.approximate));
    if args.check {
        let brute = brute_split_closure(&p, &norm_bound_for(&p, args));
        let ok = res.closure.same_set(&brute);
        out = out.set("oracle", Value::from(if ok { "match" } else { "mismatch" }));
        if !ok {
            return out.emit(5);
        }
    }
    out.emit(0)
}

fn run_rank(args: &InstanceArgs) -> i32 {
    let (_, p) = match load(args) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let report = split_rank_check(&p);
    let rank = match report.rank {
        SplitRank::Integral => 0,
        SplitRank::One => 1,
        SplitRank::Two => 2,
        SplitRank::Failure => {
            return Output::new("rank-failure")
                .set("approximate", Value::from(report.approximate))
                .emit(5);
        }
    };
    let mut out = Output::new("ok")
        .set("rank", Value::from(rank))
        .set("approximate", Value::from(report.approximate));
    if let Some(flag) = report.cone_chvatal_recovers_hull {
        out = out.set("cone_chvatal_recovers_hull", Value::from(flag));
    }
    out.emit(0)
}

fn run_divergence(args: &DivergenceArgs) -> i32 {
    let report = verify_divergence(args.steps);
    let ok = report.all_ok();
    let mut out = Output::new(if ok { "reproduced" } else { "failed" })
        .set("steps", Value::from(args.steps));
    if args.trace || !ok {
        let detail: Vec<Value> = report
            .steps
            .iter()
            .map(|s| {
                let mut m = Map::new();
                m.insert("index".into(), Value::from(s.index));
                m.insert("cut".into(), row_json(&s.cut));
                m.insert("recurrence".into(), Value::from(s.cut_matches_recurrence));
                m.insert("reaches_next".into(), Value::from(s.reaches_next_instance));
                m.insert("solver".into(), Value::from(s.solver_finds_optimum));
                Value::Object(m)
            })
            .collect();
        out = out.set("detail", Value::from(detail));
    }
    out.emit(if ok { 0 } else { 5 })
}

fn dispatch(cli: &Cli) -> i32 {
    match &cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Hull(a) => run_hull(a),
        Command::Chvatal(a) => run_chvatal(a),
        Command::SplitClosure(a) => run_split_closure(a),
        Command::Rank(a) => run_rank(a),
        Command::Divergence(a) => run_divergence(a),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 4,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match catch_unwind(AssertUnwindSafe(|| dispatch(&cli))) {
        Ok(code) => code,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal invariant violation".to_string());
            Output::new("panic").set("message", Value::from(msg)).emit(5)
        }
    };
    std::process::exit(code);
}
