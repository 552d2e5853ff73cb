//! `ips`: classify, construct and verify integral point sets over `F_q²`.

mod plot;
mod record;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use ips_core::constructions::by_name;
use ips_core::field::FieldCtx;
use ips_core::igraph::build_graph;
use ips_core::report::{compare_spectrum, worst, Comparison, Verdict};
use ips_core::search::{classify, classify_even, extension_candidates, ClassifyOptions, SearchContext, SearchError, SpectrumTable};
use ips_core::symmetry::{close_group, expected_g_order, expected_h_order, graph_aut_order, h_generators, SymmetryError, DEFAULT_IR_MAX_Q};
use record::{parse_lines, Record};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(name = "ips", version, about = "Integral point sets over finite planes F_q²")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Worker threads for the search (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Wall-clock budget; exceeding it exits with code 3 and no partial result.
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Output file (records, SVG, or edge list depending on the subcommand).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify inclusion-maximal integral sets and compare with the published row.
    Spectrum {
        #[arg(long)]
        q: u32,
        /// Largest q classified without complaint.
        #[arg(long, default_value_t = ips_core::search::DEFAULT_MAX_CLASSIFY_Q)]
        max_q: u32,
    },
    /// Graph, triple and group checks for one q.
    Verify {
        #[arg(long)]
        q: u32,
        /// Largest q handed to the refinement engine.
        #[arg(long, default_value_t = DEFAULT_IR_MAX_Q)]
        ir_max_q: u32,
        /// Largest q whose classes are checked against the direction and collinearity bounds.
        #[arg(long, default_value_t = ips_core::search::DEFAULT_MAX_CLASSIFY_Q)]
        max_q: u32,
    },
    /// Emit a named construction: circle, line or sporadic-N.
    Construct {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        kind: String,
        /// Also write the set as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Report integrality and maximality of the sets in a JSON-lines file ("-" for stdin).
    Check { file: PathBuf },
    /// Draw the first set of a JSON-lines file; SVG when --out ends in .svg, text otherwise.
    Plot { file: PathBuf },
    /// Orders and generators of the automorphism groups.
    Autgroup {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = DEFAULT_IR_MAX_Q)]
        ir_max_q: u32,
    },
    /// Edge list `u v` of the graph of integral distances.
    GraphDump {
        #[arg(long)]
        q: u32,
    },
}

enum Failure {
    Usage(String),
    Budget,
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Timeout | SearchError::Symmetry(SymmetryError::Timeout) => Failure::Budget,
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<SymmetryError> for Failure {
    fn from(e: SymmetryError) -> Self {
        SearchError::from(e).into()
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Usage(e.to_string())
            }
        }
    )*};
}
usage_from!(
    ips_core::field::FieldError,
    ips_core::igraph::GraphError,
    ips_core::plane::PlaneError,
    ips_core::constructions::ConstructionError,
    std::io::Error,
    serde_json::Error,
    String
);

type Outcome = Result<Verdict, Failure>;

#[derive(Serialize)]
struct RunReport<T: Serialize> {
    command: &'static str,
    q: u32,
    wall_seconds: f64,
    result: T,
    comparisons: Vec<Comparison>,
    verdict: Verdict,
}

struct Run {
    start: Instant,
    deadline: Option<Instant>,
    format: Format,
    out: Option<PathBuf>,
}

impl Run {
    fn report<T: Serialize>(&self, command: &'static str, q: u32, result: T, comparisons: Vec<Comparison>) -> Outcome {
        let verdict = worst(&comparisons);
        let wall_seconds = self.start.elapsed().as_secs_f64();
        match self.format {
            Format::Json => {
                let r = RunReport { command, q, wall_seconds, result, comparisons, verdict };
                writeln!(std::io::stdout(), "{}", serde_json::to_string(&r)?)?;
            }
            Format::Tsv => {
                for c in &comparisons {
                    eprintln!("{}\texpected {}\tcomputed {}\t{}\t[{}]", c.item, c.expected, c.computed, c.verdict.as_str(), c.source);
                }
                eprintln!("{command} q={q}: {} in {wall_seconds:.2}s", verdict.as_str());
            }
        }
        Ok(verdict)
    }

    fn write_out(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn field(q: u32) -> Result<FieldCtx, Failure> {
    FieldCtx::from_order(q).map_err(|e| Failure::Usage(format!("q = {q}: {e}")))
}

fn spectrum(run: &Run, q: u32, max_q: u32) -> Outcome {
    let ctx = field(q)?;
    let (table, records): (SpectrumTable, Vec<Record>) = if ctx.is_odd() {
        let sc = SearchContext::new(ctx.clone(), run.deadline)?;
        let c = classify(&sc, &ClassifyOptions { max_q, size_floor: 0, deadline: run.deadline })?;
        let records = c
            .records
            .iter()
            .map(|r| Record { stab_order: Some(r.stab_order), orbit_len: Some(r.orbit_len), ..Record::new(&ctx, &r.representative(q)) })
            .collect();
        (c.table, records)
    } else {
        let plane = ips_core::plane::PointSet::from_codes(q, 0..q * q)?;
        (classify_even(&ctx)?, vec![Record::new(&ctx, &plane)])
    };
    if let Some(path) = &run.out {
        let mut text = String::new();
        for r in &records {
            text.push_str(&serde_json::to_string(r)?);
            text.push('\n');
        }
        std::fs::write(path, text)?;
    }
    if run.format == Format::Tsv {
        println!("{q}\t{}\t{}", table.total(), table.cells());
    }
    let cmps = compare_spectrum(&table);
    #[derive(Serialize)]
    struct Summary<'a> {
        total: u64,
        rows: &'a std::collections::BTreeMap<usize, u64>,
        min_size: Option<usize>,
        max_size: Option<usize>,
    }
    let summary = Summary { total: table.total(), rows: &table.rows, min_size: table.min_size(), max_size: table.max_size() };
    run.report("spectrum", q, summary, cmps)
}

fn construct(run: &Run, q: u32, kind: &str, svg: Option<&Path>) -> Outcome {
    let ctx = field(q)?;
    let c = by_name(&ctx, kind)?;
    let graph = build_graph(&ctx)?;
    let integral = ips_core::plane::integral_set(&ctx, &c.points)?;
    let maximal = integral && extension_candidates(&graph, &c.points)?.is_empty();
    let mut rec = Record::new(&ctx, &c.points);
    if q <= 47 {
        let sc = SearchContext::new(ctx.clone(), run.deadline)?;
        let canon = sc.canonize(&c.points);
        rec.stab_order = Some(canon.stabilizer_order);
        rec.orbit_len = Some(sc.group().order() / canon.stabilizer_order);
    }
    #[derive(Serialize)]
    struct Out<'a> {
        #[serde(flatten)]
        record: &'a Record,
        kind: &'a str,
        expected_size: usize,
        integral: bool,
        maximal: bool,
    }
    let out = Out { record: &rec, kind: &c.name, expected_size: c.expected_size, integral, maximal };
    run.write_out(&(serde_json::to_string(&out)? + "\n"))?;
    if let Some(path) = svg {
        std::fs::write(path, plot::svg(&c.points))?;
    }
    let cmps = vec![
        Comparison::exact("size", "closed-form size", c.expected_size, c.points.len()),
        Comparison::exact("integral", "construction", true, integral),
    ];
    Ok(worst(&cmps))
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        Ok(std::io::read_to_string(std::io::stdin())?)
    } else {
        Ok(std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?)
    }
}

fn check(run: &Run, file: &Path) -> Outcome {
    let inputs = parse_lines(&read_input(file)?)?;
    let mut text = String::new();
    for input in inputs {
        let set = input.to_pointset()?;
        let ctx = field(input.q)?;
        let integral = ips_core::plane::integral_set(&ctx, &set)?;
        let candidates = if integral { Some(extension_candidates(&build_graph(&ctx)?, &set)?.len()) } else { None };
        let maximal = candidates == Some(0);
        match run.format {
            Format::Tsv => {
                let yn = |b: bool| if b { "yes" } else { "no" };
                text += &format!("q={} size={}\tintegral: {}\tmaximal: {}\n", input.q, set.len(), yn(integral), yn(maximal));
            }
            Format::Json => {
                #[derive(Serialize)]
                struct Out {
                    q: u32,
                    size: usize,
                    integral: bool,
                    maximal: bool,
                    extension_candidates: Option<usize>,
                }
                let out = Out { q: input.q, size: set.len(), integral, maximal, extension_candidates: candidates };
                text += &(serde_json::to_string(&out)? + "\n");
            }
        }
    }
    run.write_out(&text)?;
    Ok(Verdict::Match)
}

fn plot_cmd(run: &Run, file: &Path) -> Outcome {
    let inputs = parse_lines(&read_input(file)?)?;
    let first = inputs.first().ok_or_else(|| Failure::Usage("no point set in input".into()))?;
    let set = first.to_pointset()?;
    let svg = run.out.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "svg"));
    run.write_out(&if svg { plot::svg(&set) } else { plot::ascii(&set) })?;
    Ok(Verdict::Match)
}

fn autgroup(run: &Run, q: u32, ir_max_q: u32) -> Outcome {
    let ctx = field(q)?;
    if !ctx.is_odd() {
        return Err(Failure::Usage(format!("q = {q} is even; the graph is complete")));
    }
    let gens = h_generators(&ctx)?;
    let h = close_group(&ctx, &gens, u64::MAX)?;
    let mut cmps = vec![Comparison::exact("|H|", "published |H| formula", expected_h_order(q, ctx.r()), h.order())];
    let g_order = if q <= ir_max_q {
        let aut = graph_aut_order(&build_graph(&ctx)?, ir_max_q, run.deadline)?;
        cmps.push(Comparison::exact("|G|", "published |G| formula", expected_g_order(q, ctx.r()), aut.order));
        Some(aut.order)
    } else {
        None
    };
    if run.format == Format::Tsv {
        let g = g_order.map_or("-".to_string(), |g| g.to_string());
        println!("{q}\t{}\t{g}", h.order());
    }
    #[derive(Serialize)]
    struct Out {
        h_order: u64,
        g_order: Option<u128>,
        h_generators: Vec<ips_core::symmetry::AffMap>,
    }
    run.report("autgroup", q, Out { h_order: h.order(), g_order, h_generators: gens }, cmps)
}

fn graph_dump(run: &Run, q: u32) -> Outcome {
    let g = build_graph(&field(q)?)?;
    match &run.out {
        Some(path) => g.write_edge_list(std::io::BufWriter::new(std::fs::File::create(path)?))?,
        None => g.write_edge_list(std::io::BufWriter::new(std::io::stdout().lock()))?,
    }
    Ok(Verdict::Match)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let start = Instant::now();
    let deadline = match cli.budget_seconds {
        Some(s) if s.is_finite() && s >= 0.0 => Some(start + Duration::from_secs_f64(s)),
        Some(s) => {
            eprintln!("error: invalid budget {s}");
            return ExitCode::from(1);
        }
        None => None,
    };
    let run = Run { start, deadline, format: cli.format, out: cli.out };
    let outcome = match &cli.cmd {
        Cmd::Spectrum { q, max_q } => spectrum(&run, *q, *max_q),
        Cmd::Verify { q, ir_max_q, max_q } => verify::run(&run, *q, *ir_max_q, *max_q),
        Cmd::Construct { q, kind, svg } => construct(&run, *q, kind, svg.as_deref()),
        Cmd::Check { file } => check(&run, file),
        Cmd::Plot { file } => plot_cmd(&run, file),
        Cmd::Autgroup { q, ir_max_q } => autgroup(&run, *q, *ir_max_q),
        Cmd::GraphDump { q } => graph_dump(&run, *q),
    };
    match outcome {
        Ok(Verdict::Mismatch) => ExitCode::from(2),
        Ok(_) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Budget) => {
            eprintln!("error: time budget exhausted");
            ExitCode::from(3)
        }
    }
}
