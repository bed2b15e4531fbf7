//! `chorddom` command-line tool.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use chorddom::oracles::{random_digraph, DEFAULT_DOMINATION_CAP};
use chorddom::reduction::{parse_names, serialize_names};
use chorddom::{
    build_adjacency, build_reduction, ham_path_from_pds, is_dominating_set, is_hamiltonian_path,
    is_paired_dominating_set, min_dominating_set_bruteforce, min_paired_dominating_set_bruteforce,
    parse_model, pds_from_ham_path, random_polygon_model, serialize_model, solve_min_ds_polygon,
    solve_min_pds_polygon, validate_reduction, Digraph, ReductionArtifact, SolverOptions,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use report::{Format, Report};

#[derive(Parser)]
#[command(
    name = "chorddom",
    version,
    about = "Domination and paired domination on chord models"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for generators and benchmarks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for the polygon solvers.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Largest instance the brute-force oracles accept.
    #[arg(long, global = true, default_value_t = DEFAULT_DOMINATION_CAP)]
    oracle_cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum dominating or paired-dominating set of a model file.
    Solve {
        #[arg(value_enum)]
        kind: Kind,
        /// `poly v1` or `circle v1` file.
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Engine::Polygon)]
        engine: Engine,
    },
    /// Builds the circle model of a Hamiltonian path instance.
    Reduce {
        /// `digraph v1` file.
        input: PathBuf,
        /// Output prefix; writes `<out>.circle`, `<out>.names` and `<out>.digraph`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Converts witnesses between a digraph and its reduced model.
    Witness {
        #[arg(value_enum)]
        direction: Direction,
        /// Prefix given to `reduce --out`.
        #[arg(long)]
        artifact: PathBuf,
        /// Path file (vertex ids) for `to-pds`, set file (chord ids) for `to-path`.
        witness: PathBuf,
        /// Writes the converted witness here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks files and solutions.
    Validate {
        #[command(subcommand)]
        target: ValidateTarget,
    },
    /// Generates seeded random instances.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Runs the polygon solver over a seeded grid and writes a CSV.
    Bench(BenchArgs),
}

#[derive(Subcommand)]
enum ValidateTarget {
    /// Parses a model file; with `--set`, checks a chord set against it.
    Model {
        input: PathBuf,
        #[arg(long)]
        set: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Kind::Pds)]
        kind: Kind,
    },
    /// Parses a digraph file.
    Digraph { input: PathBuf },
    /// Runs the structural checks on a reduction artifact.
    Reduction { artifact: PathBuf },
}

#[derive(Subcommand)]
enum GenKind {
    Polygon {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Digraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated side counts.
    #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "3,4")]
    k: Vec<usize>,
    /// Comma-separated chord counts.
    #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "4,8,12")]
    m: Vec<usize>,
    /// Models per grid point.
    #[arg(long, default_value_t = 3)]
    samples: u64,
    #[arg(long, value_enum, default_value_t = Kind::Pds)]
    kind: Kind,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also writes a plot of candidates against m.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Kind {
    Ds,
    Pds,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Engine {
    Polygon,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Direction {
    ToPds,
    ToPath,
}

/// Failure before a report could be produced.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<Option<Report>, InputError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Solve {
            kind,
            input,
            engine,
        } => solve(&cli.global, *kind, input, *engine),
        Command::Reduce { input, out } => reduce(input, out),
        Command::Witness {
            direction,
            artifact,
            witness,
            out,
        } => witness_cmd(*direction, artifact, witness, out.as_deref()),
        Command::Validate { target } => validate(target),
        Command::Gen { kind } => generate(&cli.global, kind),
        Command::Bench(args) => bench(&cli.global, args),
    };
    match result {
        Ok(Some(mut report)) => {
            report.command = argv;
            report.duration_ms = start.elapsed().as_secs_f64() * 1000.0;
            print!("{}", report.render(cli.global.format));
            ExitCode::from(report.exit_code())
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_with_context<T, E: std::fmt::Display>(
    path: &Path,
    parse: impl Fn(&str) -> Result<T, E>,
) -> Result<(T, String), InputError> {
    let text = read(path)?;
    let value = parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok((value, text))
}

fn write(path: &Path, text: &str) -> Result<(), InputError> {
    fs::write(path, text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Whitespace- or comma-separated unsigned integers; `#` starts a comment line.
fn parse_ids(text: &str) -> Result<Vec<usize>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
        .flat_map(|(i, l)| {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(move |t| {
                    t.parse::<usize>()
                        .map_err(|_| format!("line {}: invalid integer `{t}`", i + 1))
                })
        })
        .collect()
}

fn join_ids(ids: &[usize]) -> String {
    let parts: Vec<String> = ids.iter().map(usize::to_string).collect();
    parts.join(" ") + "\n"
}

fn artifact_paths(prefix: &Path) -> [PathBuf; 3] {
    let with = |ext: &str| {
        let mut s = prefix.as_os_str().to_owned();
        s.push(ext);
        PathBuf::from(s)
    };
    [with(".digraph"), with(".circle"), with(".names")]
}

fn load_artifact(prefix: &Path) -> Result<(ReductionArtifact, Vec<String>), InputError> {
    let [dp, mp, np] = artifact_paths(prefix);
    let (digraph, dt) = read_with_context(&dp, Digraph::parse)?;
    let (model, mt) = read_with_context(&mp, parse_model)?;
    let (names, nt) = read_with_context(&np, parse_names)?;
    if names.len() != model.m() {
        return Err(InputError(format!(
            "{}: {} names for {} chords",
            np.display(),
            names.len(),
            model.m()
        )));
    }
    Ok((
        ReductionArtifact::from_parts(digraph, model, names),
        vec![dt, mt, nt],
    ))
}

fn solve(global: &Global, kind: Kind, input: &Path, engine: Engine) -> CmdResult {
    let (model, text) = read_with_context(input, parse_model)?;
    let g = build_adjacency(&model);
    let mut report = Report::new(&[&text]);
    let set = match engine {
        Engine::Polygon => {
            if !model.has_sides() {
                return Err(InputError(format!(
                    "{}: the polygon engine needs a `poly v1` model",
                    input.display()
                )));
            }
            let opts = SolverOptions {
                jobs: global.jobs.max(1),
                ..SolverOptions::default()
            };
            let sol = match kind {
                Kind::Ds => solve_min_ds_polygon(&model, &opts)?,
                Kind::Pds => solve_min_pds_polygon(&model, &opts)?,
            };
            report.detail("candidates", json!(sol.candidates));
            sol.set
        }
        Engine::Oracle => match kind {
            Kind::Ds => Some(min_dominating_set_bruteforce(&g, global.oracle_cap)?),
            Kind::Pds => min_paired_dominating_set_bruteforce(&g, global.oracle_cap)?,
        },
    };
    report.detail("chords", json!(model.m()));
    match set {
        Some(set) => {
            let ok = match kind {
                Kind::Ds => is_dominating_set(&g, &set),
                Kind::Pds => is_paired_dominating_set(&g, &set),
            };
            report.verdict(
                if kind == Kind::Ds {
                    "dominating"
                } else {
                    "paired_dominating"
                },
                ok,
            );
            report.set_solution(set);
        }
        None => {
            report.feasible = false;
            report.detail("reason", json!("an isolated chord has no partner"));
        }
    }
    Ok(Some(report))
}

fn reduce(input: &Path, out: &Path) -> CmdResult {
    let (digraph, text) = read_with_context(input, Digraph::parse)?;
    let art = build_reduction(&digraph)?;
    let [dp, mp, np] = artifact_paths(out);
    write(&dp, &digraph.serialize())?;
    write(&mp, &serialize_model(art.model()))?;
    write(&np, &serialize_names(&art))?;
    let violations = validate_reduction(&art);
    let mut report = Report::new(&[&text]);
    report.detail("vertices", json!(digraph.n()));
    report.detail("edges", json!(digraph.m()));
    report.detail("chord_count", json!(art.model().m()));
    report.detail("target_size", json!(art.target_size()));
    report.detail(
        "files",
        json!([
            dp.display().to_string(),
            mp.display().to_string(),
            np.display().to_string()
        ]),
    );
    report.detail(
        "violations",
        json!(violations
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()),
    );
    report.verdict("validation", violations.is_empty());
    Ok(Some(report))
}

fn witness_cmd(
    direction: Direction,
    prefix: &Path,
    witness: &Path,
    out: Option<&Path>,
) -> CmdResult {
    let (art, mut texts) = load_artifact(prefix)?;
    let wtext = read(witness)?;
    let ids = parse_ids(&wtext).map_err(|e| InputError(format!("{}: {e}", witness.display())))?;
    texts.push(wtext);
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    let mut report = Report::new(&refs);
    report.detail("target_size", json!(art.target_size()));
    match direction {
        Direction::ToPds => match pds_from_ham_path(&art, &ids) {
            Ok(set) => {
                report.verdict(
                    "paired_dominating",
                    is_paired_dominating_set(&art.graph(), &set),
                );
                report.verdict("target_size", set.len() == art.target_size());
                let names: Vec<String> = set.iter().map(|&c| art.name(c).to_string()).collect();
                report.detail("names", json!(names));
                if let Some(out) = out {
                    write(out, &join_ids(&set))?;
                }
                report.set_solution(set);
            }
            Err(e) => report.fail(e.to_string()),
        },
        Direction::ToPath => match ham_path_from_pds(&art, &ids) {
            Ok(path) => {
                report.verdict(
                    "hamiltonian_path",
                    is_hamiltonian_path(art.digraph(), &path),
                );
                report.detail("path", json!(path));
                if let Some(out) = out {
                    write(out, &join_ids(&path))?;
                }
                report.set_solution(path);
            }
            Err(e) => report.fail(e.to_string()),
        },
    }
    Ok(Some(report))
}

fn validate(target: &ValidateTarget) -> CmdResult {
    match target {
        ValidateTarget::Model { input, set, kind } => {
            let (model, text) = read_with_context(input, parse_model)?;
            let mut texts = vec![text];
            let set_ids = match set {
                Some(p) => {
                    let t = read(p)?;
                    let ids =
                        parse_ids(&t).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
                    texts.push(t);
                    Some(ids)
                }
                None => None,
            };
            let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
            let mut report = Report::new(&refs);
            report.verdict("parse", true);
            report.detail("chords", json!(model.m()));
            report.detail("sides", json!(model.k()));
            report.detail("edges", json!(build_adjacency(&model).edge_count()));
            if let Some(ids) = set_ids {
                if let Some(&bad) = ids.iter().find(|&&c| c >= model.m()) {
                    return Err(InputError(format!("chord id {bad} out of range")));
                }
                let g = build_adjacency(&model);
                let (name, ok) = match kind {
                    Kind::Ds => ("dominating", is_dominating_set(&g, &ids)),
                    Kind::Pds => ("paired_dominating", is_paired_dominating_set(&g, &ids)),
                };
                report.verdict(name, ok);
                report.set_solution(ids);
            }
            Ok(Some(report))
        }
        ValidateTarget::Digraph { input } => {
            let (d, text) = read_with_context(input, Digraph::parse)?;
            let mut report = Report::new(&[&text]);
            report.verdict("parse", true);
            report.detail("vertices", json!(d.n()));
            report.detail("edges", json!(d.m()));
            Ok(Some(report))
        }
        ValidateTarget::Reduction { artifact } => {
            let (art, texts) = load_artifact(artifact)?;
            let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
            let violations = validate_reduction(&art);
            let mut report = Report::new(&refs);
            report.detail("chord_count", json!(art.model().m()));
            report.detail(
                "violations",
                json!(violations
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()),
            );
            report.verdict("validation", violations.is_empty());
            Ok(Some(report))
        }
    }
}

fn generate(global: &Global, kind: &GenKind) -> CmdResult {
    let (text, out) = match kind {
        GenKind::Polygon { k, m, out } => {
            if *k < 3 {
                return Err(InputError(format!("--k must be at least 3, got {k}")));
            }
            (
                serialize_model(&random_polygon_model(*k, *m, global.seed)),
                out,
            )
        }
        GenKind::Digraph { n, p, out } => {
            if !(0.0..=1.0).contains(p) {
                return Err(InputError(format!("--p must lie in [0, 1], got {p}")));
            }
            if *n == 0 {
                return Err(InputError("--n must be positive".into()));
            }
            (random_digraph(*n, *p, global.seed).serialize(), out)
        }
    };
    match out {
        Some(path) => {
            write(path, &text)?;
            let mut report = Report::new(&[&text]);
            report.seed = Some(global.seed);
            report.detail("file", json!(path.display().to_string()));
            Ok(Some(report))
        }
        None => {
            print!("{text}");
            Ok(None)
        }
    }
}

struct BenchRow {
    k: usize,
    m: usize,
    candidates: f64,
    runtime_ms: f64,
}

fn bench(global: &Global, args: &BenchArgs) -> CmdResult {
    if args.k.iter().any(|&k| k < 3) {
        return Err(InputError("every --k must be at least 3".into()));
    }
    let opts = SolverOptions {
        jobs: global.jobs.max(1),
        ..SolverOptions::default()
    };
    let mut rows = Vec::new();
    for &k in &args.k {
        for &m in &args.m {
            let (mut cand, mut ms) = (0.0, 0.0);
            for s in 0..args.samples {
                let model = random_polygon_model(k, m, global.seed.wrapping_add(s));
                let start = Instant::now();
                let sol = match args.kind {
                    Kind::Ds => solve_min_ds_polygon(&model, &opts)?,
                    Kind::Pds => solve_min_pds_polygon(&model, &opts)?,
                };
                ms += start.elapsed().as_secs_f64() * 1000.0;
                cand += sol.candidates as f64;
            }
            let div = args.samples.max(1) as f64;
            rows.push(BenchRow {
                k,
                m,
                candidates: cand / div,
                runtime_ms: ms / div,
            });
        }
    }
    let mut csv = String::from("k,m,candidates,runtime_ms\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{:.3},{:.3}\n",
            r.k, r.m, r.candidates, r.runtime_ms
        ));
    }
    if let Some(svg) = &args.svg {
        write(svg, &plot(&rows))?;
    }
    match &args.out {
        Some(path) => {
            write(path, &csv)?;
            let mut report = Report::new(&[]);
            report.seed = Some(global.seed);
            report.detail("rows", json!(rows.len()));
            report.detail("file", json!(path.display().to_string()));
            Ok(Some(report))
        }
        None => {
            print!("{csv}");
            Ok(None)
        }
    }
}

/// Mean candidate count against m, one polyline per k, log-scaled y axis.
fn plot(rows: &[BenchRow]) -> String {
    let (w, h, pad) = (640.0, 400.0, 50.0);
    let max_m = rows.iter().map(|r| r.m).max().unwrap_or(1).max(1) as f64;
    let max_c = rows.iter().map(|r| r.candidates).fold(1.0f64, f64::max);
    let x = |m: usize| pad + (m as f64 / max_m) * (w - 2.0 * pad);
    let y = |c: f64| h - pad - ((1.0 + c).ln() / (1.0 + max_c).ln()) * (h - 2.0 * pad);
    let colors = [
        "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
    ];
    let mut ks: Vec<usize> = rows.iter().map(|r| r.k).collect();
    ks.dedup();
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <line x1=\"{pad}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <line x1=\"{pad}\" y1=\"{pad}\" x2=\"{pad}\" y2=\"{b}\" stroke=\"black\"/>\n\
         <text x=\"{cx}\" y=\"{ty}\" text-anchor=\"middle\">m</text>\n\
         <text x=\"12\" y=\"{cy}\" transform=\"rotate(-90 12 {cy})\" text-anchor=\"middle\">candidates (log)</text>\n",
        b = h - pad,
        r = w - pad,
        cx = w / 2.0,
        ty = h - 12.0,
        cy = h / 2.0,
    );
    for (t, k) in ks.iter().enumerate() {
        let pts: Vec<String> = rows
            .iter()
            .filter(|r| r.k == *k)
            .map(|r| format!("{:.1},{:.1}", x(r.m), y(r.candidates)))
            .collect();
        let color = colors[t % colors.len()];
        out.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"2\" points=\"{}\"/>\n\
             <text x=\"{}\" y=\"{}\" fill=\"{color}\">k={k}</text>\n",
            pts.join(" "),
            w - pad - 40.0,
            pad + 16.0 * t as f64
        ));
    }
    out.push_str("</svg>\n");
    out
}
