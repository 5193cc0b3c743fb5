use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use indpoly::certificate::realize_with_blocks;
use indpoly::counting::{
    bracket, independence_polynomial, oracle_cap_from_env, value_at_minus_one,
};
use indpoly::decycling::min_decycling;
use indpoly::edgelist;
use indpoly::verify::{engstrom_sweep, verify_certificate, verify_kq, Level};
use indpoly::{
    make_complete, make_cycle, synth, Bracket, ConstructionCertificate, Error, RootedGraph,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "indpoly",
    version,
    about = "Independence polynomials at -1, decycling numbers and (k, q)-graph synthesis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a connected graph with decycling number K and I(G;-1) = Q.
    Synth {
        k: u32,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        /// Write the edge list here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the construction certificate (cert-v1).
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Print I(G;-1), and the bracket when the file names a root.
    Eval {
        graph: PathBuf,
        /// Also print the coefficients s_0 .. s_alpha.
        #[arg(long)]
        poly: bool,
    },
    /// Exact decycling number with a witness set.
    Fvs {
        graph: PathBuf,
        /// Give up above this many deletions.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Check that a graph is a connected (K, Q)-graph.
    Verify {
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long, value_enum)]
        level: Option<LevelArg>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Check a construction certificate end to end.
    VerifyCert {
        cert: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce a reference table.
    Table { which: TableArg },
    /// Synthesize and verify every q in [-2^K, 2^K].
    Sweep {
        k: u32,
        #[arg(long, value_enum)]
        level: Option<LevelArg>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Randomized check of |I(G;-1)| <= 2^phi(G).
    Engstrom {
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Poly,
    Oracle,
    Full,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Poly => Level::Poly,
            LevelArg::Oracle => Level::Oracle,
            LevelArg::Full => Level::Full,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    /// Brackets of C6 extended by 0..=6.
    C6,
    /// I(G;-1) for K1, K2, C3, C6.
    Small,
}

/// Error carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn check(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_FAIL,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Synth { k, q, out, cert } => cmd_synth(k, q, out.as_deref(), cert.as_deref()),
        Command::Eval { graph, poly } => cmd_eval(&graph, poly),
        Command::Fvs { graph, cap } => cmd_fvs(&graph, cap),
        Command::Verify {
            graph,
            k,
            q,
            level,
            json,
        } => cmd_verify(&graph, k, q, level.map(Into::into), json),
        Command::VerifyCert { cert, json } => cmd_verify_cert(&cert, json),
        Command::Table { which } => match which {
            TableArg::C6 => cmd_table_c6(),
            TableArg::Small => cmd_table_small(),
        },
        Command::Sweep { k, level, jobs } => cmd_sweep(k, level.map(Into::into), jobs),
        Command::Engstrom {
            n_max,
            trials,
            seed,
            json,
        } => {
            let report = engstrom_sweep(n_max, trials, seed)?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::check("bound violated"))
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<edgelist::EdgeList, Failure> {
    edgelist::parse(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn default_level(k: u32) -> Level {
    if k <= 4 {
        Level::Full
    } else {
        Level::Poly
    }
}

fn cmd_synth(k: u32, q: i64, out: Option<&Path>, cert_path: Option<&Path>) -> CliResult {
    let cert = synth(k, q)?;
    let rooted = cert.realize()?;
    let graph = rooted.graph();
    let br = bracket(&rooted);
    let summary = vec![
        format!("k = {k}, q = {q}"),
        format!(
            "|V| = {}, |E| = {}",
            graph.vertex_count(),
            graph.edge_count()
        ),
        format!("bracket = {br}"),
    ];
    let text = edgelist::write(graph, Some(rooted.root()), &summary);
    match out {
        Some(path) => {
            write(path, &text)?;
            for line in &summary {
                println!("{line}");
            }
        }
        None => print!("{text}"),
    }
    if let Some(path) = cert_path {
        write(path, &cert.to_json())?;
    }
    Ok(())
}

fn cmd_eval(path: &Path, poly: bool) -> CliResult {
    let parsed = read_graph(path)?;
    println!("I(-1) = {}", value_at_minus_one(&parsed.graph));
    if poly {
        let p = independence_polynomial(&parsed.graph);
        let coefficients: Vec<String> = p.coefficients().iter().map(ToString::to_string).collect();
        println!("{}", coefficients.join(" "));
    }
    if let Some(rooted) = parsed.rooted() {
        println!("bracket = {}", bracket(&rooted));
    }
    Ok(())
}

fn cmd_fvs(path: &Path, cap: Option<usize>) -> CliResult {
    let parsed = read_graph(path)?;
    match min_decycling(&parsed.graph, cap) {
        Ok(d) => {
            println!("phi = {}", d.phi);
            let witness: Vec<String> = d.witness.iter().map(ToString::to_string).collect();
            println!("witness = {}", witness.join(" "));
            Ok(())
        }
        Err(Error::BudgetExceeded { cap }) => {
            println!("phi > {cap}");
            Err(Failure::check(format!(
                "decycling number exceeds cap {cap}"
            )))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_verify(path: &Path, k: u32, q: i64, level: Option<Level>, json: bool) -> CliResult {
    let parsed = read_graph(path)?;
    let level = level.unwrap_or_else(|| default_level(k));
    let report = verify_kq(&parsed.graph, k, q, level, None, oracle_cap_from_env());
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::check(format!(
            "clause {} failed",
            report.first_failure().map_or("?", |c| c.name.as_str())
        )))
    }
}

fn cmd_verify_cert(path: &Path, json: bool) -> CliResult {
    let cert = ConstructionCertificate::from_json(&read(path)?)?;
    let report = verify_certificate(&cert);
    if json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::check(format!(
            "stage {} failed",
            report.first_failure().map_or("?", |c| c.name.as_str())
        )))
    }
}

/// Reference brackets of C6 extended by 0..=6.
const C6_TABLE: [[i64; 3]; 7] = [
    [2, 1, -1],
    [1, 2, 1],
    [-1, 1, 2],
    [-2, -1, 1],
    [-1, -2, -1],
    [1, -1, -2],
    [2, 1, -1],
];

fn cmd_table_c6() -> CliResult {
    let c6 = RootedGraph::new(make_cycle(6)?, 0)?;
    let mut mismatches = 0;
    for (length, expected) in C6_TABLE.iter().enumerate() {
        let computed = bracket(&c6.extend(length));
        let expected = Bracket::try_from(*expected)?;
        let mark = if computed == expected {
            "ok"
        } else {
            "MISMATCH"
        };
        if computed != expected {
            mismatches += 1;
        }
        println!("l = {length}  {computed}  expected {expected}  {mark}");
    }
    if mismatches == 0 {
        Ok(())
    } else {
        Err(Failure::check(format!("{mismatches} rows differ")))
    }
}

fn cmd_table_small() -> CliResult {
    let rows = [
        ("K1", make_complete(1)?, 0),
        ("K2", make_complete(2)?, -1),
        ("C3", make_cycle(3)?, -2),
        ("C6", make_cycle(6)?, 2),
    ];
    let mut mismatches = 0;
    for (name, graph, expected) in rows {
        let value = value_at_minus_one(&graph);
        let mark = if value == expected { "ok" } else { "MISMATCH" };
        if value != expected {
            mismatches += 1;
        }
        println!("{name}  I(-1) = {value}  expected {expected}  {mark}");
    }
    if mismatches == 0 {
        Ok(())
    } else {
        Err(Failure::check(format!("{mismatches} rows differ")))
    }
}

struct SweepRow {
    q: i64,
    vertices: usize,
    passed: bool,
    detail: String,
}

fn sweep_one(k: u32, q: i64, level: Level, cap: usize) -> SweepRow {
    let outcome = synth(k, q).and_then(|cert| {
        let realized = realize_with_blocks(&cert.root)?;
        Ok((cert, realized))
    });
    match outcome {
        Err(e) => SweepRow {
            q,
            vertices: 0,
            passed: false,
            detail: e.to_string(),
        },
        Ok((cert, realized)) => {
            let graph = realized.rooted.graph();
            let phi = realized.phi_certificate();
            let graph_report = verify_kq(graph, k, q, level, Some(&phi), cap);
            let cert_report = verify_certificate(&cert);
            let failure = graph_report
                .first_failure()
                .or_else(|| cert_report.first_failure())
                .map(|c| format!("{}: {}", c.name, c.detail));
            SweepRow {
                q,
                vertices: graph.vertex_count(),
                passed: failure.is_none(),
                detail: failure.unwrap_or_default(),
            }
        }
    }
}

fn cmd_sweep(k: u32, level: Option<Level>, jobs: usize) -> CliResult {
    if k == 0 || k > 12 {
        return Err(Failure::usage(format!(
            "sweep supports 1 <= k <= 12, got {k}"
        )));
    }
    let level = level.unwrap_or_else(|| default_level(k));
    let cap = oracle_cap_from_env();
    let top = 1i64 << k;
    let qs: Vec<i64> = (-top..=top).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::usage(e.to_string()))?;
    // par_iter + collect keeps q order regardless of completion order.
    let rows: Vec<SweepRow> = pool.install(|| {
        qs.par_iter()
            .map(|&q| sweep_one(k, q, level, cap))
            .collect()
    });
    let passes = rows.iter().filter(|r| r.passed).count();
    for row in &rows {
        let mark = if row.passed { "PASS" } else { "FAIL" };
        println!(
            "q = {:>6}  {mark}  |V| = {:>4}  {}",
            row.q, row.vertices, row.detail
        );
    }
    println!("k = {k}, level = {level}: {passes}/{} passed", rows.len());
    if passes == rows.len() {
        Ok(())
    } else {
        Err(Failure::check(format!(
            "{} cases failed",
            rows.len() - passes
        )))
    }
}
