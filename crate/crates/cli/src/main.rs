//! `bacodes`: discrepancy-based coding for the binary asymmetric channel.

mod output;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bacodes::bounds::{
    build_constraints, ceil_doubled_over_gamma_plus_one, check_special_code, compute_a, hamming_bound,
    ilp_maximize, plotkin_lower_bound, plotkin_upper_bound, singleton_bound, ConstraintKind,
};
use bacodes::decoder::decode;
use bacodes::discrepancy::{min_discrepancy, min_hamming_distance, min_symmetric_discrepancy_exact};
use bacodes::graphs::{build_graph, export_graph, ExportFormat};
use bacodes::pud::{
    pud_bound_delta_eval, pud_bound_deltahat_eval, pud_exact_with, pud_monte_carlo, pud_sweep, ExactOptions,
};
use bacodes::{BitVector, ChannelParams, Code, DecodeResult, DecoderKind, GraphKind, LatticeValue, Threshold};
use clap::{Parser, Subcommand, ValueEnum};

use output::{Cell, Format, Report};

#[derive(Debug, Parser)]
#[command(name = "bacodes", version, about = "Discrepancy-based coding for the binary asymmetric channel")]
struct Cli {
    /// Probability of a 0 -> 1 flip.
    #[arg(long, global = true, allow_negative_numbers = true)]
    p: Option<f64>,

    /// Probability of a 1 -> 0 flip.
    #[arg(long, global = true, allow_negative_numbers = true)]
    q: Option<f64>,

    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write the output to a file instead of stdout (for `graph`, the exported graph).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Largest n for exact PUD computation.
    #[arg(long, global = true, env = "BACODES_MAX_EXACT_N", default_value_t = bacodes::pud::DEFAULT_EXACT_CAP)]
    max_exact_n: usize,

    /// Largest n for exhaustive code search.
    #[arg(long, global = true, env = "BACODES_MAX_EXHAUSTIVE_N", default_value_t = bacodes::bounds::DEFAULT_EXHAUSTIVE_CAP)]
    max_exhaustive_n: usize,

    /// Largest n for graph construction.
    #[arg(long, global = true, env = "BACODES_MAX_GRAPH_N", default_value_t = bacodes::graphs::DEFAULT_GRAPH_CAP)]
    max_graph_n: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Channel parameters and gamma.
    Info,
    /// Distances, discrepancies and bounds of a code.
    Analyze {
        #[arg(long)]
        code: PathBuf,
    },
    /// Decode one received word.
    Decode {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = DecoderArg::Ml)]
        decoder: DecoderArg,
    },
    /// Probability of unsuccessful decoding: exact, bounds, Monte Carlo or a sweep over q.
    Pud {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        bounds: bool,
        #[arg(long)]
        mc: bool,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Start of a sweep over q (inclusive); replaces --q.
        #[arg(long, requires = "q_to")]
        q_from: Option<f64>,
        /// End of the sweep (inclusive).
        #[arg(long, requires = "q_from")]
        q_to: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        q_step: f64,
    },
    /// Bounds on the size of a code of length n with minimum discrepancy at least DELTA.
    Bounds {
        #[arg(long)]
        n: usize,
        /// `REAL` or `INT+INT*g`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_threshold)]
        delta: Threshold,
        #[arg(value_enum)]
        which: Which,
        #[arg(long, value_enum, default_value_t = KindArg::Delta)]
        kind: KindArg,
        /// Print the integer program in LP format instead of solving it.
        #[arg(long)]
        lp: bool,
    },
    /// Build G(n, DELTA), its symmetric variant or the Hamming graph.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_threshold)]
        delta: Threshold,
        #[arg(long, value_enum, default_value_t = KindArg::Delta)]
        kind: KindArg,
        #[arg(long, value_enum, default_value_t = ExportArg::Edges)]
        export: ExportArg,
        /// Print the degree of every vertex.
        #[arg(long)]
        degrees: bool,
        /// Print a maximum clique.
        #[arg(long)]
        clique: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DecoderArg {
    Ml,
    Disc,
    Hamming,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Singleton,
    Hamming,
    Plotkin,
    Ilp,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Delta,
    Deltahat,
    Hamming,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportArg {
    Edges,
    Dot,
}

impl From<DecoderArg> for DecoderKind {
    fn from(d: DecoderArg) -> Self {
        match d {
            DecoderArg::Ml => DecoderKind::MaximumLikelihood,
            DecoderArg::Disc => DecoderKind::MinimumDiscrepancy,
            DecoderArg::Hamming => DecoderKind::MinimumHamming,
        }
    }
}

impl From<KindArg> for GraphKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Delta => GraphKind::Discrepancy,
            KindArg::Deltahat => GraphKind::SymmetricDiscrepancy,
            KindArg::Hamming => GraphKind::Hamming,
        }
    }
}

fn parse_threshold(s: &str) -> Result<Threshold, String> {
    s.parse().map_err(|e: bacodes::Error| e.to_string())
}

#[derive(Debug)]
enum CliError {
    Lib(bacodes::Error),
    Usage(String),
    Io(String),
}

impl From<bacodes::Error> for CliError {
    fn from(e: bacodes::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use bacodes::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Lib(e) => match e {
                E::InvalidWord(_) | E::InvalidCode(_) | E::InvalidThreshold(_) | E::UnsupportedFormat(_) | E::Parse(_) => 2,
                E::CapExceeded { .. } => 4,
                _ => 3,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Usage(s) | CliError::Io(s) => s.clone(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn channel(cli: &Cli) -> CliResult<ChannelParams> {
    match (cli.p, cli.q) {
        (Some(p), Some(q)) => Ok(ChannelParams::strict(p, q)?),
        _ => Err(CliError::Usage("--p and --q are required".into())),
    }
}

fn read_code(path: &Path) -> CliResult<Code> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    text.parse()
        .map_err(|e: bacodes::Error| CliError::Usage(format!("{}: {e}", path.display())))
}

fn words_cell(words: &[BitVector]) -> Cell {
    Cell::text(words.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" "))
}

fn threshold_cell(t: Threshold, gamma: f64) -> Cell {
    match t {
        Threshold::Lattice(v) => Cell::disc(v, gamma),
        Threshold::Real(x) => Cell::Full(x),
    }
}

fn lattice_threshold(t: Threshold, which: &str) -> CliResult<LatticeValue> {
    match t {
        Threshold::Lattice(v) => Ok(v),
        Threshold::Real(_) => Err(CliError::Usage(format!(
            "the {which} bound needs an exact threshold of the form INT+INT*g"
        ))),
    }
}

fn cmd_info(cli: &Cli) -> CliResult<Vec<Report>> {
    let ch = channel(cli)?;
    Ok(vec![Report::Record(vec![
        ("p", Cell::Full(ch.p())),
        ("q", Cell::Full(ch.q())),
        ("gamma", Cell::Full(ch.gamma())),
        ("q/(1-p)", Cell::Full(ch.ratio_01())),
        ("p/(1-q)", Cell::Full(ch.ratio_10())),
    ])])
}

fn cmd_analyze(cli: &Cli, path: &Path) -> CliResult<Vec<Report>> {
    let ch = channel(cli)?;
    let code = read_code(path)?;
    let g = ch.gamma();
    let d = min_discrepancy(&ch, &code)?;
    let dh = min_symmetric_discrepancy_exact(&ch, &code)?;
    let h = min_hamming_distance(&code);
    let scaled = (g + 1.0) * h as f64 / 2.0;
    let special = check_special_code(&ch, &code)?;
    let weights: Vec<String> = code.weight_distribution().iter().map(u64::to_string).collect();
    let mut fields = vec![
        ("n", Cell::int(code.n() as i64)),
        ("size", Cell::int(code.len() as i64)),
        ("weight_distribution", Cell::text(weights.join(" "))),
        ("total_weight", Cell::int(code.total_weight())),
        ("min_delta_hat", Cell::disc(dh, g)),
        ("min_hamming_distance", Cell::int(h)),
        ("min_delta", Cell::disc(d, g)),
        ("scaled_hamming_distance", Cell::Num(scaled)),
        ("lower_bound", Cell::int(plotkin_lower_bound(&ch, &code)?)),
        ("linear", Cell::Bool(special.is_linear)),
        ("constant_weight", Cell::Bool(special.is_constant_weight)),
    ];
    if let Some(ok) = special.linear_identity {
        fields.push(("delta_equals_hamming", Cell::Bool(ok)));
    }
    if let Some(ok) = special.constant_weight_identity {
        fields.push(("delta_equals_scaled_hamming", Cell::Bool(ok)));
    }
    Ok(vec![Report::Record(fields)])
}

fn cmd_decode(cli: &Cli, path: &Path, word: &str, decoder: DecoderArg) -> CliResult<Vec<Report>> {
    let ch = channel(cli)?;
    let code = read_code(path)?;
    let y: BitVector = word.parse()?;
    let decoded = match decode(decoder.into(), &ch, &code, &y)? {
        DecodeResult::Codeword(k) => code.word(k).to_string(),
        DecodeResult::Failure => "FAIL".to_string(),
    };
    Ok(vec![Report::Record(vec![
        ("received", Cell::text(y.to_string())),
        ("decoded", Cell::text(decoded)),
    ])])
}

struct PudArgs<'a> {
    code: &'a Path,
    exact: bool,
    bounds: bool,
    mc: bool,
    trials: u64,
    seed: u64,
    sweep: Option<(f64, f64, f64)>,
}

fn cmd_pud(cli: &Cli, args: PudArgs) -> CliResult<Vec<Report>> {
    let code = read_code(args.code)?;
    if let Some((from, to, step)) = args.sweep {
        let p = cli.p.ok_or_else(|| CliError::Usage("--p is required".into()))?;
        let rows = pud_sweep(p, &code, from, to, step, cli.max_exact_n)?;
        let rows = rows
            .iter()
            .map(|r| {
                vec![
                    Cell::Num(r.q),
                    Cell::Num(r.bound_delta),
                    Cell::Num(r.bound_deltahat),
                    r.exact.map_or(Cell::Empty, Cell::Num),
                ]
            })
            .collect();
        return Ok(vec![Report::Table {
            columns: vec!["q", "bound_delta", "bound_deltahat", "exact"],
            rows,
        }]);
    }
    let ch = channel(cli)?;
    let none = !(args.exact || args.bounds || args.mc);
    let mut fields = Vec::new();
    if args.exact || none {
        if code.n() <= cli.max_exact_n || !args.mc {
            let opts = ExactOptions {
                cap: cli.max_exact_n,
                ..ExactOptions::default()
            };
            fields.push(("exact", Cell::Num(pud_exact_with(&ch, &code, &opts)?)));
        } else {
            fields.push(("exact", Cell::Empty));
        }
    }
    if args.bounds || none {
        let b1 = pud_bound_delta_eval(&ch, &code)?;
        let b2 = pud_bound_deltahat_eval(&ch, &code)?;
        fields.push(("bound_delta", Cell::Num(b1.value)));
        fields.push(("bound_delta_vacuous", Cell::Bool(b1.is_vacuous())));
        fields.push(("bound_deltahat", Cell::Num(b2.value)));
        fields.push(("bound_deltahat_vacuous", Cell::Bool(b2.is_vacuous())));
    }
    if args.mc {
        let est = pud_monte_carlo(&ch, &code, args.trials, args.seed)?;
        fields.push(("mc_estimate", Cell::Num(est.estimate)));
        fields.push(("mc_stderr", Cell::Num(est.stderr)));
        fields.push(("mc_trials", Cell::int(est.trials)));
        fields.push(("mc_seed", Cell::int(est.seed)));
    }
    Ok(vec![Report::Record(fields)])
}

fn cmd_bounds(cli: &Cli, n: usize, t: Threshold, which: Which, kind: KindArg, lp: bool) -> CliResult<Vec<Report>> {
    if lp && !matches!(which, Which::Ilp) {
        return Err(CliError::Usage("--lp only applies to the ilp bound".into()));
    }
    let ch = channel(cli)?;
    let g = ch.gamma();
    let mut fields = vec![("n", Cell::int(n as i64)), ("delta", threshold_cell(t, g))];
    match which {
        Which::Singleton | Which::Hamming | Which::Plotkin => {
            let name = match which {
                Which::Singleton => "singleton",
                Which::Hamming => "hamming",
                _ => "plotkin",
            };
            let v = lattice_threshold(t, name)?;
            let value = match which {
                Which::Singleton => singleton_bound(&ch, n, v),
                Which::Hamming => hamming_bound(&ch, n, v),
                _ => plotkin_upper_bound(&ch, n, v)?,
            };
            fields.push(("bound", Cell::text(name)));
            fields.push(("d", Cell::int(ceil_doubled_over_gamma_plus_one(&ch, v))));
            fields.push(("value", Cell::int(value as i128)));
        }
        Which::Ilp => {
            let constraint = match kind {
                KindArg::Delta => ConstraintKind::Delta,
                KindArg::Deltahat => ConstraintKind::DeltaHat,
                KindArg::Hamming => {
                    return Err(CliError::Usage("the ilp bound supports --kind delta or deltahat".into()))
                }
            };
            let sys = build_constraints(&ch, n, t, constraint)?;
            if lp {
                return Ok(vec![Report::Raw(sys.to_lp_text())]);
            }
            let sol = ilp_maximize(&sys)?;
            let weights: Vec<String> = sol.weights.iter().map(u64::to_string).collect();
            fields.push(("bound", Cell::text("ilp")));
            fields.push(("kind", Cell::text(kind_name(kind))));
            fields.push(("value", Cell::int(sol.optimum)));
            fields.push(("weights", Cell::text(weights.join(" "))));
        }
        Which::Exhaustive => {
            let a = compute_a(&ch, n, t, kind.into(), cli.max_exhaustive_n)?;
            fields.push(("bound", Cell::text("exhaustive")));
            fields.push(("kind", Cell::text(kind_name(kind))));
            fields.push(("value", Cell::int(a.value)));
            fields.push(("witness", a.witness.map_or(Cell::Empty, |c| words_cell(c.words()))));
        }
    }
    Ok(vec![Report::Record(fields)])
}

fn kind_name(kind: KindArg) -> &'static str {
    match kind {
        KindArg::Delta => "delta",
        KindArg::Deltahat => "deltahat",
        KindArg::Hamming => "hamming",
    }
}

struct GraphArgs {
    n: usize,
    delta: Threshold,
    kind: KindArg,
    export: ExportArg,
    degrees: bool,
    clique: bool,
}

/// Returns the exported graph and the reports that follow it.
fn cmd_graph(cli: &Cli, args: GraphArgs) -> CliResult<(String, Vec<Report>)> {
    let ch = channel(cli)?;
    let graph = build_graph(&ch, args.n, args.delta, args.kind.into(), cli.max_graph_n)?;
    let format = match args.export {
        ExportArg::Edges => ExportFormat::EdgeList,
        ExportArg::Dot => ExportFormat::Dot,
    };
    let text = export_graph(&graph, format);
    let word = |u: usize| BitVector::from_index(u as u64, args.n).map(|w| w.to_string());
    let mut reports = Vec::new();
    if args.degrees || args.clique || cli.out.is_some() {
        reports.push(Report::Record(vec![
            ("kind", Cell::text(kind_name(args.kind))),
            ("delta", threshold_cell(args.delta, ch.gamma())),
            ("vertices", Cell::int(graph.vertex_count() as i64)),
            ("edges", Cell::int(graph.edge_count() as i64)),
            ("regular", Cell::Bool(graph.is_regular())),
        ]));
    }
    if args.degrees {
        let rows = graph
            .degree_sequence()
            .iter()
            .enumerate()
            .map(|(u, &d)| Ok(vec![Cell::int(u as i64), Cell::text(word(u)?), Cell::int(d as i64)]))
            .collect::<bacodes::Result<_>>()?;
        reports.push(Report::Table {
            columns: vec!["vertex", "word", "degree"],
            rows,
        });
    }
    if args.clique {
        let (size, vertices) = graph.max_clique();
        let words = vertices.iter().map(|&u| word(u)).collect::<bacodes::Result<Vec<_>>>()?;
        reports.push(Report::Record(vec![
            ("clique_size", Cell::int(size as i64)),
            ("clique", Cell::text(words.join(" "))),
        ]));
    }
    Ok((text, reports))
}

fn write_to(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> CliResult<()> {
    let reports = match &cli.command {
        Command::Info => cmd_info(cli)?,
        Command::Analyze { code } => cmd_analyze(cli, code)?,
        Command::Decode { code, word, decoder } => cmd_decode(cli, code, word, *decoder)?,
        Command::Pud {
            code,
            exact,
            bounds,
            mc,
            trials,
            seed,
            q_from,
            q_to,
            q_step,
        } => cmd_pud(
            cli,
            PudArgs {
                code,
                exact: *exact,
                bounds: *bounds,
                mc: *mc,
                trials: *trials,
                seed: *seed,
                sweep: q_from.zip(*q_to).map(|(a, b)| (a, b, *q_step)),
            },
        )?,
        Command::Bounds {
            n,
            delta,
            which,
            kind,
            lp,
        } => cmd_bounds(cli, *n, *delta, *which, *kind, *lp)?,
        Command::Graph {
            n,
            delta,
            kind,
            export,
            degrees,
            clique,
        } => {
            let (text, reports) = cmd_graph(
                cli,
                GraphArgs {
                    n: *n,
                    delta: *delta,
                    kind: *kind,
                    export: *export,
                    degrees: *degrees,
                    clique: *clique,
                },
            )?;
            let mut stdout = String::new();
            match &cli.out {
                Some(path) => write_to(path, &text)?,
                None => stdout.push_str(&text),
            }
            for r in reports {
                stdout.push_str(&r.render(cli.format));
            }
            return emit(None, &stdout);
        }
    };
    let text: String = reports.iter().map(|r| r.render(cli.format)).collect();
    emit(cli.out.as_deref(), &text)
}

fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(path) => write_to(path, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
