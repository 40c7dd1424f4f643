//! The `f2q` command-line driver.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::apply::{map_hamiltonian_with_tol, vacuum_pair_predicate, weight_report, QubitHamiltonian};
use crate::baselines;
use crate::circuit::{emit_qasm, metrics, trotterize};
use crate::error::{Error, Result};
use crate::fermion::{gen_fermi_hubbard, parse_fermionic, parse_majorana, write_fermionic, write_majorana, MajoranaHamiltonian};
use crate::hatt::{self, Options, Traversal, Variant};
use crate::mapping::{Mapping, Method};
use crate::verify::{self, AlgebraCheck};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Largest mode count for the dense matrix and vacuum checks in `verify`.
const DENSE_CHECK_MODES: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "f2q", version, about = "Fermion-to-qubit mapping compiler")]
pub struct Cli {
    /// Drop coefficients below this magnitude.
    #[arg(long, global = true, default_value_t = crate::fermion::DEFAULT_TOL)]
    pub tol: f64,
    /// Print construction steps to stderr as JSON lines.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Seed for randomized generators.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the candidate scan.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated Hamiltonian.
    #[command(subcommand)]
    Gen(GenKind),
    /// Build a mapping and write the mapped Hamiltonian with its weights.
    Compile(CompileArgs),
    /// Write the Trotter circuit of a qubit Hamiltonian.
    Circuit(CircuitArgs),
    /// Check a mapping, and optionally the spectrum of a Hamiltonian under it.
    Verify(VerifyArgs),
    /// Time the adaptive constructions on `H = Σ M_i`.
    BenchScaling(BenchArgs),
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Fermi-Hubbard model on a rows × cols lattice (`.fop`).
    FermiHubbard {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 4.0)]
        u: f64,
        /// Wrap around along sides longer than two sites.
        #[arg(long)]
        periodic: bool,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random Hermitian Majorana Hamiltonian (`.mop`), seeded by `--seed`.
    Random {
        #[arg(long)]
        modes: usize,
        #[arg(long, default_value_t = 10)]
        terms: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    /// `.fop` (ladder operators) or `.mop` (Majorana products).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_method)]
    pub mapping: Method,
    /// For `btt`: assign Majoranas to leaves left to right instead of pairing.
    #[arg(long)]
    pub leaf_order: bool,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct CircuitArgs {
    /// Qubit Hamiltonian JSON as written by `compile`.
    #[arg(long)]
    pub hamiltonian: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    pub time: f64,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Mapping JSON as written by `compile`.
    #[arg(long)]
    pub mapping: PathBuf,
    /// Optional `.fop`/`.mop` whose spectrum is compared against Jordan-Wigner.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 128)]
    pub max_modes: usize,
    /// CSV output; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Keep repeating each run until this many seconds have accumulated.
    #[arg(long, default_value_t = 0.2)]
    pub min_time: f64,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::PauliSyntax { .. } | Error::Json(_) | Error::Io { .. } | Error::NonHermitian(_) => {
            EXIT_PARSE
        }
        Error::Construction(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

pub fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Gen(kind) => cmd_gen(cli, kind),
        Command::Compile(args) => cmd_compile(cli, args),
        Command::Circuit(args) => cmd_circuit(args),
        Command::Verify(args) => cmd_verify(cli, args),
        Command::BenchScaling(args) => cmd_bench_scaling(args),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Reads a `.fop` or `.mop` file into Majorana form.
pub fn load_hamiltonian(path: &Path, tol: f64) -> Result<MajoranaHamiltonian> {
    let text = read(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("fop") => Ok(parse_fermionic(&text)?.to_majorana_with_tol(tol)),
        Some("mop") => parse_majorana(&text),
        _ => Err(Error::InvalidArgument(format!("{}: expected a .fop or .mop file", path.display()))),
    }
}

/// Builds the mapping named by `method` for `h`.
pub fn build_mapping(h: &MajoranaHamiltonian, method: Method, leaf_order: bool, threads: usize) -> Result<(Mapping, Vec<hatt::StepRecord>)> {
    let n = h.n_modes();
    Ok(match method {
        Method::JordanWigner => (baselines::jordan_wigner(n)?, Vec::new()),
        Method::BravyiKitaev => (baselines::bravyi_kitaev(n)?, Vec::new()),
        Method::BalancedTernaryTree if leaf_order => (baselines::balanced_ternary_tree_leaf_order(n)?, Vec::new()),
        Method::BalancedTernaryTree => (baselines::balanced_ternary_tree(n)?, Vec::new()),
        Method::HattUnopt => hatt::build_with(h, Options { variant: Variant::Unopt, threads })?,
        Method::Hatt => hatt::build_with(h, Options { variant: Variant::Paired(Traversal::Maps), threads })?,
    })
}

fn cmd_gen(cli: &Cli, kind: &GenKind) -> Result<i32> {
    match kind {
        GenKind::FermiHubbard { rows, cols, t, u, periodic, out } => {
            let h = gen_fermi_hubbard(*rows, *cols, *t, *u, *periodic)?;
            write_or_print(out.as_deref(), &write_fermionic(&h))?;
        }
        GenKind::Random { modes, terms, out } => {
            if *modes == 0 {
                return Err(Error::InvalidArgument("--modes must be at least 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let h = verify::random_hermitian_majorana(*modes, *terms, &mut rng);
            write_or_print(out.as_deref(), &write_majorana(&h))?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_compile(cli: &Cli, args: &CompileArgs) -> Result<i32> {
    let h = load_hamiltonian(&args.input, cli.tol)?;
    let (mapping, history) = build_mapping(&h, args.mapping, args.leaf_order, cli.threads)?;
    if cli.trace {
        for r in &history {
            eprintln!("{}", serde_json::to_string(r)?);
        }
    }
    let q = map_hamiltonian_with_tol(&h, &mapping, cli.tol)?;
    let report = weight_report(&q);
    std::fs::create_dir_all(&args.out_dir).map_err(|source| Error::Io { path: args.out_dir.clone(), source })?;
    write(&args.out_dir.join("mapping.json"), &(mapping.to_json() + "\n"))?;
    write(&args.out_dir.join("hamiltonian.json"), &(q.to_json() + "\n"))?;
    write(&args.out_dir.join("weights.json"), &(serde_json::to_string_pretty(&report)? + "\n"))?;
    if let Some(tree) = mapping.tree() {
        write(&args.out_dir.join("tree.sexpr"), &(tree.to_sexpr()? + "\n"))?;
    }
    println!(
        "{}: {} modes, {} terms, total Pauli weight {}",
        mapping.method(),
        mapping.n_modes(),
        report.term_count,
        report.total_pauli_weight
    );
    Ok(EXIT_OK)
}

fn cmd_circuit(args: &CircuitArgs) -> Result<i32> {
    let q = QubitHamiltonian::from_json(&read(&args.hamiltonian)?)?;
    let c = trotterize(&q, args.time, args.steps)?;
    let m = metrics(&c);
    std::fs::create_dir_all(&args.out_dir).map_err(|source| Error::Io { path: args.out_dir.clone(), source })?;
    write(&args.out_dir.join("circuit.qasm"), &emit_qasm(&c))?;
    write(&args.out_dir.join("metrics.json"), &(m.to_json() + "\n"))?;
    println!("cnot_count {} single_qubit_count {} depth {}", m.cnot_count, m.single_qubit_count, m.depth);
    Ok(EXIT_OK)
}

/// Runs every applicable check and returns `(name, passed)` rows.
pub fn verify_rows(mapping: &Mapping, h: Option<&MajoranaHamiltonian>) -> Result<Vec<(String, Option<bool>)>> {
    let n = mapping.n_modes();
    let dense = n <= DENSE_CHECK_MODES;
    let mut rows = vec![("anticommutation (symplectic)".to_string(), Some(verify::check_majorana_algebra(mapping, AlgebraCheck::Symplectic)?))];
    rows.push((
        "anticommutation (matrix)".into(),
        if dense { Some(verify::check_majorana_algebra(mapping, AlgebraCheck::Matrix)?) } else { None },
    ));
    if mapping.vacuum_preserving() {
        rows.push(("vacuum pair predicate".into(), Some(vacuum_pair_predicate(mapping))));
        rows.push(("vacuum (matrix)".into(), if dense { Some(verify::check_vacuum(mapping)?) } else { None }));
    }
    if let Some(h) = h {
        let ok = if n <= verify::MAX_SPECTRUM_QUBITS {
            let ours = verify::spectrum(&map_hamiltonian_with_tol(h, mapping, 0.0)?)?;
            let jw = verify::spectrum(&map_hamiltonian_with_tol(h, &baselines::jordan_wigner(n)?, 0.0)?)?;
            Some(ours.iter().zip(&jw).all(|(a, b)| (a - b).abs() < 1e-9))
        } else {
            None
        };
        rows.push(("spectrum matches jw".into(), ok));
    }
    Ok(rows)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<i32> {
    let mapping = Mapping::from_json(&read(&args.mapping)?)?;
    let h = args.input.as_deref().map(|p| load_hamiltonian(p, cli.tol)).transpose()?;
    if let Some(h) = &h {
        if h.n_modes() != mapping.n_modes() {
            return Err(Error::ModeMismatch { hamiltonian: h.n_modes(), mapping: mapping.n_modes() });
        }
    }
    let rows = verify_rows(&mapping, h.as_ref())?;
    let mut failed = false;
    for (name, result) in &rows {
        let status = match result {
            Some(true) => "pass",
            Some(false) => {
                failed = true;
                "FAIL"
            }
            None => "skip",
        };
        println!("{status:<5} {name}");
    }
    Ok(if failed { EXIT_VERIFY } else { EXIT_OK })
}

/// `N` values of the scaling benchmark up to `max_modes`.
pub fn bench_grid(max_modes: usize) -> Vec<usize> {
    let mut grid = Vec::new();
    let mut n = 8;
    while n <= max_modes {
        grid.push(n);
        // 8, 12, 16, 24, 32, 48, …
        n = if n.is_power_of_two() { n + n / 2 } else { n / 3 * 4 };
    }
    grid
}

/// `H = Σ_i M_i` over all `2N` Majoranas.
pub fn linear_majorana(n_modes: usize) -> MajoranaHamiltonian {
    MajoranaHamiltonian::from_products(n_modes, (0..2 * n_modes).map(|i| (Complex64::new(1.0, 0.0), vec![i])))
        .expect("indices in range")
}

/// Fastest of repeated runs, repeating until `min_time` seconds have passed.
pub fn time_build(h: &MajoranaHamiltonian, variant: Variant, min_time: f64) -> Result<f64> {
    let mut best = f64::INFINITY;
    let mut spent = 0.0;
    let mut runs = 0;
    while runs < 3 || spent < min_time {
        let start = Instant::now();
        hatt::build_with(h, Options { variant, threads: 1 })?;
        let dt = start.elapsed().as_secs_f64();
        best = best.min(dt);
        spent += dt;
        runs += 1;
    }
    Ok(best)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Slope fit range starts here; smaller sizes are dominated by fixed costs.
pub const SLOPE_MIN_MODES: usize = 16;

fn cmd_bench_scaling(args: &BenchArgs) -> Result<i32> {
    if args.max_modes < 8 {
        return Err(Error::InvalidArgument("--max-modes must be at least 8".into()));
    }
    let mut csv = String::from("n_modes,method,seconds\n");
    let mut series: Vec<(Method, Vec<(f64, f64)>)> = Vec::new();
    for (method, variant) in [(Method::HattUnopt, Variant::Unopt), (Method::Hatt, Variant::Paired(Traversal::Maps))] {
        let mut pts = Vec::new();
        for n in bench_grid(args.max_modes) {
            let secs = time_build(&linear_majorana(n), variant, args.min_time)?;
            writeln!(csv, "{n},{method},{secs:.9}").unwrap();
            if n >= SLOPE_MIN_MODES {
                pts.push((n as f64, secs));
            }
        }
        series.push((method, pts));
    }
    write_or_print(args.out.as_deref(), &csv)?;
    for (method, pts) in &series {
        if pts.len() >= 2 {
            eprintln!("slope {method}: {:.3}", log_log_slope(pts));
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid() {
        assert_eq!(bench_grid(128), [8, 12, 16, 24, 32, 48, 64, 96, 128]);
        assert_eq!(bench_grid(8), [8]);
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = [16.0, 32.0, 64.0].iter().map(|&x: &f64| (x, 2.0 * x.powi(3))).collect();
        assert!((log_log_slope(&pts) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_from(["f2q", "compile"]), EXIT_USAGE);
        assert_eq!(run_from(["f2q", "gen", "fermi-hubbard", "--rows", "0", "--cols", "2"]), EXIT_USAGE);
        assert_eq!(run_from(["f2q", "compile", "--input", "x.fop", "--mapping", "nope", "--out-dir", "o"]), EXIT_USAGE);
    }
}
