//! `mmes`: command-line front end for the entanglement toolkit.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mmes_core::format::{g12, parse_hamiltonian, parse_state, write_hamiltonian, write_state};
use mmes_core::models::{hjk3_ground_facts, named_hamiltonian, named_state};
use mmes_core::optimize::{minimize_pme, OptimizerConfig};
use mmes_core::search::{
    nogo_probe_with, sample_levels, stabilizer_search, verify_basis, CoefficientRange,
    CouplingFamily, SamplingReport, BASIS_RESIDUAL_TOL, DEFAULT_NULL_TOL,
};
use mmes_core::spectral::{eigenstate_check, level_position, DEFAULT_DEGENERACY_TOL};
use mmes_core::{eigh, pme, purity_table, Error, PauliOperator, PureState, Topology, TopologyKind};

#[derive(Parser)]
#[command(
    name = "mmes",
    version,
    about = "Multipartite entanglement and local Hamiltonians"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Balanced purities, pi_ME and the perfect-MMES verdict of a state.
    Analyze {
        /// State file or named state (ghz3, g1plus ... g4minus, m4, m5).
        #[arg(long)]
        state: String,
    },
    /// Write a named Hamiltonian in the text format.
    Build {
        /// Named Hamiltonian, e.g. hjk3:1,1.
        #[arg(long, allow_hyphen_values = true)]
        ham: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectrum as CSV (index,eigenvalue,cluster).
    Diag {
        #[command(flatten)]
        ham: HamArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a state is an eigenstate and locate its level.
    Verify {
        #[command(flatten)]
        ham: HamArg,
        #[arg(long)]
        state: String,
    },
    /// Ground-state energy and pi_ME of hjk3 over a (J, k) grid.
    Sweep {
        /// `lo,hi`
        #[arg(long, default_value = "-2,2", allow_hyphen_values = true)]
        j_range: String,
        /// `lo,hi`
        #[arg(long, default_value = "-2,2", allow_hyphen_values = true)]
        k_range: String,
        #[arg(long, default_value_t = 50)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Local Hamiltonians having the state as an eigenstate.
    Search {
        #[arg(long)]
        state: String,
        #[arg(long, value_enum)]
        topology: TopologyArg,
        #[arg(long, default_value_t = DEFAULT_NULL_TOL)]
        tol: f64,
        /// Directory receiving one Hamiltonian file per basis vector and a
        /// manifest.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Level of the state under randomly weighted couplings.
    Sample {
        #[command(flatten)]
        run: RunArgs,
        /// Per-sample CSV log.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Count how often the state is the ground level of random couplings.
    Nogo {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Numerically minimize pi_ME over n-qubit states.
    Minimize {
        #[arg(long)]
        qubits: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        max_iterations: Option<usize>,
        /// Best state, in the state file format (stdout if absent).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Trace CSV (iter,value) of the winning restart.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

#[derive(Args)]
struct HamArg {
    /// Hamiltonian file or named Hamiltonian (hjk3:J,k, hjk4:J,k).
    #[arg(long, allow_hyphen_values = true)]
    ham: String,
    /// Qubit count for Hamiltonian files (default: largest site).
    #[arg(long)]
    qubits: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    state: String,
    /// Coupling family: hjk3, hjk4, or the stabilizer basis over a topology.
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    /// Coupling interval `lo,hi`.
    #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
    range: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TopologyArg {
    Ring,
    Chain,
    Complete,
}

impl From<TopologyArg> for TopologyKind {
    fn from(t: TopologyArg) -> Self {
        match t {
            TopologyArg::Ring => TopologyKind::Ring,
            TopologyArg::Chain => TopologyKind::Chain,
            TopologyArg::Complete => TopologyKind::Complete,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Hjk3,
    Hjk4,
    Ring,
    Chain,
    Complete,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification { .. } => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Analyze { state } => analyze(&load_state(&state)?),
        Command::Build { ham, out } => emit(
            out.as_deref(),
            &write_hamiltonian(&named_hamiltonian(&ham)?),
        ),
        Command::Diag { ham, out } => {
            diag(&load_hamiltonian(&ham.ham, ham.qubits)?, out.as_deref())
        }
        Command::Verify { ham, state } => {
            let state = load_state(&state)?;
            let h = load_hamiltonian(&ham.ham, ham.qubits.or(Some(state.n())))?;
            verify(&h, &state)
        }
        Command::Sweep {
            j_range,
            k_range,
            steps,
            out,
        } => sweep(
            parse_range(&j_range)?,
            parse_range(&k_range)?,
            steps,
            out.as_deref(),
        ),
        Command::Search {
            state,
            topology,
            tol,
            out_dir,
        } => search(
            &load_state(&state)?,
            topology.into(),
            tol,
            out_dir.as_deref(),
        ),
        Command::Sample { run, log } => sample(&run, log.as_deref()),
        Command::Nogo { run } => nogo(&run),
        Command::Minimize {
            qubits,
            seed,
            restarts,
            max_iterations,
            out,
            trace,
        } => {
            let mut config = OptimizerConfig::for_qubits(qubits, seed);
            if let Some(r) = restarts {
                config.restarts = r;
            }
            if let Some(m) = max_iterations {
                config.max_iterations = m;
            }
            minimize(qubits, &config, out.as_deref(), trace.as_deref())
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// A readable file is parsed; anything else is looked up by name.
fn load_state(arg: &str) -> Result<PureState, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path)?;
        parse_state(&text).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
    } else {
        Ok(named_state(arg)?)
    }
}

fn load_hamiltonian(arg: &str, n: Option<usize>) -> Result<PauliOperator, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path)?;
        parse_hamiltonian(&text, n).map_err(|e| Failure::Usage(format!("{arg}: {e}")))
    } else {
        Ok(named_hamiltonian(arg)?)
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), Failure> {
    let bad = || Failure::Usage(format!("bad range `{s}`, expected `lo,hi`"));
    let (lo, hi) = s.split_once(',').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn analyze(state: &PureState) -> CliResult {
    let table = purity_table(state)?;
    let mean = pme(state)?;
    let bound = mmes_core::entanglement::pme_lower_bound(state.n());
    let perfect = mmes_core::is_perfect_mmes(state, 1e-10)?;
    let mut out = String::from("party,purity\n");
    for (part, p) in &table {
        let members: Vec<String> = part.members().iter().map(|q| q.to_string()).collect();
        out.push_str(&format!("{},{}\n", members.join(" "), g12(*p)));
    }
    out.push_str(&format!("pme {}\n", g12(mean)));
    out.push_str(&format!("bounds {} 1\n", g12(bound)));
    out.push_str(if perfect {
        "verdict perfect\n"
    } else {
        "verdict not-perfect\n"
    });
    emit(None, &out)
}

fn diag(h: &PauliOperator, out: Option<&Path>) -> CliResult {
    let spec = eigh(&mmes_core::pauli::sum_matrix(h)?)?;
    let mut cluster_of = vec![0; spec.eigenvalues.len()];
    for (c, members) in spec.clusters.iter().enumerate() {
        for &i in members {
            cluster_of[i] = c;
        }
    }
    let mut text = String::from("index,eigenvalue,cluster\n");
    for (i, e) in spec.eigenvalues.iter().enumerate() {
        text.push_str(&format!("{i},{},{}\n", g12(*e), cluster_of[i]));
    }
    emit(out, &text)
}

fn verify(h: &PauliOperator, state: &PureState) -> CliResult {
    let check = eigenstate_check(h, state)?;
    println!("eigenvalue {}", g12(check.eigenvalue));
    println!("residual {:e}", check.residual);
    if !check.is_eigenstate() {
        return Err(Failure::Verification(format!(
            "residual {:e} exceeds tolerance",
            check.residual
        )));
    }
    let spec = eigh(&mmes_core::pauli::sum_matrix(h)?)?;
    let pos = level_position(&spec, check.eigenvalue, DEFAULT_DEGENERACY_TOL)?;
    println!("level {}", pos.index);
    println!("levels {}", pos.levels);
    println!("normalized {}", g12(pos.normalized));
    println!("degenerate {}", pos.degenerate);
    Ok(())
}

fn linspace((lo, hi): (f64, f64), steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect()
}

fn sweep(j: (f64, f64), k: (f64, f64), steps: usize, out: Option<&Path>) -> CliResult {
    if steps < 2 {
        return Err(Failure::Usage("steps must be at least 2".into()));
    }
    let mut text = String::from("J,k,gs_energy,gs_pme,ghz_level,degenerate,ghz_degenerate\n");
    for &jv in &linspace(j, steps) {
        for &kv in &linspace(k, steps) {
            let f = hjk3_ground_facts(jv, kv)?;
            text.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                g12(jv),
                g12(kv),
                g12(f.ground_energy),
                g12(f.gs_pme),
                f.ghz_level.index,
                u8::from(f.ground_degenerate),
                u8::from(f.ghz_level.degenerate),
            ));
        }
    }
    emit(out, &text)
}

fn search(state: &PureState, kind: TopologyKind, tol: f64, out_dir: Option<&Path>) -> CliResult {
    let topology = Topology { kind, n: state.n() };
    let basis = stabilizer_search(state, &topology.candidate_local_terms(), tol)?;
    let report = verify_basis(&basis, BASIS_RESIDUAL_TOL)?;
    let mut manifest = String::from("index,file,eigenvalue,residual,terms\n");
    for entry in &report.entries {
        let file = format!("basis_{:03}.ham", entry.index);
        manifest.push_str(&format!(
            "{},{file},{},{:e},{}\n",
            entry.index,
            g12(entry.eigenvalue),
            entry.residual,
            entry.text.lines().count()
        ));
        if let Some(dir) = out_dir {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(&file), &entry.text)?;
        }
    }
    if let Some(dir) = out_dir {
        fs::write(dir.join("manifest.csv"), &manifest)?;
    }
    println!("candidates {}", basis.candidates().len());
    println!("dimension {}", basis.dimension());
    if out_dir.is_none() {
        print!("{manifest}");
    }
    Ok(())
}

fn family(state: &PureState, arg: FamilyArg) -> Result<CouplingFamily, Failure> {
    let kind = match arg {
        FamilyArg::Hjk3 => return Ok(CouplingFamily::hjk3()),
        FamilyArg::Hjk4 => return Ok(CouplingFamily::hjk4()),
        FamilyArg::Ring => TopologyKind::Ring,
        FamilyArg::Chain => TopologyKind::Chain,
        FamilyArg::Complete => TopologyKind::Complete,
    };
    let topology = Topology { kind, n: state.n() };
    let basis = stabilizer_search(state, &topology.candidate_local_terms(), DEFAULT_NULL_TOL)?;
    verify_basis(&basis, BASIS_RESIDUAL_TOL)?;
    Ok(CouplingFamily::from_basis(&basis)?)
}

fn coefficient_range(s: &str) -> Result<CoefficientRange, Failure> {
    let (lo, hi) = parse_range(s)?;
    Ok(CoefficientRange { lo, hi })
}

fn sample(run: &RunArgs, log: Option<&Path>) -> CliResult {
    let state = load_state(&run.state)?;
    let fam = family(&state, run.family)?;
    let range = coefficient_range(&run.range)?;
    let records = sample_levels(&state, &fam, run.samples, range, run.seed)?;
    let report = SamplingReport::from_records(run.seed, &records);
    let min_level = report
        .min_level_index
        .map(|l| l.to_string())
        .unwrap_or_default();
    let text = format!(
        "seed,samples,mean_pos,min_level,degen_frac\n{},{},{},{},{}\n",
        report.seed,
        report.samples,
        g12(report.mean_normalized_position),
        min_level,
        g12(report.degenerate_fraction)
    );
    emit(run.out.as_deref(), &text)?;
    if let Some(path) = log {
        let mut text = String::from("index,eigenvalue,level,normalized,degenerate,coefficients\n");
        for r in &records {
            let coeffs: Vec<String> = r.coefficients.iter().map(|c| g12(*c)).collect();
            text.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.index,
                g12(r.eigenvalue),
                r.level,
                g12(r.normalized),
                u8::from(r.degenerate),
                coeffs.join(" ")
            ));
        }
        fs::write(path, text)?;
    }
    Ok(())
}

fn nogo(run: &RunArgs) -> CliResult {
    let state = load_state(&run.state)?;
    let fam = family(&state, run.family)?;
    let range = coefficient_range(&run.range)?;
    let r = nogo_probe_with(&state, &fam, run.samples, range, run.seed)?;
    let text = format!(
        "seed,samples,ground_nondegenerate,ground_degenerate,excited\n{},{},{},{},{}\n",
        run.seed, r.samples, r.ground_nondegenerate, r.ground_degenerate, r.excited
    );
    emit(run.out.as_deref(), &text)
}

fn minimize(
    n: usize,
    config: &OptimizerConfig,
    out: Option<&Path>,
    trace: Option<&Path>,
) -> CliResult {
    let result = minimize_pme(n, config)?;
    eprintln!(
        "pme {} (restart {})",
        g12(result.best_value),
        result.best_restart
    );
    emit(out, &write_state(&result.best_state))?;
    if let Some(path) = trace {
        let mut text = String::from("iter,value\n");
        for (it, v) in &result.trace {
            text.push_str(&format!("{it},{}\n", g12(*v)));
        }
        fs::write(path, text)?;
    }
    Ok(())
}
