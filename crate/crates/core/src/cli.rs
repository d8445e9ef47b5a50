//! The command-line front end. It loads instance files and renders the
//! one-line result record.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use num_rational::BigRational;

use crate::colorcoding::FamilyMode;
use crate::diversity::structural_params;
use crate::driver::SolveConfig;
use crate::error::{Error, Result};
use crate::generate::{generate_instance, GeneratorConfig};
use crate::model::{parse_rational, FoodWeb, Instance, PhyloNetwork, ViabilityMode};
use crate::oracle::solve_brute;
use crate::outcome::{Algorithm, SolveOutcome};
use crate::scanwidth::parse_tree_extension;
use crate::solver_dbar::solve_dbar;
use crate::solver_kh::solve_kh;

/// Instances with at most this many taxa go to the oracle in auto mode.
pub const AUTO_BRUTE_CAP: usize = 12;

/// Solver requested on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlgoChoice {
    #[default]
    Auto,
    Fixed(Algorithm),
}

impl FromStr for AlgoChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Self::Auto),
            other => other.parse().map(Self::Fixed),
        }
    }
}

/// Everything a solve run needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub network: PathBuf,
    pub foodweb: PathBuf,
    pub tree_extension: Option<PathBuf>,
    pub k: usize,
    pub d: u64,
    pub viability: ViabilityMode,
    pub algo: AlgoChoice,
    pub solve: SolveConfig,
    /// Print the witness taxa instead of `-`.
    pub witness: bool,
}

/// Parses a failure probability such as `1e-9`, `0.001` or `1/1000`.
pub fn parse_probability(s: &str) -> std::result::Result<BigRational, String> {
    let parsed = parse_rational(s).ok_or_else(|| format!("invalid probability '{s}'"))?;
    let zero = BigRational::from_integer(0.into());
    let one = BigRational::from_integer(1.into());
    if parsed <= zero || parsed >= one {
        return Err(format!("the probability must lie strictly between 0 and 1, got '{s}'"));
    }
    Ok(parsed)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

fn with_path(path: &Path, err: Error) -> Error {
    match err {
        Error::Syntax { line, column, message } => {
            Error::Syntax { line, column, message: format!("{}: {message}", path.display()) }
        }
        other => other,
    }
}

/// Reads and validates the instance named by `cfg`.
pub fn load_instance(cfg: &RunConfig) -> Result<Instance> {
    let network = PhyloNetwork::parse(&read(&cfg.network)?).map_err(|e| with_path(&cfg.network, e))?;
    let foodweb =
        FoodWeb::parse(&read(&cfg.foodweb)?, &network.taxon_names()).map_err(|e| with_path(&cfg.foodweb, e))?;
    Instance::new(network, foodweb, cfg.k, cfg.d, cfg.viability)
}

/// The solver auto mode picks: the oracle for small instances, otherwise the
/// algorithm with the smaller palette.
pub fn choose_algorithm(inst: &Instance) -> Algorithm {
    if inst.num_taxa() <= AUTO_BRUTE_CAP {
        return Algorithm::Brute;
    }
    let loss_colors = 2 * inst.dbar().max(0) as u128;
    let saved_colors = inst.k() as u128 * structural_params(inst.network()).big_h as u128;
    if loss_colors <= saved_colors {
        Algorithm::Dbar
    } else {
        Algorithm::Kh
    }
}

/// Loads the instance and runs the selected solver.
pub fn run(cfg: &RunConfig) -> Result<SolveOutcome> {
    let inst = load_instance(cfg)?;
    let ext = match &cfg.tree_extension {
        Some(path) => Some(parse_tree_extension(&read(path)?, inst.foodweb()).map_err(|e| with_path(path, e))?),
        None => None,
    };
    let algorithm = match cfg.algo {
        AlgoChoice::Auto => choose_algorithm(&inst),
        AlgoChoice::Fixed(a) => a,
    };
    let mut outcome = match algorithm {
        Algorithm::Brute => solve_brute(&inst)?,
        Algorithm::Dbar => solve_dbar(&inst, ext.as_ref(), &cfg.solve)?,
        Algorithm::Kh => solve_kh(&inst, ext.as_ref(), &cfg.solve)?,
    };
    outcome.seed = cfg.solve.seed;
    Ok(outcome)
}

/// Renders the single-line result record. A witness is printed as
/// comma-separated taxon names, so the empty set is an empty value. An absent
/// or suppressed witness is printed as `-`.
pub fn format_record(outcome: &SolveOutcome, inst_names: &[String], show_witness: bool, elapsed_ms: u128) -> String {
    let mut line = String::new();
    let answer = if outcome.answer { "yes" } else { "no" };
    let pd = outcome.pd.map_or("-".to_string(), |v| v.to_string());
    let witness = match (&outcome.witness, show_witness) {
        (Some(w), true) => w.iter().map(|&x| inst_names[x].as_str()).collect::<Vec<_>>().join(","),
        _ => "-".to_string(),
    };
    let width = outcome.width.map_or("-".to_string(), |w| w.to_string());
    write!(
        line,
        "answer={answer} pd={pd} witness={witness} algorithm={} colors={} family_size={} family_kind={} width={width} seed={} elapsed_ms={elapsed_ms}",
        outcome.algorithm, outcome.colors, outcome.family_size, outcome.family_kind, outcome.seed
    )
    .expect("writing to a string");
    line
}

/// Runs `cfg` and returns the record together with the outcome.
pub fn run_and_format(cfg: &RunConfig) -> Result<(SolveOutcome, String)> {
    let start = Instant::now();
    let outcome = run(cfg)?;
    let elapsed = start.elapsed().as_millis();
    let names = PhyloNetwork::parse(&read(&cfg.network)?)?.taxon_names();
    let record = format_record(&outcome, &names, cfg.witness, elapsed);
    Ok((outcome, record))
}

/// Process exit status for an error: 3 for infeasible configurations, 2 for
/// everything else.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Infeasible(_) => 3,
        _ => 2,
    }
}

/// Writes a generated instance as `network.txt` and `foodweb.txt` into `dir`
/// and returns both paths with the instance.
pub fn generate_files(cfg: &GeneratorConfig, dir: &Path) -> Result<(PathBuf, PathBuf, Instance)> {
    let inst = generate_instance(cfg)?;
    std::fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.display().to_string(), message: e.to_string() })?;
    let net_path = dir.join("network.txt");
    let web_path = dir.join("foodweb.txt");
    for (path, text) in [(&net_path, inst.network().to_text()), (&web_path, inst.foodweb().to_text())] {
        std::fs::write(path, text)
            .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
    }
    Ok((net_path, web_path, inst))
}

impl RunConfig {
    /// A configuration with default solver settings.
    pub fn new(network: impl Into<PathBuf>, foodweb: impl Into<PathBuf>, k: usize, d: u64) -> Self {
        Self {
            network: network.into(),
            foodweb: foodweb.into(),
            tree_extension: None,
            k,
            d,
            viability: ViabilityMode::Gamma,
            algo: AlgoChoice::Auto,
            solve: SolveConfig { family: FamilyMode::Deterministic, ..SolveConfig::default() },
            witness: false,
        }
    }
}
