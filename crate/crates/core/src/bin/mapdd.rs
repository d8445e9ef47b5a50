use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mapdd::cli::{exit_code, generate_files, parse_probability, run_and_format, AlgoChoice, RunConfig};
use mapdd::colorcoding::FamilyMode;
use mapdd::generate::{GammaScheme, GeneratorConfig, NetworkShape};
use mapdd::{SolveConfig, ViabilityMode};
use num_rational::BigRational;

/// Decides whether at most k taxa can be saved so that every saved taxon stays
/// viable in the food web and the saved taxa reach phylogenetic diversity D.
#[derive(Parser, Debug)]
#[command(name = "mapdd", version, args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    solve: SolveArgs,
}

#[derive(Args, Debug)]
struct SolveArgs {
    /// Network file with lines `EDGE <tail> <head> <weight>`.
    #[arg(long, required = true)]
    network: Option<PathBuf>,
    /// Food-web file with lines `EDGE <prey> <predator> <gamma>`.
    #[arg(long, required = true)]
    foodweb: Option<PathBuf>,
    /// Tree extension of the food web; computed automatically when omitted.
    #[arg(long)]
    tree_extension: Option<PathBuf>,
    /// Largest number of saved taxa.
    #[arg(long, required = true)]
    k: Option<usize>,
    /// Diversity target.
    #[arg(long, required = true)]
    d: Option<u64>,
    #[arg(long, default_value = "gamma", value_parser = ["gamma", "epsilon", "one"])]
    viability: String,
    #[arg(long, default_value = "auto", value_parser = ["auto", "dbar", "kh", "brute"])]
    algo: String,
    /// Hash family: deterministic perfect family or Monte-Carlo random colorings.
    #[arg(long, default_value = "det", value_parser = ["det", "mc"])]
    family: String,
    /// Failure probability of the Monte-Carlo family.
    #[arg(long, default_value = "1e-9", value_parser = parse_probability)]
    fail_prob: BigRational,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print the taxa of a solution in the record.
    #[arg(long)]
    witness: bool,
    /// Worker threads for the coloring loop.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    /// Print nothing and exit with 0 on yes and 1 on no.
    #[arg(long)]
    quiet_decision: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a random instance as network.txt and foodweb.txt.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Gamma {
    Epsilon,
    One,
    Random,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, default_value_t = 6)]
    taxa: usize,
    #[arg(long, default_value_t = 0)]
    reticulations: usize,
    #[arg(long, default_value_t = 2)]
    max_in_degree: usize,
    #[arg(long, default_value_t = 3)]
    max_weight: u64,
    /// Probability of each admissible prey-predator pair.
    #[arg(long, default_value_t = 0.3)]
    web_density: f64,
    #[arg(long, value_enum, default_value_t = Gamma::Epsilon)]
    gamma: Gamma,
    /// Largest denominator of random γ values.
    #[arg(long, default_value_t = 4)]
    max_denominator: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

fn solve(args: SolveArgs) -> ExitCode {
    let cfg = RunConfig {
        network: args.network.expect("required by clap"),
        foodweb: args.foodweb.expect("required by clap"),
        tree_extension: args.tree_extension,
        k: args.k.expect("required by clap"),
        d: args.d.expect("required by clap"),
        viability: args.viability.parse::<ViabilityMode>().expect("checked by clap"),
        algo: args.algo.parse::<AlgoChoice>().expect("checked by clap"),
        solve: SolveConfig {
            family: args.family.parse::<FamilyMode>().expect("checked by clap"),
            fail_prob: args.fail_prob,
            seed: args.seed,
            jobs: args.jobs as usize,
        },
        witness: args.witness,
    };
    match run_and_format(&cfg) {
        Ok((outcome, record)) => {
            if args.quiet_decision {
                ExitCode::from(if outcome.answer { 0 } else { 1 })
            } else {
                println!("{record}");
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("mapdd: {err}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}

fn generate(args: GenerateArgs) -> ExitCode {
    let gamma = match args.gamma {
        Gamma::Epsilon => GammaScheme::Epsilon,
        Gamma::One => GammaScheme::One,
        Gamma::Random => GammaScheme::Random { max_denominator: args.max_denominator },
    };
    let cfg = GeneratorConfig {
        network: NetworkShape {
            taxa: args.taxa,
            reticulations: args.reticulations,
            max_in_degree: args.max_in_degree,
            max_weight: args.max_weight,
        },
        web_density: args.web_density,
        gamma,
        seed: args.seed,
        ..GeneratorConfig::default()
    };
    match generate_files(&cfg, &args.out_dir) {
        Ok((network, foodweb, inst)) => {
            println!(
                "network={} foodweb={} taxa={} k={} d={}",
                network.display(),
                foodweb.display(),
                inst.num_taxa(),
                inst.k(),
                inst.d()
            );
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("mapdd: {err}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Some(Command::Generate(args)) => generate(args),
        None => solve(cli.solve),
    }
}
