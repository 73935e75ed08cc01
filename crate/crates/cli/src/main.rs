use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use reachnet_core::analyze::{color_edges, deficit_report, star_occurrence_classes};
use reachnet_core::constructors::{
    lazy_to_star, network_to_star, one_reach, t_reach_random, two_reach, two_reach_star, two_unif_star,
    waksman_permutation_network, RandomConstructionParams, DEFAULT_MAX_RETRIES,
};
use reachnet_core::format::{parse_with_comments, render, NetworkFile};
use reachnet_core::search::{min_length, Pruning, SearchSpec, StartLevel, DEFAULT_NODE_BUDGET};
use reachnet_core::verify::{
    verify_permutation_network_with, verify_reachability_with, verify_uniformity_with, VerifyOptions, DEFAULT_BUDGET,
};
use reachnet_core::Error;

#[derive(Debug, Parser)]
#[command(name = "reachnet", version, about = "Build, verify, search and analyze transposition reachability networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    OneReach,
    TwoReach,
    TwoReachStar,
    Waksman,
    TReachRandom,
    TwoUnifStar,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Edges,
    Deficit,
    Occurrences,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a network from one of the built-in families.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(short)]
        n: u32,
        /// Reachability order (t-reach-random only).
        #[arg(short)]
        t: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        /// Exponent slack as a fraction such as `1/5` (t-reach-random only).
        #[arg(long)]
        epsilon: Option<Ratio<u64>>,
        #[arg(long)]
        max_retries: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a network file. Reads stdin when FILE is `-`.
    Verify {
        file: String,
        #[arg(short, required_unless_present = "permutation")]
        t: Option<u32>,
        /// Check exact t-uniformity of a lazy network.
        #[arg(long, conflicts_with = "permutation")]
        uniform: bool,
        /// Check that every permutation of [n] is realised.
        #[arg(long, conflicts_with = "t")]
        permutation: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Keep applying transpositions after every tuple is reached.
        #[arg(long)]
        no_early_exit: bool,
    },
    /// Find a shortest network by exhaustive search.
    Search {
        #[arg(short)]
        n: u32,
        #[arg(short)]
        t: u32,
        #[arg(long)]
        star: bool,
        #[arg(long)]
        max_len: Option<usize>,
        /// Node budget across all levels.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        no_prune: bool,
        /// Start at the closed-form minimum instead of proving shorter
        /// lengths infeasible.
        #[arg(long)]
        from_known_bound: bool,
        /// Write the witness here; stdout then only gets the summary.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print an edge coloring, deficit table or occurrence classes.
    Analyze {
        file: String,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Rewrite a network over star transpositions only.
    Convert {
        file: String,
        #[arg(long, required = true)]
        to_star: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure carrying the process exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } | Error::SearchBudgetExceeded { .. } | Error::RetriesExhausted(_) => 3,
            Error::NoNetworkWithin(_) => 1,
            _ => 2,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

type Outcome = Result<bool, Failure>;

fn cmdline() -> String {
    let rest: Vec<String> = std::env::args().skip(1).collect();
    format!("cmdline: reachnet {}", rest.join(" "))
}

fn read_input(file: &str) -> Result<(NetworkFile, Vec<String>), Failure> {
    let text = if file == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(file).map_err(|e| usage(format!("{file}: {e}")))?
    };
    parse_with_comments(&text).map_err(|e| usage(format!("{file}: {e}")))
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report(text: &str) {
    println!("# {}", cmdline());
    println!("{}", text.trim_end());
}

fn gen(
    family: Family,
    n: u32,
    t: Option<u32>,
    seed: Option<u64>,
    epsilon: Option<Ratio<u64>>,
    max_retries: Option<u32>,
    out: Option<&PathBuf>,
) -> Outcome {
    let random = matches!(family, Family::TReachRandom);
    if !random && (seed.is_some() || epsilon.is_some() || max_retries.is_some()) {
        return Err(usage("--seed, --epsilon and --max-retries apply only to t-reach-random"));
    }
    if !random && t.is_some() {
        return Err(usage("-t applies only to t-reach-random"));
    }
    let mut comments = vec![cmdline()];
    let file = match family {
        Family::OneReach => NetworkFile::Plain(one_reach(n)?),
        Family::TwoReach => NetworkFile::Plain(two_reach(n)?),
        Family::TwoReachStar => NetworkFile::Plain(two_reach_star(n)?),
        Family::Waksman => NetworkFile::Plain(waksman_permutation_network(n)?),
        Family::TwoUnifStar => NetworkFile::Lazy(two_unif_star(n)?),
        Family::TReachRandom => {
            let t = t.ok_or_else(|| usage("t-reach-random needs -t"))?;
            let mut params = RandomConstructionParams::new(t, n, seed.unwrap_or(0));
            if let Some(eps) = epsilon {
                params.epsilon = eps;
            }
            params.max_retries = max_retries.unwrap_or(DEFAULT_MAX_RETRIES);
            let built = t_reach_random(&params)?;
            comments.push(format!("seed {}", params.seed));
            comments.push(format!("epsilon {}", params.epsilon));
            comments.push(format!("phases {}", built.phases));
            comments.push(format!("retries {}", built.retries));
            NetworkFile::Plain(built.network)
        }
    };
    write_output(out, &render(&file, &comments))?;
    Ok(true)
}

fn verify(file: &str, t: Option<u32>, uniform: bool, permutation: bool, budget: u64, early_exit: bool) -> Outcome {
    let (net, _) = read_input(file)?;
    let opts = VerifyOptions { budget, early_exit };
    let (ok, text) = match (net, uniform) {
        (NetworkFile::Lazy(lazy), true) => {
            let v = verify_uniformity_with(&lazy, t.unwrap_or(0), budget)?;
            (v.ok, v.to_string())
        }
        (NetworkFile::Plain(_), true) => return Err(usage("--uniform needs a lazy network")),
        (NetworkFile::Lazy(_), false) => return Err(usage("lazy network given; pass --uniform")),
        (NetworkFile::Plain(plain), false) => {
            let v = if permutation {
                verify_permutation_network_with(&plain, opts)?
            } else {
                verify_reachability_with(&plain, t.unwrap_or(0), opts)?
            };
            (v.ok, v.to_string())
        }
    };
    report(&text);
    Ok(ok)
}

#[allow(clippy::too_many_arguments)]
fn search(
    n: u32,
    t: u32,
    star: bool,
    max_len: Option<usize>,
    budget: u64,
    threads: usize,
    no_prune: bool,
    from_known_bound: bool,
    out: Option<&PathBuf>,
) -> Outcome {
    if threads == 0 {
        return Err(usage("--threads must be positive"));
    }
    let mut spec = SearchSpec::new(n, t, star);
    spec.max_len = max_len;
    spec.budget = budget;
    spec.threads = threads;
    if no_prune {
        spec.pruning = Pruning::NONE;
    }
    if from_known_bound {
        if t > 2 {
            return Err(usage("--from-known-bound needs t <= 2"));
        }
        spec.start = StartLevel::KnownBound;
    }
    let result = min_length(&spec)?;
    let summary = result.to_string();
    let witness = render(&NetworkFile::Plain(result.witness), &[cmdline(), summary.clone()]);
    match out {
        Some(_) => {
            write_output(out, &witness)?;
            report(&summary);
        }
        None => {
            print!("{witness}");
            println!("{summary}");
        }
    }
    Ok(true)
}

fn analyze(file: &str, mode: Mode) -> Outcome {
    let net = match read_input(file)?.0 {
        NetworkFile::Plain(net) => net,
        NetworkFile::Lazy(lazy) => lazy.strip(),
    };
    let text = match mode {
        Mode::Edges => color_edges(&net, [1, 2])?.render(&net),
        Mode::Deficit => deficit_report(&net)?.to_string(),
        Mode::Occurrences => star_occurrence_classes(&net)?.render(&net),
    };
    report(&text);
    Ok(true)
}

fn convert(file: &str, out: Option<&PathBuf>) -> Outcome {
    let (net, old) = read_input(file)?;
    let converted = match net {
        NetworkFile::Plain(net) => NetworkFile::Plain(network_to_star(&net)),
        NetworkFile::Lazy(lazy) => NetworkFile::Lazy(lazy_to_star(&lazy)),
    };
    let mut comments = vec![cmdline()];
    comments.extend(old.into_iter().map(|c| format!("source {c}")));
    write_output(out, &render(&converted, &comments))?;
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen { family, n, t, seed, epsilon, max_retries, out } => {
            gen(family, n, t, seed, epsilon, max_retries, out.as_ref())
        }
        Command::Verify { file, t, uniform, permutation, budget, no_early_exit } => {
            verify(&file, t, uniform, permutation, budget, !no_early_exit)
        }
        Command::Search { n, t, star, max_len, budget, threads, no_prune, from_known_bound, out } => {
            search(n, t, star, max_len, budget, threads, no_prune, from_known_bound, out.as_ref())
        }
        Command::Analyze { file, mode } => analyze(&file, mode),
        Command::Convert { file, out, .. } => convert(&file, out.as_ref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("reachnet: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
