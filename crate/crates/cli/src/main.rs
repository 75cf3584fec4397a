//! Command-line front end: convertibility checks, catalyst tests and seeded sweeps.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use majorcat_core::experiments::{run_experiment, write_output, ExperimentConfig, ExperimentKind, OutputFormat};
use majorcat_core::slocc::multi_copy_series;
use majorcat_core::{
    feng_is_catalyst, is_catalyst, min_self_catalysis_copies, oracle_is_prob_catalyst, page_entropy, slocc_report,
    verdict, Error, Mode, Rational, Result, Scalar, SchmidtVector,
};

#[derive(Parser)]
#[command(name = "majorcat", version, about = "Entanglement conversion and catalysis from Schmidt vectors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pair {
    /// Source Schmidt vector, e.g. 0.4,0.4,0.1,0.1 or 1/2,1/2
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Target Schmidt vector
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    /// Use exact rational arithmetic
    #[arg(long)]
    exact: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Deterministic LOCC verdict between two states.
    Check {
        #[command(flatten)]
        pair: Pair,
    },
    /// Optimal SLOCC conversion probability with N copies of alpha attached.
    Prob {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 0)]
        copies: usize,
    },
    /// Tests whether kappa catalyzes the conversion.
    Catalyst {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        #[arg(long, default_value_t = 1)]
        copies: usize,
        /// Probabilistic catalysis: criterion and brute-force oracle
        #[arg(long)]
        prob: bool,
    },
    /// Smallest number of extra copies of alpha that helps.
    Selfcat {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 12)]
        max_copies: usize,
        /// Look for a probability gain instead of a deterministic conversion
        #[arg(long)]
        prob: bool,
    },
    /// Runs a seeded Monte Carlo experiment.
    Sample(SampleArgs),
    /// Prints Page's mean normalized entropy.
    Page {
        /// Dimensions: comma list and/or ranges like 2..100:7
        #[arg(long)]
        dims: String,
    },
}

#[derive(Args)]
struct SampleArgs {
    /// selfcat-locc, entropy, conv-rate, selfcat-slocc, gain, gain-scatter or bound
    #[arg(long)]
    kind: String,
    /// Dimensions: comma list and/or ranges like 3..30 or 2..100:7
    #[arg(long)]
    dims: String,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
    #[arg(long, default_value_t = majorcat_core::experiments::DEFAULT_GAIN_THRESHOLD)]
    gain_threshold: f64,
    #[arg(long, default_value_t = 1)]
    copies: usize,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = majorcat_core::experiments::DEFAULT_MAX_DRAWS)]
    max_draws: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("majorcat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Check { pair } => {
            if pair.exact {
                check::<Rational>(&pair)
            } else {
                check::<f64>(&pair)
            }
        }
        Command::Prob { pair, copies } => {
            if pair.exact {
                prob::<Rational>(&pair, copies)
            } else {
                prob::<f64>(&pair, copies)
            }
        }
        Command::Catalyst { pair, kappa, copies, prob } => {
            if pair.exact {
                catalyst::<Rational>(&pair, &kappa, copies, prob)
            } else {
                catalyst::<f64>(&pair, &kappa, copies, prob)
            }
        }
        Command::Selfcat { pair, max_copies, prob } => {
            if pair.exact {
                selfcat::<Rational>(&pair, max_copies, prob)
            } else {
                selfcat::<f64>(&pair, max_copies, prob)
            }
        }
        Command::Sample(args) => sample(args),
        Command::Page { dims } => {
            let mut out = String::from("dim,page_value\n");
            for d in parse_dims(&dims)? {
                out.push_str(&format!("{d},{}\n", page_entropy(d)?));
            }
            Ok(out)
        }
    }
}

type Vecs<T> = (SchmidtVector<T>, SchmidtVector<T>);

fn parse_pair<T: Scalar>(pair: &Pair) -> Result<Vecs<T>> {
    Ok((SchmidtVector::parse(&pair.alpha)?, SchmidtVector::parse(&pair.beta)?))
}

fn check<T: Scalar>(pair: &Pair) -> Result<String> {
    let (a, b) = parse_pair::<T>(pair)?;
    Ok(format!("{}\n", verdict(&a, &b)))
}

fn show<T: Scalar>(x: &T) -> String {
    match T::MODE {
        Mode::Exact => format!("{} ≈ {:.6}", x.render(), x.to_f64()),
        Mode::Float => x.render(),
    }
}

fn show_set(set: &BTreeSet<usize>) -> String {
    let items: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn prob<T: Scalar>(pair: &Pair, copies: usize) -> Result<String> {
    let (a, b) = parse_pair::<T>(pair)?;
    let power = a.tensor_power(copies);
    let (ac, bc) = (a.tensor(&power), b.tensor(&power));
    let report = slocc_report(&ac, &bc)?;
    if T::MODE == Mode::Float && report.minimizer_set.len() > 1 {
        eprintln!("majorcat: warning: several indices attain the minimum within float tolerance; rerun with --exact");
    }
    let mut out = format!("P_S = {}\n", show(&report.p_direct));
    out.push_str(&format!("ceiling = {}\n", show(&report.ceiling)));
    out.push_str(&format!("improvable = {}\n", report.improvable));
    if report.improvable {
        out.push_str(&format!("L = {}\n", show_set(&report.minimizer_set)));
    }
    Ok(out)
}

fn catalyst<T: Scalar>(pair: &Pair, kappa: &str, copies: usize, prob: bool) -> Result<String> {
    let (a, b) = parse_pair::<T>(pair)?;
    let kappa = SchmidtVector::<T>::parse(kappa)?;
    if !prob {
        let r = is_catalyst(&a, &b, &kappa, copies)?;
        return Ok(format!("direct = {}\ncatalyzed = {}\n", r.direct_verdict, r.catalyzed));
    }
    let power = kappa.tensor_power(copies);
    let criterion = feng_is_catalyst(&a, &b, &power)?;
    let oracle = oracle_is_prob_catalyst(&a, &b, &power);
    let mut out = format!("criterion = {criterion}\noracle = {oracle}\n");
    if criterion != oracle {
        eprintln!("majorcat: warning: criterion and oracle disagree");
        out.push_str("disagreement = true\n");
    }
    Ok(out)
}

fn selfcat<T: Scalar>(pair: &Pair, max_copies: usize, prob: bool) -> Result<String> {
    let (a, b) = parse_pair::<T>(pair)?;
    if !prob {
        return Ok(match min_self_catalysis_copies(&a, &b, max_copies)? {
            Some(n) => format!("N={n}\n"),
            None => format!("no N <= {max_copies}\n"),
        });
    }
    let series = multi_copy_series(&a, &b, max_copies);
    let first = series.iter().position(|p| *p > series[0]);
    let mut out = match first {
        Some(n) => format!("N={n}\n"),
        None => format!("no N <= {max_copies}\n"),
    };
    for (n, p) in series.iter().enumerate() {
        out.push_str(&format!("P_S(N={n}) = {}\n", show(p)));
    }
    Ok(out)
}

fn sample(args: SampleArgs) -> Result<String> {
    let kind: ExperimentKind = args.kind.parse()?;
    let mut cfg = ExperimentConfig::new(kind, parse_dims(&args.dims)?, args.trials, args.seed);
    cfg.format = args.format.parse::<OutputFormat>()?;
    cfg.gain_threshold = args.gain_threshold;
    cfg.copies = args.copies;
    cfg.workers = args.workers;
    cfg.max_draws = args.max_draws;
    cfg.out_path = args.out.clone();
    let output = run_experiment(&cfg)?;
    match &args.out {
        Some(path) => {
            write_output(&output, &cfg, path)?;
            let mut err = std::io::stderr();
            let _ = writeln!(err, "majorcat: wrote {} rows to {}", output.row_count(), path.display());
            Ok(String::new())
        }
        None => Ok(output.render(&cfg)),
    }
}

/// Parses `3,5,10`, `3..30` and `2..100:7`, in any comma-separated mix.
fn parse_dims(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("bad dimension list {text:?}"));
    let number = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let mut dims = Vec::new();
    for part in text.split(',') {
        match part.split_once("..") {
            None => dims.push(number(part)?),
            Some((lo, rest)) => {
                let (hi, step) = match rest.split_once(':') {
                    Some((hi, step)) => (hi, number(step)?),
                    None => (rest, 1),
                };
                let (lo, hi) = (number(lo)?, number(hi)?);
                if step == 0 || lo > hi {
                    return Err(bad());
                }
                dims.extend((lo..=hi).step_by(step));
            }
        }
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::parse_dims;

    #[test]
    fn dims_syntax() {
        assert_eq!(parse_dims("3,5,10").unwrap(), vec![3, 5, 10]);
        assert_eq!(parse_dims("3..6").unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_dims("2..20:7").unwrap(), vec![2, 9, 16]);
        assert_eq!(parse_dims("2, 4..5").unwrap(), vec![2, 4, 5]);
        assert!(parse_dims("5..3").is_err());
        assert!(parse_dims("2..9:0").is_err());
        assert!(parse_dims("x").is_err());
    }
}
