use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use inkspace::config::{LoadedConfig, OUT_DIR_ENV};
use inkspace::synth::{generate, sample_config, write_corpus, SynthOptions};
use inkspace::{AppError, AppResult, Run};

/// Coverage imbalance, clustering, embedding association, place coverage and
/// language-model probes over a news corpus.
#[derive(Debug, Parser)]
#[command(name = "inkspace", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Common {
    /// Run configuration (TOML).
    #[arg(long, short)]
    config: PathBuf,
    /// Output directory; overrides the environment and the config.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Seed; overrides the config.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the config and inputs without computing anything.
    Validate {
        #[arg(long, short)]
        config: PathBuf,
    },
    /// Monthly imbalance series and aggregate tables.
    Metrics(Common),
    /// DTW distances and hierarchical clustering of the imbalance series.
    Cluster(Common),
    /// Yearly embeddings and party-attribute association.
    Weat(Common),
    /// Place coverage shares and homogeneity trends.
    Geo(Common),
    /// Mask-filling vote probes per year.
    Probe(Common),
    /// Every analysis plus a combined report with provenance.
    Report(Common),
    /// Write a seeded synthetic corpus and a matching config.
    Synth {
        /// Directory receiving config.toml and corpus/.
        #[arg(long, short, env = OUT_DIR_ENV)]
        out: PathBuf,
        #[arg(long, default_value_t = SynthOptions::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SynthOptions::default().years)]
        years: usize,
        #[arg(long, default_value_t = SynthOptions::default().articles_per_month)]
        articles_per_month: usize,
    },
}

fn run_common(c: &Common, f: fn(&Run) -> AppResult<Vec<PathBuf>>) -> AppResult<()> {
    let run = Run::load(&c.config, c.out.as_deref(), c.seed)?;
    for p in f(&run)? {
        println!("{}", p.display());
    }
    Ok(())
}

fn synth(out: &Path, options: SynthOptions) -> AppResult<()> {
    let articles = generate(&options);
    for p in write_corpus(&out.join("corpus"), &articles)? {
        println!("{}", p.display());
    }
    let config = out.join("config.toml");
    inkspace::io::write_bytes(&config, sample_config("corpus", options.seed).as_bytes())?;
    println!("{}", config.display());
    Ok(())
}

fn dispatch(cli: Cli) -> AppResult<()> {
    match cli.command {
        Command::Validate { config } => {
            let cfg = LoadedConfig::from_file(&config)?;
            let inputs = inkspace::pipeline::Inputs::load(&cfg)?;
            println!("ok: {} articles, {} skipped records", inputs.articles.len(), inputs.skip_count());
            Ok(())
        }
        Command::Metrics(c) => run_common(&c, Run::metrics),
        Command::Cluster(c) => run_common(&c, Run::cluster),
        Command::Weat(c) => run_common(&c, Run::weat),
        Command::Geo(c) => run_common(&c, Run::geo),
        Command::Probe(c) => run_common(&c, Run::probe),
        Command::Report(c) => run_common(&c, Run::report),
        Command::Synth { out, seed, years, articles_per_month } => {
            if years == 0 || articles_per_month == 0 {
                return Err(AppError::data("years and articles per month must be positive"));
            }
            synth(&out, SynthOptions { seed, years, articles_per_month, ..SynthOptions::default() })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
