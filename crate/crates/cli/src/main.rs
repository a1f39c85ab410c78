use clap::{Parser, Subcommand};

use scalar_cli::commands;

/// Part-of-speech tagger for source-code identifiers.
#[derive(Parser)]
#[command(name = "scalar", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train a model from a TSV dataset and report held-out metrics
    Train(commands::TrainArgs),
    /// Evaluate a trained model on a dataset
    Evaluate(commands::EvaluateArgs),
    /// Tag a single identifier and print the JSON annotation
    Tag(commands::TagArgs),
    /// Run the HTTP tagging service
    Serve(commands::ServeArgs),
    /// Validate a dataset file and print per-tag counts
    IngestCheck(commands::IngestCheckArgs),
}

fn main() {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| "info".into()),
        )
        .with_writer(std::io::stderr)
        .init();

    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Train(args) => commands::train(args),
        Command::Evaluate(args) => commands::evaluate(args),
        Command::Tag(args) => commands::tag(args),
        Command::Serve(args) => commands::serve(args),
        Command::IngestCheck(args) => commands::ingest_check(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
