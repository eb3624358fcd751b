//! Front end for `finring`: argument parsing, commands and report rendering.

pub mod args;
pub mod commands;
pub mod report;

pub use args::{Cli, Command, CorpusAction};
pub use commands::{CliError, Outcome};
pub use report::{Format, Record, ReportDocument};

/// Run a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let f = cli.format;
    match &cli.command {
        Command::Census { spec, element, star, g } => {
            commands::census(spec, element.as_deref(), star.as_deref(), g.as_deref(), f)
        }
        Command::Verify { ids, specs, corpus, mutate, caps } => commands::verify(ids, specs, *corpus, *mutate, caps, f),
        Command::Search { query, caps } => commands::search(query, caps, f),
        Command::Corpus { action: CorpusAction::List { caps } } => Ok(commands::corpus_list(caps, f)),
    }
}
