use clap::{Args, Parser, Subcommand};

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(name = "finring", version, about = "Census, theorem checks and witness search over finite rings")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "human")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Element sets and ring flags of one ring, or every flag of one element.
    Census {
        /// Ring expression, e.g. 'star(product(Zn(2),Zn(2)),swap)'.
        spec: String,
        /// Show one element's profile with witnesses (display name or #id).
        #[arg(long)]
        element: Option<String>,
        /// Attach an involution: id, swap, transpose, frobenius, enumerated:K.
        #[arg(long)]
        star: Option<String>,
        /// Attach a central polynomial with integer coefficients, e.g. 'x^2-x'.
        #[arg(long)]
        g: Option<String>,
    },
    /// Run checks C01..C33 on given rings or on the generated corpus.
    Verify {
        /// Comma-separated check ids (C01,C07) or 'all'.
        ids: String,
        /// Ring expressions to derive check inputs from.
        specs: Vec<String>,
        /// Use the generated corpus instead of explicit rings.
        #[arg(long, conflicts_with = "specs")]
        corpus: bool,
        /// Corrupt the regularity test (x = xy instead of x = xyx) to show the
        /// checks can fail.
        #[arg(long)]
        mutate: bool,
        #[command(flatten)]
        caps: CapsArgs,
    },
    /// Find corpus rings or elements satisfying a flag query.
    Search {
        /// e.g. 'is_weakly_clean & !is_weakly_star_clean' or
        /// 'element: idempotent & !central & size<=16'.
        query: String,
        #[command(flatten)]
        caps: CapsArgs,
    },
    /// Inspect the generated corpus.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CorpusAction {
    /// One row per corpus ring with its tags and involutions.
    List {
        #[command(flatten)]
        caps: CapsArgs,
    },
}

#[derive(Debug, Args, Clone, Copy)]
pub struct CapsArgs {
    /// Largest ring admitted to the corpus.
    #[arg(long, default_value_t = 256)]
    pub max_size: usize,
    /// Rings up to this size get every involution, not just the standard ones.
    #[arg(long, default_value_t = 16)]
    pub enumerate_involutions: usize,
    /// Stop corpus generation after this many milliseconds.
    #[arg(long)]
    pub time_budget_ms: Option<u64>,
}
