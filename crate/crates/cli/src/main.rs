//! `fwparse`: lexical analysis, syntax analysis and tree generation for
//! POS-tagged sentences.
//!
//! Exit codes: 0 recognized (or every corpus expectation met), 1 not
//! recognized (or some expectation failed), 2 configuration or lexical error.

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fwparse_core::corpus::{self, CorpusResult, Mode};
use fwparse_core::forest::{trees_from_chart, trees_from_freeword};
use fwparse_core::freeword::{initial_productions, FreewordRun};
use fwparse_core::lexicon::VERB_TAG;
use fwparse_core::{
    oracle, recognize, tokenize, FreewordOptions, Grammar, InitPolicy, InputKind, Lexicon,
    Prepared, Trees, DEFAULT_TREE_LIMIT,
};
use rayon::prelude::*;

const DATA_DIR_ENV: &str = "FWPARSE_DATA_DIR";

#[derive(Parser)]
#[command(
    name = "fwparse",
    version,
    about = "Earley parsing for free-word-order languages"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the tags of every word.
    Tag(SentenceArgs),
    /// Report whether the sentence is recognized.
    Parse {
        #[command(flatten)]
        args: SentenceArgs,
        /// Decide with the brute-force derivation search instead of a parser.
        #[arg(long)]
        oracle: bool,
    },
    /// Print the parse trees of the sentence.
    Tree(SentenceArgs),
    /// Run a corpus file and print a CSV summary.
    Corpus {
        /// Corpus file: `words:<sentence>` or `tags:<tags>`, TAB, `expect:accept|reject`.
        corpus: PathBuf,
        #[command(flatten)]
        config: Config,
    },
}

#[derive(Args)]
struct SentenceArgs {
    /// Words of the sentence; a trailing `.` or `।` is dropped.
    #[arg(required_unless_present = "tags")]
    words: Vec<String>,
    /// A pre-tagged sequence such as "PN NP ART NP VP" instead of words.
    #[arg(long, conflicts_with = "words")]
    tags: Option<String>,
    #[command(flatten)]
    config: Config,
}

#[derive(Args, Clone)]
struct Config {
    /// Grammar file, looked up in the data directory when not found as given.
    #[arg(long, default_value = "assamese.cfg")]
    grammar: PathBuf,
    /// Lexicon file; defaults to the `.lex` file next to the grammar, if any.
    #[arg(long)]
    lexicon: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ModeArg::Modified)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = TraceArg::None)]
    trace: TraceArg,
    /// Stop at the first success.
    #[arg(long)]
    first: bool,
    /// Allow every production while the dot is before the last word.
    #[arg(long)]
    no_last_word_restriction: bool,
    #[arg(long, default_value_t = DEFAULT_TREE_LIMIT)]
    tree_limit: usize,
    #[arg(long, alias = "tree-format", value_enum, default_value_t = FormatArg::Listing)]
    format: FormatArg,
    /// Start productions for the modified algorithm.
    #[arg(long, value_enum, default_value_t = InitArg::Verb)]
    init: InitArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Standard,
    Modified,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TraceArg {
    None,
    Goal,
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Listing,
    Sexpr,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InitArg {
    /// The verb-bearing start rule when some word can be a verb.
    Verb,
    /// Every start production.
    All,
}

impl Config {
    fn mode(&self) -> Mode {
        match self.mode {
            ModeArg::Standard => Mode::Standard,
            ModeArg::Modified => Mode::Modified,
        }
    }

    fn freeword_options(&self) -> FreewordOptions {
        FreewordOptions {
            first_only: self.first,
            last_word_restriction: !self.no_last_word_restriction,
            init: match self.init {
                InitArg::Verb => InitPolicy::VerbConditional {
                    verb_tag: VERB_TAG.to_string(),
                },
                InitArg::All => InitPolicy::AllStartProductions,
            },
        }
    }

    fn load(&self) -> Result<(Grammar, Option<Lexicon>)> {
        let grammar_path = resolve(&self.grammar);
        let text = std::fs::read_to_string(&grammar_path)
            .with_context(|| format!("reading grammar {}", grammar_path.display()))?;
        let grammar = Grammar::parse(&text)
            .with_context(|| format!("loading grammar {}", grammar_path.display()))?;
        let lexicon_path = match &self.lexicon {
            Some(path) => Some(resolve(path)),
            None => Some(grammar_path.with_extension("lex")).filter(|p| p.is_file()),
        };
        let lexicon = match lexicon_path {
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("reading lexicon {}", path.display()))?;
                Some(
                    Lexicon::parse(&text)
                        .with_context(|| format!("loading lexicon {}", path.display()))?,
                )
            }
            None => None,
        };
        Ok((grammar, lexicon))
    }
}

fn data_dir() -> PathBuf {
    std::env::var_os(DATA_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

fn resolve(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        path.to_path_buf()
    } else {
        data_dir().join(path)
    }
}

/// A loaded sentence ready for either parser.
struct Session {
    config: Config,
    prepared: Prepared,
}

impl Session {
    fn open(args: &SentenceArgs) -> Result<Session> {
        let (grammar, lexicon) = args.config.load()?;
        let (kind, tokens) = match &args.tags {
            Some(tags) => (InputKind::Tags, tokenize(tags)),
            None => (InputKind::Words, tokenize(&args.words.join(" "))),
        };
        let prepared = Prepared::new(&grammar, lexicon.as_ref(), kind, &tokens)?;
        Ok(Session {
            config: args.config.clone(),
            prepared,
        })
    }

    fn grammar(&self) -> &Grammar {
        &self.prepared.grammar
    }

    fn freeword(&self) -> Result<FreewordRun> {
        let opts = self.config.freeword_options();
        let starts = initial_productions(
            self.grammar(),
            &opts.init,
            self.prepared.sentence.contains_verb(),
        )?;
        Ok(fwparse_core::freeword::parse(
            self.grammar(),
            &self.prepared.words(),
            &starts,
            &opts,
        ))
    }

    /// Runs the selected parser, writing any requested trace, and returns the
    /// trees when the sentence is recognized.
    fn run(&self, out: &mut impl Write) -> Result<Option<Trees>> {
        let g = self.grammar();
        let words = self.prepared.words();
        let limit = self.config.tree_limit;
        let trees = match self.config.mode {
            ModeArg::Standard => {
                let r = recognize(g, &words);
                if self.config.trace != TraceArg::None {
                    write!(out, "{}", r.chart.render_trace(g))?;
                    writeln!(out)?;
                }
                r.accepted
                    .then(|| trees_from_chart(&r.chart, g, &words, limit))
                    .transpose()?
            }
            ModeArg::Modified => {
                let run = self.freeword()?;
                match self.config.trace {
                    TraceArg::None => {}
                    TraceArg::Goal => {
                        for path in run.success_paths(limit) {
                            write!(out, "{}", run.render_path_trace(g, &path))?;
                            writeln!(out)?;
                        }
                    }
                    TraceArg::Full => {
                        write!(out, "{}", run.render_full_trace(g))?;
                        writeln!(out)?;
                    }
                }
                run.accepted()
                    .then(|| trees_from_freeword(&run, g, limit))
                    .transpose()?
            }
        };
        Ok(trees)
    }
}

fn cmd_tag(args: &SentenceArgs, out: &mut impl Write) -> Result<ExitCode> {
    let session = Session::open(args)?;
    for token in &session.prepared.sentence.tokens {
        writeln!(out, "{}\t{}", token.word, token.tags.join(","))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_parse(args: &SentenceArgs, use_oracle: bool, out: &mut impl Write) -> Result<ExitCode> {
    let session = Session::open(args)?;
    let recognized = if use_oracle {
        oracle::derives(session.grammar(), &session.prepared.words())?
    } else {
        session.run(out)?.is_some()
    };
    Ok(verdict(recognized, out)?)
}

fn verdict(recognized: bool, out: &mut impl Write) -> io::Result<ExitCode> {
    if recognized {
        writeln!(out, "SENTENCE RECOGNIZED")?;
        Ok(ExitCode::SUCCESS)
    } else {
        writeln!(out, "SENTENCE NOT RECOGNIZED")?;
        Ok(ExitCode::from(1))
    }
}

fn cmd_tree(args: &SentenceArgs, out: &mut impl Write) -> Result<ExitCode> {
    let session = Session::open(args)?;
    let trees = session.run(out)?;
    writeln!(
        out,
        "INPUT SENTENCE--> : {}.",
        session.prepared.words().join(" ")
    )?;
    writeln!(out)?;
    let Some(trees) = trees else {
        return Ok(verdict(false, out)?);
    };
    verdict(true, out)?;
    for tree in &trees.trees {
        writeln!(out)?;
        writeln!(out, "TREE-->")?;
        writeln!(out)?;
        match session.config.format {
            FormatArg::Listing => write!(out, "{}", tree.render_listing())?,
            FormatArg::Sexpr => writeln!(out, "{}", tree.to_sexpr())?,
        }
    }
    if trees.truncated {
        writeln!(out)?;
        writeln!(
            out,
            "... more trees not shown (limit {})",
            session.config.tree_limit
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_corpus(path: &Path, config: &Config, out: &mut impl Write) -> Result<ExitCode> {
    let (grammar, lexicon) = config.load()?;
    let path = resolve(path);
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("reading corpus {}", path.display()))?;
    let entries = corpus::parse_corpus(&text)
        .with_context(|| format!("loading corpus {}", path.display()))?;
    let opts = config.freeword_options();
    let results: Vec<CorpusResult> = entries
        .par_iter()
        .map(|e| {
            corpus::evaluate(
                e,
                &grammar,
                lexicon.as_ref(),
                config.mode(),
                &opts,
                config.tree_limit,
            )
        })
        .collect();

    let mut csv = csv::Writer::from_writer(&mut *out);
    csv.write_record([
        "line",
        "kind",
        "input",
        "expect",
        "standard",
        "modified",
        "modified_unrestricted",
        "trees",
        "passed",
        "disagreement",
        "error",
    ])?;
    for r in &results {
        let e = &r.entry;
        csv.write_record([
            e.line.to_string(),
            match e.kind {
                InputKind::Tags => "tags".to_string(),
                InputKind::Words | InputKind::Terminals => "words".to_string(),
            },
            e.text(),
            match e.expect {
                corpus::Expectation::Accept => "accept".to_string(),
                corpus::Expectation::Reject => "reject".to_string(),
            },
            yes_no(r.standard),
            yes_no(r.modified),
            yes_no(r.modified_unrestricted),
            r.trees.to_string(),
            yes_no(r.passed()),
            yes_no(r.disagreement()),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    csv.flush()?;
    drop(csv);
    let passed = results.iter().filter(|r| r.passed()).count();
    eprintln!("{passed}/{} expectations met", results.len());
    Ok(if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = match &cli.command {
        Command::Tag(args) => cmd_tag(args, &mut out),
        Command::Parse { args, oracle } => cmd_parse(args, *oracle, &mut out),
        Command::Tree(args) => cmd_tree(args, &mut out),
        Command::Corpus { corpus, config } => cmd_corpus(corpus, config, &mut out),
    };
    out.flush()?;
    code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn relative_paths_fall_back_to_the_data_dir() {
        assert!(resolve(Path::new("assamese.cfg")).is_file());
        assert!(resolve(Path::new("english.lex")).is_file());
    }
}
