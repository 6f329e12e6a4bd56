//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use dramalyze_core::lexstats::word_frequencies;
use dramalyze_core::segment::segment_stream;

use crate::config::{self, RunConfig, Settings, CONFIG_ENV};
use crate::io::load_document;
use crate::{output, pipeline, Error, EXIT_OK, EXIT_USAGE};

#[derive(Debug, Parser)]
#[command(
    name = "dramalyze",
    version,
    about = "Measure rhythm, repetition and emotion in dramatic texts",
    after_help = "Flags may also be set in a TOML config file whose keys are the flag names \
                  without dashes (e.g. segment-size = 30). Precedence: defaults < config file < flags. \
                  The config file is taken from --config, else from $DRAMALYZE_CONFIG.\n\n\
                  Exit codes: 0 success, 1 usage error, 2 data or validation error."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML config file [default: $DRAMALYZE_CONFIG]
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub settings: Settings,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full pipeline: report.json, tables/*.csv and four SVG charts under --out
    Analyze(Input),
    /// Print the top-n word frequency table (rank,word,count)
    Freq(Input),
    /// Print the longest repeated token sequences as JSON
    Motifs(Input),
    /// Print occurrence positions of the tracked words (word,position)
    Occurrences(Input),
    /// Print the emotion profile (label,mean,dominant_count)
    Emotions(Input),
    /// Print the cleaned text
    Clean(Input),
}

#[derive(Debug, Args)]
pub struct Input {
    /// UTF-8 plain-text input file
    pub input: PathBuf,
}

impl Command {
    fn input(&self) -> &Input {
        match self {
            Command::Analyze(i)
            | Command::Freq(i)
            | Command::Motifs(i)
            | Command::Occurrences(i)
            | Command::Emotions(i)
            | Command::Clean(i) => i,
        }
    }
}

/// Runs the tool with `argv` (including the program name), reading the
/// config-file fallback from the environment.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(argv, std::env::var_os(CONFIG_ENV), out, err)
}

/// Like [`run`] with an explicit value for the config environment variable.
pub fn run_with_env<I, T>(
    argv: I,
    env_config: Option<OsString>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli, env_config, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(
    cli: Cli,
    env_config: Option<OsString>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Error> {
    let input = cli.command.input().input.clone();
    let config_file = config::config_path(cli.config.as_deref(), env_config);
    let cfg = config::layered(input, config_file.as_deref(), cli.settings)?;
    let raw = load_document(&cfg.input_path)?;
    let text = match &cli.command {
        Command::Analyze(_) => return analyze(&cfg, &raw, out, err),
        Command::Clean(_) => {
            let p = pipeline::prepare(&raw, &cfg);
            let mut s = p.clean.content;
            if !s.is_empty() && !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
        Command::Freq(_) => {
            let p = pipeline::prepare(&raw, &cfg);
            let stop = pipeline::load_stoplist(&cfg)?;
            output::frequency_csv(&word_frequencies(&p.stream, &stop.words), cfg.top_n)
        }
        Command::Motifs(_) => {
            let p = pipeline::prepare(&raw, &cfg);
            output::motifs_json(&pipeline::motifs(&p, &cfg.motif)?)
        }
        Command::Occurrences(_) => {
            let p = pipeline::prepare(&raw, &cfg);
            let stop = pipeline::load_stoplist(&cfg)?;
            let freq = word_frequencies(&p.stream, &stop.words);
            let words = pipeline::tracked_words(&cfg, &freq);
            let tracks: Vec<_> = words
                .iter()
                .map(|w| dramalyze_core::occurrence::track_word(&p.stream, w))
                .collect();
            for t in tracks.iter().filter(|t| t.positions.is_empty()) {
                warn(err, &[format!("tracked word {:?} does not occur", t.norm)]);
            }
            output::occurrences_csv(&tracks)
        }
        Command::Emotions(_) => {
            let p = pipeline::prepare(&raw, &cfg);
            let segments = segment_stream(&p.stream, cfg.segment_size)?;
            let emo = pipeline::emotions(&cfg, &p.stream, &segments)?;
            warn(err, &emo.warnings);
            output::emotion_summary_csv(emo.profile.as_ref())
        }
    };
    write_out(out, &text)
}

fn analyze(
    cfg: &RunConfig,
    raw: &dramalyze_core::RawDocument,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Error> {
    let analysis = pipeline::analyze(raw, cfg)?;
    warn(err, &analysis.warnings);
    let written = output::write_analysis(&cfg.out_dir, &analysis)?;
    let mut listing = String::new();
    for p in written {
        listing.push_str(&p.display().to_string());
        listing.push('\n');
    }
    write_out(out, &listing)
}

fn warn(err: &mut dyn Write, warnings: &[String]) {
    for w in warnings {
        let _ = writeln!(err, "warning: {w}");
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), Error> {
    out.write_all(text.as_bytes())
        .map_err(|source| Error::Write {
            path: PathBuf::from("<stdout>"),
            source,
        })
}
