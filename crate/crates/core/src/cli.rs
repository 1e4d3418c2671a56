//! `zerr` command-line dispatch.
//!
//! Exit codes: 0 on success (any emitted certificate counts), 1 when a
//! verification or simulation finds a failure, 2 on usage or input errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::certify::{self, CertifyInput};
use crate::constructions::{self, cabello18, xu_family};
use crate::error::{Error, Result};
use crate::graph;
use crate::io;
use crate::limits::Limits;
use crate::protocol::{self, TranscriptSummary};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "zerr", version, about = "Zero-error capacity and quantum-assisted superadditivity toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Builtin {
    Cabello18,
    Xu,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a built-in construction as channel + vector files.
    Generate {
        #[arg(value_enum)]
        which: Builtin,
        /// Family parameter for `xu`.
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        out_channel: PathBuf,
        #[arg(long)]
        out_vectors: PathBuf,
    },
    /// Independence number of a graph or of a channel's confusability graph.
    Alpha {
        file: PathBuf,
        /// Also print a maximum independent set.
        #[arg(long)]
        witness: bool,
    },
    /// Strong product of two graphs, as graph JSON.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perfect-graph test with an odd hole / antihole witness.
    Perfect { file: PathBuf },
    /// Construction checks plus exhaustive zero-error protocol verification.
    Verify {
        channel: PathBuf,
        vectors: PathBuf,
        /// JSON-lines transcript of every (message, output) pair.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Monte Carlo run of the protocol.
    Simulate {
        channel: PathBuf,
        vectors: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Emit a superadditivity / no-go certificate.
    Certify {
        channel: PathBuf,
        #[arg(long)]
        vectors: Option<PathBuf>,
        #[arg(long)]
        assist_dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Zero-error capacity with a perfect classical d-level channel.
    Baseline {
        channel: PathBuf,
        #[arg(long)]
        d: usize,
    },
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn run(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    let limits = Limits::from_env();
    match cmd {
        Command::Generate {
            which,
            m,
            out_channel,
            out_vectors,
        } => {
            let c = match which {
                Builtin::Cabello18 => cabello18(),
                Builtin::Xu => xu_family(m)?,
            };
            io::export(&c, &out_channel, &out_vectors)?;
            writeln!(
                out,
                "{}: {} inputs, {} outputs, dimension {}",
                c.name,
                c.hypergraph().inputs().len(),
                c.hypergraph().hyperedges().len(),
                c.vectors.dimension()
            )?;
            Ok(EXIT_OK)
        }
        Command::Alpha { file, witness } => {
            let g = io::load_graph_or_channel(&file)?.graph();
            let w = graph::independence_number_with_limit(&g, limits.alpha)?;
            writeln!(out, "{}", w.size)?;
            if witness {
                writeln!(out, "{}", serde_json::to_string(&w.members)?)?;
            }
            Ok(EXIT_OK)
        }
        Command::Product { left, right, out: path } => {
            let g = io::load_graph_or_channel(&left)?.graph();
            let h = io::load_graph_or_channel(&right)?.graph();
            let p = g.strong_product(&h).to_file();
            match path {
                Some(path) => io::write_json(&path, &p)?,
                None => writeln!(out, "{}", serde_json::to_string_pretty(&p)?)?,
            }
            Ok(EXIT_OK)
        }
        Command::Perfect { file } => {
            let g = io::load_graph_or_channel(&file)?.graph();
            let v = graph::is_perfect_with_limit(&g, limits.perfect)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&v)?)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            channel,
            vectors,
            transcript,
        } => {
            let c = io::load_construction(&channel, &vectors)?;
            let report = constructions::verify_construction_with(&c, limits);
            for k in &report.checks {
                writeln!(out, "[{}] {}: {}", if k.pass { "PASS" } else { "FAIL" }, k.check, k.detail)?;
            }
            for note in &report.notes {
                writeln!(out, "note: {note}")?;
            }
            let cb = protocol::full_codebook(&c);
            let ex = protocol::verify_zero_error_exhaustive(&c, &cb);
            writeln!(
                out,
                "[{}] zero_error_protocol: {} pairs, min correct p = {:.12}, max wrong p = {:.3e}",
                if ex.passed() { "PASS" } else { "FAIL" },
                ex.pairs_checked,
                ex.min_correct_probability,
                ex.max_wrong_probability
            )?;
            for f in &ex.failures {
                writeln!(out, "  failing pair: message {} (vertex {}) output {}: {}", f.message, f.vertex, f.output, f.reason)?;
            }
            if let Some(path) = transcript {
                let alpha = match report.alpha {
                    Some(a) => Some(a),
                    None => graph::independence_number_with_limit(&c.confusability_graph(), limits.alpha)
                        .ok()
                        .map(|w| w.size),
                };
                let summary = TranscriptSummary {
                    name: c.name.clone(),
                    mode: "exhaustive".into(),
                    achieved: ex.certified,
                    baseline: alpha.map(|a| a * c.vectors.dimension()),
                    gap: match (ex.certified, alpha) {
                        (Some(n), Some(a)) => Some(n as i64 - (a * c.vectors.dimension()) as i64),
                        _ => None,
                    },
                    trials: None,
                    successes: None,
                };
                io::write_transcript(std::fs::File::create(path)?, &ex.transcript, &summary)?;
            }
            match ex.certified {
                Some(n) if report.passed() => {
                    writeln!(out, "certified {n} messages")?;
                    Ok(EXIT_OK)
                }
                _ => Ok(EXIT_FAILED),
            }
        }
        Command::Simulate {
            channel,
            vectors,
            trials,
            seed,
            transcript,
        } => {
            let c = io::load_construction(&channel, &vectors)?;
            let cb = protocol::full_codebook(&c);
            let r = protocol::simulate_monte_carlo(&c, &cb, trials, seed)?;
            writeln!(out, "{}/{} successful (fraction {})", r.successes, r.trials, r.success_fraction())?;
            if let Some(path) = transcript {
                let summary = TranscriptSummary {
                    name: c.name.clone(),
                    mode: "monte_carlo".into(),
                    achieved: None,
                    baseline: None,
                    gap: None,
                    trials: Some(r.trials),
                    successes: Some(r.successes),
                };
                io::write_transcript(std::fs::File::create(path)?, &r.transcript, &summary)?;
            }
            Ok(if r.successes == r.trials { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Certify {
            channel,
            vectors,
            assist_dim,
            out: path,
        } => {
            let ch = io::load_channel(&channel)?;
            let vs = vectors.as_deref().map(io::load_vectors).transpose()?;
            let name = channel
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let cert = certify::certify_with(
                CertifyInput {
                    name: &name,
                    channel: &ch,
                    vectors: vs.as_ref(),
                },
                assist_dim,
                limits,
            )?;
            cert.validate()?;
            let json = cert.to_json()?;
            match path {
                Some(path) => {
                    std::fs::write(&path, format!("{json}\n"))?;
                    writeln!(
                        out,
                        "verdict {} (n = {}, alpha = {}, dim = {}, baseline = {}, achieved = {})",
                        serde_json::to_value(cert.verdict)?.as_str().unwrap_or_default(),
                        cert.n,
                        cert.alpha,
                        cert.dim,
                        cert.baseline,
                        cert.achieved.map_or("-".to_string(), |a| a.to_string())
                    )?;
                }
                None => writeln!(out, "{json}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Baseline { channel, d } => {
            let ch = io::load_channel(&channel)?;
            if d == 0 {
                return Err(Error::InvalidArgument("--d must be >= 1".into()));
            }
            let b = protocol::classical_baseline_for_graph(&ch.confusability_graph(), d, limits)?;
            writeln!(out, "{b}")?;
            Ok(EXIT_OK)
        }
    }
}
