use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sttrack_cli::{cmd_compare, cmd_dump, cmd_run, cmd_track, Mode, RunConfig, VertexSpec};

/// Spatiotemporal barcodes and component tracking for binary image sequences.
#[derive(Parser)]
#[command(name = "sttrack", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the spatiotemporal barcode as JSON, and optionally as SVG.
    Run(Common),
    /// Print classical and spatiotemporal barcodes side by side.
    Compare(Common),
    /// Report where the component of one vertex was born.
    Track {
        #[command(flatten)]
        common: Common,
        /// Pixel and 1-based frame, as `x,y,frame`.
        #[arg(long)]
        vertex: VertexSpec,
    },
    /// List the filtration, one cell per line.
    Dump(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "pixel-graph")]
    mode: Mode,
    /// JSON sequence file, or a directory of frame_<n>.pbm files.
    #[arg(long)]
    input: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render the barcode as SVG (run only).
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Frames a bar must span to be flagged long.
    #[arg(long, default_value_t = 2)]
    long_threshold: usize,
}

impl From<Common> for RunConfig {
    fn from(c: Common) -> Self {
        RunConfig {
            mode: c.mode,
            input: c.input,
            out: c.out,
            svg: c.svg,
            long_threshold: c.long_threshold,
        }
    }
}

fn main() -> ExitCode {
    let result = match Cli::parse().command {
        Command::Run(c) => cmd_run(&c.into()),
        Command::Compare(c) => cmd_compare(&c.into()),
        Command::Track { common, vertex } => cmd_track(&common.into(), vertex),
        Command::Dump(c) => cmd_dump(&c.into()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
