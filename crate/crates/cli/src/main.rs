//! Command-line front end for colour-bleeding measurement.

mod batch;
mod io;
mod job;
mod overlay;
mod profile;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::anyhow;
use bleedmeter_core::metrics::{KernelSpec, SlicParams};
use bleedmeter_core::scribble::{MAX_WIDTH, MIN_WIDTH};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use job::{JobError, JobSpec, Settings};
use profile::Profile;

#[derive(Parser)]
#[command(name = "bleedmeter", version, about = "Measure colour bleeding in colorized images")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a bleeding-edge scribble from a ground truth and an init colorization.
    Scribble {
        #[arg(long)]
        gt: PathBuf,
        #[arg(long)]
        init: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Score one prediction against its ground truth.
    Score {
        #[arg(long)]
        gt: PathBuf,
        #[arg(long)]
        pred: PathBuf,
        /// Init colorization, used for consistency and scribble synthesis.
        #[arg(long)]
        init: Option<PathBuf>,
        /// Scribble mask PNG; synthesized from --init when absent.
        #[arg(long)]
        scribble: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Score every row of a CSV manifest (gt,pred,init,scribble,kernel,seed).
    Batch {
        manifest: PathBuf,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        workers: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Local window size (odd) or "full".
    #[arg(long, default_value = "7")]
    kernel: KernelSpec,
    #[arg(long, value_enum, env = "BLEEDMETER_PROFILE", default_value = "imagenet")]
    profile: Profile,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Scribble width range, inclusive.
    #[arg(long, value_parser = parse_range, default_value = "1..5")]
    width_range: (u32, u32),
    #[arg(long, default_value_t = 3)]
    region_radius: usize,
    #[arg(long, default_value = "out")]
    out_dir: PathBuf,
    /// Resample all inputs to 256x256 before processing.
    #[arg(long)]
    resize_256: bool,
    /// Also write visualization PNGs.
    #[arg(long)]
    overlays: bool,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a: u32 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b || a < MIN_WIDTH || b > MAX_WIDTH {
        return Err(format!("width range must satisfy {MIN_WIDTH} <= A <= B <= {MAX_WIDTH}"));
    }
    Ok((a, b))
}

impl Common {
    fn settings(&self) -> Settings {
        Settings {
            profile: self.profile,
            width_range: self.width_range,
            region_radius: self.region_radius,
            resize: self.resize_256,
            overlays: self.overlays,
            slic: SlicParams::default(),
        }
    }

    fn job(&self, gt: PathBuf, pred: Option<PathBuf>, init: Option<PathBuf>, scribble: Option<PathBuf>) -> JobSpec {
        JobSpec {
            gt,
            pred,
            init,
            scribble,
            kernel: self.kernel,
            seed: self.seed,
            out_dir: self.out_dir.clone(),
        }
    }
}

fn run(cli: Cli) -> Result<(), JobError> {
    match cli.command {
        Command::Scribble { gt, init, common } => {
            let job = common.job(gt, None, Some(init), None);
            let s = job::run_scribble(&job, &common.settings())?;
            eprintln!(
                "scribble: {} pixels, width {}, written to {}",
                s.mask.count(),
                s.width,
                job.out_dir.display()
            );
        }
        Command::Score { gt, pred, init, scribble, common } => {
            let job = common.job(gt, Some(pred), init, scribble);
            let scored = job::run_score(&job, &common.settings())?;
            print!("{}", String::from_utf8_lossy(&scored.json));
        }
        Command::Batch { manifest, workers, common } => {
            let jobs = batch::read_manifest(&manifest, common.kernel, common.seed, &common.out_dir)?;
            let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let ok = batch::run_batch(&jobs, &common.settings(), workers, &common.out_dir)?;
            eprintln!("batch: {ok}/{} rows succeeded", jobs.len());
            if ok == 0 {
                return Err(JobError::Failed(anyhow!("every row failed")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
