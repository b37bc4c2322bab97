//! Command-line front end. Every file-producing run writes
//! `<output>.manifest.json` next to its primary output.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::jobs::{
    DensityArgs, GridArgs, HeatmapArgs, HommageArgs, Job, LutzArgs, MeasureArgs, NcornerArgs, Rendered, WaveSynthArgs,
};
use crate::manifest::{manifest_path_for, sha256_hex, GenerationManifest, OutputRecord};
use crate::wave;

/// Environment variable consulted when `--seed` is absent.
pub const SEED_ENV: &str = "GAW_DEFAULT_SEED";

/// Exit status when a replay ran but produced different bytes.
pub const EXIT_CHECKSUM_MISMATCH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gaw", version, about = "Generative aesthetics workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graphic or a text
    #[command(subcommand)]
    Gen(GenCommand),
    /// Information measures of a raster or symbol grid
    Measure {
        #[command(flatten)]
        args: MeasureArgs,
        /// Report path; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Wave spectra and sea-surface synthesis
    #[command(subcommand)]
    Wave(WaveCommand),
    /// Regenerate the outputs recorded in a manifest
    Replay {
        manifest: PathBuf,
        /// Write into this directory instead of the recorded paths
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct SeedArg {
    /// Seed; falls back to $GAW_DEFAULT_SEED, then 0
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct SvgOut {
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Closed random polygon with n corners
    NeesNcorner {
        #[command(flatten)]
        args: NcornerArgs,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: SvgOut,
    },
    /// Grid of independently drawn motifs
    NeesGrid {
        #[command(flatten)]
        args: GridArgs,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: SvgOut,
    },
    /// Oriented segments placed by a density map
    Density {
        #[command(flatten)]
        args: DensityArgs,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: SvgOut,
    },
    /// Randomized mesh with hatched cells
    Hommage {
        #[command(flatten)]
        args: HommageArgs,
        #[command(flatten)]
        seed: SeedArg,
        #[command(flatten)]
        out: SvgOut,
    },
    /// Stochastic sentences from a lexicon and templates
    Lutz {
        #[command(flatten)]
        args: LutzArgs,
        #[command(flatten)]
        seed: SeedArg,
        /// Text path; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum WaveCommand {
    /// Random-phase height field as CSV (and optionally PGM)
    Synth {
        #[command(flatten)]
        args: WaveSynthArgs,
        #[command(flatten)]
        seed: SeedArg,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write a normalized graymap of the field
        #[arg(long)]
        pgm: Option<PathBuf>,
    },
    /// Print the significant wave height 4·√m0 in metres
    Hs {
        #[arg(long)]
        spectrum: PathBuf,
    },
    /// Graymap of S over the frequency × direction lattice
    Heatmap {
        #[command(flatten)]
        args: HeatmapArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParams(format!("{SEED_ENV}=`{v}` is not a u64"))),
        Err(_) => Ok(0),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Writes the requested artifacts and a manifest beside the first one.
fn emit(job: &Job, seed: u64, targets: &[(&str, &Path)]) -> Result<()> {
    let rendered = job.render(seed)?;
    let mut manifest = GenerationManifest::new(job.rule_id(), seed, job.params());
    for (role, path) in targets {
        let artifact = rendered
            .artifact(role)
            .ok_or_else(|| Error::Manifest(format!("job produced no `{role}` output")))?;
        write_file(path, &artifact.bytes)?;
        manifest.outputs.push(OutputRecord {
            role: role.to_string(),
            path: path.to_string_lossy().into_owned(),
            sha256: sha256_hex(&artifact.bytes),
        });
    }
    manifest.inputs = rendered.inputs;
    manifest.info = rendered.info;
    write_file(&manifest_path_for(targets[0].1), manifest.to_json().as_bytes())
}

fn emit_or_print(job: &Job, seed: u64, output: Option<&Path>) -> Result<()> {
    match output {
        Some(p) => emit(job, seed, &[(job.primary_role(), p)]),
        None => {
            let rendered: Rendered = job.render(seed)?;
            std::io::stdout()
                .write_all(&rendered.artifacts[0].bytes)
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

/// Outcome of a replay: paths written and those whose digest differs from
/// the manifest.
#[derive(Debug, Default)]
pub struct ReplayReport {
    pub written: Vec<PathBuf>,
    pub mismatched: Vec<PathBuf>,
    pub changed_inputs: Vec<String>,
}

pub fn replay(manifest_path: &Path, out_dir: Option<&Path>) -> Result<ReplayReport> {
    let manifest = GenerationManifest::read(manifest_path)?;
    manifest.check_version()?;
    let job = Job::from_params(&manifest.rule_id, &manifest.params)?;
    let rendered = job.render(manifest.seed)?;
    let mut report = ReplayReport::default();
    for input in &manifest.inputs {
        let current = rendered.inputs.iter().find(|i| i.path == input.path);
        if current.map(|c| &c.sha256) != Some(&input.sha256) {
            report.changed_inputs.push(input.path.clone());
        }
    }
    for out in &manifest.outputs {
        let artifact = rendered
            .artifact(&out.role)
            .ok_or_else(|| Error::Manifest(format!("rule `{}` has no `{}` output", manifest.rule_id, out.role)))?;
        let recorded = PathBuf::from(&out.path);
        let target = match out_dir {
            Some(dir) => dir.join(
                recorded
                    .file_name()
                    .ok_or_else(|| Error::Manifest(format!("output path `{}` has no file name", out.path)))?,
            ),
            None => recorded,
        };
        write_file(&target, &artifact.bytes)?;
        if sha256_hex(&artifact.bytes) != out.sha256 {
            report.mismatched.push(target.clone());
        }
        report.written.push(target);
    }
    Ok(report)
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen(g) => match g {
            GenCommand::NeesNcorner { args, seed, out } => emit(
                &Job::NeesNcorner(args),
                resolve_seed(seed.seed)?,
                &[("svg", &out.output)],
            )?,
            GenCommand::NeesGrid { args, seed, out } => {
                emit(&Job::NeesGrid(args), resolve_seed(seed.seed)?, &[("svg", &out.output)])?
            }
            GenCommand::Density { args, seed, out } => {
                emit(&Job::Density(args), resolve_seed(seed.seed)?, &[("svg", &out.output)])?
            }
            GenCommand::Hommage { args, seed, out } => {
                emit(&Job::Hommage(args), resolve_seed(seed.seed)?, &[("svg", &out.output)])?
            }
            GenCommand::Lutz { args, seed, output } => {
                emit_or_print(&Job::Lutz(args), resolve_seed(seed.seed)?, output.as_deref())?
            }
        },
        Command::Measure { args, output } => emit_or_print(&Job::Measure(args), 0, output.as_deref())?,
        Command::Wave(w) => match w {
            WaveCommand::Synth {
                args,
                seed,
                output,
                pgm,
            } => {
                let mut targets: Vec<(&str, &Path)> = vec![("csv", &output)];
                if let Some(p) = &pgm {
                    targets.push(("pgm", p));
                }
                emit(&Job::WaveSynth(args), resolve_seed(seed.seed)?, &targets)?
            }
            WaveCommand::Hs { spectrum } => {
                let file = std::fs::File::open(&spectrum).map_err(|e| Error::io(&spectrum, e))?;
                let s = wave::load_spectrum(std::io::BufReader::new(file))?;
                println!("{:.6}", wave::significant_wave_height(&s));
            }
            WaveCommand::Heatmap { args, output } => emit(&Job::WaveHeatmap(args), 0, &[("pgm", &output)])?,
        },
        Command::Replay { manifest, out_dir } => {
            let report = replay(&manifest, out_dir.as_deref())?;
            for input in &report.changed_inputs {
                eprintln!("warning: input {input} changed since the manifest was written");
            }
            if !report.mismatched.is_empty() {
                for p in &report.mismatched {
                    eprintln!("warning: checksum mismatch for {}", p.display());
                }
                return Ok(EXIT_CHECKSUM_MISMATCH);
            }
        }
    }
    Ok(0)
}

/// Parses `argv` (program name first) and runs it, returning the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
