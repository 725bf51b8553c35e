//! Argument parsing and command dispatch.

use std::io::Write;
use std::path::PathBuf;

use catfourier::kernel::transform;
use catfourier::promonoidal::{convolve, lower_convolution};
use catfourier::Module;
use clap::{Parser, Subcommand};

use crate::error::CliError;
use crate::gallery::{run_gallery, GalleryCmd};
use crate::output::{emit_report, Format};
use crate::spec::load_spec;
use crate::suite::{classify_kernel, default_seed, run_suite_timed};

#[derive(Debug, Parser)]
#[command(name = "catfourier", version, about = "Exact checks for finite promonoidal categories and their transforms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite over a spec.
    Check {
        spec: PathBuf,
        #[arg(long, default_value = "all")]
        suite: String,
        /// Seed for random functor families (default: $CATFOURIER_SEED or 1).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Record elapsed time per suite; reports are then not reproducible.
        #[arg(long)]
        timings: bool,
    },
    /// Print the dimensions of f ⊛ g (or the lower convolution).
    Convolve {
        spec: PathBuf,
        f: String,
        g: String,
        #[arg(long)]
        lower: bool,
    },
    /// Print the dimensions of K̄f.
    Transform { spec: PathBuf, kernel: String, functor: String },
    /// Classify K̄ on representables plus seeded random functors.
    Classify {
        spec: PathBuf,
        kernel: String,
        #[arg(long, default_value_t = 4)]
        family_size: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build and check a built-in example.
    Gallery {
        #[command(subcommand)]
        which: GalleryCmd,
        /// Write the instance as a spec file.
        #[arg(long, global = true)]
        emit: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text", global = true)]
        format: Format,
    },
}

/// Runs a parsed command, writing to `out`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let code = |passed: bool| if passed { 0 } else { 1 };
    match cli.command {
        Command::Check { spec, suite, seed, format, timings } => {
            let doc = load_spec(&spec)?;
            let report = run_suite_timed(&doc, &suite, seed.unwrap_or_else(default_seed), timings)?;
            write(out, &emit_report(&report, format))?;
            Ok(code(report.all_passed()))
        }
        Command::Convolve { spec, f, g, lower } => {
            let doc = load_spec(&spec)?;
            let (f, g) = (doc.module(&f)?.clone(), doc.module(&g)?.clone());
            let st = doc
                .structure_for(&f)
                .ok_or_else(|| CliError::Usage(format!("no promonoidal structure lives on the base of {}", f.name())))?;
            let result = if lower {
                let s = st
                    .antipode
                    .as_ref()
                    .map(|a| &doc.antipodes[a])
                    .ok_or_else(|| CliError::Usage("lower convolution needs an antipode".into()))?;
                lower_convolution(&st.ps, s, &f, &g)?
            } else {
                (*convolve(&st.ps, &f, &g)?).clone()
            };
            write(out, &dims_table(&result))?;
            Ok(0)
        }
        Command::Transform { spec, kernel, functor } => {
            let doc = load_spec(&spec)?;
            let k = doc.kernel(&kernel)?;
            let f = doc.module(&functor)?;
            write(out, &dims_table(&*transform(k, f)?))?;
            Ok(0)
        }
        Command::Classify { spec, kernel, family_size, seed, format } => {
            let doc = load_spec(&spec)?;
            let k = doc.kernel(&kernel)?;
            let report = classify_kernel(k, family_size, seed.unwrap_or_else(default_seed))?;
            write(out, &emit_report(&report, format))?;
            Ok(code(report.all_passed()))
        }
        Command::Gallery { which, emit, format } => {
            let g = run_gallery(&which)?;
            if let Some(path) = emit {
                let spec = g.spec.ok_or_else(|| CliError::Usage("this gallery has no spec form".into()))?;
                let mut json = serde_json::to_string_pretty(&spec).expect("specs serialize");
                json.push('\n');
                std::fs::write(&path, json).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            write(out, &emit_report(&g.report, format))?;
            Ok(code(g.report.all_passed()))
        }
    }
}

fn dims_table(m: &Module) -> String {
    let mut s = String::new();
    for idx in 0..m.len() {
        s.push_str(&format!("{}\t{}\n", m.tuple_names(idx).join(","), m.dim(idx)));
    }
    s
}

fn write(out: &mut dyn Write, s: &str) -> Result<(), CliError> {
    out.write_all(s.as_bytes()).map_err(|e| CliError::Io(e.to_string()))
}
