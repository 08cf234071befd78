//! The `moran` command line: `validate`, `dims`, `measure`, `oracle` and
//! `render` over JSON spec files.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::counting::SixCaseCounter;
use crate::dimension::set_dimensions;
use crate::error::{Error, Result};
use crate::measure::hausdorff_packing_dims;
use crate::oracle::{local_dim_samples, render_ppm, verify_all, VerifyOptions, DEFAULT_GUARD};
use crate::report::{DimensionSection, LocalSection, MeasureSection, OracleSection, RunReport};
use crate::spec_file::SpecFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "moran", version, about = "Dimensions of self-affine Moran sets and measures")]
pub struct Cli {
    /// Largest number of items any enumeration may touch.
    #[arg(long, global = true, default_value_t = DEFAULT_GUARD as u64)]
    pub guard: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a spec file parses and validates.
    Validate { spec: PathBuf },
    /// Box, packing, lower and Assouad dimensions of the set.
    Dims {
        spec: PathBuf,
        #[arg(long, default_value_t = 2000)]
        window: usize,
        #[arg(long, default_value_t = 400)]
        gap_limit: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Entropy, Hausdorff and packing dimensions of the spec's measure.
    Measure {
        spec: PathBuf,
        #[arg(long, default_value_t = 2000)]
        window: usize,
        /// Seed for local-dimension sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled points; 0 skips sampling.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Brute-force checks of every counting and measure formula.
    Oracle {
        spec: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_depth: usize,
        #[arg(long, default_value_t = 5)]
        pairs_depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Draw a prefractal as a plain PPM image.
    Render {
        spec: PathBuf,
        #[arg(long, default_value_t = 3)]
        level: usize,
        #[arg(long, default_value_t = 600)]
        width: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::GuardExceeded { .. } => EXIT_GUARD,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_INVALID,
    }
}

fn emit(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    }
}

/// Runs one command, returning what to print and the exit status.
fn execute(cli: &Cli) -> Result<(String, i32)> {
    let guard = u128::from(cli.guard);
    match &cli.command {
        Command::Validate { spec } => {
            let (c, p) = SpecFile::load(spec)?.build()?;
            let measure = if p.is_some() { "valid measure" } else { "no measure" };
            Ok((format!("ok: {}; {measure}\n", c.describe()), EXIT_OK))
        }
        Command::Dims {
            spec,
            window,
            gap_limit,
            format,
        } => {
            let c = SpecFile::load(spec)?.construction()?;
            let dims = set_dimensions(&c, *window, *gap_limit)?;
            let mut report = RunReport::new(&c);
            report.dimensions = Some(DimensionSection::from(&dims));
            Ok((emit(&report, *format), EXIT_OK))
        }
        Command::Measure {
            spec,
            window,
            seed,
            samples,
            format,
        } => {
            let (c, p) = SpecFile::load(spec)?.build()?;
            let p = p.ok_or_else(|| Error::Parse("spec file has no measure section".into()))?;
            let dims = hausdorff_packing_dims(&c, &p, *window)?;
            let mut section = MeasureSection::new(&dims, *window);
            if *samples > 0 {
                let drawn = local_dim_samples(&c, &p, *seed, *samples, *window, guard)?;
                section.local = Some(LocalSection::new(*seed, *window, &drawn));
            }
            let mut report = RunReport::new(&c);
            report.measure = Some(section);
            Ok((emit(&report, *format), EXIT_OK))
        }
        Command::Oracle {
            spec,
            max_depth,
            pairs_depth,
            format,
        } => {
            let (c, p) = SpecFile::load(spec)?.build()?;
            let opts = VerifyOptions {
                max_depth: *max_depth,
                pairs_depth: *pairs_depth,
                guard,
            };
            let verdict = verify_all(&c, p.as_ref(), &opts, &SixCaseCounter)?;
            let mut report = RunReport::new(&c);
            report.oracle = Some(OracleSection::new(&verdict, &opts));
            let code = if verdict.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
            Ok((emit(&report, *format), code))
        }
        Command::Render {
            spec,
            level,
            width,
            out,
        } => {
            let c = SpecFile::load(spec)?.construction()?;
            let image = render_ppm(&c, *level, *width, guard)?;
            std::fs::write(out, image).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
            Ok((format!("wrote {} ({width}x{width}, level {level})\n", out.display()), EXIT_OK))
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit status.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                return EXIT_INVALID;
            }
            let _ = out.write_all(text.as_bytes());
            return EXIT_OK;
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_IO;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flags() {
        let cli = Cli::try_parse_from(["moran", "dims", "x.json", "--gap-limit", "50", "--format", "csv"]).unwrap();
        match cli.command {
            Command::Dims {
                window,
                gap_limit,
                format,
                ..
            } => assert_eq!((window, gap_limit, format), (2000, 50, Format::Csv)),
            other => panic!("{other:?}"),
        }
        assert_eq!(cli.guard, 10_000_000);
        let cli = Cli::try_parse_from(["moran", "oracle", "x.json", "--guard", "99"]).unwrap();
        assert_eq!(cli.guard, 99);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::GuardExceeded { needed: 2, guard: 1 }), EXIT_GUARD);
        assert_eq!(exit_code(&Error::Io("x".into())), EXIT_IO);
        assert_eq!(exit_code(&Error::EmptyPeriod), EXIT_INVALID);
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["moran", "frobnicate"], &mut out, &mut err), EXIT_INVALID);
        assert_eq!(run(["moran", "--help"], &mut out, &mut err), EXIT_OK);
        assert!(String::from_utf8(out).unwrap().contains("render"));
    }
}
