//! The `stiefel-mw` command line.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use crate::basis::{closed_form, StiefelIndex};
use crate::bigraded::Bidegree;
use crate::config::ConfigFile;
use crate::crosscheck::{crosscheck, render_plain};
use crate::groups::VanishingFlags;
use crate::motive::{ConeShift, ConeSquare, Conventions};
use crate::report::{euler_json, euler_plain, BasisReport, GroupsReport, MotiveReport, StiefelReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CROSSCHECK_FAILED: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
    Latex,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, false)
    }
}

/// Inclusive integer range written `a..b` or `a:b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    fn to_range(self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once("..")
            .or_else(|| s.split_once(':'))
            .ok_or_else(|| format!("expected a range like 0..10, got {s:?}"))?;
        let lo: i64 = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
        let hi: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| format!("bad range end {b:?}"))?;
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(IntRange { lo, hi })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "stiefel-mw",
    version,
    about = "MW-motivic cohomology of Stiefel varieties V_k(A^n), computed three ways"
)]
struct Cli {
    /// Output format: plain, json, csv or latex (not every command supports every format).
    #[arg(long, global = true)]
    format: Option<Format>,

    /// Placement of the cone summand of HS_{2k+1}: paper = C(2k)[4k], derived = C(2k)[4k-1].
    #[arg(long, global = true)]
    cone_shift: Option<ConeShift>,

    /// Extra twist and shift s,t of the second cone in C ⊗ C = C ⊕ C(s)[t].
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "S,T")]
    cone_square: Option<ConeSquare>,

    /// Do not assume motivic groups vanish in negative weight.
    #[arg(long, global = true)]
    no_negative_weight_vanishing: bool,

    /// Do not assume MW groups vanish below the diagonal in negative weight.
    #[arg(long, global = true)]
    no_mw_subdiagonal_vanishing: bool,

    /// Keep zero rows in tables.
    #[arg(long, global = true)]
    all: bool,

    /// Show degrees as (p,{q}) in LaTeX output.
    #[arg(long, global = true)]
    braced: bool,

    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// TOML file presetting conventions, flags and format.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form additive basis, one row per subset of N_{n,k}.
    Basis { n: u32, k: u32 },
    /// Motive decomposition, its expansion, and its cohomology.
    Motive { n: u32, k: u32 },
    /// Groups H^{p,q}(V_k(A^n)) at a bidegree or over ranges.
    Groups {
        n: u32,
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<i64>,
        #[arg(long, allow_hyphen_values = true, value_name = "A..B")]
        p_range: Option<IntRange>,
        #[arg(long, allow_hyphen_values = true, value_name = "A..B")]
        q_range: Option<IntRange>,
    },
    /// Euler class of V_{k+1}(A^n) -> V_k(A^n).
    Euler { n: u32, k: u32 },
    /// Compare all three paths for every 1 <= k <= n-1, n <= n-max.
    Crosscheck {
        #[arg(long, default_value_t = 16)]
        n_max: u32,
        /// Run both cone shifts, delta = 0 and delta = -1.
        #[arg(long)]
        both: bool,
        /// Evaluate sequentially.
        #[arg(long)]
        serial: bool,
    },
    /// Full report for one variety: all paths, agreement, Euler class.
    Report { n: u32, k: u32 },
}

#[derive(Debug)]
struct Settings {
    format: Format,
    conventions: Conventions,
    flags: VanishingFlags,
}

fn settings(cli: &Cli) -> Result<Settings, String> {
    let cfg = match &cli.config {
        Some(path) => ConfigFile::load(path).map_err(|e| e.to_string())?,
        None => ConfigFile::default(),
    };
    let cfg_format =
        cfg.format.as_deref().map(|s| s.parse::<Format>().map_err(|e| format!("config format: {e}"))).transpose()?;
    let defaults = Conventions::default();
    let mut flags = VanishingFlags::default();
    if let Some(v) = cfg.negative_weight_vanishing {
        flags.negative_weight_motivic = v;
    }
    if let Some(v) = cfg.mw_subdiagonal_vanishing {
        flags.mw_subdiagonal_negative_weight = v;
    }
    if cli.no_negative_weight_vanishing {
        flags.negative_weight_motivic = false;
    }
    if cli.no_mw_subdiagonal_vanishing {
        flags.mw_subdiagonal_negative_weight = false;
    }
    Ok(Settings {
        format: cli.format.or(cfg_format).unwrap_or(Format::Plain),
        conventions: Conventions::new(
            cli.cone_shift.or(cfg.cone_shift).unwrap_or(defaults.cone_shift),
            cli.cone_square.or(cfg.cone_square).unwrap_or(defaults.cone_square),
        ),
        flags,
    })
}

fn index(n: u32, k: u32) -> Result<StiefelIndex, String> {
    StiefelIndex::new(n, k).map_err(|e| e.to_string())
}

fn enumerable_index(n: u32, k: u32) -> Result<StiefelIndex, String> {
    index(n, k)?.enumerable().map_err(|e| e.to_string())
}

fn unsupported(command: &str, format: Format) -> String {
    format!(
        "{command} does not support --format {}",
        format.to_possible_value().expect("no skipped variants").get_name()
    )
}

/// Rendered output and exit status of one command.
fn execute(cli: &Cli) -> Result<(String, i32), String> {
    let s = settings(cli)?;
    let out = match &cli.command {
        Command::Basis { n, k } => {
            let report = BasisReport::new(enumerable_index(*n, *k)?);
            match s.format {
                Format::Plain => report.plain(),
                Format::Json => report.json(),
                Format::Csv => report.csv(),
                Format::Latex => report.latex(cli.braced),
            }
        }
        Command::Motive { n, k } => {
            let report = MotiveReport::new(enumerable_index(*n, *k)?, s.conventions);
            match s.format {
                Format::Plain => report.plain(),
                Format::Json => report.json(),
                Format::Latex => report.latex(),
                f => return Err(unsupported("motive", f)),
            }
        }
        Command::Groups { n, k, p, q, p_range, q_range } => {
            let idx = enumerable_index(*n, *k)?;
            if p.is_some() && p_range.is_some() {
                return Err("give either --p or --p-range, not both".into());
            }
            if q.is_some() && q_range.is_some() {
                return Err("give either --q or --q-range, not both".into());
            }
            let single = p.is_some() && q.is_some();
            let top = closed_form(idx).terms().map(|(key, _)| key.shift).max().unwrap_or(Bidegree::ZERO);
            let ps = p.map(|p| p..=p).or(p_range.map(IntRange::to_range)).unwrap_or(0..=top.p);
            let qs = q.map(|q| q..=q).or(q_range.map(IntRange::to_range)).unwrap_or(0..=top.q);
            let report = GroupsReport::new(idx, ps, qs, s.flags, single || cli.all);
            match s.format {
                Format::Plain => report.plain(single),
                Format::Json => report.json(),
                Format::Csv => report.csv(),
                Format::Latex => report.latex(),
            }
        }
        Command::Euler { n, k } => {
            let idx = index(*n, *k)?;
            match s.format {
                Format::Plain => euler_plain(idx),
                Format::Json => euler_json(idx),
                f => return Err(unsupported("euler", f)),
            }
        }
        Command::Crosscheck { n_max, both, serial } => {
            if *n_max < 3 {
                return Err(format!("--n-max must be at least 3, got {n_max}"));
            }
            let limit = crate::basis::MAX_ENUM_K + 1;
            if *n_max > limit {
                return Err(format!("--n-max must be at most {limit}"));
            }
            let conventions = if *both {
                vec![
                    Conventions::new(ConeShift::Paper, s.conventions.cone_square),
                    Conventions::new(ConeShift::Derived, s.conventions.cone_square),
                ]
            } else {
                vec![s.conventions]
            };
            let report = crosscheck(*n_max, &conventions, !serial);
            let text = match s.format {
                Format::Plain => render_plain(&report),
                Format::Json => {
                    let mut t = serde_json::to_string_pretty(&report).expect("report serializes");
                    t.push('\n');
                    t
                }
                f => return Err(unsupported("crosscheck", f)),
            };
            return Ok((text, report.exit_code()));
        }
        Command::Report { n, k } => {
            let report = StiefelReport::new(enumerable_index(*n, *k)?, s.conventions);
            let code = if report.a_eq_b { EXIT_OK } else { EXIT_CROSSCHECK_FAILED };
            let text = match s.format {
                Format::Plain => report.plain(),
                Format::Json => report.json(),
                f => return Err(unsupported("report", f)),
            };
            return Ok((text, code));
        }
    };
    Ok((out, EXIT_OK))
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code: 0 ok, 1 usage error, 2 cross-check failure.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            let written = match &cli.out {
                Some(path) => {
                    std::fs::write(path, text.as_bytes()).map_err(|e| format!("cannot write {}: {e}", path.display()))
                }
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    EXIT_USAGE
                }
            }
        }
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}
