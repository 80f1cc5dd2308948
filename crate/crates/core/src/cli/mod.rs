//! Command-line surface: lattice caching, verification suites and table
//! emitters. The binary is a thin wrapper over [`run`].

pub mod cache;
pub mod config;
pub mod describe;
pub mod table;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub use cache::{cache_path, load_or_build, CacheFile, CacheStatus, MAGIC};
pub use config::{OutputFormat, RunConfig, CACHE_ENV, DEFAULT_LIMIT};
pub use describe::{describe, Description};
pub use table::{core_rank_table, full_support_table, required_codim, Cell, Route, Table};
pub use verify::{verify, Suite, VerifyReport};

use crate::arrangement::{Chamber, ConeTester, Face};
use crate::coxeter::parse_type;
use crate::error::{Error, Result};
use crate::faraway::{
    coincidental_check, core_label, cores_of_type, exact, g_set, g_type, nearest_faraway_flats,
    Context, CountReport,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_REFUSED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Exit code for an error: usage errors 3, resource refusals and I/O 2,
/// correctness alarms 1.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::RankOutOfRange { .. } | Error::InvalidArgument(_) => {
            EXIT_USAGE
        }
        Error::LimitExceeded { .. }
        | Error::InsufficientDepth { .. }
        | Error::Cache(_)
        | Error::Io(_) => EXIT_REFUSED,
        _ => EXIT_MISMATCH,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "farflat",
    version,
    about = "Faraway flats and full-support parabolic subgroups of finite Coxeter groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, degrees, exponents, Coxeter number and order.
    Describe(Common),
    /// Build the intersection lattice and orbits, storing them in the cache.
    Build(Common),
    /// Emit a table of full-support counts.
    Table {
        #[command(flatten)]
        common: Common,
        /// Only cores of this rank, against targets one rank up.
        #[arg(long)]
        core_rank: Option<usize>,
    },
    /// Run a verification suite; exits 0 iff every identity holds.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Count full-support flats of one target type for a core.
    Count {
        #[command(flatten)]
        common: Common,
        /// A subset of simple indices (`{1,3}`, `1,3`, `{}`) or a type label (`[A1]`).
        #[arg(long)]
        core: String,
        #[arg(long)]
        target_type: String,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Coxeter type, e.g. `H4`, `E8`, `A1xA2`.
    #[arg(long = "type")]
    pub group: String,
    /// Lattice depth; defaults to what the command needs.
    #[arg(long)]
    pub max_codim: Option<usize>,
    #[arg(long, default_value = "markdown")]
    pub format: String,
    #[arg(long, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
    /// Cap on flats per level and on enumerated group elements.
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    pub limit: u128,
    /// Geometric core/support cross-check rate (1 = every flat).
    #[arg(long)]
    pub sample_rate: Option<u32>,
}

impl Common {
    /// Validated configuration; `needed` is the depth the command requires
    /// when no `--max-codim` is given.
    pub fn config(&self, needed: usize) -> Result<RunConfig> {
        let mut c = RunConfig::new(&self.group, None)?;
        c.max_codim = self.max_codim.unwrap_or(needed);
        c.format = self.format.parse()?;
        c.cache_dir = self.cache_dir.clone();
        c.workers = self.workers;
        c.limit = self.limit;
        if let Some(r) = self.sample_rate {
            c.sample_rate = r;
        }
        c.validate()?;
        Ok(c)
    }
}

/// Default depth: the whole lattice up to rank 6, only what is needed
/// beyond.
fn default_codim(rank: usize, needed: usize) -> usize {
    if rank <= 6 {
        rank
    } else {
        needed
    }
}

/// Core selector of a count query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoreSelector {
    Subset(u64),
    Type(String),
}

/// Parses `{1,3}`, `1,3`, `{}` (1-based indices) or a type label such as
/// `[A1^2]`.
pub fn parse_core(s: &str, rank: usize) -> Result<CoreSelector> {
    let t = s.trim();
    if t.starts_with('{') || t.is_empty() || t.starts_with(|c: char| c.is_ascii_digit()) {
        let inner = t.trim_start_matches('{').trim_end_matches('}');
        let mut mask = 0u64;
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let i: usize = part.parse().map_err(|_| {
                Error::InvalidArgument(format!("bad simple index {part:?} in core {s:?}"))
            })?;
            if i == 0 || i > rank {
                return Err(Error::InvalidArgument(format!(
                    "simple index {i} outside 1..={rank}"
                )));
            }
            mask |= 1 << (i - 1);
        }
        Ok(CoreSelector::Subset(mask))
    } else {
        Ok(CoreSelector::Type(
            t.trim_start_matches('[').trim_end_matches(']').to_string(),
        ))
    }
}

#[derive(Debug, Serialize)]
struct CountOutput {
    group: String,
    core: String,
    target: String,
    /// Root indices of every counted flat, in lattice order.
    flats: Vec<Vec<usize>>,
    reports: Vec<CountReport>,
}

/// `G(I)_[Y]` (or `G([X])_[Y]`), with the nearest-faraway identity checked
/// for an explicit core one rank below the target.
pub fn count(
    ctx: &Context,
    core: &CoreSelector,
    target: &str,
) -> Result<(Vec<usize>, Vec<CountReport>)> {
    let y = ctx.type_id(target.trim_start_matches('[').trim_end_matches(']'))?;
    let ty = &ctx.orbits().types[y];
    match core {
        CoreSelector::Type(label) => {
            let x = ctx.type_id(label)?;
            let flats = cores_of_type(ctx, x)
                .iter()
                .flat_map(|&c| g_set(ctx, c, y))
                .collect();
            Ok((flats, vec![g_type(ctx, x, y)?]))
        }
        CoreSelector::Subset(mask) => {
            let flats = g_set(ctx, *mask, y);
            let name = format!(
                "G({})_[{}] in {}",
                core_label(*mask),
                ty.label,
                ctx.coxeter_type()
            );
            let mut reports = vec![CountReport::enumeration(name, exact(flats.len() as i128))];
            let k = mask.count_ones() as usize;
            if ty.codim == k + 1 && ty.codim < ctx.rank() {
                let system = ctx.system();
                let tester = ConeTester::new(system);
                let face = Face::new(Chamber::fundamental(system), *mask);
                let members = ctx.orbits().members(y);
                let nf = nearest_faraway_flats(ctx.lattice(), &tester, &face, &members)?;
                let mut r = CountReport::compare(
                    format!(
                        "G({})_[{}] = NF(C0, C0^I)_[{}]",
                        core_label(*mask),
                        ty.label,
                        ty.label
                    ),
                    exact(flats.len() as i128),
                    exact(nf.len() as i128),
                );
                if nf != flats {
                    r.matched = Some(false);
                    r.notes.push("the two sets differ".into());
                }
                reports.push(r);
                let ct = ctx.coxeter_type();
                if ct.is_irreducible() && ct.factors()[0].is_coincidental() {
                    reports.push(coincidental_check(ctx, *mask, y)?);
                }
            }
            Ok((flats, reports))
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("outputs serialize");
    s.push('\n');
    s
}

fn cache_note(status: &CacheStatus, err: &mut dyn Write) {
    if let CacheStatus::Replaced(reason) = status {
        let _ = writeln!(err, "warning: cache rejected ({reason}); rebuilt");
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Describe(common) => {
            let config = common.config(1)?;
            let d = describe(&config.group)?;
            let text = match config.format {
                OutputFormat::Json => json(&d),
                _ => d.to_markdown(),
            };
            emit(out, &text)?;
            Ok(if d.passed() { EXIT_PASS } else { EXIT_MISMATCH })
        }
        Command::Build(common) => {
            let rank = parse_type(&common.group)?.rank();
            let config = common.config(default_codim(rank, rank))?;
            let (ctx, status) = config.install(|| load_or_build(&config))??;
            cache_note(&status, err);
            #[derive(Serialize)]
            struct Summary<'a> {
                group: String,
                max_codim: usize,
                level_sizes: Vec<usize>,
                cross_checked: usize,
                cache: String,
                types: &'a [crate::invariants::ParabolicType],
            }
            let summary = Summary {
                group: ctx.coxeter_type().to_string(),
                max_codim: ctx.lattice().max_codim(),
                level_sizes: ctx.lattice().level_sizes(),
                cross_checked: ctx.cross_checked(),
                cache: format!("{status:?}"),
                types: &ctx.orbits().types,
            };
            let text = match config.format {
                OutputFormat::Json => json(&summary),
                _ => {
                    let mut s = format!(
                        "{}: levels {:?}, {} flats cross-checked, cache {:?}\n",
                        summary.group, summary.level_sizes, summary.cross_checked, status
                    );
                    for t in summary.types {
                        s.push_str(&format!(
                            "  [{}] codim {} size {} |W_X| {}\n",
                            t.label, t.codim, t.size, t.subgroup_order
                        ));
                    }
                    s
                }
            };
            emit(out, &text)?;
            Ok(EXIT_PASS)
        }
        Command::Table { common, core_rank } => {
            let rank = parse_type(&common.group)?.rank();
            let config = common.config(default_codim(rank, required_codim(rank, core_rank)))?;
            let (table, status) = config.install(|| -> Result<(Table, CacheStatus)> {
                let (ctx, status) = load_or_build(&config)?;
                let table = match core_rank {
                    Some(r) => core_rank_table(&ctx, r)?,
                    None => full_support_table(&ctx)?,
                };
                Ok((table, status))
            })??;
            cache_note(&status, err);
            emit(out, &table.render(config.format))?;
            Ok(if table.passed() {
                EXIT_PASS
            } else {
                EXIT_MISMATCH
            })
        }
        Command::Verify { common, suite } => {
            let suite: Suite = suite.parse()?;
            let rank = parse_type(&common.group)?.rank();
            let config = common.config(rank)?;
            let (report, status) =
                config.install(|| -> Result<(VerifyReport, CacheStatus)> {
                    let (ctx, status) = load_or_build(&config)?;
                    Ok((
                        verify(&ctx, suite, config.limit, config.build_options())?,
                        status,
                    ))
                })??;
            cache_note(&status, err);
            emit(out, &report.render(config.format))?;
            Ok(if report.passed {
                EXIT_PASS
            } else {
                EXIT_MISMATCH
            })
        }
        Command::Count {
            common,
            core,
            target_type,
        } => {
            let rank = parse_type(&common.group)?.rank();
            let selector = parse_core(&core, rank)?;
            let config = common.config(default_codim(rank, rank.saturating_sub(1).max(1)))?;
            let (output, status) =
                config.install(|| -> Result<(CountOutput, CacheStatus)> {
                    let (ctx, status) = load_or_build(&config)?;
                    let (flats, reports) = count(&ctx, &selector, &target_type)?;
                    let output = CountOutput {
                        group: ctx.coxeter_type().to_string(),
                        core,
                        target: target_type,
                        flats: flats
                            .iter()
                            .map(|&f| ctx.lattice().flat(f).roots().iter().collect())
                            .collect(),
                        reports,
                    };
                    Ok((output, status))
                })??;
            cache_note(&status, err);
            let passed = output.reports.iter().all(CountReport::passed);
            let text = match config.format {
                OutputFormat::Json => json(&output),
                _ => output.reports.iter().map(|r| format!("{r}\n")).collect(),
            };
            emit(out, &text)?;
            Ok(if passed { EXIT_PASS } else { EXIT_MISMATCH })
        }
    }
}

/// Parses `args` (program name first) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            let _ = if code == EXIT_PASS {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
