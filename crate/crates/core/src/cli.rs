//! The `rmckit` command line: verification pipelines over system files,
//! example generation and automaton minimization.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::acceptor::{Acceptor, Mode, WordLike};
use crate::error::{Error, Result};
use crate::examples::{gen_example, EXAMPLES};
use crate::format::{read_aut, serialize_aut, AutFile, AutKind, AutValue, PropertyKind};
use crate::gsp::{build_augmented_finite, build_augmented_omega, check_emptiness_loop, AugmentedGsp, NegatedGsp, StateProperty};
use crate::nfa::Nfa;
use crate::omega::Buchi;
use crate::load::{AnySystem, LoadedSystem, Property};
use crate::losp::build_augmented_losp;
use crate::simulation::{check_emptiness_sim, sim_fixpoint, validate_candidate, SimInput};
use crate::system::{RegularSystem, Status, Verdict};
use crate::transducer::{ClosureKind, Transducer};

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "RMCKIT_THREADS";

#[derive(Parser, Debug)]
#[command(name = "rmckit", version, about = "Regular model checking of token-passing style systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Checks that no reachable state is in a bad-state automaton.
    CheckReach(CheckArgs),
    /// Checks a global system property through the augmented system.
    CheckGsp(CheckArgs),
    /// Checks a local-oriented system property through the augmented system.
    CheckLosp(CheckArgs),
    /// Computes the transitive closure of the transition relation.
    /// Exits 0 when the iteration converged and 2 otherwise.
    Closure {
        #[command(flatten)]
        args: CheckArgs,
        /// Reflexive-transitive closure instead of the transitive one.
        #[arg(long)]
        star: bool,
    },
    /// Computes the simulation fixpoint of the augmented GSP system and
    /// checks emptiness with it.
    Sim {
        #[command(flatten)]
        args: CheckArgs,
        /// A candidate simulation (transducer over the augmented alphabet)
        /// to validate and use instead of the fixpoint.
        #[arg(long)]
        candidate: Option<PathBuf>,
    },
    /// Writes an example bundle (system file and automata) to a directory.
    GenExample {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(EXAMPLES))]
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Prints the canonical minimal form of an automaton file.
    Minimize { file: PathBuf },
}

#[derive(Args, Debug, Clone)]
struct CheckArgs {
    /// System file.
    #[arg(long)]
    system: PathBuf,
    /// Property name declared in the system file, or an automaton file.
    /// Defaults to the first declared property the command can use.
    #[arg(long)]
    property: Option<String>,
    /// Inclusive range of word lengths to check, as LO..HI or N.
    #[arg(long, default_value = "2..8")]
    slice: SliceRange,
    /// Checks the unsliced system (every length at once). Always the case
    /// for ω systems.
    #[arg(long)]
    unsliced: bool,
    /// Iteration budget for reachability, closures and simulation.
    #[arg(long, default_value_t = 64)]
    budget: usize,
    #[arg(long, value_enum, default_value_t = Engine::Loop)]
    engine: Engine,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Loop,
    Sim,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// The checks behind the `check-*`, `closure` and `sim` commands.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Reach,
    Gsp,
    Losp,
    Closure,
    ClosureStar,
    Sim,
}

impl CheckKind {
    pub fn command(&self) -> &'static str {
        match self {
            CheckKind::Reach => "check-reach",
            CheckKind::Gsp => "check-gsp",
            CheckKind::Losp => "check-losp",
            CheckKind::Closure | CheckKind::ClosureStar => "closure",
            CheckKind::Sim => "sim",
        }
    }
}

/// Options of a check, with the command line defaults.
#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Declared property name or automaton file; `None` picks the first
    /// declared property the check can use.
    pub property: Option<String>,
    pub slice: SliceRange,
    pub unsliced: bool,
    pub budget: usize,
    /// Ignored by checks with a single engine.
    pub engine: Engine,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            property: None,
            slice: SliceRange { lo: 2, hi: 8 },
            unsliced: false,
            budget: 64,
            engine: Engine::Loop,
        }
    }
}

impl CheckArgs {
    fn options(&self) -> CheckOptions {
        CheckOptions {
            property: self.property.clone(),
            slice: self.slice,
            unsliced: self.unsliced,
            budget: self.budget,
            engine: self.engine,
        }
    }
}

/// An inclusive range of slice lengths.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SliceRange {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for SliceRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad slice bound `{t}`"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let n = num(s)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(format!("empty slice range {lo}..{hi}"));
        }
        Ok(SliceRange { lo, hi })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub words: Vec<String>,
    pub loop_start: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub kind: &'static str,
    pub steps_used: usize,
    pub converged: bool,
    pub states: usize,
    pub transitions: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimReport {
    pub iterations: usize,
    pub exact: bool,
    pub candidate: bool,
    pub validated: bool,
    pub states: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceReport {
    /// `None` for an unsliced check.
    pub slice: Option<usize>,
    pub status: Status,
    pub steps: usize,
    pub converged: bool,
    pub reason: Option<String>,
    pub millis: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure: Option<ClosureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simulation: Option<SimReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub system: String,
    pub property: Option<String>,
    pub engine: Option<&'static str>,
    pub budget: usize,
    pub result: Status,
    pub slices: Vec<SliceReport>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.result {
            Status::Holds => EXIT_HOLDS,
            Status::Violated => EXIT_VIOLATED,
            Status::Unknown => EXIT_UNKNOWN,
        }
    }
}

/// Violated if any slice is, else Unknown if any slice is, else Holds.
pub fn overall(statuses: impl IntoIterator<Item = Status>) -> Status {
    let mut out = Status::Holds;
    for s in statuses {
        match s {
            Status::Violated => return Status::Violated,
            Status::Unknown => out = Status::Unknown,
            Status::Holds => {}
        }
    }
    out
}

fn slice_report<W: WordLike>(v: Verdict<W>, slice: Option<usize>, render: impl Fn(&W) -> String) -> SliceReport {
    SliceReport {
        slice,
        status: v.status,
        steps: v.diagnostics.steps,
        converged: v.diagnostics.converged,
        reason: v.diagnostics.reason,
        millis: 0.0,
        witness: v.witness.map(|w| WitnessReport {
            words: w.words.iter().map(&render).collect(),
            loop_start: w.loop_start,
        }),
        closure: None,
        simulation: None,
    }
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let n = match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => n,
            _ => return Err(Error::input(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| Error::input(format!("thread pool: {e}")))
}

/// Runs `job` on every target in parallel; results keep target order.
fn run_targets<F>(targets: &[Option<usize>], job: F) -> Result<Vec<SliceReport>>
where
    F: Fn(Option<usize>) -> Result<SliceReport> + Sync,
{
    let pool = thread_pool()?;
    let results: Vec<Result<SliceReport>> = pool.install(|| {
        targets
            .par_iter()
            .map(|&n| {
                let start = Instant::now();
                let mut r = job(n)?;
                r.millis = start.elapsed().as_secs_f64() * 1000.0;
                Ok(r)
            })
            .collect()
    });
    results.into_iter().collect()
}

fn targets(args: &CheckOptions, omega: bool) -> Vec<Option<usize>> {
    if omega || args.unsliced {
        vec![None]
    } else {
        (args.slice.lo..=args.slice.hi).map(Some).collect()
    }
}

/// Systems that can be cut into slices of one word length.
trait Sliceable: Acceptor {
    fn slice_system(m: &RegularSystem<Self>, n: usize) -> Result<RegularSystem<Self>>;
}

impl Sliceable for Nfa {
    fn slice_system(m: &RegularSystem<Self>, n: usize) -> Result<RegularSystem<Self>> {
        m.slice(n)
    }
}

impl Sliceable for Buchi {
    fn slice_system(_: &RegularSystem<Self>, _: usize) -> Result<RegularSystem<Self>> {
        Err(Error::Unsupported("slicing an ω system".into()))
    }
}

fn sliced<A: Sliceable>(m: &RegularSystem<A>, n: Option<usize>) -> Result<RegularSystem<A>> {
    match n {
        Some(n) => A::slice_system(m, n),
        None => Ok(m.clone()),
    }
}

fn gsp_check<A: Sliceable>(
    m: &RegularSystem<A>,
    cops: &[StateProperty<A>],
    build: impl Fn(&RegularSystem<A>) -> Result<AugmentedGsp<A>> + Sync,
    args: &CheckOptions,
    engine: Engine,
    candidate: Option<&Transducer<A>>,
    with_sim_report: bool,
) -> Result<Vec<SliceReport>> {
    let sigma = m.alphabet().clone();
    run_targets(&targets(args, m.mode() == Mode::Omega), |n| {
        let aug = build(&sliced(m, n)?)?;
        let render = |w: &A::Word| aug.layout.project_sigma(w).render(&sigma);
        match engine {
            Engine::Loop => Ok(slice_report(check_emptiness_loop(&aug.system, args.budget)?, n, render)),
            Engine::Sim => {
                let (v, sim) = match candidate {
                    Some(c) => {
                        let c = validate_candidate(c, &aug, cops)?;
                        let v = check_emptiness_sim(&aug.system, SimInput::Candidate(&c), args.budget)?;
                        let sim = SimReport {
                            iterations: 0,
                            exact: false,
                            candidate: true,
                            validated: c.validated,
                            states: c.relation.inner().graph().num_states(),
                        };
                        (v, sim)
                    }
                    None => {
                        let s = sim_fixpoint(&aug, cops, args.budget)?;
                        let v = check_emptiness_sim(&aug.system, SimInput::Fixpoint(&s), args.budget)?;
                        let sim = SimReport {
                            iterations: s.iteration_index,
                            exact: s.exact,
                            candidate: false,
                            validated: false,
                            states: s.relation.inner().graph().num_states(),
                        };
                        (v, sim)
                    }
                };
                let mut r = slice_report(v, n, render);
                if with_sim_report {
                    r.simulation = Some(sim);
                }
                Ok(r)
            }
        }
    })
}

fn neg_gsp(p: Property) -> Result<NegatedGsp> {
    match p {
        Property::NegGsp(g) => Ok(g),
        _ => Err(Error::input("expected a global system property")),
    }
}

fn check_gsp(
    sys: &LoadedSystem,
    args: &CheckOptions,
    engine: Engine,
    candidate: Option<&Path>,
    with_sim_report: bool,
) -> Result<(String, Vec<SliceReport>)> {
    let (name, p) = sys.property(args.property.as_deref(), &[PropertyKind::GspNegated, PropertyKind::Gsp])?;
    let neg = neg_gsp(p)?;
    let reports = match &sys.system {
        AnySystem::Finite(m) => {
            let cops = &sys.cops_finite;
            let c = candidate.map(|p| read_aut(p)?.into_transducer()).transpose()?;
            gsp_check(m, cops, |s| build_augmented_finite(s, &neg, cops), args, engine, c.as_ref(), with_sim_report)?
        }
        AnySystem::Omega(m) => {
            let cops = &sys.cops_omega;
            let c = candidate.map(|p| read_aut(p)?.into_omega_transducer()).transpose()?;
            gsp_check(m, cops, |s| build_augmented_omega(s, &neg, cops), args, engine, c.as_ref(), with_sim_report)?
        }
    };
    Ok((name, reports))
}

fn check_reach(sys: &LoadedSystem, args: &CheckOptions) -> Result<(String, Vec<SliceReport>)> {
    let (name, p) = sys.property(args.property.as_deref(), &[PropertyKind::ReachBad])?;
    let reports = match (&sys.system, &p) {
        (AnySystem::Finite(m), Property::BadFinite(bad)) => {
            let sigma = m.alphabet().clone();
            run_targets(&targets(args, false), |n| {
                let v = sliced(m, n)?.check_reachability_property(bad, args.budget)?;
                Ok(slice_report(v, n, |w| w.render(&sigma)))
            })?
        }
        (AnySystem::Omega(m), Property::BadOmega(bad)) => {
            let sigma = m.alphabet().clone();
            run_targets(&[None], |n| {
                let v = m.check_reachability_property(bad, args.budget)?;
                Ok(slice_report(v, n, |w| w.render(&sigma)))
            })?
        }
        _ => return Err(Error::ModeMismatch("bad-state automaton and system".into())),
    };
    Ok((name, reports))
}

fn check_losp(sys: &LoadedSystem, args: &CheckOptions) -> Result<(String, Vec<SliceReport>)> {
    let AnySystem::Finite(m) = &sys.system else {
        return Err(Error::Unsupported("local-oriented properties of ω systems".into()));
    };
    if args.engine == Engine::Sim {
        return Err(Error::Unsupported("the simulation engine checks global system properties only".into()));
    }
    let (name, p) = sys.property(args.property.as_deref(), &[PropertyKind::LospNegated, PropertyKind::Losp])?;
    let Property::NegLosp(losp) = p else {
        return Err(Error::input("expected a local-oriented system property"));
    };
    let sigma = m.alphabet().clone();
    let reports = run_targets(&targets(args, false), |n| {
        let aug = build_augmented_losp(&sliced(m, n)?, &losp, &sys.leps)?;
        let v = check_emptiness_loop(&aug.system, args.budget)?;
        Ok(slice_report(v, n, |w| aug.layout.project_sigma(w).render(&sigma)))
    })?;
    Ok((name, reports))
}

fn closure_of<A: Sliceable>(m: &RegularSystem<A>, args: &CheckOptions, star: bool) -> Result<Vec<SliceReport>> {
    let kind = if star { ClosureKind::Star } else { ClosureKind::Plus };
    run_targets(&targets(args, m.mode() == Mode::Omega), |n| {
        let t = sliced(m, n)?.relation().clone();
        let c = t.closure(kind, args.budget, None)?;
        let status = if c.converged { Status::Holds } else { Status::Unknown };
        Ok(SliceReport {
            slice: n,
            status,
            steps: c.steps_used,
            converged: c.converged,
            reason: (!c.converged).then(|| format!("closure did not converge within {} iterates", args.budget)),
            millis: 0.0,
            witness: None,
            closure: Some(ClosureReport {
                kind: if star { "star" } else { "plus" },
                steps_used: c.steps_used,
                converged: c.converged,
                states: c.relation.inner().graph().num_states(),
                transitions: c.relation.inner().graph().num_transitions(),
            }),
            simulation: None,
        })
    })
}

fn print_report(r: &Report, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    if format == Format::Json {
        return writeln!(out, "{}", report_json(r));
    }
    writeln!(out, "system: {}", r.system)?;
    if let Some(p) = &r.property {
        writeln!(out, "property: {p}")?;
    }
    for s in &r.slices {
        let label = match s.slice {
            Some(n) => format!("slice {n}"),
            None => "unsliced".to_string(),
        };
        write!(out, "{label}: {} (steps {}", s.status.as_str(), s.steps)?;
        if !s.converged {
            write!(out, ", not converged")?;
        }
        write!(out, ", {:.1} ms)", s.millis)?;
        if let Some(reason) = &s.reason {
            write!(out, ": {reason}")?;
        }
        writeln!(out)?;
        if let Some(c) = &s.closure {
            writeln!(out, "  closure {}: {} states, {} transitions", c.kind, c.states, c.transitions)?;
        }
        if let Some(m) = &s.simulation {
            if m.candidate {
                writeln!(out, "  candidate simulation: validated {}, {} states", m.validated, m.states)?;
            } else {
                writeln!(out, "  simulation: {} iterations, exact {}, {} states", m.iterations, m.exact, m.states)?;
            }
        }
        if let Some(w) = &s.witness {
            match w.loop_start {
                Some(k) => writeln!(out, "  witness (lasso, loop back to {k}):")?,
                None => writeln!(out, "  witness (path):")?,
            }
            for (i, word) in w.words.iter().enumerate() {
                writeln!(out, "    {i} {word}")?;
            }
        }
    }
    writeln!(out, "result: {}", r.result.as_str())
}

/// Runs one check on a loaded system.
pub fn check_loaded(sys: &LoadedSystem, kind: CheckKind, args: &CheckOptions) -> Result<Report> {
    report(sys, kind, args, None)
}

fn report(sys: &LoadedSystem, kind: CheckKind, args: &CheckOptions, candidate: Option<&Path>) -> Result<Report> {
    let named = |r: Result<(String, Vec<SliceReport>)>| r.map(|(n, r)| (Some(n), r));
    let (property, slices, engine) = match kind {
        CheckKind::Reach => {
            let (p, r) = named(check_reach(sys, args))?;
            (p, r, None)
        }
        CheckKind::Gsp => {
            let (p, r) = named(check_gsp(sys, args, args.engine, None, false))?;
            (p, r, Some(args.engine))
        }
        CheckKind::Losp => {
            let (p, r) = named(check_losp(sys, args))?;
            (p, r, Some(Engine::Loop))
        }
        CheckKind::Closure | CheckKind::ClosureStar => {
            let star = kind == CheckKind::ClosureStar;
            let r = match &sys.system {
                AnySystem::Finite(m) => closure_of(m, args, star)?,
                AnySystem::Omega(m) => closure_of(m, args, star)?,
            };
            (None, r, None)
        }
        CheckKind::Sim => {
            let (p, r) = named(check_gsp(sys, args, Engine::Sim, candidate, true))?;
            (p, r, Some(Engine::Sim))
        }
    };
    Ok(Report {
        schema: SCHEMA,
        command: kind.command().to_string(),
        system: sys.path.display().to_string(),
        property,
        engine: engine.map(|e| match e {
            Engine::Loop => "loop",
            Engine::Sim => "sim",
        }),
        budget: args.budget,
        result: overall(slices.iter().map(|s| s.status)),
        slices,
    })
}

/// The report as the command line prints it with `--format json`.
pub fn report_json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("reports serialize")
}

/// The canonical minimal form of an automaton: a DFA, a weak DBA or a
/// canonical transducer.
pub fn minimized(file: AutFile) -> Result<AutFile> {
    let (kind, value) = match file.value {
        AutValue::Finite(a) => (AutKind::Dfa, AutValue::Finite(a.canonical())),
        AutValue::Omega(a) => (AutKind::WeakDba, AutValue::Omega(a.canonical()?)),
        AutValue::Transducer(t) => (AutKind::Transducer, AutValue::Transducer(t.canonical()?)),
        AutValue::OmegaTransducer(t) => (AutKind::OmegaTransducer, AutValue::OmegaTransducer(t.canonical()?)),
    };
    Ok(AutFile::new(kind, value))
}

fn minimize(path: &Path) -> Result<String> {
    Ok(serialize_aut(&minimized(read_aut(path)?)?))
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    let (args, kind, candidate) = match cmd {
        Command::GenExample { name, out: dir } => {
            let path = gen_example(&name)?.write(&dir)?;
            writeln!(out, "{}", path.display()).map_err(io)?;
            return Ok(EXIT_HOLDS);
        }
        Command::Minimize { file } => {
            write!(out, "{}", minimize(&file)?).map_err(io)?;
            return Ok(EXIT_HOLDS);
        }
        Command::CheckReach(a) => (a, CheckKind::Reach, None),
        Command::CheckGsp(a) => (a, CheckKind::Gsp, None),
        Command::CheckLosp(a) => (a, CheckKind::Losp, None),
        Command::Closure { args, star } => (args, if star { CheckKind::ClosureStar } else { CheckKind::Closure }, None),
        Command::Sim { args, candidate } => (args, CheckKind::Sim, candidate),
    };
    let sys = LoadedSystem::load(&args.system)?;
    let report = report(&sys, kind, &args.options(), candidate.as_deref())?;
    print_report(&report, args.format, out).map_err(io)?;
    Ok(report.exit_code())
}

/// Runs the command line `args` (program name first), writing reports to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_HOLDS
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
