//! `nshadow`: shift presentations, mixing certificates and shadow pairs from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 for usage errors, bad input and exhausted budgets.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nshadow::io::{self, PseudoOrbitDef, WindowDef};
use nshadow::mixing;
use nshadow::repro::{self, ReproOptions};
use nshadow::shadowing::{self, Method, SearchOptions, VerifyOptions};
use nshadow::{interval, DyadicScale, Error, PseudoOrbit, ShiftPresentation};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "nshadow", version, about = "Subshift shadowing toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Language queries.
    #[command(subcommand)]
    Shift(ShiftCmd),
    /// Mixing numbers and primitivity.
    #[command(subcommand)]
    Mixing(MixingCmd),
    /// Quasi-finite-type numbers.
    #[command(subcommand)]
    Qft(QftCmd),
    /// Two-point shadow constructions, verification and exhaustive search.
    #[command(subcommand)]
    Shadow(ShadowCmd),
    /// The square-root interval map.
    #[command(subcommand)]
    Interval(IntervalCmd),
    /// Run a named end-to-end scenario.
    Repro(ReproArgs),
}

#[derive(Args)]
struct Def {
    /// Shift definition: a JSON file or `builtin:NAME`.
    #[arg(long)]
    def: String,
}

impl Def {
    fn load(&self) -> Result<ShiftPresentation, Error> {
        io::load_shift(&self.def)
    }
}

#[derive(Subcommand)]
enum ShiftCmd {
    /// Is a word in the language?
    Check {
        #[command(flatten)]
        def: Def,
        #[arg(long)]
        word: String,
    },
    /// All allowed words of one length.
    Words {
        #[command(flatten)]
        def: Def,
        #[arg(short = 'n')]
        n: usize,
    },
}

#[derive(Subcommand)]
enum MixingCmd {
    /// Brute-force check of a mixing number.
    Verify {
        #[command(flatten)]
        def: Def,
        #[arg(short = 'M')]
        m: usize,
        /// Largest |u|, |v|.
        #[arg(short = 'L', default_value_t = 6)]
        l: usize,
        /// Largest bridge length; defaults to M + |V| + memory.
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Primitivity exponent of the presenting graph.
    Exponent {
        #[command(flatten)]
        def: Def,
    },
    /// Search for words u, v that no allowed word joins.
    Witness {
        #[command(flatten)]
        def: Def,
        #[arg(short = 'L', default_value_t = 4)]
        l: usize,
    },
}

#[derive(Subcommand)]
enum QftCmd {
    /// Brute-force check of a quasi-finite-type number.
    Verify {
        #[command(flatten)]
        def: Def,
        #[arg(short = 'M')]
        m: usize,
        #[arg(short = 'L', default_value_t = 4)]
        l: usize,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Least number passing the bounded check.
    Search {
        #[command(flatten)]
        def: Def,
        #[arg(short = 'L', default_value_t = 4)]
        l: usize,
        #[arg(long, default_value_t = 8)]
        nmax: usize,
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
}

#[derive(Subcommand)]
enum ShadowCmd {
    /// Build a shadow pair for a pseudo-orbit and verify it.
    Construct {
        #[command(flatten)]
        def: Def,
        #[arg(long)]
        po: PathBuf,
        #[arg(long, default_value = "mixing")]
        method: String,
        #[arg(short = 'k')]
        k: u32,
        /// Mixing or quasi-finite-type number.
        #[arg(short = 'M', default_value_t = 2)]
        m: usize,
        /// Write the points as a shadow-set file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a shadow-set file against a pseudo-orbit.
    Verify {
        #[command(flatten)]
        def: Def,
        #[arg(long)]
        po: PathBuf,
        #[arg(long)]
        set: PathBuf,
        #[arg(short = 'k')]
        k: u32,
        #[arg(long)]
        no_diameter: bool,
    },
    /// Exhaustive search for a shadowing set of at most N points.
    Search {
        #[command(flatten)]
        def: Def,
        #[arg(long)]
        po: PathBuf,
        #[arg(short = 'N')]
        n: usize,
        #[arg(short = 'k')]
        k: u32,
        #[arg(long)]
        halfwidth: usize,
        #[arg(long, default_value_t = 1 << 24)]
        budget: u128,
        #[arg(long)]
        no_diameter: bool,
    },
    /// Write a random spliced pseudo-orbit file.
    Splice {
        #[command(flatten)]
        def: Def,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        switches: usize,
        /// Precision exponent K.
        #[arg(long)]
        delta: u32,
        #[arg(long, allow_hyphen_values = true)]
        first: i64,
        #[arg(long, allow_hyphen_values = true)]
        last: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum IntervalCmd {
    /// Ascending pseudo-orbit, failure certificate and a shadowing pair.
    Demo {
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long, default_value_t = 0.25)]
        epsilon: f64,
        #[arg(long, default_value_t = 1e-3)]
        grid: f64,
        #[arg(long, default_value_t = 1 << 32)]
        budget: u128,
        /// Print the pseudo-orbit as CSV instead of the JSON report.
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Args)]
struct ReproArgs {
    /// One of: interval, two-loop, four-vertex, mixing-pair, forward-pair, qft-pair, schedule-pair.
    scenario: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, conflicts_with = "table")]
    json: bool,
    #[arg(long)]
    table: bool,
}

/// Printed output and whether every check passed.
type Outcome = Result<bool, Error>;

/// Writes to stdout, stopping quietly when the reader goes away.
fn out(text: &str) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
}

fn emit(value: Value) {
    out(&(serde_json::to_string_pretty(&value).expect("json output") + "\n"));
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn write_json(path: &PathBuf, value: Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(&value).expect("json output");
    std::fs::write(path, text + "\n").map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load_po(shift: &ShiftPresentation, path: &PathBuf) -> Result<PseudoOrbit, Error> {
    io::load_pseudo_orbit(path, shift)
}

fn shift_cmd(cmd: ShiftCmd) -> Outcome {
    match cmd {
        ShiftCmd::Check { def, word } => {
            let x = def.load()?;
            let w = x.parse(&word)?;
            let allowed = x.is_allowed(&w);
            emit(json!({ "word": word, "allowed": allowed }));
            Ok(allowed)
        }
        ShiftCmd::Words { def, n } => {
            let x = def.load()?;
            let words: Vec<String> = x.words_of_length(n).iter().map(|w| x.render(w)).collect();
            emit(json!({ "n": n, "count": words.len(), "words": words }));
            Ok(true)
        }
    }
}

fn mixing_cmd(cmd: MixingCmd) -> Outcome {
    match cmd {
        MixingCmd::Verify { def, m, l, nmax } => {
            let x = def.load()?;
            let nmax = nmax.unwrap_or_else(|| mixing::default_bridge_bound(&x, m));
            let cert = mixing::verify_mixing_number(&x, m, l, nmax)?;
            emit(to_value(&cert));
            Ok(cert.passed())
        }
        MixingCmd::Exponent { def } => {
            let x = def.load()?;
            let cert = mixing::primitivity_certificate(&x);
            emit(json!({ "exponent": mixing::primitivity_exponent(&x), "certificate": cert }));
            Ok(cert.is_some())
        }
        MixingCmd::Witness { def, l } => {
            let x = def.load()?;
            let witness = mixing::find_nonmixing_witness(&x, l)?;
            emit(json!({ "word_bound": l, "witness": witness }));
            Ok(witness.is_some())
        }
    }
}

fn qft_cmd(cmd: QftCmd) -> Outcome {
    match cmd {
        QftCmd::Verify { def, m, l, nmax } => {
            let x = def.load()?;
            let nmax = nmax.unwrap_or_else(|| mixing::default_bridge_bound(&x, m));
            let cert = mixing::verify_qft_number(&x, m, l, nmax)?;
            emit(to_value(&cert));
            Ok(cert.passed())
        }
        QftCmd::Search { def, l, nmax, max } => {
            let x = def.load()?;
            let search = mixing::qft_number_search(&x, l, nmax, max)?;
            emit(to_value(&search));
            Ok(search.qft_number.is_some())
        }
    }
}

fn shadow_cmd(cmd: ShadowCmd) -> Outcome {
    match cmd {
        ShadowCmd::Construct { def, po, method, k, m, out } => {
            let x = def.load()?;
            let po = load_po(&x, &po)?;
            let method: Method = method.parse()?;
            let pair = shadowing::construct_pair(&x, method, m, &po, k)?;
            let cert = shadowing::verify_shadow_set(&x, &po, &pair.points, k, VerifyOptions::default())?;
            let points: Vec<WindowDef> = pair.points.iter().map(|p| WindowDef::of(p, x.alphabet())).collect();
            if let Some(path) = out {
                write_json(&path, to_value(&points))?;
            }
            emit(json!({
                "method": method,
                "params": pair.params,
                "points": points,
                "bridges": pair.bridges.len(),
                "schedule": pair.schedule,
                "certificate": cert,
            }));
            Ok(cert.certified())
        }
        ShadowCmd::Verify { def, po, set, k, no_diameter } => {
            let x = def.load()?;
            let po = load_po(&x, &po)?;
            let members = io::load_windows(&set, x.alphabet())?;
            let opts = VerifyOptions { diameter: !no_diameter, max_members: None };
            let cert = shadowing::verify_shadow_set(&x, &po, &members, k, opts)?;
            emit(to_value(&cert));
            Ok(cert.passed())
        }
        ShadowCmd::Search { def, po, n, k, halfwidth, budget, no_diameter } => {
            let x = def.load()?;
            let po = load_po(&x, &po)?;
            let opts = SearchOptions { max_members: n, k, halfwidth, diameter: !no_diameter, budget };
            let outcome = shadowing::search_shadow_sets(&x, &po, opts)?;
            let members: Option<Vec<WindowDef>> =
                outcome.found().map(|m| m.iter().map(|w| WindowDef::of(w, x.alphabet())).collect());
            emit(json!({ "options": opts, "found": members, "outcome": outcome }));
            Ok(members.is_some())
        }
        ShadowCmd::Splice { def, seed, switches, delta, first, last, out } => {
            let x = def.load()?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let splice =
                shadowing::random_splice(&x, &mut rng, switches, DyadicScale(delta), delta as usize + 1, first, last)?;
            let value = to_value(&PseudoOrbitDef::of(&splice.po, x.alphabet()));
            match out {
                Some(path) => write_json(&path, value)?,
                None => emit(value),
            }
            Ok(true)
        }
    }
}

fn interval_cmd(cmd: IntervalCmd) -> Outcome {
    let IntervalCmd::Demo { delta, epsilon, grid, budget, csv } = cmd;
    let po = interval::ascending_pseudo_orbit(delta)?;
    if csv {
        let rows: String = po.iter().enumerate().map(|(i, x)| format!("{i},{x}\n")).collect();
        out(&format!("i,x\n{rows}"));
        return Ok(true);
    }
    let cert = interval::neighborhood_failure_certificate(epsilon, grid.min(1e-4))?;
    let pair = interval::numeric_shadow_search(&po, epsilon, grid, 2, budget)?;
    let single = interval::numeric_shadow_search(&po, epsilon, grid, 1, budget)?;
    emit(json!({
        "delta": delta,
        "epsilon": epsilon,
        "pseudo_orbit": po,
        "failure_certificate": cert,
        "two_point_set": pair,
        "single_point": single,
    }));
    Ok(pair.is_some() && single.is_none())
}

fn repro_cmd(args: ReproArgs) -> Outcome {
    let report = repro::run(&args.scenario, ReproOptions { seed: args.seed, trials: args.trials })?;
    if args.table {
        out(&report.to_table());
    } else {
        out(&(report.to_json() + "\n"));
    }
    Ok(report.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Shift(c) => shift_cmd(c),
        Command::Mixing(c) => mixing_cmd(c),
        Command::Qft(c) => qft_cmd(c),
        Command::Shadow(c) => shadow_cmd(c),
        Command::Interval(c) => interval_cmd(c),
        Command::Repro(a) => repro_cmd(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::BridgeFailure { .. } | Error::QftBridgeFailure { .. })) => {
            emit(json!({ "error": e.to_string() }));
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
