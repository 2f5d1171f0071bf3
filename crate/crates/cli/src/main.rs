mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use pmutl::acceptance;
use pmutl::markov::{emit_mc, gen_family, parse_mc};
use pmutl::prob::parse_rational;
use pmutl::semantics::{eval, pctl_eval, Assignment};
use pmutl::syntax::{guard, parse_closed_pmutl, parse_pctl, parse_pmutl, translate_qualitative};
use pmutl::{sat_with, ChainFamily, GameConfig, SatError, SatVerdict};

use report::{Criterion, Outcome, RunReport, EXIT_CAP, EXIT_NEGATIVE, EXIT_POSITIVE, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "pmutl", version, about = "Model checking and satisfiability for the probabilistic mu-calculus")]
struct Cli {
    /// Print the run report as one JSON object.
    #[arg(long, global = true)]
    json: bool,
    /// Add wall-clock time to the statistics (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Model check a formula on a chain: `check MODEL [STATE] FORMULA`.
    Check {
        model: PathBuf,
        /// The state, or the formula when no state is given.
        first: String,
        formula: Option<String>,
        /// Read the formula as PCTL.
        #[arg(long)]
        pctl: bool,
    },
    /// Decide satisfiability and produce a witness chain.
    Sat {
        formula: String,
        /// Write the witness chain here.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = pmutl::gadget::DEFAULT_MAX_GADGETS)]
        max_gadgets: usize,
        #[arg(long, default_value_t = pmutl::omega::DEFAULT_MAX_DPA_STATES)]
        max_dpa_states: usize,
        #[arg(long, default_value_t = pmutl::game::DEFAULT_MAX_GAME_LOCATIONS)]
        max_game_locations: usize,
    },
    /// Translate a qualitative PCTL formula.
    Translate { formula: String },
    /// Rewrite a formula into guarded form.
    Guard { formula: String },
    /// Write a chain of a named family: PARAM is `n`, or `x,y,z` for thm4.
    Gen { kind: Kind, param: String, out: PathBuf },
    /// Run the acceptance battery.
    Selftest {
        /// Run only this criterion.
        #[arg(long)]
        only: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Mn,
    Mprime,
    Mdoubleprime,
    Thm4,
    Hacker,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let clock = Instant::now();
    let mut report = run(cli.command, argv);
    if cli.timing {
        report = report.with_stat("wall_ms", clock.elapsed().as_millis());
    }
    if cli.json {
        println!("{}", report.to_json());
    } else {
        let (out, err) = report.to_text();
        print!("{out}");
        eprint!("{err}");
    }
    ExitCode::from(u8::try_from(report.exit_code).unwrap_or(1))
}

fn run(command: Command, argv: Vec<String>) -> RunReport {
    match command {
        Command::Check { model, first, formula, pctl } => {
            let (state, formula) = match formula {
                Some(f) => (Some(first), f),
                None => (None, first),
            };
            cmd_check(argv, &model, state.as_deref(), &formula, pctl)
        }
        Command::Sat { formula, witness, max_gadgets, max_dpa_states, max_game_locations } => {
            let cfg = GameConfig {
                max_gadgets,
                max_dpa_states,
                max_locations: max_game_locations,
                ..GameConfig::default()
            };
            cmd_sat(argv, &formula, witness.as_ref(), &cfg)
        }
        Command::Translate { formula } => match parse_pctl(&formula) {
            Err(e) => RunReport::error(argv, "parse", e, EXIT_USAGE),
            Ok(g) => match translate_qualitative(&g) {
                Err(e) => RunReport::error(argv, "translate", e, EXIT_USAGE),
                Ok(f) => RunReport::new(argv, Outcome::Formula { text: f.to_string() }, EXIT_POSITIVE),
            },
        },
        Command::Guard { formula } => match parse_pmutl(&formula) {
            Err(e) => RunReport::error(argv, "parse", e, EXIT_USAGE),
            Ok(f) => RunReport::new(argv, Outcome::Formula { text: guard(&f).to_string() }, EXIT_POSITIVE),
        },
        Command::Gen { kind, param, out } => cmd_gen(argv, kind, &param, &out),
        Command::Selftest { only } => cmd_selftest(argv, only),
    }
}

fn cmd_check(argv: Vec<String>, model: &PathBuf, state: Option<&str>, formula: &str, pctl: bool) -> RunReport {
    let text = match std::fs::read_to_string(model) {
        Ok(t) => t,
        Err(e) => return RunReport::error(argv, "read", format!("{}: {e}", model.display()), EXIT_USAGE),
    };
    let pmc = match parse_mc(&text) {
        Ok(m) => m,
        Err(e) => return RunReport::error(argv, "model", e, EXIT_USAGE),
    };
    let m = &pmc.chain;
    let s = match state {
        None => pmc.initial,
        Some(name) => match m.index_of(name) {
            Some(s) => s,
            None => return RunReport::error(argv, "model", format!("no state named `{name}`"), EXIT_USAGE),
        },
    };
    let set = if pctl {
        match parse_pctl(formula) {
            Ok(g) => pctl_eval(&g, m),
            Err(e) => return RunReport::error(argv, "parse", e, EXIT_USAGE),
        }
    } else {
        let f = match parse_closed_pmutl(formula) {
            Ok(f) => f,
            Err(e) => return RunReport::error(argv, "parse", e, EXIT_USAGE),
        };
        match eval(&f, m, &Assignment::new()) {
            Ok(set) => set,
            Err(e) => return RunReport::error(argv, "eval", e, EXIT_USAGE),
        }
    };
    let satisfying: Vec<String> = set.iter().map(|t| m.name(t).to_string()).collect();
    let state = m.name(s).to_string();
    let (result, code) = if set.contains(s) {
        (Outcome::Holds { state, satisfying }, EXIT_POSITIVE)
    } else {
        (Outcome::Fails { state, satisfying }, EXIT_NEGATIVE)
    };
    RunReport::new(argv, result, code).with_stat("chain_states", m.num_states())
}

fn cmd_sat(argv: Vec<String>, formula: &str, witness: Option<&PathBuf>, cfg: &GameConfig) -> RunReport {
    let f = match parse_closed_pmutl(formula) {
        Ok(f) => f,
        Err(e) => return RunReport::error(argv, "parse", e, EXIT_USAGE),
    };
    let report = match sat_with(&f, cfg) {
        Ok(r) => r,
        Err(e) => {
            let (stage, code) = match &e {
                SatError::Game(_) => ("game", EXIT_CAP),
                SatError::NotClosed | SatError::Papa(_) => ("automaton", EXIT_USAGE),
                SatError::WitnessRejected | SatError::Eval(_) => ("internal", EXIT_CAP),
            };
            return RunReport::error(argv, stage, e, code);
        }
    };
    let (result, code) = match &report.verdict {
        SatVerdict::Unsat => (Outcome::Unsat, EXIT_NEGATIVE),
        SatVerdict::Sat(w) => {
            let text = emit_mc(w);
            if let Some(path) = witness {
                if let Err(e) = std::fs::write(path, &text) {
                    return RunReport::error(argv, "write", format!("{}: {e}", path.display()), EXIT_USAGE);
                }
            }
            let witness_path = witness.map(|p| p.display().to_string());
            (Outcome::Sat { witness: text, witness_path }, EXIT_POSITIVE)
        }
    };
    let s = &report.stats;
    RunReport::new(argv, result, code)
        .with_stat("automaton_states", s.automaton_states)
        .with_stat("gadgets", s.gadgets)
        .with_stat("word_automaton_states", s.word_automaton_states)
        .with_stat("game_locations", s.game_locations)
        .with_stat("game_moves", s.game_moves)
}

fn cmd_gen(argv: Vec<String>, kind: Kind, param: &str, out: &PathBuf) -> RunReport {
    let family = match kind {
        Kind::Thm4 => {
            let parts: Vec<_> = param.split(',').map(|p| parse_rational(p.trim())).collect();
            match parts.as_slice() {
                [Some(x), Some(y), Some(z)] => ChainFamily::Thm4 { x: x.clone(), y: y.clone(), z: z.clone() },
                _ => return RunReport::error(argv, "usage", "thm4 expects `x,y,z`", EXIT_USAGE),
            }
        }
        _ => {
            let Ok(n) = param.parse::<u64>() else {
                return RunReport::error(argv, "usage", format!("`{param}` is not a count"), EXIT_USAGE);
            };
            let size = usize::try_from(n).unwrap_or(usize::MAX);
            match kind {
                Kind::Mn => ChainFamily::Mn(size),
                Kind::Mprime => ChainFamily::MPrimeN(size),
                Kind::Mdoubleprime => ChainFamily::MDoublePrimeN(size),
                Kind::Hacker => ChainFamily::Hacker(n),
                Kind::Thm4 => unreachable!(),
            }
        }
    };
    let pmc = match gen_family(&family) {
        Ok(m) => m,
        Err(e) => return RunReport::error(argv, "usage", e, EXIT_USAGE),
    };
    if let Err(e) = std::fs::write(out, emit_mc(&pmc)) {
        return RunReport::error(argv, "write", format!("{}: {e}", out.display()), EXIT_USAGE);
    }
    RunReport::new(argv, Outcome::Artifact { path: out.display().to_string() }, EXIT_POSITIVE)
        .with_stat("chain_states", pmc.chain.num_states())
}

fn cmd_selftest(argv: Vec<String>, only: Option<usize>) -> RunReport {
    let ids: Vec<usize> = match only {
        Some(i) if (1..=acceptance::count()).contains(&i) => vec![i],
        Some(i) => return RunReport::error(argv, "usage", format!("no criterion {i}"), EXIT_USAGE),
        None => (1..=acceptance::count()).collect(),
    };
    let criteria: Vec<Criterion> = ids
        .into_iter()
        .map(acceptance::run)
        .map(|o| Criterion { id: o.id, title: o.title.to_string(), passed: o.passed, detail: o.detail })
        .collect();
    let code = if criteria.iter().all(|c| c.passed) { EXIT_POSITIVE } else { EXIT_NEGATIVE };
    RunReport::new(argv, Outcome::Selftest { criteria }, code)
}
