use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use agreeable::algorithms::propose_exchange_traced;
use agreeable::io::{
    describe_path, generate_random_instance, parse_instance, parse_match, render_trace, serialize_instance,
    InstanceError, MatchDocument, RunReport, Verification,
};
use agreeable::oracle::{agreeable_core, is_in_agreeable_core_bruteforce};
use agreeable::strategy::{find_manipulation, theorem2_trace, Mechanism, SelectionRule};
use agreeable::structure::verify_theorem3;
use agreeable::{
    deferred_acceptance, find_blocking_path, fixtures, is_individually_rational, top_trading_cycles, AgentId, Market,
    Match,
};
use clap::{Parser, Subcommand, ValueEnum};
use log::{debug, info};
use serde::Serialize;

/// Two-sided matching with a status quo.
#[derive(Parser, Debug)]
#[command(name = "agreeable", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run Propose-Exchange and print a JSON report.
    Solve {
        #[command(flatten)]
        input: InputArg,
        /// Include one line per Propose and Exchange round.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = Verify::Path)]
        verify: Verify,
    },
    /// Run worker-proposing deferred acceptance, ignoring the status quo.
    Da {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = Verify::Path)]
        verify: Verify,
    },
    /// Run top trading cycles from the status quo.
    Ttc {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = Verify::Path)]
        verify: Verify,
    },
    /// Check whether a match is in the agreeable core. Exits 1 if it is not.
    Check {
        #[command(flatten)]
        input: InputArg,
        /// JSON match document with `pairs` and `unmatched`.
        #[arg(long = "match", value_name = "FILE")]
        matching: PathBuf,
        /// Cross-check against the brute-force oracle.
        #[arg(long)]
        oracle: bool,
    },
    /// List the whole agreeable core by brute force.
    Enumerate {
        #[command(flatten)]
        input: InputArg,
    },
    /// Search for a profitable worker misreport. Exits 1 if one exists.
    Manipulate {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum, default_value_t = MechanismArg::Pe)]
        mechanism: MechanismArg,
        /// Restrict the search to one worker.
        #[arg(long, value_name = "NAME")]
        worker: Option<String>,
    },
    /// Check the join and meet claims on the agreeable core.
    Structure {
        #[command(flatten)]
        input: InputArg,
    },
    /// Print a random instance.
    Gen {
        #[arg(long)]
        workers: usize,
        #[arg(long)]
        firms: usize,
        /// Number of status-quo pairs.
        #[arg(long, default_value_t = 0)]
        sq: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Recompute the bundled worked examples and compare.
    PaperFigs,
}

#[derive(clap::Args, Debug)]
struct InputArg {
    /// Instance file, or `-` for stdin.
    #[arg(long, short, value_name = "FILE")]
    input: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Verify {
    Path,
    Oracle,
    Off,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MechanismArg {
    Da,
    Ttc,
    Pe,
    /// Canonically first core element.
    CoreFirst,
    /// Canonically last core element.
    CoreLast,
}

impl MechanismArg {
    fn mechanism(self) -> Mechanism {
        match self {
            MechanismArg::Da => Mechanism::DeferredAcceptance,
            MechanismArg::Ttc => Mechanism::TopTradingCycles,
            MechanismArg::Pe => Mechanism::ProposeExchange,
            MechanismArg::CoreFirst => Mechanism::OracleSelect(SelectionRule::First),
            MechanismArg::CoreLast => Mechanism::OracleSelect(SelectionRule::Last),
        }
    }
}

enum Failure {
    Input(String),
    Invariant(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Invariant(m) => write!(f, "invariant violated: {m}"),
        }
    }
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<agreeable::Error> for Failure {
    fn from(e: agreeable::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Outcome {
    Ok,
    Negative,
}

fn read_text(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}

fn load(input: &InputArg) -> Result<Market, Failure> {
    let market = parse_instance(&read_text(&input.input)?)?;
    info!("loaded {} workers and {} firms", market.n_workers(), market.n_firms());
    Ok(market)
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn verification(market: &Market, mu: &Match, verify: Verify) -> Result<Verification, Failure> {
    let mut v = Verification {
        individually_rational: is_individually_rational(market, mu),
        in_core_by_path: None,
        blocking_path: None,
        in_core_by_oracle: None,
    };
    if verify == Verify::Off {
        return Ok(v);
    }
    let path = find_blocking_path(market, mu);
    v.in_core_by_path = Some(v.individually_rational && path.is_none());
    v.blocking_path = path.map(|p| describe_path(market, &p));
    if verify == Verify::Oracle {
        v.in_core_by_oracle = Some(is_in_agreeable_core_bruteforce(market, mu)?);
    }
    Ok(v)
}

fn run_baseline(
    input: &InputArg,
    verify: Verify,
    name: &str,
    solve: fn(&Market) -> Match,
) -> Result<Outcome, Failure> {
    let market = load(input)?;
    let mu = solve(&market);
    let report = RunReport {
        algorithm: name.to_string(),
        matching: MatchDocument::from_match(&market, &mu),
        verification: verification(&market, &mu, verify)?,
        trace: None,
    };
    print_json(&report);
    Ok(Outcome::Ok)
}

fn solve(input: &InputArg, trace: bool, verify: Verify) -> Result<Outcome, Failure> {
    let market = load(input)?;
    let (mu, rounds) = propose_exchange_traced(&market);
    debug!("{} propose rounds, {} exchange rounds", rounds.propose.len(), rounds.exchange.len());
    let v = verification(&market, &mu, verify)?;
    let report = RunReport {
        algorithm: "propose-exchange".to_string(),
        matching: MatchDocument::from_match(&market, &mu),
        verification: v.clone(),
        trace: trace.then(|| render_trace(&market, &rounds)),
    };
    print_json(&report);
    if !v.individually_rational || v.in_core_by_path == Some(false) || v.in_core_by_oracle == Some(false) {
        return Err(Failure::Invariant(format!("{} is not in the agreeable core", market.describe(&mu))));
    }
    Ok(Outcome::Ok)
}

fn check(input: &InputArg, matching: &PathBuf, oracle: bool) -> Result<Outcome, Failure> {
    let market = load(input)?;
    let mu = parse_match(&market, &read_text(matching)?)?;
    let sq = market.status_quo();
    let unhappy = market.agents().find(|&a| market.strictly_prefers(a, sq.partner(a), mu.partner(a)));
    let path = find_blocking_path(&market, &mu);
    let in_core = unhappy.is_none() && path.is_none();
    if oracle {
        let by_oracle = is_in_agreeable_core_bruteforce(&market, &mu)?;
        if by_oracle != in_core {
            return Err(Failure::Invariant(format!("path check says {in_core}, oracle says {by_oracle}")));
        }
    }
    if let Some(a) = unhappy {
        println!(
            "not individually rational: {} prefers {} to {}",
            market.name(a),
            market.name(sq.partner(a)),
            market.name(mu.partner(a))
        );
    }
    match path {
        Some(p) => {
            let names: Vec<&str> = p.vertices().into_iter().map(|v| market.name(v)).collect();
            println!("blocked; path over {{{}}}", names.join(", "));
            println!("path: {}", describe_path(&market, &p).join(" "));
        }
        None if in_core => println!("in the agreeable core"),
        None => {}
    }
    Ok(if in_core { Outcome::Ok } else { Outcome::Negative })
}

#[derive(Serialize)]
struct CoreListing {
    size: usize,
    core: Vec<MatchDocument>,
}

fn enumerate(input: &InputArg) -> Result<Outcome, Failure> {
    let market = load(input)?;
    let core = agreeable_core(&market)?;
    print_json(&CoreListing { size: core.len(), core: core.iter().map(|m| MatchDocument::from_match(&market, m)).collect() });
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct WitnessDocument {
    mechanism: String,
    manipulator: String,
    misreport: Vec<String>,
    honest: MatchDocument,
    deviant: MatchDocument,
    summary: String,
}

fn manipulate(input: &InputArg, mechanism: MechanismArg, worker: Option<&str>) -> Result<Outcome, Failure> {
    let market = load(input)?;
    let scope: Vec<AgentId> = match worker {
        Some(name) => match market.lookup(name) {
            Ok(a) if a.is_worker() => vec![a],
            _ => return Err(Failure::Input(format!("no worker named {name}"))),
        },
        None => market.workers().collect(),
    };
    let mech = mechanism.mechanism();
    match find_manipulation(&mech, &market, &scope)? {
        Some(w) => {
            if !w.verify(&mech)? {
                return Err(Failure::Invariant("witness does not reproduce".to_string()));
            }
            print_json(&WitnessDocument {
                mechanism: mech.to_string(),
                manipulator: market.name(w.manipulator).to_string(),
                misreport: w.misreport.ranking().iter().map(|&a| market.name(a).to_string()).collect(),
                honest: MatchDocument::from_match(&market, &w.honest_outcome),
                deviant: MatchDocument::from_match(&market, &w.deviant_outcome),
                summary: w.describe(),
            });
            Ok(Outcome::Negative)
        }
        None => {
            println!("no profitable misreport for {}", mech);
            Ok(Outcome::Ok)
        }
    }
}

fn structure(input: &InputArg) -> Result<Outcome, Failure> {
    let market = load(input)?;
    let report = verify_theorem3(&market)?;
    print!("{report}");
    if report.passed() {
        Ok(Outcome::Ok)
    } else {
        Err(Failure::Invariant(format!("{} structure checks failed", report.failures.len())))
    }
}

fn gen(workers: usize, firms: usize, sq: usize, seed: u64) -> Result<Outcome, Failure> {
    let market = generate_random_instance(workers, firms, sq, seed)?;
    print!("{}", serialize_instance(&market));
    Ok(Outcome::Ok)
}

fn report_line(ok: bool, label: &str, detail: String) -> bool {
    println!("{} {label}: {detail}", if ok { "ok  " } else { "FAIL" });
    ok
}

fn paper_figs() -> Result<Outcome, Failure> {
    let mut ok = true;

    let m = fixtures::regretted_contracts();
    let pe = agreeable::propose_exchange(&m);
    let core = agreeable_core(&m)?;
    let star = fixtures::regretted_contracts_star(&m);
    ok &= report_line(
        pe == star && core == BTreeSet::from([star.clone()]),
        "regretted contracts",
        format!("PE gives {}; core size {}", m.describe(&pe), core.len()),
    );
    let da = deferred_acceptance(&m);
    ok &= report_line(
        !is_individually_rational(&m, &da),
        "regretted contracts, status quo ignored",
        format!("DA gives {}, not individually rational", m.describe(&da)),
    );

    let m = fixtures::no_lattice();
    let (star, tilde) = fixtures::no_lattice_matches(&m);
    let core = agreeable_core(&m)?;
    let pe = agreeable::propose_exchange(&m);
    ok &= report_line(
        core == BTreeSet::from([star.clone(), tilde.clone()]) && core.contains(&pe),
        "no lattice",
        format!("core {{{}}} and {{{}}}; PE gives {}", m.describe(&star), m.describe(&tilde), m.describe(&pe)),
    );
    let ttc = top_trading_cycles(&m);
    ok &= report_line(
        m.describe(&ttc) == "1-C, 2-A; unmatched: 3, B" && !core.contains(&ttc),
        "no lattice, top trading cycles",
        format!("TTC gives {}, outside the core", m.describe(&ttc)),
    );

    let report = theorem2_trace()?;
    for line in report.to_string().lines() {
        println!("     {line}");
    }
    ok &= report_line(report.passed(), "manipulation profiles", format!("{} selection rules checked", report.rules.len()));

    if ok {
        Ok(Outcome::Ok)
    } else {
        Err(Failure::Invariant("a worked example did not reproduce".to_string()))
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Solve { input, trace, verify } => solve(&input, trace, verify),
        Command::Da { input, verify } => run_baseline(&input, verify, "deferred-acceptance", deferred_acceptance),
        Command::Ttc { input, verify } => run_baseline(&input, verify, "top-trading-cycles", top_trading_cycles),
        Command::Check { input, matching, oracle } => check(&input, &matching, oracle),
        Command::Enumerate { input } => enumerate(&input),
        Command::Manipulate { input, mechanism, worker } => manipulate(&input, mechanism, worker.as_deref()),
        Command::Structure { input } => structure(&input),
        Command::Gen { workers, firms, sq, seed } => gen(workers, firms, sq, seed),
        Command::PaperFigs => paper_figs(),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(f @ Failure::Input(_)) => {
            eprintln!("{f}");
            ExitCode::from(2)
        }
        Err(f @ Failure::Invariant(_)) => {
            eprintln!("{f}");
            ExitCode::from(3)
        }
    }
}
