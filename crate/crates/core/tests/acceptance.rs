//! Acceptance criteria, one printed verdict per criterion. Runs without the
//! libtest harness so the verdicts always show.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use agreeable::graph::{find_blocking_path_of_kind, length_two_blocking_paths, PathKind};
use agreeable::oracle::{agreeable_core, is_in_agreeable_core_bruteforce, is_pareto_efficient, stable_matches, enumerate_matches};
use agreeable::strategy::{find_manipulation, theorem2_trace, Mechanism};
use agreeable::structure::verify_theorem3;
use agreeable::{
    deferred_acceptance, exchange_phase, fixtures, is_in_agreeable_core, is_individually_rational, propose_exchange,
    propose_phase, AgentId, Market, Match,
};

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Verdict + 'a>);

fn weakly_better_everywhere(market: &Market, hi: &Match, lo: &Match) -> bool {
    market.agents().all(|a| market.weakly_prefers(a, hi.partner(a), lo.partner(a)))
}

fn c1_regretted_contracts() -> Verdict {
    let m = fixtures::regretted_contracts();
    let mu = propose_exchange(&m);
    let core = agreeable_core(&m).unwrap();
    let want = fixtures::regretted_contracts_star(&m);
    verdict(
        mu == want && core == BTreeSet::from([want.clone()]),
        format!("PE = {}; core size {}", m.describe(&mu), core.len()),
    )
}

fn c2_no_lattice() -> Verdict {
    let m = fixtures::no_lattice();
    let (star, tilde) = fixtures::no_lattice_matches(&m);
    let core = agreeable_core(&m).unwrap();
    let exact = core == BTreeSet::from([star.clone(), tilde.clone()]);
    let worker_optimal = |p: &Match, q: &Match| m.workers().all(|w| m.weakly_prefers(w, p.partner(w), q.partner(w)));
    let none_optimal = !worker_optimal(&star, &tilde) && !worker_optimal(&tilde, &star);
    verdict(exact && none_optimal, format!("core size {}, no worker-optimal element: {none_optimal}", core.len()))
}

fn c3_manipulation_example() -> Verdict {
    match theorem2_trace() {
        Ok(report) => {
            let witnessed = report.rules.iter().filter(|r| r.searched_witness.is_some()).count();
            verdict(
                report.passed(),
                format!("cores reproduced; {witnessed}/{} selection rules manipulable", report.rules.len()),
            )
        }
        Err(e) => verdict(false, e.to_string()),
    }
}

fn c4_theorem1(suite: &[Market]) -> Verdict {
    let (mut failures, mut oracle_checked) = (0, 0);
    for m in suite {
        let mu = propose_exchange(m);
        if !is_individually_rational(m, &mu) || !is_in_agreeable_core(m, &mu) {
            failures += 1;
        }
        if m.n_workers() <= 3 && m.n_firms() <= 3 {
            oracle_checked += 1;
            if !is_in_agreeable_core_bruteforce(m, &mu).unwrap() {
                failures += 1;
            }
        }
    }
    verdict(
        failures == 0,
        format!("{} instances ({oracle_checked} oracle-checked), {failures} failures", suite.len()),
    )
}

fn c5_path_equivalence(suite: &[Market]) -> Verdict {
    let (mut matches, mut path_vs_oracle, mut length_two_vs_ir) = (0usize, 0usize, 0usize);
    for m in suite {
        for mu in enumerate_matches(m).unwrap() {
            matches += 1;
            if is_in_agreeable_core(m, &mu) != is_in_agreeable_core_bruteforce(m, &mu).unwrap() {
                path_vs_oracle += 1;
            }
            if is_individually_rational(m, &mu) != length_two_blocking_paths(m, &mu).is_empty() {
                length_two_vs_ir += 1;
            }
        }
    }
    verdict(
        path_vs_oracle == 0 && length_two_vs_ir == 0,
        format!(
            "{matches} matches: path vs oracle {path_vs_oracle} disagreements, length-2 scan vs IR {length_two_vs_ir} disagreements"
        ),
    )
}

fn c6_phases(suite: &[Market]) -> Verdict {
    let mut failures = 0;
    for m in suite {
        let mu1 = propose_phase(m);
        let mu2 = exchange_phase(m, &mu1).unwrap();
        let ok = find_blocking_path_of_kind(m, &mu1, Some(PathKind::Linear)).is_none()
            && find_blocking_path_of_kind(m, &mu2, Some(PathKind::Cyclic)).is_none()
            && weakly_better_everywhere(m, &mu2, &mu1)
            && weakly_better_everywhere(m, &mu1, m.status_quo());
        failures += usize::from(!ok);
    }
    verdict(failures == 0, format!("{} instances, {failures} failures", suite.len()))
}

fn c7_classic(count: u64) -> Verdict {
    let mut failures = 0;
    for seed in 0..count {
        let m = common::random_market(seed, 5, false);
        let same_match = propose_exchange(&m) == deferred_acceptance(&m);
        let same_set = agreeable_core(&m).unwrap() == stable_matches(&m).unwrap();
        failures += usize::from(!(same_match && same_set));
    }
    verdict(failures == 0, format!("{count} instances without status quo, {failures} failures"))
}

fn c8_pareto(suite: &[Market]) -> Verdict {
    let (mut failures, mut efficient_status_quo) = (0, 0);
    for m in suite {
        let core = agreeable_core(m).unwrap();
        for mu in &core {
            failures += usize::from(!is_pareto_efficient(m, mu).unwrap());
        }
        let sq_efficient = is_pareto_efficient(m, m.status_quo()).unwrap();
        let core_is_sq = core == BTreeSet::from([m.status_quo().clone()]);
        efficient_status_quo += usize::from(sq_efficient);
        failures += usize::from(sq_efficient != core_is_sq);
    }
    verdict(
        failures == 0,
        format!("{} instances ({efficient_status_quo} with efficient status quo), {failures} failures", suite.len()),
    )
}

fn c9_join_meet(suite: &[Market]) -> Verdict {
    let (mut failures, mut pairs, mut flagged) = (0, 0, 0);
    for m in suite {
        let report = verify_theorem3(m).unwrap();
        pairs += report.pairs_checked;
        flagged += report.join_not_similar.len();
        failures += report.failures.len();
    }
    verdict(
        failures == 0,
        format!("{} instances, {pairs} similar core pairs, {flagged} dissimilar joins noted, {failures} failures", suite.len()),
    )
}

fn c10_da_resists(count: u64) -> Verdict {
    let mut witnesses = 0;
    for seed in 0..count {
        let m = common::random_market(seed, 3, false);
        let scope: Vec<AgentId> = m.workers().collect();
        witnesses += usize::from(find_manipulation(&Mechanism::DeferredAcceptance, &m, &scope).unwrap().is_some());
    }
    verdict(witnesses == 0, format!("{count} instances without status quo, {witnesses} witnesses"))
}

fn main() -> ExitCode {
    let theorem1 = common::theorem1_suite(500);
    let small = common::small_suite_with_acceptable(100);

    let criteria: Vec<Criterion> = vec![
        ("regretted contracts reproduce", Duration::from_millis(1), Box::new(c1_regretted_contracts)),
        ("no-lattice core is exactly {star, tilde}", Duration::from_millis(10), Box::new(c2_no_lattice)),
        ("manipulation example trace", Duration::from_secs(1), Box::new(c3_manipulation_example)),
        ("PE output is in the agreeable core", Duration::from_secs(60), Box::new(|| c4_theorem1(&theorem1))),
        ("path membership and length-2 scan equivalences", Duration::from_secs(60), Box::new(|| c5_path_equivalence(&small))),
        ("phase properties", Duration::from_secs(60), Box::new(|| c6_phases(&theorem1))),
        ("no status quo: PE = DA, core = stable set", Duration::from_secs(60), Box::new(|| c7_classic(200))),
        ("core elements are Pareto efficient", Duration::from_secs(60), Box::new(|| c8_pareto(&small))),
        ("join and meet within similarity classes", Duration::from_secs(60), Box::new(|| c9_join_meet(&small))),
        ("deferred acceptance is not manipulable", Duration::from_secs(60), Box::new(|| c10_da_resists(50))),
    ];

    let mut failed = 0;
    for (i, (title, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let took = start.elapsed();
        let in_time = took <= *limit;
        let ok = v.ok && in_time;
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {}: {title}: {} ({:.3?}, limit {:?}{})",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            v.detail,
            took,
            limit,
            if in_time { "" } else { ", over time" },
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
