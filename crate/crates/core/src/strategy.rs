//! Mechanisms, exhaustive misreport search, and the manipulation example.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::algorithms::{deferred_acceptance, propose_exchange, top_trading_cycles};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::model::{AgentId, Market, Match, PreferenceOrder};
use crate::oracle::Oracle;

pub const DEFAULT_MAX_FIRMS: usize = 4;

/// Picks one element of a nonempty agreeable core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelectionRule {
    /// Canonically smallest.
    First,
    /// Canonically largest.
    Last,
    /// The first listed match that is in the core, else the smallest.
    Priority(Vec<Match>),
}

impl SelectionRule {
    pub fn select(&self, core: &BTreeSet<Match>) -> Option<Match> {
        match self {
            SelectionRule::First => core.first().cloned(),
            SelectionRule::Last => core.last().cloned(),
            SelectionRule::Priority(list) => list
                .iter()
                .find(|m| core.contains(*m))
                .cloned()
                .or_else(|| core.first().cloned()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mechanism {
    DeferredAcceptance,
    TopTradingCycles,
    ProposeExchange,
    OracleSelect(SelectionRule),
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mechanism::DeferredAcceptance => write!(f, "da"),
            Mechanism::TopTradingCycles => write!(f, "ttc"),
            Mechanism::ProposeExchange => write!(f, "pe"),
            Mechanism::OracleSelect(rule) => write!(f, "oracle-select({rule:?})"),
        }
    }
}

pub fn run_mechanism(mech: &Mechanism, market: &Market) -> Result<Match> {
    Ok(match mech {
        Mechanism::DeferredAcceptance => deferred_acceptance(market),
        Mechanism::TopTradingCycles => top_trading_cycles(market),
        Mechanism::ProposeExchange => propose_exchange(market),
        Mechanism::OracleSelect(rule) => {
            let core = Oracle::default().agreeable_core(market)?;
            rule.select(&core).expect("the agreeable core is never empty")
        }
    })
}

/// A worker who gains by misreporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManipulationWitness {
    pub manipulator: AgentId,
    pub true_market: Market,
    pub misreport: PreferenceOrder,
    pub honest_outcome: Match,
    pub deviant_outcome: Match,
}

impl ManipulationWitness {
    /// Reruns the mechanism on both profiles and checks the strict gain under
    /// the true preference.
    pub fn verify(&self, mech: &Mechanism) -> Result<bool> {
        let honest = run_mechanism(mech, &self.true_market)?;
        let deviant = run_mechanism(mech, &self.true_market.with_preference(self.misreport.clone())?)?;
        let w = self.manipulator;
        Ok(honest == self.honest_outcome
            && deviant == self.deviant_outcome
            && self.true_market.strictly_prefers(w, deviant.partner(w), honest.partner(w)))
    }

    pub fn describe(&self) -> String {
        let m = &self.true_market;
        let w = self.manipulator;
        let order: Vec<&str> = self.misreport.ranking().iter().map(|&x| m.name(x)).collect();
        format!(
            "worker {} reports [{}] and moves from {} to {}",
            m.name(w),
            order.join(", "),
            m.name(self.honest_outcome.partner(w)),
            m.name(self.deviant_outcome.partner(w)),
        )
    }
}

/// Every strict order a worker could report, in canonical order.
pub fn all_reports(market: &Market, w: AgentId) -> impl Iterator<Item = PreferenceOrder> + '_ {
    let mut items: Vec<AgentId> = market.firms().collect();
    items.push(w);
    items.sort();
    let n = items.len();
    items
        .into_iter()
        .permutations(n)
        .map(move |ranking| PreferenceOrder::new(w, ranking, market.n_firms()).expect("a permutation is a valid order"))
}

/// Scans every strict misreport of each worker in `scope` and returns the
/// first profitable one, or `None`.
pub fn find_manipulation(mech: &Mechanism, market: &Market, scope: &[AgentId]) -> Result<Option<ManipulationWitness>> {
    find_manipulation_with_budget(mech, market, scope, DEFAULT_MAX_FIRMS)
}

pub fn find_manipulation_with_budget(
    mech: &Mechanism,
    market: &Market,
    scope: &[AgentId],
    max_firms: usize,
) -> Result<Option<ManipulationWitness>> {
    if market.n_firms() > max_firms {
        return Err(Error::SearchBudgetExceeded { firms: market.n_firms(), max_firms });
    }
    let honest = run_mechanism(mech, market)?;
    let mut scope: Vec<AgentId> = scope.to_vec();
    scope.sort();
    scope.dedup();
    for w in scope {
        let truth = market.preference(w);
        for report in all_reports(market, w) {
            if &report == truth {
                continue;
            }
            let deviant = run_mechanism(mech, &market.with_preference(report.clone())?)?;
            if market.strictly_prefers(w, deviant.partner(w), honest.partner(w)) {
                return Ok(Some(ManipulationWitness {
                    manipulator: w,
                    true_market: market.clone(),
                    misreport: report,
                    honest_outcome: honest,
                    deviant_outcome: deviant,
                }));
            }
        }
    }
    Ok(None)
}

/// One selection rule's fate in the manipulation example.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleOutcome {
    pub label: String,
    pub rule: SelectionRule,
    /// Manipulation following the argument's case split.
    pub chain_witness: ManipulationWitness,
    /// First witness found by exhaustive search at P2, then P3.
    pub searched_witness: Option<(usize, ManipulationWitness)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem2Report {
    pub cores: [BTreeSet<Match>; 4],
    pub named: fixtures::ManipulationMatches,
    pub rules: Vec<RuleOutcome>,
}

impl Theorem2Report {
    pub fn passed(&self) -> bool {
        self.rules.iter().all(|r| r.searched_witness.is_some())
    }
}

impl fmt::Display for Theorem2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let market = &fixtures::manipulation_profiles()[0];
        for (i, core) in self.cores.iter().enumerate() {
            let listed: Vec<String> = core.iter().map(|m| format!("{{{}}}", market.describe(m))).collect();
            writeln!(f, "P{} core: {}", i + 1, listed.join(" "))?;
        }
        for r in &self.rules {
            writeln!(f, "rule {}: {}", r.label, r.chain_witness.describe())?;
            match &r.searched_witness {
                Some((p, w)) => writeln!(f, "  search at P{}: {}", p + 1, w.describe())?,
                None => writeln!(f, "  search: no witness at P2 or P3")?,
            }
        }
        Ok(())
    }
}

fn expect_core(label: &str, got: &BTreeSet<Match>, want: &[&Match], market: &Market) -> Result<()> {
    let want: BTreeSet<Match> = want.iter().map(|m| (*m).clone()).collect();
    if got != &want {
        let show = |s: &BTreeSet<Match>| s.iter().map(|m| market.describe(m)).collect::<Vec<_>>().join(" | ");
        return Err(Error::FixtureCoreMismatch {
            profile: label.to_string(),
            detail: format!("expected {}, found {}", show(&want), show(got)),
        });
    }
    Ok(())
}

/// Replays the manipulation example: checks the four profiles' cores, then
/// for each of the four ways to select from them, follows the case split to
/// a profitable misreport and confirms one by exhaustive search.
pub fn theorem2_trace() -> Result<Theorem2Report> {
    let profiles = fixtures::manipulation_profiles();
    let oracle = Oracle::default();
    let named = fixtures::manipulation_matches(&profiles[0]);
    let (circle, square, tilde) = (&named.circle, &named.square, &named.tilde);
    let cores = [
        oracle.agreeable_core(&profiles[0])?,
        oracle.agreeable_core(&profiles[1])?,
        oracle.agreeable_core(&profiles[2])?,
        oracle.agreeable_core(&profiles[3])?,
    ];
    let market = &profiles[0];
    expect_core("P1", &cores[0], &[circle], market)?;
    expect_core("P2", &cores[1], &[circle, square], market)?;
    expect_core("P3", &cores[2], &[square, tilde], market)?;
    expect_core("P4", &cores[3], &[square], market)?;

    let id = |s: &str| market.lookup(s).expect("fixture name");
    let rules = [
        ("P2 square", SelectionRule::Priority(vec![square.clone()])),
        ("P2 circle, P3 square", SelectionRule::Priority(vec![circle.clone(), square.clone()])),
        ("P2 circle, P3 tilde", SelectionRule::Priority(vec![circle.clone(), tilde.clone()])),
        ("P2 square, P3 tilde", SelectionRule::Priority(vec![tilde.clone(), square.clone()])),
    ];
    let workers: Vec<AgentId> = market.workers().collect();
    let mut outcomes = Vec::with_capacity(rules.len());
    for (label, rule) in rules {
        let mech = Mechanism::OracleSelect(rule.clone());
        let at_p2 = rule.select(&cores[1]).expect("nonempty");
        let at_p3 = rule.select(&cores[2]).expect("nonempty");
        // who deviates, at which true profile, and which profile it produces
        let (who, truth, fake) = if &at_p2 == square {
            ("1", 1, 0)
        } else if &at_p3 == square {
            ("2", 1, 2)
        } else {
            ("9", 2, 3)
        };
        let w = id(who);
        let honest = run_mechanism(&mech, &profiles[truth])?;
        let deviant = run_mechanism(&mech, &profiles[fake])?;
        let chain_witness = ManipulationWitness {
            manipulator: w,
            true_market: profiles[truth].clone(),
            misreport: profiles[fake].preference(w).clone(),
            honest_outcome: honest,
            deviant_outcome: deviant,
        };
        if !chain_witness.verify(&mech)? {
            return Err(Error::FixtureCoreMismatch {
                profile: format!("P{}", truth + 1),
                detail: format!("rule {label}: {} is not profitable", chain_witness.describe()),
            });
        }
        let mut searched_witness = None;
        for p in [1, 2] {
            if let Some(found) = find_manipulation(&mech, &profiles[p], &workers)? {
                searched_witness = Some((p, found));
                break;
            }
        }
        outcomes.push(RuleOutcome { label: label.to_string(), rule, chain_witness, searched_witness });
    }
    Ok(Theorem2Report { cores, named, rules: outcomes })
}
