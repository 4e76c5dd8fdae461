//! Free agents, structural similarity, and the join and meet of two matches.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::graph::free_agents;
use crate::model::{AgentId, Market, Match};
use crate::oracle::Oracle;

/// Same free agents, and equal partners for everyone else.
pub fn structurally_similar(market: &Market, mu: &Match, nu: &Match) -> bool {
    let free = free_agents(market, mu);
    free == free_agents(market, nu) && market.agents().all(|a| free.contains(&a) || mu.partner(a) == nu.partner(a))
}

/// No blocking pair among the free agents of `mu`, and no free agent below
/// solitude.
pub fn free_agents_are_stable(market: &Market, mu: &Match) -> bool {
    let free = free_agents(market, mu);
    let above_self = free.iter().all(|&a| market.weakly_prefers(a, mu.partner(a), a));
    let no_pair = free.iter().filter(|a| a.is_worker()).all(|&w| {
        free.iter().filter(|a| a.is_firm()).all(|&f| {
            !(market.strictly_prefers(w, f, mu.partner(w)) && market.strictly_prefers(f, w, mu.partner(f)))
        })
    });
    above_self && no_pair
}

/// Pointwise selection that may or may not be a match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinMeetResult {
    /// Partner of each agent, workers first.
    pub candidate: Vec<AgentId>,
    pub is_match: bool,
}

impl JoinMeetResult {
    fn build(market: &Market, candidate: Vec<AgentId>) -> Self {
        let is_match = Match::from_assignment(market.n_workers(), market.n_firms(), candidate.clone()).is_ok();
        JoinMeetResult { candidate, is_match }
    }

    pub fn to_match(&self, market: &Market) -> Option<Match> {
        Match::from_assignment(market.n_workers(), market.n_firms(), self.candidate.clone()).ok()
    }
}

fn select(market: &Market, mu: &Match, nu: &Match, workers_better: bool) -> JoinMeetResult {
    let candidate = market
        .agents()
        .map(|a| {
            let (x, y) = (mu.partner(a), nu.partner(a));
            let better = if market.weakly_prefers(a, x, y) { x } else { y };
            let worse = if better == x { y } else { x };
            if a.is_worker() == workers_better {
                better
            } else {
                worse
            }
        })
        .collect();
    JoinMeetResult::build(market, candidate)
}

/// Workers get the better and firms the worse of their two partners.
pub fn join(market: &Market, mu: &Match, nu: &Match) -> JoinMeetResult {
    select(market, mu, nu, true)
}

/// Workers get the worse and firms the better of their two partners.
pub fn meet(market: &Market, mu: &Match, nu: &Match) -> JoinMeetResult {
    select(market, mu, nu, false)
}

fn matched_to_firm(m: &JoinMeetResult, market: &Market, a: AgentId) -> bool {
    m.candidate[market.slot(a)] != a
}

/// Result of checking the join and meet claims on one market's agreeable
/// core.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub core_size: usize,
    /// Structural-similarity classes, as indices into the canonical core order.
    pub classes: Vec<Vec<usize>>,
    pub pairs_checked: usize,
    pub failures: Vec<String>,
    /// Core pairs whose join is a core match but not structurally similar to
    /// them. Not a failure.
    pub join_not_similar: Vec<(usize, usize)>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "core size {}, {} similarity classes, {} pairs checked",
            self.core_size,
            self.classes.len(),
            self.pairs_checked
        )?;
        if self.pairs_checked == 0 {
            writeln!(f, "no structurally similar pair exists, nothing to check")?;
        }
        for (i, j) in &self.join_not_similar {
            writeln!(f, "note: join of core matches {i} and {j} is not structurally similar to them")?;
        }
        for line in &self.failures {
            writeln!(f, "FAIL {line}")?;
        }
        if self.passed() {
            writeln!(f, "all checks pass")?;
        }
        Ok(())
    }
}

/// Enumerates the agreeable core, groups it by structural similarity, and
/// checks every pair within a class: join and meet are matches in the core,
/// the matched-set characterization holds, and interests are opposed.
pub fn verify_theorem3(market: &Market) -> Result<StructureReport> {
    verify_theorem3_with(&Oracle::default(), market)
}

pub fn verify_theorem3_with(oracle: &Oracle, market: &Market) -> Result<StructureReport> {
    let core: Vec<Match> = oracle.agreeable_core(market)?.into_iter().collect();
    let in_core: BTreeSet<&Match> = core.iter().collect();
    let mut report = StructureReport { core_size: core.len(), ..Default::default() };

    let mut class_of: Vec<Option<usize>> = vec![None; core.len()];
    for i in 0..core.len() {
        if class_of[i].is_some() {
            continue;
        }
        let id = report.classes.len();
        let mut class = vec![i];
        class_of[i] = Some(id);
        for j in i + 1..core.len() {
            if class_of[j].is_none() && structurally_similar(market, &core[i], &core[j]) {
                class_of[j] = Some(id);
                class.push(j);
            }
        }
        report.classes.push(class);
    }

    for class in report.classes.clone() {
        for (x, &i) in class.iter().enumerate() {
            for &j in &class[x + 1..] {
                report.pairs_checked += 1;
                check_pair(market, &core, &in_core, i, j, &mut report);
            }
        }
    }
    Ok(report)
}

fn check_pair(
    market: &Market,
    core: &[Match],
    in_core: &BTreeSet<&Match>,
    i: usize,
    j: usize,
    report: &mut StructureReport,
) {
    let (mu, nu) = (&core[i], &core[j]);
    let tag = format!("core pair ({i}, {j})");
    for (name, op, workers_any) in [("join", join(market, mu, nu), true), ("meet", meet(market, mu, nu), false)] {
        let Some(m) = op.to_match(market) else {
            report.failures.push(format!("{tag}: {name} is not a match"));
            continue;
        };
        if !in_core.contains(&m) {
            report.failures.push(format!("{tag}: {name} {} is not in the core", market.describe(&m)));
        }
        if name == "join" && !structurally_similar(market, &m, mu) {
            report.join_not_similar.push((i, j));
        }
        for a in market.agents() {
            let (in_mu, in_nu) = (mu.is_matched(a), nu.is_matched(a));
            // workers: join matched iff either is, meet iff both; firms the reverse
            let expected = if a.is_worker() == workers_any { in_mu || in_nu } else { in_mu && in_nu };
            if matched_to_firm(&op, market, a) != expected {
                report.failures.push(format!("{tag}: {name} changes whether {} is matched", market.name(a)));
            }
        }
    }
    for (p, q) in [(mu, nu), (nu, mu)] {
        let workers_prefer_p = market.workers().all(|w| market.weakly_prefers(w, p.partner(w), q.partner(w)));
        let firms_prefer_q = market.firms().all(|f| market.weakly_prefers(f, q.partner(f), p.partner(f)));
        if workers_prefer_p && !firms_prefer_q {
            report.failures.push(format!("{tag}: workers and firms agree on a comparison"));
        }
    }
}
