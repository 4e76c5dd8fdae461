//! Exhaustive ground truth for small markets.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{is_individually_rational, pareto_dominates, AgentId, Market, Match};

pub const DEFAULT_CAP: usize = 12;

/// Every match of a market, in canonical (ascending) order.
pub struct Matches {
    n_workers: usize,
    n_firms: usize,
    /// `0` = alone, `k` = firm `k - 1`.
    choice: Vec<usize>,
    used: Vec<bool>,
    started: bool,
    done: bool,
}

impl Matches {
    fn new(n_workers: usize, n_firms: usize) -> Self {
        Matches {
            n_workers,
            n_firms,
            choice: vec![0; n_workers],
            used: vec![false; n_firms],
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        for i in (0..self.n_workers).rev() {
            if self.choice[i] > 0 {
                self.used[self.choice[i] - 1] = false;
            }
            let next = (self.choice[i] + 1..=self.n_firms).find(|&c| !self.used[c - 1]);
            match next {
                Some(c) => {
                    self.choice[i] = c;
                    self.used[c - 1] = true;
                    return true;
                }
                None => self.choice[i] = 0,
            }
        }
        false
    }

    fn current(&self) -> Match {
        let pairs: Vec<(AgentId, AgentId)> = self
            .choice
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (AgentId::worker(i), AgentId::firm(c - 1)))
            .collect();
        Match::from_pairs(self.n_workers, self.n_firms, &pairs).expect("enumerated pairs are disjoint")
    }
}

impl Iterator for Matches {
    type Item = Match;

    fn next(&mut self) -> Option<Match> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.current())
    }
}

/// A set of agents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coalition(pub BTreeSet<AgentId>);

impl Coalition {
    pub fn contains(&self, a: AgentId) -> bool {
        self.0.contains(&a)
    }

    pub fn members(&self) -> impl Iterator<Item = AgentId> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<AgentId> for Coalition {
    fn from_iter<I: IntoIterator<Item = AgentId>>(iter: I) -> Self {
        Coalition(iter.into_iter().collect())
    }
}

/// Closed under the status quo.
pub fn is_agreeable(market: &Market, c: &Coalition) -> bool {
    let sq = market.status_quo();
    c.members().all(|a| c.contains(sq.partner(a)))
}

/// `c` blocks `mu` through `mu_prime`: nobody in `c` is worse off, someone is
/// better off, and `mu_prime` keeps `c` among itself.
pub fn blocks(market: &Market, mu: &Match, c: &Coalition, mu_prime: &Match) -> bool {
    let mut strict = false;
    for a in c.members() {
        let (new, old) = (mu_prime.partner(a), mu.partner(a));
        if !c.contains(new) || market.strictly_prefers(a, old, new) {
            return false;
        }
        strict |= market.strictly_prefers(a, new, old);
    }
    strict
}

/// A blocking coalition with the deviation it uses, as pairs and lone agents
/// within the coalition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalitionBlock {
    pub coalition: Coalition,
    pub pairs: Vec<(AgentId, AgentId)>,
}

impl CoalitionBlock {
    /// The deviation extended to a full match with outsiders alone.
    pub fn deviation(&self, market: &Market) -> Match {
        market.match_from_pairs(&self.pairs).expect("deviation pairs are disjoint")
    }
}

/// Brute-force queries with a configurable size cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub cap: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn new(cap: usize) -> Self {
        Oracle { cap }
    }

    fn check(&self, market: &Market) -> Result<()> {
        if market.n_agents() > self.cap {
            return Err(Error::InstanceTooLarge { agents: market.n_agents(), cap: self.cap });
        }
        Ok(())
    }

    pub fn enumerate_matches(&self, market: &Market) -> Result<Matches> {
        self.check(market)?;
        Ok(Matches::new(market.n_workers(), market.n_firms()))
    }

    /// The first agreeable coalition that blocks `mu`, with a deviation.
    /// Coalitions are tried by number of status quo atoms, then by atom
    /// order. Individual rationality is not checked.
    pub fn find_blocking_coalition(&self, market: &Market, mu: &Match) -> Result<Option<CoalitionBlock>> {
        self.check(market)?;
        let atoms = status_quo_atoms(market);
        let mut masks: Vec<u64> = (1u64..(1u64 << atoms.len())).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        for mask in masks {
            let members: Vec<AgentId> = atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .flat_map(|(_, atom)| atom.iter().copied())
                .collect();
            if let Some(pairs) = block_within(market, mu, &members) {
                return Ok(Some(CoalitionBlock { coalition: members.into_iter().collect(), pairs }));
            }
        }
        Ok(None)
    }

    pub fn is_in_agreeable_core(&self, market: &Market, mu: &Match) -> Result<bool> {
        self.check(market)?;
        Ok(is_individually_rational(market, mu) && self.find_blocking_coalition(market, mu)?.is_none())
    }

    pub fn agreeable_core(&self, market: &Market) -> Result<BTreeSet<Match>> {
        let mut core = BTreeSet::new();
        for mu in self.enumerate_matches(market)? {
            if self.is_in_agreeable_core(market, &mu)? {
                core.insert(mu);
            }
        }
        Ok(core)
    }

    pub fn stable_matches(&self, market: &Market) -> Result<BTreeSet<Match>> {
        Ok(self.enumerate_matches(market)?.filter(|mu| is_stable(market, mu)).collect())
    }

    pub fn is_pareto_efficient(&self, market: &Market, mu: &Match) -> Result<bool> {
        Ok(!self.enumerate_matches(market)?.any(|nu| pareto_dominates(market, &nu, mu)))
    }
}

/// Status quo pairs and status quo singletons, in canonical order of their
/// smallest member. Agreeable coalitions are exactly unions of these.
pub fn status_quo_atoms(market: &Market) -> Vec<Vec<AgentId>> {
    let sq = market.status_quo();
    market
        .agents()
        .filter(|&a| sq.partner(a) >= a)
        .map(|a| if sq.is_matched(a) { vec![a, sq.partner(a)] } else { vec![a] })
        .collect()
}

/// Searches matchings of `members` among themselves that block `mu`,
/// pruning any step that hurts a member.
fn block_within(market: &Market, mu: &Match, members: &[AgentId]) -> Option<Vec<(AgentId, AgentId)>> {
    let workers: Vec<AgentId> = members.iter().copied().filter(|a| a.is_worker()).collect();
    let firms: Vec<AgentId> = members.iter().copied().filter(|a| a.is_firm()).collect();
    let mut taken = vec![false; firms.len()];
    let mut pairs = Vec::new();

    fn gain(market: &Market, mu: &Match, a: AgentId, new: AgentId) -> Option<bool> {
        let old = mu.partner(a);
        if market.strictly_prefers(a, old, new) {
            None
        } else {
            Some(new != old && market.strictly_prefers(a, new, old))
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn go(
        market: &Market,
        mu: &Match,
        workers: &[AgentId],
        firms: &[AgentId],
        i: usize,
        taken: &mut [bool],
        pairs: &mut Vec<(AgentId, AgentId)>,
        strict: bool,
    ) -> bool {
        if i == workers.len() {
            let mut strict = strict;
            for (j, &f) in firms.iter().enumerate() {
                if !taken[j] {
                    match gain(market, mu, f, f) {
                        None => return false,
                        Some(s) => strict |= s,
                    }
                }
            }
            return strict;
        }
        let w = workers[i];
        if let Some(s) = gain(market, mu, w, w) {
            if go(market, mu, workers, firms, i + 1, taken, pairs, strict || s) {
                return true;
            }
        }
        for (j, &f) in firms.iter().enumerate() {
            if taken[j] {
                continue;
            }
            let (Some(sw), Some(sf)) = (gain(market, mu, w, f), gain(market, mu, f, w)) else {
                continue;
            };
            taken[j] = true;
            pairs.push((w, f));
            if go(market, mu, workers, firms, i + 1, taken, pairs, strict || sw || sf) {
                return true;
            }
            pairs.pop();
            taken[j] = false;
        }
        false
    }

    go(market, mu, &workers, &firms, 0, &mut taken, &mut pairs, false).then_some(pairs)
}

/// No agent below solitude and no pair preferring each other to their
/// partners. The status quo plays no role.
pub fn is_stable(market: &Market, mu: &Match) -> bool {
    if market.agents().any(|a| market.strictly_prefers(a, a, mu.partner(a))) {
        return false;
    }
    !market.workers().any(|w| {
        market.firms().any(|f| {
            market.strictly_prefers(w, f, mu.partner(w)) && market.strictly_prefers(f, w, mu.partner(f))
        })
    })
}

pub fn enumerate_matches(market: &Market) -> Result<Matches> {
    Oracle::default().enumerate_matches(market)
}

pub fn is_in_agreeable_core_bruteforce(market: &Market, mu: &Match) -> Result<bool> {
    Oracle::default().is_in_agreeable_core(market, mu)
}

pub fn agreeable_core(market: &Market) -> Result<BTreeSet<Match>> {
    Oracle::default().agreeable_core(market)
}

pub fn stable_matches(market: &Market) -> Result<BTreeSet<Match>> {
    Oracle::default().stable_matches(market)
}

pub fn is_pareto_efficient(market: &Market, mu: &Match) -> Result<bool> {
    Oracle::default().is_pareto_efficient(market, mu)
}
