//! Market primitives: agents, strict preference orders, matches and the
//! status quo.
//!
//! Agents are addressed by [`AgentId`], a `(side, index)` pair with dense
//! indices on each side. Display names live on the [`Market`]. The derived
//! ordering on `AgentId` (workers before firms, then by index) is the
//! canonical order used to break every tie in this crate.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Worker,
    Firm,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Worker => Side::Firm,
            Side::Firm => Side::Worker,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AgentId {
    pub side: Side,
    pub index: usize,
}

impl AgentId {
    pub const fn worker(index: usize) -> Self {
        AgentId { side: Side::Worker, index }
    }

    pub const fn firm(index: usize) -> Self {
        AgentId { side: Side::Firm, index }
    }

    pub fn is_worker(self) -> bool {
        self.side == Side::Worker
    }

    pub fn is_firm(self) -> bool {
        self.side == Side::Firm
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Worker => write!(f, "W{}", self.index),
            Side::Firm => write!(f, "F{}", self.index),
        }
    }
}

/// A strict ranking of the opposite side plus the owner itself.
///
/// Everything ranked below the owner is unacceptable; such entries are kept.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PreferenceOrder {
    owner: AgentId,
    ranking: Vec<AgentId>,
    // rank[i] for opposite-side index i, rank[n_opposite] for the owner
    rank: Vec<usize>,
}

impl PreferenceOrder {
    pub fn new(owner: AgentId, ranking: Vec<AgentId>, n_opposite: usize) -> Result<Self> {
        let problem = |p: String| Error::IncompletePreference {
            agent: owner.to_string(),
            problem: p,
        };
        let mut rank = vec![usize::MAX; n_opposite + 1];
        for (pos, &x) in ranking.iter().enumerate() {
            let slot = if x == owner {
                n_opposite
            } else if x.side == owner.side.opposite() && x.index < n_opposite {
                x.index
            } else {
                return Err(problem(format!("{x} is not a valid entry")));
            };
            if rank[slot] != usize::MAX {
                return Err(problem(format!("{x} is listed twice")));
            }
            rank[slot] = pos;
        }
        if let Some(missing) = rank.iter().position(|&r| r == usize::MAX) {
            let who = if missing == n_opposite {
                owner
            } else {
                AgentId { side: owner.side.opposite(), index: missing }
            };
            return Err(problem(format!("{who} is missing")));
        }
        Ok(PreferenceOrder { owner, ranking, rank })
    }

    pub fn owner(&self) -> AgentId {
        self.owner
    }

    /// Most preferred first.
    pub fn ranking(&self) -> &[AgentId] {
        &self.ranking
    }

    /// Position of `x` in the ranking, lower is better.
    pub fn rank_of(&self, x: AgentId) -> Option<usize> {
        let n_opposite = self.rank.len() - 1;
        if x == self.owner {
            Some(self.rank[n_opposite])
        } else if x.side != self.owner.side && x.index < n_opposite {
            Some(self.rank[x.index])
        } else {
            None
        }
    }

    /// Entries strictly preferred to staying unmatched.
    pub fn acceptable(&self) -> &[AgentId] {
        &self.ranking[..self.rank[self.rank.len() - 1]]
    }
}

/// An involution on the agents that pairs workers with firms or leaves them
/// alone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Match {
    n_workers: usize,
    partner: Vec<AgentId>,
}

impl Match {
    /// Everyone unmatched.
    pub fn unmatched(n_workers: usize, n_firms: usize) -> Self {
        let partner = (0..n_workers)
            .map(AgentId::worker)
            .chain((0..n_firms).map(AgentId::firm))
            .collect();
        Match { n_workers, partner }
    }

    pub fn from_pairs(n_workers: usize, n_firms: usize, pairs: &[(AgentId, AgentId)]) -> Result<Self> {
        let mut m = Match::unmatched(n_workers, n_firms);
        for &(a, b) in pairs {
            let (w, f) = match (a.side, b.side) {
                (Side::Worker, Side::Firm) => (a, b),
                (Side::Firm, Side::Worker) => (b, a),
                _ => return Err(Error::InvalidMatch(format!("{a} and {b} are on the same side"))),
            };
            if w.index >= n_workers || f.index >= n_firms {
                return Err(Error::InvalidMatch(format!("{w}-{f} is out of range")));
            }
            if m.is_matched(w) || m.is_matched(f) {
                return Err(Error::InvalidMatch(format!("{w}-{f} reuses a matched agent")));
            }
            m.set_pair(w, f);
        }
        Ok(m)
    }

    /// Builds a match from a full assignment indexed by slot (workers first).
    pub fn from_assignment(n_workers: usize, n_firms: usize, partner: Vec<AgentId>) -> Result<Self> {
        if partner.len() != n_workers + n_firms {
            return Err(Error::InvalidMatch(format!(
                "expected {} entries, got {}",
                n_workers + n_firms,
                partner.len()
            )));
        }
        let m = Match { n_workers, partner };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<()> {
        let n_firms = self.n_firms();
        for a in self.agents() {
            let b = self.partner(a);
            let in_range = match b.side {
                Side::Worker => b.index < self.n_workers,
                Side::Firm => b.index < n_firms,
            };
            if !in_range {
                return Err(Error::InvalidMatch(format!("{a} maps to unknown {b}")));
            }
            if b != a && b.side == a.side {
                return Err(Error::InvalidMatch(format!("{a} maps to {b} on the same side")));
            }
            if self.partner(b) != a {
                return Err(Error::InvalidMatch(format!("{a} -> {b} is not reciprocated")));
            }
        }
        Ok(())
    }

    pub fn n_workers(&self) -> usize {
        self.n_workers
    }

    pub fn n_firms(&self) -> usize {
        self.partner.len() - self.n_workers
    }

    fn slot(&self, a: AgentId) -> usize {
        match a.side {
            Side::Worker => a.index,
            Side::Firm => self.n_workers + a.index,
        }
    }

    pub fn partner(&self, a: AgentId) -> AgentId {
        self.partner[self.slot(a)]
    }

    pub fn is_matched(&self, a: AgentId) -> bool {
        self.partner(a) != a
    }

    /// Agents in canonical order.
    pub fn agents(&self) -> impl Iterator<Item = AgentId> + '_ {
        (0..self.n_workers)
            .map(AgentId::worker)
            .chain((0..self.n_firms()).map(AgentId::firm))
    }

    /// Worker-firm pairs in worker order.
    pub fn pairs(&self) -> impl Iterator<Item = (AgentId, AgentId)> + '_ {
        (0..self.n_workers).filter_map(move |i| {
            let w = AgentId::worker(i);
            let f = self.partner(w);
            (f != w).then_some((w, f))
        })
    }

    pub fn unmatched_agents(&self) -> impl Iterator<Item = AgentId> + '_ {
        self.agents().filter(move |&a| !self.is_matched(a))
    }

    fn set_pair(&mut self, w: AgentId, f: AgentId) {
        let (sw, sf) = (self.slot(w), self.slot(f));
        self.partner[sw] = f;
        self.partner[sf] = w;
    }
}

/// Name-level input for [`validate_market`].
#[derive(Clone, Debug, Default)]
pub struct RawMarket {
    pub workers: Vec<String>,
    pub firms: Vec<String>,
    pub preferences: Vec<(String, Vec<String>)>,
    pub status_quo: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Market {
    worker_names: Vec<String>,
    firm_names: Vec<String>,
    prefs: Vec<PreferenceOrder>,
    status_quo: Match,
}

impl Market {
    /// `prefs` must be indexed by slot: all workers, then all firms.
    pub fn new(
        worker_names: Vec<String>,
        firm_names: Vec<String>,
        prefs: Vec<PreferenceOrder>,
        status_quo: Match,
    ) -> Result<Self> {
        let (nw, nf) = (worker_names.len(), firm_names.len());
        let mut seen = HashSet::new();
        for name in worker_names.iter().chain(&firm_names) {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        if prefs.len() != nw + nf {
            return Err(Error::InvalidParameters(format!(
                "expected {} preference orders, got {}",
                nw + nf,
                prefs.len()
            )));
        }
        if status_quo.n_workers() != nw || status_quo.n_firms() != nf {
            return Err(Error::InvalidMatch("status quo has the wrong shape".into()));
        }
        let market = Market { worker_names, firm_names, prefs, status_quo };
        for a in market.agents() {
            let p = &market.prefs[market.slot(a)];
            if p.owner() != a || p.rank.len() != market.side_len(a.side.opposite()) + 1 {
                return Err(Error::IncompletePreference {
                    agent: market.name(a).to_string(),
                    problem: "preference order does not belong to this agent".into(),
                });
            }
        }
        Ok(market)
    }

    pub fn n_workers(&self) -> usize {
        self.worker_names.len()
    }

    pub fn n_firms(&self) -> usize {
        self.firm_names.len()
    }

    pub fn n_agents(&self) -> usize {
        self.n_workers() + self.n_firms()
    }

    fn side_len(&self, side: Side) -> usize {
        match side {
            Side::Worker => self.n_workers(),
            Side::Firm => self.n_firms(),
        }
    }

    pub fn workers(&self) -> impl Iterator<Item = AgentId> {
        (0..self.n_workers()).map(AgentId::worker)
    }

    pub fn firms(&self) -> impl Iterator<Item = AgentId> {
        (0..self.n_firms()).map(AgentId::firm)
    }

    /// All agents in canonical order.
    pub fn agents(&self) -> impl Iterator<Item = AgentId> {
        self.workers().chain(self.firms())
    }

    /// Dense position of `a`: workers first, then firms.
    pub fn slot(&self, a: AgentId) -> usize {
        match a.side {
            Side::Worker => a.index,
            Side::Firm => self.n_workers() + a.index,
        }
    }

    pub fn agent_at(&self, slot: usize) -> AgentId {
        if slot < self.n_workers() {
            AgentId::worker(slot)
        } else {
            AgentId::firm(slot - self.n_workers())
        }
    }

    pub fn contains(&self, a: AgentId) -> bool {
        a.index < self.side_len(a.side)
    }

    pub fn name(&self, a: AgentId) -> &str {
        match a.side {
            Side::Worker => &self.worker_names[a.index],
            Side::Firm => &self.firm_names[a.index],
        }
    }

    pub fn worker_names(&self) -> &[String] {
        &self.worker_names
    }

    pub fn firm_names(&self) -> &[String] {
        &self.firm_names
    }

    pub fn find(&self, name: &str) -> Option<AgentId> {
        if let Some(i) = self.worker_names.iter().position(|n| n == name) {
            return Some(AgentId::worker(i));
        }
        self.firm_names.iter().position(|n| n == name).map(AgentId::firm)
    }

    pub fn preference(&self, a: AgentId) -> &PreferenceOrder {
        &self.prefs[self.slot(a)]
    }

    pub fn status_quo(&self) -> &Match {
        &self.status_quo
    }

    /// Rank of `x` in `agent`'s order. Panics if `x` is outside the domain.
    pub fn rank(&self, agent: AgentId, x: AgentId) -> usize {
        self.preference(agent)
            .rank_of(x)
            .unwrap_or_else(|| panic!("{x} is not ranked by {agent}"))
    }

    /// `x ≻_agent y`.
    pub fn prefers(&self, agent: AgentId, x: AgentId, y: AgentId) -> Result<bool> {
        let p = self.preference(agent);
        let rx = p.rank_of(x).ok_or(Error::NotInDomain { agent, candidate: x })?;
        let ry = p.rank_of(y).ok_or(Error::NotInDomain { agent, candidate: y })?;
        Ok(rx < ry)
    }

    /// Strict preference for agents already known to be in the domain.
    pub fn strictly_prefers(&self, agent: AgentId, x: AgentId, y: AgentId) -> bool {
        self.rank(agent, x) < self.rank(agent, y)
    }

    pub fn weakly_prefers(&self, agent: AgentId, x: AgentId, y: AgentId) -> bool {
        self.rank(agent, x) <= self.rank(agent, y)
    }

    /// Same market with one agent's preference replaced.
    pub fn with_preference(&self, order: PreferenceOrder) -> Result<Market> {
        let a = order.owner();
        if !self.contains(a) || order.rank.len() != self.side_len(a.side.opposite()) + 1 {
            return Err(Error::InvalidParameters(format!("{a} does not fit this market")));
        }
        let mut next = self.clone();
        let slot = next.slot(a);
        next.prefs[slot] = order;
        Ok(next)
    }

    /// Same market with every agent unmatched in the status quo.
    pub fn without_status_quo(&self) -> Market {
        let mut next = self.clone();
        next.status_quo = Match::unmatched(self.n_workers(), self.n_firms());
        next
    }

    /// Same preferences with a different status quo.
    pub fn with_status_quo(&self, status_quo: Match) -> Result<Market> {
        if status_quo.n_workers() != self.n_workers() || status_quo.n_firms() != self.n_firms() {
            return Err(Error::InvalidMatch("status quo has the wrong shape".into()));
        }
        let mut next = self.clone();
        next.status_quo = status_quo;
        Ok(next)
    }

    pub fn empty_match(&self) -> Match {
        Match::unmatched(self.n_workers(), self.n_firms())
    }

    pub fn match_from_pairs(&self, pairs: &[(AgentId, AgentId)]) -> Result<Match> {
        Match::from_pairs(self.n_workers(), self.n_firms(), pairs)
    }

    /// Builds a match from name pairs; everyone else is unmatched.
    pub fn match_from_names(&self, pairs: &[(&str, &str)]) -> Result<Match> {
        let resolved = pairs
            .iter()
            .map(|(a, b)| Ok((self.lookup(a)?, self.lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        self.match_from_pairs(&resolved)
    }

    pub fn lookup(&self, name: &str) -> Result<AgentId> {
        self.find(name).ok_or_else(|| Error::UnknownAgent(name.to_string()))
    }

    pub fn fits(&self, mu: &Match) -> bool {
        mu.n_workers() == self.n_workers() && mu.n_firms() == self.n_firms()
    }

    /// Renders a match as `1-A, 2-B; unmatched: 9, Z`.
    pub fn describe(&self, mu: &Match) -> String {
        let pairs: Vec<String> = mu
            .pairs()
            .map(|(w, f)| format!("{}-{}", self.name(w), self.name(f)))
            .collect();
        let alone: Vec<&str> = mu.unmatched_agents().map(|a| self.name(a)).collect();
        match (pairs.is_empty(), alone.is_empty()) {
            (_, true) => pairs.join(", "),
            (true, false) => format!("unmatched: {}", alone.join(", ")),
            (false, false) => format!("{}; unmatched: {}", pairs.join(", "), alone.join(", ")),
        }
    }
}

/// Checks a name-level market description and builds a [`Market`].
pub fn validate_market(raw: &RawMarket) -> Result<Market> {
    let mut seen = HashSet::new();
    for name in raw.workers.iter().chain(&raw.firms) {
        if !seen.insert(name.as_str()) {
            return Err(Error::DuplicateName(name.clone()));
        }
    }
    let (nw, nf) = (raw.workers.len(), raw.firms.len());
    let lookup = |name: &str| -> Option<AgentId> {
        raw.workers
            .iter()
            .position(|n| n == name)
            .map(AgentId::worker)
            .or_else(|| raw.firms.iter().position(|n| n == name).map(AgentId::firm))
    };

    let mut orders: Vec<Option<PreferenceOrder>> = vec![None; nw + nf];
    for (owner_name, list) in &raw.preferences {
        let owner = lookup(owner_name).ok_or_else(|| Error::UnknownAgent(owner_name.clone()))?;
        let incomplete = |problem: String| Error::IncompletePreference {
            agent: owner_name.clone(),
            problem,
        };
        let mut ranking = Vec::with_capacity(list.len());
        for entry in list {
            let a = lookup(entry).ok_or_else(|| incomplete(format!("unknown entry `{entry}`")))?;
            ranking.push(a);
        }
        let opposite: &[String] = if owner.is_worker() { &raw.firms } else { &raw.workers };
        let mut listed = HashSet::new();
        for (entry, a) in list.iter().zip(&ranking) {
            if *a != owner && a.side == owner.side {
                return Err(incomplete(format!("`{entry}` is on the same side")));
            }
            if !listed.insert(entry.as_str()) {
                return Err(incomplete(format!("`{entry}` is listed twice")));
            }
        }
        if let Some(missing) = opposite
            .iter()
            .chain(std::iter::once(owner_name))
            .find(|n| !listed.contains(n.as_str()))
        {
            return Err(incomplete(format!("`{missing}` is missing")));
        }
        let order = PreferenceOrder::new(owner, ranking, opposite.len())?;
        let slot = if owner.is_worker() { owner.index } else { nw + owner.index };
        if orders[slot].is_some() {
            return Err(incomplete("preference listed twice".into()));
        }
        orders[slot] = Some(order);
    }
    let mut prefs = Vec::with_capacity(nw + nf);
    for (slot, order) in orders.into_iter().enumerate() {
        match order {
            Some(o) => prefs.push(o),
            None => {
                let name = if slot < nw { &raw.workers[slot] } else { &raw.firms[slot - nw] };
                return Err(Error::IncompletePreference {
                    agent: name.clone(),
                    problem: "no preference order given".into(),
                });
            }
        }
    }

    let mut partner: Vec<AgentId> = (0..nw)
        .map(AgentId::worker)
        .chain((0..nf).map(AgentId::firm))
        .collect();
    let slot = |a: AgentId| if a.is_worker() { a.index } else { nw + a.index };
    for (x, y) in &raw.status_quo {
        let a = lookup(x).ok_or_else(|| Error::UnknownAgent(x.clone()))?;
        let b = lookup(y).ok_or_else(|| Error::UnknownAgent(y.clone()))?;
        if a.side == b.side {
            return Err(Error::StatusQuoCrossesSides(x.clone(), y.clone()));
        }
        for (p, q, name) in [(a, b, x), (b, a, y)] {
            if partner[slot(p)] != p {
                return Err(Error::StatusQuoNotInvolution(name.clone()));
            }
            partner[slot(p)] = q;
        }
    }
    let status_quo = Match::from_assignment(nw, nf, partner)
        .map_err(|e| Error::StatusQuoNotInvolution(e.to_string()))?;
    Market::new(raw.workers.clone(), raw.firms.clone(), prefs, status_quo)
}

pub fn prefers(market: &Market, agent: AgentId, x: AgentId, y: AgentId) -> Result<bool> {
    market.prefers(agent, x, y)
}

/// Every agent weakly prefers `mu` to the status quo.
pub fn is_individually_rational(market: &Market, mu: &Match) -> bool {
    let sq = market.status_quo();
    market
        .agents()
        .all(|a| market.weakly_prefers(a, mu.partner(a), sq.partner(a)))
}

/// Every agent weakly prefers `nu` to `mu`, and someone strictly.
pub fn pareto_dominates(market: &Market, nu: &Match, mu: &Match) -> bool {
    let mut strict = false;
    for a in market.agents() {
        let (rn, rm) = (market.rank(a, nu.partner(a)), market.rank(a, mu.partner(a)));
        if rn > rm {
            return false;
        }
        strict |= rn < rm;
    }
    strict
}
