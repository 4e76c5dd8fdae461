use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AgentId, Market, Match};

use super::functional_cycles;

/// Mutable state of one Exchange run.
#[derive(Clone, Debug)]
pub struct ExchangeState {
    /// Status quo pairs `(worker, firm)` still standing, in worker order.
    pub standing: Vec<(AgentId, AgentId)>,
    pub result: Match,
}

/// One round: the pointing map of standing workers and the cycles that sat
/// down.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeRound {
    pub pointing: Vec<(AgentId, AgentId)>,
    /// Each cycle as its workers paired with the firm they receive.
    pub removed: Vec<Vec<(AgentId, AgentId)>>,
}

impl ExchangeState {
    fn new(market: &Market, mu1: &Match) -> Self {
        let standing = market
            .status_quo()
            .pairs()
            .filter(|&(w, f)| mu1.partner(w) == f)
            .collect();
        ExchangeState { standing, result: mu1.clone() }
    }

    /// Best standing firm for `w` that is his own or prefers him to her
    /// status quo worker.
    fn target(&self, market: &Market, w: AgentId) -> Result<AgentId> {
        let sq = market.status_quo();
        self.standing
            .iter()
            .map(|&(_, f)| f)
            .filter(|&f| sq.partner(w) == f || market.strictly_prefers(f, w, sq.partner(f)))
            .min_by_key(|&f| market.rank(w, f))
            .ok_or(Error::StandingWorkerCannotPoint(w))
    }
}

pub fn exchange_phase(market: &Market, mu1: &Match) -> Result<Match> {
    exchange_phase_traced(market, mu1).map(|(m, _)| m)
}

/// The Exchange phase on the Propose output `mu1`. Status quo pairs left
/// intact by `mu1` stand; firms point at their status quo worker, and all
/// cycles are removed each round in order of their smallest worker.
pub fn exchange_phase_traced(market: &Market, mu1: &Match) -> Result<(Match, Vec<ExchangeRound>)> {
    let sq = market.status_quo();
    let mut state = ExchangeState::new(market, mu1);
    let mut rounds = Vec::new();
    let mut final_pairs: Vec<(AgentId, AgentId)> = Vec::new();

    while !state.standing.is_empty() {
        let pointing = state
            .standing
            .iter()
            .map(|&(w, _)| Ok((w, state.target(market, w)?)))
            .collect::<Result<Vec<_>>>()?;
        let nodes: Vec<usize> = state.standing.iter().map(|&(w, _)| w.index).collect();
        let aim = |i: usize| {
            let f = pointing.iter().find(|&&(w, _)| w.index == i).expect("standing worker points").1;
            sq.partner(f).index
        };
        let cycles = functional_cycles(&nodes, aim);
        let mut removed = Vec::with_capacity(cycles.len());
        for cycle in cycles {
            let trade: Vec<(AgentId, AgentId)> = cycle
                .iter()
                .map(|&i| *pointing.iter().find(|&&(w, _)| w.index == i).unwrap())
                .collect();
            state.standing.retain(|&(w, _)| !cycle.contains(&w.index));
            final_pairs.extend(&trade);
            removed.push(trade);
        }
        let round = ExchangeRound { pointing, removed };
        log::trace!("exchange round {}: {:?}", rounds.len() + 1, round);
        rounds.push(round);
    }

    let mut pairs: Vec<(AgentId, AgentId)> = mu1
        .pairs()
        .filter(|&(w, f)| sq.partner(w) != f)
        .collect();
    pairs.extend(final_pairs);
    state.result = market.match_from_pairs(&pairs)?;
    Ok((state.result, rounds))
}
