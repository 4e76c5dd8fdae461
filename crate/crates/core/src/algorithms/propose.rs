use serde::{Deserialize, Serialize};

use crate::model::{AgentId, Market, Match};

/// A worker's standing during the Propose phase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "firm")]
pub enum Tentative {
    /// Must propose in the next round.
    Unassigned,
    /// Proposed to himself.
    Alone,
    Held(AgentId),
}

/// Mutable state of one Propose run.
#[derive(Clone, Debug)]
pub struct ProposeState {
    /// Indexed by worker.
    pub tentative: Vec<Tentative>,
    /// Position in the worker's ranking of his next proposal.
    pub next: Vec<usize>,
    /// Indexed by firm: the worker she currently holds.
    pub holder: Vec<Option<AgentId>>,
    /// Indexed by firm: accepted her status quo worker's proposal.
    pub locked: Vec<bool>,
}

/// One batched round: every unassigned worker proposes, then every firm
/// reviews.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProposeRound {
    /// `(worker, target)`; a target equal to the worker means he gave up.
    pub proposals: Vec<(AgentId, AgentId)>,
    /// `(firm, worker)` rejections, including displaced holders.
    pub rejections: Vec<(AgentId, AgentId)>,
    pub locks: Vec<AgentId>,
}

impl ProposeState {
    fn new(market: &Market, use_status_quo: bool) -> Self {
        let mut state = ProposeState {
            tentative: vec![Tentative::Unassigned; market.n_workers()],
            next: vec![0; market.n_workers()],
            holder: vec![None; market.n_firms()],
            locked: vec![false; market.n_firms()],
        };
        if use_status_quo {
            let sq = market.status_quo();
            for (w, f) in sq.pairs() {
                if market.strictly_prefers(f, w, f) {
                    state.tentative[w.index] = Tentative::Held(f);
                    state.holder[f.index] = Some(w);
                }
            }
        }
        state
    }

    fn to_match(&self, market: &Market) -> Match {
        let pairs: Vec<(AgentId, AgentId)> = self
            .tentative
            .iter()
            .enumerate()
            .filter_map(|(i, t)| match t {
                Tentative::Held(f) => Some((AgentId::worker(i), *f)),
                _ => None,
            })
            .collect();
        market.match_from_pairs(&pairs).expect("each firm holds at most one worker")
    }

    fn reject(&mut self, f: AgentId, w: AgentId, round: &mut ProposeRound) {
        self.tentative[w.index] = Tentative::Unassigned;
        round.rejections.push((f, w));
    }
}

/// The batched proposal loop. With `use_status_quo` it is the Propose phase;
/// without it, plain deferred acceptance.
pub(crate) fn run_proposals(market: &Market, use_status_quo: bool) -> (Match, Vec<ProposeRound>) {
    let sq = market.status_quo();
    let mut state = ProposeState::new(market, use_status_quo);
    let mut rounds = Vec::new();
    let mut inbox: Vec<Vec<AgentId>> = vec![Vec::new(); market.n_firms()];

    while state.tentative.contains(&Tentative::Unassigned) {
        let mut round = ProposeRound::default();
        for w in market.workers() {
            if state.tentative[w.index] != Tentative::Unassigned {
                continue;
            }
            let ranking = market.preference(w).ranking();
            let target = ranking[state.next[w.index]];
            state.next[w.index] += 1;
            round.proposals.push((w, target));
            if target == w {
                state.tentative[w.index] = Tentative::Alone;
            } else {
                state.tentative[w.index] = Tentative::Held(target);
                inbox[target.index].push(w);
            }
        }

        for f in market.firms() {
            let offers = std::mem::take(&mut inbox[f.index]);
            if offers.is_empty() {
                continue;
            }
            if state.locked[f.index] {
                for w in offers {
                    state.reject(f, w, &mut round);
                }
                continue;
            }
            let partner0 = if use_status_quo { sq.partner(f) } else { f };
            if partner0 != f && offers.contains(&partner0) {
                state.locked[f.index] = true;
                round.locks.push(f);
                if let Some(h) = state.holder[f.index].filter(|&h| h != partner0) {
                    state.reject(f, h, &mut round);
                }
                for w in offers.into_iter().filter(|&w| w != partner0) {
                    state.reject(f, w, &mut round);
                }
                state.holder[f.index] = Some(partner0);
                continue;
            }
            let acceptable = |w: AgentId| {
                market.strictly_prefers(f, w, f) && market.strictly_prefers(f, w, partner0)
            };
            let best = state
                .holder[f.index]
                .into_iter()
                .chain(offers.iter().copied().filter(|&w| acceptable(w)))
                .min_by_key(|&w| market.rank(f, w));
            let losers = state.holder[f.index].into_iter().chain(offers);
            for w in losers.filter(|&w| Some(w) != best).collect::<Vec<_>>() {
                state.reject(f, w, &mut round);
            }
            state.holder[f.index] = best;
        }
        log::trace!("propose round {}: {:?}", rounds.len() + 1, round);
        rounds.push(round);
    }
    (state.to_match(market), rounds)
}

/// The Propose phase. Status quo workers whose firm prefers them to solitude
/// start held and only propose once displaced; a firm proposed to by her
/// status quo worker accepts him for good.
pub fn propose_phase(market: &Market) -> Match {
    run_proposals(market, true).0
}

pub fn propose_phase_traced(market: &Market) -> (Match, Vec<ProposeRound>) {
    run_proposals(market, true)
}
