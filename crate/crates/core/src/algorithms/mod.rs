//! Deferred acceptance, top trading cycles, and the two phases of
//! Propose-Exchange.

mod deferred_acceptance;
mod exchange;
mod propose;
mod top_trading_cycles;

pub use deferred_acceptance::deferred_acceptance;
pub use exchange::{exchange_phase, exchange_phase_traced, ExchangeRound, ExchangeState};
pub use propose::{propose_phase, propose_phase_traced, ProposeRound, ProposeState, Tentative};
pub use top_trading_cycles::top_trading_cycles;

use serde::{Deserialize, Serialize};

use crate::model::{Market, Match};

/// Round-by-round log of a Propose-Exchange run.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeTrace {
    pub propose: Vec<ProposeRound>,
    pub exchange: Vec<ExchangeRound>,
}

/// Runs the Propose phase and then the Exchange phase on its output.
pub fn propose_exchange(market: &Market) -> Match {
    propose_exchange_traced(market).0
}

pub fn propose_exchange_traced(market: &Market) -> (Match, PeTrace) {
    let (mu1, propose) = propose_phase_traced(market);
    let (mu2, exchange) =
        exchange_phase_traced(market, &mu1).expect("every standing worker can point at his own status quo firm");
    (mu2, PeTrace { propose, exchange })
}

/// Cycles of the functional graph `succ` restricted to `nodes`, each rotated
/// to start at its smallest node, ordered by that node. `succ` must map every
/// node into `nodes`.
pub(crate) fn functional_cycles(nodes: &[usize], succ: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let mut state = std::collections::HashMap::<usize, u8>::with_capacity(nodes.len());
    let mut cycles = Vec::new();
    let mut sorted = nodes.to_vec();
    sorted.sort_unstable();
    for &start in &sorted {
        if state.contains_key(&start) {
            continue;
        }
        let mut walk = Vec::new();
        let mut x = start;
        while !state.contains_key(&x) {
            state.insert(x, 1);
            walk.push(x);
            x = succ(x);
        }
        if state[&x] == 1 {
            let at = walk.iter().position(|&y| y == x).expect("revisited node is on the walk");
            let mut cycle = walk[at..].to_vec();
            let min_at = cycle.iter().enumerate().min_by_key(|(_, &v)| v).map(|(i, _)| i).unwrap();
            cycle.rotate_left(min_at);
            cycles.push(cycle);
        }
        for y in walk {
            state.insert(y, 2);
        }
    }
    cycles.sort_by_key(|c| c[0]);
    cycles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::is_in_agreeable_core;

    #[test]
    fn cycles_of_a_functional_graph() {
        // 0 -> 1 -> 2 -> 1, 3 -> 3, 4 -> 0
        let succ = |x: usize| [1, 2, 1, 3, 0][x];
        assert_eq!(functional_cycles(&[0, 1, 2, 3, 4], succ), vec![vec![1, 2], vec![3]]);
    }

    #[test]
    fn regretted_contracts_end_at_star() {
        let m = fixtures::regretted_contracts();
        let mu = propose_exchange(&m);
        assert_eq!(mu, fixtures::regretted_contracts_star(&m));
        assert!(is_in_agreeable_core(&m, &mu));
    }

    #[test]
    fn no_status_quo_reduces_to_deferred_acceptance() {
        let m = fixtures::no_lattice().without_status_quo();
        assert_eq!(propose_exchange(&m), deferred_acceptance(&m));
        let c = fixtures::classic_two_by_two();
        assert_eq!(propose_exchange(&c), deferred_acceptance(&c));
    }

    #[test]
    fn traced_run_matches_untraced() {
        let m = fixtures::no_lattice();
        let (mu, trace) = propose_exchange_traced(&m);
        assert_eq!(mu, propose_exchange(&m));
        assert!(trace.propose.is_empty());
        assert_eq!(trace.exchange.len(), 2);
    }
}
