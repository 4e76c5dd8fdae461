use crate::model::{AgentId, Market, Match};

use super::functional_cycles;

/// Top trading cycles with both sides pointing. Every standing agent points
/// at his most preferred standing agent of the other side, or at himself when
/// he prefers that. All cycles are removed each round; a self-pointing agent
/// leaves unmatched. The status quo is ignored.
pub fn top_trading_cycles(market: &Market) -> Match {
    let n = market.n_agents();
    let mut standing = vec![true; n];
    let mut pairs: Vec<(AgentId, AgentId)> = Vec::new();
    let mut round = 0;
    while standing.iter().any(|&s| s) {
        round += 1;
        let aim: Vec<usize> = (0..n)
            .map(|s| {
                if !standing[s] {
                    return s;
                }
                let a = market.agent_at(s);
                let top = market
                    .preference(a)
                    .ranking()
                    .iter()
                    .copied()
                    .find(|&x| x == a || standing[market.slot(x)])
                    .expect("self is always available");
                market.slot(top)
            })
            .collect();
        let nodes: Vec<usize> = (0..n).filter(|&s| standing[s]).collect();
        for cycle in functional_cycles(&nodes, |s| aim[s]) {
            log::trace!("ttc round {round}: cycle {cycle:?}");
            for &s in &cycle {
                standing[s] = false;
                let a = market.agent_at(s);
                let b = market.agent_at(aim[s]);
                if a.is_worker() && b.is_firm() {
                    pairs.push((a, b));
                }
            }
        }
    }
    market.match_from_pairs(&pairs).expect("cycles assign each firm once")
}
