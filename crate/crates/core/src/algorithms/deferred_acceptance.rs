use crate::model::{Market, Match};

use super::propose::run_proposals;

/// Worker-proposing deferred acceptance in batched rounds. The status quo is
/// ignored.
pub fn deferred_acceptance(market: &Market) -> Match {
    run_proposals(market, false).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{AgentId, PreferenceOrder};

    #[test]
    fn classic_two_by_two_is_worker_optimal() {
        let m = fixtures::classic_two_by_two();
        let mu = deferred_acceptance(&m);
        assert_eq!(m.describe(&mu), "w1-f1, w2-f2");
    }

    #[test]
    fn firms_that_prefer_solitude_reject_everyone() {
        let mut m = fixtures::no_lattice();
        for f in m.firms().collect::<Vec<_>>() {
            let mut ranking = vec![f];
            ranking.extend(m.workers());
            m = m.with_preference(PreferenceOrder::new(f, ranking, 3).unwrap()).unwrap();
        }
        assert_eq!(deferred_acceptance(&m), m.empty_match());
    }

    #[test]
    fn ignores_the_status_quo() {
        let m = fixtures::no_lattice();
        let mu = deferred_acceptance(&m);
        assert_eq!(mu, deferred_acceptance(&m.without_status_quo()));
        assert_eq!(m.describe(&mu), "1-C, 2-A; unmatched: 3, B");
        assert_eq!(mu.partner(AgentId::worker(0)), AgentId::firm(2));
    }
}
