mod common;

use std::collections::BTreeSet;

use agreeable::algorithms::propose_phase_traced;
use agreeable::graph::{
    build_blocking_graph, classify_path, extend_path_match, find_blocking_path, path_match, proposal_role, EdgeClass,
    PathKind,
};
use agreeable::io::{generate_random_instance, parse_instance, serialize_instance};
use agreeable::oracle::{agreeable_core, blocks, enumerate_matches, is_pareto_efficient, Coalition};
use agreeable::strategy::{find_manipulation, Mechanism};
use agreeable::structure::{free_agents_are_stable, join, meet};
use agreeable::{
    deferred_acceptance, exchange_phase, is_individually_rational, pareto_dominates, propose_exchange, propose_phase,
    top_trading_cycles, AgentId, Market, Match,
};
use proptest::prelude::*;

fn market(max_side: usize, with_status_quo: bool) -> impl Strategy<Value = Market> {
    (any::<u64>(), any::<bool>()).prop_map(move |(seed, acceptable)| {
        let m = common::random_market(seed, max_side, with_status_quo);
        if acceptable {
            common::all_acceptable(&m)
        } else {
            m
        }
    })
}

fn is_involution(market: &Market, mu: &Match) -> bool {
    market.agents().all(|a| mu.partner(mu.partner(a)) == a)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn algorithm_outputs_are_involutions(m in market(6, true)) {
        for mu in [deferred_acceptance(&m), top_trading_cycles(&m), propose_phase(&m), propose_exchange(&m)] {
            prop_assert!(is_involution(&m, &mu));
        }
    }

    #[test]
    fn preferences_are_strict_total_orders(m in market(4, true)) {
        for a in m.agents() {
            let domain = m.preference(a).ranking().to_vec();
            for &x in &domain {
                prop_assert!(!m.strictly_prefers(a, x, x));
                for &y in &domain {
                    if x != y {
                        prop_assert!(m.strictly_prefers(a, x, y) != m.strictly_prefers(a, y, x));
                    }
                }
            }
        }
    }

    #[test]
    fn status_quo_is_individually_rational(m in market(6, true)) {
        prop_assert!(is_individually_rational(&m, m.status_quo()));
    }

    #[test]
    fn pareto_dominance_is_a_strict_order(m in market(3, true), picks in proptest::collection::vec(any::<prop::sample::Index>(), 3)) {
        let all: Vec<Match> = enumerate_matches(&m).unwrap().collect();
        let [x, y, z] = [&all[picks[0].index(all.len())], &all[picks[1].index(all.len())], &all[picks[2].index(all.len())]];
        prop_assert!(!pareto_dominates(&m, x, x));
        if pareto_dominates(&m, x, y) && pareto_dominates(&m, y, z) {
            prop_assert!(pareto_dominates(&m, x, z));
        }
    }

    #[test]
    fn blocking_graph_degrees(m in market(5, true)) {
        let mu = propose_phase(&m);
        let g = build_blocking_graph(&m, &mu);
        for a in m.agents() {
            prop_assert_eq!(g.sq_edges().iter().filter(|e| e.contains(a)).count(), 1);
            prop_assert!(g.mi_edges_at(a).count() >= 1);
        }
    }

    #[test]
    fn returned_paths_certify_a_block(m in market(3, true), pick in any::<prop::sample::Index>()) {
        let all: Vec<Match> = enumerate_matches(&m).unwrap().collect();
        let mu = &all[pick.index(all.len())];
        let g = build_blocking_graph(&m, mu);
        if let Some(p) = find_blocking_path(&m, mu) {
            prop_assert!(p.is_complete_alternating());
            prop_assert!(p.edges.iter().any(|e| g.is_improving(e)));
            for v in p.vertices() {
                let at: Vec<_> = p.edges.iter().filter(|e| e.contains(v)).collect();
                prop_assert_eq!(at.iter().filter(|e| e.class == EdgeClass::StatusQuo).count(), 1);
                prop_assert_eq!(at.iter().filter(|e| e.class == EdgeClass::Current).count(), 1);
            }
            let deviation = path_match(&p).unwrap();
            let members: BTreeSet<AgentId> = p.vertices();
            prop_assert!(deviation.values().all(|b| members.contains(b)));
            let coalition: Coalition = members.into_iter().collect();
            let extended = extend_path_match(&m, &deviation).unwrap();
            prop_assert!(blocks(&m, mu, &coalition, &extended));
        }
    }

    #[test]
    fn linear_paths_end_in_a_source_and_a_sink(m in market(3, true), pick in any::<prop::sample::Index>()) {
        let all: Vec<Match> = enumerate_matches(&m).unwrap().collect();
        let mu = &all[pick.index(all.len())];
        if let Some(p) = agreeable::graph::find_blocking_path_of_kind(&m, mu, Some(PathKind::Linear)) {
            prop_assert_eq!(classify_path(&p).unwrap(), PathKind::Linear);
            if p.len() >= 3 {
                let (first, last) = (p.edges[0], p.edges[p.len() - 1]);
                prop_assert!(first.is_loop() && last.is_loop());
                prop_assert_ne!(proposal_role(&first, &m).unwrap(), proposal_role(&last, &m).unwrap());
            }
        }
    }

    #[test]
    fn core_matches_keep_free_agents_stable(m in market(3, true)) {
        for mu in agreeable_core(&m).unwrap() {
            prop_assert!(free_agents_are_stable(&m, &mu));
        }
    }

    #[test]
    fn proposals_are_bounded_and_locks_hold(m in market(6, true)) {
        let (mu1, rounds) = propose_phase_traced(&m);
        for w in m.workers() {
            let made = rounds.iter().flat_map(|r| &r.proposals).filter(|&&(x, _)| x == w).count();
            prop_assert!(made <= m.n_firms() + 1);
            let targets: Vec<AgentId> = rounds.iter().flat_map(|r| &r.proposals).filter(|&&(x, _)| x == w).map(|&(_, t)| t).collect();
            let distinct: BTreeSet<AgentId> = targets.iter().copied().collect();
            prop_assert_eq!(distinct.len(), targets.len());
        }
        for f in m.firms() {
            if rounds.iter().any(|r| r.locks.contains(&f)) {
                prop_assert_eq!(mu1.partner(f), m.status_quo().partner(f));
            }
        }
    }

    #[test]
    fn phases_only_improve(m in market(6, true)) {
        let mu1 = propose_phase(&m);
        let mu2 = exchange_phase(&m, &mu1).unwrap();
        prop_assert!(is_individually_rational(&m, &mu1));
        prop_assert!(is_individually_rational(&m, &mu2));
        for a in m.agents() {
            prop_assert!(m.weakly_prefers(a, mu2.partner(a), mu1.partner(a)));
        }
    }

    #[test]
    fn propose_exchange_is_in_the_oracle_core_and_efficient(m in market(3, true)) {
        let mu = propose_exchange(&m);
        prop_assert!(agreeable_core(&m).unwrap().contains(&mu));
        prop_assert!(is_pareto_efficient(&m, &mu).unwrap());
    }

    #[test]
    fn no_status_quo_means_deferred_acceptance(m in market(6, false)) {
        prop_assert_eq!(propose_exchange(&m), deferred_acceptance(&m));
    }

    #[test]
    fn join_and_meet_agree_where_matches_agree(m in market(3, true), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let all: Vec<Match> = enumerate_matches(&m).unwrap().collect();
        let (mu, nu) = (&all[a.index(all.len())], &all[b.index(all.len())]);
        for op in [join(&m, mu, nu), meet(&m, mu, nu)] {
            for x in m.agents() {
                if mu.partner(x) == nu.partner(x) {
                    prop_assert_eq!(op.candidate[m.slot(x)], mu.partner(x));
                }
            }
        }
    }

    #[test]
    fn strategy_proof_baselines(m in market(3, false)) {
        let scope: Vec<AgentId> = m.workers().collect();
        prop_assert!(find_manipulation(&Mechanism::DeferredAcceptance, &m, &scope).unwrap().is_none());
        prop_assert!(find_manipulation(&Mechanism::TopTradingCycles, &m, &scope).unwrap().is_none());
    }

    #[test]
    fn witnesses_reverify(m in market(3, true)) {
        let scope: Vec<AgentId> = m.workers().collect();
        if let Some(w) = find_manipulation(&Mechanism::ProposeExchange, &m, &scope).unwrap() {
            prop_assert!(w.verify(&Mechanism::ProposeExchange).unwrap());
        }
    }

    #[test]
    fn instances_round_trip(m in market(6, true)) {
        let text = serialize_instance(&m);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn generator_is_reproducible(seed in any::<u64>(), nw in 0usize..6, nf in 0usize..6) {
        let sq = nw.min(nf) / 2;
        prop_assert_eq!(
            generate_random_instance(nw, nf, sq, seed).unwrap(),
            generate_random_instance(nw, nf, sq, seed).unwrap()
        );
    }
}

#[test]
fn enumeration_counts_follow_the_closed_form() {
    for nw in 0..=4 {
        for nf in 0..=4 {
            let m = generate_random_instance(nw, nf, 0, 0).unwrap();
            let expected: usize = (0..=nw.min(nf)).map(|k| binomial(nw, k) * binomial(nf, k) * (1..=k).product::<usize>()).sum();
            assert_eq!(enumerate_matches(&m).unwrap().count(), expected, "{nw}x{nf}");
        }
    }
}

#[test]
fn efficient_status_quo_is_the_whole_core() {
    for m in common::small_suite_with_acceptable(30) {
        let efficient = is_pareto_efficient(&m, m.status_quo()).unwrap();
        let core = agreeable_core(&m).unwrap();
        assert_eq!(efficient, core == BTreeSet::from([m.status_quo().clone()]));
    }
}
