//! Bundled example markets.
//!
//! Preference tails that the source tables leave open are completed in
//! canonical agent order.

use crate::io::parse_instance;
use crate::model::{AgentId, Market, Match, PreferenceOrder};

pub const FIG1_JSON: &str = include_str!("../fixtures/fig1.json");
pub const FIG1_STAR_JSON: &str = include_str!("../fixtures/fig1_star.json");
pub const FIG1_TILDE_JSON: &str = include_str!("../fixtures/fig1_tilde.json");
pub const FIG2_JSON: &str = include_str!("../fixtures/fig2.json");
pub const FIG3_P1_JSON: &str = include_str!("../fixtures/fig3_p1.json");
pub const FIG3_P2_JSON: &str = include_str!("../fixtures/fig3_p2.json");
pub const FIG3_P3_JSON: &str = include_str!("../fixtures/fig3_p3.json");
pub const FIG3_P4_JSON: &str = include_str!("../fixtures/fig3_p4.json");

pub const ALL_INSTANCE_JSON: [&str; 6] =
    [FIG1_JSON, FIG2_JSON, FIG3_P1_JSON, FIG3_P2_JSON, FIG3_P3_JSON, FIG3_P4_JSON];

fn load(text: &str) -> Market {
    parse_instance(text).expect("bundled fixture is valid")
}

fn named(m: &Market, pairs: &[(&str, &str)]) -> Match {
    m.match_from_names(pairs).expect("bundled match is valid")
}

/// Two workers, two firms; the status quo contracts are regretted by
/// worker 2 and firm B.
pub fn regretted_contracts() -> Market {
    load(FIG1_JSON)
}

/// The unique agreeable-core match: 1-A, with 2 and B alone.
pub fn regretted_contracts_star(m: &Market) -> Match {
    named(m, &[("1", "A")])
}

/// 2-A, with 1 and B alone; blocked by {2, B}.
pub fn regretted_contracts_tilde(m: &Market) -> Match {
    named(m, &[("2", "A")])
}

/// Three workers, three firms, whose agreeable core has two elements and no
/// worker-optimal member.
pub fn no_lattice() -> Market {
    load(FIG2_JSON)
}

/// `(star, tilde)`: star = {1-C, 2-B, 3-A}, tilde = {1-B, 2-A, 3-C}.
pub fn no_lattice_matches(m: &Market) -> (Match, Match) {
    (
        named(m, &[("1", "C"), ("2", "B"), ("3", "A")]),
        named(m, &[("1", "B"), ("2", "A"), ("3", "C")]),
    )
}

/// The four profiles of the manipulation example, `P1..P4`.
pub fn manipulation_profiles() -> [Market; 4] {
    [
        load(FIG3_P1_JSON),
        load(FIG3_P2_JSON),
        load(FIG3_P3_JSON),
        load(FIG3_P4_JSON),
    ]
}

/// Named matches of the manipulation example.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManipulationMatches {
    /// 1-B, 2-A, 9-Z
    pub circle: Match,
    /// 1-A, 2-Z, 9-B
    pub square: Match,
    /// 1-A, 2-B, 9-Z
    pub tilde: Match,
}

pub fn manipulation_matches(m: &Market) -> ManipulationMatches {
    ManipulationMatches {
        circle: named(m, &[("1", "B"), ("2", "A"), ("9", "Z")]),
        square: named(m, &[("1", "A"), ("2", "Z"), ("9", "B")]),
        tilde: named(m, &[("1", "A"), ("2", "B"), ("9", "Z")]),
    }
}

fn build(n_workers: usize, n_firms: usize, lists: &[Vec<AgentId>], status_quo: Match) -> Market {
    let prefs = lists
        .iter()
        .enumerate()
        .map(|(slot, ranking)| {
            let (owner, n_opp) = if slot < n_workers {
                (AgentId::worker(slot), n_firms)
            } else {
                (AgentId::firm(slot - n_workers), n_workers)
            };
            PreferenceOrder::new(owner, ranking.clone(), n_opp).expect("well-formed preference")
        })
        .collect();
    Market::new(
        (1..=n_workers).map(|i| format!("w{i}")).collect(),
        (1..=n_firms).map(|i| format!("f{i}")).collect(),
        prefs,
        status_quo,
    )
    .expect("well-formed market")
}

/// Two workers and two firms with no status quo and two stable matches:
/// `w1: f1 > f2`, `w2: f2 > f1`, `f1: w2 > w1`, `f2: w1 > w2`, everyone
/// acceptable.
pub fn classic_two_by_two() -> Market {
    let (w, f) = (AgentId::worker, AgentId::firm);
    build(
        2,
        2,
        &[
            vec![f(0), f(1), w(0)],
            vec![f(1), f(0), w(1)],
            vec![w(1), w(0), f(0)],
            vec![w(0), w(1), f(1)],
        ],
        Match::unmatched(2, 2),
    )
}

/// `n` workers and `n` firms where worker `i` and firm `i` rank each other
/// first; remaining entries follow canonical order with self last. No
/// status quo.
pub fn mutual_top_pairs(n: usize) -> Market {
    let mut lists = Vec::with_capacity(2 * n);
    for side in [AgentId::worker as fn(usize) -> AgentId, AgentId::firm] {
        for i in 0..n {
            let me = side(i);
            let opp = if me.is_worker() { AgentId::firm } else { AgentId::worker };
            let mut ranking = vec![opp(i)];
            ranking.extend((0..n).filter(|&j| j != i).map(opp));
            ranking.push(me);
            lists.push(ranking);
        }
    }
    build(n, n, &lists, Match::unmatched(n, n))
}
