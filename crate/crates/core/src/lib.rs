//! Two-sided one-to-one matching with a status quo.
//!
//! The crate computes the Propose-Exchange match, decides membership in the
//! agreeable core through blocking paths, and checks both against exhaustive
//! oracles on small markets.
//!
//! ```
//! use agreeable::{fixtures, propose_exchange, is_in_agreeable_core};
//!
//! let market = fixtures::regretted_contracts();
//! let mu = propose_exchange(&market);
//! assert_eq!(market.describe(&mu), "1-A; unmatched: 2, B");
//! assert!(is_in_agreeable_core(&market, &mu));
//! ```

pub mod algorithms;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod model;
pub mod oracle;
pub mod strategy;
pub mod structure;

pub use algorithms::{
    deferred_acceptance, exchange_phase, propose_exchange, propose_phase, top_trading_cycles,
};
pub use error::{Error, Result};
pub use graph::{
    build_blocking_graph, classify_path, find_blocking_path, free_agents, improving_edges,
    is_in_agreeable_core, path_match, ColoredGraph, Edge, EdgeClass, Path, PathKind,
};
pub use model::{
    is_individually_rational, pareto_dominates, validate_market, AgentId, Market, Match,
    PreferenceOrder, RawMarket, Side,
};
