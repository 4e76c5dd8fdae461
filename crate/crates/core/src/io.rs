//! JSON instance and match documents, run reports, and seeded random
//! instances.
//!
//! Instance schema (`format_version` 1):
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "workers": ["1", "2"],
//!   "firms": ["A", "B"],
//!   "preferences": { "1": ["1", "A", "B"], "A": ["2", "1", "A"], ... },
//!   "status_quo": [["1", "A"], ["2", "B"]]
//! }
//! ```
//!
//! Each preference list ranks every agent of the other side plus the owner's
//! own name, most preferred first.

use indexmap::IndexMap;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algorithms::PeTrace;
use crate::error::Error;
use crate::graph::Path;
use crate::model::{validate_market, AgentId, Market, Match, PreferenceOrder, RawMarket};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    #[error("unsupported format_version {0}")]
    UnsupportedVersion(u32),

    #[error("{path}: {source}")]
    Invalid {
        path: String,
        #[source]
        source: Error,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub format_version: u32,
    pub workers: Vec<String>,
    pub firms: Vec<String>,
    pub preferences: IndexMap<String, Vec<String>>,
    #[serde(default)]
    pub status_quo: Vec<[String; 2]>,
}

impl InstanceDocument {
    pub fn from_market(market: &Market) -> Self {
        let preferences = market
            .agents()
            .map(|a| {
                let list = market
                    .preference(a)
                    .ranking()
                    .iter()
                    .map(|&x| market.name(x).to_string())
                    .collect();
                (market.name(a).to_string(), list)
            })
            .collect();
        let status_quo = market
            .status_quo()
            .pairs()
            .map(|(w, f)| [market.name(w).to_string(), market.name(f).to_string()])
            .collect();
        InstanceDocument {
            format_version: FORMAT_VERSION,
            workers: market.worker_names().to_vec(),
            firms: market.firm_names().to_vec(),
            preferences,
            status_quo,
        }
    }

    pub fn to_market(&self) -> Result<Market, InstanceError> {
        if self.format_version != FORMAT_VERSION {
            return Err(InstanceError::UnsupportedVersion(self.format_version));
        }
        let raw = RawMarket {
            workers: self.workers.clone(),
            firms: self.firms.clone(),
            preferences: self.preferences.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            status_quo: self.status_quo.iter().map(|[a, b]| (a.clone(), b.clone())).collect(),
        };
        validate_market(&raw).map_err(|source| InstanceError::Invalid {
            path: field_path(&source),
            source,
        })
    }
}

fn field_path(e: &Error) -> String {
    match e {
        Error::DuplicateName(_) => "workers/firms".into(),
        Error::IncompletePreference { agent, .. } => format!("preferences.{agent}"),
        Error::StatusQuoNotInvolution(_) | Error::StatusQuoCrossesSides(..) => "status_quo".into(),
        Error::UnknownAgent(_) => "preferences/status_quo".into(),
        _ => "$".into(),
    }
}

fn syntax(e: serde_json::Error) -> InstanceError {
    InstanceError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

pub fn parse_instance(text: &str) -> Result<Market, InstanceError> {
    let doc: InstanceDocument = serde_json::from_str(text).map_err(syntax)?;
    doc.to_market()
}

pub fn serialize_instance(market: &Market) -> String {
    let doc = InstanceDocument::from_market(market);
    let mut out = serde_json::to_string_pretty(&doc).expect("instance documents always serialize");
    out.push('\n');
    out
}

/// A match by name. Agents absent from both lists are unmatched.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchDocument {
    pub pairs: Vec<[String; 2]>,
    #[serde(default)]
    pub unmatched: Vec<String>,
}

impl MatchDocument {
    pub fn from_match(market: &Market, mu: &Match) -> Self {
        MatchDocument {
            pairs: mu
                .pairs()
                .map(|(w, f)| [market.name(w).to_string(), market.name(f).to_string()])
                .collect(),
            unmatched: mu.unmatched_agents().map(|a| market.name(a).to_string()).collect(),
        }
    }

    pub fn to_match(&self, market: &Market) -> Result<Match, InstanceError> {
        let invalid = |source: Error| InstanceError::Invalid { path: "pairs".into(), source };
        let pairs = self
            .pairs
            .iter()
            .map(|[a, b]| Ok((market.lookup(a)?, market.lookup(b)?)))
            .collect::<Result<Vec<_>, Error>>()
            .map_err(invalid)?;
        let mu = market.match_from_pairs(&pairs).map_err(invalid)?;
        for name in &self.unmatched {
            let a = market.lookup(name).map_err(|source| InstanceError::Invalid {
                path: "unmatched".into(),
                source,
            })?;
            if mu.is_matched(a) {
                return Err(InstanceError::Invalid {
                    path: "unmatched".into(),
                    source: Error::InvalidMatch(format!("`{name}` is both paired and unmatched")),
                });
            }
        }
        Ok(mu)
    }
}

pub fn parse_match(market: &Market, text: &str) -> Result<Match, InstanceError> {
    let doc: MatchDocument = serde_json::from_str(text).map_err(syntax)?;
    doc.to_match(market)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub individually_rational: bool,
    /// `Some(true)` when no blocking path exists; absent when not checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_core_by_path: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocking_path: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_core_by_oracle: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: String,
    #[serde(rename = "match")]
    pub matching: MatchDocument,
    pub verification: Verification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<String>>,
}

/// Renders path edges with agent names, e.g. `2-B:status_quo`, `2:current`.
pub fn describe_path(market: &Market, path: &Path) -> Vec<String> {
    path.edges
        .iter()
        .map(|e| {
            let (a, b) = e.endpoints();
            let class = match e.class {
                crate::graph::EdgeClass::StatusQuo => "status_quo",
                crate::graph::EdgeClass::Current => "current",
            };
            if a == b {
                format!("{}:{class}", market.name(a))
            } else {
                format!("{}-{}:{class}", market.name(a), market.name(b))
            }
        })
        .collect()
}

/// One line per Propose round and per Exchange round, with agent names.
pub fn render_trace(market: &Market, trace: &PeTrace) -> Vec<String> {
    let n = |a: AgentId| market.name(a).to_string();
    let list = |items: Vec<String>| if items.is_empty() { "none".to_string() } else { items.join(" ") };
    let mut out = Vec::new();
    for (i, r) in trace.propose.iter().enumerate() {
        let proposals = r
            .proposals
            .iter()
            .map(|&(w, t)| if w == t { format!("{}->self", n(w)) } else { format!("{}->{}", n(w), n(t)) })
            .collect();
        let rejections = r.rejections.iter().map(|&(f, w)| format!("{}x{}", n(f), n(w))).collect();
        let locks = r.locks.iter().map(|&f| n(f)).collect();
        out.push(format!(
            "propose {}: proposals {}; rejections {}; locks {}",
            i + 1,
            list(proposals),
            list(rejections),
            list(locks)
        ));
    }
    for (i, r) in trace.exchange.iter().enumerate() {
        let pointing = r.pointing.iter().map(|&(w, f)| format!("{}->{}", n(w), n(f))).collect();
        let removed = r
            .removed
            .iter()
            .map(|cycle| {
                let pairs: Vec<String> = cycle.iter().map(|&(w, f)| format!("{}-{}", n(w), n(f))).collect();
                format!("({})", pairs.join(" "))
            })
            .collect();
        out.push(format!("exchange {}: pointing {}; removed {}", i + 1, list(pointing), list(removed)));
    }
    out
}

/// Uniform strict preferences and `sq_pairs` status-quo pairs drawn without
/// replacement. Workers are named `w1..`, firms `f1..`.
pub fn generate_random_instance(
    n_workers: usize,
    n_firms: usize,
    sq_pairs: usize,
    seed: u64,
) -> Result<Market, Error> {
    if sq_pairs > n_workers.min(n_firms) {
        return Err(Error::InvalidParameters(format!(
            "{sq_pairs} status quo pairs do not fit {n_workers} workers and {n_firms} firms"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut prefs = Vec::with_capacity(n_workers + n_firms);
    for w in 0..n_workers {
        let owner = AgentId::worker(w);
        let mut ranking: Vec<AgentId> = (0..n_firms).map(AgentId::firm).collect();
        ranking.push(owner);
        ranking.shuffle(&mut rng);
        prefs.push(PreferenceOrder::new(owner, ranking, n_firms)?);
    }
    for f in 0..n_firms {
        let owner = AgentId::firm(f);
        let mut ranking: Vec<AgentId> = (0..n_workers).map(AgentId::worker).collect();
        ranking.push(owner);
        ranking.shuffle(&mut rng);
        prefs.push(PreferenceOrder::new(owner, ranking, n_workers)?);
    }
    let mut workers: Vec<usize> = (0..n_workers).collect();
    let mut firms: Vec<usize> = (0..n_firms).collect();
    workers.shuffle(&mut rng);
    firms.shuffle(&mut rng);
    let pairs: Vec<(AgentId, AgentId)> = workers
        .iter()
        .zip(&firms)
        .take(sq_pairs)
        .map(|(&w, &f)| (AgentId::worker(w), AgentId::firm(f)))
        .collect();
    let status_quo = Match::from_pairs(n_workers, n_firms, &pairs)?;
    Market::new(
        (1..=n_workers).map(|i| format!("w{i}")).collect(),
        (1..=n_firms).map(|i| format!("f{i}")).collect(),
        prefs,
        status_quo,
    )
}
