use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::{find_good_coloring, find_good_partition_coloring, SearchConfig};
use crate::checker::{is_good, is_good_rainbow, TargetJson, TargetList};
use crate::coloring::{Coloring, ColoringJson};
use crate::error::{Error, Result};
use crate::lattice::{Domain, DomainJson};
use crate::poset::{Poset, PosetJson};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Problem {
    /// `k`-colorings avoiding target `i` in color `i`.
    Coloring {
        domain: Domain,
        k: usize,
        targets: TargetList,
    },
    /// Colorings with any number of colors avoiding monochromatic `p` and
    /// rainbow `q`.
    Partition { domain: Domain, p: Poset, q: Poset },
}

impl Problem {
    pub fn domain(&self) -> &Domain {
        match self {
            Problem::Coloring { domain, .. } | Problem::Partition { domain, .. } => domain,
        }
    }

    /// Whether `c` is a good coloring for this problem.
    pub fn accepts(&self, c: &Coloring) -> bool {
        if c.domain() != self.domain() || !c.is_total() {
            return false;
        }
        match self {
            Problem::Coloring { k, targets, .. } => c.max_color() as usize <= *k && is_good(c, targets),
            Problem::Partition { p, q, .. } => is_good_rainbow(c, p, q),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Witness(Coloring),
    Exhausted,
    /// The node budget ran out first.
    Inconclusive,
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Witness(_) => "witness",
            Outcome::Exhausted => "exhausted",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryInfo {
    /// Order of the domain's stabilizer; 1 when orbit pruning is off.
    pub ground_group_order: usize,
    pub symmetry_depth: usize,
    pub color_symmetry: bool,
}

#[derive(Clone, Debug)]
pub struct SearchCertificate {
    pub problem: Problem,
    pub config: SearchConfig,
    pub symmetry: SymmetryInfo,
    pub outcome: Outcome,
    pub nodes_visited: u64,
    pub elapsed: Duration,
}

impl SearchCertificate {
    pub fn witness(&self) -> Option<&Coloring> {
        match &self.outcome {
            Outcome::Witness(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.outcome == Outcome::Exhausted
    }

    /// Re-checks a witness outcome with the checker.
    pub fn verify_witness(&self) -> bool {
        self.witness().is_some_and(|c| self.problem.accepts(c))
    }

    pub fn to_json(&self) -> CertificateJson {
        let problem = match &self.problem {
            Problem::Coloring { domain, k, targets } => ProblemJson::Coloring {
                domain: domain.to_json(),
                k: *k,
                targets: targets.to_json(),
            },
            Problem::Partition { domain, p, q } => ProblemJson::Partition {
                domain: domain.to_json(),
                p: p.to_json(),
                q: q.to_json(),
            },
        };
        CertificateJson {
            problem,
            config: self.config.clone(),
            symmetry: self.symmetry.clone(),
            outcome: self.outcome.name().to_string(),
            nodes_visited: self.nodes_visited,
            witness: self.witness().map(Coloring::to_json),
            metadata: Metadata {
                elapsed_ms: self.elapsed.as_millis() as u64,
                workers: self.config.workers,
            },
        }
    }
}

/// Wire form of a certificate. Everything except `metadata` is a function
/// of the inputs and the configuration.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CertificateJson {
    pub problem: ProblemJson,
    pub config: SearchConfig,
    pub symmetry: SymmetryInfo,
    pub outcome: String,
    pub nodes_visited: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<ColoringJson>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProblemJson {
    Coloring {
        domain: DomainJson,
        k: usize,
        targets: Vec<TargetJson>,
    },
    Partition {
        domain: DomainJson,
        p: PosetJson,
        q: PosetJson,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Metadata {
    pub elapsed_ms: u64,
    pub workers: usize,
}

impl ProblemJson {
    pub fn parse(&self) -> Result<Problem> {
        Ok(match self {
            ProblemJson::Coloring { domain, k, targets } => Problem::Coloring {
                domain: Domain::from_json(domain)?,
                k: *k,
                targets: TargetList::from_json(targets)?,
            },
            ProblemJson::Partition { domain, p, q } => Problem::Partition {
                domain: Domain::from_json(domain)?,
                p: Poset::from_json(p)?,
                q: Poset::from_json(q)?,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub outcome: String,
    pub ok: bool,
    pub detail: String,
}

/// Re-checks a certificate. Witnesses go through the checker; exhaustion
/// claims are searched again, with all symmetry reduction disabled when
/// `independent` is set and with the recorded configuration otherwise.
pub fn verify_certificate(json: &CertificateJson, independent: bool, workers: usize) -> Result<Verification> {
    let problem = json.problem.parse()?;
    let done = |ok: bool, detail: String| {
        Ok(Verification {
            outcome: json.outcome.clone(),
            ok,
            detail,
        })
    };
    match json.outcome.as_str() {
        "witness" => {
            let Some(w) = &json.witness else {
                return Err(Error::Format("witness outcome without a coloring".into()));
            };
            let c = Coloring::from_json(w)?;
            if problem.accepts(&c) {
                done(true, "witness coloring is good".into())
            } else {
                done(false, "witness coloring is not good for the stated problem".into())
            }
        }
        "exhausted" => {
            let cfg = if independent {
                SearchConfig::plain()
            } else {
                json.config.clone()
            }
            .with_workers(workers)
            .with_budget(None);
            let rerun = match &problem {
                Problem::Coloring { domain, k, targets } => find_good_coloring(domain, *k, targets, &cfg)?,
                Problem::Partition { domain, p, q } => find_good_partition_coloring(domain, p, q, &cfg)?,
            };
            match rerun.outcome {
                Outcome::Exhausted => done(true, format!("re-search exhausted after {} nodes", rerun.nodes_visited)),
                other => done(false, format!("re-search ended with {}", other.name())),
            }
        }
        "inconclusive" => done(false, "an inconclusive search certifies nothing".into()),
        other => Err(Error::Format(format!("unknown outcome `{other}`"))),
    }
}
