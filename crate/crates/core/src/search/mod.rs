//! Exhaustive coloring search, Ramsey numbers, and minimal Ramsey domains.

mod certificate;
pub(crate) mod engine;
mod minimal;
mod vmn;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use certificate::{
    verify_certificate, CertificateJson, Outcome, Problem, SearchCertificate, SymmetryInfo, Verification,
};
pub use minimal::{
    enumerate_minimal_ramsey, is_minimal_ramsey, is_ramsey_domain, EnumerateOptions, MinimalClass,
    MinimalClassification,
};
pub use vmn::{brute_force_good_coloring, verify_vmn_lemma, vmn_lemma_report, VmnReport};

use crate::checker::{is_good, is_good_rainbow, TargetList};
use crate::coloring::Coloring;
use crate::error::{invalid, Error, Result};
use crate::lattice::{Domain, MAX_EXHAUSTIVE_GROUND};
use crate::poset::{Poset, PosetLabel};
use engine::{Check, Engine, EngineSetup, LeafFilter, RainbowCheck, Rule};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorSymmetry {
    /// On exactly when all targets are identical.
    #[default]
    Auto,
    On,
    Off,
}

impl std::str::FromStr for ColorSymmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(ColorSymmetry::Auto),
            "on" => Ok(ColorSymmetry::On),
            "off" => Ok(ColorSymmetry::Off),
            _ => invalid(format!("color symmetry must be auto, on or off, not `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub node_budget: Option<u64>,
    /// Size levels `0..symmetry_depth` get orbit pruning.
    pub symmetry_depth: usize,
    pub color_symmetry: ColorSymmetry,
    /// Size levels assigned before the search forks into subtrees.
    pub split_levels: usize,
    /// Not part of the serialized config: results never depend on it.
    #[serde(skip, default = "one")]
    pub workers: usize,
}

fn one() -> usize {
    1
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: None,
            symmetry_depth: 2,
            color_symmetry: ColorSymmetry::Auto,
            split_levels: 2,
            workers: 1,
        }
    }
}

impl SearchConfig {
    /// No symmetry reduction of any kind.
    pub fn plain() -> Self {
        SearchConfig {
            symmetry_depth: 0,
            color_symmetry: ColorSymmetry::Off,
            ..SearchConfig::default()
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.node_budget = budget;
        self
    }
}

fn check_domain(domain: &Domain) -> Result<()> {
    if domain.n() > MAX_EXHAUSTIVE_GROUND {
        return invalid(format!(
            "exhaustive search needs ground size <= {MAX_EXHAUSTIVE_GROUND}, got {}",
            domain.n()
        ));
    }
    Ok(())
}

struct Prepared<'a> {
    setup: EngineSetup<'a>,
    color_symmetry: bool,
}

fn prepare_fixed<'a>(
    domain: &'a Domain,
    k: usize,
    targets: &TargetList,
    cfg: &SearchConfig,
    leaf_filter: Option<LeafFilter<'a>>,
) -> Result<Prepared<'a>> {
    check_domain(domain)?;
    if targets.len() != k {
        return invalid(format!("{} targets given for k = {k}", targets.len()));
    }
    let color_symmetry = match cfg.color_symmetry {
        ColorSymmetry::Auto => targets.all_identical(),
        ColorSymmetry::On if !targets.all_identical() => {
            return invalid("color symmetry needs identical targets");
        }
        ColorSymmetry::On => true,
        ColorSymmetry::Off => false,
    };
    let checks = targets.iter().map(|t| Check::new(&t.pattern, t.mode)).collect();
    Ok(Prepared {
        setup: EngineSetup {
            domain,
            rule: Rule::Fixed { k: k as u8, checks },
            color_symmetry,
            symmetry_depth: cfg.symmetry_depth,
            split_levels: cfg.split_levels,
            leaf_filter,
        },
        color_symmetry,
    })
}

fn antichain_size(q: &Poset) -> Option<usize> {
    let structural = (0..q.size()).all(|a| (0..q.size()).all(|b| a == b || !q.comparable(a, b)));
    match q.label() {
        PosetLabel::Antichain(k) => Some(*k),
        _ if structural && q.size() > 0 => Some(q.size()),
        _ => None,
    }
}

fn execute(
    p: Prepared,
    problem: Problem,
    cfg: &SearchConfig,
    k_declared: Option<u8>,
) -> Result<SearchCertificate> {
    let start = Instant::now();
    let domain = p.setup.domain.clone();
    let (engine, group_order) = Engine::new(p.setup);
    let result = engine.run(cfg.workers, cfg.node_budget);
    let outcome = match result.found {
        Some(colors) => {
            let table = colors[..1usize << domain.n()].to_vec();
            Outcome::Witness(Coloring::from_table(domain, table, k_declared)?)
        }
        None if result.budget_hit => Outcome::Inconclusive,
        None => Outcome::Exhausted,
    };
    Ok(SearchCertificate {
        problem,
        config: cfg.clone(),
        symmetry: SymmetryInfo {
            ground_group_order: group_order,
            symmetry_depth: cfg.symmetry_depth,
            color_symmetry: p.color_symmetry,
        },
        outcome,
        nodes_visited: result.nodes,
        elapsed: start.elapsed(),
    })
}

/// Searches for a `k`-coloring of `domain` with no monochromatic target `i`
/// in color `i`.
pub fn find_good_coloring(
    domain: &Domain,
    k: usize,
    targets: &TargetList,
    cfg: &SearchConfig,
) -> Result<SearchCertificate> {
    let p = prepare_fixed(domain, k, targets, cfg, None)?;
    let problem = Problem::Coloring {
        domain: domain.clone(),
        k,
        targets: targets.clone(),
    };
    let cert = execute(p, problem, cfg, Some(k as u8))?;
    if let Outcome::Witness(c) = &cert.outcome {
        debug_assert!(is_good(c, targets));
    }
    Ok(cert)
}

/// Same search with an extra predicate on complete colorings (a per-mask
/// color table).
pub(crate) fn find_good_coloring_filtered(
    domain: &Domain,
    targets: &TargetList,
    cfg: &SearchConfig,
    filter: LeafFilter,
) -> Result<SearchCertificate> {
    let k = targets.len();
    let p = prepare_fixed(domain, k, targets, cfg, Some(filter))?;
    let problem = Problem::Coloring {
        domain: domain.clone(),
        k,
        targets: targets.clone(),
    };
    execute(p, problem, cfg, Some(k as u8))
}

/// Searches for a coloring with any number of colors that has no
/// monochromatic `p` and no rainbow `q`; `q` must be an antichain.
pub fn find_good_partition_coloring(
    domain: &Domain,
    p: &Poset,
    q: &Poset,
    cfg: &SearchConfig,
) -> Result<SearchCertificate> {
    check_domain(domain)?;
    let Some(qk) = antichain_size(q) else {
        return invalid(format!("rainbow target must be an antichain, got {q}"));
    };
    let prepared = Prepared {
        setup: EngineSetup {
            domain,
            rule: Rule::Partition {
                mono: Check::new(p, crate::embed::Mode::Strong),
                rainbow: RainbowCheck::new(qk),
            },
            color_symmetry: true,
            symmetry_depth: cfg.symmetry_depth,
            split_levels: cfg.split_levels,
            leaf_filter: None,
        },
        color_symmetry: true,
    };
    let problem = Problem::Partition {
        domain: domain.clone(),
        p: p.clone(),
        q: q.clone(),
    };
    let cert = execute(prepared, problem, cfg, None)?;
    if let Outcome::Witness(c) = &cert.outcome {
        debug_assert!(is_good_rainbow(c, p, q));
    }
    Ok(cert)
}

/// A Ramsey number with its two certificates.
#[derive(Clone, Debug)]
pub struct RamseyResult {
    pub value: usize,
    /// Good coloring of `B_{value-1}`; absent when `value = 0`.
    pub lower: Option<SearchCertificate>,
    /// Exhaustion of `B_value`.
    pub upper: SearchCertificate,
}

impl RamseyResult {
    pub fn elapsed(&self) -> Duration {
        self.upper.elapsed + self.lower.as_ref().map_or(Duration::ZERO, |c| c.elapsed)
    }
}

fn ramsey_loop(
    n_max: usize,
    mut search: impl FnMut(usize) -> Result<SearchCertificate>,
) -> Result<RamseyResult> {
    if n_max > MAX_EXHAUSTIVE_GROUND {
        return invalid(format!("n_max must be <= {MAX_EXHAUSTIVE_GROUND}"));
    }
    let mut lower: Option<SearchCertificate> = None;
    for n in 0..=n_max {
        let cert = search(n)?;
        match cert.outcome {
            Outcome::Witness(_) => lower = Some(cert),
            Outcome::Exhausted => {
                if let Some(l) = &lower {
                    if !l.verify_witness() {
                        return invalid("witness one level down failed re-verification");
                    }
                }
                return Ok(RamseyResult {
                    value: n,
                    lower,
                    upper: cert,
                });
            }
            Outcome::Inconclusive => {
                return Err(Error::Inconclusive(cfg_budget(&cert)));
            }
        }
    }
    Err(Error::Undecided(n_max))
}

fn cfg_budget(cert: &SearchCertificate) -> u64 {
    cert.config.node_budget.unwrap_or(cert.nodes_visited)
}

/// Least `n` such that every `|T|`-coloring of `B_n` has a monochromatic
/// target `i` in color `i`.
pub fn compute_ramsey(targets: &TargetList, n_max: usize, cfg: &SearchConfig) -> Result<RamseyResult> {
    ramsey_loop(n_max, |n| find_good_coloring(&Domain::full(n)?, targets.len(), targets, cfg))
}

/// Least `n` such that every coloring of `B_n` has a monochromatic `p` or a
/// rainbow `q`.
pub fn compute_rainbow_ramsey(p: &Poset, q: &Poset, n_max: usize, cfg: &SearchConfig) -> Result<RamseyResult> {
    ramsey_loop(n_max, |n| find_good_partition_coloring(&Domain::full(n)?, p, q, cfg))
}
