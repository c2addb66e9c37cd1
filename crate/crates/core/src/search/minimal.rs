use std::collections::BTreeSet;

use super::{find_good_coloring, Outcome, SearchConfig};
use crate::checker::TargetList;
use crate::error::{invalid, Error, Result};
use crate::lattice::{full_mask, level_order, Domain, ElementSet, GroundPermutation};

/// Whether every `|T|`-coloring of `domain` contains target `i` in color `i`.
pub fn is_ramsey_domain(domain: &Domain, targets: &TargetList, cfg: &SearchConfig) -> Result<bool> {
    let cert = find_good_coloring(domain, targets.len(), targets, cfg)?;
    match cert.outcome {
        Outcome::Exhausted => Ok(true),
        Outcome::Witness(_) => Ok(false),
        Outcome::Inconclusive => Err(Error::Inconclusive(cfg.node_budget.unwrap_or(cert.nodes_visited))),
    }
}

/// Ramsey, and deleting any one element destroys that.
pub fn is_minimal_ramsey(domain: &Domain, targets: &TargetList, cfg: &SearchConfig) -> Result<bool> {
    if !is_ramsey_domain(domain, targets, cfg)? {
        return Ok(false);
    }
    // one element per orbit of the stabilizer suffices
    let group = GroundPermutation::stabilizer(domain);
    for m in domain.element_masks() {
        let least = group.iter().map(|g| g.apply_mask(m)).min().expect("identity");
        if least != m {
            continue;
        }
        let x = ElementSet::new(m, domain.n())?;
        if is_ramsey_domain(&domain.without_element(x), targets, cfg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Always delete `[n]`, in addition to up to `max_removed` other sets.
    pub remove_top: bool,
    pub max_removed: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            remove_top: true,
            max_removed: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalClass {
    /// Lexicographically least member of the class.
    pub domain: Domain,
    /// Deleted sets other than the top.
    pub removed: Vec<ElementSet>,
    /// Number of deletion families in the class.
    pub orbit_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalClassification {
    pub n: usize,
    pub options: EnumerateOptions,
    pub classes: Vec<MinimalClass>,
    /// Index `r`: deletion families of `r` sets (besides the top) that give
    /// a minimal domain, counted before deduplication.
    pub minimal_counts: Vec<usize>,
    /// Isomorphism classes of candidate domains that were searched.
    pub candidates_checked: usize,
}

/// Every minimal Ramsey domain reachable by deleting sets from `B_n` within
/// the given budget, one per class under permutations of `[n]`.
pub fn enumerate_minimal_ramsey(
    n: usize,
    targets: &TargetList,
    opts: EnumerateOptions,
    cfg: &SearchConfig,
) -> Result<MinimalClassification> {
    if n > 4 {
        return invalid("minimal enumeration supports n <= 4");
    }
    let top = full_mask(n);
    let pool: Vec<u32> = level_order(n)
        .into_iter()
        .filter(|&m| !(opts.remove_top && m == top))
        .collect();
    let perms = GroundPermutation::all(n);
    let mut out = MinimalClassification {
        n,
        options: opts,
        classes: Vec::new(),
        minimal_counts: vec![0; opts.max_removed.min(pool.len()) + 1],
        candidates_checked: 0,
    };
    for r in 0..out.minimal_counts.len() {
        for family in combinations(&pool, r) {
            let key: BTreeSet<u32> = family.iter().copied().collect();
            let images: BTreeSet<Vec<u32>> = perms
                .iter()
                .map(|g| {
                    let mut v: Vec<u32> = family.iter().map(|&m| g.apply_mask(m)).collect();
                    v.sort_unstable();
                    v
                })
                .collect();
            let own: Vec<u32> = key.iter().copied().collect();
            if images.iter().next() != Some(&own) {
                continue;
            }
            out.candidates_checked += 1;
            let removed: Vec<ElementSet> = family
                .iter()
                .map(|&m| ElementSet::new(m, n))
                .collect::<Result<_>>()?;
            let mut all_removed = removed.clone();
            if opts.remove_top {
                all_removed.push(ElementSet::full(n));
            }
            let domain = Domain::without(n, &all_removed)?;
            if is_minimal_ramsey(&domain, targets, cfg)? {
                out.minimal_counts[r] += images.len();
                out.classes.push(MinimalClass {
                    domain,
                    removed,
                    orbit_size: images.len(),
                });
            }
        }
    }
    Ok(out)
}

/// `r`-subsets of `pool` in lexicographic order of positions.
fn combinations(pool: &[u32], r: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    if r > pool.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| pool[i]).collect());
        let Some(i) = (0..r).rev().find(|&i| idx[i] < pool.len() - r + i) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}
