//! Backtracking search for order embeddings of a pattern poset into a family
//! of element sets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::ElementSet;
use crate::poset::Poset;

/// Strong subposets preserve and reflect order; weak ones only preserve it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Strong,
    Weak,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Strong => "strong",
            Mode::Weak => "weak",
        })
    }
}

/// Images of the pattern elements, indexed by pattern element.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EmbeddingMap {
    pub images: Vec<ElementSet>,
    pub mode: Mode,
}

#[derive(Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub mode: Mode,
    pub images: Vec<String>,
}

impl EmbeddingMap {
    pub fn to_json(&self) -> EmbeddingJson {
        EmbeddingJson {
            mode: self.mode,
            images: self.images.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_json(json: &EmbeddingJson, ground: usize) -> Result<Self> {
        Ok(EmbeddingMap {
            mode: json.mode,
            images: json
                .images
                .iter()
                .map(|s| ElementSet::parse(s, ground))
                .collect::<Result<_>>()?,
        })
    }

    /// Checks injectivity, the order conditions of `mode`, and that every
    /// image is accepted by `allowed`.
    pub fn is_valid_for(&self, pattern: &Poset, allowed: impl Fn(ElementSet) -> bool) -> bool {
        let imgs = &self.images;
        if imgs.len() != pattern.size() {
            return false;
        }
        if let Some(first) = imgs.first() {
            if imgs.iter().any(|x| x.ground() != first.ground()) {
                return false;
            }
        }
        if !imgs.iter().all(|&x| allowed(x)) {
            return false;
        }
        for a in 0..imgs.len() {
            for b in 0..imgs.len() {
                if a == b {
                    continue;
                }
                if imgs[a] == imgs[b] {
                    return false;
                }
                let sub = imgs[a].is_subset(imgs[b]);
                let ok = match self.mode {
                    Mode::Strong => pattern.leq(a, b) == sub,
                    Mode::Weak => !pattern.leq(a, b) || sub,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// One embedding query. Host masks are tried in the order given, so the
/// first map found is the least one under that order.
pub(crate) struct EmbedQuery<'a> {
    pub pattern: &'a Poset,
    pub mode: Mode,
    pub host: &'a [u32],
    /// Forces one pattern element onto one host mask.
    pub pin: Option<(usize, u32)>,
    /// Color per mask; when set, images must carry pairwise distinct colors.
    pub rainbow: Option<&'a [u8]>,
}

impl EmbedQuery<'_> {
    pub fn run(&self) -> Option<Vec<u32>> {
        let p = self.pattern.size();
        if p > self.host.len() {
            return None;
        }
        if let Some((a, e)) = self.pin {
            if a >= p || !self.host.contains(&e) {
                return None;
            }
        }
        let order = search_order(self.pattern, self.pin.map(|(a, _)| a));
        let mut images = vec![u32::MAX; p];
        if self.extend(&order, 0, &mut images) {
            Some(images)
        } else {
            None
        }
    }

    fn fits(&self, a: usize, h: u32, placed: &[usize], images: &[u32]) -> bool {
        for &b in placed {
            let g = images[b];
            let ok = if self.pattern.leq(b, a) {
                g != h && g & !h == 0
            } else if self.pattern.leq(a, b) {
                g != h && h & !g == 0
            } else {
                match self.mode {
                    Mode::Strong => g & !h != 0 && h & !g != 0,
                    Mode::Weak => g != h,
                }
            };
            if !ok {
                return false;
            }
            if let Some(colors) = self.rainbow {
                if colors[g as usize] == colors[h as usize] {
                    return false;
                }
            }
        }
        true
    }

    fn extend(&self, order: &[usize], depth: usize, images: &mut [u32]) -> bool {
        if depth == order.len() {
            return true;
        }
        let a = order[depth];
        let placed = &order[..depth];
        if let Some((pa, e)) = self.pin {
            if pa == a {
                if self.fits(a, e, placed, images) {
                    images[a] = e;
                    if self.extend(order, depth + 1, images) {
                        return true;
                    }
                    images[a] = u32::MAX;
                }
                return false;
            }
        }
        for &h in self.host {
            if self.fits(a, h, placed, images) {
                images[a] = h;
                if self.extend(order, depth + 1, images) {
                    return true;
                }
                images[a] = u32::MAX;
            }
        }
        false
    }
}

/// A linear extension that prefers the element with the most comparabilities
/// among those whose predecessors are all placed. `first`, when given, is
/// placed before everything else.
pub(crate) fn search_order(p: &Poset, first: Option<usize>) -> Vec<usize> {
    let n = p.size();
    let degree: Vec<usize> = (0..n)
        .map(|a| (0..n).filter(|&b| b != a && p.comparable(a, b)).count())
        .collect();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    if let Some(f) = first {
        placed[f] = true;
        order.push(f);
    }
    while order.len() < n {
        let next = (0..n)
            .filter(|&a| !placed[a])
            .filter(|&a| (0..n).all(|b| b == a || !p.leq(b, a) || placed[b]))
            .max_by_key(|&a| (degree[a], std::cmp::Reverse(a)))
            .expect("finite poset has a minimal unplaced element");
        placed[next] = true;
        order.push(next);
    }
    order
}

pub(crate) fn to_map(images: Vec<u32>, ground: usize, mode: Mode) -> Result<EmbeddingMap> {
    Ok(EmbeddingMap {
        images: images
            .into_iter()
            .map(|m| ElementSet::new(m, ground))
            .collect::<Result<_>>()
            .map_err(|e| Error::Format(e.to_string()))?,
        mode,
    })
}
