//! Deciding whether a coloring contains a monochromatic target of its
//! mandated color or a rainbow target, with witnesses.

use serde::{Deserialize, Serialize};

use crate::bits::Tables;
use crate::coloring::Coloring;
use crate::embed::{to_map, EmbedQuery, EmbeddingMap, Mode};
use crate::error::{invalid, Error, Result};
use crate::lattice::{ElementSet, MAX_EXHAUSTIVE_GROUND};
use crate::poset::{parse_pattern_list, Poset, PosetJson};
use crate::vshape;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Target {
    pub pattern: Poset,
    pub mode: Mode,
}

impl Target {
    pub fn strong(pattern: Poset) -> Self {
        Target {
            pattern,
            mode: Mode::Strong,
        }
    }

    pub fn weak(pattern: Poset) -> Self {
        Target {
            pattern,
            mode: Mode::Weak,
        }
    }
}

/// Target `i` (0-based) must be avoided in color `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TargetList {
    targets: Vec<Target>,
}

impl TargetList {
    pub fn new(targets: Vec<Target>) -> Result<Self> {
        if targets.is_empty() {
            return invalid("target list must be nonempty");
        }
        if targets.len() > u8::MAX as usize {
            return invalid("too many targets");
        }
        Ok(TargetList { targets })
    }

    /// Parses `"V(1,1),V(2,2)"`; every target gets the same mode.
    pub fn parse(literals: &str, mode: Mode) -> Result<Self> {
        let targets = parse_pattern_list(literals)?
            .into_iter()
            .map(|pattern| Target { pattern, mode })
            .collect();
        TargetList::new(targets)
    }

    /// `k` copies of one target.
    pub fn identical(target: Target, k: usize) -> Result<Self> {
        TargetList::new(vec![target; k])
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    /// The target for a 1-based color.
    pub fn for_color(&self, color: u8) -> Option<&Target> {
        (color as usize).checked_sub(1).and_then(|i| self.targets.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Target> {
        self.targets.iter()
    }

    pub fn all_identical(&self) -> bool {
        self.targets.windows(2).all(|w| w[0] == w[1])
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.targets.iter().map(|t| t.pattern.to_string()).collect();
        let mode = if self.targets.iter().all(|t| t.mode == Mode::Weak) {
            " (weak)"
        } else {
            ""
        };
        format!("[{}]{mode}", parts.join(", "))
    }

    pub fn to_json(&self) -> Vec<TargetJson> {
        self.targets
            .iter()
            .map(|t| TargetJson {
                pattern: t.pattern.to_json(),
                mode: t.mode,
            })
            .collect()
    }

    pub fn from_json(json: &[TargetJson]) -> Result<Self> {
        let targets = json
            .iter()
            .map(|t| {
                Ok(Target {
                    pattern: Poset::from_json(&t.pattern)?,
                    mode: t.mode,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        TargetList::new(targets).map_err(|e| Error::Format(e.to_string()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TargetJson {
    pub pattern: PosetJson,
    pub mode: Mode,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    Monochromatic { color: u8, map: EmbeddingMap },
    Rainbow { map: EmbeddingMap },
}

/// Wire form: `{ "kind": "mono", "color": 2, "images": ["{}","{1}","{2}"] }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WitnessJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<u8>,
    pub images: Vec<String>,
}

impl Witness {
    pub fn map(&self) -> &EmbeddingMap {
        match self {
            Witness::Monochromatic { map, .. } | Witness::Rainbow { map } => map,
        }
    }

    pub fn to_json(&self) -> WitnessJson {
        let images = self.map().images.iter().map(ToString::to_string).collect();
        match self {
            Witness::Monochromatic { color, .. } => WitnessJson {
                kind: "mono".into(),
                color: Some(*color),
                images,
            },
            Witness::Rainbow { .. } => WitnessJson {
                kind: "rainbow".into(),
                color: None,
                images,
            },
        }
    }
}

/// The least color `i` whose class contains `P_i`, with the first
/// embedding found in canonical search order.
pub fn find_monochromatic(c: &Coloring, targets: &TargetList) -> Option<Witness> {
    for (i, t) in targets.iter().enumerate() {
        let color = (i + 1) as u8;
        let class = c.class_masks(color);
        if class.len() < t.pattern.size() {
            continue;
        }
        let q = EmbedQuery {
            pattern: &t.pattern,
            mode: t.mode,
            host: &class,
            pin: None,
            rainbow: None,
        };
        if let Some(images) = q.run() {
            let map = to_map(images, c.n(), t.mode).expect("class masks fit ground");
            return Some(Witness::Monochromatic { color, map });
        }
    }
    None
}

/// A copy of `q` whose images carry pairwise distinct colors.
pub fn find_rainbow(c: &Coloring, q: &Poset, mode: Mode) -> Option<Witness> {
    let host = c.colored_masks();
    let query = EmbedQuery {
        pattern: q,
        mode,
        host: &host,
        pin: None,
        rainbow: Some(c.table()),
    };
    query.run().map(|images| Witness::Rainbow {
        map: to_map(images, c.n(), mode).expect("masks fit ground"),
    })
}

pub fn is_good(c: &Coloring, targets: &TargetList) -> bool {
    find_monochromatic(c, targets).is_none()
}

/// No monochromatic `p` in any color and no rainbow `q`.
pub fn is_good_rainbow(c: &Coloring, p: &Poset, q: &Poset) -> bool {
    let colors = 1..=c.max_color();
    let mono = colors.into_iter().any(|col| {
        let class = c.class_masks(col);
        class.len() >= p.size()
            && EmbedQuery {
                pattern: p,
                mode: Mode::Strong,
                host: &class,
                pin: None,
                rainbow: None,
            }
            .run()
            .is_some()
    });
    !mono && find_rainbow(c, q, Mode::Strong).is_none()
}

/// Specialized strong `V_{m,n}` search within one color class. Ground sizes
/// above 6 fall back to the generic embedding search.
pub fn find_monochromatic_v_fast(c: &Coloring, m: usize, n: usize, color: u8) -> Option<Witness> {
    if m == 0 || n == 0 {
        return None;
    }
    let images = if c.n() <= MAX_EXHAUSTIVE_GROUND {
        let t = Tables::new(c.n());
        let family = c
            .class_masks(color)
            .iter()
            .fold(0u64, |acc, &mask| acc | 1 << mask);
        let order = crate::lattice::level_order(c.n());
        vshape::find_v(&t, family, m, n, &order)?
    } else {
        let class = c.class_masks(color);
        let v = Poset::v(m, n).ok()?;
        EmbedQuery {
            pattern: &v,
            mode: Mode::Strong,
            host: &class,
            pin: None,
            rainbow: None,
        }
        .run()?
    };
    Some(Witness::Monochromatic {
        color,
        map: to_map(images, c.n(), Mode::Strong).expect("masks fit ground"),
    })
}

/// Re-checks a witness against the coloring it claims to be in.
pub fn witness_holds(c: &Coloring, w: &Witness, pattern: &Poset) -> bool {
    let map = w.map();
    let in_domain = |x: ElementSet| c.color(x).is_some();
    if !map.is_valid_for(pattern, in_domain) {
        return false;
    }
    match w {
        Witness::Monochromatic { color, .. } => map.images.iter().all(|&x| c.color(x) == Some(*color)),
        Witness::Rainbow { .. } => {
            let mut seen: Vec<u8> = map.images.iter().filter_map(|&x| c.color(x)).collect();
            seen.sort_unstable();
            seen.dedup();
            seen.len() == map.images.len()
        }
    }
}
