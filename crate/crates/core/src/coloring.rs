//! Colorings of the present elements of a domain.

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::lattice::{level_order, Domain, ElementSet, GroundPermutation, MAX_GROUND};

/// Stored for removed or not-yet-assigned elements.
pub const UNCOLORED: u8 = 0;

/// Color ids start at 1. `k_declared`, when set, bounds every color; the
/// coloring need not use all of them.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Coloring {
    domain: Domain,
    colors: Vec<u8>,
    k_declared: Option<u8>,
}

impl Coloring {
    /// Every present element uncolored.
    pub fn blank(domain: Domain, k_declared: Option<u8>) -> Self {
        let len = 1usize << domain.n();
        Coloring {
            domain,
            colors: vec![UNCOLORED; len],
            k_declared,
        }
    }

    pub fn from_fn(
        domain: Domain,
        k_declared: Option<u8>,
        mut color: impl FnMut(ElementSet) -> u8,
    ) -> Result<Self> {
        let mut c = Coloring::blank(domain, k_declared);
        for x in c.domain.elements() {
            c.set(x, color(x))?;
        }
        Ok(c)
    }

    /// Builds from a per-mask table (length `2^n`, 0 for absent).
    pub fn from_table(domain: Domain, colors: Vec<u8>, k_declared: Option<u8>) -> Result<Self> {
        if colors.len() != 1usize << domain.n() {
            return invalid("color table length must be 2^n");
        }
        let c = Coloring {
            domain,
            colors,
            k_declared,
        };
        for m in 0..c.colors.len() as u32 {
            let present = c.domain.contains_mask(m);
            let col = c.colors[m as usize];
            if !present && col != UNCOLORED {
                return invalid(format!("removed mask {m} carries a color"));
            }
            if let Some(k) = k_declared {
                if col > k {
                    return invalid(format!("color {col} exceeds declared k = {k}"));
                }
            }
        }
        Ok(c)
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn n(&self) -> usize {
        self.domain.n()
    }

    pub fn k_declared(&self) -> Option<u8> {
        self.k_declared
    }

    /// Per-mask color table, `UNCOLORED` where absent.
    pub fn table(&self) -> &[u8] {
        &self.colors
    }

    pub fn color(&self, x: ElementSet) -> Option<u8> {
        self.color_mask(x.bits())
    }

    pub fn color_mask(&self, mask: u32) -> Option<u8> {
        match self.colors.get(mask as usize) {
            Some(&c) if c != UNCOLORED => Some(c),
            _ => None,
        }
    }

    pub fn set(&mut self, x: ElementSet, color: u8) -> Result<()> {
        if !self.domain.contains(x) {
            return invalid(format!("{x} is not in the domain"));
        }
        if color == UNCOLORED {
            return invalid("colors start at 1");
        }
        if let Some(k) = self.k_declared {
            if color > k {
                return invalid(format!("color {color} exceeds declared k = {k}"));
            }
        }
        self.colors[x.bits() as usize] = color;
        Ok(())
    }

    /// Every present element has a color.
    pub fn is_total(&self) -> bool {
        self.domain
            .element_masks()
            .iter()
            .all(|&m| self.colors[m as usize] != UNCOLORED)
    }

    pub fn max_color(&self) -> u8 {
        self.colors.iter().copied().max().unwrap_or(UNCOLORED)
    }

    /// Masks of one color class in canonical order.
    pub fn class_masks(&self, color: u8) -> Vec<u32> {
        level_order(self.n())
            .into_iter()
            .filter(|&m| self.colors[m as usize] == color && color != UNCOLORED)
            .collect()
    }

    /// Colored masks in canonical order.
    pub fn colored_masks(&self) -> Vec<u32> {
        level_order(self.n())
            .into_iter()
            .filter(|&m| self.colors[m as usize] != UNCOLORED)
            .collect()
    }

    /// `(g·c)(X) = c(g⁻¹X)`; the domain is moved along with the coloring.
    pub fn permuted(&self, g: &GroundPermutation) -> Result<Coloring> {
        if g.n() != self.n() {
            return invalid("permutation and coloring disagree on ground size");
        }
        let removed: Vec<ElementSet> = self
            .domain
            .removed()
            .into_iter()
            .map(|x| g.apply(x))
            .collect::<Result<_>>()?;
        let domain = Domain::without(self.n(), &removed)?;
        let mut colors = vec![UNCOLORED; self.colors.len()];
        for (m, &c) in self.colors.iter().enumerate() {
            colors[g.apply_mask(m as u32) as usize] = c;
        }
        Ok(Coloring {
            domain,
            colors,
            k_declared: self.k_declared,
        })
    }

    /// Renames colors through `rename[c - 1]`.
    pub fn recolored(&self, rename: &[u8]) -> Result<Coloring> {
        let mut colors = self.colors.clone();
        for c in colors.iter_mut() {
            if *c != UNCOLORED {
                *c = *rename
                    .get(*c as usize - 1)
                    .ok_or_else(|| Error::InvalidArguments(format!("no new name for color {c}")))?;
            }
        }
        Coloring::from_table(self.domain.clone(), colors, self.k_declared)
    }

    /// The coloring restricted to a smaller domain (same ground size).
    pub fn restricted(&self, domain: &Domain) -> Result<Coloring> {
        if domain.n() != self.n() {
            return invalid("restriction needs the same ground size");
        }
        let mut colors = vec![UNCOLORED; self.colors.len()];
        for m in domain.element_masks() {
            if !self.domain.contains_mask(m) {
                return invalid(format!("mask {m} is not in the original domain"));
            }
            colors[m as usize] = self.colors[m as usize];
        }
        Coloring::from_table(domain.clone(), colors, self.k_declared)
    }

    pub fn to_json(&self) -> ColoringJson {
        ColoringJson {
            n: self.n(),
            colors: ColorEntries(
                self.colored_masks()
                    .into_iter()
                    .map(|m| {
                        let x = ElementSet::new(m, self.n()).expect("mask fits");
                        (x.to_string(), self.colors[m as usize])
                    })
                    .collect(),
            ),
            k: self.k_declared,
        }
    }

    /// The domain is `B_n` minus every element not listed.
    pub fn from_json(json: &ColoringJson) -> Result<Coloring> {
        let n = json.n;
        if n > MAX_GROUND {
            return Err(Error::Format(format!("ground size {n} too large")));
        }
        let mut colors = vec![UNCOLORED; 1usize << n];
        for (key, c) in &json.colors.0 {
            let x = ElementSet::parse(key, n)?;
            if *c == UNCOLORED {
                return Err(Error::Format(format!("color 0 given for {key}")));
            }
            if colors[x.bits() as usize] != UNCOLORED {
                return Err(Error::Format(format!("{key} listed twice")));
            }
            colors[x.bits() as usize] = *c;
        }
        let removed: Vec<ElementSet> = (0..1u32 << n)
            .filter(|&m| colors[m as usize] == UNCOLORED)
            .map(|m| ElementSet::new(m, n))
            .collect::<Result<_>>()?;
        let domain = Domain::without(n, &removed)?;
        Coloring::from_table(domain, colors, json.k).map_err(|e| Error::Format(e.to_string()))
    }
}

/// Wire form: `{ "n": 3, "colors": {"{}": 2, "{1}": 1, …}, "k": 2 }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ColoringJson {
    pub n: usize,
    pub colors: ColorEntries,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u8>,
}

/// Element-to-color entries, kept in canonical element order on output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorEntries(pub Vec<(String, u8)>);

impl Serialize for ColorEntries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for ColorEntries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let map = serde_json::Map::<String, serde_json::Value>::deserialize(d)?;
        let mut out = Vec::with_capacity(map.len());
        for (k, v) in map {
            let c = v
                .as_u64()
                .filter(|&c| c <= u8::MAX as u64)
                .ok_or_else(|| serde::de::Error::custom(format!("bad color for {k}")))?;
            out.push((k, c as u8));
        }
        Ok(ColorEntries(out))
    }
}
