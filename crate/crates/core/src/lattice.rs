//! Bitmask representation of the Boolean lattice `B_n` and its induced
//! sub-domains.
//!
//! A subset of the ground set `[n] = {1, …, n}` is stored as an `n`-bit mask
//! where bit `i - 1` stands for element `i`. Element sets print in the
//! 1-based brace form `{1,3}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Largest ground size accepted by any operation.
pub const MAX_GROUND: usize = 30;

/// Largest ground size for exhaustive operations (64 elements, one `u64` bitset).
pub const MAX_EXHAUSTIVE_GROUND: usize = 6;

/// A subset of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElementSet {
    bits: u32,
    ground: u8,
}

impl ElementSet {
    pub fn new(bits: u32, ground: usize) -> Result<Self> {
        if ground > MAX_GROUND {
            return invalid(format!("ground size {ground} exceeds {MAX_GROUND}"));
        }
        if (bits as u64) >> ground != 0 {
            return invalid(format!("mask {bits:#b} does not fit ground size {ground}"));
        }
        Ok(ElementSet {
            bits,
            ground: ground as u8,
        })
    }

    /// Builds a set from 1-based members.
    pub fn from_members(members: &[usize], ground: usize) -> Result<Self> {
        let mut bits = 0u32;
        for &i in members {
            if i == 0 || i > ground {
                return invalid(format!("member {i} outside [1, {ground}]"));
            }
            bits |= 1 << (i - 1);
        }
        ElementSet::new(bits, ground)
    }

    pub fn empty(ground: usize) -> Self {
        ElementSet {
            bits: 0,
            ground: ground as u8,
        }
    }

    pub fn full(ground: usize) -> Self {
        ElementSet {
            bits: full_mask(ground),
            ground: ground as u8,
        }
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn ground(self) -> usize {
        self.ground as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    /// Whether the 1-based element `i` is a member.
    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= self.ground() && self.bits >> (i - 1) & 1 == 1
    }

    #[inline]
    pub fn is_subset(self, other: ElementSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_comparable(self, other: ElementSet) -> bool {
        self.is_subset(other) || other.is_subset(self)
    }

    /// `[n] - X`.
    pub fn complement(self) -> ElementSet {
        ElementSet {
            bits: !self.bits & full_mask(self.ground()),
            ground: self.ground,
        }
    }

    /// 1-based members in increasing order.
    pub fn members(self) -> Vec<usize> {
        (1..=self.ground()).filter(|&i| self.contains(i)).collect()
    }

    /// Parses the brace form for a known ground size.
    pub fn parse(text: &str, ground: usize) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Format(format!("expected `{{…}}`, got `{t}`")))?;
        let mut members = Vec::new();
        for part in inner.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let i = usize::from_str(part)
                .map_err(|_| Error::Format(format!("bad member `{part}` in `{t}`")))?;
            members.push(i);
        }
        ElementSet::from_members(&members, ground).map_err(|e| Error::Format(e.to_string()))
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for i in self.members() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

#[inline]
pub fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        ((1u64 << n) - 1) as u32
    }
}

/// Masks of `B_n` in canonical order: cardinality ascending, then mask value.
pub fn level_order(n: usize) -> Vec<u32> {
    let mut v: Vec<u32> = (0..(1u64 << n)).map(|m| m as u32).collect();
    v.sort_by_key(|&m| (m.count_ones(), m));
    v
}

/// `B_n^{i,j}`: all sets containing `i` and avoiding `j` (1-based).
pub fn interval_family(n: usize, i: usize, j: usize) -> Result<Vec<ElementSet>> {
    if i == j {
        return invalid("interval_family requires i != j");
    }
    if i == 0 || j == 0 || i > n || j > n {
        return invalid(format!("indices {i}, {j} must lie in [1, {n}]"));
    }
    if n > MAX_GROUND {
        return invalid(format!("ground size {n} exceeds {MAX_GROUND}"));
    }
    let (ib, jb) = (1u32 << (i - 1), 1u32 << (j - 1));
    Ok(level_order(n)
        .into_iter()
        .filter(|&m| m & ib != 0 && m & jb == 0)
        .map(|m| ElementSet { bits: m, ground: n as u8 })
        .collect())
}

pub fn is_chain(family: &[ElementSet]) -> bool {
    family
        .iter()
        .enumerate()
        .all(|(p, &x)| family[p + 1..].iter().all(|&y| x.is_comparable(y)))
}

pub fn is_antichain(family: &[ElementSet]) -> bool {
    family.iter().enumerate().all(|(p, &x)| {
        family[p + 1..]
            .iter()
            .all(|&y| x == y || !x.is_comparable(y))
    })
}

/// An induced subposet of `B_n`, stored as a membership bitmap over all
/// `2^n` masks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Domain {
    n: u8,
    present: Vec<u64>,
    removed_count: usize,
}

impl Domain {
    /// All of `B_n`.
    pub fn full(n: usize) -> Result<Self> {
        if n > MAX_GROUND {
            return invalid(format!("ground size {n} exceeds {MAX_GROUND}"));
        }
        let len = 1usize << n;
        let words = len.div_ceil(64);
        let mut present = vec![u64::MAX; words];
        if !len.is_multiple_of(64) {
            present[words - 1] = (1u64 << (len % 64)) - 1;
        }
        Ok(Domain {
            n: n as u8,
            present,
            removed_count: 0,
        })
    }

    /// `B_n` minus the given family.
    pub fn without(n: usize, removed: &[ElementSet]) -> Result<Self> {
        let mut d = Domain::full(n)?;
        for &x in removed {
            if x.ground() != n {
                return invalid(format!("{x} has ground {} but domain has {n}", x.ground()));
            }
            d.remove_mask(x.bits());
        }
        Ok(d)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn contains_mask(&self, mask: u32) -> bool {
        let m = mask as usize;
        m < (1usize << self.n) && self.present[m / 64] >> (m % 64) & 1 == 1
    }

    pub fn contains(&self, x: ElementSet) -> bool {
        x.ground() == self.n() && self.contains_mask(x.bits())
    }

    pub fn removed_count(&self) -> usize {
        self.removed_count
    }

    pub fn size(&self) -> usize {
        (1usize << self.n) - self.removed_count
    }

    pub fn is_full(&self) -> bool {
        self.removed_count == 0
    }

    fn remove_mask(&mut self, mask: u32) {
        if self.contains_mask(mask) {
            let m = mask as usize;
            self.present[m / 64] &= !(1u64 << (m % 64));
            self.removed_count += 1;
        }
    }

    /// A copy with one more element removed.
    pub fn without_element(&self, x: ElementSet) -> Domain {
        let mut d = self.clone();
        d.remove_mask(x.bits());
        d
    }

    /// Present masks in canonical (cardinality, value) order.
    pub fn element_masks(&self) -> Vec<u32> {
        level_order(self.n())
            .into_iter()
            .filter(|&m| self.contains_mask(m))
            .collect()
    }

    pub fn elements(&self) -> Vec<ElementSet> {
        self.element_masks()
            .into_iter()
            .map(|m| ElementSet { bits: m, ground: self.n })
            .collect()
    }

    /// Absent masks in canonical order.
    pub fn removed(&self) -> Vec<ElementSet> {
        level_order(self.n())
            .into_iter()
            .filter(|&m| !self.contains_mask(m))
            .map(|m| ElementSet { bits: m, ground: self.n })
            .collect()
    }

    /// Membership as a single word; only valid for `n <= 6`.
    pub fn present_bits(&self) -> Option<u64> {
        (self.n() <= MAX_EXHAUSTIVE_GROUND).then(|| self.present[0])
    }

    pub fn to_json(&self) -> DomainJson {
        DomainJson {
            n: self.n(),
            removed: self.removed().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn from_json(json: &DomainJson) -> Result<Self> {
        if json.n > MAX_GROUND {
            return Err(Error::Format(format!("ground size {} too large", json.n)));
        }
        let removed = json
            .removed
            .iter()
            .map(|s| ElementSet::parse(s, json.n))
            .collect::<Result<Vec<_>>>()?;
        Domain::without(json.n, &removed).map_err(|e| Error::Format(e.to_string()))
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B_{}", self.n)?;
        if !self.is_full() {
            let removed: Vec<String> = self.removed().iter().map(ToString::to_string).collect();
            write!(f, " - {{{}}}", removed.join(", "))?;
        }
        Ok(())
    }
}

/// Wire form: `{ "n": 4, "removed": ["{1,2}", "{1,2,3,4}"] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainJson {
    pub n: usize,
    #[serde(default)]
    pub removed: Vec<String>,
}

/// A permutation of the ground set, acting on element sets by relabeling
/// bit positions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroundPermutation {
    // 0-based: element i+1 maps to image[i]+1
    image: Vec<u8>,
}

impl GroundPermutation {
    pub fn identity(n: usize) -> Self {
        GroundPermutation {
            image: (0..n as u8).collect(),
        }
    }

    /// From 1-based images: `images[i - 1] = g(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return invalid(format!("{images:?} is not a permutation of [1, {n}]"));
            }
            seen[v - 1] = true;
            image.push((v - 1) as u8);
        }
        Ok(GroundPermutation { image })
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// 1-based image of `i`.
    pub fn map(&self, i: usize) -> usize {
        self.image[i - 1] as usize + 1
    }

    #[inline]
    pub fn apply_mask(&self, mask: u32) -> u32 {
        let mut out = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            out |= 1 << self.image[b];
            rest &= rest - 1;
        }
        out
    }

    pub fn apply(&self, x: ElementSet) -> Result<ElementSet> {
        if x.ground() != self.n() {
            return invalid(format!(
                "permutation of [{}] applied to a subset of [{}]",
                self.n(),
                x.ground()
            ));
        }
        Ok(ElementSet {
            bits: self.apply_mask(x.bits),
            ground: x.ground,
        })
    }

    pub fn inverse(&self) -> GroundPermutation {
        let mut image = vec![0u8; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v as usize] = i as u8;
        }
        GroundPermutation { image }
    }

    /// Whether `g` maps the domain onto itself.
    pub fn stabilizes(&self, domain: &Domain) -> bool {
        self.n() == domain.n()
            && domain
                .removed()
                .iter()
                .all(|x| !domain.contains_mask(self.apply_mask(x.bits())))
    }

    /// Every permutation of `[n]` in lexicographic order of image vectors.
    pub fn all(n: usize) -> Vec<GroundPermutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(GroundPermutation { image: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Permutations of `[n]` mapping the domain onto itself.
    pub fn stabilizer(domain: &Domain) -> Vec<GroundPermutation> {
        GroundPermutation::all(domain.n())
            .into_iter()
            .filter(|g| g.stabilizes(domain))
            .collect()
    }
}
