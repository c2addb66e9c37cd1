//! Explicit embeddings into `B_n` with a family removed, Mirsky's antichain
//! partition, and the witness colorings behind the lower bounds.

use std::collections::HashMap;

use crate::coloring::Coloring;
use crate::embed::{EmbeddingMap, Mode};
use crate::error::{invalid, Result};
use crate::lattice::{full_mask, is_antichain, is_chain, level_order, Domain, ElementSet, GroundPermutation, MAX_GROUND};
use crate::poset::{dim2, Poset};

/// Inserts a zero bit at the position of the 1-based element `w`, turning a
/// mask over `n - 1` coordinates into a mask over `[n] - {w}`.
#[inline]
fn expand(source: u32, w: usize) -> u32 {
    let low = source & ((1u32 << (w - 1)) - 1);
    let high = (source >> (w - 1)) << w;
    low | high
}

fn check_family(n: usize, family: &[ElementSet]) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return invalid(format!("ground size {n} must lie in [1, {MAX_GROUND}]"));
    }
    if let Some(x) = family.iter().find(|x| x.ground() != n) {
        return invalid(format!("{x} is not a subset of [{n}]"));
    }
    Ok(())
}

fn lift(images: Vec<u32>, n: usize) -> EmbeddingMap {
    EmbeddingMap {
        images: images
            .into_iter()
            .map(|m| ElementSet::new(m, n).expect("image fits ground"))
            .collect(),
        mode: Mode::Strong,
    }
}

/// Embeds `B_{n-1}` into `B_n - C` for a chain `C` missing `∅` or `[n]`.
///
/// If the least member of `C` is nonempty, some element `w` lies in every
/// member and the subsets avoiding `w` are used. If `∅ ∈ C`, some `w` lies
/// outside the top member and the map is `X ↦ X ∪ {w}`.
pub fn chain_removal_embedding(n: usize, chain: &[ElementSet]) -> Result<EmbeddingMap> {
    check_family(n, chain)?;
    if !is_chain(chain) {
        return invalid("family is not a chain");
    }
    let has_bottom = chain.iter().any(|x| x.is_empty());
    let has_top = chain.iter().any(|x| x.bits() == full_mask(n));
    if has_bottom && has_top {
        return invalid("chain contains both the empty set and [n]");
    }
    let least = chain.iter().min_by_key(|x| x.len());
    let (w, add) = match least {
        None => (n, false),
        Some(x) if !x.is_empty() => (x.bits().trailing_zeros() as usize + 1, false),
        Some(_) => {
            let top = chain.iter().max_by_key(|x| x.len()).expect("nonempty");
            let outside = !top.bits() & full_mask(n);
            (outside.trailing_zeros() as usize + 1, true)
        }
    };
    let wbit = if add { 1u32 << (w - 1) } else { 0 };
    let images = (0..1u32 << (n - 1)).map(|s| expand(s, w) | wbit).collect();
    Ok(lift(images, n))
}

/// Embeds `B_{n-1}` into `B_n - A` for an antichain `A`, expanding along the
/// coordinate `w` (default `n`): `X ↦ X ∪ {w}` when `X` contains a member of
/// `A`, otherwise `X ↦ X`.
pub fn antichain_removal_embedding(
    n: usize,
    antichain: &[ElementSet],
    w: Option<usize>,
) -> Result<EmbeddingMap> {
    check_family(n, antichain)?;
    if !is_antichain(antichain) {
        return invalid("family is not an antichain");
    }
    let w = w.unwrap_or(n);
    if w == 0 || w > n {
        return invalid(format!("expansion coordinate {w} outside [1, {n}]"));
    }
    let members: Vec<u32> = antichain.iter().map(|x| x.bits()).collect();
    Ok(lift(antichain_map(n, &members, w), n))
}

fn antichain_map(n: usize, members: &[u32], w: usize) -> Vec<u32> {
    let wbit = 1u32 << (w - 1);
    (0..1u32 << (n - 1))
        .map(|s| {
            let x = expand(s, w);
            if members.iter().any(|&y| y & !x == 0) {
                x | wbit
            } else {
                x
            }
        })
        .collect()
}

/// Splits a family into antichains by the number of elements of the longest
/// chain ending at each member. Part `t` (0-based) holds rank `t + 1`.
pub fn mirsky_antichain_partition(family: &[ElementSet]) -> Vec<Vec<ElementSet>> {
    let mut members: Vec<ElementSet> = family.to_vec();
    members.sort_by_key(|x| (x.len(), x.bits()));
    members.dedup();
    let mut rank = vec![1usize; members.len()];
    for i in 0..members.len() {
        for j in 0..i {
            if members[j] != members[i] && members[j].is_subset(members[i]) {
                rank[i] = rank[i].max(rank[j] + 1);
            }
        }
    }
    let height = rank.iter().copied().max().unwrap_or(0);
    let mut parts = vec![Vec::new(); height];
    for (x, r) in members.into_iter().zip(rank) {
        parts[r - 1].push(x);
    }
    parts
}

/// Embeds `B_{n-h}` into `B_n - F`, where `h` is the longest-chain length of
/// `F`, by peeling off one Mirsky antichain at a time. With `forbid_top`
/// false, `[n]` is exempt and may appear in the image.
pub fn iterated_removal_embedding(
    n: usize,
    family: &[ElementSet],
    forbid_top: bool,
) -> Result<EmbeddingMap> {
    check_family(n, family)?;
    let top = full_mask(n);
    let kept: Vec<ElementSet> = family
        .iter()
        .copied()
        .filter(|x| forbid_top || x.bits() != top)
        .collect();
    let parts = mirsky_antichain_partition(&kept);
    let h = parts.len();
    if h > n {
        return invalid(format!("longest chain has {h} elements but n = {n}"));
    }
    // current map: B_cur -> B_n, indexed by source mask
    let mut current: Vec<u32> = (0..1u32 << n).collect();
    let mut cur = n;
    for part in &parts {
        let source_of: HashMap<u32, u32> = current
            .iter()
            .enumerate()
            .map(|(s, &img)| (img, s as u32))
            .collect();
        let pulled: Vec<u32> = part
            .iter()
            .filter_map(|x| source_of.get(&x.bits()).copied())
            .collect();
        let step = antichain_map(cur, &pulled, cur);
        current = step.into_iter().map(|s| current[s as usize]).collect();
        cur -= 1;
    }
    Ok(lift(current, n))
}

/// Colors `X ≠ [nk]` with `⌊|X|/n⌋ + 1` and `[nk]` with `top_color`, on `B_{nk}`.
pub fn coloring_layered_identical(m: usize, n: usize, k: usize, top_color: u8) -> Result<Coloring> {
    if m == 0 || m > n {
        return invalid("layered coloring needs 1 <= m <= n");
    }
    if k == 0 || k > u8::MAX as usize || top_color == 0 || top_color as usize > k {
        return invalid("layered coloring needs k >= 1 and top color in [1, k]");
    }
    let ground = n * k;
    let domain = Domain::full(ground)?;
    let top = full_mask(ground);
    Coloring::from_fn(domain, Some(k as u8), |x| {
        if x.bits() == top {
            top_color
        } else {
            (x.len() / n + 1) as u8
        }
    })
}

/// On `B_{m+n}`: color 1 below size `m`, color 2 from size `m` up.
pub fn coloring_mixed(m: usize, n: usize) -> Result<Coloring> {
    if m == 0 || n == 0 {
        return invalid("mixed coloring needs m, n >= 1");
    }
    Coloring::from_fn(Domain::full(m + n)?, Some(2), |x| if x.len() < m { 1 } else { 2 })
}

/// A `k`-coloring of `B_{k+1} - {S}` with no monochromatic `V_{1,1}`.
///
/// For `S = ∅` every set of size `i` gets color `i`. Otherwise, with `S`
/// relabeled to `[s]`: `|X|` when `S ⊂ X`, `|X| + 1` when `S ⊄ X` and
/// `|X| <= k - 1`, and `i` on the co-singleton `[k+1] - {i}` for `i <= s`.
/// The top `[k+1]` lies in no `V_{1,1}` and gets color `k`.
pub fn coloring_minimal_theorem3(k: usize, s: ElementSet) -> Result<Coloring> {
    if k == 0 || k + 1 > MAX_GROUND {
        return invalid("k must lie in [1, 29]");
    }
    let ground = k + 1;
    if s.ground() != ground {
        return invalid(format!("{s} is not a subset of [{ground}]"));
    }
    let top = full_mask(ground);
    if s.bits() == top {
        return invalid("S must be a proper subset of [k+1]");
    }
    let domain = Domain::without(ground, &[s])?;
    let kk = k as u8;
    if s.is_empty() {
        return Coloring::from_fn(domain, Some(kk), |x| (x.len() as u8).min(kk));
    }
    // g sends [s] onto S in increasing order, the rest onto [k+1] - S
    let members = s.members();
    let others = s.complement().members();
    let images: Vec<usize> = members.iter().chain(others.iter()).copied().collect();
    let g = GroundPermutation::from_images(&images)?;
    let ginv = g.inverse();
    let size = members.len();
    let base = full_mask(size);
    Coloring::from_fn(domain, Some(kk), |x| {
        let y = ginv.apply_mask(x.bits());
        if y == top {
            return kk;
        }
        let missing = !y & top;
        if missing.count_ones() == 1 && missing & base != 0 {
            return missing.trailing_zeros() as u8 + 1;
        }
        if base & !y == 0 {
            y.count_ones() as u8
        } else {
            y.count_ones() as u8 + 1
        }
    })
}

/// On `B_{n(k-1)+1}`: `⌈|X|/n⌉` except `∅` and the top, which get color `k`.
pub fn coloring_rainbow_lower(n: usize, k: usize) -> Result<Coloring> {
    if n < 2 || k < 2 {
        return invalid("rainbow lower-bound coloring needs n >= 2 and k >= 2");
    }
    let ground = n * (k - 1) + 1;
    if ground > MAX_GROUND || k > u8::MAX as usize {
        return invalid("parameters too large");
    }
    let top = full_mask(ground);
    Coloring::from_fn(Domain::full(ground)?, Some(k as u8), |x| {
        if x.is_empty() || x.bits() == top {
            k as u8
        } else {
            x.len().div_ceil(n) as u8
        }
    })
}

/// On `B_{d-1}` with `d = dim₂(P) + m(P)`: `∅ ↦ 1`, top `↦ 2`, all else `↦ 3`.
pub fn coloring_prop8_lower(pattern: &Poset) -> Result<Coloring> {
    if pattern.size() < 2 {
        return invalid("pattern needs at least 2 elements");
    }
    let d = dim2(pattern, crate::lattice::MAX_EXHAUSTIVE_GROUND)? + pattern.extremal_count();
    let ground = d - 1;
    let top = full_mask(ground);
    Coloring::from_fn(Domain::full(ground)?, Some(3), |x| {
        if x.is_empty() {
            1
        } else if x.bits() == top {
            2
        } else {
            3
        }
    })
}

/// Sizes of the color classes of a coloring over `B_n`, per set size.
pub fn sizes_by_color(c: &Coloring) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); c.max_color() as usize + 1];
    for m in level_order(c.n()) {
        if let Some(col) = c.color_mask(m) {
            let sizes = &mut out[col as usize];
            let s = m.count_ones() as usize;
            if !sizes.contains(&s) {
                sizes.push(s);
            }
        }
    }
    out
}
