//! Specialized detection of strong `V_{m,n}` copies inside a family of sets.
//!
//! A root `x` with chains `Y = (y_1 ⊂ … ⊂ y_m)` and `Z = (z_1 ⊂ … ⊂ z_n)`
//! above it forms a strong `V_{m,n}` exactly when `y_1 ⊄ z_n` and
//! `z_1 ⊄ y_m`: every other cross-branch inclusion would imply one of those.
//! A chain of at least two elements from `a` to `t` can be thinned to any
//! length `≥ 2` keeping both ends, so only the endpoints and the longest
//! chain between them matter.

use crate::bits::{ones, Tables};

/// Masks reachable from `a` by a strict chain of exactly `len` elements
/// inside `within` (for `len >= 2`, equivalently: a chain of at least `len`).
#[inline]
fn reach(t: &Tables, within: u64, a: usize, len: usize) -> u64 {
    let mut r = 1u64 << a;
    for _ in 1..len {
        r = within & t.strict_up_of(r);
        if r == 0 {
            break;
        }
    }
    r
}

/// Chain `a = c_1 ⊂ … ⊂ c_len = top` inside `within`; `top` must be
/// reachable.
fn chain_to(t: &Tables, within: u64, a: usize, top: usize, len: usize) -> Vec<u32> {
    let mut layers = vec![1u64 << a];
    for _ in 1..len {
        let next = within & t.strict_up_of(*layers.last().unwrap());
        layers.push(next);
    }
    let mut chain = vec![top as u32];
    let mut cur = top;
    for j in (0..len - 1).rev() {
        let below = layers[j] & t.strict_down[cur];
        cur = below.trailing_zeros() as usize;
        chain.push(cur as u32);
    }
    chain.reverse();
    chain
}

/// Finds a strong `V_{m,n}` in `family`. Images are returned in pattern
/// order: root, first branch bottom to top, second branch bottom to top.
pub(crate) fn find_v(t: &Tables, family: u64, m: usize, n: usize, order: &[u32]) -> Option<Vec<u32>> {
    for &x in order {
        let x = x as usize;
        if family >> x & 1 == 0 {
            continue;
        }
        let above = family & t.strict_up[x];
        if (above.count_ones() as usize) < m + n {
            continue;
        }
        let members: Vec<usize> = order
            .iter()
            .map(|&u| u as usize)
            .filter(|&u| above >> u & 1 == 1)
            .collect();
        let tops_m: Vec<u64> = members.iter().map(|&a| reach(t, above, a, m)).collect();
        let tops_n: Vec<u64> = members.iter().map(|&b| reach(t, above, b, n)).collect();
        for (ia, &a) in members.iter().enumerate() {
            if tops_m[ia] == 0 {
                continue;
            }
            for (ib, &b) in members.iter().enumerate() {
                if a == b || tops_n[ib] == 0 {
                    continue;
                }
                let ys = tops_m[ia] & !t.up[b];
                let zs = tops_n[ib] & !t.up[a];
                if ys != 0 && zs != 0 {
                    let y_top = lowest_in_order(ys, order);
                    let z_top = lowest_in_order(zs, order);
                    let mut images = vec![x as u32];
                    images.extend(chain_to(t, above, a, y_top, m));
                    images.extend(chain_to(t, above, b, z_top, n));
                    return Some(images);
                }
            }
        }
    }
    None
}

fn lowest_in_order(set: u64, order: &[u32]) -> usize {
    order
        .iter()
        .map(|&u| u as usize)
        .find(|&u| set >> u & 1 == 1)
        .expect("nonempty set")
}

/// Whether `family` contains a strong `V_{m,n}` using `e`, given that `e` is
/// maximal in `family`. Such an `e` can only be the top of a branch.
pub(crate) fn has_v_through(t: &Tables, family: u64, m: usize, n: usize, e: usize) -> bool {
    let splits: &[(usize, usize)] = if m == n { &[(m, n)] } else { &[(m, n), (n, m)] };
    for x in ones(family & t.strict_down[e]) {
        let above = family & t.strict_up[x];
        if (above.count_ones() as usize) < m + n {
            continue;
        }
        for &(len_e, len_o) in splits {
            // bottoms of chains of len_e elements ending at e
            let mut bottoms = 1u64 << e;
            for _ in 1..len_e {
                bottoms = above & t.strict_down_of(bottoms);
                if bottoms == 0 {
                    break;
                }
            }
            if bottoms == 0 {
                continue;
            }
            // s must avoid containing at least one bottom
            let blocked = ones(bottoms).fold(t.all, |acc, a| acc & t.up[a]);
            for b in ones(above & !t.down[e]) {
                if reach(t, above, b, len_o) & !blocked != 0 {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::level_order;

    #[test]
    fn whole_lattice_contains_balanced_v() {
        let t = Tables::new(3);
        let order = level_order(3);
        let v = find_v(&t, t.all, 1, 2, &order).unwrap();
        assert_eq!(v[0], 0);
        assert_eq!(v.len(), 4);
        assert!(find_v(&t, t.all, 2, 2, &order).is_some());
        assert!(find_v(&t, t.all, 2, 3, &order).is_none());
    }

    #[test]
    fn pinned_agrees_with_full_on_b3() {
        let t = Tables::new(3);
        let order = level_order(3);
        for fam in 0..256u64 {
            for (m, n) in [(1, 1), (1, 2), (2, 2)] {
                // take e = the last member in canonical order; it is maximal
                let Some(&e) = order.iter().rev().find(|&&u| fam >> u & 1 == 1) else {
                    continue;
                };
                let without = fam & !(1 << e);
                let full = find_v(&t, fam, m, n, &order).is_some();
                let before = find_v(&t, without, m, n, &order).is_some();
                let through = has_v_through(&t, fam, m, n, e as usize);
                assert_eq!(full, before || through, "fam {fam:#x} ({m},{n})");
            }
        }
    }
}
