//! Abstract target posets and their embeddings into Boolean lattices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::embed::{to_map, EmbedQuery, EmbeddingMap, Mode};
use crate::error::{invalid, Error, Result};
use crate::lattice::{Domain, ElementSet, MAX_GROUND};

/// How a poset was built; prints as its pattern literal where one exists.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PosetLabel {
    V(usize, usize),
    Chain(usize),
    Antichain(usize),
    Cube(usize),
    Induced(Domain),
    Dual(Box<PosetLabel>),
    Custom,
}

impl fmt::Display for PosetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetLabel::V(m, n) => write!(f, "V({m},{n})"),
            PosetLabel::Chain(k) => write!(f, "C({k})"),
            PosetLabel::Antichain(k) => write!(f, "A({k})"),
            PosetLabel::Cube(m) => write!(f, "B({m})"),
            PosetLabel::Induced(d) => write!(f, "induced({d})"),
            PosetLabel::Dual(inner) => write!(f, "dual({inner})"),
            PosetLabel::Custom => f.write_str("custom"),
        }
    }
}

/// A finite poset on elements `0..size` with a full `≤` table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poset {
    size: usize,
    leq: Vec<bool>,
    label: PosetLabel,
}

impl Poset {
    /// Validates reflexivity, antisymmetry and transitivity.
    pub fn from_leq(size: usize, leq: Vec<bool>, label: PosetLabel) -> Result<Self> {
        if leq.len() != size * size {
            return invalid("relation table has the wrong length");
        }
        let at = |a: usize, b: usize| leq[a * size + b];
        for a in 0..size {
            if !at(a, a) {
                return invalid(format!("relation is not reflexive at {a}"));
            }
            for b in 0..size {
                if a != b && at(a, b) && at(b, a) {
                    return invalid(format!("relation is not antisymmetric at ({a}, {b})"));
                }
                for c in 0..size {
                    if at(a, b) && at(b, c) && !at(a, c) {
                        return invalid(format!("relation is not transitive at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        Ok(Poset { size, leq, label })
    }

    /// Builds the transitive closure of the given `lower < upper` pairs.
    pub fn from_covers(size: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; size * size];
        for a in 0..size {
            leq[a * size + a] = true;
        }
        for &(a, b) in covers {
            if a >= size || b >= size {
                return invalid(format!("cover ({a}, {b}) out of range for size {size}"));
            }
            if a == b {
                return invalid(format!("cover ({a}, {b}) is a loop"));
            }
            leq[a * size + b] = true;
        }
        for k in 0..size {
            for a in 0..size {
                if leq[a * size + k] {
                    for b in 0..size {
                        if leq[k * size + b] {
                            leq[a * size + b] = true;
                        }
                    }
                }
            }
        }
        Poset::from_leq(size, leq, PosetLabel::Custom)
    }

    /// `V_{m,n}`: a root `x` below the chains `y_1 < … < y_m` and `z_1 < … < z_n`.
    /// Element 0 is the root, `1..=m` the first branch, `m+1..=m+n` the second.
    pub fn v(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return invalid("V(m,n) needs m, n >= 1");
        }
        let size = m + n + 1;
        let branch = |i: usize| if i == 0 { 0 } else if i <= m { 1 } else { 2 };
        let mut leq = vec![false; size * size];
        for a in 0..size {
            for b in 0..size {
                leq[a * size + b] = a == 0 || (a <= b && branch(a) == branch(b));
            }
        }
        Ok(Poset {
            size,
            leq,
            label: PosetLabel::V(m, n),
        })
    }

    pub fn chain(k: usize) -> Result<Self> {
        if k == 0 {
            return invalid("C(k) needs k >= 1");
        }
        let leq = (0..k * k).map(|i| i / k <= i % k).collect();
        Ok(Poset {
            size: k,
            leq,
            label: PosetLabel::Chain(k),
        })
    }

    pub fn antichain(k: usize) -> Result<Self> {
        if k == 0 {
            return invalid("A(k) needs k >= 1");
        }
        let leq = (0..k * k).map(|i| i / k == i % k).collect();
        Ok(Poset {
            size: k,
            leq,
            label: PosetLabel::Antichain(k),
        })
    }

    /// The Boolean lattice `B_m` as a pattern; element `i` is the mask `i`.
    pub fn cube(m: usize) -> Result<Self> {
        if m > 12 {
            return invalid("B(m) patterns are limited to m <= 12");
        }
        let size = 1usize << m;
        let leq = (0..size * size)
            .map(|i| (i / size) & !(i % size) == 0)
            .collect();
        Ok(Poset {
            size,
            leq,
            label: PosetLabel::Cube(m),
        })
    }

    /// The subposet induced by a domain; element `i` is the `i`-th present
    /// mask in canonical order.
    pub fn induced(domain: &Domain) -> Result<Self> {
        let masks = domain.element_masks();
        let size = masks.len();
        if size > 4096 {
            return invalid("induced posets are limited to 4096 elements");
        }
        let leq = (0..size * size)
            .map(|i| masks[i / size] & !masks[i % size] == 0)
            .collect();
        Ok(Poset {
            size,
            leq,
            label: PosetLabel::Induced(domain.clone()),
        })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn label(&self) -> &PosetLabel {
        &self.label
    }

    /// Relation reversed.
    pub fn dual(&self) -> Poset {
        let s = self.size;
        let leq = (0..s * s).map(|i| self.leq(i % s, i / s)).collect();
        let label = match &self.label {
            PosetLabel::Dual(inner) => (**inner).clone(),
            other => PosetLabel::Dual(Box::new(other.clone())),
        };
        Poset { size: s, leq, label }
    }

    /// Cover pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let s = self.size;
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        let mut out = Vec::new();
        for a in 0..s {
            for b in 0..s {
                if lt(a, b) && !(0..s).any(|c| lt(a, c) && lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Number of elements in a longest chain.
    pub fn height(&self) -> usize {
        let order = crate::embed::search_order(self, None);
        let mut longest = vec![1usize; self.size];
        for (idx, &a) in order.iter().enumerate() {
            for &b in &order[..idx] {
                if self.leq(b, a) && b != a {
                    longest[a] = longest[a].max(longest[b] + 1);
                }
            }
        }
        longest.into_iter().max().unwrap_or(0)
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.size).find(|&a| (0..self.size).all(|b| self.leq(a, b)))
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.size).find(|&a| (0..self.size).all(|b| self.leq(b, a)))
    }

    /// Count of global extremal elements present (minimum, maximum).
    pub fn extremal_count(&self) -> usize {
        self.minimum().is_some() as usize + self.maximum().is_some() as usize
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&a| (0..self.size).all(|b| b == a || !self.leq(a, b)))
            .collect()
    }

    /// Whether the two posets are isomorphic. Sizes up to 8 compare
    /// canonical forms; larger ones use a bijection search.
    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        if self.size != other.size || self.covers().len() != other.covers().len() {
            return false;
        }
        if self.size <= 8 {
            return self.canonical_form() == other.canonical_form();
        }
        self.find_isomorphism(other).is_some()
    }

    /// Lexicographically least relation table over all relabelings. Only
    /// meant for small posets.
    pub fn canonical_form(&self) -> Vec<bool> {
        let s = self.size;
        let mut best: Option<Vec<bool>> = None;
        let mut perm: Vec<usize> = (0..s).collect();
        permute(&mut perm, 0, &mut |p| {
            let table: Vec<bool> = (0..s * s).map(|i| self.leq(p[i / s], p[i % s])).collect();
            if best.as_ref().is_none_or(|b| table < *b) {
                best = Some(table);
            }
        });
        best.unwrap_or_default()
    }

    fn find_isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let s = self.size;
        let profile = |p: &Poset, a: usize| {
            let up = (0..s).filter(|&b| p.leq(a, b)).count();
            let down = (0..s).filter(|&b| p.leq(b, a)).count();
            (up, down)
        };
        let mine: Vec<_> = (0..s).map(|a| profile(self, a)).collect();
        let theirs: Vec<_> = (0..s).map(|a| profile(other, a)).collect();
        let mut map = vec![usize::MAX; s];
        let mut used = vec![false; s];
        fn go(
            a: usize,
            this: &Poset,
            other: &Poset,
            mine: &[(usize, usize)],
            theirs: &[(usize, usize)],
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            let s = this.size;
            if a == s {
                return true;
            }
            for t in 0..s {
                if used[t] || mine[a] != theirs[t] {
                    continue;
                }
                let consistent = (0..a).all(|b| {
                    this.leq(a, b) == other.leq(t, map[b]) && this.leq(b, a) == other.leq(map[b], t)
                });
                if consistent {
                    map[a] = t;
                    used[t] = true;
                    if go(a + 1, this, other, mine, theirs, map, used) {
                        return true;
                    }
                    used[t] = false;
                }
            }
            false
        }
        go(0, self, other, &mine, &theirs, &mut map, &mut used).then_some(map)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            label: self.literal(),
            size: self.size,
            covers: self.covers().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    /// Rebuilds from the literal when it parses, otherwise from the covers.
    pub fn from_json(json: &PosetJson) -> Result<Self> {
        if let Some(lit) = &json.label {
            if let Ok(p) = lit.parse::<Poset>() {
                return Ok(p);
            }
        }
        let covers: Vec<(usize, usize)> = json.covers.iter().map(|c| (c[0], c[1])).collect();
        Poset::from_covers(json.size, &covers).map_err(|e| Error::Format(e.to_string()))
    }

    /// The pattern literal, for labels the literal grammar covers.
    pub fn literal(&self) -> Option<String> {
        match self.label {
            PosetLabel::V(..) | PosetLabel::Chain(_) | PosetLabel::Antichain(_) | PosetLabel::Cube(_) => {
                Some(self.label.to_string())
            }
            _ => None,
        }
    }
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.label {
            PosetLabel::Custom => write!(f, "custom[{}]", self.size),
            _ => write!(f, "{}", self.label),
        }
    }
}

/// Custom poset wire form: `{ "size": 4, "covers": [[0,1],[0,2],[1,3]] }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub size: usize,
    #[serde(default)]
    pub covers: Vec<[usize; 2]>,
}

impl FromStr for Poset {
    type Err = Error;

    /// Pattern literals: `V(m,n)`, `C(k)`, `A(k)`, `B(m)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Pattern(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (head, rest) = t.split_at(t.find('(').ok_or_else(bad)?);
        let args = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let nums = args
            .split(',')
            .map(|a| a.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let built = match (head, nums.as_slice()) {
            ("V", [m, n]) => Poset::v(*m, *n),
            ("C", [k]) => Poset::chain(*k),
            ("A", [k]) => Poset::antichain(*k),
            ("B", [m]) => Poset::cube(*m),
            _ => return Err(bad()),
        };
        built.map_err(|_| bad())
    }
}

/// Splits a comma-separated list of literals at parenthesis depth zero.
pub fn parse_pattern_list(s: &str) -> Result<Vec<Poset>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].parse()?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() {
        out.push(s[start..].parse()?);
    }
    if out.is_empty() {
        return Err(Error::Pattern(s.to_string()));
    }
    Ok(out)
}

/// Finds an embedding of `pattern` into the present elements of `domain`.
pub fn embed(pattern: &Poset, domain: &Domain, mode: Mode) -> Option<EmbeddingMap> {
    if pattern.size() > domain.size() {
        return None;
    }
    let host = domain.element_masks();
    embed_masks(pattern, &host, domain.n(), mode)
}

/// Finds an embedding into an explicit family of sets over ground size `n`.
pub fn embed_into(pattern: &Poset, family: &[ElementSet], mode: Mode) -> Option<EmbeddingMap> {
    let n = family.first().map_or(0, |x| x.ground());
    let mut host: Vec<u32> = family.iter().map(|x| x.bits()).collect();
    host.sort_by_key(|&m| (m.count_ones(), m));
    host.dedup();
    embed_masks(pattern, &host, n, mode)
}

pub(crate) fn embed_masks(pattern: &Poset, host: &[u32], n: usize, mode: Mode) -> Option<EmbeddingMap> {
    let q = EmbedQuery {
        pattern,
        mode,
        host,
        pin: None,
        rainbow: None,
    };
    q.run().map(|images| to_map(images, n, mode).expect("host masks fit the ground size"))
}

/// Least `n <= n_max` such that `B_n` contains `pattern` as a strong subposet.
pub fn dim2(pattern: &Poset, n_max: usize) -> Result<usize> {
    let h = pattern.height();
    for n in 0..=n_max.min(MAX_GROUND) {
        if (1usize << n) < pattern.size() || h > n + 1 {
            continue;
        }
        if embed(pattern, &Domain::full(n)?, Mode::Strong).is_some() {
            return Ok(n);
        }
    }
    Err(Error::NotFoundWithinBound {
        pattern: pattern.to_string(),
        bound: n_max,
    })
}

/// `min { m : C(m, ⌊m/2⌋) >= k }`, the 2-dimension of the antichain `A_k`.
pub fn antichain_dim2(k: usize) -> usize {
    let mut m = 0usize;
    loop {
        if central_binomial(m) >= k as u128 {
            return m;
        }
        m += 1;
    }
}

fn central_binomial(m: usize) -> u128 {
    let r = m / 2;
    (0..r).fold(1u128, |acc, i| acc * (m - i) as u128 / (i + 1) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_shape_structure() {
        let v11 = Poset::v(1, 1).unwrap();
        assert_eq!(v11.size(), 3);
        assert_eq!(v11.minimum(), Some(0));
        assert!(!v11.comparable(1, 2));
        let v12 = Poset::v(1, 2).unwrap();
        assert_eq!(v12.size(), 4);
        assert_eq!(v12.height(), 3);
        let v22 = Poset::v(2, 2).unwrap();
        assert_eq!(v22.size(), 5);
        assert!(v22.leq(1, 2) && v22.leq(3, 4));
        for a in 1..=2 {
            for b in 3..=4 {
                assert!(!v22.comparable(a, b));
            }
        }
        assert!(Poset::v(0, 2).is_err());
    }

    #[test]
    fn duals() {
        let c3 = Poset::chain(3).unwrap();
        assert!(c3.dual().is_isomorphic(&c3));
        let lambda = Poset::v(1, 1).unwrap().dual();
        assert_eq!(lambda.maximum(), Some(0));
        assert_eq!(lambda.minimum(), None);
        assert_eq!(lambda.maximal_elements(), vec![0]);
        assert!(!lambda.is_isomorphic(&Poset::v(1, 1).unwrap()));
        let a4 = Poset::antichain(4).unwrap();
        assert!(a4.dual().is_isomorphic(&a4));
        assert_eq!(Poset::v(2, 3).unwrap().dual().dual(), Poset::v(2, 3).unwrap());
    }

    #[test]
    fn validation_rejects_bad_relations() {
        assert!(Poset::from_covers(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Poset::from_leq(2, vec![true, false, false, false], PosetLabel::Custom).is_err());
        let p = Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3)]).unwrap();
        assert!(p.leq(0, 3));
        assert!(p.is_isomorphic(&Poset::v(1, 2).unwrap()));
    }

    #[test]
    fn embedding_examples() {
        let b2 = Domain::full(2).unwrap();
        let m = embed(&Poset::v(1, 1).unwrap(), &b2, Mode::Strong).unwrap();
        let got: Vec<String> = m.images.iter().map(ToString::to_string).collect();
        assert_eq!(got, vec!["{}", "{1}", "{2}"]);
        assert!(embed(&Poset::cube(2).unwrap(), &Domain::full(1).unwrap(), Mode::Strong).is_none());
        let w = embed(&Poset::v(1, 2).unwrap(), &b2, Mode::Weak).unwrap();
        assert!(w.is_valid_for(&Poset::v(1, 2).unwrap(), |_| true));
        assert!(embed(&Poset::v(1, 2).unwrap(), &b2, Mode::Strong).is_none());
    }

    #[test]
    fn dim2_examples() {
        assert_eq!(dim2(&Poset::v(1, 2).unwrap(), 6).unwrap(), 3);
        assert_eq!(dim2(&Poset::chain(1).unwrap(), 6).unwrap(), 0);
        assert_eq!(dim2(&Poset::antichain(3).unwrap(), 6).unwrap(), 3);
        assert_eq!(dim2(&Poset::cube(2).unwrap(), 6).unwrap(), 2);
        assert!(matches!(
            dim2(&Poset::antichain(7).unwrap(), 3),
            Err(Error::NotFoundWithinBound { .. })
        ));
    }

    #[test]
    fn antichain_dim2_examples() {
        assert_eq!(antichain_dim2(1), 0);
        assert_eq!(antichain_dim2(2), 2);
        assert_eq!(antichain_dim2(3), 3);
        assert_eq!(antichain_dim2(6), 4);
        assert_eq!(antichain_dim2(7), 5);
    }

    #[test]
    fn extremal_counts() {
        assert_eq!(Poset::v(1, 2).unwrap().extremal_count(), 1);
        assert_eq!(Poset::cube(2).unwrap().extremal_count(), 2);
        assert_eq!(Poset::antichain(2).unwrap().extremal_count(), 0);
        assert_eq!(Poset::chain(3).unwrap().extremal_count(), 2);
    }

    #[test]
    fn literals() {
        assert_eq!("V(1,2)".parse::<Poset>().unwrap(), Poset::v(1, 2).unwrap());
        assert_eq!(" B( 2 ) ".parse::<Poset>().unwrap(), Poset::cube(2).unwrap());
        assert!(matches!("X(1)".parse::<Poset>(), Err(Error::Pattern(_))));
        assert!(matches!("V(1)".parse::<Poset>(), Err(Error::Pattern(_))));
        assert!(matches!("V(0,1)".parse::<Poset>(), Err(Error::Pattern(_))));
        let list = parse_pattern_list("V(1,1), V(2,2)").unwrap();
        assert_eq!(list.len(), 2);
        assert_eq!(list[1].literal().unwrap(), "V(2,2)");
    }

    #[test]
    fn json_round_trip() {
        let p = Poset::from_covers(3, &[(0, 2), (1, 2)]).unwrap();
        let json = p.to_json();
        assert_eq!(json.label, None);
        assert_eq!(Poset::from_json(&json).unwrap(), p);
        let v = Poset::v(1, 2).unwrap();
        assert_eq!(Poset::from_json(&v.to_json()).unwrap(), v);
    }

    #[test]
    fn isomorphism_by_search_above_canonical_limit() {
        let b3 = Poset::cube(3).unwrap();
        let relabeled = Poset::induced(&Domain::full(3).unwrap()).unwrap();
        assert!(b3.is_isomorphic(&relabeled));
        let c = Poset::chain(9).unwrap();
        assert!(c.is_isomorphic(&c.dual()));
        assert!(!c.is_isomorphic(&Poset::antichain(9).unwrap()));
    }
}
