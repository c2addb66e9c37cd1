use super::{find_good_coloring_filtered, Outcome, SearchConfig};
use crate::bits::Tables;
use crate::checker::{is_good, Target, TargetList};
use crate::coloring::Coloring;
use crate::error::{invalid, Result};
use crate::lattice::{full_mask, level_order, Domain};
use crate::poset::Poset;
use crate::vshape::find_v;

#[derive(Clone, Debug)]
pub struct VmnReport {
    pub m: usize,
    pub n: usize,
    /// Colorings enumerated; `None` when the pruned search was used.
    pub colorings_enumerated: Option<u64>,
    /// Of those, colorings meeting the hypothesis.
    pub hypothesis_count: Option<u64>,
    /// A coloring meeting the hypothesis with neither conclusion.
    pub counterexample: Option<Coloring>,
}

impl VmnReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks, over 2-colorings of `B_N` with `N = m+n+1`: if some co-singleton
/// shares the color of `∅`, there is a `V(m,m)` in color 1 or a `V(n,n)` in
/// color 2.
pub fn verify_vmn_lemma(m: usize, n: usize) -> Result<bool> {
    Ok(vmn_lemma_report(m, n, &SearchConfig::default())?.holds())
}

pub fn vmn_lemma_report(m: usize, n: usize, cfg: &SearchConfig) -> Result<VmnReport> {
    if m == 0 || n == 0 || m + n + 1 > 5 {
        return invalid("need m, n >= 1 and m + n + 1 <= 5");
    }
    let ground = m + n + 1;
    if ground <= 4 {
        return Ok(brute_force_vmn(m, n));
    }
    let targets = TargetList::new(vec![
        Target::strong(Poset::v(m, m)?),
        Target::strong(Poset::v(n, n)?),
    ])?;
    let full = full_mask(ground) as usize;
    let hypothesis = move |colors: &[u8]| (0..ground).any(|i| colors[full ^ 1 << i] == colors[0]);
    let cert = find_good_coloring_filtered(&Domain::full(ground)?, &targets, cfg, &hypothesis)?;
    if cert.outcome == Outcome::Inconclusive {
        return Err(crate::error::Error::Inconclusive(cfg.node_budget.unwrap_or(0)));
    }
    Ok(VmnReport {
        m,
        n,
        colorings_enumerated: None,
        hypothesis_count: None,
        counterexample: cert.witness().cloned(),
    })
}

fn brute_force_vmn(m: usize, n: usize) -> VmnReport {
    let ground = m + n + 1;
    let t = Tables::new(ground);
    let order = level_order(ground);
    let full = full_mask(ground) as usize;
    let size = 1u32 << ground;
    let mut report = VmnReport {
        m,
        n,
        colorings_enumerated: Some(0),
        hypothesis_count: Some(0),
        counterexample: None,
    };
    let mut enumerated = 0u64;
    let mut hypothesis = 0u64;
    // bit x of `two` set: mask x has color 2
    for two in 0..=t.all {
        enumerated += 1;
        let color = |x: usize| two >> x & 1;
        if !(0..ground).any(|i| color(full ^ 1 << i) == color(0)) {
            continue;
        }
        hypothesis += 1;
        let one = t.all & !two;
        if find_v(&t, one, m, m, &order).is_none() && find_v(&t, two, n, n, &order).is_none() {
            let table = (0..size).map(|x| 1 + color(x as usize) as u8).collect();
            report.counterexample =
                Some(Coloring::from_table(Domain::full(ground).expect("small"), table, Some(2)).expect("valid"));
            break;
        }
    }
    report.colorings_enumerated = Some(enumerated);
    report.hypothesis_count = Some(hypothesis);
    report
}

/// Plain enumeration of all `k`-colorings in lexicographic order (first
/// element in level order varies slowest); returns the first good one.
/// Limited to `k^|D| <= 2^24`.
pub fn brute_force_good_coloring(domain: &Domain, k: usize, targets: &TargetList) -> Result<Option<Coloring>> {
    if targets.len() != k || k == 0 {
        return invalid("need k = |T| >= 1");
    }
    let elems = domain.element_masks();
    let total = (k as f64).powi(elems.len() as i32);
    if total > (1u64 << 24) as f64 {
        return invalid("too many colorings for plain enumeration");
    }
    let mut digits = vec![0usize; elems.len()];
    loop {
        let mut table = vec![0u8; 1usize << domain.n()];
        for (d, &m) in digits.iter().zip(&elems) {
            table[m as usize] = (*d + 1) as u8;
        }
        let c = Coloring::from_table(domain.clone(), table, Some(k as u8))?;
        if is_good(&c, targets) {
            return Ok(Some(c));
        }
        let Some(i) = (0..digits.len()).rev().find(|&i| digits[i] + 1 < k) else {
            return Ok(None);
        };
        digits[i] += 1;
        for d in digits[i + 1..].iter_mut() {
            *d = 0;
        }
    }
}
