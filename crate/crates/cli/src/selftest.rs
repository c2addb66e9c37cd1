//! Seeded randomized cross-checks between independent code paths.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use vramsey::checker::{find_monochromatic, find_monochromatic_v_fast, is_good, witness_holds, TargetList};
use vramsey::constructions as cons;
use vramsey::lattice::{full_mask, is_antichain};
use vramsey::search::{brute_force_good_coloring, find_good_coloring, verify_certificate, CertificateJson};
use vramsey::{Coloring, Domain, ElementSet, Mode, Poset, SearchConfig};

use crate::{CmdResult, Fail, Report};

const POOL: [&str; 6] = ["V(1,1)", "V(1,2)", "V(2,2)", "C(2)", "C(3)", "A(2)"];

struct Tally {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }
}

fn random_domain(rng: &mut ChaCha8Rng, n: usize) -> Domain {
    let removed: Vec<ElementSet> = (0..rng.gen_range(0..=3))
        .map(|_| ElementSet::new(rng.gen_range(0..1u32 << n), n).unwrap())
        .collect();
    Domain::without(n, &removed).unwrap()
}

fn random_targets(rng: &mut ChaCha8Rng) -> TargetList {
    let a = POOL.choose(rng).unwrap();
    let b = POOL.choose(rng).unwrap();
    let mode = if rng.gen_bool(0.25) { Mode::Weak } else { Mode::Strong };
    TargetList::parse(&format!("{a},{b}"), mode).unwrap()
}

fn fast_v(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new("fast V detector agrees with generic embedding");
    for _ in 0..cases {
        let d = random_domain(rng, 4);
        let c = Coloring::from_fn(d, Some(2), |_| rng.gen_range(1..=2)).unwrap();
        for (m, n) in [(1, 1), (1, 2), (2, 2)] {
            let single = TargetList::parse(&format!("V({m},{n})"), Mode::Strong).unwrap();
            for color in 1..=2u8 {
                let only = c.recolored(if color == 1 { &[1, 2] } else { &[2, 1] }).unwrap();
                let generic = find_monochromatic(&only, &single).is_some();
                let fast = find_monochromatic_v_fast(&c, m, n, color);
                let valid = fast
                    .as_ref()
                    .is_none_or(|w| witness_holds(&c, w, &Poset::v(m, n).unwrap()));
                t.check(fast.is_some() == generic && valid, || {
                    format!("V({m},{n}) color {color} on {}", c.domain())
                });
            }
        }
    }
    t
}

fn search_vs_enumeration(rng: &mut ChaCha8Rng, cases: usize, cfg: &SearchConfig) -> Tally {
    let mut t = Tally::new("search agrees with brute-force enumeration");
    for i in 0..cases {
        let n = if i % 4 == 3 { 4 } else { 3 };
        let d = random_domain(rng, n);
        let targets = random_targets(rng);
        let Ok(oracle) = brute_force_good_coloring(&d, 2, &targets) else {
            continue;
        };
        match find_good_coloring(&d, 2, &targets, cfg) {
            Ok(cert) => {
                let agrees = match cert.witness() {
                    Some(w) => oracle.is_some() && is_good(w, &targets),
                    None => cert.is_exhausted() && oracle.is_none(),
                };
                t.check(agrees, || format!("{d} {}", targets.describe()));
            }
            Err(e) => t.check(false, || format!("{d} {}: {e}", targets.describe())),
        }
    }
    t
}

fn random_chain(rng: &mut ChaCha8Rng, n: usize) -> Vec<ElementSet> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut mask = 0u32;
    let mut chain = Vec::new();
    for &i in &order[..n - 1] {
        mask |= 1 << i;
        if rng.gen_bool(0.5) {
            chain.push(ElementSet::new(mask, n).unwrap());
        }
    }
    chain
}

fn random_antichain(rng: &mut ChaCha8Rng, n: usize) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = Vec::new();
    for _ in 0..rng.gen_range(1..=6) {
        let x = ElementSet::new(rng.gen_range(0..1u32 << n), n).unwrap();
        let mut with = out.clone();
        with.push(x);
        if is_antichain(&with) && !out.contains(&x) {
            out = with;
        }
    }
    out
}

fn embeddings(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::new("removal embeddings avoid the removed family");
    for _ in 0..cases {
        let n = rng.gen_range(2..=8);
        let (name, family, map) = match rng.gen_range(0..3) {
            0 => {
                let f = random_chain(rng, n);
                ("chain", f.clone(), cons::chain_removal_embedding(n, &f))
            }
            1 => {
                let f = random_antichain(rng, n);
                let w = rng.gen_range(1..=n);
                ("antichain", f.clone(), cons::antichain_removal_embedding(n, &f, Some(w)))
            }
            _ => {
                let f: Vec<ElementSet> = (0..rng.gen_range(0..6))
                    .map(|_| ElementSet::new(rng.gen_range(0..full_mask(n)), n).unwrap())
                    .collect();
                ("iterated", f.clone(), cons::iterated_removal_embedding(n, &f, true))
            }
        };
        let valid = map.as_ref().is_ok_and(|m| {
            let dim = m.images.len().trailing_zeros() as usize;
            m.is_valid_for(&Poset::cube(dim).unwrap(), |x| !family.contains(&x))
        });
        t.check(valid, || format!("{name} removal on B_{n}: {family:?}"));
    }
    t
}

fn certificates(rng: &mut ChaCha8Rng, cases: usize, cfg: &SearchConfig) -> Tally {
    let mut t = Tally::new("certificates survive a JSON round trip and re-verify");
    for _ in 0..cases.div_ceil(10) {
        let n = rng.gen_range(2..=4);
        let targets = random_targets(rng);
        let Ok(cert) = find_good_coloring(&Domain::full(n).unwrap(), 2, &targets, cfg) else {
            continue;
        };
        let text = serde_json::to_string(&cert.to_json()).unwrap();
        let ok = serde_json::from_str::<CertificateJson>(&text)
            .ok()
            .and_then(|back| verify_certificate(&back, true, 1).ok())
            .is_some_and(|v| v.ok);
        t.check(ok, || format!("B_{n} {}", targets.describe()));
    }
    t
}

pub fn run(seed: u64, cases: usize, cfg: &SearchConfig) -> CmdResult {
    if cases == 0 {
        return Err(Fail::new(1, "at least one case is needed"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tallies = [
        fast_v(&mut rng, cases),
        search_vs_enumeration(&mut rng, cases, cfg),
        embeddings(&mut rng, cases),
        certificates(&mut rng, cases, cfg),
    ];
    let mut lines = Vec::new();
    for t in &tallies {
        let verdict = if t.failures.is_empty() { "PASS" } else { "FAIL" };
        lines.push(format!("{verdict} {} ({} cases)", t.name, t.cases));
        lines.extend(t.failures.iter().map(|f| format!("  counterexample: {f}")));
    }
    let ok = tallies.iter().all(|t| t.failures.is_empty());
    let doc = json!({
        "seed": seed,
        "checks": tallies.iter().map(|t| json!({
            "name": t.name, "cases": t.cases, "failures": t.failures,
        })).collect::<Vec<_>>(),
        "ok": ok,
    });
    Ok(Report::new(lines, doc, ok))
}
