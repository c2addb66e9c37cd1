use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vramsey::checker::{is_good_rainbow, TargetList};
use vramsey::search::{
    brute_force_good_coloring, find_good_coloring, find_good_partition_coloring, Outcome, SearchCertificate,
};
use vramsey::{Coloring, Domain, ElementSet, Mode, Poset, SearchConfig};

fn strong(s: &str) -> TargetList {
    TargetList::parse(s, Mode::Strong).unwrap()
}

fn found(c: &SearchCertificate) -> bool {
    match &c.outcome {
        Outcome::Witness(w) => {
            assert!(c.verify_witness(), "engine witness rejected by checker: {w:?}");
            true
        }
        Outcome::Exhausted => false,
        Outcome::Inconclusive => panic!("no budget was set"),
    }
}

fn cross_check(d: &Domain, t: &TargetList) {
    let k = t.len();
    let oracle = brute_force_good_coloring(d, k, t).unwrap().is_some();
    let reduced = find_good_coloring(d, k, t, &SearchConfig::default()).unwrap();
    let plain = find_good_coloring(d, k, t, &SearchConfig::plain()).unwrap();
    assert_eq!(found(&reduced), oracle, "{d} {}", t.describe());
    assert_eq!(found(&plain), oracle, "{d} {} (plain)", t.describe());
}

fn domain_from_bits(n: usize, absent: u64) -> Domain {
    let removed: Vec<ElementSet> = (0..1u32 << n)
        .filter(|&m| absent >> m & 1 == 1)
        .map(|m| ElementSet::new(m, n).unwrap())
        .collect();
    Domain::without(n, &removed).unwrap()
}

#[test]
fn reduced_search_matches_enumeration_on_every_subdomain_of_b3() {
    let pats = ["V(1,1)", "V(1,2)", "C(2)", "A(2)"];
    let mut lists = Vec::new();
    for (i, a) in pats.iter().enumerate() {
        for b in &pats[i..] {
            lists.push(strong(&format!("{a},{b}")));
            if a != b {
                lists.push(strong(&format!("{b},{a}")));
            }
        }
    }
    lists.push(TargetList::parse("V(1,1),V(1,1)", Mode::Weak).unwrap());
    for n in 0..=3 {
        for absent in 0..1u64 << (1 << n) {
            let d = domain_from_bits(n, absent);
            for t in &lists {
                cross_check(&d, t);
            }
        }
    }
    cross_check(&Domain::full(3).unwrap(), &strong("V(1,1),V(1,1),V(1,1)"));
}

#[test]
fn reduced_search_matches_enumeration_on_b4_with_two_colors() {
    let b4 = Domain::full(4).unwrap();
    for s in ["V(1,1),V(1,1)", "V(1,1),V(2,2)", "V(1,2),V(1,2)", "V(2,2),V(2,2)", "B(2),B(2)", "C(3),V(1,2)"] {
        cross_check(&b4, &strong(s));
    }
    cross_check(&b4, &TargetList::parse("V(1,2),V(1,2)", Mode::Weak).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..12 {
        let absent: u64 = (0..3).map(|_| 1u64 << rng.gen_range(0..16)).fold(0, |a, b| a | b);
        let d = domain_from_bits(4, absent);
        cross_check(&d, &strong("V(1,1),V(2,2)"));
        cross_check(&d, &strong("V(1,2),V(1,2)"));
    }
}

/// All set partitions of the domain, as restricted-growth strings.
fn every_partition(d: &Domain, mut visit: impl FnMut(&Coloring) -> bool) -> bool {
    let elems = d.element_masks();
    fn rec(
        d: &Domain,
        elems: &[u32],
        i: usize,
        max: u8,
        table: &mut Vec<u8>,
        visit: &mut dyn FnMut(&Coloring) -> bool,
    ) -> bool {
        if i == elems.len() {
            return visit(&Coloring::from_table(d.clone(), table.clone(), None).unwrap());
        }
        for c in 1..=max + 1 {
            table[elems[i] as usize] = c;
            if rec(d, elems, i + 1, max.max(c), table, visit) {
                return true;
            }
        }
        table[elems[i] as usize] = 0;
        false
    }
    let mut table = vec![0u8; 1 << d.n()];
    rec(d, &elems, 0, 0, &mut table, &mut visit)
}

#[test]
fn partition_search_matches_enumeration_up_to_b3() {
    let ps = ["V(1,1)", "V(1,2)", "C(2)", "C(3)", "B(2)"];
    let qs = [Poset::antichain(2).unwrap(), Poset::antichain(3).unwrap()];
    for n in 0..=3 {
        for absent in [0u64, 1, 1 << ((1 << n) - 1), 0b0110] {
            if absent >> (1 << n) != 0 {
                continue;
            }
            let d = domain_from_bits(n, absent);
            for p in ps {
                let p: Poset = p.parse().unwrap();
                for q in &qs {
                    let oracle = every_partition(&d, |c| is_good_rainbow(c, &p, q));
                    for cfg in [SearchConfig::default(), SearchConfig::plain()] {
                        let cert = find_good_partition_coloring(&d, &p, q, &cfg).unwrap();
                        assert_eq!(found(&cert), oracle, "{d} {p} {q}");
                    }
                }
            }
        }
    }
}

#[test]
fn partition_exhaustion_persists_one_level_up() {
    let a2 = Poset::antichain(2).unwrap();
    for p in ["V(1,1)", "V(1,2)", "C(3)", "B(2)"] {
        let p: Poset = p.parse().unwrap();
        let mut exhausted_before = false;
        for n in 0..=5 {
            let cert = find_good_partition_coloring(&Domain::full(n).unwrap(), &p, &a2, &SearchConfig::default()).unwrap();
            let exhausted = !found(&cert);
            assert!(!exhausted_before || exhausted, "{p} at n = {n}");
            exhausted_before = exhausted;
        }
        assert!(exhausted_before);
    }
}

fn without_metadata(c: &SearchCertificate) -> serde_json::Value {
    let mut v = serde_json::to_value(c.to_json()).unwrap();
    v.as_object_mut().unwrap().remove("metadata");
    v
}

#[test]
fn output_is_identical_across_worker_counts() {
    let cases: Vec<(Domain, TargetList)> = vec![
        (Domain::full(3).unwrap(), strong("V(1,1),V(1,1),V(1,1)")),
        (Domain::full(4).unwrap(), strong("V(1,1),V(1,1),V(1,1)")),
        (Domain::full(4).unwrap(), strong("V(1,2),V(1,2)")),
        (Domain::full(5).unwrap(), strong("V(1,2),V(1,2)")),
        (Domain::full(5).unwrap(), strong("V(2,2),V(2,2)")),
        (Domain::full(4).unwrap(), strong("V(1,1),V(2,2)")),
        (Domain::full(3).unwrap(), strong("V(1,1),V(2,2)")),
    ];
    for (d, t) in &cases {
        for split in [0, 1, 2, 3] {
            let cfg = SearchConfig {
                split_levels: split,
                ..SearchConfig::default()
            };
            let one = find_good_coloring(d, t.len(), t, &cfg.clone().with_workers(1)).unwrap();
            let four = find_good_coloring(d, t.len(), t, &cfg.with_workers(4)).unwrap();
            assert_eq!(without_metadata(&one), without_metadata(&four), "{d} {}", t.describe());
        }
    }
    let a2 = Poset::antichain(2).unwrap();
    for (n, p) in [(3, "V(1,2)"), (4, "V(1,2)"), (3, "B(2)"), (4, "C(3)")] {
        let p: Poset = p.parse().unwrap();
        let d = Domain::full(n).unwrap();
        let one = find_good_partition_coloring(&d, &p, &a2, &SearchConfig::default().with_workers(1)).unwrap();
        let four = find_good_partition_coloring(&d, &p, &a2, &SearchConfig::default().with_workers(4)).unwrap();
        assert_eq!(without_metadata(&one), without_metadata(&four));
    }
}

#[test]
fn certificates_round_trip_and_reverify() {
    let t = strong("V(1,2),V(1,2)");
    for n in [4, 5] {
        let cert = find_good_coloring(&Domain::full(n).unwrap(), 2, &t, &SearchConfig::default()).unwrap();
        let text = serde_json::to_string(&cert.to_json()).unwrap();
        let back: vramsey::search::CertificateJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert.to_json());
        let v = vramsey::search::verify_certificate(&back, n == 4, 1).unwrap();
        assert!(v.ok, "{}", v.detail);
    }
}
