//! Depth-first coloring search over the present elements of a domain in
//! level order, with incremental pattern checks, orbit pruning at the first
//! levels, and a fixed frontier split for parallel subtrees.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::bits::{ones, Tables};
use crate::embed::{EmbedQuery, Mode};
use crate::lattice::{level_order, Domain, GroundPermutation};
use crate::poset::{Poset, PosetLabel};

/// Decides whether the newest element `e` completes a forbidden copy. `e` is
/// always maximal among the elements assigned so far.
#[derive(Clone, Debug)]
pub(crate) enum Check {
    V { m: usize, n: usize },
    Pinned { pattern: Poset, mode: Mode, tops: Vec<usize> },
}

impl Check {
    pub fn new(pattern: &Poset, mode: Mode) -> Check {
        match (pattern.label(), mode) {
            (PosetLabel::V(m, n), Mode::Strong) => Check::V { m: *m, n: *n },
            _ => Check::Pinned {
                pattern: pattern.clone(),
                mode,
                tops: pattern.maximal_elements(),
            },
        }
    }

    fn completes(&self, t: &Tables, class: u64, e: usize) -> bool {
        match self {
            Check::V { m, n } => crate::vshape::has_v_through(t, class, *m, *n, e),
            Check::Pinned { pattern, mode, tops } => {
                if (class.count_ones() as usize) < pattern.size() {
                    return false;
                }
                let host: Vec<u32> = ones(class).map(|m| m as u32).collect();
                tops.iter().any(|&a| {
                    EmbedQuery {
                        pattern,
                        mode: *mode,
                        host: &host,
                        pin: Some((a, e as u32)),
                        rainbow: None,
                    }
                    .run()
                    .is_some()
                })
            }
        }
    }
}

/// Forbidden rainbow antichain.
#[derive(Clone, Debug)]
pub(crate) enum RainbowCheck {
    /// Two incomparable elements of different colors.
    Pair,
    Antichain(Poset),
}

impl RainbowCheck {
    pub fn new(k: usize) -> RainbowCheck {
        if k == 2 {
            RainbowCheck::Pair
        } else {
            RainbowCheck::Antichain(Poset::antichain(k).expect("k >= 1"))
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Rule {
    /// Color `i` must avoid `checks[i - 1]`.
    Fixed { k: u8, checks: Vec<Check> },
    /// Any number of colors, canonical as restricted-growth strings.
    Partition { mono: Check, rainbow: RainbowCheck },
}

#[derive(Clone)]
pub(crate) struct State {
    pub colors: [u8; 64],
    classes: [u64; 66],
    assigned: u64,
    max_color: u8,
}

impl State {
    fn new() -> State {
        State {
            colors: [0; 64],
            classes: [0; 66],
            assigned: 0,
            max_color: 0,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Flow {
    Continue,
    Found,
    Stop,
}

struct Shared {
    budget: Option<u64>,
    used: AtomicU64,
    budget_hit: AtomicBool,
    /// Least subtree index known to hold a witness.
    best: AtomicUsize,
}

struct Run<'s> {
    shared: &'s Shared,
    index: usize,
    nodes: u64,
    pending: u64,
    flush_every: u64,
    stopped_by_budget: bool,
}

impl Run<'_> {
    #[inline]
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.pending += 1;
        if self.pending < self.flush_every {
            return true;
        }
        self.flush()
    }

    fn flush(&mut self) -> bool {
        let total = self.shared.used.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        if let Some(b) = self.shared.budget {
            if total > b {
                self.shared.budget_hit.store(true, Ordering::Relaxed);
            }
        }
        if self.shared.budget_hit.load(Ordering::Relaxed) {
            self.stopped_by_budget = true;
            return false;
        }
        self.shared.best.load(Ordering::Relaxed) > self.index
    }
}

pub(crate) struct EngineResult {
    pub found: Option<[u8; 64]>,
    pub budget_hit: bool,
    pub nodes: u64,
}

pub(crate) type LeafFilter<'a> = &'a (dyn Fn(&[u8]) -> bool + Sync);

pub(crate) struct Engine<'a> {
    t: Tables,
    order: Vec<u32>,
    rule: Rule,
    color_symmetry: bool,
    /// Prefix lengths after which the orbit test runs.
    boundaries: Vec<usize>,
    /// Per non-identity group element: position of `g⁻¹(order[i])`.
    group_maps: Vec<Vec<usize>>,
    split_at: usize,
    leaf_filter: Option<LeafFilter<'a>>,
}

pub(crate) struct EngineSetup<'a> {
    pub domain: &'a Domain,
    pub rule: Rule,
    pub color_symmetry: bool,
    pub symmetry_depth: usize,
    pub split_levels: usize,
    pub leaf_filter: Option<LeafFilter<'a>>,
}

impl<'a> Engine<'a> {
    /// Returns the engine and the order of the group used for pruning.
    pub fn new(s: EngineSetup<'a>) -> (Engine<'a>, usize) {
        let n = s.domain.n();
        let t = Tables::new(n);
        let order: Vec<u32> = level_order(n)
            .into_iter()
            .filter(|&m| s.domain.contains_mask(m))
            .collect();
        let level_end = |size: usize| order.iter().filter(|m| m.count_ones() as usize <= size).count();
        let depth = s.symmetry_depth.min(n + 1);
        let mut boundaries: Vec<usize> = (0..depth).map(level_end).filter(|&e| e > 0).collect();
        boundaries.dedup();
        let (group_maps, group_order) = if boundaries.is_empty() {
            (Vec::new(), 1)
        } else {
            let prefix = *boundaries.last().unwrap();
            let pos = |m: u32| order.iter().position(|&x| x == m).expect("stabilizer keeps domain");
            let group = GroundPermutation::stabilizer(s.domain);
            let order_len = group.len();
            let maps = group
                .iter()
                .filter(|g| **g != GroundPermutation::identity(n))
                .map(|g| {
                    let inv = g.inverse();
                    order[..prefix].iter().map(|&x| pos(inv.apply_mask(x))).collect()
                })
                .collect();
            (maps, order_len)
        };
        let split_at = if s.split_levels == 0 {
            0
        } else {
            level_end(s.split_levels - 1)
        };
        let engine = Engine {
            t,
            order,
            rule: s.rule,
            color_symmetry: s.color_symmetry,
            boundaries,
            group_maps,
            split_at,
            leaf_filter: s.leaf_filter,
        };
        (engine, group_order)
    }

    pub fn run(&self, workers: usize, budget: Option<u64>) -> EngineResult {
        let shared = Shared {
            budget,
            used: AtomicU64::new(0),
            budget_hit: AtomicBool::new(false),
            best: AtomicUsize::new(usize::MAX),
        };
        let flush_every = match budget {
            Some(b) if b < 1 << 16 => 1,
            _ => 1024,
        };
        let new_run = |index| Run {
            shared: &shared,
            index,
            nodes: 0,
            pending: 0,
            flush_every,
            stopped_by_budget: false,
        };

        let mut frontier = Vec::new();
        let mut head = new_run(0);
        let mut st = State::new();
        let flow = self.dfs(&mut st, 0, self.split_at, &mut head, &mut |s: &State| {
            frontier.push(s.clone());
            Flow::Continue
        });
        head.flush();
        if flow == Flow::Stop {
            return EngineResult {
                found: None,
                budget_hit: true,
                nodes: head.nodes,
            };
        }

        let subtree = |(i, st): (usize, &State)| {
            let mut run = new_run(i);
            let mut st = st.clone();
            let mut found = None;
            let flow = self.dfs(&mut st, self.split_at, self.order.len(), &mut run, &mut |s: &State| {
                if self.leaf_filter.is_none_or(|f| f(&s.colors)) {
                    found = Some(s.colors);
                    Flow::Found
                } else {
                    Flow::Continue
                }
            });
            if flow == Flow::Found {
                shared.best.fetch_min(i, Ordering::Relaxed);
            }
            run.flush();
            (found, run.nodes, run.stopped_by_budget)
        };

        let results: Vec<(Option<[u8; 64]>, u64, bool)> = if workers <= 1 {
            let mut out = Vec::new();
            for item in frontier.iter().enumerate() {
                let r = subtree(item);
                let done = r.0.is_some() || r.2;
                out.push(r);
                if done {
                    break;
                }
            }
            out
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .expect("thread pool");
            pool.install(|| frontier.par_iter().enumerate().map(subtree).collect())
        };

        let first = results.iter().position(|r| r.0.is_some());
        let considered = first.map_or(results.len(), |j| j + 1);
        let nodes = head.nodes + results[..considered].iter().map(|r| r.1).sum::<u64>();
        let budget_hit = results[..considered].iter().any(|r| r.2);
        EngineResult {
            found: first.and_then(|j| results[j].0),
            budget_hit: budget_hit && first.is_none(),
            nodes,
        }
    }

    fn dfs(
        &self,
        st: &mut State,
        pos: usize,
        stop: usize,
        run: &mut Run,
        leaf: &mut dyn FnMut(&State) -> Flow,
    ) -> Flow {
        if pos == stop {
            return leaf(st);
        }
        let e = self.order[pos] as usize;
        let bit = 1u64 << e;
        let cap = match &self.rule {
            Rule::Fixed { k, .. } if self.color_symmetry => (*k).min(st.max_color + 1),
            Rule::Fixed { k, .. } => *k,
            Rule::Partition { .. } => st.max_color + 1,
        };
        for color in 1..=cap {
            if !run.tick() {
                return Flow::Stop;
            }
            let c = color as usize;
            if self.violates(st, e, c) {
                continue;
            }
            let saved_max = st.max_color;
            st.colors[e] = color;
            st.classes[c] |= bit;
            st.assigned |= bit;
            st.max_color = st.max_color.max(color);
            let ok = !self.boundaries.contains(&(pos + 1)) || self.canonical(&st.colors, pos + 1);
            let flow = if ok {
                self.dfs(st, pos + 1, stop, run, leaf)
            } else {
                Flow::Continue
            };
            st.colors[e] = 0;
            st.classes[c] &= !bit;
            st.assigned &= !bit;
            st.max_color = saved_max;
            if flow != Flow::Continue {
                return flow;
            }
        }
        Flow::Continue
    }

    /// Whether giving `e` color `c` creates a forbidden copy through `e`.
    fn violates(&self, st: &State, e: usize, c: usize) -> bool {
        let class = st.classes[c] | 1 << e;
        match &self.rule {
            Rule::Fixed { checks, .. } => checks[c - 1].completes(&self.t, class, e),
            Rule::Partition { mono, rainbow } => {
                if mono.completes(&self.t, class, e) {
                    return true;
                }
                match rainbow {
                    RainbowCheck::Pair => st.assigned & self.t.incomparable(e) & !st.classes[c] != 0,
                    RainbowCheck::Antichain(q) => {
                        let mut colors = st.colors;
                        colors[e] = c as u8;
                        let host: Vec<u32> = ones(st.assigned | 1 << e).map(|m| m as u32).collect();
                        EmbedQuery {
                            pattern: q,
                            mode: Mode::Strong,
                            host: &host,
                            pin: Some((0, e as u32)),
                            rainbow: Some(&colors),
                        }
                        .run()
                        .is_some()
                    }
                }
            }
        }
    }

    /// The prefix of length `len` is least among its images under the
    /// group, after first-occurrence renaming when colors are symmetric.
    fn canonical(&self, colors: &[u8; 64], len: usize) -> bool {
        'group: for map in &self.group_maps {
            let mut rename = [0u8; 66];
            let mut next = 1u8;
            for i in 0..len {
                let mut s = colors[self.order[map[i]] as usize];
                if self.color_symmetry {
                    if rename[s as usize] == 0 {
                        rename[s as usize] = next;
                        next += 1;
                    }
                    s = rename[s as usize];
                }
                let c = colors[self.order[i] as usize];
                if s < c {
                    return false;
                }
                if s > c {
                    continue 'group;
                }
            }
        }
        true
    }
}
