//! Exact maximum-weight clique by branch and bound.
//!
//! Bitset adjacency, greedy colouring bounds (each colour class contributes
//! its heaviest vertex), degeneracy initial order. The root's subproblems run
//! in parallel against a shared, monotonically increasing incumbent weight.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rayon::prelude::*;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Self::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn and(&self, other: &Bitset) -> Bitset {
        Bitset {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn and_not_assign(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

/// Undirected loop-free graph with positive vertex weights.
#[derive(Clone)]
pub struct WeightedGraph {
    rows: Vec<Bitset>,
    weights: Vec<u64>,
}

impl WeightedGraph {
    pub fn new(weights: Vec<u64>) -> Self {
        let n = weights.len();
        Self {
            rows: vec![Bitset::new(n); n],
            weights,
        }
    }

    pub fn unweighted(n: usize) -> Self {
        Self::new(vec![1; n])
    }

    /// Adjacency from a symmetric predicate, rows filled in parallel.
    pub fn from_predicate<F>(weights: Vec<u64>, adjacent: F) -> Self
    where
        F: Fn(usize, usize) -> bool + Sync,
    {
        let n = weights.len();
        let rows = (0..n)
            .into_par_iter()
            .map(|u| {
                let mut row = Bitset::new(n);
                for v in 0..n {
                    if u != v && adjacent(u, v) {
                        row.insert(v);
                    }
                }
                row
            })
            .collect();
        Self { rows, weights }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "loops are not allowed");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn neighbours(&self, u: usize) -> &Bitset {
        &self.rows[u]
    }

    pub fn weight(&self, u: usize) -> u64 {
        self.weights[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.rows[u].count()
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    pub fn clique_weight(&self, vs: &[usize]) -> u64 {
        vs.iter().map(|&v| self.weights[v]).sum()
    }

    /// Smallest-last order: repeatedly strip a minimum-degree vertex, then
    /// reverse, so the densest core comes first.
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut deg: Vec<usize> = (0..n).map(|u| self.degree(u)).collect();
        let mut alive = vec![true; n];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let u = (0..n)
                .filter(|&u| alive[u])
                .min_by_key(|&u| (deg[u], u))
                .expect("a vertex remains");
            alive[u] = false;
            order.push(u);
            for v in self.rows[u].iter() {
                if alive[v] {
                    deg[v] -= 1;
                }
            }
        }
        order.reverse();
        order
    }

    fn permuted(&self, order: &[usize]) -> WeightedGraph {
        let n = self.len();
        let mut pos = vec![0; n];
        for (i, &u) in order.iter().enumerate() {
            pos[u] = i;
        }
        let rows = order
            .iter()
            .map(|&u| {
                let mut row = Bitset::new(n);
                for v in self.rows[u].iter() {
                    row.insert(pos[v]);
                }
                row
            })
            .collect();
        WeightedGraph {
            rows,
            weights: order.iter().map(|&u| self.weights[u]).collect(),
        }
    }
}

/// Work caps for one search. `None` means unbounded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        max_time: None,
    };
}

#[derive(Debug, Clone, Default)]
pub struct SolverConfig {
    pub budget: Budget,
    /// Run the root subproblems concurrently.
    pub parallel: bool,
    /// A known upper bound: reaching it ends the search as optimal.
    pub stop_at: Option<u64>,
}

impl SolverConfig {
    /// Sequential search with a fixed order, so the witness is reproducible.
    pub fn canonical() -> Self {
        Self {
            parallel: false,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueSolution {
    /// Vertex indices of the best clique found, sorted.
    pub vertices: Vec<usize>,
    pub weight: u64,
    /// The search finished (or reached `stop_at`), so `weight` is the optimum.
    pub optimal: bool,
    pub budget_exceeded: bool,
    pub nodes: u64,
}

struct Shared<'a> {
    g: &'a WeightedGraph,
    best: AtomicU64,
    best_clique: Mutex<Vec<usize>>,
    nodes: AtomicU64,
    stop: AtomicBool,
    exhausted: AtomicBool,
    budget: Budget,
    stop_at: Option<u64>,
    start: Instant,
    // enumeration mode: collect every clique of exactly this weight
    target: Option<u64>,
    found: Mutex<Vec<Vec<usize>>>,
}

impl Shared<'_> {
    fn tick(&self) -> bool {
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        let over_nodes = self.budget.max_nodes.is_some_and(|m| k > m);
        let over_time = k % 256 == 0
            && self
                .budget
                .max_time
                .is_some_and(|t| self.start.elapsed() > t);
        if over_nodes || over_time {
            self.exhausted.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    fn record(&self, clique: &[usize], w: u64) {
        if let Some(target) = self.target {
            if w == target {
                self.found.lock().unwrap().push(clique.to_vec());
            }
            return;
        }
        if w <= self.best.load(Ordering::Relaxed) {
            return;
        }
        let mut guard = self.best_clique.lock().unwrap();
        if w > self.best.load(Ordering::Relaxed) {
            *guard = clique.to_vec();
            self.best.store(w, Ordering::Relaxed);
            if self.stop_at.is_some_and(|s| w >= s) {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
    }

    fn prune(&self, bound: u64) -> bool {
        match self.target {
            Some(t) => bound < t,
            None => bound <= self.best.load(Ordering::Relaxed),
        }
    }

    /// Greedy colouring of `p` in index order. Returns the vertices grouped by
    /// colour and, per vertex, the sum of the heaviest weight of every colour
    /// class up to its own.
    fn colour_sort(&self, p: &Bitset) -> (Vec<usize>, Vec<u64>) {
        let mut uncoloured = p.clone();
        let mut order = Vec::new();
        let mut bounds = Vec::new();
        let mut acc = 0u64;
        while !uncoloured.is_empty() {
            let mut q = uncoloured.clone();
            let start = order.len();
            let mut heaviest = 0;
            while let Some(v) = q.first() {
                q.remove(v);
                q.and_not_assign(&self.g.rows[v]);
                uncoloured.remove(v);
                order.push(v);
                heaviest = heaviest.max(self.g.weights[v]);
            }
            acc += heaviest;
            bounds.extend(std::iter::repeat(acc).take(order.len() - start));
        }
        (order, bounds)
    }

    fn expand(&self, clique: &mut Vec<usize>, cw: u64, mut p: Bitset) {
        if !self.tick() {
            return;
        }
        let (order, bounds) = self.colour_sort(&p);
        for idx in (0..order.len()).rev() {
            if self.stop.load(Ordering::Relaxed) || self.prune(cw + bounds[idx]) {
                return;
            }
            let v = order[idx];
            let w = cw + self.g.weights[v];
            clique.push(v);
            let np = p.and(&self.g.rows[v]);
            if np.is_empty() {
                self.record(clique, w);
            } else {
                self.record(clique, w);
                self.expand(clique, w, np);
            }
            clique.pop();
            p.remove(v);
        }
    }

    fn run_root(&self, parallel: bool) {
        let n = self.g.len();
        let all = Bitset::full(n);
        if !self.tick() {
            return;
        }
        let (order, bounds) = self.colour_sort(&all);
        let task = |idx: usize| {
            if self.stop.load(Ordering::Relaxed) || self.prune(bounds[idx]) {
                return;
            }
            let v = order[idx];
            // candidates: neighbours of v that precede it in colour order
            let mut p = Bitset::new(n);
            for &u in &order[..idx] {
                if self.g.rows[v].contains(u) {
                    p.insert(u);
                }
            }
            let mut clique = vec![v];
            self.record(&clique, self.g.weights[v]);
            if !p.is_empty() {
                self.expand(&mut clique, self.g.weights[v], p);
            }
        };
        if parallel {
            (0..order.len()).into_par_iter().rev().for_each(task);
        } else {
            (0..order.len()).rev().for_each(task);
        }
    }
}

fn make_shared<'a>(
    g: &'a WeightedGraph,
    cfg: &SolverConfig,
    incumbent: Vec<usize>,
    target: Option<u64>,
) -> Shared<'a> {
    let w = g.clique_weight(&incumbent);
    Shared {
        g,
        best: AtomicU64::new(w),
        best_clique: Mutex::new(incumbent),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(cfg.stop_at.is_some_and(|s| target.is_none() && w >= s)),
        exhausted: AtomicBool::new(false),
        budget: cfg.budget,
        stop_at: cfg.stop_at,
        start: Instant::now(),
        target,
        found: Mutex::new(Vec::new()),
    }
}

/// Maximum-weight clique. `incumbent` must be a clique and seeds the lower
/// bound; it is returned unchanged if nothing heavier exists.
pub fn max_weight_clique(
    g: &WeightedGraph,
    incumbent: &[usize],
    cfg: &SolverConfig,
) -> CliqueSolution {
    assert!(g.is_clique(incumbent), "incumbent is not a clique");
    let order = g.degeneracy_order();
    let h = g.permuted(&order);
    let mut pos = vec![0; g.len()];
    for (i, &u) in order.iter().enumerate() {
        pos[u] = i;
    }
    let seed: Vec<usize> = incumbent.iter().map(|&u| pos[u]).collect();
    let shared = make_shared(&h, cfg, seed, None);
    if !h.is_empty() {
        shared.run_root(cfg.parallel);
    }
    let exhausted = shared.exhausted.load(Ordering::Relaxed);
    let weight = shared.best.load(Ordering::Relaxed);
    let mut vertices: Vec<usize> = shared
        .best_clique
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|i| order[i])
        .collect();
    vertices.sort_unstable();
    let reached_stop = cfg.stop_at.is_some_and(|s| weight >= s);
    CliqueSolution {
        vertices,
        weight,
        optimal: !exhausted || reached_stop,
        budget_exceeded: exhausted && !reached_stop,
        nodes: shared.nodes.load(Ordering::Relaxed),
    }
}

/// Every clique of weight exactly `target`, with `target` the known maximum.
/// The flag is false if the budget ran out before the enumeration finished.
pub fn cliques_of_weight(
    g: &WeightedGraph,
    target: u64,
    cfg: &SolverConfig,
) -> (Vec<Vec<usize>>, bool, u64) {
    let order = g.degeneracy_order();
    let h = g.permuted(&order);
    let shared = make_shared(&h, cfg, Vec::new(), Some(target));
    if !h.is_empty() {
        shared.run_root(cfg.parallel);
    }
    let complete = !shared.exhausted.load(Ordering::Relaxed);
    let nodes = shared.nodes.load(Ordering::Relaxed);
    let mut found: Vec<Vec<usize>> = shared
        .found
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|i| order[i]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    found.sort();
    found.dedup();
    (found, complete, nodes)
}

/// Maximum-cardinality clique among those satisfying `accept`, by
/// Bron–Kerbosch with pivoting over maximal cliques. `accept` must be
/// preserved under adding vertices, so checking maximal cliques suffices.
pub fn max_clique_where<F>(g: &WeightedGraph, accept: F, budget: Budget) -> CliqueSolution
where
    F: Fn(&[usize]) -> bool,
{
    struct Bk<'a, F> {
        g: &'a WeightedGraph,
        accept: F,
        best: Vec<usize>,
        nodes: u64,
        exhausted: bool,
        budget: Budget,
        start: Instant,
    }
    impl<F: Fn(&[usize]) -> bool> Bk<'_, F> {
        fn go(&mut self, r: &mut Vec<usize>, mut p: Bitset, mut x: Bitset) {
            self.nodes += 1;
            if self.budget.max_nodes.is_some_and(|m| self.nodes > m)
                || (self.nodes % 256 == 0
                    && self
                        .budget
                        .max_time
                        .is_some_and(|t| self.start.elapsed() > t))
            {
                self.exhausted = true;
            }
            if self.exhausted {
                return;
            }
            if p.is_empty() {
                if x.is_empty() && r.len() > self.best.len() && (self.accept)(r) {
                    self.best = r.clone();
                }
                return;
            }
            if r.len() + p.count() <= self.best.len() {
                return;
            }
            let pivot = p
                .iter()
                .chain(x.iter())
                .max_by_key(|&u| p.and(&self.g.rows[u]).count())
                .expect("p is non-empty");
            let mut cand = p.clone();
            cand.and_not_assign(&self.g.rows[pivot]);
            for v in cand.iter().collect::<Vec<_>>() {
                r.push(v);
                self.go(r, p.and(&self.g.rows[v]), x.and(&self.g.rows[v]));
                r.pop();
                p.remove(v);
                x.insert(v);
            }
        }
    }
    let n = g.len();
    let mut bk = Bk {
        g,
        accept,
        best: Vec::new(),
        nodes: 0,
        exhausted: false,
        budget,
        start: Instant::now(),
    };
    bk.go(&mut Vec::new(), Bitset::full(n), Bitset::new(n));
    let mut vertices = bk.best;
    vertices.sort_unstable();
    CliqueSolution {
        weight: g.clique_weight(&vertices),
        vertices,
        optimal: !bk.exhausted,
        budget_exceeded: bk.exhausted,
        nodes: bk.nodes,
    }
}
