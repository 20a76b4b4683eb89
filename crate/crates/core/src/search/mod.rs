//! Exact maximum t-intersecting families and the set-system oracles used to
//! cross-check them.

pub mod clique;
pub mod verify;

use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::genfun::q_factorial;
use crate::levels::{enumerate_level, symmetric_group, EXHAUSTIVE_MAX_N};
use crate::perm::{pair_count, GeneratorSet, Permutation, MAX_N};
use crate::systems::{k_subsets, SetSystem};

pub use clique::{Budget, CliqueSolution, SolverConfig, WeightedGraph};

/// Largest level handed to the clique solver.
pub const LEVEL_VERTEX_LIMIT: usize = 5000;
/// Whole-lattice clique search for `t >= 2` is limited to `Sym(6)`.
pub const FULL_SEARCH_MAX_N: usize = 6;
/// Pairwise witness re-validation above this size switches to the
/// common-lower-bound check.
const PAIRWISE_VALIDATION_LIMIT: usize = 3000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: Budget,
    /// Parallel root branching. Turn off for a reproducible witness.
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            budget: Budget::UNLIMITED,
            parallel: true,
        }
    }
}

impl SearchConfig {
    pub fn canonical() -> Self {
        Self {
            parallel: false,
            ..Self::default()
        }
    }

    fn solver(&self, stop_at: Option<u64>) -> SolverConfig {
        SolverConfig {
            budget: self.budget,
            parallel: self.parallel,
            stop_at,
        }
    }
}

/// `rank(u ∧ v) >= t` on a vertex list, as a bit matrix.
pub struct IntersectionGraph {
    t: usize,
    vertices: Vec<Permutation>,
    graph: WeightedGraph,
    id_checks: u64,
}

impl IntersectionGraph {
    /// Builds the adjacency from meets. For `t = 1` every pair is also
    /// checked against inverse-descent intersection and a disagreement panics.
    pub fn build(vertices: Vec<Permutation>, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(invalid("t must be at least 1"));
        }
        if let Some(first) = vertices.first() {
            if let Some(bad) = vertices.iter().find(|p| p.n() != first.n()) {
                return Err(Error::SizeMismatch {
                    left: bad.n(),
                    right: first.n(),
                });
            }
        }
        if let Some(low) = vertices.iter().find(|p| p.rank() < t) {
            return Err(invalid(format!("{low} has rank below t = {t}")));
        }
        let graph = WeightedGraph::from_predicate(vec![1; vertices.len()], |u, v| {
            let (p, q) = (&vertices[u], &vertices[v]);
            let by_meet = p.meet_unchecked(q).rank() >= t;
            if t == 1 {
                let by_id = p.idesc_bits() & q.idesc_bits() != 0;
                assert_eq!(by_meet, by_id, "adjacency disagreement at {p}, {q}");
            }
            by_meet
        });
        let n = vertices.len() as u64;
        let id_checks = if t == 1 { n * n.saturating_sub(1) } else { 0 };
        Ok(Self {
            t,
            vertices,
            graph,
            id_checks,
        })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn vertices(&self) -> &[Permutation] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.graph.has_edge(u, v)
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    /// Ordered pairs compared against the inverse-descent rule during build.
    pub fn id_checks(&self) -> u64 {
        self.id_checks
    }

    pub fn is_symmetric_and_loop_free(&self) -> bool {
        (0..self.len()).all(|u| {
            !self.has_edge(u, u)
                && (0..self.len()).all(|v| self.has_edge(u, v) == self.has_edge(v, u))
        })
    }

    pub fn quotient(&self) -> TwinQuotient {
        TwinQuotient::of(&self.graph)
    }

    /// Maximum clique through the twin quotient; returns sorted vertex
    /// indices and the solver statistics.
    pub fn max_clique(
        &self,
        incumbent: &[usize],
        cfg: &SolverConfig,
    ) -> (Vec<usize>, CliqueSolution) {
        let q = self.quotient();
        let seed = q.classes_touching(incumbent);
        let sol = clique::max_weight_clique(&q.graph, &seed, cfg);
        (q.expand(&sol.vertices), sol)
    }
}

/// Vertices with equal closed neighbourhoods merged into one weighted vertex.
///
/// A maximum clique never splits such a class, so optima and the list of all
/// maximum cliques carry over exactly.
pub struct TwinQuotient {
    pub graph: WeightedGraph,
    pub classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl TwinQuotient {
    pub fn of(g: &WeightedGraph) -> Self {
        let mut groups: HashMap<clique::Bitset, Vec<usize>> = HashMap::new();
        for u in 0..g.len() {
            let mut closed = g.neighbours(u).clone();
            closed.insert(u);
            groups.entry(closed).or_default().push(u);
        }
        let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
        classes.sort();
        let mut class_of = vec![0; g.len()];
        for (c, members) in classes.iter().enumerate() {
            for &u in members {
                class_of[u] = c;
            }
        }
        let weights = classes
            .iter()
            .map(|c| c.iter().map(|&u| g.weight(u)).sum())
            .collect();
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        let graph = WeightedGraph::from_predicate(weights, |a, b| g.has_edge(reps[a], reps[b]));
        Self {
            graph,
            classes,
            class_of,
        }
    }

    pub fn classes_touching(&self, vertices: &[usize]) -> Vec<usize> {
        let mut c: Vec<usize> = vertices.iter().map(|&u| self.class_of[u]).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    pub fn expand(&self, classes: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = classes
            .iter()
            .flat_map(|&c| self.classes[c].iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

/// A witness family: permutations or a set system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Permutations(Vec<Permutation>),
    Sets(SetSystem),
}

impl Witness {
    pub fn len(&self) -> usize {
        match self {
            Witness::Permutations(v) => v.len(),
            Witness::Sets(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn permutations(&self) -> Option<&[Permutation]> {
        match self {
            Witness::Permutations(v) => Some(v),
            Witness::Sets(_) => None,
        }
    }

    pub fn sets(&self) -> Option<&SetSystem> {
        match self {
            Witness::Sets(s) => Some(s),
            Witness::Permutations(_) => None,
        }
    }
}

/// How a result was obtained, echoed into the JSON so regression values
/// carry their configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchSettings {
    pub method: String,
    pub parallel: bool,
    pub budget_nodes: Option<u64>,
    pub budget_secs: Option<f64>,
    /// Best lower bound supplied to the solver (a star, when one applies).
    pub seed_size: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub problem: String,
    pub params: BTreeMap<String, u64>,
    pub optimum: u64,
    pub witness: Witness,
    pub is_star: bool,
    /// False when a budget ran out; `optimum` is then only a lower bound.
    pub optimal: bool,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub config: SearchSettings,
}

impl SearchOutcome {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("outcome serializes")
    }

    pub fn elapsed(&self) -> Duration {
        Duration::from_millis(self.elapsed_ms)
    }

    /// Aligned key/value rendering.
    pub fn to_text(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        let witness = match &self.witness {
            Witness::Permutations(v) => v
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            Witness::Sets(s) => s.to_string(),
        };
        let rows = [
            ("problem", self.problem.clone()),
            ("params", params),
            ("optimum", self.optimum.to_string()),
            ("optimal", self.optimal.to_string()),
            ("is_star", self.is_star.to_string()),
            ("nodes", self.nodes.to_string()),
            ("elapsed_ms", self.elapsed_ms.to_string()),
            ("method", self.config.method.clone()),
            ("witness", witness),
        ];
        rows.iter().map(|(k, v)| format!("{k:<11} {v}\n")).collect()
    }
}

fn settings(method: &str, cfg: &SearchConfig, seed_size: u64) -> SearchSettings {
    SearchSettings {
        method: method.to_string(),
        parallel: cfg.parallel,
        budget_nodes: cfg.budget.max_nodes,
        budget_secs: cfg.budget.max_time.map(|d| d.as_secs_f64()),
        seed_size,
    }
}

fn params(pairs: &[(&str, usize)]) -> BTreeMap<String, u64> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), *v as u64))
        .collect()
}

fn ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Pairwise `rank(p ∧ q) >= t` (self-pairs included), or for large
/// families the sufficient check that all members lie above one rank-`t`
/// element.
pub fn is_valid_t_family(members: &[Permutation], t: usize) -> bool {
    if members.len() <= PAIRWISE_VALIDATION_LIMIT {
        return members.par_iter().enumerate().all(|(i, p)| {
            p.rank() >= t
                && members[i + 1..]
                    .iter()
                    .all(|q| p.meet_unchecked(q).rank() >= t)
        });
    }
    let Some(first) = members.first() else {
        return true;
    };
    let floor = members.iter().fold(*first, |acc, p| acc.meet_unchecked(p));
    floor.rank() >= t
}

/// The rank-`t` element `p` with `members = scope ∩ up(p)`, if any.
pub fn star_center(
    members: &[Permutation],
    scope: &[Permutation],
    t: usize,
) -> Option<Permutation> {
    let first = members.first()?;
    let n = first.n();
    let floor = members.iter().fold(*first, |acc, p| acc.meet_unchecked(p));
    if floor.rank() < t {
        return None;
    }
    let candidates = enumerate_level(n, t).ok()?.items;
    candidates
        .into_iter()
        .filter(|p| p.is_below(&floor))
        .find(|p| scope.par_iter().filter(|q| p.is_below(q)).count() == members.len())
}

/// The largest `scope ∩ up(p)` over rank-`t` elements `p` (first in
/// lexicographic order on ties), as indices into `scope`.
pub fn best_star(scope: &[Permutation], n: usize, t: usize) -> Result<(Permutation, Vec<usize>)> {
    let centres = enumerate_level(n, t)?.items;
    let best = centres
        .par_iter()
        .map(|p| {
            let idx: Vec<usize> = scope
                .iter()
                .enumerate()
                .filter(|(_, q)| p.is_below(q))
                .map(|(i, _)| i)
                .collect();
            (*p, idx)
        })
        .reduce_with(|a, b| {
            if b.1.len() > a.1.len() || (b.1.len() == a.1.len() && b.0 < a.0) {
                b
            } else {
                a
            }
        })
        .ok_or_else(|| invalid("no rank-t elements"))?;
    Ok(best)
}

fn check_nt(n: usize, t: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::SizeOutOfRange { n, max: MAX_N });
    }
    if t == 0 {
        return Err(invalid("t must be at least 1"));
    }
    if t > pair_count(n) {
        return Err(Error::RankOutOfRange {
            rank: t,
            max: pair_count(n),
        });
    }
    Ok(())
}

/// Clique search over `scope` with the best star as the starting incumbent;
/// reports the star itself as witness whenever it is maximum.
fn solve_family(
    problem: &str,
    pars: BTreeMap<String, u64>,
    scope: Vec<Permutation>,
    n: usize,
    t: usize,
    cfg: &SearchConfig,
    start: Instant,
) -> Result<SearchOutcome> {
    let (_, star_idx) = best_star(&scope, n, t)?;
    let graph = IntersectionGraph::build(scope, t)?;
    let (found, sol) = graph.max_clique(&star_idx, &cfg.solver(None));
    let chosen = if found.len() == star_idx.len() {
        star_idx.clone()
    } else {
        found
    };
    let members: Vec<Permutation> = chosen.iter().map(|&i| graph.vertices()[i]).collect();
    assert!(
        is_valid_t_family(&members, t),
        "search returned a family that is not {t}-intersecting"
    );
    let is_star = star_center(&members, graph.vertices(), t).is_some();
    Ok(SearchOutcome {
        problem: problem.to_string(),
        params: pars,
        optimum: members.len() as u64,
        witness: Witness::Permutations(members),
        is_star,
        optimal: sol.optimal,
        nodes: sol.nodes,
        elapsed_ms: ms(start),
        config: settings("twin-quotient branch and bound", cfg, star_idx.len() as u64),
    })
}

/// Largest `t`-intersecting family inside the level `B_r(n)`.
pub fn max_intersecting_level(
    n: usize,
    r: usize,
    t: usize,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    let start = Instant::now();
    check_nt(n, t)?;
    if r < t || r > pair_count(n) {
        return Err(invalid(format!(
            "need t <= r <= C(n,2) (n={n}, r={r}, t={t})"
        )));
    }
    let size = q_factorial(n).coeff_u64(r).unwrap_or(u64::MAX);
    if size > LEVEL_VERTEX_LIMIT as u64 {
        return Err(Error::TooLarge {
            what: "level search vertex count",
            n: size as usize,
            max: LEVEL_VERTEX_LIMIT,
        });
    }
    let level = enumerate_level(n, r)?.items;
    solve_family(
        "max_intersecting_level",
        params(&[("n", n), ("r", r), ("t", t)]),
        level,
        n,
        t,
        cfg,
        start,
    )
}

/// Largest `t`-intersecting family in the whole lattice.
///
/// For `t = 1` (`n <= 8`) the value comes from the complement pairing: every
/// `p` and its reversal meet in the identity, so at most one of each pair is
/// present, and the star above `g_1` attains `n!/2`. For `t >= 2` (`n <= 6`)
/// the clique search is exact.
pub fn max_intersecting_full(n: usize, t: usize, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let start = Instant::now();
    check_nt(n, t)?;
    if t >= 2 {
        return max_intersecting_full_search(n, t, cfg);
    }
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge {
            what: "whole-lattice pairing bound",
            n,
            max: EXHAUSTIVE_MAX_N,
        });
    }
    let all = symmetric_group(n)?;
    let pairing_ok = all
        .par_iter()
        .all(|p| p.meet_unchecked(&p.reverse_complement()).rank() == 0);
    let half = (all.len() / 2) as u64;
    let g1 = Permutation::generator(n, 1)?;
    let star: Vec<Permutation> = all.iter().filter(|p| g1.is_below(p)).copied().collect();
    assert!(is_valid_t_family(&star, 1), "star is not intersecting");
    let is_star = star_center(&star, &all, 1).is_some();
    Ok(SearchOutcome {
        problem: "max_intersecting_full".into(),
        params: params(&[("n", n), ("t", t)]),
        optimum: star.len() as u64,
        optimal: pairing_ok && star.len() as u64 == half,
        witness: Witness::Permutations(star),
        is_star,
        nodes: 0,
        elapsed_ms: ms(start),
        config: settings("complement pairing bound + star", cfg, half),
    })
}

/// Whole-lattice clique search for any `t >= 1`, `n <= 6`.
pub fn max_intersecting_full_search(
    n: usize,
    t: usize,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    let start = Instant::now();
    check_nt(n, t)?;
    if n > FULL_SEARCH_MAX_N {
        return Err(Error::TooLarge {
            what: "whole-lattice clique search",
            n,
            max: FULL_SEARCH_MAX_N,
        });
    }
    let scope: Vec<Permutation> = symmetric_group(n)?
        .into_iter()
        .filter(|p| p.rank() >= t)
        .collect();
    solve_family(
        "max_intersecting_full",
        params(&[("n", n), ("t", t)]),
        scope,
        n,
        t,
        cfg,
        start,
    )
}

/// Every maximum intersecting family of the whole lattice (`t = 1`,
/// `n <= 5`), as sorted member lists.
pub fn all_maximum_intersecting_families(
    n: usize,
    cfg: &SearchConfig,
) -> Result<(Vec<Vec<Permutation>>, bool)> {
    check_nt(n, 1)?;
    if n > 5 {
        return Err(Error::TooLarge {
            what: "maximum-family enumeration",
            n,
            max: 5,
        });
    }
    let scope: Vec<Permutation> = symmetric_group(n)?
        .into_iter()
        .filter(|p| p.rank() >= 1)
        .collect();
    let graph = IntersectionGraph::build(scope, 1)?;
    let q = graph.quotient();
    let best = clique::max_weight_clique(&q.graph, &[], &cfg.solver(None));
    let (all, complete, _) = clique::cliques_of_weight(&q.graph, best.weight, &cfg.solver(None));
    let families = all
        .iter()
        .map(|c| {
            q.expand(c)
                .into_iter()
                .map(|i| graph.vertices()[i])
                .collect()
        })
        .collect();
    Ok((families, complete && best.optimal))
}

#[allow(clippy::too_many_arguments)]
fn set_outcome(
    problem: &str,
    pars: BTreeMap<String, u64>,
    system: SetSystem,
    is_star: bool,
    sol: &CliqueSolution,
    method: &str,
    cfg: &SearchConfig,
    seed: u64,
    start: Instant,
) -> SearchOutcome {
    SearchOutcome {
        problem: problem.to_string(),
        params: pars,
        optimum: system.len() as u64,
        witness: Witness::Sets(system),
        is_star,
        optimal: sol.optimal,
        nodes: sol.nodes,
        elapsed_ms: ms(start),
        config: settings(method, cfg, seed),
    }
}

/// The system is every candidate containing one fixed point.
fn is_fixed_point_star(system: &SetSystem, candidates: &[u32]) -> bool {
    let Some(common) = system.common_intersection() else {
        return false;
    };
    let points: Vec<usize> = common.indices().collect();
    points.into_iter().any(|x| {
        let bit = 1u32 << (x - 1);
        candidates.iter().filter(|&&c| c & bit != 0).count() == system.len()
    })
}

/// Largest intersecting system of separated `r`-subsets of `{1..m}`.
pub fn max_separated_intersecting(m: usize, r: usize, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let start = Instant::now();
    if m == 0 || m > 16 || r == 0 || 2 * r > m {
        return Err(invalid(format!(
            "need 1 <= r <= m/2, m <= 16 (m={m}, r={r})"
        )));
    }
    let candidates: Vec<u32> = k_subsets(m, r)
        .into_iter()
        .filter(|s| s & (s >> 1) == 0)
        .collect();
    let g = WeightedGraph::from_predicate(vec![1; candidates.len()], |u, v| {
        candidates[u] & candidates[v] != 0
    });
    let seed: Vec<usize> = (0..candidates.len())
        .filter(|&i| candidates[i] & 1 != 0)
        .collect();
    let sol = clique::max_weight_clique(&g, &seed, &cfg.solver(None));
    let system = SetSystem::new(
        m,
        sol.vertices
            .iter()
            .map(|&i| GeneratorSet::from_bits(m, candidates[i]).expect("within ground")),
    )?;
    assert!(
        system.is_intersecting()
            && system
                .sets()
                .iter()
                .all(|s| s.is_separated() && s.len() == r),
        "invalid separated witness"
    );
    let is_star = is_fixed_point_star(&system, &candidates);
    Ok(set_outcome(
        "max_separated_intersecting",
        params(&[("m", m), ("r", r)]),
        system,
        is_star,
        &sol,
        "branch and bound",
        cfg,
        seed.len() as u64,
        start,
    ))
}

/// Largest intersecting system of `k`-subsets of `{1..m}` whose members
/// share no common element. Zero for `k = 1`.
pub fn max_intersecting_no_common_element(
    m: usize,
    k: usize,
    cfg: &SearchConfig,
) -> Result<SearchOutcome> {
    let start = Instant::now();
    if m == 0 || m > 8 || k == 0 || k > 3 || k > m {
        return Err(invalid(format!(
            "need 1 <= k <= 3, k <= m <= 8 (m={m}, k={k})"
        )));
    }
    let candidates = if k == 1 { Vec::new() } else { k_subsets(m, k) };
    let g = WeightedGraph::from_predicate(vec![1; candidates.len()], |u, v| {
        candidates[u] & candidates[v] != 0
    });
    let sol = clique::max_clique_where(
        &g,
        |c| c.iter().fold(u32::MAX, |acc, &i| acc & candidates[i]) == 0,
        cfg.budget,
    );
    let system = SetSystem::new(
        m,
        sol.vertices
            .iter()
            .map(|&i| GeneratorSet::from_bits(m, candidates[i]).expect("within ground")),
    )?;
    assert!(
        system.is_intersecting() || system.is_empty(),
        "invalid no-common-element witness"
    );
    assert!(system.common_intersection().map_or(true, |c| c.is_empty()));
    Ok(set_outcome(
        "max_intersecting_no_common_element",
        params(&[("m", m), ("k", k)]),
        system,
        false,
        &sol,
        "maximal-clique enumeration",
        cfg,
        0,
        start,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn rank_three_levels() {
        for (n, want) in [(4, 3), (5, 6), (6, 10)] {
            let o = max_intersecting_level(n, 3, 1, &cfg()).unwrap();
            assert_eq!(o.optimum, want, "n={n}");
            assert!(o.optimal && o.is_star);
        }
    }

    #[test]
    fn whole_lattice_t1() {
        for (n, want) in [(3, 3), (4, 12), (5, 60)] {
            let o = max_intersecting_full(n, 1, &cfg()).unwrap();
            assert_eq!(o.optimum, want);
            assert!(o.optimal && o.is_star);
            let s = max_intersecting_full_search(n, 1, &cfg()).unwrap();
            assert_eq!(s.optimum, want);
            assert!(s.optimal);
        }
    }

    #[test]
    fn whole_lattice_t2_n4() {
        let a = max_intersecting_full(4, 2, &cfg()).unwrap();
        let b = max_intersecting_full(4, 2, &SearchConfig::canonical()).unwrap();
        assert!(a.optimal && b.optimal);
        assert_eq!(a.optimum, b.optimum);
    }

    #[test]
    fn separated_values() {
        for (m, want) in [(5, 3), (6, 4), (7, 5)] {
            let o = max_separated_intersecting(m, 2, &cfg()).unwrap();
            assert_eq!(o.optimum, want);
            assert!(o.is_star);
        }
        assert_eq!(max_separated_intersecting(9, 1, &cfg()).unwrap().optimum, 1);
        assert!(max_separated_intersecting(5, 3, &cfg()).is_err());
    }

    #[test]
    fn no_common_element_values() {
        assert_eq!(
            max_intersecting_no_common_element(5, 2, &cfg())
                .unwrap()
                .optimum,
            3
        );
        assert_eq!(
            max_intersecting_no_common_element(4, 2, &cfg())
                .unwrap()
                .optimum,
            3
        );
        assert_eq!(
            max_intersecting_no_common_element(6, 1, &cfg())
                .unwrap()
                .optimum,
            0
        );
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let tiny = SearchConfig {
            budget: Budget {
                max_nodes: Some(1),
                max_time: None,
            },
            parallel: false,
        };
        let o = max_intersecting_full(5, 2, &tiny).unwrap();
        assert!(!o.optimal);
        assert!(is_valid_t_family(o.witness.permutations().unwrap(), 2));
    }

    #[test]
    fn quotient_preserves_optimum() {
        let level = enumerate_level(5, 4).unwrap().items;
        let g = IntersectionGraph::build(level, 1).unwrap();
        assert!(g.is_symmetric_and_loop_free());
        let direct = clique::max_weight_clique(g.graph(), &[], &SolverConfig::default());
        let (via_quotient, _) = g.max_clique(&[], &SolverConfig::default());
        assert_eq!(direct.weight as usize, via_quotient.len());
    }

    #[test]
    fn outcome_json_shape() {
        let o = max_intersecting_level(4, 3, 1, &cfg()).unwrap();
        let j = o.to_json();
        for key in [
            "problem",
            "params",
            "optimum",
            "witness",
            "is_star",
            "optimal",
            "nodes",
            "elapsed_ms",
        ] {
            assert!(j.get(key).is_some(), "{key}");
        }
        assert_eq!(j["witness"].as_array().unwrap().len(), 3);
        assert!(o.to_text().contains("optimum"));
    }
}
