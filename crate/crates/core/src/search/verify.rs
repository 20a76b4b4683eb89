//! Verification drivers: each suite recomputes a stated value or bound at
//! desk scale and reports pass/fail (or consistent/inconsistent for the
//! open conjectures) with claimed and computed values side by side.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::{
    all_maximum_intersecting_families, clique, max_intersecting_full, max_intersecting_full_search,
    max_intersecting_level, max_intersecting_no_common_element, max_separated_intersecting,
    SearchConfig, SearchOutcome, WeightedGraph,
};
use crate::error::{invalid, Error, Result};
use crate::genfun::{
    binomial, frankl_bound, hm_bound, multiplicity_bound, q_factorial, q_multinomial,
    rank_r_threshold, rho, rho_upset_genfun, star_genfun,
};
use crate::levels::{enumerate_level, symmetric_group, upset_level, upset_size_full};
use crate::perm::{pair_count, GeneratorSet, Permutation};
use crate::systems::{
    family_p, k_subsets, maximal_intersecting_antichains, pi_minimal, PermFamily, SetSystem,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    WholeLatticeHalf,
    WholeLatticeEkr,
    MaximumFamilyCharacterization,
    RankThreeLevelEkr,
    MultiplicityBound,
    SeparatedMinimalRank,
    MeetDescentIdentity,
    MinimalElement,
    SeparatedSetEkr,
    NoCommonElementBound,
    LevelEkrConjecture,
    TIntersectingConjecture,
    WholeLatticeCandidates,
    LevelThreshold,
    PinnedPetals,
}

const TAGS: [(Suite, &str); 15] = [
    (Suite::WholeLatticeHalf, "thm-4.1"),
    (Suite::WholeLatticeEkr, "cor-4.2"),
    (Suite::MaximumFamilyCharacterization, "thm-4.10"),
    (Suite::RankThreeLevelEkr, "thm-5.4"),
    (Suite::MultiplicityBound, "lem-3.2"),
    (Suite::SeparatedMinimalRank, "prop-3.3"),
    (Suite::MeetDescentIdentity, "cor-3.5"),
    (Suite::MinimalElement, "lem-3.6"),
    (Suite::SeparatedSetEkr, "thm-5.3"),
    (Suite::NoCommonElementBound, "thm-5.6"),
    (Suite::LevelEkrConjecture, "cnj-5.10"),
    (Suite::TIntersectingConjecture, "cnj-6.2"),
    (Suite::WholeLatticeCandidates, "q-6.3"),
    (Suite::LevelThreshold, "thm-5.9-threshold"),
    (Suite::PinnedPetals, "lem-5.8"),
];

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::WholeLatticeHalf,
        Suite::WholeLatticeEkr,
        Suite::MaximumFamilyCharacterization,
        Suite::RankThreeLevelEkr,
        Suite::MultiplicityBound,
        Suite::SeparatedMinimalRank,
        Suite::MeetDescentIdentity,
        Suite::MinimalElement,
        Suite::SeparatedSetEkr,
        Suite::NoCommonElementBound,
        Suite::LevelEkrConjecture,
        Suite::TIntersectingConjecture,
        Suite::WholeLatticeCandidates,
        Suite::LevelThreshold,
        Suite::PinnedPetals,
    ];

    pub fn tag(self) -> &'static str {
        TAGS.iter()
            .find(|(s, _)| *s == self)
            .map(|(_, t)| *t)
            .expect("every suite has a tag")
    }

    pub fn is_conjecture(self) -> bool {
        matches!(
            self,
            Suite::LevelEkrConjecture | Suite::TIntersectingConjecture
        )
    }

    pub fn title(self) -> &'static str {
        match self {
            Suite::WholeLatticeHalf => {
                "largest intersecting family of the whole lattice has n!/2 members"
            }
            Suite::WholeLatticeEkr => "the whole lattice has the 1-EKR property",
            Suite::MaximumFamilyCharacterization => {
                "maximum families are exactly P(A) for maximal intersecting antichains A"
            }
            Suite::RankThreeLevelEkr => "level 3 is EKR: maximum is C(n-1,2), attained by a star",
            Suite::MultiplicityBound => {
                "multiplicities are below the exponential and q-multinomial bounds"
            }
            Suite::SeparatedMinimalRank => {
                "rank-l permutations with l inverse descents have separated descent sets"
            }
            Suite::MeetDescentIdentity => "ID(p meet q) = ID(p) intersect ID(q)",
            Suite::MinimalElement => "pi(A) is the unique minimum with inverse descents A",
            Suite::SeparatedSetEkr => {
                "largest intersecting system of separated r-sets is C(m-r,r-1), a star"
            }
            Suite::NoCommonElementBound => {
                "intersecting k-systems with empty intersection obey the Hilton-Milner bound"
            }
            Suite::LevelEkrConjecture => "levels up to the middle are EKR",
            Suite::TIntersectingConjecture => {
                "largest t-intersecting family in level r is the level slice of up(rho(t))"
            }
            Suite::WholeLatticeCandidates => {
                "candidate sizes for the largest t-intersecting family of the lattice"
            }
            Suite::LevelThreshold => "n above which level r is EKR by the counting argument",
            Suite::PinnedPetals => {
                "large intersecting l-systems contain r+1 sets meeting only in a fixed point"
            }
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TAGS.iter()
            .find(|(_, t)| t.eq_ignore_ascii_case(s.trim()))
            .map(|(suite, _)| *suite)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Optional overrides; each suite fills in its own defaults.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyParams {
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub t: Option<usize>,
    pub m: Option<usize>,
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Consistent,
    Inconsistent,
    BudgetExceeded,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass | Verdict::Consistent => 0,
            Verdict::Fail | Verdict::Inconsistent => 1,
            Verdict::BudgetExceeded => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
            Verdict::BudgetExceeded => "budget-exceeded",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub claimed: Value,
    pub computed: Value,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub title: String,
    pub conjecture: bool,
    pub params: BTreeMap<String, u64>,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub witness: Option<Value>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    pub fn passed(&self) -> bool {
        self.exit_code() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let params = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        let mut out = format!(
            "{} [{}] {}\n{}\n",
            self.suite,
            params,
            self.verdict.as_str(),
            self.title
        );
        let w = self.checks.iter().map(|c| c.label.len()).max().unwrap_or(0);
        for c in &self.checks {
            out.push_str(&format!(
                "  {} {:<w$}  claimed {}  computed {}\n",
                if c.ok { "ok  " } else { "FAIL" },
                c.label,
                c.claimed,
                c.computed,
            ));
        }
        for note in &self.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
        out.push_str(&format!("  elapsed {} ms\n", self.elapsed_ms));
        out
    }
}

struct Builder {
    suite: Suite,
    params: BTreeMap<String, u64>,
    checks: Vec<Check>,
    notes: Vec<String>,
    witness: Option<Value>,
    budget_hit: bool,
    start: Instant,
}

impl Builder {
    fn new(suite: Suite) -> Self {
        Self {
            suite,
            params: BTreeMap::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            witness: None,
            budget_hit: false,
            start: Instant::now(),
        }
    }

    fn param(&mut self, k: &str, v: usize) {
        self.params.insert(k.to_string(), v as u64);
    }

    fn check(
        &mut self,
        label: impl Into<String>,
        claimed: impl Serialize,
        computed: impl Serialize,
        ok: bool,
    ) {
        self.checks.push(Check {
            label: label.into(),
            claimed: serde_json::to_value(claimed).expect("serializable"),
            computed: serde_json::to_value(computed).expect("serializable"),
            ok,
        });
    }

    fn eq<T: Serialize + PartialEq>(&mut self, label: impl Into<String>, claimed: T, computed: T) {
        let ok = claimed == computed;
        self.check(label, claimed, computed, ok);
    }

    fn search(&mut self, o: &SearchOutcome) {
        if !o.optimal {
            self.budget_hit = true;
        }
    }

    fn finish(self) -> Report {
        let all_ok = self.checks.iter().all(|c| c.ok);
        let verdict = match (self.budget_hit, self.suite.is_conjecture(), all_ok) {
            (true, _, _) => Verdict::BudgetExceeded,
            (false, true, true) => Verdict::Consistent,
            (false, true, false) => Verdict::Inconsistent,
            (false, false, true) => Verdict::Pass,
            (false, false, false) => Verdict::Fail,
        };
        Report {
            suite: self.suite.tag().to_string(),
            title: self.suite.title().to_string(),
            conjecture: self.suite.is_conjecture(),
            params: self.params,
            verdict,
            checks: self.checks,
            notes: self.notes,
            witness: self.witness,
            elapsed_ms: self.start.elapsed().as_millis() as u64,
        }
    }
}

fn within(what: &'static str, v: usize, lo: usize, hi: usize) -> Result<usize> {
    if v < lo || v > hi {
        return Err(invalid(format!(
            "{what} = {v} outside the supported range {lo}..={hi}"
        )));
    }
    Ok(v)
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn verify(suite: Suite, p: &VerifyParams, cfg: &SearchConfig) -> Result<Report> {
    let mut b = Builder::new(suite);
    match suite {
        Suite::WholeLatticeHalf => whole_lattice_half(&mut b, p, cfg)?,
        Suite::WholeLatticeEkr => whole_lattice_ekr(&mut b, p, cfg)?,
        Suite::MaximumFamilyCharacterization => maximum_families(&mut b, p, cfg)?,
        Suite::RankThreeLevelEkr => rank_three(&mut b, p, cfg)?,
        Suite::MultiplicityBound => multiplicity_bounds(&mut b, p)?,
        Suite::SeparatedMinimalRank => separated_minimal_rank(&mut b, p)?,
        Suite::MeetDescentIdentity => meet_descents(&mut b, p)?,
        Suite::MinimalElement => minimal_element(&mut b, p)?,
        Suite::SeparatedSetEkr => separated_ekr(&mut b, p, cfg)?,
        Suite::NoCommonElementBound => no_common_element(&mut b, p, cfg)?,
        Suite::LevelEkrConjecture => level_ekr_conjecture(&mut b, p, cfg)?,
        Suite::TIntersectingConjecture => t_intersecting_conjecture(&mut b, p, cfg)?,
        Suite::WholeLatticeCandidates => whole_lattice_candidates(&mut b, p)?,
        Suite::LevelThreshold => level_threshold(&mut b, p)?,
        Suite::PinnedPetals => pinned_intersection(&mut b, p, cfg)?,
    }
    Ok(b.finish())
}

pub fn verify_tag(tag: &str, p: &VerifyParams, cfg: &SearchConfig) -> Result<Report> {
    verify(tag.parse()?, p, cfg)
}

fn whole_lattice_half(b: &mut Builder, p: &VerifyParams, cfg: &SearchConfig) -> Result<()> {
    let n = within("n", p.n.unwrap_or(5), 2, 8)?;
    b.param("n", n);
    let half = factorial(n) / 2;
    let o = max_intersecting_full(n, 1, cfg)?;
    b.search(&o);
    b.eq("pairing bound and star size", half, o.optimum);
    b.eq("witness is a star", true, o.is_star);
    if n <= 6 {
        let s = max_intersecting_full_search(n, 1, cfg)?;
        b.search(&s);
        b.eq("exact clique search optimum", half, s.optimum);
    }
    b.witness = Some(json!({ "center": Permutation::generator(n, 1)?, "size": o.optimum }));
    Ok(())
}

fn whole_lattice_ekr(b: &mut Builder, p: &VerifyParams, cfg: &SearchConfig) -> Result<()> {
    let n = within("n", p.n.unwrap_or(5), 2, 8)?;
    b.param("n", n);
    let o = max_intersecting_full(n, 1, cfg)?;
    b.search(&o);
    let stars: Vec<u64> = (1..n)
        .map(|i| upset_size_full(&Permutation::generator(n, i)?))
        .collect::<Result<_>>()?;
    let largest = stars.iter().copied().max().unwrap_or(0);
    b.eq("largest family equals largest star", o.optimum, largest);
    b.check(
        "star sizes per generator",
        factorial(n) / 2,
        &stars,
        stars.iter().all(|&s| s == factorial(n) / 2),
    );
    Ok(())
}

fn maximum_families(b: &mut Builder, p: &VerifyParams, cfg: &SearchConfig) -> Result<()> {
    let n = within("n", p.n.unwrap_or(4), 2, 6)?;
    b.param("n", n);
    let half = factorial(n) as usize / 2;
    let antichains = maximal_intersecting_antichains(n - 1)?;
    let sizes: Vec<usize> = antichains
        .iter()
        .map(|a| family_p(a, n).map(|f| f.len()))
        .collect::<Result<_>>()?;
    b.check(
        format!(
            "|P(A)| for all {} maximal intersecting antichains",
            antichains.len()
        ),
        half,
        sizes.iter().copied().max().unwrap_or(0),
        sizes.iter().all(|&s| s == half),
    );
    if n <= 5 {
        let (families, complete) = all_maximum_intersecting_families(n, cfg)?;
        if !complete {
            b.budget_hit = true;
        }
        b.eq(
            "number of maximum families",
            antichains.len(),
            families.len(),
        );
        let mut regenerated = 0;
        let mut systems = Vec::new();
        for members in &families {
            let fam = PermFamily::new(n, members.iter().copied())?;
            let gen = fam.generating_system();
            if family_p(&gen, n)? == fam {
                regenerated += 1;
            }
            systems.push(gen);
        }
        b.eq(
            "families equal to P(generating system)",
            families.len(),
            regenerated,
        );
        systems.sort_by_key(|s| s.to_text());
        let mut expected = antichains.clone();
        expected.sort_by_key(|s| s.to_text());
        b.eq(
            "generating systems are the maximal antichains",
            true,
            systems == expected,
        );
    }
    Ok(())
}

fn rank_three(b: &mut Builder, p: &VerifyParams, cfg: &SearchConfig) -> Result<()> {
    let n = within("n", p.n.unwrap_or(6), 3, 10)?;
    b.param("n", n);
    let o = max_intersecting_level(n, 3, 1, cfg)?;
    b.search(&o);
    let star = binomial(n as u64 - 1, 2);
    b.eq("optimum", star.to_string(), o.optimum.to_string());
    b.eq("attained by a star", true, o.is_star);
    let bad: Vec<u64> = (7u64..=100)
        .filter(|&m| binomial(m - 4, 2) + 12u32 > binomial(m - 1, 2))
        .collect();
    b.check(
        "12 + C(n-4,2) <= C(n-1,2) for 7 <= n <= 100",
        "all",
        &bad,
        bad.is_empty(),
    );
    b.witness = Some(o.to_json()["witness"].clone());
    Ok(())
}

/// `(ID bits, rank) -> count` over `Sym(n)`.
fn multiplicity_table(n: usize) -> Result<HashMap<(u32, usize), u64>> {
    let mut table = HashMap::new();
    for q in symmetric_group(n)? {
        *table.entry((q.idesc_bits(), q.rank())).or_insert(0) += 1;
    }
    Ok(table)
}

fn block_sizes(a: &GeneratorSet, n: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut prev = 0;
    for i in a.indices() {
        parts.push(i - prev);
        prev = i;
    }
    parts.push(n - prev);
    parts
}

fn multiplicity_bounds(b: &mut Builder, p: &VerifyParams) -> Result<()> {
    let n = within("n", p.n.unwrap_or(6), 2, 7)?;
    b.param("n", n);
    let table = multiplicity_table(n)?;
    let mut checked = 0u64;
    let mut exp_bad = Vec::new();
    let mut qm_bad = Vec::new();
    for bits in 0u32..1 << (n - 1) {
        let a = GeneratorSet::from_bits(n - 1, bits)?;
        let qm = q_multinomial(&block_sizes(&a, n))?;
        for ell in 0..=pair_count(n) {
            let m = table.get(&(bits, ell)).copied().unwrap_or(0);
            checked += 1;
            if a.is_empty() {
                if m != u64::from(ell == 0) {
                    exp_bad.push(format!("{a}@{ell}"));
                }
            } else if m as f64 > multiplicity_bound(a.len(), ell)? {
                exp_bad.push(format!("{a}@{ell}"));
            }
            if BigUint::from(m) > qm.coeff(ell).to_biguint().unwrap_or_default() {
                qm_bad.push(format!("{a}@{ell}"));
            }
        }
    }
    b.check(
        "exponential bound, violations",
        0,
        &exp_bad,
        exp_bad.is_empty(),
    );
    b.check(
        "q-multinomial bound, violations",
        0,
        &qm_bad,
        qm_bad.is_empty(),
    );
    b.notes
        .push(format!("{checked} (set, level) pairs checked"));
    Ok(())
}

fn separated_minimal_rank(b: &mut Builder, p: &VerifyParams) -> Result<()> {
    let n = within("n", p.n.unwrap_or(6), 1, 8)?;
    b.param("n", n);
    let all = symmetric_group(n)?;
    let non_separated: Vec<String> = all
        .iter()
        .filter(|q| q.inverse_descents().len() == q.rank() && !q.inverse_descents().is_separated())
        .map(|q| q.to_string())
        .collect();
    b.check(
        "rank = |ID| implies separated, violations",
        0,
        &non_separated,
        non_separated.is_empty(),
    );
    let mut counts: HashMap<u32, u64> = HashMap::new();
    for q in &all {
        if q.inverse_descents().len() == q.rank() {
            *counts.entry(q.idesc_bits()).or_insert(0) += 1;
        }
    }
    let bad: Vec<String> = (0u32..1 << (n.saturating_sub(1)))
        .map(|bits| GeneratorSet::from_bits(n - 1, bits).expect("within ground"))
        .filter(|a| a.is_separated())
        .filter(|a| counts.get(&a.bits()).copied().unwrap_or(0) != 1)
        .map(|a| a.to_string())
        .collect();
    b.check(
        "separated A has multiplicity 1 at level |A|, violations",
        0,
        &bad,
        bad.is_empty(),
    );
    Ok(())
}

fn meet_descents(b: &mut Builder, p: &VerifyParams) -> Result<()> {
    let n = within("n", p.n.unwrap_or(5), 1, 6)?;
    b.param("n", n);
    let all = symmetric_group(n)?;
    let (pairs, id_bad, claim_bad) = all
        .par_iter()
        .enumerate()
        .map(|(i, x)| {
            let mut pairs = 0u64;
            let mut id_bad = 0u64;
            let mut claim_bad = 0u64;
            for y in &all[i + 1..] {
                let m = x.meet_unchecked(y);
                pairs += 1;
                if m.idesc_bits() != x.idesc_bits() & y.idesc_bits() {
                    id_bad += 1;
                }
                if (m.rank() > 0) != (x.idesc_bits() & y.idesc_bits() != 0) {
                    claim_bad += 1;
                }
            }
            (pairs, id_bad, claim_bad)
        })
        .reduce(|| (0, 0, 0), |a, c| (a.0 + c.0, a.1 + c.1, a.2 + c.2));
    let n_fact = all.len() as u64;
    b.eq(
        "pairs checked",
        n_fact * n_fact.saturating_sub(1) / 2,
        pairs,
    );
    b.eq("ID identity violations", 0, id_bad);
    b.eq("meet non-trivial iff IDs meet, violations", 0, claim_bad);
    if n <= 5 {
        let oracle_bad = all
            .par_iter()
            .enumerate()
            .map(|(i, x)| {
                all[i..]
                    .iter()
                    .filter(|y| {
                        let best = all
                            .iter()
                            .filter(|z| z.is_below(x) && z.is_below(y))
                            .max_by_key(|z| z.rank())
                            .expect("identity is a lower bound");
                        *best != x.meet_unchecked(y)
                    })
                    .count() as u64
            })
            .sum::<u64>();
        b.eq(
            "meet equals brute-force greatest lower bound, violations",
            0,
            oracle_bad,
        );
    }
    Ok(())
}

fn minimal_element(b: &mut Builder, p: &VerifyParams) -> Result<()> {
    let n = within("n", p.n.unwrap_or(6), 1, 7)?;
    b.param("n", n);
    let all = symmetric_group(n)?;
    let minima: Vec<Permutation> = (0u32..1 << (n - 1))
        .map(|bits| pi_minimal(&GeneratorSet::from_bits(n - 1, bits)?))
        .collect::<Result<_>>()?;
    let id_bad = minima
        .iter()
        .enumerate()
        .filter(|(bits, q)| q.idesc_bits() != *bits as u32)
        .count();
    b.eq("ID(pi(A)) = A, violations", 0, id_bad);
    let order_bad = all
        .par_iter()
        .filter(|q| {
            let m = &minima[q.idesc_bits() as usize];
            !(m.is_below(q) && m.inversion_set().is_subset(&q.inversion_set()))
        })
        .count();
    b.eq("pi(ID(q)) below q for every q, violations", 0, order_bad);
    let join_bad = minima
        .iter()
        .enumerate()
        .filter(|(bits, m)| {
            let a = GeneratorSet::from_bits(n - 1, *bits as u32).expect("within ground");
            let join = a
                .indices()
                .map(|i| Permutation::generator(n, i).expect("valid generator"))
                .fold(Permutation::identity(n).expect("valid size"), |acc, g| {
                    acc.join(&g).expect("same size")
                });
            join != **m
        })
        .count();
    b.eq("pi(A) equals the join of A, violations", 0, join_bad);
    Ok(())
}

fn separated_ekr(b: &mut Builder, p: &VerifyParams, cfg: &SearchConfig) -> Result<()> {
    let m = within("m", p.m.unwrap_or(7), 2, 16)?;
    let r = within("r", p.r.unwrap_or(2), 1, m / 2)?;
    b.param("m", m);
    b.param("r", r);
    let o = max_separated_intersecting(m, r, cfg)?;
    b.search(&o);
    b.eq(
        "optimum",
        binomial((m - r) as u64, (r - 1) as u64).to_string(),
        o.optimum.to_string(),
    );
    b.eq("fixed-point star", true, o.is_star);
    b.witness = Some(o.to_json()["witness"].clone());
    Ok(())
}

fn no_common_element(b: &mut Builder, p: &VerifyParams, cfg: &SearchConfig) -> Result<()> {
    let m = within("m", p.m.unwrap_or(5), 2, 8)?;
    let k = within("k", p.k.unwrap_or(2), 1, 3.min(m / 2))?;
    b.param("m", m);
    b.param("k", k);
    let o = max_intersecting_no_common_element(m, k, cfg)?;
    b.search(&o);
    let bound = hm_bound(m, k)?;
    let ok = BigUint::from(o.optimum) <= bound;
    b.check(
        "optimum at most the bound",
        bound.to_string(),
        o.optimum,
        ok,
    );
    b.witness = Some(o.to_json()["witness"].clone());
    Ok(())
}

fn level_ekr_conjecture(b: &mut Builder, p: &VerifyParams, cfg: &SearchConfig) -> Result<()> {
    let n = within("n", p.n.unwrap_or(5), 2, 7)?;
    b.param("n", n);
    let half = pair_count(n) / 2;
    let rs: Vec<usize> = match p.r {
        Some(r) => vec![within("r", r, 1, pair_count(n))?],
        None => (1..=half).collect(),
    };
    if let Some(r) = p.r {
        b.param("r", r);
    }
    let f = star_genfun(n)?;
    for r in rs {
        let o = max_intersecting_level(n, r, 1, cfg)?;
        b.search(&o);
        let coeff = f.coeff(r - 1);
        b.eq(format!("r={r}"), coeff.to_string(), o.optimum.to_string());
    }
    Ok(())
}

fn t_intersecting_conjecture(b: &mut Builder, p: &VerifyParams, cfg: &SearchConfig) -> Result<()> {
    let n = within("n", p.n.unwrap_or(4), 2, 5)?;
    b.param("n", n);
    let top = pair_count(n);
    let pairs: Vec<(usize, usize)> = match (p.t, p.r) {
        (Some(t), Some(r)) => {
            b.param("t", t);
            b.param("r", r);
            vec![(within("t", t, 1, top)?, within("r", r, t, top)?)]
        }
        (Some(t), None) => {
            b.param("t", t);
            (within("t", t, 1, top)?..=top).map(|r| (t, r)).collect()
        }
        (None, Some(r)) => {
            b.param("r", r);
            (1..=within("r", r, 1, top)?).map(|t| (t, r)).collect()
        }
        (None, None) => (1..=top)
            .flat_map(|t| (t..=top).map(move |r| (t, r)))
            .collect(),
    };
    for (t, r) in pairs {
        let o = max_intersecting_level(n, r, t, cfg)?;
        b.search(&o);
        let f = rho_upset_genfun(n, t)?;
        let coeff = f.coeff(r - t);
        b.eq(
            format!("t={t} r={r}"),
            coeff.to_string(),
            o.optimum.to_string(),
        );
        // which rank-t elements have the largest level-r upset
        let centres = enumerate_level(n, t)?.items;
        let sizes: Vec<(Permutation, usize)> = centres
            .iter()
            .map(|c| upset_level(c, r).map(|u| (*c, u.count())))
            .collect::<Result<_>>()?;
        let best = sizes.iter().map(|(_, s)| *s).max().unwrap_or(0);
        let rho_t = rho(n, t)?;
        let rho_size = sizes
            .iter()
            .find(|(c, _)| *c == rho_t)
            .map(|(_, s)| *s)
            .unwrap_or(0);
        if rho_size < best {
            let arg: Vec<String> = sizes
                .iter()
                .filter(|(_, s)| *s == best)
                .map(|(c, _)| c.to_string())
                .collect();
            b.notes.push(format!(
                "t={t} r={r}: rho(t)={rho_t} reaches {rho_size}, largest upset slice {best} at {}",
                arg.join(",")
            ));
        }
    }
    Ok(())
}

fn whole_lattice_candidates(b: &mut Builder, p: &VerifyParams) -> Result<()> {
    let n = within("n", p.n.unwrap_or(5), 2, 8)?;
    let t = within("t", p.t.unwrap_or(1), 1, pair_count(n))?;
    b.param("n", n);
    b.param("t", t);
    let all = symmetric_group(n)?;
    let need = (n + t).div_ceil(2);
    let many_descents = all
        .iter()
        .filter(|q| q.inverse_descents().len() >= need)
        .count() as u64;
    let r = rho(n, t)?;
    let up = upset_size_full(&r)?;
    let genfun_total = rho_upset_genfun(n, t)?.sum_of_coeffs();
    b.eq(
        "|up(rho(t))| against its generating function",
        genfun_total.to_string(),
        up.to_string(),
    );
    let larger = if many_descents >= up {
        "many-descents"
    } else {
        "up(rho(t))"
    };
    b.notes.push(format!(
        "|ID| >= {need}: {many_descents}; up(rho(t)) = up({r}): {up}; larger: {larger}"
    ));
    b.witness = Some(json!({
        "many_descents": many_descents,
        "rho_upset": up,
        "larger": larger,
    }));
    Ok(())
}

fn level_threshold(b: &mut Builder, p: &VerifyParams) -> Result<()> {
    let r = within("r", p.r.unwrap_or(4), 2, 40)?;
    b.param("r", r);
    let thr = rank_r_threshold(r)?;
    b.check(
        "threshold is a positive integer",
        "positive",
        thr.to_string(),
        thr > BigUint::from(0u8),
    );
    b.witness = Some(json!({ "threshold": thr.to_string() }));
    Ok(())
}

fn pinned_intersection(b: &mut Builder, p: &VerifyParams, cfg: &SearchConfig) -> Result<()> {
    let n = within("n", p.n.unwrap_or(6), 3, 9)?;
    let r = within("r", p.r.unwrap_or(3), 3, n)?;
    let ell = within("l", p.k.unwrap_or(2), 2, r - 1)?;
    b.param("n", n);
    b.param("r", r);
    b.param("k", ell);
    let needed = (2 * r + 1) * (ell - 1);
    if n + (r - 2) < needed {
        return Err(invalid(format!(
            "n must be at least (2r+1)(l-1)-(r-2) = {}",
            needed.saturating_sub(r - 2)
        )));
    }
    let m = n - 1;
    let threshold = binomial((n - 2) as u64, (ell - 1) as u64)
        - binomial((n - 2).saturating_sub(r) as u64, (ell - 1) as u64);
    let size = usize::try_from(&threshold).map_err(|_| invalid("threshold too large"))? + 1;
    let candidates = k_subsets(m, ell);
    let g = WeightedGraph::from_predicate(vec![1; candidates.len()], |u, v| {
        candidates[u] & candidates[v] != 0
    });
    // every larger family contains one of this size, and the conclusion
    // passes upward because an l-set with l < r+1 cannot meet r+1
    // petals that are disjoint away from x without containing x
    let (families, complete, _) = clique::cliques_of_weight(&g, size as u64, &cfg.solver(None));
    if !complete {
        b.budget_hit = true;
    }
    let bad = families
        .iter()
        .filter(|f| {
            !has_pinned_petals(&f.iter().map(|&i| candidates[i]).collect::<Vec<_>>(), r + 1)
        })
        .count();
    b.notes.push(format!(
        "{} intersecting families of size {size} examined",
        families.len()
    ));
    b.eq("families without r+1 petals through a common point", 0, bad);
    let frankl = frankl_bound(m - 1, ell - 1, r)?;
    b.notes.push(format!(
        "matching-number bound used in the argument: {frankl}"
    ));
    Ok(())
}

fn has_pinned_petals(sets: &[u32], petals: usize) -> bool {
    let common = sets.iter().fold(u32::MAX, |a, &s| a & s);
    if common == 0 {
        return false;
    }
    (0..32).filter(|x| common >> x & 1 == 1).any(|x| {
        let rest: Vec<u32> = sets.iter().map(|s| s & !(1 << x)).collect();
        max_disjoint(&rest, 0, 0) >= petals
    })
}

fn max_disjoint(sets: &[u32], from: usize, used: u32) -> usize {
    (from..sets.len())
        .filter(|&i| sets[i] & used == 0)
        .map(|i| 1 + max_disjoint(sets, i + 1, used | sets[i]))
        .max()
        .unwrap_or(0)
}

/// Ledger of whether each rank-1 star in `B_3(n)` has the size `C(n-1,2)`.
pub fn rank_three_star_sizes(n: usize) -> Result<Vec<(Permutation, usize)>> {
    (1..n)
        .map(|i| {
            let g = Permutation::generator(n, i)?;
            Ok((g, upset_level(&g, 3)?.count()))
        })
        .collect()
}

/// Set system of all `k`-subsets, handy for oracle comparisons.
pub fn all_k_sets(m: usize, k: usize) -> Result<SetSystem> {
    SetSystem::new(
        m,
        k_subsets(m, k)
            .into_iter()
            .map(|s| GeneratorSet::from_bits(m, s).expect("within ground")),
    )
}

/// Coefficient list of `[n]!`, for the Mahonian table.
pub fn mahonian_row(n: usize) -> Vec<String> {
    q_factorial(n)
        .coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect()
}
