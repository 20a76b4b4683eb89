//! Set systems over the generators and the permutation families they induce.
//!
//! Integer sets are identified with generator sets by subscript:
//! `{1,3,4} ≡ {g_1, g_3, g_4}`. A system built on `{1..m}` (such as
//! [`h_family`]) is placed on `G_n` with [`SetSystem::relabel_to_generators`],
//! which keeps every index and only changes the ground size to `n - 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::levels::{symmetric_group, EXHAUSTIVE_MAX_N};
use crate::perm::{GeneratorSet, Permutation, MAX_GROUND, MAX_N};

/// Exhaustive maximality checks scan all `2^m` subsets of the ground set.
pub const MAXIMALITY_MAX_GROUND: usize = 20;

/// Largest ground set for [`maximal_intersecting_antichains`].
pub const ANTICHAIN_ENUM_MAX_GROUND: usize = 6;

/// The minimum permutation with inverse-descent set `a`: the join of its
/// generators. Each maximal run of consecutive generators `g_s..g_{s+r-1}`
/// reverses the block of values `s..=s+r`.
pub fn pi_minimal(a: &GeneratorSet) -> Result<Permutation> {
    let n = a.ground() + 1;
    if n > MAX_N {
        return Err(Error::SizeOutOfRange { n, max: MAX_N });
    }
    let mut word: Vec<u8> = (1..=n as u8).collect();
    for (start, len) in a.runs() {
        word[start - 1..start + len].reverse();
    }
    Permutation::from_word(&word)
}

/// A duplicate-free system of subsets of `{1..ground_size}` in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetSystem {
    ground_size: usize,
    sets: Vec<GeneratorSet>,
}

impl SetSystem {
    pub fn new<I: IntoIterator<Item = GeneratorSet>>(ground_size: usize, sets: I) -> Result<Self> {
        if ground_size > MAX_GROUND {
            return Err(Error::SizeOutOfRange {
                n: ground_size,
                max: MAX_GROUND,
            });
        }
        let mut out = Vec::new();
        for s in sets {
            // re-home onto this ground set; rejects out-of-range members
            out.push(GeneratorSet::from_bits(ground_size, s.bits())?);
        }
        out.sort();
        out.dedup();
        Ok(Self {
            ground_size,
            sets: out,
        })
    }

    pub fn from_index_lists(ground_size: usize, lists: &[&[usize]]) -> Result<Self> {
        let sets = lists
            .iter()
            .map(|l| GeneratorSet::from_indices(ground_size, l.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground_size, sets)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn sets(&self) -> &[GeneratorSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: &GeneratorSet) -> bool {
        self.sets.iter().any(|x| x.bits() == s.bits())
    }

    /// Every pair of members, a member with itself included, meets.
    pub fn is_intersecting(&self) -> bool {
        self.sets
            .iter()
            .enumerate()
            .all(|(i, a)| !a.is_empty() && self.sets[i + 1..].iter().all(|b| !a.is_disjoint(b)))
    }

    /// No member contains another.
    pub fn is_antichain(&self) -> bool {
        self.sets.iter().enumerate().all(|(i, a)| {
            self.sets
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.is_subset(b))
        })
    }

    /// Intersection of all members, `None` for the empty system.
    pub fn common_intersection(&self) -> Option<GeneratorSet> {
        let mut it = self.sets.iter();
        let first = *it.next()?;
        Some(it.fold(first, |acc, s| acc.intersection(s)))
    }

    /// Members minimal under inclusion.
    pub fn minimal_sets(&self) -> SetSystem {
        let sets = self
            .sets
            .iter()
            .filter(|a| !self.sets.iter().any(|b| b != *a && b.is_subset(a)))
            .copied();
        Self::new(self.ground_size, sets).expect("subsystem of a valid system")
    }

    /// `b` is outside the system, meets every member and contains none.
    pub fn is_maximality_witness(&self, b: &GeneratorSet) -> bool {
        !self.contains(b)
            && self
                .sets
                .iter()
                .all(|a| !a.is_disjoint(b) && !a.is_subset(b))
    }

    /// A set that could be added while keeping an intersecting antichain's
    /// defining property, or `None` if every outside set is blocked.
    pub fn maximality_witness(&self) -> Result<Option<GeneratorSet>> {
        let m = self.ground_size;
        if m > MAXIMALITY_MAX_GROUND {
            return Err(Error::TooLarge {
                what: "maximality check",
                n: m,
                max: MAXIMALITY_MAX_GROUND,
            });
        }
        let bits: Vec<u32> = self.sets.iter().map(|s| s.bits()).collect();
        let found = (0u32..1 << m)
            .into_par_iter()
            .find_first(|&b| !bits.contains(&b) && bits.iter().all(|&a| a & b != 0 && a & !b != 0));
        Ok(found.map(|b| GeneratorSet::from_bits(m, b).expect("within ground")))
    }

    /// An intersecting antichain such that every outside set is disjoint from
    /// some member or contains some member. Exhaustive over `2^m` sets.
    pub fn is_maximal_intersecting_antichain(&self) -> Result<bool> {
        if !self.is_intersecting() || !self.is_antichain() {
            if self.ground_size > MAXIMALITY_MAX_GROUND {
                return Err(Error::TooLarge {
                    what: "maximality check",
                    n: self.ground_size,
                    max: MAXIMALITY_MAX_GROUND,
                });
            }
            return Ok(false);
        }
        Ok(self.maximality_witness()?.is_none())
    }

    /// Same indices on the generator set `G_n` (ground size `n - 1`).
    pub fn relabel_to_generators(&self, n: usize) -> Result<SetSystem> {
        if n == 0 || n > MAX_N {
            return Err(Error::SizeOutOfRange { n, max: MAX_N });
        }
        Self::new(n - 1, self.sets.iter().copied())
    }

    /// One set per line, comma-separated indices; `{}` for the empty set.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sets {
            out.push_str(&s.to_line());
            out.push('\n');
        }
        out
    }

    /// Inverse of [`to_text`](Self::to_text); blank lines and `#` comments are skipped.
    pub fn parse_text(ground_size: usize, text: &str) -> Result<Self> {
        let sets = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| GeneratorSet::parse(ground_size, l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground_size, sets)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("set system serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let err = || Error::Parse {
            what: "set system",
            input: v.to_string(),
        };
        let ground = v["ground_size"].as_u64().ok_or_else(err)? as usize;
        let sets = v["sets"]
            .as_array()
            .ok_or_else(err)?
            .iter()
            .map(|s| {
                let idx = s
                    .as_array()
                    .ok_or_else(err)?
                    .iter()
                    .map(|i| i.as_u64().map(|i| i as usize).ok_or_else(err))
                    .collect::<Result<Vec<_>>>()?;
                GeneratorSet::from_indices(ground, idx)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, sets)
    }
}

impl Serialize for SetSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SetSystem", 2)?;
        st.serialize_field("ground_size", &self.ground_size)?;
        st.serialize_field("sets", &self.sets)?;
        st.end()
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetSystem(m={}, {:?})", self.ground_size, self.sets)
    }
}

impl fmt::Display for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

/// All `k`-subsets of `{1..m}` as bitmasks, in lexicographic index order.
pub fn k_subsets(m: usize, k: usize) -> Vec<u32> {
    fn go(start: usize, m: usize, k: usize, cur: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..=m {
            if m - i + 1 < k {
                break;
            }
            go(i + 1, m, k - 1, cur | 1 << (i - 1), out);
        }
    }
    let mut out = Vec::new();
    if k <= m {
        go(1, m, k, 0, &mut out);
    }
    out
}

/// `H_{m,r,k}`: the `r`-subsets of `{1..m}` meeting `{1..2k-1}` in at least
/// `k` elements. Requires `1 <= k <= r <= (m-1)/2`.
pub fn h_family(m: usize, r: usize, k: usize) -> Result<SetSystem> {
    if k == 0 || k > r || 2 * r + 1 > m || m > MAX_GROUND {
        return Err(invalid(format!(
            "H(m,r,k) needs 1 <= k <= r <= (m-1)/2 (m={m}, r={r}, k={k})"
        )));
    }
    let core: u32 = (1 << (2 * k - 1)) - 1;
    let sets = k_subsets(m, r)
        .into_iter()
        .filter(|s| (s & core).count_ones() as usize >= k)
        .map(|s| GeneratorSet::from_bits(m, s))
        .collect::<Result<Vec<_>>>()?;
    SetSystem::new(m, sets)
}

/// Enumerates every maximal intersecting antichain on `{1..m}`, `m <= 6`.
pub fn maximal_intersecting_antichains(m: usize) -> Result<Vec<SetSystem>> {
    if m > ANTICHAIN_ENUM_MAX_GROUND {
        return Err(Error::TooLarge {
            what: "antichain enumeration",
            n: m,
            max: ANTICHAIN_ENUM_MAX_GROUND,
        });
    }
    let candidates: Vec<u32> = (1u32..1 << m).collect();
    let mut found = Vec::new();
    let mut chosen = Vec::new();
    grow_antichain(m, &candidates, 0, &mut chosen, &mut found);
    found
        .into_iter()
        .map(|bits: Vec<u32>| {
            SetSystem::new(
                m,
                bits.into_iter()
                    .map(|b| GeneratorSet::from_bits(m, b).expect("within ground")),
            )
        })
        .collect()
}

fn grow_antichain(
    m: usize,
    candidates: &[u32],
    from: usize,
    chosen: &mut Vec<u32>,
    found: &mut Vec<Vec<u32>>,
) {
    // Maximal iff every set meeting all members contains one of them.
    let blocked = |b: u32| chosen.iter().any(|&a| a & b == 0 || a & !b == 0);
    let is_maximal =
        !chosen.is_empty() && (1u32..1 << m).all(|b| chosen.contains(&b) || blocked(b));
    if is_maximal {
        found.push(chosen.clone());
        return;
    }
    for idx in from..candidates.len() {
        let c = candidates[idx];
        if chosen
            .iter()
            .all(|&a| a & c != 0 && a & !c != 0 && c & !a != 0)
        {
            chosen.push(c);
            grow_antichain(m, candidates, idx + 1, chosen, found);
            chosen.pop();
        }
    }
}

/// A duplicate-free family of permutations of one size, sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct PermFamily {
    n: usize,
    members: Vec<Permutation>,
}

impl PermFamily {
    pub fn new<I: IntoIterator<Item = Permutation>>(n: usize, members: I) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::SizeOutOfRange { n, max: MAX_N });
        }
        let mut members: Vec<Permutation> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|p| p.n() != n) {
            return Err(Error::SizeMismatch {
                left: bad.n(),
                right: n,
            });
        }
        members.sort();
        members.dedup();
        Ok(Self { n, members })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Permutation] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.binary_search(p).is_ok()
    }

    /// Every pair, each member with itself included, has a meet of rank `>= t`.
    pub fn is_t_intersecting(&self, t: usize) -> bool {
        self.members.par_iter().enumerate().all(|(i, p)| {
            p.rank() >= t
                && self.members[i + 1..]
                    .iter()
                    .all(|q| p.meet_unchecked(q).rank() >= t)
        })
    }

    pub fn is_intersecting(&self) -> bool {
        self.is_t_intersecting(1)
    }

    pub fn is_antichain(&self) -> bool {
        self.min_family().len() == self.len()
    }

    fn check_exhaustive(&self, what: &'static str) -> Result<()> {
        if self.n > EXHAUSTIVE_MAX_N {
            return Err(Error::TooLarge {
                what,
                n: self.n,
                max: EXHAUSTIVE_MAX_N,
            });
        }
        Ok(())
    }

    /// Members with no other member below them.
    ///
    /// Sweeps `up(P)` in rank order, propagating "some member lies strictly
    /// below" along cover relations.
    pub fn min_family(&self) -> PermFamily {
        let mut up: HashMap<u128, Permutation> =
            self.members.iter().map(|p| (p.inv_bits(), *p)).collect();
        let mut frontier: Vec<Permutation> = self.members.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for c in p.covers() {
                    if let std::collections::hash_map::Entry::Vacant(e) = up.entry(c.inv_bits()) {
                        e.insert(c);
                        next.push(c);
                    }
                }
            }
            frontier = next;
        }
        let mut order: Vec<Permutation> = up.into_values().collect();
        order.sort_by_key(|p| p.rank());
        let in_family: std::collections::HashSet<u128> =
            self.members.iter().map(|p| p.inv_bits()).collect();
        // strictly_above[x]: some member lies strictly below x
        let mut strictly_above: HashMap<u128, bool> = HashMap::with_capacity(order.len());
        for x in &order {
            let flag = x.lower_covers().iter().any(|y| {
                in_family.contains(&y.inv_bits())
                    || strictly_above.get(&y.inv_bits()).copied().unwrap_or(false)
            });
            strictly_above.insert(x.inv_bits(), flag);
        }
        let mins = self
            .members
            .iter()
            .filter(|p| !strictly_above[&p.inv_bits()])
            .copied();
        PermFamily::new(self.n, mins).expect("subfamily")
    }

    /// Order-generated upset; `n <= 8`.
    pub fn up_family(&self) -> Result<PermFamily> {
        self.check_exhaustive("upset materialization")?;
        self.closure(Permutation::covers)
    }

    /// Order-generated downset; `n <= 8`.
    pub fn down_family(&self) -> Result<PermFamily> {
        self.check_exhaustive("downset materialization")?;
        self.closure(Permutation::lower_covers)
    }

    fn closure(&self, step: impl Fn(&Permutation) -> Vec<Permutation>) -> Result<PermFamily> {
        let mut seen: HashMap<u128, Permutation> =
            self.members.iter().map(|p| (p.inv_bits(), *p)).collect();
        let mut frontier = self.members.clone();
        while let Some(p) = frontier.pop() {
            for c in step(&p) {
                if seen.insert(c.inv_bits(), c).is_none() {
                    frontier.push(c);
                }
            }
        }
        PermFamily::new(self.n, seen.into_values())
    }

    /// `{ID(q) : q ∈ min(P)}`.
    pub fn generating_system(&self) -> SetSystem {
        SetSystem::new(
            self.n - 1,
            self.min_family()
                .members
                .iter()
                .map(|q| q.inverse_descents()),
        )
        .expect("inverse descents fit the ground set")
    }

    /// Number of members at each rank `0..=C(n,2)`.
    pub fn rank_profile(&self) -> Vec<usize> {
        let mut prof = vec![0; crate::perm::pair_count(self.n) + 1];
        for p in &self.members {
            prof[p.rank()] += 1;
        }
        prof
    }

    /// Rank profile of the family together with the sorted ranks of its
    /// minimal elements. Different fingerprints mean non-isomorphic families.
    pub fn fingerprint(&self) -> FamilyFingerprint {
        let mut min_ranks: Vec<usize> =
            self.min_family().members.iter().map(|p| p.rank()).collect();
        min_ranks.sort_unstable();
        FamilyFingerprint {
            rank_profile: self.rank_profile(),
            min_ranks,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("family serializes")
    }
}

impl fmt::Debug for PermFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermFamily(n={}, {:?})", self.n, self.members)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FamilyFingerprint {
    pub rank_profile: Vec<usize>,
    pub min_ranks: Vec<usize>,
}

/// `P(A) = up({π(A) : A ∈ A})`: every permutation whose inverse-descent set
/// contains a member of `system`. Materialized by scanning `Sym(n)`, `n <= 8`.
pub fn family_p(system: &SetSystem, n: usize) -> Result<PermFamily> {
    if system.ground_size() + 1 != n {
        return Err(Error::SizeMismatch {
            left: system.ground_size(),
            right: n.saturating_sub(1),
        });
    }
    let all = symmetric_group(n)?;
    let sets: Vec<u32> = system.sets().iter().map(|s| s.bits()).collect();
    let members: Vec<Permutation> = all
        .into_par_iter()
        .filter(|p| {
            let id = p.idesc_bits();
            sets.iter().any(|&a| a & !id == 0)
        })
        .collect();
    PermFamily::new(n, members)
}

/// Groups families by [`FamilyFingerprint`], keeping the first of each class.
pub fn distinct_by_fingerprint(families: &[PermFamily]) -> Vec<(FamilyFingerprint, PermFamily)> {
    let mut seen: BTreeMap<FamilyFingerprint, PermFamily> = BTreeMap::new();
    for f in families {
        seen.entry(f.fingerprint()).or_insert_with(|| f.clone());
    }
    seen.into_iter().collect()
}
