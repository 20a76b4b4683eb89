//! Rank levels `B_ℓ(n)`, descent-set multiplicities and level slices of upsets.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{pair_count, GeneratorSet, Permutation, MAX_N};

/// Full-lattice scans are limited to `Sym(8)` (40320 elements).
pub const EXHAUSTIVE_MAX_N: usize = 8;

/// The permutations of one rank, in lexicographic word order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelEnumeration {
    pub n: usize,
    pub ell: usize,
    pub items: Vec<Permutation>,
}

impl LevelEnumeration {
    pub fn count(&self) -> usize {
        self.items.len()
    }

    /// Header line `# n=.. ell=.. count=..` followed by one permutation per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("# n={} ell={} count={}\n", self.n, self.ell, self.count());
        for p in &self.items {
            out.push_str(&p.to_string());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": "level",
            "n": self.n,
            "ell": self.ell,
            "count": self.count(),
            "items": self.items,
        })
    }
}

fn check_rank(n: usize, ell: usize) -> Result<()> {
    let max = pair_count(n);
    if ell > max {
        Err(Error::RankOutOfRange { rank: ell, max })
    } else {
        Ok(())
    }
}

fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::SizeOutOfRange { n, max: MAX_N })
    }
}

/// All permutations of rank `ell`, lexicographically ordered.
///
/// Words are built left to right. Placing the `k`-th smallest unused value
/// contributes exactly `k` inversions, so a prefix is extended only while the
/// remaining rank is reachable by the unused suffix. Subtrees rooted at the
/// first symbol are independent and run in parallel.
pub fn enumerate_level(n: usize, ell: usize) -> Result<LevelEnumeration> {
    check_n(n)?;
    check_rank(n, ell)?;
    let parts: Vec<Vec<Permutation>> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            if first <= ell && ell - first <= pair_count(n - 1) {
                let mut word = [0u8; MAX_N];
                word[0] = first as u8 + 1;
                let unused: Vec<u8> = (1..=n as u8).filter(|&v| v != first as u8 + 1).collect();
                extend_prefix(n, 1, &mut word, &unused, ell - first, &mut out);
            }
            out
        })
        .collect();
    Ok(LevelEnumeration {
        n,
        ell,
        items: parts.into_iter().flatten().collect(),
    })
}

fn extend_prefix(
    n: usize,
    pos: usize,
    word: &mut [u8; MAX_N],
    unused: &[u8],
    remaining: usize,
    out: &mut Vec<Permutation>,
) {
    if unused.is_empty() {
        debug_assert_eq!(remaining, 0);
        out.push(Permutation::from_word_unchecked(n, *word));
        return;
    }
    let tail = pair_count(unused.len() - 1);
    for k in 0..unused.len().min(remaining + 1) {
        let rest = remaining - k;
        if rest > tail {
            continue;
        }
        word[pos] = unused[k];
        let mut next = unused.to_vec();
        next.remove(k);
        extend_prefix(n, pos + 1, word, &next, rest, out);
    }
}

/// Every permutation of `Sym(n)` in lexicographic order; `n <= 8`.
pub fn symmetric_group(n: usize) -> Result<Vec<Permutation>> {
    check_n(n)?;
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::TooLarge {
            what: "full symmetric group",
            n,
            max: EXHAUSTIVE_MAX_N,
        });
    }
    let mut word: Vec<u8> = (1..=n as u8).collect();
    let mut out = Vec::with_capacity((1..=n).product());
    loop {
        out.push(Permutation::from_word(&word)?);
        if !next_permutation(&mut word) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(w: &mut [u8]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && w[i - 1] >= w[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while w[j] <= w[i - 1] {
        j -= 1;
    }
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

fn check_ground(a: &GeneratorSet, n: usize) -> Result<()> {
    if a.ground() != n - 1 {
        return Err(Error::SizeMismatch {
            left: a.ground(),
            right: n - 1,
        });
    }
    Ok(())
}

/// Rank-`ell` permutations whose inverse-descent set is exactly `a`.
pub fn multiplicity_witnesses(a: &GeneratorSet, n: usize, ell: usize) -> Result<Vec<Permutation>> {
    check_n(n)?;
    check_ground(a, n)?;
    Ok(enumerate_level(n, ell)?
        .items
        .into_iter()
        .filter(|p| p.inverse_descents() == *a)
        .collect())
}

/// Number of rank-`ell` permutations with inverse-descent set exactly `a`.
pub fn multiplicity(a: &GeneratorSet, n: usize, ell: usize) -> Result<u64> {
    Ok(multiplicity_witnesses(a, n, ell)?.len() as u64)
}

/// `{q ∈ B_r(n) : p ⪯ q}` in lexicographic order, by walking covers upward.
pub fn upset_level(p: &Permutation, r: usize) -> Result<LevelEnumeration> {
    let n = p.n();
    check_rank(n, r)?;
    if r < p.rank() {
        return Err(Error::RankOutOfRange {
            rank: r,
            max: pair_count(n),
        });
    }
    let mut frontier = vec![*p];
    for _ in p.rank()..r {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for q in &frontier {
            for c in q.covers() {
                if seen.insert(c.inv_bits()) {
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    frontier.sort();
    Ok(LevelEnumeration {
        n,
        ell: r,
        items: frontier,
    })
}

/// `|{q : p ⪯ q}|` by scanning `Sym(n)`; `n <= 8`.
pub fn upset_size_full(p: &Permutation) -> Result<u64> {
    let all = symmetric_group(p.n())?;
    Ok(all.par_iter().filter(|q| p.is_below(q)).count() as u64)
}

/// Level sizes `|B_0(n)|, ..., |B_max(n)|` by enumeration.
pub fn level_sizes(n: usize) -> Result<Vec<usize>> {
    (0..=pair_count(n))
        .map(|l| enumerate_level(n, l).map(|e| e.count()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn words(e: &LevelEnumeration) -> Vec<String> {
        e.items.iter().map(|q| q.to_string()).collect()
    }

    #[test]
    fn middle_row_of_b4() {
        let e = enumerate_level(4, 3).unwrap();
        let mut got = words(&e);
        let mut want = vec!["2341", "3214", "3142", "2413", "1432", "4123"];
        want.sort();
        assert_eq!(got.len(), 6);
        got.sort();
        assert_eq!(got, want);
        // already lexicographic
        assert_eq!(words(&e), want);
    }

    #[test]
    fn level_zero_is_identity() {
        for n in 1..=7 {
            let e = enumerate_level(n, 0).unwrap();
            assert_eq!(e.items, vec![Permutation::identity(n).unwrap()]);
        }
    }

    #[test]
    fn b4_level_sizes() {
        assert_eq!(level_sizes(4).unwrap(), vec![1, 3, 5, 6, 5, 3, 1]);
    }

    #[test]
    fn rank_out_of_range() {
        assert!(matches!(
            enumerate_level(4, 7),
            Err(Error::RankOutOfRange { rank: 7, max: 6 })
        ));
    }

    #[test]
    fn enumeration_matches_filtered_scan() {
        for n in 1..=6 {
            let all = symmetric_group(n).unwrap();
            for ell in 0..=pair_count(n) {
                let want: Vec<_> = all.iter().filter(|q| q.rank() == ell).copied().collect();
                assert_eq!(
                    enumerate_level(n, ell).unwrap().items,
                    want,
                    "n={n} ell={ell}"
                );
            }
        }
    }

    #[test]
    fn multiplicity_examples() {
        let a = GeneratorSet::from_indices(5, [1, 4]).unwrap();
        assert_eq!(multiplicity(&a, 6, 2).unwrap(), 1);
        assert_eq!(multiplicity_witnesses(&a, 6, 2).unwrap(), vec![p("213546")]);
        let mut w: Vec<String> = multiplicity_witnesses(&a, 6, 3)
            .unwrap()
            .iter()
            .map(|q| q.to_string())
            .collect();
        w.sort();
        assert_eq!(w, vec!["213564", "215346", "231546"]);
        for n in 2..=6 {
            let e = GeneratorSet::empty(n - 1).unwrap();
            assert_eq!(multiplicity(&e, n, 0).unwrap(), 1);
        }
        assert!(multiplicity(&a, 5, 2).is_err());
    }

    #[test]
    fn upset_level_examples() {
        let up = upset_level(&p("2134"), 3).unwrap();
        let mut got = words(&up);
        got.sort();
        assert_eq!(got, vec!["2341", "2413", "3214"]);
        let q = p("31524");
        assert_eq!(upset_level(&q, q.rank()).unwrap().items, vec![q]);
        assert!(upset_level(&q, q.rank() - 1).is_err());
    }

    #[test]
    fn upset_level_matches_filter() {
        for q in symmetric_group(5).unwrap().iter().step_by(7) {
            for r in q.rank()..=10 {
                let want: Vec<_> = enumerate_level(5, r)
                    .unwrap()
                    .items
                    .into_iter()
                    .filter(|x| q.is_below(x))
                    .collect();
                assert_eq!(upset_level(q, r).unwrap().items, want);
            }
        }
    }

    #[test]
    fn full_upset_sizes() {
        assert_eq!(upset_size_full(&p("2134")).unwrap(), 12);
        assert_eq!(
            upset_size_full(&Permutation::identity(5).unwrap()).unwrap(),
            120
        );
        assert_eq!(upset_size_full(&p("4321")).unwrap(), 1);
        let big = Permutation::identity(9).unwrap();
        assert!(matches!(upset_size_full(&big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn dumps_carry_header() {
        let e = enumerate_level(3, 1).unwrap();
        assert_eq!(e.to_text(), "# n=3 ell=1 count=2\n132\n213\n");
        let j = e.to_json();
        assert_eq!(j["count"], 2);
        assert_eq!(j["items"][0], "132");
    }
}
