//! Permutations of `Sym(n)` under the right weak order.
//!
//! A permutation is stored in one-line notation together with two cached
//! bitsets: its inversion set over value pairs `(a, b)` with `a < b`, and its
//! inverse-descent set over the generators `g_i = (i, i+1)`. The weak order is
//! containment of inversion sets, so comparisons are single word operations.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported permutation size. `C(16, 2) = 120` pairs fit in a `u128`.
pub const MAX_N: usize = 16;

/// Largest supported ground set for a [`GeneratorSet`].
pub const MAX_GROUND: usize = 31;

/// Number of unordered pairs of `1..=n`.
pub const fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Bit position of the value pair `(a, b)`, `1 <= a < b`.
///
/// Pairs are ordered by larger element first, then smaller:
/// `(1,2), (1,3), (2,3), (1,4), ...`. The layout is part of the on-disk format.
#[inline]
pub const fn pair_index(a: usize, b: usize) -> usize {
    (b - 1) * (b - 2) / 2 + (a - 1)
}

/// Inverse of [`pair_index`].
pub fn pair_from_index(idx: usize) -> (usize, usize) {
    let mut b = 2;
    while pair_index(1, b + 1) <= idx {
        b += 1;
    }
    (idx - pair_index(1, b) + 1, b)
}

fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::SizeOutOfRange { n, max: MAX_N })
    }
}

/// A set of generators `g_1, ..., g_m` (or, abstractly, a subset of `1..=m`).
///
/// Bit `i - 1` holds `g_i`. The ground size `m` is `n - 1` when the set comes
/// from a permutation of `Sym(n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    ground: u8,
    bits: u32,
}

impl GeneratorSet {
    pub fn empty(ground: usize) -> Result<Self> {
        if ground > MAX_GROUND {
            return Err(Error::SizeOutOfRange {
                n: ground,
                max: MAX_GROUND,
            });
        }
        Ok(Self {
            ground: ground as u8,
            bits: 0,
        })
    }

    pub fn full(ground: usize) -> Result<Self> {
        let mut s = Self::empty(ground)?;
        s.bits = mask(ground);
        Ok(s)
    }

    pub fn from_bits(ground: usize, bits: u32) -> Result<Self> {
        let mut s = Self::empty(ground)?;
        if bits & !mask(ground) != 0 {
            let index = 32 - bits.leading_zeros() as usize;
            return Err(Error::IndexOutOfRange { index, ground });
        }
        s.bits = bits;
        Ok(s)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(ground: usize, indices: I) -> Result<Self> {
        let mut s = Self::empty(ground)?;
        for i in indices {
            s.insert(i)?;
        }
        Ok(s)
    }

    /// Parses `"1,3,5"`, `"{1,3,5}"` or `"{}"`.
    pub fn parse(ground: usize, text: &str) -> Result<Self> {
        let body = text
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim();
        let mut s = Self::empty(ground)?;
        if body.is_empty() {
            return Ok(s);
        }
        for tok in body.split(',') {
            let i: usize = tok.trim().parse().map_err(|_| Error::Parse {
                what: "generator set",
                input: text.to_string(),
            })?;
            s.insert(i)?;
        }
        Ok(s)
    }

    pub(crate) const fn raw(ground: u8, bits: u32) -> Self {
        Self { ground, bits }
    }

    pub fn insert(&mut self, index: usize) -> Result<()> {
        if index == 0 || index > self.ground as usize {
            return Err(Error::IndexOutOfRange {
                index,
                ground: self.ground as usize,
            });
        }
        self.bits |= 1 << (index - 1);
        Ok(())
    }

    pub fn ground(&self) -> usize {
        self.ground as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        index >= 1 && index <= self.ground as usize && self.bits >> (index - 1) & 1 == 1
    }

    /// Indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (1..=self.ground as usize).filter(move |i| bits >> (i - 1) & 1 == 1)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self::raw(self.ground, self.bits & other.bits)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::raw(self.ground.max(other.ground), self.bits | other.bits)
    }

    /// Complement within the ground set.
    pub fn complement(&self) -> Self {
        Self::raw(self.ground, !self.bits & mask(self.ground as usize))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits & other.bits == 0
    }

    /// No two consecutive generators `g_i, g_{i+1}`.
    pub fn is_separated(&self) -> bool {
        self.bits & (self.bits >> 1) == 0
    }

    /// Maximal runs of consecutive indices as `(start, length)`.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut i = 1;
        let m = self.ground as usize;
        while i <= m {
            if self.contains(i) {
                let start = i;
                while i <= m && self.contains(i) {
                    i += 1;
                }
                out.push((start, i - start));
            } else {
                i += 1;
            }
        }
        out
    }

    /// Comma-separated indices, `{}` for the empty set.
    pub fn to_line(&self) -> String {
        if self.is_empty() {
            return "{}".to_string();
        }
        self.indices()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn mask(ground: usize) -> u32 {
    if ground >= 32 {
        u32::MAX
    } else {
        (1u32 << ground) - 1
    }
}

impl Ord for GeneratorSet {
    /// Lexicographic on the increasing index sequence: `{1} < {1,2} < {1,3} < {2}`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices()
            .cmp(other.indices())
            .then(self.ground.cmp(&other.ground))
    }
}

impl PartialOrd for GeneratorSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.ground)
    }
}

impl Serialize for GeneratorSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.indices())
    }
}

/// A set of value pairs `(a, b)`, `a < b`, indexed by [`pair_index`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct InversionSet {
    n: u8,
    bits: u128,
}

impl InversionSet {
    pub fn empty(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            n: n as u8,
            bits: 0,
        })
    }

    /// Every pair: the inversion set of the longest element.
    pub fn full(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            n: n as u8,
            bits: full_pairs(n),
        })
    }

    pub fn from_bits(n: usize, bits: u128) -> Result<Self> {
        check_n(n)?;
        if bits & !full_pairs(n) != 0 {
            return Err(Error::InvalidParameters(format!(
                "pair bitset has bits beyond C({n},2)"
            )));
        }
        Ok(Self { n: n as u8, bits })
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for (a, b) in pairs {
            if a == 0 || a >= b || b > n {
                return Err(Error::InvalidParameters(format!(
                    "({a},{b}) is not a pair 1 <= a < b <= {n}"
                )));
            }
            s.bits |= 1 << pair_index(a, b);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.bits >> pair_index(a, b) & 1 == 1
    }

    /// Pairs in canonical index order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let bits = self.bits;
        (0..pair_count(self.n as usize))
            .filter(move |&k| bits >> k & 1 == 1)
            .map(pair_from_index)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            bits: !self.bits & full_pairs(self.n as usize),
        }
    }

    /// Closed under transitivity and co-transitivity: for `a < b < c`,
    /// `(a,b),(b,c) ∈ S ⇒ (a,c) ∈ S` and `(a,c) ∈ S ⇒ (a,b) ∈ S ∨ (b,c) ∈ S`.
    pub fn is_biclosed(&self) -> bool {
        let n = self.n as usize;
        for c in 3..=n {
            for a in 1..c - 1 {
                let ac = self.contains(a, c);
                for b in a + 1..c {
                    let ab = self.contains(a, b);
                    let bc = self.contains(b, c);
                    if ab && bc && !ac {
                        return false;
                    }
                    if ac && !ab && !bc {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Removes co-closure violations until none remain.
    ///
    /// A pair `(a,c)` is dropped whenever some `b` strictly between has
    /// neither `(a,b)` nor `(b,c)` in the set. Applied to a transitively
    /// closed set this yields its largest biclosed subset.
    pub fn coclosure_interior(&self) -> Self {
        let n = self.n as usize;
        let mut bits = self.bits;
        let has = |bits: u128, a: usize, b: usize| bits >> pair_index(a, b) & 1 == 1;
        loop {
            let mut changed = false;
            for c in 3..=n {
                for a in 1..c - 1 {
                    if !has(bits, a, c) {
                        continue;
                    }
                    if (a + 1..c).any(|b| !has(bits, a, b) && !has(bits, b, c)) {
                        bits &= !(1 << pair_index(a, c));
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Self { n: self.n, bits }
    }
}

fn full_pairs(n: usize) -> u128 {
    let k = pair_count(n);
    if k == 128 {
        u128::MAX
    } else {
        (1u128 << k) - 1
    }
}

impl fmt::Display for InversionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (a, b)) in self.pairs().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for InversionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A permutation of `1..=n` in one-line notation with cached weak-order data.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Permutation {
    n: u8,
    word: [u8; MAX_N],
    inv: u128,
    idesc: u32,
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        check_n(n)?;
        let mut word = [0u8; MAX_N];
        for (i, w) in word.iter_mut().enumerate().take(n) {
            *w = i as u8 + 1;
        }
        Ok(Self::from_word_unchecked(n, word))
    }

    /// The longest element `n (n-1) ... 1`.
    pub fn longest(n: usize) -> Result<Self> {
        Ok(Self::identity(n)?.reverse_complement())
    }

    /// The generator `g_i` viewed as a rank-one permutation.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        let mut p = Self::identity(n)?;
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                ground: n - 1,
            });
        }
        p.word.swap(i - 1, i);
        Ok(Self::from_word_unchecked(n, p.word))
    }

    pub fn from_word(word: &[u8]) -> Result<Self> {
        let n = word.len();
        check_n(n)?;
        let mut seen = 0u32;
        for &w in word {
            if w == 0 || w as usize > n || seen >> w & 1 == 1 {
                return Err(Error::NotABijection(word.to_vec()));
            }
            seen |= 1 << w;
        }
        let mut buf = [0u8; MAX_N];
        buf[..n].copy_from_slice(word);
        Ok(Self::from_word_unchecked(n, buf))
    }

    pub(crate) fn from_word_unchecked(n: usize, word: [u8; MAX_N]) -> Self {
        let mut inv = 0u128;
        for i in 0..n {
            for j in i + 1..n {
                if word[i] > word[j] {
                    inv |= 1 << pair_index(word[j] as usize, word[i] as usize);
                }
            }
        }
        let mut pos = [0u8; MAX_N + 1];
        for (i, &w) in word.iter().enumerate().take(n) {
            pos[w as usize] = i as u8;
        }
        let mut idesc = 0u32;
        for i in 1..n {
            if pos[i + 1] < pos[i] {
                idesc |= 1 << (i - 1);
            }
        }
        Self {
            n: n as u8,
            word,
            inv,
            idesc,
        }
    }

    /// The unique permutation with the given inversion set.
    pub fn from_inversion_set(s: &InversionSet) -> Result<Self> {
        if !s.is_biclosed() {
            return Err(Error::NotBiclosed);
        }
        let n = s.n();
        // Insert values in increasing order; value b sits to the left of
        // exactly as many smaller values as it has inversions (a, b).
        let mut word: Vec<u8> = Vec::with_capacity(n);
        for b in 1..=n {
            let smaller_after = (1..b).filter(|&a| s.contains(a, b)).count();
            word.insert(b - 1 - smaller_after, b as u8);
        }
        let p = Self::from_word(&word)?;
        debug_assert_eq!(p.inv, s.bits());
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn word(&self) -> &[u8] {
        &self.word[..self.n as usize]
    }

    pub fn rank(&self) -> usize {
        self.inv.count_ones() as usize
    }

    pub fn inversion_set(&self) -> InversionSet {
        InversionSet {
            n: self.n,
            bits: self.inv,
        }
    }

    /// Generators `g_i` such that `i + 1` precedes `i`; equivalently the
    /// rank-one elements below `self`.
    pub fn inverse_descents(&self) -> GeneratorSet {
        GeneratorSet::raw(self.n - 1, self.idesc)
    }

    pub(crate) fn inv_bits(&self) -> u128 {
        self.inv
    }

    pub(crate) fn idesc_bits(&self) -> u32 {
        self.idesc
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            })
        }
    }

    /// Weak order comparison `self ⪯ other`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.same_size(other)?;
        Ok(self.is_below(other))
    }

    /// [`leq`](Self::leq) without the size check.
    #[inline]
    pub fn is_below(&self, other: &Self) -> bool {
        self.inv & !other.inv == 0
    }

    /// Upper covers: swap each adjacent ascent.
    pub fn covers(&self) -> Vec<Self> {
        self.adjacent_swaps(|a, b| a < b)
    }

    /// Lower covers: swap each adjacent descent.
    pub fn lower_covers(&self) -> Vec<Self> {
        self.adjacent_swaps(|a, b| a > b)
    }

    fn adjacent_swaps(&self, keep: impl Fn(u8, u8) -> bool) -> Vec<Self> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n.saturating_sub(1) {
            if keep(self.word[i], self.word[i + 1]) {
                let mut w = self.word;
                w.swap(i, i + 1);
                out.push(Self::from_word_unchecked(n, w));
            }
        }
        out
    }

    /// Greatest lower bound in the weak order.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(self.meet_unchecked(other))
    }

    pub(crate) fn meet_unchecked(&self, other: &Self) -> Self {
        if self.is_below(other) {
            return *self;
        }
        if other.is_below(self) {
            return *other;
        }
        let s = self.inversion_set().intersection(&other.inversion_set());
        Self::from_inversion_set(&s.coclosure_interior())
            .expect("co-closure interior of an intersection of inversion sets is biclosed")
    }

    /// Least upper bound, through the order-reversing involution.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Ok(self
            .reverse_complement()
            .meet_unchecked(&other.reverse_complement())
            .reverse_complement())
    }

    /// `p_n ... p_2 p_1`; its inversion set is the complement of `Inv(p)`.
    pub fn reverse_complement(&self) -> Self {
        let n = self.n();
        let mut w = self.word;
        w[..n].reverse();
        Self::from_word_unchecked(n, w)
    }
}

impl Ord for Permutation {
    /// Size first, then lexicographic on the word.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.word().cmp(other.word()))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    /// Plain digits for `n <= 9` (`3214`), comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 9 {
            for &w in self.word() {
                write!(f, "{w}")?;
            }
        } else {
            for (i, &w) in self.word().iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse {
            what: "permutation",
            input: s.to_string(),
        };
        let word: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<u8>().map_err(|_| err()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) if d > 0 => Ok(d as u8),
                    _ => Err(err()),
                })
                .collect::<Result<_>>()?
        };
        if word.is_empty() {
            return Err(err());
        }
        Self::from_word(&word)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn gens(ground: usize, idx: &[usize]) -> GeneratorSet {
        GeneratorSet::from_indices(ground, idx.iter().copied()).unwrap()
    }

    #[test]
    fn identity_cases() {
        let e = Permutation::identity(4).unwrap();
        assert_eq!(e.to_string(), "1234");
        assert!(e.inversion_set().is_empty());
        assert_eq!(Permutation::identity(1).unwrap().to_string(), "1");
        assert_eq!(Permutation::identity(6).unwrap().rank(), 0);
        assert!(matches!(
            Permutation::identity(0),
            Err(Error::SizeOutOfRange { .. })
        ));
        assert!(matches!(
            Permutation::identity(17),
            Err(Error::SizeOutOfRange { .. })
        ));
    }

    #[test]
    fn pair_layout() {
        assert_eq!(pair_index(1, 2), 0);
        assert_eq!(pair_index(1, 3), 1);
        assert_eq!(pair_index(2, 3), 2);
        assert_eq!(pair_index(1, 4), 3);
        assert_eq!(pair_index(15, 16), 119);
        for k in 0..120 {
            let (a, b) = pair_from_index(k);
            assert_eq!(pair_index(a, b), k);
        }
    }

    #[test]
    fn inversion_sets_from_figure_examples() {
        let s = p("3214").inversion_set();
        assert_eq!(s.pairs().collect::<Vec<_>>(), vec![(1, 2), (1, 3), (2, 3)]);
        let s = p("3241").inversion_set();
        let mut got: Vec<_> = s.pairs().collect();
        got.sort();
        assert_eq!(got, vec![(1, 2), (1, 3), (1, 4), (2, 3)]);
        assert!(p("1234").inversion_set().is_empty());
    }

    #[test]
    fn inverse_descent_examples() {
        assert_eq!(p("3214").inverse_descents(), gens(3, &[1, 2]));
        assert_eq!(p("3241").inverse_descents(), gens(3, &[1, 2]));
        assert_eq!(p("213546").inverse_descents(), gens(5, &[1, 4]));
        assert_eq!(p("213546").rank(), 2);
    }

    #[test]
    fn from_inversion_set_roundtrip_and_rejects() {
        let s = InversionSet::from_pairs(4, [(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(Permutation::from_inversion_set(&s).unwrap(), p("3214"));
        let e = InversionSet::empty(5).unwrap();
        assert_eq!(
            Permutation::from_inversion_set(&e).unwrap(),
            Permutation::identity(5).unwrap()
        );
        let bad = InversionSet::from_pairs(3, [(1, 2), (2, 3)]).unwrap();
        assert_eq!(
            Permutation::from_inversion_set(&bad),
            Err(Error::NotBiclosed)
        );
    }

    #[test]
    fn leq_examples() {
        assert!(p("3214").leq(&p("3241")).unwrap());
        assert!(!p("2431").leq(&p("4213")).unwrap());
        assert!(!p("4213").leq(&p("2431")).unwrap());
        assert!(p("2431").leq(&p("2431")).unwrap());
        assert!(matches!(
            p("123").leq(&p("1234")),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn incomparable_with_equal_descents_regression() {
        // Same inverse descents, yet incomparable: the converse of
        // "p ⪯ q ⇒ ID(p) ⊆ ID(q)" fails.
        let (a, b) = (p("2431"), p("4213"));
        assert_eq!(a.inverse_descents(), b.inverse_descents());
        assert!(!a.is_below(&b) && !b.is_below(&a));
    }

    #[test]
    fn covers_examples() {
        let mut c: Vec<String> = p("1234").covers().iter().map(|q| q.to_string()).collect();
        c.sort();
        assert_eq!(c, vec!["1243", "1324", "2134"]);
        assert!(p("4321").covers().is_empty());
        let q = p("31524");
        let ascents = q.word().windows(2).filter(|w| w[0] < w[1]).count();
        assert_eq!(q.covers().len(), ascents);
        for c in q.covers() {
            assert_eq!(c.rank(), q.rank() + 1);
            assert!(q.is_below(&c));
        }
    }

    #[test]
    fn meet_examples() {
        assert_eq!(p("3214").meet(&p("3241")).unwrap(), p("3214"));
        assert_eq!(p("2431").meet(&p("4213")).unwrap(), p("2413"));
        let e = Permutation::identity(5).unwrap();
        assert_eq!(p("35142").meet(&e).unwrap(), e);
        assert!(p("123").meet(&p("1234")).is_err());
    }

    #[test]
    fn join_examples() {
        assert_eq!(p("2134").join(&p("1324")).unwrap(), p("3214"));
        let e = Permutation::identity(4).unwrap();
        assert_eq!(p("2413").join(&e).unwrap(), p("2413"));
        assert_eq!(p("2134").join(&p("4321")).unwrap(), p("4321"));
    }

    #[test]
    fn reverse_complement_examples() {
        let q = p("3214").reverse_complement();
        assert_eq!(q, p("4123"));
        assert_eq!(q.inverse_descents(), gens(3, &[3]));
        assert_eq!(
            q.inverse_descents(),
            p("3214").inverse_descents().complement()
        );
        assert_eq!(p("1234").reverse_complement(), p("4321"));
        let r = p("52413");
        assert_eq!(r.reverse_complement().reverse_complement(), r);
        assert_eq!(r.rank() + r.reverse_complement().rank(), pair_count(5));
    }

    #[test]
    fn text_form() {
        let q: Permutation = "10,3,2,1,4,5,6,7,8,9".parse().unwrap();
        assert_eq!(q.n(), 10);
        assert_eq!(q.to_string(), "10,3,2,1,4,5,6,7,8,9");
        assert!("1224".parse::<Permutation>().is_err());
        assert!("1a3".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert!("0123".parse::<Permutation>().is_err());
    }

    #[test]
    fn generator_set_basics() {
        let a = GeneratorSet::parse(5, "1,4").unwrap();
        assert!(a.is_separated());
        assert!(!gens(3, &[1, 2]).is_separated());
        assert!(GeneratorSet::empty(3).unwrap().is_separated());
        assert_eq!(a.to_line(), "1,4");
        assert_eq!(GeneratorSet::empty(2).unwrap().to_line(), "{}");
        assert_eq!(GeneratorSet::parse(4, "{}").unwrap().len(), 0);
        assert!(GeneratorSet::parse(3, "1,4").is_err());
        assert_eq!(gens(6, &[1, 2, 4, 5, 6]).runs(), vec![(1, 2), (4, 3)]);
        assert!(gens(4, &[1]) < gens(4, &[1, 2]));
        assert!(gens(4, &[1, 3]) < gens(4, &[2]));
    }

    #[test]
    fn largest_size_fits() {
        let w: Vec<u8> = (1..=16).rev().collect();
        let q = Permutation::from_word(&w).unwrap();
        assert_eq!(q.rank(), 120);
        assert_eq!(q.inverse_descents().len(), 15);
        assert_eq!(
            Permutation::from_inversion_set(&q.inversion_set()).unwrap(),
            q
        );
    }
}
