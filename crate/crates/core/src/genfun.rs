//! Dense integer polynomials and the closed forms built from them: rank
//! generating functions of the weak order, Gaussian binomials, partition
//! numbers, the bound formulas used by the level EKR arguments, and the
//! `ρ(t)` construction with its upset generating function.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::perm::{pair_count, Permutation, MAX_N};

/// A univariate polynomial with unbounded integer coefficients.
///
/// `coeffs[k]` is the coefficient of `x^k`. The last stored coefficient is
/// never zero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self {
            coeffs: vec![BigInt::one()],
        }
    }

    pub fn from_coeffs<T: Into<BigInt>>(coeffs: Vec<T>) -> Self {
        let mut p = Self {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    /// `c · x^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c.into());
        Self::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Coefficient of `x^k` as a `u64`, when it is non-negative and fits.
    pub fn coeff_u64(&self, k: usize) -> Option<u64> {
        self.coeffs.get(k).map_or(Some(0), ToPrimitive::to_u64)
    }

    /// Value at `x = 1`.
    pub fn sum_of_coeffs(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Quotient `self / divisor`, required to be exact over the integers.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        let lead = divisor
            .coeffs
            .last()
            .ok_or_else(|| invalid("division by the zero polynomial"))?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return if self.is_zero() {
                Ok(Self::zero())
            } else {
                Err(Error::NonExactDivision)
            };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            if !(top % lead).is_zero() {
                return Err(Error::NonExactDivision);
            }
            let q = top / lead;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonExactDivision);
        }
        Ok(Self::from_coeffs(quot))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }

    /// Reads a JSON integer array (index = exponent).
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let err = || Error::Parse {
            what: "polynomial",
            input: v.to_string(),
        };
        let arr = v.as_array().ok_or_else(err)?;
        let coeffs = arr
            .iter()
            .map(|c| match c {
                serde_json::Value::Number(num) => {
                    BigInt::from_str(&num.to_string()).map_err(|_| err())
                }
                _ => Err(err()),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        IntPolynomial::from_coeffs::<BigInt>(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        IntPolynomial::from_coeffs::<BigInt>(coeffs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs::<BigInt>(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    /// Human form such as `1 + 3x + 5x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.sign() == Sign::Minus;
            let mag = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if unit => write!(f, "x^{k}")?,
                _ => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Serialize for IntPolynomial {
    /// JSON integer array, exact for any coefficient size.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| {
            serde_json::Number::from_str(&c.to_string()).expect("integer literal is a JSON number")
        }))
    }
}

/// `[m] = 1 + x + ... + x^{m-1}`; `[0]` is the zero polynomial.
pub fn q_int(m: usize) -> IntPolynomial {
    IntPolynomial::from_coeffs(vec![1u32; m])
}

/// `[n]! = [1][2]...[n]`, the rank generating function of `Sym(n)`.
pub fn q_factorial(n: usize) -> IntPolynomial {
    (1..=n).fold(IntPolynomial::one(), |acc, m| &acc * &q_int(m))
}

/// Gaussian binomial `[m choose k]`, via the q-Pascal rule
/// `[m,k] = [m-1,k-1] + x^k [m-1,k]`. Zero when `k > m`.
pub fn q_binomial(m: usize, k: usize) -> IntPolynomial {
    if k > m {
        return IntPolynomial::zero();
    }
    let k = k.min(m - k);
    let mut row: Vec<IntPolynomial> = vec![IntPolynomial::one()];
    for top in 1..=m {
        let width = top.min(k);
        let mut next = Vec::with_capacity(width + 1);
        for j in 0..=width {
            let left = if j > 0 {
                row[j - 1].clone()
            } else {
                IntPolynomial::zero()
            };
            let right = row.get(j).map(|p| p.shift(j)).unwrap_or_default();
            next.push(&left + &right);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// Product of Gaussian binomials `[m; p_1][m - p_1; p_2]...`, with `m = Σ p_i`:
/// the inversion generating function of words with `p_i` copies of letter `i`.
pub fn q_multinomial(parts: &[usize]) -> Result<IntPolynomial> {
    if parts.is_empty() {
        return Err(invalid("q-multinomial needs at least one part"));
    }
    let mut remaining: usize = parts.iter().sum();
    let mut acc = IntPolynomial::one();
    for &p in parts {
        acc = &acc * &q_binomial(remaining, p);
        remaining -= p;
    }
    Ok(acc)
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` with signed upper index: zero if `n < 0` or `k < 0` or `k > n`.
fn binomial_i(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 {
        BigUint::zero()
    } else {
        binomial(n as u64, k as u64)
    }
}

/// `p(0), ..., p(upto)` from Euler's pentagonal-number recurrence.
pub fn partition_counts(upto: usize) -> Vec<BigUint> {
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for n in 1..=upto {
        let mut acc = BigInt::zero();
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > n {
                break;
            }
            let g2 = k * (3 * k + 1) / 2;
            let mut term = p[n - g1].clone();
            if g2 <= n {
                term += &p[n - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p.into_iter()
        .map(|v| v.to_biguint().expect("partition numbers are non-negative"))
        .collect()
}

/// The number of partitions of `ell`.
pub fn partition_count(ell: usize) -> BigUint {
    partition_counts(ell).pop().expect("non-empty")
}

/// Relative inflation applied to floating-point bounds so they only round up.
const ROUND_UP: f64 = 1.0 + 1e-12;

/// `C(ℓ+k-1, k-1) · exp(kπ√(2ℓ/3))`, the universal cap on the number of
/// rank-`ℓ` permutations sharing a `k`-element inverse-descent set.
pub fn multiplicity_bound(k: usize, ell: usize) -> Result<f64> {
    if k == 0 {
        return Err(invalid("multiplicity bound needs k >= 1"));
    }
    let c = binomial((ell + k - 1) as u64, (k - 1) as u64)
        .to_f64()
        .unwrap_or(f64::INFINITY);
    let e = (k as f64 * std::f64::consts::PI * (2.0 * ell as f64 / 3.0).sqrt()).exp();
    Ok(c * e * ROUND_UP)
}

/// [`multiplicity_bound`] rounded up to an integer.
pub fn multiplicity_bound_ceil(k: usize, ell: usize) -> Result<BigUint> {
    let b = multiplicity_bound(k, ell)?;
    BigUint::from_f64(b.ceil()).ok_or_else(|| invalid("bound exceeds floating-point range"))
}

/// Sizes attached to the rank-one star `up(g_i) ∩ B_r(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarBounds {
    pub n: usize,
    pub r: usize,
    /// `C(n-1, 2)`, only for `r = 3`.
    pub level3_exact: Option<BigUint>,
    /// `C(n-2, r-1)`, a lower bound for every `r`.
    pub lower: BigUint,
    /// The exact size: coefficient of `x^{r-1}` in `[n]!/(1+x)`.
    pub star_size: BigUint,
}

/// Star-size formulas for level `r` of `B(n)`.
pub fn star_bounds(n: usize, r: usize) -> Result<StarBounds> {
    if n < 3 {
        return Err(invalid(format!("star bounds need n >= 3, got {n}")));
    }
    if r == 0 || r > pair_count(n) {
        return Err(Error::RankOutOfRange {
            rank: r,
            max: pair_count(n),
        });
    }
    let star = star_genfun(n)?;
    Ok(StarBounds {
        n,
        r,
        level3_exact: (r == 3).then(|| binomial(n as u64 - 1, 2)),
        lower: binomial(n as u64 - 2, r as u64 - 1),
        star_size: star
            .coeff(r - 1)
            .to_biguint()
            .expect("coefficients are non-negative"),
    })
}

/// `[n]! / (1 + x)`: rank generating function of the upset of a rank-one
/// element, shifted down by one.
pub fn star_genfun(n: usize) -> Result<IntPolynomial> {
    if n < 2 {
        return Err(invalid("star generating function needs n >= 2"));
    }
    q_factorial(n).exact_divide(&q_int(2))
}

/// Hilton–Milner cap for intersecting `k`-sets of an `m`-set with empty
/// common intersection: `C(m-1,k-1) - C(m-k-1,k-1) + 1`. Requires `m >= 2k`.
pub fn hm_bound(m: usize, k: usize) -> Result<BigUint> {
    if k == 0 || m < 2 * k {
        return Err(invalid(format!(
            "Hilton-Milner bound needs 1 <= k, m >= 2k (m={m}, k={k})"
        )));
    }
    let (m, k) = (m as i64, k as i64);
    Ok(binomial_i(m - 1, k - 1) - binomial_i(m - k - 1, k - 1) + 1u32)
}

/// Frankl's cap for `k`-sets of an `m`-set without `r+1` pairwise disjoint
/// members: `C(m,k) - C(m-r,k)`. Requires `m >= (2r+1)k - r`.
pub fn frankl_bound(m: usize, k: usize, r: usize) -> Result<BigUint> {
    if r > m || (m as i64) < (2 * r as i64 + 1) * k as i64 - r as i64 {
        return Err(invalid(format!(
            "Frankl bound needs m >= (2r+1)k - r (m={m}, k={k}, r={r})"
        )));
    }
    Ok(binomial(m as u64, k as u64) - binomial((m - r) as u64, k as u64))
}

/// Size of `n` beyond which the counting argument shows level `r` is EKR:
/// `(r-2) C(2r-2, r-2) e^{3 r^{3/2}} r (r-2) + r`, rounded up.
pub fn rank_r_threshold(r: usize) -> Result<BigUint> {
    if r < 2 {
        return Err(invalid("threshold is defined for r >= 2"));
    }
    let rf = r as f64;
    let c = binomial(2 * r as u64 - 2, r as u64 - 2)
        .to_f64()
        .unwrap_or(f64::INFINITY);
    let head = (rf - 2.0) * c * (3.0 * rf.powf(1.5)).exp() * rf * (rf - 2.0);
    if !head.is_finite() {
        return Err(invalid(format!(
            "threshold for r={r} exceeds floating-point range"
        )));
    }
    let head = BigUint::from_f64((head * ROUND_UP).ceil()).expect("finite, non-negative");
    Ok(head + r)
}

/// The rank decomposition `t = (n-1) + ... + (n-i) + (n-(i+j+1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RhoDecomposition {
    pub n: usize,
    pub t: usize,
    pub i: usize,
    pub j: usize,
}

fn check_rho(n: usize, t: usize) -> Result<()> {
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::SizeOutOfRange { n, max: MAX_N });
    }
    if t > pair_count(n) {
        return Err(Error::RankOutOfRange {
            rank: t,
            max: pair_count(n),
        });
    }
    Ok(())
}

/// `ρ(t)`: starting from the identity, `t` times swap the largest entry that
/// has a smaller entry immediately to its left with that neighbour.
pub fn rho(n: usize, t: usize) -> Result<Permutation> {
    check_rho(n, t)?;
    let mut word: Vec<u8> = (1..=n as u8).collect();
    for _ in 0..t {
        let pos = (1..n)
            .filter(|&i| word[i - 1] < word[i])
            .max_by_key(|&i| word[i])
            .expect("a non-top permutation has an ascent");
        word.swap(pos - 1, pos);
    }
    Permutation::from_word(&word)
}

/// Splits `t` into whole blocks `(n-1) + ... + (n-i)` plus a final partial
/// block `n-(i+j+1)`.
///
/// For `t >= 1`, `i` is the largest count of whole blocks that leaves a
/// positive final block. For `t = 0` there is no block and `j = n-1`.
pub fn rho_decompose(n: usize, t: usize) -> Result<RhoDecomposition> {
    check_rho(n, t)?;
    if t == 0 {
        return Ok(RhoDecomposition {
            n,
            t,
            i: 0,
            j: n - 1,
        });
    }
    let mut i = 0;
    let mut whole = 0;
    while whole + (n - i - 1) < t {
        whole += n - i - 1;
        i += 1;
    }
    let last = t - whole;
    let j = n - i - 1 - last;
    Ok(RhoDecomposition { n, t, i, j })
}

/// `⟨n, n-1, ..., n-i+1, 1, ..., j, n-i, j+1, ..., n-i-1⟩`.
pub fn rho_closed_form(d: &RhoDecomposition) -> Result<Permutation> {
    let (n, i, j) = (d.n, d.i, d.j);
    let mut word: Vec<u8> = (0..i).map(|s| (n - s) as u8).collect();
    word.extend(1..=j as u8);
    word.push((n - i) as u8);
    word.extend((j + 1) as u8..(n - i) as u8);
    Permutation::from_word(&word)
}

/// Rank generating function of `down(ρ(t))`: `[n][n-1]...[n-i+1][n-i-j]`.
pub fn rho_downset_genfun(n: usize, t: usize) -> Result<IntPolynomial> {
    let d = rho_decompose(n, t)?;
    let head = (n - d.i + 1..=n).fold(IntPolynomial::one(), |acc, m| &acc * &q_int(m));
    Ok(&head * &q_int(n - d.i - d.j))
}

/// Rank generating function of `up(ρ(t))`, shifted so `x^0` is rank `t`:
/// `[1][2]...[n-i]` with the single factor `[n-i-j]` left out.
pub fn rho_upset_genfun(n: usize, t: usize) -> Result<IntPolynomial> {
    let d = rho_decompose(n, t)?;
    let skip = n - d.i - d.j;
    Ok((1..=n - d.i)
        .filter(|&m| m != skip)
        .fold(IntPolynomial::one(), |acc, m| &acc * &q_int(m)))
}
