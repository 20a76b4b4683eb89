//! C ABI over `bruhat-ekr`.
//!
//! Objects are opaque heap handles released with their `_free` function.
//! Every fallible call returns a [`BruhatStatus`]; on failure the message is
//! available from [`bruhat_last_error`] until the next call on the same
//! thread. Strings returned through `char **` are owned by the caller and
//! released with [`bruhat_string_free`].
//!
//! Pointer arguments must be null or valid for their type; handles must not
//! be used after they are freed.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;
use std::time::Duration;

use bruhat_ekr::genfun::{q_factorial, rho};
use bruhat_ekr::levels::multiplicity;
use bruhat_ekr::search::{max_intersecting_level, Budget};
use bruhat_ekr::{
    pi_minimal, Error, GeneratorSet, IntPolynomial, Permutation, SearchConfig, SearchOutcome,
    VerifyParams,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruhatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    OutOfRange = 4,
    TooLarge = 5,
    Overflow = 6,
    Panic = 7,
}

pub struct BruhatPerm(Permutation);
pub struct BruhatPoly(IntPolynomial);
pub struct BruhatOutcome(SearchOutcome);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> BruhatStatus {
    match e {
        Error::Parse { .. } | Error::NotABijection(_) => BruhatStatus::Parse,
        Error::SizeOutOfRange { .. }
        | Error::IndexOutOfRange { .. }
        | Error::RankOutOfRange { .. } => BruhatStatus::OutOfRange,
        Error::TooLarge { .. } => BruhatStatus::TooLarge,
        _ => BruhatStatus::InvalidArgument,
    }
}

struct Fail(BruhatStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(BruhatStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records any failure and converts panics into a status.
fn guard<F: FnOnce() -> Result<(), Fail> + UnwindSafe>(f: F) -> BruhatStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(f) {
        Ok(Ok(())) => BruhatStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BruhatStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(BruhatStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c =
        CString::new(s).map_err(|_| Fail(BruhatStatus::InvalidArgument, "interior nul".into()))?;
    write_out(out, c.into_raw())
}

unsafe fn write_perm(out: *mut *mut BruhatPerm, p: Permutation) -> Result<(), Fail> {
    write_out(out, Box::into_raw(Box::new(BruhatPerm(p))))
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library.
#[no_mangle]
pub extern "C" fn bruhat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `"3142"` or `"1,2,10,3,..."`.
#[no_mangle]
pub unsafe extern "C" fn bruhat_perm_parse(
    word: *const c_char,
    out: *mut *mut BruhatPerm,
) -> BruhatStatus {
    guard(|| {
        let p: Permutation = read_str(word, "word")?.parse()?;
        write_perm(out, p)
    })
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_perm_identity(n: usize, out: *mut *mut BruhatPerm) -> BruhatStatus {
    guard(|| write_perm(out, Permutation::identity(n)?))
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_perm_free(p: *mut BruhatPerm) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_perm_size(p: *const BruhatPerm, out: *mut usize) -> BruhatStatus {
    guard(|| write_out(out, deref(p, "perm")?.0.n()))
}

/// Number of inversions.
#[no_mangle]
pub unsafe extern "C" fn bruhat_perm_rank(p: *const BruhatPerm, out: *mut usize) -> BruhatStatus {
    guard(|| write_out(out, deref(p, "perm")?.0.rank()))
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_perm_to_string(
    p: *const BruhatPerm,
    out: *mut *mut c_char,
) -> BruhatStatus {
    guard(|| write_string(out, deref(p, "perm")?.0.to_string()))
}

/// Inverse-descent set as a bit mask: bit `i - 1` is generator `i`.
#[no_mangle]
pub unsafe extern "C" fn bruhat_perm_inverse_descents(
    p: *const BruhatPerm,
    out: *mut u32,
) -> BruhatStatus {
    guard(|| write_out(out, deref(p, "perm")?.0.inverse_descents().bits()))
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_perm_meet(
    p: *const BruhatPerm,
    q: *const BruhatPerm,
    out: *mut *mut BruhatPerm,
) -> BruhatStatus {
    guard(|| write_perm(out, deref(p, "p")?.0.meet(&deref(q, "q")?.0)?))
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_perm_join(
    p: *const BruhatPerm,
    q: *const BruhatPerm,
    out: *mut *mut BruhatPerm,
) -> BruhatStatus {
    guard(|| write_perm(out, deref(p, "p")?.0.join(&deref(q, "q")?.0)?))
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_perm_leq(
    p: *const BruhatPerm,
    q: *const BruhatPerm,
    out: *mut bool,
) -> BruhatStatus {
    guard(|| write_out(out, deref(p, "p")?.0.leq(&deref(q, "q")?.0)?))
}

/// Reverses the word.
#[no_mangle]
pub unsafe extern "C" fn bruhat_perm_reverse_complement(
    p: *const BruhatPerm,
    out: *mut *mut BruhatPerm,
) -> BruhatStatus {
    guard(|| write_perm(out, deref(p, "perm")?.0.reverse_complement()))
}

fn generator_set(n: usize, bits: u32) -> Result<GeneratorSet, Fail> {
    if n < 2 {
        return Err(Fail(
            BruhatStatus::OutOfRange,
            format!("n = {n} has no generators"),
        ));
    }
    Ok(GeneratorSet::from_bits(n - 1, bits)?)
}

/// Minimal permutation of `Sym(n)` whose inverse descents contain `bits`.
#[no_mangle]
pub unsafe extern "C" fn bruhat_pi_minimal(
    n: usize,
    bits: u32,
    out: *mut *mut BruhatPerm,
) -> BruhatStatus {
    guard(|| {
        let a = generator_set(n, bits)?;
        let p = pi_minimal(&a)?;
        if p.n() != n {
            return Err(Fail(
                BruhatStatus::InvalidArgument,
                "ground mismatch".into(),
            ));
        }
        write_perm(out, p)
    })
}

/// `|B_ell(n)|`, read from `[n]!`.
#[no_mangle]
pub unsafe extern "C" fn bruhat_level_count(n: usize, ell: usize, out: *mut u64) -> BruhatStatus {
    guard(|| {
        if !(1..=bruhat_ekr::perm::MAX_N).contains(&n) {
            return Err(Error::SizeOutOfRange {
                n,
                max: bruhat_ekr::perm::MAX_N,
            }
            .into());
        }
        let c = q_factorial(n)
            .coeff_u64(ell)
            .ok_or_else(|| Fail(BruhatStatus::Overflow, "count exceeds u64".into()))?;
        write_out(out, c)
    })
}

/// Rank-`ell` permutations of `Sym(n)` whose inverse-descent mask is exactly `bits`.
#[no_mangle]
pub unsafe extern "C" fn bruhat_multiplicity(
    n: usize,
    bits: u32,
    ell: usize,
    out: *mut u64,
) -> BruhatStatus {
    guard(|| write_out(out, multiplicity(&generator_set(n, bits)?, n, ell)?))
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_rho(n: usize, t: usize, out: *mut *mut BruhatPerm) -> BruhatStatus {
    guard(|| write_perm(out, rho(n, t)?))
}

/// `[n]!` as a polynomial handle.
#[no_mangle]
pub unsafe extern "C" fn bruhat_q_factorial(n: usize, out: *mut *mut BruhatPoly) -> BruhatStatus {
    guard(|| {
        if n > bruhat_ekr::perm::MAX_N * 4 {
            return Err(Fail(
                BruhatStatus::TooLarge,
                format!("n = {n} is too large"),
            ));
        }
        write_out(out, Box::into_raw(Box::new(BruhatPoly(q_factorial(n)))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_poly_free(p: *mut BruhatPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Degree, or -1 for the zero polynomial.
#[no_mangle]
pub unsafe extern "C" fn bruhat_poly_degree(p: *const BruhatPoly, out: *mut i64) -> BruhatStatus {
    guard(|| write_out(out, deref(p, "poly")?.0.degree().map_or(-1, |d| d as i64)))
}

/// Coefficient of `x^k` in decimal.
#[no_mangle]
pub unsafe extern "C" fn bruhat_poly_coeff(
    p: *const BruhatPoly,
    k: usize,
    out: *mut *mut c_char,
) -> BruhatStatus {
    guard(|| write_string(out, deref(p, "poly")?.0.coeff(k).to_string()))
}

/// Coefficient array as JSON.
#[no_mangle]
pub unsafe extern "C" fn bruhat_poly_to_json(
    p: *const BruhatPoly,
    out: *mut *mut c_char,
) -> BruhatStatus {
    guard(|| write_string(out, deref(p, "poly")?.0.to_json().to_string()))
}

fn config(max_nodes: u64, max_secs: f64) -> SearchConfig {
    SearchConfig {
        budget: Budget {
            max_nodes: (max_nodes > 0).then_some(max_nodes),
            max_time: (max_secs.is_finite() && max_secs > 0.0)
                .then(|| Duration::from_secs_f64(max_secs)),
        },
        parallel: true,
    }
}

/// Largest `t`-intersecting family in `B_r(n)`. `max_nodes == 0` and
/// `max_secs <= 0` mean unlimited. An exhausted budget still returns an
/// outcome, with `optimal` false.
#[no_mangle]
pub unsafe extern "C" fn bruhat_search_level(
    n: usize,
    r: usize,
    t: usize,
    max_nodes: u64,
    max_secs: f64,
    out: *mut *mut BruhatOutcome,
) -> BruhatStatus {
    guard(|| {
        let o = max_intersecting_level(n, r, t, &config(max_nodes, max_secs))?;
        write_out(out, Box::into_raw(Box::new(BruhatOutcome(o))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_outcome_free(o: *mut BruhatOutcome) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_outcome_optimum(
    o: *const BruhatOutcome,
    out: *mut u64,
) -> BruhatStatus {
    guard(|| write_out(out, deref(o, "outcome")?.0.optimum))
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_outcome_optimal(
    o: *const BruhatOutcome,
    out: *mut bool,
) -> BruhatStatus {
    guard(|| write_out(out, deref(o, "outcome")?.0.optimal))
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_outcome_is_star(
    o: *const BruhatOutcome,
    out: *mut bool,
) -> BruhatStatus {
    guard(|| write_out(out, deref(o, "outcome")?.0.is_star))
}

#[no_mangle]
pub unsafe extern "C" fn bruhat_outcome_to_json(
    o: *const BruhatOutcome,
    out: *mut *mut c_char,
) -> BruhatStatus {
    guard(|| write_string(out, deref(o, "outcome")?.0.to_json().to_string()))
}

fn opt(v: i64) -> Option<usize> {
    usize::try_from(v).ok()
}

/// Runs a verification suite by tag. Negative parameters select the suite
/// default. `exit_code` receives 0 (pass or consistent), 1 (failure) or 3
/// (budget).
#[no_mangle]
pub unsafe extern "C" fn bruhat_verify_json(
    tag: *const c_char,
    n: i64,
    r: i64,
    t: i64,
    m: i64,
    k: i64,
    out_json: *mut *mut c_char,
    exit_code: *mut i32,
) -> BruhatStatus {
    guard(|| {
        let tag = read_str(tag, "tag")?;
        let params = VerifyParams {
            n: opt(n),
            r: opt(r),
            t: opt(t),
            m: opt(m),
            k: opt(k),
        };
        let report =
            bruhat_ekr::search::verify::verify_tag(tag, &params, &SearchConfig::default())?;
        write_out(exit_code, report.exit_code())?;
        write_string(out_json, report.to_json().to_string())
    })
}
