use std::ffi::{CStr, CString};
use std::ptr;

use bruhat_ekr_ffi::*;

unsafe fn perm(word: &str) -> *mut BruhatPerm {
    let c = CString::new(word).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(bruhat_perm_parse(c.as_ptr(), &mut p), BruhatStatus::Ok);
    p
}

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    bruhat_string_free(s);
    out
}

unsafe fn word(p: *const BruhatPerm) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(bruhat_perm_to_string(p, &mut s), BruhatStatus::Ok);
    take_string(s)
}

#[test]
fn perm_round_trip_and_queries() {
    unsafe {
        let p = perm("3142");
        assert_eq!(word(p), "3142");
        let mut n = 0;
        assert_eq!(bruhat_perm_size(p, &mut n), BruhatStatus::Ok);
        assert_eq!(n, 4);
        let mut rank = 0;
        bruhat_perm_rank(p, &mut rank);
        assert_eq!(rank, 3);
        let mut bits = 0;
        bruhat_perm_inverse_descents(p, &mut bits);
        // only 3 sits left of 2
        assert_eq!(bits, 0b010);
        let mut rc = ptr::null_mut();
        bruhat_perm_reverse_complement(p, &mut rc);
        assert_eq!(word(rc), "2413");
        bruhat_perm_free(rc);
        bruhat_perm_free(p);
    }
}

#[test]
fn meet_join_leq() {
    unsafe {
        let p = perm("2143");
        let q = perm("1324");
        let (mut m, mut j) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(bruhat_perm_meet(p, q, &mut m), BruhatStatus::Ok);
        assert_eq!(bruhat_perm_join(p, q, &mut j), BruhatStatus::Ok);
        assert_eq!(word(m), "1234");
        assert_eq!(word(j), "4321");
        let mut below = false;
        bruhat_perm_leq(m, p, &mut below);
        assert!(below);
        bruhat_perm_leq(p, q, &mut below);
        assert!(!below);
        let mut id = ptr::null_mut();
        bruhat_perm_identity(4, &mut id);
        assert_eq!(word(id), "1234");
        for h in [p, q, m, j, id] {
            bruhat_perm_free(h);
        }
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let bad = CString::new("1123").unwrap();
        let mut p = ptr::null_mut();
        assert_eq!(bruhat_perm_parse(bad.as_ptr(), &mut p), BruhatStatus::Parse);
        assert!(p.is_null());
        let msg = CStr::from_ptr(bruhat_last_error()).to_str().unwrap();
        assert!(msg.contains("not a permutation"));

        let a = perm("123");
        let b = perm("1234");
        let mut m = ptr::null_mut();
        assert_eq!(
            bruhat_perm_meet(a, b, &mut m),
            BruhatStatus::InvalidArgument
        );
        assert_eq!(
            bruhat_perm_meet(ptr::null(), b, &mut m),
            BruhatStatus::NullPointer
        );
        assert_eq!(
            bruhat_perm_rank(a, ptr::null_mut()),
            BruhatStatus::NullPointer
        );

        let mut rank = 0;
        assert_eq!(bruhat_perm_rank(a, &mut rank), BruhatStatus::Ok);
        assert!(bruhat_last_error().is_null());

        assert_eq!(bruhat_rho(4, 7, &mut m), BruhatStatus::OutOfRange);
        bruhat_perm_free(a);
        bruhat_perm_free(b);
        bruhat_perm_free(ptr::null_mut());
        bruhat_string_free(ptr::null_mut());
    }
}

#[test]
fn counting() {
    unsafe {
        let mut c = 0;
        assert_eq!(bruhat_level_count(4, 3, &mut c), BruhatStatus::Ok);
        assert_eq!(c, 6);
        assert_eq!(bruhat_level_count(4, 7, &mut c), BruhatStatus::Ok);
        assert_eq!(c, 0);
        // {g1, g4} in Sym(6)
        let set = 0b1001;
        assert_eq!(bruhat_multiplicity(6, set, 2, &mut c), BruhatStatus::Ok);
        assert_eq!(c, 1);
        bruhat_multiplicity(6, set, 3, &mut c);
        assert_eq!(c, 3);
        assert_eq!(
            bruhat_multiplicity(6, 1 << 7, 3, &mut c),
            BruhatStatus::OutOfRange
        );

        let mut p = ptr::null_mut();
        assert_eq!(bruhat_pi_minimal(6, set, &mut p), BruhatStatus::Ok);
        assert_eq!(word(p), "213546");
        bruhat_perm_free(p);
        bruhat_rho(6, 8, &mut p);
        assert_eq!(word(p), "615234");
        bruhat_perm_free(p);
    }
}

#[test]
fn polynomials() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(bruhat_q_factorial(4, &mut f), BruhatStatus::Ok);
        let mut d = 0;
        bruhat_poly_degree(f, &mut d);
        assert_eq!(d, 6);
        let mut s = ptr::null_mut();
        bruhat_poly_coeff(f, 3, &mut s);
        assert_eq!(take_string(s), "6");
        bruhat_poly_to_json(f, &mut s);
        assert_eq!(take_string(s), "[1,3,5,6,5,3,1]");
        bruhat_poly_free(f);

        bruhat_q_factorial(30, &mut f);
        bruhat_poly_coeff(f, 200, &mut s);
        let big = take_string(s);
        assert!(big.len() > 20, "{big}");
        bruhat_poly_free(f);
    }
}

#[test]
fn search_outcomes() {
    unsafe {
        let mut o = ptr::null_mut();
        assert_eq!(
            bruhat_search_level(6, 3, 1, 0, 0.0, &mut o),
            BruhatStatus::Ok
        );
        let mut v = 0;
        bruhat_outcome_optimum(o, &mut v);
        assert_eq!(v, 10);
        let (mut optimal, mut star) = (false, false);
        bruhat_outcome_optimal(o, &mut optimal);
        bruhat_outcome_is_star(o, &mut star);
        assert!(optimal && star);
        let mut s = ptr::null_mut();
        bruhat_outcome_to_json(o, &mut s);
        let json = take_string(s);
        assert!(json.contains("\"optimum\":10"));
        bruhat_outcome_free(o);

        assert_ne!(
            bruhat_search_level(3, 9, 1, 0, 0.0, &mut o),
            BruhatStatus::Ok
        );
        assert!(!bruhat_last_error().is_null());
    }
}

#[test]
fn verify_by_tag() {
    unsafe {
        let tag = CString::new("thm-4.1").unwrap();
        let mut s = ptr::null_mut();
        let mut code = -1;
        assert_eq!(
            bruhat_verify_json(tag.as_ptr(), 4, -1, -1, -1, -1, &mut s, &mut code),
            BruhatStatus::Ok
        );
        assert_eq!(code, 0);
        assert!(take_string(s).contains("\"verdict\":\"pass\""));

        let tag = CString::new("cnj-6.2").unwrap();
        bruhat_verify_json(tag.as_ptr(), 4, 5, 1, -1, -1, &mut s, &mut code);
        assert_eq!(code, 1);
        bruhat_string_free(s);

        let tag = CString::new("nope").unwrap();
        assert_eq!(
            bruhat_verify_json(tag.as_ptr(), -1, -1, -1, -1, -1, &mut s, &mut code),
            BruhatStatus::InvalidArgument
        );
    }
}

#[test]
fn header_declares_the_api() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/bruhat_ekr.h"))
            .unwrap();
    for name in [
        "typedef struct BruhatPerm BruhatPerm;",
        "BRUHAT_STATUS_OK = 0",
        "bruhat_perm_parse(",
        "bruhat_perm_meet(",
        "bruhat_perm_join(",
        "bruhat_pi_minimal(",
        "bruhat_multiplicity(",
        "bruhat_q_factorial(",
        "bruhat_search_level(",
        "bruhat_verify_json(",
        "bruhat_last_error(",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"bruhat_ekr.h\"\nint main(void) {\n  BruhatPerm *p = 0;\n  BruhatStatus s = bruhat_perm_identity(4, &p);\n  bruhat_perm_free(p);\n  return s == BRUHAT_STATUS_OK ? 0 : 1;\n}\n",
    )
    .unwrap();
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    for (compiler, lang) in [("cc", "c"), ("c++", "c++")] {
        let status = std::process::Command::new(compiler)
            .args([
                "-fsyntax-only",
                "-Wall",
                "-Werror",
                "-x",
                lang,
                "-I",
                include,
            ])
            .arg(&src)
            .status()
            .unwrap_or_else(|e| panic!("{compiler}: {e}"));
        assert!(status.success(), "{compiler} rejected the header");
    }
}
