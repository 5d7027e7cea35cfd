use std::ffi::{CStr, CString};
use std::os::raw::{c_char, c_int};
use std::ptr;

use muclab_ffi::*;

const CHAIN: &str = "p cnf 3 4\n1 0\n-1 2 0\n-2 3 0\n-3 0\n";
const ODD3: &str = "p cnf 3 4\n1 2 3 0\n1 -2 -3 0\n-1 2 -3 0\n-1 -2 3 0\n";

fn parse(text: &str) -> *mut MuclabCnf {
    let c = CString::new(text).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { muclab_cnf_parse_dimacs(c.as_ptr(), &mut h) },
        MuclabStatus::Ok
    );
    assert!(!h.is_null());
    h
}

fn take_string(s: *mut c_char) -> String {
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { muclab_string_free(s) };
    owned
}

fn last_error() -> Option<String> {
    let p = muclab_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn parse_and_round_trip() {
    let h = parse(CHAIN);
    unsafe {
        assert_eq!(muclab_cnf_num_vars(h), 3);
        assert_eq!(muclab_cnf_num_clauses(h), 4);
        let mut s = ptr::null_mut();
        assert_eq!(muclab_cnf_write_dimacs(h, &mut s), MuclabStatus::Ok);
        assert_eq!(take_string(s), CHAIN);
        muclab_cnf_free(h);
    }
}

#[test]
fn parse_error_sets_message() {
    let bad = CString::new("p cnf 1 1\n2 0\n").unwrap();
    let mut h = ptr::null_mut();
    let status = unsafe { muclab_cnf_parse_dimacs(bad.as_ptr(), &mut h) };
    assert_eq!(status, MuclabStatus::Parse);
    assert!(h.is_null());
    assert!(last_error().is_some());

    // a successful call clears it
    let h = parse(CHAIN);
    assert!(last_error().is_none());
    unsafe { muclab_cnf_free(h) };
}

#[test]
fn null_arguments_are_rejected() {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { muclab_cnf_parse_dimacs(ptr::null(), &mut h) },
        MuclabStatus::NullPointer
    );
    let mut flag: c_int = 0;
    assert_eq!(
        unsafe { muclab_cnf_is_horn(ptr::null(), &mut flag) },
        MuclabStatus::NullPointer
    );
    assert_eq!(unsafe { muclab_cnf_num_vars(ptr::null()) }, 0);
    unsafe {
        muclab_cnf_free(ptr::null_mut());
        muclab_string_free(ptr::null_mut());
    }
}

#[test]
fn muc_checks_agree() {
    let h = parse(CHAIN);
    let odd = parse(ODD3);
    for method in [MuclabMucMethod::Deletion, MuclabMucMethod::Classification] {
        let mut flag: c_int = -1;
        let mut json = ptr::null_mut();
        assert_eq!(
            unsafe { muclab_is_muc(h, method, 0, &mut flag, &mut json) },
            MuclabStatus::Ok
        );
        assert_eq!(flag, 1);
        assert!(take_string(json).contains("\"is_muc\":true"));

        assert_eq!(
            unsafe { muclab_is_muc(odd, method, 0, &mut flag, ptr::null_mut()) },
            MuclabStatus::Ok
        );
        assert_eq!(flag, 0);
    }
    unsafe {
        muclab_cnf_free(h);
        muclab_cnf_free(odd);
    }
}

#[test]
fn classify_and_phase() {
    let h = parse(ODD3);
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(muclab_classify_json(h, 0, &mut s), MuclabStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(v["has_all_true"], true);

        let mut d = 0;
        assert_eq!(muclab_phase_difference(h, 1, 2, &mut d), MuclabStatus::Ok);
        assert_eq!(d, 2);
        assert_eq!(
            muclab_phase_difference(h, 0, 9, &mut d),
            MuclabStatus::IndexOutOfRange
        );

        let mut s = ptr::null_mut();
        assert_eq!(
            muclab_classify_json(h, 4, &mut s),
            MuclabStatus::BudgetExceeded
        );
        assert!(s.is_null());
        muclab_cnf_free(h);
    }
}

#[test]
fn orthogonalize_both_modes() {
    unsafe {
        let mut chain = ptr::null_mut();
        assert_eq!(muclab_gen_horn_chain(5, &mut chain), MuclabStatus::Ok);
        let mut flag: c_int = 0;
        assert_eq!(muclab_cnf_is_horn(chain, &mut flag), MuclabStatus::Ok);
        assert_eq!(flag, 1);

        let mut out = ptr::null_mut();
        assert_eq!(
            muclab_orthogonalize(chain, MuclabOrthoMode::Horn, 0, &mut out),
            MuclabStatus::Ok
        );
        assert_eq!(muclab_cnf_num_clauses(out), 7);
        assert_eq!(
            muclab_verify_orthogonal_muc(out, 0, &mut flag),
            MuclabStatus::Ok
        );
        assert_eq!(flag, 1);
        muclab_cnf_free(out);
        muclab_cnf_free(chain);

        let mut par = ptr::null_mut();
        assert_eq!(
            muclab_gen_parity_contradiction(4, 0, &mut par),
            MuclabStatus::Ok
        );
        assert_eq!(muclab_cnf_is_horn(par, &mut flag), MuclabStatus::Ok);
        assert_eq!(flag, 0);
        let mut out = ptr::null_mut();
        assert_eq!(
            muclab_orthogonalize(par, MuclabOrthoMode::Horn, 0, &mut out),
            MuclabStatus::NotHorn
        );
        assert_eq!(
            muclab_orthogonalize(par, MuclabOrthoMode::Generic, 5, &mut out),
            MuclabStatus::ClauseCapExceeded
        );
        assert_eq!(
            muclab_orthogonalize(par, MuclabOrthoMode::Generic, 0, &mut out),
            MuclabStatus::Ok
        );
        assert!(muclab_cnf_num_clauses(out) >= 8);
        assert_eq!(
            muclab_verify_orthogonal_muc(out, 0, &mut flag),
            MuclabStatus::Ok
        );
        assert_eq!(flag, 1);
        muclab_cnf_free(out);
        muclab_cnf_free(par);

        let mut bad = ptr::null_mut();
        assert_eq!(
            muclab_gen_parity_contradiction(2, 0, &mut bad),
            MuclabStatus::InvalidArgument
        );
        assert!(bad.is_null());
    }
}

#[test]
fn satisfiable_input_is_refused() {
    let h = parse("p cnf 2 1\n1 2 0\n");
    let mut out = ptr::null_mut();
    let status = unsafe { muclab_orthogonalize(h, MuclabOrthoMode::Generic, 0, &mut out) };
    assert_eq!(status, MuclabStatus::InputSatisfiable);
    unsafe { muclab_cnf_free(h) };
}
