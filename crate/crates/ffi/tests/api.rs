use std::ffi::CStr;
use std::ptr;

use stiefel_mw_ffi::*;

fn new(n: u32, k: u32, path: SmwPath, conv: Option<&SmwConventions>) -> Result<*mut SmwCohomology, SmwStatus> {
    let mut h = ptr::null_mut();
    let conv = conv.map_or(ptr::null(), |c| c as *const _);
    match unsafe { smw_cohomology_new(n, k, path as u32, conv, &mut h) } {
        SmwStatus::Ok => Ok(h),
        s => {
            assert!(h.is_null());
            Err(s)
        }
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(smw_last_error_message()) }.to_str().unwrap().to_owned()
}

fn terms(h: *const SmwCohomology) -> Vec<SmwTerm> {
    let mut len = 0;
    assert_eq!(unsafe { smw_cohomology_len(h, &mut len) }, SmwStatus::Ok);
    (0..len)
        .map(|i| {
            let mut t = SmwTerm { kind: SmwRingKind::Mw, p: 0, q: 0, mult: 0 };
            assert_eq!(unsafe { smw_cohomology_term(h, i, &mut t) }, SmwStatus::Ok);
            t
        })
        .collect()
}

fn group_at(h: *const SmwCohomology, p: i64, q: i64, flags: Option<&SmwVanishingFlags>) -> String {
    let flags = flags.map_or(ptr::null(), |f| f as *const _);
    let mut needed = 0;
    let status = unsafe { smw_cohomology_group_at(h, p, q, flags, ptr::null_mut(), 0, &mut needed) };
    assert_eq!(status, SmwStatus::BufferTooSmall);
    let mut buf = vec![0u8; needed];
    let status = unsafe { smw_cohomology_group_at(h, p, q, flags, buf.as_mut_ptr().cast(), buf.len(), &mut needed) };
    assert_eq!(status, SmwStatus::Ok);
    CStr::from_bytes_with_nul(&buf).unwrap().to_str().unwrap().to_owned()
}

#[test]
fn three_paths_agree_through_the_abi() {
    let mut conv = SmwConventions { cone_shift_delta: 0, cone_square_twist: 0, cone_square_shift: 0 };
    assert_eq!(unsafe { smw_conventions_default(&mut conv) }, SmwStatus::Ok);
    assert_eq!(conv, SmwConventions { cone_shift_delta: -1, cone_square_twist: 1, cone_square_shift: 2 });

    for (n, k) in [(5, 2), (7, 3), (7, 4), (10, 6)] {
        let a = new(n, k, SmwPath::ClosedForm, None).unwrap();
        let b = new(n, k, SmwPath::Inductive, None).unwrap();
        let c = new(n, k, SmwPath::Motive, Some(&conv)).unwrap();
        let mut eq = false;
        assert_eq!(unsafe { smw_cohomology_equal(a, b, &mut eq) }, SmwStatus::Ok);
        assert!(eq);
        assert_eq!(unsafe { smw_cohomology_equal(a, c, &mut eq) }, SmwStatus::Ok);
        assert!(eq);
        let mut rank = 0;
        assert_eq!(unsafe { smw_cohomology_rank(a, &mut rank) }, SmwStatus::Ok);
        assert_eq!(rank, 1 << k);
        for h in [a, b, c] {
            unsafe { smw_cohomology_free(h) };
        }
    }
}

#[test]
fn terms_are_canonical() {
    let h = new(5, 2, SmwPath::ClosedForm, None).unwrap();
    let got: Vec<(SmwRingKind, i64, i64, u64)> = terms(h).iter().map(|t| (t.kind, t.p, t.q, t.mult)).collect();
    assert_eq!(
        got,
        [
            (SmwRingKind::Mw, 0, 0, 1),
            (SmwRingKind::EtaM, 7, 4, 1),
            (SmwRingKind::M, 9, 5, 1),
            (SmwRingKind::Mw, 16, 9, 1)
        ]
    );
    let mut t = terms(h)[0];
    assert_eq!(unsafe { smw_cohomology_term(h, 4, &mut t) }, SmwStatus::InvalidArgument);
    unsafe { smw_cohomology_free(h) };
}

#[test]
fn zero_cone_shift_differs() {
    let paper = SmwConventions { cone_shift_delta: 0, cone_square_twist: 1, cone_square_shift: 2 };
    let a = new(5, 2, SmwPath::ClosedForm, None).unwrap();
    let c = new(5, 2, SmwPath::Motive, Some(&paper)).unwrap();
    let mut eq = true;
    assert_eq!(unsafe { smw_cohomology_equal(a, c, &mut eq) }, SmwStatus::Ok);
    assert!(!eq);
    assert!(terms(c).iter().any(|t| t.kind == SmwRingKind::M && (t.p, t.q) == (10, 5)));
    unsafe {
        smw_cohomology_free(a);
        smw_cohomology_free(c);
    }
}

#[test]
fn groups() {
    let h = new(7, 3, SmwPath::ClosedForm, None).unwrap();
    assert_eq!(group_at(h, 8, 4, None), "K^MW_{-1}(K)");
    unsafe { smw_cohomology_free(h) };

    let h = new(5, 2, SmwPath::ClosedForm, None).unwrap();
    assert_eq!(group_at(h, 0, 0, None), "K^MW_0(K)");
    assert_eq!(group_at(h, 7, 4, None), "2K^M_0(K)");
    let mut flags = SmwVanishingFlags { negative_weight_motivic: false, mw_subdiagonal_negative_weight: false };
    assert_eq!(unsafe { smw_vanishing_flags_default(&mut flags) }, SmwStatus::Ok);
    assert!(flags.negative_weight_motivic && flags.mw_subdiagonal_negative_weight);
    flags.mw_subdiagonal_negative_weight = false;
    assert_eq!(group_at(h, 9, 5, Some(&flags)), "Z ⊕ H_MW^{-7,-4}(K)");
    unsafe { smw_cohomology_free(h) };
}

#[test]
fn json_round_trips_through_caller_buffer() {
    let h = new(7, 4, SmwPath::Inductive, None).unwrap();
    let mut needed = 0;
    let mut small = [0 as std::ffi::c_char; 8];
    let status = unsafe { smw_cohomology_to_json(h, small.as_mut_ptr(), small.len(), &mut needed) };
    assert_eq!(status, SmwStatus::BufferTooSmall);
    assert!(last_error().contains("bytes"));
    let mut buf = vec![0u8; needed];
    let status = unsafe { smw_cohomology_to_json(h, buf.as_mut_ptr().cast(), buf.len(), ptr::null_mut()) };
    assert_eq!(status, SmwStatus::Ok);
    let json: serde_json::Value = serde_json::from_slice(&buf[..needed - 1]).unwrap();
    let records = json.as_array().unwrap();
    assert_eq!(records.len(), 16);
    assert_eq!(records[0]["kind"], "MW");
    unsafe { smw_cohomology_free(h) };
}

#[test]
fn euler_class() {
    let mut e = SmwEulerClass { is_zero: true, beta: 0, p: 0, q: 0 };
    assert_eq!(unsafe { smw_euler_class(7, 3, &mut e) }, SmwStatus::Ok);
    assert_eq!(e, SmwEulerClass { is_zero: false, beta: 4, p: 8, q: 4 });
    assert_eq!(unsafe { smw_euler_class(7, 4, &mut e) }, SmwStatus::Ok);
    assert!(e.is_zero);
    assert_eq!(unsafe { smw_euler_class(6, 1, &mut e) }, SmwStatus::Ok);
    assert!(e.is_zero);
    assert_eq!(unsafe { smw_euler_class(5, 5, &mut e) }, SmwStatus::Domain);
}

#[test]
fn errors_are_reported() {
    assert_eq!(new(3, 3, SmwPath::ClosedForm, None), Err(SmwStatus::Domain));
    assert!(last_error().contains("1 <= k <= n-1"), "{}", last_error());
    assert_eq!(new(64, 2, SmwPath::ClosedForm, None), Err(SmwStatus::TooLarge));
    assert_eq!(new(40, 30, SmwPath::ClosedForm, None), Err(SmwStatus::TooLarge));
    let bad = SmwConventions { cone_shift_delta: 3, cone_square_twist: 1, cone_square_shift: 2 };
    assert_eq!(new(5, 2, SmwPath::Motive, Some(&bad)), Err(SmwStatus::InvalidArgument));

    let mut h = ptr::null_mut();
    assert_eq!(unsafe { smw_cohomology_new(5, 2, 9, ptr::null(), &mut h) }, SmwStatus::InvalidArgument);
    assert_eq!(unsafe { smw_cohomology_new(5, 2, 0, ptr::null(), ptr::null_mut()) }, SmwStatus::NullPointer);
    let mut len = 0;
    assert_eq!(unsafe { smw_cohomology_len(ptr::null(), &mut len) }, SmwStatus::NullPointer);
    unsafe { smw_cohomology_free(ptr::null_mut()) };
}

#[test]
fn version() {
    let v = unsafe { CStr::from_ptr(smw_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
