//! C ABI over `stiefel-mw`.
//!
//! Every function returns an [`SmwStatus`]; on failure a message is available
//! from [`smw_last_error_message`] on the same thread. Cohomology objects are
//! opaque [`SmwCohomology`] handles released with [`smw_cohomology_free`].
//! Strings are copied into caller buffers: pass the capacity in bytes and
//! receive the required size (including the trailing NUL) in `needed`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stiefel_mw::groups::{evaluate_at, VanishingFlags};
use stiefel_mw::gysin::{euler_class, EulerClass, GysinTower};
use stiefel_mw::motive::{motive_cohomology, stiefel_motive, ConeShift, ConeSquare, Conventions};
use stiefel_mw::{closed_form, Bidegree, Error, FormalSum, RingKind, StiefelIndex};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmwStatus {
    Ok = 0,
    NullPointer = 1,
    /// `(n, k)` violates `1 <= k <= n - 1`.
    Domain = 2,
    /// `n` or `2^k` exceeds the supported size.
    TooLarge = 3,
    InvalidArgument = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmwRingKind {
    /// Full MW-motivic coefficients.
    Mw = 0,
    /// Motivic coefficients, cokernel of η.
    M = 1,
    /// Motivic coefficients, kernel of η.
    EtaM = 2,
}

/// Which computation produces a cohomology handle. Passed as `uint32_t`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmwPath {
    ClosedForm = 0,
    Inductive = 1,
    Motive = 2,
}

/// Motive expansion conventions. `cone_shift_delta` is 0 or -1.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmwConventions {
    pub cone_shift_delta: i64,
    pub cone_square_twist: i64,
    pub cone_square_shift: i64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmwVanishingFlags {
    pub negative_weight_motivic: bool,
    pub mw_subdiagonal_negative_weight: bool,
}

/// One distinct atom `kind@(p,q)` with its multiplicity.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmwTerm {
    pub kind: SmwRingKind,
    pub p: i64,
    pub q: i64,
    pub mult: u64,
}

/// Euler class of `V_{k+1}(A^n) -> V_k(A^n)`: zero, or η·β_beta in degree `(p, q)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmwEulerClass {
    pub is_zero: bool,
    pub beta: u32,
    pub p: i64,
    pub q: i64,
}

/// Additive cohomology of one Stiefel variety.
pub struct SmwCohomology {
    sum: FormalSum,
    terms: Vec<SmwTerm>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(SmwStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Domain { .. } => SmwStatus::Domain,
            Error::TooLarge { .. } | Error::TooManyAtoms { .. } => SmwStatus::TooLarge,
            _ => SmwStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SmwStatus::NullPointer, format!("{what} is null"))
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SmwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SmwStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic".into());
            SmwStatus::Panic
        }
    }
}

fn ring_kind(kind: RingKind) -> SmwRingKind {
    match kind {
        RingKind::Mw => SmwRingKind::Mw,
        RingKind::M => SmwRingKind::M,
        RingKind::EtaM => SmwRingKind::EtaM,
    }
}

fn conventions(c: &SmwConventions) -> Result<Conventions, Failure> {
    let shift = match c.cone_shift_delta {
        0 => ConeShift::Paper,
        -1 => ConeShift::Derived,
        d => return Err(Failure(SmwStatus::InvalidArgument, format!("cone_shift_delta must be 0 or -1, got {d}"))),
    };
    Ok(Conventions::new(shift, ConeSquare { twist: c.cone_square_twist, shift: c.cone_square_shift }))
}

fn to_smw_conventions(c: Conventions) -> SmwConventions {
    SmwConventions {
        cone_shift_delta: c.delta(),
        cone_square_twist: c.cone_square.twist,
        cone_square_shift: c.cone_square.shift,
    }
}

unsafe fn handle<'a>(h: *const SmwCohomology, what: &str) -> Result<&'a SmwCohomology, Failure> {
    h.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

/// Copies `s` and a trailing NUL into `buf` when it fits in `cap` bytes.
unsafe fn write_str(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> Result<(), Failure> {
    let len = s.len() + 1;
    if !needed.is_null() {
        needed.write(len);
    }
    if cap < len {
        return Err(Failure(SmwStatus::BufferTooSmall, format!("need {len} bytes, got {cap}")));
    }
    if buf.is_null() {
        return Err(null("buffer"));
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    buf.add(s.len()).write(0);
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn smw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failing call on this thread; empty if none.
/// Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn smw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn smw_conventions_default(out: *mut SmwConventions) -> SmwStatus {
    guard(|| write_out(out, to_smw_conventions(Conventions::default())))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn smw_vanishing_flags_default(out: *mut SmwVanishingFlags) -> SmwStatus {
    let d = VanishingFlags::default();
    guard(|| {
        write_out(
            out,
            SmwVanishingFlags {
                negative_weight_motivic: d.negative_weight_motivic,
                mw_subdiagonal_negative_weight: d.mw_subdiagonal_negative_weight,
            },
        )
    })
}

/// Computes the cohomology of `V_k(A^n)` along `path` (an [`SmwPath`] value).
/// `conv` may be null for the default conventions; only the motive path reads it.
///
/// # Safety
/// `conv` must be null or point to a valid `SmwConventions`; `out` must be valid
/// for writes. The handle written to `out` must be released with
/// [`smw_cohomology_free`].
#[no_mangle]
pub unsafe extern "C" fn smw_cohomology_new(
    n: u32,
    k: u32,
    path: u32,
    conv: *const SmwConventions,
    out: *mut *mut SmwCohomology,
) -> SmwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let idx = StiefelIndex::new(n, k)?.enumerable()?;
        let conv = match conv.as_ref() {
            Some(c) => conventions(c)?,
            None => Conventions::default(),
        };
        let sum = match path {
            p if p == SmwPath::ClosedForm as u32 => closed_form(idx),
            p if p == SmwPath::Inductive as u32 => GysinTower::new(n).level(k).clone(),
            p if p == SmwPath::Motive as u32 => motive_cohomology(&stiefel_motive(idx, &conv)),
            p => return Err(Failure(SmwStatus::InvalidArgument, format!("unknown path {p}"))),
        };
        let terms = sum
            .terms()
            .map(|(key, mult)| SmwTerm { kind: ring_kind(key.kind), p: key.shift.p, q: key.shift.q, mult })
            .collect();
        out.write(Box::into_raw(Box::new(SmwCohomology { sum, terms })));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`smw_cohomology_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn smw_cohomology_free(h: *mut SmwCohomology) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of distinct atoms.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn smw_cohomology_len(h: *const SmwCohomology, out: *mut usize) -> SmwStatus {
    guard(|| write_out(out, handle(h, "handle")?.terms.len()))
}

/// Total atom count, with multiplicity. Equals `2^k`.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn smw_cohomology_rank(h: *const SmwCohomology, out: *mut u64) -> SmwStatus {
    guard(|| write_out(out, handle(h, "handle")?.sum.atom_count()))
}

/// The `i`-th distinct atom in canonical `(p, q, kind)` order.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn smw_cohomology_term(h: *const SmwCohomology, i: usize, out: *mut SmwTerm) -> SmwStatus {
    guard(|| {
        let h = handle(h, "handle")?;
        let term = *h
            .terms
            .get(i)
            .ok_or_else(|| Failure(SmwStatus::InvalidArgument, format!("term {i} of {}", h.terms.len())))?;
        write_out(out, term)
    })
}

/// Multiset equality, labels ignored.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn smw_cohomology_equal(
    a: *const SmwCohomology,
    b: *const SmwCohomology,
    out: *mut bool,
) -> SmwStatus {
    guard(|| write_out(out, handle(a, "a")?.sum == handle(b, "b")?.sum))
}

/// JSON array of atom records.
///
/// # Safety
/// `h` must be a live handle; `buf` must be valid for `cap` bytes (may be null
/// when `cap` is 0); `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn smw_cohomology_to_json(
    h: *const SmwCohomology,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> SmwStatus {
    guard(|| {
        let json = serde_json::to_string(&handle(h, "handle")?.sum)
            .map_err(|e| Failure(SmwStatus::InvalidArgument, e.to_string()))?;
        write_str(&json, buf, cap, needed)
    })
}

/// The group in bidegree `(p, q)` over the base field, as text such as
/// `K^MW_{-1}(K)`. `flags` may be null for the defaults.
///
/// # Safety
/// `h` must be a live handle; `flags` must be null or valid; `buf` must be
/// valid for `cap` bytes (may be null when `cap` is 0); `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn smw_cohomology_group_at(
    h: *const SmwCohomology,
    p: i64,
    q: i64,
    flags: *const SmwVanishingFlags,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> SmwStatus {
    guard(|| {
        let h = handle(h, "handle")?;
        let flags = match flags.as_ref() {
            Some(f) => VanishingFlags {
                negative_weight_motivic: f.negative_weight_motivic,
                mw_subdiagonal_negative_weight: f.mw_subdiagonal_negative_weight,
            },
            None => VanishingFlags::default(),
        };
        let group = evaluate_at(&h.sum, Bidegree::new(p, q), &flags);
        write_str(&group.to_string(), buf, cap, needed)
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn smw_euler_class(n: u32, k: u32, out: *mut SmwEulerClass) -> SmwStatus {
    guard(|| {
        let class = match euler_class(StiefelIndex::new(n, k)?) {
            EulerClass::Zero => SmwEulerClass { is_zero: true, beta: 0, p: 0, q: 0 },
            EulerClass::EtaBeta { beta, degree } => SmwEulerClass { is_zero: false, beta, p: degree.p, q: degree.q },
        };
        write_out(out, class)
    })
}
