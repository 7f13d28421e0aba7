//! C ABI for `torified`.
//!
//! Objects are opaque handles created by `tv_*` constructors and released with
//! the matching `*_free`. Every fallible function returns a [`TvStatus`]; on
//! failure [`tv_last_error`] describes the problem. Strings returned through
//! `char **` out-parameters are owned by the caller and released with
//! [`tv_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_bigint::BigInt;
use torified::counting::{counting_polynomial, eval_counting, zeta};
use torified::family::Family;
use torified::functor::{
    cc_cardinality_check, enumerate_monoid_homs, soule_count_by_faces, CyclicMonoidWithZero, FiniteAbelianGroup,
    DEFAULT_BUDGET,
};
use torified::io::{parse_fan, parse_torification, torification_payload};
use torified::lattice::Cone;
use torified::monoid::monoid_of_cone;
use torified::torification::{delta_vector, product, Torification};
use torified::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    UnknownFamily = 4,
    ParseError = 5,
    InvalidFan = 6,
    BudgetExceeded = 7,
    Overflow = 8,
    BufferTooSmall = 9,
    IndexOutOfRange = 10,
    Panic = 11,
}

/// Opaque torification handle.
pub struct TvTorification {
    inner: Torification,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(TvStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match &e {
            Error::UnknownFamily(_) => TvStatus::UnknownFamily,
            Error::Parse(_) => TvStatus::ParseError,
            Error::InvalidFan(_) => TvStatus::InvalidFan,
            Error::BudgetExceeded { .. } => TvStatus::BudgetExceeded,
            Error::Overflow => TvStatus::Overflow,
            _ => TvStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            TvStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TvStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(TvStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(TvStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn handle<'a>(t: *const TvTorification) -> Result<&'a Torification, Failure> {
    t.as_ref().map(|h| &h.inner).ok_or_else(|| null("torification"))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_handle(out: *mut *mut TvTorification, t: Torification) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(TvTorification { inner: t })), "out")
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(TvStatus::InvalidArgument, "string contains nul".into()))?;
    put(out, c.into_raw(), "out")
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next `tv_*` call on the same thread.
#[no_mangle]
pub extern "C" fn tv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from a `tv_*` out-parameter and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Built-in torification of a named family, e.g. `"grassmannian"` with
/// parameters `{2, 4}`.
///
/// # Safety
/// `name` is a NUL-terminated string; `params` points to `n_params` values.
#[no_mangle]
pub unsafe extern "C" fn tv_torification_family(
    name: *const c_char,
    params: *const usize,
    n_params: usize,
    out: *mut *mut TvTorification,
) -> TvStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let params = slice_arg(params, n_params, "params")?;
        let t = Family::parse(name, params)?.torify()?;
        put_handle(out, t)
    })
}

/// Torification from the JSON written by `torified torify`.
///
/// # Safety
/// `json` is a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tv_torification_from_json(json: *const c_char, out: *mut *mut TvTorification) -> TvStatus {
    guard(|| {
        let t = parse_torification(str_arg(json, "json")?)?;
        put_handle(out, t)
    })
}

/// Toric torification of a fan given as fan JSON. Invalid fans are rejected
/// with `TV_STATUS_INVALID_FAN`.
///
/// # Safety
/// `json` is a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn tv_torification_from_fan_json(json: *const c_char, out: *mut *mut TvTorification) -> TvStatus {
    guard(|| {
        let loaded = parse_fan(str_arg(json, "json")?)?;
        if !loaded.report.is_valid() {
            return Err(Failure(TvStatus::InvalidFan, loaded.report.summary()));
        }
        put_handle(out, Family::Toric(loaded.fan).torify()?)
    })
}

/// Product torification `a × b`.
///
/// # Safety
/// `a` and `b` are live handles.
#[no_mangle]
pub unsafe extern "C" fn tv_torification_product(
    a: *const TvTorification,
    b: *const TvTorification,
    out: *mut *mut TvTorification,
) -> TvStatus {
    guard(|| {
        let p = product(handle(a)?, handle(b)?);
        put_handle(out, p)
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `t` comes from a constructor and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn tv_torification_free(t: *mut TvTorification) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of tori.
///
/// # Safety
/// `t` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn tv_torification_len(t: *const TvTorification, out: *mut usize) -> TvStatus {
    guard(|| put(out, handle(t)?.len(), "out"))
}

/// Largest torus rank.
///
/// # Safety
/// `t` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn tv_torification_dim(t: *const TvTorification, out: *mut usize) -> TvStatus {
    guard(|| put(out, handle(t)?.dim(), "out"))
}

/// Rank of torus `index`.
///
/// # Safety
/// `t` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn tv_torification_rank(t: *const TvTorification, index: usize, out: *mut usize) -> TvStatus {
    guard(|| {
        let tori = handle(t)?.tori();
        let torus = tori
            .get(index)
            .ok_or_else(|| Failure(TvStatus::IndexOutOfRange, format!("torus {index} of {}", tori.len())))?;
        put(out, torus.rank, "out")
    })
}

/// Writes the δ-vector into `buf` and its length into `out_len`. When `cap` is
/// too small nothing is written to `buf` and `TV_STATUS_BUFFER_TOO_SMALL` is
/// returned, with `out_len` still set.
///
/// # Safety
/// `t` is a live handle; `buf` has room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn tv_torification_delta(
    t: *const TvTorification,
    buf: *mut u64,
    cap: usize,
    out_len: *mut usize,
) -> TvStatus {
    guard(|| {
        let d = delta_vector(handle(t)?);
        put(out_len, d.len(), "out_len")?;
        if cap < d.len() {
            return Err(Failure(
                TvStatus::BufferTooSmall,
                format!("need {} entries, have {cap}", d.len()),
            ));
        }
        if !d.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(d.as_ptr(), buf, d.len());
        }
        Ok(())
    })
}

/// Torification JSON (`dim`, `tori`, `delta`, `charts`).
///
/// # Safety
/// `t` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn tv_torification_to_json(t: *const TvTorification, out: *mut *mut c_char) -> TvStatus {
    guard(|| put_string(out, torification_payload(handle(t)?).to_string()))
}

/// `N(q)` as a decimal string.
///
/// # Safety
/// `t` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn tv_count(t: *const TvTorification, q: u64, out: *mut *mut c_char) -> TvStatus {
    guard(|| {
        let n = eval_counting(&counting_polynomial(handle(t)?), &BigInt::from(q));
        put_string(out, n.to_string())
    })
}

/// `N(q)` as a 64-bit integer, or `TV_STATUS_OVERFLOW`.
///
/// # Safety
/// `t` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn tv_count_i64(t: *const TvTorification, q: u64, out: *mut i64) -> TvStatus {
    guard(|| {
        let n = eval_counting(&counting_polynomial(handle(t)?), &BigInt::from(q));
        let v = i64::try_from(&n).map_err(|_| Failure(TvStatus::Overflow, format!("N({q}) = {n} exceeds 64 bits")))?;
        put(out, v, "out")
    })
}

/// Zeta function rendered as a rational function of `s`, e.g. `s/(s-1)`.
///
/// # Safety
/// `t` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn tv_zeta(t: *const TvTorification, out: *mut *mut c_char) -> TvStatus {
    guard(|| put_string(out, zeta(&counting_polynomial(handle(t)?)).to_string()))
}

/// Checks `Σ |D|^{d_i} = N(|D| + 1)` for `D = Z/orders[0] × ...`.
///
/// # Safety
/// `t` is a live handle; `orders` points to `n_orders` values.
#[no_mangle]
pub unsafe extern "C" fn tv_cc_cardinality_check(
    t: *const TvTorification,
    orders: *const u64,
    n_orders: usize,
    out_agrees: *mut bool,
) -> TvStatus {
    guard(|| {
        let g = FiniteAbelianGroup::new(slice_arg(orders, n_orders, "orders")?.to_vec())?;
        let c = cc_cardinality_check(handle(t)?, &g, DEFAULT_BUDGET)?;
        put(out_agrees, c.agrees, "out_agrees")
    })
}

/// Soulé points of the cone spanned by `n_rays` rays of length `dim` (row
/// major in `rays`) with values in `μ_m ∪ {0}`: counted by faces and by
/// enumerating homomorphisms.
///
/// # Safety
/// `rays` points to `n_rays * dim` values.
#[no_mangle]
pub unsafe extern "C" fn tv_soule_count(
    rays: *const i64,
    n_rays: usize,
    dim: usize,
    m: u64,
    out_by_faces: *mut u64,
    out_enumerated: *mut u64,
) -> TvStatus {
    guard(|| {
        let len = n_rays
            .checked_mul(dim)
            .ok_or_else(|| Failure(TvStatus::Overflow, "ray buffer size overflows".into()))?;
        let flat = slice_arg(rays, len, "rays")?;
        let rays: Vec<Vec<i64>> = if dim == 0 {
            vec![Vec::new(); n_rays]
        } else {
            flat.chunks(dim).map(<[i64]>::to_vec).collect()
        };
        let cone = Cone::from_generators(dim, &rays)?;
        let monoid = monoid_of_cone(&cone)?;
        let target = CyclicMonoidWithZero::new(m)?;
        let by_faces = soule_count_by_faces(&monoid, m)?;
        let by_faces =
            u64::try_from(&by_faces).map_err(|_| Failure(TvStatus::Overflow, format!("{by_faces} exceeds 64 bits")))?;
        let homs = enumerate_monoid_homs(&monoid, &target, DEFAULT_BUDGET)?;
        put(out_by_faces, by_faces, "out_by_faces")?;
        put(out_enumerated, homs.len() as u64, "out_enumerated")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_mapping() {
        assert_eq!(
            Failure::from(Error::UnknownFamily("x".into())).0,
            TvStatus::UnknownFamily
        );
        assert_eq!(Failure::from(Error::Overflow).0, TvStatus::Overflow);
        assert_eq!(Failure::from(Error::NotPointed).0, TvStatus::InvalidArgument);
    }

    #[test]
    fn panics_are_caught() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, TvStatus::Panic);
        assert!(!tv_last_error().is_null());
    }
}
