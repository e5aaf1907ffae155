//! C ABI over the fish-eye Casimir library.
//!
//! Media and profiles are opaque heap handles created by `fc_*_new` and
//! released by the matching `fc_*_free`. Every fallible call returns an
//! [`FcStatus`]; on failure a description is kept per thread and can be read
//! with [`fc_last_error_message`]. All quantities use ħc = 1.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fisheye_casimir::{
    casimir_stress, force_density, radial_profile, refractive_index, scalar_d, Error, GreenPart, MediumParams, Point3,
    RadialProfileSample, ScalarGreenPoint,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Coincidence = 3,
    Convergence = 4,
    Stencil = 5,
    NotRotation = 6,
    IndexOutOfRange = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FcGreenPart {
    Free = 0,
    Reflected = 1,
    Total = 2,
}

/// One radial profile sample.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FcProfileRow {
    pub r_over_a: f64,
    pub n: f64,
    pub sigma_eigenvalue: f64,
    pub force_density: f64,
}

/// Opaque medium handle.
pub struct FcMedium(MediumParams);

/// Opaque radial profile handle.
pub struct FcProfile(Vec<RadialProfileSample>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FcStatus {
    match e {
        Error::Domain(_) => FcStatus::Domain,
        Error::Coincidence { .. } => FcStatus::Coincidence,
        Error::Convergence { .. } => FcStatus::Convergence,
        Error::Stencil { .. } => FcStatus::Stencil,
        Error::NotRotation { .. } => FcStatus::NotRotation,
    }
}

fn fail(status: FcStatus, msg: impl Into<String>) -> FcStatus {
    set_error(msg.into());
    status
}

fn guard(f: impl FnOnce() -> Result<(), FcStatus>) -> FcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(FcStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: fisheye_casimir::Result<T>) -> Result<T, FcStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn medium<'a>(m: *const FcMedium) -> Result<&'a MediumParams, FcStatus> {
    m.as_ref()
        .map(|m| &m.0)
        .ok_or_else(|| fail(FcStatus::NullPointer, "medium handle is null"))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), FcStatus> {
    if out.is_null() {
        return Err(fail(FcStatus::NullPointer, "output pointer is null"));
    }
    out.write(v);
    Ok(())
}

unsafe fn read_point(p: *const f64, what: &str) -> Result<Point3, FcStatus> {
    if p.is_null() {
        return Err(fail(FcStatus::NullPointer, format!("{what} is null")));
    }
    let s = std::slice::from_raw_parts(p, 3);
    Ok(Point3::new(s[0], s[1], s[2]))
}

/// Creates a medium with mirror radius `a` and index scale `n1`; NULL on invalid input.
#[no_mangle]
pub extern "C" fn fc_medium_new(a: f64, n1: f64) -> *mut FcMedium {
    match MediumParams::new(a, n1) {
        Ok(p) => Box::into_raw(Box::new(FcMedium(p))),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `m` must be NULL or a handle from [`fc_medium_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fc_medium_free(m: *mut FcMedium) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Refractive index at physical radius `r`.
///
/// # Safety
/// `m` must be a live medium handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_refractive_index(m: *const FcMedium, r: f64, out: *mut f64) -> FcStatus {
    guard(|| {
        let p = medium(m)?;
        write_out(out, lift(refractive_index(r, p))?)
    })
}

/// Eigenvalue of the isotropic Casimir stress at physical radius `r`, units ħc/a⁴.
///
/// # Safety
/// `m` must be a live medium handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_stress_eigenvalue(m: *const FcMedium, r: f64, out: *mut f64) -> FcStatus {
    guard(|| {
        let p = medium(m)?;
        write_out(out, lift(casimir_stress(r, p))?.eigenvalue())
    })
}

/// Radial force density at physical radius `r`, units ħc/a⁵.
///
/// # Safety
/// `m` must be a live medium handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_force_density(m: *const FcMedium, r: f64, out: *mut f64) -> FcStatus {
    guard(|| {
        let p = medium(m)?;
        write_out(out, lift(force_density(r, p))?)
    })
}

/// Scalar hypersphere Green function `D(r', kappa)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fc_scalar_green(r_prime: f64, kappa: f64, out: *mut f64) -> FcStatus {
    guard(|| {
        let p = lift(ScalarGreenPoint::new(r_prime, kappa))?;
        write_out(out, scalar_d(&p))
    })
}

/// Electromagnetic Green bi-tensor at imaginary wavenumber `kappa` in reduced
/// units, written row-major into `out[9]`. `part` is one of the
/// [`FcGreenPart`] values.
///
/// # Safety
/// `r` and `r0` must point to 3 readable doubles, `out` to 9 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn fc_green(part: u32, r: *const f64, r0: *const f64, kappa: f64, out: *mut f64) -> FcStatus {
    guard(|| {
        let x = read_point(r, "r")?;
        let x0 = read_point(r0, "r0")?;
        if out.is_null() {
            return Err(fail(FcStatus::NullPointer, "output pointer is null"));
        }
        let part = match part {
            p if p == FcGreenPart::Free as u32 => GreenPart::Free,
            p if p == FcGreenPart::Reflected as u32 => GreenPart::Reflected,
            p if p == FcGreenPart::Total as u32 => GreenPart::Total,
            other => return Err(fail(FcStatus::Domain, format!("unknown Green function part {other}"))),
        };
        let g = lift(part.evaluate(&x, &x0, kappa))?;
        let dst = std::slice::from_raw_parts_mut(out, 9);
        for (n, v) in dst.iter_mut().enumerate() {
            *v = g.get(n / 3, n % 3);
        }
        Ok(())
    })
}

/// Uniform radial profile from `r_min` to `r_max` (physical units); NULL on invalid input.
///
/// # Safety
/// `m` must be a live medium handle.
#[no_mangle]
pub unsafe extern "C" fn fc_profile_new(m: *const FcMedium, r_min: f64, r_max: f64, points: usize) -> *mut FcProfile {
    let built = catch_unwind(AssertUnwindSafe(|| {
        let p = medium(m)?;
        lift(radial_profile(p, r_min, r_max, points))
    }));
    match built {
        Ok(Ok(rows)) => Box::into_raw(Box::new(FcProfile(rows))),
        Ok(Err(_)) => ptr::null_mut(),
        Err(_) => {
            set_error("internal panic".into());
            ptr::null_mut()
        }
    }
}

/// Number of rows, 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live profile handle.
#[no_mangle]
pub unsafe extern "C" fn fc_profile_len(p: *const FcProfile) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// # Safety
/// `p` must be a live profile handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fc_profile_row(p: *const FcProfile, index: usize, out: *mut FcProfileRow) -> FcStatus {
    guard(|| {
        let p = p
            .as_ref()
            .ok_or_else(|| fail(FcStatus::NullPointer, "profile handle is null"))?;
        let s = p.0.get(index).ok_or_else(|| {
            fail(
                FcStatus::IndexOutOfRange,
                format!("row {index} out of range for {} rows", p.0.len()),
            )
        })?;
        write_out(
            out,
            FcProfileRow {
                r_over_a: s.r_over_a,
                n: s.n,
                sigma_eigenvalue: s.sigma_eigenvalue,
                force_density: s.force_density,
            },
        )
    })
}

/// # Safety
/// `p` must be NULL or a handle from [`fc_profile_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fc_profile_free(p: *mut FcProfile) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Copies the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length excluding the NUL, or
/// 0 when no error has been recorded.
///
/// # Safety
/// `buf` must be NULL or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn fc_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}
