//! C ABI for the dirac-barrier engine.
//!
//! Configurations and resonance lists are opaque handles owned by the
//! caller and released with the matching `*_free` function. Every fallible
//! call returns a [`DbStatus`]; on failure a description is available from
//! [`db_last_error_message`] on the same thread.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dirac_barrier::oracle::solve_amplitudes;
use dirac_barrier::resonance::{scan_zones, Resonance, SearchSettings};
use dirac_barrier::{
    classify, full_matrix, scatter, singular_energies, Complex64, Error, MatrixRange,
    PotentialConfig, Zone,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidConfig = 2,
    SingularEnergy = 3,
    BoundaryEnergy = 4,
    BelowThreshold = 5,
    Numerical = 6,
    InvalidArgument = 7,
    IndexOutOfRange = 8,
    BufferTooSmall = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbMatrixRange {
    RangeI = 0,
    RangeII = 1,
    RangeIII = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DbZone {
    LowerKlein = 0,
    GapLower = 1,
    HigherKlein = 2,
    Conventional = 3,
    AboveBarrier = 4,
}

/// Mask selecting every zone in [`db_find_resonances`].
pub const DB_ZONE_MASK_ALL: u32 = 0b1_1111;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DbComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DbMatrix2x2 {
    pub m11: DbComplex,
    pub m12: DbComplex,
    pub m21: DbComplex,
    pub m22: DbComplex,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DbScatteringResult {
    pub energy: f64,
    pub t: DbComplex,
    pub r: DbComplex,
    pub t2: f64,
    pub r2: f64,
    pub range: DbMatrixRange,
    pub zone: DbZone,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DbResonance {
    pub energy: f64,
    pub zone: DbZone,
    pub residual: f64,
    /// NaN when `has_fwhm` is false.
    pub fwhm: f64,
    pub has_fwhm: bool,
    pub level: u32,
}

/// Opaque potential configuration.
pub struct DbConfig(PotentialConfig);

/// Opaque list of resonances sorted by energy.
pub struct DbResonanceList(Vec<Resonance>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> DbStatus {
    match err {
        Error::InvalidConfig(_) => DbStatus::InvalidConfig,
        Error::SingularEnergy { .. } => DbStatus::SingularEnergy,
        Error::BoundaryEnergy { .. } => DbStatus::BoundaryEnergy,
        Error::BelowThreshold { .. } => DbStatus::BelowThreshold,
        Error::InvalidArgument(_) => DbStatus::InvalidArgument,
        _ => DbStatus::Numerical,
    }
}

fn fail(status: DbStatus, msg: impl Into<String>) -> DbStatus {
    set_last_error(msg.into());
    status
}

fn guard<F>(f: F) -> DbStatus
where
    F: FnOnce() -> Result<(), DbStatus>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DbStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(DbStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: dirac_barrier::Result<T>) -> Result<T, DbStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn config_ref<'a>(cfg: *const DbConfig) -> Result<&'a PotentialConfig, DbStatus> {
    // SAFETY: callers hand in a pointer obtained from db_config_new or
    // db_config_reference that has not been freed.
    unsafe { cfg.as_ref() }
        .map(|c| &c.0)
        .ok_or_else(|| fail(DbStatus::NullPointer, "null configuration handle"))
}

fn out_ref<'a, T>(out: *mut T) -> Result<&'a mut T, DbStatus> {
    // SAFETY: callers pass a valid, writable pointer or null.
    unsafe { out.as_mut() }.ok_or_else(|| fail(DbStatus::NullPointer, "null output pointer"))
}

fn complex(z: Complex64) -> DbComplex {
    DbComplex { re: z.re, im: z.im }
}

fn range_of(r: MatrixRange) -> DbMatrixRange {
    match r {
        MatrixRange::RangeI => DbMatrixRange::RangeI,
        MatrixRange::RangeII => DbMatrixRange::RangeII,
        MatrixRange::RangeIII => DbMatrixRange::RangeIII,
    }
}

fn zone_of(z: Zone) -> DbZone {
    match z {
        Zone::LowerKlein => DbZone::LowerKlein,
        Zone::GapLower => DbZone::GapLower,
        Zone::HigherKlein => DbZone::HigherKlein,
        Zone::Conventional => DbZone::Conventional,
        Zone::AboveBarrier => DbZone::AboveBarrier,
    }
}

/// Static, NUL-terminated version string.
#[no_mangle]
pub extern "C" fn db_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn db_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Validates and allocates a configuration. Lengths in natural units.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn db_config_new(
    mass: f64,
    v_plus: f64,
    v_minus: f64,
    a_plus: f64,
    a_minus: f64,
    out: *mut *mut DbConfig,
) -> DbStatus {
    guard(|| {
        let slot = out_ref(out)?;
        let cfg = lift(PotentialConfig::new(mass, v_plus, v_minus, a_plus, a_minus))?;
        *slot = Box::into_raw(Box::new(DbConfig(cfg)));
        Ok(())
    })
}

/// The reference configuration `m=1, V+=8, V-=4, a+=3, a-=2.5`.
#[no_mangle]
pub extern "C" fn db_config_reference() -> *mut DbConfig {
    Box::into_raw(Box::new(DbConfig(PotentialConfig::reference())))
}

/// # Safety
/// `cfg` must be NULL or a handle from this library that is not used again.
#[no_mangle]
pub unsafe extern "C" fn db_config_free(cfg: *mut DbConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// # Safety
/// `cfg` must be a live handle; `range` and `zone` writable pointers.
#[no_mangle]
pub unsafe extern "C" fn db_classify(
    cfg: *const DbConfig,
    energy: f64,
    range: *mut DbMatrixRange,
    zone: *mut DbZone,
) -> DbStatus {
    guard(|| {
        let cfg = config_ref(cfg)?;
        let (r_out, z_out) = (out_ref(range)?, out_ref(zone)?);
        let (r, z) = lift(classify(energy, cfg))?;
        *r_out = range_of(r);
        *z_out = zone_of(z);
        Ok(())
    })
}

/// Writes the ascending singular energies into `out` (capacity `len`) and
/// the count into `written`. Fails with `BufferTooSmall` if `len` is short;
/// `written` still receives the required count.
///
/// # Safety
/// `out` must point to `len` writable doubles; `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn db_singular_energies(
    cfg: *const DbConfig,
    out: *mut f64,
    len: usize,
    written: *mut usize,
) -> DbStatus {
    guard(|| {
        let cfg = config_ref(cfg)?;
        let count = out_ref(written)?;
        let energies = singular_energies(cfg);
        *count = energies.len();
        if len < energies.len() {
            return Err(fail(DbStatus::BufferTooSmall, "output buffer too small"));
        }
        if out.is_null() {
            return Err(fail(DbStatus::NullPointer, "null output buffer"));
        }
        ptr::copy_nonoverlapping(energies.as_ptr(), out, energies.len());
        Ok(())
    })
}

/// Full transfer matrix `M(E)`.
///
/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn db_full_matrix(
    cfg: *const DbConfig,
    energy: f64,
    out: *mut DbMatrix2x2,
) -> DbStatus {
    guard(|| {
        let cfg = config_ref(cfg)?;
        let slot = out_ref(out)?;
        let m = lift(full_matrix(energy, cfg))?;
        *slot = DbMatrix2x2 {
            m11: complex(m.m11),
            m12: complex(m.m12),
            m21: complex(m.m21),
            m22: complex(m.m22),
        };
        Ok(())
    })
}

/// Transmission and reflection at one energy.
///
/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn db_scatter(
    cfg: *const DbConfig,
    energy: f64,
    out: *mut DbScatteringResult,
) -> DbStatus {
    guard(|| {
        let cfg = config_ref(cfg)?;
        let slot = out_ref(out)?;
        let s = lift(scatter(energy, cfg))?;
        *slot = DbScatteringResult {
            energy: s.energy,
            t: complex(s.t),
            r: complex(s.r),
            t2: s.t2,
            r2: s.r2,
            range: range_of(s.range),
            zone: zone_of(s.zone),
        };
        Ok(())
    })
}

/// Transmission amplitude from the boundary-matching solver.
///
/// # Safety
/// `cfg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn db_oracle_transmission(
    cfg: *const DbConfig,
    energy: f64,
    out: *mut DbComplex,
) -> DbStatus {
    guard(|| {
        let cfg = config_ref(cfg)?;
        let slot = out_ref(out)?;
        *slot = complex(lift(solve_amplitudes(energy, cfg))?.transmission());
        Ok(())
    })
}

/// Scans the zones selected by `zone_mask` (bit `1 << DbZone`) and returns
/// the resonances sorted by energy. `e_max` bounds the above-barrier zone
/// and is ignored otherwise; `grid_points` of 0 selects the default.
///
/// # Safety
/// `cfg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn db_find_resonances(
    cfg: *const DbConfig,
    zone_mask: u32,
    e_max: f64,
    grid_points: u32,
    out: *mut *mut DbResonanceList,
) -> DbStatus {
    guard(|| {
        let cfg = config_ref(cfg)?;
        let slot = out_ref(out)?;
        if zone_mask == 0 || zone_mask & !DB_ZONE_MASK_ALL != 0 {
            return Err(fail(DbStatus::InvalidArgument, "zone mask selects no valid zone"));
        }
        let zones: Vec<Zone> =
            Zone::ALL.into_iter().enumerate().filter(|(i, _)| zone_mask & (1 << i) != 0).map(|(_, z)| z).collect();
        let mut settings = SearchSettings::default();
        if grid_points != 0 {
            settings.grid_points_per_zone = grid_points as usize;
        }
        let e_max = zones.contains(&Zone::AboveBarrier).then_some(e_max);
        if let Some(e) = e_max {
            if !(e > cfg.v_plus() + cfg.mass()) {
                return Err(fail(DbStatus::InvalidArgument, "e_max must exceed V+ + m"));
            }
        }
        let scans = lift(scan_zones(cfg, &zones, e_max, &settings))?;
        let mut all: Vec<Resonance> = scans.into_iter().flat_map(|s| s.resonances).collect();
        all.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        *slot = Box::into_raw(Box::new(DbResonanceList(all)));
        Ok(())
    })
}

/// # Safety
/// `list` must be NULL or a live list handle.
#[no_mangle]
pub unsafe extern "C" fn db_resonance_list_len(list: *const DbResonanceList) -> usize {
    list.as_ref().map_or(0, |l| l.0.len())
}

/// # Safety
/// `list` must be a live list handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn db_resonance_list_get(
    list: *const DbResonanceList,
    index: usize,
    out: *mut DbResonance,
) -> DbStatus {
    guard(|| {
        let list = list
            .as_ref()
            .ok_or_else(|| fail(DbStatus::NullPointer, "null resonance list"))?;
        let slot = out_ref(out)?;
        let r = list
            .0
            .get(index)
            .ok_or_else(|| fail(DbStatus::IndexOutOfRange, format!("index {index} out of range")))?;
        *slot = DbResonance {
            energy: r.energy,
            zone: zone_of(r.zone),
            residual: r.residual,
            fwhm: r.fwhm.unwrap_or(f64::NAN),
            has_fwhm: r.fwhm.is_some(),
            level: r.level as u32,
        };
        Ok(())
    })
}

/// # Safety
/// `list` must be NULL or a list handle that is not used again.
#[no_mangle]
pub unsafe extern "C" fn db_resonance_list_free(list: *mut DbResonanceList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}
