//! C ABI over the finite instances of `bqg`: build an instance from a preset
//! or a JSON document, then query class dimensions, conjugates and fusion
//! multiplicities through an opaque handle.
//!
//! Every fallible function returns a [`BqgStatus`]; on failure the message
//! is available from [`bqg_last_error`] on the same thread.

use bqg::bicrossed::{classify_bicrossed, BicrossedClassification, FiniteQuantumAlgebra, GammaRange};
use bqg::config::{Instance, InstanceConfig};
use bqg::fusion::FusionTable;
use bqg::group::FiniteGroup;
use bqg::mackey::{classify_semidirect, oracle_fusion_table, semidirect_fusion_table, SemidirectClassification};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BqgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed instance: parse error, bad group data, unknown preset.
    Config = 3,
    /// A computation or audit failed.
    Computation = 4,
    OutOfRange = 5,
    /// The instance kind has no finite fusion ring.
    Unsupported = 6,
    Panic = 7,
}

enum Classified {
    Semidirect(SemidirectClassification),
    Twist(BicrossedClassification<FiniteGroup>),
}

/// Opaque instance handle.
pub struct BqgInstance {
    classified: Classified,
    dims: Vec<usize>,
    table: OnceLock<FusionTable>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: BqgStatus, msg: impl Into<String>) -> BqgStatus {
    set_error(msg);
    status
}

fn from_lib(e: bqg::Error) -> BqgStatus {
    let status = if e.is_config_error() {
        BqgStatus::Config
    } else {
        BqgStatus::Computation
    };
    fail(status, e.to_string())
}

fn guarded(f: impl FnOnce() -> BqgStatus) -> BqgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == BqgStatus::Ok {
                set_error("");
            }
            s
        }
        Err(_) => fail(BqgStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, BqgStatus> {
    if p.is_null() {
        return Err(fail(BqgStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(BqgStatus::InvalidUtf8, "string is not UTF-8"))
}

fn build(cfg: &InstanceConfig) -> Result<BqgInstance, BqgStatus> {
    let seed = cfg.run.seed;
    let classified = match cfg.build().map_err(from_lib)? {
        Instance::Semidirect(p) => Classified::Semidirect(classify_semidirect(&p, seed).map_err(from_lib)?),
        Instance::FiniteTwist(mp) => {
            Classified::Twist(classify_bicrossed(&mp, GammaRange::All, seed).map_err(from_lib)?)
        }
        other => {
            return Err(fail(
                BqgStatus::Unsupported,
                format!("{} has no finite fusion ring", other.kind()),
            ))
        }
    };
    let dims = match &classified {
        Classified::Semidirect(c) => c.dims(),
        Classified::Twist(c) => c.dims(),
    };
    Ok(BqgInstance {
        classified,
        dims,
        table: OnceLock::new(),
    })
}

fn finish(cfg: Result<InstanceConfig, bqg::Error>, out: *mut *mut BqgInstance) -> BqgStatus {
    let cfg = match cfg {
        Ok(c) => c,
        Err(e) => return from_lib(e),
    };
    match build(&cfg) {
        Ok(inst) => {
            // SAFETY: `out` was checked non-null by the caller.
            unsafe { *out = Box::into_raw(Box::new(inst)) };
            BqgStatus::Ok
        }
        Err(s) => s,
    }
}

impl BqgInstance {
    fn table(&self) -> Result<&FusionTable, BqgStatus> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let t = match &self.classified {
            Classified::Semidirect(c) => semidirect_fusion_table(c),
            Classified::Twist(c) => c.fusion_table(),
        }
        .map_err(from_lib)?;
        Ok(self.table.get_or_init(|| t))
    }

    fn check(&self, x: usize) -> Result<(), BqgStatus> {
        if x < self.dims.len() {
            Ok(())
        } else {
            Err(fail(
                BqgStatus::OutOfRange,
                format!("class {x} out of range ({} classes)", self.dims.len()),
            ))
        }
    }
}

unsafe fn handle<'a>(h: *const BqgInstance) -> Result<&'a BqgInstance, BqgStatus> {
    h.as_ref().ok_or_else(|| fail(BqgStatus::NullPointer, "null instance"))
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Build a built-in instance by name.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bqg_instance_from_preset(name: *const c_char, out: *mut *mut BqgInstance) -> BqgStatus {
    guarded(|| {
        if out.is_null() {
            return fail(BqgStatus::NullPointer, "null output pointer");
        }
        let name = try_status!(read_str(name));
        finish(InstanceConfig::preset(name), out)
    })
}

/// Build an instance from a JSON instance document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bqg_instance_from_json(json: *const c_char, out: *mut *mut BqgInstance) -> BqgStatus {
    guarded(|| {
        if out.is_null() {
            return fail(BqgStatus::NullPointer, "null output pointer");
        }
        let text = try_status!(read_str(json));
        finish(InstanceConfig::from_json(text), out)
    })
}

/// Release an instance. Null is accepted.
///
/// # Safety
/// `h` must be null or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bqg_instance_free(h: *mut BqgInstance) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of irreducible classes.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bqg_class_count(h: *const BqgInstance, out: *mut usize) -> BqgStatus {
    guarded(|| {
        let inst = try_status!(handle(h));
        if out.is_null() {
            return fail(BqgStatus::NullPointer, "null output pointer");
        }
        *out = inst.dims.len();
        BqgStatus::Ok
    })
}

/// Dimension of class `x`.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bqg_class_dim(h: *const BqgInstance, x: usize, out: *mut usize) -> BqgStatus {
    guarded(|| {
        let inst = try_status!(handle(h));
        try_status!(inst.check(x));
        if out.is_null() {
            return fail(BqgStatus::NullPointer, "null output pointer");
        }
        *out = inst.dims[x];
        BqgStatus::Ok
    })
}

/// Class of the conjugate of `x`.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bqg_conjugate(h: *const BqgInstance, x: usize, out: *mut usize) -> BqgStatus {
    guarded(|| {
        let inst = try_status!(handle(h));
        try_status!(inst.check(x));
        if out.is_null() {
            return fail(BqgStatus::NullPointer, "null output pointer");
        }
        let t = try_status!(inst.table());
        *out = t.conj(x);
        BqgStatus::Ok
    })
}

/// Multiplicity of `z` in `x ⊗ y`. The table is computed on first use.
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bqg_fusion(h: *const BqgInstance, x: usize, y: usize, z: usize, out: *mut usize) -> BqgStatus {
    guarded(|| {
        let inst = try_status!(handle(h));
        for c in [x, y, z] {
            try_status!(inst.check(c));
        }
        if out.is_null() {
            return fail(BqgStatus::NullPointer, "null output pointer");
        }
        let t = try_status!(inst.table());
        *out = t.get(x, y, z);
        BqgStatus::Ok
    })
}

/// Number of fusion entries that differ from the independent oracle
/// (characters for `G ⋊ Λ`, the Haar state for twists).
///
/// # Safety
/// `h` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn bqg_oracle_mismatches(h: *const BqgInstance, out: *mut usize) -> BqgStatus {
    guarded(|| {
        let inst = try_status!(handle(h));
        if out.is_null() {
            return fail(BqgStatus::NullPointer, "null output pointer");
        }
        let t = try_status!(inst.table());
        let oracle = match &inst.classified {
            Classified::Semidirect(c) => oracle_fusion_table(c),
            Classified::Twist(c) => FiniteQuantumAlgebra::new(c).and_then(|a| a.oracle_fusion_table()),
        };
        let oracle = try_status!(oracle.map_err(from_lib));
        *out = t.diff(&oracle).len();
        BqgStatus::Ok
    })
}

/// Message for the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next call into this library on the thread.
#[no_mangle]
pub extern "C" fn bqg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn bqg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
