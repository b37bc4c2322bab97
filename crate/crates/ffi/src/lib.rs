//! C ABI over the `gaw` engine.
//!
//! Objects cross the boundary as opaque handles created by `gaw_*_new` /
//! constructor functions and released by the matching `gaw_*_free`.
//! Fallible calls return a [`GawStatus`] and write results through out
//! pointers; the message of the most recent failure on the calling thread
//! is available from [`gaw_last_error_message`]. Strings and byte buffers
//! returned by the library are released with [`gaw_string_free`] and
//! [`gaw_bytes_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gaw::graphics::{self, HommageParams, Rect, VectorScene};
use gaw::jobs::Job;
use gaw::measures::{self, Distribution, SymbolGrid};
use gaw::wave::{self, DirectionalSpectrum, GridSpec, WaveField};
use gaw::{Error, RngState};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GawStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Io = 4,
    InvalidUtf8 = 5,
    Internal = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> GawStatus {
    match e {
        Error::Parse { .. } | Error::SpectrumValidation { .. } | Error::Manifest(_) => GawStatus::Parse,
        Error::Io { .. } => GawStatus::Io,
        _ => GawStatus::InvalidArgument,
    }
}

fn fail(e: Error) -> GawStatus {
    let status = status_of(&e);
    set_error(e.to_string());
    status
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), GawStatus>) -> GawStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GawStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            GawStatus::Internal
        }
    }
}

fn null_check<T>(p: *const T, name: &str) -> Result<(), GawStatus> {
    if p.is_null() {
        set_error(format!("`{name}` is NULL"));
        return Err(GawStatus::NullPointer);
    }
    Ok(())
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, GawStatus> {
    null_check(p, name)?;
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("`{name}` is not valid UTF-8"));
        GawStatus::InvalidUtf8
    })
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, name: &str) -> Result<&'a [T], GawStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    null_check(p, name)?;
    Ok(std::slice::from_raw_parts(p, len))
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gaw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Engine version string recorded in manifests. Static; do not free.
#[no_mangle]
pub extern "C" fn gaw_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!("gaw ", env!("CARGO_PKG_VERSION"), "\0").as_bytes())
    {
        Ok(v) => v,
        Err(_) => panic!("version contains NUL"),
    };
    VERSION.as_ptr()
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gaw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `data`/`len` must be a buffer returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gaw_bytes_free(data: *mut u8, len: usize) {
    if !data.is_null() {
        drop(Vec::from_raw_parts(data, len, len));
    }
}

fn into_c_string(s: String) -> Result<*mut c_char, GawStatus> {
    CString::new(s).map(CString::into_raw).map_err(|_| {
        set_error("string contains NUL".into());
        GawStatus::Internal
    })
}

// ---------------------------------------------------------------- rng

pub struct GawRng(RngState);

#[no_mangle]
pub extern "C" fn gaw_rng_new(seed: u64) -> *mut GawRng {
    Box::into_raw(Box::new(GawRng(RngState::new(seed))))
}

/// # Safety
/// `rng` must come from [`gaw_rng_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gaw_rng_free(rng: *mut GawRng) {
    if !rng.is_null() {
        drop(Box::from_raw(rng));
    }
}

/// # Safety
/// `rng` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_rng_next_unit(rng: *mut GawRng, out: *mut f64) -> GawStatus {
    guard(|| {
        null_check(rng, "rng")?;
        null_check(out, "out")?;
        *out = (*rng).0.next_unit();
        Ok(())
    })
}

/// Uniform integer in `[lo, hi]`.
///
/// # Safety
/// `rng` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_rng_next_int(rng: *mut GawRng, lo: i64, hi: i64, out: *mut i64) -> GawStatus {
    guard(|| {
        null_check(rng, "rng")?;
        null_check(out, "out")?;
        *out = (*rng).0.next_int(lo, hi).map_err(fail)?;
        Ok(())
    })
}

// ---------------------------------------------------------------- measures

/// Entropy in bits of `len` probabilities summing to 1.
///
/// # Safety
/// `probs` must point to `len` readable doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_entropy(probs: *const f64, len: usize, out: *mut f64) -> GawStatus {
    guard(|| {
        null_check(out, "out")?;
        let d = Distribution::new(slice_arg(probs, len, "probs")?.to_vec()).map_err(fail)?;
        *out = measures::entropy(&d);
        Ok(())
    })
}

/// # Safety
/// `probs` must point to `len` readable doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_redundancy(probs: *const f64, len: usize, out: *mut f64) -> GawStatus {
    guard(|| {
        null_check(out, "out")?;
        let d = Distribution::new(slice_arg(probs, len, "probs")?.to_vec()).map_err(fail)?;
        *out = measures::redundancy(&d).map_err(fail)?;
        Ok(())
    })
}

/// Block entropy of a row-major `width × height` grid of symbols in
/// `[0, alphabet)`.
///
/// # Safety
/// `cells` must point to `width * height` readable values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_block_entropy(
    cells: *const u32,
    width: usize,
    height: usize,
    alphabet: usize,
    block_w: usize,
    block_h: usize,
    out: *mut f64,
) -> GawStatus {
    guard(|| {
        null_check(out, "out")?;
        let n = width.checked_mul(height).ok_or_else(|| {
            set_error("grid size overflows".into());
            GawStatus::InvalidArgument
        })?;
        let g = SymbolGrid::new(width, height, alphabet, slice_arg(cells, n, "cells")?.to_vec()).map_err(fail)?;
        *out = measures::block_entropy(&g, block_w, block_h).map_err(fail)?;
        Ok(())
    })
}

/// Number of state descriptions for `n` binary properties (`2^n`).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_semantic_space_size(n: usize, out: *mut u64) -> GawStatus {
    guard(|| {
        null_check(out, "out")?;
        let props: Vec<(String, String)> = (0..n).map(|i| (format!("p{i}"), format!("not p{i}"))).collect();
        *out = measures::enumerate_semantic_space(&props).map_err(fail)?.q() as u64;
        Ok(())
    })
}

// ---------------------------------------------------------------- graphics

pub struct GawScene(VectorScene);

fn page_frame(page_w: f64, page_h: f64, margin: f64) -> Result<Rect, GawStatus> {
    Rect::new(0.0, 0.0, page_w, page_h)
        .and_then(|r| r.inset(margin))
        .map_err(fail)
}

/// Single closed `n`-corner in the page inset by `margin`.
///
/// # Safety
/// `out` must be writable; on success it receives a handle to free with
/// [`gaw_scene_free`].
#[no_mangle]
pub unsafe extern "C" fn gaw_scene_ncorner(
    n: usize,
    page_w: f64,
    page_h: f64,
    margin: f64,
    seed: u64,
    out: *mut *mut GawScene,
) -> GawStatus {
    guard(|| {
        null_check(out, "out")?;
        let frame = page_frame(page_w, page_h, margin)?;
        let mut scene = VectorScene::new(page_w, page_h).map_err(fail)?;
        scene.push(graphics::gen_ncorner(n, &frame, &mut RngState::new(seed)).map_err(fail)?);
        *out = Box::into_raw(Box::new(GawScene(scene)));
        Ok(())
    })
}

/// Two-level hatched mesh. `cell_states` holds the probabilities of
/// h-hatch, v-hatch, empty and diagonal, in that order.
///
/// # Safety
/// `cell_states` must point to 4 readable doubles; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_scene_hommage(
    rows: usize,
    cols: usize,
    jitter: f64,
    cell_states: *const f64,
    hatch_min: usize,
    hatch_max: usize,
    page_w: f64,
    page_h: f64,
    margin: f64,
    seed: u64,
    out: *mut *mut GawScene,
) -> GawStatus {
    guard(|| {
        null_check(out, "out")?;
        let probs = slice_arg(cell_states, 4, "cell_states")?.to_vec();
        let params = HommageParams {
            rows,
            cols,
            jitter,
            cell_states: Distribution::new(probs).map_err(fail)?,
            hatch_min,
            hatch_max,
        };
        let frame = page_frame(page_w, page_h, margin)?;
        let h = graphics::gen_hommage_klee(page_w, page_h, &frame, &params, &mut RngState::new(seed)).map_err(fail)?;
        *out = Box::into_raw(Box::new(GawScene(h.scene)));
        Ok(())
    })
}

/// # Safety
/// `scene` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gaw_scene_stroke_count(scene: *const GawScene) -> usize {
    if scene.is_null() {
        return 0;
    }
    (*scene).0.strokes().len()
}

/// SVG document for the scene; free with [`gaw_string_free`].
///
/// # Safety
/// `scene` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_scene_to_svg(scene: *const GawScene, out: *mut *mut c_char) -> GawStatus {
    guard(|| {
        null_check(scene, "scene")?;
        null_check(out, "out")?;
        *out = into_c_string(graphics::to_svg(&(*scene).0))?;
        Ok(())
    })
}

/// # Safety
/// `scene` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gaw_scene_free(scene: *mut GawScene) {
    if !scene.is_null() {
        drop(Box::from_raw(scene));
    }
}

// ---------------------------------------------------------------- waves

pub struct GawSpectrum(DirectionalSpectrum);

pub struct GawField(WaveField);

/// Parses a spectrum from CSV text.
///
/// # Safety
/// `csv` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_spectrum_from_csv(csv: *const c_char, out: *mut *mut GawSpectrum) -> GawStatus {
    guard(|| {
        null_check(out, "out")?;
        let text = str_arg(csv, "csv")?;
        let s = wave::load_spectrum(text.as_bytes()).map_err(fail)?;
        *out = Box::into_raw(Box::new(GawSpectrum(s)));
        Ok(())
    })
}

/// # Safety
/// `spectrum` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_spectrum_m0(spectrum: *const GawSpectrum, out: *mut f64) -> GawStatus {
    guard(|| {
        null_check(spectrum, "spectrum")?;
        null_check(out, "out")?;
        *out = (*spectrum).0.m0();
        Ok(())
    })
}

/// Significant wave height `4·√m0` in metres.
///
/// # Safety
/// `spectrum` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_spectrum_hs(spectrum: *const GawSpectrum, out: *mut f64) -> GawStatus {
    guard(|| {
        null_check(spectrum, "spectrum")?;
        null_check(out, "out")?;
        *out = wave::significant_wave_height(&(*spectrum).0);
        Ok(())
    })
}

/// # Safety
/// `spectrum` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gaw_spectrum_free(spectrum: *mut GawSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// Random-phase field on an `nx × ny` grid with origin at (0, 0).
///
/// # Safety
/// `spectrum` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_wave_synthesize(
    spectrum: *const GawSpectrum,
    seed: u64,
    gravity: f64,
    nx: usize,
    ny: usize,
    dx: f64,
    dy: f64,
    t: f64,
    out: *mut *mut GawField,
) -> GawStatus {
    guard(|| {
        null_check(spectrum, "spectrum")?;
        null_check(out, "out")?;
        if !(gravity > 0.0 && gravity.is_finite()) {
            set_error("gravity must be > 0".into());
            return Err(GawStatus::InvalidArgument);
        }
        let grid = GridSpec::new(nx, ny, dx, dy).map_err(fail)?;
        let comps = wave::draw_components(&(*spectrum).0, gravity, &mut RngState::new(seed));
        let field = wave::synthesize_field(&comps, grid, t).map_err(fail)?;
        *out = Box::into_raw(Box::new(GawField(field)));
        Ok(())
    })
}

/// Borrowed view of the heights, row-major by `y` (`nx * ny` values). Valid
/// until the field is freed.
///
/// # Safety
/// `field` must be a live handle; `data` and `len` writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_field_heights(
    field: *const GawField,
    data: *mut *const f64,
    len: *mut usize,
) -> GawStatus {
    guard(|| {
        null_check(field, "field")?;
        null_check(data, "data")?;
        null_check(len, "len")?;
        *data = (*field).0.heights.as_ptr();
        *len = (*field).0.heights.len();
        Ok(())
    })
}

/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_field_component_count(field: *const GawField, out: *mut usize) -> GawStatus {
    guard(|| {
        null_check(field, "field")?;
        null_check(out, "out")?;
        *out = (*field).0.components.len();
        Ok(())
    })
}

/// Population variance of the heights.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_field_variance(field: *const GawField, out: *mut f64) -> GawStatus {
    guard(|| {
        null_check(field, "field")?;
        null_check(out, "out")?;
        *out = wave::field_variance(&(*field).0).map_err(fail)?;
        Ok(())
    })
}

/// # Safety
/// `field` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gaw_field_free(field: *mut GawField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

// ---------------------------------------------------------------- jobs

/// Renders one artifact of a job described exactly as in a run manifest:
/// `rule_id` (e.g. `gen.hommage`), the `params` object as JSON, and the
/// seed. `role` selects the artifact (`svg`, `text`, `report`, `csv`,
/// `pgm`). The bytes are identical to what the CLI writes; free them with
/// [`gaw_bytes_free`].
///
/// # Safety
/// String arguments must be NUL-terminated; `out_data` and `out_len`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn gaw_render_job(
    rule_id: *const c_char,
    params_json: *const c_char,
    seed: u64,
    role: *const c_char,
    out_data: *mut *mut u8,
    out_len: *mut usize,
) -> GawStatus {
    guard(|| {
        null_check(out_data, "out_data")?;
        null_check(out_len, "out_len")?;
        let rule_id = str_arg(rule_id, "rule_id")?;
        let role = str_arg(role, "role")?;
        let params = parse_params(str_arg(params_json, "params_json")?)?;
        let job = Job::from_params(rule_id, &params).map_err(fail)?;
        let rendered = job.render(seed).map_err(fail)?;
        let artifact = rendered.artifact(role).ok_or_else(|| {
            set_error(format!("rule `{rule_id}` has no `{role}` output"));
            GawStatus::InvalidArgument
        })?;
        let mut bytes = artifact.bytes.clone().into_boxed_slice();
        *out_len = bytes.len();
        *out_data = bytes.as_mut_ptr();
        std::mem::forget(bytes);
        Ok(())
    })
}

fn parse_params(text: &str) -> Result<serde_json::Map<String, serde_json::Value>, GawStatus> {
    match serde_json::from_str::<serde_json::Value>(text) {
        Ok(serde_json::Value::Object(m)) => Ok(m),
        Ok(_) => Err(fail(Error::Manifest("params must be a JSON object".into()))),
        Err(e) => Err(fail(Error::Manifest(e.to_string()))),
    }
}
