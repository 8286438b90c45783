//! C ABI over the `tspn` planner.
//!
//! Scenes and tours are opaque handles created and freed through this
//! interface. Every fallible call returns a [`TspnStatus`]; on failure the
//! message is available from [`tspn_last_error_message`] on the same thread.
//! Strings returned by the library must be released with [`tspn_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tspn::bench::{generate_scene, scene_from_json, scene_to_json, trajectory_to_json, SceneConfig};
use tspn::geom::{Point3, Scene};
use tspn::planner::{alpha_fat_baseline, center_visit, plan_nondisjoint};
use tspn::viewscore::{viewing_score, GrayImage, ObjectMask};
use tspn::{Error, Tour, TspConfig};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TspnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Format = 4,
    Io = 5,
    SizeLimit = 6,
    Capacity = 7,
    InsufficientCoverage = 8,
    DegenerateDetection = 9,
    UnknownObject = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

/// A validated scene.
pub struct TspnScene {
    inner: Scene,
}

/// A planned trajectory.
pub struct TspnTour {
    inner: Tour,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TspnStatus {
    match e {
        Error::InvalidRegion(_)
        | Error::InvalidScene(_)
        | Error::InvalidConfig(_)
        | Error::DimensionMismatch(_)
        | Error::UnknownMethod(_) => TspnStatus::InvalidArgument,
        Error::SizeLimit { .. } => TspnStatus::SizeLimit,
        Error::Capacity { .. } => TspnStatus::Capacity,
        Error::InsufficientCoverage { .. } => TspnStatus::InsufficientCoverage,
        Error::DegenerateDetection { .. } => TspnStatus::DegenerateDetection,
        Error::UnknownObject(_) => TspnStatus::UnknownObject,
        Error::Io(_) => TspnStatus::Io,
        Error::Format(_) | Error::Json(_) | Error::Csv(_) => TspnStatus::Format,
    }
}

struct Failure(TspnStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(TspnStatus::NullPointer, format!("`{what}` is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TspnStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TspnStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            TspnStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(TspnStatus::InvalidUtf8, format!("`{what}` is not UTF-8")))
}

unsafe fn point_arg(p: *const f64) -> Result<Point3, Failure> {
    if p.is_null() {
        return Ok(Point3::ORIGIN);
    }
    let v = std::slice::from_raw_parts(p, 3);
    let pt = Point3::new(v[0], v[1], v[2]);
    if !pt.is_finite() {
        return Err(Failure(TspnStatus::InvalidArgument, format!("non-finite start {pt}")));
    }
    Ok(pt)
}

unsafe fn scene_arg<'a>(s: *const TspnScene) -> Result<&'a Scene, Failure> {
    s.as_ref().map(|s| &s.inner).ok_or_else(|| null("scene"))
}

unsafe fn tour_arg<'a>(t: *const TspnTour) -> Result<&'a Tour, Failure> {
    t.as_ref().map(|t| &t.inner).ok_or_else(|| null("tour"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| Failure(TspnStatus::Format, "output contains a nul byte".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or null if none.
/// The pointer stays valid until the next failing call on the thread.
#[no_mangle]
pub extern "C" fn tspn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a scene from its JSON text.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tspn_scene_from_json(json: *const c_char, out: *mut *mut TspnScene) -> TspnStatus {
    guard(|| {
        let text = str_arg(json, "json")?;
        put(
            out,
            TspnScene {
                inner: scene_from_json(text)?,
            },
        )
    })
}

/// Generates a random scene of spheres in a cube.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tspn_scene_generate(
    n_objects: usize,
    cube_edge: f64,
    d_min: f64,
    d_max: f64,
    disjoint: bool,
    overlap_rate: f64,
    seed: u64,
    out: *mut *mut TspnScene,
) -> TspnStatus {
    guard(|| {
        let scene = generate_scene(&SceneConfig {
            n_objects,
            cube_edge,
            d_min,
            d_max,
            disjoint,
            overlap_rate,
            seed,
        })?;
        put(out, TspnScene { inner: scene })
    })
}

/// Number of objects, or 0 for a null handle.
///
/// # Safety
/// `scene` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tspn_scene_len(scene: *const TspnScene) -> usize {
    scene.as_ref().map_or(0, |s| s.inner.len())
}

/// Serializes a scene to JSON; free the string with `tspn_string_free`.
///
/// # Safety
/// `scene` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tspn_scene_to_json(scene: *const TspnScene, out: *mut *mut c_char) -> TspnStatus {
    guard(|| put_string(out, scene_to_json(scene_arg(scene)?)?))
}

/// # Safety
/// `scene` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tspn_scene_free(scene: *mut TspnScene) {
    if !scene.is_null() {
        drop(Box::from_raw(scene));
    }
}

/// Center-visit tour over a disjoint scene. `start` points to three
/// doubles, or is null for the origin.
///
/// # Safety
/// `scene` must be a live handle; `start` null or readable for 3 doubles;
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tspn_plan_center_visit(
    scene: *const TspnScene,
    start: *const f64,
    seed: u64,
    out: *mut *mut TspnTour,
) -> TspnStatus {
    guard(|| {
        let tour = center_visit(point_arg(start)?, scene_arg(scene)?, &TspConfig::with_seed(seed))?;
        put(out, TspnTour { inner: tour })
    })
}

/// Tour over a possibly overlapping scene, with detours around kept regions.
///
/// # Safety
/// Same contract as `tspn_plan_center_visit`.
#[no_mangle]
pub unsafe extern "C" fn tspn_plan_nondisjoint(
    scene: *const TspnScene,
    start: *const f64,
    seed: u64,
    out: *mut *mut TspnTour,
) -> TspnStatus {
    guard(|| {
        let tour = plan_nondisjoint(point_arg(start)?, scene_arg(scene)?, &TspConfig::with_seed(seed))?;
        put(out, TspnTour { inner: tour })
    })
}

/// Alpha-fat sampling baseline with `samples_per_region` boundary samples.
///
/// # Safety
/// Same contract as `tspn_plan_center_visit`.
#[no_mangle]
pub unsafe extern "C" fn tspn_plan_baseline(
    scene: *const TspnScene,
    start: *const f64,
    samples_per_region: usize,
    seed: u64,
    out: *mut *mut TspnTour,
) -> TspnStatus {
    guard(|| {
        let tour = alpha_fat_baseline(
            point_arg(start)?,
            scene_arg(scene)?,
            samples_per_region,
            &TspConfig::with_seed(seed),
        )?;
        put(out, TspnTour { inner: tour })
    })
}

/// # Safety
/// `tour` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tspn_tour_length(tour: *const TspnTour, out: *mut f64) -> TspnStatus {
    guard(|| {
        let length = tour_arg(tour)?.length();
        if out.is_null() {
            return Err(null("out"));
        }
        *out = length;
        Ok(())
    })
}

/// Number of waypoints, or 0 for a null handle.
///
/// # Safety
/// `tour` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tspn_tour_waypoint_count(tour: *const TspnTour) -> usize {
    tour.as_ref().map_or(0, |t| t.inner.waypoints.len())
}

/// Copies waypoints as consecutive `x, y, z` doubles into `buffer`, which
/// holds `capacity` doubles (at least three per waypoint).
///
/// # Safety
/// `tour` must be a live handle; `buffer` writable for `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn tspn_tour_copy_waypoints(
    tour: *const TspnTour,
    buffer: *mut f64,
    capacity: usize,
) -> TspnStatus {
    guard(|| {
        let t = tour_arg(tour)?;
        let needed = 3 * t.waypoints.len();
        if needed == 0 {
            return Ok(());
        }
        if buffer.is_null() {
            return Err(null("buffer"));
        }
        if capacity < needed {
            return Err(Failure(
                TspnStatus::BufferTooSmall,
                format!("buffer holds {capacity} doubles, {needed} needed"),
            ));
        }
        let dst = std::slice::from_raw_parts_mut(buffer, needed);
        for (chunk, p) in dst.chunks_exact_mut(3).zip(&t.waypoints) {
            chunk.copy_from_slice(&[p.x, p.y, p.z]);
        }
        Ok(())
    })
}

/// Serializes a tour as trajectory JSON; free with `tspn_string_free`.
///
/// # Safety
/// `tour` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn tspn_tour_to_json(tour: *const TspnTour, out: *mut *mut c_char) -> TspnStatus {
    guard(|| put_string(out, trajectory_to_json(tour_arg(tour)?)?))
}

/// # Safety
/// `tour` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tspn_tour_free(tour: *mut TspnTour) {
    if !tour.is_null() {
        drop(Box::from_raw(tour));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tspn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Viewing score of a row-major 8-bit image under a mask of the same size
/// (nonzero bytes are object pixels).
///
/// # Safety
/// `pixels` and `mask` must be readable for `width * height` bytes; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn tspn_viewing_score(
    pixels: *const u8,
    mask: *const u8,
    width: usize,
    height: usize,
    edge_fraction: f64,
    out: *mut f64,
) -> TspnStatus {
    guard(|| {
        if pixels.is_null() {
            return Err(null("pixels"));
        }
        if mask.is_null() {
            return Err(null("mask"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let n = width
            .checked_mul(height)
            .ok_or_else(|| Failure(TspnStatus::InvalidArgument, "image size overflows".into()))?;
        let image = GrayImage::from_u8(width, height, std::slice::from_raw_parts(pixels, n))?;
        let bits = std::slice::from_raw_parts(mask, n).iter().map(|&b| b != 0).collect();
        let mask = ObjectMask::new(width, height, bits)?;
        *out = viewing_score(&image, &mask, edge_fraction)?;
        Ok(())
    })
}
