//! C ABI for the coinwalk simulator.
//!
//! The surface is handle-based: `CwWalk` owns an exact density-matrix walk,
//! `CwDistribution` an immutable position distribution. Every fallible call
//! returns a `CwStatus` and writes results through out-pointers; handles are
//! released with the matching `_free` function. The header is generated into
//! `include/coinwalk.h` by cbindgen at build time.

use coinwalk::analytic::{binomial_pmf, stats, tv_distance};
use coinwalk::coinspace::{ChannelParams, CoinDensity, CoinParams};
use coinwalk::distribution::Distribution;
use coinwalk::lattice::{AmplitudeList, WalkDensity};
use coinwalk::montecarlo::{classical_rw_mc, run_mc, McConfig};
use num_complex::Complex64;

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A parameter was out of range or a state was invalid.
    InvalidArgument = 2,
    /// The operation is outside its supported range.
    Unsupported = 3,
}

/// Opaque handle: an exact density-matrix walk plus the parameters that
/// drive it.
pub struct CwWalk {
    state: WalkDensity,
    coin: CoinParams,
    chan: ChannelParams,
}

/// Opaque handle: a position -> probability distribution.
pub struct CwDistribution {
    inner: Distribution,
}

fn channel(p: f64, phi3: f64) -> Result<ChannelParams, CwStatus> {
    ChannelParams::new(p, phi3).map_err(|_| CwStatus::InvalidArgument)
}

unsafe fn write_handle<T>(out: *mut *mut T, value: T) -> CwStatus {
    if out.is_null() {
        return CwStatus::NullArgument;
    }
    *out = Box::into_raw(Box::new(value));
    CwStatus::Ok
}

/// Create a walk from a single site `x0` with pure coin state
/// (a_re + i a_im)|R> + (b_re + i b_im)|L>. The amplitudes must be normalized.
///
/// # Safety
/// `out_walk` must be a valid pointer to a `CwWalk*`.
#[no_mangle]
pub unsafe extern "C" fn cw_walk_new(
    theta: f64,
    phi1: f64,
    phi2: f64,
    phi3: f64,
    p: f64,
    x0: i64,
    a_re: f64,
    a_im: f64,
    b_re: f64,
    b_im: f64,
    out_walk: *mut *mut CwWalk,
) -> CwStatus {
    let chan = match channel(p, phi3) {
        Ok(c) => c,
        Err(status) => return status,
    };
    let coin_state = match CoinDensity::pure(
        Complex64::new(a_re, a_im),
        Complex64::new(b_re, b_im),
    ) {
        Ok(s) => s,
        Err(_) => return CwStatus::InvalidArgument,
    };
    write_handle(
        out_walk,
        CwWalk {
            state: WalkDensity::init_local(x0, &coin_state),
            coin: CoinParams::new(theta, phi1, phi2),
            chan,
        },
    )
}

/// Create a walk from a non-local pure state. `positions` holds `n_sites`
/// site indices; `amplitudes` holds 4 doubles per site
/// (a_re, a_im, b_re, b_im) in the same order. The state must be normalized.
///
/// # Safety
/// `positions` must point to `n_sites` readable i64 values, `amplitudes` to
/// `4 * n_sites` readable doubles, and `out_walk` to a valid `CwWalk*`.
#[no_mangle]
pub unsafe extern "C" fn cw_walk_new_nonlocal(
    theta: f64,
    phi1: f64,
    phi2: f64,
    phi3: f64,
    p: f64,
    positions: *const i64,
    amplitudes: *const f64,
    n_sites: usize,
    out_walk: *mut *mut CwWalk,
) -> CwStatus {
    if positions.is_null() || amplitudes.is_null() {
        return CwStatus::NullArgument;
    }
    let chan = match channel(p, phi3) {
        Ok(c) => c,
        Err(status) => return status,
    };
    let xs = std::slice::from_raw_parts(positions, n_sites);
    let amps = std::slice::from_raw_parts(amplitudes, 4 * n_sites);
    let entries = xs
        .iter()
        .zip(amps.chunks_exact(4))
        .map(|(&x, quad)| {
            (
                x,
                Complex64::new(quad[0], quad[1]),
                Complex64::new(quad[2], quad[3]),
            )
        })
        .collect();
    let list = match AmplitudeList::new(entries) {
        Ok(l) => l,
        Err(_) => return CwStatus::InvalidArgument,
    };
    write_handle(
        out_walk,
        CwWalk {
            state: WalkDensity::init_nonlocal(&list),
            coin: CoinParams::new(theta, phi1, phi2),
            chan,
        },
    )
}

/// Advance the walk by `steps` decoherent steps.
///
/// # Safety
/// `walk` must be a live handle from `cw_walk_new*`.
#[no_mangle]
pub unsafe extern "C" fn cw_walk_step(walk: *mut CwWalk, steps: u32) -> CwStatus {
    let Some(walk) = walk.as_mut() else {
        return CwStatus::NullArgument;
    };
    walk.state.evolve(&walk.coin, &walk.chan, steps);
    CwStatus::Ok
}

/// Current step count.
///
/// # Safety
/// `walk` must be a live handle; `out_t` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_walk_time(walk: *const CwWalk, out_t: *mut u32) -> CwStatus {
    let Some(walk) = walk.as_ref() else {
        return CwStatus::NullArgument;
    };
    if out_t.is_null() {
        return CwStatus::NullArgument;
    }
    *out_t = walk.state.t();
    CwStatus::Ok
}

/// Inclusive position window the walk currently stores.
///
/// # Safety
/// `walk` must be a live handle; `out_lo` and `out_hi` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cw_walk_window(
    walk: *const CwWalk,
    out_lo: *mut i64,
    out_hi: *mut i64,
) -> CwStatus {
    let Some(walk) = walk.as_ref() else {
        return CwStatus::NullArgument;
    };
    if out_lo.is_null() || out_hi.is_null() {
        return CwStatus::NullArgument;
    }
    let (lo, hi) = walk.state.window();
    *out_lo = lo;
    *out_hi = hi;
    CwStatus::Ok
}

/// Extract the position marginal as a new distribution handle.
///
/// # Safety
/// `walk` must be a live handle; `out_dist` a valid pointer to a
/// `CwDistribution*`.
#[no_mangle]
pub unsafe extern "C" fn cw_walk_marginal(
    walk: *const CwWalk,
    out_dist: *mut *mut CwDistribution,
) -> CwStatus {
    let Some(walk) = walk.as_ref() else {
        return CwStatus::NullArgument;
    };
    match walk.state.position_marginal() {
        Ok(d) => write_handle(out_dist, CwDistribution { inner: d }),
        Err(_) => CwStatus::InvalidArgument,
    }
}

/// Largest off-diagonal magnitude of the coin-traced position density matrix.
///
/// # Safety
/// `walk` must be a live handle; `out_coherence` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_walk_coherence(
    walk: *const CwWalk,
    out_coherence: *mut f64,
) -> CwStatus {
    let Some(walk) = walk.as_ref() else {
        return CwStatus::NullArgument;
    };
    if out_coherence.is_null() {
        return CwStatus::NullArgument;
    }
    *out_coherence = walk.state.position_coherence();
    CwStatus::Ok
}

/// Release a walk handle. Null is a no-op.
///
/// # Safety
/// `walk` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cw_walk_free(walk: *mut CwWalk) {
    if !walk.is_null() {
        drop(Box::from_raw(walk));
    }
}

/// Run the Monte-Carlo engine: `trials` trajectory histograms averaged, from
/// a single site `x0` in coin state |R>. Writes the mean distribution and,
/// when `out_sigma` is non-null, its standard deviation.
///
/// # Safety
/// `out_dist` must be a valid pointer to a `CwDistribution*`; `out_sigma`
/// may be null.
#[no_mangle]
pub unsafe extern "C" fn cw_mc_run(
    theta: f64,
    phi1: f64,
    phi2: f64,
    phi3: f64,
    p: f64,
    steps: u32,
    x0: i64,
    trials: u64,
    seed: u64,
    out_dist: *mut *mut CwDistribution,
    out_sigma: *mut f64,
) -> CwStatus {
    let chan = match channel(p, phi3) {
        Ok(c) => c,
        Err(status) => return status,
    };
    let cfg = match McConfig::local(trials, seed, CoinParams::new(theta, phi1, phi2), chan, steps, x0)
    {
        Ok(c) => c,
        Err(_) => return CwStatus::InvalidArgument,
    };
    match run_mc(&cfg) {
        Ok(result) => {
            if !out_sigma.is_null() {
                *out_sigma = result.sigma;
            }
            write_handle(
                out_dist,
                CwDistribution {
                    inner: result.distribution,
                },
            )
        }
        Err(_) => CwStatus::InvalidArgument,
    }
}

/// Run the classical reference sampler from the origin.
///
/// # Safety
/// `out_dist` must be a valid pointer to a `CwDistribution*`; `out_sigma`
/// may be null.
#[no_mangle]
pub unsafe extern "C" fn cw_classical_run(
    steps: u32,
    trials: u64,
    seed: u64,
    out_dist: *mut *mut CwDistribution,
    out_sigma: *mut f64,
) -> CwStatus {
    match classical_rw_mc(trials, steps, seed) {
        Ok(result) => {
            if !out_sigma.is_null() {
                *out_sigma = result.sigma;
            }
            write_handle(
                out_dist,
                CwDistribution {
                    inner: result.distribution,
                },
            )
        }
        Err(_) => CwStatus::InvalidArgument,
    }
}

/// The unbiased classical walk law p(y, t). Pure function, no handle needed.
#[no_mangle]
pub extern "C" fn cw_binomial_pmf(y: i64, t: u32) -> f64 {
    binomial_pmf(y, t)
}

/// Number of support points.
///
/// # Safety
/// `dist` must be a live handle; `out_len` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_distribution_len(
    dist: *const CwDistribution,
    out_len: *mut usize,
) -> CwStatus {
    let Some(dist) = dist.as_ref() else {
        return CwStatus::NullArgument;
    };
    if out_len.is_null() {
        return CwStatus::NullArgument;
    }
    *out_len = dist.inner.len();
    CwStatus::Ok
}

/// Copy the support into caller buffers, ascending by position. Fails with
/// `Unsupported` when `capacity` is too small; `out_written` receives the
/// required length either way.
///
/// # Safety
/// `positions` and `probabilities` must each point to `capacity` writable
/// elements; `out_written` may be null.
#[no_mangle]
pub unsafe extern "C" fn cw_distribution_copy(
    dist: *const CwDistribution,
    positions: *mut i64,
    probabilities: *mut f64,
    capacity: usize,
    out_written: *mut usize,
) -> CwStatus {
    let Some(dist) = dist.as_ref() else {
        return CwStatus::NullArgument;
    };
    if positions.is_null() || probabilities.is_null() {
        return CwStatus::NullArgument;
    }
    let needed = dist.inner.len();
    if !out_written.is_null() {
        *out_written = needed;
    }
    if capacity < needed {
        return CwStatus::Unsupported;
    }
    for (i, (x, p)) in dist.inner.iter().enumerate() {
        *positions.add(i) = x;
        *probabilities.add(i) = p;
    }
    CwStatus::Ok
}

/// Probability at one position (zero off the support).
///
/// # Safety
/// `dist` must be a live handle; `out_prob` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_distribution_prob(
    dist: *const CwDistribution,
    x: i64,
    out_prob: *mut f64,
) -> CwStatus {
    let Some(dist) = dist.as_ref() else {
        return CwStatus::NullArgument;
    };
    if out_prob.is_null() {
        return CwStatus::NullArgument;
    }
    *out_prob = dist.inner.prob(x);
    CwStatus::Ok
}

/// Mean and standard deviation of the distribution. Either out-pointer may
/// be null to skip it.
///
/// # Safety
/// `dist` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn cw_distribution_stats(
    dist: *const CwDistribution,
    out_mean: *mut f64,
    out_sigma: *mut f64,
) -> CwStatus {
    let Some(dist) = dist.as_ref() else {
        return CwStatus::NullArgument;
    };
    let s = stats(&dist.inner);
    if !out_mean.is_null() {
        *out_mean = s.mean;
    }
    if !out_sigma.is_null() {
        *out_sigma = s.sigma;
    }
    CwStatus::Ok
}

/// Total-variation distance between two distributions.
///
/// # Safety
/// Both handles must be live; `out_tv` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cw_distribution_tv(
    a: *const CwDistribution,
    b: *const CwDistribution,
    out_tv: *mut f64,
) -> CwStatus {
    let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
        return CwStatus::NullArgument;
    };
    if out_tv.is_null() {
        return CwStatus::NullArgument;
    }
    *out_tv = tv_distance(&a.inner, &b.inner);
    CwStatus::Ok
}

/// Release a distribution handle. Null is a no-op.
///
/// # Safety
/// `dist` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cw_distribution_free(dist: *mut CwDistribution) {
    if !dist.is_null() {
        drop(Box::from_raw(dist));
    }
}
