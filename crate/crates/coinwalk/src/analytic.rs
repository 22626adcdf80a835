//! Closed-form position laws and distribution statistics.
//!
//! `binomial_pmf` is the unbiased-random-walk law the decoherent walk must
//! reproduce; `nonlocal_pmf` is its convex-mixture generalization for
//! non-local initial states; `quadrature_pmf` evaluates the underlying
//! momentum integrals numerically as an independent check of the closed form.

use std::f64::consts::PI;

use num_complex::Complex64;
use statrs::function::gamma::ln_gamma;

use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::lattice::AmplitudeList;

/// Largest step count accepted by `quadrature_pmf`.
pub const QUADRATURE_MAX_T: u32 = 12;

/// Moments of a position distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Statistic {
    pub mean: f64,
    pub variance: f64,
    pub sigma: f64,
}

/// Largest t whose binomial coefficients are computed in exact integer
/// arithmetic; C(t, k) * t stays below u128::MAX up to here.
const EXACT_BINOMIAL_MAX_T: u32 = 120;

fn choose_exact(t: u32, k: u32) -> u128 {
    let k = k.min(t - k) as u128;
    let t = t as u128;
    let mut c: u128 = 1;
    // each partial product C(t-k+1..t-k+j, j) is integral, so / is exact
    for j in 1..=k {
        c = c * (t - k + j) / j;
    }
    c
}

/// p(y, t) = t! / (2^t ((t+y)/2)! ((t-y)/2)!), the probability that an
/// unbiased +/-1 walk sits at y after t steps. Zero off the parity lattice
/// {-t, -t+2, ..., t}. Exact integer arithmetic up to t = 120, log-gamma
/// beyond so large t neither overflows nor loses the distribution's tails.
pub fn binomial_pmf(y: i64, t: u32) -> f64 {
    let t_i = t as i64;
    if y.abs() > t_i || (y + t_i) % 2 != 0 {
        return 0.0;
    }
    let up = (t_i + y) / 2;
    if t <= EXACT_BINOMIAL_MAX_T {
        return choose_exact(t, up as u32) as f64 * 2f64.powi(-(t as i32));
    }
    let log_p = ln_gamma(t as f64 + 1.0)
        - ln_gamma(up as f64 + 1.0)
        - ln_gamma((t_i - y) as f64 / 2.0 + 1.0)
        - t as f64 * std::f64::consts::LN_2;
    log_p.exp()
}

/// The full binomial law as a `Distribution`, translated to start at x0.
pub fn binomial_distribution(x0: i64, t: u32) -> Distribution {
    let t_i = t as i64;
    let pairs = (-t_i..=t_i)
        .step_by(2)
        .map(|y| (x0 + y, binomial_pmf(y, t)));
    Distribution::from_probs(pairs, t).expect("binomial law is normalized")
}

/// Position law for a walk decohered from a non-local initial state: a convex
/// mixture of binomial walks launched from each initially occupied site with
/// weight p_x = |a_x|^2 + |b_x|^2.
pub fn nonlocal_pmf(amps: &AmplitudeList, y: i64, t: u32) -> f64 {
    amps.iter()
        .map(|(x, a, b)| (a.norm_sqr() + b.norm_sqr()) * binomial_pmf(y - x, t))
        .sum()
}

/// The full non-local law as a `Distribution`.
pub fn nonlocal_distribution(amps: &AmplitudeList, t: u32) -> Distribution {
    let (lo, hi) = amps.support_bounds();
    let t_i = t as i64;
    let pairs = (lo - t_i..=hi + t_i).map(|y| (y, nonlocal_pmf(amps, y, t)));
    Distribution::from_probs(pairs, t).expect("convex mixture of binomial laws is normalized")
}

/// Evaluate p(y, t) = (1/2pi)^2 int int e^{iky} e^{-ik'y} cos^t(k - k') dk dk'
/// over [-pi, pi)^2 by tensor-product trapezoid on a uniform periodic grid
/// with 8(t+1) points per axis. The integrand is a trigonometric polynomial
/// of degree at most 2t per axis, so the periodic rule is exact up to
/// rounding. Supported for t <= 12.
pub fn quadrature_pmf(y: i64, t: u32) -> Result<f64> {
    if t > QUADRATURE_MAX_T {
        return Err(Error::Unsupported(format!(
            "quadrature_pmf supports t <= {QUADRATURE_MAX_T}, got {t}"
        )));
    }
    let n = 8 * (t as usize + 1);
    let nodes: Vec<f64> = (0..n).map(|j| -PI + 2.0 * PI * j as f64 / n as f64).collect();
    let mut sum = Complex64::default();
    for &k in &nodes {
        let left = Complex64::from_polar(1.0, k * y as f64);
        for &kp in &nodes {
            let right = Complex64::from_polar(1.0, -kp * y as f64);
            sum += left * right * (k - kp).cos().powi(t as i32);
        }
    }
    Ok(sum.re / (n * n) as f64)
}

/// Mean, variance, and sigma of a position distribution.
pub fn stats(d: &Distribution) -> Statistic {
    let mut mean = 0.0;
    let mut second = 0.0;
    for (x, p) in d.iter() {
        mean += x as f64 * p;
        second += (x as f64) * (x as f64) * p;
    }
    let variance = (second - mean * mean).max(0.0);
    Statistic {
        mean,
        variance,
        sigma: variance.sqrt(),
    }
}

/// Total-variation distance (1/2) sum_y |d1(y) - d2(y)| over the union support.
pub fn tv_distance(d1: &Distribution, d2: &Distribution) -> f64 {
    let mut total = 0.0;
    for (x, p) in d1.iter() {
        total += (p - d2.prob(x)).abs();
    }
    // positions present only in d2
    for (x, p) in d2.iter() {
        if d1.prob(x) == 0.0 {
            total += p;
        }
    }
    total / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_complex::Complex64;

    /// Exact big-integer evaluation of C(t, (t+y)/2) / 2^t.
    fn binomial_exact(y: i64, t: u32) -> f64 {
        let t_i = t as i64;
        if y.abs() > t_i || (y + t_i) % 2 != 0 {
            return 0.0;
        }
        let k = ((t_i + y) / 2) as u64;
        let mut num = BigUint::from(1u64);
        let mut den = BigUint::from(1u64);
        for j in 0..k {
            num *= BigUint::from(t as u64 - j);
            den *= BigUint::from(j + 1);
        }
        let choose = num / den;
        // correctly rounded f64 of the exact integer, then an exact power-of-two division
        let v: f64 = choose.to_string().parse().unwrap();
        v / 2f64.powi(t as i32)
    }

    #[test]
    fn binomial_base_cases() {
        assert_eq!(binomial_pmf(0, 0), 1.0);
        assert!((binomial_pmf(1, 1) - 0.5).abs() < 1e-15);
        assert!((binomial_pmf(-1, 1) - 0.5).abs() < 1e-15);
        assert_eq!(binomial_pmf(0, 1), 0.0);
        assert_eq!(binomial_pmf(3, 2), 0.0);
        assert_eq!(binomial_pmf(-5, 2), 0.0);
    }

    #[test]
    fn binomial_matches_big_integer_oracle() {
        for t in 0..=60u32 {
            for y in (-(t as i64)..=t as i64).step_by(2) {
                let exact = binomial_exact(y, t);
                let got = binomial_pmf(y, t);
                assert!(
                    (got - exact).abs() <= 1e-14 * exact.max(1e-300),
                    "t={t} y={y}: {got} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn binomial_center_t100() {
        // C(100, 50) / 2^100 computed by the big-integer oracle
        let exact = binomial_exact(0, 100);
        assert!((binomial_pmf(0, 100) - exact).abs() < 1e-14 * exact);
        // and the law's sigma at t = 100 is exactly 10
        let s = stats(&binomial_distribution(0, 100));
        assert!((s.sigma - 10.0).abs() < 1e-9);
        assert!(s.mean.abs() < 1e-12);
    }

    #[test]
    fn binomial_normalization_large_t() {
        for t in [1u32, 7, 64, 333, 1000] {
            let total: f64 = (-(t as i64)..=t as i64)
                .step_by(2)
                .map(|y| binomial_pmf(y, t))
                .sum();
            assert!((total - 1.0).abs() < 1e-12, "t={t}: total={total}");
        }
    }

    #[test]
    fn nonlocal_single_site_reduces_to_binomial() {
        let amps = AmplitudeList::new(vec![(
            0,
            Complex64::new(0.6, 0.0),
            Complex64::new(0.0, 0.8),
        )])
        .unwrap();
        for t in [0u32, 1, 5, 12] {
            for y in -13..=13 {
                assert!((nonlocal_pmf(&amps, y, t) - binomial_pmf(y, t)).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn nonlocal_two_site_example() {
        // sites -1 and +1 with weight 1/2 each, one step, probe the origin
        let s = 1.0 / 2.0_f64.sqrt();
        let amps = AmplitudeList::new(vec![
            (-1, Complex64::new(s, 0.0), Complex64::default()),
            (1, Complex64::default(), Complex64::new(s, 0.0)),
        ])
        .unwrap();
        assert!((nonlocal_pmf(&amps, 0, 1) - 0.5).abs() < 1e-15);
        let d = nonlocal_distribution(&amps, 1);
        assert!((d.total() - 1.0).abs() < 1e-12);
        assert_eq!(d.support_bounds(), Some((-2, 2)));
    }

    #[test]
    fn nonlocal_stays_inside_binomial_envelope() {
        let amps = AmplitudeList::new(vec![
            (-2, Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.5)),
            (3, Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)),
        ])
        .unwrap();
        for t in 1..=10u32 {
            for y in -14..=14i64 {
                let v = nonlocal_pmf(&amps, y, t);
                let lo = binomial_pmf(y + 2, t).min(binomial_pmf(y - 3, t));
                let hi = binomial_pmf(y + 2, t).max(binomial_pmf(y - 3, t));
                assert!(v >= lo - 1e-15 && v <= hi + 1e-15);
            }
        }
    }

    #[test]
    fn quadrature_examples() {
        assert!((quadrature_pmf(0, 0).unwrap() - 1.0).abs() < 1e-8);
        assert!((quadrature_pmf(0, 2).unwrap() - 0.5).abs() < 1e-6);
        assert!(quadrature_pmf(1, 2).unwrap().abs() < 1e-6);
    }

    #[test]
    fn quadrature_matches_binomial() {
        for t in 0..=8u32 {
            for y in -(t as i64 + 1)..=(t as i64 + 1) {
                let q = quadrature_pmf(y, t).unwrap();
                assert!(
                    (q - binomial_pmf(y, t)).abs() < 1e-6,
                    "t={t} y={y}: {q} vs {}",
                    binomial_pmf(y, t)
                );
            }
        }
    }

    #[test]
    fn quadrature_rejects_large_t() {
        assert!(matches!(
            quadrature_pmf(0, QUADRATURE_MAX_T + 1),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn stats_examples() {
        let s = stats(&Distribution::delta(0));
        assert_eq!((s.mean, s.sigma), (0.0, 0.0));

        let d = Distribution::from_probs([(-1, 0.5), (1, 0.5)], 1).unwrap();
        let s = stats(&d);
        assert!(s.mean.abs() < 1e-15);
        assert!((s.variance - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tv_examples() {
        let d = binomial_distribution(0, 4);
        assert_eq!(tv_distance(&d, &d), 0.0);
        assert_eq!(
            tv_distance(&Distribution::delta(0), &Distribution::delta(1)),
            1.0
        );
        let hand = Distribution::from_probs([(-2, 0.25), (0, 0.5), (2, 0.25)], 2).unwrap();
        assert!(tv_distance(&binomial_distribution(0, 2), &hand) < 1e-15);
    }
}
