//! Trajectory-based stochastic simulation of the decoherent walk.
//!
//! Both Kraus operators are proportional to unitaries, so the channel can be
//! unraveled: each step applies the unitary branch U0-then-coin (the flip
//! branch) with probability p, or just the coin with probability 1 - p, then
//! shifts. Every factor is unitary, so trajectories never need renormalizing.
//! The mean of per-trajectory |psi|^2 histograms converges to the exact
//! density-matrix marginal.
//!
//! Reproducibility: trial i draws from an independent ChaCha stream keyed by
//! (seed, i), and histogram reduction runs over fixed-size trial chunks summed
//! in index order, so results are bit-identical no matter how many threads
//! rayon parcels the chunks out to.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analytic::stats;
use crate::coinspace::{flip_unitary, make_coin, make_kraus, ChannelParams, CoinParams};
use crate::distribution::Distribution;
use crate::error::{Error, Result};
use crate::lattice::AmplitudeList;
use crate::mat2::Mat2;

const UNITARY_TOL: f64 = 1e-10;
const CHUNK: u64 = 256;

/// A pure coin-walker state on its active window: amplitude pair
/// (psi_R(x), psi_L(x)) per site.
#[derive(Debug, Clone)]
pub struct PureWalkState {
    psi: Vec<[Complex64; 2]>,
    x_min: i64,
    t: u32,
}

impl PureWalkState {
    fn from_amps(amps: &AmplitudeList, padding: u32) -> PureWalkState {
        let (lo, hi) = amps.support_bounds();
        let width = (hi - lo) as usize + 2 * padding as usize + 1;
        let x_min = lo - padding as i64;
        let mut psi = vec![[Complex64::default(); 2]; width];
        for (x, a, b) in amps.iter() {
            psi[(x - x_min) as usize] = [a, b];
        }
        PureWalkState { psi, x_min, t: 0 }
    }

    /// Apply a coin-space unitary to every site.
    fn apply_coin(&mut self, m: &Mat2) {
        for site in self.psi.iter_mut() {
            *site = m.mul_vec(*site);
        }
    }

    /// Conditional shift: the R component moves right, L moves left.
    fn shift(&mut self) {
        let w = self.psi.len();
        for i in (1..w).rev() {
            self.psi[i][0] = self.psi[i - 1][0];
        }
        self.psi[0][0] = Complex64::default();
        for i in 0..w - 1 {
            self.psi[i][1] = self.psi[i + 1][1];
        }
        self.psi[w - 1][1] = Complex64::default();
        self.t += 1;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.psi
            .iter()
            .map(|s| s[0].norm_sqr() + s[1].norm_sqr())
            .sum()
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// |psi|^2 per site over the window.
    pub fn histogram(&self) -> Vec<(i64, f64)> {
        self.psi
            .iter()
            .enumerate()
            .map(|(i, s)| (self.x_min + i as i64, s[0].norm_sqr() + s[1].norm_sqr()))
            .collect()
    }
}

/// Monte-Carlo run configuration.
#[derive(Debug, Clone)]
pub struct McConfig {
    trials: u64,
    seed: u64,
    coin: CoinParams,
    chan: ChannelParams,
    steps: u32,
    initial: AmplitudeList,
}

impl McConfig {
    /// Validates trials >= 1 and the unraveling precondition: every Kraus
    /// operator with nonzero weight must be proportional to a unitary.
    pub fn new(
        trials: u64,
        seed: u64,
        coin: CoinParams,
        chan: ChannelParams,
        steps: u32,
        initial: AmplitudeList,
    ) -> Result<McConfig> {
        if trials < 1 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        let kraus = make_kraus(&chan);
        if chan.p() > 0.0 {
            let u = kraus.a0().scale_re(1.0 / chan.p().sqrt());
            if !u.is_unitary(UNITARY_TOL) {
                return Err(Error::Config(
                    "channel cannot be unraveled: A0/sqrt(p) is not unitary".into(),
                ));
            }
        }
        if chan.p() < 1.0 {
            let u = kraus.a1().scale_re(1.0 / (1.0 - chan.p()).sqrt());
            if !u.is_unitary(UNITARY_TOL) {
                return Err(Error::Config(
                    "channel cannot be unraveled: A1/sqrt(1-p) is not unitary".into(),
                ));
            }
        }
        Ok(McConfig {
            trials,
            seed,
            coin,
            chan,
            steps,
            initial,
        })
    }

    /// Walker launched from a single site in coin state |R>.
    pub fn local(
        trials: u64,
        seed: u64,
        coin: CoinParams,
        chan: ChannelParams,
        steps: u32,
        x0: i64,
    ) -> Result<McConfig> {
        let initial = AmplitudeList::local(x0, Complex64::new(1.0, 0.0), Complex64::default())?;
        McConfig::new(trials, seed, coin, chan, steps, initial)
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn steps(&self) -> u32 {
        self.steps
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Result of an ensemble run: the trial-averaged distribution, its sigma,
/// and the RNG stream ids the trials consumed.
#[derive(Debug, Clone)]
pub struct McResult {
    pub distribution: Distribution,
    pub sigma: f64,
    pub streams: Vec<u64>,
}

/// Independent, schedule-free RNG for one trial.
fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Evolve one trajectory and return the final pure state.
fn trajectory_state(cfg: &McConfig, trial_index: u64) -> PureWalkState {
    let mut rng = trial_rng(cfg.seed, trial_index);
    let coin = make_coin(&cfg.coin);
    let flip_branch = coin * flip_unitary(cfg.chan.phi3());
    let mut state = PureWalkState::from_amps(&cfg.initial, cfg.steps);
    for _ in 0..cfg.steps {
        if rng.gen_bool(cfg.chan.p()) {
            state.apply_coin(&flip_branch);
        } else {
            state.apply_coin(&coin);
        }
        state.shift();
    }
    state
}

/// The |psi|^2 histogram of a single trajectory, bit-exact for a given
/// (seed, trial_index).
pub fn sample_trajectory(cfg: &McConfig, trial_index: u64) -> Distribution {
    let state = trajectory_state(cfg, trial_index);
    Distribution::from_probs(state.histogram(), cfg.steps)
        .expect("unitary trajectory keeps |psi|^2 normalized")
}

/// Average the trajectory histograms of `cfg.trials` independent runs.
pub fn run_mc(cfg: &McConfig) -> Result<McResult> {
    let (lo, hi) = cfg.initial.support_bounds();
    let x_min = lo - cfg.steps as i64;
    let width = (hi - lo) as usize + 2 * cfg.steps as usize + 1;

    let n_chunks = cfg.trials.div_ceil(CHUNK);
    let partials: Vec<Vec<f64>> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(cfg.trials);
            let mut acc = vec![0.0f64; width];
            for trial in start..end {
                let state = trajectory_state(cfg, trial);
                for (i, site) in state.psi.iter().enumerate() {
                    acc[i] += site[0].norm_sqr() + site[1].norm_sqr();
                }
            }
            acc
        })
        .collect();

    let mut total = vec![0.0f64; width];
    for part in &partials {
        for (t, p) in total.iter_mut().zip(part) {
            *t += p;
        }
    }
    let scale = 1.0 / cfg.trials as f64;
    let pairs = total
        .iter()
        .enumerate()
        .map(|(i, &v)| (x_min + i as i64, v * scale));
    let distribution = Distribution::from_probs(pairs, cfg.steps)?;
    let sigma = stats(&distribution).sigma;
    Ok(McResult {
        distribution,
        sigma,
        streams: (0..cfg.trials).collect(),
    })
}

/// Reference sampler: `trials` unbiased classical +/-1 walks of `steps` steps
/// from the origin, averaged into a histogram.
pub fn classical_rw_mc(trials: u64, steps: u32, seed: u64) -> Result<McResult> {
    if trials < 1 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let width = 2 * steps as usize + 1;
    let n_chunks = trials.div_ceil(CHUNK);
    let partials: Vec<Vec<u64>> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK;
            let end = (start + CHUNK).min(trials);
            let mut counts = vec![0u64; width];
            for trial in start..end {
                let mut rng = trial_rng(seed, trial);
                let mut position = 0i64;
                for _ in 0..steps {
                    position += if rng.gen_bool(0.5) { 1 } else { -1 };
                }
                counts[(position + steps as i64) as usize] += 1;
            }
            counts
        })
        .collect();

    let mut counts = vec![0u64; width];
    for part in &partials {
        for (t, p) in counts.iter_mut().zip(part) {
            *t += p;
        }
    }
    let pairs = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| (i as i64 - steps as i64, c as f64 / trials as f64));
    let distribution = Distribution::from_probs(pairs, steps)?;
    let sigma = stats(&distribution).sigma;
    Ok(McResult {
        distribution,
        sigma,
        streams: (0..trials).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{binomial_distribution, tv_distance};

    fn hadamard_cfg(trials: u64, steps: u32, seed: u64) -> McConfig {
        McConfig::local(
            trials,
            seed,
            CoinParams::hadamard(),
            ChannelParams::new(0.5, 0.0).unwrap(),
            steps,
            0,
        )
        .unwrap()
    }

    #[test]
    fn zero_steps_is_a_delta() {
        let cfg = hadamard_cfg(4, 0, 9);
        let d = sample_trajectory(&cfg, 0);
        assert_eq!(d.prob(0), 1.0);
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn one_step_is_half_half_on_either_branch() {
        // under the Hadamard coin both branch unitaries send |R> to an
        // equal-weight superposition, so every trajectory gives {+-1: 1/2}
        for trial in 0..8 {
            let cfg = hadamard_cfg(16, 1, 1234);
            let d = sample_trajectory(&cfg, trial);
            assert!((d.prob(-1) - 0.5).abs() < 1e-14);
            assert!((d.prob(1) - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn trajectories_are_deterministic() {
        let cfg = hadamard_cfg(4, 40, 77);
        let a = sample_trajectory(&cfg, 3);
        let b = sample_trajectory(&cfg, 3);
        assert_eq!(a, b);
        // different trials draw different branch sequences
        let c = sample_trajectory(&cfg, 4);
        assert_ne!(a, c);
    }

    #[test]
    fn norm_is_preserved_over_100_steps() {
        let cfg = hadamard_cfg(1, 100, 5);
        let state = trajectory_state(&cfg, 0);
        assert!((state.norm_sqr() - 1.0).abs() < 1e-10);
        assert_eq!(state.t(), 100);
    }

    #[test]
    fn single_trial_run_equals_trajectory() {
        let cfg = hadamard_cfg(1, 12, 31);
        let r = run_mc(&cfg).unwrap();
        let d = sample_trajectory(&cfg, 0);
        assert_eq!(r.distribution, d);
        assert_eq!(r.streams, vec![0]);
    }

    #[test]
    fn run_is_reproducible() {
        let cfg = hadamard_cfg(600, 15, 2024);
        let a = run_mc(&cfg).unwrap();
        let b = run_mc(&cfg).unwrap();
        assert_eq!(a.distribution, b.distribution);
        assert_eq!(a.sigma.to_bits(), b.sigma.to_bits());
    }

    #[test]
    fn figure_configuration_sigma_band() {
        let cfg = hadamard_cfg(1000, 100, 42);
        let r = run_mc(&cfg).unwrap();
        assert!(
            r.sigma > 9.5 && r.sigma < 10.5,
            "sigma {} outside [9.5, 10.5]",
            r.sigma
        );
        assert!((r.distribution.total() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn tv_shrinks_with_more_trials() {
        let exact = binomial_distribution(0, 16);
        let small = run_mc(&hadamard_cfg(100, 16, 7)).unwrap();
        let large = run_mc(&hadamard_cfg(10_000, 16, 7)).unwrap();
        let tv_small = tv_distance(&small.distribution, &exact);
        let tv_large = tv_distance(&large.distribution, &exact);
        assert!(
            tv_large < tv_small,
            "TV did not shrink: {tv_small} -> {tv_large}"
        );
    }

    #[test]
    fn diffusive_sigma_scaling() {
        for steps in [25u32, 100, 400] {
            let cfg = hadamard_cfg(10_000, steps, 11);
            let r = run_mc(&cfg).unwrap();
            let ratio = r.sigma / (steps as f64).sqrt();
            assert!(
                (0.9..=1.1).contains(&ratio),
                "steps={steps}: sigma/sqrt(t) = {ratio}"
            );
        }
    }

    #[test]
    fn classical_reference_sampler() {
        let r = classical_rw_mc(40_000, 1, 3).unwrap();
        assert!((r.distribution.prob(-1) - 0.5).abs() < 0.02);
        assert!((r.distribution.prob(1) - 0.5).abs() < 0.02);

        let r = classical_rw_mc(100_000, 100, 3).unwrap();
        assert!((r.sigma - 10.0).abs() < 0.15, "sigma {}", r.sigma);
    }

    #[test]
    fn classical_is_reproducible() {
        let a = classical_rw_mc(5000, 30, 99).unwrap();
        let b = classical_rw_mc(5000, 30, 99).unwrap();
        assert_eq!(a.distribution, b.distribution);
    }

    #[test]
    fn rejects_zero_trials() {
        assert!(classical_rw_mc(0, 5, 1).is_err());
        let initial =
            AmplitudeList::local(0, Complex64::new(1.0, 0.0), Complex64::default()).unwrap();
        assert!(McConfig::new(
            0,
            1,
            CoinParams::hadamard(),
            ChannelParams::new(0.5, 0.0).unwrap(),
            5,
            initial
        )
        .is_err());
    }

    #[test]
    fn nonlocal_initial_state_runs() {
        let s = 1.0 / 2.0_f64.sqrt();
        let initial = AmplitudeList::new(vec![
            (-2, Complex64::new(s, 0.0), Complex64::default()),
            (2, Complex64::default(), Complex64::new(0.0, s)),
        ])
        .unwrap();
        let cfg = McConfig::new(
            2000,
            17,
            CoinParams::hadamard(),
            ChannelParams::new(0.5, 0.0).unwrap(),
            6,
            initial,
        )
        .unwrap();
        let r = run_mc(&cfg).unwrap();
        assert!((r.distribution.total() - 1.0).abs() < 1e-9);
        let (lo, hi) = r.distribution.support_bounds().unwrap();
        assert!(lo >= -8 && hi <= 8);
    }
}
