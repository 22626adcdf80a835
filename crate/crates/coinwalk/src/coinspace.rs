//! Coin-space algebra: coin operators, Kraus operators of the decoherence
//! channel, channel application on coin density matrices, and the Pauli-basis
//! decomposition used by the superoperator representation.
//!
//! The coin operator family is
//!
//! ```text
//! C = [ cos(theta)                e^{i phi1} sin(theta)          ]
//!     [ e^{i phi2} sin(theta)    -e^{i(phi1+phi2)} cos(theta)    ]
//! ```
//!
//! and the channel is the Kraus pair
//!
//! ```text
//! A0 = sqrt(p) (e^{i phi3}|R><L| - e^{-i phi3}|L><R|),   A1 = sqrt(1-p) I,
//! ```
//!
//! a simultaneous bit-and-phase flip applied with probability `p` per step.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mat2::Mat2;

const HERMITICITY_TOL: f64 = 1e-12;
const POSITIVITY_TOL: f64 = 1e-10;
const NORM_TOL: f64 = 1e-9;

fn expi(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

/// The three coin angles (theta, phi1, phi2).
///
/// Angles are reduced into theta in [0, 2pi) and phi1, phi2 in [0, pi) on
/// construction; out-of-range input wraps instead of erroring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinParams {
    theta: f64,
    phi1: f64,
    phi2: f64,
}

impl CoinParams {
    pub fn new(theta: f64, phi1: f64, phi2: f64) -> CoinParams {
        CoinParams {
            theta: theta.rem_euclid(2.0 * PI),
            phi1: phi1.rem_euclid(PI),
            phi2: phi2.rem_euclid(PI),
        }
    }

    /// theta = pi/4, phi1 = phi2 = 0: the Hadamard coin.
    pub fn hadamard() -> CoinParams {
        CoinParams::new(PI / 4.0, 0.0, 0.0)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi1(&self) -> f64 {
        self.phi1
    }

    pub fn phi2(&self) -> f64 {
        self.phi2
    }
}

/// Decoherence probability `p` and flip phase `phi3`.
///
/// `p` covers the closed interval [0, 1]: p = 0 is the undecohered unitary
/// walk, p = 1 the always-flip walk. `phi3` is reduced into [0, pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    p: f64,
    phi3: f64,
}

impl ChannelParams {
    pub fn new(p: f64, phi3: f64) -> Result<ChannelParams> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Config(format!(
                "decoherence probability must lie in [0, 1], got {p}"
            )));
        }
        Ok(ChannelParams {
            p,
            phi3: phi3.rem_euclid(PI),
        })
    }

    /// p = 1/2 with phi3 = phi1: the regime in which the walk is exactly
    /// classical at every step.
    pub fn classical_point(coin: &CoinParams) -> ChannelParams {
        ChannelParams {
            p: 0.5,
            phi3: coin.phi1(),
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn phi3(&self) -> f64 {
        self.phi3
    }
}

/// A validated 2x2 coin density matrix: Hermitian, unit trace, positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinDensity(Mat2);

impl CoinDensity {
    pub fn new(m: Mat2) -> Result<CoinDensity> {
        let herm = m.hermiticity_deviation();
        if herm > HERMITICITY_TOL {
            return Err(Error::InvalidState(format!(
                "coin density matrix is not Hermitian (deviation {herm:.3e})"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > HERMITICITY_TOL || tr.im.abs() > HERMITICITY_TOL {
            return Err(Error::InvalidState(format!(
                "coin density matrix trace is {tr}, expected 1"
            )));
        }
        let (min_eig, _) = m.hermitian_eigenvalues();
        if min_eig < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!(
                "coin density matrix has negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(CoinDensity(m))
    }

    /// Pure state |psi><psi| from coin amplitudes (a, b); errors if
    /// |a|^2 + |b|^2 deviates from 1 by more than 1e-9.
    pub fn pure(a: Complex64, b: Complex64) -> Result<CoinDensity> {
        let n2 = a.norm_sqr() + b.norm_sqr();
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization(format!(
                "coin amplitudes have squared norm {n2}, expected 1"
            )));
        }
        let (a, b) = (a / n2.sqrt(), b / n2.sqrt());
        Ok(CoinDensity(Mat2::new(
            a * a.conj(),
            a * b.conj(),
            b * a.conj(),
            b * b.conj(),
        )))
    }

    /// |R><R|.
    pub fn basis_r() -> CoinDensity {
        CoinDensity(Mat2::ket_bra(0, 0))
    }

    /// |L><L|.
    pub fn basis_l() -> CoinDensity {
        CoinDensity(Mat2::ket_bra(1, 1))
    }

    /// I/2.
    pub fn maximally_mixed() -> CoinDensity {
        CoinDensity(Mat2::identity().scale_re(0.5))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub(crate) fn from_mat_unchecked(m: Mat2) -> CoinDensity {
        debug_assert!(m.hermiticity_deviation() <= 1e-10);
        debug_assert!((m.trace().re - 1.0).abs() <= 1e-10);
        CoinDensity(m)
    }
}

/// Real coefficients of a Hermitian coin operator in the (sigma_0 .. sigma_3)
/// basis: O = r0 sigma_0 + r1 sigma_1 + r2 sigma_2 + r3 sigma_3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliVec {
    pub r0: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl PauliVec {
    pub fn new(r0: f64, r1: f64, r2: f64, r3: f64) -> PauliVec {
        PauliVec { r0, r1, r2, r3 }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.r0, self.r1, self.r2, self.r3]
    }

    /// True when the coefficients describe a valid state: 2 r0 = 1 and the
    /// Bloch vector fits inside the unit ball.
    pub fn is_state(&self) -> bool {
        (2.0 * self.r0 - 1.0).abs() <= 1e-10
            && self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3
                <= self.r0 * self.r0 + 1e-10
    }
}

/// The Kraus pair (A0, A1) together with the channel parameters it was
/// built from.
#[derive(Debug, Clone, Copy)]
pub struct KrausPair {
    a0: Mat2,
    a1: Mat2,
    chan: ChannelParams,
}

impl KrausPair {
    pub fn a0(&self) -> &Mat2 {
        &self.a0
    }

    pub fn a1(&self) -> &Mat2 {
        &self.a1
    }

    pub fn chan(&self) -> &ChannelParams {
        &self.chan
    }

    /// The Kraus sum A0 m A0^dag + A1 m A1^dag on a raw matrix. Blocks of the
    /// full walk density matrix go through this, so the input need not be
    /// Hermitian.
    pub fn apply(&self, m: &Mat2) -> Mat2 {
        self.a0 * *m * self.a0.adjoint() + self.a1 * *m * self.a1.adjoint()
    }

    /// A0^dag A0 + A1^dag A1, which must equal the identity.
    pub fn completeness(&self) -> Mat2 {
        self.a0.adjoint() * self.a0 + self.a1.adjoint() * self.a1
    }
}

/// The unitary factor of A0: U0 = e^{i phi3}|R><L| - e^{-i phi3}|L><R|.
pub fn flip_unitary(phi3: f64) -> Mat2 {
    Mat2::new(
        Complex64::default(),
        expi(phi3),
        -expi(-phi3),
        Complex64::default(),
    )
}

/// The coin operator C of the (theta, phi1, phi2) family.
pub fn make_coin(params: &CoinParams) -> Mat2 {
    let (st, ct) = params.theta.sin_cos();
    Mat2::new(
        Complex64::new(ct, 0.0),
        expi(params.phi1) * st,
        expi(params.phi2) * st,
        -expi(params.phi1 + params.phi2) * ct,
    )
}

/// The alternate coin D = C U0 (with phi3 = phi1) used to realize the
/// decoherent walk by switching coins at random:
///
/// ```text
/// D = [ -sin(theta)               e^{i phi1} cos(theta)       ]
///     [ e^{i phi2} cos(theta)     e^{i(phi1+phi2)} sin(theta) ]
/// ```
pub fn make_flip_coin(params: &CoinParams) -> Mat2 {
    let (st, ct) = params.theta.sin_cos();
    Mat2::new(
        Complex64::new(-st, 0.0),
        expi(params.phi1) * ct,
        expi(params.phi2) * ct,
        expi(params.phi1 + params.phi2) * st,
    )
}

/// Build the Kraus pair A0 = sqrt(p) U0, A1 = sqrt(1-p) I.
pub fn make_kraus(chan: &ChannelParams) -> KrausPair {
    let a0 = flip_unitary(chan.phi3).scale_re(chan.p.sqrt());
    let a1 = Mat2::identity().scale_re((1.0 - chan.p).sqrt());
    KrausPair {
        a0,
        a1,
        chan: *chan,
    }
}

/// One application of the channel to a coin state.
pub fn apply_channel(rho: &CoinDensity, kraus: &KrausPair) -> CoinDensity {
    CoinDensity::from_mat_unchecked(kraus.apply(rho.matrix()))
}

/// Pauli coefficients r_i = Tr(m sigma_i) / 2 of a Hermitian matrix.
/// Errors if the input deviates from Hermiticity by more than 1e-12.
pub fn pauli_decompose(m: &Mat2) -> Result<PauliVec> {
    let dev = m.hermiticity_deviation();
    if dev > HERMITICITY_TOL {
        return Err(Error::InvalidState(format!(
            "Pauli decomposition requires a Hermitian matrix (deviation {dev:.3e})"
        )));
    }
    let c = pauli_decompose_complex(m);
    Ok(PauliVec::new(c[0].re, c[1].re, c[2].re, c[3].re))
}

/// Complex Pauli coefficients of an arbitrary 2x2 matrix. The momentum-space
/// superoperator acts on these, where k != k' sectors produce non-Hermitian
/// operators.
pub fn pauli_decompose_complex(m: &Mat2) -> [Complex64; 4] {
    let half = Complex64::new(0.5, 0.0);
    [
        (m[(0, 0)] + m[(1, 1)]) * half,
        (m[(0, 1)] + m[(1, 0)]) * half,
        (m[(0, 1)] - m[(1, 0)]) * half * Complex64::new(0.0, 1.0),
        (m[(0, 0)] - m[(1, 1)]) * half,
    ]
}

/// Rebuild r0 sigma_0 + r1 sigma_1 + r2 sigma_2 + r3 sigma_3.
pub fn pauli_reconstruct(v: &PauliVec) -> Mat2 {
    pauli_reconstruct_complex(&[
        Complex64::new(v.r0, 0.0),
        Complex64::new(v.r1, 0.0),
        Complex64::new(v.r2, 0.0),
        Complex64::new(v.r3, 0.0),
    ])
}

/// Rebuild a matrix from complex Pauli coefficients.
pub fn pauli_reconstruct_complex(c: &[Complex64; 4]) -> Mat2 {
    Mat2::new(
        c[0] + c[3],
        c[1] - c[2] * Complex64::new(0.0, 1.0),
        c[1] + c[2] * Complex64::new(0.0, 1.0),
        c[0] - c[3],
    )
}
