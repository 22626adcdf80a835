//! The momentum-space superoperator L_{k,k'} as a 4x4 matrix on Pauli
//! column vectors (r0, r1, r2, r3)^T.
//!
//! Two constructions are provided. `build_superop_direct` assembles the map
//! from first principles, column by column: the j-th column is the complex
//! Pauli decomposition of sum_n C_k A_n sigma_j A_n^dag C_{k'}^dag. It is the
//! ground truth. `build_superop_general` transcribes the closed-form entries
//! of the same matrix; the two must agree entrywise, and the transcription is
//! validated against the direct construction in the acceptance suite.
//!
//! At p = 1/2 with phi3 = phi1 the matrix collapses to a sparse form whose
//! t-th power has a closed form (`superop_power_closed`); the reconstructed
//! 2x2 operator and its trace follow from it.

use num_complex::Complex64;

use crate::coinspace::{
    make_coin, make_kraus, pauli_decompose_complex, ChannelParams, CoinParams, PauliVec,
};
use crate::mat2::Mat2;

fn expi(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

/// The momentum-space coin operator C_k = diag(e^{-ik}, e^{ik}) C.
pub fn momentum_coin(k: f64, coin: &CoinParams) -> Mat2 {
    let c = make_coin(coin);
    Mat2::new(
        expi(-k) * c[(0, 0)],
        expi(-k) * c[(0, 1)],
        expi(k) * c[(1, 0)],
        expi(k) * c[(1, 1)],
    )
}

/// A 4x4 superoperator matrix in the Pauli column-vector representation,
/// tagged with the momentum pair and parameters it was built from.
#[derive(Debug, Clone, Copy)]
pub struct SuperopMatrix {
    entries: [[Complex64; 4]; 4],
    k: f64,
    k_prime: f64,
    coin: CoinParams,
    chan: ChannelParams,
}

impl SuperopMatrix {
    pub fn entries(&self) -> &[[Complex64; 4]; 4] {
        &self.entries
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn k_prime(&self) -> f64 {
        self.k_prime
    }

    pub fn coin(&self) -> &CoinParams {
        &self.coin
    }

    pub fn chan(&self) -> &ChannelParams {
        &self.chan
    }

    /// Apply to a real Pauli vector, producing complex output coefficients.
    pub fn apply(&self, v: &PauliVec) -> [Complex64; 4] {
        self.apply_complex(&[
            Complex64::new(v.r0, 0.0),
            Complex64::new(v.r1, 0.0),
            Complex64::new(v.r2, 0.0),
            Complex64::new(v.r3, 0.0),
        ])
    }

    pub fn apply_complex(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [Complex64::default(); 4];
        for (i, row) in self.entries.iter().enumerate() {
            out[i] = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }

    /// Largest entrywise |self - other|.
    pub fn max_abs_diff(&self, other: &SuperopMatrix) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        worst
    }
}

/// First-principles construction of L_{k,k'}: column j is the complex Pauli
/// decomposition of sum_n C_k A_n sigma_j A_n^dag C_{k'}^dag.
pub fn build_superop_direct(
    k: f64,
    k_prime: f64,
    coin: &CoinParams,
    chan: &ChannelParams,
) -> SuperopMatrix {
    let kraus = make_kraus(chan);
    let ck = momentum_coin(k, coin);
    let ckp_dag = momentum_coin(k_prime, coin).adjoint();
    let mut entries = [[Complex64::default(); 4]; 4];
    for (j, col) in (0..4)
        .map(|j| pauli_decompose_complex(&(ck * kraus.apply(&Mat2::pauli(j)) * ckp_dag)))
        .enumerate()
    {
        for (row, &value) in entries.iter_mut().zip(col.iter()) {
            row[j] = value;
        }
    }
    SuperopMatrix {
        entries,
        k,
        k_prime,
        coin: *coin,
        chan: *chan,
    }
}

/// The closed-form entries of L_{k,k'} for the general coin and channel.
pub fn build_superop_general(
    k: f64,
    k_prime: f64,
    coin: &CoinParams,
    chan: &ChannelParams,
) -> SuperopMatrix {
    let (theta, phi1, phi2) = (coin.theta(), coin.phi1(), coin.phi2());
    let (p, phi3) = (chan.p(), chan.phi3());
    let km = k - k_prime;
    let kp = k + k_prime + phi2;
    let i = Complex64::new(0.0, 1.0);
    let re = |x: f64| Complex64::new(x, 0.0);

    // recurring phase brackets
    let b_cos_minus = (p - 1.0) * phi1.cos() + p * (phi1 - 2.0 * phi3).cos();
    let b_sin_minus = (p - 1.0) * phi1.sin() + p * (phi1 - 2.0 * phi3).sin();
    let b_cos_plus = p * (phi1 - 2.0 * phi3).cos() - (p - 1.0) * phi1.cos();
    let b_sin_plus = p * (phi1 - 2.0 * phi3).sin() - (p - 1.0) * phi1.sin();

    let s2t = (2.0 * theta).sin();
    let c2t = (2.0 * theta).cos();
    let q = 2.0 * p - 1.0;

    let entries = [
        [
            re(km.cos()),
            i * (b_cos_minus * km.sin() * s2t),
            i * (km.sin() * s2t * b_sin_plus),
            i * (q * c2t * km.sin()),
        ],
        [
            Complex64::default(),
            re(c2t * kp.cos() * b_cos_minus - kp.sin() * b_sin_minus),
            re(b_cos_plus * kp.sin() + c2t * kp.cos() * b_sin_plus),
            re(-q * kp.cos() * s2t),
        ],
        [
            Complex64::default(),
            re(c2t * b_cos_minus * kp.sin() + kp.cos() * b_sin_minus),
            re(-kp.cos() * b_cos_plus + c2t * kp.sin() * b_sin_plus),
            re(-q * s2t * kp.sin()),
        ],
        [
            -i * km.sin(),
            re(-km.cos() * b_cos_minus * s2t),
            re(-km.cos() * s2t * b_sin_plus),
            re(-q * km.cos() * c2t),
        ],
    ];
    SuperopMatrix {
        entries,
        k,
        k_prime,
        coin: *coin,
        chan: *chan,
    }
}

/// The sparse form L_{k,k'} takes at p = 1/2 with phi3 = phi1. These two
/// parameters are implied by the construction rather than accepted, so the
/// simplification cannot be invoked outside its regime.
pub fn build_superop_simplified(k: f64, k_prime: f64, coin: &CoinParams) -> SuperopMatrix {
    let (phi1, phi2) = (coin.phi1(), coin.phi2());
    let km = k - k_prime;
    let kp = k + k_prime + phi2;
    let re = |x: f64| Complex64::new(x, 0.0);

    let mut entries = [[Complex64::default(); 4]; 4];
    entries[0][0] = re(km.cos());
    entries[1][1] = re(kp.sin() * phi1.sin());
    entries[1][2] = re(kp.sin() * phi1.cos());
    entries[2][1] = re(-kp.cos() * phi1.sin());
    entries[2][2] = re(-kp.cos() * phi1.cos());
    entries[3][0] = Complex64::new(0.0, -km.sin());
    SuperopMatrix {
        entries,
        k,
        k_prime,
        coin: *coin,
        chan: ChannelParams::classical_point(coin),
    }
}

/// Closed form of L_{k,k'}^t in the p = 1/2, phi3 = phi1 regime.
///
/// The (r1, r2) block of the single-step matrix is the outer product
/// (sin kp, -cos kp)^T (sin phi1, cos phi1), so its powers contract through
/// the scalar -cos(k + k' + phi1 + phi2); the (r0, r3) block is triangular.
pub fn superop_power_closed(k: f64, k_prime: f64, coin: &CoinParams, t: u32) -> SuperopMatrix {
    assert!(t >= 1, "superop_power_closed requires t >= 1");
    let (phi1, phi2) = (coin.phi1(), coin.phi2());
    let km = k - k_prime;
    let kp = k + k_prime + phi2;
    let f = k + k_prime + phi1 + phi2;
    let re = |x: f64| Complex64::new(x, 0.0);

    let sign = if t.is_multiple_of(2) { -1.0 } else { 1.0 }; // (-1)^{t+1}
    let contraction = f.cos().powi(t as i32 - 1);

    let mut entries = [[Complex64::default(); 4]; 4];
    entries[0][0] = re(km.cos().powi(t as i32));
    entries[1][1] = re(sign * contraction * phi1.sin() * kp.sin());
    entries[1][2] = re(sign * contraction * phi1.cos() * kp.sin());
    entries[2][1] = re(-sign * contraction * kp.cos() * phi1.sin());
    entries[2][2] = re(-sign * contraction * phi1.cos() * kp.cos());
    entries[3][0] = Complex64::new(0.0, -km.cos().powi(t as i32 - 1) * km.sin());
    SuperopMatrix {
        entries,
        k,
        k_prime,
        coin: *coin,
        chan: ChannelParams::classical_point(coin),
    }
}

/// The evolved coin operator L_{k,k'}^t O rebuilt as a 2x2 matrix from its
/// closed-form entries (p = 1/2, phi3 = phi1 regime).
pub fn reconstruct_evolved(
    v: &PauliVec,
    k: f64,
    k_prime: f64,
    coin: &CoinParams,
    t: u32,
) -> Mat2 {
    assert!(t >= 1, "reconstruct_evolved requires t >= 1");
    let (phi1, phi2) = (coin.phi1(), coin.phi2());
    let km = k - k_prime;
    let kp = k + k_prime + phi2;
    let f = k + k_prime + phi1 + phi2;
    let i = Complex64::new(0.0, 1.0);

    let damp_diag = km.cos().powi(t as i32 - 1);
    let damp_off = f.cos().powi(t as i32 - 1);
    let chirality = v.r1 * phi1.sin() + v.r2 * phi1.cos();
    let pi_t = std::f64::consts::PI * t as f64;

    let c11 = expi(-km) * v.r0 * damp_diag;
    let c22 = expi(km) * v.r0 * damp_diag;
    let c12 = -i * expi(-(kp - pi_t)) * damp_off * chirality;
    let c21 = i * expi(kp + pi_t) * damp_off * chirality;
    Mat2::new(c11, c12, c21, c22)
}

/// Tr(L_{k,k'}^t O) = 2 r0 cos^t(k - k'), independent of r1, r2, r3.
pub fn superop_trace(v: &PauliVec, k: f64, k_prime: f64, t: u32) -> Complex64 {
    assert!(t >= 1, "superop_trace requires t >= 1");
    Complex64::new(2.0 * v.r0 * (k - k_prime).cos().powi(t as i32), 0.0)
}
