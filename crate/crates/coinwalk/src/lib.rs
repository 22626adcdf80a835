//! Discrete-time quantum walks on the integer line under a coin-space Kraus
//! decoherence channel.
//!
//! The channel applies a simultaneous bit-and-phase flip to the coin with
//! probability `p` per step. At `p = 1/2` with the flip phase matched to the
//! coin phase (`phi3 = phi1`) the walk's position distribution equals the
//! binomial law of an unbiased classical random walk at every step, for every
//! coin and every initial coin state. This crate computes that walk by three
//! mutually independent routes and cross-validates them:
//!
//! * [`lattice`] — exact evolution of the full coin (x) position density
//!   matrix,
//! * [`montecarlo`] — trajectory unraveling into random unitary branches,
//!   averaged over trials,
//! * [`analytic`] — the closed-form binomial and convex-mixture laws, plus a
//!   numerical-quadrature evaluation of the underlying momentum integrals.
//!
//! [`coinspace`] holds the 2x2 coin algebra and [`superop`] the momentum-space
//! superoperator in the Pauli representation, including its closed-form t-th
//! power. [`verify`] bundles the cross-engine checks the `coinwalk verify`
//! command runs.

pub mod analytic;
pub mod cli;
pub mod coinspace;
pub mod distribution;
pub mod error;
pub mod lattice;
pub mod mat2;
pub mod montecarlo;
pub mod superop;
pub mod svg;
pub mod verify;

pub use coinspace::{ChannelParams, CoinDensity, CoinParams, KrausPair, PauliVec};
pub use distribution::Distribution;
pub use error::{Error, Result};
pub use lattice::{AmplitudeList, WalkDensity};
pub use mat2::Mat2;
pub use montecarlo::{McConfig, McResult, PureWalkState};
pub use superop::SuperopMatrix;
