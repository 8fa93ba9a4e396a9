//! Achievable sum rates, rate regions and sum-rate outer bounds for the
//! Gaussian interference channel aided by a half-duplex out-of-band relay.
//!
//! The interference channel (IC) carries `S1 -> D1` and `S2 -> D2` with cross
//! gains `a12`, `a21`. On an orthogonal band the relay first listens to both
//! sources (MAC phase, gains `b1`, `b2`, fraction `eta_mac`) and then
//! broadcasts to both destinations (BC phase, gains `c1`, `c2`, fraction
//! `eta_bc`). The crate evaluates a decode-and-forward scheme with optional
//! interference forwarding, the matching outer bound, and the conditions
//! under which the two coincide.

pub mod achievability;
pub mod bandwidth;
pub mod channel;
pub mod cli;
pub mod error;
pub mod numerics;
pub mod outerbound;
pub mod regions;

pub use channel::{
    gaussian_capacity, regime_flags, strong_interference_threshold, BandwidthSplit,
    ChannelGains, PowerSplit, Powers, RegimeFlags, Scenario, ScenarioConfig,
};
pub use error::{Error, Result};
pub use regions::LinearRateSystem;
