//! Link models for relay-aided reconfigurable surfaces.
//!
//! The crate covers the full chain from node placement to spectral
//! efficiency and required surface size:
//!
//! - [`geometry`]: node placement, link distances and surface element grids.
//! - [`link_budget`]: UMi street-canyon path loss, thermal noise and unit conversions.
//! - [`channel`]: far-field geometric channels, the near-field surface-to-relay
//!   channel and the scalar statistics the rate expressions consume.
//! - [`rates`]: spectral efficiency of a classical surface, stand-alone AF/DF
//!   relays and the relay-aided surface with AF or DF forwarding.
//! - [`sizing`]: minimum element count for a target spectral efficiency.
//! - [`oracle`]: brute-force check that phase conjugation attains the
//!   closed-form SNR.
//!
//! Everything is pure computation over `alloc` and builds without `std`.
//! All internal quantities are linear (mW and unitless gains); dB only
//! appears in the conversion helpers and configuration types.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod channel;
mod error;
pub mod geometry;
pub mod link_budget;
pub mod oracle;
pub mod rates;
pub mod sizing;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
