//! Link-level simulation of a dual-polarized 2×2 MIMO downlink in indoor
//! small cells.
//!
//! A single collocated dual-polarized element at the base station serves a
//! mobile with two omnidirectional antennas. Leakage between the two
//! polarizations, measured by the cross-polarization discrimination (XPD),
//! correlates the two transmit ports exactly like spatial correlation between
//! two closely spaced omnidirectional elements. The crate provides:
//!
//! * [`pattern`]: azimuth radiation patterns, XPD per direction, and rescaling
//!   to a target XPD at constant radiated power;
//! * [`chanmodel`]: the `H + G` dual-polarized channel, the Kronecker
//!   `D·R^{1/2}` channel and a tapped-delay-line variant;
//! * [`correlation`]: the XPD-to-correlation map, spatial correlation for
//!   isotropic and Laplacian departure angles, and the equivalent element
//!   spacing;
//! * [`link`]: zero-forcing receiver, SINR, throughput and CDFs;
//! * [`harness`]: scenarios, synthetic user populations, sweeps and CSV
//!   output behind the `dualpol` command-line tool.
//!
//! ```
//! use dualpol_mimo::correlation::{dualpole_corr_exact, equivalent_spacing, AodDistribution, SpacingQuery};
//!
//! // 10 dB XPD on both ports.
//! let chi = 10.0;
//! let r = dualpole_corr_exact(chi, chi).unwrap();
//! assert!((r.rho().re - 0.5750).abs() < 5e-4);
//!
//! // Two omni elements need about 0.22 wavelengths to be this decorrelated
//! // under isotropic scattering.
//! let d = equivalent_spacing(&SpacingQuery {
//!     target_rho: r.rho().norm(),
//!     wavelength: 1.0,
//!     distribution: AodDistribution::Isotropic,
//! })
//! .unwrap();
//! assert!((d - 0.220).abs() < 0.002);
//! ```

pub mod chanmodel;
pub mod correlation;
pub mod harness;
pub mod link;
pub mod mat2;
pub mod pattern;

pub use num_complex::Complex64;

// The guide under book/ is compiled as doc-tests so its snippets stay in sync
// with the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/patterns.md")]
    mod patterns {}
    #[doc = include_str!("../../../book/src/channels.md")]
    mod channels {}
    #[doc = include_str!("../../../book/src/correlation.md")]
    mod correlation {}
    #[doc = include_str!("../../../book/src/spacing.md")]
    mod spacing {}
    #[doc = include_str!("../../../book/src/link.md")]
    mod link {}
    #[doc = include_str!("../../../book/src/scenarios.md")]
    mod scenarios {}
}
