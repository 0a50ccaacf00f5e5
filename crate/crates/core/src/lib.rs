//! Performance analysis of RIS-assisted links over Nakagami-m fading.
//!
//! The end-to-end SNR of an `N`-element surface with ideal phase alignment is
//! `γ = γ̄ Z²`, `Z = Σ αᵢβᵢ`, where `αᵢ`, `βᵢ` are Nakagami-m envelopes of the
//! two hops. [`channel`] fits `Z` with a one-term Laguerre (gamma-type) density;
//! [`metrics`] derives outage, symbol-error and capacity figures from it;
//! [`montecarlo`] simulates the exact model; [`optimizer`] sizes `N` for a
//! target outage; [`experiments`] ties them into sweeps.

pub mod channel;
pub mod error;
pub mod experiments;
pub mod metrics;
pub mod montecarlo;
pub mod optimizer;
pub mod quad;
pub mod specfun;

pub use channel::{ChannelParams, Fading, LaguerreParams, SnrPoint};
pub use error::{Error, Result};
pub use metrics::{AsymptoticGains, ModulationParams};
pub use montecarlo::{McConfig, McEstimate};
pub use optimizer::{OptProblem, OptResult};

/// `10^(dB/10)`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// `10 log10(x)`.
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}
