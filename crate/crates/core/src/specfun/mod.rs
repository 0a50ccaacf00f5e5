//! Special functions used by the closed-form link metrics.
//!
//! Everything here is pure and reentrant.

pub(crate) mod ext;
mod gamma;
mod hypergeom;
mod incgamma;
mod normal;

pub(crate) use gamma::ln_gamma_half_ratio;
pub use gamma::{digamma, ln_gamma};
pub use hypergeom::{gen_hypergeom_pfq, pfq_series, SeriesControl, SeriesSum};
pub use incgamma::{reg_lower_inc_gamma, reg_upper_inc_gamma};
pub use normal::{normal_cdf, q_function};
