//! Collective dephasing of qubits sharing a bosonic reservoir, and the phase
//! estimation precision that survives it.
//!
//! Units: the collective cutoff `w_bar = c / sigma` is the natural frequency
//! unit, times are in `1 / w_bar`, temperatures in `hbar w_bar / k_B`.
//!
//! ```
//! use collective_dephasing::{cloud::CloudGeometry, dephasing, reservoir::*};
//!
//! let sd = SpectralDensity::from_coupling_combo(4.0, 0.12, 1.0, 1.0).unwrap();
//! let g = CloudGeometry::natural(1000).unwrap();
//! let inf = dephasing::gamma_stationary(&sd, &g, &ThermalState::zero()).unwrap();
//! assert!((inf - 1.2).abs() < 1e-12);
//! ```

pub mod cloud;
pub mod dephasing;
pub mod error;
pub mod metrology;
pub mod numerics;
pub mod reservoir;
pub mod scenario;

pub use error::{Error, Result};

/// Written into every `.meta` sidecar.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
