//! Scattering and discrete spectra of the double Dirac delta potential
//! `V(x) = v1 δ(x) + v2 δ(x - a)` in units `2m = ħ² = 1`.
//!
//! Three discrete spectra can be read off the reflection and transmission
//! amplitudes:
//!
//! * bound states, poles on the positive imaginary `k` axis ([`bound_states`]);
//! * resonances, poles below the real axis ([`complex_spectra::resonances`]);
//! * perfect-transmission energies, zeros of the reflection amplitude
//!   ([`complex_spectra::perfect_transmission_energies`]).
//!
//! ```
//! use double_delta::{DeltaPair, scattering::coefficients};
//!
//! let pot = DeltaPair::new(3.0, 3.0, 1.0)?;
//! let row = coefficients(&pot, 4.0)?;
//! assert!((row.reflection.unwrap() + row.transmission - 1.0).abs() < 1e-12);
//! # Ok::<(), double_delta::Error>(())
//! ```

pub mod bound_states;
pub mod complex_spectra;
pub mod error;
pub mod numerics;
pub mod potential;
pub mod scattering;
pub mod table1;

pub use error::{Error, Result};
pub use potential::{
    energy_of_k, k_of_energy, ComplexWaveNumber, DeltaPair, SpectrumEntry, SpectrumKind, SymmetryClass,
};
