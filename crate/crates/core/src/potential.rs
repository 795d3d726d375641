//! The double delta potential `V(x) = v1 δ(x) + v2 δ(x - a)` and the
//! energy/wave-number conventions shared by every solver.
//!
//! Units are fixed to `2m = ħ² = 1`. Strengths therefore carry dimensions of
//! inverse length, `E = k²`, and an isolated delta well of depth `u` binds at
//! `E = -u²/4`. Positive strengths are barriers, negative strengths are wells.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance under which two strengths count as equal (or opposite).
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Two delta functions: strength `v1` at `x = 0` and `v2` at `x = a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaPair {
    v1: f64,
    v2: f64,
    a: f64,
}

impl DeltaPair {
    pub fn new(v1: f64, v2: f64, a: f64) -> Result<Self> {
        if !(v1.is_finite() && v2.is_finite()) {
            return Err(Error::invalid(format!("strengths must be finite (v1 = {v1}, v2 = {v2})")));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::invalid(format!("separation must be positive and finite (a = {a})")));
        }
        Ok(Self { v1, v2, a })
    }

    /// Attractive pair given by well depths, `v_j = -u_j`.
    pub fn wells(u1: f64, u2: f64, a: f64) -> Result<Self> {
        Self::new(-u1, -u2, a)
    }

    pub fn v1(&self) -> f64 {
        self.v1
    }

    pub fn v2(&self) -> f64 {
        self.v2
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn is_free(&self) -> bool {
        self.v1 == 0.0 && self.v2 == 0.0
    }

    /// Mirror image `x -> a - x`, which exchanges the two strengths.
    pub fn swapped(&self) -> Self {
        Self { v1: self.v2, v2: self.v1, a: self.a }
    }

    pub fn symmetry(&self) -> SymmetryClass {
        let scale = self.v1.abs().max(self.v2.abs());
        if scale == 0.0 {
            SymmetryClass::Free
        } else if (self.v1 - self.v2).abs() <= SYMMETRY_TOL * scale {
            if self.v1 > 0.0 {
                SymmetryClass::SymmetricBarriers
            } else {
                SymmetryClass::SymmetricWells
            }
        } else if (self.v1 + self.v2).abs() <= SYMMETRY_TOL * scale {
            SymmetryClass::Antisymmetric
        } else {
            SymmetryClass::Asymmetric
        }
    }
}

impl fmt::Display for DeltaPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(v1 = {}, v2 = {}, a = {})", self.v1, self.v2, self.a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SymmetryClass {
    Free,
    SymmetricBarriers,
    SymmetricWells,
    Antisymmetric,
    Asymmetric,
}

impl SymmetryClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            SymmetryClass::Free => "free",
            SymmetryClass::SymmetricBarriers => "symmetric_barriers",
            SymmetryClass::SymmetricWells => "symmetric_wells",
            SymmetryClass::Antisymmetric => "antisymmetric",
            SymmetryClass::Asymmetric => "asymmetric",
        }
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A point `k = K - i k'` of the complex wave-number plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexWaveNumber(pub Complex64);

impl ComplexWaveNumber {
    pub fn new(re: f64, im: f64) -> Self {
        Self(Complex64::new(re, im))
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn energy(&self) -> Complex64 {
        energy_of_k(*self)
    }

    /// Decay width `Γ = -2 Im E = 4 K k'` of a state at this wave number.
    pub fn width(&self) -> f64 {
        -4.0 * self.0.re * self.0.im
    }
}

impl From<Complex64> for ComplexWaveNumber {
    fn from(k: Complex64) -> Self {
        Self(k)
    }
}

impl From<f64> for ComplexWaveNumber {
    fn from(k: f64) -> Self {
        Self(Complex64::new(k, 0.0))
    }
}

/// `k = √E` for `E > 0`, `k = i√(-E)` for `E < 0`.
pub fn k_of_energy(energy: f64) -> ComplexWaveNumber {
    if energy >= 0.0 {
        ComplexWaveNumber::new(energy.sqrt(), 0.0)
    } else {
        ComplexWaveNumber::new(0.0, (-energy).sqrt())
    }
}

pub fn energy_of_k(k: ComplexWaveNumber) -> Complex64 {
    let (re, im) = (k.0.re, k.0.im);
    Complex64::new(re * re - im * im, 2.0 * re * im)
}

/// Principal-branch inverse of [`energy_of_k`] for complex energies.
pub fn k_of_complex_energy(energy: Complex64) -> ComplexWaveNumber {
    ComplexWaveNumber(energy.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumKind {
    Bound,
    Resonance,
    PerfectTransmission,
}

impl SpectrumKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpectrumKind::Bound => "bound",
            SpectrumKind::Resonance => "resonance",
            SpectrumKind::PerfectTransmission => "perfect_transmission",
        }
    }
}

/// One discrete level of any of the three spectra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub kind: SpectrumKind,
    pub energy: Complex64,
    pub k: ComplexWaveNumber,
    /// `T` at `Re(energy)`; `None` for bound states.
    pub t_at_real_part: Option<f64>,
    /// Magnitude of the defining equation at the root.
    pub residual: f64,
}
