//! Physical constants (CODATA 2018 exact/recommended values) and the handful of
//! unit conversions the model needs. Everything downstream works in SI with
//! angular frequencies in rad/s.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};

/// Label written into output headers so results can be traced to a constant set.
pub const CONSTANTS_VERSION: &str = "CODATA 2018";

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Elementary charge, C (exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
/// Electron rest mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
/// One debye in C m (1e-21 / c).
pub const DEBYE: f64 = 3.335_640_951_981_520e-30;
/// Avogadro constant, 1/mol (exact).
pub const AVOGADRO: f64 = 6.022_140_76e23;

/// The constant set as a value, for headers and serialisation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub eps0: f64,
    pub c: f64,
    pub e_charge: f64,
    pub m_electron: f64,
    pub debye: f64,
    pub avogadro: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        hbar: HBAR,
        eps0: EPSILON_0,
        c: SPEED_OF_LIGHT,
        e_charge: ELEMENTARY_CHARGE,
        m_electron: ELECTRON_MASS,
        debye: DEBYE,
        avogadro: AVOGADRO,
    };
}

/// Units accepted for a frequency-like input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrequencyUnit {
    /// Cycles per second.
    Hz,
    /// Angular frequency.
    RadPerSecond,
    /// Spectroscopic wavenumber in cm^-1.
    Wavenumber,
    /// Photon energy in eV.
    ElectronVolt,
    /// Vacuum wavelength in metres.
    Wavelength,
}

impl FrequencyUnit {
    /// Converts `value` in this unit to rad/s.
    fn to_omega(self, value: f64) -> f64 {
        match self {
            FrequencyUnit::Hz => 2.0 * PI * value,
            FrequencyUnit::RadPerSecond => value,
            // cm^-1 -> m^-1 is a factor 100.
            FrequencyUnit::Wavenumber => 2.0 * PI * SPEED_OF_LIGHT * value * 100.0,
            FrequencyUnit::ElectronVolt => value * ELEMENTARY_CHARGE / HBAR,
            FrequencyUnit::Wavelength => 2.0 * PI * SPEED_OF_LIGHT / value,
        }
    }

    fn from_omega(self, omega: f64) -> f64 {
        match self {
            FrequencyUnit::Hz => omega / (2.0 * PI),
            FrequencyUnit::RadPerSecond => omega,
            FrequencyUnit::Wavenumber => omega / (2.0 * PI * SPEED_OF_LIGHT * 100.0),
            FrequencyUnit::ElectronVolt => omega * HBAR / ELEMENTARY_CHARGE,
            FrequencyUnit::Wavelength => 2.0 * PI * SPEED_OF_LIGHT / omega,
        }
    }
}

/// A frequency held canonically as an angular frequency, remembering the
/// form it was supplied in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrequencyValue {
    omega: f64,
    input_unit: FrequencyUnit,
    input_value: f64,
}

impl FrequencyValue {
    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn hz(&self) -> f64 {
        self.omega / (2.0 * PI)
    }

    pub fn input_unit(&self) -> FrequencyUnit {
        self.input_unit
    }

    pub fn input_value(&self) -> f64 {
        self.input_value
    }

    /// Expresses the frequency in any supported unit.
    pub fn to_unit(&self, unit: FrequencyUnit) -> f64 {
        unit.from_omega(self.omega)
    }
}

pub fn convert_frequency(value: f64, unit: FrequencyUnit) -> Result<FrequencyValue> {
    require_positive("frequency", value)?;
    Ok(FrequencyValue {
        omega: unit.to_omega(value),
        input_unit: unit,
        input_value: value,
    })
}

/// Transition dipole moment in C m, optionally with cartesian components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DipoleMoment {
    magnitude: f64,
    components: Option<[f64; 3]>,
}

impl DipoleMoment {
    pub fn new(magnitude_si: f64) -> Result<Self> {
        if !(magnitude_si.is_finite() && magnitude_si >= 0.0) {
            return Err(Error::Domain(format!(
                "dipole magnitude must be non-negative, got {magnitude_si}"
            )));
        }
        Ok(Self {
            magnitude: magnitude_si,
            components: None,
        })
    }

    pub fn from_components(components: [f64; 3]) -> Result<Self> {
        if components.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("dipole components must be finite".into()));
        }
        let magnitude = components.iter().map(|c| c * c).sum::<f64>().sqrt();
        Ok(Self {
            magnitude,
            components: Some(components),
        })
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn components(&self) -> Option<[f64; 3]> {
        self.components
    }

    pub fn in_debye(&self) -> f64 {
        self.magnitude / DEBYE
    }
}

pub fn debye_to_si(debye: f64) -> Result<DipoleMoment> {
    if !(debye.is_finite() && debye >= 0.0) {
        return Err(Error::Domain(format!("dipole in debye must be non-negative, got {debye}")));
    }
    DipoleMoment::new(debye * DEBYE)
}

/// Transition dipole from an absorption oscillator strength:
/// |d|^2 = 3 hbar e^2 f / (2 m_e omega).
pub fn oscillator_strength_to_dipole(f: f64, omega: f64) -> Result<DipoleMoment> {
    require_positive("oscillator strength", f)?;
    require_positive("transition frequency", omega)?;
    let d_sq = 3.0 * HBAR * ELEMENTARY_CHARGE * ELEMENTARY_CHARGE * f / (2.0 * ELECTRON_MASS * omega);
    DipoleMoment::new(d_sq.sqrt())
}

/// Smallest standing-wave mode volume (lambda/2)^3 at angular frequency `omega`.
pub fn minimal_mode_volume(omega: f64) -> Result<f64> {
    require_positive("mode frequency", omega)?;
    Ok((PI * SPEED_OF_LIGHT / omega).powi(3))
}
