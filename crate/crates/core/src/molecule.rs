//! Chiral two-level molecule.
//!
//! The magnetic transition dipole is tied to the electric one by
//! `m / c = -i chi d`, so a molecule is fully described by its transition
//! frequency, |d| and the dimensionless chirality `chi ∈ [-1, 1]`.

use serde::Serialize;

use crate::error::{require_positive, Error, Result};
use crate::units::{DipoleMoment, SPEED_OF_LIGHT};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiralMolecule {
    name: String,
    omega_m: f64,
    dipole: DipoleMoment,
    chi: f64,
}

impl ChiralMolecule {
    pub fn new(name: impl Into<String>, omega_m: f64, dipole: DipoleMoment, chi: f64) -> Result<Self> {
        let name = name.into();
        require_positive("transition frequency", omega_m)?;
        if !(-1.0..=1.0).contains(&chi) {
            return Err(Error::Validation(format!(
                "molecule `{name}`: chirality parameter {chi} outside [-1, 1]"
            )));
        }
        Ok(Self {
            name,
            omega_m,
            dipole,
            chi,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn omega_m(&self) -> f64 {
        self.omega_m
    }

    pub fn dipole(&self) -> DipoleMoment {
        self.dipole
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    /// `R = chi c |d|^2`.
    pub fn rotatory_strength(&self) -> f64 {
        self.chi * SPEED_OF_LIGHT * self.dipole.magnitude().powi(2)
    }

    /// Mirror-image molecule (`chi -> -chi`).
    pub fn enantiomer(&self) -> Self {
        Self {
            chi: -self.chi,
            ..self.clone()
        }
    }

    pub fn with_chi(&self, chi: f64) -> Result<Self> {
        Self::new(self.name.clone(), self.omega_m, self.dipole, chi)
    }
}

/// How the molecular dipoles are oriented relative to the cavity axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Isotropic average, `<d ⊗ d*> = |d|^2 I / 3`.
    RotationalAverage,
    /// Electric and magnetic dipoles both along x.
    FixedX,
}

pub fn chirality_parameter(rotatory_strength: f64, dipole: DipoleMoment) -> Result<f64> {
    let d = dipole.magnitude();
    require_positive("dipole magnitude", d)?;
    let chi = rotatory_strength / (SPEED_OF_LIGHT * d * d);
    // Allow the boundary to be hit through rounding.
    if chi.abs() > 1.0 && chi.abs() <= 1.0 + 1e-12 {
        return Ok(chi.signum());
    }
    if !(-1.0..=1.0).contains(&chi) {
        return Err(Error::Validation(format!(
            "rotatory strength {rotatory_strength} gives chi = {chi}, outside [-1, 1]"
        )));
    }
    Ok(chi)
}

/// `|m| / c = |chi| |d|`, in C m.
pub fn magnetic_dipole_magnitude(molecule: &ChiralMolecule) -> f64 {
    molecule.chi.abs() * molecule.dipole.magnitude()
}
