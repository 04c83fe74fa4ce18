//! Molecule-mode coupling constant `g` (rad/s, coupling energy `hbar g`).
//!
//! `g(z) = i (omega A0 / hbar) (1 + s chi) d·v(z)` where `s` is the mode
//! handedness sign; the electric and magnetic dipole terms combine into
//! the `(1 ± chi)` factor.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mode_field::CavityMode;
use crate::molecule::{ChiralMolecule, Orientation};
use crate::units::HBAR;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingConstant {
    #[serde(serialize_with = "serialize_complex")]
    value: Complex64,
}

fn serialize_complex<S: serde::Serializer>(c: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&c.re)?;
    t.serialize_element(&c.im)?;
    t.end()
}

impl CouplingConstant {
    pub fn new(value: Complex64) -> Self {
        Self { value }
    }

    /// A real, non-negative coupling of the given magnitude.
    pub fn real(magnitude: f64) -> Self {
        Self::new(Complex64::new(magnitude, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    pub fn magnitude(&self) -> f64 {
        self.value.norm()
    }

    pub fn magnitude_sq(&self) -> f64 {
        self.value.norm_sqr()
    }
}

impl From<Complex64> for CouplingConstant {
    fn from(value: Complex64) -> Self {
        Self::new(value)
    }
}

/// The chiral enhancement factor `1 + s chi`.
pub fn chiral_factor(chi: f64, mode: &CavityMode) -> f64 {
    1.0 + mode.handedness().sign() * chi
}

/// Coupling for an explicit dipole vector (C m) at axial position `z`.
pub fn coupling_for_dipole(dipole: [f64; 3], chi: f64, mode: &CavityMode, z: f64) -> CouplingConstant {
    let v = mode.profile(z);
    let projection: f64 = dipole.iter().zip(v.iter()).map(|(d, v)| d * v).sum();
    let magnitude = mode.omega() * mode.amplitude() / HBAR * chiral_factor(chi, mode) * projection;
    CouplingConstant::new(Complex64::new(0.0, magnitude))
}

pub fn coupling_at(
    molecule: &ChiralMolecule,
    mode: &CavityMode,
    orientation: Orientation,
    z: f64,
) -> Result<CouplingConstant> {
    match orientation {
        Orientation::FixedX => Ok(coupling_for_dipole(
            [molecule.dipole().magnitude(), 0.0, 0.0],
            molecule.chi(),
            mode,
            z,
        )),
        Orientation::RotationalAverage => Err(Error::Usage(
            "a rotationally averaged molecule has no position-resolved coupling; use coupling_avg_sq".into(),
        )),
    }
}

/// Peak coupling `omega A0 |d| (1 + s chi) / hbar` (signed by the chiral factor).
fn peak_coupling(molecule: &ChiralMolecule, mode: &CavityMode) -> f64 {
    mode.omega() * mode.amplitude() * molecule.dipole().magnitude() / HBAR * chiral_factor(molecule.chi(), mode)
}

/// Rotationally averaged `|g|^2`, independent of position.
pub fn coupling_avg_sq(molecule: &ChiralMolecule, mode: &CavityMode) -> f64 {
    peak_coupling(molecule, mode).powi(2) / 3.0
}

/// `|g|^2(z)` for dipoles fixed along x.
pub fn coupling_oriented_sq(molecule: &ChiralMolecule, mode: &CavityMode, z: f64) -> f64 {
    let c = (mode.k() * z).cos();
    peak_coupling(molecule, mode).powi(2) * c * c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mode_field::Handedness;
    use crate::units::debye_to_si;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn setup(chi: f64, hand: Handedness) -> (ChiralMolecule, CavityMode) {
        let omega = 2.0 * PI * 1.0e11;
        let m = ChiralMolecule::new("po", omega, debye_to_si(1.72).unwrap(), chi).unwrap();
        let mode = CavityMode::new(omega, hand, 3.4e-9).unwrap();
        (m, mode)
    }

    #[test]
    fn achiral_coupling_at_antinode() {
        let (m, mode) = setup(0.0, Handedness::Right);
        let g = coupling_at(&m, &mode, Orientation::FixedX, 0.0).unwrap();
        let expected = mode.omega() * mode.amplitude() * m.dipole().magnitude() / HBAR;
        assert_relative_eq!(g.magnitude(), expected, max_relative = 1e-15);
        assert_eq!(g.value().re, 0.0);
    }

    #[test]
    fn handedness_scales_coupling() {
        let (m0, right) = setup(0.0, Handedness::Right);
        let base = coupling_at(&m0, &right, Orientation::FixedX, 0.0).unwrap().magnitude();
        let (m, right) = setup(0.01, Handedness::Right);
        let left = right.mirrored();
        let gr = coupling_at(&m, &right, Orientation::FixedX, 0.0).unwrap().magnitude();
        let gl = coupling_at(&m, &left, Orientation::FixedX, 0.0).unwrap().magnitude();
        assert_relative_eq!(gr, 1.01 * base, max_relative = 1e-14);
        assert_relative_eq!(gl, 0.99 * base, max_relative = 1e-14);
    }

    #[test]
    fn dipole_perpendicular_to_profile() {
        let (m, mode) = setup(0.2, Handedness::Left);
        let z = PI / 2.0 / mode.k();
        let g = coupling_at(&m, &mode, Orientation::FixedX, z).unwrap();
        assert!(g.magnitude() < 1e-15 * peak_coupling(&m, &mode).abs());
    }

    #[test]
    fn rotational_average_not_position_resolved() {
        let (m, mode) = setup(0.0, Handedness::Right);
        assert!(matches!(
            coupling_at(&m, &mode, Orientation::RotationalAverage, 0.0),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn averaged_coupling() {
        let (m, mode) = setup(0.0, Handedness::Right);
        let g2 = coupling_avg_sq(&m, &mode);
        let expected = (mode.omega() * mode.amplitude() * m.dipole().magnitude() / HBAR).powi(2) / 3.0;
        assert_relative_eq!(g2, expected, max_relative = 1e-15);
        let (m1, mode1) = setup(1.0, Handedness::Right);
        assert_relative_eq!(coupling_avg_sq(&m1, &mode1), 4.0 * g2, max_relative = 1e-14);
        let (mm, ml) = (m1.enantiomer(), mode1.mirrored());
        assert_eq!(coupling_avg_sq(&mm, &ml), coupling_avg_sq(&m1, &mode1));
    }

    #[test]
    fn oriented_coupling_profile() {
        let (m, mode) = setup(0.3, Handedness::Right);
        let max = coupling_oriented_sq(&m, &mode, 0.0);
        assert_relative_eq!(max, peak_coupling(&m, &mode).powi(2), max_relative = 1e-15);
        let quarter = coupling_oriented_sq(&m, &mode, PI / 4.0 / mode.k());
        assert_relative_eq!(quarter, max / 2.0, max_relative = 1e-12);
        // Period average of cos^2 is 1/2 (midpoint rule is exact for this trigonometric polynomial).
        let n = 64;
        let period = PI / mode.k();
        let mean: f64 = (0..n)
            .map(|i| coupling_oriented_sq(&m, &mode, (i as f64 + 0.5) * period / n as f64))
            .sum::<f64>()
            / n as f64;
        assert_relative_eq!(mean, max / 2.0, max_relative = 1e-12);
        assert!((mean - max / 3.0).abs() > 0.1 * max);
    }

    #[test]
    fn oriented_matches_position_resolved() {
        let (m, mode) = setup(-0.4, Handedness::Left);
        for i in 0..100 {
            let z = i as f64 * 1.3e-5;
            let g = coupling_at(&m, &mode, Orientation::FixedX, z).unwrap();
            let g2 = coupling_oriented_sq(&m, &mode, z);
            let scale = peak_coupling(&m, &mode).powi(2);
            assert!((g.magnitude_sq() - g2).abs() <= 1e-14 * scale);
        }
    }

    #[test]
    fn coupling_increases_with_matched_chirality() {
        let mut last = -1.0;
        for i in 0..=200 {
            let chi = -0.99 + i as f64 * 0.0099;
            let (m, mode) = setup(chi, Handedness::Right);
            let g2 = coupling_avg_sq(&m, &mode);
            assert!(g2 > last);
            last = g2;
        }
    }
}
