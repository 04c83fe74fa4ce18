//! Circularly polarised standing-wave cavity mode.
//!
//! The transverse profile `v(z) = (cos kz, -s sin kz, 0)` has unit length
//! everywhere, with `s = +1` for a right-handed and `s = -1` for a
//! left-handed mode. Field snapshots use the phase convention
//! `E ∝ sin(ωt)`, `B ∝ s cos(ωt)`.

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::units::{EPSILON_0, HBAR, SPEED_OF_LIGHT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Handedness {
    Right,
    Left,
}

impl Handedness {
    /// `+1` for right-handed, `-1` for left-handed.
    pub fn sign(self) -> f64 {
        match self {
            Handedness::Right => 1.0,
            Handedness::Left => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Handedness::Right => Handedness::Left,
            Handedness::Left => Handedness::Right,
        }
    }
}

impl std::str::FromStr for Handedness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right" | "r" | "+" => Ok(Handedness::Right),
            "left" | "l" | "-" => Ok(Handedness::Left),
            other => Err(Error::Usage(format!("handedness must be `left` or `right`, got `{other}`"))),
        }
    }
}

impl std::fmt::Display for Handedness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Handedness::Right => "right",
            Handedness::Left => "left",
        })
    }
}

/// Single-photon vector-potential amplitude `A0 = sqrt(hbar / (2 eps0 omega V))`.
pub fn mode_amplitude(omega: f64, volume: f64) -> Result<f64> {
    require_positive("mode frequency", omega)?;
    require_positive("mode volume", volume)?;
    Ok((HBAR / (2.0 * EPSILON_0 * omega * volume)).sqrt())
}

/// Unit-length spatial profile at axial position `z`.
pub fn mode_profile(z: f64, k: f64, handedness: Handedness) -> [f64; 3] {
    let (s, c) = (k * z).sin_cos();
    [c, -handedness.sign() * s, 0.0]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CavityMode {
    omega: f64,
    handedness: Handedness,
    volume: f64,
    amplitude: f64,
}

impl CavityMode {
    pub fn new(omega: f64, handedness: Handedness, volume: f64) -> Result<Self> {
        let amplitude = mode_amplitude(omega, volume)?;
        Ok(Self {
            omega,
            handedness,
            volume,
            amplitude,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn handedness(&self) -> Handedness {
        self.handedness
    }

    pub fn volume(&self) -> f64 {
        self.volume
    }

    /// Wavenumber `omega / c`.
    pub fn k(&self) -> f64 {
        self.omega / SPEED_OF_LIGHT
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn profile(&self, z: f64) -> [f64; 3] {
        mode_profile(z, self.k(), self.handedness)
    }

    /// The same mode with opposite handedness.
    pub fn mirrored(&self) -> Self {
        Self {
            handedness: self.handedness.flipped(),
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalisation {
    /// `E_amp = 1`, `B_amp = 1/c`.
    Unit,
    /// Operator prefactors `E_amp = omega A0`, `B_amp = k A0`.
    SinglePhoton,
}

impl std::str::FromStr for Normalisation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(Normalisation::Unit),
            "single_photon" => Ok(Normalisation::SinglePhoton),
            other => Err(Error::Usage(format!(
                "normalisation must be `unit` or `single_photon`, got `{other}`"
            ))),
        }
    }
}

impl std::fmt::Display for Normalisation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Normalisation::Unit => "unit",
            Normalisation::SinglePhoton => "single_photon",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldSnapshot {
    pub t: f64,
    pub z_values: Vec<f64>,
    /// V/m (or dimensionless under unit normalisation).
    pub e_field: Vec<[f64; 3]>,
    /// T (or 1/c-scaled under unit normalisation).
    pub b_field: Vec<[f64; 3]>,
    pub e_amplitude: f64,
    pub b_amplitude: f64,
}

pub fn field_snapshot(
    mode: &CavityMode,
    z_values: &[f64],
    t: f64,
    normalisation: Normalisation,
) -> Result<FieldSnapshot> {
    if z_values.is_empty() {
        return Err(Error::Usage("field snapshot needs at least one z value".into()));
    }
    if !t.is_finite() {
        return Err(Error::Domain(format!("snapshot time must be finite, got {t}")));
    }
    let (e_amplitude, b_amplitude) = match normalisation {
        Normalisation::Unit => (1.0, 1.0 / SPEED_OF_LIGHT),
        Normalisation::SinglePhoton => (mode.omega() * mode.amplitude(), mode.k() * mode.amplitude()),
    };
    let (sin_wt, cos_wt) = (mode.omega() * t).sin_cos();
    let e_scale = e_amplitude * sin_wt;
    let b_scale = mode.handedness().sign() * b_amplitude * cos_wt;
    let profiles: Vec<[f64; 3]> = z_values.iter().map(|&z| mode.profile(z)).collect();
    Ok(FieldSnapshot {
        t,
        z_values: z_values.to_vec(),
        e_field: profiles.iter().map(|v| v.map(|x| x * e_scale)).collect(),
        b_field: profiles.iter().map(|v| v.map(|x| x * b_scale)).collect(),
        e_amplitude,
        b_amplitude,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn norm(v: [f64; 3]) -> f64 {
        v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    #[test]
    fn amplitude_value_and_scaling() {
        // A0 = sqrt(1.054571817e-34 / (2 * 8.8541878128e-12 * 6.283e11 * 3.4e-9))
        let a0 = mode_amplitude(6.283e11, 3.4e-9).unwrap();
        assert_relative_eq!(a0, 5.27990e-14, max_relative = 1e-5);
        assert_relative_eq!(mode_amplitude(6.283e11, 4.0 * 3.4e-9).unwrap(), a0 / 2.0, max_relative = 1e-14);
        assert_relative_eq!(mode_amplitude(4.0 * 6.283e11, 3.4e-9).unwrap(), a0 / 2.0, max_relative = 1e-14);
        assert!(mode_amplitude(0.0, 1.0).is_err());
        assert!(mode_amplitude(1.0, -1.0).is_err());
    }

    #[test]
    fn profile_special_points() {
        assert_eq!(mode_profile(0.0, 3.0, Handedness::Right), [1.0, -0.0, 0.0]);
        assert_eq!(mode_profile(0.0, 3.0, Handedness::Left), [1.0, 0.0, 0.0]);
        let k = 2.0;
        let z = PI / 2.0 / k;
        let r = mode_profile(z, k, Handedness::Right);
        let l = mode_profile(z, k, Handedness::Left);
        assert!(r[0].abs() < 1e-15 && (r[1] + 1.0).abs() < 1e-15);
        assert!(l[0].abs() < 1e-15 && (l[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn profile_unit_norm_periodic() {
        let k = 1.7e6;
        for i in 0..500 {
            let z = -3e-6 + i as f64 * 2.3e-8;
            let v = mode_profile(z, k, Handedness::Right);
            assert!((norm(v) - 1.0).abs() < 1e-14);
            let w = mode_profile(z + 2.0 * PI / k, k, Handedness::Right);
            for j in 0..3 {
                assert!((v[j] - w[j]).abs() < 1e-9, "periodicity at z={z}");
            }
        }
    }

    #[test]
    fn snapshot_quadrature() {
        let mode = CavityMode::new(2.0 * PI * 1e11, Handedness::Right, 3.4e-9).unwrap();
        let zs: Vec<f64> = (0..50).map(|i| i as f64 * 1e-4).collect();
        let s0 = field_snapshot(&mode, &zs, 0.0, Normalisation::Unit).unwrap();
        assert!(s0.e_field.iter().all(|e| e == &[0.0, 0.0, 0.0] || norm(*e) == 0.0));
        for b in &s0.b_field {
            assert_relative_eq!(norm(*b), 1.0 / SPEED_OF_LIGHT, max_relative = 1e-14);
        }
        let quarter = PI / 2.0 / mode.omega();
        let s1 = field_snapshot(&mode, &zs, quarter, Normalisation::SinglePhoton).unwrap();
        for (e, b) in s1.e_field.iter().zip(&s1.b_field) {
            assert_relative_eq!(norm(*e), s1.e_amplitude, max_relative = 1e-14);
            assert!(norm(*b) < 1e-15 * s1.b_amplitude);
            assert_eq!(e[2], 0.0);
            assert_eq!(b[2], 0.0);
        }
        assert_relative_eq!(s1.e_amplitude, mode.omega() * mode.amplitude());
        assert_relative_eq!(s1.b_amplitude * SPEED_OF_LIGHT, s1.e_amplitude, max_relative = 1e-15);
    }

    #[test]
    fn snapshot_fields_parallel() {
        let mode = CavityMode::new(3.0e15, Handedness::Left, 1e-21).unwrap();
        let zs: Vec<f64> = (0..40).map(|i| i as f64 * 3.1e-8).collect();
        let s = field_snapshot(&mode, &zs, 0.3 / mode.omega(), Normalisation::Unit).unwrap();
        for (e, b) in s.e_field.iter().zip(&s.b_field) {
            let cross_z = e[0] * b[1] - e[1] * b[0];
            assert!(cross_z.abs() < 1e-14 * norm(*e) * norm(*b) + 1e-300);
            assert!(norm(*e) <= 1.0 + 1e-15);
        }
    }

    #[test]
    fn snapshot_rejects_empty_grid() {
        let mode = CavityMode::new(1.0, Handedness::Right, 1.0).unwrap();
        assert!(matches!(field_snapshot(&mode, &[], 0.0, Normalisation::Unit), Err(Error::Usage(_))));
    }
}
