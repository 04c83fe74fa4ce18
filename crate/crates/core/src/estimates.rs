//! Order-of-magnitude estimates of the vacuum Rabi splitting, its chiral
//! component and the spectral resolving power needed to see it.
//!
//! At resonance with an isotropically oriented molecule,
//! `Omega = sqrt(2 omega |d|^2 / (3 eps0 hbar V))` and the discriminatory part
//! is `dOmega = sqrt(2 omega R / (3 eps0 hbar c V))` with `R = chi c |d|^2`,
//! i.e. `dOmega = Omega sqrt(chi)`.
//!
//! Resolving power is tabulated as `P = nu / dOmega` with `nu` in Hz and
//! `dOmega` in rad/s taken as plain numbers; the row also carries both
//! splittings converted to Hz.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Error, Result};
use crate::units::{debye_to_si, minimal_mode_volume, DipoleMoment, EPSILON_0, HBAR, SPEED_OF_LIGHT};

/// Chirality assumed when a record omits it: magnetic moment ~100x smaller.
pub const DEFAULT_CHI: f64 = 0.01;

/// The database shipped with the crate.
pub const DEFAULT_DATABASE: &str = include_str!("../data/molecules.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    name: String,
    nu: f64,
    d: f64,
    #[serde(default)]
    chi: Option<f64>,
    #[serde(default)]
    volume: Option<f64>,
    #[serde(default)]
    notes: Option<String>,
}

/// A validated database entry with defaults applied.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MoleculeRecord {
    pub name: String,
    /// Transition frequency, Hz.
    pub nu: f64,
    /// Transition dipole, debye.
    pub d: f64,
    pub chi: f64,
    /// Mode volume, m^3.
    pub volume: f64,
    pub notes: String,
}

impl MoleculeRecord {
    pub fn new(name: impl Into<String>, nu: f64, d: f64, chi: Option<f64>, volume: Option<f64>) -> Result<Self> {
        RawRecord {
            name: name.into(),
            nu,
            d,
            chi,
            volume,
            notes: None,
        }
        .validate(None)
    }

    pub fn omega(&self) -> f64 {
        2.0 * PI * self.nu
    }

    pub fn dipole(&self) -> DipoleMoment {
        debye_to_si(self.d).expect("validated non-negative")
    }
}

impl RawRecord {
    fn validate(self, index: Option<usize>) -> Result<MoleculeRecord> {
        let label = match index {
            Some(i) => format!("record {i} (`{}`)", self.name),
            None => format!("record `{}`", self.name),
        };
        let fail = |what: String| Error::Validation(format!("{label}: {what}"));
        if self.name.trim().is_empty() {
            return Err(fail("name must not be empty".into()));
        }
        if !(self.nu.is_finite() && self.nu > 0.0) {
            return Err(fail(format!("nu must be positive, got {}", self.nu)));
        }
        if !(self.d.is_finite() && self.d >= 0.0) {
            return Err(fail(format!("d must be non-negative, got {}", self.d)));
        }
        let chi = self.chi.unwrap_or(DEFAULT_CHI);
        if !(-1.0..=1.0).contains(&chi) {
            return Err(fail(format!("chi must lie in [-1, 1], got {chi}")));
        }
        let volume = match self.volume {
            Some(v) if v.is_finite() && v > 0.0 => v,
            Some(v) => return Err(fail(format!("volume must be positive, got {v}"))),
            None => minimal_mode_volume(2.0 * PI * self.nu)?,
        };
        Ok(MoleculeRecord {
            name: self.name,
            nu: self.nu,
            d: self.d,
            chi,
            volume,
            notes: self.notes.unwrap_or_default(),
        })
    }
}

/// Parses a JSON array of molecule records.
pub fn parse_database(text: &str, source_name: &str) -> Result<Vec<MoleculeRecord>> {
    let raw: Vec<RawRecord> = serde_json::from_str(text).map_err(|e| Error::Parse {
        source_name: source_name.to_string(),
        message: e.to_string(),
    })?;
    let records = raw
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.validate(Some(i)))
        .collect::<Result<Vec<_>>>()?;
    for (i, r) in records.iter().enumerate() {
        if records[..i].iter().any(|o| o.name == r.name) {
            return Err(Error::Validation(format!("duplicate molecule name `{}`", r.name)));
        }
    }
    Ok(records)
}

pub fn load_database(path: &Path) -> Result<Vec<MoleculeRecord>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_database(&text, &path.display().to_string())
}

pub fn default_database() -> Vec<MoleculeRecord> {
    parse_database(DEFAULT_DATABASE, "molecules.json").expect("shipped database is valid")
}

/// Resonant, orientation-averaged, achiral vacuum Rabi splitting in rad/s.
pub fn vacuum_rabi(nu: f64, dipole: DipoleMoment, volume: f64) -> Result<f64> {
    require_positive("nu", nu)?;
    require_positive("volume", volume)?;
    let omega = 2.0 * PI * nu;
    Ok((2.0 * omega * dipole.magnitude().powi(2) / (3.0 * EPSILON_0 * HBAR * volume)).sqrt())
}

/// Magnitude of the discriminatory Rabi component in rad/s. Its sign follows `chi`.
pub fn chiral_shift(nu: f64, dipole: DipoleMoment, chi: f64, volume: f64) -> Result<f64> {
    require_positive("nu", nu)?;
    require_positive("volume", volume)?;
    if !(-1.0..=1.0).contains(&chi) {
        return Err(Error::Domain(format!("chi must lie in [-1, 1], got {chi}")));
    }
    let omega = 2.0 * PI * nu;
    let rotatory = chi.abs() * SPEED_OF_LIGHT * dipole.magnitude().powi(2);
    Ok((2.0 * omega * rotatory / (3.0 * EPSILON_0 * HBAR * SPEED_OF_LIGHT * volume)).sqrt())
}

pub fn resolving_power(nu: f64, shift: f64) -> Result<f64> {
    if !(shift.is_finite() && shift > 0.0) {
        return Err(Error::Domain(format!("chiral shift {shift} is not resolvable")));
    }
    Ok(nu / shift)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateRow {
    pub name: String,
    pub nu_hz: f64,
    pub d_debye: f64,
    pub chi: f64,
    pub volume_m3: f64,
    /// rad/s
    pub omega_rabi: f64,
    /// rad/s
    pub chiral_shift: f64,
    /// `None` when the shift vanishes.
    pub resolving_power: Option<f64>,
    pub omega_rabi_hz: f64,
    pub chiral_shift_hz: f64,
}

pub fn estimate(record: &MoleculeRecord) -> Result<EstimateRow> {
    let dipole = record.dipole();
    let omega_rabi = vacuum_rabi(record.nu, dipole, record.volume)?;
    let shift = chiral_shift(record.nu, dipole, record.chi, record.volume)?;
    let resolving_power = if shift > 0.0 { Some(resolving_power(record.nu, shift)?) } else { None };
    Ok(EstimateRow {
        name: record.name.clone(),
        nu_hz: record.nu,
        d_debye: record.d,
        chi: record.chi,
        volume_m3: record.volume,
        omega_rabi,
        chiral_shift: shift,
        resolving_power,
        omega_rabi_hz: omega_rabi / (2.0 * PI),
        chiral_shift_hz: shift / (2.0 * PI),
    })
}
