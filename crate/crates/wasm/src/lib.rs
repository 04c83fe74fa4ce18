//! WebAssembly bindings used by the static demo page in `www/`.
//!
//! Every export returns a flat `Vec<f64>` (a `Float64Array` in JavaScript)
//! with a fixed number of values per row, so the page can plot without any
//! serialisation layer.

use std::f64::consts::PI;

use ccqed_core::coupling::CouplingConstant;
use ccqed_core::mode_field::{field_snapshot, CavityMode, Handedness, Normalisation};
use ccqed_core::molecule::ChiralMolecule;
use ccqed_core::single_mode::{cp_force, dressed_energies, Branch, JcBlock};
use ccqed_core::two_mode::{degenerate_spectrum, nondegenerate_spectrum, scenario_pair, Scenario, TwoModeBlock};
use ccqed_core::units::{debye_to_si, minimal_mode_volume, HBAR};
use wasm_bindgen::prelude::*;

fn handedness(right: bool) -> Handedness {
    if right {
        Handedness::Right
    } else {
        Handedness::Left
    }
}

fn js_err(err: ccqed_core::Error) -> String {
    err.to_string()
}

fn grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>, String> {
    if points < 2 || !(min < max) {
        return Err("grid needs at least two points and min < max".into());
    }
    let step = (max - min) / (points - 1) as f64;
    Ok((0..points).map(|i| min + step * i as f64).collect())
}

/// Snapshot of the unit-normalised standing wave over one wavelength at time
/// `t_frac` (fraction of an optical period).
///
/// Rows are `[kz, Ex, Ey, Bx*c, By*c]`.
pub fn field_profile(right_handed: bool, t_frac: f64, points: usize) -> Result<Vec<f64>, String> {
    let mode = CavityMode::new(1.0, handedness(right_handed), 1.0).map_err(js_err)?;
    let zs = grid(0.0, 2.0 * PI / mode.k(), points)?;
    let snap = field_snapshot(&mode, &zs, t_frac * 2.0 * PI, Normalisation::Unit).map_err(js_err)?;
    let c = 1.0 / snap.b_amplitude;
    let mut out = Vec::with_capacity(points * 5);
    for ((z, e), b) in zs.iter().zip(&snap.e_field).zip(&snap.b_field) {
        out.extend_from_slice(&[mode.k() * z, e[0], e[1], b[0] * c, b[1] * c]);
    }
    Ok(out)
}

/// Dressed energies `E/hbar - n omega` against the bare coupling `g`, in
/// units where the cavity frequency is 1.
///
/// `scenario` is one of `single`, `degenerate`, `imperfect`,
/// `near_degenerate`. Rows are `[g, E1, E2, E3]` with `E3 = NaN` for the
/// single-mode case.
pub fn spectrum_sweep(
    scenario: &str,
    n: u32,
    detuning: f64,
    g_max: f64,
    chi: f64,
    delta_ratio: f64,
    points: usize,
) -> Result<Vec<f64>, String> {
    let scenario = match scenario {
        "single" => None,
        "degenerate" => Some(Scenario::Degenerate),
        "imperfect" => Some(Scenario::Imperfect {
            amplitude_ratio: delta_ratio,
        }),
        "near_degenerate" => Some(Scenario::NearDegenerate),
        other => return Err(format!("unknown scenario {other:?}")),
    };
    let omega = 1.0;
    let omega_m = omega + detuning;
    let shift = f64::from(n) * omega;
    let mut out = Vec::with_capacity(points * 4);
    for g in grid(0.0, g_max, points)? {
        match scenario {
            None => {
                let coupling = CouplingConstant::real(g * (1.0 + chi));
                let [e1, e2] = dressed_energies(&JcBlock::new(n, omega, omega_m, coupling));
                out.extend_from_slice(&[g, e1 / HBAR - shift, e2 / HBAR - shift, f64::NAN]);
            }
            Some(s) => {
                let (g1, g2) = scenario_pair(s, g, chi, Handedness::Right).map_err(js_err)?;
                let block = TwoModeBlock::equal_modes(n, omega, omega_m, g1, g2);
                let spectrum = match s {
                    Scenario::Degenerate => degenerate_spectrum(&block),
                    _ => nondegenerate_spectrum(&block),
                }
                .map_err(js_err)?;
                let [e1, e2, e3] = spectrum.over_hbar();
                let shift = 2.0 * shift;
                out.extend_from_slice(&[g, e1 - shift, e2 - shift, e3 - shift]);
            }
        }
    }
    Ok(out)
}

/// Force on a rotationally averaged molecule (`nu` in Hz, `d` in debye) in
/// the `n` manifold across one wavelength of a cavity detuned by
/// `detuning_hz` from the transition.
///
/// Rows are `[kz, F_right, F_left]` in newtons, for the upper branch in a
/// right- and a left-handed cavity.
pub fn force_profile(nu: f64, d: f64, chi: f64, n: u32, detuning_hz: f64, points: usize) -> Result<Vec<f64>, String> {
    let omega_m = 2.0 * PI * nu;
    let omega = omega_m - 2.0 * PI * detuning_hz;
    let molecule = ChiralMolecule::new("demo", omega_m, debye_to_si(d).map_err(js_err)?, chi).map_err(js_err)?;
    let volume = minimal_mode_volume(omega_m).map_err(js_err)?;
    let right = CavityMode::new(omega, Handedness::Right, volume).map_err(js_err)?;
    let left = right.mirrored();
    let k = right.k();
    let mut out = Vec::with_capacity(points * 3);
    for kz in grid(0.0, 2.0 * PI, points)? {
        let z = kz / k;
        out.extend_from_slice(&[
            kz,
            cp_force(&molecule, &right, n, z, Branch::Upper),
            cp_force(&molecule, &left, n, z, Branch::Upper),
        ]);
    }
    Ok(out)
}

/// JavaScript entry point for [`field_profile`].
#[wasm_bindgen(js_name = fieldProfile)]
pub fn field_profile_js(right_handed: bool, t_frac: f64, points: usize) -> Result<Vec<f64>, JsError> {
    field_profile(right_handed, t_frac, points).map_err(|e| JsError::new(&e))
}

/// JavaScript entry point for [`spectrum_sweep`].
#[wasm_bindgen(js_name = spectrumSweep)]
pub fn spectrum_sweep_js(
    scenario: &str,
    n: u32,
    detuning: f64,
    g_max: f64,
    chi: f64,
    delta_ratio: f64,
    points: usize,
) -> Result<Vec<f64>, JsError> {
    spectrum_sweep(scenario, n, detuning, g_max, chi, delta_ratio, points).map_err(|e| JsError::new(&e))
}

/// JavaScript entry point for [`force_profile`].
#[wasm_bindgen(js_name = forceProfile)]
pub fn force_profile_js(nu: f64, d: f64, chi: f64, n: u32, detuning_hz: f64, points: usize) -> Result<Vec<f64>, JsError> {
    force_profile(nu, d, chi, n, detuning_hz, points).map_err(|e| JsError::new(&e))
}
