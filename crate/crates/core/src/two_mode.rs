//! A molecule coupled to two circularly polarised modes of opposite handedness.
//!
//! In the `(n1 + n2 + 1)`-excitation sector, basis
//! `{|e,n1,n2>, |g,n1+1,n2>, |g,n1,n2+1>}`, the Hamiltonian is a 3x3 arrowhead
//! matrix: the excited state couples to both one-photon-added states, which
//! do not couple to each other.
//!
//! For equal mode frequencies and photon numbers only the bright
//! combination `g1 |g,n+1,n> + g2 |g,n,n+1>` couples to the molecule. In the
//! degenerate case `g1 = g2` that is the symmetric (superradiant) field state
//! `|F+>` with a `sqrt(2)`-enhanced coupling, and the antisymmetric `|F->`
//! is dark.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::coupling::CouplingConstant;
use crate::error::{Error, Result};
use crate::linalg::{eigh_jacobi, inner, HermitianMatrix};
use crate::mode_field::{CavityMode, Handedness};
use crate::molecule::{ChiralMolecule, Orientation};
use crate::units::HBAR;

const EQUALITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoModeBlock {
    pub n1: u32,
    pub n2: u32,
    pub omega1: f64,
    pub omega2: f64,
    pub g1: CouplingConstant,
    pub g2: CouplingConstant,
    pub omega_m: f64,
}

impl TwoModeBlock {
    /// Two modes sharing frequency `omega` and photon number `n`.
    pub fn equal_modes(n: u32, omega: f64, omega_m: f64, g1: CouplingConstant, g2: CouplingConstant) -> Self {
        Self {
            n1: n,
            n2: n,
            omega1: omega,
            omega2: omega,
            g1,
            g2,
            omega_m,
        }
    }

    fn has_equal_modes(&self) -> bool {
        self.n1 == self.n2 && close(self.omega1, self.omega2)
    }

    fn is_degenerate(&self) -> bool {
        let scale = self.g1.magnitude().max(self.g2.magnitude());
        self.has_equal_modes() && (self.g1.value() - self.g2.value()).norm() <= EQUALITY_TOL * scale
    }

    /// `omega_m - omega1`.
    pub fn detuning(&self) -> f64 {
        self.omega_m - self.omega1
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= EQUALITY_TOL * a.abs().max(b.abs())
}

pub fn two_mode_matrix(block: &TwoModeBlock) -> HermitianMatrix {
    let n1 = f64::from(block.n1);
    let n2 = f64::from(block.n2);
    let (w1, w2, wm) = (block.omega1, block.omega2, block.omega_m);
    let c1 = block.g1.value() * (n1 + 1.0).sqrt();
    let c2 = block.g2.value() * (n2 + 1.0).sqrt();
    let re = |x: f64| Complex64::new(x, 0.0);
    let zero = re(0.0);
    HermitianMatrix::from_rows([
        [re(n1 * w1 + n2 * w2 + 0.5 * wm), c1.conj(), c2.conj()],
        [c1, re((n1 + 1.0) * w1 + n2 * w2 - 0.5 * wm), zero],
        [c2, zero, re(n1 * w1 + (n2 + 1.0) * w2 - 0.5 * wm)],
    ])
    .expect("two-mode block is Hermitian by construction")
    .scaled(HBAR)
}

/// Basis change to `{|e,n,n>, |g,F+>, |g,F->}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollectiveBasis {
    /// Row-major orthogonal matrix whose columns are the new basis vectors.
    pub transform: [[f64; 3]; 3],
    pub labels: [&'static str; 3],
}

impl CollectiveBasis {
    pub fn new() -> Self {
        Self {
            transform: [
                [1.0, 0.0, 0.0],
                [0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
                [0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2],
            ],
            labels: ["|e,n,n>", "|g,F+>", "|g,F->"],
        }
    }

    fn as_complex(&self) -> Vec<Complex64> {
        self.transform
            .iter()
            .flat_map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect()
    }
}

impl Default for CollectiveBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// `T^-1 H T` for a degenerate block.
pub fn collective_transform(block: &TwoModeBlock) -> Result<(CollectiveBasis, HermitianMatrix)> {
    if !block.is_degenerate() {
        return Err(Error::Usage(
            "collective transform needs omega1 = omega2, n1 = n2 and g1 = g2".into(),
        ));
    }
    let basis = CollectiveBasis::new();
    let transformed = two_mode_matrix(block).conjugated_by(&basis.as_complex())?;
    Ok((basis, transformed))
}

/// Labelled two-mode spectrum. `e1 >= e3 >= e2` always holds, with `e3` the
/// energy of the dark (molecule-decoupled) field state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoModeSpectrum {
    /// Energies in J.
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    /// Rabi frequency (rad/s) of the bright pair.
    pub rabi: f64,
    /// Mixing angle between `|e,n,n>` and the bright field state.
    pub theta: f64,
    /// Eigenvectors for `[e1, e2, e3]` from a numerical diagonalisation.
    #[serde(skip)]
    pub eigenvectors: Vec<Vec<Complex64>>,
}

impl TwoModeSpectrum {
    pub fn descending(&self) -> [f64; 3] {
        let mut e = [self.e1, self.e2, self.e3];
        e.sort_by(|a, b| b.total_cmp(a));
        e
    }

    /// Energies divided by hbar, in rad/s, ordered `[e1, e2, e3]`.
    pub fn over_hbar(&self) -> [f64; 3] {
        [self.e1 / HBAR, self.e2 / HBAR, self.e3 / HBAR]
    }
}

/// Degenerate spectrum: `Omega = sqrt(Delta^2 + 8 (n+1) |g|^2)`.
pub fn degenerate_spectrum(block: &TwoModeBlock) -> Result<TwoModeSpectrum> {
    if !block.is_degenerate() {
        return Err(Error::Usage("degenerate spectrum needs g1 = g2 on equal modes".into()));
    }
    let n = f64::from(block.n1);
    let collective = (2.0 * (n + 1.0)).sqrt() * block.g1.magnitude();
    let rabi = block.detuning().hypot(2.0 * collective);
    labelled_spectrum(block, rabi)
}

/// Equal-frequency spectrum: `Omega = sqrt(Delta^2 + 4 (n+1) (|g1|^2 + |g2|^2))`.
pub fn nondegenerate_spectrum(block: &TwoModeBlock) -> Result<TwoModeSpectrum> {
    if !block.has_equal_modes() {
        return Err(Error::Usage(
            "closed-form two-mode spectrum needs omega1 = omega2 and n1 = n2".into(),
        ));
    }
    let n = f64::from(block.n1);
    let bright = ((n + 1.0) * (block.g1.magnitude_sq() + block.g2.magnitude_sq())).sqrt();
    let rabi = block.detuning().hypot(2.0 * bright);
    labelled_spectrum(block, rabi)
}

fn labelled_spectrum(block: &TwoModeBlock, rabi: f64) -> Result<TwoModeSpectrum> {
    let n = f64::from(block.n1);
    let w = block.omega1;
    let center = (2.0 * n + 0.5) * HBAR * w;
    let e1 = center + 0.5 * HBAR * rabi;
    let e2 = center - 0.5 * HBAR * rabi;
    let e3 = (2.0 * n + 1.0) * HBAR * w - 0.5 * HBAR * block.omega_m;

    let numeric = eigh_jacobi(&two_mode_matrix(block))?;
    let dark = dark_state(block);
    let dark_index = (0..3)
        .max_by(|&i, &j| {
            let oi = inner(&dark, &numeric.vectors[i]).norm();
            let oj = inner(&dark, &numeric.vectors[j]).norm();
            // Ties go to the lower index.
            oi.total_cmp(&oj).then(j.cmp(&i))
        })
        .expect("three eigenvectors");
    let rest: Vec<usize> = (0..3).filter(|&i| i != dark_index).collect();
    // numeric.values is ascending.
    let (lower, upper) = (rest[0], rest[1]);
    let upper_vec = &numeric.vectors[upper];
    let theta = if rabi == 0.0 {
        0.0
    } else {
        upper_vec[1].norm().hypot(upper_vec[2].norm()).atan2(upper_vec[0].norm())
    };
    Ok(TwoModeSpectrum {
        e1,
        e2,
        e3,
        rabi,
        theta,
        eigenvectors: vec![
            numeric.vectors[upper].clone(),
            numeric.vectors[lower].clone(),
            numeric.vectors[dark_index].clone(),
        ],
    })
}

/// Field state orthogonal to the bright combination, `(0, g2*, -g1*)` normalised.
fn dark_state(block: &TwoModeBlock) -> Vec<Complex64> {
    let (g1, g2) = (block.g1.value(), block.g2.value());
    let norm = (g1.norm_sqr() + g2.norm_sqr()).sqrt();
    if norm == 0.0 {
        return vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            Complex64::new(-FRAC_1_SQRT_2, 0.0),
        ];
    }
    vec![Complex64::new(0.0, 0.0), g2.conj() / norm, -g1.conj() / norm]
}

/// Which two-mode physical situation produces the couplings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    /// Achiral molecule, two equally strong modes: `g1 = g2`.
    Degenerate,
    /// One dominant mode plus a weak mode of opposite handedness with
    /// amplitude ratio `delta A0 / A0`.
    Imperfect { amplitude_ratio: f64 },
    /// Equally strong opposite-handed modes, chiral molecule:
    /// `g1,2 = g ± delta g`, `delta g = chi g`.
    NearDegenerate,
}

/// `(g1, g2)` for a scenario given the bare achiral coupling magnitude `g`
/// (rad/s) of mode 1, its handedness, and the molecule's `chi`.
pub fn scenario_pair(
    scenario: Scenario,
    g: f64,
    chi: f64,
    handedness: Handedness,
) -> Result<(CouplingConstant, CouplingConstant)> {
    if !(-1.0..=1.0).contains(&chi) {
        return Err(Error::Validation(format!("chi must lie in [-1, 1], got {chi}")));
    }
    let s = handedness.sign();
    let coupling = |x: f64| CouplingConstant::new(Complex64::new(0.0, x));
    match scenario {
        Scenario::Degenerate => {
            if chi != 0.0 {
                return Err(Error::Validation(format!(
                    "degenerate scenario describes an achiral molecule, got chi = {chi}"
                )));
            }
            Ok((coupling(g), coupling(g)))
        }
        Scenario::Imperfect { amplitude_ratio } => {
            if !(0.0..1.0).contains(&amplitude_ratio) {
                return Err(Error::Validation(format!(
                    "weak-mode amplitude ratio must lie in [0, 1), got {amplitude_ratio}"
                )));
            }
            Ok((coupling(g * (1.0 + s * chi)), coupling(g * amplitude_ratio * (1.0 - s * chi))))
        }
        Scenario::NearDegenerate => {
            let delta = chi * g;
            Ok((coupling(g + delta), coupling(g - delta)))
        }
    }
}

/// `(g1, g2)` for `scenario`. Mode 1 is `mode`; mode 2 is its mirror image.
///
/// For a rotationally averaged molecule the dipole projection is replaced by
/// its rms value `|d| / sqrt(3)`, which reproduces the averaged `|g|^2` of both
/// modes and hence the averaged Rabi frequency.
pub fn scenario_couplings(
    scenario: Scenario,
    molecule: &ChiralMolecule,
    mode: &CavityMode,
    orientation: Orientation,
    z: f64,
) -> Result<(CouplingConstant, CouplingConstant)> {
    let projection = match orientation {
        Orientation::FixedX => molecule.dipole().magnitude() * mode.profile(z)[0],
        Orientation::RotationalAverage => molecule.dipole().magnitude() / 3f64.sqrt(),
    };
    let bare = mode.omega() * mode.amplitude() / HBAR * projection;
    scenario_pair(scenario, bare, molecule.chi(), mode.handedness())
}
