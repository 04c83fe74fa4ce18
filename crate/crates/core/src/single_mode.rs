//! Single-mode Jaynes-Cummings excitation block and the strong-coupling
//! Casimir-Polder force.
//!
//! In the (n+1)-excitation sector with basis `{|e,n>, |g,n+1>}` the
//! Hamiltonian is
//!
//! ```text
//! H = hbar [[n w + wM/2,       sqrt(n+1) g*   ],
//!           [sqrt(n+1) g,      (n+1) w - wM/2 ]]
//! ```
//!
//! with eigenenergies `(n + 1/2) hbar w ± hbar Omega / 2` and Rabi frequency
//! `Omega = sqrt(Delta^2 + 4 (n+1) |g|^2)`, `Delta = wM - w`.
//!
//! The mixing angle is read off the numerical eigenvectors. It agrees with
//! `tan 2θ = 2 sqrt(n+1) |g| / Delta`; the form `-4(n+1)|g|^2 / Delta` found
//! in some write-ups is not dimensionless and is not used.

use num_complex::Complex64;
use serde::Serialize;

use crate::coupling::{coupling_at, CouplingConstant};
use crate::error::{Error, Result};
use crate::linalg::{central_diff, eigh, eigh_jacobi, HermitianMatrix};
use crate::mode_field::CavityMode;
use crate::molecule::{ChiralMolecule, Orientation};
use crate::units::HBAR;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JcBlock {
    /// Photon number of the `|e,n>` state.
    pub n: u32,
    pub omega: f64,
    pub omega_m: f64,
    pub g: CouplingConstant,
}

impl JcBlock {
    pub fn new(n: u32, omega: f64, omega_m: f64, g: CouplingConstant) -> Self {
        Self { n, omega, omega_m, g }
    }

    /// `Delta = omega_m - omega`.
    pub fn detuning(&self) -> f64 {
        self.omega_m - self.omega
    }

    /// Effective coupling `sqrt(n+1) |g|`.
    fn dressed_coupling(&self) -> f64 {
        (f64::from(self.n) + 1.0).sqrt() * self.g.magnitude()
    }
}

/// Which dressed state the molecule adiabatically follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `|E1>`, energy `center + hbar Omega / 2`.
    Upper,
    /// `|E2>`, energy `center - hbar Omega / 2`.
    Lower,
}

impl Branch {
    pub fn from_index(index: u32) -> Result<Self> {
        match index {
            1 => Ok(Branch::Upper),
            2 => Ok(Branch::Lower),
            other => Err(Error::Usage(format!("state index must be 1 or 2, got {other}"))),
        }
    }

    pub fn index(self) -> u32 {
        match self {
            Branch::Upper => 1,
            Branch::Lower => 2,
        }
    }

    fn sign(self) -> f64 {
        match self {
            Branch::Upper => 1.0,
            Branch::Lower => -1.0,
        }
    }
}

/// Dressed-state spectrum of an excitation block.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigensystem {
    /// Energies in J, descending.
    pub energies: Vec<f64>,
    /// Rabi frequency in rad/s.
    pub rabi: f64,
    /// Mixing angle in rad, in `[0, pi/2]`.
    pub theta: f64,
    /// Eigenvectors matching `energies`, as complex amplitudes over the block basis.
    #[serde(skip)]
    pub eigenvectors: Vec<Vec<Complex64>>,
}

pub fn jc_matrix(block: &JcBlock) -> HermitianMatrix {
    let n = f64::from(block.n);
    let g = block.g.value() * (n + 1.0).sqrt();
    let e = Complex64::new(n * block.omega + 0.5 * block.omega_m, 0.0);
    let gnd = Complex64::new((n + 1.0) * block.omega - 0.5 * block.omega_m, 0.0);
    HermitianMatrix::from_rows([[e, g.conj()], [g, gnd]])
        .expect("Jaynes-Cummings block is Hermitian by construction")
        .scaled(HBAR)
}

pub fn rabi_frequency(block: &JcBlock) -> f64 {
    block.detuning().hypot(2.0 * block.dressed_coupling())
}

/// Mixing angle from `tan 2θ = 2 sqrt(n+1) |g| / Delta`.
pub fn mixing_angle(block: &JcBlock) -> f64 {
    0.5 * (2.0 * block.dressed_coupling()).atan2(block.detuning())
}

/// Closed-form energies `[E1, E2]` in J.
pub fn dressed_energies(block: &JcBlock) -> [f64; 2] {
    let center = (f64::from(block.n) + 0.5) * HBAR * block.omega;
    let half = 0.5 * HBAR * rabi_frequency(block);
    [center + half, center - half]
}

pub fn eigensystem(block: &JcBlock) -> Result<Eigensystem> {
    let rabi = rabi_frequency(block);
    let numeric = eigh(&jc_matrix(block))?;
    let (theta, phase) = if rabi == 0.0 {
        // Fully degenerate and uncoupled: keep the bare states.
        (0.0, Complex64::new(1.0, 0.0))
    } else {
        let upper = &numeric.vectors[1];
        let (a, b) = (upper[0], upper[1]);
        // Remove the global phase so the |e,n> amplitude is real and non-negative.
        let (a, b) = if a.norm() > 0.0 {
            let p = a.conj() / a.norm();
            (a * p, b * p)
        } else {
            (Complex64::new(0.0, 0.0), Complex64::new(b.norm(), 0.0))
        };
        let theta = b.norm().atan2(a.re);
        let phase = if b.norm() > 0.0 { b / b.norm() } else { Complex64::new(1.0, 0.0) };
        (theta, phase)
    };
    let (s, c) = theta.sin_cos();
    Ok(Eigensystem {
        energies: dressed_energies(block).to_vec(),
        rabi,
        theta,
        eigenvectors: vec![
            vec![Complex64::new(c, 0.0), phase * s],
            vec![Complex64::new(-s, 0.0), phase * c],
        ],
    })
}

/// The Jaynes-Cummings block seen by an x-oriented molecule at axial position `z`.
pub fn block_at(molecule: &ChiralMolecule, mode: &CavityMode, n: u32, z: f64) -> JcBlock {
    let g = coupling_at(molecule, mode, Orientation::FixedX, z).expect("fixed orientation always resolves");
    JcBlock::new(n, mode.omega(), molecule.omega_m(), g)
}

/// Casimir-Polder force `F_z = -dE/dz` (N) on an x-oriented molecule in the
/// chosen dressed state:
///
/// `F_z = ± hbar 2(n+1) k G^2 cos(kz) sin(kz) / Omega(z)`, with
/// `G = omega A0 |d| (1 + s chi) / hbar`.
///
/// At a point where `Omega` vanishes (zero detuning on a node of the x
/// projection) the force is discontinuous and is reported as zero.
pub fn cp_force(molecule: &ChiralMolecule, mode: &CavityMode, n: u32, z: f64, branch: Branch) -> f64 {
    let block = block_at(molecule, mode, n, z);
    let rabi = rabi_frequency(&block);
    if rabi == 0.0 {
        return 0.0;
    }
    let k = mode.k();
    let peak = mode.omega() * mode.amplitude() * molecule.dipole().magnitude() / HBAR
        * crate::coupling::chiral_factor(molecule.chi(), mode);
    let (s, c) = (k * z).sin_cos();
    branch.sign() * HBAR * 2.0 * (f64::from(n) + 1.0) * k * peak * peak * c * s / rabi
}

/// Position-dependent part of a dressed-state energy, `E - tr(H)/2`, from a
/// numerical eigensolve of the block matrix.
pub fn numeric_dressed_shift(molecule: &ChiralMolecule, mode: &CavityMode, n: u32, z: f64, branch: Branch) -> Result<f64> {
    let h = jc_matrix(&block_at(molecule, mode, n, z));
    let traceless = h.shifted(0.5 * h.trace());
    let eig = eigh_jacobi(&traceless)?;
    Ok(match branch {
        Branch::Upper => eig.values[1],
        Branch::Lower => eig.values[0],
    })
}

/// Finite-difference force `-dE/dz` with step `h = 1e-6 / k`.
///
/// The trace of the block does not depend on `z`, so differentiating the
/// traceless part gives the same derivative without cancellation against the
/// large `(n + 1/2) hbar omega` offset.
pub fn cp_force_numeric(molecule: &ChiralMolecule, mode: &CavityMode, n: u32, z: f64, branch: Branch) -> Result<f64> {
    let step = 1e-6 / mode.k();
    let mut failure = None;
    let derivative = central_diff(
        |x| match numeric_dressed_shift(molecule, mode, n, x, branch) {
            Ok(e) => e,
            Err(err) => {
                failure.get_or_insert(err);
                f64::NAN
            }
        },
        z,
        step,
    );
    match failure {
        Some(err) => Err(err),
        None => Ok(-derivative),
    }
}
