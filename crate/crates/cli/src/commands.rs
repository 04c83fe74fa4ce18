use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use ccqed_core::coupling::CouplingConstant;
use ccqed_core::estimates::{default_database, estimate, load_database, MoleculeRecord};
use ccqed_core::mode_field::{field_snapshot, CavityMode, Handedness, Normalisation};
use ccqed_core::molecule::ChiralMolecule;
use ccqed_core::single_mode::{cp_force, cp_force_numeric, dressed_energies, Branch, JcBlock};
use ccqed_core::two_mode::{degenerate_spectrum, nondegenerate_spectrum, scenario_pair, Scenario, TwoModeBlock};
use ccqed_core::units::{minimal_mode_volume, HBAR, SPEED_OF_LIGHT};

use crate::output::{Cell, Format, Table};
use crate::{CliError, DB_ENV};

#[derive(Debug, Parser)]
#[command(name = "ccqed", version, about = "Chiral cavity QED data emitters")]
pub struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rabi splittings, chiral shifts and resolving powers for a molecule database.
    Table(TableArgs),
    /// Dressed-state energies over a sweep of the bare coupling constant.
    Spectrum(SpectrumArgs),
    /// Casimir-Polder force profile along the cavity axis.
    Force(ForceArgs),
    /// Electric and magnetic field snapshots of a circularly polarised mode.
    Fields(FieldsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// Molecule database (JSON). Falls back to $CCQED_DB, then the built-in table.
    #[arg(long, env = DB_ENV)]
    pub db: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ScenarioName {
    Single,
    Degenerate,
    Imperfect,
    NearDegenerate,
}

impl std::fmt::Display for ScenarioName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.to_possible_value().expect("no skipped variants").get_name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HandednessArg {
    Right,
    Left,
}

impl From<HandednessArg> for Handedness {
    fn from(h: HandednessArg) -> Self {
        match h {
            HandednessArg::Right => Handedness::Right,
            HandednessArg::Left => Handedness::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum NormalisationArg {
    Unit,
    SinglePhoton,
}

impl From<NormalisationArg> for Normalisation {
    fn from(n: NormalisationArg) -> Self {
        match n {
            NormalisationArg::Unit => Normalisation::Unit,
            NormalisationArg::SinglePhoton => Normalisation::SinglePhoton,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    pub scenario: ScenarioName,
    /// Photon number n (n1 = n2 = n for two modes).
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// Molecule-mode detuning omega_M - omega, rad/s.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub detuning: f64,
    /// Mode angular frequency, rad/s; sets the energy offset.
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Largest bare coupling |g| in the sweep, rad/s. The sweep starts at 0.
    #[arg(long, default_value_t = 0.1)]
    pub g_max: f64,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Molecular chirality parameter in [-1, 1].
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub chi: f64,
    /// Weak-mode amplitude ratio dA0/A0 for the imperfect cavity.
    #[arg(long, default_value_t = 0.4)]
    pub delta_ratio: f64,
    /// Handedness of the (dominant) mode.
    #[arg(long, value_enum, default_value = "right")]
    pub handedness: HandednessArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ForceArgs {
    /// Database name, or inline `nu=<Hz>,d=<D>[,chi=<x>][,volume=<m3>]`.
    #[arg(long)]
    pub molecule: String,
    #[arg(long, env = DB_ENV)]
    pub db: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// omega_M - omega, rad/s.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub detuning: f64,
    /// Start of the z grid, m (default 0).
    #[arg(long, allow_hyphen_values = true)]
    pub z_min: Option<f64>,
    /// End of the z grid, m (default one mode wavelength 2 pi / k).
    #[arg(long, allow_hyphen_values = true)]
    pub z_max: Option<f64>,
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    /// Dressed state followed adiabatically: 1 (upper) or 2 (lower).
    #[arg(long, default_value_t = 1)]
    pub state: u32,
    #[arg(long, value_enum, default_value = "right")]
    pub handedness: HandednessArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct FieldsArgs {
    /// Mode frequency, Hz.
    #[arg(long)]
    pub nu: f64,
    /// Mode volume, m^3 (default (lambda/2)^3).
    #[arg(long)]
    pub volume: Option<f64>,
    #[arg(long, value_enum, default_value = "right")]
    pub handedness: HandednessArg,
    /// Snapshot times as fractions of the optical period.
    #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75")]
    pub times: Vec<f64>,
    /// Grid points over one wavelength.
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    #[arg(long, value_enum, default_value = "unit")]
    pub normalisation: NormalisationArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

impl Command {
    pub fn format(&self) -> Format {
        match self {
            Command::Table(a) => a.format,
            Command::Spectrum(a) => a.format,
            Command::Force(a) => a.format,
            Command::Fields(a) => a.format,
        }
    }

    pub fn run(&self) -> Result<Table, CliError> {
        match self {
            Command::Table(a) => cmd_table(a),
            Command::Spectrum(a) => cmd_spectrum(a),
            Command::Force(a) => cmd_force(a),
            Command::Fields(a) => cmd_fields(a),
        }
    }
}

fn resolve_database(db: Option<&Path>) -> Result<(Vec<MoleculeRecord>, String), CliError> {
    match db {
        Some(path) => Ok((load_database(path)?, path.display().to_string())),
        None => Ok((default_database(), "built-in".to_string())),
    }
}

/// Evenly spaced grid including both ends.
pub fn linspace(min: f64, max: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if points < 2 {
        return Err(CliError::Usage(format!("sweeps need at least 2 points, got {points}")));
    }
    if !(min.is_finite() && max.is_finite() && min < max) {
        return Err(CliError::Usage(format!("grid needs min < max, got [{min}, {max}]")));
    }
    let step = (max - min) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i == points - 1 { max } else { min + step * i as f64 })
        .collect())
}

pub fn cmd_table(args: &TableArgs) -> Result<Table, CliError> {
    let (records, source) = resolve_database(args.db.as_deref())?;
    let mut table = Table::new(
        "table",
        vec![
            "name",
            "nu_hz",
            "d_debye",
            "chi",
            "volume_m3",
            "omega_rabi",
            "chiral_shift",
            "resolving_power",
            "omega_rabi_hz",
            "chiral_shift_hz",
        ],
    );
    table.meta("db", source);
    table.meta("units", "omega_rabi and chiral_shift in rad/s; *_hz columns divided by 2 pi");
    table.meta("resolving_power", "nu_hz / chiral_shift (rad/s value); empty when chiral_shift = 0");
    for record in &records {
        let row = estimate(record)?;
        table.push(vec![
            row.name.as_str().into(),
            row.nu_hz.into(),
            row.d_debye.into(),
            row.chi.into(),
            row.volume_m3.into(),
            row.omega_rabi.into(),
            row.chiral_shift.into(),
            row.resolving_power.into(),
            row.omega_rabi_hz.into(),
            row.chiral_shift_hz.into(),
        ]);
    }
    Ok(table)
}

pub fn cmd_spectrum(args: &SpectrumArgs) -> Result<Table, CliError> {
    if !(args.omega.is_finite() && args.omega > 0.0) {
        return Err(CliError::Usage(format!("--omega must be positive, got {}", args.omega)));
    }
    if !(-1.0..=1.0).contains(&args.chi) {
        return Err(CliError::Usage(format!("--chi must lie in [-1, 1], got {}", args.chi)));
    }
    let grid = linspace(0.0, args.g_max, args.points)?;
    let handedness = Handedness::from(args.handedness);
    let scenario = match args.scenario {
        ScenarioName::Single => None,
        ScenarioName::Degenerate => {
            if args.chi != 0.0 {
                return Err(CliError::Usage("the degenerate scenario is for an achiral molecule (--chi 0)".into()));
            }
            Some(Scenario::Degenerate)
        }
        ScenarioName::Imperfect => {
            if !(0.0..1.0).contains(&args.delta_ratio) {
                return Err(CliError::Usage(format!("--delta-ratio must lie in [0, 1), got {}", args.delta_ratio)));
            }
            Some(Scenario::Imperfect {
                amplitude_ratio: args.delta_ratio,
            })
        }
        ScenarioName::NearDegenerate => Some(Scenario::NearDegenerate),
    };

    let mut table = Table::new(
        "spectrum",
        vec!["g_rads", "E1_over_hbar_rads", "E2_over_hbar_rads", "E3_over_hbar_rads"],
    );
    table.meta("scenario", args.scenario);
    table.meta("n", args.n);
    table.meta("omega_rads", crate::output::fmt_float(args.omega));
    table.meta("detuning_rads", crate::output::fmt_float(args.detuning));
    table.meta("chi", crate::output::fmt_float(args.chi));
    table.meta("handedness", handedness);
    if args.scenario == ScenarioName::Imperfect {
        table.meta("delta_ratio", crate::output::fmt_float(args.delta_ratio));
    }
    table.meta("g_range_rads", format!("0 .. {} ({} points)", crate::output::fmt_float(args.g_max), args.points));

    let omega_m = args.omega + args.detuning;
    for &g in &grid {
        let row = match scenario {
            None => {
                let coupling = CouplingConstant::real(g * (1.0 + handedness.sign() * args.chi));
                let [e1, e2] = dressed_energies(&JcBlock::new(args.n, args.omega, omega_m, coupling));
                vec![g.into(), (e1 / HBAR).into(), (e2 / HBAR).into(), Cell::Empty]
            }
            Some(s) => {
                let (g1, g2) = scenario_pair(s, g, args.chi, handedness)?;
                let block = TwoModeBlock::equal_modes(args.n, args.omega, omega_m, g1, g2);
                let spectrum = match s {
                    Scenario::Degenerate => degenerate_spectrum(&block)?,
                    _ => nondegenerate_spectrum(&block)?,
                };
                let [e1, e2, e3] = spectrum.over_hbar();
                vec![g.into(), e1.into(), e2.into(), e3.into()]
            }
        };
        table.push(row);
    }
    Ok(table)
}

/// Parses a database name or an inline `key=value` molecule description.
pub fn resolve_molecule(spec: &str, db: Option<&Path>) -> Result<MoleculeRecord, CliError> {
    if spec.contains('=') {
        let (mut nu, mut d, mut chi, mut volume) = (None, None, None, None);
        for part in spec.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("inline molecule field `{part}` is not key=value")))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("inline molecule field `{key}` has non-numeric value `{value}`")))?;
            match key.trim() {
                "nu" => nu = Some(value),
                "d" => d = Some(value),
                "chi" => chi = Some(value),
                "volume" => volume = Some(value),
                other => return Err(CliError::Usage(format!("unknown inline molecule field `{other}`"))),
            }
        }
        let nu = nu.ok_or_else(|| CliError::Usage("inline molecule needs nu=<Hz>".into()))?;
        let d = d.ok_or_else(|| CliError::Usage("inline molecule needs d=<debye>".into()))?;
        return Ok(MoleculeRecord::new("inline", nu, d, chi, volume)?);
    }
    let (records, source) = resolve_database(db)?;
    records
        .into_iter()
        .find(|r| r.name == spec)
        .ok_or_else(|| {
            ccqed_core::Error::Validation(format!("molecule `{spec}` not found in database {source}")).into()
        })
}

pub fn cmd_force(args: &ForceArgs) -> Result<Table, CliError> {
    let branch = Branch::from_index(args.state)?;
    let record = resolve_molecule(&args.molecule, args.db.as_deref())?;
    let molecule = ChiralMolecule::new(record.name.clone(), record.omega(), record.dipole(), record.chi)?;
    let omega = molecule.omega_m() - args.detuning;
    if !(omega > 0.0) {
        return Err(CliError::Usage(format!(
            "detuning {} leaves a non-positive mode frequency",
            args.detuning
        )));
    }
    let mode = CavityMode::new(omega, args.handedness.into(), record.volume)?;
    let k = mode.k();
    let z_min = args.z_min.unwrap_or(0.0);
    let z_max = args.z_max.unwrap_or(z_min + 2.0 * PI / k);
    let grid = linspace(z_min, z_max, args.points)?;

    let mut table = Table::new("force", vec!["z_m", "kz_rad", "F_z_newton", "F_z_fd_newton"]);
    table.meta("molecule", &record.name);
    table.meta("nu_hz", crate::output::fmt_float(record.nu));
    table.meta("d_debye", crate::output::fmt_float(record.d));
    table.meta("chi", crate::output::fmt_float(record.chi));
    table.meta("volume_m3", crate::output::fmt_float(record.volume));
    table.meta("orientation", "dipoles along x");
    table.meta("handedness", mode.handedness());
    table.meta("n", args.n);
    table.meta("detuning_rads", crate::output::fmt_float(args.detuning));
    table.meta("state", branch.index());
    table.meta("fd_step_m", crate::output::fmt_float(1e-6 / k));

    for &z in &grid {
        let f = cp_force(&molecule, &mode, args.n, z, branch);
        let fd = cp_force_numeric(&molecule, &mode, args.n, z, branch)?;
        table.push(vec![z.into(), (k * z).into(), f.into(), fd.into()]);
    }
    Ok(table)
}

pub fn cmd_fields(args: &FieldsArgs) -> Result<Table, CliError> {
    if !(args.nu.is_finite() && args.nu > 0.0) {
        return Err(CliError::Usage(format!("--nu must be positive, got {}", args.nu)));
    }
    if args.times.is_empty() || args.times.iter().any(|t| !t.is_finite()) {
        return Err(CliError::Usage("--times needs at least one finite value".into()));
    }
    let omega = 2.0 * PI * args.nu;
    let volume = match args.volume {
        Some(v) => v,
        None => minimal_mode_volume(omega)?,
    };
    let mode = CavityMode::new(omega, args.handedness.into(), volume)?;
    let wavelength = SPEED_OF_LIGHT / args.nu;
    let grid = linspace(0.0, wavelength, args.points)?;
    let normalisation = Normalisation::from(args.normalisation);

    let mut table = Table::new("fields", vec!["t_frac", "z_m", "Ex", "Ey", "Bx", "By"]);
    table.meta("nu_hz", crate::output::fmt_float(args.nu));
    table.meta("volume_m3", crate::output::fmt_float(volume));
    table.meta("handedness", mode.handedness());
    table.meta("normalisation", normalisation);
    table.meta("phase_convention", "E ~ sin(omega t), B ~ sign * cos(omega t); Ez = Bz = 0");
    table.meta("times", args.times.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(","));
    for &t_frac in &args.times {
        let snap = field_snapshot(&mode, &grid, t_frac * 2.0 * PI / omega, normalisation)?;
        for ((z, e), b) in snap.z_values.iter().zip(&snap.e_field).zip(&snap.b_field) {
            table.push(vec![t_frac.into(), (*z).into(), e[0].into(), e[1].into(), b[0].into(), b[1].into()]);
        }
    }
    Ok(table)
}
