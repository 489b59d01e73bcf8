use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use negspin_core::{FreeModel, PhysicalParams};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "negspin",
    version,
    about = "Checks for a spin-1/2 wave equation with negative-energy states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Units::Natural, global = true)]
    pub units: Units,
    #[arg(long, global = true)]
    pub m0: Option<f64>,
    #[arg(long, global = true)]
    pub c: Option<f64>,
    #[arg(long, global = true)]
    pub hbar: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<f64>,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<std::path::PathBuf>,
    /// Flat `key=value` file; flags given on the command line win.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Natural,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// The linearised operator with the iβγ₅ kinetic term.
    Bruce,
    Dirac,
}

impl From<Model> for FreeModel {
    fn from(m: Model) -> Self {
        match m {
            Model::Bruce => FreeModel::Linearized,
            Model::Dirac => FreeModel::Dirac,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Observable {
    Alpha1,
    Alpha2,
    Alpha3,
    Beta,
    Ibg5,
    Identity,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Clifford identities and Γ₁/Γ₂ properties.
    Identities(IdentitiesArgs),
    /// Free spectrum against the closed form.
    Dispersion(DispersionArgs),
    /// Truncated Landau problem against the analytic ladder.
    Landau(LandauArgs),
    /// Radial Coulomb levels against the Bohr formula.
    Coulomb(CoulombArgs),
    /// Oscillation frequency of a ± energy superposition.
    Zitter(ZitterArgs),
    /// Lorentz transform and the energy correspondence sweep.
    Lorentz(LorentzArgs),
    /// Seeded trials of the reduction to the Pauli equation.
    Reduction(ReductionArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Identities(_) => "identities",
            Command::Dispersion(_) => "dispersion",
            Command::Landau(_) => "landau",
            Command::Coulomb(_) => "coulomb",
            Command::Zitter(_) => "zitter",
            Command::Lorentz(_) => "lorentz",
            Command::Reduction(_) => "reduction",
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IdentitiesArgs {}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DispersionArgs {
    #[arg(long, default_value_t = 5.0)]
    pub pmax: f64,
    #[arg(long, default_value_t = 51)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = Model::Bruce)]
    pub which: Model,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LandauArgs {
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub pz: f64,
    #[arg(long, default_value_t = 40)]
    pub n_max: usize,
    #[arg(long, default_value_t = 3)]
    pub k_max: usize,
    /// Constant scalar potential energy.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub v0: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CoulombArgs {
    #[arg(long, default_value_t = 1.0)]
    pub z: f64,
    #[arg(long, default_value_t = 0)]
    pub l: usize,
    #[arg(long, default_value_t = 60.0)]
    pub r_max: f64,
    #[arg(long, default_value_t = 6000)]
    pub n_points: usize,
    #[arg(long, default_value_t = 3)]
    pub n_levels: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ZitterArgs {
    /// Momentum `px,py,pz`.
    #[arg(long, default_value = "0,0,1", allow_hyphen_values = true)]
    pub p: String,
    /// Amplitudes for (+,+1), (+,−1), (−,+1), (−,−1).
    #[arg(long, default_value = "1,0,1,0", allow_hyphen_values = true)]
    pub weights: String,
    #[arg(long, value_enum, default_value_t = Observable::Alpha3)]
    pub observable: Observable,
    #[arg(long, default_value_t = 8.0 * std::f64::consts::PI)]
    pub t_max: f64,
    #[arg(long, default_value_t = 512)]
    pub n_samples: usize,
    #[arg(long, value_enum, default_value_t = Model::Bruce)]
    pub model: Model,
    /// Also write the `t,value` series here.
    #[arg(long)]
    #[serde(skip)]
    pub series: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LorentzArgs {
    /// Frame velocity `vx,vy,vz`.
    #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
    pub v: String,
    /// Energy in the moving frame; defaults to the positive Dirac energy of `p'`.
    #[arg(long, allow_hyphen_values = true)]
    pub e_prime: Option<f64>,
    #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
    pub p_prime: String,
    /// Number of momenta in the correspondence sweep.
    #[arg(long, default_value_t = 10)]
    pub sweep: usize,
    #[arg(long, default_value_t = 3.0)]
    pub sweep_pmax: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReductionArgs {
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Offset the trial energy by +0.2 (negative control).
    #[arg(long)]
    pub wrong_energy: bool,
}

impl CommonArgs {
    pub fn params(&self) -> Result<PhysicalParams, CliError> {
        let given = [
            ("m0", self.m0),
            ("c", self.c),
            ("hbar", self.hbar),
            ("q", self.q),
        ];
        match self.units {
            Units::Natural => {
                if let Some((name, _)) = given.iter().find(|(_, v)| v.is_some()) {
                    return Err(CliError::Usage(format!("--{name} requires --units custom")));
                }
                Ok(PhysicalParams::default())
            }
            Units::Custom => {
                let missing: Vec<_> = given
                    .iter()
                    .filter(|(_, v)| v.is_none())
                    .map(|(n, _)| *n)
                    .collect();
                if !missing.is_empty() {
                    return Err(CliError::Usage(format!(
                        "--units custom needs --{}",
                        missing.join(", --")
                    )));
                }
                let [m0, c, hbar, q] = given.map(|(_, v)| v.unwrap_or_default());
                Ok(PhysicalParams::new(m0, c, hbar, q)?)
            }
        }
    }
}

/// Parses `x,y,z`.
pub fn parse_vec3(name: &str, s: &str) -> Result<[f64; 3], CliError> {
    let v = parse_list(name, s)?;
    <[f64; 3]>::try_from(v.as_slice()).map_err(|_| {
        CliError::Usage(format!(
            "--{name} needs 3 comma-separated numbers, got {s:?}"
        ))
    })
}

pub fn parse_list(name: &str, s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Usage(format!("--{name}: {x:?} is not a finite number")))
        })
        .collect()
}
