use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "weylwave", version, about = "Residual, energy and kinematics checks for Weyl-field wave solutions")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// `key = value` file mirroring the long flags; flags override it.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    #[serde(skip)]
    pub format: Format,
    /// Directory for report files.
    #[arg(long, global = true, default_value = ".")]
    #[serde(skip)]
    pub out: PathBuf,
    /// Worker threads for data-parallel sweeps.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write `wall_time = 0` so reports are byte-identical across runs.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub reproducible: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite-difference residuals of a wave family under grid refinement.
    Verify(VerifyArgs),
    /// Projector, parity and rotor identities on random samples.
    Invariants(SampleArgs),
    /// Stress-energy densities and energies over growing windows.
    Energy(EnergyArgs),
    /// X-pulse boundary reproduction and front tracking.
    Xpulse(XpulseArgs),
    /// Axicon angle from a phase speed.
    FitAxicon(FitArgs),
    /// Dispersion tables with group and phase velocities.
    Dispersion(DispersionArgs),
    /// Geometric product against the Dirac-matrix representation.
    Oracle(SampleArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify(_) => "verify",
            Command::Invariants(_) => "invariants",
            Command::Energy(_) => "energy",
            Command::Xpulse(_) => "xpulse",
            Command::FitAxicon(_) => "fit-axicon",
            Command::Dispersion(_) => "dispersion",
            Command::Oracle(_) => "oracle",
        }
    }
}

pub const SUBCOMMANDS: [&str; 7] = ["verify", "invariants", "energy", "xpulse", "fit-axicon", "dispersion", "oracle"];

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Bessel,
    ModifiedBessel,
    Axicon,
    Spherical,
    Plane,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Plus,
    Minus,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FamilyArgs {
    #[arg(long, value_enum, default_value_t = Family::Bessel)]
    pub family: Family,
    /// Azimuthal order of cylindrical beams.
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub n: i64,
    /// Degree and order of spherical beams.
    #[arg(long, default_value_t = 0)]
    pub l: usize,
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// Any two of `--omega`, `--k`, `--Omega` fix a cylindrical beam; with none,
    /// `ω = 5, Ω = 3` (Bessel) or `k = 5, Ω = 3` (modified Bessel).
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long = "Omega")]
    #[serde(rename = "Omega")]
    pub big_omega: Option<f64>,
    /// Envelope speed of spherical beams (`inf` allowed).
    #[arg(long)]
    pub v: Option<f64>,
    /// Axicon angle in radians; `pi/3` style accepted.
    #[arg(long, value_parser = parse_angle)]
    pub eta: Option<f64>,
    #[arg(long)]
    pub kbar: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub amplitude: f64,
    #[arg(long, value_enum, default_value_t = Chirality::Plus)]
    pub handedness: Chirality,
    /// Free constants of the constrained potential.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub c1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub c2: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Operator {
    /// `∂F` of the constructed Weyl field.
    Weyl,
    /// `□Φ` of the scalar profile.
    Wave,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeArg {
    Order2,
    Order4,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingArg {
    Common,
    Full,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = Operator::Weyl)]
    pub operator: Operator,
    /// Number of refinement levels.
    #[arg(long, default_value_t = 3)]
    pub refine: usize,
    /// Cells per axis on the coarsest level.
    #[arg(long, default_value_t = 8)]
    pub intervals: usize,
    #[arg(long, default_value_t = 0.2)]
    pub half_width: f64,
    /// Window centre `t,x,y,z`.
    #[arg(long, default_value = "0.1,0.8,0.4,0.3", value_parser = parse_point)]
    pub centre: [f64; 4],
    #[arg(long, value_enum, default_value_t = SchemeArg::Order2)]
    pub scheme: SchemeArg,
    #[arg(long, value_enum, default_value_t = SamplingArg::Common)]
    pub sampling: SamplingArg,
    /// Smallest observed order that counts as a pass.
    #[arg(long, default_value_t = 1.9)]
    pub min_order: f64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegionArg {
    Ball,
    Cylinder,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReadingArg {
    DiracHestenes,
    RealPart,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct EnergyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = RegionArg::Cylinder)]
    pub region: RegionArg,
    /// Window radii, comma separated.
    #[arg(long, default_value = "1,2,4,10", value_parser = parse_list)]
    pub radii: List,
    #[arg(long, default_value_t = 0.5)]
    pub half_length: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long, value_enum, default_value_t = ReadingArg::DiracHestenes)]
    pub reading: ReadingArg,
    #[arg(long, default_value_t = 8)]
    pub gl_order: usize,
    #[arg(long, default_value_t = 3.0)]
    pub panels_per_unit: f64,
    #[arg(long, default_value_t = 8)]
    pub theta_points: usize,
    /// Side of an `x`-`z` grid of `T00` values written to `energy_map.csv`; 0 disables.
    #[arg(long, default_value_t = 0)]
    pub map: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct XpulseArgs {
    #[arg(long, default_value = "pi/4", value_parser = parse_angle)]
    pub eta: f64,
    /// Gate half-width `T`.
    #[arg(long, default_value_t = 1.0)]
    pub gate: f64,
    #[arg(long, default_value_t = 10.0)]
    pub omega0: f64,
    #[arg(long, default_value_t = 0.5)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1.5, allow_negative_numbers = true)]
    pub t0: f64,
    #[arg(long, default_value_t = 0.25)]
    pub dt: f64,
    #[arg(long, default_value_t = 8)]
    pub steps: usize,
    /// Search window `z_lo,z_hi` for the front.
    #[arg(long, default_value = "0,12", value_parser = parse_list)]
    pub window: List,
    /// Relative threshold defining the front.
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    /// On-axis samples of `|Ψ|` at `t0` written to `xpulse_profile.csv`; 0 disables.
    #[arg(long, default_value_t = 0)]
    pub profile: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FitArgs {
    /// Phase speed `v > 1`.
    #[arg(long)]
    pub v: f64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchArg {
    Subluminal,
    Superluminal,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DispersionArgs {
    /// Branch; without it and without values both reference triples are tabulated.
    #[arg(long, value_enum)]
    pub branch: Option<BranchArg>,
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long = "Omega")]
    #[serde(rename = "Omega")]
    pub big_omega: Option<f64>,
}

/// A float, or `pi`, `pi/d`, `x*pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let pi = std::f64::consts::PI;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("cannot read {t:?} as a number"));
    if s == "pi" {
        return Ok(pi);
    }
    if let Some(d) = s.strip_prefix("pi/") {
        return Ok(pi / num(d)?);
    }
    if let Some(x) = s.strip_suffix("*pi") {
        return Ok(num(x)? * pi);
    }
    num(s)
}

/// Comma-separated numbers taken as one flag value.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct List(pub Vec<f64>);

impl std::ops::Deref for List {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

pub fn parse_list(s: &str) -> Result<List, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("cannot read {t:?} as a number")))
        .collect::<Result<_, _>>()
        .map(List)
}

fn parse_point(s: &str) -> Result<[f64; 4], String> {
    let v = parse_list(s)?.0;
    v.try_into().map_err(|v: Vec<f64>| format!("expected 4 comma-separated coordinates t,x,y,z, got {}", v.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_and_lists() {
        assert!((parse_angle("pi/3").unwrap() - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
        assert_eq!(parse_angle("0.5*pi").unwrap(), std::f64::consts::FRAC_PI_2);
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert!(parse_angle("pi/x").is_err());
        assert_eq!(parse_list("1, 2,4").unwrap().0, vec![1.0, 2.0, 4.0]);
        assert!(parse_point("1,2,3").is_err());
    }
}
