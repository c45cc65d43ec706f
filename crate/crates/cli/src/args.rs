use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

/// Exact spectra of invariant Laplacians from root-system and representation data.
#[derive(Parser, Debug)]
#[command(name = "laplace-spectra", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Each variant serializes to the JSON accepted by `--config`, minus output paths.
#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Root system data: roots, multiplicities, delta, Weyl group.
    Roots(RootsArgs),
    /// Spherical weights up to a cutoff with Casimir eigenvalues.
    Spectrum(SpectrumArgs),
    /// Casimir-collision classes with two or more members.
    Collisions(CollisionsArgs),
    /// Lattice points on a sphere centered at -delta and their symmetry group.
    SphereSym(SphereArgs),
    /// Real / complex / quaternionic type of highest weights.
    Types(TypesArgs),
    /// Complex and real structure of an eigenspace.
    Assemble(AssembleArgs),
    /// Real G-simplicity and complex (Q8 x G)-simplicity from per-representation spectra.
    Verdict(VerdictArgs),
    /// Certify the SU(2) simplicity criteria by nonzero evaluations.
    Certify(CertifyArgs),
    /// The SU(2) metric operator on one irreducible.
    Operator(OperatorArgs),
    /// Run the invariant suite.
    Selfcheck(SelfcheckArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct SystemArgs {
    /// Root system name, e.g. A2, B3, BC2, G2.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system: Option<String>,
    /// Root-system fixture (JSON) instead of --system.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture: Option<PathBuf>,
    /// Root multiplicities by length class, e.g. short=2,long=1.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mult: Option<String>,
    /// How multiplicities enter delta: weighted or unweighted.
    #[arg(long, default_value = "weighted")]
    pub delta_mode: String,
}

#[derive(Args, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct OutArgs {
    /// Report path; stdout when absent.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct RootsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct SpectrumArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    /// weight, root, even, scaled:k, or basis:<Dynkin rows>.
    #[arg(long, default_value = "weight")]
    pub lattice: String,
    /// Upper bound on (mu+delta, mu+delta), as p/q.
    #[arg(long)]
    pub cutoff: String,
    /// dim V^K overrides, e.g. "2,0=2;1,1=3".
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vk_mult: Option<String>,
    /// Also write a flat CSV view of the records.
    #[arg(long)]
    #[serde(skip)]
    pub csv: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct CollisionsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value = "weight")]
    pub lattice: String,
    #[arg(long)]
    pub cutoff: String,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vk_mult: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct SphereArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value = "weight")]
    pub lattice: String,
    /// Squared radius a^2, as p/q.
    #[arg(long)]
    pub a2: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct TypesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    /// Highest weights as Dynkin rows, e.g. "1,0;0,1".
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<String>,
    /// Classify every dominant weight with (mu+delta, mu+delta) up to this value.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<String>,
    /// For A1: compare with the tensor-square oracle for m up to this bound.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_max: Option<u32>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct AssembleArgs {
    /// real, complex or quaternionic.
    #[arg(long = "type")]
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub rep_type: Option<String>,
    /// Eigenvalue multiplicity.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    /// A spectrum report; assembles every record of known type.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct VerdictArgs {
    /// A certify report, or JSON with a "spectra" list of per-representation spectra.
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct CertifyArgs {
    #[arg(long, default_value_t = 6)]
    pub mmax: u32,
    /// "default" or a JSON file listing symmetric 3x3 matrices.
    #[arg(long, default_value = "default")]
    pub schedule: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct OperatorArgs {
    #[arg(long)]
    pub m: u32,
    /// Symmetric 3x3 matrix as rows, e.g. "1,0,0;0,1,0;0,0,1".
    #[arg(long, default_value = "1,0,0;0,1,0;0,0,1")]
    pub kappa: String,
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

#[derive(Args, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct SelfcheckArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub out: OutArgs,
}

impl Command {
    pub fn out(&self) -> Option<&PathBuf> {
        match self {
            Command::Roots(a) => a.out.out.as_ref(),
            Command::Spectrum(a) => a.out.out.as_ref(),
            Command::Collisions(a) => a.out.out.as_ref(),
            Command::SphereSym(a) => a.out.out.as_ref(),
            Command::Types(a) => a.out.out.as_ref(),
            Command::Assemble(a) => a.out.out.as_ref(),
            Command::Verdict(a) => a.out.out.as_ref(),
            Command::Certify(a) => a.out.out.as_ref(),
            Command::Operator(a) => a.out.out.as_ref(),
            Command::Selfcheck(a) => a.out.out.as_ref(),
        }
    }
}
