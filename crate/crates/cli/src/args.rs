use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "eprsim",
    version,
    about = "Entangled-pair correlation scans, Bloch trajectories and Monte Carlo runs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate S(θ) = 3E(θ) − E(3θ) over a parameter range.
    Scan(ScanArgs),
    /// Trace the renormalized Bloch vector through a channel.
    Trajectory(TrajectoryArgs),
    /// Sample coincidence counts for one or four setting pairs.
    Montecarlo(MonteCarloArgs),
    /// Locate the maximum of |S| along the one-parameter family.
    Maximize(MaximizeArgs),
    /// Regenerate an output from its manifest.
    Rerun(RerunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanSystem {
    Photon,
    Kaon,
    KaonNormalized,
    Bmeson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum McSystem {
    Photon,
    Kaon,
    Bmeson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Unit {
    Deg,
    Rad,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Channel {
    Birefringence,
    Pdl,
    Fiber,
    Kaon,
    Bmeson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FiberArm {
    A,
    B,
    Both,
}

/// Meson constants. Defaults depend on the system, so both are optional here.
#[derive(Debug, Clone, Args)]
pub struct MesonArgs {
    /// Mass difference: m_S − m_L in units of γ_S (kaon, default 0.477) or ΔM_B·τ_B (B meson, default 0.723).
    #[arg(long)]
    pub delta_m: Option<f64>,
    /// γ_L/γ_S for kaons (default 1/580).
    #[arg(long)]
    pub gamma_l_ratio: Option<f64>,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub system: ScanSystem,
    /// Range start (default 0).
    #[arg(long)]
    pub min: Option<f64>,
    /// Range end (default: half a period for photon/B meson, 4π/Δm for kaons).
    #[arg(long)]
    pub max: Option<f64>,
    #[arg(long, default_value_t = 1001)]
    pub steps: usize,
    /// Angle unit for photon scans (default deg). Meson parameters are times.
    #[arg(long, value_enum)]
    pub unit: Option<Unit>,
    #[command(flatten)]
    pub meson: MesonArgs,
    /// Output CSV; stdout if omitted.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct TrajectoryArgs {
    #[arg(long, value_enum)]
    pub channel: Channel,
    /// Birefringence axis `x,y,z` (normalized; default pole 0,0,1).
    #[arg(long, allow_hyphen_values = true)]
    pub axis: Option<String>,
    /// PDL axis `x,y,z` (default: the birefringence axis).
    #[arg(long, allow_hyphen_values = true)]
    pub pdl_axis: Option<String>,
    /// Precession rate in radians per unit length.
    #[arg(long, default_value_t = 1.0)]
    pub rate: f64,
    /// Loss coefficient of the favored state.
    #[arg(long, default_value_t = 0.0)]
    pub alpha_max: f64,
    /// Loss coefficient of the disfavored state.
    #[arg(long, default_value_t = 1.0)]
    pub alpha_min: f64,
    /// Fiber length, or elapsed time for mesons.
    #[arg(long, default_value_t = 10.0)]
    pub length: f64,
    #[arg(long, default_value_t = 201)]
    pub steps: usize,
    /// Initial Bloch vector `x,y,z` (default 1,0,0: V for photons, K⁰ for mesons).
    #[arg(long, allow_hyphen_values = true)]
    pub start: Option<String>,
    /// Kaon mixing without decay.
    #[arg(long)]
    pub no_decay: bool,
    #[command(flatten)]
    pub meson: MesonArgs,
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct MonteCarloArgs {
    #[arg(long, value_enum)]
    pub system: McSystem,
    /// `a,b` or `a,a',b,b'`: analyzer angles (photon) or detection times (mesons).
    #[arg(long, allow_hyphen_values = true)]
    pub settings: String,
    /// Angle unit for photon settings (default deg).
    #[arg(long, value_enum)]
    pub unit: Option<Unit>,
    #[arg(long, default_value_t = 1_000_000)]
    pub pairs: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub efficiency: f64,
    /// Fiber length on the photon arm(s); no fiber if omitted.
    #[arg(long)]
    pub fiber_length: Option<f64>,
    #[arg(long, value_enum, default_value_t = FiberArm::B)]
    pub fiber_arm: FiberArm,
    #[arg(long, allow_hyphen_values = true)]
    pub fiber_axis: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub fiber_pdl_axis: Option<String>,
    #[arg(long, default_value_t = 0.0)]
    pub fiber_rate: f64,
    #[arg(long, default_value_t = 0.0)]
    pub fiber_alpha_max: f64,
    #[arg(long, default_value_t = 0.0)]
    pub fiber_alpha_min: f64,
    #[command(flatten)]
    pub meson: MesonArgs,
    /// Counts CSV; stdout if omitted.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct MaximizeArgs {
    #[arg(long, value_enum)]
    pub system: ScanSystem,
    #[command(flatten)]
    pub meson: MesonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RerunArgs {
    #[arg(long)]
    pub manifest: String,
    /// Write to this path instead of the one recorded in the manifest.
    #[arg(long)]
    pub out: Option<String>,
}
