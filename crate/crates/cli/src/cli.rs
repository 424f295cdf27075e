//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "normgrid", version, about = "Sampling discretization of L_q norms: constructions and certificates")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for exactness and threshold decisions.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Output directory; reports go to stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, env = "NORMGRID_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Reference-grid oversampling factor.
    #[arg(long, global = true, default_value_t = 2)]
    pub oversample: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl OutputFormat {
    pub fn name(self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frequency sets.
    #[command(subcommand)]
    Spaces(SpacesCmd),
    /// Exact and positive cubature, recovery operators.
    #[command(subcommand)]
    Exact(ExactCmd),
    /// Greedy constructions of exact and equal-weight rules.
    #[command(subcommand)]
    Greedy(GreedyCmd),
    /// Random sampling and subset selection.
    #[command(subcommand)]
    Random(RandomCmd),
    /// Certificates of discretization constants.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Point sets for hyperbolic-cross polynomials.
    #[command(subcommand)]
    Hypercross(HypercrossCmd),
    /// Universal discretization, dispersion and nets.
    #[command(subcommand)]
    Universal(UniversalCmd),
    /// Sidon sets, lacunary systems and witness constructions.
    #[command(subcommand)]
    Extremal(ExtremalCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FreqKindArg {
    Box,
    Hyperbolic,
    Dyadic,
}

#[derive(Debug, Subcommand)]
pub enum SpacesCmd {
    /// Writes `freqset.json`.
    Build {
        #[arg(long, value_enum)]
        kind: FreqKindArg,
        /// Degrees `N_j` (box), `N` (hyperbolic) or `s_j` (dyadic), comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        /// Dimension of a hyperbolic cross.
        #[arg(long, default_value_t = 1)]
        d: usize,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SpaceArg {
    /// box:N1,..|hyperbolic:N:d|dyadic:s1,..|trig:N:sincos|trig:N:cosine|freqset:PATH|monomial:N:q
    #[arg(long)]
    pub space: String,
}

#[derive(Debug, Clone, Args)]
pub struct CandidateArg {
    /// Candidate grid with this many points per axis (default: 16x the Nyquist grid).
    #[arg(long)]
    pub grid: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StableP {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "inf")]
    Inf,
}

#[derive(Debug, Subcommand)]
pub enum ExactCmd {
    /// Nodes by determinant greedy and weights matching the moments.
    Cubature {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        cand: CandidateArg,
    },
    /// Exact weighted rule for `f^q`, `q` even.
    Lift {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        q: u32,
        #[command(flatten)]
        cand: CandidateArg,
    },
    /// Positive rule with at most N nodes matching all moments.
    Tchakaloff {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        cand: CandidateArg,
        /// Add the constant function and return a probability rule.
        #[arg(long)]
        probability: bool,
        /// Positive exact rule for `f^q` (`q` even) instead of the space itself.
        #[arg(long)]
        q: Option<u32>,
    },
    /// Exact weights on a given set with a controlled stability norm.
    Stable {
        #[command(flatten)]
        space: SpaceArg,
        /// Point set W (grid, grid:G, random:M or a points.json path).
        #[arg(long)]
        points: String,
        #[arg(long, value_enum, default_value_t = StableP::Two)]
        p: StableP,
    },
    /// Dual basis reconstructing every f in the space from its node values.
    Recover {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        points: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum GreedyCmd {
    /// Orthogonal greedy: exact L2 rule.
    Oga {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        cand: CandidateArg,
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Relaxed greedy: equal weights 1/m.
    Rga {
        #[command(flatten)]
        space: SpaceArg,
        #[command(flatten)]
        cand: CandidateArg,
        #[arg(long)]
        m: usize,
        /// Condition E constant (default: the system's own).
        #[arg(long)]
        t: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleModeArg {
    Random,
    Grid,
}

#[derive(Debug, Clone, Args)]
pub struct Threshold {
    /// Exit with code 2 unless the rule is in M(m, q, eps).
    #[arg(long)]
    pub eps: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum RandomCmd {
    /// Sample size from the matrix Chernoff bound.
    Plan {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        delta: f64,
    },
    /// Draws m points and certifies them.
    Sample {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = SampleModeArg::Random)]
        mode: SampleModeArg,
        /// 1 or 2.
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[command(flatten)]
        threshold: Threshold,
    },
    /// Best m-subset of a finite domain over seeded trials.
    Subset {
        #[command(flatten)]
        space: SpaceArg,
        /// Domain (grid, grid:G, random:M or a points.json path).
        #[arg(long)]
        domain: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[command(flatten)]
        threshold: Threshold,
    },
    /// Finite Monte-Carlo domain matching all product integrals to delta/N.
    Domain {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        delta: f64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct RuleArgs {
    #[command(flatten)]
    pub space: SpaceArg,
    /// grid, grid:G, random:M or a points.json path (weights used when present).
    #[arg(long)]
    pub points: String,
    #[command(flatten)]
    pub threshold: Threshold,
}

#[derive(Debug, Subcommand)]
pub enum CertifyCmd {
    /// Probe-based one-sided L1 certificate.
    L1 {
        #[command(flatten)]
        rule: RuleArgs,
        #[arg(long, default_value_t = 200)]
        budget: usize,
    },
    /// Exact L2 certificate from the Gram matrix.
    L2 {
        #[command(flatten)]
        rule: RuleArgs,
    },
    /// L-infinity ratio by linear programming over a reference grid.
    Linf {
        #[command(flatten)]
        rule: RuleArgs,
    },
    /// Remez-type check: sup over the grid minus a random set B.
    Remez {
        #[command(flatten)]
        space: SpaceArg,
        /// Measure of the excluded set B, in [0, 1).
        #[arg(long)]
        measure: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1.0)]
        c2: f64,
    },
    /// Empirical Bernstein constant on the hyperbolic cross.
    Bernstein {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyModeArg {
    Lp,
    Probe,
}

#[derive(Debug, Subcommand)]
pub enum HypercrossCmd {
    /// Builds W(N, d).
    Build {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        c0: f64,
        /// W(N,1) has factor·N points.
        #[arg(long, default_value_t = 4.0)]
        base_factor: f64,
    },
    /// Estimates C(d) with sup ≤ C(d)·max over W, for each seed in turn.
    Verify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: usize,
        /// points.json of W; built with default parameters when absent.
        #[arg(long)]
        points: Option<String>,
        #[arg(long, value_enum, default_value_t = VerifyModeArg::Probe)]
        mode: VerifyModeArg,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Number of seeds `seed, seed+1, …` to run.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        /// Exit with code 2 if the estimate exceeds this.
        #[arg(long)]
        max_c: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QArg {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "inf")]
    Inf,
}

#[derive(Debug, Subcommand)]
pub enum UniversalCmd {
    /// Largest empty axis-parallel box.
    Dispersion {
        /// points.json in the cube frame (torus points are rescaled).
        #[arg(long)]
        points: String,
        /// Also check disp(T) ≤ C·2^{-n} for this n.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Verifies (or builds and verifies) a (t, r, d)-net in base 2.
    Net {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 0)]
        t: u32,
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Net to verify; a Hammersley net is built when absent.
        #[arg(long)]
        points: Option<String>,
        /// Also sweep c = 0..=c_max and report worst-member ratios over C(r−c, d).
        #[arg(long)]
        c_max: Option<u32>,
        /// Largest worst-member ratio accepted in the sweep.
        #[arg(long, default_value_t = f64::INFINITY)]
        max_ratio: f64,
    },
    /// Certifies a point set for every member of C(n, d).
    Collection {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: usize,
        /// grid (side 2^{n+1}), random:M or a points.json path.
        #[arg(long)]
        points: String,
        #[arg(long, value_enum, default_value_t = QArg::Two)]
        q: QArg,
        #[arg(long, default_value_t = 100)]
        probes: usize,
        #[command(flatten)]
        threshold: Threshold,
    },
    /// Random points for all v-sparse subspaces of T(Π_n).
    Sparse {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = QArg::Two)]
        q: QArg,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        probes: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Uniform,
    Random,
    Dense,
}

#[derive(Debug, Clone, Args)]
pub struct ConditionLArgs {
    /// Number of blocks.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 2.0)]
    pub b: f64,
    #[arg(long, default_value_t = 0)]
    pub nu: u64,
    #[arg(long = "big-k", default_value_t = 1.0)]
    pub big_k: f64,
}

#[derive(Debug, Subcommand)]
pub enum ExtremalCmd {
    /// Quadratic Sidon-type set Q with Q − Q ⊇ [−N², N²].
    Sidon {
        #[arg(long)]
        n: u32,
        /// Also verify coverage for every N' ≤ this.
        #[arg(long)]
        verify_up_to: Option<u32>,
    },
    /// Fixed-set L-infinity ratios for lacunary frequencies.
    Lacunary {
        #[command(flatten)]
        cond: ConditionLArgs,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "uniform,random")]
        families: Vec<FamilyArg>,
        /// Points of the dense family.
        #[arg(long)]
        dense_m: Option<usize>,
    },
    /// Small-ball ratio Σ‖p_j‖₁ / ‖f‖_∞ for block polynomials.
    Smallball {
        #[command(flatten)]
        cond: ConditionLArgs,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Uniform measure on M points whose unique exact rule is uniform.
    Witness {
        /// Number of variables N.
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        q: u32,
    },
}
