//! Command-line front end: argument definitions, command runners and the
//! exit-code mapping. `main.rs` only parses and prints.

use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use vfive::approx_direct::{direct_search_with, DirectConfig, DirectError};
use vfive::approx_rand::{approx_rz, approx_unitary, RandError};
use vfive::bench::{run_bench, BenchMode, BenchSpec};
use vfive::exact::{exact_synthesize_quaternion, is_exactly_representable, ExactError};
use vfive::geomlab::{
    count_segment_projections, conjecture_row, ks_uniformity, projection_angles, GeomError,
    Population, RingSpec, SegmentSpec,
};
use vfive::ladder::{simulate_ladder, v_gate_cost, CostModel, LadderConfig, ReusePolicy};
use vfive::numth::NumthError;
use vfive::{parse_circuit, trace_distance, ApproxResult, LipschitzQuaternion, UnitVector4};

/// First line of every CSV report.
pub const REPORT_HEADER: &str = "# vfive-report v1";

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_SEARCH: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "vfive", version, about = "Single-qubit synthesis over the V basis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact synthesis of a quaternion whose norm is a power of 5.
    ExactSynth {
        /// Integer components `a,b,c,d`.
        #[arg(long, allow_hyphen_values = true)]
        quaternion: LipschitzQuaternion,
    },
    /// Approximate a Z rotation or a general unitary.
    Approx(ApproxArgs),
    /// Batch run over Haar-random targets; CSV on stdout.
    Bench(BenchArgs),
    /// Lattice-point experiments on rings `(√N - Δ)² < x² + y² < N`.
    Conjecture {
        #[command(subcommand)]
        kind: ConjectureCmd,
    },
    /// Magic-state ladder simulation and V-gate cost model.
    Ladder {
        #[command(subcommand)]
        kind: LadderCmd,
    },
}

#[derive(Args, Debug)]
pub struct ApproxArgs {
    /// Rotation angle of `Rz(θ)`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "target", required_unless_present = "target")]
    pub rz: Option<f64>,
    /// Unit vector `α,β,γ,δ` for `αI + iβX + iγY + iδZ`.
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<UnitVector4>,
    #[arg(long)]
    pub eps: f64,
    #[arg(long, value_enum, default_value_t = Method::Rand)]
    pub method: Method,
    /// RNG seed for the randomized search; drawn from entropy when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Rand,
    Direct,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Mode::Ds)]
    pub mode: Mode,
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    /// Comma-separated precisions.
    #[arg(long, value_parser = parse_eps_list, default_value = "1e-3")]
    pub eps: EpsList,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Ra,
    Ds,
    Exact,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EpsList(pub Vec<f64>);

#[derive(Args, Debug, Clone, Copy)]
pub struct RingArgs {
    #[arg(long, default_value_t = 5)]
    pub p: u64,
    /// Exponent `L` of `N = p^L`.
    #[arg(long)]
    pub level: Option<u32>,
    #[arg(long, default_value_t = 4.0)]
    pub delta: f64,
}

#[derive(Subcommand, Debug)]
pub enum ConjectureCmd {
    /// Ring counts and the KS test on projection angles.
    Ring {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = Pop::Ring)]
        population: Pop,
    },
    /// Counts restricted to the segment cut off by a tangent line.
    Segment {
        #[command(flatten)]
        ring: RingArgs,
        /// Direction of the tangent point, in radians.
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        tangent: f64,
    },
    /// KS uniformity test on projection angles, or on explicit `--angles`.
    Ks {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, value_enum, default_value_t = Pop::Ring)]
        population: Pop,
        #[arg(long, value_parser = parse_eps_list, allow_hyphen_values = true)]
        angles: Option<EpsList>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pop {
    Ring,
    Disk,
}

#[derive(Subcommand, Debug)]
pub enum LadderCmd {
    /// Monte Carlo of the |H_i⟩ ladder.
    Simulate {
        #[arg(long, default_value_t = 1)]
        target_level: u32,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = PolicyArg::Discard)]
        policy: PolicyArg,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Expected |H_0⟩ cost of one V gate; JSON on stdout.
    Cost {
        #[arg(long, default_value_t = 4.35)]
        c_h2: f64,
        #[arg(long, default_value_t = 1.0)]
        t_cost: f64,
        #[arg(long, default_value_t = 0.5)]
        success_prob: f64,
        #[arg(long, default_value_t = 2)]
        attempts: u32,
        #[arg(long, default_value_t = 0.0)]
        backoff_cost: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Discard,
    Reuse,
    Both,
}

/// Error with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<RandError> for CliError {
    fn from(e: RandError) -> Self {
        let code = match e {
            RandError::WindowExhausted { .. } => EXIT_SEARCH,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<DirectError> for CliError {
    fn from(e: DirectError) -> Self {
        let code = match e {
            DirectError::BadPrecision(_) => EXIT_INPUT,
            DirectError::SearchExhausted { .. } => EXIT_SEARCH,
            DirectError::TableCapExceeded { .. } => EXIT_BUDGET,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        let code = match e {
            GeomError::BudgetExceeded
            | GeomError::Numth(NumthError::FactorizationTimeout | NumthError::CapExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError {
            code: 1,
            message: e.to_string(),
        }
    }
}

/// `"1e-3,1e-4"` to a list of finite numbers.
pub fn parse_eps_list(text: &str) -> Result<EpsList, String> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let v = f64::from_str(part.trim()).map_err(|e| format!("{part:?}: {e}"))?;
        if !v.is_finite() {
            return Err(format!("{part:?} is not finite"));
        }
        out.push(v);
    }
    Ok(EpsList(out))
}

fn entropy_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

/// Runs a parsed command, writing its report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::ExactSynth { quaternion } => exact_synth(&quaternion, out),
        Command::Approx(args) => approx(&args, out),
        Command::Bench(args) => bench(&args, out),
        Command::Conjecture { kind } => conjecture(&kind, out),
        Command::Ladder { kind } => ladder(&kind, out),
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError {
        code: 1,
        message: e.to_string(),
    }
}

fn exact_synth(q: &LipschitzQuaternion, out: &mut dyn Write) -> Result<(), CliError> {
    let circuit = exact_synthesize_quaternion(q)?;
    let level = is_exactly_representable(q).unwrap_or(0);
    let text = circuit.to_string();
    let body = json!({ "circuit": text, "v_count": circuit.v_count(), "level": level });
    writeln!(out, "{text}\n{body}").map_err(io)
}

fn approx(args: &ApproxArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let target = match (args.rz, args.target) {
        (Some(theta), _) if theta.is_finite() => UnitVector4::rz(theta),
        (Some(_), _) => return Err(CliError::input("angle must be finite")),
        (None, Some(t)) => t,
        (None, None) => return Err(CliError::input("one of --rz or --target is required")),
    };
    let result: ApproxResult = match args.method {
        Method::Rand => {
            let seed = entropy_seed(args.seed);
            match args.rz {
                Some(theta) => approx_rz(theta, args.eps, seed)?,
                None => approx_unitary(&target, args.eps, seed)?,
            }
        }
        Method::Direct => direct_search_with(&target, args.eps, &DirectConfig::from_env())?,
    };
    // Recompute the distance from the text that is about to be printed.
    let text = result.circuit.to_string();
    let reparsed = parse_circuit(&text).map_err(|e| CliError::input(e.to_string()))?;
    let distance = trace_distance(&reparsed.evaluate(), &target);
    if !(distance < args.eps) {
        return Err(CliError {
            code: EXIT_SEARCH,
            message: format!("verified distance {distance} is not below {}", args.eps),
        });
    }
    let mut body = result.to_json();
    body["distance"] = json!(distance);
    writeln!(out, "{body}").map_err(io)
}

fn bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.count == 0 {
        return Err(CliError::input("--count must be at least 1"));
    }
    if let Some(e) = args.eps.0.iter().find(|e| !(**e > 0.0 && **e < 1.0)) {
        return Err(CliError::input(format!("precision {e} must lie in (0, 1)")));
    }
    let seed = entropy_seed(args.seed);
    let spec = BenchSpec {
        count: args.count,
        eps_list: args.eps.0.clone(),
        seed,
        mode: match args.mode {
            Mode::Ra => BenchMode::Ra,
            Mode::Ds => BenchMode::Ds,
            Mode::Exact => BenchMode::ExactRoundtrip,
        },
    };
    let rows = run_bench(&spec);
    writeln!(out, "{REPORT_HEADER}\n# seed {seed}").map_err(io)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["eps", "method", "median_vc", "mean_vc", "worst_vc", "mean_dist", "failures"])?;
    for r in rows {
        w.write_record([
            r.eps.to_string(),
            r.method.to_string(),
            r.median_vc.to_string(),
            r.mean_vc.to_string(),
            r.worst_vc.to_string(),
            r.mean_dist.to_string(),
            r.failures.to_string(),
        ])?;
    }
    w.flush().map_err(io)
}

fn ring_spec(r: &RingArgs) -> Result<RingSpec, CliError> {
    let level = r.level.ok_or_else(|| CliError::input("--level is required"))?;
    Ok(RingSpec::new(r.p, level, r.delta)?)
}

fn population(p: Pop) -> Population {
    match p {
        Pop::Ring => Population::Ring,
        Pop::Disk => Population::Disk,
    }
}

fn conjecture(kind: &ConjectureCmd, out: &mut dyn Write) -> Result<(), CliError> {
    let (head, row): (&[&str], Vec<String>) = match kind {
        ConjectureCmd::Ring { ring, population: pop } => {
            let r = conjecture_row(&ring_spec(ring)?, population(*pop))?;
            (
                &["p", "L", "Delta", "grid_points", "projection_points", "ratio", "ks_D", "ks_p"],
                vec![
                    r.p.to_string(),
                    r.level.to_string(),
                    r.delta.to_string(),
                    r.grid_points.to_string(),
                    r.projection_points.to_string(),
                    r.ratio.to_string(),
                    r.ks_d.to_string(),
                    r.ks_p.to_string(),
                ],
            )
        }
        ConjectureCmd::Segment { ring, tangent } => {
            let spec = SegmentSpec {
                ring: ring_spec(ring)?,
                tangent_angle: *tangent,
            };
            let c = count_segment_projections(&spec)?;
            (
                &["p", "L", "Delta", "tangent", "grid_points", "projection_points", "ratio"],
                vec![
                    spec.ring.p.to_string(),
                    spec.ring.level.to_string(),
                    spec.ring.delta.to_string(),
                    tangent.to_string(),
                    c.grid_points.to_string(),
                    c.projection_points.to_string(),
                    c.ratio().to_string(),
                ],
            )
        }
        ConjectureCmd::Ks { ring, population: pop, angles } => {
            let sample = match angles {
                Some(a) => a.0.clone(),
                None => projection_angles(&ring_spec(ring)?, population(*pop))?,
            };
            let ks = ks_uniformity(&sample)?;
            (
                &["n", "ks_D", "ks_p"],
                vec![sample.len().to_string(), ks.d.to_string(), ks.p_value.to_string()],
            )
        }
    };
    writeln!(out, "{REPORT_HEADER}").map_err(io)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(head)?;
    w.write_record(row)?;
    w.flush().map_err(io)
}

fn ladder(kind: &LadderCmd, out: &mut dyn Write) -> Result<(), CliError> {
    match *kind {
        LadderCmd::Simulate {
            target_level,
            trials,
            policy,
            seed,
        } => {
            if target_level == 0 || target_level > 10 {
                return Err(CliError::input("--target-level must lie in 1..=10"));
            }
            if trials == 0 {
                return Err(CliError::input("--trials must be at least 1"));
            }
            let seed = entropy_seed(seed);
            let policies: &[ReusePolicy] = match policy {
                PolicyArg::Discard => &[ReusePolicy::DiscardOnDescent],
                PolicyArg::Reuse => &[ReusePolicy::ReuseReturnedH0],
                PolicyArg::Both => &[ReusePolicy::DiscardOnDescent, ReusePolicy::ReuseReturnedH0],
            };
            writeln!(out, "{REPORT_HEADER}\n# seed {seed}").map_err(io)?;
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["target_level", "policy", "trials", "mean", "median", "stderr"])?;
            for &p in policies {
                let s = simulate_ladder(&LadderConfig {
                    target_level,
                    trials,
                    seed,
                    reuse_policy: p,
                    ..LadderConfig::default()
                });
                w.write_record([
                    target_level.to_string(),
                    p.name().to_string(),
                    trials.to_string(),
                    s.mean_h0_cost.to_string(),
                    s.median_h0_cost.to_string(),
                    s.stderr.to_string(),
                ])?;
            }
            w.flush().map_err(io)
        }
        LadderCmd::Cost {
            c_h2,
            t_cost,
            success_prob,
            attempts,
            backoff_cost,
        } => {
            if !(success_prob > 0.0 && success_prob < 1.0) {
                return Err(CliError::input("--success-prob must lie in (0, 1)"));
            }
            if attempts == 0 {
                return Err(CliError::input("--attempts must be at least 1"));
            }
            if ![c_h2, t_cost, backoff_cost].iter().all(|v| v.is_finite()) {
                return Err(CliError::input("costs must be finite"));
            }
            let model = CostModel {
                c_h2,
                t_gate_cost: t_cost,
                success_prob,
                backoff_cost,
            };
            let c = v_gate_cost(&model, attempts);
            let per_attempt: Vec<_> = c
                .per_attempt
                .iter()
                .map(|a| {
                    json!({
                        "attempt": a.attempt,
                        "resource_cost": a.resource_cost,
                        "cumulative": a.cumulative,
                        "estimate": a.estimate,
                    })
                })
                .collect();
            let body = json!({
                "expected_h0": c.expected_h0,
                "expected_attempts": c.expected_attempts,
                "success_path_cost": c.success_path_cost,
                "failure_then_success_cost": c.failure_then_success_cost,
                "per_attempt": per_attempt,
            });
            writeln!(out, "{body}").map_err(io)
        }
    }
}
