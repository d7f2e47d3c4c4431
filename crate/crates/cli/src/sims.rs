//! `sim`, `eval` and `noise` subcommands.

use clap::{Args, Subcommand, ValueEnum};
use rscodes::biometrics::{far_frr_sim, FarFrrParams, Scheme};
use rscodes::capacity_models::{
    coop_allocate, impulse_capacity, parallel_capacity, waterfill_n, Middleton, RatePair, StateInfo, TandemLink, Unit,
};
use rscodes::modem_concat::{ber_sim, BerConfig, BerScheme};
use rscodes::random_access::{aloha_sim, array_access_sim, titlebaum_sim, xor_access_sim, ArrayAccessParams};
use rscodes::sim::{trial_seed, SimReport};
use rscodes::wiretap::{wiretap_sim, WiretapScheme, WiretapSimParams};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::output::{num, Output};
use crate::params::{load, load_with, parse_grid};
use crate::{config, CliResult, Global};

#[derive(Args, Debug)]
pub struct SimArgs {
    #[arg(value_enum)]
    kind: SimKind,
    /// Parameter swept over `--grid`; one report row per grid point.
    #[arg(long, requires = "grid")]
    sweep: Option<String>,
    /// Grid values `a,b,c` or `start:stop:step`.
    #[arg(long, requires = "sweep", allow_hyphen_values = true)]
    grid: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SimKind {
    Aloha,
    ArrayAccess,
    Titlebaum,
    XorAccess,
    Ber,
    Wiretap,
    FarFrr,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(default)]
struct AlohaParams {
    /// Users.
    t: u64,
    /// Per-slot transmit probability; replaced by `load / t` when `load` is set.
    p: f64,
    load: Option<f64>,
    slots: u64,
}

impl Default for AlohaParams {
    fn default() -> Self {
        Self { t: 10, p: 0.1, load: None, slots: 1_000_000 }
    }
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(default)]
struct ArrayParams {
    users: u64,
    channels: u64,
    n: usize,
    k: usize,
    row_len: usize,
    blocks: u64,
}

impl Default for ArrayParams {
    fn default() -> Self {
        Self { users: 10, channels: 20, n: 20, k: 10, row_len: 16, blocks: 1000 }
    }
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(default)]
struct TitlebaumParams {
    m: u32,
    t: usize,
    l: usize,
    trials: u64,
}

impl Default for TitlebaumParams {
    fn default() -> Self {
        Self { m: 16, t: 8, l: 8, trials: 100_000 }
    }
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(default)]
struct XorParams {
    m: u32,
    k: usize,
    active: usize,
    trials: u64,
}

impl Default for XorParams {
    fn default() -> Self {
        Self { m: 4, k: 7, active: 4, trials: 10_000 }
    }
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(default)]
struct BerParams {
    scheme: String,
    ebn0_db: f64,
    m: u32,
    n: usize,
    k: usize,
    block_rows: usize,
    frames: u64,
}

impl Default for BerParams {
    fn default() -> Self {
        let c = BerConfig::default();
        Self { scheme: "rs-spc-A".into(), ebn0_db: 4.0, m: c.m, n: c.n, k: c.k, block_rows: c.block_rows, frames: c.frames }
    }
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(default)]
struct WiretapParams {
    scheme: String,
    #[serde(flatten)]
    base: WiretapSimParams,
}

impl Default for WiretapParams {
    fn default() -> Self {
        Self { scheme: "rs-noisy".into(), base: WiretapSimParams::default() }
    }
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(default)]
struct FarFrrCliParams {
    scheme: String,
    #[serde(flatten)]
    base: FarFrrParams,
}

impl Default for FarFrrCliParams {
    fn default() -> Self {
        Self { scheme: "jw".into(), base: FarFrrParams::default() }
    }
}

fn run_one(kind: SimKind, g: &Global, extra: &[(String, Value)], seed: u64) -> CliResult<SimReport> {
    Ok(match kind {
        SimKind::Aloha => {
            let p: AlohaParams = load_with(g, AlohaParams::default(), extra)?;
            let prob = p.load.map_or(p.p, |l| l / p.t as f64);
            let mut r = aloha_sim(p.t, prob, p.slots, seed)?;
            if let Some(l) = p.load {
                r = r.param("load", l);
            }
            r
        }
        SimKind::ArrayAccess => {
            let p: ArrayParams = load_with(g, ArrayParams::default(), extra)?;
            let prm = ArrayAccessParams { users: p.users, channels: p.channels, n: p.n, k: p.k, row_len: p.row_len, blocks: p.blocks };
            array_access_sim(&prm, seed)?
        }
        SimKind::Titlebaum => {
            let p: TitlebaumParams = load_with(g, TitlebaumParams::default(), extra)?;
            titlebaum_sim(p.m, p.t, p.l, p.trials, seed)?
        }
        SimKind::XorAccess => {
            let p: XorParams = load_with(g, XorParams::default(), extra)?;
            xor_access_sim(p.m, p.k, p.active, p.trials, seed)?
        }
        SimKind::Ber => {
            let p: BerParams = load_with(g, BerParams::default(), extra)?;
            let Some(scheme) = BerScheme::parse(&p.scheme) else {
                return config(format!("unknown BER scheme `{}`", p.scheme));
            };
            let cfg = BerConfig { m: p.m, n: p.n, k: p.k, block_rows: p.block_rows, frames: p.frames };
            ber_sim(scheme, &cfg, p.ebn0_db, seed)?
        }
        SimKind::Wiretap => {
            let p: WiretapParams = load_with(g, WiretapParams::default(), extra)?;
            let Some(scheme) = WiretapScheme::parse(&p.scheme) else {
                return config(format!("unknown wiretap scheme `{}`", p.scheme));
            };
            wiretap_sim(scheme, &p.base, seed)?
        }
        SimKind::FarFrr => {
            let p: FarFrrCliParams = load_with(g, FarFrrCliParams::default(), extra)?;
            let Some(scheme) = Scheme::parse(&p.scheme) else {
                return config(format!("unknown vault scheme `{}`", p.scheme));
            };
            far_frr_sim(scheme, &p.base, seed)?
        }
    })
}

pub fn sim(args: SimArgs, g: &Global) -> CliResult<Output> {
    let reports = match (&args.sweep, &args.grid) {
        (Some(axis), Some(grid)) => {
            let grid = parse_grid(grid)?;
            grid.iter()
                .enumerate()
                .map(|(i, &x)| {
                    let r = run_one(args.kind, g, &[(axis.clone(), json!(x))], trial_seed(g.seed, i as u64))?;
                    Ok(r.param(&format!("sweep_{axis}"), x))
                })
                .collect::<CliResult<Vec<_>>>()?
        }
        _ => vec![run_one(args.kind, g, &[], g.seed)?],
    };
    Output::reports(&reports)
}

#[derive(Subcommand, Debug)]
pub enum EvalCmd {
    /// Rate and capacity evaluators.
    Capacity {
        #[arg(long, value_enum)]
        model: Model,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    /// Cooperative coding over receivers in tandem.
    Tandem,
    /// One transmitter, receivers at one and two hops.
    Broadcast,
    /// Two transmitters at one and two hops from one receiver.
    Mac,
    /// Two-state impulse-noise channel.
    Impulse,
    /// Water-filling over parallel Gaussian channels.
    Waterfill,
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(default)]
struct TandemParams {
    k: f64,
    /// Capacities at distances d, 2d, ...
    caps: Vec<f64>,
}

impl Default for TandemParams {
    fn default() -> Self {
        Self { k: 1.0, caps: vec![0.99, 0.36] }
    }
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(default)]
struct LinkParams {
    sigma2: f64,
    bandwidth: f64,
    power: f64,
    f: f64,
    /// `bits` or `nats`.
    unit: String,
    /// Time or band share of the near receiver.
    alpha: f64,
    /// Power share of the near receiver (broadcast) or transmitter (mac).
    gamma: f64,
}

impl Default for LinkParams {
    fn default() -> Self {
        Self { sigma2: 1e-8, bandwidth: 1e5, power: 25.0, f: 0.3, unit: "bits".into(), alpha: 0.5, gamma: 0.5 }
    }
}

impl LinkParams {
    fn link(&self) -> CliResult<TandemLink> {
        let unit = match self.unit.as_str() {
            "bits" => Unit::Bits,
            "nats" => Unit::Nats,
            u => return config(format!("unit must be bits or nats, got `{u}`")),
        };
        Ok(TandemLink { sigma2: self.sigma2, bandwidth: self.bandwidth, power: self.power, f: self.f, unit })
    }
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(default)]
struct ImpulseParams {
    a: f64,
    sigma_g2: f64,
    sigma_i2: f64,
    power: f64,
    bandwidth: f64,
}

impl Default for ImpulseParams {
    fn default() -> Self {
        Self { a: 0.1, sigma_g2: 1.0, sigma_i2: 10.0, power: 10.0, bandwidth: 1.0 }
    }
}

#[derive(Serialize, Deserialize, Debug)]
#[serde(default)]
struct WaterfillParams {
    power: f64,
    bandwidths: Vec<f64>,
    noise: Vec<f64>,
}

impl Default for WaterfillParams {
    fn default() -> Self {
        Self { power: 10.0, bandwidths: vec![1.0, 1.0], noise: vec![1.0, 2.0] }
    }
}

fn pair_rows(pairs: &[(&str, RatePair)]) -> Output {
    let rows = pairs.iter().map(|(s, p)| vec![s.to_string(), num(p.r1), num(p.r2)]).collect();
    let json = Value::Object(pairs.iter().map(|(s, p)| (s.to_string(), json!({ "r1": p.r1, "r2": p.r2 }))).collect());
    Output::new(json, &["scheme", "r1", "r2"], rows)
}

pub fn eval(cmd: EvalCmd, g: &Global) -> CliResult<Output> {
    let EvalCmd::Capacity { model } = cmd;
    match model {
        Model::Tandem => {
            let p: TandemParams = load(g)?;
            Output::from_serialize(&coop_allocate(p.k, &p.caps)?)
        }
        Model::Broadcast => {
            let p: LinkParams = load(g)?;
            let l = p.link()?;
            Ok(pair_rows(&[
                ("time-sharing", l.time_sharing(p.alpha)),
                ("frequency-sharing", l.frequency_sharing_waterfill(p.alpha)?),
                ("repeat", l.repeat(p.alpha)),
                ("repeat-improved", l.repeat_improved(p.alpha)),
                ("broadcast", l.broadcast(p.gamma)),
            ]))
        }
        Model::Mac => {
            let p: LinkParams = load(g)?;
            let l = p.link()?;
            Ok(pair_rows(&[("multiple-access", l.multiple_access(p.gamma))]))
        }
        Model::Impulse => {
            let p: ImpulseParams = load(g)?;
            let cases = [
                ("both-know", StateInfo::BothKnow),
                ("receiver-knows", StateInfo::ReceiverKnows),
                ("transmitter-knows", StateInfo::TransmitterKnows),
                ("neither-knows", StateInfo::NeitherKnows),
            ];
            let mut rows = Vec::new();
            let mut obj = serde_json::Map::new();
            for (name, case) in cases {
                let c = impulse_capacity(case, p.a, p.sigma_g2, p.sigma_i2, p.power, p.bandwidth)?;
                rows.push(vec![name.to_string(), num(c.bits_per_s), c.upper_bound.to_string()]);
                obj.insert(name.into(), json!({ "bits_per_s": c.bits_per_s, "upper_bound": c.upper_bound }));
            }
            Ok(Output::new(Value::Object(obj), &["state_information", "bits_per_s", "upper_bound"], rows))
        }
        Model::Waterfill => {
            let p: WaterfillParams = load(g)?;
            let powers = waterfill_n(p.power, &p.bandwidths, &p.noise)?;
            let cap = parallel_capacity(&powers, &p.bandwidths, &p.noise);
            let rows = powers.iter().enumerate().map(|(i, &x)| vec![i.to_string(), num(x)]).collect();
            Ok(Output::new(json!({ "powers": powers, "capacity": cap }), &["channel", "power"], rows))
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum NoiseCmd {
    /// Middleton Class-A samples.
    Middleton {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Impulsive index A.
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        /// Gaussian-to-impulsive power ratio.
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma_g2: f64,
    },
}

pub fn noise(cmd: NoiseCmd, g: &Global) -> CliResult<Output> {
    let NoiseCmd::Middleton { count, a, gamma, sigma_g2 } = cmd;
    let m = Middleton::new(a, gamma, sigma_g2)?;
    let xs = m.samples(count, g.seed);
    let n = xs.len().max(1) as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    let json = json!({
        "a": a, "gamma": gamma, "sigma_g2": sigma_g2, "seed": g.seed,
        "total_variance": m.total_variance(), "sample_mean": mean, "sample_variance": var,
        "samples": xs,
    });
    let rows = xs.iter().map(|&x| vec![num(x)]).collect();
    Ok(Output::new(json, &["sample"], rows))
}
