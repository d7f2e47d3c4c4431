//! Rate evaluators for links in tandem, power allocation over parallel
//! Gaussian channels, and the Middleton Class-A impulse-noise model.
//!
//! Tandem and sharing rates are computed in nats per second and converted
//! through [`Unit`]; the appendix-style evaluators work in bits.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::erf::erfc;

use crate::entropy::h2;
use crate::error::{bad, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Unit {
    Nats,
    Bits,
}

impl Unit {
    /// Converts a value in nats to this unit.
    pub fn from_nats(self, x: f64) -> f64 {
        match self {
            Unit::Nats => x,
            Unit::Bits => x / std::f64::consts::LN_2,
        }
    }
}

/// Standard normal tail `Q(x) = erfc(x / sqrt 2) / 2`.
pub fn q_function(x: f64) -> f64 {
    0.5 * erfc(x / std::f64::consts::SQRT_2)
}

/// The bound `Q(x) ~ exp(-x^2 / 2)`.
pub fn q_approx(x: f64) -> f64 {
    (-x * x / 2.0).exp()
}

/// `Q^{-1}(p)` for `0 < p < 1`.
pub fn q_inverse(p: f64) -> f64 {
    -Normal::standard().inverse_cdf(p)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

// --------------------------------------------------------------- tandem

/// Error probability after `links` hops of amplitude attenuation `f` each,
/// `Q(sqrt(Eb/N0 f^{2L}))`, or its exponential approximation.
pub fn tandem_error(ebn0: f64, f: f64, links: u32, approx: bool) -> f64 {
    let a = (ebn0 * f.powi(2 * links as i32)).sqrt();
    if approx {
        q_approx(a)
    } else {
        q_function(a)
    }
}

/// `C = 1 - h(P_e)` bits per transmission.
pub fn link_capacity(pe: f64) -> f64 {
    1.0 - h2(pe)
}

/// Capacities `C(d), C(2d), ..., C(Ld)` when a single link has error rate `pe`
/// and each hop multiplies the power by `f2`.
pub fn capacities_from_link_error(pe: f64, f2: f64, links: u32) -> Vec<f64> {
    let ebn0_f2 = q_inverse(pe).powi(2);
    (1..=links).map(|i| link_capacity(q_function((ebn0_f2 * f2.powi(i as i32 - 1)).sqrt()))).collect()
}

/// Capacities `C(i d)` for `links` equal hops over distance `distance` with
/// attenuation `delta` dB per unit length, `f^2 = 10^{-delta d / 10}`.
pub fn capacities_from_attenuation(snr_db: f64, delta: f64, distance: f64, links: u32) -> Vec<f64> {
    let ebn0 = db_to_linear(snr_db);
    let d = distance / links as f64;
    let f2 = db_to_linear(-delta * d);
    (1..=links).map(|i| link_capacity(q_function((ebn0 * f2.powi(i as i32)).sqrt()))).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoopAllocation {
    pub lengths: Vec<f64>,
    pub c_coop: f64,
    pub c_df: f64,
}

/// Solves `sum_{j<=i} C((i-j+1)d) n_j = k` for every receiver `i` by forward
/// substitution.
pub fn coop_allocate(k: f64, caps: &[f64]) -> Result<CoopAllocation> {
    let Some(&c1) = caps.first() else {
        return Err(Error::InfeasibleCapacity("no links".into()));
    };
    if c1 <= 0.0 {
        return Err(Error::InfeasibleCapacity(format!("C(d) = {c1}")));
    }
    if caps.windows(2).any(|w| w[1] > w[0]) || caps.iter().any(|&c| !(0.0..=1.0).contains(&c)) {
        return Err(Error::InfeasibleCapacity("capacities must lie in [0,1] and not increase".into()));
    }
    let mut n: Vec<f64> = Vec::with_capacity(caps.len());
    for i in 0..caps.len() {
        let heard: f64 = (0..i).map(|j| caps[i - j] * n[j]).sum();
        n.push((k - heard) / c1);
    }
    let total: f64 = n.iter().sum();
    Ok(CoopAllocation { c_coop: k / total, c_df: c1 / caps.len() as f64, lengths: n })
}

/// `C(d) / (2 - C(2d)/C(d))`.
pub fn coop_two_links(c1: f64, c2: f64) -> f64 {
    c1 / (2.0 - c2 / c1)
}

/// Plain repetition through one repeater, `k / 2n`.
pub fn repeat_rate(k: f64, n: f64) -> f64 {
    k / (2.0 * n)
}

/// RS incremental redundancy through one repeater for design error fractions
/// `t1 < t2 < 1/2`.
pub fn rs_repeat_rate(k: f64, n: f64, t1: f64, t2: f64) -> f64 {
    k / (n + n * (2.0 * t2 - 2.0 * t1) / (1.0 - 2.0 * t1))
}

// -------------------------------------------------------- rate sharing

/// One transmitter, two receivers at one and two hops.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TandemLink {
    /// Noise spectral density sigma^2.
    pub sigma2: f64,
    pub bandwidth: f64,
    pub power: f64,
    /// Amplitude attenuation per hop.
    pub f: f64,
    pub unit: Unit,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl TandemLink {
    fn snr(&self, hops: i32) -> f64 {
        self.power * self.f.powi(2 * hops) / (2.0 * self.sigma2 * self.bandwidth)
    }

    fn pair(&self, r1: f64, r2: f64) -> RatePair {
        RatePair { r1: self.unit.from_nats(r1), r2: self.unit.from_nats(r2) }
    }

    /// Single-receiver capacity after `hops` hops at full power, nats/s.
    fn full(&self, hops: i32) -> f64 {
        self.bandwidth * (1.0 + self.snr(hops)).ln()
    }

    /// Time sharing with fraction `alpha` for the first receiver.
    pub fn time_sharing(&self, alpha: f64) -> RatePair {
        self.pair(alpha * self.full(1), (1.0 - alpha) * self.full(2))
    }

    /// Frequency sharing: band fraction `alpha` and power `p1` to the first
    /// receiver, the rest to the second; noise scales with the band share.
    pub fn frequency_sharing(&self, alpha: f64, p1: f64) -> RatePair {
        let beta = 1.0 - alpha;
        let p2 = self.power - p1;
        let b = self.bandwidth;
        let s = self.sigma2;
        let r1 = if alpha > 0.0 { alpha * b * (1.0 + p1 * self.f.powi(2) / (2.0 * alpha * s * b)).ln() } else { 0.0 };
        let r2 = if beta > 0.0 { beta * b * (1.0 + p2 * self.f.powi(4) / (2.0 * beta * s * b)).ln() } else { 0.0 };
        self.pair(r1, r2)
    }

    /// Frequency sharing with the sum-rate maximising power split.
    pub fn frequency_sharing_waterfill(&self, alpha: f64) -> Result<RatePair> {
        let b = self.bandwidth;
        let noise = [self.sigma2 / self.f.powi(2), self.sigma2 / self.f.powi(4)];
        let powers = waterfill_n(self.power, &[alpha * b, (1.0 - alpha) * b], &noise)?;
        Ok(self.frequency_sharing(alpha, powers[0]))
    }

    /// The first receiver decodes and repeats for the second.
    pub fn repeat(&self, alpha: f64) -> RatePair {
        let c1 = self.full(1);
        self.pair(alpha * c1, alpha / 2.0 * c1)
    }

    /// Repetition improved by cooperative coding.
    pub fn repeat_improved(&self, alpha: f64) -> RatePair {
        let (c1, c2) = (self.full(1), self.full(2));
        self.pair(alpha * c1, (1.0 - alpha) * coop_two_links(c1, c2))
    }

    /// `P / (sigma^2 B) > (1 - 2 f^2) / f^6`: repetition loses to time sharing.
    pub fn repeat_worse_than_time_sharing(&self) -> bool {
        let f2 = self.f * self.f;
        self.power / (self.sigma2 * self.bandwidth) > (1.0 - 2.0 * f2) / f2.powi(3)
    }

    /// Degraded Gaussian broadcast with power fraction `gamma` for the near receiver.
    pub fn broadcast(&self, gamma: f64) -> RatePair {
        let b = self.bandwidth;
        let n0 = 2.0 * self.sigma2 * b;
        let pf4 = self.power * self.f.powi(4);
        let r1 = b * (1.0 + gamma * self.power * self.f.powi(2) / n0).ln();
        let r2 = b * (1.0 + (1.0 - gamma) * pf4 / (n0 + gamma * pf4)).ln();
        self.pair(r1, r2)
    }

    /// Broadcast to receivers at 1, 2, ... hops with power fractions `alphas`;
    /// receiver i sees the signals meant for the nearer receivers as noise.
    pub fn broadcast_multi(&self, alphas: &[f64]) -> Result<Vec<f64>> {
        if alphas.iter().any(|&a| a < 0.0) || (alphas.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::BadDistribution(format!("{alphas:?}")));
        }
        let b = self.bandwidth;
        let n0 = 2.0 * self.sigma2 * b;
        let mut out = Vec::with_capacity(alphas.len());
        let mut nearer = 0.0;
        for (i, &a) in alphas.iter().enumerate() {
            let gain = self.power * self.f.powi(2 * (i as i32 + 1));
            out.push(self.unit.from_nats(b * (1.0 + a * gain / (n0 + nearer * gain)).ln()));
            nearer += a;
        }
        Ok(out)
    }

    /// Two transmitters at one and two hops from a receiver; power split
    /// `delta` to the near one, successive decoding of the far one first.
    pub fn multiple_access(&self, delta: f64) -> RatePair {
        let b = self.bandwidth;
        let n0 = 2.0 * self.sigma2 * b;
        let r1 = b * (1.0 + delta * self.power * self.f.powi(2) / n0).ln();
        let pf4 = self.power * self.f.powi(4);
        let r2 = b * (1.0 + (1.0 - delta) * pf4 / (n0 + delta * pf4)).ln();
        self.pair(r1, r2)
    }
}

/// Degraded broadcast rates in bits per transmission: the strong receiver
/// (noise `sigma2`) gets power `alpha P`, the weak one (noise `gamma2`) the rest.
pub fn degraded_broadcast(alpha: f64, power: f64, sigma2: f64, gamma2: f64) -> (f64, f64) {
    let c1 = 0.5 * (1.0 + alpha * power / sigma2).log2();
    let c2 = 0.5 * (1.0 + (1.0 - alpha) * power / (alpha * power + gamma2)).log2();
    (c1, c2)
}

// --------------------------------------------------------- water-filling

/// Power split between a band share `alpha` with noise `gamma2` and the rest
/// with noise `sigma2`, equalising `P_i / (2 B_i) + noise_i`.
pub fn waterfill2(power: f64, bandwidth: f64, alpha: f64, gamma2: f64, sigma2: f64) -> (f64, f64) {
    let ab = 1.0 - alpha;
    let gap = 2.0 * bandwidth * (gamma2 - sigma2);
    if gap >= 0.0 && power < gap * ab {
        return (0.0, power);
    }
    if gap < 0.0 && power < -gap * alpha {
        return (power, 0.0);
    }
    (alpha * (power - gap * ab), ab * (power + gap * alpha))
}

/// Powers maximising `sum B_i log(1 + P_i / (2 B_i noise_i))` with `sum P_i = P`.
///
/// The active set is found by bisection on the water level and the level is
/// then recomputed exactly on that set.
pub fn waterfill_n(power: f64, bandwidths: &[f64], noise: &[f64]) -> Result<Vec<f64>> {
    if bandwidths.len() != noise.len() || bandwidths.is_empty() {
        return Err(bad("need equally many bandwidths and noise levels"));
    }
    if power < 0.0 || bandwidths.iter().any(|&b| b < 0.0) || noise.iter().any(|&s| s < 0.0) {
        return Err(bad("power, bandwidths and noise must be non-negative"));
    }
    let used = |level: f64| -> f64 { bandwidths.iter().zip(noise).map(|(&b, &s)| 2.0 * b * (level - s).max(0.0)).sum() };
    let mut lo = noise.iter().cloned().fold(f64::INFINITY, f64::min);
    let total_b: f64 = bandwidths.iter().sum();
    if total_b == 0.0 {
        return Err(bad("total bandwidth is zero"));
    }
    let mut hi = noise.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + power / (2.0 * total_b) + 1.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if used(mid) < power {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let level0 = 0.5 * (lo + hi);
    let mut active: Vec<bool> = noise.iter().zip(bandwidths).map(|(&s, &b)| s < level0 && b > 0.0).collect();
    let mut level = level0;
    loop {
        let wb: f64 = bandwidths.iter().zip(&active).filter(|x| *x.1).map(|x| 2.0 * x.0).sum();
        let wn: f64 = bandwidths.iter().zip(noise).zip(&active).filter(|x| *x.1).map(|((&b, &s), _)| 2.0 * b * s).sum();
        if wb == 0.0 {
            break;
        }
        level = (power + wn) / wb;
        let next: Vec<bool> = noise.iter().zip(bandwidths).map(|(&s, &b)| s < level && b > 0.0).collect();
        if next == active {
            break;
        }
        active = next;
    }
    Ok(bandwidths
        .iter()
        .zip(noise)
        .zip(&active)
        .map(|((&b, &s), &a)| if a { 2.0 * b * (level - s) } else { 0.0 })
        .collect())
}

/// `sum B_i log2(1 + P_i / (2 B_i noise_i))` bits per second.
pub fn parallel_capacity(powers: &[f64], bandwidths: &[f64], noise: &[f64]) -> f64 {
    powers
        .iter()
        .zip(bandwidths)
        .zip(noise)
        .filter(|((_, &b), _)| b > 0.0)
        .map(|((&p, &b), &s)| b * (1.0 + p / (2.0 * b * s)).log2())
        .sum()
}

// -------------------------------------------------------------- Middleton

/// Class-A impulse noise with impulse index `a`, strength ratio
/// `gamma = sigma_G^2 / sigma_I^2` and background variance `sigma_g2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Middleton {
    pub a: f64,
    pub gamma: f64,
    pub sigma_g2: f64,
    states: Vec<(f64, f64)>,
}

impl Middleton {
    pub fn new(a: f64, gamma: f64, sigma_g2: f64) -> Result<Self> {
        if a <= 0.0 || gamma <= 0.0 || sigma_g2 <= 0.0 {
            return Err(bad("A, Gamma and sigma_G^2 must be positive"));
        }
        let sigma_i2 = sigma_g2 / gamma;
        let mut states = Vec::new();
        let mut pm = (-a).exp();
        let mut cum = 0.0;
        let mut m = 0u32;
        while cum < 1.0 - 1e-12 {
            states.push((pm, sigma_i2 * m as f64 / a + sigma_g2));
            cum += pm;
            m += 1;
            pm *= a / m as f64;
            if m > 10_000 {
                return Err(bad("Poisson state sum does not converge"));
            }
        }
        Ok(Self { a, gamma, sigma_g2, states })
    }

    pub fn sigma_i2(&self) -> f64 {
        self.sigma_g2 / self.gamma
    }

    /// `(P_m, sigma_m^2)` for `m = 0..=state_cap`.
    pub fn states(&self) -> &[(f64, f64)] {
        &self.states
    }

    pub fn state_cap(&self) -> usize {
        self.states.len() - 1
    }

    /// Mean noise power `sigma_I^2 + sigma_G^2`.
    pub fn total_variance(&self) -> f64 {
        self.sigma_i2() + self.sigma_g2
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.states
            .iter()
            .map(|&(p, v)| p * (-x * x / (2.0 * v)).exp() / (2.0 * std::f64::consts::PI * v).sqrt())
            .sum()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random::<f64>() * self.states.iter().map(|s| s.0).sum::<f64>();
        let mut acc = 0.0;
        let mut var = self.states.last().unwrap().1;
        for &(p, v) in &self.states {
            acc += p;
            if u < acc {
                var = v;
                break;
            }
        }
        let z: f64 = StandardNormal.sample(rng);
        z * var.sqrt()
    }

    pub fn samples(&self, count: usize, seed: u64) -> Vec<f64> {
        let mut r = crate::sim::rng(seed);
        (0..count).map(|_| self.sample(&mut r)).collect()
    }

    /// `int_{-inf}^{inf} pdf` by composite Simpson on geometrically growing
    /// panels out to 40 standard deviations of the widest state.
    pub fn pdf_integral(&self) -> f64 {
        let smin = self.states.first().unwrap().1.sqrt();
        let smax = self.states.iter().map(|s| s.1).fold(0.0, f64::max).sqrt();
        let mut edges = vec![0.0, smin * 0.25];
        while *edges.last().unwrap() < 40.0 * smax {
            let e = *edges.last().unwrap();
            edges.push(e * 1.25);
        }
        let simpson = |a: f64, b: f64| {
            let n = 64;
            let h = (b - a) / n as f64;
            let mut s = self.pdf(a) + self.pdf(b);
            for i in 1..n {
                s += self.pdf(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            s * h / 3.0
        };
        2.0 * edges.windows(2).map(|w| simpson(w[0], w[1])).sum::<f64>()
    }
}

/// Whether the transmitter / receiver know the impulse state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StateInfo {
    /// Both informed.
    BothKnow,
    /// Receiver only.
    ReceiverKnows,
    /// Neither.
    NeitherKnows,
    /// Transmitter only; evaluated as the both-informed value, an upper bound.
    TransmitterKnows,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ImpulseCapacity {
    pub bits_per_s: f64,
    pub upper_bound: bool,
}

/// Capacity of the two-state impulse channel (Gaussian with probability
/// `1-a`, variance `sigma_g2 + sigma_i2 / a` with probability `a`).
pub fn impulse_capacity(case: StateInfo, a: f64, sigma_g2: f64, sigma_i2: f64, power: f64, bandwidth: f64) -> Result<ImpulseCapacity> {
    if !(0.0..1.0).contains(&a) || a == 0.0 || sigma_g2 <= 0.0 || sigma_i2 < 0.0 || power < 0.0 || bandwidth <= 0.0 {
        return Err(bad("need 0 < A < 1, sigma_G^2 > 0, sigma_I^2 >= 0, P >= 0, B > 0"));
    }
    let b = bandwidth;
    let s = power / (2.0 * b);
    let bad_var = sigma_g2 + sigma_i2 / a;
    let both = || {
        if s >= (1.0 - a) / a * sigma_i2 {
            b * ((s + sigma_g2 + sigma_i2) / sigma_g2).log2() + a * b * (sigma_g2 / bad_var).log2()
        } else {
            (1.0 - a) * b * ((s / (1.0 - a) + sigma_g2) / sigma_g2).log2()
        }
    };
    let (v, upper) = match case {
        StateInfo::BothKnow => (both(), false),
        StateInfo::TransmitterKnows => (both(), true),
        StateInfo::ReceiverKnows => (
            (1.0 - a) * b * ((s + sigma_g2) / sigma_g2).log2() + a * b * ((s + bad_var) / bad_var).log2(),
            false,
        ),
        StateInfo::NeitherKnows => (b * ((s + sigma_g2 + sigma_i2) / (sigma_g2 + sigma_i2)).log2(), false),
    };
    Ok(ImpulseCapacity { bits_per_s: v, upper_bound: upper })
}

/// `10 log10(sigma_G^2 / (sigma_G^2 + sigma_I^2))` dB.
pub fn state_information_gap_db(sigma_g2: f64, sigma_i2: f64) -> f64 {
    10.0 * (sigma_g2 / (sigma_g2 + sigma_i2)).log10()
}

/// `B log2(1 + P / (2 B sigma^2))`.
pub fn awgn_capacity(power: f64, bandwidth: f64, sigma2: f64) -> f64 {
    bandwidth * (1.0 + power / (2.0 * bandwidth * sigma2)).log2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unattenuated_links_do_not_degrade() {
        for l in 1..5 {
            assert_eq!(tandem_error(4.0, 1.0, l, false), tandem_error(4.0, 1.0, 1, false));
        }
        assert_eq!(link_capacity(0.5), 0.0);
    }

    #[test]
    fn two_link_example_capacities() {
        let c = capacities_from_link_error(1e-3, 0.1, 2);
        assert!((c[0] - 0.99).abs() < 0.01);
        assert!((c[1] - 0.36).abs() < 0.01);
    }

    #[test]
    fn coop_matches_closed_form() {
        let a = coop_allocate(1.0, &[0.8, 0.5]).unwrap();
        assert!((a.c_coop - coop_two_links(0.8, 0.5)).abs() < 1e-12);
        let flat = coop_allocate(1.0, &[0.7, 0.7, 0.7]).unwrap();
        assert!(flat.lengths[1].abs() < 1e-12 && flat.lengths[2].abs() < 1e-12);
        assert!((flat.c_coop - 0.7).abs() < 1e-12);
        assert!(coop_allocate(1.0, &[0.0, 0.0]).is_err());
    }

    #[test]
    fn symmetric_waterfill() {
        let (p1, p2) = waterfill2(10.0, 3.0, 0.3, 0.5, 0.5);
        assert!((p1 - 3.0).abs() < 1e-12 && (p2 - 7.0).abs() < 1e-12);
        assert_eq!(waterfill2(1.0, 1.0, 0.5, 3.0, 1.0), (0.0, 1.0));
    }

    #[test]
    fn broadcast_endpoint_is_time_sharing_endpoint() {
        let link = TandemLink { sigma2: 1e-8, bandwidth: 1e5, power: 25.0, f: 0.3, unit: Unit::Nats };
        let bc = link.broadcast(1.0);
        let ts = link.time_sharing(1.0);
        assert!((bc.r1 - ts.r1).abs() < 1e-9 && bc.r2.abs() < 1e-12);
        let bc0 = link.broadcast(0.0);
        let ts0 = link.time_sharing(0.0);
        assert!((bc0.r2 - ts0.r2).abs() < 1e-9);
    }

    #[test]
    fn table_four_states() {
        let m = Middleton::new(0.01, 0.01, 1.0).unwrap();
        let s = m.states();
        assert!((s[0].0 - 0.99).abs() < 0.005 && (s[1].0 - 0.01).abs() < 0.0005 && (s[2].0 - 5.0e-5).abs() < 1e-6);
        assert_eq!(s[1].1, 1e4 + 1.0);
        assert_eq!(s[2].1, 2e4 + 1.0);
    }

    #[test]
    fn impulse_free_cases_collapse() {
        let awgn = awgn_capacity(2.0, 1.0, 0.5);
        for case in [StateInfo::BothKnow, StateInfo::ReceiverKnows, StateInfo::NeitherKnows, StateInfo::TransmitterKnows] {
            let c = impulse_capacity(case, 0.1, 0.5, 0.0, 2.0, 1.0).unwrap();
            assert!((c.bits_per_s - awgn).abs() < 1e-12, "{case:?}");
        }
    }
}
