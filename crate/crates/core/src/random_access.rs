//! Random-access channels: slotted Aloha, feedback-free array access, OR and
//! XOR multiple-access rates, random and constructed signatures, and q-ary
//! superimposed codes.

use std::f64::consts::LN_2;

use rand::seq::index::sample;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::entropy::{binom, h2};
use crate::error::{bad, Error, Result};
use crate::galois::{FieldElement, FieldKind, GaloisField};
use crate::packet_codes::{encode_array, mk_decode, CodeArray, PacketBlock};
use crate::rs_core::{RsCode, Variant};
use crate::sim::{trial_rng, MeanAcc, Metric, Proportion, SimReport};

// ---------------------------------------------------------------- Aloha

/// Slotted-Aloha efficiency `pT(1-p)^{T-1}`.
pub fn aloha_eta(t: u64, p: f64) -> f64 {
    if t == 0 {
        return 0.0;
    }
    p * t as f64 * (1.0 - p).powf((t - 1) as f64)
}

/// Large-population limit `G e^{-G}`.
pub fn aloha_eta_limit(load: f64) -> f64 {
    load * (-load).exp()
}

/// Fraction of slots carrying exactly one transmission among `t` users.
pub fn aloha_sim(t: u64, p: f64, slots: u64, seed: u64) -> Result<SimReport> {
    if slots == 0 || !(0.0..=1.0).contains(&p) {
        return Err(bad("need slots >= 1 and 0 <= p <= 1"));
    }
    let dist = Binomial::new(t, p).map_err(|e| bad(e.to_string()))?;
    let mut r = trial_rng(seed, 0);
    let mut ok = Proportion::default();
    for _ in 0..slots {
        ok.record(dist.sample(&mut r) == 1);
    }
    Ok(SimReport::new("aloha", seed)
        .param("T", t as f64)
        .param("p", p)
        .param("G", p * t as f64)
        .param("slots", slots as f64)
        .metric("eta", ok.metric())
        .metric("eta_formula", Metric::exact(aloha_eta(t, p))))
}

/// Aloha over a grid of offered loads `G`, with `p = G/T`.
pub fn aloha_sweep(t: u64, loads: &[f64], slots: u64, seed: u64) -> Result<Vec<SimReport>> {
    loads
        .iter()
        .enumerate()
        .map(|(i, &g)| aloha_sim(t, (g / t as f64).min(1.0), slots, crate::sim::trial_seed(seed, i as u64)))
        .collect()
}

// ---------------------------------------------------------- array access

/// Probability that one row of a user collides with one of `t-1` others on `z` channels.
pub fn row_collision_probability(t: u64, z: u64) -> f64 {
    1.0 - ((z as f64 - 1.0) / z as f64).powf(t.saturating_sub(1) as f64)
}

/// Expected number of collided rows out of `n`.
pub fn expected_collisions(t: u64, z: u64, n: usize) -> f64 {
    n as f64 * row_collision_probability(t, z)
}

/// `(T/Z)((Z-1)/Z)^{T-1}`.
pub fn array_access_eta(t: u64, z: u64) -> f64 {
    t as f64 / z as f64 * (1.0 - row_collision_probability(t, z))
}

/// Largest `k` with `P_e < 1 - k/n`.
pub fn array_access_k(t: u64, z: u64, n: usize) -> usize {
    let pe = row_collision_probability(t, z);
    (0..n).rev().find(|&k| pe < 1.0 - k as f64 / n as f64).unwrap_or(0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArrayAccessParams {
    pub users: u64,
    pub channels: u64,
    pub n: usize,
    pub k: usize,
    pub row_len: usize,
    pub blocks: u64,
}

/// Feedback-free access: each user spreads the n rows of its code array over
/// `channels` parallel channels; collided rows arrive as uniform noise and
/// every user array is decoded with [`mk_decode`].
pub fn array_access_sim(params: &ArrayAccessParams, seed: u64) -> Result<SimReport> {
    let ArrayAccessParams { users, channels, n, k, row_len, blocks } = *params;
    if users == 0 || channels == 0 || k == 0 || k >= n {
        return Err(bad("need users, channels >= 1 and 1 <= k < n"));
    }
    let m = (1..=16).find(|&m| (1u64 << m) > n as u64).ok_or_else(|| bad("n too large"))?;
    let f = GaloisField::binary_default(m)?;
    let code = RsCode::of_length(&f, n, k)?;
    let limit = n - k - 1;
    let (mut lt, mut le, mut all) = (Proportion::default(), Proportion::default(), Proportion::default());
    let mut clean_slots = 0u64;
    let mut decoded_users = 0u64;
    let mut collided = MeanAcc::default();
    for b in 0..blocks {
        let mut r = trial_rng(seed, b);
        let sig: Vec<Vec<u64>> = (0..users).map(|_| (0..n).map(|_| r.random_range(0..channels)).collect()).collect();
        let mut occupancy = vec![vec![0u32; channels as usize]; n];
        for s in &sig {
            for (i, &c) in s.iter().enumerate() {
                occupancy[i][c as usize] += 1;
            }
        }
        clean_slots += occupancy.iter().flatten().filter(|&&c| c == 1).count() as u64;
        for s in &sig {
            let packets = (0..k).map(|_| (0..row_len).map(|_| r.random_range(0..f.q())).collect()).collect();
            let block = PacketBlock::new(packets)?;
            let mut rows = encode_array(&code, &block)?;
            let mut hit = 0;
            for (i, &c) in s.iter().enumerate() {
                if occupancy[i][c as usize] > 1 {
                    hit += 1;
                    for x in rows[i].iter_mut() {
                        *x = r.random_range(0..f.q());
                    }
                }
            }
            collided.push(hit as f64);
            let ok = matches!(mk_decode(&CodeArray::unknown(rows), &code), Ok(out) if out.block.packets == block.packets);
            decoded_users += ok as u64;
            all.record(ok);
            if hit < limit {
                lt.record(ok);
            }
            if hit <= limit {
                le.record(ok);
            }
        }
    }
    let slots = (blocks * channels * n as u64) as f64;
    let eta = clean_slots as f64 / slots;
    let eta_se = (eta * (1.0 - eta) / slots).sqrt();
    let info_rate = decoded_users as f64 * k as f64 / slots;
    Ok(SimReport::new("array-access", seed)
        .param("T", users as f64)
        .param("Z", channels as f64)
        .param("n", n as f64)
        .param("k", k as f64)
        .param("N", row_len as f64)
        .param("blocks", blocks as f64)
        .metric("success_below_limit", lt.metric())
        .metric("success_at_limit", le.metric())
        .metric("success_all", all.metric())
        .metric("eta", Metric { value: eta, stderr: Some(eta_se), trials: blocks })
        .metric("eta_formula", Metric::exact(array_access_eta(users, channels)))
        .metric("info_throughput", Metric::exact(info_rate))
        .metric("collided_rows", collided.metric())
        .metric("collided_rows_formula", Metric::exact(expected_collisions(users, channels, n))))
}

// ------------------------------------------------------------ OR channel

/// `T [h(p^T) - p h(p^{T-1})]` for the binary OR channel, `p = P(0)`.
pub fn or_rate_binary(t: u64, p: f64) -> f64 {
    let tf = t as f64;
    tf * (h2(p.powf(tf)) - p * h2(p.powf(tf - 1.0)))
}

/// Sum rate `T I(X_i; Y)` of the M-ary OR channel when every user draws
/// from `dist`; the output is the set of symbols present. For `M = 2` this
/// is the ternary-output channel, not the on/off channel of [`or_rate_binary`].
pub fn or_rate(t: u64, dist: &[f64]) -> Result<f64> {
    let m = dist.len();
    if !(2..=16).contains(&m) {
        return Err(bad("alphabet size must be in 2..=16"));
    }
    if dist.iter().any(|&p| p < 0.0) || (dist.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return Err(Error::BadDistribution(format!("{dist:?}")));
    }
    if t == 0 {
        return Ok(0.0);
    }
    let full = 1usize << m;
    let mass: Vec<f64> = (0..full).map(|s| (0..m).filter(|i| s >> i & 1 == 1).map(|i| dist[i]).sum()).collect();
    let tf = t as f64;
    let pw_t: Vec<f64> = mass.iter().map(|&p| p.powf(tf)).collect();
    let pw_t1: Vec<f64> = mass.iter().map(|&p| p.powf(tf - 1.0)).collect();
    let xlog = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    let mut hy = 0.0;
    let mut hyx = 0.0;
    for s in 1..full {
        let mut py = 0.0;
        let mut sub = s;
        loop {
            let sign = if (s & !sub).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            py += sign * pw_t[sub];
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & s;
        }
        hy += xlog(py.max(0.0));
        for (x, &px) in dist.iter().enumerate().take(m) {
            if s >> x & 1 == 0 || px == 0.0 {
                continue;
            }
            let mut pc = 0.0;
            let mut sub = s;
            loop {
                if sub >> x & 1 == 1 {
                    let sign = if (s & !sub).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                    pc += sign * pw_t1[sub];
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & s;
            }
            hyx += px * xlog(pc.max(0.0));
        }
    }
    Ok(tf * (hy - hyx))
}

/// Distribution with `P(0) = p0` and the rest split evenly.
pub fn central_distribution(m: usize, p0: f64) -> Vec<f64> {
    let mut d = vec![(1.0 - p0) / (m - 1) as f64; m];
    d[0] = p0;
    d
}

/// `P(0) = 1 - (M-1) ln2 / T`, `ln2 / T` on every other symbol.
pub fn or_theorem_distribution(m: usize, t: u64) -> Vec<f64> {
    central_distribution(m, (1.0 - (m - 1) as f64 * LN_2 / t as f64).max(0.0))
}

pub fn or_theorem_rate(m: usize, t: u64) -> Result<f64> {
    if m == 2 {
        return Ok(or_rate_binary(t, or_theorem_distribution(2, t)[0]));
    }
    or_rate(t, &or_theorem_distribution(m, t))
}

/// Maximises `f` on `[lo, hi]` by golden-section search.
pub fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut a = hi - g * (hi - lo);
    let mut b = lo + g * (hi - lo);
    let (mut fa, mut fb) = (f(a), f(b));
    while hi - lo > tol {
        if fa < fb {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = f(b);
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = f(a);
        }
    }
    let x = (lo + hi) / 2.0;
    (x, f(x))
}

/// Dense-grid scan then golden-section refinement between the grid
/// neighbours of the best point.
pub fn grid_then_golden(f: impl Fn(f64) -> f64, lo: f64, hi: f64, points: usize, tol: f64) -> (f64, f64) {
    let step = (hi - lo) / (points - 1) as f64;
    let best = (0..points)
        .map(|i| (i, f(lo + i as f64 * step)))
        .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
    let a = lo + best.0.saturating_sub(1) as f64 * step;
    let b = (lo + (best.0 + 1) as f64 * step).min(hi);
    let refined = golden_max(&f, a, b, tol);
    if refined.1 >= best.1 {
        refined
    } else {
        (lo + best.0 as f64 * step, best.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrOptimum {
    /// Probability of the central symbol.
    pub p0: f64,
    pub rate: f64,
    pub theorem_rate: f64,
}

/// Maximum sum rate over central-symbol distributions; `M = 2` uses the
/// on/off channel of [`or_rate_binary`].
pub fn or_optimal(m: usize, t: u64) -> Result<OrOptimum> {
    if m < 2 || t == 0 {
        return Err(bad("need M >= 2 and T >= 1"));
    }
    let rate = |p0: f64| {
        if m == 2 {
            or_rate_binary(t, p0)
        } else {
            or_rate(t, &central_distribution(m, p0)).unwrap_or(f64::NEG_INFINITY)
        }
    };
    let (p0, best) = grid_then_golden(rate, 0.0, 1.0, 1000, 1e-9);
    Ok(OrOptimum { p0, rate: best, theorem_rate: or_theorem_rate(m, t)? })
}

// ---------------------------------------------------- random signatures

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignatureScheme {
    Symmetric,
    Asymmetric,
}

/// `(M-1)(1 - (1-1/M)^{T-1})^L`.
pub fn symmetric_bound(m: f64, t: f64, l: f64) -> f64 {
    (m - 1.0) * (1.0 - (1.0 - 1.0 / m).powf(t - 1.0)).powf(l)
}

/// `(M-1)(1 - (1-1/(M-1))^{pT-1})^L`.
pub fn asymmetric_bound(m: f64, t: f64, l: f64, p: f64) -> f64 {
    (m - 1.0) * (1.0 - (1.0 - 1.0 / (m - 1.0)).powf(p * t - 1.0)).powf(l)
}

/// `M (1 - e^{-pT/M})^L`.
pub fn asymmetric_bound_approx(m: f64, t: f64, l: f64, p: f64) -> f64 {
    m * (1.0 - (-p * t / m).exp()).powf(l)
}

/// Probability of a non-central message, `(M-1) ln2 / T`.
pub fn asymmetric_p(m: f64, t: f64) -> f64 {
    (m - 1.0) * LN_2 / t
}

pub fn symmetric_rate(m: f64, t: f64, l: f64) -> f64 {
    t * m.log2() / (l * m)
}

/// `T (h(p) + p log2(M-1)) / (L M)`.
pub fn asymmetric_rate(m: f64, t: f64, l: f64, p: f64) -> f64 {
    t * (h2(p) + p * (m - 1.0).log2()) / (l * m)
}

/// `M = 2^{eps L}`, `T = 2^{(1-2 eps) L} ln2`, `p = (M-1) ln2 / T`.
pub fn asymmetric_parametrization(eps: f64, l: f64) -> (f64, f64, f64) {
    let m = (eps * l).exp2();
    let t = ((1.0 - 2.0 * eps) * l).exp2() * LN_2;
    (m, t, asymmetric_p(m, t))
}

fn covered(masks: &[u64], word: &[usize]) -> bool {
    word.iter().zip(masks).all(|(&s, &mask)| mask >> s & 1 == 1)
}

/// Monte-Carlo error rate of one user's decoder with random signatures on the
/// M-ary OR channel. In the asymmetric scheme symbol 0 is the central pulse
/// and message 0 is the all-central signature.
pub fn signature_sim(m: usize, t: usize, l: usize, scheme: SignatureScheme, trials: u64, seed: u64) -> Result<SimReport> {
    if !(2..=64).contains(&m) || t == 0 || l == 0 {
        return Err(bad("need 2 <= M <= 64, T >= 1, L >= 1"));
    }
    if scheme == SignatureScheme::Asymmetric && m < 3 {
        return Err(bad("asymmetric scheme needs M >= 3"));
    }
    let p = asymmetric_p(m as f64, t as f64).min(1.0);
    let mut err = Proportion::default();
    for trial in 0..trials {
        let mut r = trial_rng(seed, trial);
        let book: Vec<Vec<usize>> = (0..m)
            .map(|msg| match scheme {
                SignatureScheme::Symmetric => (0..l).map(|_| r.random_range(0..m)).collect(),
                SignatureScheme::Asymmetric if msg == 0 => vec![0; l],
                SignatureScheme::Asymmetric => (0..l).map(|_| r.random_range(1..m)).collect(),
            })
            .collect();
        let draw_msg = |r: &mut crate::sim::SimRng| match scheme {
            SignatureScheme::Symmetric => r.random_range(0..m),
            SignatureScheme::Asymmetric => {
                if r.random::<f64>() < p {
                    r.random_range(1..m)
                } else {
                    0
                }
            }
        };
        let sent = draw_msg(&mut r);
        let mut masks: Vec<u64> = book[sent].iter().map(|&s| 1u64 << s).collect();
        for _ in 1..t {
            let other = draw_msg(&mut r);
            for mask in masks.iter_mut() {
                let s = match scheme {
                    SignatureScheme::Asymmetric if other == 0 => 0,
                    SignatureScheme::Asymmetric => r.random_range(1..m),
                    SignatureScheme::Symmetric => r.random_range(0..m),
                };
                *mask |= 1 << s;
            }
        }
        let first = if scheme == SignatureScheme::Asymmetric { 1 } else { 0 };
        let wrong = (first..m).any(|c| c != sent && covered(&masks, &book[c]));
        err.record(wrong);
    }
    let (mf, tf, lf) = (m as f64, t as f64, l as f64);
    let (bound, rate) = match scheme {
        SignatureScheme::Symmetric => (symmetric_bound(mf, tf, lf), symmetric_rate(mf, tf, lf)),
        SignatureScheme::Asymmetric => (asymmetric_bound(mf, tf, lf, p), asymmetric_rate(mf, tf, lf, p)),
    };
    Ok(SimReport::new("signature", seed)
        .param("M", mf)
        .param("T", tf)
        .param("L", lf)
        .metric("pe", err.metric())
        .metric("pe_bound", Metric::exact(bound))
        .metric("eta", Metric::exact(rate)))
}

// ------------------------------------------------------------ Titlebaum

/// Signatures from the second row `(0, 1, alpha, ...)` of an extended RS
/// generator, modulated by adding multiples of the all-one row.
#[derive(Clone, Debug)]
pub struct Titlebaum {
    field: GaloisField,
    points: Vec<FieldElement>,
}

impl Titlebaum {
    /// Alphabet `m` (a prime or a power of two) and signature length `l <= m`.
    pub fn new(m: u32, l: usize) -> Result<Self> {
        let field = GaloisField::of_order(m)?;
        if l == 0 || l > m as usize {
            return Err(bad(format!("length {l} must be in 1..={m}")));
        }
        let points = (0..l)
            .map(|j| match field.kind() {
                FieldKind::Prime => j as FieldElement,
                FieldKind::Binary if j == 0 => 0,
                FieldKind::Binary => field.alpha_pow(j as i64 - 1),
            })
            .collect();
        Ok(Self { field, points })
    }

    pub fn alphabet(&self) -> u32 {
        self.field.q()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Users are the nonzero field elements `1..M`.
    pub fn users(&self) -> std::ops::Range<u32> {
        1..self.field.q()
    }

    pub fn signature(&self, user: u32) -> Vec<FieldElement> {
        self.points.iter().map(|&x| self.field.mul(user, x)).collect()
    }

    pub fn modulated(&self, user: u32, message: u32) -> Vec<FieldElement> {
        self.points.iter().map(|&x| self.field.add(self.field.mul(user, x), message)).collect()
    }

    /// Message with the most agreements between the user's modulated words
    /// and the per-position symbol sets `demod` (bit `s` of `demod[j]` set when
    /// symbol `s` was detected at position `j`); ties go to the lowest message.
    pub fn decode(&self, demod: &[u64], user: u32) -> u32 {
        let mut best = (0, 0);
        for msg in 0..self.field.q() {
            let agree = self.modulated(user, msg).iter().zip(demod).filter(|(&s, &mask)| mask >> s & 1 == 1).count();
            if agree > best.1 {
                best = (msg, agree);
            }
        }
        best.0
    }

    /// Largest number of agreeing positions between signatures of different users,
    /// over all messages.
    pub fn max_cross_agreement(&self) -> usize {
        let q = self.field.q();
        let words: Vec<Vec<Vec<FieldElement>>> =
            self.users().map(|u| (0..q).map(|c| self.modulated(u, c)).collect()).collect();
        let mut worst = 0;
        for (i, wi) in words.iter().enumerate() {
            for wj in &words[i + 1..] {
                for a in wi {
                    for b in wj {
                        worst = worst.max(a.iter().zip(b).filter(|(x, y)| x == y).count());
                    }
                }
            }
        }
        worst
    }
}

/// `(M-1) (1/M)^L C(T-1, L) L!`.
pub fn titlebaum_pe(m: u64, t: u64, l: u64) -> f64 {
    let lf: f64 = (1..=l).map(|i| i as f64).product();
    (m - 1) as f64 * (1.0 / m as f64).powf(l as f64) * binom(t.saturating_sub(1), l) * lf
}

/// `M (T/M)^L`.
pub fn titlebaum_pe_approx(m: f64, t: f64, l: f64) -> f64 {
    m * (t / m).powf(l)
}

/// `T log2 M / (L M)`.
pub fn titlebaum_rate(m: f64, t: f64, l: f64) -> f64 {
    t * m.log2() / (l * m)
}

/// Decoding error rate for one user among `t` distinct active users sending
/// uniformly random messages over an ideal OR demodulator.
pub fn titlebaum_sim(m: u32, t: usize, l: usize, trials: u64, seed: u64) -> Result<SimReport> {
    let tb = Titlebaum::new(m, l)?;
    if m > 64 {
        return Err(bad("alphabet above 64 not supported by the simulator"));
    }
    if t == 0 || t > (m - 1) as usize {
        return Err(bad(format!("need 1 <= T <= {}", m - 1)));
    }
    let mut err = Proportion::default();
    for trial in 0..trials {
        let mut r = trial_rng(seed, trial);
        let active = sample(&mut r, (m - 1) as usize, t);
        let mut masks = vec![0u64; l];
        let mut sent = 0;
        for (idx, u) in active.iter().enumerate() {
            let msg = r.random_range(0..m);
            if idx == 0 {
                sent = msg;
            }
            for (mask, s) in masks.iter_mut().zip(tb.modulated(u as u32 + 1, msg)) {
                *mask |= 1 << s;
            }
        }
        let target = active.index(0) as u32 + 1;
        err.record(tb.decode(&masks, target) != sent);
    }
    Ok(SimReport::new("titlebaum", seed)
        .param("M", m as f64)
        .param("T", t as f64)
        .param("L", l as f64)
        .metric("pe", err.metric())
        .metric("pe_bound", Metric::exact(titlebaum_pe(m as u64, t as u64, l as u64)))
        .metric("eta", Metric::exact(titlebaum_rate(m as f64, t as f64, l as f64))))
}

// ----------------------------------------------------- superimposed codes

/// U words of length n over the alphabet `0..q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SicCode {
    pub words: Vec<Vec<u32>>,
    pub q: u32,
    /// Declared number of users the code separates.
    pub t: usize,
}

impl SicCode {
    pub fn new(words: Vec<Vec<u32>>, q: u32, t: usize) -> Result<Self> {
        let n = words.first().map_or(0, Vec::len);
        if words.iter().any(|w| w.len() != n || w.iter().any(|&s| s >= q)) {
            return Err(bad("words must share a length and use symbols below q"));
        }
        if q > 64 {
            return Err(bad("alphabet above 64 not supported"));
        }
        Ok(Self { words, q, t })
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn len(&self) -> usize {
        self.words.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Component-wise symbol sets of a collection of words, one bitmask per position.
pub fn union_masks<'a>(n: usize, words: impl IntoIterator<Item = &'a Vec<u32>>) -> Vec<u64> {
    let mut masks = vec![0u64; n];
    for w in words {
        for (m, &s) in masks.iter_mut().zip(w) {
            *m |= 1 << s;
        }
    }
    masks
}

/// True iff no union of at most `t` codewords covers a codeword outside the set.
///
/// Covering is component-wise set membership, so for `q = 2` both symbols count.
pub fn sic_check(code: &SicCode, t: usize) -> Result<bool> {
    sic_check_with(code, t, false)
}

/// Like [`sic_check`] with Boolean-OR covering: only the 1-positions of a
/// binary word need to be hit.
pub fn sic_check_boolean(code: &SicCode, t: usize) -> Result<bool> {
    if code.q != 2 {
        return Err(bad("Boolean covering needs a binary code"));
    }
    sic_check_with(code, t, true)
}

fn sic_check_with(code: &SicCode, t: usize, boolean: bool) -> Result<bool> {
    let u = code.size();
    if u <= 1 || t == 0 {
        return Ok(true);
    }
    let s = t.min(u - 1);
    let work = binom(u as u64, s as u64) * u as f64;
    if work > 1e8 {
        return Err(Error::TooLarge(format!("C({u},{s}) * {u} = {work:.3e} subset checks")));
    }
    let n = code.len();
    let singles: Vec<Vec<u64>> = code.words.iter().map(|w| union_masks(n, [w])).collect();
    let need: Vec<Vec<u64>> = if boolean {
        code.words.iter().map(|w| w.iter().map(|&b| if b == 1 { 2 } else { 0 }).collect()).collect()
    } else {
        singles.clone()
    };
    let mut chosen = Vec::with_capacity(s);
    let mut stack = vec![vec![0u64; n]];
    Ok(dfs(&singles, &need, s, 0, &mut chosen, &mut stack))
}

fn dfs(singles: &[Vec<u64>], need: &[Vec<u64>], s: usize, start: usize, chosen: &mut Vec<usize>, stack: &mut Vec<Vec<u64>>) -> bool {
    if chosen.len() == s {
        let uni = stack.last().unwrap();
        return (0..singles.len())
            .filter(|v| !chosen.contains(v))
            .all(|v| need[v].iter().zip(uni).any(|(&w, &m)| w & !m != 0));
    }
    let u = singles.len();
    for i in start..=u - (s - chosen.len()) {
        let next: Vec<u64> = stack.last().unwrap().iter().zip(&singles[i]).map(|(a, b)| a | b).collect();
        stack.push(next);
        chosen.push(i);
        let ok = dfs(singles, need, s, i + 1, chosen, stack);
        chosen.pop();
        stack.pop();
        if !ok {
            return false;
        }
    }
    true
}

/// Weight-one binary words of length q, symbol `s` mapped to a 1 at index `s`.
pub fn weight_one_code(q: u32) -> SicCode {
    let words = (0..q).map(|s| (0..q).map(|j| (j == s) as u32).collect()).collect();
    SicCode { words, q: 2, t: q.saturating_sub(1) as usize }
}

/// Largest `T` with `T (k - 1) < n`.
pub fn rs_sic_t(n: usize, k: usize, u: usize) -> usize {
    if k <= 1 {
        u.saturating_sub(1)
    } else {
        (n - 1) / (k - 1)
    }
}

/// All codewords of an `(n, k)` RS code over GF(q) as a q-ary superimposed code.
pub fn sic_rs_qary(q: u32, n: usize, k: usize) -> Result<SicCode> {
    let f = GaloisField::of_order(q)?;
    let code = RsCode::of_length(&f, n, k)?;
    let total = (q as f64).powi(k as i32);
    if total > (1u64 << 20) as f64 {
        return Err(Error::TooLarge(format!("{total} codewords")));
    }
    let mut info = vec![0u32; k];
    let mut words = Vec::with_capacity(total as usize);
    loop {
        words.push(code.encode(&info));
        let Some(pos) = info.iter().rposition(|&x| x + 1 < q) else {
            break;
        };
        info[pos] += 1;
        info[pos + 1..].iter_mut().for_each(|x| *x = 0);
    }
    let u = words.len();
    Ok(SicCode { words, q, t: rs_sic_t(n, k, u) })
}

/// Binary superimposed code from a length-(q-1) RS code with each symbol
/// replaced by a weight-one word of length q.
pub fn sic_from_rs(q: u32, k: usize) -> Result<SicCode> {
    let outer = sic_rs_qary(q, q as usize - 1, k)?;
    let t = outer.t;
    let mut out = sic_compose(&weight_one_code(q), &outer)?;
    out.t = t;
    Ok(out)
}

/// Replaces each outer symbol `s` by the inner codeword with index `s`.
pub fn sic_compose(inner: &SicCode, outer: &SicCode) -> Result<SicCode> {
    if outer.q as usize > inner.size() {
        return Err(bad(format!("outer alphabet {} exceeds {} inner words", outer.q, inner.size())));
    }
    let words = outer.words.iter().map(|w| w.iter().flat_map(|&s| inner.words[s as usize].iter().copied()).collect()).collect();
    Ok(SicCode { words, q: inner.q, t: inner.t.min(outer.t) })
}

/// `(U - T) C(U, T) [1 - ((q-1)/q)^T]^n`.
pub fn sic_random_bound(u: u64, t: u64, q: f64, n: f64) -> f64 {
    (u - t) as f64 * binom(u, t) * (1.0 - ((q - 1.0) / q).powf(t as f64)).powf(n)
}

/// `(2^q - 1)^n >= sum_{i=1}^{T} C(U, i)`, in logarithms.
pub fn sic_counting_bound_holds(u: u64, n: u64, q: u32, t: u64) -> bool {
    let rhs: f64 = (1..=t).map(|i| binom(u, i)).sum();
    n as f64 * ((q as f64).exp2() - 1.0).log2() >= rhs.log2()
}

/// `n >= T log2(U/T) / log2 q`.
pub fn sic_length_lower_bound(u: f64, t: f64, q: f64) -> f64 {
    t / q.log2() * (u / t).log2()
}

// ---------------------------------------------------------- XOR channel

/// Active users `(index, value)` recovered from the superposition of their
/// scaled syndrome-former rows.
pub fn xor_access(code: &RsCode, active: &[(usize, FieldElement)]) -> Result<Vec<(usize, FieldElement)>> {
    let f = code.field();
    if f.kind() != FieldKind::Binary || code.variant() == Variant::Extended {
        return Err(bad("XOR access needs a non-extended code over GF(2^m)"));
    }
    if active.iter().any(|&(u, t)| u >= code.n() || t == 0 || !f.contains(t)) {
        return Err(bad("users must be below n with nonzero field values"));
    }
    if 2 * active.len() > code.n() - code.k() {
        return Err(Error::DecodeFailure);
    }
    let mut e = vec![0; code.n()];
    for &(u, t) in active {
        e[u] = f.add(e[u], t);
    }
    let z = code.syndrome(&e);
    let sol = code.decode_syndrome(&z, &[])?.ok_or(Error::DecodeFailure)?;
    let mut out: Vec<(usize, FieldElement)> = sol.positions.into_iter().zip(sol.values).collect();
    out.sort_unstable();
    Ok(out)
}

/// `(U-k) log2(q-1) / (2 (U-k) m)`.
pub fn xor_sum_rate(u: usize, k: usize, m: u32) -> f64 {
    let r = (u - k) as f64;
    r * ((1u64 << m) as f64 - 1.0).log2() / (2.0 * r * m as f64)
}

/// Finite-T sum rate `T I(X_i; Y)` when each user sends 0 with probability `p`.
pub fn xor_rate(t: u64, p: f64) -> f64 {
    let eps = 0.5 * (1.0 - (1.0 - 2.0 * p).powf(t.saturating_sub(1) as f64));
    let py1 = (1.0 - p) * (1.0 - eps) + p * eps;
    t as f64 * (h2(py1) - h2(eps))
}

/// Large-T limit `c e^{-2c} log2((1+e^{-2c})/(1-e^{-2c}))` for `P(0) = c/T`.
pub fn xor_rate_limit(c: f64) -> f64 {
    let e = (-2.0 * c).exp();
    c * e * ((1.0 + e) / (1.0 - e)).log2()
}

/// Success rate of [`xor_access`] with `active` distinct users drawn
/// uniformly among the `2^m - 1` positions, each sending a uniform nonzero value.
pub fn xor_access_sim(m: u32, k: usize, active: usize, trials: u64, seed: u64) -> Result<SimReport> {
    let f = GaloisField::binary_default(m)?;
    let n = f.order() as usize;
    let code = RsCode::new(&f, n, k, Variant::Standard)?;
    if active > n {
        return Err(bad("more active users than positions"));
    }
    let mut ok = Proportion::default();
    for i in 0..trials {
        let mut r = trial_rng(seed, i);
        let mut users: Vec<(usize, FieldElement)> =
            sample(&mut r, n, active).into_iter().map(|u| (u, r.random_range(1..f.q()))).collect();
        users.sort_unstable();
        ok.record(xor_access(&code, &users).is_ok_and(|got| got == users));
    }
    Ok(SimReport::new("xor-access", seed)
        .param("m", m as f64)
        .param("n", n as f64)
        .param("k", k as f64)
        .param("active", active as f64)
        .metric("success", ok.metric())
        .metric("sum_rate", Metric::exact(xor_sum_rate(n, k, m))))
}
