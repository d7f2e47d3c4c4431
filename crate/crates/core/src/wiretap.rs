//! Secret embedding against a wiretapper: syndrome-carried secrets for parity,
//! Hamming and RS codes, and the equivocation of partly observed codewords.
//!
//! The wiretapper's estimate is always the syndrome of what it received, the
//! most likely secret under all-zero noise. Equivocation is counted in q-ary symbols.

use rand::seq::index::sample;
use rand::Rng;
use serde::Serialize;

use crate::entropy::{binom, binom_u128, h2};
use crate::error::{bad, Error, Result};
use crate::galois::{FieldElement, GaloisField};
use crate::matrix::Matrix;
use crate::rs_core::RsCode;
use crate::sim::{rng, trial_rng, Metric, Proportion, SimReport};

/// Crossovers of the main channel (`p`) and of the wiretapper's channel (`q`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WiretapParams {
    pub p: f64,
    pub q: f64,
}

impl WiretapParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&p) || !(0.0..=0.5).contains(&q) {
            return Err(bad("crossover probabilities must lie in [0, 1/2]"));
        }
        Ok(Self { p, q })
    }

    /// Wiretapper behind the legal receiver with extra crossover `q_prime` end to end:
    /// `q = (q' - p) / (1 - 2p)`.
    pub fn from_tandem(p: f64, q_prime: f64) -> Result<Self> {
        if !(p < q_prime && p < 0.5) {
            return Err(bad("tandem conversion needs p < q' and p < 1/2"));
        }
        Self::new(p, (q_prime - p) / (1.0 - 2.0 * p))
    }

    pub fn has_secrecy(&self) -> bool {
        self.p < self.q
    }
}

/// `C_s = h(q) - h(p)` bits per transmission.
pub fn secrecy_capacity(p: f64, q: f64) -> f64 {
    h2(q) - h2(p)
}

/// Secrecy when the legal receiver also sees the wiretapper's word: `h(p q' + q p') - h(p)`.
pub fn secrecy_plus(p: f64, q: f64) -> f64 {
    h2(p * (1.0 - q) + q * (1.0 - p)) - h2(p)
}

/// Largest normalized equivocation `Delta <= 1` with `R Delta <= C_main - C_wt`.
pub fn rd_region(p: f64, q: f64, rate: f64) -> f64 {
    if rate <= 0.0 {
        return 1.0;
    }
    (secrecy_capacity(p, q).max(0.0) / rate).min(1.0)
}

/// Crossover of a BSC `p` followed by a BSC `q`.
pub fn tandem_crossover(p: f64, q: f64) -> f64 {
    p * (1.0 - q) + q * (1.0 - p)
}

/// Empirical crossover of two cascaded BSCs over `symbols` uses.
pub fn tandem_bsc_sim(p: f64, q: f64, symbols: u64, seed: u64) -> Metric {
    let mut r = rng(seed);
    let mut acc = Proportion::default();
    for _ in 0..symbols {
        let a = r.random_bool(p);
        let b = r.random_bool(q);
        acc.record(a ^ b);
    }
    acc.metric()
}

/// Parity word whose parity bit also carries one secret bit.
pub fn spc_secret_encode(message: &[u8], secret: u8) -> Vec<u8> {
    let parity = message.iter().fold(secret & 1, |a, &b| a ^ (b & 1));
    let mut w = message.to_vec();
    w.push(parity);
    w
}

/// Sum of all bits: the secret for a clean word, the wiretapper's estimate otherwise.
pub fn spc_secret_read(word: &[u8]) -> u8 {
    word.iter().fold(0, |a, &b| a ^ (b & 1))
}

/// Probability of an odd number of flips in n bits, `(1 - (1-2p)^n) / 2`.
pub fn spc_attacker_error(n: usize, p: f64) -> f64 {
    0.5 * (1.0 - (1.0 - 2.0 * p).powi(n as i32))
}

/// Binary `(7,4)` Hamming generator with three secret bits on the check positions.
pub fn hamming_g() -> Matrix {
    Matrix::from_rows(&[
        vec![1, 0, 0, 0, 1, 1, 1],
        vec![0, 1, 0, 0, 1, 1, 0],
        vec![0, 0, 1, 0, 1, 0, 1],
        vec![0, 0, 0, 1, 0, 1, 1],
    ])
}

/// Syndrome former of [`hamming_g`], `7 x 3`.
pub fn hamming_ht() -> Matrix {
    Matrix::from_rows(&[
        vec![1, 1, 1],
        vec![1, 1, 0],
        vec![1, 0, 1],
        vec![0, 1, 1],
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![0, 0, 1],
    ])
}

fn gf2() -> GaloisField {
    GaloisField::prime(2).expect("2 is prime")
}

/// `m G + (0^4, s^3)`.
pub fn hamming_secret_encode(message: &[u8; 4], secret: &[u8; 3]) -> Vec<u8> {
    let f = gf2();
    let m: Vec<FieldElement> = message.iter().map(|&b| FieldElement::from(b & 1)).collect();
    let mut c = hamming_g().vec_mul(&f, &m);
    for (x, &s) in c[4..].iter_mut().zip(secret) {
        *x ^= FieldElement::from(s & 1);
    }
    c.iter().map(|&x| x as u8).collect()
}

/// `r H^T = s + e H^T`.
pub fn hamming_attacker(received: &[u8]) -> [u8; 3] {
    let f = gf2();
    let r: Vec<FieldElement> = received.iter().map(|&b| FieldElement::from(b & 1)).collect();
    let z = hamming_ht().vec_mul(&f, &r);
    [z[0] as u8, z[1] as u8, z[2] as u8]
}

/// Number of codewords of each weight, by enumeration of `q^k <= 2^20` words.
pub fn weight_distribution(f: &GaloisField, g: &Matrix) -> Result<Vec<u64>> {
    let k = g.rows();
    let q = f.q() as u64;
    let total = (q as f64).powi(k as i32);
    if total > (1u64 << 20) as f64 {
        return Err(Error::TooLarge(format!("q^k = {total} codewords")));
    }
    let mut dist = vec![0u64; g.cols() + 1];
    let mut info = vec![0 as FieldElement; k];
    for idx in 0..total as u64 {
        let mut x = idx;
        for v in info.iter_mut() {
            *v = (x % q) as FieldElement;
            x /= q;
        }
        let w = g.vec_mul(f, &info).iter().filter(|&&s| s != 0).count();
        dist[w] += 1;
    }
    Ok(dist)
}

/// `1 - sum_i A_i p^i (1-p)^{n-i}`: probability that the noise is not a codeword.
pub fn attacker_error_from_weights(weights: &[u64], p: f64) -> f64 {
    let n = weights.len() - 1;
    1.0 - weights.iter().enumerate().map(|(i, &a)| a as f64 * p.powi(i as i32) * (1.0 - p).powi((n - i) as i32)).sum::<f64>()
}

/// Weight distribution of an `(n, k)` MDS code over GF(q).
pub fn mds_weight_distribution(n: usize, k: usize, q: u64) -> Vec<f64> {
    let d = n - k + 1;
    let mut a = vec![0.0; n + 1];
    a[0] = 1.0;
    for (w, slot) in a.iter_mut().enumerate().skip(d) {
        let s: f64 = (0..=w - d)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * binom(w as u64, j as u64) * ((q as f64).powi((w - d + 1 - j) as i32) - 1.0)
            })
            .sum();
        *slot = binom(n as u64, w as u64) * s;
    }
    a
}

/// Wiretapper error for an RS-carried secret when each symbol is hit with
/// probability `p` by a uniformly distributed nonzero error value.
pub fn rs_attacker_error(n: usize, k: usize, q: u64, p: f64) -> f64 {
    let pv = p / (q as f64 - 1.0);
    1.0 - mds_weight_distribution(n, k, q)
        .iter()
        .enumerate()
        .map(|(w, &a)| a * pv.powi(w as i32) * (1.0 - p).powi((n - w) as i32))
        .sum::<f64>()
}

/// Lower estimate `1 - (1-p)^n - (q^k - 1) p^d (1-p)^{n-d}` with all nonzero words at weight d.
pub fn rs_attacker_error_bound(n: usize, k: usize, q: u64, p: f64) -> f64 {
    let d = n - k + 1;
    1.0 - (1.0 - p).powi(n as i32) - ((q as f64).powi(k as i32) - 1.0) * p.powi(d as i32) * (1.0 - p).powi((n - d) as i32)
}

/// `sum_{i <= t} q^i C(n, i)` error patterns of weight at most t, and the estimate `(n+1)^{2t}`.
pub fn correctable_patterns(n: usize, q: u64, t: usize) -> (f64, f64) {
    let exact = (0..=t).map(|i| (q as f64).powi(i as i32) * binom(n as u64, i as u64)).sum();
    (exact, (n as f64 + 1.0).powi(2 * t as i32))
}

/// Redundancy `n - k = 2pn` and secret length `v = 2(q - p)n`, rounded to whole symbols.
pub fn noisy_dimensions(n: usize, params: WiretapParams) -> Result<(usize, usize, usize)> {
    let redundancy = (2.0 * params.p * n as f64).ceil() as usize;
    let v = (2.0 * (params.q - params.p) * n as f64).floor() as usize;
    if redundancy >= n || v == 0 || redundancy + v >= n {
        return Err(bad("no room for both a message and a secret"));
    }
    let k = n - redundancy;
    Ok((k, k - v, v))
}

/// Systematic RS code with the secret added to its check symbols; the main channel is noiseless.
#[derive(Clone, Debug)]
pub struct NoiselessSecret {
    pub code: RsCode,
    ht: Matrix,
}

impl NoiselessSecret {
    pub fn new(code: RsCode) -> Self {
        let f = code.field();
        let (k, n) = (code.k(), code.n());
        // For G = [I T], H^T = [-T; I].
        let ht = Matrix::from_fn(n, n - k, |i, j| {
            if i < k {
                f.neg(code.g_sys().get(i, k + j))
            } else {
                FieldElement::from(i - k == j)
            }
        });
        Self { code, ht }
    }

    pub fn encode(&self, message: &[FieldElement], secret: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.code.field();
        let k = self.code.k();
        assert_eq!(secret.len(), self.code.n() - k, "secret length");
        let mut x = self.code.encode_systematic(message);
        for (c, &s) in x[k..].iter_mut().zip(secret) {
            *c = f.add(*c, s);
        }
        x
    }

    /// Legal receiver: subtract the codeword named by the first k symbols.
    pub fn legal_decode(&self, y: &[FieldElement]) -> (Vec<FieldElement>, Vec<FieldElement>) {
        let f = self.code.field();
        let k = self.code.k();
        let m = y[..k].to_vec();
        let c = self.code.encode_systematic(&m);
        let s = y[k..].iter().zip(&c[k..]).map(|(&a, &b)| f.sub(a, b)).collect();
        (m, s)
    }

    /// `z H^T = s + e H^T`.
    pub fn attacker(&self, z: &[FieldElement]) -> Vec<FieldElement> {
        self.ht.vec_mul(self.code.field(), z)
    }
}

/// Message on the top u rows and secret on the bottom v rows of the
/// semi-systematic generator `[I_u T U; 0 I_v W]`; the main channel is noisy.
#[derive(Clone, Debug)]
pub struct NoisySecret {
    pub code: RsCode,
    pub u: usize,
    pub g: Matrix,
    /// Syndrome former of the top u rows, `n x (n - u)`.
    pub ht: Matrix,
}

impl NoisySecret {
    pub fn new(code: RsCode, u: usize) -> Result<Self> {
        if u == 0 || u >= code.k() {
            return Err(bad("need 0 < u < k"));
        }
        let g = code.semi_systematic(u)?;
        let f = code.field();
        let (n, k) = (code.n(), code.k());
        let v = k - u;
        let t = |i: usize, j: usize| g.get(i, u + j);
        let uu = |i: usize, j: usize| g.get(i, k + j);
        let w = |i: usize, j: usize| g.get(u + i, k + j);
        // H^T = [-T, TW - U; I_v, -W; 0, I_{n-k}].
        let ht = Matrix::from_fn(n, n - u, |i, j| {
            if i < u {
                if j < v {
                    f.neg(t(i, j))
                } else {
                    let jj = j - v;
                    let tw = (0..v).fold(0, |acc, l| f.add(acc, f.mul(t(i, l), w(l, jj))));
                    f.sub(tw, uu(i, jj))
                }
            } else if i < k {
                let ii = i - u;
                if j < v {
                    FieldElement::from(ii == j)
                } else {
                    f.neg(w(ii, j - v))
                }
            } else {
                FieldElement::from(j >= v && i - k == j - v)
            }
        });
        Ok(Self { code, u, g, ht })
    }

    pub fn v(&self) -> usize {
        self.code.k() - self.u
    }

    pub fn encode(&self, message: &[FieldElement], secret: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(message.len(), self.u, "message length");
        assert_eq!(secret.len(), self.v(), "secret length");
        let info: Vec<FieldElement> = message.iter().chain(secret).copied().collect();
        self.g.vec_mul(self.code.field(), &info)
    }

    /// RS decoding, then `m` from the first u symbols and `s = c_{u..k} - m T`.
    pub fn legal_decode(&self, y: &[FieldElement]) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
        let res = self.code.decode_errors(y);
        if !res.is_corrected() {
            return Err(Error::LegalDecodeFailure);
        }
        let f = self.code.field();
        let (u, k) = (self.u, self.code.k());
        let c = res.codeword;
        let m = c[..u].to_vec();
        let s = (u..k)
            .map(|j| {
                let mt = (0..u).fold(0, |acc, i| f.add(acc, f.mul(m[i], self.g.get(i, j))));
                f.sub(c[j], mt)
            })
            .collect();
        Ok((m, s))
    }

    /// Full syndrome `(s^v, 0^{n-k}) + e H^T`.
    pub fn syndrome(&self, z: &[FieldElement]) -> Vec<FieldElement> {
        self.ht.vec_mul(self.code.field(), z)
    }

    /// Wiretapper estimate: the first v syndrome symbols.
    pub fn attacker(&self, z: &[FieldElement]) -> Vec<FieldElement> {
        let mut s = self.syndrome(z);
        s.truncate(self.v());
        s
    }

    /// For every candidate secret, the least weight of a noise word producing the observed syndrome.
    ///
    /// Enumerates noise words of weight up to `max_weight`; candidates without an
    /// explanation in that range get `None`.
    pub fn secret_explanations(&self, z: &[FieldElement], max_weight: usize) -> Vec<(Vec<FieldElement>, Option<usize>)> {
        let f = self.code.field();
        let n = self.code.n();
        let v = self.v();
        let syn = self.syndrome(z);
        let q = f.q() as usize;
        let mut best: std::collections::HashMap<Vec<FieldElement>, usize> = std::collections::HashMap::new();
        // The syndrome of e must equal (syn_v - s, syn_rest): record its first v symbols per weight.
        for w in 0..=max_weight.min(n) {
            for_each_pattern(n, w, q, |pos, vals| {
                let mut e = vec![0; n];
                for (&p, &x) in pos.iter().zip(vals) {
                    e[p] = x;
                }
                let se = self.ht.vec_mul(f, &e);
                if se[v..] == syn[v..] {
                    let s: Vec<FieldElement> = (0..v).map(|j| f.sub(syn[j], se[j])).collect();
                    best.entry(s).or_insert(w);
                }
            });
        }
        let mut out = Vec::new();
        for idx in 0..q.pow(v as u32) {
            let mut x = idx;
            let s: Vec<FieldElement> = (0..v)
                .map(|_| {
                    let d = (x % q) as FieldElement;
                    x /= q;
                    d
                })
                .collect();
            let w = best.get(&s).copied();
            out.push((s, w));
        }
        out
    }
}

/// Calls `visit(positions, values)` for every weight-w word of length n over an alphabet of size q.
fn for_each_pattern(n: usize, w: usize, q: usize, mut visit: impl FnMut(&[usize], &[FieldElement])) {
    let mut pos: Vec<usize> = (0..w).collect();
    loop {
        let mut vals = vec![1 as FieldElement; w];
        loop {
            visit(&pos, &vals);
            let mut i = 0;
            while i < w {
                vals[i] += 1;
                if (vals[i] as usize) < q {
                    break;
                }
                vals[i] = 1;
                i += 1;
            }
            if i == w {
                break;
            }
        }
        let Some(i) = (0..w).rev().find(|&i| pos[i] < n - w + i) else { return };
        pos[i] += 1;
        for j in i + 1..w {
            pos[j] = pos[j - 1] + 1;
        }
    }
}

/// Calls `visit` with every size-mu subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, mu: usize, mut visit: impl FnMut(&[usize])) {
    let mut s: Vec<usize> = (0..mu).collect();
    loop {
        visit(&s);
        let Some(i) = (0..mu).rev().find(|&i| s[i] < n - mu + i) else { return };
        s[i] += 1;
        for j in i + 1..mu {
            s[j] = s[j - 1] + 1;
        }
    }
}

const EXACT_LIMIT: u128 = 10_000_000;

/// Minimum rank of the generator restricted to any mu columns, for every mu.
pub fn idlp(f: &GaloisField, g: &Matrix) -> Result<Vec<usize>> {
    let n = g.cols();
    (0..=n)
        .map(|mu| {
            if binom_u128(n as u64, mu as u64).is_none_or(|c| c > EXACT_LIMIT) {
                return Err(Error::TooLarge(format!("C({n}, {mu}) subsets")));
            }
            let mut best = usize::MAX;
            for_each_subset(n, mu, |tau| best = best.min(g.select_cols(tau).rank(f)));
            Ok(if mu == 0 { 0 } else { best })
        })
        .collect()
}

/// Equivocation of a secret added to the check part of a random codeword of a
/// systematic code, when the wiretapper reads mu positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Equivocation {
    pub symbols: usize,
    /// False when only sampled subsets were examined; `symbols` is then an upper estimate.
    pub exact: bool,
}

/// `min_tau [(n - k) - rank M_tau + rank G_tau]`, where `y = (m, s) M` with `M = [G; 0 I]`.
pub fn wiretap2_equivocation(f: &GaloisField, g_sys: &Matrix, mu: usize, seed: u64) -> Result<Equivocation> {
    let (k, n) = (g_sys.rows(), g_sys.cols());
    if mu > n {
        return Err(bad("cannot observe more than n symbols"));
    }
    let lower = Matrix::from_fn(n - k, n, |i, j| FieldElement::from(j == k + i));
    let full = g_sys.vstack(&lower);
    let eq = |tau: &[usize]| (n - k) + g_sys.select_cols(tau).rank(f) - full.select_cols(tau).rank(f);
    let count = binom_u128(n as u64, mu as u64);
    if count.is_some_and(|c| c <= EXACT_LIMIT) {
        let mut best = usize::MAX;
        for_each_subset(n, mu, |tau| best = best.min(eq(tau)));
        return Ok(Equivocation { symbols: best, exact: true });
    }
    let mut r = rng(seed);
    let mut best = usize::MAX;
    for _ in 0..100_000 {
        let mut tau = sample(&mut r, n, mu).into_vec();
        tau.sort_unstable();
        best = best.min(eq(&tau));
    }
    Ok(Equivocation { symbols: best, exact: false })
}

/// Wiretap schemes exercised by [`wiretap_sim`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WiretapScheme {
    Spc,
    Hamming,
    RsNoiseless,
    RsNoisy,
    TypeTwo,
}

impl WiretapScheme {
    pub fn name(self) -> &'static str {
        match self {
            WiretapScheme::Spc => "spc",
            WiretapScheme::Hamming => "hamming",
            WiretapScheme::RsNoiseless => "rs-noiseless",
            WiretapScheme::RsNoisy => "rs-noisy",
            WiretapScheme::TypeTwo => "type2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::Spc, Self::Hamming, Self::RsNoiseless, Self::RsNoisy, Self::TypeTwo].into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
#[serde(default)]
pub struct WiretapSimParams {
    /// Field degree for the RS schemes.
    pub m: u32,
    pub n: usize,
    pub k: usize,
    /// Message rows of the noisy scheme.
    pub u: usize,
    /// Main-channel symbol error probability.
    pub p: f64,
    /// Wiretapper symbol error probability.
    pub q: f64,
    /// Observed positions for the type II scheme.
    pub mu: usize,
    pub trials: u64,
}

impl Default for WiretapSimParams {
    fn default() -> Self {
        Self { m: 3, n: 7, k: 3, u: 2, p: 0.0, q: 0.1, mu: 3, trials: 10_000 }
    }
}

fn symbol_noise(f: &GaloisField, word: &mut [FieldElement], p: f64, r: &mut impl Rng) -> usize {
    let mut hits = 0;
    for x in word.iter_mut() {
        if r.random_bool(p) {
            *x = f.add(*x, r.random_range(1..f.q()));
            hits += 1;
        }
    }
    hits
}

/// Legal and wiretapper error rates of a scheme, with the matching closed forms.
pub fn wiretap_sim(scheme: WiretapScheme, prm: &WiretapSimParams, seed: u64) -> Result<SimReport> {
    let mut legal = Proportion::default();
    let mut attacker = Proportion::default();
    let base = SimReport::new(&format!("wiretap-{}", scheme.name()), seed).param("p", prm.p).param("q", prm.q).param("n", prm.n as f64);
    match scheme {
        WiretapScheme::Spc => {
            for t in 0..prm.trials {
                let mut r = trial_rng(seed, t);
                let msg: Vec<u8> = (0..prm.n - 1).map(|_| r.random_range(0..2)).collect();
                let s = r.random_range(0..2);
                let x = spc_secret_encode(&msg, s);
                legal.record(spc_secret_read(&x) != s);
                let z: Vec<u8> = x.iter().map(|&b| b ^ u8::from(r.random_bool(prm.q))).collect();
                attacker.record(spc_secret_read(&z) != s);
            }
            Ok(base
                .metric("legal_error", legal.metric())
                .metric("attacker_error", attacker.metric())
                .metric("attacker_error_formula", Metric::exact(spc_attacker_error(prm.n, prm.q))))
        }
        WiretapScheme::Hamming => {
            let wd = weight_distribution(&gf2(), &hamming_g())?;
            for t in 0..prm.trials {
                let mut r = trial_rng(seed, t);
                let m: [u8; 4] = std::array::from_fn(|_| r.random_range(0..2));
                let s: [u8; 3] = std::array::from_fn(|_| r.random_range(0..2));
                let x = hamming_secret_encode(&m, &s);
                legal.record(hamming_attacker(&x) != s);
                let z: Vec<u8> = x.iter().map(|&b| b ^ u8::from(r.random_bool(prm.q))).collect();
                attacker.record(hamming_attacker(&z) != s);
            }
            Ok(base
                .metric("legal_error", legal.metric())
                .metric("attacker_error", attacker.metric())
                .metric("attacker_error_formula", Metric::exact(attacker_error_from_weights(&wd, prm.q))))
        }
        WiretapScheme::RsNoiseless => {
            let f = GaloisField::binary_default(prm.m)?;
            let scheme = NoiselessSecret::new(RsCode::of_length(&f, prm.n, prm.k)?);
            for t in 0..prm.trials {
                let mut r = trial_rng(seed, t);
                let m: Vec<FieldElement> = (0..prm.k).map(|_| r.random_range(0..f.q())).collect();
                let s: Vec<FieldElement> = (0..prm.n - prm.k).map(|_| r.random_range(0..f.q())).collect();
                let x = scheme.encode(&m, &s);
                legal.record(scheme.legal_decode(&x) != (m, s.clone()));
                let mut z = x;
                symbol_noise(&f, &mut z, prm.q, &mut r);
                attacker.record(scheme.attacker(&z) != s);
            }
            Ok(base.metric("legal_error", legal.metric()).metric("attacker_error", attacker.metric()).metric(
                "attacker_error_formula",
                Metric::exact(rs_attacker_error(prm.n, prm.k, f.q() as u64, prm.q)),
            ))
        }
        WiretapScheme::RsNoisy => {
            let f = GaloisField::binary_default(prm.m)?;
            let scheme = NoisySecret::new(RsCode::of_length(&f, prm.n, prm.k)?, prm.u)?;
            for t in 0..prm.trials {
                let mut r = trial_rng(seed, t);
                let m: Vec<FieldElement> = (0..prm.u).map(|_| r.random_range(0..f.q())).collect();
                let s: Vec<FieldElement> = (0..scheme.v()).map(|_| r.random_range(0..f.q())).collect();
                let x = scheme.encode(&m, &s);
                let mut y = x.clone();
                symbol_noise(&f, &mut y, prm.p, &mut r);
                legal.record(scheme.legal_decode(&y).ok() != Some((m, s.clone())));
                let mut z = x;
                symbol_noise(&f, &mut z, prm.q, &mut r);
                attacker.record(scheme.attacker(&z) != s);
            }
            Ok(base.metric("legal_error", legal.metric()).metric("attacker_error", attacker.metric()))
        }
        WiretapScheme::TypeTwo => {
            let f = GaloisField::binary_default(prm.m)?;
            let code = RsCode::of_length(&f, prm.n, prm.k)?;
            let e = wiretap2_equivocation(&f, code.g_sys(), prm.mu, seed)?;
            let profile = idlp(&f, code.g_sys())?;
            let mut rep = base.param("mu", prm.mu as f64).metric("equivocation", Metric::exact(e.symbols as f64));
            for (mu, kmu) in profile.iter().enumerate() {
                rep = rep.metric(&format!("idlp_{mu}"), Metric::exact(*kmu as f64));
            }
            Ok(rep)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capacity_edges() {
        assert_eq!(secrecy_capacity(0.0, 0.5), 1.0);
        assert_eq!(secrecy_capacity(0.2, 0.2), 0.0);
        assert!((secrecy_capacity(0.01, 0.1) - (h2(0.1) - h2(0.01))).abs() < 1e-15);
        assert!(secrecy_plus(0.1, 0.2) > secrecy_capacity(0.1, 0.2));
    }

    #[test]
    fn parity_secret_round_trip() {
        let w = spc_secret_encode(&[1, 0, 1, 1], 1);
        assert_eq!(spc_secret_read(&w), 1);
        assert_eq!(spc_attacker_error(5, 0.0), 0.0);
    }

    #[test]
    fn hamming_matrices_are_dual() {
        let f = gf2();
        assert!(hamming_g().mul(&f, &hamming_ht()).is_zero());
    }

    #[test]
    fn mds_distribution_sums_to_code_size() {
        let a = mds_weight_distribution(7, 3, 8);
        assert_eq!(a.iter().sum::<f64>(), 512.0);
        assert_eq!(a[5], 147.0);
    }

    #[test]
    fn subset_enumeration_counts() {
        let mut c = 0;
        for_each_subset(7, 3, |_| c += 1);
        assert_eq!(c, 35);
        let mut z = 0;
        for_each_subset(4, 0, |s| z += s.len() + 1);
        assert_eq!(z, 1);
    }
}
