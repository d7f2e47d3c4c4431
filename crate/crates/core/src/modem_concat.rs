//! Antipodal signalling over AWGN, soft-decision single-parity-check decoding,
//! RS and parity-check concatenations, thresholded MFSK detection and
//! permutation codes.
//!
//! Bits map to `+d/2` for 1 and `-d/2` for 0; hard decision is the sign.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::capacity_models::{db_to_linear, q_function, q_inverse};
use crate::entropy::binom;
use crate::error::{bad, Error, Result};
use crate::galois::{FieldElement, GaloisField};
use crate::rs_core::{RsCode, Variant};
use crate::sim::{rng, trial_rng, Metric, Proportion, SimReport, SimRng};

/// Binary antipodal transmission with additive Gaussian noise.
#[derive(Clone, Debug)]
pub struct AwgnChannel {
    pub sigma2: f64,
    /// Signal amplitude `d/2`; `E_s = (d/2)^2` per transmitted bit.
    pub amplitude: f64,
    rng: SimRng,
}

impl AwgnChannel {
    pub fn new(sigma2: f64, amplitude: f64, seed: u64) -> Result<Self> {
        if !(sigma2 > 0.0 && amplitude > 0.0) {
            return Err(bad("noise variance and amplitude must be positive"));
        }
        Ok(Self { sigma2, amplitude, rng: rng(seed) })
    }

    /// Unit amplitude, `E_s = R E_b` and `sigma^2 = N_0 / 2`.
    pub fn from_ebn0_db(ebn0_db: f64, rate: f64, seed: u64) -> Result<Self> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(bad("rate must lie in (0, 1]"));
        }
        let n0 = 1.0 / (rate * db_to_linear(ebn0_db));
        Self::new(n0 / 2.0, 1.0, seed)
    }

    pub fn with_rng(sigma2: f64, amplitude: f64, rng: SimRng) -> Result<Self> {
        let mut ch = Self::new(sigma2, amplitude, 0)?;
        ch.rng = rng;
        Ok(ch)
    }

    pub fn es(&self) -> f64 {
        self.amplitude * self.amplitude
    }

    pub fn transmit(&mut self, bits: &[u8]) -> Vec<f64> {
        let s = self.sigma2.sqrt();
        bits.iter()
            .map(|&b| {
                let x = if b & 1 == 1 { self.amplitude } else { -self.amplitude };
                let z: f64 = self.rng.sample(StandardNormal);
                x + s * z
            })
            .collect()
    }

    /// Crossover probability of the hard-decided channel, `Q(sqrt(d^2 / 4 sigma^2))`.
    pub fn p_bsc(&self) -> f64 {
        q_function((self.amplitude * self.amplitude / self.sigma2).sqrt())
    }

    /// Log-likelihood of `r` given bit `b`, up to a constant.
    pub fn log_likelihood(&self, r: f64, b: u8) -> f64 {
        let x = if b & 1 == 1 { self.amplitude } else { -self.amplitude };
        -(r - x) * (r - x) / (2.0 * self.sigma2)
    }
}

pub fn hard(soft: &[f64]) -> Vec<u8> {
    soft.iter().map(|&r| u8::from(r > 0.0)).collect()
}

/// Hard decision; on odd parity the least reliable bit is inverted.
pub fn spc_soft_decode(soft: &[f64]) -> Vec<u8> {
    let mut bits = hard(soft);
    let parity = bits.iter().fold(0u8, |a, &b| a ^ b);
    if parity == 1 {
        if let Some(i) = (0..soft.len()).min_by(|&a, &b| soft[a].abs().total_cmp(&soft[b].abs())) {
            bits[i] ^= 1;
        }
    }
    bits
}

/// Even-parity word maximizing the correlation with `soft`, by enumeration.
pub fn spc_ml_bruteforce(soft: &[f64]) -> Vec<u8> {
    let n = soft.len();
    assert!(n <= 20, "enumeration limited to n <= 20");
    let mut best = (f64::NEG_INFINITY, 0u32);
    for w in 0u32..1 << n {
        if w.count_ones() % 2 == 1 {
            continue;
        }
        let c: f64 = (0..n).map(|i| if w >> i & 1 == 1 { soft[i] } else { -soft[i] }).sum();
        if c > best.0 {
            best = (c, w);
        }
    }
    (0..n).map(|i| (best.1 >> i & 1) as u8).collect()
}

/// `G_c = 10 log10(d_min k / n)` dB.
pub fn coding_gain(d_min: usize, k: usize, n: usize) -> f64 {
    10.0 * (d_min as f64 * k as f64 / n as f64).log10()
}

/// `2^k Q(sqrt(d_min R E_b / sigma^2))` with `sigma^2 = N_0 / 2` and linear `E_b/N_0`.
pub fn union_bound(k: usize, d_min: usize, rate: f64, ebn0: f64) -> f64 {
    (2f64).powi(k as i32) * q_function((2.0 * d_min as f64 * rate * ebn0).sqrt())
}

/// Uncoded bit error probability `Q(sqrt(2 E_b / N_0))`.
pub fn uncoded_ber(ebn0: f64) -> f64 {
    q_function((2.0 * ebn0).sqrt())
}

/// Extra gain from appending a parity bit to each m-bit symbol.
pub fn symbol_parity_gain_db(m: u32) -> f64 {
    10.0 * (2.0 * m as f64 / (m as f64 + 1.0)).log10()
}

/// Extra gain from a parity word over blocks of `rows` words.
pub fn block_parity_gain_db(rows: usize) -> f64 {
    10.0 * (2.0 * (rows as f64 - 1.0) / rows as f64).log10()
}

/// Symbol error estimate `C(m+1, 2) Q(sqrt(4 R E_b / N_0))`, `R = (k/n) m/(m+1)`.
pub fn symbol_parity_ser(m: u32, k: usize, n: usize, ebn0: f64) -> f64 {
    let r = k as f64 / n as f64 * m as f64 / (m as f64 + 1.0);
    binom(m as u64 + 1, 2) * q_function((4.0 * r * ebn0).sqrt())
}

/// Symbol error estimate `m (N-1) Q(sqrt(4 R E_b / N_0))`, `R = (k/n)(N-1)/N`.
pub fn block_parity_ser(m: u32, k: usize, n: usize, rows: usize, ebn0: f64) -> f64 {
    let r = k as f64 / n as f64 * (rows as f64 - 1.0) / rows as f64;
    m as f64 * (rows as f64 - 1.0) * q_function((4.0 * r * ebn0).sqrt())
}

/// Hard-decision symbol error `m Q(sqrt(2 (k/n) E_b / N_0))`.
pub fn hard_symbol_ser(m: u32, k: usize, n: usize, ebn0: f64) -> f64 {
    m as f64 * q_function((2.0 * k as f64 / n as f64 * ebn0).sqrt())
}

/// Gain of a measured BER over uncoded transmission at the same `E_b/N_0`,
/// through the SNR at which uncoded transmission reaches that BER.
pub fn equivalent_gain_db(ber: f64, ebn0_db: f64) -> f64 {
    let q = q_inverse(ber);
    10.0 * (q * q / 2.0).log10() - ebn0_db
}

fn symbol_bits(x: FieldElement, m: u32, out: &mut Vec<u8>) {
    out.extend((0..m).map(|i| (x >> i & 1) as u8));
}

fn bits_symbol(bits: &[u8]) -> FieldElement {
    bits.iter().enumerate().fold(0, |a, (i, &b)| a | (FieldElement::from(b) << i))
}

fn word_bits(word: &[FieldElement], m: u32) -> Vec<u8> {
    let mut out = Vec::with_capacity(word.len() * m as usize);
    for &x in word {
        symbol_bits(x, m, &mut out);
    }
    out
}

fn bits_word(bits: &[u8], m: u32) -> Vec<FieldElement> {
    bits.chunks(m as usize).map(bits_symbol).collect()
}

/// RS code over GF(2^m) whose symbols each carry an extra even-parity bit.
#[derive(Clone, Debug)]
pub struct SymbolParityCodec {
    pub rs: RsCode,
    m: u32,
}

impl SymbolParityCodec {
    pub fn new(rs: RsCode) -> Result<Self> {
        if rs.field().characteristic() != 2 {
            return Err(bad("symbol parity needs a binary extension field"));
        }
        let m = rs.field().degree();
        Ok(Self { rs, m })
    }

    pub fn rate(&self) -> f64 {
        self.rs.k() as f64 / self.rs.n() as f64 * self.m as f64 / (self.m as f64 + 1.0)
    }

    pub fn bits_per_word(&self) -> usize {
        self.rs.n() * (self.m as usize + 1)
    }

    pub fn encode(&self, info: &[FieldElement]) -> Vec<u8> {
        let c = self.rs.encode_systematic(info);
        let mut out = Vec::with_capacity(self.bits_per_word());
        for &x in &c {
            symbol_bits(x, self.m, &mut out);
            out.push((x.count_ones() & 1) as u8);
        }
        out
    }

    /// Per-symbol soft parity decoding followed by RS error decoding.
    ///
    /// Returns the information symbols, or the hard-decided systematic part on
    /// RS failure together with `false`.
    pub fn decode(&self, soft: &[f64]) -> (Vec<FieldElement>, bool) {
        let w = self.m as usize + 1;
        let word: Vec<FieldElement> = soft.chunks(w).map(|s| bits_symbol(&spc_soft_decode(s)[..w - 1])).collect();
        let res = self.rs.decode_errors(&word);
        if res.is_corrected() {
            (res.codeword[..self.rs.k()].to_vec(), true)
        } else {
            (word[..self.rs.k()].to_vec(), false)
        }
    }
}

/// How a block of RS words with a parity row was resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockCase {
    /// No flagged row and the parity word vanished.
    Clean,
    /// No flag but a nonzero parity word, added to the most likely row.
    LikelihoodRepair { row: usize },
    /// One flagged row replaced by the sum of the others.
    XorRepair { row: usize },
    /// Several flagged rows re-decoded against the known parity.
    Reiterated { passes: usize },
    /// Re-iteration did not reduce the flagged rows.
    Stopped { flagged: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockOutcome {
    /// Decoded words, parity row last.
    pub rows: Vec<Vec<FieldElement>>,
    pub case: BlockCase,
    /// Rows flagged by the first RS pass.
    pub first_flags: Vec<usize>,
}

/// `N-1` RS words plus their bitwise sum, with soft parity decoding down each bit column.
#[derive(Clone, Debug)]
pub struct BlockParityCodec {
    pub rs: RsCode,
    pub rows: usize,
    pub max_passes: usize,
    m: u32,
}

impl BlockParityCodec {
    pub fn new(rs: RsCode, rows: usize) -> Result<Self> {
        if rs.field().characteristic() != 2 {
            return Err(bad("block parity needs a binary extension field"));
        }
        if rows < 2 {
            return Err(bad("a block needs at least two rows"));
        }
        let m = rs.field().degree();
        Ok(Self { rs, rows, max_passes: 3, m })
    }

    pub fn rate(&self) -> f64 {
        self.rs.k() as f64 / self.rs.n() as f64 * (self.rows as f64 - 1.0) / self.rows as f64
    }

    pub fn row_bits(&self) -> usize {
        self.rs.n() * self.m as usize
    }

    /// Encodes `rows - 1` information words; output rows are bit vectors.
    pub fn encode(&self, info: &[Vec<FieldElement>]) -> Result<Vec<Vec<u8>>> {
        if info.len() != self.rows - 1 {
            return Err(bad(format!("expected {} information words", self.rows - 1)));
        }
        let mut out: Vec<Vec<u8>> = info.iter().map(|i| word_bits(&self.rs.encode_systematic(i), self.m)).collect();
        let mut parity = vec![0u8; self.row_bits()];
        for r in &out {
            for (p, &b) in parity.iter_mut().zip(r) {
                *p ^= b;
            }
        }
        out.push(parity);
        Ok(out)
    }

    /// Soft parity decoding of every bit column over the rows in `active`,
    /// whose hard bits must sum to `target`.
    fn column_decode(&self, soft: &[Vec<f64>], active: &[usize], target: &[u8]) -> Vec<Vec<u8>> {
        let mut bits: Vec<Vec<u8>> = active.iter().map(|&i| hard(&soft[i])).collect();
        for j in 0..self.row_bits() {
            let parity = bits.iter().fold(target[j], |a, r| a ^ r[j]);
            if parity == 1 {
                let weakest = (0..active.len()).min_by(|&a, &b| soft[active[a]][j].abs().total_cmp(&soft[active[b]][j].abs()));
                if let Some(w) = weakest {
                    bits[w][j] ^= 1;
                }
            }
        }
        bits
    }

    fn rs_decode(&self, bits: &[u8]) -> Option<Vec<FieldElement>> {
        let res = self.rs.decode_errors(&bits_word(bits, self.m));
        res.is_corrected().then_some(res.codeword)
    }

    /// Decodes a block, falling back to undecoded rows when re-iteration stalls.
    pub fn decode_best_effort(&self, soft: &[Vec<f64>], channel: &AwgnChannel) -> BlockOutcome {
        let n_rows = self.rows;
        let all: Vec<usize> = (0..n_rows).collect();
        let zero = vec![0u8; self.row_bits()];
        let col = self.column_decode(soft, &all, &zero);
        let mut rows: Vec<Option<Vec<FieldElement>>> = col.iter().map(|b| self.rs_decode(b)).collect();
        let first_flags: Vec<usize> = (0..n_rows).filter(|&i| rows[i].is_none()).collect();
        let mut fallback: Vec<Vec<FieldElement>> = col.iter().map(|b| bits_word(b, self.m)).collect();

        // Bitwise sum of the unflagged rows.
        let parity_of = |rows: &[Option<Vec<FieldElement>>]| -> Vec<FieldElement> {
            let mut e = vec![0; self.rs.n()];
            for r in rows.iter().flatten() {
                for (x, &y) in e.iter_mut().zip(r) {
                    *x ^= y;
                }
            }
            e
        };

        let mut flagged = first_flags.clone();
        let case = match flagged.len() {
            0 => {
                let e = parity_of(&rows);
                if e.iter().all(|&x| x == 0) {
                    BlockCase::Clean
                } else {
                    let row = self.likelihood_choice(soft, &rows, &e, channel);
                    if let Some(r) = rows[row].as_mut() {
                        for (x, &y) in r.iter_mut().zip(&e) {
                            *x ^= y;
                        }
                    }
                    BlockCase::LikelihoodRepair { row }
                }
            }
            1 => {
                let row = flagged[0];
                rows[row] = Some(parity_of(&rows));
                BlockCase::XorRepair { row }
            }
            _ => {
                let mut passes = 0;
                loop {
                    if passes == self.max_passes {
                        break BlockCase::Stopped { flagged: flagged.len() };
                    }
                    passes += 1;
                    let target = word_bits(&parity_of(&rows), self.m);
                    let bits = self.column_decode(soft, &flagged, &target);
                    for (b, &i) in bits.iter().zip(&flagged) {
                        rows[i] = self.rs_decode(b);
                        fallback[i] = bits_word(b, self.m);
                    }
                    let still: Vec<usize> = flagged.iter().copied().filter(|&i| rows[i].is_none()).collect();
                    if still.len() <= 1 {
                        if let Some(&row) = still.first() {
                            rows[row] = Some(parity_of(&rows));
                        }
                        break BlockCase::Reiterated { passes };
                    }
                    if still.len() >= flagged.len() {
                        break BlockCase::Stopped { flagged: still.len() };
                    }
                    flagged = still;
                }
            }
        };
        let rows = rows.into_iter().zip(fallback).map(|(r, f)| r.unwrap_or(f)).collect();
        BlockOutcome { rows, case, first_flags }
    }

    /// Decodes a block; stalled re-iteration is reported as [`Error::DecodingStopped`].
    pub fn decode(&self, soft: &[Vec<f64>], channel: &AwgnChannel) -> Result<BlockOutcome> {
        if soft.len() != self.rows || soft.iter().any(|r| r.len() != self.row_bits()) {
            return Err(bad("soft block has the wrong shape"));
        }
        let out = self.decode_best_effort(soft, channel);
        match out.case {
            BlockCase::Stopped { .. } => Err(Error::DecodingStopped),
            _ => Ok(out),
        }
    }

    /// Row whose modification by `e` is most likely, judged on the nonzero bits of `e` only.
    pub fn likelihood_choice(&self, soft: &[Vec<f64>], rows: &[Option<Vec<FieldElement>>], e: &[FieldElement], channel: &AwgnChannel) -> usize {
        let e_bits = word_bits(e, self.m);
        let support: Vec<usize> = (0..e_bits.len()).filter(|&j| e_bits[j] == 1).collect();
        let mut best = (f64::NEG_INFINITY, 0);
        for (i, row) in rows.iter().enumerate() {
            let Some(row) = row else { continue };
            let b = word_bits(row, self.m);
            // log p(R_i | RS_i + E) - log p(R_i | RS_i); the other factors are common.
            let delta: f64 = support
                .iter()
                .map(|&j| channel.log_likelihood(soft[i][j], b[j] ^ 1) - channel.log_likelihood(soft[i][j], b[j]))
                .sum();
            if delta > best.0 {
                best = (delta, i);
            }
        }
        best.1
    }
}

/// Coded transmission schemes compared by [`ber_sim`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BerScheme {
    Uncoded,
    /// `(m+1, m)` single parity check with soft decoding.
    Spc,
    /// Hard-decision RS decoding.
    RsHard,
    /// RS with a parity bit per symbol.
    RsSpcSymbol,
    /// RS rows with a parity row.
    RsSpcBlock,
}

impl BerScheme {
    pub fn name(self) -> &'static str {
        match self {
            BerScheme::Uncoded => "uncoded",
            BerScheme::Spc => "spc",
            BerScheme::RsHard => "rs-hard",
            BerScheme::RsSpcSymbol => "rs-spc-A",
            BerScheme::RsSpcBlock => "rs-spc-B",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::Uncoded, Self::Spc, Self::RsHard, Self::RsSpcSymbol, Self::RsSpcBlock].into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BerConfig {
    pub m: u32,
    pub n: usize,
    pub k: usize,
    /// Rows per block for [`BerScheme::RsSpcBlock`].
    pub block_rows: usize,
    /// Frames (codewords or blocks) per SNR point.
    pub frames: u64,
}

impl Default for BerConfig {
    fn default() -> Self {
        Self { m: 5, n: 31, k: 21, block_rows: 9, frames: 2000 }
    }
}

/// Information bit error rate of `scheme` at `ebn0_db`.
pub fn ber_sim(scheme: BerScheme, cfg: &BerConfig, ebn0_db: f64, seed: u64) -> Result<SimReport> {
    let field = GaloisField::binary_default(cfg.m)?;
    let rs = RsCode::new(&field, cfg.n, cfg.k, if cfg.n == field.order() as usize { Variant::Standard } else { Variant::Shortened })?;
    let sym = SymbolParityCodec::new(rs.clone())?;
    let blk = BlockParityCodec::new(rs.clone(), cfg.block_rows)?;
    let m = cfg.m as usize;
    let rate = match scheme {
        BerScheme::Uncoded => 1.0,
        BerScheme::Spc => m as f64 / (m as f64 + 1.0),
        BerScheme::RsHard => cfg.k as f64 / cfg.n as f64,
        BerScheme::RsSpcSymbol => sym.rate(),
        BerScheme::RsSpcBlock => blk.rate(),
    };
    let mut errors = Proportion::default();
    let mut frame_errors = Proportion::default();
    for frame in 0..cfg.frames {
        let mut r = trial_rng(seed, frame);
        let mut ch = AwgnChannel::from_ebn0_db(ebn0_db, rate, 0)?;
        ch.rng = trial_rng(seed ^ 0xA5A5, frame);
        let (sent, got): (Vec<u8>, Vec<u8>) = match scheme {
            BerScheme::Uncoded => {
                let bits: Vec<u8> = (0..cfg.k * m).map(|_| r.random_range(0..2)).collect();
                let h = hard(&ch.transmit(&bits));
                (bits, h)
            }
            BerScheme::Spc => {
                let mut sent = Vec::new();
                let mut got = Vec::new();
                for _ in 0..cfg.k {
                    let mut w: Vec<u8> = (0..m).map(|_| r.random_range(0..2)).collect();
                    sent.extend_from_slice(&w);
                    w.push(w.iter().fold(0, |a, &b| a ^ b));
                    got.extend_from_slice(&spc_soft_decode(&ch.transmit(&w))[..m]);
                }
                (sent, got)
            }
            BerScheme::RsHard => {
                let info: Vec<FieldElement> = (0..cfg.k).map(|_| r.random_range(0..field.q())).collect();
                let c = word_bits(&rs.encode_systematic(&info), cfg.m);
                let w = bits_word(&hard(&ch.transmit(&c)), cfg.m);
                let res = rs.decode_errors(&w);
                let dec = if res.is_corrected() { res.codeword[..cfg.k].to_vec() } else { w[..cfg.k].to_vec() };
                (word_bits(&info, cfg.m), word_bits(&dec, cfg.m))
            }
            BerScheme::RsSpcSymbol => {
                let info: Vec<FieldElement> = (0..cfg.k).map(|_| r.random_range(0..field.q())).collect();
                let soft = ch.transmit(&sym.encode(&info));
                (word_bits(&info, cfg.m), word_bits(&sym.decode(&soft).0, cfg.m))
            }
            BerScheme::RsSpcBlock => {
                let info: Vec<Vec<FieldElement>> =
                    (0..cfg.block_rows - 1).map(|_| (0..cfg.k).map(|_| r.random_range(0..field.q())).collect()).collect();
                let soft: Vec<Vec<f64>> = blk.encode(&info)?.iter().map(|row| ch.transmit(row)).collect();
                let out = blk.decode_best_effort(&soft, &ch);
                let sent: Vec<u8> = info.iter().flat_map(|i| word_bits(i, cfg.m)).collect();
                let got: Vec<u8> = out.rows[..cfg.block_rows - 1].iter().flat_map(|w| word_bits(&w[..cfg.k], cfg.m)).collect();
                (sent, got)
            }
        };
        let mut any = false;
        for (a, b) in sent.iter().zip(&got) {
            errors.record(a != b);
            any |= a != b;
        }
        frame_errors.record(any);
    }
    Ok(SimReport::new("ber", seed)
        .param("ebn0_db", ebn0_db)
        .param("rate", rate)
        .metric("ber", errors.metric())
        .metric("frame_error_rate", frame_errors.metric())
        .metric("uncoded_ber", Metric::exact(uncoded_ber(db_to_linear(ebn0_db)))))
}

/// Thresholded outputs of an M-frequency envelope detector over n symbol times.
///
/// Row `f` is frequency `f + 1`, column `t` is time `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetectionMatrix {
    pub cells: Vec<Vec<bool>>,
}

/// Channel disturbances on a detection matrix; indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Disturbance {
    /// Background noise raising one envelope.
    Insert { freq: usize, time: usize },
    /// Background noise suppressing one envelope.
    Delete { freq: usize, time: usize },
    /// Permanent tone at one frequency.
    Narrowband(usize),
    /// Burst covering every frequency at one time.
    Impulse(usize),
    /// Deep fade of one frequency.
    Fade(usize),
}

impl DetectionMatrix {
    pub fn zeros(m: usize, n: usize) -> Self {
        Self { cells: vec![vec![false; n]; m] }
    }

    /// Noise-free output for a word of symbols in `1..=m`.
    pub fn from_word(m: usize, word: &[usize]) -> Self {
        let mut d = Self::zeros(m, word.len());
        for (t, &s) in word.iter().enumerate() {
            d.cells[s - 1][t] = true;
        }
        d
    }

    /// Each column given as the set of detected symbols in `1..=m`.
    pub fn from_sets(m: usize, sets: &[Vec<usize>]) -> Self {
        let mut d = Self::zeros(m, sets.len());
        for (t, set) in sets.iter().enumerate() {
            for &s in set {
                d.cells[s - 1][t] = true;
            }
        }
        d
    }

    pub fn m(&self) -> usize {
        self.cells.len()
    }

    pub fn n(&self) -> usize {
        self.cells.first().map_or(0, Vec::len)
    }

    pub fn get(&self, freq: usize, time: usize) -> bool {
        self.cells[freq][time]
    }

    /// Detected symbols (in `1..=m`) at time `t`.
    pub fn column_set(&self, t: usize) -> Vec<usize> {
        (0..self.m()).filter(|&f| self.cells[f][t]).map(|f| f + 1).collect()
    }

    pub fn apply(&mut self, d: Disturbance) {
        match d {
            Disturbance::Insert { freq, time } => self.cells[freq][time] = true,
            Disturbance::Delete { freq, time } => self.cells[freq][time] = false,
            Disturbance::Narrowband(f) => self.cells[f].iter_mut().for_each(|c| *c = true),
            Disturbance::Impulse(t) => self.cells.iter_mut().for_each(|r| r[t] = true),
            Disturbance::Fade(f) => self.cells[f].iter_mut().for_each(|c| *c = false),
        }
    }

    pub fn disturbed(&self, ds: &[Disturbance]) -> Self {
        let mut out = self.clone();
        for &d in ds {
            out.apply(d);
        }
        out
    }
}

/// Threshold `sqrt(E_s)/2 + offset` applied to every envelope.
pub fn mfsk_detect(envelopes: &[Vec<f64>], es: f64, offset: f64) -> DetectionMatrix {
    let thr = 0.5 * es.sqrt() + offset;
    DetectionMatrix { cells: envelopes.iter().map(|r| r.iter().map(|&e| e > thr).collect()).collect() }
}

/// Non-coherent envelopes for `word` with complex Gaussian noise of variance `sigma2` per component.
pub fn mfsk_envelopes(m: usize, word: &[usize], es: f64, sigma2: f64, r: &mut impl Rng) -> Vec<Vec<f64>> {
    let s = sigma2.sqrt();
    let mut env = vec![vec![0.0; word.len()]; m];
    for (t, &sym) in word.iter().enumerate() {
        for (f, row) in env.iter_mut().enumerate() {
            let a = if f + 1 == sym { es.sqrt() } else { 0.0 };
            let i: f64 = r.sample(StandardNormal);
            let q: f64 = r.sample(StandardNormal);
            row[t] = ((a + s * i).powi(2) + (s * q).powi(2)).sqrt();
        }
    }
    env
}

/// Set of words of length M, each a permutation of `1..=M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationCode {
    pub m: usize,
    pub words: Vec<Vec<usize>>,
    pub d_min: usize,
}

fn hamming(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `M! / (d - 1)!`.
pub fn perm_bound(m: usize, d: usize) -> u128 {
    if d == 0 || d > m {
        return 0;
    }
    factorial(m) / factorial(d - 1)
}

/// All permutations of `1..=m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (1..=m).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
        let j = (i + 1..m).rev().find(|&j| p[j] > p[i]).expect("successor exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

impl PermutationCode {
    pub fn new(m: usize, words: Vec<Vec<usize>>) -> Result<Self> {
        for w in &words {
            let mut s = w.clone();
            s.sort_unstable();
            if s != (1..=m).collect::<Vec<_>>() {
                return Err(bad(format!("{w:?} is not a permutation of 1..={m}")));
            }
        }
        let mut d_min = m;
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                d_min = d_min.min(hamming(&words[i], &words[j]));
            }
        }
        Ok(Self { m, words, d_min })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Words `x + y (0, 1, alpha, ..., alpha^{M-2})`, `y != 0`, over GF(2^m), as labels plus one.
    pub fn rs_derived(field: &GaloisField) -> Result<Self> {
        if field.characteristic() != 2 {
            return Err(bad("construction needs GF(2^m)"));
        }
        let q = field.q() as usize;
        let points: Vec<FieldElement> = std::iter::once(0).chain((0..q as i64 - 1).map(|i| field.alpha_pow(i))).collect();
        let mut words = Vec::with_capacity(q * (q - 1));
        for x in 0..q as FieldElement {
            for y in 1..q as FieldElement {
                words.push(points.iter().map(|&p| field.add(x, field.mul(y, p)) as usize + 1).collect());
            }
        }
        Self::new(q, words)
    }

    /// Largest code of length `m <= 5` with distance at least `d`, by exact maximum-clique search.
    pub fn search(m: usize, d: usize) -> Result<Self> {
        if m > 5 {
            return Err(Error::TooLarge(format!("exhaustive permutation search for M = {m}")));
        }
        if d == 0 || d > m {
            return Err(bad("distance must lie in 1..=M"));
        }
        let perms = permutations(m);
        let adj: Vec<Vec<bool>> = perms.iter().map(|a| perms.iter().map(|b| a != b && hamming(a, b) >= d).collect()).collect();
        // Codes are closed under relabelling, so the identity may be assumed present.
        let cand: Vec<usize> = (1..perms.len()).filter(|&v| adj[0][v]).collect();
        let mut cur = vec![0];
        let mut best = vec![0];
        max_clique(&adj, cand, &mut cur, &mut best);
        best.sort_unstable();
        Self::new(m, best.iter().map(|&i| perms[i].clone()).collect())
    }

    /// Index of the word with the most agreements with the detector output.
    pub fn decode(&self, det: &DetectionMatrix) -> Result<usize> {
        let scores: Vec<usize> = self.words.iter().map(|w| self.agreements(w, det)).collect();
        let best = *scores.iter().max().ok_or(Error::DecodeFailure)?;
        let mut top = scores.iter().enumerate().filter(|(_, &s)| s == best);
        let (i, _) = top.next().expect("nonempty");
        if top.next().is_some() {
            return Err(Error::Ambiguous);
        }
        Ok(i)
    }

    pub fn agreements(&self, word: &[usize], det: &DetectionMatrix) -> usize {
        word.iter().enumerate().filter(|&(t, &s)| det.get(s - 1, t)).count()
    }
}

fn color_sort(adj: &[Vec<bool>], cand: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in cand {
        match classes.iter_mut().find(|c| c.iter().all(|&u| !adj[u][v])) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut order = Vec::with_capacity(cand.len());
    let mut colors = Vec::with_capacity(cand.len());
    for (c, class) in classes.iter().enumerate() {
        for &v in class {
            order.push(v);
            colors.push(c + 1);
        }
    }
    (order, colors)
}

fn max_clique(adj: &[Vec<bool>], cand: Vec<usize>, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
    let (order, colors) = color_sort(adj, &cand);
    for i in (0..order.len()).rev() {
        if cur.len() + colors[i] <= best.len() {
            return;
        }
        let v = order[i];
        cur.push(v);
        let next: Vec<usize> = order[..i].iter().copied().filter(|&u| adj[v][u]).collect();
        if next.is_empty() {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
        } else {
            max_clique(adj, next, cur, best);
        }
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_parity_example() {
        assert_eq!(spc_soft_decode(&[4.0, 3.0, -4.0, -1.0, -3.0, 5.0]), vec![1, 1, 0, 1, 0, 1]);
        assert_eq!(spc_soft_decode(&[4.0, 3.0, -4.0, 1.0, -3.0, 5.0]), vec![1, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn p_bsc_at_unit_snr() {
        let ch = AwgnChannel::new(1.0, 1.0, 0).unwrap();
        assert!((ch.p_bsc() - 0.158_655_253_931_457).abs() < 1e-9);
    }

    #[test]
    fn gain_markers() {
        assert!((coding_gain(2, 5, 6) - coding_gain(2, 1, 1) - 10.0 * (5.0f64 / 6.0).log10()).abs() < 1e-12);
        assert!((coding_gain(2, 1, 1) - 3.0103).abs() < 1e-4);
        assert_eq!(coding_gain(3, 1, 3), 0.0);
        assert!((symbol_parity_gain_db(5) - 2.218).abs() < 1e-3);
        assert!((block_parity_gain_db(9) - 2.499).abs() < 1e-3);
    }

    #[test]
    fn permutations_of_three() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[5], vec![3, 2, 1]);
        assert_eq!(perm_bound(5, 4), 20);
    }

    #[test]
    fn noiseless_detection_is_the_word() {
        let env = vec![vec![2.0, 0.0, 0.0], vec![0.0, 2.0, 0.0], vec![0.0, 0.0, 2.0]];
        assert_eq!(mfsk_detect(&env, 4.0, 0.0), DetectionMatrix::from_word(3, &[1, 2, 3]));
    }
}
