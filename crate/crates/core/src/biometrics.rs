//! Biometric reconstruction and key binding with RS codes: syndrome storage,
//! fuzzy commitment over full-length and fixed-size templates, the fuzzy vault
//! and its polynomial-offset variant.
//!
//! Codes are the narrow-sense `(2^m - 1, k)` RS codes whose codeword for `P` is
//! `(P(1), P(alpha), ..., P(alpha^{n-1}))`. A property set is a set of distinct
//! nonzero field labels; label `beta` points at position `log_alpha(beta)`.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::entropy::binom;
use crate::error::{bad, Error, Result};
use crate::galois::{FieldElement, GaloisField};
use crate::poly;
use crate::rs_core::{RsCode, Variant};
use crate::sim::{rng, trial_rng, Metric, Proportion, SimReport};

/// SHA-256 of the little-endian 32-bit encodings of the symbols, as hex.
pub fn commitment(p: &[FieldElement]) -> String {
    let mut h = Sha256::new();
    for &x in p {
        h.update(x.to_le_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// A biometric: either a full vector of n symbols or a set of t distinct nonzero labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BiometricTemplate {
    Full(Vec<FieldElement>),
    Properties(Vec<FieldElement>),
}

impl BiometricTemplate {
    pub fn properties(values: Vec<FieldElement>) -> Result<Self> {
        let mut s = values.clone();
        s.sort_unstable();
        s.dedup();
        if s.len() != values.len() || s.first() == Some(&0) {
            return Err(bad("properties must be distinct nonzero labels"));
        }
        Ok(Self::Properties(values))
    }

    pub fn symbols(&self) -> &[FieldElement] {
        match self {
            Self::Full(v) | Self::Properties(v) => v,
        }
    }
}

/// What the data base keeps for one enrolled user.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "kebab-case")]
pub enum VaultRecord {
    /// `b H^T`.
    Syndrome { m: u32, n: usize, k: usize, syndrome: Vec<FieldElement> },
    /// `b + c` and the commitment to P.
    Jw { m: u32, n: usize, k: usize, masked: Vec<FieldElement>, digest: String },
    /// Codeword kept at the t pointed positions and altered elsewhere.
    JwT { m: u32, n: usize, k: usize, word: Vec<FieldElement>, digest: String },
    /// `P(alpha^i)` at the pointed positions, chaff elsewhere.
    Js { m: u32, n: usize, k: usize, word: Vec<FieldElement>, digest: String },
    /// The t low coefficients of `P(X) + prod (X - b_i)`; the `X^t` coefficient is 1.
    JsDodis { m: u32, n: usize, k: usize, q_coeffs: Vec<FieldElement>, digest: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum AuthOutcome {
    Accept(Vec<FieldElement>),
    Reject,
}

impl AuthOutcome {
    pub fn accepted(&self) -> bool {
        matches!(self, AuthOutcome::Accept(_))
    }
}

/// Enrollment and authentication over one RS code.
#[derive(Clone, Debug)]
pub struct Vault {
    pub code: RsCode,
}

impl Vault {
    pub fn new(m: u32, k: usize) -> Result<Self> {
        let f = GaloisField::binary_default(m)?;
        let n = f.order() as usize;
        Ok(Self { code: RsCode::new(&f, n, k, Variant::Standard)? })
    }

    fn for_record(m: u32, n: usize, k: usize) -> Result<Self> {
        let v = Self::new(m, k)?;
        if v.code.n() != n {
            return Err(bad(format!("record length {n} does not match GF(2^{m})")));
        }
        Ok(v)
    }

    fn dims(&self) -> (u32, usize, usize) {
        (self.code.field().degree(), self.code.n(), self.code.k())
    }

    fn field(&self) -> &GaloisField {
        self.code.field()
    }

    pub fn position(&self, label: FieldElement) -> Result<usize> {
        self.field().log(label).map(|l| l as usize).ok_or_else(|| bad("property label 0 has no position"))
    }

    fn positions(&self, props: &[FieldElement]) -> Result<Vec<usize>> {
        props.iter().map(|&b| self.position(b)).collect()
    }

    fn random_secret(&self, r: &mut impl Rng) -> Vec<FieldElement> {
        (0..self.code.k()).map(|_| r.random_range(0..self.field().q())).collect()
    }

    fn full(&self, b: &BiometricTemplate) -> Result<Vec<FieldElement>> {
        match b {
            BiometricTemplate::Full(v) if v.len() == self.code.n() => Ok(v.clone()),
            _ => Err(bad(format!("expected a full template of {} symbols", self.code.n()))),
        }
    }

    fn props(&self, b: &BiometricTemplate) -> Result<Vec<FieldElement>> {
        match b {
            BiometricTemplate::Properties(v) if v.len() >= self.code.k() && v.len() <= self.code.n() => Ok(v.clone()),
            _ => Err(bad("expected a property set of size between k and n")),
        }
    }

    pub fn syndrome_enroll(&self, b: &BiometricTemplate) -> Result<VaultRecord> {
        let (m, n, k) = self.dims();
        Ok(VaultRecord::Syndrome { m, n, k, syndrome: self.code.syndrome(&self.full(b)?) })
    }

    /// Decodes `e` from `b' H^T - s` and returns `b' - e`.
    pub fn syndrome_reconstruct(&self, syndrome: &[FieldElement], noisy: &BiometricTemplate) -> Result<Vec<FieldElement>> {
        let f = self.field();
        let bt = self.full(noisy)?;
        let s: Vec<FieldElement> = self.code.syndrome(&bt).iter().zip(syndrome).map(|(&a, &b)| f.sub(a, b)).collect();
        let sol = self.code.decode_syndrome(&s, &[])?.ok_or(Error::ReconstructFailure)?;
        let mut b = bt;
        for (&p, &v) in sol.positions.iter().zip(&sol.values) {
            b[p] = f.sub(b[p], v);
        }
        if self.code.syndrome(&b) != syndrome {
            return Err(Error::ReconstructFailure);
        }
        Ok(b)
    }

    pub fn jw_enroll(&self, b: &BiometricTemplate, seed: u64) -> Result<VaultRecord> {
        let f = self.field();
        let bn = self.full(b)?;
        let p = self.random_secret(&mut rng(seed));
        let c = self.code.encode(&p);
        let masked = bn.iter().zip(&c).map(|(&x, &y)| f.add(x, y)).collect();
        let (m, n, k) = self.dims();
        Ok(VaultRecord::Jw { m, n, k, masked, digest: commitment(&p) })
    }

    fn accept_if(&self, p: Vec<FieldElement>, digest: &str) -> AuthOutcome {
        if commitment(&p) == digest {
            AuthOutcome::Accept(p)
        } else {
            AuthOutcome::Reject
        }
    }

    fn jw_auth(&self, masked: &[FieldElement], digest: &str, noisy: &BiometricTemplate) -> Result<AuthOutcome> {
        let f = self.field();
        let bt = self.full(noisy)?;
        let y: Vec<FieldElement> = masked.iter().zip(&bt).map(|(&x, &b)| f.sub(x, b)).collect();
        let res = self.code.decode_errors(&y);
        if !res.is_corrected() {
            return Ok(AuthOutcome::Reject);
        }
        Ok(self.accept_if(self.code.info_of(&res.codeword), digest))
    }

    /// Codeword of a random P kept at the pointed positions, every other symbol
    /// replaced by a uniformly chosen different value.
    fn pointed_word(&self, props: &[FieldElement], r: &mut impl Rng) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
        let f = self.field();
        let p = self.random_secret(r);
        let mut word = self.code.encode(&p);
        let keep = self.positions(props)?;
        for (j, x) in word.iter_mut().enumerate() {
            if !keep.contains(&j) {
                *x = f.add(*x, r.random_range(1..f.q()));
            }
        }
        Ok((p, word))
    }

    pub fn jw_fixed_t_enroll(&self, b: &BiometricTemplate, seed: u64) -> Result<VaultRecord> {
        let props = self.props(b)?;
        let (p, word) = self.pointed_word(&props, &mut rng(seed))?;
        let (m, n, k) = self.dims();
        Ok(VaultRecord::JwT { m, n, k, word, digest: commitment(&p) })
    }

    pub fn js_enroll(&self, b: &BiometricTemplate, seed: u64) -> Result<VaultRecord> {
        let props = self.props(b)?;
        let (p, word) = self.pointed_word(&props, &mut rng(seed))?;
        let (m, n, k) = self.dims();
        Ok(VaultRecord::Js { m, n, k, word, digest: commitment(&p) })
    }

    /// Reads the stored word at the offered positions and erasure-decodes the rest.
    fn pointed_auth(&self, word: &[FieldElement], digest: &str, noisy: &BiometricTemplate) -> Result<AuthOutcome> {
        let props = self.props(noisy)?;
        let keep = self.positions(&props)?;
        let erasures: Vec<usize> = (0..self.code.n()).filter(|j| !keep.contains(j)).collect();
        let res = self.code.decode_errors_and_erasures(word, &erasures)?;
        if !res.is_corrected() {
            return Ok(AuthOutcome::Reject);
        }
        Ok(self.accept_if(self.code.info_of(&res.codeword), digest))
    }

    pub fn dodis_enroll(&self, b: &BiometricTemplate, seed: u64) -> Result<VaultRecord> {
        let f = self.field();
        let props = self.props(b)?;
        let p = self.random_secret(&mut rng(seed));
        let q = poly::add(f, &p, &poly::from_roots(f, &props));
        let t = props.len();
        let mut q_coeffs = q[..t.min(q.len())].to_vec();
        q_coeffs.resize(t, 0);
        let (m, n, k) = self.dims();
        Ok(VaultRecord::JsDodis { m, n, k, q_coeffs, digest: commitment(&p) })
    }

    /// `Q(X) = sum q_i X^i + X^t`.
    pub fn dodis_eval(&self, q_coeffs: &[FieldElement], x: FieldElement) -> FieldElement {
        let f = self.field();
        let mut full = q_coeffs.to_vec();
        full.push(1);
        poly::eval(f, &full, x)
    }

    fn dodis_auth(&self, q_coeffs: &[FieldElement], digest: &str, noisy: &BiometricTemplate) -> Result<AuthOutcome> {
        let props = self.props(noisy)?;
        let mut word = vec![0; self.code.n()];
        for &b in &props {
            word[self.position(b)?] = self.dodis_eval(q_coeffs, b);
        }
        self.pointed_auth(&word, digest, noisy)
    }

    pub fn enroll(&self, scheme: Scheme, b: &BiometricTemplate, seed: u64) -> Result<VaultRecord> {
        match scheme {
            Scheme::Syndrome => self.syndrome_enroll(b),
            Scheme::Jw => self.jw_enroll(b, seed),
            Scheme::JwT => self.jw_fixed_t_enroll(b, seed),
            Scheme::Js => self.js_enroll(b, seed),
            Scheme::JsDodis => self.dodis_enroll(b, seed),
        }
    }
}

/// Authenticates a presented template against a stored record.
///
/// The syndrome scheme accepts when reconstruction succeeds and returns the
/// reconstructed biometric.
pub fn authenticate(record: &VaultRecord, noisy: &BiometricTemplate) -> Result<AuthOutcome> {
    match record {
        VaultRecord::Syndrome { m, n, k, syndrome } => {
            let v = Vault::for_record(*m, *n, *k)?;
            match v.syndrome_reconstruct(syndrome, noisy) {
                Ok(b) => Ok(AuthOutcome::Accept(b)),
                Err(Error::ReconstructFailure) => Ok(AuthOutcome::Reject),
                Err(e) => Err(e),
            }
        }
        VaultRecord::Jw { m, n, k, masked, digest } => Vault::for_record(*m, *n, *k)?.jw_auth(masked, digest, noisy),
        VaultRecord::JwT { m, n, k, word, digest } | VaultRecord::Js { m, n, k, word, digest } => {
            Vault::for_record(*m, *n, *k)?.pointed_auth(word, digest, noisy)
        }
        VaultRecord::JsDodis { m, n, k, q_coeffs, digest } => Vault::for_record(*m, *n, *k)?.dodis_auth(q_coeffs, digest, noisy),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    Syndrome,
    Jw,
    JwT,
    Js,
    JsDodis,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Syndrome => "syndrome",
            Scheme::Jw => "jw",
            Scheme::JwT => "jw-t",
            Scheme::Js => "js",
            Scheme::JsDodis => "js-dodis",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::Syndrome, Self::Jw, Self::JwT, Self::Js, Self::JsDodis].into_iter().find(|x| x.name() == s)
    }

    pub fn uses_properties(self) -> bool {
        matches!(self, Scheme::JwT | Scheme::Js | Scheme::JsDodis)
    }
}

/// `sum_{i > floor((n-k)/2)} C(n,i) p^i (1-p)^{n-i}`.
pub fn frr_bound(n: usize, k: usize, p: f64) -> f64 {
    let t = (n - k) / 2;
    (t + 1..=n).map(|i| binom(n as u64, i as u64) * p.powi(i as i32) * (1.0 - p).powi((n - i) as i32)).sum()
}

/// `(n p)^{floor((n-k)/2) + 1}`.
pub fn frr_approx(n: usize, k: usize, p: f64) -> f64 {
    (n as f64 * p).powi(((n - k) / 2 + 1) as i32)
}

/// Vault rejection estimate `(t p)^{1 + floor((t-k)/2)}`.
pub fn frr_js_approx(t: usize, k: usize, p: f64) -> f64 {
    (t as f64 * p).powi((1 + (t - k) / 2) as i32)
}

/// `sum_{i <= floor((n-k)/2)} C(n,i) (n+1)^{-(n-k)}`: a random syndrome is accepted.
pub fn far_syndrome(n: usize, k: usize) -> f64 {
    let t = (n - k) / 2;
    (0..=t).map(|i| binom(n as u64, i as u64)).sum::<f64>() * (n as f64 + 1.0).powi(-((n - k) as i32))
}

/// Exact fraction of syndromes with a coset leader of weight at most `floor((n-k)/2)`.
pub fn far_syndrome_exact(n: usize, k: usize, q: u64) -> f64 {
    let t = (n - k) / 2;
    (0..=t).map(|i| binom(n as u64, i as u64) * (q as f64 - 1.0).powi(i as i32)).sum::<f64>() / (q as f64).powi((n - k) as i32)
}

/// `sum_{i <= floor((n-k)/2)} C(n,i) (n+1)^{-n}`.
pub fn far_jw(n: usize, k: usize) -> f64 {
    let t = (n - k) / 2;
    (0..=t).map(|i| binom(n as u64, i as u64)).sum::<f64>() * (n as f64 + 1.0).powi(-(n as i32))
}

/// Probability that a uniform word lies within `floor((n-k)/2)` of a fixed codeword.
pub fn far_jw_exact(n: usize, k: usize, q: u64) -> f64 {
    let t = (n - k) / 2;
    (0..=t).map(|i| binom(n as u64, i as u64) * (q as f64 - 1.0).powi(i as i32)).sum::<f64>() / (q as f64).powi(n as i32)
}

/// `C(t,k) C(n-k, t-k) / C(n,t) = C(t,k)^2 / C(n,k)`, unclipped.
pub fn far_js(n: usize, t: usize, k: usize) -> f64 {
    let (n, t, k) = (n as u64, t as u64, k as u64);
    binom(t, k) * binom(n - k, t - k) / binom(n, t)
}

/// Chance that k guessed positions all carry genuine values, `C(t,k) / C(n,k)`.
pub fn js_guess(n: usize, t: usize, k: usize) -> f64 {
    binom(t as u64, k as u64) / binom(n as u64, k as u64)
}

/// `(q^{-k}, q^{n-k} max P(b))` for the syndrome and full-length schemes.
pub fn guess_bounds_syndrome(n: usize, k: usize, q: u64, max_prob: f64) -> (f64, f64) {
    let q = q as f64;
    (q.powi(-(k as i32)), q.powi((n - k) as i32) * max_prob)
}

/// `(q^{-k}, (q/(q-1))^n q^{t-k} max P(b^t))` for the vault.
pub fn guess_bounds_vault(n: usize, t: usize, k: usize, q: u64, max_prob: f64) -> (f64, f64) {
    let q = q as f64;
    (q.powi(-(k as i32)), (q / (q - 1.0)).powi(n as i32) * q.powi(t as i32 - k as i32) * max_prob)
}

/// Random template of the same kind as `like`.
pub fn random_template(f: &GaloisField, like: &BiometricTemplate, r: &mut impl Rng) -> BiometricTemplate {
    match like {
        BiometricTemplate::Full(v) => BiometricTemplate::Full((0..v.len()).map(|_| r.random_range(0..f.q())).collect()),
        BiometricTemplate::Properties(v) => {
            let idx = sample(r, f.order() as usize, v.len());
            BiometricTemplate::Properties(idx.iter().map(|i| i as FieldElement + 1).collect())
        }
    }
}

/// Each symbol (or property) is replaced with probability p by a different value
/// (for property sets: a label outside the set).
pub fn perturb(f: &GaloisField, b: &BiometricTemplate, p: f64, r: &mut impl Rng) -> BiometricTemplate {
    match b {
        BiometricTemplate::Full(v) => BiometricTemplate::Full(
            v.iter().map(|&x| if r.random_bool(p) { f.add(x, r.random_range(1..f.q())) } else { x }).collect(),
        ),
        BiometricTemplate::Properties(v) => {
            let mut out = v.clone();
            for i in 0..out.len() {
                if r.random_bool(p) {
                    let free: Vec<FieldElement> = (1..f.q()).filter(|x| !out.contains(x)).collect();
                    if !free.is_empty() {
                        out[i] = free[r.random_range(0..free.len())];
                    }
                }
            }
            BiometricTemplate::Properties(out)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FarFrrParams {
    pub m: u32,
    pub k: usize,
    /// Property-set size for the vault schemes.
    pub t: usize,
    /// Per-symbol change probability of a genuine re-presentation.
    pub p: f64,
    pub trials: u64,
}

impl Default for FarFrrParams {
    fn default() -> Self {
        Self { m: 4, k: 3, t: 6, p: 0.05, trials: 10_000 }
    }
}

/// Monte-Carlo false rejection and false acceptance rates against uniform impostors.
pub fn far_frr_sim(scheme: Scheme, prm: &FarFrrParams, seed: u64) -> Result<SimReport> {
    let vault = Vault::new(prm.m, prm.k)?;
    let f = vault.code.field().clone();
    let n = vault.code.n();
    let q = f.q() as u64;
    let mut frr = Proportion::default();
    let mut far = Proportion::default();
    for trial in 0..prm.trials {
        let mut r = trial_rng(seed, trial);
        let b = if scheme.uses_properties() {
            let idx = sample(&mut r, n, prm.t);
            BiometricTemplate::Properties(idx.iter().map(|i| i as FieldElement + 1).collect())
        } else {
            BiometricTemplate::Full((0..n).map(|_| r.random_range(0..f.q())).collect())
        };
        let rec = vault.enroll(scheme, &b, r.random())?;
        let genuine = perturb(&f, &b, prm.p, &mut r);
        frr.record(!authenticate(&rec, &genuine)?.accepted());
        let impostor = random_template(&f, &b, &mut r);
        far.record(authenticate(&rec, &impostor)?.accepted());
    }
    let (far_formula, far_exact, frr_formula) = match scheme {
        Scheme::Syndrome => (far_syndrome(n, prm.k), far_syndrome_exact(n, prm.k, q), frr_bound(n, prm.k, prm.p)),
        Scheme::Jw => (far_jw(n, prm.k), far_jw_exact(n, prm.k, q), frr_bound(n, prm.k, prm.p)),
        _ => (far_js(n, prm.t, prm.k).min(1.0), far_js(n, prm.t, prm.k).min(1.0), frr_js_approx(prm.t, prm.k, prm.p)),
    };
    Ok(SimReport::new(&format!("far-frr-{}", scheme.name()), seed)
        .param("n", n as f64)
        .param("k", prm.k as f64)
        .param("t", prm.t as f64)
        .param("p", prm.p)
        .metric("frr", frr.metric())
        .metric("far", far.metric())
        .metric("frr_formula", Metric::exact(frr_formula))
        .metric("far_formula", Metric::exact(far_formula))
        .metric("far_bound", Metric::exact(far_exact)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_vectors() {
        assert_eq!(commitment(&[]), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
        assert_eq!(commitment(&[1, 2, 3]), "4636993d3e1da4e9d6b8f87b79e8f7c6d018580d52661950eabc3845c5897a4d");
    }

    #[test]
    fn formula_values() {
        assert!((far_syndrome(7, 3) - 29.0 / 4096.0).abs() < 1e-15);
        assert!((far_js(15, 6, 3) - 400.0 / 455.0).abs() < 1e-12);
        assert!((far_js(7, 4, 2) - 36.0 / 21.0).abs() < 1e-12);
        assert!((js_guess(15, 6, 3) - 20.0 / 455.0).abs() < 1e-15);
        assert_eq!(frr_bound(7, 3, 0.0), 0.0);
        assert_eq!(guess_bounds_syndrome(7, 3, 8, 8f64.powi(-7)).0, 8f64.powi(-3));
    }

    #[test]
    fn clean_presentation_accepted_by_every_scheme() {
        let v = Vault::new(3, 3).unwrap();
        let full = BiometricTemplate::Full(vec![1, 2, 3, 4, 5, 6, 7]);
        let props = BiometricTemplate::properties(vec![3, 5, 6, 7, 1]).unwrap();
        for s in [Scheme::Syndrome, Scheme::Jw, Scheme::JwT, Scheme::Js, Scheme::JsDodis] {
            let b = if s.uses_properties() { &props } else { &full };
            let rec = v.enroll(s, b, 11).unwrap();
            assert!(authenticate(&rec, b).unwrap().accepted(), "{}", s.name());
        }
    }

    #[test]
    fn dodis_offset_vanishes_on_the_template() {
        let v = Vault::new(4, 3).unwrap();
        let f = v.code.field().clone();
        let props = vec![2, 9, 11, 14, 5];
        let rec = v.dodis_enroll(&BiometricTemplate::properties(props.clone()).unwrap(), 4).unwrap();
        let VaultRecord::JsDodis { q_coeffs, .. } = rec else { unreachable!() };
        let p = v.random_secret(&mut rng(4));
        for &b in &props {
            assert_eq!(v.dodis_eval(&q_coeffs, b), poly::eval(&f, &p, b));
        }
    }
}
