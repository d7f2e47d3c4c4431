//! Constrained outputs built on linear codes: forbidden-symbol avoidance with
//! control words, run-length-limited block codes with one-message look-ahead,
//! optimum distance profiles under row deletion and extension, and the
//! coset construction that caps repeated symbols per codeword.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{bad, Error, Result};
use crate::galois::{FieldElement, GaloisField};
use crate::matrix::Matrix;
use crate::rs_core::{min_distance, RsCode};

/// Systematic encoder whose last `r` information symbols are a control word
/// chosen so that no output symbol lies in `forbidden`.
#[derive(Clone, Debug)]
pub struct AvoidanceConfig {
    rs: RsCode,
    kappa: usize,
    forbidden: Vec<FieldElement>,
}

impl AvoidanceConfig {
    pub fn new(rs: RsCode, kappa: usize, forbidden: &[FieldElement]) -> Result<Self> {
        let k = rs.k();
        if kappa == 0 || kappa >= k {
            return Err(bad("need 0 < kappa < k so that r = k - kappa >= 1"));
        }
        let mut a: Vec<FieldElement> = forbidden.to_vec();
        a.sort_unstable();
        a.dedup();
        let q = rs.field().q() as usize;
        if a.iter().any(|&x| !rs.field().contains(x)) || a.len() >= q {
            return Err(bad("forbidden set must be a proper subset of the field"));
        }
        // n - k < (q - |A|) / |A|, cross-multiplied to stay in integers
        if !a.is_empty() && (rs.n() - k) * a.len() >= q - a.len() {
            return Err(Error::InfeasibleCapacity(format!("n - k = {} needs fewer than (q - |A|) / |A| redundant symbols", rs.n() - k)));
        }
        Ok(Self { rs, kappa, forbidden: a })
    }

    pub fn rs(&self) -> &RsCode {
        &self.rs
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn r(&self) -> usize {
        self.rs.k() - self.kappa
    }

    pub fn forbidden(&self) -> &[FieldElement] {
        &self.forbidden
    }

    /// Symbols usable for information and control.
    pub fn alphabet(&self) -> Vec<FieldElement> {
        self.rs.field().elements().filter(|x| !self.forbidden.contains(x)).collect()
    }

    fn codeword(&self, info: &[FieldElement], control: &[FieldElement]) -> Vec<FieldElement> {
        let mut u = info.to_vec();
        u.extend_from_slice(control);
        self.rs.g_sys().vec_mul(self.rs.field(), &u)
    }

    fn clean(&self, word: &[FieldElement]) -> bool {
        word.iter().all(|x| !self.forbidden.contains(x))
    }

    fn check_info(&self, info: &[FieldElement]) -> Result<()> {
        if info.len() != self.kappa {
            return Err(bad("information length must equal kappa"));
        }
        if info.iter().any(|x| self.forbidden.contains(x) || !self.rs.field().contains(*x)) {
            return Err(bad("information symbols must avoid the forbidden set"));
        }
        Ok(())
    }

    /// Every control word (lexicographic over the allowed alphabet) that clears `info`.
    pub fn suitable_controls(&self, info: &[FieldElement]) -> Result<Vec<Vec<FieldElement>>> {
        self.check_info(info)?;
        let alphabet = self.alphabet();
        let mut out = Vec::new();
        for_each_word(&alphabet, self.r(), |s| {
            if self.clean(&self.codeword(info, s)) {
                out.push(s.to_vec());
            }
            true
        });
        Ok(out)
    }

    /// First control word in lexicographic order that clears the codeword.
    pub fn encode(&self, info: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_info(info)?;
        let alphabet = self.alphabet();
        let mut found = None;
        for_each_word(&alphabet, self.r(), |s| {
            let c = self.codeword(info, s);
            if self.clean(&c) {
                found = Some(c);
                false
            } else {
                true
            }
        });
        found.ok_or(Error::NoControlWord)
    }

    /// Information symbols after correcting channel errors.
    pub fn decode(&self, received: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if received.len() != self.rs.n() {
            return Err(bad(format!("received word needs {} symbols", self.rs.n())));
        }
        let res = self.rs.decode_errors(received);
        if !res.is_corrected() {
            return Err(Error::DecodeFailure);
        }
        Ok(res.codeword[..self.kappa].to_vec())
    }
}

/// Visits all words of length `len` over `alphabet` in lexicographic order
/// until `visit` returns false.
fn for_each_word(alphabet: &[FieldElement], len: usize, mut visit: impl FnMut(&[FieldElement]) -> bool) {
    if alphabet.is_empty() {
        return;
    }
    let mut idx = vec![0usize; len];
    let mut word: Vec<FieldElement> = vec![alphabet[0]; len];
    loop {
        if !visit(&word) {
            return;
        }
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < alphabet.len() {
                word[i] = alphabet[idx[i]];
                break;
            }
            idx[i] = 0;
            word[i] = alphabet[0];
        }
    }
}

/// Binary block code whose concatenated output keeps every run at least
/// `d + 1` long. Messages with two alternatives are resolved by looking at
/// the previous output and the next message.
#[derive(Clone, Debug, Serialize)]
pub struct RllCode {
    d: usize,
    len: usize,
    words: Vec<Vec<Vec<u8>>>,
    d_min: usize,
}

fn bits(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

impl RllCode {
    /// `words[m]` lists the alternatives for message `m`.
    pub fn new(d: usize, words: Vec<Vec<Vec<u8>>>) -> Result<Self> {
        let len = words.first().and_then(|w| w.first()).map(Vec::len).unwrap_or(0);
        if len == 0 || words.iter().any(|alts| alts.is_empty() || alts.iter().any(|w| w.len() != len || w.iter().any(|&b| b > 1))) {
            return Err(bad("every message needs at least one binary word of the common length"));
        }
        let mut seen = HashSet::new();
        if !words.iter().flatten().all(|w| seen.insert(w.clone())) {
            return Err(bad("codewords must be distinct"));
        }
        let mut d_min = len;
        for (a, alts_a) in words.iter().enumerate() {
            for alts_b in &words[a + 1..] {
                for x in alts_a {
                    for y in alts_b {
                        d_min = d_min.min(x.iter().zip(y).filter(|(p, q)| p != q).count());
                    }
                }
            }
        }
        Ok(Self { d, len, words, d_min })
    }

    /// Rate 3/5 code with minimum run 2 and one-message look-ahead.
    pub fn rate_3_5() -> Self {
        let table: [&[&str]; 8] = [
            &["00011"],
            &["00111"],
            &["11000"],
            &["11100"],
            &["00001", "00110"],
            &["11110", "11001"],
            &["01111", "10011"],
            &["10000", "01100"],
        ];
        let words = table.iter().map(|alts| alts.iter().map(|s| bits(s)).collect()).collect();
        Self::new(1, words).expect("table is well formed")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn word_len(&self) -> usize {
        self.len
    }

    pub fn messages(&self) -> usize {
        self.words.len()
    }

    pub fn alternatives(&self, message: usize) -> &[Vec<u8>] {
        &self.words[message]
    }

    /// Smallest distance between words of different messages.
    pub fn d_min(&self) -> usize {
        self.d_min
    }

    /// Information bits per channel bit.
    pub fn rate(&self) -> f64 {
        (self.words.len() as f64).log2() / self.len as f64
    }

    pub fn encode(&self, messages: &[usize]) -> Result<Vec<u8>> {
        if let Some(&m) = messages.iter().find(|&&m| m >= self.words.len()) {
            return Err(bad(format!("message {m} outside the codebook")));
        }
        let min = self.d + 1;
        let mut out: Vec<u8> = Vec::with_capacity(messages.len() * self.len);
        for (i, &m) in messages.iter().enumerate() {
            // the run still open at the end of the stream, and whether it is the stream's first run
            let tail_start = out.iter().rposition(|&b| Some(&b) != out.last()).map_or(0, |p| p + 1);
            let from_start = tail_start == 0;
            let tail = &out[tail_start..];
            let fits = |seg: &[u8]| first_short_run_from(seg, min, from_start).is_none();
            let choice = self.words[m].iter().find(|w| {
                let mut seg = tail.to_vec();
                seg.extend_from_slice(w);
                match messages.get(i + 1) {
                    None => fits(&seg),
                    Some(&next) => self.words[next].iter().any(|v| {
                        let mut s2 = seg.clone();
                        s2.extend_from_slice(v);
                        fits(&s2)
                    }),
                }
            });
            match choice {
                Some(w) => out.extend_from_slice(w),
                None => return Err(Error::ConstraintViolation(out.len())),
            }
        }
        Ok(out)
    }

    /// Table lookup after checking the run constraint across the whole stream.
    pub fn decode_hard(&self, stream: &[u8]) -> Result<Vec<usize>> {
        if !stream.len().is_multiple_of(self.len) {
            return Err(Error::ConstraintViolation(stream.len() - stream.len() % self.len));
        }
        if let Some(p) = stream.iter().position(|&b| b > 1) {
            return Err(Error::ConstraintViolation(p));
        }
        if let Some(p) = first_short_run(stream, self.d + 1) {
            return Err(Error::ConstraintViolation(p));
        }
        stream
            .chunks(self.len)
            .enumerate()
            .map(|(b, block)| {
                self.words
                    .iter()
                    .position(|alts| alts.iter().any(|w| w == block))
                    .ok_or(Error::ConstraintViolation(b * self.len))
            })
            .collect()
    }

    /// Per block, the message whose word (bit 1 as +1, bit 0 as -1) has the
    /// largest correlation with the received values.
    pub fn decode_soft(&self, soft: &[f64]) -> Result<Vec<usize>> {
        if !soft.len().is_multiple_of(self.len) {
            return Err(bad("soft input must hold whole blocks"));
        }
        Ok(soft
            .chunks(self.len)
            .map(|block| {
                let mut best = (f64::NEG_INFINITY, 0);
                for (m, alts) in self.words.iter().enumerate() {
                    for w in alts {
                        let s: f64 = w.iter().zip(block).map(|(&b, &r)| if b == 1 { r } else { -r }).sum();
                        if s > best.0 {
                            best = (s, m);
                        }
                    }
                }
                best.1
            })
            .collect())
    }
}

/// Start of the first run shorter than `min` that is bounded on both sides.
/// The first and last runs of the stream continue outside it and are not checked.
pub fn first_short_run(stream: &[u8], min: usize) -> Option<usize> {
    first_short_run_from(stream, min, true)
}

fn first_short_run_from(stream: &[u8], min: usize, first_open: bool) -> Option<usize> {
    let mut start = 0;
    for i in 1..=stream.len() {
        if i == stream.len() {
            return None;
        }
        if stream[i] != stream[i - 1] {
            let open = start == 0 && first_open;
            if !open && i - start < min {
                return Some(start);
            }
            start = i;
        }
    }
    None
}

/// Channel bits per unconstrained bit for an RS outer code of rate `rs_rate`
/// and an RLL code of rate `rll_rate` whose shortest run is `d + 1` bits.
/// A value of 1 means the shortest pulse equals the uncoded bit time.
pub fn bandwidth_ratio(rs_rate: f64, rll_rate: f64, d: usize) -> f64 {
    rs_rate * rll_rate * (d + 1) as f64
}

/// Published RS/RLL pairings: (d, RLL input bits, RLL output bits, RS k, RS n).
pub const RLL_RS_PAIRINGS: [(usize, u32, u32, u32, u32); 2] = [(1, 8, 14, 223, 255), (2, 8, 21, 223, 255)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileDirection {
    Deletion,
    Extension,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileMode {
    /// Profile of the matrix as given.
    Given,
    Greedy,
    Exhaustive,
}

impl ProfileDirection {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "deletion" | "del" => Ok(Self::Deletion),
            "extension" | "ext" => Ok(Self::Extension),
            _ => Err(bad(format!("unknown profile direction {s}"))),
        }
    }
}

impl ProfileMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "given" => Ok(Self::Given),
            "greedy" => Ok(Self::Greedy),
            "exhaustive" => Ok(Self::Exhaustive),
            _ => Err(bad(format!("unknown profile mode {s}"))),
        }
    }
}

/// Sub-code minimum distances along a chain of nested codes.
/// Deletion lists `(d_k, ..., d_1)`, extension lists `(delta_1, ..., delta_k)`.
/// `generator` is ordered so that its first `i` rows span the `i`-dimensional member.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceProfile {
    pub direction: ProfileDirection,
    pub values: Vec<usize>,
    #[serde(skip)]
    pub generator: Matrix,
}

/// Largest q^k for exhaustive profile search.
pub const EXHAUSTIVE_LIMIT: u64 = 4096;

/// Distance profile of `g` (given, greedy or exhaustive over all nested chains).
pub fn odp(f: &GaloisField, g: &Matrix, direction: ProfileDirection, mode: ProfileMode) -> Result<DistanceProfile> {
    let k = g.rows();
    if k == 0 || g.rank(f) != k {
        return Err(bad("generator must have full row rank"));
    }
    let size = (f.q() as f64).powi(k as i32);
    if mode == ProfileMode::Exhaustive && (k > 4 || size > EXHAUSTIVE_LIMIT as f64) {
        return Err(Error::TooLarge(format!("exhaustive profile search over q^k = {size}")));
    }
    let mut search = Search { f, dist: HashMap::new() };
    let chain: Vec<Vec<FieldElement>> = match (mode, direction) {
        (ProfileMode::Given, _) => g.to_rows(),
        (ProfileMode::Greedy, ProfileDirection::Deletion) => search.greedy_deletion(g)?,
        (ProfileMode::Greedy, ProfileDirection::Extension) => search.greedy_extension(g)?,
        (ProfileMode::Exhaustive, ProfileDirection::Deletion) => {
            let mut memo = HashMap::new();
            search.best_deletion(&rref(f, &g.to_rows()), &mut memo)?.1
        }
        (ProfileMode::Exhaustive, ProfileDirection::Extension) => {
            let mut memo = HashMap::new();
            search.best_extension(g, &[], &mut memo)?.1
        }
    };
    let generator = Matrix::from_rows(&chain);
    let mut values = Vec::with_capacity(k);
    for i in 1..=k {
        values.push(min_distance(f, &generator.select_rows(&(0..i).collect::<Vec<_>>()))?);
    }
    if direction == ProfileDirection::Deletion {
        values.reverse();
    }
    Ok(DistanceProfile { direction, values, generator })
}

type Basis = Vec<Vec<FieldElement>>;

fn rref(f: &GaloisField, rows: &[Vec<FieldElement>]) -> Basis {
    if rows.is_empty() {
        return Vec::new();
    }
    let e = Matrix::from_rows(rows).echelon(f);
    (0..e.pivots.len()).map(|i| e.reduced.row(i).to_vec()).collect()
}

/// Projective representatives of nonzero vectors of length `k` (first nonzero entry 1).
fn projective_points(q: u32, k: usize) -> Vec<Vec<FieldElement>> {
    let mut out = Vec::new();
    for lead in 0..k {
        let free = k - lead - 1;
        let count = (q as u64).pow(free as u32);
        for mut c in 0..count {
            let mut v = vec![0; k];
            v[lead] = 1;
            for x in v[lead + 1..].iter_mut() {
                *x = (c % q as u64) as FieldElement;
                c /= q as u64;
            }
            out.push(v);
        }
    }
    out
}

struct Search<'a> {
    f: &'a GaloisField,
    dist: HashMap<Basis, usize>,
}

impl Search<'_> {
    fn d(&mut self, basis: &Basis) -> Result<usize> {
        if let Some(&d) = self.dist.get(basis) {
            return Ok(d);
        }
        let d = min_distance(self.f, &Matrix::from_rows(basis))?;
        self.dist.insert(basis.clone(), d);
        Ok(d)
    }

    /// All hyperplanes of the span of `basis`, as reduced bases.
    fn hyperplanes(&self, basis: &Basis) -> Vec<Basis> {
        let r = basis.len();
        let b = Matrix::from_rows(basis);
        projective_points(self.f.q(), r)
            .into_iter()
            .map(|y| {
                let ns = Matrix::from_rows(&[y]).nullspace(self.f);
                rref(self.f, &ns.mul(self.f, &b).to_rows())
            })
            .collect()
    }

    /// All spans of `basis` plus one codeword of `g` outside it.
    fn extensions(&self, g: &Matrix, basis: &Basis) -> Vec<(Vec<FieldElement>, Basis)> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in projective_points(self.f.q(), g.rows()) {
            let v = g.vec_mul(self.f, &x);
            let mut rows = basis.clone();
            rows.push(v.clone());
            let key = rref(self.f, &rows);
            if key.len() == basis.len() + 1 && seen.insert(key.clone()) {
                out.push((v, key));
            }
        }
        out
    }

    /// A vector of `outer` outside the span of `inner` (one dimension less).
    fn complement(&self, outer: &Basis, inner: &Basis) -> Vec<FieldElement> {
        outer
            .iter()
            .find(|v| {
                let mut rows = inner.clone();
                rows.push((*v).clone());
                rref(self.f, &rows).len() > inner.len()
            })
            .expect("outer space is strictly larger")
            .clone()
    }

    fn greedy_deletion(&mut self, g: &Matrix) -> Result<Basis> {
        let mut current = rref(self.f, &g.to_rows());
        let mut removed = Vec::new();
        while current.len() > 1 {
            let mut best: Option<(usize, Basis)> = None;
            for h in self.hyperplanes(&current) {
                let d = self.d(&h)?;
                if best.as_ref().is_none_or(|(bd, _)| d > *bd) {
                    best = Some((d, h));
                }
            }
            let (_, h) = best.expect("at least one hyperplane");
            removed.push(self.complement(&current, &h));
            current = h;
        }
        let mut chain = current;
        chain.extend(removed.into_iter().rev());
        Ok(chain)
    }

    fn greedy_extension(&mut self, g: &Matrix) -> Result<Basis> {
        let mut chain: Basis = Vec::new();
        while chain.len() < g.rows() {
            let mut best: Option<(usize, Vec<FieldElement>)> = None;
            for (v, key) in self.extensions(g, &chain) {
                let d = self.d(&key)?;
                if best.as_ref().is_none_or(|(bd, _)| d > *bd) {
                    best = Some((d, v));
                }
            }
            chain.push(best.expect("code has a vector outside any proper subspace").1);
        }
        Ok(chain)
    }

    /// Best `(d_{r-1}, ..., d_1)` below the span of `basis` and the ordered chain realizing it.
    fn best_deletion(&mut self, basis: &Basis, memo: &mut HashMap<Basis, (Vec<usize>, Basis)>) -> Result<(Vec<usize>, Basis)> {
        if let Some(hit) = memo.get(basis) {
            return Ok(hit.clone());
        }
        let result = if basis.len() == 1 {
            (Vec::new(), basis.clone())
        } else {
            let mut best: Option<(Vec<usize>, Basis)> = None;
            for h in self.hyperplanes(basis) {
                let (tail, chain) = self.best_deletion(&h, memo)?;
                let mut profile = vec![self.d(&h)?];
                profile.extend(tail);
                if best.as_ref().is_none_or(|(bp, _)| profile > *bp) {
                    let mut c = chain;
                    c.push(self.complement(basis, &h));
                    best = Some((profile, c));
                }
            }
            best.expect("at least one hyperplane")
        };
        memo.insert(basis.clone(), result.clone());
        Ok(result)
    }

    /// Best `(delta_{r+1}, ..., delta_k)` above the span of `chain` within the code of `g`.
    fn best_extension(&mut self, g: &Matrix, chain: &[Vec<FieldElement>], memo: &mut HashMap<Basis, (Vec<usize>, Basis)>) -> Result<(Vec<usize>, Basis)> {
        let key = rref(self.f, chain);
        if let Some((profile, suffix)) = memo.get(&key) {
            let mut full = chain.to_vec();
            full.extend(suffix.iter().cloned());
            return Ok((profile.clone(), full));
        }
        if chain.len() == g.rows() {
            return Ok((Vec::new(), chain.to_vec()));
        }
        let mut best: Option<(Vec<usize>, Basis)> = None;
        for (v, span) in self.extensions(g, &chain.to_vec()) {
            let mut next = chain.to_vec();
            next.push(v);
            let (tail, full) = self.best_extension(g, &next, memo)?;
            let mut profile = vec![self.d(&span)?];
            profile.extend(tail);
            if best.as_ref().is_none_or(|(bp, _)| profile > *bp) {
                best = Some((profile, full));
            }
        }
        let (profile, full) = best.expect("code has a vector outside any proper subspace");
        memo.insert(key, (profile.clone(), full[chain.len()..].to_vec()));
        Ok((profile, full))
    }
}

/// Coset of the k-dimensional RS code offset by the next Vandermonde row,
/// so that no symbol value repeats more than `k` times in a codeword.
#[derive(Clone, Debug)]
pub struct SameWeightCode {
    inner: RsCode,
    offset: Vec<FieldElement>,
}

impl SameWeightCode {
    /// `n <= q - 1`, `k + 1 <= n`.
    pub fn new(field: &GaloisField, n: usize, k: usize) -> Result<Self> {
        if k == 0 || k + 1 > n || n > field.order() as usize {
            return Err(bad("need 0 < k < n <= q - 1"));
        }
        let inner = RsCode::new(field, n, k, crate::rs_core::Variant::Standard)?;
        let offset = (0..n).map(|j| field.alpha_pow((k * j) as i64)).collect();
        Ok(Self { inner, offset })
    }

    pub fn rs(&self) -> &RsCode {
        &self.inner
    }

    /// Row `k` of the (k+1)-row Vandermonde matrix.
    pub fn offset(&self) -> &[FieldElement] {
        &self.offset
    }

    pub fn encode(&self, info: &[FieldElement]) -> Vec<FieldElement> {
        let f = self.inner.field();
        self.inner.encode(info).iter().zip(&self.offset).map(|(&c, &o)| f.add(c, o)).collect()
    }

    /// Removes the offset, decodes errors and erasures, and returns the information.
    pub fn decode(&self, received: &[FieldElement], erasures: &[usize]) -> Result<Vec<FieldElement>> {
        let f = self.inner.field();
        if received.len() != self.inner.n() {
            return Err(bad(format!("received word needs {} symbols", self.inner.n())));
        }
        let shifted: Vec<FieldElement> = received.iter().zip(&self.offset).map(|(&r, &o)| f.sub(r, o)).collect();
        let res = self.inner.decode_errors_and_erasures(&shifted, erasures)?;
        if !res.is_corrected() {
            return Err(Error::DecodeFailure);
        }
        Ok(self.inner.info_of(&res.codeword))
    }
}

/// Largest number of times any one symbol value occurs in `word`.
pub fn max_multiplicity(word: &[FieldElement]) -> usize {
    let mut counts: HashMap<FieldElement, usize> = HashMap::new();
    for &s in word {
        *counts.entry(s).or_default() += 1;
    }
    counts.into_values().max().unwrap_or(0)
}

/// Positions masked by narrowband tones on the given symbol values.
pub fn narrowband_erasures(word: &[FieldElement], tones: &[FieldElement]) -> Vec<usize> {
    (0..word.len()).filter(|&j| tones.contains(&word[j])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rs_core::Variant;

    fn gf8() -> GaloisField {
        GaloisField::binary_default(3).unwrap()
    }

    #[test]
    fn control_word_search_order() {
        let f = gf8();
        let rs = RsCode::with_window(&f, 7, 3, Variant::Standard, 5).unwrap();
        let cfg = AvoidanceConfig::new(rs, 2, &[7]).unwrap();
        let ok = cfg.suitable_controls(&[0, 3]).unwrap();
        assert_eq!(ok, vec![vec![2], vec![3], vec![5], vec![6]]);
        assert_eq!(cfg.encode(&[0, 3]).unwrap(), vec![0, 3, 2, 1, 1, 0, 2]);
    }

    #[test]
    fn infeasible_forbidden_set_rejected() {
        let f = gf8();
        let rs = RsCode::new(&f, 7, 3, Variant::Standard).unwrap();
        assert!(AvoidanceConfig::new(rs, 2, &[6, 7]).is_err());
    }

    #[test]
    fn run_scanner_ignores_stream_ends() {
        assert_eq!(first_short_run(&bits("0110011"), 2), None);
        assert_eq!(first_short_run(&bits("1001"), 2), None);
        assert_eq!(first_short_run(&bits("00100"), 2), Some(2));
    }

    #[test]
    fn table_code_shape() {
        let c = RllCode::rate_3_5();
        assert_eq!(c.messages(), 8);
        assert_eq!(c.d_min(), 1);
        assert!((c.rate() - 0.6).abs() < 1e-12);
    }

    #[test]
    fn projective_point_count() {
        assert_eq!(projective_points(2, 4).len(), 15);
        assert_eq!(projective_points(8, 3).len(), 73);
    }

    #[test]
    fn offset_of_two_dimensional_coset() {
        let f = gf8();
        let c = SameWeightCode::new(&f, 7, 2).unwrap();
        assert_eq!(c.encode(&[0, 0]), c.offset().to_vec());
        assert_eq!(max_multiplicity(c.offset()), 1);
    }

    fn hamming(rows: [&str; 4]) -> Matrix {
        Matrix::from_rows(&rows.iter().map(|r| bits(r).into_iter().map(FieldElement::from).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn hamming_profiles() {
        let f = GaloisField::binary_default(1).unwrap();
        let std = hamming(["1000111", "0100110", "0010101", "0001011"]);
        let del = |g: &Matrix, m| odp(&f, g, ProfileDirection::Deletion, m).unwrap().values;
        assert_eq!(del(&std, ProfileMode::Given), vec![3, 3, 3, 4]);
        let alt = hamming(["1011100", "1110010", "0111001", "1111111"]);
        assert_eq!(del(&alt, ProfileMode::Given), vec![3, 4, 4, 4]);
        assert_eq!(del(&std, ProfileMode::Exhaustive), vec![3, 4, 4, 4]);
        let ext = hamming(["1111111", "1011100", "1110010", "0111001"]);
        let e = |g: &Matrix, m| odp(&f, g, ProfileDirection::Extension, m).unwrap().values;
        assert_eq!(e(&ext, ProfileMode::Given), vec![7, 3, 3, 3]);
        assert_eq!(e(&std, ProfileMode::Exhaustive), vec![7, 3, 3, 3]);
        assert_eq!(e(&std, ProfileMode::Greedy), vec![7, 3, 3, 3]);
    }

    #[test]
    fn rs_profiles() {
        let f = gf8();
        let rs = RsCode::new(&f, 7, 3, Variant::Standard).unwrap();
        for mode in [ProfileMode::Given, ProfileMode::Greedy, ProfileMode::Exhaustive] {
            assert_eq!(odp(&f, rs.g(), ProfileDirection::Deletion, mode).unwrap().values, vec![5, 6, 7]);
            assert_eq!(odp(&f, rs.g(), ProfileDirection::Extension, mode).unwrap().values, vec![7, 6, 5]);
        }
    }

    #[test]
    fn look_ahead_junctions() {
        let c = RllCode::rate_3_5();
        assert_eq!(c.encode(&[4, 0]).unwrap(), bits("0011000011"));
        assert_eq!(c.encode(&[4, 2]).unwrap(), bits("0000111000"));
        let all: Vec<usize> = (0..8).flat_map(|a| (0..8).flat_map(move |b| (0..8).map(move |c| [a, b, c]))).flatten().collect();
        let s = c.encode(&all).unwrap();
        assert_eq!(first_short_run(&s, 2), None);
        assert_eq!(c.decode_hard(&s).unwrap(), all);
        let soft: Vec<f64> = s.iter().map(|&b| if b == 1 { 0.8 } else { -1.1 }).collect();
        assert_eq!(c.decode_soft(&soft).unwrap(), all);
    }

    #[test]
    fn coset_multiplicity_and_narrowband() {
        let f = gf8();
        let c = SameWeightCode::new(&f, 7, 2).unwrap();
        let mut worst = 0;
        for a in 0..8 {
            for b in 0..8 {
                let w = c.encode(&[a, b]);
                worst = worst.max(max_multiplicity(&w));
                for tone in 0..8 {
                    let er = narrowband_erasures(&w, &[tone]);
                    let mut r = w.clone();
                    for &j in &er {
                        r[j] = 0;
                    }
                    assert_eq!(c.decode(&r, &er).unwrap(), vec![a, b]);
                }
            }
        }
        assert_eq!(worst, 2);
    }
}
