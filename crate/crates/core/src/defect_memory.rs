//! Writing into memories with stuck-at cells whose positions and values are
//! known to the writer but not to the reader.
//!
//! Every matcher stores `info_len` symbols in `n` cells: the writer adds a
//! defect-dependent mask from a fixed set so that the stored word agrees with
//! every stuck cell, and the reader identifies and removes the mask without
//! seeing the defects. Binary matchers use the labels 0 and 1 of GF(2).

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use statrs::function::factorial::ln_binomial;

use crate::entropy::{binom_u128, h2};
use crate::error::{bad, Error, Result};
use crate::galois::{FieldElement, GaloisField};
use crate::matrix::Matrix;
use crate::rs_core::{min_distance, RsCode, Variant};
use crate::sim::rng;
use crate::wiretap::for_each_subset;

/// State of one memory cell as seen by the writer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Cell {
    Free,
    Stuck(FieldElement),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Free => write!(f, "?"),
            Cell::Stuck(v) => write!(f, "S{v}"),
        }
    }
}

/// Parses a defect map. Tokens are `?` (free) and `S<label>` or a bare
/// label (stuck); a string without separators is read one character per cell.
pub fn parse_cells(s: &str) -> Result<Vec<Cell>> {
    let s = s.trim();
    let tokens: Vec<String> = if s.contains(',') || s.contains(char::is_whitespace) {
        s.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()).map(str::to_string).collect()
    } else {
        let mut out = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            if c == 'S' || c == 's' {
                let mut t = String::from("S");
                while let Some(d) = chars.next_if(char::is_ascii_digit) {
                    t.push(d);
                }
                out.push(t);
            } else {
                out.push(c.to_string());
            }
        }
        out
    };
    tokens
        .iter()
        .map(|t| match t.as_str() {
            "?" | "-" | "." => Ok(Cell::Free),
            _ => t.trim_start_matches(['S', 's']).parse().map(Cell::Stuck).map_err(|_| bad(format!("bad cell token {t}"))),
        })
        .collect()
}

pub fn cells_to_string(cells: &[Cell]) -> String {
    cells.iter().map(Cell::to_string).collect::<Vec<_>>().join(",")
}

/// Whether `word` agrees with every stuck cell.
pub fn compatible(word: &[FieldElement], defects: &[Cell]) -> bool {
    word.len() == defects.len() && word.iter().zip(defects).all(|(&w, d)| matches!(d, Cell::Free) || *d == Cell::Stuck(w))
}

pub fn defect_count(defects: &[Cell]) -> usize {
    defects.iter().filter(|d| matches!(d, Cell::Stuck(_))).count()
}

pub trait DefectMatcher {
    fn name(&self) -> &str;
    fn n(&self) -> usize;
    /// Alphabet size of the cells.
    fn q(&self) -> u32 {
        2
    }
    fn info_len(&self) -> usize;
    /// Number of stuck cells that can always be matched.
    fn capability(&self) -> usize;
    /// Number of random symbol errors corrected on read.
    fn error_capability(&self) -> usize {
        0
    }
    fn write(&self, info: &[FieldElement], defects: &[Cell]) -> Result<Vec<FieldElement>>;
    fn read(&self, stored: &[FieldElement]) -> Result<Vec<FieldElement>>;

    /// Information symbols per cell.
    fn efficiency(&self) -> f64 {
        self.info_len() as f64 / self.n() as f64
    }
}

fn check_shape(m: &dyn DefectMatcher, info: &[FieldElement], defects: &[Cell]) -> Result<()> {
    if info.len() != m.info_len() || defects.len() != m.n() {
        return Err(bad(format!("{} expects {} information symbols and {} cells", m.name(), m.info_len(), m.n())));
    }
    let q = m.q();
    if info.iter().any(|&x| x >= q) || defects.iter().any(|d| matches!(d, Cell::Stuck(v) if *v >= q)) {
        return Err(bad(format!("symbols must be below {q}")));
    }
    Ok(())
}

/// One stuck cell anywhere: store `(0, x)` or `(1, complement of x)`.
#[derive(Clone, Debug)]
pub struct OneDefect {
    n: usize,
}

impl OneDefect {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(bad("one-defect code needs n >= 2"));
        }
        Ok(Self { n })
    }
}

impl DefectMatcher for OneDefect {
    fn name(&self) -> &str {
        "one-defect"
    }
    fn n(&self) -> usize {
        self.n
    }
    fn info_len(&self) -> usize {
        self.n - 1
    }
    fn capability(&self) -> usize {
        1
    }
    fn write(&self, info: &[FieldElement], defects: &[Cell]) -> Result<Vec<FieldElement>> {
        check_shape(self, info, defects)?;
        for flip in [0, 1] {
            let mut w = vec![flip];
            w.extend(info.iter().map(|&x| x ^ flip));
            if compatible(&w, defects) {
                return Ok(w);
            }
        }
        Err(Error::Unmatchable)
    }
    fn read(&self, stored: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if stored.len() != self.n {
            return Err(bad("stored word has the wrong length"));
        }
        Ok(stored[1..].iter().map(|&x| x ^ stored[0]).collect())
    }
}

/// Up to `n - 1` stuck cells: one bit carried by the weight parity of the word.
#[derive(Clone, Debug)]
pub struct ParityBit {
    n: usize,
}

impl ParityBit {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(bad("parity code needs n >= 1"));
        }
        Ok(Self { n })
    }
}

impl DefectMatcher for ParityBit {
    fn name(&self) -> &str {
        "parity"
    }
    fn n(&self) -> usize {
        self.n
    }
    fn info_len(&self) -> usize {
        1
    }
    fn capability(&self) -> usize {
        self.n - 1
    }
    fn write(&self, info: &[FieldElement], defects: &[Cell]) -> Result<Vec<FieldElement>> {
        check_shape(self, info, defects)?;
        let mut w: Vec<FieldElement> = defects.iter().map(|d| if let Cell::Stuck(v) = d { *v } else { 0 }).collect();
        let parity = w.iter().fold(0, |a, &b| a ^ b);
        if parity != info[0] {
            let free = defects.iter().position(|d| *d == Cell::Free).ok_or(Error::Unmatchable)?;
            w[free] = 1;
        }
        Ok(w)
    }
    fn read(&self, stored: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if stored.len() != self.n {
            return Err(bad("stored word has the wrong length"));
        }
        Ok(vec![stored.iter().fold(0, |a, &b| a ^ b)])
    }
}

/// Mask table in which every pair of columns shows all four bit pairs and the
/// first `prefix` columns name the row. The message sits behind `prefix` zeros.
#[derive(Clone, Debug, Serialize)]
pub struct TwoDefectCode {
    alpha: usize,
    rows: Vec<Vec<FieldElement>>,
    prefix: usize,
}

const TWO_DEFECT_ALPHA3: [[FieldElement; 10]; 6] = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 1, 1, 0, 1, 1, 1],
    [0, 1, 0, 1, 0, 1, 1, 0, 1, 1],
    [1, 1, 0, 0, 1, 0, 1, 1, 0, 1],
    [1, 0, 1, 1, 0, 0, 1, 1, 1, 0],
    [1, 1, 1, 1, 1, 1, 0, 0, 0, 0],
];

/// Number of prefix bits needed to name `rows` rows.
fn prefix_bits(rows: usize) -> usize {
    rows.next_power_of_two().trailing_zeros() as usize
}

impl TwoDefectCode {
    /// `2 alpha` rows, columns are all weight-`alpha` vectors of length
    /// `2 alpha - 1` under a zero row. `alpha = 3` gives the standard 6 x 10 table.
    pub fn new(alpha: usize) -> Result<Self> {
        if !(2..=8).contains(&alpha) {
            return Err(bad("two-defect construction supports 2 <= alpha <= 8"));
        }
        if alpha == 3 {
            return Ok(Self { alpha, rows: TWO_DEFECT_ALPHA3.iter().map(|r| r.to_vec()).collect(), prefix: 3 });
        }
        let p = prefix_bits(2 * alpha);
        let all = 1usize << p;
        // drop complementary pairs (never the zero and all-ones rows) until 2 alpha rows remain
        let mut keep = vec![true; all];
        let mut surplus = all - 2 * alpha;
        let mut r = 1;
        while surplus > 0 {
            keep[r] = false;
            keep[all - 1 - r] = false;
            surplus -= 2;
            r += 1;
        }
        let labels: Vec<usize> = (0..all).filter(|&i| keep[i]).collect();
        let height = 2 * alpha;
        // column j of the prefix block, top bit first
        let prefix_cols: Vec<Vec<FieldElement>> =
            (0..p).map(|j| labels.iter().map(|&l| ((l >> (p - 1 - j)) & 1) as FieldElement).collect()).collect();
        let mut cols = prefix_cols.clone();
        let mut body = Vec::new();
        for_each_subset(height - 1, alpha, |ones| {
            let mut c = vec![0; height];
            for &i in ones {
                c[i + 1] = 1;
            }
            body.push(c);
        });
        body.retain(|c| !prefix_cols.contains(c));
        cols.extend(body);
        let rows = (0..height).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        Ok(Self { alpha, rows, prefix: p })
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_rows(&self.rows)
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix
    }

    /// Whether every column pair shows all four bit pairs in some row.
    pub fn covers_all_pairs(&self) -> bool {
        let n = self.rows[0].len();
        (0..n).all(|a| {
            (a + 1..n).all(|b| {
                let mut seen = [false; 4];
                for r in &self.rows {
                    seen[(2 * r[a] + r[b]) as usize] = true;
                }
                seen.iter().all(|&s| s)
            })
        })
    }

    /// Whether the prefix columns tell all rows apart.
    pub fn prefixes_distinct(&self) -> bool {
        let mut p: Vec<&[FieldElement]> = self.rows.iter().map(|r| &r[..self.prefix]).collect();
        p.sort();
        p.windows(2).all(|w| w[0] != w[1])
    }
}

impl DefectMatcher for TwoDefectCode {
    fn name(&self) -> &str {
        "two-defect"
    }
    fn n(&self) -> usize {
        self.rows[0].len()
    }
    fn info_len(&self) -> usize {
        self.n() - self.prefix
    }
    fn capability(&self) -> usize {
        2
    }
    fn write(&self, info: &[FieldElement], defects: &[Cell]) -> Result<Vec<FieldElement>> {
        check_shape(self, info, defects)?;
        let mut x = vec![0; self.prefix];
        x.extend_from_slice(info);
        self.rows
            .iter()
            .map(|r| x.iter().zip(r).map(|(a, b)| a ^ b).collect::<Vec<_>>())
            .find(|w| compatible(w, defects))
            .ok_or(Error::Unmatchable)
    }
    fn read(&self, stored: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if stored.len() != self.n() {
            return Err(bad("stored word has the wrong length"));
        }
        let row = self.rows.iter().find(|r| r[..self.prefix] == stored[..self.prefix]).ok_or(Error::DecodeFailure)?;
        Ok(stored[self.prefix..].iter().zip(&row[self.prefix..]).map(|(a, b)| a ^ b).collect())
    }
}

/// `ln` of the bound on the fraction of useless random mask tables, and the
/// largest rate for which that bound stays below one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KtBound {
    pub ln_f: f64,
    pub f_bound: f64,
    pub r_bound: f64,
}

/// Existence bound for a `2^(n-k)`-row random mask table matching `t` defects:
/// `F <= exp(-2^(n-k-t) + ln(C(n,t) 2^t))` and `R <= 1 - t/n - log2(ln(C(n,t) 2^t)) / n`.
pub fn kt_bound(n: u64, k: u64, t: u64) -> Result<KtBound> {
    if k > n || t > n || n - k < t {
        return Err(bad("need n - k >= t"));
    }
    let ln_patterns = ln_binomial(n, t) + t as f64 * std::f64::consts::LN_2;
    let ln_f = -(2f64).powi((n - k - t) as i32) + ln_patterns;
    let r_bound = if ln_patterns <= 0.0 { 1.0 } else { (1.0 - t as f64 / n as f64 - ln_patterns.log2() / n as f64).min(1.0) };
    Ok(KtBound { ln_f, f_bound: ln_f.exp(), r_bound })
}

/// Random mask table: row `i` starts with the `n - k` bits of `i` and ends
/// with random bits. The message sits behind `n - k` zeros.
#[derive(Clone, Debug)]
pub struct KtCode {
    n: usize,
    k: usize,
    rows: Vec<Vec<FieldElement>>,
    verified: usize,
}

impl KtCode {
    pub fn random(n: usize, k: usize, seed: u64) -> Result<Self> {
        if k >= n || n - k > 16 {
            return Err(bad("random table needs k < n and n - k <= 16"));
        }
        let mut r = rng(seed);
        let p = n - k;
        let rows = (0..1usize << p)
            .map(|i| {
                let mut row: Vec<FieldElement> = (0..p).map(|j| ((i >> (p - 1 - j)) & 1) as FieldElement).collect();
                row.extend((0..k).map(|_| r.random_range(0..2)));
                row
            })
            .collect();
        Ok(Self { n, k, rows, verified: 0 })
    }

    /// Whether every `t` cells see all `2^t` patterns among the rows.
    pub fn matches_all(&self, t: usize) -> bool {
        let mut ok = true;
        for_each_subset(self.n, t, |pos| {
            if !ok {
                return;
            }
            let mut seen = vec![false; 1 << t];
            for r in &self.rows {
                let idx = pos.iter().fold(0usize, |a, &p| (a << 1) | r[p] as usize);
                seen[idx] = true;
            }
            ok = seen.iter().all(|&s| s);
        });
        ok
    }

    /// First seeded table (seeds `seed, seed + 1, ...`) that matches every `t` defects.
    pub fn find_useful(n: usize, k: usize, t: usize, seed: u64, attempts: u64) -> Result<Self> {
        for a in 0..attempts {
            let mut c = Self::random(n, k, seed.wrapping_add(a))?;
            if c.matches_all(t) {
                c.verified = t;
                return Ok(c);
            }
        }
        Err(Error::Unmatchable)
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }
}

impl DefectMatcher for KtCode {
    fn name(&self) -> &str {
        "kt-random"
    }
    fn n(&self) -> usize {
        self.n
    }
    fn info_len(&self) -> usize {
        self.k
    }
    fn capability(&self) -> usize {
        self.verified
    }
    fn write(&self, info: &[FieldElement], defects: &[Cell]) -> Result<Vec<FieldElement>> {
        check_shape(self, info, defects)?;
        let mut x = vec![0; self.n - self.k];
        x.extend_from_slice(info);
        self.rows
            .iter()
            .map(|r| x.iter().zip(r).map(|(a, b)| a ^ b).collect::<Vec<_>>())
            .find(|w| compatible(w, defects))
            .ok_or(Error::Unmatchable)
    }
    fn read(&self, stored: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if stored.len() != self.n {
            return Err(bad("stored word has the wrong length"));
        }
        let p = self.n - self.k;
        let idx = stored[..p].iter().fold(0usize, |a, &b| (a << 1) | b as usize);
        Ok(stored[p..].iter().zip(&self.rows[idx][p..]).map(|(a, b)| a ^ b).collect())
    }
}

/// Solves `c A = b` for `c`, free coordinates set to zero.
fn solve_left(f: &GaloisField, a: &Matrix, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let r = a.rows();
    if a.cols() == 0 {
        return Some(vec![0; r]);
    }
    let aug = a.transpose().hstack(&Matrix::from_fn(b.len(), 1, |i, _| b[i]));
    let e = aug.echelon(f);
    if e.pivots.last() == Some(&r) {
        return None;
    }
    let mut c = vec![0; r];
    for (i, &p) in e.pivots.iter().enumerate() {
        c[p] = e.reduced.get(i, r);
    }
    Some(c)
}

/// Largest `t` such that every `t` columns of `m` are linearly independent.
fn independent_columns(f: &GaloisField, m: &Matrix) -> usize {
    let n = m.cols();
    let mut t = 0;
    while t < m.rows().min(n) {
        let mut ok = true;
        for_each_subset(n, t + 1, |cols| {
            if ok && m.select_cols(cols).rank(f) < t + 1 {
                ok = false;
            }
        });
        if !ok {
            break;
        }
        t += 1;
    }
    t
}

#[derive(Clone, Debug)]
enum Corrector {
    None,
    /// Codeword list searched for the unique word within `t`.
    Nearest { words: Vec<Vec<FieldElement>>, t: usize },
    Rs(RsCode),
}

/// Stored word `(c, x) G`: the first `r` rows of `G` form the mask, chosen per
/// defect pattern by solving a linear system; the rest carry the message.
/// When `G` spans an error-correcting code the reader corrects errors first.
#[derive(Clone, Debug)]
pub struct LinearMatcher {
    name: String,
    field: GaloisField,
    g: Matrix,
    r: usize,
    capability: usize,
    corrector: Corrector,
}

impl LinearMatcher {
    /// General form over `field`; `correct` enables nearest-codeword reading
    /// for small codes (q^rows <= 2^16).
    pub fn new(field: &GaloisField, g: Matrix, r: usize, correct: bool) -> Result<Self> {
        if r == 0 || r >= g.rows() || g.rank(field) != g.rows() {
            return Err(bad("generator must have full row rank with 0 < r < rows"));
        }
        let capability = independent_columns(field, &g.select_rows(&(0..r).collect::<Vec<_>>()));
        let corrector = if correct {
            let d = min_distance(field, &g)?;
            let t = (d - 1) / 2;
            if t == 0 {
                Corrector::None
            } else {
                let size = (field.q() as u64).pow(g.rows() as u32);
                if size > 1 << 16 {
                    return Err(Error::TooLarge(format!("{size} codewords for nearest-codeword reading")));
                }
                let mut words = Vec::with_capacity(size as usize);
                for mut idx in 0..size {
                    let u: Vec<FieldElement> = (0..g.rows())
                        .map(|_| {
                            let s = (idx % field.q() as u64) as FieldElement;
                            idx /= field.q() as u64;
                            s
                        })
                        .collect();
                    words.push(g.vec_mul(field, &u));
                }
                Corrector::Nearest { words, t }
            }
        } else {
            Corrector::None
        };
        Ok(Self { name: "linear".into(), field: field.clone(), g, r, capability, corrector })
    }

    /// From a systematic `[I_k | H]` generator of a code with distance `d`:
    /// mask rows `[I_{n-k} | H^T]` over message rows `[0 | I_k]`, matching any `d - 1` defects.
    pub fn from_base_code(field: &GaloisField, g_sys: &Matrix) -> Result<Self> {
        let (k, n) = (g_sys.rows(), g_sys.cols());
        if k == 0 || k >= n || g_sys.select_cols(&(0..k).collect::<Vec<_>>()) != Matrix::identity(k) {
            return Err(bad("base generator must be systematic [I_k | H] with k < n"));
        }
        let h = g_sys.select_cols(&(k..n).collect::<Vec<_>>());
        let top = Matrix::identity(n - k).hstack(&h.transpose());
        let bottom = Matrix::zeros(k, n - k).hstack(&Matrix::identity(k));
        let mut m = Self::new(field, top.vstack(&bottom), n - k, false)?;
        m.name = "linear".into();
        Ok(m)
    }

    /// Three defects in seven cells, three message bits (mask rows from the (7,3) simplex dual).
    pub fn three_defect_7() -> Self {
        let f = GaloisField::binary_default(1).expect("GF(2)");
        let g = Matrix::from_rows(&[vec![1, 0, 0, 1, 1, 1, 0], vec![0, 1, 0, 1, 1, 0, 1], vec![0, 0, 1, 1, 0, 1, 1]]);
        Self::from_base_code(&f, &g).expect("systematic")
    }

    /// Hamming (7,4) generator, first row as mask: one defect and one error, three message bits.
    pub fn one_defect_one_error_7() -> Self {
        Self::hamming_variant(
            "combined-1d1e",
            &[[1, 1, 1, 1, 1, 1, 1], [0, 1, 0, 0, 1, 1, 0], [0, 0, 1, 0, 1, 0, 1], [0, 0, 0, 1, 0, 1, 1]],
            1,
        )
    }

    /// Hamming (7,4) generator, first three rows as mask: two defects and one error, one message bit.
    pub fn two_defect_one_error_7() -> Self {
        Self::hamming_variant(
            "combined-2d1e",
            &[[1, 0, 0, 0, 1, 1, 1], [0, 1, 0, 1, 1, 0, 1], [0, 0, 1, 1, 1, 1, 0], [0, 0, 0, 1, 0, 1, 1]],
            3,
        )
    }

    fn hamming_variant(name: &str, rows: &[[FieldElement; 7]; 4], r: usize) -> Self {
        let f = GaloisField::binary_default(1).expect("GF(2)");
        let g = Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        let mut m = Self::new(&f, g, r, true).expect("Hamming generator");
        m.name = name.into();
        m
    }

    /// Symbol matcher from the `(n - delta) x n` RS generator: `n - k` mask rows,
    /// `k - delta` message rows, `floor(delta / 2)` symbol errors corrected.
    pub fn rs_symbol(field: &GaloisField, n: usize, k: usize, delta: usize) -> Result<Self> {
        if !(delta < k && k < n) {
            return Err(bad("need delta < k < n"));
        }
        if n > field.order() as usize {
            return Err(bad("need n <= q - 1"));
        }
        let g = Matrix::from_fn(n - delta, n, |i, j| field.alpha_pow((i * j) as i64));
        let corrector = if delta >= 2 {
            if n != field.order() as usize {
                return Err(bad("error correction needs the full length n = q - 1"));
            }
            Corrector::Rs(RsCode::new(field, n, n - delta, Variant::Standard)?)
        } else {
            Corrector::None
        };
        Ok(Self { name: "rs-symbol".into(), field: field.clone(), g, r: n - k, capability: n - k, corrector })
    }

    pub fn generator(&self) -> &Matrix {
        &self.g
    }

    pub fn mask_rows(&self) -> usize {
        self.r
    }

    fn correct(&self, received: &[FieldElement]) -> Result<Vec<FieldElement>> {
        match &self.corrector {
            Corrector::None => Ok(received.to_vec()),
            Corrector::Rs(rs) => {
                let res = rs.decode_errors(received);
                if res.is_corrected() {
                    Ok(res.codeword)
                } else {
                    Err(Error::DecodeFailure)
                }
            }
            Corrector::Nearest { words, t } => {
                let mut hits = words.iter().filter(|w| w.iter().zip(received).filter(|(a, b)| a != b).count() <= *t);
                match (hits.next(), hits.next()) {
                    (Some(w), None) => Ok(w.clone()),
                    _ => Err(Error::DecodeFailure),
                }
            }
        }
    }
}

impl DefectMatcher for LinearMatcher {
    fn name(&self) -> &str {
        &self.name
    }
    fn n(&self) -> usize {
        self.g.cols()
    }
    fn q(&self) -> u32 {
        self.field.q()
    }
    fn info_len(&self) -> usize {
        self.g.rows() - self.r
    }
    fn capability(&self) -> usize {
        self.capability
    }
    fn error_capability(&self) -> usize {
        match &self.corrector {
            Corrector::None => 0,
            Corrector::Rs(rs) => rs.t(),
            Corrector::Nearest { t, .. } => *t,
        }
    }
    fn write(&self, info: &[FieldElement], defects: &[Cell]) -> Result<Vec<FieldElement>> {
        check_shape(self, info, defects)?;
        let f = &self.field;
        let mut u = vec![0; self.r];
        u.extend_from_slice(info);
        let base = self.g.vec_mul(f, &u);
        let stuck: Vec<(usize, FieldElement)> =
            defects.iter().enumerate().filter_map(|(j, d)| if let Cell::Stuck(v) = d { Some((j, *v)) } else { None }).collect();
        let cols: Vec<usize> = stuck.iter().map(|&(j, _)| j).collect();
        let a = self.g.select_rows(&(0..self.r).collect::<Vec<_>>()).select_cols(&cols);
        let b: Vec<FieldElement> = stuck.iter().map(|&(j, v)| f.sub(v, base[j])).collect();
        let c = solve_left(f, &a, &b).ok_or(Error::Unmatchable)?;
        u[..self.r].copy_from_slice(&c);
        Ok(self.g.vec_mul(f, &u))
    }
    fn read(&self, stored: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if stored.len() != self.n() {
            return Err(bad("stored word has the wrong length"));
        }
        let word = self.correct(stored)?;
        let u = solve_left(&self.field, &self.g, &word).ok_or(Error::DecodeFailure)?;
        Ok(u[self.r..].to_vec())
    }
}

/// Result of writing and reading back every admissible case.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub cases: u64,
    pub failures: u64,
    pub exhaustive: bool,
}

/// Checks `read(write(x, d)) = x` and that `write` agrees with `d`, over all
/// defect placements and values of up to `max_defects` cells. Messages are
/// enumerated when there are at most `info_budget` of them, otherwise
/// `info_budget` seeded messages are drawn per defect pattern.
pub fn law_check(m: &dyn DefectMatcher, max_defects: usize, info_budget: u64, seed: u64) -> LawReport {
    let n = m.n();
    let q = m.q();
    let k = m.info_len();
    let all_info = (q as f64).powi(k as i32) <= info_budget as f64;
    let mut r = rng(seed);
    let mut report = LawReport { exhaustive: all_info, ..Default::default() };
    for t in 0..=max_defects.min(n) {
        for_each_subset(n, t, |pos| {
            let values = (q as u64).pow(t as u32);
            for mut v in 0..values {
                let mut cells = vec![Cell::Free; n];
                for &p in pos {
                    cells[p] = Cell::Stuck((v % q as u64) as FieldElement);
                    v /= q as u64;
                }
                let count = if all_info { (q as u64).pow(k as u32) } else { info_budget };
                for mut idx in 0..count {
                    let info: Vec<FieldElement> = if all_info {
                        (0..k)
                            .map(|_| {
                                let s = (idx % q as u64) as FieldElement;
                                idx /= q as u64;
                                s
                            })
                            .collect()
                    } else {
                        (0..k).map(|_| r.random_range(0..q)).collect()
                    };
                    report.cases += 1;
                    let ok = m.write(&info, &cells).is_ok_and(|w| compatible(&w, &cells) && m.read(&w).is_ok_and(|x| x == info));
                    if !ok {
                        report.failures += 1;
                    }
                }
            }
        });
    }
    report
}

/// Matcher families selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatcherKind {
    OneDefect,
    Parity,
    TwoDefect,
    Linear,
    Combined1d1e,
    Combined2d1e,
    RsSymbol,
    KtRandom,
}

impl MatcherKind {
    pub const ALL: [MatcherKind; 8] = [
        Self::OneDefect,
        Self::Parity,
        Self::TwoDefect,
        Self::Linear,
        Self::Combined1d1e,
        Self::Combined2d1e,
        Self::RsSymbol,
        Self::KtRandom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::OneDefect => "one-defect",
            Self::Parity => "parity",
            Self::TwoDefect => "two-defect",
            Self::Linear => "linear",
            Self::Combined1d1e => "combined-1d1e",
            Self::Combined2d1e => "combined-2d1e",
            Self::RsSymbol => "rs-symbol",
            Self::KtRandom => "kt-random",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| bad(format!("unknown matcher variant {s}")))
    }
}

/// Parameters for building a matcher; unused fields are ignored per variant.
#[derive(Clone, Debug, PartialEq, serde::Deserialize, Serialize)]
#[serde(default)]
pub struct MatcherParams {
    /// Cells for one-defect, parity and kt-random; RS length for rs-symbol.
    pub n: usize,
    /// Message length for kt-random; RS parameter `k` for rs-symbol.
    pub k: usize,
    pub alpha: usize,
    /// Field degree for rs-symbol.
    pub m: u32,
    pub delta: usize,
    /// Defects the kt-random table must match.
    pub t: usize,
    pub seed: u64,
}

impl Default for MatcherParams {
    fn default() -> Self {
        Self { n: 7, k: 3, alpha: 3, m: 3, delta: 0, t: 1, seed: 1 }
    }
}

pub fn build_matcher(kind: MatcherKind, p: &MatcherParams) -> Result<Box<dyn DefectMatcher>> {
    Ok(match kind {
        MatcherKind::OneDefect => Box::new(OneDefect::new(p.n)?),
        MatcherKind::Parity => Box::new(ParityBit::new(p.n)?),
        MatcherKind::TwoDefect => Box::new(TwoDefectCode::new(p.alpha)?),
        MatcherKind::Linear => Box::new(LinearMatcher::three_defect_7()),
        MatcherKind::Combined1d1e => Box::new(LinearMatcher::one_defect_one_error_7()),
        MatcherKind::Combined2d1e => Box::new(LinearMatcher::two_defect_one_error_7()),
        MatcherKind::RsSymbol => Box::new(LinearMatcher::rs_symbol(&GaloisField::binary_default(p.m)?, p.n, p.k, p.delta)?),
        MatcherKind::KtRandom => Box::new(KtCode::find_useful(p.n, p.k, p.t, p.seed, 10_000)?),
    })
}

/// Number of first-write patterns: `sum_{i <= w} C(n, i)`.
pub fn wom_first_write_messages(n: usize, w: usize) -> Result<u128> {
    (0..=w.min(n)).try_fold(0u128, |acc, i| {
        binom_u128(n as u64, i as u64).and_then(|b| acc.checked_add(b)).ok_or_else(|| Error::TooLarge("first-write message count".into()))
    })
}

/// Pattern of weight at most `w` with the given rank: lighter patterns first,
/// then lexicographic order of the hole positions.
pub fn wom_unrank(n: usize, w: usize, mut rank: u128) -> Result<Vec<FieldElement>> {
    for weight in 0..=w.min(n) {
        let size = binom_u128(n as u64, weight as u64).ok_or_else(|| Error::TooLarge("binomial".into()))?;
        if rank >= size {
            rank -= size;
            continue;
        }
        let mut word = vec![0; n];
        let mut left = weight;
        for (pos, cell) in word.iter_mut().enumerate() {
            if left == 0 {
                break;
            }
            // patterns that put a hole here come first
            let with = binom_u128((n - pos - 1) as u64, (left - 1) as u64).expect("fits");
            if rank < with {
                *cell = 1;
                left -= 1;
            } else {
                rank -= with;
            }
        }
        return Ok(word);
    }
    Err(Error::CapacityExceeded)
}

pub fn wom_rank(pattern: &[FieldElement], w: usize) -> Result<u128> {
    let n = pattern.len();
    let weight = pattern.iter().filter(|&&b| b == 1).count();
    if weight > w || pattern.iter().any(|&b| b > 1) {
        return Err(Error::CapacityExceeded);
    }
    let mut rank = wom_first_write_messages(n, weight)? - binom_u128(n as u64, weight as u64).expect("fits");
    let mut left = weight;
    for (pos, &b) in pattern.iter().enumerate() {
        if left == 0 {
            break;
        }
        let with = binom_u128((n - pos - 1) as u64, (left - 1) as u64).expect("fits");
        if b == 1 {
            left -= 1;
        } else {
            rank += with;
        }
    }
    Ok(rank)
}

/// Two writes on a punch card of `matcher.n()` cells. The first write punches
/// at most `w` holes to encode `first`; the second treats the holes as cells
/// stuck at 1 and stores `second` through `matcher`.
pub fn wom_two_write(
    w: usize,
    first: u128,
    second: &[FieldElement],
    matcher: &dyn DefectMatcher,
) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
    let n = matcher.n();
    if matcher.q() != 2 || matcher.capability() < w {
        return Err(Error::CapacityExceeded);
    }
    if first >= wom_first_write_messages(n, w)? {
        return Err(Error::CapacityExceeded);
    }
    let card1 = wom_unrank(n, w, first)?;
    let holes: Vec<Cell> = card1.iter().map(|&b| if b == 1 { Cell::Stuck(1) } else { Cell::Free }).collect();
    let card2 = matcher.write(second, &holes)?;
    Ok((card1, card2))
}

/// Bits per cell over both writes as `n` grows: `h(p) + 1 - p`.
pub fn wom_total_rate(p: f64) -> f64 {
    h2(p) + 1.0 - p
}

/// Bits per cell over both writes at finite `n` with `w` first-write holes
/// and an ideal second write of `n - w` bits.
pub fn wom_finite_rate(n: usize, w: usize) -> Result<f64> {
    let m = wom_first_write_messages(n, w)? as f64;
    Ok((m.log2() + (n - w) as f64) / n as f64)
}

/// Random defect map with exactly `t` stuck cells of uniform value.
pub fn random_defects<R: Rng>(n: usize, t: usize, q: u32, r: &mut R) -> Vec<Cell> {
    let mut pos: Vec<usize> = (0..n).collect();
    pos.shuffle(r);
    let mut cells = vec![Cell::Free; n];
    for &p in &pos[..t.min(n)] {
        cells[p] = Cell::Stuck(r.random_range(0..q));
    }
    cells
}
