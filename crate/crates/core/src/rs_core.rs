//! Reed-Solomon codes: generator and parity-check matrices, encoders,
//! syndromes, Euclid key-equation decoding with Chien search, erasure and
//! errors-and-erasures decoding, semi-systematic forms and a brute-force
//! distance oracle.
//!
//! Generator rows are `alpha^{(b+i)j}` for a row window `b`; `b = 0` is the
//! Vandermonde matrix whose first row is all ones. The code then has the
//! consecutive roots `alpha^{b0}, ..., alpha^{b0+n-k-1}` with `b0 = 1 - b`,
//! and syndromes are `S_j = R(alpha^{b0+j})`.

use crate::error::{bad, Error, Result};
use crate::galois::{FieldElement, GaloisField};
use crate::matrix::Matrix;
use crate::poly::{self, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// n = q - 1, evaluation points alpha^0 .. alpha^{n-1}.
    Standard,
    /// n < q - 1: the standard parity checks restricted to the first n positions.
    Shortened,
    /// n = q: evaluation points 0, 1, alpha, ..., alpha^{q-2}.
    Extended,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeStatus {
    Corrected,
    Failure,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    pub codeword: Vec<FieldElement>,
    pub info: Vec<FieldElement>,
    pub error_positions: Vec<usize>,
    pub error_values: Vec<FieldElement>,
    pub syndrome: Vec<FieldElement>,
    pub locator: Poly,
    pub evaluator: Poly,
}

impl DecodeResult {
    pub fn is_corrected(&self) -> bool {
        self.status == DecodeStatus::Corrected
    }

    fn failure(received: &[FieldElement], syndrome: Vec<FieldElement>) -> Self {
        Self {
            status: DecodeStatus::Failure,
            codeword: received.to_vec(),
            info: Vec::new(),
            error_positions: Vec::new(),
            error_values: Vec::new(),
            syndrome,
            locator: Vec::new(),
            evaluator: Vec::new(),
        }
    }
}

/// Error pattern recovered from a syndrome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeSolution {
    pub positions: Vec<usize>,
    pub values: Vec<FieldElement>,
    pub locator: Poly,
    pub evaluator: Poly,
}

#[derive(Clone, Debug)]
pub struct RsCode {
    field: GaloisField,
    n: usize,
    k: usize,
    window: i64,
    variant: Variant,
    g: Matrix,
    g_sys: Matrix,
    h: Matrix,
    info_inv: Matrix,
}

impl RsCode {
    /// Code with the canonical row window `b = 0`.
    pub fn new(field: &GaloisField, n: usize, k: usize, variant: Variant) -> Result<Self> {
        Self::with_window(field, n, k, variant, 0)
    }

    /// Standard or shortened code, variant chosen from `n`.
    pub fn of_length(field: &GaloisField, n: usize, k: usize) -> Result<Self> {
        let q = field.q() as usize;
        let variant = if n == q - 1 {
            Variant::Standard
        } else if n == q {
            Variant::Extended
        } else {
            Variant::Shortened
        };
        Self::new(field, n, k, variant)
    }

    pub fn with_window(field: &GaloisField, n: usize, k: usize, variant: Variant, b: i64) -> Result<Self> {
        let q = field.q() as usize;
        if k == 0 || k > n {
            return Err(bad(format!("need 1 <= k <= n, got n={n}, k={k}")));
        }
        match variant {
            Variant::Standard if n != q - 1 => return Err(bad(format!("standard code needs n = {}", q - 1))),
            Variant::Shortened if n >= q - 1 => return Err(bad(format!("shortened code needs n < {}", q - 1))),
            Variant::Extended if n != q => return Err(bad(format!("extended code needs n = {q}"))),
            Variant::Extended if b != 0 => return Err(bad("extended code uses window 0")),
            _ => {}
        }
        let f = field.clone();
        let b0 = 1 - b;
        let (g, h) = match variant {
            Variant::Standard => {
                let g = Matrix::from_fn(k, n, |i, j| f.alpha_pow((b + i as i64) * j as i64));
                let h = Matrix::from_fn(n - k, n, |s, j| f.alpha_pow((b0 + s as i64) * j as i64));
                (g, h)
            }
            Variant::Shortened => {
                let h = Matrix::from_fn(n - k, n, |s, j| f.alpha_pow((b0 + s as i64) * j as i64));
                let g = h.nullspace(&f).echelon(&f).reduced;
                (g, h)
            }
            Variant::Extended => {
                let pt = |j: usize| if j == 0 { 0 } else { f.alpha_pow(j as i64 - 1) };
                let g = Matrix::from_fn(k, n, |i, j| f.pow(pt(j), i as u64));
                let h = g.nullspace(&f);
                (g, h)
            }
        };
        let e = g.echelon(&f);
        debug_assert_eq!(e.pivots, (0..k).collect::<Vec<_>>());
        let g_sys = e.reduced;
        let info_inv = g
            .select_cols(&(0..k).collect::<Vec<_>>())
            .inverse(&f)
            .ok_or_else(|| bad("leading k columns of G are singular"))?;
        Ok(Self { field: f, n, k, window: b, variant, g, g_sys, h, info_inv })
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d_min(&self) -> usize {
        self.n - self.k + 1
    }

    /// Number of correctable errors, floor((n-k)/2).
    pub fn t(&self) -> usize {
        (self.n - self.k) / 2
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn g(&self) -> &Matrix {
        &self.g
    }

    pub fn g_sys(&self) -> &Matrix {
        &self.g_sys
    }

    /// Parity-check matrix, (n-k) x n.
    pub fn h(&self) -> &Matrix {
        &self.h
    }

    /// Syndrome former H^T, n x (n-k).
    pub fn h_t(&self) -> Matrix {
        self.h.transpose()
    }

    /// Exponent of the first consecutive root.
    pub fn first_root(&self) -> i64 {
        1 - self.window
    }

    /// Locator of position `j` (the evaluation point of the column).
    pub fn locator_of(&self, j: usize) -> FieldElement {
        match self.variant {
            Variant::Extended if j == 0 => 0,
            Variant::Extended => self.field.alpha_pow(j as i64 - 1),
            _ => self.field.alpha_pow(j as i64),
        }
    }

    fn check_len(&self, v: &[FieldElement], want: usize) {
        assert_eq!(v.len(), want, "word length mismatch");
    }

    pub fn encode(&self, info: &[FieldElement]) -> Vec<FieldElement> {
        self.check_len(info, self.k);
        self.g.vec_mul(&self.field, info)
    }

    /// Encoding with the information in the first k positions.
    pub fn encode_systematic(&self, info: &[FieldElement]) -> Vec<FieldElement> {
        self.check_len(info, self.k);
        self.g_sys.vec_mul(&self.field, info)
    }

    /// Generator polynomial with the consecutive roots of the code.
    pub fn generator_poly(&self) -> Result<Poly> {
        self.require_cyclic_roots()?;
        let f = &self.field;
        let b0 = self.first_root();
        let roots: Vec<FieldElement> = (0..(self.n - self.k) as i64).map(|s| f.alpha_pow(b0 + s)).collect();
        Ok(poly::from_roots(f, &roots))
    }

    /// `C(X) = A(X) g(X)`.
    pub fn encode_poly(&self, info: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_len(info, self.k);
        let mut c = poly::mul(&self.field, info, &self.generator_poly()?);
        c.resize(self.n, 0);
        Ok(c)
    }

    /// `C(X) = X^{n-k} A(X) - (X^{n-k} A(X) mod g(X))`: information in the last k positions.
    pub fn encode_systematic_poly(&self, info: &[FieldElement]) -> Result<Vec<FieldElement>> {
        self.check_len(info, self.k);
        let f = &self.field;
        let r = self.n - self.k;
        let mut shifted = vec![0; r];
        shifted.extend_from_slice(info);
        let (_, rem) = poly::divrem(f, &shifted, &self.generator_poly()?);
        for (i, &c) in rem.iter().enumerate() {
            shifted[i] = f.neg(c);
        }
        Ok(shifted)
    }

    /// Recovers the information vector of a codeword produced by [`encode`](Self::encode).
    pub fn info_of(&self, codeword: &[FieldElement]) -> Vec<FieldElement> {
        self.info_inv.vec_mul(&self.field, &codeword[..self.k])
    }

    /// `H r^T`, i.e. `r H^T`.
    pub fn syndrome(&self, received: &[FieldElement]) -> Vec<FieldElement> {
        self.check_len(received, self.n);
        self.h.mul_vec(&self.field, received)
    }

    pub fn is_codeword(&self, word: &[FieldElement]) -> bool {
        self.syndrome(word).iter().all(|&s| s == 0)
    }

    fn require_cyclic_roots(&self) -> Result<()> {
        if self.variant == Variant::Extended {
            Err(bad("extended codes have no consecutive-root parity checks"))
        } else {
            Ok(())
        }
    }

    /// Finds the error pattern explaining `syndrome`, given known erasure positions.
    ///
    /// Returns `None` when no pattern with `2 errors + erasures <= n-k` exists.
    pub fn decode_syndrome(&self, syndrome: &[FieldElement], erasures: &[usize]) -> Result<Option<SyndromeSolution>> {
        self.require_cyclic_roots()?;
        let f = &self.field;
        let r = self.n - self.k;
        let rho = erasures.len();
        if rho > r {
            return Err(Error::TooManyErasures { erasures: rho, max: r });
        }
        let gamma = erasures.iter().fold(vec![1], |acc, &e| poly::mul(f, &acc, &[1, f.neg(self.locator_of(e))]));
        let mut xi = poly::mul(f, &gamma, syndrome);
        xi.truncate(r);
        poly::trim(&mut xi);

        let mut r0: Poly = vec![0; r + 1];
        r0[r] = 1;
        let mut r1 = xi;
        let mut t0: Poly = Vec::new();
        let mut t1: Poly = vec![1];
        while poly::degree(&r1).is_some_and(|d| 2 * d >= r + rho) {
            let (quo, rem) = poly::divrem(f, &r0, &r1);
            let t2 = poly::sub(f, &t0, &poly::mul(f, &quo, &t1));
            r0 = std::mem::replace(&mut r1, rem);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lambda = t1;
        let omega = r1;
        if lambda.first().copied().unwrap_or(0) == 0 {
            return Ok(None);
        }
        let psi = poly::mul(f, &lambda, &gamma);
        let deg_psi = poly::degree(&psi).unwrap_or(0);
        let dpsi = poly::deriv(f, &psi);
        let b0 = self.first_root();

        let mut positions = Vec::new();
        let mut values = Vec::new();
        for pos in 0..self.n {
            let x = self.locator_of(pos);
            let x_inv = f.inv(x).expect("nonzero locator");
            if poly::eval(f, &psi, x_inv) != 0 {
                continue;
            }
            let denom = f.mul(f.alpha_pow((b0 - 1) * pos as i64), poly::eval(f, &dpsi, x_inv));
            if denom == 0 {
                return Ok(None);
            }
            let num = f.neg(poly::eval(f, &omega, x_inv));
            positions.push(pos);
            values.push(f.div(num, denom)?);
        }
        if positions.len() != deg_psi {
            return Ok(None);
        }
        let mut nonzero_pos = Vec::new();
        let mut nonzero_val = Vec::new();
        for (p, v) in positions.into_iter().zip(values) {
            if v != 0 {
                nonzero_pos.push(p);
                nonzero_val.push(v);
            } else if !erasures.contains(&p) {
                return Ok(None);
            }
        }
        let errors = nonzero_pos.iter().filter(|p| !erasures.contains(p)).count();
        if 2 * errors + rho > r {
            return Ok(None);
        }
        Ok(Some(SyndromeSolution { positions: nonzero_pos, values: nonzero_val, locator: lambda, evaluator: omega }))
    }

    /// Bounded-distance error decoding up to floor((n-k)/2) symbol errors.
    pub fn decode_errors(&self, received: &[FieldElement]) -> DecodeResult {
        self.decode_errors_and_erasures(received, &[]).expect("no erasures")
    }

    /// Corrects `t` errors and `E` erasures whenever `2t + E <= n - k`.
    pub fn decode_errors_and_erasures(&self, received: &[FieldElement], erasures: &[usize]) -> Result<DecodeResult> {
        self.check_len(received, self.n);
        let r = self.n - self.k;
        if erasures.len() > r {
            return Err(Error::TooManyErasures { erasures: erasures.len(), max: r });
        }
        if erasures.iter().any(|&e| e >= self.n) {
            return Err(bad("erasure position out of range"));
        }
        let syndrome = self.syndrome(received);
        if self.variant == Variant::Extended {
            return Ok(self.decode_extended(received, erasures, syndrome));
        }
        let Some(sol) = self.decode_syndrome(&syndrome, erasures)? else {
            return Ok(DecodeResult::failure(received, syndrome));
        };
        let f = &self.field;
        let mut codeword = received.to_vec();
        for (&p, &v) in sol.positions.iter().zip(&sol.values) {
            codeword[p] = f.sub(codeword[p], v);
        }
        if !self.is_codeword(&codeword) {
            return Ok(DecodeResult::failure(received, syndrome));
        }
        Ok(DecodeResult {
            status: DecodeStatus::Corrected,
            info: self.info_of(&codeword),
            codeword,
            error_positions: sol.positions,
            error_values: sol.values,
            syndrome,
            locator: sol.locator,
            evaluator: sol.evaluator,
        })
    }

    /// Fills up to n-k erased positions from k clean coordinates.
    pub fn decode_erasures(&self, received: &[FieldElement], erasures: &[usize]) -> Result<DecodeResult> {
        self.check_len(received, self.n);
        let r = self.n - self.k;
        if erasures.len() > r {
            return Err(Error::TooManyErasures { erasures: erasures.len(), max: r });
        }
        let clean: Vec<usize> = (0..self.n).filter(|j| !erasures.contains(j)).take(self.k).collect();
        let codeword = self.reconstruct_from(received, &clean)?;
        let syndrome = self.syndrome(received);
        let consistent = (0..self.n).filter(|j| !erasures.contains(j)).all(|j| codeword[j] == received[j]);
        if !consistent {
            return Ok(DecodeResult::failure(received, syndrome));
        }
        let f = &self.field;
        let (mut error_positions, mut error_values) = (Vec::new(), Vec::new());
        for &e in erasures {
            let d = f.sub(received[e], codeword[e]);
            if d != 0 {
                error_positions.push(e);
                error_values.push(d);
            }
        }
        Ok(DecodeResult {
            status: DecodeStatus::Corrected,
            info: self.info_of(&codeword),
            codeword,
            error_positions,
            error_values,
            syndrome,
            locator: Vec::new(),
            evaluator: Vec::new(),
        })
    }

    /// The codeword agreeing with `word` on the k given positions.
    pub fn reconstruct_from(&self, word: &[FieldElement], positions: &[usize]) -> Result<Vec<FieldElement>> {
        if positions.len() != self.k {
            return Err(bad(format!("need exactly {} positions", self.k)));
        }
        let f = &self.field;
        let sub = self.g.select_cols(positions);
        let inv = sub.inverse(f).ok_or(Error::InsufficientRank(self.k))?;
        let vals: Vec<FieldElement> = positions.iter().map(|&p| word[p]).collect();
        let info = inv.vec_mul(f, &vals);
        Ok(self.encode(&info))
    }

    /// Welch-Berlekamp decoding on the evaluation form, used for extended codes.
    fn decode_extended(&self, received: &[FieldElement], erasures: &[usize], syndrome: Vec<FieldElement>) -> DecodeResult {
        let f = &self.field;
        let pts: Vec<usize> = (0..self.n).filter(|j| !erasures.contains(j)).collect();
        let n_eff = pts.len();
        let t = (n_eff - self.k) / 2;
        let unknowns = self.k + 2 * t;
        let mut rows = Vec::with_capacity(n_eff);
        for &j in &pts {
            let x = self.locator_of(j);
            let y = received[j];
            let mut row = Vec::with_capacity(unknowns + 1);
            for i in 0..self.k + t {
                row.push(f.pow(x, i as u64));
            }
            for i in 0..t {
                row.push(f.neg(f.mul(y, f.pow(x, i as u64))));
            }
            row.push(f.mul(y, f.pow(x, t as u64)));
            rows.push(row);
        }
        let e = Matrix::from_rows(&rows).echelon(f);
        if e.pivots.contains(&unknowns) {
            return DecodeResult::failure(received, syndrome);
        }
        let mut sol = vec![0; unknowns];
        for (r, &pc) in e.pivots.iter().enumerate() {
            sol[pc] = e.reduced.get(r, unknowns);
        }
        let qpoly: Poly = sol[..self.k + t].to_vec();
        let mut epoly: Poly = sol[self.k + t..].to_vec();
        epoly.push(1);
        let (p, rem) = poly::divrem(f, &qpoly, &epoly);
        if poly::degree(&rem).is_some() || p.len() > self.k {
            return DecodeResult::failure(received, syndrome);
        }
        let mut info = p;
        info.resize(self.k, 0);
        let codeword = self.encode(&info);
        let (mut error_positions, mut error_values) = (Vec::new(), Vec::new());
        for j in 0..self.n {
            let d = f.sub(received[j], codeword[j]);
            if d != 0 {
                error_positions.push(j);
                error_values.push(d);
            }
        }
        let errors = error_positions.iter().filter(|p| !erasures.contains(p)).count();
        if 2 * errors + erasures.len() > self.n - self.k {
            return DecodeResult::failure(received, syndrome);
        }
        DecodeResult {
            status: DecodeStatus::Corrected,
            codeword,
            info,
            error_positions,
            error_values,
            syndrome,
            locator: epoly,
            evaluator: Vec::new(),
        }
    }

    /// `[I_u T U; 0 I_v W]`: the first u rows of G row-reduced on top, the
    /// last v = k - u rows of the systematic form below.
    pub fn semi_systematic(&self, u: usize) -> Result<Matrix> {
        if u > self.k {
            return Err(bad(format!("u = {u} exceeds k = {}", self.k)));
        }
        if u == 0 || u == self.k {
            return Ok(self.g_sys.clone());
        }
        let top = self.g.select_rows(&(0..u).collect::<Vec<_>>()).echelon(&self.field).reduced;
        let bottom = self.g_sys.select_rows(&(u..self.k).collect::<Vec<_>>());
        Ok(top.vstack(&bottom))
    }

    /// Exact minimum distance by enumerating all q^k codewords.
    pub fn min_distance_bruteforce(&self) -> Result<usize> {
        min_distance(&self.field, &self.g)
    }
}

/// Minimum nonzero weight of the row space of `g`, for q^k <= 2^20.
pub fn min_distance(f: &GaloisField, g: &Matrix) -> Result<usize> {
    let q = f.q() as u64;
    let k = g.rows();
    let total = (q as f64).powi(k as i32);
    if total > (1u64 << 20) as f64 {
        return Err(Error::TooLarge(format!("q^k = {total} codewords")));
    }
    let n = g.cols();
    let mut info = vec![0u32; k];
    let mut word = vec![0u32; n];
    let mut best = usize::MAX;
    // odometer over info vectors, updating the codeword incrementally
    loop {
        let mut i = 0;
        loop {
            if i == k {
                return Ok(if best == usize::MAX { 0 } else { best });
            }
            let old = info[i];
            let new = if old + 1 == f.q() { 0 } else { old + 1 };
            info[i] = new;
            let delta = f.sub(new, old);
            for (w, &gv) in word.iter_mut().zip(g.row(i)) {
                *w = f.add(*w, f.mul(delta, gv));
            }
            if new != 0 {
                break;
            }
            i += 1;
        }
        let wt = word.iter().filter(|&&x| x != 0).count();
        if wt < best {
            best = wt;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8() -> GaloisField {
        GaloisField::binary(3, 0b1011).unwrap()
    }

    #[test]
    fn generator_times_syndrome_former_vanishes() {
        let f = gf8();
        for k in 1..7 {
            for b in 0..7 {
                let c = RsCode::with_window(&f, 7, k, Variant::Standard, b).unwrap();
                assert!(c.g().mul(&f, &c.h_t()).is_zero());
            }
        }
    }

    #[test]
    fn single_error_syndrome_is_geometric() {
        let f = gf8();
        let c = RsCode::new(&f, 7, 3, Variant::Standard).unwrap();
        let mut r = vec![0; 7];
        r[4] = 6;
        let s = c.syndrome(&r);
        for (j, &sj) in s.iter().enumerate() {
            assert_eq!(sj, f.mul(6, f.alpha_pow(4 * (j as i64 + 1))));
        }
    }

    #[test]
    fn shortened_code_decodes() {
        let f = GaloisField::binary_default(5).unwrap();
        let c = RsCode::of_length(&f, 20, 12).unwrap();
        assert_eq!(c.variant(), Variant::Shortened);
        let info: Vec<u32> = (0..12).map(|i| (i * 7 + 3) % 32).collect();
        let cw = c.encode(&info);
        assert!(c.is_codeword(&cw));
        let mut r = cw.clone();
        for (p, v) in [(0, 5), (7, 1), (13, 30), (19, 2)] {
            r[p] ^= v;
        }
        let d = c.decode_errors(&r);
        assert!(d.is_corrected());
        assert_eq!(d.codeword, cw);
        assert_eq!(d.info, info);
    }

    #[test]
    fn extended_code_decodes() {
        let f = GaloisField::binary_default(3).unwrap();
        let c = RsCode::new(&f, 8, 4, Variant::Extended).unwrap();
        assert_eq!(c.min_distance_bruteforce().unwrap(), 5);
        let cw = c.encode(&[1, 2, 3, 4]);
        let mut r = cw.clone();
        r[0] ^= 3;
        r[5] ^= 1;
        let d = c.decode_errors(&r);
        assert!(d.is_corrected());
        assert_eq!(d.codeword, cw);
    }

    #[test]
    fn prime_field_code_decodes() {
        let f = GaloisField::prime(11).unwrap();
        let c = RsCode::new(&f, 10, 4, Variant::Standard).unwrap();
        let cw = c.encode(&[3, 1, 4, 1]);
        let mut r = cw.clone();
        r[2] = f.add(r[2], 5);
        r[9] = f.add(r[9], 7);
        r[6] = f.add(r[6], 1);
        let d = c.decode_errors(&r);
        assert!(d.is_corrected());
        assert_eq!(d.codeword, cw);
        let d = c.decode_errors_and_erasures(&r, &[2, 9, 0]).unwrap();
        assert!(d.is_corrected());
        assert_eq!(d.codeword, cw);
    }

    #[test]
    fn erasures_beyond_capacity_rejected() {
        let f = gf8();
        let c = RsCode::new(&f, 7, 5, Variant::Standard).unwrap();
        assert_eq!(
            c.decode_erasures(&[0; 7], &[0, 1, 2]).unwrap_err(),
            Error::TooManyErasures { erasures: 3, max: 2 }
        );
    }

    #[test]
    fn systematic_poly_keeps_info_high() {
        let f = gf8();
        let c = RsCode::new(&f, 7, 3, Variant::Standard).unwrap();
        let cw = c.encode_systematic_poly(&[5, 0, 2]).unwrap();
        assert_eq!(&cw[4..], &[5, 0, 2]);
        assert!(c.is_codeword(&cw));
    }

    #[test]
    fn worked_single_error_example() {
        let f = gf8();
        let c = RsCode::new(&f, 7, 5, Variant::Standard).unwrap();
        let a = |i| f.alpha_pow(i);
        let cw = c.encode_poly(&[a(1), 0, 0, 0, a(3)]).unwrap();
        assert_eq!(cw, vec![a(4), a(5), a(1), 0, a(6), 1, a(3)]);
        let mut r = cw.clone();
        r[5] = a(6);
        let d = c.decode_errors(&r);
        assert_eq!(d.syndrome, vec![1, a(5)]);
        let l0 = f.inv(d.locator[0]).unwrap();
        assert_eq!(poly::scale(&f, &d.locator, l0), vec![1, a(5)]);
        assert_eq!(poly::scale(&f, &d.evaluator, l0), vec![1]);
        assert_eq!(d.error_positions, vec![5]);
        assert_eq!(d.error_values, vec![a(2)]);
        assert_eq!(d.codeword, cw);
    }

    #[test]
    fn window_five_gives_integer_systematic_matrix() {
        let f = gf8();
        let c = RsCode::with_window(&f, 7, 3, Variant::Standard, 5).unwrap();
        let want = Matrix::from_rows(&[
            vec![1, 0, 0, 6, 1, 6, 7],
            vec![0, 1, 0, 4, 1, 5, 5],
            vec![0, 0, 1, 3, 1, 2, 3],
        ]);
        assert_eq!(c.g_sys(), &want);
    }

    #[test]
    fn semi_systematic_forms_over_1_x2_x3() {
        let f = GaloisField::binary(3, 0b1101).unwrap();
        let a = |i| f.alpha_pow(i);
        let c = RsCode::new(&f, 7, 3, Variant::Standard).unwrap();
        let vander = Matrix::from_fn(3, 7, |i, j| a((i * j) as i64));
        assert_eq!(c.g(), &vander);
        let two_top = Matrix::from_rows(&[
            vec![1, 0, a(1), a(6), a(5), a(2), a(4)],
            vec![0, 1, a(5), a(4), a(1), a(3), a(6)],
            vec![0, 0, 1, a(4), 1, a(6), a(4)],
        ]);
        assert_eq!(c.semi_systematic(2).unwrap(), two_top);
        let one_top = Matrix::from_rows(&[
            vec![1; 7],
            vec![0, 1, 0, a(5), 1, a(1), a(1)],
            vec![0, 0, 1, a(4), 1, a(6), a(4)],
        ]);
        assert_eq!(c.semi_systematic(1).unwrap(), one_top);
        assert_eq!(&c.semi_systematic(3).unwrap(), c.g_sys());
    }
}
