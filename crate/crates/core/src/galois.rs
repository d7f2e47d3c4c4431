//! Exact arithmetic in GF(p) and GF(2^m).
//!
//! Elements are integer labels. For GF(2^m) the label of
//! `p_0 + p_1 X + ... + p_{m-1} X^{m-1}` is `sum p_i 2^i`, so the constant
//! term is the least significant bit and `X` has label 2. `X` must be
//! primitive under the supplied polynomial; non-primitive polynomials are
//! rejected. For GF(p) the primitive element is the smallest primitive root.

use std::fmt;
use std::sync::Arc;

use crate::error::{bad, Error, Result};

pub type FieldElement = u32;

/// Largest supported extension degree.
pub const MAX_M: u32 = 16;

/// Default primitive polynomial for each degree, indexed by `m`.
pub const DEFAULT_POLYS: [u32; 17] = [
    0,
    0b11,
    0b111,
    0b1011,
    0b10011,
    0b100101,
    0b1000011,
    0b10001001,
    0x11D,
    0x211,
    0x409,
    0x805,
    0x1053,
    0x201B,
    0x4443,
    0x8003,
    0x1100B,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime,
    Binary,
}

#[derive(Debug)]
struct Tables {
    // exp has length 2(q-1) so a product of two logs never needs a reduction
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Clone)]
pub struct GaloisField {
    kind: FieldKind,
    p: u32,
    m: u32,
    poly: u32,
    q: u32,
    tables: Arc<Tables>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.p == other.p && self.m == other.m && self.poly == other.poly
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Prime => write!(f, "GF({})", self.p),
            FieldKind::Binary => write!(f, "GF(2^{}; {:#b})", self.m, self.poly),
        }
    }
}

/// One line of the element table: `alpha^power`, its polynomial, tuple and inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementRow {
    pub power: u32,
    pub label: FieldElement,
    pub polynomial: String,
    pub tuple: String,
    pub inverse_power: u32,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl GaloisField {
    /// Builds GF(p) when `kind` is prime (`p_or_m = p`) or GF(2^m) otherwise.
    pub fn new(kind: FieldKind, p_or_m: u32, poly: Option<u32>) -> Result<Self> {
        match kind {
            FieldKind::Prime => Self::prime(p_or_m),
            FieldKind::Binary => match poly {
                Some(poly) => Self::binary(p_or_m, poly),
                None => Self::binary_default(p_or_m),
            },
        }
    }

    pub fn binary_default(m: u32) -> Result<Self> {
        if m == 0 || m > MAX_M {
            return Err(bad(format!("extension degree {m} outside 1..={MAX_M}")));
        }
        Self::binary(m, DEFAULT_POLYS[m as usize])
    }

    pub fn binary(m: u32, poly: u32) -> Result<Self> {
        if m == 0 || m > MAX_M {
            return Err(bad(format!("extension degree {m} outside 1..={MAX_M}")));
        }
        if poly >> m != 1 {
            return Err(bad(format!("polynomial {poly:#b} does not have degree {m}")));
        }
        let q = 1u32 << m;
        let order = q - 1;
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            if x == 0 || log[x as usize] != u32::MAX {
                return Err(Error::NotMinimalPolynomial { m, poly, period: i });
            }
            exp[i as usize] = x;
            log[x as usize] = i;
            x <<= 1;
            if x & q != 0 {
                x ^= poly;
            }
        }
        if x != 1 {
            return Err(Error::NotMinimalPolynomial { m, poly, period: 0 });
        }
        for i in 0..order as usize {
            exp[i + order as usize] = exp[i];
        }
        Ok(Self { kind: FieldKind::Binary, p: 2, m, poly, q, tables: Arc::new(Tables { exp, log }) })
    }

    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) || p > 1 << MAX_M {
            return Err(Error::NotPrime(p));
        }
        let order = p - 1;
        for g in 1..p {
            let mut exp = vec![0u32; 2 * order as usize];
            let mut log = vec![u32::MAX; p as usize];
            let mut x = 1u64;
            let mut ok = true;
            for i in 0..order {
                if log[x as usize] != u32::MAX {
                    ok = false;
                    break;
                }
                exp[i as usize] = x as u32;
                log[x as usize] = i;
                x = x * g as u64 % p as u64;
            }
            if ok && x == 1 {
                for i in 0..order as usize {
                    exp[i + order as usize] = exp[i];
                }
                return Ok(Self {
                    kind: FieldKind::Prime,
                    p,
                    m: 1,
                    poly: 0,
                    q: p,
                    tables: Arc::new(Tables { exp, log }),
                });
            }
        }
        Err(Error::NotPrime(p))
    }

    /// GF(q) for a prime or a power of two, using the default polynomial.
    pub fn of_order(q: u32) -> Result<Self> {
        if q.is_power_of_two() && q >= 2 {
            Self::binary_default(q.trailing_zeros())
        } else {
            Self::prime(q)
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn poly(&self) -> u32 {
        self.poly
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, q - 1.
    pub fn order(&self) -> u32 {
        self.q - 1
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a < self.q
    }

    pub fn elements(&self) -> std::ops::Range<FieldElement> {
        0..self.q
    }

    pub fn alpha(&self) -> FieldElement {
        self.tables.exp[1 % self.order() as usize]
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match self.kind {
            FieldKind::Binary => a ^ b,
            FieldKind::Prime => (a + b) % self.p,
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match self.kind {
            FieldKind::Binary => a ^ b,
            FieldKind::Prime => (a + self.p - b) % self.p,
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.sub(0, a)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.tables;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a == 0 {
            return Err(Error::DivideByZero);
        }
        let t = &self.tables;
        let l = t.log[a as usize];
        Ok(t.exp[((self.order() - l) % self.order()) as usize])
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.tables.log[a as usize] as u64;
        self.tables.exp[(l * (e % self.order() as u64) % self.order() as u64) as usize]
    }

    /// `alpha^i` for any integer exponent.
    #[inline]
    pub fn alpha_pow(&self, i: i64) -> FieldElement {
        let o = self.order() as i64;
        self.tables.exp[i.rem_euclid(o) as usize]
    }

    /// Discrete logarithm to base alpha; `None` for zero.
    #[inline]
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.tables.log[a as usize])
        }
    }

    /// `a` added to itself `n` times.
    pub fn mul_int(&self, a: FieldElement, n: u64) -> FieldElement {
        match self.kind {
            FieldKind::Binary => {
                if n % 2 == 1 {
                    a
                } else {
                    0
                }
            }
            FieldKind::Prime => ((a as u64 * (n % self.p as u64)) % self.p as u64) as u32,
        }
    }

    pub fn polynomial_string(&self, a: FieldElement) -> String {
        if self.kind == FieldKind::Prime {
            return a.to_string();
        }
        if a == 0 {
            return "0".into();
        }
        let mut terms = Vec::new();
        for i in 0..self.m {
            if a >> i & 1 == 1 {
                terms.push(match i {
                    0 => "1".to_string(),
                    1 => "X".to_string(),
                    _ => format!("X^{i}"),
                });
            }
        }
        terms.join("+")
    }

    pub fn tuple_string(&self, a: FieldElement) -> String {
        if self.kind == FieldKind::Prime {
            return a.to_string();
        }
        (0..self.m).map(|i| if a >> i & 1 == 1 { '1' } else { '0' }).collect()
    }

    /// Rows for `alpha^1, ..., alpha^{q-1} = 1`, in the order of the printed element table.
    pub fn element_table(&self) -> Vec<ElementRow> {
        let o = self.order();
        (1..=o)
            .map(|power| {
                let label = self.alpha_pow(power as i64);
                ElementRow {
                    power,
                    label,
                    polynomial: self.polynomial_string(label),
                    tuple: self.tuple_string(label),
                    inverse_power: (o - power % o) % o,
                }
            })
            .collect()
    }
}

/// Parses a binary polynomial given as `1+X+X^3` (superscript digits and
/// `x` accepted), `0b1011`, `0x0b` or a decimal label.
pub fn parse_polynomial(s: &str) -> Result<u32> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(b) = t.strip_prefix("0b") {
        return u32::from_str_radix(b, 2).map_err(|_| bad(format!("bad binary polynomial {s}")));
    }
    if let Some(h) = t.strip_prefix("0x") {
        return u32::from_str_radix(h, 16).map_err(|_| bad(format!("bad hex polynomial {s}")));
    }
    if let Ok(v) = t.parse::<u32>() {
        return Ok(v);
    }
    const SUPERSCRIPTS: [char; 10] = ['\u{2070}', '\u{b9}', '\u{b2}', '\u{b3}', '\u{2074}', '\u{2075}', '\u{2076}', '\u{2077}', '\u{2078}', '\u{2079}'];
    let mut poly = 0u32;
    for term in t.split('+') {
        let term = term.to_ascii_uppercase();
        let exp = if term == "1" {
            0
        } else if let Some(rest) = term.strip_prefix('X') {
            let digits: String = rest
                .trim_start_matches('^')
                .chars()
                .map(|c| SUPERSCRIPTS.iter().position(|&x| x == c).map_or(c, |d| char::from(b'0' + d as u8)))
                .collect();
            if digits.is_empty() {
                1
            } else {
                digits.parse::<u32>().map_err(|_| bad(format!("bad term {term} in {s}")))?
            }
        } else {
            return Err(bad(format!("bad term {term} in {s}")));
        };
        if exp > MAX_M {
            return Err(bad(format!("degree {exp} above {MAX_M}")));
        }
        poly ^= 1 << exp;
    }
    Ok(poly)
}
