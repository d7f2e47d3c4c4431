//! Polynomials over a [`GaloisField`], stored lowest degree first.

use crate::galois::{FieldElement, GaloisField};

pub type Poly = Vec<FieldElement>;

pub fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(p: &[FieldElement]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

pub fn eval(f: &GaloisField, p: &[FieldElement], x: FieldElement) -> FieldElement {
    p.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn add(f: &GaloisField, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0));
    }
    trim(&mut out);
    out
}

pub fn sub(f: &GaloisField, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0));
    }
    trim(&mut out);
    out
}

pub fn scale(f: &GaloisField, a: &[FieldElement], s: FieldElement) -> Poly {
    let mut out: Poly = a.iter().map(|&c| f.mul(c, s)).collect();
    trim(&mut out);
    out
}

pub fn mul(f: &GaloisField, a: &[FieldElement], b: &[FieldElement]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(f: &GaloisField, a: &[FieldElement], b: &[FieldElement]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let mut quot = vec![0; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        quot[shift] = c;
        for (j, &bj) in b.iter().enumerate().take(db + 1) {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, bj));
        }
        trim(&mut r);
    }
    trim(&mut quot);
    (quot, r)
}

/// Formal derivative.
pub fn deriv(f: &GaloisField, a: &[FieldElement]) -> Poly {
    let mut out: Poly = a.iter().enumerate().skip(1).map(|(i, &c)| f.mul_int(c, i as u64)).collect();
    trim(&mut out);
    out
}

/// Monic product of `(X - r)` over all roots.
pub fn from_roots(f: &GaloisField, roots: &[FieldElement]) -> Poly {
    roots.iter().fold(vec![1], |acc, &r| mul(f, &acc, &[f.neg(r), 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let f = GaloisField::binary_default(4).unwrap();
        let a = vec![3, 7, 0, 9, 1, 12];
        let b = vec![5, 0, 2];
        let (qq, r) = divrem(&f, &a, &b);
        assert!(degree(&r).is_none_or(|d| d < 2));
        assert_eq!(add(&f, &mul(&f, &qq, &b), &r), a);
    }

    #[test]
    fn roots_vanish() {
        let f = GaloisField::prime(11).unwrap();
        let p = from_roots(&f, &[2, 5, 7]);
        for r in [2, 5, 7] {
            assert_eq!(eval(&f, &p, r), 0);
        }
        assert_ne!(eval(&f, &p, 3), 0);
    }

    #[test]
    fn derivative_in_odd_characteristic() {
        let f = GaloisField::prime(7).unwrap();
        assert_eq!(deriv(&f, &[1, 2, 3, 4]), vec![2, 6, 5]);
    }
}
