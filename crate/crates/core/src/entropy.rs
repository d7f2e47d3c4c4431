//! Entropy helpers in bits.

/// Binary entropy `h(p)`, with `h(0) = h(1) = 0`.
pub fn h2(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

/// Shannon entropy of a distribution; zero masses contribute nothing.
pub fn entropy(dist: &[f64]) -> f64 {
    dist.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.log2()).sum()
}

/// Mutual information of a discrete channel with input law `px` and
/// transition rows `w[x][y]`.
pub fn mutual_information(px: &[f64], w: &[Vec<f64>]) -> f64 {
    let ny = w.first().map_or(0, Vec::len);
    let mut py = vec![0.0; ny];
    for (x, row) in w.iter().enumerate() {
        for (y, &t) in row.iter().enumerate() {
            py[y] += px[x] * t;
        }
    }
    let cond: f64 = px.iter().zip(w).map(|(&p, row)| p * entropy(row)).sum();
    entropy(&py) - cond
}

/// Binomial coefficient as a float, exact for results below 2^53.
pub fn binom(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Exact binomial coefficient; `None` on overflow.
pub fn binom_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_entropy_peaks_at_half() {
        assert_eq!(h2(0.5), 1.0);
        assert_eq!(h2(0.0), 0.0);
        assert!((h2(0.11) - 0.4999).abs() < 1e-3);
    }

    #[test]
    fn bsc_mutual_information() {
        let p = 0.1;
        let w = vec![vec![1.0 - p, p], vec![p, 1.0 - p]];
        assert!((mutual_information(&[0.5, 0.5], &w) - (1.0 - h2(p))).abs() < 1e-12);
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(15, 6), 5005.0);
        assert_eq!(binom_u128(64, 32), Some(1_832_624_140_942_590_534));
        assert_eq!(binom(3, 5), 0.0);
    }
}
