//! Fixed workloads shared by the benchmarks.

use rand::Rng;
use rscodes::sim::rng;
use rscodes::{FieldElement, GaloisField, RsCode};

/// The code, a codeword, and the same codeword with `t` symbol errors.
pub struct Workload {
    pub code: RsCode,
    pub info: Vec<FieldElement>,
    pub codeword: Vec<FieldElement>,
    pub received: Vec<FieldElement>,
}

pub fn rs_workload(m: u32, n: usize, k: usize, seed: u64) -> Workload {
    let f = GaloisField::binary_default(m).expect("supported degree");
    let code = RsCode::of_length(&f, n, k).expect("valid parameters");
    let mut r = rng(seed);
    let info: Vec<FieldElement> = (0..k).map(|_| r.random_range(0..f.q())).collect();
    let codeword = code.encode(&info);
    let mut received = codeword.clone();
    for p in rand::seq::index::sample(&mut r, n, code.t()) {
        received[p] = f.add(received[p], r.random_range(1..f.q()));
    }
    Workload { code, info, codeword, received }
}

pub fn random_symbols(q: u32, len: usize, seed: u64) -> Vec<FieldElement> {
    let mut r = rng(seed);
    (0..len).map(|_| r.random_range(0..q)).collect()
}
