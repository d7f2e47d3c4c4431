//! Packet-level erasure coding and array decoding of interleaved codewords.
//!
//! Packets are the rows of a `k x N` array; the combined words are the rows of
//! `G^T P`, so column `j` of the code array is the codeword of column `j` of
//! the packet array.

use crate::error::{bad, Error, Result};
use crate::galois::{FieldElement, GaloisField};
use crate::matrix::Matrix;
use crate::rs_core::RsCode;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PacketBlock {
    pub packets: Vec<Vec<FieldElement>>,
    pub ids: Vec<usize>,
}

impl PacketBlock {
    pub fn new(packets: Vec<Vec<FieldElement>>) -> Result<Self> {
        let len = packets.first().map_or(0, Vec::len);
        if packets.iter().any(|p| p.len() != len) {
            return Err(bad("packets must have equal length"));
        }
        let ids = (0..packets.len()).collect();
        Ok(Self { packets, ids })
    }

    pub fn len(&self) -> usize {
        self.packets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.packets.is_empty()
    }

    pub fn word_len(&self) -> usize {
        self.packets.first().map_or(0, Vec::len)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    Received,
    Lost,
    Unknown,
}

/// Rows of a transmitted code array together with what the receiver knows about them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeArray {
    pub rows: Vec<Vec<FieldElement>>,
    pub row_status: Vec<RowStatus>,
}

impl CodeArray {
    pub fn unknown(rows: Vec<Vec<FieldElement>>) -> Self {
        let row_status = vec![RowStatus::Unknown; rows.len()];
        Self { rows, row_status }
    }
}

/// Binary `(7,3)` combining matrix with minimum distance 4.
pub fn binary_7_3_matrix() -> Matrix {
    Matrix::from_rows(&[
        vec![1, 0, 0, 0, 1, 1, 1],
        vec![0, 1, 0, 1, 0, 1, 1],
        vec![0, 0, 1, 1, 1, 0, 1],
    ])
}

fn to_matrix(rows: &[Vec<FieldElement>]) -> Result<Matrix> {
    let len = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != len) {
        return Err(bad("rows must have equal length"));
    }
    Ok(Matrix::from_rows(rows))
}

/// `Q_i = sum_j g_{j,i} P_j` for every column `i` of the `k x n` matrix `g`.
pub fn combine(f: &GaloisField, block: &PacketBlock, g: &Matrix) -> Result<Vec<Vec<FieldElement>>> {
    if g.rows() != block.len() {
        return Err(bad(format!("matrix has {} rows for {} packets", g.rows(), block.len())));
    }
    let p = to_matrix(&block.packets)?;
    Ok(g.transpose().mul(f, &p).to_rows())
}

/// Recovers the packets from received combined words `(column id, word)`.
///
/// Picks the first k received columns that are linearly independent.
pub fn recover(f: &GaloisField, received: &[(usize, Vec<FieldElement>)], g: &Matrix) -> Result<PacketBlock> {
    let k = g.rows();
    if let Some((id, _)) = received.iter().find(|(id, _)| *id >= g.cols()) {
        return Err(bad(format!("packet id {id} outside the {} columns", g.cols())));
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    for (idx, (id, _)) in received.iter().enumerate() {
        let mut cols: Vec<usize> = chosen.iter().map(|&c| received[c].0).collect();
        cols.push(*id);
        if g.select_cols(&cols).rank(f) == cols.len() {
            chosen.push(idx);
            if chosen.len() == k {
                break;
            }
        }
    }
    if chosen.len() < k {
        return Err(Error::InsufficientRank(chosen.len()));
    }
    let cols: Vec<usize> = chosen.iter().map(|&c| received[c].0).collect();
    let inv = g.select_cols(&cols).inverse(f).ok_or(Error::InsufficientRank(k))?;
    let words: Vec<Vec<FieldElement>> = chosen.iter().map(|&c| received[c].1.clone()).collect();
    let q = to_matrix(&words)?;
    // (Q_sel as columns) = G_sel^T P, so P = (G_sel^T)^{-1} Q_sel.
    let packets = inv.transpose().mul(f, &q).to_rows();
    Ok(PacketBlock { packets, ids: (0..k).collect() })
}

/// Encodes each column of the `k x N` packet array with the column code.
pub fn encode_array(code: &RsCode, block: &PacketBlock) -> Result<Vec<Vec<FieldElement>>> {
    combine(code.field(), block, code.g())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MkOutcome {
    pub block: PacketBlock,
    pub codewords: Vec<Vec<FieldElement>>,
    pub corrupt_rows: Vec<usize>,
    /// Rank of the syndrome array, the number of corrupted rows.
    pub rank: usize,
}

/// Corrects up to `n-k-1` linearly independent corrupted rows of an `n x N` array.
pub fn mk_decode(received: &CodeArray, code: &RsCode) -> Result<MkOutcome> {
    let f = code.field();
    let (n, k) = (code.n(), code.k());
    if received.rows.len() != n {
        return Err(bad(format!("expected {n} rows, got {}", received.rows.len())));
    }
    let r = to_matrix(&received.rows)?;
    let s = code.h().mul(f, &r);
    let ech = s.echelon(f);
    let rank = ech.pivots.len();
    let max = (n - k).saturating_sub(1);
    if rank > max {
        return Err(Error::TooManyCorruptRows { rank, max });
    }
    let h0 = ech.transform.mul(f, code.h());
    for zero_row in rank..n - k {
        let support: Vec<usize> = (0..n).filter(|&j| h0.get(zero_row, j) != 0).collect();
        if support.len() < k {
            continue;
        }
        let pos = &support[..k];
        let Some(inv) = code.g().select_cols(pos).inverse(f) else {
            continue;
        };
        // info^T = (G_pos^T)^{-1} R_pos for all columns at once.
        let info = inv.transpose().mul(f, &r.select_rows(pos));
        let c = code.g().transpose().mul(f, &info);
        if support.iter().any(|&j| c.row(j) != r.row(j)) {
            continue;
        }
        let corrupt_rows: Vec<usize> = (0..n).filter(|&j| c.row(j) != r.row(j)).collect();
        if corrupt_rows.len() != rank {
            continue;
        }
        return Ok(MkOutcome {
            block: PacketBlock { packets: info.to_rows(), ids: (0..k).collect() },
            codewords: c.to_rows(),
            corrupt_rows,
            rank,
        });
    }
    Err(Error::DependentErrors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rs_core::Variant;
    use crate::sim::rng;
    use rand::Rng;

    fn random_block(f: &GaloisField, k: usize, len: usize, seed: u64) -> PacketBlock {
        let mut r = rng(seed);
        let packets = (0..k).map(|_| (0..len).map(|_| r.random_range(0..f.q())).collect()).collect();
        PacketBlock::new(packets).unwrap()
    }

    #[test]
    fn last_word_is_xor_of_all() {
        let f = GaloisField::binary_default(4).unwrap();
        let b = random_block(&f, 3, 6, 1);
        let q = combine(&f, &b, &binary_7_3_matrix()).unwrap();
        let x: Vec<u32> = (0..6).map(|j| b.packets[0][j] ^ b.packets[1][j] ^ b.packets[2][j]).collect();
        assert_eq!(q[6], x);
        assert_eq!(q[0..3], b.packets[..]);
    }

    #[test]
    fn lost_three_four_five_recovered_from_one_two_seven() {
        let f = GaloisField::binary_default(3).unwrap();
        let g = binary_7_3_matrix();
        let sub = g.select_cols(&[0, 1, 6]);
        let inv = sub.inverse(&f).unwrap();
        assert_eq!(inv.to_rows(), vec![vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 1]]);
        let b = random_block(&f, 3, 7, 2);
        let q = combine(&f, &b, &g).unwrap();
        let rx: Vec<(usize, Vec<u32>)> = [0, 1, 5, 6].iter().map(|&i| (i, q[i].clone())).collect();
        assert_eq!(recover(&f, &rx, &g).unwrap().packets, b.packets);
    }

    #[test]
    fn every_three_losses_recoverable() {
        let f = GaloisField::binary_default(2).unwrap();
        let g = binary_7_3_matrix();
        let b = random_block(&f, 3, 4, 3);
        let q = combine(&f, &b, &g).unwrap();
        for mask in 0u32..128 {
            if mask.count_ones() != 3 {
                continue;
            }
            let rx: Vec<(usize, Vec<u32>)> = (0..7).filter(|i| mask >> i & 1 == 0).map(|i| (i, q[i].clone())).collect();
            assert_eq!(recover(&f, &rx, &g).unwrap().packets, b.packets, "mask {mask:b}");
        }
    }

    #[test]
    fn too_few_words_rejected() {
        let f = GaloisField::binary_default(2).unwrap();
        let g = binary_7_3_matrix();
        let rx = vec![(0, vec![1]), (1, vec![1])];
        assert!(matches!(recover(&f, &rx, &g), Err(Error::InsufficientRank(2))));
    }

    #[test]
    fn mk_corrects_three_rows_of_six_two() {
        let f = GaloisField::binary_default(3).unwrap();
        let code = RsCode::new(&f, 6, 2, Variant::Shortened).unwrap();
        let mut r = rng(9);
        let mut ok = 0;
        for trial in 0..50 {
            let b = random_block(&f, 2, 5, 100 + trial);
            let c = encode_array(&code, &b).unwrap();
            let mut rows = c.clone();
            let bad_rows = [0usize, 2, 5];
            for &i in &bad_rows {
                for x in rows[i].iter_mut() {
                    *x ^= r.random_range(0..8);
                }
            }
            match mk_decode(&CodeArray::unknown(rows), &code) {
                Ok(out) => {
                    assert_eq!(out.codewords, c);
                    assert_eq!(out.block.packets, b.packets);
                    ok += 1;
                }
                Err(Error::DependentErrors) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(ok >= 40);
    }

    #[test]
    fn clean_array_passes_through() {
        let f = GaloisField::binary_default(3).unwrap();
        let code = RsCode::new(&f, 7, 3, Variant::Standard).unwrap();
        let b = random_block(&f, 3, 4, 5);
        let c = encode_array(&code, &b).unwrap();
        let out = mk_decode(&CodeArray::unknown(c.clone()), &code).unwrap();
        assert_eq!(out.rank, 0);
        assert_eq!(out.codewords, c);
    }

    #[test]
    fn full_redundancy_of_errors_rejected() {
        let f = GaloisField::binary_default(3).unwrap();
        let code = RsCode::new(&f, 6, 2, Variant::Shortened).unwrap();
        let b = random_block(&f, 2, 6, 6);
        let mut rows = encode_array(&code, &b).unwrap();
        for (i, row) in rows.iter_mut().take(4).enumerate() {
            row[i] ^= 1;
        }
        assert!(matches!(mk_decode(&CodeArray::unknown(rows), &code), Err(Error::TooManyCorruptRows { rank: 4, max: 3 })));
    }
}
