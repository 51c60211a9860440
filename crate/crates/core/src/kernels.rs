//! Strided base-4 index kernels.
//!
//! Coefficient index `Σ i_k 4^k` stores the Pauli subscript of qubit `k` in bits
//! `2k..2k+2`. A local operation on qubit `k` touches 4-tuples spaced `4^k`
//! apart; a two-qubit operation touches 16-tuples. Tuple entry 0 (all touched
//! digits equal to 0) is read but never written, so the trace coefficient is
//! left untouched by every kernel.

use rayon::prelude::*;

use crate::Real;

/// Below this many coefficients kernels stay on the calling thread.
const PAR_MIN_LEN: usize = 1 << 14;
const LANE: usize = 1 << 11;

#[inline]
pub(crate) fn stride(k: usize) -> usize {
    1usize << (2 * k)
}

#[inline]
pub(crate) fn digit(index: usize, k: usize) -> usize {
    (index >> (2 * k)) & 3
}

/// Inserts a zero base-4 digit at position `pos`, shifting higher digits up.
#[inline]
fn insert_zero_digit(m: usize, pos: usize) -> usize {
    let low_mask = stride(pos) - 1;
    ((m & !low_mask) << 2) | (m & low_mask)
}

/// Number of base-4 digits of `index` equal to 1 or 2 (transverse components).
#[inline]
pub(crate) fn transverse_weight(index: usize) -> u32 {
    ((index ^ (index >> 1)) & 0x5555_5555_5555_5555).count_ones()
}

/// Replaces digits 1..3 of every qubit-`k` 4-tuple by `f(tuple)`.
pub(crate) fn map_quads<T, F>(coeffs: &mut [T], k: usize, f: F)
where
    T: Real,
    F: Fn([T; 4]) -> [T; 3] + Sync,
{
    let s = stride(k);
    let block = 4 * s;
    debug_assert_eq!(coeffs.len() % block, 0);

    let lanes = |c0: &[T], c1: &mut [T], c2: &mut [T], c3: &mut [T]| {
        for j in 0..c0.len() {
            let out = f([c0[j], c1[j], c2[j], c3[j]]);
            c1[j] = out[0];
            c2[j] = out[1];
            c3[j] = out[2];
        }
    };
    let split = |chunk: &mut [T]| {
        let (c0, rest) = chunk.split_at_mut(s);
        let (c1, rest) = rest.split_at_mut(s);
        let (c2, c3) = rest.split_at_mut(s);
        lanes(c0, c1, c2, c3);
    };

    if coeffs.len() < PAR_MIN_LEN {
        coeffs.chunks_mut(block).for_each(split);
    } else if coeffs.len() / block >= 8 {
        coeffs.par_chunks_mut(block).for_each(split);
    } else {
        for chunk in coeffs.chunks_mut(block) {
            let (c0, rest) = chunk.split_at_mut(s);
            let (c1, rest) = rest.split_at_mut(s);
            let (c2, c3) = rest.split_at_mut(s);
            c0.par_chunks(LANE)
                .zip(c1.par_chunks_mut(LANE))
                .zip(c2.par_chunks_mut(LANE))
                .zip(c3.par_chunks_mut(LANE))
                .for_each(|(((a, b), c), d)| lanes(a, b, c, d));
        }
    }
}

/// Replaces entries 1..16 of every `(k, l)` 16-tuple by `f(tuple)`.
///
/// Tuple position `t = i_k + 4 i_l`; `f` must return the full 16-tuple, of
/// which entry 0 is discarded.
pub(crate) fn map_pairs<T, F>(coeffs: &mut [T], k: usize, l: usize, f: F)
where
    T: Real,
    F: Fn(&[T; 16]) -> [T; 16] + Sync,
{
    assert_ne!(k, l);
    let (lo, hi) = if k < l { (k, l) } else { (l, k) };
    let block = stride(hi + 1);
    let groups_per_block = block / 16;
    let (sk, sl) = (stride(k), stride(l));
    let offsets: [usize; 16] = std::array::from_fn(|t| (t & 3) * sk + (t >> 2) * sl);

    let run_block = |chunk: &mut [T]| {
        let mut tuple = [T::zero(); 16];
        for m in 0..groups_per_block {
            let base = insert_zero_digit(insert_zero_digit(m, lo), hi);
            for (t, off) in offsets.iter().enumerate() {
                tuple[t] = chunk[base + off];
            }
            let out = f(&tuple);
            for t in 1..16 {
                chunk[base + offsets[t]] = out[t];
            }
        }
    };

    if coeffs.len() >= PAR_MIN_LEN && coeffs.len() / block >= 8 {
        coeffs.par_chunks_mut(block).for_each(run_block);
    } else {
        coeffs.chunks_mut(block).for_each(run_block);
    }
}

/// Multiplies every coefficient by `factor(index)`, skipping index 0.
pub(crate) fn scale_by_index<T, F>(coeffs: &mut [T], factor: F)
where
    T: Real,
    F: Fn(usize) -> T + Sync,
{
    let body = |(chunk_idx, chunk): (usize, &mut [T])| {
        let start = chunk_idx * LANE;
        for (j, c) in chunk.iter_mut().enumerate() {
            let idx = start + j;
            if idx != 0 {
                *c *= factor(idx);
            }
        }
    };
    if coeffs.len() < PAR_MIN_LEN {
        coeffs.chunks_mut(LANE).enumerate().for_each(body);
    } else {
        coeffs.par_chunks_mut(LANE).enumerate().for_each(body);
    }
}
