//! Integer encoding of length-`n` words over an alphabet of size `k`.
//!
//! Letter `t` of a word is digit `t` of its index in base `k`, least
//! significant first.

use crate::{Error, Result};

/// Number of words of length `n`, or an overflow error.
pub fn word_count(k: usize, n: u32) -> Result<usize> {
    k.checked_pow(n)
        .ok_or_else(|| Error::Overflow(format!("{k}^{n} does not fit in usize")))
}

pub fn encode(letters: &[usize], k: usize) -> Result<usize> {
    let mut index = 0usize;
    for &letter in letters.iter().rev() {
        if letter >= k {
            return Err(Error::SymbolOutOfRange {
                symbol: letter,
                size: k,
            });
        }
        index = index
            .checked_mul(k)
            .and_then(|v| v.checked_add(letter))
            .ok_or_else(|| Error::Overflow("word index".into()))?;
    }
    Ok(index)
}

pub fn decode_into(mut index: usize, k: usize, out: &mut [usize]) {
    for slot in out.iter_mut() {
        *slot = index % k;
        index /= k;
    }
}

pub fn decode(index: usize, k: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    decode_into(index, k, &mut out);
    out
}
