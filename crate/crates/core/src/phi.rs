//! The q-ary to binary indicator transform, run decomposition with run
//! sums, and the d-regularity predicates.
//!
//! The transform maps a q-ary string to the binary string that records,
//! per position, whether the symbol is >= its predecessor (first position
//! always 1). Deleting up to two symbols from the q-ary string maps to a
//! subsequence of the transform, which is what lets a binary sketch drive
//! q-ary recovery.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::strings::{BinaryString, QaryString};

/// Indicator transform: bit i is 1 iff i = 1 or alpha_i >= alpha_{i-1}.
pub fn phi(alpha: &QaryString) -> Result<BinaryString> {
    if alpha.is_empty() {
        return Err(Error::Parameter("phi of an empty string".into()));
    }
    let mut bits = Vec::with_capacity(alpha.len());
    phi_into(alpha.symbols(), &mut bits);
    Ok(BinaryString::from_raw(bits))
}

/// Allocation-free variant for hot loops; `out` is cleared first.
pub(crate) fn phi_into(symbols: &[u32], out: &mut Vec<u8>) {
    out.clear();
    out.reserve(symbols.len());
    let mut prev = None;
    for &s in symbols {
        let bit = match prev {
            None => 1,
            Some(p) => u8::from(s >= p),
        };
        out.push(bit);
        prev = Some(s);
    }
}

/// Maximal constant-bit runs of the transform of a q-ary string, together
/// with the per-run sums of the q-ary symbols.
///
/// Runs alternate bit values starting from 1, so run i (1-based) carries
/// bit 1 when i is odd. `boundaries` holds j_0 = 0 and j_i = j_{i-1} +
/// len_i, so run i covers 1-based positions j_{i-1}+1 ..= j_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunDecomposition {
    pub run_count: usize,
    pub run_lengths: Vec<usize>,
    pub boundaries: Vec<usize>,
    pub run_sums: Vec<u64>,
}

impl RunDecomposition {
    /// Bit value of run i (1-based).
    pub fn run_bit(&self, i: usize) -> u8 {
        debug_assert!(i >= 1 && i <= self.run_count);
        u8::from(i % 2 == 1)
    }
}

pub fn run_decompose(alpha: &QaryString) -> Result<RunDecomposition> {
    if alpha.is_empty() {
        return Err(Error::Parameter("run decomposition of an empty string".into()));
    }
    let mut bits = Vec::new();
    phi_into(alpha.symbols(), &mut bits);
    let lengths = run_lengths_of_bits(&bits);

    let mut boundaries = Vec::with_capacity(lengths.len() + 1);
    boundaries.push(0);
    let mut run_sums = Vec::with_capacity(lengths.len());
    let mut pos = 0usize;
    for &len in &lengths {
        let sum: u64 = alpha.symbols()[pos..pos + len]
            .iter()
            .map(|&s| s as u64)
            .sum();
        run_sums.push(sum);
        pos += len;
        boundaries.push(pos);
    }
    Ok(RunDecomposition {
        run_count: lengths.len(),
        run_lengths: lengths,
        boundaries,
        run_sums,
    })
}

/// Run-length profile of a bit string (first run carries the first bit).
pub(crate) fn run_lengths_of_bits(bits: &[u8]) -> Vec<usize> {
    let mut lengths = Vec::new();
    let mut iter = bits.iter();
    let Some(&first) = iter.next() else {
        return lengths;
    };
    let mut cur_bit = first;
    let mut cur_len = 1usize;
    for &b in iter {
        if b == cur_bit {
            cur_len += 1;
        } else {
            lengths.push(cur_len);
            cur_bit = b;
            cur_len = 1;
        }
    }
    lengths.push(cur_len);
    lengths
}

/// ceil(log2(x)) for x >= 1.
pub fn ceil_log2_u64(x: u64) -> u32 {
    assert!(x >= 1, "ceil_log2 of 0");
    if x == 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Qualifying window length for the d-regularity check on strings of
/// length n: ceil(d * log2(n)), computed exactly via ceil(log2(n^d)).
///
/// A window shorter than 4 cannot contain both 00 and 11, so degenerate
/// parameter choices (tiny n or d) are clamped to 4 and read as vacuous
/// rather than unsatisfiable.
pub fn regular_window_len(n: usize, d: u32) -> usize {
    assert!(d >= 1, "regularity parameter d must be positive");
    if n <= 1 {
        return 4;
    }
    let pow = BigUint::from(n).pow(d);
    // ceil(log2(pow)) = bits(pow - 1) for pow >= 2
    let w = (&pow - BigUint::one()).bits() as usize;
    w.max(4)
}

/// True iff every window of length >= ceil(d*log2(n)) contains both "00"
/// and "11", where n is the string's own length. Vacuously true when the
/// window exceeds the string.
pub fn is_d_regular_binary(a: &BinaryString, d: u32) -> bool {
    is_d_regular_bits(a.bits(), d)
}

pub(crate) fn is_d_regular_bits(bits: &[u8], d: u32) -> bool {
    let n = bits.len();
    if n == 0 {
        return true;
    }
    let w = regular_window_len(n, d);
    if w > n {
        return true;
    }
    // Checking windows of length exactly w is equivalent: any longer
    // window contains one, and every length-w window is itself checked.
    // Sliding scan of the most recent 00 / 11 occurrence.
    let mut last00: Option<usize> = None; // index of second bit of the pair
    let mut last11: Option<usize> = None;
    for i in 1..n {
        if bits[i - 1] == 0 && bits[i] == 0 {
            last00 = Some(i);
        }
        if bits[i - 1] == 1 && bits[i] == 1 {
            last11 = Some(i);
        }
        if i + 1 >= w {
            // window covers indices i+1-w ..= i; a pair at second-index t
            // lies inside iff t >= i+2-w
            let lo = i + 2 - w;
            let ok00 = last00.is_some_and(|t| t >= lo);
            let ok11 = last11.is_some_and(|t| t >= lo);
            if !(ok00 && ok11) {
                return false;
            }
        }
    }
    true
}

/// d-regularity of a q-ary string, defined as d-regularity of its
/// indicator transform.
pub fn is_d_regular_qary(alpha: &QaryString, d: u32) -> Result<bool> {
    if alpha.is_empty() {
        return Err(Error::Parameter("regularity of an empty string".into()));
    }
    let mut bits = Vec::new();
    phi_into(alpha.symbols(), &mut bits);
    Ok(is_d_regular_bits(&bits, d))
}
