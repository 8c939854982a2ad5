//! String types over finite alphabets and the deletion primitives used
//! throughout: subsequence tests, deletions at given positions, and the
//! brute-force deletion ball.
//!
//! All public position arguments are 1-based.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// A string over the alphabet {0, .., q-1}.
///
/// The alphabet size travels with the string; operations on two strings
/// reject mixed alphabets instead of coercing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QaryString {
    q: u32,
    symbols: Vec<u32>,
}

impl QaryString {
    pub fn new(q: u32, symbols: Vec<u32>) -> Result<Self> {
        if q < 2 {
            return Err(Error::Parameter(format!("alphabet size q={q} must be >= 2")));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s >= q) {
            return Err(Error::Parameter(format!("symbol {s} out of range for q={q}")));
        }
        Ok(QaryString { q, symbols })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    /// Parse one line of the shared text format: decimal symbols separated
    /// by single spaces, empty line = empty string.
    pub fn parse_line(q: u32, line: &str) -> Result<Self> {
        let line = line.trim_end_matches(['\r', '\n']);
        if line.trim().is_empty() {
            return QaryString::new(q, Vec::new());
        }
        let symbols = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| Error::Format(format!("bad symbol {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        QaryString::new(q, symbols)
    }

    /// Emit the shared text format (no trailing newline).
    pub fn to_line(&self) -> String {
        self.symbols
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for QaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}:[{}]", self.q, self.to_line())
    }
}

/// A binary string; elements are stored as 0/1 bytes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryString {
    bits: Vec<u8>,
}

impl BinaryString {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::Parameter(format!("bit value {b} is not 0 or 1")));
        }
        Ok(BinaryString { bits })
    }

    pub(crate) fn from_raw(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        BinaryString { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn is_subsequence_of(&self, other: &BinaryString) -> bool {
        is_subsequence_slice(&self.bits, &other.bits)
    }

    /// View as a q-ary string over any alphabet of size >= 2.
    pub fn to_qary(&self, q: u32) -> QaryString {
        QaryString {
            q,
            symbols: self.bits.iter().map(|&b| b as u32).collect(),
        }
    }
}

impl fmt::Debug for BinaryString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

pub(crate) fn is_subsequence_slice<T: PartialEq>(y: &[T], x: &[T]) -> bool {
    let mut it = x.iter();
    y.iter().all(|want| it.any(|got| got == want))
}

/// True iff `y` can be obtained from `x` by deleting symbols
/// (equivalently, `y` embeds into `x` order-preservingly).
pub fn is_subsequence(y: &QaryString, x: &QaryString) -> Result<bool> {
    if y.q != x.q {
        return Err(Error::Parameter(format!(
            "alphabet mismatch: q={} vs q={}",
            y.q, x.q
        )));
    }
    Ok(is_subsequence_slice(&y.symbols, &x.symbols))
}

/// Remove the symbols at the given 1-based positions, preserving order.
pub fn delete_at(x: &QaryString, positions: &[usize]) -> Result<QaryString> {
    let n = x.len();
    let mut seen = vec![false; n + 1];
    for &p in positions {
        if p == 0 || p > n {
            return Err(Error::Parameter(format!(
                "deletion position {p} out of range 1..={n}"
            )));
        }
        if seen[p] {
            return Err(Error::Parameter(format!("duplicate deletion position {p}")));
        }
        seen[p] = true;
    }
    let symbols = x
        .symbols
        .iter()
        .enumerate()
        .filter(|(i, _)| !seen[i + 1])
        .map(|(_, &s)| s)
        .collect();
    Ok(QaryString { q: x.q, symbols })
}

/// All distinct subsequences of `x` of length |x| - t.
pub fn deletion_ball(x: &QaryString, t: usize) -> Result<HashSet<QaryString>> {
    if t > x.len() {
        return Err(Error::Parameter(format!(
            "cannot delete {t} symbols from a string of length {}",
            x.len()
        )));
    }
    let mut ball = HashSet::new();
    let mut positions: Vec<usize> = (1..=t).collect();
    if t == 0 {
        ball.insert(x.clone());
        return Ok(ball);
    }
    // odometer over all t-subsets of 1..=n
    let n = x.len();
    loop {
        ball.insert(delete_at(x, &positions)?);
        // advance
        let mut i = t;
        loop {
            if i == 0 {
                return Ok(ball);
            }
            if positions[i - 1] < n - (t - i) {
                positions[i - 1] += 1;
                for j in i..t {
                    positions[j] = positions[j - 1] + 1;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Iterate every string of length `len` over {0,..,q-1} in lexicographic
/// order, calling `f` on each. Used by the exhaustive harnesses.
pub fn for_each_string(q: u32, len: usize, mut f: impl FnMut(&[u32])) {
    let mut buf = vec![0u32; len];
    loop {
        f(&buf);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            buf[i - 1] += 1;
            if buf[i - 1] < q {
                break;
            }
            buf[i - 1] = 0;
            i -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qs(q: u32, s: &[u32]) -> QaryString {
        QaryString::new(q, s.to_vec()).unwrap()
    }

    #[test]
    fn subsequence_examples() {
        assert!(is_subsequence(&qs(2, &[1, 0]), &qs(2, &[1, 1, 0])).unwrap());
        assert!(!is_subsequence(&qs(2, &[0, 1]), &qs(2, &[1, 0])).unwrap());
        assert!(is_subsequence(&qs(3, &[2, 1, 1]), &qs(3, &[2, 0, 1, 1, 0])).unwrap());
    }

    #[test]
    fn subsequence_rejects_alphabet_mismatch() {
        let err = is_subsequence(&qs(2, &[1]), &qs(3, &[1])).unwrap_err();
        assert!(matches!(err, Error::Parameter(_)));
    }

    #[test]
    fn delete_at_examples() {
        assert_eq!(
            delete_at(&qs(3, &[2, 0, 1, 1, 0]), &[2, 5]).unwrap(),
            qs(3, &[2, 1, 1])
        );
        assert_eq!(delete_at(&qs(2, &[0, 0, 0]), &[1]).unwrap(), qs(2, &[0, 0]));
        assert_eq!(delete_at(&qs(4, &[1, 2, 3]), &[]).unwrap(), qs(4, &[1, 2, 3]));
        assert!(delete_at(&qs(2, &[0, 1]), &[3]).is_err());
        assert!(delete_at(&qs(2, &[0, 1]), &[1, 1]).is_err());
    }

    #[test]
    fn deletion_ball_examples() {
        let b = deletion_ball(&qs(2, &[0, 0, 0]), 1).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b.contains(&qs(2, &[0, 0])));

        let b = deletion_ball(&qs(2, &[0, 1]), 1).unwrap();
        assert_eq!(b.len(), 2);

        let b = deletion_ball(&qs(2, &[1, 0, 1]), 2).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.contains(&qs(2, &[1])));
        assert!(b.contains(&qs(2, &[0])));
    }

    #[test]
    fn deletion_ball_zero_is_identity() {
        let x = qs(3, &[2, 1, 0]);
        let b = deletion_ball(&x, 0).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b.contains(&x));
    }

    #[test]
    fn ball_matches_naive_enumeration_small() {
        // exact ball size equals enumerate-and-dedupe for all |x| <= 8 would
        // be slow for every q; spot the q=2 full grid at n <= 6 and q=3 at
        // n <= 4, plus the invariant that deletions land inside the ball.
        for q in [2u32, 3] {
            let max_n = if q == 2 { 6 } else { 4 };
            for n in 1..=max_n {
                for_each_string(q, n, |sym| {
                    let x = qs(q, sym);
                    for t in 0..=2.min(n) {
                        let ball = deletion_ball(&x, t).unwrap();
                        let mut naive = HashSet::new();
                        // enumerate deletion position sets naively
                        let mut stack = vec![(Vec::new(), 1usize)];
                        while let Some((sel, start)) = stack.pop() {
                            if sel.len() == t {
                                naive.insert(delete_at(&x, &sel).unwrap());
                                continue;
                            }
                            for p in start..=n {
                                let mut s2 = sel.clone();
                                s2.push(p);
                                stack.push((s2, p + 1));
                            }
                        }
                        assert_eq!(ball, naive);
                        for y in &ball {
                            assert!(is_subsequence(y, &x).unwrap());
                        }
                    }
                });
            }
        }
    }

    #[test]
    fn text_format_roundtrip() {
        let x = qs(5, &[0, 4, 2]);
        assert_eq!(x.to_line(), "0 4 2");
        assert_eq!(QaryString::parse_line(5, "0 4 2\n").unwrap(), x);
        assert_eq!(QaryString::parse_line(5, "").unwrap(), qs(5, &[]));
        assert!(QaryString::parse_line(3, "0 7").is_err());
        assert!(QaryString::parse_line(3, "zero").is_err());
    }
}
