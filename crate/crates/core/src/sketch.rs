//! The three q-ary sketches and the combined sketch bundle with its
//! bit-exact serialization.
//!
//! For a string alpha over an odd-prime alphabet with run sums beta_i:
//!   - sum sketch:        (sum alpha_i) mod q
//!   - square sketch:     (sum alpha_i^2) mod q
//!   - run-weight sketch: (sum i * beta_i) mod (n*q)
//! plus the base binary sketch of the indicator transform.

use crate::base::BaseBinarySketcher;
use crate::error::{Error, Result};
use crate::modular::ensure_odd_prime;
use crate::phi::{ceil_log2_u64, phi, run_decompose};
use crate::strings::{BinaryString, QaryString};

/// The combined sketch of a q-ary string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QarySketch {
    pub n: usize,
    pub q: u64,
    /// (sum of symbols) mod q.
    pub sum: u64,
    /// (sum of squared symbols) mod q.
    pub square_sum: u64,
    /// (sum of i * run_sum_i) mod n*q.
    pub run_weight: u64,
    pub base_bits: BinaryString,
    pub base_id: String,
}

/// (sum alpha_i) mod q.
pub fn sum_sketch(alpha: &QaryString) -> Result<u64> {
    if alpha.is_empty() {
        return Err(Error::Parameter("sketch of an empty string".into()));
    }
    let q = alpha.q() as u64;
    let mut acc: u64 = 0;
    for &s in alpha.symbols() {
        acc = (acc + s as u64) % q;
    }
    Ok(acc)
}

/// (sum alpha_i^2) mod q.
pub fn square_sketch(alpha: &QaryString) -> Result<u64> {
    if alpha.is_empty() {
        return Err(Error::Parameter("sketch of an empty string".into()));
    }
    let q = alpha.q() as u64;
    let mut acc: u64 = 0;
    for &s in alpha.symbols() {
        acc = (acc + (s as u64 * s as u64) % q) % q;
    }
    Ok(acc)
}

/// (sum over runs of run_index * run_sum) mod (n*q).
pub fn run_weight_sketch(alpha: &QaryString) -> Result<u64> {
    let runs = run_decompose(alpha)?;
    let modulus = alpha.len() as u128 * alpha.q() as u128;
    let mut acc: u128 = 0;
    for (i, &beta) in runs.run_sums.iter().enumerate() {
        acc += (i as u128 + 1) * beta as u128;
    }
    Ok((acc % modulus) as u64)
}

/// Bundle all four sketches. The base sketcher must be configured for
/// the string's length and q must be an odd prime.
pub fn full_sketch(alpha: &QaryString, base: &dyn BaseBinarySketcher) -> Result<QarySketch> {
    ensure_odd_prime(alpha.q() as u64)?;
    if alpha.len() != base.input_len() {
        return Err(Error::Parameter(format!(
            "string length {} does not match the base sketcher length {}",
            alpha.len(),
            base.input_len()
        )));
    }
    let a = phi(alpha)?;
    let base_bits = base.compute(&a)?;
    Ok(QarySketch {
        n: alpha.len(),
        q: alpha.q() as u64,
        sum: sum_sketch(alpha)?,
        square_sum: square_sketch(alpha)?,
        run_weight: run_weight_sketch(alpha)?,
        base_bits,
        base_id: base.id().to_string(),
    })
}

/// Width in bits of the two mod-q fields.
pub fn field_width_q(q: u64) -> usize {
    ceil_log2_u64(q) as usize
}

/// Width in bits of the mod-n*q field.
pub fn field_width_nq(n: usize, q: u64) -> usize {
    ceil_log2_u64(n as u64 * q) as usize
}

/// Total serialized width: base bits + two mod-q fields + one mod-n*q
/// field.
pub fn serialized_len(n: usize, q: u64, base_len: usize) -> usize {
    base_len + 2 * field_width_q(q) + field_width_nq(n, q)
}

fn push_be(bits: &mut Vec<u8>, value: u64, width: usize) {
    for i in (0..width).rev() {
        bits.push(((value >> i) & 1) as u8);
    }
}

fn read_be(bits: &[u8]) -> u64 {
    bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
}

/// Fixed-width big-endian encoding: base bits, then sum and square-sum
/// fields, then the run-weight field.
pub fn sketch_serialize(s: &QarySketch) -> BinaryString {
    let wq = field_width_q(s.q);
    let wnq = field_width_nq(s.n, s.q);
    let mut bits = Vec::with_capacity(s.base_bits.len() + 2 * wq + wnq);
    bits.extend_from_slice(s.base_bits.bits());
    push_be(&mut bits, s.sum, wq);
    push_be(&mut bits, s.square_sum, wq);
    push_be(&mut bits, s.run_weight, wnq);
    BinaryString::from_raw(bits)
}

/// Inverse of `sketch_serialize`. The base sketcher supplies its id and
/// declared output width.
pub fn sketch_deserialize(
    bits: &BinaryString,
    n: usize,
    q: u64,
    base: &dyn BaseBinarySketcher,
) -> Result<QarySketch> {
    ensure_odd_prime(q)?;
    let expect = serialized_len(n, q, base.sketch_len());
    if bits.len() != expect {
        return Err(Error::Format(format!(
            "serialized sketch has {} bits, expected {expect}",
            bits.len()
        )));
    }
    let wq = field_width_q(q);
    let wnq = field_width_nq(n, q);
    let raw = bits.bits();
    let base_len = base.sketch_len();
    let base_bits = BinaryString::from_raw(raw[..base_len].to_vec());
    let sum = read_be(&raw[base_len..base_len + wq]);
    let square_sum = read_be(&raw[base_len + wq..base_len + 2 * wq]);
    let run_weight = read_be(&raw[base_len + 2 * wq..base_len + 2 * wq + wnq]);
    if sum >= q || square_sum >= q || run_weight >= n as u64 * q {
        return Err(Error::Format("sketch field exceeds its modulus".into()));
    }
    Ok(QarySketch {
        n,
        q,
        sum,
        square_sum,
        run_weight,
        base_bits,
        base_id: base.id().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::IdentityBase;

    fn qs(q: u32, s: &[u32]) -> QaryString {
        QaryString::new(q, s.to_vec()).unwrap()
    }

    #[test]
    fn sketch_values() {
        let x = qs(3, &[2, 0, 1, 1, 0]);
        assert_eq!(sum_sketch(&x).unwrap(), 1);
        assert_eq!(square_sketch(&x).unwrap(), 0);
        assert_eq!(run_weight_sketch(&x).unwrap(), 8);

        assert_eq!(sum_sketch(&qs(7, &[0, 0, 0, 0])).unwrap(), 0);
        assert_eq!(sum_sketch(&qs(5, &[4, 4])).unwrap(), 3);
        assert_eq!(square_sketch(&qs(7, &[0, 0])).unwrap(), 0);
        assert_eq!(square_sketch(&qs(5, &[3, 4])).unwrap(), 0);
        assert_eq!(run_weight_sketch(&qs(3, &[0, 0, 0])).unwrap(), 0);
        assert_eq!(run_weight_sketch(&qs(3, &[2, 1, 0])).unwrap(), 4);
    }

    #[test]
    fn full_sketch_with_identity_base() {
        let x = qs(3, &[2, 0, 1, 1, 0]);
        let base = IdentityBase::new(5).unwrap();
        let s = full_sketch(&x, &base).unwrap();
        assert_eq!(s.sum, 1);
        assert_eq!(s.square_sum, 0);
        assert_eq!(s.run_weight, 8);
        assert_eq!(s.base_bits.bits(), &[1, 0, 1, 1, 0]);
        assert_eq!(s.base_id, "identity");

        let zeros = qs(3, &[0, 0, 0]);
        let base3 = IdentityBase::new(3).unwrap();
        let s = full_sketch(&zeros, &base3).unwrap();
        assert_eq!((s.sum, s.square_sum, s.run_weight), (0, 0, 0));
        assert_eq!(s.base_bits.bits(), &[1, 1, 1]);
    }

    #[test]
    fn full_sketch_rejects_bad_inputs() {
        let base = IdentityBase::new(4).unwrap();
        // length mismatch
        assert!(full_sketch(&qs(3, &[0, 1]), &base).is_err());
        // q not an odd prime
        let base5 = IdentityBase::new(5).unwrap();
        assert!(full_sketch(&qs(4, &[0, 1, 2, 3, 0]), &base5).is_err());
    }

    #[test]
    fn serialized_width_formula() {
        // n=5, q=3, identity base: 5 + 2*2 + 4 = 13
        assert_eq!(serialized_len(5, 3, 5), 13);
        let x = qs(3, &[2, 0, 1, 1, 0]);
        let base = IdentityBase::new(5).unwrap();
        let s = full_sketch(&x, &base).unwrap();
        let bits = sketch_serialize(&s);
        assert_eq!(bits.len(), 13);
        // run-weight field is 4-bit big-endian 8 = 1000
        assert_eq!(&bits.bits()[9..], &[1, 0, 0, 0]);
        let back = sketch_deserialize(&bits, 5, 3, &base).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn deserialize_rejects_wrong_length() {
        let base = IdentityBase::new(5).unwrap();
        let bits = BinaryString::new(vec![0; 12]).unwrap();
        assert!(matches!(
            sketch_deserialize(&bits, 5, 3, &base),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn sum_sketches_are_additive_run_weight_is_not() {
        // concatenation additivity for the sum and square sketches
        let a = qs(5, &[1, 4, 2]);
        let b = qs(5, &[3, 0, 2, 2]);
        let ab = qs(5, &[1, 4, 2, 3, 0, 2, 2]);
        assert_eq!(
            sum_sketch(&ab).unwrap(),
            (sum_sketch(&a).unwrap() + sum_sketch(&b).unwrap()) % 5
        );
        assert_eq!(
            square_sketch(&ab).unwrap(),
            (square_sketch(&a).unwrap() + square_sketch(&b).unwrap()) % 5
        );
        // the run-weight sketch is not additive: exhibit a counterexample
        // (moduli differ and run indices shift under concatenation)
        let ra = run_weight_sketch(&a).unwrap();
        let rb = run_weight_sketch(&b).unwrap();
        let rab = run_weight_sketch(&ab).unwrap();
        assert_ne!(rab as u128, (ra as u128 + rb as u128) % (7 * 5));
    }
}
