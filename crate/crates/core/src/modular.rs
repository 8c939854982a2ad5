//! Arithmetic over Z_q for odd prime q: inverses, canonical square roots
//! via Tonelli-Shanks, and the solver recovering the unordered pair of
//! deleted values from their sum and sum of squares.

use crate::error::{Error, Result};

/// Deterministic primality by trial division; q values here are small
/// (alphabet sizes), so this is never a bottleneck.
pub fn is_odd_prime(q: u64) -> bool {
    if q < 3 || q % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn ensure_odd_prime(q: u64) -> Result<()> {
    if is_odd_prime(q) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("q={q} must be an odd prime")))
    }
}

pub fn mod_pow(mut base: u64, mut exp: u64, q: u64) -> u64 {
    base %= q;
    let mut acc: u64 = 1 % q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % q as u128) as u64;
        }
        base = ((base as u128 * base as u128) % q as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse in Z_q (q an odd prime), via Fermat.
pub fn mod_inverse(a: u64, q: u64) -> Result<u64> {
    ensure_odd_prime(q)?;
    let a = a % q;
    if a == 0 {
        return Err(Error::Domain(format!("0 has no inverse mod {q}")));
    }
    Ok(mod_pow(a, q - 2, q))
}

/// Canonical square root of `a` in Z_q: the unique root in
/// {0, .., (q-1)/2} when `a` is a quadratic residue (or zero), `None`
/// otherwise. Tonelli-Shanks, O(log^2 q).
pub fn sqrt_mod(a: u64, q: u64) -> Result<Option<u64>> {
    ensure_odd_prime(q)?;
    let a = a % q;
    if a == 0 {
        return Ok(Some(0));
    }
    // Euler criterion
    if mod_pow(a, (q - 1) / 2, q) != 1 {
        return Ok(None);
    }
    let root = if q % 4 == 3 {
        mod_pow(a, (q + 1) / 4, q)
    } else {
        tonelli_shanks(a, q)
    };
    debug_assert_eq!(((root as u128 * root as u128) % q as u128) as u64, a);
    Ok(Some(root.min(q - root)))
}

/// Core Tonelli-Shanks for q = 1 (mod 4) and `a` a known residue.
fn tonelli_shanks(a: u64, q: u64) -> u64 {
    // q - 1 = s * 2^e with s odd
    let mut s = q - 1;
    let mut e = 0u32;
    while s % 2 == 0 {
        s /= 2;
        e += 1;
    }
    // smallest non-residue as the deterministic generator
    let mut z = 2u64;
    while mod_pow(z, (q - 1) / 2, q) != q - 1 {
        z += 1;
    }
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % q as u128) as u64;

    let mut c = mod_pow(z, s, q);
    let mut t = mod_pow(a, s, q);
    let mut r = mod_pow(a, (s + 1) / 2, q);
    let mut m = e;
    while t != 1 {
        // least i with t^(2^i) = 1
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mulmod(t2, t2);
            i += 1;
        }
        let b = mod_pow(c, 1u64 << (m - i - 1), q);
        r = mulmod(r, b);
        c = mulmod(b, b);
        t = mulmod(t, c);
        m = i;
    }
    r
}

/// Result of inverting the deleted-pair system
/// v1 + v2 = delta1, v1^2 + v2^2 = delta2 over Z_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletedPairSolution {
    pub delta1: u64,
    pub delta2: u64,
    /// delta0 = 2^-1 (delta1^2 - delta2), the product v1*v2.
    pub delta0: u64,
    /// Canonical root of the discriminant delta1^2 - 4*delta0, when it
    /// exists.
    pub disc_root: Option<u64>,
    /// The unordered pair {v1, v2}, stored with values.0 <= values.1.
    /// Absent when the discriminant is a non-residue, which signals an
    /// input outside the 2-deletion model.
    pub values: Option<(u64, u64)>,
}

/// Solve v1 + v2 = delta1, v1^2 + v2^2 = delta2 over Z_q for odd prime q.
pub fn solve_deleted_pair(delta1: u64, delta2: u64, q: u64) -> Result<DeletedPairSolution> {
    ensure_odd_prime(q)?;
    let delta1 = delta1 % q;
    let delta2 = delta2 % q;
    let inv2 = mod_inverse(2, q)?;
    let mulmod = |x: u64, y: u64| ((x as u128 * y as u128) % q as u128) as u64;
    let submod = |x: u64, y: u64| (x + q - y % q) % q;

    let d1sq = mulmod(delta1, delta1);
    let delta0 = mulmod(inv2, submod(d1sq, delta2));
    let disc = submod(d1sq, mulmod(4 % q, delta0));
    let disc_root = sqrt_mod(disc, q)?;
    let values = disc_root.map(|b| {
        let v1 = mulmod(inv2, (delta1 + b) % q);
        let v2 = mulmod(inv2, submod(delta1, b));
        (v1.min(v2), v1.max(v2))
    });
    Ok(DeletedPairSolution {
        delta1,
        delta2,
        delta0,
        disc_root,
        values,
    })
}
