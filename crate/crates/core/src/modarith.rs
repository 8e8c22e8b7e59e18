//! Integer modular arithmetic: residues in `Z_n`, inverses, additive orders,
//! unit groups, square roots by exhaustive scan, base-`b` digit-sum
//! divisibility rules, and units of product rings.
//!
//! Everything here is brute force on purpose; the moduli are desk-sized.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("[{value}]_{modulus} is not a unit (gcd {gcd} > 1)")]
    NotAUnit { value: u64, modulus: u64, gcd: u64 },
}

/// A residue class `[value]_n` with `0 <= value < n` and `n >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Residue {
    pub value: u64,
    pub modulus: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Residue {
    /// Reduces `value` into `[0, n)`. Rejects moduli below 2.
    pub fn new(value: u64, modulus: u64) -> Result<Self, ModError> {
        if modulus < 2 {
            return Err(ModError::BadModulus(modulus));
        }
        Ok(Residue {
            value: value % modulus,
            modulus,
        })
    }

    fn check_same(self, other: Residue) -> Result<(), ModError> {
        if self.modulus != other.modulus {
            return Err(ModError::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }
}

impl std::fmt::Display for Residue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]_{}", self.value, self.modulus)
    }
}

/// Exact residue of the integer operation. Intermediate products go through
/// `u128`, so no range of `u64` moduli can wrap silently.
pub fn residue_op(a: Residue, b: Residue, op: RingOp) -> Result<Residue, ModError> {
    a.check_same(b)?;
    let n = a.modulus as u128;
    let (x, y) = (a.value as u128, b.value as u128);
    let v = match op {
        RingOp::Add => (x + y) % n,
        RingOp::Sub => (x + n - y) % n,
        RingOp::Mul => (x * y) % n,
    };
    Ok(Residue {
        value: v as u64,
        modulus: a.modulus,
    })
}

/// Multiplicative inverse of `a` modulo `n`, when `gcd(a, n) = 1`.
pub fn mod_inverse(a: Residue) -> Result<Residue, ModError> {
    let g = gcd(a.value, a.modulus);
    if g != 1 {
        return Err(ModError::NotAUnit {
            value: a.value,
            modulus: a.modulus,
            gcd: g,
        });
    }
    // Extended Euclid on (value, modulus).
    let (mut old_r, mut r) = (a.value as i128, a.modulus as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    let n = a.modulus as i128;
    let v = ((old_s % n) + n) % n;
    Ok(Residue {
        value: v as u64,
        modulus: a.modulus,
    })
}

/// All `x` in `Z_n` with `x^2 = a`, ascending, by scanning every residue.
pub fn solve_square(a: Residue) -> Vec<Residue> {
    let n = a.modulus;
    (0..n)
        .filter(|&x| (x as u128 * x as u128) % n as u128 == a.value as u128)
        .map(|x| Residue {
            value: x,
            modulus: n,
        })
        .collect()
}

/// Smallest `k >= 1` with `k*x = 0` in `Z_n`; equals `n / gcd(x, n)`.
pub fn additive_order(x: Residue) -> u64 {
    x.modulus / gcd(x.value, x.modulus)
}

/// The units of `Z_n`: all `x` with `gcd(x, n) = 1`, ascending.
pub fn unit_group(n: u64) -> Result<Vec<Residue>, ModError> {
    if n < 2 {
        return Err(ModError::BadModulus(n));
    }
    Ok((0..n)
        .filter(|&x| gcd(x, n) == 1)
        .map(|x| Residue {
            value: x,
            modulus: n,
        })
        .collect())
}

/// A digit-sum divisibility rule query: does "m divides N iff m divides the
/// base-b digit sum of N" hold for every N?
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitRuleQuery {
    pub base: u64,
    pub divisor: u64,
}

impl DigitRuleQuery {
    pub fn new(base: u64, divisor: u64) -> Result<Self, ModError> {
        if base < 2 {
            return Err(ModError::BadModulus(base));
        }
        if divisor < 1 {
            return Err(ModError::BadModulus(divisor));
        }
        Ok(DigitRuleQuery { base, divisor })
    }
}

/// Base-`b` digit sum of `n`.
pub fn digit_sum(mut n: u64, base: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % base;
        n /= base;
    }
    s
}

/// True iff the digit-sum rule is valid for every `N >= 0`, which happens
/// exactly when `b = 1 (mod m)`: then `N` and its digit sum are congruent
/// modulo `m`.
pub fn digit_sum_rule_valid(q: DigitRuleQuery) -> bool {
    q.base % q.divisor == 1 % q.divisor
}

/// The units of `Z_{n1} x Z_{n2}`, ascending, found by brute-force search
/// for a componentwise inverse pair.
pub fn product_ring_units(n1: u64, n2: u64) -> Result<Vec<(Residue, Residue)>, ModError> {
    if n1 < 2 {
        return Err(ModError::BadModulus(n1));
    }
    if n2 < 2 {
        return Err(ModError::BadModulus(n2));
    }
    let mut units = Vec::new();
    for a in 0..n1 {
        for b in 0..n2 {
            let invertible = (0..n1).any(|c| (a as u128 * c as u128) % n1 as u128 == 1)
                && (0..n2).any(|d| (b as u128 * d as u128) % n2 as u128 == 1);
            if invertible {
                units.push((
                    Residue {
                        value: a,
                        modulus: n1,
                    },
                    Residue {
                        value: b,
                        modulus: n2,
                    },
                ));
            }
        }
    }
    Ok(units)
}
