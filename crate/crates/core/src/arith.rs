//! Exact integer helpers: square-free tests, divisor counts, integer square
//! roots and the comparison against ε = (5 - √7)/3.

use crate::error::{Error, Result};

/// A validated radicand: `n ∉ {0, 1}` and `|n|` square-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldParam(i64);

impl FieldParam {
    pub fn new(n: i64) -> Result<Self> {
        if is_valid_n(n) {
            Ok(FieldParam(n))
        } else {
            Err(Error::InvalidParam(n))
        }
    }

    #[inline]
    pub fn get(self) -> i64 {
        self.0
    }
}

/// True iff `n ∉ {0, 1}` and no prime square divides `|n|`.
pub fn is_valid_n(n: i64) -> bool {
    if n == 0 || n == 1 {
        return false;
    }
    let mut m = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Number of positive divisors of `|m|`.
pub fn tau(m: i64) -> Result<u64> {
    if m == 0 {
        return Err(Error::Domain("tau(0)"));
    }
    let mut m = m.unsigned_abs();
    let mut count = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        count *= e + 1;
        p += 1;
    }
    if m > 1 {
        count *= 2;
    }
    Ok(count)
}

/// Number of integer divisors of `m`, negatives included.
///
/// This is the count that makes `|{(0, b, c) : bc = -n}| = d(n)` hold.
pub fn d_int(m: i64) -> Result<u64> {
    Ok(2 * tau(m)?)
}

fn positive_divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All ordered pairs `(b, c)` with `b * c = m`, sorted by `b`.
pub fn divisor_pairs(m: i64) -> Result<Vec<(i64, i64)>> {
    if m == 0 {
        return Err(Error::Domain("divisor_pairs(0)"));
    }
    let pos = positive_divisors(m.unsigned_abs());
    let mut out = Vec::with_capacity(2 * pos.len());
    // i64::MIN has no positive counterpart; its divisors never fit as b = -|m|.
    for &d in pos.iter().rev() {
        let b = -(d as i128);
        out.push((b as i64, (m as i128 / b) as i64));
    }
    for &d in &pos {
        let b = d as i128;
        out.push((b as i64, (m as i128 / b) as i64));
    }
    Ok(out)
}

/// Floor square root.
pub fn isqrt(m: i64) -> Result<i64> {
    if m < 0 {
        return Err(Error::Domain("isqrt of a negative number"));
    }
    Ok(m.isqrt())
}

/// 128 x 128 -> 256 bit unsigned product as `(hi, lo)`.
fn wide_mul(x: u128, y: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (x1, x0) = (x >> 64, x & MASK);
    let (y1, y0) = (y >> 64, y & MASK);
    let p00 = x0 * y0;
    let p01 = x0 * y1;
    let p10 = x1 * y0;
    let p11 = x1 * y1;
    let mid = (p00 >> 64) + (p01 & MASK) + (p10 & MASK);
    let lo = (p00 & MASK) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

/// Decides `c > ε·m` exactly, where `ε = (5 - √7)/3 ≈ 0.7847`.
///
/// `3c > (5 - √7)m` holds outright when `3c ≥ 5m`; otherwise it is
/// `√7·m > 5m - 3c > 0`, which is compared after squaring.
pub fn cmp_eps(c: i64, m: i64) -> bool {
    debug_assert!(m >= 0, "cmp_eps expects m >= 0");
    let m = m.max(0) as i128;
    let c = c as i128;
    if m == 0 {
        return c > 0;
    }
    let gap = 5 * m - 3 * c;
    if gap <= 0 {
        return true;
    }
    // √7 < 3
    if gap >= 3 * m {
        return false;
    }
    let lhs = wide_mul(gap as u128, gap as u128);
    // m < 2^63, so m² fits in u128 and 7·m² in the wide product.
    let rhs = wide_mul((m * m) as u128, 7);
    lhs < rhs
}
