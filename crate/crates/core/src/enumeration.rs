//! The finite set `B(n) = {(a, b, c) ∈ A(n) : |a| ≤ |b|, |a| ≤ |c|}`.

use serde::Serialize;

use crate::action::Triple;
use crate::arith::{divisor_pairs, FieldParam};
use crate::error::Result;

/// Largest `|a|` a member of `B(n)` can have.
///
/// For `n > 0` this is the largest `a` with `2a² ≤ n` (inclusive: `n = 2`
/// has members with `|a| = 1`). For `n < 0` it is `-n`.
pub fn a_bound(n: i64) -> Result<i64> {
    let n = FieldParam::new(n)?.get();
    if n < 0 {
        return Ok(-n);
    }
    Ok((n / 2).isqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignCounts {
    pub neg: usize,
    pub zero: usize,
    pub pos: usize,
}

/// `B(n)`, sorted lexicographically by `(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BSet {
    pub n: i64,
    pub members: Vec<Triple>,
    pub counts: SignCounts,
}

impl BSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Largest coordinate magnitude among the members.
    pub fn max_height(&self) -> u64 {
        self.members.iter().map(Triple::height).max().unwrap_or(0)
    }

    pub fn contains(&self, t: &Triple) -> bool {
        t.n() == self.n && self.members.binary_search(t).is_ok()
    }

    pub fn index_of(&self, t: &Triple) -> Option<usize> {
        if t.n() != self.n {
            return None;
        }
        self.members.binary_search(t).ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("BSet serializes")
    }
}

pub fn enumerate_b(n: i64) -> Result<BSet> {
    let bound = a_bound(n)?;
    let mut members = Vec::new();
    for a in -bound..=bound {
        let abs_a = a.unsigned_abs();
        for (b, c) in divisor_pairs(a * a - n)? {
            if b.unsigned_abs() >= abs_a && c.unsigned_abs() >= abs_a {
                members.push(Triple::new_in(n, a, b, c)?);
            }
        }
    }
    members.sort();
    members.dedup();
    let counts = SignCounts {
        neg: members.iter().filter(|t| t.a() < 0).count(),
        zero: members.iter().filter(|t| t.a() == 0).count(),
        pos: members.iter().filter(|t| t.a() > 0).count(),
    };
    Ok(BSet { n, members, counts })
}

/// `(B⁻, B⁰, B⁺)`.
pub fn split_b(bset: &BSet) -> (Vec<Triple>, Vec<Triple>, Vec<Triple>) {
    let mut neg = Vec::with_capacity(bset.counts.neg);
    let mut zero = Vec::with_capacity(bset.counts.zero);
    let mut pos = Vec::with_capacity(bset.counts.pos);
    for t in &bset.members {
        match t.a().signum() {
            -1 => neg.push(*t),
            0 => zero.push(*t),
            _ => pos.push(*t),
        }
    }
    (neg, zero, pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::d_int;
    use crate::reduction::in_b;

    #[test]
    fn bounds() {
        assert_eq!(a_bound(7).unwrap(), 1);
        assert_eq!(a_bound(2).unwrap(), 1);
        assert_eq!(a_bound(-2).unwrap(), 2);
        assert_eq!(a_bound(3).unwrap(), 1);
        assert_eq!(a_bound(30).unwrap(), 3);
        assert!(a_bound(12).is_err());
    }

    #[test]
    fn small_sets() {
        let b7 = enumerate_b(7).unwrap();
        assert_eq!(b7.len(), 20);
        assert_eq!(b7.counts, SignCounts { neg: 8, zero: 4, pos: 8 });

        let b2 = enumerate_b(2).unwrap();
        assert_eq!(b2.len(), 8);
        assert_eq!(b2.counts, SignCounts { neg: 2, zero: 4, pos: 2 });
        assert!(b2.contains(&Triple::new(2, 1, -1, 1).unwrap()));

        let bm2 = enumerate_b(-2).unwrap();
        assert_eq!(bm2.len(), 20);
        assert!(bm2.contains(&Triple::new(-2, 2, 3, 2).unwrap()));
        assert!(bm2.contains(&Triple::new(-2, 2, 2, 3).unwrap()));
        assert!(bm2.members.iter().all(in_b));
    }

    #[test]
    fn splits_mirror_under_x() {
        for n in [-30, -7, -2, -1, 2, 3, 7, 30] {
            let bset = enumerate_b(n).unwrap();
            let (neg, zero, pos) = split_b(&bset);
            assert_eq!((neg.len(), zero.len(), pos.len()), (bset.counts.neg, bset.counts.zero, bset.counts.pos));
            assert_eq!(zero.len() as u64, d_int(n).unwrap());
            let mut mirrored: Vec<_> = pos.iter().map(Triple::apply_x).collect();
            mirrored.sort();
            assert_eq!(mirrored, neg);
        }
    }

    #[test]
    fn json_schema() {
        let j: serde_json::Value = serde_json::from_str(&enumerate_b(2).unwrap().to_json()).unwrap();
        assert_eq!(j["n"], 2);
        assert_eq!(j["members"][0], serde_json::json!([-1, -1, 1]));
        assert_eq!(j["counts"], serde_json::json!({"neg": 2, "zero": 4, "pos": 2}));
    }
}
