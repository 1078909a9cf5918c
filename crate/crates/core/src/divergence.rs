//! Certificates that `H(λ)`, `λ ≥ 3`, has infinitely many orbits.
//!
//! The family `α_s = (s² - s - n, (s - 1)² - n, s² - n)` lies in `A(n)` and,
//! once `b_s, c_s > ε·a_s`, no word in `x` and `w_{kλ}` can lower its norm.
//! Distinct norms then mean distinct orbits.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::action::{GeneratorToken, Triple};
use crate::arith::{cmp_eps, FieldParam};
use crate::error::{Error, Result};
use crate::par;

const S0_WINDOW: i64 = 64;

/// `α_s`; needs `(s - 1)² > n`.
pub fn alpha_family(n: i64, s: i64) -> Result<Triple> {
    let n = FieldParam::new(n)?.get();
    let (s, n128) = (s as i128, n as i128);
    let prev = (s - 1) * (s - 1);
    if prev <= n128 {
        return Err(Error::Precondition(format!(
            "alpha_s needs (s-1)^2 > n, got s = {s}, n = {n}"
        )));
    }
    let to_i64 = |x: i128| i64::try_from(x).map_err(|_| Error::Overflow);
    let a = to_i64(s * s - s - n128)?;
    let b = to_i64(prev - n128)?;
    let c = to_i64(s * s - n128)?;
    Triple::new_in(n, a, b, c)
}

/// `(s - 1)² > n`, `a_s > 0`, `b_s > ε·a_s`, `c_s > ε·a_s`.
fn family_preconds(n: i64, s: i64) -> bool {
    match alpha_family(n, s) {
        Ok(t) => t.a() > 0 && cmp_eps(t.b(), t.a()) && cmp_eps(t.c(), t.a()),
        Err(_) => false,
    }
}

/// Least `s ≥ 1` from which the family preconditions hold on a window of
/// 65 consecutive indices.
pub fn find_s0(n: i64) -> Result<i64> {
    let n = FieldParam::new(n)?.get();
    let mut s = 1;
    loop {
        match (s..=s + S0_WINDOW).find(|&t| !family_preconds(n, t)) {
            None => return Ok(s),
            Some(bad) => s = bad + 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthChecks {
    /// `|a'| > |a|`
    pub norm_grows: bool,
    /// `c' > ε·|a'|`
    pub eps_holds: bool,
}

impl GrowthChecks {
    pub fn all(&self) -> bool {
        self.norm_grows && self.eps_holds
    }
}

/// Applies `x·w_k` and checks both growth conclusions exactly.
///
/// Hypotheses: `c > 0`, `a² - n > 0`, `c > ε|a|` and `|k| ≥ 3`.
pub fn lemma_growth_step(t: &Triple, k: i64) -> Result<(Triple, GrowthChecks)> {
    let (a, c) = (t.a(), t.c());
    let a_sq_minus_n = (a as i128) * (a as i128) - t.n() as i128;
    let abs_a = i64::try_from(a.unsigned_abs()).map_err(|_| Error::Overflow)?;
    if c <= 0 || a_sq_minus_n <= 0 || !cmp_eps(c, abs_a) || k.unsigned_abs() < 3 {
        return Err(Error::Precondition(format!(
            "growth step needs c > eps|a|, a^2 - n > 0 and |k| >= 3; got {t} with k = {k}"
        )));
    }
    let image = t.apply_w(k)?.apply_x();
    let new_abs = i64::try_from(image.a().unsigned_abs()).map_err(|_| Error::Overflow)?;
    let checks = GrowthChecks {
        norm_grows: image.a().unsigned_abs() > a.unsigned_abs(),
        eps_holds: cmp_eps(image.c(), new_abs),
    };
    Ok((image, checks))
}

/// Smallest norm among triples reachable from `start` under `x, w_{±λ}`
/// without leaving `max(|a|, |b|, |c|) ≤ cap`.
pub fn min_norm_within(start: &Triple, lambda: i64, cap: u64) -> Result<u64> {
    let gens = [
        GeneratorToken::X,
        GeneratorToken::T(lambda),
        GeneratorToken::T(-lambda),
    ];
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.coords());
    queue.push_back(*start);
    let mut best = start.norm().value();
    while let Some(here) = queue.pop_front() {
        best = best.min(here.norm().value());
        for &g in &gens {
            let next = here.apply_token(g)?;
            if next.height() <= cap && seen.insert(next.coords()) {
                queue.push_back(next);
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCertificate {
    pub n: i64,
    pub lambda: i64,
    pub s: i64,
    pub triple: Triple,
    pub preconds_ok: bool,
    pub empirical_min_norm: bool,
    #[serde(rename = "cap")]
    pub cap_used: u64,
}

impl FamilyCertificate {
    pub fn passed(&self) -> bool {
        self.preconds_ok && self.empirical_min_norm
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

/// Default BFS cap multiplier: the cap is `16·a_s`.
pub const DEFAULT_CAP_FACTOR: u64 = 16;

pub fn family_certificate(n: i64, lambda: i64, s: i64, cap_factor: u64) -> Result<FamilyCertificate> {
    if lambda < 3 {
        return Err(Error::BadLambda(lambda));
    }
    let triple = alpha_family(n, s)?;
    let preconds_ok = family_preconds(n, s);
    let cap = cap_factor
        .checked_mul(triple.a().unsigned_abs())
        .ok_or(Error::Overflow)?;
    let empirical_min_norm = min_norm_within(&triple, lambda, cap)? == triple.norm().value();
    Ok(FamilyCertificate {
        n,
        lambda,
        s,
        triple,
        preconds_ok,
        empirical_min_norm,
        cap_used: cap,
    })
}

/// Certificates for `s = s₀, …, s₀ + count - 1`.
pub fn distinct_orbit_certificates(
    n: i64,
    lambda: i64,
    count: usize,
    cap_factor: u64,
) -> Result<Vec<FamilyCertificate>> {
    if lambda < 3 {
        return Err(Error::BadLambda(lambda));
    }
    let s0 = find_s0(n)?;
    let indices: Vec<i64> = (0..count as i64).map(|i| s0 + i).collect();
    par::map(&indices, |&s| family_certificate(n, lambda, s, cap_factor))
        .into_iter()
        .collect()
}
