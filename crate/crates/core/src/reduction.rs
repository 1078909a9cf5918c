//! Reduction of an arbitrary triple into `B(n)` under `H(1)` or `H(2)`.

use serde::Serialize;

use crate::action::{GeneratorToken, GroupWord, Triple};
use crate::error::{Error, Result};

/// `|a| ≤ |b|` and `|a| ≤ |c|`.
pub fn in_b(t: &Triple) -> bool {
    let a = t.a().unsigned_abs();
    a <= t.b().unsigned_abs() && a <= t.c().unsigned_abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Translate,
    Swap,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub kind: StepKind,
    pub after: Triple,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub input: Triple,
    pub reduced: Triple,
    /// Maps `input` to `reduced`; the leftmost token was applied last.
    pub certificate: GroupWord,
    pub steps: Vec<Step>,
}

fn check_lambda(lambda: i64) -> Result<()> {
    match lambda {
        1 | 2 => Ok(()),
        _ => Err(Error::BadLambda(lambda)),
    }
}

/// One translation bringing `|a|` down to at most `|c|`.
///
/// For `λ = 2` the shift `2k` is the unique one with `-|c| < a + 2kc ≤ |c|`.
/// For `λ = 1` it minimizes `|a + kc|`, preferring the nonnegative result on ties.
pub fn translation_step(t: &Triple, lambda: i64) -> Result<(Triple, i64)> {
    check_lambda(lambda)?;
    let (a, c) = (t.a() as i128, t.c() as i128);
    if a.abs() <= c.abs() {
        return Err(Error::Precondition(format!(
            "translation needs |a| > |c|, got {t}"
        )));
    }
    let cc = c.abs();
    // m counts multiples of λ·|c|; the window is (-|c|, |c|] for λ = 2 and
    // (-|c|/2, |c|/2] for λ = 1.
    let m = match lambda {
        2 => (cc - a).div_euclid(2 * cc),
        _ => (cc - 2 * a).div_euclid(2 * cc),
    };
    let k = m * c.signum();
    let shift = i64::try_from(k * lambda as i128).map_err(|_| Error::Overflow)?;
    Ok((t.apply_w(shift)?, shift))
}

/// Runs the reduction loop: stop in `B(n)`, else translate if `|a| > |c|`,
/// else swap with `x`.
pub fn reduce_to_b(t: &Triple, lambda: i64) -> Result<ReductionResult> {
    check_lambda(lambda)?;
    let mut cur = *t;
    let mut certificate = GroupWord::identity(lambda);
    let mut steps = Vec::new();
    while !in_b(&cur) {
        if cur.a().unsigned_abs() > cur.c().unsigned_abs() {
            let (next, shift) = translation_step(&cur, lambda)?;
            certificate.push_left(GeneratorToken::T(shift));
            steps.push(Step {
                kind: StepKind::Translate,
                after: next,
            });
            cur = next;
        } else {
            // here |a| > |b|, so x makes |a| > |c|
            cur = cur.apply_x();
            certificate.push_left(GeneratorToken::X);
            steps.push(Step {
                kind: StepKind::Swap,
                after: cur,
            });
        }
    }
    Ok(ReductionResult {
        input: *t,
        reduced: cur,
        certificate,
        steps,
    })
}
