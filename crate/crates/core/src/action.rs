//! Triples `(a, b, c)` with `bc = a² - n`, the generators `x: z ↦ -1/z` and
//! `w: z ↦ z + t`, group words, and their 2x2 matrix images.
//!
//! A triple stands for the quadratic irrational `(a + √n)/c`. Words are
//! written in composition order: the rightmost token acts first.

use std::fmt;
use std::str::FromStr;

use serde::ser::{Serialize, SerializeTuple, Serializer};

use crate::arith::FieldParam;
use crate::error::{Error, Result};

#[inline]
fn narrow(x: i128) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

/// An element of `A(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    n: i64,
    a: i64,
    b: i64,
    c: i64,
}

impl Triple {
    /// Builds `(a, (a² - n)/c, c)`, failing if `c` does not divide `a² - n`.
    pub fn make(n: i64, a: i64, c: i64) -> Result<Self> {
        FieldParam::new(n)?;
        if c == 0 {
            return Err(Error::NotMember { n, a, c });
        }
        let num = (a as i128) * (a as i128) - n as i128;
        if num % c as i128 != 0 {
            return Err(Error::NotMember { n, a, c });
        }
        Ok(Triple {
            n,
            a,
            b: narrow(num / c as i128)?,
            c,
        })
    }

    /// Builds a triple from all three coordinates, checking `bc = a² - n`.
    pub fn new(n: i64, a: i64, b: i64, c: i64) -> Result<Self> {
        FieldParam::new(n)?;
        if !identity_holds(n, a, b, c) {
            return Err(Error::BadTriple { n, a, b, c });
        }
        Ok(Triple { n, a, b, c })
    }

    /// Skips the `n` validity check; callers guarantee `n` is valid.
    pub(crate) fn new_in(n: i64, a: i64, b: i64, c: i64) -> Result<Self> {
        if !identity_holds(n, a, b, c) {
            return Err(Error::BadTriple { n, a, b, c });
        }
        Ok(Triple { n, a, b, c })
    }

    /// Parses the text form `"a,b,c"`.
    pub fn parse(n: i64, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected a,b,c, got {text:?}")));
        }
        let mut v = [0i64; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer {p:?} in {text:?}")))?;
        }
        Triple::new(n, v[0], v[1], v[2])
    }

    #[inline]
    pub fn n(&self) -> i64 {
        self.n
    }
    #[inline]
    pub fn a(&self) -> i64 {
        self.a
    }
    #[inline]
    pub fn b(&self) -> i64 {
        self.b
    }
    #[inline]
    pub fn c(&self) -> i64 {
        self.c
    }

    #[inline]
    pub fn coords(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    /// `max(|a|, |b|, |c|)`, the quantity bounded by exploration caps.
    #[inline]
    pub fn height(&self) -> u64 {
        self.a
            .unsigned_abs()
            .max(self.b.unsigned_abs())
            .max(self.c.unsigned_abs())
    }

    pub fn norm(&self) -> Norm {
        Norm(self.a.unsigned_abs())
    }

    /// `bc = a² - n`.
    pub fn is_consistent(&self) -> bool {
        identity_holds(self.n, self.a, self.b, self.c)
    }

    /// `x(a, b, c) = (-a, c, b)`.
    pub fn apply_x(&self) -> Triple {
        Triple {
            n: self.n,
            a: -self.a,
            b: self.c,
            c: self.b,
        }
    }

    /// Translation `z ↦ z + shift`:
    /// `(a, b, c) ↦ (a + shift·c, b + 2·shift·a + shift²·c, c)`.
    pub fn apply_w(&self, shift: i64) -> Result<Triple> {
        if shift == 0 {
            return Err(Error::DegenerateShift);
        }
        let (s, a, b, c) = (shift as i128, self.a as i128, self.b as i128, self.c as i128);
        let sc = s.checked_mul(c).ok_or(Error::Overflow)?;
        let a2 = a + sc;
        let b2 = s
            .checked_mul(2 * a)
            .and_then(|t| t.checked_add(b))
            .and_then(|t| sc.checked_mul(s).and_then(|u| t.checked_add(u)))
            .ok_or(Error::Overflow)?;
        Ok(Triple {
            n: self.n,
            a: narrow(a2)?,
            b: narrow(b2)?,
            c: self.c,
        })
    }

    pub fn apply_token(&self, token: GeneratorToken) -> Result<Triple> {
        match token {
            GeneratorToken::X => Ok(self.apply_x()),
            GeneratorToken::T(t) => self.apply_w(t),
        }
    }

    /// Applies a word, rightmost token first.
    pub fn apply_word(&self, word: &GroupWord) -> Result<Triple> {
        word.tokens
            .iter()
            .rev()
            .try_fold(*self, |t, &tok| t.apply_token(tok))
    }
}

fn identity_holds(n: i64, a: i64, b: i64, c: i64) -> bool {
    (b as i128) * (c as i128) == (a as i128) * (a as i128) - n as i128
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(3)?;
        t.serialize_element(&self.a)?;
        t.serialize_element(&self.b)?;
        t.serialize_element(&self.c)?;
        t.end()
    }
}

/// `||α|| = |a|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Norm(pub u64);

impl Norm {
    #[inline]
    pub fn value(self) -> u64 {
        self.0
    }
}

/// `x` or a translation by a nonzero integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorToken {
    X,
    T(i64),
}

impl fmt::Display for GeneratorToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorToken::X => f.write_str("x"),
            GeneratorToken::T(t) => write!(f, "w:{t}"),
        }
    }
}

impl FromStr for GeneratorToken {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "x" {
            return Ok(GeneratorToken::X);
        }
        let shift = s
            .strip_prefix("w:")
            .ok_or_else(|| Error::Parse(format!("unknown token {s:?}")))?;
        let t: i64 = shift
            .parse()
            .map_err(|_| Error::Parse(format!("bad shift in token {s:?}")))?;
        if t == 0 {
            return Err(Error::DegenerateShift);
        }
        Ok(GeneratorToken::T(t))
    }
}

/// A word in the generators of `H(λ)`, tokens in composition order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupWord {
    lambda: i64,
    tokens: Vec<GeneratorToken>,
}

impl GroupWord {
    pub fn identity(lambda: i64) -> Self {
        GroupWord {
            lambda,
            tokens: Vec::new(),
        }
    }

    pub fn new(lambda: i64, tokens: Vec<GeneratorToken>) -> Result<Self> {
        if lambda < 1 {
            return Err(Error::BadLambda(lambda));
        }
        for tok in &tokens {
            if let GeneratorToken::T(t) = *tok {
                if t == 0 || t % lambda != 0 {
                    return Err(Error::ShiftNotMultiple { shift: t, lambda });
                }
            }
        }
        Ok(GroupWord { lambda, tokens })
    }

    /// Parses `"w:-2,x,w:-2"`; the empty string is the identity.
    pub fn parse(lambda: i64, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return GroupWord::new(lambda, Vec::new());
        }
        let tokens = text
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<GeneratorToken>>>()?;
        GroupWord::new(lambda, tokens)
    }

    #[inline]
    pub fn lambda(&self) -> i64 {
        self.lambda
    }

    #[inline]
    pub fn tokens(&self) -> &[GeneratorToken] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// `token · self`: the new token acts after the existing word.
    pub(crate) fn push_left(&mut self, token: GeneratorToken) {
        self.tokens.insert(0, token);
    }

    /// `self · other`: `other` acts first.
    pub fn concat(&self, other: &GroupWord) -> Result<GroupWord> {
        if self.lambda != other.lambda {
            return Err(Error::BadLambda(other.lambda));
        }
        let mut tokens = self.tokens.clone();
        tokens.extend_from_slice(&other.tokens);
        Ok(GroupWord {
            lambda: self.lambda,
            tokens,
        })
    }

    /// Merges adjacent translations and cancels `x·x`, until neither applies.
    pub fn normalized(&self) -> Result<GroupWord> {
        let mut out: Vec<GeneratorToken> = Vec::with_capacity(self.tokens.len());
        for &tok in &self.tokens {
            match (out.last().copied(), tok) {
                (Some(GeneratorToken::X), GeneratorToken::X) => {
                    out.pop();
                }
                (Some(GeneratorToken::T(s)), GeneratorToken::T(t)) => {
                    out.pop();
                    let sum = s.checked_add(t).ok_or(Error::Overflow)?;
                    if sum != 0 {
                        out.push(GeneratorToken::T(sum));
                    }
                }
                _ => out.push(tok),
            }
        }
        Ok(GroupWord {
            lambda: self.lambda,
            tokens: out,
        })
    }

    /// Product of generator matrices in composition order.
    pub fn to_matrix(&self) -> Result<Matrix2> {
        self.tokens
            .iter()
            .try_fold(Matrix2::IDENTITY, |m, &tok| m.mul(&Matrix2::of_token(tok)))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, tok) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{tok}")?;
        }
        Ok(())
    }
}

pub fn apply_word(word: &GroupWord, t: &Triple) -> Result<Triple> {
    t.apply_word(word)
}

pub fn word_to_matrix(word: &GroupWord) -> Result<Matrix2> {
    word.to_matrix()
}

/// `[[p, q], [r, s]]` acting as `z ↦ (pz + q)/(rz + s)`, determinant 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2 {
        p: 1,
        q: 0,
        r: 0,
        s: 1,
    };

    pub fn new(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        let m = Matrix2 { p, q, r, s };
        if m.det() != 1 {
            return Err(Error::Precondition(format!(
                "matrix [[{p},{q}],[{r},{s}]] has determinant {}",
                m.det()
            )));
        }
        Ok(m)
    }

    pub fn of_token(tok: GeneratorToken) -> Matrix2 {
        match tok {
            GeneratorToken::X => Matrix2 {
                p: 0,
                q: -1,
                r: 1,
                s: 0,
            },
            GeneratorToken::T(t) => Matrix2 {
                p: 1,
                q: t,
                r: 0,
                s: 1,
            },
        }
    }

    pub fn det(&self) -> i128 {
        self.p as i128 * self.s as i128 - self.q as i128 * self.r as i128
    }

    pub fn mul(&self, rhs: &Matrix2) -> Result<Matrix2> {
        let dot = |x: i64, y: i64, u: i64, v: i64| -> Result<i64> {
            narrow(x as i128 * y as i128 + u as i128 * v as i128)
        };
        Ok(Matrix2 {
            p: dot(self.p, rhs.p, self.q, rhs.r)?,
            q: dot(self.p, rhs.q, self.q, rhs.s)?,
            r: dot(self.r, rhs.p, self.s, rhs.r)?,
            s: dot(self.r, rhs.q, self.s, rhs.s)?,
        })
    }

    pub fn neg(&self) -> Matrix2 {
        Matrix2 {
            p: -self.p,
            q: -self.q,
            r: -self.r,
            s: -self.s,
        }
    }

    /// Equality in `PSL(2, ℤ)`: `M ≡ -M`.
    pub fn equiv(&self, other: &Matrix2) -> bool {
        self == other || *self == other.neg()
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.p, self.q, self.r, self.s)
    }
}

/// Checks in `ℤ[√n]` that `m` (up to sign) sends `input` to `claimed`.
///
/// With `α = (a + √n)/c` and `α' = (a' + √n)/c'`, the claim `α' = (pα + q)/(rα + s)`
/// clears denominators to `(a' + √n)(r(a + √n) + sc) = c'(p(a + √n) + qc)`,
/// which splits into a rational and a `√n` equation.
pub fn verify_action(m: &Matrix2, input: &Triple, claimed: &Triple) -> Result<bool> {
    if input.n != claimed.n {
        return Err(Error::MismatchedN(input.n, claimed.n));
    }
    if !claimed.is_consistent() || !input.is_consistent() {
        return Ok(false);
    }
    Ok(identity_for(m, input, claimed)? || identity_for(&m.neg(), input, claimed)?)
}

fn identity_for(m: &Matrix2, t: &Triple, u: &Triple) -> Result<bool> {
    let ov = || Error::Overflow;
    let (p, q, r, s) = (m.p as i128, m.q as i128, m.r as i128, m.s as i128);
    let (a, c, n) = (t.a as i128, t.c as i128, t.n as i128);
    let (a2, c2) = (u.a as i128, u.c as i128);
    let ra_sc = r
        .checked_mul(a)
        .and_then(|x| s.checked_mul(c).and_then(|y| x.checked_add(y)))
        .ok_or_else(ov)?;
    let pa_qc = p
        .checked_mul(a)
        .and_then(|x| q.checked_mul(c).and_then(|y| x.checked_add(y)))
        .ok_or_else(ov)?;
    let rational_lhs = a2
        .checked_mul(ra_sc)
        .and_then(|x| r.checked_mul(n).and_then(|y| x.checked_add(y)))
        .ok_or_else(ov)?;
    let rational_rhs = c2.checked_mul(pa_qc).ok_or_else(ov)?;
    let root_lhs = a2
        .checked_mul(r)
        .and_then(|x| x.checked_add(ra_sc))
        .ok_or_else(ov)?;
    let root_rhs = c2.checked_mul(p).ok_or_else(ov)?;
    Ok(rational_lhs == rational_rhs && root_lhs == root_rhs)
}
