//! Combinatorial side of the verification: expected dimensions, the
//! `t, r, s` / `t', r', s'` bookkeeping, the critical schemes `W` and `T`,
//! and exhaustive checks of the two auxiliary inequalities used by the
//! induction in P^n.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{make_generic_sundial, random_line, random_point};
use crate::gfp::Prime;
use crate::scheme::{Scheme, SchemeComponent};

/// `C(n, k)` with overflow reported as an error.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or_else(|| Error::Overflow(format!("C({n}, {k})")))?
            / (i as u128 + 1);
    }
    u64::try_from(acc).map_err(|_| Error::Overflow(format!("C({n}, {k})")))
}

/// `C(d + n, n)`, the number of degree-d monomials in n+1 variables.
pub fn forms_dimension(n: usize, d: u32) -> Result<u64> {
    binomial(d as u64 + n as u64, n as u64)
}

/// Which branch of the P^n induction applies, by the parities of `t, t'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProofCase {
    /// `t` and `t'` both odd.
    A,
    /// `t'` even.
    B,
    /// `t` even and `t'` odd.
    C,
}

impl ProofCase {
    pub fn label(self) -> &'static str {
        match self {
            ProofCase::A => "a",
            ProofCase::B => "b",
            ProofCase::C => "c",
        }
    }
}

/// Euclidean division of `C(d + n, n)` by `d + 1`, and of
/// `C(d - 1 + n, n)` by `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountingData {
    pub n: usize,
    pub d: u32,
    pub t: u64,
    pub r: u64,
    pub s: u64,
    pub t_p: u64,
    pub r_p: u64,
    pub s_p: u64,
}

impl CountingData {
    pub fn new(n: usize, d: u32) -> Result<Self> {
        if n < 1 || d < 1 {
            return Err(Error::InvalidDimension(format!(
                "counting data needs n >= 1 and d >= 1, got ({n}, {d})"
            )));
        }
        let (t, r, s) = compute_trs(n, d)?;
        let prev = forms_dimension(n, d - 1)?;
        let t_p = prev / d as u64;
        let r_p = prev % d as u64;
        Ok(CountingData {
            n,
            d,
            t,
            r,
            s,
            t_p,
            r_p,
            s_p: t_p / 2,
        })
    }

    pub fn proof_case(&self) -> ProofCase {
        let t_odd = self.t % 2 == 1;
        let tp_odd = self.t_p % 2 == 1;
        match (t_odd, tp_odd) {
            (true, true) => ProofCase::A,
            (_, false) => ProofCase::B,
            (false, true) => ProofCase::C,
        }
    }

    pub fn t_odd(&self) -> bool {
        self.t % 2 == 1
    }
}

/// `(t, r, s)` with `C(d + n, n) = t (d + 1) + r`, `0 <= r <= d`, `s = t / 2`.
pub fn compute_trs(n: usize, d: u32) -> Result<(u64, u64, u64)> {
    if n < 1 || d < 1 {
        return Err(Error::InvalidDimension(format!(
            "(t, r, s) needs n >= 1 and d >= 1, got ({n}, {d})"
        )));
    }
    let total = forms_dimension(n, d)?;
    let t = total / (d as u64 + 1);
    let r = total % (d as u64 + 1);
    Ok((t, r, t / 2))
}

/// `max{C(d + n, n) - (2s + l)(d + 1), 0}`.
pub fn expected_ideal_dim(n: usize, d: u32, sundials: u64, lines: u64) -> Result<u64> {
    let total = forms_dimension(n, d)?;
    let conditions = sundials
        .checked_mul(2)
        .and_then(|x| x.checked_add(lines))
        .and_then(|x| x.checked_mul(d as u64 + 1))
        .ok_or_else(|| Error::Overflow("expected condition count".into()))?;
    Ok(total.saturating_sub(conditions))
}

/// The expected Hilbert function `min{C(d + n, n), (2s + l)(d + 1)}`.
pub fn expected_hilbert_function(n: usize, d: u32, sundials: u64, lines: u64) -> Result<u64> {
    Ok(forms_dimension(n, d)? - expected_ideal_dim(n, d, sundials, lines)?)
}

#[derive(Debug, Clone)]
pub struct CriticalSchemes {
    pub counts: CountingData,
    /// `s` sundials, plus a line if `t` is odd, plus `r` points.
    pub w: Scheme,
    /// Present only for `r > 0`: `s` sundials and a line (t even) or
    /// `s + 1` sundials (t odd).
    pub t: Option<Scheme>,
}

fn push_sundials<R: Rng + ?Sized>(x: &mut Scheme, count: u64, p: Prime, rng: &mut R) -> Result<()> {
    for _ in 0..count {
        x.push(SchemeComponent::Sundial(make_generic_sundial(
            x.ambient_n(),
            p,
            rng,
        )?))?;
    }
    Ok(())
}

/// Random instances of the two schemes whose vanishing in degree `d`
/// implies the bipolynomial Hilbert function in that degree.
pub fn build_w_t<R: Rng + ?Sized>(
    n: usize,
    d: u32,
    p: Prime,
    rng: &mut R,
) -> Result<CriticalSchemes> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    let counts = CountingData::new(n, d)?;
    let mut w = Scheme::new(n);
    push_sundials(&mut w, counts.s, p, rng)?;
    if counts.t_odd() {
        w.push(SchemeComponent::Line(random_line(n, p, rng)))?;
    }
    for _ in 0..counts.r {
        w.push(SchemeComponent::SimplePoint(random_point(n, p, rng)))?;
    }
    let t = if counts.r > 0 {
        let mut t = Scheme::new(n);
        if counts.t_odd() {
            push_sundials(&mut t, counts.s + 1, p, rng)?;
        } else {
            push_sundials(&mut t, counts.s, p, rng)?;
            t.push(SchemeComponent::Line(random_line(n, p, rng)))?;
        }
        Some(t)
    } else {
        None
    };
    Ok(CriticalSchemes { counts, w, t })
}

/// Parts (a), (b), (c) of the first auxiliary inequality, with the
/// parity case recomputed from `(n, d)`.
#[derive(Debug, Clone, Serialize)]
pub struct AppendixA1Report {
    pub n: usize,
    pub d: u32,
    pub t: u64,
    pub r: u64,
    pub s: u64,
    pub t_p: u64,
    pub r_p: u64,
    pub s_p: u64,
    pub case: ProofCase,
    /// `s - s' - r'` (cases a, b) or `s - s' - r' - 1` (case c).
    pub a_value: i64,
    pub a_holds: bool,
    /// `r + t' - r'` (cases a, b) or `r + t' - 1 - d - r'` (case c).
    pub b_value: i64,
    pub b_holds: bool,
    /// `2s' - r'`.
    pub c_value: i64,
    pub c_holds: bool,
}

impl AppendixA1Report {
    pub fn all_hold(&self) -> bool {
        self.a_holds && self.b_holds && self.c_holds
    }
}

fn signed(v: u64) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow("signed conversion".into()))
}

pub fn verify_appendix_a1(n: usize, d: u32) -> Result<AppendixA1Report> {
    if n < 4 || d < 2 {
        return Err(Error::OutOfStatedRange {
            n,
            d: d as usize,
            reason: "requires n >= 4 and d >= 2".into(),
        });
    }
    let c = CountingData::new(n, d)?;
    let case = c.proof_case();
    let (s, s_p, r_p, r, t_p) = (
        signed(c.s)?,
        signed(c.s_p)?,
        signed(c.r_p)?,
        signed(c.r)?,
        signed(c.t_p)?,
    );
    let (a_value, b_value) = match case {
        ProofCase::A | ProofCase::B => (s - s_p - r_p, r + t_p - r_p),
        ProofCase::C => (s - s_p - r_p - 1, r + t_p - 1 - d as i64 - r_p),
    };
    let c_value = 2 * s_p - r_p;
    Ok(AppendixA1Report {
        n,
        d,
        t: c.t,
        r: c.r,
        s: c.s,
        t_p: c.t_p,
        r_p: c.r_p,
        s_p: c.s_p,
        case,
        a_value,
        a_holds: a_value >= 0,
        b_value,
        b_holds: b_value >= 0,
        c_value,
        c_holds: c_value >= 0,
    })
}

/// `C(d - 2 + n, n) <= t' (d - 1)`.
#[derive(Debug, Clone, Serialize)]
pub struct AppendixA2Report {
    pub n: usize,
    pub d: u32,
    pub t_p: u64,
    pub lhs: u64,
    pub rhs: u64,
    pub holds: bool,
}

pub fn verify_appendix_a2(n: usize, d: u32) -> Result<AppendixA2Report> {
    if n < 4 || d <= 5 {
        return Err(Error::OutOfStatedRange {
            n,
            d: d as usize,
            reason: "requires n >= 4 and d > 5".into(),
        });
    }
    let c = CountingData::new(n, d)?;
    let lhs = forms_dimension(n, d - 2)?;
    let rhs = c
        .t_p
        .checked_mul(d as u64 - 1)
        .ok_or_else(|| Error::Overflow("t'(d - 1)".into()))?;
    Ok(AppendixA2Report {
        n,
        d,
        t_p: c.t_p,
        lhs,
        rhs,
        holds: lhs <= rhs,
    })
}
