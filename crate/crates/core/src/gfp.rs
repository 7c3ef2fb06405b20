//! Arithmetic in the prime field F_p and exact dense rank.
//!
//! Residues are stored as `u32`, so any prime below 2^32 is accepted.
//! Row reduction accumulates in `u64` and only reduces modulo `p` when the
//! accumulator could overflow, which for the default prime means almost never.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u32 = 32003;

/// An element of F_p, always reduced into `[0, p)`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
#[repr(transparent)]
pub struct Fp(u32);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A prime modulus, checked by trial division at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Prime(u32);

impl Default for Prime {
    fn default() -> Self {
        Prime(DEFAULT_PRIME)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    if v < 4 {
        return true;
    }
    if v.is_multiple_of(2) {
        return false;
    }
    let mut k = 3u64;
    while k * k <= v {
        if v.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

impl Prime {
    pub fn new(value: u64) -> Result<Self> {
        if value > u32::MAX as u64 || !is_prime(value) {
            return Err(Error::NotPrime(value));
        }
        Ok(Prime(value as u32))
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    /// Lines are sampled at `d + 1` distinct parameters plus room for one
    /// more, so every session degree must satisfy `p >= d + 2`.
    pub fn check_degree(self, degree: u32) -> Result<()> {
        if (self.0 as u64) < degree as u64 + 2 {
            return Err(Error::PrimeTooSmall {
                prime: self.0,
                degree,
            });
        }
        Ok(())
    }

    #[inline]
    pub fn element(self, v: u64) -> Fp {
        Fp((v % self.0 as u64) as u32)
    }

    #[inline]
    pub fn from_i64(self, v: i64) -> Fp {
        Fp(v.rem_euclid(self.0 as i64) as u32)
    }

    #[inline]
    pub fn add(self, a: Fp, b: Fp) -> Fp {
        let s = a.0 as u64 + b.0 as u64;
        let p = self.0 as u64;
        Fp(if s >= p { s - p } else { s } as u32)
    }

    #[inline]
    pub fn sub(self, a: Fp, b: Fp) -> Fp {
        if a.0 >= b.0 {
            Fp(a.0 - b.0)
        } else {
            Fp((a.0 as u64 + self.0 as u64 - b.0 as u64) as u32)
        }
    }

    #[inline]
    pub fn neg(self, a: Fp) -> Fp {
        if a.0 == 0 {
            a
        } else {
            Fp(self.0 - a.0)
        }
    }

    #[inline]
    pub fn mul(self, a: Fp, b: Fp) -> Fp {
        Fp(((a.0 as u64 * b.0 as u64) % self.0 as u64) as u32)
    }

    pub fn pow(self, a: Fp, mut e: u64) -> Fp {
        let mut base = a;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(self, a: Fp) -> Result<Fp> {
        inv(a, self)
    }

    pub fn div(self, a: Fp, b: Fp) -> Result<Fp> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// A square root of `a`, if one exists (Tonelli–Shanks).
    pub fn sqrt(self, a: Fp) -> Option<Fp> {
        let p = self.0 as u64;
        if a.is_zero() {
            return Some(Fp::ZERO);
        }
        if p == 2 {
            return Some(a);
        }
        if self.pow(a, (p - 1) / 2) != Fp::ONE {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = Fp(2);
        while self.pow(z, (p - 1) / 2) == Fp::ONE {
            z = Fp(z.0 + 1);
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != Fp::ONE {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != Fp::ONE {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    pub fn random<R: Rng + ?Sized>(self, rng: &mut R) -> Fp {
        Fp(rng.gen_range(0..self.0))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(self, rng: &mut R) -> Fp {
        Fp(rng.gen_range(1..self.0))
    }
}

/// Multiplicative inverse via the extended Euclidean algorithm.
pub fn inv(a: Fp, p: Prime) -> Result<Fp> {
    if a.is_zero() {
        return Err(Error::ZeroInverse);
    }
    let (mut r0, mut r1) = (p.0 as i64, a.0 as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    Ok(p.from_i64(s0))
}

/// Row-major dense matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Fp>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Fp>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(DenseMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            entries: vec![Fp::ZERO; rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.entries[i * size + i] = Fp::ONE;
        }
        m
    }

    /// Builds a matrix from rows that must all have length `cols`.
    pub fn from_rows<I, R>(cols: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[Fp]>,
    {
        let mut m = DenseMatrix {
            rows: 0,
            cols,
            entries: Vec::new(),
        };
        for row in rows {
            m.push_row(row.as_ref())?;
        }
        Ok(m)
    }

    pub fn push_row(&mut self, row: &[Fp]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.entries.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Fp] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Fp]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fp {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fp) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Fp] {
        &self.entries
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if other.cols != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(DenseMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn rank(&self, p: Prime) -> usize {
        rank(self, p)
    }

    /// Reduced row echelon form with zero rows dropped.
    pub fn rref(&self, p: Prime) -> DenseMatrix {
        let mut ech = Echelon::new(self.cols, p);
        for row in self.row_iter() {
            ech.insert(row);
        }
        ech.reduced()
    }

    /// Basis of the right kernel `{x : self * x = 0}`.
    pub fn null_space(&self, p: Prime) -> Vec<Vec<Fp>> {
        let r = self.rref(p);
        let pivots: Vec<usize> = r
            .row_iter()
            .map(|row| row.iter().position(|v| !v.is_zero()).unwrap())
            .collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut x = vec![Fp::ZERO; self.cols];
            x[free] = Fp::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = p.neg(r.get(i, free));
            }
            basis.push(x);
        }
        basis
    }
}

/// Incremental row-echelon accumulator.
///
/// Pivot rows are kept sorted by leading column and normalized so the
/// leading entry is one. A new row is reduced left to right against the
/// pivots with lazy `u64` accumulation; it becomes a pivot iff something
/// survives.
#[derive(Debug, Clone)]
pub struct Echelon {
    prime: Prime,
    cols: usize,
    pivots: Vec<(usize, Vec<u32>)>,
    scratch: Vec<u64>,
    max_pending: usize,
}

impl Echelon {
    pub fn new(cols: usize, prime: Prime) -> Self {
        let p = prime.value() as u64;
        let sq = (p - 1) * (p - 1);
        let max_pending = (u64::MAX - p)
            .checked_div(sq)
            .map_or(usize::MAX, |v| v.min(usize::MAX as u64) as usize);
        Echelon {
            prime,
            cols,
            pivots: Vec::new(),
            scratch: vec![0; cols],
            max_pending: max_pending.max(1),
        }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.cols
    }

    /// Reduces `row` against the current pivots; returns true if it was
    /// independent (and is now a pivot).
    pub fn insert(&mut self, row: &[Fp]) -> bool {
        assert_eq!(row.len(), self.cols, "row length must match column count");
        if self.is_full() {
            return false;
        }
        let p = self.prime.value() as u64;
        for (s, v) in self.scratch.iter_mut().zip(row) {
            *s = v.0 as u64;
        }
        let mut pending = 0usize;
        for (col, piv) in &self.pivots {
            let col = *col;
            let f = self.scratch[col] % p;
            self.scratch[col] = 0;
            if f == 0 {
                continue;
            }
            let m = p - f;
            for (s, &v) in self.scratch[col + 1..].iter_mut().zip(&piv[col + 1..]) {
                *s += m * v as u64;
            }
            pending += 1;
            if pending >= self.max_pending {
                for s in &mut self.scratch[col + 1..] {
                    *s %= p;
                }
                pending = 0;
            }
        }
        let lead = self.scratch.iter().position(|&s| s % p != 0);
        let Some(lead) = lead else {
            return false;
        };
        let lead_val = self.prime.element(self.scratch[lead]);
        let scale = inv(lead_val, self.prime)
            .expect("leading entry is nonzero")
            .0 as u64;
        let mut new_row = vec![0u32; self.cols];
        for (dst, &s) in new_row[lead..].iter_mut().zip(&self.scratch[lead..]) {
            *dst = (((s % p) * scale) % p) as u32;
        }
        let at = self.pivots.partition_point(|(c, _)| *c < lead);
        self.pivots.insert(at, (lead, new_row));
        true
    }

    /// Leading columns of the current pivots, ascending.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }

    /// Back-substitutes to produce the reduced row echelon form.
    pub fn reduced(&self) -> DenseMatrix {
        let p = self.prime;
        let mut rows: Vec<Vec<Fp>> = self
            .pivots
            .iter()
            .map(|(_, r)| r.iter().map(|&v| Fp(v)).collect())
            .collect();
        for i in (0..rows.len()).rev() {
            let col = self.pivots[i].0;
            let (upper, lower) = rows.split_at_mut(i);
            let pivot_row = &lower[0];
            for row in upper.iter_mut() {
                let f = row[col];
                if f.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    row[j] = p.sub(row[j], p.mul(f, pivot_row[j]));
                }
            }
        }
        DenseMatrix::from_rows(self.cols, rows).expect("rows have the echelon width")
    }
}

/// Row rank of `m` over F_p.
pub fn rank(m: &DenseMatrix, p: Prime) -> usize {
    let mut ech = Echelon::new(m.cols, p);
    for row in m.row_iter() {
        ech.insert(row);
        if ech.is_full() {
            break;
        }
    }
    ech.rank()
}
