//! Degree-d monomials in n+1 variables and the row builders that turn
//! point and tangent conditions into linear functionals on forms.

use crate::error::{Error, Result};
use crate::gfp::{Fp, Prime};

/// All exponent vectors of total degree `d` in `n + 1` variables, in
/// graded-lex order (`x_0^d` first, `x_n^d` last).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    n: usize,
    d: u32,
    exponents: Vec<u32>,
}

impl MonomialBasis {
    pub fn new(n: usize, d: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidDimension(format!(
                "projective dimension must be at least 1, got {n}"
            )));
        }
        let width = n + 1;
        let mut exponents = Vec::new();
        let mut e = vec![0u32; width];
        e[0] = d;
        loop {
            exponents.extend_from_slice(&e);
            // successor: move one unit from the last nonzero slot before x_n
            // one step right, and sweep the tail into that slot
            let Some(i) = (0..n).rev().find(|&i| e[i] > 0) else {
                break;
            };
            let tail = e[n];
            e[n] = 0;
            e[i] -= 1;
            e[i + 1] = tail + 1;
        }
        Ok(MonomialBasis { n, d, exponents })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.d
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.exponents.len() / (self.n + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn exponent(&self, j: usize) -> &[u32] {
        let w = self.n + 1;
        &self.exponents[j * w..(j + 1) * w]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.exponents.chunks_exact(self.n + 1)
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.iter().position(|e| e == exps)
    }

    fn check_len(&self, v: &[Fp]) -> Result<()> {
        if v.len() != self.n + 1 {
            return Err(Error::DimensionMismatch {
                expected: self.n + 1,
                found: v.len(),
            });
        }
        Ok(())
    }

    fn power_table(&self, point: &[Fp], p: Prime) -> Vec<Vec<Fp>> {
        point
            .iter()
            .map(|&c| {
                let mut pw = Vec::with_capacity(self.d as usize + 1);
                let mut acc = Fp::ONE;
                for _ in 0..=self.d {
                    pw.push(acc);
                    acc = p.mul(acc, c);
                }
                pw
            })
            .collect()
    }

    /// Row whose j-th entry is the j-th monomial evaluated at `point`.
    pub fn evaluation_row(&self, point: &[Fp], p: Prime) -> Result<Vec<Fp>> {
        self.check_len(point)?;
        let pw = self.power_table(point, p);
        Ok(self
            .iter()
            .map(|e| {
                e.iter()
                    .enumerate()
                    .fold(Fp::ONE, |acc, (k, &ek)| p.mul(acc, pw[k][ek as usize]))
            })
            .collect())
    }

    /// Row whose j-th entry is the derivative of the j-th monomial along
    /// `direction`, evaluated at `point`.
    pub fn derivative_row(&self, point: &[Fp], direction: &[Fp], p: Prime) -> Result<Vec<Fp>> {
        self.check_len(point)?;
        self.check_len(direction)?;
        let pw = self.power_table(point, p);
        Ok(self
            .iter()
            .map(|e| {
                let mut total = Fp::ZERO;
                for (k, &ek) in e.iter().enumerate() {
                    if ek == 0 || direction[k].is_zero() {
                        continue;
                    }
                    let mut term = p.mul(direction[k], p.element(ek as u64));
                    for (i, &ei) in e.iter().enumerate() {
                        let exp = if i == k { ei - 1 } else { ei };
                        term = p.mul(term, pw[i][exp as usize]);
                    }
                    total = p.add(total, term);
                }
                total
            })
            .collect())
    }
}

/// Free-function form of [`MonomialBasis::new`].
pub fn basis(n: usize, d: u32) -> Result<MonomialBasis> {
    MonomialBasis::new(n, d)
}
