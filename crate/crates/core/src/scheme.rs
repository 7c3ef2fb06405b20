//! Unions of points, restricted double points, lines, degenerate conics and
//! sundials, and the condition matrices they impose on degree-d forms.
//!
//! `HF(X, d)` is the rank of the condition matrix and
//! `dim (I_X)_d = C(d + n, n) - HF(X, d)`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::geometry::{Line, LinearSubspace, ProjectivePoint, SundialData};
use crate::gfp::{DenseMatrix, Echelon, Fp, Prime};
use crate::monomial::MonomialBasis;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeComponent {
    SimplePoint(ProjectivePoint),
    /// `2P|_T`: vanishing at `point` together with all derivatives along `space`.
    DoublePointRestricted {
        point: ProjectivePoint,
        space: LinearSubspace,
    },
    Line(Line),
    DegenerateConic {
        l: Line,
        m: Line,
        vertex: ProjectivePoint,
    },
    Sundial(SundialData),
}

impl SchemeComponent {
    /// Two distinct lines meeting in one point.
    pub fn conic(l: Line, m: Line, p: Prime) -> Result<Self> {
        if l == m {
            return Err(Error::DegenerateComponent("conic lines coincide".into()));
        }
        let vertex = l
            .meet(&m, p)?
            .ok_or_else(|| Error::DegenerateComponent("conic lines do not meet".into()))?;
        Ok(SchemeComponent::DegenerateConic { l, m, vertex })
    }

    pub fn double_point(point: ProjectivePoint, space: LinearSubspace, p: Prime) -> Result<Self> {
        if !space.contains_point(&point, p) {
            return Err(Error::DegenerateComponent(
                "double point support is outside its restricting space".into(),
            ));
        }
        Ok(SchemeComponent::DoublePointRestricted { point, space })
    }

    pub fn ambient_n(&self) -> usize {
        match self {
            SchemeComponent::SimplePoint(pt) => pt.ambient_n(),
            SchemeComponent::DoublePointRestricted { point, .. } => point.ambient_n(),
            SchemeComponent::Line(l) => l.ambient_n(),
            SchemeComponent::DegenerateConic { l, .. } => l.ambient_n(),
            SchemeComponent::Sundial(s) => s.ambient_n(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SchemeComponent::SimplePoint(_) => "point",
            SchemeComponent::DoublePointRestricted { .. } => "double_point",
            SchemeComponent::Line(_) => "line",
            SchemeComponent::DegenerateConic { .. } => "conic",
            SchemeComponent::Sundial(_) => "sundial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Scheme {
    ambient_n: usize,
    components: Vec<SchemeComponent>,
}

impl Scheme {
    pub fn new(ambient_n: usize) -> Self {
        Scheme {
            ambient_n,
            components: Vec::new(),
        }
    }

    pub fn from_components<I>(ambient_n: usize, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = SchemeComponent>,
    {
        let mut s = Scheme::new(ambient_n);
        for c in components {
            s.push(c)?;
        }
        Ok(s)
    }

    pub fn push(&mut self, c: SchemeComponent) -> Result<()> {
        if c.ambient_n() != self.ambient_n {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_n,
                found: c.ambient_n(),
            });
        }
        self.components.push(c);
        Ok(())
    }

    pub fn extend_from(&mut self, other: &Scheme) -> Result<()> {
        for c in &other.components {
            self.push(c.clone())?;
        }
        Ok(())
    }

    /// Union with another scheme in the same ambient space.
    pub fn union(&self, other: &Scheme) -> Result<Scheme> {
        let mut s = self.clone();
        s.extend_from(other)?;
        Ok(s)
    }

    #[inline]
    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    #[inline]
    pub fn components(&self) -> &[SchemeComponent] {
        &self.components
    }

    pub fn into_components(self) -> Vec<SchemeComponent> {
        self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn count(&self, kind: &str) -> usize {
        self.components.iter().filter(|c| c.kind() == kind).count()
    }
}

/// How the `d + 1` sample points on each line are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LineSampling {
    /// Parameters `0, 1, ..., d` along `a + t b`.
    #[default]
    Standard,
    /// `d + 1` distinct parameters drawn from a seeded generator.
    Seeded(u64),
}

/// Condition rows stacked per component, with the index of the component
/// that produced each row.
#[derive(Debug, Clone)]
pub struct ConditionMatrix {
    pub matrix: DenseMatrix,
    pub provenance: Vec<usize>,
}

impl ConditionMatrix {
    pub fn rank(&self, p: Prime) -> usize {
        self.matrix.rank(p)
    }
}

/// Builds condition rows for schemes in a fixed `(n, d, p)`.
#[derive(Debug, Clone)]
pub struct ConditionBuilder {
    basis: MonomialBasis,
    prime: Prime,
    line_params: Vec<Fp>,
}

impl ConditionBuilder {
    pub fn new(n: usize, d: u32, p: Prime) -> Result<Self> {
        p.check_degree(d)?;
        let basis = MonomialBasis::new(n, d)?;
        let line_params = (0..=d as u64).map(|t| p.element(t)).collect();
        Ok(ConditionBuilder {
            basis,
            prime: p,
            line_params,
        })
    }

    pub fn with_line_sampling(mut self, sampling: LineSampling) -> Self {
        self.line_params = match sampling {
            LineSampling::Standard => (0..=self.basis.degree() as u64)
                .map(|t| self.prime.element(t))
                .collect(),
            LineSampling::Seeded(seed) => {
                let mut rng = StdRng::seed_from_u64(seed);
                let mut params: Vec<Fp> = Vec::new();
                while params.len() <= self.basis.degree() as usize {
                    let t = self.prime.element(rng.gen::<u64>());
                    if !params.contains(&t) {
                        params.push(t);
                    }
                }
                params
            }
        };
        self
    }

    #[inline]
    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn columns(&self) -> usize {
        self.basis.len()
    }

    fn line_rows(&self, line: &Line, out: &mut Vec<Vec<Fp>>) -> Result<()> {
        for &t in &self.line_params {
            let q = line.point_at(t, self.prime);
            out.push(self.basis.evaluation_row(q.coords(), self.prime)?);
        }
        Ok(())
    }

    fn double_point_rows(
        &self,
        point: &ProjectivePoint,
        space: &LinearSubspace,
        out: &mut Vec<Vec<Fp>>,
    ) -> Result<()> {
        let p = self.prime;
        if !space.contains_point(point, p) {
            return Err(Error::DegenerateComponent(
                "double point support is outside its restricting space".into(),
            ));
        }
        out.push(self.basis.evaluation_row(point.coords(), p)?);
        // directions of T at P: basis vectors of T independent modulo P
        let mut ech = Echelon::new(point.ambient_n() + 1, p);
        ech.insert(point.coords());
        for dir in space.basis().row_iter() {
            if ech.insert(dir) {
                out.push(self.basis.derivative_row(point.coords(), dir, p)?);
            }
        }
        Ok(())
    }

    pub fn component_rows(&self, c: &SchemeComponent) -> Result<Vec<Vec<Fp>>> {
        if c.ambient_n() != self.basis.n() {
            return Err(Error::DimensionMismatch {
                expected: self.basis.n(),
                found: c.ambient_n(),
            });
        }
        let mut out = Vec::new();
        match c {
            SchemeComponent::SimplePoint(pt) => {
                out.push(self.basis.evaluation_row(pt.coords(), self.prime)?);
            }
            SchemeComponent::DoublePointRestricted { point, space } => {
                self.double_point_rows(point, space, &mut out)?;
            }
            SchemeComponent::Line(l) => self.line_rows(l, &mut out)?,
            SchemeComponent::DegenerateConic { l, m, .. } => {
                self.line_rows(l, &mut out)?;
                self.line_rows(m, &mut out)?;
            }
            SchemeComponent::Sundial(s) => {
                self.line_rows(&s.l, &mut out)?;
                self.line_rows(&s.m, &mut out)?;
                self.double_point_rows(&s.vertex, &s.space, &mut out)?;
            }
        }
        Ok(out)
    }

    fn check_scheme(&self, x: &Scheme) -> Result<()> {
        if x.ambient_n() != self.basis.n() {
            return Err(Error::DimensionMismatch {
                expected: self.basis.n(),
                found: x.ambient_n(),
            });
        }
        Ok(())
    }

    pub fn matrix(&self, x: &Scheme) -> Result<ConditionMatrix> {
        self.check_scheme(x)?;
        let mut matrix = DenseMatrix::zeros(0, self.columns());
        let mut provenance = Vec::new();
        for (i, c) in x.components().iter().enumerate() {
            for row in self.component_rows(c)? {
                matrix.push_row(&row)?;
                provenance.push(i);
            }
        }
        Ok(ConditionMatrix { matrix, provenance })
    }

    /// `HF(X, d)`: rank of the stacked conditions, stopping early once the
    /// rank reaches the number of monomials.
    pub fn hilbert_function(&self, x: &Scheme) -> Result<usize> {
        self.check_scheme(x)?;
        let mut ech = Echelon::new(self.columns(), self.prime);
        self.feed(x, &mut ech)?;
        Ok(ech.rank())
    }

    /// Inserts the rows of `x` into an existing echelon accumulator.
    pub fn feed(&self, x: &Scheme, ech: &mut Echelon) -> Result<()> {
        for c in x.components() {
            if ech.is_full() {
                break;
            }
            for row in self.component_rows(c)? {
                ech.insert(&row);
            }
        }
        Ok(())
    }

    pub fn ideal_dimension(&self, x: &Scheme) -> Result<usize> {
        Ok(self.columns() - self.hilbert_function(x)?)
    }
}

/// Rows imposed by one component on the forms indexed by `basis`.
pub fn component_rows(
    c: &SchemeComponent,
    basis: &MonomialBasis,
    p: Prime,
) -> Result<Vec<Vec<Fp>>> {
    ConditionBuilder::new(basis.n(), basis.degree(), p)?.component_rows(c)
}

pub fn condition_matrix(x: &Scheme, d: u32, p: Prime) -> Result<ConditionMatrix> {
    ConditionBuilder::new(x.ambient_n(), d, p)?.matrix(x)
}

/// `dim (I_X)_d` over F_p.
pub fn ideal_dimension(x: &Scheme, d: u32, p: Prime) -> Result<usize> {
    ConditionBuilder::new(x.ambient_n(), d, p)?.ideal_dimension(x)
}

/// `HF(X, d)` over F_p.
pub fn hilbert_function(x: &Scheme, d: u32, p: Prime) -> Result<usize> {
    ConditionBuilder::new(x.ambient_n(), d, p)?.hilbert_function(x)
}
