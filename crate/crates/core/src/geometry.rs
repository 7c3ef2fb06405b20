//! Projective linear algebra over F_p and seeded constructors for the
//! geometric building blocks: points, subspaces, lines, sundials, and the
//! rulings of the fixed quadric `x_0 x_3 - x_1 x_2 = 0` in P^3.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::{DenseMatrix, Fp, Prime};
use crate::scheme::{Scheme, SchemeComponent};

/// A point of P^n with its first nonzero coordinate scaled to one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ProjectivePoint {
    coords: Vec<Fp>,
}

impl ProjectivePoint {
    pub fn new(mut coords: Vec<Fp>, p: Prime) -> Result<Self> {
        let Some(lead) = coords.iter().position(|c| !c.is_zero()) else {
            return Err(Error::DegenerateComponent(
                "all coordinates of a projective point are zero".into(),
            ));
        };
        if coords.len() < 2 {
            return Err(Error::InvalidDimension(
                "a projective point needs at least two coordinates".into(),
            ));
        }
        let s = p.inv(coords[lead])?;
        for c in coords.iter_mut().skip(lead) {
            *c = p.mul(*c, s);
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn from_values(values: &[u64], p: Prime) -> Result<Self> {
        Self::new(values.iter().map(|&v| p.element(v)).collect(), p)
    }

    /// The coordinate point `e_i` of P^n.
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut coords = vec![Fp::ZERO; n + 1];
        coords[i] = Fp::ONE;
        ProjectivePoint { coords }
    }

    #[inline]
    pub fn coords(&self) -> &[Fp] {
        &self.coords
    }

    #[inline]
    pub fn ambient_n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn values(&self) -> Vec<u32> {
        self.coords.iter().map(|c| c.value()).collect()
    }
}

/// A projective linear subspace, stored by the reduced row echelon form of
/// a spanning set of its cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSubspace {
    ambient_n: usize,
    basis: DenseMatrix,
}

impl LinearSubspace {
    pub fn from_vectors<I, V>(ambient_n: usize, vectors: I, p: Prime) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Fp]>,
    {
        let m = DenseMatrix::from_rows(ambient_n + 1, vectors)?;
        if m.rows() == 0 {
            return Err(Error::EmptyInput);
        }
        let basis = m.rref(p);
        if basis.rows() == 0 {
            return Err(Error::DegenerateComponent(
                "spanning vectors are all zero".into(),
            ));
        }
        Ok(LinearSubspace { ambient_n, basis })
    }

    pub fn whole(n: usize) -> Self {
        LinearSubspace {
            ambient_n: n,
            basis: DenseMatrix::identity(n + 1),
        }
    }

    /// The hyperplane `x_n = 0`.
    pub fn coordinate_hyperplane(n: usize) -> Self {
        let rows = (0..n).map(|i| ProjectivePoint::coordinate(n, i).coords);
        LinearSubspace {
            ambient_n: n,
            basis: DenseMatrix::from_rows(n + 1, rows).expect("coordinate rows"),
        }
    }

    #[inline]
    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    #[inline]
    pub fn projective_dim(&self) -> usize {
        self.basis.rows() - 1
    }

    #[inline]
    pub fn basis(&self) -> &DenseMatrix {
        &self.basis
    }

    pub fn basis_points(&self, p: Prime) -> Vec<ProjectivePoint> {
        self.basis
            .row_iter()
            .map(|r| ProjectivePoint::new(r.to_vec(), p).expect("basis rows are nonzero"))
            .collect()
    }

    pub fn contains_vector(&self, v: &[Fp], p: Prime) -> bool {
        if v.len() != self.ambient_n + 1 {
            return false;
        }
        let mut rest = v.to_vec();
        for row in self.basis.row_iter() {
            let lead = row.iter().position(|c| !c.is_zero()).expect("rref row");
            let f = rest[lead];
            if f.is_zero() {
                continue;
            }
            for (r, &b) in rest.iter_mut().zip(row) {
                *r = p.sub(*r, p.mul(f, b));
            }
        }
        rest.iter().all(|c| c.is_zero())
    }

    pub fn contains_point(&self, pt: &ProjectivePoint, p: Prime) -> bool {
        self.contains_vector(pt.coords(), p)
    }

    pub fn contains_subspace(&self, other: &LinearSubspace, p: Prime) -> bool {
        other.ambient_n == self.ambient_n
            && other.basis.row_iter().all(|r| self.contains_vector(r, p))
    }

    pub fn contains_line(&self, line: &Line, p: Prime) -> bool {
        self.contains_point(&line.a, p) && self.contains_point(&line.b, p)
    }

    /// Smallest subspace containing both.
    pub fn join(&self, other: &LinearSubspace, p: Prime) -> Result<LinearSubspace> {
        if other.ambient_n != self.ambient_n {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_n,
                found: other.ambient_n,
            });
        }
        LinearSubspace::from_vectors(
            self.ambient_n,
            self.basis.row_iter().chain(other.basis.row_iter()),
            p,
        )
    }

    /// Intersection, or `None` when it is empty in projective space.
    pub fn intersect(&self, other: &LinearSubspace, p: Prime) -> Result<Option<LinearSubspace>> {
        if other.ambient_n != self.ambient_n {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_n,
                found: other.ambient_n,
            });
        }
        // columns are the basis vectors of self followed by the negated
        // basis vectors of other; kernel vectors give common points
        let k = self.basis.rows();
        let l = other.basis.rows();
        let width = self.ambient_n + 1;
        let mut m = DenseMatrix::zeros(width, k + l);
        for (i, row) in self.basis.row_iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(c, i, v);
            }
        }
        for (j, row) in other.basis.row_iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(c, k + j, p.neg(v));
            }
        }
        let kernel = m.null_space(p);
        let vectors: Vec<Vec<Fp>> = kernel
            .iter()
            .map(|x| {
                let mut v = vec![Fp::ZERO; width];
                for (i, row) in self.basis.row_iter().enumerate() {
                    for (c, &b) in row.iter().enumerate() {
                        v[c] = p.add(v[c], p.mul(x[i], b));
                    }
                }
                v
            })
            .filter(|v| v.iter().any(|c| !c.is_zero()))
            .collect();
        if vectors.is_empty() {
            return Ok(None);
        }
        LinearSubspace::from_vectors(self.ambient_n, vectors, p).map(Some)
    }
}

/// Smallest linear subspace containing all `points`.
pub fn span(points: &[ProjectivePoint], p: Prime) -> Result<LinearSubspace> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let n = first.ambient_n();
    if let Some(bad) = points.iter().find(|q| q.ambient_n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.ambient_n(),
        });
    }
    LinearSubspace::from_vectors(n, points.iter().map(|q| q.coords()), p)
}

/// A line, stored by the two canonical points of its echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Line {
    a: ProjectivePoint,
    b: ProjectivePoint,
}

impl Line {
    pub fn through(p1: &ProjectivePoint, p2: &ProjectivePoint, p: Prime) -> Result<Self> {
        let s = span(&[p1.clone(), p2.clone()], p)?;
        Self::from_subspace(&s, p)
    }

    pub fn from_subspace(s: &LinearSubspace, p: Prime) -> Result<Self> {
        if s.projective_dim() != 1 {
            return Err(Error::DegenerateComponent(format!(
                "a line needs two distinct points, got a subspace of dimension {}",
                s.projective_dim()
            )));
        }
        let mut pts = s.basis_points(p).into_iter();
        Ok(Line {
            a: pts.next().unwrap(),
            b: pts.next().unwrap(),
        })
    }

    #[inline]
    pub fn first(&self) -> &ProjectivePoint {
        &self.a
    }

    #[inline]
    pub fn second(&self) -> &ProjectivePoint {
        &self.b
    }

    #[inline]
    pub fn ambient_n(&self) -> usize {
        self.a.ambient_n()
    }

    /// The point `a + t b`.
    pub fn point_at(&self, t: Fp, p: Prime) -> ProjectivePoint {
        let coords = self
            .a
            .coords()
            .iter()
            .zip(self.b.coords())
            .map(|(&x, &y)| p.add(x, p.mul(t, y)))
            .collect();
        ProjectivePoint::new(coords, p).expect("spanning points are independent")
    }

    pub fn subspace(&self, p: Prime) -> LinearSubspace {
        span(&[self.a.clone(), self.b.clone()], p).expect("line points share ambient")
    }

    pub fn contains(&self, pt: &ProjectivePoint, p: Prime) -> bool {
        self.subspace(p).contains_point(pt, p)
    }

    /// The common point of two distinct coplanar lines.
    pub fn meet(&self, other: &Line, p: Prime) -> Result<Option<ProjectivePoint>> {
        match self.subspace(p).intersect(&other.subspace(p), p)? {
            Some(s) if s.projective_dim() == 0 => Ok(s.basis_points(p).pop()),
            _ => Ok(None),
        }
    }
}

/// `L + M + 2P|_T`: two lines meeting in `vertex`, with the double point at
/// the vertex restricted to a 3-space containing both lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SundialData {
    pub l: Line,
    pub m: Line,
    pub vertex: ProjectivePoint,
    pub space: LinearSubspace,
}

impl Serialize for LinearSubspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<u32>> = self
            .basis
            .row_iter()
            .map(|r| r.iter().map(|c| c.value()).collect())
            .collect();
        rows.serialize(s)
    }
}

impl SundialData {
    pub fn new(
        l: Line,
        m: Line,
        vertex: ProjectivePoint,
        space: LinearSubspace,
        p: Prime,
    ) -> Result<Self> {
        let n = l.ambient_n();
        if n < 3 {
            return Err(Error::DimensionTooSmall(n));
        }
        if m.ambient_n() != n || vertex.ambient_n() != n || space.ambient_n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.ambient_n(),
            });
        }
        if l == m {
            return Err(Error::DegenerateComponent("sundial lines coincide".into()));
        }
        if !l.contains(&vertex, p) || !m.contains(&vertex, p) {
            return Err(Error::DegenerateComponent(
                "sundial vertex is not on both lines".into(),
            ));
        }
        if space.projective_dim() != 3 {
            return Err(Error::DegenerateComponent(format!(
                "sundial space has dimension {}, expected 3",
                space.projective_dim()
            )));
        }
        if !space.contains_line(&l, p) || !space.contains_line(&m, p) {
            return Err(Error::DegenerateComponent(
                "sundial space does not contain both lines".into(),
            ));
        }
        Ok(SundialData {
            l,
            m,
            vertex,
            space,
        })
    }

    /// Sundial on two intersecting lines with `T = span(L, M, extra)`.
    pub fn from_lines(l: Line, m: Line, extra: &ProjectivePoint, p: Prime) -> Result<Self> {
        let vertex = l
            .meet(&m, p)?
            .ok_or_else(|| Error::DegenerateComponent("sundial lines do not meet".into()))?;
        let space = span(
            &[
                l.a.clone(),
                l.b.clone(),
                m.a.clone(),
                m.b.clone(),
                extra.clone(),
            ],
            p,
        )?;
        Self::new(l, m, vertex, space, p)
    }

    pub fn ambient_n(&self) -> usize {
        self.l.ambient_n()
    }

    /// The plane of the two lines.
    pub fn plane(&self, p: Prime) -> LinearSubspace {
        self.l
            .subspace(p)
            .join(&self.m.subspace(p), p)
            .expect("same ambient")
    }
}

pub fn random_point<R: Rng + ?Sized>(n: usize, p: Prime, rng: &mut R) -> ProjectivePoint {
    loop {
        let coords: Vec<Fp> = (0..=n).map(|_| p.random(rng)).collect();
        if let Ok(pt) = ProjectivePoint::new(coords, p) {
            return pt;
        }
    }
}

/// Uniform random point of `s`: a random combination of its basis.
pub fn sample_point<R: Rng + ?Sized>(s: &LinearSubspace, p: Prime, rng: &mut R) -> ProjectivePoint {
    let width = s.ambient_n() + 1;
    loop {
        let mut v = vec![Fp::ZERO; width];
        for row in s.basis().row_iter() {
            let c = p.random(rng);
            for (x, &b) in v.iter_mut().zip(row) {
                *x = p.add(*x, p.mul(c, b));
            }
        }
        if let Ok(pt) = ProjectivePoint::new(v, p) {
            return pt;
        }
    }
}

/// Random point of `s` that does not lie in `avoid`.
pub fn sample_point_off<R: Rng + ?Sized>(
    s: &LinearSubspace,
    avoid: &LinearSubspace,
    p: Prime,
    rng: &mut R,
) -> ProjectivePoint {
    assert!(!avoid.contains_subspace(s, p), "nothing to sample outside");
    loop {
        let pt = sample_point(s, p, rng);
        if !avoid.contains_point(&pt, p) {
            return pt;
        }
    }
}

pub fn random_line_in<R: Rng + ?Sized>(s: &LinearSubspace, p: Prime, rng: &mut R) -> Line {
    assert!(s.projective_dim() >= 1);
    loop {
        let a = sample_point(s, p, rng);
        let b = sample_point(s, p, rng);
        if let Ok(l) = Line::through(&a, &b, p) {
            return l;
        }
    }
}

pub fn random_line<R: Rng + ?Sized>(n: usize, p: Prime, rng: &mut R) -> Line {
    random_line_in(&LinearSubspace::whole(n), p, rng)
}

/// Random line through `pt` inside `s` (which must contain `pt`).
pub fn random_line_through<R: Rng + ?Sized>(
    pt: &ProjectivePoint,
    s: &LinearSubspace,
    p: Prime,
    rng: &mut R,
) -> Line {
    assert!(s.projective_dim() >= 1);
    loop {
        let q = sample_point(s, p, rng);
        if let Ok(l) = Line::through(pt, &q, p) {
            return l;
        }
    }
}

/// Generic sundial whose lines and 3-space all lie inside `s`.
pub fn generic_sundial_in<R: Rng + ?Sized>(
    s: &LinearSubspace,
    p: Prime,
    rng: &mut R,
) -> Result<SundialData> {
    if s.projective_dim() < 3 {
        return Err(Error::DimensionTooSmall(s.projective_dim()));
    }
    loop {
        let vertex = sample_point(s, p, rng);
        let l = random_line_through(&vertex, s, p, rng);
        let m = random_line_through(&vertex, s, p, rng);
        let extra = sample_point(s, p, rng);
        let space = span(
            &[l.a.clone(), l.b.clone(), m.a.clone(), m.b.clone(), extra],
            p,
        )?;
        if space.projective_dim() != 3 || l == m {
            continue;
        }
        return SundialData::new(l, m, vertex, space, p);
    }
}

/// A generic sundial in P^n; for `n = 3` its 3-space is the whole space.
pub fn make_generic_sundial<R: Rng + ?Sized>(
    n: usize,
    p: Prime,
    rng: &mut R,
) -> Result<SundialData> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n));
    }
    generic_sundial_in(&LinearSubspace::whole(n), p, rng)
}

/// One fiber of the family degenerating two skew lines into a sundial.
///
/// With `P` the first canonical point of `M` and `L1 = <a, b>`, the moving
/// line is `L_lambda = <lambda a + (1 - lambda) P, b>`. Every fiber lies in
/// `T = span(L1, M)`; for `lambda != 0` it is two skew lines, and at
/// `lambda = 0` the line `<P, b>` meets `M` at `P` and the fiber is the
/// sundial `L_0 + M + 2P|_T`.
pub fn degeneration_fiber(l1: &Line, m: &Line, lambda: Fp, p: Prime) -> Result<Scheme> {
    let n = l1.ambient_n();
    let t = l1.subspace(p).join(&m.subspace(p), p)?;
    if t.projective_dim() != 3 {
        return Err(Error::NotSkew(t.projective_dim()));
    }
    let anchor = m.first().clone();
    let a = l1.first();
    let one_minus = p.sub(Fp::ONE, lambda);
    let moving: Vec<Fp> = a
        .coords()
        .iter()
        .zip(anchor.coords())
        .map(|(&x, &y)| p.add(p.mul(lambda, x), p.mul(one_minus, y)))
        .collect();
    let moving = ProjectivePoint::new(moving, p)?;
    let l_lambda = Line::through(&moving, l1.second(), p)?;
    let mut scheme = Scheme::new(n);
    scheme.push(SchemeComponent::Line(l_lambda))?;
    scheme.push(SchemeComponent::Line(m.clone()))?;
    if lambda.is_zero() {
        scheme.push(SchemeComponent::DoublePointRestricted {
            point: anchor,
            space: t,
        })?;
    }
    Ok(scheme)
}

/// The two rulings of `Q: x_0 x_3 - x_1 x_2 = 0`, image of the Segre map
/// `(u, v) -> (u0 v0 : u0 v1 : u1 v0 : u1 v1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RulingFamily {
    /// `u` fixed, `v` varying.
    A,
    /// `v` fixed, `u` varying.
    B,
}

pub fn segre(u: &ProjectivePoint, v: &ProjectivePoint, p: Prime) -> ProjectivePoint {
    assert!(u.ambient_n() == 1 && v.ambient_n() == 1);
    let (u, v) = (u.coords(), v.coords());
    let coords = vec![
        p.mul(u[0], v[0]),
        p.mul(u[0], v[1]),
        p.mul(u[1], v[0]),
        p.mul(u[1], v[1]),
    ];
    ProjectivePoint::new(coords, p).expect("Segre image of nonzero points is nonzero")
}

/// Value of `x_0 x_3 - x_1 x_2` at a representative vector.
pub fn quadric_form(x: &[Fp], p: Prime) -> Fp {
    p.sub(p.mul(x[0], x[3]), p.mul(x[1], x[2]))
}

pub fn on_quadric(pt: &ProjectivePoint, p: Prime) -> bool {
    pt.ambient_n() == 3 && quadric_form(pt.coords(), p).is_zero()
}

/// Recovers `(u, v)` from a point of the quadric:
/// `u = (x0 : x2)` or `(x1 : x3)`, `v = (x0 : x1)` or `(x2 : x3)`.
pub fn segre_coordinates(
    pt: &ProjectivePoint,
    p: Prime,
) -> Option<(ProjectivePoint, ProjectivePoint)> {
    if !on_quadric(pt, p) {
        return None;
    }
    let x = pt.coords();
    let u = if !x[0].is_zero() || !x[2].is_zero() {
        vec![x[0], x[2]]
    } else {
        vec![x[1], x[3]]
    };
    let v = if !x[0].is_zero() || !x[1].is_zero() {
        vec![x[0], x[1]]
    } else {
        vec![x[2], x[3]]
    };
    Some((
        ProjectivePoint::new(u, p).ok()?,
        ProjectivePoint::new(v, p).ok()?,
    ))
}

pub fn random_p1_point<R: Rng + ?Sized>(p: Prime, rng: &mut R) -> ProjectivePoint {
    random_point(1, p, rng)
}

pub fn random_quadric_point<R: Rng + ?Sized>(p: Prime, rng: &mut R) -> ProjectivePoint {
    let u = random_p1_point(p, rng);
    let v = random_p1_point(p, rng);
    segre(&u, &v, p)
}

/// The line of `family` with parameter `param` on the fixed quadric.
pub fn ruling_line(family: RulingFamily, param: &ProjectivePoint, p: Prime) -> Result<Line> {
    if param.ambient_n() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: param.ambient_n(),
        });
    }
    let e0 = ProjectivePoint::coordinate(1, 0);
    let e1 = ProjectivePoint::coordinate(1, 1);
    let (x, y) = match family {
        RulingFamily::A => (segre(param, &e0, p), segre(param, &e1, p)),
        RulingFamily::B => (segre(&e0, param, p), segre(&e1, param, p)),
    };
    Line::through(&x, &y, p)
}

/// Which ruling a line of P^3 belongs to, with its parameter, if it lies on Q.
pub fn ruling_of(line: &Line, p: Prime) -> Option<(RulingFamily, ProjectivePoint)> {
    let (ua, va) = segre_coordinates(line.first(), p)?;
    let (ub, vb) = segre_coordinates(line.second(), p)?;
    let mid = line.point_at(Fp::ONE, p);
    if !on_quadric(&mid, p) {
        return None;
    }
    if ua == ub {
        Some((RulingFamily::A, ua))
    } else if va == vb {
        Some((RulingFamily::B, va))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(p: Prime, v: &[u64]) -> ProjectivePoint {
        ProjectivePoint::from_values(v, p).unwrap()
    }

    #[test]
    fn canonical_representative() {
        let p = Prime::default();
        let a = pt(p, &[0, 3, 6, 9]);
        assert_eq!(a.coords()[1], Fp::ONE);
        assert_eq!(a, pt(p, &[0, 1, 2, 3]));
        assert!(ProjectivePoint::from_values(&[0, 0, 0], p).is_err());
    }

    #[test]
    fn span_examples() {
        let p = Prime::default();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_point(4, p, &mut rng);
        let b = random_point(4, p, &mut rng);
        assert_eq!(
            span(&[a.clone(), b.clone()], p).unwrap().projective_dim(),
            1
        );
        assert_eq!(
            span(&[a.clone(), a.clone()], p).unwrap().projective_dim(),
            0
        );
        let l = random_line(5, p, &mut rng);
        let m = random_line(5, p, &mut rng);
        let four = [
            l.first().clone(),
            l.second().clone(),
            m.first().clone(),
            m.second().clone(),
        ];
        assert_eq!(span(&four, p).unwrap().projective_dim(), 3);
        assert_eq!(span(&[], p), Err(Error::EmptyInput));
        let c = random_point(3, p, &mut rng);
        assert!(matches!(
            span(&[a, c], p),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn span_is_idempotent() {
        let p = Prime::default();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for k in 1..5 {
            let pts: Vec<_> = (0..k).map(|_| random_point(5, p, &mut rng)).collect();
            let s = span(&pts, p).unwrap();
            assert_eq!(span(&s.basis_points(p), p).unwrap(), s);
        }
    }

    #[test]
    fn sampled_points_lie_in_subspace() {
        let p = Prime::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let whole = LinearSubspace::whole(4);
        assert!(whole.contains_point(&sample_point(&whole, p, &mut rng), p));
        let l = random_line(4, p, &mut rng);
        let q = sample_point(&l.subspace(p), p, &mut rng);
        assert!(l.contains(&q, p));
        let s1 = sample_point(&whole, p, &mut ChaCha8Rng::seed_from_u64(9));
        let s2 = sample_point(&whole, p, &mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(s1, s2);
    }

    #[test]
    fn sundial_constructor() {
        let p = Prime::default();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s3 = make_generic_sundial(3, p, &mut rng).unwrap();
        assert_eq!(s3.space, LinearSubspace::whole(3));
        let s5 = make_generic_sundial(5, p, &mut rng).unwrap();
        assert!(s5.l.contains(&s5.vertex, p) && s5.m.contains(&s5.vertex, p));
        assert_eq!(s5.plane(p).projective_dim(), 2);
        assert!(s5.space.contains_subspace(&s5.plane(p), p));
        assert_eq!(s5.space.projective_dim(), 3);
        assert_eq!(
            make_generic_sundial(2, p, &mut rng),
            Err(Error::DimensionTooSmall(2))
        );
    }

    #[test]
    fn intersection_of_subspaces() {
        let p = Prime::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = LinearSubspace::coordinate_hyperplane(4);
        let t = make_generic_sundial(4, p, &mut rng).unwrap().space;
        let meet = h.intersect(&t, p).unwrap().unwrap();
        assert_eq!(meet.projective_dim(), 2);
        assert!(h.contains_subspace(&meet, p) && t.contains_subspace(&meet, p));
        let l = random_line(3, p, &mut rng);
        let m = random_line(3, p, &mut rng);
        assert_eq!(l.meet(&m, p).unwrap(), None);
    }

    #[test]
    fn rulings() {
        let p = Prime::default();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let u1 = random_p1_point(p, &mut rng);
        let u2 = random_p1_point(p, &mut rng);
        let v1 = random_p1_point(p, &mut rng);
        let a1 = ruling_line(RulingFamily::A, &u1, p).unwrap();
        let a2 = ruling_line(RulingFamily::A, &u2, p).unwrap();
        let b1 = ruling_line(RulingFamily::B, &v1, p).unwrap();
        for t in 0..20 {
            assert!(on_quadric(&a1.point_at(p.element(t), p), p));
            assert!(on_quadric(&b1.point_at(p.element(t), p), p));
        }
        assert_eq!(a1.subspace(p).intersect(&a2.subspace(p), p).unwrap(), None);
        let meet = a1.meet(&b1, p).unwrap().unwrap();
        assert_eq!(meet, segre(&u1, &v1, p));
        assert_eq!(ruling_of(&a1, p), Some((RulingFamily::A, u1.clone())));
        assert_eq!(ruling_of(&b1, p), Some((RulingFamily::B, v1.clone())));
        let q = segre(&u2, &v1, p);
        assert_eq!(segre_coordinates(&q, p), Some((u2, v1)));
    }

    #[test]
    fn fiber_shapes() {
        let p = Prime::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let l1 = random_line(4, p, &mut rng);
        let m = random_line(4, p, &mut rng);
        let special = degeneration_fiber(&l1, &m, Fp::ZERO, p).unwrap();
        assert!(matches!(
            special.components(),
            [
                SchemeComponent::Line(_),
                SchemeComponent::Line(_),
                SchemeComponent::DoublePointRestricted { .. }
            ]
        ));
        let general = degeneration_fiber(&l1, &m, p.element(12345), p).unwrap();
        assert_eq!(general.components().len(), 2);
        let coplanar = Line::through(m.first(), l1.first(), p).unwrap();
        assert!(matches!(
            degeneration_fiber(&coplanar, &m, Fp::ONE, p),
            Err(Error::NotSkew(2))
        ));
    }
}
