//! Residual and trace with respect to a hyperplane.
//!
//! The rules cover exactly the component positions that occur in the
//! hyperplane specializations of the P^n induction; anything else is
//! reported as [`Error::UnrecognizedPosition`].

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Line, LinearSubspace, ProjectivePoint, SundialData};
use crate::gfp::{Fp, Prime};
use crate::scheme::{Scheme, SchemeComponent};

/// A hyperplane `sum c_i x_i = 0`. Points of `H` are written in the
/// intrinsic frame of P^{n-1} by dropping the coordinate `pivot`, the last
/// index with `c_pivot != 0`; for `x_n = 0` this is "drop the last
/// coordinate".
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hyperplane {
    coeffs: Vec<Fp>,
    pivot: usize,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Fp>) -> Result<Self> {
        if coeffs.len() < 3 {
            return Err(Error::InvalidDimension(
                "hyperplanes are supported in P^n for n >= 2".into(),
            ));
        }
        let pivot = coeffs.iter().rposition(|c| !c.is_zero()).ok_or_else(|| {
            Error::DegenerateComponent("hyperplane with zero coefficients".into())
        })?;
        Ok(Hyperplane { coeffs, pivot })
    }

    /// `x_n = 0`.
    pub fn coordinate(n: usize) -> Self {
        let mut coeffs = vec![Fp::ZERO; n + 1];
        coeffs[n] = Fp::ONE;
        Hyperplane::new(coeffs).expect("n >= 2")
    }

    pub fn random<R: Rng + ?Sized>(n: usize, p: Prime, rng: &mut R) -> Self {
        loop {
            let coeffs: Vec<Fp> = (0..=n).map(|_| p.random(rng)).collect();
            if let Ok(h) = Hyperplane::new(coeffs) {
                return h;
            }
        }
    }

    pub fn ambient_n(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Fp] {
        &self.coeffs
    }

    /// Index of the coordinate dropped by the intrinsic frame.
    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn eval(&self, v: &[Fp], p: Prime) -> Fp {
        self.coeffs
            .iter()
            .zip(v)
            .fold(Fp::ZERO, |acc, (&c, &x)| p.add(acc, p.mul(c, x)))
    }

    pub fn contains_point(&self, pt: &ProjectivePoint, p: Prime) -> bool {
        self.eval(pt.coords(), p).is_zero()
    }

    pub fn contains_line(&self, l: &Line, p: Prime) -> bool {
        self.contains_point(l.first(), p) && self.contains_point(l.second(), p)
    }

    pub fn contains_subspace(&self, s: &LinearSubspace, p: Prime) -> bool {
        s.basis().row_iter().all(|r| self.eval(r, p).is_zero())
    }

    /// `H` as a linear subspace of P^n.
    pub fn subspace(&self, p: Prime) -> LinearSubspace {
        let n = self.ambient_n();
        let cp_inv = p.inv(self.coeffs[self.pivot]).expect("pivot is nonzero");
        let rows = (0..=n).filter(|&i| i != self.pivot).map(|i| {
            let mut v = vec![Fp::ZERO; n + 1];
            v[i] = Fp::ONE;
            v[self.pivot] = p.neg(p.mul(self.coeffs[i], cp_inv));
            v
        });
        LinearSubspace::from_vectors(n, rows, p).expect("hyperplane basis")
    }

    fn frame_vector(&self, v: &[Fp]) -> Vec<Fp> {
        v.iter()
            .enumerate()
            .filter(|(i, _)| *i != self.pivot)
            .map(|(_, &x)| x)
            .collect()
    }

    /// Coordinates of a point of `H` in P^{n-1}.
    pub fn to_frame(&self, pt: &ProjectivePoint, p: Prime) -> Result<ProjectivePoint> {
        if !self.contains_point(pt, p) {
            return Err(Error::UnrecognizedPosition(
                "point is not on the hyperplane".into(),
            ));
        }
        ProjectivePoint::new(self.frame_vector(pt.coords()), p)
    }

    pub fn line_to_frame(&self, l: &Line, p: Prime) -> Result<Line> {
        Line::through(
            &self.to_frame(l.first(), p)?,
            &self.to_frame(l.second(), p)?,
            p,
        )
    }

    pub fn subspace_to_frame(&self, s: &LinearSubspace, p: Prime) -> Result<LinearSubspace> {
        if !self.contains_subspace(s, p) {
            return Err(Error::UnrecognizedPosition(
                "subspace is not in the hyperplane".into(),
            ));
        }
        LinearSubspace::from_vectors(
            self.ambient_n() - 1,
            s.basis().row_iter().map(|r| self.frame_vector(r)),
            p,
        )
    }

    /// Lifts a point of P^{n-1} back into `H`.
    pub fn from_frame(&self, y: &ProjectivePoint, p: Prime) -> Result<ProjectivePoint> {
        let n = self.ambient_n();
        if y.ambient_n() + 1 != n {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                found: y.ambient_n(),
            });
        }
        let mut x = Vec::with_capacity(n + 1);
        let mut it = y.coords().iter();
        for i in 0..=n {
            x.push(if i == self.pivot {
                Fp::ZERO
            } else {
                *it.next().unwrap()
            });
        }
        let cp_inv = p.inv(self.coeffs[self.pivot])?;
        let rest = self.eval(&x, p);
        x[self.pivot] = p.neg(p.mul(rest, cp_inv));
        ProjectivePoint::new(x, p)
    }

    /// Intersection point of a line not contained in `H`.
    pub fn meet_line(&self, l: &Line, p: Prime) -> Result<ProjectivePoint> {
        let fa = self.eval(l.first().coords(), p);
        let fb = self.eval(l.second().coords(), p);
        if fa.is_zero() && fb.is_zero() {
            return Err(Error::UnrecognizedPosition(
                "line lies in the hyperplane".into(),
            ));
        }
        // fb * a - fa * b is on H
        let v: Vec<Fp> = l
            .first()
            .coords()
            .iter()
            .zip(l.second().coords())
            .map(|(&a, &b)| p.sub(p.mul(fb, a), p.mul(fa, b)))
            .collect();
        ProjectivePoint::new(v, p)
    }

    pub fn meet_subspace(&self, s: &LinearSubspace, p: Prime) -> Result<Option<LinearSubspace>> {
        self.subspace(p).intersect(s, p)
    }
}

/// Residual and trace pieces contributed by one component.
type Split = (Vec<SchemeComponent>, Vec<SchemeComponent>);

fn unrecognized(what: &str) -> Error {
    Error::UnrecognizedPosition(what.to_string())
}

fn split_component(c: &SchemeComponent, h: &Hyperplane, p: Prime) -> Result<Split> {
    use SchemeComponent as C;
    let pt_frame = |q: &ProjectivePoint| h.to_frame(q, p).map(C::SimplePoint);
    Ok(match c {
        C::SimplePoint(q) => {
            if h.contains_point(q, p) {
                (vec![], vec![pt_frame(q)?])
            } else {
                (vec![c.clone()], vec![])
            }
        }
        C::Line(l) => {
            if h.contains_line(l, p) {
                (vec![], vec![C::Line(h.line_to_frame(l, p)?)])
            } else {
                (vec![c.clone()], vec![pt_frame(&h.meet_line(l, p)?)?])
            }
        }
        C::DoublePointRestricted { point, space } => {
            if !h.contains_point(point, p) {
                (vec![c.clone()], vec![])
            } else if h.contains_subspace(space, p) {
                let space = h.subspace_to_frame(space, p)?;
                (
                    vec![],
                    vec![C::DoublePointRestricted {
                        point: h.to_frame(point, p)?,
                        space,
                    }],
                )
            } else {
                let cut = h
                    .meet_subspace(space, p)?
                    .ok_or_else(|| unrecognized("restricting space misses the hyperplane"))?;
                let dp = C::DoublePointRestricted {
                    point: h.to_frame(point, p)?,
                    space: h.subspace_to_frame(&cut, p)?,
                };
                (vec![C::SimplePoint(point.clone())], vec![dp])
            }
        }
        C::DegenerateConic { l, m, vertex } => {
            match (h.contains_line(l, p), h.contains_line(m, p)) {
                (true, true) => {
                    let conic = C::conic(h.line_to_frame(l, p)?, h.line_to_frame(m, p)?, p)?;
                    (vec![], vec![conic])
                }
                (true, false) => (
                    vec![C::Line(m.clone())],
                    vec![C::Line(h.line_to_frame(l, p)?)],
                ),
                (false, true) => (
                    vec![C::Line(l.clone())],
                    vec![C::Line(h.line_to_frame(m, p)?)],
                ),
                (false, false) => {
                    if h.contains_point(vertex, p) {
                        return Err(unrecognized("conic with only its vertex on the hyperplane"));
                    }
                    (
                        vec![c.clone()],
                        vec![
                            pt_frame(&h.meet_line(l, p)?)?,
                            pt_frame(&h.meet_line(m, p)?)?,
                        ],
                    )
                }
            }
        }
        C::Sundial(sd) => split_sundial(c, sd, h, p)?,
    })
}

fn split_sundial(c: &SchemeComponent, sd: &SundialData, h: &Hyperplane, p: Prime) -> Result<Split> {
    use SchemeComponent as C;
    if h.contains_subspace(&sd.space, p) {
        let moved = SundialData::new(
            h.line_to_frame(&sd.l, p)?,
            h.line_to_frame(&sd.m, p)?,
            h.to_frame(&sd.vertex, p)?,
            h.subspace_to_frame(&sd.space, p)?,
            p,
        )?;
        return Ok((vec![], vec![C::Sundial(moved)]));
    }
    let in_l = h.contains_line(&sd.l, p);
    let in_m = h.contains_line(&sd.m, p);
    match (in_l, in_m) {
        (true, true) => {
            let conic = C::conic(h.line_to_frame(&sd.l, p)?, h.line_to_frame(&sd.m, p)?, p)?;
            Ok((vec![C::SimplePoint(sd.vertex.clone())], vec![conic]))
        }
        (true, false) | (false, true) => {
            let (inside, outside) = if in_l { (&sd.l, &sd.m) } else { (&sd.m, &sd.l) };
            let cut = h
                .meet_subspace(&sd.space, p)?
                .ok_or_else(|| unrecognized("sundial space misses the hyperplane"))?;
            let dp = C::DoublePointRestricted {
                point: h.to_frame(&sd.vertex, p)?,
                space: h.subspace_to_frame(&cut, p)?,
            };
            Ok((
                vec![C::Line(outside.clone())],
                vec![C::Line(h.line_to_frame(inside, p)?), dp],
            ))
        }
        (false, false) => {
            if h.contains_point(&sd.vertex, p) {
                return Err(unrecognized(
                    "sundial with only its vertex on the hyperplane",
                ));
            }
            let a = h.to_frame(&h.meet_line(&sd.l, p)?, p)?;
            let b = h.to_frame(&h.meet_line(&sd.m, p)?, p)?;
            Ok((vec![c.clone()], vec![C::SimplePoint(a), C::SimplePoint(b)]))
        }
    }
}

fn check_ambient(x: &Scheme, h: &Hyperplane) -> Result<()> {
    if x.ambient_n() != h.ambient_n() {
        return Err(Error::DimensionMismatch {
            expected: h.ambient_n(),
            found: x.ambient_n(),
        });
    }
    Ok(())
}

/// `Res_H X`, component by component.
pub fn residual(x: &Scheme, h: &Hyperplane, p: Prime) -> Result<Scheme> {
    check_ambient(x, h)?;
    let mut out = Scheme::new(x.ambient_n());
    for c in x.components() {
        for r in split_component(c, h, p)?.0 {
            out.push(r)?;
        }
    }
    Ok(out)
}

/// `Tr_H X` in the intrinsic coordinates of `H`, a scheme in P^{n-1}.
pub fn trace(x: &Scheme, h: &Hyperplane, p: Prime) -> Result<Scheme> {
    check_ambient(x, h)?;
    let mut out = Scheme::new(x.ambient_n() - 1);
    for c in x.components() {
        for t in split_component(c, h, p)?.1 {
            out.push(t)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{
        make_generic_sundial, random_line, random_line_through, random_point, sample_point,
        sample_point_off,
    };
    use crate::scheme::ideal_dimension;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn frame_roundtrip() {
        let p = Prime::default();
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        for _ in 0..20 {
            let h = Hyperplane::random(4, p, &mut rng);
            let q = sample_point(&h.subspace(p), p, &mut rng);
            assert!(h.contains_point(&q, p));
            let y = h.to_frame(&q, p).unwrap();
            assert_eq!(y.ambient_n(), 3);
            assert_eq!(h.from_frame(&y, p).unwrap(), q);
        }
        let h = Hyperplane::coordinate(3);
        let q = ProjectivePoint::from_values(&[1, 2, 3, 0], p).unwrap();
        assert_eq!(h.to_frame(&q, p).unwrap().values(), vec![1, 2, 3]);
    }

    #[test]
    fn transverse_line() {
        let p = Prime::default();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let h = Hyperplane::random(3, p, &mut rng);
        let l = random_line(3, p, &mut rng);
        let x = Scheme::from_components(3, [SchemeComponent::Line(l.clone())]).unwrap();
        let res = residual(&x, &h, p).unwrap();
        assert_eq!(res.components(), &[SchemeComponent::Line(l)]);
        let tr = trace(&x, &h, p).unwrap();
        assert_eq!(tr.ambient_n(), 2);
        assert!(matches!(tr.components(), [SchemeComponent::SimplePoint(_)]));
    }

    fn conic_sundial(h: &Hyperplane, p: Prime, rng: &mut ChaCha8Rng) -> SundialData {
        let hs = h.subspace(p);
        let n = h.ambient_n();
        loop {
            let v = sample_point(&hs, p, rng);
            let l = random_line_through(&v, &hs, p, rng);
            let m = random_line_through(&v, &hs, p, rng);
            let extra = sample_point_off(&LinearSubspace::whole(n), &hs, p, rng);
            if let Ok(s) = SundialData::from_lines(l, m, &extra, p) {
                return s;
            }
        }
    }

    #[test]
    fn sundial_positions() {
        let p = Prime::default();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let h = Hyperplane::coordinate(4);
        let hs = h.subspace(p);

        let both = conic_sundial(&h, p, &mut rng);
        let x = Scheme::from_components(4, [SchemeComponent::Sundial(both.clone())]).unwrap();
        assert_eq!(
            residual(&x, &h, p).unwrap().components(),
            &[SchemeComponent::SimplePoint(both.vertex.clone())]
        );
        assert!(matches!(
            trace(&x, &h, p).unwrap().components(),
            [SchemeComponent::DegenerateConic { .. }]
        ));

        // one line in H
        let v = sample_point(&hs, p, &mut rng);
        let l = random_line_through(&v, &hs, p, &mut rng);
        let out = sample_point_off(&LinearSubspace::whole(4), &hs, p, &mut rng);
        let m = Line::through(&v, &out, p).unwrap();
        let extra = random_point(4, p, &mut rng);
        let half = SundialData::from_lines(l, m.clone(), &extra, p).unwrap();
        let x = Scheme::from_components(4, [SchemeComponent::Sundial(half)]).unwrap();
        assert_eq!(
            residual(&x, &h, p).unwrap().components(),
            &[SchemeComponent::Line(m)]
        );
        let tr = trace(&x, &h, p).unwrap();
        match tr.components() {
            [SchemeComponent::Line(_), SchemeComponent::DoublePointRestricted { space, .. }] => {
                assert_eq!(space.projective_dim(), 2)
            }
            other => panic!("unexpected trace {other:?}"),
        }

        // fully inside
        let inside = crate::geometry::generic_sundial_in(&hs, p, &mut rng).unwrap();
        let x = Scheme::from_components(4, [SchemeComponent::Sundial(inside)]).unwrap();
        assert!(residual(&x, &h, p).unwrap().is_empty());
        assert!(matches!(
            trace(&x, &h, p).unwrap().components(),
            [SchemeComponent::Sundial(_)]
        ));

        // generic
        let g = make_generic_sundial(4, p, &mut rng).unwrap();
        let x = Scheme::from_components(4, [SchemeComponent::Sundial(g)]).unwrap();
        assert_eq!(residual(&x, &h, p).unwrap(), x);
        assert_eq!(trace(&x, &h, p).unwrap().count("point"), 2);
    }

    #[test]
    fn vertex_only_on_hyperplane_is_rejected() {
        let p = Prime::default();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let h = Hyperplane::coordinate(4);
        let hs = h.subspace(p);
        let whole = LinearSubspace::whole(4);
        let v = sample_point(&hs, p, &mut rng);
        let a = sample_point_off(&whole, &hs, p, &mut rng);
        let b = sample_point_off(&whole, &hs, p, &mut rng);
        let l = Line::through(&v, &a, p).unwrap();
        let m = Line::through(&v, &b, p).unwrap();
        let extra = random_point(4, p, &mut rng);
        let s = SundialData::from_lines(l, m, &extra, p).unwrap();
        let x = Scheme::from_components(4, [SchemeComponent::Sundial(s)]).unwrap();
        assert!(matches!(
            residual(&x, &h, p),
            Err(Error::UnrecognizedPosition(_))
        ));
    }

    #[test]
    fn condition_mass_is_preserved() {
        // HF(X, d) = HF(Res, d - 1) + HF(Tr, d) for each recognized position
        let p = Prime::default();
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let h = Hyperplane::coordinate(4);
        let hs = h.subspace(p);
        let d = 4;
        let hf = |x: &Scheme, d: u32| crate::scheme::hilbert_function(x, d, p).unwrap();
        let cases: Vec<SchemeComponent> = vec![
            SchemeComponent::Line(random_line(4, p, &mut rng)),
            SchemeComponent::Line(crate::geometry::random_line_in(&hs, p, &mut rng)),
            SchemeComponent::SimplePoint(sample_point(&hs, p, &mut rng)),
            SchemeComponent::Sundial(conic_sundial(&h, p, &mut rng)),
            SchemeComponent::Sundial(make_generic_sundial(4, p, &mut rng).unwrap()),
            SchemeComponent::Sundial(
                crate::geometry::generic_sundial_in(&hs, p, &mut rng).unwrap(),
            ),
        ];
        for c in cases {
            let x = Scheme::from_components(4, [c]).unwrap();
            let res = residual(&x, &h, p).unwrap();
            let tr = trace(&x, &h, p).unwrap();
            assert_eq!(
                hf(&x, d),
                hf(&res, d - 1) + hf(&tr, d),
                "{:?}",
                x.components()[0].kind()
            );
        }
        let line = Scheme::from_components(4, [SchemeComponent::Line(random_line(4, p, &mut rng))])
            .unwrap();
        assert_eq!(ideal_dimension(&line, d, p).unwrap(), 70 - 5);
    }
}
