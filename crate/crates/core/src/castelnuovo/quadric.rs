//! Traces on the fixed quadric `Q: x_0 x_3 - x_1 x_2 = 0` of P^3 and
//! bigraded linear systems on `Q = P^1 x P^1`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    on_quadric, quadric_form, random_p1_point, random_quadric_point, ruling_line, ruling_of, segre,
    segre_coordinates, Line, LinearSubspace, ProjectivePoint, RulingFamily, SundialData,
};
use crate::gfp::{Echelon, Fp, Prime};
use crate::scheme::{Scheme, SchemeComponent};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BidegreeComponent {
    SimplePointP1P1 {
        u: ProjectivePoint,
        v: ProjectivePoint,
    },
    DoublePointP1P1 {
        u: ProjectivePoint,
        v: ProjectivePoint,
    },
    /// `{u} x P^1`.
    RulingLineA { u: ProjectivePoint },
    /// `P^1 x {v}`.
    RulingLineB { v: ProjectivePoint },
}

impl BidegreeComponent {
    pub fn kind(&self) -> &'static str {
        match self {
            BidegreeComponent::SimplePointP1P1 { .. } => "point",
            BidegreeComponent::DoublePointP1P1 { .. } => "double_point",
            BidegreeComponent::RulingLineA { .. } => "ruling_a",
            BidegreeComponent::RulingLineB { .. } => "ruling_b",
        }
    }
}

/// Forms of bidegree `(a, b)` on P^1 x P^1 through a list of components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BidegreeSystem {
    pub a: u32,
    pub b: u32,
    pub components: Vec<BidegreeComponent>,
}

impl BidegreeSystem {
    pub fn new(a: u32, b: u32) -> Self {
        BidegreeSystem {
            a,
            b,
            components: Vec::new(),
        }
    }

    pub fn with_components(a: u32, b: u32, components: Vec<BidegreeComponent>) -> Result<Self> {
        for c in &components {
            check_component(c)?;
        }
        Ok(BidegreeSystem { a, b, components })
    }

    pub fn push(&mut self, c: BidegreeComponent) -> Result<()> {
        check_component(&c)?;
        self.components.push(c);
        Ok(())
    }

    pub fn count(&self, kind: &str) -> usize {
        self.components.iter().filter(|c| c.kind() == kind).count()
    }

    pub fn columns(&self) -> usize {
        (self.a as usize + 1) * (self.b as usize + 1)
    }

    /// The same components in another bidegree.
    pub fn in_bidegree(&self, a: u32, b: u32) -> Self {
        BidegreeSystem {
            a,
            b,
            components: self.components.clone(),
        }
    }
}

fn check_p1(x: &ProjectivePoint) -> Result<()> {
    if x.ambient_n() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: x.ambient_n(),
        });
    }
    Ok(())
}

fn check_component(c: &BidegreeComponent) -> Result<()> {
    match c {
        BidegreeComponent::SimplePointP1P1 { u, v }
        | BidegreeComponent::DoublePointP1P1 { u, v } => {
            check_p1(u)?;
            check_p1(v)
        }
        BidegreeComponent::RulingLineA { u } => check_p1(u),
        BidegreeComponent::RulingLineB { v } => check_p1(v),
    }
}

/// Values of `x0^(k-i) x1^i` for `i = 0..=k`.
fn binary_powers(x: &[Fp], k: u32, p: Prime) -> Vec<Fp> {
    let k = k as usize;
    let mut lo = vec![Fp::ONE; k + 1];
    let mut hi = vec![Fp::ONE; k + 1];
    for i in 1..=k {
        lo[i] = p.mul(lo[i - 1], x[0]);
        hi[i] = p.mul(hi[i - 1], x[1]);
    }
    (0..=k).map(|i| p.mul(lo[k - i], hi[i])).collect()
}

/// Derivative of `x0^(k-i) x1^i` along `dir`.
fn binary_derivatives(x: &[Fp], dir: &[Fp], k: u32, p: Prime) -> Vec<Fp> {
    let ku = k as usize;
    let low = if k == 0 {
        vec![]
    } else {
        binary_powers(x, k - 1, p)
    };
    (0..=ku)
        .map(|i| {
            let mut total = Fp::ZERO;
            if i < ku {
                // d/dx0 contributes (k - i) x0^(k-1-i) x1^i
                let c = p.mul(p.element((ku - i) as u64), low[i]);
                total = p.add(total, p.mul(dir[0], c));
            }
            if i > 0 {
                let c = p.mul(p.element(i as u64), low[i - 1]);
                total = p.add(total, p.mul(dir[1], c));
            }
            total
        })
        .collect()
}

fn outer(left: &[Fp], right: &[Fp], p: Prime) -> Vec<Fp> {
    left.iter()
        .flat_map(|&x| right.iter().map(move |&y| p.mul(x, y)))
        .collect()
}

/// A direction in `k^2` not proportional to `x`.
fn transverse(x: &[Fp]) -> [Fp; 2] {
    if x[1].is_zero() {
        [Fp::ZERO, Fp::ONE]
    } else {
        [Fp::ONE, Fp::ZERO]
    }
}

/// Condition rows of one component; columns indexed by `i (b + 1) + j`
/// for the monomial `u0^(a-i) u1^i v0^(b-j) v1^j`.
pub fn bidegree_rows(c: &BidegreeComponent, a: u32, b: u32, p: Prime) -> Vec<Vec<Fp>> {
    match c {
        BidegreeComponent::SimplePointP1P1 { u, v } => {
            vec![outer(
                &binary_powers(u.coords(), a, p),
                &binary_powers(v.coords(), b, p),
                p,
            )]
        }
        BidegreeComponent::DoublePointP1P1 { u, v } => {
            let (uc, vc) = (u.coords(), v.coords());
            let pu = binary_powers(uc, a, p);
            let pv = binary_powers(vc, b, p);
            let du = binary_derivatives(uc, &transverse(uc), a, p);
            let dv = binary_derivatives(vc, &transverse(vc), b, p);
            vec![outer(&pu, &pv, p), outer(&du, &pv, p), outer(&pu, &dv, p)]
        }
        BidegreeComponent::RulingLineA { u } => {
            let pu = binary_powers(u.coords(), a, p);
            (0..=b as u64)
                .map(|j| outer(&pu, &binary_powers(&[Fp::ONE, p.element(j)], b, p), p))
                .collect()
        }
        BidegreeComponent::RulingLineB { v } => {
            let pv = binary_powers(v.coords(), b, p);
            (0..=a as u64)
                .map(|j| outer(&binary_powers(&[Fp::ONE, p.element(j)], a, p), &pv, p))
                .collect()
        }
    }
}

/// Dimension of the forms of bidegree `(a, b)` vanishing on `s`.
pub fn bidegree_dimension(s: &BidegreeSystem, p: Prime) -> Result<usize> {
    p.check_degree(s.a.max(s.b))?;
    let cols = s.columns();
    let mut ech = Echelon::new(cols, p);
    for c in &s.components {
        check_component(c)?;
        for row in bidegree_rows(c, s.a, s.b, p) {
            ech.insert(&row);
            if ech.is_full() {
                return Ok(0);
            }
        }
    }
    Ok(cols - ech.rank())
}

/// How a line of P^3 meets `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineOnQuadric {
    Ruling(RulingFamily, ProjectivePoint),
    Secant(ProjectivePoint, ProjectivePoint),
    Tangent(ProjectivePoint),
    Irrational,
}

fn combine(a: &[Fp], sa: Fp, b: &[Fp], sb: Fp, p: Prime) -> Result<ProjectivePoint> {
    ProjectivePoint::new(
        a.iter()
            .zip(b)
            .map(|(&x, &y)| p.add(p.mul(sa, x), p.mul(sb, y)))
            .collect(),
        p,
    )
}

fn require_odd(p: Prime) -> Result<()> {
    if p.value() == 2 {
        return Err(Error::InvalidDimension(
            "quadric computations need an odd prime".into(),
        ));
    }
    Ok(())
}

pub fn classify_line(l: &Line, p: Prime) -> Result<LineOnQuadric> {
    if l.ambient_n() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: l.ambient_n(),
        });
    }
    require_odd(p)?;
    if let Some((fam, param)) = ruling_of(l, p) {
        return Ok(LineOnQuadric::Ruling(fam, param));
    }
    let a = l.first().coords();
    let b = l.second().coords();
    let qa = quadric_form(a, p);
    let qb = quadric_form(b, p);
    let sum: Vec<Fp> = a.iter().zip(b).map(|(&x, &y)| p.add(x, y)).collect();
    let bil = p.sub(p.sub(quadric_form(&sum, p), qa), qb);
    // q(s a + t b) = qa s^2 + bil s t + qb t^2
    if qb.is_zero() {
        if bil.is_zero() {
            return Ok(LineOnQuadric::Tangent(l.second().clone()));
        }
        let other = combine(a, bil, b, p.neg(qa), p)?;
        return Ok(LineOnQuadric::Secant(l.second().clone(), other));
    }
    let disc = p.sub(p.mul(bil, bil), p.mul(p.element(4), p.mul(qa, qb)));
    let Some(root) = p.sqrt(disc) else {
        return Ok(LineOnQuadric::Irrational);
    };
    let denom = p.inv(p.mul(p.element(2), qb))?;
    let t1 = p.mul(p.sub(root, bil), denom);
    let t2 = p.mul(p.sub(p.neg(root), bil), denom);
    let x1 = combine(a, Fp::ONE, b, t1, p)?;
    if disc.is_zero() {
        return Ok(LineOnQuadric::Tangent(x1));
    }
    Ok(LineOnQuadric::Secant(x1, combine(a, Fp::ONE, b, t2, p)?))
}

fn uv(pt: &ProjectivePoint, p: Prime) -> Result<(ProjectivePoint, ProjectivePoint)> {
    segre_coordinates(pt, p)
        .ok_or_else(|| Error::UnrecognizedPosition("point is not on the quadric".into()))
}

fn simple(pt: &ProjectivePoint, p: Prime) -> Result<BidegreeComponent> {
    let (u, v) = uv(pt, p)?;
    Ok(BidegreeComponent::SimplePointP1P1 { u, v })
}

fn double(pt: &ProjectivePoint, p: Prime) -> Result<BidegreeComponent> {
    let (u, v) = uv(pt, p)?;
    Ok(BidegreeComponent::DoublePointP1P1 { u, v })
}

fn ruling(fam: RulingFamily, param: ProjectivePoint) -> BidegreeComponent {
    match fam {
        RulingFamily::A => BidegreeComponent::RulingLineA { u: param },
        RulingFamily::B => BidegreeComponent::RulingLineB { v: param },
    }
}

fn unrecognized(what: &str) -> Error {
    Error::UnrecognizedPosition(what.to_string())
}

fn secant(l: &Line, p: Prime) -> Result<(ProjectivePoint, ProjectivePoint)> {
    match classify_line(l, p)? {
        LineOnQuadric::Secant(x, y) => Ok((x, y)),
        LineOnQuadric::Ruling(..) => Err(unrecognized("line lies on the quadric")),
        LineOnQuadric::Tangent(_) => Err(unrecognized("line is tangent to the quadric")),
        LineOnQuadric::Irrational => Err(Error::IrrationalIntersection),
    }
}

/// The point of `l` on `Q` other than `known`, for a secant through `known`.
fn other_point(l: &Line, known: &ProjectivePoint, p: Prime) -> Result<ProjectivePoint> {
    let (x, y) = secant(l, p)?;
    if &x == known {
        Ok(y)
    } else if &y == known {
        Ok(x)
    } else {
        Err(unrecognized(
            "line does not pass through the expected point of the quadric",
        ))
    }
}

type Split = (Vec<SchemeComponent>, Vec<BidegreeComponent>);

fn split_lines_with_vertex(
    l: &Line,
    m: &Line,
    vertex: &ProjectivePoint,
    full: &SchemeComponent,
    p: Prime,
) -> Result<Split> {
    let cl = classify_line(l, p)?;
    let cm = classify_line(m, p)?;
    let is_sundial = matches!(full, SchemeComponent::Sundial(_));
    let with_ruling = |on: &LineOnQuadric, off: &Line| -> Result<Split> {
        let LineOnQuadric::Ruling(f, u) = on else {
            unreachable!()
        };
        let q = other_point(off, vertex, p)?;
        let mut tr = vec![ruling(*f, u.clone())];
        if is_sundial {
            tr.push(double(vertex, p)?);
        }
        tr.push(simple(&q, p)?);
        Ok((vec![SchemeComponent::Line(off.clone())], tr))
    };
    let l_on = matches!(cl, LineOnQuadric::Ruling(..));
    let m_on = matches!(cm, LineOnQuadric::Ruling(..));
    match (l_on, m_on) {
        (true, true) => Err(unrecognized("both lines lie on the quadric")),
        (true, false) => with_ruling(&cl, m),
        (false, true) => with_ruling(&cm, l),
        (false, false) if on_quadric(vertex, p) => {
            if !is_sundial {
                return Err(unrecognized("conic with only its vertex on the quadric"));
            }
            let q1 = other_point(l, vertex, p)?;
            let q2 = other_point(m, vertex, p)?;
            let conic = SchemeComponent::conic(l.clone(), m.clone(), p)?;
            Ok((
                vec![conic],
                vec![double(vertex, p)?, simple(&q1, p)?, simple(&q2, p)?],
            ))
        }
        (false, false) => {
            let (a1, a2) = secant(l, p)?;
            let (b1, b2) = secant(m, p)?;
            Ok((
                vec![full.clone()],
                vec![
                    simple(&a1, p)?,
                    simple(&a2, p)?,
                    simple(&b1, p)?,
                    simple(&b2, p)?,
                ],
            ))
        }
    }
}

fn split_component(c: &SchemeComponent, p: Prime) -> Result<Split> {
    use SchemeComponent as C;
    match c {
        C::SimplePoint(x) => {
            if on_quadric(x, p) {
                Ok((vec![], vec![simple(x, p)?]))
            } else {
                Ok((vec![c.clone()], vec![]))
            }
        }
        C::Line(l) => match classify_line(l, p)? {
            LineOnQuadric::Ruling(f, u) => Ok((vec![], vec![ruling(f, u)])),
            LineOnQuadric::Secant(x, y) => {
                Ok((vec![c.clone()], vec![simple(&x, p)?, simple(&y, p)?]))
            }
            LineOnQuadric::Tangent(_) => Err(unrecognized("line is tangent to the quadric")),
            LineOnQuadric::Irrational => Err(Error::IrrationalIntersection),
        },
        C::DoublePointRestricted { point, space } => {
            if space.projective_dim() != 3 {
                return Err(unrecognized("restricted double point on the quadric"));
            }
            if on_quadric(point, p) {
                Ok((vec![C::SimplePoint(point.clone())], vec![double(point, p)?]))
            } else {
                Ok((vec![c.clone()], vec![]))
            }
        }
        C::DegenerateConic { l, m, vertex } => split_lines_with_vertex(l, m, vertex, c, p),
        C::Sundial(s) => split_lines_with_vertex(&s.l, &s.m, &s.vertex, c, p),
    }
}

fn check_p3(x: &Scheme) -> Result<()> {
    if x.ambient_n() != 3 {
        return Err(Error::InvalidDimension(format!(
            "the fixed quadric lives in P^3, scheme is in P^{}",
            x.ambient_n()
        )));
    }
    Ok(())
}

/// `Res_Q X`.
pub fn residual_quadric(x: &Scheme, p: Prime) -> Result<Scheme> {
    check_p3(x)?;
    let mut out = Scheme::new(3);
    for c in x.components() {
        for r in split_component(c, p)?.0 {
            out.push(r)?;
        }
    }
    Ok(out)
}

/// `Tr_Q X` as a system of bidegree `(d, d)`.
pub fn trace_quadric(x: &Scheme, d: u32, p: Prime) -> Result<BidegreeSystem> {
    check_p3(x)?;
    let mut out = BidegreeSystem::new(d, d);
    for c in x.components() {
        out.components.extend(split_component(c, p)?.1);
    }
    Ok(out)
}

// Constructions whose intersections with Q are defined over the prime field.

fn share_ruling(x: &ProjectivePoint, y: &ProjectivePoint, p: Prime) -> bool {
    match (segre_coordinates(x, p), segre_coordinates(y, p)) {
        (Some((ux, vx)), Some((uy, vy))) => ux == uy || vx == vy,
        _ => true,
    }
}

/// Random point of Q sharing no ruling with any of `avoid`.
pub fn quadric_point_avoiding<R: Rng + ?Sized>(
    avoid: &[&ProjectivePoint],
    p: Prime,
    rng: &mut R,
) -> ProjectivePoint {
    loop {
        let q = random_quadric_point(p, rng);
        if avoid.iter().all(|a| !share_ruling(a, &q, p)) {
            return q;
        }
    }
}

pub fn random_off_quadric<R: Rng + ?Sized>(p: Prime, rng: &mut R) -> ProjectivePoint {
    loop {
        let x = crate::geometry::random_point(3, p, rng);
        if !on_quadric(&x, p) {
            return x;
        }
    }
}

/// Line through two points of Q in general position.
pub fn random_secant_line<R: Rng + ?Sized>(p: Prime, rng: &mut R) -> Line {
    let x = random_quadric_point(p, rng);
    let y = quadric_point_avoiding(&[&x], p, rng);
    Line::through(&x, &y, p).expect("distinct points")
}

pub fn random_ruling<R: Rng + ?Sized>(family: RulingFamily, p: Prime, rng: &mut R) -> Line {
    ruling_line(family, &random_p1_point(p, rng), p).expect("P^1 parameter")
}

fn whole_sundial(l: Line, m: Line, vertex: ProjectivePoint, p: Prime) -> Result<SundialData> {
    SundialData::new(l, m, vertex, LinearSubspace::whole(3), p)
}

/// Sundial with vertex off Q whose lines are secants.
pub fn generic_quadric_sundial<R: Rng + ?Sized>(p: Prime, rng: &mut R) -> Result<SundialData> {
    loop {
        let v = random_off_quadric(p, rng);
        let q1 = random_quadric_point(p, rng);
        let q2 = random_quadric_point(p, rng);
        let (Ok(l), Ok(m)) = (Line::through(&v, &q1, p), Line::through(&v, &q2, p)) else {
            continue;
        };
        if l == m {
            continue;
        }
        if !matches!(classify_line(&l, p)?, LineOnQuadric::Secant(..))
            || !matches!(classify_line(&m, p)?, LineOnQuadric::Secant(..))
        {
            continue;
        }
        return whole_sundial(l, m, v, p);
    }
}

/// `L` a ruling of `family`, vertex `R` on `L`, `M` a secant through `R`.
fn ruled_pair<R: Rng + ?Sized>(
    family: RulingFamily,
    p: Prime,
    rng: &mut R,
) -> (Line, Line, ProjectivePoint) {
    let u = random_p1_point(p, rng);
    let w = random_p1_point(p, rng);
    let l = ruling_line(family, &u, p).expect("P^1 parameter");
    let v = match family {
        RulingFamily::A => segre(&u, &w, p),
        RulingFamily::B => segre(&w, &u, p),
    };
    let q = quadric_point_avoiding(&[&v], p, rng);
    let m = Line::through(&v, &q, p).expect("distinct points");
    (l, m, v)
}

/// Sundial whose first line is a ruling of `family`.
pub fn ruled_sundial<R: Rng + ?Sized>(
    family: RulingFamily,
    p: Prime,
    rng: &mut R,
) -> Result<SundialData> {
    let (l, m, v) = ruled_pair(family, p, rng);
    whole_sundial(l, m, v, p)
}

/// Degenerate conic whose first line is a ruling of `family`.
pub fn ruled_conic<R: Rng + ?Sized>(
    family: RulingFamily,
    p: Prime,
    rng: &mut R,
) -> Result<SchemeComponent> {
    let (l, m, _) = ruled_pair(family, p, rng);
    SchemeComponent::conic(l, m, p)
}

/// Sundial with vertex on Q and both lines secant.
pub fn vertex_on_quadric_sundial<R: Rng + ?Sized>(p: Prime, rng: &mut R) -> Result<SundialData> {
    let v = random_quadric_point(p, rng);
    let q1 = quadric_point_avoiding(&[&v], p, rng);
    let q2 = quadric_point_avoiding(&[&v, &q1], p, rng);
    let l = Line::through(&v, &q1, p)?;
    let m = Line::through(&v, &q2, p)?;
    whole_sundial(l, m, v, p)
}

/// Random system of `points` simple and `doubles` double points.
pub fn random_points_system<R: Rng + ?Sized>(
    a: u32,
    b: u32,
    points: usize,
    doubles: usize,
    p: Prime,
    rng: &mut R,
) -> BidegreeSystem {
    let mut s = BidegreeSystem::new(a, b);
    for _ in 0..doubles {
        s.components.push(BidegreeComponent::DoublePointP1P1 {
            u: random_p1_point(p, rng),
            v: random_p1_point(p, rng),
        });
    }
    for _ in 0..points {
        s.components.push(BidegreeComponent::SimplePointP1P1 {
            u: random_p1_point(p, rng),
            v: random_p1_point(p, rng),
        });
    }
    s
}
