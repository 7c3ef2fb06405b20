//! Replays the quadric specializations of the P^3 induction.
//!
//! Case 1 is `d = 3h`, case 2 is `d = 3h + 2`, case 3 is `d = 3h + 1`.

use rand::Rng;

use super::quadric::{
    generic_quadric_sundial, random_points_system, random_ruling, random_secant_line,
    residual_quadric, ruled_conic, ruled_sundial, trace_quadric, vertex_on_quadric_sundial,
    BidegreeComponent, BidegreeSystem,
};
use super::{to_i64, ClaimSet, Hypersurface, ReplayReport};
use crate::error::{Error, Result};
use crate::expectations::{binomial, build_w_t, CountingData};
use crate::geometry::{random_quadric_point, RulingFamily};
use crate::gfp::Prime;
use crate::scheme::{Scheme, SchemeComponent};

const FRAME: &str = "Q = {x0*x3 - x1*x2 = 0}, (u, v) -> (u0v0 : u0v1 : u1v0 : u1v1); A-lines fix u";

fn push_n<R, F>(x: &mut Scheme, count: u64, rng: &mut R, mut make: F) -> Result<()>
where
    R: Rng + ?Sized,
    F: FnMut(&mut R) -> Result<SchemeComponent>,
{
    for _ in 0..count {
        x.push(make(rng)?)?;
    }
    Ok(())
}

fn sundial<R: Rng + ?Sized>(
    f: fn(Prime, &mut R) -> Result<crate::geometry::SundialData>,
    p: Prime,
) -> impl Fn(&mut R) -> Result<SchemeComponent> {
    move |rng| f(p, rng).map(SchemeComponent::Sundial)
}

fn ruled<R: Rng + ?Sized>(p: Prime) -> impl Fn(&mut R) -> Result<SchemeComponent> {
    move |rng| ruled_sundial(RulingFamily::A, p, rng).map(SchemeComponent::Sundial)
}

/// Number of lines of a scheme, counting a sundial or conic as two.
fn line_count(x: &Scheme) -> u64 {
    (x.count("line") + 2 * x.count("sundial") + 2 * x.count("conic")) as u64
}

/// Points of a trace in the proof's count: simple points plus double
/// points lying on one of the ruling lines (which become simple after the
/// lines are removed). Returns `(points, free double points)`.
fn trace_point_counts(tr: &BidegreeSystem) -> (u64, u64) {
    let on_ruling = |u: &crate::geometry::ProjectivePoint, v: &crate::geometry::ProjectivePoint| {
        tr.components.iter().any(|c| match c {
            BidegreeComponent::RulingLineA { u: a } => a == u,
            BidegreeComponent::RulingLineB { v: b } => b == v,
            _ => false,
        })
    };
    let mut points = 0;
    let mut free = 0;
    for c in &tr.components {
        match c {
            BidegreeComponent::SimplePointP1P1 { .. } => points += 1,
            BidegreeComponent::DoublePointP1P1 { u, v } if on_ruling(u, v) => points += 1,
            BidegreeComponent::DoublePointP1P1 { .. } => free += 1,
            _ => {}
        }
    }
    (points, free)
}

fn sub(a: u64, b: u64, what: &str) -> Result<u64> {
    a.checked_sub(b)
        .ok_or_else(|| Error::InvalidDimension(format!("not enough components for {what}")))
}

fn i(v: u64) -> i64 {
    to_i64(v)
}

/// Residual and trace claims shared by every quadric step.
#[allow(clippy::too_many_arguments)]
fn quadric_step(
    claims: &mut ClaimSet,
    name: &str,
    x: &Scheme,
    d: u32,
    residual_lines: u64,
    rulings: u64,
    points: u64,
    free_doubles: u64,
    p: Prime,
) -> Result<(Scheme, BidegreeSystem)> {
    let res = residual_quadric(x, p)?;
    let tr = trace_quadric(x, d, p)?;
    claims.value(
        format!("Res_Q {name}: lines"),
        i(residual_lines),
        i(line_count(&res)),
    );
    claims.value(
        format!("Tr_Q {name}: ruling lines"),
        i(rulings),
        to_i64(tr.count("ruling_a") + tr.count("ruling_b")),
    );
    let (pts, free) = trace_point_counts(&tr);
    claims.value(format!("Tr_Q {name}: points"), i(points), i(pts));
    claims.value(
        format!("Tr_Q {name}: double points"),
        i(free_doubles),
        i(free),
    );
    claims.ideal(
        format!("dim (I_Res_Q {name})_{}", d - 2),
        0,
        res.clone(),
        d - 2,
    );
    claims.bidegree(format!("dim (I_Tr_Q {name})_{d}"), 0, tr.clone());
    claims.inequality(
        format!("Castelnuovo for {name} and Q"),
        x.clone(),
        Hypersurface::FixedQuadric,
        d,
    );
    Ok((res, tr))
}

/// Bidegree model `(a, b)` through `points` generic points and `doubles`
/// generic double points, claimed to have dimension `max(expected, 0)`.
#[allow(clippy::too_many_arguments)]
fn model_claim<R: Rng + ?Sized>(
    claims: &mut ClaimSet,
    name: &str,
    a: u32,
    b: u32,
    points: u64,
    doubles: u64,
    p: Prime,
    rng: &mut R,
) {
    let expected = (a as i64 + 1) * (b as i64 + 1) - i(points) - 3 * i(doubles);
    let sys = random_points_system(a, b, points as usize, doubles as usize, p, rng);
    claims.bidegree(
        format!("model ({a}, {b}) for Tr_Q {name}"),
        expected.max(0),
        sys,
    );
}

/// Recomputes every dimension claimed in one case of the P^3 argument.
pub fn replay_p3_case<R: Rng + ?Sized>(
    h: u32,
    case_id: u8,
    p: Prime,
    rng: &mut R,
) -> Result<ReplayReport> {
    let d = match case_id {
        1 => 3 * h,
        2 => 3 * h + 2,
        3 => 3 * h + 1,
        _ => {
            return Err(Error::InvalidDimension(format!(
                "case must be 1, 2 or 3, got {case_id}"
            )))
        }
    };
    let min_h = if case_id == 3 { 2 } else { 1 };
    if h < min_h {
        return Err(Error::OutOfStatedRange {
            n: 3,
            d: d as usize,
            reason: format!("case {case_id} needs h >= {min_h}"),
        });
    }
    p.check_degree(d)?;
    let counts = CountingData::new(3, d)?;
    let mut claims = ClaimSet::new(p);
    let hh = h as u64;
    match case_id {
        1 => case_one(&mut claims, hh, &counts, p, rng)?,
        2 => case_two(&mut claims, hh, &counts, p, rng)?,
        _ => case_three(&mut claims, hh, &counts, p, rng)?,
    }
    let (claims, inequalities) = claims.evaluate()?;
    Ok(ReplayReport {
        kind: "p3".into(),
        n: 3,
        d,
        h: Some(h),
        case: case_id.to_string(),
        counts,
        frame: FRAME.into(),
        claims,
        inequalities,
    })
}

fn generic_w_t<R: Rng + ?Sized>(
    claims: &mut ClaimSet,
    d: u32,
    p: Prime,
    rng: &mut R,
) -> Result<()> {
    let crit = build_w_t(3, d, p, rng)?;
    claims.ideal(format!("dim (I_W)_{d}"), 0, crit.w, d);
    if let Some(t) = crit.t {
        claims.ideal(format!("dim (I_T)_{d}"), 0, t, d);
    }
    Ok(())
}

fn case_one<R: Rng + ?Sized>(
    claims: &mut ClaimSet,
    h: u64,
    c: &CountingData,
    p: Prime,
    rng: &mut R,
) -> Result<()> {
    let d = c.d;
    let (t, s) = (c.t, c.s);
    claims.value("t = (h+1)(3h+2)/2", i((h + 1) * (3 * h + 2) / 2), i(t));
    claims.value("r = 0", 0, i(c.r));
    let k = 2 * h + 1;
    let ruled_count = s.min(k);
    // for h = 1 only two sundials exist; the line M supplies the third ruling
    let m_on_ruling = ruled_count < k;
    if m_on_ruling && !(c.t_odd() && ruled_count + 1 == k) {
        return Err(Error::InvalidDimension(
            "too few components to place on the rulings".into(),
        ));
    }
    let mut wt = Scheme::new(3);
    push_n(&mut wt, ruled_count, rng, ruled(p))?;
    push_n(
        &mut wt,
        s - ruled_count,
        rng,
        sundial(generic_quadric_sundial, p),
    )?;
    if c.t_odd() {
        let m = if m_on_ruling {
            random_ruling(RulingFamily::A, p, rng)
        } else {
            random_secant_line(p, rng)
        };
        wt.push(SchemeComponent::Line(m))?;
    }
    let res_lines = sub(2 * h + 1 + t, 4 * h + 2, "case 1")?;
    let formula = i(binomial(3 * h + 1, 3)?) - i(3 * h - 1) * i(res_lines);
    claims.value("C(3h+1, 3) - (3h-1)(2h+1+t-4h-2)", 0, formula);
    quadric_step(claims, "W~", &wt, d, res_lines, k, 3 * h * h + h, 0, p)?;
    claims.value("p = 2(2h+1+t-4h-2)", i(3 * h * h + h), i(2 * res_lines));
    model_claim(
        claims,
        "W~",
        (h - 1) as u32,
        3 * h as u32,
        3 * h * h + h,
        0,
        p,
        rng,
    );
    claims.ideal(format!("dim (I_W~)_{d}"), 0, wt, d);
    generic_w_t(claims, d, p, rng)
}

fn push_points_on_q<R: Rng + ?Sized>(
    x: &mut Scheme,
    count: u64,
    p: Prime,
    rng: &mut R,
) -> Result<()> {
    push_n(x, count, rng, |rng| {
        Ok(SchemeComponent::SimplePoint(random_quadric_point(p, rng)))
    })
}

fn case_two<R: Rng + ?Sized>(
    claims: &mut ClaimSet,
    h: u64,
    c: &CountingData,
    p: Prime,
    rng: &mut R,
) -> Result<()> {
    let d = c.d;
    let (t, s, r) = (c.t, c.s, c.r);
    claims.value("t = 3(h+1)(h+2)/2", i(3 * (h + 1) * (h + 2) / 2), i(t));
    claims.value("r = h+1", i(h + 1), i(r));

    let mut wt = Scheme::new(3);
    push_n(&mut wt, 2 * h + 2, rng, ruled(p))?;
    push_n(
        &mut wt,
        sub(s, 2 * h + 2, "case 2 W~")?,
        rng,
        sundial(generic_quadric_sundial, p),
    )?;
    if c.t_odd() {
        wt.push(SchemeComponent::Line(random_secant_line(p, rng)))?;
    }
    push_points_on_q(&mut wt, r, p, rng)?;

    let t_sundials = if c.t_odd() { s + 1 } else { s };
    let mut tt = Scheme::new(3);
    push_n(&mut tt, 2 * h + 3, rng, ruled(p))?;
    push_n(
        &mut tt,
        sub(t_sundials, 2 * h + 3, "case 2 T~")?,
        rng,
        sundial(generic_quadric_sundial, p),
    )?;
    if !c.t_odd() {
        tt.push(SchemeComponent::Line(random_secant_line(p, rng)))?;
    }

    let res_lines = sub(t, 2 * h + 2, "case 2")?;
    let formula = i(binomial(3 * h + 3, 3)?) - i(3 * h + 1) * i(res_lines);
    claims.value("C(3h+3, 3) - (3h+1)(t-2h-2)", 0, formula);
    let pw = 3 * h * h + 6 * h + 3;
    let pt = 3 * h * h + 5 * h + 2;
    claims.value("2(t-2h-2) = 3h^2+5h+2", i(pt), i(2 * res_lines));
    quadric_step(claims, "W~", &wt, d, res_lines, 2 * h + 2, pw, 0, p)?;
    quadric_step(claims, "T~", &tt, d, res_lines, 2 * h + 3, pt, 0, p)?;
    model_claim(claims, "W~", h as u32, d, pw, 0, p, rng);
    model_claim(claims, "T~", (h - 1) as u32, d, pt, 0, p, rng);
    claims.ideal(format!("dim (I_W~)_{d}"), 0, wt, d);
    claims.ideal(format!("dim (I_T~)_{d}"), 0, tt, d);
    generic_w_t(claims, d, p, rng)
}

fn case_three<R: Rng + ?Sized>(
    claims: &mut ClaimSet,
    h: u64,
    c: &CountingData,
    p: Prime,
    rng: &mut R,
) -> Result<()> {
    let d = c.d;
    let (t, s) = (c.t, c.s);
    claims.value("t = (h+1)(3h+4)/2", i((h + 1) * (3 * h + 4) / 2), i(t));
    claims.value("r = 0", 0, i(c.r));
    if h == 2 {
        // direct computation for W = 7 sundials + M, and the six-sundial
        // configuration reached by the ad hoc specialization
        generic_w_t(claims, d, p, rng)?;
        let mut six = Scheme::new(3);
        push_n(&mut six, 6, rng, sundial(generic_quadric_sundial, p))?;
        claims.ideal("dim (I_six sundials)_6", 0, six, 6);
        return Ok(());
    }
    let k = 4 * h + 1;
    let rest = sub(s, k, "case 3")?;

    let mut wt = Scheme::new(3);
    push_n(&mut wt, 2 * h + 1, rng, ruled(p))?;
    push_n(&mut wt, 2 * h, rng, sundial(vertex_on_quadric_sundial, p))?;
    push_n(&mut wt, rest, rng, sundial(generic_quadric_sundial, p))?;
    if c.t_odd() {
        wt.push(SchemeComponent::Line(random_secant_line(p, rng)))?;
    }
    let wt_res_lines = sub(t, 2 * h + 1, "case 3 residual")?;
    let pw = 3 * h * h + 2 - h;
    quadric_step(claims, "W~", &wt, d, wt_res_lines, 2 * h + 1, pw, 2 * h, p)?;
    model_claim(claims, "W~", h as u32, d, pw, 2 * h, p, rng);

    // further specialization of Res_Q W~: L_{1,2} and the first lines of
    // the 2h conics become lines of one ruling
    let mut wtt = Scheme::new(3);
    wtt.push(SchemeComponent::Line(random_ruling(
        RulingFamily::A,
        p,
        rng,
    )))?;
    push_n(&mut wtt, 2 * h, rng, |rng| {
        Ok(SchemeComponent::Line(random_secant_line(p, rng)))
    })?;
    push_n(&mut wtt, 2 * h, rng, |rng| {
        ruled_conic(RulingFamily::A, p, rng)
    })?;
    push_n(&mut wtt, rest, rng, sundial(generic_quadric_sundial, p))?;
    if c.t_odd() {
        wtt.push(SchemeComponent::Line(random_secant_line(p, rng)))?;
    }
    let wtt_res_lines = sub(t, 4 * h + 2, "case 3 second residual")?;
    let formula = i(binomial(3 * h, 3)?) - i(3 * h - 2) * i(wtt_res_lines);
    claims.value("C(3h, 3) - (3h-2)(t-4h-2)", 0, formula);
    let ptt = 2 * sub(t, 5 * h + 2, "case 3 trace")?;
    quadric_step(
        claims,
        "W~~",
        &wtt,
        d - 2,
        wtt_res_lines,
        2 * h + 1,
        ptt,
        0,
        p,
    )?;
    model_claim(
        claims,
        "W~~",
        (h - 2) as u32,
        (3 * h - 1) as u32,
        ptt,
        0,
        p,
        rng,
    );
    claims.value("(h-1)(3h) - 2(t-5h-2)", 0, i((h - 1) * 3 * h) - i(ptt));
    claims.ideal(format!("dim (I_W~~)_{}", d - 2), 0, wtt, d - 2);
    claims.ideal(format!("dim (I_W~)_{d}"), 0, wt, d);
    generic_w_t(claims, d, p, rng)
}
