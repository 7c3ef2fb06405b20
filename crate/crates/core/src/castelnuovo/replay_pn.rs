//! Replays the hyperplane specializations of the P^n induction (`n >= 4`).

use rand::Rng;

use super::hyperplane::{residual, trace, Hyperplane};
use super::{to_i64, ClaimSet, Hypersurface, ReplayReport};
use crate::error::{Error, Result};
use crate::expectations::{build_w_t, CountingData, ProofCase};
use crate::geometry::{
    generic_sundial_in, make_generic_sundial, random_line, random_line_in, random_line_through,
    random_point, sample_point, sample_point_off, Line, LinearSubspace, SundialData,
};
use crate::gfp::Prime;
use crate::scheme::{Scheme, SchemeComponent};

struct Placer<'a, R: Rng + ?Sized> {
    n: usize,
    h: LinearSubspace,
    hyperplane: Hyperplane,
    p: Prime,
    rng: &'a mut R,
}

impl<R: Rng + ?Sized> Placer<'_, R> {
    /// Generic sundial with vertex off `H`.
    fn generic(&mut self) -> Result<SchemeComponent> {
        loop {
            let s = make_generic_sundial(self.n, self.p, self.rng)?;
            if !self.hyperplane.contains_point(&s.vertex, self.p) {
                return Ok(SchemeComponent::Sundial(s));
            }
        }
    }

    /// Both lines in `H`, 3-space not.
    fn conic_in_h(&mut self) -> Result<SchemeComponent> {
        let whole = LinearSubspace::whole(self.n);
        loop {
            let v = sample_point(&self.h, self.p, self.rng);
            let l = random_line_through(&v, &self.h, self.p, self.rng);
            let m = random_line_through(&v, &self.h, self.p, self.rng);
            let extra = sample_point_off(&whole, &self.h, self.p, self.rng);
            if let Ok(s) = SundialData::from_lines(l, m, &extra, self.p) {
                return Ok(SchemeComponent::Sundial(s));
            }
        }
    }

    fn inside_h(&mut self) -> Result<SchemeComponent> {
        Ok(SchemeComponent::Sundial(generic_sundial_in(
            &self.h, self.p, self.rng,
        )?))
    }

    /// First line in `H`, second line not.
    fn half_in_h(&mut self) -> Result<SchemeComponent> {
        let whole = LinearSubspace::whole(self.n);
        loop {
            let v = sample_point(&self.h, self.p, self.rng);
            let l = random_line_through(&v, &self.h, self.p, self.rng);
            let out = sample_point_off(&whole, &self.h, self.p, self.rng);
            let m = Line::through(&v, &out, self.p)?;
            let extra = random_point(self.n, self.p, self.rng);
            if let Ok(s) = SundialData::from_lines(l, m, &extra, self.p) {
                return Ok(SchemeComponent::Sundial(s));
            }
        }
    }

    fn point_in_h(&mut self) -> Result<SchemeComponent> {
        Ok(SchemeComponent::SimplePoint(sample_point(
            &self.h, self.p, self.rng,
        )))
    }

    fn line_in_h(&mut self) -> Result<SchemeComponent> {
        Ok(SchemeComponent::Line(random_line_in(
            &self.h, self.p, self.rng,
        )))
    }

    fn line_off_h(&mut self) -> Result<SchemeComponent> {
        loop {
            let l = random_line(self.n, self.p, self.rng);
            if !self.hyperplane.contains_line(&l, self.p) {
                return Ok(SchemeComponent::Line(l));
            }
        }
    }

    fn push(
        &mut self,
        x: &mut Scheme,
        count: u64,
        f: fn(&mut Self) -> Result<SchemeComponent>,
    ) -> Result<()> {
        for _ in 0..count {
            x.push(f(self)?)?;
        }
        Ok(())
    }
}

/// Expected composition of a residual or trace.
#[derive(Default)]
struct Shape {
    points: u64,
    double_points: u64,
    lines: u64,
    conics: u64,
    sundials: u64,
}

impl Shape {
    fn claim(&self, claims: &mut ClaimSet, name: &str, x: &Scheme) {
        let pairs = [
            ("points", self.points, "point"),
            ("double points", self.double_points, "double_point"),
            ("lines", self.lines, "line"),
            ("conics", self.conics, "conic"),
            ("sundials", self.sundials, "sundial"),
        ];
        for (label, want, kind) in pairs {
            claims.value(
                format!("{name}: {label}"),
                to_i64(want),
                to_i64(x.count(kind)),
            );
        }
    }
}

/// Generic comparison scheme in the hyperplane.
struct Model {
    sundials: u64,
    lines: u64,
    points: u64,
}

fn sub(a: u64, b: u64, what: &str) -> Result<u64> {
    a.checked_sub(b)
        .ok_or_else(|| Error::InvalidDimension(format!("negative count in {what}")))
}

fn model_scheme<R: Rng + ?Sized>(n: usize, m: &Model, p: Prime, rng: &mut R) -> Result<Scheme> {
    let mut x = Scheme::new(n);
    for _ in 0..m.sundials {
        x.push(SchemeComponent::Sundial(make_generic_sundial(n, p, rng)?))?;
    }
    for _ in 0..m.lines {
        x.push(SchemeComponent::Line(random_line(n, p, rng)))?;
    }
    for _ in 0..m.points {
        x.push(SchemeComponent::SimplePoint(random_point(n, p, rng)))?;
    }
    Ok(x)
}

struct Specialized {
    name: &'static str,
    scheme: Scheme,
    residual: Shape,
    trace: Shape,
    model: Model,
}

/// Recomputes every dimension claimed for `(n, d)` in the hyperplane
/// induction, with `H = {x_n = 0}`.
pub fn replay_pn_case<R: Rng + ?Sized>(
    n: usize,
    d: u32,
    p: Prime,
    rng: &mut R,
) -> Result<ReplayReport> {
    if n < 4 || d < 2 {
        return Err(Error::OutOfStatedRange {
            n,
            d: d as usize,
            reason: "the hyperplane induction needs n >= 4 and d >= 2".into(),
        });
    }
    p.check_degree(d)?;
    let c = CountingData::new(n, d)?;
    let case = c.proof_case();
    let (s, sp, rp, r, tp) = (c.s, c.s_p, c.r_p, c.r, c.t_p);
    let t_odd = c.t_odd();
    let hyperplane = Hyperplane::coordinate(n);
    let mut pl = Placer {
        n,
        h: hyperplane.subspace(p),
        hyperplane: hyperplane.clone(),
        p,
        rng,
    };

    let mut w = Scheme::new(n);
    let mut t = Scheme::new(n);
    let in_block = sub(s, sp + rp, "s - s' - r'")?;
    let (w_shape, t_shape) = match case {
        ProofCase::A => {
            pl.push(&mut w, rp, Placer::conic_in_h)?;
            pl.push(&mut w, in_block, Placer::inside_h)?;
            pl.push(&mut w, r, Placer::point_in_h)?;
            pl.push(&mut w, sp, Placer::generic)?;
            pl.push(&mut w, 1, Placer::line_off_h)?;

            pl.push(&mut t, rp, Placer::conic_in_h)?;
            pl.push(&mut t, in_block, Placer::inside_h)?;
            pl.push(&mut t, sp, Placer::generic)?;
            pl.push(&mut t, 1, Placer::half_in_h)?;
            (
                Specialized {
                    name: "W~",
                    scheme: w,
                    residual: Shape {
                        points: rp,
                        sundials: sp,
                        lines: 1,
                        ..Default::default()
                    },
                    trace: Shape {
                        conics: rp,
                        sundials: in_block,
                        points: r + 2 * sp + 1,
                        ..Default::default()
                    },
                    model: Model {
                        sundials: s - sp,
                        lines: 0,
                        points: sub(r + tp, rp, "r + t' - r'")?,
                    },
                },
                Specialized {
                    name: "T~",
                    scheme: t,
                    residual: Shape {
                        points: rp,
                        sundials: sp,
                        lines: 1,
                        ..Default::default()
                    },
                    trace: Shape {
                        conics: rp,
                        sundials: in_block,
                        lines: 1,
                        double_points: 1,
                        points: 2 * sp,
                    },
                    model: Model {
                        sundials: s - sp,
                        lines: 1,
                        points: sub(2 * sp, rp, "2s' - r'")?,
                    },
                },
            )
        }
        ProofCase::B => {
            pl.push(&mut w, rp, Placer::conic_in_h)?;
            pl.push(&mut w, in_block, Placer::inside_h)?;
            pl.push(&mut w, r, Placer::point_in_h)?;
            pl.push(&mut w, sp, Placer::generic)?;
            if t_odd {
                // M is placed into H and only enters the trace
                pl.push(&mut w, 1, Placer::line_in_h)?;
            }

            pl.push(&mut t, rp, Placer::conic_in_h)?;
            if t_odd {
                pl.push(&mut t, in_block + 1, Placer::inside_h)?;
            } else {
                pl.push(&mut t, in_block, Placer::inside_h)?;
                pl.push(&mut t, 1, Placer::line_in_h)?;
            }
            pl.push(&mut t, sp, Placer::generic)?;
            let lines = u64::from(t_odd);
            (
                Specialized {
                    name: "W~",
                    scheme: w,
                    residual: Shape {
                        points: rp,
                        sundials: sp,
                        ..Default::default()
                    },
                    trace: Shape {
                        conics: rp,
                        sundials: in_block,
                        points: r + 2 * sp,
                        lines,
                        ..Default::default()
                    },
                    model: Model {
                        sundials: s - sp,
                        lines,
                        points: sub(r + tp, rp, "r + t' - r'")?,
                    },
                },
                Specialized {
                    name: "T~",
                    scheme: t,
                    residual: Shape {
                        points: rp,
                        sundials: sp,
                        ..Default::default()
                    },
                    trace: Shape {
                        conics: rp,
                        sundials: in_block + lines,
                        lines: 1 - lines,
                        points: 2 * sp,
                        ..Default::default()
                    },
                    model: Model {
                        sundials: s - sp + lines,
                        lines: 1 - lines,
                        points: sub(2 * sp, rp, "2s' - r'")?,
                    },
                },
            )
        }
        ProofCase::C => {
            let inner = sub(in_block, 1, "s - s' - r' - 1")?;
            pl.push(&mut w, rp, Placer::conic_in_h)?;
            pl.push(&mut w, inner, Placer::inside_h)?;
            pl.push(&mut w, 1, Placer::half_in_h)?;
            pl.push(&mut w, r, Placer::point_in_h)?;
            pl.push(&mut w, sp, Placer::generic)?;

            pl.push(&mut t, rp, Placer::conic_in_h)?;
            pl.push(&mut t, in_block, Placer::inside_h)?;
            pl.push(&mut t, sp, Placer::generic)?;
            pl.push(&mut t, 1, Placer::line_off_h)?;
            let w_model_points = sub(r + tp, 1 + d as u64 + rp, "r + t' - 1 - d - r'")?;
            (
                Specialized {
                    name: "W~",
                    scheme: w,
                    residual: Shape {
                        points: rp,
                        sundials: sp,
                        lines: 1,
                        ..Default::default()
                    },
                    trace: Shape {
                        conics: rp,
                        sundials: inner,
                        lines: 1,
                        double_points: 1,
                        points: r + tp - 1,
                    },
                    model: Model {
                        sundials: s - sp,
                        lines: 0,
                        points: w_model_points,
                    },
                },
                Specialized {
                    name: "T~",
                    scheme: t,
                    residual: Shape {
                        points: rp,
                        sundials: sp,
                        lines: 1,
                        ..Default::default()
                    },
                    trace: Shape {
                        conics: rp,
                        sundials: in_block,
                        points: 2 * sp + 1,
                        ..Default::default()
                    },
                    model: Model {
                        sundials: s - sp,
                        lines: 0,
                        points: sub(2 * sp + 1, rp, "2s' + 1 - r'")?,
                    },
                },
            )
        }
    };

    let mut claims = ClaimSet::new(p);
    for x in [&w_shape, &t_shape] {
        let name = x.name;
        let res = residual(&x.scheme, &hyperplane, p)?;
        let tr = trace(&x.scheme, &hyperplane, p)?;
        x.residual
            .claim(&mut claims, &format!("Res_H {name}"), &res);
        x.trace.claim(&mut claims, &format!("Tr_H {name}"), &tr);
        claims.ideal(
            format!("dim (I_Res_H {name})_{}", d - 1),
            0,
            res.clone(),
            d - 1,
        );
        claims.ideal(format!("dim (I_Tr_H {name})_{d}"), 0, tr.clone(), d);
        if d > 5 {
            let without = Scheme::from_components(
                n,
                res.components()
                    .iter()
                    .filter(|c| c.kind() != "point")
                    .cloned(),
            )?;
            claims.ideal(
                format!("dim (I_Res_H {name} - R)_{}", d - 1),
                to_i64(rp),
                without.clone(),
                d - 1,
            );
            claims.ideal(
                format!("dim (I_Res_H {name} - R)_{}", d - 2),
                0,
                without,
                d - 2,
            );
        }
        let model = model_scheme(n - 1, &x.model, p, pl.rng)?;
        claims.ideal(format!("model for Tr_H {name} in degree {d}"), 0, model, d);
        if case == ProofCase::C && name == "W~" {
            let on_line = points_onto_auxiliary_line(&tr, d, p, pl.rng)?;
            claims.ideal(
                format!("dim (I_Tr_H W~ with d points on an auxiliary line)_{d}"),
                0,
                on_line,
                d,
            );
        }
        claims.ideal(format!("dim (I_{name})_{d}"), 0, x.scheme.clone(), d);
        claims.inequality(
            format!("Castelnuovo for {name} and H"),
            x.scheme.clone(),
            Hypersurface::Hyperplane(hyperplane.clone()),
            d,
        );
    }
    let crit = build_w_t(n, d, p, pl.rng)?;
    claims.ideal(format!("dim (I_W)_{d}"), 0, crit.w, d);
    let mut generic_t = Scheme::new(n);
    if t_odd {
        for _ in 0..=s {
            generic_t.push(SchemeComponent::Sundial(make_generic_sundial(
                n, p, pl.rng,
            )?))?;
        }
    } else {
        for _ in 0..s {
            generic_t.push(SchemeComponent::Sundial(make_generic_sundial(
                n, p, pl.rng,
            )?))?;
        }
        generic_t.push(SchemeComponent::Line(random_line(n, p, pl.rng)))?;
    }
    claims.ideal(format!("dim (I_T)_{d}"), 0, generic_t, d);

    let (claims, inequalities) = claims.evaluate()?;
    Ok(ReplayReport {
        kind: "pn".into(),
        n,
        d,
        h: None,
        case: case.label().into(),
        counts: c,
        frame: format!("H = {{x{n} = 0}}; trace coordinates drop x{n}"),
        claims,
        inequalities,
    })
}

/// Moves `d` simple points of the trace onto a random line of the
/// hyperplane through the support of its restricted double point.
fn points_onto_auxiliary_line<R: Rng + ?Sized>(
    tr: &Scheme,
    d: u32,
    p: Prime,
    rng: &mut R,
) -> Result<Scheme> {
    let support = tr
        .components()
        .iter()
        .find_map(|c| match c {
            SchemeComponent::DoublePointRestricted { point, .. } => Some(point.clone()),
            _ => None,
        })
        .ok_or_else(|| {
            Error::UnrecognizedPosition("trace has no restricted double point".into())
        })?;
    let whole = LinearSubspace::whole(tr.ambient_n());
    let aux = random_line_through(&support, &whole, p, rng);
    let aux_space = aux.subspace(p);
    let mut moved = 0;
    let mut out = Scheme::new(tr.ambient_n());
    for c in tr.components() {
        if moved < d && c.kind() == "point" {
            out.push(SchemeComponent::SimplePoint(sample_point(
                &aux_space, p, rng,
            )))?;
            moved += 1;
        } else {
            out.push(c.clone())?;
        }
    }
    if moved < d {
        return Err(Error::InvalidDimension(
            "fewer than d points in the trace".into(),
        ));
    }
    Ok(out)
}
