//! Residual/trace engine: hyperplane and quadric rules, Castelnuovo's
//! inequality, and replays of the specializations used in the inductive
//! proofs.

mod hyperplane;
mod quadric;
mod replay_p3;
mod replay_pn;

pub use hyperplane::{residual, trace, Hyperplane};
pub use quadric::{
    bidegree_dimension, bidegree_rows, classify_line, generic_quadric_sundial,
    quadric_point_avoiding, random_off_quadric, random_points_system, random_ruling,
    random_secant_line, residual_quadric, ruled_conic, ruled_sundial, trace_quadric,
    vertex_on_quadric_sundial, BidegreeComponent, BidegreeSystem, LineOnQuadric,
};
pub use replay_p3::replay_p3_case;
pub use replay_pn::replay_pn_case;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expectations::CountingData;
use crate::gfp::Prime;
use crate::scheme::{ideal_dimension, Scheme};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Hypersurface {
    Hyperplane(Hyperplane),
    /// `x_0 x_3 - x_1 x_2` in P^3.
    FixedQuadric,
}

impl Hypersurface {
    pub fn degree(&self) -> u32 {
        match self {
            Hypersurface::Hyperplane(_) => 1,
            Hypersurface::FixedQuadric => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CastelnuovoReport {
    pub degree: u32,
    pub hypersurface_degree: u32,
    pub dim_x_d: usize,
    pub dim_res: usize,
    pub dim_trace: usize,
    pub inequality_holds: bool,
}

/// Computes `dim (I_X)_d`, `dim (I_Res)_{d - delta}` and `dim (I_Tr)_d`.
pub fn check_inequality(
    x: &Scheme,
    y: &Hypersurface,
    d: u32,
    p: Prime,
) -> Result<CastelnuovoReport> {
    let delta = y.degree();
    if d < delta {
        return Err(Error::InvalidDimension(format!(
            "degree {d} is below the hypersurface degree {delta}"
        )));
    }
    let dim_x_d = ideal_dimension(x, d, p)?;
    let (dim_res, dim_trace) = match y {
        Hypersurface::Hyperplane(h) => {
            let res = residual(x, h, p)?;
            let tr = trace(x, h, p)?;
            (
                ideal_dimension(&res, d - 1, p)?,
                ideal_dimension(&tr, d, p)?,
            )
        }
        Hypersurface::FixedQuadric => {
            let res = residual_quadric(x, p)?;
            let tr = trace_quadric(x, d, p)?;
            (
                ideal_dimension(&res, d - 2, p)?,
                bidegree_dimension(&tr, p)?,
            )
        }
    };
    Ok(CastelnuovoReport {
        degree: d,
        hypersurface_degree: delta,
        dim_x_d,
        dim_res,
        dim_trace,
        inequality_holds: dim_x_d <= dim_res + dim_trace,
    })
}

/// One claimed value from a proof step next to the recomputed value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub label: String,
    pub claimed: i64,
    pub computed: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    pub label: String,
    pub report: CastelnuovoReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    /// `"p3"` or `"pn"`.
    pub kind: String,
    pub n: usize,
    pub d: u32,
    pub h: Option<u32>,
    pub case: String,
    pub counts: CountingData,
    /// How the specializing hypersurface sits in coordinates.
    pub frame: String,
    pub claims: Vec<Claim>,
    pub inequalities: Vec<InequalityCheck>,
}

impl ReplayReport {
    pub fn mismatches(&self) -> usize {
        self.claims.iter().filter(|c| !c.holds).count()
            + self
                .inequalities
                .iter()
                .filter(|i| !i.report.inequality_holds)
                .count()
    }

    pub fn all_hold(&self) -> bool {
        self.mismatches() == 0
    }
}

type Job = Box<dyn Fn() -> Result<i64> + Send + Sync>;

/// Claims collected while building a replay, evaluated in parallel.
pub(crate) struct ClaimSet {
    p: Prime,
    jobs: Vec<(String, i64, Job)>,
    inequalities: Vec<(String, Scheme, Hypersurface, u32)>,
}

pub(crate) fn to_i64(v: impl TryInto<i64>) -> i64 {
    v.try_into().unwrap_or(i64::MAX)
}

impl ClaimSet {
    pub(crate) fn new(p: Prime) -> Self {
        ClaimSet {
            p,
            jobs: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub(crate) fn value(&mut self, label: impl Into<String>, claimed: i64, computed: i64) {
        self.jobs
            .push((label.into(), claimed, Box::new(move || Ok(computed))));
    }

    pub(crate) fn ideal(&mut self, label: impl Into<String>, claimed: i64, x: Scheme, d: u32) {
        let p = self.p;
        self.jobs.push((
            label.into(),
            claimed,
            Box::new(move || Ok(to_i64(ideal_dimension(&x, d, p)?))),
        ));
    }

    pub(crate) fn bidegree(&mut self, label: impl Into<String>, claimed: i64, s: BidegreeSystem) {
        let p = self.p;
        self.jobs.push((
            label.into(),
            claimed,
            Box::new(move || Ok(to_i64(bidegree_dimension(&s, p)?))),
        ));
    }

    pub(crate) fn inequality(
        &mut self,
        label: impl Into<String>,
        x: Scheme,
        y: Hypersurface,
        d: u32,
    ) {
        self.inequalities.push((label.into(), x, y, d));
    }

    pub(crate) fn evaluate(self) -> Result<(Vec<Claim>, Vec<InequalityCheck>)> {
        let p = self.p;
        let claims = self
            .jobs
            .into_par_iter()
            .map(|(label, claimed, job)| {
                let computed = job()?;
                Ok(Claim {
                    label,
                    claimed,
                    computed,
                    holds: claimed == computed,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let inequalities = self
            .inequalities
            .into_par_iter()
            .map(|(label, x, y, d)| {
                Ok(InequalityCheck {
                    label,
                    report: check_inequality(&x, &y, d, p)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((claims, inequalities))
    }
}
