//! Plain description of a scheme: ambient dimension, prime and a list of
//! components given by coordinate vectors.
//!
//! ```json
//! {"n": 3, "prime": 32003, "components": [
//!   {"type": "point", "coords": [1, 2, 3, 4]},
//!   {"type": "line", "points": [[1, 0, 0, 0], [0, 1, 0, 0]]},
//!   {"type": "sundial", "l": [[1, 0, 0, 0], [0, 1, 0, 0]], "m": [[1, 0, 0, 0], [0, 0, 1, 0]],
//!    "space": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}
//! ]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Line, LinearSubspace, ProjectivePoint, SundialData};
use crate::gfp::Prime;
use crate::scheme::{Scheme, SchemeComponent};

pub type Coords = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ComponentSpec {
    Point {
        coords: Coords,
    },
    DoublePoint {
        point: Coords,
        space: Vec<Coords>,
    },
    Line {
        points: [Coords; 2],
    },
    Conic {
        l: [Coords; 2],
        m: [Coords; 2],
    },
    Sundial {
        l: [Coords; 2],
        m: [Coords; 2],
        space: Vec<Coords>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeFile {
    pub n: usize,
    #[serde(default)]
    pub prime: Option<u64>,
    pub components: Vec<ComponentSpec>,
}

fn point(c: &Coords, n: usize, p: Prime) -> Result<ProjectivePoint> {
    if c.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: c.len(),
        });
    }
    ProjectivePoint::new(c.iter().map(|&v| p.from_i64(v)).collect(), p)
}

fn line(pts: &[Coords; 2], n: usize, p: Prime) -> Result<Line> {
    Line::through(&point(&pts[0], n, p)?, &point(&pts[1], n, p)?, p)
}

fn subspace(rows: &[Coords], n: usize, p: Prime) -> Result<LinearSubspace> {
    for r in rows {
        if r.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: r.len(),
            });
        }
    }
    LinearSubspace::from_vectors(
        n,
        rows.iter()
            .map(|r| r.iter().map(|&v| p.from_i64(v)).collect::<Vec<_>>()),
        p,
    )
}

fn coords(pt: &ProjectivePoint) -> Coords {
    pt.values().into_iter().map(i64::from).collect()
}

fn line_coords(l: &Line) -> [Coords; 2] {
    [coords(l.first()), coords(l.second())]
}

fn subspace_coords(s: &LinearSubspace) -> Vec<Coords> {
    s.basis()
        .row_iter()
        .map(|r| r.iter().map(|v| i64::from(v.value())).collect())
        .collect()
}

impl ComponentSpec {
    pub fn build(&self, n: usize, p: Prime) -> Result<SchemeComponent> {
        Ok(match self {
            ComponentSpec::Point { coords } => SchemeComponent::SimplePoint(point(coords, n, p)?),
            ComponentSpec::DoublePoint { point: pt, space } => {
                SchemeComponent::double_point(point(pt, n, p)?, subspace(space, n, p)?, p)?
            }
            ComponentSpec::Line { points } => SchemeComponent::Line(line(points, n, p)?),
            ComponentSpec::Conic { l, m } => {
                SchemeComponent::conic(line(l, n, p)?, line(m, n, p)?, p)?
            }
            ComponentSpec::Sundial { l, m, space } => {
                let (l, m) = (line(l, n, p)?, line(m, n, p)?);
                let vertex = l.meet(&m, p)?.ok_or_else(|| {
                    Error::DegenerateComponent("sundial lines do not meet".into())
                })?;
                SchemeComponent::Sundial(SundialData::new(l, m, vertex, subspace(space, n, p)?, p)?)
            }
        })
    }

    pub fn describe(c: &SchemeComponent) -> Self {
        match c {
            SchemeComponent::SimplePoint(pt) => ComponentSpec::Point { coords: coords(pt) },
            SchemeComponent::DoublePointRestricted { point, space } => ComponentSpec::DoublePoint {
                point: coords(point),
                space: subspace_coords(space),
            },
            SchemeComponent::Line(l) => ComponentSpec::Line {
                points: line_coords(l),
            },
            SchemeComponent::DegenerateConic { l, m, .. } => ComponentSpec::Conic {
                l: line_coords(l),
                m: line_coords(m),
            },
            SchemeComponent::Sundial(s) => ComponentSpec::Sundial {
                l: line_coords(&s.l),
                m: line_coords(&s.m),
                space: subspace_coords(&s.space),
            },
        }
    }
}

impl SchemeFile {
    /// The prime of the file, or `fallback` when absent.
    pub fn prime_or(&self, fallback: Prime) -> Result<Prime> {
        match self.prime {
            Some(v) => Prime::new(v),
            None => Ok(fallback),
        }
    }

    pub fn to_scheme(&self, p: Prime) -> Result<Scheme> {
        if self.n < 1 {
            return Err(Error::InvalidDimension(
                "ambient dimension must be at least 1".into(),
            ));
        }
        let mut x = Scheme::new(self.n);
        for c in &self.components {
            x.push(c.build(self.n, p)?)?;
        }
        Ok(x)
    }

    pub fn from_scheme(x: &Scheme, p: Prime) -> Self {
        SchemeFile {
            n: x.ambient_n(),
            prime: Some(p.value() as u64),
            components: x.components().iter().map(ComponentSpec::describe).collect(),
        }
    }
}
