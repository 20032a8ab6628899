//! JSON shapes for library values: quaternions as `[w,x,y,z]`, units as `[x,y,z]`.

use serde::{Deserialize, Serialize};
use slicereg::{
    Complex, ContinuationOptions, HolomorphicGerm, ImaginaryUnit, LinearOde, NPartPath, PlanarPath,
    QMatrix, Quaternion, SliceValueVector, UnitMatrix,
};

use crate::error::{CliError, CliResult};

pub type QuatJson = [f64; 4];
pub type UnitJson = [f64; 3];
pub type ComplexJson = [f64; 2];

pub fn quat(q: QuatJson) -> Quaternion {
    Quaternion::new(q[0], q[1], q[2], q[3])
}

pub fn quat_json(q: Quaternion) -> QuatJson {
    [q.w, q.x, q.y, q.z]
}

pub fn unit(u: UnitJson) -> CliResult<ImaginaryUnit> {
    Ok(ImaginaryUnit::new(u[0], u[1], u[2])?)
}

pub fn unit_json(u: ImaginaryUnit) -> UnitJson {
    u.vector()
}

pub fn complex(z: ComplexJson) -> Complex {
    Complex::new(z[0], z[1])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QMatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<QuatJson>,
}

impl QMatrixJson {
    pub fn from_matrix(m: &QMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().map(|q| quat_json(*q)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitMatrixJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub rows: Vec<Vec<UnitJson>>,
}

impl UnitMatrixJson {
    pub fn from_matrix(j: &UnitMatrix) -> Self {
        Self {
            n: j.n(),
            rows: j
                .rows()
                .iter()
                .map(|r| r.units().iter().map(|u| unit_json(*u)).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> CliResult<UnitMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|u| unit(*u)).collect::<CliResult<Vec<_>>>())
            .collect::<CliResult<Vec<_>>>()?;
        Ok(UnitMatrix::from_units(self.n, rows)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceValueVectorJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub values: Vec<QuatJson>,
}

impl SliceValueVectorJson {
    pub fn from_vector(f: &SliceValueVector) -> Self {
        Self {
            n: f.n(),
            values: f.values().iter().map(|q| quat_json(*q)).collect(),
        }
    }
}

/// One planar path; a list of these is an N-part path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum PathJson {
    Segment {
        from: ComplexJson,
        to: ComplexJson,
    },
    Arc {
        center: ComplexJson,
        radius: f64,
        start: f64,
        sweep: f64,
    },
    Polyline {
        points: Vec<ComplexJson>,
    },
    Chain {
        legs: Vec<PathJson>,
    },
}

impl PathJson {
    pub fn to_path(&self) -> CliResult<PlanarPath> {
        Ok(match self {
            Self::Segment { from, to } => PlanarPath::segment(complex(*from), complex(*to)),
            Self::Arc {
                center,
                radius,
                start,
                sweep,
            } => {
                if !(*radius > 0.0) {
                    return Err(CliError::Config(format!(
                        "arc radius must be positive, got {radius}"
                    )));
                }
                PlanarPath::arc(complex(*center), *radius, *start, *sweep)
            }
            Self::Polyline { points } => {
                PlanarPath::polyline(points.iter().map(|p| complex(*p)).collect())?
            }
            Self::Chain { legs } => {
                PlanarPath::chain(legs.iter().map(Self::to_path).collect::<CliResult<_>>()?)?
            }
        })
    }
}

pub fn npart(legs: &[PathJson]) -> CliResult<NPartPath> {
    Ok(NPartPath::compose(
        legs.iter()
            .map(PathJson::to_path)
            .collect::<CliResult<_>>()?,
    )?)
}

/// Germ descriptions accepted by `continue-path`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GermJson {
    /// Principal `log(w − branch)` at `center`.
    Log {
        center: ComplexJson,
        branch: ComplexJson,
    },
    /// `1/(w − pole)` at `center`.
    Reciprocal {
        center: ComplexJson,
        pole: ComplexJson,
    },
    /// `f' = λf` with `f(center) = value`.
    Exponential {
        center: ComplexJson,
        lambda: ComplexJson,
        value: QuatJson,
    },
    /// Polynomial in `w` centred at 0.
    Polynomial { coeffs: Vec<QuatJson> },
    /// Truncated power series at `center`.
    Series {
        center: ComplexJson,
        coeffs: Vec<QuatJson>,
    },
}

impl GermJson {
    pub fn build(
        &self,
        unit: ImaginaryUnit,
        opts: &ContinuationOptions,
    ) -> CliResult<HolomorphicGerm> {
        let quats = |c: &[QuatJson]| c.iter().map(|q| quat(*q)).collect::<Vec<_>>();
        Ok(match self {
            Self::Log { center, branch } => {
                HolomorphicGerm::log(complex(*center), complex(*branch), opts.order, unit)?
            }
            Self::Reciprocal { center, pole } => {
                HolomorphicGerm::reciprocal(complex(*center), complex(*pole), opts.order, unit)?
            }
            Self::Exponential {
                center,
                lambda,
                value,
            } => HolomorphicGerm::from_ode(
                complex(*center),
                quat(*value),
                LinearOde::exponential(complex(*lambda)),
                unit,
                opts,
            )?,
            Self::Polynomial { coeffs } => HolomorphicGerm::polynomial(quats(coeffs))?,
            Self::Series { center, coeffs } => {
                HolomorphicGerm::with_options(complex(*center), quats(coeffs), opts)?
            }
        })
    }
}
