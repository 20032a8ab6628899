use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a quaternion of norm {norm:e}")]
    ZeroDivision { norm: f64 },

    #[error("not an imaginary unit: real part {real:e}, norm {norm}")]
    NotUnit { real: f64, norm: f64 },

    #[error("shape mismatch: {context}")]
    ShapeMismatch { context: &'static str },

    #[error("matrix is singular (log|det| = {log_det}, threshold {log_threshold})")]
    Singular { log_det: f64, log_threshold: f64 },

    #[error("size {requested} exceeds the cap {cap}")]
    SizeCap { requested: usize, cap: usize },

    #[error("slices coincide: |I1 - I2| = {separation:e}")]
    DegenerateSlices { separation: f64 },

    #[error("unit matrix lacks full slice-rank at level {level}")]
    NotFullSliceRank { level: usize },

    #[error("units are not orthogonal: inner product {inner:e}")]
    NotOrthogonal { inner: f64 },

    #[error("evaluation outside the domain at ({x}, {y})")]
    EvaluationOutsideDomain { x: f64, y: f64 },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("junction {index} is broken (gap {gap:e}, imaginary part {imag:e})")]
    BrokenJunction { index: usize, gap: f64, imag: f64 },

    #[error("parameter {t} out of range")]
    ParameterOutOfRange { t: f64 },

    #[error("singularity hit near ({x}, {y}): radius estimate {radius:e}")]
    SingularityHit { x: f64, y: f64, radius: f64 },

    #[error("continuation exceeded its budget of {steps} steps")]
    TruncationBudgetExceeded { steps: usize },

    #[error("parameter t = {t} exceeds the horizon t_max = {t_max}")]
    HorizonExceeded { t: f64, t_max: f64 },

    #[error("point ({x}, {y}) lies on the cut (clearance {clearance:e})")]
    OnCut { x: f64, y: f64, clearance: f64 },

    #[error("germ center is not real (imaginary part {imag:e})")]
    NonRealCenter { imag: f64 },

    #[error("loop is not closed (gap {gap:e})")]
    OpenLoop { gap: f64 },

    #[error("no cut-avoiding route to ({x}, {y})")]
    NoRoute { x: f64, y: f64 },
}
