use thiserror::Error;

/// Failure modes shared by every module. Each variant names the precondition it guards.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid: {0}")]
    InvalidGrid(String),
    #[error("exponent: {0}")]
    Domain(String),
    #[error("finite_values: non-finite value at index {0}")]
    NonFinite(usize),
    #[error("same_grid: operands live on different grids")]
    GridMismatch,
    #[error("padded_length: transform length overflows for {0} points")]
    PaddedLength(usize),
    #[error("grid_aligned: {0} is not an integer multiple of the grid spacing")]
    NotGridAligned(f64),
    #[error("exponent_triple: 1 + 1/p = 1/q + 1/r fails for ({p}, {q}, {r})")]
    ExponentTriple { p: f64, q: f64, r: f64 },
    #[error("moderate_weight: m is not moderate with respect to w")]
    NotModerate,
    #[error("resolution: {0}")]
    Resolution(String),
    #[error("spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("nyquist: sampling rate {rate} must exceed {required}")]
    Nyquist { rate: f64, required: f64 },
    #[error("well_conditioned: Gram matrix is ill-conditioned (lambda_min = {lambda_min:e})")]
    IllConditioned { lambda_min: f64 },
    #[error("convergence: {method} did not converge after {iterations} iterations")]
    NoConvergence { method: &'static str, iterations: usize },
    #[error("positive_definite: {0}")]
    NumericallySingular(String),
    #[error("size_cap: size {size} exceeds the cap {cap}")]
    SizeCap { size: usize, cap: usize },
    #[error("contraction: refused with c = {c}")]
    ContractionRefused { c: f64 },
    #[error("depth_cap: depth {depth} exceeds {cap}")]
    DepthCap { depth: u32, cap: u32 },
    #[error("window_reproduces_kernel: relative W*K - K error {0:e} exceeds 1e-8")]
    WindowMismatch(f64),
    #[error("argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Short name of the violated precondition, used for exit reporting.
    pub fn precondition(&self) -> &'static str {
        match self {
            Error::InvalidGrid(_) => "grid",
            Error::Domain(_) => "exponent",
            Error::NonFinite(_) => "finite_values",
            Error::GridMismatch => "same_grid",
            Error::PaddedLength(_) => "padded_length",
            Error::NotGridAligned(_) => "grid_aligned",
            Error::ExponentTriple { .. } => "exponent_triple",
            Error::NotModerate => "moderate_weight",
            Error::Resolution(_) => "resolution",
            Error::InvalidSpectrum(_) => "spectrum",
            Error::Nyquist { .. } => "nyquist",
            Error::IllConditioned { .. } => "well_conditioned",
            Error::NoConvergence { .. } => "convergence",
            Error::NumericallySingular(_) => "positive_definite",
            Error::SizeCap { .. } => "size_cap",
            Error::ContractionRefused { .. } => "contraction",
            Error::DepthCap { .. } => "depth_cap",
            Error::WindowMismatch(_) => "window_reproduces_kernel",
            Error::InvalidArgument(_) => "argument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
