//! Band-limited kernels F⁻¹χ_Ω, the smooth window W, oscillation and local maxima.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{lebesgue_norm, Grid, GridFunction, ProfileConvolution, Weight};
use crate::special::sine_integral;

/// Finite sorted union of disjoint frequency intervals, stored as (start, width).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    parts: Vec<(f64, f64)>,
}

impl Spectrum {
    /// From endpoint pairs (a_i, b_i).
    pub fn new(intervals: Vec<(f64, f64)>) -> Result<Self> {
        Self::from_start_width(intervals.into_iter().map(|(a, b)| (a, b - a)).collect())
    }

    /// From (start, width) pairs. Useful when widths are far below the resolution of the start.
    pub fn from_start_width(parts: Vec<(f64, f64)>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidSpectrum("empty interval list".into()));
        }
        for (i, &(a, w)) in parts.iter().enumerate() {
            if !(a.is_finite() && w.is_finite() && w > 0.0) {
                return Err(Error::InvalidSpectrum(format!("interval {i} has start {a}, width {w}")));
            }
            if i > 0 {
                let (pa, pw) = parts[i - 1];
                if a < pa + pw {
                    return Err(Error::InvalidSpectrum(format!("interval {i} overlaps or is out of order")));
                }
            }
        }
        Ok(Spectrum { parts })
    }

    pub fn symmetric(omega: f64) -> Result<Self> {
        Self::new(vec![(-omega, omega)])
    }

    pub fn parts(&self) -> &[(f64, f64)] {
        &self.parts
    }

    pub fn intervals(&self) -> Vec<(f64, f64)> {
        self.parts.iter().map(|&(a, w)| (a, a + w)).collect()
    }

    pub fn measure(&self) -> f64 {
        self.parts.iter().map(|p| p.1).sum()
    }

    pub fn sup_abs(&self) -> f64 {
        self.parts.iter().map(|&(a, w)| a.abs().max((a + w).abs())).fold(0.0, f64::max)
    }

    pub fn contains(&self, xi: f64) -> bool {
        self.parts.iter().any(|&(a, w)| xi >= a && xi <= a + w)
    }

    pub fn distance(&self, xi: f64) -> f64 {
        self.parts
            .iter()
            .map(|&(a, w)| {
                if xi < a {
                    a - xi
                } else if xi > a + w {
                    xi - a - w
                } else {
                    0.0
                }
            })
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
enum KernelKind {
    Sinc { omega: f64 },
    Indicator,
}

/// K = F⁻¹χ_Ω evaluated in closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticKernel {
    spectrum: Spectrum,
    kind: KernelKind,
}

/// K(x) = sin(2πωx)/(πx), K(0) = 2ω.
pub fn sinc_kernel(omega: f64) -> Result<AnalyticKernel> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidArgument(format!("bandwidth {omega} must be positive")));
    }
    Ok(AnalyticKernel { spectrum: Spectrum::symmetric(omega)?, kind: KernelKind::Sinc { omega } })
}

/// K(x) = Σ_i (e^{2πixb_i} − e^{2πixa_i})/(2πix), K(0) = |Ω|.
pub fn indicator_kernel(spec: Spectrum) -> AnalyticKernel {
    AnalyticKernel { spectrum: spec, kind: KernelKind::Indicator }
}

impl AnalyticKernel {
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Bandwidth ω when this is the symmetric sinc kernel.
    pub fn omega(&self) -> Option<f64> {
        match self.kind {
            KernelKind::Sinc { omega } => Some(omega),
            KernelKind::Indicator => None,
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        match self.kind {
            KernelKind::Sinc { omega } => {
                if x == 0.0 {
                    Complex64::new(2.0 * omega, 0.0)
                } else {
                    Complex64::new((2.0 * PI * omega * x).sin() / (PI * x), 0.0)
                }
            }
            KernelKind::Indicator => {
                if x == 0.0 {
                    return Complex64::new(self.spectrum.measure(), 0.0);
                }
                // e^{πix(a+b)} sin(πx(b−a))/(πx), stable for narrow intervals
                self.spectrum
                    .parts
                    .iter()
                    .map(|&(a, w)| {
                        let phase = PI * x * (2.0 * a + w);
                        Complex64::from_polar((PI * x * w).sin() / (PI * x), phase)
                    })
                    .sum()
            }
        }
    }

    pub fn sample(&self, grid: &Grid) -> GridFunction {
        self.sample_shifted(grid, 0.0)
    }

    /// x ↦ K(x − center) on the grid.
    pub fn sample_shifted(&self, grid: &Grid, center: f64) -> GridFunction {
        GridFunction::from_fn(*grid, |x| self.eval(x - center)).expect("closed-form kernel values are finite")
    }

    /// ∫₀ᵗ K, available in closed form for the sinc kernel.
    pub fn primitive(&self, t: f64) -> Option<f64> {
        match self.kind {
            KernelKind::Sinc { omega } => Some(sine_integral(2.0 * PI * omega * t) / PI),
            KernelKind::Indicator => None,
        }
    }

    /// Upper bound for ‖K χ_{|y|>T}‖_{L_p}.
    ///
    /// The sinc kernel uses the envelope (1+4ω)/(1+|y|); general spectra use
    /// min(b−a, 1/(π|y|)) per interval together with Minkowski's inequality.
    pub fn tail_bound(&self, t: f64, p: f64) -> f64 {
        match self.kind {
            KernelKind::Sinc { omega } => {
                let c = 1.0 + 4.0 * omega;
                if p.is_infinite() {
                    c / (1.0 + t)
                } else if p <= 1.0 {
                    f64::INFINITY
                } else {
                    (2.0 * c.powf(p) * (1.0 + t).powf(1.0 - p) / (p - 1.0)).powf(1.0 / p)
                }
            }
            KernelKind::Indicator => self.spectrum.parts.iter().map(|&(_, w)| envelope_tail(w, t, p)).sum(),
        }
    }
}

/// ‖min(w, 1/(π|x|)) χ_{|x|>T}‖_{L_p}.
fn envelope_tail(w: f64, t: f64, p: f64) -> f64 {
    let knee = 1.0 / (PI * w);
    if p.is_infinite() {
        return w.min(1.0 / (PI * t));
    }
    if p <= 1.0 {
        return f64::INFINITY;
    }
    let decay = |from: f64| 2.0 * PI.powf(-p) * from.powf(1.0 - p) / (p - 1.0);
    let integral = if t >= knee { decay(t) } else { 2.0 * w.powf(p) * (knee - t) + decay(knee) };
    integral.powf(1.0 / p)
}

/// ξ ↦ Ŵ(ξ) for a candidate window.
pub trait Symbol {
    fn symbol(&self, xi: f64) -> f64;
}

/// W = F⁻¹ψ with ψ = 1 on Ω, 0 beyond distance `margin`, and a C∞ taper in between.
///
/// W is tabulated on a time grid four times wider than the caller's grid with the same spacing,
/// so that its slowly decaying tail is neither cut nor aliased where the caller looks.
#[derive(Debug, Clone)]
pub struct SmoothWindow {
    spectrum: Spectrum,
    margin: f64,
    grid: Grid,
    extended: GridFunction,
}

fn taper(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / t).exp();
        let b = (-1.0 / (1.0 - t)).exp();
        a / (a + b)
    }
}

fn window_symbol(spectrum: &Spectrum, margin: f64, xi: f64) -> f64 {
    let d = spectrum.distance(xi);
    if d == 0.0 {
        1.0
    } else if d >= margin {
        0.0
    } else {
        taper(1.0 - d / margin)
    }
}

const WINDOW_EXTENSION: usize = 4;

pub fn smooth_window(spec: Spectrum, margin: f64, grid: Grid) -> Result<SmoothWindow> {
    if !(margin.is_finite() && margin > 0.0) {
        return Err(Error::InvalidArgument(format!("margin {margin} must be positive")));
    }
    let rate = 1.0 / grid.spacing();
    let required = 2.0 * (spec.sup_abs() + margin);
    if rate <= required {
        return Err(Error::Nyquist { rate, required });
    }
    let ext = Grid::new(WINDOW_EXTENSION as f64 * grid.half_width(), grid.spacing())?;
    let n = ext.count();
    let period = 2.0 * ext.half_width();
    // W(x_j) = (1/2T) Σ_k ψ(k/2T) e^{2πi k x_j/2T}, and e^{2πi k x_j/2T} = (−1)^k e^{2πi kj/N}
    let mut buf: Vec<Complex64> = (0..n)
        .map(|idx| {
            let k = if idx < n / 2 { idx as i64 } else { idx as i64 - n as i64 };
            let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            Complex64::new(sign * window_symbol(&spec, margin, k as f64 / period) / period, 0.0)
        })
        .collect();
    FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
    let extended = GridFunction::new(ext, buf)?;
    Ok(SmoothWindow { spectrum: spec, margin, grid, extended })
}

impl SmoothWindow {
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// W on the caller's grid.
    pub fn values(&self) -> GridFunction {
        let n = self.grid.count();
        let offset = (self.extended.grid().count() - n) / 2;
        GridFunction::new(self.grid, self.extended.values()[offset..offset + n].to_vec())
            .expect("window values are finite")
    }

    /// W on the extended table.
    pub fn extended(&self) -> &GridFunction {
        &self.extended
    }

    /// W∗K on the caller's grid, with K in closed form and W over its whole table.
    pub fn reproduce(&self, k: &AnalyticKernel) -> Result<GridFunction> {
        let pc = ProfileConvolution::new(*self.extended.grid(), |x| k.eval(x))?;
        let full = pc.convolve(&self.extended)?;
        let n = self.grid.count();
        let offset = (full.grid().count() - n) / 2;
        GridFunction::new(self.grid, full.values()[offset..offset + n].to_vec())
    }

    /// ‖osc_{[−q, q]} W‖_{L_1} over the extended table.
    pub fn oscillation_l1(&self, q_half: f64) -> Result<f64> {
        let osc = oscillation(&self.extended, q_half)?;
        lebesgue_norm(&osc, 1.0, Weight::ConstantOne)
    }
}

impl Symbol for SmoothWindow {
    fn symbol(&self, xi: f64) -> f64 {
        window_symbol(&self.spectrum, self.margin, xi)
    }
}

fn offsets(grid: &Grid, q_half: f64) -> Result<usize> {
    let h = grid.spacing();
    if !(q_half >= h * (1.0 - 1e-12)) {
        return Err(Error::Resolution(format!("half width {q_half} is below the grid spacing {h}")));
    }
    Ok((q_half / h + 1e-9).floor() as usize)
}

/// osc_Q f(x) = max over grid offsets |u| ≤ q_half of |f(x+u) − f(x)|; offsets leaving the grid are skipped.
pub fn oscillation(f: &GridFunction, q_half: f64) -> Result<GridFunction> {
    let s = offsets(f.grid(), q_half)?;
    let v = f.values();
    let n = v.len();
    let out = (0..n)
        .map(|i| {
            let lo = i.saturating_sub(s);
            let hi = (i + s).min(n - 1);
            let m = (lo..=hi).map(|j| (v[j] - v[i]).norm()).fold(0.0, f64::max);
            Complex64::new(m, 0.0)
        })
        .collect();
    GridFunction::new(*f.grid(), out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    LeftTranslate,
    RightTranslate,
}

/// x ↦ max_{|u| ≤ q_half} |f(x+u)|. Both sides agree on ℝ.
pub fn local_max(f: &GridFunction, q_half: f64, _side: Side) -> Result<GridFunction> {
    let s = offsets(f.grid(), q_half)?;
    let v = f.values();
    let n = v.len();
    let out = (0..n)
        .map(|i| {
            let lo = i.saturating_sub(s);
            let hi = (i + s).min(n - 1);
            Complex64::new((lo..=hi).map(|j| v[j].norm()).fold(0.0, f64::max), 0.0)
        })
        .collect();
    GridFunction::new(*f.grid(), out)
}

/// Oscillation and local maximum of a closed-form kernel, with the sup taken over offsets
/// of h/refine (refine = 1 reproduces the grid-offset version exactly, without edge effects).
pub fn kernel_oscillation(k: &AnalyticKernel, grid: &Grid, q_half: f64, refine: usize) -> Result<(GridFunction, GridFunction)> {
    let refine = refine.max(1);
    let s = offsets(grid, q_half)? * refine;
    let fine = grid.spacing() / refine as f64;
    let n = grid.count();
    let fine_len = (n - 1) * refine + 2 * s + 1;
    let start = grid.point(0) - s as f64 * fine;
    let table: Vec<Complex64> = (0..fine_len).map(|m| k.eval(start + m as f64 * fine)).collect();
    let mut osc = Vec::with_capacity(n);
    let mut lmax = Vec::with_capacity(n);
    for i in 0..n {
        let centre = i * refine + s;
        let here = table[centre];
        let (mut o, mut l) = (0.0f64, 0.0f64);
        for v in &table[centre - s..=centre + s] {
            o = o.max((v - here).norm());
            l = l.max(v.norm());
        }
        osc.push(Complex64::new(o, 0.0));
        lmax.push(Complex64::new(l, 0.0));
    }
    Ok((GridFunction::new(*grid, osc)?, GridFunction::new(*grid, lmax)?))
}

/// Σ_k c_k sinc(a(x − t_k))^8 with a = πb/4, so the spectrum lies in [−b, b] and the
/// terms decay like |x|^{-8}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandLimited {
    band: f64,
    terms: Vec<(f64, Complex64)>,
}

impl BandLimited {
    pub fn new(band: f64, terms: Vec<(f64, Complex64)>) -> Result<Self> {
        if !(band.is_finite() && band > 0.0) {
            return Err(Error::InvalidArgument(format!("band {band} must be positive")));
        }
        if let Some(j) = terms.iter().position(|(t, c)| !t.is_finite() || !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite(j));
        }
        Ok(Self { band, terms })
    }

    /// `count` terms with centers uniform in [−spread, spread] and coefficients in the unit square.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, band: f64, count: usize, spread: f64) -> Result<Self> {
        let terms = (0..count)
            .map(|_| {
                let t = rng.gen_range(-spread..=spread);
                (t, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            })
            .collect();
        Self::new(band, terms)
    }

    pub fn band(&self) -> f64 {
        self.band
    }

    /// A with |f(y)| ≤ A/(1+|y|), from |sinc u|^8 ≤ min(1, 1/|u|).
    pub fn envelope(&self) -> f64 {
        let a = PI * self.band / 4.0;
        self.terms.iter().map(|&(t, c)| c.norm() * (1.0 + 1.0 / a) * (1.0 + t.abs())).sum()
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let a = PI * self.band / 4.0;
        self.terms
            .iter()
            .map(|&(t, c)| {
                let u = a * (x - t);
                let s = if u == 0.0 { 1.0 } else { u.sin() / u };
                c * s.powi(8)
            })
            .sum()
    }

    pub fn sample(&self, grid: &Grid) -> GridFunction {
        GridFunction::from_fn(*grid, |x| self.eval(x)).expect("finite terms give finite values")
    }
}
