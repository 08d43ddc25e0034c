//! Sampling and atomic expansions on ℝ: Shannon sampling, Banach-frame reconstruction from
//! samples and atomic decomposition through the smooth window.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::discretization::{synthesize, CoefSeq};
use crate::error::{Error, Result};
use crate::grid::{lebesgue_norm, Grid, GridFunction, ProfileConvolution, Weight};
use crate::kernels::{AnalyticKernel, BandLimited, SmoothWindow};

/// Trials behind the r ≠ 2 estimate of ‖RC_K‖.
pub const RC_TRIALS: usize = 100;
const RC_SEED: u64 = 0x0c0b;
/// Tolerance for W∗K = K.
pub const WINDOW_TOL: f64 = 1e-8;

/// Sorted sampling points x_i together with their half-open Voronoi cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplingFamily {
    points: Vec<f64>,
}

impl SamplingFamily {
    pub fn new(mut points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument("a sampling family needs at least two points".into()));
        }
        if let Some(i) = points.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        points.sort_by(|a, b| a.total_cmp(b));
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("sampling points must be distinct".into()));
        }
        Ok(Self { points })
    }

    /// δℤ ∩ [−extent, extent].
    pub fn uniform(spacing: f64, extent: f64) -> Result<Self> {
        if !(spacing.is_finite() && spacing > 0.0 && extent >= spacing) {
            return Err(Error::InvalidArgument(format!("spacing {spacing} and extent {extent} give no family")));
        }
        let k = (extent / spacing + 1e-9).floor() as i64;
        Self::new((-k..=k).map(|i| i as f64 * spacing).collect())
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Smallest gap.
    pub fn separation(&self) -> f64 {
        self.points.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }

    /// Largest gap.
    pub fn density(&self) -> f64 {
        self.points.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    /// max_x #{i : x_i ∈ x + [−1/2, 1/2]}.
    pub fn covering_count(&self) -> usize {
        let mut best = 0;
        let mut hi = 0;
        for (lo, &x) in self.points.iter().enumerate() {
            while hi < self.points.len() && self.points[hi] <= x + 1.0 {
                hi += 1;
            }
            best = best.max(hi - lo);
        }
        best
    }

    /// [m_{i−1}, m_i) with m_i the midpoints; the outer cells are mirrored.
    pub fn cells(&self) -> Vec<(f64, f64)> {
        let n = self.points.len();
        let x = &self.points;
        (0..n)
            .map(|i| {
                let lo = if i == 0 { x[0] - (x[1] - x[0]) / 2.0 } else { (x[i - 1] + x[i]) / 2.0 };
                let hi = if i + 1 == n { x[n - 1] + (x[n - 1] - x[n - 2]) / 2.0 } else { (x[i] + x[i + 1]) / 2.0 };
                (lo, hi)
            })
            .collect()
    }

    /// Largest distance from a point to the ends of its cell.
    pub fn cell_reach(&self) -> f64 {
        self.cells()
            .iter()
            .zip(&self.points)
            .map(|(&(lo, hi), &x)| (x - lo).max(hi - x))
            .fold(0.0, f64::max)
    }

    fn grid_indices(&self, grid: &Grid) -> Result<Vec<usize>> {
        self.points.iter().map(|&x| grid.index_of(x).ok_or(Error::NotGridAligned(x))).collect()
    }

    fn as_coefs(&self, values: Vec<Complex64>) -> Result<CoefSeq> {
        CoefSeq::new((0..self.points.len() as i64).collect(), self.points.clone(), values)
    }
}

/// Largest k with k/(2R) inside the grid [−T, T).
pub fn max_sample_count(grid: &Grid, rate: f64) -> usize {
    ((grid.half_width() * 2.0 * rate - 1e-9).ceil() - 1.0).max(0.0) as usize
}

/// c_k = f(k/(2R)) for |k| ≤ count.
pub fn sample_op(f: &GridFunction, rate: f64, count: usize) -> Result<CoefSeq> {
    if !(rate.is_finite() && rate > 0.0) {
        return Err(Error::InvalidArgument(format!("rate {rate} must be positive")));
    }
    let grid = f.grid();
    let max = max_sample_count(grid, rate);
    if count > max {
        return Err(Error::Resolution(format!("{count} samples per side leave the grid; at most {max} fit")));
    }
    let c = count as i64;
    let mut points = Vec::with_capacity(2 * count + 1);
    let mut values = Vec::with_capacity(2 * count + 1);
    for k in -c..=c {
        let x = k as f64 / (2.0 * rate);
        let j = grid.index_of(x).ok_or(Error::NotGridAligned(x))?;
        points.push(x);
        values.push(f.values()[j]);
    }
    CoefSeq::new((-c..=c).collect(), points, values)
}

/// Σ_k c_k K(· − k/(2R)) on the grid.
pub fn synth_op(c: &CoefSeq, rate: f64, k: &AnalyticKernel, grid: &Grid) -> Result<GridFunction> {
    for (&i, &x) in c.indices().iter().zip(c.points()) {
        if (x - i as f64 / (2.0 * rate)).abs() > 1e-12 * (1.0 + x.abs()) {
            return Err(Error::InvalidArgument(format!("point {x} is not {i}/(2R)")));
        }
    }
    synthesize(grid, k, c)
}

#[derive(Debug, Clone, Serialize)]
pub struct ShannonReport {
    pub rate: f64,
    pub count: usize,
    /// ‖(2R)^{-1}·Synth(Samp f) − f‖_{L_2}/‖f‖_{L_2} on the grid.
    pub rel_error: f64,
    /// Bound on the relative contribution of the samples beyond the grid.
    pub tail_bound: Option<f64>,
}

/// Σ_{k > count} 1/((1+s_k)(1+s_k−x)), s_k = k/(2R), bounded by its first term plus an integral.
fn one_sided_tail(x: f64, rate: f64, count: usize) -> f64 {
    let s0 = (count + 1) as f64 / (2.0 * rate);
    let first = 1.0 / ((1.0 + s0) * (1.0 + s0 - x));
    let integral = if x.abs() < 1e-12 {
        1.0 / (1.0 + s0)
    } else {
        ((1.0 + s0) / (1.0 + s0 - x)).ln() / x
    };
    first + 2.0 * rate * integral
}

/// Runs the sampling identity (2R)^{-1}·Synth∘Samp = id for a closed-form f.
///
/// The samples f(k/(2R)) are taken on [−reach, reach) and the synthesis is compared with f on
/// `grid`. `envelope` is an A with |f(y)| ≤ A/(1+|y|) on ℝ; with it and the kernel envelope
/// (1+4ω)/(1+|y|) the samples beyond the reach are bounded in closed form.
pub fn shannon_identity(
    f: impl Fn(f64) -> Complex64,
    grid: &Grid,
    rate: f64,
    k: &AnalyticKernel,
    reach: f64,
    envelope: Option<f64>,
) -> Result<ShannonReport> {
    let sup = k.spectrum().sup_abs();
    if !(rate >= sup) {
        return Err(Error::Nyquist { rate: 2.0 * rate, required: 2.0 * sup });
    }
    if !(reach >= grid.half_width()) {
        return Err(Error::InvalidArgument(format!("reach {reach} is inside the grid")));
    }
    let wide = Grid::new(reach, grid.spacing())?;
    let offset = (wide.count() - grid.count()) / 2;
    if wide.point(offset) != grid.point(0) {
        return Err(Error::InvalidArgument(format!("reach {reach} does not extend the grid symmetrically")));
    }
    let count = max_sample_count(&wide, rate);
    let samples = sample_op(&GridFunction::from_fn(wide, &f)?, rate, count)?;
    let synth = synth_op(&samples, rate, k, &wide)?;
    let s = GridFunction::new(*grid, synth.values()[offset..offset + grid.count()].to_vec())?
        .scale(Complex64::new(0.5 / rate, 0.0))?;
    let target = GridFunction::from_fn(*grid, &f)?;
    let norm = lebesgue_norm(&target, 2.0, Weight::ConstantOne)?;
    if norm == 0.0 {
        return Err(Error::InvalidArgument("f vanishes on the grid".into()));
    }
    let rel_error = lebesgue_norm(&s.sub(&target)?, 2.0, Weight::ConstantOne)? / norm;
    let tail_bound = match (envelope, k.omega()) {
        (Some(a), Some(omega)) => {
            let e = 1.0 + 4.0 * omega;
            let bound = GridFunction::from_real_fn(*grid, |x| {
                a * e * (one_sided_tail(x, rate, count) + one_sided_tail(-x, rate, count))
            })?;
            Some(lebesgue_norm(&bound, 2.0, Weight::ConstantOne)? / norm)
        }
        _ => None,
    };
    Ok(ShannonReport { rate, count, rel_error, tail_bound })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RcNorm {
    pub value: f64,
    /// False when `value` is a lower estimate from random trials.
    pub certified: bool,
}

/// ‖f ↦ f∗K‖ on L_r: exactly 1 at r = 2, otherwise the largest ratio ‖f∗K‖_r/‖f‖_r
/// over seeded random step and band-limited functions.
pub fn rc_k_norm(k: &AnalyticKernel, r: f64, trials: usize) -> Result<RcNorm> {
    if !(r >= 1.0) {
        return Err(Error::Domain(format!("r = {r} must be at least 1")));
    }
    if r == 2.0 {
        return Ok(RcNorm { value: 1.0, certified: true });
    }
    let grid = Grid::new(16.0, 1.0 / 32.0)?;
    let pc = ProfileConvolution::new(grid, |x| k.eval(x))?;
    let mut rng = ChaCha8Rng::seed_from_u64(RC_SEED);
    let band = 0.8 * k.spectrum().sup_abs().min(k.spectrum().measure() / 2.0);
    let mut best: f64 = 0.0;
    for t in 0..trials.max(1) {
        let f = if t % 2 == 0 {
            let steps: Vec<(f64, f64, f64)> = (0..4)
                .map(|_| {
                    let a = rng.gen_range(-6.0..6.0);
                    (a, a + rng.gen_range(0.05..3.0), rng.gen_range(-1.0..1.0))
                })
                .collect();
            GridFunction::from_real_fn(grid, |x| steps.iter().filter(|s| x >= s.0 && x < s.1).map(|s| s.2).sum())?
        } else {
            BandLimited::random(&mut rng, band.max(1e-3), 3, 4.0)?.sample(&grid)
        };
        let den = lebesgue_norm(&f, r, Weight::ConstantOne)?;
        if den > 0.0 {
            best = best.max(lebesgue_norm(&pc.convolve(&f)?, r, Weight::ConstantOne)? / den);
        }
    }
    Ok(RcNorm { value: best, certified: false })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContractionCert {
    pub c: f64,
    /// ‖osc_U W‖_{L_1}, U = [−bupu_half, bupu_half].
    pub c_u: f64,
    pub rc_k_norm: f64,
    pub rc_certified: bool,
    pub bupu_half: f64,
    pub r: f64,
    pub granted: bool,
}

/// max |W∗K − K| relative to max |K| on the window's grid.
pub fn window_defect(k: &AnalyticKernel, w: &SmoothWindow) -> Result<f64> {
    let reproduced = w.reproduce(k)?;
    let exact = k.sample(w.grid());
    Ok(reproduced.sub(&exact)?.max_abs() / exact.max_abs())
}

/// c = C_U · ‖RC_K‖ with C_U from the oscillation of W; the certificate is granted when c < 1.
pub fn contraction_cert(k: &AnalyticKernel, w: &SmoothWindow, bupu_half: f64, r: f64) -> Result<ContractionCert> {
    let h = w.grid().spacing();
    if !(bupu_half >= h) {
        return Err(Error::Resolution(format!("cell half width {bupu_half} is below the grid spacing {h}")));
    }
    let defect = window_defect(k, w)?;
    if !(defect <= WINDOW_TOL) {
        return Err(Error::WindowMismatch(defect));
    }
    let c_u = w.oscillation_l1(bupu_half)?;
    let rc = rc_k_norm(k, r, RC_TRIALS)?;
    let c = c_u * rc.value;
    Ok(ContractionCert { c, c_u, rc_k_norm: rc.value, rc_certified: rc.certified, bupu_half, r, granted: c < 1.0 })
}

fn check_cert(cert: &ContractionCert, x: &SamplingFamily) -> Result<()> {
    if !cert.granted {
        return Err(Error::ContractionRefused { c: cert.c });
    }
    let reach = x.cell_reach();
    if reach > cert.bupu_half * (1.0 + 1e-12) {
        return Err(Error::Resolution(format!("cells reach {reach} beyond the certified half width {}", cert.bupu_half)));
    }
    Ok(())
}

fn rel(a: f64, b: f64) -> f64 {
    if b > 0.0 {
        a / b
    } else {
        a
    }
}

/// One row of an error curve: `iter,error_r,ratio`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub iter: usize,
    pub error_r: f64,
    pub ratio: Option<f64>,
}

fn curve(errors: &[f64]) -> Vec<CurvePoint> {
    errors
        .iter()
        .enumerate()
        .map(|(i, &e)| CurvePoint {
            iter: i + 1,
            error_r: e,
            ratio: (i > 0 && errors[i - 1] > 0.0).then(|| e / errors[i - 1]),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameReconstruction {
    #[serde(skip)]
    pub recon: GridFunction,
    /// u = Σ_l a_l (χ_{cell_l} ∗ K).
    pub coeffs: CoefSeq,
    pub iterations: usize,
    pub converged: bool,
    /// ‖u_m − f‖_r / ‖f‖_r for m = 1, 2, ...
    pub error_curve: Vec<CurvePoint>,
    /// ‖u_{m+1} − u_m‖_r / ‖u_{m+1}‖_r.
    pub step_curve: Vec<f64>,
}

/// Groups cells with equal offsets (x − lo, hi − x) so each group is one profile convolution.
struct CellProfiles {
    groups: Vec<(ProfileConvolution, Vec<(usize, usize)>)>,
}

impl CellProfiles {
    fn new(grid: &Grid, x: &SamplingFamily, idx: &[usize], prim: &impl Fn(f64) -> f64) -> Result<Self> {
        let mut keys: Vec<((f64, f64), Vec<(usize, usize)>)> = Vec::new();
        for (l, (&(lo, hi), &p)) in x.cells().iter().zip(x.points()).enumerate() {
            let key = (p - lo, hi - p);
            match keys.iter_mut().find(|(k, _)| (k.0 - key.0).abs() < 1e-12 && (k.1 - key.1).abs() < 1e-12) {
                Some((_, members)) => members.push((l, idx[l])),
                None => keys.push((key, vec![(l, idx[l])])),
            }
        }
        let groups = keys
            .into_iter()
            .map(|((left, right), members)| {
                let pc = ProfileConvolution::new(*grid, |t| Complex64::new(prim(t + left) - prim(t - right), 0.0))?;
                Ok((pc, members))
            })
            .collect::<Result<_>>()?;
        Ok(Self { groups })
    }

    fn synthesize(&self, grid: &Grid, a: &[Complex64]) -> Result<GridFunction> {
        let mut out = GridFunction::zeros(*grid);
        for (pc, members) in &self.groups {
            let atoms: Vec<(usize, Complex64)> = members.iter().map(|&(l, j)| (j, a[l])).collect();
            out = out.add(&pc.synthesize(&atoms)?)?;
        }
        Ok(out)
    }
}

/// Recovers f from its samples on X by the Neumann series for A = RC_K ∘ Synth_Ψ ∘ Samp.
///
/// With u_m = Σ_l a_l (χ_{cell_l} ∗ K) the Richardson step u_{m+1} = Af + (I − A)u_m becomes
/// a_{m+1} = s + a_m − Φ a_m with s_i = f(x_i) and Φ_{il} = (χ_{cell_l} ∗ K)(x_i).
pub fn banach_frame_reconstruct(
    f: &GridFunction,
    x: &SamplingFamily,
    k: &AnalyticKernel,
    cert: &ContractionCert,
    r: f64,
    tol: f64,
    max_iter: usize,
) -> Result<FrameReconstruction> {
    check_cert(cert, x)?;
    if !(r >= 1.0) {
        return Err(Error::Domain(format!("r = {r} must be at least 1")));
    }
    let primitive = |t: f64| k.primitive(t).expect("checked");
    if k.primitive(0.0).is_none() {
        return Err(Error::InvalidArgument("the kernel has no closed-form primitive".into()));
    }
    let grid = *f.grid();
    let idx = x.grid_indices(&grid)?;
    let samples: Vec<Complex64> = idx.iter().map(|&j| f.values()[j]).collect();
    let cells = x.cells();
    let pts = x.points();
    let m = pts.len();
    let phi: Vec<f64> = (0..m * m)
        .map(|e| {
            let (i, l) = (e / m, e % m);
            primitive(pts[i] - cells[l].0) - primitive(pts[i] - cells[l].1)
        })
        .collect();
    let profiles = CellProfiles::new(&grid, x, &idx, &primitive)?;
    let f_norm = lebesgue_norm(f, r, Weight::ConstantOne)?;

    let mut a = vec![Complex64::new(0.0, 0.0); m];
    let mut u = GridFunction::zeros(grid);
    let mut errors = Vec::new();
    let mut steps = Vec::new();
    let mut converged = false;
    for _ in 0..max_iter {
        let next: Vec<Complex64> = (0..m)
            .map(|i| {
                let row = &phi[i * m..(i + 1) * m];
                let pa: Complex64 = row.iter().zip(&a).map(|(p, v)| v * p).sum();
                samples[i] + a[i] - pa
            })
            .collect();
        let u_next = profiles.synthesize(&grid, &next)?;
        let step = lebesgue_norm(&u_next.sub(&u)?, r, Weight::ConstantOne)?;
        let size = lebesgue_norm(&u_next, r, Weight::ConstantOne)?;
        errors.push(rel(lebesgue_norm(&u_next.sub(f)?, r, Weight::ConstantOne)?, f_norm));
        steps.push(rel(step, size));
        a = next;
        u = u_next;
        if step <= tol * size {
            converged = true;
            break;
        }
    }
    Ok(FrameReconstruction {
        recon: u,
        coeffs: x.as_coefs(a)?,
        iterations: errors.len(),
        converged,
        error_curve: curve(&errors),
        step_curve: steps,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct AtomicDecomposition {
    /// f ≈ Σ_i c_i K(· − x_i).
    pub coeffs: CoefSeq,
    /// ‖Synth c − f‖_r / ‖f‖_r.
    pub recon_error: f64,
    pub iterations: usize,
    pub converged: bool,
    pub error_curve: Vec<CurvePoint>,
}

/// Cell integrals ∫_{cell_i} v as left Riemann sums over the grid points inside each cell.
fn analysis(v: &GridFunction, cells: &[(f64, f64)]) -> Vec<Complex64> {
    let grid = v.grid();
    let h = grid.spacing();
    let mut prefix = Vec::with_capacity(grid.count() + 1);
    prefix.push(Complex64::new(0.0, 0.0));
    for val in v.values() {
        prefix.push(prefix.last().unwrap() + val);
    }
    let first = |x: f64| ((x - grid.point(0)) / h - 1e-9).ceil().clamp(0.0, grid.count() as f64) as usize;
    cells.iter().map(|&(lo, hi)| (prefix[first(hi)] - prefix[first(lo)]) * h).collect()
}

/// Coefficients with Synth_{X,K} c = f from the Neumann series for B = Synth_{X,K} ∘ Ana_{X,Ψ}:
/// v_{m+1} = f + (I − B) v_m and c_m = Ana v_m.
#[allow(clippy::too_many_arguments)]
pub fn atomic_decomp(
    f: &GridFunction,
    x: &SamplingFamily,
    k: &AnalyticKernel,
    w: &SmoothWindow,
    cert: &ContractionCert,
    r: f64,
    tol: f64,
    max_iter: usize,
) -> Result<AtomicDecomposition> {
    check_cert(cert, x)?;
    let defect = window_defect(k, w)?;
    if !(defect <= WINDOW_TOL) {
        return Err(Error::WindowMismatch(defect));
    }
    let grid = *f.grid();
    let idx = x.grid_indices(&grid)?;
    let cells = x.cells();
    let pc = ProfileConvolution::new(grid, |t| k.eval(t))?;
    let f_norm = lebesgue_norm(f, r, Weight::ConstantOne)?;
    let mut v = f.clone();
    let mut errors = Vec::new();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); x.len()];
    let mut converged = false;
    for _ in 0..max_iter {
        coeffs = analysis(&v, &cells);
        let atoms: Vec<(usize, Complex64)> = idx.iter().copied().zip(coeffs.iter().copied()).collect();
        let bv = pc.synthesize(&atoms)?;
        let defect = bv.sub(f)?;
        let e = rel(lebesgue_norm(&defect, r, Weight::ConstantOne)?, f_norm);
        errors.push(e);
        if e <= tol {
            converged = true;
            break;
        }
        v = v.sub(&defect)?;
    }
    Ok(AtomicDecomposition {
        coeffs: x.as_coefs(coeffs)?,
        recon_error: *errors.last().unwrap_or(&f64::INFINITY),
        iterations: errors.len(),
        converged,
        error_curve: curve(&errors),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{sinc_kernel, smooth_window, Spectrum};

    fn setup() -> (Grid, AnalyticKernel, SmoothWindow) {
        let grid = Grid::new(32.0, 1.0 / 64.0).unwrap();
        let k = sinc_kernel(0.5).unwrap();
        let w = smooth_window(Spectrum::symmetric(0.5).unwrap(), 0.25, grid).unwrap();
        (grid, k, w)
    }

    #[test]
    fn family_geometry() {
        let x = SamplingFamily::uniform(0.125, 1.0).unwrap();
        assert_eq!(x.len(), 17);
        assert_eq!(x.separation(), 0.125);
        assert_eq!(x.density(), 0.125);
        assert_eq!(x.covering_count(), 9);
        assert_eq!(x.cells()[0], (-1.0625, -0.9375));
        assert_eq!(x.cell_reach(), 0.0625);
        let y = SamplingFamily::new(vec![0.0, 1.0, 0.25]).unwrap();
        assert_eq!(y.points(), &[0.0, 0.25, 1.0]);
        assert_eq!(y.cells(), vec![(-0.125, 0.125), (0.125, 0.625), (0.625, 1.375)]);
        assert!(SamplingFamily::new(vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn sampling_the_kernel_at_the_integers_gives_a_delta() {
        let grid = Grid::new(8.0, 1.0 / 8.0).unwrap();
        assert_eq!(max_sample_count(&grid, 0.5), 7);
        let c = sample_op(&sinc_kernel(0.5).unwrap().sample(&grid), 0.5, 7).unwrap();
        for (&i, v) in c.indices().iter().zip(c.values()) {
            let expect = if i == 0 { 1.0 } else { 0.0 };
            assert!((v - Complex64::new(expect, 0.0)).norm() < 1e-16);
        }
        assert!(sample_op(&sinc_kernel(0.5).unwrap().sample(&grid), 0.5, 8).is_err());
        assert!(matches!(sample_op(&sinc_kernel(0.5).unwrap().sample(&grid), 0.3, 2), Err(Error::NotGridAligned(_))));
    }

    #[test]
    fn delta_synthesizes_the_kernel() {
        let grid = Grid::new(4.0, 1.0 / 16.0).unwrap();
        let k = sinc_kernel(0.5).unwrap();
        let c = CoefSeq::new(vec![-1, 0, 1], vec![-1.0, 0.0, 1.0], vec![0.0.into(), 1.0.into(), 0.0.into()]).unwrap();
        let s = synth_op(&c, 0.5, &k, &grid).unwrap();
        assert!(s.sub(&k.sample(&grid)).unwrap().max_abs() < 1e-15);
        let bad = CoefSeq::new(vec![1], vec![0.5], vec![1.0.into()]).unwrap();
        assert!(synth_op(&bad, 0.5, &k, &grid).is_err());
    }

    #[test]
    fn undersampling_is_refused() {
        let (grid, k, _) = setup();
        let f = |x: f64| k.eval(x);
        assert!(matches!(shannon_identity(f, &grid, 0.25, &k, 64.0, None), Err(Error::Nyquist { .. })));
        assert!(shannon_identity(f, &grid, 0.5, &k, 16.0, None).is_err());
        assert!(shannon_identity(f, &grid, 0.5, &k, 64.0, None).unwrap().rel_error < 1e-14);
    }

    #[test]
    fn rc_norm_is_one_on_l2_and_estimated_elsewhere() {
        let k = sinc_kernel(0.5).unwrap();
        assert_eq!(rc_k_norm(&k, 2.0, 1).unwrap(), RcNorm { value: 1.0, certified: true });
        let est = rc_k_norm(&k, 4.0, 20).unwrap();
        assert!(!est.certified);
        assert!(est.value >= 1.0 - 1e-6);
    }

    #[test]
    fn oscillation_constant_shrinks_with_the_cell() {
        let (_, k, w) = setup();
        let c: Vec<f64> = [0.5, 0.25, 0.125]
            .iter()
            .map(|&b| contraction_cert(&k, &w, b, 2.0).unwrap().c_u)
            .collect();
        assert!(c[0] > c[1] && c[1] > c[2]);
        let cert = contraction_cert(&k, &w, 0.125, 2.0).unwrap();
        assert!(cert.granted);
        assert_eq!(cert.c, cert.c_u);
        assert!(!contraction_cert(&k, &w, 0.5, 2.0).unwrap().granted);
    }

    #[test]
    fn refused_certificate_blocks_reconstruction() {
        let (grid, k, w) = setup();
        let cert = contraction_cert(&k, &w, 0.5, 2.0).unwrap();
        let x = SamplingFamily::uniform(0.125, 16.0).unwrap();
        let f = k.sample(&grid);
        assert!(matches!(
            banach_frame_reconstruct(&f, &x, &k, &cert, 2.0, 1e-8, 10),
            Err(Error::ContractionRefused { .. })
        ));
        assert!(matches!(atomic_decomp(&f, &x, &k, &w, &cert, 2.0, 1e-8, 10), Err(Error::ContractionRefused { .. })));
    }

    #[test]
    fn zero_is_reconstructed_at_once() {
        let (grid, k, w) = setup();
        let cert = contraction_cert(&k, &w, 0.125, 2.0).unwrap();
        let x = SamplingFamily::uniform(0.125, 16.0).unwrap();
        let out = banach_frame_reconstruct(&GridFunction::zeros(grid), &x, &k, &cert, 2.0, 1e-8, 10).unwrap();
        assert_eq!(out.iterations, 1);
        assert!(out.converged);
        assert_eq!(out.recon.max_abs(), 0.0);
    }

    #[test]
    fn cells_wider_than_the_certificate_are_rejected() {
        let (grid, k, w) = setup();
        let cert = contraction_cert(&k, &w, 0.125, 2.0).unwrap();
        let x = SamplingFamily::uniform(0.5, 16.0).unwrap();
        assert!(matches!(
            banach_frame_reconstruct(&k.sample(&grid), &x, &k, &cert, 2.0, 1e-8, 10),
            Err(Error::Resolution(_))
        ));
    }

    #[test]
    fn analysis_integrates_half_open_cells() {
        let grid = Grid::new(2.0, 0.25).unwrap();
        let one = GridFunction::from_real_fn(grid, |_| 1.0).unwrap();
        let c = analysis(&one, &[(-0.5, 0.5), (0.5, 1.0), (-3.0, -1.5)]);
        assert_eq!(c, vec![1.0.into(), 0.5.into(), 0.5.into()]);
    }
}
