//! Uniform grids on [-T, T), sampled functions, weighted norms and convolution.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ALIGN_TOL: f64 = 1e-9;
const MAX_POINTS: usize = 1 << 26;

/// Uniform grid x_j = -T + j h, j = 0..count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    half_width: f64,
    spacing: f64,
    count: usize,
}

impl Grid {
    pub fn new(half_width: f64, spacing: f64) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid(format!("half width {half_width} must be positive")));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidGrid(format!("spacing {spacing} must be positive")));
        }
        let ratio = 2.0 * half_width / spacing;
        let count = ratio.round();
        if (ratio - count).abs() > ALIGN_TOL * ratio.max(1.0) {
            return Err(Error::InvalidGrid(format!("2T/h = {ratio} is not an integer")));
        }
        if count < 2.0 || count > MAX_POINTS as f64 {
            return Err(Error::InvalidGrid(format!("point count {count} out of range")));
        }
        let count = count as usize;
        if count % 2 != 0 {
            return Err(Error::InvalidGrid(format!("point count {count} must be even")));
        }
        Ok(Grid { half_width, spacing, count })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn count(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn point(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.spacing
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |j| self.point(j))
    }

    /// Largest frequency resolved without aliasing, 1/(2h).
    pub fn nyquist(&self) -> f64 {
        0.5 / self.spacing
    }

    /// Number of grid steps in `b`, if `b` is an integer multiple of h.
    pub fn steps(&self, b: f64) -> Option<i64> {
        let s = b / self.spacing;
        let r = s.round();
        if (s - r).abs() <= ALIGN_TOL * s.abs().max(1.0) {
            Some(r as i64)
        } else {
            None
        }
    }

    /// Position of `x` as an index in 0..=count (count itself is the right edge T).
    pub fn position(&self, x: f64) -> Option<usize> {
        let s = self.steps(x + self.half_width)?;
        if s < 0 || s as usize > self.count {
            None
        } else {
            Some(s as usize)
        }
    }

    /// Index of the grid point equal to `x`.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        self.position(x).filter(|&j| j < self.count)
    }

    fn same_as(&self, other: &Grid) -> bool {
        self.count == other.count
            && (self.spacing - other.spacing).abs() <= 1e-15 * self.spacing
            && (self.half_width - other.half_width).abs() <= 1e-15 * self.half_width
    }
}

/// Complex samples of a function on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.count {
            return Err(Error::InvalidGrid(format!(
                "{} values for {} grid points",
                values.len(),
                grid.count
            )));
        }
        check_finite(&values)?;
        Ok(GridFunction { grid, values })
    }

    pub fn zeros(grid: Grid) -> Self {
        GridFunction { grid, values: vec![Complex64::new(0.0, 0.0); grid.count] }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid.points().map(f).collect();
        Self::new(grid, values)
    }

    pub fn from_real_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn scale(&self, c: Complex64) -> Result<Self> {
        Self::new(self.grid, self.values.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, other: &GridFunction) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridFunction) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &GridFunction, op: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if !self.grid.same_as(&other.grid) {
            return Err(Error::GridMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| op(a, b)).collect();
        Self::new(self.grid, values)
    }

    pub fn abs(&self) -> Self {
        GridFunction {
            grid: self.grid,
            values: self.values.iter().map(|v| Complex64::new(v.norm(), 0.0)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// ‖self − reference‖₂ / ‖reference‖₂ (absolute error when the reference vanishes).
    pub fn rel_l2_error(&self, reference: &GridFunction) -> Result<f64> {
        let diff = self.sub(reference)?;
        let num = lebesgue_norm(&diff, 2.0, Weight::ConstantOne)?;
        let den = lebesgue_norm(reference, 2.0, Weight::ConstantOne)?;
        Ok(if den > 0.0 { num / den } else { num })
    }
}

fn check_finite(values: &[Complex64]) -> Result<()> {
    match values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        Some(j) => Err(Error::NonFinite(j)),
        None => Ok(()),
    }
}

/// The two admissible weight families.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "a", rename_all = "snake_case")]
pub enum Weight {
    ConstantOne,
    Polynomial(f64),
}

impl Weight {
    pub fn polynomial(a: f64) -> Result<Self> {
        if a.is_finite() && a >= 0.0 {
            Ok(Weight::Polynomial(a))
        } else {
            Err(Error::InvalidArgument(format!("weight exponent {a} must be nonnegative")))
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Weight::ConstantOne => 1.0,
            Weight::Polynomial(a) => (1.0 + x.abs()).powf(a),
        }
    }

    pub fn exponent(&self) -> f64 {
        match *self {
            Weight::ConstantOne => 0.0,
            Weight::Polynomial(a) => a,
        }
    }

    /// Whether m(x+y) ≤ w(x) m(y) for all x, y. Within these families that is a_m ≤ a_w.
    pub fn is_moderate(m: Weight, w: Weight) -> bool {
        m.exponent() <= w.exponent()
    }

    /// sup of the weight over [−q_half, q_half].
    pub fn sup_on_cube(&self, q_half: f64) -> f64 {
        self.eval(q_half)
    }

    pub fn name(&self) -> String {
        match *self {
            Weight::ConstantOne => "constant_one".into(),
            Weight::Polynomial(a) => format!("polynomial({a})"),
        }
    }
}

/// Weighted Lebesgue norm for any p ≥ 1 (p = ∞ allowed).
pub fn lebesgue_norm(f: &GridFunction, p: f64, w: Weight) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("p = {p} must be at least 1")));
    }
    check_finite(&f.values)?;
    let grid = f.grid;
    Ok(weighted_norm(&f.values, |j| grid.point(j), grid.spacing, p, w))
}

/// Weighted norm of the L_p spaces with p > 1, as a Riemann sum.
pub fn lp_norm(f: &GridFunction, p: f64, w: Weight) -> Result<f64> {
    if !(p > 1.0) {
        return Err(Error::Domain(format!("p = {p} must exceed 1")));
    }
    lebesgue_norm(f, p, w)
}

/// (Σ |w(x_j) v_j|^p · cell)^{1/p}, or the weighted max when p = ∞.
pub(crate) fn weighted_norm(
    values: &[Complex64],
    position: impl Fn(usize) -> f64,
    cell: f64,
    p: f64,
    w: Weight,
) -> f64 {
    let scaled: Vec<f64> = values
        .iter()
        .enumerate()
        .map(|(j, v)| v.norm() * w.eval(position(j)))
        .collect();
    let top = scaled.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 || p.is_infinite() {
        return top;
    }
    let sum: f64 = scaled.iter().map(|&a| (a / top).powf(p)).sum();
    top * (sum * cell).powf(1.0 / p)
}

/// Exponent in [1, ∞], either exact rational or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Exponent {
    Ratio(u64, u64),
    Infinite,
}

impl Exponent {
    pub fn value(&self) -> f64 {
        match *self {
            Exponent::Ratio(a, b) => a as f64 / b as f64,
            Exponent::Infinite => f64::INFINITY,
        }
    }

    /// 1/e as a fraction (num, den).
    fn reciprocal(&self) -> (i128, i128) {
        match *self {
            Exponent::Ratio(a, b) => (b as i128, a as i128),
            Exponent::Infinite => (0, 1),
        }
    }
}

/// (p, q, r) with 1 + 1/p = 1/q + 1/r, the Young relation between output, first and second factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentTriple {
    pub p: f64,
    pub q: f64,
    pub r: f64,
}

impl ExponentTriple {
    pub fn new(p: f64, q: f64, r: f64) -> Result<Self> {
        for e in [p, q, r] {
            if !(e >= 1.0) {
                return Err(Error::Domain(format!("exponent {e} outside [1, ∞]")));
            }
        }
        let inv = |e: f64| if e.is_infinite() { 0.0 } else { 1.0 / e };
        if (1.0 + inv(p) - inv(q) - inv(r)).abs() > 1e-12 {
            return Err(Error::ExponentTriple { p, q, r });
        }
        Ok(ExponentTriple { p, q, r })
    }

    /// Exact check in integer arithmetic.
    pub fn exact(p: Exponent, q: Exponent, r: Exponent) -> Result<Self> {
        for e in [p, q, r] {
            if let Exponent::Ratio(a, b) = e {
                if b == 0 || a < b {
                    return Err(Error::Domain(format!("exponent {a}/{b} outside [1, ∞]")));
                }
            }
        }
        let (pn, pd) = p.reciprocal();
        let (qn, qd) = q.reciprocal();
        let (rn, rd) = r.reciprocal();
        let lhs = pd * qd * rd + pn * qd * rd;
        let rhs = qn * pd * rd + rn * pd * qd;
        if lhs != rhs {
            return Err(Error::ExponentTriple { p: p.value(), q: q.value(), r: r.value() });
        }
        Ok(ExponentTriple { p: p.value(), q: q.value(), r: r.value() })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvolutionMethod {
    Fft,
    Direct,
}

fn padded_len(n: usize) -> Result<usize> {
    n.checked_next_power_of_two()
        .filter(|&l| l <= 4 * MAX_POINTS)
        .ok_or(Error::PaddedLength(n))
}

fn fft_pair(len: usize) -> (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) {
    let mut planner = FftPlanner::new();
    (planner.plan_fft_forward(len), planner.plan_fft_inverse(len))
}

/// Full linear convolution of two sequences via zero-padded FFT.
fn linear_convolution(a: &[Complex64], b: &[Complex64]) -> Result<Vec<Complex64>> {
    let out_len = a.len() + b.len() - 1;
    let len = padded_len(out_len)?;
    let (fwd, inv) = fft_pair(len);
    let mut x = a.to_vec();
    x.resize(len, Complex64::new(0.0, 0.0));
    let mut y = b.to_vec();
    y.resize(len, Complex64::new(0.0, 0.0));
    fwd.process(&mut x);
    fwd.process(&mut y);
    for (u, v) in x.iter_mut().zip(&y) {
        *u *= v;
    }
    inv.process(&mut x);
    let scale = 1.0 / len as f64;
    x.truncate(out_len);
    x.iter_mut().for_each(|v| *v *= scale);
    Ok(x)
}

/// (f∗g)(x_i) = h Σ_j f(x_j) g(x_i − x_j), restricted to the grid.
pub fn convolve(f: &GridFunction, g: &GridFunction, method: ConvolutionMethod) -> Result<GridFunction> {
    if !f.grid.same_as(&g.grid) {
        return Err(Error::GridMismatch);
    }
    let grid = f.grid;
    let n = grid.count;
    let h = grid.spacing;
    let half = n / 2;
    let values = match method {
        ConvolutionMethod::Fft => {
            let full = linear_convolution(&f.values, &g.values)?;
            (0..n).map(|i| full[i + half] * h).collect()
        }
        ConvolutionMethod::Direct => (0..n)
            .map(|i| {
                let mut acc = Complex64::new(0.0, 0.0);
                let lo = (i + half).saturating_sub(n - 1);
                let hi = (i + half).min(n - 1);
                for j in lo..=hi {
                    acc += f.values[j] * g.values[i + half - j];
                }
                acc * h
            })
            .collect(),
    };
    GridFunction::new(grid, values)
}

/// Repeated lattice sums Σ_j w_j φ(x_i − x_j) against a fixed closed-form profile φ.
///
/// The profile is sampled once on the difference lattice {m h : |m| < count}, so there is no
/// truncation of φ at the grid edge.
pub struct ProfileConvolution {
    grid: Grid,
    len: usize,
    spectrum: Vec<Complex64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl ProfileConvolution {
    pub fn new(grid: Grid, profile: impl Fn(f64) -> Complex64) -> Result<Self> {
        let n = grid.count;
        let len = padded_len(3 * n - 2)?;
        let (fwd, inv) = fft_pair(len);
        let mut spectrum = vec![Complex64::new(0.0, 0.0); len];
        for (k, slot) in spectrum.iter_mut().take(2 * n - 1).enumerate() {
            *slot = profile((k as f64 - (n - 1) as f64) * grid.spacing);
        }
        check_finite(&spectrum)?;
        fwd.process(&mut spectrum);
        Ok(ProfileConvolution { grid, len, spectrum, fwd, inv })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Σ_j w_j φ(x_i − x_j) for every grid index i.
    pub fn apply(&self, weights: &[Complex64]) -> Vec<Complex64> {
        let n = self.grid.count;
        assert_eq!(weights.len(), n, "weights must match the grid");
        let mut buf = weights.to_vec();
        buf.resize(self.len, Complex64::new(0.0, 0.0));
        self.fwd.process(&mut buf);
        for (u, v) in buf.iter_mut().zip(&self.spectrum) {
            *u *= v;
        }
        self.inv.process(&mut buf);
        let scale = 1.0 / self.len as f64;
        (0..n).map(|i| buf[i + n - 1] * scale).collect()
    }

    /// h Σ_j f(x_j) φ(x_i − x_j): the grid convolution with the analytic profile.
    pub fn convolve(&self, f: &GridFunction) -> Result<GridFunction> {
        if !f.grid.same_as(&self.grid) {
            return Err(Error::GridMismatch);
        }
        let h = self.grid.spacing;
        let values = self.apply(&f.values).into_iter().map(|v| v * h).collect();
        GridFunction::new(self.grid, values)
    }

    /// Σ_k c_k φ(x − x_k) for coefficients attached to grid indices.
    pub fn synthesize(&self, atoms: &[(usize, Complex64)]) -> Result<GridFunction> {
        let mut spikes = vec![Complex64::new(0.0, 0.0); self.grid.count];
        for &(j, c) in atoms {
            if j >= self.grid.count {
                return Err(Error::Resolution(format!("atom index {j} outside the grid")));
            }
            spikes[j] += c;
        }
        GridFunction::new(self.grid, self.apply(&spikes))
    }
}

/// Shift by b: result(x) = f(x − b), zero-filled at the vacated edge.
pub fn translate(f: &GridFunction, b: f64) -> Result<GridFunction> {
    let s = f.grid.steps(b).ok_or(Error::NotGridAligned(b))?;
    let n = f.grid.count as i64;
    let values = (0..n)
        .map(|i| {
            let src = i - s;
            if (0..n).contains(&src) {
                f.values[src as usize]
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    GridFunction::new(f.grid, values)
}

/// Multiplication by e^{2πiξx}.
pub fn modulate(f: &GridFunction, xi: f64) -> Result<GridFunction> {
    let grid = f.grid;
    let values = f
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| v * Complex64::from_polar(1.0, 2.0 * PI * xi * grid.point(j)))
        .collect();
    GridFunction::new(grid, values)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YoungMargin {
    pub ratio: f64,
    /// Set when f or g vanishes and the ratio is 0 by convention.
    pub degenerate: bool,
}

/// ‖f∗g‖_{L_{p,m}} / (‖g‖_{L_{r,w}} ‖f‖_{L_{q,m}}).
pub fn young_margin(
    f: &GridFunction,
    g: &GridFunction,
    t: ExponentTriple,
    m: Weight,
    w: Weight,
) -> Result<YoungMargin> {
    if !Weight::is_moderate(m, w) {
        return Err(Error::NotModerate);
    }
    let den = lebesgue_norm(g, t.r, w)? * lebesgue_norm(f, t.q, m)?;
    if den == 0.0 {
        return Ok(YoungMargin { ratio: 0.0, degenerate: true });
    }
    let conv = convolve(f, g, ConvolutionMethod::Fft)?;
    let num = lebesgue_norm(&conv, t.p, m)?;
    Ok(YoungMargin { ratio: num / den, degenerate: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn box01(grid: Grid) -> GridFunction {
        GridFunction::from_real_fn(grid, |x| if (0.0..1.0).contains(&x) { 1.0 } else { 0.0 }).unwrap()
    }

    #[test]
    fn grid_rejects_odd_or_fractional_counts() {
        assert!(Grid::new(1.0, 0.3).is_err());
        assert!(Grid::new(1.5, 1.0).is_err());
        assert!(Grid::new(-1.0, 0.5).is_err());
        let g = Grid::new(64.0, 1.0 / 64.0).unwrap();
        assert_eq!(g.count(), 8192);
        assert_eq!(g.point(0), -64.0);
        assert_eq!(g.index_of(0.0), Some(4096));
        assert_eq!(g.index_of(64.0), None);
        assert_eq!(g.position(64.0), Some(8192));
    }

    #[test]
    fn indicator_norm_is_one() {
        let grid = Grid::new(4.0, 1.0 / 64.0).unwrap();
        let v = lp_norm(&box01(grid), 2.0, Weight::ConstantOne).unwrap();
        assert!((v - 1.0).abs() <= grid.spacing());
    }

    #[test]
    fn lp_norm_rejects_small_exponents() {
        let grid = Grid::new(1.0, 0.25).unwrap();
        let f = box01(grid);
        assert!(matches!(lp_norm(&f, 1.0, Weight::ConstantOne), Err(Error::Domain(_))));
        assert!(matches!(lp_norm(&f, 0.5, Weight::ConstantOne), Err(Error::Domain(_))));
        assert!(lebesgue_norm(&f, 1.0, Weight::ConstantOne).is_ok());
    }

    #[test]
    fn non_finite_values_are_rejected() {
        let grid = Grid::new(1.0, 0.5).unwrap();
        let err = GridFunction::new(grid, vec![c(0.0), c(f64::NAN), c(0.0), c(0.0)]).unwrap_err();
        assert_eq!(err, Error::NonFinite(1));
    }

    #[test]
    fn infinite_norm_is_weighted_max() {
        let grid = Grid::new(2.0, 0.5).unwrap();
        let f = GridFunction::from_real_fn(grid, |x| if x == 1.0 { 2.0 } else { 0.0 }).unwrap();
        let v = lp_norm(&f, f64::INFINITY, Weight::Polynomial(1.0)).unwrap();
        assert_eq!(v, 4.0);
    }

    #[test]
    fn box_convolution_is_a_triangle() {
        let grid = Grid::new(4.0, 1.0 / 64.0).unwrap();
        let f = box01(grid);
        let t = convolve(&f, &f, ConvolutionMethod::Fft).unwrap();
        let h = grid.spacing();
        for (j, x) in grid.points().enumerate() {
            let tri = if (0.0..=2.0).contains(&x) { 1.0 - (x - 1.0).abs() } else { 0.0 };
            assert!((t.values()[j].re - tri).abs() <= 2.0 * h, "x = {x}");
        }
        // the half-open box puts 2T/h − 1 left endpoints under the peak
        let peak = t.values()[grid.index_of(1.0).unwrap()].re;
        assert!((peak - (1.0 - h)).abs() < 1e-12);
    }

    #[test]
    fn direct_and_fft_agree_on_small_grid() {
        let grid = Grid::new(2.0, 0.125).unwrap();
        let f = GridFunction::from_real_fn(grid, |x| (-x * x).exp()).unwrap();
        let g = GridFunction::from_fn(grid, |x| Complex64::new(x.cos(), x.sin()) / (1.0 + x * x)).unwrap();
        let a = convolve(&f, &g, ConvolutionMethod::Fft).unwrap();
        let b = convolve(&f, &g, ConvolutionMethod::Direct).unwrap();
        assert!(a.rel_l2_error(&b).unwrap() < 1e-13);
    }

    #[test]
    fn profile_convolution_matches_direct_sum() {
        let grid = Grid::new(2.0, 0.25).unwrap();
        let profile = |x: f64| Complex64::new((-x.abs()).exp(), x);
        let pc = ProfileConvolution::new(grid, profile).unwrap();
        let w: Vec<Complex64> = (0..grid.count()).map(|j| Complex64::new(j as f64 * 0.1, -1.0)).collect();
        let got = pc.apply(&w);
        for i in 0..grid.count() {
            let want: Complex64 = (0..grid.count()).map(|j| w[j] * profile(grid.point(i) - grid.point(j))).sum();
            assert!((got[i] - want).norm() < 1e-12);
        }
    }

    #[test]
    fn translate_and_modulate() {
        let grid = Grid::new(4.0, 1.0 / 64.0).unwrap();
        let f = box01(grid);
        assert_eq!(translate(&f, 0.0).unwrap(), f);
        let g = translate(&f, 0.5).unwrap();
        assert_eq!(g.values()[grid.index_of(1.25).unwrap()], c(1.0));
        assert_eq!(g.values()[grid.index_of(0.25).unwrap()], c(0.0));
        assert!(matches!(translate(&f, 0.01), Err(Error::NotGridAligned(_))));
        let m = modulate(&f, 1.0).unwrap();
        let v = m.values()[grid.index_of(0.5).unwrap()];
        assert!((v - c(-1.0)).norm() < 1e-15);
    }

    #[test]
    fn young_margin_cauchy_schwarz_case() {
        let grid = Grid::new(4.0, 1.0 / 64.0).unwrap();
        let f = box01(grid);
        let t = ExponentTriple::new(f64::INFINITY, 2.0, 2.0).unwrap();
        let y = young_margin(&f, &f, t, Weight::ConstantOne, Weight::ConstantOne).unwrap();
        assert!(y.ratio <= 1.0 + 1e-12 && y.ratio > 0.99);
        let zero = GridFunction::zeros(grid);
        let y = young_margin(&zero, &f, t, Weight::ConstantOne, Weight::ConstantOne).unwrap();
        assert_eq!(y, YoungMargin { ratio: 0.0, degenerate: true });
    }

    #[test]
    fn exponent_triples_exact_and_float() {
        use Exponent::*;
        assert!(ExponentTriple::exact(Ratio(4, 1), Ratio(2, 1), Ratio(4, 3)).is_ok());
        assert!(ExponentTriple::exact(Infinite, Ratio(2, 1), Ratio(2, 1)).is_ok());
        assert!(ExponentTriple::exact(Ratio(3, 1), Ratio(2, 1), Ratio(2, 1)).is_err());
        assert!(ExponentTriple::new(4.0, 2.0, 4.0 / 3.0).is_ok());
        assert!(ExponentTriple::new(2.0, 2.0, 2.0).is_err());
        assert!(ExponentTriple::new(0.5, 1.0, 1.0).is_err());
    }

    #[test]
    fn moderateness_within_families() {
        assert!(Weight::is_moderate(Weight::ConstantOne, Weight::Polynomial(1.0)));
        assert!(Weight::is_moderate(Weight::Polynomial(1.0), Weight::Polynomial(1.0)));
        assert!(!Weight::is_moderate(Weight::Polynomial(2.0), Weight::Polynomial(1.0)));
        let grid = Grid::new(1.0, 0.5).unwrap();
        let f = box01(grid);
        let t = ExponentTriple::new(2.0, 2.0, 1.0).unwrap();
        let err = young_margin(&f, &f, t, Weight::Polynomial(2.0), Weight::ConstantOne).unwrap_err();
        assert_eq!(err, Error::NotModerate);
    }
}
