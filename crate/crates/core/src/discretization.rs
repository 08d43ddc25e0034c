//! Dyadic discretization: grids 2^{-n}ℤ, indicator partitions of unity, analysis coefficients,
//! the operator T_n, atom synthesis bounds and the constants C_n, D_n, θ_n, τ_n.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rug::float::Constant;
use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{lebesgue_norm, weighted_norm, ExponentTriple, Grid, GridFunction, ProfileConvolution, Weight};
use crate::kernels::{kernel_oscillation, sinc_kernel, AnalyticKernel};
use crate::toeplitz::{mp, prolate_matrix, settle_precision};
use crate::wide::WideReal;

/// Highest level accepted; beyond it the window n·2ⁿ stops being a desk-scale object.
pub const LEVEL_CAP: u32 = 30;
/// Number of Q_n-separated subfamilies the closed cells split into.
pub const OVERLAP: f64 = 2.0;

/// Level n of the dyadic scheme: centers 2^{-n}k for |k| ≤ N(n) = n·2ⁿ and cells of width 2^{-n}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DyadicScheme {
    level: u32,
}

impl DyadicScheme {
    pub fn new(level: u32) -> Result<Self> {
        if level > LEVEL_CAP {
            return Err(Error::DepthCap { depth: level, cap: LEVEL_CAP });
        }
        Ok(DyadicScheme { level })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// 2^{-n}.
    pub fn spacing(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    /// 2^{-n-1}, so that Q_n = [−q_half, q_half].
    pub fn q_half(&self) -> f64 {
        0.5 * self.spacing()
    }

    /// |Q_n| = 2^{-n}.
    pub fn cell_measure(&self) -> f64 {
        self.spacing()
    }

    /// N(n) = n·2ⁿ.
    pub fn window(&self) -> i64 {
        (self.level as i64) << self.level
    }

    /// Number of centers, 2N(n) + 1.
    pub fn size(&self) -> usize {
        2 * self.window() as usize + 1
    }

    pub fn center(&self, k: i64) -> f64 {
        k as f64 * self.spacing()
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        let n = self.window();
        -n..=n
    }

    pub fn centers(&self) -> impl Iterator<Item = f64> + '_ {
        self.indices().map(|k| self.center(k))
    }

    /// Grid steps per half cell, if the grid resolves the cells.
    fn half_steps(&self, grid: &Grid) -> Result<i64> {
        match grid.steps(self.q_half()) {
            Some(s) if s >= 1 => Ok(s),
            _ => Err(Error::Resolution(format!(
                "cell half width {} is not a positive multiple of the grid spacing {}",
                self.q_half(),
                grid.spacing()
            ))),
        }
    }
}

/// Finitely supported coefficients d_k attached to points x_k.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefSeq {
    indices: Vec<i64>,
    points: Vec<f64>,
    values: Vec<Complex64>,
}

impl CoefSeq {
    pub fn new(indices: Vec<i64>, points: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        if indices.len() != points.len() || indices.len() != values.len() {
            return Err(Error::InvalidArgument("indices, points and values differ in length".into()));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite(i));
        }
        Ok(CoefSeq { indices, points, values })
    }

    /// Coefficients on the full window of `s`, ordered by k = −N(n)..=N(n).
    pub fn on_scheme(s: &DyadicScheme, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != s.size() {
            return Err(Error::InvalidArgument(format!("{} values for {} centers", values.len(), s.size())));
        }
        Self::new(s.indices().collect(), s.centers().collect(), values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, k: i64) -> Option<Complex64> {
        self.indices.iter().position(|&i| i == k).map(|i| self.values[i])
    }

    /// ‖d‖_{ℓ_{p,m}} = (Σ |d_k m(x_k)|^p)^{1/p}, p ∈ [1, ∞].
    pub fn norm(&self, p: f64, m: Weight) -> Result<f64> {
        if !(p >= 1.0) {
            return Err(Error::Domain(format!("p = {p} must be at least 1")));
        }
        Ok(weighted_norm(&self.values, |i| self.points[i], 1.0, p, m))
    }

    fn nonzero(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.points.iter().zip(&self.values).filter(|(_, v)| v.norm() != 0.0).map(|(&x, &v)| (x, v))
    }
}

/// c_k = ∫ f ψ_{n,k}, the left Riemann sum of f over [x_k − q, x_k + q).
pub fn bupu_coeffs(f: &GridFunction, s: &DyadicScheme) -> Result<CoefSeq> {
    let grid = *f.grid();
    let half = s.half_steps(&grid)?;
    let n = grid.count() as i64;
    let mut prefix = Vec::with_capacity(n as usize + 1);
    prefix.push(Complex64::new(0.0, 0.0));
    for v in f.values() {
        prefix.push(prefix.last().unwrap() + v);
    }
    let h = grid.spacing();
    let values = s
        .indices()
        .map(|k| {
            let c = n / 2 + 2 * half * k;
            let lo = (c - half).clamp(0, n) as usize;
            let hi = (c + half).clamp(0, n) as usize;
            (prefix[hi] - prefix[lo]) * h
        })
        .collect();
    CoefSeq::on_scheme(s, values)
}

/// Σ_k d_k K(· − x_k) on the grid, with the kernel in closed form.
pub fn synthesize(grid: &Grid, k: &AnalyticKernel, d: &CoefSeq) -> Result<GridFunction> {
    let mut on_grid = Vec::new();
    let mut off_grid = Vec::new();
    for (x, v) in d.nonzero() {
        match grid.index_of(x) {
            Some(j) => on_grid.push((j, v)),
            None => off_grid.push((x, v)),
        }
    }
    let mut out = if on_grid.is_empty() {
        GridFunction::zeros(*grid)
    } else {
        ProfileConvolution::new(*grid, |x| k.eval(x))?.synthesize(&on_grid)?
    };
    if !off_grid.is_empty() {
        let extra = GridFunction::from_fn(*grid, |y| off_grid.iter().map(|&(x, v)| v * k.eval(y - x)).sum())?;
        out = out.add(&extra)?;
    }
    Ok(out)
}

/// T_n f = Σ_{|k| ≤ N(n)} ⟨f, ψ_{n,k}⟩ K(· − x_k).
pub fn tn_apply(f: &GridFunction, s: &DyadicScheme, k: &AnalyticKernel) -> Result<GridFunction> {
    let c = bupu_coeffs(f, s)?;
    synthesize(f.grid(), k, &c)
}

fn cells_inside(grid: &Grid, s: &DyadicScheme, d: &CoefSeq) -> Result<Vec<(i64, f64)>> {
    let half = s.half_steps(grid)?;
    let n = grid.count() as i64;
    d.nonzero()
        .map(|(x, v)| {
            let c = grid.position(x).map(|c| c as i64).filter(|&c| c - half >= 0 && c + half <= n);
            c.map(|c| (c, v.norm()))
                .ok_or_else(|| Error::Resolution(format!("cell around {x} is not inside the grid")))
        })
        .collect()
}

/// Both sides of ‖Σ|d_k| χ_{x_k+Q_n}‖_{L_{p,m}} ≤ 𝓘^{1−1/p} sup_Q w |Q_n|^{1/p} ‖d‖_{ℓ_{p,m}}.
pub fn seq_synth_bound(d: &CoefSeq, s: &DyadicScheme, p: f64, m: Weight, w: Weight, grid: &Grid) -> Result<(f64, f64)> {
    if d.is_empty() {
        return Err(Error::InvalidArgument("empty coefficient sequence".into()));
    }
    if !Weight::is_moderate(m, w) {
        return Err(Error::NotModerate);
    }
    let cells = cells_inside(grid, s, d)?;
    let half = s.half_steps(grid)?;
    let mut v = vec![Complex64::new(0.0, 0.0); grid.count()];
    for (c, a) in cells {
        for j in (c - half)..(c + half) {
            v[j as usize] += a;
        }
    }
    let lhs = lebesgue_norm(&GridFunction::new(*grid, v)?, p, m)?;
    let inv_p = if p.is_infinite() { 0.0 } else { 1.0 / p };
    let rhs = OVERLAP.powf(1.0 - inv_p) * w.sup_on_cube(s.q_half()) * s.cell_measure().powf(inv_p) * d.norm(p, m)?;
    Ok((lhs, rhs))
}

/// max over the grid of |Σ d_k K(y − x_k)| − ((Σ|d_k| χ_{x_k+Q_n}/|Q_n|) ∗ (osc_{Q_n}K + |K|))(y).
pub fn pointwise_atom_bound(d: &CoefSeq, s: &DyadicScheme, k: &AnalyticKernel, grid: &Grid) -> Result<f64> {
    let half = s.half_steps(grid)?;
    let n = grid.count() as i64;
    let h = grid.spacing();
    let atoms: Vec<(i64, Complex64)> = d
        .nonzero()
        .map(|(x, v)| grid.steps(x).map(|c| (c, v)).ok_or(Error::NotGridAligned(x)))
        .collect::<Result<_>>()?;
    if atoms.is_empty() {
        return Ok(0.0);
    }
    let cmin = atoms.iter().map(|a| a.0).min().unwrap();
    let cmax = atoms.iter().map(|a| a.0).max().unwrap();
    // lattice offsets l h with l = y/h − c − m, m ∈ [−half, half)
    let lo = -n / 2 - cmax - half - half;
    let hi = n / 2 - cmin + half + half;
    let table: Vec<Complex64> = (lo..=hi).map(|l| k.eval(l as f64 * h)).collect();
    let at = |l: i64| table[(l - lo) as usize];
    let g_lo = lo + half;
    let g_hi = hi - half;
    let mut prefix = vec![0.0];
    for l in g_lo..=g_hi {
        let here = at(l);
        let osc = (-half..=half).map(|u| (at(l + u) - here).norm()).fold(0.0, f64::max);
        prefix.push(prefix.last().unwrap() + osc + here.norm());
    }
    let window = |from: i64, to: i64| prefix[(to - g_lo + 1) as usize] - prefix[(from - g_lo) as usize];
    let mut worst = f64::NEG_INFINITY;
    for i in 0..n {
        let y = -n / 2 + i;
        let mut lhs = Complex64::new(0.0, 0.0);
        let mut rhs = 0.0;
        for &(c, v) in &atoms {
            lhs += v * at(y - c);
            rhs += v.norm() * window(y - c - half + 1, y - c + half) / (2 * half) as f64;
        }
        worst = worst.max(lhs.norm() - rhs);
    }
    Ok(worst)
}

/// The constants of the discretization theorem at level n.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: u32,
    /// Exponent of the coorbit space.
    pub r: f64,
    /// Exponent of the coefficient sequence.
    pub q: f64,
    /// Kernel exponent, with 1/q + 1/p = 1 + 1/r.
    pub p: f64,
    pub omega: f64,
    pub m: Weight,
    pub w: Weight,
    pub c_n: WideReal,
    pub d_n: f64,
    pub theta_n: f64,
    /// The second norm in θ_n, carrying the modular function (identically 1 on ℝ).
    pub theta_n_modular: f64,
    /// Bound on the part of ‖osc K + |K|‖_{L_p} beyond the grid, for the constant weight.
    pub theta_tail: Option<f64>,
    pub tau_n: WideReal,
    /// Set when r ≠ 2 and ‖S_n‖ is the Hilbert-space value.
    pub sn_surrogate: bool,
}

fn modular_function(_x: f64) -> f64 {
    1.0
}

/// Assembles C_n, D_n, θ_n and τ_n. `t` is the Young triple (r, q, p) of output, sequence
/// and kernel exponents; θ_n is measured on `grid`.
pub fn bound_report(n: u32, t: ExponentTriple, omega: f64, m: Weight, w: Weight, sn_norm: &WideReal, grid: &Grid) -> Result<BoundReport> {
    let t = ExponentTriple::new(t.p, t.q, t.r)?;
    if !Weight::is_moderate(m, w) {
        return Err(Error::NotModerate);
    }
    let (r, q, p) = (t.p, t.q, t.r);
    let s = DyadicScheme::new(n)?;
    let k = sinc_kernel(omega)?;
    let inv = |e: f64| if e.is_infinite() { 0.0 } else { 1.0 / e };
    let q_cube = s.cell_measure();
    let sup_w = w.sup_on_cube(s.q_half());

    let (osc, _) = kernel_oscillation(&k, grid, s.q_half(), 4)?;
    let kabs = k.sample(grid).abs();
    let g = osc.add(&kabs)?;
    let theta_n = lebesgue_norm(&g, p, w)?;
    let scaled = GridFunction::from_fn(*grid, |x| {
        let j = grid.index_of(x).expect("grid point");
        g.values()[j] * modular_function(x).powf(-inv(p))
    })?;
    let theta_n_modular = lebesgue_norm(&scaled, p, w)?;
    let theta = theta_n.max(theta_n_modular);
    let theta_tail = match w {
        // |K| + osc K ≤ 3(1+4ω)/(1+|y|−q) beyond the grid
        Weight::ConstantOne => Some(3.0 * k.tail_bound(grid.half_width() - s.q_half(), p)),
        Weight::Polynomial(_) => None,
    };

    let c_n = sn_norm.mul_f64(q_cube.powf(1.0 - inv(r)) * sup_w);
    let d_n = q_cube.powf(inv(q) - 1.0) * OVERLAP.powf(1.0 - inv(q)) * sup_w * theta;
    let tau_n = c_n.mul_f64((s.size() as f64).powf(inv(q) - inv(r)));
    Ok(BoundReport {
        n,
        r,
        q,
        p,
        omega,
        m,
        w,
        c_n,
        d_n,
        theta_n,
        theta_n_modular,
        theta_tail,
        tau_n,
        sn_surrogate: r != 2.0,
    })
}

/// Best approximation of f from V_n = span{K(· − x_k) : |k| ≤ N(n)}.
#[derive(Debug, Clone, Serialize)]
pub struct Projection {
    #[serde(skip)]
    pub approx: GridFunction,
    pub coeffs: CoefSeq,
    /// ‖f − approx‖_{L_r} on the grid.
    pub residual: f64,
    /// Indices of the atoms used.
    pub support: Vec<i64>,
    /// Reweighting iterations spent (0 for r = 2).
    pub iterations: usize,
    /// Set on the iteratively reweighted path.
    pub approximate: bool,
}

const IRLS_MAX_ITER: usize = 50;
const IRLS_TOL: f64 = 1e-8;

fn inner(a: &[Complex64], b: &[Complex64], h: f64) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>() * h
}

fn l2(a: &[Complex64], h: f64) -> f64 {
    inner(a, a, h).re.sqrt()
}

/// Metric projection onto V_n. For r = 2 the atoms are chosen greedily and orthonormalized
/// by twice-iterated Gram-Schmidt, skipping atoms that are numerically dependent on the chosen
/// ones; for r ≠ 2 the L_r error is then minimized on that support by iteratively reweighted
/// least squares.
pub fn projection_approx(f: &GridFunction, s: &DyadicScheme, k: &AnalyticKernel, r: f64) -> Result<Projection> {
    if !(r > 1.0 && r.is_finite()) {
        return Err(Error::Domain(format!("r = {r} must lie in (1, ∞)")));
    }
    let grid = *f.grid();
    let h = grid.spacing();
    s.half_steps(&grid)?;
    let centers: Vec<usize> = s
        .centers()
        .map(|x| grid.index_of(x).ok_or_else(|| Error::Resolution(format!("center {x} lies outside the grid"))))
        .collect::<Result<_>>()?;
    let corr = ProfileConvolution::new(grid, |x| k.eval(x))?;
    let energy = ProfileConvolution::new(grid, |x| Complex64::new(k.eval(x).norm_sqr(), 0.0))?;
    let ones = vec![Complex64::new(1.0, 0.0); grid.count()];
    let e = energy.apply(&ones);
    let atom_norm: Vec<f64> = centers.iter().map(|&j| (e[j].re * h).sqrt()).collect();

    let fv = f.values();
    let fnorm = l2(fv, h);
    let mut residual = fv.to_vec();
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let mut rmat: Vec<Vec<Complex64>> = Vec::new();
    let mut beta: Vec<Complex64> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    let mut excluded = vec![false; centers.len()];
    let cap = centers.len();
    while chosen.len() < cap && fnorm > 0.0 && l2(&residual, h) > 1e-13 * fnorm {
        let c = corr.apply(&residual);
        let best = (0..centers.len())
            .filter(|&i| !excluded[i])
            .map(|i| (i, (c[centers[i]] * h).norm() / atom_norm[i]))
            .max_by(|a, b| a.1.total_cmp(&b.1));
        let Some((i, score)) = best else { break };
        if score <= 1e-14 * fnorm {
            break;
        }
        excluded[i] = true;
        let atom = k.sample_shifted(&grid, grid.point(centers[i])).into_values();
        let mut v = atom.clone();
        let mut coef = vec![Complex64::new(0.0, 0.0); basis.len()];
        for _ in 0..2 {
            for (t, q) in basis.iter().enumerate() {
                let a = inner(q, &v, h);
                coef[t] += a;
                v.iter_mut().zip(q).for_each(|(x, y)| *x -= a * y);
            }
        }
        let nu = l2(&v, h);
        if nu <= 1e-7 * atom_norm[i] {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= nu);
        coef.push(Complex64::new(nu, 0.0));
        let b = inner(&v, &residual, h);
        residual.iter_mut().zip(&v).for_each(|(x, y)| *x -= b * y);
        basis.push(v);
        rmat.push(coef);
        beta.push(b);
        chosen.push(i);
    }
    // back substitution in R c = β, R stored by columns
    let m = chosen.len();
    let mut sol = vec![Complex64::new(0.0, 0.0); m];
    for row in (0..m).rev() {
        let mut acc = beta[row];
        for col in row + 1..m {
            acc -= rmat[col][row] * sol[col];
        }
        sol[row] = acc / rmat[row][row];
    }
    let mut iterations = 0;
    if r != 2.0 && m > 0 {
        let atoms: Vec<Vec<Complex64>> =
            chosen.iter().map(|&i| k.sample_shifted(&grid, grid.point(centers[i])).into_values()).collect();
        let (c, it) = irls(&atoms, fv, sol, r, h)?;
        sol = c;
        iterations = it;
    }
    let mut values = vec![Complex64::new(0.0, 0.0); s.size()];
    for (&i, &c) in chosen.iter().zip(&sol) {
        values[i] = c;
    }
    let coeffs = CoefSeq::on_scheme(s, values)?;
    let approx = synthesize(&grid, k, &coeffs)?;
    let res = lebesgue_norm(&f.sub(&approx)?, r, Weight::ConstantOne)?;
    let mut support: Vec<i64> = chosen.iter().map(|&i| i as i64 - s.window()).collect();
    support.sort_unstable();
    Ok(Projection { approx, coeffs, residual: res, support, iterations, approximate: r != 2.0 })
}

/// Iteratively reweighted least squares for min ‖f − Ac‖_{L_r}. Updates are damped by
/// 1/(r − 1) when r > 2, and the best iterate seen is returned.
fn irls(atoms: &[Vec<Complex64>], f: &[Complex64], start: Vec<Complex64>, r: f64, h: f64) -> Result<(Vec<Complex64>, usize)> {
    let m = atoms.len();
    let n = f.len();
    let a = DMatrix::from_fn(n, m, |j, i| atoms[i][j]);
    let fvec = DVector::from_column_slice(f);
    let floor = 1e-12 * f.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let damping = if r > 2.0 { 1.0 / (r - 1.0) } else { 1.0 };
    let objective = |res: &DVector<Complex64>| res.iter().map(|v| v.norm().powf(r)).sum::<f64>();
    let mut c = DVector::from_vec(start);
    let mut res = &fvec - &a * &c;
    let mut best = (objective(&res), c.clone());
    for it in 1..=IRLS_MAX_ITER {
        let wts: Vec<f64> = res.iter().map(|v| v.norm().max(floor).powf(r - 2.0) * h).collect();
        let mut wa = a.clone();
        for (j, mut row) in wa.row_iter_mut().enumerate() {
            row *= Complex64::new(wts[j], 0.0);
        }
        let gram = a.adjoint() * &wa;
        let rhs = wa.adjoint() * &fvec;
        let chol = gram.clone().cholesky().ok_or_else(|| {
            let lambda_min = gram.symmetric_eigen().eigenvalues.min();
            Error::IllConditioned { lambda_min }
        })?;
        let target = chol.solve(&rhs);
        let next = &c + (&target - &c) * Complex64::new(damping, 0.0);
        let step = (&next - &c).norm();
        let scale = next.norm().max(f64::MIN_POSITIVE);
        c = next;
        res = &fvec - &a * &c;
        let obj = objective(&res);
        if obj < best.0 {
            best = (obj, c.clone());
        }
        if step <= IRLS_TOL * scale {
            return Ok((best.1.iter().cloned().collect(), it));
        }
    }
    Ok((best.1.iter().cloned().collect(), IRLS_MAX_ITER))
}

/// dist_{L_2(ℝ)}(K(· − t), V_n) for the sinc kernel, computed in multiprecision from
/// dist² = 2ω − 2^{-n} bᵀ M_n^{-1} b with b_k = K(t − x_k).
pub fn atom_projection_residual(t: f64, n: u32, omega: f64) -> Result<WideReal> {
    if !t.is_finite() {
        return Err(Error::InvalidArgument(format!("shift {t} must be finite")));
    }
    let s = DyadicScheme::new(n)?;
    let k = t * (1u64 << n) as f64;
    if k.fract() == 0.0 && k.abs() <= s.window() as f64 {
        return Ok(WideReal::from_f64(0.0));
    }
    let m = prolate_matrix(&s, omega)?;
    let mut passes = 0;
    let (mut prec, _, mut d) = settle_precision(&m, None, &mut passes)?;
    loop {
        let pi = Float::with_val(prec, Constant::Pi);
        let two_omega = Float::with_val(prec, 2.0 * omega);
        let b: Vec<Float> = s
            .indices()
            .map(|k| {
                let arg = Float::with_val(prec, t) - (Float::with_val(prec, k) >> n);
                if arg.is_zero() {
                    two_omega.clone()
                } else {
                    let num = Float::with_val(prec, &pi * &two_omega) * &arg;
                    num.sin() / (arg * &pi)
                }
            })
            .collect();
        let x = mp::gs_solve(&d, &b, prec);
        let q = mp::dot(&b, &x, prec) >> n;
        let r2 = Float::with_val(prec, &two_omega - &q);
        // error of bᵀM^{-1}b is about N·tr(M^{-1})·‖b‖²·2^{-prec}
        let noise = WideReal::from_float(&d.trace_inverse()).log2()
            + (s.size() as f64).log2()
            + WideReal::from_float(&mp::dot(&b, &b, prec)).log2()
            - prec as f64;
        let wr = WideReal::from_float(&r2);
        if wr.is_positive() && wr.log2() > noise + 40.0 {
            return Ok(wr.sqrt());
        }
        let deficit = if wr.is_positive() { noise + 40.0 - wr.log2() } else { prec as f64 };
        prec = (((prec as f64 + deficit.max(prec as f64 / 2.0) + 64.0) / 64.0).ceil() as u32) * 64;
        if prec > crate::toeplitz::PRECISION_CAP {
            return Err(Error::NumericallySingular(format!("residual unresolved within {} bits", crate::toeplitz::PRECISION_CAP)));
        }
        let col = m.column_mp(prec);
        d = mp::durbin(&col, &Float::with_val(prec, 0u32), prec)
            .ok_or_else(|| Error::NumericallySingular(format!("no positive-definite factorization at {prec} bits")))?;
    }
}
