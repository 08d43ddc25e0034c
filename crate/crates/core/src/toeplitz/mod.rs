//! The prolate matrices M_n, their extreme eigenvalues, and ‖S_n‖ = λ_min(M_n)^{-1/2}.
//!
//! λ_min(M_n) falls below the double-precision range from n = 5 on, so the default eigenvalue
//! path works in multiprecision: a bracketed Newton iteration on tr((M − λ)^{-1}) whose lower
//! end is certified by the signs of the Levinson-Durbin pivots, and whose upper end is the
//! Rayleigh quotient of the Durbin predictor. An independent inverse iteration through the
//! Gohberg-Semencul inverse serves as the cross-check.

pub(crate) mod mp;

use nalgebra::DMatrix;
use rug::float::Constant;
use rug::Float;
use serde::Serialize;

use crate::discretization::DyadicScheme;
use crate::error::{Error, Result};
use crate::wide::WideReal;

/// Largest matrix dimension accepted by any eigenvalue path.
pub const SIZE_CAP: usize = 10_000;
/// Working precision beyond which M is declared numerically singular.
pub const PRECISION_CAP: u32 = 1 << 17;
/// Relative width of the final eigenvalue bracket.
pub const BRACKET_TOL: f64 = 1e-13;
const MAX_PASSES: usize = 60;
const INVERSE_ITERATION_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
enum Source {
    Prolate { level: u32, omega: f64 },
    Explicit,
}

/// Symmetric Toeplitz matrix stored by its first column.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymToeplitz {
    column: Vec<f64>,
    source: Source,
}

/// M_n with entries 2^{-n} K(2^{-n}(j − k)), K the sinc kernel of bandwidth ω.
pub fn prolate_matrix(s: &DyadicScheme, omega: f64) -> Result<SymToeplitz> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::InvalidArgument(format!("bandwidth {omega} must be positive")));
    }
    let n = s.level();
    let h = s.spacing();
    let column = (0..s.size())
        .map(|d| {
            if d == 0 {
                2.0 * omega * h
            } else {
                let d = d as f64;
                (2.0 * std::f64::consts::PI * omega * d * h).sin() / (std::f64::consts::PI * d)
            }
        })
        .collect();
    Ok(SymToeplitz { column, source: Source::Prolate { level: n, omega } })
}

impl SymToeplitz {
    pub fn from_column(column: Vec<f64>) -> Result<Self> {
        if column.is_empty() {
            return Err(Error::InvalidArgument("empty first column".into()));
        }
        if let Some(i) = column.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(SymToeplitz { column, source: Source::Explicit })
    }

    pub fn size(&self) -> usize {
        self.column.len()
    }

    pub fn column(&self) -> &[f64] {
        &self.column
    }

    pub fn entry(&self, j: usize, k: usize) -> f64 {
        self.column[j.abs_diff(k)]
    }

    /// (n, ω) when this is a prolate matrix.
    pub fn prolate_params(&self) -> Option<(u32, f64)> {
        match self.source {
            Source::Prolate { level, omega } => Some((level, omega)),
            Source::Explicit => None,
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.size();
        DMatrix::from_fn(n, n, |i, j| self.entry(i, j))
    }

    /// First column at `prec` bits, recomputed from the closed form for prolate matrices.
    pub(crate) fn column_mp(&self, prec: u32) -> Vec<Float> {
        match self.source {
            Source::Explicit => self.column.iter().map(|&c| Float::with_val(prec, c)).collect(),
            Source::Prolate { level, omega } => {
                let pi = Float::with_val(prec, Constant::Pi);
                let two_omega = Float::with_val(prec, 2.0 * omega);
                (0..self.size())
                    .map(|d| {
                        if d == 0 {
                            Float::with_val(prec, &two_omega >> level)
                        } else {
                            let arg = Float::with_val(prec, &pi * &two_omega) * d as u64;
                            let arg = arg >> level;
                            let den = Float::with_val(prec, &pi * d as u64);
                            arg.sin() / den
                        }
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenMethod {
    /// Full symmetric eigendecomposition in double precision.
    Dense,
    /// Multiprecision bracketing by Durbin pivot inertia.
    Bisection,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenReport {
    pub size: usize,
    pub method: EigenMethod,
    pub lambda_min: WideReal,
    pub lambda_max: f64,
    /// Certified lower end of the λ_min bracket (equal to λ_min on the dense path).
    pub lambda_min_lower: WideReal,
    /// ‖Mv − λv‖/‖v‖ for the λ_min eigenvector estimate.
    pub residual_min: WideReal,
    pub residual_max: f64,
    /// Working precision in bits (53 on the dense path).
    pub precision_bits: u32,
    /// Levinson-Durbin passes spent (0 on the dense path).
    pub passes: usize,
}

impl EigenReport {
    pub fn condition(&self) -> WideReal {
        WideReal::from_f64(self.lambda_max).div(&self.lambda_min)
    }
}

fn check_size(m: &SymToeplitz) -> Result<()> {
    if m.size() > SIZE_CAP {
        return Err(Error::SizeCap { size: m.size(), cap: SIZE_CAP });
    }
    Ok(())
}

/// λ_max with its residual, from the dense decomposition. Also returns λ_min and its residual.
fn dense_extremes(m: &SymToeplitz) -> (f64, f64, f64, f64) {
    let a = m.to_dense();
    let eig = a.clone().symmetric_eigen();
    let (imin, imax) = eig.eigenvalues.iter().enumerate().fold((0, 0), |(lo, hi), (i, &v)| {
        (
            if v < eig.eigenvalues[lo] { i } else { lo },
            if v > eig.eigenvalues[hi] { i } else { hi },
        )
    });
    let residual = |i: usize| {
        let v = eig.eigenvectors.column(i);
        (&a * v - v * eig.eigenvalues[i]).norm() / v.norm()
    };
    (eig.eigenvalues[imin], residual(imin), eig.eigenvalues[imax], residual(imax))
}

pub fn eig_extremes(m: &SymToeplitz, method: EigenMethod) -> Result<EigenReport> {
    eig_extremes_with_hint(m, method, None)
}

/// As [`eig_extremes`], starting the multiprecision path at `precision_hint` bits.
pub fn eig_extremes_with_hint(m: &SymToeplitz, method: EigenMethod, precision_hint: Option<u32>) -> Result<EigenReport> {
    check_size(m)?;
    let (dmin, dres_min, lmax, res_max) = dense_extremes(m);
    match method {
        EigenMethod::Dense => {
            if !(dmin > 1e-14 * lmax.abs().max(f64::MIN_POSITIVE)) {
                return Err(Error::NumericallySingular(format!(
                    "lambda_min = {dmin:e} is below double-precision resolution"
                )));
            }
            Ok(EigenReport {
                size: m.size(),
                method,
                lambda_min: WideReal::from_f64(dmin),
                lambda_max: lmax,
                lambda_min_lower: WideReal::from_f64(dmin),
                residual_min: WideReal::from_f64(dres_min),
                residual_max: res_max,
                precision_bits: 53,
                passes: 0,
            })
        }
        EigenMethod::Bisection => {
            let b = bracket_min(m, precision_hint)?;
            Ok(EigenReport {
                size: m.size(),
                method,
                lambda_min: WideReal::from_float(&b.upper),
                lambda_max: lmax,
                lambda_min_lower: WideReal::from_float(&b.lower),
                residual_min: WideReal::from_float(&b.residual),
                residual_max: res_max,
                precision_bits: b.prec,
                passes: b.passes,
            })
        }
    }
}

struct Bracket {
    lower: Float,
    upper: Float,
    residual: Float,
    prec: u32,
    passes: usize,
}

fn round_bits(bits: f64) -> u32 {
    ((bits / 64.0).ceil() as u32).max(2) * 64
}

/// Working precision for M: enough for 1/λ_min plus guard bits, found by escalation.
pub(crate) fn settle_precision(m: &SymToeplitz, hint: Option<u32>, passes: &mut usize) -> Result<(u32, Vec<Float>, mp::Durbin)> {
    let mut prec = round_bits(hint.unwrap_or(128) as f64);
    loop {
        if prec > PRECISION_CAP {
            return Err(Error::NumericallySingular(format!(
                "no positive-definite factorization within {PRECISION_CAP} bits"
            )));
        }
        let col = m.column_mp(prec);
        *passes += 1;
        match mp::durbin(&col, &Float::with_val(prec, 0u32), prec) {
            None => prec *= 2,
            Some(d) => {
                let mu0 = Float::with_val(prec, 1u32) / d.trace_inverse();
                let need = round_bits(1.25 * -WideReal::from_float(&mu0).log2() + 128.0);
                if need > prec {
                    prec = need;
                    continue;
                }
                return Ok((prec, col, d));
            }
        }
    }
}

fn bracket_min(m: &SymToeplitz, hint: Option<u32>) -> Result<Bracket> {
    let mut passes = 0;
    let (prec, col, mut d) = settle_precision(m, hint, &mut passes)?;
    let mut lambda = Float::with_val(prec, 0u32);
    let mut upper: Option<Float> = None;
    loop {
        // Rayleigh quotient of the predictor: λ + e/‖a‖² ≥ λ_min
        let nrm = d.norm_sq();
        let rayleigh = Float::with_val(prec, &d.e / &nrm) + &lambda;
        let best = match upper.take() {
            Some(u) if u < rayleigh => u,
            _ => rayleigh,
        };
        let width = Float::with_val(prec, &best - &lambda);
        if width <= Float::with_val(prec, &best * BRACKET_TOL) {
            let residual = Float::with_val(prec, d.e.clone().abs() / nrm.sqrt());
            return Ok(Bracket { lower: lambda, upper: best, residual, prec, passes });
        }
        upper = Some(best);
        if passes >= MAX_PASSES {
            return Err(Error::NoConvergence { method: "durbin_newton", iterations: passes });
        }
        // 1/tr is a lower bound for λ_min − λ; if rounding pushes the step past λ_min, the
        // failed shift is an upper bound and the step is shortened
        let step = Float::with_val(prec, 1u32) / d.trace_inverse();
        let mut accepted = None;
        for factor in [1.0, 1.0 - 1e-14, 0.5, 0.25] {
            let next = Float::with_val(prec, &step * factor) + &lambda;
            passes += 1;
            if let Some(nd) = mp::durbin(&col, &next, prec) {
                accepted = Some((next, nd));
                break;
            }
            upper = match upper.take() {
                Some(u) if u < next => Some(u),
                _ => Some(next),
            };
        }
        match accepted {
            Some((next, nd)) => {
                lambda = next;
                d = nd;
            }
            None => {
                return Err(Error::NumericallySingular(format!("pivot signs unstable at {prec} bits")));
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheck {
    pub lambda_min: WideReal,
    pub residual: WideReal,
    pub iterations: usize,
    /// |λ_inverse − λ_report| / λ_report.
    pub rel_diff: f64,
}

/// Recomputes λ_min by inverse iteration at the precision the report settled on.
pub fn inverse_iteration_check(m: &SymToeplitz, report: &EigenReport) -> Result<CrossCheck> {
    check_size(m)?;
    let prec = report.precision_bits.max(128);
    let col = m.column_mp(prec);
    let d = mp::durbin(&col, &Float::with_val(prec, 0u32), prec)
        .ok_or_else(|| Error::NumericallySingular(format!("no positive-definite factorization at {prec} bits")))?;
    let it = mp::inverse_iteration(&col, &d, prec, INVERSE_ITERATION_SEED, 200)
        .ok_or(Error::NoConvergence { method: "inverse_iteration", iterations: 200 })?;
    let lambda = WideReal::from_float(&it.lambda);
    Ok(CrossCheck {
        rel_diff: lambda.rel_diff(&report.lambda_min),
        lambda_min: lambda,
        residual: WideReal::from_float(&it.residual),
        iterations: it.iterations,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SnNorm {
    /// λ_min(M_n)^{-1/2}.
    pub value: WideReal,
    /// λ_max/λ_min.
    pub condition: WideReal,
    pub report: EigenReport,
}

/// ‖S_n‖ for the sinc kernel of bandwidth ω.
pub fn sn_norm(s: &DyadicScheme, omega: f64) -> Result<SnNorm> {
    sn_norm_with(s, omega, EigenMethod::Bisection, None)
}

pub fn sn_norm_with(s: &DyadicScheme, omega: f64, method: EigenMethod, hint: Option<u32>) -> Result<SnNorm> {
    let m = prolate_matrix(s, omega)?;
    let report = eig_extremes_with_hint(&m, method, hint)?;
    if !report.lambda_min.is_positive() {
        return Err(Error::NumericallySingular("lambda_min is not positive".into()));
    }
    Ok(SnNorm { value: report.lambda_min.recip().sqrt(), condition: report.condition(), report })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub n: u32,
    pub size: usize,
    pub lambda_min: WideReal,
    pub lambda_max: f64,
    pub sn_norm: WideReal,
    /// C_n at r = 2 with the constant weight: 2^{-n/2} ‖S_n‖.
    pub c_n: WideReal,
    pub residual_min: WideReal,
    pub precision_bits: u32,
    /// λ_min from inverse iteration and its relative distance to the bracketed value.
    pub cross_check: CrossCheck,
    /// λ_min from the dense solver where double precision resolves it.
    pub dense_lambda_min: Option<f64>,
}

/// One row per level n_min..=n_max.
/// Extrapolates log2 of the next smallest eigenvalue from the last two levels.
fn precision_forecast(logs: &[f64]) -> Option<u32> {
    let [.., a, b] = logs else { return None };
    if *a >= -1.0 || *b >= -1.0 {
        return None;
    }
    let next = b * (b / a).max(2.0);
    Some((1.25 * next.abs() + 192.0) as u32)
}

pub fn eigensweep(n_min: u32, n_max: u32, omega: f64) -> Result<Vec<SweepRow>> {
    if n_min > n_max {
        return Err(Error::InvalidArgument(format!("empty level range {n_min}..{n_max}")));
    }
    let mut rows = Vec::new();
    let mut hint: Option<u32> = None;
    let mut logs: Vec<f64> = Vec::new();
    for n in n_min..=n_max {
        let s = DyadicScheme::new(n)?;
        if s.size() > SIZE_CAP {
            return Err(Error::SizeCap { size: s.size(), cap: SIZE_CAP });
        }
        let m = prolate_matrix(&s, omega)?;
        let report = eig_extremes_with_hint(&m, EigenMethod::Bisection, hint)?;
        let cross_check = inverse_iteration_check(&m, &report)?;
        let dense_lambda_min = eig_extremes(&m, EigenMethod::Dense).ok().map(|r| r.lambda_min.to_f64());
        let sn = report.lambda_min.recip().sqrt();
        let c_n = sn.mul_f64(s.cell_measure().sqrt());
        logs.push(report.lambda_min.log2());
        hint = precision_forecast(&logs);
        rows.push(SweepRow {
            n,
            size: report.size,
            lambda_min: report.lambda_min.clone(),
            lambda_max: report.lambda_max,
            sn_norm: sn,
            c_n,
            residual_min: report.residual_min.clone(),
            precision_bits: report.precision_bits,
            cross_check,
            dense_lambda_min,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prolate_entries() {
        let m0 = prolate_matrix(&DyadicScheme::new(0).unwrap(), 0.5).unwrap();
        assert_eq!(m0.column(), &[1.0]);
        let m1 = prolate_matrix(&DyadicScheme::new(1).unwrap(), 0.5).unwrap();
        assert_eq!(m1.size(), 5);
        assert!((m1.entry(0, 1) - 1.0 / std::f64::consts::PI).abs() < 1e-16);
        let m2 = prolate_matrix(&DyadicScheme::new(2).unwrap(), 0.5).unwrap();
        for i in 0..m2.size() {
            assert_eq!(m2.entry(i, i), 0.25);
        }
        for i in 0..m2.size() - 1 {
            for j in 0..m2.size() - 1 {
                assert_eq!(m2.entry(i, j), m2.entry(i + 1, j + 1));
            }
        }
    }

    #[test]
    fn multiprecision_column_matches_doubles() {
        let m = prolate_matrix(&DyadicScheme::new(2).unwrap(), 0.5).unwrap();
        for (a, b) in m.column_mp(256).iter().zip(m.column()) {
            assert!((a.to_f64() - b).abs() < 1e-16);
        }
    }

    #[test]
    fn two_by_two_closed_form() {
        let m = SymToeplitz::from_column(vec![3.0, -1.0]).unwrap();
        for method in [EigenMethod::Dense, EigenMethod::Bisection] {
            let r = eig_extremes(&m, method).unwrap();
            assert!((r.lambda_min.to_f64() - 2.0).abs() < 1e-12);
            assert!((r.lambda_max - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn one_by_one() {
        let m = SymToeplitz::from_column(vec![1.0]).unwrap();
        let r = eig_extremes(&m, EigenMethod::Bisection).unwrap();
        assert_eq!(r.lambda_min.to_f64(), 1.0);
        assert_eq!(r.lambda_max, 1.0);
    }

    #[test]
    fn level_one_against_reference() {
        let s = DyadicScheme::new(1).unwrap();
        let m = prolate_matrix(&s, 0.5).unwrap();
        let a = eig_extremes(&m, EigenMethod::Bisection).unwrap();
        let d = eig_extremes(&m, EigenMethod::Dense).unwrap();
        assert!((a.lambda_min.to_f64() - 0.002_331_431_111_982_172_4).abs() < 1e-15);
        assert!(a.lambda_min.rel_diff(&d.lambda_min) < 1e-9);
        assert!((a.lambda_max - 0.997_668_568_888_017_9).abs() < 1e-14);
        let c = inverse_iteration_check(&m, &a).unwrap();
        assert!(c.rel_diff < 1e-9);
    }

    #[test]
    fn dense_refuses_unresolvable_minimum() {
        let m = prolate_matrix(&DyadicScheme::new(2).unwrap(), 0.5).unwrap();
        assert!(matches!(eig_extremes(&m, EigenMethod::Dense), Err(Error::NumericallySingular(_))));
        let r = eig_extremes(&m, EigenMethod::Bisection).unwrap();
        assert!((r.lambda_min.log10() + 22.0).abs() < 0.1, "{}", r.lambda_min);
    }

    #[test]
    fn sn_norm_level_zero() {
        let s = sn_norm(&DyadicScheme::new(0).unwrap(), 0.5).unwrap();
        assert_eq!(s.value.to_f64(), 1.0);
        assert_eq!(s.condition.to_f64(), 1.0);
    }
}
