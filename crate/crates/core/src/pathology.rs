//! Spectra on which discretization fails: a fat Cantor set and a lacunary union of intervals.

use std::f64::consts::PI;

use rand::Rng;
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grid::{lebesgue_norm, Grid, Weight};
use crate::kernels::{indicator_kernel, Spectrum, Symbol};
use crate::special::interval_kernel_l2_tail;

pub const CANTOR_DEPTH_CAP: u32 = 24;
pub const LACUNARY_CAP: u32 = 30;

/// A removed open gap B_j^n of width μ_{n+1}.
#[derive(Debug, Clone, PartialEq)]
pub struct Gap {
    pub level: u32,
    pub lo: Rational,
    pub hi: Rational,
}

/// Stage `depth` of the fat Cantor recursion with exact endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct CantorApprox {
    depth: u32,
    kept: Vec<(Rational, Rational)>,
    removed: Vec<Gap>,
    mu: Vec<Rational>,
}

/// μ_n = min(4^{-n}, n^{-n}).
pub fn cantor_mu(n: u32) -> Rational {
    let quarter = Rational::from((1, Integer::from(4).pow(n)));
    let own = Rational::from((1, Integer::from(n).pow(n)));
    if own < quarter {
        own
    } else {
        quarter
    }
}

pub fn fat_cantor(depth: u32) -> Result<CantorApprox> {
    if depth > CANTOR_DEPTH_CAP {
        return Err(Error::DepthCap { depth, cap: CANTOR_DEPTH_CAP });
    }
    let mu: Vec<Rational> = (1..=depth).map(cantor_mu).collect();
    let mut kept = vec![(Rational::from(0), Rational::from(1))];
    let mut removed = Vec::new();
    check_level(&kept, 0)?;
    for n in 0..depth {
        let half = Rational::from(&mu[n as usize] / 2u32);
        let mut next = Vec::with_capacity(kept.len() * 2);
        for (a, b) in &kept {
            let mid = Rational::from(a + b) / 2u32;
            let lo = Rational::from(&mid - &half);
            let hi = Rational::from(&mid + &half);
            next.push((a.clone(), lo.clone()));
            next.push((hi.clone(), b.clone()));
            removed.push(Gap { level: n, lo, hi });
        }
        kept = next;
        check_level(&kept, n + 1)?;
    }
    removed.sort_by(|x, y| x.lo.cmp(&y.lo));
    let ca = CantorApprox { depth, kept, removed, mu };
    ca.check_bookkeeping()?;
    Ok(ca)
}

fn check_level(kept: &[(Rational, Rational)], n: u32) -> Result<()> {
    if kept.len() != 1usize << n {
        return Err(Error::InvalidSpectrum(format!("level {n} has {} intervals", kept.len())));
    }
    let lower = Rational::from((1, Integer::from(4).pow(n)));
    let upper = Rational::from((1, Integer::from(2).pow(n)));
    for (i, (a, b)) in kept.iter().enumerate() {
        let len = Rational::from(b - a);
        if len < lower || len > upper {
            return Err(Error::InvalidSpectrum(format!("level {n} interval {i} has length {len}")));
        }
        if i > 0 && kept[i - 1].1 >= *a {
            return Err(Error::InvalidSpectrum(format!("level {n} intervals {} and {i} touch", i - 1)));
        }
    }
    Ok(())
}

impl CantorApprox {
    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn kept(&self) -> &[(Rational, Rational)] {
        &self.kept
    }

    /// Gaps of every level, sorted by left endpoint.
    pub fn removed(&self) -> &[Gap] {
        &self.removed
    }

    pub fn mu(&self) -> &[Rational] {
        &self.mu
    }

    pub fn kept_measure(&self) -> Rational {
        self.kept.iter().fold(Rational::new(), |acc, (a, b)| acc + Rational::from(b - a))
    }

    pub fn removed_measure(&self) -> Rational {
        self.removed.iter().fold(Rational::new(), |acc, g| acc + Rational::from(&g.hi - &g.lo))
    }

    /// Σ_{n<depth} 2ⁿ μ_{n+1}.
    pub fn gap_series(&self) -> Rational {
        self.mu.iter().enumerate().fold(Rational::new(), |acc, (n, m)| acc + Rational::from(m << n as u32))
    }

    fn check_bookkeeping(&self) -> Result<()> {
        let removed = self.removed_measure();
        if removed != self.gap_series() {
            return Err(Error::InvalidSpectrum(format!("removed measure {removed} differs from the gap series")));
        }
        if self.kept_measure() + removed != 1 {
            return Err(Error::InvalidSpectrum("kept and removed measures do not add up to 1".into()));
        }
        Ok(())
    }

    /// The removed gaps as a spectrum, widths converted from exact values.
    pub fn complement_spectrum(&self) -> Result<Spectrum> {
        Spectrum::from_start_width(
            self.removed.iter().map(|g| (g.lo.to_f64(), Rational::from(&g.hi - &g.lo).to_f64())).collect(),
        )
    }

    /// |C_depth ∩ (lo, hi)| in exact arithmetic.
    pub fn kept_overlap(&self, lo: &Rational, hi: &Rational) -> Rational {
        let start = self.kept.partition_point(|(_, b)| b <= lo);
        let mut acc = Rational::new();
        for (a, b) in &self.kept[start..] {
            if a >= hi {
                break;
            }
            let l = if a > lo { a } else { lo };
            let r = if b < hi { b } else { hi };
            if l < r {
                acc += Rational::from(r - l);
            }
        }
        acc
    }
}

fn ratio_str(q: &Rational) -> [String; 2] {
    [q.numer().to_string(), q.denom().to_string()]
}

impl Serialize for CantorApprox {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct GapDump {
            level: u32,
            lo: [String; 2],
            hi: [String; 2],
        }
        let kept: Vec<[[String; 2]; 2]> = self.kept.iter().map(|(a, b)| [ratio_str(a), ratio_str(b)]).collect();
        let removed: Vec<GapDump> = self
            .removed
            .iter()
            .map(|g| GapDump { level: g.level, lo: ratio_str(&g.lo), hi: ratio_str(&g.hi) })
            .collect();
        let mu: Vec<[String; 2]> = self.mu.iter().map(ratio_str).collect();
        let mut st = s.serialize_struct("CantorApprox", 4)?;
        st.serialize_field("depth", &self.depth)?;
        st.serialize_field("kept", &kept)?;
        st.serialize_field("removed", &removed)?;
        st.serialize_field("mu", &mu)?;
        st.end()
    }
}

fn check_exponent(p: f64) -> Result<()> {
    if p > 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("p = {p} must exceed 1")))
    }
}

/// ‖F‖_{L_p} for F(x) = sin(πx)/(πx), the inverse transform of χ_{(0,1)} up to a phase.
///
/// Each unit interval is integrated with Simpson's rule after a smoothstep substitution that
/// flattens the |sin|^p cusps; beyond X the bound m_p Σ_{k≥X} (πk)^{-p} is added.
pub fn box_kernel_norm(p: f64) -> Result<f64> {
    check_exponent(p)?;
    if p.is_infinite() {
        return Ok(1.0);
    }
    const UNITS: usize = 4096;
    const NODES: usize = 32;
    let unit = |k: usize, weight: &dyn Fn(f64) -> f64| {
        let h = 1.0 / NODES as f64;
        let f = |u: f64| {
            let s = u * u * (3.0 - 2.0 * u);
            let ds = 6.0 * u * (1.0 - u);
            let sp = (PI * s).sin().powf(p);
            sp * weight(k as f64 + s) * ds
        };
        let mut acc = f(0.0) + f(1.0);
        for i in 1..NODES {
            acc += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * h / 3.0
    };
    let inv = |x: f64| if x == 0.0 { 1.0 } else { (PI * x).powf(-p) };
    let mut body = 0.0;
    for k in 0..UNITS {
        body += unit(k, &inv);
    }
    let mean = unit(0, &|_| 1.0);
    let x = UNITS as f64;
    let tail = mean * PI.powf(-p) * (x.powf(-p) + x.powf(1.0 - p) / (p - 1.0));
    Ok((2.0 * (body + tail)).powf(1.0 / p))
}

/// Σ_{ℓ≥1} 2^{ℓ−1} ℓ^{−ℓ(1−1/p)}, with the tail past ℓ₀ (where (1−1/p)·log₂ℓ₀ ≥ 2) bounded by 2^{−ℓ}.
pub fn cantor_series(p: f64) -> Result<f64> {
    check_exponent(p)?;
    let s = 1.0 - 1.0 / p;
    let start = 2f64.powf(2.0 / s).ceil();
    if start > 1e7 {
        return Err(Error::Domain(format!("series for p = {p} converges too slowly")));
    }
    let last = (start as u64).max(60);
    let mut acc = 0.0;
    for l in 1..=last {
        let lf = l as f64;
        acc += ((lf - 1.0) * 2f64.ln() - lf * s * lf.ln()).exp();
    }
    Ok(acc + 2f64.powf(-(last as f64)))
}

/// Exact ∫_{|x|>T} |F⁻¹χ_Ω|².
pub fn spectrum_l2_tail(spec: &Spectrum, t: f64) -> f64 {
    let parts = spec.parts();
    let pos = |k: usize| {
        let (a, w) = parts[k / 2];
        (a, if k % 2 == 1 { w } else { 0.0 })
    };
    interval_kernel_l2_tail(
        2 * parts.len(),
        |k| if k % 2 == 1 { 1.0 } else { -1.0 },
        |k, l| {
            if k / 2 == l / 2 {
                parts[k / 2].1
            } else {
                let (a, u) = pos(k);
                let (b, v) = pos(l);
                (b - a) + (v - u)
            }
        },
        t,
    )
}

/// Numeric and analytic sides of an L_p kernel estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelNorm {
    pub p: f64,
    /// Quadrature over the grid; at p = 2 the exact tail beyond the grid is included.
    pub numeric: f64,
    /// Upper bound for the part beyond the grid; 0 when already included.
    pub tail_bound: f64,
    pub analytic_bound: f64,
    /// |Ω| as f64, the p = 2 value of numeric².
    pub measure: f64,
}

fn kernel_norm(spec: &Spectrum, p: f64, grid: &Grid, series: f64) -> Result<KernelNorm> {
    check_exponent(p)?;
    let rate = 1.0 / grid.spacing();
    let required = 2.0 * spec.sup_abs();
    if rate <= required {
        return Err(Error::Nyquist { rate, required });
    }
    let k = indicator_kernel(spec.clone());
    let f = k.sample(grid);
    let analytic_bound = box_kernel_norm(p)? * series;
    let measure = spec.measure();
    let (numeric, tail_bound) = if p == 2.0 {
        let body = lebesgue_norm(&f, 2.0, Weight::ConstantOne)?;
        ((body * body + spectrum_l2_tail(spec, grid.half_width())).sqrt(), 0.0)
    } else {
        (lebesgue_norm(&f, p, Weight::ConstantOne)?, k.tail_bound(grid.half_width(), p))
    };
    Ok(KernelNorm { p, numeric, tail_bound, analytic_bound, measure })
}

/// ‖F⁻¹χ_{[0,1]∖C_depth}‖_{L_p} against ‖F‖_p Σ 2^{ℓ−1}ℓ^{−ℓ(1−1/p)}.
pub fn cantor_kernel_norm(ca: &CantorApprox, p: f64, grid: &Grid) -> Result<KernelNorm> {
    check_exponent(p)?;
    let series = cantor_series(p)?;
    if ca.removed.is_empty() {
        return Ok(KernelNorm { p, numeric: 0.0, tail_bound: 0.0, analytic_bound: box_kernel_norm(p)? * series, measure: 0.0 });
    }
    let rate = 1.0 / grid.spacing();
    if rate <= 2.0 {
        return Err(Error::Nyquist { rate, required: 2.0 });
    }
    kernel_norm(&ca.complement_spectrum()?, p, grid, series)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityReport {
    pub trials: usize,
    /// Trials with |B| > 2^{1−depth}.
    pub eligible: usize,
    /// Eligible trials whose density is below 1.
    pub meeting_gap: usize,
    pub max_density: f64,
}

/// Densities |C_depth ∩ B|/|B| over random open B ⊂ [0,1] with widths log-uniform in [2·4^{−depth}, 1].
pub fn no_interval_check<R: Rng + ?Sized>(ca: &CantorApprox, trials: usize, rng: &mut R) -> Result<DensityReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    const BITS: u32 = 60;
    let scale = Integer::from(1) << BITS;
    let dyadic = |x: f64| Rational::from(((x * (1u64 << BITS) as f64) as u64, scale.clone()));
    let min_width = 2.0 * 4f64.powi(-(ca.depth as i32));
    let threshold = Rational::from((2, Integer::from(1) << ca.depth));
    let mut report = DensityReport { trials, eligible: 0, meeting_gap: 0, max_density: 0.0 };
    for _ in 0..trials {
        let width = min_width.powf(rng.gen::<f64>());
        let start = rng.gen::<f64>() * (1.0 - width);
        let lo = dyadic(start);
        let mut hi = dyadic(start + width);
        if hi > 1 {
            hi = Rational::from(1);
        }
        if hi <= lo {
            continue;
        }
        let len = Rational::from(&hi - &lo);
        let density = ca.kept_overlap(&lo, &hi) / &len;
        if len > threshold {
            report.eligible += 1;
            if density < 1 {
                report.meeting_gap += 1;
            }
            report.max_density = report.max_density.max(density.to_f64());
        }
    }
    Ok(report)
}

/// I_j = (3·2^{j−2}, 3·2^{j−2} + 2^{−2j}) exactly.
pub fn lacunary_interval(j: u32) -> (Rational, Rational) {
    let lo = Rational::from(3) * Rational::from((Integer::from(1) << j, 4));
    let hi = Rational::from((1, Integer::from(1) << (2 * j))) + &lo;
    (lo, hi)
}

/// ⋃_{j≤J} I_j, checked to lie in (2^{j−1}, 2^j) in exact arithmetic.
pub fn lacunary_spectrum(levels: u32) -> Result<Spectrum> {
    if levels == 0 {
        return Err(Error::InvalidArgument("at least one level is required".into()));
    }
    if levels > LACUNARY_CAP {
        return Err(Error::DepthCap { depth: levels, cap: LACUNARY_CAP });
    }
    let mut parts = Vec::with_capacity(levels as usize);
    for j in 1..=levels {
        let (lo, hi) = lacunary_interval(j);
        let floor = Rational::from((Integer::from(1) << j, 2));
        let ceil = Rational::from(Integer::from(1) << j);
        if lo <= floor || hi >= ceil {
            return Err(Error::InvalidSpectrum(format!("I_{j} leaves its dyadic band")));
        }
        let width = Rational::from(&hi - &lo);
        parts.push((lo.to_f64(), width.to_f64()));
    }
    Spectrum::from_start_width(parts)
}

/// ‖F⁻¹χ_{I_1 ∪ … ∪ I_J}‖_{L_p} against ‖F‖_p Σ_{j≥1} 2^{−2j(1−1/p)}.
pub fn lacunary_kernel_norm(levels: u32, p: f64, grid: &Grid) -> Result<KernelNorm> {
    check_exponent(p)?;
    let r = 4f64.powf(-(1.0 - 1.0 / p));
    kernel_norm(&lacunary_spectrum(levels)?, p, grid, r / (1.0 - r))
}

/// Candidate window with Gaussian symbol e^{−ξ²/(2σ²)}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianSymbol {
    pub sigma: f64,
}

impl Symbol for GaussianSymbol {
    fn symbol(&self, xi: f64) -> f64 {
        (-xi * xi / (2.0 * self.sigma * self.sigma)).exp()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowEvidence {
    /// (j, sup over I_j of |Ŵ − 1|) for every level.
    pub deviations: Vec<(u32, f64)>,
    /// Maximum over the upper half of the levels.
    pub max_upper: f64,
    /// max_upper ≥ 1/2.
    pub evidence: bool,
}

const SYMBOL_SAMPLES: usize = 257;

pub fn no_window_evidence(levels: u32, candidate: &impl Symbol) -> Result<WindowEvidence> {
    let spec = lacunary_spectrum(levels)?;
    let deviations: Vec<(u32, f64)> = spec
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &(a, w))| {
            let dev = (0..SYMBOL_SAMPLES)
                .map(|s| {
                    let xi = a + w * s as f64 / (SYMBOL_SAMPLES - 1) as f64;
                    (candidate.symbol(xi) - 1.0).abs()
                })
                .fold(0.0, f64::max);
            (i as u32 + 1, dev)
        })
        .collect();
    let max_upper = deviations[(levels / 2) as usize..].iter().map(|d| d.1).fold(0.0, f64::max);
    Ok(WindowEvidence { deviations, max_upper, evidence: max_upper >= 0.5 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::smooth_window;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn mu_switches_to_the_power_rule_at_five() {
        let want = [q(1, 4), q(1, 16), q(1, 64), q(1, 256), q(1, 3125), q(1, 46656)];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(cantor_mu(n as u32 + 1), *w);
        }
    }

    #[test]
    fn first_levels_by_hand() {
        let c0 = fat_cantor(0).unwrap();
        assert_eq!(c0.kept(), &[(q(0, 1), q(1, 1))]);
        assert!(c0.removed().is_empty());

        let c1 = fat_cantor(1).unwrap();
        assert_eq!(c1.kept(), &[(q(0, 1), q(3, 8)), (q(5, 8), q(1, 1))]);
        assert_eq!(c1.removed(), &[Gap { level: 0, lo: q(3, 8), hi: q(5, 8) }]);

        // second cut removes 1/16 from the middle of [0, 3/8]
        let c2 = fat_cantor(2).unwrap();
        assert_eq!(c2.kept()[0], (q(0, 1), q(5, 32)));
        assert_eq!(c2.kept()[1], (q(7, 32), q(3, 8)));
    }

    #[test]
    fn measures_stay_above_one_half() {
        let mut prev = Rational::from(1);
        for d in 0..=10 {
            let c = fat_cantor(d).unwrap();
            let kept = c.kept_measure();
            assert!(kept <= prev);
            assert!(kept > q(1, 2));
            assert_eq!(c.removed().len(), (1usize << d) - 1);
            prev = kept;
        }
    }

    #[test]
    fn gaps_sit_at_parent_midpoints() {
        let c = fat_cantor(6).unwrap();
        let parents = fat_cantor(5).unwrap();
        let deepest: Vec<&Gap> = c.removed().iter().filter(|g| g.level == 5).collect();
        assert_eq!(deepest.len(), parents.kept().len());
        for (g, (a, b)) in deepest.iter().zip(parents.kept()) {
            assert_eq!(Rational::from(&g.lo + &g.hi), Rational::from(a + b));
            assert_eq!(Rational::from(&g.hi - &g.lo), cantor_mu(6));
        }
    }

    #[test]
    fn depth_cap() {
        assert_eq!(fat_cantor(25).unwrap_err(), Error::DepthCap { depth: 25, cap: 24 });
    }

    #[test]
    fn json_uses_string_pairs() {
        let v = serde_json::to_value(fat_cantor(1).unwrap()).unwrap();
        assert_eq!(v["kept"][0][1], serde_json::json!(["3", "8"]));
        assert_eq!(v["removed"][0]["hi"], serde_json::json!(["5", "8"]));
        assert_eq!(v["mu"][0], serde_json::json!(["1", "4"]));
    }

    #[test]
    fn box_kernel_norms() {
        assert!((box_kernel_norm(2.0).unwrap() - 1.0).abs() < 1e-6);
        assert_eq!(box_kernel_norm(f64::INFINITY).unwrap(), 1.0);
        // norms of a function bounded by 1 decrease in p once they exceed 1
        let a = box_kernel_norm(4.0 / 3.0).unwrap();
        let b = box_kernel_norm(4.0).unwrap();
        assert!(a > 1.0 && b < 1.0);
        assert!(box_kernel_norm(1.0).is_err());
    }

    #[test]
    fn series_at_infinity() {
        // Σ 2^{ℓ−1}/ℓ^ℓ, summed directly
        let direct: f64 = (1..40).map(|l| 2f64.powi(l - 1) / (l as f64).powi(l)).sum();
        assert!((cantor_series(f64::INFINITY).unwrap() - direct).abs() < 1e-15);
        assert!(cantor_series(1.001).is_err());
    }

    #[test]
    fn empty_complement_has_zero_norm() {
        let grid = Grid::new(8.0, 0.125).unwrap();
        let n = cantor_kernel_norm(&fat_cantor(0).unwrap(), 2.0, &grid).unwrap();
        assert_eq!(n.numeric, 0.0);
        assert!(n.analytic_bound > 0.0);
    }

    #[test]
    fn single_gap_plancherel() {
        let grid = Grid::new(16.0, 0.125).unwrap();
        let n = cantor_kernel_norm(&fat_cantor(1).unwrap(), 2.0, &grid).unwrap();
        assert!((n.numeric * n.numeric - 0.25).abs() < 1e-9, "{}", n.numeric * n.numeric - 0.25);
        assert!(n.numeric <= n.analytic_bound);
    }

    #[test]
    fn overlap_examples() {
        let c = fat_cantor(3).unwrap();
        assert_eq!(c.kept_overlap(&q(0, 1), &q(1, 1)), c.kept_measure());
        assert!(c.kept_overlap(&q(3, 8), &q(5, 8)) < q(1, 4));
        // every half-length window meets a gap at depth 2
        let c = fat_cantor(2).unwrap();
        for s in 0..=64 {
            let lo = q(s, 128);
            let hi = Rational::from(&lo + q(1, 2));
            assert!(c.kept_overlap(&lo, &hi) < q(1, 2));
        }
    }

    #[test]
    fn random_windows_meet_gaps() {
        let c = fat_cantor(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = no_interval_check(&c, 200, &mut rng).unwrap();
        assert!(r.eligible > 50);
        assert_eq!(r.meeting_gap, r.eligible);
        assert!(r.max_density < 1.0);
        assert!(no_interval_check(&c, 0, &mut rng).is_err());
    }

    #[test]
    fn lacunary_intervals() {
        assert_eq!(lacunary_interval(1), (q(3, 2), q(7, 4)));
        let s = lacunary_spectrum(30).unwrap();
        assert_eq!(s.parts().len(), 30);
        let total: f64 = (1..=30).map(|j| 4f64.powi(-j)).sum();
        assert!((s.measure() - total).abs() < 1e-16);
        assert!(lacunary_spectrum(31).is_err());
    }

    #[test]
    fn lacunary_nyquist() {
        let grid = Grid::new(8.0, 1.0 / 64.0).unwrap();
        assert!(matches!(lacunary_kernel_norm(6, 2.0, &grid), Err(Error::Nyquist { .. })));
    }

    #[test]
    fn single_lacunary_level_is_a_scaled_box() {
        let grid = Grid::new(64.0, 1.0 / 8.0).unwrap();
        let n = lacunary_kernel_norm(1, 2.0, &grid).unwrap();
        assert!((n.numeric - 0.5).abs() < 1e-10);
        // at p = 4 the truncated quadrature brackets 4^{-3/4}‖F‖_4
        let n = lacunary_kernel_norm(1, 4.0, &grid).unwrap();
        let exact = 4f64.powf(-0.75) * box_kernel_norm(4.0).unwrap();
        assert!(n.numeric <= exact * (1.0 + 1e-9));
        assert!(exact <= n.numeric + n.tail_bound);
    }

    #[test]
    fn band_limited_windows_miss_high_levels() {
        let grid = Grid::new(4.0, 1.0 / 64.0).unwrap();
        let w = smooth_window(Spectrum::symmetric(4.0).unwrap(), 1.0, grid).unwrap();
        let e = no_window_evidence(6, &w).unwrap();
        assert_eq!(e.deviations[5].1, 1.0);
        assert!(e.evidence);

        let g = no_window_evidence(12, &GaussianSymbol { sigma: 50.0 }).unwrap();
        let devs: Vec<f64> = g.deviations.iter().map(|d| d.1).collect();
        assert!(devs.windows(2).all(|w| w[1] >= w[0]));
        assert!(devs[11] > 0.999);

        let fine = Grid::new(4.0, 1.0 / 128.0).unwrap();
        let own = smooth_window(lacunary_spectrum(6).unwrap(), 0.5, fine).unwrap();
        let e = no_window_evidence(6, &own).unwrap();
        assert!(e.deviations.iter().all(|d| d.1 == 0.0));
        assert!(!e.evidence);
    }
}
