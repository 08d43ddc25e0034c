//! The acceptance criteria, one suite each, with a machine-readable verdict.

use std::time::Instant;

use clap::ValueEnum;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::Serialize;
use serde_json::{json, Value};

use pwlab_core::discretization::{bupu_coeffs, seq_synth_bound, CoefSeq, DyadicScheme};
use pwlab_core::frames::{atomic_decomp, banach_frame_reconstruct, shannon_identity};
use pwlab_core::grid::{convolve, lebesgue_norm, ConvolutionMethod, Grid, ProfileConvolution, Weight};
use pwlab_core::kernels::{sinc_kernel, BandLimited};
use pwlab_core::pathology::{cantor_kernel_norm, fat_cantor, lacunary_interval, lacunary_kernel_norm};
use pwlab_core::toeplitz::{eigensweep, prolate_matrix};
use pwlab_core::Result;

use crate::config::{defaults, Experiment, SCHEMA_VERSION};
use crate::experiments::{frame_setup, oscillation_norms, random_inputs, young_trial, SHANNON_SHIFT};
use crate::table::Table;

pub const SEED: u64 = 2024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Shannon,
    Reproducing,
    Eigensweep,
    Coefficients,
    Overlap,
    Young,
    Cantor,
    Lacunary,
    Frames,
    Oscillation,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Shannon,
        Suite::Reproducing,
        Suite::Eigensweep,
        Suite::Coefficients,
        Suite::Overlap,
        Suite::Young,
        Suite::Cantor,
        Suite::Lacunary,
        Suite::Frames,
        Suite::Oscillation,
    ];

    pub fn id(self) -> u32 {
        Suite::ALL.iter().position(|&s| s == self).unwrap() as u32 + 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Shannon => "shannon",
            Suite::Reproducing => "reproducing",
            Suite::Eigensweep => "eigensweep",
            Suite::Coefficients => "coefficients",
            Suite::Overlap => "overlap",
            Suite::Young => "young",
            Suite::Cantor => "cantor",
            Suite::Lacunary => "lacunary",
            Suite::Frames => "frames",
            Suite::Oscillation => "oscillation",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub schema_version: u32,
    pub id: u32,
    pub suite: Suite,
    pub passed: bool,
    pub elapsed_s: f64,
    pub failures: Vec<String>,
    pub detail: Value,
    /// A side artifact (file name, CSV contents), if the suite produces one.
    #[serde(skip)]
    pub artifact: Option<(String, String)>,
}

impl Verdict {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut s = format!("{status} criterion {} ({}) in {:.2}s", self.id, self.suite.name(), self.elapsed_s);
        if let Some(f) = self.failures.first() {
            s.push_str(&format!(": {f}"));
            if self.failures.len() > 1 {
                s.push_str(&format!(" (+{} more)", self.failures.len() - 1));
            }
        }
        s
    }
}

#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    detail: serde_json::Map<String, Value>,
    artifact: Option<(String, String)>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn record(&mut self, key: &str, v: impl Serialize) {
        self.detail.insert(key.into(), serde_json::to_value(v).expect("detail serializes"));
    }
}

pub fn run(suite: Suite) -> Verdict {
    let start = Instant::now();
    let mut c = Checks::default();
    let outcome = match suite {
        Suite::Shannon => shannon(&mut c),
        Suite::Reproducing => reproducing(&mut c),
        Suite::Eigensweep => sweep(&mut c),
        Suite::Coefficients => coefficients(&mut c),
        Suite::Overlap => overlap(&mut c),
        Suite::Young => young(&mut c),
        Suite::Cantor => cantor(&mut c),
        Suite::Lacunary => lacunary(&mut c),
        Suite::Frames => frames(&mut c),
        Suite::Oscillation => oscillation(&mut c),
    };
    if let Err(e) = outcome {
        c.failures.push(format!("{} failed: {e}", e.precondition()));
    }
    let elapsed_s = start.elapsed().as_secs_f64();
    Verdict {
        schema_version: SCHEMA_VERSION,
        id: suite.id(),
        suite,
        passed: c.failures.is_empty(),
        elapsed_s,
        failures: c.failures,
        detail: Value::Object(c.detail),
        artifact: c.artifact,
    }
}

fn shannon(c: &mut Checks) -> Result<()> {
    let start = Instant::now();
    let grid = Grid::new(64.0, 1.0 / 64.0)?;
    let k = sinc_kernel(0.5)?;
    let e = 3.0;
    let mut errors = Vec::new();
    errors.push(("kernel", shannon_identity(|x| k.eval(x), &grid, 0.5, &k, 4096.0, Some(e))?.rel_error));
    let t = SHANNON_SHIFT;
    let shifted = shannon_identity(|x| k.eval(x - t), &grid, 0.5, &k, 4096.0, Some(e * (1.0 + t)))?;
    errors.push(("kernel_shifted", shifted.rel_error));
    for b in random_inputs(0.5, 64.0, 3, SEED)? {
        errors.push(("random", shannon_identity(|x| b.eval(x), &grid, 0.5, &k, 1024.0, Some(b.envelope()))?.rel_error));
    }
    for (name, err) in &errors {
        c.check(*err <= 1e-3, || format!("{name}: rel error {err:e} > 1e-3"));
    }
    let secs = start.elapsed().as_secs_f64();
    c.check(secs < 5.0, || format!("runtime {secs:.2}s >= 5s"));
    c.record("rel_errors", errors);
    c.record("runtime_s", secs);
    Ok(())
}

fn reproducing(c: &mut Checks) -> Result<()> {
    let grid = Grid::new(64.0, 1.0 / 64.0)?;
    let small = Grid::new(16.0, 1.0 / 128.0)?;
    let k = sinc_kernel(0.5)?;
    let pc = ProfileConvolution::new(grid, |x| k.eval(x))?;
    let ks = k.sample(&small);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut worst, mut worst_pair) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let b = BandLimited::random(&mut rng, 0.4, 4, 16.0)?;
        let f = b.sample(&grid);
        worst = worst.max(pc.convolve(&f)?.rel_l2_error(&f)?);
        let g = b.sample(&small);
        let fast = convolve(&g, &ks, ConvolutionMethod::Fft)?;
        let direct = convolve(&g, &ks, ConvolutionMethod::Direct)?;
        worst_pair = worst_pair.max(fast.rel_l2_error(&direct)?);
    }
    c.check(worst <= 1e-6, || format!("f*K differs from f by {worst:e}"));
    c.check(worst_pair <= 1e-10, || format!("FFT and direct convolution differ by {worst_pair:e}"));
    c.record("max_rel_error", worst);
    c.record("max_fft_direct", worst_pair);
    c.record("direct_size", small.count());
    Ok(())
}

fn sweep(c: &mut Checks) -> Result<()> {
    let start = Instant::now();
    let m0 = prolate_matrix(&DyadicScheme::new(0)?, 0.5)?;
    c.check(m0.column() == [1.0], || format!("M_0 = {:?}", m0.column()));
    let rows = eigensweep(0, 6, 0.5)?;
    let secs = start.elapsed().as_secs_f64();
    let mut table = Table::new(vec!["n", "size", "lambda_min", "lambda_max", "inverse_iteration_rel_diff"]);
    for r in &rows {
        c.check(r.lambda_min.is_positive(), || format!("n={}: lambda_min is not positive", r.n));
        c.check(r.lambda_max <= 1.0 + 1e-9, || format!("n={}: lambda_max {} > 1 + 1e-9", r.n, r.lambda_max));
        let d = r.cross_check.rel_diff;
        c.check(d <= 1e-9, || format!("n={}: the two lambda_min routes differ by {d:e}", r.n));
        table.push(vec![
            r.n.into(),
            r.size.into(),
            (&r.lambda_min).into(),
            r.lambda_max.into(),
            d.into(),
        ]);
    }
    c.check(rows.len() == 7, || format!("{} rows instead of 7", rows.len()));
    c.check(secs < 60.0, || format!("runtime {secs:.1}s >= 60s"));
    c.record("lambda_min", rows.iter().map(|r| (r.n, r.lambda_min.to_sci(12))).collect::<Vec<_>>());
    c.record("runtime_s", secs);
    let config = json!({"schema_version": SCHEMA_VERSION, "suite": "eigensweep", "omega": 0.5, "n": "0..6"});
    c.artifact = Some(("eigensweep_lambda_min.csv".into(), table.to_csv(&config.to_string())));
    Ok(())
}

fn coefficients(c: &mut Checks) -> Result<()> {
    let grid = Grid::new(16.0, 1.0 / 64.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let r = [4.0 / 3.0, 2.0, 3.0][i % 3];
        let w = if (i / 3) % 2 == 0 { Weight::ConstantOne } else { Weight::Polynomial(1.0) };
        let s = DyadicScheme::new(1 + (i / 6) as u32 % 3)?;
        let f = BandLimited::random(&mut rng, 0.4, 4, 4.0)?.sample(&grid);
        let lhs = bupu_coeffs(&f, &s)?.norm(r, w)?;
        let rhs = s.cell_measure().powf(1.0 - 1.0 / r) * w.sup_on_cube(s.q_half()) * lebesgue_norm(&f, r, w)?;
        let slack = lhs / rhs;
        worst = worst.max(slack);
        c.check(slack <= 1.0 + 1e-6, || format!("trial {i}: slack {slack}"));
    }
    c.record("max_slack", worst);
    Ok(())
}

fn overlap(c: &mut Checks) -> Result<()> {
    let grid = Grid::new(4.0, 1.0 / 64.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let s = DyadicScheme::new(1 + i as u32 % 3)?;
        let mut values = vec![Complex64::new(0.0, 0.0); s.size()];
        for _ in 0..rng.gen_range(1..12) {
            let j = rng.gen_range(0..values.len());
            values[j] = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        }
        let d = CoefSeq::on_scheme(&s, values)?;
        let w = if i % 2 == 0 { Weight::ConstantOne } else { Weight::Polynomial(1.0) };
        for p in [1.0, 2.0, f64::INFINITY] {
            let (lhs, rhs) = seq_synth_bound(&d, &s, p, w, w, &grid)?;
            worst = worst.max(lhs / rhs);
            c.check(lhs <= rhs * (1.0 + 1e-12), || format!("sequence {i}, p={p}: {lhs} > {rhs}"));
        }
    }
    c.record("max_ratio", worst);
    Ok(())
}

fn young(c: &mut Checks) -> Result<()> {
    let p = defaults(Experiment::Young);
    let grid = Grid::new(p.half_width.unwrap_or(8.0), p.spacing.unwrap_or(1.0 / 16.0))?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let (t, w, ratio) = young_trial(&grid, &mut rng, i)?;
        worst = worst.max(ratio);
        c.check(ratio <= 1.0 + 1e-6, || format!("trial {i} ({:?}, {}): margin {ratio}", t, w.name()));
    }
    c.record("max_margin", worst);
    Ok(())
}

fn cantor(c: &mut Checks) -> Result<()> {
    let ca = fat_cantor(12)?;
    let mut series = Rational::new();
    for n in 0..12u32 {
        let m = n + 1;
        let mu = Rational::from((1, Integer::from(4u32).pow(m))).min(Rational::from((1, Integer::from(m).pow(m))));
        series += mu * Rational::from(Integer::from(1u32) << n);
    }
    let removed = ca.removed_measure();
    c.check(removed == series, || format!("removed measure {removed} differs from {series}"));
    c.check(removed <= Rational::from((1, 2)), || format!("removed measure {removed} exceeds 1/2"));
    for d in 0..=12u32 {
        let level = fat_cantor(d)?;
        let lower = Rational::from((1, Integer::from(4u32).pow(d)));
        let upper = Rational::from((1, Integer::from(2u32).pow(d)));
        let ok = level.kept().iter().all(|(a, b)| {
            let len = Rational::from(b - a);
            len >= lower && len <= upper
        });
        c.check(ok, || format!("a kept interval at level {d} leaves [4^-{d}, 2^-{d}]"));
    }
    let grid = Grid::new(64.0, 1.0 / 32.0)?;
    let mut norms = Vec::new();
    for p in [4.0 / 3.0, 2.0, 4.0] {
        let n = cantor_kernel_norm(&ca, p, &grid)?;
        c.check(n.numeric + n.tail_bound <= n.analytic_bound, || {
            format!("p={p}: numeric {} + tail {} > bound {}", n.numeric, n.tail_bound, n.analytic_bound)
        });
        if p == 2.0 {
            let gap = (n.numeric * n.numeric - removed.to_f64()).abs();
            c.check(gap <= 1e-6, || format!("Plancherel mismatch {gap:e}"));
            c.record("plancherel_error", gap);
        }
        norms.push(n);
    }
    c.record("removed_measure", removed.to_string());
    c.record("norms", norms);
    Ok(())
}

fn lacunary(c: &mut Checks) -> Result<()> {
    for j in 1..=20u32 {
        let (lo, hi) = lacunary_interval(j);
        let inside = lo > Rational::from(Integer::from(1u32) << (j - 1)) && hi < Rational::from(Integer::from(1u32) << j);
        c.check(inside, || format!("I_{j} = ({lo}, {hi}) leaves (2^{}, 2^{j})", j - 1));
    }
    let grid = Grid::new(64.0, 1.0 / 128.0)?;
    let n = lacunary_kernel_norm(6, 2.0, &grid)?;
    c.check(n.numeric <= n.analytic_bound * (1.0 + 1e-9), || {
        format!("numeric {} > bound {}", n.numeric, n.analytic_bound)
    });
    let total: f64 = (1..=6).map(|j| 4f64.powi(-j)).sum();
    let gap = (n.numeric * n.numeric - total).abs();
    c.check(gap <= 1e-8, || format!("Plancherel mismatch {gap:e}"));
    c.record("norm", n);
    c.record("plancherel_error", gap);
    Ok(())
}

fn frames(c: &mut Checks) -> Result<()> {
    let s = frame_setup(&defaults(Experiment::Frames))?;
    c.check(s.cert.granted && s.cert.c < 1.0, || format!("certificate refused with c = {}", s.cert.c));
    c.record("certificate", s.cert);
    let mut curves = Vec::new();
    for (i, b) in random_inputs(0.5, 64.0, 3, SEED)?.iter().enumerate() {
        let f = b.sample(&s.grid);
        let out = banach_frame_reconstruct(&f, &s.family, &s.kernel, &s.cert, 2.0, 1e-9, 50)?;
        let last = out.error_curve.last().map_or(f64::INFINITY, |p| p.error_r);
        c.check(last <= 1e-6 && out.iterations <= 50, || {
            format!("reconstruction {i}: error {last:e} after {} iterations", out.iterations)
        });
        for p in out.error_curve.iter().skip(3) {
            if let Some(r) = p.ratio {
                c.check(r <= s.cert.c + 0.05, || format!("reconstruction {i}: ratio {r} at iteration {}", p.iter));
            }
        }
        curves.push(out.error_curve);
    }
    c.record("reconstruction_curves", curves);
    let atomic = defaults(Experiment::Atomic);
    let mut errors = Vec::new();
    for (i, b) in random_inputs(0.5, 64.0, 10, SEED + 1)?.iter().enumerate() {
        let f = b.sample(&s.grid);
        let out = atomic_decomp(&f, &s.family, &s.kernel, &s.window, &s.cert, 2.0, atomic.tol.unwrap_or(1e-6), 50)?;
        c.check(out.recon_error <= 1e-6, || format!("decomposition {i}: error {:e}", out.recon_error));
        errors.push(out.recon_error);
    }
    c.record("atomic_errors", errors);
    Ok(())
}

fn oscillation(c: &mut Checks) -> Result<()> {
    let grid = Grid::new(64.0, 1.0 / 256.0)?;
    let k = sinc_kernel(0.5)?;
    let mut rows = Vec::new();
    for n in 0..=6u32 {
        let (osc, lmax, kn) = oscillation_norms(&k, &grid, n)?;
        c.check(osc <= lmax + kn, || format!("n={n}: {osc} > {lmax} + {kn}"));
        rows.push((n, osc, lmax, kn));
    }
    for w in rows.windows(2) {
        c.check(w[1].1 < w[0].1, || format!("osc norm does not decrease from n={} to n={}", w[0].0, w[1].0));
    }
    c.record("rows", rows);
    Ok(())
}

/// Runs one suite or all of them in order.
pub fn run_suites(suite: Option<Suite>) -> Vec<Verdict> {
    match suite {
        Some(s) => vec![run(s)],
        None => Suite::ALL.iter().map(|&s| run(s)).collect(),
    }
}

