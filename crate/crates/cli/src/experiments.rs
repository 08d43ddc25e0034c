//! One runner per experiment. Each validates its inputs, computes, and returns a table.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use pwlab_core::discretization::DyadicScheme;
use pwlab_core::frames::{
    atomic_decomp, banach_frame_reconstruct, contraction_cert, shannon_identity, ContractionCert, CurvePoint,
    SamplingFamily,
};
use pwlab_core::grid::{lebesgue_norm, young_margin, ExponentTriple, Grid, GridFunction, Weight};
use pwlab_core::kernels::{kernel_oscillation, sinc_kernel, smooth_window, AnalyticKernel, BandLimited, Spectrum};
use pwlab_core::pathology::{cantor_kernel_norm, fat_cantor, lacunary_kernel_norm, no_interval_check};
use pwlab_core::toeplitz::eigensweep;
use pwlab_core::{Error, Result};

use crate::config::{Experiment, ExperimentConfig, Params};
use crate::table::Table;

/// Shift of the second Shannon test function.
pub const SHANNON_SHIFT: f64 = 5.0 / 64.0;

pub struct Outcome {
    pub table: Table,
    /// One line per row, for the terminal.
    pub summary: Vec<String>,
    /// Everything the table holds plus structured extras.
    pub json: Value,
}

fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::InvalidArgument(format!("{name} is not set")))
}

fn grid(p: &Params) -> Result<Grid> {
    Grid::new(need(&p.half_width, "T")?, need(&p.spacing, "h")?)
}

/// Band of the random test functions relative to the kernel bandwidth.
pub const TEST_BAND: f64 = 0.8;
/// Spread of the random test-function centres relative to the grid half width.
pub const TEST_SPREAD: f64 = 0.25;

pub fn random_inputs(omega: f64, half_width: f64, count: usize, seed: u64) -> Result<Vec<BandLimited>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| BandLimited::random(&mut rng, TEST_BAND * omega, 4, TEST_SPREAD * half_width)).collect()
}

pub fn run(config: &ExperimentConfig) -> Result<Outcome> {
    let p = &config.params;
    match config.experiment {
        Experiment::Eigensweep => run_eigensweep(p),
        Experiment::Shannon => run_shannon(p),
        Experiment::Frames => run_frames(p, false),
        Experiment::Atomic => run_frames(p, true),
        Experiment::Cantor => run_cantor(p),
        Experiment::Lacunary => run_lacunary(p),
        Experiment::Young => run_young(p),
        Experiment::Osc => run_osc(p),
    }
}

fn run_eigensweep(p: &Params) -> Result<Outcome> {
    let omega = need(&p.omega, "omega")?;
    let range = need(&p.n, "n")?;
    sinc_kernel(omega)?;
    let rows = eigensweep(range.lo, range.hi, omega)?;
    let mut table = Table::new(vec![
        "n",
        "size",
        "lambda_min",
        "lambda_max",
        "sn_norm",
        "c_n",
        "precision_bits",
        "inverse_iteration_rel_diff",
    ]);
    let mut summary = Vec::new();
    for r in &rows {
        table.push(vec![
            r.n.into(),
            r.size.into(),
            (&r.lambda_min).into(),
            r.lambda_max.into(),
            (&r.sn_norm).into(),
            (&r.c_n).into(),
            r.precision_bits.into(),
            r.cross_check.rel_diff.into(),
        ]);
        summary.push(format!(
            "n={} size={} lambda_min={} lambda_max={:.12} bits={}",
            r.n,
            r.size,
            r.lambda_min.to_sci(12),
            r.lambda_max,
            r.precision_bits
        ));
    }
    Ok(Outcome { table, summary, json: serde_json::to_value(&rows).expect("rows serialize") })
}

fn run_shannon(p: &Params) -> Result<Outcome> {
    let omega = need(&p.omega, "omega")?;
    let rate = need(&p.rate, "R")?;
    let reach = need(&p.reach, "reach")?;
    let g = grid(p)?;
    let k = sinc_kernel(omega)?;
    if rate < omega {
        return Err(Error::Nyquist { rate: 2.0 * rate, required: 2.0 * omega });
    }
    if reach < g.half_width() {
        return Err(Error::InvalidArgument(format!("reach {reach} is inside the grid")));
    }
    let inputs = random_inputs(omega, g.half_width(), need(&p.functions, "functions")?, need(&p.seed, "seed")?)?;
    let e = 1.0 + 4.0 * omega;
    let mut table = Table::new(vec!["function", "rate", "count", "rel_error", "tail_bound"]);
    let mut summary = Vec::new();
    let mut json_rows = Vec::new();
    let mut record = |name: String, r: pwlab_core::frames::ShannonReport| {
        summary.push(format!("{name}: rel_error={:.3e} tail_bound={:?}", r.rel_error, r.tail_bound));
        table.push(vec![name.as_str().into(), r.rate.into(), r.count.into(), r.rel_error.into(), r.tail_bound.into()]);
        json_rows.push(json!({"function": name, "report": r}));
    };
    record("kernel".into(), shannon_identity(|x| k.eval(x), &g, rate, &k, reach, Some(e))?);
    let t = SHANNON_SHIFT;
    record(
        "kernel_shifted".into(),
        shannon_identity(|x| k.eval(x - t), &g, rate, &k, reach, Some(e * (1.0 + t)))?,
    );
    for (i, b) in inputs.iter().enumerate() {
        record(format!("random_{i}"), shannon_identity(|x| b.eval(x), &g, rate, &k, reach, Some(b.envelope()))?);
    }
    Ok(Outcome { table, summary, json: Value::Array(json_rows) })
}

pub struct FrameSetup {
    pub grid: Grid,
    pub kernel: AnalyticKernel,
    pub window: pwlab_core::kernels::SmoothWindow,
    pub family: SamplingFamily,
    pub cert: ContractionCert,
    pub r: f64,
}

pub fn frame_setup(p: &Params) -> Result<FrameSetup> {
    let omega = need(&p.omega, "omega")?;
    let g = grid(p)?;
    let k = sinc_kernel(omega)?;
    let spacing = need(&p.x_spacing, "x_spacing")?;
    let r = need(&p.r, "r")?.0;
    let w = smooth_window(Spectrum::symmetric(omega)?, need(&p.margin, "margin")?, g)?;
    let family = SamplingFamily::uniform(spacing, g.half_width() - spacing)?;
    let cert = contraction_cert(&k, &w, need(&p.bupu_half, "bupu_half")?, r)?;
    Ok(FrameSetup { grid: g, kernel: k, window: w, family, cert, r })
}

fn curve_rows(table: &mut Table, name: &str, curve: &[CurvePoint]) {
    for c in curve {
        table.push(vec![name.into(), c.iter.into(), c.error_r.into(), c.ratio.into()]);
    }
}

fn run_frames(p: &Params, atomic: bool) -> Result<Outcome> {
    let s = frame_setup(p)?;
    let tol = need(&p.tol, "tol")?;
    let max_iter = need(&p.max_iter, "max_iter")?;
    if !(tol >= 0.0) || max_iter == 0 {
        return Err(Error::InvalidArgument("tol must be non-negative and max_iter positive".into()));
    }
    let omega = need(&p.omega, "omega")?;
    let inputs = random_inputs(omega, s.grid.half_width(), need(&p.functions, "functions")?, need(&p.seed, "seed")?)?;
    if !s.cert.granted {
        return Err(Error::ContractionRefused { c: s.cert.c });
    }
    let mut functions: Vec<(String, GridFunction)> = vec![("kernel".into(), s.kernel.sample(&s.grid))];
    for (i, b) in inputs.iter().enumerate() {
        functions.push((format!("random_{i}"), b.sample(&s.grid)));
    }
    let mut table = Table::new(vec!["function", "iter", "error_r", "ratio"]);
    table.note("certificate", serde_json::to_string(&s.cert).expect("certificate serializes"));
    let mut summary = vec![format!("certificate: c={:.6} granted={}", s.cert.c, s.cert.granted)];
    let mut json_rows = Vec::new();
    for (name, f) in &functions {
        if atomic {
            let out = atomic_decomp(f, &s.family, &s.kernel, &s.window, &s.cert, s.r, tol, max_iter)?;
            curve_rows(&mut table, name, &out.error_curve);
            summary.push(format!(
                "{name}: iterations={} converged={} recon_error={:.3e}",
                out.iterations, out.converged, out.recon_error
            ));
            json_rows.push(json!({"function": name, "iterations": out.iterations, "converged": out.converged,
                "recon_error": out.recon_error, "error_curve": out.error_curve}));
        } else {
            let out = banach_frame_reconstruct(f, &s.family, &s.kernel, &s.cert, s.r, tol, max_iter)?;
            curve_rows(&mut table, name, &out.error_curve);
            let last = out.error_curve.last().map_or(f64::NAN, |c| c.error_r);
            summary.push(format!(
                "{name}: iterations={} converged={} error={last:.3e}",
                out.iterations, out.converged
            ));
            json_rows.push(json!({"function": name, "iterations": out.iterations, "converged": out.converged,
                "error_curve": out.error_curve, "step_curve": out.step_curve}));
        }
    }
    Ok(Outcome { table, summary, json: json!({"certificate": s.cert, "runs": json_rows}) })
}

fn exponents(p: &Params) -> Result<Vec<f64>> {
    let list = need(&p.p, "p")?;
    if list.is_empty() {
        return Err(Error::InvalidArgument("p list is empty".into()));
    }
    list.iter()
        .map(|e| if e.0 > 1.0 { Ok(e.0) } else { Err(Error::Domain(format!("p = {} must exceed 1", e.0))) })
        .collect()
}

fn run_cantor(p: &Params) -> Result<Outcome> {
    let g = grid(p)?;
    let ps = exponents(p)?;
    let trials = need(&p.trials, "trials")?;
    if g.spacing() >= 0.5 {
        return Err(Error::Nyquist { rate: 1.0 / g.spacing(), required: 2.0 });
    }
    let ca = fat_cantor(need(&p.depth, "depth")?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(need(&p.seed, "seed")?);
    let density = no_interval_check(&ca, trials, &mut rng)?;
    let mut table = Table::new(vec!["depth", "p", "numeric", "analytic_bound", "tail_bound", "removed_measure"]);
    table.note("removed_measure_exact", ca.removed_measure().to_string());
    table.note("density", serde_json::to_string(&density).expect("report serializes"));
    let mut summary = vec![format!(
        "depth={} removed={} ({:.12}) density: {}/{} windows meet a gap, max density {:.6}",
        ca.depth(),
        ca.removed_measure(),
        ca.removed_measure().to_f64(),
        density.meeting_gap,
        density.eligible,
        density.max_density
    )];
    let mut norms = Vec::new();
    for &e in &ps {
        let n = cantor_kernel_norm(&ca, e, &g)?;
        table.push(vec![
            ca.depth().into(),
            e.into(),
            n.numeric.into(),
            n.analytic_bound.into(),
            n.tail_bound.into(),
            n.measure.into(),
        ]);
        summary.push(format!("p={e}: numeric={:.6e} analytic_bound={:.6e}", n.numeric, n.analytic_bound));
        norms.push(n);
    }
    Ok(Outcome { table, summary, json: json!({"approx": ca, "norms": norms, "density": density}) })
}

fn run_lacunary(p: &Params) -> Result<Outcome> {
    let g = grid(p)?;
    let ps = exponents(p)?;
    let levels = need(&p.levels, "J")?;
    let mut table = Table::new(vec!["levels", "p", "numeric", "analytic_bound", "tail_bound", "measure"]);
    let mut summary = Vec::new();
    let mut norms = Vec::new();
    for &e in &ps {
        let n = lacunary_kernel_norm(levels, e, &g)?;
        table.push(vec![
            levels.into(),
            e.into(),
            n.numeric.into(),
            n.analytic_bound.into(),
            n.tail_bound.into(),
            n.measure.into(),
        ]);
        summary.push(format!("p={e}: numeric={:.6e} analytic_bound={:.6e}", n.numeric, n.analytic_bound));
        norms.push(n);
    }
    Ok(Outcome { table, summary, json: json!({"norms": norms}) })
}

/// The exponent triples (p, q, r) with 1 + 1/p = 1/q + 1/r used by the Young runs.
pub const YOUNG_TRIPLES: [(f64, f64, f64); 3] = [(2.0, 2.0, 1.0), (4.0, 2.0, 4.0 / 3.0), (f64::INFINITY, 2.0, 2.0)];

pub fn young_trial(g: &Grid, rng: &mut ChaCha8Rng, trial: usize) -> Result<(ExponentTriple, Weight, f64)> {
    let (a, b, c) = YOUNG_TRIPLES[trial % 3];
    let t = ExponentTriple::new(a, b, c)?;
    let weight = if (trial / 3) % 2 == 0 { Weight::ConstantOne } else { Weight::Polynomial(1.0) };
    let spread = g.half_width() / 2.0;
    let f = BandLimited::random(rng, 0.4, 3, spread)?.sample(g);
    let h = BandLimited::random(rng, 0.4, 2, spread)?.sample(g);
    Ok((t, weight, young_margin(&f, &h, t, weight, weight)?.ratio))
}

fn run_young(p: &Params) -> Result<Outcome> {
    let g = grid(p)?;
    let trials = need(&p.trials, "trials")?;
    let mut rng = ChaCha8Rng::seed_from_u64(need(&p.seed, "seed")?);
    let mut table = Table::new(vec!["trial", "p", "q", "r", "weight", "ratio"]);
    let mut worst: f64 = 0.0;
    for i in 0..trials {
        let (t, w, ratio) = young_trial(&g, &mut rng, i)?;
        worst = worst.max(ratio);
        table.push(vec![i.into(), t.p.into(), t.q.into(), t.r.into(), w.name().as_str().into(), ratio.into()]);
    }
    let summary = vec![format!("{trials} trials, largest margin {worst:.12}")];
    Ok(Outcome { table, summary, json: json!({"trials": trials, "max_ratio": worst}) })
}

/// ‖osc_{Q_n} K‖₂, ‖local max K‖₂ and ‖K‖₂ on the grid.
pub fn oscillation_norms(k: &AnalyticKernel, g: &Grid, n: u32) -> Result<(f64, f64, f64)> {
    let s = DyadicScheme::new(n)?;
    let (osc, lmax) = kernel_oscillation(k, g, s.q_half(), 4)?;
    let norm = |f: &GridFunction| lebesgue_norm(f, 2.0, Weight::ConstantOne);
    Ok((norm(&osc)?, norm(&lmax)?, norm(&k.sample(g))?))
}

fn run_osc(p: &Params) -> Result<Outcome> {
    let g = grid(p)?;
    let k = sinc_kernel(need(&p.omega, "omega")?)?;
    let range = need(&p.n, "n")?;
    let finest = DyadicScheme::new(range.hi)?;
    if finest.q_half() < g.spacing() {
        return Err(Error::Resolution(format!("cube half width {} is below h", finest.q_half())));
    }
    let mut table = Table::new(vec!["n", "q_half", "osc_l2", "local_max_l2", "kernel_l2"]);
    let mut summary = Vec::new();
    let mut rows = Vec::new();
    for n in range.lo..=range.hi {
        let (osc, lmax, kn) = oscillation_norms(&k, &g, n)?;
        let q = DyadicScheme::new(n)?.q_half();
        table.push(vec![n.into(), q.into(), osc.into(), lmax.into(), kn.into()]);
        summary.push(format!("n={n}: osc={osc:.6e} local_max={lmax:.6e} kernel={kn:.6e}"));
        rows.push(json!({"n": n, "q_half": q, "osc_l2": osc, "local_max_l2": lmax, "kernel_l2": kn}));
    }
    Ok(Outcome { table, summary, json: Value::Array(rows) })
}

