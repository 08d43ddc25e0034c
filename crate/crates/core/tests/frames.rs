use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pwlab_core::frames::{
    atomic_decomp, banach_frame_reconstruct, contraction_cert, sample_op, shannon_identity, ContractionCert, SamplingFamily,
};
use pwlab_core::grid::{lebesgue_norm, Grid, Weight};
use pwlab_core::kernels::{sinc_kernel, smooth_window, AnalyticKernel, BandLimited, SmoothWindow, Spectrum};

struct Setup {
    grid: Grid,
    k: AnalyticKernel,
    w: SmoothWindow,
    cert: ContractionCert,
    x: SamplingFamily,
}

fn setup() -> Setup {
    let grid = Grid::new(64.0, 1.0 / 64.0).unwrap();
    let k = sinc_kernel(0.5).unwrap();
    let w = smooth_window(Spectrum::symmetric(0.5).unwrap(), 0.25, grid).unwrap();
    let cert = contraction_cert(&k, &w, 0.125, 2.0).unwrap();
    let x = SamplingFamily::uniform(0.125, 63.875).unwrap();
    Setup { grid, k, w, cert, x }
}

#[test]
fn sampling_identity_for_shifted_kernels() {
    let grid = Grid::new(64.0, 1.0 / 64.0).unwrap();
    let k = sinc_kernel(0.5).unwrap();
    for t in [0.0, 5.0 / 64.0, 0.5] {
        let f = |x: f64| k.eval(x - t);
        for rate in [0.5, 1.0] {
            let r = shannon_identity(f, &grid, rate, &k, 4096.0, Some(3.0 * (1.0 + t))).unwrap();
            assert!(r.rel_error <= 1e-3, "t={t} R={rate}: {}", r.rel_error);
            assert!(r.rel_error <= r.tail_bound.unwrap());
        }
    }
}

#[test]
fn sampling_identity_for_random_band_limited_functions() {
    let grid = Grid::new(64.0, 1.0 / 64.0).unwrap();
    let k = sinc_kernel(0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3 {
        let b = BandLimited::random(&mut rng, 0.4, 4, 16.0).unwrap();
        for rate in [0.5, 1.0] {
            let r = shannon_identity(|x| b.eval(x), &grid, rate, &k, 1024.0, Some(b.envelope())).unwrap();
            assert!(r.rel_error <= 1e-10);
        }
    }
}

#[test]
fn samples_are_bounded_by_the_function() {
    let grid = Grid::new(64.0, 1.0 / 64.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..5 {
        let f = BandLimited::random(&mut rng, 0.4, 4, 16.0).unwrap().sample(&grid);
        let c = sample_op(&f, 0.5, 63).unwrap();
        // for band 1/2 and unit spacing the samples carry the L_2 norm exactly
        let ratio = c.norm(2.0, Weight::ConstantOne).unwrap() / lebesgue_norm(&f, 2.0, Weight::ConstantOne).unwrap();
        assert!((ratio - 1.0).abs() < 1e-6, "{ratio}");
    }
}

#[test]
fn frame_reconstruction_converges_geometrically() {
    let s = setup();
    assert!(s.cert.granted);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..3 {
        let f = BandLimited::random(&mut rng, 0.4, 4, 16.0).unwrap().sample(&s.grid);
        let out = banach_frame_reconstruct(&f, &s.x, &s.k, &s.cert, 2.0, 1e-9, 50).unwrap();
        assert!(out.converged);
        assert!(out.error_curve.last().unwrap().error_r <= 1e-6);
        for p in out.error_curve.iter().skip(3) {
            if let Some(r) = p.ratio {
                assert!(r <= s.cert.c + 0.05, "ratio {r} at {}", p.iter);
            }
        }
        let resampled = sample_op(&out.recon, 4.0, 511).unwrap();
        let original = sample_op(&f, 4.0, 511).unwrap();
        for (a, b) in resampled.values().iter().zip(original.values()) {
            assert!((a - b).norm() <= 1e-6);
        }
    }
}

#[test]
fn kernel_reconstruction_stops_at_the_truncation_floor() {
    let s = setup();
    let f = s.k.sample(&s.grid);
    let out = banach_frame_reconstruct(&f, &s.x, &s.k, &s.cert, 2.0, 1e-9, 50).unwrap();
    let errors: Vec<f64> = out.error_curve.iter().map(|p| p.error_r).collect();
    // the 1/x tail of K beyond the sampled window leaves a floor near 1.6e-3
    assert!(errors[..5].windows(2).all(|w| w[1] < w[0]));
    assert!(errors.iter().all(|&e| e < 2e-2));
    assert!(errors[errors.len() - 1] < 2.5e-3);
}

#[test]
fn reconstruction_does_not_depend_on_the_exponent() {
    let s = setup();
    let cert4 = contraction_cert(&s.k, &s.w, 0.125, 4.0).unwrap();
    assert!(!cert4.rc_certified);
    assert!(cert4.granted, "c = {}", cert4.c);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = BandLimited::random(&mut rng, 0.4, 4, 16.0).unwrap().sample(&s.grid);
    let a = banach_frame_reconstruct(&f, &s.x, &s.k, &s.cert, 2.0, 0.0, 4).unwrap();
    let b = banach_frame_reconstruct(&f, &s.x, &s.k, &cert4, 4.0, 0.0, 4).unwrap();
    assert_eq!(a.iterations, b.iterations);
    assert!(a.recon.sub(&b.recon).unwrap().max_abs() <= 1e-8);
}

#[test]
fn atomic_decomposition_round_trip() {
    let s = setup();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let f = BandLimited::random(&mut rng, 0.4, 4, 16.0).unwrap().sample(&s.grid);
        let out = atomic_decomp(&f, &s.x, &s.k, &s.w, &s.cert, 2.0, 1e-6, 50).unwrap();
        assert!(out.converged && out.recon_error <= 1e-6);
        let ratio = out.coeffs.norm(2.0, Weight::ConstantOne).unwrap() / lebesgue_norm(&f, 2.0, Weight::ConstantOne).unwrap();
        assert!(ratio < 1.0, "{ratio}");
    }
}

#[test]
fn atomic_decomposition_of_an_atom() {
    let s = setup();
    let f = s.k.sample_shifted(&s.grid, 1.25);
    let out = atomic_decomp(&f, &s.x, &s.k, &s.w, &s.cert, 2.0, 1e-6, 50).unwrap();
    let errors: Vec<f64> = out.error_curve.iter().map(|p| p.error_r).collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]));
    // edge leakage of the slowly decaying atom slows the tail of the iteration
    assert!(out.recon_error <= 1e-3, "{:?}", errors);
}
