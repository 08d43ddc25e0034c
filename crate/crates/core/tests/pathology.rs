use pwlab_core::grid::Grid;
use pwlab_core::pathology::{
    cantor_kernel_norm, fat_cantor, lacunary_interval, lacunary_kernel_norm, lacunary_spectrum, no_interval_check,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Integer, Rational};

fn min_quarter_power(n: u32) -> Rational {
    let a = Rational::from((1, Integer::from(4u32).pow(n)));
    let b = Rational::from((1, Integer::from(n).pow(n)));
    a.min(b)
}

#[test]
fn depth_twelve_bookkeeping() {
    let c = fat_cantor(12).unwrap();
    let mut series = Rational::new();
    for n in 0..12u32 {
        series += min_quarter_power(n + 1) * Rational::from(Integer::from(1u32) << n);
    }
    assert_eq!(c.removed_measure(), series);
    assert!(series <= Rational::from((1, 2)));
    assert_eq!(c.kept_measure() + series, 1);
    assert_eq!(c.kept().len(), 4096);
    let lower = Rational::from((1, Integer::from(4u32).pow(12)));
    let upper = Rational::from((1, Integer::from(2u32).pow(12)));
    for (a, b) in c.kept() {
        let len = Rational::from(b - a);
        assert!(len >= lower && len <= upper);
    }
}

#[test]
fn cantor_norms_below_the_series_bound() {
    let c = fat_cantor(10).unwrap();
    let grid = Grid::new(64.0, 1.0 / 32.0).unwrap();
    for p in [4.0 / 3.0, 2.0, 4.0] {
        let n = cantor_kernel_norm(&c, p, &grid).unwrap();
        assert!(n.numeric + n.tail_bound <= n.analytic_bound, "p = {p}: {n:?}");
        if p == 2.0 {
            let removed = c.removed_measure().to_f64();
            assert!((n.numeric * n.numeric - removed).abs() <= 1e-6, "{n:?}");
        }
    }
}

#[test]
fn windows_longer_than_the_finest_kept_interval_meet_a_gap() {
    let c = fat_cantor(10).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let r = no_interval_check(&c, 500, &mut rng).unwrap();
    assert!(r.eligible > 100);
    assert_eq!(r.meeting_gap, r.eligible);
}

#[test]
fn lacunary_bands_are_exact_to_level_twenty() {
    for j in 1..=20u32 {
        let (lo, hi) = lacunary_interval(j);
        assert!(lo > Rational::from(Integer::from(1u32) << (j - 1)));
        assert!(hi < Rational::from(Integer::from(1u32) << j));
    }
    let s = lacunary_spectrum(20).unwrap();
    for (j, (a, b)) in s.intervals().into_iter().enumerate() {
        let j = j as i32 + 1;
        assert!(a > 2f64.powi(j - 1) && b < 2f64.powi(j));
    }
}

#[test]
fn lacunary_plancherel_and_bound() {
    let grid = Grid::new(64.0, 1.0 / 128.0).unwrap();
    let n = lacunary_kernel_norm(6, 2.0, &grid).unwrap();
    let total: f64 = (1..=6).map(|j| 4f64.powi(-j)).sum();
    assert!((n.numeric * n.numeric - total).abs() <= 1e-8, "{n:?}");
    assert!(n.numeric <= n.analytic_bound);
}
