use proptest::prelude::*;
use xychain::closedform::{ground_energy, magnetization, susceptibility, ModelParams, PhaseRegion};
use xychain::quadoracle::{ground_energy_integral, QuadratureSpec};
use xychain::verify::halton;

fn p(a: f64, g: f64) -> ModelParams {
    ModelParams::new(a, g).unwrap()
}

#[test]
fn agrees_with_quadrature_at_500_quasi_random_points() {
    let spec = QuadratureSpec::default();
    let mut regions = [0usize; 3];
    for i in 1..=500 {
        let q = p(2.0 * halton(i, 2), 1.0 - halton(i, 3));
        match q.region() {
            PhaseRegion::DiskInterior => regions[0] += 1,
            PhaseRegion::AnnulusWeakField => regions[1] += 1,
            PhaseRegion::StrongField => regions[2] += 1,
            _ => {}
        }
        let exact = ground_energy_integral(q, &spec).unwrap().value;
        assert!((ground_energy(q) - exact).abs() < 1e-10, "{q}");
    }
    assert!(regions.iter().all(|&n| n > 20), "{regions:?}");
}

#[test]
fn continuous_across_branch_boundaries() {
    let h = 1e-8;
    for i in 1..=40 {
        let g = 0.05 + 0.9 * halton(i, 2);
        let ac = (1.0 - g * g).sqrt();
        assert!((ground_energy(p(ac - h, g)) - ground_energy(p(ac + h, g))).abs() < 1e-7);
        assert!((ground_energy(p(1.0 - h, g)) - ground_energy(p(1.0 + h, g))).abs() < 1e-7);
    }
}

#[test]
fn maximum_at_the_origin() {
    let top = ground_energy(p(0.0, 0.0));
    for i in 0..=80 {
        for j in 0..=80 {
            let (a, g) = (2.0 * i as f64 / 80.0, -1.0 + 2.0 * j as f64 / 80.0);
            if (i, j) != (0, 40) {
                assert!(ground_energy(p(a, g)) < top, "({a}, {g})");
            }
        }
    }
}

#[test]
fn magnetization_rises_monotonically_in_field() {
    for &g in &[0.1, 1.0 / 3.0, 0.6, 1.0] {
        let ms: Vec<f64> = (0..=400).map(|i| magnetization(p(2.0 * i as f64 / 400.0, g))).collect();
        assert_eq!(ms[0], 0.0);
        assert!(ms.windows(2).all(|w| w[1] > w[0]), "gamma = {g}");
        assert!(ms.iter().all(|&m| (0.0..=0.5).contains(&m)));
    }
}

proptest! {
    #[test]
    fn energy_is_even_in_both_parameters(a in -2.0f64..2.0, g in -1.0f64..1.0) {
        let e = ground_energy(p(a, g));
        prop_assert_eq!(e, ground_energy(p(-a, g)));
        prop_assert_eq!(e, ground_energy(p(a, -g)));
    }

    #[test]
    fn susceptibility_positive_off_critical_line(a in 0.0f64..2.0, g in 0.01f64..1.0) {
        prop_assume!((a - 1.0).abs() > 1e-6);
        prop_assert!(susceptibility(p(a, g)).unwrap() > 0.0);
    }

    #[test]
    fn magnetization_is_odd_and_bounded(a in 0.0f64..3.0, g in -1.0f64..1.0) {
        let m = magnetization(p(a, g));
        prop_assert!((0.0..=0.5).contains(&m));
        prop_assert_eq!(magnetization(p(-a, g)), -m);
    }
}
