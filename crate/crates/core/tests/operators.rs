use czmax::grid::{FieldDescriptor, Grid, GridField};
use czmax::kernels::{quartic, KernelSpec, KernelTerm, Weight};
use czmax::operators::{
    apply_full, apply_maximal_field, apply_truncated_field, hl_maximal_field, MaximalConfig, TruncationConfig,
};
use czmax::Rational;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn bump(grid: &Grid<f64>) -> GridField<f64> {
    FieldDescriptor::PolynomialBump { center: vec![0.3, -0.2], radius: 1.0, power: 4 }.sample(grid).unwrap()
}

/// Values at nodes with `|x|∞ ≤ L/4`. There the side-`L` window around the node
/// covers the support of `bump`, so the torus agrees with the plane.
fn interior(f: &GridField<f64>) -> Vec<f64> {
    let g = f.grid();
    let r = 0.25 * g.side_length();
    (0..g.len()).filter(|&i| g.point(i).iter().all(|x| x.abs() <= r)).map(|i| f.values()[i]).collect()
}

fn relative_l2(a: &[f64], b: &[f64]) -> f64 {
    let d: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum();
    let n: f64 = b.iter().map(|y| y * y).sum();
    (d / n).sqrt()
}

fn sup_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn spectral_and_direct_quadrature_agree_for_both_pairs() {
    let grid = Grid::new(2, 16.0, 512).unwrap();
    let f = bump(&grid);
    let eps = 2.0 * grid.spacing();
    let quartic_pair =
        KernelSpec::new(2, vec![KernelTerm::planar(Weight::over_pi(2, 1), quartic(&q(1, 1), &q(0, 1)))]).unwrap();
    for spec in [KernelSpec::riesz_xy(), quartic_pair] {
        let spectral = interior(&apply_full(&spec, &f).unwrap());
        let direct = interior(&apply_truncated_field(&spec, &f, eps).unwrap());
        let gap = relative_l2(&direct, &spectral);
        assert!(gap <= 1e-2, "relative L² gap {gap:e}");
    }
}

#[test]
fn truncations_converge_and_the_maximal_operator_dominates() {
    let grid = Grid::new(2, 8.0, 512).unwrap();
    let f = bump(&grid);
    let spec = KernelSpec::riesz_second_order(2).unwrap();
    let full_field = apply_full(&spec, &f).unwrap();
    let full = interior(&full_field);
    let sup = full.iter().fold(0.0, |m: f64, v| m.max(v.abs()));
    let levels = TruncationConfig::dyadic(&grid);
    let gaps: Vec<f64> = levels
        .epsilons()
        .iter()
        .map(|&e| sup_gap(&interior(&apply_truncated_field(&spec, &f, e).unwrap()), &full))
        .collect();
    // the two finest levels sit on the same lattice floor
    assert!(gaps.windows(2).all(|w| w[0] <= w[1] * (1.0 + 1e-12)), "{gaps:?}");
    assert!(gaps[gaps.len() - 1] > 0.5 * sup);
    assert!(gaps[0] <= 0.02 * sup, "final gap {:e} vs ‖Tf‖∞ {sup:e}", gaps[0]);

    let star = apply_maximal_field(&spec, &f, &levels).unwrap();
    for (s, t) in star.values().iter().zip(full_field.values()) {
        assert!(*s >= t.abs() - 0.02 * sup, "T* {s} < |Tf| {t}");
    }
}

#[test]
fn maximal_function_is_positively_homogeneous() {
    let grid = Grid::new(2, 8.0, 64).unwrap();
    let f = FieldDescriptor::BandLimited { seed: 3, max_mode: 5, amplitude: 1.0 }.sample(&grid).unwrap();
    let cfg = MaximalConfig::dyadic(&grid);
    let mf = hl_maximal_field(&f, &cfg);
    for c in [-2.0, 0.5, 4.0, -0.25] {
        let scaled = hl_maximal_field(&f.scale(c), &cfg);
        assert_eq!(scaled, mf.scale(f64::abs(c)));
    }
}
