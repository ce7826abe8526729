//! Quadrature cross-checks against textbook node tables, closed-form cap
//! measures, and stability under node doubling.

use approx::{assert_abs_diff_eq, assert_relative_eq};
use fourier_laplace::quadrature::{
    cap_measure, offset_zonal_integral, sin_power_integral, zonal_integral,
};
use fourier_laplace::{QuadratureRule, SphereContext};
use std::f64::consts::PI;

#[test]
fn five_point_rule_matches_the_table() {
    // Abramowitz & Stegun 25.4.30, n = 5.
    let rule = QuadratureRule::gauss_legendre(5).unwrap();
    let nodes = [
        -0.906179845938664,
        -0.5384693101056831,
        0.0,
        0.5384693101056831,
        0.906179845938664,
    ];
    let weights = [
        0.23692688505618908,
        0.47862867049936647,
        0.5688888888888889,
        0.47862867049936647,
        0.23692688505618908,
    ];
    for i in 0..5 {
        assert_abs_diff_eq!(rule.nodes()[i], nodes[i], epsilon = 1e-15);
        assert_abs_diff_eq!(rule.weights()[i], weights[i], epsilon = 1e-15);
    }
}

#[test]
fn node_doubling_leaves_smooth_integrals_alone() {
    let coarse = QuadratureRule::gauss_legendre(48).unwrap();
    let fine = QuadratureRule::gauss_legendre(97).unwrap();
    for dim in 1..=4u32 {
        let ctx = SphereContext::new(dim, 4).unwrap();
        for &(lo, hi) in &[(0.0, PI), (0.2, 1.9), (1.0, 3.0)] {
            let f = |g: f64| (2.0 * g.cos()).exp() * (3.0 * g).cos();
            let a = sin_power_integral(dim, lo, hi, &coarse, f).unwrap();
            let b = sin_power_integral(dim, lo, hi, &fine, f).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-12 * (1.0 + a.abs()));
        }
        let a = zonal_integral(&ctx, &coarse, |g| (g.cos() * 1.7).exp()).unwrap();
        let b = zonal_integral(&ctx, &fine, |g| (g.cos() * 1.7).exp()).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-13);
    }
}

#[test]
fn cap_measures_in_closed_form() {
    let rule = QuadratureRule::gauss_legendre(64).unwrap();
    let c1 = SphereContext::new(1, 4).unwrap();
    let c2 = SphereContext::new(2, 4).unwrap();
    let c3 = SphereContext::new(3, 4).unwrap();
    for i in 1..=16 {
        let r = PI * i as f64 / 16.0;
        // Circle arc 2r; two-sphere 2 pi (1 - cos r); three-sphere
        // pi (2r - sin 2r).
        assert_relative_eq!(cap_measure(&c1, r, &rule).unwrap(), 2.0 * r, max_relative = 1e-13);
        assert_relative_eq!(
            cap_measure(&c2, r, &rule).unwrap(),
            2.0 * PI * (1.0 - r.cos()),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            cap_measure(&c3, r, &rule).unwrap(),
            PI * (2.0 * r - (2.0 * r).sin()),
            max_relative = 1e-12
        );
    }
}

#[test]
fn circle_offset_integral_in_closed_form() {
    // On the circle the shell { psi in [a, b] } around x consists of the two
    // arcs x +- psi, so with radial = 1 and profile = cos,
    // integral = int_a^b (cos(x + psi) + cos(x - psi)) d psi
    //          = 2 cos x (sin b - sin a).
    let rule = QuadratureRule::gauss_legendre(64).unwrap();
    let ctx = SphereContext::new(1, 4).unwrap();
    for &x in &[0.4f64, 1.2, 2.8] {
        for &(a, b) in &[(0.0, 0.9), (0.5, 2.0), (2.0, PI)] {
            let got =
                offset_zonal_integral(&ctx, x, a, b, &rule, &rule, |_| 1.0, f64::cos).unwrap();
            let want = 2.0 * x.cos() * (b.sin() - a.sin());
            assert_abs_diff_eq!(got, want, epsilon = 1e-13);
        }
    }
}

#[test]
fn offset_integral_matches_a_rotated_double_integral() {
    // Independent evaluation for N = 2: parametrize y by (theta, phi) about
    // the pole and integrate radial(gamma(x, y)) profile(theta) with a plain
    // tensor Gauss rule. cos gamma(x, y) = cos x cos theta
    //                                      + sin x sin theta cos phi.
    let rule = QuadratureRule::gauss_legendre(96).unwrap();
    let ctx = SphereContext::new(2, 4).unwrap();
    let x = 1.1f64;
    let radial = |psi: f64| (1.5 * psi.cos()).exp();
    let profile = |theta: f64| theta.cos().powi(3) - 0.2 * theta.cos();
    let want = rule.integrate_on(0.0, PI, |theta| {
        let ring: f64 = rule.integrate_on(0.0, 2.0 * PI, |phi| {
            let cg = (x.cos() * theta.cos() + x.sin() * theta.sin() * phi.cos()).clamp(-1.0, 1.0);
            radial(cg.acos())
        });
        ring * profile(theta) * theta.sin()
    });
    let got =
        offset_zonal_integral(&ctx, x, 0.0, PI, &rule, &rule, radial, profile).unwrap();
    assert_relative_eq!(got, want, max_relative = 1e-10);
}
