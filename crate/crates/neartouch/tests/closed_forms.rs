use neartouch::geometry::{Disk, DiskPair};
use neartouch::oracle::{disk_quadrature, disk_quadrature_with_breaks, radial_quadrature};
use neartouch::singular::{
    biharmonic_disk_potential, boundary_constant, flux_identity_lhs, h_k_eval, log_disk_potential,
};
use neartouch::{Complex64, Vec2};
use proptest::prelude::*;
use std::f64::consts::PI;

fn pair() -> impl Strategy<Value = DiskPair> {
    (-0.7f64..0.3, -0.7f64..0.3, -5.0f64..0.0).prop_map(|(a, b, c)| {
        let (r1, r2) = (10f64.powf(a), 10f64.powf(b));
        DiskPair::new(r1, r2, r1.min(r2) * 10f64.powf(c)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn h0_is_constant_on_each_circle(p in pair()) {
        for j in Disk::BOTH {
            let (c, r) = (p.center(j), p.radius(j));
            let want = boundary_constant(&p, j);
            for q in 0..256 {
                let t = 2.0 * PI * q as f64 / 256.0;
                let h0 = h_k_eval(&p, 0.3, c + Vec2::new(r * t.cos(), r * t.sin())).unwrap().h0;
                prop_assert!((h0 - want).abs() < 1e-12, "{h0} vs {want}");
            }
        }
    }

    #[test]
    fn potentials_match_their_integrals(r in 0.2f64..2.0, t in 0.0f64..2.5, phi in 0.0f64..std::f64::consts::TAU) {
        let a = r * t;
        let x = Vec2::new(a * phi.cos(), a * phi.sin());
        let f = disk_quadrature_with_breaks(
            |y| Complex64::from((y - x).norm().ln() / (2.0 * PI)),
            Vec2::ZERO, r, &[a], 1e-12 * r * r,
        ).unwrap().value.re;
        let g = disk_quadrature_with_breaks(
            |y| {
                let d = (y - x).norm();
                Complex64::from(if d == 0.0 { 0.0 } else { d * d * d.ln() / (8.0 * PI) })
            },
            Vec2::ZERO, r, &[a], 1e-12 * r.powi(4),
        ).unwrap().value.re;
        let fe = log_disk_potential(Vec2::ZERO, r, x);
        let ge = biharmonic_disk_potential(Vec2::ZERO, r, x);
        prop_assert!((f - fe).abs() <= 1e-8 * fe.abs(), "f_r {f} vs {fe}");
        prop_assert!((g - ge).abs() <= 1e-8 * ge.abs(), "g_r {g} vs {ge}");
    }

    #[test]
    fn disk_and_radial_quadrature_agree(r in 0.1f64..3.0, s in 0.1f64..5.0) {
        let f = |rho: f64| Complex64::new((-s * rho * rho).exp(), rho.cos());
        let disk = disk_quadrature(|y| f(y.norm()), Vec2::ZERO, r, 1e-12).unwrap().value;
        let radial = radial_quadrature(f, r, &[], 1e-12).unwrap().value;
        prop_assert!((disk - radial).norm() <= 1e-9 * radial.norm().max(1.0));
    }
}

#[test]
fn flux_identity_in_both_regimes() {
    for (r1, r2, eps, k) in [(1.0, 0.7, 3e-3, 0.08), (1.0, 2e-3, 2e-3, 0.05)] {
        let p = DiskPair::new(r1, r2, eps).unwrap();
        for j in Disk::BOTH {
            let lhs = flux_identity_lhs(&p, k, j, 1e-9).unwrap();
            assert!((lhs - j.sign()).norm() <= 1e-7, "{j:?}: {lhs}");
        }
    }
}
