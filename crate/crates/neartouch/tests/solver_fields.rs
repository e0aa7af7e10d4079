use neartouch::geometry::{Disk, DiskPair};
use neartouch::oracle::fd_gradient;
use neartouch::solver::{assemble_and_solve, BoundaryModel, IncidentField, SolverOptions};
use neartouch::{Complex64, Vec2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn distance_to_disks(p: &DiskPair, x: Vec2) -> f64 {
    Disk::BOTH
        .map(|j| x.dist(p.center(j)) - p.radius(j))
        .into_iter()
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn gradient_matches_differences_at_random_exterior_points() {
    let pair = DiskPair::new(1.0, 0.7, 5e-3).unwrap();
    let k = 0.4;
    let inc = IncidentField::plane_wave(k, Vec2::new(0.6, 0.8), Complex64::new(1.0, 0.3)).unwrap();
    for model in [BoundaryModel::ZeroFlux, BoundaryModel::Pec] {
        let sol = assemble_and_solve(&pair, k, model, &inc, &SolverOptions::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 50 {
            let x = Vec2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let dist = distance_to_disks(&pair, x);
            if dist < 0.02 {
                continue;
            }
            let h = 1e-4 * dist.min(1.0);
            let fd = fd_gradient(|y| sol.field(y), x, h).unwrap();
            let g = sol.gradient(x).unwrap();
            assert!(
                (fd - g).norm() <= 1e-5 * g.norm(),
                "{model:?} at {x:?}: {fd:?} vs {g:?}"
            );
            tested += 1;
        }
    }
}

#[test]
fn residual_falls_as_the_mesh_is_refined() {
    for eps in [1e-2, 1e-3, 1e-4] {
        let pair = DiskPair::new(1.0, 1.0, eps).unwrap();
        let inc =
            IncidentField::plane_wave(0.05, Vec2::new(0.0, 1.0), Complex64::new(1.0, 0.0)).unwrap();
        let mut last = f64::INFINITY;
        let mut last_n = 0;
        for grading in [4.0, 2.0, 1.0] {
            let opts = SolverOptions {
                initial_grading: grading,
                max_refinements: 0,
                target_residual: 1e-30,
                ..Default::default()
            };
            let sol = match assemble_and_solve(&pair, 0.05, BoundaryModel::ZeroFlux, &inc, &opts) {
                Err(neartouch::Error::NotConverged { best, .. }) => *best,
                other => panic!("{other:?}"),
            };
            assert!(sol.n_nodes() > last_n);
            // Off-node sampling at condition numbers near 1e7 puts the roundoff
            // level at a few 1e-12, so that is where monotonicity stops.
            let floor = 1e-11;
            assert!(
                sol.boundary_residual < last || (sol.boundary_residual <= floor && last <= floor),
                "eps {eps}, grading {grading}: {:e} after {last:e}",
                sol.boundary_residual
            );

            assert!(sol.reciprocity_defect().norm() < 1e-9);
            last = sol.boundary_residual;
            last_n = sol.n_nodes();
        }
    }
}
