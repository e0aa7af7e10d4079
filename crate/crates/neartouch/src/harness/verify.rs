//! Verification suites.  Each check reports the measured value next to its
//! pinned window so failures are results, not errors.

use super::sweep::SweepRecord;
use crate::asymptotics::{fit_power_law, PowerLawFit};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::geometry::{Disk, DiskPair};
use crate::oracle::{self, disk_quadrature_with_breaks};
use crate::singular::{
    biharmonic_disk_potential, boundary_constant, disk_integral_h0, disk_integral_leading,
    flux_identity_lhs, h_k_eval, log_disk_potential,
};
use crate::solver::{BoundaryModel, IncidentField, SolverOptions};
use crate::specfun::{
    fundamental_solution, gamma_k_expansion, hankel_derivative_defect, recurrence_defect,
    wronskian_defect,
};
use crate::vec2::Vec2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::str::FromStr;

/// Wavenumber of the gap-sweep experiments.
pub const SWEEP_K: f64 = 0.05;
/// Ends and size of the eps grid of the rate experiments.
pub const EPS_GRID: (f64, f64, usize) = (1e-2, 1e-4, 9);
/// Ends and size of the k grid of the mitigation experiment.
pub const K_GRID: (f64, f64, usize) = (0.02, 0.2, 7);
/// Half-gap of the mitigation experiment.
pub const MITIGATION_EPS: f64 = 1e-3;

pub const LAMBDA_RATIO_WINDOW: [f64; 2] = [0.9, 1.1];
pub const BLOWUP_EXPONENT_WINDOW: [f64; 2] = [-0.55, -0.45];
pub const BLOWUP_MIN_R2: f64 = 0.999;
pub const PEC_EXPONENT_WINDOW: [f64; 2] = [-0.05, 0.05];
pub const BOUNDED_EXPONENT_WINDOW: [f64; 2] = [-0.1, 0.1];
pub const BOUNDED_GAP_SPREAD: f64 = 3.0;
pub const K_EXPONENT_WINDOW: [f64; 2] = [0.9, 1.1];
pub const SINUSOID_EXPONENT_WINDOW: [f64; 2] = [-0.1, 0.1];
pub const RECIPROCITY_TOL: f64 = 1e-6;
pub const FLUX_IDENTITY_TOL: f64 = 1e-7;
pub const CLOSED_FORM_TOL: f64 = 1e-8;
pub const H0_SPREAD_TOL: f64 = 1e-12;
pub const DISK_LEADING_WINDOW: [f64; 2] = [0.95, 1.05];
pub const REFLECTION_TOL: f64 = 1e-12;
pub const FIXED_POINT_LEADING_TOL: f64 = 1e-2;
pub const PROFILE_TOL: f64 = 0.2;
pub const WRONSKIAN_TOL: f64 = 1e-10;
pub const RECURRENCE_TOL: f64 = 1e-9;
pub const HANKEL_DERIVATIVE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Specfun,
    Identities,
    LowerBound,
    Bounded,
    Pec,
    Mitigation,
    All,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "specfun" => Suite::Specfun,
            "identities" => Suite::Identities,
            "lower-bound" => Suite::LowerBound,
            "bounded" => Suite::Bounded,
            "pec" => Suite::Pec,
            "mitigation" => Suite::Mitigation,
            "all" => Suite::All,
            _ => return Err(Error::InvalidArgument(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub criterion: u32,
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub expected: String,
    pub detail: String,
}

impl Check {
    fn window(criterion: u32, name: &str, v: f64, w: [f64; 2], detail: String) -> Self {
        Check {
            criterion,
            name: name.into(),
            passed: v >= w[0] && v <= w[1],
            measured: v,
            expected: format!("[{}, {}]", w[0], w[1]),
            detail,
        }
    }

    fn at_most(criterion: u32, name: &str, v: f64, tol: f64, detail: String) -> Self {
        Check {
            criterion,
            name: name.into(),
            passed: v <= tol,
            measured: v,
            expected: format!("<= {tol:e}"),
            detail,
        }
    }

    fn flag(criterion: u32, name: &str, ok: bool, detail: String) -> Self {
        Check {
            criterion,
            name: name.into(),
            passed: ok,
            measured: if ok { 1.0 } else { 0.0 },
            expected: "true".into(),
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

// ---------------------------------------------------------------------------
// Experiments.

fn up_plane(k: f64) -> IncidentField {
    IncidentField::plane_wave(k, Vec2::new(0.0, 1.0), Complex64::new(1.0, 0.0))
        .expect("valid plane wave")
}

fn up_sinusoid(k: f64) -> IncidentField {
    IncidentField::sinusoid(k, 1.0, Vec2::new(0.0, 1.0)).expect("valid sinusoid")
}

fn log_grid((from, to, n): (f64, f64, usize)) -> Vec<f64> {
    (0..n)
        .map(|i| {
            if i == 0 {
                from
            } else if i + 1 == n {
                to
            } else {
                (from.ln() + (to.ln() - from.ln()) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

pub fn eps_grid() -> Vec<f64> {
    log_grid(EPS_GRID)
}

pub fn k_grid() -> Vec<f64> {
    log_grid(K_GRID)
}

/// Plane-wave eps sweep at k = 0.05; `tied_r2` sets r2 = eps.
pub fn eps_sweep(
    model: BoundaryModel,
    tied_r2: bool,
    eps: &[f64],
    exec: Execution,
) -> Vec<SweepRecord> {
    let items: Vec<(usize, f64)> = eps.iter().copied().enumerate().collect();
    exec.map(&items, |&(i, e)| {
        let r2 = if tied_r2 { e } else { 1.0 };
        let pair = DiskPair::new(1.0, r2, e).expect("valid pair");
        SweepRecord::run(i, pair, model, up_plane(SWEEP_K), SolverOptions::default())
    })
}

/// k sweep at eps = 1e-3 for plane-wave or sinusoid incidence.
pub fn k_sweep(sinusoid: bool, exec: Execution) -> Vec<SweepRecord> {
    let items: Vec<(usize, f64)> = k_grid().into_iter().enumerate().collect();
    exec.map(&items, |&(i, k)| {
        let pair = DiskPair::new(1.0, 1.0, MITIGATION_EPS).expect("valid pair");
        let inc = if sinusoid {
            up_sinusoid(k)
        } else {
            up_plane(k)
        };
        SweepRecord::run(
            i,
            pair,
            BoundaryModel::ZeroFlux,
            inc,
            SolverOptions::default(),
        )
    })
}

fn parameter(r: &SweepRecord, by_k: bool) -> f64 {
    if by_k {
        r.k
    } else {
        r.pair.eps
    }
}

/// Fit of max_gap_gradient against eps (or k).
pub fn gradient_fit(records: &[SweepRecord], by_k: bool) -> Result<PowerLawFit> {
    let samples: Vec<(f64, f64)> = records
        .iter()
        .map(|r| {
            (
                parameter(r, by_k),
                r.measured.as_ref().map_or(f64::NAN, |m| m.max_grad),
            )
        })
        .collect();
    fit_power_law(&samples)
}

fn failures(records: &[SweepRecord]) -> String {
    let bad: Vec<String> = records
        .iter()
        .filter(|r| !r.succeeded())
        .map(|r| {
            format!(
                "#{}: {}",
                r.index,
                r.error.as_deref().unwrap_or("no measurement")
            )
        })
        .collect();
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failures: {}", bad.join(", "))
    }
}

fn fit_detail(fit: &Result<PowerLawFit>) -> (f64, f64, String) {
    match fit {
        Ok(f) => (
            f.exponent,
            f.r_squared,
            format!("r^2 = {:.6}, {} points", f.r_squared, f.n_points),
        ),
        Err(e) => (f64::NAN, f64::NAN, e.to_string()),
    }
}

/// Criterion 1 at the given eps values (the middle one is checked against the window).
pub fn lambda_constant_checks(records: &[SweepRecord], model_name: &str) -> Vec<Check> {
    let ratios: Vec<f64> = records
        .iter()
        .map(|r| r.ratio_lambda.unwrap_or(f64::NAN))
        .collect();
    let mid = records
        .iter()
        .position(|r| (r.pair.eps / 1e-3 - 1.0).abs() < 1e-9)
        .unwrap_or(records.len() / 2);
    let dev: Vec<f64> = ratios.iter().map(|r| (r - 1.0).abs()).collect();
    let monotone = dev.windows(2).all(|w| w[1] < w[0]);
    vec![
        Check::window(
            1,
            &format!("lambda gap ratio at eps = 1e-3 ({model_name})"),
            ratios[mid],
            LAMBDA_RATIO_WINDOW,
            format!("ratios {ratios:?}{}", failures(records)),
        ),
        Check::flag(
            1,
            &format!("lambda gap deviation shrinks with eps ({model_name})"),
            monotone,
            format!(
                "|ratio - 1| = {dev:?} at eps = {:?}",
                records.iter().map(|r| r.pair.eps).collect::<Vec<_>>()
            ),
        ),
    ]
}

pub fn blowup_checks(records: &[SweepRecord]) -> Vec<Check> {
    let fit = gradient_fit(records, false);
    let (e, r2, detail) = fit_detail(&fit);
    vec![
        Check::window(
            2,
            "gap gradient exponent in eps",
            e,
            BLOWUP_EXPONENT_WINDOW,
            format!("{detail}{}", failures(records)),
        ),
        Check {
            criterion: 2,
            name: "gap gradient fit quality".into(),
            passed: r2 >= BLOWUP_MIN_R2,
            measured: r2,
            expected: format!(">= {BLOWUP_MIN_R2}"),
            detail: String::new(),
        },
    ]
}

pub fn pec_checks(records: &[SweepRecord]) -> Vec<Check> {
    let (e, _, detail) = fit_detail(&gradient_fit(records, false));
    vec![Check::window(
        3,
        "pec gap gradient exponent in eps",
        e,
        PEC_EXPONENT_WINDOW,
        format!("{detail}{}", failures(records)),
    )]
}

pub fn bounded_checks(records: &[SweepRecord]) -> Vec<Check> {
    let (e, _, detail) = fit_detail(&gradient_fit(records, false));
    let scaled: Vec<f64> = records
        .iter()
        .filter_map(|r| r.measured.as_ref().map(|m| m.lambda_gap_abs / r.pair.eps))
        .collect();
    let hi = scaled.iter().copied().fold(0.0, f64::max);
    let lo = scaled.iter().copied().fold(f64::INFINITY, f64::min);
    let spread = if lo > 0.0 && scaled.len() == records.len() {
        hi / lo
    } else {
        f64::INFINITY
    };
    vec![
        Check::window(
            4,
            "small-disk gap gradient exponent in eps",
            e,
            BOUNDED_EXPONENT_WINDOW,
            format!("{detail}{}", failures(records)),
        ),
        Check::at_most(
            4,
            "small-disk |lambda2 - lambda1| / eps spread",
            spread,
            BOUNDED_GAP_SPREAD,
            format!("range [{lo:.6e}, {hi:.6e}]"),
        ),
    ]
}

pub fn mitigation_checks(plane: &[SweepRecord], sinusoid: &[SweepRecord]) -> Vec<Check> {
    let (ep, _, dp) = fit_detail(&gradient_fit(plane, true));
    let (es, _, ds) = fit_detail(&gradient_fit(sinusoid, true));
    vec![
        Check::window(
            5,
            "plane-wave gap gradient exponent in k",
            ep,
            K_EXPONENT_WINDOW,
            format!("{dp}{}", failures(plane)),
        ),
        Check::window(
            5,
            "sinusoid gap gradient exponent in k",
            es,
            SINUSOID_EXPONENT_WINDOW,
            format!("{ds}{}", failures(sinusoid)),
        ),
    ]
}

pub fn reciprocity_checks(records: &[SweepRecord]) -> Vec<Check> {
    let worst = records
        .iter()
        .map(|r| {
            r.measured
                .as_ref()
                .map_or(f64::INFINITY, |m| m.relative_recip_defect())
        })
        .fold(0.0, f64::max);
    vec![Check::at_most(
        6,
        "reciprocity defect / (1 + |u^i(P1)| + |u^i(P2)|)",
        worst,
        RECIPROCITY_TOL,
        format!("{} solved cases", records.len()),
    )]
}

pub fn profile_checks(records: &[SweepRecord]) -> Vec<Check> {
    let mut worst: f64 = 0.0;
    let mut inside = true;
    for r in records {
        match &r.measured {
            Some(m) => {
                let pred = m.lambda_gap_abs / (2.0 * r.pair.eps);
                worst = worst.max((m.max_grad / pred - 1.0).abs());
                inside &= m.max_grad_on_segment
                    && m.max_grad_at.x1 == 0.0
                    && m.max_grad_at.x2.abs() <= r.pair.eps;
            }
            None => {
                worst = f64::INFINITY;
                inside = false;
            }
        }
    }
    vec![
        Check::at_most(
            10,
            "max gap gradient vs |lambda1 - lambda2| / (2 eps)",
            worst,
            PROFILE_TOL,
            "largest relative deviation".into(),
        ),
        Check::flag(10, "maximiser on the gap segment", inside, String::new()),
    ]
}

// ---------------------------------------------------------------------------
// Closed-form and special-function checks.

/// Configurations for the flux identity, spanning both regimes.
pub const FLUX_IDENTITY_CASES: [(f64, f64, f64, f64); 5] = [
    (1.0, 1.0, 1e-2, 0.05),
    (1.0, 1.0, 1e-4, 0.1),
    (1.0, 0.5, 1e-3, 0.2),
    (0.5, 2.0, 1e-2, 0.03),
    (1.0, 1e-3, 1e-3, 0.05),
];

/// Largest |LHS - (-1)^{j+1}| of the h_k flux identity over the cases.
pub fn flux_identity_defect(exec: Execution) -> Result<f64> {
    let items: Vec<(usize, Disk)> = (0..FLUX_IDENTITY_CASES.len())
        .flat_map(|i| Disk::BOTH.map(|j| (i, j)))
        .collect();
    let out = exec.map(&items, |&(i, j)| -> Result<f64> {
        let (r1, r2, eps, k) = FLUX_IDENTITY_CASES[i];
        let pair = DiskPair::new(r1, r2, eps)?;
        let lhs = flux_identity_lhs(&pair, k, j, 1e-9)?;
        Ok((lhs - Complex64::from(j.sign())).norm())
    });
    out.into_iter()
        .try_fold(0.0, |acc, v| Ok(f64::max(acc, v?)))
}

/// Random disk pair with radii in [0.2, 2] and eps / min radius in [1e-5, 1].
pub fn random_pair(rng: &mut ChaCha8Rng) -> DiskPair {
    let r1 = 10f64.powf(rng.gen_range(-0.7..0.3));
    let r2 = 10f64.powf(rng.gen_range(-0.7..0.3));
    let eps = r1.min(r2) * 10f64.powf(rng.gen_range(-5.0..0.0));
    DiskPair::new(r1, r2, eps).expect("valid random pair")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormDefects {
    pub f_r: f64,
    pub g_r: f64,
    pub disk_integral_h0: f64,
    pub boundary_constant: f64,
    pub h0_spread: f64,
}

/// Relative deviations of closed forms from quadrature at `n` random configurations.
pub fn closed_form_defects(n: usize, seed: u64, exec: Execution) -> Result<ClosedFormDefects> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(DiskPair, f64, f64)> = (0..n)
        .map(|_| {
            let pair = random_pair(&mut rng);
            let r = 10f64.powf(rng.gen_range(-0.7..0.3));
            let a = r * rng.gen_range(0.0..2.5);
            (pair, r, a)
        })
        .collect();
    let rows = exec.map(&cases, |&(pair, r, a)| closed_form_case(&pair, r, a));
    let mut d = ClosedFormDefects {
        f_r: 0.0,
        g_r: 0.0,
        disk_integral_h0: 0.0,
        boundary_constant: 0.0,
        h0_spread: 0.0,
    };
    for row in rows {
        let row = row?;
        d.f_r = d.f_r.max(row.f_r);
        d.g_r = d.g_r.max(row.g_r);
        d.disk_integral_h0 = d.disk_integral_h0.max(row.disk_integral_h0);
        d.boundary_constant = d.boundary_constant.max(row.boundary_constant);
        d.h0_spread = d.h0_spread.max(row.h0_spread);
    }
    Ok(d)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn closed_form_case(pair: &DiskPair, r: f64, a: f64) -> Result<ClosedFormDefects> {
    let x = Vec2::new(0.6 * a, 0.8 * a);
    let f = disk_quadrature_with_breaks(
        |y| Complex64::from((y - x).norm().ln() / (2.0 * PI)),
        Vec2::ZERO,
        r,
        &[a],
        1e-12 * r * r,
    )?;
    let g = disk_quadrature_with_breaks(
        |y| {
            let d = (y - x).norm();
            Complex64::from(if d == 0.0 {
                0.0
            } else {
                d * d * d.ln() / (8.0 * PI)
            })
        },
        Vec2::ZERO,
        r,
        &[a],
        1e-12 * r.powi(4),
    )?;
    let mut di: f64 = 0.0;
    let mut bc: f64 = 0.0;
    let mut spread: f64 = 0.0;
    let dist = pair.fixed_point_distances();
    for j in Disk::BOTH {
        let c = pair.center(j);
        let rj = pair.radius(j);
        let inner = match j {
            Disk::One => dist.p1_c1,
            Disk::Two => dist.p2_c2,
        };
        let exact = disk_integral_h0(pair, j);
        let h0 = |y: Vec2| h_k_eval(pair, 1.0, y).map(|e| e.h0).unwrap_or(0.0);
        let quad = disk_quadrature_with_breaks(
            |y| Complex64::from(h0(y)),
            c,
            rj,
            &[inner],
            1e-11 * exact.abs(),
        )?;
        di = di.max(rel(quad.value.re, exact));
        let mean = oracle::boundary_quadrature(|y| Complex64::from(h0(y)), c, rj, 256).re
            / (2.0 * PI * rj);
        bc = bc.max(rel(mean, boundary_constant(pair, j)));
        let samples: Vec<f64> = (0..256)
            .map(|q| {
                let t = 2.0 * PI * q as f64 / 256.0;
                h0(c + Vec2::new(rj * t.cos(), rj * t.sin()))
            })
            .collect();
        let hi = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = samples.iter().copied().fold(f64::INFINITY, f64::min);
        spread = spread.max(hi - lo);
    }
    Ok(ClosedFormDefects {
        f_r: rel(f.value.re, log_disk_potential(Vec2::ZERO, r, x)),
        g_r: rel(g.value.re, biharmonic_disk_potential(Vec2::ZERO, r, x)),
        disk_integral_h0: di,
        boundary_constant: bc,
        h0_spread: spread,
    })
}

/// Largest relative defect of R_1(P1) = P2 and R_2(P2) = P1 over random pairs.
pub fn reflection_defect(n: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let pair = random_pair(&mut rng);
            let fp = pair.fixed_points();
            let scale = fp.point1().norm().max(fp.point2().norm());
            let a = pair
                .reflect(Disk::One, fp.point1())
                .map_or(f64::INFINITY, |x| x.dist(fp.point2()));
            let b = pair
                .reflect(Disk::Two, fp.point2())
                .map_or(f64::INFINITY, |x| x.dist(fp.point1()));
            a.max(b) / scale
        })
        .fold(0.0, f64::max)
}

/// p1 / (2 sqrt(r1 r2 / (r1 + r2)) sqrt(eps)) at r1 = r2 = 1, eps = 1e-6.
pub fn fixed_point_leading_ratio() -> f64 {
    let pair = DiskPair::new(1.0, 1.0, 1e-6).expect("valid pair");
    pair.fixed_points().p1 / (2.0 * 0.5f64.sqrt() * 1e-3)
}

/// int_{D1} h_0 over its leading term at r1 = r2 = 1, eps = 1e-4.
pub fn disk_integral_leading_ratio() -> f64 {
    let pair = DiskPair::new(1.0, 1.0, 1e-4).expect("valid pair");
    disk_integral_h0(&pair, Disk::One) / disk_integral_leading(&pair, Disk::One)
}

/// 200 log-spaced arguments in [1e-3, 50].
pub fn specfun_arguments() -> Vec<f64> {
    log_grid((1e-3, 50.0, 200))
}

/// Largest Wronskian defect over n <= 64 and the argument grid.
pub fn max_wronskian_defect() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in specfun_arguments() {
        for n in 0..=64 {
            worst = worst.max(wronskian_defect(n, x)?);
        }
    }
    Ok(worst)
}

/// Largest recurrence defect (both kinds) over 1 <= n <= 64 and the grid.
pub fn max_recurrence_defect() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in specfun_arguments() {
        for n in 1..=64 {
            let (dj, dy) = recurrence_defect(n, x)?;
            worst = worst.max(dj).max(dy);
        }
    }
    Ok(worst)
}

pub fn max_hankel_derivative_defect() -> Result<f64> {
    let mut worst: f64 = 0.0;
    for x in [0.5, 1.0, 5.0, 20.0, 50.0] {
        for n in [1, 2, 5, 10] {
            worst = worst.max(hankel_derivative_defect(n, x, 2e-6 * x)?);
        }
    }
    Ok(worst)
}

/// Empirical order of the truncated Gamma_k expansion with J terms: slope
/// of log(|error| / |ln(k|x|)|) against log(k|x|) for k|x| in [0.05, 0.5].
pub fn expansion_order(terms: usize) -> Result<f64> {
    let k = 1.0;
    let samples: Vec<(f64, f64)> = log_grid((0.05, 0.5, 6))
        .into_iter()
        .map(|z| {
            let x = Vec2::new(0.6 * z, 0.8 * z);
            let err = (gamma_k_expansion(k, x, terms)? - fundamental_solution(k, x)?).norm();
            Ok((z, err / z.ln().abs()))
        })
        .collect::<Result<_>>()?;
    Ok(fit_power_law(&samples)?.exponent)
}

pub fn specfun_checks() -> Vec<Check> {
    let (w, r, h) = (
        max_wronskian_defect().unwrap_or(f64::INFINITY),
        max_recurrence_defect().unwrap_or(f64::INFINITY),
        max_hankel_derivative_defect().unwrap_or(f64::INFINITY),
    );
    let mut out = vec![
        Check::at_most(
            11,
            "Wronskian relative defect, n <= 64, x in [1e-3, 50]",
            w,
            WRONSKIAN_TOL,
            "200 log-spaced arguments".into(),
        ),
        Check::at_most(
            11,
            "three-term recurrence relative defect, both kinds",
            r,
            RECURRENCE_TOL,
            "200 log-spaced arguments".into(),
        ),
        Check::at_most(
            11,
            "Hankel derivative identity vs central differences",
            h,
            HANKEL_DERIVATIVE_TOL,
            String::new(),
        ),
    ];
    for terms in 0..=3 {
        let order = expansion_order(terms).unwrap_or(f64::NAN);
        let want = (2 * terms + 2) as f64;
        out.push(Check {
            criterion: 11,
            name: format!("Gamma_k expansion order with J = {terms}"),
            passed: order >= want - 0.05,
            measured: order,
            expected: format!(">= {want} (log factor removed, 0.05 fit slack)"),
            detail: String::new(),
        });
    }
    out
}

pub fn identity_checks(seed: u64, exec: Execution) -> Vec<Check> {
    let mut out = Vec::new();
    let flux = flux_identity_defect(exec).unwrap_or(f64::INFINITY);
    out.push(Check::at_most(
        7,
        "h_k flux identity absolute defect",
        flux,
        FLUX_IDENTITY_TOL,
        format!("{} configurations, both disks", FLUX_IDENTITY_CASES.len()),
    ));
    match closed_form_defects(20, seed, exec) {
        Ok(d) => {
            out.push(Check::at_most(
                8,
                "f_r vs quadrature",
                d.f_r,
                CLOSED_FORM_TOL,
                "20 random configurations".into(),
            ));
            out.push(Check::at_most(
                8,
                "g_r vs quadrature",
                d.g_r,
                CLOSED_FORM_TOL,
                "20 random configurations".into(),
            ));
            out.push(Check::at_most(
                8,
                "disk integral of h_0 vs quadrature",
                d.disk_integral_h0,
                CLOSED_FORM_TOL,
                "20 random configurations".into(),
            ));
            out.push(Check::at_most(
                8,
                "boundary constant vs boundary mean",
                d.boundary_constant,
                CLOSED_FORM_TOL,
                "20 random configurations".into(),
            ));
            out.push(Check::at_most(
                8,
                "h_0 spread on the circles",
                d.h0_spread,
                H0_SPREAD_TOL,
                "256 samples per circle".into(),
            ));
        }
        Err(e) => out.push(Check::flag(
            8,
            "closed forms vs quadrature",
            false,
            e.to_string(),
        )),
    }
    out.push(Check::window(
        8,
        "disk integral leading-term ratio at eps = 1e-4",
        disk_integral_leading_ratio(),
        DISK_LEADING_WINDOW,
        String::new(),
    ));
    out.push(Check::at_most(
        9,
        "reflection relations of the fixed points",
        reflection_defect(100, seed),
        REFLECTION_TOL,
        "100 random configurations".into(),
    ));
    let lead = fixed_point_leading_ratio();
    out.push(Check::at_most(
        9,
        "fixed point leading-term ratio at eps = 1e-6",
        (lead - 1.0).abs(),
        FIXED_POINT_LEADING_TOL,
        format!("ratio {lead}"),
    ));
    out
}

/// Runs a suite.  `seed` drives the randomized configurations.
pub fn verify(suite: Suite, exec: Execution, seed: u64) -> VerifyReport {
    let mut checks = Vec::new();
    let mut solved: Vec<SweepRecord> = Vec::new();
    let wants = |s: Suite| suite == Suite::All || suite == s;
    if wants(Suite::Specfun) {
        checks.extend(specfun_checks());
    }
    if wants(Suite::LowerBound) || suite == Suite::Identities {
        let zf = eps_sweep(BoundaryModel::ZeroFlux, false, &[1e-2, 1e-3, 1e-4], exec);
        checks.extend(lambda_constant_checks(&zf, "zero_flux"));
        solved.extend(zf);
        if wants(Suite::LowerBound) {
            let fc = eps_sweep(
                BoundaryModel::FluxCoupled { tau: 1.0 },
                false,
                &[1e-2, 1e-3, 1e-4],
                exec,
            );
            checks.extend(lambda_constant_checks(&fc, "flux_coupled tau = 1"));
            solved.extend(fc);
            let rate = eps_sweep(BoundaryModel::ZeroFlux, false, &eps_grid(), exec);
            checks.extend(blowup_checks(&rate));
            checks.extend(profile_checks(&rate));
            solved.extend(rate);
        }
    }
    if wants(Suite::Pec) {
        let pec = eps_sweep(BoundaryModel::Pec, false, &eps_grid(), exec);
        checks.extend(pec_checks(&pec));
        solved.extend(pec);
    }
    if wants(Suite::Bounded) {
        let small = eps_sweep(BoundaryModel::ZeroFlux, true, &eps_grid(), exec);
        checks.extend(bounded_checks(&small));
        solved.extend(small);
    }
    if wants(Suite::Mitigation) {
        let plane = k_sweep(false, exec);
        let sinus = k_sweep(true, exec);
        checks.extend(mitigation_checks(&plane, &sinus));
        solved.extend(plane);
        solved.extend(sinus);
    }
    if wants(Suite::Identities) {
        checks.extend(reciprocity_checks(&solved));
        checks.extend(identity_checks(seed, exec));
    } else if !solved.is_empty() {
        checks.extend(reciprocity_checks(&solved));
    }
    checks.sort_by_key(|c| c.criterion);
    let passed = checks.iter().all(|c| c.passed);
    VerifyReport {
        suite,
        passed,
        checks,
    }
}
