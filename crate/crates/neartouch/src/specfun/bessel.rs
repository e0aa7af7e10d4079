//! Integer-order Bessel functions J_n, Y_n of real argument.
//!
//! Small arguments use the power series; otherwise J_n comes from Miller's
//! backward recurrence normalised by `J_0 + 2 sum J_2k = 1`, Y_0 and Y_1
//! from the Neumann series in those J's, and Y_n from forward recurrence.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{FRAC_2_PI, PI};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest order served; higher orders are refused.
pub const MAX_ORDER: usize = 128;

/// Below this argument Y_0, Y_1 come from their power series.
const Y_SERIES_LIMIT: f64 = 2.0;

fn check_order(n: i64) -> Result<usize> {
    if n < 0 {
        return Err(Error::InvalidArgument(format!("negative order {n}")));
    }
    let n = n as usize;
    if n > MAX_ORDER {
        return Err(Error::Capability(format!(
            "order {n} exceeds the maximum supported order {MAX_ORDER}"
        )));
    }
    Ok(n)
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

fn use_j_series(n: usize, x: f64) -> bool {
    x <= 2.0 || x * x < 4.0 * (n as f64 + 1.0)
}

/// Power series for J_n(x); terms are scaled by (x/2)^n / n! analytically.
fn j_series(n: usize, x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let nf = n as f64;
    for m in 1..200 {
        let mf = m as f64;
        term *= -q / (mf * (mf + nf));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    if n == 0 {
        return sum;
    }
    let lead = nf * (0.5 * x).ln() - ln_factorial(n);
    lead.exp() * sum
}

/// J_0..=J_top by Miller's algorithm, where `top` is the recurrence start;
/// the returned vector is normalised and has length `top + 1`.
fn j_miller(nmax: usize, x: f64) -> Vec<f64> {
    let base = (nmax as f64).max(x);
    let mut top = (base + 30.0 + (40.0 * base).sqrt()).ceil() as usize;
    if top % 2 == 1 {
        top += 1;
    }
    let mut b = vec![0.0; top + 2];
    b[top] = 1e-300_f64.max(f64::MIN_POSITIVE * 1e10);
    let two_over_x = 2.0 / x;
    for k in (1..=top).rev() {
        let v = (k as f64) * two_over_x * b[k] - b[k + 1];
        b[k - 1] = v;
        if v.abs() > 1e250 {
            for bj in b.iter_mut().skip(k - 1) {
                *bj *= 1e-250;
            }
        }
    }
    let mut norm = b[0];
    let mut k = 2;
    while k <= top {
        norm += 2.0 * b[k];
        k += 2;
    }
    let inv = 1.0 / norm;
    b.truncate(top + 1);
    b.iter_mut().for_each(|v| *v *= inv);
    b
}

/// Y_0 and Y_1 by power series (x small).
fn y01_series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let lnx2 = (0.5 * x).ln();
    // J_0, J_1 and the harmonic-weighted sums.
    let mut t0 = 1.0; // q^m / (m!)^2 with sign
    let mut j0 = 1.0;
    let mut s0 = 0.0; // sum (-1)^{m+1} H_m q^m/(m!)^2
    let mut h = 0.0;
    // For Y_1: terms (-q)^m / (m! (m+1)!) and psi(m+1)+psi(m+2)
    let mut t1 = 1.0;
    let mut j1s = 1.0;
    let mut s1 = (-EULER_GAMMA) + (1.0 - EULER_GAMMA);
    for m in 1..100 {
        let mf = m as f64;
        h += 1.0 / mf;
        t0 *= -q / (mf * mf);
        j0 += t0;
        s0 -= h * t0;
        t1 *= -q / (mf * (mf + 1.0));
        j1s += t1;
        let psi_sum = 2.0 * (h - EULER_GAMMA) + 1.0 / (mf + 1.0);
        s1 += psi_sum * t1;
        if t0.abs() < 1e-18 && t1.abs() < 1e-18 {
            break;
        }
    }
    let j1 = 0.5 * x * j1s;
    let y0 = FRAC_2_PI * ((lnx2 + EULER_GAMMA) * j0 + s0);
    let y1 = -FRAC_2_PI / x + FRAC_2_PI * lnx2 * j1 - (0.5 * x / PI) * s1;
    (y0, y1)
}

/// Y_0 and Y_1 from Neumann series over a normalised Miller vector.
fn y01_neumann(x: f64, j: &[f64]) -> (f64, f64) {
    let l = (0.5 * x).ln() + EULER_GAMMA;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut k = 1;
    while 2 * k + 1 < j.len() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let kf = k as f64;
        s0 += sign * j[2 * k] / kf;
        s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / kf;
        k += 1;
    }
    let y0 = FRAC_2_PI * l * j[0] - 2.0 * FRAC_2_PI * s0;
    let y1 = -FRAC_2_PI * j[0] / x + FRAC_2_PI * l * j[1] + FRAC_2_PI * s1;
    (y0, y1)
}

fn check_arg(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite argument {x}")));
    }
    Ok(())
}

/// J_n(x) for n >= 0, x >= 0.
pub fn bessel_j(n: i64, x: f64) -> Result<f64> {
    let n = check_order(n)?;
    check_arg(x)?;
    if x < 0.0 {
        return Err(Error::InvalidArgument(format!("negative argument {x}")));
    }
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    if use_j_series(n, x) {
        Ok(j_series(n, x))
    } else {
        Ok(j_miller(n, x)[n])
    }
}

/// Y_n(x) for n >= 0, x > 0.
pub fn bessel_y(n: i64, x: f64) -> Result<f64> {
    let n = check_order(n)?;
    check_arg(x)?;
    if x <= 0.0 {
        return Err(Error::Domain(format!("Y_n needs x > 0, got {x}")));
    }
    let (y0, y1) = y01(x);
    Ok(forward_y(n, x, y0, y1)[n])
}

fn y01(x: f64) -> (f64, f64) {
    if x <= Y_SERIES_LIMIT {
        y01_series(x)
    } else {
        y01_neumann(x, &j_miller(1, x))
    }
}

fn forward_y(n: usize, x: f64, y0: f64, y1: f64) -> Vec<f64> {
    let mut y = Vec::with_capacity(n + 2);
    y.push(y0);
    y.push(y1);
    for m in 1..n {
        let next = (2.0 * m as f64 / x) * y[m] - y[m - 1];
        y.push(next);
    }
    y.truncate(n + 1);
    y
}

/// J_0..=J_nmax and Y_0..=Y_nmax at one argument x > 0.
pub fn bessel_jy_array(nmax: usize, x: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    check_order(nmax as i64)?;
    check_arg(x)?;
    if x <= 0.0 {
        return Err(Error::Domain(format!("Y_n needs x > 0, got {x}")));
    }
    let j: Vec<f64> = if use_j_series(nmax, x) && x <= Y_SERIES_LIMIT {
        (0..=nmax).map(|n| j_series(n, x)).collect()
    } else {
        let mut v = j_miller(nmax, x);
        v.truncate(nmax + 1);
        v
    };
    let (y0, y1) = y01(x);
    Ok((j, forward_y(nmax, x, y0, y1)))
}

/// H_n^(1)(x) = J_n(x) + i Y_n(x).
pub fn hankel1(n: i64, x: f64) -> Result<Complex64> {
    Ok(Complex64::new(bessel_j(n, x)?, bessel_y(n, x)?))
}

/// (H_0^(1)(x), H_1^(1)(x)) for x > 0, the pair needed by the kernels.
pub fn hankel1_01(x: f64) -> (Complex64, Complex64) {
    debug_assert!(x > 0.0);
    if x <= Y_SERIES_LIMIT {
        let (y0, y1) = y01_series(x);
        (
            Complex64::new(j_series(0, x), y0),
            Complex64::new(j_series(1, x), y1),
        )
    } else {
        let j = j_miller(1, x);
        let (y0, y1) = y01_neumann(x, &j);
        (Complex64::new(j[0], y0), Complex64::new(j[1], y1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    // Reference values from an arbitrary-precision evaluation (mpmath, 30 digits).
    const J_REF: &[(i64, f64, f64)] = &[
        (0, 0.5, 0.938_469_807_240_812_9),
        (0, 5.0, -0.177_596_771_314_338_3),
        (1, 1.0, 0.440_050_585_744_933_5),
        (1, 10.0, 0.043_472_746_168_861_44),
        (2, 0.1, 0.001_248_958_658_799_919),
        (5, 3.0, 0.043_028_434_877_047_58),
        (10, 30.0, -0.129_876_893_998_588_77),
        (20, 5.0, 2.770_330_052_128_942e-11),
        (3, 49.5, 0.112_842_677_563_153_78),
        (64, 1.0, 4.255_915_220_948_966e-109),
    ];
    const Y_REF: &[(i64, f64, f64)] = &[
        (0, 0.5, -0.444_518_733_506_706_6),
        (0, 5.0, -0.308_517_625_249_033_8),
        (1, 1.0, -0.781_212_821_300_288_7),
        (1, 2.5, 0.145_918_137_966_785_8),
        (1, 10.0, 0.249_015_424_206_953_9),
        (3, 7.0, 0.268_080_603_042_315_08),
        (10, 30.0, 0.075_056_702_122_397_11),
        (0, 49.0, -0.100_961_135_116_051_06),
    ];

    #[test]
    fn matches_reference_values() {
        for &(n, x, v) in J_REF {
            let got = bessel_j(n, x).unwrap();
            assert!(rel(got, v) < 1e-12, "J_{n}({x}) = {got}, want {v}");
        }
        for &(n, x, v) in Y_REF {
            let got = bessel_y(n, x).unwrap();
            assert!(rel(got, v) < 1e-10, "Y_{n}({x}) = {got}, want {v}");
        }
    }

    #[test]
    fn spot_values() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert!((bessel_j(2, 0.1).unwrap() - 1.2490e-3).abs() < 1e-7);
        assert!((bessel_y(1, 1.0).unwrap() + 0.7812128).abs() < 1e-7);
        let w = bessel_j(1, 1.0).unwrap() * bessel_y(0, 1.0).unwrap()
            - bessel_j(0, 1.0).unwrap() * bessel_y(1, 1.0).unwrap();
        assert!((w - 2.0 / PI).abs() < 1e-14);
    }

    #[test]
    fn small_argument_y0_limit() {
        let x = 1e-8_f64;
        let lim = FRAC_2_PI * ((0.5 * x).ln() + EULER_GAMMA);
        assert!(rel(bessel_y(0, x).unwrap(), lim) < 1e-12);
    }

    #[test]
    fn errors() {
        assert!(matches!(bessel_j(-1, 1.0), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            bessel_j(0, f64::NAN),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(bessel_y(0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_y(0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(129, 1.0), Err(Error::Capability(_))));
        assert!(bessel_j(128, 1.0).is_ok());
    }

    #[test]
    fn array_agrees_with_scalar() {
        for &x in &[0.3, 1.7, 2.2, 9.0, 40.0] {
            let (j, y) = bessel_jy_array(20, x).unwrap();
            for n in 0..=20 {
                assert!(rel(j[n], bessel_j(n as i64, x).unwrap()) < 1e-12);
                assert!(rel(y[n], bessel_y(n as i64, x).unwrap()) < 1e-12);
            }
        }
    }

    #[test]
    fn hankel_pair_matches() {
        for &x in &[0.01, 1.0, 2.0, 2.01, 7.5] {
            let (h0, h1) = hankel1_01(x);
            assert!((h0 - hankel1(0, x).unwrap()).norm() < 1e-14 * h0.norm());
            assert!((h1 - hankel1(1, x).unwrap()).norm() < 1e-14 * h1.norm());
        }
    }
}
