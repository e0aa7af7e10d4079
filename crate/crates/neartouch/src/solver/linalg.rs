//! Dense complex LU factorisation with partial pivoting and a 1-norm
//! condition estimate.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Row-major square matrix.
#[derive(Debug, Clone)]
pub struct Matrix {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Complex64] {
        &mut self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        let mut col = vec![0.0; self.n];
        for i in 0..self.n {
            for (c, a) in col.iter_mut().zip(&self.data[i * self.n..(i + 1) * self.n]) {
                *c += a.norm();
            }
        }
        col.into_iter().fold(0.0, f64::max)
    }
}

/// PA = LU with unit lower L stored below the diagonal.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
}

impl Lu {
    pub fn factor(mut a: Matrix) -> Result<Self> {
        let n = a.n;
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, a.at(i, k).norm()))
                .fold((k, -1.0), |best, c| if c.1 > best.1 { c } else { best });
            if pmax == 0.0 || !pmax.is_finite() {
                return Err(Error::Singularity(format!(
                    "matrix is singular at column {k}"
                )));
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let (head, tail) = a.data.split_at_mut((k + 1) * n);
            let pivot_row = &head[k * n..];
            let inv = 1.0 / pivot_row[k];
            for row in tail.chunks_exact_mut(n) {
                let l = row[k] * inv;
                row[k] = l;
                if l.re == 0.0 && l.im == 0.0 {
                    continue;
                }
                for (r, &u) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                    *r -= l * u;
                }
            }
        }
        Ok(Lu { lu: a, perm })
    }

    pub fn n(&self) -> usize {
        self.lu.n
    }

    /// Solves A x = b.
    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n();
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = &self.lu.data[i * n..i * n + i];
            let s: Complex64 = row.iter().zip(&x[..i]).map(|(a, b)| a * b).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = &self.lu.data[i * n..(i + 1) * n];
            let s: Complex64 = row[i + 1..]
                .iter()
                .zip(&x[i + 1..])
                .map(|(a, b)| a * b)
                .sum();
            x[i] = (x[i] - s) / row[i];
        }
        x
    }

    /// Solves A^H x = b.
    pub fn solve_adjoint(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n();
        // A^H = U^H L^H P, so solve U^H z = b, L^H w = z, x = P^T w.
        let mut z = b.to_vec();
        for i in 0..n {
            let zi = z[i] / self.lu.at(i, i).conj();
            z[i] = zi;
            let row = &self.lu.data[i * n..(i + 1) * n];
            for j in i + 1..n {
                z[j] -= row[j].conj() * zi;
            }
        }
        for i in (0..n).rev() {
            let zi = z[i];
            let row = &self.lu.data[i * n..i * n + i];
            for j in 0..i {
                z[j] -= row[j].conj() * zi;
            }
        }
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = z[i];
        }
        x
    }

    /// Estimate of ||A^{-1}||_1 (Hager's method with Higham's safeguards).
    pub fn inverse_norm1_estimate(&self) -> f64 {
        let n = self.n();
        if n == 0 {
            return 0.0;
        }
        let mut x = vec![Complex64::new(1.0 / n as f64, 0.0); n];
        let mut est = 0.0;
        let mut last_j = usize::MAX;
        for _ in 0..5 {
            let y = self.solve(&x);
            let new_est: f64 = y.iter().map(|v| v.norm()).sum();
            if new_est <= est && last_j != usize::MAX {
                break;
            }
            est = new_est;
            let xi: Vec<Complex64> = y
                .iter()
                .map(|v| {
                    let a = v.norm();
                    if a == 0.0 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        v / a
                    }
                })
                .collect();
            let z = self.solve_adjoint(&xi);
            let (j, zmax) = z
                .iter()
                .enumerate()
                .map(|(i, v)| (i, v.norm()))
                .fold((0, -1.0), |b, c| if c.1 > b.1 { c } else { b });
            if j == last_j {
                break;
            }
            let zx: f64 = z.iter().zip(&x).map(|(a, b)| (a.conj() * b).re).sum();
            if zmax <= zx {
                break;
            }
            last_j = j;
            x.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            x[j] = Complex64::new(1.0, 0.0);
        }
        // Higham's alternating-sign probe guards against underestimates.
        let alt: Vec<Complex64> = (0..n)
            .map(|i| {
                let s = if i % 2 == 0 { 1.0 } else { -1.0 };
                Complex64::new(s * (1.0 + i as f64 / (n as f64 - 1.0).max(1.0)), 0.0)
            })
            .collect();
        let y = self.solve(&alt);
        let alt_est = 2.0 * y.iter().map(|v| v.norm()).sum::<f64>() / (3.0 * n as f64);
        est.max(alt_est)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(n: usize, seed: u64) -> Matrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = Matrix::zeros(n);
        for v in a.data.iter_mut() {
            *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        a
    }

    #[test]
    fn solve_and_adjoint_round_trip() {
        let n = 40;
        let a = random_matrix(n, 7);
        let x: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(i as f64, 1.0 - i as f64))
            .collect();
        let b = a.mul_vec(&x);
        let lu = Lu::factor(a.clone()).unwrap();
        let got = lu.solve(&b);
        for (g, w) in got.iter().zip(&x) {
            assert!((g - w).norm() < 1e-9 * (1.0 + w.norm()));
        }
        let mut ah = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                ah.set(i, j, a.at(j, i).conj());
            }
        }
        let bh = ah.mul_vec(&x);
        for (g, w) in lu.solve_adjoint(&bh).iter().zip(&x) {
            assert!((g - w).norm() < 1e-9 * (1.0 + w.norm()));
        }
    }

    #[test]
    fn condition_estimate_of_diagonal() {
        let n = 10;
        let mut a = Matrix::zeros(n);
        for i in 0..n {
            a.set(i, i, Complex64::new(10f64.powi(-(i as i32)), 0.0));
        }
        let lu = Lu::factor(a.clone()).unwrap();
        let cond = a.norm1() * lu.inverse_norm1_estimate();
        assert!((cond / 1e9 - 1.0).abs() < 1e-9, "{cond}");
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = Matrix::zeros(3);
        assert!(matches!(Lu::factor(a), Err(Error::Singularity(_))));
    }
}
