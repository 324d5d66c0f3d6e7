//! Three-dimensional FFTs and spectral derivatives on the periodic lattice.
//!
//! Wavenumbers follow FFT order, `k = 2π m / (n h)` with `m ∈ [−n/2, n/2)`.
//! The Nyquist index `m = −n/2` gets wavenumber zero in every derivative so
//! that derivatives of real data stay real.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::field::Bivector;
use crate::grid::FieldGrid;
use crate::linalg::{CVector3, I};

/// Component-wise spectrum of a bivector grid.
pub type Spectrum = [Vec<Complex64>; 3];

pub struct Spectral {
    n: usize,
    h: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    wavenumbers: Vec<f64>,
}

impl std::fmt::Debug for Spectral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Spectral").field("n", &self.n).field("h", &self.h).finish()
    }
}

impl Spectral {
    pub fn new(n: usize, h: f64) -> Self {
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let base = 2.0 * PI / (n as f64 * h);
        let wavenumbers = (0..n)
            .map(|i| {
                if i < n / 2 {
                    base * i as f64
                } else if i == n / 2 {
                    0.0
                } else {
                    base * (i as f64 - n as f64)
                }
            })
            .collect();
        Self { n, h, forward, inverse, wavenumbers }
    }

    pub fn for_grid(grid: &FieldGrid) -> Self {
        Self::new(grid.n(), grid.h())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Derivative wavevector of flat index `idx` (Nyquist components zeroed).
    pub fn wavevector(&self, idx: usize) -> [f64; 3] {
        let n = self.n;
        [self.wavenumbers[idx / (n * n)], self.wavenumbers[(idx / n) % n], self.wavenumbers[idx % n]]
    }

    fn transform(&self, data: &mut [Complex64], fft: &Arc<dyn Fft<f64>>) {
        let n = self.n;
        // fastest axis: contiguous lines
        fft.process(data);
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        for stride in [n, n * n] {
            for base in 0..n * n * n {
                // visit each line once: base has zero coordinate along the axis
                if (base / stride) % n != 0 {
                    continue;
                }
                for (i, v) in line.iter_mut().enumerate() {
                    *v = data[base + i * stride];
                }
                fft.process(&mut line);
                for (i, v) in line.iter().enumerate() {
                    data[base + i * stride] = *v;
                }
            }
        }
    }

    pub fn forward_scalar(&self, data: &[Complex64]) -> Vec<Complex64> {
        let mut out = data.to_vec();
        self.transform(&mut out, &self.forward);
        out
    }

    pub fn inverse_scalar(&self, data: &[Complex64]) -> Vec<Complex64> {
        let mut out = data.to_vec();
        self.transform(&mut out, &self.inverse);
        let scale = 1.0 / (self.n * self.n * self.n) as f64;
        out.iter_mut().for_each(|z| *z *= scale);
        out
    }

    pub fn forward(&self, grid: &FieldGrid) -> Spectrum {
        std::array::from_fn(|c| {
            let comp: Vec<Complex64> = grid.data().iter().map(|b| b.0[c]).collect();
            self.forward_scalar(&comp)
        })
    }

    pub fn inverse(&self, spectrum: &Spectrum) -> Vec<Bivector> {
        let [a, b, c] = spectrum.each_ref().map(|s| self.inverse_scalar(s));
        (0..a.len()).map(|i| Bivector(CVector3::new(a[i], b[i], c[i]))).collect()
    }

    /// `∇·Ψ` as a complex scalar grid.
    pub fn divergence(&self, grid: &FieldGrid) -> Vec<Complex64> {
        let s = self.forward(grid);
        let div: Vec<Complex64> = (0..s[0].len())
            .map(|i| {
                let k = self.wavevector(i);
                I * (s[0][i] * k[0] + s[1][i] * k[1] + s[2][i] * k[2])
            })
            .collect();
        self.inverse_scalar(&div)
    }

    /// `∇×Ψ`.
    pub fn curl(&self, grid: &FieldGrid) -> FieldGrid {
        let s = self.forward(grid);
        let mut out: Spectrum = std::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); s[0].len()]);
        for i in 0..s[0].len() {
            let k = self.wavevector(i);
            out[0][i] = I * (s[2][i] * k[1] - s[1][i] * k[2]);
            out[1][i] = I * (s[0][i] * k[2] - s[2][i] * k[0]);
            out[2][i] = I * (s[1][i] * k[0] - s[0][i] * k[1]);
        }
        grid.with_data(self.inverse(&out))
    }

    /// `∇f` of a complex scalar grid, returned as a bivector grid.
    pub fn gradient(&self, scalar: &[Complex64]) -> Vec<Bivector> {
        let s = self.forward_scalar(scalar);
        let out: Spectrum =
            std::array::from_fn(|c| s.iter().enumerate().map(|(i, z)| I * z * self.wavevector(i)[c]).collect());
        self.inverse(&out)
    }

    /// Component-wise Laplacian `−|k|² Ψ̂`.
    pub fn laplacian(&self, grid: &FieldGrid) -> FieldGrid {
        let mut s = self.forward(grid);
        for comp in s.iter_mut() {
            for (i, z) in comp.iter_mut().enumerate() {
                let k = self.wavevector(i);
                *z *= -(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]);
            }
        }
        grid.with_data(self.inverse(&s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_grid(n: usize, h: f64, seed: u64) -> FieldGrid {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = (0..n * n * n)
            .map(|_| {
                Bivector(CVector3::from_fn(|_, _| {
                    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                }))
            })
            .collect();
        FieldGrid::new(n, h, data).unwrap()
    }

    #[test]
    fn fft_roundtrip() {
        let g = random_grid(8, 0.5, 1);
        let sp = Spectral::for_grid(&g);
        let back = sp.inverse(&sp.forward(&g));
        for (a, b) in g.data().iter().zip(&back) {
            assert!((a.0 - b.0).norm() < 1e-14);
        }
    }

    #[test]
    fn fft_matches_direct_dft() {
        let n = 4;
        let g = random_grid(n, 1.0, 2);
        let sp = Spectral::for_grid(&g);
        let comp: Vec<Complex64> = g.data().iter().map(|b| b.0[1]).collect();
        let fast = sp.forward_scalar(&comp);
        for m in 0..n * n * n {
            let (m0, m1, m2) = (m / (n * n), (m / n) % n, m % n);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n * n * n {
                let (j0, j1, j2) = (j / (n * n), (j / n) % n, j % n);
                let arg = -2.0 * PI * ((m0 * j0 + m1 * j1 + m2 * j2) as f64) / n as f64;
                acc += comp[j] * Complex64::from_polar(1.0, arg);
            }
            assert!((acc - fast[m]).norm() < 1e-12);
        }
    }

    #[test]
    fn constant_field_has_no_derivatives() {
        let c = Bivector(CVector3::new(Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.0), Complex64::new(0.0, 3.0)));
        let g = FieldGrid::new(8, 0.3, vec![c; 512]).unwrap();
        let sp = Spectral::for_grid(&g);
        assert!(sp.divergence(&g).iter().all(|z| z.norm() < 1e-13));
        assert!(sp.curl(&g).data().iter().all(|b| b.0.norm() < 1e-13));
    }

    #[test]
    fn vector_identities_on_random_grid() {
        let g = random_grid(16, 0.4, 7);
        let sp = Spectral::for_grid(&g);
        let div_curl = sp.divergence(&sp.curl(&g));
        assert!(div_curl.iter().all(|z| z.norm() <= 1e-12), "div curl");
        let scalar: Vec<Complex64> = g.data().iter().map(|b| b.0[0]).collect();
        let grad = g.with_data(sp.gradient(&scalar));
        assert!(sp.curl(&grad).data().iter().all(|b| b.0.norm() <= 1e-12), "curl grad");
    }

    #[test]
    fn derivative_of_lattice_sine() {
        let n = 16;
        let h = 0.25;
        let k = 2.0 * PI * 3.0 / (n as f64 * h);
        let g = FieldGrid::from_fn(n, h, |x| {
            Bivector(CVector3::new(Complex64::new((k * x[0]).sin(), 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)))
        })
        .unwrap();
        let sp = Spectral::for_grid(&g);
        let div = sp.divergence(&g);
        for (i, z) in div.iter().enumerate() {
            let x = g.position(i);
            assert!((z - Complex64::new(k * (k * x[0]).cos(), 0.0)).norm() < 1e-12);
        }
    }
}
