//! Periodic `n³` lattice of bivector values.

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::{AnalyticField, Bivector};
use crate::linalg::CVector3;

#[derive(Clone, Debug, PartialEq)]
pub struct FieldGrid {
    n: usize,
    h: f64,
    data: Vec<Bivector>,
}

/// Grid-integrated observables (sums times the cell volume `h³`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantReport {
    pub i1: f64,
    pub i2: f64,
    pub energy: f64,
    pub poynting: Vector3<f64>,
}

fn validate_shape(n: usize, h: f64) -> Result<()> {
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::InvalidGrid(format!("n = {n} must be a power of two >= 4")));
    }
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidGrid(format!("spacing h = {h} must be positive and finite")));
    }
    Ok(())
}

impl FieldGrid {
    /// Sites are stored row-major with the x³ index fastest.
    pub fn new(n: usize, h: f64, data: Vec<Bivector>) -> Result<Self> {
        validate_shape(n, h)?;
        if data.len() != n * n * n {
            return Err(Error::InvalidGrid(format!("expected {} sites, got {}", n * n * n, data.len())));
        }
        if let Some(i) = data.iter().position(|b| !b.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite value at site {i}")));
        }
        Ok(Self { n, h, data })
    }

    pub fn zeros(n: usize, h: f64) -> Result<Self> {
        Self::new(n, h, vec![Bivector::zero(); n * n * n])
    }

    /// Samples `f` at the lattice positions `(i h, j h, k h)`.
    pub fn from_fn(n: usize, h: f64, f: impl Fn([f64; 3]) -> Bivector) -> Result<Self> {
        validate_shape(n, h)?;
        let data = (0..n * n * n).map(|i| f(site_position(n, h, i))).collect();
        Self::new(n, h, data)
    }

    /// Samples an analytic field at time `t`.
    pub fn sample<F: AnalyticField + ?Sized>(n: usize, h: f64, field: &F, t: f64) -> Result<Self> {
        Self::from_fn(n, h, |x| field.value(&[t, x[0], x[1], x[2]]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Bivector] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Bivector> {
        self.data
    }

    /// New grid of the same shape; `data` is trusted to have the right length.
    pub(crate) fn with_data(&self, data: Vec<Bivector>) -> Self {
        debug_assert_eq!(data.len(), self.data.len());
        Self { n: self.n, h: self.h, data }
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    pub fn position(&self, idx: usize) -> [f64; 3] {
        site_position(self.n, self.h, idx)
    }

    pub fn cell_volume(&self) -> f64 {
        self.h * self.h * self.h
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.n == other.n && self.h == other.h
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(Bivector::is_finite)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if !self.same_shape(other) {
            return Err(Error::GridMismatch);
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a.0 - b.0).norm()).fold(0.0, f64::max))
    }

    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|b| b.0.norm()).fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(&Bivector) -> Bivector) -> Self {
        self.with_data(self.data.iter().map(f).collect())
    }

    /// Pointwise multiplication by `e^{iα}`.
    pub fn gauge_phase(&self, alpha: f64) -> Self {
        self.map(|b| b.gauge_phase(alpha))
    }

    pub fn electric(&self) -> Vec<Vector3<f64>> {
        self.data.iter().map(|b| b.to_eb().0).collect()
    }

    pub fn magnetic(&self) -> Vec<Vector3<f64>> {
        self.data.iter().map(|b| b.to_eb().1).collect()
    }

    /// Integrated energy, Poynting vector and invariants.
    pub fn invariants(&self) -> InvariantReport {
        let mut rep = InvariantReport { i1: 0.0, i2: 0.0, energy: 0.0, poynting: Vector3::zeros() };
        for b in &self.data {
            let o = b.observables();
            rep.i1 += o.i1;
            rep.i2 += o.i2;
            rep.energy += o.energy;
            rep.poynting += o.poynting;
        }
        let dv = self.cell_volume();
        rep.i1 *= dv;
        rep.i2 *= dv;
        rep.energy *= dv;
        rep.poynting *= dv;
        rep
    }

    /// `h³ Σ ΨᵀΨ`, computed directly.
    pub fn integrated_invariant(&self) -> Complex64 {
        self.data.iter().map(Bivector::invariant).sum::<Complex64>() * self.cell_volume()
    }

    pub(crate) fn axpy(&mut self, a: Complex64, x: &[Bivector]) {
        for (d, v) in self.data.iter_mut().zip(x) {
            d.0 += v.0 * a;
        }
    }

    pub(crate) fn data_mut(&mut self) -> &mut [Bivector] {
        &mut self.data
    }

    /// Adds a real vector field (one per site) to the real part.
    pub(crate) fn add_real(&mut self, v: &[Vector3<f64>], scale: f64) {
        for (d, j) in self.data.iter_mut().zip(v) {
            d.0 += CVector3::from_fn(|k, _| Complex64::new(j[k] * scale, 0.0));
        }
    }
}

fn site_position(n: usize, h: f64, idx: usize) -> [f64; 3] {
    [(idx / (n * n)) as f64 * h, ((idx / n) % n) as f64 * h, (idx % n) as f64 * h]
}
