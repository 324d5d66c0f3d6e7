//! Potentials for the bivector field and representation bookkeeping.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::ModeSum;
use crate::repr::AlgebraParams;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaugeFailure {
    /// `max |∇(∇·H)|` over the sample points.
    pub before: f64,
    /// The same for the transformed map `Q·H(Λ⁻¹x)`.
    pub after: f64,
}

/// Evaluates the constraint `∇(∇·H) = 0` before and after transforming `h`
/// with `p`, at `samples` random space-time points in `[−2, 2]⁴`.
pub fn gauge_potential_failure(h: &ModeSum, p: &AlgebraParams, samples: usize, seed: u64) -> GaugeFailure {
    let moved = h.transformed(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = GaugeFailure { before: 0.0, after: 0.0 };
    for _ in 0..samples.max(1) {
        let x: [f64; 4] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        rep.before = rep.before.max(h.grad_div(&x).norm());
        rep.after = rep.after.max(moved.grad_div(&x).norm());
    }
    rep
}

/// A representation `(A, B)` of the Lorentz algebra with spins stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpinPair {
    pub twice_a: u32,
    pub twice_b: u32,
}

impl SpinPair {
    pub const fn new(twice_a: u32, twice_b: u32) -> Self {
        Self { twice_a, twice_b }
    }

    /// `(2A + 1)(2B + 1)`.
    pub fn dimension(&self) -> u32 {
        (self.twice_a + 1) * (self.twice_b + 1)
    }
}

/// Clebsch–Gordan series `j₁ ⊗ j₂ = |j₁ − j₂| ⊕ … ⊕ (j₁ + j₂)` in doubled units.
fn su2_series(a: u32, b: u32) -> impl Iterator<Item = u32> {
    (a.abs_diff(b)..=a + b).step_by(2)
}

/// Irreducible summands of `x ⊗ y`, largest first.
pub fn tensor_product(x: SpinPair, y: SpinPair) -> Vec<SpinPair> {
    let mut out: Vec<SpinPair> = su2_series(x.twice_a, y.twice_a)
        .flat_map(|a| su2_series(x.twice_b, y.twice_b).map(move |b| SpinPair::new(a, b)))
        .collect();
    out.sort_by(|p, q| q.cmp(p));
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub left: SpinPair,
    pub right: SpinPair,
    pub summands: Vec<SpinPair>,
    pub dims: Vec<u32>,
}

impl Decomposition {
    pub fn new(left: SpinPair, right: SpinPair) -> Self {
        let summands = tensor_product(left, right);
        let dims = summands.iter().map(SpinPair::dimension).collect();
        Self { left, right, summands, dims }
    }

    pub fn total_dimension(&self) -> u32 {
        self.dims.iter().sum()
    }

    pub fn is_consistent(&self) -> bool {
        self.total_dimension() == self.left.dimension() * self.right.dimension()
    }

    pub fn contains(&self, p: SpinPair) -> bool {
        self.summands.contains(&p)
    }
}

/// The two products relevant to coupling a four-vector potential to the
/// three-component field: `(½,½)⊗(1,0)` and `(½,½)⊗(½,0)`.
pub fn rep_dimension_decomposition() -> [Decomposition; 2] {
    let vector = SpinPair::new(1, 1);
    [Decomposition::new(vector, SpinPair::new(2, 0)), Decomposition::new(vector, SpinPair::new(1, 0))]
}
