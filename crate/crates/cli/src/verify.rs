//! `rsbv verify`: numerical certificates with PASS/FAIL reporting.

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsbivector::field::{Mode, ModeSum};
use rsbivector::linalg::{CMatrix3, CVector3};
use rsbivector::nogo::{self, SpinPair};
use rsbivector::repr::{check_structure_constants, faraday_tensor_roundtrip, generators};
use rsbivector::{AlgebraParams, Complex64};

use crate::exit::CliError;

pub const CHECKS: [&str; 11] = [
    "structure-constants",
    "roundtrip",
    "linear",
    "antilinear",
    "pauli",
    "majorana",
    "dirac",
    "bivector-failure",
    "bispi",
    "gauge-potential",
    "dimensions",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub check: String,
    pub residual: f64,
    pub threshold: f64,
    pub bound: Bound,
}

impl Outcome {
    fn at_most(check: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Self { check: check.into(), residual, threshold, bound: Bound::AtMost }
    }

    fn at_least(check: impl Into<String>, residual: f64, threshold: f64) -> Self {
        Self { check: check.into(), residual, threshold, bound: Bound::AtLeast }
    }

    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.residual <= self.threshold,
            Bound::AtLeast => self.residual >= self.threshold,
        }
    }
}

fn random_params(rng: &mut ChaCha8Rng, bound: f64) -> AlgebraParams {
    let mut v = || std::array::from_fn(|_| rng.random_range(-bound..bound));
    AlgebraParams { xi: Vector3::from(v()), alpha: Vector3::from(v()) }
}

fn max_over(samples: usize, rng: &mut ChaCha8Rng, mut f: impl FnMut(&mut ChaCha8Rng) -> f64) -> f64 {
    (0..samples).map(|_| f(rng)).fold(0.0, f64::max)
}

/// Runs one named check; `samples` overrides its default sample count.
pub fn run_check(name: &str, seed: u64, samples: Option<usize>) -> Result<Vec<Outcome>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out = match name {
        "structure-constants" => {
            let good = check_structure_constants(&generators()).max_residual();
            let mut corrupted = generators().sigma_tilde()[0];
            corrupted[(1, 2)] *= Complex64::new(2.0, 0.0);
            let bad = check_structure_constants(&generators().with_sigma_tilde(0, corrupted)).max_residual();
            vec![Outcome::at_most(name, good, 0.0), Outcome::at_least("structure-constants.corrupted", bad, 1e-12)]
        }
        "roundtrip" => {
            let r = max_over(samples.unwrap_or(100), &mut rng, |rng| {
                let p = random_params(rng, 2.0);
                let e = Vector3::from_fn(|_, _| rng.random_range(-1.0..1.0));
                let b = Vector3::from_fn(|_, _| rng.random_range(-1.0..1.0));
                faraday_tensor_roundtrip(&p, &e, &b)
            });
            vec![Outcome::at_most(name, r, 1e-10)]
        }
        "linear" => {
            let identity = nogo::linear_mass_residual(&nogo::LinearAnsatz::new(CMatrix3::identity())?);
            let perms = nogo::signed_permutations()
                .iter()
                .map(|p| nogo::LinearAnsatz::new(p.map(|x| Complex64::new(x, 0.0))).map(|a| nogo::linear_mass_residual(&a)))
                .collect::<Result<Vec<f64>, _>>()?
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            let search = nogo::minimize_linear_residual(samples.unwrap_or(1000), seed)?;
            vec![
                Outcome::at_most("linear.identity", (identity - 4.0).abs(), 0.0),
                Outcome::at_least("linear.signed-permutations", perms, nogo::LINEAR_FLOOR),
                Outcome::at_least(name, search.infimum, nogo::LINEAR_FLOOR),
            ]
        }
        "antilinear" => {
            let rep = nogo::antilinear_obstruction(samples.unwrap_or(10_000), seed)?;
            vec![
                Outcome::at_least("antilinear.min-det", rep.min_det, 0.0),
                Outcome::at_most("antilinear.imag", rep.max_imag, 1e-12),
                Outcome::at_most("antilinear.modulus", rep.max_mismatch, 1e-12),
                Outcome::at_least("antilinear.gap-to-target", rep.min_det - rep.target, 1.0),
            ]
        }
        "pauli" => {
            let rep = nogo::pauli_contrast();
            let structural = rep.epsilon_squared_is_minus_id && rep.det_epsilon == 1;
            vec![
                Outcome::at_most(name, rep.residual as f64, 0.0),
                Outcome::at_most("pauli.epsilon", if structural { 0.0 } else { 1.0 }, 0.0),
            ]
        }
        "majorana" => {
            let mut on_shell = 0.0f64;
            let mut off_shell = f64::INFINITY;
            for _ in 0..samples.unwrap_or(100) {
                let p: [f64; 3] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
                let m = rng.random_range(0.1..2.0);
                let eta = Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
                let rep = nogo::majorana_dispersion(p, m, eta)?;
                on_shell = on_shell.max(rep.on_shell);
                // move p⁰² off the mass shell by at least 0.5
                let e2 = rep.energy * rep.energy;
                let mut shift = rng.random_range(0.5..2.0);
                if rng.random_bool(0.5) && e2 > shift {
                    shift = -shift;
                }
                off_shell = off_shell.min(nogo::majorana_residual((e2 + shift).sqrt(), p, m, eta)?);
            }
            vec![Outcome::at_most("majorana.on-shell", on_shell, 1e-12), Outcome::at_least("majorana.off-shell", off_shell, 1e-2)]
        }
        "dirac" => {
            let r = max_over(samples.unwrap_or(100), &mut rng, |rng| nogo::dirac_covariance_check(&random_params(rng, 1.5)));
            vec![Outcome::at_most(name, r, 1e-10)]
        }
        "bivector-failure" => {
            let n = samples.unwrap_or(100);
            let mut rotation = 0.0f64;
            let mut boost = f64::INFINITY;
            for _ in 0..n {
                let mut p = random_params(&mut rng, 2.0);
                let dir = Vector3::from_fn(|_, _| rng.random_range(-1.0..1.0));
                if dir.norm() < 1e-3 {
                    continue;
                }
                p.xi = dir.normalize() * rng.random_range(0.1..2.0);
                let r = nogo::bivector_covariance_failure(&p);
                rotation = rotation.max(r.rotation);
                boost = boost.min(r.boost());
            }
            vec![
                Outcome::at_most("bivector-failure.rotation", rotation, 1e-10),
                Outcome::at_least("bivector-failure.boost", boost, nogo::COVARIANCE_FLOOR),
            ]
        }
        "bispi" => {
            let mut worst = 0.0f64;
            for _ in 0..samples.unwrap_or(100) {
                worst = worst.max(nogo::bispi_identity_check(&random_params(&mut rng, 1.5))?);
            }
            vec![Outcome::at_most(name, worst, 1e-9)]
        }
        "gauge-potential" => {
            let n = samples.unwrap_or(100);
            let x = CVector3::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            let h = ModeSum(vec![Mode { amplitude: x, k: [2.0, 0.0, 0.0, 1.0] }]);
            let boost = nogo::gauge_potential_failure(&h, &AlgebraParams { xi: Vector3::new(1.0, 0.0, 0.0), alpha: Vector3::zeros() }, n, seed);
            let rot = AlgebraParams { xi: Vector3::zeros(), alpha: random_params(&mut rng, 2.0).alpha };
            let rotated = nogo::gauge_potential_failure(&h, &rot, n, seed);
            vec![
                Outcome::at_most("gauge-potential.before", boost.before, 1e-10),
                Outcome::at_least("gauge-potential.boost", boost.after, 1e-3),
                Outcome::at_most("gauge-potential.rotation", rotated.after, 1e-10),
            ]
        }
        "dimensions" => {
            let [first, second] = nogo::rep_dimension_decomposition();
            let bad = |ok: bool| if ok { 0.0 } else { 1.0 };
            vec![
                Outcome::at_most("dimensions.vector-x-(1,0)", bad(first.dims == [8, 4] && first.is_consistent()), 0.0),
                Outcome::at_most(
                    "dimensions.no-(1,0)",
                    bad(!first.contains(SpinPair::new(2, 0)) && !first.contains(SpinPair::new(0, 2))),
                    0.0,
                ),
                Outcome::at_most("dimensions.vector-x-(1/2,0)", bad(second.dims == [6, 2] && second.is_consistent()), 0.0),
            ]
        }
        other => {
            return Err(CliError::config(format!("unknown check `{other}`; known: all, {}", CHECKS.join(", "))));
        }
    };
    Ok(out)
}

/// Runs the named check (or `all`), prints the report and returns whether all passed.
pub fn run(name: &str, seed: u64, samples: Option<usize>) -> Result<bool, CliError> {
    let names: Vec<&str> = if name == "all" { CHECKS.to_vec() } else { vec![name] };
    // reject unknown names before running anything
    if let Some(bad) = names.iter().find(|n| !CHECKS.contains(n)) {
        return Err(CliError::config(format!("unknown check `{bad}`; known: all, {}", CHECKS.join(", "))));
    }
    let mut all = true;
    for n in names {
        for o in run_check(n, seed, samples)? {
            let status = if o.passed() { "PASS" } else { "FAIL" };
            let op = match o.bound {
                Bound::AtMost => "<=",
                Bound::AtLeast => ">=",
            };
            println!("{status} {}: {:e} {op} {:e}", o.check, o.residual, o.threshold);
            println!(
                "check={} status={} residual={:e} threshold={:e} bound={} seed={seed}",
                o.check,
                status.to_lowercase(),
                o.residual,
                o.threshold,
                if o.bound == Bound::AtMost { "max" } else { "min" },
            );
            all &= o.passed();
        }
    }
    println!("overall={}", if all { "pass" } else { "fail" });
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_checks_pass() {
        for name in CHECKS {
            let samples = if name == "linear" { Some(8) } else { Some(20) };
            for o in run_check(name, 3, samples).unwrap() {
                assert!(o.passed(), "{o:?}");
            }
        }
    }

    #[test]
    fn unknown_check_is_config_error() {
        assert_eq!(run_check("nope", 1, None).unwrap_err().code, crate::exit::INVALID_CONFIG);
    }
}
