//! `rsbv transform`: apply a Lorentz transformation to a dump or a plane wave.

use std::path::PathBuf;

use nalgebra::Matrix3;
use rsbivector::field::{transform_analytic, AnalyticField, Bivector, Handedness, PlaneWaveSpec};
use rsbivector::grid::InvariantReport;
use rsbivector::repr::exp_lorentz;
use rsbivector::{io, AlgebraParams, Complex64, FieldGrid};

use crate::config::Config;
use crate::exit::CliError;

enum Input {
    Dump(PathBuf),
    Wave { spec: PlaneWaveSpec, n: usize, h: f64 },
}

/// The rotation as an exact signed permutation, if it is a lattice symmetry.
fn lattice_symmetry(p: &AlgebraParams) -> Option<Matrix3<i32>> {
    let r = exp_lorentz(p).spatial_block();
    let rounded = r.map(|x| x.round() as i32);
    let close = r.iter().zip(rounded.iter()).all(|(x, y)| (x - f64::from(*y)).abs() <= 1e-9);
    let signed_perm = (0..3).all(|i| rounded.row(i).iter().map(|v| v.abs()).sum::<i32>() == 1)
        && (0..3).all(|j| rounded.column(j).iter().map(|v| v.abs()).sum::<i32>() == 1);
    (close && signed_perm).then_some(rounded)
}

/// Moves lattice values `x → R x` without touching their components.
fn relocate(grid: &FieldGrid, r: &Matrix3<i32>) -> Result<FieldGrid, CliError> {
    let n = grid.n() as i64;
    let mut data = vec![Bivector::zero(); grid.len()];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let idx = [i, j, k];
                let dst: [usize; 3] = std::array::from_fn(|row| {
                    let v: i64 = (0..3).map(|col| i64::from(r[(row, col)]) * idx[col]).sum();
                    v.rem_euclid(n) as usize
                });
                data[grid.index(dst[0], dst[1], dst[2])] = grid.data()[grid.index(i as usize, j as usize, k as usize)];
            }
        }
    }
    Ok(FieldGrid::new(grid.n(), grid.h(), data)?)
}

/// `Ψ'(R x) = R Ψ(x)` on the lattice, exact for signed permutations.
fn rotate_grid(grid: &FieldGrid, r: &Matrix3<i32>) -> Result<FieldGrid, CliError> {
    let moved = relocate(grid, r)?;
    if *r == Matrix3::identity() {
        return Ok(moved);
    }
    let rc = r.map(|v| Complex64::new(f64::from(v), 0.0));
    Ok(moved.map(|v| Bivector(rc * v.0)))
}

fn pointwise_extremes(grid: &FieldGrid) -> (f64, f64) {
    grid.data().iter().fold((0.0f64, 0.0f64), |(a, b), v| {
        let o = v.observables();
        (a.max(o.i1.abs()), b.max(o.i2.abs()))
    })
}

fn print_report(label: &str, r: &InvariantReport) {
    println!("{label}_i1={:e}", r.i1);
    println!("{label}_i2={:e}", r.i2);
    println!("{label}_energy={:e}", r.energy);
}

pub fn run(mut c: Config, out_dir: Option<PathBuf>) -> Result<(), CliError> {
    let xi = c.triple::<f64>("xi")?.unwrap_or([0.0; 3]);
    let alpha = c.triple::<f64>("alpha")?.unwrap_or([0.0; 3]);
    let p = AlgebraParams::new(xi, alpha)?;
    let input = if let Some(path) = c.string("input") {
        Input::Dump(PathBuf::from(path))
    } else {
        let k = c
            .triple::<f64>("wave_k")?
            .ok_or_else(|| CliError::config("transform needs either `input` (dump) or `wave_k` (plane wave)"))?;
        let hand: Handedness = c
            .or("wave_handedness", "right".to_string())?
            .parse()
            .map_err(|e: rsbivector::Error| CliError::config(e.to_string()))?;
        let amp = c.or("wave_amplitude", 1.0)?;
        let n = c.or("n", 16usize)?;
        let h = c.or("h", 0.5)?;
        Input::Wave { spec: PlaneWaveSpec::new(k, hand, amp)?, n, h }
    };
    let output = match (c.string("output"), out_dir) {
        (Some(o), _) => PathBuf::from(o),
        (None, Some(d)) => d.join("transformed.rsbv"),
        (None, None) => PathBuf::from("transformed.rsbv"),
    };
    c.finish()?;

    // `origin` holds the untransformed field at each output point's preimage
    let (before, origin, after) = match input {
        Input::Dump(path) => {
            if !p.is_pure_rotation() {
                return Err(CliError::config(
                    "boosts cannot be applied to a sampled grid: a single-time snapshot lacks the data to resample \
                     a boosted frame; use an analytic plane-wave input (wave_k) instead",
                ));
            }
            let r = lattice_symmetry(&p).ok_or_else(|| {
                CliError::config("grid rotations must map the cubic lattice onto itself (multiples of pi/2 about axes)")
            })?;
            let g = io::load(&path)?;
            let origin = relocate(&g, &r)?;
            let moved = rotate_grid(&g, &r)?;
            (g, origin, moved)
        }
        Input::Wave { spec, n, h } => {
            let before = FieldGrid::sample(n, h, &spec, 0.0)?;
            let moved = transform_analytic(&p, spec);
            let after = FieldGrid::from_fn(n, h, |x| moved.value(&[0.0, x[0], x[1], x[2]]))?;
            let origin = FieldGrid::from_fn(n, h, |x| moved.inner().value(&moved.preimage(&[0.0, x[0], x[1], x[2]])))?;
            (before, origin, after)
        }
    };
    if let Some(dir) = output.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("cannot create {}: {e}", dir.display())))?;
    }
    io::save(&output, &after)?;

    let (rb, ra) = (before.invariants(), after.invariants());
    let (pb, pa) = (pointwise_extremes(&before), pointwise_extremes(&after));
    let pointwise_change = origin
        .data()
        .iter()
        .zip(after.data())
        .map(|(a, b)| (a.invariant().norm() - b.invariant().norm()).abs())
        .fold(0.0, f64::max);
    println!("command=transform");
    println!("xi={},{},{} alpha={},{},{}", xi[0], xi[1], xi[2], alpha[0], alpha[1], alpha[2]);
    print_report("before", &rb);
    print_report("after", &ra);
    println!("before_max_abs_i1={:e} before_max_abs_i2={:e}", pb.0, pb.1);
    println!("after_max_abs_i1={:e} after_max_abs_i2={:e}", pa.0, pa.1);
    println!("i1_change={:e}", (ra.i1 - rb.i1).abs());
    println!("i2_change={:e}", (ra.i2 - rb.i2).abs());
    println!("max_pointwise_invariant_change={pointwise_change:e}");
    println!("output={}", output.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn quarter_turns_are_lattice_symmetries() {
        assert_eq!(lattice_symmetry(&AlgebraParams::zero()), Some(Matrix3::identity()));
        let r = lattice_symmetry(&AlgebraParams::rotation([0.0, 0.0, FRAC_PI_2]).unwrap()).unwrap();
        assert_eq!(r.map(f64::from).determinant(), 1.0);
        assert!(lattice_symmetry(&AlgebraParams::rotation([0.0, 0.0, 0.3]).unwrap()).is_none());
    }

    #[test]
    fn rotation_agrees_with_analytic_transform() {
        let n = 8;
        let h = 0.5;
        let base = 2.0 * std::f64::consts::PI / (n as f64 * h);
        let spec = PlaneWaveSpec::new([base, 2.0 * base, 0.0], Handedness::Left, 1.0).unwrap();
        let p = AlgebraParams::rotation([FRAC_PI_2, 0.0, 0.0]).unwrap();
        let g = FieldGrid::sample(n, h, &spec, 0.0).unwrap();
        let rotated = rotate_grid(&g, &lattice_symmetry(&p).unwrap()).unwrap();
        let moved = transform_analytic(&p, spec);
        let exact = FieldGrid::from_fn(n, h, |x| moved.value(&[0.0, x[0], x[1], x[2]])).unwrap();
        assert!(rotated.max_abs_diff(&exact).unwrap() < 1e-12);
    }
}
