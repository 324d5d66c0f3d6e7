//! `rsbv simulate`: evolve a field and write dumps plus the conservation log.

use std::f64::consts::PI;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsbivector::dynamics::{
    evolve_with_callback, EvolutionConfig, FdOrder, FourCurrentSource, GaussianPulse, NoCurrent, Scheme,
    SolenoidalCurrent, SourceQuadrature, TrigField,
};
use rsbivector::field::{AnalyticField, Bivector, Handedness, PlaneWaveSpec};
use rsbivector::{io, FieldGrid};

use crate::config::Config;
use crate::exit::CliError;

#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub steps: Option<usize>,
    pub dt: Option<f64>,
    pub scheme: Option<String>,
}

enum Init {
    PlaneWave(PlaneWaveSpec),
    Random { modes: usize, max_mode: i32 },
    File(PathBuf),
}

enum Source {
    None,
    Pulse(GaussianPulse),
    Solenoidal(SolenoidalCurrent),
}

impl Source {
    fn as_dyn(&self) -> &dyn FourCurrentSource {
        match self {
            Self::None => &NoCurrent,
            Self::Pulse(p) => p,
            Self::Solenoidal(s) => s,
        }
    }
}

pub struct SimulateConfig {
    n: usize,
    h: f64,
    evolution: EvolutionConfig,
    init: Init,
    source: Source,
    dump_every: usize,
    seed: u64,
    out: PathBuf,
}

pub fn parse_scheme(s: &str) -> Result<Scheme, CliError> {
    match s {
        "spectral" => Ok(Scheme::SpectralExact),
        "rk4" => Ok(Scheme::Rk4Fd),
        other => Err(CliError::config(format!("unknown scheme `{other}` (expected spectral or rk4)"))),
    }
}

fn lattice_vector(n: usize, h: f64, m: [i32; 3]) -> [f64; 3] {
    let base = 2.0 * PI / (n as f64 * h);
    m.map(|v| v as f64 * base)
}

impl SimulateConfig {
    pub fn from_config(mut c: Config, ov: &Overrides) -> Result<Self, CliError> {
        if let Some(s) = &ov.scheme {
            c.set("scheme", s.clone());
        }
        let n: usize = c.or("n", 32)?;
        let h: f64 = c.or("h", 0.25)?;
        let dt = match ov.dt {
            Some(dt) => dt,
            None => c.or("dt", 0.05)?,
        };
        let steps = match ov.steps {
            Some(s) => {
                c.string("steps");
                s
            }
            None => c.or("steps", 100)?,
        };
        if ov.dt.is_some() {
            c.string("dt");
        }
        let scheme = parse_scheme(&c.or("scheme", "spectral".to_string())?)?;
        let fd_order = match c.or("fd_order", 4u32)? {
            2 => FdOrder::Second,
            4 => FdOrder::Fourth,
            o => return Err(CliError::config(format!("fd_order must be 2 or 4, got {o}"))),
        };
        let quadrature = match c.or("quadrature", "gauss3".to_string())?.as_str() {
            "gauss3" => SourceQuadrature::GaussLegendre3,
            "midpoint" => SourceQuadrature::Midpoint,
            q => return Err(CliError::config(format!("unknown quadrature `{q}` (expected gauss3 or midpoint)"))),
        };
        let cfl: f64 = c.or("cfl", rsbivector::dynamics::DEFAULT_CFL)?;
        let seed = match ov.seed {
            Some(s) => {
                c.string("seed");
                s
            }
            None => c.or("seed", 0u64)?,
        };
        let out = match &ov.out {
            Some(p) => {
                c.string("out");
                p.clone()
            }
            None => PathBuf::from(c.or("out", "out".to_string())?),
        };
        let dump_every = c.or("dump_every", 0usize)?;

        let init = match c.or("init", "plane-wave".to_string())?.as_str() {
            "plane-wave" => {
                let m = c.triple::<i32>("wave_mode")?.unwrap_or([0, 0, 1]);
                let hand: Handedness = c
                    .or("wave_handedness", "right".to_string())?
                    .parse()
                    .map_err(|e: rsbivector::Error| CliError::config(e.to_string()))?;
                let amp = c.or("wave_amplitude", 1.0)?;
                Init::PlaneWave(PlaneWaveSpec::new(lattice_vector(n, h, m), hand, amp)?)
            }
            "random" => {
                let modes = c.or("random_modes", 8usize)?;
                let max_mode = c.or("random_max_mode", 3i32)?;
                if modes == 0 || max_mode < 1 {
                    return Err(CliError::config("random_modes and random_max_mode must be at least 1"));
                }
                Init::Random { modes, max_mode }
            }
            "file" => Init::File(PathBuf::from(c.required::<String>("init_file")?)),
            other => return Err(CliError::config(format!("unknown init `{other}` (plane-wave, random, file)"))),
        };

        let length = n as f64 * h;
        let source = match c.or("source", "none".to_string())?.as_str() {
            "none" => Source::None,
            kind @ ("gaussian-pulse" | "solenoidal") => {
                let m = c.triple::<i32>("source_mode")?.unwrap_or([1, 0, 0]);
                let v = c.triple::<f64>("source_vector")?.unwrap_or([0.5, 0.0, 0.0]);
                let phase = c.or("source_phase", 0.0)?;
                let profile = TrigField::lattice(length, &[(m, v, phase)]);
                if kind == "solenoidal" {
                    Source::Solenoidal(SolenoidalCurrent { potential: profile })
                } else {
                    let center = c.or("source_center", 1.0)?;
                    let width: f64 = c.or("source_width", 0.3)?;
                    if !(width > 0.0) {
                        return Err(CliError::config("source_width must be positive"));
                    }
                    Source::Pulse(GaussianPulse { profile, center, width })
                }
            }
            other => {
                return Err(CliError::config(format!("unknown source `{other}` (none, gaussian-pulse, solenoidal)")))
            }
        };
        c.finish()?;

        let evolution = EvolutionConfig { dt, steps, scheme, fd_order, cfl, quadrature, track_wave_residual: false };
        if n < 4 || n > 512 || !n.is_power_of_two() {
            return Err(CliError::config(format!("n = {n} must be a power of two in [4, 512]")));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(CliError::config(format!("h = {h} must be positive and finite")));
        }
        evolution.validate(h)?;
        Ok(Self { n, h, evolution, init, source, dump_every, seed, out })
    }

    fn initial_grid(&self) -> Result<FieldGrid, CliError> {
        match &self.init {
            Init::PlaneWave(w) => Ok(FieldGrid::sample(self.n, self.h, w, 0.0)?),
            Init::Random { modes, max_mode } => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let mut waves = Vec::with_capacity(*modes);
                while waves.len() < *modes {
                    let m: [i32; 3] = std::array::from_fn(|_| rng.random_range(-max_mode..=*max_mode));
                    if m == [0, 0, 0] || m.iter().any(|v| v.unsigned_abs() as usize >= self.n / 2) {
                        continue;
                    }
                    let hand = if rng.random_bool(0.5) { Handedness::Right } else { Handedness::Left };
                    let amp = rng.random_range(0.1..1.0);
                    let phase = rng.random_range(0.0..2.0 * PI);
                    waves.push((PlaneWaveSpec::new(lattice_vector(self.n, self.h, m), hand, amp)?, phase));
                }
                Ok(FieldGrid::from_fn(self.n, self.h, |x| {
                    let p = [0.0, x[0], x[1], x[2]];
                    Bivector(waves.iter().map(|(w, ph)| w.value(&p).gauge_phase(*ph).0).sum())
                })?)
            }
            Init::File(path) => {
                let g = io::load(path)?;
                if g.n() != self.n || g.h() != self.h {
                    return Err(CliError::config(format!(
                        "init_file has n = {}, h = {} but config says n = {}, h = {}",
                        g.n(),
                        g.h(),
                        self.n,
                        self.h
                    )));
                }
                Ok(g)
            }
        }
    }
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("cannot create {}: {e}", dir.display())))
}

pub fn run(config: Config, ov: &Overrides) -> Result<(), CliError> {
    let sc = SimulateConfig::from_config(config, ov)?;
    create_dir(&sc.out)?;
    let g0 = sc.initial_grid()?;
    io::save(sc.out.join("initial.rsbv"), &g0)?;

    let every = sc.dump_every;
    let out = sc.out.clone();
    let (end, log) = evolve_with_callback(&g0, sc.source.as_dyn(), &sc.evolution, |step, grid| {
        if every > 0 && step % every == 0 {
            io::save(out.join(format!("step_{step:06}.rsbv")), grid)?;
        }
        Ok(())
    })?;
    io::save(sc.out.join("final.rsbv"), &end)?;
    let csv = File::create(sc.out.join("conservation.csv"))
        .map_err(|e| CliError::io(format!("cannot write conservation.csv: {e}")))?;
    log.write_csv(BufWriter::new(csv))?;

    let t_end = sc.evolution.dt * sc.evolution.steps as f64;
    let first = &log.records()[0];
    let last = log.records().last().unwrap_or(first);
    println!("command=simulate");
    println!("n={} h={} steps={} dt={} t_end={t_end}", sc.n, sc.h, sc.evolution.steps, sc.evolution.dt);
    println!("scheme={:?} seed={}", sc.evolution.scheme, sc.seed);
    println!("energy_initial={:e}", first.energy);
    println!("energy_final={:e}", last.energy);
    if first.energy > 0.0 {
        println!("energy_drift_rel={:e}", (last.energy - first.energy).abs() / first.energy);
    }
    println!("max_divB={:e}", log.max_div_b());
    println!("max_gauss_residual={:e}", log.max_gauss_residual());
    if let (Init::PlaneWave(w), Source::None) = (&sc.init, &sc.source) {
        let exact = FieldGrid::sample(sc.n, sc.h, w, t_end)?;
        println!("analytic_error={:e}", end.max_abs_diff(&exact)?);
    }
    println!("out={}", sc.out.display());
    Ok(())
}
