use std::io::Write;

use nalgebra::Vector3;

use crate::error::Result;

pub const CSV_HEADER: &str = "step,time,energy,sx,sy,sz,max_divB,max_gauss_residual";

/// Conservation diagnostics after one completed step.
///
/// Divergences are in bivector units: `max_div_b` is `max |∇·Im Ψ|` and the
/// Gauss residual is `max |∇·Re Ψ − ρ(t)|`, with ρ in the normalization of the
/// current that drives the field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogRecord {
    pub step: usize,
    pub time: f64,
    pub energy: f64,
    pub poynting: Vector3<f64>,
    pub max_div_b: f64,
    pub max_gauss_residual: f64,
    pub wave_residual: Option<f64>,
}

/// Append-only sequence of [`LogRecord`]s, one per completed step.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConservationLog {
    records: Vec<LogRecord>,
}

impl ConservationLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: LogRecord) {
        debug_assert!(self.records.last().is_none_or(|r| r.step < record.step));
        self.records.push(record);
    }

    pub fn records(&self) -> &[LogRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn max_gauss_residual(&self) -> f64 {
        self.records.iter().map(|r| r.max_gauss_residual).fold(0.0, f64::max)
    }

    pub fn max_div_b(&self) -> f64 {
        self.records.iter().map(|r| r.max_div_b).fold(0.0, f64::max)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{CSV_HEADER}")?;
        for r in &self.records {
            writeln!(
                w,
                "{},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}",
                r.step, r.time, r.energy, r.poynting.x, r.poynting.y, r.poynting.z, r.max_div_b, r.max_gauss_residual
            )?;
        }
        w.flush()?;
        Ok(())
    }
}
