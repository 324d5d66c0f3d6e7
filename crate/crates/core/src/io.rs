//! `RSBV` binary field dumps.
//!
//! Layout, all little-endian:
//!
//! | bytes | content |
//! |-------|---------|
//! | 4     | magic `RSBV` |
//! | 4     | format version (`u32`) |
//! | 4     | `n` (`u32`) |
//! | 8     | `h` (`f64`) |
//! | 48·n³ | per site `Re Ψ₁, Im Ψ₁, Re Ψ₂, Im Ψ₂, Re Ψ₃, Im Ψ₃` (`f64`), x³ fastest |

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::Bivector;
use crate::grid::FieldGrid;
use crate::linalg::CVector3;

pub const MAGIC: &[u8; 4] = b"RSBV";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 20;

/// Header fields of a dump.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DumpHeader {
    pub version: u32,
    pub n: u32,
    pub h: f64,
}

pub fn write_grid<W: Write>(mut w: W, grid: &FieldGrid) -> Result<()> {
    let n = u32::try_from(grid.n()).map_err(|_| Error::Format(format!("n = {} does not fit in u32", grid.n())))?;
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&n.to_le_bytes())?;
    w.write_all(&grid.h().to_le_bytes())?;
    let mut buf = Vec::with_capacity(48);
    for b in grid.data() {
        buf.clear();
        for z in b.0.iter() {
            buf.extend_from_slice(&z.re.to_le_bytes());
            buf.extend_from_slice(&z.im.to_le_bytes());
        }
        w.write_all(&buf)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_header<R: Read>(mut r: R) -> Result<DumpHeader> {
    let mut head = [0u8; HEADER_LEN];
    r.read_exact(&mut head).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => Error::Format("truncated header".into()),
        _ => Error::Io(e),
    })?;
    if &head[0..4] != MAGIC {
        return Err(Error::Format(format!("bad magic {:?}", &head[0..4])));
    }
    let version = u32::from_le_bytes(head[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let n = u32::from_le_bytes(head[8..12].try_into().unwrap());
    let h = f64::from_le_bytes(head[12..20].try_into().unwrap());
    Ok(DumpHeader { version, n, h })
}

pub fn read_grid<R: Read>(mut r: R) -> Result<FieldGrid> {
    let header = read_header(&mut r)?;
    let n = header.n as usize;
    if n < 4 || !n.is_power_of_two() || n > 1024 {
        return Err(Error::Format(format!("unsupported grid size n = {n}")));
    }
    let mut data = Vec::with_capacity(n * n * n);
    let mut rec = [0u8; 48];
    for _ in 0..n * n * n {
        r.read_exact(&mut rec).map_err(|e| match e.kind() {
            std::io::ErrorKind::UnexpectedEof => Error::Format("truncated data".into()),
            _ => Error::Io(e),
        })?;
        let f = |i: usize| f64::from_le_bytes(rec[8 * i..8 * i + 8].try_into().unwrap());
        data.push(Bivector(CVector3::new(
            Complex64::new(f(0), f(1)),
            Complex64::new(f(2), f(3)),
            Complex64::new(f(4), f(5)),
        )));
    }
    let mut tail = [0u8; 1];
    if r.read(&mut tail)? != 0 {
        return Err(Error::Format("trailing bytes after data".into()));
    }
    FieldGrid::new(n, header.h, data).map_err(|e| Error::Format(e.to_string()))
}

pub fn save(path: impl AsRef<Path>, grid: &FieldGrid) -> Result<()> {
    write_grid(BufWriter::new(File::create(path)?), grid)
}

pub fn load(path: impl AsRef<Path>) -> Result<FieldGrid> {
    read_grid(BufReader::new(File::open(path)?))
}
