//! Binary field dumps and CSV slices.
//!
//! A dump is a 32-byte little-endian header (`NLFLDv01`, `u32 nx`, `u32 ny`, `f64 h`,
//! `f64 t`) followed by `nx * ny` row-major `f64` values. One-dimensional fields store
//! `ny = 0`. Obstacle cells hold NaN.

use std::fs;
use std::path::Path;

use crate::domain::ExteriorGrid;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"NLFLDv01";
pub const HEADER_LEN: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct FieldDump {
    pub dim: usize,
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
    pub t: f64,
    pub values: Vec<f64>,
}

impl FieldDump {
    pub fn from_grid(grid: &ExteriorGrid, t: f64, values: &[f64]) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Io(format!(
                "field has {} values, grid has {} cells",
                values.len(),
                grid.len()
            )));
        }
        let (nx, ny) = grid.shape();
        Ok(FieldDump {
            dim: grid.dim(),
            nx,
            ny,
            h: grid.h(),
            t,
            values: values.to_vec(),
        })
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 8 * self.values.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&(self.nx as u32).to_le_bytes());
        let ny = if self.dim == 1 { 0 } else { self.ny as u32 };
        out.extend_from_slice(&ny.to_le_bytes());
        out.extend_from_slice(&self.h.to_le_bytes());
        out.extend_from_slice(&self.t.to_le_bytes());
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN || &bytes[..8] != MAGIC {
            return Err(Error::Io("not a field dump".into()));
        }
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().expect("4 bytes")) as usize;
        let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().expect("8 bytes"));
        let nx = u32_at(8);
        let raw_ny = u32_at(12);
        let (dim, ny) = if raw_ny == 0 { (1, 1) } else { (2, raw_ny) };
        let n = nx * ny;
        if bytes.len() != HEADER_LEN + 8 * n {
            return Err(Error::Io(format!(
                "payload holds {} bytes, header promises {}",
                bytes.len() - HEADER_LEN,
                8 * n
            )));
        }
        let values = (0..n).map(|k| f64_at(HEADER_LEN + 8 * k)).collect();
        Ok(FieldDump {
            dim,
            nx,
            ny,
            h: f64_at(16),
            t: f64_at(24),
            values,
        })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.encode()).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::decode(&bytes)
    }
}

/// Cell values along the row (`axis = 0`) or column (`axis = 1`) nearest to `coord`,
/// as `x1,x2,value` lines.
pub fn csv_slice(grid: &ExteriorGrid, values: &[f64], axis: usize, coord: f64) -> String {
    let (nx, ny) = grid.shape();
    let b = grid.bbox();
    let h = grid.h();
    let mut s = String::from("x1,x2,value\n");
    let nearest = |lo: f64, n: usize| (((coord - lo) / h - 0.5).round().max(0.0) as usize).min(n - 1);
    let cells: Vec<usize> = if axis == 0 || grid.dim() == 1 {
        let j = if grid.dim() == 1 { 0 } else { nearest(b.lower[1], ny) };
        (0..nx).map(|i| grid.index(i, j)).collect()
    } else {
        let i = nearest(b.lower[0], nx);
        (0..ny).map(|j| grid.index(i, j)).collect()
    };
    for k in cells {
        let x = grid.center(k);
        s.push_str(&format!("{:?},{:?},{:?}\n", x[0], x[1], values[k]));
    }
    s
}
