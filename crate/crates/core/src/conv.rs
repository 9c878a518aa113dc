//! Linear convolution of a ghost-padded array with a symmetric lattice stencil.
//!
//! The padded array has `R` ghost cells on each side of every axis; the output lives
//! on the unpadded interior. Transforms are sized `>=` the padded extent, so the
//! circular product never wraps into the interior outputs.

use std::sync::Arc;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Smallest `2^a 3^b 5^c` not below `n`.
pub fn fft_size(n: usize) -> usize {
    let mut m = n.max(1);
    loop {
        let mut k = m;
        for p in [2, 3, 5] {
            while k.is_multiple_of(p) {
                k /= p;
            }
        }
        if k == 1 {
            return m;
        }
        m += 1;
    }
}

#[derive(Clone)]
pub struct Convolver {
    /// Interior cells per axis (`ny == 1` in one dimension).
    nx: usize,
    ny: usize,
    r: usize,
    dim: usize,
    px: usize,
    py: usize,
    spectrum: Vec<Complex64>,
    stencil: Vec<f64>,
    fx: Arc<dyn Fft<f64>>,
    fy: Arc<dyn Fft<f64>>,
    ix: Arc<dyn Fft<f64>>,
    iy: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Convolver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Convolver")
            .field("nx", &self.nx)
            .field("ny", &self.ny)
            .field("r", &self.r)
            .field("px", &self.px)
            .field("py", &self.py)
            .finish()
    }
}

impl Convolver {
    /// `stencil` holds `(2R+1)^dim` weights, row-major over the offsets `-R..=R`.
    pub fn new(dim: usize, nx: usize, ny: usize, r: usize, stencil: Vec<f64>) -> Self {
        let w = 2 * r + 1;
        assert_eq!(stencil.len(), if dim == 1 { w } else { w * w });
        let px = fft_size(nx + 2 * r);
        let py = if dim == 1 { 1 } else { fft_size(ny + 2 * r) };
        let mut planner = FftPlanner::new();
        let fx = planner.plan_fft_forward(px);
        let fy = planner.plan_fft_forward(py);
        let ix = planner.plan_fft_inverse(px);
        let iy = planner.plan_fft_inverse(py);
        let mut c = Convolver {
            nx,
            ny: if dim == 1 { 1 } else { ny },
            r,
            dim,
            px,
            py,
            spectrum: Vec::new(),
            stencil,
            fx,
            fy,
            ix,
            iy,
        };
        let mut k = vec![Complex64::new(0.0, 0.0); px * py];
        let ri = r as isize;
        if dim == 1 {
            for a in 0..w {
                let m = (a as isize - ri).rem_euclid(px as isize) as usize;
                k[m * py] = Complex64::new(c.stencil[a], 0.0);
            }
        } else {
            for a in 0..w {
                for b in 0..w {
                    let mx = (a as isize - ri).rem_euclid(px as isize) as usize;
                    let my = (b as isize - ri).rem_euclid(py as isize) as usize;
                    k[mx * py + my] = Complex64::new(c.stencil[a * w + b], 0.0);
                }
            }
        }
        c.forward(&mut k);
        let scale = 1.0 / (px * py) as f64;
        k.iter_mut().for_each(|v| *v *= scale);
        c.spectrum = k;
        c
    }

    pub fn radius(&self) -> usize {
        self.r
    }

    pub fn stencil(&self) -> &[f64] {
        &self.stencil
    }

    /// Padded extents `(nx + 2R, ny + 2R)` (second is 1 in one dimension).
    pub fn padded_shape(&self) -> (usize, usize) {
        if self.dim == 1 {
            (self.nx + 2 * self.r, 1)
        } else {
            (self.nx + 2 * self.r, self.ny + 2 * self.r)
        }
    }

    pub fn transform_shape(&self) -> (usize, usize) {
        (self.px, self.py)
    }

    fn forward(&self, data: &mut [Complex64]) {
        self.transform(data, &self.fx, &self.fy);
    }

    fn inverse(&self, data: &mut [Complex64]) {
        self.transform(data, &self.ix, &self.iy);
    }

    fn transform(&self, data: &mut [Complex64], fx: &Arc<dyn Fft<f64>>, fy: &Arc<dyn Fft<f64>>) {
        let (px, py) = (self.px, self.py);
        if py > 1 {
            data.par_chunks_mut(py).for_each(|row| fy.process(row));
        }
        if py == 1 {
            fx.process(data);
            return;
        }
        // columns: transpose, transform rows, transpose back
        let mut t = vec![Complex64::new(0.0, 0.0); px * py];
        t.par_chunks_mut(px).enumerate().for_each(|(j, col)| {
            for i in 0..px {
                col[i] = data[i * py + j];
            }
            fx.process(col);
        });
        data.par_chunks_mut(py).enumerate().for_each(|(i, row)| {
            for j in 0..py {
                row[j] = t[j * px + i];
            }
        });
    }

    /// Convolves the padded array `ext` (row-major, padded shape) and returns the
    /// `nx * ny` interior outputs.
    pub fn apply(&self, ext: &[f64]) -> Vec<f64> {
        let (ex, ey) = self.padded_shape();
        assert_eq!(ext.len(), ex * ey, "padded array has the wrong length");
        let (px, py) = (self.px, self.py);
        let mut data = vec![Complex64::new(0.0, 0.0); px * py];
        data.par_chunks_mut(py)
            .take(ex)
            .enumerate()
            .for_each(|(i, row)| {
                for j in 0..ey {
                    row[j] = Complex64::new(ext[i * ey + j], 0.0);
                }
            });
        self.forward(&mut data);
        data.par_iter_mut()
            .zip(self.spectrum.par_iter())
            .for_each(|(d, k)| *d *= k);
        self.inverse(&mut data);
        let (r, ny) = (self.r, self.ny);
        let shift_y = if self.dim == 1 { 0 } else { r };
        let mut out = vec![0.0; self.nx * ny];
        out.par_chunks_mut(ny).enumerate().for_each(|(i, row)| {
            for j in 0..ny {
                row[j] = data[(i + r) * py + j + shift_y].re;
            }
        });
        out
    }

    /// Direct summation of the same convolution; the oracle for [`Convolver::apply`].
    pub fn apply_direct(&self, ext: &[f64]) -> Vec<f64> {
        let (_, ey) = self.padded_shape();
        let w = 2 * self.r + 1;
        let mut out = vec![0.0; self.nx * self.ny];
        for i in 0..self.nx {
            for j in 0..self.ny {
                let mut s = 0.0;
                if self.dim == 1 {
                    for a in 0..w {
                        s += self.stencil[a] * ext[i + 2 * self.r - a];
                    }
                } else {
                    for a in 0..w {
                        for b in 0..w {
                            s += self.stencil[a * w + b]
                                * ext[(i + 2 * self.r - a) * ey + j + 2 * self.r - b];
                        }
                    }
                }
                out[i * self.ny + j] = s;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sizes_are_smooth() {
        assert_eq!(fft_size(7), 8);
        assert_eq!(fft_size(121), 125);
        assert_eq!(fft_size(97), 100);
    }

    #[test]
    fn fft_matches_direct_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for &(dim, nx, ny, r) in &[(1, 37, 1, 4), (2, 13, 9, 3), (2, 16, 16, 5)] {
            let w = 2 * r + 1;
            let len = if dim == 1 { w } else { w * w };
            let stencil: Vec<f64> = (0..len).map(|_| rng.random_range(0.0..1.0)).collect();
            let c = Convolver::new(dim, nx, ny, r, stencil);
            let (ex, ey) = c.padded_shape();
            let ext: Vec<f64> = (0..ex * ey).map(|_| rng.random_range(-1.0..1.0)).collect();
            let a = c.apply(&ext);
            let b = c.apply_direct(&ext);
            for (u, v) in a.iter().zip(&b) {
                assert!((u - v).abs() < 1e-12, "{u} vs {v}");
            }
        }
    }
}
