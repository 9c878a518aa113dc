//! Gaussian elimination for banded matrices with one extra dense last column.
//!
//! This is the shape of the wave-profile Newton system: the convolution and
//! difference stencils are banded, and the speed unknown couples to every row.

/// Square system whose first `n - 1` columns have bandwidths `(kl, ku)` and whose
/// last column is dense.
#[derive(Debug, Clone)]
pub struct BorderedBand {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    band: Vec<f64>,
    border: Vec<f64>,
}

impl BorderedBand {
    pub fn new(n: usize, kl: usize, ku: usize) -> Self {
        assert!(n >= 2, "system needs at least two unknowns");
        let width = 2 * kl + ku + 1;
        BorderedBand {
            n,
            kl,
            ku,
            width,
            band: vec![0.0; n * width],
            border: vec![0.0; n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.ku + self.kl);
        i * self.width + (j + self.kl - i)
    }

    /// Adds `v` to entry `(i, j)`; `j == n - 1` addresses the dense column.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        if j == self.n - 1 {
            self.border[i] += v;
        } else {
            assert!(
                j + self.kl >= i && j <= i + self.ku,
                "entry ({i}, {j}) outside the band"
            );
            let k = self.idx(i, j);
            self.band[k] += v;
        }
    }

    /// Solves `A x = b` by partial-pivoting elimination; returns `None` on a zero pivot.
    pub fn solve(mut self, mut b: Vec<f64>) -> Option<Vec<f64>> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let last_band_col = n - 2;
        for k in 0..n - 1 {
            let rmax = (k + self.kl).min(n - 1);
            let mut p = k;
            let mut best = self.band[self.idx(k, k)].abs();
            for r in k + 1..=rmax {
                let v = self.band[self.idx(r, k)].abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best == 0.0 {
                return None;
            }
            let jmax = (k + self.ku + self.kl).min(last_band_col);
            if p != k {
                for j in k..=jmax {
                    let a = self.idx(k, j);
                    let c = self.idx(p, j);
                    self.band.swap(a, c);
                }
                self.border.swap(k, p);
                b.swap(k, p);
            }
            let piv = self.band[self.idx(k, k)];
            for r in k + 1..=rmax {
                let ir = self.idx(r, k);
                let l = self.band[ir] / piv;
                if l == 0.0 {
                    continue;
                }
                self.band[ir] = 0.0;
                for j in k + 1..=jmax {
                    let src = self.band[self.idx(k, j)];
                    let dst = self.idx(r, j);
                    self.band[dst] -= l * src;
                }
                self.border[r] -= l * self.border[k];
                b[r] -= l * b[k];
            }
        }
        if self.border[n - 1] == 0.0 {
            return None;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = b[n - 1] / self.border[n - 1];
        for k in (0..n - 1).rev() {
            let jmax = (k + self.ku + self.kl).min(last_band_col);
            let mut s = b[k] - self.border[k] * x[n - 1];
            for j in k + 1..=jmax {
                s -= self.band[self.idx(k, j)] * x[j];
            }
            x[k] = s / self.band[self.idx(k, k)];
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
        let n = b.len();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap())
                .unwrap();
            a.swap(k, p);
            b.swap(k, p);
            for r in k + 1..n {
                let l = a[r][k] / a[k][k];
                for j in k..n {
                    a[r][j] -= l * a[k][j];
                }
                b[r] -= l * b[k];
            }
        }
        let mut x = vec![0.0; n];
        for k in (0..n).rev() {
            let s: f64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
            x[k] = (b[k] - s) / a[k][k];
        }
        x
    }

    #[test]
    fn matches_dense_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(n, kl, ku) in &[(12, 3, 2), (30, 5, 5), (9, 1, 0)] {
            let mut m = BorderedBand::new(n, kl, ku);
            let mut dense = vec![vec![0.0; n]; n];
            for i in 0..n {
                for j in 0..n - 1 {
                    if j + kl >= i && j <= i + ku {
                        let v: f64 = rng.random_range(-1.0..1.0);
                        m.add(i, j, v);
                        dense[i][j] = v;
                    }
                }
                let v: f64 = rng.random_range(-1.0..1.0);
                m.add(i, n - 1, v);
                dense[i][n - 1] = v;
            }
            let b: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let x = m.solve(b.clone()).unwrap();
            let y = dense_solve(dense, b);
            for (u, v) in x.iter().zip(&y) {
                assert!((u - v).abs() < 1e-9 * (1.0 + v.abs()), "{u} vs {v}");
            }
        }
    }
}
