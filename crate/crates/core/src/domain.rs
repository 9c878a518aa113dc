//! Exterior domains `R^N \ K` on uniform cell-centered grids.

use crate::conv::Convolver;
use crate::error::{invalid, Error, Result};
use crate::kernels::Kernel;

/// Convex obstacle shapes. In one dimension only `Empty` and `Disc` (an interval) apply.
#[derive(Debug, Clone, PartialEq)]
pub enum ObstacleSpec {
    Empty,
    Disc { center: [f64; 2], radius: f64 },
    Ellipse { center: [f64; 2], semi_axes: [f64; 2] },
    Polygon { vertices: Vec<[f64; 2]> },
}

/// Strict convexity test for a simple polygon given in either orientation.
///
/// All turns must share one sign and the total turning must be one full revolution,
/// which rejects self-intersecting stars whose turns happen to agree in sign.
pub fn is_convex_polygon(v: &[[f64; 2]]) -> bool {
    let n = v.len();
    if n < 3 {
        return false;
    }
    let mut sign = 0.0;
    let mut turning = 0.0;
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        let c = v[(i + 2) % n];
        let e1 = [b[0] - a[0], b[1] - a[1]];
        let e2 = [c[0] - b[0], c[1] - b[1]];
        let cross = e1[0] * e2[1] - e1[1] * e2[0];
        if cross == 0.0 || !cross.is_finite() {
            return false;
        }
        if sign == 0.0 {
            sign = cross.signum();
        } else if cross.signum() != sign {
            return false;
        }
        let dot = e1[0] * e2[0] + e1[1] * e2[1];
        turning += cross.atan2(dot);
    }
    (turning.abs() - 2.0 * std::f64::consts::PI).abs() < 1e-6
}

impl ObstacleSpec {
    pub fn is_empty(&self) -> bool {
        matches!(self, ObstacleSpec::Empty)
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        match self {
            ObstacleSpec::Empty => false,
            ObstacleSpec::Disc { center, radius } => {
                let dx = p[0] - center[0];
                let dy = p[1] - center[1];
                dx * dx + dy * dy <= radius * radius
            }
            ObstacleSpec::Ellipse { center, semi_axes } => {
                let dx = (p[0] - center[0]) / semi_axes[0];
                let dy = (p[1] - center[1]) / semi_axes[1];
                dx * dx + dy * dy <= 1.0
            }
            ObstacleSpec::Polygon { vertices } => {
                let n = vertices.len();
                let mut sign = 0.0;
                for i in 0..n {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    let cr = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
                    if cr == 0.0 {
                        continue;
                    }
                    if sign == 0.0 {
                        sign = cr.signum();
                    } else if cr.signum() != sign {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// Axis-aligned bounding box `[xmin, xmax, ymin, ymax]`, `None` when empty.
    pub fn bounding_box(&self) -> Option<[f64; 4]> {
        match self {
            ObstacleSpec::Empty => None,
            ObstacleSpec::Disc { center, radius } => Some([
                center[0] - radius,
                center[0] + radius,
                center[1] - radius,
                center[1] + radius,
            ]),
            ObstacleSpec::Ellipse { center, semi_axes } => Some([
                center[0] - semi_axes[0],
                center[0] + semi_axes[0],
                center[1] - semi_axes[1],
                center[1] + semi_axes[1],
            ]),
            ObstacleSpec::Polygon { vertices } => {
                let mut b = [f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY];
                for v in vertices {
                    b[0] = b[0].min(v[0]);
                    b[1] = b[1].max(v[0]);
                    b[2] = b[2].min(v[1]);
                    b[3] = b[3].max(v[1]);
                }
                Some(b)
            }
        }
    }

    /// Shape checks: positive sizes, convexity, and the optional `K in {x1 <= 0}` placement.
    pub fn validate(&self, require_left_halfplane: bool) -> Result<()> {
        match self {
            ObstacleSpec::Empty => return Ok(()),
            ObstacleSpec::Disc { radius, .. } => {
                if !(*radius > 0.0) {
                    return Err(invalid("obstacle.radius", format!("{radius} must be positive")));
                }
            }
            ObstacleSpec::Ellipse { semi_axes, .. } => {
                if !(semi_axes[0] > 0.0 && semi_axes[1] > 0.0) {
                    return Err(invalid("obstacle.semi_axes", "semi-axes must be positive"));
                }
            }
            ObstacleSpec::Polygon { vertices } => {
                if !is_convex_polygon(vertices) {
                    return Err(Error::NotConvex);
                }
            }
        }
        if require_left_halfplane {
            let b = self.bounding_box().expect("non-empty obstacle");
            if b[1] > 0.0 {
                return Err(Error::PlacementViolation);
            }
        }
        Ok(())
    }
}

/// Axis-aligned computational box; the second axis is ignored in one dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridBox {
    pub lower: [f64; 2],
    pub upper: [f64; 2],
}

impl GridBox {
    pub fn new_1d(lo: f64, hi: f64) -> Self {
        GridBox {
            lower: [lo, 0.0],
            upper: [hi, 0.0],
        }
    }

    pub fn new_2d(lower: [f64; 2], upper: [f64; 2]) -> Self {
        GridBox { lower, upper }
    }
}

/// Cell selection for [`ExteriorGrid::sample_padded_region`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    All,
    Exterior,
    Obstacle,
}

/// Uniform cell-centered grid of a box with a rasterized obstacle and the kernel degree.
#[derive(Debug, Clone)]
pub struct ExteriorGrid {
    dim: usize,
    h: f64,
    bbox: GridBox,
    nx: usize,
    ny: usize,
    obstacle: ObstacleSpec,
    in_obstacle: Vec<bool>,
    degree: Vec<f64>,
    conv: Convolver,
    kernel: Kernel,
}

fn cells(lo: f64, hi: f64, h: f64, axis: &'static str) -> Result<usize> {
    let n = ((hi - lo) / h).round();
    if !(n >= 1.0) {
        return Err(invalid(axis, "box must be non-empty"));
    }
    if ((n * h) - (hi - lo)).abs() > 1e-9 * (hi - lo).abs().max(1.0) {
        return Err(invalid(axis, format!("box length {} is not a multiple of h = {h}", hi - lo)));
    }
    Ok(n as usize)
}

impl ExteriorGrid {
    pub fn build(
        bbox: GridBox,
        h: f64,
        obstacle: ObstacleSpec,
        require_left_halfplane: bool,
        kernel: &Kernel,
    ) -> Result<Self> {
        let dim = kernel.dim();
        let l = kernel.radius();
        if !(h > 0.0 && h <= l / 8.0 + 1e-12) {
            return Err(Error::Precondition(format!(
                "domain.h = {h} must lie in (0, L/8 = {}] so the kernel spans at least 16 cells",
                l / 8.0
            )));
        }
        if dim == 1 && !matches!(obstacle, ObstacleSpec::Empty | ObstacleSpec::Disc { .. }) {
            return Err(invalid("obstacle.kind", "only empty or disc (interval) in one dimension"));
        }
        obstacle.validate(require_left_halfplane)?;
        let nx = cells(bbox.lower[0], bbox.upper[0], h, "domain.box")?;
        let ny = if dim == 1 {
            1
        } else {
            cells(bbox.lower[1], bbox.upper[1], h, "domain.box")?
        };
        if let Some(b) = obstacle.bounding_box() {
            let margin = [
                b[0] - bbox.lower[0],
                bbox.upper[0] - b[1],
                b[2] - bbox.lower[1],
                bbox.upper[1] - b[3],
            ];
            let m = if dim == 1 {
                margin[0].min(margin[1])
            } else {
                margin.iter().cloned().fold(f64::INFINITY, f64::min)
            };
            if m < l {
                return Err(Error::TouchesBoundary { margin: m });
            }
        }

        let (r, stencil) = if dim == 1 {
            kernel.as_1d()?.weights(h)
        } else {
            kernel.stencil_2d(h)
        };
        let conv = Convolver::new(dim, nx, ny, r, stencil);
        let mut g = ExteriorGrid {
            dim,
            h,
            bbox,
            nx,
            ny,
            obstacle,
            in_obstacle: Vec::new(),
            degree: Vec::new(),
            conv,
            kernel: kernel.clone(),
        };
        g.in_obstacle = (0..nx * ny)
            .map(|k| g.obstacle.contains(g.center(k)))
            .collect();
        let ones = vec![1.0; nx * ny];
        let ext = g.pad(&ones, |_| 1.0);
        g.degree = g.conv.apply(&ext);
        for k in 0..nx * ny {
            if g.in_obstacle[k] {
                g.degree[k] = f64::NAN;
            }
        }
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn bbox(&self) -> GridBox {
        self.bbox
    }

    /// `(nx, ny)`; `ny == 1` in one dimension.
    pub fn shape(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn obstacle(&self) -> &ObstacleSpec {
        &self.obstacle
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    pub fn convolver(&self) -> &Convolver {
        &self.conv
    }

    /// Ghost-cell width `R = floor(L / h)`.
    pub fn ghost_width(&self) -> usize {
        self.conv.radius()
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.ny + j
    }

    /// Center of cell `k`.
    #[inline]
    pub fn center(&self, k: usize) -> [f64; 2] {
        let (i, j) = (k / self.ny, k % self.ny);
        self.center_ij(i as isize, j as isize)
    }

    /// Center of the (possibly ghost) cell with signed indices.
    #[inline]
    pub fn center_ij(&self, i: isize, j: isize) -> [f64; 2] {
        let x = self.bbox.lower[0] + (i as f64 + 0.5) * self.h;
        let y = if self.dim == 1 {
            0.0
        } else {
            self.bbox.lower[1] + (j as f64 + 0.5) * self.h
        };
        [x, y]
    }

    #[inline]
    pub fn is_exterior(&self, k: usize) -> bool {
        !self.in_obstacle[k]
    }

    pub fn obstacle_mask(&self) -> &[bool] {
        &self.in_obstacle
    }

    /// Kernel degree `d(x)`; NaN on obstacle cells.
    pub fn degree(&self) -> &[f64] {
        &self.degree
    }

    pub fn exterior_cells(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&k| !self.in_obstacle[k])
    }

    pub fn min_degree(&self) -> f64 {
        self.exterior_cells()
            .map(|k| self.degree[k])
            .fold(f64::INFINITY, f64::min)
    }

    /// Distance in cells from `k` to the nearest box face.
    pub fn cells_to_boundary(&self, k: usize) -> usize {
        let (i, j) = (k / self.ny, k % self.ny);
        let dx = i.min(self.nx - 1 - i);
        if self.dim == 1 {
            dx
        } else {
            dx.min(j.min(self.ny - 1 - j))
        }
    }

    /// Exterior cells at least `margin` (length) inside the box.
    pub fn interior_probe(&self, margin: f64) -> Vec<usize> {
        let m = (margin / self.h).ceil() as usize;
        self.exterior_cells()
            .filter(|&k| self.cells_to_boundary(k) >= m)
            .collect()
    }

    /// Exterior cells with an obstacle cell within one cell (8-neighbourhood).
    pub fn boundary_cells(&self) -> Vec<usize> {
        if self.obstacle.is_empty() {
            return Vec::new();
        }
        self.exterior_cells()
            .filter(|&k| {
                let (i, j) = ((k / self.ny) as isize, (k % self.ny) as isize);
                let jr: &[isize] = if self.dim == 1 { &[0] } else { &[-1, 0, 1] };
                [-1isize, 0, 1].iter().any(|di| {
                    jr.iter().any(|dj| {
                        let (a, b) = (i + di, j + dj);
                        a >= 0
                            && b >= 0
                            && (a as usize) < self.nx
                            && (b as usize) < self.ny
                            && self.in_obstacle[self.index(a as usize, b as usize)]
                    })
                })
            })
            .collect()
    }

    /// Builds the ghost-padded array: interior values (obstacle cells set to 0) and
    /// `ghost(x)` on the padding.
    pub fn pad<G: Fn([f64; 2]) -> f64>(&self, u: &[f64], ghost: G) -> Vec<f64> {
        assert_eq!(u.len(), self.len());
        let r = self.ghost_width() as isize;
        let (ex, ey) = self.conv.padded_shape();
        let mut ext = vec![0.0; ex * ey];
        let (nx, ny) = (self.nx as isize, self.ny as isize);
        for a in 0..ex {
            let i = a as isize - r;
            for b in 0..ey {
                let j = if self.dim == 1 { 0 } else { b as isize - r };
                let inside = i >= 0 && i < nx && j >= 0 && j < ny;
                ext[a * ey + b] = if inside {
                    let k = self.index(i as usize, j as usize);
                    if self.in_obstacle[k] {
                        0.0
                    } else {
                        u[k]
                    }
                } else {
                    ghost(self.center_ij(i, j))
                };
            }
        }
        ext
    }

    /// Samples `w` on every exterior and ghost cell (obstacle cells 0).
    pub fn sample_padded<G: Fn([f64; 2]) -> f64>(&self, w: G) -> Vec<f64> {
        let interior: Vec<f64> = (0..self.len())
            .map(|k| if self.in_obstacle[k] { 0.0 } else { w(self.center(k)) })
            .collect();
        self.pad(&interior, w)
    }

    /// Samples `w` on the cells selected by `region` (others 0); ghosts count as exterior.
    pub fn sample_padded_region<G: Fn([f64; 2]) -> f64>(&self, w: G, region: Region) -> Vec<f64> {
        let r = self.ghost_width() as isize;
        let (ex, ey) = self.conv.padded_shape();
        let mut ext = vec![0.0; ex * ey];
        let (nx, ny) = (self.nx as isize, self.ny as isize);
        for a in 0..ex {
            let i = a as isize - r;
            for b in 0..ey {
                let j = if self.dim == 1 { 0 } else { b as isize - r };
                let inside = i >= 0 && i < nx && j >= 0 && j < ny;
                let in_k = inside && self.in_obstacle[self.index(i as usize, j as usize)];
                let keep = match region {
                    Region::All => true,
                    Region::Exterior => !in_k,
                    Region::Obstacle => in_k,
                };
                if keep {
                    ext[a * ey + b] = w(self.center_ij(i, j));
                }
            }
        }
        ext
    }

    /// `sum_y J_h(x - y) v(y)` over exterior and ghost cells, at every grid cell.
    pub fn convolve_padded(&self, ext: &[f64]) -> Vec<f64> {
        self.conv.apply(ext)
    }
}
