use nlfront_core::domain::is_convex_polygon;
use nlfront_core::{ExteriorGrid, GridBox, Kernel, ObstacleSpec};
use proptest::prelude::*;

fn brute_convex(v: &[[f64; 2]]) -> bool {
    let n = v.len();
    let mut orient = 0.0;
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        for (k, p) in v.iter().enumerate() {
            if k == i || k == (i + 1) % n {
                continue;
            }
            let s = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
            if s == 0.0 {
                return false;
            }
            if orient == 0.0 {
                orient = s.signum();
            } else if s.signum() != orient {
                return false;
            }
        }
    }
    true
}

fn disc_grid(r: f64, h: f64) -> ExteriorGrid {
    let half = r + 3.0;
    let k = Kernel::new(2, 1.0, 2).unwrap();
    ExteriorGrid::build(
        GridBox::new_2d([-half, -half], [half, half]),
        h,
        ObstacleSpec::Disc { center: [0.0, 0.0], radius: r },
        false,
        &k,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn convexity_agrees_with_brute_force(
        angles in proptest::collection::vec(0.0f64..std::f64::consts::TAU, 3..9),
        radii in proptest::collection::vec(0.3f64..2.0, 9),
        scramble in any::<bool>(),
    ) {
        let mut a = angles.clone();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        a.dedup_by(|x, y| (*x - *y).abs() < 1e-3);
        prop_assume!(a.len() >= 3);
        let mut v: Vec<[f64; 2]> = a.iter().zip(&radii).map(|(t, r)| [r * t.cos(), r * t.sin()]).collect();
        if scramble {
            v.swap(0, 1);
        }
        prop_assert_eq!(is_convex_polygon(&v), brute_convex(&v));
    }
}

#[test]
fn regular_polygons_are_convex() {
    for n in 3..10 {
        let v: Vec<[f64; 2]> = (0..n)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / n as f64;
                [t.cos(), t.sin()]
            })
            .collect();
        assert!(is_convex_polygon(&v) && brute_convex(&v));
    }
}

#[test]
fn degree_is_radial_for_a_centered_disc() {
    let g = disc_grid(1.0, 0.1);
    let (nx, ny) = g.shape();
    let d = g.degree();
    for i in 0..nx {
        for j in 0..ny {
            let k = g.index(i, j);
            if !g.is_exterior(k) {
                continue;
            }
            for m in [g.index(nx - 1 - i, j), g.index(i, ny - 1 - j), g.index(j, i)] {
                assert!((d[k] - d[m]).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn degree_near_the_disc_matches_quadrature() {
    // the staircase boundary costs O(h), so the comparison runs at h = L/40
    let g = disc_grid(1.0, 0.025);
    let k = Kernel::new(2, 1.0, 2).unwrap();
    let n = 800;
    let cells: Vec<usize> = g.boundary_cells().into_iter().step_by(37).collect();
    assert!(!cells.is_empty());
    for c in cells {
        let x = g.center(c);
        let s = 2.0 / n as f64;
        let mut missing = 0.0;
        for a in 0..n {
            for b in 0..n {
                let y = [x[0] - 1.0 + (a as f64 + 0.5) * s, x[1] - 1.0 + (b as f64 + 0.5) * s];
                if y[0] * y[0] + y[1] * y[1] <= 1.0 {
                    missing += k.eval(&[x[0] - y[0], x[1] - y[1]]) * s * s;
                }
            }
        }
        let d = g.degree()[c];
        assert!(d < 1.0);
        assert!((d - (1.0 - missing)).abs() < 1e-3, "{d} vs {}", 1.0 - missing);
    }
}

#[test]
fn degree_is_one_away_from_the_obstacle() {
    let g = disc_grid(1.0, 0.1);
    for k in g.exterior_cells() {
        let x = g.center(k);
        if (x[0] * x[0] + x[1] * x[1]).sqrt() > 2.0 + 0.15 {
            assert!((g.degree()[k] - 1.0).abs() < 1e-8);
        }
    }
}

#[test]
fn min_degree_trends() {
    let d: Vec<f64> = [1.0, 2.0, 4.0].iter().map(|&r| disc_grid(r, 0.1).min_degree()).collect();
    assert!(d[0] >= d[1] && d[1] >= d[2], "{d:?}");
    let big = disc_grid(10.0, 0.125).min_degree();
    assert!(big > 0.45 && big < 1.0, "{big}");
}
