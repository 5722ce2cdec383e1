//! Optimization of smooth functions over unit 3-vectors.
//!
//! A Fibonacci lattice gives near-uniform coverage of the sphere; the best
//! lattice point then seeds a Nelder–Mead search in spherical coordinates.
//! The coordinate frame is rotated so the seed sits on the equator, keeping
//! the simplex away from the coordinate poles.

use nalgebra::Vector3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy)]
pub struct SphereSearch {
    pub grid_points: usize,
    pub refine_iters: usize,
    /// Nelder–Mead stops once the simplex's objective spread drops below this.
    pub f_tol: f64,
}

impl Default for SphereSearch {
    fn default() -> Self {
        Self { grid_points: 1000, refine_iters: 200, f_tol: 1e-10 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SphereOptimum {
    pub axis: Vector3<f64>,
    pub value: f64,
    pub evaluations: usize,
}

/// `count` points spread over the unit sphere along a golden-angle spiral.
pub fn fibonacci_sphere(count: usize) -> Vec<Vector3<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / count as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let theta = golden * i as f64;
            Vector3::new(r * theta.cos(), r * theta.sin(), z)
        })
        .collect()
}

/// Orthonormal frame `(e1, e2)` completing `n` to a right-handed basis.
fn tangent_frame(n: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let helper = if n.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
    let e1 = n.cross(&helper).normalize();
    let e2 = n.cross(&e1);
    (e1, e2)
}

pub fn optimize<F>(f: F, goal: Goal, search: &SphereSearch) -> SphereOptimum
where
    F: Fn(&Vector3<f64>) -> f64,
{
    let sign = match goal {
        Goal::Minimize => 1.0,
        Goal::Maximize => -1.0,
    };
    let cost = |n: &Vector3<f64>| sign * f(n);

    let grid = fibonacci_sphere(search.grid_points.max(1));
    let mut best = grid[0];
    let mut best_cost = f64::INFINITY;
    for n in &grid {
        let c = cost(n);
        if c < best_cost {
            best_cost = c;
            best = *n;
        }
    }
    let mut evaluations = grid.len();

    if search.refine_iters > 0 {
        // n(θ, φ) = sinθ cosφ · seed + sinθ sinφ · e2 + cosθ · e1; seed at (π/2, 0)
        let seed = best;
        let (e1, e2) = tangent_frame(&seed);
        let to_axis = |p: &[f64; 2]| {
            let (st, ct) = p[0].sin_cos();
            let (sp, cp) = p[1].sin_cos();
            (seed * (st * cp) + e2 * (st * sp) + e1 * ct).normalize()
        };
        let step = (4.0 * std::f64::consts::PI / grid.len() as f64).sqrt().min(0.5);
        let result = nelder_mead(
            |p| cost(&to_axis(p)),
            [std::f64::consts::FRAC_PI_2, 0.0],
            step,
            search.refine_iters,
            search.f_tol,
        );
        evaluations += result.evaluations;
        if result.cost < best_cost {
            best_cost = result.cost;
            best = to_axis(&result.point);
        }
    }

    SphereOptimum { axis: best, value: sign * best_cost, evaluations }
}

struct SimplexResult {
    point: [f64; 2],
    cost: f64,
    evaluations: usize,
}

fn nelder_mead<F>(f: F, start: [f64; 2], step: f64, max_iters: usize, f_tol: f64) -> SimplexResult
where
    F: Fn(&[f64; 2]) -> f64,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let lerp = |from: &[f64; 2], to: &[f64; 2], t: f64| -> [f64; 2] {
        [from[0] + t * (to[0] - from[0]), from[1] + t * (to[1] - from[1])]
    };

    let mut simplex = [start, [start[0] + step, start[1]], [start[0], start[1] + step]];
    let mut costs = simplex.map(|p| f(&p));
    let mut evaluations = 3;

    for _ in 0..max_iters {
        let mut order = [0usize, 1, 2];
        order.sort_by(|&a, &b| costs[a].total_cmp(&costs[b]));
        simplex = order.map(|k| simplex[k]);
        costs = order.map(|k| costs[k]);

        if (costs[2] - costs[0]).abs() <= f_tol {
            break;
        }

        let centroid = lerp(&simplex[0], &simplex[1], 0.5);
        let reflected = lerp(&centroid, &simplex[2], -REFLECT);
        let fr = f(&reflected);
        evaluations += 1;

        if fr < costs[0] {
            let expanded = lerp(&centroid, &simplex[2], -EXPAND);
            let fe = f(&expanded);
            evaluations += 1;
            if fe < fr {
                simplex[2] = expanded;
                costs[2] = fe;
            } else {
                simplex[2] = reflected;
                costs[2] = fr;
            }
        } else if fr < costs[1] {
            simplex[2] = reflected;
            costs[2] = fr;
        } else {
            let (target, ft) = if fr < costs[2] { (reflected, fr) } else { (simplex[2], costs[2]) };
            let contracted = lerp(&centroid, &target, CONTRACT);
            let fc = f(&contracted);
            evaluations += 1;
            if fc < ft {
                simplex[2] = contracted;
                costs[2] = fc;
            } else {
                for k in 1..3 {
                    simplex[k] = lerp(&simplex[0], &simplex[k], SHRINK);
                    costs[k] = f(&simplex[k]);
                }
                evaluations += 2;
            }
        }
    }

    let best = (0..3).min_by(|&a, &b| costs[a].total_cmp(&costs[b])).unwrap();
    SimplexResult { point: simplex[best], cost: costs[best], evaluations }
}
