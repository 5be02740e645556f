use rayon::prelude::*;

use crate::grid::{Grid, GridField};
use crate::{Error, Real, Result};

/// Centered cubes of half-width `m` cells (side `(2m + 1)h`).
#[derive(Clone, Debug, PartialEq)]
pub struct MaximalConfig {
    half_widths: Vec<usize>,
}

impl MaximalConfig {
    /// Half-widths must be nonempty and at most `N/4` cells.
    pub fn new<T: Real>(grid: &Grid<T>, mut half_widths: Vec<usize>) -> Result<Self> {
        if half_widths.is_empty() {
            return Err(Error::Config("empty radius list".into()));
        }
        half_widths.sort_unstable();
        half_widths.dedup();
        let top = grid.resolution() / 4;
        if let Some(m) = half_widths.iter().find(|m| **m > top) {
            return Err(Error::Config(format!("half-width {m} cells exceeds L/4 = {top} cells")));
        }
        Ok(Self { half_widths })
    }

    /// Physical radii rounded to whole cells.
    pub fn from_radii<T: Real>(grid: &Grid<T>, radii: &[f64]) -> Result<Self> {
        let h = grid.spacing().as_f64();
        if let Some(r) = radii.iter().find(|r| !(**r > 0.0)) {
            return Err(Error::Config(format!("radius {r} must be positive")));
        }
        Self::new(grid, radii.iter().map(|r| (r / h).round() as usize).collect())
    }

    /// Every half-width from 0 to `N/4`.
    pub fn full<T: Real>(grid: &Grid<T>) -> Self {
        Self { half_widths: (0..=grid.resolution() / 4).collect() }
    }

    /// `0, 1, 2, 4, …` up to `N/4`.
    pub fn dyadic<T: Real>(grid: &Grid<T>) -> Self {
        let mut half_widths = vec![0];
        let mut m = 1;
        while m <= grid.resolution() / 4 {
            half_widths.push(m);
            m *= 2;
        }
        Self { half_widths }
    }

    pub fn half_widths(&self) -> &[usize] {
        &self.half_widths
    }
}

fn cube_values<T: Real>(f: &GridField<T>, node: usize, m: usize) -> Vec<T> {
    let grid = f.grid();
    let [i, j] = grid.unflatten(node);
    let m = m as i64;
    let second = if grid.dim() == 2 { -m..=m } else { 0..=0 };
    let mut out = Vec::new();
    for a in -m..=m {
        for b in second.clone() {
            out.push(f.at_wrapped(i as i64 + a, j as i64 + b));
        }
    }
    out
}

/// Centered maximal function `sup_m avg_{Q_m(x)} |f|` at one node.
pub fn hl_maximal<T: Real>(f: &GridField<T>, node: usize, config: &MaximalConfig) -> T {
    config
        .half_widths
        .iter()
        .map(|m| {
            let v = cube_values(f, node, *m);
            let s: T = v.iter().map(|x| x.abs()).sum();
            s / T::of_usize(v.len())
        })
        .fold(T::zero(), T::max)
}

/// Periodic box sums of width `2m + 1` along rows of length `n`.
fn box_rows(data: &[f64], n: usize, m: usize) -> Vec<f64> {
    let mut out = vec![0.0; data.len()];
    out.par_chunks_mut(n).zip(data.par_chunks(n)).for_each(|(o, row)| {
        // Window for position 0 covers offsets −m..=m.
        let mut s = 0.0;
        for k in 0..=2 * m {
            s += row[(k as i64 - m as i64).rem_euclid(n as i64) as usize];
        }
        o[0] = s;
        for p in 1..n {
            let add = row[(p + m) % n];
            let drop = row[(p as i64 - m as i64 - 1).rem_euclid(n as i64) as usize];
            s += add - drop;
            o[p] = s;
        }
    });
    out
}

fn transpose(data: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; data.len()];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = data[i * n + j];
        }
    }
    out
}

/// Centered maximal function at every node, by separable sliding sums.
pub fn hl_maximal_field<T: Real>(f: &GridField<T>, config: &MaximalConfig) -> GridField<T> {
    let grid = *f.grid();
    let n = grid.resolution();
    let abs: Vec<f64> = f.values().iter().map(|v| v.abs().as_f64()).collect();
    let mut best = vec![0.0f64; abs.len()];
    for &m in &config.half_widths {
        let side = (2 * m + 1) as f64;
        let avg = if grid.dim() == 1 {
            box_rows(&abs, n, m).into_iter().map(|s| s / side).collect::<Vec<_>>()
        } else {
            let rows = box_rows(&abs, n, m);
            let cols = box_rows(&transpose(&rows, n), n, m);
            transpose(&cols, n).into_iter().map(|s| s / (side * side)).collect()
        };
        for (b, a) in best.iter_mut().zip(avg) {
            *b = b.max(a);
        }
    }
    // Sliding sums of nonnegative data can dip below zero by rounding.
    GridField::new(grid, best.into_iter().map(|v| T::lit(v.max(0.0))).collect()).expect("finite averages")
}

/// `M(Mf)` at one node.
pub fn iterated_maximal<T: Real>(f: &GridField<T>, node: usize, config: &MaximalConfig) -> T {
    hl_maximal(&hl_maximal_field(f, config), node, config)
}

pub fn iterated_maximal_field<T: Real>(f: &GridField<T>, config: &MaximalConfig) -> GridField<T> {
    hl_maximal_field(&hl_maximal_field(f, config), config)
}

/// Average of `f` over the nodes within distance `radius` of `node` (periodic).
pub fn ball_average<T: Real>(f: &GridField<T>, node: usize, radius: f64) -> T {
    let grid = f.grid();
    let h = grid.spacing().as_f64();
    let reach = (radius / h).floor() as i64;
    let [i, j] = grid.unflatten(node);
    let second = if grid.dim() == 2 { -reach..=reach } else { 0..=0 };
    let mut sum = 0.0;
    let mut count = 0usize;
    for a in -reach..=reach {
        for b in second.clone() {
            let d = h * ((a * a + b * b) as f64).sqrt();
            if d <= radius {
                sum += f.at_wrapped(i as i64 + a, j as i64 + b).as_f64();
                count += 1;
            }
        }
    }
    T::lit(sum / count as f64)
}

/// `(1/|Q|) Σ φ(|g|/λ)` with `φ(t) = t + t log⁺ t`.
pub fn luxemburg_average<T: Real>(values: &[T], lambda: T) -> T {
    let s: T = values
        .iter()
        .map(|g| {
            let t = g.abs() / lambda;
            if t > T::one() {
                t + t * t.ln()
            } else {
                t
            }
        })
        .sum();
    s / T::of_usize(values.len())
}

/// Luxemburg norm for `t + t log⁺ t`, by bisection on
/// `[avg|g|, avg|g| (1 + log(max|g| / avg|g|))]`. The upper end of the final
/// bracket is returned, so the defining average never exceeds 1.
pub fn llogl_norm<T: Real>(values: &[T]) -> T {
    if values.is_empty() {
        return T::zero();
    }
    let avg: T = values.iter().map(|v| v.abs()).sum::<T>() / T::of_usize(values.len());
    if avg == T::zero() {
        return T::zero();
    }
    let max = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let mut lo = avg;
    let mut hi = avg * (T::one() + (max / avg).ln().max(T::zero()));
    if luxemburg_average(values, lo) <= T::one() {
        return lo;
    }
    for _ in 0..200 {
        if hi - lo <= T::lit(1e-13) * hi {
            break;
        }
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if luxemburg_average(values, mid) > T::one() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// `sup_m ‖f‖_{L log L(Q_m(x))}` over centered cubes.
pub fn llogl_maximal<T: Real>(f: &GridField<T>, node: usize, config: &MaximalConfig) -> T {
    config.half_widths.iter().map(|m| llogl_norm(&cube_values(f, node, *m))).fold(T::zero(), T::max)
}
