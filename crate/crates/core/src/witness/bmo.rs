use crate::grid::GridField;

/// Largest mean oscillation over the dyadic subcubes of the grid, down to side 4 cells.
pub fn bmo_norm(f: &GridField<f64>) -> f64 {
    let grid = f.grid();
    let n = grid.resolution();
    let dim = grid.dim();
    let mut best = 0.0_f64;
    let mut side = n;
    while side >= 4 {
        let per_axis = n / side;
        let cubes = if dim == 1 { per_axis } else { per_axis * per_axis };
        for c in 0..cubes {
            let (ci, cj) = if dim == 1 { (c, 0) } else { (c / per_axis, c % per_axis) };
            let cell = |a: usize, b: usize| {
                if dim == 1 {
                    f.values()[ci * side + a]
                } else {
                    f.at([ci * side + a, cj * side + b])
                }
            };
            let rows = if dim == 1 { 1 } else { side };
            let count = (side * rows) as f64;
            let mut mean = 0.0;
            for a in 0..side {
                for b in 0..rows {
                    mean += cell(a, b);
                }
            }
            mean /= count;
            let mut osc = 0.0;
            for a in 0..side {
                for b in 0..rows {
                    osc += (cell(a, b) - mean).abs();
                }
            }
            best = best.max(osc / count);
        }
        side /= 2;
    }
    best
}
