use num_complex::Complex;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Unnormalized in-place FFT of an `n`-point-per-axis array of dimension 1 or 2.
///
/// Rows are transformed in parallel; every row sees the same plan and the
/// same operation order, so results do not depend on scheduling.
pub fn fft_in_place<T: Real>(data: &mut [Complex<T>], dim: usize, n: usize, dir: Direction) {
    let mut planner = FftPlanner::<T>::new();
    let plan = match dir {
        Direction::Forward => planner.plan_fft_forward(n),
        Direction::Inverse => planner.plan_fft_inverse(n),
    };
    let scratch_len = plan.get_inplace_scratch_len();
    let rows = |buf: &mut [Complex<T>]| {
        buf.par_chunks_mut(n).for_each_init(
            || vec![Complex::new(T::zero(), T::zero()); scratch_len],
            |scratch, row| plan.process_with_scratch(row, scratch),
        );
    };
    match dim {
        1 => plan.process(data),
        2 => {
            rows(data);
            let mut t = transpose(data, n);
            rows(&mut t);
            let back = transpose(&t, n);
            data.copy_from_slice(&back);
        }
        _ => unreachable!("grid dimension is validated at construction"),
    }
}

fn transpose<T: Copy + Send + Sync>(data: &[T], n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            out.push(data[i * n + j]);
        }
    }
    out
}
