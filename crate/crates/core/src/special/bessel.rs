use crate::special::quad::gauss_legendre;
use crate::{Error, Real, Result};

/// Largest order accepted by [`bessel_g`].
pub const G_MAX_ORDER: u32 = 8;
/// Largest radius accepted by [`bessel_g`].
pub const G_MAX_RADIUS: f64 = 100.0;

// Below this radius G_m is summed from its power series; the terms decay
// monotonically from the first one, so there is no cancellation to speak of.
const SERIES_RADIUS: f64 = 2.0;

/// `J_0(x), …, J_nmax(x)` for `x ≥ 0` by Miller's backward recurrence,
/// normalized with `J_0 + 2 Σ J_2k = 1`.
pub fn bessel_j_all<T: Real>(nmax: usize, x: T) -> Vec<T> {
    let mut out = vec![T::zero(); nmax + 1];
    if x == T::zero() {
        out[0] = T::one();
        return out;
    }
    let x = x.abs();
    let reach = (nmax as f64).max(x.as_f64());
    let mut start = (reach + 30.0 + 8.0 * reach.cbrt()).ceil() as usize;
    start += start % 2;

    let two = T::lit(2.0);
    let big = T::lit(1e150);
    let mut next = T::zero(); // J_{k+1}
    let mut cur = T::lit(1e-300_f64.max(T::min_positive_value().as_f64() * 1e10)); // J_k
    let mut norm = T::zero();
    for k in (1..=start).rev() {
        if k <= nmax {
            out[k] = cur;
        }
        if k % 2 == 0 {
            norm = norm + two * cur;
        }
        let prev = two * T::of_usize(k) / x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > big {
            let s = T::one() / big;
            cur = cur * s;
            next = next * s;
            norm = norm * s;
            for v in out.iter_mut() {
                *v = *v * s;
            }
        }
    }
    out[0] = cur;
    norm = norm + cur;
    for v in out.iter_mut() {
        *v = *v / norm;
    }
    out
}

/// `J_n(x)` for `x ≥ 0`.
pub fn bessel_j<T: Real>(n: usize, x: T) -> T {
    bessel_j_all(n, x)[n]
}

/// `G_m(r) = J_m(r) / r^m`, with the removable singularity at `r = 0`
/// filled by `1 / (2^m m!)`.
pub fn bessel_g<T: Real>(m: u32, r: T) -> Result<T> {
    if m > G_MAX_ORDER {
        return Err(Error::OutOfRange(format!("G_m order {m} > {G_MAX_ORDER}")));
    }
    if !(r >= T::zero()) || r > T::lit(G_MAX_RADIUS) {
        return Err(Error::OutOfRange(format!("G_m radius {r} outside [0, {G_MAX_RADIUS}]")));
    }
    if r <= T::lit(SERIES_RADIUS) {
        return Ok(g_series(m, r));
    }
    let j = bessel_j(m as usize, r);
    Ok(j / r.powi(m as i32))
}

fn g_series<T: Real>(m: u32, r: T) -> T {
    // term_k = (-1)^k (r/2)^{2k} / (2^m k! (m+k)!)
    let mut lead = T::one();
    for i in 1..=m {
        lead = lead / (T::lit(2.0) * T::lit(f64::from(i)));
    }
    let q = (r / T::lit(2.0)) * (r / T::lit(2.0));
    let mut term = lead;
    let mut sum = lead;
    for k in 1..200u32 {
        term = -term * q / (T::lit(f64::from(k)) * T::lit(f64::from(m + k)));
        sum = sum + term;
        if term.abs() <= T::epsilon() * sum.abs() * T::lit(1e-3) {
            break;
        }
    }
    sum
}

/// `∫_0^x J_n(t) dt` for `x ≥ 0`.
///
/// `n = 0` is integrated with composite Gauss–Legendre; higher orders use
/// `∫J_{n+1} = ∫J_{n-1} − 2 J_n(x)` and `∫J_1 = 1 − J_0(x)`.
pub fn bessel_j_integral<T: Real>(n: usize, x: T) -> T {
    if x == T::zero() {
        return T::zero();
    }
    let js = bessel_j_all(n.max(1), x);
    let mut lower = integral_j0(x); // ∫J_0
    let mut upper = T::one() - js[0]; // ∫J_1
    if n == 0 {
        return lower;
    }
    for k in 1..n {
        let nxt = lower - T::lit(2.0) * js[k];
        lower = upper;
        upper = nxt;
    }
    upper
}

fn integral_j0<T: Real>(x: T) -> T {
    let (nodes, weights) = gauss_legendre(20);
    let panels = (x.as_f64() / 2.0).ceil().max(1.0) as usize;
    let width = x / T::of_usize(panels);
    let half = width / T::lit(2.0);
    let mut sum = T::zero();
    for p in 0..panels {
        let mid = width * T::of_usize(p) + half;
        for (t, w) in nodes.iter().zip(weights.iter()) {
            let s = mid + half * T::lit(*t);
            sum = sum + T::lit(*w) * half * bessel_j(0, s);
        }
    }
    sum
}
