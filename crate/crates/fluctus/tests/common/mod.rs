//! Independent numeric oracle for the quantile acceptance checks:
//! composite Simpson quadrature of the bare densities, inverted by
//! bisection. Deliberately shares no code with the library's
//! erfc/incomplete-beta evaluations; the t normalization uses the exact
//! gamma-ratio recursion for integer degrees of freedom.

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 0 { n + 1 } else { n };
    let h = (b - a) / (n - 1) as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..n - 1 {
        let y = f(a + i as f64 * h);
        if i % 2 == 1 {
            odd += y;
        } else {
            even += y;
        }
    }
    h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even)
}

fn normal_density(x: f64) -> f64 {
    (-0.5 * x * x).exp() / SQRT_2PI
}

pub fn simpson_normal_cdf(z: f64) -> f64 {
    if z == 0.0 {
        return 0.5;
    }
    let s = simpson(normal_density, 0.0, z.abs(), 20001);
    if z > 0.0 {
        0.5 + s
    } else {
        0.5 - s
    }
}

pub fn oracle_normal_quantile(p: f64) -> f64 {
    let (mut lo, mut hi) = (-12.0, 12.0);
    while hi - lo > 1e-11 {
        let mid = 0.5 * (lo + hi);
        if simpson_normal_cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Gamma((df+1)/2) / Gamma(df/2) by the exact recursion
/// r(1) = 1/sqrt(pi), r(df) = ((df-1)/2) / r(df-1).
fn gamma_half_ratio(df: u32) -> f64 {
    let mut r = 1.0 / std::f64::consts::PI.sqrt();
    for k in 2..=df {
        r = ((k - 1) as f64 / 2.0) / r;
    }
    r
}

pub fn t_density(x: f64, df: u32) -> f64 {
    let nu = df as f64;
    let norm = gamma_half_ratio(df) / (nu * std::f64::consts::PI).sqrt();
    norm * (1.0 + x * x / nu).powf(-0.5 * (nu + 1.0))
}

pub fn simpson_t_cdf(z: f64, df: u32) -> f64 {
    if z == 0.0 {
        return 0.5;
    }
    let s = simpson(|x| t_density(x, df), 0.0, z.abs(), 20001);
    if z > 0.0 {
        0.5 + s
    } else {
        0.5 - s
    }
}

pub fn oracle_t_quantile(p: f64, df: u32) -> f64 {
    let mut hi = 2.0;
    while simpson_t_cdf(hi, df) < p {
        hi *= 2.0;
    }
    let mut lo = -2.0;
    while simpson_t_cdf(lo, df) > p {
        lo *= 2.0;
    }
    while hi - lo > 1e-9 * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        if simpson_t_cdf(mid, df) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
