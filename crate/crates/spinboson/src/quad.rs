//! Adaptive Gauss-Kronrod quadrature plus the oscillatory-tail machinery the
//! quadrature oracles need.
//!
//! Everything here is deterministic: intervals are processed worst-error
//! first with a fixed tie-break, so repeated runs bisect in the same order.

use crate::error::{Error, Result};

// 15-point Kronrod nodes (positive half) with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_2,
    0.949_107_912_342_758_524_5,
    0.864_864_423_359_769_072_8,
    0.741_531_185_599_394_440_0,
    0.586_087_235_467_691_130_3,
    0.405_845_151_377_397_166_9,
    0.207_784_955_007_898_467_6,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_96,
    0.063_092_092_629_978_553_29,
    0.104_790_010_322_250_183_8,
    0.140_653_259_715_525_918_7,
    0.169_004_726_639_267_902_8,
    0.190_350_578_064_785_409_9,
    0.204_432_940_075_298_892_4,
    0.209_482_141_084_727_828_0,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_3,
    0.279_705_391_489_276_667_9,
    0.381_830_050_505_118_945_0,
    0.417_959_183_673_469_387_8,
];

/// One Gauss-Kronrod 15(7) panel. Returns (estimate, error estimate).
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);

    let fc = f(c);
    let mut res_gauss = WG[3] * fc;
    let mut res_kronrod = WGK[7] * fc;
    let mut res_abs = WGK[7] * fc.abs();

    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    for (i, &x) in XGK.iter().take(7).enumerate() {
        let f1 = f(c - h * x);
        let f2 = f(c + h * x);
        fv[i] = f1;
        fv[14 - i] = f2;
        res_kronrod += WGK[i] * (f1 + f2);
        res_abs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            // nodes 1, 3, 5 are the Gauss nodes
            res_gauss += WG[i / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for (i, &w) in WGK.iter().take(7).enumerate() {
        res_asc += w * ((fv[i] - mean).abs() + (fv[14 - i] - mean).abs());
    }

    let estimate = res_kronrod * h;
    let raw_err = ((res_kronrod - res_gauss) * h).abs();
    let res_abs = res_abs * h.abs();
    let res_asc = res_asc * h.abs();

    // QUADPACK error rescaling.
    let mut err = raw_err;
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    let min_err = 50.0 * f64::EPSILON * res_abs;
    if min_err > err {
        err = min_err;
    }
    (estimate, err)
}

struct Interval {
    a: f64,
    b: f64,
    estimate: f64,
    err: f64,
    splittable: bool,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.sort_key() == other.sort_key()
    }
}
impl Eq for Interval {}
impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Interval {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // max-heap on error, ties broken by left edge for determinism
        self.sort_key()
            .0
            .total_cmp(&other.sort_key().0)
            .then(other.sort_key().1.total_cmp(&self.sort_key().1))
    }
}
impl Interval {
    fn sort_key(&self) -> (f64, f64) {
        (if self.splittable { self.err } else { -1.0 }, self.a)
    }
}

/// Adaptive integration of `f` over `[a, b]` to absolute tolerance `abs_tol`.
///
/// `seeds` may pre-split the interval (useful around known narrow features);
/// entries outside `(a, b)` are ignored.
pub fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64, seeds: &[f64]) -> Result<f64> {
    adaptive_rel(f, a, b, abs_tol, 0.0, seeds)
}

/// Adaptive integration stopping at `max(abs_tol, rel_tol * |estimate|)`.
pub fn adaptive_rel<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    seeds: &[f64],
) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) || b <= a {
        return Err(Error::Quadrature {
            a,
            b,
            detail: "bad interval".into(),
        });
    }
    let mut edges: Vec<f64> = vec![a, b];
    edges.extend(seeds.iter().copied().filter(|&x| x > a && x < b));
    edges.sort_by(|x, y| x.partial_cmp(y).unwrap());
    edges.dedup();

    let mut heap: std::collections::BinaryHeap<Interval> = std::collections::BinaryHeap::new();
    let mut total_err = 0.0;
    let mut total_est = 0.0;
    for w in edges.windows(2) {
        let (est, err) = gk15(f, w[0], w[1]);
        total_err += err;
        total_est += est;
        heap.push(Interval {
            a: w[0],
            b: w[1],
            estimate: est,
            err,
            splittable: true,
        });
    }

    const MAX_PANELS: usize = 100_000;
    while total_err > abs_tol.max(rel_tol * total_est.abs()) {
        let iv = heap.pop().expect("non-empty heap");
        if !iv.splittable || heap.len() + 1 >= MAX_PANELS {
            let detail = format!(
                "residual error {total_err:.3e} > tol {abs_tol:.3e}, worst subinterval [{:.6e}, {:.6e}]",
                iv.a, iv.b
            );
            return Err(Error::Quadrature { a, b, detail });
        }
        let m = 0.5 * (iv.a + iv.b);
        if m <= iv.a || m >= iv.b {
            // floating-point resolution; keep the estimate, stop splitting it
            heap.push(Interval {
                splittable: false,
                ..iv
            });
            continue;
        }
        total_err -= iv.err;
        total_est -= iv.estimate;
        let (e1, r1) = gk15(f, iv.a, m);
        let (e2, r2) = gk15(f, m, iv.b);
        total_err += r1 + r2;
        total_est += e1 + e2;
        heap.push(Interval {
            a: iv.a,
            b: m,
            estimate: e1,
            err: r1,
            splittable: true,
        });
        heap.push(Interval {
            a: m,
            b: iv.b,
            estimate: e2,
            err: r2,
            splittable: true,
        });
    }

    // fixed summation order for reproducibility
    let mut parts: Vec<(f64, f64)> = heap.into_iter().map(|iv| (iv.a, iv.estimate)).collect();
    parts.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(parts.iter().map(|p| p.1).sum())
}

/// Sum of the alternating tail `t0 - t1 + t2 - ...` by Euler transformation.
///
/// `terms` holds the magnitudes of consecutive same-sign segments. Returns the
/// accelerated sum with the sign of the first term applied by the caller.
pub fn euler_alternating(terms: &[f64]) -> f64 {
    if terms.is_empty() {
        return 0.0;
    }
    // partial sums of the signed series
    let mut rows: Vec<f64> = Vec::with_capacity(terms.len());
    let mut s = 0.0;
    let mut sign = 1.0;
    for &t in terms {
        s += sign * t;
        rows.push(s);
        sign = -sign;
    }
    // repeated averaging
    let mut row = rows;
    while row.len() > 1 {
        let next: Vec<f64> = row.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        row = next;
    }
    row[0]
}

/// `integral of sin(m x)/(1 + x^2) over [0, inf)` for `m > 0`.
///
/// Adaptive quadrature on `[0, 50/m]`, then integration between consecutive
/// zeros of the sine with Euler acceleration of the alternating series.
pub fn sin_over_one_plus_x2(m: f64, abs_tol: f64) -> Result<f64> {
    assert!(m > 0.0 && m.is_finite());
    let split = 50.0 / m;
    let f = |x: f64| (m * x).sin() / (1.0 + x * x);

    // seed panels at the early sine zeros so the head is resolved cheaply
    let mut seeds = Vec::new();
    let mut k = 1usize;
    loop {
        let z = k as f64 * std::f64::consts::PI / m;
        if z >= split || seeds.len() > 400 {
            break;
        }
        seeds.push(z);
        k += 1;
    }
    let head = adaptive(&f, 0.0, split, 0.5 * abs_tol, &seeds)?;

    // first zero at or after the split point
    let k0 = (split * m / std::f64::consts::PI).ceil() as usize;
    let z0 = k0 as f64 * std::f64::consts::PI / m;
    let bridge = adaptive(&f, split, z0, 0.25 * abs_tol, &[])?;

    // segments between consecutive zeros alternate in sign and decay ~ 1/x^2
    let mut mags = Vec::with_capacity(48);
    let first_sign = if k0 % 2 == 0 { 1.0 } else { -1.0 };
    for j in 0..48usize {
        let lo = (k0 + j) as f64 * std::f64::consts::PI / m;
        let hi = (k0 + j + 1) as f64 * std::f64::consts::PI / m;
        let seg = adaptive(&f, lo, hi, 0.02 * abs_tol, &[])?;
        mags.push(seg.abs());
    }
    let tail = first_sign * euler_alternating(&mags);
    Ok(head + bridge + tail)
}

/// `integral of cos(t)/t over [m, inf)` (i.e. `-Ci(m)`), for `m > 0`,
/// by integration between consecutive zeros of the cosine with Euler
/// acceleration. Intended for moderate to large `m`.
pub fn cos_over_t_tail(m: f64, abs_tol: f64) -> Result<f64> {
    assert!(m > 0.0);
    let f = |t: f64| t.cos() / t;
    let pi = std::f64::consts::PI;
    // zeros of cos at (k + 1/2) pi
    let k0 = ((m / pi - 0.5).ceil().max(0.0)) as usize;
    let z0 = (k0 as f64 + 0.5) * pi;
    let head = if z0 > m {
        adaptive(&f, m, z0, 0.25 * abs_tol, &[])?
    } else {
        0.0
    };
    let first_sign = if k0 % 2 == 0 { -1.0 } else { 1.0 };
    let mut mags = Vec::with_capacity(40);
    for j in 0..40usize {
        let lo = (k0 as f64 + 0.5 + j as f64) * pi;
        let hi = lo + pi;
        let seg = adaptive(&f, lo, hi, 0.02 * abs_tol, &[])?;
        mags.push(seg.abs());
    }
    Ok(head + first_sign * euler_alternating(&mags))
}

/// Stable `coth(x)` for `x > 0`.
pub fn coth(x: f64) -> f64 {
    if x < 1e-4 {
        // 1/x + x/3 - x^3/45
        1.0 / x + x / 3.0 - x * x * x / 45.0
    } else if x > 20.0 {
        1.0
    } else {
        1.0 / x.tanh()
    }
}

/// Stable `(1 - cos(w t)) / w^2`.
pub fn one_minus_cos_over_w2(w: f64, t: f64) -> f64 {
    let p = w * t;
    if p.abs() < 1e-4 {
        0.5 * t * t * (1.0 - p * p / 12.0)
    } else {
        2.0 * (0.5 * p).sin().powi(2) / (w * w)
    }
}
