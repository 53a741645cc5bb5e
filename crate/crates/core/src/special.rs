//! Bessel functions of the first kind for integer order and real argument.
//!
//! Small arguments use the ascending series. Everything else goes through
//! Miller's backward recurrence normalized by `J_0 + 2 Σ J_{2k} = 1`, which
//! yields every order `0..=n` in one sweep and stays stable for `k > x`.
//! Zeros are tabulated lazily from the interlacing
//! `j_{k-1,n} < j_{k,n} < j_{k-1,n+1}`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::roots::bisect_newton;

/// Largest order accepted by the public entry points.
pub const MAX_ORDER: i32 = 60;
/// Largest argument accepted by the public entry points.
pub const MAX_ARG: f64 = 1.0e3;
/// Largest zero index served by [`bessel_zero`].
pub const MAX_ZERO_INDEX: u32 = 20;

const SERIES_LIMIT: f64 = 1.0;

/// A single evaluation `J_k(x)` together with its derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselEval {
    pub order: i32,
    pub x: f64,
    pub value: f64,
    pub derivative: f64,
}

/// `J_k(x)` and `J_k'(x)` for `|k| <= 60`, `0 <= x <= 1000`.
pub fn bessel_j(k: i32, x: f64) -> Result<BesselEval> {
    if k.abs() > MAX_ORDER || !(0.0..=MAX_ARG).contains(&x) || x.is_nan() {
        return Err(Error::UnsupportedRange(format!(
            "J_{k}({x}) outside |k| <= {MAX_ORDER}, 0 <= x <= {MAX_ARG}"
        )));
    }
    let n = k.unsigned_abs() as usize + 1;
    let table = bessel_j_upto(n, x);
    let value = signed_order(&table, k);
    let derivative = 0.5 * (signed_order(&table, k - 1) - signed_order(&table, k + 1));
    Ok(BesselEval {
        order: k,
        x,
        value,
        derivative,
    })
}

/// `J_k` for any signed `k` read out of a table of nonnegative orders.
#[inline]
pub fn signed_order(table: &[f64], k: i32) -> f64 {
    let v = table[k.unsigned_abs() as usize];
    if k < 0 && k % 2 != 0 {
        -v
    } else {
        v
    }
}

/// `[J_0(x), ..., J_n(x)]` for `x >= 0`. No range checks; callers inside the
/// crate use orders slightly above the public limit.
pub fn bessel_j_upto(n: usize, x: f64) -> Vec<f64> {
    debug_assert!(x >= 0.0);
    if x == 0.0 {
        let mut out = vec![0.0; n + 1];
        out[0] = 1.0;
        return out;
    }
    if x < SERIES_LIMIT {
        return (0..=n).map(|k| series(k, x)).collect();
    }
    miller(n, x)
}

fn series(k: usize, x: f64) -> f64 {
    let h = 0.5 * x;
    // (x/2)^k / k! built incrementally to avoid overflow in the factorial
    let mut lead = 1.0;
    for j in 1..=k {
        lead *= h / j as f64;
    }
    if lead == 0.0 {
        return 0.0;
    }
    let q = -h * h;
    let mut term = lead;
    let mut sum = lead;
    for m in 1..200 {
        term *= q / (m as f64 * (m + k) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn miller(n: usize, x: f64) -> Vec<f64> {
    const BIG: f64 = 1.0e250;
    let top = n.max(x.ceil() as usize);
    let mut start = top + 24 + (16.0 * (0.5 * x).cbrt()).ceil() as usize;
    if start % 2 == 1 {
        start += 1;
    }
    let mut out = vec![0.0; n + 1];
    let mut next = 0.0; // J_{k+1}
    let mut cur = 1.0e-30; // J_k, arbitrary seed
    let mut norm = 0.0;
    let two_over_x = 2.0 / x;
    for k in (1..=start).rev() {
        if k <= n {
            out[k] = cur;
        }
        if k % 2 == 0 {
            norm += 2.0 * cur;
        }
        let prev = k as f64 * two_over_x * cur - next;
        next = cur;
        cur = prev;
        if cur.abs() > BIG {
            cur /= BIG;
            next /= BIG;
            norm /= BIG;
            for v in out.iter_mut() {
                *v /= BIG;
            }
        }
    }
    out[0] = cur;
    norm += cur;
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

const ZERO_ROWS: usize = MAX_ORDER as usize + 2;

fn zero_table() -> &'static Vec<Vec<f64>> {
    static TABLE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    TABLE.get_or_init(build_zero_table)
}

fn build_zero_table() -> Vec<Vec<f64>> {
    let per_row = |k: usize| MAX_ZERO_INDEX as usize + (ZERO_ROWS - 1 - k) + 1;
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(ZERO_ROWS);

    // order 0 from McMahon's expansion polished by Newton
    let mut row0 = Vec::with_capacity(per_row(0) + 1);
    for s in 1..=per_row(0) + 1 {
        let beta = (s as f64 - 0.25) * std::f64::consts::PI;
        let mut z = beta + 1.0 / (8.0 * beta) - 31.0 / (384.0 * beta.powi(3));
        for _ in 0..20 {
            let t = bessel_j_upto(1, z);
            let step = t[0] / -t[1];
            z -= step;
            if step.abs() < 1e-15 * z {
                break;
            }
        }
        row0.push(z);
    }
    rows.push(row0);

    for k in 1..ZERO_ROWS {
        let prev = &rows[k - 1];
        let count = per_row(k).min(prev.len() - 1);
        let mut row = Vec::with_capacity(count);
        for i in 0..count {
            let (lo, hi) = (prev[i], prev[i + 1]);
            let f = |x: f64| {
                let t = bessel_j_upto(k + 1, x);
                let d = 0.5 * (t[k - 1] - t[k + 1]);
                (t[k], d)
            };
            let left_positive = f(lo).0 > 0.0;
            let z = bisect_newton(f, lo, hi, left_positive, 1e-7, 1e-15)
                .expect("interlacing bracket always holds one zero");
            row.push(z);
        }
        rows.push(row);
    }
    rows
}

/// Positive zeros of `J_k`, `k <= 61`, in increasing order.
pub(crate) fn zeros_of(k: usize) -> &'static [f64] {
    &zero_table()[k]
}

/// The `n`-th positive zero `j_{k,n}` of `J_k`, `k <= 60`, `1 <= n <= 20`.
pub fn bessel_zero(k: u32, n: u32) -> Result<f64> {
    if k > MAX_ORDER as u32 || n == 0 || n > MAX_ZERO_INDEX {
        return Err(Error::UnsupportedRange(format!(
            "j_({k},{n}) outside k <= {MAX_ORDER}, 1 <= n <= {MAX_ZERO_INDEX}"
        )));
    }
    Ok(zeros_of(k as usize)[n as usize - 1])
}
