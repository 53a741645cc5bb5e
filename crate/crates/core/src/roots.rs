//! Scalar root finding and minimization on brackets.

use crate::error::{Error, Result};

/// Brent's method on a sign-changing bracket. `flo` and `fhi` are the
/// function values at the ends (passed in so callers can reuse them).
pub fn brent<F>(mut f: F, lo: f64, hi: f64, flo: f64, fhi: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::RootLocalization {
            lo,
            hi,
            context: format!("no sign change (f(lo) = {flo:e}, f(hi) = {fhi:e})"),
        });
    }
    let (mut a, mut b, mut fa, mut fb) = (lo, hi, flo, fhi);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }
    Ok(b)
}

/// Bisection on a bracket with known left sign until the bracket is below
/// `switch_tol` (relative), then safeguarded Newton to `newton_tol`.
pub fn bisect_newton<F>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    left_positive: bool,
    switch_tol: f64,
    newton_tol: f64,
) -> Result<f64>
where
    F: FnMut(f64) -> (f64, f64),
{
    let (lo0, hi0) = (lo, hi);
    while hi - lo > switch_tol * hi.abs().max(1.0) {
        let mid = 0.5 * (lo + hi);
        let (v, _) = f(mid);
        if v == 0.0 {
            return Ok(mid);
        }
        if (v > 0.0) == left_positive {
            lo = mid;
        } else {
            hi = mid;
        }
        if mid == lo && mid == hi {
            break;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..50 {
        let (v, dv) = f(x);
        if v == 0.0 {
            return Ok(x);
        }
        // keep the bracket honest so a bad derivative cannot escape it
        if (v > 0.0) == left_positive {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - v / dv;
        let newton = next.is_finite() && next > lo && next < hi;
        if !newton {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if newton && step <= newton_tol * x.abs().max(1e-300) {
            return Ok(x);
        }
        if hi - lo <= 4.0 * f64::EPSILON * x.abs() {
            return Ok(x);
        }
    }
    if x > lo0 && x < hi0 {
        Ok(x)
    } else {
        Err(Error::RootLocalization {
            lo: lo0,
            hi: hi0,
            context: "Newton refinement left the bracket".into(),
        })
    }
}

/// Brent's minimization on `[lo, hi]` started from `x0`; parabolic steps
/// converge superlinearly on smooth minima. Returns `(argmin, min)`.
pub fn brent_min<F>(mut f: F, lo: f64, x0: f64, hi: f64, rtol: f64, atol: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    const CG: f64 = 0.381_966_011_250_105_1;
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let mut x = if x0 > a && x0 < b { x0 } else { a + CG * (b - a) };
    let mut fx = f(x)?;
    let (mut w, mut v, mut fw, mut fv) = (x, x, fx, fx);
    let (mut d, mut e) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let xm = 0.5 * (a + b);
        let tol1 = rtol * x.abs() + atol;
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            if !(p.abs() >= (0.5 * q * etemp).abs() || p <= q * (a - x) || p >= q * (b - x)) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = CG * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = f(u)?;
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Ok((x, fx))
}
