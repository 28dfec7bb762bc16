//! Numerical kernel shared by the rest of the crate: bracketing inversion of
//! monotone functions, adaptive Gauss-Kronrod quadrature on finite and
//! semi-infinite ranges, and Richardson-extrapolated numeric derivatives.
//!
//! Everything here is a pure function of its inputs.

use crate::error::{Error, Result};

/// A closed integration or search range `[lo, hi]`; `hi` may be `+inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || lo < 0.0 {
            return Err(Error::DomainError(format!("interval start {lo} must be finite and >= 0")));
        }
        if hi.is_nan() || hi <= lo {
            return Err(Error::DomainError(format!("interval [{lo}, {hi}] is empty")));
        }
        Ok(Interval { lo, hi })
    }

    /// `[lo, +inf)`.
    pub fn from(lo: f64) -> Result<Self> {
        Self::new(lo, f64::INFINITY)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn is_semi_infinite(&self) -> bool {
        self.hi.is_infinite()
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

/// Stopping rule for the iterative routines.
///
/// For inversion `max_iter` bounds the number of bracket refinements; for
/// quadrature it bounds the number of subintervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || !(rel_tol > 0.0) || max_iter == 0 {
            return Err(Error::BadParameter(format!(
                "tolerance needs abs_tol > 0, rel_tol > 0, max_iter >= 1 (got {abs_tol}, {rel_tol}, {max_iter})"
            )));
        }
        Ok(Tolerance { abs_tol, rel_tol, max_iter })
    }

    /// Default for root finding.
    pub const fn inversion() -> Self {
        Tolerance { abs_tol: 1e-10, rel_tol: 1e-9, max_iter: 200 }
    }

    /// Default for quadrature.
    pub const fn quadrature() -> Self {
        Tolerance { abs_tol: 1e-11, rel_tol: 1e-11, max_iter: 4000 }
    }

    /// Inversion down to the last few ulps; used behind closures that must
    /// behave like exact inverses.
    pub const fn machine() -> Self {
        Tolerance { abs_tol: f64::MIN_POSITIVE, rel_tol: 4.0 * f64::EPSILON, max_iter: 2000 }
    }

    /// Default for numeric differentiation.
    pub const fn derivative() -> Self {
        Tolerance { abs_tol: 1e-12, rel_tol: 1e-9, max_iter: 12 }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::inversion()
    }
}

/// Solves `f(x) = target` for `x` in `bracket`, where `f` is continuous and
/// strictly monotone (either direction).
///
/// An infinite upper end is handled by doubling the search width until the
/// target is straddled. The search is Illinois-style false position with a
/// forced bisection every third step, so it never needs derivatives.
pub fn invert_monotone<F>(f: F, target: f64, bracket: Interval, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !target.is_finite() {
        return Err(Error::DomainError(format!("non-finite inversion target {target}")));
    }
    let mut a = bracket.lo;
    let mut fa = f(a) - target;
    if fa == 0.0 {
        return Ok(a);
    }
    let below = fa < 0.0;
    let straddles = |fx: f64| if below { fx >= 0.0 } else { fx <= 0.0 };

    let (mut b, mut fb) = if bracket.hi.is_finite() {
        let fb = f(bracket.hi) - target;
        if !straddles(fb) {
            return Err(Error::NoBracket { target, lo: bracket.lo, hi: bracket.hi });
        }
        (bracket.hi, fb)
    } else {
        let mut width = 1.0_f64;
        loop {
            let b = a + width;
            let fb = f(b) - target;
            if straddles(fb) {
                break (b, fb);
            }
            if fb.is_finite() {
                a = b;
                fa = fb;
            }
            width *= 2.0;
            if !(a + width).is_finite() || width > 1e300 {
                return Err(Error::NoBracket { target, lo: bracket.lo, hi: f64::INFINITY });
            }
        }
    };
    if fb == 0.0 {
        return Ok(b);
    }

    // Illinois false position; `stale` counts how many times in a row the
    // same endpoint survived.
    let mut stale_a = 0u32;
    let mut stale_b = 0u32;
    for iter in 0..tol.max_iter {
        let width = b - a;
        let mut c = if iter % 3 == 2 || !fa.is_finite() || !fb.is_finite() {
            a + 0.5 * width
        } else {
            let fa_w = if stale_a >= 2 { fa * 0.5f64.powi(stale_a as i32 - 1) } else { fa };
            let fb_w = if stale_b >= 2 { fb * 0.5f64.powi(stale_b as i32 - 1) } else { fb };
            b - fb_w * width / (fb_w - fa_w)
        };
        if !(c > a && c < b) {
            c = a + 0.5 * width;
        }
        if c <= a || c >= b {
            // Bracket has collapsed to adjacent floats.
            return Ok(if fa.abs() <= fb.abs() { a } else { b });
        }
        let fc = f(c) - target;
        if fc == 0.0 || fc.abs() <= tol.abs_tol {
            return Ok(c);
        }
        if straddles(fc) {
            b = c;
            fb = fc;
            stale_a += 1;
            stale_b = 0;
        } else {
            a = c;
            fa = fc;
            stale_b += 1;
            stale_a = 0;
        }
        let mid = 0.5 * (a + b);
        if b - a <= tol.rel_tol * mid.abs() {
            return Ok(mid);
        }
    }
    Err(Error::MaxIterExceeded { iterations: tol.max_iter, estimate: 0.5 * (a + b) })
}

// 15-point Kronrod nodes on [-1, 1] (non-negative half) and weights; the
// odd-indexed nodes plus the centre form the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Result of an adaptive quadrature run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub subintervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = finite_or_zero(f(center));
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = kronrod.abs();
    let mut fv = [0.0f64; 14];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = finite_or_zero(f(center - dx));
        let f2 = finite_or_zero(f(center + dx));
        fv[2 * j] = f1;
        fv[2 * j + 1] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        asc += WGK[j] * ((fv[2 * j] - mean).abs() + (fv[2 * j + 1] - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Segment { a, b, value, error: err }
}

fn finite_or_zero(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: Tolerance) -> Result<Quadrature> {
    let mut segments = vec![gauss_kronrod(f, a, b)];
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if error <= tol.abs_tol.max(tol.rel_tol * value.abs()) {
            return Ok(Quadrature { value, error, subintervals: segments.len() });
        }
        if segments.len() >= tol.max_iter {
            return Err(Error::NonConvergent { estimate: value, error });
        }
        let (idx, worst) = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, s)| (i, *s))
            .expect("at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Cannot subdivide further in floating point.
            return Err(Error::NonConvergent { estimate: value, error });
        }
        segments[idx] = gauss_kronrod(f, worst.a, mid);
        segments.push(gauss_kronrod(f, mid, worst.b));
    }
}

/// Integrates `f` over `range`, returning value and error estimate.
///
/// A semi-infinite range `[lo, inf)` is integrated as one adaptive run over
/// `t ∈ [0, 2)`: `x = lo + t` on `[0, 1]` and `x = lo + exp(s/(1-s))` with
/// `s = t - 1` beyond. The map is C¹ at `t = 1` and turns algebraic decay
/// of `f` into exponential decay, so heavy tails lose no mass to the
/// floating-point resolution near `t = 2`. The transformed integrand is
/// taken as zero where `x` overflows.
pub fn integrate_with_error<F>(f: F, range: Interval, tol: Tolerance) -> Result<Quadrature>
where
    F: Fn(f64) -> f64,
{
    if range.is_semi_infinite() {
        let lo = range.lo;
        let g = |t: f64| {
            if t <= 1.0 {
                return f(lo + t);
            }
            let s = t - 1.0;
            if s >= 1.0 {
                return 0.0;
            }
            let r = 1.0 - s;
            let e = (s / r).exp();
            let x = lo + e;
            if !x.is_finite() {
                return 0.0;
            }
            let v = f(x) * e / (r * r);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        };
        adaptive(&g, 0.0, 2.0, tol)
    } else {
        adaptive(&f, range.lo, range.hi, tol)
    }
}

/// Integrates `f` over `range`.
pub fn integrate<F>(f: F, range: Interval, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_with_error(f, range, tol).map(|q| q.value)
}

/// Which stencil a derivative estimate used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stencil {
    Central,
    /// `x` sat within one step of the lower domain end.
    Forward,
    /// `x` sat within one step of the upper domain end.
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeEstimate {
    pub value: f64,
    pub error: f64,
    pub stencil: Stencil,
}

impl DerivativeEstimate {
    /// True when a one-sided stencil had to be used near a domain edge.
    pub fn at_domain_edge(&self) -> bool {
        self.stencil != Stencil::Central
    }
}

/// Numeric derivative of `f` at `x` by Ridders' extrapolation of finite
/// differences. `domain` is where `f` may be evaluated; within one initial
/// step of either end a one-sided stencil is used and flagged.
pub fn derivative<F>(f: F, x: f64, domain: Interval, tol: Tolerance) -> Result<DerivativeEstimate>
where
    F: Fn(f64) -> f64,
{
    if !domain.contains(x) || !x.is_finite() {
        return Err(Error::DomainError(format!("derivative requested at {x} outside [{}, {}]", domain.lo, domain.hi)));
    }
    const CON: f64 = 1.4;
    const SAFE: f64 = 2.0;
    let h0 = 0.1 * x.abs().max(1.0);
    let stencil = if x - domain.lo < h0 {
        Stencil::Forward
    } else if domain.hi - x < h0 {
        Stencil::Backward
    } else {
        Stencil::Central
    };
    let (h0, step_factor) = match stencil {
        Stencil::Central => (h0, CON * CON),
        Stencil::Forward => (h0.min(0.5 * (domain.hi - x)), CON),
        Stencil::Backward => (h0.min(0.5 * (x - domain.lo)), CON),
    };
    let diff = |h: f64| match stencil {
        Stencil::Central => (f(x + h) - f(x - h)) / (2.0 * h),
        Stencil::Forward => (f(x + h) - f(x)) / h,
        Stencil::Backward => (f(x) - f(x - h)) / h,
    };

    let ntab = tol.max_iter.max(2);
    let mut table = vec![vec![0.0f64; ntab]; ntab];
    let mut h = h0;
    table[0][0] = diff(h);
    let mut best = table[0][0];
    let mut err = f64::INFINITY;
    for i in 1..ntab {
        h /= CON;
        table[0][i] = diff(h);
        let mut fac = step_factor;
        for j in 1..=i {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= step_factor;
            let errt = (table[j][i] - table[j - 1][i]).abs().max((table[j][i] - table[j - 1][i - 1]).abs());
            if errt <= err {
                err = errt;
                best = table[j][i];
            }
        }
        if (table[i][i] - table[i - 1][i - 1]).abs() >= SAFE * err {
            break;
        }
        if err <= tol.abs_tol.max(tol.rel_tol * best.abs()) * 1e-3 {
            break;
        }
    }
    if !best.is_finite() {
        return Err(Error::DomainError(format!("derivative at {x} is not finite")));
    }
    Ok(DerivativeEstimate { value: best, error: err, stencil })
}

/// `n` points log-spaced on `[lo, hi]` (both > 0).
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (l, h) = (lo.ln(), hi.ln());
            (0..n).map(|i| (l + (h - l) * i as f64 / (n - 1) as f64).exp()).collect()
        }
    }
}

/// `n` interior points of `(0, 1)`: `1/(n+1), ..., n/(n+1)`.
pub fn unit_grid(n: usize) -> Vec<f64> {
    (1..=n).map(|i| i as f64 / (n + 1) as f64).collect()
}
