//! Kendall's function and tau of AMO copulas, tail dependence, and the
//! empirical counterparts used to check them against samples.

use std::cmp::Ordering;
use std::fmt;

use crate::copula::AmoCopula;
use crate::distortions::{t_inverse, Distortion, DistortionFamily};
use crate::error::{Error, Result};
use crate::generators::{kendall_function_base, kendall_tau_base, GeneratorFamily, TailDecay};
use crate::numerics::{integrate, Interval, Tolerance};
use crate::sampling::SamplePair;

/// `K_AMO(t) = K_G(t) + G'(x) T⁻¹(x)` with `x = G⁻¹(t)`; `0` at `t = 0`.
pub fn kendall_function(c: &AmoCopula, t: f64) -> Result<f64> {
    let g = c.generator();
    let base = kendall_function_base(g, t)?;
    if t == 0.0 || t == 1.0 {
        return Ok(base);
    }
    let x = g.inverse(t);
    let correction = g.deriv(x) * t_inverse(c.d1(), c.d2(), x)?;
    Ok((base + correction).clamp(t, base))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TauMethod {
    ClosedForm,
    Quadrature,
}

impl fmt::Display for TauMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TauMethod::ClosedForm => "closed-form",
            TauMethod::Quadrature => "quadrature",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauEstimate {
    pub tau_g: f64,
    pub tau_amo: f64,
    pub method: TauMethod,
}

/// Kendall's tau of the AMO copula.
pub fn kendall_tau(c: &AmoCopula) -> Result<f64> {
    Ok(kendall_tau_detail(c)?.tau_amo)
}

/// Kendall's tau together with the base tau and the path used. Clayton with
/// linear distortions has the closed form
/// `θ/(θ+2) + 2/((2+θ)(1+S))`, `S = Σ α_i/(1-α_i)`.
pub fn kendall_tau_detail(c: &AmoCopula) -> Result<TauEstimate> {
    kendall_tau_detail_with(c, Tolerance::quadrature())
}

/// As [`kendall_tau_detail`], with `tol` for the quadrature path.
pub fn kendall_tau_detail_with(c: &AmoCopula, tol: Tolerance) -> Result<TauEstimate> {
    if let Some(t) = clayton_linear_tau(c) {
        return Ok(TauEstimate { tau_g: kendall_tau_base(c.generator())?, tau_amo: t, method: TauMethod::ClosedForm });
    }
    kendall_tau_quadrature(c, tol)
}

fn clayton_linear_tau(c: &AmoCopula) -> Option<f64> {
    let theta = match c.generator().family()? {
        GeneratorFamily::Clayton(t) if t > 0.0 => t,
        _ => return None,
    };
    let slope = |d: &Distortion| match d.family()? {
        DistortionFamily::Linear(a) => Some(a),
        _ => None,
    };
    let (a1, a2) = (slope(c.d1())?, slope(c.d2())?);
    let s = a1 / (1.0 - a1) + a2 / (1.0 - a2);
    Some(theta / (theta + 2.0) + 2.0 / ((2.0 + theta) * (1.0 + s)))
}

/// `τ_G + 4 ∫_0^{x_G} G'(x)² T⁻¹(x) dx`, ignoring any closed form.
pub fn kendall_tau_quadrature(c: &AmoCopula, tol: Tolerance) -> Result<TauEstimate> {
    let g = c.generator();
    let tau_g = kendall_tau_base(g)?;
    let x_g = g.x_g();
    let range = if x_g.is_infinite() { Interval::from(0.0)? } else { Interval::new(0.0, x_g)? };
    let f = |x: f64| {
        let d = g.deriv(x);
        d * d * t_inverse(c.d1(), c.d2(), x).unwrap_or(f64::NAN)
    };
    let extra = integrate(f, range, tol)?;
    Ok(TauEstimate { tau_g, tau_amo: (tau_g + 4.0 * extra).min(1.0), method: TauMethod::Quadrature })
}

/// `3 - 4 ∫_0^1 K_AMO(t) dt`.
pub fn kendall_tau_from_kendall_function(c: &AmoCopula, tol: Tolerance) -> Result<f64> {
    let k = |t: f64| kendall_function(c, t).unwrap_or(f64::NAN);
    Ok(3.0 - 4.0 * integrate(k, Interval::new(0.0, 1.0)?, tol)?)
}

/// A tail-dependence coefficient, or `Undetermined` when the generator or
/// distortion metadata does not pin down the limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailValue {
    Value(f64),
    Undetermined,
}

impl TailValue {
    pub fn value(&self) -> Option<f64> {
        match self {
            TailValue::Value(v) => Some(*v),
            TailValue::Undetermined => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailReport {
    pub lambda_lower: TailValue,
    pub lambda_upper: TailValue,
    /// Decay branch used for the lower tail.
    pub lower_branch: String,
    pub upper_branch: String,
    /// Index of the distortion that dominates at infinity (lower tail) and
    /// at zero (upper tail); `None` when not needed or not decidable.
    pub lower_dominating: Option<usize>,
    pub upper_dominating: Option<usize>,
    pub beta_lower: Option<f64>,
    pub beta_upper: Option<f64>,
}

// The distortion that is larger near the probe point; ties go to D1.
fn dominating(c: &AmoCopula, beta: impl Fn(&Distortion) -> Option<f64>, probe: f64) -> usize {
    match (beta(c.d1()), beta(c.d2())) {
        (Some(b1), Some(b2)) if b1 != b2 => {
            if b1 > b2 {
                1
            } else {
                2
            }
        }
        _ => {
            if c.d1().eval(probe) >= c.d2().eval(probe) {
                1
            } else {
                2
            }
        }
    }
}

fn pick(c: &AmoCopula, i: usize) -> &Distortion {
    if i == 1 {
        c.d1()
    } else {
        c.d2()
    }
}

/// Lower and upper tail dependence from the generator's asymptotics and the
/// slopes of the dominating distortion.
pub fn tail_parameters(c: &AmoCopula) -> TailReport {
    let g = c.generator();
    let mut report = TailReport {
        lambda_lower: TailValue::Undetermined,
        lambda_upper: TailValue::Undetermined,
        lower_branch: String::new(),
        upper_branch: String::new(),
        lower_dominating: None,
        upper_dominating: None,
        beta_lower: None,
        beta_upper: None,
    };

    if g.x_g().is_finite() {
        report.lambda_lower = TailValue::Value(0.0);
        report.lower_branch = "finite support".into();
    } else {
        let i = dominating(c, |d| d.beta_inf(), 1e6);
        let d = pick(c, i);
        report.lower_dominating = Some(i);
        report.beta_lower = d.beta_inf();
        match (g.infinity_decay(), d.beta_inf()) {
            (TailDecay::Polynomial { gamma, .. }, Some(beta)) => {
                report.lambda_lower = TailValue::Value((1.0 + beta).powf(-gamma));
                report.lower_branch = "polynomial decay".into();
            }
            (TailDecay::Exponential { .. }, Some(beta)) if beta > 0.0 => {
                report.lambda_lower = TailValue::Value(0.0);
                report.lower_branch = "exponential decay, beta > 0".into();
            }
            (TailDecay::Exponential { gamma, .. }, Some(_)) if gamma >= 1.0 => {
                report.lambda_lower = TailValue::Value(0.0);
                report.lower_branch = "exponential decay, beta = 0, gamma >= 1".into();
            }
            (TailDecay::Exponential { a, gamma, .. }, Some(_)) => {
                report.lower_branch = "exponential decay, beta = 0, gamma < 1".into();
                if let Some(l) = d.sub_linear_limit(gamma) {
                    report.lambda_lower = TailValue::Value((-a * gamma * l).exp());
                }
            }
            (TailDecay::Unclassified, _) => report.lower_branch = "unclassified decay".into(),
            (_, None) => report.lower_branch = "distortion slope at infinity unknown".into(),
        }
    }

    let i = dominating(c, |d| d.beta_zero(), 1e-6);
    let d = pick(c, i);
    report.upper_dominating = Some(i);
    report.beta_upper = d.beta_zero();
    match (g.zero_expansion(), d.beta_zero()) {
        (Some(z), Some(beta)) => {
            report.lambda_upper = TailValue::Value(2.0 - (1.0 + beta).powf(z.gamma));
            report.upper_branch = "power expansion at zero".into();
        }
        (None, _) => report.upper_branch = "no expansion at zero".into(),
        (_, None) => report.upper_branch = "distortion slope at zero unknown".into(),
    }
    report
}

fn concordance_sum(pairs: &mut [(f64, f64)]) -> f64 {
    let n = pairs.len();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let mut tied_x = 0u64;
    let mut tied_xy = 0u64;
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && pairs[j].0 == pairs[i].0 {
            j += 1;
        }
        let run = (j - i) as u64;
        tied_x += run * (run - 1) / 2;
        let mut k = i;
        while k < j {
            let mut l = k + 1;
            while l < j && pairs[l].1 == pairs[k].1 {
                l += 1;
            }
            let r = (l - k) as u64;
            tied_xy += r * (r - 1) / 2;
            k = l;
        }
        i = j;
    }

    let mut ys: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    let mut buf = vec![0.0; n];
    let swaps = merge_count(&mut ys, &mut buf);

    let mut tied_y = 0u64;
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && ys[j] == ys[i] {
            j += 1;
        }
        let run = (j - i) as u64;
        tied_y += run * (run - 1) / 2;
        i = j;
    }

    let n0 = (n as u64) * (n as u64 - 1) / 2;
    n0 as f64 - tied_x as f64 - tied_y as f64 + tied_xy as f64 - 2.0 * swaps as f64
}

// Sorts `v` and returns the number of strict inversions.
fn merge_count(v: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let (left_buf, right_buf) = buf.split_at_mut(mid);
    let mut swaps = {
        let (l, r) = v.split_at_mut(mid);
        merge_count(l, left_buf) + merge_count(r, right_buf)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[j].total_cmp(&v[i]) == Ordering::Less {
            buf[k] = v[j];
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buf[k] = v[i];
            i += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&buf[..n]);
    swaps
}

/// Kendall's concordance statistic of `(x, y)` pairs; tied pairs count as
/// neither concordant nor discordant. `O(n log n)`.
pub fn empirical_tau_xy(pairs: &[(f64, f64)]) -> Result<f64> {
    let n = pairs.len();
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    let mut work = pairs.to_vec();
    let s = concordance_sum(&mut work);
    Ok(2.0 * s / (n as f64 * (n as f64 - 1.0)))
}

/// Kendall's concordance statistic over the copula-scale values `(u, v)`.
pub fn empirical_tau(samples: &[SamplePair]) -> Result<f64> {
    let pairs: Vec<(f64, f64)> = samples.iter().map(|s| (s.u, s.v)).collect();
    empirical_tau_xy(&pairs)
}

/// Standard error of Kendall's tau under independence,
/// `sqrt(2(2n+5) / (9 n (n-1)))`.
pub fn tau_standard_error(n: usize) -> f64 {
    let n = n as f64;
    (2.0 * (2.0 * n + 5.0) / (9.0 * n * (n - 1.0))).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailSide {
    Lower,
    Upper,
}

/// For each threshold `u`, `#{U <= u, V <= u}/(n u)` (lower) or
/// `#{U > u, V > u}/(n (1-u))` (upper).
pub fn empirical_tail(samples: &[SamplePair], side: TailSide, thresholds: &[f64]) -> Result<Vec<(f64, f64)>> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    thresholds
        .iter()
        .map(|&u| {
            if !(u > 0.0 && u < 1.0) {
                return Err(Error::DomainError(format!("tail threshold {u} not in (0, 1)")));
            }
            let est = match side {
                TailSide::Lower => samples.iter().filter(|s| s.u <= u && s.v <= u).count() as f64 / (n as f64 * u),
                TailSide::Upper => {
                    samples.iter().filter(|s| s.u > u && s.v > u).count() as f64 / (n as f64 * (1.0 - u))
                }
            };
            Ok((u, est))
        })
        .collect()
}
