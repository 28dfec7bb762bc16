//! Distortions `D`, their complements `D̂ = id - D`, cumulative-hazard
//! triples, the bridge between the two descriptions, and the aggregate
//! function `T(x) = D̂₁⁻¹(x) + D̂₂⁻¹(x) - x`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{derivative, invert_monotone, log_grid, Interval, Tolerance};
use crate::RealFn;

/// Built-in distortion families (`α` is the family parameter):
///
/// * `Linear(α)`: `D(x) = α x`, `α ∈ (0, 1)`
/// * `LogShift(α)`: `D(x) = x - ln(α x + 1)/α`
/// * `SqrtComplement(α)`: `D(x) = x - (sqrt(α x + 1) - 1)/α`
/// * `SqrtSimple(α)`: `D(x) = (sqrt(α x + 1) - 1)/α`
/// * `Table1`: `D(x) = 1 + x - sqrt(1 + 2x)` (parameter-free)
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistortionFamily {
    Linear(f64),
    LogShift(f64),
    SqrtComplement(f64),
    SqrtSimple(f64),
    Table1,
}

impl DistortionFamily {
    pub fn name(&self) -> &'static str {
        match self {
            DistortionFamily::Linear(_) => "linear",
            DistortionFamily::LogShift(_) => "logshift",
            DistortionFamily::SqrtComplement(_) => "sqrtcomplement",
            DistortionFamily::SqrtSimple(_) => "sqrtsimple",
            DistortionFamily::Table1 => "table1",
        }
    }

    pub fn parameter(&self) -> Option<f64> {
        match *self {
            DistortionFamily::Linear(a)
            | DistortionFamily::LogShift(a)
            | DistortionFamily::SqrtComplement(a)
            | DistortionFamily::SqrtSimple(a) => Some(a),
            DistortionFamily::Table1 => None,
        }
    }

    /// Parses `name` or `name:alpha`; an explicit `alpha` argument wins over
    /// an inline one.
    pub fn parse(spec: &str, alpha: Option<f64>) -> Result<Self> {
        let (name, inline) = match spec.split_once(':') {
            Some((n, a)) => {
                let a = a.trim().parse::<f64>().map_err(|_| Error::Config(format!("bad distortion parameter in '{spec}'")))?;
                (n.trim(), Some(a))
            }
            None => (spec.trim(), None),
        };
        let alpha = alpha.or(inline);
        let need = || alpha.ok_or_else(|| Error::Config(format!("distortion '{name}' needs an alpha parameter")));
        match name.to_ascii_lowercase().as_str() {
            "linear" => Ok(DistortionFamily::Linear(need()?)),
            "logshift" | "log" => Ok(DistortionFamily::LogShift(need()?)),
            "sqrtcomplement" | "sqrt-complement" => Ok(DistortionFamily::SqrtComplement(need()?)),
            "sqrtsimple" | "sqrt-simple" | "sqrt" => Ok(DistortionFamily::SqrtSimple(need()?)),
            "table1" => Ok(DistortionFamily::Table1),
            other => Err(Error::Config(format!("unknown distortion family '{other}'"))),
        }
    }
}

#[derive(Clone)]
pub struct Distortion {
    label: String,
    family: Option<DistortionFamily>,
    eval: RealFn,
    inverse: RealFn,
    hat_eval: RealFn,
    hat_inverse: RealFn,
    domain_end: f64,
    beta_zero: Option<f64>,
    beta_inf: Option<f64>,
    sub_linear_limit: Option<RealFn>,
    // D̂⁻¹(y) = a y² + b y
    hat_inverse_quadratic: Option<(f64, f64)>,
}

impl fmt::Debug for Distortion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Distortion")
            .field("label", &self.label)
            .field("family", &self.family)
            .field("domain_end", &self.domain_end)
            .field("beta_zero", &self.beta_zero)
            .field("beta_inf", &self.beta_inf)
            .finish()
    }
}

fn arc<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> RealFn {
    Arc::new(f)
}

/// Numeric inverse of an increasing `f` with `f(0) = 0`, searched on `[0, end]`.
fn numeric_inverse(f: RealFn, end: f64) -> RealFn {
    arc(move |y| {
        if y <= 0.0 {
            return 0.0;
        }
        let range = if end.is_finite() { Interval::new(0.0, end) } else { Interval::from(0.0) };
        match range {
            Ok(r) => invert_monotone(|x| f(x), y, r, Tolerance::machine()).unwrap_or(f64::NAN),
            Err(_) => f64::NAN,
        }
    })
}

/// Builds a built-in distortion on `[0, x_g]`.
pub fn make_distortion(family: DistortionFamily, x_g: f64) -> Result<Distortion> {
    if !(x_g > 0.0) {
        return Err(Error::DomainMismatch(format!("generator zero x_G must be positive, got {x_g}")));
    }
    let positive = |a: f64| {
        if a > 0.0 && a.is_finite() {
            Ok(a)
        } else {
            Err(Error::BadParameter(format!("{} parameter must be positive, got {a}", family.name())))
        }
    };
    let mut d = match family {
        DistortionFamily::Linear(a) => {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::BadParameter(format!("linear slope must lie in (0, 1), got {a}")));
            }
            Distortion {
                label: format!("linear({a})"),
                family: Some(family),
                eval: arc(move |x| a * x),
                inverse: arc(move |y| y / a),
                hat_eval: arc(move |x| (1.0 - a) * x),
                hat_inverse: arc(move |y| y / (1.0 - a)),
                domain_end: x_g,
                beta_zero: Some(a),
                beta_inf: Some(a),
                sub_linear_limit: None,
                hat_inverse_quadratic: Some((0.0, 1.0 / (1.0 - a))),
            }
        }
        DistortionFamily::LogShift(a) => {
            let a = positive(a)?;
            let eval = arc(move |x: f64| x - (a * x).ln_1p() / a);
            Distortion {
                label: format!("logshift({a})"),
                family: Some(family),
                inverse: numeric_inverse(eval.clone(), x_g),
                eval,
                hat_eval: arc(move |x: f64| (a * x).ln_1p() / a),
                hat_inverse: arc(move |y: f64| (a * y).exp_m1() / a),
                domain_end: x_g,
                beta_zero: Some(0.0),
                beta_inf: Some(1.0),
                sub_linear_limit: None,
                hat_inverse_quadratic: None,
            }
        }
        DistortionFamily::SqrtComplement(a) => {
            let a = positive(a)?;
            // (sqrt(1 + a x) - 1)/a written without cancellation
            let shrink = move |x: f64| x / ((1.0 + a * x).sqrt() + 1.0);
            Distortion {
                label: format!("sqrtcomplement({a})"),
                family: Some(family),
                eval: arc(move |x| x - shrink(x)),
                inverse: arc(move |y| quadratic_root_preimage(a, y)),
                hat_eval: arc(shrink),
                hat_inverse: arc(move |y| a * y * y + 2.0 * y),
                domain_end: x_g,
                beta_zero: Some(0.5),
                beta_inf: Some(1.0),
                sub_linear_limit: None,
                hat_inverse_quadratic: Some((a, 2.0)),
            }
        }
        DistortionFamily::SqrtSimple(a) => {
            let a = positive(a)?;
            let shrink = move |x: f64| x / ((1.0 + a * x).sqrt() + 1.0);
            Distortion {
                label: format!("sqrtsimple({a})"),
                family: Some(family),
                eval: arc(shrink),
                inverse: arc(move |y| a * y * y + 2.0 * y),
                hat_eval: arc(move |x| x - shrink(x)),
                hat_inverse: arc(move |y| quadratic_root_preimage(a, y)),
                domain_end: x_g,
                beta_zero: Some(0.5),
                beta_inf: Some(0.0),
                // D(x) ~ sqrt(x/a): D(x)/x^(1-γ) -> inf, 1/sqrt(a), 0 for γ >, =, < 1/2
                sub_linear_limit: Some(arc(move |gamma| {
                    if (gamma - 0.5).abs() < 1e-12 {
                        1.0 / a.sqrt()
                    } else if gamma > 0.5 {
                        f64::INFINITY
                    } else {
                        0.0
                    }
                })),
                hat_inverse_quadratic: None,
            }
        }
        DistortionFamily::Table1 => Distortion {
            label: "table1".into(),
            family: Some(family),
            eval: arc(|x| x * x / (1.0 + x + (1.0 + 2.0 * x).sqrt())),
            inverse: arc(|y| y + (2.0 * y).sqrt()),
            hat_eval: arc(|x| 2.0 * x / ((1.0 + 2.0 * x).sqrt() + 1.0)),
            hat_inverse: arc(|y| 0.5 * y * y + y),
            domain_end: x_g,
            beta_zero: Some(0.0),
            beta_inf: Some(1.0),
            sub_linear_limit: None,
            hat_inverse_quadratic: Some((0.5, 1.0)),
        },
    };
    if x_g.is_finite() {
        d.label = format!("{}[x_G={x_g}]", d.label);
    }
    Ok(d)
}

// Preimage of y under x -> x - (sqrt(1 + a x) - 1)/a, i.e. (s² - 1)/a with
// s = (1 + sqrt(1 + 4 a y))/2, arranged to avoid cancellation.
fn quadratic_root_preimage(a: f64, y: f64) -> f64 {
    let r = (1.0 + 4.0 * a * y).sqrt();
    let s = 0.5 * (1.0 + r);
    (s + 1.0) * 2.0 * y / (r + 1.0)
}

impl Distortion {
    /// A distortion given only through `D̂⁻¹`; the other three maps are
    /// obtained by numeric inversion. Asymptotic slopes are unknown until
    /// declared with [`Distortion::with_betas`].
    pub fn from_hat_inverse<F>(label: impl Into<String>, hat_inverse: F, x_g: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(x_g > 0.0) {
            return Err(Error::DomainMismatch(format!("x_G must be positive, got {x_g}")));
        }
        let hat_inverse: RealFn = Arc::new(hat_inverse);
        // D̂ lives on [0, x_G]; its inverse is searched up to D̂(x_G), which we don't know
        // yet, so search the whole half-line and clamp.
        let hi = hat_inverse.clone();
        let hat_eval = arc(move |x: f64| {
            if x <= 0.0 {
                return 0.0;
            }
            invert_monotone(|y| hi(y), x, Interval::new(0.0, x).expect("x > 0"), Tolerance::machine()).unwrap_or(f64::NAN)
        });
        let he = hat_eval.clone();
        let eval = arc(move |x: f64| x - he(x));
        let inverse = numeric_inverse(eval.clone(), x_g);
        Ok(Distortion {
            label: label.into(),
            family: None,
            eval,
            inverse,
            hat_eval,
            hat_inverse,
            domain_end: x_g,
            beta_zero: None,
            beta_inf: None,
            sub_linear_limit: None,
            hat_inverse_quadratic: None,
        })
    }

    /// A distortion from all four maps in closed form.
    pub fn from_fns(
        label: impl Into<String>,
        eval: RealFn,
        inverse: RealFn,
        hat_eval: RealFn,
        hat_inverse: RealFn,
        x_g: f64,
    ) -> Result<Self> {
        if !(x_g > 0.0) {
            return Err(Error::DomainMismatch(format!("x_G must be positive, got {x_g}")));
        }
        Ok(Distortion {
            label: label.into(),
            family: None,
            eval,
            inverse,
            hat_eval,
            hat_inverse,
            domain_end: x_g,
            beta_zero: None,
            beta_inf: None,
            sub_linear_limit: None,
            hat_inverse_quadratic: None,
        })
    }

    /// The distortion with `D̂⁻¹(y) = a y² + b y`, where `a >= 0`, `b >= 1`
    /// and `(a, b) != (0, 1)`. With `H₃ = id` its bridge hazard is
    /// `a t² + (b - 1) t`.
    pub fn from_quadratic_hat_inverse(a: f64, b: f64, x_g: f64) -> Result<Self> {
        if !(a >= 0.0 && b >= 1.0 && a.is_finite() && b.is_finite()) || (a == 0.0 && b == 1.0) {
            return Err(Error::BadParameter(format!("quadratic D̂⁻¹ needs a >= 0, b >= 1, not both trivial; got a = {a}, b = {b}")));
        }
        if !(x_g > 0.0) {
            return Err(Error::DomainMismatch(format!("x_G must be positive, got {x_g}")));
        }
        let hat_eval = arc(move |x: f64| 2.0 * x / (b + (b * b + 4.0 * a * x).sqrt()));
        let he = hat_eval.clone();
        let eval = arc(move |x: f64| x - he(x));
        Ok(Distortion {
            label: format!("quadratic({a}, {b})"),
            family: None,
            inverse: numeric_inverse(eval.clone(), x_g),
            eval,
            hat_eval,
            hat_inverse: arc(move |y| a * y * y + b * y),
            domain_end: x_g,
            beta_zero: Some(1.0 - 1.0 / b),
            beta_inf: Some(if a > 0.0 { 1.0 } else { 1.0 - 1.0 / b }),
            sub_linear_limit: None,
            hat_inverse_quadratic: Some((a, b)),
        })
    }

    /// Declares `lim D(x)/x` at `0+` and at infinity.
    pub fn with_betas(mut self, beta_zero: Option<f64>, beta_inf: Option<f64>) -> Self {
        self.beta_zero = beta_zero;
        self.beta_inf = beta_inf;
        self
    }

    /// Declares `γ -> lim D(x)/x^(1-γ)` at infinity.
    pub fn with_sub_linear_limit<F: Fn(f64) -> f64 + Send + Sync + 'static>(mut self, f: F) -> Self {
        self.sub_linear_limit = Some(Arc::new(f));
        self
    }

    /// `z -> D(m z)/m`, the distortion paired with the generator `G(m z)`
    /// when two AMO copulas coincide.
    pub fn rescaled(&self, m: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::BadParameter(format!("rescaling factor must be positive, got {m}")));
        }
        let (e, i, he, hi) = (self.eval.clone(), self.inverse.clone(), self.hat_eval.clone(), self.hat_inverse.clone());
        Ok(Distortion {
            label: format!("{}[rescaled {m}]", self.label),
            family: if m == 1.0 { self.family } else { None },
            eval: arc(move |z| e(m * z) / m),
            inverse: arc(move |y| i(m * y) / m),
            hat_eval: arc(move |z| he(m * z) / m),
            hat_inverse: arc(move |y| hi(m * y) / m),
            domain_end: self.domain_end / m,
            beta_zero: self.beta_zero,
            beta_inf: self.beta_inf,
            sub_linear_limit: self.sub_linear_limit.clone().map(|l| arc(move |g| l(g) * m.powf(-g))),
            hat_inverse_quadratic: self.hat_inverse_quadratic.map(|(a, b)| (a * m, b)),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> Option<DistortionFamily> {
        self.family
    }

    pub fn domain_end(&self) -> f64 {
        self.domain_end
    }

    pub fn beta_zero(&self) -> Option<f64> {
        self.beta_zero
    }

    pub fn beta_inf(&self) -> Option<f64> {
        self.beta_inf
    }

    pub fn sub_linear_limit(&self, gamma: f64) -> Option<f64> {
        self.sub_linear_limit.as_ref().map(|f| f(gamma))
    }

    /// `(a, b)` when `D̂⁻¹(y) = a y² + b y`.
    pub fn hat_inverse_quadratic(&self) -> Option<(f64, f64)> {
        self.hat_inverse_quadratic
    }

    fn clamp_x(&self, x: f64) -> f64 {
        x.min(self.domain_end)
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x.is_infinite() {
            return f64::INFINITY;
        }
        (self.eval)(self.clamp_x(x))
    }

    pub fn inverse(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        if y.is_infinite() {
            return self.domain_end;
        }
        (self.inverse)(y).min(self.domain_end)
    }

    /// `D̂(x) = x - D(x)`.
    pub fn hat_eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x.is_infinite() {
            return f64::INFINITY;
        }
        (self.hat_eval)(self.clamp_x(x))
    }

    pub fn hat_inverse(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        if y.is_infinite() {
            return self.domain_end;
        }
        (self.hat_inverse)(y).min(self.domain_end)
    }

    /// `D(x_G)` (infinite for strict generators).
    pub fn at_end(&self) -> f64 {
        self.eval(self.domain_end)
    }

    /// `D̂(x_G)`.
    pub fn hat_at_end(&self) -> f64 {
        self.hat_eval(self.domain_end)
    }

    /// Checks `D(0) = 0`, `0 < D(x) < x`, and that `D` and `D̂` are strictly
    /// increasing on a log grid of `n` points inside the domain.
    pub fn probe_violations(&self, n: usize) -> Vec<String> {
        let mut out = Vec::new();
        if self.eval(0.0) != 0.0 {
            out.push("D(0) != 0".to_string());
        }
        let hi = if self.domain_end.is_finite() { self.domain_end } else { 1e6 };
        let grid = log_grid(hi * 1e-9, hi, n.max(2));
        let mut prev = (0.0, 0.0);
        for &x in &grid {
            let (d, dh) = (self.eval(x), self.hat_eval(x));
            if !(d > 0.0 && d < x) {
                out.push(format!("D({x}) = {d} not in (0, x)"));
            }
            if !(dh > 0.0 && dh < x) {
                out.push(format!("D̂({x}) = {dh} not in (0, x)"));
            }
            if d <= prev.0 || dh <= prev.1 {
                out.push(format!("D or D̂ not strictly increasing at {x}"));
            }
            prev = (d, dh);
        }
        out
    }
}

/// One cumulative hazard function `H` on `[0, inf)`.
#[derive(Clone)]
pub struct Hazard {
    label: String,
    eval: RealFn,
    inverse: Option<RealFn>,
    deriv: Option<RealFn>,
}

impl fmt::Debug for Hazard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hazard")
            .field("label", &self.label)
            .field("closed_inverse", &self.inverse.is_some())
            .field("closed_derivative", &self.deriv.is_some())
            .finish()
    }
}

impl Hazard {
    pub fn new<F: Fn(f64) -> f64 + Send + Sync + 'static>(label: impl Into<String>, eval: F) -> Self {
        Hazard { label: label.into(), eval: Arc::new(eval), inverse: None, deriv: None }
    }

    pub fn with_inverse<F: Fn(f64) -> f64 + Send + Sync + 'static>(mut self, inverse: F) -> Self {
        self.inverse = Some(Arc::new(inverse));
        self
    }

    pub fn with_derivative<F: Fn(f64) -> f64 + Send + Sync + 'static>(mut self, deriv: F) -> Self {
        self.deriv = Some(Arc::new(deriv));
        self
    }

    pub fn identity() -> Self {
        Hazard::new("id", |x| x).with_inverse(|y| y).with_derivative(|_| 1.0)
    }

    /// `H(x) = λ x`.
    pub fn linear(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::BadParameter(format!("hazard rate must be positive, got {lambda}")));
        }
        Ok(Hazard::new(format!("{lambda}*id"), move |x| lambda * x)
            .with_inverse(move |y| y / lambda)
            .with_derivative(move |_| lambda))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t.max(0.0))
    }

    /// `H⁻¹(y)`, numeric when no closed form was supplied.
    pub fn inverse(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        if y.is_infinite() {
            return f64::INFINITY;
        }
        match &self.inverse {
            Some(inv) => inv(y),
            None => invert_monotone(|t| self.eval(t), y, Interval::from(0.0).expect("valid"), Tolerance::machine())
                .unwrap_or(f64::NAN),
        }
    }

    /// `H'(t)`, numeric when no closed form was supplied.
    pub fn deriv(&self, t: f64) -> f64 {
        match &self.deriv {
            Some(d) => d(t),
            None => derivative(|s| self.eval(s), t.max(0.0), Interval::from(0.0).expect("valid"), Tolerance::derivative())
                .map(|d| d.value)
                .unwrap_or(f64::NAN),
        }
    }

    pub fn has_closed_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn has_closed_derivative(&self) -> bool {
        self.deriv.is_some()
    }
}

/// Cumulative hazards `(H₁, H₂, H₃)` of the idiosyncratic and systemic shocks.
#[derive(Debug, Clone)]
pub struct HazardTriple {
    h: [Hazard; 3],
    x_g: f64,
}

impl HazardTriple {
    /// Validates `H_i(0) = 0` and strict increase on a probe grid.
    pub fn new(h1: Hazard, h2: Hazard, h3: Hazard, x_g: f64) -> Result<Self> {
        if !(x_g > 0.0) {
            return Err(Error::DomainMismatch(format!("x_G must be positive, got {x_g}")));
        }
        for (i, h) in [&h1, &h2, &h3].into_iter().enumerate() {
            check_hazard(h, i + 1)?;
        }
        Ok(HazardTriple { h: [h1, h2, h3], x_g })
    }

    /// `H_i` for `i ∈ {1, 2, 3}`.
    pub fn get(&self, i: usize) -> &Hazard {
        &self.h[i - 1]
    }

    pub fn x_g(&self) -> f64 {
        self.x_g
    }

    /// `K_i = H_i + H₃` for `i ∈ {1, 2}`.
    pub fn k(&self, i: usize, t: f64) -> f64 {
        self.h[i - 1].eval(t) + self.h[2].eval(t)
    }

    /// `K_i⁻¹`, by numeric inversion.
    pub fn k_inverse(&self, i: usize, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        if y.is_infinite() {
            return f64::INFINITY;
        }
        invert_monotone(|t| self.k(i, t), y, Interval::from(0.0).expect("valid"), Tolerance::machine()).unwrap_or(f64::NAN)
    }

    /// `Ĥ = H₁ + H₂ + H₃`.
    pub fn total(&self, t: f64) -> f64 {
        self.h.iter().map(|h| h.eval(t)).sum()
    }
}

fn check_hazard(h: &Hazard, index: usize) -> Result<()> {
    let h0 = h.eval(0.0);
    if h0 != 0.0 {
        return Err(Error::DomainMismatch(format!("H{index}(0) = {h0}, expected 0")));
    }
    let mut prev = 0.0;
    for t in log_grid(1e-6, 1e6, 61) {
        let v = h.eval(t);
        if v == f64::INFINITY {
            break;
        }
        if !(v > prev) {
            return Err(Error::DomainMismatch(format!("H{index} not strictly increasing near t = {t}")));
        }
        prev = v;
    }
    Ok(())
}

/// Builds the unique hazards `H_i = D̂_i⁻¹∘H₃ - H₃` that reproduce the
/// distortions `D_i = H_i∘(H_i + H₃)⁻¹` for the given systemic hazard.
///
/// With a finite `x_G`, `H_i` is determined only up to the time at which
/// `H₃` reaches `D̂_i(x_G)`; beyond that point it is continued with unit
/// slope. The induced copula does not depend on the continuation.
pub fn hazards_from_distortions(d1: &Distortion, d2: &Distortion, h3: Hazard) -> Result<HazardTriple> {
    let x_g = d1.domain_end();
    if d2.domain_end() != x_g {
        return Err(Error::DomainMismatch(format!(
            "distortions live on different domains [0, {x_g}] and [0, {}]",
            d2.domain_end()
        )));
    }
    check_hazard(&h3, 3)?;
    if x_g.is_finite() {
        if !(h3.eval(1e12) >= x_g * (1.0 - 1e-9)) {
            return Err(Error::DomainMismatch(format!("H3 never reaches x_G = {x_g}")));
        }
    } else if !(h3.eval(1e12) > 1e3) {
        return Err(Error::DomainMismatch("H3 looks bounded while x_G is infinite".into()));
    }
    let h1 = bridge_hazard(d1, &h3, "H1");
    let h2 = bridge_hazard(d2, &h3, "H2");
    HazardTriple::new(h1, h2, h3, x_g)
}

fn bridge_hazard(d: &Distortion, h3: &Hazard, name: &str) -> Hazard {
    let x_g = d.domain_end();
    let (hat_end, d_end) = (d.hat_at_end(), d.at_end());
    let knot = if x_g.is_finite() { h3.inverse(hat_end) } else { f64::INFINITY };

    let (dd, h3c) = (d.clone(), h3.clone());
    let quad = d.hat_inverse_quadratic();
    let eval = move |t: f64| {
        if t > knot {
            return d_end + (t - knot);
        }
        let w = h3c.eval(t);
        match quad {
            Some((a, b)) => a * w * w + (b - 1.0) * w,
            None => dd.eval(dd.hat_inverse(w)),
        }
    };
    let (dd, h3c) = (d.clone(), h3.clone());
    let inverse = move |y: f64| {
        if y > d_end {
            return knot + (y - d_end);
        }
        h3c.inverse(dd.hat_eval(dd.inverse(y)))
    };
    let mut hz = Hazard::new(format!("{name} from {}", d.label()), eval).with_inverse(inverse);
    if let (Some((a, b)), Some(d3)) = (quad, h3.deriv.clone()) {
        let h3c = h3.clone();
        hz = hz.with_derivative(move |t| {
            if t > knot {
                1.0
            } else {
                (2.0 * a * h3c.eval(t) + b - 1.0) * d3(t)
            }
        });
    }
    hz
}

/// Recovers `D_i = H_i∘K_i⁻¹` (with `K_i = H_i + H₃`) from a hazard triple.
/// All four maps of each distortion go through numeric inversion of `K_i`.
pub fn distortions_from_hazards(h: &HazardTriple) -> Result<(Distortion, Distortion)> {
    let x_g = h.x_g();
    let make = |i: usize| -> Result<Distortion> {
        let (a, b, c, e) = (h.clone(), h.clone(), h.clone(), h.clone());
        Distortion::from_fns(
            format!("D{i} from hazards"),
            arc(move |x| a.get(i).eval(a.k_inverse(i, x))),
            arc(move |y| b.k(i, b.get(i).inverse(y))),
            arc(move |x| c.get(3).eval(c.k_inverse(i, x))),
            arc(move |y| e.k(i, e.get(3).inverse(y))),
            x_g,
        )
    };
    Ok((make(1)?, make(2)?))
}

fn t_domain_end(d1: &Distortion, d2: &Distortion) -> f64 {
    d1.hat_at_end().min(d2.hat_at_end())
}

/// `T(x) = D̂₁⁻¹(x) + D̂₂⁻¹(x) - x` on `[0, min(D̂₁(x_G), D̂₂(x_G))]`.
pub fn t_function(d1: &Distortion, d2: &Distortion, x: f64) -> Result<f64> {
    let end = t_domain_end(d1, d2);
    if !(x >= 0.0 && x <= end) {
        return Err(Error::DomainError(format!("T evaluated at {x} outside [0, {end}]")));
    }
    if let (Some((a1, b1)), Some((a2, b2))) = (d1.hat_inverse_quadratic(), d2.hat_inverse_quadratic()) {
        return Ok((a1 + a2) * x * x + (b1 + b2 - 1.0) * x);
    }
    Ok(d1.hat_inverse(x) + d2.hat_inverse(x) - x)
}

/// `T⁻¹(y)`: closed form when both `D̂_i⁻¹` are quadratics, otherwise a
/// bracketed search on `[0, y]` (valid because `T(x) >= x`).
pub fn t_inverse(d1: &Distortion, d2: &Distortion, y: f64) -> Result<f64> {
    if !(y >= 0.0) {
        return Err(Error::DomainError(format!("T⁻¹ evaluated at {y}")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    if let (Some((a1, b1)), Some((a2, b2))) = (d1.hat_inverse_quadratic(), d2.hat_inverse_quadratic()) {
        let (a, b) = (a1 + a2, b1 + b2 - 1.0);
        if y.is_infinite() {
            return Ok(f64::INFINITY);
        }
        return Ok(2.0 * y / (b + (b * b + 4.0 * a * y).sqrt()));
    }
    let end = t_domain_end(d1, d2);
    if y.is_infinite() {
        return Ok(end);
    }
    let hi = y.min(end);
    if hi <= 0.0 {
        return Ok(0.0);
    }
    let range = Interval::new(0.0, hi)?;
    let t = |x: f64| d1.hat_inverse(x) + d2.hat_inverse(x) - x;
    if t(hi) < y {
        return Err(Error::DomainError(format!("{y} beyond the range of T")));
    }
    invert_monotone(t, y, range, Tolerance::machine())
}
