//! Archimedean generators `G` and the four built-in families.
//!
//! A [`Generator`] bundles `G`, its inverse and derivatives together with the
//! metadata the dependence analytics branch on: the first zero `x_G`, the
//! asymptotic decay class of `G` at infinity, the expansion of `1 - G` at
//! zero and, for completely monotone generators, the frailty law whose
//! Laplace transform is `G`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numerics::{integrate, invert_monotone, log_grid, Interval, Tolerance};
use crate::sampling::{FrailtyLaw, FrailtySpec};
use crate::RealFn;

/// Built-in generator families, parametrised as
///
/// * `Exponential`: `G(x) = exp(-x)`
/// * `Clayton(θ)`: `G(x) = (1 + x)^(-1/θ)` for `θ > 0`; for `θ ∈ (-1/2, 0)`
///   the finite-support form `G(x) = (1 - x)_+^(-1/θ)` is used
/// * `Gumbel(θ)`: `G(x) = exp(-x^(1/θ))`, `θ >= 1`
/// * `Frank(θ)`: `G(x) = -ln(1 + exp(-x)(exp(-θ) - 1)) / θ`, `θ > 0`
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorFamily {
    Exponential,
    Clayton(f64),
    Gumbel(f64),
    Frank(f64),
}

impl GeneratorFamily {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorFamily::Exponential => "exponential",
            GeneratorFamily::Clayton(_) => "clayton",
            GeneratorFamily::Gumbel(_) => "gumbel",
            GeneratorFamily::Frank(_) => "frank",
        }
    }

    pub fn parameter(&self) -> Option<f64> {
        match *self {
            GeneratorFamily::Exponential => None,
            GeneratorFamily::Clayton(t) | GeneratorFamily::Gumbel(t) | GeneratorFamily::Frank(t) => Some(t),
        }
    }

    /// Parses a family name plus optional parameter.
    pub fn parse(name: &str, theta: Option<f64>) -> Result<Self> {
        let need = |what: &str| theta.ok_or_else(|| Error::Config(format!("generator '{what}' needs a theta parameter")));
        match name.to_ascii_lowercase().as_str() {
            "exponential" | "exp" | "independence" => Ok(GeneratorFamily::Exponential),
            "clayton" => Ok(GeneratorFamily::Clayton(need("clayton")?)),
            "gumbel" => Ok(GeneratorFamily::Gumbel(need("gumbel")?)),
            "frank" => Ok(GeneratorFamily::Frank(need("frank")?)),
            other => Err(Error::Config(format!("unknown generator family '{other}'"))),
        }
    }
}

/// Asymptotic behaviour of `G(x)` as `x -> inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailDecay {
    /// `G(x) ~ c x^(-γ)`.
    Polynomial { c: f64, gamma: f64 },
    /// `G(x) ~ c exp(-a x^γ)`.
    Exponential { a: f64, c: f64, gamma: f64 },
    Unclassified,
}

/// `1 - G(x) ~ c x^γ` as `x -> 0+`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroExpansion {
    pub c: f64,
    pub gamma: f64,
}

#[derive(Clone)]
pub struct Generator {
    label: String,
    family: Option<GeneratorFamily>,
    scale: f64,
    eval: RealFn,
    inverse: RealFn,
    deriv: RealFn,
    second_deriv: Option<RealFn>,
    x_g: f64,
    completely_monotone: bool,
    infinity_decay: TailDecay,
    zero_expansion: Option<ZeroExpansion>,
    frailty: Option<FrailtySpec>,
    closed_form_tau: Option<f64>,
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Generator")
            .field("label", &self.label)
            .field("family", &self.family)
            .field("scale", &self.scale)
            .field("x_g", &self.x_g)
            .field("completely_monotone", &self.completely_monotone)
            .field("infinity_decay", &self.infinity_decay)
            .field("zero_expansion", &self.zero_expansion)
            .finish()
    }
}

fn arc<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> RealFn {
    Arc::new(f)
}

/// Builds a built-in generator.
pub fn make_generator(family: GeneratorFamily) -> Result<Generator> {
    let inf = f64::INFINITY;
    let g = match family {
        GeneratorFamily::Exponential => Generator {
            label: "exponential".into(),
            family: Some(family),
            scale: 1.0,
            eval: arc(|x| (-x).exp()),
            inverse: arc(|u| -u.ln()),
            deriv: arc(|x| -(-x).exp()),
            second_deriv: Some(arc(|x| (-x).exp())),
            x_g: inf,
            completely_monotone: true,
            infinity_decay: TailDecay::Exponential { a: 1.0, c: 1.0, gamma: 1.0 },
            zero_expansion: Some(ZeroExpansion { c: 1.0, gamma: 1.0 }),
            frailty: Some(FrailtySpec::new(FrailtyLaw::Degenerate)),
            closed_form_tau: Some(0.0),
        },
        GeneratorFamily::Clayton(theta) if theta > 0.0 && theta.is_finite() => {
            let p = 1.0 / theta;
            Generator {
                label: format!("clayton(theta={theta})"),
                family: Some(family),
                scale: 1.0,
                eval: arc(move |x| (1.0 + x).powf(-p)),
                inverse: arc(move |u| u.powf(-theta) - 1.0),
                deriv: arc(move |x| -p * (1.0 + x).powf(-p - 1.0)),
                second_deriv: Some(arc(move |x| p * (p + 1.0) * (1.0 + x).powf(-p - 2.0))),
                x_g: inf,
                completely_monotone: true,
                infinity_decay: TailDecay::Polynomial { c: 1.0, gamma: p },
                zero_expansion: Some(ZeroExpansion { c: p, gamma: 1.0 }),
                frailty: Some(FrailtySpec::new(FrailtyLaw::Gamma { shape: p })),
                closed_form_tau: Some(theta / (theta + 2.0)),
            }
        }
        GeneratorFamily::Clayton(theta) if theta > -0.5 && theta < 0.0 => {
            // Finite support x_G = 1; 3-monotone but not completely monotone.
            let p = -1.0 / theta;
            Generator {
                label: format!("clayton(theta={theta})"),
                family: Some(family),
                scale: 1.0,
                eval: arc(move |x| (1.0 - x).max(0.0).powf(p)),
                inverse: arc(move |u| 1.0 - u.powf(-theta)),
                deriv: arc(move |x| -p * (1.0 - x).max(0.0).powf(p - 1.0)),
                second_deriv: Some(arc(move |x| p * (p - 1.0) * (1.0 - x).max(0.0).powf(p - 2.0))),
                x_g: 1.0,
                completely_monotone: false,
                infinity_decay: TailDecay::Unclassified,
                zero_expansion: Some(ZeroExpansion { c: p, gamma: 1.0 }),
                frailty: None,
                closed_form_tau: Some(theta / (theta + 2.0)),
            }
        }
        GeneratorFamily::Clayton(theta) => {
            return Err(Error::BadParameter(format!(
                "clayton theta must be > 0 (or in (-1/2, 0) for the finite-support form), got {theta}"
            )))
        }
        GeneratorFamily::Gumbel(theta) if theta >= 1.0 && theta.is_finite() => {
            let p = 1.0 / theta;
            Generator {
                label: format!("gumbel(theta={theta})"),
                family: Some(family),
                scale: 1.0,
                eval: arc(move |x| (-x.powf(p)).exp()),
                inverse: arc(move |u| (-u.ln()).powf(theta)),
                deriv: arc(move |x| -p * x.powf(p - 1.0) * (-x.powf(p)).exp()),
                second_deriv: Some(arc(move |x| {
                    (p * p * x.powf(2.0 * p - 2.0) - p * (p - 1.0) * x.powf(p - 2.0)) * (-x.powf(p)).exp()
                })),
                x_g: inf,
                completely_monotone: true,
                infinity_decay: TailDecay::Exponential { a: 1.0, c: 1.0, gamma: p },
                zero_expansion: Some(ZeroExpansion { c: 1.0, gamma: p }),
                frailty: Some(FrailtySpec::new(FrailtyLaw::PositiveStable { index: p })),
                closed_form_tau: Some(1.0 - p),
            }
        }
        GeneratorFamily::Gumbel(theta) => {
            return Err(Error::BadParameter(format!("gumbel theta must be >= 1, got {theta}")))
        }
        GeneratorFamily::Frank(theta) if theta > 0.0 && theta.is_finite() => {
            let q = -(-theta).exp_m1(); // 1 - e^{-θ}
            Generator {
                label: format!("frank(theta={theta})"),
                family: Some(family),
                scale: 1.0,
                // 1 - q e^{-x} = -expm1(-x) + e^{-θ-x} keeps precision near x = 0
                eval: arc(move |x| {
                    if x < 1.0 {
                        -((-x).exp_m1().abs() + (-theta - x).exp()).ln() / theta
                    } else {
                        -(-q * (-x).exp()).ln_1p() / theta
                    }
                }),
                inverse: arc(move |u| (-(-theta).exp()).ln_1p() - (-(-theta * u).exp()).ln_1p()),
                deriv: arc(move |x| {
                    let w = q * (-x).exp();
                    -w / (theta * (1.0 - w))
                }),
                second_deriv: Some(arc(move |x| {
                    let w = q * (-x).exp();
                    w / (theta * (1.0 - w) * (1.0 - w))
                })),
                x_g: inf,
                completely_monotone: true,
                infinity_decay: TailDecay::Exponential { a: 1.0, c: q / theta, gamma: 1.0 },
                zero_expansion: Some(ZeroExpansion { c: theta.exp_m1() / theta, gamma: 1.0 }),
                frailty: Some(FrailtySpec::new(FrailtyLaw::LogarithmicSeries { p: q })),
                closed_form_tau: None,
            }
        }
        GeneratorFamily::Frank(theta) => {
            return Err(Error::BadParameter(format!(
                "frank theta must be > 0: negative parameters are not completely monotone and do not \
                 define a valid 3-variate Archimedean copula (got {theta})"
            )))
        }
    };
    Ok(g)
}

impl Generator {
    /// A user-supplied generator. The inverse is obtained numerically unless
    /// [`Generator::with_inverse`] provides one; all metadata defaults to
    /// "unknown".
    pub fn custom<G, D>(label: impl Into<String>, eval: G, deriv: D, x_g: f64) -> Result<Self>
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(x_g > 0.0) {
            return Err(Error::BadParameter(format!("x_G must be positive, got {x_g}")));
        }
        let eval: RealFn = Arc::new(eval);
        let fwd = eval.clone();
        let range = if x_g.is_finite() { Interval::new(0.0, x_g)? } else { Interval::from(0.0)? };
        let inverse = arc(move |u| invert_monotone(|x| fwd(x), u, range, Tolerance::machine()).unwrap_or(f64::NAN));
        Ok(Generator {
            label: label.into(),
            family: None,
            scale: 1.0,
            eval,
            inverse,
            deriv: Arc::new(deriv),
            second_deriv: None,
            x_g,
            completely_monotone: false,
            infinity_decay: TailDecay::Unclassified,
            zero_expansion: None,
            frailty: None,
            closed_form_tau: None,
        })
    }

    pub fn with_inverse<F: Fn(f64) -> f64 + Send + Sync + 'static>(mut self, inverse: F) -> Self {
        self.inverse = Arc::new(inverse);
        self
    }

    pub fn with_second_derivative<F: Fn(f64) -> f64 + Send + Sync + 'static>(mut self, d2: F) -> Self {
        self.second_deriv = Some(Arc::new(d2));
        self
    }

    pub fn with_infinity_decay(mut self, decay: TailDecay) -> Self {
        self.infinity_decay = decay;
        self
    }

    pub fn with_zero_expansion(mut self, expansion: ZeroExpansion) -> Self {
        self.zero_expansion = Some(expansion);
        self
    }

    /// Declares `G` to be the Laplace transform of `frailty`, which makes it
    /// completely monotone and eligible for sampling.
    pub fn with_frailty(mut self, frailty: FrailtySpec) -> Self {
        self.frailty = Some(frailty);
        self.completely_monotone = true;
        self
    }

    pub fn with_closed_form_tau(mut self, tau: f64) -> Self {
        self.closed_form_tau = Some(tau);
        self
    }

    /// The generator `z -> G(m z)`. It induces the same Archimedean copula
    /// but, paired with non-linear distortions, a different AMO copula.
    pub fn scaled(&self, m: f64) -> Result<Self> {
        if !(m > 0.0) || !m.is_finite() {
            return Err(Error::BadParameter(format!("scale factor must be positive, got {m}")));
        }
        let (e, i, d) = (self.eval.clone(), self.inverse.clone(), self.deriv.clone());
        let second = self.second_deriv.clone().map(|d2| arc(move |x| m * m * d2(m * x)));
        let infinity_decay = match self.infinity_decay {
            TailDecay::Polynomial { c, gamma } => TailDecay::Polynomial { c: c * m.powf(-gamma), gamma },
            TailDecay::Exponential { a, c, gamma } => TailDecay::Exponential { a: a * m.powf(gamma), c, gamma },
            TailDecay::Unclassified => TailDecay::Unclassified,
        };
        Ok(Generator {
            label: if self.scale * m == 1.0 { self.base_label() } else { format!("{}[scale={}]", self.base_label(), self.scale * m) },
            family: self.family,
            scale: self.scale * m,
            eval: arc(move |x| e(m * x)),
            inverse: arc(move |u| i(u) / m),
            deriv: arc(move |x| m * d(m * x)),
            second_deriv: second,
            x_g: self.x_g / m,
            completely_monotone: self.completely_monotone,
            infinity_decay,
            zero_expansion: self.zero_expansion.map(|z| ZeroExpansion { c: z.c * m.powf(z.gamma), gamma: z.gamma }),
            frailty: self.frailty.map(|f| f.rescaled(m)),
            closed_form_tau: self.closed_form_tau,
        })
    }

    fn base_label(&self) -> String {
        match self.label.find("[scale=") {
            Some(i) => self.label[..i].to_string(),
            None => self.label.clone(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> Option<GeneratorFamily> {
        self.family
    }

    /// The factor `m` in `G(m x)` relative to the family's base form.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `G(x)`; `1` for `x <= 0` and `0` from `x_G` on.
    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            1.0
        } else if x >= self.x_g {
            0.0
        } else {
            (self.eval)(x)
        }
    }

    /// `G^{-1}(u)` with `G^{-1}(0) = x_G`.
    pub fn inverse(&self, u: f64) -> f64 {
        if u >= 1.0 {
            0.0
        } else if u <= 0.0 {
            self.x_g
        } else {
            (self.inverse)(u)
        }
    }

    /// `G'(x)`, zero from `x_G` on.
    pub fn deriv(&self, x: f64) -> f64 {
        if x >= self.x_g {
            0.0
        } else {
            (self.deriv)(x)
        }
    }

    pub fn second_deriv(&self, x: f64) -> Option<f64> {
        self.second_deriv.as_ref().map(|d| if x >= self.x_g { 0.0 } else { d(x) })
    }

    pub fn x_g(&self) -> f64 {
        self.x_g
    }

    pub fn is_strict(&self) -> bool {
        self.x_g.is_infinite()
    }

    pub fn completely_monotone(&self) -> bool {
        self.completely_monotone
    }

    pub fn infinity_decay(&self) -> TailDecay {
        self.infinity_decay
    }

    pub fn zero_expansion(&self) -> Option<ZeroExpansion> {
        self.zero_expansion
    }

    pub fn frailty(&self) -> Option<FrailtySpec> {
        self.frailty
    }

    pub fn closed_form_tau(&self) -> Option<f64> {
        self.closed_form_tau
    }

    /// The Archimedean copula `G(G^{-1}(u) + G^{-1}(v))`.
    pub fn archimedean(&self, u: f64, v: f64) -> f64 {
        if u <= 0.0 || v <= 0.0 {
            return 0.0;
        }
        self.eval(self.inverse(u) + self.inverse(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    NotNormalized,
    NotDecreasing,
    DerivativePositive,
    DerivativeDecreasing,
    DerivativeNotConcave,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub x: f64,
    pub message: String,
}

/// Checks the generator assumptions on a probe grid: `G(0) = 1`, `G`
/// strictly decreasing before `x_G`, and `G'` non-positive, non-decreasing
/// and concave.
///
/// The grid is `probe_count` log-spaced points on `[1e-3, 1e3]`, plus, for a
/// finite `x_G`, `probe_count` evenly spaced points on `(0, 2 x_G]` so that a
/// kink at `x_G` is straddled.
pub fn validate_generator(g: &Generator, probe_count: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    let g0 = (g.eval)(0.0);
    if (g0 - 1.0).abs() > 1e-12 {
        out.push(Violation { kind: ViolationKind::NotNormalized, x: 0.0, message: format!("G(0) = {g0}, expected 1") });
    }
    let n = probe_count.max(3);
    let mut grid = log_grid(1e-3, 1e3, n);
    if g.x_g().is_finite() {
        let xg = g.x_g();
        grid.extend((1..=n).map(|k| 2.0 * xg * k as f64 / n as f64));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * b.abs());

    let vals: Vec<f64> = grid.iter().map(|&x| g.eval(x)).collect();
    let ders: Vec<f64> = grid.iter().map(|&x| g.deriv(x)).collect();

    for k in 0..grid.len() {
        if ders[k] > 0.0 {
            out.push(Violation {
                kind: ViolationKind::DerivativePositive,
                x: grid[k],
                message: format!("G'({}) = {} > 0", grid[k], ders[k]),
            });
        }
    }
    for k in 0..grid.len().saturating_sub(1) {
        let (x0, x1) = (grid[k], grid[k + 1]);
        let increases = vals[k + 1] > vals[k];
        let stalls = x1 < g.x_g() && vals[k] > 0.0 && vals[k + 1] == vals[k];
        if increases || stalls {
            out.push(Violation {
                kind: ViolationKind::NotDecreasing,
                x: x1,
                message: format!("G not strictly decreasing between {x0} and {x1}"),
            });
        }
        let tol = 1e-12 * ders[k].abs().max(ders[k + 1].abs());
        if ders[k + 1] < ders[k] - tol {
            out.push(Violation {
                kind: ViolationKind::DerivativeDecreasing,
                x: x1,
                message: format!("G' decreases between {x0} and {x1}"),
            });
        }
    }
    for k in 1..grid.len().saturating_sub(1) {
        let (x0, x1, x2) = (grid[k - 1], grid[k], grid[k + 1]);
        let w = (x1 - x0) / (x2 - x0);
        let chord = ders[k - 1] + w * (ders[k + 1] - ders[k - 1]);
        let tol = 1e-9 * (ders[k - 1].abs() + ders[k + 1].abs()) + 1e-300;
        if ders[k] < chord - tol {
            out.push(Violation {
                kind: ViolationKind::DerivativeNotConcave,
                x: x1,
                message: format!("G' concavity undetermined at kink near x = {x1}"),
            });
        }
    }
    out
}

/// Kendall's function of the Archimedean copula with generator `G`:
/// `K_G(t) = t - G'(G^{-1}(t)) G^{-1}(t)`. Returns `0` at `t = 0`.
pub fn kendall_function_base(g: &Generator, t: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::DomainError(format!("Kendall function argument {t} not in [0, 1]")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let x = g.inverse(t);
    if x == 0.0 {
        return Ok(t);
    }
    Ok((t - g.deriv(x) * x).clamp(t, 1.0))
}

/// Kendall's tau of the Archimedean copula with generator `G`; the family's
/// closed form when one is known, otherwise `3 - 4 ∫ K_G`.
pub fn kendall_tau_base(g: &Generator) -> Result<f64> {
    match g.closed_form_tau() {
        Some(t) => Ok(t),
        None => kendall_tau_base_quadrature(g, Tolerance::quadrature()),
    }
}

/// `3 - 4 ∫_0^1 K_G(t) dt` by quadrature, regardless of closed forms.
pub fn kendall_tau_base_quadrature(g: &Generator, tol: Tolerance) -> Result<f64> {
    let k = |t: f64| kendall_function_base(g, t).unwrap_or(f64::NAN);
    let integral = integrate(k, Interval::new(0.0, 1.0)?, tol)?;
    Ok(3.0 - 4.0 * integral)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(f: GeneratorFamily) -> Generator {
        make_generator(f).unwrap()
    }

    #[test]
    fn clayton_point_value() {
        let g = gen(GeneratorFamily::Clayton(2.0));
        assert!((g.eval(1.5) - 2.5f64.powf(-0.5)).abs() < 1e-15);
        assert!((g.eval(1.5) - 0.632456).abs() < 1e-6);
    }

    #[test]
    fn exponential_inverse_boundary() {
        let g = gen(GeneratorFamily::Exponential);
        assert_eq!(g.inverse(1.0), 0.0);
        assert!((g.inverse(0.5) - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(g.inverse(0.0), f64::INFINITY);
    }

    #[test]
    fn frank_normalised() {
        assert_eq!(gen(GeneratorFamily::Frank(4.0)).eval(0.0), 1.0);
        assert!((gen(GeneratorFamily::Frank(4.0)).eval(1e-300) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bad_parameters_rejected() {
        for f in [
            GeneratorFamily::Clayton(0.0),
            GeneratorFamily::Clayton(-0.7),
            GeneratorFamily::Gumbel(0.9),
            GeneratorFamily::Frank(-1.0),
            GeneratorFamily::Frank(0.0),
        ] {
            assert!(matches!(make_generator(f), Err(Error::BadParameter(_))), "{f:?}");
        }
    }

    #[test]
    fn negative_clayton_has_finite_support() {
        let g = gen(GeneratorFamily::Clayton(-0.25));
        assert_eq!(g.x_g(), 1.0);
        assert!(!g.completely_monotone());
        assert!(g.frailty().is_none());
        assert_eq!(g.eval(1.0), 0.0);
        assert_eq!(g.eval(3.0), 0.0);
        assert_eq!(g.inverse(0.0), 1.0);
        assert!(validate_generator(&g, 100).is_empty(), "{:?}", validate_generator(&g, 100));
    }

    #[test]
    fn inverse_round_trip_all_families() {
        for f in [
            GeneratorFamily::Exponential,
            GeneratorFamily::Clayton(0.5),
            GeneratorFamily::Clayton(2.0),
            GeneratorFamily::Clayton(-0.3),
            GeneratorFamily::Gumbel(1.0),
            GeneratorFamily::Gumbel(2.5),
            GeneratorFamily::Frank(0.5),
            GeneratorFamily::Frank(4.0),
            GeneratorFamily::Frank(30.0),
        ] {
            let g = gen(f);
            for k in 1..100 {
                let u = k as f64 / 100.0;
                assert!((g.eval(g.inverse(u)) - u).abs() < 1e-9, "{f:?} at {u}");
            }
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        use crate::numerics::{derivative, Interval, Tolerance};
        for f in [
            GeneratorFamily::Exponential,
            GeneratorFamily::Clayton(2.0),
            GeneratorFamily::Gumbel(1.7),
            GeneratorFamily::Frank(4.0),
        ] {
            let g = gen(f);
            for x in [0.3, 1.0, 4.0] {
                let num = derivative(|y| g.eval(y), x, Interval::from(0.0).unwrap(), Tolerance::derivative()).unwrap();
                assert!((num.value - g.deriv(x)).abs() < 1e-8, "{f:?} G' at {x}");
                let num2 = derivative(|y| g.deriv(y), x, Interval::from(0.0).unwrap(), Tolerance::derivative()).unwrap();
                assert!((num2.value - g.second_deriv(x).unwrap()).abs() < 1e-7, "{f:?} G'' at {x}");
            }
        }
    }

    #[test]
    fn validation_accepts_builtins() {
        for f in [
            GeneratorFamily::Clayton(2.0),
            GeneratorFamily::Gumbel(1.0),
            GeneratorFamily::Gumbel(3.0),
            GeneratorFamily::Frank(4.0),
            GeneratorFamily::Exponential,
        ] {
            let v = validate_generator(&gen(f), 100);
            assert!(v.is_empty(), "{f:?}: {v:?}");
        }
    }

    #[test]
    fn validation_flags_kink() {
        let g = Generator::custom("1-x", |x| 1.0 - x, |x| if x < 1.0 { -1.0 } else { 0.0 }, 1.0).unwrap();
        let v = validate_generator(&g, 100);
        let kink: Vec<_> = v.iter().filter(|v| v.kind == ViolationKind::DerivativeNotConcave).collect();
        assert!(!kink.is_empty(), "{v:?}");
        assert!(kink.iter().all(|v| (v.x - 1.0).abs() < 0.1), "{kink:?}");
        assert!(kink[0].message.contains("concavity undetermined at kink"));
    }

    #[test]
    fn validation_flags_wrong_normalisation_and_sign() {
        let g = Generator::custom("bad", |x: f64| 2.0 * (-x).exp(), |x: f64| (-x).exp(), f64::INFINITY).unwrap();
        let v = validate_generator(&g, 20);
        assert!(v.iter().any(|v| v.kind == ViolationKind::NotNormalized));
        assert!(v.iter().any(|v| v.kind == ViolationKind::DerivativePositive));
    }

    #[test]
    fn custom_generator_numeric_inverse() {
        let g = Generator::custom("clayton-like", |x: f64| 1.0 / (1.0 + x), |x: f64| -1.0 / ((1.0 + x) * (1.0 + x)), f64::INFINITY)
            .unwrap();
        assert!((g.inverse(0.25) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn kendall_function_reference_values() {
        let frank = gen(GeneratorFamily::Frank(4.0));
        let gumbel = gen(GeneratorFamily::Gumbel(2.0));
        assert!((kendall_function_base(&frank, 0.3).unwrap() - 0.497).abs() < 5e-4);
        // K(t) = t - t ln(t)/θ for Gumbel
        let exact = 0.3 - 0.3 * 0.3f64.ln() / 2.0;
        assert!((kendall_function_base(&gumbel, 0.3).unwrap() - exact).abs() < 1e-14);
        for g in [&frank, &gumbel] {
            assert_eq!(kendall_function_base(g, 1.0).unwrap(), 1.0);
            assert_eq!(kendall_function_base(g, 0.0).unwrap(), 0.0);
            assert!(kendall_function_base(g, 1.2).is_err());
        }
    }

    #[test]
    fn kendall_function_dominates_identity() {
        for f in [GeneratorFamily::Clayton(1.0), GeneratorFamily::Gumbel(2.0), GeneratorFamily::Frank(4.0)] {
            let g = gen(f);
            for k in 1..=100 {
                let t = k as f64 / 100.0;
                assert!(kendall_function_base(&g, t).unwrap() >= t);
            }
        }
    }

    #[test]
    fn kendall_tau_base_values() {
        assert_eq!(kendall_tau_base(&gen(GeneratorFamily::Clayton(2.0))).unwrap(), 0.5);
        assert_eq!(kendall_tau_base(&gen(GeneratorFamily::Exponential)).unwrap(), 0.0);
        let frank = kendall_tau_base(&gen(GeneratorFamily::Frank(4.0))).unwrap();
        assert!((frank - 0.388).abs() < 5e-4, "{frank}");
        // Debye-function closed form: 1 - 4/θ (1 - D_1(θ)); D_1(4) from an independent high-precision run.
        assert!((frank - 0.38814802129793).abs() < 1e-8, "{frank}");
    }

    #[test]
    fn kendall_tau_closed_forms_match_quadrature() {
        for theta in [0.5, 1.0, 2.0, 5.0] {
            let g = gen(GeneratorFamily::Clayton(theta));
            let q = kendall_tau_base_quadrature(&g, Tolerance::quadrature()).unwrap();
            assert!((q - theta / (theta + 2.0)).abs() < 1e-8, "clayton {theta}: {q}");
        }
        for theta in [1.0, 1.8, 3.0] {
            let g = gen(GeneratorFamily::Gumbel(theta));
            let q = kendall_tau_base_quadrature(&g, Tolerance::quadrature()).unwrap();
            assert!((q - (1.0 - 1.0 / theta)).abs() < 1e-6, "gumbel {theta}: {q}");
        }
        let q = kendall_tau_base_quadrature(&gen(GeneratorFamily::Exponential), Tolerance::quadrature()).unwrap();
        assert!(q.abs() < 1e-8);
    }

    #[test]
    fn scaling_transforms_metadata() {
        let g = gen(GeneratorFamily::Clayton(2.0));
        let s = g.scaled(3.0).unwrap();
        assert!((s.eval(1.0) - g.eval(3.0)).abs() < 1e-15);
        assert!((s.inverse(0.4) - g.inverse(0.4) / 3.0).abs() < 1e-15);
        assert!((s.deriv(0.7) - 3.0 * g.deriv(2.1)).abs() < 1e-15);
        assert_eq!(s.scale(), 3.0);
        assert!(s.label().contains("scale=3"));
        match s.infinity_decay() {
            TailDecay::Polynomial { gamma, .. } => assert_eq!(gamma, 0.5),
            other => panic!("{other:?}"),
        }
        assert!(g.scaled(0.0).is_err());
        let back = s.scaled(1.0 / 3.0).unwrap();
        assert_eq!(back.label(), g.label());
    }
}
