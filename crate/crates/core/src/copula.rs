//! The AMO copula, its frontier and singular mass, the distribution-scale
//! joint model, and the equivalence test between two parametrisations.

use crate::distortions::{
    distortions_from_hazards, hazards_from_distortions, make_distortion, t_function, t_inverse, Distortion,
    DistortionFamily, Hazard, HazardTriple,
};
use crate::error::{Error, Result};
use crate::generators::{make_generator, Generator, GeneratorFamily};
use crate::numerics::{integrate, invert_monotone, log_grid, unit_grid, Interval, Tolerance};

/// Which frontier representation applies: `Case1` when `D₁(x_G) >= D₂(x_G)`
/// (always for strict generators), `Case2` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    Case1,
    Case2,
}

#[derive(Debug, Clone)]
pub struct AmoCopula {
    g: Generator,
    d1: Distortion,
    d2: Distortion,
    case: CaseTag,
}

impl AmoCopula {
    pub fn new(g: Generator, d1: Distortion, d2: Distortion) -> Result<Self> {
        let x_g = g.x_g();
        for (i, d) in [&d1, &d2].into_iter().enumerate() {
            if !same_end(d.domain_end(), x_g) {
                return Err(Error::DomainMismatch(format!(
                    "D{} lives on [0, {}] but x_G = {x_g}",
                    i + 1,
                    d.domain_end()
                )));
            }
        }
        let case = if x_g.is_infinite() || d1.at_end() >= d2.at_end() { CaseTag::Case1 } else { CaseTag::Case2 };
        Ok(AmoCopula { g, d1, d2, case })
    }

    pub fn from_families(g: GeneratorFamily, d1: DistortionFamily, d2: DistortionFamily) -> Result<Self> {
        let g = make_generator(g)?;
        let x_g = g.x_g();
        AmoCopula::new(g, make_distortion(d1, x_g)?, make_distortion(d2, x_g)?)
    }

    pub fn generator(&self) -> &Generator {
        &self.g
    }

    pub fn d1(&self) -> &Distortion {
        &self.d1
    }

    pub fn d2(&self) -> &Distortion {
        &self.d2
    }

    pub fn case_tag(&self) -> CaseTag {
        self.case
    }

    /// The two analytic branches `(G(D₁(x) + y), G(x + D₂(y)))`.
    pub fn branch_values(&self, u: f64, v: f64) -> (f64, f64) {
        let (x, y) = (self.g.inverse(u), self.g.inverse(v));
        (self.g.eval(self.d1.eval(x) + y), self.g.eval(x + self.d2.eval(y)))
    }

    /// `C(u, v)`. Below the frontier (`v <= h(u)`) the first branch applies,
    /// above it the second; equivalently the smaller of the two.
    pub fn evaluate(&self, u: f64, v: f64) -> f64 {
        let (u, v) = (u.clamp(0.0, 1.0), v.clamp(0.0, 1.0));
        if u == 0.0 || v == 0.0 {
            return 0.0;
        }
        if u == 1.0 {
            return v;
        }
        if v == 1.0 {
            return u;
        }
        let (x, y) = (self.g.inverse(u), self.g.inverse(v));
        let z = if self.d1.hat_eval(x) <= self.d2.hat_eval(y) { self.d1.eval(x) + y } else { x + self.d2.eval(y) };
        self.g.eval(z).clamp(0.0, u.min(v))
    }

    /// `h(u) = G(D̂₂⁻¹(min(D̂₁(x), D̂₂(x_G))))`: the frontier as a function of `u`.
    pub fn frontier(&self, u: f64) -> f64 {
        let x = self.g.inverse(u.clamp(0.0, 1.0));
        let w = self.d1.hat_eval(x).min(self.d2.hat_at_end());
        self.g.eval(self.d2.hat_inverse(w))
    }

    /// `ĥ(v) = G(D̂₁⁻¹(min(D̂₂(y), D̂₁(x_G))))`: the frontier as a function of `v`.
    pub fn frontier_hat(&self, v: f64) -> f64 {
        let y = self.g.inverse(v.clamp(0.0, 1.0));
        let w = self.d2.hat_eval(y).min(self.d1.hat_at_end());
        self.g.eval(self.d1.hat_inverse(w))
    }

    /// Mass of the frontier, `∫_0^{T⁻¹(x_G)} -G'(T(x)) dx`.
    pub fn singular_mass(&self) -> Result<f64> {
        self.singular_mass_with(Tolerance::quadrature())
    }

    pub fn singular_mass_with(&self, tol: Tolerance) -> Result<f64> {
        let (d1, d2, g) = (&self.d1, &self.d2, &self.g);
        let upper = t_inverse(d1, d2, g.x_g())?;
        let range = if upper.is_infinite() { Interval::from(0.0)? } else { Interval::new(0.0, upper)? };
        let f = |x: f64| match t_function(d1, d2, x) {
            Ok(t) => -g.deriv(t),
            Err(_) => 0.0,
        };
        Ok(integrate(f, range, tol)?.clamp(0.0, 1.0))
    }

    /// The representative distribution-scale model with `H₃ = id`.
    pub fn joint_model(&self) -> Result<JointModel> {
        self.joint_model_with(Hazard::identity())
    }

    pub fn joint_model_with(&self, h3: Hazard) -> Result<JointModel> {
        let h = hazards_from_distortions(&self.d1, &self.d2, h3)?;
        JointModel::new(self.g.clone(), h)
    }

    /// The same copula written with `G(m z)` and `D_i(m z)/m`.
    pub fn rescaled(&self, m: f64) -> Result<Self> {
        AmoCopula::new(self.g.scaled(m)?, self.d1.rescaled(m)?, self.d2.rescaled(m)?)
    }
}

fn same_end(a: f64, b: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        a == b
    } else {
        (a - b).abs() <= 1e-12 * a.abs().max(1.0)
    }
}

/// `(M₁, M₂)` on the distribution scale: a generator plus a hazard triple.
#[derive(Debug, Clone)]
pub struct JointModel {
    g: Generator,
    h: HazardTriple,
}

impl JointModel {
    pub fn new(g: Generator, h: HazardTriple) -> Result<Self> {
        if !same_end(g.x_g(), h.x_g()) {
            return Err(Error::DomainMismatch(format!("hazards built for x_G = {} but generator has {}", h.x_g(), g.x_g())));
        }
        Ok(JointModel { g, h })
    }

    pub fn generator(&self) -> &Generator {
        &self.g
    }

    pub fn hazards(&self) -> &HazardTriple {
        &self.h
    }

    /// `P(M₁ > t₁, M₂ > t₂) = G(H₁(t₁) + H₂(t₂) + H₃(max(t₁, t₂)))`.
    pub fn joint_survival(&self, t1: f64, t2: f64) -> f64 {
        let (t1, t2) = (t1.max(0.0), t2.max(0.0));
        let z = self.h.get(1).eval(t1) + self.h.get(2).eval(t2) + self.h.get(3).eval(t1.max(t2));
        self.g.eval(z)
    }

    /// `P(M_i > t) = G(K_i(t))`.
    pub fn margin_survival(&self, i: usize, t: f64) -> Result<f64> {
        if i != 1 && i != 2 {
            return Err(Error::BadParameter(format!("margin index must be 1 or 2, got {i}")));
        }
        Ok(self.g.eval(self.h.k(i, t.max(0.0))))
    }

    /// `P(M₁ <= t, M₂ <= t) = 1 + G(Ĥ(t)) - G(K₁(t)) - G(K₂(t))`.
    pub fn both_failed_by(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        if t.is_infinite() {
            return 1.0;
        }
        let g = &self.g;
        (1.0 + g.eval(self.h.total(t)) - g.eval(self.h.k(1, t)) - g.eval(self.h.k(2, t))).clamp(0.0, 1.0)
    }

    /// `P(M₁ = M₂ <= t) = -∫_0^t H₃'(x) G'(Ĥ(x)) dx`; `t` may be infinite.
    pub fn singular_component(&self, t: f64) -> Result<f64> {
        self.singular_component_with(t, Tolerance::quadrature())
    }

    pub fn singular_component_with(&self, t: f64, tol: Tolerance) -> Result<f64> {
        if t <= 0.0 {
            return Ok(0.0);
        }
        let mut upper = t;
        let x_g = self.g.x_g();
        if x_g.is_finite() {
            // beyond Ĥ⁻¹(x_G) the integrand vanishes
            let hit = invert_monotone(|s| self.h.total(s), x_g, Interval::from(0.0)?, Tolerance::machine())?;
            upper = upper.min(hit);
        }
        let range = if upper.is_infinite() { Interval::from(0.0)? } else { Interval::new(0.0, upper)? };
        let f = |x: f64| -self.h.get(3).deriv(x) * self.g.deriv(self.h.total(x));
        Ok(integrate(f, range, tol)?.clamp(0.0, 1.0))
    }

    /// The copula of `(M₁, M₂)`, with `D_i = H_i∘(H_i + H₃)⁻¹`.
    pub fn induced_copula(&self) -> Result<AmoCopula> {
        let (d1, d2) = distortions_from_hazards(&self.h)?;
        AmoCopula::new(self.g.clone(), d1, d2)
    }
}

/// Outcome of [`equivalence_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Equivalence {
    /// `G_B(z) = G_A(m z)` and `B_i(z) = A_i(m z)/m`.
    Equivalent { m: f64 },
    /// A point where the two copulas differ by `gap`.
    Distinct { u: f64, v: f64, gap: f64 },
}

const EQUIV_TOL: f64 = 1e-9;

/// Decides whether two parametrisations describe the same copula.
///
/// The rescaling `m` is read off at `z = 1` (or inside a finite support) and
/// the two coincidence conditions are then checked on `grid` points. When
/// they fail, the `(u, v)` grid is scanned for the largest disagreement.
pub fn equivalence_check(a: &AmoCopula, b: &AmoCopula, grid: usize) -> Equivalence {
    let grid = grid.max(2);
    let (ga, gb) = (a.generator(), b.generator());
    let z0 = if gb.x_g().is_finite() { 0.5 * gb.x_g() } else { 1.0 };
    let m = ga.inverse(gb.eval(z0)) / z0;
    if m.is_finite() && m > 0.0 && conditions_hold(a, b, m, grid) {
        return Equivalence::Equivalent { m };
    }
    let mut best = (0.5, 0.5, -1.0);
    for n in [grid, 4 * grid] {
        let pts = unit_grid(n);
        for &u in &pts {
            for &v in &pts {
                let gap = (a.evaluate(u, v) - b.evaluate(u, v)).abs();
                if gap > best.2 {
                    best = (u, v, gap);
                }
            }
        }
        if best.2 > 1e-8 {
            break;
        }
    }
    Equivalence::Distinct { u: best.0, v: best.1, gap: best.2 }
}

fn conditions_hold(a: &AmoCopula, b: &AmoCopula, m: f64, grid: usize) -> bool {
    let (ga, gb) = (a.generator(), b.generator());
    let end = gb.x_g();
    if !same_end(ga.x_g(), end * m) {
        return false;
    }
    let zs = if end.is_finite() {
        (1..=grid).map(|i| end * i as f64 / (grid + 1) as f64).collect::<Vec<_>>()
    } else {
        log_grid(1e-3, 1e3, grid)
    };
    let close = |p: f64, q: f64| (p - q).abs() <= EQUIV_TOL * p.abs().max(q.abs()).max(1.0);
    zs.iter().all(|&z| {
        close(gb.eval(z), ga.eval(m * z))
            && close(b.d1().eval(z), a.d1().eval(m * z) / m)
            && close(b.d2().eval(z), a.d2().eval(m * z) / m)
    })
}
