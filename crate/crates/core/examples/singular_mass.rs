//! Mass on the frontier curve, as a number and as a distribution over time.

use amo::{AmoCopula, Distortion, DistortionFamily, GeneratorFamily, Hazard, HazardTriple, JointModel};

fn main() -> amo::Result<()> {
    // linear distortions with slope 1/(2c + 1) put mass c/(c + 1) on the frontier for any generator
    for c in [0.25, 0.5, 1.0, 2.0] {
        let a = 1.0 / (2.0 * c + 1.0);
        let d = DistortionFamily::Linear(a);
        for g in [GeneratorFamily::Clayton(2.0), GeneratorFamily::Gumbel(2.0), GeneratorFamily::Frank(4.0)] {
            let copula = AmoCopula::from_families(g, d, d)?;
            println!("c = {c:<4} {:<8} mass {:.10} (c/(c+1) = {:.10})", g.name(), copula.singular_mass()?, c / (c + 1.0));
        }
    }

    // a curved distortion with D^-1 hat quadratic: mass 1/(2 + theta) under Clayton
    let d = Distortion::from_quadratic_hat_inverse(0.5, 1.5, f64::INFINITY)?;
    let g = amo::make_generator(GeneratorFamily::Clayton(2.0))?;
    let copula = AmoCopula::new(g.clone(), d.clone(), d)?;
    println!("\nquadratic bridge, clayton(2): mass {:.10}", copula.singular_mass()?);

    // the same model in hazard form, with the time profile of simultaneous failures
    let h = Hazard::new("(t^2 + t)/2", |t: f64| 0.5 * (t * t + t));
    let model = JointModel::new(g, HazardTriple::new(h.clone(), h, Hazard::identity(), f64::INFINITY)?)?;
    for t in [0.1, 0.5, 1.0, 2.0, 5.0, f64::INFINITY] {
        println!("  P(simultaneous failure by {t:>4}) = {:.8}", model.singular_component(t)?);
    }
    Ok(())
}
