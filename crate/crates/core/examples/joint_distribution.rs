//! The exchangeable-frailty shock model on the time scale.

use amo::{AmoCopula, DistortionFamily, GeneratorFamily, Hazard};

fn main() -> amo::Result<()> {
    let c = AmoCopula::from_families(GeneratorFamily::Clayton(1.5), DistortionFamily::Linear(0.4), DistortionFamily::Table1)?;
    // systemic shocks arrive twice as fast as the unit rate
    let model = c.joint_model_with(Hazard::linear(2.0)?)?;

    println!("  t1   t2   P(M1>t1, M2>t2)  P(M1>t1)  P(M2>t2)");
    for (t1, t2) in [(0.1, 0.1), (0.5, 0.2), (1.0, 1.0), (2.0, 0.5)] {
        println!(
            "{t1:>4} {t2:>4} {:>17.6} {:>9.6} {:>9.6}",
            model.joint_survival(t1, t2),
            model.margin_survival(1, t1)?,
            model.margin_survival(2, t2)?
        );
    }
    println!();
    for t in [0.5, 1.0, 5.0] {
        println!("P(both failed by {t}) = {:.6}, P(simultaneous by {t}) = {:.6}", model.both_failed_by(t), model.singular_component(t)?);
    }

    // the time-scale model induces the same copula whatever the systemic hazard
    let induced = model.induced_copula()?;
    println!("\nC(0.4, 0.6): from the model {:.10}, direct {:.10}", induced.evaluate(0.4, 0.6), c.evaluate(0.4, 0.6));
    Ok(())
}
