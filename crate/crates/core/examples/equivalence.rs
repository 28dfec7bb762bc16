//! Decide whether two parametrisations describe the same copula.

use amo::{equivalence_check, make_distortion, make_generator, AmoCopula, DistortionFamily, Equivalence, GeneratorFamily};

fn report(label: &str, e: Equivalence) {
    match e {
        Equivalence::Equivalent { m } => println!("{label}: equivalent, G_B(z) = G_A(m z) with m = {m:.9}"),
        Equivalence::Distinct { u, v, gap } => println!("{label}: distinct, |C_A - C_B| = {gap:.3e} at ({u:.3}, {v:.3})"),
    }
}

fn main() -> amo::Result<()> {
    let a = AmoCopula::from_families(GeneratorFamily::Clayton(2.0), DistortionFamily::Table1, DistortionFamily::Table1)?;

    // scaling the generator by m and the distortions accordingly leaves the copula unchanged
    report("clayton vs its rescaling by 3", equivalence_check(&a, &a.rescaled(3.0)?, 40));

    // linear distortions commute with scaling, so only the generator needs to change
    let lin = make_distortion(DistortionFamily::Linear(0.5), f64::INFINITY)?;
    let b1 = AmoCopula::new(make_generator(GeneratorFamily::Clayton(2.0))?, lin.clone(), lin.clone())?;
    let b2 = AmoCopula::new(make_generator(GeneratorFamily::Clayton(2.0))?.scaled(0.25)?, lin.clone(), lin)?;
    report("linear pair, generator scaled by 1/4", equivalence_check(&b1, &b2, 40));

    let f = AmoCopula::from_families(GeneratorFamily::Frank(4.0), DistortionFamily::Table1, DistortionFamily::Table1)?;
    report("clayton vs frank", equivalence_check(&a, &f, 40));
    Ok(())
}
