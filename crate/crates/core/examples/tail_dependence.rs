//! Lower and upper tail dependence, analytic and from a large sample.

use amo::dependence::{empirical_tail, tail_parameters, TailSide, TailValue};
use amo::sampling::sample_batch_parallel;
use amo::{AmoCopula, DistortionFamily, GeneratorFamily};

fn show(t: TailValue) -> String {
    match t.value() {
        Some(x) => format!("{x:.6}"),
        None => "undetermined".into(),
    }
}

fn main() -> amo::Result<()> {
    let lin = DistortionFamily::Linear(0.5);
    for g in [GeneratorFamily::Clayton(1.0), GeneratorFamily::Gumbel(2.0), GeneratorFamily::Frank(4.0)] {
        let c = AmoCopula::from_families(g, lin, lin)?;
        let r = tail_parameters(&c);
        println!(
            "{:<8} lambda_L = {} ({}), lambda_U = {} ({})",
            g.name(),
            show(r.lambda_lower),
            r.lower_branch,
            show(r.lambda_upper),
            r.upper_branch
        );

        let samples = sample_batch_parallel(&c.joint_model()?, 400_000, 7, 4)?;
        let lower = empirical_tail(&samples, TailSide::Lower, &[0.05, 0.01, 0.005])?;
        let upper = empirical_tail(&samples, TailSide::Upper, &[0.95, 0.99, 0.995])?;
        for ((u, l), (w, h)) in lower.iter().zip(&upper) {
            println!("    P(V <= {u} | U <= {u}) = {l:.4}    P(V > {w} | U > {w}) = {h:.4}");
        }
    }
    Ok(())
}
