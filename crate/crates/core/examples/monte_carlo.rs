//! Exact simulation through the frailty representation.

use amo::dependence::{empirical_tau, kendall_tau, tau_standard_error};
use amo::sampling::{sample_batch, sample_batch_parallel, tie_frequency, write_csv, RngStream};
use amo::{AmoCopula, DistortionFamily, GeneratorFamily};

fn main() -> amo::Result<()> {
    let c = AmoCopula::from_families(GeneratorFamily::Gumbel(2.0), DistortionFamily::Table1, DistortionFamily::Linear(0.4))?;
    let model = c.joint_model()?;

    let few = sample_batch(&model, 5, &mut RngStream::new(1))?;
    write_csv(std::io::stdout().lock(), &few)?;

    let n = 200_000;
    let samples = sample_batch_parallel(&model, n, 2024, 8)?;
    println!("\nn = {n}");
    println!("tie frequency  {:.5}  singular mass {:.5}", tie_frequency(&samples), c.singular_mass()?);
    println!(
        "empirical tau  {:.5}  model tau     {:.5}  (se {:.5})",
        empirical_tau(&samples)?,
        kendall_tau(&c)?,
        tau_standard_error(n)
    );
    for (u, v) in [(0.2, 0.2), (0.5, 0.5), (0.8, 0.3)] {
        let hits = samples.iter().filter(|p| p.u <= u && p.v <= v).count() as f64 / n as f64;
        println!("P(U <= {u}, V <= {v})  sample {hits:.5}  copula {:.5}", c.evaluate(u, v));
    }
    Ok(())
}
