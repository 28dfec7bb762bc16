//! Evaluate an AMO copula on a grid and trace its frontier curve.

use amo::{AmoCopula, DistortionFamily, GeneratorFamily};

fn main() -> amo::Result<()> {
    let c = AmoCopula::from_families(
        GeneratorFamily::Clayton(2.0),
        DistortionFamily::Linear(0.3),
        DistortionFamily::Linear(0.6),
    )?;
    println!("case: {:?}", c.case_tag());

    let levels = [0.1, 0.3, 0.5, 0.7, 0.9];
    print!("  u\\v ");
    for v in levels {
        print!("{v:>9}");
    }
    println!();
    for u in levels {
        print!("{u:>5}");
        for v in levels {
            print!("{:>9.5}", c.evaluate(u, v));
        }
        println!();
    }

    // below the frontier the first branch is active, above it the second
    println!("\n   u      h(u)    C(u, h(u))");
    for u in levels {
        let h = c.frontier(u);
        println!("{u:>5} {h:>9.5} {:>10.5}", c.evaluate(u, h));
    }
    Ok(())
}
