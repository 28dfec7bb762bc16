//! Move between the distortion pair (D1, D2) and the hazard triple (H1, H2, H3).

use amo::{distortions_from_hazards, hazards_from_distortions, make_distortion, DistortionFamily, Hazard};

fn main() -> amo::Result<()> {
    let inf = f64::INFINITY;
    let d1 = make_distortion(DistortionFamily::SqrtComplement(1.5), inf)?;
    let d2 = make_distortion(DistortionFamily::LogShift(0.7), inf)?;

    // any strictly increasing H3 with H3(0) = 0 works; the other two hazards follow from it
    for h3 in [Hazard::identity(), Hazard::new("t^2 + t", |t: f64| t * t + t)] {
        let h = hazards_from_distortions(&d1, &d2, h3)?;
        println!("H3 = {}", h.get(3).label());
        println!("     t        H1        H2        H3");
        for t in [0.1, 0.5, 1.0, 2.0] {
            println!("{t:>6} {:>9.5} {:>9.5} {:>9.5}", h.get(1).eval(t), h.get(2).eval(t), h.get(3).eval(t));
        }

        let (r1, r2) = distortions_from_hazards(&h)?;
        let worst = [0.01, 0.1, 1.0, 10.0, 100.0]
            .iter()
            .map(|&x| (r1.eval(x) - d1.eval(x)).abs().max((r2.eval(x) - d2.eval(x)).abs()))
            .fold(0.0, f64::max);
        println!("round trip back to (D1, D2): max error {worst:.2e}\n");
    }
    Ok(())
}
