//! Exact simulation through the frailty representation: with `Y` drawn from
//! the law whose Laplace transform is `G` and `E₁, E₂, E₃` unit exponentials,
//! `X_i = H_i⁻¹(E_i / Y)` has joint survival `G(H₁(t₁) + H₂(t₂) + H₃(t₃))`.

use std::f64::consts::PI;
use std::io::Write;

use rand::distr::Open01;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Exp1, Gamma};

use crate::copula::JointModel;
use crate::error::{Error, Result};

/// Frailty laws of the built-in generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FrailtyLaw {
    /// `Y = 1` (exponential generator).
    Degenerate,
    /// Gamma with unit rate (Clayton, `shape = 1/θ`).
    Gamma { shape: f64 },
    /// One-sided stable with Laplace transform `exp(-s^index)` (Gumbel, `index = 1/θ`).
    PositiveStable { index: f64 },
    /// `P(Y = k) = -p^k / (k ln(1-p))` (Frank, `p = 1 - exp(-θ)`).
    LogarithmicSeries { p: f64 },
}

/// A frailty law multiplied by `scale`, i.e. the mixing law of `G(scale·x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrailtySpec {
    pub law: FrailtyLaw,
    pub scale: f64,
}

impl FrailtySpec {
    pub fn new(law: FrailtyLaw) -> Self {
        FrailtySpec { law, scale: 1.0 }
    }

    pub fn rescaled(self, m: f64) -> Self {
        FrailtySpec { law: self.law, scale: self.scale * m }
    }

    /// `E[exp(-s Y)]`.
    pub fn laplace(&self, s: f64) -> f64 {
        let s = s * self.scale;
        match self.law {
            FrailtyLaw::Degenerate => (-s).exp(),
            FrailtyLaw::Gamma { shape } => (1.0 + s).powf(-shape),
            FrailtyLaw::PositiveStable { index } => (-s.powf(index)).exp(),
            FrailtyLaw::LogarithmicSeries { p } => (-p * (-s).exp()).ln_1p() / (-p).ln_1p(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.scale > 0.0
            && self.scale.is_finite()
            && match self.law {
                FrailtyLaw::Degenerate => true,
                FrailtyLaw::Gamma { shape } => shape > 0.0 && shape.is_finite(),
                FrailtyLaw::PositiveStable { index } => index > 0.0 && index <= 1.0,
                FrailtyLaw::LogarithmicSeries { p } => p > 0.0 && p < 1.0,
            };
        if ok {
            Ok(())
        } else {
            Err(Error::BadParameter(format!("invalid frailty {self:?}")))
        }
    }
}

/// A seeded ChaCha20 stream. `(seed, stream)` pairs give independent,
/// reproducible sequences.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha20Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngStream { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Number of 32-bit words consumed so far.
    pub fn word_pos(&self) -> u128 {
        self.rng.get_word_pos()
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// One draw of `(M₁, M₂)` and its copula-scale image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplePair {
    pub m1: f64,
    pub m2: f64,
    /// `G(K₁(M₁))`.
    pub u: f64,
    /// `G(K₂(M₂))`.
    pub v: f64,
    /// The systemic shock came first, so `M₁ = M₂`.
    pub simultaneous: bool,
}

fn positive_stable<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    if alpha >= 1.0 {
        return 1.0;
    }
    let u: f64 = PI * rng.sample::<f64, _>(Open01);
    let e: f64 = rng.sample(Exp1);
    let a = (alpha * u).sin() / u.sin().powf(1.0 / alpha);
    let b = (((1.0 - alpha) * u).sin() / e).powf((1.0 - alpha) / alpha);
    a * b
}

fn logarithmic_series<R: Rng + ?Sized>(p: f64, rng: &mut R) -> f64 {
    let r = (-p).ln_1p();
    loop {
        let v: f64 = rng.sample(Open01);
        if v >= p {
            return 1.0;
        }
        let u: f64 = rng.sample(Open01);
        let q = -(r * u).exp_m1();
        if v <= q * q {
            let k = (1.0 + v.ln() / q.ln()).floor();
            if k < 1.0 || !k.is_finite() {
                continue;
            }
            return k;
        }
        return if v >= q { 1.0 } else { 2.0 };
    }
}

/// One draw from the frailty law.
pub fn sample_frailty<R: Rng + ?Sized>(spec: &FrailtySpec, rng: &mut R) -> f64 {
    let y = match spec.law {
        FrailtyLaw::Degenerate => 1.0,
        FrailtyLaw::Gamma { shape } => Gamma::new(shape, 1.0).expect("validated shape").sample(rng),
        FrailtyLaw::PositiveStable { index } => positive_stable(index, rng),
        FrailtyLaw::LogarithmicSeries { p } => logarithmic_series(p, rng),
    };
    y * spec.scale
}

fn frailty_of(m: &JointModel) -> Result<FrailtySpec> {
    let g = m.generator();
    if !g.is_strict() {
        return Err(Error::UnsupportedGenerator(format!("{} has finite support", g.label())));
    }
    match (g.completely_monotone(), g.frailty()) {
        (true, Some(f)) => {
            f.validate()?;
            Ok(f)
        }
        _ => Err(Error::UnsupportedGenerator(format!("{} has no frailty representation", g.label()))),
    }
}

fn draw(m: &JointModel, frailty: &FrailtySpec, rng: &mut RngStream) -> SamplePair {
    let y = sample_frailty(frailty, rng);
    let h = m.hazards();
    let mut x = [0.0; 3];
    for (i, xi) in x.iter_mut().enumerate() {
        let e: f64 = rng.sample(Exp1);
        *xi = h.get(i + 1).inverse(e / y);
    }
    let simultaneous = x[2] <= x[0] && x[2] <= x[1];
    let (m1, m2) = (x[0].min(x[2]), x[1].min(x[2]));
    let g = m.generator();
    SamplePair { m1, m2, u: g.eval(h.k(1, m1)), v: g.eval(h.k(2, m2)), simultaneous }
}

/// One exact draw. Requires a strict, completely monotone generator.
pub fn sample_pair(m: &JointModel, rng: &mut RngStream) -> Result<SamplePair> {
    let f = frailty_of(m)?;
    Ok(draw(m, &f, rng))
}

/// `n` independent draws from a single stream.
pub fn sample_batch(m: &JointModel, n: usize, rng: &mut RngStream) -> Result<Vec<SamplePair>> {
    let f = frailty_of(m)?;
    Ok((0..n).map(|_| draw(m, &f, rng)).collect())
}

/// `n` draws split over `streams` threads, stream `k` seeded with
/// `(seed, k)`. The result depends on `(seed, streams)` only.
pub fn sample_batch_parallel(m: &JointModel, n: usize, seed: u64, streams: usize) -> Result<Vec<SamplePair>> {
    let f = frailty_of(m)?;
    let streams = streams.max(1);
    let chunk = n.div_ceil(streams);
    let parts: Vec<Vec<SamplePair>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..streams)
            .map(|k| {
                let len = chunk.min(n.saturating_sub(k * chunk));
                let f = &f;
                s.spawn(move || {
                    let mut rng = RngStream::with_stream(seed, k as u64);
                    (0..len).map(|_| draw(m, f, &mut rng)).collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampler thread panicked")).collect()
    });
    Ok(parts.concat())
}

/// Writes `m1,m2,u,v,simultaneous` rows with a header.
pub fn write_csv<W: Write>(mut w: W, samples: &[SamplePair]) -> std::io::Result<()> {
    writeln!(w, "m1,m2,u,v,simultaneous")?;
    for s in samples {
        writeln!(w, "{},{},{},{},{}", s.m1, s.m2, s.u, s.v, s.simultaneous as u8)?;
    }
    Ok(())
}

/// Fraction of draws with `M₁ = M₂`.
pub fn tie_frequency(samples: &[SamplePair]) -> f64 {
    if samples.is_empty() {
        return f64::NAN;
    }
    samples.iter().filter(|s| s.simultaneous).count() as f64 / samples.len() as f64
}
