//! Cyclic redundancy checks as the polynomial code `<g(z)>`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::code::{ConvCode, Framework};
use crate::field::Field;
use crate::matrix::PolyMatrix;
use crate::poly::{Poly, RingElement};

/// Fewest trials accepted by [`crc_miss_rate`].
pub const MIN_TRIALS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrcError {
    #[error("generator must have degree at least 1")]
    DegreeTooSmall,
    #[error("at least {MIN_TRIALS} trials are required, got {0}")]
    TooFewTrials(usize),
    #[error("burst length {burst} does not fit in a word of length {len}")]
    BurstTooLong { burst: usize, len: usize },
    #[error("burst length must be positive")]
    EmptyBurst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CrcMode {
    /// `c = g m`
    Multiplicative,
    /// `c = z^δ m - (z^δ m mod g)`, message readable in the high part.
    Systematic,
}

impl CrcMode {
    pub fn parse(s: &str) -> Option<CrcMode> {
        match s {
            "multiplicative" | "mult" => Some(CrcMode::Multiplicative),
            "systematic" | "sys" => Some(CrcMode::Systematic),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrcSpec {
    g: Poly,
    mode: CrcMode,
}

impl CrcSpec {
    pub fn new(g: Poly, mode: CrcMode) -> Result<Self, CrcError> {
        match g.degree() {
            Some(d) if d >= 1 => Ok(CrcSpec { g, mode }),
            _ => Err(CrcError::DegreeTooSmall),
        }
    }

    pub fn field(&self) -> &Field {
        self.g.field()
    }

    pub fn generator(&self) -> &Poly {
        &self.g
    }

    pub fn mode(&self) -> CrcMode {
        self.mode
    }

    pub fn degree(&self) -> usize {
        self.g.degree().unwrap()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrcCheck {
    pub accepted: bool,
    /// Recovered message, present iff accepted.
    pub message: Option<Poly>,
}

pub fn crc_encode(spec: &CrcSpec, m: &Poly) -> Poly {
    match spec.mode {
        CrcMode::Multiplicative => spec.g.mul(m),
        CrcMode::Systematic => {
            let shifted = m.shift(spec.degree());
            let r = shifted.rem(&spec.g);
            shifted.sub(&r)
        }
    }
}

pub fn crc_check(spec: &CrcSpec, c: &Poly) -> CrcCheck {
    let (quot, rem) = c.div_rem(&spec.g);
    if !rem.is_zero() {
        return CrcCheck { accepted: false, message: None };
    }
    let message = match spec.mode {
        CrcMode::Multiplicative => quot,
        CrcMode::Systematic => c.shift_down(spec.degree()),
    };
    CrcCheck { accepted: true, message: Some(message) }
}

/// The code `<g>` as a polynomial module code of rate 1/1.
pub fn crc_code(spec: &CrcSpec) -> ConvCode {
    let g = PolyMatrix::from_fn(spec.field(), 1, 1, |_, _| spec.g.clone());
    ConvCode::from_poly(&g, Framework::ModulePolyDprime).expect("nonzero generator")
}

/// Smallest `N >= 1` with `g | z^N - 1`; `None` when `g(0) = 0`.
pub fn period(g: &Poly) -> Option<u64> {
    let f = g.field();
    if g.coeff(0) == 0 {
        return None;
    }
    let one = Poly::one(f);
    if g.is_constant() {
        return Some(1);
    }
    let z = Poly::z(f).rem(g);
    let mut p = z.clone();
    let limit = (f.order() as u64).pow(g.degree().unwrap() as u32);
    for n in 1..=limit {
        if p == one {
            return Some(n);
        }
        p = p.mul(&z).rem(g);
    }
    unreachable!("z is a unit modulo g, so its order divides the group order")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Corruption {
    /// The received word is uniform among all other words of the same length.
    Uniform,
    /// A contiguous block of `len` symbols is replaced at random.
    Burst { len: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MissRate {
    pub trials: usize,
    pub accepted: usize,
    pub estimate: f64,
    /// Binomial standard deviation of the estimate around `expected`
    /// (around `estimate` when no closed form is known).
    pub sigma: f64,
    /// Exact acceptance probability under the uniform model.
    pub expected: Option<f64>,
    pub word_len: usize,
}

impl MissRate {
    /// Distance from the expected rate in units of `sigma`.
    pub fn z_score(&self) -> Option<f64> {
        self.expected.map(|p| if self.sigma == 0.0 { 0.0 } else { (self.estimate - p).abs() / self.sigma })
    }
}

fn random_poly<R: Rng>(rng: &mut R, f: &Field, len: usize) -> Poly {
    Poly::new(f, (0..len).map(|_| rng.gen_range(0..f.order())).collect())
}

/// Monte-Carlo estimate of the probability that a corrupted word passes the
/// check. Messages have `message_len` symbols, so words have
/// `message_len + δ`.
pub fn crc_miss_rate(
    spec: &CrcSpec,
    trials: usize,
    message_len: usize,
    corruption: Corruption,
    seed: u64,
) -> Result<MissRate, CrcError> {
    if trials < MIN_TRIALS {
        return Err(CrcError::TooFewTrials(trials));
    }
    let f = spec.field().clone();
    let q = f.order();
    let delta = spec.degree();
    let len = message_len + delta;
    if let Corruption::Burst { len: b } = corruption {
        if b == 0 {
            return Err(CrcError::EmptyBurst);
        }
        if b > len {
            return Err(CrcError::BurstTooLong { burst: b, len });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted = 0;
    for _ in 0..trials {
        let m = random_poly(&mut rng, &f, message_len);
        let c = crc_encode(spec, &m);
        let mut word: Vec<u32> = (0..len).map(|i| c.coeff(i)).collect();
        let (lo, hi) = match corruption {
            Corruption::Uniform => (0, len),
            Corruption::Burst { len: b } => {
                let lo = rng.gen_range(0..=len - b);
                (lo, lo + b)
            }
        };
        let original = word[lo..hi].to_vec();
        loop {
            for s in &mut word[lo..hi] {
                *s = rng.gen_range(0..q);
            }
            if word[lo..hi] != original[..] {
                break;
            }
        }
        if crc_check(spec, &Poly::new(&f, word)).accepted {
            accepted += 1;
        }
    }
    let estimate = accepted as f64 / trials as f64;
    let expected = match corruption {
        Corruption::Uniform => {
            let qf = q as f64;
            Some((qf.powi((len - delta) as i32) - 1.0) / (qf.powi(len as i32) - 1.0))
        }
        Corruption::Burst { .. } => None,
    };
    let p = expected.unwrap_or(estimate);
    let sigma = (p * (1.0 - p) / trials as f64).sqrt();
    Ok(MissRate { trials, accepted, estimate, sigma, expected, word_len: len })
}
