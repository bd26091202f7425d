//! Convolutional codes under the five frameworks, sharing one canonical
//! polynomial generator in column Popov form.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::matrix::{AnyMatrix, LaurentMatrix, Matrix, PolyMatrix, RationalMatrix};
use crate::poly::{Laurent, Poly, RatFn, RingElement};
use crate::polymat::{
    clear_col_denominators, column_popov, is_prime, laurent_column_popov, left_kernel, right_prime_factor, row_popov,
    shift_cols_to_poly, BaseRing, PrimeSide,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Framework {
    /// Rational subspace of `F(z)^n`.
    RationalA,
    /// Subspace of Laurent series `F((z))^n`.
    LaurentAprime,
    /// Complete (closed) behavior.
    CompleteB,
    /// Submodule of `F[z,z^-1]^n`.
    ModuleLaurentD,
    /// Submodule of `F[z]^n`.
    ModulePolyDprime,
}

impl Framework {
    pub const ALL: [Framework; 5] = [
        Framework::RationalA,
        Framework::LaurentAprime,
        Framework::CompleteB,
        Framework::ModuleLaurentD,
        Framework::ModulePolyDprime,
    ];

    pub fn is_module(self) -> bool {
        matches!(self, Framework::ModuleLaurentD | Framework::ModulePolyDprime)
    }

    /// Ring over which primeness of the generator is judged.
    pub fn ring(self) -> BaseRing {
        match self {
            Framework::ModuleLaurentD => BaseRing::Laurent,
            _ => BaseRing::Poly,
        }
    }

    /// Short name used on the command line.
    pub fn short_name(self) -> &'static str {
        match self {
            Framework::RationalA => "a",
            Framework::LaurentAprime => "aprime",
            Framework::CompleteB => "b",
            Framework::ModuleLaurentD => "d",
            Framework::ModulePolyDprime => "dprime",
        }
    }

    pub fn parse(s: &str) -> Option<Framework> {
        Framework::ALL.into_iter().find(|f| f.short_name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("module frameworks need a polynomial or Laurent generator")]
    RationalGeneratorUnsupportedForModuleFramework,
    #[error("generator has no rows")]
    EmptyGenerator,
    #[error("framework dprime needs a polynomial generator (negative exponents found)")]
    NegativeExponents,
    #[error("code is not observable: no polynomial parity check exists")]
    NotObservable,
    #[error("codes belong to different frameworks ({0} vs {1})")]
    FrameworkMismatch(Framework, Framework),
    #[error("codes live in different ambient spaces")]
    AmbientMismatch,
    #[error("word has shape {rows}x{cols}, expected {n}x1")]
    WordShape { rows: usize, cols: usize, n: usize },
}

/// Invariants of a code. `forney_indices` holds the Forney indices for
/// frameworks A/A'/B and the Kronecker indices of the module for D/D'.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeInvariants {
    pub k: usize,
    pub n: usize,
    pub forney_indices: Vec<usize>,
    pub degree: usize,
    pub controller_memory: usize,
    pub observer_memory: Option<usize>,
    pub observable: bool,
    pub d_free: Option<usize>,
}

#[derive(Debug)]
pub struct ConvCode {
    field: Field,
    framework: Framework,
    generator: PolyMatrix,
    d_free: OnceLock<Option<usize>>,
}

impl Clone for ConvCode {
    fn clone(&self) -> Self {
        let d_free = OnceLock::new();
        if let Some(v) = self.d_free.get() {
            let _ = d_free.set(*v);
        }
        ConvCode { field: self.field.clone(), framework: self.framework, generator: self.generator.clone(), d_free }
    }
}

impl PartialEq for ConvCode {
    fn eq(&self, other: &Self) -> bool {
        self.framework == other.framework && self.generator == other.generator
    }
}

/// Result of moving a code to another framework.
#[derive(Debug, Clone)]
pub struct Conversion {
    pub code: ConvCode,
    /// Set when the source cannot be recovered from the target.
    pub lost_information: bool,
}

fn sort_desc(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

impl ConvCode {
    /// Builds the code spanned by the columns of `m` in `framework`.
    pub fn from_generator(m: &AnyMatrix, framework: Framework) -> Result<ConvCode, CodeError> {
        if m.shape().0 == 0 {
            return Err(CodeError::EmptyGenerator);
        }
        let field = m.field().clone();
        let generator = if framework.is_module() {
            let lm = match m {
                AnyMatrix::Rational(_) => return Err(CodeError::RationalGeneratorUnsupportedForModuleFramework),
                AnyMatrix::Poly(p) => p.to_laurent(),
                AnyMatrix::Laurent(l) => l.clone(),
            };
            if framework == Framework::ModulePolyDprime {
                let p = lm.to_poly().ok_or(CodeError::NegativeExponents)?;
                column_popov(&p).0
            } else {
                laurent_column_popov(&lm).0
            }
        } else {
            let p = match m {
                AnyMatrix::Poly(p) => p.clone(),
                AnyMatrix::Laurent(l) => shift_cols_to_poly(l),
                AnyMatrix::Rational(r) => clear_col_denominators(r),
            };
            column_popov(&right_prime_factor(&p)).0
        };
        Ok(ConvCode { field, framework, generator, d_free: OnceLock::new() })
    }

    pub fn from_poly(m: &PolyMatrix, framework: Framework) -> Result<ConvCode, CodeError> {
        ConvCode::from_generator(&AnyMatrix::Poly(m.clone()), framework)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn framework(&self) -> Framework {
        self.framework
    }

    pub fn n(&self) -> usize {
        self.generator.rows()
    }

    pub fn k(&self) -> usize {
        self.generator.cols()
    }

    /// Canonical generator: column Popov, full column rank.
    pub fn generator(&self) -> &PolyMatrix {
        &self.generator
    }

    /// Column degrees of the canonical generator in Popov order.
    pub fn column_degrees(&self) -> Vec<usize> {
        self.generator.col_degrees().iter().map(|&d| d.max(0) as usize).collect()
    }

    pub fn degree(&self) -> usize {
        self.column_degrees().iter().sum()
    }

    pub fn is_observable(&self) -> bool {
        if !self.framework.is_module() || self.k() == 0 {
            return true;
        }
        is_prime(&self.generator.clone().into(), PrimeSide::Right, self.framework.ring()).unwrap_or(false)
    }

    /// Popov, right-prime polynomial encoder of the rational span.
    pub fn minimal_basic_encoder(&self) -> PolyMatrix {
        if !self.framework.is_module() {
            return self.generator.clone();
        }
        column_popov(&right_prime_factor(&self.generator)).0
    }

    /// Left-prime row-Popov parity check `H` with `H G = 0`.
    pub fn parity_check(&self) -> Result<PolyMatrix, CodeError> {
        if !self.is_observable() {
            return Err(CodeError::NotObservable);
        }
        if self.k() == self.n() {
            return Ok(PolyMatrix::zeros(&self.field, 0, self.n()));
        }
        let g = self.minimal_basic_encoder();
        Ok(row_popov(&left_kernel(&g)).0)
    }

    pub fn invariants(&self) -> CodeInvariants {
        let idx = self.column_degrees();
        let observable = self.is_observable();
        let observer_memory = self
            .parity_check()
            .ok()
            .map(|h| h.row_degrees().into_iter().map(|d| d.max(0) as usize).max().unwrap_or(0));
        CodeInvariants {
            k: self.k(),
            n: self.n(),
            degree: idx.iter().sum(),
            controller_memory: idx.iter().copied().max().unwrap_or(0),
            forney_indices: sort_desc(idx),
            observer_memory,
            observable,
            d_free: self.cached_d_free().flatten(),
        }
    }

    /// Smallest observable code containing this one (same framework).
    pub fn observable_closure(&self) -> ConvCode {
        if !self.framework.is_module() || self.is_observable() {
            return self.clone();
        }
        ConvCode::from_poly(&self.minimal_basic_encoder(), self.framework).expect("closure of a valid code")
    }

    pub fn convert(&self, target: Framework) -> Conversion {
        let code = if self.framework.is_module() && target.is_module() {
            let m: AnyMatrix = self.generator.clone().into();
            ConvCode::from_generator(&m, target).expect("module generators stay valid")
        } else {
            ConvCode::from_poly(&self.minimal_basic_encoder(), target).expect("encoder is valid")
        };
        let lost_information = self.framework.is_module() && code.generator != self.generator;
        if let Some(d) = self.d_free.get() {
            if !lost_information {
                let _ = code.d_free.set(*d);
            }
        }
        Conversion { code, lost_information }
    }

    /// Equality of codes; sound and complete because generators are canonical.
    pub fn equals(&self, other: &ConvCode) -> Result<bool, CodeError> {
        if self.framework != other.framework {
            return Err(CodeError::FrameworkMismatch(self.framework, other.framework));
        }
        if self.field != other.field || self.n() != other.n() {
            return Err(CodeError::AmbientMismatch);
        }
        Ok(self.generator == other.generator)
    }

    /// `G m` for a polynomial message column.
    pub fn encode(&self, m: &PolyMatrix) -> PolyMatrix {
        self.generator.mul(m)
    }

    /// Decides whether `word` is a codeword; on success returns the message
    /// `m` with `G m = word`, in the ring of the framework.
    pub fn membership(&self, word: &AnyMatrix) -> Result<Option<AnyMatrix>, CodeError> {
        let (rows, cols) = word.shape();
        if rows != self.n() || cols != 1 {
            return Err(CodeError::WordShape { rows, cols, n: self.n() });
        }
        let f = &self.field;
        Ok(match word {
            AnyMatrix::Poly(p) => reduce(&self.generator, p).map(AnyMatrix::Poly),
            AnyMatrix::Laurent(l) => {
                let low = l.col_low()[0];
                if self.framework == Framework::ModulePolyDprime && low < 0 {
                    return Ok(None);
                }
                let shifted = shift_cols_to_poly(l);
                reduce(&self.generator, &shifted).map(|m| {
                    let lm: LaurentMatrix = m.to_laurent().map(|e| e.mul(&Laurent::monomial(f, 1, low)));
                    match lm.to_poly() {
                        Some(p) if self.framework == Framework::ModulePolyDprime => AnyMatrix::Poly(p),
                        _ => AnyMatrix::Laurent(lm),
                    }
                })
            }
            AnyMatrix::Rational(r) => {
                if self.framework.is_module() {
                    if !r.entries().iter().all(RatFn::is_polynomial) {
                        let lm = rational_to_laurent(r);
                        return match lm {
                            Some(lm) => self.membership(&AnyMatrix::Laurent(lm)),
                            None => Ok(None),
                        };
                    }
                    let p = r.map(|e| e.num().clone());
                    return self.membership(&AnyMatrix::Poly(p));
                }
                let den = r.entries().iter().fold(Poly::one(f), |acc, e| acc.lcm(e.den()));
                let cleared = clear_col_denominators(r);
                let dr = RatFn::from_poly(&den);
                reduce(&self.generator, &cleared)
                    .map(|m| AnyMatrix::Rational(m.to_rational().map(|e| e.div(&dr).expect("nonzero denominator"))))
            }
        })
    }

    pub fn cached_d_free(&self) -> Option<Option<usize>> {
        self.d_free.get().copied()
    }

    /// Records the free distance (`None` for the zero code). Idempotent.
    pub fn set_d_free(&self, d: Option<usize>) {
        let _ = self.d_free.set(d);
    }
}

/// Laurent view of a rational column whose denominators are monomials.
fn rational_to_laurent(r: &RationalMatrix) -> Option<LaurentMatrix> {
    let f = r.field().clone();
    let mut out = Vec::new();
    for e in r.entries() {
        let d = e.den();
        if d.weight() != 1 {
            return None;
        }
        let k = d.deg();
        out.push(Laurent::from_poly(e.num()).mul(&Laurent::monomial(&f, f.inv(d.lead())?, -k)));
    }
    Some(Matrix::from_fn(&f, r.rows(), r.cols(), |i, j| out[i * r.cols() + j].clone()))
}

/// Division of a polynomial column by a Popov basis. Returns the quotient
/// when the remainder vanishes, `None` otherwise.
pub fn reduce(g: &PolyMatrix, word: &PolyMatrix) -> Option<PolyMatrix> {
    let f = g.field().clone();
    let k = g.cols();
    let mut w = word.col(0);
    let mut m = vec![Poly::zero(&f); k];
    let pivots: Vec<(i64, usize)> = (0..k)
        .map(|j| {
            let d = g.col_degrees()[j];
            let row = (0..g.rows()).rev().find(|&i| g[(i, j)].deg() == d).unwrap();
            (d, row)
        })
        .collect();
    loop {
        let d = w.iter().map(Poly::deg).max().unwrap_or(-1);
        if d < 0 {
            break;
        }
        let row = (0..w.len()).rev().find(|&i| w[i].deg() == d).unwrap();
        let Some(j) = pivots.iter().position(|&(pd, pr)| pr == row && pd <= d) else {
            return None;
        };
        let c = f.div(w[row].lead(), g[(row, j)].lead()).unwrap();
        let t = Poly::monomial(&f, c, (d - pivots[j].0) as usize);
        for (i, wi) in w.iter_mut().enumerate() {
            *wi = wi.sub(&t.mul(&g[(i, j)]));
        }
        m[j] = m[j].add(&t);
    }
    Some(PolyMatrix::column(&f, m))
}
