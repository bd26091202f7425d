//! Finite fields GF(p) and GF(p^m).
//!
//! Elements are stored as integers in `0..q`. For `m > 1` the integer is the
//! base-`p` encoding of the coefficient vector of the element as a polynomial
//! in the generator `x` of `GF(p)[x] / (modulus)`, lowest coefficient first:
//! the element `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` is `c_0 + c_1 p + ...`.
//! This is also the encoding used by the `.pmat` file format.
//!
//! Multiplication goes through discrete log / antilog tables built once per
//! field; addition is digit-wise mod `p` (XOR in characteristic 2).

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("modulus is not monic irreducible of degree {degree} over GF({p})")]
    ReducibleModulus { p: u32, degree: u32 },
    #[error("field order {p}^{m} exceeds 2^16")]
    UnsupportedSize { p: u64, m: u32 },
    #[error("no built-in modulus for GF({p}^{m}); supply one")]
    MissingModulus { p: u32, m: u32 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("value {value} out of range for a field of order {q}")]
    OutOfRange { value: u64, q: u32 },
}

struct FieldData {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, ascending coefficients, length `m + 1`. `[0, 1]` for prime fields.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a fixed primitive element `g`, `i in 0..q-1`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`; `log[0]` unused.
    log: Vec<u32>,
    /// Powers of `p`, length `m`.
    radix: Vec<u32>,
}

/// A finite field. Cheap to clone; equality compares `(p, m, modulus)`.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}; {:?})", self.0.p, self.0.m, self.0.modulus)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({})", self.0.q)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Built-in moduli, ascending coefficients.
fn builtin_modulus(p: u32, m: u32) -> Option<Vec<u32>> {
    match (p, m) {
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (3, 2) => Some(vec![1, 0, 1]),
        (2, 4) => Some(vec![1, 1, 0, 0, 1]),
        _ => None,
    }
}

// Dense polynomial helpers over GF(p), ascending coefficients.
fn gfp_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn gfp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    gfp_trim(&mut r);
    let db = b.len() - 1;
    let inv_lead = mod_inv(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = (r[r.len() - 1] as u64 * inv_lead as u64 % p as u64) as u32;
        for (i, &bi) in b.iter().enumerate() {
            let t = (c as u64 * bi as u64) % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - t) % p as u64) as u32;
        }
        gfp_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    mod_pow(a as u64, (p - 2) as u64, p as u64) as u32
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Exhaustive factor search: no monic divisor of degree `1..=m/2`.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                cand.push((v % p as u64) as u32);
                v /= p as u64;
            }
            cand.push(1);
            if gfp_rem(modulus, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    /// GF(p^m). For `m > 1` the modulus (ascending, monic, length `m + 1`) is
    /// taken from `modulus` or from the built-in table for GF(4), GF(8), GF(9), GF(16).
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        if !is_prime(p as u64) {
            return Err(FieldError::NonPrimeCharacteristic(p as u64));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER);
        let q = match q {
            Some(q) => q as u32,
            None => return Err(FieldError::UnsupportedSize { p: p as u64, m }),
        };
        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            let md = match modulus {
                Some(md) => md.to_vec(),
                None => builtin_modulus(p, m).ok_or(FieldError::MissingModulus { p, m })?,
            };
            let reducible = FieldError::ReducibleModulus { p, degree: m };
            if md.len() != m as usize + 1 || md[m as usize] != 1 || md.iter().any(|&c| c >= p) {
                return Err(reducible);
            }
            if !is_irreducible(&md, p) {
                return Err(reducible);
            }
            md
        };
        let mut radix = Vec::with_capacity(m as usize);
        let mut r = 1u32;
        for _ in 0..m {
            radix.push(r);
            r = r.wrapping_mul(p);
        }
        let mut data = FieldData { p, m, q, modulus, exp: Vec::new(), log: Vec::new(), radix };
        data.build_tables();
        Ok(Field(Arc::new(data)))
    }

    /// Parses the order `q` directly: prime `q`, or a built-in prime power.
    pub fn with_order(q: u32) -> Result<Self, FieldError> {
        if is_prime(q as u64) {
            return Self::prime(q);
        }
        for p in 2..q {
            if !is_prime(p as u64) {
                continue;
            }
            let mut m = 0;
            let mut v = q;
            while v.is_multiple_of(p) {
                v /= p;
                m += 1;
            }
            if v == 1 {
                return Self::new(p, m, None);
            }
            if m > 0 {
                break;
            }
        }
        Err(FieldError::NonPrimeCharacteristic(q as u64))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Ascending monic modulus; `[0, 1]` for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let d = &self.0;
        if d.p == 2 {
            return a ^ b;
        }
        if d.m == 1 {
            let s = a + b;
            return if s >= d.p { s - d.p } else { s };
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        for &r in &d.radix {
            let s = (a % d.p + b % d.p) % d.p;
            out += s * r;
            a /= d.p;
            b /= d.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let d = &self.0;
        if d.p == 2 {
            return a;
        }
        if d.m == 1 {
            return if a == 0 { 0 } else { d.p - a };
        }
        let mut a = a;
        let mut out = 0;
        for &r in &d.radix {
            let c = a % d.p;
            out += ((d.p - c) % d.p) * r;
            a /= d.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let d = &self.0;
        let s = d.log[a as usize] + d.log[b as usize];
        let n = d.q - 1;
        d.exp[(if s >= n { s - n } else { s }) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let d = &self.0;
        let n = d.q - 1;
        let l = d.log[a as usize];
        Some(d.exp[((n - l) % n) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let d = &self.0;
        let n = (d.q - 1) as u64;
        let l = d.log[a as usize] as u64;
        d.exp[(l * (e % n) % n) as usize]
    }

    /// Embeds an integer via its residue mod `p` (prime subfield).
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.0.p as i64) as u32
    }

    pub fn contains(&self, v: u32) -> bool {
        v < self.0.q
    }

    pub fn element(&self, value: u32) -> Result<FieldElement, FieldError> {
        if value >= self.0.q {
            return Err(FieldError::OutOfRange { value: value as u64, q: self.0.q });
        }
        Ok(FieldElement { field: self.clone(), value })
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }
}

impl FieldData {
    /// Multiplication in the polynomial basis, used only to build tables.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (p, m) = (self.p, self.m as usize);
        if m == 1 {
            return ((a as u64 * b as u64) % p as u64) as u32;
        }
        let digits = |mut v: u32| {
            let mut out = vec![0u32; m];
            for c in out.iter_mut() {
                *c = v % p;
                v /= p;
            }
            out
        };
        let (da, db) = (digits(a), digits(b));
        let mut prod = vec![0u32; 2 * m - 1];
        for i in 0..m {
            for j in 0..m {
                prod[i + j] = ((prod[i + j] as u64 + da[i] as u64 * db[j] as u64) % p as u64) as u32;
            }
        }
        let r = gfp_rem(&prod, &self.modulus, p);
        r.iter().zip(&self.radix).map(|(c, rad)| c * rad).sum()
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let n = q - 1;
        if n == 1 {
            self.exp = vec![1];
            self.log = vec![0, 0];
            return;
        }
        'cand: for g in 2..q as u32 {
            let mut exp = Vec::with_capacity(n);
            let mut x = 1u32;
            for i in 0..n {
                if i > 0 && x == 1 {
                    continue 'cand;
                }
                exp.push(x);
                x = self.slow_mul(x, g);
            }
            let mut log = vec![0u32; q];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            self.exp = exp;
            self.log = log;
            return;
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }
}

/// An element tagged with its field, for the checked public arithmetic API.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Neg,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::FieldMismatch);
        }
        Ok(())
    }

    fn wrap(&self, value: u32) -> FieldElement {
        FieldElement { field: self.field.clone(), value }
    }

    /// Applies `op`; `b` is ignored for the unary operations.
    pub fn apply(&self, op: FieldOp, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(b)?;
        let f = &self.field;
        let v = match op {
            FieldOp::Add => f.add(self.value, b.value),
            FieldOp::Sub => f.sub(self.value, b.value),
            FieldOp::Mul => f.mul(self.value, b.value),
            FieldOp::Div => f.div(self.value, b.value).ok_or(FieldError::DivisionByZero)?,
            FieldOp::Inv => f.inv(self.value).ok_or(FieldError::DivisionByZero)?,
            FieldOp::Neg => f.neg(self.value),
        };
        Ok(self.wrap(v))
    }

    pub fn add(&self, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.apply(FieldOp::Add, b)
    }

    pub fn sub(&self, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.apply(FieldOp::Sub, b)
    }

    pub fn mul(&self, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.apply(FieldOp::Mul, b)
    }

    pub fn div(&self, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.apply(FieldOp::Div, b)
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        self.field.inv(self.value).map(|v| self.wrap(v)).ok_or(FieldError::DivisionByZero)
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.value))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.wrap(self.field.pow(self.value, e))
    }
}
