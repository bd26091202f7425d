//! Polynomials, Laurent polynomials and rational functions over a finite field.

use std::fmt;

use crate::field::Field;

/// Ring operations shared by matrix entry types.
pub trait RingElement: Clone + PartialEq + fmt::Debug {
    fn zero(field: &Field) -> Self;
    fn one(field: &Field) -> Self;
    fn field(&self) -> &Field;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplication by a field constant.
    fn scale(&self, c: u32) -> Self;
}

/// A polynomial in `z`, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| field.contains(c)));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Builds from small signed integers reduced into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn constant(field: &Field, c: u32) -> Self {
        Self::new(field, vec![c])
    }

    pub fn monomial(field: &Field, c: u32, degree: usize) -> Self {
        let mut v = vec![0; degree + 1];
        v[degree] = c;
        Self::new(field, v)
    }

    /// The polynomial `z`.
    pub fn z(field: &Field) -> Self {
        Self::monomial(field, 1, 1)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `-1` for zero, convenient in degree arithmetic.
    pub fn deg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lead()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs: v }
    }

    /// Division by `z^k`, discarding the low terms.
    pub fn shift_down(&self, k: usize) -> Poly {
        if k >= self.coeffs.len() {
            return Poly::zero(&self.field);
        }
        Poly::new(&self.field, self.coeffs[k..].to_vec())
    }

    /// Terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().copied().take(n).collect())
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        let dd = d.degree().expect("division by zero polynomial");
        let inv = f.inv(d.lead()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut q = vec![0; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                let k = i - dd + j;
                r[k] = f.sub(r[k], f.mul(c, dj));
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match f.inv(r0.lead()) {
            Some(inv) => (r0.scale(inv), s0.scale(inv), t0.scale(inv)),
            None => (r0, s0, t0),
        }
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let g = self.gcd(other);
        self.mul(other).exact_div(&g).unwrap().monic()
    }

    /// `z^deg * p(1/z)` with `deg = self.degree()`.
    pub fn reversed(&self) -> Poly {
        let mut v = self.coeffs.clone();
        v.reverse();
        Poly::new(&self.field, v)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl RingElement for Poly {
    fn zero(field: &Field) -> Self {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    fn one(field: &Field) -> Self {
        Poly { field: field.clone(), coeffs: vec![1] }
    }

    fn field(&self) -> &Field {
        &self.field
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, v)
    }

    fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        Poly::new(f, v)
    }

    fn neg(&self) -> Self {
        let f = &self.field;
        Poly { field: f.clone(), coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut v = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, v)
    }

    fn scale(&self, c: u32) -> Self {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }
}

fn fmt_terms(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (i64, u32)>) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if c == 0 {
            continue;
        }
        if !first {
            write!(f, "+")?;
        }
        first = false;
        match (e, c) {
            (0, c) => write!(f, "{c}")?,
            (1, 1) => write!(f, "z")?,
            (1, c) => write!(f, "{c}z")?,
            (e, 1) => write!(f, "z^{e}")?,
            (e, c) => write!(f, "{c}z^{e}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.coeffs.iter().enumerate().map(|(i, &c)| (i as i64, c)))
    }
}

/// `z^low * body`, with `body(0) != 0` unless zero (then `low = 0`).
#[derive(Clone, PartialEq, Eq)]
pub struct Laurent {
    low: i64,
    body: Poly,
}

impl Laurent {
    pub fn new(low: i64, body: Poly) -> Self {
        match body.valuation() {
            None => Laurent { low: 0, body },
            Some(v) => Laurent { low: low + v as i64, body: body.shift_down(v) },
        }
    }

    pub fn from_poly(p: &Poly) -> Self {
        Self::new(0, p.clone())
    }

    pub fn monomial(field: &Field, c: u32, e: i64) -> Self {
        Self::new(e, Poly::constant(field, c))
    }

    /// Minimum exponent (0 for the zero element).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Maximum exponent, `None` for zero.
    pub fn high(&self) -> Option<i64> {
        self.body.degree().map(|d| self.low + d as i64)
    }

    /// The polynomial `z^{-low} * self`.
    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn coeff(&self, e: i64) -> u32 {
        if e < self.low {
            0
        } else {
            self.body.coeff((e - self.low) as usize)
        }
    }

    /// Units of F[z, z^-1] are `c z^k`.
    pub fn is_unit(&self) -> bool {
        self.body.is_unit()
    }

    pub fn shift(&self, k: i64) -> Laurent {
        if self.is_zero() {
            return self.clone();
        }
        Laurent { low: self.low + k, body: self.body.clone() }
    }

    /// `Some(p)` when there are no negative exponents.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(self.body.clone());
        }
        (self.low >= 0).then(|| self.body.shift(self.low as usize))
    }

    /// Substitution `z -> z^-1`.
    pub fn time_reversed(&self) -> Laurent {
        match self.high() {
            None => self.clone(),
            Some(h) => Laurent::new(-h, self.body.reversed()),
        }
    }

    pub fn weight(&self) -> usize {
        self.body.weight()
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        let low = self.low;
        self.body.coeffs().iter().enumerate().filter(|(_, &c)| c != 0).map(move |(i, &c)| (low + i as i64, c))
    }
}

impl RingElement for Laurent {
    fn zero(field: &Field) -> Self {
        Laurent { low: 0, body: Poly::zero(field) }
    }

    fn one(field: &Field) -> Self {
        Laurent { low: 0, body: Poly::one(field) }
    }

    fn field(&self) -> &Field {
        self.body.field()
    }

    fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let a = self.body.shift((self.low - low) as usize);
        let b = other.body.shift((other.low - low) as usize);
        Laurent::new(low, a.add(&b))
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn neg(&self) -> Self {
        Laurent { low: self.low, body: self.body.neg() }
    }

    fn mul(&self, other: &Self) -> Self {
        Laurent::new(self.low + other.low, self.body.mul(&other.body))
    }

    fn scale(&self, c: u32) -> Self {
        Laurent::new(self.low, self.body.scale(c))
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, self.terms())
    }
}

/// A rational function in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    /// Reduces `num / den`; panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let f = num.field().clone();
        if num.is_zero() {
            return RatFn { num, den: Poly::one(&f) };
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).unwrap();
        let den = den.exact_div(&g).unwrap();
        let inv = f.inv(den.lead()).unwrap();
        RatFn { num: num.scale(inv), den: den.scale(inv) }
    }

    pub fn from_poly(p: &Poly) -> Self {
        RatFn { num: p.clone(), den: Poly::one(p.field()) }
    }

    pub fn from_laurent(l: &Laurent) -> Self {
        let f = l.field();
        if l.low() >= 0 {
            Self::from_poly(&l.to_poly().unwrap())
        } else {
            Self::new(l.body().clone(), Poly::monomial(f, 1, (-l.low()) as usize))
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_unit()
    }

    pub fn inv(&self) -> Option<RatFn> {
        (!self.num.is_zero()).then(|| RatFn::new(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFn) -> Option<RatFn> {
        other.inv().map(|i| self.mul(&i))
    }
}

impl RingElement for RatFn {
    fn zero(field: &Field) -> Self {
        RatFn { num: Poly::zero(field), den: Poly::one(field) }
    }

    fn one(field: &Field) -> Self {
        RatFn { num: Poly::one(field), den: Poly::one(field) }
    }

    fn field(&self) -> &Field {
        self.num.field()
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &Self) -> Self {
        RatFn::new(self.num.mul(&other.den).add(&other.num.mul(&self.den)), self.den.mul(&other.den))
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    fn mul(&self, other: &Self) -> Self {
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    fn scale(&self, c: u32) -> Self {
        RatFn::new(self.num.scale(c), self.den.clone())
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_unit() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
