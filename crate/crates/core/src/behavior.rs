//! Linear time-invariant complete behaviors given by kernel representations.
//!
//! Time runs over `Z` or `Z+`; `σ` is the left shift `(σw)_t = w_{t+1}`, so
//! `P(σ)w = 0` means `Σ_j P_j w_{t+j} = 0` for every admissible `t`.
//! Trajectories are only ever handled through finite windows.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::matrix::{AnyMatrix, ConstMatrix, LaurentMatrix, PolyMatrix};
use crate::poly::RingElement;
use crate::polymat::{
    column_popov, is_prime, laurent_row_popov, left_kernel, left_prime_factor, right_kernel, row_popov,
    shift_rows_to_poly, BaseRing, PrimeSide,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Axis {
    #[serde(rename = "z")]
    Z,
    #[serde(rename = "zplus")]
    ZPlus,
}

impl Axis {
    pub fn ring(self) -> BaseRing {
        match self {
            Axis::Z => BaseRing::Laurent,
            Axis::ZPlus => BaseRing::Poly,
        }
    }

    pub fn parse(s: &str) -> Option<Axis> {
        match s.to_ascii_lowercase().as_str() {
            "z" => Some(Axis::Z),
            "zplus" | "z+" => Some(Axis::ZPlus),
            _ => None,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Z => "z",
            Axis::ZPlus => "zplus",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BehaviorError {
    #[error("kernel representations need a polynomial or Laurent matrix")]
    RationalRingUnsupported,
    #[error("a kernel on the half axis cannot contain negative powers of z")]
    NegativeExponentOnHalfAxis,
    #[error("behavior is not controllable")]
    NotControllable,
    #[error("windows cover different intervals")]
    IntervalMismatch,
    #[error("splice verification failed")]
    SpliceCheckFailed,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Finite piece of a trajectory: symbols `w_start ..= w_{start+len-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Window {
    pub start: i64,
    pub symbols: Vec<Vec<u32>>,
}

impl Window {
    pub fn new(start: i64, symbols: Vec<Vec<u32>>) -> Self {
        Window { start, symbols }
    }

    pub fn zeros(start: i64, len: usize, n: usize) -> Self {
        Window { start, symbols: vec![vec![0; n]; len] }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Last time index covered (`start - 1` when empty).
    pub fn end(&self) -> i64 {
        self.start + self.symbols.len() as i64 - 1
    }

    pub fn at(&self, t: i64) -> Option<&[u32]> {
        if t < self.start {
            return None;
        }
        self.symbols.get((t - self.start) as usize).map(Vec::as_slice)
    }

    /// Window of the finite-support vector `v(z) = Σ v_t z^t` over its support.
    pub fn from_poly_vector(v: &PolyMatrix) -> Self {
        let len = (v.degree() + 1).max(0) as usize;
        let symbols = (0..len).map(|t| (0..v.rows()).map(|i| v[(i, 0)].coeff(t)).collect()).collect();
        Window { start: 0, symbols }
    }

    pub fn from_laurent_vector(v: &LaurentMatrix) -> Self {
        let low = v.col_low()[0];
        let body = shift_rows_to_poly(&v.transpose()).transpose();
        let mut w = Window::from_poly_vector(&body);
        w.start = if w.is_empty() { 0 } else { low };
        w
    }

    /// Restriction to `[a, b]`.
    pub fn restrict(&self, a: i64, b: i64) -> Window {
        let a = a.max(self.start);
        let b = b.min(self.end());
        let symbols = if b < a { Vec::new() } else { (a..=b).map(|t| self.at(t).unwrap().to_vec()).collect() };
        Window { start: a, symbols }
    }

    /// The part at nonnegative times (`w⁺`).
    pub fn positive_part(&self) -> Window {
        self.restrict(0, self.end())
    }

    /// The part at negative times (`w⁻`).
    pub fn negative_part(&self) -> Window {
        self.restrict(self.start, -1)
    }

    pub fn weight(&self) -> usize {
        self.symbols.iter().flatten().filter(|&&c| c != 0).count()
    }
}

/// Exact value `numerator / 2^exponent`, reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    pub numerator: BigUint,
    pub exponent: u32,
}

impl Dyadic {
    fn reduced(mut numerator: BigUint, mut exponent: u32) -> Self {
        if numerator == BigUint::default() {
            return Dyadic { numerator, exponent: 0 };
        }
        while exponent > 0 && !numerator.bit(0) {
            numerator >>= 1u32;
            exponent -= 1;
        }
        Dyadic { numerator, exponent }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == BigUint::default()
    }

    pub fn to_f64(&self) -> f64 {
        let n: f64 = self.numerator.to_string().parse().unwrap_or(f64::INFINITY);
        n / 2f64.powi(self.exponent as i32)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/2^{}", self.numerator, self.exponent)
        }
    }
}

/// `Σ_i 2^{-|i|} d_H(v_i, w_i)` over a common window.
pub fn sequence_metric(v: &Window, w: &Window) -> Result<Dyadic, BehaviorError> {
    if v.start != w.start || v.len() != w.len() {
        return Err(BehaviorError::IntervalMismatch);
    }
    if v.is_empty() {
        return Ok(Dyadic::reduced(BigUint::default(), 0));
    }
    let e = v.start.unsigned_abs().max(v.end().unsigned_abs()) as u32;
    let mut num = BigUint::default();
    for (idx, (a, b)) in v.symbols.iter().zip(&w.symbols).enumerate() {
        let t = v.start + idx as i64;
        let d = a.iter().zip(b).filter(|(x, y)| x != y).count() as u32;
        if d > 0 {
            num += BigUint::from(d) << (e - t.unsigned_abs() as u32);
        }
    }
    Ok(Dyadic::reduced(num, e))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BehaviorInvariants {
    pub kronecker_indices: Vec<usize>,
    pub mcmillan_degree: usize,
    /// `(n - r, n)`.
    pub rate: (usize, usize),
    pub controllable: bool,
    pub autonomous: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Behavior {
    field: Field,
    axis: Axis,
    kernel: PolyMatrix,
}

impl Behavior {
    /// Canonical behavior `ker P(σ)`.
    pub fn from_kernel(p: &AnyMatrix, axis: Axis) -> Result<Behavior, BehaviorError> {
        let field = p.field().clone();
        let kernel = match (p, axis) {
            (AnyMatrix::Rational(_), _) => return Err(BehaviorError::RationalRingUnsupported),
            (AnyMatrix::Poly(m), Axis::Z) => laurent_row_popov(&m.to_laurent()).0,
            (AnyMatrix::Laurent(m), Axis::Z) => laurent_row_popov(m).0,
            (AnyMatrix::Poly(m), Axis::ZPlus) => row_popov(m).0,
            (AnyMatrix::Laurent(m), Axis::ZPlus) => {
                row_popov(&m.to_poly().ok_or(BehaviorError::NegativeExponentOnHalfAxis)?).0
            }
        };
        Ok(Behavior { field, axis, kernel })
    }

    pub fn from_poly(p: &PolyMatrix, axis: Axis) -> Behavior {
        Behavior::from_kernel(&p.clone().into(), axis).expect("polynomial kernels are always accepted")
    }

    /// All of `(F^n)^T`.
    pub fn full(field: &Field, n: usize, axis: Axis) -> Behavior {
        Behavior { field: field.clone(), axis, kernel: PolyMatrix::zeros(field, 0, n) }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    /// Canonical row-Popov kernel matrix (full row rank).
    pub fn kernel(&self) -> &PolyMatrix {
        &self.kernel
    }

    pub fn n(&self) -> usize {
        self.kernel.cols()
    }

    pub fn r(&self) -> usize {
        self.kernel.rows()
    }

    /// Largest stencil length minus one.
    pub fn lag(&self) -> usize {
        self.kernel.degree().max(0) as usize
    }

    pub fn is_controllable(&self) -> bool {
        if self.r() == 0 {
            return true;
        }
        is_prime(&self.kernel.clone().into(), PrimeSide::Left, self.axis.ring()).unwrap_or(false)
    }

    pub fn is_autonomous(&self) -> bool {
        self.r() == self.n()
    }

    pub fn invariants(&self) -> BehaviorInvariants {
        let mut nu: Vec<usize> = self.kernel.row_degrees().iter().map(|&d| d.max(0) as usize).collect();
        nu.sort_unstable_by(|a, b| b.cmp(a));
        BehaviorInvariants {
            mcmillan_degree: nu.iter().sum(),
            kronecker_indices: nu,
            rate: (self.n() - self.r(), self.n()),
            controllable: self.is_controllable(),
            autonomous: self.is_autonomous(),
        }
    }

    /// Largest controllable sub-behavior.
    pub fn controllable_part(&self) -> Behavior {
        if self.r() == 0 {
            return self.clone();
        }
        Behavior::from_poly(&left_prime_factor(&self.kernel), self.axis)
    }

    /// Right-prime `G` with `B = im G(σ)`.
    pub fn image_representation(&self) -> Result<PolyMatrix, BehaviorError> {
        if !self.is_controllable() {
            return Err(BehaviorError::NotControllable);
        }
        Ok(column_popov(&right_kernel(&self.kernel)).0)
    }

    /// Whether every stencil that fits inside the window is annihilated.
    pub fn window_membership(&self, w: &Window) -> bool {
        stencil_equations(self, w.start, w.len()).iter().all(|eq| {
            let s = eq.iter().fold(0, |acc, &(t, c, coef)| {
                self.field.add(acc, self.field.mul(coef, w.at(t).map_or(0, |s| s[c])))
            });
            s == 0
        })
    }

    /// Fills the unknown symbols of a window so that it passes membership.
    pub fn complete_window(&self, start: i64, known: &[Option<Vec<u32>>]) -> Option<Window> {
        let f = &self.field;
        let n = self.n();
        let unknown: Vec<usize> = (0..known.len()).filter(|&i| known[i].is_none()).collect();
        let slot = |i: usize| unknown.iter().position(|&u| u == i);
        let eqs = stencil_equations(self, start, known.len());
        let mut a = ConstMatrix::zeros(f, eqs.len(), unknown.len() * n);
        let mut rhs = vec![0u32; eqs.len()];
        for (e, eq) in eqs.iter().enumerate() {
            for &(t, c, coef) in eq {
                let i = (t - start) as usize;
                match &known[i] {
                    Some(sym) => rhs[e] = f.sub(rhs[e], f.mul(coef, sym[c])),
                    None => {
                        let col = slot(i).unwrap() * n + c;
                        a[(e, col)] = f.add(a[(e, col)], coef);
                    }
                }
            }
        }
        let x = if unknown.is_empty() {
            if rhs.iter().any(|&v| v != 0) {
                return None;
            }
            Vec::new()
        } else {
            a.solve(&rhs)?
        };
        let symbols = known
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                Some(sym) => sym.clone(),
                None => {
                    let u = slot(i).unwrap();
                    x[u * n..(u + 1) * n].to_vec()
                }
            })
            .collect();
        Some(Window::new(start, symbols))
    }

    /// Joins `past` and `future` (re-timed) with `gap` free symbols between
    /// them, if the result can pass membership.
    pub fn splice_windows(&self, past: &Window, future: &Window, gap: usize) -> Option<Window> {
        let mut known: Vec<Option<Vec<u32>>> = past.symbols.iter().cloned().map(Some).collect();
        known.extend(std::iter::repeat_n(None, gap));
        known.extend(future.symbols.iter().cloned().map(Some));
        self.complete_window(past.start, &known)
    }

    /// Extends a passing window by `extra` symbols on each side.
    pub fn extend_window(&self, w: &Window, extra: usize) -> Option<Window> {
        let mut known: Vec<Option<Vec<u32>>> = vec![None; extra];
        known.extend(w.symbols.iter().cloned().map(Some));
        known.extend(std::iter::repeat_n(None, extra));
        self.complete_window(w.start - extra as i64, &known)
    }
}

/// Equations `Σ coef * w_t[c] = 0` of all stencils inside `[start, start+len)`.
fn stencil_equations(b: &Behavior, start: i64, len: usize) -> Vec<Vec<(i64, usize, u32)>> {
    let mut out = Vec::new();
    let end = start + len as i64 - 1;
    let degs = b.kernel.row_degrees();
    for (i, &l) in degs.iter().enumerate() {
        if l < 0 {
            continue;
        }
        let first = if b.axis == Axis::ZPlus { start.max(0) } else { start };
        let mut t = first;
        while t + l <= end {
            let mut eq = Vec::new();
            for c in 0..b.n() {
                for (j, &coef) in b.kernel[(i, c)].coeffs().iter().enumerate() {
                    if coef != 0 {
                        eq.push((t + j as i64, c, coef));
                    }
                }
            }
            out.push(eq);
            t += 1;
        }
    }
    out
}

/// `(P(σ)w)_t = Σ_j P_j w_{t+j}` on the times where it is fully determined.
pub fn apply_operator(p: &PolyMatrix, w: &Window) -> Window {
    let f = p.field();
    let l = p.degree().max(0);
    let len = (w.len() as i64 - l).max(0) as usize;
    let symbols = (0..len)
        .map(|s| {
            let t = w.start + s as i64;
            (0..p.rows())
                .map(|i| {
                    let mut acc = 0;
                    for c in 0..p.cols() {
                        for (j, &coef) in p[(i, c)].coeffs().iter().enumerate() {
                            acc = f.add(acc, f.mul(coef, w.at(t + j as i64).unwrap()[c]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Window::new(w.start, symbols)
}

/// Behavior `{w : ∃m, P(σ)w = G(σ)m}` with the latent variable eliminated.
pub fn arma_to_kernel(p: &AnyMatrix, g: &AnyMatrix, axis: Axis) -> Result<Behavior, BehaviorError> {
    if p.shape().0 != g.shape().0 {
        return Err(BehaviorError::Dimension(format!(
            "P has {} rows but G has {}",
            p.shape().0,
            g.shape().0
        )));
    }
    let n = p.shape().1;
    let joint = match (p, g) {
        (AnyMatrix::Rational(_), _) | (_, AnyMatrix::Rational(_)) => {
            return Err(BehaviorError::RationalRingUnsupported)
        }
        _ => {
            let pl = p.to_laurent().unwrap();
            let gl = g.to_laurent().unwrap();
            pl.hstack(&gl)
        }
    };
    let joint = if axis == Axis::ZPlus {
        joint.to_poly().ok_or(BehaviorError::NegativeExponentOnHalfAxis)?
    } else {
        shift_rows_to_poly(&joint)
    };
    let pp = joint.select_cols(&(0..n).collect::<Vec<_>>());
    let gg = joint.select_cols(&(n..joint.cols()).collect::<Vec<_>>());
    let nmat = left_kernel(&gg);
    Ok(Behavior::from_poly(&nmat.mul(&pp), axis))
}

/// A spliced codeword of a module code.
#[derive(Debug, Clone, PartialEq)]
pub struct Splice {
    pub message: PolyMatrix,
    pub codeword: PolyMatrix,
    pub gap: usize,
}

/// Joins the codewords `G a` and `G b` of the module generated by `G`: the
/// result agrees with `G a` at degrees `<= j` and with `G b` at degrees
/// `>= j + gap`, where `gap = deg G + 1`.
pub fn splice(g: &PolyMatrix, a: &PolyMatrix, b: &PolyMatrix, j: usize) -> Result<Splice, BehaviorError> {
    let f = g.field();
    let k = g.cols();
    if a.shape() != (k, 1) || b.shape() != (k, 1) {
        return Err(BehaviorError::Dimension(format!("messages must be {k}x1")));
    }
    let gap = g.degree().max(0) as usize + 1;
    let m = PolyMatrix::from_fn(f, k, 1, |i, _| {
        let low = a[(i, 0)].truncate(j + 1);
        let high = b[(i, 0)].sub(&b[(i, 0)].truncate(j + 1));
        low.add(&high)
    });
    let w = g.mul(&m);
    let ga = g.mul(a);
    let gb = g.mul(b);
    let top = [w.degree(), ga.degree(), gb.degree()].into_iter().max().unwrap().max(0) as usize;
    for i in 0..g.rows() {
        for t in 0..=top {
            if t <= j && w[(i, 0)].coeff(t) != ga[(i, 0)].coeff(t) {
                return Err(BehaviorError::SpliceCheckFailed);
            }
            if t >= j + gap && w[(i, 0)].coeff(t) != gb[(i, 0)].coeff(t) {
                return Err(BehaviorError::SpliceCheckFailed);
            }
        }
    }
    Ok(Splice { message: m, codeword: w, gap })
}

/// Module code view: columns of `G` as polynomials evaluated as `G(σ)`
/// over a window of messages.
pub fn image_trajectory(g: &PolyMatrix, m: &Window) -> Window {
    apply_operator(g, m)
}
