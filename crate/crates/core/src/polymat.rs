//! Normal forms of polynomial matrices: Popov, Smith, primeness, kernels.
//!
//! All algorithms work over `F[z]`. Laurent inputs are reduced to the
//! polynomial case by shifting rows/columns and saturating at `z`, i.e.
//! dividing out any `z`-factor until the constant coefficient matrix has full
//! rank. The resulting polynomial basis generates `M ∩ F[z]^n`, which is
//! unique for the Laurent module `M`, so the Popov form of it is canonical.
//!
//! Popov convention (column side): the leading term of a column is its
//! highest-degree entry, ties broken towards the larger row index (that row is
//! the pivot). Pivots are monic, pivot rows are pairwise distinct, the entry of
//! any other column in a pivot row has degree below that pivot's degree, and
//! columns are sorted by `(degree, pivot row)`. This is the reduced Gröbner
//! basis of the column module for the term-over-position order, hence unique.
//! The row side is the transpose.

use thiserror::Error;

use crate::field::Field;
use crate::matrix::{AnyMatrix, LaurentMatrix, Matrix, PolyMatrix, RingKind};
use crate::poly::{Laurent, Poly, RatFn, RingElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyMatError {
    #[error("normal forms are defined over F[z] and F[z,z^-1] only")]
    RationalRingUnsupported,
    #[error("matrix does not have full rank {expected} (rank {rank})")]
    RankDeficient { expected: usize, rank: usize },
    #[error("shape {rows}x{cols} does not fit a {side} primeness test")]
    ShapeMismatch { rows: usize, cols: usize, side: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Column,
    Row,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeSide {
    Left,
    Right,
}

/// The two rings the normal forms work over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Poly,
    Laurent,
}

/// Embedding of `F[z]` into a transform ring.
pub trait FromPoly: RingElement {
    fn from_poly(p: &Poly) -> Self;
}

impl FromPoly for Poly {
    fn from_poly(p: &Poly) -> Self {
        p.clone()
    }
}

impl FromPoly for Laurent {
    fn from_poly(p: &Poly) -> Self {
        Laurent::from_poly(p)
    }
}

// ---------------------------------------------------------------------------
// Column Popov over F[z]

/// Leading position `(degree, pivot row)` of column `j`, `None` if zero.
fn leading(a: &PolyMatrix, j: usize) -> Option<(i64, usize)> {
    let mut best: Option<(i64, usize)> = None;
    for i in 0..a.rows() {
        let d = a[(i, j)].deg();
        if d >= 0 && best.is_none_or(|(bd, _)| d >= bd) {
            best = Some((d, i));
        }
    }
    best
}

/// `col[dst] -= c z^e col[src]` on `a` and the transform `u`.
fn col_reduce<T: FromPoly>(a: &mut PolyMatrix, u: &mut Matrix<T>, dst: usize, src: usize, c: u32, e: usize) {
    let f = a.field().clone();
    let mult = Poly::monomial(&f, f.neg(c), e);
    a.add_col_multiple(dst, src, &mult);
    u.add_col_multiple(dst, src, &T::from_poly(&mult));
}

/// Brings the columns of `a` into Popov form in place, mirroring every column
/// operation on `u`. Zero columns are moved to the end. Returns the rank.
fn popov_in_place<T: FromPoly>(a: &mut PolyMatrix, u: &mut Matrix<T>) -> usize {
    let f = a.field().clone();
    let cols = a.cols();
    // weak Popov: make pivot rows distinct
    loop {
        let lts: Vec<Option<(i64, usize)>> = (0..cols).map(|j| leading(a, j)).collect();
        let mut clash = None;
        'outer: for j1 in 0..cols {
            for j2 in j1 + 1..cols {
                if let (Some((d1, p1)), Some((d2, p2))) = (lts[j1], lts[j2]) {
                    if p1 == p2 {
                        clash = Some(if d1 <= d2 { (j1, j2, d1, d2, p1) } else { (j2, j1, d2, d1, p1) });
                        break 'outer;
                    }
                }
            }
        }
        let Some((lo, hi, dlo, dhi, piv)) = clash else { break };
        let c = f.div(a[(piv, hi)].lead(), a[(piv, lo)].lead()).unwrap();
        col_reduce(a, u, hi, lo, c, (dhi - dlo) as usize);
    }
    // full reduction of pivot-row entries
    loop {
        let lts: Vec<Option<(i64, usize)>> = (0..cols).map(|j| leading(a, j)).collect();
        let mut changed = false;
        for j in 0..cols {
            if lts[j].is_none() {
                continue;
            }
            for l in 0..cols {
                let Some((dl, pl)) = lts[l] else { continue };
                if l == j {
                    continue;
                }
                loop {
                    let e = a[(pl, j)].deg();
                    if e < dl {
                        break;
                    }
                    let c = f.div(a[(pl, j)].lead(), a[(pl, l)].lead()).unwrap();
                    col_reduce(a, u, j, l, c, (e - dl) as usize);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    // monic pivots, sorted columns
    let mut keyed: Vec<(Option<(i64, usize)>, usize)> = (0..cols).map(|j| (leading(a, j), j)).collect();
    for &(lt, j) in &keyed {
        if let Some((_, p)) = lt {
            let inv = f.inv(a[(p, j)].lead()).unwrap();
            a.scale_col(j, &Poly::constant(&f, inv));
            u.scale_col(j, &T::from_poly(&Poly::constant(&f, inv)));
        }
    }
    keyed.sort_by_key(|&(lt, j)| match lt {
        Some((d, p)) => (0, d, p, j),
        None => (1, 0, 0, j),
    });
    let order: Vec<usize> = keyed.iter().map(|&(_, j)| j).collect();
    *a = a.select_cols(&order);
    *u = u.select_cols(&order);
    keyed.iter().filter(|(lt, _)| lt.is_some()).count()
}

/// Result of a Popov computation.
#[derive(Debug, Clone, PartialEq)]
pub struct PopovForm {
    /// Full-rank Popov basis of the module (zero columns/rows dropped).
    pub basis: PolyMatrix,
    /// Square unimodular transform: `M * U = [basis | 0]` (column side) or
    /// `U * M = [basis; 0]` (row side). Laurent when the input was Laurent.
    pub transform: AnyMatrix,
    pub rank: usize,
}

/// Column Popov form over `F[z]`: `m * u = [basis | 0]`.
pub fn column_popov(m: &PolyMatrix) -> (PolyMatrix, PolyMatrix, usize) {
    let mut a = m.clone();
    let mut u = PolyMatrix::identity(m.field(), m.cols());
    let rank = popov_in_place(&mut a, &mut u);
    let idx: Vec<usize> = (0..rank).collect();
    (a.select_cols(&idx), u, rank)
}

/// Row Popov form over `F[z]`: `u * m = [basis; 0]`.
pub fn row_popov(m: &PolyMatrix) -> (PolyMatrix, PolyMatrix, usize) {
    let (b, u, r) = column_popov(&m.transpose());
    (b.transpose(), u.transpose(), r)
}

/// Column Popov basis of the `F[z, z^-1]`-module spanned by the columns of `m`.
/// The basis is polynomial with `basis(0)` of full column rank.
pub fn laurent_column_popov(m: &LaurentMatrix) -> (PolyMatrix, LaurentMatrix, usize) {
    let f = m.field().clone();
    let lows = m.col_low();
    let shift = LaurentMatrix::from_fn(&f, m.cols(), m.cols(), |i, j| {
        if i == j {
            Laurent::monomial(&f, 1, -lows[j])
        } else {
            Laurent::zero(&f)
        }
    });
    let mut a = m.mul(&shift).to_poly().expect("shifted columns are polynomial");
    let mut u = shift;
    let rank = popov_in_place(&mut a, &mut u);
    // saturate at z
    loop {
        let idx: Vec<usize> = (0..rank).collect();
        let lead0 = a.select_cols(&idx).coeff_matrix(0);
        let ns = lead0.nullspace();
        if ns.cols() == 0 {
            break;
        }
        let c = ns.col(0);
        let degs = a.col_degrees();
        let target = (0..rank).filter(|&j| c[j] != 0).max_by_key(|&j| (degs[j], j)).unwrap();
        let inv = f.inv(c[target]).unwrap();
        a.scale_col(target, &Poly::constant(&f, c[target]));
        u.scale_col(target, &Laurent::monomial(&f, c[target], 0));
        for j in 0..rank {
            if j != target && c[j] != 0 {
                a.add_col_multiple(target, j, &Poly::constant(&f, c[j]));
                u.add_col_multiple(target, j, &Laurent::monomial(&f, c[j], 0));
            }
        }
        let _ = inv;
        for i in 0..a.rows() {
            debug_assert_eq!(a[(i, target)].coeff(0), 0);
            a[(i, target)] = a[(i, target)].shift_down(1);
        }
        u.scale_col(target, &Laurent::monomial(&f, 1, -1));
        popov_in_place(&mut a, &mut u);
    }
    let idx: Vec<usize> = (0..rank).collect();
    (a.select_cols(&idx), u, rank)
}

pub fn laurent_row_popov(m: &LaurentMatrix) -> (PolyMatrix, LaurentMatrix, usize) {
    let (b, u, r) = laurent_column_popov(&m.transpose());
    (b.transpose(), u.transpose(), r)
}

/// Popov form of the module spanned by the columns (or rows) of `m`.
pub fn popov_form(m: &AnyMatrix, side: Side) -> Result<PopovForm, PolyMatError> {
    match (m, side) {
        (AnyMatrix::Rational(_), _) => Err(PolyMatError::RationalRingUnsupported),
        (AnyMatrix::Poly(p), Side::Column) => {
            let (basis, u, rank) = column_popov(p);
            Ok(PopovForm { basis, transform: u.into(), rank })
        }
        (AnyMatrix::Poly(p), Side::Row) => {
            let (basis, u, rank) = row_popov(p);
            Ok(PopovForm { basis, transform: u.into(), rank })
        }
        (AnyMatrix::Laurent(l), Side::Column) => {
            let (basis, u, rank) = laurent_column_popov(l);
            Ok(PopovForm { basis, transform: u.into(), rank })
        }
        (AnyMatrix::Laurent(l), Side::Row) => {
            let (basis, u, rank) = laurent_row_popov(l);
            Ok(PopovForm { basis, transform: u.into(), rank })
        }
    }
}

/// Whether `m` is already in column Popov form (full column rank).
pub fn is_column_popov(m: &PolyMatrix) -> bool {
    let (b, _, r) = column_popov(m);
    r == m.cols() && &b == m
}

// ---------------------------------------------------------------------------
// Smith form over F[z]

struct Tracked {
    a: PolyMatrix,
    u: PolyMatrix,
    ui: PolyMatrix,
    v: PolyMatrix,
    vi: PolyMatrix,
}

impl Tracked {
    fn new(m: &PolyMatrix) -> Self {
        let f = m.field();
        Tracked {
            a: m.clone(),
            u: PolyMatrix::identity(f, m.rows()),
            ui: PolyMatrix::identity(f, m.rows()),
            v: PolyMatrix::identity(f, m.cols()),
            vi: PolyMatrix::identity(f, m.cols()),
        }
    }

    /// `row[dst] += c * row[src]`
    fn row_add(&mut self, dst: usize, src: usize, c: &Poly) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.ui.add_col_multiple(src, dst, &c.neg());
    }

    /// `col[dst] += c * col[src]`
    fn col_add(&mut self, dst: usize, src: usize, c: &Poly) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.vi.add_row_multiple(src, dst, &c.neg());
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.ui.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.vi.swap_rows(i, j);
    }

    fn scale_row(&mut self, i: usize, c: u32) {
        let f = self.a.field().clone();
        let ci = f.inv(c).unwrap();
        self.a.scale_row(i, &Poly::constant(&f, c));
        self.u.scale_row(i, &Poly::constant(&f, c));
        self.ui.scale_col(i, &Poly::constant(&f, ci));
    }
}

/// Smith decomposition over `F[z]`: `u * m * v = d`, with inverses of the
/// unimodular transforms (`u * u_inv = I`, `v * v_inv = I`).
#[derive(Debug, Clone, PartialEq)]
pub struct Smith {
    pub u: PolyMatrix,
    pub d: PolyMatrix,
    pub v: PolyMatrix,
    pub u_inv: PolyMatrix,
    pub v_inv: PolyMatrix,
    pub rank: usize,
}

impl Smith {
    /// Nonzero invariant factors `d_1 | d_2 | ...`.
    pub fn invariant_factors(&self) -> Vec<Poly> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_poly(m: &PolyMatrix) -> Smith {
    let (rows, cols) = m.shape();
    let mut t = Tracked::new(m);
    let mut rank = 0;
    for s in 0..rows.min(cols) {
        loop {
            // smallest-degree nonzero entry of the trailing block
            let mut best: Option<(i64, usize, usize)> = None;
            for i in s..rows {
                for j in s..cols {
                    let d = t.a[(i, j)].deg();
                    if d >= 0 && best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else { break };
            t.swap_rows(s, pi);
            t.swap_cols(s, pj);
            let pivot = t.a[(s, s)].clone();
            let mut clean = true;
            for i in s + 1..rows {
                if t.a[(i, s)].is_zero() {
                    continue;
                }
                let (q, r) = t.a[(i, s)].div_rem(&pivot);
                t.row_add(i, s, &q.neg());
                clean &= r.is_zero();
            }
            for j in s + 1..cols {
                if t.a[(s, j)].is_zero() {
                    continue;
                }
                let (q, r) = t.a[(s, j)].div_rem(&pivot);
                t.col_add(j, s, &q.neg());
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (s + 1..rows).find(|&i| (s + 1..cols).any(|j| !pivot.divides(&t.a[(i, j)])));
            match bad {
                Some(i) => t.row_add(s, i, &Poly::one(m.field())),
                None => break,
            }
        }
        if t.a[(s, s)].is_zero() {
            break;
        }
        let lead = t.a[(s, s)].lead();
        t.scale_row(s, m.field().inv(lead).unwrap());
        rank += 1;
    }
    Smith { u: t.u, d: t.a, v: t.v, u_inv: t.ui, v_inv: t.vi, rank }
}

/// Smith decomposition over `F[z, z^-1]`: `u * m * v = d` with each nonzero
/// `d_i` monic and `d_i(0) != 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSmith {
    pub u: LaurentMatrix,
    pub d: PolyMatrix,
    pub v: LaurentMatrix,
    pub u_inv: LaurentMatrix,
    pub v_inv: LaurentMatrix,
    pub rank: usize,
}

fn diag_laurent(f: &Field, exps: &[i64]) -> LaurentMatrix {
    LaurentMatrix::from_fn(f, exps.len(), exps.len(), |i, j| {
        if i == j {
            Laurent::monomial(f, 1, exps[i])
        } else {
            Laurent::zero(f)
        }
    })
}

pub fn smith_laurent(m: &LaurentMatrix) -> LaurentSmith {
    let f = m.field().clone();
    let lows = m.row_low();
    let neg: Vec<i64> = lows.iter().map(|l| -l).collect();
    let s = diag_laurent(&f, &neg);
    let s_inv = diag_laurent(&f, &lows);
    let shifted = s.mul(m).to_poly().expect("shifted rows are polynomial");
    let sm = smith_poly(&shifted);
    let mut strip = vec![0i64; m.rows()];
    let mut d = sm.d.clone();
    for (i, e) in strip.iter_mut().enumerate().take(sm.rank) {
        let v = d[(i, i)].valuation().unwrap();
        *e = v as i64;
        d[(i, i)] = d[(i, i)].shift_down(v);
    }
    let zneg: Vec<i64> = strip.iter().map(|e| -e).collect();
    let u = diag_laurent(&f, &zneg).mul(&sm.u.to_laurent()).mul(&s);
    let u_inv = s_inv.mul(&sm.u_inv.to_laurent()).mul(&diag_laurent(&f, &strip));
    LaurentSmith { u, d, v: sm.v.to_laurent(), u_inv, v_inv: sm.v_inv.to_laurent(), rank: sm.rank }
}

/// Result of [`smith_form`] for either ring.
#[derive(Debug, Clone, PartialEq)]
pub struct SmithForm {
    pub u: AnyMatrix,
    pub d: PolyMatrix,
    pub v: AnyMatrix,
    pub rank: usize,
}

pub fn smith_form(m: &AnyMatrix) -> Result<SmithForm, PolyMatError> {
    match m {
        AnyMatrix::Poly(p) => {
            let s = smith_poly(p);
            Ok(SmithForm { u: s.u.into(), d: s.d, v: s.v.into(), rank: s.rank })
        }
        AnyMatrix::Laurent(l) => {
            let s = smith_laurent(l);
            Ok(SmithForm { u: s.u.into(), d: s.d, v: s.v.into(), rank: s.rank })
        }
        AnyMatrix::Rational(_) => Err(PolyMatError::RationalRingUnsupported),
    }
}

// ---------------------------------------------------------------------------
// Rank, determinant, primeness, factorizations

/// Rank over `F(z)`.
pub fn rank_poly(m: &PolyMatrix) -> usize {
    let mut a = m.clone();
    let mut u = PolyMatrix::zeros(m.field(), 0, m.cols());
    popov_in_place(&mut a, &mut u)
}

/// Clears denominators row by row; preserves rank and row module over `F(z)`.
pub fn clear_row_denominators(m: &Matrix<RatFn>) -> PolyMatrix {
    let f = m.field().clone();
    let mut out = PolyMatrix::zeros(&f, m.rows(), m.cols());
    for i in 0..m.rows() {
        let l = (0..m.cols()).fold(Poly::one(&f), |acc, j| acc.lcm(m[(i, j)].den()));
        for j in 0..m.cols() {
            let e = &m[(i, j)];
            out[(i, j)] = e.num().mul(&l.exact_div(e.den()).unwrap());
        }
    }
    out
}

/// Clears denominators column by column.
pub fn clear_col_denominators(m: &Matrix<RatFn>) -> PolyMatrix {
    clear_row_denominators(&m.transpose()).transpose()
}

/// Rank over the fraction field `F(z)`, for any ring tag.
pub fn matrix_rank(m: &AnyMatrix) -> usize {
    match m {
        AnyMatrix::Poly(p) => rank_poly(p),
        AnyMatrix::Laurent(l) => rank_poly(&shift_rows_to_poly(l)),
        AnyMatrix::Rational(r) => rank_poly(&clear_row_denominators(r)),
    }
}

pub(crate) fn shift_rows_to_poly(l: &LaurentMatrix) -> PolyMatrix {
    let f = l.field();
    let lows = l.row_low();
    let neg: Vec<i64> = lows.iter().map(|x| -x).collect();
    diag_laurent(f, &neg).mul(l).to_poly().unwrap()
}

pub(crate) fn shift_cols_to_poly(l: &LaurentMatrix) -> PolyMatrix {
    let f = l.field();
    let neg: Vec<i64> = l.col_low().iter().map(|x| -x).collect();
    l.mul(&diag_laurent(f, &neg)).to_poly().unwrap()
}

/// Determinant of a square polynomial matrix (fraction-free elimination).
pub fn det(m: &PolyMatrix) -> Poly {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let f = m.field().clone();
    let n = m.rows();
    if n == 0 {
        return Poly::one(&f);
    }
    let mut a = m.clone();
    let mut prev = Poly::one(&f);
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
            return Poly::zero(&f);
        };
        if p != k {
            a.swap_rows(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[(i, j)].mul(&a[(k, k)]).sub(&a[(i, k)].mul(&a[(k, j)]));
                a[(i, j)] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[(i, k)] = Poly::zero(&f);
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

fn is_ring_unit(p: &Poly, ring: BaseRing) -> bool {
    match ring {
        BaseRing::Poly => p.is_unit(),
        BaseRing::Laurent => !p.is_zero() && p.weight() == 1,
    }
}

/// Whether the gcd of the maximal minors is a unit of `ring`.
pub fn is_prime(m: &AnyMatrix, side: PrimeSide, ring: BaseRing) -> Result<bool, PolyMatError> {
    let (rows, cols) = m.shape();
    let (full, name) = match side {
        PrimeSide::Left => (rows, "left"),
        PrimeSide::Right => (cols, "right"),
    };
    if (side == PrimeSide::Left && rows > cols) || (side == PrimeSide::Right && cols > rows) {
        return Err(PolyMatError::ShapeMismatch { rows, cols, side: name });
    }
    let p = match m {
        AnyMatrix::Poly(p) => p.clone(),
        AnyMatrix::Laurent(l) => match side {
            PrimeSide::Left => shift_rows_to_poly(l),
            PrimeSide::Right => shift_cols_to_poly(l),
        },
        AnyMatrix::Rational(_) => return Err(PolyMatError::RationalRingUnsupported),
    };
    let s = smith_poly(&p);
    if s.rank < full {
        return Err(PolyMatError::RankDeficient { expected: full, rank: s.rank });
    }
    Ok(s.invariant_factors().iter().all(|d| is_ring_unit(d, ring)))
}

/// gcd of the maximal minors (product of the invariant factors), monic.
pub fn minors_gcd(m: &PolyMatrix) -> Poly {
    let s = smith_poly(m);
    s.invariant_factors().iter().fold(Poly::one(m.field()), |acc, d| acc.mul(d))
}

/// Right-prime factor of the rational column span: an `n x rank` matrix whose
/// columns are part of a unimodular matrix and span the same `F(z)`-space.
pub fn right_prime_factor(m: &PolyMatrix) -> PolyMatrix {
    let s = smith_poly(m);
    let idx: Vec<usize> = (0..s.rank).collect();
    s.u_inv.select_cols(&idx)
}

/// Left-prime factor of the rational row span.
pub fn left_prime_factor(m: &PolyMatrix) -> PolyMatrix {
    right_prime_factor(&m.transpose()).transpose()
}

/// Basis of the right kernel module `{x : m x = 0}` as columns (right prime).
pub fn right_kernel(m: &PolyMatrix) -> PolyMatrix {
    let s = smith_poly(m);
    let idx: Vec<usize> = (s.rank..m.cols()).collect();
    s.v.select_cols(&idx)
}

/// Basis of the left kernel module `{y : y m = 0}` as rows (left prime).
pub fn left_kernel(m: &PolyMatrix) -> PolyMatrix {
    right_kernel(&m.transpose()).transpose()
}

pub fn ring_of(kind: RingKind) -> Option<BaseRing> {
    match kind {
        RingKind::Poly => Some(BaseRing::Poly),
        RingKind::Laurent => Some(BaseRing::Laurent),
        RingKind::Rational => None,
    }
}
