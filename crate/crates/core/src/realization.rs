//! First-order representations: state-space realizations `(A, B, C, D)`,
//! code pencils `(K, L, M)` and behavior pencils `(G, F, H)`.

use serde::Serialize;
use thiserror::Error;

use crate::behavior::{Behavior, Window};
use crate::code::ConvCode;
use crate::field::Field;
use crate::matrix::{ConstMatrix, PolyMatrix};
use crate::poly::{Poly, RingElement};
use crate::polymat::{det, is_prime, BaseRing, PrimeSide};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("realization is not minimal")]
    NotMinimal,
    #[error("no choice of rows gives a square block whose determinant has degree {0}")]
    NoValidPartition(usize),
    #[error("realizations have different input/output sizes")]
    ShapeMismatch,
}

/// `x_{t+1} = A x_t + B u_t`, `y_t = C x_t + D u_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub a: ConstMatrix,
    pub b: ConstMatrix,
    pub c: ConstMatrix,
    pub d: ConstMatrix,
}

impl Realization {
    pub fn state_dim(&self) -> usize {
        self.a.rows()
    }

    pub fn field(&self) -> &Field {
        self.d.field()
    }

    /// `(S A S^-1, S B, C S^-1, D)`.
    pub fn similar(&self, s: &ConstMatrix) -> Option<Realization> {
        let si = s.inverse()?;
        Some(Realization { a: s.mul(&self.a).mul(&si), b: s.mul(&self.b), c: self.c.mul(&si), d: self.d.clone() })
    }
}

/// Shift-register realization of `G(z^-1)`: one register chain per column of
/// length equal to its degree. Markov parameters are the coefficients of `G`.
pub fn controller_form(g: &PolyMatrix) -> Realization {
    let f = g.field().clone();
    let (p, k) = g.shape();
    let degs: Vec<usize> = g.col_degrees().iter().map(|&d| d.max(0) as usize).collect();
    let delta: usize = degs.iter().sum();
    let mut a = ConstMatrix::zeros(&f, delta, delta);
    let mut b = ConstMatrix::zeros(&f, delta, k);
    let mut c = ConstMatrix::zeros(&f, p, delta);
    let mut off = 0;
    for (i, &e) in degs.iter().enumerate() {
        if e > 0 {
            b[(off, i)] = 1;
        }
        for j in 0..e {
            if j + 1 < e {
                a[(off + j + 1, off + j)] = 1;
            }
            for r in 0..p {
                c[(r, off + j)] = g[(r, i)].coeff(j + 1);
            }
        }
        off += e;
    }
    Realization { a, b, c, d: g.coeff_matrix(0) }
}

/// Realization of the canonical generator of a code.
pub fn realize_code(code: &ConvCode) -> Realization {
    controller_form(code.generator())
}

/// `[D, CB, CAB, ..., C A^{count-2} B]`.
pub fn markov_parameters(r: &Realization, count: usize) -> Vec<ConstMatrix> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(r.d.clone());
    let mut ab = r.b.clone();
    for _ in 1..count {
        out.push(r.c.mul(&ab));
        ab = r.a.mul(&ab);
    }
    out
}

fn krylov(a: &ConstMatrix, b: &ConstMatrix) -> ConstMatrix {
    let n = a.rows();
    let mut blocks = b.clone();
    let mut cur = b.clone();
    for _ in 1..n {
        cur = a.mul(&cur);
        blocks = blocks.hstack(&cur);
    }
    blocks
}

/// `(controllable, observable)`.
pub fn is_minimal(r: &Realization) -> (bool, bool) {
    let n = r.state_dim();
    if n == 0 {
        return (true, true);
    }
    let ctrl = krylov(&r.a, &r.b).rank() == n;
    let obs = krylov(&r.a.transpose(), &r.c.transpose()).rank() == n;
    (ctrl, obs)
}

/// Controllability indices of `(A, B)`, in descending order.
pub fn controllability_indices(a: &ConstMatrix, b: &ConstMatrix) -> Vec<usize> {
    let n = a.rows();
    let k = b.cols();
    let mut kept = ConstMatrix::zeros(a.field(), n, 0);
    let mut idx = vec![0usize; k];
    let mut alive = vec![true; k];
    let mut powers = b.clone();
    for _ in 0..=n {
        for i in 0..k {
            if !alive[i] {
                continue;
            }
            let col = ConstMatrix::from_fn(a.field(), n, 1, |r, _| powers[(r, i)]);
            let cand = kept.hstack(&col);
            if cand.rank() > kept.cols() {
                kept = cand;
                idx[i] += 1;
            } else {
                alive[i] = false;
            }
        }
        powers = a.mul(&powers);
    }
    idx.sort_unstable_by(|x, y| y.cmp(x));
    idx
}

/// Markov-parameter comparison of two minimal realizations.
pub fn realizations_equivalent(r1: &Realization, r2: &Realization) -> Result<bool, RealizationError> {
    if is_minimal(r1) != (true, true) || is_minimal(r2) != (true, true) {
        return Err(RealizationError::NotMinimal);
    }
    if r1.d.shape() != r2.d.shape() {
        return Err(RealizationError::ShapeMismatch);
    }
    if r1.state_dim() != r2.state_dim() {
        return Ok(false);
    }
    let count = 2 * r1.state_dim() + 1;
    Ok(markov_parameters(r1, count) == markov_parameters(r2, count))
}

/// Controller-form realization of `Y U^-1` where `U` is column reduced with
/// column degrees `degs`; `None` if the leading matrix of `U` is singular.
fn right_fraction_realization(y: &PolyMatrix, u: &PolyMatrix, degs: &[usize]) -> Option<Realization> {
    let f = u.field().clone();
    let k = u.cols();
    let p = y.rows();
    let delta: usize = degs.iter().sum();
    let hc = |m: &PolyMatrix| ConstMatrix::from_fn(&f, m.rows(), k, |r, i| m[(r, i)].coeff(degs[i]));
    let lc = |m: &PolyMatrix| {
        let mut out = ConstMatrix::zeros(&f, m.rows(), delta);
        let mut off = 0;
        for (i, &e) in degs.iter().enumerate() {
            for j in 0..e {
                for r in 0..m.rows() {
                    out[(r, off + j)] = m[(r, i)].coeff(j);
                }
            }
            off += e;
        }
        out
    };
    let u_hc_inv = hc(u).inverse()?;
    let (u_lc, y_hc, y_lc) = (lc(u), hc(y), lc(y));
    let mut a0 = ConstMatrix::zeros(&f, delta, delta);
    let mut b0 = ConstMatrix::zeros(&f, delta, k);
    let mut off = 0;
    for (i, &e) in degs.iter().enumerate() {
        for j in 0..e {
            if j + 1 < e {
                a0[(off + j, off + j + 1)] = 1;
            } else {
                b0[(off + j, i)] = 1;
            }
        }
        off += e;
    }
    let b = b0.mul(&u_hc_inv);
    let a = a0.sub(&b.mul(&u_lc));
    let d = y_hc.mul(&u_hc_inv);
    let c = y_lc.sub(&d.mul(&u_lc));
    debug_assert_eq!(c.rows(), p);
    Some(Realization { a, b, c, d })
}

/// Lexicographic `k`-subsets of `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&i| cur[i] < n - k + i) else { break };
        cur[pos] += 1;
        for i in pos + 1..k {
            cur[i] = cur[i - 1] + 1;
        }
    }
    out
}

/// Pencil `z K x + L x + M v = 0` describing a polynomial code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodePencil {
    pub k: ConstMatrix,
    pub l: ConstMatrix,
    pub m: ConstMatrix,
    /// Rows of the generator forming the square block `U`.
    pub input_rows: Vec<usize>,
    /// Realization of `Y U^-1`.
    pub realization: Realization,
}

impl CodePencil {
    /// `(T K S^-1, T L S^-1, T M)`.
    pub fn transformed(&self, t: &ConstMatrix, s: &ConstMatrix) -> Option<CodePencil> {
        let si = s.inverse()?;
        t.inverse()?;
        Some(CodePencil {
            k: t.mul(&self.k).mul(&si),
            l: t.mul(&self.l).mul(&si),
            m: t.mul(&self.m),
            input_rows: self.input_rows.clone(),
            realization: self.realization.clone(),
        })
    }

    /// The three minimality conditions.
    pub fn minimality(&self) -> [bool; 3] {
        let f = self.k.field();
        let km = self.k.hstack(&self.m);
        let zk = self.k.to_poly().map(|e| e.mul(&Poly::z(f))).add(&self.l.to_poly());
        let pencil = zk.hstack(&self.m.to_poly());
        let prime = pencil.rows() == 0
            || is_prime(&pencil.into(), PrimeSide::Left, BaseRing::Poly).unwrap_or(false);
        [self.k.rank() == self.k.cols(), km.rank() == km.rows(), prime]
    }
}

/// Pencil of the canonical generator via the first row partition
/// `G = [Y; U]` with `deg det U = δ`.
pub fn code_pencil(code: &ConvCode) -> Result<CodePencil, RealizationError> {
    let g = code.generator();
    let f = g.field().clone();
    let (n, k) = g.shape();
    let delta = code.degree();
    let degs = code.column_degrees();
    for rows in subsets(n, k) {
        let u = g.select_rows(&rows);
        if det(&u).deg() != delta as i64 {
            continue;
        }
        let out_rows: Vec<usize> = (0..n).filter(|r| !rows.contains(r)).collect();
        let y = g.select_rows(&out_rows);
        let Some(r) = right_fraction_realization(&y, &u, &degs) else { continue };
        let p = n - k;
        let kk = ConstMatrix::identity(&f, delta).vstack(&ConstMatrix::zeros(&f, p, delta));
        let l = r.a.neg().vstack(&r.c.neg());
        let mut m = ConstMatrix::zeros(&f, delta + p, n);
        for (i, &row) in rows.iter().enumerate() {
            for s in 0..delta {
                m[(s, row)] = f.neg(r.b[(s, i)]);
            }
            for s in 0..p {
                m[(delta + s, row)] = f.neg(r.d[(s, i)]);
            }
        }
        for (s, &row) in out_rows.iter().enumerate() {
            m[(delta + s, row)] = 1;
        }
        return Ok(CodePencil { k: kk, l, m, input_rows: rows, realization: r });
    }
    Err(RealizationError::NoValidPartition(delta))
}

/// Solves `z K x + L x + M v = 0` for a polynomial state `x`.
pub fn pencil_membership(p: &CodePencil, v: &PolyMatrix) -> Option<PolyMatrix> {
    let f = p.k.field().clone();
    let delta = p.k.cols();
    let rows = p.k.rows();
    let top = v.degree().max(0) as usize;
    let vs: Vec<Vec<u32>> = (0..=top + 1).map(|t| (0..v.rows()).map(|i| v[(i, 0)].coeff(t)).collect()).collect();
    // coefficient of z^s: K x_{s-1} + L x_s + M v_s = 0, x_{-1} = x_{top+1} = 0
    let unknowns = delta * (top + 1);
    let mut a = ConstMatrix::zeros(&f, rows * (top + 2), unknowns);
    let mut rhs = vec![0u32; rows * (top + 2)];
    for s in 0..=top + 1 {
        let mv = p.m.mul_vec(&vs[s]);
        for r in 0..rows {
            let e = s * rows + r;
            rhs[e] = f.neg(mv[r]);
            for c in 0..delta {
                if s >= 1 {
                    a[(e, (s - 1) * delta + c)] = f.add(a[(e, (s - 1) * delta + c)], p.k[(r, c)]);
                }
                if s <= top {
                    a[(e, s * delta + c)] = f.add(a[(e, s * delta + c)], p.l[(r, c)]);
                }
            }
        }
    }
    let x = if unknowns == 0 {
        if rhs.iter().any(|&r| r != 0) {
            return None;
        }
        Vec::new()
    } else {
        a.solve(&rhs)?
    };
    Some(PolyMatrix::from_fn(&f, delta, 1, |c, _| {
        Poly::new(&f, (0..=top).map(|t| x[t * delta + c]).collect())
    }))
}

/// Pencil `(σ G - F) ζ = 0`, `w = H ζ` describing a behavior.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BehaviorPencilShape {
    pub state_dim: usize,
    pub free: usize,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehaviorPencil {
    pub g: ConstMatrix,
    pub f: ConstMatrix,
    pub h: ConstMatrix,
    /// Columns of the kernel forming the square block.
    pub output_cols: Vec<usize>,
    /// Observer-form realization of the output map.
    pub realization: Realization,
}

impl BehaviorPencil {
    pub fn shape(&self) -> BehaviorPencilShape {
        BehaviorPencilShape { state_dim: self.g.rows(), free: self.g.cols() - self.g.rows(), n: self.h.rows() }
    }

    pub fn minimality(&self) -> [bool; 3] {
        let fld = self.g.field();
        let gh = self.g.vstack(&self.h);
        let zg = self.g.to_poly().map(|e| e.mul(&Poly::z(fld))).sub(&self.f.to_poly());
        let pencil = zg.vstack(&self.h.to_poly());
        let prime =
            pencil.cols() == 0 || is_prime(&pencil.into(), PrimeSide::Right, BaseRing::Poly).unwrap_or(false);
        [self.g.rank() == self.g.rows(), gh.rank() == gh.cols(), prime]
    }

    /// Whether some state path explains the window.
    pub fn window_membership(&self, w: &Window) -> bool {
        let fld = self.g.field().clone();
        let dz = self.g.cols();
        let delta = self.g.rows();
        let n = self.h.rows();
        let len = w.len();
        // unknowns ζ_t for t in window; equations G ζ_{t+1} = F ζ_t and H ζ_t = w_t
        let mut a = ConstMatrix::zeros(&fld, delta * len.saturating_sub(1) + n * len, dz * len);
        let mut rhs = vec![0u32; a.rows()];
        let mut e = 0;
        for t in 0..len.saturating_sub(1) {
            for r in 0..delta {
                for c in 0..dz {
                    a[(e, (t + 1) * dz + c)] = self.g[(r, c)];
                    a[(e, t * dz + c)] = fld.neg(self.f[(r, c)]);
                }
                e += 1;
            }
        }
        for t in 0..len {
            for r in 0..n {
                for c in 0..dz {
                    a[(e, t * dz + c)] = self.h[(r, c)];
                }
                rhs[e] = w.symbols[t][r];
                e += 1;
            }
        }
        if a.cols() == 0 {
            return rhs.iter().all(|&x| x == 0);
        }
        a.solve(&rhs).is_some()
    }

    /// Random trajectory on `[start, start + len)` from a random initial
    /// state and random free inputs.
    pub fn sample<R: rand::Rng>(&self, rng: &mut R, start: i64, len: usize) -> Window {
        let fld = self.g.field();
        let r = &self.realization;
        let q = fld.order();
        let delta = r.a.rows();
        let free = r.b.cols();
        let mut x: Vec<u32> = (0..delta).map(|_| rng.gen_range(0..q)).collect();
        let mut symbols = Vec::with_capacity(len);
        for _ in 0..len {
            let u: Vec<u32> = (0..free).map(|_| rng.gen_range(0..q)).collect();
            let mut zeta = x.clone();
            zeta.extend(&u);
            symbols.push(self.h.mul_vec(&zeta));
            let ax = r.a.mul_vec(&x);
            let bu = r.b.mul_vec(&u);
            x = ax.iter().zip(&bu).map(|(p, s)| fld.add(*p, *s)).collect();
        }
        Window::new(start, symbols)
    }
}

/// Observer-form pencil of a behavior, obtained by transposing the
/// controller form of `(-P_u)^t (P_y^t)^-1`.
pub fn behavior_pencil(b: &Behavior) -> Result<BehaviorPencil, RealizationError> {
    let p = b.kernel();
    let fld = p.field().clone();
    let (r, n) = p.shape();
    let free = n - r;
    let degs: Vec<usize> = p.row_degrees().iter().map(|&d| d.max(0) as usize).collect();
    let delta: usize = degs.iter().sum();
    for cols in subsets(n, r) {
        let py = p.select_cols(&cols);
        if det(&py).deg() != delta as i64 {
            continue;
        }
        let free_cols: Vec<usize> = (0..n).filter(|c| !cols.contains(c)).collect();
        let pu = p.select_cols(&free_cols);
        let Some(t) = right_fraction_realization(&pu.neg().transpose(), &py.transpose(), &degs) else { continue };
        let real = Realization { a: t.a.transpose(), b: t.c.transpose(), c: t.b.transpose(), d: t.d.transpose() };
        let g = ConstMatrix::identity(&fld, delta).hstack(&ConstMatrix::zeros(&fld, delta, free));
        let f = real.a.hstack(&real.b);
        let mut h = ConstMatrix::zeros(&fld, n, delta + free);
        for (i, &col) in cols.iter().enumerate() {
            for s in 0..delta {
                h[(col, s)] = real.c[(i, s)];
            }
            for s in 0..free {
                h[(col, delta + s)] = real.d[(i, s)];
            }
        }
        for (s, &col) in free_cols.iter().enumerate() {
            h[(col, delta + s)] = 1;
        }
        return Ok(BehaviorPencil { g, f, h, output_cols: cols, realization: real });
    }
    Err(RealizationError::NoValidPartition(delta))
}
