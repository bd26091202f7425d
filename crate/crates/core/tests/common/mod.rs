//! Random instance generators and independent oracles shared by the
//! integration tests.
#![allow(dead_code)]

use convcode::field::Field;
use convcode::matrix::{ConstMatrix, PolyMatrix};
use convcode::poly::{Poly, RatFn, RingElement};
use rand::Rng;

pub fn field(q: u32) -> Field {
    Field::with_order(q).unwrap()
}

pub fn rand_poly<R: Rng>(rng: &mut R, f: &Field, max_deg: usize) -> Poly {
    let len = rng.gen_range(0..=max_deg + 1);
    Poly::new(f, (0..len).map(|_| rng.gen_range(0..f.order())).collect())
}

pub fn rand_matrix<R: Rng>(rng: &mut R, f: &Field, rows: usize, cols: usize, max_deg: usize) -> PolyMatrix {
    PolyMatrix::from_fn(f, rows, cols, |_, _| rand_poly(rng, f, max_deg))
}

/// Random full-column-rank `n x k` polynomial matrix.
pub fn rand_full_rank<R: Rng>(rng: &mut R, f: &Field, n: usize, k: usize, max_deg: usize) -> PolyMatrix {
    loop {
        let g = rand_matrix(rng, f, n, k, max_deg);
        if rank_oracle(&g) == k {
            return g;
        }
    }
}

/// Product of random elementary column operations.
pub fn rand_unimodular<R: Rng>(rng: &mut R, f: &Field, n: usize, steps: usize, max_deg: usize) -> PolyMatrix {
    let mut u = PolyMatrix::identity(f, n);
    if n == 0 {
        return u;
    }
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 if n > 1 => {
                let a = rng.gen_range(0..n);
                let b = (a + rng.gen_range(1..n)) % n;
                let c = rand_poly(rng, f, max_deg);
                u.add_col_multiple(a, b, &c);
            }
            1 => {
                let a = rng.gen_range(0..n);
                let c = rng.gen_range(1..f.order());
                u.scale_col(a, &Poly::constant(f, c));
            }
            _ if n > 1 => {
                let a = rng.gen_range(0..n);
                let b = (a + rng.gen_range(1..n)) % n;
                u.swap_cols(a, b);
            }
            _ => {}
        }
    }
    u
}

pub fn rand_invertible_const<R: Rng>(rng: &mut R, f: &Field, n: usize) -> ConstMatrix {
    loop {
        let m = ConstMatrix::from_fn(f, n, n, |_, _| rng.gen_range(0..f.order()));
        if m.rank() == n {
            return m;
        }
    }
}

/// Random invertible `k x k` rational matrix with nontrivial denominators.
pub fn rand_invertible_rational<R: Rng>(rng: &mut R, f: &Field, k: usize, max_deg: usize) -> convcode::matrix::RationalMatrix {
    loop {
        let t = convcode::matrix::RationalMatrix::from_fn(f, k, k, |_, _| {
            let num = rand_poly(rng, f, max_deg);
            let mut den = rand_poly(rng, f, max_deg);
            while den.is_zero() {
                den = rand_poly(rng, f, max_deg);
            }
            RatFn::new(num, den)
        });
        if !rational_det(&t).is_zero() {
            return t;
        }
    }
}

/// Laplace expansion along the first row.
pub fn det_cofactor<T: RingElement>(m: &convcode::matrix::Matrix<T>) -> T {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let f = m.field();
    if n == 0 {
        return T::one(f);
    }
    let mut acc = T::zero(f);
    for j in 0..n {
        if m[(0, j)].is_zero() {
            continue;
        }
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let minor = det_cofactor(&m.select_rows(&rows).select_cols(&cols));
        let term = m[(0, j)].mul(&minor);
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

pub fn rational_det(m: &convcode::matrix::RationalMatrix) -> RatFn {
    det_cofactor(m)
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All `k x k` minors of a tall `n x k` matrix.
pub fn maximal_minors(m: &PolyMatrix) -> Vec<Poly> {
    let (n, k) = m.shape();
    subsets(n, k).iter().map(|rows| det_cofactor(&m.select_rows(rows))).collect()
}

pub fn gcd_all(ps: &[Poly], f: &Field) -> Poly {
    ps.iter().fold(Poly::zero(f), |g, p| g.gcd(p))
}

/// Rank by the largest nonvanishing minor.
pub fn rank_oracle(m: &PolyMatrix) -> usize {
    let (r, c) = m.shape();
    for k in (1..=r.min(c)).rev() {
        for rows in subsets(r, k) {
            let sub = m.select_rows(&rows);
            for cols in subsets(c, k) {
                if !det_cofactor(&sub.select_cols(&cols)).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// Right primeness of a tall full-column-rank matrix via its minors.
pub fn right_prime_oracle(m: &PolyMatrix, laurent: bool) -> bool {
    let g = gcd_all(&maximal_minors(m), m.field());
    match g.degree() {
        None => false,
        Some(0) => true,
        Some(d) => laurent && g.valuation() == Some(d),
    }
}

pub fn weight(m: &PolyMatrix) -> usize {
    m.entries().iter().map(Poly::weight).sum()
}

/// All polynomial `n x 1` words with every entry of degree at most `max_deg`.
pub fn all_words(f: &Field, n: usize, max_deg: usize) -> Vec<PolyMatrix> {
    let q = f.order() as u64;
    let digits = n * (max_deg + 1);
    let total = q.pow(digits as u32);
    (0..total)
        .map(|mut idx| {
            let mut c = vec![0u32; digits];
            for d in c.iter_mut() {
                *d = (idx % q) as u32;
                idx /= q;
            }
            PolyMatrix::from_fn(f, n, 1, |i, _| Poly::new(f, c[i * (max_deg + 1)..(i + 1) * (max_deg + 1)].to_vec()))
        })
        .collect()
}
