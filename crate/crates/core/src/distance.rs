//! Free distance by uniform-cost search on the encoder trellis, and a
//! brute-force enumeration oracle.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::behavior::Behavior;
use crate::code::{ConvCode, Framework};
use crate::field::Field;
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::realization::controller_form;

/// Largest number of messages the oracle will enumerate.
pub const ORACLE_BUDGET: u64 = 10_000_000;

/// Largest trellis the search will build.
pub const MAX_STATES: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("enumerating {q}^{digits} messages exceeds the budget of {ORACLE_BUDGET}")]
    BudgetExceeded { q: u32, digits: usize },
    #[error("free distance is only defined here for controllable or autonomous behaviors")]
    UnsupportedBehavior,
    #[error("trellis with q^{degree} states is too large")]
    TrellisTooLarge { degree: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceResult {
    /// `None` means infinite (no nonzero finite-support codeword).
    pub d_free: Option<usize>,
    pub message: Option<PolyMatrix>,
    pub witness: Option<PolyMatrix>,
    pub states_expanded: usize,
}

fn weight(v: &[u32]) -> usize {
    v.iter().filter(|&&c| c != 0).count()
}

fn decode(mut idx: u64, q: u64, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (idx % q) as u32;
            idx /= q;
            d
        })
        .collect()
}

fn encode_index(v: &[u32], q: u64) -> u64 {
    v.iter().rev().fold(0, |acc, &d| acc * q + d as u64)
}

fn add_vec(f: &Field, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| f.add(*x, *y)).collect()
}

/// Exact free distance of the code; fills the code's cache.
pub fn free_distance(code: &ConvCode) -> Result<DistanceResult, DistanceError> {
    let res = trellis_search(code.generator())?;
    code.set_d_free(res.d_free);
    Ok(res)
}

/// Minimum weight of a nonzero codeword `G m`, searched on the trellis of
/// the controller form of `G`.
pub fn trellis_search(g: &PolyMatrix) -> Result<DistanceResult, DistanceError> {
    let f = g.field().clone();
    let k = g.cols();
    if k == 0 {
        return Ok(DistanceResult { d_free: None, message: None, witness: None, states_expanded: 0 });
    }
    let r = controller_form(g);
    let q = f.order() as u64;
    let delta = r.state_dim();
    let states = (q as f64).powi(delta as i32);
    if states > MAX_STATES as f64 {
        return Err(DistanceError::TrellisTooLarge { degree: delta });
    }
    let nstates = q.pow(delta as u32) as usize;
    let ninputs = q.pow(k as u32);
    let inputs: Vec<Vec<u32>> = (0..ninputs).map(|i| decode(i, q, k)).collect();
    let du: Vec<Vec<u32>> = inputs.iter().map(|u| r.d.mul_vec(u)).collect();
    let bu: Vec<Vec<u32>> = inputs.iter().map(|u| r.b.mul_vec(u)).collect();

    const START: usize = usize::MAX;
    let mut dist = vec![usize::MAX; nstates];
    let mut pred: Vec<(usize, usize)> = vec![(START, 0); nstates];
    let mut best: Option<(usize, usize, usize)> = None; // (cost, last state, input)
    let mut heap = BinaryHeap::new();
    for ui in 1..inputs.len() {
        let cost = weight(&du[ui]);
        let next = encode_index(&bu[ui], q) as usize;
        if next == 0 {
            if best.is_none_or(|(c, _, _)| cost < c) {
                best = Some((cost, START, ui));
            }
        } else if cost < dist[next] {
            dist[next] = cost;
            pred[next] = (START, ui);
            heap.push(Reverse((cost, next)));
        }
    }
    let mut expanded = 0;
    while let Some(Reverse((c, s))) = heap.pop() {
        if c > dist[s] {
            continue;
        }
        if best.is_some_and(|(bc, _, _)| c >= bc) {
            break;
        }
        expanded += 1;
        let x = decode(s as u64, q, delta);
        let cx = r.c.mul_vec(&x);
        let ax = r.a.mul_vec(&x);
        for ui in 0..inputs.len() {
            let out = add_vec(&f, &cx, &du[ui]);
            let nc = c + weight(&out);
            let next = encode_index(&add_vec(&f, &ax, &bu[ui]), q) as usize;
            if next == 0 {
                if best.is_none_or(|(bc, _, _)| nc < bc) {
                    best = Some((nc, s, ui));
                }
            } else if nc < dist[next] {
                dist[next] = nc;
                pred[next] = (s, ui);
                heap.push(Reverse((nc, next)));
            }
        }
    }
    let (cost, mut s, last) = best.expect("a nonzero input always returns to zero eventually");
    let mut seq = vec![last];
    while s != START {
        let (p, ui) = pred[s];
        seq.push(ui);
        s = p;
    }
    seq.reverse();
    let message = PolyMatrix::from_fn(&f, k, 1, |i, _| {
        Poly::new(&f, seq.iter().map(|&ui| inputs[ui][i]).collect())
    });
    let witness = g.mul(&message);
    debug_assert_eq!(witness.entries().iter().map(Poly::weight).sum::<usize>(), cost);
    Ok(DistanceResult { d_free: Some(cost), message: Some(message), witness: Some(witness), states_expanded: expanded })
}

/// Minimum weight of `G m` over nonzero messages with all entries of degree
/// at most `bound`, by exhaustive enumeration.
pub fn free_distance_oracle(code: &ConvCode, bound: usize) -> Result<Option<usize>, DistanceError> {
    oracle_for(code.generator(), bound)
}

pub fn oracle_for(g: &PolyMatrix, bound: usize) -> Result<Option<usize>, DistanceError> {
    let f = g.field().clone();
    let (n, k) = g.shape();
    if k == 0 {
        return Ok(None);
    }
    let q = f.order() as u64;
    let digits = k * (bound + 1);
    let needed = (q as f64).powi(digits as i32);
    if needed > ORACLE_BUDGET as f64 {
        return Err(DistanceError::BudgetExceeded { q: f.order(), digits });
    }
    let gdeg = g.degree().max(0) as usize;
    let len = bound + gdeg + 1;
    // coefficient table: gc[i][r][t]
    let gc: Vec<Vec<Vec<u32>>> =
        (0..k).map(|i| (0..n).map(|r| (0..=gdeg).map(|t| g[(r, i)].coeff(t)).collect()).collect()).collect();
    let mut word = vec![vec![0u32; len]; n];
    let mut digit = vec![0u32; digits];
    let mut best: Option<usize> = None;
    let total = q.pow(digits as u32);
    for _ in 1..total {
        // odometer step: digit position p = i * (bound+1) + d
        let mut p = 0;
        loop {
            let old = digit[p];
            let new = ((old as u64 + 1) % q) as u32;
            digit[p] = new;
            let delta = f.sub(new, old);
            let (i, d) = (p / (bound + 1), p % (bound + 1));
            for r in 0..n {
                for (t, &c) in gc[i][r].iter().enumerate() {
                    if c != 0 {
                        word[r][t + d] = f.add(word[r][t + d], f.mul(delta, c));
                    }
                }
            }
            if new != 0 {
                break;
            }
            p += 1;
        }
        let w: usize = word.iter().map(|row| weight(row)).sum();
        if w > 0 && best.is_none_or(|b| w < b) {
            best = Some(w);
        }
    }
    Ok(best)
}

/// Free distance of a behavior: infinite for autonomous behaviors, that of
/// the image code for controllable ones.
pub fn behavior_free_distance(b: &Behavior) -> Result<DistanceResult, DistanceError> {
    if b.is_autonomous() {
        return Ok(DistanceResult { d_free: None, message: None, witness: None, states_expanded: 0 });
    }
    let g = b.image_representation().map_err(|_| DistanceError::UnsupportedBehavior)?;
    let code = ConvCode::from_poly(&g, Framework::ModuleLaurentD).expect("image is a valid generator");
    free_distance(&code)
}
