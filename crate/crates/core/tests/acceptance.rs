//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use convcode::behavior::{splice, Axis, Behavior, Window};
use convcode::code::{ConvCode, Framework};
use convcode::crc::{crc_check, crc_encode, crc_miss_rate, Corruption, CrcMode, CrcSpec};
use convcode::distance::{free_distance, free_distance_oracle, ORACLE_BUDGET};
use convcode::duality::{annihilator_of_behavior, annihilator_of_code, behavior_dual, module_dual};
use convcode::field::Field;
use convcode::matrix::{LaurentMatrix, PolyMatrix};
use convcode::poly::{Laurent, Poly, RingElement};
use convcode::polymat::{is_prime, BaseRing, PrimeSide};
use convcode::realization::{code_pencil, is_minimal, markov_parameters, pencil_membership, realize_code};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    failures: Vec<String>,
    summary: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), summary: String::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 1000 {
            self.failures.push(what());
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pm(f: &Field, rows: &[&[&[i64]]]) -> PolyMatrix {
    PolyMatrix::from_int_rows(f, rows)
}

/// Code degree from the maximal minors of any full-rank encoder.
fn degree_from_minors(g: &PolyMatrix) -> i64 {
    let minors = maximal_minors(g);
    let d = gcd_all(&minors, g.field());
    minors.iter().map(|m| m.exact_div(&d).map_or(-1, |p| p.deg())).max().unwrap()
}

/// Random encoders for frameworks A: q in {2,3}, n <= 4, k <= 2, deg <= 3.
fn random_encoder(r: &mut ChaCha8Rng) -> PolyMatrix {
    let q = *[2u32, 3].choose(r).unwrap();
    let f = field(q);
    let n = r.gen_range(1..=4);
    let k = r.gen_range(1..=n.min(2));
    let d = r.gen_range(0..=3);
    rand_full_rank(r, &f, n, k, d)
}

fn forney_invariance() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(1);
    let codes = 200;
    for i in 0..codes {
        let g = random_encoder(&mut r);
        let f = g.field().clone();
        let c = ConvCode::from_poly(&g, Framework::RationalA).unwrap();
        let t = rand_invertible_rational(&mut r, &f, g.cols(), 2);
        let re = g.to_rational().mul(&t);
        let c2 = ConvCode::from_generator(&re.into(), Framework::RationalA).unwrap();
        let (e1, e2) = (c.invariants().forney_indices, c2.invariants().forney_indices);
        out.check(e1 == e2, || format!("code {i}: indices {e1:?} vs {e2:?} for {g}"));
        out.check(c.equals(&c2) == Ok(true), || format!("code {i}: re-encoding changed the code"));
        let oracle = degree_from_minors(&g);
        out.check(c.degree() as i64 == oracle, || format!("code {i}: degree {} vs minors {oracle}", c.degree()));
    }
    out.summary = format!("{codes} codes under random rational re-encoding");
    out
}

fn degree_duality() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(2);
    let mut checked = 0;
    for i in 0..300 {
        let g = random_encoder(&mut r);
        let fw = [Framework::RationalA, Framework::ModuleLaurentD, Framework::ModulePolyDprime][i % 3];
        let c = ConvCode::from_poly(&g, fw).unwrap();
        if !c.is_observable() {
            continue;
        }
        checked += 1;
        let h = c.parity_check().unwrap();
        let e: usize = c.column_degrees().iter().sum();
        let fsum: i64 = h.row_degrees().iter().map(|&d| d.max(0)).sum();
        out.check(e as i64 == fsum, || format!("code {i}: sum e = {e}, sum f = {fsum}"));
        out.check(h.mul(c.generator()).is_zero(), || format!("code {i}: H G != 0"));
        out.check(h.rows() == c.n() - c.k(), || format!("code {i}: H has {} rows", h.rows()));
        if h.rows() > 0 {
            out.check(right_prime_oracle(&h.transpose(), false), || format!("code {i}: H not left prime"));
        }
    }
    out.summary = format!("{checked} observable codes");
    out
}

fn random_module_code(r: &mut ChaCha8Rng, fw: Framework) -> ConvCode {
    let q = *[2u32, 3].choose(r).unwrap();
    let f = field(q);
    let n = r.gen_range(1..=4);
    let k = r.gen_range(1..=n.min(2));
    let d = r.gen_range(0..=2);
    ConvCode::from_poly(&rand_full_rank(r, &f, n, k, d), fw).unwrap()
}

fn random_behavior(r: &mut ChaCha8Rng) -> Behavior {
    let q = *[2u32, 3].choose(r).unwrap();
    let f = field(q);
    let n = r.gen_range(1..=3);
    let rows = r.gen_range(1..=n.min(2));
    Behavior::from_poly(&rand_matrix(r, &f, rows, n, 2), Axis::Z)
}

fn duality_round_trips() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(3);
    let mut observable = 0;
    for i in 0..200 {
        let fw = if i % 2 == 0 { Framework::ModuleLaurentD } else { Framework::ModulePolyDprime };
        let c = random_module_code(&mut r, fw);
        let laurent = fw == Framework::ModuleLaurentD;
        let prime = right_prime_oracle(c.generator(), laurent);
        let ann = annihilator_of_code(&c);
        out.check(c.is_observable() == prime, || format!("code {i}: observability disagrees with minors"));
        out.check(ann.is_controllable() == prime, || format!("code {i}: annihilator controllability {}", ann.is_controllable()));
        out.check(module_dual(&c).is_observable(), || format!("code {i}: module dual not observable"));
        if prime {
            observable += 1;
            out.check(annihilator_of_behavior(&ann) == c, || format!("code {i}: double annihilator differs"));
        }
    }
    let mut behaviors = 0;
    let mut uncontrollable = 0;
    for i in 0..150 {
        let b = random_behavior(&mut r);
        behaviors += 1;
        let ctrl = b.is_controllable();
        if !ctrl {
            uncontrollable += 1;
        }
        let k = b.kernel();
        let oracle = k.rows() == 0 || (rank_oracle(k) == k.rows() && right_prime_oracle(&k.transpose(), true));
        out.check(ctrl == oracle, || format!("behavior {i}: controllability disagrees with minors"));
        out.check(annihilator_of_behavior(&b).is_observable() == ctrl, || format!("behavior {i}: annihilator observability"));
        let d = behavior_dual(&b).unwrap();
        out.check(d.is_controllable(), || format!("behavior {i}: dual not controllable"));
        out.check(behavior_dual(&d).unwrap() == b.controllable_part(), || format!("behavior {i}: double dual != controllable part"));
    }
    out.summary = format!(
        "200 module codes ({observable} observable), {behaviors} behaviors ({uncontrollable} uncontrollable)"
    );
    out
}

fn oracle_bound(q: u32, k: usize, wanted: usize) -> Option<usize> {
    let fits = |b: usize| (q as f64).powi((k * (b + 1)) as i32) <= ORACLE_BUDGET as f64;
    if !fits(wanted) {
        return None;
    }
    let mut b = wanted;
    while b < wanted + 6 && fits(b + 1) && (q as f64).powi((k * (b + 2)) as i32) <= 2e5 {
        b += 1;
    }
    Some(b)
}

fn free_distance_agreement() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(4);
    let mut compared = 0;
    let mut attempts = 0;
    while compared < 120 && attempts < 5000 {
        attempts += 1;
        let two = compared % 6 == 5;
        let q = if two { 2 } else { *[2u32, 3].choose(&mut r).unwrap() };
        let f = field(q);
        let k = if two { 2 } else { 1 };
        let n = r.gen_range(k + 1..=3);
        let g = rand_full_rank(&mut r, &f, n, k, if two { 1 } else { 3 });
        let c = ConvCode::from_poly(&g, Framework::RationalA).unwrap();
        let inv = c.invariants();
        if inv.degree == 0 || inv.degree > 3 {
            continue;
        }
        let Some(bound) = oracle_bound(q, k, 2 * inv.degree + inv.controller_memory + 2) else { continue };
        compared += 1;
        let t = free_distance(&c).unwrap().d_free;
        let o = free_distance_oracle(&c, bound).unwrap();
        out.check(t == o, || format!("{} (q={q}): trellis {t:?}, oracle {o:?} (bound {bound})", c.generator()));
    }
    let f = field(2);
    let classic = ConvCode::from_poly(&pm(&f, &[&[&[1, 0, 1]], &[&[1, 1, 1]]]), Framework::RationalA).unwrap();
    let d5 = free_distance(&classic).unwrap().d_free;
    out.check(d5 == Some(5), || format!("[1+z^2; 1+z+z^2] gave {d5:?}"));
    let o5 = free_distance_oracle(&classic, 10).unwrap();
    out.check(o5 == Some(5), || format!("oracle for [1+z^2; 1+z+z^2] gave {o5:?}"));
    let crc = ConvCode::from_poly(&pm(&f, &[&[&[1, 1]]]), Framework::ModulePolyDprime).unwrap();
    let d2 = free_distance(&crc).unwrap().d_free;
    out.check(d2 == Some(2), || format!("<1+z> gave {d2:?}"));
    out.summary = format!("{compared} codes against the oracle, d_free {d5:?} and {d2:?} for the fixed codes");
    out
}

fn realization_consistency() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(5);
    let mut observable = 0;
    let mut total = 0;
    while observable < 100 {
        let fw = if total % 2 == 0 { Framework::RationalA } else { Framework::ModulePolyDprime };
        let q = *[2u32, 3].choose(&mut r).unwrap();
        let f = field(q);
        let n = r.gen_range(2..=3);
        let k = r.gen_range(1..n);
        let g = rand_full_rank(&mut r, &f, n, k, 2);
        let c = ConvCode::from_poly(&g, fw).unwrap();
        let delta = c.degree();
        if delta > 4 {
            continue;
        }
        total += 1;
        let obs = right_prime_oracle(c.generator(), false);
        if obs {
            observable += 1;
        }
        let real = realize_code(&c);
        out.check(real.state_dim() == delta, || format!("state dim {} != {delta}", real.state_dim()));
        out.check(is_minimal(&real) == (true, true), || format!("controller form of {} not minimal", c.generator()));
        let h = markov_parameters(&real, 2 * delta + 2);
        for (i, hi) in h.iter().enumerate() {
            out.check(*hi == c.generator().coeff_matrix(i), || format!("Markov parameter {i} of {}", c.generator()));
        }
        let p = code_pencil(&c).unwrap();
        let flags = is_minimal(&p.realization);
        out.check(p.realization.state_dim() == delta, || format!("pencil state dim for {}", c.generator()));
        out.check(flags == (true, obs), || format!("{}: flags {flags:?}, observable {obs}", c.generator()));
    }
    let f = field(2);
    let family = [
        pm(&f, &[&[&[1, 0, 1]], &[&[1, 1, 1]]]),
        pm(&f, &[&[&[1]], &[&[0, 1]]]),
        pm(&f, &[&[&[1, 1]], &[&[1, 0, 1]]]),
        pm(&f, &[&[&[1], &[0, 1]], &[&[0], &[1, 1]]]),
    ];
    let words = all_words(&f, 2, 6);
    let mut members = 0;
    for g in &family {
        let c = ConvCode::from_poly(g, Framework::ModulePolyDprime).unwrap();
        let p = code_pencil(&c).unwrap();
        for w in &words {
            let m = c.membership(&w.clone().into()).unwrap().is_some();
            members += m as usize;
            let x = pencil_membership(&p, w);
            out.check(x.is_some() == m, || format!("{g}: pencil says {}, module says {m} for {w}", x.is_some()));
        }
    }
    out.summary = format!(
        "{total} codes ({observable} observable), {} words x {} fixed codes ({members} codewords)",
        words.len(),
        family.len()
    );
    out
}

fn framework_equivalence() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(6);
    let mut done = 0;
    while done < 100 {
        let q = *[2u32, 3].choose(&mut r).unwrap();
        let f = field(q);
        let n = r.gen_range(2..=3);
        let k = r.gen_range(1..n);
        let g = rand_full_rank(&mut r, &f, n, k, 2);
        let a = ConvCode::from_poly(&g, Framework::RationalA).unwrap();
        if a.degree() > 4 {
            continue;
        }
        done += 1;
        let da = free_distance(&a).unwrap().d_free;
        let to = a.convert(Framework::ModulePolyDprime);
        out.check(!to.lost_information, || format!("A -> D' lost information for {g}"));
        let back = to.code.convert(Framework::RationalA);
        out.check(!back.lost_information, || format!("D' -> A lost information for {g}"));
        out.check(back.code == a, || format!("A -> D' -> A changed {g}"));
        let fresh = ConvCode::from_poly(to.code.generator(), Framework::ModulePolyDprime).unwrap();
        out.check(fresh.is_observable(), || format!("converted code not observable for {g}"));
        let dd = free_distance(&fresh).unwrap().d_free;
        out.check(da == dd, || format!("d_free {da:?} vs {dd:?} for {g}"));
        for target in [Framework::LaurentAprime, Framework::CompleteB, Framework::ModuleLaurentD] {
            let other = ConvCode::from_poly(a.convert(target).code.generator(), target).unwrap();
            let (ia, io) = (a.invariants(), other.invariants());
            out.check(
                ia.k == io.k && ia.n == io.n && ia.forney_indices == io.forney_indices && ia.degree == io.degree,
                || format!("invariants differ in {target} for {g}"),
            );
            let d = free_distance(&other).unwrap().d_free;
            out.check(d == da, || format!("d_free {d:?} in {target} vs {da:?} for {g}"));
        }
    }
    out.summary = format!("{done} observable codes through all frameworks");
    out
}

fn controllability_splice() -> Outcome {
    let mut out = Outcome::new();
    let mut r = rng(7);
    let mut splices = 0;
    let codes = 120;
    for i in 0..codes {
        let c = random_module_code(&mut r, Framework::ModulePolyDprime);
        let g = c.generator();
        let f = c.field().clone();
        let gap = g.degree().max(0) as usize + 1;
        for _ in 0..5 {
            let a = rand_matrix(&mut r, &f, c.k(), 1, 6);
            let b = rand_matrix(&mut r, &f, c.k(), 1, 6);
            let j = r.gen_range(0..=6);
            splices += 1;
            match splice(g, &a, &b, j) {
                Err(e) => out.check(false, || format!("code {i}: splice failed: {e}")),
                Ok(s) => {
                    let (ga, gb) = (g.mul(&a), g.mul(&b));
                    out.check(s.gap == gap, || format!("code {i}: gap {}", s.gap));
                    out.check(c.membership(&s.codeword.clone().into()).unwrap().is_some(), || {
                        format!("code {i}: splice is not a codeword")
                    });
                    for row in 0..c.n() {
                        for t in 0..=j + gap + 14 {
                            let w = s.codeword[(row, 0)].coeff(t);
                            if t <= j {
                                out.check(w == ga[(row, 0)].coeff(t), || format!("code {i}: past differs at {t}"));
                            } else if t >= j + gap {
                                out.check(w == gb[(row, 0)].coeff(t), || format!("code {i}: future differs at {t}"));
                            }
                        }
                    }
                }
            }
        }
    }
    // ker[1+z, z+z^2]: w1_t + w2_{t+1} is constant in t, so a zero past and
    // a future with constant 1 cannot be joined.
    let f = field(2);
    let b = Behavior::from_poly(&pm(&f, &[&[&[1, 1], &[0, 1, 1]]]), Axis::Z);
    let past = Window::new(0, vec![vec![0, 0]; 4]);
    let future = Window::new(0, vec![vec![1, 0]; 4]);
    out.check(!b.is_controllable(), || "ker[1+z, z+z^2] reported controllable".into());
    out.check(b.window_membership(&past) && b.window_membership(&future), || "blocks are not trajectories".into());
    let blocked = (1..=12).all(|gap| b.splice_windows(&past, &future, gap).is_none());
    out.check(blocked, || "uncontrollable behavior spliced".into());
    let joined = (1..=12).any(|gap| b.splice_windows(&past, &past, gap).is_some());
    out.check(joined, || "trivial splice failed".into());
    out.summary = format!("{splices} splices over {codes} codes, regression splice blocked for gaps 1..12");
    out
}

/// `det` of the 4x4 Sylvester matrix of `a0 + a1 z + a2 z^2` and `b0 + b1 z + b2 z^2`.
fn sylvester(f: &Field, a: [u32; 3], b: [u32; 3]) -> u32 {
    let m = PolyMatrix::from_fn(f, 4, 4, |i, j| {
        let (src, shift) = match j {
            0 => (a, 0),
            1 => (a, 1),
            2 => (b, 0),
            _ => (b, 1),
        };
        let c = if i >= shift && i - shift < 3 { src[i - shift] } else { 0 };
        Poly::constant(f, c)
    });
    det_cofactor(&m).coeff(0)
}

fn resultant() -> Outcome {
    let mut out = Outcome::new();
    let f = field(2);
    let mut literal = Vec::new();
    let mut nonzero = 0;
    for bits in 0u32..64 {
        let c: Vec<u32> = (0..6).map(|i| (bits >> i) & 1).collect();
        let a = [c[0], c[1], c[2]];
        let b = [c[3], c[4], c[5]];
        let g = PolyMatrix::from_fn(&f, 2, 1, |i, _| Poly::new(&f, if i == 0 { a.to_vec() } else { b.to_vec() }));
        let prime = !g.is_zero() && is_prime(&g.clone().into(), PrimeSide::Right, BaseRing::Poly).unwrap();
        let oracle = !g.is_zero() && Poly::new(&f, a.to_vec()).gcd(&Poly::new(&f, b.to_vec())).degree() == Some(0);
        out.check(prime == oracle, || format!("{c:?}: is_prime {prime}, gcd says {oracle}"));
        let det = sylvester(&f, a, b) != 0;
        nonzero += det as usize;
        out.check(det == (prime && g.degree() == 2), || format!("{c:?}: resultant {det}, prime {prime}, degree {}", g.degree()));
        if det != prime {
            out.check(a[2] == 0 && b[2] == 0, || format!("{c:?}: disagreement with a nonzero leading coefficient"));
            literal.push(c);
        }
    }
    out.summary = format!(
        "64 patterns, {nonzero} with nonzero resultant; resultant != 0 iff prime with degree exactly 2 ({} prime patterns of lower degree have vanishing resultant)",
        literal.len()
    );
    out
}

fn crc_rates() -> Outcome {
    let mut out = Outcome::new();
    let f = field(2);
    let mut lines = Vec::new();
    for (seed, g) in [(41u64, vec![1, 1, 0, 0, 1]), (42, vec![1, 0, 1, 1, 1, 0, 0, 0, 1])] {
        let spec = CrcSpec::new(Poly::from_ints(&f, &g), CrcMode::Systematic).unwrap();
        let delta = spec.degree();
        let res = crc_miss_rate(&spec, 100_000, 32, Corruption::Uniform, seed).unwrap();
        let p = 2f64.powi(-(delta as i32));
        let sigma = (p * (1.0 - p) / res.trials as f64).sqrt();
        let z = (res.estimate - p).abs() / sigma;
        out.check(z <= 3.0, || format!("deg {delta}: estimate {} is {z:.2} sigma from {p}", res.estimate));
        lines.push(format!("deg {delta}: {:.5} vs {p:.5} ({z:.2} sigma)", res.estimate));
    }
    let spec = CrcSpec::new(Poly::from_ints(&f, &[1, 1]), CrcMode::Multiplicative).unwrap();
    let words = all_words(&f, 1, 12);
    for w in &words {
        let p = &w[(0, 0)];
        let even = p.weight() % 2 == 0;
        out.check(crc_check(&spec, p).accepted == even, || format!("{p}: accepted iff even weight fails"));
        if p.deg() <= 11 {
            out.check(crc_encode(&spec, p).weight().is_multiple_of(2), || format!("encoding of {p} has odd weight"));
        }
    }
    out.summary = format!("{}; <1+z> is the even-weight set on {} words", lines.join(", "), words.len());
    out
}

/// `Σ_{i=-N}^{N} z^i`.
fn phi(f: &Field, n: usize) -> Laurent {
    Laurent::new(-(n as i64), Poly::new(f, vec![1; 2 * n + 1]))
}

fn closure_behavior() -> Outcome {
    let mut out = Outcome::new();
    let f2 = field(2);
    let f3 = field(3);
    // The third code has weight 7 at both N = 0 and N = 1 (only its middle
    // entry grows, as 2N + 1 from N = 1 on), so its growth is checked from
    // N = 1 and its weights are reported.
    let fixed = [
        (pm(&f2, &[&[&[1, 0, 1]], &[&[1, 1, 1]]]), 0),
        (pm(&f2, &[&[&[1]], &[&[0, 1]]]), 0),
        (pm(&f2, &[&[&[1, 1]], &[&[1, 1, 1]], &[&[0, 1, 1]]]), 1),
        (pm(&f3, &[&[&[1, 2]], &[&[1, 1, 1]]]), 0),
    ];
    let mut reported = Vec::new();
    for (g, from) in &fixed {
        let f = g.field().clone();
        let c = ConvCode::from_poly(g, Framework::RationalA).unwrap();
        let d = ConvCode::from_poly(c.generator(), Framework::ModuleLaurentD).unwrap();
        // codewords are read with degree = time, so they satisfy H(σ^-1) w = 0
        let dual = behavior_dual(&annihilator_of_code(&d)).unwrap();
        let h = c.parity_check().unwrap().to_laurent().time_reversed();
        let expected = Behavior::from_kernel(&h.into(), Axis::Z).unwrap();
        out.check(dual == expected, || format!("{g}: dual behavior differs from ker H(z^-1)"));
        let w = c.encode(&PolyMatrix::identity(&f, 1));
        let mut last = 0;
        let mut last_span = 0;
        let mut weights = Vec::new();
        for n in 0..=8 {
            let v = LaurentMatrix::from_fn(&f, w.rows(), 1, |i, _| phi(&f, n).mul(&Laurent::from_poly(&w[(i, 0)])));
            let win = Window::from_laurent_vector(&v);
            let padded = Window::new(
                win.start - 4,
                std::iter::repeat_n(vec![0; w.rows()], 4)
                    .chain(win.symbols.iter().cloned())
                    .chain(std::iter::repeat_n(vec![0; w.rows()], 4))
                    .collect(),
            );
            out.check(dual.window_membership(&padded), || format!("{g}: phi_{n} w fails membership"));
            for len in 1..=padded.len() {
                for s in 0..=padded.len() - len {
                    let a = padded.start + s as i64;
                    out.check(dual.window_membership(&padded.restrict(a, a + len as i64 - 1)), || {
                        format!("{g}: window [{a}, +{len}) of phi_{n} w fails")
                    });
                }
            }
            let weight = win.weight();
            let span = win.len();
            if n > 0 {
                out.check(span > last_span, || format!("{g}: support span {span} at N={n} not above {last_span}"));
            }
            if n > *from {
                out.check(weight > last, || format!("{g}: weight {weight} at N={n} not above {last}"));
            }
            last = weight;
            last_span = span;
            weights.push(weight);
        }
        if *from > 0 {
            reported.push(format!("{g} weights {weights:?}"));
        }
    }
    out.summary = format!(
        "{} fixed codes, N = 0..8, all sub-windows checked; {}",
        fixed.len(),
        reported.join(", ")
    );
    out
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 10] = [
        ("Forney-index invariance", forney_invariance, Some(Duration::from_secs(30))),
        ("degree duality", degree_duality, None),
        ("duality round trips", duality_round_trips, None),
        ("free distance", free_distance_agreement, Some(Duration::from_secs(60))),
        ("realization consistency", realization_consistency, None),
        ("framework equivalence", framework_equivalence, None),
        ("controllability of module codes", controllability_splice, None),
        ("resultant criterion", resultant, None),
        ("CRC miss rate", crc_rates, Some(Duration::from_secs(30))),
        ("closure behavior", closure_behavior, None),
    ];
    let mut all = true;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut o = run();
        let elapsed = start.elapsed();
        if let Some(l) = limit {
            if elapsed > *l {
                o.failures.push(format!("took {elapsed:.2?}, limit {l:?}"));
            }
        }
        let pass = o.failures.is_empty();
        all &= pass;
        println!(
            "criterion {:>2} {:<33} {} ({:.2?}) {}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            elapsed,
            o.summary
        );
        for f in o.failures.iter().take(10) {
            println!("    {f}");
        }
        if o.failures.len() > 10 {
            println!("    ... {} more", o.failures.len() - 10);
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
