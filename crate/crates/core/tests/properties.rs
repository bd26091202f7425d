mod common;

use common::*;
use convcode::behavior::{apply_operator, arma_to_kernel, sequence_metric, Axis, Behavior, Window};
use convcode::code::{ConvCode, Framework};
use convcode::crc::{crc_check, crc_encode, CrcMode, CrcSpec};
use convcode::distance::free_distance;
use convcode::duality::{
    annihilator_of_code, behavior_dual, module_dual, pairing, PairingForm,
};
use convcode::field::Field;
use convcode::matrix::{AnyMatrix, PolyMatrix};
use convcode::poly::{Laurent, Poly, RingElement};
use convcode::polymat::{
    column_popov, is_prime, laurent_column_popov, right_prime_factor, row_popov, smith_poly, BaseRing,
    PrimeSide,
};
use convcode::realization::{behavior_pencil, code_pencil, pencil_membership};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly_matrix(qs: &'static [u32], rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>, max_deg: usize) -> BoxedStrategy<PolyMatrix> {
    (prop::sample::select(qs), rows, cols)
        .prop_flat_map(move |(q, r, c)| {
            prop::collection::vec(prop::collection::vec(0..q, 0..=max_deg + 1), r * c).prop_map(move |es| {
                let f = field(q);
                PolyMatrix::from_fn(&f, r, c, |i, j| Poly::new(&f, es[i * c + j].clone()))
            })
        })
        .boxed()
}

/// Tall matrices of full column rank.
fn tall_full_rank(qs: &'static [u32], max_n: usize, max_deg: usize) -> BoxedStrategy<PolyMatrix> {
    poly_matrix(qs, 1..=max_n, 1..=max_n, max_deg)
        .prop_filter("tall full column rank", |m| m.rows() >= m.cols() && rank_oracle(m) == m.cols())
        .boxed()
}

fn window(q: u32, n: usize, start: i64, len: usize) -> BoxedStrategy<Window> {
    prop::collection::vec(prop::collection::vec(0..q, n), len).prop_map(move |s| Window::new(start, s)).boxed()
}

fn is_unit_det(m: &PolyMatrix) -> bool {
    let d = det_cofactor(m);
    d.degree() == Some(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn popov_is_idempotent(m in poly_matrix(&[2, 3, 4], 1..=4, 1..=4, 3)) {
        let (b, _, _) = column_popov(&m);
        prop_assert_eq!(&column_popov(&b).0, &b);
        let (r, _, _) = row_popov(&m);
        prop_assert_eq!(&row_popov(&r).0, &r);
    }

    #[test]
    fn popov_transform_is_unimodular(m in poly_matrix(&[2, 3, 4], 1..=4, 1..=4, 3)) {
        let (b, u, rank) = column_popov(&m);
        prop_assert!(is_unit_det(&u));
        let mu = m.mul(&u);
        let idx: Vec<usize> = (0..rank).collect();
        prop_assert_eq!(mu.select_cols(&idx), b);
        prop_assert!(mu.select_cols(&(rank..m.cols()).collect::<Vec<_>>()).is_zero());
        prop_assert_eq!(rank, rank_oracle(&m));
    }

    #[test]
    fn popov_is_unimodular_invariant(m in poly_matrix(&[2, 3, 4], 1..=4, 1..=4, 2), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = m.field().clone();
        let v = rand_unimodular(&mut rng, &f, m.cols(), 6, 2);
        prop_assert_eq!(column_popov(&m.mul(&v)).0, column_popov(&m).0);
        let w = rand_unimodular(&mut rng, &f, m.rows(), 6, 2).transpose();
        prop_assert_eq!(row_popov(&w.mul(&m)).0, row_popov(&m).0);
    }

    #[test]
    fn laurent_popov_ignores_monomial_column_scaling(m in poly_matrix(&[2, 3], 1..=3, 1..=3, 2), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = m.field().clone();
        let l = m.to_laurent();
        let scaled = convcode::matrix::LaurentMatrix::from_fn(&f, m.rows(), m.cols(), |i, j| {
            l[(i, j)].shift(j as i64 * 2 - 1)
        });
        let mut mixed = scaled.clone();
        if m.cols() > 1 {
            let e = rng.gen_range(-2..=2);
            mixed.add_col_multiple(0, 1, &Laurent::monomial(&f, 1, e));
        }
        let base = laurent_column_popov(&l).0;
        prop_assert_eq!(&laurent_column_popov(&scaled).0, &base);
        prop_assert_eq!(&laurent_column_popov(&mixed).0, &base);
        if base.cols() > 0 {
            prop_assert_eq!(base.coeff_matrix(0).rank(), base.cols());
        }
    }

    #[test]
    fn smith_reconstructs(m in poly_matrix(&[2, 3, 4], 1..=4, 1..=4, 2)) {
        let s = smith_poly(&m);
        let f = m.field();
        prop_assert_eq!(&s.u.mul(&m).mul(&s.v), &s.d);
        prop_assert_eq!(s.u.mul(&s.u_inv), PolyMatrix::identity(f, m.rows()));
        prop_assert_eq!(s.v.mul(&s.v_inv), PolyMatrix::identity(f, m.cols()));
        prop_assert!(is_unit_det(&s.u) && is_unit_det(&s.v));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let inv = s.invariant_factors();
        for w in inv.windows(2) {
            prop_assert!(w[0].divides(&w[1]));
        }
        prop_assert!(inv.iter().all(|d| d.lead() == 1));
        prop_assert_eq!(s.rank, rank_oracle(&m));
    }

    #[test]
    fn primeness_matches_smith_and_minors(m in tall_full_rank(&[2, 3, 4], 3, 2)) {
        let any: AnyMatrix = m.clone().into();
        let prime = is_prime(&any, PrimeSide::Right, BaseRing::Poly).unwrap();
        let ones = smith_poly(&m).invariant_factors().iter().all(|d| d.degree() == Some(0));
        prop_assert_eq!(prime, ones);
        prop_assert_eq!(prime, right_prime_oracle(&m, false));
        let lprime = is_prime(&any, PrimeSide::Right, BaseRing::Laurent).unwrap();
        prop_assert_eq!(lprime, right_prime_oracle(&m, true));
        let t: AnyMatrix = m.transpose().into();
        prop_assert_eq!(is_prime(&t, PrimeSide::Left, BaseRing::Poly).unwrap(), prime);
    }

    #[test]
    fn popov_degree_splits_into_gcd_and_encoder_degree(m in tall_full_rank(&[2, 3], 3, 3)) {
        let f = m.field().clone();
        let popov_deg: i64 = column_popov(&m).0.col_degrees().iter().sum();
        let minors = maximal_minors(&m);
        let max_minor = minors.iter().map(|p| p.deg()).max().unwrap();
        prop_assert_eq!(popov_deg, max_minor);
        let g = gcd_all(&minors, &f);
        let basic: i64 = column_popov(&right_prime_factor(&m)).0.col_degrees().iter().sum();
        prop_assert_eq!(popov_deg, g.deg() + basic);
    }

    #[test]
    fn metric_bounded_and_separating(
        (a, b, n) in (1usize..=3, -6i64..=2, 1usize..=12).prop_flat_map(|(n, s, len)| {
            (window(3, n, s, len), window(3, n, s, len), Just(n))
        })
    ) {
        let d = sequence_metric(&a, &b).unwrap();
        prop_assert!(d.to_f64() <= 3.0 * n as f64);
        prop_assert_eq!(d.is_zero(), a == b);
        prop_assert!(sequence_metric(&a, &a).unwrap().is_zero());
        prop_assert_eq!(sequence_metric(&a, &b).unwrap(), sequence_metric(&b, &a).unwrap());
    }

    #[test]
    fn controllable_part_is_idempotent(p in poly_matrix(&[2, 3], 1..=2, 1..=3, 2)) {
        for axis in [Axis::Z, Axis::ZPlus] {
            let b = Behavior::from_poly(&p, axis);
            let c = b.controllable_part();
            prop_assert!(c.is_controllable());
            prop_assert_eq!(&c.controllable_part(), &c);
        }
    }

    #[test]
    fn arma_with_zero_latent_is_kernel(p in poly_matrix(&[2, 3], 1..=3, 1..=3, 2), k in 1usize..=2) {
        let f = p.field().clone();
        let zero = PolyMatrix::zeros(&f, p.rows(), k);
        for axis in [Axis::Z, Axis::ZPlus] {
            let b = arma_to_kernel(&p.clone().into(), &zero.clone().into(), axis).unwrap();
            prop_assert_eq!(b, Behavior::from_poly(&p, axis));
        }
    }

    #[test]
    fn time_reversed_pairing_is_reversed_standard(
        (w, v) in (1usize..=3, 1usize..=8).prop_flat_map(|(n, len)| {
            (window(2, n, -4, 9), window(2, n, 0, len))
        })
    ) {
        let f = Field::prime(2).unwrap();
        let mut rev = v.symbols.clone();
        rev.reverse();
        let reversed = Window::new(-(v.end()), rev);
        prop_assert_eq!(
            pairing(&f, &w, &v, PairingForm::TimeReversed),
            pairing(&f, &w, &reversed, PairingForm::Standard)
        );
    }

    #[test]
    fn duality_swaps_primeness(g in poly_matrix(&[2, 3], 1..=4, 1..=2, 2)) {
        for fw in [Framework::ModuleLaurentD, Framework::ModulePolyDprime] {
            let c = ConvCode::from_poly(&g, fw).unwrap();
            let b = annihilator_of_code(&c);
            prop_assert_eq!(c.is_observable(), b.is_controllable());
            prop_assert!(module_dual(&c).is_observable());
        }
    }

    #[test]
    fn behavior_dual_is_controllable(p in poly_matrix(&[2, 3], 1..=2, 1..=3, 2)) {
        let b = Behavior::from_poly(&p, Axis::Z);
        let d = behavior_dual(&b).unwrap();
        prop_assert!(d.is_controllable());
        prop_assert_eq!(behavior_dual(&d).unwrap(), b.controllable_part());
    }

    #[test]
    fn pairing_vanishes_between_code_and_annihilator(g in tall_full_rank(&[2, 3], 3, 2), seed in any::<u64>()) {
        let c = ConvCode::from_poly(&g, Framework::ModulePolyDprime).unwrap();
        let b = annihilator_of_code(&c);
        let Ok(pencil) = behavior_pencil(&Behavior::from_poly(b.kernel(), Axis::Z)) else {
            return Err(TestCaseError::fail("no behavior pencil"));
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = c.field().clone();
        for _ in 0..8 {
            let m = rand_matrix(&mut rng, &f, c.k(), 1, 3);
            let v = Window::from_poly_vector(&c.encode(&m));
            let w = pencil.sample(&mut rng, v.start - 2, v.len() + 4);
            prop_assert!(b.window_membership(&w));
            prop_assert_eq!(pairing(&f, &w, &v, PairingForm::Standard), 0);
        }
    }

    #[test]
    fn image_trajectories_pass_kernel_windows(p in poly_matrix(&[2, 3], 1..=2, 2..=3, 2), seed in any::<u64>()) {
        let b = Behavior::from_poly(&p, Axis::Z).controllable_part();
        let g = b.image_representation().unwrap();
        let f = b.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lag = g.degree().max(0) as usize;
        let start = -10 - lag as i64 - 4;
        let len = 21 + 2 * lag + 8;
        let symbols = (0..len)
            .map(|i| {
                let t = start + i as i64;
                (0..g.cols()).map(|_| if (-10..=10).contains(&t) { rng.gen_range(0..f.order()) } else { 0 }).collect()
            })
            .collect();
        let w = apply_operator(&g, &Window::new(start, symbols));
        prop_assert!(b.window_membership(&w));
        for s in 0..w.len().saturating_sub(20) {
            let a = w.start + s as i64;
            prop_assert!(b.window_membership(&w.restrict(a, a + 19)));
        }
    }

    #[test]
    fn sampled_windows_extend(p in poly_matrix(&[2, 3], 1..=2, 1..=3, 2), seed in any::<u64>()) {
        let b = Behavior::from_poly(&p, Axis::Z);
        let pencil = behavior_pencil(&b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = pencil.sample(&mut rng, -3, 10);
        prop_assert!(b.window_membership(&w));
        prop_assert!(pencil.window_membership(&w));
        let ext = b.extend_window(&w, 4);
        prop_assert!(ext.is_some());
        let ext = ext.unwrap();
        prop_assert!(b.window_membership(&ext));
        prop_assert_eq!(ext.restrict(-3, 6), w);
    }

    #[test]
    fn pencil_membership_survives_similarity(g in tall_full_rank(&[2, 3], 3, 2), seed in any::<u64>()) {
        let c = ConvCode::from_poly(&g, Framework::ModulePolyDprime).unwrap();
        let p = code_pencil(&c).unwrap();
        let f = c.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = rand_invertible_const(&mut rng, &f, p.k.rows());
        let s = rand_invertible_const(&mut rng, &f, p.k.cols());
        let p2 = p.transformed(&t, &s).unwrap();
        for _ in 0..12 {
            let word = if rng.gen_bool(0.5) {
                c.encode(&rand_matrix(&mut rng, &f, c.k(), 1, 3))
            } else {
                rand_matrix(&mut rng, &f, c.n(), 1, 4)
            };
            let member = c.membership(&word.clone().into()).unwrap().is_some();
            prop_assert_eq!(pencil_membership(&p, &word).is_some(), member);
            prop_assert_eq!(pencil_membership(&p2, &word).is_some(), member);
        }
    }

    #[test]
    fn distance_witness_is_a_codeword(g in tall_full_rank(&[2, 3], 3, 2)) {
        let c = ConvCode::from_poly(&g, Framework::RationalA).unwrap();
        prop_assume!(c.degree() <= 6);
        let r = free_distance(&c).unwrap();
        let w = r.witness.unwrap();
        prop_assert_eq!(Some(weight(&w)), r.d_free);
        prop_assert!(c.membership(&w.into()).unwrap().is_some());
        let closure = ConvCode::from_poly(&g, Framework::ModulePolyDprime).unwrap();
        let dc = free_distance(&closure).unwrap().d_free.unwrap();
        let dcl = free_distance(&closure.observable_closure()).unwrap().d_free.unwrap();
        prop_assert!(dc >= dcl);
    }

    #[test]
    fn crc_round_trips(
        q in prop::sample::select(&[2u32, 3, 4][..]),
        g in prop::collection::vec(0u32..4, 2..=9),
        m in prop::collection::vec(0u32..4, 0..=65),
        systematic in any::<bool>(),
    ) {
        let f = field(q);
        let mut g: Vec<u32> = g.into_iter().map(|c| c % q).collect();
        *g.last_mut().unwrap() = 1;
        let m = Poly::new(&f, m.into_iter().map(|c| c % q).collect());
        let mode = if systematic { CrcMode::Systematic } else { CrcMode::Multiplicative };
        let spec = CrcSpec::new(Poly::new(&f, g), mode).unwrap();
        let c = crc_encode(&spec, &m);
        let chk = crc_check(&spec, &c);
        prop_assert!(chk.accepted);
        prop_assert_eq!(chk.message, Some(m.clone()));
        if systematic {
            prop_assert_eq!(c.shift_down(spec.degree()), m);
        }
        prop_assert!(c.rem(spec.generator()).is_zero());
    }
}
