use std::time::Instant;

use bethe_core::diagrams::{random_skew_shape, Partition, SkewShape};
use bethe_core::dvf::{BetheRootSet, Dvf, RootSystemConfig};
use bethe_core::qarith::{rat, QParameter, Rat};
use bethe_core::tableaux::{enumerate, LabelSet};
use bethe_core::tsystem::TGrid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn grid(r: i32, s: i32, seed: u64) -> TGrid<Rat> {
    let cfg = RootSystemConfig::distinguished_covariant(r, s).unwrap();
    let rs = BetheRootSet::draw(&QParameter::default(), 2, &vec![1; cfg.colors()], seed);
    TGrid::new(Dvf::new(cfg, rs).unwrap())
}

#[test]
fn hirota_on_the_window_with_margin() {
    for (r, s) in [(0, 1), (1, 0), (1, 1)] {
        let t0 = Instant::now();
        let g = grid(r, s, 21);
        let f = g.dvf().field();
        for a in 1..=(r as usize + 4) {
            for m in 1..=(s as usize + 4) {
                let res = g.hirota_residual(a, m).unwrap();
                assert!(res.is_identically_zero(f).unwrap(), "Hirota fails at a={a} m={m}, r={r} s={s}");
            }
        }
        eprintln!("hirota r={r} s={s}: {:?}", t0.elapsed());
    }
}

#[test]
fn g_identity_up_to_four() {
    let g = grid(1, 0, 4);
    for a in 1..=4 {
        for m in 1..=4 {
            assert!(g.g_identity_residual(a, m).is_identically_zero(g.dvf().field()).unwrap());
        }
    }
}

#[test]
fn reductions_and_duality() {
    for (r, s) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let t0 = Instant::now();
        let g = grid(r, s, 8);
        let f = g.dvf().field();
        let (ru, su) = (r as usize, s as usize);
        for m in (su + 1)..=4 {
            assert!(g.red1_residual(m).unwrap().is_identically_zero(f).unwrap(), "red1 m={m} r={r} s={s}");
        }
        for a in (ru + 1)..=4 {
            assert!(g.red2_residual(a).unwrap().is_identically_zero(f).unwrap(), "red2 a={a} r={r} s={s}");
        }
        for a in 1..=4 {
            assert!(g.duality_residual(a).unwrap().is_identically_zero(f).unwrap(), "dual a={a} r={r} s={s}");
        }
        for m in (su + 2)..=4 {
            assert!(g.laplace1_residual(m).unwrap().is_identically_zero(f).unwrap(), "laplace1 m={m}");
        }
        for a in (ru + 2)..=4 {
            assert!(g.laplace2_residual(a).unwrap().is_identically_zero(f).unwrap(), "laplace2 a={a}");
        }
        assert!(g.follow_up_residual().unwrap().is_identically_zero(f).unwrap(), "follow-up r={r} s={s}");
        eprintln!("reductions r={r} s={s}: {:?}", t0.elapsed());
    }
}

#[test]
fn duality_with_flipped_sign_fails() {
    // (s+1)(a-1) is odd here, so the sign matters
    let g = grid(1, 0, 3);
    let f = g.dvf().field();
    let lhs = g.get(2, 2).unwrap();
    let fa = g.dvf().monomial_to_terms(&g.dvf().f_mono(2, 3).unwrap(), 1);
    let rhs = g.get(3, 1).unwrap();
    assert!(g.duality_residual(2).unwrap().is_identically_zero(f).unwrap());
    assert!(!lhs.sub(&fa.mul(&rhs)).is_identically_zero(f).unwrap());
}

#[test]
fn rectangles_vanish_exactly_past_the_corner() {
    for (r, s) in [(1, 0), (0, 1), (1, 1)] {
        let g = grid(r, s, 2);
        for a in 1..=(r as usize + 3) {
            for m in 1..=(s as usize + 3) {
                let expect = a >= r as usize + 2 && m >= s as usize + 2;
                assert_eq!(g.vanishing_check(a, m).unwrap(), expect, "a={a} m={m} r={r} s={s}");
            }
        }
    }
}

#[test]
fn random_shapes_vanish_iff_they_contain_the_block() {
    for (r, s) in [(1, 0), (0, 1), (1, 1)] {
        let g = grid(r, s, 13);
        let d = g.dvf();
        let labels = LabelSet::distinguished_covariant(r, s);
        let (rows, cols) = (r as usize + 2, s as usize + 2);
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let (mut with, mut without) = (0, 0);
        while with < 10 || without < 10 {
            let shape = random_skew_shape(&mut rng, cols + 1, rows + 1);
            if shape.contains_rectangle(rows, cols) {
                if with == 10 {
                    continue;
                }
                with += 1;
                assert!(enumerate(&shape, &labels).is_empty(), "{shape:?}");
                assert!(d.t_skew(&shape).unwrap().is_zero_syntactic());
            } else {
                if without == 10 || shape.num_cells() > 8 {
                    continue;
                }
                without += 1;
                let t = d.t_skew(&shape).unwrap();
                let x = rat(rng.gen_range(1000..5000), 997);
                assert_ne!(t.eval(d.field(), &x).unwrap(), rat(0, 1), "{shape:?}");
            }
        }
    }
}

#[test]
fn straight_block_alone_vanishes() {
    let g = grid(0, 0, 1);
    let shape = SkewShape::straight(Partition::rectangle(2, 2));
    assert!(g.dvf().t_skew(&shape).unwrap().is_zero_syntactic());
}
