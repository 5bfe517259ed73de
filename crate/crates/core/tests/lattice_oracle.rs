use bethe_core::bae::{homogeneous_template, solve_full, CartanData, SolveOptions};
use bethe_core::dvf::BetheRootSet;
use bethe_core::lattice::{commutator_norm, commutes, spectral_match, vacuum_check, TransferMatrix};
use bethe_core::qarith::{rat, QParameter, Rat};
use num_complex::Complex64;

fn sites(n: usize) -> Vec<Rat> {
    BetheRootSet::draw(&QParameter::default(), n, &[], 90 + n as u64).sites
}

#[test]
fn transfer_matrices_commute() {
    let q = QParameter::default();
    for (r, s) in [(0, 1), (1, 0)] {
        for n in 1..=3 {
            let w = sites(n);
            let a = TransferMatrix::new(r, s, &q, &rat(3, 7), &w).unwrap();
            let b = TransferMatrix::new(r, s, &q, &rat(11, 5), &w).unwrap();
            if n <= 2 {
                assert!(commutes(&a, &b).unwrap(), "r={r} s={s} N={n}");
            }
            let wc: Vec<Complex64> = w.iter().map(|y| Complex64::new(bethe_core::qarith::rat_to_f64(y), 0.0)).collect();
            let fa = TransferMatrix::new(r, s, &q, &Complex64::new(0.8, 0.3), &wc).unwrap();
            let fb = TransferMatrix::new(r, s, &q, &Complex64::new(1.7, -0.4), &wc).unwrap();
            let c = commutator_norm(&fa, &fb).unwrap();
            assert!(c < 1e-12, "r={r} s={s} N={n}: {c:e}");
            assert!(a.preserves_occupation());
        }
    }
}

#[test]
fn pseudo_vacuum_matches_the_trivial_sector() {
    let q = QParameter::default();
    for n in 1..=2 {
        for x in [rat(3, 7), rat(13, 4)] {
            let v = vacuum_check(0, 1, &q, &sites(n), &x).unwrap();
            assert_eq!(v.eigenvalue.as_ref(), Some(&v.t1), "N={n}");
        }
    }
    let wc: Vec<Complex64> = sites(3).iter().map(|y| Complex64::new(bethe_core::qarith::rat_to_f64(y), 0.0)).collect();
    let v = vacuum_check(0, 1, &q, &wc, &Complex64::new(1.3, 0.2)).unwrap();
    let e = v.eigenvalue.unwrap();
    assert!((e - v.t1).norm() < 1e-10 * e.norm());
}

#[test]
fn solved_roots_reproduce_eigenvalues() {
    let q = QParameter::default();
    let samples = [Complex64::new(1.3, 0.1), Complex64::new(0.7, -0.2), Complex64::new(2.1, 0.4)];
    let cd = CartanData::distinguished(0, 1).unwrap();
    for sector in [[1, 0], [1, 1], [2, 0], [2, 1]] {
        let sols = solve_full(&homogeneous_template(&q, 2, &sector), &cd, 7, &SolveOptions::default()).unwrap();
        assert!(!sols.is_empty(), "sector {sector:?}");
        for s in &sols {
            let rep = spectral_match(0, 1, s, &samples).unwrap();
            assert!(rep.max_mismatch() < 1e-6, "sector {sector:?}: {:?}", rep);
            for p in &rep.points {
                assert!((p.rho - 1.0).norm() < 1e-12);
            }
        }
    }
}
