use bethe_core::diagrams::{random_skew_shape, SkewShape};
use bethe_core::dvf::{Axis, BetheRootSet, Dvf, RootSystemConfig};
use bethe_core::qarith::QParameter;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn dvf(r: i32, s: i32) -> Dvf<bethe_core::qarith::Rat> {
    let cfg = RootSystemConfig::distinguished_covariant(r, s).unwrap();
    let rs = BetheRootSet::draw(&QParameter::default(), 2, &vec![1; cfg.colors()], 3);
    Dvf::new(cfg, rs).unwrap()
}

#[test]
fn small_shapes_agree_on_both_axes() {
    for (r, s) in [(0, 1), (1, 0), (1, 1)] {
        let d = dvf(r, s);
        let mut rng = ChaCha8Rng::seed_from_u64(500 + r as u64 * 10 + s as u64);
        for _ in 0..6 {
            let sh = random_skew_shape(&mut rng, 3, 3);
            for axis in [Axis::Column, Axis::Row] {
                let c = d.jt_difference(&sh, axis).unwrap().certify_zero(d.field()).unwrap();
                assert!(c.is_zero, "r={r} s={s} {sh} {axis:?}");
            }
        }
    }
}

#[test]
fn expanded_determinant_matches_the_tableau_sum() {
    let d = dvf(1, 0);
    let sh: SkewShape = "2,1".parse().unwrap();
    let t = d.t_skew(&sh).unwrap();
    assert!(t.equals(&d.jacobi_trudi(&sh, Axis::Column).unwrap(), d.field()).unwrap());
    assert!(t.equals(&d.jacobi_trudi(&sh, Axis::Row).unwrap(), d.field()).unwrap());
}
