use bethe_core::dvf::{fixtures, BetheRootSet, Dvf, RootSystemConfig};
use bethe_core::qarith::QParameter;

#[test]
fn written_expansions_are_reproduced_term_by_term() {
    let q = QParameter::default();
    for f in fixtures::all() {
        let cfg = RootSystemConfig::new(f.preset, f.r, f.s).unwrap();
        for n in 1..=2 {
            let rs = BetheRootSet::draw_homogeneous(&q, n, &vec![2; cfg.colors()], 31 + n as u64);
            let d = Dvf::new(cfg.clone(), rs).unwrap();
            let (got, want) = f.compare(&d).unwrap();
            assert!(got.same_terms(&want), "{} N={n}\n got  {got}\n want {want}", f.name);
        }
    }
}
