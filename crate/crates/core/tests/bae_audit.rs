use bethe_core::bae::{
    bae_residual, enforce_single_root, homogeneous_template, max_bae_residual, pole_audit, solve_full, CartanData,
    SolveOptions,
};
use bethe_core::dvf::{BetheRootSet, RootSystemConfig};
use bethe_core::qarith::QParameter;
use num_complex::Complex64;

#[test]
fn enforced_roots_cancel_their_poles() {
    let cfg = RootSystemConfig::distinguished_covariant(1, 1).unwrap();
    let cd = CartanData::from_config(&cfg);
    let template = BetheRootSet::draw(&QParameter::default(), 2, &[2, 2, 2], 11).to_complex();
    for b in 1..=3 {
        let enforced = enforce_single_root(b, 0, &template, &cd).unwrap();
        let rs = &enforced[0];
        assert!(bae_residual(b, 0, rs, &cd).unwrap().norm() < 1e-12);
        let audit = pole_audit(&cfg, 3, rs, b, 0).unwrap();
        assert!(!audit.residues.is_empty());
        // the first pole of T^1: u = −b + u_k (b ≤ r), −r−1 + u_k (b = r+1), −2r−2+b + u_k (b ≥ r+2)
        let shift = match b {
            1 => -1,
            2 => -2,
            _ => -2 * 1 - 2 + b,
        };
        let x0 = rs.roots[b as usize - 1][0] * Complex64::new(1.5f64.powi(shift), 0.0);
        assert!(audit.residues.iter().any(|p| p.a == 1 && (p.x0 - x0).norm() < 1e-12 * x0.norm()), "color {b}");
        println!("color {b}: {} poles, max {:e}", audit.residues.len(), audit.max_relative());
        assert!(audit.max_relative() < 1e-8, "color {b}: {:?}", audit);

        let control = pole_audit(&cfg, 3, &template, b, 0).unwrap();
        println!("color {b}: control min {:e}", control.residues.iter().map(|r| r.relative).fold(f64::INFINITY, f64::min));
        assert!(control.residues.iter().all(|r| r.relative > 1e-3), "color {b}: {:?}", control);
    }
}

#[test]
fn one_free_root_with_two_sites() {
    let cd = CartanData::distinguished(0, 1).unwrap();
    let template = homogeneous_template(&QParameter::default(), 2, &[1, 0]);
    let sols = solve_full(&template, &cd, 3, &SolveOptions::default()).unwrap();
    assert!(!sols.is_empty());
    for s in &sols {
        assert!(max_bae_residual(s, &cd).unwrap() < 1e-10);
    }
}

#[test]
fn two_colors_two_sites() {
    let cd = CartanData::distinguished(1, 0).unwrap();
    let template = homogeneous_template(&QParameter::default(), 2, &[1, 1]);
    let sols = solve_full(&template, &cd, 5, &SolveOptions::default()).unwrap();
    assert!(!sols.is_empty());
    for s in &sols {
        assert!(max_bae_residual(s, &cd).unwrap() < 1e-10);
    }
}
