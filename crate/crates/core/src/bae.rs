//! Bethe ansatz equations: residuals, single-root enforcement, pole audits
//! of the column functions and a best-effort full solver.
//!
//! The equation for root `u = u_k^{(a)}` is
//! `−P_a(u + 1/t_a)/P_a(u − 1/t_a) = (−1)^{deg α_a} ∏_b Q_b(u + (α_a|α_b))/Q_b(u − (α_a|α_b))`
//! and is always handled cross-multiplied, `A·D + σ·B·C = 0`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagrams::{Partition, SkewShape};
use crate::dvf::{BetheRootSet, Dvf, DvfError, RootSystemConfig};
use crate::lattice::eigenvalues;
use crate::qarith::{Laurent, QArithError, QField, QParameter, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BaeError {
    #[error("root {k} of color {color} does not exist")]
    NoSuchRoot { color: i32, k: usize },
    #[error("a denominator of the equation vanishes at the root")]
    DegenerateDenominator,
    #[error("the equation has no finite non-zero root")]
    NoFiniteRoot,
    #[error("root set has {found} colors, Cartan data has {expected}")]
    ColorMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Dvf(#[from] DvfError),
    #[error(transparent)]
    QArith(#[from] QArithError),
}

/// Pairings, degrees and signs entering the equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanData {
    /// `(α_a|α_b)`, colors from 1.
    pub pairing: Vec<Vec<i64>>,
    pub degrees: Vec<u8>,
    pub t_signs: Vec<i32>,
    /// Color carrying `P`.
    pub vacuum_color: i32,
}

impl CartanData {
    pub fn from_config(cfg: &RootSystemConfig) -> Self {
        CartanData {
            pairing: cfg.cartan.clone(),
            degrees: cfg.degrees.clone(),
            t_signs: cfg.t_signs.clone(),
            vacuum_color: cfg.vacuum_color,
        }
    }

    pub fn distinguished(r: i32, s: i32) -> Result<Self, DvfError> {
        Ok(Self::from_config(&RootSystemConfig::distinguished_covariant(r, s)?))
    }

    pub fn colors(&self) -> usize {
        self.pairing.len()
    }
}

/// The four sides `A, B, C, D` of `−A/B = σ C/D`, as products of factors.
struct Sides<F> {
    a: Vec<F>,
    b: Vec<F>,
    c: Vec<F>,
    d: Vec<F>,
    sigma: i64,
}

/// Factors of the equation for root `(color, k)`, each one produced by
/// `bracket(shift, other)` for `[u + shift − other]` and by `constant(n)` for
/// `[n]` (the root paired with itself).
fn sides_with<F: Scalar, T>(
    color: i32,
    k: usize,
    rs: &BetheRootSet<F>,
    cd: &CartanData,
    mut bracket: impl FnMut(i32, &F) -> T,
    mut constant: impl FnMut(i32) -> T,
) -> Result<Sides<T>, BaeError> {
    if rs.colors() != cd.colors() {
        return Err(BaeError::ColorMismatch { expected: cd.colors(), found: rs.colors() });
    }
    if color < 1 || color as usize > cd.colors() || k >= rs.count(color) {
        return Err(BaeError::NoSuchRoot { color, k });
    }
    let ai = color as usize - 1;
    let t = cd.t_signs[ai];
    let mut sides = Sides { a: vec![], b: vec![], c: vec![], d: vec![], sigma: 1 - 2 * cd.degrees[ai] as i64 };
    if color == cd.vacuum_color {
        for w in &rs.sites {
            sides.a.push(bracket(t, w));
            sides.b.push(bracket(-t, w));
        }
    }
    for (bi, roots) in rs.roots.iter().enumerate() {
        let p = cd.pairing[ai][bi] as i32;
        if p == 0 {
            continue;
        }
        for (l, y) in roots.iter().enumerate() {
            if bi == ai && l == k {
                sides.c.push(constant(p));
                sides.d.push(constant(-p));
            } else {
                sides.c.push(bracket(p, y));
                sides.d.push(bracket(-p, y));
            }
        }
    }
    Ok(sides)
}

fn product<F: Scalar>(v: &[F]) -> F {
    v.iter().fold(F::one(), |acc, x| acc * x.clone())
}

/// Cross-multiplied residual `A·D + σ·B·C` of the equation for root `k`
/// (0-based) of `color`. Float residuals are divided by `max(|AD|, |BC|)`.
pub fn bae_residual<F: Scalar>(color: i32, k: usize, rs: &BetheRootSet<F>, cd: &CartanData) -> Result<F, BaeError> {
    let field = QField::<F>::new(&rs.q);
    let x = rs.roots.get(color as usize - 1).and_then(|c| c.get(k)).cloned();
    let x = x.ok_or(BaeError::NoSuchRoot { color, k })?;
    let s = sides_with(
        color,
        k,
        rs,
        cd,
        |c, y| field.bracket_at(&(field.qpow(c) / y.clone()), &x),
        |n| field.bracket_int(n),
    )?;
    let (a, b, c, d) = (product(&s.a), product(&s.b), product(&s.c), product(&s.d));
    if F::EXACT && (b.is_zero() || d.is_zero()) {
        return Err(BaeError::DegenerateDenominator);
    }
    let ad = a * d;
    let bc = F::from_i64(s.sigma) * b * c;
    let res = ad.clone() + bc.clone();
    if F::EXACT {
        return Ok(res);
    }
    let scale = ad.modulus().max(bc.modulus());
    if scale == 0.0 {
        return Ok(res);
    }
    Ok(res / F::from_complex(Complex64::new(scale, 0.0)).expect("float field"))
}

/// Largest `|residual|` over all roots.
pub fn max_bae_residual<F: Scalar>(rs: &BetheRootSet<F>, cd: &CartanData) -> Result<f64, BaeError> {
    let mut worst: f64 = 0.0;
    for color in 1..=rs.colors() as i32 {
        for k in 0..rs.count(color) {
            worst = worst.max(bae_residual(color, k, rs, cd)?.modulus());
        }
    }
    Ok(worst)
}

/// Relative size of the smallest denominator factor at the root; tiny values
/// mean the cross-multiplied equation holds only because both sides vanish.
fn denominator_health(color: i32, k: usize, rs: &BetheRootSet<Complex64>, cd: &CartanData) -> Result<f64, BaeError> {
    let q = QField::<Complex64>::new(&rs.q);
    let x = rs.roots[color as usize - 1][k];
    let rel = |c: i32, y: &Complex64| {
        let t = q.qpow(c) / y * x;
        (t - 1.0 / t).norm() / (t.norm() + 1.0 / t.norm())
    };
    let s = sides_with(color, k, rs, cd, rel, |_| 1.0)?;
    Ok(s.b.iter().chain(&s.d).chain(&s.a).chain(&s.c).fold(1.0f64, |m, v| m.min(*v)))
}

/// `[u + c − u0]` as a Laurent polynomial in `y = q^u`.
fn bracket_poly(field: &QField<Complex64>, m: Complex64) -> Laurent<Complex64> {
    let den = *field.bracket_den();
    Laurent::from_coeffs(-1, vec![-1.0 / (m * den), Complex64::new(0.0, 0.0), m / den])
}

fn poly_product(v: &[Laurent<Complex64>]) -> Laurent<Complex64> {
    v.iter().fold(Laurent::monomial(Complex64::new(1.0, 0.0), 0), |acc, p| acc.mul(p))
}

/// Roots of `Σ c_i y^i` via the companion matrix, polished by Newton steps.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    let scale = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
    while c.last().is_some_and(|v| v.norm() <= 1e-14 * scale) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    let eig = eigenvalues(&m).unwrap_or_default();
    eig.into_iter()
        .map(|mut z| {
            for _ in 0..4 {
                let (mut p, mut dp) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
                for v in c.iter().rev() {
                    dp = dp * z + p;
                    p = p * z + v;
                }
                if dp.norm() == 0.0 {
                    break;
                }
                z -= p / dp;
            }
            z
        })
        .collect()
}

/// Tolerance a single enforced equation must meet.
pub const ENFORCE_TOL: f64 = 1e-12;

/// All admissible values of root `k` of `color` solving its own equation with
/// every other parameter held fixed. Each returned set differs from
/// `template` in that one root.
pub fn enforce_single_root(
    color: i32,
    k: usize,
    template: &BetheRootSet<Complex64>,
    cd: &CartanData,
) -> Result<Vec<BetheRootSet<Complex64>>, BaeError> {
    let field = QField::<Complex64>::new(&template.q);
    let s = sides_with(
        color,
        k,
        template,
        cd,
        |c, y| bracket_poly(&field, field.qpow(c) / y),
        |n| Laurent::monomial(field.bracket_int(n), 0),
    )?;
    let sigma = Complex64::new(s.sigma as f64, 0.0);
    let poly = poly_product(&s.a).mul(&poly_product(&s.d)).add(&poly_product(&s.b).mul(&poly_product(&s.c)).scale(&sigma));
    if poly.is_zero() || poly.high() == poly.low() {
        return Err(BaeError::NoFiniteRoot);
    }
    let coeffs: Vec<Complex64> = (poly.low()..=poly.high()).map(|e| poly.coeff(e)).collect();
    let mut out: Vec<BetheRootSet<Complex64>> = Vec::new();
    for y in polynomial_roots(&coeffs) {
        if !y.is_finite() || y.norm() < 1e-12 {
            continue;
        }
        let rs = template.with_root(color, k, y);
        if denominator_health(color, k, &rs, cd)? < 1e-8 {
            continue;
        }
        if bae_residual(color, k, &rs, cd)?.norm() < ENFORCE_TOL {
            out.push(rs);
        }
    }
    if out.is_empty() {
        return Err(BaeError::NoFiniteRoot);
    }
    Ok(out)
}

/// Residues of one column function at the poles carried by a single root.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleResidue {
    /// Column height `a` of `T^a`.
    pub a: usize,
    /// The pole `x0 = q^{u0}`.
    pub x0: Complex64,
    /// `|Σ residues| / max |term residue|`.
    pub relative: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PoleAudit {
    pub color: i32,
    pub k: usize,
    pub residues: Vec<PoleResidue>,
}

impl PoleAudit {
    pub fn max_relative(&self) -> f64 {
        self.residues.iter().map(|r| r.relative).fold(0.0, f64::max)
    }
}

/// For `T^1 … T^{a_max}`, the residue at every pole `u0` produced by
/// `u_k^{(color)}` (all shifted copies occurring in the column tableau sum),
/// relative to the largest single-term residue at that pole.
pub fn pole_audit(
    cfg: &RootSystemConfig,
    a_max: usize,
    rs: &BetheRootSet<Complex64>,
    color: i32,
    k: usize,
) -> Result<PoleAudit, BaeError> {
    if color < 1 || color as usize > cfg.colors() || k >= rs.count(color) {
        return Err(BaeError::NoSuchRoot { color, k });
    }
    let dvf = Dvf::new(cfg.clone(), rs.clone())?;
    let param = rs.root_param(color, k);
    let mut residues = Vec::new();
    for a in 1..=a_max {
        let shape = SkewShape::straight(Partition::column(a));
        let sym = dvf.t_skew_sym(&shape)?;
        let mut shifts: Vec<i32> = sym
            .iter()
            .flat_map(|(m, _)| m.factors().iter().filter(|(key, e)| key.param == param && *e < 0).map(|(key, _)| key.shift))
            .collect();
        shifts.sort_unstable();
        shifts.dedup();
        let terms = dvf.to_terms(&sym);
        for c in shifts {
            // [u + c − u0] vanishes at x = y q^{−c}
            let x0 = rs.roots[color as usize - 1][k] * dvf.field().qpow(-c);
            let parts = terms.term_residues(dvf.field(), &x0)?;
            let total: Complex64 = parts.iter().sum();
            let scale = parts.iter().map(|v| v.norm()).fold(0.0, f64::max);
            if scale == 0.0 {
                continue;
            }
            residues.push(PoleResidue { a, x0, relative: total.norm() / scale });
        }
    }
    Ok(PoleAudit { color, k, residues })
}

/// Options of the multi-start solver.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub starts: usize,
    pub max_iter: usize,
    /// Residual every equation of an accepted solution must meet.
    pub tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { starts: 48, max_iter: 80, tol: 1e-10 }
    }
}

fn unknowns(rs: &BetheRootSet<Complex64>) -> Vec<(i32, usize)> {
    (1..=rs.colors() as i32).flat_map(|c| (0..rs.count(c)).map(move |k| (c, k))).collect()
}

fn raw_residuals(rs: &BetheRootSet<Complex64>, cd: &CartanData, idx: &[(i32, usize)]) -> DVector<Complex64> {
    let field = QField::<Complex64>::new(&rs.q);
    DVector::from_iterator(
        idx.len(),
        idx.iter().map(|&(c, k)| {
            let x = rs.roots[c as usize - 1][k];
            let s = sides_with(c, k, rs, cd, |sh, y| field.bracket_at(&(field.qpow(sh) / y), &x), |n| {
                field.bracket_int(n)
            })
            .expect("indices come from the root set");
            product(&s.a) * product(&s.d) + Complex64::new(s.sigma as f64, 0.0) * product(&s.b) * product(&s.c)
        }),
    )
}

fn set_unknowns(rs: &BetheRootSet<Complex64>, idx: &[(i32, usize)], v: &DVector<Complex64>) -> BetheRootSet<Complex64> {
    let mut out = rs.clone();
    for (i, &(c, k)) in idx.iter().enumerate() {
        out.roots[c as usize - 1][k] = v[i];
    }
    out.generic = false;
    out
}

/// `y` and `−y` give the same Q-ratios; keep the one with positive real part.
fn canonical(rs: &BetheRootSet<Complex64>) -> Vec<Vec<Complex64>> {
    rs.roots
        .iter()
        .map(|c| {
            let mut v: Vec<Complex64> = c
                .iter()
                .map(|y| {
                    let flip = if y.re.abs() >= y.im.abs() { y.re < 0.0 } else { y.im < 0.0 };
                    if flip {
                        -y
                    } else {
                        *y
                    }
                })
                .collect();
            v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            v
        })
        .collect()
}

fn same_solution(a: &BetheRootSet<Complex64>, b: &BetheRootSet<Complex64>) -> bool {
    canonical(a)
        .iter()
        .flatten()
        .zip(canonical(b).iter().flatten())
        .all(|(x, y)| (x - y).norm() <= 1e-6 * x.norm().max(y.norm()))
}

/// Whether two roots of one color coincide up to sign.
fn collided(rs: &BetheRootSet<Complex64>) -> bool {
    rs.roots.iter().any(|c| {
        c.iter().enumerate().any(|(i, x)| {
            c[i + 1..].iter().any(|y| (x - y).norm() < 1e-6 * x.norm() || (x + y).norm() < 1e-6 * x.norm())
        })
    })
}

/// Multi-start damped Newton for the whole system of `sector` roots on the
/// sites of `template` (whose own root values are ignored). Returns distinct
/// converged solutions, possibly none.
pub fn solve_full(
    template: &BetheRootSet<Complex64>,
    cd: &CartanData,
    seed: u64,
    opts: &SolveOptions,
) -> Result<Vec<BetheRootSet<Complex64>>, BaeError> {
    if template.colors() != cd.colors() {
        return Err(BaeError::ColorMismatch { expected: cd.colors(), found: template.colors() });
    }
    let idx = unknowns(template);
    if idx.is_empty() {
        return Ok(vec![template.clone()]);
    }
    let n = idx.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<BetheRootSet<Complex64>> = Vec::new();
    for _ in 0..opts.starts {
        let mut v = DVector::from_iterator(
            n,
            (0..n).map(|_| Complex64::from_polar(rng.gen_range(0.3..3.0), rng.gen_range(0.0..std::f64::consts::TAU))),
        );
        let mut rs = set_unknowns(template, &idx, &v);
        let mut f = raw_residuals(&rs, cd, &idx);
        for _ in 0..opts.max_iter {
            let mut jac = DMatrix::<Complex64>::zeros(n, n);
            for j in 0..n {
                let h = 1e-7 * v[j].norm().max(1e-3);
                let mut vp = v.clone();
                let mut vm = v.clone();
                vp[j] += h;
                vm[j] -= h;
                let col = (raw_residuals(&set_unknowns(template, &idx, &vp), cd, &idx)
                    - raw_residuals(&set_unknowns(template, &idx, &vm), cd, &idx))
                    / Complex64::new(2.0 * h, 0.0);
                jac.set_column(j, &col);
            }
            let Some(step) = jac.lu().solve(&(-&f)) else { break };
            let mut lambda = 1.0;
            let norm0 = f.norm();
            let mut accepted = false;
            while lambda > 1e-4 {
                let cand = &v + &step * Complex64::new(lambda, 0.0);
                let crs = set_unknowns(template, &idx, &cand);
                let cf = raw_residuals(&crs, cd, &idx);
                if cf.norm() < norm0 {
                    v = cand;
                    rs = crs;
                    f = cf;
                    accepted = true;
                    break;
                }
                lambda *= 0.5;
            }
            if !accepted || max_bae_residual(&rs, cd)? < 1e-14 {
                break;
            }
        }
        if v.iter().any(|y| !y.is_finite() || y.norm() < 1e-8 || y.norm() > 1e8) || collided(&rs) {
            continue;
        }
        if max_bae_residual(&rs, cd)? >= opts.tol {
            continue;
        }
        let healthy = idx.iter().all(|&(c, k)| denominator_health(c, k, &rs, cd).is_ok_and(|h| h > 1e-8));
        if healthy && !found.iter().any(|s| same_solution(s, &rs)) {
            found.push(rs);
        }
    }
    Ok(found)
}

/// A float root set with `n_sites` homogeneous sites (`w = 0`) and `sector`
/// placeholder roots, ready for [`solve_full`].
pub fn homogeneous_template(q: &QParameter, n_sites: usize, sector: &[usize]) -> BetheRootSet<Complex64> {
    let one = Complex64::new(1.0, 0.0);
    BetheRootSet::new(q.clone(), vec![one; n_sites], sector.iter().map(|&n| vec![one; n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::{rat, Rat};
    use num_traits::Zero;

    fn q() -> QParameter {
        QParameter::default()
    }

    #[test]
    fn distinguished_pairings() {
        let cd = CartanData::distinguished(2, 1).unwrap();
        let diag: Vec<i64> = (0..4).map(|a| cd.pairing[a][a]).collect();
        assert_eq!(diag, vec![2, 2, 0, -2]);
        assert_eq!(cd.pairing[2][3], 1);
        assert_eq!(cd.pairing[1][2], -1);
        assert_eq!(cd.degrees, vec![0, 0, 1, 0]);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(cd.pairing[a][b], cd.pairing[b][a]);
            }
        }
    }

    #[test]
    fn single_root_at_y_squared_minus_one() {
        // r=1, s=0, one site at w=0, one color-1 root: the equation is q^{2u} = −1
        let cd = CartanData::distinguished(1, 0).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let rs = BetheRootSet::new(q(), vec![Complex64::new(1.0, 0.0)], vec![vec![i], vec![]]);
        assert!(bae_residual(1, 0, &rs, &cd).unwrap().norm() < 1e-15);
        let off = rs.with_root(1, 0, Complex64::new(0.3, 1.1));
        assert!(bae_residual(1, 0, &off, &cd).unwrap().norm() > 1e-3);
        let solved = enforce_single_root(1, 0, &off, &cd).unwrap();
        assert!(!solved.is_empty());
        for s in solved {
            let y = s.roots[0][0];
            assert!((y * y + 1.0).norm() < 1e-12, "{y}");
        }
    }

    #[test]
    fn generic_exact_roots_do_not_solve() {
        let cd = CartanData::distinguished(1, 1).unwrap();
        let rs = BetheRootSet::draw(&q(), 2, &[1, 1, 1], 4);
        for c in 1..=3 {
            assert!(!bae_residual::<Rat>(c, 0, &rs, &cd).unwrap().is_zero());
        }
    }

    #[test]
    fn exact_degenerate_denominator() {
        // a root at u = w + 1 makes P(u − 1) vanish
        let cd = CartanData::distinguished(1, 0).unwrap();
        let rs = BetheRootSet::new(q(), vec![rat(1, 1)], vec![vec![rat(3, 2)], vec![]]);
        assert_eq!(bae_residual::<Rat>(1, 0, &rs, &cd), Err(BaeError::DegenerateDenominator));
    }

    #[test]
    fn empty_color_has_no_unknown() {
        let cd = CartanData::distinguished(0, 1).unwrap();
        let rs = homogeneous_template(&q(), 2, &[0, 1]);
        assert!(matches!(enforce_single_root(1, 0, &rs, &cd), Err(BaeError::NoSuchRoot { .. })));
        assert_eq!(solve_full(&homogeneous_template(&q(), 2, &[0, 0]), &cd, 1, &SolveOptions::default()).unwrap().len(), 1);
    }

    #[test]
    fn companion_roots_of_a_cubic() {
        // (y − 1)(y − 2)(y + 3) = y³ − 7y + 6
        let c: Vec<Complex64> = [6.0, -7.0, 0.0, 1.0].iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let mut roots: Vec<f64> = polynomial_roots(&c).iter().map(|z| z.re).collect();
        roots.sort_by(f64::total_cmp);
        for (got, want) in roots.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}
