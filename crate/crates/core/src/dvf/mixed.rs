//! Contravariant and mixed identities, and the A/B factorization of the
//! column and row functions.

use crate::qarith::{Scalar, TermSum};

use super::functions::{expand_series, SeriesFactor};
use super::{BetheRootSet, Dvf, DvfError, Preset, RootSystemConfig, SeriesKind, SymSum};

fn trivial_vacuum<F: Scalar>(rs: &BetheRootSet<F>) -> BetheRootSet<F> {
    let mut rs = rs.clone();
    rs.sites.clear();
    rs
}

/// `Σ_{(a,b) ≠ (−1,1)} (−1)^{p(a)+p(b)} ż(a;u+s) z(b;u+r) − (Ṫ¹(u+s) T¹(u+r) − 1)`
/// with the vacuum parts dropped (the sites of `rs` are ignored).
pub fn mixed_identity_residual<F: Scalar>(r: i32, s: i32, rs: &BetheRootSet<F>) -> Result<TermSum<F>, DvfError> {
    if r == s {
        return Err(DvfError::EqualRankError);
    }
    let rs = trivial_vacuum(rs);
    let cov = Dvf::new(RootSystemConfig::distinguished_covariant(r, s)?, rs.clone())?;
    let con = Dvf::new(RootSystemConfig::distinguished_contravariant(r, s)?, rs)?;
    let mut pairs = SymSum::zero();
    let mut t_dot = SymSum::zero();
    let mut t = SymSum::zero();
    for &a in con.cfg().labels.labels() {
        t_dot.add_term(con.z_mono(a, s)?, con.sign(a)?);
    }
    for &b in cov.cfg().labels.labels() {
        t.add_term(cov.z_mono(b, r)?, cov.sign(b)?);
    }
    for &a in con.cfg().labels.labels() {
        for &b in cov.cfg().labels.labels() {
            if (a, b) == (-1, 1) {
                continue;
            }
            let m = con.z_mono(a, s)?.mul(&cov.z_mono(b, r)?);
            pairs.add_term(m, con.sign(a)? * cov.sign(b)?);
        }
    }
    let rhs = t_dot.mul(&t).sub(&SymSum::one());
    Ok(cov.to_terms(&pairs.sub(&rhs)))
}

/// `z(a;u) − (−1)^N ż(−a; s−r−u)` with every parameter negated in `ż`.
pub fn crossing_residual<F: Scalar>(r: i32, s: i32, a: i32, rs: &BetheRootSet<F>) -> Result<TermSum<F>, DvfError> {
    let cov = Dvf::new(RootSystemConfig::distinguished_covariant(r, s)?, rs.clone())?;
    let con = Dvf::new(RootSystemConfig::distinguished_contravariant(r, s)?, rs.negated())?;
    let lhs = cov.z_function(a)?;
    let sign = if rs.n_sites() % 2 == 0 { F::one() } else { -F::one() };
    let rhs = con.z_function(-a)?.reflect_u(con.field(), s - r).scale(&sign);
    Ok(lhs.sub(&rhs))
}

/// The four factor functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AbKind {
    /// `A_k`, even labels, row-type series.
    ALower,
    /// `A^l`, even labels, column-type series.
    AUpper,
    /// `B_k`, odd labels, column-type series.
    BLower,
    /// `B^l`, odd labels, row-type series.
    BUpper,
}

fn require_trivial<F: Scalar>(dvf: &Dvf<F>) -> Result<(), DvfError> {
    if dvf.cfg().preset != Preset::DistinguishedCovariant {
        return Err(DvfError::UnknownPreset(dvf.cfg().preset.name().into()));
    }
    Ok(())
}

/// `A_k(u)`, `A^l(u)`, `B_k(u)` or `B^l(u)`; zero for negative index.
pub fn ab_series<F: Scalar>(dvf: &Dvf<F>, kind: AbKind, n: i64) -> Result<SymSum, DvfError> {
    require_trivial(dvf)?;
    if n < 0 {
        return Ok(SymSum::zero());
    }
    if n == 0 {
        return Ok(SymSum::one());
    }
    let (r, s) = (dvf.cfg().r, dvf.cfg().s);
    let even: Vec<i32> = (1..=r + 1).collect();
    let odd: Vec<i32> = (r + 2..=r + s + 2).collect();
    let factor = |b: i32, c: i64, inverse: bool| -> Result<SeriesFactor, DvfError> {
        Ok(SeriesFactor { z: dvf.z_mono(b, 0)?, c, inverse })
    };
    let factors: Vec<SeriesFactor> = match kind {
        AbKind::ALower => even.iter().map(|&b| factor(b, -1, true)).collect::<Result<_, _>>()?,
        AbKind::BUpper => odd.iter().map(|&b| factor(b, -1, false)).collect::<Result<_, _>>()?,
        AbKind::BLower => odd.iter().rev().map(|&b| factor(b, 1, true)).collect::<Result<_, _>>()?,
        AbKind::AUpper => even.iter().rev().map(|&b| factor(b, 1, false)).collect::<Result<_, _>>()?,
    };
    let coeffs = expand_series(&factors, n as usize);
    Ok(coeffs[n as usize].shifted(-(n as i32 - 1)))
}

pub fn ab_function<F: Scalar>(dvf: &Dvf<F>, kind: AbKind, n: i64) -> Result<TermSum<F>, DvfError> {
    Ok(dvf.to_terms(&ab_series(dvf, kind, n)?))
}

/// `T^a − Σ_l B_{a−l}(u−l) A^l(u+a−l)` (column) or
/// `T_m − Σ_l A_{m−l}(u−l) B^l(u+m−l)` (row), vacuum dropped.
pub fn convolution_residual<F: Scalar>(dvf: &Dvf<F>, kind: SeriesKind, n: i64) -> Result<TermSum<F>, DvfError> {
    let dvf = Dvf::new(dvf.cfg().clone(), trivial_vacuum(dvf.roots()))?;
    require_trivial(&dvf)?;
    let (r, s) = (dvf.cfg().r as i64, dvf.cfg().s as i64);
    let mut conv = SymSum::zero();
    let (first, second, top) = match kind {
        SeriesKind::Column => (AbKind::BLower, AbKind::AUpper, r + 1),
        SeriesKind::Row => (AbKind::ALower, AbKind::BUpper, s + 1),
    };
    for l in 0..=top.min(n) {
        let left = ab_series(&dvf, first, n - l)?.shifted(-l as i32);
        let right = ab_series(&dvf, second, l)?.shifted((n - l) as i32);
        conv.add_assign(&left.mul(&right));
    }
    let t = dvf.t_series_sym(kind, n);
    Ok(dvf.to_terms(&t.sub(&conv)))
}
