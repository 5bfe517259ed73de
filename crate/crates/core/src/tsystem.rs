//! Functional relations among the rectangular functions `T_m^a = T_{(m^a)}`.
//!
//! Grid entries come from tableau sums, so every relation checked here is an
//! identity between independently computed functions.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::diagrams::{Partition, SkewShape};
use crate::dvf::{Dvf, DvfError, Monomial};
use crate::qarith::{QArithError, RatExpr, Scalar, TermSum};

/// Cached rectangular functions for one configuration and root set.
#[derive(Debug)]
pub struct TGrid<F> {
    dvf: Dvf<F>,
    cache: Mutex<HashMap<(usize, usize), TermSum<F>>>,
}

impl<F: Scalar> TGrid<F> {
    pub fn new(dvf: Dvf<F>) -> Self {
        TGrid { dvf, cache: Mutex::new(HashMap::new()) }
    }

    pub fn dvf(&self) -> &Dvf<F> {
        &self.dvf
    }

    fn r(&self) -> usize {
        self.dvf.cfg().r as usize
    }

    fn s(&self) -> usize {
        self.dvf.cfg().s as usize
    }

    /// `T_m^a(u)` computed afresh; `1` when `a = 0` or `m = 0`.
    pub fn fresh(&self, a: usize, m: usize) -> Result<TermSum<F>, DvfError> {
        if a == 0 || m == 0 {
            return Ok(TermSum::one());
        }
        self.dvf.t_skew(&SkewShape::straight(Partition::rectangle(a, m)))
    }

    /// `T_m^a(u)`, cached.
    pub fn get(&self, a: usize, m: usize) -> Result<TermSum<F>, DvfError> {
        if let Some(t) = self.cache.lock().expect("cache lock").get(&(a, m)) {
            return Ok(t.clone());
        }
        let t = self.fresh(a, m)?;
        self.cache.lock().expect("cache lock").entry((a, m)).or_insert_with(|| t.clone());
        Ok(t)
    }

    /// `T_m^a(u + shift)` as an expression leaf.
    fn at(&self, a: usize, m: usize, shift: i32) -> Result<RatExpr<F>, DvfError> {
        Ok(RatExpr::Leaf(self.get(a, m)?.shift_u(self.dvf.field(), shift)))
    }

    fn leaf(&self, m: &Monomial, coeff: i64) -> RatExpr<F> {
        RatExpr::Leaf(self.dvf.monomial_to_terms(m, coeff))
    }

    /// `g_m^a(u + shift)`.
    pub fn g_mono(&self, a: usize, m: usize, shift: i32) -> Monomial {
        if a != 1 {
            return Monomial::one();
        }
        let m = m as i32;
        (1..=m).fold(Monomial::one(), |acc, j| acc.mul(&self.dvf.p_mono(shift - m + 2 * j - 2)))
    }

    /// `F^a(u + shift)`; `a ≥ 0` here.
    fn f_mono(&self, a: usize, shift: i32) -> Monomial {
        self.dvf.f_mono(a as i64, shift).expect("non-negative index")
    }

    /// `Q_{r+1}(u + num) / Q_{r+1}(u + den)`.
    fn q_ratio(&self, num: i32, den: i32) -> Monomial {
        let c = self.r() as i32 + 1;
        self.dvf.q_mono(c, num).mul(&self.dvf.q_mono(c, den).inv())
    }

    /// `T_m^a(u−1)T_m^a(u+1) − T_{m+1}^a(u)T_{m−1}^a(u) − g_m^a(u)T_m^{a−1}(u)T_m^{a+1}(u)`.
    pub fn hirota_residual(&self, a: usize, m: usize) -> Result<RatExpr<F>, DvfError> {
        assert!(a >= 1 && m >= 1, "Hirota relation needs a, m >= 1");
        let lhs = RatExpr::Product(vec![self.at(a, m, -1)?, self.at(a, m, 1)?]);
        let first = RatExpr::Product(vec![self.at(a, m + 1, 0)?, self.at(a, m - 1, 0)?]);
        let second = RatExpr::Product(vec![
            self.leaf(&self.g_mono(a, m, 0), 1),
            self.at(a - 1, m, 0)?,
            self.at(a + 1, m, 0)?,
        ]);
        Ok(RatExpr::Sum(vec![lhs, first.scaled(-F::one()), second.scaled(-F::one())]))
    }

    /// `g_m^a(u+1)g_m^a(u−1) − g_{m+1}^a(u)g_{m−1}^a(u)`.
    pub fn g_identity_residual(&self, a: usize, m: usize) -> TermSum<F> {
        let lhs = self.g_mono(a, m, 1).mul(&self.g_mono(a, m, -1));
        let rhs = self.g_mono(a, m + 1, 0).mul(&self.g_mono(a, m.saturating_sub(1), 0));
        self.dvf.monomial_to_terms(&lhs, 1).sub(&self.dvf.monomial_to_terms(&rhs, 1))
    }

    /// `T_m^{r+1}(u) − F^{m−s}(u+r−s+2) Q_{r+1}(u−m)/Q_{r+1}(u+m−2s−2) T_{s+1}^{r+1}(u+m−s−1)`
    /// for `m ≥ s+1`.
    pub fn red1_residual(&self, m: usize) -> Result<RatExpr<F>, DvfError> {
        let (r, s) = (self.r() as i32, self.s() as i32);
        assert!(m as i32 > s);
        let mi = m as i32;
        let pre = self.f_mono(m - self.s(), r - s + 2).mul(&self.q_ratio(-mi, mi - 2 * s - 2));
        let rhs = RatExpr::Product(vec![self.leaf(&pre, 1), self.at(self.r() + 1, self.s() + 1, mi - s - 1)?]);
        Ok(RatExpr::sub(self.at(self.r() + 1, m, 0)?, rhs))
    }

    /// `T_{s+1}^a(u) − (−1)^{(s+1)(a−r−1)} Q_{r+1}(u−a−s+r)/Q_{r+1}(u+a−s−r−2) T_{s+1}^{r+1}(u+a−r−1)`
    /// for `a ≥ r+1`.
    pub fn red2_residual(&self, a: usize) -> Result<RatExpr<F>, DvfError> {
        let (r, s) = (self.r() as i32, self.s() as i32);
        assert!(a as i32 > r);
        let ai = a as i32;
        let sign = if ((s + 1) * (ai - r - 1)) % 2 == 0 { 1 } else { -1 };
        let pre = self.q_ratio(-ai - s + r, ai - s - r - 2);
        let rhs = RatExpr::Product(vec![self.leaf(&pre, sign), self.at(self.r() + 1, self.s() + 1, ai - r - 1)?]);
        Ok(RatExpr::sub(self.at(a, self.s() + 1, 0)?, rhs))
    }

    /// `T_{a+s}^{r+1}(u) − (−1)^{(s+1)(a−1)} F^a(u+r−s+2) T_{s+1}^{r+a}(u)` for `a ≥ 1`.
    pub fn duality_residual(&self, a: usize) -> Result<RatExpr<F>, DvfError> {
        let (r, s) = (self.r() as i32, self.s() as i32);
        assert!(a >= 1);
        let sign = if ((s + 1) * (a as i32 - 1)) % 2 == 0 { 1 } else { -1 };
        let rhs = RatExpr::Product(vec![
            self.leaf(&self.f_mono(a, r - s + 2), sign),
            self.at(self.r() + a, self.s() + 1, 0)?,
        ]);
        Ok(RatExpr::sub(self.at(self.r() + 1, a + self.s(), 0)?, rhs))
    }

    /// `T_m^{r+1}(u−1)T_m^{r+1}(u+1) − T_{m+1}^{r+1}(u)T_{m−1}^{r+1}(u)` for `m ≥ s+2`.
    pub fn laplace1_residual(&self, m: usize) -> Result<RatExpr<F>, DvfError> {
        assert!(m >= self.s() + 2);
        let a = self.r() + 1;
        Ok(RatExpr::sub(
            RatExpr::Product(vec![self.at(a, m, -1)?, self.at(a, m, 1)?]),
            RatExpr::Product(vec![self.at(a, m + 1, 0)?, self.at(a, m - 1, 0)?]),
        ))
    }

    /// `T_{s+1}^a(u−1)T_{s+1}^a(u+1) − g_{s+1}^a(u)T_{s+1}^{a−1}(u)T_{s+1}^{a+1}(u)` for `a ≥ r+2`.
    pub fn laplace2_residual(&self, a: usize) -> Result<RatExpr<F>, DvfError> {
        assert!(a >= self.r() + 2);
        let m = self.s() + 1;
        Ok(RatExpr::sub(
            RatExpr::Product(vec![self.at(a, m, -1)?, self.at(a, m, 1)?]),
            RatExpr::Product(vec![self.leaf(&self.g_mono(a, m, 0), 1), self.at(a - 1, m, 0)?, self.at(a + 1, m, 0)?]),
        ))
    }

    /// `T_{s+1}^{r+1}(u−1)T_{s+1}^{r+1}(u+1)
    ///  − T_{s+2}^{r+1}(u)(T_s^{r+1}(u) + (−1)^{s+1} g_{s+1}^{r+1}(u) T_{s+1}^r(u)/F²(u+r−s+2))`.
    pub fn follow_up_residual(&self) -> Result<RatExpr<F>, DvfError> {
        let (r, s) = (self.r(), self.s());
        let sign = if (s + 1) % 2 == 0 { 1 } else { -1 };
        let coeff = self.g_mono(r + 1, s + 1, 0).mul(&self.f_mono(2, r as i32 - s as i32 + 2).inv());
        let bracket = RatExpr::Sum(vec![
            self.at(r + 1, s, 0)?,
            RatExpr::Product(vec![self.leaf(&coeff, sign), self.at(r, s + 1, 0)?]),
        ]);
        Ok(RatExpr::sub(
            RatExpr::Product(vec![self.at(r + 1, s + 1, -1)?, self.at(r + 1, s + 1, 1)?]),
            RatExpr::Product(vec![self.at(r + 1, s + 2, 0)?, bracket]),
        ))
    }

    /// Whether `T_m^a` is the zero function.
    pub fn vanishing_check(&self, a: usize, m: usize) -> Result<bool, QArithError> {
        let t = self.get(a, m).map_err(|e| match e {
            DvfError::QArith(q) => q,
            _ => QArithError::PoleAtEvaluationPoint,
        })?;
        if t.is_zero_syntactic() {
            return Ok(true);
        }
        if F::EXACT {
            t.is_identically_zero(self.dvf.field())
        } else {
            Ok(false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dvf::{BetheRootSet, RootSystemConfig};
    use crate::qarith::{QParameter, Rat};

    fn grid(r: i32, s: i32) -> TGrid<Rat> {
        let cfg = RootSystemConfig::distinguished_covariant(r, s).unwrap();
        let rs = BetheRootSet::draw(&QParameter::default(), 1, &vec![1; cfg.colors()], 3);
        TGrid::new(Dvf::new(cfg, rs).unwrap())
    }

    #[test]
    fn boundary_values() {
        let g = grid(1, 0);
        assert!(g.get(0, 3).unwrap().equals(&TermSum::one(), g.dvf().field()).unwrap());
        assert!(g.get(2, 0).unwrap().equals(&TermSum::one(), g.dvf().field()).unwrap());
    }

    #[test]
    fn hirota_at_the_corner() {
        let g = grid(1, 0);
        assert!(g.hirota_residual(1, 1).unwrap().is_identically_zero(g.dvf().field()).unwrap());
    }

    #[test]
    fn wrong_g_breaks_hirota() {
        let g = grid(1, 0);
        let f = g.dvf().field();
        let lhs = RatExpr::Product(vec![g.at(1, 1, -1).unwrap(), g.at(1, 1, 1).unwrap()]);
        let rhs = RatExpr::Product(vec![g.at(1, 2, 0).unwrap(), g.at(1, 0, 0).unwrap()]);
        // dropping the g T^0 T^2 term leaves a non-zero remainder
        assert!(!RatExpr::sub(lhs, rhs).is_identically_zero(f).unwrap());
    }

    #[test]
    fn cache_agrees_with_fresh() {
        let g = grid(0, 1);
        let a = g.get(2, 2).unwrap();
        let b = g.get(2, 2).unwrap();
        assert!(a.same_terms(&b));
        assert!(a.equals(&g.fresh(2, 2).unwrap(), g.dvf().field()).unwrap());
    }

    #[test]
    fn g_identity_small() {
        let g = grid(0, 0);
        for m in 1..=4 {
            assert!(g.g_identity_residual(1, m).is_identically_zero(g.dvf().field()).unwrap());
            assert!(g.g_identity_residual(2, m).is_zero_syntactic());
        }
    }

    #[test]
    fn vanishing_rectangles() {
        let g = grid(1, 0);
        assert!(g.vanishing_check(3, 2).unwrap());
        assert!(!g.vanishing_check(3, 1).unwrap());
        assert!(!g.vanishing_check(2, 5).unwrap());
    }
}
