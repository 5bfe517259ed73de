use super::scalar::Scalar;

/// A Laurent polynomial `Σ_{k=lo}^{lo+len-1} c_k x^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<F> {
    lo: i64,
    coeffs: Vec<F>,
}

impl<F: Scalar> Laurent<F> {
    pub fn zero() -> Self {
        Laurent { lo: 0, coeffs: Vec::new() }
    }

    pub fn monomial(c: F, k: i64) -> Self {
        Laurent { lo: k, coeffs: vec![c] }.trimmed()
    }

    /// `Σ coeffs[i] x^{lo+i}`
    pub fn from_coeffs(lo: i64, coeffs: Vec<F>) -> Self {
        Laurent { lo, coeffs }.trimmed()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a non-zero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.lo
    }

    pub fn high(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, k: i64) -> F {
        let i = k - self.lo;
        if i < 0 || i >= self.coeffs.len() as i64 {
            F::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    fn trimmed(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            return Self::zero();
        }
        self.coeffs.drain(..lead);
        self.lo += lead as i64;
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.high().max(other.high());
        let coeffs = (lo..=hi).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::from_coeffs(lo, coeffs)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_coeffs(self.lo, self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(self.lo + other.lo, coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::monomial(F::one(), 0);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc * x.powi(self.lo as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::scalar::{rat, Rat};

    #[test]
    fn product_of_binomials() {
        // (x - 1)(x + 1) = x^2 - 1
        let a = Laurent::from_coeffs(0, vec![rat(-1, 1), rat(1, 1)]);
        let b = Laurent::from_coeffs(0, vec![rat(1, 1), rat(1, 1)]);
        let p = a.mul(&b);
        assert_eq!(p, Laurent::from_coeffs(0, vec![rat(-1, 1), Rat::from_integer(0.into()), rat(1, 1)]));
    }

    #[test]
    fn cancellation_trims_to_zero() {
        let a = Laurent::from_coeffs(-2, vec![rat(1, 1), rat(3, 1)]);
        assert!(a.add(&a.scale(&rat(-1, 1))).is_zero());
    }

    #[test]
    fn negative_powers_evaluate() {
        let a = Laurent::from_coeffs(-1, vec![rat(1, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(a.eval(&rat(2, 1)), rat(5, 2));
        assert_eq!(a.low(), -1);
        assert_eq!(a.high(), 1);
    }
}
