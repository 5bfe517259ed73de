//! Integer-coefficient sums of bracket monomials keyed by (parameter, shift).
//!
//! Every dressed-vacuum function is a signed sum of products of brackets
//! `[u + c − u_p]` where `u_p` is one of the finitely many parameters of a
//! [`BetheRootSet`](super::BetheRootSet). Keeping the parameter index and the
//! shift symbolic makes products, shifts and merging cheap; values only enter
//! when converting to a [`TermSum`].

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::qarith::{BracketAtom, FactoredTerm, Scalar, TermSum};

/// The bracket `[u + shift − u_param]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomKey {
    pub param: u16,
    pub shift: i32,
}

/// A product `∏ atom^exp`, sorted by key with non-zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(AtomKey, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn atom(key: AtomKey, exp: i32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        Monomial(vec![(key, exp)])
    }

    pub fn factors(&self) -> &[(AtomKey, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|(_, e)| *e as i64).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if other.0.is_empty() {
            return self.clone();
        }
        if self.0.is_empty() {
            return other.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, e: i32) -> Self {
        if e == 0 {
            return Self::one();
        }
        Monomial(self.0.iter().map(|(k, x)| (*k, x * e)).collect())
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    /// `u ↦ u + s`
    pub fn shifted(&self, s: i32) -> Self {
        Monomial(
            self.0
                .iter()
                .map(|(k, e)| (AtomKey { param: k.param, shift: k.shift + s }, *e))
                .collect(),
        )
    }

    pub fn exponent(&self, key: &AtomKey) -> i32 {
        self.0
            .binary_search_by(|(k, _)| k.cmp(key))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn to_term<F: Scalar>(&self, coeff: F, values: &impl Fn(&AtomKey) -> F) -> FactoredTerm<F> {
        FactoredTerm::from_parts(
            coeff,
            self.0.iter().map(|(k, e)| (BracketAtom::new(values(k)), *e)).collect(),
        )
    }
}

/// `Σ coeff · monomial` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymSum {
    terms: HashMap<Monomial, i64>,
}

impl SymSum {
    pub fn zero() -> Self {
        SymSum::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one(), 1)
    }

    pub fn monomial(m: Monomial, coeff: i64) -> Self {
        let mut s = SymSum::zero();
        s.add_term(m, coeff);
        s
    }

    pub fn add_term(&mut self, m: Monomial, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &i64)> {
        self.terms.iter()
    }

    pub fn add_assign(&mut self, other: &SymSum) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), *c);
        }
    }

    pub fn add(&self, other: &SymSum) -> SymSum {
        let mut s = self.clone();
        s.add_assign(other);
        s
    }

    pub fn sub(&self, other: &SymSum) -> SymSum {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> SymSum {
        if c == 0 {
            return SymSum::zero();
        }
        SymSum { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: i64) -> SymSum {
        let mut out = SymSum::zero();
        for (n, k) in &self.terms {
            out.add_term(n.mul(m), k * c);
        }
        out
    }

    pub fn mul(&self, other: &SymSum) -> SymSum {
        let mut out = SymSum::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    pub fn shifted(&self, s: i32) -> SymSum {
        if s == 0 {
            return self.clone();
        }
        SymSum { terms: self.terms.iter().map(|(m, c)| (m.shifted(s), *c)).collect() }
    }

    /// Converts to a canonical [`TermSum`]; `values` maps an atom key to its
    /// multiplier `q^shift / y_param`.
    pub fn to_term_sum<F: Scalar>(&self, values: &impl Fn(&AtomKey) -> F) -> TermSum<F> {
        TermSum::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| m.to_term(F::from_i64(*c), values))
                .collect(),
        )
    }

    /// Evaluates at `x` given a cache of atom values.
    pub fn eval_with<F: Scalar>(&self, atom_value: &mut impl FnMut(&AtomKey) -> F) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut num = F::from_i64(*c);
            let mut den = F::one();
            for (k, e) in m.factors() {
                let v = atom_value(k);
                if *e > 0 {
                    num = num * v.powi(*e);
                } else {
                    den = den * v.powi(-*e);
                }
            }
            acc = acc + num / den;
        }
        acc
    }
}
