use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::scalar::{rat, Rat, Scalar};
use super::QArithError;

/// Float atoms closer than this to a zero of the bracket count as vanishing.
pub const FLOAT_VANISH_TOL: f64 = 1e-9;

/// The deformation parameter `q`; generic means not `0` and not `±1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QParameter(Rat);

impl QParameter {
    pub fn new(q: Rat) -> Result<Self, QArithError> {
        let one = Rat::one();
        if q.is_zero() || q == one || q == -one {
            return Err(QArithError::InvalidQ(q.to_string()));
        }
        Ok(QParameter(q))
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }
}

impl Default for QParameter {
    fn default() -> Self {
        QParameter(rat(3, 2))
    }
}

impl fmt::Display for QParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `q` realised in a particular coefficient field, with the bracket normaliser
/// `q - q^{-1}` cached.
#[derive(Clone, Debug)]
pub struct QField<F> {
    q: F,
    qinv: F,
    bracket_den: F,
}

impl<F: Scalar> QField<F> {
    pub fn new(q: &QParameter) -> Self {
        let qv = F::from_rat(q.value());
        let qinv = qv.inv();
        let bracket_den = qv.clone() - qinv.clone();
        QField { q: qv, qinv, bracket_den }
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    /// `q - q^{-1}`
    pub fn bracket_den(&self) -> &F {
        &self.bracket_den
    }

    pub fn qpow(&self, k: i32) -> F {
        if k >= 0 {
            self.q.powi(k)
        } else {
            self.qinv.powi(-k)
        }
    }

    /// Value of the atom with multiplier `m` at `x = q^u`:
    /// `(m x - (m x)^{-1}) / (q - q^{-1})`.
    pub fn bracket_at(&self, m: &F, x: &F) -> F {
        let t = m.clone() * x.clone();
        (t.clone() - t.inv()) / self.bracket_den.clone()
    }

    /// d/dx of the atom with multiplier `m`.
    pub fn bracket_derivative(&self, m: &F, x: &F) -> F {
        let xx = x.clone() * x.clone();
        (m.clone() + (m.clone() * xx).inv()) / self.bracket_den.clone()
    }

    /// The constant bracket `[n]`.
    pub fn bracket_int(&self, n: i32) -> F {
        (self.qpow(n) - self.qpow(-n)) / self.bracket_den.clone()
    }
}

/// One factor `[u + c - u_0]`, stored through its multiplier `m = q^c / q^{u_0}`
/// so that its value at `x = q^u` is `(m x - (m x)^{-1}) / (q - q^{-1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketAtom<F> {
    pub multiplier: F,
}

impl<F: Scalar> BracketAtom<F> {
    pub fn new(multiplier: F) -> Self {
        BracketAtom { multiplier }
    }

    pub fn eval(&self, field: &QField<F>, x: &F) -> F {
        field.bracket_at(&self.multiplier, x)
    }

    /// Whether the atom vanishes at `x` (i.e. `m x = ±1`).
    pub fn vanishes_at(&self, x: &F) -> bool {
        let t = self.multiplier.clone() * x.clone();
        if F::EXACT {
            let one = F::one();
            t == one || t == -one
        } else {
            let one = F::one();
            (t.clone() - one.clone()).modulus() < FLOAT_VANISH_TOL
                || (t + one).modulus() < FLOAT_VANISH_TOL
        }
    }
}

/// A signed product `coeff · ∏ atom^exponent`.
///
/// Canonical form: every multiplier is sign-normalised (`[−v] = −[v]`), atoms
/// are sorted, equal multipliers are merged and zero exponents dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredTerm<F> {
    pub coeff: F,
    atoms: Vec<(BracketAtom<F>, i32)>,
}

impl<F: Scalar> FactoredTerm<F> {
    pub fn constant(coeff: F) -> Self {
        FactoredTerm { coeff, atoms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// A single atom `[m]^exp`.
    pub fn atom(multiplier: F, exp: i32) -> Self {
        Self::from_parts(F::one(), vec![(BracketAtom::new(multiplier), exp)])
    }

    pub fn from_parts(coeff: F, atoms: Vec<(BracketAtom<F>, i32)>) -> Self {
        let mut t = FactoredTerm { coeff, atoms };
        t.canonicalize();
        t
    }

    pub fn atoms(&self) -> &[(BracketAtom<F>, i32)] {
        &self.atoms
    }

    pub fn is_constant(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Total degree in `x`: numerator minus denominator atom count.
    pub fn degree(&self) -> i32 {
        self.atoms.iter().map(|(_, e)| *e).sum()
    }

    fn canonicalize(&mut self) {
        let mut negate = false;
        for (a, e) in self.atoms.iter_mut() {
            if a.multiplier.prefers_negation() {
                a.multiplier = -a.multiplier.clone();
                if *e % 2 != 0 {
                    negate = !negate;
                }
            }
        }
        if negate {
            self.coeff = -self.coeff.clone();
        }
        self.atoms
            .sort_by(|a, b| a.0.multiplier.canonical_cmp(&b.0.multiplier));
        let mut merged: Vec<(BracketAtom<F>, i32)> = Vec::with_capacity(self.atoms.len());
        for (a, e) in self.atoms.drain(..) {
            match merged.last_mut() {
                Some((last, le)) if last.multiplier.same_as(&a.multiplier) => *le += e,
                _ => merged.push((a, e)),
            }
        }
        merged.retain(|(_, e)| *e != 0);
        self.atoms = merged;
    }

    /// Product of two canonical terms (linear merge of the sorted atom lists).
    pub fn mul(&self, other: &Self) -> Self {
        let mut atoms = Vec::with_capacity(self.atoms.len() + other.atoms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.atoms.len() && j < other.atoms.len() {
            let (a, ea) = &self.atoms[i];
            let (b, eb) = &other.atoms[j];
            match a.multiplier.canonical_cmp(&b.multiplier) {
                Ordering::Less => {
                    atoms.push((a.clone(), *ea));
                    i += 1;
                }
                Ordering::Greater => {
                    atoms.push((b.clone(), *eb));
                    j += 1;
                }
                Ordering::Equal => {
                    if ea + eb != 0 {
                        atoms.push((a.clone(), ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        atoms.extend_from_slice(&self.atoms[i..]);
        atoms.extend_from_slice(&other.atoms[j..]);
        FactoredTerm { coeff: self.coeff.clone() * other.coeff.clone(), atoms }
    }

    pub fn pow(&self, e: i32) -> Self {
        FactoredTerm {
            coeff: self.coeff.powi(e),
            atoms: if e == 0 {
                Vec::new()
            } else {
                self.atoms.iter().map(|(a, x)| (a.clone(), x * e)).collect()
            },
        }
    }

    /// Multiplicative inverse; the coefficient must be non-zero.
    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn scale(&self, c: &F) -> Self {
        FactoredTerm { coeff: self.coeff.clone() * c.clone(), atoms: self.atoms.clone() }
    }

    /// `u ↦ u + s`, i.e. every multiplier picks up `q^s`.
    pub fn shifted(&self, field: &QField<F>, s: i32) -> Self {
        if s == 0 {
            return self.clone();
        }
        let qs = field.qpow(s);
        let atoms = self
            .atoms
            .iter()
            .map(|(a, e)| (BracketAtom::new(a.multiplier.clone() * qs.clone()), *e))
            .collect();
        Self::from_parts(self.coeff.clone(), atoms)
    }

    /// `u ↦ c − u`: `[v + u] ↦ [v + c − u] = −[u − c − v]`, so the multiplier
    /// `m` becomes `1/(m q^c)` and each atom contributes a sign.
    pub fn reflected(&self, field: &QField<F>, c: i32) -> Self {
        let qc = field.qpow(c);
        let mut coeff = self.coeff.clone();
        let atoms = self
            .atoms
            .iter()
            .map(|(a, e)| {
                if e % 2 != 0 {
                    coeff = -coeff.clone();
                }
                (BracketAtom::new((a.multiplier.clone() * qc.clone()).inv()), *e)
            })
            .collect();
        Self::from_parts(coeff, atoms)
    }

    pub fn eval(&self, field: &QField<F>, x: &F) -> Result<F, QArithError> {
        let mut acc = self.coeff.clone();
        if acc.is_zero() {
            return Ok(acc);
        }
        let mut den = F::one();
        for (a, e) in &self.atoms {
            let v = a.eval(field, x);
            if *e > 0 {
                acc = acc * v.powi(*e);
            } else {
                if v.is_zero() || a.vanishes_at(x) {
                    return Err(QArithError::PoleAtEvaluationPoint);
                }
                den = den * v.powi(-*e);
            }
        }
        Ok(acc / den)
    }

    /// Limit as `x = q^u → ∞`: `coeff · ∏ (m/(q − q^{-1}))^e` for degree 0.
    pub fn limit_at_infinity(&self, field: &QField<F>) -> Result<F, QArithError> {
        match self.degree().cmp(&0) {
            Ordering::Greater => Err(QArithError::DivergentLimit),
            Ordering::Less => Ok(F::zero()),
            Ordering::Equal => {
                let mut acc = self.coeff.clone();
                for (a, e) in &self.atoms {
                    acc = acc * (a.multiplier.clone() / field.bracket_den().clone()).powi(*e);
                }
                Ok(acc)
            }
        }
    }

    fn cmp_atoms(&self, other: &Self) -> Ordering {
        for ((a, ea), (b, eb)) in self.atoms.iter().zip(other.atoms.iter()) {
            let c = a.multiplier.canonical_cmp(&b.multiplier).then(ea.cmp(eb));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.atoms.len().cmp(&other.atoms.len())
    }

    pub fn same_atoms(&self, other: &Self) -> bool {
        self.cmp_atoms(other) == Ordering::Equal
    }
}

impl FactoredTerm<Rat> {
    pub fn to_complex(&self) -> FactoredTerm<Complex64> {
        FactoredTerm::from_parts(
            self.coeff.to_complex(),
            self.atoms
                .iter()
                .map(|(a, e)| (BracketAtom::new(a.multiplier.to_complex()), *e))
                .collect(),
        )
    }
}

/// A finite sum of factored terms: a rational function of `x = q^u`.
#[derive(Clone, Debug, PartialEq)]
pub struct TermSum<F> {
    terms: Vec<FactoredTerm<F>>,
}

impl<F: Scalar> TermSum<F> {
    pub fn zero() -> Self {
        TermSum { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_terms(vec![FactoredTerm::constant(c)])
    }

    pub fn from_term(t: FactoredTerm<F>) -> Self {
        Self::from_terms(vec![t])
    }

    pub fn from_terms(terms: Vec<FactoredTerm<F>>) -> Self {
        let mut s = TermSum { terms };
        s.canonicalize();
        s
    }

    pub fn terms(&self) -> &[FactoredTerm<F>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Syntactically zero (no surviving terms after canonicalisation).
    pub fn is_zero_syntactic(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of |exponent| over all atoms of all terms.
    pub fn total_atom_count(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.atoms().iter().map(|(_, e)| e.unsigned_abs() as usize).sum::<usize>())
            .sum()
    }

    fn canonicalize(&mut self) {
        self.terms.retain(|t| !t.coeff.is_zero());
        self.terms.sort_by(|a, b| a.cmp_atoms(b));
        let mut merged: Vec<FactoredTerm<F>> = Vec::with_capacity(self.terms.len());
        for t in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last) if last.same_atoms(&t) => {
                    last.coeff = last.coeff.clone() + t.coeff;
                }
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        self.terms = merged;
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::from_terms(terms)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TermSum {
            terms: self
                .terms
                .iter()
                .map(|t| t.scale(&-F::one()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|t| t.scale(c)).collect())
    }

    pub fn mul_term(&self, t: &FactoredTerm<F>) -> Self {
        Self::from_terms(self.terms.iter().map(|s| s.mul(t)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.mul(b));
            }
        }
        Self::from_terms(terms)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `u ↦ u + s`.
    pub fn shift_u(&self, field: &QField<F>, s: i32) -> Self {
        if s == 0 {
            return self.clone();
        }
        Self::from_terms(self.terms.iter().map(|t| t.shifted(field, s)).collect())
    }

    /// `u ↦ c − u`.
    pub fn reflect_u(&self, field: &QField<F>, c: i32) -> Self {
        Self::from_terms(self.terms.iter().map(|t| t.reflected(field, c)).collect())
    }

    pub fn eval(&self, field: &QField<F>, x: &F) -> Result<F, QArithError> {
        if x.is_zero() && self.terms.iter().any(|t| !t.is_constant()) {
            return Err(QArithError::PoleAtEvaluationPoint);
        }
        let mut acc = F::zero();
        for t in &self.terms {
            acc = acc + t.eval(field, x)?;
        }
        Ok(acc)
    }

    /// Residue in the variable `x` at `x0`. Every term may have at most a
    /// simple pole there; terms regular at `x0` contribute nothing.
    pub fn residue_at(&self, field: &QField<F>, x0: &F) -> Result<F, QArithError> {
        let mut acc = F::zero();
        for t in &self.terms {
            acc = acc + term_residue(t, field, x0)?;
        }
        Ok(acc)
    }

    /// Residues of the individual terms (same contract as [`Self::residue_at`]).
    pub fn term_residues(&self, field: &QField<F>, x0: &F) -> Result<Vec<F>, QArithError> {
        self.terms.iter().map(|t| term_residue(t, field, x0)).collect()
    }

    /// Every distinct multiplier that occurs with a negative exponent.
    pub fn denominator_multipliers(&self) -> Vec<F> {
        let mut out: Vec<F> = Vec::new();
        for t in &self.terms {
            for (a, e) in t.atoms() {
                if *e < 0 && !out.iter().any(|m| m.same_as(&a.multiplier)) {
                    out.push(a.multiplier.clone());
                }
            }
        }
        out
    }

    /// Term-multiset equality of two canonical sums (coefficients compared
    /// with [`Scalar::same_as`]).
    pub fn same_terms(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self
                .terms
                .iter()
                .zip(other.terms.iter())
                .all(|(a, b)| a.same_atoms(b) && a.coeff.same_as(&b.coeff))
    }
}

fn term_residue<F: Scalar>(
    t: &FactoredTerm<F>,
    field: &QField<F>,
    x0: &F,
) -> Result<F, QArithError> {
    let mut vanishing: Option<(&BracketAtom<F>, i32)> = None;
    for (a, e) in t.atoms() {
        if a.vanishes_at(x0) {
            if vanishing.is_some() {
                // two distinct canonical atoms cannot share a zero unless parameters collide
                return Err(QArithError::HigherOrderPole);
            }
            vanishing = Some((a, *e));
        }
    }
    match vanishing {
        None => Ok(F::zero()),
        Some((_, e)) if e > 0 => Ok(F::zero()),
        Some((_, e)) if e < -1 => Err(QArithError::HigherOrderPole),
        Some((pole, _)) => {
            let mut acc = t.coeff.clone();
            for (a, e) in t.atoms() {
                if a.multiplier.same_as(&pole.multiplier) {
                    continue;
                }
                acc = acc * a.eval(field, x0).powi(*e);
            }
            Ok(acc / field.bracket_derivative(&pole.multiplier, x0))
        }
    }
}

impl TermSum<Rat> {
    pub fn to_complex(&self) -> TermSum<Complex64> {
        TermSum::from_terms(self.terms.iter().map(|t| t.to_complex()).collect())
    }
}

impl<F: Scalar> From<FactoredTerm<F>> for TermSum<F> {
    fn from(t: FactoredTerm<F>) -> Self {
        TermSum::from_term(t)
    }
}

impl<'a, F: Scalar> Add<&'a TermSum<F>> for &'a TermSum<F> {
    type Output = TermSum<F>;
    fn add(self, rhs: &'a TermSum<F>) -> TermSum<F> {
        TermSum::add(self, rhs)
    }
}

impl<'a, F: Scalar> Sub<&'a TermSum<F>> for &'a TermSum<F> {
    type Output = TermSum<F>;
    fn sub(self, rhs: &'a TermSum<F>) -> TermSum<F> {
        TermSum::sub(self, rhs)
    }
}

impl<'a, F: Scalar> Mul<&'a TermSum<F>> for &'a TermSum<F> {
    type Output = TermSum<F>;
    fn mul(self, rhs: &'a TermSum<F>) -> TermSum<F> {
        TermSum::mul(self, rhs)
    }
}

impl<F: Scalar> Neg for &TermSum<F> {
    type Output = TermSum<F>;
    fn neg(self) -> TermSum<F> {
        TermSum::neg(self)
    }
}

impl<F: Scalar + fmt::Display> fmt::Display for FactoredTerm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)?;
        for (a, e) in &self.atoms {
            write!(f, "·[{}]", a.multiplier)?;
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

impl<F: Scalar + fmt::Display> fmt::Display for TermSum<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", t)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> QField<Rat> {
        QField::new(&QParameter::default())
    }

    #[test]
    fn single_atom_value() {
        let f = field();
        let t = TermSum::from_term(FactoredTerm::atom(Rat::one(), 1));
        assert_eq!(t.eval(&f, &rat(2, 1)).unwrap(), rat(9, 5));
        assert_eq!(t.eval(&f, &Rat::one()).unwrap(), Rat::zero());
    }

    #[test]
    fn empty_sum_is_zero_everywhere() {
        let f = field();
        assert_eq!(TermSum::<Rat>::zero().eval(&f, &rat(7, 3)).unwrap(), Rat::zero());
    }

    #[test]
    fn pole_is_reported() {
        let f = field();
        let t = TermSum::from_term(FactoredTerm::atom(Rat::one(), -1));
        assert_eq!(t.eval(&f, &Rat::one()), Err(QArithError::PoleAtEvaluationPoint));
        assert_eq!(t.eval(&f, &rat(-1, 1)), Err(QArithError::PoleAtEvaluationPoint));
    }

    #[test]
    fn shift_multiplies_by_q_power() {
        let f = field();
        let t = TermSum::from_term(FactoredTerm::atom(Rat::one(), 1));
        let s = t.shift_u(&f, 2);
        assert_eq!(s.terms()[0].atoms()[0].0.multiplier, rat(9, 4));
        assert_eq!(s.shift_u(&f, -2), t);
        let c = TermSum::constant(rat(5, 7));
        assert_eq!(c.shift_u(&f, 5), c);
    }

    #[test]
    fn negative_multipliers_are_folded_into_the_sign() {
        let t = FactoredTerm::atom(rat(-2, 3), 1);
        assert_eq!(t.coeff, rat(-1, 1));
        assert_eq!(t.atoms()[0].0.multiplier, rat(2, 3));
        let f = field();
        let x = rat(5, 1);
        let direct = f.bracket_at(&rat(-2, 3), &x);
        assert_eq!(t.eval(&f, &x).unwrap(), direct);
    }

    #[test]
    fn cancelling_terms_vanish() {
        let t = FactoredTerm::atom(rat(9, 4), 1).mul(&FactoredTerm::atom(Rat::one(), -1));
        let s = TermSum::from_terms(vec![t.clone(), t.scale(&rat(-1, 1))]);
        assert!(s.is_zero_syntactic());
    }

    #[test]
    fn residue_of_inverse_bracket() {
        let f = field();
        let t = TermSum::from_term(FactoredTerm::atom(Rat::one(), -1));
        // (q - 1/q)/2 with q = 3/2
        assert_eq!(t.residue_at(&f, &Rat::one()).unwrap(), rat(5, 12));
        let regular = TermSum::from_term(FactoredTerm::atom(rat(9, 4), -1));
        assert_eq!(regular.residue_at(&f, &Rat::one()).unwrap(), Rat::zero());
        let double = TermSum::from_term(FactoredTerm::atom(Rat::one(), -2));
        assert_eq!(double.residue_at(&f, &Rat::one()), Err(QArithError::HigherOrderPole));
    }

    #[test]
    fn limit_at_infinity_cases() {
        let f = field();
        let q = rat(3, 2);
        // [u+1]/[u-1] -> q^2
        let t = FactoredTerm::atom(q.clone(), 1).mul(&FactoredTerm::atom(q.inv(), -1));
        assert_eq!(t.limit_at_infinity(&f).unwrap(), rat(9, 4));
        assert_eq!(
            FactoredTerm::atom(Rat::one(), 1).limit_at_infinity(&f),
            Err(QArithError::DivergentLimit)
        );
        let vanishing = FactoredTerm::atom(Rat::one(), 1).mul(&FactoredTerm::atom(Rat::one(), -2));
        assert_eq!(vanishing.limit_at_infinity(&f).unwrap(), Rat::zero());
    }

    #[test]
    fn reflection_matches_substitution() {
        let f = field();
        let t = FactoredTerm::atom(rat(7, 5), 1).mul(&FactoredTerm::atom(rat(2, 9), -1));
        let r = t.reflected(&f, 3);
        let x = rat(11, 4);
        let image = f.qpow(3) / x.clone();
        assert_eq!(r.eval(&f, &x).unwrap(), t.eval(&f, &image).unwrap());
    }

    #[test]
    fn invalid_q_rejected() {
        assert!(QParameter::new(Rat::one()).is_err());
        assert!(QParameter::new(rat(-1, 1)).is_err());
        assert!(QParameter::new(Rat::zero()).is_err());
        assert!(QParameter::new(rat(3, 2)).is_ok());
    }
}
