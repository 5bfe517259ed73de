//! Lazy rational expressions over q-bracket sums and the certified zero test.
//!
//! Every expression is a rational function of `x = q^u` whose denominator is
//! a product of brackets. [`DegreeBound`] tracks an upper bound for the
//! bracket multiplicities in that denominator together with the exponent range
//! of the numerator Laurent polynomial obtained by clearing them. A numerator
//! supported on `[lo, hi]` that vanishes at `hi - lo + 1` distinct non-zero
//! points (about half that when only one parity of exponent occurs) is the
//! zero polynomial, which turns exact evaluation into a proof.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::sync::Arc;

use super::laurent::Laurent;
use super::scalar::Scalar;
use super::term::{FactoredTerm, QField, TermSum};
use super::QArithError;

/// Spans up to this size are decided by expanding the numerator symbolically.
const SYMBOLIC_SPAN_LIMIT: i64 = 48;

/// Determinants up to this size get a bound taken over their permutation expansion.
const LEIBNIZ_BOUND_LIMIT: usize = 7;

/// A function of `x` that is cheaper to evaluate pointwise than to expand.
pub trait LazyFunction<F>: Debug + Send + Sync {
    fn eval(&self, field: &QField<F>, x: &F) -> Result<F, QArithError>;

    /// Same contract as [`RatExpr::bound`].
    fn bound(&self) -> Option<DegreeBound<F>>;

    /// Multipliers of every bracket the function may divide by.
    fn atoms(&self) -> Vec<F>;
}

#[derive(Clone, Debug)]
pub enum RatExpr<F> {
    Leaf(TermSum<F>),
    Sum(Vec<RatExpr<F>>),
    Product(Vec<RatExpr<F>>),
    Scale(F, Box<RatExpr<F>>),
    /// Determinant of a square matrix of sub-expressions.
    Det(Vec<Vec<RatExpr<F>>>),
    Lazy(Arc<dyn LazyFunction<F>>),
}

impl<F: Scalar> From<TermSum<F>> for RatExpr<F> {
    fn from(t: TermSum<F>) -> Self {
        RatExpr::Leaf(t)
    }
}

impl<F: Scalar> RatExpr<F> {
    pub fn sub(a: RatExpr<F>, b: RatExpr<F>) -> Self {
        RatExpr::Sum(vec![a, RatExpr::Scale(-F::one(), Box::new(b))])
    }

    pub fn scaled(self, c: F) -> Self {
        RatExpr::Scale(c, Box::new(self))
    }

    /// Direct evaluation (no atom caching).
    pub fn eval(&self, field: &QField<F>, x: &F) -> Result<F, QArithError> {
        Ok(match self {
            RatExpr::Leaf(t) => t.eval(field, x)?,
            RatExpr::Sum(v) => {
                let mut acc = F::zero();
                for e in v {
                    acc = acc + e.eval(field, x)?;
                }
                acc
            }
            RatExpr::Product(v) => {
                let mut acc = F::one();
                for e in v {
                    acc = acc * e.eval(field, x)?;
                }
                acc
            }
            RatExpr::Scale(c, e) => c.clone() * e.eval(field, x)?,
            RatExpr::Det(rows) => {
                let mut m = Vec::with_capacity(rows.len());
                for row in rows {
                    let mut r = Vec::with_capacity(row.len());
                    for e in row {
                        r.push(e.eval(field, x)?);
                    }
                    m.push(r);
                }
                determinant(m)
            }
            RatExpr::Lazy(f) => f.eval(field, x)?,
        })
    }

    /// Degree bound, or `None` when the expression is structurally zero.
    pub fn bound(&self) -> Option<DegreeBound<F>> {
        match self {
            RatExpr::Leaf(t) => DegreeBound::of_sum(t),
            RatExpr::Scale(c, e) => {
                if c.is_zero() {
                    None
                } else {
                    e.bound()
                }
            }
            RatExpr::Sum(v) => DegreeBound::sum(v.iter().filter_map(|e| e.bound()).collect()),
            RatExpr::Product(v) => {
                let mut acc = DegreeBound::constant();
                for e in v {
                    acc = acc.product(&e.bound()?);
                }
                Some(acc)
            }
            RatExpr::Det(rows) => {
                if rows.is_empty() {
                    return Some(DegreeBound::constant());
                }
                let entries: Vec<Vec<Option<DegreeBound<F>>>> =
                    rows.iter().map(|r| r.iter().map(|e| e.bound()).collect()).collect();
                if rows.len() <= LEIBNIZ_BOUND_LIMIT {
                    // one bound per permutation with no structurally zero entry
                    let mut terms = Vec::new();
                    leibniz_bounds(&entries, 0, 0, DegreeBound::constant(), &mut terms);
                    return DegreeBound::sum(terms);
                }
                let mut acc = DegreeBound::constant();
                for row in entries {
                    acc = acc.product(&DegreeBound::sum(row.into_iter().flatten().collect())?);
                }
                Some(acc)
            }
            RatExpr::Lazy(f) => f.bound(),
        }
    }

    fn collect_atoms(&self, out: &mut Vec<F>) {
        match self {
            RatExpr::Leaf(t) => {
                for term in t.terms() {
                    for (a, _) in term.atoms() {
                        out.push(a.multiplier.clone());
                    }
                }
            }
            RatExpr::Sum(v) | RatExpr::Product(v) => v.iter().for_each(|e| e.collect_atoms(out)),
            RatExpr::Scale(_, e) => e.collect_atoms(out),
            RatExpr::Det(rows) => rows.iter().flatten().for_each(|e| e.collect_atoms(out)),
            RatExpr::Lazy(f) => out.extend(f.atoms()),
        }
    }

    fn compile(&self, table: &AtomTable<F>) -> Node<F> {
        match self {
            RatExpr::Leaf(t) => Node::Leaf(
                t.terms()
                    .iter()
                    .map(|term| {
                        let atoms = term
                            .atoms()
                            .iter()
                            .map(|(a, e)| (table.index(&a.multiplier), *e))
                            .collect();
                        (term.coeff.clone(), atoms)
                    })
                    .collect(),
            ),
            RatExpr::Sum(v) => Node::Sum(v.iter().map(|e| e.compile(table)).collect()),
            RatExpr::Product(v) => Node::Product(v.iter().map(|e| e.compile(table)).collect()),
            RatExpr::Scale(c, e) => Node::Scale(c.clone(), Box::new(e.compile(table))),
            RatExpr::Det(rows) => Node::Det(
                rows.iter()
                    .map(|row| row.iter().map(|e| e.compile(table)).collect())
                    .collect(),
            ),
            RatExpr::Lazy(f) => Node::Lazy(f.clone()),
        }
    }

    /// Decides whether the expression is the zero rational function.
    ///
    /// Requires an exact field. Evaluation stops at the first non-zero value,
    /// so non-identities are usually rejected after one point.
    pub fn is_identically_zero(&self, field: &QField<F>) -> Result<bool, QArithError> {
        Ok(self.certify_zero(field)?.is_zero)
    }

    pub fn certify_zero(&self, field: &QField<F>) -> Result<ZeroCertificate, QArithError> {
        if !F::EXACT {
            return Err(QArithError::InexactField);
        }
        let bound = match self.bound() {
            None => return Ok(ZeroCertificate { is_zero: true, points: 0, span: 0 }),
            Some(b) => b,
        };
        let span = bound.points_needed();
        let mut atoms = Vec::new();
        self.collect_atoms(&mut atoms);
        let table = AtomTable::new(atoms);
        let node = self.compile(&table);
        let mut points = 0usize;
        let mut k: i64 = 2;
        while (points as i64) < span {
            let x = F::from_i64(k);
            k += 1;
            if table.atoms.iter().any(|m| super::term::BracketAtom::new(m.clone()).vanishes_at(&x)) {
                continue;
            }
            let vals: Vec<F> = table.atoms.iter().map(|m| field.bracket_at(m, &x)).collect();
            let v = node.eval(field, &x, &vals)?;
            points += 1;
            if !v.is_zero() {
                return Ok(ZeroCertificate { is_zero: false, points, span });
            }
        }
        Ok(ZeroCertificate { is_zero: true, points, span })
    }
}

fn leibniz_bounds<F: Scalar>(
    entries: &[Vec<Option<DegreeBound<F>>>],
    row: usize,
    used: u64,
    acc: DegreeBound<F>,
    out: &mut Vec<DegreeBound<F>>,
) {
    if row == entries.len() {
        out.push(acc);
        return;
    }
    for (col, b) in entries[row].iter().enumerate() {
        if used & (1 << col) != 0 {
            continue;
        }
        if let Some(b) = b {
            leibniz_bounds(entries, row + 1, used | (1 << col), acc.product(b), out);
        }
    }
}

/// Outcome of [`RatExpr::certify_zero`]: `points` exact evaluations were made
/// against a numerator span of `span`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroCertificate {
    pub is_zero: bool,
    pub points: usize,
    pub span: i64,
}

struct AtomTable<F> {
    atoms: Vec<F>,
}

impl<F: Scalar> AtomTable<F> {
    fn new(mut atoms: Vec<F>) -> Self {
        atoms.sort_by(|a, b| a.canonical_cmp(b));
        atoms.dedup_by(|a, b| a.same_as(b));
        AtomTable { atoms }
    }

    fn index(&self, m: &F) -> usize {
        match self.atoms.binary_search_by(|a| a.canonical_cmp(m)) {
            Ok(i) => i,
            // float ordering can disagree with merging by a hair; fall back to a scan
            Err(_) => self.atoms.iter().position(|a| a.same_as(m)).expect("atom registered"),
        }
    }
}

enum Node<F> {
    Leaf(Vec<(F, Vec<(usize, i32)>)>),
    Sum(Vec<Node<F>>),
    Product(Vec<Node<F>>),
    Scale(F, Box<Node<F>>),
    Det(Vec<Vec<Node<F>>>),
    Lazy(Arc<dyn LazyFunction<F>>),
}

impl<F: Scalar> Node<F> {
    fn eval(&self, field: &QField<F>, x: &F, vals: &[F]) -> Result<F, QArithError> {
        Ok(match self {
            Node::Leaf(terms) => {
                let mut acc = F::zero();
                for (c, atoms) in terms {
                    let v = F::monomial_value(c, atoms.iter().map(|(i, e)| (&vals[*i], *e)))
                        .ok_or(QArithError::PoleAtEvaluationPoint)?;
                    acc = acc + v;
                }
                acc
            }
            Node::Sum(v) => {
                let mut acc = F::zero();
                for e in v {
                    acc = acc + e.eval(field, x, vals)?;
                }
                acc
            }
            Node::Product(v) => {
                let mut acc = F::one();
                for e in v {
                    acc = acc * e.eval(field, x, vals)?;
                    if acc.is_zero() {
                        break;
                    }
                }
                acc
            }
            Node::Scale(c, e) => c.clone() * e.eval(field, x, vals)?,
            Node::Det(rows) => {
                let mut m = Vec::with_capacity(rows.len());
                for row in rows {
                    let mut r = Vec::with_capacity(row.len());
                    for e in row {
                        r.push(e.eval(field, x, vals)?);
                    }
                    m.push(r);
                }
                determinant(m)
            }
            Node::Lazy(f) => f.eval(field, x)?,
        })
    }
}

/// Determinant by Gaussian elimination (largest-modulus pivot).
pub fn determinant<F: Scalar>(mut m: Vec<Vec<F>>) -> F {
    let n = m.len();
    let mut det = F::one();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !m[r][col].is_zero())
            .max_by(|&a, &b| {
                m[a][col]
                    .modulus()
                    .partial_cmp(&m[b][col].modulus())
                    .unwrap_or(Ordering::Equal)
            });
        let p = match pivot {
            None => return F::zero(),
            Some(p) => p,
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pv = m[col][col].clone();
        det = det * pv.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() / pv.clone();
            for c in col + 1..n {
                let sub = f.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - sub;
            }
        }
    }
    det
}

/// Upper bound for the shape of a rational function of `x`.
///
/// `den` lists bracket multipliers with the maximal multiplicity they can have
/// in the denominator; multiplying the function by
/// `∏ (m² x² − 1)^{mult}` leaves a Laurent polynomial supported on `[lo, hi]`.
///
/// When every term has total degree of one parity the cleared numerator is
/// `x^lo` times a polynomial in `x²`, which halves the work; `parity` records
/// that case.
#[derive(Clone, Debug)]
pub struct DegreeBound<F> {
    pub den: Vec<(F, u32)>,
    pub lo: i64,
    pub hi: i64,
    pub parity: Option<u8>,
}

impl<F: Scalar> DegreeBound<F> {
    pub fn constant() -> Self {
        DegreeBound { den: Vec::new(), lo: 0, hi: 0, parity: Some(0) }
    }

    fn of_term(t: &FactoredTerm<F>) -> Self {
        let mut den = Vec::new();
        let mut e_sum: i64 = 0;
        let mut pos: i64 = 0;
        for (a, e) in t.atoms() {
            e_sum += *e as i64;
            if *e < 0 {
                den.push((a.multiplier.clone(), (-*e) as u32));
            } else {
                pos += *e as i64;
            }
        }
        // each atom is (m² x² − 1) / (m x (q − 1/q))
        DegreeBound { den, lo: -e_sum, hi: -e_sum + 2 * pos, parity: Some(e_sum.rem_euclid(2) as u8) }
    }

    pub fn of_sum(t: &TermSum<F>) -> Option<Self> {
        Self::sum(t.terms().iter().map(Self::of_term).collect())
    }

    pub fn mult(&self, m: &F) -> u32 {
        self.den
            .iter()
            .find(|(a, _)| a.same_as(m))
            .map_or(0, |(_, k)| *k)
    }

    /// Bound for a sum: lift every summand to the common denominator.
    pub fn sum(parts: Vec<Self>) -> Option<Self> {
        if parts.is_empty() {
            return None;
        }
        let mut den: Vec<(F, u32)> = Vec::new();
        for p in &parts {
            for (m, k) in &p.den {
                match den.iter_mut().find(|(a, _)| a.same_as(m)) {
                    Some((_, kk)) => *kk = (*kk).max(*k),
                    None => den.push((m.clone(), *k)),
                }
            }
        }
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        let mut parity = parts[0].parity;
        for p in &parts {
            let lift: i64 = den.iter().map(|(m, k)| (*k - p.mult(m)) as i64).sum();
            lo = lo.min(p.lo);
            hi = hi.max(p.hi + 2 * lift);
            if p.parity != parity {
                parity = None;
            }
        }
        Some(DegreeBound { den, lo, hi, parity })
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        for (m, k) in &other.den {
            match den.iter_mut().find(|(a, _)| a.same_as(m)) {
                Some((_, kk)) => *kk += *k,
                None => den.push((m.clone(), *k)),
            }
        }
        let parity = match (self.parity, other.parity) {
            (Some(a), Some(b)) => Some((a + b) % 2),
            _ => None,
        };
        DegreeBound { den, lo: self.lo + other.lo, hi: self.hi + other.hi, parity }
    }

    /// Width of the exponent range of the cleared numerator.
    pub fn span(&self) -> i64 {
        self.hi - self.lo + 1
    }

    /// Number of distinct positive evaluation points that decide the zero test.
    pub fn points_needed(&self) -> i64 {
        match self.parity {
            Some(_) => (self.hi - self.lo) / 2 + 1,
            None => self.span(),
        }
    }
}

impl<F: Scalar> TermSum<F> {
    /// Numerator Laurent polynomial after clearing the bracket denominators of
    /// `bound` (which must dominate this sum's denominators).
    pub fn numerator_laurent(&self, field: &QField<F>, bound: &DegreeBound<F>) -> Laurent<F> {
        let mut acc = Laurent::zero();
        for t in self.terms() {
            let mut e_sum: i64 = 0;
            let mut c = t.coeff.clone();
            let mut poly = Laurent::monomial(F::one(), 0);
            let mut seen: Vec<&F> = Vec::new();
            for (a, e) in t.atoms() {
                let m = &a.multiplier;
                e_sum += *e as i64;
                c = c * (m.clone() * field.bracket_den().clone()).powi(-*e);
                let k = *e as i64 + bound.mult(m) as i64;
                debug_assert!(k >= 0);
                poly = poly.mul(&bracket_poly(m).pow(k as u32));
                seen.push(m);
            }
            for (m, k) in &bound.den {
                if !seen.iter().any(|s| s.same_as(m)) {
                    poly = poly.mul(&bracket_poly(m).pow(*k));
                }
            }
            acc = acc.add(&poly.mul(&Laurent::monomial(c, -e_sum)));
        }
        acc
    }

    /// Whether `self − other` is the zero rational function (exact fields only).
    ///
    /// Small differences are decided by expanding the cleared numerator; large
    /// ones by the evaluation certificate of [`RatExpr::certify_zero`].
    pub fn equals(&self, other: &Self, field: &QField<F>) -> Result<bool, QArithError> {
        if !F::EXACT {
            return Err(QArithError::InexactField);
        }
        let diff = self.sub(other);
        let bound = match DegreeBound::of_sum(&diff) {
            None => return Ok(true),
            Some(b) => b,
        };
        if bound.span() <= SYMBOLIC_SPAN_LIMIT {
            return Ok(diff.numerator_laurent(field, &bound).is_zero());
        }
        RatExpr::Leaf(diff).is_identically_zero(field)
    }

    /// Zero test of a single sum; see [`Self::equals`].
    pub fn is_identically_zero(&self, field: &QField<F>) -> Result<bool, QArithError> {
        self.equals(&TermSum::zero(), field)
    }

    /// Float comparison at `samples` fixed points on a circle `|x| = 1.3`;
    /// the error is measured relative to `max(1, |f|, |g|)`.
    pub fn approx_equals(
        &self,
        other: &Self,
        field: &QField<F>,
        tol: f64,
        samples: usize,
    ) -> Result<bool, QArithError> {
        Ok(self.max_relative_deviation(other, field, samples)? <= tol)
    }

    pub fn max_relative_deviation(
        &self,
        other: &Self,
        field: &QField<F>,
        samples: usize,
    ) -> Result<f64, QArithError>
    where
        F: Scalar,
    {
        let mut worst: f64 = 0.0;
        for k in 0..samples {
            let x = sample_point::<F>(k);
            let a = self.eval(field, &x)?;
            let b = other.eval(field, &x)?;
            let scale = 1f64.max(a.modulus()).max(b.modulus());
            worst = worst.max((a - b).modulus() / scale);
        }
        Ok(worst)
    }
}

/// Deterministic sample points for float comparisons: non-real points when
/// the field allows, otherwise rationals in `(1, 3)`.
fn sample_point<F: Scalar>(k: usize) -> F {
    let p = F::from_rat(&super::scalar::rat(13 + 7 * k as i64, 10 + k as i64));
    if F::EXACT {
        return p;
    }
    // rotate off the real axis with a Pythagorean-free phase
    let c = num_complex::Complex64::from_polar(1.3 + 0.05 * k as f64, 0.37 + 0.91 * k as f64);
    F::from_complex(c).unwrap_or(p)
}

/// `m² x² − 1`
fn bracket_poly<F: Scalar>(m: &F) -> Laurent<F> {
    Laurent::from_coeffs(0, vec![-F::one(), F::zero(), m.clone() * m.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::scalar::{rat, Rat};
    use crate::qarith::term::{FactoredTerm, QParameter};
    use num_traits::One;

    fn field() -> QField<Rat> {
        QField::new(&QParameter::default())
    }

    fn atom(m: Rat) -> TermSum<Rat> {
        TermSum::from_term(FactoredTerm::atom(m, 1))
    }

    #[test]
    fn product_equals_its_expansion() {
        // [u+1][u-1] = [u]^2 - [1]^2
        let f = field();
        let q = rat(3, 2);
        let lhs = atom(q.clone()).mul(&atom(q.inv()));
        let u = atom(Rat::one());
        let rhs = u.mul(&u).sub(&TermSum::constant(Rat::one()));
        assert!(lhs.equals(&rhs, &f).unwrap());
        assert!(!atom(Rat::one()).equals(&atom(q.powi(2)), &f).unwrap());
    }

    #[test]
    fn certificate_agrees_with_symbolic_path() {
        let f = field();
        let q = rat(3, 2);
        let lhs = atom(q.clone()).mul(&atom(q.inv()));
        let u = atom(Rat::one());
        let rhs = u.mul(&u).sub(&TermSum::constant(Rat::one()));
        let cert = RatExpr::sub(lhs.clone().into(), rhs.into()).certify_zero(&f).unwrap();
        assert!(cert.is_zero);
        assert_eq!(cert.points as i64, cert.span);
        let wrong = RatExpr::sub(lhs.into(), u.into()).certify_zero(&f).unwrap();
        assert!(!wrong.is_zero);
    }

    #[test]
    fn float_equality_is_refused() {
        let f: QField<num_complex::Complex64> = QField::new(&QParameter::default());
        let one = TermSum::constant(num_complex::Complex64::new(1.0, 0.0));
        assert_eq!(one.equals(&one, &f), Err(QArithError::InexactField));
        assert!(one.approx_equals(&one, &f, 1e-12, 4).unwrap());
    }

    #[test]
    fn determinant_of_small_matrices() {
        let m = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(1, 1), rat(3, 1)]];
        assert_eq!(determinant(m), rat(5, 1));
        let singular = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]];
        assert_eq!(determinant(singular), rat(0, 1));
        let perm = vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]];
        assert_eq!(determinant(perm), rat(-1, 1));
    }

    #[test]
    fn lazy_determinant_identity() {
        // det [[a, b], [c, d]] - (a d - b c) for bracket sums
        let f = field();
        let a = atom(rat(2, 1)).add(&atom(rat(5, 7)));
        let b = TermSum::from_term(FactoredTerm::atom(rat(3, 1), -1));
        let c = atom(rat(4, 9));
        let d = TermSum::from_term(FactoredTerm::atom(rat(11, 3), 2));
        let expanded = a.mul(&d).sub(&b.mul(&c));
        let det = RatExpr::Det(vec![
            vec![a.into(), b.into()],
            vec![c.into(), d.into()],
        ]);
        assert!(RatExpr::sub(det.clone(), expanded.clone().into()).is_identically_zero(&f).unwrap());
        let off = expanded.add(&TermSum::constant(rat(1, 1000)));
        assert!(!RatExpr::sub(det, off.into()).is_identically_zero(&f).unwrap());
    }
}
