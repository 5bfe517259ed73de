use std::collections::HashMap;
use std::sync::Arc;

use crate::diagrams::{kac_dynkin_covariant, Partition, SkewShape};
use crate::qarith::{DegreeBound, FactoredTerm, QField, RatExpr, Scalar, TermSum};
use crate::tableaux::{for_each_filling, top_tableau};

use super::lazy::{SeriesCoefficient, TableauSum};
use super::sym::{AtomKey, Monomial, SymSum};
use super::{BetheRootSet, DvfError, RootSystemConfig};

/// Largest determinant expanded symbolically.
pub const MAX_EXPANDED_DET: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    /// `T^a`, the single column `(1^a)`.
    Column,
    /// `T_m`, the single row `(m)`.
    Row,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    /// Size `μ_1`, entries `T^a`.
    Column,
    /// Size `μ'_1`, entries `T_m`.
    Row,
}

/// One factor `(1 + c·z X)^{±1}` of a generating series.
#[derive(Clone, Debug)]
pub(crate) struct SeriesFactor {
    pub z: Monomial,
    pub c: i64,
    pub inverse: bool,
}

/// Coefficients `0..=order` of a product of factors in the shift operator
/// `X`, with `X f(u) = f(u+2) X`.
pub(crate) fn expand_series(factors: &[SeriesFactor], order: usize) -> Vec<SymSum> {
    let mut acc: Vec<SymSum> = vec![SymSum::zero(); order + 1];
    acc[0] = SymSum::one();
    for f in factors {
        let fc: Vec<SymSum> = if f.inverse {
            // Σ_k (−c)^k z(u) z(u+2) … z(u+2k−2) X^k
            let mut out = Vec::with_capacity(order + 1);
            let mut run = Monomial::one();
            let mut sign = 1i64;
            for k in 0..=order {
                out.push(SymSum::monomial(run.clone(), sign));
                run = run.mul(&f.z.shifted(2 * k as i32));
                sign *= -f.c;
            }
            out
        } else {
            let mut out = vec![SymSum::zero(); order + 1];
            out[0] = SymSum::one();
            if order >= 1 {
                out[1] = SymSum::monomial(f.z.clone(), f.c);
            }
            out
        };
        let mut next = vec![SymSum::zero(); order + 1];
        for (k, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (l, b) in fc.iter().enumerate().take(order + 1 - k) {
                if b.is_zero() {
                    continue;
                }
                next[k + l].add_assign(&a.mul(&b.shifted(2 * k as i32)));
            }
        }
        acc = next;
    }
    acc
}

/// Functions of one preset evaluated on one parameter set.
#[derive(Clone, Debug)]
pub struct Dvf<F> {
    cfg: RootSystemConfig,
    rs: BetheRootSet<F>,
    field: QField<F>,
}

impl<F: Scalar> Dvf<F> {
    pub fn new(cfg: RootSystemConfig, rs: BetheRootSet<F>) -> Result<Self, DvfError> {
        if rs.colors() != cfg.colors() {
            return Err(DvfError::ColorMismatch { expected: cfg.colors(), found: rs.colors() });
        }
        let field = QField::new(&rs.q);
        Ok(Dvf { cfg, rs, field })
    }

    pub fn cfg(&self) -> &RootSystemConfig {
        &self.cfg
    }

    pub fn roots(&self) -> &BetheRootSet<F> {
        &self.rs
    }

    pub fn field(&self) -> &QField<F> {
        &self.field
    }

    /// Multiplier `q^shift / y` of an atom.
    pub fn multiplier(&self, key: &AtomKey) -> F {
        self.field.qpow(key.shift) / self.rs.param_value(key.param).clone()
    }

    pub fn to_terms(&self, s: &SymSum) -> TermSum<F> {
        s.to_term_sum(&|k: &AtomKey| self.multiplier(k))
    }

    pub fn monomial_to_terms(&self, m: &Monomial, coeff: i64) -> TermSum<F> {
        self.to_terms(&SymSum::monomial(m.clone(), coeff))
    }

    // ---- monomial building blocks ----

    /// `P(u + shift) = ∏_j [u + shift − w_j]`.
    pub fn p_mono(&self, shift: i32) -> Monomial {
        let mut m = Monomial::one();
        for j in 0..self.rs.n_sites() {
            m = m.mul(&Monomial::atom(AtomKey { param: self.rs.site_param(j), shift }, 1));
        }
        m
    }

    /// `Q_color(u + shift)`; the boundary colors give 1.
    pub fn q_mono(&self, color: i32, shift: i32) -> Monomial {
        if color < 1 || color as usize > self.cfg.colors() {
            return Monomial::one();
        }
        let mut m = Monomial::one();
        for k in 0..self.rs.count(color) {
            m = m.mul(&Monomial::atom(AtomKey { param: self.rs.root_param(color, k), shift }, 1));
        }
        m
    }

    /// `z(a; u + shift)`.
    pub fn z_mono(&self, label: i32, shift: i32) -> Result<Monomial, DvfError> {
        let spec = self.cfg.box_spec(label)?;
        let mut m = self.p_mono(shift + spec.psi_shift);
        for q in &spec.ratios {
            m = m
                .mul(&self.q_mono(q.color, shift + q.num))
                .mul(&self.q_mono(q.color, shift + q.den).inv());
        }
        Ok(m)
    }

    /// `(−1)^{p(a)}`
    pub fn sign(&self, label: i32) -> Result<i64, DvfError> {
        Ok(if self.cfg.parity(label)? == 0 { 1 } else { -1 })
    }

    /// `F^a(u + shift)`; `None` is the zero function (`a < 0`).
    pub fn f_mono(&self, a: i64, shift: i32) -> Option<Monomial> {
        match a {
            a if a < 0 => None,
            0 => Some(self.p_mono(shift - 1).inv()),
            1 => Some(Monomial::one()),
            a => {
                let a = a as i32;
                let mut m = Monomial::one();
                for j in 1..a {
                    m = m.mul(&self.p_mono(shift - 2 * j + a - 1));
                }
                Some(m)
            }
        }
    }

    /// `F_{λ⊂μ}(u)`.
    pub fn normalizer_mono(&self, shape: &SkewShape) -> Result<Monomial, DvfError> {
        let mu1 = shape.width() as i32;
        let h = shape.height() as i64;
        let mut m = Monomial::one();
        for j in 1..=shape.width() {
            let mc = shape.outer_conj().part(j) as i64;
            let lc = shape.inner_conj().part(j) as i64;
            let shift = (h - mu1 as i64 - mc - lc + 2 * j as i64 - 1) as i32;
            let f = self.f_mono(mc - lc, shift).ok_or(DvfError::VanishingNormalizer)?;
            m = m.mul(&f);
        }
        Ok(m)
    }

    /// Argument shift of cell `(i, j)`: `−μ_1 + μ'_1 − 2i + 2j`.
    pub fn cell_shift(shape: &SkewShape, i: usize, j: usize) -> i32 {
        shape.height() as i32 - shape.width() as i32 - 2 * i as i32 + 2 * j as i32
    }

    /// Signed weight `(−1)^{p(b)} z(b; …)` for every cell and label rank.
    pub(crate) fn cell_weights(&self, shape: &SkewShape) -> Result<Vec<Vec<(Monomial, i64)>>, DvfError> {
        let labels = self.cfg.labels.labels();
        shape
            .cells()
            .iter()
            .map(|&(i, j)| {
                labels
                    .iter()
                    .map(|&b| Ok((self.z_mono(b, Self::cell_shift(shape, i, j))?, self.sign(b)?)))
                    .collect()
            })
            .collect()
    }

    // ---- tableau sums ----

    pub fn t_skew_sym(&self, shape: &SkewShape) -> Result<SymSum, DvfError> {
        if shape.is_empty() {
            return Ok(SymSum::one());
        }
        let weights = self.cell_weights(shape)?;
        let norm = self.normalizer_mono(shape)?.inv();
        let mut acc: HashMap<Monomial, i64> = HashMap::new();
        // partial products along the row-major scan, reused between fillings
        let mut prefix: Vec<(usize, Monomial, i64)> = Vec::new();
        for_each_filling(shape, &self.cfg.labels, |fill| {
            let keep = prefix.iter().zip(fill).take_while(|((f, _, _), &c)| *f == c).count();
            prefix.truncate(keep);
            for k in keep..fill.len() {
                let (base, sign) = prefix.last().map_or((norm.clone(), 1), |(_, m, s)| (m.clone(), *s));
                let (w, ws) = &weights[k][fill[k]];
                prefix.push((fill[k], base.mul(w), sign * ws));
            }
            let (_, m, s) = prefix.last().expect("non-empty shape");
            *acc.entry(m.clone()).or_insert(0) += s;
            true
        });
        let mut out = SymSum::zero();
        for (m, c) in acc {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn t_skew(&self, shape: &SkewShape) -> Result<TermSum<F>, DvfError> {
        Ok(self.to_terms(&self.t_skew_sym(shape)?))
    }

    /// Signed term of the leading tableau of a straight covariant shape,
    /// divided by `F_μ`.
    pub fn top_term(&self, shape: &SkewShape) -> Result<FactoredTerm<F>, DvfError> {
        let top = top_tableau(shape, self.cfg.r, self.cfg.s)?;
        let mut m = self.normalizer_mono(shape)?.inv();
        let mut sign = 1;
        for ((i, j), b) in top.iter() {
            m = m.mul(&self.z_mono(b, Self::cell_shift(shape, i, j))?);
            sign *= self.sign(b)?;
        }
        let terms = self.monomial_to_terms(&m, sign);
        Ok(terms.terms().first().cloned().unwrap_or_else(|| FactoredTerm::constant(F::zero())))
    }

    /// `(−1)^{Σ_{i≥r+2} μ_i} q^{−2 Σ_b N_b a_b t_b}`, the predicted limit of
    /// [`Self::top_term`] with trivial vacuum.
    pub fn top_term_prediction(&self, mu: &Partition) -> Result<F, DvfError> {
        let (r, s) = (self.cfg.r, self.cfg.s);
        let a = kac_dynkin_covariant(mu, r as usize, s as usize)?;
        let mut exp = 0i64;
        for (b, ab) in a.iter().enumerate() {
            exp += self.rs.count(b as i32 + 1) as i64 * ab * self.cfg.t_signs[b] as i64;
        }
        let lower: usize = mu.parts().iter().skip(r as usize + 1).sum();
        let sign = if lower % 2 == 0 { F::one() } else { -F::one() };
        Ok(sign * self.field.qpow(-2 * exp as i32))
    }

    /// The tableau sum as a pointwise-evaluated function (never expanded).
    pub fn tableau_sum(&self, shape: &SkewShape) -> Result<TableauSum<F>, DvfError> {
        TableauSum::new(self, shape)
    }

    // ---- generating series ----

    fn series_factors(&self, kind: SeriesKind) -> Vec<SeriesFactor> {
        let labels = self.cfg.labels.labels();
        let mut out: Vec<SeriesFactor> = labels
            .iter()
            .map(|&b| {
                let even = self.cfg.parity(b).expect("own label") == 0;
                let z = self.z_mono(b, 0).expect("own label");
                match kind {
                    SeriesKind::Column => SeriesFactor { z, c: 1, inverse: !even },
                    SeriesKind::Row => SeriesFactor { z, c: -1, inverse: even },
                }
            })
            .collect();
        if kind == SeriesKind::Column {
            out.reverse();
        }
        out
    }

    /// `T^n(u + shift)` evaluated pointwise from the series factors.
    pub fn series_coefficient_expr(&self, kind: SeriesKind, n: i64, shift: i32) -> RatExpr<F> {
        self.series_coefficient_from(kind, n, shift, &self.t_series_sym(kind, n))
    }

    /// `base` is the expanded `T^n(u)`, used for the degree bound.
    fn series_coefficient_from(&self, kind: SeriesKind, n: i64, shift: i32, base: &SymSum) -> RatExpr<F> {
        let sym = base.shifted(shift);
        if n <= 0 || sym.is_zero() {
            return RatExpr::Leaf(self.to_terms(&sym));
        }
        let bound = DegreeBound::of_sum(&self.to_terms(&sym));
        let factors: Vec<(Monomial, i64, bool)> =
            self.series_factors(kind).into_iter().map(|f| (f.z, f.c, f.inverse)).collect();
        let post = match kind {
            SeriesKind::Column => self.f_mono(n, 0).expect("n > 0").inv(),
            SeriesKind::Row => Monomial::one(),
        };
        RatExpr::Lazy(Arc::new(SeriesCoefficient::new(self, &factors, n as usize, shift, &post, bound)))
    }

    /// `T^n(u)` or `T_n(u)` read off the generating series.
    pub fn t_series_sym(&self, kind: SeriesKind, n: i64) -> SymSum {
        if n < 0 {
            return SymSum::zero();
        }
        match (kind, n) {
            (SeriesKind::Column, 0) => return SymSum::monomial(self.p_mono(-1), 1),
            (SeriesKind::Row, 0) => return SymSum::one(),
            _ => {}
        }
        let coeffs = expand_series(&self.series_factors(kind), n as usize);
        let back = coeffs[n as usize].shifted(-(n as i32 - 1));
        match kind {
            SeriesKind::Column => {
                let f = self.f_mono(n, 0).expect("n >= 0");
                back.mul_monomial(&f.inv(), 1)
            }
            SeriesKind::Row => back,
        }
    }

    pub fn t_series(&self, kind: SeriesKind, n: i64) -> TermSum<F> {
        self.to_terms(&self.t_series_sym(kind, n))
    }

    // ---- Jacobi-Trudi ----

    /// `(series kind, index, argument shift)` of every determinant entry.
    pub fn jt_layout(&self, shape: &SkewShape, axis: Axis) -> Vec<Vec<(SeriesKind, i64, i32)>> {
        let mu1 = shape.width() as i64;
        let h = shape.height() as i64;
        match axis {
            Axis::Column => {
                let mc = |i: i64| shape.outer_conj().part(i as usize) as i64;
                let lc = |i: i64| shape.inner_conj().part(i as usize) as i64;
                (1..=mu1)
                    .map(|i| {
                        (1..=mu1)
                            .map(|j| {
                                let c = -mu1 + h - mc(i) - lc(j) + i + j - 1;
                                (SeriesKind::Column, mc(i) - lc(j) - i + j, c as i32)
                            })
                            .collect()
                    })
                    .collect()
            }
            Axis::Row => {
                let m = |i: i64| shape.outer().part(i as usize) as i64;
                let l = |i: i64| shape.inner().part(i as usize) as i64;
                (1..=h)
                    .map(|i| {
                        (1..=h)
                            .map(|j| {
                                let c = -mu1 + h + m(j) + l(i) - i - j + 1;
                                (SeriesKind::Row, m(j) - l(i) + i - j, c as i32)
                            })
                            .collect()
                    })
                    .collect()
            }
        }
    }

    /// Matrix entries (already shifted) of either determinant.
    pub fn jt_entries(&self, shape: &SkewShape, axis: Axis) -> Vec<Vec<SymSum>> {
        let mut cache: HashMap<i64, SymSum> = HashMap::new();
        self.jt_layout(shape, axis)
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|(kind, n, c)| cache.entry(n).or_insert_with(|| self.t_series_sym(kind, n)).shifted(c))
                    .collect()
            })
            .collect()
    }

    /// Division-free determinant by expansion along rows (memoized minors).
    pub fn jacobi_trudi_sym(&self, shape: &SkewShape, axis: Axis) -> Result<SymSum, DvfError> {
        let m = self.jt_entries(shape, axis);
        let n = m.len();
        if n > MAX_EXPANDED_DET {
            return Err(DvfError::MatrixTooLarge(n));
        }
        let det = expand_det(&m);
        Ok(match axis {
            Axis::Column => det,
            Axis::Row => det.mul_monomial(&self.normalizer_mono(shape)?.inv(), 1),
        })
    }

    pub fn jacobi_trudi(&self, shape: &SkewShape, axis: Axis) -> Result<TermSum<F>, DvfError> {
        Ok(self.to_terms(&self.jacobi_trudi_sym(shape, axis)?))
    }

    /// The determinant as an unexpanded expression (any size).
    pub fn jacobi_trudi_expr(&self, shape: &SkewShape, axis: Axis) -> Result<RatExpr<F>, DvfError> {
        let layout = self.jt_layout(shape, axis);
        if layout.is_empty() {
            return Ok(RatExpr::Leaf(TermSum::one()));
        }
        let mut cache: HashMap<i64, SymSum> = HashMap::new();
        let det = RatExpr::Det(
            layout
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|(kind, n, c)| {
                            let base = cache.entry(n).or_insert_with(|| self.t_series_sym(kind, n));
                            self.series_coefficient_from(kind, n, c, base)
                        })
                        .collect()
                })
                .collect(),
        );
        Ok(match axis {
            Axis::Column => det,
            Axis::Row => {
                let inv = self.monomial_to_terms(&self.normalizer_mono(shape)?.inv(), 1);
                RatExpr::Product(vec![det, RatExpr::Leaf(inv)])
            }
        })
    }

    /// `t_skew − jacobi_trudi` as an expression whose zero test certifies the
    /// identity without expanding either side.
    pub fn jt_difference(&self, shape: &SkewShape, axis: Axis) -> Result<RatExpr<F>, DvfError> {
        let lhs = RatExpr::Lazy(Arc::new(self.tableau_sum(shape)?));
        Ok(RatExpr::sub(lhs, self.jacobi_trudi_expr(shape, axis)?))
    }

    // ---- plain accessors in TermSum form ----

    pub fn q_function(&self, color: i32) -> TermSum<F> {
        self.monomial_to_terms(&self.q_mono(color, 0), 1)
    }

    pub fn p_function(&self) -> TermSum<F> {
        self.monomial_to_terms(&self.p_mono(0), 1)
    }

    pub fn z_function(&self, label: i32) -> Result<TermSum<F>, DvfError> {
        Ok(self.monomial_to_terms(&self.z_mono(label, 0)?, 1))
    }

    pub fn normalizer(&self, shape: &SkewShape) -> Result<TermSum<F>, DvfError> {
        Ok(self.monomial_to_terms(&self.normalizer_mono(shape)?, 1))
    }
}

pub(crate) fn expand_det(m: &[Vec<SymSum>]) -> SymSum {
    let n = m.len();
    if n == 0 {
        return SymSum::one();
    }
    // minor[mask] = det of rows (n − |mask|).. restricted to the columns in mask
    let mut minor: HashMap<u32, SymSum> = HashMap::new();
    minor.insert(0, SymSum::one());
    for size in 1..=n {
        let row = n - size;
        let mut next: HashMap<u32, SymSum> = HashMap::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let mut acc = SymSum::zero();
            let mut pos = 0;
            for col in 0..n {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let rest = mask & !(1 << col);
                if let Some(sub) = minor.get(&rest) {
                    if !sub.is_zero() && !m[row][col].is_zero() {
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        acc.add_assign(&m[row][col].mul(sub).scale(sign));
                    }
                }
                pos += 1;
            }
            next.insert(mask, acc);
        }
        minor = next;
    }
    minor.remove(&((1u32 << n) - 1)).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::Partition;
    use crate::qarith::{QParameter, Rat};

    fn dvf(r: i32, s: i32, n: usize, sector: &[usize], seed: u64) -> Dvf<Rat> {
        let cfg = RootSystemConfig::distinguished_covariant(r, s).unwrap();
        let rs = BetheRootSet::draw(&QParameter::default(), n, sector, seed);
        Dvf::new(cfg, rs).unwrap()
    }

    fn shape(o: &[usize], i: &[usize]) -> SkewShape {
        SkewShape::new(Partition::new(i.to_vec()).unwrap(), Partition::new(o.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn determinant_expansion_matches_small_cases() {
        let a = SymSum::monomial(Monomial::atom(AtomKey { param: 0, shift: 0 }, 1), 1);
        let b = SymSum::monomial(Monomial::atom(AtomKey { param: 1, shift: 0 }, 1), 1);
        let m = vec![vec![a.clone(), b.clone()], vec![b.clone(), a.clone()]];
        assert_eq!(expand_det(&m), a.mul(&a).sub(&b.mul(&b)));
        assert_eq!(expand_det(&[]), SymSum::one());
    }

    #[test]
    fn series_match_columns_and_rows() {
        let d = dvf(1, 1, 2, &[1, 2, 1], 3);
        for n in 1..=3 {
            let col = d.t_series(SeriesKind::Column, n);
            let tab = d.t_skew(&shape(&vec![1; n as usize], &[])).unwrap();
            assert!(col.equals(&tab, d.field()).unwrap(), "column {n}");
            let row = d.t_series(SeriesKind::Row, n);
            let tab = d.t_skew(&shape(&[n as usize], &[])).unwrap();
            assert!(row.equals(&tab, d.field()).unwrap(), "row {n}");
        }
        assert!(d.t_series(SeriesKind::Row, -2).is_empty());
        assert_eq!(d.t_series(SeriesKind::Row, 0), TermSum::one());
    }

    #[test]
    fn small_jacobi_trudi_both_axes() {
        let d = dvf(1, 0, 2, &[1, 1], 11);
        for (o, i) in [(&[2usize, 2][..], &[][..]), (&[2, 1], &[]), (&[3, 2], &[1]), (&[2, 2, 1], &[1])] {
            let sh = shape(o, i);
            let t = d.t_skew(&sh).unwrap();
            for axis in [Axis::Column, Axis::Row] {
                let jt = d.jacobi_trudi(&sh, axis).unwrap();
                assert!(t.equals(&jt, d.field()).unwrap(), "{sh} {axis:?}");
                assert!(d.jt_difference(&sh, axis).unwrap().is_identically_zero(d.field()).unwrap());
            }
        }
    }

    #[test]
    fn pointwise_series_matches_expansion() {
        let d = dvf(1, 1, 2, &[2, 1, 1], 4);
        for kind in [SeriesKind::Column, SeriesKind::Row] {
            for n in 0..=4 {
                for shift in [-3, 0, 2] {
                    let e = d.series_coefficient_expr(kind, n, shift);
                    let t = d.t_series(kind, n).shift_u(d.field(), shift);
                    let x = Rat::from_integer(3.into());
                    assert_eq!(e.eval(d.field(), &x).unwrap(), t.eval(d.field(), &x).unwrap(), "{kind:?} {n} {shift}");
                }
            }
        }
    }

    #[test]
    fn empty_and_vanishing_shapes() {
        let d = dvf(0, 0, 1, &[1], 5);
        assert_eq!(d.t_skew(&shape(&[], &[])).unwrap(), TermSum::one());
        assert!(d.t_skew(&shape(&[2, 2], &[])).unwrap().is_empty());
    }
}
