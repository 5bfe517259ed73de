//! Known expansions of small T-functions, written out term by term.
//!
//! Vacuum factors are `[u + c]^N` (all sites at `w = 0`); `P(c)` below means
//! `[u + c]^N` and `Q(a, c)` means `Q_a(u + c)`.

use crate::diagrams::SkewShape;
use crate::qarith::{Scalar, TermSum};

use super::{Dvf, DvfError, Monomial, Preset, SymSum};

/// `coeff · ∏ P(c)^e · ∏ Q_a(c)^e`
#[derive(Clone, Debug)]
pub struct FixtureTerm {
    pub coeff: i64,
    pub p: &'static [(i32, i32)],
    pub q: &'static [(i32, i32, i32)],
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub preset: Preset,
    pub r: i32,
    pub s: i32,
    pub shape: &'static str,
    pub terms: Vec<FixtureTerm>,
}

const fn t(coeff: i64, p: &'static [(i32, i32)], q: &'static [(i32, i32, i32)]) -> FixtureTerm {
    FixtureTerm { coeff, p, q }
}

pub fn all() -> Vec<Fixture> {
    use Preset::*;
    vec![
        Fixture {
            name: "T^1 sl(2|1)",
            preset: DistinguishedCovariant,
            r: 1,
            s: 0,
            shape: "1",
            terms: vec![
                t(1, &[(2, 1)], &[(1, -1, 1), (1, 1, -1)]),
                t(1, &[(0, 1)], &[(1, 3, 1), (2, 0, 1), (1, 1, -1), (2, 2, -1)]),
                t(-1, &[(0, 1)], &[(2, 0, 1), (2, 2, -1)]),
            ],
        },
        Fixture {
            name: "T^2 sl(2|1)",
            preset: DistinguishedCovariant,
            r: 1,
            s: 0,
            shape: "1,1",
            terms: vec![
                t(1, &[(3, 1)], &[(2, -1, 1), (2, 1, -1)]),
                t(-1, &[(3, 1)], &[(1, 0, 1), (2, -1, 1), (1, 2, -1), (2, 1, -1)]),
                t(-1, &[(1, 1)], &[(1, 4, 1), (2, -1, 1), (1, 2, -1), (2, 3, -1)]),
                t(1, &[(1, 1)], &[(2, -1, 1), (2, 3, -1)]),
            ],
        },
        Fixture {
            name: "T^3 sl(2|1)",
            preset: DistinguishedCovariant,
            r: 1,
            s: 0,
            shape: "1,1,1",
            terms: vec![
                t(-1, &[(4, 1)], &[(2, -2, 1), (2, 2, -1)]),
                t(1, &[(4, 1)], &[(1, 1, 1), (2, -2, 1), (1, 3, -1), (2, 2, -1)]),
                t(1, &[(2, 1)], &[(1, 5, 1), (2, -2, 1), (1, 3, -1), (2, 4, -1)]),
                t(-1, &[(2, 1)], &[(2, -2, 1), (2, 4, -1)]),
            ],
        },
        Fixture {
            name: "T_(2^2) sl(2|1)",
            preset: DistinguishedCovariant,
            r: 1,
            s: 0,
            shape: "2,2",
            terms: vec![
                t(1, &[(2, 1), (4, 1)], &[(2, -2, 1), (2, 2, -1)]),
                t(-1, &[(2, 1), (4, 1)], &[(1, 1, 1), (2, -2, 1), (1, 3, -1), (2, 2, -1)]),
                t(-1, &[(2, 2)], &[(1, 5, 1), (2, -2, 1), (1, 3, -1), (2, 4, -1)]),
                t(1, &[(2, 2)], &[(2, -2, 1), (2, 4, -1)]),
            ],
        },
        Fixture {
            name: "T_2^1 sl(1|2) odd-even-odd",
            preset: Sl12AppC,
            r: 0,
            s: 1,
            shape: "2",
            terms: vec![
                t(-1, &[(-3, 1), (1, 1)], &[(1, 2, 1), (2, -1, 1), (1, -2, -1), (2, 1, -1)]),
                t(1, &[(-3, 1), (1, 1)], &[(1, 0, 1), (2, -1, 1), (1, -2, -1), (2, 1, -1)]),
                t(1, &[(-1, 1), (1, 1)], &[(1, 2, 1), (2, -3, 1), (1, -2, -1), (2, 1, -1)]),
                t(-1, &[(-1, 1), (1, 1)], &[(1, 0, 1), (2, -3, 1), (1, -2, -1), (2, 1, -1)]),
            ],
        },
        Fixture {
            name: "T_1^2 sl(1|2) odd-even-odd",
            preset: Sl12AppC,
            r: 0,
            s: 1,
            shape: "1,1",
            terms: vec![
                t(1, &[(-3, 1)], &[(1, 2, 1), (1, -2, -1)]),
                t(-1, &[(-1, 1)], &[(1, 2, 1), (2, -3, 1), (1, -2, -1), (2, -1, -1)]),
                t(1, &[(-1, 1)], &[(1, 2, 1), (2, -3, 1), (1, 0, -1), (2, -1, -1)]),
                t(-1, &[(1, 1)], &[(1, 2, 1), (2, -3, 1), (1, 0, -1), (2, 1, -1)]),
                t(1, &[(1, 1)], &[(2, -3, 1), (2, 1, -1)]),
            ],
        },
        Fixture {
            name: "T_2^1 sl(1|2) odd-odd-even",
            preset: Sl12AppD,
            r: 0,
            s: 1,
            shape: "2",
            terms: vec![
                t(1, &[(-3, 1), (1, 1)], &[(2, 1, 1), (2, -1, -1)]),
                t(-1, &[(-3, 1), (1, 1)], &[(1, 0, 1), (2, 1, 1), (1, -2, -1), (2, -1, -1)]),
                t(-1, &[(-1, 1), (1, 1)], &[(1, -4, 1), (2, 1, 1), (1, -2, -1), (2, -3, -1)]),
                t(1, &[(-1, 1), (1, 1)], &[(2, 1, 1), (2, -3, -1)]),
            ],
        },
        Fixture {
            name: "T_1^2 sl(1|2) odd-odd-even",
            preset: Sl12AppD,
            r: 0,
            s: 1,
            shape: "1,1",
            terms: vec![
                t(1, &[(-3, 1)], &[(1, 2, 1), (1, -2, -1)]),
                t(1, &[(-1, 1)], &[(1, -4, 1), (1, 2, 1), (2, -1, 1), (1, -2, -1), (1, 0, -1), (2, -3, -1)]),
                t(-1, &[(-1, 1)], &[(1, 2, 1), (2, -1, 1), (1, 0, -1), (2, -3, -1)]),
                t(1, &[(1, 1)], &[(1, -4, 1), (2, 1, 1), (1, 0, -1), (2, -3, -1)]),
                t(-1, &[(1, 1)], &[(1, -2, 1), (2, 1, 1), (1, 0, -1), (2, -3, -1)]),
            ],
        },
    ]
}

impl Fixture {
    pub fn shape(&self) -> SkewShape {
        self.shape.parse().expect("fixture shapes are valid")
    }

    /// The written-out expansion on the parameters of `dvf`.
    pub fn expected<F: Scalar>(&self, dvf: &Dvf<F>) -> TermSum<F> {
        let mut sum = SymSum::zero();
        for term in &self.terms {
            let mut m = Monomial::one();
            for &(c, e) in term.p {
                m = m.mul(&dvf.p_mono(c).pow(e));
            }
            for &(a, c, e) in term.q {
                m = m.mul(&dvf.q_mono(a, c).pow(e));
            }
            sum.add_term(m, term.coeff);
        }
        dvf.to_terms(&sum)
    }

    /// `(tableau sum, expected)` on `dvf`'s parameters.
    pub fn compare<F: Scalar>(&self, dvf: &Dvf<F>) -> Result<(TermSum<F>, TermSum<F>), DvfError> {
        Ok((dvf.t_skew(&self.shape())?, self.expected(dvf)))
    }
}
