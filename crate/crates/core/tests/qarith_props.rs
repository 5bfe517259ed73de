use bethe_core::qarith::{rat, DegreeBound, FactoredTerm, QField, QParameter, Rat, RatExpr, Scalar, TermSum};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn field() -> QField<Rat> {
    QField::new(&QParameter::default())
}

fn atom(m: Rat, e: i32) -> FactoredTerm<Rat> {
    FactoredTerm::atom(m, e)
}

/// `[u+1]^2 - [u-1]^2 = [2][2u]`; the right side is not a product of atoms in
/// `x`, so compare against `(q^2 - q^-2)(x^2 - x^-2)/(q - 1/q)^2` directly.
#[test]
fn square_difference_matches_polynomial_oracle() {
    let f = field();
    let q = rat(3, 2);
    let plus = TermSum::from_term(atom(q.clone(), 2));
    let minus = TermSum::from_term(atom(q.inv(), 2));
    let lhs = plus.sub(&minus);

    let d = q.clone() - q.inv();
    let lead = (q.powi(2) - q.powi(-2)) / (d.clone() * d);
    let bound = RatExpr::Leaf(lhs.clone()).bound().unwrap();
    assert!(bound.den.is_empty());
    let num = lhs.numerator_laurent(&f, &bound);
    assert_eq!(num.coeff(2), lead);
    assert_eq!(num.coeff(-2), -lead.clone());
    for k in -1..=1 {
        assert_eq!(num.coeff(k), Rat::zero());
    }
    for n in 2..9 {
        let x = rat(n, 3);
        let oracle = lead.clone() * (x.powi(2) - x.powi(-2));
        assert_eq!(lhs.eval(&f, &x).unwrap(), oracle);
    }
}

#[test]
fn residue_of_cancelling_pair_is_zero() {
    let f = field();
    let q = rat(3, 2);
    let t = atom(q.powi(2), 1).mul(&atom(Rat::one(), -1));
    let s = TermSum::from_terms(vec![t.clone(), t.scale(&rat(-1, 1))]);
    assert_eq!(s.residue_at(&f, &Rat::one()).unwrap(), Rat::zero());
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (1i64..40, 1i64..40).prop_map(|(n, d)| rat(n, d))
}

fn term() -> impl Strategy<Value = FactoredTerm<Rat>> {
    (
        (-5i64..=5).prop_filter("nonzero", |c| *c != 0),
        prop::collection::vec((small_rat(), -2i32..=2), 0..3),
    )
        .prop_map(|(c, atoms)| {
            atoms
                .into_iter()
                .fold(FactoredTerm::constant(rat(c, 1)), |acc, (m, e)| acc.mul(&FactoredTerm::atom(m, e)))
        })
}

fn sum() -> impl Strategy<Value = TermSum<Rat>> {
    prop::collection::vec(term(), 0..4).prop_map(TermSum::from_terms)
}

/// Points whose atoms cannot vanish for the multipliers produced above.
fn point() -> impl Strategy<Value = Rat> {
    (1i64..50).prop_map(|n| rat(2 * n + 1, 97))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_is_a_ring_homomorphism(a in sum(), b in sum(), x in point()) {
        let f = field();
        if let (Ok(va), Ok(vb)) = (a.eval(&f, &x), b.eval(&f, &x)) {
            prop_assert_eq!(a.mul(&b).eval(&f, &x).unwrap(), va.clone() * vb.clone());
            prop_assert_eq!(a.add(&b).eval(&f, &x).unwrap(), va + vb);
        }
    }

    #[test]
    fn shift_rescales_the_argument(a in sum(), s in -4i32..=4, x in point()) {
        let f = field();
        let moved = x.clone() * f.qpow(s);
        if let Ok(v) = a.eval(&f, &moved) {
            prop_assert_eq!(a.shift_u(&f, s).eval(&f, &x).unwrap(), v);
        }
    }

    #[test]
    fn residue_is_linear(a in sum(), b in sum(), m in small_rat()) {
        let f = field();
        let x0 = m.inv();
        if let (Ok(ra), Ok(rb)) = (a.residue_at(&f, &x0), b.residue_at(&f, &x0)) {
            prop_assert_eq!(a.add(&b).residue_at(&f, &x0).unwrap(), ra + rb);
        }
    }

    #[test]
    fn equality_agrees_with_enough_evaluations(a in sum(), b in sum()) {
        let f = field();
        let diff = a.sub(&b);
        let eq = a.equals(&b, &f).unwrap();
        // independent oracle: 2·(atom count)+1 sample points avoiding all atom zeros
        let needed = 2 * (a.total_atom_count() + b.total_atom_count()) + 1;
        let mut agree = true;
        let mut used = 0;
        let mut n = 1i64;
        while used < needed {
            n += 1;
            let x = rat(n, 7);
            if let Ok(v) = diff.eval(&f, &x) {
                used += 1;
                if !v.is_zero() {
                    agree = false;
                    break;
                }
            }
        }
        prop_assert_eq!(eq, agree);
    }

    #[test]
    fn rewriting_through_a_unit_keeps_equality(a in sum(), m in small_rat()) {
        let f = field();
        let unit = atom(m.clone(), 1);
        let roundabout = a.mul_term(&unit).mul_term(&unit.inv());
        prop_assert!(roundabout.equals(&a, &f).unwrap());
        let bumped = a.add(&TermSum::from_term(unit));
        prop_assert!(!bumped.equals(&a, &f).unwrap());
    }

    #[test]
    fn float_conversion_tracks_exact_values(a in sum(), x in point()) {
        let f = field();
        let fc = QField::new(&QParameter::default());
        if let Ok(v) = a.eval(&f, &x) {
            let c = a.to_complex().eval(&fc, &x.to_complex()).unwrap();
            let scale = 1f64.max(v.modulus());
            prop_assert!((c - v.to_complex()).norm() <= 1e-9 * scale);
        }
    }

    #[test]
    fn bound_covers_the_cleared_numerator(a in sum()) {
        let f = field();
        if let Some(b) = RatExpr::Leaf(a.clone()).bound() {
            let b: DegreeBound<Rat> = b;
            let num = a.numerator_laurent(&f, &b);
            if !num.is_zero() {
                prop_assert!(num.low() >= b.lo && num.high() <= b.hi);
            }
        }
    }
}
