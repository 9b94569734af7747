//! Every code listing in the guide (book/) is included from this file
//! by anchor, so the book's examples are compiled and run on every
//! `cargo test`.

use kunzite::conditions;
use kunzite::field::{FrobeniusExponent, PrimeField};
use kunzite::groebner::{Ideal, WorkBudget};
use kunzite::ideal_ops;
use kunzite::invariants;
use kunzite::monomial::MonomialOrder;
use kunzite::poly::Polynomial;
use kunzite::quotient::RingPresentation;

#[test]
fn field_arithmetic() {
    // ANCHOR: field_arithmetic
    let f = PrimeField::new(7).unwrap();
    assert_eq!(f.add(5, 4), 2);
    assert_eq!(f.mul(3, 5), 1); // 3 and 5 are inverse in GF(7)
    assert_eq!(f.inv(3).unwrap(), 5);
    assert_eq!(f.pow(2, 6), 1); // Fermat
    assert!(PrimeField::new(6).is_err());
    // ANCHOR_END: field_arithmetic
}

#[test]
fn building_polynomials() {
    // ANCHOR: building_polynomials
    let f = PrimeField::new(3).unwrap();
    // f = x^2 + 2xy over GF(3)[x, y]
    let x = Polynomial::variable(f, 2, 0);
    let y = Polynomial::variable(f, 2, 1);
    let g = x.mul(&x).add(&x.mul(&y).scale(2));
    assert_eq!(g.render(&["x", "y"], &MonomialOrder::GrevLex), "x^2 + 2*x*y");

    // the Frobenius q-th power is term-wise: (x^2 + 2xy)^[3]
    let q = FrobeniusExponent::new(f, 1).unwrap();
    let g3 = g.frobenius_pow(q).unwrap();
    assert_eq!(
        g3.render(&["x", "y"], &MonomialOrder::GrevLex),
        "x^6 + 2*x^3*y^3"
    );
    // ANCHOR_END: building_polynomials
}

#[test]
fn groebner_basics() {
    // ANCHOR: groebner_basics
    let f = PrimeField::new(7).unwrap();
    let x = Polynomial::variable(f, 2, 0);
    let y = Polynomial::variable(f, 2, 1);
    // I = (xy - 1, y^2 - 1)
    let one = Polynomial::one(f, 2);
    let i = Ideal::new(f, 2, vec![x.mul(&y).sub(&one), y.mul(&y).sub(&one)]);

    let mut budget = WorkBudget::default();
    let order = MonomialOrder::Lex;
    let gb = i.groebner_basis(&order, &mut budget).unwrap();
    // the reduced basis is canonical: x - y joins it under lex
    assert!(gb.basis().contains(&x.sub(&y)));

    // membership is a normal-form computation
    assert!(i.member(&x.sub(&y), &order, &mut budget).unwrap());
    assert!(!i.member(&x, &order, &mut budget).unwrap());
    // ANCHOR_END: groebner_basics
}

#[test]
fn ideal_calculus() {
    // ANCHOR: ideal_calculus
    let f = PrimeField::new(5).unwrap();
    let x = Polynomial::variable(f, 2, 0);
    let y = Polynomial::variable(f, 2, 1);
    let order = MonomialOrder::GrevLex;
    let mut budget = WorkBudget::default();

    // ((x^2, xy) : (x)) = (x, y)
    let i = Ideal::new(f, 2, vec![x.mul(&x), x.mul(&y)]);
    let j = Ideal::new(f, 2, vec![x.clone()]);
    let c = ideal_ops::colon(&i, &j, &mut budget).unwrap();
    let expected = Ideal::new(f, 2, vec![x.clone(), y.clone()]);
    assert!(c.equals(&expected, &order, &mut budget).unwrap());

    // (x) ∩ (y) = (xy)
    let meet = ideal_ops::intersect(
        &Ideal::new(f, 2, vec![x.clone()]),
        &Ideal::new(f, 2, vec![y.clone()]),
        &mut budget,
    )
    .unwrap();
    let expected = Ideal::new(f, 2, vec![x.mul(&y)]);
    assert!(meet.equals(&expected, &order, &mut budget).unwrap());

    // bracket powers act on generators term by term
    let q = FrobeniusExponent::new(f, 1).unwrap();
    let br = ideal_ops::bracket_power(&Ideal::new(f, 2, vec![x.add(&y)]), q).unwrap();
    let x5y5 = x.frobenius_pow(q).unwrap().add(&y.frobenius_pow(q).unwrap());
    let expected = Ideal::new(f, 2, vec![x5y5]);
    assert!(br.equals(&expected, &order, &mut budget).unwrap());
    // ANCHOR_END: ideal_calculus
}

#[test]
fn working_in_a_quotient() {
    // ANCHOR: working_in_a_quotient
    // R = GF(2)[x,y,z]/(xy - z^2), the quadric cone.
    let f = PrimeField::new(2).unwrap();
    let x = Polynomial::variable(f, 3, 0);
    let y = Polynomial::variable(f, 3, 1);
    let z = Polynomial::variable(f, 3, 2);
    let ring = RingPresentation::new(
        f,
        &["x", "y", "z"],
        vec![x.mul(&y).sub(&z.mul(&z))],
        MonomialOrder::GrevLex,
        &mut WorkBudget::default(),
    )
    .unwrap();

    // in R, z * z = xy lands in (x), so ((x) : (z)) picks up z
    let mut budget = WorkBudget::default();
    let a = ring.ideal(vec![x.clone()]).unwrap();
    let b = ring.ideal(vec![z.clone()]).unwrap();
    let c = ring.r_colon(&a, &b, &mut budget).unwrap();
    let expected = ring.ideal(vec![x.clone(), z.clone()]).unwrap();
    assert!(ring.r_equal(&c, &expected, &mut budget).unwrap());
    // ANCHOR_END: working_in_a_quotient
}

#[test]
fn hilbert_kunz_and_kunz_criterion() {
    // ANCHOR: hilbert_kunz
    // a regular model: colengths are exactly q^d
    let f = PrimeField::new(2).unwrap();
    let plane = RingPresentation::polynomial_ring(f, &["x", "y"]).unwrap();
    let mut budget = WorkBudget::default();
    let series = invariants::hk_series(&plane, 3, &mut budget).unwrap();
    assert!(series.regular_flag);
    let lambdas: Vec<u64> = series.rows.iter().map(|r| r.lambda).collect();
    assert_eq!(lambdas, vec![4, 16, 64]);

    // the quadric cone misses q^2, so it is singular at the origin
    let x = Polynomial::variable(f, 3, 0);
    let y = Polynomial::variable(f, 3, 1);
    let z = Polynomial::variable(f, 3, 2);
    let cone = RingPresentation::new(
        f,
        &["x", "y", "z"],
        vec![x.mul(&y).sub(&z.mul(&z))],
        MonomialOrder::GrevLex,
        &mut WorkBudget::default(),
    )
    .unwrap();
    let series = invariants::hk_series(&cone, 3, &mut budget).unwrap();
    assert!(!series.regular_flag);
    for row in &series.rows {
        assert!(row.lambda > row.q * row.q);
    }
    // ANCHOR_END: hilbert_kunz
}

#[test]
fn generator_growth() {
    // ANCHOR: generator_growth
    let f = PrimeField::new(2).unwrap();
    let ring = RingPresentation::polynomial_ring(f, &["x", "y"]).unwrap();
    let x = ring.variable(0);
    let y = ring.variable(1);
    let m = ring.ideal(vec![x, y]).unwrap();
    let mut budget = WorkBudget::default();
    let report = invariants::mu_series(&ring, &m, 8, &mut budget).unwrap();
    // mu((x,y)^n) = n + 1, a degree-1 Hilbert polynomial
    assert_eq!(report.fitted_poly.unwrap().render(), "n + 1");
    assert_eq!(report.spread_estimate, Some(2));
    // ANCHOR_END: generator_growth
}

#[test]
fn probing_the_conditions() {
    // ANCHOR: probing_the_conditions
    // GF(3)[x,y,z]/(xy - z^2) is not a UFD; the element condition with
    // one left generator fails, and the search returns a verified
    // counterexample.
    let f = PrimeField::new(3).unwrap();
    let x = Polynomial::variable(f, 3, 0);
    let y = Polynomial::variable(f, 3, 1);
    let z = Polynomial::variable(f, 3, 2);
    let cone = RingPresentation::new(
        f,
        &["x", "y", "z"],
        vec![x.mul(&y).sub(&z.mul(&z))],
        MonomialOrder::GrevLex,
        &mut WorkBudget::default(),
    )
    .unwrap();
    let q = vec![FrobeniusExponent::new(f, 1).unwrap()];
    let report = conditions::search_violation(
        &cone,
        1, // one left-hand generator: the UFD probe
        2, // sweep monomials up to degree 2
        &q,
        0, // no random samples needed; the sweep already finds it
        0,
        &mut WorkBudget::default(),
    )
    .unwrap();
    let w = report.witness.expect("the cone violates the condition");
    assert_eq!(w.xs, vec![x.clone()]);
    assert_eq!(w.y, z);
    // ANCHOR_END: probing_the_conditions
}
