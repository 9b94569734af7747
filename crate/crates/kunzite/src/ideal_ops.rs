//! Ideal-level operations: sum, product, ordinary and Frobenius bracket
//! powers, intersection, colon and radical membership.
//!
//! Intersections go through the classic trick t*I + (1-t)*J with a fresh
//! variable t eliminated by a block order; colons are computed as
//! (I : f) = (I \u{2229} (f)) / f, intersected over the generators of J.

use crate::error::{Error, Result};
use crate::field::FrobeniusExponent;
use crate::groebner::{reduce_full, Ideal, WorkBudget};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;

pub fn sum(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_ring(i, j)?;
    let mut gens = i.generators().to_vec();
    gens.extend_from_slice(j.generators());
    Ok(Ideal::new(i.field(), i.nvars(), gens))
}

pub fn product(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_ring(i, j)?;
    let mut gens = Vec::new();
    for g in i.generators() {
        for h in j.generators() {
            gens.push(g.checked_mul(h)?);
        }
    }
    Ok(Ideal::new(i.field(), i.nvars(), gens))
}

/// The ordinary power I^n, generated by all degree-n monomials in the
/// generators. I^0 is the unit ideal.
pub fn power(i: &Ideal, n: u32) -> Result<Ideal> {
    if n == 0 {
        return Ok(Ideal::unit(i.field(), i.nvars()));
    }
    let gens = i.generators();
    if gens.is_empty() {
        return Ok(Ideal::zero(i.field(), i.nvars()));
    }
    let mut out = Vec::new();
    let mut stack: Vec<(usize, u32, Polynomial)> =
        vec![(0, n, Polynomial::one(i.field(), i.nvars()))];
    // Multisets of size n over the generators.
    while let Some((idx, rem, acc)) = stack.pop() {
        if rem == 0 {
            out.push(acc);
            continue;
        }
        if idx == gens.len() {
            continue;
        }
        if idx == gens.len() - 1 {
            let mut prod = acc;
            for _ in 0..rem {
                prod = prod.checked_mul(&gens[idx])?;
            }
            out.push(prod);
            continue;
        }
        for k in 0..=rem {
            let mut prod = acc.clone();
            for _ in 0..k {
                prod = prod.checked_mul(&gens[idx])?;
            }
            stack.push((idx + 1, rem - k, prod));
        }
    }
    Ok(Ideal::new(i.field(), i.nvars(), out))
}

/// The Frobenius bracket power I^[q], generated by the q-th powers of the
/// generators. In characteristic p this does not depend on the chosen
/// generating set.
pub fn bracket_power(i: &Ideal, q: FrobeniusExponent) -> Result<Ideal> {
    let gens = i
        .generators()
        .iter()
        .map(|g| g.frobenius_pow(q))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(i.field(), i.nvars(), gens))
}

/// Generators of I \u{2229} J via elimination of a fresh variable t that is
/// appended last and made highest in the block order.
pub fn intersect(i: &Ideal, j: &Ideal, budget: &mut WorkBudget) -> Result<Ideal> {
    check_ring(i, j)?;
    let field = i.field();
    let nv = i.nvars();
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(field, nv));
    }
    let t = Polynomial::variable(field, nv + 1, nv);
    let one = Polynomial::one(field, nv + 1);
    let mut gens = Vec::new();
    for g in i.generators() {
        gens.push(t.mul(&g.extend_vars(1)));
    }
    for h in j.generators() {
        gens.push(one.sub(&t).mul(&h.extend_vars(1)));
    }
    let extended = Ideal::new(field, nv + 1, gens);
    let mut drop = vec![false; nv + 1];
    drop[nv] = true;
    let elim = extended.eliminate(&drop, budget)?;
    let restricted = elim
        .generators()
        .iter()
        .map(|g| g.drop_last_var())
        .collect();
    Ok(Ideal::new(field, nv, restricted))
}

/// Exact division of `g` by `f`: `g` must lie in the principal ideal (f).
fn exact_div(g: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    let order = MonomialOrder::GrevLex;
    let field = g.field();
    let (lm_f, lc_f) = f.leading_term(&order).expect("divisor nonzero");
    let lc_inv = field.inv(lc_f)?;
    let mut h = g.clone();
    let mut quot = Polynomial::zero(field, g.nvars());
    while let Some((m, c)) = h.leading_term(&order).map(|(m, c)| (m.clone(), c)) {
        let u = lm_f.div(&m).ok_or_else(|| {
            Error::Internal("colon division left an indivisible remainder".into())
        })?;
        let factor = field.mul(c, lc_inv);
        let term = Polynomial::from_terms(field, g.nvars(), [(u, factor)]);
        quot = quot.add(&term);
        h = h.sub(&f.mul(&term));
    }
    Ok(quot)
}

/// (I : f) for a single polynomial; (I : 0) is the unit ideal.
pub fn colon_single(i: &Ideal, f: &Polynomial, budget: &mut WorkBudget) -> Result<Ideal> {
    if f.is_zero() {
        return Ok(Ideal::unit(i.field(), i.nvars()));
    }
    let pf = Ideal::new(i.field(), i.nvars(), vec![f.clone()]);
    let meet = intersect(i, &pf, budget)?;
    let gens = meet
        .generators()
        .iter()
        .map(|g| exact_div(g, f))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(i.field(), i.nvars(), gens))
}

/// (I : J) = intersection of (I : f) over the generators f of J.
/// (I : (0)) is the unit ideal by convention.
pub fn colon(i: &Ideal, j: &Ideal, budget: &mut WorkBudget) -> Result<Ideal> {
    check_ring(i, j)?;
    let mut acc: Option<Ideal> = None;
    for f in j.generators() {
        let c = colon_single(i, f, budget)?;
        acc = Some(match acc {
            None => c,
            Some(prev) => intersect(&prev, &c, budget)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(i.field(), i.nvars())))
}

/// Decides f \u{2208} \u{221A}I by the Rabinowitsch trick: f is in the radical
/// iff 1 \u{2208} I + (1 - t*f) in the ring extended by a fresh variable t.
pub fn radical_member(f: &Polynomial, i: &Ideal, budget: &mut WorkBudget) -> Result<bool> {
    let field = i.field();
    let nv = i.nvars();
    let t = Polynomial::variable(field, nv + 1, nv);
    let one = Polynomial::one(field, nv + 1);
    let mut gens: Vec<Polynomial> = i.generators().iter().map(|g| g.extend_vars(1)).collect();
    gens.push(one.sub(&t.mul(&f.extend_vars(1))));
    let extended = Ideal::new(field, nv + 1, gens);
    let gb = extended.groebner_basis(&MonomialOrder::GrevLex, budget)?;
    Ok(gb.is_unit_ideal())
}

/// Reduces every generator of `i` modulo `modulus` (a basis list). Used
/// when presenting quotient-ring results with small representatives.
pub fn reduce_generators(
    i: &Ideal,
    modulus: &[Polynomial],
    order: &MonomialOrder,
) -> Ideal {
    let gens = i
        .generators()
        .iter()
        .map(|g| reduce_full(g, modulus, order))
        .collect();
    Ideal::new(i.field(), i.nvars(), gens)
}

fn check_ring(i: &Ideal, j: &Ideal) -> Result<()> {
    if i.field() != j.field() || i.nvars() != j.nvars() {
        return Err(Error::ArityMismatch);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn setup(p: u64) -> (PrimeField, Polynomial, Polynomial) {
        let f = gf(p);
        (
            f,
            Polynomial::variable(f, 2, 0),
            Polynomial::variable(f, 2, 1),
        )
    }

    fn eq(a: &Ideal, b: &Ideal) -> bool {
        a.equals(b, &MonomialOrder::GrevLex, &mut WorkBudget::default())
            .unwrap()
    }

    #[test]
    fn sum_and_product() {
        let (f, x, y) = setup(5);
        let ix = Ideal::new(f, 2, vec![x.clone()]);
        let iy = Ideal::new(f, 2, vec![y.clone()]);
        let s = sum(&ix, &iy).unwrap();
        assert!(eq(&s, &Ideal::new(f, 2, vec![x.clone(), y.clone()])));
        let z = product(&ix, &Ideal::zero(f, 2)).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn square_of_maximal_ideal() {
        let (f, x, y) = setup(5);
        let m = Ideal::new(f, 2, vec![x.clone(), y.clone()]);
        let m2 = power(&m, 2).unwrap();
        let expect = Ideal::new(
            f,
            2,
            vec![x.mul(&x), x.mul(&y), y.mul(&y)],
        );
        assert!(eq(&m2, &expect));
        assert!(power(&m, 0).unwrap().equals(
            &Ideal::unit(f, 2),
            &MonomialOrder::GrevLex,
            &mut WorkBudget::default()
        )
        .unwrap());
    }

    #[test]
    fn bracket_power_examples() {
        // p=3, I = (x+y, z), q=3 -> (x^3 + y^3, z^3)
        let f = gf(3);
        let x = Polynomial::variable(f, 3, 0);
        let y = Polynomial::variable(f, 3, 1);
        let z = Polynomial::variable(f, 3, 2);
        let i = Ideal::new(f, 3, vec![x.add(&y), z.clone()]);
        let q = FrobeniusExponent::new(f, 1).unwrap();
        let br = bracket_power(&i, q).unwrap();
        let cube = |p: &Polynomial| p.mul(p).mul(p);
        let expect = Ideal::new(f, 3, vec![cube(&x).add(&cube(&y)), cube(&z)]);
        assert_eq!(br.generators(), expect.generators());

        let q1 = FrobeniusExponent::new(f, 0).unwrap();
        assert_eq!(bracket_power(&i, q1).unwrap().generators(), i.generators());

        // p=2, monomial generators squared
        let (f2, x2, y2) = setup(2);
        let j = Ideal::new(f2, 2, vec![x2.mul(&x2), x2.mul(&y2)]);
        let q2 = FrobeniusExponent::new(f2, 1).unwrap();
        let br2 = bracket_power(&j, q2).unwrap();
        let x4 = x2.mul(&x2).mul(&x2).mul(&x2);
        let x2y2 = x2.mul(&x2).mul(&y2).mul(&y2);
        assert_eq!(br2.generators(), &[x4, x2y2][..]);
    }

    #[test]
    fn intersection_of_principal_ideals() {
        let (f, x, y) = setup(2);
        let mut b = WorkBudget::default();
        let ix = Ideal::new(f, 2, vec![x.clone()]);
        let iy = Ideal::new(f, 2, vec![y.clone()]);
        let meet = intersect(&ix, &iy, &mut b).unwrap();
        assert!(eq(&meet, &Ideal::new(f, 2, vec![x.mul(&y)])));
    }

    #[test]
    fn intersection_with_unit_and_monomials() {
        let (f, x, y) = setup(2);
        let mut b = WorkBudget::default();
        let i = Ideal::new(f, 2, vec![x.mul(&x), y.clone()]);
        let ix = Ideal::new(f, 2, vec![x.clone()]);
        // (x^2, y) \u{2229} (x) = (x^2, xy)
        let meet = intersect(&i, &ix, &mut b).unwrap();
        assert!(eq(&meet, &Ideal::new(f, 2, vec![x.mul(&x), x.mul(&y)])));
        // I \u{2229} (1) = I
        let all = intersect(&i, &Ideal::unit(f, 2), &mut b).unwrap();
        assert!(eq(&all, &i));
    }

    #[test]
    fn colon_monomial_examples() {
        let (f, x, y) = setup(2);
        let mut b = WorkBudget::default();
        // ((x^2, xy) : (x)) = (x, y)
        let i = Ideal::new(f, 2, vec![x.mul(&x), x.mul(&y)]);
        let c = colon(&i, &Ideal::new(f, 2, vec![x.clone()]), &mut b).unwrap();
        assert!(eq(&c, &Ideal::new(f, 2, vec![x.clone(), y.clone()])));
        // ((x^2 y, x y^2) : (xy)) = (x, y)
        let j = Ideal::new(f, 2, vec![x.mul(&x).mul(&y), x.mul(&y).mul(&y)]);
        let c2 = colon(&j, &Ideal::new(f, 2, vec![x.mul(&y)]), &mut b).unwrap();
        assert!(eq(&c2, &Ideal::new(f, 2, vec![x.clone(), y.clone()])));
        // (I : (1)) = I
        let c3 = colon(&i, &Ideal::unit(f, 2), &mut b).unwrap();
        assert!(eq(&c3, &i));
        // (I : (0)) = (1)
        let c4 = colon(&i, &Ideal::zero(f, 2), &mut b).unwrap();
        assert!(eq(&c4, &Ideal::unit(f, 2)));
    }

    #[test]
    fn colon_into_zero_ideal() {
        // (0 : x) = 0 in a polynomial ring.
        let (f, x, _) = setup(3);
        let mut b = WorkBudget::default();
        let c = colon_single(&Ideal::zero(f, 2), &x, &mut b).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn radical_membership() {
        let (f, x, y) = setup(5);
        let mut b = WorkBudget::default();
        let i = Ideal::new(f, 2, vec![x.mul(&x)]);
        assert!(radical_member(&x, &i, &mut b).unwrap());
        assert!(!radical_member(&y, &i, &mut b).unwrap());
        assert!(radical_member(&y, &Ideal::unit(f, 2), &mut b).unwrap());
    }
}
