//! Presentations R = GF(p)[x_1..x_n]/K of the rings under study.
//!
//! Everything is computed on lifts in the ambient polynomial ring S; an
//! ideal of R is stored through generators of its preimage. The graded
//! maximal ideal is always m = (all variables), and results are read "at
//! the origin": the conditions under test localize, so the graded global
//! computation decides the localized statement there.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{FrobeniusExponent, PrimeField};
use crate::groebner::{reduce_full, Ideal, ReducedGB, WorkBudget};
use crate::ideal_ops;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;

/// Scope qualifier attached to every report interpreted in a quotient.
pub const SCOPE_NOTE: &str = "at the origin; sampled, not a proof of the universal statement";

#[derive(Debug)]
pub struct RingPresentation {
    field: PrimeField,
    vars: Vec<String>,
    defining: Ideal,
    gb_k: Arc<ReducedGB>,
    order: MonomialOrder,
    dim: OnceLock<usize>,
}

/// An element of R, stored as the canonical normal form of a lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RElement {
    repr: Polynomial,
}

impl RElement {
    pub fn repr(&self) -> &Polynomial {
        &self.repr
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }
}

/// An ideal of R, stored as user generators of a lift (K is implicit).
#[derive(Debug, Clone, PartialEq)]
pub struct RIdeal {
    gens: Vec<Polynomial>,
}

impl RIdeal {
    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }
}

impl RingPresentation {
    pub fn new(
        field: PrimeField,
        vars: &[&str],
        k_gens: Vec<Polynomial>,
        order: MonomialOrder,
        budget: &mut WorkBudget,
    ) -> Result<Self> {
        let nvars = vars.len();
        for g in &k_gens {
            if g.nvars() != nvars || g.field() != field {
                return Err(Error::ArityMismatch);
            }
        }
        let defining = Ideal::new(field, nvars, k_gens);
        let gb_k = defining.groebner_basis(&order, budget)?;
        if gb_k.is_unit_ideal() {
            return Err(Error::UnitDefiningIdeal);
        }
        Ok(RingPresentation {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            defining,
            gb_k,
            order,
            dim: OnceLock::new(),
        })
    }

    /// The regular model GF(p)[vars] with K = (0), default grevlex order.
    pub fn polynomial_ring(field: PrimeField, vars: &[&str]) -> Result<Self> {
        Self::new(
            field,
            vars,
            vec![],
            MonomialOrder::GrevLex,
            &mut WorkBudget::default(),
        )
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn defining_ideal(&self) -> &Ideal {
        &self.defining
    }

    pub fn defining_gb(&self) -> &Arc<ReducedGB> {
        &self.gb_k
    }

    pub(crate) fn dim_cache(&self) -> &OnceLock<usize> {
        &self.dim
    }

    pub fn variable(&self, i: usize) -> Polynomial {
        Polynomial::variable(self.field, self.nvars(), i)
    }

    /// The graded maximal ideal m = (all variables).
    pub fn maximal_ideal(&self) -> RIdeal {
        RIdeal {
            gens: (0..self.nvars()).map(|i| self.variable(i)).collect(),
        }
    }

    /// Canonical representative of f in R.
    pub fn element(&self, f: &Polynomial) -> Result<RElement> {
        if f.nvars() != self.nvars() || f.field() != self.field {
            return Err(Error::ArityMismatch);
        }
        Ok(RElement {
            repr: self.gb_k.normal_form(f)?,
        })
    }

    pub fn ideal(&self, gens: Vec<Polynomial>) -> Result<RIdeal> {
        for g in &gens {
            if g.nvars() != self.nvars() || g.field() != self.field {
                return Err(Error::ArityMismatch);
            }
        }
        Ok(RIdeal {
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    /// The full preimage in S: user generators together with K.
    pub fn lift(&self, a: &RIdeal) -> Ideal {
        let mut gens = a.gens.clone();
        gens.extend_from_slice(self.defining.generators());
        Ideal::new(self.field, self.nvars(), gens)
    }

    pub fn r_sum(&self, a: &RIdeal, b: &RIdeal) -> RIdeal {
        let mut gens = a.gens.clone();
        gens.extend_from_slice(&b.gens);
        RIdeal { gens }
    }

    pub fn r_product(&self, a: &RIdeal, b: &RIdeal) -> Result<RIdeal> {
        let mut gens = Vec::new();
        for g in &a.gens {
            for h in &b.gens {
                gens.push(g.checked_mul(h)?);
            }
        }
        Ok(RIdeal { gens })
    }

    /// Bracket power in R: the Frobenius endomorphism of R lifts to
    /// (user generators)^[q] + K.
    pub fn r_bracket_power(&self, a: &RIdeal, q: FrobeniusExponent) -> Result<RIdeal> {
        let gens = a
            .gens
            .iter()
            .map(|g| g.frobenius_pow(q))
            .collect::<Result<Vec<_>>>()?;
        Ok(RIdeal { gens })
    }

    /// (A :_R B), computed as the colon of lifts in S; no K needs to be
    /// re-added because lift(A) already contains it.
    pub fn r_colon(&self, a: &RIdeal, b: &RIdeal, budget: &mut WorkBudget) -> Result<RIdeal> {
        let c = ideal_ops::colon(&self.lift(a), &self.lift(b), budget)?;
        Ok(RIdeal {
            gens: c.generators().to_vec(),
        })
    }

    pub fn r_equal(&self, a: &RIdeal, b: &RIdeal, budget: &mut WorkBudget) -> Result<bool> {
        self.lift(a).equals(&self.lift(b), &self.order, budget)
    }

    /// Membership of an element of R in an ideal of R, via the lift.
    pub fn r_member(&self, f: &Polynomial, a: &RIdeal, budget: &mut WorkBudget) -> Result<bool> {
        self.lift(a).member(f, &self.order, budget)
    }

    /// Generators of `a` reduced modulo K, for display.
    pub fn reduced_generators(&self, a: &RIdeal) -> Vec<Polynomial> {
        a.gens
            .iter()
            .map(|g| reduce_full(g, self.gb_k.basis(), &self.order))
            .filter(|g| !g.is_zero())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// GF(2)[x,y,z]/(xy - z^2), the quadric cone.
    fn quadric_cone(p: u64) -> RingPresentation {
        let f = gf(p);
        let x = Polynomial::variable(f, 3, 0);
        let y = Polynomial::variable(f, 3, 1);
        let z = Polynomial::variable(f, 3, 2);
        RingPresentation::new(
            f,
            &["x", "y", "z"],
            vec![x.mul(&y).sub(&z.mul(&z))],
            MonomialOrder::GrevLex,
            &mut WorkBudget::default(),
        )
        .unwrap()
    }

    #[test]
    fn unit_defining_ideal_rejected() {
        let f = gf(2);
        let one = Polynomial::one(f, 1);
        let err = RingPresentation::new(
            f,
            &["x"],
            vec![one],
            MonomialOrder::GrevLex,
            &mut WorkBudget::default(),
        );
        assert!(matches!(err, Err(Error::UnitDefiningIdeal)));
    }

    #[test]
    fn cone_normal_form() {
        // grevlex x>y>z: LM(xy - z^2) = xy, so NF(xy) = z^2.
        let r = quadric_cone(2);
        let f = r.field();
        let x = r.variable(0);
        let y = r.variable(1);
        let z = r.variable(2);
        let nf = r.element(&x.mul(&y)).unwrap();
        assert_eq!(nf.repr(), &z.mul(&z));
        assert!(r.element(&Polynomial::zero(f, 3)).unwrap().is_zero());
    }

    #[test]
    fn trivial_quotient_is_identity() {
        let f = gf(3);
        let r = RingPresentation::polynomial_ring(f, &["x", "y"]).unwrap();
        let x = r.variable(0);
        let g = x.mul(&x).add(&Polynomial::one(f, 2));
        assert_eq!(r.element(&g).unwrap().repr(), &g);
    }

    #[test]
    fn colon_in_domain_model() {
        // R = GF(3)[x,y]: ((x) : (y)) = (x).
        let f = gf(3);
        let r = RingPresentation::polynomial_ring(f, &["x", "y"]).unwrap();
        let x = r.variable(0);
        let y = r.variable(1);
        let mut b = WorkBudget::default();
        let a = r.ideal(vec![x.clone()]).unwrap();
        let c = r
            .r_colon(&a, &r.ideal(vec![y]).unwrap(), &mut b)
            .unwrap();
        assert!(r.r_equal(&c, &a, &mut b).unwrap());
    }

    #[test]
    fn colon_on_the_cone() {
        // R = GF(2)[x,y,z]/(xy - z^2): ((x) : (z)) = (x, z), because
        // z * z = xy lands in (x).
        let r = quadric_cone(2);
        let x = r.variable(0);
        let z = r.variable(2);
        let mut b = WorkBudget::default();
        let a = r.ideal(vec![x.clone()]).unwrap();
        let c = r
            .r_colon(&a, &r.ideal(vec![z.clone()]).unwrap(), &mut b)
            .unwrap();
        let expect = r.ideal(vec![x, z]).unwrap();
        assert!(r.r_equal(&c, &expect, &mut b).unwrap());
    }

    #[test]
    fn bracket_power_at_q_one() {
        let r = quadric_cone(2);
        let x = r.variable(0);
        let z = r.variable(2);
        let a = r.ideal(vec![x, z]).unwrap();
        let q1 = FrobeniusExponent::new(r.field(), 0).unwrap();
        let br = r.r_bracket_power(&a, q1).unwrap();
        assert!(r
            .r_equal(&br, &a, &mut WorkBudget::default())
            .unwrap());
    }

    #[test]
    fn bracket_power_ignores_lift_representatives() {
        // Replacing a generator g by g + k with k in K must not change
        // the bracket power in R.
        let r = quadric_cone(2);
        let x = r.variable(0);
        let y = r.variable(1);
        let z = r.variable(2);
        let k = x.mul(&y).sub(&z.mul(&z));
        let mut b = WorkBudget::default();
        let a1 = r.ideal(vec![x.clone(), z.clone()]).unwrap();
        let a2 = r.ideal(vec![x.add(&k), z.clone()]).unwrap();
        let q = FrobeniusExponent::new(r.field(), 1).unwrap();
        let b1 = r.r_bracket_power(&a1, q).unwrap();
        let b2 = r.r_bracket_power(&a2, q).unwrap();
        assert!(r.r_equal(&b1, &b2, &mut b).unwrap());
    }

    #[test]
    fn projection_is_a_ring_homomorphism() {
        let r = quadric_cone(2);
        let x = r.variable(0);
        let y = r.variable(1);
        let z = r.variable(2);
        let f = x.mul(&y).add(&z);
        let g = y.mul(&z).add(&x);
        let lhs = r.element(&f.mul(&g)).unwrap();
        let rhs = r
            .element(
                &r.element(&f).unwrap().repr().mul(r.element(&g).unwrap().repr()),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}
