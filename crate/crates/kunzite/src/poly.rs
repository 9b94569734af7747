//! Sparse multivariate polynomials over GF(p).
//!
//! Terms live in a `BTreeMap` keyed by the storage order on exponent
//! vectors, so the representation is canonical and independent of any
//! monomial order. Leading terms with respect to an active order are
//! computed on demand.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{FrobeniusExponent, PrimeField};
use crate::monomial::{Monomial, MonomialOrder};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: PrimeField,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl Polynomial {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, nvars: usize, c: u64) -> Self {
        let mut p = Self::zero(field, nvars);
        let c = c % field.characteristic();
        if c != 0 {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(field: PrimeField, nvars: usize) -> Self {
        Self::constant(field, nvars, 1)
    }

    pub fn variable(field: PrimeField, nvars: usize, i: usize) -> Self {
        let mut p = Self::zero(field, nvars);
        p.terms.insert(Monomial::var(nvars, i), 1);
        p
    }

    pub fn from_terms<I>(field: PrimeField, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u64)>,
    {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            p.add_term(&m, c);
        }
        p
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// True when the polynomial is a nonzero constant.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn same_ring(&self, other: &Polynomial) -> bool {
        self.field == other.field && self.nvars == other.nvars
    }

    fn add_term(&mut self, m: &Monomial, c: u64) {
        let c = c % self.field.characteristic();
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert(0);
        *entry = self.field.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(m);
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        if !self.same_ring(other) {
            return Err(Error::ArityMismatch);
        }
        Ok(self.add(other))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if !self.same_ring(other) {
            return Err(Error::ArityMismatch);
        }
        self.try_mul(other)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(self.same_ring(other));
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(self.same_ring(other));
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m, self.field.neg(c));
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, &c) in &self.terms {
            out.terms.insert(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let c = c % self.field.characteristic();
        let mut out = Polynomial::zero(self.field, self.nvars);
        if c == 0 {
            return out;
        }
        for (m, &a) in &self.terms {
            out.terms.insert(m.clone(), self.field.mul(a, c));
        }
        out
    }

    /// Multiplies by the single term `c * mono`.
    pub fn mul_term(&self, mono: &Monomial, c: u64) -> Result<Polynomial> {
        let c = c % self.field.characteristic();
        let mut out = Polynomial::zero(self.field, self.nvars);
        if c == 0 {
            return Ok(out);
        }
        for (m, &a) in &self.terms {
            out.terms.insert(m.mul(mono)?, self.field.mul(a, c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        debug_assert!(self.same_ring(other));
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, &a) in &self.terms {
            for (n, &b) in &other.terms {
                out.add_term(&m.mul(n)?, self.field.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.try_mul(other).expect("exponent overflow")
    }

    /// The q-th power for q = p^e, computed term-wise: in characteristic p
    /// the Frobenius map is a ring endomorphism, so f^q = sum c_i^q m_i^q.
    pub fn frobenius_pow(&self, q: FrobeniusExponent) -> Result<Polynomial> {
        let qv = q.q();
        let mut out = Polynomial::zero(self.field, self.nvars);
        for (m, &c) in &self.terms {
            let n = m.pow(u32::try_from(qv).map_err(|_| Error::ExponentOverflow)?)?;
            out.terms.insert(n, self.field.pow(c, qv));
        }
        Ok(out)
    }

    /// Leading term under the given order; `None` for the zero polynomial.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, u64)> {
        self.terms
            .iter()
            .max_by(|(m, _), (n, _)| order.cmp_unchecked(m, n))
            .map(|(m, &c)| (m, c))
    }

    pub fn make_monic(&self, order: &MonomialOrder) -> Result<Polynomial> {
        match self.leading_term(order) {
            None => Ok(self.clone()),
            Some((_, c)) => {
                let inv = self.field.inv(c)?;
                Ok(self.scale(inv))
            }
        }
    }

    /// Terms sorted descending under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, u64)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, &c)| (m.clone(), c)).collect();
        v.sort_by(|(m, _), (n, _)| order.cmp_unchecked(n, m));
        v
    }

    /// Appends `k` fresh variables (exponent zero everywhere).
    pub fn extend_vars(&self, k: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.nvars + k);
        for (m, &c) in &self.terms {
            out.terms.insert(m.extend_vars(k), c);
        }
        out
    }

    /// Drops the last variable; every term must be free of it.
    pub fn drop_last_var(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.field, self.nvars - 1);
        for (m, &c) in &self.terms {
            out.terms.insert(m.drop_last_var(), c);
        }
        out
    }

    /// True when the last variable appears in no term.
    pub fn free_of_last_var(&self) -> bool {
        self.terms.keys().all(|m| m.exps()[self.nvars - 1] == 0)
    }

    /// Renders with the given variable names: explicit `*` and `^`,
    /// coefficients in [0, p), terms descending under `order`.
    pub fn render(&self, vars: &[&str], order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.sorted_terms(order) {
            let mut factors = Vec::new();
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].to_string()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            let part = if factors.is_empty() {
                format!("{}", c)
            } else if c == 1 {
                factors.join("*")
            } else {
                format!("{}*{}", c, factors.join("*"))
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}
