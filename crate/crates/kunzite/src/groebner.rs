//! Buchberger's algorithm, reduced Groebner bases, normal forms,
//! membership, equality and elimination.
//!
//! The reduced basis is the canonical form for ideals: it is uniquely
//! determined by the ideal and the order, so ideal equality is decided by
//! comparing bases element-wise.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

/// Default cap on S-pair reductions per Buchberger run.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Counts S-pair reductions; exceeding the cap aborts with `BudgetExceeded`.
#[derive(Debug, Clone)]
pub struct WorkBudget {
    cap: u64,
    used: u64,
}

impl WorkBudget {
    pub fn new(cap: u64) -> Self {
        WorkBudget { cap, used: 0 }
    }

    pub fn spend(&mut self, amount: u64) -> Result<()> {
        self.used += amount;
        if self.used > self.cap {
            Err(Error::BudgetExceeded(self.used))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

impl Default for WorkBudget {
    fn default() -> Self {
        WorkBudget::new(DEFAULT_BUDGET)
    }
}

/// A reduced Groebner basis: monic, auto-reduced, sorted by leading
/// monomial ascending under its order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGB {
    field: PrimeField,
    nvars: usize,
    basis: Vec<Polynomial>,
    order: MonomialOrder,
}

impl ReducedGB {
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_unit_constant()
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_term(&self.order).expect("basis element nonzero").0)
            .collect()
    }

    /// Fully reduces `f` modulo this basis. The remainder is unique: no
    /// term of it is divisible by any leading monomial of the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.field() != self.field || f.nvars() != self.nvars {
            return Err(Error::OrderMismatch);
        }
        Ok(reduce_full(f, &self.basis, &self.order))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// An ideal given by generators, with a per-order cache of its reduced
/// Groebner basis. The cache fills at most once per order; racing
/// duplicate computations is harmless because the result is canonical.
#[derive(Debug)]
pub struct Ideal {
    field: PrimeField,
    nvars: usize,
    gens: Vec<Polynomial>,
    cache: Mutex<HashMap<MonomialOrder, Arc<ReducedGB>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            field: self.field,
            nvars: self.nvars,
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.nvars == other.nvars && self.gens == other.gens
    }
}

impl Ideal {
    /// Zero generators are dropped; the zero ideal is the empty list.
    pub fn new(field: PrimeField, nvars: usize, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            field,
            nvars,
            gens,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Self::new(field, nvars, vec![])
    }

    pub fn unit(field: PrimeField, nvars: usize) -> Self {
        let one = Polynomial::one(field, nvars);
        Self::new(field, nvars, vec![one])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn groebner_basis(
        &self,
        order: &MonomialOrder,
        budget: &mut WorkBudget,
    ) -> Result<Arc<ReducedGB>> {
        if let Some(gb) = self.cache.lock().unwrap().get(order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(buchberger(
            self.field,
            self.nvars,
            &self.gens,
            order,
            budget,
        )?);
        self.cache
            .lock()
            .unwrap()
            .entry(order.clone())
            .or_insert_with(|| gb.clone());
        Ok(gb)
    }

    pub fn member(
        &self,
        f: &Polynomial,
        order: &MonomialOrder,
        budget: &mut WorkBudget,
    ) -> Result<bool> {
        self.groebner_basis(order, budget)?.contains(f)
    }

    pub fn equals(
        &self,
        other: &Ideal,
        order: &MonomialOrder,
        budget: &mut WorkBudget,
    ) -> Result<bool> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::ArityMismatch);
        }
        let a = self.groebner_basis(order, budget)?;
        let b = other.groebner_basis(order, budget)?;
        Ok(a.basis() == b.basis())
    }

    /// Generators of the contraction to the subring without `drop_vars`,
    /// computed through a block elimination order.
    pub fn eliminate(&self, drop_vars: &[bool], budget: &mut WorkBudget) -> Result<Ideal> {
        assert_eq!(drop_vars.len(), self.nvars);
        if drop_vars.iter().all(|&d| !d) {
            let gb = self.groebner_basis(&MonomialOrder::GrevLex, budget)?;
            return Ok(Ideal::new(self.field, self.nvars, gb.basis().to_vec()));
        }
        let order = MonomialOrder::Elimination {
            high: drop_vars.to_vec(),
        };
        let gb = self.groebner_basis(&order, budget)?;
        let kept = gb
            .basis()
            .iter()
            .filter(|g| {
                g.terms()
                    .all(|(m, _)| m.support().all(|i| !drop_vars[i]))
            })
            .cloned()
            .collect();
        Ok(Ideal::new(self.field, self.nvars, kept))
    }
}

/// Full multivariate division: reduces every term of `f` against the
/// leading terms of `basis`, largest term first.
pub fn reduce_full(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let field = f.field();
    let leads: Vec<(Monomial, u64)> = basis
        .iter()
        .filter_map(|g| g.leading_term(order).map(|(m, c)| (m.clone(), c)))
        .collect();
    let mut h = f.clone();
    let mut rem = Polynomial::zero(field, f.nvars());
    'outer: while let Some((m, c)) = h.leading_term(order).map(|(m, c)| (m.clone(), c)) {
        for (g, (lm, lc)) in basis.iter().zip(&leads) {
            if lm.divides(&m) {
                let quot = lm.div(&m).expect("divisibility checked");
                let factor = field.mul(c, field.inv(*lc).expect("leading coeff nonzero"));
                h = h.sub(&g.mul_term(&quot, factor).expect("degree shrinks"));
                continue 'outer;
            }
        }
        // Leading term irreducible: move it to the remainder.
        let t = Polynomial::from_terms(field, f.nvars(), [(m.clone(), c)]);
        rem = rem.add(&t);
        h = h.sub(&t);
    }
    rem
}

fn s_polynomial(
    f: &Polynomial,
    g: &Polynomial,
    order: &MonomialOrder,
) -> Result<Polynomial> {
    let field = f.field();
    let (lmf, lcf) = f.leading_term(order).expect("nonzero");
    let (lmg, lcg) = g.leading_term(order).expect("nonzero");
    let l = lmf.lcm(lmg);
    let uf = lmf.div(&l).expect("lcm divisible");
    let ug = lmg.div(&l).expect("lcm divisible");
    let a = f.mul_term(&uf, field.inv(lcf)?)?;
    let b = g.mul_term(&ug, field.inv(lcg)?)?;
    Ok(a.sub(&b))
}

/// Buchberger's algorithm with the normal pair-selection strategy
/// (minimal lcm degree first) and the product and chain criteria,
/// followed by minimalization and autoreduction.
pub fn buchberger(
    field: PrimeField,
    nvars: usize,
    gens: &[Polynomial],
    order: &MonomialOrder,
    budget: &mut WorkBudget,
) -> Result<ReducedGB> {
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    // Deterministic starting point regardless of input permutation.
    basis.sort_by(|a, b| {
        let la = a.leading_term(order).unwrap().0;
        let lb = b.leading_term(order).unwrap().0;
        order
            .cmp_unchecked(la, lb)
            .then_with(|| a.num_terms().cmp(&b.num_terms()))
            .then_with(|| poly_storage_cmp(a, b))
    });
    basis.dedup();

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 1..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }

    while !pairs.is_empty() {
        // Normal strategy: minimal lcm degree, ties by order then index.
        let lcm_of = |&(i, j): &(usize, usize)| -> Monomial {
            let li = basis[i].leading_term(order).unwrap().0;
            let lj = basis[j].leading_term(order).unwrap().0;
            li.lcm(lj)
        };
        let mut best = 0;
        let mut best_lcm = lcm_of(&pairs[0]);
        for (idx, pr) in pairs.iter().enumerate().skip(1) {
            let l = lcm_of(pr);
            let better = match l.degree().cmp(&best_lcm.degree()) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => {
                    match order.cmp_unchecked(&l, &best_lcm) {
                        Ordering::Less => true,
                        Ordering::Greater => false,
                        Ordering::Equal => pr < &pairs[best],
                    }
                }
            };
            if better {
                best = idx;
                best_lcm = l;
            }
        }
        let (i, j) = pairs.swap_remove(best);
        let li = basis[i].leading_term(order).unwrap().0.clone();
        let lj = basis[j].leading_term(order).unwrap().0.clone();
        let lcm = li.lcm(&lj);

        // Product criterion: coprime leading monomials.
        if lcm == li.mul(&lj)? {
            continue;
        }
        // Chain criterion: some k divides the lcm and both other pairs
        // are no longer pending.
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k]
                    .leading_term(order)
                    .map(|(lm, _)| lm.divides(&lcm))
                    .unwrap_or(false)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        budget.spend(1)?;
        let s = s_polynomial(&basis[i], &basis[j], order)?;
        let r = reduce_full(&s, &basis, order);
        if !r.is_zero() {
            let n = basis.len();
            basis.push(r);
            for i in 0..n {
                pairs.push((i, n));
            }
        }
    }

    // Minimalize: drop elements whose leading monomial is divisible by
    // another surviving leading monomial.
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading_term(order).unwrap().0.clone())
        .collect();
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j && keep[j] && leads[j].divides(&leads[i]) {
                if leads[j] == leads[i] && j > i {
                    continue;
                }
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<Polynomial> = basis
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(g, _)| g)
        .collect();

    // Autoreduce tails and make monic.
    let mut reduced = Vec::with_capacity(minimal.len());
    for (idx, g) in minimal.iter().enumerate() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, h)| h.clone())
            .collect();
        let r = reduce_full(g, &others, order);
        reduced.push(r.make_monic(order)?);
    }
    reduced.sort_by(|a, b| {
        order.cmp_unchecked(
            a.leading_term(order).unwrap().0,
            b.leading_term(order).unwrap().0,
        )
    });

    Ok(ReducedGB {
        field,
        nvars,
        basis: reduced,
        order: order.clone(),
    })
}

fn poly_storage_cmp(a: &Polynomial, b: &Polynomial) -> Ordering {
    let ta: Vec<_> = a.terms().collect();
    let tb: Vec<_> = b.terms().collect();
    ta.cmp(&tb)
}
