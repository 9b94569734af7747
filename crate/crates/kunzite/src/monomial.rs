//! Exponent-vector monomials and monomial orders.
//!
//! Monomials carry one exponent per ambient variable. The derived `Ord` on
//! `Monomial` is a storage order only (plain lexicographic on the exponent
//! vector); semantic comparisons always go through a [`MonomialOrder`].

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        if self.nvars() != other.nvars() {
            return Err(Error::ArityMismatch);
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    pub fn pow(&self, n: u32) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .map(|&a| a.checked_mul(n).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.nvars() == other.nvars()
            && self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// `other / self`, defined only when `self` divides `other`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(&b, &a)| b - a)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    /// Indices of variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Appends `k` fresh variables with exponent zero.
    pub fn extend_vars(&self, k: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat(0).take(k));
        Monomial { exps }
    }

    /// Drops the last variable; its exponent must be zero.
    pub fn drop_last_var(&self) -> Monomial {
        debug_assert_eq!(*self.exps.last().unwrap(), 0);
        Monomial {
            exps: self.exps[..self.exps.len() - 1].to_vec(),
        }
    }
}

/// A total, multiplicative well-order on monomials. The ring's variable
/// list fixes the precedence: the first variable is the highest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    GrevLex,
    /// Block elimination order: variables flagged `true` form the high
    /// block, compared first (grevlex within each block).
    Elimination { high: Vec<bool> },
}

fn lex_cmp(u: &[u32], v: &[u32]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        match a.cmp(b) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(u: &[u32], v: &[u32]) -> Ordering {
    let du: u64 = u.iter().map(|&e| e as u64).sum();
    let dv: u64 = v.iter().map(|&e| e as u64).sum();
    match du.cmp(&dv) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Equal degree: last variable with differing exponent, smaller wins.
    for (a, b) in u.iter().zip(v.iter()).rev() {
        match a.cmp(b) {
            Ordering::Equal => continue,
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, u: &Monomial, v: &Monomial) -> Result<Ordering> {
        if u.nvars() != v.nvars() {
            return Err(Error::ArityMismatch);
        }
        Ok(self.cmp_unchecked(u, v))
    }

    pub fn cmp_unchecked(&self, u: &Monomial, v: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex_cmp(u.exps(), v.exps()),
            MonomialOrder::GrLex => match u.degree().cmp(&v.degree()) {
                Ordering::Equal => lex_cmp(u.exps(), v.exps()),
                ord => ord,
            },
            MonomialOrder::GrevLex => grevlex_cmp(u.exps(), v.exps()),
            MonomialOrder::Elimination { high } => {
                let pick = |m: &Monomial, flag: bool| -> Vec<u32> {
                    m.exps()
                        .iter()
                        .zip(high)
                        .filter(|(_, &h)| h == flag)
                        .map(|(&e, _)| e)
                        .collect()
                };
                match grevlex_cmp(&pick(u, true), &pick(v, true)) {
                    Ordering::Equal => grevlex_cmp(&pick(u, false), &pick(v, false)),
                    ord => ord,
                }
            }
        }
    }

    /// The order used inside an elimination block when the fresh variable
    /// sits last and highest.
    pub fn eliminate_last(nvars: usize) -> MonomialOrder {
        let mut high = vec![false; nvars];
        high[nvars - 1] = true;
        MonomialOrder::Elimination { high }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::GrLex => "grlex",
            MonomialOrder::GrevLex => "grevlex",
            MonomialOrder::Elimination { .. } => "elimination",
        }
    }

    pub fn from_name(name: &str) -> Option<MonomialOrder> {
        match name {
            "lex" => Some(MonomialOrder::Lex),
            "grlex" => Some(MonomialOrder::GrLex),
            "grevlex" => Some(MonomialOrder::GrevLex),
            _ => None,
        }
    }
}
