//! Shared helpers for the integration suites: independent oracles
//! (Macaulay-matrix membership, combinatorial monomial-ideal calculus,
//! brute-force colength) and seeded random generators. Nothing here
//! calls the Gröbner engine, so agreement is meaningful.

#![allow(dead_code)]

use kunzite::field::PrimeField;
use kunzite::groebner::Ideal;
use kunzite::monomial::Monomial;
use kunzite::poly::Polynomial;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// All monomials over `nvars` variables of total degree <= `cap`.
pub fn monomials_up_to(nvars: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, cap, &mut cur, &mut out);
    out
}

/// Row space rank over GF(p) via Gaussian elimination; mutates `rows`
/// into echelon pivots and returns them.
fn echelon(field: PrimeField, rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let mut pivots: Vec<Vec<u64>> = Vec::new();
    for mut row in rows {
        for p in &pivots {
            let lead = p.iter().position(|&c| c != 0).unwrap();
            if row[lead] != 0 {
                let factor = row[lead];
                for (r, &pc) in row.iter_mut().zip(p.iter()) {
                    *r = field.sub(*r, field.mul(factor, pc));
                }
            }
        }
        if let Some(lead) = row.iter().position(|&c| c != 0) {
            let inv = field.inv(row[lead]).unwrap();
            for r in row.iter_mut() {
                *r = field.mul(*r, inv);
            }
            let _ = lead;
            pivots.push(row);
        }
    }
    pivots
}

fn reduce_against(field: PrimeField, pivots: &[Vec<u64>], mut row: Vec<u64>) -> Vec<u64> {
    for p in pivots {
        let lead = p.iter().position(|&c| c != 0).unwrap();
        if row[lead] != 0 {
            let factor = row[lead];
            for (r, &pc) in row.iter_mut().zip(p.iter()) {
                *r = field.sub(*r, field.mul(factor, pc));
            }
        }
    }
    row
}

fn poly_to_row(f: &Polynomial, index: &std::collections::HashMap<Vec<u32>, usize>) -> Option<Vec<u64>> {
    let mut row = vec![0u64; index.len()];
    for (m, c) in f.terms() {
        let k = index.get(m.exps())?;
        row[*k] = c;
    }
    Some(row)
}

/// Bounded-degree membership oracle: is f a combination sum h_i g_i
/// with every product of degree <= `deg_cap`? Pure linear algebra on
/// the Macaulay matrix; one-sided complete up to the degree cap.
pub fn macaulay_member(f: &Polynomial, gens: &[Polynomial], deg_cap: u32) -> bool {
    if f.is_zero() {
        return true;
    }
    let field = f.field();
    let nvars = f.nvars();
    let monos = monomials_up_to(nvars, deg_cap);
    let index: std::collections::HashMap<Vec<u32>, usize> = monos
        .iter()
        .enumerate()
        .map(|(k, m)| (m.clone(), k))
        .collect();
    let mut rows = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let dg = g.total_degree().unwrap() as u32;
        if dg > deg_cap {
            continue;
        }
        for m in monomials_up_to(nvars, deg_cap - dg) {
            let shifted = g
                .mul_term(&Monomial::new(m), 1)
                .expect("product within degree cap");
            if let Some(row) = poly_to_row(&shifted, &index) {
                rows.push(row);
            }
        }
    }
    let pivots = echelon(field, rows);
    match poly_to_row(f, &index) {
        Some(row) => reduce_against(field, &pivots, row).iter().all(|&c| c == 0),
        None => false, // degree of f exceeds the cap
    }
}

/// Colength of S/I by linear algebra, verified stable under raising the
/// degree cap; panics if the cap does not certify finiteness.
pub fn brute_force_colength(field: PrimeField, nvars: usize, gens: &[Polynomial], cap: u32) -> u64 {
    let dim_at = |cap: u32| -> u64 {
        let monos = monomials_up_to(nvars, cap);
        let index: std::collections::HashMap<Vec<u32>, usize> = monos
            .iter()
            .enumerate()
            .map(|(k, m)| (m.clone(), k))
            .collect();
        let mut rows = Vec::new();
        for g in gens {
            let dg = g.total_degree().unwrap() as u32;
            for m in monomials_up_to(nvars, cap - dg) {
                let shifted = g.mul_term(&Monomial::new(m), 1).unwrap();
                rows.push(poly_to_row(&shifted, &index).unwrap());
            }
        }
        let rank = echelon(field, rows).len() as u64;
        monos.len() as u64 - rank
    };
    let a = dim_at(cap);
    let b = dim_at(cap + 1);
    assert_eq!(a, b, "colength not stable at degree cap {}", cap);
    a
}

/// A monomial ideal as a set of exponent vectors.
#[derive(Debug, Clone)]
pub struct MonIdeal {
    pub gens: Vec<Vec<u32>>,
}

impl MonIdeal {
    pub fn member(&self, m: &[u32]) -> bool {
        self.gens
            .iter()
            .any(|g| g.iter().zip(m).all(|(a, b)| a <= b))
    }

    /// (I : J) = intersection over n in J of { max(g - n, 0) : g in I }.
    pub fn colon(&self, other: &MonIdeal) -> MonIdeal {
        let mut acc: Option<MonIdeal> = None;
        for n in &other.gens {
            let part = MonIdeal {
                gens: self
                    .gens
                    .iter()
                    .map(|g| g.iter().zip(n).map(|(a, b)| a.saturating_sub(*b)).collect())
                    .collect(),
            };
            acc = Some(match acc {
                None => part,
                Some(prev) => prev.intersect(&part),
            });
        }
        acc.expect("colon by the empty ideal")
    }

    /// I ∩ J = ({ lcm(g, h) }).
    pub fn intersect(&self, other: &MonIdeal) -> MonIdeal {
        let mut gens = Vec::new();
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.iter().zip(h).map(|(a, b)| *a.max(b)).collect());
            }
        }
        MonIdeal { gens }
    }

    pub fn bracket(&self, q: u32) -> MonIdeal {
        MonIdeal {
            gens: self
                .gens
                .iter()
                .map(|g| g.iter().map(|e| e * q).collect())
                .collect(),
        }
    }

    pub fn to_ideal(&self, field: PrimeField, nvars: usize) -> Ideal {
        let gens = self
            .gens
            .iter()
            .map(|g| Polynomial::from_terms(field, nvars, [(Monomial::new(g.clone()), 1)]))
            .collect();
        Ideal::new(field, nvars, gens)
    }
}

/// Random polynomial with 1..=max_terms terms of degree 1..=deg, nonzero
/// coefficients.
pub fn random_poly(
    field: PrimeField,
    nvars: usize,
    deg: u32,
    max_terms: usize,
    rng: &mut ChaCha8Rng,
) -> Polynomial {
    let p = field.characteristic();
    loop {
        let nterms = rng.gen_range(1..=max_terms);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let d = rng.gen_range(1..=deg);
            let mut exps = vec![0u32; nvars];
            for _ in 0..d {
                exps[rng.gen_range(0..nvars)] += 1;
            }
            let c = if p == 2 { 1 } else { rng.gen_range(1..p) };
            terms.push((Monomial::new(exps), c));
        }
        let f = Polynomial::from_terms(field, nvars, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

pub fn random_mon_ideal(nvars: usize, deg: u32, max_gens: usize, rng: &mut ChaCha8Rng) -> MonIdeal {
    let ngens = rng.gen_range(1..=max_gens);
    let gens = (0..ngens)
        .map(|_| {
            let d = rng.gen_range(1..=deg);
            let mut exps = vec![0u32; nvars];
            for _ in 0..d {
                exps[rng.gen_range(0..nvars)] += 1;
            }
            exps
        })
        .collect();
    MonIdeal { gens }
}
