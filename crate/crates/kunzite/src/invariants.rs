//! Numerical invariants of graded quotients: Krull dimension, lengths,
//! minimal generator counts, generator-growth series and Hilbert-Kunz
//! colengths.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::FrobeniusExponent;
use crate::groebner::WorkBudget;
use crate::ideal_ops;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::quotient::{RIdeal, RingPresentation};
use crate::rational::Rational;

/// Krull dimension of S/K, read combinatorially off the leading-term
/// ideal of K: the largest set U of variables such that no leading
/// monomial is supported entirely inside U.
pub fn krull_dim(ring: &RingPresentation) -> usize {
    *ring.dim_cache().get_or_init(|| {
        let n = ring.nvars();
        let order = ring.order().clone();
        let supports: Vec<u64> = ring
            .defining_gb()
            .basis()
            .iter()
            .map(|g| {
                let lm = g.leading_term(&order).expect("basis element nonzero").0;
                lm.support().fold(0u64, |acc, i| acc | (1 << i))
            })
            .collect();
        let mut best = 0;
        for mask in 0u64..(1 << n) {
            if supports.iter().any(|&s| s & !mask == 0) {
                continue;
            }
            best = best.max(mask.count_ones() as usize);
        }
        best
    })
}

/// Certifies that the radical of lift(I) is the graded maximal ideal,
/// i.e. every variable is nilpotent modulo the lift. This is exactly the
/// condition under which the colength below is finite.
pub fn is_origin_primary(
    ring: &RingPresentation,
    i: &RIdeal,
    budget: &mut WorkBudget,
) -> Result<bool> {
    let lift = ring.lift(i);
    for v in 0..ring.nvars() {
        let x = ring.variable(v);
        if !ideal_ops::radical_member(&x, &lift, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The colength lambda(R/I) at the origin: the number of monomials not
/// divisible by any leading monomial of the reduced basis of lift(I).
pub fn length(ring: &RingPresentation, i: &RIdeal, budget: &mut WorkBudget) -> Result<u64> {
    if !is_origin_primary(ring, i, budget)? {
        return Err(Error::NotPrimaryAtOrigin);
    }
    length_unchecked(ring, i, budget)
}

/// Colength without the primary certificate; callers must know the
/// quotient is finite (e.g. the unit ideal, or an already-checked one).
pub fn length_unchecked(
    ring: &RingPresentation,
    i: &RIdeal,
    budget: &mut WorkBudget,
) -> Result<u64> {
    let gb = ring.lift(i).groebner_basis(ring.order(), budget)?;
    if gb.is_unit_ideal() {
        return Ok(0);
    }
    let leads: Vec<Monomial> = gb.leading_monomials().into_iter().cloned().collect();
    let n = ring.nvars();
    // Per-variable bound: the smallest pure power of each variable in
    // the leading-term ideal. Existence is the primary certificate.
    let mut bounds = vec![None::<u32>; n];
    for lm in &leads {
        let mut support = lm.support();
        if let (Some(v), None) = (support.next(), support.next()) {
            let e = lm.exps()[v];
            bounds[v] = Some(bounds[v].map_or(e, |b: u32| b.min(e)));
        }
    }
    let bounds: Vec<u32> = bounds
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::NotPrimaryAtOrigin)?;

    let mut count = 0u64;
    let mut exps = vec![0u32; n];
    'outer: loop {
        let m = Monomial::new(exps.clone());
        if !leads.iter().any(|lm| lm.divides(&m)) {
            count += 1;
        }
        // odometer over the box below the bounds
        for v in 0..n {
            exps[v] += 1;
            if exps[v] < bounds[v] {
                continue 'outer;
            }
            exps[v] = 0;
        }
        break;
    }
    Ok(count)
}

/// mu(I) = dim_k I/mI by graded Nakayama: the k-rank of the user
/// generators' normal forms modulo mI + K.
pub fn min_generators(
    ring: &RingPresentation,
    i: &RIdeal,
    budget: &mut WorkBudget,
) -> Result<u64> {
    for g in i.generators() {
        if !g.is_homogeneous() {
            return Err(Error::NonHomogeneousInput);
        }
    }
    let mi = ring.r_product(&ring.maximal_ideal(), i)?;
    let gb = ring.lift(&mi).groebner_basis(ring.order(), budget)?;
    let forms = i
        .generators()
        .iter()
        .map(|g| gb.normal_form(g))
        .collect::<Result<Vec<_>>>()?;
    Ok(rank(ring, forms))
}

/// Row rank of a family of polynomials viewed as coefficient vectors.
fn rank(ring: &RingPresentation, rows: Vec<Polynomial>) -> u64 {
    let field = ring.field();
    let order = ring.order().clone();
    let mut pivots: Vec<Polynomial> = Vec::new();
    for mut row in rows {
        loop {
            let Some((lm, lc)) = row.leading_term(&order).map(|(m, c)| (m.clone(), c)) else {
                break;
            };
            let hit = pivots.iter().find(|p| {
                p.leading_term(&order).map(|(m, _)| m == &lm).unwrap_or(false)
            });
            match hit {
                Some(p) => {
                    let pc = p.leading_term(&order).unwrap().1;
                    let factor = field.mul(lc, field.inv(pc).expect("pivot nonzero"));
                    row = row.sub(&p.scale(factor));
                }
                None => break,
            }
        }
        if !row.is_zero() {
            pivots.push(row);
        }
    }
    pivots.len() as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignedRational {
    pub num: i64,
    pub den: u64,
}

/// A polynomial in n with exact rational coefficients, ascending powers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FittedPolynomial {
    pub coeffs: Vec<SignedRational>,
}

impl FittedPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, n: u32) -> Option<i64> {
        let mut num = 0i128;
        let mut den = 1i128;
        for c in self.coeffs.iter().rev() {
            // Horner over a common denominator.
            num = num * n as i128 * c.den as i128 + c.num as i128 * den;
            den *= c.den as i128;
            let g = gcd128(num.unsigned_abs(), den.unsigned_abs()).max(1);
            num /= g as i128;
            den /= g as i128;
        }
        if den != 1 {
            return None;
        }
        i64::try_from(num).ok()
    }

    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.num == 0 {
                continue;
            }
            let coeff = if c.den == 1 {
                format!("{}", c.num)
            } else {
                format!("{}/{}", c.num, c.den)
            };
            let part = match k {
                0 => coeff,
                1 if coeff == "1" => "n".to_string(),
                1 => format!("{}*n", coeff),
                _ if coeff == "1" => format!("n^{}", k),
                _ => format!("{}*n^{}", coeff, k),
            };
            parts.push(part);
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorGrowthReport {
    /// (n, mu(I^n)) for n = 1..n_max.
    pub mu_values: Vec<(u32, u64)>,
    pub fitted_poly: Option<FittedPolynomial>,
    /// Inclusive n-range on which the fit matches exactly.
    pub fit_window: Option<(u32, u32)>,
    /// deg(H) + 1 when a fit exists.
    pub spread_estimate: Option<u32>,
}

/// Newton forward-difference interpolation of the integer sequence
/// `values` starting at argument `n0`, as an exact rational polynomial.
fn newton_fit(n0: u32, values: &[i128]) -> FittedPolynomial {
    // difference table
    let mut diffs: Vec<Vec<i128>> = vec![values.to_vec()];
    while diffs.last().unwrap().len() > 1 {
        let prev = diffs.last().unwrap();
        diffs.push(prev.windows(2).map(|w| w[1] - w[0]).collect());
    }
    let deg = diffs
        .iter()
        .rposition(|row| row.iter().any(|&v| v != 0))
        .unwrap_or(0);
    // H(n) = sum_k diffs[k][0] * C(n - n0, k)
    let mut acc: Vec<(i128, i128)> = vec![(0, 1); deg + 1]; // (num, den) per power
    for (k, row) in diffs.iter().enumerate().take(deg + 1) {
        let c = row[0];
        if c == 0 {
            continue;
        }
        // expand prod_{j=0}^{k-1} (n - n0 - j)
        let mut poly = vec![0i128; k + 1];
        poly[0] = 1;
        let mut cur_deg = 0;
        for j in 0..k {
            let shift = -(n0 as i128) - j as i128;
            let mut next = vec![0i128; cur_deg + 2];
            for (d, &co) in poly.iter().enumerate().take(cur_deg + 1) {
                next[d + 1] += co;
                next[d] += co * shift;
            }
            poly = next;
            cur_deg += 1;
        }
        let fact: i128 = (1..=k as i128).product::<i128>().max(1);
        for (d, &co) in poly.iter().enumerate() {
            let (n, dn) = acc[d];
            // n/dn + c*co/fact
            let nn = n * fact + c * co * dn;
            let nd = dn * fact;
            let g = gcd128(nn.unsigned_abs(), nd.unsigned_abs()).max(1) as i128;
            acc[d] = (nn / g, nd / g);
        }
    }
    let coeffs = acc
        .into_iter()
        .map(|(n, d)| {
            let (n, d) = if d < 0 { (-n, -d) } else { (n, d) };
            SignedRational {
                num: i64::try_from(n).expect("fit coefficient fits i64"),
                den: u64::try_from(d).expect("fit denominator fits u64"),
            }
        })
        .collect();
    FittedPolynomial { coeffs }
}

/// mu(I^n) for n = 1..n_max with an exact polynomial fit over the
/// longest stable tail. No fit is reported unless a tail of length
/// deg + 2 matches exactly; the growth is eventually polynomial but the
/// threshold is not known in advance.
pub fn mu_series(
    ring: &RingPresentation,
    i: &RIdeal,
    n_max: u32,
    budget: &mut WorkBudget,
) -> Result<GeneratorGrowthReport> {
    assert!(n_max >= 4, "n_max must be at least 4");
    let mut mu_values = Vec::new();
    for n in 1..=n_max {
        let pow_lift = ideal_ops::power(
            &crate::groebner::Ideal::new(ring.field(), ring.nvars(), i.generators().to_vec()),
            n,
        )?;
        let pow = ring.ideal(pow_lift.generators().to_vec())?;
        let mu = min_generators(ring, &pow, budget)?;
        mu_values.push((n, mu));
    }

    let vals: Vec<i128> = mu_values.iter().map(|&(_, v)| v as i128).collect();
    let mut fitted = None;
    let mut window = None;
    for s in 0..vals.len().saturating_sub(1) {
        let tail = &vals[s..];
        let n0 = (s + 1) as u32;
        let h = newton_fit(n0, tail);
        if tail.len() >= h.degree() + 2 {
            fitted = Some(h);
            window = Some((n0, n_max));
            break;
        }
    }
    let spread = fitted.as_ref().map(|h| h.degree() as u32 + 1);
    Ok(GeneratorGrowthReport {
        mu_values,
        fitted_poly: fitted,
        fit_window: window,
        spread_estimate: spread,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct HKRow {
    pub e: u32,
    pub q: u64,
    pub lambda: u64,
    pub ratio: Rational,
}

#[derive(Debug, Clone, Serialize)]
pub struct HKSeries {
    pub rows: Vec<HKRow>,
    pub d: usize,
    /// The last computed ratio; no extrapolation toward the limit.
    pub e_hk_estimate: Rational,
    /// Kunz: regular exactly when lambda = q^d for the computed q.
    pub regular_flag: bool,
}

/// Colengths lambda(R/m^[q]) for q = p^e, e = 1..e_max, with exact
/// ratios lambda/q^d.
pub fn hk_series(
    ring: &RingPresentation,
    e_max: u32,
    budget: &mut WorkBudget,
) -> Result<HKSeries> {
    assert!(e_max >= 1, "e_max must be at least 1");
    let d = krull_dim(ring);
    let m = ring.maximal_ideal();
    let mut rows = Vec::new();
    let mut regular = true;
    for e in 1..=e_max {
        let q = FrobeniusExponent::new(ring.field(), e)?;
        let mq = ring.r_bracket_power(&m, q)?;
        let lambda = length_unchecked(ring, &mq, budget)?;
        let qd = q
            .q()
            .checked_pow(d as u32)
            .ok_or(Error::ExponentOverflow)?;
        if lambda != qd {
            regular = false;
        }
        rows.push(HKRow {
            e,
            q: q.q(),
            lambda,
            ratio: Rational::new(lambda, qd),
        });
    }
    let estimate = rows.last().unwrap().ratio;
    Ok(HKSeries {
        rows,
        d,
        e_hk_estimate: estimate,
        regular_flag: regular,
    })
}

/// Kunz's criterion: R is regular at the origin iff
/// lambda(R/m^[q]) = q^d for one (equivalently every) q = p^e, e >= 1.
pub fn kunz_regular_test(
    ring: &RingPresentation,
    e: u32,
    budget: &mut WorkBudget,
) -> Result<bool> {
    assert!(e >= 1, "Kunz test needs e >= 1");
    let d = krull_dim(ring);
    let q = FrobeniusExponent::new(ring.field(), e)?;
    let mq = ring.r_bracket_power(&ring.maximal_ideal(), q)?;
    let lambda = length_unchecked(ring, &mq, budget)?;
    let qd = q.q().checked_pow(d as u32).ok_or(Error::ExponentOverflow)?;
    Ok(lambda == qd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::monomial::MonomialOrder;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly_ring(p: u64, vars: &[&str]) -> RingPresentation {
        RingPresentation::polynomial_ring(gf(p), vars).unwrap()
    }

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
    fn krull_dimension() {
        assert_eq!(krull_dim(&poly_ring(2, &["x", "y"])), 2);
        // hypersurface drops dimension by one
        assert_eq!(krull_dim(&quadric_cone(2)), 2);
        // K = m gives the field
        let f = gf(2);
        let r = RingPresentation::new(
            f,
            &["x", "y"],
            vec![
                Polynomial::variable(f, 2, 0),
                Polynomial::variable(f, 2, 1),
            ],
            MonomialOrder::GrevLex,
            &mut WorkBudget::default(),
        )
        .unwrap();
        assert_eq!(krull_dim(&r), 0);
    }

    #[test]
    fn origin_primary_certificates() {
        let r = poly_ring(2, &["x", "y"]);
        let x = r.variable(0);
        let y = r.variable(1);
        let mut b = WorkBudget::default();
        let cube = |p: &Polynomial| p.mul(p).mul(p);
        let i = r.ideal(vec![x.mul(&x), cube(&y)]).unwrap();
        assert!(is_origin_primary(&r, &i, &mut b).unwrap());
        let j = r.ideal(vec![x.clone()]).unwrap();
        assert!(!is_origin_primary(&r, &j, &mut b).unwrap());
        assert!(is_origin_primary(&r, &r.maximal_ideal(), &mut b).unwrap());
    }

    #[test]
    fn length_standard_monomials() {
        // lambda(GF(2)[x,y]/(x^2, xy, y^3)) = 4: {1, x, y, y^2}
        let r = poly_ring(2, &["x", "y"]);
        let x = r.variable(0);
        let y = r.variable(1);
        let mut b = WorkBudget::default();
        let i = r
            .ideal(vec![x.mul(&x), x.mul(&y), y.mul(&y).mul(&y)])
            .unwrap();
        assert_eq!(length(&r, &i, &mut b).unwrap(), 4);
        // residue field
        assert_eq!(length(&r, &r.maximal_ideal(), &mut b).unwrap(), 1);
        // not primary
        let j = r.ideal(vec![x]).unwrap();
        assert_eq!(length(&r, &j, &mut b), Err(Error::NotPrimaryAtOrigin));
    }

    #[test]
    fn length_of_bracket_power_is_q_squared() {
        let r = poly_ring(3, &["x", "y"]);
        let mut b = WorkBudget::default();
        let q = FrobeniusExponent::new(r.field(), 2).unwrap();
        let mq = r.r_bracket_power(&r.maximal_ideal(), q).unwrap();
        assert_eq!(length(&r, &mq, &mut b).unwrap(), 81);
    }

    #[test]
    fn minimal_generator_counts() {
        let r = poly_ring(2, &["x", "y"]);
        let x = r.variable(0);
        let y = r.variable(1);
        let mut b = WorkBudget::default();
        let sq = |p: &Polynomial| p.mul(p);
        let i = r.ideal(vec![sq(&x), x.mul(&y), sq(&y)]).unwrap();
        assert_eq!(min_generators(&r, &i, &mut b).unwrap(), 3);
        // duplicate generator
        let j = r.ideal(vec![x.clone(), x.clone()]).unwrap();
        assert_eq!(min_generators(&r, &j, &mut b).unwrap(), 1);
        // redundant combination
        let k = r
            .ideal(vec![sq(&x), x.mul(&y), sq(&y), sq(&x).add(&x.mul(&y))])
            .unwrap();
        assert_eq!(min_generators(&r, &k, &mut b).unwrap(), 3);
        // non-homogeneous input is rejected
        let bad = r.ideal(vec![x.add(&Polynomial::one(r.field(), 2))]).unwrap();
        assert_eq!(
            min_generators(&r, &bad, &mut b),
            Err(Error::NonHomogeneousInput)
        );
    }

    #[test]
    fn mu_series_maximal_ideal() {
        // mu((x,y)^n) = n + 1, H(n) = n + 1, spread 2.
        let r = poly_ring(2, &["x", "y"]);
        let mut b = WorkBudget::default();
        let report = mu_series(&r, &r.maximal_ideal(), 8, &mut b).unwrap();
        for &(n, mu) in &report.mu_values {
            assert_eq!(mu, n as u64 + 1);
        }
        let h = report.fitted_poly.unwrap();
        assert_eq!(h.degree(), 1);
        assert_eq!(h.render(), "n + 1");
        assert_eq!(report.spread_estimate, Some(2));
        assert_eq!(report.fit_window, Some((1, 8)));
    }

    #[test]
    fn mu_series_principal_ideal() {
        let r = poly_ring(2, &["x", "y"]);
        let x = r.variable(0);
        let mut b = WorkBudget::default();
        let report = mu_series(&r, &r.ideal(vec![x]).unwrap(), 5, &mut b).unwrap();
        assert!(report.mu_values.iter().all(|&(_, mu)| mu == 1));
        assert_eq!(report.spread_estimate, Some(1));
        assert_eq!(report.fitted_poly.unwrap().render(), "1");
    }

    #[test]
    fn mu_series_non_maximal_example() {
        // I = (x^2, xy): mu(I^n) = n + 1 as well.
        let r = poly_ring(2, &["x", "y"]);
        let x = r.variable(0);
        let y = r.variable(1);
        let mut b = WorkBudget::default();
        let i = r.ideal(vec![x.mul(&x), x.mul(&y)]).unwrap();
        let report = mu_series(&r, &i, 6, &mut b).unwrap();
        for &(n, mu) in &report.mu_values {
            assert_eq!(mu, n as u64 + 1);
        }
        assert_eq!(report.spread_estimate, Some(2));
    }

    #[test]
    fn hk_series_regular_plane() {
        let r = poly_ring(2, &["x", "y"]);
        let s = hk_series(&r, 3, &mut WorkBudget::default()).unwrap();
        let lambdas: Vec<u64> = s.rows.iter().map(|row| row.lambda).collect();
        assert_eq!(lambdas, vec![4, 16, 64]);
        assert!(s.rows.iter().all(|row| row.ratio.is_one()));
        assert!(s.regular_flag);
    }

    #[test]
    fn hk_series_field() {
        let f = gf(3);
        let r = RingPresentation::new(
            f,
            &["x"],
            vec![Polynomial::variable(f, 1, 0)],
            MonomialOrder::GrevLex,
            &mut WorkBudget::default(),
        )
        .unwrap();
        let s = hk_series(&r, 3, &mut WorkBudget::default()).unwrap();
        assert!(s.rows.iter().all(|row| row.lambda == 1));
        assert!(s.regular_flag);
    }

    #[test]
    fn hk_series_cone_exceeds_q_squared() {
        let r = quadric_cone(2);
        let s = hk_series(&r, 3, &mut WorkBudget::default()).unwrap();
        assert!(!s.regular_flag);
        for row in &s.rows {
            let qd = row.q * row.q;
            assert!(row.lambda > qd);
            assert!(Rational::new(1, 1).lt(&row.ratio));
            assert!(row.ratio.lt(&Rational::new(2, 1)));
        }
    }

    #[test]
    fn kunz_tests() {
        let mut b = WorkBudget::default();
        assert!(kunz_regular_test(&poly_ring(3, &["x", "y", "z"]), 1, &mut b).unwrap());
        assert!(!kunz_regular_test(&quadric_cone(2), 1, &mut b).unwrap());
        // GF(2)[x]/(x^2): d = 0, lambda = 2 != 1
        let f = gf(2);
        let x = Polynomial::variable(f, 1, 0);
        let r = RingPresentation::new(
            f,
            &["x"],
            vec![x.mul(&x)],
            MonomialOrder::GrevLex,
            &mut WorkBudget::default(),
        )
        .unwrap();
        assert!(!kunz_regular_test(&r, 1, &mut b).unwrap());
    }
}
