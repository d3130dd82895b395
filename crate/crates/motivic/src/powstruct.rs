//! The power structure over `Z[L, L^-1]`.
//!
//! A power structure on a ring assigns to a series `A(t)` with constant term
//! 1 and a ring element `m` a series `A(t)^m`, subject to the usual exponent
//! laws.  A finitely determined power structure is pinned down by its
//! primitive `(1-t)^-m`; over the Grothendieck ring the primitive is the
//! symmetric-power generating series
//!
//! ```text
//! (1-t)^-[X] = 1 + [S^1 X] t + [S^2 X] t^2 + ...
//! ```
//!
//! and on powers of the Lefschetz class it collapses to a geometric series:
//! `(1-t)^-L^j = (1 - t L^j)^-1`.  All exponents handled here are Laurent
//! polynomials in `L`, which is what every measure computation in this crate
//! produces; the primitive distributes over their monomials.
//!
//! General powers are computed by peeling a series into the unique product
//! `A(t) = prod_k (1-t^k)^-b_k` ([`factor_cyclo`]) and raising each factor.

use num::rational::BigRational;
use num::traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::gring::GClass;
use crate::series::TruncSeries;

type GSeries = TruncSeries<GClass>;

/// Exponents `b_k` of the product decomposition
/// `A(t) = prod_k (1 - t^k)^-b_k`, exact through a stated truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct CycloFactorization {
    /// Pairs `(k, b_k)` with distinct `k`, sorted by `k`; each `b_k` is a
    /// Laurent polynomial in `L`.
    pub factors: Vec<(usize, GClass)>,
    pub trunc: usize,
}

impl CycloFactorization {
    /// Re-expand the product through the stored truncation order.
    pub fn expand(&self) -> Result<GSeries> {
        let mut acc = GSeries::one(&["t"], self.trunc);
        for (k, b) in &self.factors {
            acc = acc.mul(&one_minus_tk_pow(b, *k, self.trunc)?);
        }
        Ok(acc)
    }
}

/// A simple function given by its level sets: pairs of a value (a univariate
/// series of positive order, typically a monomial in `t`) and the integer
/// Euler-characteristic measure of the level set.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasuredPartition {
    pub entries: Vec<(GSeries, i64)>,
}

impl MeasuredPartition {
    pub fn new(entries: Vec<(GSeries, i64)>) -> Result<Self> {
        for (value, weight) in &entries {
            if value.order().is_none_or(|o| o == 0) {
                return Err(Error::NonPositiveOrderValue);
            }
            debug_assert!(*weight != 0, "zero weight level set");
        }
        Ok(MeasuredPartition { entries })
    }

    /// Monomial level sets `(coefficient * t^degree, weight)`.
    pub fn from_monomials(entries: &[(GClass, usize, i64)], trunc: usize) -> Result<Self> {
        Self::new(
            entries
                .iter()
                .map(|(c, e, w)| (GSeries::t_monomial(c.clone(), *e, trunc), *w))
                .collect(),
        )
    }
}

/// `(1-t)^-m` through order `N` for a Laurent-polynomial exponent
/// `m = sum_j a_j L^j`: the product `prod_j (1 - t L^j)^-a_j`.
pub fn one_minus_t_pow(m: &GClass, trunc: usize) -> Result<GSeries> {
    one_minus_tk_pow(m, 1, trunc)
}

/// `(1-t^k)^-m` through order `N`.
pub fn one_minus_tk_pow(m: &GClass, k: usize, trunc: usize) -> Result<GSeries> {
    let terms = m
        .as_laurent()
        .ok_or_else(|| Error::NotLaurentPolynomial(m.to_string()))?;
    let mut acc = GSeries::one(&["t"], trunc);
    for (j, a) in terms {
        // (1 - t^k L^j)^-a, integer a
        let base = {
            let mut s = GSeries::one(&["t"], trunc);
            s.set(vec![k as u32], -GClass::l_pow(j));
            s
        };
        let e = a.to_i64().expect("tiny exponent");
        let factor = if e > 0 {
            base.recip()?.pow(e as usize)
        } else {
            base.pow((-e) as usize)
        };
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// Invert the product representation: peel orders `k = 1, 2, ...`, taking
/// `b_k` to be the residual coefficient of `t^k` after dividing out all lower
/// factors.  The decomposition is unique, and re-expansion reproduces the
/// input through its truncation order.
pub fn factor_cyclo(series: &GSeries) -> Result<CycloFactorization> {
    assert_eq!(series.nvars(), 1, "factor_cyclo is univariate");
    if !series.coeff_t(0).is_one() {
        return Err(Error::NonUnitLeadingTerm);
    }
    let trunc = series.trunc();
    let mut residual = series.clone();
    let mut factors = Vec::new();
    for k in 1..=trunc {
        let b = residual.coeff_t(k);
        if b.is_zero() {
            continue;
        }
        if !b.is_laurent() {
            return Err(Error::NotLaurentPolynomial(b.to_string()));
        }
        // divide out (1-t^k)^-b  <=>  multiply by (1-t^k)^b
        residual = residual.mul(&one_minus_tk_pow(&(-b.clone()), k, trunc)?);
        factors.push((k, b));
    }
    debug_assert_eq!(residual, GSeries::one(&["t"], trunc));
    Ok(CycloFactorization { factors, trunc })
}

/// `A(t)^m` for a series with constant term 1 and a Laurent-polynomial
/// exponent: peel `A` into `prod_k (1-t^k)^-b_k` and raise each factor to
/// `m`, i.e. `A^m = prod_k (1-t^k)^-(m b_k)`.
pub fn power(series: &GSeries, m: &GClass, trunc: usize) -> Result<GSeries> {
    let fac = factor_cyclo(&series.with_trunc(trunc.min(series.trunc())))?;
    let mut acc = GSeries::one(&["t"], fac.trunc);
    for (k, b) in &fac.factors {
        acc = acc.mul(&one_minus_tk_pow(&(m.clone() * b.clone()), *k, fac.trunc)?);
    }
    Ok(acc)
}

/// Class of the `k`-th symmetric power of a cylinder of measure `m`: the
/// coefficient of `t^k` in `(1-t)^-m`.
pub fn sym_power_class(m: &GClass, k: usize) -> Result<GClass> {
    Ok(one_minus_t_pow(m, k)?.coeff_t(k))
}

/// Exponential integral of a simple function over the union of all symmetric
/// powers: `prod_g (1 - g)^-w_g` over the level-set data.
///
/// The integer weights make each factor an ordinary power; positive order of
/// every value keeps the product finitely determined at each order.
pub fn chi_exp_integral(partition: &MeasuredPartition, trunc: usize) -> Result<GSeries> {
    let mut acc = GSeries::one(&["t"], trunc);
    for (value, weight) in &partition.entries {
        if value.order().is_none_or(|o| o == 0) {
            return Err(Error::NonPositiveOrderValue);
        }
        let base = GSeries::one(&["t"], trunc).sub(&value.with_trunc(trunc));
        let factor = if *weight >= 0 {
            base.recip()?.pow(*weight as usize)
        } else {
            base.pow((-*weight) as usize)
        };
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

/// Classical Moebius function.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius of nonpositive argument");
    let mut remaining = n;
    let mut factors = 0;
    let mut p = 2;
    while p * p <= remaining {
        if remaining.is_multiple_of(p) {
            remaining /= p;
            factors += 1;
            if remaining.is_multiple_of(p) {
                return 0;
            }
        }
        p += 1;
    }
    if remaining > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Both sides of the order-decomposition identity
/// `prod_k prod_g (1-g^k)^-w_g`: the left side expands the double product
/// directly, the right side assembles one exponential integral per `k` with
/// the values raised to the `k`-th power.  The product over `k` truncates
/// where the order of the `k`-th factor exceeds the truncation order.
///
/// The identity presumes the level-set data comes from a function compatible
/// with reparametrization (the value on a multiple cover is the corresponding
/// power); only the level-set identity itself is validated here.
pub fn decomposition_product(
    partition: &MeasuredPartition,
    trunc: usize,
) -> Result<(GSeries, GSeries)> {
    let min_ord = partition
        .entries
        .iter()
        .map(|(v, _)| v.order().unwrap_or(trunc + 1))
        .min()
        .unwrap_or(trunc + 1);

    let mut lhs = GSeries::one(&["t"], trunc);
    let mut rhs = GSeries::one(&["t"], trunc);
    let mut k = 1;
    while k * min_ord <= trunc {
        // lhs route: direct factor expansion
        for (value, weight) in &partition.entries {
            let vk = value.with_trunc(trunc).pow(k);
            if vk.is_zero() {
                continue;
            }
            let base = GSeries::one(&["t"], trunc).sub(&vk);
            let factor = if *weight >= 0 {
                base.recip()?.pow(*weight as usize)
            } else {
                base.pow((-*weight) as usize)
            };
            lhs = lhs.mul(&factor);
        }
        // rhs route: exponential integral of the k-th power function
        let pk = MeasuredPartition::new(
            partition
                .entries
                .iter()
                .map(|(v, w)| (v.with_trunc(trunc).pow(k), *w))
                .filter(|(v, _)| !v.is_zero())
                .collect(),
        )?;
        rhs = rhs.mul(&chi_exp_integral(&pk, trunc)?);
        k += 1;
    }
    Ok((lhs, rhs))
}

/// Moebius-inverted product: with `L_k = prod_m prod_g (1-g^(km))^-w_g` the
/// full per-`k` products, returns `(prod_k L_k^mu(k), prod_g (1-g)^-w_g)`;
/// the two must agree.
pub fn moebius_inversion_check(
    partition: &MeasuredPartition,
    trunc: usize,
) -> Result<(GSeries, GSeries)> {
    let min_ord = partition
        .entries
        .iter()
        .map(|(v, _)| v.order().unwrap_or(trunc + 1))
        .min()
        .unwrap_or(trunc + 1);

    let mut inverted = GSeries::one(&["t"], trunc);
    let mut k = 1usize;
    while k * min_ord <= trunc {
        let mu = moebius(k as u64);
        if mu != 0 {
            // L_k: the full decomposition product with g -> g^k
            let pk = MeasuredPartition::new(
                partition
                    .entries
                    .iter()
                    .map(|(v, w)| (v.with_trunc(trunc).pow(k), *w))
                    .filter(|(v, _)| !v.is_zero())
                    .collect(),
            )?;
            let (lk, _) = decomposition_product(&pk, trunc)?;
            let factor = if mu == 1 { lk } else { lk.recip()? };
            inverted = inverted.mul(&factor);
        }
        k += 1;
    }
    let k1 = chi_exp_integral(partition, trunc)?;
    Ok((inverted, k1))
}

/// Coefficientwise Euler characteristic of a series with `GClass`
/// coefficients; errors where a coefficient has a pole at `L = 1`.
pub fn euler_char_series(series: &GSeries) -> Result<TruncSeries<BigRational>> {
    let mut out = TruncSeries::zero(
        &series.vars().iter().map(|s| s.as_str()).collect::<Vec<_>>(),
        series.trunc(),
    );
    for (e, c) in series.terms() {
        out.set(e.clone(), c.euler_char()?);
    }
    Ok(out)
}

/// `A(t)^m` under the ordinary integer power structure, for integer `m`.
pub fn integer_power(
    series: &TruncSeries<BigRational>,
    m: i64,
) -> Result<TruncSeries<BigRational>> {
    if m >= 0 {
        Ok(series.pow(m as usize))
    } else {
        Ok(series.recip()?.pow((-m) as usize))
    }
}

// ---------------------------------------------------------------------------
