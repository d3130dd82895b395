//! Truncated formal power series over exact coefficient rings.
//!
//! A [`TruncSeries`] carries its truncation order explicitly: coefficients of
//! total degree `<= trunc` are exact, everything above is unknown.  The order
//! is contagious under arithmetic (the result of a binary operation is exact
//! only up to the smaller of the two input orders), which keeps the precision
//! bookkeeping of the arc-lifting iteration auditable.
//!
//! Coefficients are either exact rationals or Grothendieck-ring classes; both
//! implement the [`Coeff`] ring interface.  Storage is sparse: branch
//! parametrizations and the generating-function monomials are few-term.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gring::GClass;

/// Exact coefficient ring interface for [`TruncSeries`].
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse, when the element is a unit.
    fn inv(&self) -> Option<Self>;
    /// Exact `n`-th root, when one exists in the ring.
    fn nth_root(&self, n: u32) -> Option<Self>;
    fn from_i64(n: i64) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    /// `p/q` as a ring element, when the ring contains the rationals.
    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_i64(p).mul(&Self::from_i64(q).inv().expect("rational scalar"))
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn nth_root(&self, n: u32) -> Option<Self> {
        if Zero::is_zero(self) {
            return Some(<BigRational as Zero>::zero());
        }
        if self.is_negative() && n.is_multiple_of(2) {
            return None;
        }
        let root_abs = |x: &BigInt| -> Option<BigInt> {
            let r = num::integer::Roots::nth_root(&x.abs(), n);
            (num::traits::Pow::pow(&r, n) == x.abs()).then_some(r)
        };
        let rn = root_abs(self.numer())?;
        let rd = root_abs(self.denom())?;
        let sign = if self.is_negative() { -1 } else { 1 };
        Some(BigRational::new(rn * BigInt::from(sign), rd))
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Coeff for GClass {
    fn zero() -> Self {
        GClass::zero()
    }
    fn one() -> Self {
        GClass::one()
    }
    fn is_zero(&self) -> bool {
        GClass::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn mul(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }
    fn inv(&self) -> Option<Self> {
        GClass::one().checked_div(self).ok()
    }
    fn nth_root(&self, n: u32) -> Option<Self> {
        // Supported for rational constants and powers of L; enough for the
        // normalization uses inside this crate.
        if GClass::is_zero(self) {
            return Some(GClass::zero());
        }
        let laurent = self.as_laurent()?;
        if laurent.len() != 1 {
            return None;
        }
        let (e, c) = &laurent[0];
        if e % n as i64 != 0 {
            return None;
        }
        let root = BigRational::from_integer(c.clone()).nth_root(n)?;
        Some(GClass::from_rational(&root) * GClass::l_pow(e / n as i64))
    }
    fn from_i64(n: i64) -> Self {
        GClass::from_int(n)
    }
}

// ---------------------------------------------------------------------------

/// Truncated multivariate power series with total-degree truncation order.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<C: Coeff> {
    vars: Vec<String>,
    trunc: usize,
    coeffs: BTreeMap<Vec<u32>, C>,
}

impl<C: Coeff> TruncSeries<C> {
    pub fn zero(vars: &[&str], trunc: usize) -> Self {
        TruncSeries {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], trunc: usize, c: C) -> Self {
        let mut s = Self::zero(vars, trunc);
        s.set(vec![0; s.vars.len()], c);
        s
    }

    pub fn one(vars: &[&str], trunc: usize) -> Self {
        Self::constant(vars, trunc, C::one())
    }

    /// Single-variable series in `t`.
    pub fn univar(trunc: usize) -> Self {
        Self::zero(&["t"], trunc)
    }

    /// The variable `t` itself, as a univariate series.
    pub fn t(trunc: usize) -> Self {
        let mut s = Self::univar(trunc);
        s.set(vec![1], C::one());
        s
    }

    /// Univariate monomial `c * t^e`.
    pub fn t_monomial(c: C, e: usize, trunc: usize) -> Self {
        let mut s = Self::univar(trunc);
        s.set(vec![e as u32], c);
        s
    }

    /// Univariate series from a dense coefficient list (degree 0 first).
    pub fn from_univar_coeffs(coeffs: &[C], trunc: usize) -> Self {
        let mut s = Self::univar(trunc);
        for (e, c) in coeffs.iter().enumerate() {
            s.set(vec![e as u32], c.clone());
        }
        s
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn total_deg(exp: &[u32]) -> usize {
        exp.iter().map(|&e| e as usize).sum()
    }

    /// Set a coefficient, dropping zero entries and out-of-range exponents.
    pub fn set(&mut self, exp: Vec<u32>, c: C) {
        assert_eq!(exp.len(), self.vars.len(), "exponent arity mismatch");
        if Self::total_deg(&exp) > self.trunc || c.is_zero() {
            self.coeffs.remove(&exp);
        } else {
            self.coeffs.insert(exp, c);
        }
    }

    pub fn coeff(&self, exp: &[u32]) -> C {
        self.coeffs.get(exp).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of `t^e` in a univariate series.
    pub fn coeff_t(&self, e: usize) -> C {
        assert_eq!(self.nvars(), 1, "coeff_t on multivariate series");
        self.coeff(&[e as u32])
    }

    /// Re-truncate.  Raising the order is only sound when the caller knows
    /// the dropped coefficients are genuinely zero (complete polynomials).
    pub fn with_trunc(&self, trunc: usize) -> Self {
        let mut out = TruncSeries {
            vars: self.vars.clone(),
            trunc,
            coeffs: BTreeMap::new(),
        };
        for (e, c) in &self.coeffs {
            if Self::total_deg(e) <= trunc {
                out.coeffs.insert(e.clone(), c.clone());
            }
        }
        out
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(
                self.vars.clone(),
                other.vars.clone(),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out = self.with_trunc(trunc);
        for (e, c) in &other.coeffs {
            if Self::total_deg(e) <= trunc {
                let v = out.coeff(e).add(c);
                out.set(e.clone(), v);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let trunc = self.trunc.min(other.trunc);
        let mut out: TruncSeries<C> = TruncSeries {
            vars: self.vars.clone(),
            trunc,
            coeffs: BTreeMap::new(),
        };
        for (ea, ca) in &self.coeffs {
            let da = Self::total_deg(ea);
            if da > trunc {
                continue;
            }
            for (eb, cb) in &other.coeffs {
                if da + Self::total_deg(eb) > trunc {
                    continue;
                }
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let v = out.coeff(&exp).add(&ca.mul(cb));
                out.set(exp, v);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("variable mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("variable mismatch")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("variable mismatch")
    }

    pub fn scalar_mul(&self, c: &C) -> Self {
        let mut out = TruncSeries {
            vars: self.vars.clone(),
            trunc: self.trunc,
            coeffs: BTreeMap::new(),
        };
        for (e, a) in &self.coeffs {
            out.set(e.clone(), a.mul(c));
        }
        out
    }

    /// Integer power by repeated multiplication.
    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(
            &self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            self.trunc,
        );
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Least total degree with a nonzero coefficient; `None` when every
    /// coefficient through the truncation order vanishes (order beyond
    /// `trunc`, the `>= trunc + 1` sentinel).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.keys().map(|e| Self::total_deg(e)).min()
    }

    /// Multiplicative inverse through the truncation order.
    pub fn recip(&self) -> Result<Self> {
        let zero_exp = vec![0u32; self.vars.len()];
        let c0 = self.coeff(&zero_exp);
        let c0_inv = c0.inv().ok_or(Error::NonUnitConstantTerm)?;
        // u = 1 - A/c0 has positive order; geometric series in u.
        let scaled = self.scalar_mul(&c0_inv);
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let u = Self::one(&vars, self.trunc).sub(&scaled);
        let mut acc = Self::one(&vars, self.trunc);
        let mut upow = Self::one(&vars, self.trunc);
        for _ in 0..self.trunc {
            upow = upow.mul(&u);
            if upow.is_zero() {
                break;
            }
            acc = acc.add(&upow);
        }
        Ok(acc.scalar_mul(&c0_inv))
    }

    /// Substitution `A(B(t))` for univariate series, `ord(B) >= 1`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        assert_eq!(self.nvars(), 1, "compose is univariate");
        self.check_vars(inner)?;
        if inner.order().is_none_or(|o| o == 0) && !inner.is_zero() {
            return Err(Error::PositiveOrderRequired);
        }
        let trunc = self.trunc.min(inner.trunc);
        // Horner evaluation from the top coefficient down.
        let mut acc = TruncSeries::<C>::univar(trunc);
        let top = self
            .coeffs
            .keys()
            .map(|e| e[0] as usize)
            .max()
            .unwrap_or(0);
        for e in (0..=top).rev() {
            acc = acc.mul(&inner.with_trunc(trunc));
            let c = self.coeff_t(e);
            if !c.is_zero() {
                let v = acc.coeff(&[0]).add(&c);
                acc.set(vec![0], v);
            }
        }
        Ok(acc.with_trunc(trunc))
    }

    /// Compositional inverse: `compose(self, reversion(self)) = t`.
    pub fn reversion(&self) -> Result<Self> {
        assert_eq!(self.nvars(), 1, "reversion is univariate");
        if self.order() != Some(1) {
            return Err(Error::NotOrderOne);
        }
        let a1 = self.coeff_t(1);
        let a1_inv = a1.inv().ok_or(Error::NotOrderOne)?;
        let trunc = self.trunc;
        // Determine the inverse coefficient by coefficient: with C known
        // through degree k and A(C) = t + e*t^(k+1) + ..., the correction is
        // C -= (e/a1) t^(k+1).
        let mut c = TruncSeries::<C>::t_monomial(a1_inv.clone(), 1, trunc);
        for k in 1..trunc {
            let ac = self.compose(&c)?;
            let mut err = ac.sub(&TruncSeries::t(trunc));
            err = err.with_trunc(trunc);
            let e = err.coeff_t(k + 1);
            if e.is_zero() {
                continue;
            }
            let delta = e.mul(&a1_inv).neg();
            let v = c.coeff_t(k + 1).add(&delta);
            c.set(vec![(k + 1) as u32], v);
        }
        Ok(c)
    }

    /// `n`-th root of a series whose constant term has an exact `n`-th root
    /// in the coefficient ring; binomial expansion of `c^(1/n) (1+u)^(1/n)`.
    pub fn nth_root_unit(&self, n: u32) -> Result<Self> {
        assert!(n >= 1);
        let zero_exp = vec![0u32; self.vars.len()];
        let c0 = self.coeff(&zero_exp);
        if c0.is_zero() {
            return Err(Error::NoRootInField(n));
        }
        let root = c0.nth_root(n).ok_or(Error::NoRootInField(n))?;
        let c0_inv = c0.inv().ok_or(Error::NoRootInField(n))?;
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let u = self.scalar_mul(&c0_inv).sub(&Self::one(&vars, self.trunc));
        // binom(1/n, j) accumulated incrementally.
        let mut acc = Self::one(&vars, self.trunc);
        let mut upow = Self::one(&vars, self.trunc);
        let mut binom = C::one();
        for j in 0..self.trunc {
            // binom(1/n, j+1) = binom(1/n, j) * (1/n - j) / (j + 1)
            let factor = C::from_ratio(1 - (j as i64) * (n as i64), n as i64)
                .mul(&C::from_ratio(1, j as i64 + 1));
            binom = binom.mul(&factor);
            upow = upow.mul(&u);
            if upow.is_zero() {
                break;
            }
            acc = acc.add(&upow.scalar_mul(&binom));
        }
        Ok(acc.scalar_mul(&root))
    }

    /// Divide by `t^k`, assuming order `>= k`; the truncation order drops by
    /// `k` (the quotient is known through one fewer power of `t` per division).
    pub fn shift_down(&self, k: usize) -> Self {
        assert_eq!(self.nvars(), 1, "shift_down is univariate");
        assert!(self.order().is_none_or(|o| o >= k), "shift_down below order");
        let mut out = TruncSeries {
            vars: self.vars.clone(),
            trunc: self.trunc.saturating_sub(k),
            coeffs: BTreeMap::new(),
        };
        for (e, c) in &self.coeffs {
            out.set(vec![e[0] - k as u32], c.clone());
        }
        out
    }

    /// Multiply by `t^k`; the truncation order rises by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        assert_eq!(self.nvars(), 1, "shift_up is univariate");
        let mut out = TruncSeries {
            vars: self.vars.clone(),
            trunc: self.trunc + k,
            coeffs: BTreeMap::new(),
        };
        for (e, c) in &self.coeffs {
            out.set(vec![e[0] + k as u32], c.clone());
        }
        out
    }

    /// Univariate stretch `t -> t^k`.
    pub fn stretch(&self, k: usize) -> Self {
        assert_eq!(self.nvars(), 1, "stretch is univariate");
        assert!(k >= 1);
        let mut out = TruncSeries {
            vars: self.vars.clone(),
            trunc: self.trunc,
            coeffs: BTreeMap::new(),
        };
        for (e, c) in &self.coeffs {
            let ne = e[0] as usize * k;
            if ne <= self.trunc {
                out.set(vec![ne as u32], c.clone());
            }
        }
        out
    }

    /// Derivative with respect to the single variable.
    pub fn derivative(&self) -> Self {
        assert_eq!(self.nvars(), 1, "derivative is univariate");
        let mut out = TruncSeries {
            vars: self.vars.clone(),
            trunc: self.trunc.saturating_sub(1),
            coeffs: BTreeMap::new(),
        };
        for (e, c) in &self.coeffs {
            if e[0] >= 1 {
                out.set(
                    vec![e[0] - 1],
                    c.mul(&C::from_i64(e[0] as i64)),
                );
            }
        }
        out
    }

    /// Map coefficients into another ring.
    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        let mut out = TruncSeries {
            vars: self.vars.clone(),
            trunc: self.trunc,
            coeffs: BTreeMap::new(),
        };
        for (e, c) in &self.coeffs {
            out.set(e.clone(), f(c));
        }
        out
    }
}

impl TruncSeries<GClass> {
    /// Substitute the single variable by a monomial `scale * prod vars^exp`
    /// of a multivariate ring.
    pub fn subst_monomial(
        &self,
        vars: &[&str],
        exp: &[u32],
        scale: &GClass,
        trunc: usize,
    ) -> TruncSeries<GClass> {
        assert_eq!(self.nvars(), 1);
        assert_eq!(vars.len(), exp.len());
        let deg: usize = exp.iter().map(|&e| e as usize).sum();
        let mut out: TruncSeries<GClass> = TruncSeries::zero(vars, trunc);
        for (e, c) in &self.coeffs {
            let k = e[0] as usize;
            if k * deg > trunc {
                continue;
            }
            let nexp: Vec<u32> = exp.iter().map(|&x| x * e[0]).collect();
            let v = out
                .coeff(&nexp)
                .add(&c.mul(&scale.pow(k as i64)));
            out.set(nexp, v);
        }
        out
    }
}

impl<C: Coeff> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 + O({})", self.trunc + 1);
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (v, &k) in self.vars.iter().zip(e) {
                if k == 1 {
                    write!(f, "*{}", v)?;
                } else if k > 1 {
                    write!(f, "*{}^{}", v, k)?;
                }
            }
        }
        write!(f, " + O({})", self.trunc + 1)
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    type QS = TruncSeries<BigRational>;
    type GS = TruncSeries<GClass>;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn ring_ops_examples() {
        // (1+t)(1-t) = 1 - t^2 at N = 5
        let a = QS::from_univar_coeffs(&[q(1, 1), q(1, 1)], 5);
        let b = QS::from_univar_coeffs(&[q(1, 1), q(-1, 1)], 5);
        let p = a.mul(&b);
        assert_eq!(p.coeff_t(0), q(1, 1));
        assert_eq!(p.coeff_t(1), q(0, 1));
        assert_eq!(p.coeff_t(2), q(-1, 1));

        // (sum_{k<=4} t^k)(1-t) at N=4 truncates to 1
        let ones = QS::from_univar_coeffs(&vec![q(1, 1); 5], 4);
        let p = ones.mul(&b.with_trunc(4));
        assert_eq!(p, QS::one(&["t"], 4));

        // scalar L * (1+t) over GClass coefficients
        let g = GS::from_univar_coeffs(&[GClass::one(), GClass::one()], 3);
        let scaled = g.scalar_mul(&GClass::lefschetz());
        assert_eq!(scaled.coeff_t(0), GClass::lefschetz());
        assert_eq!(scaled.coeff_t(1), GClass::lefschetz());
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let a = QS::zero(&["t"], 4);
        let b = QS::zero(&["s"], 4);
        assert!(matches!(
            a.try_add(&b),
            Err(Error::VariableMismatch(_, _))
        ));
    }

    #[test]
    fn recip_examples() {
        // 1/(1-t) = sum t^k
        let a = QS::from_univar_coeffs(&[q(1, 1), q(-1, 1)], 6);
        let r = a.recip().unwrap();
        for k in 0..=6 {
            assert_eq!(r.coeff_t(k), q(1, 1));
        }
        assert_eq!(a.mul(&r), QS::one(&["t"], 6));

        // 1/(1 - tL) = sum L^k t^k
        let mut g = GS::one(&["t"], 5);
        g.set(vec![1], -GClass::lefschetz());
        let rg = g.recip().unwrap();
        for k in 0..=5 {
            assert_eq!(rg.coeff_t(k), GClass::l_pow(k as i64));
        }

        // 1/(2+t) = 1/2 - t/4 + t^2/8 - ... (Newton/geometric oracle)
        let a = QS::from_univar_coeffs(&[q(2, 1), q(1, 1)], 4);
        let r = a.recip().unwrap();
        assert_eq!(r.coeff_t(0), q(1, 2));
        assert_eq!(r.coeff_t(1), q(-1, 4));
        assert_eq!(r.coeff_t(2), q(1, 8));
        assert_eq!(a.mul(&r), QS::one(&["t"], 4));

        // order-zero unit required
        let t = QS::t(4);
        assert_eq!(t.recip(), Err(Error::NonUnitConstantTerm));
    }

    #[test]
    fn compose_examples() {
        let a = QS::t_monomial(q(1, 1), 2, 8);
        let b = QS::t_monomial(q(1, 1), 3, 8);
        assert_eq!(a.compose(&b).unwrap(), QS::t_monomial(q(1, 1), 6, 8));

        // A = B = t + t^2: A(B) = t + 2t^2 + 2t^3 + t^4
        let s = QS::from_univar_coeffs(&[q(0, 1), q(1, 1), q(1, 1)], 6);
        let c = s.compose(&s).unwrap();
        assert_eq!(c.coeff_t(1), q(1, 1));
        assert_eq!(c.coeff_t(2), q(2, 1));
        assert_eq!(c.coeff_t(3), q(2, 1));
        assert_eq!(c.coeff_t(4), q(1, 1));
        assert_eq!(c.coeff_t(5), q(0, 1));

        // A = sum t^k composed with 2t gives sum 2^k t^k
        let ones = QS::from_univar_coeffs(&vec![q(1, 1); 7], 6);
        let twot = QS::t_monomial(q(2, 1), 1, 6);
        let c = ones.compose(&twot).unwrap();
        for k in 0..=6 {
            assert_eq!(c.coeff_t(k), q(1 << k, 1));
        }

        // order-zero inner series rejected
        let unit = QS::one(&["t"], 6);
        assert_eq!(s.compose(&unit), Err(Error::PositiveOrderRequired));
    }

    #[test]
    fn reversion_examples() {
        assert_eq!(QS::t(5).reversion().unwrap(), QS::t(5));

        // t + t^2 reverts with signed Catalan numbers: t - t^2 + 2t^3 - 5t^4
        let s = QS::from_univar_coeffs(&[q(0, 1), q(1, 1), q(1, 1)], 5);
        let r = s.reversion().unwrap();
        assert_eq!(r.coeff_t(1), q(1, 1));
        assert_eq!(r.coeff_t(2), q(-1, 1));
        assert_eq!(r.coeff_t(3), q(2, 1));
        assert_eq!(r.coeff_t(4), q(-5, 1));
        assert_eq!(s.compose(&r).unwrap(), QS::t(5));
        assert_eq!(r.compose(&s).unwrap(), QS::t(5));

        let two_t = QS::t_monomial(q(2, 1), 1, 4);
        assert_eq!(two_t.reversion().unwrap(), QS::t_monomial(q(1, 2), 1, 4));

        let t2 = QS::t_monomial(q(1, 1), 2, 4);
        assert_eq!(t2.reversion(), Err(Error::NotOrderOne));
    }

    #[test]
    fn nth_root_examples() {
        // sqrt(1+t) = 1 + t/2 - t^2/8 + t^3/16 (binomial oracle)
        let a = QS::from_univar_coeffs(&[q(1, 1), q(1, 1)], 3);
        let r = a.nth_root_unit(2).unwrap();
        assert_eq!(r.coeff_t(0), q(1, 1));
        assert_eq!(r.coeff_t(1), q(1, 2));
        assert_eq!(r.coeff_t(2), q(-1, 8));
        assert_eq!(r.coeff_t(3), q(1, 16));
        assert_eq!(r.mul(&r), a);

        assert_eq!(QS::one(&["t"], 4).nth_root_unit(7).unwrap(), QS::one(&["t"], 4));

        let b = QS::from_univar_coeffs(&[q(2, 1), q(1, 1)], 4);
        assert_eq!(b.nth_root_unit(2), Err(Error::NoRootInField(2)));
    }

    #[test]
    fn order_examples() {
        let a = QS::from_univar_coeffs(&[q(0, 1), q(0, 1), q(0, 1), q(1, 1)], 10)
            .add(&QS::t_monomial(q(1, 1), 7, 10));
        assert_eq!(a.order(), Some(3));
        assert_eq!(QS::zero(&["t"], 10).order(), None);
        let cancel = QS::t_monomial(q(1, 1), 2, 6).sub(&QS::t_monomial(q(1, 1), 2, 6));
        assert_eq!(cancel.order(), None);
    }

    #[test]
    fn truncation_is_contagious() {
        let a = QS::one(&["t"], 10);
        let b = QS::one(&["t"], 4);
        assert_eq!(a.mul(&b).trunc(), 4);
        assert_eq!(a.add(&b).trunc(), 4);
    }

    #[test]
    fn multivariate_basics() {
        let mut a = GS::one(&["t1", "t2"], 4);
        a.set(vec![1, 0], GClass::one());
        a.set(vec![0, 1], GClass::lefschetz());
        let sq = a.mul(&a);
        assert_eq!(sq.coeff(&[1, 1]), GClass::from_int(2) * GClass::lefschetz());
        assert_eq!(sq.coeff(&[0, 2]), GClass::lefschetz() * GClass::lefschetz());
    }

    #[test]
    fn subst_monomial_embeds_univar() {
        let s = GS::from_univar_coeffs(&[GClass::one(), GClass::one(), GClass::one()], 2);
        let out = s.subst_monomial(&["t1", "t2"], &[1, 1], &GClass::l_pow(-2), 6);
        assert_eq!(out.coeff(&[0, 0]), GClass::one());
        assert_eq!(out.coeff(&[1, 1]), GClass::l_pow(-2));
        assert_eq!(out.coeff(&[2, 2]), GClass::l_pow(-4));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_qseries(max_ord: usize) -> impl Strategy<Value = QS> {
            proptest::collection::vec((-6i64..7, 1i64..4), 0..6).prop_map(move |cs| {
                let coeffs: Vec<BigRational> =
                    cs.into_iter().map(|(p, d)| q(p, d)).collect();
                QS::from_univar_coeffs(&coeffs, max_ord)
            })
        }

        proptest! {
            #[test]
            fn recip_round_trip(s in arb_qseries(8)) {
                let mut s = s;
                s.set(vec![0], q(1, 1));
                let r = s.recip().unwrap();
                prop_assert_eq!(s.mul(&r), QS::one(&["t"], 8));
            }

            #[test]
            fn reversion_round_trip(s in arb_qseries(7)) {
                let mut s = s;
                s.set(vec![0], q(0, 1));
                s.set(vec![1], q(1, 1));
                let r = s.reversion().unwrap();
                prop_assert_eq!(s.compose(&r).unwrap(), QS::t(7));
            }

            #[test]
            fn root_round_trip(s in arb_qseries(6), n in 1u32..4) {
                let mut s = s;
                s.set(vec![0], q(1, 1));
                let r = s.nth_root_unit(n).unwrap();
                prop_assert_eq!(r.pow(n as usize), s);
            }

            #[test]
            fn multiplication_is_order_additive(a in arb_qseries(10), b in arb_qseries(10)) {
                let (oa, ob) = (a.order(), b.order());
                if let (Some(oa), Some(ob)) = (oa, ob) {
                    if oa + ob <= 10 {
                        prop_assert_eq!(a.mul(&b).order(), Some(oa + ob));
                    }
                }
            }
        }
    }
}
