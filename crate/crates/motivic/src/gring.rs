//! Exact arithmetic in the localized Grothendieck ring of varieties.
//!
//! Elements are represented by rational functions in the formal symbol `L`
//! (the class of the affine line) with arbitrary-precision integer
//! coefficients.  This suffices for every class the measure computations
//! produce: cylinder measures, symmetric-power classes and the worked
//! singularity families are all rational in `L`.
//!
//! A [`GClass`] is kept in canonical form at all times: numerator and
//! denominator share no factor in `Z[L]` (neither a polynomial factor nor an
//! integer content), the denominator is nonzero with positive leading
//! coefficient, and zero is `0/1`.  Canonical forms of equal values are
//! identical, so equality is syntactic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// Integer polynomials in L
// ---------------------------------------------------------------------------

/// Dense integer polynomial in `L`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub(crate) fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub(crate) fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub(crate) fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * L^k`.
    pub(crate) fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        ZPoly { coeffs }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub(crate) fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub(crate) fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub(crate) fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Order of vanishing at L = 0 (index of the lowest nonzero coefficient).
    pub(crate) fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub(crate) fn neg(&self) -> Self {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub(crate) fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Self::from_coeffs(out)
    }



    pub(crate) fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// Divide by `L^k`; requires `low_order() >= k`.
    pub(crate) fn shr(&self, k: usize) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        ZPoly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }

    /// Multiply by `L^k`.
    pub(crate) fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    /// Gcd of the coefficients, nonnegative; zero for the zero polynomial.
    pub(crate) fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            g = num::integer::gcd(g, c.clone());
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn is_one_poly(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn div_content(&self, g: &BigInt) -> Self {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| c / g).collect(),
        }
    }

    /// Exact division; panics if `other` does not divide `self` in `Z[L]`.
    pub(crate) fn div_exact(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let da = self.degree().unwrap();
        let db = other.degree().unwrap();
        assert!(da >= db, "exact division with smaller dividend");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        let lc = other.leading();
        for k in (0..=da - db).rev() {
            let head = rem[k + db].clone();
            if head.is_zero() {
                continue;
            }
            let (q, r) = num::integer::div_rem(head, lc.clone());
            assert!(r.is_zero(), "inexact polynomial division");
            for (j, b) in other.coeffs.iter().enumerate() {
                rem[k + j] -= &q * b;
            }
            quot[k] = q;
        }
        assert!(rem.iter().all(|c| c.is_zero()), "nonzero remainder in exact division");
        Self::from_coeffs(quot)
    }

    /// Pseudo-remainder of `self` by `other`: `lc(other)^(da-db+1) * self mod other`.
    fn prem(&self, other: &Self) -> Self {
        let db = other.degree().expect("prem by zero");
        let lc = other.leading();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let scaled = rem
                .coeffs
                .iter()
                .map(|c| c * &lc)
                .collect::<Vec<_>>();
            let head = rem.leading();
            let mut next = Self::from_coeffs(scaled);
            let sub = other.shift(dr - db).coeffs;
            for (j, b) in sub.iter().enumerate() {
                next.coeffs[j] -= &head * b;
            }
            rem = Self::from_coeffs(next.coeffs);
        }
        rem
    }

    fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        self.div_content(&g)
    }

    fn is_monomial(&self) -> bool {
        !self.is_zero() && self.low_order() == self.degree()
    }

    /// Gcd in `Z[L]` (content times primitive gcd), with positive leading coefficient.
    pub(crate) fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content().abs());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content().abs());
        }
        // gcd with a monomial is a content gcd and a power shift
        if self.is_monomial() || other.is_monomial() {
            let cont = num::integer::gcd(self.content(), other.content());
            let j = self.low_order().unwrap().min(other.low_order().unwrap());
            return Self::monomial(cont, j);
        }
        let cont = num::integer::gcd(self.content(), other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.scale(&cont)
    }

    fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub(crate) fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    fn fmt_with_var(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if k == 0 {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                if k == 1 {
                    write!(f, "{}", var)?;
                } else {
                    write!(f, "{}^{}", var, k)?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// GClass
// ---------------------------------------------------------------------------

/// An element of the localized Grothendieck ring, as a canonical rational
/// function in `L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GClass {
    num: ZPoly,
    den: ZPoly,
}

impl GClass {
    fn canonical(num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator in GClass");
        if num.is_zero() {
            return GClass {
                num: ZPoly::zero(),
                den: ZPoly::constant(BigInt::one()),
            };
        }
        // Monomial denominators (the ubiquitous Laurent case) reduce by a
        // power shift and an integer content gcd; no polynomial gcd needed.
        if den.is_monomial() {
            let dk = den.degree().unwrap();
            let shift = num.low_order().unwrap().min(dk);
            let mut num = num.shr(shift);
            let mut dc = den.leading();
            if dc.is_negative() {
                num = num.neg();
                dc = -dc;
            }
            if !dc.is_one() {
                let g = num::integer::gcd(num.content(), dc.clone());
                if !g.is_one() {
                    num = num.div_content(&g);
                    dc /= g;
                }
            }
            return GClass {
                num,
                den: ZPoly::monomial(dc, dk - shift),
            };
        }
        let g = num.gcd(&den);
        let mut num = if g.is_one_poly() { num } else { num.div_exact(&g) };
        let mut den = if g.is_one_poly() { den } else { den.div_exact(&g) };
        if den.leading().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        GClass { num, den }
    }

    pub fn zero() -> Self {
        GClass::canonical(ZPoly::zero(), ZPoly::constant(BigInt::one()))
    }

    pub fn one() -> Self {
        GClass::from_int(1)
    }

    /// The Lefschetz class `L`.
    pub fn lefschetz() -> Self {
        GClass::l_pow(1)
    }

    /// `L^k` for any integer `k` (negative exponents allowed).
    pub fn l_pow(k: i64) -> Self {
        if k >= 0 {
            GClass {
                num: ZPoly::monomial(BigInt::one(), k as usize),
                den: ZPoly::constant(BigInt::one()),
            }
        } else {
            GClass {
                num: ZPoly::constant(BigInt::one()),
                den: ZPoly::monomial(BigInt::one(), (-k) as usize),
            }
        }
    }

    pub fn from_int(n: i64) -> Self {
        GClass::canonical(
            ZPoly::constant(BigInt::from(n)),
            ZPoly::constant(BigInt::one()),
        )
    }

    pub fn from_bigint(n: BigInt) -> Self {
        GClass::canonical(ZPoly::constant(n), ZPoly::constant(BigInt::one()))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        GClass::canonical(
            ZPoly::constant(r.numer().clone()),
            ZPoly::constant(r.denom().clone()),
        )
    }

    /// `c * L^k` for any integer `k`.
    pub fn monomial(c: BigInt, k: i64) -> Self {
        GClass::from_bigint(c) * GClass::l_pow(k)
    }

    /// Build from (coefficient, exponent) term lists; accepts non-canonical input.
    pub fn from_terms(num: &[(BigInt, usize)], den: &[(BigInt, usize)]) -> Result<Self> {
        let build = |terms: &[(BigInt, usize)]| {
            let mut p = ZPoly::zero();
            for (c, e) in terms {
                p = p.add(&ZPoly::monomial(c.clone(), *e));
            }
            p
        };
        let d = build(den);
        if d.is_zero() {
            return Err(Error::Parse("denominator is the zero polynomial".into()));
        }
        Ok(GClass::canonical(build(num), d))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == GClass::one()
    }

    /// Numerator terms as (coefficient, exponent), lowest exponent first.
    pub fn num_terms(&self) -> Vec<(BigInt, usize)> {
        self.num
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.clone(), k))
            .collect()
    }

    pub fn den_terms(&self) -> Vec<(BigInt, usize)> {
        self.den
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (c.clone(), k))
            .collect()
    }

    pub fn checked_div(&self, b: &GClass) -> Result<GClass> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GClass::canonical(
            self.num.mul(&b.den),
            self.den.mul(&b.num),
        ))
    }

    /// Integer power, with negative exponents inverting.
    pub fn pow(&self, e: i64) -> GClass {
        if e == 0 {
            return GClass::one();
        }
        let base = if e < 0 {
            GClass::one().checked_div(self).expect("inverse of zero class")
        } else {
            self.clone()
        };
        let mut acc = GClass::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }

    /// Exact value at `L = x`; `None` when the denominator vanishes there.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Euler characteristic: the value at `L = 1`.
    pub fn euler_char(&self) -> Result<BigRational> {
        self.eval(&BigRational::one()).ok_or(Error::PoleAtOne)
    }

    /// Exact rational value at `L = q` for an integer `q >= 2`.
    pub fn specialize(&self, q: i64) -> Result<BigRational> {
        assert!(q >= 2, "specialization point must be >= 2");
        self.eval(&BigRational::from_integer(BigInt::from(q)))
            .ok_or(Error::PoleAtQ(q))
    }

    /// Filtration degree `deg(num) - deg(den)`; `None` stands for the zero
    /// class (degree minus infinity).
    pub fn virtual_dim(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    /// Closed form of `sum_{k>=0} first * ratio^k = first / (1 - ratio)`;
    /// requires the series to converge in the dimension filtration.
    pub fn geometric_sum(first: &GClass, ratio: &GClass) -> Result<GClass> {
        if let Some(d) = ratio.virtual_dim() {
            if d >= 0 {
                return Err(Error::DivergentSeries);
            }
        }
        first.checked_div(&(GClass::one() - ratio.clone()))
    }

    /// Laurent-polynomial view: terms `(exponent, coefficient)` sorted by
    /// exponent, or `None` when the class is a proper rational function.
    ///
    /// Canonical form makes this a syntactic test: the class is a Laurent
    /// polynomial iff the denominator is exactly `L^k`.
    pub fn as_laurent(&self) -> Option<Vec<(i64, BigInt)>> {
        if self.is_zero() {
            return Some(Vec::new());
        }
        let k = self.den.degree().unwrap();
        if self.den.low_order() != Some(k) || !self.den.leading().is_one() {
            return None;
        }
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e as i64 - k as i64, c.clone()))
                .collect(),
        )
    }

    pub fn is_laurent(&self) -> bool {
        self.as_laurent().is_some()
    }

    /// Build a Laurent polynomial from `(exponent, coefficient)` terms.
    pub fn from_laurent(terms: &[(i64, BigInt)]) -> GClass {
        let mut acc = GClass::zero();
        for (e, c) in terms {
            acc = acc + GClass::monomial(c.clone(), *e);
        }
        acc
    }
}

impl Add for GClass {
    type Output = GClass;
    fn add(self, rhs: GClass) -> GClass {
        GClass::canonical(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
}

impl Sub for GClass {
    type Output = GClass;
    fn sub(self, rhs: GClass) -> GClass {
        self + (-rhs)
    }
}

impl Neg for GClass {
    type Output = GClass;
    fn neg(self) -> GClass {
        GClass {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Mul for GClass {
    type Output = GClass;
    fn mul(self, rhs: GClass) -> GClass {
        GClass::canonical(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Div for GClass {
    type Output = GClass;
    fn div(self, rhs: GClass) -> GClass {
        self.checked_div(&rhs).expect("division by zero class")
    }
}

impl fmt::Display for GClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Laurent monomial denominators print inline as negative powers.
        if let Some(terms) = self.as_laurent() {
            if terms.len() == 1 {
                let (e, c) = &terms[0];
                if !c.abs().is_one() || *e == 0 {
                    write!(f, "{}", c)?;
                    if *e != 0 {
                        write!(f, "*")?;
                    }
                } else if c.is_negative() {
                    write!(f, "-")?;
                }
                if *e == 1 {
                    write!(f, "L")?;
                } else if *e != 0 {
                    write!(f, "L^{}", e)?;
                }
                return Ok(());
            }
            let k = self.den.degree().unwrap();
            if k > 0 {
                write!(f, "L^-{}*(", k)?;
                self.num.fmt_with_var(f, "L")?;
                return write!(f, ")");
            }
            return self.num.fmt_with_var(f, "L");
        }
        write!(f, "(")?;
        self.num.fmt_with_var(f, "L")?;
        write!(f, ")/(")?;
        self.den.fmt_with_var(f, "L")?;
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> GClass {
        GClass::lefschetz()
    }

    /// Independent long-division oracle over the rationals.
    fn rational_divide(num: &[i64], den: &[i64]) -> Option<Vec<BigRational>> {
        let mut rem: Vec<BigRational> = num
            .iter()
            .map(|c| BigRational::from_integer(BigInt::from(*c)))
            .collect();
        let den: Vec<BigRational> = den
            .iter()
            .map(|c| BigRational::from_integer(BigInt::from(*c)))
            .collect();
        let db = den.iter().rposition(|c| !c.is_zero())?;
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db)];
        for k in (0..quot.len()).rev() {
            let head = rem[k + db].clone();
            if head.is_zero() {
                continue;
            }
            let q = head / den[db].clone();
            for (j, b) in den.iter().enumerate().take(db + 1) {
                let sub = q.clone() * b.clone();
                rem[k + j] -= sub;
            }
            quot[k] = q;
        }
        rem.iter().all(|c| c.is_zero()).then_some(quot)
    }

    #[test]
    fn ring_ops_examples() {
        assert_eq!((l() - GClass::one()) + GClass::one(), l());
        assert_eq!(
            (l() + GClass::one()) * (l() - GClass::one()),
            l() * l() - GClass::one()
        );
    }

    #[test]
    fn quotient_matches_long_division_oracle() {
        // (L^3 - 1)/(L - 1) via the independent rational long division.
        let quot = rational_divide(&[-1, 0, 0, 1], &[-1, 1]).unwrap();
        let expected: Vec<i64> = vec![1, 1, 1];
        assert_eq!(
            quot,
            expected
                .iter()
                .map(|c| BigRational::from_integer(BigInt::from(*c)))
                .collect::<Vec<_>>()
        );
        let lhs = (l().pow(3) - GClass::one()) / (l() - GClass::one());
        assert_eq!(lhs, l() * l() + l() + GClass::one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            GClass::one().checked_div(&GClass::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn euler_char_examples() {
        assert_eq!(
            (l() - GClass::one()).euler_char().unwrap(),
            BigRational::zero()
        );
        let q = (l().pow(3) - GClass::one()) / (l() - GClass::one());
        assert_eq!(
            q.euler_char().unwrap(),
            BigRational::from_integer(BigInt::from(3))
        );
        // 1/(1 - L^-2) has a pole at L = 1.
        let c = GClass::one() / (GClass::one() - GClass::l_pow(-2));
        assert_eq!(c.euler_char(), Err(Error::PoleAtOne));
    }

    #[test]
    fn specialize_examples() {
        assert_eq!(
            (l() * l()).specialize(3).unwrap(),
            BigRational::from_integer(BigInt::from(9))
        );
        let a = (l() + GClass::one()) * (l() - GClass::one()) * GClass::l_pow(-3);
        assert_eq!(
            a.specialize(2).unwrap(),
            BigRational::new(BigInt::from(3), BigInt::from(8))
        );
        let b = GClass::l_pow(-2) - GClass::l_pow(-5);
        assert_eq!(
            b.specialize(2).unwrap(),
            BigRational::new(BigInt::from(7), BigInt::from(32))
        );
    }

    #[test]
    fn specialization_poles_are_reported() {
        let c = GClass::one() / (l() * l() - GClass::from_int(4));
        assert_eq!(c.specialize(2), Err(Error::PoleAtQ(2)));
        assert!(c.specialize(3).is_ok());
    }

    #[test]
    fn virtual_dim_examples() {
        assert_eq!((l() * l()).virtual_dim(), Some(2));
        assert_eq!(
            ((l() - GClass::one()) * GClass::l_pow(-3)).virtual_dim(),
            Some(-2)
        );
        assert_eq!(GClass::zero().virtual_dim(), None);
    }

    #[test]
    fn geometric_sum_examples() {
        // L^-6 / (1 - L^-2) = L^-4 / (L^2 - 1)
        let s = GClass::geometric_sum(&GClass::l_pow(-6), &GClass::l_pow(-2)).unwrap();
        let expected = GClass::l_pow(-4) / (l() * l() - GClass::one());
        assert_eq!(s, expected);

        assert_eq!(
            GClass::geometric_sum(&GClass::one(), &GClass::zero()).unwrap(),
            GClass::one()
        );
        assert_eq!(
            GClass::geometric_sum(&GClass::l_pow(-1), &l()),
            Err(Error::DivergentSeries)
        );
    }

    #[test]
    fn geometric_sum_defining_identity() {
        let first = (l() + GClass::one()) * GClass::l_pow(-2);
        let ratio = (l() - GClass::one()) * GClass::l_pow(-3);
        let s = GClass::geometric_sum(&first, &ratio).unwrap();
        assert_eq!(s * (GClass::one() - ratio.clone()), first);
    }

    #[test]
    fn partial_sums_converge_to_geometric_closed_form() {
        // Partial sum plus the closed-form tail equals the closed form, exactly.
        let first = GClass::l_pow(-6);
        let ratio = GClass::l_pow(-2);
        let total = GClass::geometric_sum(&first, &ratio).unwrap();
        let n = 20;
        let mut partial = GClass::zero();
        let mut term = first.clone();
        for _ in 0..n {
            partial = partial + term.clone();
            term = term * ratio.clone();
        }
        let tail = GClass::geometric_sum(&term, &ratio).unwrap();
        assert_eq!(partial.clone() + tail, total);
        // Numeric convergence at q = 2: the residual equals the tail value.
        let q = 2;
        let residual = total.specialize(q).unwrap() - partial.specialize(q).unwrap();
        let want = GClass::geometric_sum(&term, &ratio)
            .unwrap()
            .specialize(q)
            .unwrap();
        assert_eq!(residual, want);
    }

    #[test]
    fn laurent_view() {
        let a = GClass::l_pow(-2) * (l().pow(3) + GClass::from_int(2));
        let terms = a.as_laurent().unwrap();
        assert_eq!(
            terms,
            vec![(-2, BigInt::from(2)), (1, BigInt::from(1))]
        );
        let b = GClass::one() / (l() - GClass::one());
        assert!(b.as_laurent().is_none());
        // 1/2 is not a Laurent polynomial either.
        let half = GClass::from_rational(&BigRational::new(BigInt::one(), BigInt::from(2)));
        assert!(half.as_laurent().is_none());
    }

    #[test]
    fn canonical_forms_are_unique() {
        let a = GClass::from_terms(
            &[(BigInt::from(2), 2), (BigInt::from(-2), 0)],
            &[(BigInt::from(2), 1), (BigInt::from(-2), 0)],
        )
        .unwrap();
        assert_eq!(a, l() + GClass::one());
        // Negative leading denominator coefficient gets normalized away.
        let b = GClass::from_terms(
            &[(BigInt::from(1), 0)],
            &[(BigInt::from(-1), 1)],
        )
        .unwrap();
        assert_eq!(b, GClass::zero() - GClass::l_pow(-1));
    }

    #[test]
    fn display_forms() {
        assert_eq!(GClass::l_pow(-3).to_string(), "L^-3");
        assert_eq!((l() - GClass::one()).to_string(), "L - 1");
        assert_eq!(GClass::from_int(-1).to_string(), "-1");
        let r = GClass::one() / (l() * l() - GClass::one());
        assert_eq!(r.to_string(), "(1)/(L^2 - 1)");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_laurent() -> impl Strategy<Value = GClass> {
            proptest::collection::vec((-4i64..5, -6i64..7), 0..4).prop_map(|terms| {
                let terms: Vec<(i64, BigInt)> = terms
                    .into_iter()
                    .map(|(e, c)| (e, BigInt::from(c)))
                    .collect();
                GClass::from_laurent(&terms)
            })
        }

        fn arb_class() -> impl Strategy<Value = GClass> {
            (arb_laurent(), arb_laurent()).prop_map(|(a, b)| {
                let den = if b.is_zero() { GClass::one() } else { b };
                a / den
            })
        }

        proptest! {
            #[test]
            fn field_axioms(a in arb_class(), b in arb_class(), c in arb_class()) {
                prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
                prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
                prop_assert_eq!(
                    (a.clone() + b.clone()) + c.clone(),
                    a.clone() + (b.clone() + c.clone())
                );
                prop_assert_eq!(
                    (a.clone() * b.clone()) * c.clone(),
                    a.clone() * (b.clone() * c.clone())
                );
                prop_assert_eq!(
                    a.clone() * (b.clone() + c.clone()),
                    a.clone() * b.clone() + a.clone() * c.clone()
                );
                prop_assert_eq!(a.clone() + GClass::zero(), a.clone());
                prop_assert_eq!(a.clone() * GClass::one(), a.clone());
                prop_assert_eq!(a.clone() - a.clone(), GClass::zero());
                if !a.is_zero() {
                    prop_assert_eq!(a.clone() / a.clone(), GClass::one());
                }
            }

            #[test]
            fn specialize_is_multiplicative(a in arb_laurent(), b in arb_laurent()) {
                for q in [2i64, 3, 5] {
                    let lhs = (a.clone() * b.clone()).specialize(q).unwrap();
                    let rhs = a.specialize(q).unwrap() * b.specialize(q).unwrap();
                    prop_assert_eq!(lhs, rhs);
                }
            }

            #[test]
            fn euler_char_is_a_ring_homomorphism(a in arb_laurent(), b in arb_laurent()) {
                let xa = a.euler_char().unwrap();
                let xb = b.euler_char().unwrap();
                prop_assert_eq!((a.clone() + b.clone()).euler_char().unwrap(), xa.clone() + xb.clone());
                prop_assert_eq!((a * b).euler_char().unwrap(), xa * xb);
            }
        }
    }
}
