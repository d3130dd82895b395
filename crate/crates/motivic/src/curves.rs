//! Plane-branch geometry from parametrizations.
//!
//! A [`Branch`] is a parametrized plane branch `t -> (x(t), y(t))` through
//! the origin; a [`CurveGerm`] is a collection of pairwise distinct branches.
//! All classical invariants are computed constructively from the
//! parametrization:
//!
//! - [`blow_up`] computes the strict transform under one point blow-up, the
//!   multiplicity it absorbs, and the exceptional tangent direction;
//! - [`mult_sequence`] iterates blow-ups until the transform is smooth;
//! - [`intersection`] runs the Noether recursion
//!   `c1 . c2 = m1 m2 + (transforms) . (transforms)` while the transforms
//!   share an exceptional point;
//! - [`delta`] sums `m(m-1)/2` over multiplicity sequences plus pairwise
//!   intersection numbers; the Milnor number is `2 delta - k + 1` and the
//!   partial-derivative order invariant is `P = mu + v - 1`;
//! - [`p_direct`] recomputes `P` independently from a defining equation, as
//!   the sum over branches of `min(ord f_x(c), ord f_y(c))`;
//! - [`correspondence_factor`] is the universal class `L^(delta - k - P)`
//!   converting function-space measures into arc-space measures, with the
//!   equivalent exponent form `L^(-delta - v)`.
//!
//! Precision: a jet only determines invariants up to its truncation order,
//! so every germ-level operation runs under an adaptive driver that doubles
//! the working precision until two consecutive levels agree.  Exact
//! (complete polynomial) inputs may be re-truncated upward freely; jets are
//! capped by their stored order and report `PrecisionExhausted` instead of
//! guessing.

use num::bigint::BigInt;
use num::rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gring::GClass;
use crate::series::{Coeff, TruncSeries};

type QSeries = TruncSeries<BigRational>;

fn q0() -> BigRational {
    <BigRational as Coeff>::zero()
}

fn q1() -> BigRational {
    <BigRational as Coeff>::one()
}

/// Precision ceiling for the adaptive driver on exact inputs.
const PRECISION_CAP: usize = 4096;
/// Stationary blow-up transforms are declared degenerate once the working
/// precision is at least this far beyond the branch orders.
const STATIONARY_CONFIDENCE: usize = 64;

// ---------------------------------------------------------------------------
// Branch and germ types
// ---------------------------------------------------------------------------

/// A parametrized plane branch `(x(t), y(t))`, both components of order >= 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    x: QSeries,
    y: QSeries,
    /// The stored coefficients are the complete parametrization (a
    /// polynomial), not a jet; precision may be raised freely.
    exact: bool,
}

impl Branch {
    pub fn new(x: QSeries, y: QSeries, exact: bool) -> Result<Branch> {
        if x.nvars() != 1 || y.nvars() != 1 {
            return Err(Error::InvalidBranch("components must be univariate".into()));
        }
        if x.coeff_t(0) != q0() || y.coeff_t(0) != q0() {
            return Err(Error::InvalidBranch(
                "components must vanish at t = 0".into(),
            ));
        }
        if x.is_zero() && y.is_zero() {
            return Err(Error::InvalidBranch(
                "both components vanish identically".into(),
            ));
        }
        let trunc = x.trunc().min(y.trunc());
        Ok(Branch {
            x: x.with_trunc(trunc),
            y: y.with_trunc(trunc),
            exact,
        })
    }

    /// Exact branch from integer monomial data `x = t^p`, `y = t^q`.
    pub fn monomial(p: usize, q: usize) -> Branch {
        let trunc = 2 * (p + q) + 4;
        Branch::new(
            QSeries::t_monomial(q1(), p, trunc),
            QSeries::t_monomial(q1(), q, trunc),
            true,
        )
        .expect("monomial branch")
    }

    /// Exact branch from dense integer coefficient lists (degree 0 first).
    pub fn from_int_coeffs(x: &[i64], y: &[i64]) -> Result<Branch> {
        let trunc = 2 * (x.len() + y.len()) + 8;
        let conv = |cs: &[i64]| {
            let coeffs: Vec<BigRational> = cs
                .iter()
                .map(|c| BigRational::from_integer(BigInt::from(*c)))
                .collect();
            QSeries::from_univar_coeffs(&coeffs, trunc)
        };
        Branch::new(conv(x), conv(y), true)
    }

    pub fn x(&self) -> &QSeries {
        &self.x
    }

    pub fn y(&self) -> &QSeries {
        &self.y
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn trunc(&self) -> usize {
        self.x.trunc().min(self.y.trunc())
    }

    /// Swap the plane coordinates.
    pub fn swapped(&self) -> Branch {
        Branch {
            x: self.y.clone(),
            y: self.x.clone(),
            exact: self.exact,
        }
    }

    fn at_precision(&self, n: usize) -> Result<(QSeries, QSeries)> {
        if !self.exact && n > self.trunc() {
            return Err(Error::PrecisionExhausted(format!(
                "jet of order {} cannot be extended to precision {}",
                self.trunc(),
                n
            )));
        }
        Ok((self.x.with_trunc(n), self.y.with_trunc(n)))
    }

    /// Order of the branch at the origin, `min(ord x, ord y)`.
    pub fn order(&self) -> Result<u64> {
        pair_order(&self.x, &self.y)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A nonempty collection of pairwise distinct branches.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveGerm {
    branches: Vec<Branch>,
}

impl CurveGerm {
    pub fn new(branches: Vec<Branch>) -> Result<CurveGerm> {
        if branches.is_empty() {
            return Err(Error::InvalidBranch("germ must have at least one branch".into()));
        }
        for i in 0..branches.len() {
            for j in i + 1..branches.len() {
                if same_branch(&branches[i], &branches[j])? {
                    return Err(Error::CoincidentBranches);
                }
            }
        }
        Ok(CurveGerm { branches })
    }

    pub fn single(branch: Branch) -> CurveGerm {
        CurveGerm {
            branches: vec![branch],
        }
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn num_branches(&self) -> usize {
        self.branches.len()
    }

    /// Total order: the sum of the branch orders.
    pub fn order(&self) -> Result<u64> {
        let mut v = 0;
        for b in &self.branches {
            v += b.order()?;
        }
        Ok(v)
    }
}

/// Exceptional-divisor point met by a strict transform: the tangent slope
/// `lim y/x`, or the vertical direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TangentPoint {
    Slope(BigRational),
    Vertical,
}

impl fmt::Display for TangentPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangentPoint::Slope(c) => write!(f, "{}", c),
            TangentPoint::Vertical => write!(f, "inf"),
        }
    }
}

// ---------------------------------------------------------------------------
// Bivariate polynomials (defining equations)
// ---------------------------------------------------------------------------

/// Bivariate polynomial in `x, y` with exact rational coefficients.
///
/// Values used as curve equations must vanish at the origin; polynomials
/// arising as partial derivatives need not.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanePoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl PlanePoly {
    /// Curve equation from `(coefficient, i, j)` terms; enforces `f(0,0) = 0`.
    pub fn new(terms: &[(BigRational, u32, u32)]) -> Result<PlanePoly> {
        let p = Self::raw(terms);
        if p.terms.contains_key(&(0, 0)) {
            return Err(Error::Parse("curve equation must vanish at the origin".into()));
        }
        Ok(p)
    }

    fn raw(terms: &[(BigRational, u32, u32)]) -> PlanePoly {
        let mut map: BTreeMap<(u32, u32), BigRational> = BTreeMap::new();
        for (c, i, j) in terms {
            let e = map.entry((*i, *j)).or_insert_with(q0);
            *e += c;
        }
        map.retain(|_, c| *c != q0());
        PlanePoly { terms: map }
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(terms: &[(i64, u32, u32)]) -> Result<PlanePoly> {
        Self::new(
            &terms
                .iter()
                .map(|(c, i, j)| (BigRational::from_integer(BigInt::from(*c)), *i, *j))
                .collect::<Vec<_>>(),
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn partial_x(&self) -> PlanePoly {
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|((i, _), _)| *i >= 1)
            .map(|((i, j), c)| {
                (
                    c * BigRational::from_integer(BigInt::from(*i)),
                    i - 1,
                    *j,
                )
            })
            .collect();
        Self::raw(&terms)
    }

    pub fn partial_y(&self) -> PlanePoly {
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|((_, j), _)| *j >= 1)
            .map(|((i, j), c)| {
                (
                    c * BigRational::from_integer(BigInt::from(*j)),
                    *i,
                    j - 1,
                )
            })
            .collect();
        Self::raw(&terms)
    }

    /// Evaluate on a pair of series.
    pub fn eval_on(&self, x: &QSeries, y: &QSeries) -> QSeries {
        let trunc = x.trunc().min(y.trunc());
        let max_i = self.terms.keys().map(|(i, _)| *i).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|(_, j)| *j).max().unwrap_or(0);
        let mut xpow = Vec::with_capacity(max_i as usize + 1);
        let mut ypow = Vec::with_capacity(max_j as usize + 1);
        xpow.push(QSeries::one(&["t"], trunc));
        ypow.push(QSeries::one(&["t"], trunc));
        for i in 1..=max_i as usize {
            let p = xpow[i - 1].mul(&x.with_trunc(trunc));
            xpow.push(p);
        }
        for j in 1..=max_j as usize {
            let p = ypow[j - 1].mul(&y.with_trunc(trunc));
            ypow.push(p);
        }
        let mut acc = QSeries::zero(&["t"], trunc);
        for ((i, j), c) in &self.terms {
            acc = acc.add(&xpow[*i as usize].mul(&ypow[*j as usize]).scalar_mul(c));
        }
        acc
    }

    /// Substitute `x -> x + c*y`, the shear used to normalize which partial
    /// derivative carries the minimal vanishing order along an arc.
    pub fn shear_x(&self, c: &BigRational) -> PlanePoly {
        // (x + c y)^i expanded by the binomial theorem.
        let mut out: Vec<(BigRational, u32, u32)> = Vec::new();
        for ((i, j), a) in &self.terms {
            let mut binom = q1();
            for r in 0..=*i {
                // binom = C(i, r) c^r at this point
                out.push((a * &binom, i - r, j + r));
                if r < *i {
                    binom = binom * c
                        * BigRational::from_integer(BigInt::from(i - r))
                        / BigRational::from_integer(BigInt::from(r + 1));
                }
            }
        }
        Self::raw(&out)
    }
}

impl fmt::Display for PlanePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            if *i > 0 {
                write!(f, "*x^{}", i)?;
            }
            if *j > 0 {
                write!(f, "*y^{}", j)?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Working-precision kernels (operate on series pairs)
// ---------------------------------------------------------------------------

fn pair_order(x: &QSeries, y: &QSeries) -> Result<u64> {
    match (x.order(), y.order()) {
        (Some(a), Some(b)) => Ok(a.min(b) as u64),
        (Some(a), None) => Ok(a as u64),
        (None, Some(b)) => Ok(b as u64),
        (None, None) => Err(Error::PrecisionExhausted(
            "both components vanish through working precision".into(),
        )),
    }
}

struct BlowUpStep {
    x: QSeries,
    y: QSeries,
    mult: u64,
    point: TangentPoint,
}

/// One point blow-up at working precision: chart `(x, y/x)` when
/// `ord x <= ord y`, else `(x/y, y)`; the transform is translated to pass
/// through the origin of the chart.
fn blow_up_at(x: &QSeries, y: &QSeries) -> Result<BlowUpStep> {
    let vx = x.order();
    let vy = y.order();
    let v = pair_order(x, y)?;
    let chart_one = match (vx, vy) {
        (Some(a), Some(b)) => a <= b,
        (Some(_), None) => true,
        (None, Some(_)) => false,
        (None, None) => unreachable!(),
    };
    if chart_one {
        let a = vx.unwrap();
        let unit = x.shift_down(a);
        let ratio = y.shift_down(a).mul(&unit.recip()?);
        let c = ratio.coeff_t(0);
        let mut yprime = ratio;
        let c0 = Coeff::sub(&yprime.coeff_t(0), &c);
        yprime.set(vec![0], c0);
        Ok(BlowUpStep {
            x: x.with_trunc(yprime.trunc()),
            y: yprime,
            mult: v,
            point: TangentPoint::Slope(c),
        })
    } else {
        let b = vy.unwrap();
        let unit = y.shift_down(b);
        let ratio = x.shift_down(b).mul(&unit.recip()?);
        debug_assert!(ratio.coeff_t(0) == q0());
        Ok(BlowUpStep {
            x: ratio.clone(),
            y: y.with_trunc(ratio.trunc()),
            mult: v,
            point: TangentPoint::Vertical,
        })
    }
}

/// Multiplicity sequence at working precision; `exact_input` upgrades a
/// persistently stationary transform into a degeneracy verdict.
fn mult_sequence_at(x: &QSeries, y: &QSeries, exact_input: bool) -> Result<Vec<u64>> {
    let mut seq = Vec::new();
    let mut cx = x.clone();
    let mut cy = y.clone();
    let budget = x.trunc().min(y.trunc()) + 2;
    for _ in 0..budget {
        let v = pair_order(&cx, &cy)?;
        if v == 1 {
            return Ok(seq);
        }
        // A stationary transform (one component identically zero through
        // precision, multiplicity still >= 2) signals a multiple cover of a
        // smooth germ.
        if cx.order().is_none() || cy.order().is_none() {
            let slack = cx.trunc().min(cy.trunc()).saturating_sub(v as usize);
            if exact_input && slack >= STATIONARY_CONFIDENCE {
                return Err(Error::DegenerateBranch);
            }
            return Err(Error::PrecisionExhausted(
                "blow-up transform stationary through working precision".into(),
            ));
        }
        seq.push(v);
        let step = blow_up_at(&cx, &cy)?;
        cx = step.x;
        cy = step.y;
    }
    Err(Error::PrecisionExhausted(
        "blow-up chain exceeded the working-precision budget".into(),
    ))
}

/// Noether recursion at working precision.
fn intersection_at(
    x1: &QSeries,
    y1: &QSeries,
    x2: &QSeries,
    y2: &QSeries,
    budget: usize,
) -> Result<u64> {
    if budget == 0 {
        return Err(Error::PrecisionExhausted(
            "intersection recursion budget exhausted".into(),
        ));
    }
    let v1 = pair_order(x1, y1)?;
    let v2 = pair_order(x2, y2)?;
    let s1 = blow_up_at(x1, y1)?;
    let s2 = blow_up_at(x2, y2)?;
    let mut acc = v1 * v2;
    if s1.point == s2.point {
        acc += intersection_at(&s1.x, &s1.y, &s2.x, &s2.y, budget - 1)?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Adaptive precision driver
// ---------------------------------------------------------------------------

fn visible_order_sum(b: &Branch) -> usize {
    let vx = b.x.order().unwrap_or(1);
    let vy = b.y.order().unwrap_or(1);
    vx + vy
}

/// Run `f` on the branches at doubling precision until two consecutive
/// levels agree.  Exact inputs extend up to a hard cap; jets are limited by
/// their stored truncation (a single available level is accepted as-is,
/// since the jet defines the invariant only through that order).
fn adaptive<T: PartialEq>(
    branches: &[Branch],
    f: impl Fn(&[(QSeries, QSeries)]) -> Result<T>,
) -> Result<T> {
    let all_exact = branches.iter().all(|b| b.exact);
    let n0 = branches
        .iter()
        .map(|b| 2 * visible_order_sum(b) + 4)
        .max()
        .unwrap_or(16)
        .max(8);
    let cap = if all_exact {
        PRECISION_CAP
    } else {
        branches.iter().map(|b| b.trunc()).min().unwrap_or(0)
    };
    let mut n = n0.min(cap);
    let mut prev: Option<T> = None;
    let mut levels_run = 0usize;
    loop {
        let at: Result<Vec<(QSeries, QSeries)>> =
            branches.iter().map(|b| b.at_precision(n)).collect();
        let outcome = at.and_then(|pairs| f(&pairs));
        levels_run += 1;
        match outcome {
            Ok(v) => {
                if let Some(p) = prev {
                    if p == v {
                        return Ok(v);
                    }
                }
                if n >= cap {
                    // Last available level: accept for jets that offered a
                    // single level, otherwise the value never stabilized.
                    if levels_run == 1 {
                        return Ok(v);
                    }
                    return Err(Error::PrecisionExhausted(
                        "result did not stabilize across precision levels".into(),
                    ));
                }
                prev = Some(v);
            }
            Err(Error::PrecisionExhausted(msg)) => {
                if n >= cap {
                    return Err(Error::PrecisionExhausted(msg));
                }
                prev = None;
            }
            Err(e) => return Err(e),
        }
        n = (2 * n).min(cap);
    }
}

// ---------------------------------------------------------------------------
// Branch identity and degeneracy
// ---------------------------------------------------------------------------

/// Decide whether two branches are the same parametrized germ, i.e. related
/// by a reparametrization `h` of order 1, through the joint working
/// precision.  `h` is determined coefficient by coefficient from the
/// component of minimal order and then verified on both components.
pub fn same_branch(b1: &Branch, b2: &Branch) -> Result<bool> {
    let n = if b1.exact && b2.exact {
        2 * (visible_order_sum(b1) + visible_order_sum(b2)) + 8
    } else {
        b1.trunc().min(b2.trunc())
    };
    let (x1, y1) = b1.at_precision(n.min(if b1.exact { n } else { b1.trunc() }))?;
    let (x2, y2) = b2.at_precision(n.min(if b2.exact { n } else { b2.trunc() }))?;
    let n = x1.trunc().min(x2.trunc());
    let (x1, y1, x2, y2) = (
        x1.with_trunc(n),
        y1.with_trunc(n),
        x2.with_trunc(n),
        y2.with_trunc(n),
    );

    // Orders are invariant under reparametrization.
    if x1.order() != x2.order() || y1.order() != y2.order() {
        return Ok(false);
    }
    // Pivot on the lower-order component.
    let (p1, q1, p2, q2) = {
        let ox = x1.order().unwrap_or(usize::MAX);
        let oy = y1.order().unwrap_or(usize::MAX);
        if ox <= oy {
            (&x1, &y1, &x2, &y2)
        } else {
            (&y1, &x1, &y2, &x2)
        }
    };
    let Some(a) = p1.order() else {
        // Both pivot components vanish through precision: compare the others.
        return Ok(q1 == q2);
    };
    let lc1 = p1.coeff_t(a);
    let lc2 = p2.coeff_t(a);
    let ratio = lc2 / lc1.clone();
    let Some(root) = ratio.nth_root(a as u32) else {
        // No rational leading reparametrization coefficient.  For
        // nondegenerate branches a coincidence would force a rational one.
        return Ok(false);
    };
    let mut candidates = vec![root.clone()];
    if a % 2 == 0 {
        candidates.push(-root);
    }
    'cand: for c1 in candidates {
        let mut h = QSeries::t_monomial(c1.clone(), 1, n);
        let pivot = BigRational::from_integer(BigInt::from(a as i64))
            * lc1.clone()
            * num::traits::Pow::pow(&c1, (a - 1) as i32);
        for j in 2..=n.saturating_sub(a) + 1 {
            let err = p1.compose(&h)?.sub(p2);
            match err.order() {
                None => break,
                Some(o) => {
                    // The first mismatch determines the next coefficient of h.
                    let j_needed = o as i64 - a as i64 + 1;
                    if j_needed < j as i64 {
                        continue 'cand;
                    }
                    let jj = j_needed as usize;
                    if jj + 1 > n {
                        break;
                    }
                    let delta = -err.coeff_t(o) / pivot.clone();
                    let cur = Coeff::add(&h.coeff_t(jj), &delta);
                    h.set(vec![jj as u32], cur);
                }
            }
        }
        if p1.compose(&h)?.sub(p2).order().is_none()
            && q1.compose(&h)?.sub(q2).order().is_none()
        {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Blow up the origin once: returns the translated strict transform, the
/// multiplicity at the center, and the exceptional point met.
pub fn blow_up(b: &Branch) -> Result<(Branch, u64, TangentPoint)> {
    let n = if b.exact {
        b.trunc().max(2 * visible_order_sum(b) + 4)
    } else {
        b.trunc()
    };
    let (x, y) = b.at_precision(n)?;
    let step = blow_up_at(&x, &y)?;
    let branch = Branch {
        x: step.x,
        y: step.y,
        exact: false,
    };
    Ok((branch, step.mult, step.point))
}

/// Multiplicity sequence `[m_0, m_1, ...]` from iterated blow-ups,
/// terminated at the first smooth transform (trailing 1s are dropped: they
/// contribute nothing to `delta`).
pub fn mult_sequence(b: &Branch) -> Result<Vec<u64>> {
    let exact = b.exact;
    adaptive(std::slice::from_ref(b), |pairs| {
        mult_sequence_at(&pairs[0].0, &pairs[0].1, exact)
    })
}

/// Intersection multiplicity of two distinct branches at the origin.
pub fn intersection(b1: &Branch, b2: &Branch) -> Result<u64> {
    if same_branch(b1, b2)? {
        return Err(Error::CoincidentBranches);
    }
    let branches = [b1.clone(), b2.clone()];
    adaptive(&branches, |pairs| {
        let budget = pairs[0].0.trunc() + 2;
        intersection_at(&pairs[0].0, &pairs[0].1, &pairs[1].0, &pairs[1].1, budget)
    })
}

fn delta_at(pairs: &[(QSeries, QSeries)], exact: bool) -> Result<u64> {
    let mut total = 0u64;
    for (x, y) in pairs {
        for m in mult_sequence_at(x, y, exact)? {
            total += m * (m - 1) / 2;
        }
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let budget = pairs[i].0.trunc() + 2;
            total += intersection_at(
                &pairs[i].0,
                &pairs[i].1,
                &pairs[j].0,
                &pairs[j].1,
                budget,
            )?;
        }
    }
    Ok(total)
}

/// Number of self-intersections of a generic deformation:
/// `sum_branches sum_m m(m-1)/2 + sum_{i<j} (c_i . c_j)`.
pub fn delta(g: &CurveGerm) -> Result<u64> {
    let exact = g.branches.iter().all(|b| b.exact);
    adaptive(&g.branches, |pairs| delta_at(pairs, exact))
}

/// Milnor number `mu = 2 delta - k + 1`.
pub fn milnor(g: &CurveGerm) -> Result<u64> {
    let d = delta(g)?;
    Ok(2 * d + 1 - g.num_branches() as u64)
}

/// Partial-derivative order invariant `P = mu + v - 1` with `v` the total
/// order of the germ.
pub fn p_invariant(g: &CurveGerm) -> Result<u64> {
    Ok(milnor(g)? + g.order()? - 1)
}

/// `P` recomputed from a defining equation: the sum over branches of
/// `min(ord f_x(c_i), ord f_y(c_i))`.  The equation must vanish on every
/// branch through the working precision.
pub fn p_direct(g: &CurveGerm, f: &PlanePoly) -> Result<u64> {
    let fx = f.partial_x();
    let fy = f.partial_y();
    adaptive(&g.branches, |pairs| {
        let mut total = 0u64;
        for (i, (x, y)) in pairs.iter().enumerate() {
            if f.eval_on(x, y).order().is_some() {
                return Err(Error::EquationDoesNotVanish(i));
            }
            let ox = fx.eval_on(x, y).order();
            let oy = fy.eval_on(x, y).order();
            let p = match (ox, oy) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => {
                    return Err(Error::PrecisionExhausted(
                        "both partial derivatives vanish through working precision".into(),
                    ))
                }
            };
            total += p as u64;
        }
        Ok(total)
    })
}

/// The universal correspondence factor `L^(delta - k - P)`.
pub fn correspondence_factor(g: &CurveGerm) -> Result<GClass> {
    let d = delta(g)? as i64;
    let k = g.num_branches() as i64;
    let p = p_invariant(g)? as i64;
    let v = g.order()? as i64;
    // The two printed exponent forms agree identically: with mu = 2d - k + 1
    // and P = mu + v - 1, d - k - P = -d - v.
    assert_eq!(d - k - p, -d - v, "correspondence exponent identity");
    Ok(GClass::l_pow(d - k - p))
}

/// Weight converting projectivized arc-space integrals: `L^(-delta)`.
pub fn projectivized_weight(g: &CurveGerm) -> Result<GClass> {
    Ok(GClass::l_pow(-(delta(g)? as i64)))
}

/// The same correspondence factor in the `L^(-delta - v)` form.
pub fn abstract_weight(g: &CurveGerm) -> Result<GClass> {
    Ok(GClass::l_pow(-(delta(g)? as i64) - g.order()? as i64))
}

/// Reparametrize so the lower-order component is exactly `t^a` (after an
/// optional coordinate swap); requires the leading coefficient to have an
/// `a`-th root in the rationals.
pub fn normalize(b: &Branch) -> Result<Branch> {
    let b = {
        let vx = b.x.order();
        let vy = b.y.order();
        match (vx, vy) {
            (Some(a), Some(c)) if a > c => b.swapped(),
            (None, Some(_)) => b.swapped(),
            _ => b.clone(),
        }
    };
    let n = if b.exact {
        b.trunc().max(2 * visible_order_sum(&b) + 4)
    } else {
        b.trunc()
    };
    let (x, y) = b.at_precision(n)?;
    let a = x
        .order()
        .ok_or_else(|| Error::PrecisionExhausted("x-component vanishes through precision".into()))?;
    // Fast path: already a unit monomial.
    if x == QSeries::t_monomial(q1(), a, x.trunc()) {
        return Branch::new(x, y, b.exact);
    }
    let unit = x.shift_down(a);
    let w = unit.nth_root_unit(a as u32)?;
    let s = w.shift_up(1).with_trunc(n);
    let s_inv = s.reversion()?;
    let y_new = y.compose(&s_inv)?;
    debug_assert_eq!(
        x.compose(&s_inv).unwrap(),
        QSeries::t_monomial(q1(), a, y_new.trunc())
    );
    Branch::new(
        QSeries::t_monomial(q1(), a, y_new.trunc()),
        y_new,
        false,
    )
}

/// Witness of degeneracy: `x(t) = xs(h(t))`, `y(t) = ys(h(t))` with
/// `h` of order `d >= 2`.
#[derive(Debug, Clone)]
pub struct DegeneracyWitness {
    pub d: u64,
    pub h: QSeries,
    pub xs: QSeries,
    pub ys: QSeries,
}

/// Detect whether a branch factors through a reparametrization of order
/// `d >= 2`, through the working precision.
///
/// The branch is normalized to `x = t^a` first.  Any factorization
/// `xs(h(t)) = t^a` forces `h` to be a power series in `t^d` (take the
/// `e`-th root `chi` of `xs = chi^e`, `e = a/d`; then `chi(h) = w t^d`
/// exactly, so `h = chi^{-1}(w t^d)`), hence `y = ys(h)` constrains every
/// coefficient of `y`: exponents divisible by `d` determine fresh
/// coefficients of `ys`, all others are consistency checks that must vanish.
/// Candidate orders `d` run over divisors of `gcd(ord x, ord y)`.
pub fn is_degenerate(b: &Branch) -> Result<bool> {
    Ok(degeneracy_witness(b)?.is_some())
}

pub fn degeneracy_witness(b: &Branch) -> Result<Option<DegeneracyWitness>> {
    let nb = normalize(b)?;
    let (x, y) = (nb.x.clone(), nb.y.clone());
    let n = x.trunc().min(y.trunc());
    let a = x.order().unwrap() as u64;
    let g = y
        .terms()
        .fold(a, |acc, (e, _)| num::integer::gcd(acc, e[0] as u64));
    let mut d = g;
    // Largest admissible order first; any divisor >= 2 of g works.
    while d >= 2 {
        if g % d == 0 {
            // Order-by-order elimination with h = t^d: coefficients of y at
            // exponents not divisible by d are consistency checks.
            let mut ys = QSeries::univar(n / d as usize);
            let mut consistent = true;
            for (e, c) in y.terms() {
                if !(e[0] as u64).is_multiple_of(d) {
                    consistent = false;
                    break;
                }
                ys.set(vec![e[0] / d as u32], c.clone());
            }
            if consistent {
                let h = QSeries::t_monomial(q1(), d as usize, n);
                let xs = QSeries::t_monomial(q1(), (a / d) as usize, n / d as usize);
                // verify by composition
                let ok_x = xs.compose(&h).unwrap().sub(&x).order().is_none();
                let ok_y = ys.compose(&h).unwrap().sub(&y).order().is_none();
                if ok_x && ok_y {
                    return Ok(Some(DegeneracyWitness { d, h, xs, ys }));
                }
            }
        }
        d -= 1;
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
