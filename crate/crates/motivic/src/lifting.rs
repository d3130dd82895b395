//! Newton iteration lifting approximate arcs to exact solutions of `f = 0`.
//!
//! Given a polynomial `f` and an arc `g` on which `f` vanishes to high
//! order, the iteration
//!
//! ```text
//! g_{k+1} = g_k - (0, f(g_k) / f_y(g_k))
//! ```
//!
//! produces arcs on which the order of `f` grows at least geometrically:
//! if `ord f(g_k) = N` and `Q = ord f_y(g_k)`, then `ord f(g_{k+1}) >=
//! 2(N - Q)`.  Strict growth therefore needs `ord f(g) > 2Q`, and the first
//! correction has order `N - Q`, so the `n1`-jet of the input survives to
//! the limit, where `n1 = m n - Q`, `m` is the arc order and `n` the largest
//! jet level with `ord f(g) > m n`.
//!
//! Coordinates must be arranged so the `y`-partial carries the minimal
//! vanishing order along the arc; [`rotate_coords`] finds the smallest shear
//! `x -> x + c y` that does this.

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::curves::{Branch, PlanePoly};
use crate::error::{Error, Result};
use crate::series::TruncSeries;

type QSeries = TruncSeries<BigRational>;

/// Outcome of a lift: the lifted branch, the per-step order trace, and the
/// jet-agreement bookkeeping.
#[derive(Debug, Clone)]
pub struct LiftReport {
    pub lifted: Branch,
    /// `(step index, ord f(g_k))` for every iterate, starting at step 0 with
    /// the input arc.  Orders strictly increase and each consecutive pair
    /// satisfies `ord_{k+1} >= 2(ord_k - Q)`.
    pub iterations: Vec<(usize, u64)>,
    /// Jet level through which the lifted arc agrees with the input:
    /// `n1 = m n - Q`.
    pub n1: u64,
    /// Minimal vanishing order of the partial derivatives along the input.
    pub q: u64,
    /// Largest jet level `n` with `ord f(g) > m n`.
    pub n: u64,
}

fn eval_orders(f: &PlanePoly, x: &QSeries, y: &QSeries) -> (Option<usize>, Option<usize>) {
    let ox = f.partial_x().eval_on(x, y).order();
    let oy = f.partial_y().eval_on(x, y).order();
    (ox, oy)
}

/// Shear `x -> x + c y` with the smallest natural `c` making the
/// `y`-partial carry the minimal vanishing order along the arc.  Returns the
/// substituted equation and the correspondingly transformed arc.
pub fn rotate_coords(f: &PlanePoly, g: &Branch) -> Result<(PlanePoly, Branch)> {
    const MAX_SHEAR: i64 = 64;
    let (x, y) = (g.x().clone(), g.y().clone());
    for c in 0..=MAX_SHEAR {
        let cq = BigRational::from_integer(BigInt::from(c));
        let fc = f.shear_x(&cq);
        // the sheared arc is (x - c y, y)
        let xc = x.sub(&y.scalar_mul(&cq));
        let gc = Branch::new(xc, y.clone(), g.is_exact())?;
        let (ox, oy) = eval_orders(&fc, gc.x(), gc.y());
        match (ox, oy) {
            (_, None) if ox.is_none() => continue,
            (Some(a), Some(b)) if b <= a => return Ok((fc, gc)),
            (None, Some(_)) => return Ok((fc, gc)),
            _ => continue,
        }
    }
    Err(Error::NoSuitableRotation)
}

/// Lift an approximate solution to an exact one modulo `t^(target+1)`.
///
/// Preconditions checked here: the partial-derivative order `Q` is finite
/// and carried by the `y`-partial (run [`rotate_coords`] first otherwise),
/// and `ord f(g) > 2Q` so every Newton step strictly increases the order.
pub fn lift_arc(f: &PlanePoly, g: &Branch, target: usize) -> Result<LiftReport> {
    // Working precision: division by f_y loses Q orders per step.
    let (ox0, oy0) = eval_orders(f, g.x(), g.y());
    let q = match (ox0, oy0) {
        (_, Some(b)) if ox0.is_none_or(|a| b <= a) => b,
        (Some(_), _) => {
            return Err(Error::HypothesisViolated(
                "the x-partial carries the minimal order; apply rotate_coords first".into(),
            ))
        }
        _ => {
            return Err(Error::HypothesisViolated(
                "both partial derivatives vanish along the arc through working precision".into(),
            ))
        }
    };
    // Every Newton step divides by the y-partial and costs Q orders of
    // certified precision, so the initial order must cover the worst-case
    // step count for the final residual to be certified through the target.
    let max_steps = (usize::BITS - target.max(2).leading_zeros()) as usize + 4;
    let work = target + 2 + q * max_steps;
    if !g.is_exact() && g.trunc() < work {
        return Err(Error::PrecisionExhausted(format!(
            "lift to t^{} needs precision {}, jet has {}",
            target,
            work,
            g.trunc()
        )));
    }
    let xg = g.x().with_trunc(work);
    let mut ycur = g.y().with_trunc(work);

    let m = g.order()?;
    let f_on = |y: &QSeries| f.eval_on(&xg, y);

    let ord0 = f_on(&ycur).order();
    let mut iterations = Vec::new();
    let (n, n1) = match ord0 {
        None => (
            // already a solution through the working precision
            (work as u64) / m,
            (work as u64 / m) * m - q as u64,
        ),
        Some(o) => {
            if o <= 2 * q {
                return Err(Error::HypothesisViolated(format!(
                    "ord f(g) = {} does not exceed 2Q = {}; no jet level n with \
                     ord f(g) > m n satisfies the growth condition",
                    o,
                    2 * q
                )));
            }
            let n = ((o - 1) / m as usize) as u64;
            (n, n * m - q as u64)
        }
    };

    if ord0.is_none() {
        // zero iterations; idempotent on exact solutions
        return Ok(LiftReport {
            lifted: Branch::new(xg, ycur, g.is_exact())?,
            iterations: vec![],
            n1,
            q: q as u64,
            n,
        });
    }

    let fy = f.partial_y();
    let mut prev_ord = ord0.unwrap();
    iterations.push((0, prev_ord as u64));
    for step in 1..=max_steps {
        // correction = f(g_k) / f_y(g_k)
        let numer = f_on(&ycur);
        let denom = fy.eval_on(&xg, &ycur);
        let dord = denom.order().ok_or_else(|| {
            Error::StalledIteration("y-partial vanished along an iterate".into())
        })?;
        if dord != q {
            return Err(Error::StalledIteration(format!(
                "order of the y-partial changed from {} to {}; re-run rotate_coords",
                q, dord
            )));
        }
        let unit = denom.shift_down(dord);
        let correction = numer.shift_down(dord).mul(&unit.recip()?);
        ycur = ycur.with_trunc(correction.trunc()).sub(&correction);
        match f_on(&ycur).order() {
            None => {
                // the residual vanishes through the iterate's certified
                // precision, which by the work-order choice covers the target
                debug_assert!(ycur.trunc() > target);
                return Ok(LiftReport {
                    lifted: Branch::new(xg.with_trunc(ycur.trunc()), ycur, false)?,
                    iterations,
                    n1,
                    q: q as u64,
                    n,
                });
            }
            Some(o) => {
                if o < 2 * (prev_ord - q) || o <= prev_ord {
                    return Err(Error::StalledIteration(format!(
                        "order grew {} -> {}, below the guaranteed 2(N - Q) = {}",
                        prev_ord,
                        o,
                        2 * (prev_ord - q)
                    )));
                }
                iterations.push((step, o as u64));
                if o > target {
                    return Ok(LiftReport {
                        lifted: Branch::new(xg.with_trunc(ycur.trunc()), ycur, false)?,
                        iterations,
                        n1,
                        q: q as u64,
                        n,
                    });
                }
                prev_ord = o;
            }
        }
    }
    Err(Error::StalledIteration(format!(
        "no convergence within {} steps",
        max_steps
    )))
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn lifts_perturbed_cusp() {
        // f = y^2 - x^3, g = (t^2, t^3 + t^9): trace starts 12 -> 18, and the
        // lift recovers (t^2, t^3) modulo t^31
        let f = PlanePoly::from_int_terms(&[(1, 0, 2), (-1, 3, 0)]).unwrap();
        let g = Branch::from_int_coeffs(&[0, 0, 1], &[0, 0, 0, 1, 0, 0, 0, 0, 0, 1]).unwrap();
        let report = lift_arc(&f, &g, 30).unwrap();
        assert_eq!(report.q, 3);
        assert_eq!(report.iterations[0], (0, 12));
        assert_eq!(report.iterations[1].1, 18);
        // quadratic growth along the whole trace
        for w in report.iterations.windows(2) {
            assert!(w[1].1 >= 2 * (w[0].1 - report.q));
            assert!(w[1].1 > w[0].1);
        }
        // f vanishes on the lift through t^31
        let residual = f.eval_on(report.lifted.x(), report.lifted.y());
        assert!(residual.order().is_none_or(|o| o > 30));
        // the lift is (t^2, t^3) through the working precision
        assert_eq!(report.lifted.y().coeff_t(3), q(1, 1));
        assert_eq!(report.lifted.y().coeff_t(9), q(0, 1));
        // jet agreement: n = floor(11/2) = 5, n1 = 2*5 - 3 = 7
        assert_eq!(report.n, 5);
        assert_eq!(report.n1, 7);
        for j in 0..=report.n1 as usize {
            assert_eq!(report.lifted.y().coeff_t(j), g.y().coeff_t(j), "jet at {}", j);
            assert_eq!(report.lifted.x().coeff_t(j), g.x().coeff_t(j));
        }
    }

    #[test]
    fn exact_solutions_lift_to_themselves() {
        let f = PlanePoly::from_int_terms(&[(1, 0, 1)]).unwrap();
        let g = Branch::from_int_coeffs(&[0, 1], &[0]).unwrap();
        let report = lift_arc(&f, &g, 25).unwrap();
        assert!(report.iterations.is_empty());
        assert_eq!(report.lifted.x().coeff_t(1), q(1, 1));
        assert!(report.lifted.y().is_zero());
    }

    #[test]
    fn single_newton_step_on_graph() {
        // f = y - x^2, g = (t, t^2 + t^40): Q = 0, one step to (t, t^2)
        let f = PlanePoly::from_int_terms(&[(1, 0, 1), (-1, 2, 0)]).unwrap();
        let mut y = QSeries::t_monomial(q(1, 1), 2, 80);
        y.set(vec![40], q(1, 1));
        let g = Branch::new(QSeries::t(80), y, true).unwrap();
        let report = lift_arc(&f, &g, 39).unwrap();
        assert_eq!(report.q, 0);
        assert_eq!(report.iterations.len(), 1);
        assert_eq!(report.iterations[0], (0, 40));
        assert_eq!(report.lifted.y().coeff_t(2), q(1, 1));
        assert_eq!(report.lifted.y().coeff_t(40), q(0, 1));
        // n = 39, n1 = 39
        assert_eq!(report.n, 39);
        assert_eq!(report.n1, 39);
    }

    #[test]
    fn rotation_examples() {
        // f = x^2 - y^3, g = (t^3, t^2): the x-partial carries the minimum;
        // a shear fixes it
        let f = PlanePoly::from_int_terms(&[(1, 2, 0), (-1, 0, 3)]).unwrap();
        let g = Branch::monomial(3, 2);
        assert!(matches!(
            lift_arc(&f, &g, 20),
            Err(Error::HypothesisViolated(_))
        ));
        let (fr, gr) = rotate_coords(&f, &g).unwrap();
        let (ox, oy) = super::eval_orders(&fr, gr.x(), gr.y());
        assert!(oy.unwrap() <= ox.unwrap_or(usize::MAX));
        // rotation preserves the vanishing of f on the arc
        assert!(fr.eval_on(gr.x(), gr.y()).order().is_none());

        // already normalized input: c = 0, unchanged
        let f = PlanePoly::from_int_terms(&[(1, 0, 2), (-1, 3, 0)]).unwrap();
        let g = Branch::monomial(2, 3);
        let (fr, gr) = rotate_coords(&f, &g).unwrap();
        assert_eq!(fr, f);
        assert_eq!(gr, g);
    }

    #[test]
    fn lift_after_rotation_converges() {
        let f = PlanePoly::from_int_terms(&[(1, 2, 0), (-1, 0, 3)]).unwrap();
        // perturb the exact solution (t^3, t^2) at high order
        let g = Branch::from_int_coeffs(
            &[0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
            &[0, 0, 1],
        )
        .unwrap();
        let (fr, gr) = rotate_coords(&f, &g).unwrap();
        let report = lift_arc(&fr, &gr, 30).unwrap();
        let residual = fr.eval_on(report.lifted.x(), report.lifted.y());
        assert!(residual.order().is_none_or(|o| o > 30));
        for w in report.iterations.windows(2) {
            assert!(w[1].1 >= 2 * (w[0].1 - report.q));
        }
    }

    #[test]
    fn hypothesis_violation_reported() {
        // f = y^2, g = (t, t^5): ord f(g) = 10 = 2Q, growth not guaranteed
        let f = PlanePoly::from_int_terms(&[(1, 0, 2)]).unwrap();
        let g = Branch::from_int_coeffs(&[0, 1], &[0, 0, 0, 0, 0, 1]).unwrap();
        assert!(matches!(
            lift_arc(&f, &g, 20),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn jet_without_enough_precision_is_rejected() {
        let f = PlanePoly::from_int_terms(&[(1, 0, 2), (-1, 3, 0)]).unwrap();
        let x = QSeries::t_monomial(q(1, 1), 2, 12);
        let mut y = QSeries::t_monomial(q(1, 1), 3, 12);
        y.set(vec![9], q(1, 1));
        let jet = Branch::new(x, y, false).unwrap();
        assert!(matches!(
            lift_arc(&f, &jet, 30),
            Err(Error::PrecisionExhausted(_))
        ));
    }
}
