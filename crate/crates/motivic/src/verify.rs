//! Seeded verification suites, shared by the command-line `verify`
//! subcommand and the acceptance tests.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curves::{self, Branch, CurveGerm, PlanePoly};
use crate::error::Result;
use crate::gring::GClass;
use crate::lifting::{lift_arc, rotate_coords};
use crate::powstruct::{
    self, moebius_inversion_check, decomposition_product, euler_char_series, integer_power,
    MeasuredPartition,
};
use crate::series::TruncSeries;
use crate::strata::{self, Check};

type GSeries = TruncSeries<GClass>;

fn l() -> GClass {
    GClass::lefschetz()
}

fn random_laurent(rng: &mut ChaCha8Rng) -> GClass {
    let terms = rng.gen_range(1..=2);
    let mut acc = GClass::zero();
    for _ in 0..terms {
        let e = rng.gen_range(-2i64..=2);
        let c = rng.gen_range(-2i64..=2);
        acc = acc + GClass::monomial(BigInt::from(c), e);
    }
    acc
}

fn random_unit_series(rng: &mut ChaCha8Rng, trunc: usize) -> GSeries {
    let mut s = GSeries::one(&["t"], trunc);
    for k in 1..=trunc {
        if rng.gen_bool(0.5) {
            continue;
        }
        let e = rng.gen_range(-1i64..=1);
        let c = rng.gen_range(-2i64..=2);
        s.set(vec![k as u32], GClass::monomial(BigInt::from(c), e));
    }
    s
}

/// Exponent-law axioms of the power structure on seeded random instances at
/// the given truncation order.
pub fn axioms_suite(seed: u64, instances: usize, trunc: usize) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut failures = Vec::new();
    for i in 0..instances {
        let a = random_unit_series(&mut rng, trunc);
        let b = random_unit_series(&mut rng, trunc);
        let m = random_laurent(&mut rng);
        let n = random_laurent(&mut rng);
        let am = powstruct::power(&a, &m, trunc)?;
        let an = powstruct::power(&a, &n, trunc)?;
        let mut ok = powstruct::power(&a, &GClass::zero(), trunc)? == GSeries::one(&["t"], trunc);
        ok &= powstruct::power(&a, &GClass::one(), trunc)? == a;
        ok &= powstruct::power(&a, &(m.clone() + n.clone()), trunc)? == am.mul(&an);
        ok &= powstruct::power(&a.mul(&b), &m, trunc)?
            == am.mul(&powstruct::power(&b, &m, trunc)?);
        ok &= powstruct::power(&an, &m, trunc)?
            == powstruct::power(&a, &(m.clone() * n.clone()), trunc)?;
        ok &= powstruct::power(&a.stretch(2), &m, trunc)? == am.stretch(2);
        let mut one_plus_t = GSeries::one(&["t"], trunc);
        one_plus_t.set(vec![1], GClass::one());
        let p = powstruct::power(&one_plus_t, &m, trunc)?;
        ok &= p.coeff_t(0) == GClass::one() && p.coeff_t(1) == m;
        if !ok {
            failures.push(i);
        }
    }
    checks.push(Check {
        name: format!("power-structure axioms, {} seeded instances", instances),
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("all {} instances exact at truncation {}", instances, trunc)
        } else {
            format!("failing instances: {:?}", failures)
        },
    });
    Ok(checks)
}

/// Euler characteristic as a morphism of power structures on seeded
/// instances: coefficientwise `chi(A^m)` equals `(chi A)^(chi m)` under
/// ordinary integer powers.
pub fn chi_morphism_suite(seed: u64, instances: usize, trunc: usize) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..instances {
        let a = random_unit_series(&mut rng, trunc);
        let m = random_laurent(&mut rng);
        let pm = powstruct::power(&a, &m, trunc)?;
        let lhs = euler_char_series(&pm)?;
        let chi_a = euler_char_series(&a)?;
        let chi_m = m.euler_char()?;
        debug_assert!(chi_m.is_integer());
        let rhs = integer_power(&chi_a, chi_m.to_integer().to_i64().unwrap())?;
        if lhs != rhs {
            failures.push(i);
        }
    }
    Ok(vec![Check {
        name: format!("chi-morphism, {} seeded instances", instances),
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("all {} instances exact at truncation {}", instances, trunc)
        } else {
            format!("failing instances: {:?}", failures)
        },
    }])
}

/// Newton lifting corpus: residual vanishing, jet agreement, and the
/// per-step quadratic growth bound.
pub fn lift_suite(target: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let mut run = |name: &str, f: &PlanePoly, g: &Branch| -> Result<()> {
        let (fr, gr) = rotate_coords(f, g)?;
        let report = lift_arc(&fr, &gr, target)?;
        let residual = fr.eval_on(report.lifted.x(), report.lifted.y());
        let mut ok = residual.order().is_none_or(|o| o > target);
        for w in report.iterations.windows(2) {
            ok &= w[1].1 >= 2 * (w[0].1 - report.q) && w[1].1 > w[0].1;
        }
        for j in 0..=report.n1 as usize {
            ok &= report.lifted.x().coeff_t(j) == gr.x().coeff_t(j)
                && report.lifted.y().coeff_t(j) == gr.y().coeff_t(j);
        }
        checks.push(Check {
            name: format!("newton lift: {}", name),
            pass: ok,
            detail: format!(
                "trace {:?}, Q = {}, n1 = {}",
                report.iterations, report.q, report.n1
            ),
        });
        Ok(())
    };

    let cusp_eq = PlanePoly::from_int_terms(&[(1, 0, 2), (-1, 3, 0)])?;
    let g = Branch::from_int_coeffs(&[0, 0, 1], &[0, 0, 0, 1, 0, 0, 0, 0, 0, 1])?;
    run("y^2 - x^3 with perturbed cusp", &cusp_eq, &g)?;

    let parabola = PlanePoly::from_int_terms(&[(1, 0, 1), (-1, 2, 0)])?;
    let mut y = TruncSeries::t_monomial(BigRational::one(), 2, 2 * target + 4);
    y.set(vec![40], BigRational::one());
    let g = Branch::new(TruncSeries::t(2 * target + 4), y, true)?;
    run("y - x^2 with high-order perturbation", &parabola, &g)?;

    let exact = PlanePoly::from_int_terms(&[(1, 0, 1)])?;
    let axis = Branch::from_int_coeffs(&[0, 1], &[0])?;
    run("y = 0 already exact", &exact, &axis)?;

    let swapped = PlanePoly::from_int_terms(&[(1, 2, 0), (-1, 0, 3)])?;
    let g = Branch::from_int_coeffs(
        &[0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        &[0, 0, 1],
    )?;
    run("x^2 - y^3 after coordinate rotation", &swapped, &g)?;

    Ok(checks)
}

/// Moebius inversion of the order-decomposition product on seeded level-set
/// data: the inverted product reproduces the plain exponential integral.
pub fn moebius_suite(seed: u64, trunc: usize) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for case in 0..3 {
        let entries = rng.gen_range(1..=3);
        let mut data = Vec::new();
        for _ in 0..entries {
            let deg = rng.gen_range(1..=3usize);
            let e = rng.gen_range(-2i64..=2);
            let mut c = rng.gen_range(-2i64..=2);
            if c == 0 {
                c = 1;
            }
            let mut w = rng.gen_range(-2i64..=2);
            if w == 0 {
                w = 1;
            }
            data.push((GClass::monomial(BigInt::from(c), e), deg, w));
        }
        let partition = MeasuredPartition::from_monomials(&data, trunc)?;
        let (lhs, rhs) = decomposition_product(&partition, trunc)?;
        let (inverted, k1) = moebius_inversion_check(&partition, trunc)?;
        let ok = lhs == rhs && inverted == k1;
        checks.push(Check {
            name: format!("moebius inversion, seeded partition {}", case + 1),
            pass: ok,
            detail: format!("{} level sets at truncation {}", entries, trunc),
        });
    }
    Ok(checks)
}

/// Generating-function oracle: the resolution product matches directly
/// computed contact-stratum measures at low degree.
pub fn genfun_suite() -> Result<Vec<Check>> {
    use crate::genfun::{pgen, Component, ResolutionData};
    use crate::powstruct::one_minus_tk_pow;
    use crate::strata::{arc_x, arc_y, Ambient, JetStratum};

    let mut checks = Vec::new();
    let lm1 = l() - GClass::one();
    let proj = GClass::one() / lm1.clone();

    // single blow-up of a smooth arc
    let single = ResolutionData::new(
        vec![Component {
            id: "E1".into(),
            nu: 1,
            euler_open_class: l(),
        }],
        vec![vec![-1]],
        vec![(0, 0)],
    )?;
    let p = pgen(&single, 3)?;
    let mut direct = GSeries::one(&["t1"], 3);
    for j in 1..=3usize {
        let level = j + 1;
        let zeros: Vec<usize> = (1..j).map(|m| arc_y(level, m)).collect();
        let s = JetStratum::new(Ambient::Arc { level }, zeros, [arc_y(level, j)])?;
        let mu = s.measure() * proj.clone();
        let factor = one_minus_tk_pow(&mu, j, 3)?.subst_monomial(
            &["t1"],
            &[1],
            &GClass::one(),
            3,
        );
        direct = direct.mul(&factor);
    }
    let ok = (0..=3u32).all(|n| p.coeff(&[n]) == direct.coeff(&[n]));
    checks.push(Check {
        name: "generating function vs direct measures: single blow-up".into(),
        pass: ok,
        detail: format!(
            "coefficients {} | {} | {}",
            p.coeff(&[1]),
            p.coeff(&[2]),
            p.coeff(&[3])
        ),
    });

    // cusp resolution, through degree 5
    let cusp = ResolutionData::new(
        vec![
            Component {
                id: "E1".into(),
                nu: 1,
                euler_open_class: l(),
            },
            Component {
                id: "E2".into(),
                nu: 2,
                euler_open_class: l(),
            },
            Component {
                id: "E3".into(),
                nu: 4,
                euler_open_class: l() - GClass::from_int(2),
            },
        ],
        vec![vec![-3, 0, 1], vec![0, -2, 1], vec![1, 1, -1]],
        vec![(2, 0)],
    )?;
    let p = pgen(&cusp, 5)?;
    let s2 = JetStratum::new(Ambient::Arc { level: 2 }, [], [arc_y(2, 1)])?;
    let s3 = JetStratum::new(Ambient::Arc { level: 2 }, [arc_y(2, 1)], [arc_x(2, 1)])?;
    let s4 = JetStratum::new(
        Ambient::Arc { level: 2 },
        [arc_x(2, 1), arc_y(2, 1)],
        [arc_y(2, 2)],
    )?;
    let mut direct = GSeries::one(&["t1"], 5);
    for (j, s) in [(2usize, s2), (3, s3), (4, s4)] {
        let mu = s.measure() * proj.clone();
        let factor =
            one_minus_tk_pow(&mu, j, 5)?.subst_monomial(&["t1"], &[1], &GClass::one(), 5);
        direct = direct.mul(&factor);
    }
    let ok = (0..=5u32).all(|n| p.coeff(&[n]) == direct.coeff(&[n]));
    checks.push(Check {
        name: "generating function vs direct measures: cusp resolution".into(),
        pass: ok,
        detail: "coefficients agree through degree 5".into(),
    });

    Ok(checks)
}

/// Axis-contact strata versus the bivariate closed form, all bidegrees up
/// to the bound.
pub fn bidegree_suite(max: usize) -> Result<Vec<Check>> {
    let series = strata::bidegree_closed_form(2 * max + 1);
    let mut all = true;
    let mut first_fail = String::new();
    for i in 1..=max {
        for j in 1..=max {
            let measure = strata::bidegree_stratum(i, j)?.measure();
            let coeff = series.coeff(&[i as u32, j as u32]);
            let closed = strata::bidegree_closed_form_coeff(i, j);
            if measure != coeff || measure != closed {
                all = false;
                if first_fail.is_empty() {
                    first_fail = format!("first failure at (i,j) = ({},{})", i, j);
                }
            }
        }
    }
    Ok(vec![Check {
        name: format!("axis-contact strata vs closed form, bidegrees up to {}", max),
        pass: all,
        detail: if all {
            "all coefficients exact".into()
        } else {
            first_fail
        },
    }])
}

/// A-series total measure: geometric summation, direct 2-jet computation,
/// and exact partial-sum convergence at the specialization points.
pub fn a_series_sum_suite(field_checks: &[u64], terms: usize) -> Result<Vec<Check>> {
    let (series_sum, direct) = strata::example2_sum()?;
    let expected = GClass::l_pow(-2) - GClass::l_pow(-5);
    let mut checks = vec![Check {
        name: "a-series total measure closed forms".into(),
        pass: series_sum == expected && direct == expected,
        detail: format!("sum = {}, direct = {}", series_sum, direct),
    }];

    // partial sums: S_terms plus the exact geometric tail equals the total,
    // and the specialized residual equals the specialized tail
    let lp1 = l() + GClass::one();
    let lm1 = l() - GClass::one();
    let mut partial = strata::example2_a1()?;
    let mut even_term = lp1.clone() * lm1.pow(2) * GClass::l_pow(-6);
    let mut odd_term = lp1.clone() * lm1.pow(2) * GClass::l_pow(-7);
    let ratio = GClass::l_pow(-2);
    for _ in 0..terms {
        partial = partial + even_term.clone() + odd_term.clone();
        even_term = even_term * ratio.clone();
        odd_term = odd_term * ratio.clone();
    }
    let tail = GClass::geometric_sum(&even_term, &ratio)?
        + GClass::geometric_sum(&odd_term, &ratio)?;
    let exact_split = partial.clone() + tail.clone() == expected;
    let mut numeric = true;
    for &q in field_checks {
        let residual =
            expected.specialize(q as i64)? - partial.specialize(q as i64)?;
        numeric &= residual == tail.specialize(q as i64)?;
    }
    checks.push(Check {
        name: format!("a-series partial sums, {} terms", terms),
        pass: exact_split && numeric,
        detail: format!(
            "partial + tail splits exactly; residuals checked at q in {:?}",
            field_checks
        ),
    });
    Ok(checks)
}

/// Monomial-branch corpus: the invariant formulas against the geometric and
/// the equation route, for all coprime `2 <= p < q <= bound`.
pub fn monomial_branch_suite(bound: u64) -> Result<Vec<Check>> {
    let mut all = true;
    let mut detail = String::new();
    let mut cases = 0;
    for p in 2..=bound {
        for q in (p + 1)..=bound {
            if num::integer::gcd(p, q) != 1 {
                continue;
            }
            cases += 1;
            let germ = CurveGerm::single(Branch::monomial(p as usize, q as usize));
            let delta = curves::delta(&germ)?;
            let pinv = curves::p_invariant(&germ)?;
            let eq = PlanePoly::from_int_terms(&[(1, 0, p as u32), (-1, q as u32, 0)])?;
            let pdir = curves::p_direct(&germ, &eq)?;
            let ok = delta == (p - 1) * (q - 1) / 2 && pinv == (p - 1) * q && pdir == pinv;
            if !ok {
                all = false;
                detail = format!("failure at (p, q) = ({}, {})", p, q);
            }
        }
    }
    Ok(vec![Check {
        name: format!("monomial branch corpus, {} coprime pairs up to {}", cases, bound),
        pass: all,
        detail: if all {
            "delta, P and the equation route all agree".into()
        } else {
            detail
        },
    }])
}

/// Correspondence-exponent identity `L^(delta-k-P) = L^(-delta-v)` over the
/// mixed germ corpus.
pub fn exponent_identity_suite() -> Result<Vec<Check>> {
    let mut germs: Vec<(String, CurveGerm)> = vec![
        ("smooth branch".into(), CurveGerm::single(Branch::from_int_coeffs(&[0, 1], &[0])?)),
        ("cusp".into(), CurveGerm::single(Branch::monomial(2, 3))),
        ("higher cusp (3,7)".into(), CurveGerm::single(Branch::monomial(3, 7))),
        (
            "node".into(),
            CurveGerm::new(vec![
                Branch::from_int_coeffs(&[0, 1], &[0])?,
                Branch::from_int_coeffs(&[0], &[0, 1])?,
            ])?,
        ),
        (
            "cusp with tangent line".into(),
            CurveGerm::new(vec![
                Branch::monomial(2, 3),
                Branch::from_int_coeffs(&[0, 1], &[0])?,
            ])?,
        ),
        (
            "tacnode pair".into(),
            CurveGerm::new(vec![
                Branch::from_int_coeffs(&[0, 1], &[0, 0, 1])?,
                Branch::from_int_coeffs(&[0, 1], &[0, 0, -1])?,
            ])?,
        ),
    ];
    for k in 2..=5usize {
        let branches: Vec<Branch> = (0..k)
            .map(|i| Branch::from_int_coeffs(&[0, 1], &[0, i as i64]))
            .collect::<Result<_>>()?;
        germs.push((format!("{} transverse lines", k), CurveGerm::new(branches)?));
    }
    let mut all = true;
    let mut detail = String::new();
    for (name, germ) in &germs {
        let lhs = curves::correspondence_factor(germ)?;
        let rhs = curves::abstract_weight(germ)?;
        if lhs != rhs {
            all = false;
            detail = format!("mismatch on {}", name);
        }
    }
    Ok(vec![Check {
        name: format!("correspondence exponent identity on {} germs", germs.len()),
        pass: all,
        detail: if all { "both exponent routes agree".into() } else { detail },
    }])
}

/// Modality formula versus the lattice-point count for all coprime pairs up
/// to the bound.
pub fn modality_suite(bound: u64) -> Result<Vec<Check>> {
    let mut all = true;
    let mut cases = 0;
    let mut detail = String::new();
    for p in 2..=bound {
        for q in (p + 1)..=bound {
            if num::integer::gcd(p, q) != 1 {
                continue;
            }
            cases += 1;
            let fam = strata::example3(p, q)?;
            let count = strata::kouchnirenko_count(p, q)?;
            if fam.modality != BigRational::from_integer(BigInt::from(count)) {
                all = false;
                detail = format!("mismatch at (p, q) = ({}, {})", p, q);
            }
        }
    }
    Ok(vec![Check {
        name: format!("modality vs lattice count, {} coprime pairs up to {}", cases, bound),
        pass: all,
        detail: if all { "exact integer agreement".into() } else { detail },
    }])
}

/// Every suite, keyed by name.
pub fn run_suite(name: &str, seed: u64, field_checks: &[u64]) -> Result<Vec<Check>> {
    match name {
        "factor" => strata::verify_factor_suite(6),
        "fforacle" => strata::verify_oracle_suite(&[2, 3]),
        "axioms" => axioms_suite(seed, 200, 10),
        "chi" => chi_morphism_suite(seed, 100, 10),
        "lift" => lift_suite(30),
        "moebius" => moebius_suite(seed, 12),
        "genfun" => genfun_suite(),
        "ex4" => bidegree_suite(8),
        "branches" => monomial_branch_suite(12),
        "exponent" => exponent_identity_suite(),
        "modality" => modality_suite(30),
        "asum" => a_series_sum_suite(field_checks, 50),
        "all" => {
            let mut all = Vec::new();
            for s in [
                "factor", "fforacle", "axioms", "chi", "lift", "moebius", "genfun", "ex4",
                "branches", "exponent", "modality", "asum",
            ] {
                all.extend(run_suite(s, seed, field_checks)?);
            }
            Ok(all)
        }
        other => Err(crate::error::Error::Parse(format!(
            "unknown verification suite '{}'",
            other
        ))),
    }
}
