//! Resolution-driven generating function of order tuples along a fixed
//! collection of arcs.
//!
//! Fix arcs `c_1, ..., c_k` and consider the class-valued generating
//! function `P(t_1, ..., t_k)` whose coefficient of a monomial collects the
//! delta-weighted measure of functions whose vanishing orders along the arcs
//! realize that exponent tuple.  An embedded resolution turns `P` into a
//! finite product over the exceptional components `E_s` (with multiplicity
//! `nu_s` in the relative canonical divisor and open part `E_s^o`) and over
//! the crossing points:
//!
//! ```text
//! P(t) = prod_s F(t^(m_s) L^-(nu_s+1))^[E_s^o]
//!      * prod_{E_i . E_j != 0} G(q_i, q_j)^(L-1)
//!      * prod_{E_i meets arc j} G(q_i, t_j L^-1)^(L-1)
//! ```
//!
//! with `F(q) = prod_k 1/(1-q^k)`, `G(x,y) = prod_{k,m} 1/(1-x^k y^m)`,
//! `q_s = t^(m_s) L^-(nu_s+1)`, and exponent vectors `m_s` read off the
//! inverse of the negated intersection matrix at the components met by the
//! strict transforms.  The exponents `[E_s^o]` and `(L-1)` enter through the
//! power structure; each stratum of arcs lifting through a fixed locus with
//! fixed contact contributes one `(1 - monomial)^-class` factor, which makes
//! every exponent positive.  Low-order coefficients are cross-checked
//! against directly computed arc-stratum measures in the tests.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gring::GClass;
use crate::powstruct::one_minus_t_pow;
use crate::series::TruncSeries;

type GSeries = TruncSeries<GClass>;

/// One exceptional component of the resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub id: String,
    /// Multiplicity in the relative canonical divisor, `nu >= 1`.
    pub nu: u32,
    /// Class of the component minus all crossing and arrow points.
    pub euler_open_class: GClass,
}

/// Combinatorics of an embedded resolution: components, their intersection
/// matrix, and which component each strict transform meets.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolutionData {
    pub components: Vec<Component>,
    /// Symmetric matrix `(E_i . E_j)` with negative diagonal.
    pub intersections: Vec<Vec<i64>>,
    /// `(component index, strict-transform index)`; every strict transform
    /// index `0..k` appears exactly once.
    pub arrows: Vec<(usize, usize)>,
}

impl ResolutionData {
    #[allow(clippy::needless_range_loop)]
    pub fn new(
        components: Vec<Component>,
        intersections: Vec<Vec<i64>>,
        arrows: Vec<(usize, usize)>,
    ) -> Result<ResolutionData> {
        let n = components.len();
        if intersections.len() != n || intersections.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidResolution(
                "intersection matrix shape does not match the component list".into(),
            ));
        }
        for i in 0..n {
            if intersections[i][i] >= 0 {
                return Err(Error::InvalidResolution(format!(
                    "component {} has nonnegative self-intersection",
                    i
                )));
            }
            for j in 0..n {
                if intersections[i][j] != intersections[j][i] {
                    return Err(Error::InvalidResolution(
                        "intersection matrix is not symmetric".into(),
                    ));
                }
                if i != j && intersections[i][j] < 0 {
                    return Err(Error::InvalidResolution(
                        "distinct components cannot have negative intersection".into(),
                    ));
                }
            }
        }
        // negative definiteness: leading principal minors of (E . E)
        // alternate in sign, i.e. minors of the negated matrix are positive
        for m in 1..=n {
            let d = det_rational(&neg_minor(&intersections, m));
            if !d.is_positive() {
                return Err(Error::SingularMatrix);
            }
        }
        let mut seen = vec![false; arrows.len()];
        for (comp, strict) in &arrows {
            if *comp >= n {
                return Err(Error::InvalidResolution(format!(
                    "arrow references unknown component {}",
                    comp
                )));
            }
            if *strict >= arrows.len() || seen[*strict] {
                return Err(Error::InvalidResolution(
                    "every strict transform must meet exactly one component".into(),
                ));
            }
            seen[*strict] = true;
        }
        Ok(ResolutionData {
            components,
            intersections,
            arrows,
        })
    }

    /// Number of strict transforms, i.e. of `t` variables.
    pub fn num_arcs(&self) -> usize {
        self.arrows.len()
    }
}

fn neg_minor(m: &[Vec<i64>], size: usize) -> Vec<Vec<BigRational>> {
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| BigRational::from_integer(BigInt::from(-m[i][j])))
                .collect()
        })
        .collect()
}

#[allow(clippy::needless_range_loop)]
fn det_rational(m: &[Vec<BigRational>]) -> BigRational {
    let mut a = m.to_vec();
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero());
        let Some(pivot) = pivot else {
            return BigRational::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            let factor = &a[r][col] / &p;
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// Exact inverse of the negated intersection matrix; entries are symmetric
/// and positive for valid resolution data.
pub fn inverse_intersection(r: &ResolutionData) -> Result<Vec<Vec<BigRational>>> {
    let n = r.components.len();
    let mut a = neg_minor(&r.intersections, n);
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularMatrix)?;
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let p = a[col][col].clone();
        for c in 0..n {
            a[col][c] /= &p;
            inv[col][c] /= &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let s = &factor * &a[col][c];
                a[r][c] -= s;
                let s = &factor * &inv[col][c];
                inv[r][c] -= s;
            }
        }
    }
    Ok(inv)
}

/// A monomial `scale * prod_j t_j^(exps_j)` in the generating variables.
#[derive(Debug, Clone, PartialEq)]
pub struct TMonomial {
    pub exps: Vec<u32>,
    pub scale: GClass,
}

impl TMonomial {
    pub fn total_degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    fn pow(&self, k: usize) -> TMonomial {
        TMonomial {
            exps: self.exps.iter().map(|&e| e * k as u32).collect(),
            scale: self.scale.pow(k as i64),
        }
    }

    fn mul(&self, other: &TMonomial) -> TMonomial {
        TMonomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            scale: self.scale.clone() * other.scale.clone(),
        }
    }
}

fn var_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("t{}", i)).collect()
}

/// `(1 - monomial)^-class` as a truncated multivariate series.
fn prim_factor(class: &GClass, monomial: &TMonomial, trunc: usize) -> Result<GSeries> {
    let deg = monomial.total_degree();
    if deg == 0 {
        return Err(Error::NonPositiveDegree);
    }
    let jmax = trunc / deg;
    let univar = one_minus_t_pow(class, jmax)?;
    let names = var_names(monomial.exps.len());
    let vars: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    Ok(univar.subst_monomial(&vars, &monomial.exps, &monomial.scale, trunc))
}

/// `F(q)^class = prod_{k >= 1} (1 - q^k)^-class`, truncated.
pub fn f_series(class: &GClass, q: &TMonomial, trunc: usize) -> Result<GSeries> {
    let deg = q.total_degree();
    if deg == 0 {
        return Err(Error::NonPositiveDegree);
    }
    let names = var_names(q.exps.len());
    let vars: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut acc = GSeries::one(&vars, trunc);
    let mut k = 1;
    while k * deg <= trunc {
        acc = acc.mul(&prim_factor(class, &q.pow(k), trunc)?);
        k += 1;
    }
    Ok(acc)
}

/// `G(x, y)^class = prod_{k, m >= 1} (1 - x^k y^m)^-class`, truncated.
pub fn g_series(class: &GClass, x: &TMonomial, y: &TMonomial, trunc: usize) -> Result<GSeries> {
    let dx = x.total_degree();
    let dy = y.total_degree();
    if dx == 0 || dy == 0 {
        return Err(Error::NonPositiveDegree);
    }
    let names = var_names(x.exps.len());
    let vars: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut acc = GSeries::one(&vars, trunc);
    let mut k = 1;
    while k * dx + dy <= trunc {
        let mut m = 1;
        while k * dx + m * dy <= trunc {
            acc = acc.mul(&prim_factor(class, &x.pow(k).mul(&y.pow(m)), trunc)?);
            m += 1;
        }
        k += 1;
    }
    Ok(acc)
}

/// Exponent monomials `q_s = t^(m_s) L^-(nu_s + 1)` for every component:
/// the entry of `m_s` at arc `j` is the inverse-matrix entry between `s` and
/// the component met by strict transform `j`; all needed entries must be
/// integral.
fn component_monomials(r: &ResolutionData) -> Result<Vec<TMonomial>> {
    let inv = inverse_intersection(r)?;
    let k = r.num_arcs();
    let mut out = Vec::with_capacity(r.components.len());
    for (s, comp) in r.components.iter().enumerate() {
        let mut exps = vec![0u32; k];
        for (ci, arc) in &r.arrows {
            let entry = &inv[s][*ci];
            if !entry.is_integer() {
                return Err(Error::InvalidResolution(format!(
                    "inverse intersection entry ({}, {}) = {} is not an integer",
                    s, ci, entry
                )));
            }
            exps[*arc] = entry
                .to_integer()
                .to_u32()
                .ok_or_else(|| Error::InvalidResolution("exponent overflow".into()))?;
        }
        out.push(TMonomial {
            exps,
            scale: GClass::l_pow(-(comp.nu as i64) - 1),
        });
    }
    Ok(out)
}

/// The full generating function through total degree `trunc`.
pub fn pgen(r: &ResolutionData, trunc: usize) -> Result<GSeries> {
    let k = r.num_arcs();
    let names = var_names(k);
    let vars: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut acc = GSeries::one(&vars, trunc);
    if r.components.is_empty() {
        return Ok(acc);
    }
    let q = component_monomials(r)?;
    for (s, comp) in r.components.iter().enumerate() {
        acc = acc.mul(&f_series(&comp.euler_open_class, &q[s], trunc)?);
    }
    let lm1 = GClass::lefschetz() - GClass::one();
    for i in 0..r.components.len() {
        for j in i + 1..r.components.len() {
            for _ in 0..r.intersections[i][j] {
                acc = acc.mul(&g_series(&lm1, &q[i], &q[j], trunc)?);
            }
        }
    }
    for (ci, arc) in &r.arrows {
        let mut exps = vec![0u32; k];
        exps[*arc] = 1;
        let tj = TMonomial {
            exps,
            scale: GClass::l_pow(-1),
        };
        acc = acc.mul(&g_series(&lm1, &q[*ci], &tj, trunc)?);
    }
    Ok(acc)
}

/// The generating function with every class pushed through the Euler
/// characteristic: integer exponents, scales evaluated at `L = 1`.
pub fn pgen_euler(r: &ResolutionData, trunc: usize) -> Result<TruncSeries<BigRational>> {
    let full = pgen(r, trunc)?;
    let mut out = TruncSeries::zero(
        &full.vars().iter().map(|s| s.as_str()).collect::<Vec<_>>(),
        trunc,
    );
    for (e, c) in full.terms() {
        out.set(e.clone(), c.euler_char()?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::powstruct::{one_minus_t_pow, one_minus_tk_pow};
    use crate::strata::{arc_x, arc_y, Ambient, JetStratum};

    fn l() -> GClass {
        GClass::lefschetz()
    }

    /// Resolution of a smooth arc: one blow-up, one exceptional line.
    fn single_blow_up() -> ResolutionData {
        ResolutionData::new(
            vec![Component {
                id: "E1".into(),
                nu: 1,
                euler_open_class: l(),
            }],
            vec![vec![-1]],
            vec![(0, 0)],
        )
        .unwrap()
    }

    /// Resolution combinatorics of the cusp (t^2, t^3): chain of three
    /// components, strict transform on the last.
    fn cusp_resolution() -> ResolutionData {
        ResolutionData::new(
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
            vec![
                vec![-3, 0, 1],
                vec![0, -2, 1],
                vec![1, 1, -1],
            ],
            vec![(2, 0)],
        )
        .unwrap()
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn inverse_intersection_examples() {
        // single (-1)-component
        let inv = inverse_intersection(&single_blow_up()).unwrap();
        assert_eq!(inv[0][0], BigRational::one());

        // chain diag(-2,-1) with off-diagonal 1: inverse of [[2,-1],[-1,1]]
        let r = ResolutionData::new(
            vec![
                Component {
                    id: "a".into(),
                    nu: 1,
                    euler_open_class: l(),
                },
                Component {
                    id: "b".into(),
                    nu: 2,
                    euler_open_class: l(),
                },
            ],
            vec![vec![-2, 1], vec![1, -1]],
            vec![(1, 0)],
        )
        .unwrap();
        let inv = inverse_intersection(&r).unwrap();
        let want = [[1i64, 1], [1, 2]];
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(
                    inv[i][j],
                    BigRational::from_integer(BigInt::from(want[i][j]))
                );
            }
        }

        // cusp: defining property m * (-(E.E)) = identity, and the known
        // last entry pq = 6
        let r = cusp_resolution();
        let inv = inverse_intersection(&r).unwrap();
        assert_eq!(inv[2][2], BigRational::from_integer(BigInt::from(6)));
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = BigRational::zero();
                for k in 0..3 {
                    acc += &inv[i][k]
                        * BigRational::from_integer(BigInt::from(-r.intersections[k][j]));
                }
                let want = if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                assert_eq!(acc, want);
            }
        }
    }

    #[test]
    fn non_negative_definite_matrices_are_rejected() {
        let r = ResolutionData::new(
            vec![
                Component {
                    id: "a".into(),
                    nu: 1,
                    euler_open_class: l(),
                },
                Component {
                    id: "b".into(),
                    nu: 1,
                    euler_open_class: l(),
                },
            ],
            vec![vec![-1, 2], vec![2, -1]],
            vec![(0, 0)],
        );
        assert!(matches!(r, Err(Error::SingularMatrix)));
    }

    #[test]
    fn f_series_is_the_partition_series() {
        // F(t) = 1/((1-t)(1-t^2)...): partition numbers
        let q = TMonomial {
            exps: vec![1],
            scale: GClass::one(),
        };
        let f = f_series(&GClass::one(), &q, 5).unwrap();
        for (k, want) in [1i64, 1, 2, 3, 5, 7].iter().enumerate() {
            assert_eq!(f.coeff(&[k as u32]), GClass::from_int(*want));
        }

        // F(t L^-2): L-weighted partitions; coefficient of t^1 is L^-2,
        // of t^2 is L^-4 + L^-2... exactly the substituted partition series
        let q = TMonomial {
            exps: vec![1],
            scale: GClass::l_pow(-2),
        };
        let f = f_series(&GClass::one(), &q, 3).unwrap();
        assert_eq!(f.coeff(&[1]), GClass::l_pow(-2));
        // partitions of 2 are 1+1 and 2, both weighted L^-4
        assert_eq!(f.coeff(&[2]), GClass::from_int(2) * GClass::l_pow(-4));
    }

    #[test]
    fn g_series_lowest_terms() {
        // G(t1, t2): coefficient of t1 t2 comes only from (k,m) = (1,1)
        let x = TMonomial {
            exps: vec![1, 0],
            scale: GClass::one(),
        };
        let y = TMonomial {
            exps: vec![0, 1],
            scale: GClass::one(),
        };
        let g = g_series(&GClass::one(), &x, &y, 4).unwrap();
        assert_eq!(g.coeff(&[1, 1]), GClass::one());
        assert_eq!(g.coeff(&[1, 0]), GClass::zero());
        assert_eq!(g.coeff(&[0, 1]), GClass::zero());
        // degree-0 monomials rejected
        let bad = TMonomial {
            exps: vec![0, 0],
            scale: GClass::l_pow(-2),
        };
        assert!(matches!(
            g_series(&GClass::one(), &bad, &y, 4),
            Err(Error::NonPositiveDegree)
        ));
    }

    /// Direct route: measure of arcs with prescribed contact against the
    /// fixed arc, assembled into prod_j (1 - t^j)^-mu_j via the primitive.
    fn direct_contact_product(mu: &[(usize, GClass)], trunc: usize) -> GSeries {
        let mut acc = GSeries::one(&["t1"], trunc);
        for (j, m) in mu {
            let factor = one_minus_tk_pow(m, *j, trunc)
                .unwrap()
                .subst_monomial(&["t1"], &[1], &GClass::one(), trunc);
            acc = acc.mul(&factor);
        }
        acc
    }

    #[test]
    fn single_blow_up_matches_direct_stratum_measures() {
        // mu_j = measure{arcs with y-order j} / (L-1) = L^-j, computed from
        // the strata DSL with the projectivization factor
        let lm1 = l() - GClass::one();
        let mut mu = Vec::new();
        for j in 1..=5usize {
            let level = j + 1;
            let zeros: Vec<usize> = (1..j).map(|m| arc_y(level, m)).collect();
            let s = JetStratum::new(Ambient::Arc { level }, zeros, [arc_y(level, j)]).unwrap();
            let m = s.measure() * (GClass::one() / lm1.clone());
            assert_eq!(m, GClass::l_pow(-(j as i64)));
            mu.push((j, m));
        }
        let direct = direct_contact_product(&mu, 5);
        let p = pgen(&single_blow_up(), 5).unwrap();
        for n in 0..=5u32 {
            assert_eq!(p.coeff(&[n]), direct.coeff(&[n]), "degree {}", n);
        }
        // the closed pattern n L^-n for the first coefficients
        assert_eq!(p.coeff(&[1]), GClass::l_pow(-1));
        assert_eq!(p.coeff(&[2]), GClass::from_int(2) * GClass::l_pow(-2));
        assert_eq!(p.coeff(&[3]), GClass::from_int(3) * GClass::l_pow(-3));
    }

    #[test]
    fn cusp_resolution_matches_direct_stratum_measures() {
        // contact orders of arcs with the cusp y^2 - x^3: order 2 iff the
        // arc is transverse (y_1 != 0), 3 iff tangent with x_1 != 0, 4 iff
        // x_1 = y_1 = 0 and y_2 != 0; order 5 is impossible
        let lm1 = l() - GClass::one();
        let proj = GClass::one() / lm1;
        let s2 = JetStratum::new(Ambient::Arc { level: 2 }, [], [arc_y(2, 1)]).unwrap();
        let s3 = JetStratum::new(Ambient::Arc { level: 2 }, [arc_y(2, 1)], [arc_x(2, 1)])
            .unwrap();
        let s4 = JetStratum::new(
            Ambient::Arc { level: 2 },
            [arc_x(2, 1), arc_y(2, 1)],
            [arc_y(2, 2)],
        )
        .unwrap();
        let mu = vec![
            (2usize, s2.measure() * proj.clone()),
            (3, s3.measure() * proj.clone()),
            (4, s4.measure() * proj.clone()),
        ];
        assert_eq!(mu[0].1, GClass::l_pow(-1));
        assert_eq!(mu[1].1, GClass::l_pow(-2));
        assert_eq!(mu[2].1, GClass::l_pow(-3));
        let direct = direct_contact_product(&mu, 5);
        let p = pgen(&cusp_resolution(), 5).unwrap();
        for n in 0..=5u32 {
            assert_eq!(p.coeff(&[n]), direct.coeff(&[n]), "degree {}", n);
        }
    }

    #[test]
    fn node_resolution_matches_direct_bidegree_measures() {
        // two transverse smooth arcs (the coordinate axes): one blow-up
        // separates them; both strict transforms meet the same component,
        // whose open part is P^1 minus two points
        let node = ResolutionData::new(
            vec![Component {
                id: "E1".into(),
                nu: 1,
                euler_open_class: l() - GClass::one(),
            }],
            vec![vec![-1]],
            vec![(0, 0), (0, 1)],
        )
        .unwrap();
        let trunc = 5;
        let p = pgen(&node, trunc).unwrap();

        // direct route: arcs with contact a against the x-axis and b
        // against the y-axis form the stratum {ord y = a, ord x = b} of
        // measure (L-1) L^(-a-b) after projectivization; the generating
        // function is the product of (1 - t1^a t2^b)^-measure
        let lm1 = l() - GClass::one();
        let mut direct = TruncSeries::<GClass>::one(&["t1", "t2"], trunc);
        for a in 1..=trunc {
            for b in 1..=trunc {
                if a + b > trunc {
                    continue;
                }
                let mu = lm1.clone() * GClass::l_pow(-(a as i64) - b as i64);
                let factor = one_minus_t_pow(&mu, trunc / (a + b))
                    .unwrap()
                    .subst_monomial(&["t1", "t2"], &[a as u32, b as u32], &GClass::one(), trunc);
                direct = direct.mul(&factor);
            }
        }
        for (e, c) in direct.terms() {
            assert_eq!(p.coeff(e), *c, "coefficient at {:?}", e);
        }
        for (e, c) in p.terms() {
            assert_eq!(direct.coeff(e), *c, "coefficient at {:?}", e);
        }
        // spot values: contact (1,1) arcs are transverse to both axes
        assert_eq!(p.coeff(&[1, 1]), lm1.clone() * GClass::l_pow(-2));
        assert_eq!(p.coeff(&[2, 1]), lm1 * GClass::l_pow(-3));
    }

    #[test]
    fn empty_resolution_is_one() {
        let r = ResolutionData::new(vec![], vec![], vec![]).unwrap();
        let p = pgen(&r, 4).unwrap();
        assert_eq!(p.coeff(&[]), GClass::one());
    }

    #[test]
    fn fractional_exponents_are_rejected() {
        // diag(-2) is negative definite but its inverse is fractional
        let r = ResolutionData::new(
            vec![Component {
                id: "E1".into(),
                nu: 1,
                euler_open_class: l(),
            }],
            vec![vec![-2]],
            vec![(0, 0)],
        )
        .unwrap();
        let inv = inverse_intersection(&r).unwrap();
        assert_eq!(inv[0][0], BigRational::new(BigInt::one(), BigInt::from(2)));
        assert!(matches!(pgen(&r, 3), Err(Error::InvalidResolution(_))));
    }

    #[test]
    fn components_without_marked_arcs_are_rejected() {
        // with no t variables every factor would be an infinite constant
        // product; the degree precondition catches it
        let r = ResolutionData::new(
            vec![Component {
                id: "E1".into(),
                nu: 1,
                euler_open_class: l(),
            }],
            vec![vec![-1]],
            vec![],
        )
        .unwrap();
        assert!(matches!(pgen(&r, 3), Err(Error::NonPositiveDegree)));
    }

    #[test]
    fn truncation_is_order_exact() {
        // recomputing with a larger bound never changes low coefficients
        let p5 = pgen(&cusp_resolution(), 5).unwrap();
        let p9 = pgen(&cusp_resolution(), 9).unwrap();
        for n in 0..=5u32 {
            assert_eq!(p5.coeff(&[n]), p9.coeff(&[n]));
        }
    }

    #[test]
    fn euler_characteristic_commutes_with_the_products() {
        for r in [single_blow_up(), cusp_resolution()] {
            let full = pgen(&r, 6).unwrap();
            let via_classes = {
                let mut out = TruncSeries::<BigRational>::zero(&["t1"], 6);
                for (e, c) in full.terms() {
                    out.set(e.clone(), c.euler_char().unwrap());
                }
                out
            };
            let direct = pgen_euler(&r, 6).unwrap();
            assert_eq!(via_classes, direct);
        }
    }
}
