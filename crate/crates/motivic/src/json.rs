//! JSON encodings of the domain types, and a small expression parser for
//! classes written as `L`-polynomials.
//!
//! Schemas:
//!
//! - class: `{"num": [[coeff, exp], ...], "den": [[coeff, exp], ...]}` with
//!   decimal-string (or small integer) coefficients and nonnegative integer
//!   exponents; strings like `"L^2 - 1"` and bare integers are also
//!   accepted wherever a class is expected.  Output is always canonical;
//!   non-canonical input is reduced on the way in.
//! - series: `{"vars": ["t"], "trunc": N, "terms": [[[e1, ..., ek], coeff],
//!   ...]}` where a coefficient is an integer string, a `[num, den]`
//!   rational pair, or a class object.
//! - branch: `{"x": series, "y": series, "exact": bool}`;
//!   germ: `{"branches": [branch, ...]}`.
//! - plane polynomial: `{"terms": [[num, den, i, j], ...]}`.
//! - stratum: `{"ambient": {"space": "arc"|"fun", "level": n},
//!   "zero": [...], "nonzero": [...], "multipliers": [class, ...]}`.
//! - resolution: `{"components": [{"id", "nu", "euler_open_class"}, ...],
//!   "intersections": [[...]], "arrows": [[component-id-or-index, j], ...]}`.
//! - partition: `[{"value": series or {"coeff", "degree"}, "weight": w}, ...]`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::One;
use serde_json::{json, Map, Value};
use std::str::FromStr;

use crate::curves::{Branch, CurveGerm, PlanePoly};
use crate::error::{Error, Result};
use crate::genfun::{Component, ResolutionData};
use crate::gring::GClass;
use crate::lifting::LiftReport;
use crate::powstruct::MeasuredPartition;
use crate::series::{Coeff, TruncSeries};
use crate::strata::{Ambient, JetStratum};

fn parse_err(what: &str, v: &Value) -> Error {
    Error::Parse(format!("{}: got {}", what, v))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(what, v))
}

fn bigint_from_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else {
                Err(parse_err("expected integer", v))
            }
        }
        Value::String(s) => {
            BigInt::from_str(s.trim()).map_err(|_| parse_err("expected integer string", v))
        }
        _ => Err(parse_err("expected integer", v)),
    }
}

// ---------------------------------------------------------------------------
// GClass
// ---------------------------------------------------------------------------

fn terms_from_value(v: &Value) -> Result<Vec<(BigInt, usize)>> {
    let arr = v.as_array().ok_or_else(|| parse_err("expected term list", v))?;
    arr.iter()
        .map(|t| {
            let pair = t.as_array().ok_or_else(|| parse_err("expected [coeff, exp]", t))?;
            if pair.len() != 2 {
                return Err(parse_err("expected [coeff, exp]", t));
            }
            Ok((bigint_from_value(&pair[0])?, as_usize(&pair[1], "exponent")?))
        })
        .collect()
}

pub fn gclass_from_value(v: &Value) -> Result<GClass> {
    match v {
        Value::Number(_) => Ok(GClass::from_bigint(bigint_from_value(v)?)),
        Value::String(s) => parse_gclass_expr(s),
        Value::Object(map) => {
            let num = map
                .get("num")
                .ok_or_else(|| parse_err("class object missing 'num'", v))?;
            let one = json!([["1", 0]]);
            let den = map.get("den").unwrap_or(&one);
            GClass::from_terms(&terms_from_value(num)?, &terms_from_value(den)?)
        }
        _ => Err(parse_err("expected class", v)),
    }
}

pub fn gclass_to_value(c: &GClass) -> Value {
    let enc = |terms: Vec<(BigInt, usize)>| -> Value {
        Value::Array(
            terms
                .into_iter()
                .map(|(c, e)| json!([c.to_string(), e]))
                .collect(),
        )
    };
    json!({
        "num": enc(c.num_terms()),
        "den": enc(c.den_terms()),
        "pretty": c.to_string(),
    })
}

/// Parse expressions like `L`, `L^-2`, `3*L^2 - L + 1`, `(L-1)*(L+1)/L^3`.
pub fn parse_gclass_expr(input: &str) -> Result<GClass> {
    let tokens = tokenize(input)?;
    let mut pos = 0;
    let value = parse_sum(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input in class expression '{}'",
            input
        )));
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    L,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            'L' => {
                out.push(Tok::L);
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                out.push(Tok::Int(BigInt::from_str(&lit).unwrap()));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character '{}' in class expression",
                    other
                )))
            }
        }
    }
    Ok(out)
}

fn parse_sum(tokens: &[Tok], pos: &mut usize) -> Result<GClass> {
    let mut acc = parse_product(tokens, pos)?;
    while let Some(t) = tokens.get(*pos) {
        match t {
            Tok::Plus => {
                *pos += 1;
                acc = acc + parse_product(tokens, pos)?;
            }
            Tok::Minus => {
                *pos += 1;
                acc = acc - parse_product(tokens, pos)?;
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_product(tokens: &[Tok], pos: &mut usize) -> Result<GClass> {
    let mut acc = parse_atom(tokens, pos)?;
    while let Some(t) = tokens.get(*pos) {
        match t {
            Tok::Star => {
                *pos += 1;
                acc = acc * parse_atom(tokens, pos)?;
            }
            Tok::Slash => {
                *pos += 1;
                acc = acc.checked_div(&parse_atom(tokens, pos)?)?;
            }
            // juxtaposition like "2L" or "(L-1)(L+1)"
            Tok::L | Tok::LParen | Tok::Int(_) => {
                acc = acc * parse_atom(tokens, pos)?;
            }
            _ => break,
        }
    }
    Ok(acc)
}

fn parse_atom(tokens: &[Tok], pos: &mut usize) -> Result<GClass> {
    let base = match tokens.get(*pos) {
        Some(Tok::Minus) => {
            *pos += 1;
            return Ok(-parse_atom(tokens, pos)?);
        }
        Some(Tok::Int(n)) => {
            *pos += 1;
            GClass::from_bigint(n.clone())
        }
        Some(Tok::L) => {
            *pos += 1;
            GClass::lefschetz()
        }
        Some(Tok::LParen) => {
            *pos += 1;
            let inner = parse_sum(tokens, pos)?;
            if tokens.get(*pos) != Some(&Tok::RParen) {
                return Err(Error::Parse("unbalanced parentheses".into()));
            }
            *pos += 1;
            inner
        }
        other => {
            return Err(Error::Parse(format!(
                "unexpected token {:?} in class expression",
                other
            )))
        }
    };
    if tokens.get(*pos) == Some(&Tok::Caret) {
        *pos += 1;
        let neg = if tokens.get(*pos) == Some(&Tok::Minus) {
            *pos += 1;
            true
        } else {
            false
        };
        let Some(Tok::Int(n)) = tokens.get(*pos) else {
            return Err(Error::Parse("expected integer exponent".into()));
        };
        *pos += 1;
        let e: i64 = n
            .try_into()
            .map_err(|_| Error::Parse("exponent out of range".into()))?;
        return Ok(base.pow(if neg { -e } else { e }));
    }
    Ok(base)
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

fn rational_from_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::Array(pair) if pair.len() == 2 => Ok(BigRational::new(
            bigint_from_value(&pair[0])?,
            bigint_from_value(&pair[1])?,
        )),
        _ => Ok(BigRational::from_integer(bigint_from_value(v)?)),
    }
}

fn series_parts(v: &Value) -> Result<(Vec<String>, usize, &Vec<Value>)> {
    let map = v.as_object().ok_or_else(|| parse_err("expected series object", v))?;
    let vars: Vec<String> = map
        .get("vars")
        .and_then(|x| x.as_array())
        .ok_or_else(|| parse_err("series missing 'vars'", v))?
        .iter()
        .map(|s| {
            s.as_str()
                .map(String::from)
                .ok_or_else(|| parse_err("variable name", s))
        })
        .collect::<Result<_>>()?;
    let trunc = as_usize(
        map.get("trunc").ok_or_else(|| parse_err("series missing 'trunc'", v))?,
        "trunc",
    )?;
    let terms = map
        .get("terms")
        .and_then(|x| x.as_array())
        .ok_or_else(|| parse_err("series missing 'terms'", v))?;
    Ok((vars, trunc, terms))
}

fn decode_series<C: Coeff>(v: &Value, coeff: impl Fn(&Value) -> Result<C>) -> Result<TruncSeries<C>> {
    let (vars, trunc, terms) = series_parts(v)?;
    let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let mut out = TruncSeries::zero(&var_refs, trunc);
    for t in terms {
        let pair = t.as_array().ok_or_else(|| parse_err("expected [exps, coeff]", t))?;
        if pair.len() != 2 {
            return Err(parse_err("expected [exps, coeff]", t));
        }
        let exps: Vec<u32> = pair[0]
            .as_array()
            .ok_or_else(|| parse_err("expected exponent tuple", &pair[0]))?
            .iter()
            .map(|e| as_usize(e, "exponent").map(|x| x as u32))
            .collect::<Result<_>>()?;
        if exps.len() != vars.len() {
            return Err(parse_err("exponent tuple arity mismatch", t));
        }
        let c = coeff(&pair[1])?;
        let prev: C = out.coeff(&exps);
        out.set(exps, Coeff::add(&prev, &c));
    }
    Ok(out)
}

pub fn qseries_from_value(v: &Value) -> Result<TruncSeries<BigRational>> {
    decode_series(v, rational_from_value)
}

pub fn gseries_from_value(v: &Value) -> Result<TruncSeries<GClass>> {
    decode_series(v, gclass_from_value)
}

pub fn qseries_to_value(s: &TruncSeries<BigRational>) -> Value {
    json!({
        "vars": s.vars(),
        "trunc": s.trunc(),
        "terms": s.terms().map(|(e, c)| {
            let coeff = if c.denom().is_one() {
                json!(c.numer().to_string())
            } else {
                json!([c.numer().to_string(), c.denom().to_string()])
            };
            json!([e, coeff])
        }).collect::<Vec<_>>(),
    })
}

pub fn gseries_to_value(s: &TruncSeries<GClass>) -> Value {
    json!({
        "vars": s.vars(),
        "trunc": s.trunc(),
        "terms": s
            .terms()
            .map(|(e, c)| json!([e, gclass_to_value(c)]))
            .collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// Branches, germs, equations
// ---------------------------------------------------------------------------

pub fn branch_from_value(v: &Value) -> Result<Branch> {
    let map = v.as_object().ok_or_else(|| parse_err("expected branch object", v))?;
    let x = qseries_from_value(map.get("x").ok_or_else(|| parse_err("branch missing 'x'", v))?)?;
    let y = qseries_from_value(map.get("y").ok_or_else(|| parse_err("branch missing 'y'", v))?)?;
    let exact = map.get("exact").and_then(|b| b.as_bool()).unwrap_or(false);
    Branch::new(x, y, exact)
}

pub fn branch_to_value(b: &Branch) -> Value {
    json!({
        "x": qseries_to_value(b.x()),
        "y": qseries_to_value(b.y()),
        "exact": b.is_exact(),
    })
}

pub fn germ_from_value(v: &Value) -> Result<CurveGerm> {
    let map = v.as_object().ok_or_else(|| parse_err("expected germ object", v))?;
    let branches = map
        .get("branches")
        .and_then(|x| x.as_array())
        .ok_or_else(|| parse_err("germ missing 'branches'", v))?
        .iter()
        .map(branch_from_value)
        .collect::<Result<Vec<_>>>()?;
    CurveGerm::new(branches)
}

pub fn planepoly_from_value(v: &Value) -> Result<PlanePoly> {
    let map = v.as_object().ok_or_else(|| parse_err("expected polynomial object", v))?;
    let terms = map
        .get("terms")
        .and_then(|x| x.as_array())
        .ok_or_else(|| parse_err("polynomial missing 'terms'", v))?;
    let parsed: Vec<(BigRational, u32, u32)> = terms
        .iter()
        .map(|t| {
            let quad = t.as_array().ok_or_else(|| parse_err("expected [num, den, i, j]", t))?;
            if quad.len() != 4 {
                return Err(parse_err("expected [num, den, i, j]", t));
            }
            Ok((
                BigRational::new(bigint_from_value(&quad[0])?, bigint_from_value(&quad[1])?),
                as_usize(&quad[2], "x-degree")? as u32,
                as_usize(&quad[3], "y-degree")? as u32,
            ))
        })
        .collect::<Result<_>>()?;
    PlanePoly::new(&parsed)
}

// ---------------------------------------------------------------------------
// Strata
// ---------------------------------------------------------------------------

pub fn stratum_from_value(v: &Value) -> Result<JetStratum> {
    let map = v.as_object().ok_or_else(|| parse_err("expected stratum object", v))?;
    let ambient = map
        .get("ambient")
        .and_then(|a| a.as_object())
        .ok_or_else(|| parse_err("stratum missing 'ambient'", v))?;
    let level = as_usize(
        ambient.get("level").or_else(|| ambient.get("n")).ok_or_else(|| {
            parse_err("ambient missing 'level'", v)
        })?,
        "level",
    )?;
    let space = ambient
        .get("space")
        .and_then(|s| s.as_str())
        .ok_or_else(|| parse_err("ambient missing 'space'", v))?;
    let ambient = match space {
        "arc" => Ambient::Arc { level },
        "fun" | "function" => Ambient::Fun { level },
        _ => return Err(parse_err("ambient space must be 'arc' or 'fun'", v)),
    };
    let coords = |key: &str| -> Result<Vec<usize>> {
        match map.get(key) {
            None => Ok(Vec::new()),
            Some(arr) => arr
                .as_array()
                .ok_or_else(|| parse_err("expected index list", arr))?
                .iter()
                .map(|i| as_usize(i, "coordinate index"))
                .collect(),
        }
    };
    let mut stratum = JetStratum::new(ambient, coords("zero")?, coords("nonzero")?)?;
    if let Some(ms) = map.get("multipliers") {
        for m in ms.as_array().ok_or_else(|| parse_err("expected multiplier list", ms))? {
            stratum = stratum.with_multiplier(gclass_from_value(m)?);
        }
    }
    Ok(stratum)
}

// ---------------------------------------------------------------------------
// Resolutions
// ---------------------------------------------------------------------------

pub fn resolution_from_value(v: &Value) -> Result<ResolutionData> {
    let map = v.as_object().ok_or_else(|| parse_err("expected resolution object", v))?;
    let comps = map
        .get("components")
        .and_then(|x| x.as_array())
        .ok_or_else(|| parse_err("resolution missing 'components'", v))?;
    let mut components = Vec::new();
    let mut ids = Vec::new();
    for c in comps {
        let cm = c.as_object().ok_or_else(|| parse_err("expected component object", c))?;
        let id = cm
            .get("id")
            .and_then(|s| s.as_str())
            .map(String::from)
            .unwrap_or_else(|| format!("E{}", components.len() + 1));
        let nu = as_usize(
            cm.get("nu").ok_or_else(|| parse_err("component missing 'nu'", c))?,
            "nu",
        )? as u32;
        let class = gclass_from_value(
            cm.get("euler_open_class")
                .ok_or_else(|| parse_err("component missing 'euler_open_class'", c))?,
        )?;
        ids.push(id.clone());
        components.push(Component {
            id,
            nu,
            euler_open_class: class,
        });
    }
    let intersections: Vec<Vec<i64>> = map
        .get("intersections")
        .and_then(|x| x.as_array())
        .ok_or_else(|| parse_err("resolution missing 'intersections'", v))?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| parse_err("expected matrix row", row))?
                .iter()
                .map(|e| e.as_i64().ok_or_else(|| parse_err("matrix entry", e)))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    let arrows: Vec<(usize, usize)> = match map.get("arrows") {
        None => Vec::new(),
        Some(arr) => arr
            .as_array()
            .ok_or_else(|| parse_err("expected arrow list", arr))?
            .iter()
            .map(|a| {
                let pair = a.as_array().ok_or_else(|| parse_err("expected [component, j]", a))?;
                if pair.len() != 2 {
                    return Err(parse_err("expected [component, j]", a));
                }
                let comp = match &pair[0] {
                    Value::String(s) => ids
                        .iter()
                        .position(|i| i == s)
                        .ok_or_else(|| Error::Parse(format!("unknown component id '{}'", s)))?,
                    other => as_usize(other, "component index")?,
                };
                Ok((comp, as_usize(&pair[1], "strict-transform index")?))
            })
            .collect::<Result<_>>()?,
    };
    ResolutionData::new(components, intersections, arrows)
}

// ---------------------------------------------------------------------------
// Partitions and lift reports
// ---------------------------------------------------------------------------

pub fn partition_from_value(v: &Value, trunc: usize) -> Result<MeasuredPartition> {
    let arr = v.as_array().ok_or_else(|| parse_err("expected partition list", v))?;
    let mut entries = Vec::new();
    for e in arr {
        let map = e.as_object().ok_or_else(|| parse_err("expected partition entry", e))?;
        let weight = map
            .get("weight")
            .and_then(|w| w.as_i64())
            .ok_or_else(|| parse_err("entry missing integer 'weight'", e))?;
        let value = map.get("value").ok_or_else(|| parse_err("entry missing 'value'", e))?;
        let series = if value.get("vars").is_some() {
            gseries_from_value(value)?
        } else {
            let vm = value
                .as_object()
                .ok_or_else(|| parse_err("expected series or monomial", value))?;
            let degree = as_usize(
                vm.get("degree").ok_or_else(|| parse_err("monomial missing 'degree'", value))?,
                "degree",
            )?;
            let coeff = match vm.get("coeff") {
                None => GClass::one(),
                Some(c) => gclass_from_value(c)?,
            };
            TruncSeries::t_monomial(coeff, degree, trunc)
        };
        entries.push((series, weight));
    }
    MeasuredPartition::new(entries)
}

pub fn lift_report_to_value(r: &LiftReport) -> Value {
    json!({
        "lifted": branch_to_value(&r.lifted),
        "iterations": r.iterations,
        "n": r.n,
        "n1": r.n1,
        "q": r.q,
    })
}

pub fn check_to_value(c: &crate::strata::Check) -> Value {
    json!({"name": c.name, "pass": c.pass, "detail": c.detail})
}

/// Structured error object for the command-line front end.
pub fn error_to_value(e: &Error) -> Value {
    let mut map = Map::new();
    map.insert("error".into(), Value::String(format!("{:?}", e)));
    map.insert("message".into(), Value::String(e.to_string()));
    Value::Object(map)
}

// ---------------------------------------------------------------------------
