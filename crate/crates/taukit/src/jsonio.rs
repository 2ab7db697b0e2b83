//! JSON encoding and decoding for every value the command line reads or
//! writes.
//!
//! All numbers that could exceed machine range (coefficients, constants,
//! scalars) travel as strings like `"-3/7"`, reduced and with a positive
//! denominator, exactly as [`Rat`] prints them. Structure:
//!
//! * polynomial: `{"vars": "t,tp", "terms": [{"c": "1/2", "e": [["t1", 2]]},
//!   ...]}` with terms in canonical order and exponent pairs sorted by bank
//!   then index; zero coefficients never appear
//! * Laurent polynomial: object mapping a decimal power of `z` to the
//!   polynomial coefficient, e.g. `{"-1": ..., "0": ...}`
//! * rational function: `{"num": poly, "den": poly}`
//! * tau function: `{"family": ..., "label": ..., "constants": ..., "poly":
//!   ...}` (plus `"n"` for the reduced family)
//! * check report: `{"identity": {"kind": ...}, "passed": bool, "residual":
//!   poly or null, "stats": ...}` where a null residual means zero
//! * wave symbol: `{"numerator": laurent, "denominator": poly, "stripped":
//!   true}`
//!
//! Every `*_from_json` inverts the matching `*_to_json`, so a value survives
//! a print/parse round trip unchanged.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::bilinear::{CheckReport, CheckStats, Identity};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::monomial::Monomial;
use crate::partitions::{FrobeniusCoords, Partition};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::ratfunc::RatFunc;
use crate::tau::{ConstMatrix, Constants, Family, TauLabel, TauPoly};
use crate::vars::VarRef;
use crate::wave::{WaveCheck, WaveRoute, WaveSymbol};

const VARS_TAG: &str = "t,tp";

fn bad(what: &str, detail: impl std::fmt::Display) -> Error {
    Error::invalid(format!("{what}: {detail}"))
}

fn as_obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(what, "expected an object"))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what, "expected an array"))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str().ok_or_else(|| bad(what, "expected a string"))
}

fn as_bool(v: &Value, what: &str) -> Result<bool> {
    v.as_bool().ok_or_else(|| bad(what, "expected a boolean"))
}

fn as_u32(v: &Value, what: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| bad(what, "expected a small nonnegative integer"))
}

fn get<'a>(m: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| bad(what, format_args!("missing field \"{key}\"")))
}

fn rat_from_json(v: &Value, what: &str) -> Result<Rat> {
    Rat::from_str(as_str(v, what)?)
}

fn rat_list_to_json(rs: &[Rat]) -> Value {
    Value::Array(rs.iter().map(|r| Value::String(r.to_string())).collect())
}

fn rat_list_from_json(v: &Value, what: &str) -> Result<Vec<Rat>> {
    as_array(v, what)?
        .iter()
        .map(|r| rat_from_json(r, what))
        .collect()
}

pub fn poly_to_json(p: &Poly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(m, c)| {
            let exps: Vec<Value> = m
                .iter()
                .map(|(v, e)| json!([v.json_name(), e]))
                .collect();
            json!({"c": c.to_string(), "e": exps})
        })
        .collect();
    json!({"vars": VARS_TAG, "terms": terms})
}

pub fn poly_from_json(v: &Value) -> Result<Poly> {
    let what = "polynomial";
    let obj = as_obj(v, what)?;
    let tag = as_str(get(obj, "vars", what)?, what)?;
    if tag != VARS_TAG {
        return Err(bad(what, format_args!("unknown vars tag \"{tag}\"")));
    }
    let mut terms = Vec::new();
    for term in as_array(get(obj, "terms", what)?, what)? {
        let term = as_obj(term, what)?;
        let coeff = rat_from_json(get(term, "c", what)?, what)?;
        if coeff.is_zero() {
            return Err(bad(what, "zero coefficient term"));
        }
        let mut pairs = Vec::new();
        for pair in as_array(get(term, "e", what)?, what)? {
            let pair = as_array(pair, what)?;
            if pair.len() != 2 {
                return Err(bad(what, "exponent entry is not a [name, exponent] pair"));
            }
            let var = VarRef::parse_json_name(as_str(&pair[0], what)?)?;
            let exp = as_u32(&pair[1], what)?;
            if exp == 0 {
                return Err(bad(what, "zero exponent entry"));
            }
            pairs.push((var, exp));
        }
        terms.push((Monomial::from_pairs(pairs), coeff));
    }
    Ok(Poly::from_terms(terms))
}

pub fn laurent_to_json(l: &LaurentPoly) -> Value {
    let mut obj = Map::new();
    for (zpow, p) in l.iter() {
        obj.insert(zpow.to_string(), poly_to_json(p));
    }
    Value::Object(obj)
}

pub fn laurent_from_json(v: &Value) -> Result<LaurentPoly> {
    let what = "laurent polynomial";
    let mut out = LaurentPoly::zero();
    for (key, val) in as_obj(v, what)? {
        let zpow: i64 = key
            .parse()
            .map_err(|_| bad(what, format_args!("bad power key \"{key}\"")))?;
        out = out.add(&LaurentPoly::term(zpow, poly_from_json(val)?));
    }
    Ok(out)
}

pub fn ratfunc_to_json(f: &RatFunc) -> Value {
    json!({"num": poly_to_json(f.num()), "den": poly_to_json(f.den())})
}

pub fn ratfunc_from_json(v: &Value) -> Result<RatFunc> {
    let what = "rational function";
    let obj = as_obj(v, what)?;
    RatFunc::new(
        poly_from_json(get(obj, "num", what)?)?,
        poly_from_json(get(obj, "den", what)?)?,
    )
}

fn const_matrix_to_json(m: &ConstMatrix) -> Value {
    Value::Array(m.cols().iter().map(|col| rat_list_to_json(col)).collect())
}

fn const_matrix_from_json(v: &Value, what: &str) -> Result<ConstMatrix> {
    let cols = as_array(v, what)?
        .iter()
        .map(|col| rat_list_from_json(col, what))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConstMatrix::new(cols))
}

/// Constants serialize by arrangement: `{"columns": [[...]]}` for one
/// matrix of column vectors, `{"c": [[...]], "d": [[...]]}` for the
/// Giambelli pair, `{"classes": {"0": [...], ...}}` keyed by congruence
/// class for the reduced family.
pub fn constants_to_json(c: &Constants) -> Value {
    match c {
        Constants::Matrix(m) => json!({"columns": const_matrix_to_json(m)}),
        Constants::Pair(c, d) => {
            json!({"c": const_matrix_to_json(c), "d": const_matrix_to_json(d)})
        }
        Constants::Classes(map) => {
            let mut obj = Map::new();
            for (class, vals) in map {
                obj.insert(class.to_string(), rat_list_to_json(vals));
            }
            json!({"classes": Value::Object(obj)})
        }
    }
}

pub fn constants_from_json(v: &Value) -> Result<Constants> {
    let what = "constants";
    let obj = as_obj(v, what)?;
    if let Some(m) = obj.get("columns") {
        return Ok(Constants::Matrix(const_matrix_from_json(m, what)?));
    }
    if let Some(classes) = obj.get("classes") {
        let mut map = BTreeMap::new();
        for (key, vals) in as_obj(classes, what)? {
            let class: u32 = key
                .parse()
                .map_err(|_| bad(what, format_args!("bad class key \"{key}\"")))?;
            map.insert(class, rat_list_from_json(vals, what)?);
        }
        return Ok(Constants::Classes(map));
    }
    if obj.contains_key("c") || obj.contains_key("d") {
        return Ok(Constants::Pair(
            const_matrix_from_json(get(obj, "c", what)?, what)?,
            const_matrix_from_json(get(obj, "d", what)?, what)?,
        ));
    }
    Err(bad(what, "expected \"columns\", \"c\"/\"d\", or \"classes\""))
}

fn family_tag(f: &Family) -> &'static str {
    match f {
        Family::KpJt => "kp-jt",
        Family::KpGiambelli => "kp-giambelli",
        Family::Ckp => "ckp",
        Family::CkpReduced(_) => "ckp-reduced",
        Family::Bkp => "bkp",
    }
}

fn label_to_json(label: &TauLabel) -> Value {
    match label {
        TauLabel::Parts(p) => json!({"lambda": p.parts()}),
        TauLabel::Frobenius(f) => {
            json!({"frobenius": {"arms": f.arms(), "legs": f.legs()}})
        }
    }
}

fn label_from_json(v: &Value) -> Result<TauLabel> {
    let what = "tau label";
    let obj = as_obj(v, what)?;
    if let Some(lambda) = obj.get("lambda") {
        let parts = as_array(lambda, what)?
            .iter()
            .map(|p| as_u32(p, what))
            .collect::<Result<Vec<_>>>()?;
        return Ok(TauLabel::Parts(Partition::new(parts)?));
    }
    if let Some(frob) = obj.get("frobenius") {
        let frob = as_obj(frob, what)?;
        let read = |key| -> Result<Vec<u32>> {
            as_array(get(frob, key, what)?, what)?
                .iter()
                .map(|p| as_u32(p, what))
                .collect()
        };
        return Ok(TauLabel::Frobenius(FrobeniusCoords::new(
            read("arms")?,
            read("legs")?,
        )?));
    }
    Err(bad(what, "expected \"lambda\" or \"frobenius\""))
}

pub fn tau_to_json(tau: &TauPoly) -> Value {
    let mut obj = Map::new();
    obj.insert("family".into(), Value::String(family_tag(&tau.family).into()));
    if let Family::CkpReduced(n) = tau.family {
        obj.insert("n".into(), json!(n));
    }
    obj.insert("label".into(), label_to_json(&tau.label));
    obj.insert("constants".into(), constants_to_json(&tau.constants));
    obj.insert("poly".into(), poly_to_json(&tau.poly));
    Value::Object(obj)
}

pub fn tau_from_json(v: &Value) -> Result<TauPoly> {
    let what = "tau function";
    let obj = as_obj(v, what)?;
    let family = match as_str(get(obj, "family", what)?, what)? {
        "kp-jt" => Family::KpJt,
        "kp-giambelli" => Family::KpGiambelli,
        "ckp" => Family::Ckp,
        "ckp-reduced" => Family::CkpReduced(as_u32(get(obj, "n", what)?, what)?),
        "bkp" => Family::Bkp,
        other => return Err(bad(what, format_args!("unknown family \"{other}\""))),
    };
    Ok(TauPoly {
        family,
        label: label_from_json(get(obj, "label", what)?)?,
        constants: constants_from_json(get(obj, "constants", what)?)?,
        poly: poly_from_json(get(obj, "poly", what)?)?,
    })
}

fn identity_to_json(id: &Identity) -> Value {
    match id {
        Identity::Kp => json!({"kind": "KP"}),
        Identity::Ckp => json!({"kind": "CKP"}),
        Identity::IotaC => json!({"kind": "IOTA_C"}),
        Identity::Reduced { n, p } => json!({"kind": "REDUCED", "n": n, "p": p}),
        Identity::SchurConstraint { positive } => {
            json!({"kind": "SCHUR_CONSTRAINT", "sign": if *positive { "+" } else { "-" }})
        }
        Identity::TimeIndep { index } => json!({"kind": "TIME_INDEP", "index": index}),
        Identity::KaupKupershmidt => json!({"kind": "KK"}),
        Identity::Kdv => json!({"kind": "KDV"}),
    }
}

fn identity_from_json(v: &Value) -> Result<Identity> {
    let what = "identity";
    let obj = as_obj(v, what)?;
    match as_str(get(obj, "kind", what)?, what)? {
        "KP" => Ok(Identity::Kp),
        "CKP" => Ok(Identity::Ckp),
        "IOTA_C" => Ok(Identity::IotaC),
        "REDUCED" => Ok(Identity::Reduced {
            n: as_u32(get(obj, "n", what)?, what)?,
            p: as_u32(get(obj, "p", what)?, what)?,
        }),
        "SCHUR_CONSTRAINT" => {
            let positive = match as_str(get(obj, "sign", what)?, what)? {
                "+" => true,
                "-" => false,
                other => return Err(bad(what, format_args!("unknown sign \"{other}\""))),
            };
            Ok(Identity::SchurConstraint { positive })
        }
        "TIME_INDEP" => Ok(Identity::TimeIndep {
            index: as_u32(get(obj, "index", what)?, what)?,
        }),
        "KK" => Ok(Identity::KaupKupershmidt),
        "KDV" => Ok(Identity::Kdv),
        other => Err(bad(what, format_args!("unknown kind \"{other}\""))),
    }
}

/// A null residual stands for the zero polynomial, so passing reports stay
/// small no matter how large the tau function was.
pub fn report_to_json(report: &CheckReport) -> Value {
    let residual = if report.residual.is_zero() {
        Value::Null
    } else {
        poly_to_json(&report.residual)
    };
    json!({
        "identity": identity_to_json(&report.identity),
        "passed": report.passed,
        "residual": residual,
        "stats": {
            "tau_terms": report.stats.tau_terms,
            "residual_terms": report.stats.residual_terms,
            "depth": report.stats.depth,
        },
    })
}

pub fn report_from_json(v: &Value) -> Result<CheckReport> {
    let what = "check report";
    let obj = as_obj(v, what)?;
    let residual = match get(obj, "residual", what)? {
        Value::Null => Poly::zero(),
        other => poly_from_json(other)?,
    };
    let stats = as_obj(get(obj, "stats", what)?, what)?;
    let as_usize = |key| -> Result<usize> {
        get(stats, key, what)?
            .as_u64()
            .and_then(|n| usize::try_from(n).ok())
            .ok_or_else(|| bad(what, format_args!("bad stats field \"{key}\"")))
    };
    Ok(CheckReport {
        identity: identity_from_json(get(obj, "identity", what)?)?,
        passed: as_bool(get(obj, "passed", what)?, what)?,
        residual,
        stats: CheckStats {
            tau_terms: as_usize("tau_terms")?,
            residual_terms: as_usize("residual_terms")?,
            depth: get(stats, "depth", what)?
                .as_i64()
                .ok_or_else(|| bad(what, "bad stats field \"depth\""))?,
        },
    })
}

pub fn reports_to_json(reports: &[CheckReport]) -> Value {
    Value::Array(reports.iter().map(report_to_json).collect())
}

pub fn wave_symbol_to_json(w: &WaveSymbol) -> Value {
    json!({
        "numerator": laurent_to_json(&w.numerator),
        "denominator": poly_to_json(&w.denominator),
        "stripped": w.stripped,
    })
}

pub fn wave_symbol_from_json(v: &Value) -> Result<WaveSymbol> {
    let what = "wave symbol";
    let obj = as_obj(v, what)?;
    Ok(WaveSymbol {
        numerator: laurent_from_json(get(obj, "numerator", what)?)?,
        denominator: poly_from_json(get(obj, "denominator", what)?)?,
        stripped: as_bool(get(obj, "stripped", what)?, what)?,
    })
}

pub fn wave_check_to_json(check: &WaveCheck) -> Value {
    let route = match check.route {
        WaveRoute::Jt => "jt",
        WaveRoute::Giambelli => "giambelli",
    };
    let scalar = match &check.scalar {
        Some(r) => Value::String(r.to_string()),
        None => Value::Null,
    };
    json!({
        "route": route,
        "passed": check.passed,
        "scalar": scalar,
        "difference": laurent_to_json(&check.difference),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::{verify_kp, verify_schur_constraint};
    use crate::partitions::Partition;
    
    use crate::tau::{tau_ckp_reduced, tau_kp_giambelli, tau_kp_jt};
    use crate::vars::Bank;
    use crate::wave::{cross_check_wave, p_symbol};

    fn schur(parts: &[u32]) -> Poly {
        let lambda = Partition::new(parts.to_vec()).unwrap();
        crate::schur::schur_jt(&lambda, &crate::schur::ArgSpec::bank(Bank::T))
    }

    #[test]
    fn poly_json_matches_the_frozen_shape() {
        let p = schur(&[1, 1]);
        let expected = r#"{"terms":[{"c":"1/2","e":[["t1",2]]},{"c":"-1","e":[["t2",1]]}],"vars":"t,tp"}"#;
        assert_eq!(serde_json::to_string(&poly_to_json(&p)).unwrap(), expected);
    }

    #[test]
    fn poly_survives_a_round_trip() {
        let mut p = schur(&[2, 2]);
        p = p.add(&Poly::constant(Rat::new(-7, 3)));
        let mixed = Poly::from_terms(vec![(
            Monomial::from_pairs([(VarRef::t(1), 1), (VarRef::tp(3), 2)]),
            Rat::new(5, 4),
        )]);
        p = p.add(&mixed);
        let v = poly_to_json(&p);
        assert_eq!(poly_from_json(&v).unwrap(), p);
        let text = serde_json::to_string(&v).unwrap();
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(poly_from_json(&reparsed).unwrap(), p);
    }

    #[test]
    fn poly_parse_rejects_malformed_input() {
        for text in [
            r#"{"terms":[],"vars":"bogus"}"#,
            r#"{"terms":[{"c":"0","e":[]}],"vars":"t,tp"}"#,
            r#"{"terms":[{"c":"1","e":[["q1",1]]}],"vars":"t,tp"}"#,
            r#"{"terms":[{"c":"1","e":[["t1",0]]}],"vars":"t,tp"}"#,
            r#"{"terms":[{"c":"1/0","e":[]}],"vars":"t,tp"}"#,
        ] {
            let v: Value = serde_json::from_str(text).unwrap();
            assert!(poly_from_json(&v).is_err(), "accepted {text}");
        }
    }

    #[test]
    fn laurent_and_ratfunc_round_trip() {
        let l = LaurentPoly::term(-2, schur(&[1, 1]))
            .add(&LaurentPoly::term(3, Poly::one()))
            .add(&LaurentPoly::from_poly(schur(&[1])));
        assert_eq!(laurent_from_json(&laurent_to_json(&l)).unwrap(), l);
        assert_eq!(
            laurent_from_json(&json!({})).unwrap(),
            LaurentPoly::zero()
        );

        let f = RatFunc::new(schur(&[2, 1]), schur(&[1, 1])).unwrap();
        let back = ratfunc_from_json(&ratfunc_to_json(&f)).unwrap();
        assert_eq!(back.num(), f.num());
        assert_eq!(back.den(), f.den());
    }

    #[test]
    fn tau_round_trips_for_every_family() {
        let c = ConstMatrix::new(vec![vec![Rat::new(1, 2)], vec![Rat::new(-3, 1)]]);
        let lambda = Partition::new(vec![2, 1]).unwrap();
        let frob = FrobeniusCoords::new(vec![1, 0], vec![1, 0]).unwrap();
        let mut classes = BTreeMap::new();
        classes.insert(0u32, vec![Rat::new(5, 1)]);

        let taus = vec![
            tau_kp_jt(&lambda, &c).unwrap(),
            tau_kp_giambelli(&frob, &ConstMatrix::zero(), &ConstMatrix::zero()).unwrap(),
            crate::tau::tau_ckp(&[1, 0], &ConstMatrix::zero()).unwrap(),
            tau_ckp_reduced(3, &FrobeniusCoords::new(vec![0], vec![0]).unwrap(), &classes)
                .unwrap(),
            crate::tau::tau_bkp(&lambda, &ConstMatrix::zero()).unwrap(),
        ];
        for tau in taus {
            let back = tau_from_json(&tau_to_json(&tau)).unwrap();
            assert_eq!(back.family, tau.family);
            assert_eq!(back.label, tau.label);
            assert_eq!(back.constants, tau.constants);
            assert_eq!(back.poly, tau.poly);
        }
    }

    #[test]
    fn reports_round_trip_for_every_identity_kind() {
        let passing = verify_kp(&schur(&[2, 1])).unwrap();
        assert!(passing.passed);
        let v = report_to_json(&passing);
        assert_eq!(v["residual"], Value::Null);
        let back = report_from_json(&v).unwrap();
        assert_eq!(back.identity, passing.identity);
        assert_eq!(back.passed, passing.passed);
        assert_eq!(back.residual, passing.residual);
        assert_eq!(back.stats, passing.stats);

        let (plus, minus) = verify_schur_constraint(&schur(&[2]));
        for failing in [plus, minus] {
            assert!(!failing.passed);
            let v = report_to_json(&failing);
            assert_ne!(v["residual"], Value::Null);
            let back = report_from_json(&v).unwrap();
            assert_eq!(back.identity, failing.identity);
            assert_eq!(back.residual, failing.residual);
        }

        for id in [
            Identity::Ckp,
            Identity::IotaC,
            Identity::Reduced { n: 3, p: 2 },
            Identity::SchurConstraint { positive: false },
            Identity::TimeIndep { index: 6 },
            Identity::KaupKupershmidt,
            Identity::Kdv,
        ] {
            let v = identity_to_json(&id);
            assert_eq!(identity_from_json(&v).unwrap(), id);
        }
    }

    #[test]
    fn wave_values_serialize_and_return() {
        let w = p_symbol(&schur(&[2, 1])).unwrap();
        let back = wave_symbol_from_json(&wave_symbol_to_json(&w)).unwrap();
        assert_eq!(back.numerator, w.numerator);
        assert_eq!(back.denominator, w.denominator);
        assert!(back.stripped);

        let lambda = Partition::new(vec![2, 1]).unwrap();
        let tau = tau_kp_jt(&lambda, &ConstMatrix::zero()).unwrap();
        let check = cross_check_wave(&tau, WaveRoute::Jt).unwrap();
        let v = wave_check_to_json(&check);
        assert_eq!(v["route"], "jt");
        assert_eq!(v["passed"], true);
        assert_eq!(v["scalar"], "1");
    }

    #[test]
    fn constants_round_trip_in_all_three_arrangements() {
        let m = ConstMatrix::new(vec![vec![Rat::new(9, 2), Rat::new(-2, 1)], vec![]]);
        let mut classes = BTreeMap::new();
        classes.insert(2u32, vec![Rat::new(-1, 6)]);
        for c in [
            Constants::Matrix(m.clone()),
            Constants::Pair(m.clone(), ConstMatrix::zero()),
            Constants::Classes(classes),
        ] {
            assert_eq!(constants_from_json(&constants_to_json(&c)).unwrap(), c);
        }
    }
}
