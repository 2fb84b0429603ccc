//! JSON encodings for Laurent polynomials and rational functions.
//!
//! A Laurent polynomial is an array of `[exponent, "p/q"]` pairs in increasing
//! exponent order; a rational function is `{"num": [...], "den": [...]}`.

use num_rational::BigRational;
use serde_json::{json, Value};

use super::{parse_rational, LaurentPoly, RationalFunction};
use crate::error::{Error, Result};

pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn laurent_to_json(p: &LaurentPoly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(e, c)| json!([e, rational_to_string(c)]))
            .collect(),
    )
}

pub fn rf_to_json(x: &RationalFunction) -> Value {
    json!({
        "num": laurent_to_json(&x.numerator()),
        "den": laurent_to_json(&x.denominator()),
    })
}

pub fn rational_from_json(v: &Value, loc: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|_| Error::parse(loc, format!("bad rational {s:?}"))),
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(i.into()))
            .ok_or_else(|| Error::parse(loc, "only integer JSON numbers are accepted")),
        _ => Err(Error::parse(loc, "expected a rational string or integer")),
    }
}

pub fn laurent_from_json(v: &Value, loc: &str) -> Result<LaurentPoly> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::parse(loc, "expected an array of [exponent, coefficient] pairs"))?;
    let mut terms = Vec::with_capacity(arr.len());
    let mut last: Option<i64> = None;
    for (k, t) in arr.iter().enumerate() {
        let tloc = format!("{loc}[{k}]");
        let pair = t
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::parse(&tloc, "expected [exponent, coefficient]"))?;
        let e = pair[0]
            .as_i64()
            .ok_or_else(|| Error::parse(&tloc, "exponent must be an integer"))?;
        if last.is_some_and(|l| l >= e) {
            return Err(Error::parse(&tloc, "exponents must be strictly increasing"));
        }
        last = Some(e);
        terms.push((e, rational_from_json(&pair[1], &tloc)?));
    }
    Ok(LaurentPoly::from_terms(terms))
}

/// Accepts the full `{"num", "den"}` object, a bare Laurent array, a rational
/// string or an integer.
pub fn rf_from_json(v: &Value, loc: &str) -> Result<RationalFunction> {
    match v {
        Value::Object(m) => {
            let num = m.get("num").ok_or_else(|| Error::parse(loc, "missing \"num\""))?;
            let num = laurent_from_json(num, &format!("{loc}.num"))?;
            let den = match m.get("den") {
                Some(d) => laurent_from_json(d, &format!("{loc}.den"))?,
                None => LaurentPoly::one(),
            };
            RationalFunction::from_parts(&num, &den).map_err(|_| Error::parse(format!("{loc}.den"), "zero denominator"))
        }
        Value::Array(_) => Ok(RationalFunction::from_laurent(&laurent_from_json(v, loc)?)),
        _ => Ok(RationalFunction::from_rational(rational_from_json(v, loc)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let x = RationalFunction::qint(3).div(&RationalFunction::q_diff(2)).unwrap();
        let v = rf_to_json(&x);
        let back = rf_from_json(&v, "$").unwrap();
        assert_eq!(back, x);
        assert_eq!(
            serde_json::to_string(&rf_to_json(&back)).unwrap(),
            serde_json::to_string(&v).unwrap()
        );
    }

    #[test]
    fn scalar_forms() {
        assert!(rf_from_json(&json!(1), "$").unwrap().is_one());
        assert_eq!(
            rf_from_json(&json!("1/2"), "$").unwrap(),
            RationalFunction::from_rational(BigRational::new(1.into(), 2.into()))
        );
        assert!(rf_from_json(&json!([[1, "1"], [0, "2"]]), "$").is_err());
        assert!(rf_from_json(&json!({"num": [[0, "1"]], "den": []}), "$").is_err());
    }
}
