use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use std::sync::Arc;

use super::alphabet::Alphabet;
use super::coeff::Coeff;
use super::element::NCElement;
use crate::error::{Error, Result};

/// Coefficients with a JSON field encoding.
pub trait JsonCoeff: Coeff {
    fn write_fields(&self, obj: &mut Map<String, Value>);
    fn read_fields(obj: &Map<String, Value>) -> Result<Self>;
}

impl JsonCoeff for Complex64 {
    fn write_fields(&self, obj: &mut Map<String, Value>) {
        obj.insert("re".into(), json!(self.re));
        obj.insert("im".into(), json!(self.im));
    }
    fn read_fields(obj: &Map<String, Value>) -> Result<Self> {
        let get =
            |k: &str| obj.get(k).and_then(Value::as_f64).ok_or_else(|| Error::Parse(format!("missing field `{k}`")));
        Ok(Complex64::new(get("re")?, get("im")?))
    }
}

impl JsonCoeff for BigRational {
    fn write_fields(&self, obj: &mut Map<String, Value>) {
        obj.insert("num".into(), json!(self.numer().to_string()));
        obj.insert("den".into(), json!(self.denom().to_string()));
    }
    fn read_fields(obj: &Map<String, Value>) -> Result<Self> {
        let get = |k: &str| -> Result<BigInt> {
            let v = obj.get(k).ok_or_else(|| Error::Parse(format!("missing field `{k}`")))?;
            let s = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                _ => return Err(Error::Parse(format!("field `{k}`"))),
            };
            s.parse().map_err(|_| Error::Parse(format!("integer `{s}`")))
        };
        let den = get("den")?;
        if den == BigInt::from(0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(get("num")?, den))
    }
}

pub fn to_json<R: JsonCoeff>(e: &NCElement<R>) -> Value {
    let al = e.alphabet();
    let terms: Vec<Value> = e
        .terms()
        .map(|(w, c)| {
            let mut obj = Map::new();
            obj.insert("word".into(), Value::Array(w.iter().map(|g| Value::String(al.symbol(*g))).collect()));
            c.write_fields(&mut obj);
            Value::Object(obj)
        })
        .collect();
    json!({ "len_bound": e.max_len(), "terms": terms })
}

pub fn from_json<R: JsonCoeff>(alphabet: &Arc<Alphabet>, v: &Value) -> Result<NCElement<R>> {
    let bound =
        v.get("len_bound").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing `len_bound`".into()))? as usize;
    let mut out = NCElement::zero(alphabet, bound);
    let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing `terms`".into()))?;
    for t in terms {
        let obj = t.as_object().ok_or_else(|| Error::Parse("term is not an object".into()))?;
        let word = obj
            .get("word")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing `word`".into()))?
            .iter()
            .map(|s| {
                s.as_str().ok_or_else(|| Error::Parse("word letter".into())).and_then(|s| alphabet.parse_symbol(s))
            })
            .collect::<Result<Vec<_>>>()?;
        if word.len() > bound {
            return Err(Error::Parse(format!("word longer than len_bound {bound}")));
        }
        out.add_term(word, R::read_fields(obj)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::alphabet::{GEN_A, GEN_B};
    use crate::ncalg::coeff::rat;

    #[test]
    fn round_trip_both_rings() {
        let al = Alphabet::new(2).unwrap();
        let mut q: NCElement<BigRational> = NCElement::zero(&al, 3);
        q.add_term(vec![GEN_A, GEN_B, 3], rat(-7, 3));
        q.add_term(vec![], rat(1, 1));
        let v = to_json(&q);
        assert_eq!(v["terms"][1]["word"][2], "bP(1/2,0)");
        assert_eq!(from_json::<BigRational>(&al, &v).unwrap(), q);
        let c = q.map_coeffs(|r| Complex64::from_ratio(r) * Complex64::new(0.5, 2.0));
        assert_eq!(from_json::<Complex64>(&al, &to_json(&c)).unwrap(), c);
    }
}
