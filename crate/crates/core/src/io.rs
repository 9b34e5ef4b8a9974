//! Serialization helpers: exact numbers travel as strings.

use num_rational::BigRational;
use serde::Serializer;
use serde_json::Value;

use crate::algebra::{parse_rational, GaussianRational};
use crate::error::{Error, Result};

pub fn ser_rational<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn ser_gaussian<S: Serializer>(x: &GaussianRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn ser_gaussian_vec<S: Serializer>(v: &[GaussianRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Reads `[re, im]` (strings or integers), a single string such as
/// `"2-3/5 i"`, or an integer.
pub fn gaussian_from_json(v: &Value) -> Result<GaussianRational> {
    let part = |x: &Value| -> Result<BigRational> {
        match x {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => n
                .as_i64()
                .map(|k| BigRational::from_integer(k.into()))
                .ok_or_else(|| Error::Parse(format!("non-integer number {n}; write rationals as \"num/den\""))),
            other => Err(Error::Parse(format!("expected a rational, found {other}"))),
        }
    };
    match v {
        Value::Array(a) if a.len() == 2 => Ok(GaussianRational::new(part(&a[0])?, part(&a[1])?)),
        Value::String(s) => s.parse(),
        Value::Number(_) => Ok(GaussianRational::real(part(v)?)),
        other => Err(Error::Parse(format!("expected a Gaussian rational, found {other}"))),
    }
}

pub fn gaussian_pair_json(x: &GaussianRational) -> Value {
    Value::Array(vec![Value::String(x.re().to_string()), Value::String(x.im().to_string())])
}
