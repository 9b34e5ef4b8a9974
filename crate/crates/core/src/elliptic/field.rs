use std::fmt;
use std::str::FromStr;

use dashu_float::{Context, DBig};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Scalars for the group law: exact fields and a high-precision float.
///
/// Constants are produced from an existing element so that context such as
/// the float precision or the quadratic discriminant carries over.
pub trait Field: Clone + fmt::Debug + fmt::Display + Send + Sync {
    fn int(&self, n: i64) -> Self;
    fn rational(&self, q: &BigRational) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `None` when `o` is zero.
    fn div(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Self;
    /// Exact for exact fields, within the working tolerance for floats.
    fn is_zero(&self) -> bool;

    fn approx_eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }

    fn square(&self) -> Self {
        self.mul(self)
    }
}

impl Field for BigRational {
    fn int(&self, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn rational(&self, q: &BigRational) -> Self {
        q.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Option<Self> {
        (!Zero::is_zero(o)).then(|| self / o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// `a + b·√d` for a fixed non-square integer `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRational {
    pub a: BigRational,
    pub b: BigRational,
    pub d: i64,
}

impl QuadRational {
    pub fn new(a: BigRational, b: BigRational, d: i64) -> Result<Self> {
        if d >= 0 && (d as f64).sqrt().round().powi(2) as i64 == d {
            return Err(Error::pre(format!("{d} is a square")));
        }
        Ok(QuadRational { a, b, d })
    }

    pub fn from_ints(a: i64, b: i64, d: i64) -> Result<Self> {
        QuadRational::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()), d)
    }

    /// Galois conjugate `a - b·√d`.
    pub fn conj(&self) -> Self {
        QuadRational { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.into())
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.d, o.d, "mixing quadratic fields");
    }
}

impl fmt::Display for QuadRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            return write!(f, "{}", self.a);
        }
        let b = if self.b.is_one() { String::new() } else if (-&self.b).is_one() { "-".into() } else { format!("{}*", self.b) };
        if Zero::is_zero(&self.a) {
            write!(f, "{b}sqrt({})", self.d)
        } else if self.b.is_negative() {
            write!(f, "{} - {}sqrt({})", self.a, b.trim_start_matches('-'), self.d)
        } else {
            write!(f, "{} + {b}sqrt({})", self.a, self.d)
        }
    }
}

impl Field for QuadRational {
    fn int(&self, n: i64) -> Self {
        QuadRational { a: BigRational::from_integer(n.into()), b: BigRational::zero(), d: self.d }
    }
    fn rational(&self, q: &BigRational) -> Self {
        QuadRational { a: q.clone(), b: BigRational::zero(), d: self.d }
    }
    fn add(&self, o: &Self) -> Self {
        self.check(o);
        QuadRational { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d }
    }
    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        QuadRational { a: &self.a - &o.a, b: &self.b - &o.b, d: self.d }
    }
    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let d = BigRational::from_integer(self.d.into());
        QuadRational { a: &self.a * &o.a + &self.b * &o.b * d, b: &self.a * &o.b + &self.b * &o.a, d: self.d }
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.check(o);
        let n = o.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let t = self.mul(&o.conj());
        Some(QuadRational { a: t.a / &n, b: t.b / &n, d: self.d })
    }
    fn neg(&self) -> Self {
        QuadRational { a: -&self.a, b: -&self.b, d: self.d }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
}

/// A decimal float with a fixed number of significant digits.
///
/// With precision `p`, values below `10^-(p/2)` count as zero and
/// `approx_eq` uses the same bound relative to the larger operand.
#[derive(Clone, Debug, PartialEq)]
pub struct HpFloat {
    v: DBig,
}

impl HpFloat {
    pub fn from_rational(q: &BigRational, digits: usize) -> Self {
        let n = parse_dbig(&q.numer().to_string(), digits);
        let d = parse_dbig(&q.denom().to_string(), digits);
        HpFloat { v: n / d }
    }

    pub fn from_i64(n: i64, digits: usize) -> Self {
        HpFloat { v: DBig::from(n).with_precision(digits).value() }
    }

    pub fn precision(&self) -> usize {
        self.v.precision()
    }

    pub fn value(&self) -> &DBig {
        &self.v
    }

    pub fn to_f64(&self) -> f64 {
        self.v.to_f64().value()
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() { Field::neg(self) } else { self.clone() }
    }

    pub fn is_negative(&self) -> bool {
        self.v < DBig::ZERO
    }

    /// Square root; `None` for clearly negative input. Values within the
    /// zero tolerance are treated as zero.
    pub fn sqrt(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return Some(self.int(0));
        }
        if self.is_negative() {
            return None;
        }
        Some(HpFloat { v: ctx(self.precision()).sqrt(self.v.repr()).value() })
    }

    pub fn tan(&self) -> Self {
        HpFloat { v: self.v.tan().value(&ctx(self.precision())) }
    }

    pub fn pi(digits: usize) -> Self {
        HpFloat { v: ctx(digits).pi().value() }
    }

    pub fn tolerance(digits: usize) -> Self {
        let e = (digits / 2).max(1);
        HpFloat { v: parse_dbig(&format!("1e-{e}"), digits) }
    }

    pub fn lt(&self, o: &Self) -> bool {
        self.v < o.v
    }

    /// Rounded to `digits` significant decimal digits in scientific form.
    pub fn to_decimal(&self, digits: usize) -> String {
        let v = self.v.clone().with_precision(digits.max(1)).value();
        format!("{v:e}")
    }
}

fn ctx(digits: usize) -> Context<dashu_float::round::mode::HalfAway> {
    Context::new(digits)
}

fn parse_dbig(s: &str, digits: usize) -> DBig {
    DBig::from_str(s).expect("decimal literal").with_precision(digits).value()
}

impl fmt::Display for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Field for HpFloat {
    fn int(&self, n: i64) -> Self {
        HpFloat::from_i64(n, self.precision())
    }
    fn rational(&self, q: &BigRational) -> Self {
        HpFloat::from_rational(q, self.precision())
    }
    fn add(&self, o: &Self) -> Self {
        HpFloat { v: &self.v + &o.v }
    }
    fn sub(&self, o: &Self) -> Self {
        HpFloat { v: &self.v - &o.v }
    }
    fn mul(&self, o: &Self) -> Self {
        HpFloat { v: &self.v * &o.v }
    }
    fn div(&self, o: &Self) -> Option<Self> {
        (!o.v.repr().is_zero()).then(|| HpFloat { v: &self.v / &o.v })
    }
    fn neg(&self) -> Self {
        HpFloat { v: -&self.v }
    }
    fn is_zero(&self) -> bool {
        self.abs().v < HpFloat::tolerance(self.precision()).v
    }
    fn approx_eq(&self, o: &Self) -> bool {
        let scale = [self.abs(), o.abs(), self.int(1)]
            .into_iter()
            .fold(self.int(0), |m, x| if m.lt(&x) { x } else { m });
        let diff = self.sub(o).abs();
        diff.v < (&scale.v * &HpFloat::tolerance(self.precision()).v)
    }
}
