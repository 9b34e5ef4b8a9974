//! Exact arithmetic in the Gaussian rationals Q(i).

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element `re + im·i` of Q(i).
///
/// Both parts are stored as reduced fractions, so structural equality is
/// value equality. The derived ordering is lexicographic on `(re, im)`; it
/// carries no algebraic meaning and only serves deterministic tie-breaking.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into()))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ints(n, 0)
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        GaussianRational::real(BigRational::new(num.into(), den.into()))
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn into_parts(self) -> (BigRational, BigRational) {
        (self.re, self.im)
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The field norm `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianRational::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    /// Least common multiple of the two denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    /// Common-denominator rendering, e.g. `(4-3i)/5`.
    pub fn to_fraction_string(&self) -> String {
        let l = self.denominator_lcm();
        let a = (&self.re * BigRational::from_integer(l.clone())).to_integer();
        let b = (&self.im * BigRational::from_integer(l.clone())).to_integer();
        let numer = if b.is_zero() {
            a.to_string()
        } else {
            let imag = if b.abs().is_one() { "i".to_string() } else { format!("{}i", b.abs()) };
            if a.is_zero() {
                if b.is_negative() { format!("-{imag}") } else { imag }
            } else {
                let sign = if b.is_negative() { '-' } else { '+' };
                format!("{a}{sign}{imag}")
            }
        };
        if l.is_one() {
            numer
        } else if b.is_zero() || a.is_zero() {
            format!("{numer}/{l}")
        } else {
            format!("({numer})/{l}")
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |v: &BigRational| {
            if v.abs().is_one() {
                "i".to_string()
            } else {
                format!("{} i", v.abs())
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im.is_negative() {
                    write!(f, "-{}", imag(&self.im))
                } else {
                    write!(f, "{}", imag(&self.im))
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}", self.re, sign, imag(&self.im))
            }
        }
    }
}

/// Parses `n`, `n/d` or a finite decimal such as `-100.35` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational '{s}'"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{s}'")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = ip.trim_start().starts_with('-');
        let ip_val = match ip.trim() {
            "" | "-" | "+" => BigInt::zero(),
            t => BigInt::from_str(t).map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(fp.len() as u32);
        let frac = BigInt::from_str(fp).map_err(|_| bad())?;
        let mag = ip_val.abs() * &scale + frac;
        let n = if negative { -mag } else { mag };
        return Ok(BigRational::new(n, scale));
    }
    BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad())
}

impl FromStr for GaussianRational {
    type Err = Error;

    /// Accepts forms such as `3`, `-2/5`, `2+i`, `-i`, `1/2+3/4 i`,
    /// `1/2-3/4*i` and `(4-3i)/5`.
    fn from_str(src: &str) -> Result<Self> {
        let s: String = src.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '·').collect();
        if s.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        if s.starts_with('(') {
            let close = s.find(')').ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in '{src}'")))?;
            let inner: GaussianRational = s[1..close].parse()?;
            let rest = &s[close + 1..];
            if rest.is_empty() {
                return Ok(inner);
            }
            let den = rest
                .strip_prefix('/')
                .ok_or_else(|| Error::Parse(format!("unexpected '{rest}' in '{src}'")))?;
            let den = parse_rational(den)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{src}'")));
            }
            return Ok(inner / GaussianRational::real(den));
        }
        // split into signed terms
        let bytes = s.as_bytes();
        let mut terms = Vec::new();
        let mut start = 0;
        for k in 1..bytes.len() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                terms.push(&s[start..k]);
                start = k;
            }
        }
        terms.push(&s[start..]);
        let mut acc = GaussianRational::zero();
        for t in terms {
            if let Some(pos) = t.find('i') {
                let (coef, rest) = (&t[..pos], &t[pos + 1..]);
                let mut c = match coef {
                    "" | "+" => BigRational::one(),
                    "-" => -BigRational::one(),
                    c => parse_rational(c)?,
                };
                if !rest.is_empty() {
                    let den = rest
                        .strip_prefix('/')
                        .ok_or_else(|| Error::Parse(format!("unexpected '{rest}' in '{src}'")))?;
                    let den = parse_rational(den)?;
                    if den.is_zero() {
                        return Err(Error::Parse(format!("zero denominator in '{src}'")));
                    }
                    c /= den;
                }
                acc.im += c;
            } else {
                acc.re += parse_rational(t)?;
            }
        }
        Ok(acc)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational { re: BigRational::one(), im: BigRational::zero() }
    }
}

impl From<BigRational> for GaussianRational {
    fn from(r: BigRational) -> Self {
        GaussianRational::real(r)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::real(&self.re * &o.re);
        }
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like the rational types it wraps.
    fn div(self, o: &GaussianRational) -> GaussianRational {
        if o.im.is_zero() {
            return GaussianRational { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        self * &o.inv().expect("division by zero in Q(i)")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational { (&self).$m(o) }
        }
        impl<'a> $tr<GaussianRational> for &'a GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational { self.$m(&o) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl AddAssign for GaussianRational {
    fn add_assign(&mut self, o: GaussianRational) {
        self.re += o.re;
        self.im += o.im;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}

impl Sum for GaussianRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(GaussianRational::zero(), |a, b| a + b)
    }
}

impl Product for GaussianRational {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(GaussianRational::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(g("2+i"), GaussianRational::from_ints(2, 1));
        assert_eq!(g("-i"), GaussianRational::from_ints(0, -1));
        assert_eq!(g("(4-3i)/5"), &GaussianRational::from_ints(4, -3) / &GaussianRational::from_int(5));
        assert_eq!(g("1/2+3/4 i"), GaussianRational::new(BigRational::new(1.into(), 2.into()), BigRational::new(3.into(), 4.into())));
        assert_eq!(g("1/2-3/4*i"), g("1/2-3/4i"));
        assert_eq!(g("100.35"), GaussianRational::from_frac(2007, 20));
        assert_eq!(g("-7"), GaussianRational::from_int(-7));
        assert!("".parse::<GaussianRational>().is_err());
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("abc".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "3", "-2/5", "i", "-i", "2+i", "4/5-3/5 i", "7/3 i", "-1/2+i"] {
            let v = g(s);
            assert_eq!(v.to_string(), s);
            assert_eq!(g(&v.to_string()), v);
        }
        assert_eq!(g("(4-3i)/5").to_fraction_string(), "(4-3i)/5");
        assert_eq!(g("(1+2i)/5").to_fraction_string(), "(1+2i)/5");
        assert_eq!(g("3/5").to_fraction_string(), "3/5");
        assert_eq!(g("2+i").to_fraction_string(), "2+i");
        assert_eq!(g("-i/2").to_fraction_string(), "-i/2");
    }

    #[test]
    fn field_axioms_on_samples() {
        let a = g("2/3+5/7 i");
        let b = g("-1/4+2 i");
        let c = g("3-1/9 i");
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        assert_eq!(a.conj().conj(), a);
        assert!(GaussianRational::zero().inv().is_none());
        assert_eq!(GaussianRational::i().pow(2), GaussianRational::from_int(-1));
    }
}
