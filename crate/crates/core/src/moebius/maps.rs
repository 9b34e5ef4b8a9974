use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{GaussianRational, Poly, UniPoly};
use crate::error::{Error, Result};
use crate::io::{gaussian_from_json, gaussian_pair_json};

/// `f = P/Q` for binary forms `P, Q` of formal degree `d`.
///
/// Coefficient vectors are ascending in `z = s/t`: entry `k` multiplies
/// `s^k t^(d-k)`. A form whose actual degree is below `d` vanishes at
/// infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMap {
    d: usize,
    p: UniPoly,
    q: UniPoly,
}

impl RationalMap {
    /// Builds the map in canonical form; `d` defaults to the larger degree.
    pub fn new(p: UniPoly, q: UniPoly, d: Option<usize>) -> Result<Self> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::NotCoprime);
        }
        let actual = p.degree().unwrap_or(0).max(q.degree().unwrap_or(0));
        let d = d.unwrap_or(actual);
        if d < actual {
            return Err(Error::pre(format!("declared degree {d} is below the actual degree {actual}")));
        }
        // both forms vanish at infinity, or share a finite root
        if d > actual || p.gcd(&q).degree().unwrap_or(0) > 0 {
            return Err(Error::NotCoprime);
        }
        let mut f = RationalMap { d, p, q };
        f.normalize();
        Ok(f)
    }

    pub fn from_coeffs(p: &[GaussianRational], q: &[GaussianRational]) -> Result<Self> {
        RationalMap::new(UniPoly::new(p.to_vec()), UniPoly::new(q.to_vec()), None)
    }

    /// Polynomial map `z ↦ p(z)`.
    pub fn polynomial(p: UniPoly) -> Result<Self> {
        RationalMap::new(p, UniPoly::one(), None)
    }

    /// Parses `P` and optionally `Q` written in the variable `z`, e.g.
    /// `z^3 + i*z`.
    pub fn parse(p: &str, q: Option<&str>) -> Result<Self> {
        let uni = |s: &str| -> Result<UniPoly> {
            crate::plane::parse_form(s)?
                .to_univariate(2)
                .ok_or_else(|| Error::Parse(format!("'{s}' must be a polynomial in z")))
        };
        let q = match q {
            Some(s) => uni(s)?,
            None => UniPoly::one(),
        };
        RationalMap::new(uni(p)?, q, None)
    }

    fn normalize(&mut self) {
        let lead = self.q.coeffs().iter().chain(self.p.coeffs()).find(|c| !c.is_zero()).cloned().unwrap();
        let inv = lead.inv().unwrap();
        self.p = self.p.scale(&inv);
        self.q = self.q.scale(&inv);
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.p
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.q
    }

    pub fn is_real(&self) -> bool {
        self.p.is_real() && self.q.is_real()
    }

    /// `P` as a binary form in `(s, t)`.
    pub fn hom_numerator(&self) -> Poly {
        homogenize(&self.p, self.d)
    }

    pub fn hom_denominator(&self) -> Poly {
        homogenize(&self.q, self.d)
    }

    /// Value at an affine point; `None` stands for infinity.
    pub fn eval(&self, z: &GaussianRational) -> Option<GaussianRational> {
        let den = self.q.eval(z);
        if den.is_zero() {
            None
        } else {
            Some(&self.p.eval(z) / &den)
        }
    }

    /// `φ ∘ f`.
    pub fn postcompose(&self, m: &MoebiusMap) -> RationalMap {
        let [[a, b], [c, e]] = &m.m;
        let p = &self.p.scale(a) + &self.q.scale(b);
        let q = &self.p.scale(c) + &self.q.scale(e);
        RationalMap::new(p, q, Some(self.d)).expect("an invertible target change keeps P, Q coprime")
    }

    /// `f ∘ μ`.
    pub fn precompose(&self, m: &MoebiusMap) -> RationalMap {
        let [[a, b], [c, e]] = &m.m;
        let (s, t) = (Poly::var(2, 0), Poly::var(2, 1));
        let ns = &s.scale(a) + &t.scale(b);
        let nt = &s.scale(c) + &t.scale(e);
        let sub = |f: &Poly| dehomogenize(&f.compose(&[ns.clone(), nt.clone()]), self.d);
        RationalMap::new(sub(&self.hom_numerator()), sub(&self.hom_denominator()), Some(self.d))
            .expect("an invertible source change keeps P, Q coprime")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("rational map must be a JSON object".into()))?;
        let coeffs = |key: &str| -> Result<UniPoly> {
            let arr = obj
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("missing coefficient array \"{key}\"")))?;
            Ok(UniPoly::new(arr.iter().map(gaussian_from_json).collect::<Result<Vec<_>>>()?))
        };
        let d = match obj.get("deg") {
            None => None,
            Some(x) => Some(x.as_u64().ok_or_else(|| Error::Parse("\"deg\" must be a nonnegative integer".into()))? as usize),
        };
        RationalMap::new(coeffs("P")?, coeffs("Q")?, d)
    }

    pub fn to_json(&self) -> Value {
        let pad = |p: &UniPoly| -> Value {
            (0..=self.d).map(|k| gaussian_pair_json(&p.coeff(k))).collect::<Vec<_>>().into()
        };
        json!({ "deg": self.d, "P": pad(&self.p), "Q": pad(&self.q) })
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.p, self.q)
    }
}

impl Serialize for RationalMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// `Σ c_k s^k t^(d-k)` in the ring `Q(i)[s, t]`.
pub(crate) fn homogenize(p: &UniPoly, d: usize) -> Poly {
    Poly::from_terms(
        2,
        p.coeffs().iter().enumerate().map(|(k, c)| ([k as u32, (d - k) as u32, 0], c.clone())),
    )
}

/// Inverse of [`homogenize`]: sets `t = 1`.
pub(crate) fn dehomogenize(f: &Poly, d: usize) -> UniPoly {
    let mut c = vec![GaussianRational::zero(); d + 1];
    for (e, v) in f.terms() {
        c[e[0] as usize] += v;
    }
    UniPoly::new(c)
}

/// An invertible 2×2 matrix acting by `w ↦ (a w + b) / (c w + e)`,
/// kept in the canonical projective normalisation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoebiusMap {
    m: [[GaussianRational; 2]; 2],
}

impl MoebiusMap {
    pub fn new(a: GaussianRational, b: GaussianRational, c: GaussianRational, e: GaussianRational) -> Result<Self> {
        let m = [[a, b], [c, e]];
        if det(&m).is_zero() {
            return Err(Error::pre("Moebius matrix is singular"));
        }
        Ok(MoebiusMap { m: normalize_matrix(m) })
    }

    pub fn from_ints(a: (i64, i64), b: (i64, i64), c: (i64, i64), e: (i64, i64)) -> Result<Self> {
        let g = |(x, y): (i64, i64)| GaussianRational::from_ints(x, y);
        MoebiusMap::new(g(a), g(b), g(c), g(e))
    }

    pub fn identity() -> Self {
        MoebiusMap::from_ints((1, 0), (0, 0), (0, 0), (1, 0)).unwrap()
    }

    pub fn matrix(&self) -> &[[GaussianRational; 2]; 2] {
        &self.m
    }

    pub fn det(&self) -> GaussianRational {
        det(&self.m)
    }

    pub fn is_real(&self) -> bool {
        self.m.iter().flatten().all(GaussianRational::is_real)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        MoebiusMap { m: normalize_matrix(mat_mul(&self.m, &other.m)) }
    }

    pub fn inverse(&self) -> MoebiusMap {
        let [[a, b], [c, e]] = &self.m;
        MoebiusMap { m: normalize_matrix([[e.clone(), -b], [-c, a.clone()]]) }
    }

    /// Entrywise conjugate, i.e. `w ↦ conj(φ(conj w))`.
    pub fn conj(&self) -> MoebiusMap {
        MoebiusMap { m: normalize_matrix(self.m.clone().map(|r| r.map(|x| x.conj()))) }
    }

    /// Image of an affine point; `None` stands for infinity.
    pub fn apply(&self, w: &GaussianRational) -> Option<GaussianRational> {
        let [[a, b], [c, e]] = &self.m;
        let den = &(c * w) + e;
        if den.is_zero() {
            None
        } else {
            Some(&(&(a * w) + b) / &den)
        }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.m.iter().map(|r| r.iter().map(|x| Value::String(x.to_string())).collect()).collect())
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, e]] = &self.m;
        write!(f, "[[{a}, {b}], [{c}, {e}]]")
    }
}

impl Serialize for MoebiusMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

type Mat2 = [[GaussianRational; 2]; 2];

fn det(m: &Mat2) -> GaussianRational {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &(&x[i][0] * &y[0][j]) + &(&x[i][1] * &y[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Same rule as for rational maps: the first nonzero entry of the
/// denominator row (else of the numerator row) becomes 1.
fn normalize_matrix(m: Mat2) -> Mat2 {
    let lead = m[1].iter().chain(m[0].iter()).find(|x| !x.is_zero()).cloned().unwrap();
    let inv = lead.inv().unwrap();
    m.map(|r| r.map(|x| &x * &inv))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealStructure {
    /// Conjugate to `w ↦ conj w`; the fixed set is a circle.
    Standard,
    /// Conjugate to `w ↦ -1/conj w`; no fixed points.
    Pointless,
}

impl fmt::Display for RealStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealStructure::Standard => "standard",
            RealStructure::Pointless => "pointless",
        })
    }
}

/// The antiholomorphic map `w ↦ m · conj(w)` on the projective line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AntiInvolution {
    m: Mat2,
    lambda: BigRational,
}

impl AntiInvolution {
    /// Checks `m · conj(m) = λ·id` with `λ` real and nonzero.
    pub fn new(m: [[GaussianRational; 2]; 2]) -> Result<Self> {
        let mc = m.clone().map(|r| r.map(|x| x.conj()));
        let p = mat_mul(&m, &mc);
        let scalar = p[0][1].is_zero() && p[1][0].is_zero() && p[0][0] == p[1][1];
        if !scalar || !p[0][0].is_real() || p[0][0].is_zero() {
            return Err(Error::NotInvolution);
        }
        let lambda = p[0][0].re().clone();
        Ok(AntiInvolution { m, lambda })
    }

    /// `w ↦ conj(φ(w))`, the real structure pulled back along `φ`.
    pub fn from_moebius(phi: &MoebiusMap) -> Result<Self> {
        AntiInvolution::new(phi.conj().m)
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.m
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    pub fn structure(&self) -> RealStructure {
        if self.lambda.is_positive() {
            RealStructure::Standard
        } else {
            RealStructure::Pointless
        }
    }

    pub fn apply(&self, w: &GaussianRational) -> Option<GaussianRational> {
        let [[a, b], [c, e]] = &self.m;
        let wc = w.conj();
        let den = &(c * &wc) + e;
        if den.is_zero() {
            None
        } else {
            Some(&(&(a * &wc) + b) / &den)
        }
    }
}

impl Default for AntiInvolution {
    fn default() -> Self {
        let o = GaussianRational::one;
        let z = GaussianRational::zero;
        AntiInvolution::new([[o(), z()], [z(), o()]]).unwrap()
    }
}
