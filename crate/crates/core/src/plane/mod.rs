//! Plane projective curves over Q(i): singular points, cusp types, tangent
//! lines and intersection multiplicities.

mod intersect;
mod irreducible;
mod quartic;
mod singular;

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::algebra::{GaussianRational, Poly};
use crate::error::{Error, Result};

pub use intersect::{intersect, line_intersections, CurveIntersection, IntersectionPoint};
pub use irreducible::absolute_factor_count;
pub use quartic::{paper_quartic, verify_paper_quartic, verify_quartic, Clause, QuarticReport};
pub use singular::{
    classify_singularity, singular_points, tangent_at_smooth, SingularKind, SingularLocus, SingularPointReport,
    TangentLine,
};

pub type ProjPoint = [GaussianRational; 3];

pub const MAX_DEGREE: u32 = 6;

/// A reduced, absolutely irreducible plane curve `F(x, y, z) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    f: Poly,
    degree: u32,
}

impl PlaneCurve {
    pub fn new(f: Poly) -> Result<Self> {
        if f.nvars() != 3 {
            return Err(Error::pre("a plane curve needs a form in x, y, z"));
        }
        if f.is_zero() {
            return Err(Error::pre("zero polynomial"));
        }
        if !f.is_homogeneous() {
            return Err(Error::pre("form is not homogeneous"));
        }
        let degree = f.total_degree().unwrap();
        if degree == 0 {
            return Err(Error::pre("constant form"));
        }
        if degree > MAX_DEGREE {
            return Err(Error::Unsupported(format!("degree {degree} exceeds {MAX_DEGREE}")));
        }
        let r = absolute_factor_count(&f)?;
        if r > 1 {
            return Err(Error::Reducible(format!("{r} absolutely irreducible components")));
        }
        Ok(PlaneCurve { f, degree })
    }

    /// Parses a form such as `x*z^3 - y*z^3 + x*y*z^2 + x^2*y^2`.
    pub fn parse(src: &str) -> Result<Self> {
        PlaneCurve::new(parse_form(src)?)
    }

    pub fn form(&self) -> &Poly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.f.eval(p).is_zero()
    }

    pub fn conj(&self) -> PlaneCurve {
        PlaneCurve { f: self.f.conj(), degree: self.degree }
    }

    /// `(d - 1)(d - 2)/2`.
    pub fn arithmetic_genus(&self) -> i64 {
        let d = self.degree as i64;
        (d - 1) * (d - 2) / 2
    }

    /// `{"degree": n, "monomials": {"i,j,k": "coefficient", ...}}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| Error::Parse("curve must be a JSON object".into()))?;
        if let Some(Value::String(s)) = obj.get("form") {
            return PlaneCurve::parse(s);
        }
        let monos = obj
            .get("monomials")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("missing \"monomials\" object".into()))?;
        let mut f = Poly::zero(3);
        for (key, c) in monos {
            let e: Vec<u32> = key
                .split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad exponent key \"{key}\"")))?;
            if e.len() != 3 {
                return Err(Error::Parse(format!("exponent key \"{key}\" needs three entries")));
            }
            let coeff = crate::io::gaussian_from_json(c)?;
            f.add_term([e[0], e[1], e[2]], coeff);
        }
        let curve = PlaneCurve::new(f)?;
        if let Some(d) = obj.get("degree") {
            if d.as_u64() != Some(curve.degree as u64) {
                return Err(Error::Parse(format!("declared degree {d} does not match the form")));
            }
        }
        Ok(curve)
    }

    pub fn to_json(&self) -> Value {
        let monos: Map<String, Value> = self
            .f
            .terms()
            .map(|(e, c)| (format!("{},{},{}", e[0], e[1], e[2]), Value::String(c.to_string())))
            .collect();
        let mut out = Map::new();
        out.insert("degree".into(), self.degree.into());
        out.insert("monomials".into(), Value::Object(monos));
        Value::Object(out)
    }
}

impl std::fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.f.display(&["x", "y", "z"]))
    }
}

/// Parses a polynomial in `x, y, z` written with `+ - * ^` and Gaussian
/// rational coefficients in parentheses, e.g. `(1/2+i)*x^2*y - 3*z^3`.
pub fn parse_form(src: &str) -> Result<Poly> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty form".into()));
    }
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes = s.as_bytes();
    for (k, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && k > 0 && !b"^*+-".contains(&bytes[k - 1]) => {
                terms.push(&s[start..k]);
                start = k;
            }
            _ => {}
        }
    }
    terms.push(&s[start..]);
    let mut acc: BTreeMap<[u32; 3], GaussianRational> = BTreeMap::new();
    for t in terms {
        let (neg, body) = match t.as_bytes()[0] {
            b'-' => (true, &t[1..]),
            b'+' => (false, &t[1..]),
            _ => (false, t),
        };
        let mut coeff = GaussianRational::one();
        let mut e = [0u32; 3];
        for factor in split_factors(body)? {
            let (base, pow) = match factor.rsplit_once('^') {
                Some((b, p)) if !b.ends_with(')') || b.starts_with('(') => {
                    (b, p.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?)
                }
                _ => (factor, 1),
            };
            match base {
                "x" => e[0] += pow,
                "y" => e[1] += pow,
                "z" => e[2] += pow,
                num => {
                    let inner = num.strip_prefix('(').and_then(|n| n.strip_suffix(')')).unwrap_or(num);
                    let v: GaussianRational = inner.parse()?;
                    coeff = &coeff * &v.pow(pow);
                }
            }
        }
        if neg {
            coeff = -coeff;
        }
        *acc.entry(e).or_insert_with(GaussianRational::zero) += &coeff;
    }
    Ok(Poly::from_terms(3, acc))
}

fn split_factors(body: &str) -> Result<Vec<&str>> {
    if body.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                out.push(&body[start..k]);
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(&body[start..]);
    if depth != 0 || out.iter().any(|f| f.is_empty()) {
        return Err(Error::Parse(format!("malformed term '{body}'")));
    }
    Ok(out)
}

/// Scales so that the last nonzero coordinate is 1.
pub fn normalize_point(p: &ProjPoint) -> ProjPoint {
    let k = (0..3).rev().find(|&k| !p[k].is_zero()).expect("projective point has a nonzero coordinate");
    let inv = p[k].inv().unwrap();
    [&p[0] * &inv, &p[1] * &inv, &p[2] * &inv]
}

/// Scales a line so that its first nonzero coefficient is 1.
pub fn normalize_line(l: &ProjPoint) -> ProjPoint {
    let k = (0..3).find(|&k| !l[k].is_zero()).expect("line has a nonzero coefficient");
    let inv = l[k].inv().unwrap();
    [&l[0] * &inv, &l[1] * &inv, &l[2] * &inv]
}

pub fn point_is_real(p: &ProjPoint) -> bool {
    normalize_point(p).iter().all(GaussianRational::is_real)
}

pub fn point_from_ints(p: [i64; 3]) -> ProjPoint {
    p.map(GaussianRational::from_int)
}

pub fn format_point(p: &ProjPoint) -> String {
    format!("({}:{}:{})", p[0], p[1], p[2])
}

/// `F(A·X)` for an invertible integer matrix `A`.
pub(crate) fn linear_change(f: &Poly, a: &[[i64; 3]; 3]) -> Poly {
    let vars: Vec<Poly> = (0..3).map(|j| Poly::var(3, j)).collect();
    let subs: Vec<Poly> = (0..3)
        .map(|i| {
            (0..3).fold(Poly::zero(3), |acc, j| &acc + &vars[j].scale(&GaussianRational::from_int(a[i][j])))
        })
        .collect();
    f.compose(&subs)
}

pub(crate) fn apply_matrix(a: &[[i64; 3]; 3], p: &ProjPoint) -> ProjPoint {
    let row = |i: usize| (0..3).map(|j| &GaussianRational::from_int(a[i][j]) * &p[j]).sum::<GaussianRational>();
    [row(0), row(1), row(2)]
}

pub(crate) fn det3(a: &[[i64; 3]; 3]) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Deterministic sequence of invertible integer matrices used to put
/// curves in general position.
pub(crate) fn generic_matrices(bound: i64) -> impl Iterator<Item = [[i64; 3]; 3]> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    std::iter::from_fn(move || loop {
        let mut a = [[0i64; 3]; 3];
        for row in a.iter_mut() {
            for v in row.iter_mut() {
                *v = rng.gen_range(-bound..=bound);
            }
        }
        if det3(&a) != 0 {
            return Some(a);
        }
    })
}
