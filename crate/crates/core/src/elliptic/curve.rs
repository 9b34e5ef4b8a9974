use num_rational::BigRational;
use serde_json::Value;

use super::field::Field;
use crate::algebra::{GaussianRational, Poly};
use crate::error::{Error, Result};
use crate::io::ser_gaussian_vec;
use crate::plane::{intersect, normalize_point, IntersectionPoint, ProjPoint};

/// `y² = x³ + a·x + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeierstrassCurve<F> {
    a: F,
    b: F,
}

#[derive(Clone, Debug, PartialEq)]
pub enum EllipticPoint<F> {
    /// The identity `(0:1:0)`.
    Infinity,
    Affine { x: F, y: F },
}

impl<F: Field> EllipticPoint<F> {
    pub fn affine(x: F, y: F) -> Self {
        EllipticPoint::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, EllipticPoint::Infinity)
    }

    pub fn coords(&self) -> Option<(&F, &F)> {
        match self {
            EllipticPoint::Infinity => None,
            EllipticPoint::Affine { x, y } => Some((x, y)),
        }
    }

    /// Projective triple, using `like` to build the constants of the
    /// identity.
    pub fn projective(&self, like: &F) -> [F; 3] {
        match self {
            EllipticPoint::Infinity => [like.int(0), like.int(1), like.int(0)],
            EllipticPoint::Affine { x, y } => [x.clone(), y.clone(), like.int(1)],
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            EllipticPoint::Infinity => serde_json::json!(["0", "1", "0"]),
            EllipticPoint::Affine { x, y } => serde_json::json!([x.to_string(), y.to_string(), "1"]),
        }
    }
}

impl<F: Field> WeierstrassCurve<F> {
    pub fn new(a: F, b: F) -> Result<Self> {
        let c = WeierstrassCurve { a, b };
        if c.discriminant().is_zero() {
            return Err(Error::SingularCurve(format!("y^2 = x^3 + ({})x + ({}) has zero discriminant", c.a, c.b)));
        }
        Ok(c)
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    /// `-16(4a³ + 27b²)`.
    pub fn discriminant(&self) -> F {
        let a3 = self.a.square().mul(&self.a);
        let s = a3.mul(&self.a.int(4)).add(&self.b.square().mul(&self.a.int(27)));
        s.mul(&self.a.int(-16))
    }

    /// `x³ + a·x + b`.
    pub fn rhs(&self, x: &F) -> F {
        x.square().mul(x).add(&self.a.mul(x)).add(&self.b)
    }

    pub fn contains(&self, p: &EllipticPoint<F>) -> bool {
        match p {
            EllipticPoint::Infinity => true,
            EllipticPoint::Affine { x, y } => y.square().approx_eq(&self.rhs(x)),
        }
    }

    pub fn point(&self, x: F, y: F) -> Result<EllipticPoint<F>> {
        let p = EllipticPoint::affine(x, y);
        if !self.contains(&p) {
            return Err(Error::OffCurve);
        }
        Ok(p)
    }

    pub fn identity(&self) -> EllipticPoint<F> {
        EllipticPoint::Infinity
    }

    pub fn neg(&self, p: &EllipticPoint<F>) -> EllipticPoint<F> {
        match p {
            EllipticPoint::Infinity => EllipticPoint::Infinity,
            EllipticPoint::Affine { x, y } => EllipticPoint::affine(x.clone(), y.neg()),
        }
    }

    /// Chord-tangent addition with `A + B + C = O` for collinear `A, B, C`.
    pub fn add(&self, p: &EllipticPoint<F>, q: &EllipticPoint<F>) -> Result<EllipticPoint<F>> {
        if !self.contains(p) || !self.contains(q) {
            return Err(Error::OffCurve);
        }
        Ok(self.add_unchecked(p, q))
    }

    pub(crate) fn add_unchecked(&self, p: &EllipticPoint<F>, q: &EllipticPoint<F>) -> EllipticPoint<F> {
        let (x1, y1, x2, y2) = match (p, q) {
            (EllipticPoint::Infinity, _) => return q.clone(),
            (_, EllipticPoint::Infinity) => return p.clone(),
            (EllipticPoint::Affine { x: x1, y: y1 }, EllipticPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let slope = if x1.approx_eq(x2) {
            if y1.add(y2).is_zero() {
                return EllipticPoint::Infinity;
            }
            // tangent slope (3x² + a) / 2y
            let num = x1.square().mul(&x1.int(3)).add(&self.a);
            num.div(&y1.mul(&y1.int(2))).expect("y is nonzero")
        } else {
            y2.sub(y1).div(&x2.sub(x1)).expect("x-coordinates differ")
        };
        let x3 = slope.square().sub(x1).sub(x2);
        let y3 = slope.mul(&x1.sub(&x3)).sub(y1);
        EllipticPoint::affine(x3, y3)
    }

    pub fn double(&self, p: &EllipticPoint<F>) -> Result<EllipticPoint<F>> {
        self.add(p, p)
    }

    /// `n·p` by double-and-add; negative `n` uses `-p`.
    pub fn mul(&self, p: &EllipticPoint<F>, n: i64) -> Result<EllipticPoint<F>> {
        if !self.contains(p) {
            return Err(Error::OffCurve);
        }
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = EllipticPoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Gradient of `y²z - x³ - a·x·z² - b·z³` at `p`, i.e. the coefficients
    /// `(u, v, w)` of the tangent line `u·x + v·y + w·z = 0`. Not
    /// normalised.
    pub fn tangent_gradient(&self, p: &EllipticPoint<F>) -> Result<[F; 3]> {
        if !self.contains(p) {
            return Err(Error::OffCurve);
        }
        self.gradient_unchecked(p)
    }

    pub(crate) fn gradient_unchecked(&self, p: &EllipticPoint<F>) -> Result<[F; 3]> {
        let g = match p {
            EllipticPoint::Infinity => [self.a.int(0), self.a.int(0), self.a.int(1)],
            EllipticPoint::Affine { x, y } => [
                x.square().mul(&x.int(-3)).sub(&self.a),
                y.mul(&y.int(2)),
                y.square().sub(&self.a.mul(x).mul(&x.int(2))).sub(&self.b.mul(&x.int(3))),
            ],
        };
        if g.iter().all(Field::is_zero) {
            return Err(Error::internal("zero gradient on a smooth cubic"));
        }
        Ok(g)
    }

    /// Tangent line at `p`, scaled so that its first nonzero coefficient
    /// is 1.
    pub fn tangent_line(&self, p: &EllipticPoint<F>) -> Result<[F; 3]> {
        let g = self.tangent_gradient(p)?;
        let k = g.iter().position(|c| !c.is_zero()).unwrap();
        let lead = g[k].clone();
        Ok(g.map(|c| if c.is_zero() { c.int(0) } else { c.div(&lead).unwrap() }))
    }
}

impl WeierstrassCurve<BigRational> {
    pub fn from_ints(a: i64, b: i64) -> Result<Self> {
        WeierstrassCurve::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    /// `y²z - x³ - a·x·z² - b·z³` as a ternary form over Q(i).
    pub fn cubic_form(&self) -> Poly {
        let g = |e: [u32; 3], c: BigRational| (e, GaussianRational::real(c));
        let one = BigRational::from_integer(1.into());
        Poly::from_terms(
            3,
            [
                g([0, 2, 1], one.clone()),
                g([3, 0, 0], -one),
                g([1, 0, 2], -self.a.clone()),
                g([0, 0, 3], -self.b.clone()),
            ],
        )
    }

    /// Exact copy of the curve over another field.
    pub fn over<G: Field>(&self, like: &G) -> Result<WeierstrassCurve<G>> {
        WeierstrassCurve::new(like.rational(&self.a), like.rational(&self.b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Projection {
    #[serde(serialize_with = "ser_gaussian_vec")]
    pub center: ProjPoint,
    pub center_on_curve: bool,
    /// Degree of the projection from the centre: 3, or 2 when the centre
    /// lies on the curve.
    pub degree: u32,
    /// Points whose tangent line passes through the centre.
    pub points: Vec<IntersectionPoint>,
    pub unresolved: usize,
    pub total: usize,
}

/// Critical points of the projection of the cubic from `center`.
///
/// These are the points of the curve on the polar conic `center · ∇G = 0`.
/// When the centre is on the curve the polar conic is tangent there, and
/// that contact (multiplicity 2) is not a critical point of the residual
/// degree-2 projection.
pub fn project_from(c: &WeierstrassCurve<BigRational>, center: &ProjPoint) -> Result<Projection> {
    use num_traits::Zero;
    if center.iter().all(Zero::is_zero) {
        return Err(Error::pre("projection centre is the zero vector"));
    }
    let g = c.cubic_form();
    let polar = (0..3).fold(Poly::zero(3), |acc, k| &acc + &g.derivative(k).scale(&center[k]));
    let mut r = intersect(&g, &polar)?;
    let center = normalize_point(center);
    let on_curve = g.eval(&center).is_zero();
    let mut total = r.total;
    if on_curve {
        let hit = r.points.iter_mut().find(|p| p.point == center).ok_or_else(|| Error::internal("polar misses the centre"))?;
        if hit.multiplicity < 2 {
            return Err(Error::internal("polar conic not tangent at the centre"));
        }
        hit.multiplicity -= 2;
        r.points.retain(|p| p.multiplicity > 0);
        total -= 2;
    }
    Ok(Projection { center, center_on_curve: on_curve, degree: if on_curve { 2 } else { 3 }, points: r.points, unresolved: r.unresolved, total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::field::QuadRational;
    use crate::plane::point_from_ints;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn two_torsion_and_identity() {
        let c = WeierstrassCurve::from_ints(1, 0).unwrap();
        let t = c.point(q(0), q(0)).unwrap();
        assert_eq!(c.add(&t, &t).unwrap(), EllipticPoint::Infinity);
        assert_eq!(c.add(&t, &EllipticPoint::Infinity).unwrap(), t);
        assert_eq!(c.tangent_line(&t).unwrap(), [q(1), q(0), q(0)]);
        assert_eq!(c.tangent_line(&EllipticPoint::Infinity).unwrap(), [q(0), q(0), q(1)]);
        assert_eq!(c.point(q(1), q(1)), Err(Error::OffCurve));
        assert!(matches!(WeierstrassCurve::from_ints(0, 0), Err(Error::SingularCurve(_))));
        assert!(matches!(WeierstrassCurve::from_ints(-3, 2), Err(Error::SingularCurve(_))));
    }

    #[test]
    fn tangent_slope_at_one_root_two() {
        let r2 = QuadRational::from_ints(0, 1, 2).unwrap();
        let c = WeierstrassCurve::from_ints(1, 0).unwrap().over(&r2).unwrap();
        let p = c.point(r2.int(1), r2.clone()).unwrap();
        let l = c.tangent_line(&p).unwrap();
        // u·x + v·y + w = 0 with slope -u/v = √2
        let slope = l[0].neg().div(&l[1]).unwrap();
        assert_eq!(slope, r2);
        assert!(l[2].is_zero());
    }

    #[test]
    fn group_law_over_quadratic_field() {
        let s = QuadRational::from_ints(0, 1, 10).unwrap();
        let c = WeierstrassCurve::from_ints(1, 0).unwrap().over(&s).unwrap();
        let p = c.point(s.int(2), s.clone()).unwrap();
        let t = c.point(s.int(0), s.int(0)).unwrap();
        let p2 = c.double(&p).unwrap();
        assert!(c.contains(&p2));
        let lhs = c.add(&c.add(&p, &p2).unwrap(), &t).unwrap();
        let rhs = c.add(&p, &c.add(&p2, &t).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(c.mul(&p, 3).unwrap(), c.add(&p, &p2).unwrap());
        assert_eq!(c.add(&c.mul(&p, -3).unwrap(), &c.mul(&p, 3).unwrap()).unwrap(), EllipticPoint::Infinity);
    }

    #[test]
    fn projection_from_the_identity() {
        let c = WeierstrassCurve::from_ints(1, 0).unwrap();
        let r = project_from(&c, &point_from_ints([0, 1, 0])).unwrap();
        assert!(r.center_on_curve);
        assert_eq!(r.total, 4);
        let g = |s: &str| s.parse::<GaussianRational>().unwrap();
        let mut want = vec![
            ([g("0"), g("0"), g("1")], 1),
            ([g("i"), g("0"), g("1")], 1),
            ([g("-i"), g("0"), g("1")], 1),
            ([g("0"), g("1"), g("0")], 1),
        ];
        want.sort();
        let got: Vec<_> = r.points.iter().map(|p| (p.point.clone(), p.multiplicity)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn generic_projection_has_six_tangents_through_the_centre() {
        let c = WeierstrassCurve::from_ints(1, 0).unwrap();
        let center = point_from_ints([3, -2, 7]);
        let r = project_from(&c, &center).unwrap();
        assert!(!r.center_on_curve);
        assert_eq!(r.total, 6);
        let g = c.cubic_form();
        for p in &r.points {
            let grad: Vec<GaussianRational> = (0..3).map(|k| g.derivative(k).eval(&p.point)).collect();
            let through: GaussianRational = (0..3).map(|k| &grad[k] * &center[k]).sum();
            assert!(num_traits::Zero::is_zero(&through));
        }
    }
}
