use num_traits::Zero;
use serde::Serialize;

use super::{apply_matrix, generic_matrices, linear_change, normalize_point, point_is_real, PlaneCurve, ProjPoint};
use crate::algebra::{isolate_real_roots, nullspace, resultant_with_degrees, GaussianRational, Poly, UniPoly};
use crate::error::{Error, Result};
use crate::io::ser_gaussian_vec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionPoint {
    #[serde(serialize_with = "ser_gaussian_vec")]
    pub point: ProjPoint,
    pub multiplicity: u32,
    pub real: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveIntersection {
    /// Intersection points with coordinates in Q(i).
    pub points: Vec<IntersectionPoint>,
    /// Total multiplicity of the points outside Q(i).
    pub unresolved: usize,
    /// Always `deg F · deg G`.
    pub total: usize,
    /// Real points counted with multiplicity; only for real inputs.
    pub real_total: Option<usize>,
}

/// Intersection of two plane curves given by forms without a common
/// component.
///
/// Coordinates are first moved to general position, then `y` is
/// eliminated by a resultant taken with formal degrees. Over a fibre that
/// holds a single intersection point the root multiplicity of the
/// resultant equals the intersection multiplicity; the change of
/// coordinates is rejected and redrawn whenever a Q(i)-rational fibre holds
/// more than one point.
pub fn intersect(f: &Poly, g: &Poly) -> Result<CurveIntersection> {
    let (df, dg) = (homogeneous_degree(f)?, homogeneous_degree(g)?);
    let real_input = f.is_real() && g.is_real();
    for a in generic_matrices(4).take(40) {
        let (fa, ga) = (linear_change(f, &a), linear_change(g, &a));
        // the projection centre (0:1:0) must lie on neither curve
        if fa.degree_in(1) != Some(df) || ga.degree_in(1) != Some(dg) {
            continue;
        }
        let r = resultant_with_degrees(&fa, &ga, 1, df, dg)?;
        if r.is_zero() {
            return Err(Error::pre("the curves share a component"));
        }
        let total = (df * dg) as usize;
        // r is a binary form in (x, z); t = 1 gives the affine part
        let affine = binary_to_uni(&r, 0, 2, total);
        let at_infinity = total - affine.degree().unwrap_or(0);
        let roots = affine.gaussian_roots();
        let mut points = Vec::new();
        let mut generic = true;
        let mut fibres: Vec<(GaussianRational, GaussianRational, u32)> =
            roots.roots.iter().map(|(x, m)| (x.clone(), GaussianRational::from_int(1), *m)).collect();
        if at_infinity > 0 {
            fibres.push((GaussianRational::from_int(1), GaussianRational::zero(), at_infinity as u32));
        }
        for (x0, z0, m) in fibres {
            let fy = fibre(&fa, &x0, &z0);
            let gy = fibre(&ga, &x0, &z0);
            let h = fy.gcd(&gy);
            if h.squarefree_part().degree() != Some(1) {
                generic = false;
                break;
            }
            let lin = h.squarefree_part();
            let y0 = -&(&lin.coeff(0) / &lin.coeff(1));
            let p = normalize_point(&apply_matrix(&a, &[x0, y0, z0]));
            points.push(IntersectionPoint { real: point_is_real(&p), point: p, multiplicity: m });
        }
        if !generic {
            continue;
        }
        points.sort_by(|p, q| p.point.cmp(&q.point));
        let real_total =
            real_input.then(|| isolate_real_roots(&affine).real_count() + at_infinity);
        return Ok(CurveIntersection { points, unresolved: roots.unresolved, total, real_total });
    }
    Err(Error::internal("no generic projection found"))
}

fn homogeneous_degree(f: &Poly) -> Result<u32> {
    if f.nvars() != 3 || f.is_zero() || !f.is_homogeneous() {
        return Err(Error::pre("expected a nonzero ternary form"));
    }
    Ok(f.total_degree().unwrap())
}

/// `f(x0, y, z0)` as a polynomial in `y`.
fn fibre(f: &Poly, x0: &GaussianRational, z0: &GaussianRational) -> UniPoly {
    f.substitute(0, x0).substitute(2, z0).to_univariate(1).expect("only y remains")
}

/// Dehomogenises a binary form in variables `(a, b)` of a ternary ring by
/// setting `b = 1`.
fn binary_to_uni(r: &Poly, a: usize, b: usize, degree: usize) -> UniPoly {
    let mut c = vec![GaussianRational::zero(); degree + 1];
    for (e, v) in r.terms() {
        debug_assert_eq!(e[b] as usize + e[a] as usize, degree);
        c[e[a] as usize] += v;
    }
    UniPoly::new(c)
}

/// Points where `line · X = 0` meets the curve, with multiplicities
/// summing to the degree.
pub fn line_intersections(c: &PlaneCurve, line: &ProjPoint) -> Result<CurveIntersection> {
    if line.iter().all(Zero::is_zero) {
        return Err(Error::pre("zero line"));
    }
    let basis = nullspace(&vec![line.to_vec()]);
    let (p0, p1) = (&basis[0], &basis[1]);
    // X(s, t) = s·p0 + t·p1
    let (s, t) = (Poly::var(3, 0), Poly::var(3, 1));
    let subs: Vec<Poly> = (0..3)
        .map(|k| &s.scale(&p0[k]) + &t.scale(&p1[k]))
        .collect();
    let restricted = c.form().compose(&subs);
    if restricted.is_zero() {
        return Err(Error::LineIsComponent);
    }
    let d = c.degree() as usize;
    let affine = binary_to_uni(&restricted, 0, 1, d);
    let at_p0 = d - affine.degree().unwrap_or(0);
    let roots = affine.gaussian_roots();
    let mut points: Vec<IntersectionPoint> = roots
        .roots
        .iter()
        .map(|(s0, m)| {
            let raw: ProjPoint = [0, 1, 2].map(|k| &(s0 * &p0[k]) + &p1[k]);
            let p = normalize_point(&raw);
            IntersectionPoint { real: point_is_real(&p), point: p, multiplicity: *m }
        })
        .collect();
    if at_p0 > 0 {
        let p = normalize_point(&[p0[0].clone(), p0[1].clone(), p0[2].clone()]);
        points.push(IntersectionPoint { real: point_is_real(&p), point: p, multiplicity: at_p0 as u32 });
    }
    points.sort_by(|p, q| p.point.cmp(&q.point));
    let real_input = c.form().is_real() && line.iter().all(GaussianRational::is_real);
    let real_total = real_input.then(|| isolate_real_roots(&affine).real_count() + at_p0);
    Ok(CurveIntersection { points, unresolved: roots.unresolved, total: d, real_total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{parse_form, point_from_ints};

    #[test]
    fn conic_and_line() {
        let c = PlaneCurve::parse("x^2 + y^2 - z^2").unwrap();
        let two = line_intersections(&c, &point_from_ints([0, 1, 0])).unwrap();
        let pts: Vec<_> = two.points.iter().map(|p| (p.point.clone(), p.multiplicity)).collect();
        assert_eq!(pts, vec![(point_from_ints([-1, 0, 1]), 1), (point_from_ints([1, 0, 1]), 1)]);
        let tangent = line_intersections(&c, &point_from_ints([1, 0, -1])).unwrap();
        assert_eq!(tangent.points.len(), 1);
        assert_eq!(tangent.points[0].multiplicity, 2);
    }

    #[test]
    fn cubic_meets_its_polar_at_infinity_with_multiplicity_three() {
        let f = parse_form("y^2*z - x^3 - x*z^2").unwrap();
        let polar = f.derivative(1);
        let r = intersect(&f, &polar).unwrap();
        let got: Vec<_> = r.points.iter().map(|p| (p.point.clone(), p.multiplicity)).collect();
        let g = |s: &str| s.parse::<GaussianRational>().unwrap();
        let want = vec![
            ([g("-i"), g("0"), g("1")], 1),
            ([g("0"), g("0"), g("1")], 1),
            ([g("0"), g("1"), g("0")], 3),
            ([g("i"), g("0"), g("1")], 1),
        ];
        let mut want = want;
        want.sort();
        assert_eq!(got, want);
        assert_eq!(r.total, 6);
        assert_eq!(r.real_total, Some(4));
    }

    #[test]
    fn common_component_is_an_error() {
        let f = parse_form("x*y").unwrap();
        let g = parse_form("x*z").unwrap();
        assert!(intersect(&f, &g).is_err());
    }
}
