use num_traits::Zero;
use serde::Serialize;

use super::{normalize_line, normalize_point, point_is_real, PlaneCurve, ProjPoint};
use crate::algebra::{resultant, GaussianRational, Poly, UniPoly};
use crate::error::{Error, Result};
use crate::gates::cusp_genus_contribution;
use crate::io::ser_gaussian_vec;

const NAMES: [&str; 3] = ["x", "y", "z"];

/// Highest cusp type reported; larger types are rejected.
pub const MAX_CUSP_TYPE: u32 = 5;

/// Series precision used when completing the square at a cusp.
const SERIES_ORDER: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SingularKind {
    Smooth,
    Node,
    Cusp { k: u32 },
    Other,
}

impl std::fmt::Display for SingularKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingularKind::Smooth => write!(f, "smooth"),
            SingularKind::Node => write!(f, "node"),
            SingularKind::Cusp { k } => write!(f, "cusp of type {k}"),
            SingularKind::Other => write!(f, "other"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentLine {
    #[serde(serialize_with = "ser_gaussian_vec")]
    pub line: ProjPoint,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPointReport {
    #[serde(serialize_with = "ser_gaussian_vec")]
    pub point: ProjPoint,
    pub multiplicity: u32,
    /// Lowest-order form in the affine chart, with the point moved to the
    /// origin.
    pub tangent_cone: String,
    pub tangent_lines: Vec<TangentLine>,
    /// Tangent lines (with multiplicity) not defined over Q(i).
    pub tangent_lines_unresolved: usize,
    pub kind: SingularKind,
    pub is_real: bool,
    /// Drop in geometric genus (delta invariant), when known.
    pub genus_drop: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularLocus {
    pub points: Vec<SingularPointReport>,
    /// True when every root of the eliminants was resolved, so no singular
    /// point can be missing from `points`.
    pub complete: bool,
    /// Distinct eliminant roots outside Q(i); they may carry singular points
    /// with irrational coordinates.
    pub unresolved: usize,
}

impl SingularLocus {
    pub fn geometric_genus(&self, c: &PlaneCurve) -> Option<i64> {
        if !self.complete {
            return None;
        }
        let drops: Option<i64> = self.points.iter().map(|p| p.genus_drop.map(i64::from)).sum();
        Some(c.arithmetic_genus() - drops?)
    }
}

fn partials(f: &Poly) -> [Poly; 3] {
    [f.derivative(0), f.derivative(1), f.derivative(2)]
}

/// Tangent line at a smooth point, as the normalised gradient.
pub fn tangent_at_smooth(c: &PlaneCurve, p: &ProjPoint) -> Result<ProjPoint> {
    if !c.contains(p) {
        return Err(Error::OffCurve);
    }
    let grad = partials(c.form()).map(|d| d.eval(p));
    if grad.iter().all(Zero::is_zero) {
        return Err(Error::SingularPoint);
    }
    Ok(normalize_line(&grad))
}

/// Common zero locus of the partial derivatives in one variable after
/// eliminating `y`.
fn eliminant(polys: &[Poly]) -> Result<UniPoly> {
    let mut acc = UniPoly::zero();
    let live: Vec<&Poly> = polys.iter().filter(|p| !p.is_zero()).collect();
    for i in 0..live.len() {
        for j in i + 1..live.len() {
            let (p, q) = (live[i], live[j]);
            let r = if p.degree_in(1) == Some(0) && q.degree_in(1) == Some(0) {
                p.to_univariate(0).unwrap().gcd(&q.to_univariate(0).unwrap())
            } else {
                resultant(p, q, 1)?.to_univariate(0).expect("y was eliminated")
            };
            if !r.is_zero() {
                acc = acc.gcd(&r);
            }
        }
    }
    if acc.is_zero() {
        return Err(Error::internal("partial derivatives share a component"));
    }
    Ok(acc)
}

fn fibre_gcd(polys: &[Poly], x0: &GaussianRational) -> UniPoly {
    polys
        .iter()
        .map(|p| p.substitute(0, x0).to_univariate(1).expect("only y remains"))
        .fold(UniPoly::zero(), |acc, h| acc.gcd(&h))
}

/// All singular points with coordinates in Q(i), classified.
///
/// Affine points are found by eliminating `y` from every pair among
/// `F, F_x, F_y, F_z` in the chart `z = 1` and solving the fibres over the
/// common roots; the line `z = 0` is handled as a binary problem.
pub fn singular_points(c: &PlaneCurve) -> Result<SingularLocus> {
    let f = c.form();
    let [fx, fy, fz] = partials(f);
    let all = [f.clone(), fx, fy, fz];
    let mut found: Vec<ProjPoint> = Vec::new();
    let mut unresolved = 0;
    if c.degree() >= 2 {
        // affine chart z = 1, polynomials in (x, y)
        let one = GaussianRational::from_int(1);
        let affine: Vec<Poly> = all.iter().map(|p| p.substitute(2, &one).with_nvars(2)).collect();
        let elim = eliminant(&affine)?;
        if elim.degree().unwrap_or(0) > 0 {
            let roots = elim.squarefree_part().gaussian_roots();
            unresolved += roots.unresolved;
            for (x0, _) in &roots.roots {
                let h = fibre_gcd(&affine, x0);
                if h.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let ys = h.squarefree_part().gaussian_roots();
                unresolved += ys.unresolved;
                for (y0, _) in ys.roots {
                    found.push([x0.clone(), y0, one.clone()]);
                }
            }
        }
        // line z = 0: points (x : 1 : 0) and (1 : 0 : 0)
        let zero = GaussianRational::zero();
        let at_inf: Vec<UniPoly> = all
            .iter()
            .map(|p| p.substitute(2, &zero).substitute(1, &one).to_univariate(0).expect("only x remains"))
            .collect();
        let h = at_inf.iter().fold(UniPoly::zero(), |acc, p| acc.gcd(p));
        if h.is_zero() {
            return Err(Error::internal("the line at infinity is singular"));
        }
        if h.degree().unwrap_or(0) > 0 {
            let xs = h.squarefree_part().gaussian_roots();
            unresolved += xs.unresolved;
            for (x0, _) in xs.roots {
                found.push([x0, one.clone(), zero.clone()]);
            }
        }
        let e1 = [one.clone(), zero.clone(), zero.clone()];
        if all.iter().all(|p| p.eval(&e1).is_zero()) {
            found.push(e1);
        }
    }
    let mut points = found
        .iter()
        .map(|p| classify_singularity(c, p))
        .collect::<Result<Vec<_>>>()?;
    points.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(SingularLocus { points, complete: unresolved == 0, unresolved })
}

/// Multiplicity, tangent cone and type of the curve at `p`.
///
/// Works in the chart where the last nonzero coordinate of `p` is 1, after
/// translating `p` to the origin.
pub fn classify_singularity(c: &PlaneCurve, p: &ProjPoint) -> Result<SingularPointReport> {
    let p = normalize_point(p);
    let chart = (0..3).rev().find(|&k| !p[k].is_zero()).unwrap();
    let [a, b] = match chart {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    };
    let (u, v) = (Poly::var(2, 0), Poly::var(2, 1));
    let mut subs = vec![Poly::zero(2); 3];
    subs[chart] = Poly::one(2);
    subs[a] = &u + &Poly::constant(2, p[a].clone());
    subs[b] = &v + &Poly::constant(2, p[b].clone());
    let local = c.form().compose(&subs);
    let m = local.min_total_degree().unwrap_or(0);
    if m == 0 {
        return Err(Error::OffCurve);
    }
    let cone = local.homogeneous_part(m);
    let (tangent_lines, tangent_lines_unresolved) = cone_lines(&cone, m, &p, chart, a, b);
    let kind = match m {
        1 => SingularKind::Smooth,
        2 => {
            let (al, be, ga) = (cone.coeff(&[2, 0, 0]), cone.coeff(&[1, 1, 0]), cone.coeff(&[0, 2, 0]));
            let four = GaussianRational::from_int(4);
            let disc = &(&be * &be) - &(&four * &(&al * &ga));
            if disc.is_zero() {
                SingularKind::Cusp { k: cusp_type(&local, &al, &be, &ga)? }
            } else {
                SingularKind::Node
            }
        }
        _ => SingularKind::Other,
    };
    let genus_drop = match kind {
        SingularKind::Smooth => Some(0),
        SingularKind::Node => Some(1),
        SingularKind::Cusp { k } => Some(cusp_genus_contribution(k)?),
        SingularKind::Other => None,
    };
    Ok(SingularPointReport {
        is_real: point_is_real(&p),
        point: p,
        multiplicity: m,
        tangent_cone: cone.display(&[NAMES[a], NAMES[b]]).to_string(),
        tangent_lines,
        tangent_lines_unresolved,
        kind,
        genus_drop,
    })
}

/// Splits the tangent cone into lines through `p`, as projective lines.
fn cone_lines(cone: &Poly, m: u32, p: &ProjPoint, chart: usize, a: usize, b: usize) -> (Vec<TangentLine>, usize) {
    let mut t = vec![GaussianRational::zero(); m as usize + 1];
    for (e, c) in cone.terms() {
        t[e[0] as usize] = c.clone();
    }
    // cone(u, 1); a drop in degree means the factor v
    let t = UniPoly::new(t);
    let roots = t.gaussian_roots();
    let mut local: Vec<(GaussianRational, GaussianRational, u32)> = roots
        .roots
        .iter()
        .map(|(u0, k)| (GaussianRational::from_int(1), -u0, *k))
        .collect();
    let v_power = m as usize - t.degree().unwrap_or(0);
    if v_power > 0 {
        local.push((GaussianRational::zero(), GaussianRational::from_int(1), v_power as u32));
    }
    let mut lines: Vec<TangentLine> = local
        .into_iter()
        .map(|(ca, cb, k)| {
            let mut l: ProjPoint = [GaussianRational::zero(), GaussianRational::zero(), GaussianRational::zero()];
            l[chart] = -&(&(&ca * &p[a]) + &(&cb * &p[b]));
            l[a] = ca;
            l[b] = cb;
            TangentLine { line: normalize_line(&l), multiplicity: k }
        })
        .collect();
    lines.sort_by(|x, y| x.line.cmp(&y.line));
    (lines, roots.unresolved)
}

/// Type `k` of a cusp with tangent cone `αu² + βuv + γv²` (a square).
///
/// The double tangent becomes the axis `Y = 0`; then `f_Y(X, φ(X)) = 0` is
/// solved for a power series `φ`, and `f(X, Y + φ(X))` has Newton polygon
/// with vertices `(0, 2)` and `(k, 0)`, i.e. local form `Y² = X^k`.
fn cusp_type(local: &Poly, al: &GaussianRational, be: &GaussianRational, ga: &GaussianRational) -> Result<u32> {
    let (xx, yy) = (Poly::var(2, 0), Poly::var(2, 1));
    // tangent L = u + (β/2α)v (or L = v when α = 0); new coords X, Y = L
    let (u, v, lead) = if !al.is_zero() {
        let r = be / &(al * &GaussianRational::from_int(2));
        (&yy - &xx.scale(&r), xx.clone(), al.clone())
    } else {
        (xx.clone(), yy.clone(), ga.clone())
    };
    let f2 = local.compose(&[u, v]);
    let fy = f2.derivative(1);
    let two_lead = &lead * &GaussianRational::from_int(2);
    let rest = &fy - &yy.scale(&two_lead);
    let scale = -(two_lead.inv().unwrap());
    let mut phi = vec![GaussianRational::zero(); SERIES_ORDER + 1];
    for _ in 0..=SERIES_ORDER {
        phi = eval_series(&rest, &phi).iter().map(|c| c * &scale).collect();
    }
    let s = eval_series(&f2, &phi);
    match s.iter().position(|c| !c.is_zero()) {
        Some(k) if k as u32 <= MAX_CUSP_TYPE => Ok(k as u32),
        Some(k) => Err(Error::Unsupported(format!("cusp of type {k} (types up to {MAX_CUSP_TYPE} are supported)"))),
        None => Err(Error::Unsupported(format!("cusp of type above {SERIES_ORDER}"))),
    }
}

/// `P(X, φ(X))` modulo `X^(N+1)` for a truncated series `φ`.
fn eval_series(p: &Poly, phi: &[GaussianRational]) -> Vec<GaussianRational> {
    let n = phi.len();
    let coeff_series = |q: &Poly| -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); n];
        for (e, c) in q.terms() {
            if (e[0] as usize) < n {
                out[e[0] as usize] += c;
            }
        }
        out
    };
    let cs = p.coeffs_in(1);
    let mut acc = vec![GaussianRational::zero(); n];
    for c in cs.iter().rev() {
        let mut next = coeff_series(c);
        for i in 0..n {
            if acc[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                let t = &acc[i] * &phi[j];
                next[i + j] += &t;
            }
        }
        acc = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::point_from_ints;

    fn kinds(form: &str) -> Vec<(ProjPoint, SingularKind)> {
        let c = PlaneCurve::parse(form).unwrap();
        let loc = singular_points(&c).unwrap();
        assert!(loc.complete);
        loc.points.into_iter().map(|p| (p.point, p.kind)).collect()
    }

    #[test]
    fn smooth_conic() {
        assert!(kinds("x^2 + y^2 - z^2").is_empty());
    }

    #[test]
    fn nodal_cubic() {
        let c = PlaneCurve::parse("y^2*z - x^3 - x^2*z").unwrap();
        let loc = singular_points(&c).unwrap();
        assert_eq!(loc.points.len(), 1);
        let p = &loc.points[0];
        assert_eq!(p.point, point_from_ints([0, 0, 1]));
        assert_eq!(p.kind, SingularKind::Node);
        assert_eq!(p.tangent_cone, "-x^2 + y^2");
        let lines: Vec<_> = p.tangent_lines.iter().map(|l| l.line.clone()).collect();
        assert_eq!(lines, vec![point_from_ints([1, -1, 0]), point_from_ints([1, 1, 0])]);
    }

    #[test]
    fn cusp_types() {
        let k = |form: &str| kinds(form)[0].1;
        assert_eq!(k("y^2*z - x^3"), SingularKind::Cusp { k: 3 });
        assert_eq!(k("y^2*z^3 - x^5"), SingularKind::Cusp { k: 5 });
        let at_origin = |form: &str| {
            let c = PlaneCurve::parse(form).unwrap();
            classify_singularity(&c, &point_from_ints([0, 0, 1])).unwrap().kind
        };
        assert_eq!(at_origin("y^2*z^2 - x^4 - x^3*z + y^4"), SingularKind::Cusp { k: 3 });
        assert_eq!(at_origin("y^2*z^2 - x^4 + y^4"), SingularKind::Cusp { k: 4 });
    }

    #[test]
    fn cusp_type_after_square_completion() {
        // (y - x^2)^2 = x^5 in the chart z = 1; the tangent cone alone suggests type 4
        let c = PlaneCurve::parse("y^2*z^3 - 2*x^2*y*z^2 + x^4*z - x^5").unwrap();
        let r = classify_singularity(&c, &point_from_ints([0, 0, 1])).unwrap();
        assert_eq!(r.kind, SingularKind::Cusp { k: 5 });
    }

    #[test]
    fn smooth_point_report() {
        let c = PlaneCurve::parse("x^2 + y^2 - z^2").unwrap();
        let r = classify_singularity(&c, &point_from_ints([1, 0, 1])).unwrap();
        assert_eq!(r.kind, SingularKind::Smooth);
        assert_eq!(r.multiplicity, 1);
        assert_eq!(classify_singularity(&c, &point_from_ints([0, 0, 1])), Err(Error::OffCurve));
    }

    #[test]
    fn tangent_lines() {
        let c = PlaneCurve::parse("x^2 + y^2 - z^2").unwrap();
        assert_eq!(tangent_at_smooth(&c, &point_from_ints([1, 0, 1])), Ok(point_from_ints([1, 0, -1])));
        assert_eq!(tangent_at_smooth(&c, &point_from_ints([1, 1, 1])), Err(Error::OffCurve));
        let cusp = PlaneCurve::parse("y^2*z - x^3").unwrap();
        assert_eq!(tangent_at_smooth(&cusp, &point_from_ints([0, 0, 1])), Err(Error::SingularPoint));
    }
}
