use serde::Serialize;

use super::{
    format_point, line_intersections, point_from_ints, point_is_real, singular_points, tangent_at_smooth,
    CurveIntersection, PlaneCurve, ProjPoint, SingularKind, SingularLocus,
};
use crate::algebra::GaussianRational;
use crate::error::Result;

pub const QUARTIC_FORM: &str = "x*z^3 - y*z^3 + x*y*z^2 + x^2*y^2";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticReport {
    pub curve: String,
    pub clauses: Vec<Clause>,
    pub all_passed: bool,
    pub singular_locus: Option<SingularLocus>,
    pub tangent_intersections: Option<CurveIntersection>,
}

/// The quartic `x z³ - y z³ + x y z² + x² y² = 0`.
pub fn paper_quartic() -> PlaneCurve {
    PlaneCurve::parse(QUARTIC_FORM).expect("fixed quartic is valid")
}

pub fn verify_paper_quartic() -> Result<QuarticReport> {
    Ok(verify_quartic(&paper_quartic()))
}

fn gp(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}

/// Checks the geometric claims about the quartic with two real
/// cusps: its singular points, the tangent at `(0:0:1)` and where that
/// tangent meets the curve again. Each claim is recomputed from `c`, so a
/// modified curve reports the clauses that no longer hold.
pub fn verify_quartic(c: &PlaneCurve) -> QuarticReport {
    let mut clauses = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        clauses.push(Clause { name: name.to_string(), passed, detail });
    };
    let cusp_points = [point_from_ints([1, 0, 0]), point_from_ints([0, 1, 0])];
    let origin = point_from_ints([0, 0, 1]);

    let locus = singular_points(c);
    match &locus {
        Ok(loc) => {
            for (label, p) in ["cusp at (1:0:0)", "cusp at (0:1:0)"].iter().zip(&cusp_points) {
                let hit = loc.points.iter().find(|r| &r.point == p);
                let (ok, detail) = match hit {
                    Some(r) => (
                        r.kind == SingularKind::Cusp { k: 3 } && r.is_real,
                        format!("{}, multiplicity {}, real {}", r.kind, r.multiplicity, r.is_real),
                    ),
                    None => (false, format!("{} is not singular", format_point(p))),
                };
                push(label, ok, detail);
            }
            let others: Vec<String> =
                loc.points.iter().filter(|r| !cusp_points.contains(&r.point)).map(|r| format_point(&r.point)).collect();
            push(
                "no further singular points",
                others.is_empty() && loc.complete,
                format!("other singular points: [{}], certificate complete: {}", others.join(", "), loc.complete),
            );
            match loc.geometric_genus(c) {
                Some(g) => push(
                    "geometric genus",
                    g == 1 && c.arithmetic_genus() == 3,
                    format!("arithmetic genus {} minus cusp contributions gives {g}", c.arithmetic_genus()),
                ),
                None => push("geometric genus", false, "singular locus not fully resolved".into()),
            }
        }
        Err(e) => {
            for name in ["cusp at (1:0:0)", "cusp at (0:1:0)", "no further singular points", "geometric genus"] {
                push(name, false, e.to_string());
            }
        }
    }

    let on_curve = c.contains(&origin);
    push("(0:0:1) lies on the curve", on_curve, format!("F(0,0,1) = {}", c.form().eval(&origin)));

    let tangent = tangent_at_smooth(c, &origin);
    let want_line: ProjPoint = point_from_ints([1, -1, 0]);
    match &tangent {
        Ok(l) => push("tangent at (0:0:1) is x = y", l == &want_line, format!("tangent line {}", format_point(l))),
        Err(e) => push("tangent at (0:0:1) is x = y", false, e.to_string()),
    }

    let meet = tangent.as_ref().ok().map(|l| line_intersections(c, l));
    let tangent_intersections = match meet {
        Some(Ok(r)) => {
            let got: Vec<(ProjPoint, u32)> = r.points.iter().map(|p| (p.point.clone(), p.multiplicity)).collect();
            let mut want = vec![
                (origin.clone(), 2),
                ([gp(0, 1), gp(0, 1), gp(1, 0)], 1),
                ([gp(0, -1), gp(0, -1), gp(1, 0)], 1),
            ];
            want.sort();
            let listed: Vec<String> = got.iter().map(|(p, m)| format!("{} x{m}", format_point(p))).collect();
            push(
                "tangent meets the curve at (0:0:1) twice and at (i:i:1), (-i:-i:1)",
                got == want && r.unresolved == 0,
                listed.join(", "),
            );
            let residual: Vec<&ProjPoint> =
                r.points.iter().filter(|p| p.point != origin).map(|p| &p.point).collect();
            let pair = residual.len() == 2
                && !point_is_real(residual[0])
                && residual[0].iter().zip(residual[1].iter()).all(|(a, b)| a.conj() == *b);
            push(
                "residual tangent points are complex conjugate",
                pair,
                format!("{} residual points", residual.len()),
            );
            Some(r)
        }
        Some(Err(e)) => {
            push("tangent meets the curve at (0:0:1) twice and at (i:i:1), (-i:-i:1)", false, e.to_string());
            push("residual tangent points are complex conjugate", false, e.to_string());
            None
        }
        None => {
            let why = "no tangent line at (0:0:1)".to_string();
            push("tangent meets the curve at (0:0:1) twice and at (i:i:1), (-i:-i:1)", false, why.clone());
            push("residual tangent points are complex conjugate", false, why);
            None
        }
    };

    let all_passed = clauses.iter().all(|c| c.passed);
    QuarticReport {
        curve: c.to_string(),
        clauses,
        all_passed,
        singular_locus: locus.ok(),
        tangent_intersections,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_clauses_hold() {
        let r = verify_paper_quartic().unwrap();
        for c in &r.clauses {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        assert!(r.all_passed);
    }

    #[test]
    fn mutated_quartic_is_caught() {
        let c = PlaneCurve::parse("x*z^3 - y*z^3 + x*y*z^2 + 2*x^2*y^2").unwrap();
        let r = verify_quartic(&c);
        assert!(!r.all_passed);
    }
}
