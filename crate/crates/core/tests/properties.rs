use num_traits::Zero;
use proptest::prelude::*;

use reality_lab::algebra::{isolate_real_roots, resultant, Exponent};
use reality_lab::elliptic::{
    collinearity_scan, hyperelliptic_ovals, paper_example, project_from, EllipticPoint, QuadRational, ScanConfig, WeierstrassCurve,
};
use reality_lab::gates::{catalan_count, evaluate_gates, lattice_pushforward_check};
use reality_lab::moebius::{check_reality, conjugate_map, critical_points, image_bidegree, MoebiusMap, RationalMap};
use reality_lab::plane::{classify_singularity, line_intersections, normalize_point, parse_form, singular_points, PlaneCurve, ProjPoint, SingularKind};
use reality_lab::{BigRational, GaussianRational, Poly, UniPoly};

fn gi(re: i64, im: i64) -> GaussianRational {
    GaussianRational::from_ints(re, im)
}

fn arb_gaussian(r: i64) -> impl Strategy<Value = GaussianRational> {
    (-r..=r, -r..=r).prop_map(|(a, b)| gi(a, b))
}

fn arb_poly3() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), arb_gaussian(3)), 1..6)
        .prop_map(|terms| Poly::from_terms(3, terms.into_iter().map(|((a, b, c), k)| ([a, b, c] as Exponent, k))))
}

/// Product of `z - rᵢ` for Gaussian integer roots, as a polynomial in the
/// last of three variables.
fn linear_product(roots: &[(i64, i64)], scale: &GaussianRational) -> Poly {
    let z = Poly::var(3, 2);
    roots.iter().fold(Poly::constant(3, scale.clone()), |acc, &(a, b)| &acc * &(&z - &Poly::constant(3, gi(a, b))))
}

fn arb_map(complex: bool) -> impl Strategy<Value = RationalMap> {
    let r: i64 = if complex { 2 } else { 0 };
    (2usize..=3, prop::collection::vec((-3i64..=3, -r..=r), 8), prop::collection::vec((-3i64..=3, -r..=r), 8)).prop_filter_map(
        "not a map of the drawn degree",
        |(d, p, qc)| {
            let p = UniPoly::new(p[..=d].iter().map(|&(a, b)| gi(a, b)).collect());
            let qq = UniPoly::new(qc[..=d].iter().map(|&(a, b)| gi(a, b)).collect());
            RationalMap::new(p, qq, None).ok().filter(|f| f.degree() == d)
        },
    )
}

fn arb_moebius(complex: bool) -> impl Strategy<Value = MoebiusMap> {
    let r: i64 = if complex { 2 } else { 0 };
    prop::array::uniform4((-3i64..=3, -r..=r))
        .prop_filter_map("singular matrix", |[a, b, c, e]| MoebiusMap::new(gi(a.0, a.1), gi(b.0, b.1), gi(c.0, c.1), gi(e.0, e.1)).ok())
}

// ---- exact algebra ----

proptest! {
    #[test]
    fn conj_is_a_ring_automorphism(p in arb_poly3(), r in arb_poly3()) {
        prop_assert_eq!((&p * &r).conj(), &p.conj() * &r.conj());
        prop_assert_eq!((&p + &r).conj(), &p.conj() + &r.conj());
        prop_assert_eq!(p.conj().conj(), p);
    }

    #[test]
    fn resultant_vanishes_iff_common_root(
        a in prop::collection::vec((-2i64..=2, -2i64..=2), 1..4),
        b in prop::collection::vec((-2i64..=2, -2i64..=2), 1..4),
        s in arb_gaussian(3).prop_filter("nonzero", |s| !s.is_zero()),
    ) {
        let res = resultant(&linear_product(&a, &s), &linear_product(&b, &GaussianRational::from_int(1)), 2).unwrap();
        // every root lies on the grid, so the search is exhaustive
        let p = linear_product(&a, &s);
        let r = linear_product(&b, &GaussianRational::from_int(1));
        let mut common = false;
        for x in -2..=2 {
            for y in -2..=2 {
                let pt = [gi(0, 0), gi(0, 0), gi(x, y)];
                common |= p.eval(&pt).is_zero() && r.eval(&pt).is_zero();
            }
        }
        prop_assert_eq!(res.is_zero(), common);
    }

    #[test]
    fn isolation_finds_each_rational_root(roots in prop::collection::btree_set((-60i64..=60, 1i64..=7), 1..7)) {
        let mut rs: Vec<BigRational> = roots.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
        rs.sort();
        rs.dedup();
        let p = rs.iter().fold(UniPoly::one(), |acc, r| &acc * &UniPoly::linear_root(&GaussianRational::real(r.clone())));
        let iso = isolate_real_roots(&p);
        prop_assert_eq!(iso.intervals.len(), rs.len());
        for (iv, r) in iso.intervals.iter().zip(&rs) {
            prop_assert!(iv.contains(r));
            prop_assert_eq!(rs.iter().filter(|s| iv.contains(s)).count(), 1);
        }
    }
}

// ---- maps ----

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugation_is_an_involution(f in arb_map(true)) {
        prop_assert_eq!(conjugate_map(&conjugate_map(&f)), f);
    }

    #[test]
    fn critical_points_count_2d_minus_2(f in arb_map(true)) {
        let c = critical_points(&f).unwrap();
        let d = f.degree();
        prop_assert_eq!(c.total, 2 * d - 2);
        prop_assert_eq!(c.real_count + c.nonreal_count, c.total);
        let exact: usize = c.exact.iter().map(|e| e.multiplicity as usize).sum();
        prop_assert_eq!(exact + c.unresolved + c.infinity_multiplicity, c.total);
    }

    #[test]
    fn image_bidegree_is_balanced(f in arb_map(true)) {
        let img = image_bidegree(&f).unwrap();
        prop_assert_eq!(img.delta * img.partial, f.degree());
        prop_assert_eq!(img.implicit.degree_in(0), img.implicit.degree_in(1));
        prop_assert_eq!(img.implicit.degree_in(0), Some(img.delta as u32));
    }

    #[test]
    fn verdict_survives_source_and_target_changes(f in arb_map(true), s in arb_moebius(false), t in arb_moebius(true)) {
        let base = check_reality(&f).unwrap().realizable;
        prop_assert_eq!(check_reality(&f.precompose(&s)).unwrap().realizable, base);
        prop_assert_eq!(check_reality(&f.postcompose(&t)).unwrap().realizable, base);
    }

    #[test]
    fn scrambled_real_maps_are_realizable(f in arb_map(false), t in arb_moebius(true)) {
        let v = check_reality(&f.postcompose(&t)).unwrap();
        prop_assert!(v.realizable);
        prop_assert_eq!(v.delta, 1);
    }
}

// ---- gates ----

proptest! {
    #[test]
    fn gates_are_monotone_in_genus(d in 1u32..30, g in 0u32..100) {
        let a = evaluate_gates(d, g).unwrap();
        let b = evaluate_gates(d, g + 1).unwrap();
        prop_assert!(!a.sqrt_gate || b.sqrt_gate);
        prop_assert!(!a.main_gate || b.main_gate);
        prop_assert_eq!(a.sqrt_gate, 3 * g as i64 > (d * d) as i64 - 4 * d as i64 + 3);
        prop_assert_eq!(a.main_gate, g as i64 >= (d as i64 - 1).pow(2));
    }

    #[test]
    fn lattice_descent_by_brute_force(mu in arb_gaussian(6).prop_filter("nonzero", |m| !m.is_zero())) {
        let r = lattice_pushforward_check(&mu).unwrap();
        // ξ ↦ μ·conj(ξ/μ) must send every lattice point to a lattice point
        let brute = (-2..=2).all(|m| (-2..=2).all(|n| {
            let xi = gi(m, n);
            (&mu * &(&xi / &mu).conj()).is_gaussian_integer()
        }));
        prop_assert_eq!(r.descends, brute);
    }
}

#[test]
fn catalan_matches_recurrence() {
    let mut cat = vec![num_bigint::BigInt::from(1)];
    for n in 0..40 {
        let next = (0..=n).map(|i| &cat[i] * &cat[n - i]).sum();
        cat.push(next);
    }
    for d in 1..=40u32 {
        assert_eq!(catalan_count(d).unwrap(), cat[d as usize - 1]);
    }
}

// ---- elliptic ----

fn quad_curve() -> (WeierstrassCurve<QuadRational>, EllipticPoint<QuadRational>, EllipticPoint<QuadRational>) {
    let k = |a: i64, b: i64| QuadRational::from_ints(a, b, 10).unwrap();
    let c = WeierstrassCurve::new(k(1, 0), k(0, 0)).unwrap();
    let p = c.point(k(2, 0), k(0, 1)).unwrap();
    let t = c.point(k(0, 0), k(0, 0)).unwrap();
    (c, p, t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_law_over_a_quadratic_field(m in -4i64..=4, n in -4i64..=4, k in -4i64..=4, tm: bool, tn: bool) {
        let (c, p, t) = quad_curve();
        let pt = |s: i64, tor: bool| {
            let a = c.mul(&p, s).unwrap();
            if tor { c.add(&a, &t).unwrap() } else { a }
        };
        let (a, b, d) = (pt(m, tm), pt(n, tn), pt(k, false));
        let ab_d = c.add(&c.add(&a, &b).unwrap(), &d).unwrap();
        let a_bd = c.add(&a, &c.add(&b, &d).unwrap()).unwrap();
        prop_assert_eq!(&ab_d, &a_bd);
        prop_assert_eq!(c.add(&a, &b).unwrap(), c.add(&b, &a).unwrap());
        prop_assert_eq!(c.add(&a, &c.identity()).unwrap(), a.clone());
        prop_assert!(c.add(&a, &c.neg(&a)).unwrap().is_infinity());
        prop_assert_eq!(c.mul(&p, m + n).unwrap(), c.add(&c.mul(&p, m).unwrap(), &c.mul(&p, n).unwrap()).unwrap());
    }

    #[test]
    fn ovals_of_split_hyperelliptic_curves(g in 0usize..=10, seed in prop::collection::btree_set((-500i64..=500, 1i64..=9), 22..40)) {
        let mut roots: Vec<BigRational> = seed.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
        roots.sort();
        roots.dedup();
        prop_assume!(roots.len() >= 2 * g + 2);
        roots.truncate(2 * g + 2);
        prop_assert_eq!(hyperelliptic_ovals(&roots), Ok(g + 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn projection_tangents_pass_through_the_centre(a in -3i64..=3, b in 1i64..=3, centre in prop::array::uniform3(-4i64..=4)) {
        prop_assume!(centre != [0, 0, 0]);
        let Ok(c) = WeierstrassCurve::from_ints(a, b) else { return Ok(()) };
        let ctr: ProjPoint = centre.map(GaussianRational::from_int);
        let p = project_from(&c, &ctr).unwrap();
        let form = c.cubic_form();
        let resolved: usize = p.points.iter().map(|x| x.multiplicity as usize).sum();
        prop_assert_eq!(resolved + p.unresolved, p.total);
        prop_assert_eq!(p.total, if p.center_on_curve { 4 } else { 6 });
        for x in &p.points {
            let through: GaussianRational = (0..3).map(|k| form.derivative(k).eval(&x.point) * &ctr[k]).sum();
            prop_assert!(through.is_zero());
            prop_assert!(form.eval(&x.point).is_zero());
        }
    }
}

#[test]
fn refining_the_scan_keeps_the_sign_pattern() {
    let (c, pts) = paper_example(40).unwrap();
    let base = ScanConfig { precision: 40, ..ScanConfig::default() };
    let mut prev = None;
    for n in [51, 101, 201, 401] {
        let r = collinearity_scan(&c, &pts, &ScanConfig { samples: n, ..base.clone() }).unwrap();
        let signs: Vec<bool> = r.samples.iter().map(|s| s.det.is_negative()).collect();
        assert_eq!(r.sign_changes, 0);
        if let Some(p) = prev.replace(signs.clone()) {
            // the coarse grid is every other point of the fine one
            let p: Vec<bool> = p;
            assert!(p.iter().enumerate().all(|(k, s)| signs[2 * k] == *s));
        }
    }
}

// ---- plane curves ----

/// `F(A·X)` for an integer matrix `A`.
fn transform(f: &Poly, a: &[[i64; 3]; 3]) -> Poly {
    let lin: Vec<Poly> = (0..3)
        .map(|i| (0..3).fold(Poly::zero(3), |acc, j| &acc + &Poly::var(3, j).scale(&GaussianRational::from_int(a[i][j]))))
        .collect();
    f.compose(&lin)
}

fn det3(a: &[[i64; 3]; 3]) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// `A⁻¹·p` by Cramer's rule, up to the scalar `det A`.
fn preimage(a: &[[i64; 3]; 3], p: [i64; 3]) -> ProjPoint {
    let col = |j: usize| {
        let mut m = *a;
        for i in 0..3 {
            m[i][j] = p[i];
        }
        det3(&m)
    };
    normalize_point(&[0, 1, 2].map(|j| GaussianRational::from_int(col(j))))
}

fn arb_matrix() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(-2i64..=2)).prop_filter("singular", |a| det3(a) != 0)
}

fn parse(s: &str) -> Poly {
    PlaneCurve::parse(s).unwrap().form().clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn line_multiplicities_sum_to_the_degree(l in prop::array::uniform3(-3i64..=3)) {
        prop_assume!(l != [0, 0, 0]);
        let c = PlaneCurve::parse("x*z^3 - y*z^3 + x*y*z^2 + x^2*y^2").unwrap();
        let hits = line_intersections(&c, &l.map(GaussianRational::from_int)).unwrap();
        let m: usize = hits.points.iter().map(|p| p.multiplicity as usize).sum();
        prop_assert_eq!(m + hits.unresolved, 4);
        prop_assert_eq!(hits.total, 4);
    }

    #[test]
    fn transformed_singularities_keep_their_type(a in arb_matrix(), which in 0usize..3) {
        let (form, kind) = [
            ("y^2*z - x^3", SingularKind::Cusp { k: 3 }),
            ("y^2*z^3 - x^5", SingularKind::Cusp { k: 5 }),
            ("y^2*z - x^3 - x^2*z", SingularKind::Node),
        ][which];
        let c = PlaneCurve::new(transform(&parse(form), &a)).unwrap();
        let p = preimage(&a, [0, 0, 1]);
        prop_assert_eq!(classify_singularity(&c, &p).unwrap().kind, kind);
        let locus = singular_points(&c).unwrap();
        prop_assert!(locus.complete);
        // y²z³ = x⁵ is also singular at the image of (0:1:0)
        let expected = if which == 1 { 2 } else { 1 };
        prop_assert_eq!(locus.points.len(), expected);
        let at_p = locus.points.iter().find(|s| s.point == p);
        prop_assert_eq!(at_p.map(|s| &s.kind), Some(&kind));
    }

    #[test]
    fn singular_points_commute_with_conjugation(re in arb_matrix(), im in prop::array::uniform3(prop::array::uniform3(-1i64..=1))) {
        // F(A·X) for A = re + i·im, with a cusp at A⁻¹·(0:0:1)
        let lin: Vec<Poly> = (0..3)
            .map(|r| (0..3).fold(Poly::zero(3), |acc, j| &acc + &Poly::var(3, j).scale(&gi(re[r][j], im[r][j]))))
            .collect();
        let f = parse("y^2*z - x^3").compose(&lin);
        let Ok(c) = PlaneCurve::new(f) else { return Ok(()) };
        let mut a: Vec<ProjPoint> = singular_points(&c).unwrap().points.into_iter().map(|p| p.point.map(|x| x.conj())).collect();
        let mut b: Vec<ProjPoint> = singular_points(&c.conj()).unwrap().points.into_iter().map(|p| p.point).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a.len(), 1);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn real_curves_have_conjugate_singular_pairs(coef in prop::array::uniform3(-2i64..=2), cross in -2i64..=2) {
        // (x² + z²)² + y²·Q is singular at (±i:0:1)
        let qf = format!("{}*x^2 + {}*y^2 + {}*z^2 + {}*x*z", coef[0], coef[1], coef[2], cross);
        let form = |s: &str| parse_form(s).unwrap();
        let f = &form("x^4 + 2*x^2*z^2 + z^4") + &(&form("y^2") * &form(&qf));
        let Ok(c) = PlaneCurve::new(f) else { return Ok(()) };
        let locus = singular_points(&c).unwrap();
        prop_assume!(locus.complete);
        let pts: Vec<ProjPoint> = locus.points.iter().map(|p| p.point.clone()).collect();
        for p in &pts {
            prop_assert!(pts.contains(&p.clone().map(|x| x.conj())));
        }
        let i_pt = [gi(0, 1), gi(0, 0), gi(1, 0)];
        prop_assert!(pts.contains(&i_pt));
    }
}

#[test]
fn conjugate_singular_pair_instance() {
    let c = PlaneCurve::parse("x^4 + 2*x^2*z^2 + z^4 + x*y^2*z").unwrap();
    let locus = singular_points(&c).unwrap();
    assert!(locus.complete);
    let mut pts: Vec<ProjPoint> = locus.points.iter().filter(|p| !p.is_real).map(|p| p.point.clone()).collect();
    pts.sort();
    let mut want = vec![[gi(0, 1), gi(0, 0), gi(1, 0)], [gi(0, -1), gi(0, 0), gi(1, 0)]];
    want.sort();
    assert_eq!(pts, want);
}
