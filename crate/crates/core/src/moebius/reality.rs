use num_rational::BigRational;
use serde::Serialize;

use super::maps::{dehomogenize, AntiInvolution, MoebiusMap, RationalMap, RealStructure};
use crate::algebra::{isolate_real_roots, nullspace, resultant_with_degrees, GaussianRational, Matrix, Poly, RealRootIsolation, UniPoly};
use crate::error::{Error, Result};
use crate::io::{ser_gaussian, ser_gaussian_vec};

/// `f̄ = τ ∘ f ∘ σ` for the standard conjugations: conjugate every
/// coefficient.
pub fn conjugate_map(f: &RationalMap) -> RationalMap {
    RationalMap::new(f.numerator().conj(), f.denominator().conj(), Some(f.degree())).expect("conjugation preserves coprimality")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactCriticalPoint {
    #[serde(serialize_with = "ser_gaussian")]
    pub point: GaussianRational,
    pub multiplicity: u32,
    pub real: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalPoints {
    pub degree: usize,
    /// `W(z, 1)` for the homogeneous Wronskian `P_s Q_t - P_t Q_s`, ascending.
    #[serde(serialize_with = "ser_unipoly")]
    pub wronskian: UniPoly,
    /// Certified real roots of `W(z, 1)`.
    pub finite_real: RealRootIsolation,
    /// Finite critical points with coordinates in Q(i).
    pub exact: Vec<ExactCriticalPoint>,
    /// Finite critical points (with multiplicity) outside Q(i).
    pub unresolved: usize,
    pub infinity_multiplicity: usize,
    pub real_count: usize,
    pub nonreal_count: usize,
    pub total: usize,
}

impl CriticalPoints {
    pub fn has_real(&self) -> bool {
        self.real_count > 0
    }
}

fn ser_unipoly<S: serde::Serializer>(p: &UniPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_gaussian_vec(p.coeffs(), s)
}

/// Roots of the homogeneous Wronskian, a binary form of degree `2d - 2`.
///
/// Infinity is a real point of the source, so its multiplicity counts
/// towards `real_count`.
pub fn critical_points(f: &RationalMap) -> Result<CriticalPoints> {
    let d = f.degree();
    if d < 2 {
        return Err(Error::DegenerateMap);
    }
    let (p, q) = (f.hom_numerator(), f.hom_denominator());
    let w = &(&p.derivative(0) * &q.derivative(1)) - &(&p.derivative(1) * &q.derivative(0));
    if w.is_zero() {
        return Err(Error::DegenerateMap);
    }
    let n = 2 * d - 2;
    let affine = dehomogenize(&w, n);
    let finite = affine.degree().unwrap();
    let infinity_multiplicity = n - finite;
    let finite_real = isolate_real_roots(&affine);
    let roots = affine.gaussian_roots();
    let exact = roots
        .roots
        .iter()
        .map(|(r, m)| ExactCriticalPoint { point: r.clone(), multiplicity: *m, real: r.is_real() })
        .collect();
    let real_count = finite_real.real_count() + infinity_multiplicity;
    Ok(CriticalPoints {
        degree: d,
        wronskian: affine,
        finite_real,
        exact,
        unresolved: roots.unresolved,
        infinity_multiplicity,
        real_count,
        nonreal_count: n - real_count,
        total: n,
    })
}

/// Outcome of the linear realification system alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Realification {
    pub kernel_dim: usize,
    pub witness: Option<MoebiusMap>,
    pub diagnostic: Option<String>,
}

/// Coefficient matrix of `(aP + bQ)Q̄ - (cP + eQ)P̄` in the unknowns
/// `(a, b, c, e)`; one row per power of `z`, `2d + 1` rows.
pub fn realification_matrix(f: &RationalMap) -> Matrix {
    let (p, q) = (f.numerator(), f.denominator());
    let (pb, qb) = (p.conj(), q.conj());
    let cols = [p * &qb, q * &qb, -&(p * &pb), -&(q * &pb)];
    let rows = 2 * f.degree() + 1;
    (0..rows).map(|k| cols.iter().map(|c| c.coeff(k)).collect()).collect()
}

/// Solves `f̄ = φ ∘ f` for a Moebius map `φ` by exact linear algebra.
pub fn solve_realification(f: &RationalMap) -> Result<Realification> {
    if f.degree() == 0 {
        return Err(Error::pre("constant map"));
    }
    let kernel = nullspace(&realification_matrix(f));
    let kernel_dim = kernel.len();
    if kernel.is_empty() {
        return Ok(Realification { kernel_dim, witness: None, diagnostic: None });
    }
    let mut candidates: Vec<Vec<GaussianRational>> = kernel.clone();
    for i in 0..kernel.len() {
        for j in i + 1..kernel.len() {
            candidates.push(kernel[i].iter().zip(&kernel[j]).map(|(x, y)| x + y).collect());
        }
    }
    let witness = candidates
        .into_iter()
        .filter_map(|v| {
            let [a, b, c, e]: [GaussianRational; 4] = v.try_into().ok()?;
            MoebiusMap::new(a, b, c, e).ok()
        })
        .min();
    let diagnostic = witness.is_none().then(|| "degenerate pencil".to_string());
    Ok(Realification { kernel_dim, witness, diagnostic })
}

/// `(aP + bQ)Q̄ - (cP + eQ)P̄`, which vanishes identically iff `f̄ = φ ∘ f`.
pub fn realification_residual(f: &RationalMap, phi: &MoebiusMap) -> UniPoly {
    let [[a, b], [c, e]] = phi.matrix();
    let (p, q) = (f.numerator(), f.denominator());
    let num = &p.scale(a) + &q.scale(b);
    let den = &p.scale(c) + &q.scale(e);
    &(&num * &q.conj()) - &(&den * &p.conj())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageBidegree {
    pub delta: usize,
    pub partial: usize,
    /// Reduced equation of the image of `(f, f̄)` in the variables `(u, v)`.
    #[serde(serialize_with = "ser_implicit")]
    pub implicit: Poly,
}

fn ser_implicit<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.display(&["u", "v"]).to_string())
}

/// Bidegree of the image of `z ↦ (f(z), f̄(z))` in P¹×P¹.
///
/// `Res_z(P - uQ, P̄ - vQ̄)`, taken with formal degree `d` so that a shared
/// root at infinity is not lost, equals `c·D^∂` for the irreducible image
/// equation `D` of bidegree `(δ, δ)`. `∂` is recovered as the largest
/// exponent for which an exact root exists.
pub fn image_bidegree(f: &RationalMap) -> Result<ImageBidegree> {
    let d = f.degree();
    if d == 0 {
        return Err(Error::pre("constant map"));
    }
    let (u, v) = (Poly::var(3, 0), Poly::var(3, 1));
    let lift = |p: &UniPoly| Poly::from_univariate(3, 2, p);
    let (p, q) = (lift(f.numerator()), lift(f.denominator()));
    let (pb, qb) = (p.conj(), q.conj());
    let first = &p - &(&u * &q);
    let second = &pb - &(&v * &qb);
    let r = resultant_with_degrees(&first, &second, 2, d as u32, d as u32)?;
    if r.is_zero() {
        return Err(Error::NotCoprime);
    }
    let r = r.monic().with_nvars(2);
    for k in (1..=d).rev().filter(|k| d.is_multiple_of(*k)) {
        let Some(root) = r.perfect_root(k as u32) else { continue };
        let delta = d / k;
        let (du, dv) = (root.degree_in(0).unwrap_or(0) as usize, root.degree_in(1).unwrap_or(0) as usize);
        if du != delta || dv != delta {
            return Err(Error::internal(format!("image equation has bidegree ({du}, {dv}), expected ({delta}, {delta})")));
        }
        return Ok(ImageBidegree { delta, partial: k, implicit: root });
    }
    unreachable!("every polynomial is its own first power")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealityVerdict {
    pub realizable: bool,
    pub witness: Option<MoebiusMap>,
    pub structure: Option<RealStructure>,
    /// `λ` with `m·conj(m) = λ·id` for the anti-involution `conj ∘ φ`.
    #[serde(serialize_with = "ser_opt_rational")]
    pub lambda: Option<BigRational>,
    pub delta: usize,
    pub partial: usize,
    pub kernel_dim: usize,
    pub diagnostic: Option<String>,
}

fn ser_opt_rational<S: serde::Serializer>(x: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Combines the linear system with the image bidegree; the two routes
/// must agree (`realizable ⟺ δ = 1`), otherwise an internal error is
/// reported.
pub fn check_reality(f: &RationalMap) -> Result<RealityVerdict> {
    let lin = solve_realification(f)?;
    let image = image_bidegree(f)?;
    let realizable = lin.witness.is_some();
    if realizable != (image.delta == 1) {
        return Err(Error::internal(format!(
            "linear system says realizable={realizable} but the image has bidegree ({0}, {0})",
            image.delta
        )));
    }
    let (structure, lambda) = match &lin.witness {
        Some(phi) => {
            if !realification_residual(f, phi).is_zero() {
                return Err(Error::internal("witness leaves a nonzero residual"));
            }
            let a = AntiInvolution::from_moebius(phi).map_err(|_| Error::internal("witness does not induce an involution"))?;
            (Some(a.structure()), Some(a.lambda().clone()))
        }
        None => (None, None),
    };
    Ok(RealityVerdict {
        realizable,
        witness: lin.witness,
        structure,
        lambda,
        delta: image.delta,
        partial: image.partial,
        kernel_dim: lin.kernel_dim,
        diagnostic: lin.diagnostic,
    })
}

/// Standard when the fixed set is a circle (`λ > 0`), pointless otherwise.
pub fn classify_real_structure(m: [[GaussianRational; 2]; 2]) -> Result<RealStructure> {
    Ok(AntiInvolution::new(m)?.structure())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    fn poly(c: &[&str]) -> UniPoly {
        UniPoly::new(c.iter().map(|s| g(s)).collect())
    }

    fn cubic_plus_iz() -> RationalMap {
        RationalMap::polynomial(poly(&["0", "i", "0", "1"])).unwrap()
    }

    fn scrambled_cubic() -> (RationalMap, MoebiusMap) {
        let g3 = RationalMap::polynomial(UniPoly::from_ints(&[0, -3, 0, 1])).unwrap();
        let psi = MoebiusMap::from_ints((1, 0), (0, -1), (1, 0), (0, 1)).unwrap();
        (g3.postcompose(&psi), psi)
    }

    #[test]
    fn conjugation_examples() {
        let sq = RationalMap::polynomial(UniPoly::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(conjugate_map(&sq), sq);
        let iz = RationalMap::polynomial(poly(&["0", "i"])).unwrap();
        assert_eq!(conjugate_map(&iz).numerator(), &poly(&["0", "-i"]));
        assert_eq!(conjugate_map(&cubic_plus_iz()).numerator(), &poly(&["0", "-i", "0", "1"]));
    }

    #[test]
    fn critical_points_of_square() {
        let c = critical_points(&RationalMap::polynomial(UniPoly::from_ints(&[0, 0, 1])).unwrap()).unwrap();
        assert_eq!(c.total, 2);
        assert_eq!(c.infinity_multiplicity, 1);
        assert_eq!(c.finite_real.multiplicities, vec![1]);
        assert_eq!(c.real_count, 2);
    }

    #[test]
    fn critical_points_of_chebyshev_like_cubic() {
        let c = critical_points(&RationalMap::polynomial(UniPoly::from_ints(&[0, -3, 0, 1])).unwrap()).unwrap();
        assert_eq!(c.total, 4);
        assert_eq!(c.infinity_multiplicity, 2);
        let pts: Vec<_> = c.exact.iter().map(|e| (e.point.clone(), e.multiplicity)).collect();
        assert_eq!(pts, vec![(g("-1"), 1), (g("1"), 1)]);
        assert_eq!(c.real_count, 4);
    }

    #[test]
    fn critical_points_of_cubic_plus_iz() {
        let c = critical_points(&cubic_plus_iz()).unwrap();
        assert!(c.finite_real.intervals.is_empty());
        assert_eq!(c.infinity_multiplicity, 2);
        // 3z^2 + i has no root in Q(i)
        assert_eq!(c.unresolved, 2);
    }

    #[test]
    fn degree_one_is_degenerate() {
        let m = RationalMap::polynomial(UniPoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(critical_points(&m), Err(Error::DegenerateMap));
    }

    #[test]
    fn real_map_has_identity_witness() {
        let f = RationalMap::from_coeffs(&[g("1"), g("0"), g("-2")], &[g("3"), g("1")]).unwrap();
        let v = check_reality(&f).unwrap();
        assert!(v.realizable);
        assert_eq!(v.witness, Some(MoebiusMap::identity()));
        assert_eq!(v.structure, Some(RealStructure::Standard));
        assert_eq!((v.delta, v.partial), (1, 2));
    }

    #[test]
    fn scrambled_real_map_is_realizable() {
        let (f, psi) = scrambled_cubic();
        let v = check_reality(&f).unwrap();
        let expected = psi.conj().compose(&psi.inverse());
        assert_eq!(v.witness.as_ref(), Some(&expected));
        assert!(realification_residual(&f, &expected).is_zero());
        assert_eq!(v.structure, Some(RealStructure::Standard));
        assert_eq!((v.delta, v.partial), (1, 3));
    }

    #[test]
    fn cubic_plus_iz_is_not_realizable() {
        let v = check_reality(&cubic_plus_iz()).unwrap();
        assert!(!v.realizable);
        assert_eq!((v.delta, v.partial), (3, 1));
        assert_eq!(v.kernel_dim, 0);
    }

    #[test]
    fn square_image_is_diagonal() {
        let f = RationalMap::polynomial(UniPoly::from_ints(&[0, 0, 1])).unwrap();
        let im = image_bidegree(&f).unwrap();
        assert_eq!((im.delta, im.partial), (1, 2));
        let (u, v) = (Poly::var(2, 0), Poly::var(2, 1));
        assert_eq!(im.implicit, &u - &v);
    }

    #[test]
    fn real_structure_examples() {
        let (o, z) = (GaussianRational::from_int(1), GaussianRational::zero());
        assert_eq!(classify_real_structure([[o.clone(), z.clone()], [z.clone(), o.clone()]]), Ok(RealStructure::Standard));
        assert_eq!(classify_real_structure([[z.clone(), -&o], [o.clone(), z.clone()]]), Ok(RealStructure::Pointless));
        assert_eq!(classify_real_structure([[g("i"), z.clone()], [z.clone(), o.clone()]]), Ok(RealStructure::Standard));
        assert_eq!(classify_real_structure([[o.clone(), o.clone()], [z, o]]), Err(Error::NotInvolution));
    }
}
