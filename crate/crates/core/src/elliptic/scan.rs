use std::io::Write;

use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use super::curve::{EllipticPoint, WeierstrassCurve};
use super::field::{Field, HpFloat};
use crate::algebra::{isolate_real_roots, roots::refine, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub samples: usize,
    /// Parameter window inside `(-π/2, π/2)`.
    pub window: (BigRational, BigRational),
    /// Decimal digits.
    pub precision: usize,
    /// Determinants at most this large in absolute value count as zero.
    pub tolerance: BigRational,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            samples: 10_000,
            window: (BigRational::new((-157).into(), 100.into()), BigRational::new(157.into(), 100.into())),
            precision: 50,
            tolerance: BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(20)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanSample {
    pub t: HpFloat,
    pub x: HpFloat,
    pub y: HpFloat,
    pub det: HpFloat,
}

#[derive(Clone, Debug)]
pub struct ScanResult {
    pub samples: Vec<ScanSample>,
    pub min_abs: HpFloat,
    /// Index of the sample attaining `min_abs`.
    pub argmin: usize,
    pub sign_changes: usize,
    pub precision: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanSummary {
    pub samples: usize,
    pub precision: usize,
    pub sign_changes: usize,
    pub min_abs: f64,
    pub min_abs_decimal: String,
    pub argmin_t: f64,
    pub non_vanishing: bool,
}

impl ScanResult {
    pub fn summary(&self, tolerance: &BigRational) -> ScanSummary {
        let tol = HpFloat::from_rational(tolerance, self.precision);
        ScanSummary {
            samples: self.samples.len(),
            precision: self.precision,
            sign_changes: self.sign_changes,
            min_abs: self.min_abs.to_f64(),
            min_abs_decimal: self.min_abs.to_decimal(20),
            argmin_t: self.samples[self.argmin].t.to_f64(),
            non_vanishing: self.sign_changes == 0 && tol.lt(&self.min_abs),
        }
    }

    /// `t,x,y,det`, one row per sample.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "t,x,y,det")?;
        for s in &self.samples {
            let p = self.precision;
            writeln!(w, "{},{},{},{}", s.t.to_decimal(p), s.x.to_decimal(p), s.y.to_decimal(p), s.det.to_decimal(p))?;
        }
        Ok(())
    }
}

/// Real point with the given exact `x` and sign of `y`.
pub fn lift_x(c: &WeierstrassCurve<BigRational>, x: &BigRational, positive_y: bool, digits: usize) -> Result<EllipticPoint<HpFloat>> {
    let rhs = c.rhs(x);
    if rhs.is_negative() {
        return Err(Error::pre(format!("no real point with x = {x}")));
    }
    let xf = HpFloat::from_rational(x, digits);
    let y = HpFloat::from_rational(&rhs, digits).sqrt().expect("nonnegative");
    Ok(EllipticPoint::affine(xf, if positive_y { y } else { y.neg() }))
}

/// Tangent dual vector scaled to unit length with first nonzero entry
/// positive.
pub fn unit_dual(g: &[HpFloat; 3]) -> [HpFloat; 3] {
    let norm = g.iter().fold(g[0].int(0), |acc, c| acc.add(&c.square())).sqrt().expect("sum of squares");
    let lead = g.iter().find(|c| !c.is_zero()).expect("nonzero gradient");
    let norm = if lead.is_negative() { norm.neg() } else { norm };
    g.clone().map(|c| c.div(&norm).expect("nonzero norm"))
}

fn det3(m: &[[HpFloat; 3]; 3]) -> HpFloat {
    let minor = |a: usize, b: usize| m[1][a].mul(&m[2][b]).sub(&m[1][b].mul(&m[2][a]));
    m[0][0].mul(&minor(1, 2)).sub(&m[0][1].mul(&minor(0, 2))).add(&m[0][2].mul(&minor(0, 1)))
}

/// Largest real root of `x³ + a·x + b`, refined below the working precision.
fn largest_real_root(c: &WeierstrassCurve<BigRational>, digits: usize) -> HpFloat {
    let zero = BigRational::from_integer(0.into());
    let p = UniPoly::from_rationals(&[c.b().clone(), c.a().clone(), zero, BigRational::from_integer(1.into())]);
    let iso = isolate_real_roots(&p);
    let iv = iso.intervals.last().expect("a real cubic has a real root");
    let width = BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(digits as u32 + 5));
    HpFloat::from_rational(&refine(&p, iv, &width).midpoint(), digits)
}

/// Determinant of the unit tangent duals at `p0 + P, p1 + P, p2 + P` as `P`
/// runs over the unbounded real branch.
///
/// The branch is parametrised by `t ∈ (-π/2, π/2)`, `x = e + tan²t` with `e`
/// the largest root of `x³ + ax + b`, and `y` of the sign of `t`. Samples
/// are equally spaced over the closed window; results do not depend on the
/// thread count.
pub fn collinearity_scan(
    c: &WeierstrassCurve<BigRational>,
    points: &[EllipticPoint<HpFloat>; 3],
    cfg: &ScanConfig,
) -> Result<ScanResult> {
    let digits = cfg.precision;
    if cfg.samples < 2 {
        return Err(Error::pre("at least two samples are needed"));
    }
    if digits < 10 {
        return Err(Error::pre("precision must be at least 10 digits"));
    }
    let (lo, hi) = &cfg.window;
    let half_pi = HpFloat::pi(digits).div(&HpFloat::from_i64(2, digits)).unwrap();
    let inside = |v: &BigRational| HpFloat::from_rational(&v.abs(), digits).lt(&half_pi);
    if !(lo < hi && inside(lo) && inside(hi)) {
        return Err(Error::pre("window must satisfy -π/2 < lo < hi < π/2"));
    }
    let like = HpFloat::from_i64(0, digits);
    let cf = c.over(&like)?;
    if points.iter().any(|p| !cf.contains(p)) {
        return Err(Error::OffCurve);
    }
    let e = largest_real_root(c, digits);
    let n = cfg.samples;
    let step = (hi - lo) / BigRational::from_integer((n as i64 - 1).into());
    let samples: Vec<ScanSample> = (0..n)
        .into_par_iter()
        .map(|k| {
            let tq = lo + &step * BigRational::from_integer((k as i64).into());
            let t = HpFloat::from_rational(&tq, digits);
            let x = e.add(&t.tan().square());
            let mut y = cf.rhs(&x).sqrt().expect("x lies on the real branch");
            if tq.is_negative() {
                y = y.neg();
            }
            let p = EllipticPoint::affine(x.clone(), y.clone());
            let rows = points.clone().map(|pi| {
                let q = cf.add_unchecked(&pi, &p);
                unit_dual(&cf.gradient_unchecked(&q).expect("nonzero gradient"))
            });
            ScanSample { t, x, y, det: det3(&rows) }
        })
        .collect();
    let tol = HpFloat::from_rational(&cfg.tolerance, digits);
    let mut argmin = 0;
    for (k, s) in samples.iter().enumerate() {
        if s.det.abs().lt(&samples[argmin].det.abs()) {
            argmin = k;
        }
    }
    let signs: Vec<i8> = samples
        .iter()
        .filter(|s| tol.lt(&s.det.abs()))
        .map(|s| if s.det.is_negative() { -1 } else { 1 })
        .collect();
    let sign_changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
    Ok(ScanResult { min_abs: samples[argmin].det.abs(), argmin, samples, sign_changes, precision: digits })
}

/// The curve `y² = x³ + x` with `P0, P1, P2` at `x = 100.35, 0.05, 0.4`
/// and `y` positive, positive, negative.
pub fn paper_example(digits: usize) -> Result<(WeierstrassCurve<BigRational>, [EllipticPoint<HpFloat>; 3])> {
    let c = WeierstrassCurve::from_ints(1, 0)?;
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let pts = [
        lift_x(&c, &r(10035, 100), true, digits)?,
        lift_x(&c, &r(5, 100), true, digits)?,
        lift_x(&c, &r(4, 10), false, digits)?,
    ];
    Ok((c, pts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(samples: usize) -> ScanConfig {
        ScanConfig { samples, ..ScanConfig::default() }
    }

    #[test]
    fn equal_points_give_zero_determinant() {
        let (c, [p0, _, p2]) = paper_example(30).unwrap();
        let r = collinearity_scan(&c, &[p0.clone(), p0, p2], &ScanConfig { precision: 30, ..cfg(21) }).unwrap();
        assert!(r.samples.iter().all(|s| s.det.is_zero()));
    }

    #[test]
    fn concurrent_vertical_tangents() {
        // 2-torsion of y² = x³ - x; at t = 0, P = (1, 0) and the three sums
        // have tangents x = 0, x = -1 and z = 0, all through (0:1:0)
        let c = WeierstrassCurve::from_ints(-1, 0).unwrap();
        let pt = |x: i64| lift_x(&c, &BigRational::from_integer(x.into()), true, 40).unwrap();
        let r = collinearity_scan(&c, &[pt(-1), pt(0), pt(1)], &ScanConfig { precision: 40, ..cfg(11) }).unwrap();
        assert!(r.samples[5].t.is_zero());
        assert!(r.min_abs.is_zero());
        assert_eq!(r.argmin, 5);
    }

    #[test]
    fn paper_configuration_small() {
        let (c, pts) = paper_example(50).unwrap();
        let r = collinearity_scan(&c, &pts, &cfg(201)).unwrap();
        let s = r.summary(&ScanConfig::default().tolerance);
        assert_eq!(s.sign_changes, 0);
        assert!(s.min_abs > 1e-6, "{s:?}");
        assert!(s.non_vanishing);
        let mut out = Vec::new();
        r.write_csv(&mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().next(), Some("t,x,y,det"));
        assert_eq!(text.lines().count(), 202);
    }

    #[test]
    fn rejects_bad_input() {
        let (c, pts) = paper_example(30).unwrap();
        assert!(collinearity_scan(&c, &pts, &cfg(1)).is_err());
        let wide = ScanConfig { window: (BigRational::from_integer((-2).into()), BigRational::from_integer(2.into())), ..cfg(10) };
        assert!(collinearity_scan(&c, &pts, &wide).is_err());
        let off = EllipticPoint::affine(HpFloat::from_i64(1, 50), HpFloat::from_i64(1, 50));
        assert_eq!(collinearity_scan(&c, &[off, pts[1].clone(), pts[2].clone()], &cfg(10)).unwrap_err(), Error::OffCurve);
    }
}
